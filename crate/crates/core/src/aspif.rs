//! Reader and writer for the text-based ASP intermediate format (aspif).
//!
//! Rules (code 1), minimize statements (code 2) and output statements
//! (code 4) are interpreted; every other statement is kept verbatim so a
//! rewrite never loses information. Output is canonical: single spaces and
//! `\n` line endings.

use std::collections::BTreeSet;
use std::fmt;
use std::str::SplitAsciiWhitespace;

use thiserror::Error;

use crate::asplang::{
    AspError, Atom, CardinalityConstraint, ChoiceRule, GroundProgram, Literal, Nogood, NormalRule, ObjectiveFunction,
    Signed,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AspifError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("statement not supported for semantic translation: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Asp(#[from] AspError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected header `asp 1 <minor> <revision> [tags]`, found {0:?}")]
    BadHeader(String),
    #[error("statement ends early")]
    Truncated,
    #[error("expected an integer, found {0:?}")]
    NotInteger(String),
    #[error("unexpected tokens after the statement")]
    TrailingTokens,
    #[error("{0}")]
    BadValue(String),
    #[error("content after the terminating 0")]
    AfterTerminator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub major: u32,
    pub minor: u32,
    pub revision: u32,
    pub tags: Vec<String>,
}

impl Default for Header {
    fn default() -> Self {
        Header {
            major: 1,
            minor: 0,
            revision: 0,
            tags: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadKind {
    Disjunction,
    Choice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Normal(Vec<Literal>),
    Weight {
        lower_bound: i64,
        terms: Vec<(Literal, i64)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub kind: HeadKind,
    pub head: Vec<Atom>,
    pub body: Body,
}

impl Rule {
    /// `head :- body.` as a single-atom disjunctive rule.
    pub fn normal(head: Atom, body: impl IntoIterator<Item = Literal>) -> Self {
        Rule {
            kind: HeadKind::Disjunction,
            head: vec![head],
            body: Body::Normal(body.into_iter().collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimize {
    pub priority: i64,
    pub terms: Vec<(Literal, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub name: String,
    pub condition: Vec<Literal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Rule(Rule),
    Minimize(Minimize),
    Output(Output),
    /// Any other statement, stored without its line ending.
    Raw(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AspifDocument {
    pub header: Header,
    pub statements: Vec<Statement>,
    /// Whether the input ended with the `0` line. The writer always emits it.
    pub terminated: bool,
}

struct Tokens<'a> {
    iter: SplitAsciiWhitespace<'a>,
    line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Tokens {
            iter: text.split_ascii_whitespace(),
            line,
        }
    }

    fn err(&self, kind: ParseErrorKind) -> AspifError {
        AspifError::Parse { line: self.line, kind }
    }

    fn next_i64(&mut self) -> Result<i64, AspifError> {
        let tok = self.iter.next().ok_or_else(|| self.err(ParseErrorKind::Truncated))?;
        tok.parse()
            .map_err(|_| self.err(ParseErrorKind::NotInteger(tok.to_owned())))
    }

    fn next_count(&mut self) -> Result<usize, AspifError> {
        let v = self.next_i64()?;
        usize::try_from(v).map_err(|_| self.err(ParseErrorKind::BadValue(format!("negative count {v}"))))
    }

    fn next_atom(&mut self) -> Result<Atom, AspifError> {
        let v = self.next_i64()?;
        u32::try_from(v)
            .ok()
            .and_then(|id| Atom::new(id).ok())
            .ok_or_else(|| self.err(ParseErrorKind::BadValue(format!("invalid atom {v}"))))
    }

    fn next_literal(&mut self) -> Result<Literal, AspifError> {
        let v = self.next_i64()?;
        let atom = u32::try_from(v.unsigned_abs())
            .ok()
            .and_then(|id| Atom::new(id).ok())
            .ok_or_else(|| self.err(ParseErrorKind::BadValue(format!("invalid literal {v}"))))?;
        Ok(Literal::new(atom, v > 0))
    }

    fn weighted(&mut self) -> Result<Vec<(Literal, i64)>, AspifError> {
        let n = self.next_count()?;
        let mut terms = Vec::new();
        for _ in 0..n {
            let lit = self.next_literal()?;
            terms.push((lit, self.next_i64()?));
        }
        Ok(terms)
    }

    fn literals(&mut self) -> Result<Vec<Literal>, AspifError> {
        let n = self.next_count()?;
        (0..n).map(|_| self.next_literal()).collect()
    }

    fn finish(mut self) -> Result<(), AspifError> {
        match self.iter.next() {
            None => Ok(()),
            Some(_) => Err(self.err(ParseErrorKind::TrailingTokens)),
        }
    }
}

fn parse_header(text: &str) -> Result<Header, AspifError> {
    let bad = || AspifError::Parse {
        line: 1,
        kind: ParseErrorKind::BadHeader(text.to_owned()),
    };
    let mut parts = text.split_ascii_whitespace();
    if parts.next() != Some("asp") {
        return Err(bad());
    }
    let mut num = || parts.next().and_then(|t| t.parse::<u32>().ok()).ok_or_else(bad);
    let (major, minor, revision) = (num()?, num()?, num()?);
    if major != 1 {
        return Err(bad());
    }
    Ok(Header {
        major,
        minor,
        revision,
        tags: parts.map(str::to_owned).collect(),
    })
}

fn parse_rule(mut t: Tokens<'_>) -> Result<Statement, AspifError> {
    let kind = match t.next_i64()? {
        0 => HeadKind::Disjunction,
        1 => HeadKind::Choice,
        v => return Err(t.err(ParseErrorKind::BadValue(format!("unknown head type {v}")))),
    };
    let m = t.next_count()?;
    let head = (0..m).map(|_| t.next_atom()).collect::<Result<_, _>>()?;
    let body = match t.next_i64()? {
        0 => Body::Normal(t.literals()?),
        1 => {
            let lower_bound = t.next_i64()?;
            Body::Weight {
                lower_bound,
                terms: t.weighted()?,
            }
        }
        v => return Err(t.err(ParseErrorKind::BadValue(format!("unknown body type {v}")))),
    };
    t.finish()?;
    Ok(Statement::Rule(Rule { kind, head, body }))
}

fn parse_output(text: &str, line: usize) -> Result<Statement, AspifError> {
    let err = |kind| AspifError::Parse { line, kind };
    // "4 <len> <string> <n> <lits>": the string is taken by byte length
    // because it may contain spaces
    let rest = text
        .trim_start()
        .strip_prefix('4')
        .ok_or(err(ParseErrorKind::Truncated))?;
    let rest = rest.trim_start_matches([' ', '\t']);
    let len_end = rest.find([' ', '\t']).unwrap_or(rest.len());
    let len_tok = &rest[..len_end];
    let len: usize = len_tok
        .parse()
        .map_err(|_| err(ParseErrorKind::NotInteger(len_tok.to_owned())))?;
    let after_len = rest[len_end..]
        .strip_prefix([' ', '\t'])
        .ok_or(err(ParseErrorKind::Truncated))?;
    if after_len.len() < len || !after_len.is_char_boundary(len) {
        return Err(err(ParseErrorKind::Truncated));
    }
    let name = after_len[..len].to_owned();
    let mut t = Tokens::new(&after_len[len..], line);
    let condition = t.literals()?;
    t.finish()?;
    Ok(Statement::Output(Output { name, condition }))
}

/// Parse an aspif document. Blank lines are skipped and a trailing `\r` is
/// dropped from every line.
pub fn parse(text: &str) -> Result<AspifDocument, AspifError> {
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let header = match lines.next() {
        Some((_, l)) => parse_header(l)?,
        None => {
            return Err(AspifError::Parse {
                line: 1,
                kind: ParseErrorKind::BadHeader(String::new()),
            })
        }
    };
    let mut statements = Vec::new();
    let mut terminated = false;
    for (line, text) in lines {
        if terminated {
            return Err(AspifError::Parse {
                line,
                kind: ParseErrorKind::AfterTerminator,
            });
        }
        let mut t = Tokens::new(text, line);
        match t.next_i64()? {
            0 => {
                t.finish()?;
                terminated = true;
            }
            1 => statements.push(parse_rule(t)?),
            2 => {
                let priority = t.next_i64()?;
                let terms = t.weighted()?;
                t.finish()?;
                statements.push(Statement::Minimize(Minimize { priority, terms }));
            }
            4 => statements.push(parse_output(text, line)?),
            _ => statements.push(Statement::Raw(text.to_owned())),
        }
    }
    if !terminated {
        log::warn!("aspif input lacks the terminating 0 line; it will be added on output");
    }
    Ok(AspifDocument {
        header,
        statements,
        terminated,
    })
}

fn write_weighted(f: &mut fmt::Formatter<'_>, terms: &[(Literal, i64)]) -> fmt::Result {
    write!(f, " {}", terms.len())?;
    for (lit, w) in terms {
        write!(f, " {} {w}", lit.to_signed())?;
    }
    Ok(())
}

fn write_literals(f: &mut fmt::Formatter<'_>, lits: &[Literal]) -> fmt::Result {
    write!(f, " {}", lits.len())?;
    for lit in lits {
        write!(f, " {}", lit.to_signed())?;
    }
    Ok(())
}

impl fmt::Display for Header {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "asp {} {} {}", self.major, self.minor, self.revision)?;
        for tag in &self.tags {
            write!(f, " {tag}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Rule(r) => {
                let kind = match r.kind {
                    HeadKind::Disjunction => 0,
                    HeadKind::Choice => 1,
                };
                write!(f, "1 {kind} {}", r.head.len())?;
                for a in &r.head {
                    write!(f, " {a}")?;
                }
                match &r.body {
                    Body::Normal(lits) => {
                        write!(f, " 0")?;
                        write_literals(f, lits)
                    }
                    Body::Weight { lower_bound, terms } => {
                        write!(f, " 1 {lower_bound}")?;
                        write_weighted(f, terms)
                    }
                }
            }
            Statement::Minimize(m) => {
                write!(f, "2 {}", m.priority)?;
                write_weighted(f, &m.terms)
            }
            Statement::Output(o) => {
                write!(f, "4 {} {}", o.name.len(), o.name)?;
                write_literals(f, &o.condition)
            }
            Statement::Raw(text) => f.write_str(text),
        }
    }
}

impl fmt::Display for AspifDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        writeln!(f, "0")
    }
}

/// Canonical text of `doc`.
pub fn write(doc: &AspifDocument) -> String {
    doc.to_string()
}

impl AspifDocument {
    pub fn new() -> Self {
        AspifDocument {
            terminated: true,
            ..AspifDocument::default()
        }
    }

    /// Largest atom id the document may refer to. Verbatim statements are
    /// scanned conservatively: every integer token after the code counts.
    pub fn max_atom(&self) -> u32 {
        let lit_id = |l: &Literal| l.atom.id();
        let mut max = 0u32;
        for s in &self.statements {
            let m = match s {
                Statement::Rule(r) => {
                    let heads = r.head.iter().map(|a| a.id());
                    let body: Vec<u32> = match &r.body {
                        Body::Normal(lits) => lits.iter().map(lit_id).collect(),
                        Body::Weight { terms, .. } => terms.iter().map(|(l, _)| lit_id(l)).collect(),
                    };
                    heads.chain(body).max().unwrap_or(0)
                }
                Statement::Minimize(m) => m.terms.iter().map(|(l, _)| lit_id(l)).max().unwrap_or(0),
                Statement::Output(o) => o.condition.iter().map(lit_id).max().unwrap_or(0),
                Statement::Raw(text) => text
                    .split_ascii_whitespace()
                    .skip(1)
                    .filter_map(|t| t.parse::<i64>().ok())
                    .map(|v| u32::try_from(v.unsigned_abs()).unwrap_or(u32::MAX))
                    .max()
                    .unwrap_or(0),
            };
            max = max.max(m);
        }
        max
    }

    pub fn minimize_statements(&self) -> impl Iterator<Item = &Minimize> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Minimize(m) => Some(m),
            _ => None,
        })
    }
}

/// Translate to a ground program and its objective.
///
/// Supported: single-atom and empty disjunctive heads, choice heads with
/// normal bodies, and integrity constraints over weight bodies whose positive
/// weights are all equal (these become cardinality constraints). Projection,
/// heuristic and comment statements do not affect answer sets and are
/// ignored; other verbatim statements are rejected.
pub fn to_ground_program(doc: &AspifDocument) -> Result<(GroundProgram, ObjectiveFunction), AspifError> {
    let mut program = GroundProgram::new();
    let mut objective = ObjectiveFunction::default();
    for s in &doc.statements {
        match s {
            Statement::Rule(r) => add_rule(&mut program, r)?,
            Statement::Minimize(m) => {
                program.add_atoms(m.terms.iter().map(|(l, _)| l.atom));
                objective
                    .levels
                    .entry(m.priority)
                    .or_default()
                    .terms
                    .extend(m.terms.iter().map(|&(l, w)| (w, l)));
            }
            Statement::Output(o) => program.add_atoms(o.condition.iter().map(|l| l.atom)),
            Statement::Raw(text) => match text.split_ascii_whitespace().next() {
                Some("3" | "7" | "10") => {}
                _ => return Err(AspifError::Unsupported(text.clone())),
            },
        }
    }
    Ok((program, objective))
}

fn add_rule(program: &mut GroundProgram, rule: &Rule) -> Result<(), AspifError> {
    let unsupported = || AspifError::Unsupported(Statement::Rule(rule.clone()).to_string());
    match (&rule.kind, rule.head.as_slice(), &rule.body) {
        (HeadKind::Disjunction, [h], Body::Normal(body)) => {
            program.add_normal(NormalRule::new(*h, body.iter().copied()));
        }
        (HeadKind::Disjunction, [], Body::Normal(body)) => {
            program.add_atoms(body.iter().map(|l| l.atom));
            match Nogood::from_body(body.iter().copied()) {
                Ok(ng) => program.add_nogood(ng),
                // a body with `a` and `not a` never holds
                Err(AspError::ContradictoryNogood(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        (HeadKind::Disjunction, [], Body::Weight { lower_bound, terms }) => {
            program.add_atoms(terms.iter().map(|(l, _)| l.atom));
            if terms.iter().any(|&(_, w)| w < 0) {
                return Err(unsupported());
            }
            let counted: Vec<Literal> = terms.iter().filter(|&&(_, w)| w > 0).map(|&(l, _)| l).collect();
            let weight = terms.iter().map(|&(_, w)| w).find(|&w| w > 0).unwrap_or(1);
            if terms.iter().any(|&(_, w)| w > 0 && w != weight) {
                return Err(unsupported());
            }
            // body: at least t of `counted` hold, with t = ceil(bound / weight)
            let t = if *lower_bound <= 0 {
                0
            } else {
                (lower_bound + weight - 1) / weight
            };
            let n = counted.len() as i64;
            // forbidding the body means at least n - t + 1 complements hold
            let negated: Vec<Literal> = counted.iter().map(|l| l.negate()).collect();
            program.add_cardinality(CardinalityConstraint::new(negated, n - t + 1));
        }
        (HeadKind::Choice, [], _) => {}
        (HeadKind::Choice, heads, Body::Normal(body)) => {
            program.add_choice(ChoiceRule::new(heads.iter().copied(), body.iter().copied())?);
        }
        _ => return Err(unsupported()),
    }
    Ok(())
}

/// Render a ground program and objective as a document. Atoms of the
/// signature that occur in no rule, constraint or objective are not
/// represented.
pub fn from_ground_program(program: &GroundProgram, objective: &ObjectiveFunction) -> AspifDocument {
    let mut doc = AspifDocument::new();
    for r in &program.choice_rules {
        doc.statements.push(Statement::Rule(Rule {
            kind: HeadKind::Choice,
            head: r.head.iter().copied().collect(),
            body: Body::Normal(r.body.iter().copied().collect()),
        }));
    }
    for r in &program.normal_rules {
        doc.statements.push(Statement::Rule(Rule::normal(r.head, r.body())));
    }
    for cc in &program.cardinality_constraints {
        if cc.lower_bound <= 0 {
            continue;
        }
        let n = cc.literals.len() as i64;
        doc.statements.push(Statement::Rule(Rule {
            kind: HeadKind::Disjunction,
            head: Vec::new(),
            body: Body::Weight {
                lower_bound: n - cc.lower_bound + 1,
                terms: cc.literals.iter().map(|l| (l.negate(), 1)).collect(),
            },
        }));
    }
    for ng in &program.nogoods {
        let body: Vec<Literal> = ng
            .literals()
            .iter()
            .map(|s: &Signed| Literal::new(s.atom, s.value))
            .collect();
        doc.statements.push(Statement::Rule(Rule {
            kind: HeadKind::Disjunction,
            head: Vec::new(),
            body: Body::Normal(body),
        }));
    }
    for (&priority, level) in &objective.levels {
        doc.statements.push(Statement::Minimize(Minimize {
            priority,
            terms: level.terms.iter().map(|&(w, l)| (l, w)).collect(),
        }));
    }
    doc
}

/// Atoms appearing anywhere in the interpreted statements.
pub fn mentioned_atoms(doc: &AspifDocument) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    for s in &doc.statements {
        match s {
            Statement::Rule(r) => {
                out.extend(r.head.iter().copied());
                match &r.body {
                    Body::Normal(lits) => out.extend(lits.iter().map(|l| l.atom)),
                    Body::Weight { terms, .. } => out.extend(terms.iter().map(|(l, _)| l.atom)),
                }
            }
            Statement::Minimize(m) => out.extend(m.terms.iter().map(|(l, _)| l.atom)),
            Statement::Output(o) => out.extend(o.condition.iter().map(|l| l.atom)),
            Statement::Raw(_) => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asplang::{enumerate_answer_sets, Interpretation};

    fn a(i: u32) -> Atom {
        Atom::new(i).unwrap()
    }

    #[test]
    fn fact_rule() {
        let doc = parse("asp 1 0 0\n1 0 1 1 0 0\n0\n").unwrap();
        assert_eq!(doc.statements, vec![Statement::Rule(Rule::normal(a(1), []))]);
        assert!(doc.terminated);
        assert_eq!(write(&doc), "asp 1 0 0\n1 0 1 1 0 0\n0\n");
    }

    #[test]
    fn minimize_statement() {
        let doc = parse("asp 1 0 0\n2 0 2 1 40 2 70\n0\n").unwrap();
        assert_eq!(
            doc.statements,
            vec![Statement::Minimize(Minimize {
                priority: 0,
                terms: vec![(a(1).pos(), 40), (a(2).pos(), 70)],
            })]
        );
    }

    #[test]
    fn header_errors() {
        assert!(matches!(
            parse(""),
            Err(AspifError::Parse {
                kind: ParseErrorKind::BadHeader(_),
                ..
            })
        ));
        assert!(matches!(
            parse("asp 2 0 0\n0\n"),
            Err(AspifError::Parse {
                kind: ParseErrorKind::BadHeader(_),
                ..
            })
        ));
        assert_eq!(
            write(&parse("asp 1 0 0 incremental\n").unwrap()),
            "asp 1 0 0 incremental\n0\n"
        );
    }

    #[test]
    fn statement_errors() {
        let kind = |s: &str| match parse(s) {
            Err(AspifError::Parse { kind, .. }) => kind,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(kind("asp 1 0 0\n1 0 1\n"), ParseErrorKind::Truncated);
        assert_eq!(kind("asp 1 0 0\n1 0 x\n"), ParseErrorKind::NotInteger("x".into()));
        assert_eq!(kind("asp 1 0 0\n1 0 1 1 0 0 5\n"), ParseErrorKind::TrailingTokens);
        assert_eq!(kind("asp 1 0 0\n0\n1 0 1 1 0 0\n"), ParseErrorKind::AfterTerminator);
        assert!(matches!(kind("asp 1 0 0\n1 0 1 0 0 0\n"), ParseErrorKind::BadValue(_)));
    }

    #[test]
    fn output_with_spaces_and_raw_lines() {
        let text = "asp 1 0 0\n4 7 p(a, b) 1 -3\n5  3 2\n10 a comment\n0\n";
        let doc = parse(text).unwrap();
        assert_eq!(
            doc.statements[0],
            Statement::Output(Output {
                name: "p(a, b)".into(),
                condition: vec![a(3).neg()],
            })
        );
        assert_eq!(doc.statements[1], Statement::Raw("5  3 2".into()));
        assert_eq!(write(&doc), text);
        assert_eq!(doc.max_atom(), 3);
    }

    #[test]
    fn canonicalizes_spacing_and_line_endings() {
        let doc = parse("asp 1 0 0\r\n\r\n1  0 1 2   0 1 3\r\n2 0 0\n").unwrap();
        assert!(!doc.terminated);
        assert_eq!(write(&doc), "asp 1 0 0\n1 0 1 2 0 1 3\n2 0 0\n0\n");
        assert_eq!(write(&AspifDocument::new()), "asp 1 0 0\n0\n");
    }

    #[test]
    fn weight_constraint_becomes_cardinality() {
        // :- 2 <= #sum{2: not 1; 2: not 2; 2: not 3}  i.e. at least 2 of 1..3
        let doc = parse("asp 1 0 0\n1 1 3 1 2 3 0 0\n1 0 0 1 4 3 -1 2 -2 2 -3 2\n0\n").unwrap();
        let (p, _) = to_ground_program(&doc).unwrap();
        let sets = enumerate_answer_sets(&p).unwrap();
        let expected: Vec<Interpretation> = [&[1, 2][..], &[1, 2, 3], &[1, 3], &[2, 3]]
            .iter()
            .map(|s| Interpretation::from_ids(s))
            .collect();
        assert_eq!(sets, expected);
        let back = from_ground_program(&p, &ObjectiveFunction::default());
        let (q, _) = to_ground_program(&back).unwrap();
        assert_eq!(enumerate_answer_sets(&q).unwrap(), expected);
    }

    #[test]
    fn unsupported_constructs() {
        for text in [
            "asp 1 0 0\n1 0 2 1 2 0 0\n0\n",
            "asp 1 0 0\n1 0 1 1 1 1 2 1 1 2 1\n0\n",
            "asp 1 0 0\n1 0 0 1 2 2 1 1 2 2\n0\n",
            "asp 1 0 0\n5 1 2\n0\n",
        ] {
            assert!(matches!(
                to_ground_program(&parse(text).unwrap()),
                Err(AspifError::Unsupported(_))
            ));
        }
        let ok = parse("asp 1 0 0\n1 1 1 1 0 0\n10 hello\n3 1 1\n4 1 a 1 1\n0\n").unwrap();
        let (p, _) = to_ground_program(&ok).unwrap();
        assert_eq!(p.choice_rules.len(), 1);
    }

    #[test]
    fn contradictory_constraint_is_dropped() {
        let doc = parse("asp 1 0 0\n1 0 0 0 2 1 -1\n0\n").unwrap();
        let (p, _) = to_ground_program(&doc).unwrap();
        assert!(p.nogoods.is_empty());
        assert_eq!(p.signature, BTreeSet::from([a(1)]));
    }
}
