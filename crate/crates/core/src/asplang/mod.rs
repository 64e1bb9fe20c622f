//! Ground answer-set programs and their brute-force semantics.
//!
//! Programs consist of normal rules, choice rules, cardinality constraints and
//! nogoods over positive integer atoms. Answer sets follow the reduct-based
//! definition extended so that atoms heading no rule are free inputs fixed by
//! the interpretation; supported models are models whose true atoms all head a
//! rule with a satisfied body.

mod brute;
mod search;
mod semantics;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use brute::{
    enumerate_answer_sets, enumerate_standard_answer_sets, enumerate_supported_models, optimal_value,
    MAX_BRUTE_FORCE_ATOMS,
};
pub use search::{CandidateKind, ModelSearch};
pub use semantics::{
    evaluate, is_answer_set, is_standard_answer_set, is_supported_model, reduct, satisfies, PositiveRule,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AspError {
    #[error("atom ids start at 1")]
    ZeroAtom,
    #[error("nogood mentions atom {0} with both signs")]
    ContradictoryNogood(Atom),
    #[error("choice rule needs at least one head atom")]
    EmptyChoiceHead,
    #[error("atom {0} is used but missing from the signature")]
    NotInSignature(Atom),
    #[error("{atoms} atoms exceed the brute-force limit of {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("expanding the cardinality constraint would create {0} nogoods")]
    ExpansionTooLarge(u128),
    #[error("more than {0} models; enumeration stopped")]
    TooManyModels(usize),
    #[error("objective value overflowed")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u32);

impl Atom {
    pub fn new(id: u32) -> Result<Self, AspError> {
        if id == 0 {
            return Err(AspError::ZeroAtom);
        }
        Ok(Atom(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn neg(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An atom or its default negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn new(atom: Atom, positive: bool) -> Self {
        Literal { atom, positive }
    }

    /// From a nonzero signed integer, negative meaning default negation.
    pub fn from_signed(value: i64) -> Result<Self, AspError> {
        let id = u32::try_from(value.unsigned_abs()).map_err(|_| AspError::ZeroAtom)?;
        Ok(Literal::new(Atom::new(id)?, value > 0))
    }

    pub fn to_signed(self) -> i64 {
        let id = i64::from(self.atom.0);
        if self.positive {
            id
        } else {
            -id
        }
    }

    pub fn negate(self) -> Self {
        Literal::new(self.atom, !self.positive)
    }

    pub fn holds_in(self, interpretation: &Interpretation) -> bool {
        interpretation.contains(self.atom) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "not {}", self.atom)
        }
    }
}

/// `head :- pos_body, not neg_body.`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalRule {
    pub head: Atom,
    pub pos_body: BTreeSet<Atom>,
    pub neg_body: BTreeSet<Atom>,
}

impl NormalRule {
    pub fn new(head: Atom, body: impl IntoIterator<Item = Literal>) -> Self {
        let mut rule = NormalRule::fact(head);
        for lit in body {
            if lit.positive {
                rule.pos_body.insert(lit.atom);
            } else {
                rule.neg_body.insert(lit.atom);
            }
        }
        rule
    }

    pub fn fact(head: Atom) -> Self {
        NormalRule {
            head,
            pos_body: BTreeSet::new(),
            neg_body: BTreeSet::new(),
        }
    }

    pub fn body(&self) -> impl Iterator<Item = Literal> + '_ {
        self.pos_body
            .iter()
            .map(|a| a.pos())
            .chain(self.neg_body.iter().map(|a| a.neg()))
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        std::iter::once(self.head)
            .chain(self.pos_body.iter().copied())
            .chain(self.neg_body.iter().copied())
    }
}

impl fmt::Display for NormalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        let body: Vec<String> = self.body().map(|l| l.to_string()).collect();
        if !body.is_empty() {
            write!(f, " :- {}", body.join(", "))?;
        }
        write!(f, ".")
    }
}

/// `{a_1; ...; a_m} :- body.`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChoiceRule {
    pub head: BTreeSet<Atom>,
    pub body: BTreeSet<Literal>,
}

impl ChoiceRule {
    pub fn new(
        head: impl IntoIterator<Item = Atom>,
        body: impl IntoIterator<Item = Literal>,
    ) -> Result<Self, AspError> {
        let head: BTreeSet<Atom> = head.into_iter().collect();
        if head.is_empty() {
            return Err(AspError::EmptyChoiceHead);
        }
        Ok(ChoiceRule {
            head,
            body: body.into_iter().collect(),
        })
    }
}

/// `:- #count{l_1; ...; l_n} < lower_bound.`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CardinalityConstraint {
    pub literals: Vec<Literal>,
    pub lower_bound: i64,
}

impl CardinalityConstraint {
    pub fn new(literals: Vec<Literal>, lower_bound: i64) -> Self {
        CardinalityConstraint { literals, lower_bound }
    }

    pub fn holds_in(&self, interpretation: &Interpretation) -> bool {
        let count = self.literals.iter().filter(|l| l.holds_in(interpretation)).count();
        i64::try_from(count).unwrap_or(i64::MAX) >= self.lower_bound
    }
}

/// A signed literal `T a` (`value == true`) or `F a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signed {
    pub atom: Atom,
    pub value: bool,
}

impl Signed {
    pub fn t(atom: Atom) -> Self {
        Signed { atom, value: true }
    }

    pub fn f(atom: Atom) -> Self {
        Signed { atom, value: false }
    }

    /// The signed literal that makes `lit` true.
    pub fn satisfying(lit: Literal) -> Self {
        Signed {
            atom: lit.atom,
            value: lit.positive,
        }
    }
}

impl fmt::Display for Signed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.value { "T" } else { "F" }, self.atom)
    }
}

/// A set of signed literals that must not all hold together.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nogood(BTreeSet<Signed>);

impl Nogood {
    pub fn new(literals: impl IntoIterator<Item = Signed>) -> Result<Self, AspError> {
        let set: BTreeSet<Signed> = literals.into_iter().collect();
        for s in &set {
            if s.value && set.contains(&Signed::f(s.atom)) {
                return Err(AspError::ContradictoryNogood(s.atom));
            }
        }
        Ok(Nogood(set))
    }

    /// The nogood forbidding every literal of `body` from holding at once.
    pub fn from_body(body: impl IntoIterator<Item = Literal>) -> Result<Self, AspError> {
        Nogood::new(body.into_iter().map(Signed::satisfying))
    }

    pub fn literals(&self) -> &BTreeSet<Signed> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// An interpretation violates the nogood iff it agrees with every literal.
    pub fn violated_by(&self, interpretation: &Interpretation) -> bool {
        self.0.iter().all(|s| interpretation.contains(s.atom) == s.value)
    }
}

impl fmt::Display for Nogood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Signed::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Hands out atom ids above every id seen so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomAllocator {
    next: u32,
}

impl AtomAllocator {
    /// Start allocating right after `max_used` (0 when nothing is used).
    pub fn above(max_used: u32) -> Self {
        AtomAllocator { next: max_used + 1 }
    }

    pub fn fresh(&mut self) -> Atom {
        let atom = Atom(self.next);
        self.next = self.next.checked_add(1).expect("atom ids exhausted");
        atom
    }

    /// The next id that would be returned.
    pub fn peek(&self) -> u32 {
        self.next
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub signature: BTreeSet<Atom>,
    pub normal_rules: Vec<NormalRule>,
    pub choice_rules: Vec<ChoiceRule>,
    pub cardinality_constraints: Vec<CardinalityConstraint>,
    pub nogoods: Vec<Nogood>,
}

impl GroundProgram {
    pub fn new() -> Self {
        GroundProgram::default()
    }

    pub fn add_atoms(&mut self, atoms: impl IntoIterator<Item = Atom>) {
        self.signature.extend(atoms);
    }

    pub fn add_normal(&mut self, rule: NormalRule) {
        self.signature.extend(rule.atoms());
        self.normal_rules.push(rule);
    }

    pub fn add_choice(&mut self, rule: ChoiceRule) {
        self.signature.extend(rule.head.iter().copied());
        self.signature.extend(rule.body.iter().map(|l| l.atom));
        self.choice_rules.push(rule);
    }

    pub fn add_cardinality(&mut self, cc: CardinalityConstraint) {
        self.signature.extend(cc.literals.iter().map(|l| l.atom));
        self.cardinality_constraints.push(cc);
    }

    pub fn add_nogood(&mut self, nogood: Nogood) {
        self.signature.extend(nogood.literals().iter().map(|s| s.atom));
        self.nogoods.push(nogood);
    }

    /// Atoms heading a normal or choice rule.
    pub fn heads(&self) -> BTreeSet<Atom> {
        self.normal_rules
            .iter()
            .map(|r| r.head)
            .chain(self.choice_rules.iter().flat_map(|r| r.head.iter().copied()))
            .collect()
    }

    pub fn max_atom(&self) -> u32 {
        self.signature.iter().next_back().map_or(0, |a| a.id())
    }

    /// Check that every atom used is part of the signature.
    pub fn validate(&self) -> Result<(), AspError> {
        let used = self
            .normal_rules
            .iter()
            .flat_map(|r| r.atoms().collect::<Vec<_>>())
            .chain(self.choice_rules.iter().flat_map(|r| {
                r.head
                    .iter()
                    .copied()
                    .chain(r.body.iter().map(|l| l.atom))
                    .collect::<Vec<_>>()
            }))
            .chain(
                self.cardinality_constraints
                    .iter()
                    .flat_map(|c| c.literals.iter().map(|l| l.atom)),
            )
            .chain(self.nogoods.iter().flat_map(|n| n.literals().iter().map(|s| s.atom)));
        for atom in used {
            if !self.signature.contains(&atom) {
                return Err(AspError::NotInSignature(atom));
            }
        }
        Ok(())
    }

    /// Replace every choice rule by its normal-rule expansion, using fresh
    /// atoms above the current signature.
    pub fn with_expanded_choices(&self) -> GroundProgram {
        let mut fresh = AtomAllocator::above(self.max_atom());
        let mut out = GroundProgram {
            signature: self.signature.clone(),
            normal_rules: self.normal_rules.clone(),
            choice_rules: Vec::new(),
            cardinality_constraints: self.cardinality_constraints.clone(),
            nogoods: self.nogoods.clone(),
        };
        for rule in &self.choice_rules {
            for r in expand_choice(rule, &mut fresh) {
                out.add_normal(r);
            }
        }
        out
    }

    /// Replace every cardinality constraint by its nogood expansion.
    pub fn with_expanded_cardinalities(&self) -> Result<GroundProgram, AspError> {
        let mut out = GroundProgram {
            cardinality_constraints: Vec::new(),
            ..self.clone()
        };
        for cc in &self.cardinality_constraints {
            for ng in expand_cardinality(cc)? {
                out.add_nogood(ng);
            }
        }
        Ok(out)
    }
}

/// The true atoms of a total assignment.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        Interpretation(atoms.into_iter().collect())
    }

    /// From raw ids; panics on 0.
    pub fn from_ids(ids: &[u32]) -> Self {
        Interpretation(ids.iter().map(|&i| Atom::new(i).expect("nonzero atom id")).collect())
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.0.contains(&atom)
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn restrict(&self, signature: &BTreeSet<Atom>) -> Interpretation {
        Interpretation(self.0.intersection(signature).copied().collect())
    }

    /// Lexicographic comparison of the sorted atom lists.
    pub fn lex_cmp(&self, other: &Interpretation) -> std::cmp::Ordering {
        self.0.iter().cmp(other.0.iter())
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(Atom::to_string).collect();
        write!(f, "{{{}}}", ids.join(" "))
    }
}

/// A pseudo-Boolean expression `w_1 l_1 + ... + w_n l_n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObjectiveLevel {
    pub terms: Vec<(i64, Literal)>,
}

/// Objective expressions keyed by priority.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObjectiveFunction {
    pub levels: BTreeMap<i64, ObjectiveLevel>,
}

impl ObjectiveFunction {
    pub fn single(priority: i64, terms: Vec<(i64, Literal)>) -> Self {
        let mut levels = BTreeMap::new();
        levels.insert(priority, ObjectiveLevel { terms });
        ObjectiveFunction { levels }
    }

    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.levels
            .values()
            .flat_map(|l| l.terms.iter().map(|(_, lit)| lit.atom))
    }
}

/// The normal rules standing for a choice rule: `d :- body.` plus
/// `a :- not a', d.` and `a' :- not a.` for every head atom, with `d` and the
/// `a'` drawn from `fresh`.
pub fn expand_choice(rule: &ChoiceRule, fresh: &mut AtomAllocator) -> Vec<NormalRule> {
    let d = fresh.fresh();
    let mut out = Vec::with_capacity(1 + 2 * rule.head.len());
    out.push(NormalRule::new(d, rule.body.iter().copied()));
    for &a in &rule.head {
        let shadow = fresh.fresh();
        out.push(NormalRule::new(a, [shadow.neg(), d.pos()]));
        out.push(NormalRule::new(shadow, [a.neg()]));
    }
    out
}

/// Upper bound on nogoods produced by [`expand_cardinality`].
pub const MAX_CARDINALITY_EXPANSION: u128 = 1_000_000;

/// One nogood per `(n - k + 1)`-subset of the literals, forbidding all of them
/// from being false at once.
pub fn expand_cardinality(cc: &CardinalityConstraint) -> Result<Vec<Nogood>, AspError> {
    let n = cc.literals.len();
    if cc.lower_bound <= 0 {
        return Ok(Vec::new());
    }
    let k = cc.lower_bound as u128;
    if k > n as u128 {
        // unsatisfiable: the empty nogood is violated by everything
        return Ok(vec![Nogood(BTreeSet::new())]);
    }
    let size = n - k as usize + 1;
    let count = binomial(n as u128, size as u128);
    if count > MAX_CARDINALITY_EXPANSION {
        return Err(AspError::ExpansionTooLarge(count));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let signed = idx.iter().map(|&i| Signed::satisfying(cc.literals[i].negate()));
        // a literal and its negation in one subset make the nogood unviolable
        if let Ok(ng) = Nogood::new(signed) {
            out.push(ng);
        }
        // advance to the next combination in lexicographic order
        let mut pos = size;
        while pos > 0 && idx[pos - 1] == pos - 1 + n - size {
            pos -= 1;
        }
        if pos == 0 {
            return Ok(out);
        }
        idx[pos - 1] += 1;
        for j in pos..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}
