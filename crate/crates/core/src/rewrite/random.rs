//! Seeded generator of small programs with minimize statements.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::aspif::{AspifDocument, Body, HeadKind, Minimize, Output, Rule, Statement};
use crate::asplang::{Atom, Literal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomProgramParams {
    /// Atoms of the generated program (at least 2).
    pub max_atoms: usize,
    /// Terms over all minimize statements.
    pub max_terms: usize,
    pub max_rules: usize,
}

impl Default for RandomProgramParams {
    fn default() -> Self {
        RandomProgramParams {
            max_atoms: 8,
            max_terms: 10,
            max_rules: 5,
        }
    }
}

fn literal(rng: &mut impl Rng, atoms: &[Atom]) -> Literal {
    let a = *atoms.choose(rng).expect("at least one atom");
    Literal::new(a, rng.gen_bool(0.7))
}

/// A program with a choice rule, a few normal rules and constraints, and one
/// or two priority levels of minimize terms. Weights range over `-2..=9` and
/// literals may repeat, so normalization and pass-through get exercised.
pub fn random_document(rng: &mut impl Rng, params: &RandomProgramParams) -> AspifDocument {
    let m = rng.gen_range(2..=params.max_atoms.max(2));
    let atoms: Vec<Atom> = (1..=m as u32).map(|i| Atom::new(i).expect("positive id")).collect();
    let mut doc = AspifDocument::new();

    let mut chosen: Vec<Atom> = atoms.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
    if chosen.is_empty() {
        chosen.push(atoms[0]);
    }
    let choice_body = if rng.gen_bool(0.2) {
        vec![literal(rng, &atoms)]
    } else {
        Vec::new()
    };
    doc.statements.push(Statement::Rule(Rule {
        kind: HeadKind::Choice,
        head: chosen,
        body: Body::Normal(choice_body),
    }));

    for _ in 0..rng.gen_range(0..=params.max_rules) {
        let head = *atoms.choose(rng).expect("atoms");
        let body: Vec<Literal> = (0..rng.gen_range(0..=2)).map(|_| literal(rng, &atoms)).collect();
        doc.statements.push(Statement::Rule(Rule::normal(head, body)));
    }
    if rng.gen_bool(0.3) {
        let body: Vec<Literal> = (0..rng.gen_range(1..=2)).map(|_| literal(rng, &atoms)).collect();
        doc.statements.push(Statement::Rule(Rule {
            kind: HeadKind::Disjunction,
            head: Vec::new(),
            body: Body::Normal(body),
        }));
    }
    if rng.gen_bool(0.3) {
        let w = rng.gen_range(1..=3);
        let terms: Vec<(Literal, i64)> = (0..rng.gen_range(1..=3)).map(|_| (literal(rng, &atoms), w)).collect();
        let lower_bound = rng.gen_range(1..=(terms.len() as i64 * w));
        doc.statements.push(Statement::Rule(Rule {
            kind: HeadKind::Disjunction,
            head: Vec::new(),
            body: Body::Weight { lower_bound, terms },
        }));
    }

    let n_terms = rng.gen_range(1..=params.max_terms.max(1));
    let two_levels = rng.gen_bool(0.25);
    let mut minimize: Vec<Minimize> = Vec::new();
    for _ in 0..n_terms {
        let priority = if two_levels && rng.gen_bool(0.5) { 1 } else { 0 };
        let weight = rng.gen_range(-2..=9);
        let term = (literal(rng, &atoms), weight);
        // occasionally split a level over several statements
        match minimize.iter_mut().rev().find(|s| s.priority == priority) {
            Some(s) if !rng.gen_bool(0.1) => s.terms.push(term),
            _ => minimize.push(Minimize {
                priority,
                terms: vec![term],
            }),
        }
    }
    doc.statements.extend(minimize.into_iter().map(Statement::Minimize));
    if rng.gen_bool(0.3) {
        doc.statements.push(Statement::Output(Output {
            name: format!("a({})", atoms[0]),
            condition: vec![atoms[0].pos()],
        }));
    }
    doc
}
