//! Binomial benchmark programs and a simulator for propagator call histories.
//!
//! The simulated solver only ever presents total supported-model candidates
//! to the propagator and never forgets a learned nogood. It walks the
//! candidates in a fixed order, skipping those ruled out by earlier nogoods;
//! every remaining candidate that conflicts with the propagator's constraint
//! is one call.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::asplang::{
    is_answer_set, is_supported_model, AspError, Atom, AtomAllocator, CardinalityConstraint, ChoiceRule, GroundProgram,
    Interpretation, ModelSearch, Nogood, NormalRule, ObjectiveFunction, Signed,
};
use crate::encode::{asp_of_network, WireAtomMap};
use crate::network::{oe_sorter, Network};

fn atoms_1_to(n: usize) -> Vec<Atom> {
    (1..=n as u32).map(|i| Atom::new(i).expect("positive id")).collect()
}

/// Choice over atoms `1..=n` with at least `k` of them true.
pub fn binomial_program(n: usize, k: usize) -> GroundProgram {
    if k > n {
        log::warn!("binomial program with k = {k} > n = {n} has no answer sets");
    }
    let atoms = atoms_1_to(n);
    let mut p = GroundProgram::new();
    p.add_atoms(atoms.iter().copied());
    if n > 0 {
        p.add_choice(ChoiceRule::new(atoms.iter().copied(), []).expect("non-empty head"));
    }
    p.add_cardinality(CardinalityConstraint::new(
        atoms.iter().map(|a| a.pos()).collect(),
        k as i64,
    ));
    p
}

/// [`binomial_program`] with the objective `x1 + ... + xn` at priority 0.
pub fn binomial_opt_program(n: usize, k: usize) -> (GroundProgram, ObjectiveFunction) {
    let objective = ObjectiveFunction::single(0, atoms_1_to(n).into_iter().map(|a| (1, a.pos())).collect());
    (binomial_program(n, k), objective)
}

/// A constraint over total assignments with an explanation function.
pub trait Propagator {
    /// Whether `assignment` violates the constraint.
    fn conflicts(&self, assignment: &Interpretation) -> bool;
    /// One violated nogood of the constraint, or `None` when there is no
    /// conflict. The nogood is a subset of the assignment.
    fn explain(&self, assignment: &Interpretation) -> Option<Nogood>;
    /// Whether `nogood` belongs to the constraint.
    fn contains(&self, nogood: &Nogood) -> bool;
}

/// Forbids every set of `k` of the given atoms being true together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardPropagator {
    atoms: Vec<Atom>,
    k: usize,
}

impl CardPropagator {
    pub fn new(atoms: impl IntoIterator<Item = Atom>, k: usize) -> Self {
        let atoms: BTreeSet<Atom> = atoms.into_iter().collect();
        CardPropagator {
            atoms: atoms.into_iter().collect(),
            k,
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl Propagator for CardPropagator {
    fn conflicts(&self, assignment: &Interpretation) -> bool {
        self.atoms.iter().filter(|a| assignment.contains(**a)).count() >= self.k
    }

    /// The nogood over the `k` smallest true atoms.
    fn explain(&self, assignment: &Interpretation) -> Option<Nogood> {
        if !self.conflicts(assignment) {
            return None;
        }
        let chosen = self
            .atoms
            .iter()
            .filter(|a| assignment.contains(**a))
            .take(self.k)
            .map(|&a| Signed::t(a));
        Some(Nogood::new(chosen).expect("only positive literals"))
    }

    fn contains(&self, nogood: &Nogood) -> bool {
        nogood.len() == self.k
            && nogood
                .literals()
                .iter()
                .all(|s| s.value && self.atoms.binary_search(&s.atom).is_ok())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateOrder {
    Lexicographic,
    Shuffled(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagatorCall {
    pub assignment: Interpretation,
    pub nogood: Nogood,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagatorTrace {
    pub calls: Vec<PropagatorCall>,
    /// The program together with the learned nogoods has no answer sets.
    pub complete: bool,
}

impl PropagatorTrace {
    pub fn len(&self) -> usize {
        self.calls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.calls.is_empty()
    }

    pub fn nogoods(&self) -> impl Iterator<Item = &Nogood> {
        self.calls.iter().map(|c| &c.nogood)
    }

    /// Check the defining conditions of a call history: every assignment is
    /// a supported model satisfying all earlier nogoods and conflicting with
    /// the propagator, whose explanation is a nogood of its constraint
    /// contained in the assignment.
    pub fn validate(&self, program: &GroundProgram, propagator: &impl Propagator) -> Result<(), String> {
        for (i, call) in self.calls.iter().enumerate() {
            let a = &call.assignment;
            if !is_supported_model(program, a) {
                return Err(format!("call {i}: {a} is not a supported model"));
            }
            if let Some(j) = self.calls[..i].iter().position(|c| c.nogood.violated_by(a)) {
                return Err(format!("call {i}: {a} violates the nogood of call {j}"));
            }
            if !propagator.conflicts(a) {
                return Err(format!("call {i}: {a} does not conflict"));
            }
            if !propagator.contains(&call.nogood) || !call.nogood.violated_by(a) {
                return Err(format!(
                    "call {i}: explanation {} is not a violated constraint nogood",
                    call.nogood
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PropagatorTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, call) in self.calls.iter().enumerate() {
            writeln!(
                f,
                "call {} size={} nogood={}",
                i + 1,
                call.assignment.len(),
                call.nogood
            )?;
        }
        writeln!(f, "m={} complete={}", self.calls.len(), self.complete)
    }
}

/// Simulate the unsatisfiability phase of branch and bound against
/// `propagator`. Candidates are the supported models of `program`.
///
/// The walk stops early, with an incomplete trace, if it meets an answer set
/// the propagator accepts.
pub fn run_pch(
    program: &GroundProgram,
    propagator: &impl Propagator,
    order: CandidateOrder,
) -> Result<PropagatorTrace, AspError> {
    let search = ModelSearch::new(program)?;
    let mut candidates = search.supported_models()?;
    if let CandidateOrder::Shuffled(seed) = order {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut calls: Vec<PropagatorCall> = Vec::new();
    for candidate in candidates {
        if calls.iter().any(|c| c.nogood.violated_by(&candidate)) {
            continue;
        }
        if let Some(nogood) = propagator.explain(&candidate) {
            calls.push(PropagatorCall {
                assignment: candidate,
                nogood,
            });
        } else if is_answer_set(program, &candidate) {
            return Ok(PropagatorTrace { calls, complete: false });
        }
    }
    let mut closed = ModelSearch::new(program)?;
    for c in &calls {
        closed.add_nogood(&c.nogood)?;
    }
    let complete = closed.first_answer_set()?.is_none();
    Ok(PropagatorTrace { calls, complete })
}

/// Which network, if any, sits between the binomial atoms and the propagator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkChoice {
    None,
    Full,
    Depth(usize),
}

/// The binomial program over `1..=n`, extended by the rules of a sorter fed
/// with those atoms. Returns the program and the atoms the propagator should
/// watch (the network outputs, or the inputs without a network).
pub fn sorter_binomial_program(n: usize, k: usize, choice: NetworkChoice) -> (GroundProgram, Vec<Atom>) {
    let mut program = binomial_program(n, k);
    let inputs = atoms_1_to(n);
    let network = match choice {
        NetworkChoice::None => return (program, inputs),
        NetworkChoice::Full => oe_sorter(n),
        NetworkChoice::Depth(d) => oe_sorter(n).limit_depth(d),
    };
    let (rules, map) = network_rules(&network, &inputs, &mut AtomAllocator::above(n as u32));
    for rule in rules {
        program.add_normal(rule);
    }
    (program, map.outputs().to_vec())
}

/// Run the call history for `pch N K --network ...`: the binomial program
/// with a cardinality propagator forbidding `k` true watched atoms.
pub fn binomial_pch(
    n: usize,
    k: usize,
    choice: NetworkChoice,
    order: CandidateOrder,
) -> Result<(PropagatorTrace, GroundProgram, CardPropagator), AspError> {
    let (program, watched) = sorter_binomial_program(n, k, choice);
    let propagator = CardPropagator::new(watched, k);
    let trace = run_pch(&program, &propagator, order)?;
    Ok((trace, program, propagator))
}

/// Distinct positions (in `watched`) of the first true watched atom over
/// the learned nogoods.
pub fn distinct_first_true(trace: &PropagatorTrace, watched: &[Atom]) -> usize {
    trace
        .calls
        .iter()
        .filter_map(|c| {
            watched
                .iter()
                .position(|a| c.nogood.literals().contains(&Signed::t(*a)))
        })
        .collect::<BTreeSet<_>>()
        .len()
}

/// Whether every binary input leaves `network` sorted.
pub fn sorted_output_check(network: &Network) -> bool {
    network.sorts_all_binary_inputs()
}

/// Rules of asp(N) fed from the given atoms, for callers that build their
/// own programs.
pub fn network_rules(network: &Network, inputs: &[Atom], fresh: &mut AtomAllocator) -> (Vec<NormalRule>, WireAtomMap) {
    let map = WireAtomMap::with_inputs(inputs, network.depth(), fresh).expect("distinct inputs");
    let rules = asp_of_network(network, &map).expect("map built for this network");
    (rules, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asplang::{enumerate_answer_sets, optimal_value};

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn binomial_answer_sets() {
        assert_eq!(enumerate_answer_sets(&binomial_program(3, 2)).unwrap().len(), 4);
        assert_eq!(enumerate_answer_sets(&binomial_program(5, 0)).unwrap().len(), 32);
        assert_eq!(enumerate_answer_sets(&binomial_program(2, 3)).unwrap().len(), 0);
    }

    #[test]
    fn binomial_optimum() {
        let (p, e) = binomial_opt_program(4, 2);
        let level = &e.levels[&0];
        assert_eq!(optimal_value(&p, level).unwrap(), Some(2));
        let optimal = enumerate_answer_sets(&p)
            .unwrap()
            .into_iter()
            .filter(|m| crate::asplang::evaluate(level, m).unwrap() == 2)
            .count();
        assert_eq!(optimal, 6);
        let (p, e) = binomial_opt_program(1, 1);
        assert_eq!(enumerate_answer_sets(&p).unwrap(), vec![Interpretation::from_ids(&[1])]);
        assert_eq!(optimal_value(&p, &e.levels[&0]).unwrap(), Some(1));
    }

    #[test]
    fn card_propagator_explanations() {
        let prop = CardPropagator::new(atoms_1_to(3), 2);
        let all = Interpretation::from_ids(&[1, 2, 3]);
        assert_eq!(
            prop.explain(&all).unwrap(),
            Nogood::new([Signed::t(Atom::new(1).unwrap()), Signed::t(Atom::new(2).unwrap())]).unwrap()
        );
        assert_eq!(prop.explain(&Interpretation::from_ids(&[3])), None);
        let singles = CardPropagator::new(atoms_1_to(3), 1);
        assert_eq!(singles.explain(&Interpretation::from_ids(&[2, 3])).unwrap().len(), 1);
    }

    #[test]
    fn table_values_without_network() {
        for (n, m) in [(8, 70), (10, 252)] {
            let (trace, program, prop) =
                binomial_pch(n, n / 2, NetworkChoice::None, CandidateOrder::Lexicographic).unwrap();
            assert_eq!(trace.len() as u64, m);
            assert!(trace.complete);
            trace.validate(&program, &prop).unwrap();
        }
    }

    #[test]
    fn count_is_order_independent() {
        for seed in 0..3 {
            let (trace, _, _) = binomial_pch(6, 3, NetworkChoice::None, CandidateOrder::Shuffled(seed)).unwrap();
            assert_eq!(trace.len() as u64, binom(6, 3));
        }
    }

    #[test]
    fn sorter_shortens_history() {
        let (trace, program, prop) = binomial_pch(8, 4, NetworkChoice::Full, CandidateOrder::Lexicographic).unwrap();
        assert!(trace.len() <= 5, "m = {}", trace.len());
        assert!(trace.complete);
        trace.validate(&program, &prop).unwrap();
        assert!(distinct_first_true(&trace, prop.atoms()) <= 5);
    }

    #[test]
    fn sortedness() {
        assert!(sorted_output_check(&oe_sorter(6)));
        assert!(!sorted_output_check(&oe_sorter(6).limit_depth(1)));
        assert!(sorted_output_check(&Network::empty(1)));
    }

    #[test]
    fn trace_format() {
        let (trace, _, _) = binomial_pch(3, 2, NetworkChoice::None, CandidateOrder::Lexicographic).unwrap();
        let text = trace.to_string();
        assert!(text.ends_with("m=3 complete=true\n"), "{text}");
        assert_eq!(text.lines().count(), 4);
    }
}
