//! Exhaustive enumeration over all subsets of the signature.

use super::semantics::Compiled;
use super::{evaluate, AspError, GroundProgram, Interpretation, ObjectiveLevel};

/// Largest signature accepted by the brute-force enumerators.
pub const MAX_BRUTE_FORCE_ATOMS: usize = 24;

fn enumerate_where(
    program: &GroundProgram,
    keep: impl Fn(&Compiled, &[bool]) -> bool,
) -> Result<Vec<Interpretation>, AspError> {
    let atoms = program.signature.len();
    if atoms > MAX_BRUTE_FORCE_ATOMS {
        return Err(AspError::TooManyAtoms {
            atoms,
            limit: MAX_BRUTE_FORCE_ATOMS,
        });
    }
    program.validate()?;
    let compiled = Compiled::new(program);
    let mut v = vec![false; atoms];
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << atoms) {
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = (mask >> i) & 1 == 1;
        }
        if keep(&compiled, &v) {
            out.push(compiled.interpretation(&v));
        }
    }
    out.sort_by(Interpretation::lex_cmp);
    Ok(out)
}

/// All answer sets, in lexicographic order of their sorted atom lists.
pub fn enumerate_answer_sets(program: &GroundProgram) -> Result<Vec<Interpretation>, AspError> {
    enumerate_where(program, Compiled::is_answer_set)
}

/// Answer sets under the usual semantics, where atoms heading no rule are
/// false unless derived.
pub fn enumerate_standard_answer_sets(program: &GroundProgram) -> Result<Vec<Interpretation>, AspError> {
    enumerate_where(program, Compiled::is_standard_answer_set)
}

/// All supported models, in lexicographic order.
pub fn enumerate_supported_models(program: &GroundProgram) -> Result<Vec<Interpretation>, AspError> {
    enumerate_where(program, Compiled::is_supported)
}

/// The minimum objective value over all answer sets, `None` if there are none.
pub fn optimal_value(program: &GroundProgram, level: &ObjectiveLevel) -> Result<Option<i64>, AspError> {
    let mut best = None;
    for m in enumerate_answer_sets(program)? {
        let v = evaluate(level, &m)?;
        best = Some(best.map_or(v, |b: i64| b.min(v)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asplang::{Atom, CardinalityConstraint, ChoiceRule, NormalRule};

    fn a(i: u32) -> Atom {
        Atom::new(i).unwrap()
    }

    fn ids(models: &[Interpretation]) -> Vec<Vec<u32>> {
        models
            .iter()
            .map(|m| m.atoms().iter().map(|a| a.id()).collect())
            .collect()
    }

    fn at_least(n: u32, k: i64) -> GroundProgram {
        let mut p = GroundProgram::new();
        p.add_choice(ChoiceRule::new((1..=n).map(a), []).unwrap());
        p.add_cardinality(CardinalityConstraint::new((1..=n).map(|i| a(i).pos()).collect(), k));
        p
    }

    #[test]
    fn at_least_two_of_three() {
        let models = enumerate_answer_sets(&at_least(3, 2)).unwrap();
        assert_eq!(ids(&models), vec![vec![1, 2], vec![1, 2, 3], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn empty_program_has_the_empty_answer_set() {
        assert_eq!(
            enumerate_answer_sets(&GroundProgram::new()).unwrap(),
            vec![Interpretation::default()]
        );
    }

    #[test]
    fn odd_loop_has_no_answer_set() {
        let mut p = GroundProgram::new();
        p.add_normal(NormalRule::new(a(1), [a(1).neg()]));
        assert!(enumerate_answer_sets(&p).unwrap().is_empty());
    }

    #[test]
    fn self_support_gives_two_supported_models() {
        let mut p = GroundProgram::new();
        p.add_normal(NormalRule::new(a(1), [a(1).pos()]));
        assert_eq!(ids(&enumerate_supported_models(&p).unwrap()), vec![vec![], vec![1]]);
        assert_eq!(ids(&enumerate_answer_sets(&p).unwrap()), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn expanded_choice_supports_every_subset() {
        let mut p = GroundProgram::new();
        p.add_choice(ChoiceRule::new((1..=3).map(a), []).unwrap());
        let expanded = p.with_expanded_choices();
        let sig = p.signature.clone();
        let mut projected: Vec<Interpretation> = enumerate_supported_models(&expanded)
            .unwrap()
            .iter()
            .map(|m| m.restrict(&sig))
            .collect();
        projected.sort_by(Interpretation::lex_cmp);
        projected.dedup();
        assert_eq!(projected.len(), 8);
    }

    #[test]
    fn optimal_values() {
        let mut p = at_least(4, 2);
        let unit = ObjectiveLevel {
            terms: (1..=4).map(|i| (1, a(i).pos())).collect(),
        };
        assert_eq!(optimal_value(&p, &unit).unwrap(), Some(2));
        assert_eq!(optimal_value(&p, &ObjectiveLevel::default()).unwrap(), Some(0));
        p.add_normal(NormalRule::new(a(9), [a(9).neg()]));
        assert_eq!(optimal_value(&p, &unit).unwrap(), None);
    }

    #[test]
    fn guard_trips_above_the_limit() {
        let mut p = GroundProgram::new();
        p.add_atoms((1..=25).map(a));
        assert!(matches!(
            enumerate_answer_sets(&p),
            Err(AspError::TooManyAtoms { atoms: 25, .. })
        ));
    }
}
