use std::collections::{BTreeSet, HashMap};

use super::{AspError, Atom, GroundProgram, Interpretation, Literal, NormalRule, ObjectiveLevel};

/// `head :- body.` with a purely positive body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveRule {
    pub head: Atom,
    pub body: BTreeSet<Atom>,
}

/// The reduct of normal rules: drop rules whose negative body meets the
/// interpretation, strip negative bodies from the rest.
pub fn reduct(rules: &[NormalRule], interpretation: &Interpretation) -> Vec<PositiveRule> {
    rules
        .iter()
        .filter(|r| r.neg_body.iter().all(|a| !interpretation.contains(*a)))
        .map(|r| PositiveRule {
            head: r.head,
            body: r.pos_body.clone(),
        })
        .collect()
}

/// Classical satisfaction of rules, nogoods and cardinality constraints.
pub fn satisfies(program: &GroundProgram, interpretation: &Interpretation) -> bool {
    let compiled = Compiled::new(program);
    compiled
        .assignment(interpretation)
        .is_some_and(|v| compiled.satisfies(&v))
}

pub fn is_answer_set(program: &GroundProgram, interpretation: &Interpretation) -> bool {
    let compiled = Compiled::new(program);
    compiled
        .assignment(interpretation)
        .is_some_and(|v| compiled.is_answer_set(&v))
}

/// Answer sets in the usual sense: atoms heading no rule are false unless
/// forced otherwise, so the least model of the reduct must equal the model.
pub fn is_standard_answer_set(program: &GroundProgram, interpretation: &Interpretation) -> bool {
    let compiled = Compiled::new(program);
    compiled
        .assignment(interpretation)
        .is_some_and(|v| compiled.is_standard_answer_set(&v))
}

pub fn is_supported_model(program: &GroundProgram, interpretation: &Interpretation) -> bool {
    let compiled = Compiled::new(program);
    compiled
        .assignment(interpretation)
        .is_some_and(|v| compiled.is_supported(&v))
}

/// Sum of the weights of satisfied terms.
pub fn evaluate(level: &ObjectiveLevel, interpretation: &Interpretation) -> Result<i64, AspError> {
    level
        .terms
        .iter()
        .filter(|(_, lit)| lit.holds_in(interpretation))
        .try_fold(0i64, |acc, (w, _)| acc.checked_add(*w).ok_or(AspError::Overflow))
}

/// Signed literal over a dense atom index.
pub(crate) type IndexLit = (usize, bool);

#[derive(Debug, Clone)]
pub(crate) struct IndexRule {
    pub head: usize,
    pub pos: Vec<usize>,
    pub neg: Vec<usize>,
    pub choice: bool,
}

/// A program over dense atom indices `0..atoms.len()` in signature order.
/// Choice rules are flattened to one entry per head atom.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub atoms: Vec<Atom>,
    pub index: HashMap<Atom, usize>,
    pub rules: Vec<IndexRule>,
    pub nogoods: Vec<Vec<IndexLit>>,
    pub cards: Vec<(Vec<IndexLit>, i64)>,
    pub is_head: Vec<bool>,
    rules_by_pos: Vec<Vec<usize>>,
}

impl Compiled {
    pub fn new(program: &GroundProgram) -> Self {
        let atoms: Vec<Atom> = program.signature.iter().copied().collect();
        let index: HashMap<Atom, usize> = atoms.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let idx = |a: &Atom| *index.get(a).expect("program validated against its signature");
        let lit = |l: &Literal| (idx(&l.atom), l.positive);

        let mut rules = Vec::new();
        for r in &program.normal_rules {
            rules.push(IndexRule {
                head: idx(&r.head),
                pos: r.pos_body.iter().map(idx).collect(),
                neg: r.neg_body.iter().map(idx).collect(),
                choice: false,
            });
        }
        for r in &program.choice_rules {
            let pos: Vec<usize> = r.body.iter().filter(|l| l.positive).map(|l| idx(&l.atom)).collect();
            let neg: Vec<usize> = r.body.iter().filter(|l| !l.positive).map(|l| idx(&l.atom)).collect();
            for h in &r.head {
                rules.push(IndexRule {
                    head: idx(h),
                    pos: pos.clone(),
                    neg: neg.clone(),
                    choice: true,
                });
            }
        }
        let nogoods = program
            .nogoods
            .iter()
            .map(|n| n.literals().iter().map(|s| (idx(&s.atom), s.value)).collect())
            .collect();
        let cards = program
            .cardinality_constraints
            .iter()
            .map(|c| (c.literals.iter().map(lit).collect(), c.lower_bound))
            .collect();
        let mut is_head = vec![false; atoms.len()];
        let mut rules_by_pos = vec![Vec::new(); atoms.len()];
        for (ri, r) in rules.iter().enumerate() {
            is_head[r.head] = true;
            for &p in &r.pos {
                rules_by_pos[p].push(ri);
            }
        }
        Compiled {
            atoms,
            index,
            rules,
            nogoods,
            cards,
            is_head,
            rules_by_pos,
        }
    }

    /// Dense assignment for `interpretation`, or `None` if it leaves the signature.
    pub fn assignment(&self, interpretation: &Interpretation) -> Option<Vec<bool>> {
        let mut v = vec![false; self.atoms.len()];
        for a in interpretation.atoms() {
            v[*self.index.get(a)?] = true;
        }
        Some(v)
    }

    pub fn interpretation(&self, v: &[bool]) -> Interpretation {
        Interpretation::new(v.iter().zip(&self.atoms).filter(|(t, _)| **t).map(|(_, a)| *a))
    }

    fn body_holds(r: &IndexRule, v: &[bool]) -> bool {
        r.pos.iter().all(|&p| v[p]) && r.neg.iter().all(|&n| !v[n])
    }

    pub fn satisfies_constraints(&self, v: &[bool]) -> bool {
        self.nogoods.iter().all(|ng| ng.iter().any(|&(a, val)| v[a] != val))
            && self.cards.iter().all(|(lits, bound)| {
                let count = lits.iter().filter(|&&(a, pos)| v[a] == pos).count();
                i64::try_from(count).unwrap_or(i64::MAX) >= *bound
            })
    }

    pub fn satisfies(&self, v: &[bool]) -> bool {
        self.rules
            .iter()
            .all(|r| r.choice || v[r.head] || !Self::body_holds(r, v))
            && self.satisfies_constraints(v)
    }

    pub fn is_supported(&self, v: &[bool]) -> bool {
        if !self.satisfies(v) {
            return false;
        }
        let mut supported = vec![false; v.len()];
        for r in &self.rules {
            if v[r.head] && Self::body_holds(r, v) {
                supported[r.head] = true;
            }
        }
        v.iter().zip(&supported).all(|(t, s)| !*t || *s)
    }

    /// A model is an answer set iff the least model of its reduct, seeded with
    /// its true non-head atoms, gives back the model itself.
    pub fn is_answer_set(&self, v: &[bool]) -> bool {
        self.satisfies(v) && self.least_reduct_model(v, true) == v
    }

    pub fn is_standard_answer_set(&self, v: &[bool]) -> bool {
        self.satisfies(v) && self.least_reduct_model(v, false) == v
    }

    fn least_reduct_model(&self, v: &[bool], seed_non_heads: bool) -> Vec<bool> {
        let mut derived: Vec<bool> = v
            .iter()
            .zip(&self.is_head)
            .map(|(t, h)| seed_non_heads && *t && !*h)
            .collect();
        let applicable: Vec<bool> = self
            .rules
            .iter()
            .map(|r| r.neg.iter().all(|&n| !v[n]) && (!r.choice || v[r.head]))
            .collect();
        let mut missing: Vec<usize> = self
            .rules
            .iter()
            .map(|r| r.pos.iter().filter(|&&p| !derived[p]).count())
            .collect();
        let mut queue: Vec<usize> = Vec::new();
        for (ri, r) in self.rules.iter().enumerate() {
            if applicable[ri] && missing[ri] == 0 && !derived[r.head] {
                derived[r.head] = true;
                queue.push(r.head);
            }
        }
        while let Some(atom) = queue.pop() {
            for &ri in &self.rules_by_pos[atom] {
                // positive bodies are duplicate-free, so each hit counts once
                missing[ri] -= 1;
                let head = self.rules[ri].head;
                if applicable[ri] && missing[ri] == 0 && !derived[head] {
                    derived[head] = true;
                    queue.push(head);
                }
            }
        }
        derived
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asplang::{ChoiceRule, Nogood, Signed};

    fn a(i: u32) -> Atom {
        Atom::new(i).unwrap()
    }

    fn interp(ids: &[u32]) -> Interpretation {
        Interpretation::from_ids(ids)
    }

    #[test]
    fn reduct_examples() {
        let r = NormalRule::new(a(1), [a(2).neg()]);
        assert_eq!(
            reduct(&[r], &interp(&[1])),
            vec![PositiveRule {
                head: a(1),
                body: BTreeSet::new()
            }]
        );
        let loop_rule = NormalRule::new(a(1), [a(1).neg()]);
        assert!(reduct(&[loop_rule], &interp(&[1])).is_empty());
        let mixed = NormalRule::new(a(1), [a(2).pos(), a(3).neg()]);
        assert_eq!(
            reduct(&[mixed], &interp(&[])),
            vec![PositiveRule {
                head: a(1),
                body: BTreeSet::from([a(2)])
            }]
        );
    }

    #[test]
    fn even_loop_has_two_answer_sets() {
        let mut p = GroundProgram::new();
        p.add_normal(NormalRule::new(a(1), [a(2).neg()]));
        p.add_normal(NormalRule::new(a(2), [a(1).neg()]));
        assert!(is_answer_set(&p, &interp(&[1])));
        assert!(is_answer_set(&p, &interp(&[2])));
        assert!(!is_answer_set(&p, &interp(&[1, 2])));
        assert!(!is_answer_set(&p, &interp(&[])));
    }

    #[test]
    fn positive_loop_is_unfounded() {
        let mut p = GroundProgram::new();
        p.add_normal(NormalRule::new(a(1), [a(1).pos()]));
        assert!(!is_answer_set(&p, &interp(&[1])));
        assert!(is_answer_set(&p, &interp(&[])));
        assert!(is_supported_model(&p, &interp(&[1])));
    }

    #[test]
    fn nogood_rejects_fact() {
        let mut p = GroundProgram::new();
        p.add_normal(NormalRule::fact(a(1)));
        p.add_nogood(Nogood::new([Signed::t(a(1))]).unwrap());
        assert!(!is_answer_set(&p, &interp(&[1])));
        assert!(!is_answer_set(&p, &interp(&[])));
    }

    #[test]
    fn choice_rule_justifies_any_subset() {
        let mut p = GroundProgram::new();
        p.add_choice(ChoiceRule::new([a(1), a(2)], []).unwrap());
        for ids in [&[][..], &[1], &[2], &[1, 2]] {
            assert!(is_answer_set(&p, &interp(ids)));
        }
    }

    #[test]
    fn non_head_atoms_are_free() {
        let mut p = GroundProgram::new();
        p.add_atoms([a(1)]);
        assert!(is_answer_set(&p, &interp(&[1])));
        assert!(is_answer_set(&p, &interp(&[])));
        assert!(!is_supported_model(&p, &interp(&[1])));
    }

    #[test]
    fn standard_semantics_closes_non_heads() {
        let mut p = GroundProgram::new();
        p.add_atoms([a(1)]);
        p.add_normal(NormalRule::new(a(2), [a(1).pos()]));
        assert!(is_standard_answer_set(&p, &interp(&[])));
        assert!(!is_standard_answer_set(&p, &interp(&[1, 2])));
        assert!(is_answer_set(&p, &interp(&[1, 2])));
    }

    #[test]
    fn interpretation_outside_signature_is_rejected() {
        let p = GroundProgram::new();
        assert!(!is_answer_set(&p, &interp(&[3])));
    }

    #[test]
    fn evaluate_examples() {
        let e = ObjectiveLevel {
            terms: vec![(40, a(1).pos()), (70, a(2).pos())],
        };
        assert_eq!(evaluate(&e, &interp(&[2])).unwrap(), 70);
        assert_eq!(evaluate(&e, &interp(&[])).unwrap(), 0);
        let neg = ObjectiveLevel {
            terms: vec![(30, a(1).neg())],
        };
        assert_eq!(evaluate(&neg, &interp(&[])).unwrap(), 30);
        let big = ObjectiveLevel {
            terms: vec![(i64::MAX, a(1).pos()), (1, a(2).pos())],
        };
        assert_eq!(evaluate(&big, &interp(&[1, 2])).unwrap_err(), AspError::Overflow);
    }
}
