//! Enumeration of supported models by backtracking over the program
//! completion.
//!
//! Every distinct rule body gets an auxiliary variable tied to its literals;
//! rules, support conditions and program nogoods become nogoods over atoms and
//! bodies, and cardinality constraints are propagated by counting. The search
//! branches on atoms only, in signature order, so atoms fully determined by
//! earlier ones (such as network wires) never cause branching. Answer sets
//! are obtained by filtering supported candidates through the reduct check.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::semantics::{Compiled, IndexLit};
use super::{AspError, GroundProgram, Interpretation, Nogood};

/// Which candidates the search produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateKind {
    /// Supported models: every true atom heads a rule with a true body.
    Supported,
    /// Like `Supported` but atoms heading no rule may be true freely; these
    /// candidates are a superset of the answer sets.
    FreeExternals,
}

#[derive(Debug, Clone)]
pub struct ModelSearch {
    compiled: Compiled,
    extra: Vec<Vec<IndexLit>>,
    limit: Option<usize>,
}

impl ModelSearch {
    pub fn new(program: &GroundProgram) -> Result<Self, AspError> {
        program.validate()?;
        Ok(ModelSearch {
            compiled: Compiled::new(program),
            extra: Vec::new(),
            limit: None,
        })
    }

    /// Fail with [`AspError::TooManyModels`] once more than `limit` candidates
    /// have been produced.
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    /// Add a nogood over atoms of the program's signature.
    pub fn add_nogood(&mut self, nogood: &Nogood) -> Result<(), AspError> {
        let lits = nogood
            .literals()
            .iter()
            .map(|s| {
                self.compiled
                    .index
                    .get(&s.atom)
                    .map(|&i| (i, s.value))
                    .ok_or(AspError::NotInSignature(s.atom))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.extra.push(lits);
        Ok(())
    }

    /// Visit candidates until `visit` breaks or the space is exhausted.
    pub fn for_each(
        &self,
        kind: CandidateKind,
        mut visit: impl FnMut(&Interpretation) -> ControlFlow<()>,
    ) -> Result<(), AspError> {
        let mut solver = Solver::build(&self.compiled, &self.extra, kind);
        let mut seen = 0usize;
        let mut over_limit = false;
        solver.run(&mut |assignment: &[bool]| {
            seen += 1;
            if self.limit.is_some_and(|l| seen > l) {
                over_limit = true;
                return ControlFlow::Break(());
            }
            visit(&self.compiled.interpretation(assignment))
        });
        if over_limit {
            return Err(AspError::TooManyModels(self.limit.unwrap_or(0)));
        }
        Ok(())
    }

    /// All supported models, lexicographically ordered.
    pub fn supported_models(&self) -> Result<Vec<Interpretation>, AspError> {
        let mut out = Vec::new();
        self.for_each(CandidateKind::Supported, |m| {
            out.push(m.clone());
            ControlFlow::Continue(())
        })?;
        out.sort_by(Interpretation::lex_cmp);
        Ok(out)
    }

    /// All answer sets (respecting added nogoods), lexicographically ordered.
    pub fn answer_sets(&self) -> Result<Vec<Interpretation>, AspError> {
        let mut out = Vec::new();
        self.for_each_answer_set(|m| {
            out.push(m.clone());
            ControlFlow::Continue(())
        })?;
        out.sort_by(Interpretation::lex_cmp);
        Ok(out)
    }

    /// Answer sets under the usual semantics; these are always supported
    /// models, so only those are checked.
    pub fn standard_answer_sets(&self) -> Result<Vec<Interpretation>, AspError> {
        let mut out = Vec::new();
        self.for_each(CandidateKind::Supported, |m| {
            let v = self.compiled.assignment(m).expect("candidate within signature");
            if self.compiled.is_standard_answer_set(&v) {
                out.push(m.clone());
            }
            ControlFlow::Continue(())
        })?;
        out.sort_by(Interpretation::lex_cmp);
        Ok(out)
    }

    pub fn first_answer_set(&self) -> Result<Option<Interpretation>, AspError> {
        let mut found = None;
        self.for_each_answer_set(|m| {
            found = Some(m.clone());
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    fn for_each_answer_set(&self, mut visit: impl FnMut(&Interpretation) -> ControlFlow<()>) -> Result<(), AspError> {
        self.for_each(CandidateKind::FreeExternals, |m| {
            let v = self.compiled.assignment(m).expect("candidate within signature");
            if self.compiled.is_answer_set(&v) {
                visit(m)
            } else {
                ControlFlow::Continue(())
            }
        })
    }
}

type Var = usize;
/// `(var, value)`: the literal holds when `var` is assigned `value`.
type Lit = (Var, bool);

struct Solver {
    atoms: usize,
    values: Vec<Option<bool>>,
    nogoods: Vec<Vec<Lit>>,
    // nogoods containing (var, value), indexed by 2 * var + value
    occurrences: Vec<Vec<usize>>,
    cards: Vec<(Vec<Lit>, i64)>,
    card_occurrences: Vec<Vec<usize>>,
    trail: Vec<Var>,
    // (trail length before the decision, decision var, decision value, already flipped)
    decisions: Vec<(usize, Var, bool, bool)>,
    queue_head: usize,
    conflict_free_root: bool,
}

impl Solver {
    fn build(compiled: &Compiled, extra: &[Vec<IndexLit>], kind: CandidateKind) -> Self {
        let atoms = compiled.atoms.len();
        let mut nogoods: Vec<Vec<Lit>> = Vec::new();
        let mut body_vars: HashMap<(Vec<usize>, Vec<usize>), Var> = HashMap::new();
        let mut next_var = atoms;
        let mut supports: Vec<Vec<Var>> = vec![Vec::new(); atoms];

        for rule in &compiled.rules {
            let mut pos = rule.pos.clone();
            let mut neg = rule.neg.clone();
            pos.sort_unstable();
            neg.sort_unstable();
            let key = (pos, neg);
            let body = match body_vars.get(&key) {
                Some(&b) => b,
                None => {
                    let b = next_var;
                    next_var += 1;
                    let lits: Vec<Lit> = key
                        .0
                        .iter()
                        .map(|&p| (p, true))
                        .chain(key.1.iter().map(|&n| (n, false)))
                        .collect();
                    let mut all = vec![(b, false)];
                    all.extend(lits.iter().copied());
                    nogoods.push(all);
                    for &(v, val) in &lits {
                        nogoods.push(vec![(b, true), (v, !val)]);
                    }
                    body_vars.insert(key, b);
                    b
                }
            };
            supports[rule.head].push(body);
            if !rule.choice {
                nogoods.push(vec![(body, true), (rule.head, false)]);
            }
        }
        for (atom, bodies) in supports.iter().enumerate() {
            if compiled.is_head[atom] {
                let mut ng = vec![(atom, true)];
                ng.extend(bodies.iter().map(|&b| (b, false)));
                nogoods.push(ng);
            } else if kind == CandidateKind::Supported {
                nogoods.push(vec![(atom, true)]);
            }
        }
        nogoods.extend(compiled.nogoods.iter().cloned());
        nogoods.extend(extra.iter().cloned());

        let vars = next_var;
        let mut occurrences = vec![Vec::new(); 2 * vars];
        for (i, ng) in nogoods.iter().enumerate() {
            for &(v, val) in ng {
                occurrences[2 * v + usize::from(val)].push(i);
            }
        }
        let cards = compiled.cards.clone();
        let mut card_occurrences = vec![Vec::new(); vars];
        for (i, (lits, _)) in cards.iter().enumerate() {
            for &(v, _) in lits {
                card_occurrences[v].push(i);
            }
        }
        Solver {
            atoms,
            values: vec![None; vars],
            nogoods,
            occurrences,
            cards,
            card_occurrences,
            trail: Vec::new(),
            decisions: Vec::new(),
            queue_head: 0,
            conflict_free_root: true,
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[bool]) -> ControlFlow<()>) {
        if !self.initial_propagation() {
            return;
        }
        loop {
            match (0..self.atoms).find(|&v| self.values[v].is_none()) {
                None => {
                    let model: Vec<bool> = self.values[..self.atoms]
                        .iter()
                        .map(|v| v.expect("all atoms assigned"))
                        .collect();
                    debug_assert!(self.values.iter().all(Option::is_some));
                    if visit(&model).is_break() || !self.backtrack() {
                        return;
                    }
                }
                Some(var) => {
                    self.decisions.push((self.trail.len(), var, false, false));
                    self.assign(var, false);
                    if !self.propagate() && !self.backtrack() {
                        return;
                    }
                }
            }
        }
    }

    fn initial_propagation(&mut self) -> bool {
        for i in 0..self.nogoods.len() {
            match self.nogoods[i].len() {
                0 => return false,
                1 => {
                    let (v, val) = self.nogoods[i][0];
                    match self.values[v] {
                        Some(x) if x == val => return false,
                        Some(_) => {}
                        None => self.assign(v, !val),
                    }
                }
                _ => {}
            }
        }
        for c in 0..self.cards.len() {
            if !self.check_card(c) {
                return false;
            }
        }
        self.conflict_free_root = self.propagate();
        self.conflict_free_root
    }

    fn assign(&mut self, var: Var, value: bool) {
        debug_assert!(self.values[var].is_none());
        self.values[var] = Some(value);
        self.trail.push(var);
    }

    /// Unit propagation; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.queue_head < self.trail.len() {
            let var = self.trail[self.queue_head];
            self.queue_head += 1;
            let value = self.values[var].expect("trail entries are assigned");
            let slot = 2 * var + usize::from(value);
            for k in 0..self.occurrences[slot].len() {
                let ng = self.occurrences[slot][k];
                if !self.check_nogood(ng) {
                    return false;
                }
            }
            for k in 0..self.card_occurrences[var].len() {
                let c = self.card_occurrences[var][k];
                if !self.check_card(c) {
                    return false;
                }
            }
        }
        true
    }

    fn check_nogood(&mut self, ng: usize) -> bool {
        let mut open = None;
        for &(v, val) in &self.nogoods[ng] {
            match self.values[v] {
                Some(x) if x == val => {}
                Some(_) => return true,
                None => {
                    if open.is_some() {
                        return true;
                    }
                    open = Some((v, val));
                }
            }
        }
        match open {
            None => false,
            Some((v, val)) => {
                self.assign(v, !val);
                true
            }
        }
    }

    fn check_card(&mut self, c: usize) -> bool {
        let (lits, bound) = &self.cards[c];
        let bound = *bound;
        if bound <= 0 {
            return true;
        }
        let n = lits.len() as i64;
        if bound > n {
            return false;
        }
        let mut falsified = 0i64;
        let mut open = Vec::new();
        for &(v, pos) in lits {
            match self.values[v] {
                Some(x) if x != pos => falsified += 1,
                Some(_) => {}
                None => open.push((v, pos)),
            }
        }
        let slack = n - bound;
        if falsified > slack {
            return false;
        }
        if falsified == slack {
            for (v, pos) in open {
                if self.values[v].is_none() {
                    self.assign(v, pos);
                }
            }
        }
        true
    }

    fn backtrack(&mut self) -> bool {
        while let Some((trail_len, var, value, flipped)) = self.decisions.pop() {
            for v in self.trail.drain(trail_len..) {
                self.values[v] = None;
            }
            self.queue_head = trail_len;
            if !flipped {
                self.decisions.push((trail_len, var, !value, true));
                self.assign(var, !value);
                if self.propagate() {
                    return true;
                }
            }
        }
        false
    }
}
