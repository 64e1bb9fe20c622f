//! Rewriting of minimize statements through weighted sorting networks.
//!
//! For every priority level the positive terms are fed into a (possibly
//! depth-limited) odd-even sorter whose rules are added to the program. The
//! term weights are placed on the input wires and pushed through the network
//! by sparse decomposition propagation; the new minimize statement weighs the
//! wire atoms instead of the original literals.

mod random;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::aspif::{AspifDocument, Minimize, Rule, Statement};
use crate::asplang::{Atom, AtomAllocator, Literal, NormalRule};
use crate::encode::{asp_of_network, prune_dead_wires, EncodeError, WireAtomMap};
use crate::network::{decompose_sparse, oe_sorter, Network};
use crate::propagate::{propagate_decomposition, PropagateError, WeightMatrix};

pub use random::{random_document, RandomProgramParams};
pub use verify::{
    answer_sets_of, run_random_suite, verification_grid, verify_document, verify_rewrite, Counterexample, SuiteFailure,
    SuiteReport, VerifyError, VerifyReport,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("sparseness must be at least 1")]
    ZeroSparseness,
    #[error("weight arithmetic overflowed")]
    Overflow,
    #[error("not enough atom ids left above {0}")]
    AtomSpace(u32),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Propagate(#[from] PropagateError),
}

/// Block size of the sparse decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sparseness {
    Finite(usize),
    /// One block spanning the whole network.
    Infinite,
}

impl Sparseness {
    fn block_size(self, depth: usize) -> usize {
        match self {
            Sparseness::Finite(k) => k,
            Sparseness::Infinite => depth.max(1),
        }
    }
}

impl fmt::Display for Sparseness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sparseness::Finite(k) => write!(f, "{k}"),
            Sparseness::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Sparseness {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(Sparseness::Infinite);
        }
        match s.parse::<usize>() {
            Ok(0) => Err("sparseness must be at least 1".into()),
            Ok(k) => Ok(Sparseness::Finite(k)),
            Err(_) => Err(format!("expected a positive integer or `inf`, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NetworkScheme {
    #[default]
    OddEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewriteConfig {
    /// Drop comparators above this level; `None` keeps the full sorter.
    pub depth_limit: Option<usize>,
    pub sparseness: Sparseness,
    /// Without propagation the weights stay on the input wires.
    pub propagate: bool,
    /// Attach terms to wires by descending weight instead of statement order.
    pub sort_inputs: bool,
    pub scheme: NetworkScheme,
    /// Drop network rules no weighted wire depends on.
    pub prune_dead_wires: bool,
}

impl Default for RewriteConfig {
    fn default() -> Self {
        RewriteConfig {
            depth_limit: None,
            sparseness: Sparseness::Finite(1),
            propagate: true,
            sort_inputs: false,
            scheme: NetworkScheme::OddEven,
            prune_dead_wires: false,
        }
    }
}

impl RewriteConfig {
    pub fn validate(&self) -> Result<(), RewriteError> {
        if self.sparseness == Sparseness::Finite(0) {
            return Err(RewriteError::ZeroSparseness);
        }
        Ok(())
    }

    /// The network used for `n` terms.
    pub fn network(&self, n: usize) -> Network {
        let full = match self.scheme {
            NetworkScheme::OddEven => oe_sorter(n),
        };
        match self.depth_limit {
            Some(d) => full.limit_depth(d),
            None => full,
        }
    }
}

impl fmt::Display for RewriteConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.depth_limit {
            Some(d) => write!(f, "depth={d}")?,
            None => write!(f, "depth=full")?,
        }
        write!(
            f,
            " sparseness={} propagate={} sort_inputs={}",
            self.sparseness, self.propagate, self.sort_inputs
        )
    }
}

/// Bookkeeping for one priority level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub priority: i64,
    /// Positive terms fed into the network (0 when the level was left alone).
    pub inputs: usize,
    pub comparators: usize,
    pub depth: usize,
    /// Rewritten terms in the new minimize statement, without pass-through.
    pub outputs: usize,
    pub atoms_added: usize,
    pub rules_added: usize,
    pub passthrough: usize,
}

impl fmt::Display for LevelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "priority={} inputs={} comparators={} depth={} outputs={} atoms_added={} rules_added={} passthrough={}",
            self.priority,
            self.inputs,
            self.comparators,
            self.depth,
            self.outputs,
            self.atoms_added,
            self.rules_added,
            self.passthrough
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteReport {
    pub levels: Vec<LevelReport>,
}

impl fmt::Display for RewriteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for level in &self.levels {
            writeln!(f, "{level}")?;
        }
        Ok(())
    }
}

/// Result of rewriting one priority level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRewrite {
    pub rules: Vec<NormalRule>,
    /// Rewritten terms followed by the pass-through terms.
    pub terms: Vec<(Literal, i64)>,
    pub map: WireAtomMap,
    pub report: LevelReport,
}

/// Positive terms to rewrite and pass-through terms.
pub type SplitTerms = (Vec<(Literal, u64)>, Vec<(Literal, i64)>);

/// Merge duplicate literals (keeping first occurrences in order) and split
/// the terms into positive ones and pass-through ones with weight <= 0.
pub fn normalize_terms(terms: &[(Literal, i64)]) -> Result<SplitTerms, RewriteError> {
    let mut order: Vec<Literal> = Vec::new();
    let mut sums: BTreeMap<Literal, i64> = BTreeMap::new();
    for &(lit, w) in terms {
        match sums.get_mut(&lit) {
            Some(s) => *s = s.checked_add(w).ok_or(RewriteError::Overflow)?,
            None => {
                sums.insert(lit, w);
                order.push(lit);
            }
        }
    }
    let mut positive = Vec::new();
    let mut passthrough = Vec::new();
    for lit in order {
        let w = sums[&lit];
        if w > 0 {
            positive.push((lit, w.unsigned_abs()));
        } else {
            passthrough.push((lit, w));
        }
    }
    Ok((positive, passthrough))
}

/// One bridging rule `x_i0 :- l_i` per term, with fresh input atoms in the
/// order of `terms`.
pub fn wire_inputs<W>(terms: &[(Literal, W)], fresh: &mut AtomAllocator) -> (Vec<NormalRule>, Vec<Atom>) {
    let mut rules = Vec::with_capacity(terms.len());
    let mut inputs = Vec::with_capacity(terms.len());
    for (lit, _) in terms {
        let x = fresh.fresh();
        rules.push(NormalRule::new(x, [*lit]));
        inputs.push(x);
    }
    (rules, inputs)
}

fn reserve(fresh: &AtomAllocator, count: usize) -> Result<(), RewriteError> {
    let last = u64::from(fresh.peek()) + count as u64;
    if last > u64::from(u32::MAX) {
        return Err(RewriteError::AtomSpace(fresh.peek().saturating_sub(1)));
    }
    Ok(())
}

/// Rewrite the terms of one priority level, drawing atoms from `fresh`.
/// Returns `None` when the level has no network to build (fewer than two
/// positive terms, or a depth limit that removes every comparator).
pub fn rewrite_level(
    priority: i64,
    terms: &[(Literal, i64)],
    config: &RewriteConfig,
    fresh: &mut AtomAllocator,
) -> Result<Option<LevelRewrite>, RewriteError> {
    config.validate()?;
    let (mut inputs, passthrough) = normalize_terms(terms)?;
    if config.sort_inputs {
        inputs.sort_by_key(|&(_, w)| std::cmp::Reverse(w));
    }
    let n = inputs.len();
    if n <= 1 {
        return Ok(None);
    }
    let network = config.network(n);
    if network.is_empty() {
        return Ok(None);
    }
    let depth = network.depth();
    reserve(fresh, n * (depth + 1))?;

    let (mut rules, input_atoms) = wire_inputs(&inputs, fresh);
    let map = WireAtomMap::with_inputs(&input_atoms, depth, fresh)?;
    rules.extend(asp_of_network(&network, &map)?);

    let weights: Vec<u64> = inputs.iter().map(|&(_, w)| w).collect();
    let mut matrix = WeightMatrix::from_input_weights(&weights, depth);
    if config.propagate {
        let decomposition = decompose_sparse(&network, config.sparseness.block_size(depth));
        matrix = propagate_decomposition(&matrix, &decomposition)?;
    }
    let mut out_terms = Vec::new();
    for (wire, level, w) in matrix.nonzero() {
        let w = i64::try_from(w).map_err(|_| RewriteError::Overflow)?;
        out_terms.push((map.get(wire, level).pos(), w));
    }
    let outputs = out_terms.len();
    if config.prune_dead_wires {
        let roots: BTreeSet<Atom> = out_terms.iter().map(|(l, _)| l.atom).collect();
        rules = prune_dead_wires(rules, &roots);
    }
    let atoms_added = rules.iter().map(|r| r.head).collect::<BTreeSet<_>>().len();
    out_terms.extend(passthrough.iter().copied());

    let report = LevelReport {
        priority,
        inputs: n,
        comparators: network.size(),
        depth,
        outputs,
        atoms_added,
        rules_added: rules.len(),
        passthrough: passthrough.len(),
    };
    Ok(Some(LevelRewrite {
        rules,
        terms: out_terms,
        map,
        report,
    }))
}

/// Rewrite every priority level of the document's minimize statements.
///
/// Levels are processed in ascending priority with fresh atoms allocated
/// above the document's largest atom. The added rules and the new minimize
/// statement take the place of the level's first minimize statement; later
/// statements of the same priority are dropped. Levels that are left alone
/// keep their statements untouched, as does everything that is not a
/// minimize statement.
pub fn rewrite_objective(
    doc: &AspifDocument,
    config: &RewriteConfig,
) -> Result<(AspifDocument, RewriteReport), RewriteError> {
    config.validate()?;
    let mut by_priority: BTreeMap<i64, (usize, Vec<(Literal, i64)>)> = BTreeMap::new();
    for (i, s) in doc.statements.iter().enumerate() {
        if let Statement::Minimize(m) = s {
            by_priority
                .entry(m.priority)
                .or_insert_with(|| (i, Vec::new()))
                .1
                .extend(m.terms.iter().copied());
        }
    }

    let mut fresh = AtomAllocator::above(doc.max_atom());
    let mut report = RewriteReport::default();
    let mut replacements: BTreeMap<usize, LevelRewrite> = BTreeMap::new();
    let mut rewritten: BTreeSet<i64> = BTreeSet::new();
    for (&priority, (first, terms)) in &by_priority {
        match rewrite_level(priority, terms, config, &mut fresh)? {
            Some(level) => {
                report.levels.push(level.report.clone());
                rewritten.insert(priority);
                replacements.insert(*first, level);
            }
            None => {
                let passthrough = terms.iter().filter(|&&(_, w)| w <= 0).count();
                report.levels.push(LevelReport {
                    priority,
                    inputs: 0,
                    comparators: 0,
                    depth: 0,
                    outputs: 0,
                    atoms_added: 0,
                    rules_added: 0,
                    passthrough,
                });
            }
        }
    }

    let mut out = AspifDocument {
        header: doc.header.clone(),
        statements: Vec::with_capacity(doc.statements.len()),
        terminated: doc.terminated,
    };
    for (i, s) in doc.statements.iter().enumerate() {
        match s {
            Statement::Minimize(m) if rewritten.contains(&m.priority) => {
                if let Some(level) = replacements.remove(&i) {
                    out.statements.extend(
                        level
                            .rules
                            .into_iter()
                            .map(|r| Statement::Rule(Rule::normal(r.head, r.body()))),
                    );
                    out.statements.push(Statement::Minimize(Minimize {
                        priority: m.priority,
                        terms: level.terms,
                    }));
                }
            }
            _ => out.statements.push(s.clone()),
        }
    }
    Ok((out, report))
}
