//! Exhaustive comparison of a program before and after rewriting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::random::{random_document, RandomProgramParams};
use super::{rewrite_objective, RewriteConfig, RewriteError, Sparseness};
use crate::aspif::{to_ground_program, write, AspifDocument, AspifError};
use crate::asplang::{
    enumerate_answer_sets, evaluate, AspError, GroundProgram, Interpretation, ModelSearch, ObjectiveFunction,
    MAX_BRUTE_FORCE_ATOMS,
};

/// Upper bound on answer sets enumerated per program during verification.
const MODEL_LIMIT: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Aspif(#[from] AspifError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Asp(#[from] AspError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    CountMismatch {
        before: usize,
        after: usize,
    },
    /// Two answer sets of the rewritten program agree on the original atoms.
    NotInjective {
        first: Interpretation,
        second: Interpretation,
    },
    /// The projection of a rewritten answer set is no answer set of the original.
    NotAnAnswerSet {
        after: Interpretation,
        projection: Interpretation,
    },
    ValueMultisetMismatch {
        priority: i64,
        before: Vec<i64>,
        after: Vec<i64>,
    },
    ValueMismatch {
        priority: i64,
        answer_set: Interpretation,
        before: i64,
        after: i64,
    },
    OptimumMismatch {
        before: Option<Vec<i64>>,
        after: Option<Vec<i64>>,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::CountMismatch { before, after } => {
                write!(f, "answer set count differs: {before} before, {after} after")
            }
            Counterexample::NotInjective { first, second } => {
                write!(
                    f,
                    "answer sets {first} and {second} project to the same original answer set"
                )
            }
            Counterexample::NotAnAnswerSet { after, projection } => {
                write!(
                    f,
                    "answer set {after} projects to {projection}, which is not an original answer set"
                )
            }
            Counterexample::ValueMultisetMismatch {
                priority,
                before,
                after,
            } => {
                write!(
                    f,
                    "value multiset at priority {priority} differs: {before:?} before, {after:?} after"
                )
            }
            Counterexample::ValueMismatch {
                priority,
                answer_set,
                before,
                after,
            } => write!(
                f,
                "answer set {answer_set} has value {before} before and {after} after at priority {priority}"
            ),
            Counterexample::OptimumMismatch { before, after } => {
                write!(f, "optimum differs: {before:?} before, {after:?} after")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub before_answer_sets: usize,
    pub after_answer_sets: usize,
    /// Optimal values by priority, most important first.
    pub optimum: Option<Vec<i64>>,
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(
                f,
                "ok answer_sets={} optimum={:?}",
                self.before_answer_sets, self.optimum
            ),
            Some(c) => write!(f, "FAIL {c}"),
        }
    }
}

/// Answer sets by brute force when the signature is small enough, by search
/// otherwise.
pub fn answer_sets_of(program: &GroundProgram) -> Result<Vec<Interpretation>, AspError> {
    if program.signature.len() <= MAX_BRUTE_FORCE_ATOMS {
        enumerate_answer_sets(program)
    } else {
        ModelSearch::new(program)?.with_limit(MODEL_LIMIT).answer_sets()
    }
}

fn values(objective: &ObjectiveFunction, priorities: &[i64], m: &Interpretation) -> Result<Vec<i64>, AspError> {
    priorities
        .iter()
        .map(|p| objective.levels.get(p).map_or(Ok(0), |level| evaluate(level, m)))
        .collect()
}

/// Check that the answer sets of `after` project one-to-one onto those of
/// `before` with equal objective values at every priority.
pub fn verify_rewrite(
    before: (&GroundProgram, &ObjectiveFunction),
    after: (&GroundProgram, &ObjectiveFunction),
) -> Result<VerifyReport, AspError> {
    let (p0, e0) = before;
    let (p1, e1) = after;
    let sets0 = answer_sets_of(p0)?;
    let sets1 = ModelSearch::new(p1)?.with_limit(MODEL_LIMIT).answer_sets()?;
    // most important priority first
    let priorities: Vec<i64> = e0
        .levels
        .keys()
        .chain(e1.levels.keys())
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .rev()
        .collect();
    let mut report = VerifyReport {
        before_answer_sets: sets0.len(),
        after_answer_sets: sets1.len(),
        optimum: None,
        counterexample: None,
    };
    let fail = |mut report: VerifyReport, c| {
        report.counterexample = Some(c);
        Ok(report)
    };
    if sets0.len() != sets1.len() {
        return fail(
            report,
            Counterexample::CountMismatch {
                before: sets0.len(),
                after: sets1.len(),
            },
        );
    }

    let originals: BTreeSet<&Interpretation> = sets0.iter().collect();
    let mut preimage: BTreeMap<Interpretation, &Interpretation> = BTreeMap::new();
    for m1 in &sets1 {
        let projection = m1.restrict(&p0.signature);
        if !originals.contains(&projection) {
            return fail(
                report,
                Counterexample::NotAnAnswerSet {
                    after: m1.clone(),
                    projection,
                },
            );
        }
        if let Some(first) = preimage.insert(projection, m1) {
            return fail(
                report,
                Counterexample::NotInjective {
                    first: first.clone(),
                    second: m1.clone(),
                },
            );
        }
    }

    let mut pairs = Vec::with_capacity(sets0.len());
    for m0 in &sets0 {
        let m1 = preimage[m0];
        pairs.push((m0, values(e0, &priorities, m0)?, values(e1, &priorities, m1)?));
    }
    for (idx, &priority) in priorities.iter().enumerate() {
        let mut v0: Vec<i64> = pairs.iter().map(|p| p.1[idx]).collect();
        let mut v1: Vec<i64> = pairs.iter().map(|p| p.2[idx]).collect();
        v0.sort_unstable();
        v1.sort_unstable();
        if v0 != v1 {
            return fail(
                report,
                Counterexample::ValueMultisetMismatch {
                    priority,
                    before: v0,
                    after: v1,
                },
            );
        }
    }
    for (m0, v0, v1) in &pairs {
        if let Some(idx) = (0..priorities.len()).find(|&i| v0[i] != v1[i]) {
            return fail(
                report,
                Counterexample::ValueMismatch {
                    priority: priorities[idx],
                    answer_set: (*m0).clone(),
                    before: v0[idx],
                    after: v1[idx],
                },
            );
        }
    }
    let best0 = pairs.iter().map(|p| p.1.clone()).min();
    let best1 = pairs.iter().map(|p| p.2.clone()).min();
    if best0 != best1 {
        return fail(
            report,
            Counterexample::OptimumMismatch {
                before: best0,
                after: best1,
            },
        );
    }
    report.optimum = best0;
    Ok(report)
}

/// Rewrite `doc` with `config` and compare the result against the original.
pub fn verify_document(doc: &AspifDocument, config: &RewriteConfig) -> Result<VerifyReport, VerifyError> {
    let (p0, e0) = to_ground_program(doc)?;
    let (rewritten, _) = rewrite_objective(doc, config)?;
    let (p1, e1) = to_ground_program(&rewritten)?;
    Ok(verify_rewrite((&p0, &e0), (&p1, &e1))?)
}

/// Depth limits {0, 1, 2, 4, full} by sparseness {1, 2, inf} by propagation
/// on and off.
pub fn verification_grid() -> Vec<RewriteConfig> {
    let mut grid = Vec::new();
    for depth_limit in [Some(0), Some(1), Some(2), Some(4), None] {
        for sparseness in [Sparseness::Finite(1), Sparseness::Finite(2), Sparseness::Infinite] {
            for propagate in [true, false] {
                grid.push(RewriteConfig {
                    depth_limit,
                    sparseness,
                    propagate,
                    ..RewriteConfig::default()
                });
            }
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteFailure {
    pub program: usize,
    pub config: RewriteConfig,
    pub document: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub programs: usize,
    pub checks: usize,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify `count` random programs over `configs`. Program `i` is generated
/// from seed `seed + i`, so results do not depend on `jobs`.
pub fn run_random_suite(
    seed: u64,
    count: usize,
    params: &RandomProgramParams,
    configs: &[RewriteConfig],
    jobs: usize,
) -> SuiteReport {
    let check_one = |i: usize| -> Vec<SuiteFailure> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let doc = random_document(&mut rng, params);
        configs
            .iter()
            .filter_map(|config| {
                let reason = match verify_document(&doc, config) {
                    Ok(r) if r.passed() => return None,
                    Ok(r) => r.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                Some(SuiteFailure {
                    program: i,
                    config: *config,
                    document: write(&doc),
                    reason,
                })
            })
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let failures: Vec<SuiteFailure> = pool.install(|| (0..count).into_par_iter().flat_map_iter(check_one).collect());
    SuiteReport {
        programs: count,
        checks: count * configs.len(),
        failures,
    }
}
