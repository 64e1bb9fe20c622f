//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification finds a counterexample,
//! 2 on usage, input or processing errors. Diagnostics go to stderr; stdout
//! carries only the requested output.

use std::ffi::OsString;
use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{binomial_opt_program, binomial_pch, binomial_program, CandidateOrder, NetworkChoice};
use crate::aspif::{from_ground_program, parse, to_ground_program, write, AspifDocument, Output, Statement};
use crate::asplang::ObjectiveFunction;
use crate::network::{decompose_sparse, oe_sorter, render_diagram, Annotations};
use crate::propagate::{propagate_decomposition, WeightMatrix};
use crate::rewrite::{
    rewrite_objective, run_random_suite, verification_grid, verify_document, verify_rewrite, RandomProgramParams,
    RewriteConfig, Sparseness,
};

#[derive(Debug, Parser)]
#[command(
    name = "weightnet",
    version,
    about = "Rewrite ASP minimize statements through weighted sorting networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rewrite the minimize statements of an aspif program.
    Rewrite {
        #[command(flatten)]
        config: ConfigArgs,
        /// Write the per-priority report to this file.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Input file; standard input when absent or `-`.
        file: Option<PathBuf>,
    },
    /// Print the binomial program (choice over N atoms, at least K true).
    GenBinomial {
        n: usize,
        k: usize,
        /// Add the objective minimizing the number of true atoms.
        #[arg(long)]
        opt: bool,
    },
    /// Print statistics or the diagram of the odd-even sorter on N wires.
    GenSorter {
        n: usize,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        diagram: bool,
    },
    /// Check that rewriting preserves answer sets and objective values.
    ///
    /// With FILE and --against, FILE is compared against the original
    /// program ORIGINAL. With FILE alone, FILE is rewritten with every
    /// configuration of the test grid and each result is compared against
    /// FILE. Without FILE, a program piped on standard input is treated like
    /// FILE; otherwise a suite of seeded random programs is checked.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, value_name = "ORIGINAL")]
        against: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random programs.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Atoms per random program.
        #[arg(long, default_value_t = 8)]
        max_atoms: usize,
        #[arg(long, env = "WEIGHTNET_JOBS")]
        jobs: Option<usize>,
    },
    /// Simulate the propagator call history on the binomial program.
    Pch {
        n: usize,
        k: usize,
        /// `none`, `full` or `depth:D`.
        #[arg(long, default_value = "none", value_parser = parse_network_choice)]
        network: NetworkChoice,
        /// Shuffle the candidates with this seed instead of lexicographic order.
        #[arg(long)]
        shuffle: Option<u64>,
        /// Print every call, not just the summary.
        #[arg(long)]
        trace: bool,
    },
    /// Draw the odd-even sorter on N wires, optionally with propagated weights.
    Render {
        n: usize,
        #[arg(long)]
        depth: Option<usize>,
        /// Comma-separated input weights, one per wire.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        #[arg(long, default_value = "1")]
        sparseness: Sparseness,
        #[arg(long)]
        no_propagate: bool,
    },
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Keep only comparators up to this level.
    #[arg(long)]
    depth: Option<usize>,
    /// Block size of the decomposition, or `inf`.
    #[arg(long, default_value = "1")]
    sparseness: Sparseness,
    /// Leave the weights on the input wires.
    #[arg(long)]
    no_propagate: bool,
    /// Attach terms to wires by descending weight.
    #[arg(long)]
    sort_inputs: bool,
    /// Drop network rules that no weighted wire depends on.
    #[arg(long)]
    prune_dead_wires: bool,
}

impl ConfigArgs {
    fn config(&self) -> RewriteConfig {
        RewriteConfig {
            depth_limit: self.depth,
            sparseness: self.sparseness,
            propagate: !self.no_propagate,
            sort_inputs: self.sort_inputs,
            prune_dead_wires: self.prune_dead_wires,
            ..RewriteConfig::default()
        }
    }
}

fn parse_network_choice(s: &str) -> Result<NetworkChoice, String> {
    match s {
        "none" => Ok(NetworkChoice::None),
        "full" => Ok(NetworkChoice::Full),
        _ => s
            .strip_prefix("depth:")
            .and_then(|d| usize::from_str(d).ok())
            .map(NetworkChoice::Depth)
            .ok_or_else(|| format!("expected `none`, `full` or `depth:D`, got {s:?}")),
    }
}

/// Failure of a subcommand, mapped to an exit status.
enum Failure {
    Verification(String),
    Error(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = fs::read_to_string(p).map_err(|e| Failure::Error(format!("{}: {e}", p.display())))?
        }
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn read_document(path: Option<&Path>) -> Result<AspifDocument, Failure> {
    Ok(parse(&read_input(path)?)?)
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Parse `args` (including the program name) and run the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, &mut out) {
        Ok(()) => 0,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            1
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Rewrite { config, report, file } => {
            let doc = read_document(file.as_deref())?;
            let (rewritten, rep) = rewrite_objective(&doc, &config.config())?;
            if let Some(path) = report {
                fs::write(&path, rep.to_string()).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))?;
            }
            emit(out, &write(&rewritten))
        }
        Command::GenBinomial { n, k, opt } => {
            let (program, objective) = if opt {
                binomial_opt_program(n, k)
            } else {
                (binomial_program(n, k), ObjectiveFunction::default())
            };
            let mut doc = from_ground_program(&program, &objective);
            for a in program.signature.iter() {
                doc.statements.push(Statement::Output(Output {
                    name: format!("x({a})"),
                    condition: vec![a.pos()],
                }));
            }
            emit(out, &write(&doc))
        }
        Command::GenSorter { n, depth, diagram } => {
            let mut net = oe_sorter(n);
            if let Some(d) = depth {
                net = net.limit_depth(d);
            }
            if diagram {
                emit(out, &render_diagram(&net, &Annotations::new())?)
            } else {
                emit(
                    out,
                    &format!("width={} depth={} size={}\n", net.width(), net.depth(), net.size()),
                )
            }
        }
        Command::Verify {
            file,
            against,
            seed,
            count,
            max_atoms,
            jobs,
        } => {
            let jobs = jobs
                .filter(|&j| j > 0)
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            verify_command(out, file, against, seed, count, max_atoms, jobs)
        }
        Command::Pch {
            n,
            k,
            network,
            shuffle,
            trace,
        } => {
            let order = shuffle.map_or(CandidateOrder::Lexicographic, CandidateOrder::Shuffled);
            let (t, _, _) = binomial_pch(n, k, network, order)?;
            if trace {
                emit(out, &t.to_string())
            } else {
                emit(out, &format!("m={} complete={}\n", t.len(), t.complete))
            }
        }
        Command::Render {
            n,
            depth,
            weights,
            sparseness,
            no_propagate,
        } => {
            let mut net = oe_sorter(n);
            if let Some(d) = depth {
                net = net.limit_depth(d);
            }
            let mut annotations = Annotations::new();
            if let Some(w) = weights {
                if w.len() != n {
                    return Err(Failure::Error(format!("expected {n} weights, got {}", w.len())));
                }
                let mut matrix = WeightMatrix::from_input_weights(&w, net.depth());
                if !no_propagate && net.depth() > 0 {
                    let k = match sparseness {
                        Sparseness::Finite(k) => k,
                        Sparseness::Infinite => net.depth(),
                    };
                    matrix = propagate_decomposition(&matrix, &decompose_sparse(&net, k))?;
                }
                for (wire, level, value) in matrix.nonzero() {
                    annotations.insert((wire, level), value.to_string());
                }
            }
            emit(out, &render_diagram(&net, &annotations)?)
        }
    }
}

fn verify_command(
    out: &mut impl Write,
    file: Option<PathBuf>,
    against: Option<PathBuf>,
    seed: u64,
    count: usize,
    max_atoms: usize,
    jobs: usize,
) -> Result<(), Failure> {
    let text = match &file {
        Some(p) => Some(read_input(Some(p))?),
        None if against.is_some() => Some(read_input(None)?),
        None if !io::stdin().is_terminal() => {
            let t = read_input(None)?;
            (!t.trim().is_empty()).then_some(t)
        }
        None => None,
    };
    let Some(text) = text else {
        let params = RandomProgramParams {
            max_atoms,
            ..RandomProgramParams::default()
        };
        let report = run_random_suite(seed, count, &params, &verification_grid(), jobs);
        for f in &report.failures {
            eprintln!("program {} [{}]: {}\n{}", f.program, f.config, f.reason, f.document);
        }
        emit(
            out,
            &format!(
                "programs={} checks={} failures={}\n",
                report.programs,
                report.checks,
                report.failures.len()
            ),
        )?;
        return if report.passed() {
            Ok(())
        } else {
            Err(Failure::Verification(format!(
                "{} failing checks",
                report.failures.len()
            )))
        };
    };
    let doc = parse(&text)?;

    if let Some(original) = against {
        let (p0, e0) = to_ground_program(&read_document(Some(&original))?)?;
        let (p1, e1) = to_ground_program(&doc)?;
        let report = verify_rewrite((&p0, &e0), (&p1, &e1))?;
        emit(out, &format!("{report}\n"))?;
        return if report.passed() {
            Ok(())
        } else {
            Err(Failure::Verification(report.to_string()))
        };
    }

    let mut failed = 0usize;
    for config in verification_grid() {
        let report = verify_document(&doc, &config)?;
        emit(out, &format!("[{config}] {report}\n"))?;
        if !report.passed() {
            failed += 1;
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{failed} configurations")))
    }
}
