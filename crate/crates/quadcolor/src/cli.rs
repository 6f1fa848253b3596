//! The `quadcolor` command line.
//!
//! Exit codes: 0 success, 1 a check failed (violations found, witness not
//! found, oracle budget exhausted), 2 bad input or usage.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quadcolor_core::oracle::{chromatic_number, find_witness_until, CandidateSource, OracleError};
use quadcolor_core::{
    balance, build_graph, generate_random, grow_random, verify, AdjacencyMode, Coloring, Quadtree,
    RandomCfg, SearchBudget, SplitProb, MAX_LEVEL,
};

use crate::bench::{bench, format_table, Algo};
use crate::formats::{self, parse_split_prob};
use crate::svg::render_svg;

#[derive(Parser, Debug)]
#[command(
    name = "quadcolor",
    version,
    about = "Build, color, and check quadtrees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Edge,
    Corner,
}

impl From<Mode> for AdjacencyMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Edge => AdjacencyMode::Edge,
            Mode::Corner => AdjacencyMode::Corner,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct TreeInput {
    /// Tree file, JSON or text.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Sort out-of-order leaves instead of rejecting the file.
    #[arg(long)]
    canonicalize: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a seeded random tree.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_depth: u8,
        /// Split probability, `a/b` or a decimal.
        #[arg(long, default_value = "1/2", value_parser = split_prob)]
        split_prob: SplitProb,
        /// Refine the result to a 2:1 balanced tree.
        #[arg(long)]
        balanced: bool,
        /// Grow to about this many leaves by splitting random leaves instead.
        #[arg(long)]
        leaves: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: TreeFormat,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Color a tree with one of the constructive algorithms.
    Color {
        #[command(flatten)]
        tree: TreeInput,
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check a coloring for adjacent same-color leaves, or re-check a
    /// witness certificate.
    Verify {
        #[arg(
            long,
            alias = "in",
            value_name = "PATH",
            required_unless_present = "witness"
        )]
        tree: Option<PathBuf>,
        #[arg(long, value_name = "PATH", required_unless_present = "witness")]
        colors: Option<PathBuf>,
        /// Adjacency to check under; defaults to the coloring file's mode.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, value_name = "PATH", conflicts_with_all = ["tree", "colors"])]
        witness: Option<PathBuf>,
        /// Backtracking node limit for re-checking a witness.
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
        #[arg(long)]
        canonicalize: bool,
    },
    /// Exact chromatic number of a tree's adjacency graph.
    Chromatic {
        #[command(flatten)]
        tree: TreeInput,
        #[arg(long, value_enum, default_value = "edge")]
        mode: Mode,
        /// Backtracking node limit.
        #[arg(long, default_value_t = 5_000_000)]
        budget: u64,
        /// Also write the adjacency graph as JSON.
        #[arg(long, value_name = "PATH")]
        graph_out: Option<PathBuf>,
    },
    /// Search for a tree that needs `--target-chi` colors.
    Witness {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        target_chi: usize,
        #[arg(long)]
        balanced: bool,
        /// Seed for the random phase.
        #[arg(long)]
        seed: u64,
        /// Candidate trees to try.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Backtracking node limit per oracle call.
        #[arg(long, default_value_t = 5_000_000)]
        oracle_nodes: u64,
        /// Skip candidates with more leaves than this.
        #[arg(long, default_value_t = 64)]
        max_vertices: usize,
        /// Exhaustive phase: all trees with at most this many splits.
        #[arg(long, default_value_t = 7)]
        max_splits: usize,
        /// Deepest level of the random phase.
        #[arg(long, default_value_t = 6)]
        max_depth: u8,
        /// Random candidates per depth step.
        #[arg(long, default_value_t = 2_000)]
        per_depth: usize,
        /// Stop after this many seconds. Output then depends on machine speed.
        #[arg(long)]
        wall_limit: Option<u64>,
        /// Write the best certificate here.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Draw a tree, optionally colored, as SVG.
    Render {
        #[command(flatten)]
        tree: TreeInput,
        #[arg(long, value_name = "PATH")]
        colors: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Time a coloring algorithm on seeded trees of the given sizes.
    Bench {
        /// Ascending leaf counts, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        seed: u64,
        /// Timed repetitions per size; the fastest counts.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

fn split_prob(s: &str) -> Result<SplitProb, String> {
    parse_split_prob(s).map_err(|e| e.to_string())
}

enum Failure {
    /// Exit 1: the inputs were fine but a check did not pass.
    Check(String),
    /// Exit 2.
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_tree(input: &TreeInput) -> anyhow::Result<Quadtree> {
    let src = read(&input.input)?;
    formats::parse_tree(&src, input.canonicalize)
        .with_context(|| format!("parsing {}", input.input.display()))
}

fn load_coloring(path: &Path, canonicalize: bool) -> anyhow::Result<Coloring> {
    let src = read(path)?;
    formats::coloring_from_json(&src, canonicalize)
        .with_context(|| format!("parsing {}", path.display()))
}

/// Writes to `out`, or to stdout when no path is given.
fn emit(out: &Option<PathBuf>, body: &str, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => stdout.write_all(body.as_bytes()).context("writing stdout"),
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            1
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Generate {
            seed,
            max_depth,
            split_prob,
            balanced,
            leaves,
            format,
            out,
        } => {
            if max_depth > MAX_LEVEL {
                return Err(anyhow!("DepthLimit: --max-depth is at most {MAX_LEVEL}").into());
            }
            let tree = match leaves {
                Some(n) => {
                    let t = grow_random(seed, n, max_depth);
                    if balanced {
                        balance(&t).map_err(anyhow::Error::from)?
                    } else {
                        t
                    }
                }
                None => generate_random(&RandomCfg {
                    seed,
                    max_depth,
                    split_prob,
                    balanced,
                }),
            };
            let body = match format {
                TreeFormat::Json => formats::tree_to_json(&tree),
                TreeFormat::Text => formats::tree_to_text(&tree),
            };
            emit(&out, &body, stdout)?;
        }

        Command::Color { tree, algo, out } => {
            let t = load_tree(&tree)?;
            let c = algo
                .run(&t)
                .map_err(|e| anyhow!(e).context(format!("coloring {}", tree.input.display())))?;
            emit(&out, &formats::coloring_to_json(&c), stdout)?;
            if out.is_some() {
                let _ = writeln!(
                    stdout,
                    "{} leaves, {} colors used ({})",
                    c.len(),
                    c.colors_used(),
                    algo.as_str()
                );
            }
        }

        Command::Verify {
            tree,
            colors,
            mode,
            witness,
            budget,
            canonicalize,
        } => {
            if let Some(path) = witness {
                return verify_witness(&path, budget, stdout);
            }
            let (tree_path, colors_path) = tree.zip(colors).expect("clap requires both");
            let t = load_tree(&TreeInput {
                input: tree_path,
                canonicalize,
            })?;
            let c = load_coloring(&colors_path, canonicalize)?;
            if let Some(extra) = c.keys().iter().find(|k| !t.is_leaf(k)) {
                return Err(anyhow!("ExtraAssignment: {extra} is not a leaf of the tree").into());
            }
            let mode = mode.map_or(c.mode(), AdjacencyMode::from);
            let report = verify(&t, &c, mode).map_err(anyhow::Error::from)?;
            for (a, b) in &report.violations {
                let _ = writeln!(
                    stdout,
                    "violation: {a} {b} share color {}",
                    c.color_of(a).unwrap_or(0)
                );
            }
            let _ = writeln!(
                stdout,
                "{} violations, {} colors used ({} adjacency)",
                report.violations.len(),
                report.colors_used,
                mode
            );
            if !report.is_proper() {
                return Err(Failure::Check(format!(
                    "verification failed: {} violations",
                    report.violations.len()
                )));
            }
        }

        Command::Chromatic {
            tree,
            mode,
            budget,
            graph_out,
        } => {
            let t = load_tree(&tree)?;
            let g = build_graph(&t, mode.into());
            if let Some(path) = &graph_out {
                fs::write(path, formats::graph_to_json(&g))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let b = SearchBudget {
                max_oracle_nodes: budget,
                ..SearchBudget::default()
            };
            match chromatic_number(&g, &b) {
                Ok(r) => {
                    let _ = writeln!(stdout, "{}", r.chi);
                }
                Err(e @ OracleError::BudgetExceeded { .. }) => {
                    return Err(Failure::Check(format!("{e}")));
                }
            }
        }

        Command::Witness {
            mode,
            target_chi,
            balanced,
            seed,
            budget,
            oracle_nodes,
            max_vertices,
            max_splits,
            max_depth,
            per_depth,
            wall_limit,
            out,
        } => {
            if target_chi < 2 {
                return Err(anyhow!("--target-chi must be at least 2").into());
            }
            let source = CandidateSource {
                exhaustive_max_splits: max_splits,
                random_seed: seed,
                random_max_depth: max_depth.min(MAX_LEVEL),
                per_depth,
            };
            let b = SearchBudget {
                max_candidates: budget,
                max_oracle_nodes: oracle_nodes,
                wall_limit_secs: wall_limit,
                max_vertices,
            };
            let start = Instant::now();
            let limit = wall_limit.map(Duration::from_secs);
            let report = find_witness_until(mode.into(), target_chi, balanced, &source, &b, || {
                limit.is_some_and(|l| start.elapsed() >= l)
            });
            let chis: Vec<String> = report
                .improvements
                .iter()
                .map(|c| c.chi.to_string())
                .collect();
            let _ = writeln!(stdout, "found: {}", report.found);
            let _ = writeln!(stdout, "chi: {}", report.chi);
            let _ = writeln!(stdout, "certified: {}", chis.join(" "));
            let _ = writeln!(stdout, "candidates tried: {}", report.candidates_tried);
            let _ = writeln!(stdout, "undecided: {}", report.undecided);
            let _ = writeln!(stdout, "oversized: {}", report.oversized);
            if let Some(cert) = &report.best {
                let _ = writeln!(
                    stdout,
                    "best: {} leaves, {} splits, candidate {}",
                    cert.tree.len(),
                    cert.tree.split_count(),
                    cert.candidate_index
                );
            }
            if report.stopped_early {
                let _ = writeln!(stdout, "stopped early: wall limit");
            }
            if let (Some(path), Some(body)) = (&out, formats::witness_to_json(&report)) {
                fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            }
            if !report.found {
                return Err(Failure::Check(format!(
                    "no witness for chi {target_chi} within budget; best certified chi {}",
                    report.chi
                )));
            }
        }

        Command::Render { tree, colors, out } => {
            let t = load_tree(&tree)?;
            let c = colors
                .as_deref()
                .map(|p| load_coloring(p, tree.canonicalize))
                .transpose()?;
            let svg = render_svg(&t, c.as_ref()).map_err(anyhow::Error::from)?;
            emit(&out, &svg, stdout)?;
        }

        Command::Bench {
            sizes,
            algo,
            seed,
            reps,
        } => {
            if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] == 0 {
                return Err(anyhow!("--sizes must be positive and strictly ascending").into());
            }
            let rows = bench(&sizes, algo, seed, reps).map_err(anyhow::Error::from)?;
            let _ = stdout.write_all(format_table(algo, &rows).as_bytes());
        }
    }
    Ok(())
}

fn verify_witness(path: &Path, budget: u64, stdout: &mut dyn Write) -> Outcome {
    let file = formats::witness_from_json(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    let cert = &file.certificate;
    let b = SearchBudget {
        max_oracle_nodes: budget,
        ..SearchBudget::default()
    };
    let ok =
        cert.reverify(&b) && (!file.require_balanced || quadcolor_core::is_balanced(&cert.tree));
    let _ = writeln!(
        stdout,
        "certificate: chi {} ({} adjacency, {} leaves): {}",
        cert.chi,
        cert.coloring.mode(),
        cert.tree.len(),
        if ok { "verified" } else { "REJECTED" }
    );
    if ok {
        Ok(())
    } else {
        Err(Failure::Check("certificate did not re-verify".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["quadcolor", "generate"], &mut out, &mut err), 2);
        assert!(String::from_utf8(err).unwrap().contains("--seed"));
    }

    #[test]
    fn help_exits_zero() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["quadcolor", "--help"], &mut out, &mut err), 0);
        assert!(!out.is_empty());
    }
}
