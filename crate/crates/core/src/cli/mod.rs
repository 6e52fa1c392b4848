//! Command-line surface: argument parsing, dispatch and output rendering.

mod bench;
mod record;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::approx::{
    best_of, compute_sigma_star, divide_and_conquer, divide_and_conquer_uniform, greedy_assignment,
    know_neighbors_neighbors, know_neighbors_neighbors_uniform, know_your_neighbors,
    satisfy_one_neighbor,
};
use crate::error::{Error, Result};
use crate::exact::{brute_force_opt, heuristic_decomposition, tree_dp};
use crate::format;
use crate::game::{Assignment, ProjectionGame};
use crate::planar::{ptas, PtasOptions};
use crate::rational::{self, display, int, Rational};
use crate::reductions::{
    extract_coloring, extract_tiling, from_matrix_tiling, from_planar_3col, gen_matrix_tiling,
    gen_planar_graph, gen_planar_grid, gen_random_satisfiable, gen_smooth,
};
use crate::report::{Algorithm, Guarantee, SolveReport};
use crate::smooth::{default_mu, measure_smoothness, smooth_approx, smooth_exact};
use crate::stats::compute_stats;

pub use bench::{bench_corpus, BenchSummaryRow, BENCH_ALGORITHMS};
pub use record::{BreakdownRecord, GuaranteeRecord, RunRecord, TOOL_VERSION};

pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "labelcover",
    version,
    about = "Solvers, reductions and benchmarks for projection games"
)]
pub struct Cli {
    /// Emit JSON records instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cap on exhaustive enumeration sizes and DP states.
    #[arg(long = "enum-cap", global = true, default_value_t = DEFAULT_ENUM_CAP)]
    pub enum_cap: u64,
    /// Include wall-clock time in records.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Print instance statistics.
    Stats { instance: PathBuf },
    /// Exact solvers.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Polynomial-time approximation algorithms.
    #[command(subcommand)]
    Approx(ApproxCommand),
    /// Algorithms for smooth games.
    #[command(subcommand)]
    Smooth(SmoothCommand),
    /// Planar PTAS.
    Ptas {
        #[command(flatten)]
        io: SolveIo,
        /// Accuracy ε in (0, 1], as a fraction or decimal.
        #[arg(long)]
        eps: String,
        /// Skip the |E| ≤ 3n − 6 check.
        #[arg(long)]
        force_nonplanar: bool,
        /// Number of edge classes, overriding ⌈1 + 1/ε⌉.
        #[arg(long)]
        h_override: Option<usize>,
    },
    /// Reductions into projection games.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Count the edges an assignment satisfies.
    Verify {
        instance: PathBuf,
        assignment: PathBuf,
    },
    /// Run the approximation algorithms over every `.lc` file in a directory.
    Bench {
        dir: PathBuf,
        /// Comma-separated subset of algorithms.
        #[arg(long, value_delimiter = ',')]
        algorithms: Vec<String>,
        /// Also write one record file per instance here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SolveIo {
    /// Instance in `labelcover v1` format.
    pub instance: PathBuf,
    /// Write the assignment in `assign v1` format.
    #[arg(long)]
    pub assign_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenOut {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the planted assignment here.
    #[arg(long)]
    pub plant_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Random satisfiable game.
    Random {
        #[arg(long, default_value_t = 10)]
        na: usize,
        #[arg(long, default_value_t = 10)]
        nb: usize,
        #[arg(long, default_value_t = 4)]
        ka: usize,
        #[arg(long, default_value_t = 2)]
        kb: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Every edge has the same preimage size |Σ_A|/|Σ_B|.
        #[arg(long)]
        uniform: bool,
        #[command(flatten)]
        out: GenOut,
    },
    /// Random satisfiable game with bounded smoothness.
    Smooth {
        #[arg(long, default_value_t = 10)]
        na: usize,
        #[arg(long, default_value_t = 14)]
        nb: usize,
        #[arg(long, default_value_t = 3)]
        ka: usize,
        #[arg(long, default_value_t = 7)]
        kb: usize,
        #[arg(long, default_value_t = 12)]
        degree: usize,
        /// Target smoothness.
        #[arg(long, default_value = "1/6")]
        mu: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// Satisfiable game on a planar grid graph.
    Grid {
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long, default_value_t = 3)]
        ka: usize,
        #[arg(long, default_value_t = 2)]
        kb: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Planar graph in `colgraph v1` format.
    #[command(name = "3col")]
    ThreeCol {
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        cols: usize,
        /// Probability of keeping each edge of the triangulated grid.
        #[arg(long, default_value_t = 0.7)]
        keep: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matrix Tiling instance in `matrixtiling v1` format.
    Tiling {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Probability of including each pair in a cell set.
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        /// Plant a full solution.
        #[arg(long)]
        planted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SolveCommand {
    /// Exhaustive search over the smaller side.
    Exact {
        #[command(flatten)]
        io: SolveIo,
    },
    /// Tree-decomposition dynamic programming.
    Dp {
        #[command(flatten)]
        io: SolveIo,
        /// Decomposition in `td v1` format; min-fill heuristic when absent.
        #[arg(long)]
        td: Option<PathBuf>,
        /// Write the decomposition used.
        #[arg(long)]
        td_out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ApproxCommand {
    /// Satisfy one edge per B-vertex.
    OneNeighbor {
        #[command(flatten)]
        io: SolveIo,
    },
    /// Per-vertex greedy labels.
    Greedy {
        #[command(flatten)]
        io: SolveIo,
    },
    /// Fix one A-vertex and its neighbourhood.
    Kyn {
        #[command(flatten)]
        io: SolveIo,
        /// Centre vertex; the E_N argmax by default.
        #[arg(long)]
        a0: Option<usize>,
        /// Symbol for the centre; the first surviving symbol by default.
        #[arg(long)]
        sigma: Option<usize>,
    },
    /// Fix one A-vertex and reason about its two-hop neighbourhood.
    Kynn {
        #[command(flatten)]
        io: SolveIo,
        #[arg(long)]
        a0: Option<usize>,
        /// Use the uniform-preimage variant.
        #[arg(long)]
        uniform: bool,
    },
    /// Divide and conquer.
    Dnc {
        #[command(flatten)]
        io: SolveIo,
        /// Use the uniform-preimage variant.
        #[arg(long)]
        uniform: bool,
    },
    /// Best of all the above.
    Best {
        #[command(flatten)]
        io: SolveIo,
    },
}

#[derive(Debug, Subcommand)]
pub enum SmoothCommand {
    /// Exact smoothness of the instance.
    Measure { instance: PathBuf },
    /// Randomized exact algorithm.
    Exact {
        #[command(flatten)]
        io: SolveIo,
        /// Smoothness parameter; max(measured, 1/min degree) by default.
        #[arg(long)]
        mu: Option<String>,
        /// Sampling constant.
        #[arg(long, default_value = "4")]
        c1: String,
    },
    /// Deterministic constant-factor algorithm.
    Approx {
        #[command(flatten)]
        io: SolveIo,
        #[arg(long)]
        mu: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Planar 3-coloring to a projection game.
    #[command(name = "3col")]
    ThreeCol {
        /// Graph in `colgraph v1` format.
        input: PathBuf,
        /// Decode this assignment of the reduced game into a coloring instead.
        #[arg(long)]
        extract: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matrix Tiling to a projection game.
    Tiling {
        /// Instance in `matrixtiling v1` format.
        input: PathBuf,
        /// Decode this assignment of the reduced game into a tiling instead.
        #[arg(long)]
        extract: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a CLI invocation.
#[derive(Debug)]
pub enum CliError {
    Usage(clap::Error),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

/// 2 for parse errors, 3 for exceeded budgets, 1 otherwise.
pub fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Usage(e) => e.exit_code(),
        CliError::Run(Error::Parse { .. }) => 2,
        CliError::Run(Error::BudgetExceeded { .. }) => 3,
        CliError::Run(_) => 1,
    }
}

/// Parses `args` (program name first) and runs the command, returning its stdout.
pub fn run<I, T>(args: I) -> std::result::Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args).map_err(CliError::Usage)?;
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Session { cli: &cli, echo }.dispatch()?)
}

/// Entry point for the binary; returns the process exit code.
pub fn main_entry() -> i32 {
    match run(std::env::args_os()) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(CliError::Usage(e)) => e.exit(),
        Err(err @ CliError::Run(_)) => {
            if let CliError::Run(e) = &err {
                eprintln!("error: {e}");
            }
            exit_code(&err)
        }
    }
}

pub(crate) fn read_text(path: &Path) -> Result<(String, String)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let digest = format::digest(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::Parse {
        line: 1,
        message: "file is not UTF-8".into(),
    })?;
    Ok((text, digest))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<(ProjectionGame, String)> {
    let (text, digest) = read_text(path)?;
    Ok((format::parse_game(&text)?, digest))
}

fn parse_rational(flag: &str, text: &str) -> Result<Rational> {
    rational::parse(text).ok_or_else(|| {
        Error::InvalidArgument(format!("--{flag}: `{text}` is not a rational number"))
    })
}

fn no_edges() -> Error {
    Error::InvalidArgument("the game has no edges".into())
}

/// Runs one approximation algorithm by its CLI name with default parameters.
pub fn run_approx(game: &ProjectionGame, name: &str) -> Result<SolveReport> {
    match name {
        "one-neighbor" => Ok(satisfy_one_neighbor(game)),
        "greedy" => Ok(greedy_assignment(game)),
        "kyn" => kyn_default(game, None, None),
        "kynn" => kynn_default(game, None),
        "kynn-uniform" => kynn_uniform_default(game, None),
        "dnc" => Ok(divide_and_conquer(game)),
        "dnc-uniform" => divide_and_conquer_uniform(game),
        "best" => Ok(best_of(game)),
        other => Err(Error::InvalidArgument(format!(
            "unknown algorithm `{other}`"
        ))),
    }
}

fn kyn_default(
    game: &ProjectionGame,
    a0: Option<usize>,
    sigma: Option<usize>,
) -> Result<SolveReport> {
    let stats = compute_stats(game);
    let a0 = match a0 {
        Some(a0) => a0,
        None => stats.e_n_argmax.ok_or_else(no_edges)?,
    };
    let sigma = match sigma {
        Some(s) => s,
        None => {
            if a0 >= game.a_count() {
                return Err(Error::InvalidArgument(format!(
                    "a0 = {a0} is not an A-vertex"
                )));
            }
            compute_sigma_star(game, &stats)
                .members(a0)
                .first()
                .copied()
                .ok_or(Error::NotInSigmaStar {
                    vertex: a0,
                    sigma: 0,
                })?
        }
    };
    know_your_neighbors(game, a0, sigma)
}

fn kynn_default(game: &ProjectionGame, a0: Option<usize>) -> Result<SolveReport> {
    let a0 = match a0 {
        Some(a0) => a0,
        None => {
            let stats = compute_stats(game);
            compute_sigma_star(game, &stats)
                .h_star_argmax
                .map(|(a, _)| a)
                .or(stats.h_argmax)
                .ok_or_else(no_edges)?
        }
    };
    know_neighbors_neighbors(game, a0)
}

fn kynn_uniform_default(game: &ProjectionGame, a0: Option<usize>) -> Result<SolveReport> {
    let a0 = match a0 {
        Some(a0) => a0,
        None => compute_stats(game).h_argmax.ok_or_else(no_edges)?,
    };
    know_neighbors_neighbors_uniform(game, a0)
}

struct Session<'c> {
    cli: &'c Cli,
    echo: String,
}

impl Session<'_> {
    fn seed(&self) -> u64 {
        self.cli.seed.unwrap_or(0)
    }

    fn cap(&self) -> Option<u64> {
        Some(self.cli.enum_cap)
    }

    fn dispatch(&self) -> Result<String> {
        match &self.cli.command {
            Command::Gen(g) => self.gen(g),
            Command::Stats { instance } => self.stats(instance),
            Command::Solve(s) => self.solve(s),
            Command::Approx(a) => self.approx(a),
            Command::Smooth(s) => self.smooth(s),
            Command::Ptas {
                io,
                eps,
                force_nonplanar,
                h_override,
            } => {
                let (game, digest) = load_game(&io.instance)?;
                let start = Instant::now();
                let options = PtasOptions {
                    force_nonplanar: *force_nonplanar,
                    h_override: *h_override,
                    state_cap: self.cap(),
                };
                let run = ptas(&game, parse_rational("eps", eps)?, &options)?;
                let record = self
                    .record(io, &game, digest, &run.report, start)?
                    .detail("h", run.h)
                    .detail("guarantee_form", format!("(1-1/{})*OPT", run.h))
                    .detail("class_values", &run.class_values)
                    .detail("widths", &run.widths)
                    .detail("chosen_class", run.chosen_class);
                Ok(self.emit(&record))
            }
            Command::Reduce(r) => self.reduce(r),
            Command::Verify {
                instance,
                assignment,
            } => self.verify(instance, assignment),
            Command::Bench {
                dir,
                algorithms,
                out,
            } => {
                let algorithms: Vec<&str> = if algorithms.is_empty() {
                    BENCH_ALGORITHMS.to_vec()
                } else {
                    algorithms.iter().map(String::as_str).collect()
                };
                bench_corpus(
                    dir,
                    &algorithms,
                    out.as_deref(),
                    self.cli.json,
                    self.cli.timing,
                )
            }
        }
    }

    fn record(
        &self,
        io: &SolveIo,
        game: &ProjectionGame,
        digest: String,
        report: &SolveReport,
        start: Instant,
    ) -> Result<RunRecord> {
        if let Some(path) = &io.assign_out {
            write_text(path, &format::emit_assignment(&report.assignment))?;
        }
        let mut record = RunRecord::new(
            self.echo.clone(),
            Some(io.instance.display().to_string()),
            digest,
            game,
            report,
        );
        if self.cli.timing {
            record.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        Ok(record)
    }

    fn emit(&self, record: &RunRecord) -> String {
        if self.cli.json {
            format!("{}\n", record.to_json())
        } else {
            render_record(record)
        }
    }

    fn emit_value(&self, value: serde_json::Value, text: String) -> String {
        if self.cli.json {
            format!("{value}\n")
        } else {
            text
        }
    }

    fn solved(
        &self,
        io: &SolveIo,
        solve: impl FnOnce(&ProjectionGame) -> Result<SolveReport>,
    ) -> Result<String> {
        let (game, digest) = load_game(&io.instance)?;
        let start = Instant::now();
        let report = solve(&game)?;
        Ok(self.emit(&self.record(io, &game, digest, &report, start)?))
    }

    fn gen(&self, g: &GenCommand) -> Result<String> {
        let seed = self.seed();
        let (text, plant, out, extra) = match g {
            GenCommand::Random {
                na,
                nb,
                ka,
                kb,
                degree,
                uniform,
                out,
            } => {
                let (game, plant) =
                    gen_random_satisfiable(*na, *nb, *ka, *kb, *degree, seed, *uniform)?;
                (
                    format::emit_game(&game),
                    Some(plant),
                    out.out.as_ref(),
                    out.plant_out.as_ref(),
                )
            }
            GenCommand::Smooth {
                na,
                nb,
                ka,
                kb,
                degree,
                mu,
                out,
            } => {
                let target = parse_rational("mu", mu)?;
                let (game, _, plant) = gen_smooth(*na, *nb, *ka, *kb, *degree, target, seed)?;
                (
                    format::emit_game(&game),
                    Some(plant),
                    out.out.as_ref(),
                    out.plant_out.as_ref(),
                )
            }
            GenCommand::Grid {
                rows,
                cols,
                ka,
                kb,
                out,
            } => {
                let (game, plant) = gen_planar_grid(*rows, *cols, *ka, *kb, seed)?;
                (
                    format::emit_game(&game),
                    Some(plant),
                    out.out.as_ref(),
                    out.plant_out.as_ref(),
                )
            }
            GenCommand::ThreeCol {
                rows,
                cols,
                keep,
                out,
            } => (
                format::emit_colgraph(&gen_planar_graph(*rows, *cols, *keep, seed)?),
                None,
                out.as_ref(),
                None,
            ),
            GenCommand::Tiling {
                k,
                n,
                density,
                planted,
                out,
            } => {
                let t = gen_matrix_tiling(*k, *n, *density, *planted, seed)?;
                (format::emit_tiling(&t), None, out.as_ref(), None)
            }
        };
        if let (Some(path), Some(plant)) = (extra, &plant) {
            write_text(path, &format::emit_assignment(plant))?;
        }
        match out {
            None => Ok(text),
            Some(path) => {
                write_text(path, &text)?;
                let digest = format::digest(text.as_bytes());
                Ok(self.emit_value(
                    json!({ "version": TOOL_VERSION, "command": self.echo, "written": path.display().to_string(), "digest": digest, "seed": seed }),
                    format!("wrote {} (sha256 {digest})\n", path.display()),
                ))
            }
        }
    }

    fn stats(&self, instance: &Path) -> Result<String> {
        let (game, digest) = load_game(instance)?;
        let s = compute_stats(&game);
        let mut text = String::new();
        let _ = writeln!(text, "n_A = {}", game.a_count());
        let _ = writeln!(text, "n_B = {}", game.b_count());
        let _ = writeln!(text, "|Σ_A| = {}", game.sigma_a());
        let _ = writeln!(text, "|Σ_B| = {}", game.sigma_b());
        let _ = writeln!(text, "|E| = {}", game.edge_count());
        let _ = writeln!(text, "p̄^max = {}", display(&s.p_bar_max));
        let at = |v: Option<usize>| v.map_or("-".to_string(), |a| format!("a{a}"));
        let _ = writeln!(text, "h_max = {} at {}", s.h_max, at(s.h_argmax));
        let _ = writeln!(text, "E_N^max = {} at {}", s.e_n_max, at(s.e_n_argmax));
        let uniform = s.uniform_p.map_or("no".to_string(), |p| p.to_string());
        let _ = writeln!(text, "uniform preimage = {uniform}");
        let value = json!({
            "version": TOOL_VERSION,
            "command": self.echo,
            "digest": digest,
            "a_count": game.a_count(),
            "b_count": game.b_count(),
            "sigma_a": game.sigma_a(),
            "sigma_b": game.sigma_b(),
            "p_bar_max_exact": display(&s.p_bar_max),
            "stats": s,
        });
        Ok(self.emit_value(value, text))
    }

    fn solve(&self, s: &SolveCommand) -> Result<String> {
        match s {
            SolveCommand::Exact { io } => self.solved(io, |game| {
                let start = Instant::now();
                let (phi, value) = brute_force_opt(game, self.cap())?;
                Ok(
                    SolveReport::new(Algorithm::BruteForce, phi, value, Guarantee::Optimal)
                        .timed(start),
                )
            }),
            SolveCommand::Dp { io, td, td_out } => {
                let (game, digest) = load_game(&io.instance)?;
                let start = Instant::now();
                let decomposition = match td {
                    Some(path) => format::parse_decomposition(&read_text(path)?.0)?,
                    None => heuristic_decomposition(&game),
                };
                if let Some(path) = td_out {
                    write_text(path, &format::emit_decomposition(&decomposition))?;
                }
                let solution = tree_dp(&game, &decomposition, self.cap())?;
                let report = SolveReport::new(
                    Algorithm::TreeDp,
                    solution.assignment,
                    solution.value,
                    Guarantee::Optimal,
                )
                .timed(start);
                let record = self
                    .record(io, &game, digest, &report, start)?
                    .detail("width", decomposition.width())
                    .detail("states", solution.states);
                Ok(self.emit(&record))
            }
        }
    }

    fn approx(&self, a: &ApproxCommand) -> Result<String> {
        match a {
            ApproxCommand::OneNeighbor { io } => self.solved(io, |g| Ok(satisfy_one_neighbor(g))),
            ApproxCommand::Greedy { io } => self.solved(io, |g| Ok(greedy_assignment(g))),
            ApproxCommand::Kyn { io, a0, sigma } => {
                self.solved(io, |g| kyn_default(g, *a0, *sigma))
            }
            ApproxCommand::Kynn {
                io,
                a0,
                uniform: false,
            } => self.solved(io, |g| kynn_default(g, *a0)),
            ApproxCommand::Kynn {
                io,
                a0,
                uniform: true,
            } => self.solved(io, |g| kynn_uniform_default(g, *a0)),
            ApproxCommand::Dnc { io, uniform: false } => {
                self.solved(io, |g| Ok(divide_and_conquer(g)))
            }
            ApproxCommand::Dnc { io, uniform: true } => self.solved(io, divide_and_conquer_uniform),
            ApproxCommand::Best { io } => self.solved(io, |g| Ok(best_of(g))),
        }
    }

    fn mu_for(&self, game: &ProjectionGame, mu: &Option<String>) -> Result<Rational> {
        match mu {
            Some(text) => parse_rational("mu", text),
            None => Ok(default_mu(game, &measure_smoothness(game))),
        }
    }

    fn smooth(&self, s: &SmoothCommand) -> Result<String> {
        match s {
            SmoothCommand::Measure { instance } => {
                let (game, digest) = load_game(instance)?;
                let report = measure_smoothness(&game);
                let default = default_mu(&game, &report);
                let text = format!(
                    "mu = {}\nwitness = {:?}\ndefault mu = {}\n",
                    display(&report.mu_measured),
                    report.witness,
                    display(&default)
                );
                let value = json!({
                    "version": TOOL_VERSION,
                    "command": self.echo,
                    "digest": digest,
                    "mu": display(&report.mu_measured),
                    "default_mu": display(&default),
                    "report": report,
                });
                Ok(self.emit_value(value, text))
            }
            SmoothCommand::Exact { io, mu, c1 } => {
                let (game, digest) = load_game(&io.instance)?;
                let start = Instant::now();
                let mu = self.mu_for(&game, mu)?;
                let c1 = parse_rational("c1", c1)?;
                let run = smooth_exact(&game, mu, c1, self.seed(), self.cap())?;
                let m = game.edge_count();
                let mut report = SolveReport::new(
                    Algorithm::SmoothExact,
                    run.assignment,
                    m,
                    Guarantee::Edges(int(m)),
                );
                report.seed = Some(self.seed());
                let record = self
                    .record(io, &game, digest, &report, start)?
                    .detail("mu", display(&mu))
                    .detail("c1", display(&c1))
                    .detail("b_star", &run.b_star)
                    .detail("explored", run.explored);
                Ok(self.emit(&record))
            }
            SmoothCommand::Approx { io, mu } => {
                let (game, digest) = load_game(&io.instance)?;
                let start = Instant::now();
                let mu = self.mu_for(&game, mu)?;
                let run = smooth_approx(&game, mu, self.cap())?;
                let record = self
                    .record(io, &game, digest, &run.report, start)?
                    .detail("mu", display(&mu))
                    .detail("regime", run.regime)
                    .detail("b_star", &run.b_star);
                Ok(self.emit(&record))
            }
        }
    }

    fn emit_game_to(&self, game: &ProjectionGame, out: &Option<PathBuf>) -> Result<String> {
        let text = format::emit_game(game);
        match out {
            None => Ok(text),
            Some(path) => {
                write_text(path, &text)?;
                let digest = format::digest(text.as_bytes());
                Ok(self.emit_value(
                    json!({ "version": TOOL_VERSION, "command": self.echo, "written": path.display().to_string(), "digest": digest }),
                    format!("wrote {} (sha256 {digest})\n", path.display()),
                ))
            }
        }
    }

    fn reduce(&self, r: &ReduceCommand) -> Result<String> {
        match r {
            ReduceCommand::ThreeCol {
                input,
                extract,
                out,
            } => {
                let graph = format::parse_colgraph(&read_text(input)?.0)?;
                let reduction = from_planar_3col(&graph);
                let Some(path) = extract else {
                    return self.emit_game_to(&reduction.game, out);
                };
                let phi = format::parse_assignment_for(&reduction.game, &read_text(path)?.0)?;
                let ex = extract_coloring(&graph, &reduction.game, &phi);
                let proper = ex.proper();
                let colors: Vec<String> = ex
                    .colors
                    .iter()
                    .map(|c| c.map_or("-".to_string(), |c| c.to_string()))
                    .collect();
                let text = format!(
                    "colors: {}\nviolated graph edges: {:?}\nproper: {}\n",
                    colors.join(" "),
                    ex.violated,
                    proper.is_some()
                );
                let value = json!({
                    "version": TOOL_VERSION,
                    "command": self.echo,
                    "colors": ex.colors,
                    "violated": ex.violated,
                    "proper": proper.is_some(),
                });
                Ok(self.emit_value(value, text))
            }
            ReduceCommand::Tiling {
                input,
                extract,
                out,
            } => {
                let tiling = format::parse_tiling(&read_text(input)?.0)?;
                let reduction = from_matrix_tiling(&tiling)?;
                let Some(path) = extract else {
                    return self.emit_game_to(&reduction.game, out);
                };
                let phi = format::parse_assignment_for(&reduction.game, &read_text(path)?.0)?;
                let sol = extract_tiling(&tiling, &reduction.game, &phi);
                let unsatisfied = reduction.game.unsatisfied_edges(&phi).len();
                let cells: Vec<String> = sol
                    .cells
                    .iter()
                    .map(|c| c.map_or("*".to_string(), |(x, y)| format!("({},{})", x + 1, y + 1)))
                    .collect();
                let text = format!(
                    "cells: {}\nstars: {}\nunsatisfied edges: {unsatisfied}\nvalid: {}\n",
                    cells.join(" "),
                    sol.stars(),
                    sol.is_valid(&tiling)
                );
                let one_based: Vec<Option<(usize, usize)>> = sol
                    .cells
                    .iter()
                    .map(|c| c.map(|(x, y)| (x + 1, y + 1)))
                    .collect();
                let value = json!({
                    "version": TOOL_VERSION,
                    "command": self.echo,
                    "cells": one_based,
                    "stars": sol.stars(),
                    "unsatisfied_edges": unsatisfied,
                    "valid": sol.is_valid(&tiling),
                });
                Ok(self.emit_value(value, text))
            }
        }
    }

    fn verify(&self, instance: &Path, assignment: &Path) -> Result<String> {
        let (game, digest) = load_game(instance)?;
        let phi: Assignment = format::parse_assignment_for(&game, &read_text(assignment)?.0)?;
        let satisfied = game.count_satisfied(&phi);
        let unsatisfied = game.unsatisfied_edges(&phi);
        let m = game.edge_count();
        let text = if satisfied == m {
            format!("satisfied = {satisfied} = |E|\n")
        } else {
            format!("satisfied = {satisfied} of |E| = {m}\nunsatisfied edges: {unsatisfied:?}\n")
        };
        let value = json!({
            "version": TOOL_VERSION,
            "command": self.echo,
            "digest": digest,
            "satisfied": satisfied,
            "edges": m,
            "all_satisfied": satisfied == m,
            "unsatisfied_edges": unsatisfied,
        });
        Ok(self.emit_value(value, text))
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Plain-text rendering of a record.
pub fn render_record(r: &RunRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algorithm: {}", r.algorithm);
    if let Some(w) = &r.winner {
        let _ = writeln!(out, "winner: {w}");
    }
    let _ = writeln!(out, "satisfied: {} / {}", r.satisfied, r.edges);
    let met = match r.guarantee_met {
        Some(true) => "met",
        Some(false) => "VIOLATED",
        None => "needs OPT",
    };
    let _ = writeln!(out, "guarantee: {} ({met})", r.guarantee.statement);
    if let Some(seed) = r.seed {
        let _ = writeln!(out, "seed: {seed}");
    }
    for (k, v) in &r.details {
        let _ = writeln!(out, "{k}: {v}");
    }
    let _ = writeln!(out, "A labels: {}", join(&r.assignment.a));
    let _ = writeln!(out, "B labels: {}", join(&r.assignment.b));
    for b in &r.breakdown {
        let _ = writeln!(
            out,
            "  {:<13} {:>6}  {}",
            b.algorithm, b.satisfied, b.guarantee.statement
        );
    }
    if let Some(ms) = r.elapsed_ms {
        let _ = writeln!(out, "elapsed: {ms:.3} ms");
    }
    out
}
