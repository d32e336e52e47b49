use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fieldmind::audit::{self, Query, Scenario};
use fieldmind::config::{Config, ConfigError};
use fieldmind::dm::{shoot_to_goal_audit, Env};
use fieldmind::replay::render_log;
use fieldmind::sim::{read_log, run_batch, run_match, JsonLinesSink};
use fieldmind::world::Side;

const PRECEDENCE: &str = "\
Configuration precedence, highest first:
  1. command-line flags (--seed, ...)
  2. the config file from --config, or else from $FIELDMIND_CONFIG
  3. the built-in defaults (a config file only needs the keys it changes)

Exit status: 0 on success, 1 on a configuration or input error, 2 on a runtime failure.";

#[derive(Debug, Parser)]
#[command(name = "fieldmind", version, about = "Fuzzy-crisp soccer agents and a deterministic 11v11 simulator", after_help = PRECEDENCE)]
struct Cli {
    /// JSON config file layered over the built-in defaults.
    #[arg(long, global = true, env = "FIELDMIND_CONFIG", value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Play one match and write its JSON-lines log.
    RunMatch {
        /// Master seed, overriding sim.seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Log file to write.
        #[arg(long, default_value = "match.jsonl", value_name = "PATH")]
        out: PathBuf,
    },
    /// Play matches 0..n and print the results table.
    Batch {
        /// Master seed, overriding sim.seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of matches.
        #[arg(long, default_value_t = 100)]
        n: u64,
        /// Worker threads; defaults to the available cores.
        #[arg(long)]
        workers: Option<usize>,
        /// Also write the summary as JSON to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Audit one decision maker on a scenario file.
    EvalDm {
        #[arg(long, value_name = "PATH")]
        scenario: PathBuf,
        /// shoot-goal, shoot-position, pass, dribble, mark or decide; overrides the scenario's own query.
        #[arg(long)]
        query: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print the strategy label and push factor across the pitch.
    FuzzyEval {
        /// Grid points from our goal line to theirs.
        #[arg(long, default_value_t = 21)]
        n: usize,
        /// Write the sweep as JSON to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Render a match log as a directory of SVG frames.
    ReplaySvg {
        /// Match log produced by run-match.
        log: PathBuf,
        /// Directory for the frames.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Render every n-th cycle.
        #[arg(long, default_value_t = 10)]
        n: u64,
    },
}

enum Failure {
    Input(String),
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

fn load_config(path: Option<&Path>) -> Result<Config, Failure> {
    Ok(match path {
        Some(p) => Config::load(p)?,
        None => Config::builtin().clone(),
    })
}

/// Writes through a temporary file in the destination directory, then renames.
fn write_atomic(path: &Path, write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let fail = |e: &dyn std::fmt::Display| Failure::Runtime(format!("writing {}: {e}", path.display()));
    let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| fail(&e))?;
    let mut w = BufWriter::new(tmp);
    write(&mut w).map_err(|e| fail(&e))?;
    let tmp = w.into_inner().map_err(|e| fail(&e))?;
    tmp.persist(path).map_err(|e| fail(&e))?;
    Ok(())
}

fn shoot_table(sc: &Scenario, cfg: &Config) -> Option<String> {
    let me = sc.world.player(Side::Ours, sc.agent)?;
    let audit = shoot_to_goal_audit(me, &sc.world.ball, &sc.world, Env::from_config(cfg));
    Some(audit::shoot_goal_table(&audit))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut cfg = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::RunMatch { seed, out } => {
            if let Some(s) = seed {
                cfg.sim.seed = s;
            }
            let mut result = None;
            write_atomic(&out, |w| {
                let mut sink = JsonLinesSink::new(w);
                let r = run_match(&cfg, 0, &mut sink).map_err(std::io::Error::other)?;
                result = Some(r);
                Ok(())
            })?;
            let r = result.expect("match ran");
            println!(
                "{:?} {} - {} {:?} after {} cycles; log in {}",
                cfg.sim.team_a,
                r.goals_a,
                r.goals_b,
                cfg.sim.team_b,
                r.cycles,
                out.display()
            );
        }
        Command::Batch { seed, n, workers, out } => {
            if let Some(s) = seed {
                cfg.sim.seed = s;
            }
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let summary = run_batch(&cfg, n, workers).map_err(runtime)?;
            print!("{}", summary.table(&cfg));
            if let Some(out) = out {
                let json = serde_json::to_vec_pretty(&summary).map_err(runtime)?;
                write_atomic(&out, |w| w.write_all(&json))?;
            }
        }
        Command::EvalDm { scenario, query, out } => {
            let query = query.map(|q| q.parse::<Query>()).transpose().map_err(Failure::Input)?;
            let text = std::fs::read_to_string(&scenario)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", scenario.display())))?;
            let sc = Scenario::from_json(&text).map_err(|e| Failure::Input(e.to_string()))?;
            let report = audit::evaluate(&sc, query, &cfg).map_err(|e| Failure::Input(e.to_string()))?;
            let json = serde_json::to_string_pretty(&report).map_err(runtime)?;
            match out {
                Some(out) => write_atomic(&out, |w| writeln!(w, "{json}"))?,
                None => {
                    if query.or(sc.query) == Some(Query::ShootGoal) {
                        print!("{}", shoot_table(&sc, &cfg).unwrap_or_default());
                    }
                    println!("{json}");
                }
            }
        }
        Command::FuzzyEval { n, out } => {
            let sweep = audit::strategy_sweep(&cfg, n).map_err(|e| Failure::Input(e.to_string()))?;
            print!("{}", audit::strategy_table(&sweep));
            if let Some(out) = out {
                let json = serde_json::to_vec_pretty(&sweep).map_err(runtime)?;
                write_atomic(&out, |w| w.write_all(&json))?;
            }
        }
        Command::ReplaySvg { log, out, n } => {
            let text = std::fs::read_to_string(&log).map_err(|e| runtime(format!("reading {}: {e}", log.display())))?;
            let lines = read_log(&text).map_err(|(line, e)| runtime(format!("{}:{line}: {e}", log.display())))?;
            let frames = render_log(&lines, n).map_err(runtime)?;
            std::fs::create_dir_all(&out).map_err(|e| runtime(format!("creating {}: {e}", out.display())))?;
            for (cycle, svg) in &frames {
                write_atomic(&out.join(format!("frame_{cycle:06}.svg")), |w| w.write_all(svg.as_bytes()))?;
            }
            println!("{} frames in {}", frames.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
