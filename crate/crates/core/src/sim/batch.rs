//! Running matches to completion, alone or in parallel batches.

use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, DiscreteCDF};
use thiserror::Error;

use super::engine::{Event, Match, Team};
use super::log::{LogLine, LogSink, NullSink, LOG_VERSION};
use crate::config::Config;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("writing match log: {0}")]
    Io(#[from] io::Error),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Outcome of one match, from team A's point of view.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchResult {
    pub index: u64,
    pub goals_a: u32,
    pub goals_b: u32,
    pub kicks_a: u32,
    pub kicks_b: u32,
    pub catches: u32,
    pub out_of_bounds: u32,
    pub violations: u32,
    pub cycles: u64,
}

impl MatchResult {
    pub fn goal_difference(&self) -> i64 {
        i64::from(self.goals_a) - i64::from(self.goals_b)
    }
}

/// Plays match `index` of `cfg` to full time, streaming to `sink`.
pub fn run_match(cfg: &Config, index: u64, sink: &mut dyn LogSink) -> Result<MatchResult, SimError> {
    run_match_sides(cfg, index, false, sink)
}

/// As [`run_match`], with team A optionally attacking −x.
pub fn run_match_sides(
    cfg: &Config,
    index: u64,
    swapped: bool,
    sink: &mut dyn LogSink,
) -> Result<MatchResult, SimError> {
    let mut m = Match::new(cfg, index, swapped);
    let logging = sink.enabled();
    if logging {
        sink.write_line(&LogLine::Header {
            version: LOG_VERSION.to_string(),
            seed: cfg.sim.seed,
            match_index: index,
            swapped,
            config: Box::new(cfg.clone()),
        })?;
    }
    let mut r = MatchResult {
        index,
        goals_a: 0,
        goals_b: 0,
        kicks_a: 0,
        kicks_b: 0,
        catches: 0,
        out_of_bounds: 0,
        violations: 0,
        cycles: 0,
    };
    while !m.is_over() {
        let state = logging.then(|| m.record());
        let decisions = m.decide_all();
        let events = m.step(&decisions);
        for e in &events {
            match e {
                Event::Kick { team: Team::A, .. } => r.kicks_a += 1,
                Event::Kick { team: Team::B, .. } => r.kicks_b += 1,
                Event::Catch { .. } => r.catches += 1,
                Event::OutOfBounds { .. } => r.out_of_bounds += 1,
                Event::Violation { .. } => r.violations += 1,
                _ => {}
            }
        }
        if let Some(state) = state {
            sink.write_line(&LogLine::Cycle { cycle: state.cycle, state, decisions, events })?;
        }
    }
    (r.goals_a, r.goals_b) = m.score;
    r.cycles = m.cycle;
    if logging {
        let digest = sink.digest().unwrap_or_default();
        sink.write_line(&LogLine::Footer { score: m.score, cycles: m.cycle, digest })?;
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub matches: Vec<MatchResult>,
    pub wins: u32,
    pub draws: u32,
    pub losses: u32,
    pub mean_goals_a: f64,
    pub mean_goals_b: f64,
    pub mean_goal_difference: f64,
    /// One-sided sign test of "team A wins more often than it loses".
    pub sign_test_p: f64,
}

/// P(X ≥ wins) for X ~ Binomial(wins + losses, 1/2). Draws are dropped.
pub fn sign_test(wins: u32, losses: u32) -> f64 {
    let n = u64::from(wins + losses);
    if n == 0 || wins == 0 {
        return 1.0;
    }
    let b = Binomial::new(0.5, n).expect("valid binomial");
    b.sf(u64::from(wins) - 1)
}

impl BatchSummary {
    pub fn from_results(matches: Vec<MatchResult>) -> Self {
        let n = matches.len().max(1) as f64;
        let count = |f: fn(i64) -> bool| matches.iter().filter(|m| f(m.goal_difference())).count() as u32;
        let (wins, draws, losses) = (count(|d| d > 0), count(|d| d == 0), count(|d| d < 0));
        let mean = |f: fn(&MatchResult) -> f64| matches.iter().map(f).sum::<f64>() / n;
        Self {
            wins,
            draws,
            losses,
            mean_goals_a: mean(|m| f64::from(m.goals_a)),
            mean_goals_b: mean(|m| f64::from(m.goals_b)),
            mean_goal_difference: mean(|m| m.goal_difference() as f64),
            sign_test_p: sign_test(wins, losses),
            matches,
        }
    }

    /// Share of decided matches won by team A.
    pub fn decided_win_rate(&self) -> f64 {
        let decided = self.wins + self.losses;
        if decided == 0 {
            0.0
        } else {
            f64::from(self.wins) / f64::from(decided)
        }
    }

    /// Plain-text results: one row per match, an average row, then the
    /// aggregate statistics.
    pub fn table(&self, cfg: &Config) -> String {
        let head_a = format!("Goals scored by team A ({:?})", cfg.sim.team_a);
        let head_b = format!("Goals scored by team B ({:?})", cfg.sim.team_b);
        let (wa, wb) = (head_a.len(), head_b.len());
        let mut s = String::new();
        let _ = writeln!(s, "{:<7}  {head_a}  {head_b}", "Match");
        for m in &self.matches {
            let _ = writeln!(s, "{:<7}  {:>wa$}  {:>wb$}", m.index + 1, m.goals_a, m.goals_b);
        }
        let _ = writeln!(s, "{:<7}  {:>wa$.2}  {:>wb$.2}", "Average", self.mean_goals_a, self.mean_goals_b);
        let _ = writeln!(
            s,
            "seed {}: {} won, {} drawn, {} lost; mean goal difference {:+.2}; decided won {:.1}%; sign test p = {:.3e}",
            cfg.sim.seed,
            self.wins,
            self.draws,
            self.losses,
            self.mean_goal_difference,
            100.0 * self.decided_win_rate(),
            self.sign_test_p
        );
        s
    }
}

/// Plays matches `0..n` on `workers` threads. Results come back in index
/// order, so the summary does not depend on the worker count.
pub fn run_batch(cfg: &Config, n: u64, workers: usize) -> Result<BatchSummary, SimError> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SimError::Pool(e.to_string()))?;
    let results: Result<Vec<_>, _> =
        pool.install(|| (0..n).into_par_iter().map(|i| run_match(cfg, i, &mut NullSink)).collect());
    Ok(BatchSummary::from_results(results?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_test_values() {
        assert_eq!(sign_test(0, 5), 1.0);
        assert!((sign_test(5, 0) - 1.0 / 32.0).abs() < 1e-12);
        assert!((sign_test(9, 1) - 11.0 / 1024.0).abs() < 1e-12);
    }
}
