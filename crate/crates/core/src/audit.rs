//! Scenario files and the audited answers behind `fieldmind eval-dm` and
//! `fieldmind fuzzy-eval`.
//!
//! A scenario is a world snapshot seen by the agent's team plus the agent
//! id and whatever the query needs. Player facings, pan and tilt are in
//! degrees unless `"angles": "radians"` is given.
//!
//! ```
//! use fieldmind::audit::{evaluate, Query, Scenario};
//! use fieldmind::config::Config;
//!
//! let text = r#"{
//!   "agent": 9,
//!   "world": {
//!     "cycle": 0,
//!     "ball": { "position": { "x": 30.5, "y": 0, "z": 0 }, "velocity": { "x": 0, "y": 0, "z": 0 } },
//!     "players": [
//!       { "id": 9, "side": "Ours", "position": { "x": 30, "y": 0, "z": 0 }, "max_speed": 3.5 }
//!     ]
//!   }
//! }"#;
//! let scenario = Scenario::from_json(text).unwrap();
//! let report = evaluate(&scenario, Some(Query::ShootGoal), Config::builtin()).unwrap();
//! assert_eq!(report["verdict"]["feasible"], true);
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::Config;
use crate::dm::{
    can_shoot_to_position, dribble_audit, find_mark_target, mark_assignment, plan_pass_audit, shoot_to_goal_audit,
    threat_score, DmError, Env, GoalShotAudit,
};
use crate::fuzzy::names;
use crate::team::{decide, select_strategy, AgentMemory, DecideInputs, Ownership, TeamContext};
use crate::world::{Side, Vec3, WorldSnapshot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Query {
    ShootGoal,
    ShootPosition,
    Pass,
    Dribble,
    Mark,
    Decide,
}

impl Query {
    pub const ALL: [Query; 6] =
        [Query::ShootGoal, Query::ShootPosition, Query::Pass, Query::Dribble, Query::Mark, Query::Decide];

    pub fn name(self) -> &'static str {
        match self {
            Query::ShootGoal => "shoot-goal",
            Query::ShootPosition => "shoot-position",
            Query::Pass => "pass",
            Query::Dribble => "dribble",
            Query::Mark => "mark",
            Query::Decide => "decide",
        }
    }
}

impl FromStr for Query {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Query::ALL.into_iter().find(|q| q.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Query::ALL.iter().map(|q| q.name()).collect();
            format!("unknown query `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleUnit {
    #[default]
    Degrees,
    Radians,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub world: WorldSnapshot,
    /// Our player the question is about.
    pub agent: u8,
    #[serde(default)]
    pub query: Option<Query>,
    /// Teammate for `pass`; every teammate when absent.
    #[serde(default)]
    pub receiver: Option<u8>,
    /// Point for `shoot-position`.
    #[serde(default)]
    pub target: Option<Vec3>,
    /// Direction for `dribble`, in `angles` units; toward their goal when absent.
    #[serde(default)]
    pub heading: Option<f64>,
    #[serde(default)]
    pub angles: AngleUnit,
}

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("malformed scenario JSON at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("scenario key `{key}`: {msg}")]
    Key { key: String, msg: String },
    #[error("no query given on the command line or in the scenario")]
    NoQuery,
    #[error("agent {0} is not one of our players in the scenario")]
    UnknownAgent(u8),
    #[error("query `{0}` needs `{1}` in the scenario")]
    Missing(&'static str, &'static str),
    #[error(transparent)]
    Dm(#[from] DmError),
    #[error("fuzzy system: {0}")]
    Fuzzy(String),
}

impl Scenario {
    /// Parses a scenario and converts its angles to radians.
    pub fn from_json(text: &str) -> Result<Scenario, AuditError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let mut s: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            if inner.is_syntax() || inner.is_eof() {
                AuditError::Syntax { line: inner.line(), column: inner.column(), msg: inner.to_string() }
            } else {
                AuditError::Key { key: e.path().to_string(), msg: inner.to_string() }
            }
        })?;
        if s.angles == AngleUnit::Degrees {
            for p in &mut s.world.players {
                p.body_facing = p.body_facing.to_radians();
                p.pan = p.pan.to_radians();
                p.tilt = p.tilt.to_radians();
            }
            s.heading = s.heading.map(f64::to_radians);
            s.angles = AngleUnit::Radians;
        }
        Ok(s)
    }
}

/// Answers `query` (or the scenario's own query) with every intermediate
/// quantity the decision maker computed.
pub fn evaluate(s: &Scenario, query: Option<Query>, cfg: &Config) -> Result<Value, AuditError> {
    let query = query.or(s.query).ok_or(AuditError::NoQuery)?;
    let env = Env::from_config(cfg);
    let world = &s.world;
    let me = world.player(Side::Ours, s.agent).ok_or(AuditError::UnknownAgent(s.agent))?;
    let ball = &world.ball;
    Ok(match query {
        Query::ShootGoal => to_json(&shoot_to_goal_audit(me, ball, world, env)),
        Query::ShootPosition => {
            let target = s.target.ok_or(AuditError::Missing("shoot-position", "target"))?;
            to_json(&can_shoot_to_position(me, ball, target, env))
        }
        Query::Pass => {
            let receivers: Vec<u8> = match s.receiver {
                Some(r) => vec![r],
                None => world.ours().filter(|r| r.id != me.id).map(|r| r.id).collect(),
            };
            let audits = receivers
                .into_iter()
                .map(|r| plan_pass_audit(me, ball, world, r, None, env, &cfg.fuzzy.pass))
                .collect::<Result<Vec<_>, _>>()?;
            to_json(&audits)
        }
        Query::Dribble => {
            let heading = s.heading.unwrap_or_else(|| (env.field.their_goal() - ball.position).heading());
            to_json(&dribble_audit(me, ball, world, heading, env)?)
        }
        Query::Mark => {
            let slot = cfg.formation.slot(s.agent).ok_or(AuditError::UnknownAgent(s.agent))?;
            let target = find_mark_target(me, world, &slot.strategic_area, &[], None, env);
            let threats: Vec<Value> = world
                .theirs()
                .map(|o| json!({ "id": o.id, "threat": threat_score(o.position, world, env) }))
                .collect();
            let assignment = target.and_then(|id| world.player(Side::Theirs, id)).map(|o| mark_assignment(o, world, env));
            json!({ "target": target, "assignment": assignment, "threats": threats })
        }
        Query::Decide => {
            let context = TeamContext::new(world, env, &cfg.fuzzy).map_err(|e| AuditError::Fuzzy(e.to_string()))?;
            let memory = AgentMemory::default();
            let inputs =
                DecideInputs { env, formation: &cfg.formation, fuzzy: &cfg.fuzzy, context: &context, memory: &memory };
            let decision = decide(s.agent, world, cfg.sim.cycle_dt, &inputs);
            json!({ "context": context, "decision": decision })
        }
    })
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("audit types serialize")
}

/// Aligned per-goal-point table of a goal-shot audit.
pub fn shoot_goal_table(audit: &GoalShotAudit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>8} {:>9} {:>9} {:>9} {:>9} {:>9}", "y", "reachable", "T_b", "T_r", "T_g", "dt");
    for (i, p) in audit.points.iter().enumerate() {
        let mark = if audit.best == Some(i) { " <" } else { "" };
        let _ = writeln!(
            s,
            "{:>8.3} {:>9} {:>9.3} {:>9.3} {:>9.3} {:>9.3}{mark}",
            p.target.y, p.reachable, p.t_b, p.t_r, p.t_g, p.delta_t
        );
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyPoint {
    /// Ball x in meters, field frame of the team.
    pub ball_x: f64,
    /// Ball x normalized to [0, 1] from our goal line.
    pub position: f64,
    pub label: String,
    pub push: f64,
}

/// Strategy label and push factor at `n` evenly spaced ball positions
/// from our goal line to theirs.
pub fn strategy_sweep(cfg: &Config, n: usize) -> Result<Vec<StrategyPoint>, AuditError> {
    let n = n.max(2);
    let hl = cfg.field.half_length();
    (0..n)
        .map(|i| {
            let ball_x = -hl + 2.0 * hl * i as f64 / (n - 1) as f64;
            let world = WorldSnapshot {
                cycle: 0,
                ball: crate::world::BallState::at_rest(Vec3::ground(ball_x, 0.0)),
                players: Vec::new(),
                score: (0, 0),
                play_mode: crate::world::PlayMode::PlayOn,
            };
            let st = select_strategy(&world, Ownership::Ours, &cfg.field, &cfg.fuzzy.strategy)
                .map_err(|e| AuditError::Fuzzy(e.to_string()))?;
            Ok(StrategyPoint {
                ball_x,
                position: cfg.field.normalized_x(ball_x),
                label: format!("{:?}", st.label),
                push: st.push,
            })
        })
        .collect()
}

/// Plain-text rendering of a strategy sweep.
pub fn strategy_table(points: &[StrategyPoint]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>8} {:>9} {:<11} {:>6}", "ball_x", names::STRATEGY_BALL, "label", "push");
    for p in points {
        let _ = writeln!(s, "{:>8.2} {:>9.3} {:<11} {:>6.3}", p.ball_x, p.position, p.label, p.push);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(extra: &str) -> String {
        format!(
            r#"{{ "agent": 7, {extra} "world": {{ "cycle": 0,
                "ball": {{ "position": {{ "x": 0.5, "y": 0, "z": 0 }}, "velocity": {{ "x": 0, "y": 0, "z": 0 }} }},
                "players": [
                  {{ "id": 7, "side": "Ours", "position": {{ "x": 0, "y": 0, "z": 0 }}, "body_facing": 90, "max_speed": 3.5 }},
                  {{ "id": 8, "side": "Ours", "position": {{ "x": 12, "y": 3, "z": 0 }}, "max_speed": 3.5 }},
                  {{ "id": 4, "side": "Theirs", "position": {{ "x": 25, "y": -10, "z": 0 }}, "max_speed": 3.5 }}
                ] }} }}"#
        )
    }

    #[test]
    fn degrees_are_converted() {
        let s = Scenario::from_json(&scenario(r#""heading": 180,"#)).unwrap();
        let me = s.world.player(Side::Ours, 7).unwrap();
        assert!((me.body_facing - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((s.heading.unwrap() - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn every_query_answers() {
        let s = Scenario::from_json(&scenario(r#""target": { "x": 10, "y": 0, "z": 0 },"#)).unwrap();
        for q in Query::ALL {
            let v = evaluate(&s, Some(q), Config::builtin()).unwrap();
            assert!(v.is_object() || v.is_array(), "{q:?}");
        }
        assert!(matches!(evaluate(&s, None, Config::builtin()), Err(AuditError::NoQuery)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = Scenario::from_json("{\n  \"agent\": 7,\n  \"world\": [").unwrap_err();
        assert!(matches!(err, AuditError::Syntax { line: 3, .. }), "{err:?}");
        let err = Scenario::from_json(&scenario(r#""bogus": 1,"#)).unwrap_err();
        assert!(matches!(err, AuditError::Key { .. }), "{err:?}");
    }

    #[test]
    fn query_names_round_trip() {
        for q in Query::ALL {
            assert_eq!(q.name().parse::<Query>(), Ok(q));
        }
        assert!("teleport".parse::<Query>().is_err());
    }

    #[test]
    fn sweep_is_monotone_in_push() {
        let pts = strategy_sweep(Config::builtin(), 41).unwrap();
        assert!(pts.windows(2).all(|w| w[1].push >= w[0].push - 1e-12));
        assert_eq!(pts.first().unwrap().label, "Danger");
        assert_eq!(pts.last().unwrap().label, "GoodToGoal");
    }
}
