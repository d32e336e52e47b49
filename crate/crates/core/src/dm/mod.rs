//! Phase-one decision makers: pure predicates and selectors that answer
//! whether a skill can be performed from the current snapshot.
//!
//! Every function here reads an immutable [`WorldSnapshot`] seen from the
//! acting agent's team (`Ours` attacks +x) and never mutates anything, so
//! all eleven agents may be evaluated in parallel.

mod dribble;
mod mark;
mod pass;
mod shoot;

pub use dribble::{can_dribble, dribble_audit, DribbleAudit};
pub use mark::{find_mark_target, mark_assignment, threat_score, MarkAssignment};
pub use pass::{plan_pass, plan_pass_audit, OpponentAudit, PassAudit, PassOutcome, PassPlan, PassType, RejectStage};
pub use shoot::{
    can_shoot_to_goal, can_shoot_to_position, goal_points, shoot_to_goal_audit, GoalPointAudit, GoalShotAudit,
    ShootVerdict,
};

use thiserror::Error;

use crate::ball::DragModel;
use crate::config::Config;
use crate::world::{FieldSpec, Params, PlayerState, Vec3, WorldSnapshot};

/// Shirt number the decision makers treat as the opposing goalkeeper.
pub const GOALKEEPER_ID: u8 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DmError {
    #[error("player {0} is not a teammate of the agent")]
    UnknownReceiver(u8),
    #[error("ball is not within kickable distance")]
    NotKickable,
}

/// The physical constants a decision maker reads.
#[derive(Debug, Clone, Copy)]
pub struct Env<'a> {
    pub field: &'a FieldSpec,
    pub params: &'a Params,
    pub model: &'a DragModel,
}

impl<'a> Env<'a> {
    pub fn new(field: &'a FieldSpec, params: &'a Params, model: &'a DragModel) -> Self {
        Self { field, params, model }
    }

    pub fn from_config(cfg: &'a Config) -> Self {
        Self::new(&cfg.field, &cfg.params, &cfg.drag)
    }
}

/// Where an agent must stand to strike the ball toward `target`: on the
/// line through ball and target, behind the ball at its current distance.
pub fn behind_ball_point(agent: &PlayerState, ball: Vec3, target: Vec3) -> Vec3 {
    let d = agent.position.ground_distance(ball);
    match (target - ball).ground_unit() {
        Some(u) => ball.flat() - u * d,
        None => agent.position,
    }
}

/// Smallest turn-then-run time of any opponent to get `reach` of `point`.
pub fn fastest_opponent(world: &WorldSnapshot, point: Vec3, reach: f64, turn_rate: f64) -> f64 {
    world
        .theirs()
        .map(|o| crate::ball::player_time_to_reach(o, point, reach, turn_rate))
        .fold(f64::INFINITY, f64::min)
}
