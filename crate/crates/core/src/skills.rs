//! High-level skill executors. Each turns a decided action into the one
//! basic command an agent sends this cycle.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ball::{player_time_to_reach, predict, time_to_speed, DragModel};
use crate::world::{bearing_to, wrap_angle, BallState, FieldSpec, Params, PlayerState, Side, Vec3, WorldSnapshot};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SkillError {
    #[error("ball is not within kickable distance")]
    NotKickable,
    #[error("message of {len} characters exceeds the {budget}-character budget")]
    MessageTooLong { len: usize, budget: usize },
}

/// Basic command. `Drive` carries the desired velocity (m/s, clamped to the
/// player's max speed by the simulator); `Kick.angle` is relative to the
/// body facing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "cmd")]
pub enum Command {
    Drive { force: Vec3 },
    Kick { angle: f64, force: f64 },
    PanTilt { dpan: f64, dtilt: f64 },
    Say { message: String },
    Catch,
    Noop,
}

impl Command {
    /// Same command expressed in the opposing team's frame.
    pub fn mirrored(&self) -> Command {
        match self {
            Command::Drive { force } => Command::Drive { force: force.rotated_half_turn() },
            c => c.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickParams {
    pub angle: f64,
    pub force: f64,
}

impl From<KickParams> for Command {
    fn from(k: KickParams) -> Self {
        Command::Kick { angle: k.angle, force: k.force }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("kick with ball out of reach")]
    BallNotKickable,
    #[error("kick angle {0} beyond MaxKickAngle")]
    KickAngle(f64),
    #[error("kick force {0} outside [0, MaxKickForce]")]
    KickForce(f64),
    #[error("say of {0} characters over budget")]
    SayTooLong(usize),
    #[error("non-finite command argument")]
    NonFinite,
}

pub fn is_kickable(agent: &PlayerState, ball: &BallState, params: &Params) -> bool {
    agent.position.ground_distance(ball.position) <= params.kickable_distance
        && ball.position.z <= params.reachable_height
}

/// Checks the command invariants against the state the agent acted on.
pub fn validate_command(
    cmd: &Command,
    agent: &PlayerState,
    ball: &BallState,
    params: &Params,
) -> Result<(), Violation> {
    const SLACK: f64 = 1e-9;
    match cmd {
        Command::Kick { angle, force } => {
            if !(angle.is_finite() && force.is_finite()) {
                return Err(Violation::NonFinite);
            }
            if !is_kickable(agent, ball, params) {
                return Err(Violation::BallNotKickable);
            }
            if angle.abs() > params.max_kick_angle + SLACK {
                return Err(Violation::KickAngle(*angle));
            }
            if *force < 0.0 || *force > params.max_kick_force * (1.0 + SLACK) {
                return Err(Violation::KickForce(*force));
            }
        }
        Command::Say { message } => {
            let len = message.chars().count();
            if len > params.say_budget {
                return Err(Violation::SayTooLong(len));
            }
        }
        Command::Drive { force } if !force.is_finite() => return Err(Violation::NonFinite),
        Command::PanTilt { dpan, dtilt } if !(dpan.is_finite() && dtilt.is_finite()) => {
            return Err(Violation::NonFinite)
        }
        _ => {}
    }
    Ok(())
}

/// Smallest kick-angle magnitude whose straight path passes within the
/// target tolerance, and the signed angle to use.
fn kick_direction(agent: &PlayerState, ball: &BallState, target: Vec3, params: &Params) -> Option<(f64, f64)> {
    let d = ball.position.ground_distance(target);
    let exact = bearing_to(ball.position, agent.body_facing, target).ok()?;
    if exact.abs() <= params.max_kick_angle {
        return Some((exact, d));
    }
    // Clamp to the budget and accept if the miss stays inside tolerance.
    let clamped = params.max_kick_angle.copysign(exact);
    let off = (exact - clamped).abs();
    (off < std::f64::consts::FRAC_PI_2 && d * off.sin() <= params.kick_target_tolerance)
        .then(|| (clamped, d * off.cos()))
}

/// Kick that puts the ball on `target` with `arrival_speed` left.
/// `Ok(None)` means no admissible (angle, force) pair exists.
pub fn solve_kick_arriving(
    agent: &PlayerState,
    ball: &BallState,
    target: Vec3,
    arrival_speed: f64,
    model: &DragModel,
    params: &Params,
) -> Result<Option<KickParams>, SkillError> {
    if !is_kickable(agent, ball, params) {
        return Err(SkillError::NotKickable);
    }
    if ball.position.ground_distance(target) <= params.kick_target_tolerance {
        return Ok(Some(KickParams { angle: 0.0, force: 0.0 }));
    }
    let Some((angle, along)) = kick_direction(agent, ball, target, params) else {
        return Ok(None);
    };
    let force = model.launch_speed_for(along, arrival_speed) / params.kick_speed_per_force;
    Ok((force <= params.max_kick_force).then_some(KickParams { angle, force }))
}

/// Minimum-force kick: the ball comes to rest on `target`.
pub fn solve_kick(
    agent: &PlayerState,
    ball: &BallState,
    target: Vec3,
    model: &DragModel,
    params: &Params,
) -> Result<Option<KickParams>, SkillError> {
    solve_kick_arriving(agent, ball, target, 0.0, model, params)
}

/// World-frame launch velocity of a kick.
pub fn kick_velocity(agent: &PlayerState, kick: KickParams, params: &Params) -> Vec3 {
    Vec3::from_angle(agent.body_facing + kick.angle) * params.kick_speed(kick.force)
}

/// Drive command that walks `agent` onto `target`, easing off on arrival.
pub fn move_to(agent: &PlayerState, target: Vec3) -> Command {
    let delta = (target - agent.position).flat();
    let dist = delta.norm();
    if dist < 1e-3 {
        return Command::Drive { force: Vec3::ZERO };
    }
    let speed = agent.max_speed.min(4.0 * dist);
    Command::Drive { force: delta * (speed / dist) }
}

/// Earliest point on the ball's path the agent can get a foot to, scanning
/// in `step`-second increments until the ball is controllable; the
/// controllable rest point when no earlier meeting exists.
pub fn intercept_point(agent: &PlayerState, ball: &BallState, step: f64, params: &Params, model: &DragModel) -> Vec3 {
    let horizon = time_to_speed(ball, params.max_ball_controllable_speed, model);
    let mut t = 0.0;
    while t < horizon {
        let at = predict(ball, t, model).position;
        if at.z <= params.reachable_height
            && player_time_to_reach(agent, at, params.kickable_distance, params.turn_rate) <= t
        {
            return at.flat();
        }
        t += step;
    }
    predict(ball, horizon, model).position.flat()
}

/// Speed of the drive used to turn on the spot.
pub const TURN_NUDGE: f64 = 0.01;

/// Drive command that turns the body toward `heading` while barely moving.
pub fn turn_to(heading: f64) -> Command {
    Command::Drive { force: Vec3::from_angle(heading) * TURN_NUDGE }
}

/// One dribble cycle: a soft kick along `heading` whose controllable rest
/// point lies half the secure dribble distance ahead, else close in on the ball.
pub fn dribble_step(
    agent: &PlayerState,
    ball: &BallState,
    heading: f64,
    params: &Params,
    model: &DragModel,
) -> Command {
    if !is_kickable(agent, ball, params) {
        return move_to(agent, ball.position);
    }
    let target = ball.position + Vec3::from_angle(heading) * (params.secure_dribble_distance / 2.0);
    match solve_kick_arriving(agent, ball, target, params.max_ball_controllable_speed, model, params) {
        Ok(Some(k)) => k.into(),
        // Facing the wrong way: step around toward the heading side.
        _ => move_to(agent, ball.position + Vec3::from_angle(heading)),
    }
}

/// Unit direction and length of the path a kick at full force would take.
fn full_kick_path(ball: &BallState, dir: f64, params: &Params, model: &DragModel) -> (Vec3, Vec3) {
    let start = ball.position.flat();
    (start, start + Vec3::from_angle(dir) * model.roll_range(params.max_kick_speed()))
}

pub fn point_segment_distance(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let ab = (b - a).flat();
    let len2 = ab.dot(ab);
    let t = if len2 > 0.0 { ((p - a).flat().dot(ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (p - a.lerp(b, t)).ground_norm()
}

/// Whether the ground segment a→b crosses our goal line inside the mouth.
pub(crate) fn enters_own_goal(a: Vec3, b: Vec3, field: &FieldSpec) -> bool {
    let line = -field.half_length();
    if b.x >= line || a.x <= line {
        return false;
    }
    let t = (a.x - line) / (a.x - b.x);
    (a.y + t * (b.y - a.y)).abs() <= field.goal_width / 2.0 + 1.0
}

/// Candidate clearance directions (world headings): an even grid over
/// ±MaxKickAngle plus the goal-bound heading, clamped into the budget.
pub fn clear_candidates(agent: &PlayerState, goal_heading: f64, params: &Params) -> Vec<f64> {
    let n = params.clear_directions.max(2) as usize;
    let max = params.max_kick_angle;
    let rel_goal = wrap_angle(goal_heading - agent.body_facing).clamp(-max, max);
    let mut out: Vec<f64> = (0..n)
        .map(|i| -max + 2.0 * max * i as f64 / (n - 1) as f64)
        .chain(std::iter::once(rel_goal))
        .collect();
    out.dedup();
    out
}

/// Full-force clearance in the admissible direction that keeps the ball
/// farthest from every opponent along its path.
pub fn clear_ball(
    agent: &PlayerState,
    ball: &BallState,
    world: &WorldSnapshot,
    field: &FieldSpec,
    params: &Params,
    model: &DragModel,
) -> Result<Command, SkillError> {
    if !is_kickable(agent, ball, params) {
        return Err(SkillError::NotKickable);
    }
    let goal_heading = (field.their_goal() - ball.position).heading();
    let rel_goal = wrap_angle(goal_heading - agent.body_facing);
    let mut best: Option<(f64, f64, f64)> = None; // (score, |off goal|, rel angle)
    for rel in clear_candidates(agent, goal_heading, params) {
        let (a, b) = full_kick_path(ball, agent.body_facing + rel, params, model);
        if enters_own_goal(a, b, field) {
            continue;
        }
        let score = world
            .theirs()
            .map(|o| point_segment_distance(o.position, a, b))
            .fold(f64::INFINITY, f64::min);
        let off = (rel - rel_goal).abs();
        let better = match best {
            None => true,
            Some((s, o, _)) => score > s || (score == s && off < o),
        };
        if better {
            best = Some((score, off, rel));
        }
    }
    // Every direction heads into our own goal: take the widest angle instead.
    let angle = best.map_or(params.max_kick_angle.copysign(rel_goal), |b| b.2);
    Ok(Command::Kick { angle, force: params.max_kick_force })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrackTarget {
    Visible(Vec3),
    /// Not in view; bearing (relative to the body) where it was last seen.
    Unknown { last_seen_bearing: f64 },
}

/// Keeps a visible object centered in view, or sweeps toward where it was
/// last seen.
pub fn pan_tilt_track(agent: &PlayerState, target: TrackTarget, params: &Params) -> Command {
    match target {
        TrackTarget::Visible(p) => {
            let view = agent.body_facing + agent.pan;
            let offset = bearing_to(agent.position, view, p).unwrap_or(0.0);
            let new_pan = (agent.pan + offset).clamp(-params.max_pan_angle, params.max_pan_angle);
            Command::PanTilt { dpan: new_pan - agent.pan, dtilt: 0.0 }
        }
        TrackTarget::Unknown { last_seen_bearing } => Command::PanTilt {
            dpan: params.max_pan_angle.copysign(if last_seen_bearing >= 0.0 { 1.0 } else { -1.0 }),
            dtilt: 0.0,
        },
    }
}

/// Ids of every other player (either side) within say range of `sender`.
pub fn broadcast(
    sender: &PlayerState,
    message: &str,
    world: &WorldSnapshot,
    params: &Params,
) -> Result<Vec<(Side, u8)>, SkillError> {
    let len = message.chars().count();
    if len > params.say_budget {
        return Err(SkillError::MessageTooLong { len, budget: params.say_budget });
    }
    Ok(world
        .players
        .iter()
        .filter(|p| !(p.side == sender.side && p.id == sender.id))
        .filter(|p| p.position.ground_distance(sender.position) <= params.say_radius)
        .map(|p| (p.side, p.id))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarkKind {
    /// Stand between the opponent and the ball.
    Ball,
    /// Stand between the opponent and the player who would pass to him.
    Player,
}

/// Point `MarkSecureDistance` from `opponent` toward `anchor`.
pub fn mark_position(opponent: Vec3, anchor: Vec3, params: &Params) -> Vec3 {
    match (anchor - opponent).ground_unit() {
        Some(u) => opponent + u * params.mark_secure_distance,
        None => opponent,
    }
}
