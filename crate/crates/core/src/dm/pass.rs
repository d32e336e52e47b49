use serde::{Deserialize, Serialize};

use super::{behind_ball_point, fastest_opponent, DmError, Env};
use crate::ball::{player_time_to_point, player_time_to_reach, predict};
use crate::fuzzy::{names, FuzzySystem};
use crate::skills::{kick_velocity, KickParams};
use crate::world::{BallState, ErrorBudget, PerPassType, PlayerState, Side, Vec3, WorldSnapshot};

/// Pass risk tier, ordered by increasing risk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PassType {
    Secure,
    Normal,
    Risky,
}

impl PassType {
    pub const ALL: [PassType; 3] = [PassType::Secure, PassType::Normal, PassType::Risky];

    pub fn from_label(label: &str) -> Option<PassType> {
        PassType::ALL.into_iter().find(|t| t.label() == label)
    }

    pub fn label(self) -> &'static str {
        match self {
            PassType::Secure => "Secure",
            PassType::Normal => "Normal",
            PassType::Risky => "Risky",
        }
    }

    pub fn pick<T: Copy>(self, table: &PerPassType<T>) -> T {
        match self {
            PassType::Secure => table.secure,
            PassType::Normal => table.normal,
            PassType::Risky => table.risky,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PassPlan {
    pub receiver: u8,
    pub target: Vec3,
    pub pass_type: PassType,
    /// Max Pass Error, meters.
    pub max_error: f64,
    pub kick: KickParams,
}

/// First stage a rejected pass failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RejectStage {
    Fuzzy,
    Geometric,
    Timing,
    Interception,
    Receiver,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PassOutcome {
    Plan(PassPlan),
    Rejected(RejectStage),
}

impl PassOutcome {
    pub fn plan(self) -> Option<PassPlan> {
        match self {
            PassOutcome::Plan(p) => Some(p),
            PassOutcome::Rejected(_) => None,
        }
    }
}

/// Race between one opponent and the ball at the worst point of the path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpponentAudit {
    pub id: u8,
    /// Arclength along the path of the opponent's critical point `p(i)`.
    pub s: f64,
    pub point: Vec3,
    /// Opponent arrival at `p(i)`, widened by E1.
    pub t_i: f64,
    /// Ball arrival at `p(i)`, delayed by E2.
    pub t1_i: f64,
}

/// Everything the pass decision maker computed, stage by stage. Stages
/// after the first failure are left at their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassAudit {
    pub receiver: u8,
    pub position_input: f64,
    pub situation_input: f64,
    pub pass_type: Option<PassType>,
    pub max_error: Option<f64>,
    pub kick: Option<KickParams>,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub opponents: Vec<OpponentAudit>,
    pub ball_arrival: Option<f64>,
    pub receiver_opponent_time: Option<f64>,
    pub outcome: PassOutcome,
}

/// Distance from `p` to the nearest opponent, capped at the situation universe.
pub(crate) fn situation_score(world: &WorldSnapshot, p: Vec3, cap: f64) -> f64 {
    world.theirs().map(|o| o.position.ground_distance(p)).fold(cap, f64::min).max(0.0)
}

fn minimize(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    const COARSE: usize = 32;
    let step = (hi - lo) / COARSE as f64;
    let (mut best_s, mut best_v) = (lo, f(lo));
    for i in 1..=COARSE {
        let s = lo + step * i as f64;
        let v = f(s);
        if v < best_v {
            (best_s, best_v) = (s, v);
        }
    }
    // Golden-section refinement inside the neighbouring cells.
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = ((best_s - step).max(lo), (best_s + step).min(hi));
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..40 {
        if fc < fd {
            b = d;
            (d, fd) = (c, fc);
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            (c, fc) = (d, fd);
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    for (s, v) in [(c, fc), (d, fd)] {
        if v < best_v {
            (best_s, best_v) = (s, v);
        }
    }
    (best_s, best_v)
}

/// Staged pass evaluation with every intermediate quantity.
/// `forced` overrides the fuzzy pass type (for sensitivity checks).
pub fn plan_pass_audit(
    agent: &PlayerState,
    ball: &BallState,
    world: &WorldSnapshot,
    receiver_id: u8,
    forced: Option<PassType>,
    env: Env,
    pass_fuzzy: &FuzzySystem,
) -> Result<PassAudit, DmError> {
    let p = env.params;
    let receiver = world
        .player(Side::Ours, receiver_id)
        .filter(|r| !(r.side == agent.side && r.id == agent.id))
        .ok_or(DmError::UnknownReceiver(receiver_id))?;
    let target = receiver.position.flat();

    let sit_cap = pass_fuzzy
        .inputs()
        .iter()
        .find(|v| v.name == names::PASS_SITUATION)
        .map_or(20.0, |v| v.universe.1);
    let mut audit = PassAudit {
        receiver: receiver_id,
        position_input: env.field.normalized_x(ball.position.x),
        situation_input: situation_score(world, target, sit_cap),
        pass_type: None,
        max_error: None,
        kick: None,
        t1: None,
        t2: None,
        opponents: Vec::new(),
        ball_arrival: None,
        receiver_opponent_time: None,
        outcome: PassOutcome::Rejected(RejectStage::Fuzzy),
    };

    // (a) fuzzy stage
    let inputs = [(names::PASS_POSITION, audit.position_input), (names::PASS_SITUATION, audit.situation_input)];
    let (Ok((label, _)), Ok(max_error)) = (pass_fuzzy.infer_label(&inputs), pass_fuzzy.defuzzify(&inputs)) else {
        return Ok(audit);
    };
    let Some(pass_type) = forced.or_else(|| PassType::from_label(label)) else { return Ok(audit) };
    audit.pass_type = Some(pass_type);
    audit.max_error = Some(max_error);
    let ErrorBudget { e1, e2 } = pass_type.pick(&p.pass_error_budgets);

    // (b) geometric stage
    let verdict = super::can_shoot_to_position(agent, ball, target, env);
    let Some(kick) = verdict.kick else {
        audit.outcome = PassOutcome::Rejected(RejectStage::Geometric);
        return Ok(audit);
    };
    audit.kick = Some(kick);

    // (c) timing stage
    let t1 = player_time_to_point(agent, behind_ball_point(agent, ball.position, target), p.turn_rate)
        + e1 / agent.max_speed;
    let t2 = fastest_opponent(world, ball.position, p.kickable_distance, p.turn_rate);
    audit.t1 = Some(t1);
    audit.t2 = Some(t2);
    if t1 >= t2 {
        audit.outcome = PassOutcome::Rejected(RejectStage::Timing);
        return Ok(audit);
    }

    let velocity = kick_velocity(agent, kick, p);
    let speed = velocity.ground_norm();
    let launched = BallState { position: ball.position, velocity };
    let start = ball.position.flat();
    let dir = velocity.ground_unit().unwrap_or(Vec3::from_angle(agent.body_facing));
    let along = if speed > 0.0 { env.model.roll_range(speed) - p.pass_arrival_speed / env.model.k } else { 0.0 };
    let ball_time = |s: f64| env.model.roll_time(speed, s).unwrap_or(f64::INFINITY);
    let airborne = ball.position.z > 0.0 || ball.velocity.z != 0.0;

    let mut clear = true;
    for opp in world.theirs() {
        let margin = |s: f64| {
            let t_ball = t1 + ball_time(s + e2);
            if airborne && predict(&launched, t_ball - t1, env.model).position.z > p.reachable_height {
                return f64::INFINITY;
            }
            player_time_to_reach(opp, start + dir * s, p.kickable_distance + e1, p.turn_rate) - t_ball
        };
        let (s, m) = minimize(margin, 0.0, along.max(0.0));
        let t1_i = t1 + ball_time(s + e2);
        audit.opponents.push(OpponentAudit { id: opp.id, s, point: start + dir * s, t_i: m + t1_i, t1_i });
        clear &= m > 0.0;
    }
    if !clear {
        audit.outcome = PassOutcome::Rejected(RejectStage::Interception);
        return Ok(audit);
    }

    // (d) receiver stage
    let arrival = t1 + ball_time(along);
    let opp_at_receiver = fastest_opponent(world, target, p.kickable_distance, p.turn_rate);
    audit.ball_arrival = Some(arrival);
    audit.receiver_opponent_time = Some(opp_at_receiver);
    if opp_at_receiver - arrival < pass_type.pick(&p.secure_time) {
        audit.outcome = PassOutcome::Rejected(RejectStage::Receiver);
        return Ok(audit);
    }
    audit.outcome = PassOutcome::Plan(PassPlan { receiver: receiver_id, target, pass_type, max_error, kick });
    Ok(audit)
}

/// Staged pass decision to teammate `receiver_id`.
pub fn plan_pass(
    agent: &PlayerState,
    ball: &BallState,
    world: &WorldSnapshot,
    receiver_id: u8,
    env: Env,
    pass_fuzzy: &FuzzySystem,
) -> Result<PassOutcome, DmError> {
    plan_pass_audit(agent, ball, world, receiver_id, None, env, pass_fuzzy).map(|a| a.outcome)
}
