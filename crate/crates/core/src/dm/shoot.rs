use serde::{Deserialize, Serialize};

use super::{behind_ball_point, Env, GOALKEEPER_ID};
use crate::ball::{player_time_to_point, player_time_to_reach};
use crate::skills::{is_kickable, solve_kick_arriving, KickParams};
use crate::world::{bearing_to, BallState, PlayerState, Side, Vec3, WorldSnapshot};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootVerdict {
    pub feasible: bool,
    pub kick: Option<KickParams>,
    pub target: Option<Vec3>,
    /// Goalkeeper margin of the chosen goal point, for goal shots.
    pub delta_t: Option<f64>,
}

impl ShootVerdict {
    const NO: ShootVerdict = ShootVerdict { feasible: false, kick: None, target: None, delta_t: None };
}

/// Whether the agent can place the ball on `target` right now, arriving at
/// the pass arrival speed.
pub fn can_shoot_to_position(agent: &PlayerState, ball: &BallState, target: Vec3, env: Env) -> ShootVerdict {
    let p = env.params;
    if !is_kickable(agent, ball, p) || ball.position.ground_distance(target) > p.max_kick_distance {
        return ShootVerdict::NO;
    }
    match solve_kick_arriving(agent, ball, target, p.pass_arrival_speed, env.model, p) {
        Ok(Some(kick)) => ShootVerdict { feasible: true, kick: Some(kick), target: Some(target), delta_t: None },
        _ => ShootVerdict::NO,
    }
}

/// The goal mouth quantized into `n` evenly spaced points at half height.
pub fn goal_points(env: Env) -> Vec<Vec3> {
    let f = env.field;
    let n = env.params.goal_quantization_n.max(1);
    (0..n)
        .map(|i| {
            let y = -f.goal_width / 2.0 + f.goal_width * (f64::from(i) + 0.5) / f64::from(n);
            Vec3::new(f.half_length(), y, f.goal_height / 2.0)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoalPointAudit {
    pub target: Vec3,
    /// A full-power kick can be aimed at this point right now.
    pub reachable: bool,
    pub kick: Option<KickParams>,
    pub t_b: f64,
    pub t_r: f64,
    /// Infinite (null in JSON) when there is no goalkeeper.
    pub t_g: f64,
    pub delta_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoalShotAudit {
    pub points: Vec<GoalPointAudit>,
    pub best: Option<usize>,
    pub verdict: ShootVerdict,
}

fn audit_point(agent: &PlayerState, ball: &BallState, goalie: Option<&PlayerState>, target: Vec3, env: Env) -> GoalPointAudit {
    let p = env.params;
    let speed = p.max_kick_speed();
    let mut out = GoalPointAudit {
        target,
        reachable: false,
        kick: None,
        t_b: f64::NAN,
        t_r: f64::NAN,
        t_g: f64::NAN,
        delta_t: f64::NAN,
    };
    let dist = ball.position.ground_distance(target);
    let placed = can_shoot_to_position(agent, ball, target, env);
    let (Some(k), true) = (placed.kick, dist <= p.max_kick_distance) else { return out };
    // Aim along the placed kick's direction, but strike at full power.
    let exact = bearing_to(ball.position, agent.body_facing, target).unwrap_or(0.0);
    let along = dist * (exact - k.angle).cos();
    let Some(t_b) = env.model.roll_time(speed, along) else { return out };
    let t_r = player_time_to_point(agent, behind_ball_point(agent, ball.position, target), p.turn_rate);
    let t_g = goalie.map_or(f64::INFINITY, |g| player_time_to_reach(g, target.flat(), p.catch_radius, p.turn_rate));
    out.reachable = true;
    out.kick = Some(KickParams { angle: k.angle, force: p.max_kick_force });
    out.t_b = t_b;
    out.t_r = t_r;
    out.t_g = t_g;
    out.delta_t = t_g - (t_b + t_r);
    out
}

/// Every quantized goal point with its race quantities, plus the verdict.
pub fn shoot_to_goal_audit(agent: &PlayerState, ball: &BallState, world: &WorldSnapshot, env: Env) -> GoalShotAudit {
    let goalie = world.player(Side::Theirs, GOALKEEPER_ID);
    let points: Vec<GoalPointAudit> =
        goal_points(env).into_iter().map(|t| audit_point(agent, ball, goalie, t, env)).collect();
    let best = points
        .iter()
        .enumerate()
        .filter(|(_, a)| a.reachable)
        .fold(None::<(usize, f64)>, |acc, (i, a)| match acc {
            Some((_, d)) if d >= a.delta_t => acc,
            _ => Some((i, a.delta_t)),
        })
        .map(|(i, _)| i);
    let verdict = match best.map(|i| &points[i]) {
        Some(a) if a.delta_t > 0.0 => {
            ShootVerdict { feasible: true, kick: a.kick, target: Some(a.target), delta_t: Some(a.delta_t) }
        }
        Some(a) => ShootVerdict { delta_t: Some(a.delta_t), ..ShootVerdict::NO },
        None => ShootVerdict::NO,
    };
    GoalShotAudit { points, best, verdict }
}

/// Best goal shot, feasible when the ball beats the goalkeeper to some
/// quantized goal point: `Δt = T_g − (T_b + T_r) > 0`.
pub fn can_shoot_to_goal(agent: &PlayerState, ball: &BallState, world: &WorldSnapshot, env: Env) -> ShootVerdict {
    shoot_to_goal_audit(agent, ball, world, env).verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::world::PlayMode;

    fn world(players: Vec<PlayerState>, ball: BallState) -> WorldSnapshot {
        WorldSnapshot { cycle: 0, ball, players, score: (0, 0), play_mode: PlayMode::PlayOn }
    }

    #[test]
    fn aligned_position_shot() {
        let cfg = Config::builtin();
        let env = Env::from_config(cfg);
        let agent = PlayerState::new(9, Side::Ours, Vec3::ZERO, 0.0, 3.5);
        let ball = BallState::at_rest(Vec3::ground(0.4, 0.0));
        let v = can_shoot_to_position(&agent, &ball, Vec3::ground(5.4, 0.0), env);
        assert!(v.feasible);
        assert_eq!(v.kick.unwrap().angle, 0.0);
        let side = can_shoot_to_position(&agent, &ball, Vec3::ground(0.4, -6.0), env);
        assert!(!side.feasible);
    }

    #[test]
    fn empty_goal_is_open() {
        let cfg = Config::builtin();
        let env = Env::from_config(cfg);
        let agent = PlayerState::new(9, Side::Ours, Vec3::ground(30.0, 0.0), 0.0, 3.5);
        let ball = BallState::at_rest(Vec3::ground(30.4, 0.0));
        let v = can_shoot_to_goal(&agent, &ball, &world(vec![agent], ball), env);
        assert!(v.feasible);
        assert_eq!(v.delta_t, Some(f64::INFINITY));
    }

    #[test]
    fn keeper_on_every_point_blocks() {
        let cfg = Config::builtin();
        let mut params = cfg.params.clone();
        params.catch_radius = 5.0;
        let env = Env::new(&cfg.field, &params, &cfg.drag);
        let agent = PlayerState::new(9, Side::Ours, Vec3::ground(30.0, 0.0), 0.0, 3.5);
        let keeper = PlayerState::new(1, Side::Theirs, Vec3::ground(50.0, 0.0), std::f64::consts::PI, 3.5);
        let ball = BallState::at_rest(Vec3::ground(30.4, 0.0));
        let audit = shoot_to_goal_audit(&agent, &ball, &world(vec![agent, keeper], ball), env);
        assert!(audit.points.iter().all(|p| p.t_g == 0.0 && p.delta_t < 0.0));
        assert!(!audit.verdict.feasible);
    }

    #[test]
    fn far_shots_are_out_of_range() {
        let env = Env::from_config(Config::builtin());
        let agent = PlayerState::new(9, Side::Ours, Vec3::ground(-30.0, 0.0), 0.0, 3.5);
        let ball = BallState::at_rest(Vec3::ground(-29.6, 0.0));
        let audit = shoot_to_goal_audit(&agent, &ball, &world(vec![agent], ball), env);
        assert!(audit.points.iter().all(|p| !p.reachable));
        assert!(!audit.verdict.feasible);
    }
}
