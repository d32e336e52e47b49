use serde::{Deserialize, Serialize};

use super::{DmError, Env};
use crate::ball::{controllable_rest_point, player_time_to_reach, time_to_speed};
use crate::skills::{dribble_step, is_kickable, kick_velocity, Command, KickParams};
use crate::world::{bearing_to, BallState, PlayerState, Side, Vec3, WorldSnapshot};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DribbleAudit {
    /// Opponent ids inside the secure cone.
    pub in_cone: Vec<u8>,
    pub kick: Option<KickParams>,
    pub rest_point: Option<Vec3>,
    /// Time until the kicked ball slows to a controllable speed.
    pub t1: Option<f64>,
    pub agent_time: Option<f64>,
    /// Fastest rival (side, id, time) to the rest point.
    pub rival: Option<(Side, u8, f64)>,
    pub ok: bool,
}

/// Cone and race tests for a dribble along `heading`, with the numbers.
pub fn dribble_audit(
    agent: &PlayerState,
    ball: &BallState,
    world: &WorldSnapshot,
    heading: f64,
    env: Env,
) -> Result<DribbleAudit, DmError> {
    let p = env.params;
    if !is_kickable(agent, ball, p) {
        return Err(DmError::NotKickable);
    }
    let in_cone: Vec<u8> = world
        .theirs()
        .filter(|o| {
            let d = agent.position.ground_distance(o.position);
            d <= p.secure_dribble_distance
                && bearing_to(agent.position, heading, o.position).map_or(true, |b| b.abs() <= p.secure_dribble_angle)
        })
        .map(|o| o.id)
        .collect();
    let mut audit =
        DribbleAudit { in_cone, kick: None, rest_point: None, t1: None, agent_time: None, rival: None, ok: false };
    if !audit.in_cone.is_empty() {
        return Ok(audit);
    }
    let Command::Kick { angle, force } = dribble_step(agent, ball, heading, p, env.model) else {
        return Ok(audit);
    };
    let kick = KickParams { angle, force };
    let launched = BallState { position: ball.position, velocity: kick_velocity(agent, kick, p) };
    let rest = controllable_rest_point(&launched, p, env.model);
    let agent_time = player_time_to_reach(agent, rest, p.kickable_distance, p.turn_rate);
    let rival = world
        .players
        .iter()
        .filter(|q| !(q.side == agent.side && q.id == agent.id))
        .map(|q| (q.side, q.id, player_time_to_reach(q, rest, p.kickable_distance, p.turn_rate)))
        .min_by(|a, b| a.2.total_cmp(&b.2));
    audit.kick = Some(kick);
    audit.rest_point = Some(rest);
    audit.t1 = Some(time_to_speed(&launched, p.max_ball_controllable_speed, env.model));
    audit.agent_time = Some(agent_time);
    audit.rival = rival;
    audit.ok = rival.map_or(true, |r| agent_time + p.dribble_race_margin < r.2);
    Ok(audit)
}

/// True when no opponent stands in the secure cone ahead and the agent is
/// strictly first to the dribbled ball's controllable rest point.
pub fn can_dribble(
    agent: &PlayerState,
    ball: &BallState,
    world: &WorldSnapshot,
    heading: f64,
    env: Env,
) -> Result<bool, DmError> {
    dribble_audit(agent, ball, world, heading, env).map(|a| a.ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::world::PlayMode;

    fn snapshot(players: Vec<PlayerState>, ball: BallState) -> WorldSnapshot {
        WorldSnapshot { cycle: 0, ball, players, score: (0, 0), play_mode: PlayMode::PlayOn }
    }

    #[test]
    fn empty_field_allows_dribble() {
        let env = Env::from_config(Config::builtin());
        let agent = PlayerState::new(6, Side::Ours, Vec3::ZERO, 0.0, 3.5);
        let ball = BallState::at_rest(Vec3::ground(0.4, 0.0));
        assert_eq!(can_dribble(&agent, &ball, &snapshot(vec![agent], ball), 0.0, env), Ok(true));
    }

    #[test]
    fn opponent_in_cone_blocks() {
        let env = Env::from_config(Config::builtin());
        let agent = PlayerState::new(6, Side::Ours, Vec3::ZERO, 0.0, 3.5);
        let opp = PlayerState::new(4, Side::Theirs, Vec3::ground(1.0, 0.0), 0.0, 3.5);
        let ball = BallState::at_rest(Vec3::ground(0.4, 0.0));
        let a = dribble_audit(&agent, &ball, &snapshot(vec![agent, opp], ball), 0.0, env).unwrap();
        assert_eq!(a.in_cone, vec![4]);
        assert!(!a.ok);
    }

    #[test]
    fn fast_rival_outside_cone_blocks() {
        let env = Env::from_config(Config::builtin());
        let agent = PlayerState::new(6, Side::Ours, Vec3::ZERO, 0.0, 3.5);
        // Just over 30° off the heading, so outside the cone, yet 2.6 m from
        // the rest point 4 m ahead of the ball.
        let opp = PlayerState::new(4, Side::Theirs, Vec3::ground(4.4, 2.6), 0.0, 3.5);
        let ball = BallState::at_rest(Vec3::ground(0.4, 0.0));
        let a = dribble_audit(&agent, &ball, &snapshot(vec![agent, opp], ball), 0.0, env).unwrap();
        assert!(a.in_cone.is_empty());
        assert!(!a.ok);
    }

    #[test]
    fn loose_ball_is_an_error() {
        let env = Env::from_config(Config::builtin());
        let agent = PlayerState::new(6, Side::Ours, Vec3::ZERO, 0.0, 3.5);
        let ball = BallState::at_rest(Vec3::ground(3.0, 0.0));
        assert_eq!(can_dribble(&agent, &ball, &snapshot(vec![agent], ball), 0.0, env), Err(DmError::NotKickable));
    }
}
