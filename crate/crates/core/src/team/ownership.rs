use serde::{Deserialize, Serialize};

use crate::ball::{controllable_rest_point, DragModel};
use crate::world::{Params, Side, WorldSnapshot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ownership {
    Ours,
    Theirs,
    /// The ball is too fast for anyone to control yet.
    Undetermined,
}

fn nearest_by<'a>(
    world: &'a WorldSnapshot,
    params: &Params,
    model: &DragModel,
    side: Option<Side>,
) -> Option<(u8, Side)> {
    let rest = controllable_rest_point(&world.ball, params, model);
    world
        .players
        .iter()
        .filter(|p| side.map_or(true, |s| p.side == s))
        .map(|p| (p.position.ground_distance(rest), p.id, p.side))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)))
        .map(|(_, id, side)| (id, side))
}

/// Player closest to the ball's controllable rest point. Ties go to the
/// lower shirt number, then to our side.
///
/// # Panics
/// If the snapshot has no players.
pub fn nearest_player_to_ball(world: &WorldSnapshot, params: &Params, model: &DragModel) -> (u8, Side) {
    nearest_by(world, params, model, None).expect("snapshot has players")
}

/// Same as [`nearest_player_to_ball`], restricted to one team.
pub fn nearest_of_side(world: &WorldSnapshot, side: Side, params: &Params, model: &DragModel) -> Option<u8> {
    nearest_by(world, params, model, Some(side)).map(|(id, _)| id)
}

/// Which team controls the ball. Undetermined exactly when the ball is
/// faster than `MaxBallControllableSpeed`; the threshold itself counts as
/// controllable.
pub fn team_owns_ball(world: &WorldSnapshot, params: &Params, model: &DragModel) -> Ownership {
    if world.ball.speed() > params.max_ball_controllable_speed {
        return Ownership::Undetermined;
    }
    match nearest_player_to_ball(world, params, model).1 {
        Side::Ours => Ownership::Ours,
        Side::Theirs => Ownership::Theirs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::world::{BallState, PlayMode, PlayerState, Vec3};
    use proptest::prelude::*;

    fn snapshot(players: Vec<PlayerState>, ball: BallState) -> WorldSnapshot {
        WorldSnapshot { cycle: 0, ball, players, score: (0, 0), play_mode: PlayMode::PlayOn }
    }

    #[test]
    fn ball_at_feet() {
        let c = Config::builtin();
        let a = PlayerState::new(7, Side::Ours, Vec3::ground(1.0, 1.0), 0.0, 3.5);
        let b = PlayerState::new(3, Side::Theirs, Vec3::ground(9.0, 1.0), 0.0, 3.5);
        let w = snapshot(vec![b, a], BallState::at_rest(Vec3::ground(1.2, 1.0)));
        assert_eq!(nearest_player_to_ball(&w, &c.params, &c.drag), (7, Side::Ours));
        assert_eq!(team_owns_ball(&w, &c.params, &c.drag), Ownership::Ours);
    }

    #[test]
    fn ties_prefer_low_id_then_ours() {
        let c = Config::builtin();
        let a = PlayerState::new(4, Side::Theirs, Vec3::ground(-2.0, 0.0), 0.0, 3.5);
        let b = PlayerState::new(4, Side::Ours, Vec3::ground(2.0, 0.0), 0.0, 3.5);
        let d = PlayerState::new(9, Side::Ours, Vec3::ground(0.0, 2.0), 0.0, 3.5);
        let w = snapshot(vec![a, d, b], BallState::at_rest(Vec3::ZERO));
        assert_eq!(nearest_player_to_ball(&w, &c.params, &c.drag), (4, Side::Ours));
    }

    #[test]
    fn fast_ball_is_undetermined() {
        let c = Config::builtin();
        let a = PlayerState::new(4, Side::Ours, Vec3::ground(-2.0, 0.0), 0.0, 3.5);
        let v = 2.0 * c.params.max_ball_controllable_speed;
        let w = snapshot(vec![a], BallState { position: Vec3::ZERO, velocity: Vec3::ground(v, 0.0) });
        assert_eq!(team_owns_ball(&w, &c.params, &c.drag), Ownership::Undetermined);
    }

    proptest! {
        #[test]
        fn undetermined_iff_fast(speed in 0.0..3.0f64, dir in -3.2..3.2f64) {
            let c = Config::builtin();
            let a = PlayerState::new(4, Side::Ours, Vec3::ground(-2.0, 0.0), 0.0, 3.5);
            let ball = BallState { position: Vec3::ZERO, velocity: Vec3::from_angle(dir) * speed };
            let w = snapshot(vec![a], ball);
            let fast = ball.speed() > c.params.max_ball_controllable_speed;
            prop_assert_eq!(team_owns_ball(&w, &c.params, &c.drag) == Ownership::Undetermined, fast);
        }
    }
}
