//! A deliberately simple opponent: whoever is nearest the ball runs at it
//! and blasts it toward goal, everyone else holds their home spot.

use crate::ball::controllable_rest_point;
use crate::dm::Env;
use crate::skills::{is_kickable, move_to, Command, KickParams};
use crate::team::{nearest_of_side, Decision, Formation, Intent};
use crate::world::{bearing_to, Side, WorldSnapshot};

/// Decision of baseline agent `id`, seen from its own team's frame.
///
/// # Panics
/// If `id` is missing from the snapshot or the formation.
pub fn baseline_decide(id: u8, world: &WorldSnapshot, env: Env, formation: &Formation) -> Decision {
    let p = env.params;
    let me = world.player(Side::Ours, id).expect("agent in snapshot");
    let goal = env.field.their_goal();
    let command = if is_kickable(me, &world.ball, p) {
        let exact = bearing_to(world.ball.position, me.body_facing, goal).unwrap_or(0.0);
        let angle = exact.clamp(-p.max_kick_angle, p.max_kick_angle);
        KickParams { angle, force: p.max_kick_force }.into()
    } else if nearest_of_side(world, Side::Ours, p, env.model) == Some(id) {
        move_to(me, controllable_rest_point(&world.ball, p, env.model))
    } else {
        let home = formation.slot(id).expect("agent in formation").home_position;
        move_to(me, home)
    };
    Decision { command, pan_tilt: Command::Noop, say: None, intent: Intent::Baseline }
}
