use serde::{Deserialize, Serialize};

use super::Env;
use crate::ball::{player_time_to_point, player_time_to_reach};
use crate::skills::{mark_position, MarkKind};
use crate::team::Rect;
use crate::world::{PlayerState, Vec3, WorldSnapshot};

/// How dangerous an opponent is: closer to our goal and to the ball is worse.
pub fn threat_score(opponent: Vec3, world: &WorldSnapshot, env: Env) -> f64 {
    let p = env.params;
    let to_goal = opponent.ground_distance(env.field.our_goal()).max(0.1);
    let to_ball = opponent.ground_distance(world.ball.position).max(0.1);
    p.mark_goal_weight / to_goal + p.mark_ball_weight / to_ball
}

/// Opponent nearest the ball: the one who would play it next.
fn passer(world: &WorldSnapshot) -> Option<&PlayerState> {
    world.theirs().min_by(|a, b| {
        let da = a.position.ground_distance(world.ball.position);
        let db = b.position.ground_distance(world.ball.position);
        da.total_cmp(&db).then(a.id.cmp(&b.id))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkAssignment {
    pub opponent: u8,
    pub kind: MarkKind,
    pub position: Vec3,
}

/// Where and how to mark `opponent`: on its line to the ball if it is the
/// passer, on its line to the passer otherwise.
pub fn mark_assignment(opponent: &PlayerState, world: &WorldSnapshot, env: Env) -> MarkAssignment {
    let ball = world.ball.position.flat();
    let (kind, anchor) = match passer(world) {
        Some(p) if p.id != opponent.id => (MarkKind::Player, p.position),
        _ => (MarkKind::Ball, ball),
    };
    MarkAssignment { opponent: opponent.id, kind, position: mark_position(opponent.position, anchor, env.params) }
}

/// Most threatening unclaimed opponent inside `area` that the agent can
/// mark before it reaches the ball. `claimed` lists opponents teammates
/// already cover; a `priority` opponent (e.g. flagged by our keeper) wins
/// whenever it is a feasible candidate.
pub fn find_mark_target(
    agent: &PlayerState,
    world: &WorldSnapshot,
    area: &Rect,
    claimed: &[u8],
    priority: Option<u8>,
    env: Env,
) -> Option<u8> {
    let p = env.params;
    let feasible = |o: &&PlayerState| {
        let spot = mark_assignment(o, world, env).position;
        player_time_to_point(agent, spot, p.turn_rate)
            < player_time_to_reach(o, world.ball.position, p.kickable_distance, p.turn_rate)
    };
    let candidates: Vec<&PlayerState> = world
        .theirs()
        .filter(|o| area.contains(o.position) && !claimed.contains(&o.id))
        .filter(feasible)
        .collect();
    if let Some(id) = priority.filter(|id| candidates.iter().any(|o| o.id == *id)) {
        return Some(id);
    }
    candidates
        .into_iter()
        .map(|o| (threat_score(o.position, world, env), o.id))
        .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)))
        .map(|(_, id)| id)
}
