use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    nearest_of_side, select_strategy, strategic_position, team_owns_ball, Formation, Ownership, Role, Strategy,
    StrategyLabel,
};
use crate::ball::controllable_rest_point;
use crate::dm::{
    can_dribble, can_shoot_to_goal, fastest_opponent, find_mark_target, mark_assignment, plan_pass, threat_score, Env, PassType,
};
use crate::fuzzy::{FuzzyError, FuzzySystems};
use crate::skills::{
    clear_ball, dribble_step, enters_own_goal, intercept_point, is_kickable, kick_velocity, move_to, pan_tilt_track, solve_kick_arriving, turn_to, Command, MarkKind,
    TrackTarget,
};
use crate::world::{wrap_angle, PlayerState, Side, Vec3, WorldSnapshot};

/// Why the agent issued its command, for logs and replays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Intent {
    Shoot { target: Vec3 },
    Pass { receiver: u8, pass_type: PassType },
    Dribble,
    Clear,
    Catch,
    Chase { target: Vec3 },
    Mark { opponent: u8, mark: MarkKind },
    Position { target: Vec3 },
    /// Scripted behaviour outside the cascade.
    Baseline,
}

/// Everything one agent sends in one cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub command: Command,
    pub pan_tilt: Command,
    pub say: Option<String>,
    pub intent: Intent,
}

/// A message heard at the previous cycle boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Heard {
    pub side: Side,
    pub sender: u8,
    pub text: String,
}

/// What an agent remembers between cycles: teammates' mark claims, the
/// keeper's latest alert, and what it announced itself.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AgentMemory {
    /// opponent id → (claiming teammate, cycle heard)
    pub claims: BTreeMap<u8, (u8, u64)>,
    pub alert: Option<u8>,
    /// (opponent, cycle announced)
    pub own_claim: Option<(u8, u64)>,
    pub last_alert: Option<u8>,
}

impl AgentMemory {
    /// Folds in messages heard from teammates. Text is `M<id>` for a mark
    /// claim and `A<id>` for a keeper alert; anything else is ignored.
    pub fn absorb(&mut self, own_side: Side, heard: &[Heard], cycle: u64) {
        for h in heard.iter().filter(|h| h.side == own_side) {
            let mut chars = h.text.chars();
            let tag = chars.next();
            let Ok(id) = chars.as_str().parse::<u8>() else { continue };
            match tag {
                Some('M') => {
                    self.claims.retain(|_, (claimer, _)| *claimer != h.sender);
                    self.claims.insert(id, (h.sender, cycle));
                }
                Some('A') => self.alert = Some(id),
                _ => {}
            }
        }
    }

    /// Remembers what this agent itself announced.
    pub fn record(&mut self, decision: &Decision, cycle: u64) {
        match (&decision.intent, &decision.say) {
            (Intent::Mark { opponent, .. }, Some(_)) => self.own_claim = Some((*opponent, cycle)),
            (Intent::Mark { .. }, None) => {}
            _ => self.own_claim = None,
        }
        if let Some(text) = decision.say.as_deref().and_then(|t| t.strip_prefix('A')) {
            self.last_alert = text.parse().ok();
        }
    }

    /// Opponents covered by a lower-numbered teammate whose claim is fresh.
    pub fn claimed_for(&self, me: u8, cycle: u64, expiry: u64) -> Vec<u8> {
        self.claims
            .iter()
            .filter(|(_, &(claimer, at))| claimer < me && cycle.saturating_sub(at) < expiry)
            .map(|(&opp, _)| opp)
            .collect()
    }
}

/// Facts shared by the whole team for one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TeamContext {
    pub ownership: Ownership,
    pub strategy: Strategy,
    /// Our player nearest the controllable rest point: the one who chases.
    pub chaser: Option<u8>,
    pub rest_point: Vec3,
}

impl TeamContext {
    pub fn new(world: &WorldSnapshot, env: Env, fuzzy: &FuzzySystems) -> Result<Self, FuzzyError> {
        let ownership = team_owns_ball(world, env.params, env.model);
        Ok(Self {
            ownership,
            strategy: select_strategy(world, ownership, env.field, &fuzzy.strategy)?,
            chaser: nearest_of_side(world, Side::Ours, env.params, env.model),
            rest_point: controllable_rest_point(&world.ball, env.params, env.model),
        })
    }
}

/// Everything `decide` reads besides the snapshot.
#[derive(Debug, Clone, Copy)]
pub struct DecideInputs<'a> {
    pub env: Env<'a>,
    pub formation: &'a Formation,
    pub fuzzy: &'a FuzzySystems,
    pub context: &'a TeamContext,
    pub memory: &'a AgentMemory,
}

/// Penalty-area half extents, meters: depth from the goal line, half width.
pub const PENALTY_AREA: (f64, f64) = (16.5, 20.16);

fn in_own_penalty_area(p: Vec3, env: Env) -> bool {
    p.x <= -env.field.half_length() + PENALTY_AREA.0 && p.y.abs() <= PENALTY_AREA.1
}

/// Whether the ball, heading toward our goal line, passes within catch
/// range of the keeper during the next cycle.
pub fn catchable(keeper: &PlayerState, world: &WorldSnapshot, env: Env, dt: f64) -> bool {
    let p = env.params;
    let ball = &world.ball;
    let next = crate::ball::predict(ball, dt, env.model).position;
    ball.speed() > p.max_ball_controllable_speed
        && ball.velocity.x < 0.0
        && ball.position.z <= p.reachable_height
        && in_own_penalty_area(ball.position, env)
        && crate::skills::point_segment_distance(keeper.position, ball.position, next) <= p.catch_radius
}

/// Seconds of slack an on-ball agent needs before it turns instead of clearing.
const CLEAR_TURN_MARGIN: f64 = 0.5;

/// The agent as it would stand once turned to kick toward `target`.
fn facing_toward(me: &PlayerState, ball: Vec3, target: Vec3) -> PlayerState {
    PlayerState { body_facing: (target - ball).heading(), ..*me }
}

fn on_ball(me: &PlayerState, world: &WorldSnapshot, inputs: &DecideInputs) -> (Command, Intent) {
    let env = inputs.env;
    let ball = &world.ball;
    let shot = can_shoot_to_goal(me, ball, world, env);
    if let (true, Some(k), Some(target)) = (shot.feasible, shot.kick, shot.target) {
        return (k.into(), Intent::Shoot { target });
    }
    let turned = facing_toward(me, ball.position, env.field.their_goal());
    let shot = can_shoot_to_goal(&turned, ball, world, env);
    if let (true, Some(target)) = (shot.feasible, shot.target) {
        return (turn_to(turned.body_facing), Intent::Shoot { target });
    }
    let best_pass = world
        .ours()
        .filter(|r| r.id != me.id)
        .filter_map(|r| {
            let turned = facing_toward(me, ball.position, r.position);
            let plan = plan_pass(&turned, ball, world, r.id, env, &inputs.fuzzy.pass).ok()?.plan()?;
            let v = kick_velocity(&turned, plan.kick, env.params);
            let end = ball.position + v * (1.0 / env.model.k);
            (!enters_own_goal(ball.position, end, env.field)).then_some(plan)
        })
        .max_by(|a, b| a.target.x.total_cmp(&b.target.x).then(b.receiver.cmp(&a.receiver)));
    if let Some(plan) = best_pass {
        let intent = Intent::Pass { receiver: plan.receiver, pass_type: plan.pass_type };
        let now = solve_kick_arriving(me, ball, plan.target, env.params.pass_arrival_speed, env.model, env.params);
        return match now {
            Ok(Some(k)) => (k.into(), intent),
            _ => (turn_to((plan.target - ball.position).heading()), intent),
        };
    }
    let heading = (env.field.their_goal() - ball.position).heading();
    if can_dribble(me, ball, world, heading, env) == Ok(true) {
        return (dribble_step(me, ball, heading, env.params, env.model), Intent::Dribble);
    }
    let turned = PlayerState { body_facing: heading, ..*me };
    let facing_back = wrap_angle(me.body_facing - heading).abs() > env.params.max_kick_angle;
    if facing_back && can_dribble(&turned, ball, world, heading, env) == Ok(true) {
        return (turn_to(heading), Intent::Dribble);
    }
    // With time to spare, face upfield rather than clear backward.
    let turn_time = wrap_angle(me.body_facing - heading).abs() / env.params.turn_rate;
    let pressure = fastest_opponent(world, ball.position, env.params.kickable_distance, env.params.turn_rate);
    if facing_back && pressure > turn_time + CLEAR_TURN_MARGIN {
        return (turn_to(heading), Intent::Clear);
    }
    match clear_ball(me, ball, world, env.field, env.params, env.model) {
        Ok(c) => (c, Intent::Clear),
        Err(_) => (move_to(me, ball.position), Intent::Chase { target: ball.position }),
    }
}

fn keeper_alert(world: &WorldSnapshot, inputs: &DecideInputs) -> Option<String> {
    let env = inputs.env;
    let target = world
        .theirs()
        .filter(|o| o.position.x < 0.0)
        .map(|o| (threat_score(o.position, world, env), o.id))
        .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)))
        .map(|(_, id)| id);
    match target {
        Some(id) if inputs.memory.last_alert != Some(id) => Some(format!("A{id}")),
        _ => None,
    }
}

/// One agent's decision for this cycle: the on-ball cascade (shoot, pass,
/// dribble, clear), else chase if it is our nearest player, else mark when
/// defending, else take up its strategic position. Pure in its inputs.
///
/// # Panics
/// If agent `id` is missing from the snapshot or the formation.
pub fn decide(id: u8, world: &WorldSnapshot, cycle_dt: f64, inputs: &DecideInputs) -> Decision {
    let env = inputs.env;
    let p = env.params;
    let me = world.player(Side::Ours, id).expect("agent in snapshot");
    let role = inputs.formation.role(id).expect("agent in formation");
    let ctx = inputs.context;
    let pan_tilt = pan_tilt_track(me, TrackTarget::Visible(world.ball.position), p);
    let mut say = None;

    let (command, intent) = if role == Role::GoalKeeper && catchable(me, world, env, cycle_dt) {
        (Command::Catch, Intent::Catch)
    } else if is_kickable(me, &world.ball, p) {
        on_ball(me, world, inputs)
    } else if ctx.chaser == Some(id) {
        let target = intercept_point(me, &world.ball, cycle_dt, p, env.model);
        (move_to(me, target), Intent::Chase { target })
    } else {
        let marking = matches!(ctx.strategy.label, StrategyLabel::Danger | StrategyLabel::Careful)
            && matches!(role, Role::Defender | Role::HalfBacker);
        let slot = inputs.formation.slot(id).expect("agent in formation");
        let mark = marking
            .then(|| {
                let claimed = inputs.memory.claimed_for(id, world.cycle, p.mark_claim_expiry);
                find_mark_target(me, world, &slot.strategic_area, &claimed, inputs.memory.alert, env)
            })
            .flatten()
            .and_then(|opp| world.player(Side::Theirs, opp))
            .map(|opp| mark_assignment(opp, world, env));
        match mark {
            Some(m) => {
                let fresh = matches!(inputs.memory.own_claim,
                    Some((o, at)) if o == m.opponent && world.cycle.saturating_sub(at) < p.mark_claim_expiry / 2);
                if !fresh {
                    say = Some(format!("M{}", m.opponent));
                }
                (move_to(me, m.position), Intent::Mark { opponent: m.opponent, mark: m.kind })
            }
            None => {
                let target = strategic_position(id, inputs.formation, &ctx.strategy, world, env.field);
                (move_to(me, target), Intent::Position { target })
            }
        }
    };
    if role == Role::GoalKeeper {
        say = keeper_alert(world, inputs);
    }
    Decision { command, pan_tilt, say, intent }
}
