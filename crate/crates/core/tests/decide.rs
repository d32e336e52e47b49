use std::f64::consts::PI;

use fieldmind::config::Config;
use fieldmind::dm::{can_shoot_to_goal, mark_assignment, Env};
use fieldmind::skills::{clear_ball, move_to, Command};
use fieldmind::team::{decide, AgentMemory, DecideInputs, Decision, Intent, StrategyLabel, TeamContext};
use fieldmind::world::{BallState, PlayMode, PlayerState, Side, Vec3, WorldSnapshot};

fn ours(id: u8, x: f64, y: f64, facing: f64) -> PlayerState {
    PlayerState::new(id, Side::Ours, Vec3::ground(x, y), facing, 3.5)
}

fn theirs(id: u8, x: f64, y: f64, facing: f64) -> PlayerState {
    PlayerState::new(id, Side::Theirs, Vec3::ground(x, y), facing, 3.5)
}

fn world(players: Vec<PlayerState>, ball: BallState) -> WorldSnapshot {
    WorldSnapshot { cycle: 0, ball, players, score: (0, 0), play_mode: PlayMode::PlayOn }
}

fn run(cfg: &Config, id: u8, w: &WorldSnapshot) -> (Decision, TeamContext) {
    let env = Env::from_config(cfg);
    let ctx = TeamContext::new(w, env, &cfg.fuzzy).unwrap();
    let memory = AgentMemory::default();
    let inputs = DecideInputs { env, formation: &cfg.formation, fuzzy: &cfg.fuzzy, context: &ctx, memory: &memory };
    (decide(id, w, cfg.sim.cycle_dt, &inputs), ctx)
}

#[test]
fn open_goal_means_shoot() {
    let cfg = Config::builtin();
    let ball = BallState::at_rest(Vec3::ground(30.4, 0.0));
    let w = world(vec![ours(9, 30.0, 0.0, 0.0), theirs(5, -20.0, 10.0, 0.0)], ball);
    let (d, _) = run(cfg, 9, &w);
    let shot = can_shoot_to_goal(&w.players[0], &ball, &w, Env::from_config(cfg));
    assert!(shot.feasible);
    assert_eq!(d.command, Command::from(shot.kick.unwrap()));
    assert!(matches!(d.intent, Intent::Shoot { .. }));
    assert!(matches!(d.pan_tilt, Command::PanTilt { .. }));
}

#[test]
fn boxed_in_facing_our_goal_clears() {
    let cfg = Config::builtin();
    let env = Env::from_config(cfg);
    let me = ours(3, -40.0, 0.0, PI);
    let ball = BallState::at_rest(Vec3::ground(-40.4, 0.0));
    let w = world(
        vec![me, theirs(9, -41.5, 0.5, 0.0), theirs(10, -38.5, 0.0, PI), theirs(11, -39.0, -1.0, PI)],
        ball,
    );
    let (d, _) = run(cfg, 3, &w);
    assert_eq!(d.intent, Intent::Clear);
    assert_eq!(d.command, clear_ball(&me, &ball, &w, env.field, env.params, env.model).unwrap());
}

#[test]
fn off_ball_attacker_takes_pushed_position() {
    let cfg = Config::builtin();
    let ball = BallState::at_rest(Vec3::ground(40.0, 0.0));
    let me = ours(10, 10.0, 5.0, 0.0);
    let w = world(vec![ours(11, 40.4, -0.2, 0.0), me, theirs(1, 50.0, 0.0, PI)], ball);
    let (d, ctx) = run(cfg, 10, &w);
    assert_eq!(ctx.strategy.label, StrategyLabel::GoodToGoal);
    assert_eq!(ctx.chaser, Some(11));
    // Shift home forward by push times the room left in the strategic area.
    let slot = cfg.formation.slot(10).unwrap();
    let x = slot.home_position.x + ctx.strategy.push * (slot.strategic_area.x_max - slot.home_position.x);
    let target = Vec3::ground(x, slot.home_position.y);
    assert_eq!(d.intent, Intent::Position { target });
    assert_eq!(d.command, move_to(&me, target));
    assert!(ctx.strategy.push > 0.8);
}

#[test]
fn nearest_teammate_chases_and_only_it() {
    let cfg = Config::builtin();
    let ball = BallState { position: Vec3::ground(0.0, 0.0), velocity: Vec3::ground(8.0, 0.0) };
    let w = world(
        vec![ours(7, 15.0, 3.0, 0.0), ours(8, -10.0, -5.0, 0.0), ours(10, 25.0, 10.0, 0.0), theirs(6, 30.0, -15.0, PI)],
        ball,
    );
    let chasers: Vec<u8> = [7, 8, 10]
        .into_iter()
        .filter(|&id| matches!(run(cfg, id, &w).0.intent, Intent::Chase { .. }))
        .collect();
    assert_eq!(chasers, vec![7]);
}

#[test]
fn defender_marks_when_in_danger() {
    let cfg = Config::builtin();
    let env = Env::from_config(cfg);
    let ball = BallState::at_rest(Vec3::ground(-35.0, 0.0));
    let w = world(
        vec![
            ours(3, -32.0, 6.0, PI),
            ours(4, -35.5, -1.0, 0.0),
            theirs(9, -35.4, 0.3, PI),
            theirs(10, -28.0, 9.0, PI),
        ],
        ball,
    );
    let (d, ctx) = run(cfg, 3, &w);
    assert_eq!(ctx.strategy.label, StrategyLabel::Danger);
    let Intent::Mark { opponent, mark } = d.intent else { panic!("expected a mark, got {:?}", d.intent) };
    let m = mark_assignment(w.player(Side::Theirs, opponent).unwrap(), &w, env);
    assert_eq!(mark, m.kind);
    assert_eq!(d.command, move_to(&w.players[0], m.position));
    assert_eq!(d.say, Some(format!("M{opponent}")));
}

#[test]
fn keeper_catches_an_incoming_shot() {
    let cfg = Config::builtin();
    let ball = BallState { position: Vec3::ground(-46.0, 0.2), velocity: Vec3::ground(-15.0, 0.0) };
    let w = world(vec![ours(1, -47.5, 0.0, 0.0), theirs(9, -30.0, 0.0, PI)], ball);
    let (d, _) = run(cfg, 1, &w);
    assert_eq!(d.intent, Intent::Catch);
    assert_eq!(d.command, Command::Catch);
    assert_eq!(d.say.as_deref(), Some("A9"));

    let away = BallState { velocity: Vec3::ground(15.0, 0.0), ..ball };
    let (d, _) = run(cfg, 1, &world(w.players.clone(), away));
    assert_ne!(d.intent, Intent::Catch);
}

#[test]
fn decisions_are_pure() {
    let cfg = Config::builtin();
    let ball = BallState { position: Vec3::ground(5.0, -3.0), velocity: Vec3::ground(-2.0, 1.0) };
    let mut players = Vec::new();
    for id in 1..=11u8 {
        let slot = cfg.formation.slot(id).unwrap();
        players.push(ours(id, slot.home_position.x, slot.home_position.y, 0.3 * f64::from(id)));
        players.push(theirs(id, -slot.home_position.x, -slot.home_position.y, PI));
    }
    let w = world(players, ball);
    for id in 1..=11u8 {
        let a = serde_json::to_string(&run(cfg, id, &w).0).unwrap();
        let b = serde_json::to_string(&run(cfg, id, &w.clone()).0).unwrap();
        assert_eq!(a, b);
    }
}
