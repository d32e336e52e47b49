use std::f64::consts::PI;

use fieldmind::ball::{predict, time_to_speed, DragModel};
use fieldmind::config::Config;
use fieldmind::dm::{can_dribble, can_shoot_to_goal, plan_pass_audit, Env, PassOutcome, PassType};
use fieldmind::fuzzy::names;
use fieldmind::skills::{broadcast, kick_velocity};
use fieldmind::team::{
    decide, strategic_position, AgentMemory, DecideInputs, Intent, Strategy as TeamStrategy, StrategyLabel, TeamContext,
};
use fieldmind::world::{BallState, PlayMode, PlayerState, Side, Vec3, WorldSnapshot};
use proptest::prelude::*;

fn world(players: Vec<PlayerState>, ball: BallState) -> WorldSnapshot {
    WorldSnapshot { cycle: 0, ball, players, score: (0, 0), play_mode: PlayMode::PlayOn }
}

fn point() -> impl Strategy<Value = Vec3> {
    (-52.0..52.0f64, -34.0..34.0f64).prop_map(|(x, y)| Vec3::ground(x, y))
}

fn player(side: Side, id: u8) -> impl Strategy<Value = PlayerState> {
    (point(), -PI..PI, 2.5..4.0f64).prop_map(move |(p, f, s)| PlayerState::new(id, side, p, f, s))
}

/// Eleven a side at random spots; ball somewhere, possibly rolling.
fn full_match_snapshot() -> impl Strategy<Value = WorldSnapshot> {
    let ours: Vec<_> = (1..=11).map(|id| player(Side::Ours, id)).collect();
    let theirs: Vec<_> = (1..=11).map(|id| player(Side::Theirs, id)).collect();
    (ours, theirs, point(), -10.0..10.0f64, -10.0..10.0f64).prop_map(|(mut a, b, p, vx, vy)| {
        a.extend(b);
        world(a, BallState { position: p, velocity: Vec3::ground(vx, vy) })
    })
}

/// An agent with the ball at its feet and a scatter of other players near it.
fn on_ball_scene() -> impl Strategy<Value = (PlayerState, BallState, WorldSnapshot)> {
    let others = proptest::collection::vec((-20.0..20.0f64, -20.0..20.0f64, -PI..PI, any::<bool>()), 1..6);
    (-40.0..40.0f64, -25.0..25.0f64, -PI..PI, -0.7..0.7f64, 0.2..0.65f64, others).prop_map(
        |(x, y, facing, off, d, others)| {
            let agent = PlayerState::new(6, Side::Ours, Vec3::ground(x, y), facing, 3.5);
            let ball = BallState::at_rest(agent.position + Vec3::from_angle(facing + off) * d);
            let mut players = vec![agent];
            for (i, (dx, dy, f, mine)) in others.into_iter().enumerate() {
                let side = if mine { Side::Ours } else { Side::Theirs };
                players.push(PlayerState::new(7 + i as u8, side, Vec3::ground(x + dx, y + dy), f, 3.5));
            }
            (agent, ball, world(players, ball))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rolling_prediction_composes(
        p in point(), vx in -25.0..25.0f64, vy in -25.0..25.0f64, t1 in 0.0..10.0f64, t2 in 0.0..10.0f64,
    ) {
        let m = DragModel::default();
        let b = BallState { position: p, velocity: Vec3::ground(vx, vy) };
        let two = predict(&predict(&b, t1, &m), t2, &m).position;
        let one = predict(&b, t1 + t2, &m).position;
        prop_assert!((two - one).norm() < 1e-6);
    }

    #[test]
    fn time_to_speed_monotone(s in 0.0..30.0f64, ds in 0.0..10.0f64, k in 0.05..2.0f64, dk in 0.0..2.0f64, v in 0.1..5.0f64) {
        let slow = DragModel { k, ..DragModel::default() };
        let fast_decay = DragModel { k: k + dk, ..slow };
        let ball = |s: f64| BallState { position: Vec3::ZERO, velocity: Vec3::ground(s, 0.0) };
        prop_assert!(time_to_speed(&ball(s), v, &fast_decay) <= time_to_speed(&ball(s), v, &slow));
        prop_assert!(time_to_speed(&ball(s + ds), v, &slow) >= time_to_speed(&ball(s), v, &slow));
    }

    #[test]
    fn fuzzy_outputs_stay_in_range(x in 0.0..=1.0f64, s in 0.0..=20.0f64) {
        let cfg = Config::builtin();
        let pass = &cfg.fuzzy.pass;
        let input = [(names::PASS_POSITION, x), (names::PASS_SITUATION, s)];
        let (_, strength) = pass.infer_label(&input).unwrap();
        prop_assert!(strength > 0.0 && strength <= 1.0);
        let (lo, hi) = pass.output().universe;
        let e = pass.defuzzify(&input).unwrap();
        prop_assert!((lo..=hi).contains(&e));
        let fine = pass.with_resolution(10_000).unwrap().defuzzify(&input).unwrap();
        prop_assert!((fine - e).abs() < 0.005 * (hi - lo));

        let strategy = &cfg.fuzzy.strategy;
        let (_, strength) = strategy.infer_label(&[(names::STRATEGY_BALL, x)]).unwrap();
        prop_assert!(strength > 0.0 && strength <= 1.0);
    }

    #[test]
    fn feasible_shots_beat_the_keeper_and_aim_true(
        x in 15.0..50.0f64, y in -20.0..20.0f64, facing in -1.5..1.5f64, off in -0.7..0.7f64, d in 0.2..0.65f64,
        keeper in player(Side::Theirs, 1),
    ) {
        let cfg = Config::builtin();
        let env = Env::from_config(cfg);
        let agent = PlayerState::new(9, Side::Ours, Vec3::ground(x, y), facing, 3.5);
        let ball = BallState::at_rest(agent.position + Vec3::from_angle(facing + off) * d);
        let w = world(vec![agent, keeper], ball);
        let v = can_shoot_to_goal(&agent, &ball, &w, env);
        if v.feasible {
            prop_assert!(v.delta_t.unwrap() > 0.0);
            let (kick, target) = (v.kick.unwrap(), v.target.unwrap());
            let dir = kick_velocity(&agent, kick, &cfg.params).ground_unit().unwrap();
            // Perpendicular miss of the kick line at the target.
            let rel = (target - ball.position).flat();
            let miss = (rel.x * dir.y - rel.y * dir.x).abs();
            prop_assert!(miss <= cfg.params.kick_target_tolerance + 1e-9, "miss {miss}");
        }
    }

    #[test]
    fn secure_budget_is_never_laxer_than_risky((agent, ball, w) in on_ball_scene()) {
        let cfg = Config::builtin();
        let env = Env::from_config(cfg);
        for r in w.ours().filter(|r| r.id != agent.id) {
            let audit = |t| plan_pass_audit(&agent, &ball, &w, r.id, Some(t), env, &cfg.fuzzy.pass).unwrap().outcome;
            if matches!(audit(PassType::Secure), PassOutcome::Plan(_)) {
                prop_assert!(matches!(audit(PassType::Normal), PassOutcome::Plan(_)));
                prop_assert!(matches!(audit(PassType::Risky), PassOutcome::Plan(_)));
            }
        }
    }

    #[test]
    fn phase_one_is_pure((agent, ball, w) in on_ball_scene(), heading in -PI..PI) {
        let cfg = Config::builtin();
        let env = Env::from_config(cfg);
        let copy = w.clone();
        prop_assert_eq!(can_shoot_to_goal(&agent, &ball, &w, env), can_shoot_to_goal(&agent, &ball, &copy, env));
        prop_assert_eq!(can_dribble(&agent, &ball, &w, heading, env), can_dribble(&agent, &ball, &copy, heading, env));
        for r in w.ours().filter(|r| r.id != agent.id) {
            let a = plan_pass_audit(&agent, &ball, &w, r.id, None, env, &cfg.fuzzy.pass).unwrap();
            let b = plan_pass_audit(&agent, &ball, &copy, r.id, None, env, &cfg.fuzzy.pass).unwrap();
            prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }
    }

    #[test]
    fn strategic_position_stays_in_area(id in 1..=11u8, push in 0.0..=1.0f64, ball in point()) {
        let cfg = Config::builtin();
        let w = world(Vec::new(), BallState::at_rest(ball));
        let s = TeamStrategy { label: StrategyLabel::Attack, push };
        let p = strategic_position(id, &cfg.formation, &s, &w, &cfg.field);
        let area = cfg.formation.slot(id).unwrap().strategic_area;
        prop_assert!(area.contains(p), "{p:?} outside {area:?}");
        prop_assert!(cfg.field.contains(p));
    }

    #[test]
    fn broadcast_reaches_exactly_the_disc(w in full_match_snapshot(), sender in 1..=11u8) {
        let cfg = Config::builtin();
        let me = *w.player(Side::Ours, sender).unwrap();
        let mut got = broadcast(&me, "M3", &w, &cfg.params).unwrap();
        let mut want: Vec<(Side, u8)> = w
            .players
            .iter()
            .filter(|p| !(p.side == Side::Ours && p.id == sender))
            .filter(|p| (p.position.x - me.position.x).hypot(p.position.y - me.position.y) <= cfg.params.say_radius)
            .map(|p| (p.side, p.id))
            .collect();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn at_most_one_chaser_and_decide_is_pure(w in full_match_snapshot()) {
        let cfg = Config::builtin();
        let env = Env::from_config(cfg);
        let ctx = TeamContext::new(&w, env, &cfg.fuzzy).unwrap();
        let memory = AgentMemory::default();
        let inputs = DecideInputs { env, formation: &cfg.formation, fuzzy: &cfg.fuzzy, context: &ctx, memory: &memory };
        let mut chasers = 0;
        for id in 1..=11u8 {
            let d = decide(id, &w, cfg.sim.cycle_dt, &inputs);
            prop_assert_eq!(&d, &decide(id, &w, cfg.sim.cycle_dt, &inputs));
            if matches!(d.intent, Intent::Chase { .. }) {
                chasers += 1;
                prop_assert_eq!(ctx.chaser, Some(id));
            }
        }
        prop_assert!(chasers <= 1);
    }
}
