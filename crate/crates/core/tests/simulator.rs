use fieldmind::config::Config;
use fieldmind::skills::Command;
use fieldmind::sim::{
    run_match, AgentDecision, Event, JsonLinesSink, LogLine, Match, Mode, Policy, Team, CENTER_CIRCLE,
};
use fieldmind::team::{Decision, Intent};
use fieldmind::world::{BallState, Vec3};

fn short_config(half_length: u64) -> Config {
    let mut cfg = Config::builtin().clone();
    cfg.sim.half_length = half_length;
    cfg
}

fn idle_decisions() -> Vec<AgentDecision> {
    [Team::A, Team::B]
        .into_iter()
        .flat_map(|team| (1..=11).map(move |id| (team, id)))
        .map(|(team, id)| AgentDecision {
            team,
            id,
            decision: Decision { command: Command::Noop, pan_tilt: Command::Noop, say: None, intent: Intent::Baseline },
        })
        .collect()
}

fn mirror_event(e: Event) -> Event {
    match e {
        Event::OutOfBounds { restart, at } => Event::OutOfBounds { restart, at: at.rotated_half_turn() },
        e => e,
    }
}

#[test]
fn swapped_ends_mirror_the_match_exactly() {
    let mut cfg = short_config(400);
    cfg.sim.team_b = Policy::FuzzyCrisp;
    let mut a = Match::new(&cfg, 3, false);
    let mut b = Match::new(&cfg, 3, true);
    while !a.is_over() {
        let da = a.decide_all();
        let db = b.decide_all();
        assert_eq!(da, db, "decisions diverged at cycle {}", a.cycle);
        let mirrored: Vec<Event> = b.step(&db).into_iter().map(mirror_event).collect();
        assert_eq!(a.step(&da), mirrored);
        assert_eq!(a.ball.position, b.ball.position.rotated_half_turn());
        for (p, q) in a.bodies.iter().zip(&b.bodies) {
            assert_eq!(p.position, q.position.rotated_half_turn());
            assert_eq!(p.facing, q.facing.rotated_half_turn());
        }
    }
    assert_eq!(a.score, b.score);
}

#[test]
fn kickoff_layout_respects_the_rules() {
    let cfg = Config::builtin();
    for index in 0..20 {
        let m = Match::new(cfg, index, false);
        assert_eq!(m.mode, Mode::Kickoff(Team::A));
        for b in &m.bodies {
            let own_half = match b.team {
                Team::A => b.position.x <= 0.0,
                Team::B => b.position.x >= 0.0,
            };
            assert!(own_half, "{b:?}");
            if b.team == Team::B {
                assert!(b.position.ground_norm() >= CENTER_CIRCLE, "{b:?}");
            }
        }
        let kicker = m.bodies.iter().find(|b| b.team == Team::A && b.id == 10).unwrap();
        assert_eq!(kicker.position, Vec3::ground(-0.5, 0.0));
    }
}

#[test]
fn goal_is_scored_and_play_restarts() {
    let cfg = Config::builtin();
    let mut m = Match::new(cfg, 0, false);
    m.mode = Mode::PlayOn;
    m.ball = BallState { position: Vec3::ground(49.0, 1.0), velocity: Vec3::ground(15.0, 0.0) };
    let events = m.step(&idle_decisions());
    assert!(events.contains(&Event::Goal { team: Team::A }), "{events:?}");
    assert_eq!(m.score, (1, 0));
    assert_eq!(m.mode, Mode::Kickoff(Team::B));
    assert_eq!(m.ball.position, Vec3::ZERO);
}

#[test]
fn ball_over_the_touchline_is_a_restart_for_the_other_team() {
    let cfg = Config::builtin();
    let mut m = Match::new(cfg, 0, false);
    m.mode = Mode::PlayOn;
    m.ball = BallState { position: Vec3::ground(10.0, 31.9), velocity: Vec3::ground(0.0, 5.0) };
    let events = m.step(&idle_decisions());
    let Some(Event::OutOfBounds { restart, at }) = events.iter().find(|e| matches!(e, Event::OutOfBounds { .. })) else {
        panic!("{events:?}")
    };
    assert_eq!(*restart, Team::A);
    assert!(at.y < 32.0 && at.y > 31.0);
    assert_eq!(m.mode, Mode::Restart(Team::A));
    assert_eq!(m.ball.velocity, Vec3::ZERO);
}

#[test]
fn wide_of_the_post_is_not_a_goal() {
    let cfg = Config::builtin();
    let mut m = Match::new(cfg, 0, false);
    m.mode = Mode::PlayOn;
    m.ball = BallState { position: Vec3::ground(-49.0, 5.0), velocity: Vec3::ground(-15.0, 0.0) };
    let events = m.step(&idle_decisions());
    assert!(!events.iter().any(|e| matches!(e, Event::Goal { .. })));
    assert_eq!(m.score, (0, 0));
}

#[test]
fn restart_times_out() {
    let cfg = Config::builtin();
    let mut m = Match::new(cfg, 0, false);
    let mut timed_out = false;
    for _ in 0..fieldmind::sim::RESTART_TIMEOUT {
        timed_out |= m.step(&idle_decisions()).contains(&Event::RestartTimeout);
    }
    assert!(timed_out);
    assert_eq!(m.mode, Mode::PlayOn);
}

#[test]
fn invalid_commands_become_violations() {
    let cfg = Config::builtin();
    let mut m = Match::new(cfg, 0, false);
    let mut d = idle_decisions();
    // Field player 5 is nowhere near the ball and may not catch either.
    d[4].decision.command = Command::Kick { angle: 0.0, force: 10.0 };
    d[5].decision.command = Command::Catch;
    let events = m.step(&d);
    let violators: Vec<u8> =
        events.iter().filter_map(|e| if let Event::Violation { id, .. } = e { Some(*id) } else { None }).collect();
    assert_eq!(violators, vec![5, 6]);
    assert!(!events.iter().any(|e| matches!(e, Event::Kick { .. })));
}

#[test]
fn baseline_mirror_match_has_no_violations() {
    let mut cfg = short_config(600);
    cfg.sim.team_a = Policy::Baseline;
    let r = run_match(&cfg, 0, &mut fieldmind::sim::NullSink).unwrap();
    assert_eq!(r.violations, 0);
    assert_eq!(r.cycles, 1200);
}

#[test]
fn same_seed_gives_identical_log_bytes() {
    let cfg = short_config(150);
    let log = |cfg: &Config| {
        let mut sink = JsonLinesSink::new(Vec::new());
        run_match(cfg, 7, &mut sink).unwrap();
        sink.into_inner()
    };
    let first = log(&cfg);
    assert_eq!(first, log(&cfg));
    let lines = fieldmind::sim::read_log(std::str::from_utf8(&first).unwrap()).unwrap();
    assert_eq!(lines.len(), 2 + 300);
    assert!(matches!(lines[0], LogLine::Header { match_index: 7, .. }));
    let LogLine::Footer { digest, .. } = lines.last().unwrap() else { panic!("no footer") };
    assert_eq!(digest.len(), 64);

    let mut other = cfg.clone();
    other.sim.seed += 1;
    assert_ne!(first, log(&other));
}

#[test]
fn batch_summary_ignores_worker_count() {
    let cfg = short_config(100);
    let one = fieldmind::sim::run_batch(&cfg, 6, 1).unwrap();
    let many = fieldmind::sim::run_batch(&cfg, 6, 4).unwrap();
    assert_eq!(one, many);
    assert_eq!(one.matches.iter().map(|m| m.index).collect::<Vec<_>>(), (0..6).collect::<Vec<_>>());
}

#[test]
fn log_is_internally_consistent() {
    let cfg = short_config(1500);
    let mut sink = JsonLinesSink::new(Vec::new());
    let r = run_match(&cfg, 2, &mut sink).unwrap();
    let lines = fieldmind::sim::read_log(std::str::from_utf8(&sink.into_inner()).unwrap()).unwrap();
    let LogLine::Footer { score, cycles, .. } = *lines.last().unwrap() else { panic!("no footer") };
    assert_eq!((score, cycles), ((r.goals_a, r.goals_b), r.cycles));

    // Each line holds the state before its step and the events that step produced.
    let mut goals = (0, 0);
    let mut previous: Option<(&fieldmind::sim::StateRecord, &Vec<Event>)> = None;
    let (half_x, half_y) = (cfg.field.length / 2.0 + 0.5, cfg.field.width / 2.0 + 0.5);
    for line in &lines[1..lines.len() - 1] {
        let LogLine::Cycle { state, events, .. } = line else { panic!("unexpected {line:?}") };
        assert_eq!(state.score, goals, "cycle {}", state.cycle);
        for b in &state.players {
            assert!(b.position.x.abs() <= half_x && b.position.y.abs() <= half_y, "{b:?}");
        }
        if let Some((prev, prev_events)) = previous {
            let untouched = prev_events.iter().all(|e| matches!(e, Event::Violation { .. }));
            if untouched && prev.mode == Mode::PlayOn && state.mode == Mode::PlayOn {
                assert!(
                    state.ball.speed() <= prev.ball.speed() + 1e-9,
                    "ball sped up at cycle {}: {} -> {}",
                    state.cycle,
                    prev.ball.speed(),
                    state.ball.speed()
                );
            }
        }
        for e in events {
            match e {
                Event::Goal { team: Team::A } => goals.0 += 1,
                Event::Goal { team: Team::B } => goals.1 += 1,
                _ => {}
            }
        }
        previous = Some((state, events));
    }
    assert_eq!(goals, score);
    assert!(goals.0 + goals.1 > 0, "a long match should produce goals");
}
