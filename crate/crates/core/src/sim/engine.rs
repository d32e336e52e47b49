//! One match: state, the per-cycle physics step and the referee.
//!
//! Facings are stored as unit vectors rather than angles. Every operation
//! the engine performs then commutes exactly with the half-turn
//! `(x, y) ↦ (−x, −y)`, so a match played with the teams' ends swapped is
//! the bit-for-bit mirror image of the original.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::baseline::baseline_decide;
use super::{Policy, SimSettings};
use crate::ball::predict;
use crate::config::Config;
use crate::dm::Env;
use crate::skills::{point_segment_distance, validate_command, Command};
use crate::team::{
    decide, AgentMemory, DecideInputs, Decision, Heard, Role, TeamContext, PENALTY_AREA,
};
use crate::world::{BallState, PlayMode, PlayerState, Side, Vec3, WorldSnapshot};

/// Radius of the centre circle the defending team must respect at kickoff.
pub const CENTER_CIRCLE: f64 = 9.15;
/// Distance the team that put the ball out must keep from the restart spot.
pub const RESTART_DISTANCE: f64 = 5.0;
/// Cycles a kickoff or restart may wait before play resumes regardless.
pub const RESTART_TIMEOUT: u64 = 100;
/// Margin, meters, players may stray outside the touchlines.
pub const FIELD_MARGIN: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Team {
    A,
    B,
}

impl Team {
    pub fn other(self) -> Team {
        match self {
            Team::A => Team::B,
            Team::B => Team::A,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "team")]
pub enum Mode {
    Kickoff(Team),
    PlayOn,
    /// Ball out of play; `Team` takes the restart.
    Restart(Team),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event")]
pub enum Event {
    Kick { team: Team, id: u8 },
    Catch { team: Team, id: u8 },
    Goal { team: Team },
    OutOfBounds { restart: Team, at: Vec3 },
    HalfTime,
    FullTime,
    RestartTimeout,
    Violation { team: Team, id: u8, reason: String },
}

/// A player as the engine stores it, in world coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Body {
    pub team: Team,
    pub id: u8,
    pub position: Vec3,
    pub velocity: Vec3,
    /// Unit vector of the body direction.
    pub facing: Vec3,
    pub pan: f64,
    pub tilt: f64,
    pub max_speed: f64,
}

/// World-frame snapshot written to the match log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub cycle: u64,
    pub ball: BallState,
    pub players: Vec<Body>,
    pub score: (u32, u32),
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentDecision {
    pub team: Team,
    pub id: u8,
    #[serde(flatten)]
    pub decision: Decision,
}

pub struct Match<'a> {
    cfg: &'a Config,
    /// Team A attacks −x instead of +x.
    swapped: bool,
    rng: ChaCha8Rng,
    pub cycle: u64,
    pub ball: BallState,
    pub bodies: Vec<Body>,
    pub score: (u32, u32),
    pub mode: Mode,
    mode_age: u64,
    last_touch: Option<Team>,
    memory: [Vec<AgentMemory>; 2],
    pending_say: Vec<(Team, u8, String)>,
}

fn rotate(v: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    Vec3::ground(c * v.x - s * v.y, s * v.x + c * v.y)
}

fn signed_angle(from: Vec3, to: Vec3) -> f64 {
    let cross = from.x * to.y - from.y * to.x;
    let dot = from.x * to.x + from.y * to.y;
    cross.atan2(dot)
}

impl<'a> Match<'a> {
    /// Fresh match ready for the opening kickoff by team A. Each match
    /// index draws from its own random stream of `cfg.sim.seed`.
    pub fn new(cfg: &'a Config, match_index: u64, swapped: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.sim.seed);
        rng.set_stream(match_index);
        let mut m = Self {
            cfg,
            swapped,
            rng,
            cycle: 0,
            ball: BallState::at_rest(Vec3::ZERO),
            bodies: Vec::with_capacity(22),
            score: (0, 0),
            mode: Mode::Kickoff(Team::A),
            mode_age: 0,
            last_touch: None,
            memory: [vec![AgentMemory::default(); 11], vec![AgentMemory::default(); 11]],
            pending_say: Vec::new(),
        };
        m.kickoff(Team::A);
        m
    }

    fn settings(&self) -> &SimSettings {
        &self.cfg.sim
    }

    /// +1 if `team` attacks +x in world coordinates, −1 otherwise.
    fn sign(&self, team: Team) -> f64 {
        if (team == Team::A) != self.swapped {
            1.0
        } else {
            -1.0
        }
    }

    fn orient(&self, team: Team, v: Vec3) -> Vec3 {
        if self.sign(team) > 0.0 {
            v
        } else {
            v.rotated_half_turn()
        }
    }

    fn kickoff(&mut self, kicker: Team) {
        let f = &self.cfg.formation;
        let jitter = self.settings().kickoff_jitter;
        let max_speed = self.settings().player_max_speed;
        self.bodies.clear();
        for team in [Team::A, Team::B] {
            for slot in f.slots() {
                let (jx, jy) = if jitter > 0.0 {
                    (self.rng.gen_range(-jitter..=jitter), self.rng.gen_range(-jitter..=jitter))
                } else {
                    (0.0, 0.0)
                };
                let mut p = Vec3::ground(slot.home_position.x.min(-1.0) + jx, slot.home_position.y + jy);
                p.x = p.x.min(-0.5);
                if team == kicker && slot.id == kicker_id(f) {
                    p = Vec3::ground(-0.5, 0.0);
                } else if team != kicker && p.ground_norm() < CENTER_CIRCLE {
                    p = p.ground_unit().unwrap_or(Vec3::ground(-1.0, 0.0)) * (CENTER_CIRCLE + 0.1);
                }
                self.bodies.push(Body {
                    team,
                    id: slot.id,
                    position: self.orient(team, p),
                    velocity: Vec3::ZERO,
                    facing: self.orient(team, Vec3::ground(1.0, 0.0)),
                    pan: 0.0,
                    tilt: 0.0,
                    max_speed,
                });
            }
        }
        self.ball = BallState::at_rest(Vec3::ZERO);
        self.mode = Mode::Kickoff(kicker);
        self.mode_age = 0;
    }

    fn body(&self, team: Team, id: u8) -> &Body {
        &self.bodies[team.index() * 11 + usize::from(id) - 1]
    }

    /// The match seen by `team`: it is `Ours` and attacks +x.
    pub fn view(&self, team: Team) -> WorldSnapshot {
        let players = [team, team.other()]
            .iter()
            .flat_map(|&t| (1..=11).map(move |id| (t, id)))
            .map(|(t, id)| {
                let b = self.body(t, id);
                let facing = self.orient(team, b.facing);
                PlayerState {
                    id,
                    side: if t == team { Side::Ours } else { Side::Theirs },
                    position: self.orient(team, b.position),
                    velocity: self.orient(team, b.velocity),
                    body_facing: facing.y.atan2(facing.x),
                    pan: b.pan,
                    tilt: b.tilt,
                    max_speed: b.max_speed,
                }
            })
            .collect();
        let play_mode = match self.mode {
            Mode::PlayOn => PlayMode::PlayOn,
            Mode::Kickoff(t) if t == team => PlayMode::KickoffOurs,
            Mode::Kickoff(_) => PlayMode::KickoffTheirs,
            Mode::Restart(_) => PlayMode::OutOfBounds,
        };
        let score = if team == Team::A { self.score } else { (self.score.1, self.score.0) };
        WorldSnapshot {
            cycle: self.cycle,
            ball: BallState {
                position: self.orient(team, self.ball.position),
                velocity: self.orient(team, self.ball.velocity),
            },
            players,
            score,
            play_mode,
        }
    }

    pub fn record(&self) -> StateRecord {
        StateRecord {
            cycle: self.cycle,
            ball: self.ball,
            players: self.bodies.clone(),
            score: self.score,
            mode: self.mode,
        }
    }

    pub fn is_over(&self) -> bool {
        self.cycle >= 2 * self.settings().half_length
    }

    /// Decisions of all 22 agents for the current cycle, team A first.
    pub fn decide_all(&mut self) -> Vec<AgentDecision> {
        let cfg = self.cfg;
        let env = Env::from_config(cfg);
        let mut out = Vec::with_capacity(22);
        let heard = std::mem::take(&mut self.pending_say);
        for team in [Team::A, Team::B] {
            let view = self.view(team);
            for id in 1..=11u8 {
                let me = self.body(team, id).position;
                let inbox: Vec<Heard> = heard
                    .iter()
                    .filter(|(t, s, _)| !(*t == team && *s == id))
                    .filter(|(t, s, _)| self.body(*t, *s).position.ground_distance(me) <= cfg.params.say_radius)
                    .map(|(t, s, text)| Heard {
                        side: if *t == team { Side::Ours } else { Side::Theirs },
                        sender: *s,
                        text: text.clone(),
                    })
                    .collect();
                self.memory[team.index()][usize::from(id) - 1].absorb(Side::Ours, &inbox, self.cycle);
            }
            let policy = if team == Team::A { cfg.sim.team_a } else { cfg.sim.team_b };
            match policy {
                Policy::FuzzyCrisp => {
                    let ctx = TeamContext::new(&view, env, &cfg.fuzzy).expect("strategy system covers the field");
                    for id in 1..=11u8 {
                        let memory = &self.memory[team.index()][usize::from(id) - 1];
                        let inputs =
                            DecideInputs { env, formation: &cfg.formation, fuzzy: &cfg.fuzzy, context: &ctx, memory };
                        let decision = decide(id, &view, cfg.sim.cycle_dt, &inputs);
                        out.push(AgentDecision { team, id, decision });
                    }
                }
                Policy::Baseline => {
                    for id in 1..=11u8 {
                        let decision = baseline_decide(id, &view, env, &cfg.formation);
                        out.push(AgentDecision { team, id, decision });
                    }
                }
            }
        }
        for d in &out {
            self.memory[d.team.index()][usize::from(d.id) - 1].record(&d.decision, self.cycle);
        }
        out
    }

    fn own_penalty_area(&self, team: Team, p: Vec3) -> bool {
        let local = self.orient(team, p);
        local.x <= -self.cfg.field.half_length() + PENALTY_AREA.0 && local.y.abs() <= PENALTY_AREA.1
    }

    fn restart_team(&self) -> Option<Team> {
        match self.mode {
            Mode::Kickoff(t) | Mode::Restart(t) => Some(t),
            Mode::PlayOn => None,
        }
    }

    /// Applies one cycle of decisions and advances the clock. Returns the
    /// events of the cycle in a fixed order.
    pub fn step(&mut self, decisions: &[AgentDecision]) -> Vec<Event> {
        let cfg = self.cfg;
        let p = &cfg.params;
        let dt = cfg.sim.cycle_dt;
        let mut events = Vec::new();
        let views = [self.view(Team::A), self.view(Team::B)];

        // Validation: invalid commands become Noop.
        let mut commands: Vec<(Team, u8, Command, Command, Option<String>)> = Vec::with_capacity(22);
        for d in decisions {
            let view = &views[d.team.index()];
            let me = view.player(Side::Ours, d.id).expect("agent present");
            let role = cfg.formation.role(d.id);
            let mut check = |c: &Command| -> Command {
                let res = match c {
                    Command::Catch if role != Some(Role::GoalKeeper) => Err("catch by a field player".to_string()),
                    _ => validate_command(c, me, &view.ball, p).map_err(|e| e.to_string()),
                };
                match res {
                    Ok(()) => c.clone(),
                    Err(reason) => {
                        events.push(Event::Violation { team: d.team, id: d.id, reason });
                        Command::Noop
                    }
                }
            };
            let main = check(&d.decision.command);
            let pan = check(&d.decision.pan_tilt);
            let say = d.decision.say.clone().filter(|s| {
                matches!(check(&Command::Say { message: s.clone() }), Command::Say { .. })
            });
            commands.push((d.team, d.id, main, pan, say));
        }

        // Kicks: the one nearest the ball wins, then team A, then lower id.
        let restart = self.restart_team();
        let kicker = commands
            .iter()
            .filter_map(|(t, id, c, _, _)| match c {
                Command::Kick { angle, force } if restart.map_or(true, |r| r == *t) => {
                    let b = self.body(*t, *id);
                    Some((b.position.ground_distance(self.ball.position), *t, *id, *angle, *force))
                }
                _ => None,
            })
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

        let previous_ball = self.ball;
        if let Some((_, team, id, angle, force)) = kicker {
            let b = self.body(team, id);
            let dir = rotate(b.facing, angle);
            self.ball.velocity = dir * p.kick_speed(force);
            self.ball = predict(&self.ball, dt, &cfg.drag);
            self.last_touch = Some(team);
            events.push(Event::Kick { team, id });
            if restart == Some(team) {
                self.mode = Mode::PlayOn;
            }
        } else {
            let next = predict(&self.ball, dt, &cfg.drag);
            let catcher = commands.iter().find(|(t, id, c, _, _)| {
                *c == Command::Catch && {
                    let b = self.body(*t, *id);
                    restart.map_or(true, |r| r == *t)
                        && self.ball.position.z <= p.reachable_height
                        && self.own_penalty_area(*t, self.ball.position)
                        && point_segment_distance(b.position, self.ball.position, next.position) <= p.catch_radius
                }
            });
            if let Some((team, id, ..)) = catcher {
                let at = self.body(*team, *id).position;
                self.ball = BallState::at_rest(at.flat());
                self.last_touch = Some(*team);
                events.push(Event::Catch { team: *team, id: *id });
            } else {
                self.ball = next;
            }
        }

        // Players.
        for (team, id, main, pan, _) in &commands {
            let idx = team.index() * 11 + usize::from(*id) - 1;
            let sign = self.sign(*team);
            let body = &mut self.bodies[idx];
            if let Command::PanTilt { dpan, dtilt } = pan {
                body.pan = (body.pan + dpan).clamp(-p.max_pan_angle, p.max_pan_angle);
                body.tilt += dtilt;
            }
            let start = body.position;
            if let Command::Drive { force } = main {
                let force = if sign > 0.0 { *force } else { force.rotated_half_turn() };
                let want = force.flat();
                let speed = want.norm().min(body.max_speed);
                if let Some(dir) = want.ground_unit().filter(|_| speed > 1e-9) {
                    let delta = signed_angle(body.facing, dir);
                    let budget = p.turn_rate * dt;
                    if delta.abs() <= budget {
                        body.facing = dir;
                        let run = dt - delta.abs() / p.turn_rate;
                        body.position = body.position + dir * (speed * run);
                    } else {
                        let f = rotate(body.facing, budget.copysign(delta));
                        body.facing = f.ground_unit().unwrap_or(f);
                    }
                }
            }
            let (hx, hy) = (cfg.field.half_length() + FIELD_MARGIN, cfg.field.half_width() + FIELD_MARGIN);
            body.position.x = body.position.x.clamp(-hx, hx);
            body.position.y = body.position.y.clamp(-hy, hy);
            body.velocity = (body.position - start) * (1.0 / dt);
        }
        self.enforce_restart_spacing();

        self.pending_say = commands.iter().filter_map(|(t, id, _, _, s)| Some((*t, *id, s.clone()?))).collect();

        self.cycle += 1;
        self.mode_age += 1;
        self.referee(&previous_ball, &mut events);
        if matches!(self.mode, Mode::Kickoff(_) | Mode::Restart(_)) && self.mode_age >= RESTART_TIMEOUT {
            self.mode = Mode::PlayOn;
            events.push(Event::RestartTimeout);
        }
        if self.cycle == self.settings().half_length {
            self.kickoff(Team::B);
            events.push(Event::HalfTime);
        }
        if self.is_over() {
            events.push(Event::FullTime);
        }
        events
    }

    /// Keeps players where the current restart allows them to stand.
    fn enforce_restart_spacing(&mut self) {
        let mode = self.mode;
        let ball = self.ball.position.flat();
        let signs = [self.sign(Team::A), self.sign(Team::B)];
        let keeper = self.cfg.formation.goalkeeper();
        let hl = self.cfg.field.half_length();
        // A keeper inside its own penalty area may hold its ground.
        let in_box = |p: Vec3, s: f64| p.x * s <= -hl + PENALTY_AREA.0 && p.y.abs() <= PENALTY_AREA.1;
        for b in &mut self.bodies {
            let s = signs[b.team.index()];
            match mode {
                Mode::Kickoff(kicker) => {
                    // Own half only; the defending side also outside the centre circle.
                    if b.position.x * s > 0.0 {
                        b.position.x = -0.0 * s;
                    }
                    if b.team != kicker && b.position.ground_norm() < CENTER_CIRCLE {
                        let u = b.position.ground_unit().unwrap_or(Vec3::ground(-s, 0.0));
                        b.position = u * CENTER_CIRCLE;
                        if b.position.x * s > 0.0 {
                            b.position = Vec3::ground(-s * CENTER_CIRCLE, 0.0);
                        }
                    }
                }
                Mode::Restart(taker) if b.team != taker && !(b.id == keeper && in_box(b.position, s)) => {
                    let off = b.position - ball;
                    if off.ground_norm() < RESTART_DISTANCE {
                        let u = off.ground_unit().unwrap_or(Vec3::ground(-s, 0.0));
                        b.position = ball + u * RESTART_DISTANCE;
                    }
                }
                _ => {}
            }
        }
    }

    fn referee(&mut self, previous: &BallState, events: &mut Vec<Event>) {
        let f = &self.cfg.field;
        let (hl, hw) = (f.half_length(), f.half_width());
        let pos = self.ball.position;
        if pos.x.abs() > hl {
            let line = hl.copysign(pos.x);
            let span = pos.x - previous.position.x;
            let t = if span != 0.0 { ((line - previous.position.x) / span).clamp(0.0, 1.0) } else { 1.0 };
            let y = previous.position.y + t * (pos.y - previous.position.y);
            let z = previous.position.z + t * (pos.z - previous.position.z);
            if y.abs() < f.goal_width / 2.0 && z < f.goal_height {
                let scorer = if self.sign(Team::A) * pos.x > 0.0 { Team::A } else { Team::B };
                match scorer {
                    Team::A => self.score.0 += 1,
                    Team::B => self.score.1 += 1,
                }
                events.push(Event::Goal { team: scorer });
                self.kickoff(scorer.other());
                return;
            }
        }
        if pos.x.abs() > hl || pos.y.abs() > hw {
            let inset = 0.1;
            let at = Vec3::ground(pos.x.clamp(-hl + inset, hl - inset), pos.y.clamp(-hw + inset, hw - inset));
            let taker = self.last_touch.map_or(Team::A, Team::other);
            self.ball = BallState::at_rest(at);
            self.mode = Mode::Restart(taker);
            self.mode_age = 0;
            events.push(Event::OutOfBounds { restart: taker, at });
        }
    }
}

/// Shirt number that takes kickoffs: 10 when present, else the first attacker.
fn kicker_id(f: &crate::team::Formation) -> u8 {
    if f.slot(10).is_some() {
        return 10;
    }
    f.slots().iter().find(|s| s.role == Role::Attacker).map_or(11, |s| s.id)
}
