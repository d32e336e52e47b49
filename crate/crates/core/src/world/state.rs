use serde::{Deserialize, Serialize};

use super::vec3::{wrap_angle, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Ours,
    Theirs,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Ours => Side::Theirs,
            Side::Theirs => Side::Ours,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlayerState {
    pub id: u8,
    pub side: Side,
    pub position: Vec3,
    #[serde(default)]
    pub velocity: Vec3,
    #[serde(default)]
    pub body_facing: f64,
    #[serde(default)]
    pub pan: f64,
    #[serde(default)]
    pub tilt: f64,
    pub max_speed: f64,
}

impl PlayerState {
    pub fn new(id: u8, side: Side, position: Vec3, body_facing: f64, max_speed: f64) -> Self {
        Self {
            id,
            side,
            position,
            velocity: Vec3::ZERO,
            body_facing,
            pan: 0.0,
            tilt: 0.0,
            max_speed,
        }
    }

    fn rotated_half_turn(&self) -> Self {
        Self {
            side: self.side.other(),
            position: self.position.rotated_half_turn(),
            velocity: self.velocity.rotated_half_turn(),
            body_facing: wrap_angle(self.body_facing + std::f64::consts::PI),
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallState {
    pub position: Vec3,
    #[serde(default)]
    pub velocity: Vec3,
}

impl BallState {
    pub fn at_rest(position: Vec3) -> Self {
        Self { position, velocity: Vec3::ZERO }
    }

    pub fn speed(&self) -> f64 {
        self.velocity.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlayMode {
    KickoffOurs,
    KickoffTheirs,
    PlayOn,
    GoalOurs,
    GoalTheirs,
    OutOfBounds,
}

impl PlayMode {
    fn swapped(self) -> Self {
        match self {
            PlayMode::KickoffOurs => PlayMode::KickoffTheirs,
            PlayMode::KickoffTheirs => PlayMode::KickoffOurs,
            PlayMode::GoalOurs => PlayMode::GoalTheirs,
            PlayMode::GoalTheirs => PlayMode::GoalOurs,
            m => m,
        }
    }
}

/// Ground-truth world state as seen by one team: `Ours` attacks +x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldSnapshot {
    pub cycle: u64,
    pub ball: BallState,
    pub players: Vec<PlayerState>,
    #[serde(default)]
    pub score: (u32, u32),
    #[serde(default = "default_play_mode")]
    pub play_mode: PlayMode,
}

fn default_play_mode() -> PlayMode {
    PlayMode::PlayOn
}

impl WorldSnapshot {
    pub fn player(&self, side: Side, id: u8) -> Option<&PlayerState> {
        self.players.iter().find(|p| p.side == side && p.id == id)
    }

    pub fn ours(&self) -> impl Iterator<Item = &PlayerState> {
        self.players.iter().filter(|p| p.side == Side::Ours)
    }

    pub fn theirs(&self) -> impl Iterator<Item = &PlayerState> {
        self.players.iter().filter(|p| p.side == Side::Theirs)
    }

    /// Same instant seen by the other team: half-turn about the center spot,
    /// sides, score and play mode swapped.
    pub fn mirrored(&self) -> WorldSnapshot {
        let mut players: Vec<PlayerState> =
            self.players.iter().map(PlayerState::rotated_half_turn).collect();
        players.sort_by_key(|p| (p.side, p.id));
        WorldSnapshot {
            cycle: self.cycle,
            ball: BallState {
                position: self.ball.position.rotated_half_turn(),
                velocity: self.ball.velocity.rotated_half_turn(),
            },
            players,
            score: (self.score.1, self.score.0),
            play_mode: self.play_mode.swapped(),
        }
    }

    /// Full-match invariant: eleven players a side, ids 1..=11, all finite.
    pub fn validate(&self) -> Result<(), String> {
        for side in [Side::Ours, Side::Theirs] {
            let mut ids: Vec<u8> =
                self.players.iter().filter(|p| p.side == side).map(|p| p.id).collect();
            ids.sort_unstable();
            if ids != (1..=11).collect::<Vec<u8>>() {
                return Err(format!("{side:?} must field players 1..=11, got {ids:?}"));
            }
        }
        if self.ball.position.z < 0.0 {
            return Err("ball below ground".into());
        }
        let finite = self.ball.position.is_finite()
            && self.ball.velocity.is_finite()
            && self.players.iter().all(|p| p.position.is_finite() && p.velocity.is_finite());
        if !finite {
            return Err("non-finite coordinate".into());
        }
        Ok(())
    }
}
