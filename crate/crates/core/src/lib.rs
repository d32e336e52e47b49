//! Fuzzy-crisp decision making for simulated soccer agents.
//!
//! The crate is layered bottom-up:
//!
//! * [`world`] holds geometry, the pitch and the state types.
//! * [`ball`] predicts ball motion in closed form and times players.
//! * [`fuzzy`] is a small Mamdani engine.
//! * [`skills`] turns an intent into one basic command per cycle.
//! * [`dm`] answers "can this skill be performed now?" for a single agent.
//! * [`team`] holds the formation, the strategy layer and the per-agent action cascade.
//! * [`sim`] is a deterministic 11v11 simulator with a referee and a batch harness.
//! * [`replay`] renders logged matches as SVG frames.
//!
//! ```
//! use fieldmind::config::Config;
//! use fieldmind::world::{BallState, Vec3};
//! use fieldmind::ball::predict;
//!
//! let cfg = Config::builtin();
//! let ball = BallState { position: Vec3::ZERO, velocity: Vec3::ground(5.0, 0.0) };
//! let later = predict(&ball, 60.0, &cfg.drag);
//! assert!((later.position.x - 12.5).abs() < 1e-6);
//! ```

pub mod audit;
pub mod ball;
pub mod config;
pub mod dm;
pub mod fuzzy;
pub mod replay;
pub mod sim;
pub mod skills;
pub mod team;
pub mod world;
