//! The team layer: formation and roles, ownership, strategy, and the
//! per-agent action cascade.

mod decide;
mod formation;
mod ownership;
mod strategy;

pub use decide::{catchable, decide, AgentMemory, DecideInputs, Decision, Heard, Intent, TeamContext, PENALTY_AREA};
pub use formation::{Formation, FormationSlot, Rect, Role};
pub use ownership::{nearest_of_side, nearest_player_to_ball, team_owns_ball, Ownership};
pub use strategy::{select_strategy, strategic_position, Strategy, StrategyLabel, KEEPER_ARC_RADIUS};
