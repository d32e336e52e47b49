use serde::{Deserialize, Serialize};

use super::{Formation, Ownership, Role};
use crate::fuzzy::{names, FuzzyError, FuzzySystem};
use crate::world::{clamp_to_field, FieldSpec, Vec3, WorldSnapshot};

/// Team-wide attitude, from most defensive to most offensive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StrategyLabel {
    Danger,
    Careful,
    Attack,
    GoodToGoal,
}

impl StrategyLabel {
    pub fn from_label(s: &str) -> Option<Self> {
        Some(match s {
            "Danger" => Self::Danger,
            "Careful" => Self::Careful,
            "Attack" => Self::Attack,
            "GoodToGoal" => Self::GoodToGoal,
            _ => return None,
        })
    }

    /// One step more defensive, saturating at `Danger`.
    pub fn more_defensive(self) -> Self {
        match self {
            Self::GoodToGoal => Self::Attack,
            Self::Attack => Self::Careful,
            _ => Self::Danger,
        }
    }

    pub fn is_defensive(self) -> bool {
        matches!(self, Self::Danger | Self::Careful)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub label: StrategyLabel,
    /// How far forward the outfield shifts, in [0, 1].
    pub push: f64,
}

/// Strategy for the current ball position. When the opponents own the ball
/// the label moves one step toward defence; the push factor is unchanged.
pub fn select_strategy(
    world: &WorldSnapshot,
    ownership: Ownership,
    field: &FieldSpec,
    strategy_fuzzy: &FuzzySystem,
) -> Result<Strategy, FuzzyError> {
    let x = field.normalized_x(world.ball.position.x);
    let input = [(names::STRATEGY_BALL, x)];
    let (label, _) = strategy_fuzzy.infer_label(&input)?;
    let label = StrategyLabel::from_label(label)
        .ok_or_else(|| FuzzyError::Invalid(format!("unknown strategy label `{label}`")))?;
    let (lo, hi) = strategy_fuzzy.output().universe;
    let push = ((strategy_fuzzy.defuzzify(&input)? - lo) / (hi - lo)).clamp(0.0, 1.0);
    let label = if ownership == Ownership::Theirs { label.more_defensive() } else { label };
    Ok(Strategy { label, push })
}

/// Distance the goalkeeper keeps from the centre of our goal line.
pub const KEEPER_ARC_RADIUS: f64 = 1.5;

/// Where player `id` should stand when it has nothing better to do.
///
/// Outfield players slide from home toward the front edge of their area as
/// the push factor grows: `x = home.x + push · (x_max − home.x)`. The
/// goalkeeper stays on a small arc in front of goal, facing the ball.
///
/// # Panics
/// If `id` is not in the formation.
pub fn strategic_position(
    id: u8,
    formation: &Formation,
    strategy: &Strategy,
    world: &WorldSnapshot,
    field: &FieldSpec,
) -> Vec3 {
    let slot = formation.slot(id).expect("agent id in formation");
    let area = slot.strategic_area;
    let home = slot.home_position;
    let target = if slot.role == Role::GoalKeeper {
        let goal = field.our_goal();
        let dir = (world.ball.position - goal).ground_unit().unwrap_or(Vec3::ground(1.0, 0.0));
        // Never step behind the goal line.
        let dir = if dir.x < 0.2 { Vec3::ground(0.2, dir.y.signum() * (1.0f64 - 0.04).sqrt()) } else { dir };
        goal + dir * KEEPER_ARC_RADIUS
    } else {
        Vec3::ground(home.x + strategy.push * (area.x_max - home.x), home.y)
    };
    clamp_to_field(area.clamp(target), field)
}
