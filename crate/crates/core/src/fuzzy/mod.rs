//! Generic Mamdani inference. The crate instantiates it twice: the pass
//! system (ball position × receiver situation → pass type / Max Pass Error)
//! and the strategy system (ball position → strategy / push factor).

mod membership;
mod system;

pub use membership::{MembershipFn, Trapezoid};
pub use system::{FuzzyError, FuzzySystem, LinguisticVariable, Rule};

use serde::{Deserialize, Serialize};

/// Input/output names the decision layer expects.
pub mod names {
    pub const PASS_POSITION: &str = "position";
    pub const PASS_SITUATION: &str = "situation";
    pub const STRATEGY_BALL: &str = "BallPosition";
}

/// Both rule bases, as loaded from config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzySystems {
    pub pass: FuzzySystem,
    pub strategy: FuzzySystem,
}

impl Default for FuzzySystems {
    fn default() -> Self {
        crate::config::Config::builtin().fuzzy.clone()
    }
}

impl FuzzySystems {
    /// Checks that each system exposes the inputs the decision layer feeds it.
    pub fn validate(&self) -> Result<(), String> {
        let has = |s: &FuzzySystem, n: &str| s.inputs().iter().any(|v| v.name == n);
        for (sys, key, input) in [
            (&self.pass, "fuzzy.pass", names::PASS_POSITION),
            (&self.pass, "fuzzy.pass", names::PASS_SITUATION),
            (&self.strategy, "fuzzy.strategy", names::STRATEGY_BALL),
        ] {
            if !has(sys, input) {
                return Err(format!("{key}: missing input `{input}`"));
            }
        }
        for label in ["Secure", "Normal", "Risky"] {
            if self.pass.output().term_index(label).is_none() {
                return Err(format!("fuzzy.pass.output: missing term `{label}`"));
            }
        }
        for label in ["Danger", "Careful", "Attack", "GoodToGoal"] {
            if self.strategy.output().term_index(label).is_none() {
                return Err(format!("fuzzy.strategy.output: missing term `{label}`"));
            }
        }
        Ok(())
    }
}
