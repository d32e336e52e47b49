use serde::{Deserialize, Serialize};

/// Which decision procedure drives a team.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Policy {
    FuzzyCrisp,
    Baseline,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSettings {
    /// Seconds per cycle.
    pub cycle_dt: f64,
    /// Cycles per half.
    pub half_length: u64,
    pub seed: u64,
    /// Team A kicks off and attacks +x in world coordinates.
    pub team_a: Policy,
    pub team_b: Policy,
    pub player_max_speed: f64,
    /// Half-width, meters, of the uniform kickoff placement jitter.
    pub kickoff_jitter: f64,
}

impl SimSettings {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.cycle_dt > 0.0 && self.cycle_dt.is_finite()) {
            return Err("sim.cycle_dt must be positive".into());
        }
        if self.half_length == 0 {
            return Err("sim.half_length must be positive".into());
        }
        if !(self.player_max_speed > 0.0 && self.player_max_speed.is_finite()) {
            return Err("sim.player_max_speed must be positive".into());
        }
        if !(self.kickoff_jitter >= 0.0 && self.kickoff_jitter.is_finite()) {
            return Err("sim.kickoff_jitter must be non-negative".into());
        }
        Ok(())
    }
}
