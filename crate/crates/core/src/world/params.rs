use serde::{Deserialize, Serialize};

/// One value per pass tier, keyed `Secure` / `Normal` / `Risky` in config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerPassType<T> {
    #[serde(rename = "Secure")]
    pub secure: T,
    #[serde(rename = "Normal")]
    pub normal: T,
    #[serde(rename = "Risky")]
    pub risky: T,
}

/// Execution tolerances of a pass tier, meters. `e1` widens an opponent's
/// reach onto the ball path; `e2` is extra path length the ball must clear.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBudget {
    #[serde(rename = "E1")]
    pub e1: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
}

/// Named agent constants. Angles are radians in memory and degrees on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(rename = "MaxKickAngle", with = "degrees")]
    pub max_kick_angle: f64,
    #[serde(rename = "MaxKickForce")]
    pub max_kick_force: f64,
    #[serde(rename = "MaxKickDistance")]
    pub max_kick_distance: f64,
    #[serde(rename = "MaxBallControllableSpeed")]
    pub max_ball_controllable_speed: f64,
    #[serde(rename = "MarkSecureDistance")]
    pub mark_secure_distance: f64,
    #[serde(rename = "SecureDribbleAngle", with = "degrees")]
    pub secure_dribble_angle: f64,
    #[serde(rename = "SecureDribbleDistance")]
    pub secure_dribble_distance: f64,
    #[serde(rename = "MaxPanAngle", with = "degrees")]
    pub max_pan_angle: f64,
    #[serde(rename = "SecureTime")]
    pub secure_time: PerPassType<f64>,
    #[serde(rename = "PassErrorBudgets")]
    pub pass_error_budgets: PerPassType<ErrorBudget>,
    #[serde(rename = "KickableDistance")]
    pub kickable_distance: f64,
    #[serde(rename = "GoalQuantization")]
    pub goal_quantization_n: u32,

    /// Ball launch speed per unit kick force, (m/s) per unit.
    #[serde(rename = "KickSpeedPerForce")]
    pub kick_speed_per_force: f64,
    #[serde(rename = "KickTargetTolerance")]
    pub kick_target_tolerance: f64,
    #[serde(rename = "TurnRate", with = "degrees")]
    pub turn_rate: f64,
    /// Opponents cannot play a ball higher than this.
    #[serde(rename = "ReachableHeight")]
    pub reachable_height: f64,
    /// Speed a pass should still have when it reaches the receiver.
    #[serde(rename = "PassArrivalSpeed")]
    pub pass_arrival_speed: f64,
    #[serde(rename = "SayRadius")]
    pub say_radius: f64,
    #[serde(rename = "SayBudget")]
    pub say_budget: usize,
    #[serde(rename = "CatchRadius")]
    pub catch_radius: f64,
    #[serde(rename = "MarkGoalWeight")]
    pub mark_goal_weight: f64,
    #[serde(rename = "MarkBallWeight")]
    pub mark_ball_weight: f64,
    #[serde(rename = "MarkClaimExpiry")]
    pub mark_claim_expiry: u64,
    #[serde(rename = "ClearDirections")]
    pub clear_directions: u32,
    /// Safety margin, seconds, demanded of the dribbler's arrival lead.
    #[serde(rename = "DribbleRaceMargin")]
    pub dribble_race_margin: f64,
}

impl Params {
    /// Checks every constant, naming the offending config key on failure.
    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("MaxKickAngle", self.max_kick_angle),
            ("MaxKickForce", self.max_kick_force),
            ("MaxKickDistance", self.max_kick_distance),
            ("MaxBallControllableSpeed", self.max_ball_controllable_speed),
            ("MarkSecureDistance", self.mark_secure_distance),
            ("SecureDribbleAngle", self.secure_dribble_angle),
            ("SecureDribbleDistance", self.secure_dribble_distance),
            ("MaxPanAngle", self.max_pan_angle),
            ("SecureTime.Secure", self.secure_time.secure),
            ("SecureTime.Normal", self.secure_time.normal),
            ("SecureTime.Risky", self.secure_time.risky),
            ("PassErrorBudgets.Secure.E1", self.pass_error_budgets.secure.e1),
            ("PassErrorBudgets.Secure.E2", self.pass_error_budgets.secure.e2),
            ("PassErrorBudgets.Normal.E1", self.pass_error_budgets.normal.e1),
            ("PassErrorBudgets.Normal.E2", self.pass_error_budgets.normal.e2),
            ("PassErrorBudgets.Risky.E1", self.pass_error_budgets.risky.e1),
            ("PassErrorBudgets.Risky.E2", self.pass_error_budgets.risky.e2),
            ("KickableDistance", self.kickable_distance),
            ("GoalQuantization", self.goal_quantization_n as f64),
            ("KickSpeedPerForce", self.kick_speed_per_force),
            ("KickTargetTolerance", self.kick_target_tolerance),
            ("TurnRate", self.turn_rate),
            ("ReachableHeight", self.reachable_height),
            ("PassArrivalSpeed", self.pass_arrival_speed),
            ("SayRadius", self.say_radius),
            ("SayBudget", self.say_budget as f64),
            ("CatchRadius", self.catch_radius),
            ("MarkGoalWeight", self.mark_goal_weight),
            ("MarkBallWeight", self.mark_ball_weight),
            ("MarkClaimExpiry", self.mark_claim_expiry as f64),
            ("ClearDirections", self.clear_directions as f64),
            ("DribbleRaceMargin", self.dribble_race_margin),
        ];
        for (key, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{key} must be finite and strictly positive, got {v}"));
            }
        }
        let t = &self.secure_time;
        if !(t.secure >= t.normal && t.normal >= t.risky) {
            return Err("SecureTime must satisfy Secure >= Normal >= Risky".into());
        }
        let b = &self.pass_error_budgets;
        for (key, hi, lo) in [
            ("PassErrorBudgets.E1", b.secure.e1, b.normal.e1),
            ("PassErrorBudgets.E1", b.normal.e1, b.risky.e1),
            ("PassErrorBudgets.E2", b.secure.e2, b.normal.e2),
            ("PassErrorBudgets.E2", b.normal.e2, b.risky.e2),
        ] {
            if hi < lo {
                return Err(format!("{key} must satisfy Secure >= Normal >= Risky"));
            }
        }
        Ok(())
    }

    /// Launch speed a kick of `force` gives the ball.
    pub fn kick_speed(&self, force: f64) -> f64 {
        self.kick_speed_per_force * force
    }

    pub fn max_kick_speed(&self) -> f64 {
        self.kick_speed(self.max_kick_force)
    }
}

pub(crate) mod degrees {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rad: &f64, s: S) -> Result<S::Ok, S::Error> {
        // Trim the conversion noise so 30 comes back out as 30.
        let deg = rad.to_degrees();
        let rounded = (deg * 1e9).round() / 1e9;
        s.serialize_f64(if rounded.to_radians() == *rad { rounded } else { deg })
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        f64::deserialize(d).map(f64::to_radians)
    }
}
