use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::vec3::{wrap_angle, Vec3};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("bearing is undefined when origin and target coincide in the ground plane")]
    DegenerateBearing,
}

/// Rectangular pitch. Our goal line is at `x = -length/2`, we attack +x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub length: f64,
    pub width: f64,
    pub goal_width: f64,
    pub goal_height: f64,
}

impl FieldSpec {
    pub fn half_length(&self) -> f64 {
        self.length / 2.0
    }

    pub fn half_width(&self) -> f64 {
        self.width / 2.0
    }

    /// Center of the goal we attack.
    pub fn their_goal(&self) -> Vec3 {
        Vec3::ground(self.half_length(), 0.0)
    }

    /// Center of the goal we defend.
    pub fn our_goal(&self) -> Vec3 {
        Vec3::ground(-self.half_length(), 0.0)
    }

    /// Maps field x to [0, 1], 0 being our goal line.
    pub fn normalized_x(&self, x: f64) -> f64 {
        ((x + self.half_length()) / self.length).clamp(0.0, 1.0)
    }

    pub fn contains(&self, p: Vec3) -> bool {
        p.x.abs() <= self.half_length() && p.y.abs() <= self.half_width()
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.length > 0.0) {
            return Err("length must be positive".into());
        }
        if !(self.width > 0.0) {
            return Err("width must be positive".into());
        }
        if !(self.goal_width > 0.0 && self.goal_width < self.width) {
            return Err("goal_width must lie in (0, width)".into());
        }
        if !(self.goal_height > 0.0) {
            return Err("goal_height must be positive".into());
        }
        Ok(())
    }
}

/// Signed angle from the `facing` direction to `target`, seen from `from`,
/// measured in the ground plane. Counter-clockwise is positive.
pub fn bearing_to(from: Vec3, facing: f64, target: Vec3) -> Result<f64, GeometryError> {
    let d = target - from;
    if d.x == 0.0 && d.y == 0.0 {
        return Err(GeometryError::DegenerateBearing);
    }
    Ok(wrap_angle(d.heading() - facing))
}

pub fn clamp_to_field(p: Vec3, field: &FieldSpec) -> Vec3 {
    Vec3::new(
        p.x.clamp(-field.half_length(), field.half_length()),
        p.y.clamp(-field.half_width(), field.half_width()),
        p.z,
    )
}
