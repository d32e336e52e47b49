//! Geometry primitives, the pitch, and the state types every other module reads.

mod field;
mod params;
mod state;
mod vec3;

pub use field::{bearing_to, clamp_to_field, FieldSpec, GeometryError};
pub use params::{ErrorBudget, Params, PerPassType};
pub use state::{BallState, PlayMode, PlayerState, Side, WorldSnapshot};
pub use vec3::{wrap_angle, Vec3};

impl Default for FieldSpec {
    fn default() -> Self {
        crate::config::Config::builtin().field
    }
}

impl Default for Params {
    fn default() -> Self {
        crate::config::Config::builtin().params.clone()
    }
}
