//! Closed-form ball trajectory prediction and the interception-time solvers
//! the decision makers are built on.
//!
//! Horizontal motion is linear drag, `v(t) = v0·e^(−kt)`, so a ball launched
//! at speed `s` rolls at most `s/k` meters and its speed after covering `d`
//! meters is exactly `s − k·d`. Vertical motion feels the same drag plus
//! gravity and bounces off the ground with a restitution coefficient.

use serde::{Deserialize, Serialize};

use crate::world::{bearing_to, BallState, Params, PlayerState, Vec3};

/// Post-bounce vertical speed below which the ball is considered rolling.
pub const SETTLE_SPEED: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DragModel {
    /// Linear drag coefficient, 1/s.
    pub k: f64,
    /// Gravity, m/s².
    pub g: f64,
    /// Ground bounce restitution, in [0, 1).
    pub restitution: f64,
}

impl Default for DragModel {
    fn default() -> Self {
        crate::config::Config::builtin().drag
    }
}

impl DragModel {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err("drag.k must be positive".into());
        }
        if !(self.g > 0.0 && self.g.is_finite()) {
            return Err("drag.g must be positive".into());
        }
        if !(0.0..1.0).contains(&self.restitution) {
            return Err("drag.restitution must lie in [0, 1)".into());
        }
        Ok(())
    }

    /// Distance a ground ball launched at `speed` covers in `t` seconds.
    pub fn roll_distance(&self, speed: f64, t: f64) -> f64 {
        speed * (-(-self.k * t).exp_m1()) / self.k
    }

    /// Total distance before a ground ball launched at `speed` stops.
    pub fn roll_range(&self, speed: f64) -> f64 {
        speed / self.k
    }

    /// Time for a ground ball launched at `speed` to cover `d` meters, or
    /// `None` when it stops short.
    pub fn roll_time(&self, speed: f64, d: f64) -> Option<f64> {
        if d <= 0.0 {
            return Some(0.0);
        }
        let frac = self.k * d / speed;
        (frac < 1.0).then(|| -(-frac).ln_1p() / self.k)
    }

    /// Launch speed that leaves a ground ball with `arrival` speed after `d` meters.
    pub fn launch_speed_for(&self, d: f64, arrival: f64) -> f64 {
        arrival + self.k * d.max(0.0)
    }

    fn vertical_at(&self, z0: f64, w0: f64, t: f64) -> (f64, f64) {
        let gk = self.g / self.k;
        let decay = (-self.k * t).exp();
        let w = (w0 + gk) * decay - gk;
        let z = z0 + (w0 + gk) * (-(-self.k * t).exp_m1()) / self.k - gk * t;
        (z, w)
    }

    /// First positive time at which a ball at height `z0 ≥ 0` moving
    /// vertically at `w0` returns to the ground.
    fn landing_time(&self, z0: f64, w0: f64) -> f64 {
        let gk = self.g / self.k;
        // Start of the bracket: apex when rising, now when already falling.
        let mut lo = if w0 > 0.0 { ((w0 + gk) / gk).ln() / self.k } else { 0.0 };
        let mut hi = lo.max(1e-3);
        while self.vertical_at(z0, w0, hi).0 > 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.vertical_at(z0, w0, mid).0 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

/// Ball state `t` seconds from now under `model`.
pub fn predict(ball: &BallState, t: f64, model: &DragModel) -> BallState {
    debug_assert!(t >= 0.0);
    let p0 = ball.position;
    let v0 = ball.velocity;
    let travelled = -(-model.k * t).exp_m1() / model.k;
    let decay = (-model.k * t).exp();

    let (z, w) = vertical(p0.z, v0.z, t, model);
    BallState {
        position: Vec3::new(p0.x + v0.x * travelled, p0.y + v0.y * travelled, z),
        velocity: Vec3::new(v0.x * decay, v0.y * decay, w),
    }
}

fn vertical(mut z: f64, mut w: f64, t: f64, model: &DragModel) -> (f64, f64) {
    let mut remaining = t;
    loop {
        if z <= 0.0 && w <= 0.0 {
            // On the ground: bounce if arriving, otherwise roll.
            let up = -w * model.restitution;
            if up < SETTLE_SPEED {
                return (0.0, 0.0);
            }
            z = 0.0;
            w = up;
        }
        let land = model.landing_time(z, w);
        if land >= remaining {
            let (zt, wt) = model.vertical_at(z, w, remaining);
            return (zt.max(0.0), wt);
        }
        let (_, w_impact) = model.vertical_at(z, w, land);
        remaining -= land;
        z = 0.0;
        w = w_impact.min(0.0);
    }
}

/// Seconds until the ball's ground speed first drops to `v_target`.
pub fn time_to_speed(ball: &BallState, v_target: f64, model: &DragModel) -> f64 {
    debug_assert!(v_target > 0.0);
    let s = ball.velocity.ground_norm();
    if s <= v_target {
        0.0
    } else {
        (s / v_target).ln() / model.k
    }
}

/// Where the ball will be once it is slow enough to be controlled.
pub fn controllable_rest_point(ball: &BallState, params: &Params, model: &DragModel) -> Vec3 {
    let t = time_to_speed(ball, params.max_ball_controllable_speed, model);
    predict(ball, t, model).position
}

/// Turn-then-run time for a player to stand on `target`.
pub fn player_time_to_point(p: &PlayerState, target: Vec3, turn_rate: f64) -> f64 {
    player_time_to_reach(p, target, 0.0, turn_rate)
}

/// Turn-then-run time for a player to get within `reach` of `target`.
/// Zero when already within reach: no turn is needed to play a ball at one's feet.
pub fn player_time_to_reach(p: &PlayerState, target: Vec3, reach: f64, turn_rate: f64) -> f64 {
    let dist = p.position.ground_distance(target);
    if dist <= reach.max(1e-9) {
        return 0.0;
    }
    let turn = bearing_to(p.position, p.body_facing, target).map_or(0.0, f64::abs) / turn_rate;
    turn + (dist - reach) / p.max_speed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::Side;
    use std::f64::consts::PI;

    fn model() -> DragModel {
        DragModel { k: 0.4, g: 9.81, restitution: 0.4 }
    }

    fn rolling(v: Vec3) -> BallState {
        BallState { position: Vec3::ZERO, velocity: v }
    }

    #[test]
    fn resting_ball_stays() {
        let b = BallState::at_rest(Vec3::ground(3.0, -2.0));
        assert_eq!(predict(&b, 7.5, &model()).position, b.position);
    }

    #[test]
    fn predict_zero_is_identity() {
        let b = BallState { position: Vec3::new(1.0, 2.0, 0.7), velocity: Vec3::new(3.0, -1.0, 2.0) };
        let p = predict(&b, 0.0, &model());
        assert_eq!(p.position, b.position);
        assert_eq!(p.velocity, b.velocity);
    }

    #[test]
    fn long_roll_tends_to_v_over_k() {
        let p = predict(&rolling(Vec3::ground(5.0, 0.0)), 200.0, &model());
        assert!((p.position.x - 12.5).abs() < 1e-9);
    }

    #[test]
    fn roll_is_mirror_symmetric() {
        let a = predict(&rolling(Vec3::ground(5.0, 0.0)), 2.0, &model());
        let b = predict(&rolling(Vec3::ground(-5.0, 0.0)), 2.0, &model());
        assert_eq!(a.position.x, -b.position.x);
    }

    #[test]
    fn time_to_speed_cases() {
        let m = model();
        assert_eq!(time_to_speed(&rolling(Vec3::ground(0.2, 0.0)), 0.3, &m), 0.0);
        let t = time_to_speed(&rolling(Vec3::ground(5.0, 0.0)), 0.3, &m);
        assert!((t - (5.0f64 / 0.3).ln() / 0.4).abs() < 1e-12);
        assert!((t - 7.033_7).abs() < 1e-3);
        let fast = DragModel { k: 0.8, ..m };
        let t2 = time_to_speed(&rolling(Vec3::ground(5.0, 0.0)), 0.3, &fast);
        assert!((t2 - t / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rest_point_closed_form() {
        let params = Params { max_ball_controllable_speed: 0.3, ..Params::default() };
        let p = controllable_rest_point(&rolling(Vec3::ground(5.0, 0.0)), &params, &model());
        assert!((p.x - 11.75).abs() < 1e-9, "{}", p.x);
        let still = BallState::at_rest(Vec3::ground(4.0, 4.0));
        assert_eq!(controllable_rest_point(&still, &params, &model()), still.position);
    }

    #[test]
    fn rest_point_ignores_vertical_sign() {
        let params = Params { max_ball_controllable_speed: 0.3, ..Params::default() };
        let up = BallState { position: Vec3::new(0.0, 0.0, 0.5), velocity: Vec3::new(4.0, 1.0, 3.0) };
        let down = BallState { velocity: Vec3::new(4.0, 1.0, -3.0), ..up };
        let a = controllable_rest_point(&up, &params, &model());
        let b = controllable_rest_point(&down, &params, &model());
        assert_eq!((a.x, a.y), (b.x, b.y));
    }

    #[test]
    fn roll_helpers_agree() {
        let m = model();
        let t = m.roll_time(10.0, 15.0).unwrap();
        assert!((m.roll_distance(10.0, t) - 15.0).abs() < 1e-9);
        assert!(m.roll_time(10.0, 25.0).is_none());
        let s = m.launch_speed_for(15.0, 2.0);
        let state = predict(&rolling(Vec3::ground(s, 0.0)), m.roll_time(s, 15.0).unwrap(), &m);
        assert!((state.velocity.x - 2.0).abs() < 1e-9);
    }

    #[test]
    fn bounce_lands_and_settles() {
        let b = BallState { position: Vec3::new(0.0, 0.0, 2.0), velocity: Vec3::ZERO };
        let p = predict(&b, 30.0, &model());
        assert_eq!(p.position.z, 0.0);
        assert_eq!(p.velocity.z, 0.0);
    }

    #[test]
    fn player_time_cases() {
        let mut p = PlayerState::new(2, Side::Ours, Vec3::ZERO, 1.3, 5.0);
        assert_eq!(player_time_to_point(&p, Vec3::ZERO, 2.0 * PI), 0.0);
        p.body_facing = 0.0;
        assert!((player_time_to_point(&p, Vec3::ground(10.0, 0.0), 2.0 * PI) - 2.0).abs() < 1e-12);
        // Behind: π of turning at 2π rad/s is 0.5 s on top of the run.
        let t = player_time_to_point(&p, Vec3::ground(-10.0, 0.0), 2.0 * PI);
        assert!((t - 2.5).abs() < 1e-12);
    }

    #[test]
    fn reach_radius_short_circuits_turn() {
        let p = PlayerState::new(2, Side::Ours, Vec3::ZERO, 0.0, 5.0);
        assert_eq!(player_time_to_reach(&p, Vec3::ground(-0.5, 0.0), 0.6, 2.0 * PI), 0.0);
    }
}
