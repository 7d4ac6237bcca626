//! Phenomenological memristor device models.
//!
//! Two profiles are shipped:
//!
//! * [`DeviceModel::IdealBilevel`] — a charge-driven device whose memristance
//!   follows a logistic profile in the accumulated charge, saturating at
//!   `r_on` for large negative charge and `r_off` for large positive charge.
//! * [`DeviceModel::ExponentialSwitching`] — a voltage-driven device with a
//!   normalized internal state `w ∈ [0, 1]` that moves at a rate
//!   `k·sinh(v/v0)`, i.e. exponentially faster for voltages well above the
//!   scale `v0`, and is hard-clamped at the rails.
//!
//! Both models switch all the way to a rail under any drive bounded away from
//! zero, which is what the gate-level convergence results rely on (see
//! [`satisfies_condition_star`]).

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from device parameter validation and state updates.
#[derive(Debug, Error)]
pub enum DeviceError {
    #[error("invalid device parameters: {0}")]
    InvalidParams(&'static str),
    #[error("non-finite {0}")]
    NonFinite(&'static str),
}

/// Which switching profile a device follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceModel {
    IdealBilevel,
    ExponentialSwitching,
}

/// Device parameters. `q0` is the charge scale of the bilevel profile; `v0`
/// and `k` are the voltage scale and rate constant of the exponential one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    /// Low-resistance rail (ohm).
    pub r_on: f64,
    /// High-resistance rail (ohm).
    pub r_off: f64,
    /// Charge scale (coulomb), IdealBilevel.
    pub q0: f64,
    /// Voltage scale (volt), ExponentialSwitching.
    pub v0: f64,
    /// Rate constant (1/second), ExponentialSwitching.
    pub k: f64,
    pub model: DeviceModel,
}

impl Default for DeviceParams {
    fn default() -> Self {
        DeviceParams {
            r_on: 100.0,
            r_off: 10_000.0,
            q0: 1e-6,
            v0: 0.2,
            k: 100.0,
            model: DeviceModel::IdealBilevel,
        }
    }
}

impl DeviceParams {
    pub fn validate(&self) -> Result<(), DeviceError> {
        if !(self.r_on.is_finite() && self.r_off.is_finite() && self.r_on > 0.0) {
            return Err(DeviceError::InvalidParams("r_on must be finite and > 0"));
        }
        if self.r_off <= self.r_on {
            return Err(DeviceError::InvalidParams("requires 0 < r_on < r_off"));
        }
        if !(self.q0.is_finite() && self.q0 > 0.0) {
            return Err(DeviceError::InvalidParams("q0 must be finite and > 0"));
        }
        if !(self.v0.is_finite() && self.v0 > 0.0) {
            return Err(DeviceError::InvalidParams("v0 must be finite and > 0"));
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(DeviceError::InvalidParams("k must be finite and > 0"));
        }
        Ok(())
    }

    /// m-efficiency of these parameters, the ratio `r_off / r_on`.
    pub fn m_efficiency(&self) -> MEfficiency {
        MEfficiency::new(self.r_off / self.r_on)
    }
}

/// m-efficiency μ = r_off / r_on. Always > 1; `f64::INFINITY` is accepted and
/// recovers exact min/max in the closed-form gate outputs.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MEfficiency(f64);

impl MEfficiency {
    /// Panics if `mu` is NaN or not > 1.
    pub fn new(mu: f64) -> Self {
        assert!(mu > 1.0, "m-efficiency must be > 1, got {mu}");
        MEfficiency(mu)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// μ⁻¹; zero for infinite μ.
    pub fn inverse(self) -> f64 {
        if self.0.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }
}

impl std::fmt::Display for MEfficiency {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Orientation of a device in its circuit. A reversed device sees the negated
/// drive: flipping polarity and negating the drive gives the same trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Forward,
    Reverse,
}

impl Polarity {
    pub fn sign(self) -> f64 {
        match self {
            Polarity::Forward => 1.0,
            Polarity::Reverse => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarity::Forward => Polarity::Reverse,
            Polarity::Reverse => Polarity::Forward,
        }
    }
}

/// Internal state of one device. `q` is used by the bilevel profile, `w` by
/// the exponential one; the unused field simply stays put.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceState {
    /// Accumulated signed charge (coulomb), IdealBilevel.
    pub q: f64,
    /// Normalized internal state in [0, 1], ExponentialSwitching.
    pub w: f64,
    pub polarity: Polarity,
}

impl DeviceState {
    /// Fresh device at the midpoint of its resistance range.
    pub fn new(polarity: Polarity) -> Self {
        DeviceState {
            q: 0.0,
            w: 0.5,
            polarity,
        }
    }

    /// Instantaneous memristance (ohm). Total on valid states; always within
    /// `[r_on, r_off]` and monotone nondecreasing in `q` for the bilevel
    /// profile.
    pub fn memristance(&self, params: &DeviceParams) -> f64 {
        match params.model {
            DeviceModel::IdealBilevel => {
                params.r_on + (params.r_off - params.r_on) * sigmoid(self.q / params.q0)
            }
            DeviceModel::ExponentialSwitching => {
                params.r_off + (params.r_on - params.r_off) * self.w
            }
        }
    }

    /// Advance the state by one explicit step of length `dt`.
    ///
    /// IdealBilevel integrates the through current (`q += ±i·dt`);
    /// ExponentialSwitching integrates `dw/dt = ±k·sinh(v/v0)` and clamps `w`
    /// to `[0, 1]`.
    pub fn step(
        &self,
        through_current: f64,
        across_voltage: f64,
        dt: f64,
        params: &DeviceParams,
    ) -> Result<DeviceState, DeviceError> {
        if !through_current.is_finite() {
            return Err(DeviceError::NonFinite("through_current"));
        }
        if !across_voltage.is_finite() {
            return Err(DeviceError::NonFinite("across_voltage"));
        }
        if !dt.is_finite() || dt < 0.0 {
            return Err(DeviceError::NonFinite("dt (must be finite and >= 0)"));
        }
        let mut next = *self;
        match params.model {
            DeviceModel::IdealBilevel => {
                next.q += self.polarity.sign() * through_current * dt;
            }
            DeviceModel::ExponentialSwitching => {
                let rate = params.k * (across_voltage / params.v0).sinh();
                next.w = (self.w + self.polarity.sign() * rate * dt).clamp(0.0, 1.0);
            }
        }
        Ok(next)
    }
}

/// Numerically stable logistic function.
fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// True if `m` is within 1% relative distance of either rail.
fn near_rail(m: f64, params: &DeviceParams) -> bool {
    m <= params.r_on * 1.01 || m >= params.r_off * 0.99
}

/// A horizon after which a fresh device under the given constant drive is
/// guaranteed to sit at a rail, with ample margin. The drive is a current for
/// IdealBilevel and a voltage for ExponentialSwitching.
pub fn condition_star_horizon(params: &DeviceParams, drive_magnitude: f64) -> f64 {
    match params.model {
        DeviceModel::IdealBilevel => 20.0 * params.q0 / drive_magnitude,
        DeviceModel::ExponentialSwitching => {
            2.5 / (params.k * (drive_magnitude / params.v0).sinh())
        }
    }
}

/// Simulates a fresh device under a constant drive of the given magnitude for
/// at most `horizon` seconds and reports whether the memristance reached
/// within 1% relative distance of a rail. A zero drive never switches.
pub fn satisfies_condition_star(
    params: &DeviceParams,
    drive_magnitude: f64,
    horizon: f64,
) -> bool {
    if !(drive_magnitude > 0.0) || !(horizon > 0.0) {
        return false;
    }
    // The drive is constant, so the forward-Euler trajectory is exact for
    // both models; the step count only sets the granularity of the rail check.
    const STEPS: usize = 4000;
    let dt = horizon / STEPS as f64;
    let mut state = DeviceState::new(Polarity::Forward);
    for _ in 0..STEPS {
        if near_rail(state.memristance(params), params) {
            return true;
        }
        state = state
            .step(drive_magnitude, drive_magnitude, dt, params)
            .expect("finite constant drive");
    }
    near_rail(state.memristance(params), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exp_params() -> DeviceParams {
        DeviceParams {
            model: DeviceModel::ExponentialSwitching,
            ..DeviceParams::default()
        }
    }

    #[test]
    fn midpoint_memristance_at_zero_charge() {
        let p = DeviceParams::default();
        let s = DeviceState::new(Polarity::Forward);
        assert_eq!(s.memristance(&p), 5050.0);
    }

    #[test]
    fn memristance_matches_logistic_profile() {
        // q = 2e-6 with q0 = 1e-6: 100 + 9900 * sigmoid(2)
        let p = DeviceParams::default();
        let s = DeviceState {
            q: 2e-6,
            ..DeviceState::new(Polarity::Forward)
        };
        assert!((s.memristance(&p) - 8819.891071981036).abs() < 1e-9);
    }

    #[test]
    fn memristance_saturates_at_rails() {
        let p = DeviceParams::default();
        let hi = DeviceState {
            q: 1.0,
            ..DeviceState::new(Polarity::Forward)
        };
        let lo = DeviceState {
            q: -1.0,
            ..DeviceState::new(Polarity::Forward)
        };
        assert_eq!(hi.memristance(&p), p.r_off);
        assert_eq!(lo.memristance(&p), p.r_on);
    }

    #[test]
    fn zero_drive_leaves_state_unchanged() {
        let p = DeviceParams::default();
        let s = DeviceState::new(Polarity::Forward);
        let s2 = s.step(0.0, 0.0, 123.0, &p).unwrap();
        assert_eq!(s, s2);
        let pe = exp_params();
        let s3 = s.step(0.0, 0.0, 123.0, &pe).unwrap();
        assert_eq!(s, s3);
    }

    #[test]
    fn charge_integrates_current() {
        let p = DeviceParams::default();
        let s = DeviceState::new(Polarity::Forward);
        let s2 = s.step(1e-3, 0.0, 1e-3, &p).unwrap();
        assert!((s2.q - 1e-6).abs() < 1e-20);
    }

    #[test]
    fn exponential_rate_ratio_is_sinh_ratio() {
        // doubling the voltage from v0 to 2 v0 multiplies |dw/dt| by sinh(2)/sinh(1)
        let p = exp_params();
        let s = DeviceState::new(Polarity::Forward);
        let dt = 1e-6;
        let dw1 = s.step(0.0, p.v0, dt, &p).unwrap().w - s.w;
        let dw2 = s.step(0.0, 2.0 * p.v0, dt, &p).unwrap().w - s.w;
        assert!((dw2 / dw1 - 3.086161269630488).abs() < 1e-9);
    }

    #[test]
    fn step_rejects_non_finite_inputs() {
        let p = DeviceParams::default();
        let s = DeviceState::new(Polarity::Forward);
        assert!(s.step(f64::NAN, 0.0, 1.0, &p).is_err());
        assert!(s.step(0.0, f64::INFINITY, 1.0, &p).is_err());
        assert!(s.step(0.0, 0.0, -1.0, &p).is_err());
    }

    #[test]
    fn condition_star_examples() {
        let p = DeviceParams::default();
        assert!(satisfies_condition_star(&p, 1e-3, 1.0));
        assert!(!satisfies_condition_star(&p, 0.0, 1.0));
        let pe = DeviceParams {
            k: 10.0,
            ..exp_params()
        };
        assert!(satisfies_condition_star(&pe, pe.v0, 10.0));
    }

    #[test]
    fn params_validation_rejects_bad_rails() {
        let mut p = DeviceParams::default();
        p.r_off = 50.0;
        assert!(p.validate().is_err());
        p = DeviceParams::default();
        p.q0 = 0.0;
        assert!(p.validate().is_err());
        assert!(DeviceParams::default().validate().is_ok());
    }

    #[test]
    fn m_efficiency_of_default_device() {
        let mu = DeviceParams::default().m_efficiency();
        assert_eq!(mu.value(), 100.0);
        assert_eq!(mu.inverse(), 0.01);
        assert_eq!(MEfficiency::new(f64::INFINITY).inverse(), 0.0);
    }

    proptest! {
        #[test]
        fn memristance_monotone_in_charge(q1 in -1e-4f64..1e-4, q2 in -1e-4f64..1e-4) {
            let p = DeviceParams::default();
            let (lo, hi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
            let ms = |q| DeviceState { q, ..DeviceState::new(Polarity::Forward) }.memristance(&p);
            prop_assert!(ms(lo) <= ms(hi));
        }

        #[test]
        fn memristance_confined_to_rails(
            drives in proptest::collection::vec((-1e-2f64..1e-2, 1e-6f64..1e-2), 1..40),
            exponential in proptest::bool::ANY,
        ) {
            let p = if exponential { exp_params() } else { DeviceParams::default() };
            let mut s = DeviceState::new(Polarity::Forward);
            for (drive, dt) in drives {
                s = s.step(drive, drive, dt, &p).unwrap();
                let m = s.memristance(&p);
                prop_assert!(m >= p.r_on && m <= p.r_off);
            }
        }

        #[test]
        fn condition_star_holds_within_derived_horizon(
            log_drive in -6.0f64..0.0,
            exponential in proptest::bool::ANY,
        ) {
            let p = if exponential { exp_params() } else { DeviceParams::default() };
            let drive = 10f64.powf(log_drive);
            let horizon = condition_star_horizon(&p, drive);
            prop_assert!(satisfies_condition_star(&p, drive, horizon));
        }

        #[test]
        fn antipodal_symmetry(
            drives in proptest::collection::vec((-1e-3f64..1e-3, 1e-6f64..1e-3), 1..30),
            exponential in proptest::bool::ANY,
        ) {
            let p = if exponential { exp_params() } else { DeviceParams::default() };
            let mut fwd = DeviceState::new(Polarity::Forward);
            let mut rev = DeviceState::new(Polarity::Reverse);
            for (drive, dt) in drives {
                fwd = fwd.step(drive, drive, dt, &p).unwrap();
                rev = rev.step(-drive, -drive, dt, &p).unwrap();
                prop_assert_eq!(fwd.q, rev.q);
                prop_assert_eq!(fwd.w, rev.w);
            }
        }
    }
}
