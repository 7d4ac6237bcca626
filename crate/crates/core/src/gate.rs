//! One antipodal min/max gate: exact divider algebra, forward-Euler transient
//! simulation, and the closed-form steady-state outputs with their
//! m-efficiency degradation.
//!
//! The gate is a resistive divider whose two branch resistors are memristors
//! of opposite orientation sharing a load `R`. Driving the branch pins with
//! constant voltages relaxes the pair to opposite rails, and the divider
//! output settles near the larger (max gate) or smaller (min gate) input.

use std::io;

use thiserror::Error;

use crate::device::{
    DeviceError, DeviceModel, DeviceParams, DeviceState, MEfficiency, Polarity,
};

/// Relative memristance change per step below which the transient is
/// considered settled.
const SETTLE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GateError {
    #[error("{name} = {value} is outside [0, 1]")]
    VoltageOutOfRange { name: &'static str, value: f64 },
    #[error("non-finite {0}")]
    NonFinite(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("time step too large: device {device} would move {delta:.3e} (limit {limit:.3e}) in one step")]
    StepUnstable {
        device: u8,
        delta: f64,
        limit: f64,
    },
    #[error(transparent)]
    Device(#[from] DeviceError),
}

/// The resistive divider: two branch resistors and the shared load.
#[derive(Debug, Clone, Copy)]
pub struct DividerConfig {
    pub r1: f64,
    pub r2: f64,
    pub r_load: f64,
}

impl DividerConfig {
    pub fn new(r1: f64, r2: f64, r_load: f64) -> Result<Self, GateError> {
        let cfg = DividerConfig { r1, r2, r_load };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), GateError> {
        for (v, name) in [
            (self.r1, "r1 must be finite and > 0"),
            (self.r2, "r2 must be finite and > 0"),
            (self.r_load, "r_load must be finite and > 0"),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(GateError::InvalidConfig(name));
            }
        }
        Ok(())
    }
}

fn check_voltage(v: f64, name: &'static str) -> Result<(), GateError> {
    if !(0.0..=1.0).contains(&v) {
        return Err(GateError::VoltageOutOfRange { name, value: v });
    }
    Ok(())
}

/// Loop currents of the divider driven by `v1` and `v2`:
/// `i1 = (-v1(R+R2) + v2 R)/Δ`, `i2 = (v2(R+R1) - v1 R)/Δ` with
/// `Δ = R(R1+R2) + R1 R2`.
pub fn divider_currents(v1: f64, v2: f64, cfg: &DividerConfig) -> Result<(f64, f64), GateError> {
    check_voltage(v1, "v1")?;
    check_voltage(v2, "v2")?;
    cfg.validate()?;
    let r = cfg.r_load;
    let delta = r * (cfg.r1 + cfg.r2) + cfg.r1 * cfg.r2;
    let i1 = (-v1 * (r + cfg.r2) + v2 * r) / delta;
    let i2 = (v2 * (r + cfg.r1) - v1 * r) / delta;
    Ok((i1, i2))
}

/// Divider output voltage `V = (v1 R2 + v2 R1)/(R1 + R2 + R1 R2 / R)`;
/// algebraically equal to `r_load · (i2 - i1)`.
pub fn divider_output(v1: f64, v2: f64, cfg: &DividerConfig) -> Result<f64, GateError> {
    check_voltage(v1, "v1")?;
    check_voltage(v2, "v2")?;
    cfg.validate()?;
    Ok((v1 * cfg.r2 + v2 * cfg.r1) / (cfg.r1 + cfg.r2 + cfg.r1 * cfg.r2 / cfg.r_load))
}

/// Whether a gate settles toward the larger or the smaller input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Max,
    Min,
}

/// Time series of one transient run: divider output and both memristances,
/// one row per accepted step plus the initial readout.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub times: Vec<f64>,
    pub z: Vec<f64>,
    pub m1: Vec<f64>,
    pub m2: Vec<f64>,
}

impl Trace {
    fn push(&mut self, t: f64, z: f64, m1: f64, m2: f64) {
        self.times.push(t);
        self.z.push(z);
        self.m1.push(m1);
        self.m2.push(m2);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_z(&self) -> f64 {
        *self.z.last().expect("trace has at least the initial readout")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trace has at least the initial readout")
    }

    /// CSV with header `t,z,m1,m2`, 17 significant digits per value.
    pub fn write_csv<W: io::Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "t,z,m1,m2")?;
        for i in 0..self.len() {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                self.times[i], self.z[i], self.m1[i], self.m2[i]
            )?;
        }
        Ok(())
    }
}

/// State of one min/max gate: the antipodal device pair plus the load.
#[derive(Debug, Clone)]
pub struct GateState {
    pub kind: GateKind,
    pub dev1: DeviceState,
    pub dev2: DeviceState,
    pub params: DeviceParams,
    pub r_load: f64,
}

/// Device orientations that make the gate compute its function.
///
/// For the charge-driven bilevel profile a positive own-frame current moves
/// the memristance toward `r_off`; for the voltage-driven exponential profile
/// a positive own-frame voltage moves it toward `r_on`. The max gate needs
/// the device under the larger input to end at `r_on`, so the wiring is
/// mirrored between the two profiles.
fn orientations(kind: GateKind, model: DeviceModel) -> (Polarity, Polarity) {
    let max_pair = match model {
        DeviceModel::IdealBilevel => (Polarity::Forward, Polarity::Reverse),
        DeviceModel::ExponentialSwitching => (Polarity::Reverse, Polarity::Forward),
    };
    match kind {
        GateKind::Max => max_pair,
        GateKind::Min => (max_pair.0.flipped(), max_pair.1.flipped()),
    }
}

impl GateState {
    /// Fresh gate with both devices at their midpoint resistance.
    pub fn new(kind: GateKind, params: DeviceParams, r_load: f64) -> Result<Self, GateError> {
        params.validate()?;
        if !(r_load.is_finite() && r_load > 0.0) {
            return Err(GateError::InvalidConfig("r_load must be finite and > 0"));
        }
        let (p1, p2) = orientations(kind, params.model);
        Ok(GateState {
            kind,
            dev1: DeviceState::new(p1),
            dev2: DeviceState::new(p2),
            params,
            r_load,
        })
    }

    fn divider(&self) -> DividerConfig {
        DividerConfig {
            r1: self.dev1.memristance(&self.params),
            r2: self.dev2.memristance(&self.params),
            r_load: self.r_load,
        }
    }

    /// Divider output for the current memristances, without advancing time.
    pub fn readout(&self, x: f64, y: f64) -> Result<f64, GateError> {
        divider_output(x, y, &self.divider())
    }

    /// A step size that keeps per-step state motion near 1% of the state
    /// scale for the current operating point. Falls back to 1 s when the
    /// drive is zero (nothing moves regardless).
    pub fn suggest_dt(&self, x: f64, y: f64) -> Result<f64, GateError> {
        let cfg = self.divider();
        let (i1, i2) = divider_currents(x, y, &cfg)?;
        let dt = match self.params.model {
            DeviceModel::IdealBilevel => {
                let scale = i1.abs().max(i2.abs());
                if scale <= 0.0 {
                    1.0
                } else {
                    self.params.q0 / (100.0 * scale)
                }
            }
            DeviceModel::ExponentialSwitching => {
                let r1 = (i1 * cfg.r1 / self.params.v0).sinh().abs();
                let r2 = (i2 * cfg.r2 / self.params.v0).sinh().abs();
                let rate = self.params.k * r1.max(r2);
                if rate <= 0.0 {
                    1.0
                } else {
                    0.01 / rate
                }
            }
        };
        Ok(dt)
    }

    /// Forward-Euler transient with constant pin voltages `x` and `y`.
    ///
    /// Each step evaluates the divider with the instantaneous memristances,
    /// advances both devices (device voltage = loop current × memristance)
    /// and appends a trace row. Stops early once both memristances move less
    /// than 1e-9 relative per step, or at `t_max`. With `t_max < dt` no step
    /// is taken and the trace holds the bare readout. The gate state persists
    /// so a later call continues from where this one stopped.
    pub fn simulate(&mut self, x: f64, y: f64, dt: f64, t_max: f64) -> Result<Trace, GateError> {
        check_voltage(x, "x")?;
        check_voltage(y, "y")?;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(GateError::NonFinite("dt (must be finite and > 0)"));
        }
        if !(t_max.is_finite() && t_max >= 0.0) {
            return Err(GateError::NonFinite("t_max (must be finite and >= 0)"));
        }

        let mut trace = Trace::default();
        let mut m1 = self.dev1.memristance(&self.params);
        let mut m2 = self.dev2.memristance(&self.params);
        let cfg = DividerConfig {
            r1: m1,
            r2: m2,
            r_load: self.r_load,
        };
        trace.push(0.0, divider_output(x, y, &cfg)?, m1, m2);

        let mut steps: u64 = 0;
        while (steps + 1) as f64 * dt <= t_max * (1.0 + 1e-12) {
            let cfg = DividerConfig {
                r1: m1,
                r2: m2,
                r_load: self.r_load,
            };
            let (i1, i2) = divider_currents(x, y, &cfg)?;
            self.check_step_guard(1, i1, i1 * m1, dt)?;
            self.check_step_guard(2, i2, i2 * m2, dt)?;
            self.dev1 = self.dev1.step(i1, i1 * m1, dt, &self.params)?;
            self.dev2 = self.dev2.step(i2, i2 * m2, dt, &self.params)?;
            steps += 1;
            let t = steps as f64 * dt;
            let n1 = self.dev1.memristance(&self.params);
            let n2 = self.dev2.memristance(&self.params);
            let cfg = DividerConfig {
                r1: n1,
                r2: n2,
                r_load: self.r_load,
            };
            trace.push(t, divider_output(x, y, &cfg)?, n1, n2);
            let settled = (n1 - m1).abs() / m1 < SETTLE_REL_TOL
                && (n2 - m2).abs() / m2 < SETTLE_REL_TOL;
            m1 = n1;
            m2 = n2;
            if settled {
                break;
            }
        }
        Ok(trace)
    }

    fn check_step_guard(
        &self,
        device: u8,
        current: f64,
        voltage: f64,
        dt: f64,
    ) -> Result<(), GateError> {
        match self.params.model {
            DeviceModel::IdealBilevel => {
                let dq = (current * dt).abs();
                if dq > self.params.q0 {
                    return Err(GateError::StepUnstable {
                        device,
                        delta: dq,
                        limit: self.params.q0,
                    });
                }
            }
            DeviceModel::ExponentialSwitching => {
                let dw = (self.params.k * (voltage / self.params.v0).sinh() * dt).abs();
                if dw > 1.0 {
                    return Err(GateError::StepUnstable {
                        device,
                        delta: dw,
                        limit: 1.0,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Steady-state output of the max gate in the `R → ∞` limit:
/// `(max + μ⁻¹ min)/(1 + μ⁻¹)`.
pub fn steady_state_max(x: f64, y: f64, mu: MEfficiency) -> f64 {
    let inv = mu.inverse();
    (x.max(y) + inv * x.min(y)) / (1.0 + inv)
}

/// Steady-state output of the min gate in the `R → ∞` limit:
/// `(min + μ⁻¹ max)/(1 + μ⁻¹)`.
pub fn steady_state_min(x: f64, y: f64, mu: MEfficiency) -> f64 {
    let inv = mu.inverse();
    (x.min(y) + inv * x.max(y)) / (1.0 + inv)
}

/// Upper bound on |settled gate output − exact min/max| for inputs in [0, 1]:
/// the μ-degradation term `μ⁻¹/(1+μ⁻¹)` plus the finite-load correction
/// `r_off / r_load`.
pub fn gate_error_bound(mu: MEfficiency, r_off_over_r: f64) -> f64 {
    let inv = mu.inverse();
    inv / (1.0 + inv) + r_off_over_r
}
