//! Deterministic time profiles for slowly varying model parameters.
//!
//! Every model parameter is carried as a [`ParamSchedule`]; a fixed parameter
//! is simply a `Constant` schedule. Integrators re-read scheduled values at
//! every step, so a schedule is the single source of truth for a parameter's
//! trajectory.

use std::fmt;

/// Functional form of a parameter's time dependence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScheduleKind {
    /// `v(t) = v`
    Constant(f64),
    /// `v(t) = c0 / (1 + c1 * t)`
    InverseLinear { c0: f64, c1: f64 },
    /// `v(t) = c * t^p`
    PowerLaw { c: f64, p: f64 },
    /// `v(t) = v0 + slope * t`
    Linear { v0: f64, slope: f64 },
}

/// A scalar parameter as a pure function of time, with a lower clamp.
///
/// Evaluation is a pure function of `(kind, clamp_min, t)`: equal inputs
/// yield bit-identical outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSchedule {
    pub kind: ScheduleKind,
    /// Values below this floor are clamped up to it. Defaults to 0.
    pub clamp_min: f64,
}

impl ParamSchedule {
    pub fn constant(v: f64) -> Self {
        Self { kind: ScheduleKind::Constant(v), clamp_min: 0.0 }
    }

    pub fn inverse_linear(c0: f64, c1: f64) -> Self {
        Self { kind: ScheduleKind::InverseLinear { c0, c1 }, clamp_min: 0.0 }
    }

    pub fn power_law(c: f64, p: f64) -> Self {
        Self { kind: ScheduleKind::PowerLaw { c, p }, clamp_min: 0.0 }
    }

    pub fn linear(v0: f64, slope: f64) -> Self {
        Self { kind: ScheduleKind::Linear { v0, slope }, clamp_min: 0.0 }
    }

    pub fn with_clamp_min(mut self, clamp_min: f64) -> Self {
        self.clamp_min = clamp_min;
        self
    }

    /// Schedule value at time `t`, clamped from below.
    ///
    /// Non-finite raw values propagate unclamped so validation can see them.
    pub fn value(&self, t: f64) -> f64 {
        let raw = self.raw_value(t);
        if raw < self.clamp_min {
            self.clamp_min
        } else {
            raw
        }
    }

    /// Unclamped functional value at time `t`.
    pub fn raw_value(&self, t: f64) -> f64 {
        match self.kind {
            ScheduleKind::Constant(v) => v,
            ScheduleKind::InverseLinear { c0, c1 } => c0 / (1.0 + c1 * t),
            ScheduleKind::PowerLaw { c, p } => c * t.powf(p),
            ScheduleKind::Linear { v0, slope } => v0 + slope * t,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.kind, ScheduleKind::Constant(_))
    }
}

impl fmt::Display for ParamSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ScheduleKind::Constant(v) => write!(f, "const({v})")?,
            ScheduleKind::InverseLinear { c0, c1 } => write!(f, "inverse_linear({c0}, {c1})")?,
            ScheduleKind::PowerLaw { c, p } => write!(f, "power_law({c}, {p})")?,
            ScheduleKind::Linear { v0, slope } => write!(f, "linear({v0}, {slope})")?,
        }
        if self.clamp_min != 0.0 {
            write!(f, " clamp({})", self.clamp_min)?;
        }
        Ok(())
    }
}
