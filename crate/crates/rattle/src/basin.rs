//! Time-dependent basins of attraction and their boundaries.

use crate::model::Violation;
use crate::schedule::ParamSchedule;

/// One side of a basin: absent, fixed, or a scaled time schedule.
#[derive(Debug, Clone, PartialEq)]
pub enum Boundary {
    Unbounded,
    Constant(f64),
    /// `scale * schedule.value(t)`, e.g. the extinction threshold `A * beta(t)`.
    Scaled { schedule: ParamSchedule, scale: f64 },
}

impl Boundary {
    fn value_at(&self, t: f64, unbounded: f64) -> f64 {
        match self {
            Boundary::Unbounded => unbounded,
            Boundary::Constant(v) => *v,
            Boundary::Scaled { schedule, scale } => scale * schedule.value(t),
        }
    }
}

/// The interval `(lower(t), upper(t))` a path must stay inside; touching
/// either boundary counts as an exit.
#[derive(Debug, Clone, PartialEq)]
pub struct BasinSpec {
    pub lower: Boundary,
    pub upper: Boundary,
}

impl BasinSpec {
    pub fn new(lower: Boundary, upper: Boundary) -> Self {
        Self { lower, upper }
    }

    /// Fixed interval `(lo, hi)`.
    pub fn interval(lo: f64, hi: f64) -> Self {
        Self::new(Boundary::Constant(lo), Boundary::Constant(hi))
    }

    /// Half-line `(lo, +inf)`.
    pub fn above(lo: f64) -> Self {
        Self::new(Boundary::Constant(lo), Boundary::Unbounded)
    }

    pub fn unbounded() -> Self {
        Self::new(Boundary::Unbounded, Boundary::Unbounded)
    }

    pub fn lower_at(&self, t: f64) -> f64 {
        self.lower.value_at(t, f64::NEG_INFINITY)
    }

    pub fn upper_at(&self, t: f64) -> f64 {
        self.upper.value_at(t, f64::INFINITY)
    }

    /// Strict interior test; boundary values are outside.
    pub fn contains(&self, x: f64, t: f64) -> bool {
        x > self.lower_at(t) && x < self.upper_at(t)
    }

    /// True when neither side varies with time.
    pub fn is_static(&self) -> bool {
        !matches!(self.lower, Boundary::Scaled { .. }) && !matches!(self.upper, Boundary::Scaled { .. })
    }

    /// Divide both finite boundaries by `factor` (used by the space-contraction
    /// check, where the basin of the narrowed process is `(lower/k, upper/k)`).
    /// Only static basins can be rescaled.
    pub fn divided_by(&self, factor: f64) -> Option<Self> {
        let scale_side = |side: &Boundary| match side {
            Boundary::Unbounded => Some(Boundary::Unbounded),
            Boundary::Constant(v) => Some(Boundary::Constant(v / factor)),
            Boundary::Scaled { .. } => None,
        };
        Some(Self::new(scale_side(&self.lower)?, scale_side(&self.upper)?))
    }

    /// Check `lower(t) < upper(t)` on a grid over `[t_start, t_end]`.
    pub fn validate_over(&self, t_start: f64, t_end: f64) -> Vec<Violation> {
        const GRID: usize = 1000;
        for i in 0..GRID {
            let t = t_start + (t_end - t_start) * i as f64 / (GRID - 1) as f64;
            let (lo, hi) = (self.lower_at(t), self.upper_at(t));
            let ordered = lo < hi; // NaN on either side fails this too
            if !ordered {
                return vec![Violation {
                    t,
                    message: format!("basin lower must stay below upper (lower = {lo}, upper = {hi})"),
                }];
            }
        }
        Vec::new()
    }
}
