//! Drift models for one-dimensional SDEs `dX_t = b(X_t, t) dt + a dB_t`.
//!
//! A [`PotentialModel`] bundles a drift family with its (possibly scheduled)
//! parameters and a constant additive noise amplitude `a`. The built-in
//! families:
//!
//! * `Cubic` — gradient of `V(x) = beta^3 x^3 - alpha beta x`, i.e.
//!   `b(x) = alpha*beta - 3 beta^3 x^2`. A single well at
//!   `+sqrt(alpha / 3 beta^2)` with an escape route past the unstable point
//!   at `-sqrt(alpha / 3 beta^2)`.
//! * `Allee` — density-dependent population growth
//!   `b(x) = (r/beta) x (x/(beta A) - 1)(1 - x/(beta C))` with extinction
//!   threshold `beta*A` and carrying capacity `beta*C`.
//! * `OuLinear` — `b(x) = -b x`; `b = 0` gives driftless Brownian motion.
//! * `Table` — piecewise-linear drift through user knots, for ad-hoc models.

use crate::schedule::ParamSchedule;
use std::fmt;
use thiserror::Error;

/// Number of grid points used when validating schedules over a horizon.
pub const VALIDATION_GRID_POINTS: usize = 1000;

/// Default lower clamp applied to the Allee `beta` schedule; the drift
/// divides by `beta`.
pub const ALLEE_BETA_CLAMP: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("alpha must be nonnegative (got {0})")]
    NegativeAlpha(f64),
    #[error("beta must be positive (got {0})")]
    NonpositiveBeta(f64),
    #[error("equilibrium ordering requires C > A > 0 (A = {a}, C = {c})")]
    AlleeOrdering { a: f64, c: f64 },
    #[error("drift table needs at least one knot with strictly increasing x")]
    BadTable,
}

/// Tabulated drift: piecewise-linear interpolation through `(x, b(x))` knots,
/// clamped to the end values outside the knot range.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftTable {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl DriftTable {
    pub fn new(points: &[(f64, f64)]) -> Result<Self, ModelError> {
        if points.is_empty() {
            return Err(ModelError::BadTable);
        }
        let ok = points.iter().all(|(x, v)| x.is_finite() && v.is_finite())
            && points.windows(2).all(|w| w[0].0 < w[1].0);
        if !ok {
            return Err(ModelError::BadTable);
        }
        Ok(Self {
            xs: points.iter().map(|p| p.0).collect(),
            values: points.iter().map(|p| p.1).collect(),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.values[0];
        }
        if x >= self.xs[n - 1] {
            return self.values[n - 1];
        }
        let i = self.xs.partition_point(|&k| k <= x);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        v0 + (v1 - v0) * (x - x0) / (x1 - x0)
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.values.iter().copied())
    }
}

/// Drift family with per-parameter schedules.
#[derive(Debug, Clone, PartialEq)]
pub enum Drift {
    Cubic {
        alpha: ParamSchedule,
        beta: ParamSchedule,
    },
    Allee {
        r: ParamSchedule,
        /// Allee-threshold scale: the unstable equilibrium sits at `beta * a`.
        a: ParamSchedule,
        /// Carrying-capacity scale: the upper stable equilibrium is `beta * c`.
        c: ParamSchedule,
        beta: ParamSchedule,
    },
    OuLinear {
        b: ParamSchedule,
    },
    Table(DriftTable),
}

/// A drift model plus constant additive noise amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialModel {
    pub drift: Drift,
    pub noise_amplitude: f64,
}

impl PotentialModel {
    pub fn cubic(alpha: f64, beta: f64, noise_amplitude: f64) -> Self {
        Self::cubic_scheduled(
            ParamSchedule::constant(alpha),
            ParamSchedule::constant(beta),
            noise_amplitude,
        )
    }

    pub fn cubic_scheduled(alpha: ParamSchedule, beta: ParamSchedule, noise_amplitude: f64) -> Self {
        Self { drift: Drift::Cubic { alpha, beta }, noise_amplitude }
    }

    pub fn allee(r: f64, a: f64, c: f64, beta: f64, noise_amplitude: f64) -> Self {
        Self::allee_scheduled(
            ParamSchedule::constant(r),
            ParamSchedule::constant(a),
            ParamSchedule::constant(c),
            ParamSchedule::constant(beta),
            noise_amplitude,
        )
    }

    pub fn allee_scheduled(
        r: ParamSchedule,
        a: ParamSchedule,
        c: ParamSchedule,
        beta: ParamSchedule,
        noise_amplitude: f64,
    ) -> Self {
        // The drift divides by beta, so beta gets a positive floor.
        let beta = if beta.clamp_min < ALLEE_BETA_CLAMP {
            beta.with_clamp_min(ALLEE_BETA_CLAMP)
        } else {
            beta
        };
        Self { drift: Drift::Allee { r, a, c, beta }, noise_amplitude }
    }

    pub fn ou(b: f64, noise_amplitude: f64) -> Self {
        Self::ou_scheduled(ParamSchedule::constant(b), noise_amplitude)
    }

    pub fn ou_scheduled(b: ParamSchedule, noise_amplitude: f64) -> Self {
        Self { drift: Drift::OuLinear { b }, noise_amplitude }
    }

    /// Driftless Brownian motion with amplitude `a`.
    pub fn brownian(noise_amplitude: f64) -> Self {
        Self::ou(0.0, noise_amplitude)
    }

    pub fn table(points: &[(f64, f64)], noise_amplitude: f64) -> Result<Self, ModelError> {
        Ok(Self { drift: Drift::Table(DriftTable::new(points)?), noise_amplitude })
    }

    /// Drift `b(x, t)` with all schedules evaluated at `t`.
    #[inline]
    pub fn drift_at(&self, x: f64, t: f64) -> f64 {
        match &self.drift {
            Drift::Cubic { alpha, beta } => cubic_drift(x, alpha.value(t), beta.value(t)),
            Drift::Allee { r, a, c, beta } => {
                allee_drift(x, r.value(t), a.value(t), c.value(t), beta.value(t))
            }
            Drift::OuLinear { b } => -b.value(t) * x,
            Drift::Table(table) => table.eval(x),
        }
    }

    /// True if any parameter varies with time.
    pub fn has_schedules(&self) -> bool {
        match &self.drift {
            Drift::Cubic { alpha, beta } => !alpha.is_constant() || !beta.is_constant(),
            Drift::Allee { r, a, c, beta } => {
                !r.is_constant() || !a.is_constant() || !c.is_constant() || !beta.is_constant()
            }
            Drift::OuLinear { b } => !b.is_constant(),
            Drift::Table(_) => false,
        }
    }

    /// Location of the upper stable equilibrium at time `t`, if the family
    /// has a closed form for it.
    pub fn upper_stable_equilibrium(&self, t: f64) -> Option<f64> {
        match &self.drift {
            Drift::Cubic { alpha, beta } => {
                let (al, be) = (alpha.value(t), beta.value(t));
                Some((al / (3.0 * be * be)).sqrt())
            }
            Drift::Allee { c, beta, .. } => Some(beta.value(t) * c.value(t)),
            Drift::OuLinear { .. } => Some(0.0),
            Drift::Table(_) => None,
        }
    }
}

/// Cubic drift `alpha*beta - 3 beta^3 x^2`, the negative gradient of
/// `V(x) = beta^3 x^3 - alpha beta x`.
#[inline]
pub fn cubic_drift(x: f64, alpha: f64, beta: f64) -> f64 {
    alpha * beta - 3.0 * beta * beta * beta * x * x
}

/// The potential `V(x) = beta^3 x^3 - alpha beta x` whose negative gradient
/// is [`cubic_drift`].
pub fn cubic_potential(x: f64, alpha: f64, beta: f64) -> f64 {
    beta * beta * beta * x * x * x - alpha * beta * x
}

/// Allee drift `(r/beta) x (x/(beta a) - 1)(1 - x/(beta c))`.
#[inline]
pub fn allee_drift(x: f64, r: f64, a: f64, c: f64, beta: f64) -> f64 {
    (r / beta) * x * (x / (beta * a) - 1.0) * (1.0 - x / (beta * c))
}

/// Stability of an equilibrium point, by the sign of the drift derivative
/// (negative slope → stable, positive → unstable, zero → degenerate).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
    Degenerate,
}

/// Equilibria of a drift, sorted by location.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSet {
    pub points: Vec<f64>,
    pub stability: Vec<Stability>,
}

/// Equilibria of the cubic drift: `±sqrt(alpha / 3 beta^2)` for `alpha > 0`,
/// a single degenerate point at 0 when `alpha = 0`.
pub fn cubic_equilibria(alpha: f64, beta: f64) -> Result<EquilibriumSet, ModelError> {
    if alpha < 0.0 {
        return Err(ModelError::NegativeAlpha(alpha));
    }
    if beta <= 0.0 {
        return Err(ModelError::NonpositiveBeta(beta));
    }
    if alpha == 0.0 {
        return Ok(EquilibriumSet { points: vec![0.0], stability: vec![Stability::Degenerate] });
    }
    let x_star = (alpha / (3.0 * beta * beta)).sqrt();
    Ok(EquilibriumSet {
        points: vec![-x_star, x_star],
        stability: vec![Stability::Unstable, Stability::Stable],
    })
}

/// Equilibria of the Allee drift: `{0, beta*a, beta*c}` with the middle
/// point unstable.
pub fn allee_equilibria(beta: f64, a: f64, c: f64) -> Result<EquilibriumSet, ModelError> {
    if beta <= 0.0 {
        return Err(ModelError::NonpositiveBeta(beta));
    }
    if !(a > 0.0 && c > a) {
        return Err(ModelError::AlleeOrdering { a, c });
    }
    Ok(EquilibriumSet {
        points: vec![0.0, beta * a, beta * c],
        stability: vec![Stability::Stable, Stability::Unstable, Stability::Stable],
    })
}

/// A single invariant violation found by validation.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// First grid time at which the violation was observed.
    pub t: f64,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (first at t = {})", self.message, self.t)
    }
}

/// Check every model invariant on a [`VALIDATION_GRID_POINTS`]-point grid
/// over `[0, horizon]`. Empty result means the model is valid.
pub fn validate_model(model: &PotentialModel, horizon: f64) -> Vec<Violation> {
    validate_model_over(model, 0.0, horizon)
}

/// As [`validate_model`], but over an arbitrary time span `[t_start, t_end]`.
pub fn validate_model_over(model: &PotentialModel, t_start: f64, t_end: f64) -> Vec<Violation> {
    let mut report = Report::default();
    if !(model.noise_amplitude >= 0.0 && model.noise_amplitude.is_finite()) {
        report.push(t_start, format!("noise_amplitude must be finite and >= 0 (got {})", model.noise_amplitude));
    }
    if let Drift::Table(table) = &model.drift {
        // Knots are checked at construction; nothing is time-dependent.
        let _ = table;
        return report.violations;
    }
    for i in 0..VALIDATION_GRID_POINTS {
        let frac = i as f64 / (VALIDATION_GRID_POINTS - 1) as f64;
        let t = t_start + frac * (t_end - t_start);
        match &model.drift {
            Drift::Cubic { alpha, beta } => {
                let (al, be) = (alpha.value(t), beta.value(t));
                if !al.is_finite() || al < 0.0 {
                    report.push(t, format!("cubic alpha must be finite and >= 0 (got {al})"));
                }
                if !be.is_finite() || be <= 0.0 {
                    report.push(t, format!("cubic beta must be finite and > 0 (got {be})"));
                }
            }
            Drift::Allee { r, a, c, beta } => {
                let (rv, av, cv, bv) = (r.value(t), a.value(t), c.value(t), beta.value(t));
                if !rv.is_finite() || rv <= 0.0 {
                    report.push(t, format!("allee r must be finite and > 0 (got {rv})"));
                }
                if !av.is_finite() || av <= 0.0 {
                    report.push(t, format!("allee A must be finite and > 0 (got {av})"));
                }
                let ordered = cv > av; // NaN fails this too
                if !ordered {
                    report.push(t, format!("C > A violated (A = {av}, C = {cv})"));
                }
                if !bv.is_finite() || bv <= 0.0 || bv > 1e3 {
                    report.push(t, format!("allee beta must lie in (0, 1e3] (got {bv})"));
                }
            }
            Drift::OuLinear { b } => {
                let bv = b.value(t);
                // b = 0 is allowed: it is the driftless Brownian case.
                if !bv.is_finite() || bv < 0.0 {
                    report.push(t, format!("ou rate b must be finite and >= 0 (got {bv})"));
                }
            }
            Drift::Table(_) => unreachable!(),
        }
    }
    report.violations
}

#[derive(Default)]
struct Report {
    violations: Vec<Violation>,
    seen: std::collections::BTreeSet<String>,
}

impl Report {
    /// Record a violation, keeping only the first grid time per message.
    fn push(&mut self, t: f64, message: String) {
        if self.seen.insert(message.clone()) {
            self.violations.push(Violation { t, message });
        }
    }
}
