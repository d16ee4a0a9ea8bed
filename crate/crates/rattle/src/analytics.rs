//! Closed-form Ornstein–Uhlenbeck statistics and the quasi-static
//! variance laws for flattening and narrowing potentials.
//!
//! For `dX_t = -b X_t dt + a dB_t` started deterministically at the
//! equilibrium (`X_0 = 0`):
//!
//! ```text
//! Cov(X_t, X_{t+s}) = a^2/(2b) (e^{-sb} - e^{-(2t+s)b})
//! Var(X_t)          = a^2/(2b) (1 - e^{-2bt})
//! ```
//!
//! The cubic well `V = beta^3 x^3 - alpha beta x` linearizes about its
//! minimum to an OU process with rate `b = 2 beta^2 sqrt(3 alpha)`. Freezing
//! a slowly moving parameter at its instantaneous value ("quasi-static")
//! and substituting into the formulas above gives:
//!
//! * flattening well, `alpha(t) = t^-2`: the lag-1 autocovariance grows
//!   linearly, slope [`csd_variance_slope`];
//! * narrowing well, `beta(t) = t`, `t >= 1`: the variance decays as
//!   `O(t^-2)`, value [`csu_variance`].
//!
//! These are oracles for trend tests, not pointwise predictions: the
//! derivation assumes the parameter drifts slowly relative to `1/b`.

/// OU rate from linearizing the cubic drift at its stable equilibrium:
/// `b = 2 beta^2 sqrt(3 alpha)`.
pub fn cubic_ou_rate(alpha: f64, beta: f64) -> f64 {
    2.0 * beta * beta * (3.0 * alpha).sqrt()
}

/// Covariance `Cov(X_t, X_{t+s})` of an OU process started at 0.
pub fn ou_covariance(a: f64, b: f64, t: f64, s: f64) -> f64 {
    a * a / (2.0 * b) * ((-s * b).exp() - (-(2.0 * t + s) * b).exp())
}

/// Variance `Var(X_t)` of an OU process started at 0.
pub fn ou_variance(a: f64, b: f64, t: f64) -> f64 {
    a * a / (2.0 * b) * (1.0 - (-2.0 * b * t).exp())
}

/// Linear growth rate `m` of the lag-1 autocovariance under the flattening
/// schedule `alpha(t) = t^-2`:
/// `m = a^2 (1 - exp(-4 beta^2 sqrt(3))) / (4 beta^2 sqrt(3))`.
pub fn csd_variance_slope(a: f64, beta: f64) -> f64 {
    let r = 4.0 * beta * beta * 3.0f64.sqrt();
    a * a * (1.0 - (-r).exp()) / r
}

/// Quasi-static variance under the narrowing schedule `beta(t) = t`,
/// `t >= 1`:
/// `Var(X_t) = a^2 / (4 sqrt(3 alpha) t^2) * (1 - exp(-4 sqrt(3 alpha) t^3))`.
pub fn csu_variance(a: f64, alpha: f64, t: f64) -> f64 {
    let s = (3.0 * alpha).sqrt();
    a * a / (4.0 * s * t * t) * (1.0 - (-4.0 * s * t * t * t).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ou_variance_known_values() {
        assert_eq!(ou_variance(1.0, 1.0, 0.0), 0.0);
        // value frozen from 30-digit evaluation of the closed form
        assert_relative_eq!(ou_variance(1.0, 1.0, 1.0), 0.43233235838169365, max_relative = 1e-14);
        // stationary limit a^2/(2b)
        assert_relative_eq!(ou_variance(1.0, 1.0, 1e6), 0.5, max_relative = 1e-14);
        assert_relative_eq!(ou_variance(2.0, 0.5, 1e6), 4.0, max_relative = 1e-14);
    }

    #[test]
    fn ou_covariance_known_values() {
        // X_0 deterministic: zero covariance at t = 0
        assert_eq!(ou_covariance(1.0, 1.0, 0.0, 0.0), 0.0);
        assert_eq!(ou_covariance(1.0, 1.0, 0.0, 3.7), 0.0);
        // long-time lag-1 limit e^{-1}/2
        assert_relative_eq!(ou_covariance(1.0, 1.0, 1e6, 1.0), 0.18393972058572116, max_relative = 1e-14);
        assert_relative_eq!(ou_covariance(1.0, 1.0, 2.0, 1.0), 0.18057074708617843, max_relative = 1e-14);
    }

    #[test]
    fn covariance_at_zero_lag_is_variance() {
        for &(a, b, t) in &[(1.0, 1.0, 0.5), (0.3, 2.0, 1.7), (2.0, 0.25, 9.0)] {
            assert_relative_eq!(ou_covariance(a, b, t, 0.0), ou_variance(a, b, t), max_relative = 1e-14);
        }
    }

    #[test]
    fn csd_slope_known_values() {
        assert_relative_eq!(csd_variance_slope(1.0, 1.0), 0.14419615116716207, max_relative = 1e-14);
        // a^2 scaling
        assert_relative_eq!(
            csd_variance_slope(2.0, 1.0),
            4.0 * csd_variance_slope(1.0, 1.0),
            max_relative = 1e-14
        );
        // stiff wells stop amplifying: m -> 0 as beta -> inf
        assert!(csd_variance_slope(1.0, 1e4) < 1e-8);
    }

    #[test]
    fn csu_variance_known_values() {
        assert_relative_eq!(csu_variance(1.0, 1.0 / 3.0, 1.0), 0.24542109027781645, max_relative = 1e-14);
        assert_eq!(csu_variance(0.0, 1.0 / 3.0, 5.0), 0.0);
        // O(t^-2): doubling t at large t divides the value by 4
        let ratio = csu_variance(1.0, 1.0 / 3.0, 40.0) / csu_variance(1.0, 1.0 / 3.0, 80.0);
        assert_relative_eq!(ratio, 4.0, max_relative = 1e-12);
    }

    #[test]
    fn linearized_cubic_lag1_autocovariance_closed_form() {
        // composing the OU covariance with b = 2 beta^2 sqrt(3 alpha) must
        // reproduce a^2/(4 b^2 sqrt(3a)) e^{-2 b^2 sqrt(3a)} (1 - e^{-4 b^2 sqrt(3a) t})
        for &(a, alpha, beta, t) in &[(1.0f64, 1.0f64, 1.0f64, 2.0f64), (0.22, 0.5, 1.3, 7.0)] {
            let s = beta * beta * (3.0 * alpha).sqrt();
            let direct = a * a / (4.0 * s) * (-2.0 * s).exp() * (1.0 - (-4.0 * s * t).exp());
            let composed = ou_covariance(a, cubic_ou_rate(alpha, beta), t, 1.0);
            assert_relative_eq!(direct, composed, max_relative = 1e-13);
        }
    }

    #[test]
    fn cubic_ou_rate_matches_numerical_drift_slope() {
        // derivative of the cubic drift at its stable point is -2 beta^2 sqrt(3 alpha)
        use crate::model::cubic_drift;
        for &(alpha, beta) in &[(1.0f64, 1.0f64), (3.0, 1.0), (0.25, 2.0)] {
            let x_star = (alpha / (3.0 * beta * beta)).sqrt();
            let h = 1e-6;
            let slope = (cubic_drift(x_star + h, alpha, beta) - cubic_drift(x_star - h, alpha, beta)) / (2.0 * h);
            assert_relative_eq!(slope, -cubic_ou_rate(alpha, beta), max_relative = 1e-9);
        }
    }
}
