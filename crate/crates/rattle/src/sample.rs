//! Realized trajectories, ensembles, and empirical exit-time distributions.

/// Which basin boundary a path crossed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundarySide {
    Lower,
    Upper,
}

/// First recorded basin exit of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExitRecord {
    /// Time of the first recorded sample outside the basin.
    pub time: f64,
    pub boundary: BoundarySide,
    pub state_at_exit: f64,
}

/// One realized trajectory, sampled every `dt_record` time units from `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    pub t0: f64,
    pub dt_record: f64,
    pub states: Vec<f64>,
    pub exit: Option<ExitRecord>,
    /// Stream seed this path was generated from.
    pub seed: u64,
}

impl SamplePath {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Recording time of sample `i`.
    pub fn time_at(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt_record
    }

    /// True if the path had not yet exited strictly after time `t`.
    pub fn survived_past(&self, t: f64) -> bool {
        self.exit.is_none_or(|e| e.time > t)
    }
}

/// A reproducible collection of independent paths.
///
/// All paths share `t0`, `dt_record`, and the configured `horizon`; per-path
/// seeds are derived from `master_seed` and the path index, so the result is
/// a pure function of `(model, config, n, master_seed)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub paths: Vec<SamplePath>,
    pub master_seed: u64,
    /// Digest of the generating model/config, for provenance checks.
    pub config_digest: String,
    pub t0: f64,
    pub dt_record: f64,
    pub horizon: f64,
}

impl EnsembleResult {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Exit times of the paths that exited, in path order.
    pub fn exit_times(&self) -> Vec<f64> {
        self.paths.iter().filter_map(|p| p.exit.map(|e| e.time)).collect()
    }
}

/// Empirical distribution of exit times over an ensemble.
///
/// `cdf(tau)` is the fraction of *all* paths (exited or not) whose exit time
/// is `<= tau`; paths that never exited keep the CDF below 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ExitTimeDistribution {
    pub sorted_exit_times: Vec<f64>,
    pub n_total: usize,
    pub horizon: f64,
}

impl ExitTimeDistribution {
    pub fn from_ensemble(ens: &EnsembleResult) -> Self {
        let mut times = ens.exit_times();
        times.sort_by(|a, b| a.partial_cmp(b).expect("exit times are finite"));
        Self { sorted_exit_times: times, n_total: ens.len(), horizon: ens.horizon }
    }

    pub fn cdf(&self, tau: f64) -> f64 {
        if self.n_total == 0 {
            return 0.0;
        }
        let count = self.sorted_exit_times.partition_point(|&t| t <= tau);
        count as f64 / self.n_total as f64
    }

    /// Fraction of paths that exited at all.
    pub fn exit_fraction(&self) -> f64 {
        if self.n_total == 0 {
            0.0
        } else {
            self.sorted_exit_times.len() as f64 / self.n_total as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(times: &[f64], n_total: usize) -> ExitTimeDistribution {
        let mut sorted = times.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ExitTimeDistribution { sorted_exit_times: sorted, n_total, horizon: 10.0 }
    }

    #[test]
    fn cdf_counts_exits_up_to_tau() {
        let d = dist(&[3.0, 1.0, 2.0], 3);
        assert_eq!(d.cdf(2.5), 2.0 / 3.0);
        assert_eq!(d.cdf(0.5), 0.0);
        assert_eq!(d.cdf(3.0), 1.0); // boundary value included
    }

    #[test]
    fn cdf_is_zero_without_exits() {
        let d = dist(&[], 5);
        assert_eq!(d.cdf(123.0), 0.0);
        let empty = dist(&[], 0);
        assert_eq!(empty.cdf(1.0), 0.0);
    }

    #[test]
    fn survivorship_is_strict() {
        let path = SamplePath {
            t0: 0.0,
            dt_record: 1.0,
            states: vec![1.0, 0.5, 0.0],
            exit: Some(ExitRecord { time: 2.0, boundary: BoundarySide::Lower, state_at_exit: 0.0 }),
            seed: 7,
        };
        assert!(path.survived_past(1.9));
        assert!(!path.survived_past(2.0));
        assert!(!path.survived_past(2.1));
    }
}
