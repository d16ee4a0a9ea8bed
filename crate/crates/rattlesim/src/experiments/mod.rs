//! Experiment runners behind the CLI subcommands. Each runner is a pure
//! function of its config (plus the master seed inside it), so the emitted
//! artifacts are reproducible byte for byte.

pub mod figure1;
pub mod figure2;
pub mod simulate;
pub mod timechange;

pub use figure1::{run_figure1, write_figure1, Figure1Config, Figure1Output};
pub use figure2::{run_figure2, write_figure2, Figure2Config, Figure2Row};
pub use simulate::{run_simulate, write_simulate, SimulateConfig, SimulateOutput};
pub use timechange::{all_pass, run_timechange, write_timechange, TimechangeConfig};

use rattle::SamplePath;

pub const DEFAULT_SEED: u64 = 42;

/// Command-line overrides applied on top of file config and defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub n: Option<usize>,
}

/// Mean and 5th/95th percentiles of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub p5: f64,
    pub p95: f64,
}

pub fn summarize(values: &[f64]) -> Option<Summary> {
    use rattle::stats::{mean, quantile_sorted};
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite statistics"));
    Some(Summary {
        mean: mean(&sorted)?,
        p5: quantile_sorted(&sorted, 0.05)?,
        p95: quantile_sorted(&sorted, 0.95)?,
    })
}

/// Recorded samples in `[T - window, T)` for a path that exited at `T`;
/// the exit sample itself is outside the basin and excluded. Paths that
/// exited immediately have no segment.
pub(crate) fn pre_exit_segment(path: &SamplePath, window: f64) -> Option<&[f64]> {
    let exit = path.exit?;
    let i_exit = ((exit.time - path.t0) / path.dt_record).round() as usize;
    if i_exit == 0 {
        return None;
    }
    let back = (window / path.dt_record + 1e-9).floor() as usize;
    let start = i_exit.saturating_sub(back);
    Some(&path.states[start..i_exit])
}
