//! Seeded curvature sampling and the pass/fail flatness report.
//!
//! Sample points are drawn with real and imaginary parts uniform in
//! `[−2, 2]` (for both chart coordinates), deterministically from a
//! ChaCha stream, and rejected whenever the web is degenerate there
//! ([`NumericError::NearDiscriminant`]) or the finite-difference stencil
//! cannot track its branches ([`NumericError::RootTrackingFailure`]) —
//! both symptoms of the same proximity.  Acceptance is decided by draw
//! order, so the report is bit-identical for a given seed regardless of
//! execution mode or thread count.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{web4_curvature, CurvatureSample, DualPoint, EmbeddedWeb};
use crate::error::NumericError;
use crate::exec::{map_collect, ExecMode};

// ---- Configuration and report ----

/// Sampling parameters.  The defaults match the command-line defaults:
/// 25 samples, seed 0, flatness tolerance `1e−6`, difference step `1e−4`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SampleConfig {
    /// Number of accepted samples required.
    pub samples: usize,
    /// RNG seed; equal seeds give bit-identical reports.
    pub seed: u64,
    /// Median `|K|` below this passes as flat.
    pub tolerance: f64,
    /// Finite-difference step.
    pub step: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 25, seed: 0, tolerance: 1e-6, step: 1e-4 }
    }
}

/// Outcome of a sampling run.
#[derive(Debug, Clone, Serialize)]
pub struct FlatnessReport {
    /// Accepted samples, in draw order.
    pub samples: Vec<CurvatureSample>,
    /// Median of `|K|` over the accepted samples.
    pub median_abs_k: f64,
    /// Maximum of `|K|` over the accepted samples.
    pub max_abs_k: f64,
    /// Points rejected near the discriminant before `samples` were accepted.
    pub rejected: usize,
    /// `median_abs_k < tolerance`.
    pub pass: bool,
}

// ---- Sampling ----

/// Samples the 4-web curvature of `web` at `cfg.samples` random points and
/// reports median/max `|K|`.  Fails with [`NumericError::SamplingExhausted`]
/// after `100·samples` rejections.
pub fn flatness_sample(
    web: &EmbeddedWeb,
    cfg: &SampleConfig,
    mode: ExecMode,
) -> Result<FlatnessReport, NumericError> {
    assert!(cfg.samples >= 1, "at least one sample");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut draw = || {
        let mut f = || rng.gen_range(-2.0..2.0);
        let (pr, pi, qr, qi) = (f(), f(), f(), f());
        DualPoint::new(Complex64::new(pr, pi), Complex64::new(qr, qi))
    };
    let limit = 100 * cfg.samples;
    let mut accepted: Vec<CurvatureSample> = Vec::with_capacity(cfg.samples);
    let mut rejected = 0usize;
    while accepted.len() < cfg.samples {
        let want = cfg.samples - accepted.len();
        let batch: Vec<DualPoint> = (0..want).map(|_| draw()).collect();
        let results = map_collect(mode, batch, |z| web4_curvature(web, z, cfg.step));
        for r in results {
            match r {
                Ok(s) => accepted.push(s),
                Err(NumericError::NearDiscriminant)
                | Err(NumericError::RootTrackingFailure)
                | Err(NumericError::RootFindingFailure) => {
                    rejected += 1;
                    if rejected >= limit {
                        return Err(NumericError::SamplingExhausted(limit));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    accepted.truncate(cfg.samples);
    let mut mags: Vec<f64> = accepted.iter().map(|s| s.k.norm()).collect();
    mags.sort_by(|a, b| a.partial_cmp(b).expect("finite curvature"));
    let median = if mags.len() % 2 == 1 {
        mags[mags.len() / 2]
    } else {
        0.5 * (mags[mags.len() / 2 - 1] + mags[mags.len() / 2])
    };
    let max = *mags.last().expect("at least one sample");
    Ok(FlatnessReport {
        samples: accepted,
        median_abs_k: median,
        max_abs_k: max,
        rejected,
        pass: median < cfg.tolerance,
    })
}
