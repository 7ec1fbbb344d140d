//! Seeded oracle-equivalence and symmetry checks over random draws.
//!
//! Draws come from a single SplitMix64 stream (`rand_xoshiro::SplitMix64`,
//! seeded with `seed_from_u64(seed)`), consumed strictly in sample order:
//! `|J|`, the sign of `J`, `Jz`, `B`, `b` and `T`, then eight uniforms for
//! the pure-state amplitudes. Each sample is then evaluated independently,
//! so the report does not depend on the execution mode.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{build_hamiltonian, closed_spectrum, pure_concurrence, ModelParams, PureState};
use crate::qmath::hermitian_eigen;
use crate::sweep::{map_indices, Execution, PointParams};
use crate::thermal::{
    concurrence_sign, gibbs_closed, gibbs_spectral, thermal_concurrence, wootters_concurrence, xstate_concurrence,
    DensityMatrix, Temperature,
};

pub const DEFAULT_SEED: u64 = 42;

/// Sampling box for model points.
pub const J_RANGE: (f64, f64) = (0.05, 3.0);
pub const JZ_MAX: f64 = 3.0;
pub const B_MAX: f64 = 3.0;
pub const T_RANGE: (f64, f64) = (0.05, 5.0);

/// Uniform fields probed for sign invariance.
pub const SIGN_FIELDS: [f64; 4] = [0.0, 1.0, 2.0, 5.0];
/// Grid step of the monotonicity scan `B ∈ {0, 0.25, …, 3}`.
pub const MONOTONE_STEP: f64 = 0.25;
const MONOTONE_STEPS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    Spectrum,
    Gibbs,
    GibbsTrace,
    GibbsPositivity,
    WoottersVsXState,
    PureStates,
    BSymmetry,
    JParity,
    BSignInvariance,
    BMonotonicity,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Spectrum,
        Suite::Gibbs,
        Suite::GibbsTrace,
        Suite::GibbsPositivity,
        Suite::WoottersVsXState,
        Suite::PureStates,
        Suite::BSymmetry,
        Suite::JParity,
        Suite::BSignInvariance,
        Suite::BMonotonicity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Spectrum => "spectrum_closed_vs_jacobi",
            Suite::Gibbs => "gibbs_closed_vs_spectral",
            Suite::GibbsTrace => "gibbs_trace",
            Suite::GibbsPositivity => "gibbs_min_eigenvalue",
            Suite::WoottersVsXState => "wootters_vs_xstate",
            Suite::PureStates => "pure_state_wootters",
            Suite::BSymmetry => "b_symmetry",
            Suite::JParity => "j_parity",
            Suite::BSignInvariance => "big_b_sign_invariance",
            Suite::BMonotonicity => "big_b_monotonicity",
        }
    }

    /// Pass threshold on the suite's maximum error.
    pub fn tolerance(&self) -> f64 {
        match self {
            Suite::Spectrum | Suite::Gibbs | Suite::WoottersVsXState | Suite::PureStates => 1e-10,
            Suite::GibbsTrace | Suite::GibbsPositivity | Suite::BSymmetry | Suite::JParity | Suite::BMonotonicity => {
                1e-12
            }
            Suite::BSignInvariance => 0.0,
        }
    }
}

/// One random draw: a model point and an unrelated pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub point: PointParams,
    pub state: PureState,
}

/// Where a suite's largest error occurred.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WorstCase {
    Point(PointParams),
    /// Amplitudes on |00⟩, |01⟩, |10⟩, |11⟩ as `[re, im]`.
    PureState([[f64; 2]; 4]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub worst: Option<WorstCase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn suite(&self, suite: Suite) -> &SuiteReport {
        self.suites
            .iter()
            .find(|s| s.name == suite.name())
            .expect("every suite is reported")
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteReport> {
        self.suites.iter().filter(|s| !s.passed)
    }
}

fn uniform(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

fn draw_point(rng: &mut SplitMix64) -> PointParams {
    let magnitude = uniform(rng, J_RANGE.0, J_RANGE.1);
    let j = if rng.random::<bool>() { magnitude } else { -magnitude };
    PointParams {
        j,
        jz: uniform(rng, -JZ_MAX, JZ_MAX),
        big_b: uniform(rng, 0.0, B_MAX),
        b: uniform(rng, -B_MAX, B_MAX),
        t: uniform(rng, T_RANGE.0, T_RANGE.1),
    }
}

fn draw_state(rng: &mut SplitMix64) -> PureState {
    let mut amp = || Complex64::new(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    let (a, b, c, d) = (amp(), amp(), amp(), amp());
    PureState::new(a, b, c, d).normalized()
}

/// The first `samples` draws of the stream seeded by `seed`.
pub fn draws(seed: u64, samples: usize) -> Vec<Draw> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let point = draw_point(&mut rng);
            let state = draw_state(&mut rng);
            Draw { point, state }
        })
        .collect()
}

fn max_entry_diff(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    a.matrix().max_abs_diff(b.matrix())
}

fn concurrence_at(p: &ModelParams, t: Temperature) -> Result<f64> {
    Ok(thermal_concurrence(p, t)?.value())
}

/// Errors of every suite, in [`Suite::ALL`] order, for one draw.
fn evaluate(draw: &Draw) -> Result<[f64; 10]> {
    let pt = draw.point;
    let p = ModelParams::new(pt.j, pt.jz, pt.big_b, pt.b)?;
    let t = Temperature::new(pt.t)?;

    let closed = closed_spectrum(&p)?.sorted_energies();
    let numeric = hermitian_eigen(&build_hamiltonian(&p))?.values;
    let spectrum = closed
        .iter()
        .zip(&numeric)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let (rho, _) = gibbs_closed(&p, t)?;
    let gibbs = max_entry_diff(&rho, &gibbs_spectral(&p, t)?);
    let trace = (rho.matrix().trace().re - 1.0).abs();
    let positivity = (-rho.min_eigenvalue()?).max(0.0);

    let routes = (wootters_concurrence(&rho)?.value - xstate_concurrence(&rho)?.value).abs();
    let pure = (wootters_concurrence(&DensityMatrix::new(draw.state.projector())?)?.value
        - pure_concurrence(&draw.state)?)
    .abs();

    let c = concurrence_at(&p, t)?;
    let b_symmetry = (c - concurrence_at(&p.with_b(-pt.b)?, t)?).abs();
    let j_parity = (c - concurrence_at(&p.with_j(-pt.j)?, t)?).abs();

    let positive = concurrence_sign(&p, t)? > 0.0;
    let mut sign_flip: f64 = 0.0;
    for big_b in SIGN_FIELDS {
        if (concurrence_at(&p.with_big_b(big_b)?, t)? > 0.0) != positive {
            sign_flip = 1.0;
        }
    }

    let mut rise: f64 = 0.0;
    let mut prev = concurrence_at(&p.with_big_b(0.0)?, t)?;
    for k in 1..=MONOTONE_STEPS {
        let next = concurrence_at(&p.with_big_b(k as f64 * MONOTONE_STEP)?, t)?;
        rise = rise.max(next - prev);
        prev = next;
    }

    Ok([
        spectrum, gibbs, trace, positivity, routes, pure, b_symmetry, j_parity, sign_flip, rise,
    ])
}

fn state_amplitudes(s: &PureState) -> [[f64; 2]; 4] {
    let v = [s.a, s.b, s.c, s.d];
    v.map(|z| [z.re, z.im])
}

pub fn run_verify(seed: u64, samples: usize) -> Result<VerifyReport> {
    run_verify_with(seed, samples, Execution::default())
}

pub fn run_verify_with(seed: u64, samples: usize, exec: Execution) -> Result<VerifyReport> {
    let draws = draws(seed, samples);
    let errors = map_indices(draws.len(), exec, |i| evaluate(&draws[i]));

    let mut max = [0.0_f64; 10];
    let mut worst: [Option<usize>; 10] = [None; 10];
    for (i, row) in errors.into_iter().enumerate() {
        for (k, e) in row?.into_iter().enumerate() {
            if worst[k].is_none() || e > max[k] {
                max[k] = e;
                worst[k] = Some(i);
            }
        }
    }

    let suites: Vec<SuiteReport> = Suite::ALL
        .iter()
        .enumerate()
        .map(|(k, suite)| {
            let location = worst[k].map(|i| match suite {
                Suite::PureStates => WorstCase::PureState(state_amplitudes(&draws[i].state)),
                _ => WorstCase::Point(draws[i].point),
            });
            SuiteReport {
                name: suite.name().to_string(),
                samples,
                max_error: max[k],
                tolerance: suite.tolerance(),
                passed: max[k] <= suite.tolerance(),
                worst: location,
            }
        })
        .collect();
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        seed,
        samples,
        suites,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_stay_in_the_sampling_box() {
        for d in draws(7, 2000) {
            let p = d.point;
            assert!((J_RANGE.0..=J_RANGE.1).contains(&p.j.abs()));
            assert!(p.jz.abs() <= JZ_MAX && p.b.abs() <= B_MAX);
            assert!((0.0..=B_MAX).contains(&p.big_b));
            assert!((T_RANGE.0..=T_RANGE.1).contains(&p.t));
            assert!((d.state.norm_sqr() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn draws_are_a_prefix_stream() {
        let long = draws(3, 20);
        assert_eq!(&long[..5], &draws(3, 5)[..]);
        assert_ne!(draws(3, 1), draws(4, 1));
    }

    #[test]
    fn single_sample_report() {
        let r = run_verify(DEFAULT_SEED, 1).unwrap();
        assert_eq!(r.suites.len(), Suite::ALL.len());
        assert!(r.suites.iter().all(|s| s.samples == 1 && s.worst.is_some()));
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn zero_samples_report_nothing() {
        let r = run_verify(DEFAULT_SEED, 0).unwrap();
        assert!(r.suites.iter().all(|s| s.worst.is_none() && s.max_error == 0.0));
    }

    #[test]
    fn report_is_deterministic() {
        let a = run_verify_with(11, 300, Execution::Sequential).unwrap();
        assert!(a.passed, "{:?}", a.failures().collect::<Vec<_>>());
        assert_eq!(a, run_verify(11, 300).unwrap());
    }
}
