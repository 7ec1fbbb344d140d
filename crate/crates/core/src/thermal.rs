//! Gibbs states `ρ = e^(−H/T) / Z` and their concurrence.
//!
//! Two independent constructions of the Gibbs state are provided: the
//! closed form built from the analytic spectrum and a spectral sum over the
//! Jacobi eigensystem. Concurrence is available through the generic Wootters
//! construction, the X-state shortcut, and the analytic sign function.
//!
//! Boltzmann weights are always formed as `e^(−(Eₖ − E_min)/T)` so every
//! weight lies in `(0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, closed_spectrum, ModelParams};
use crate::qmath::{self, hermitian_eigen, psd_sqrt, singular_values, Matrix4, SpinFlipOperator, C64};
use crate::tol;

/// Temperature in units where `k = 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::NonPositiveTemperature(t));
        }
        if !t.is_finite() {
            return Err(Error::NonFiniteParameter { name: "T", value: t });
        }
        Ok(Self(t))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    fn guarded(&self) -> Result<f64> {
        if self.0 < tol::MIN_TEMPERATURE {
            Err(Error::Overflow(self.0))
        } else {
            Ok(self.0)
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix4,
}

impl DensityMatrix {
    /// Validates the density-matrix invariants.
    pub fn new(matrix: Matrix4) -> Result<Self> {
        let check = matrix.hermitian_check();
        if check.max_asymmetry > tol::DENSITY {
            return Err(Error::InvalidDensityMatrix(format!(
                "asymmetry {:e}",
                check.max_asymmetry
            )));
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > tol::DENSITY {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace}")));
        }
        let min = hermitian_eigen(&matrix)
            .map_err(|e| Error::InvalidDensityMatrix(e.to_string()))?
            .values[0];
        if min < -tol::DENSITY {
            return Err(Error::InvalidDensityMatrix(format!("eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_trusted(matrix: Matrix4) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.matrix
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eigen(&self.matrix)?.values[0])
    }

    /// `ρ̃ = S ρ* S`.
    pub fn spin_flipped(&self) -> Matrix4 {
        let s = SpinFlipOperator::matrix();
        s * self.matrix.conj() * s
    }
}

/// Scalars of the closed-form Gibbs state.
///
/// `z`, `m`, `n` and `s` are unscaled and overflow to infinity at very low
/// temperature; `log_z` stays finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GibbsDiagnostics {
    pub z: f64,
    pub log_z: f64,
    pub m: f64,
    pub n: f64,
    pub s: f64,
}

/// Shifted Boltzmann weights of the closed-form energies `E₁..E₄`.
struct Weights {
    w: [f64; 4],
    sum: f64,
    e_min: f64,
}

fn weights(energies: &[f64; 4], t: f64) -> Weights {
    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let w = energies.map(|e| (-(e - e_min) / t).exp());
    Weights {
        w,
        sum: w.iter().sum(),
        e_min,
    }
}

pub fn gibbs_closed(p: &ModelParams, t: Temperature) -> Result<(DensityMatrix, GibbsDiagnostics)> {
    let spec = closed_spectrum(p)?;
    let t = t.guarded()?;
    let eta = spec.eta;
    let Weights {
        w: [w1, w2, w3, w4],
        sum,
        e_min,
    } = weights(&spec.energies, t);

    // e^(Jz/2T)·cosh(η/T) and e^(Jz/2T)·sinh(η/T), both scaled by e^(E_min/T).
    let ch = 0.5 * (w3 + w4);
    let sh = 0.5 * (w3 - w4);
    let bb = p.b() / eta;
    let jj = p.j() / eta;

    let mut rho = Matrix4::zero();
    rho[(qmath::UP_UP, qmath::UP_UP)] = C64::new(w2 / sum, 0.0);
    rho[(1, 1)] = C64::new((ch - bb * sh) / sum, 0.0);
    rho[(2, 2)] = C64::new((ch + bb * sh) / sum, 0.0);
    rho[(qmath::DOWN_DOWN, qmath::DOWN_DOWN)] = C64::new(w1 / sum, 0.0);
    rho[(1, 2)] = C64::new(-jj * sh / sum, 0.0);
    rho[(2, 1)] = rho[(1, 2)];

    let log_z = -e_min / t + sum.ln();
    let x = eta / t;
    let diag = GibbsDiagnostics {
        z: log_z.exp(),
        log_z,
        m: x.cosh(),
        n: bb * x.sinh(),
        s: (p.jz() / (2.0 * t)).exp() * jj * x.sinh(),
    };
    Ok((DensityMatrix::from_trusted(rho), diag))
}

/// Gibbs state from the numerical eigensystem of the Hamiltonian. Accepts
/// `J = 0`.
pub fn gibbs_spectral(p: &ModelParams, t: Temperature) -> Result<DensityMatrix> {
    let t = t.guarded()?;
    let eig = hermitian_eigen(&build_hamiltonian(p))?;
    let e_min = eig.values[0];
    let sum: f64 = eig.values.iter().map(|e| (-(e - e_min) / t).exp()).sum();
    let rho = eig.map_spectrum(|e| (-(e - e_min) / t).exp() / sum);
    Ok(DensityMatrix::from_trusted(rho))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConcurrenceMethod {
    GenericWootters,
    XStateShortcut,
    SignFunction,
}

impl ConcurrenceMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConcurrenceMethod::GenericWootters => "GenericWootters",
            ConcurrenceMethod::XStateShortcut => "XStateShortcut",
            ConcurrenceMethod::SignFunction => "SignFunction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult {
    pub value: f64,
    /// Square roots of the eigenvalues of `ρρ̃`, descending.
    pub wootters_roots: [f64; 4],
    pub method: ConcurrenceMethod,
}

fn from_roots(mut roots: [f64; 4], method: ConcurrenceMethod) -> ConcurrenceResult {
    roots.sort_by(|a, b| b.total_cmp(a));
    let value = (2.0 * roots[0] - roots.iter().sum::<f64>()).clamp(0.0, 1.0);
    ConcurrenceResult {
        value,
        wootters_roots: roots,
        method,
    }
}

/// Eigenvalues of the Hermitian similarity `√ρ ρ̃ √ρ`, descending, with
/// roundoff negatives in `[−PSD_CLAMP, 0)` clamped to zero.
///
/// These are the squares of the Wootters roots. Taking their square roots
/// loses half the significant digits for tiny eigenvalues, so
/// [`wootters_concurrence`] works with singular values instead.
pub fn wootters_spectrum(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let sqrt = psd_sqrt(rho.matrix()).map_err(|e| Error::InvalidDensityMatrix(e.to_string()))?;
    let m = sqrt * rho.spin_flipped() * sqrt;
    let eig = hermitian_eigen(&m)?;
    let mut out = [0.0; 4];
    for (k, &mu) in eig.values.iter().rev().enumerate() {
        if mu < -tol::PSD_CLAMP {
            return Err(Error::InvalidDensityMatrix(format!("R has eigenvalue {mu:e}")));
        }
        out[k] = mu.max(0.0);
    }
    Ok(out)
}

/// Concurrence of an arbitrary two-qubit state.
///
/// The Wootters roots are the singular values of `G = √ρ · S · conj(√ρ)`:
/// `G G† = √ρ ρ̃ √ρ`, which is similar to `ρρ̃`.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    let sqrt = psd_sqrt(rho.matrix()).map_err(|e| Error::InvalidDensityMatrix(e.to_string()))?;
    let g = sqrt * SpinFlipOperator::matrix() * sqrt.conj();
    let roots = singular_values(&g)?;
    Ok(from_roots(roots, ConcurrenceMethod::GenericWootters))
}

const X_PATTERN_STRAYS: [(usize, usize); 8] = [(0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (3, 1), (2, 3), (3, 2)];

/// Closed-form concurrence for states supported on the diagonal and the
/// anti-diagonal, `2·max(0, |ρ₂₃| − √(ρ₁₁ρ₄₄), |ρ₁₄| − √(ρ₂₂ρ₃₃))`.
///
/// The corner coherences `ρ₁₄` must vanish (within [`tol::X_PATTERN`]) as
/// they do for every Gibbs state of this model.
pub fn xstate_concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    let m = rho.matrix();
    for (row, col) in X_PATTERN_STRAYS.into_iter().chain([(0, 3), (3, 0)]) {
        let magnitude = m[(row, col)].norm();
        if magnitude > tol::X_PATTERN {
            return Err(Error::NotXState { row, col, magnitude });
        }
    }
    let d = m.diagonal().map(|z| z.re.max(0.0));
    let inner = m[(1, 2)].norm();
    let outer = m[(0, 3)].norm();
    let inner_geo = (d[1] * d[2]).sqrt();
    let outer_geo = (d[0] * d[3]).sqrt();
    let roots = [
        inner_geo + inner,
        (inner_geo - inner).abs(),
        outer_geo + outer,
        (outer_geo - outer).abs(),
    ];
    let mut result = from_roots(roots, ConcurrenceMethod::XStateShortcut);
    result.value = (2.0 * (inner - outer_geo).max(outer - inner_geo).max(0.0)).min(1.0);
    Ok(result)
}

fn ln_sinh(x: f64) -> f64 {
    if x < 1.0 {
        x.sinh().ln()
    } else {
        x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
    }
}

/// `ln(g + 1) = Jz/T + ln(|J|/η) + ln sinh(η/T)`.
fn log_sign_offset(p: &ModelParams, t: f64) -> f64 {
    let eta = p.eta();
    p.jz() / t + (p.j().abs() / eta).ln() + ln_sinh(eta / t)
}

/// Sign function `g = e^(Jz/T)·(|J|/η)·sinh(η/T) − 1`.
///
/// For the Gibbs state `|ρ₂₃|·Z = e^(Jz/2T)·|J|·sinh(η/T)/η` and
/// `√(ρ₁₁ρ₄₄)·Z = e^(−Jz/2T)`, so the thermal concurrence is
/// `2·max(0, g)·e^(−Jz/2T)/Z` and is positive exactly when `g > 0`.
/// `B` drops out.
pub fn concurrence_sign(p: &ModelParams, t: Temperature) -> Result<f64> {
    p.require_xy_coupling()?;
    Ok(log_sign_offset(p, t.value()).exp_m1())
}

/// Thermal concurrence evaluated from `g` and the Boltzmann weights alone,
/// without forming the density matrix.
pub fn sign_function_concurrence(p: &ModelParams, t: Temperature) -> Result<ConcurrenceResult> {
    let spec = closed_spectrum(p)?;
    let t = t.guarded()?;
    let Weights {
        w: [_, _, w3, w4],
        sum,
        e_min,
    } = weights(&spec.energies, t);
    let log_geo = -(p.jz() / 2.0 - e_min) / t;
    let geo = log_geo.exp();
    let coherence = (log_sign_offset(p, t) + log_geo).exp() / sum;

    let populations = (coherence * coherence + w3 * w4 / (sum * sum)).sqrt();
    let geo = geo / sum;
    let mut result = from_roots(
        [populations + coherence, populations - coherence, geo, geo],
        ConcurrenceMethod::SignFunction,
    );
    result.value = (2.0 * (coherence - geo).max(0.0)).min(1.0);
    Ok(result)
}

/// Thermal concurrence together with the Gibbs diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalConcurrence {
    pub concurrence: ConcurrenceResult,
    /// The sign function `g`; absent for `J = 0`.
    pub sign: Option<f64>,
    /// Closed-form diagnostics; absent for `J = 0`.
    pub gibbs: Option<GibbsDiagnostics>,
}

impl ThermalConcurrence {
    pub fn value(&self) -> f64 {
        self.concurrence.value
    }
}

pub fn thermal_concurrence(p: &ModelParams, t: Temperature) -> Result<ThermalConcurrence> {
    let (rho, gibbs, sign) = if p.j() == 0.0 {
        (gibbs_spectral(p, t)?, None, None)
    } else {
        let (rho, diag) = gibbs_closed(p, t)?;
        (rho, Some(diag), Some(concurrence_sign(p, t)?))
    };
    let concurrence = match xstate_concurrence(&rho) {
        Ok(c) => c,
        Err(Error::NotXState { .. }) => wootters_concurrence(&rho)?,
        Err(e) => return Err(e),
    };
    Ok(ThermalConcurrence {
        concurrence,
        sign,
        gibbs,
    })
}
