//! Two-qubit XXZ Hamiltonian, its closed-form spectrum and the ground-state
//! phase diagram.
//!
//! ```text
//! H = ½ [ J σˣσˣ + J σʸσʸ + Jz σᶻσᶻ + (B + b) σᶻ₁ + (B − b) σᶻ₂ ]
//! ```

use crate::error::{Error, Result};
use crate::qmath::{self, Matrix4, Vector4, C64};
use crate::tol;

/// Couplings and fields of the two-site chain, all dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    j: f64,
    jz: f64,
    big_b: f64,
    b: f64,
    relaxed: bool,
}

fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteParameter { name, value })
    }
}

impl ModelParams {
    /// Validated constructor: all values finite and `B >= 0`.
    pub fn new(j: f64, jz: f64, big_b: f64, b: f64) -> Result<Self> {
        let p = Self::relaxed(j, jz, big_b, b)?;
        if big_b < 0.0 {
            return Err(Error::NegativeUniformField(big_b));
        }
        Ok(Self { relaxed: false, ..p })
    }

    /// Admits `B < 0`. Only meant for probing the `B → −B` symmetry; the
    /// returned value reports [`ModelParams::is_relaxed`].
    pub fn relaxed(j: f64, jz: f64, big_b: f64, b: f64) -> Result<Self> {
        Ok(Self {
            j: finite("J", j)?,
            jz: finite("Jz", jz)?,
            big_b: finite("B", big_b)?,
            b: finite("b", b)?,
            relaxed: true,
        })
    }

    /// Isotropic chain (`Jz = J`) with the doubled parameterization
    /// `J → 2J, B → 2B, b → 2b`, which absorbs the overall ½ of the
    /// Hamiltonian.
    pub fn xxx_rescaled(j: f64, big_b: f64, b: f64) -> Result<Self> {
        Self::new(2.0 * j, 2.0 * j, 2.0 * big_b, 2.0 * b)
    }

    pub fn j(&self) -> f64 {
        self.j
    }
    pub fn jz(&self) -> f64 {
        self.jz
    }
    /// Uniform field `B`.
    pub fn big_b(&self) -> f64 {
        self.big_b
    }
    /// Inhomogeneous field `b`.
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    fn rebuild(&self, j: f64, jz: f64, big_b: f64, b: f64) -> Result<Self> {
        if self.relaxed {
            Self::relaxed(j, jz, big_b, b)
        } else {
            Self::new(j, jz, big_b, b)
        }
    }

    pub fn with_j(&self, j: f64) -> Result<Self> {
        self.rebuild(j, self.jz, self.big_b, self.b)
    }
    pub fn with_jz(&self, jz: f64) -> Result<Self> {
        self.rebuild(self.j, jz, self.big_b, self.b)
    }
    pub fn with_big_b(&self, big_b: f64) -> Result<Self> {
        self.rebuild(self.j, self.jz, big_b, self.b)
    }
    pub fn with_b(&self, b: f64) -> Result<Self> {
        self.rebuild(self.j, self.jz, self.big_b, b)
    }

    /// `η = √(b² + J²)`.
    pub fn eta(&self) -> f64 {
        self.b.hypot(self.j)
    }

    pub(crate) fn require_xy_coupling(&self) -> Result<()> {
        if self.j == 0.0 {
            Err(Error::ZeroXyCoupling)
        } else {
            Ok(())
        }
    }
}

/// The Hamiltonian matrix in the standard basis `{|1,1⟩,|1,0⟩,|0,1⟩,|0,0⟩}`.
pub fn build_hamiltonian(p: &ModelParams) -> Matrix4 {
    let (j, jz, big_b, b) = (p.j, p.jz, p.big_b, p.b);
    Matrix4::from_real_rows([
        [(jz + 2.0 * big_b) / 2.0, 0.0, 0.0, 0.0],
        [0.0, (-jz + 2.0 * b) / 2.0, j, 0.0],
        [0.0, j, (-jz - 2.0 * b) / 2.0, 0.0],
        [0.0, 0.0, 0.0, (jz - 2.0 * big_b) / 2.0],
    ])
}

/// Analytic eigensystem.
///
/// `energies[k]` pairs with `eigenvectors[k]`, in the order
/// `E₁ (|0,0⟩), E₂ (|1,1⟩), E₃, E₄`; this is not sorted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedSpectrum {
    pub energies: [f64; 4],
    pub eta: f64,
    pub xi: f64,
    pub zeta: f64,
    pub lambda: f64,
    pub eigenvectors: [Vector4; 4],
}

impl ClosedSpectrum {
    pub fn sorted_energies(&self) -> [f64; 4] {
        let mut e = self.energies;
        e.sort_by(f64::total_cmp);
        e
    }
}

pub fn closed_spectrum(p: &ModelParams) -> Result<ClosedSpectrum> {
    p.require_xy_coupling()?;
    let eta = p.eta();
    // ξζ = −J²; take the non-cancelling root first.
    let (xi, zeta) = if p.b >= 0.0 {
        let zeta = p.b + eta;
        (-p.j * p.j / zeta, zeta)
    } else {
        let xi = p.b - eta;
        (xi, -p.j * p.j / xi)
    };
    let half_jz = p.jz / 2.0;
    let energies = [half_jz - p.big_b, half_jz + p.big_b, -half_jz - eta, -half_jz + eta];
    let mixed = |ratio: f64| -> Vector4 {
        qmath::normalized([
            C64::new(0.0, 0.0),
            C64::new(ratio, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ])
    };
    Ok(ClosedSpectrum {
        energies,
        eta,
        xi,
        zeta,
        lambda: xi / p.j,
        eigenvectors: [
            qmath::basis_vector(qmath::DOWN_DOWN),
            qmath::basis_vector(qmath::UP_UP),
            mixed(xi / p.j),
            mixed(zeta / p.j),
        ],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Ground state is the product state `|0,0⟩`.
    Disentangled,
    /// Ground state is the entangled `|φ₃⟩`.
    Entangled,
    /// Level crossing `E₁ = E₃`.
    Boundary,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::Disentangled => "Disentangled",
            Phase::Entangled => "Entangled",
            Phase::Boundary => "Boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStateReport {
    pub phase: Phase,
    pub ground_energy: f64,
    /// `None` on the phase boundary, where the ground space is degenerate.
    pub ground_concurrence: Option<f64>,
    /// `Jz` above which the ground state is entangled at this `B`.
    pub threshold_jz: f64,
    /// `B` above which the ground state loses its entanglement.
    pub threshold_b: f64,
}

/// Ground-state concurrence of `|φ₃⟩`, `2|λ| / (1 + λ²)`.
pub fn entangled_ground_concurrence(lambda: f64) -> f64 {
    2.0 * lambda.abs() / (1.0 + lambda * lambda)
}

pub fn ground_state(p: &ModelParams) -> Result<GroundStateReport> {
    let spec = closed_spectrum(p)?;
    let [e1, _, e3, _] = spec.energies;
    let gap = spec.eta - (p.big_b - p.jz);
    let phase = if gap.abs() <= tol::PHASE_BOUNDARY {
        Phase::Boundary
    } else if gap > 0.0 {
        Phase::Entangled
    } else {
        Phase::Disentangled
    };
    let ground_concurrence = match phase {
        Phase::Entangled => Some(entangled_ground_concurrence(spec.lambda)),
        Phase::Disentangled => Some(0.0),
        Phase::Boundary => None,
    };
    Ok(GroundStateReport {
        phase,
        ground_energy: e1.min(e3),
        ground_concurrence,
        threshold_jz: p.big_b - spec.eta,
        threshold_b: spec.eta + p.jz,
    })
}

/// Pure two-qubit state `a|0,0⟩ + b|0,1⟩ + c|1,0⟩ + d|1,1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl PureState {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { a, b, c, d }
    }

    /// Reads amplitudes from a standard-basis vector.
    pub fn from_vector(v: &Vector4) -> Self {
        Self {
            a: v[qmath::DOWN_DOWN],
            b: v[qmath::DOWN_UP],
            c: v[qmath::UP_DOWN],
            d: v[qmath::UP_UP],
        }
    }

    pub fn to_vector(&self) -> Vector4 {
        let mut v = [C64::new(0.0, 0.0); 4];
        v[qmath::DOWN_DOWN] = self.a;
        v[qmath::DOWN_UP] = self.b;
        v[qmath::UP_DOWN] = self.c;
        v[qmath::UP_UP] = self.d;
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }

    pub fn normalized(&self) -> Self {
        Self::from_vector(&qmath::normalized(self.to_vector()))
    }

    pub fn projector(&self) -> Matrix4 {
        let v = self.to_vector();
        Matrix4::outer(&v, &v)
    }
}

/// `C(ψ) = 2|ad − bc|`.
pub fn pure_concurrence(s: &PureState) -> Result<f64> {
    let n = s.norm_sqr();
    if (n - 1.0).abs() > tol::PURE_NORM {
        return Err(Error::NotNormalized(n));
    }
    Ok(2.0 * (s.a * s.d - s.b * s.c).norm())
}

/// Ground-state concurrence of the isotropic chain, `1/√(1 + δ²)` with
/// `δ = b/J`.
///
/// Equivalent to [`ground_state`] on [`ModelParams::xxx_rescaled`] inside
/// the entangled phase: with `u = √(1 + δ²)`, `|λ| = u − |δ|` and
/// `2(u − |δ|) / (1 + (u − |δ|)²) = 1/u`.
pub fn xxx_case_ground_concurrence(delta: f64) -> f64 {
    1.0 / delta.hypot(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::hermitian_eigen;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params(j: f64, jz: f64, big_b: f64, b: f64) -> ModelParams {
        ModelParams::new(j, jz, big_b, b).unwrap()
    }

    fn real_diag(m: &Matrix4) -> [f64; 4] {
        m.diagonal().map(|z| z.re)
    }

    #[test]
    fn hamiltonian_at_zero_fields() {
        let h = build_hamiltonian(&params(1.0, 0.0, 0.0, 0.0));
        assert_eq!(real_diag(&h), [0.0; 4]);
        assert_eq!(h[(1, 2)].re, 1.0);
        assert_eq!(h[(2, 1)].re, 1.0);
        assert_eq!(h.frobenius_norm(), 2f64.sqrt());
    }

    #[test]
    fn hamiltonian_entries() {
        let h = build_hamiltonian(&params(1.0, 0.4, 0.5, 0.2));
        let d = real_diag(&h);
        for (x, want) in d.iter().zip([0.7, 0.0, -0.4, -0.3]) {
            assert_abs_diff_eq!(*x, want, epsilon = 1e-15);
        }
        assert_eq!(h[(1, 2)].re, 1.0);
        assert!(h.hermitian_check().max_asymmetry == 0.0);
    }

    #[test]
    fn closed_spectrum_examples() {
        let s = closed_spectrum(&params(1.0, 0.4, 0.0, 0.0)).unwrap();
        for (e, want) in s.energies.iter().zip([0.2, 0.2, -1.2, 0.8]) {
            assert_abs_diff_eq!(*e, want, epsilon = 1e-15);
        }
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let phi3 = s.eigenvectors[2];
        assert_abs_diff_eq!(phi3[qmath::UP_DOWN].re, -r, epsilon = 1e-15);
        assert_abs_diff_eq!(phi3[qmath::DOWN_UP].re, r, epsilon = 1e-15);

        let s = closed_spectrum(&params(1.0, 0.0, 2.0, 0.0)).unwrap();
        assert_eq!(s.energies, [-2.0, 2.0, -1.0, 1.0]);
    }

    #[test]
    fn jacobi_reproduces_spectrum_of_example() {
        let eig = hermitian_eigen(&build_hamiltonian(&params(1.0, 0.4, 0.0, 0.0))).unwrap();
        for (e, want) in eig.values.iter().zip([-1.2, 0.2, 0.2, 0.8]) {
            assert_abs_diff_eq!(*e, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_coupling_is_rejected() {
        let p = params(0.0, 1.0, 0.0, 0.3);
        assert_eq!(closed_spectrum(&p), Err(Error::ZeroXyCoupling));
        assert_eq!(ground_state(&p), Err(Error::ZeroXyCoupling));
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            ModelParams::new(1.0, 0.0, -0.1, 0.0),
            Err(Error::NegativeUniformField(-0.1))
        );
        assert!(matches!(
            ModelParams::new(f64::NAN, 0.0, 0.0, 0.0),
            Err(Error::NonFiniteParameter { name: "J", .. })
        ));
        let relaxed = ModelParams::relaxed(1.0, 0.0, -0.1, 0.0).unwrap();
        assert!(relaxed.is_relaxed());
        assert!(relaxed.with_big_b(-2.0).is_ok());
        assert!(params(1.0, 0.0, 0.0, 0.0).with_big_b(-2.0).is_err());
    }

    #[test]
    fn ground_state_examples() {
        let g = ground_state(&params(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(g.phase, Phase::Entangled);
        assert_eq!(g.ground_energy, -1.0);
        assert_eq!(g.ground_concurrence, Some(1.0));

        let g = ground_state(&params(1.0, 0.0, 3.0, 0.0)).unwrap();
        assert_eq!(g.phase, Phase::Disentangled);
        assert_eq!(g.ground_energy, -3.0);
        assert_eq!(g.ground_concurrence, Some(0.0));

        let g = ground_state(&params(1.0, 0.4, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(g.threshold_b, 1.4, epsilon = 1e-15);
    }

    #[test]
    fn boundary_is_indeterminate() {
        let g = ground_state(&params(1.0, 0.4, 1.4, 0.0)).unwrap();
        assert_eq!(g.phase, Phase::Boundary);
        assert_eq!(g.ground_concurrence, None);
    }

    #[test]
    fn pure_concurrence_examples() {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(pure_concurrence(&PureState::new(one, zero, zero, zero)).unwrap(), 0.0);
        let bell = PureState::new(zero, C64::new(r, 0.0), C64::new(-r, 0.0), zero);
        assert_abs_diff_eq!(pure_concurrence(&bell).unwrap(), 1.0, epsilon = 1e-15);
        assert!(matches!(
            pure_concurrence(&PureState::new(one, one, zero, zero)),
            Err(Error::NotNormalized(_))
        ));

        // λ = 0.5 − √1.25 = −0.6180339887…, C = 2|λ|/(1+λ²) = 0.8944271909999159.
        let s = closed_spectrum(&params(1.0, 0.0, 0.0, 0.5)).unwrap();
        assert_abs_diff_eq!(s.lambda, -0.6180339887498949, epsilon = 1e-15);
        let phi3 = PureState::from_vector(&s.eigenvectors[2]);
        assert_abs_diff_eq!(pure_concurrence(&phi3).unwrap(), 0.8944271909999159, epsilon = 1e-14);
    }

    #[test]
    fn xxx_case_examples() {
        assert_eq!(xxx_case_ground_concurrence(0.0), 1.0);
        // 1/√(1 + 0.458²) = 0.909179577208086…
        assert_abs_diff_eq!(xxx_case_ground_concurrence(0.458), 0.9091795772080864, epsilon = 1e-15);
        for j in [-1.0, 1.0] {
            for b in [0.0, 0.1, 0.458, -0.7, 2.5] {
                if j < 0.0 && b == 0.0 {
                    // Ferromagnetic triplet is degenerate at B = b = 0.
                    continue;
                }
                let g = ground_state(&ModelParams::xxx_rescaled(j, 0.0, b).unwrap()).unwrap();
                assert_eq!(g.phase, Phase::Entangled);
                assert_abs_diff_eq!(
                    g.ground_concurrence.unwrap(),
                    xxx_case_ground_concurrence(b / j),
                    epsilon = 1e-12
                );
            }
        }
    }

    fn arb_params() -> impl Strategy<Value = ModelParams> {
        (0.05f64..3.0, any::<bool>(), -3.0f64..3.0, 0.0f64..3.0, -3.0f64..3.0)
            .prop_map(|(j, neg, jz, big_b, b)| params(if neg { -j } else { j }, jz, big_b, b))
    }

    proptest! {
        #[test]
        fn hamiltonian_is_traceless(p in arb_params()) {
            prop_assert!(build_hamiltonian(&p).trace().norm() <= 1e-15);
        }

        #[test]
        fn spectrum_invariants(p in arb_params()) {
            let s = closed_spectrum(&p).unwrap();
            let [e1, e2, e3, e4] = s.energies;
            prop_assert!(s.eta >= p.j().abs());
            prop_assert!((s.xi * s.zeta + p.j() * p.j()).abs() <= 1e-12);
            prop_assert!((s.zeta - s.xi - 2.0 * s.eta).abs() <= 1e-12);
            prop_assert!(e3 <= e4);
            prop_assert!((e1 + e2 - p.jz()).abs() <= 1e-12);
            prop_assert!((e3 + e4 + p.jz()).abs() <= 1e-12);
            let h = build_hamiltonian(&p);
            for (k, v) in s.eigenvectors.iter().enumerate() {
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                prop_assert!((norm - 1.0).abs() <= 1e-12);
                let hv = h.apply(v);
                let err = (0..4).map(|i| (hv[i] - v[i] * s.energies[k]).norm()).fold(0.0, f64::max);
                prop_assert!(err <= 1e-10);
            }
        }

        #[test]
        fn energies_are_even_in_j(p in arb_params()) {
            let flipped = closed_spectrum(&p.with_j(-p.j()).unwrap()).unwrap();
            prop_assert_eq!(closed_spectrum(&p).unwrap().energies, flipped.energies);
        }

        #[test]
        fn ground_concurrence_is_even_in_b(p in arb_params()) {
            let a = ground_state(&p).unwrap();
            let b = ground_state(&p.with_b(-p.b()).unwrap()).unwrap();
            if let (Some(x), Some(y)) = (a.ground_concurrence, b.ground_concurrence) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }

        #[test]
        fn eq8_matches_pure_state_formula(p in arb_params()) {
            let s = closed_spectrum(&p).unwrap();
            let phi3 = PureState::from_vector(&s.eigenvectors[2]);
            let direct = pure_concurrence(&phi3).unwrap();
            prop_assert!((direct - entangled_ground_concurrence(s.lambda)).abs() <= 1e-12);
        }

        #[test]
        fn ground_concurrence_does_not_depend_on_jz(
            j in 0.05f64..3.0, b in -3.0f64..3.0, jz1 in -1.0f64..3.0, jz2 in -1.0f64..3.0,
        ) {
            // B = 0 keeps both points in the entangled phase for Jz > −η.
            let a = ground_state(&params(j, jz1, 0.0, b)).unwrap();
            let c = ground_state(&params(j, jz2, 0.0, b)).unwrap();
            prop_assume!(a.phase == Phase::Entangled && c.phase == Phase::Entangled);
            prop_assert_eq!(a.ground_concurrence, c.ground_concurrence);
        }

        #[test]
        fn threshold_field_is_a_level_crossing(p in arb_params()) {
            let bf = ground_state(&p).unwrap().threshold_b;
            prop_assume!(bf >= 0.0);
            let s = closed_spectrum(&p.with_big_b(bf).unwrap()).unwrap();
            prop_assert!((s.energies[0] - s.energies[2]).abs() <= 1e-12);
        }
    }
}
