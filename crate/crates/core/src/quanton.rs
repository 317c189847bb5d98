//! Quanton states: one photon over `path ⊗ polarization`.
//!
//! A state is written as
//!
//! ```text
//! |ψ⟩ = √((1+D)/2) |0⟩|φ0⟩ + √((1−D)/2) e^{iα} |1⟩|φ1⟩
//! |φ1⟩ = (V |φ0⟩ + C e^{iβ} |φ0⊥⟩) / √(1−D²)
//! ```
//!
//! with `D² + V² + C² = 1`. [`build_state`] evaluates this map and
//! [`extract_params`] inverts it for any normalized 4-amplitude state.
//!
//! Amplitudes are stored in the order
//! `[path0⊗pol0, path0⊗pol1, path1⊗pol0, path1⊗pol1]`.

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::linalg::{self, cis, inner, norm_sq, perp, wrap_phase, Complex, Mat2, ZERO};

/// Default bound on `|‖ψ‖² − 1|`.
pub const TOL_NORM: f64 = 1e-12;
/// Default bound on `|D² + V² + C² − 1|`.
pub const TOL_TRIALITY: f64 = 1e-10;

// Path populations closer than this are a tie; input order is kept.
const PATH_TIE: f64 = 1e-12;
// Path-1 population at or below this is a particle on path 0.
const PARTICLE_P1: f64 = 1e-15;
// Amplitudes below this carry no usable phase.
const PHASE_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub norm: f64,
    pub triality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            norm: TOL_NORM,
            triality: TOL_TRIALITY,
        }
    }
}

/// Normalized pure state of one photon over path ⊗ polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector4 {
    amp: [Complex; 4],
}

impl StateVector4 {
    /// Wraps `amp`, rejecting it unless its squared norm is within [`TOL_NORM`] of 1.
    pub fn new(amp: [Complex; 4]) -> Result<Self> {
        Self::with_tolerance(amp, TOL_NORM)
    }

    pub fn with_tolerance(amp: [Complex; 4], tol: f64) -> Result<Self> {
        let state = Self::unchecked(amp)?;
        state.check_norm(tol)?;
        Ok(state)
    }

    /// Rescales any finite nonzero vector to unit norm.
    pub fn normalize(amp: [Complex; 4]) -> Result<Self> {
        let state = Self::unchecked(amp)?;
        let n = norm_sq(&amp).sqrt();
        if n == 0.0 {
            return Err(Error::Normalization {
                norm_sq: 0.0,
                tol: TOL_NORM,
            });
        }
        Ok(StateVector4 {
            amp: state.amp.map(|z| z / n),
        })
    }

    pub fn from_real(amp: [f64; 4]) -> Result<Self> {
        Self::new(amp.map(|x| Complex::new(x, 0.0)))
    }

    /// `|path⟩ ⊗ |pol⟩` for unit 2-vectors.
    pub fn product(path: [Complex; 2], pol: [Complex; 2]) -> Result<Self> {
        Self::new([
            path[0] * pol[0],
            path[0] * pol[1],
            path[1] * pol[0],
            path[1] * pol[1],
        ])
    }

    /// Particle on `path` with polarization `pol`.
    pub fn particle(path: usize, pol: [Complex; 2]) -> Result<Self> {
        let mut p = [ZERO; 2];
        p[path] = linalg::ONE;
        Self::product(p, pol)
    }

    fn unchecked(amp: [Complex; 4]) -> Result<Self> {
        if !linalg::all_finite(&amp) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(StateVector4 { amp })
    }

    pub fn check_norm(&self, tol: f64) -> Result<()> {
        let n = self.norm_sq();
        if (n - 1.0).abs() > tol {
            return Err(Error::Normalization { norm_sq: n, tol });
        }
        Ok(())
    }

    pub fn amplitudes(&self) -> &[Complex; 4] {
        &self.amp
    }

    pub fn amplitude(&self, path: usize, pol: usize) -> Complex {
        self.amp[2 * path + pol]
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.amp)
    }

    /// The (unnormalized) polarization vector attached to `path`.
    pub fn path_component(&self, path: usize) -> [Complex; 2] {
        [self.amp[2 * path], self.amp[2 * path + 1]]
    }

    /// `[p0, p1]`, the total probability on each arm.
    pub fn path_probabilities(&self) -> [f64; 2] {
        [
            norm_sq(&self.path_component(0)),
            norm_sq(&self.path_component(1)),
        ]
    }

    /// Relabels the two arms.
    pub fn swap_paths(&self) -> Self {
        let a = &self.amp;
        StateVector4 {
            amp: [a[2], a[3], a[0], a[1]],
        }
    }

    pub fn scale_phase(&self, phase: f64) -> Self {
        let u = cis(phase);
        StateVector4 {
            amp: self.amp.map(|z| z * u),
        }
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector4) -> Complex {
        inner(&self.amp, &other.amp)
    }

    /// Applies `path_op ⊗ pol_op`.
    pub fn apply_local(&self, path_op: &Mat2, pol_op: &Mat2) -> Self {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            let (pi, si) = (i / 2, i % 2);
            for (j, a) in self.amp.iter().enumerate() {
                let (pj, sj) = (j / 2, j % 2);
                *o += path_op.get(pi, pj) * pol_op.get(si, sj) * a;
            }
        }
        StateVector4 { amp: out }
    }

    /// Reduced operator on the path qubit, tracing out polarization.
    pub fn reduced_path(&self) -> Mat2 {
        let a0 = self.path_component(0);
        let a1 = self.path_component(1);
        Mat2::new(
            Complex::new(norm_sq(&a0), 0.0),
            inner(&a1, &a0),
            inner(&a0, &a1),
            Complex::new(norm_sq(&a1), 0.0),
        )
    }
}

/// An orthonormal polarization basis `{|φ0⟩, |φ0⊥⟩}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationBasis {
    pub phi0: [Complex; 2],
    pub phi0perp: [Complex; 2],
}

const BASIS_TOL: f64 = 1e-12;

impl PolarizationBasis {
    pub fn new(phi0: [Complex; 2], phi0perp: [Complex; 2]) -> Result<Self> {
        let b = PolarizationBasis { phi0, phi0perp };
        b.validate()?;
        Ok(b)
    }

    /// `{(1,0), (0,1)}`
    pub fn standard() -> Self {
        PolarizationBasis {
            phi0: [linalg::ONE, ZERO],
            phi0perp: [ZERO, linalg::ONE],
        }
    }

    /// Completes a unit vector to a basis with `φ0⊥ = (−φ0[1]*, φ0[0]*)`.
    pub fn from_phi0(phi0: [Complex; 2]) -> Result<Self> {
        Self::new(phi0, perp(phi0))
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.phi0[0],
            self.phi0[1],
            self.phi0perp[0],
            self.phi0perp[1],
        ];
        if !linalg::all_finite(&all) {
            return Err(Error::NonFinite("polarization basis"));
        }
        let n0 = norm_sq(&self.phi0);
        let n1 = norm_sq(&self.phi0perp);
        if (n0 - 1.0).abs() > BASIS_TOL || (n1 - 1.0).abs() > BASIS_TOL {
            return Err(Error::Basis(format!(
                "vectors are not unit norm (|φ0|² = {n0}, |φ0⊥|² = {n1})"
            )));
        }
        let ov = inner(&self.phi0, &self.phi0perp).norm();
        if ov >= BASIS_TOL {
            return Err(Error::Basis(format!(
                "vectors are not orthogonal (|⟨φ0|φ0⊥⟩| = {ov:e})"
            )));
        }
        Ok(())
    }

    /// Basis vectors as the columns of a unitary.
    pub fn as_matrix(&self) -> Mat2 {
        Mat2::from_columns(self.phi0, self.phi0perp)
    }
}

/// Multiplies `v` by the unit phase that makes its largest-magnitude component
/// real and positive (first component on ties). Returns the removed phase.
pub(crate) fn gauge_fix(v: [Complex; 2]) -> ([Complex; 2], f64) {
    let k = if v[1].norm() > v[0].norm() { 1 } else { 0 };
    let g = v[k].arg();
    let u = cis(-g);
    ([v[0] * u, v[1] * u], g)
}

/// The quintuple `(D, V, C, α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantonParams {
    pub d: f64,
    pub v: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl QuantonParams {
    pub fn new(d: f64, v: f64, c: f64, alpha: f64, beta: f64) -> Result<Self> {
        let p = QuantonParams {
            d,
            v,
            c,
            alpha,
            beta,
        };
        p.validate(TOL_TRIALITY)?;
        Ok(p)
    }

    /// `D = 1`: localized on path 0.
    pub fn particle() -> Self {
        QuantonParams {
            d: 1.0,
            v: 0.0,
            c: 0.0,
            alpha: 0.0,
            beta: 0.0,
        }
    }

    /// `V = 1`: equal superposition of both arms with a shared polarization.
    pub fn wave() -> Self {
        QuantonParams {
            d: 0.0,
            v: 1.0,
            c: 0.0,
            alpha: 0.0,
            beta: 0.0,
        }
    }

    /// `C = 1`: path and polarization maximally entangled.
    pub fn entanglon() -> Self {
        QuantonParams {
            d: 0.0,
            v: 0.0,
            c: 1.0,
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn triality_residual(&self) -> f64 {
        (self.d * self.d + self.v * self.v + self.c * self.c - 1.0).abs()
    }

    pub fn is_particle(&self) -> bool {
        self.d >= 1.0
    }

    pub fn validate(&self, tol_triality: f64) -> Result<()> {
        check_range("D", self.d, 0.0, 1.0)?;
        check_range("V", self.v, 0.0, 1.0)?;
        check_range("C", self.c, 0.0, 1.0)?;
        if !self.alpha.is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        if !self.beta.is_finite() {
            return Err(Error::NonFinite("beta"));
        }
        let residual = self.triality_residual();
        if residual > tol_triality {
            return Err(Error::Triality {
                residual,
                tol: tol_triality,
            });
        }
        Ok(())
    }
}

/// Output of [`extract_params`].
///
/// `build_state(params, basis)` reproduces the input up to the recorded path
/// relabeling and global phase; [`ExtractionResult::rebuild`] undoes both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionResult {
    pub params: QuantonParams,
    pub basis: PolarizationBasis,
    /// `|p0 − p1|` of the input.
    pub predictability: f64,
    /// The input had more weight on path 1, so the arms were relabeled.
    pub paths_swapped: bool,
    /// Global phase removed from the input, in `[0, 2π)`.
    pub global_phase: f64,
}

impl ExtractionResult {
    /// Reconstructs the original state exactly, including global phase and arm labels.
    pub fn rebuild(&self) -> Result<StateVector4> {
        let s = build_state(&self.params, &self.basis)?.scale_phase(self.global_phase);
        Ok(if self.paths_swapped {
            s.swap_paths()
        } else {
            s
        })
    }
}

pub fn build_state(params: &QuantonParams, basis: &PolarizationBasis) -> Result<StateVector4> {
    build_state_with(params, basis, &Tolerances::default())
}

pub fn build_state_with(
    params: &QuantonParams,
    basis: &PolarizationBasis,
    tol: &Tolerances,
) -> Result<StateVector4> {
    params.validate(tol.triality)?;
    basis.validate()?;

    let QuantonParams {
        d,
        v,
        c,
        alpha,
        beta,
    } = *params;
    let w0 = ((1.0 + d) / 2.0).sqrt();
    let path0 = basis.phi0.map(|z| z * w0);
    let path1 = if params.is_particle() {
        [ZERO; 2]
    } else {
        // √((1−D)/2) / √(1−D²) = 1 / √(2(1+D))
        let w1 = cis(alpha) / (2.0 * (1.0 + d)).sqrt();
        let cb = cis(beta) * c;
        [
            w1 * (basis.phi0[0] * v + basis.phi0perp[0] * cb),
            w1 * (basis.phi0[1] * v + basis.phi0perp[1] * cb),
        ]
    };
    let state = StateVector4::normalize([path0[0], path0[1], path1[0], path1[1]])?;
    state.check_norm(tol.norm)?;
    Ok(state)
}

pub fn extract_params(state: &StateVector4) -> Result<ExtractionResult> {
    extract_params_with(state, &Tolerances::default())
}

pub fn extract_params_with(state: &StateVector4, tol: &Tolerances) -> Result<ExtractionResult> {
    state.check_norm(tol.norm)?;
    let [p0_in, p1_in] = state.path_probabilities();
    let predictability = (p0_in - p1_in).abs().min(1.0);
    let paths_swapped = p1_in - p0_in > PATH_TIE;
    let s = if paths_swapped {
        state.swap_paths()
    } else {
        *state
    };

    let a0 = s.path_component(0);
    let a1 = s.path_component(1);
    let [p0, p1] = s.path_probabilities();

    let (phi0, global_phase) = gauge_fix(a0.map(|z| z / p0.sqrt()));
    let basis = PolarizationBasis::from_phi0(phi0)?;
    let global_phase = wrap_phase(global_phase);

    if p1 <= PARTICLE_P1 {
        return Ok(ExtractionResult {
            params: QuantonParams::particle(),
            basis,
            predictability,
            paths_swapped,
            global_phase,
        });
    }

    let d = (p0 - p1).abs().min(1.0);
    let v = (2.0 * inner(&a1, &a0).norm()).min(1.0);
    let c = concurrence_unchecked(&s);

    let u = cis(-global_phase);
    let w = a1.map(|z| z * u);
    let x = inner(&basis.phi0, &w);
    let y = inner(&basis.phi0perp, &w);
    let (alpha, beta) = match (x.norm() > PHASE_FLOOR, y.norm() > PHASE_FLOOR) {
        (true, true) => (x.arg(), y.arg() - x.arg()),
        (true, false) => (x.arg(), 0.0),
        (false, true) => (y.arg(), 0.0),
        (false, false) => (0.0, 0.0),
    };

    Ok(ExtractionResult {
        params: QuantonParams {
            d,
            v,
            c,
            alpha: wrap_phase(alpha),
            beta: wrap_phase(beta),
        },
        basis,
        predictability,
        paths_swapped,
        global_phase,
    })
}

/// Which-way predictability `|p0 − p1|`.
pub fn predictability(state: &StateVector4) -> Result<f64> {
    state.check_norm(TOL_NORM)?;
    let [p0, p1] = state.path_probabilities();
    Ok((p0 - p1).abs().min(1.0))
}

/// Pure-state concurrence `2|a00·a11 − a01·a10|`.
pub fn concurrence(state: &StateVector4) -> Result<f64> {
    state.check_norm(TOL_NORM)?;
    Ok(concurrence_unchecked(state))
}

fn concurrence_unchecked(state: &StateVector4) -> f64 {
    let a = state.amplitudes();
    (2.0 * (a[0] * a[3] - a[1] * a[2]).norm()).min(1.0)
}

/// `|D² + V² + C² − 1|` of the extracted parameters.
pub fn triality_residual(state: &StateVector4) -> Result<f64> {
    Ok(extract_params(state)?.params.triality_residual())
}
