//! Small fixed-size complex linear algebra: 2-vectors and 2×2 matrices.

use num_complex::Complex64;

pub type Complex = Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);

/// `⟨a|b⟩`, antilinear in the first argument.
pub fn inner(a: &[Complex], b: &[Complex]) -> Complex {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sq(a: &[Complex]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub fn all_finite(a: &[Complex]) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// The orthogonal complement of a unit 2-vector, `(-b*, a*)`.
pub fn perp(v: [Complex; 2]) -> [Complex; 2] {
    [-v[1].conj(), v[0].conj()]
}

/// Unit phase `e^{iθ}`.
pub fn cis(theta: f64) -> Complex {
    Complex::from_polar(1.0, theta)
}

/// Angle reduced to `[0, 2π)`.
pub fn wrap_phase(theta: f64) -> f64 {
    let w = theta.rem_euclid(std::f64::consts::TAU);
    // rem_euclid can round up to exactly TAU
    if w >= std::f64::consts::TAU {
        0.0
    } else {
        w
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = wrap_phase(a - b);
    d.min(std::f64::consts::TAU - d)
}

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex; 2]; 2]);

impl Mat2 {
    pub const fn new(m00: Complex, m01: Complex, m10: Complex, m11: Complex) -> Self {
        Mat2([[m00, m01], [m10, m11]])
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Mat2::new(
            Complex::new(m[0][0], 0.0),
            Complex::new(m[0][1], 0.0),
            Complex::new(m[1][0], 0.0),
            Complex::new(m[1][1], 0.0),
        )
    }

    /// `|v⟩⟨v|`
    pub fn outer(v: [Complex; 2]) -> Self {
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = v[i] * v[j].conj();
            }
        }
        Mat2(m)
    }

    /// Matrix whose columns are `c0` and `c1`.
    pub fn from_columns(c0: [Complex; 2], c1: [Complex; 2]) -> Self {
        Mat2::new(c0[0], c1[0], c0[1], c1[1])
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.0[i][j]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn trace(&self) -> Complex {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(m)
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(
            a[0][0] - b[0][0],
            a[0][1] - b[0][1],
            a[1][0] - b[1][0],
            a[1][1] - b[1][1],
        )
    }

    pub fn apply(&self, v: [Complex; 2]) -> [Complex; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        self.sub(rhs)
            .0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        all_finite(&[self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]])
    }

    /// Deviation from Hermiticity, `max |M - M†|`.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues of the Hermitian part, ascending, by the closed-form quadratic
    /// `mean ± √(dev² + |off|²)`.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let m = &self.0;
        let a = m[0][0].re;
        let d = m[1][1].re;
        let off = 0.5 * (m[0][1] + m[1][0].conj());
        let mean = 0.5 * (a + d);
        let dev = 0.5 * (a - d);
        let radius = dev.hypot(off.norm());
        [mean - radius, mean + radius]
    }
}
