//! Spacetime algebra Cl(1,3) in the standard Dirac representation.
//!
//! Multivectors are stored as dense 4×4 complex matrices. Grades are read
//! back by trace projection against the sixteen-element basis.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{RdiError, Result};

pub type Cplx = Complex64;

/// (t, x, y, z).
pub type SpacetimePoint = [f64; 4];

const ZERO: Cplx = Cplx::new(0.0, 0.0);
const ONE: Cplx = Cplx::new(1.0, 0.0);
const I: Cplx = Cplx::new(0.0, 1.0);

/// Minkowski metric diagonal, signature (+,−,−,−).
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Multivector {
    pub m: [[Cplx; 4]; 4],
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Multivector[")?;
        for row in &self.m {
            let cells: Vec<String> = row
                .iter()
                .map(|c| format!("{:+.6}{:+.6}i", c.re, c.im))
                .collect();
            writeln!(f, "  {}", cells.join("  "))?;
        }
        write!(f, "]")
    }
}

impl Multivector {
    pub fn zero() -> Self {
        Self { m: [[ZERO; 4]; 4] }
    }

    pub fn identity() -> Self {
        Self::scalar(ONE)
    }

    pub fn scalar(c: Cplx) -> Self {
        let mut out = Self::zero();
        for k in 0..4 {
            out.m[k][k] = c;
        }
        out
    }

    /// Builds a matrix from 2×2 blocks [[a, b], [c, d]].
    pub fn from_blocks(a: [[Cplx; 2]; 2], b: [[Cplx; 2]; 2], c: [[Cplx; 2]; 2], d: [[Cplx; 2]; 2]) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = a[i][j];
                out.m[i][j + 2] = b[i][j];
                out.m[i + 2][j] = c[i][j];
                out.m[i + 2][j + 2] = d[i][j];
            }
        }
        out
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Cplx {
        (0..4).map(|k| self.m[k][k]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0, |acc, c| acc.max(c.norm()))
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flat_map(|r| r.iter())
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn apply(&self, v: &[Cplx; 4]) -> [Cplx; 4] {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.m[i][j] * v[j]).sum();
        }
        out
    }

    /// First column, the image of u₁ = (1,0,0,0)ᵀ.
    pub fn first_column(&self) -> [Cplx; 4] {
        [self.m[0][0], self.m[1][0], self.m[2][0], self.m[3][0]]
    }

    fn lu(&self) -> ([[Cplx; 4]; 4], [usize; 4], f64, bool) {
        let mut a = self.m;
        let mut perm = [0, 1, 2, 3];
        let mut sign = 1.0;
        let mut singular = false;
        for col in 0..4 {
            let piv = (col..4)
                .max_by(|&p, &q| a[p][col].norm().total_cmp(&a[q][col].norm()))
                .unwrap();
            if a[piv][col].norm() == 0.0 {
                singular = true;
                continue;
            }
            if piv != col {
                a.swap(piv, col);
                perm.swap(piv, col);
                sign = -sign;
            }
            for row in col + 1..4 {
                let factor = a[row][col] / a[col][col];
                a[row][col] = factor;
                for k in col + 1..4 {
                    let t = a[col][k];
                    a[row][k] -= factor * t;
                }
            }
        }
        (a, perm, sign, singular)
    }

    pub fn det(&self) -> Cplx {
        let (a, _, sign, singular) = self.lu();
        if singular {
            return ZERO;
        }
        (0..4).map(|k| a[k][k]).product::<Cplx>() * sign
    }

    /// Matrix inverse by LU with partial pivoting; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let (a, perm, _, singular) = self.lu();
        if singular {
            return None;
        }
        let mut out = Self::zero();
        for col in 0..4 {
            let mut y = [ZERO; 4];
            for i in 0..4 {
                let mut s = if perm[i] == col { ONE } else { ZERO };
                for k in 0..i {
                    s -= a[i][k] * y[k];
                }
                y[i] = s;
            }
            let mut x = [ZERO; 4];
            for i in (0..4).rev() {
                let mut s = y[i];
                for k in i + 1..4 {
                    s -= a[i][k] * x[k];
                }
                x[i] = s / a[i][i];
            }
            for i in 0..4 {
                out.m[i][col] = x[i];
            }
        }
        out.is_finite().then_some(out)
    }

    pub fn to_nalgebra(&self) -> Matrix4<Cplx> {
        Matrix4::from_fn(|i, j| self.m[i][j])
    }

    pub fn from_nalgebra(a: &Matrix4<Cplx>) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = a[(i, j)];
            }
        }
        out
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..4 {
            for j in 0..4 {
                self.m[i][j] += rhs.m[i][j];
            }
        }
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.m[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..4 {
                    out.m[i][j] += a * rhs.m[k][j];
                }
            }
        }
        out
    }
}

impl Mul<Cplx> for Multivector {
    type Output = Self;
    fn mul(mut self, rhs: Cplx) -> Self {
        for row in self.m.iter_mut() {
            for c in row.iter_mut() {
                *c *= rhs;
            }
        }
        self
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self * Cplx::new(rhs, 0.0)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs * self
    }
}

fn pauli(k: usize) -> [[Cplx; 2]; 2] {
    match k {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => [[ONE, ZERO], [ZERO, ONE]],
    }
}

fn neg2(a: [[Cplx; 2]; 2]) -> [[Cplx; 2]; 2] {
    [[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]]
}

const Z2: [[Cplx; 2]; 2] = [[ZERO, ZERO], [ZERO, ZERO]];

/// All generators and the derived basis, built once.
#[derive(Clone, Debug)]
pub struct GammaBasis {
    /// γ_μ with lowered index: γ_0 = diag(I, −I), γ_k = [[0, −σ_k], [σ_k, 0]].
    pub gamma_lo: [Multivector; 4],
    /// γ^μ = η^{μν}γ_ν.
    pub gamma_up: [Multivector; 4],
    /// α_k = γ_kγ_0 = [[0, σ_k], [σ_k, 0]], stored at index k−1.
    pub alpha: [Multivector; 3],
    /// Γ₁…Γ₁₆ stored at index k−1.
    pub big_gamma: [Multivector; 16],
    /// Γ_k² = sign_k · I.
    pub square_sign: [f64; 16],
    pub gamma5: Multivector,
    /// 𝒊 = γ_0γ_1γ_2γ_3 = iγ⁵.
    pub pseudoscalar: Multivector,
}

fn build_basis() -> GammaBasis {
    let id = pauli(0);
    let g0 = Multivector::from_blocks(id, Z2, Z2, neg2(id));
    let gk = |k| Multivector::from_blocks(Z2, neg2(pauli(k)), pauli(k), Z2);
    let gamma_lo = [g0, gk(1), gk(2), gk(3)];
    let gamma_up = [g0, -gk(1), -gk(2), -gk(3)];
    let alpha = [gk(1) * g0, gk(2) * g0, gk(3) * g0];
    let gamma5 = Multivector::from_blocks(Z2, id, id, Z2);
    let pseudoscalar = gamma_lo[0] * gamma_lo[1] * gamma_lo[2] * gamma_lo[3];
    let [u0, u1, u2, u3] = gamma_up;
    let big_gamma = [
        Multivector::identity(),
        u0,
        u1,
        u2,
        u3,
        alpha[0],
        alpha[1],
        alpha[2],
        u2 * u3,
        u3 * u1,
        u1 * u2,
        u1 * u2 * u3,
        u0 * u2 * u3,
        u0 * u3 * u1,
        u0 * u1 * u2,
        gamma5,
    ];
    let mut square_sign = [0.0; 16];
    for (k, g) in big_gamma.iter().enumerate() {
        square_sign[k] = ((*g * *g).trace() / 4.0).re;
    }
    GammaBasis {
        gamma_lo,
        gamma_up,
        alpha,
        big_gamma,
        square_sign,
        gamma5,
        pseudoscalar,
    }
}

pub fn gamma_basis() -> &'static GammaBasis {
    static BASIS: OnceLock<GammaBasis> = OnceLock::new();
    BASIS.get_or_init(build_basis)
}

/// γ_μ (lower index).
pub fn gamma(mu: usize) -> Multivector {
    gamma_basis().gamma_lo[mu]
}

/// γ^μ (upper index).
pub fn gamma_up(mu: usize) -> Multivector {
    gamma_basis().gamma_up[mu]
}

/// α_k for k = 1, 2, 3.
pub fn alpha(k: usize) -> Multivector {
    gamma_basis().alpha[k - 1]
}

pub fn gamma5() -> Multivector {
    gamma_basis().gamma5
}

pub fn pseudoscalar() -> Multivector {
    gamma_basis().pseudoscalar
}

/// γ₂γ₁, the generator of the phase rotation; acts as i on u₁.
pub fn spin_plane() -> Multivector {
    gamma(2) * gamma(1)
}

/// Γ_k for k in 1..=16.
pub fn big_gamma(k: usize) -> Result<Multivector> {
    if !(1..=16).contains(&k) {
        return Err(RdiError::IndexOutOfRange { index: k });
    }
    Ok(gamma_basis().big_gamma[k - 1])
}

/// Ψ̃ = γ₀Ψ†γ₀.
pub fn reversion(a: &Multivector) -> Multivector {
    let g0 = gamma(0);
    g0 * a.dagger() * g0
}

/// (1/4)·Tr[A·Γ_k].
pub fn trace_project(a: &Multivector, k: usize) -> Result<Cplx> {
    let g = big_gamma(k)?;
    Ok((*a * g).trace() / 4.0)
}

/// All sixteen projections, index k−1.
pub fn trace_coefficients(a: &Multivector) -> [Cplx; 16] {
    let basis = gamma_basis();
    let mut out = [ZERO; 16];
    for (k, g) in basis.big_gamma.iter().enumerate() {
        out[k] = (*a * *g).trace() / 4.0;
    }
    out
}

/// Inverse of [`trace_coefficients`]: A = Σ c_k Γ_k⁻¹.
pub fn reconstruct(coeffs: &[Cplx; 16]) -> Multivector {
    let basis = gamma_basis();
    let mut out = Multivector::zero();
    for k in 0..16 {
        out += basis.big_gamma[k] * (coeffs[k] * basis.square_sign[k]);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Self([a0, a1, a2, a3])
    }

    pub fn dot(&self, other: &Self) -> f64 {
        (0..4).map(|mu| ETA[mu] * self.0[mu] * other.0[mu]).sum()
    }

    pub fn norm2(&self) -> f64 {
        self.dot(self)
    }

    /// Components with the index lowered.
    pub fn lowered(&self) -> [f64; 4] {
        let a = self.0;
        [a[0], -a[1], -a[2], -a[3]]
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    /// a̸ = a^μγ_μ.
    pub fn slash(&self) -> Multivector {
        let b = gamma_basis();
        let mut out = Multivector::zero();
        for mu in 0..4 {
            out += b.gamma_lo[mu] * self.0[mu];
        }
        out
    }

    /// Reads contravariant components from a matrix and reports the size of
    /// whatever is not a real vector.
    pub fn from_slash(a: &Multivector) -> (Self, f64) {
        let b = gamma_basis();
        let mut comps = [0.0; 4];
        for mu in 0..4 {
            comps[mu] = ((*a * b.gamma_up[mu]).trace() / 4.0).re;
        }
        let v = Self(comps);
        (v, a.max_diff(&v.slash()))
    }
}

impl Add for FourVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for FourVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

/// Padé(6,6) with scaling and squaring.
pub fn expm(a: &Multivector) -> Multivector {
    const Q: usize = 6;
    let norm: f64 = a
        .m
        .iter()
        .map(|row| row.iter().map(|c| c.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut s = 0;
    if norm > 0.5 {
        s = (norm / 0.5).log2().ceil() as i32;
    }
    let scaled = *a * 0.5f64.powi(s);
    let mut coef = 1.0;
    let mut power = Multivector::identity();
    let mut num = Multivector::identity();
    let mut den = Multivector::identity();
    for k in 1..=Q {
        coef *= (Q - k + 1) as f64 / (k * (2 * Q - k + 1)) as f64;
        power = power * scaled;
        num += power * coef;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        den += power * (coef * sign);
    }
    let mut out = den.inverse().expect("Padé denominator is invertible for ‖A‖ ≤ 1/2") * num;
    for _ in 0..s {
        out = out * out;
    }
    out
}

/// exp(a^kα_k − b^k𝒊α_k): boosts along a, rotations about b.
pub fn exp_bivector(a: [f64; 3], b: [f64; 3]) -> Multivector {
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let basis = gamma_basis();
    if nb == 0.0 {
        if na == 0.0 {
            return Multivector::identity();
        }
        let mut dir = Multivector::zero();
        for k in 0..3 {
            dir += basis.alpha[k] * (a[k] / na);
        }
        return Multivector::identity() * na.cosh() + dir * na.sinh();
    }
    if na == 0.0 {
        let mut dir = Multivector::zero();
        for k in 0..3 {
            dir += basis.pseudoscalar * basis.alpha[k] * (b[k] / nb);
        }
        return Multivector::identity() * nb.cos() - dir * nb.sin();
    }
    expm(&bivector(a, b))
}

/// The bivector a^kα_k − b^k𝒊α_k itself.
pub fn bivector(a: [f64; 3], b: [f64; 3]) -> Multivector {
    let basis = gamma_basis();
    let mut x = Multivector::zero();
    for k in 0..3 {
        x += basis.alpha[k] * a[k];
        x += basis.pseudoscalar * basis.alpha[k] * (-b[k]);
    }
    x
}

#[derive(Clone, Copy, Debug)]
pub struct RotorFactors {
    pub boost: Multivector,
    pub rotation: Multivector,
}

/// R = boost·rotation with boost = √(RR†) Hermitian positive definite.
pub fn polar_decompose(r: &Multivector) -> Result<RotorFactors> {
    let rr = (*r * r.dagger()).to_nalgebra();
    let eig = rr.symmetric_eigen();
    let smallest = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let sv_min = smallest.max(0.0).sqrt();
    if sv_min < 1e-12 {
        return Err(RdiError::SingularInput(sv_min));
    }
    let v = &eig.eigenvectors;
    let mut sqrt_diag = Matrix4::<Cplx>::zeros();
    let mut inv_diag = Matrix4::<Cplx>::zeros();
    for k in 0..4 {
        let s = eig.eigenvalues[k].sqrt();
        sqrt_diag[(k, k)] = Cplx::new(s, 0.0);
        inv_diag[(k, k)] = Cplx::new(1.0 / s, 0.0);
    }
    let boost = v * sqrt_diag * v.adjoint();
    let boost_inv = v * inv_diag * v.adjoint();
    let boost = Multivector::from_nalgebra(&boost);
    let rotation = Multivector::from_nalgebra(&boost_inv) * *r;
    Ok(RotorFactors { boost, rotation })
}

/// R v̸ R̃ read back as a four-vector.
pub fn sandwich(r: &Multivector, v: &FourVector) -> Result<FourVector> {
    let x = *r * v.slash() * reversion(r);
    let (out, residual) = FourVector::from_slash(&x);
    if residual > 1e-8 * (1.0 + out.0.iter().map(|c| c.abs()).fold(0.0, f64::max)) {
        return Err(RdiError::NonVectorResult(residual));
    }
    Ok(out)
}
