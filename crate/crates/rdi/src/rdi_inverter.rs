//! Recovering the driving potential from a matrix-spinor field:
//! eA̸ = (∂̸Ψγ₂γ₁ − mΨγ₀)Ψ⁻¹.

use serde::{Deserialize, Serialize};

use crate::error::{RdiError, Result};
use crate::numerics::{central4, FdPolicy};
use crate::solution_catalog::{RadialProfile, Solution, SolutionSpec};
use crate::sta_core::{gamma, gamma_up, spin_plane, trace_coefficients, Cplx, FourVector, Multivector, SpacetimePoint};

/// Γ indices whose trace must vanish for a pure vector potential.
pub const CONSTRAINED: [usize; 12] = [1, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16];

/// Relative determinant below which Ψ counts as singular. The inversion is
/// homogeneous of degree zero in Ψ, so the test is made on Ψ/max|Ψ_ij|.
pub const SINGULAR_DET: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialSample {
    pub e_a: FourVector,
    /// |Tr[eA̸Γ_k]/4| at index k−1. For k = 2..5 the imaginary part only.
    pub grade_residuals: [f64; 16],
    /// max |eA(h) − eA(h/2)| over components.
    pub richardson: f64,
}

impl PotentialSample {
    pub fn max_constrained(&self) -> f64 {
        CONSTRAINED.iter().map(|&k| self.grade_residuals[k - 1]).fold(0.0, f64::max)
    }
}

fn flatten(m: &Multivector) -> [f64; 32] {
    let mut out = [0.0; 32];
    for i in 0..4 {
        for j in 0..4 {
            out[8 * i + 2 * j] = m.m[i][j].re;
            out[8 * i + 2 * j + 1] = m.m[i][j].im;
        }
    }
    out
}

fn unflatten(v: &[f64; 32]) -> Multivector {
    let mut m = Multivector::zero();
    for i in 0..4 {
        for j in 0..4 {
            m.m[i][j] = Cplx::new(v[8 * i + 2 * j], v[8 * i + 2 * j + 1]);
        }
    }
    m
}

/// ∂_μΨ for μ = 0..3 by fourth-order central differences with step h.
pub fn gradient<F>(field: &F, x: &SpacetimePoint, h: f64) -> [Multivector; 4]
where
    F: Fn(&SpacetimePoint) -> Multivector + ?Sized,
{
    std::array::from_fn(|mu| {
        let d = central4(
            |s| {
                let mut p = *x;
                p[mu] += s;
                flatten(&field(&p))
            },
            h,
        );
        unflatten(&d)
    })
}

/// ∂̸Ψ = γ^μ∂_μΨ.
pub fn dirac_operator(grad: &[Multivector; 4]) -> Multivector {
    let mut out = Multivector::zero();
    for (mu, d) in grad.iter().enumerate() {
        out += gamma_up(mu) * *d;
    }
    out
}

fn invert_checked(psi: &Multivector) -> Result<Multivector> {
    let scale = psi.max_abs();
    if scale == 0.0 {
        return Err(RdiError::SingularSpinor(0.0));
    }
    let det = (*psi * (1.0 / scale)).det().norm();
    if det < SINGULAR_DET {
        return Err(RdiError::SingularSpinor(det));
    }
    psi.inverse().ok_or(RdiError::SingularSpinor(det))
}

fn potential_matrix(grad: &[Multivector; 4], psi: &Multivector, inv: &Multivector, mass: f64) -> Multivector {
    (dirac_operator(grad) * spin_plane() - *psi * gamma(0) * mass) * *inv
}

/// Inverts a matrix-spinor field at x. The step is `policy.h`; the
/// Richardson pair (h, h/2) bounds the derivative error and the finer
/// result is returned.
pub fn invert<F>(field: &F, mass: f64, x: &SpacetimePoint, policy: &FdPolicy) -> Result<PotentialSample>
where
    F: Fn(&SpacetimePoint) -> Multivector + ?Sized,
{
    let psi = field(x);
    let inv = invert_checked(&psi)?;
    let coarse = potential_matrix(&gradient(field, x, policy.h), &psi, &inv, mass);
    let fine = potential_matrix(&gradient(field, x, 0.5 * policy.h), &psi, &inv, mass);
    let (a_coarse, _) = FourVector::from_slash(&coarse);
    let (e_a, _) = FourVector::from_slash(&fine);
    let richardson = (0..4).map(|mu| (a_coarse.0[mu] - e_a.0[mu]).abs()).fold(0.0, f64::max);
    if richardson > policy.tolerance {
        return Err(RdiError::StepTooLarge { estimate: richardson, tolerance: policy.tolerance });
    }
    let coeffs = trace_coefficients(&fine);
    let grade_residuals = std::array::from_fn(|k| match k + 1 {
        2..=5 => coeffs[k].im.abs(),
        _ => coeffs[k].norm(),
    });
    Ok(PotentialSample { e_a, grade_residuals, richardson })
}

/// Closed-form stationary potential eA = (B²/4λ)(d ln H/dλ)(0, y, −x, 0).
pub fn stationary_potential(spec: &SolutionSpec, x: &SpacetimePoint) -> Result<FourVector> {
    if spec.family.is_dressed() {
        return Err(RdiError::Domain(format!("{} is not a stationary family", spec.family)));
    }
    Solution::new(*spec)?.static_potential(x[1], x[2])
}

/// |eA₀| from inverting a stationary column built on an arbitrary profile.
/// Vanishes exactly when the profile solves the radial equation.
#[allow(clippy::too_many_arguments)]
pub fn circularity_residual_profile<P: RadialProfile + ?Sized>(
    profile: &P,
    eps: f64,
    mass: f64,
    p_z: f64,
    b: f64,
    x: &SpacetimePoint,
    policy: &FdPolicy,
) -> Result<f64> {
    let field = |p: &SpacetimePoint| {
        crate::solution_catalog::stationary_column(profile, 1.0, eps, mass, p_z, b, p).to_matrix()
    };
    let sample = invert(&field, mass, x, policy)?;
    Ok(sample.e_a.0[0].abs())
}

pub fn circularity_residual(spec: &SolutionSpec, x: &SpacetimePoint, policy: &FdPolicy) -> Result<f64> {
    let sol = Solution::new(*spec)?;
    if spec.family.is_dressed() {
        return Err(RdiError::Domain(format!("{} is not a stationary family", spec.family)));
    }
    circularity_residual_profile(&sol.profile, sol.eps, spec.mass, spec.p_z, spec.b, x, policy)
}

/// |∂_μ eA^μ| by fourth-order differences of the closed-form potential.
pub fn lorentz_gauge_residual(sol: &Solution, x: &SpacetimePoint, h: f64) -> Result<f64> {
    sol.potential(x)?;
    let mut div = 0.0;
    for mu in 0..4 {
        let d = central4(
            |s| {
                let mut p = *x;
                p[mu] += s;
                [sol.potential(&p).map(|a| a.0[mu]).unwrap_or(f64::NAN)]
            },
            h,
        );
        div += d[0];
    }
    Ok(div.abs())
}
