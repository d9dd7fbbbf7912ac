//! Matrix and column spinors, plane waves and local observables.

use serde::{Deserialize, Serialize};

use crate::error::{RdiError, Result};
use crate::sta_core::{
    alpha, exp_bivector, gamma, gamma5, gamma_up, pseudoscalar, reversion, spin_plane, trace_project, Cplx,
    FourVector, Multivector, SpacetimePoint,
};

/// Ψ = √ρ e^{𝒊β/2} ℛ e^{−γ²γ¹·phase_arg}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpinor {
    pub rho: f64,
    pub beta: f64,
    pub rotor: Multivector,
    pub phase_arg: f64,
}

impl MatrixSpinor {
    pub fn new(rho: f64, beta: f64, rotor: Multivector, phase_arg: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(RdiError::Domain(format!("density factor must be positive, got {rho}")));
        }
        Ok(Self { rho, beta, rotor, phase_arg })
    }
}

/// e^{𝒊θ} = cos θ + 𝒊 sin θ.
pub fn duality_phase(theta: f64) -> Multivector {
    Multivector::identity() * theta.cos() + pseudoscalar() * theta.sin()
}

/// e^{−γ²γ¹θ} = cos θ − γ²γ¹ sin θ (note γ²γ¹ = γ₂γ₁ squares to −1).
pub fn phase_rotor(theta: f64) -> Multivector {
    Multivector::identity() * theta.cos() - spin_plane() * theta.sin()
}

pub fn assemble(ms: &MatrixSpinor) -> Multivector {
    duality_phase(0.5 * ms.beta) * ms.rotor * phase_rotor(ms.phase_arg) * ms.rho.sqrt()
}

/// Splits Ψ into (ρ, β, ℛ) with the phase absorbed into ℛ.
pub fn decompose(psi: &Multivector) -> Result<MatrixSpinor> {
    let (sigma, pi) = scalar_pseudoscalar(psi);
    let rho = sigma.hypot(pi);
    if rho == 0.0 {
        return Err(RdiError::NullDensity);
    }
    let beta = pi.atan2(sigma);
    let rotor = duality_phase(-0.5 * beta) * *psi * (1.0 / rho.sqrt());
    Ok(MatrixSpinor { rho, beta, rotor, phase_arg: 0.0 })
}

/// (σ, π) with ΨΨ̃ = σ + 𝒊π.
pub fn scalar_pseudoscalar(psi: &Multivector) -> (f64, f64) {
    let q = *psi * reversion(psi);
    let sigma = q.trace().re / 4.0;
    // Tr[𝒊·γ5]/4 = i, so the coefficient of 𝒊 is Im of the γ5 projection.
    let pi = trace_project(&q, 16).expect("16 is a valid index").im;
    (sigma, pi)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnSpinor {
    pub psi: [Cplx; 4],
}

impl ColumnSpinor {
    pub fn new(psi: [Cplx; 4]) -> Self {
        Self { psi }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, s: Cplx) -> Self {
        Self { psi: self.psi.map(|c| c * s) }
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        (0..4).map(|k| (self.psi[k] - other.psi[k]).norm()).fold(0.0, f64::max)
    }

    /// Real octet (r, s) with ψ = (r₀−ir₃, r₂−ir₁, s₃+is₀, s₁+is₂)ᵀ.
    pub fn to_components(&self) -> (FourVector, FourVector) {
        let [p1, p2, p3, p4] = self.psi;
        let r = FourVector::new(p1.re, -p2.im, p2.re, -p1.im);
        let s = FourVector::new(p3.im, p4.re, p4.im, p3.re);
        (r, s)
    }

    /// The unique even multivector Ψ = r₀ + s_kα_k + 𝒊(s₀ − r_kα_k) with Ψu₁ = ψ.
    pub fn to_matrix(&self) -> Multivector {
        let (r, s) = self.to_components();
        let i = pseudoscalar();
        let mut out = Multivector::identity() * r.0[0] + i * s.0[0];
        for k in 1..=3 {
            out += alpha(k) * s.0[k];
            out += i * alpha(k) * (-r.0[k]);
        }
        out
    }

    /// ψ̄Γψ = ψ†γ₀Γψ.
    pub fn bilinear(&self, gamma_matrix: &Multivector) -> Cplx {
        let g = gamma(0) * *gamma_matrix;
        let v = g.apply(&self.psi);
        (0..4).map(|k| self.psi[k].conj() * v[k]).sum()
    }
}

pub fn from_components(r: &FourVector, s: &FourVector) -> ColumnSpinor {
    let (r, s) = (r.0, s.0);
    ColumnSpinor::new([
        Cplx::new(r[0], -r[3]),
        Cplx::new(r[2], -r[1]),
        Cplx::new(s[3], s[0]),
        Cplx::new(s[1], s[2]),
    ])
}

pub fn to_column(psi: &Multivector) -> ColumnSpinor {
    ColumnSpinor::new(psi.first_column())
}

/// Free plane-wave mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneWave {
    pub p: [f64; 3],
    pub m: f64,
    pub spin_axis: [f64; 3],
    pub angle: f64,
    pub energy_sign: i8,
}

/// 𝓑 = √((E+m)/2m)(1 + α·p/(E+m)).
pub fn boost_from_momentum(p: [f64; 3], m: f64) -> Multivector {
    let e = (m * m + p.iter().map(|c| c * c).sum::<f64>()).sqrt();
    let mut out = Multivector::identity();
    for k in 0..3 {
        out += alpha(k + 1) * (p[k] / (e + m));
    }
    out * ((e + m) / (2.0 * m)).sqrt()
}

pub fn plane_wave(p: [f64; 3], m: f64, spin_axis: [f64; 3], angle: f64, energy_sign: i8) -> Result<PlaneWave> {
    if !(m > 0.0) {
        return Err(RdiError::Domain(format!("mass must be positive, got {m}")));
    }
    if energy_sign != 1 && energy_sign != -1 {
        return Err(RdiError::Domain("energy sign must be +1 or -1".into()));
    }
    let n = spin_axis.iter().map(|c| c * c).sum::<f64>().sqrt();
    if n == 0.0 && angle != 0.0 {
        return Err(RdiError::Domain("rotation axis has zero length".into()));
    }
    Ok(PlaneWave { p, m, spin_axis, angle, energy_sign })
}

impl PlaneWave {
    pub fn energy(&self) -> f64 {
        (self.m * self.m + self.p.iter().map(|c| c * c).sum::<f64>()).sqrt()
    }

    fn rotation(&self) -> Multivector {
        let n = self.spin_axis.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n == 0.0 {
            return Multivector::identity();
        }
        let b = self.spin_axis.map(|c| 0.5 * self.angle * c / n);
        exp_bivector([0.0; 3], b)
    }

    /// Positive branch 𝓑Ue^{−γ²γ¹(Et − p·x)}; negative branch
    /// 𝒊𝓑(−p)Ue^{+γ²γ¹(Et + p·x)}, which carries energy −E and momentum p.
    pub fn matrix(&self, x: &SpacetimePoint) -> Multivector {
        let e = self.energy();
        let px: f64 = (0..3).map(|k| self.p[k] * x[k + 1]).sum();
        if self.energy_sign > 0 {
            boost_from_momentum(self.p, self.m) * self.rotation() * phase_rotor(e * x[0] - px)
        } else {
            let back = self.p.map(|c| -c);
            pseudoscalar() * boost_from_momentum(back, self.m) * self.rotation() * phase_rotor(-(e * x[0] + px))
        }
    }

    pub fn column(&self, x: &SpacetimePoint) -> ColumnSpinor {
        to_column(&self.matrix(x))
    }

    /// Four-momentum (E, p) of the mode, sign included.
    pub fn four_momentum(&self) -> FourVector {
        let e = self.energy();
        if self.energy_sign > 0 {
            FourVector::new(e, self.p[0], self.p[1], self.p[2])
        } else {
            FourVector::new(-e, self.p[0], self.p[1], self.p[2])
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    /// J^μ = (ψ†ψ, ψ†α_kψ).
    pub current: FourVector,
    /// ψ̄γ^μγ⁵ψ.
    pub spin_density: FourVector,
    pub rho: f64,
    pub beta: f64,
    pub sigma: f64,
    pub pi: f64,
    /// e_μ = Ψγ_μΨ̃/ρ.
    pub tetrad: [FourVector; 4],
    /// e₂e₁.
    pub bivector_s: Multivector,
    /// False where ρ is negligible against J⁰ and the frame is ill defined.
    pub defined: bool,
}

impl Observables {
    pub fn velocity(&self) -> FourVector {
        self.current.scale(1.0 / self.rho)
    }

    pub fn spin(&self) -> FourVector {
        self.spin_density.scale(1.0 / self.rho)
    }
}

pub fn observables(psi: &ColumnSpinor) -> Result<Observables> {
    let j0 = psi.norm_sqr();
    if j0 == 0.0 {
        return Err(RdiError::NullDensity);
    }
    let mut current = [j0, 0.0, 0.0, 0.0];
    for k in 1..=3 {
        current[k] = psi.bilinear(&(gamma(0) * alpha(k))).re;
    }
    let g5 = gamma5();
    let spin_density: [f64; 4] = std::array::from_fn(|mu| psi.bilinear(&(gamma_up(mu) * g5)).re);

    let matrix = psi.to_matrix();
    let (sigma, pi) = scalar_pseudoscalar(&matrix);
    let rho = sigma.hypot(pi);
    let beta = pi.atan2(sigma);
    let defined = rho > 1e-10 * j0;
    let rev = reversion(&matrix);
    let tetrad: [FourVector; 4] = std::array::from_fn(|mu| {
        let (v, _) = FourVector::from_slash(&(matrix * gamma(mu) * rev));
        v.scale(1.0 / rho)
    });
    let bivector_s = tetrad[2].slash() * tetrad[1].slash();
    Ok(Observables {
        current: FourVector(current),
        spin_density: FourVector(spin_density),
        rho,
        beta,
        sigma,
        pi,
        tetrad,
        bivector_s,
        defined,
    })
}

/// The expanded form α·(𝔰×v) − 𝒊(v⁰𝔰_kα_k − 𝔰⁰v_kα_k) of the spin bivector,
/// written with lowered spatial components.
pub fn spin_bivector_expanded(v: &FourVector, s: &FourVector) -> Multivector {
    let vl = v.lowered();
    let sl = s.lowered();
    let cross = [
        sl[2] * vl[3] - sl[3] * vl[2],
        sl[3] * vl[1] - sl[1] * vl[3],
        sl[1] * vl[2] - sl[2] * vl[1],
    ];
    let i = pseudoscalar();
    let mut out = Multivector::zero();
    for k in 1..=3 {
        out += alpha(k) * cross[k - 1];
        out += i * alpha(k) * (-(v.0[0] * sl[k] - s.0[0] * vl[k]));
    }
    out
}
