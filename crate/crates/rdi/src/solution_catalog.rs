//! Closed-form evaluators for the seven solution families.
//!
//! Stationary states have the column form
//! ψ = 𝒩 e^{−iεt + ip_z z + iMφ/2} [(m+ε)P/B, 0, p_z P/B, −(i/2)e^{iφ}Q]
//! with P = λ^{M/2}Hf, Q = λ^{M/2}Hf′ and λ = B r / 2. Dressed states apply
//! the null rotation 1 + N, the transverse shift and the gauge phase.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{RdiError, Result};
use crate::numerics;
use crate::special_fn::{bessel_j_unchecked, factorial, laguerre, PolyEval};
use crate::spinor_factory::{phase_rotor, ColumnSpinor, MatrixSpinor};
use crate::sta_core::{exp_bivector, gamma, gamma_up, sandwich, Cplx, FourVector, Multivector, RotorFactors, SpacetimePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    FreeBessel,
    HomogeneousDegenerate,
    HomogeneousNondegenerate,
    Inhomogeneous,
    VolkovBessel,
    Redmond,
    InhomogeneousLaser,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::FreeBessel,
        Family::HomogeneousDegenerate,
        Family::HomogeneousNondegenerate,
        Family::Inhomogeneous,
        Family::VolkovBessel,
        Family::Redmond,
        Family::InhomogeneousLaser,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::FreeBessel => "free-bessel",
            Family::HomogeneousDegenerate => "homogeneous-degenerate",
            Family::HomogeneousNondegenerate => "homogeneous-nondegenerate",
            Family::Inhomogeneous => "inhomogeneous",
            Family::VolkovBessel => "volkov-bessel",
            Family::Redmond => "redmond",
            Family::InhomogeneousLaser => "inhomogeneous-laser",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Family::FreeBessel => "free Bessel vortex beam, f = λ^-l J_l(2kλ/B), H = 1",
            Family::HomogeneousDegenerate => "uniform magnetic field, M = 2l, f = L_n^l(2λ²), H = exp(-λ²), ε independent of l",
            Family::HomogeneousNondegenerate => "uniform magnetic field, M = -2l, f = (2λ²)^l 1F1(-n; l+1; 2λ²), H = exp(-λ²)",
            Family::Inhomogeneous => "1/r magnetic field, f = exp(λ/2 - κλ/2) L_n^M(κλ), H = exp(-λ/2)",
            Family::VolkovBessel => "free Bessel beam dressed by a plane wave along z",
            Family::Redmond => "uniform magnetic field plus plane wave along z (degenerate branch)",
            Family::InhomogeneousLaser => "1/r magnetic field plus plane wave along z",
        }
    }

    /// Parameters the family reads from a [`SolutionSpec`].
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::FreeBessel => &["l", "energy", "b", "p_z", "mass"],
            Family::HomogeneousDegenerate | Family::HomogeneousNondegenerate => &["n", "l", "b", "p_z", "mass"],
            Family::Inhomogeneous => &["n", "m_orbital", "b", "p_z", "mass"],
            Family::VolkovBessel => &["l", "energy", "b", "mass", "waveform"],
            Family::Redmond => &["n", "l", "b", "mass", "waveform"],
            Family::InhomogeneousLaser => &["n", "m_orbital", "b", "mass", "waveform"],
        }
    }

    pub fn is_dressed(self) -> bool {
        matches!(self, Family::VolkovBessel | Family::Redmond | Family::InhomogeneousLaser)
    }

    /// The stationary family a dressed family is built from.
    pub fn stationary(self) -> Family {
        match self {
            Family::VolkovBessel => Family::FreeBessel,
            Family::Redmond => Family::HomogeneousDegenerate,
            Family::InhomogeneousLaser => Family::Inhomogeneous,
            other => other,
        }
    }

    pub fn dressed(self) -> Family {
        match self {
            Family::FreeBessel => Family::VolkovBessel,
            Family::HomogeneousDegenerate => Family::Redmond,
            Family::Inhomogeneous => Family::InhomogeneousLaser,
            other => other,
        }
    }

    pub fn is_normalizable(self) -> bool {
        !matches!(self.stationary(), Family::FreeBessel)
    }

    /// Potential (and field) singular on the symmetry axis.
    pub fn axis_singular(self) -> bool {
        matches!(self.stationary(), Family::Inhomogeneous)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = RdiError;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| RdiError::Domain(format!("unknown family '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WaveformKind {
    /// f = a(sin ξ, −cos ξ).
    CircularSin,
    /// f = a(0, sin ξ).
    LinearSin,
    /// f = a g(ξ)(sin ξ, −cos ξ) with g = exp(−ξ²/2τ²).
    PulseEnvelope,
}

impl FromStr for WaveformKind {
    type Err = RdiError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circular" | "circular-sin" => Ok(Self::CircularSin),
            "linear" | "linear-sin" => Ok(Self::LinearSin),
            "pulse" | "pulse-envelope" => Ok(Self::PulseEnvelope),
            _ => Err(RdiError::Domain(format!("unknown waveform '{s}'"))),
        }
    }
}

/// Plane-wave driving functions of ξ = ω(t − z). Dots are d/dξ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Waveform {
    pub kind: WaveformKind,
    pub amplitude: f64,
    pub omega: f64,
    /// Envelope width, used by the pulse only.
    #[serde(default = "default_tau")]
    pub tau: f64,
}

fn default_tau() -> f64 {
    3.0
}

impl Waveform {
    pub fn new(kind: WaveformKind, amplitude: f64, omega: f64) -> Self {
        Self { kind, amplitude, omega, tau: default_tau() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.amplitude.is_finite() || !(self.tau > 0.0) {
            return Err(RdiError::Domain(format!("invalid waveform {self:?}")));
        }
        Ok(())
    }

    fn envelope(&self, xi: f64) -> (f64, f64, f64) {
        let t2 = self.tau * self.tau;
        let g = (-0.5 * xi * xi / t2).exp();
        (g, -xi / t2 * g, (xi * xi / (t2 * t2) - 1.0 / t2) * g)
    }

    pub fn f(&self, xi: f64) -> [f64; 2] {
        let a = self.amplitude;
        let (s, c) = xi.sin_cos();
        match self.kind {
            WaveformKind::CircularSin => [a * s, -a * c],
            WaveformKind::LinearSin => [0.0, a * s],
            WaveformKind::PulseEnvelope => {
                let (g, _, _) = self.envelope(xi);
                [a * g * s, -a * g * c]
            }
        }
    }

    pub fn df(&self, xi: f64) -> [f64; 2] {
        let a = self.amplitude;
        let (s, c) = xi.sin_cos();
        match self.kind {
            WaveformKind::CircularSin => [a * c, a * s],
            WaveformKind::LinearSin => [0.0, a * c],
            WaveformKind::PulseEnvelope => {
                let (g, g1, _) = self.envelope(xi);
                [a * (g1 * s + g * c), a * (-g1 * c + g * s)]
            }
        }
    }

    pub fn d2f(&self, xi: f64) -> [f64; 2] {
        let a = self.amplitude;
        let (s, c) = xi.sin_cos();
        match self.kind {
            WaveformKind::CircularSin => [-a * s, a * c],
            WaveformKind::LinearSin => [0.0, -a * s],
            WaveformKind::PulseEnvelope => {
                let (g, g1, g2) = self.envelope(xi);
                [a * (g2 * s + 2.0 * g1 * c - g * s), a * (-g2 * c + 2.0 * g1 * s + g * c)]
            }
        }
    }

    /// ∫₀^ξ (ḟ₁² + ḟ₂²) dφ.
    pub fn gauge_integral(&self, xi: f64) -> f64 {
        let a2 = self.amplitude * self.amplitude;
        match self.kind {
            WaveformKind::CircularSin => a2 * xi,
            WaveformKind::LinearSin => a2 * (0.5 * xi + 0.25 * (2.0 * xi).sin()),
            WaveformKind::PulseEnvelope => numerics::simpson(
                |p| {
                    let d = self.df(p);
                    d[0] * d[0] + d[1] * d[1]
                },
                0.0,
                xi,
                1e-13,
            ),
        }
    }
}

/// Unit constants; natural units are all ones. `mass_kg` fixes the SI scale
/// of the unit mass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub hbar: f64,
    pub c: f64,
    pub mu0: f64,
    pub mass_kg: f64,
}

impl Units {
    pub fn natural() -> Self {
        Self { hbar: 1.0, c: 1.0, mu0: 1.0, mass_kg: 1.0 }
    }

    /// CODATA 2018 values with the electron mass as unit mass.
    pub fn si() -> Self {
        Self { hbar: 1.054_571_817e-34, c: 299_792_458.0, mu0: 1.256_637_062_12e-6, mass_kg: 9.109_383_701_5e-31 }
    }

    /// Length unit ħ/(mc).
    pub fn length(&self) -> f64 {
        self.hbar / (self.mass_kg * self.c)
    }

    /// Time unit ħ/(mc²).
    pub fn time(&self) -> f64 {
        self.hbar / (self.mass_kg * self.c * self.c)
    }

    /// Energy unit mc².
    pub fn energy(&self) -> f64 {
        self.mass_kg * self.c * self.c
    }

    /// Unit of eA^k (momentum, mc); eA⁰ is reported in energy units.
    pub fn momentum(&self) -> f64 {
        self.mass_kg * self.c
    }

    /// Unit of eE (force, mc²/length).
    pub fn force(&self) -> f64 {
        self.energy() / self.length()
    }

    /// Unit of eB (momentum per length).
    pub fn momentum_per_length(&self) -> f64 {
        self.momentum() / self.length()
    }

    /// Unit of the transverse density ψ†ψ (per area).
    pub fn density(&self) -> f64 {
        1.0 / (self.length() * self.length())
    }
}

impl Default for Units {
    fn default() -> Self {
        Self::natural()
    }
}

/// One catalog state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionSpec {
    pub family: Family,
    /// Principal quantum number; unused by the Bessel families.
    pub n: u32,
    /// The orbital number M of the phase e^{iMφ/2}. Homogeneous and Bessel
    /// families use M = ±2l, see [`SolutionSpec::l`].
    pub m_orbital: i32,
    /// Field constant (energy units).
    pub b: f64,
    pub p_z: f64,
    pub mass: f64,
    /// Required for the Bessel families, derived otherwise.
    pub energy: Option<f64>,
    pub waveform: Option<Waveform>,
}

impl SolutionSpec {
    fn base(family: Family, n: u32, m_orbital: i32, b: f64) -> Self {
        Self { family, n, m_orbital, b, p_z: 0.0, mass: 1.0, energy: None, waveform: None }
    }

    pub fn free_bessel(l: u32, energy: f64, b: f64) -> Self {
        Self { energy: Some(energy), ..Self::base(Family::FreeBessel, 0, 2 * l as i32, b) }
    }

    /// M = 2l branch.
    pub fn homogeneous_degenerate(n: u32, l: u32, b: f64) -> Self {
        Self::base(Family::HomogeneousDegenerate, n, 2 * l as i32, b)
    }

    /// M = −2l branch.
    pub fn homogeneous_nondegenerate(n: u32, l: u32, b: f64) -> Self {
        Self::base(Family::HomogeneousNondegenerate, n, -2 * (l as i32), b)
    }

    pub fn inhomogeneous(n: u32, m_orbital: u32, b: f64) -> Self {
        Self::base(Family::Inhomogeneous, n, m_orbital as i32, b)
    }

    pub fn with_pz(mut self, p_z: f64) -> Self {
        self.p_z = p_z;
        self
    }

    pub fn with_mass(mut self, mass: f64) -> Self {
        self.mass = mass;
        self
    }

    /// The dressed partner of a stationary spec.
    pub fn with_waveform(mut self, wf: Waveform) -> Self {
        self.family = self.family.dressed();
        self.waveform = Some(wf);
        self
    }

    /// The stationary state a dressed spec is built on.
    pub fn stationary(&self) -> Self {
        Self { family: self.family.stationary(), waveform: None, ..*self }
    }

    /// |M|/2 for the homogeneous and Bessel families.
    pub fn l(&self) -> u32 {
        self.m_orbital.unsigned_abs() / 2
    }

    pub fn validate(&self) -> Result<()> {
        let fam = self.family;
        let bad = |msg: String| Err(RdiError::Domain(format!("{fam}: {msg}")));
        if !(self.b > 0.0) || !self.b.is_finite() {
            return bad(format!("field constant b must be positive, got {}", self.b));
        }
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return bad(format!("mass must be positive, got {}", self.mass));
        }
        if !self.p_z.is_finite() {
            return bad("p_z must be finite".into());
        }
        match fam.stationary() {
            Family::FreeBessel | Family::HomogeneousDegenerate => {
                if self.m_orbital < 0 || self.m_orbital % 2 != 0 {
                    return bad(format!("needs M = 2l >= 0, got M = {}", self.m_orbital));
                }
            }
            Family::HomogeneousNondegenerate => {
                if self.m_orbital > 0 || self.m_orbital % 2 != 0 {
                    return bad(format!("needs M = -2l <= 0, got M = {}", self.m_orbital));
                }
            }
            _ => {
                if self.m_orbital < 0 {
                    return bad(format!("needs M >= 0, got {}", self.m_orbital));
                }
            }
        }
        if fam.stationary() == Family::FreeBessel {
            let e = self.energy.ok_or_else(|| RdiError::Domain(format!("{fam}: energy is required")))?;
            let floor = (self.mass * self.mass + self.p_z * self.p_z).sqrt();
            if !(e > floor) {
                return bad(format!("energy {e} must exceed sqrt(m² + p_z²) = {floor}"));
            }
        }
        if fam.is_dressed() {
            let wf = self.waveform.ok_or_else(|| RdiError::Domain(format!("{fam}: waveform is required")))?;
            wf.validate()?;
            if self.p_z != 0.0 {
                return bad("dressed states are built on p_z = 0 stationary states".into());
            }
        } else if self.waveform.is_some() {
            return bad("stationary family does not take a waveform".into());
        }
        Ok(())
    }
}

/// ε for the family, with p_z² added under the root.
pub fn eigenvalue(spec: &SolutionSpec) -> Result<f64> {
    spec.validate()?;
    let m2 = spec.mass * spec.mass + spec.p_z * spec.p_z;
    let b2 = spec.b * spec.b;
    let n = spec.n as f64;
    Ok(match spec.family.stationary() {
        Family::FreeBessel => spec.energy.expect("validated"),
        Family::HomogeneousDegenerate => (m2 + 2.0 * b2 * n).sqrt(),
        Family::HomogeneousNondegenerate => (m2 + 2.0 * b2 * (n + spec.l() as f64)).sqrt(),
        _ => {
            let mm = spec.m_orbital as f64;
            let d = 2.0 * n + mm + 1.0;
            (m2 + n * (n + mm + 1.0) * b2 / (4.0 * d * d)).sqrt()
        }
    })
}

/// H(λ) shapes appearing in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HKind {
    /// H = 1.
    Flat,
    /// H = e^{−λ²}.
    Gaussian,
    /// H = e^{−λ/2}.
    Exponential,
}

impl HKind {
    pub fn h(self, lam: f64) -> f64 {
        match self {
            HKind::Flat => 1.0,
            HKind::Gaussian => (-lam * lam).exp(),
            HKind::Exponential => (-0.5 * lam).exp(),
        }
    }

    pub fn dln_h(self, lam: f64) -> f64 {
        match self {
            HKind::Flat => 0.0,
            HKind::Gaussian => -2.0 * lam,
            HKind::Exponential => -0.5,
        }
    }

    /// q = (d ln H/dλ)/λ and λ·dq/dλ.
    fn q(self, lam: f64) -> (f64, f64) {
        match self {
            HKind::Flat => (0.0, 0.0),
            HKind::Gaussian => (-2.0, 0.0),
            HKind::Exponential => (-0.5 / lam, 0.5 / lam),
        }
    }
}

/// Radial data of a stationary state: f, H and the combinations the spinor
/// needs. Profiles are unnormalized.
pub trait RadialProfile: Send + Sync {
    fn big_m(&self) -> i32;
    fn h_kind(&self) -> HKind;
    fn f(&self, lam: f64) -> f64;
    fn df(&self, lam: f64) -> f64;
    fn d2f(&self, lam: f64) -> f64;
    /// (P, Q) = (λ^{M/2}Hf, λ^{M/2}Hf′), regular on the axis.
    fn amplitudes(&self, lam: f64) -> (f64, f64);

    fn h(&self, lam: f64) -> f64 {
        self.h_kind().h(lam)
    }

    fn dln_h(&self, lam: f64) -> f64 {
        self.h_kind().dln_h(lam)
    }
}

/// Closed-form profiles of the catalog.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CatalogProfile {
    /// f = λ^{−l}J_l(αλ), α = 2k/B.
    FreeBessel { l: u32, alpha: f64 },
    /// f = L_n^l(2λ²).
    Degenerate { n: u32, l: u32 },
    /// f = c·(2λ²)^l L_n^l(2λ²), c = n! l!/(n+l)!, i.e. (2λ²)^l ₁F₁(−n; l+1; 2λ²).
    Nondegenerate { n: u32, l: u32 },
    /// f = e^{aλ}L_n^M(κλ), κ = (M+1)/(2n+M+1), a = (1−κ)/2.
    Inhomogeneous { n: u32, m: u32 },
}

impl CatalogProfile {
    pub fn for_spec(spec: &SolutionSpec) -> Result<Self> {
        let eps = eigenvalue(spec)?;
        Ok(match spec.family.stationary() {
            Family::FreeBessel => {
                let k = (eps * eps - spec.mass * spec.mass - spec.p_z * spec.p_z).sqrt();
                CatalogProfile::FreeBessel { l: spec.l(), alpha: 2.0 * k / spec.b }
            }
            Family::HomogeneousDegenerate => CatalogProfile::Degenerate { n: spec.n, l: spec.l() },
            Family::HomogeneousNondegenerate => CatalogProfile::Nondegenerate { n: spec.n, l: spec.l() },
            _ => CatalogProfile::Inhomogeneous { n: spec.n, m: spec.m_orbital as u32 },
        })
    }

    fn nondeg_c(n: u32, l: u32) -> f64 {
        factorial(n) * factorial(l) / factorial(n + l)
    }

    fn kappa(n: u32, m: u32) -> f64 {
        (m as f64 + 1.0) / (2.0 * n as f64 + m as f64 + 1.0)
    }

    /// Laguerre value and first two derivatives with respect to its argument.
    fn lag3(n: u32, alpha: u32, u: f64) -> (f64, f64, f64) {
        let n = n as i32;
        let a = alpha as f64;
        (laguerre(n, a, u), -laguerre(n - 1, a + 1.0, u), laguerre(n - 2, a + 2.0, u))
    }
}

impl RadialProfile for CatalogProfile {
    fn big_m(&self) -> i32 {
        match *self {
            CatalogProfile::FreeBessel { l, .. } | CatalogProfile::Degenerate { l, .. } => 2 * l as i32,
            CatalogProfile::Nondegenerate { l, .. } => -2 * l as i32,
            CatalogProfile::Inhomogeneous { m, .. } => m as i32,
        }
    }

    fn h_kind(&self) -> HKind {
        match self {
            CatalogProfile::FreeBessel { .. } => HKind::Flat,
            CatalogProfile::Degenerate { .. } | CatalogProfile::Nondegenerate { .. } => HKind::Gaussian,
            CatalogProfile::Inhomogeneous { .. } => HKind::Exponential,
        }
    }

    fn f(&self, lam: f64) -> f64 {
        match *self {
            CatalogProfile::FreeBessel { l, alpha } => {
                if lam == 0.0 {
                    (0.5 * alpha).powi(l as i32) / factorial(l)
                } else {
                    bessel_j_unchecked(l, alpha * lam) / lam.powi(l as i32)
                }
            }
            CatalogProfile::Degenerate { n, l } => laguerre(n as i32, l as f64, 2.0 * lam * lam),
            CatalogProfile::Nondegenerate { n, l } => {
                let u = 2.0 * lam * lam;
                Self::nondeg_c(n, l) * u.powi(l as i32) * laguerre(n as i32, l as f64, u)
            }
            CatalogProfile::Inhomogeneous { n, m } => {
                let k = Self::kappa(n, m);
                (0.5 * (1.0 - k) * lam).exp() * laguerre(n as i32, m as f64, k * lam)
            }
        }
    }

    fn df(&self, lam: f64) -> f64 {
        match *self {
            CatalogProfile::FreeBessel { l, alpha } => {
                if lam == 0.0 {
                    return if l == 0 { 0.0 } else { f64::NAN };
                }
                -alpha * bessel_j_unchecked(l + 1, alpha * lam) / lam.powi(l as i32)
            }
            CatalogProfile::Degenerate { n, l } => {
                let (_, d1, _) = Self::lag3(n, l, 2.0 * lam * lam);
                4.0 * lam * d1
            }
            CatalogProfile::Nondegenerate { n, l } => {
                let u = 2.0 * lam * lam;
                let (_, g1, _) = nondeg_g(n, l, u);
                4.0 * lam * Self::nondeg_c(n, l) * g1
            }
            CatalogProfile::Inhomogeneous { n, m } => {
                let k = Self::kappa(n, m);
                let a = 0.5 * (1.0 - k);
                let (l0, l1, _) = Self::lag3(n, m, k * lam);
                (a * lam).exp() * (a * l0 + k * l1)
            }
        }
    }

    fn d2f(&self, lam: f64) -> f64 {
        match *self {
            CatalogProfile::FreeBessel { l, alpha } => {
                let x = alpha * lam;
                let jl = bessel_j_unchecked(l, x);
                let jl1 = bessel_j_unchecked(l + 1, x);
                -alpha / lam.powi(l as i32) * (alpha * jl - (2 * l + 1) as f64 * jl1 / lam)
            }
            CatalogProfile::Degenerate { n, l } => {
                let (_, d1, d2) = Self::lag3(n, l, 2.0 * lam * lam);
                4.0 * d1 + 16.0 * lam * lam * d2
            }
            CatalogProfile::Nondegenerate { n, l } => {
                let u = 2.0 * lam * lam;
                let (_, g1, g2) = nondeg_g(n, l, u);
                Self::nondeg_c(n, l) * (4.0 * g1 + 16.0 * lam * lam * g2)
            }
            CatalogProfile::Inhomogeneous { n, m } => {
                let k = Self::kappa(n, m);
                let a = 0.5 * (1.0 - k);
                let (l0, l1, l2) = Self::lag3(n, m, k * lam);
                (a * lam).exp() * (a * a * l0 + 2.0 * a * k * l1 + k * k * l2)
            }
        }
    }

    fn amplitudes(&self, lam: f64) -> (f64, f64) {
        match *self {
            CatalogProfile::FreeBessel { l, alpha } => {
                let x = alpha * lam;
                (bessel_j_unchecked(l, x), -alpha * bessel_j_unchecked(l + 1, x))
            }
            CatalogProfile::Degenerate { n, l } => {
                let h = (-lam * lam).exp();
                let (l0, l1, _) = Self::lag3(n, l, 2.0 * lam * lam);
                let s = lam.powi(l as i32) * h;
                (s * l0, s * 4.0 * lam * l1)
            }
            CatalogProfile::Nondegenerate { n, l } => {
                let h = (-lam * lam).exp();
                let c = Self::nondeg_c(n, l);
                let (l0, l1, _) = Self::lag3(n, l, 2.0 * lam * lam);
                let two_l = 2f64.powi(l as i32);
                let p = c * two_l * lam.powi(l as i32) * h * l0;
                let first = if l == 0 { 0.0 } else { l as f64 * 0.5 * two_l * lam.powi(l as i32 - 1) * l0 };
                let q = 4.0 * c * h * (first + two_l * lam.powi(l as i32 + 1) * l1);
                (p, q)
            }
            CatalogProfile::Inhomogeneous { n, m } => {
                let k = Self::kappa(n, m);
                let a = 0.5 * (1.0 - k);
                let (l0, l1, _) = Self::lag3(n, m, k * lam);
                let s = lam.powf(0.5 * m as f64) * (-0.5 * k * lam).exp();
                (s * l0, s * (a * l0 + k * l1))
            }
        }
    }
}

/// g(u) = u^l L_n^l(u) and its first two derivatives.
fn nondeg_g(n: u32, l: u32, u: f64) -> (f64, f64, f64) {
    let (l0, l1, l2) = CatalogProfile::lag3(n, l, u);
    let lf = l as f64;
    let pw = |k: i32| if k < 0 { 0.0 } else { u.powi(k) };
    let li = l as i32;
    let g = pw(li) * l0;
    let g1 = lf * pw(li - 1) * l0 + pw(li) * l1;
    let g2 = lf * (lf - 1.0) * pw(li - 2) * l0 + 2.0 * lf * pw(li - 1) * l1 + pw(li) * l2;
    (g, g1, g2)
}

/// Multiplies f by (1 + δλ); a negative control that breaks the radial ODE.
#[derive(Clone, Copy, Debug)]
pub struct Perturbed<P> {
    pub inner: P,
    pub delta: f64,
}

impl<P: RadialProfile> RadialProfile for Perturbed<P> {
    fn big_m(&self) -> i32 {
        self.inner.big_m()
    }
    fn h_kind(&self) -> HKind {
        self.inner.h_kind()
    }
    fn f(&self, lam: f64) -> f64 {
        self.inner.f(lam) * (1.0 + self.delta * lam)
    }
    fn df(&self, lam: f64) -> f64 {
        self.inner.df(lam) * (1.0 + self.delta * lam) + self.delta * self.inner.f(lam)
    }
    fn d2f(&self, lam: f64) -> f64 {
        self.inner.d2f(lam) * (1.0 + self.delta * lam) + 2.0 * self.delta * self.inner.df(lam)
    }
    fn amplitudes(&self, lam: f64) -> (f64, f64) {
        let (p, q) = self.inner.amplitudes(lam);
        let s = 1.0 + self.delta * lam;
        (p * s, q * s + self.delta * p)
    }
}

/// Residual of f″ − 4(m² + p_z² − ε²)f/B² + f′((M+1)/λ + 2H′/H) at λ.
pub fn radial_ode_residual<P: RadialProfile + ?Sized>(p: &P, lam: f64, eps: f64, mass: f64, p_z: f64, b: f64) -> f64 {
    let mm = p.big_m() as f64;
    p.d2f(lam) - 4.0 * (mass * mass + p_z * p_z - eps * eps) * p.f(lam) / (b * b)
        + p.df(lam) * ((mm + 1.0) / lam + 2.0 * p.dln_h(lam))
}

/// 𝒩 making 2π∫J⁰λdλ = 1 (free Bessel: the per-area convention B/√(2ε(m+ε))).
pub fn normalization(spec: &SolutionSpec) -> Result<f64> {
    let eps = eigenvalue(spec)?;
    let b2 = spec.b * spec.b;
    let em = eps * (spec.mass + eps);
    let n = spec.n;
    let n2 = match spec.family.stationary() {
        Family::FreeBessel => b2 / (2.0 * em),
        Family::HomogeneousDegenerate => {
            let l = spec.l();
            factorial(n) * b2 * 2f64.powi(l as i32) / (PI * factorial(n + l) * em)
        }
        Family::HomogeneousNondegenerate => {
            let l = spec.l();
            b2 * factorial(n + l) / (2f64.powi(l as i32) * PI * factorial(n) * factorial(l).powi(2) * em)
        }
        _ => {
            let m = spec.m_orbital as u32;
            let mm = m as f64;
            let d = 2.0 * n as f64 + mm + 1.0;
            b2 * (mm + 1.0).powf(mm + 2.0) * factorial(n) / (4.0 * PI * factorial(n + m) * d.powf(mm + 3.0) * em)
        }
    };
    Ok(n2.sqrt())
}

/// The normalization constants as printed alongside the homogeneous and
/// inhomogeneous solutions; the homogeneous constant is used for both
/// branches because only one is given.
pub fn printed_normalization(spec: &SolutionSpec) -> Result<f64> {
    let eps = eigenvalue(spec)?;
    let em = eps * (spec.mass + eps);
    let b = spec.b;
    let n = spec.n;
    Ok(match spec.family.stationary() {
        Family::FreeBessel => b / (2f64.sqrt() * eps * (spec.mass / eps + 1.0).sqrt()),
        Family::HomogeneousDegenerate | Family::HomogeneousNondegenerate => {
            let l = spec.l();
            b / (factorial(l) * (2f64.powi(2 - l as i32) * PI * em).sqrt()) * (factorial(l + n) / factorial(n)).sqrt()
        }
        _ => {
            let m = spec.m_orbital as u32;
            let mm = m as f64;
            let d = 2.0 * n as f64 + mm + 1.0;
            b * b * (mm + 1.0).powf(mm / 2.0 + 1.0) * factorial(n).sqrt()
                / (2.0 * 2f64.sqrt() * (2.0 * PI * d.powf(mm + 3.0) * factorial(m + n) * em).sqrt())
        }
    })
}

/// (f, H) at λ, with f normalized.
pub fn radial_profile(spec: &SolutionSpec, lam: f64) -> Result<(f64, f64)> {
    let p = CatalogProfile::for_spec(spec)?;
    let nn = normalization(spec)?;
    Ok((nn * p.f(lam), p.h(lam)))
}

/// Cylindrical coordinates (λ, φ) of a point.
pub fn lambda_phi(b: f64, x: f64, y: f64) -> (f64, f64) {
    (0.5 * b * x.hypot(y), y.atan2(x))
}

/// Column spinor of a stationary state built from any profile.
pub fn stationary_column<P: RadialProfile + ?Sized>(
    profile: &P,
    norm: f64,
    eps: f64,
    mass: f64,
    p_z: f64,
    b: f64,
    x: &SpacetimePoint,
) -> ColumnSpinor {
    let (lam, phi) = lambda_phi(b, x[1], x[2]);
    let (p, q) = profile.amplitudes(lam);
    let mm = profile.big_m() as f64;
    let phase = Cplx::from_polar(norm, -eps * x[0] + p_z * x[3] + 0.5 * mm * phi);
    let e_phi = Cplx::from_polar(1.0, phi);
    ColumnSpinor::new([
        phase * ((mass + eps) * p / b),
        Cplx::new(0.0, 0.0),
        phase * (p_z * p / b),
        phase * e_phi * Cplx::new(0.0, -0.5 * q),
    ])
}

/// The laser dressing attached to one stationary energy ε.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaserDressing {
    pub wf: Waveform,
    pub eps: f64,
}

impl LaserDressing {
    pub fn xi(&self, x: &SpacetimePoint) -> f64 {
        self.wf.omega * (x[0] - x[3])
    }

    /// 𝒜^μ with N = k̸𝒜̸ = k̸∧𝒜̸, k = ω(1, 0, 0, 1).
    pub fn transverse_vector(&self, xi: f64) -> FourVector {
        let w = self.wf.omega;
        let d = self.wf.df(xi);
        FourVector::new(0.0, d[0], d[1], 0.0).scale(1.0 / (2.0 * self.eps * w * w))
    }

    /// N = (γ₀ + γ₃)(ḟ₁γ₁ + ḟ₂γ₂)/(2εω).
    pub fn generator(&self, xi: f64) -> Multivector {
        let w = self.wf.omega;
        let k = FourVector::new(w, 0.0, 0.0, w);
        k.slash() * self.transverse_vector(xi).slash()
    }

    pub fn rotor(&self, xi: f64) -> Multivector {
        Multivector::identity() + self.generator(xi)
    }

    /// Φ = −∫₀^ξ ḟ² / (2εω³).
    pub fn gauge_phase(&self, xi: f64) -> f64 {
        let w = self.wf.omega;
        -self.wf.gauge_integral(xi) / (2.0 * self.eps * w * w * w)
    }

    /// (t, x′, y′, z) with x′ = x + f₁/(εω²).
    pub fn shifted(&self, x: &SpacetimePoint) -> SpacetimePoint {
        let xi = self.xi(x);
        let f = self.wf.f(xi);
        let s = 1.0 / (self.eps * self.wf.omega * self.wf.omega);
        [x[0], x[1] + s * f[0], x[2] + s * f[1], x[3]]
    }

    /// u = ḟ/(εω), the transverse drift velocity.
    pub fn drift(&self, xi: f64) -> [f64; 2] {
        let d = self.wf.df(xi);
        let s = 1.0 / (self.eps * self.wf.omega);
        [d[0] * s, d[1] * s]
    }

    /// tan(θ/2) = |ḟ|/(2εω).
    pub fn half_angle_tan(&self, xi: f64) -> f64 {
        let d = self.wf.df(xi);
        d[0].hypot(d[1]) / (2.0 * self.eps * self.wf.omega)
    }

    /// Ψ_T = (1 + N)Ψ(t, x′, y′, z)e^{γ₂γ₁Φ}.
    pub fn apply<F: Fn(&SpacetimePoint) -> Multivector>(&self, stationary: F, x: &SpacetimePoint) -> Multivector {
        let xi = self.xi(x);
        self.rotor(xi) * stationary(&self.shifted(x)) * phase_rotor(-self.gauge_phase(xi))
    }

    /// Closed-form polar factors of 1 + N: rotation U_r and left boost U_r𝓑_rU_r†.
    pub fn polar_closed_form(&self, xi: f64) -> RotorFactors {
        let d = self.wf.df(xi);
        let theta = 2.0 * self.half_angle_tan(xi).atan();
        let vt = d[1].atan2(d[0]);
        let (sv, cv) = vt.sin_cos();
        // −(θ/2)(cos ϑ γ¹γ³ + sin ϑ γ²γ³) = −b·𝒊α with b = (θ/2)(−sin ϑ, cos ϑ, 0).
        let u_r = exp_bivector([0.0; 3], [-0.5 * theta * sv, 0.5 * theta * cv, 0.0]);
        let (sh, ch) = (0.5 * theta).sin_cos();
        let w = sh.atanh();
        let b_r = exp_bivector([-w * ch * cv, -w * ch * sv, -w * sh], [0.0; 3]);
        RotorFactors { boost: u_r * b_r * u_r.dagger(), rotation: u_r }
    }
}

/// The laser-dressing transform of a stationary matrix-spinor field.
pub fn laser_dress<F>(stationary: F, wf: Waveform, eps: f64) -> impl Fn(&SpacetimePoint) -> Multivector
where
    F: Fn(&SpacetimePoint) -> Multivector,
{
    let d = LaserDressing { wf, eps };
    move |x| d.apply(&stationary, x)
}

/// A spec bundled with everything derived from it.
#[derive(Clone, Copy, Debug)]
pub struct Solution {
    pub spec: SolutionSpec,
    pub eps: f64,
    pub norm: f64,
    pub profile: CatalogProfile,
}

impl Solution {
    pub fn new(spec: SolutionSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            eps: eigenvalue(&spec)?,
            norm: normalization(&spec)?,
            profile: CatalogProfile::for_spec(&spec)?,
            spec,
        })
    }

    pub fn dressing(&self) -> Option<LaserDressing> {
        self.spec.waveform.map(|wf| LaserDressing { wf, eps: self.eps })
    }

    pub fn stationary_spinor(&self, x: &SpacetimePoint) -> ColumnSpinor {
        let s = &self.spec;
        stationary_column(&self.profile, self.norm, self.eps, s.mass, s.p_z, s.b, x)
    }

    pub fn spinor(&self, x: &SpacetimePoint) -> ColumnSpinor {
        match self.dressing() {
            None => self.stationary_spinor(x),
            Some(d) => {
                let xi = d.xi(x);
                let inner = self.stationary_spinor(&d.shifted(x));
                let rotated = ColumnSpinor::new(d.rotor(xi).apply(&inner.psi));
                rotated.scale(Cplx::from_polar(1.0, d.gauge_phase(xi)))
            }
        }
    }

    pub fn matrix_spinor(&self, x: &SpacetimePoint) -> Multivector {
        self.spinor(x).to_matrix()
    }

    /// G(λ) = (B²/4λ) d ln H/dλ and B_s = −2G − rG′(r).
    fn g_and_field(&self, lam: f64) -> (f64, f64) {
        let (q, lam_dq) = self.profile.h_kind().q(lam);
        let b2 = self.spec.b * self.spec.b;
        (0.25 * b2 * q, -0.25 * b2 * (2.0 * q + lam_dq))
    }

    fn check_axis(&self, x: f64, y: f64) -> Result<()> {
        if self.spec.family.axis_singular() && x == 0.0 && y == 0.0 {
            return Err(RdiError::OnAxis);
        }
        Ok(())
    }

    /// Static potential (0, Gy, −Gx, 0) at transverse position (x, y).
    pub fn static_potential(&self, x: f64, y: f64) -> Result<FourVector> {
        self.check_axis(x, y)?;
        let (lam, _) = lambda_phi(self.spec.b, x, y);
        let (g, _) = self.g_and_field(lam);
        Ok(FourVector::new(0.0, g * y, -g * x, 0.0))
    }

    /// B_s(r) along z and its radial derivative.
    pub fn static_field(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        self.check_axis(x, y)?;
        let r = x.hypot(y);
        let b = self.spec.b;
        Ok(match self.profile.h_kind() {
            HKind::Flat => (0.0, 0.0),
            HKind::Gaussian => (b * b, 0.0),
            HKind::Exponential => (b / (4.0 * r), -b / (4.0 * r * r)),
        })
    }

    pub fn potential_split(&self, x: &SpacetimePoint) -> Result<PotentialSplit> {
        let static_ = self.static_potential(x[1], x[2])?;
        let Some(d) = self.dressing() else {
            return Ok(PotentialSplit { radiation: static_, laser: FourVector::default(), static_ });
        };
        let xs = d.shifted(x);
        let a = self.static_potential(xs[1], xs[2])?;
        let xi = d.xi(x);
        let u = d.drift(xi);
        let q = -(a.0[1] * u[0] + a.0[2] * u[1]);
        let df = self.spec.waveform.expect("dressed").df(xi);
        let w = d.wf.omega;
        Ok(PotentialSplit {
            radiation: FourVector::new(q, a.0[1], a.0[2], q),
            laser: FourVector::new(0.0, df[0] / w, df[1] / w, 0.0),
            static_,
        })
    }

    /// Total eA^μ (contravariant).
    pub fn potential(&self, x: &SpacetimePoint) -> Result<FourVector> {
        let s = self.potential_split(x)?;
        Ok(s.radiation + s.laser)
    }

    pub fn fields(&self, x: &SpacetimePoint) -> Result<FieldSample> {
        let Some(d) = self.dressing() else {
            let (bs, dbs) = self.static_field(x[1], x[2])?;
            let r = x[1].hypot(x[2]);
            let (sx, sy) = if r > 0.0 { (x[1] / r, x[2] / r) } else { (0.0, 0.0) };
            return Ok(FieldSample {
                e: [0.0; 3],
                b: [0.0, 0.0, bs],
                charge_source: 0.0,
                current_source: [dbs * sy, -dbs * sx, 0.0],
            });
        };
        let xs = d.shifted(x);
        let (bs, dbs) = self.static_field(xs[1], xs[2])?;
        let xi = d.xi(x);
        let u = d.drift(xi);
        let dd = d.wf.d2f(xi);
        let r = xs[1].hypot(xs[2]);
        let (sx, sy) = if r > 0.0 { (xs[1] / r, xs[2] / r) } else { (0.0, 0.0) };
        let rho_e = dbs * (sx * u[1] - sy * u[0]);
        Ok(FieldSample {
            e: [bs * u[1] - dd[0], -bs * u[0] - dd[1], 0.0],
            b: [bs * u[0] + dd[1], bs * u[1] - dd[0], bs],
            charge_source: rho_e,
            current_source: [dbs * sy, -dbs * sx, rho_e],
        })
    }

    /// Closed-form velocity and spin. Stationary states use the boost
    /// 𝓑 ∝ (m+ε) + κ(yα₁ − xα₂) + p_zα₃; dressed states sandwich those by 1 + N.
    pub fn velocity_spin(&self, x: &SpacetimePoint) -> Result<(FourVector, FourVector)> {
        match self.dressing() {
            None => self.stationary_velocity_spin(x),
            Some(d) => {
                let (v, s) = self.stationary_velocity_spin(&d.shifted(x))?;
                let r = d.rotor(d.xi(x));
                Ok((sandwich(&r, &v)?, sandwich(&r, &s)?))
            }
        }
    }

    fn stationary_boost(&self, x: &SpacetimePoint) -> Result<(Multivector, f64)> {
        let s = &self.spec;
        let r = x[1].hypot(x[2]);
        let (lam, _) = lambda_phi(s.b, x[1], x[2]);
        let (p, q) = self.profile.amplitudes(lam);
        if p == 0.0 {
            return Err(RdiError::NullDensity);
        }
        // κ·r = B f′/(2f) = B Q/(2P).
        let kr = s.b * q / (2.0 * p);
        let norm2 = (s.mass + self.eps).powi(2) - s.p_z * s.p_z;
        let u2 = kr * kr / norm2;
        if u2 >= 1.0 {
            return Err(RdiError::Domain(format!(
                "boost parameter {u2:.3} >= 1: the state has negative scalar density here"
            )));
        }
        let (ex, ey) = if r > 0.0 { (x[1] / r, x[2] / r) } else { (0.0, 0.0) };
        let mut boost = Multivector::identity() * (s.mass + self.eps)
            + crate::sta_core::alpha(1) * (kr * ey)
            + crate::sta_core::alpha(2) * (-kr * ex)
            + crate::sta_core::alpha(3) * s.p_z;
        boost = boost * (1.0 / (norm2 * (1.0 - u2)).sqrt());
        Ok((boost, u2))
    }

    fn stationary_velocity_spin(&self, x: &SpacetimePoint) -> Result<(FourVector, FourVector)> {
        let (b, _) = self.stationary_boost(x)?;
        let e = |mu: usize| sandwich(&b, &FourVector({
            let mut c = [0.0; 4];
            c[mu] = 1.0;
            c
        }));
        Ok((e(0)?, e(3)?))
    }

    /// Closed-form factors √ρ, 𝓑 and phase of a stationary state where the
    /// boost is subluminal.
    pub fn stationary_factors(&self, x: &SpacetimePoint) -> Result<MatrixSpinor> {
        if self.spec.family.is_dressed() {
            return Err(RdiError::Domain("stationary factors requested for a dressed family".into()));
        }
        let s = &self.spec;
        let (boost, u2) = self.stationary_boost(x)?;
        let (lam, phi) = lambda_phi(s.b, x[1], x[2]);
        let (p, _) = self.profile.amplitudes(lam);
        let norm2 = (s.mass + self.eps).powi(2) - s.p_z * s.p_z;
        let sqrt_rho = self.norm * p * (norm2 * (1.0 - u2)).sqrt() / s.b;
        let phase = self.eps * x[0] - s.p_z * x[3] - 0.5 * self.profile.big_m() as f64 * phi;
        // A negative radial factor is a half turn of the phase rotor; fold it into ℛ.
        let rotor = if sqrt_rho < 0.0 { -boost } else { boost };
        MatrixSpinor::new(sqrt_rho * sqrt_rho, 0.0, rotor, phase)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialSplit {
    /// The transformed static potential (equal to the static one when undressed).
    pub radiation: FourVector,
    /// ḟ/ω.
    pub laser: FourVector,
    /// The undressed potential at the unshifted point, for reference.
    pub static_: FourVector,
}

/// Fields and their sources; μ₀ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub charge_source: f64,
    pub current_source: [f64; 3],
}

impl FieldSample {
    pub fn e_dot_b(&self) -> f64 {
        (0..3).map(|k| self.e[k] * self.b[k]).sum()
    }

    pub fn invariant(&self) -> f64 {
        (0..3).map(|k| self.e[k] * self.e[k] - self.b[k] * self.b[k]).sum()
    }
}

pub fn spinor(spec: &SolutionSpec, x: &SpacetimePoint) -> Result<ColumnSpinor> {
    Ok(Solution::new(*spec)?.spinor(x))
}

pub fn potential(spec: &SolutionSpec, x: &SpacetimePoint) -> Result<FourVector> {
    Solution::new(*spec)?.potential(x)
}

pub fn fields(spec: &SolutionSpec, x: &SpacetimePoint) -> Result<FieldSample> {
    Solution::new(*spec)?.fields(x)
}

pub fn velocity_spin(spec: &SolutionSpec, x: &SpacetimePoint) -> Result<(FourVector, FourVector)> {
    Solution::new(*spec)?.velocity_spin(x)
}

/// Fields from the potential by fourth-order differences: E = −∇A⁰ − ∂ₜA, B = ∇×A.
pub fn fields_from_potential(sol: &Solution, x: &SpacetimePoint, h: f64) -> Result<([f64; 3], [f64; 3])> {
    sol.potential(x)?;
    let mut d = [[0.0; 4]; 4];
    for (mu, row) in d.iter_mut().enumerate() {
        *row = numerics::central4(
            |s| {
                let mut p = *x;
                p[mu] += s;
                sol.potential(&p).map(|a| a.0).unwrap_or([f64::NAN; 4])
            },
            h,
        );
    }
    // d[mu][nu] = ∂_mu A^nu
    let e = [-d[1][0] - d[0][1], -d[2][0] - d[0][2], -d[3][0] - d[0][3]];
    let b = [d[2][3] - d[3][2], d[3][1] - d[1][3], d[1][2] - d[2][1]];
    Ok((e, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Averages {
    pub rho: f64,
    /// Azimuthal current J·φ̂ (counterclockwise positive); stationary only.
    pub j_phi: Option<f64>,
    pub j_z: f64,
    pub centroid: [f64; 2],
}

fn require_normalizable(spec: &SolutionSpec) -> Result<()> {
    if !spec.family.is_normalizable() {
        return Err(RdiError::NotNormalizable);
    }
    Ok(())
}

/// Γ(k/2).
fn gamma_half(k: u32) -> f64 {
    let mut g = if k % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut j = 2 - k % 2;
    while j < k {
        g *= j as f64 / 2.0;
        j += 2;
    }
    g
}

/// Coefficients in λ of a polynomial in u = 2λ², shifted by λ^shift.
fn poly_in_lambda(p: &PolyEval, shift: usize, scale: f64) -> Vec<f64> {
    let mut out = vec![0.0; 2 * p.coefficients.len() + shift];
    for (j, c) in p.coefficients.iter().enumerate() {
        out[2 * j + shift] = c * 2f64.powi(j as i32) * scale;
    }
    out
}

/// ∫₀^∞ λ^k e^{−2λ²} dλ.
fn gauss_moment(k: usize) -> f64 {
    0.5 * 2f64.powf(-(k as f64 + 1.0) / 2.0) * gamma_half(k as u32 + 1)
}

/// ∫PQλdλ for the Gaussian families from Laguerre coefficients.
fn homogeneous_pq_moment(profile: &CatalogProfile) -> f64 {
    let (p, q) = match *profile {
        CatalogProfile::Degenerate { n, l } => {
            let p = poly_in_lambda(&PolyEval::laguerre(n, l as f64), l as usize, 1.0);
            let q = if n == 0 {
                vec![0.0]
            } else {
                poly_in_lambda(&PolyEval::laguerre(n - 1, l as f64 + 1.0), l as usize + 1, -4.0)
            };
            (p, q)
        }
        CatalogProfile::Nondegenerate { n, l } => {
            let c = CatalogProfile::nondeg_c(n, l);
            let two_l = 2f64.powi(l as i32);
            let p = poly_in_lambda(&PolyEval::laguerre(n, l as f64), l as usize, c * two_l);
            let mut q = if n == 0 {
                vec![0.0; l as usize + 2]
            } else {
                poly_in_lambda(&PolyEval::laguerre(n - 1, l as f64 + 1.0), l as usize + 1, -4.0 * c * two_l)
            };
            if l > 0 {
                let first = poly_in_lambda(&PolyEval::laguerre(n, l as f64), l as usize - 1, 2.0 * c * l as f64 * two_l);
                if q.len() < first.len() {
                    q.resize(first.len(), 0.0);
                }
                for (k, v) in first.iter().enumerate() {
                    q[k] += v;
                }
            }
            (p, q)
        }
        _ => unreachable!("Gaussian families only"),
    };
    let mut total = 0.0;
    for (i, pi) in p.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            if *pi != 0.0 && *qj != 0.0 {
                total += pi * qj * gauss_moment(i + j + 1);
            }
        }
    }
    total
}

/// Closed-form averages over the transverse plane with measure λ′dλ′dφ,
/// normalized by the stationary charge, at phase ξ (ignored when undressed).
pub fn averages(spec: &SolutionSpec, xi: f64) -> Result<Averages> {
    require_normalizable(spec)?;
    let sol = Solution::new(*spec)?;
    let eps = sol.eps;
    let rho = spec.mass / eps;
    let Some(d) = sol.dressing() else {
        let j_phi = match sol.profile {
            CatalogProfile::Inhomogeneous { n, m } => {
                let (n, m) = (n as f64, m as f64);
                let dd = 2.0 * n + m + 1.0;
                -spec.b * n * (1.0 + n + m) / (dd * dd * eps)
            }
            prof => -2.0 * PI * sol.norm * sol.norm * (spec.mass + eps) / spec.b * homogeneous_pq_moment(&prof),
        };
        return Ok(Averages { rho, j_phi: Some(j_phi), j_z: spec.p_z / eps, centroid: [0.0; 2] });
    };
    let df = d.wf.df(xi);
    let w = d.wf.omega;
    let j_z = (df[0] * df[0] + df[1] * df[1]) / (2.0 * eps * eps * w * w);
    let n = spec.n as f64;
    let coef = match spec.family {
        Family::Redmond => n,
        _ => {
            let m = spec.m_orbital as f64;
            3.0 * n * (n + m + 1.0) / (2.0 * (m + 1.0))
        }
    };
    let s = coef / (w * eps * eps);
    Ok(Averages { rho, j_phi: None, j_z, centroid: [s * df[1], -s * df[0]] })
}

/// The averages exactly as printed with the solutions.
pub fn printed_averages(spec: &SolutionSpec, xi: f64) -> Result<Averages> {
    require_normalizable(spec)?;
    let eps = eigenvalue(spec)?;
    let n = spec.n as f64;
    let m = spec.m_orbital as f64;
    let d = 2.0 * n + m + 1.0;
    let rho = spec.mass / eps;
    match spec.waveform {
        None => {
            let j_phi = match spec.family {
                Family::Inhomogeneous => spec.b * n * (1.0 + n + m) / (d * d * eps),
                _ => 2f64.sqrt() * spec.b * n / eps,
            };
            Ok(Averages { rho, j_phi: Some(j_phi), j_z: 0.0, centroid: [0.0; 2] })
        }
        Some(wf) => {
            let df = wf.df(xi);
            let w = wf.omega;
            let j_z = (df[0] * df[0] + df[1] * df[1]) / (2.0 * eps * eps * w * w);
            let s = match spec.family {
                Family::Redmond => -2.0 * PI * n / (w * eps * eps),
                _ => PI * n * (m + n + 1.0) / ((m + 1.0) * w * eps * eps * d),
            };
            Ok(Averages { rho, j_phi: None, j_z, centroid: [s * df[1], -s * df[0]] })
        }
    }
}

/// Shift of the averaged current under dressing, contravariant components:
/// ⟨J^μ_r⟩ − ⟨J^μ⟩ = (2tan²(θ/2), −ḟ₁/(εω), −ḟ₂/(εω), 2tan²(θ/2)).
pub fn dressed_current_shift(spec: &SolutionSpec, xi: f64) -> Result<FourVector> {
    let sol = Solution::new(*spec)?;
    let d = sol.dressing().ok_or_else(|| RdiError::Domain("not a dressed family".into()))?;
    let t = d.half_angle_tan(xi);
    let u = d.drift(xi);
    Ok(FourVector::new(2.0 * t * t, -u[0], -u[1], 2.0 * t * t))
}

/// Plane integrals by adaptive radial quadrature and an azimuthal trapezoid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericAverages {
    /// ∫J⁰ λdλdφ of the stationary state (1 when normalized).
    pub stationary_charge: f64,
    /// ∫J⁰ λdλdφ of the evaluated (possibly dressed) state.
    pub charge: f64,
    pub averages: Averages,
    /// ∫J^μ λ′dλ′dφ over the stationary charge.
    pub current: FourVector,
}

/// Radial cutoff beyond which the integrands are below 1e−30.
fn radial_cutoff(profile: &CatalogProfile) -> f64 {
    match *profile {
        CatalogProfile::Degenerate { n, l } | CatalogProfile::Nondegenerate { n, l } => {
            6.0 + 0.6 * ((n + l) as f64).sqrt()
        }
        CatalogProfile::Inhomogeneous { n, m } => {
            let k = CatalogProfile::kappa(n, m);
            (80.0 + 6.0 * (n + m) as f64) / k
        }
        CatalogProfile::FreeBessel { .. } => f64::INFINITY,
    }
}

pub fn averages_numeric(spec: &SolutionSpec, xi: f64, azimuthal_nodes: usize) -> Result<NumericAverages> {
    require_normalizable(spec)?;
    let sol = Solution::new(*spec)?;
    let b = spec.b;
    let t = match sol.dressing() {
        Some(d) => xi / d.wf.omega,
        None => 0.0,
    };
    let d = sol.dressing();
    let cutoff = radial_cutoff(&sol.profile);
    // Integrate in the shifted frame: x′ = 2λ′cos φ/B, with the physical point x = x′ − f/(εω²).
    let shift = match d {
        Some(d) => {
            let f = d.wf.f(xi);
            let s = 1.0 / (d.eps * d.wf.omega * d.wf.omega);
            [f[0] * s, f[1] * s]
        }
        None => [0.0; 2],
    };
    let integrand = |k: usize| {
        let sol = &sol;
        move |lam: f64| {
            numerics::trapezoid_periodic(
                |phi| {
                    let r = 2.0 * lam / b;
                    let xp = r * phi.cos();
                    let yp = r * phi.sin();
                    let x = [t, xp - shift[0], yp - shift[1], 0.0];
                    let stat = sol.stationary_spinor(&[t, xp, yp, 0.0]);
                    let psi = sol.spinor(&x);
                    let j0 = psi.norm_sqr();
                    let val = match k {
                        0 => stat.norm_sqr(),
                        1 => j0,
                        2 => psi.bilinear(&Multivector::identity()).re,
                        3 => {
                            let j = crate::spinor_factory::observables(&psi).map(|o| o.current.0).unwrap_or([0.0; 4]);
                            -j[1] * phi.sin() + j[2] * phi.cos()
                        }
                        4 | 5 | 6 => psi.bilinear(&(gamma(0) * crate::sta_core::alpha(k - 3))).re,
                        7 => xp * j0,
                        _ => yp * j0,
                    };
                    val * lam
                },
                2.0 * PI,
                azimuthal_nodes,
            )
        }
    };
    let q = |k: usize| numerics::integrate(integrand(k), 0.0, cutoff, 48, 1e-14);
    let zs = q(0);
    let charge = q(1);
    let sigma = q(2);
    let jphi = q(3);
    let jx = q(4);
    let jy = q(5);
    let jz = q(6);
    let cx = q(7);
    let cy = q(8);
    Ok(NumericAverages {
        stationary_charge: zs,
        charge,
        averages: Averages {
            rho: sigma / zs,
            j_phi: if d.is_none() { Some(jphi / zs) } else { None },
            j_z: jz / zs,
            centroid: [cx / zs, cy / zs],
        },
        current: FourVector::new(charge / zs, jx / zs, jy / zs, jz / zs),
    })
}

/// 2π∫J⁰λdλ of the stationary state normalized with a given constant.
pub fn charge_with_normalization(spec: &SolutionSpec, norm: f64) -> Result<f64> {
    require_normalizable(spec)?;
    let sol = Solution::new(spec.stationary())?;
    let s = &sol.spec;
    let a = ((s.mass + sol.eps).powi(2) + s.p_z * s.p_z) / (s.b * s.b);
    let cutoff = radial_cutoff(&sol.profile);
    let v = numerics::integrate(
        |lam| {
            let (p, q) = sol.profile.amplitudes(lam);
            (a * p * p + 0.25 * q * q) * lam
        },
        0.0,
        cutoff,
        48,
        1e-15,
    );
    Ok(2.0 * PI * norm * norm * v)
}

/// Upper-index γ matrices, re-exported for callers building Dirac operators.
pub fn gamma_upper(mu: usize) -> Multivector {
    gamma_up(mu)
}

/// The three parameter sets per family exercised by the verification suite.
pub fn standard_parameter_sets(family: Family) -> Vec<SolutionSpec> {
    let circular = Waveform::new(WaveformKind::CircularSin, 0.4, 0.8);
    let linear = Waveform::new(WaveformKind::LinearSin, 0.4, 0.8);
    let pulse = Waveform { tau: 3.0, ..Waveform::new(WaveformKind::PulseEnvelope, 0.4, 0.8) };
    let bessel = [
        SolutionSpec::free_bessel(0, 1.5, 1.0),
        SolutionSpec::free_bessel(1, 1.3, 0.8),
        SolutionSpec::free_bessel(2, 2.0, 1.2),
    ];
    let degenerate = [
        SolutionSpec::homogeneous_degenerate(1, 0, 1.0),
        SolutionSpec::homogeneous_degenerate(2, 1, 0.7),
        SolutionSpec::homogeneous_degenerate(1, 2, 1.3),
    ];
    let inhomogeneous = [
        SolutionSpec::inhomogeneous(1, 0, 1.0),
        SolutionSpec::inhomogeneous(2, 1, 1.3),
        SolutionSpec::inhomogeneous(1, 2, 0.6),
    ];
    let dress = |base: [SolutionSpec; 3]| {
        base.into_iter().zip([circular, linear, pulse]).map(|(s, w)| s.with_waveform(w)).collect()
    };
    match family {
        Family::FreeBessel => vec![bessel[0], bessel[1], bessel[2].with_pz(0.4)],
        Family::HomogeneousDegenerate => vec![degenerate[0], degenerate[1], degenerate[2].with_pz(0.5)],
        Family::HomogeneousNondegenerate => vec![
            SolutionSpec::homogeneous_nondegenerate(1, 1, 1.0),
            SolutionSpec::homogeneous_nondegenerate(0, 2, 0.8),
            SolutionSpec::homogeneous_nondegenerate(2, 1, 1.2).with_pz(0.3),
        ],
        Family::Inhomogeneous => vec![inhomogeneous[0], inhomogeneous[1], inhomogeneous[2].with_pz(0.4)],
        Family::VolkovBessel => dress(bessel),
        Family::Redmond => dress(degenerate),
        Family::InhomogeneousLaser => dress(inhomogeneous),
    }
}

/// Short stable identifier of a spec, used as a report key.
pub fn spec_id(spec: &SolutionSpec) -> String {
    let mut id = format!("{}[n={},M={},b={},pz={},m={}", spec.family, spec.n, spec.m_orbital, spec.b, spec.p_z, spec.mass);
    if let Some(e) = spec.energy {
        id.push_str(&format!(",e={e}"));
    }
    if let Some(w) = spec.waveform {
        let kind = match w.kind {
            WaveformKind::CircularSin => "circular",
            WaveformKind::LinearSin => "linear",
            WaveformKind::PulseEnvelope => "pulse",
        };
        id.push_str(&format!(",wave={kind},a={},w={}", w.amplitude, w.omega));
        if w.kind == WaveformKind::PulseEnvelope {
            id.push_str(&format!(",tau={}", w.tau));
        }
    }
    id.push(']');
    id
}
