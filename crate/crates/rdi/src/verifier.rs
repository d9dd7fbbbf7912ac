//! Pointwise machine checks of the catalog and the report they feed.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{RdiError, Result};
use crate::numerics::{self, central4, FdPolicy};
use crate::rdi_inverter::{self, gradient, invert};
use crate::solution_catalog::{
    self as catalog, averages, averages_numeric, charge_with_normalization, dressed_current_shift, eigenvalue,
    printed_averages, printed_normalization, radial_ode_residual, spec_id, stationary_column, standard_parameter_sets,
    Family, LaserDressing, Perturbed, RadialProfile, Solution, SolutionSpec, Waveform, WaveformKind,
};
use crate::special_fn::{bessel_j_signed, bessel_j_unchecked};
use crate::spinor_factory::{observables, plane_wave, ColumnSpinor};
use crate::sta_core::{alpha, gamma, gamma5, gamma_up, spin_plane, Cplx, FourVector, Multivector, SpacetimePoint, ETA};

/// Denominator floor for relative residuals.
pub const EPS_FLOOR: f64 = 1e-30;

/// Column- and matrix-form Dirac residuals, both relative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiracResidual {
    /// ‖γ^μ(i∂_μ − eA_μ)ψ − mψ‖ / max(‖mψ‖, floor).
    pub column: f64,
    /// ‖∂̸Ψγ₂γ₁ − eA̸Ψ − mΨγ₀‖ / max(‖mΨ‖, floor), Frobenius norms.
    pub matrix: f64,
}

impl DiracResidual {
    pub fn max(&self) -> f64 {
        self.column.max(self.matrix)
    }
}

fn column_gradient<F>(field: &F, x: &SpacetimePoint, h: f64) -> [[Cplx; 4]; 4]
where
    F: Fn(&SpacetimePoint) -> ColumnSpinor + ?Sized,
{
    std::array::from_fn(|mu| {
        let d = central4(
            |s| {
                let mut p = *x;
                p[mu] += s;
                let psi = field(&p).psi;
                std::array::from_fn::<f64, 8, _>(|k| if k % 2 == 0 { psi[k / 2].re } else { psi[k / 2].im })
            },
            h,
        );
        std::array::from_fn(|k| Cplx::new(d[2 * k], d[2 * k + 1]))
    })
}

fn frobenius(m: &Multivector) -> f64 {
    m.m.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Dirac residuals of a column field and its matrix counterpart against a
/// potential, both differentiated independently.
pub fn dirac_residual_fields<C, M, A>(
    column: &C,
    matrix: &M,
    potential: &A,
    mass: f64,
    x: &SpacetimePoint,
    h: f64,
) -> Result<DiracResidual>
where
    C: Fn(&SpacetimePoint) -> ColumnSpinor + ?Sized,
    M: Fn(&SpacetimePoint) -> Multivector + ?Sized,
    A: Fn(&SpacetimePoint) -> Result<FourVector> + ?Sized,
{
    let a_slash = potential(x)?.slash();
    let psi = column(x);
    let grad = column_gradient(column, x, h);
    let i = Cplx::new(0.0, 1.0);
    let mut res = [Cplx::default(); 4];
    for (mu, d) in grad.iter().enumerate() {
        let g = gamma_up(mu).apply(d);
        for k in 0..4 {
            res[k] += i * g[k];
        }
    }
    let ap = a_slash.apply(&psi.psi);
    for k in 0..4 {
        res[k] -= ap[k] + psi.psi[k] * mass;
    }
    let res_norm = res.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let col = res_norm / (mass * psi.norm_sqr().sqrt()).max(EPS_FLOOR);

    let big = matrix(x);
    let mgrad = gradient(matrix, x, h);
    let r = rdi_inverter::dirac_operator(&mgrad) * spin_plane() - a_slash * big - big * gamma(0) * mass;
    let mat = frobenius(&r) / (mass * frobenius(&big)).max(EPS_FLOOR);
    Ok(DiracResidual { column: col, matrix: mat })
}

/// Dirac residual of a catalog state against its own potential.
pub fn dirac_residual(sol: &Solution, x: &SpacetimePoint, h: f64) -> Result<DiracResidual> {
    dirac_residual_fields(
        &|p: &SpacetimePoint| sol.spinor(p),
        &|p: &SpacetimePoint| sol.matrix_spinor(p),
        &|p: &SpacetimePoint| sol.potential(p),
        sol.spec.mass,
        x,
        h,
    )
}

/// J^μ = (ψ†ψ, ψ†α_kψ).
pub fn current(psi: &ColumnSpinor) -> [f64; 4] {
    let mut j = [psi.norm_sqr(), 0.0, 0.0, 0.0];
    for k in 1..=3 {
        j[k] = psi.bilinear(&(gamma(0) * alpha(k))).re;
    }
    j
}

/// |∂_μJ^μ| / J⁰.
pub fn continuity_residual<C>(column: &C, x: &SpacetimePoint, h: f64) -> f64
where
    C: Fn(&SpacetimePoint) -> ColumnSpinor + ?Sized,
{
    let mut div = 0.0;
    for mu in 0..4 {
        let d = central4(
            |s| {
                let mut p = *x;
                p[mu] += s;
                [current(&column(&p))[mu]]
            },
            h,
        );
        div += d[0];
    }
    div.abs() / current(&column(x))[0].max(EPS_FLOOR)
}

/// Largest violation of Gauss, Ampère–Maxwell, ∇·B = 0 and Faraday, with
/// sources taken from the closed-form [`catalog::FieldSample`].
pub fn maxwell_source_check(sol: &Solution, x: &SpacetimePoint, h: f64) -> Result<f64> {
    let here = sol.fields(x)?;
    let mut d = [[0.0; 6]; 4];
    for (mu, row) in d.iter_mut().enumerate() {
        *row = central4(
            |s| {
                let mut p = *x;
                p[mu] += s;
                match sol.fields(&p) {
                    Ok(f) => [f.e[0], f.e[1], f.e[2], f.b[0], f.b[1], f.b[2]],
                    Err(_) => [f64::NAN; 6],
                }
            },
            h,
        );
    }
    let curl = |o: usize| [d[2][o + 2] - d[3][o + 1], d[3][o] - d[1][o + 2], d[1][o + 1] - d[2][o]];
    let curl_b = curl(3);
    let curl_e = curl(0);
    let mut worst = (d[1][0] + d[2][1] + d[3][2] - here.charge_source).abs();
    worst = worst.max((d[1][3] + d[2][4] + d[3][5]).abs());
    for k in 0..3 {
        worst = worst.max((curl_b[k] - d[0][k] - here.current_source[k]).abs());
        worst = worst.max((curl_e[k] + d[0][3 + k]).abs());
    }
    Ok(worst)
}

/// |e^{−iνϑ}J_ν(ϖ) − Σ_{|m|≤K} J_m(ϱ̄)J_{ν+m}(ϱ)e^{−im(φ−φ̄)}| with
/// ϖ = |ϱ − ϱ̄| and ϑ its angle in the triangle.
pub fn bessel_addition_check(nu: i32, rho: f64, rho_bar: f64, phi: f64, phi_bar: f64, k: u32) -> Result<f64> {
    let d = phi - phi_bar;
    let w = (rho * rho + rho_bar * rho_bar - 2.0 * rho * rho_bar * d.cos()).max(0.0).sqrt();
    let theta = (rho_bar * d.sin()).atan2(rho - rho_bar * d.cos());
    let lhs = Cplx::from_polar(bessel_j_signed(nu, w)?, -(nu as f64) * theta);
    let mut rhs = Cplx::default();
    for m in -(k as i32)..=(k as i32) {
        let t = bessel_j_signed(m, rho_bar)? * bessel_j_signed(nu + m, rho)?;
        rhs += Cplx::from_polar(t, -(m as f64) * d);
    }
    Ok((lhs - rhs).norm())
}

/// The reflected form: e^{−iνθ}J_ν(𝔴) = Σ(−1)^m J_m(ϱ̄)J_{ν+m}(ϱ)e^{im(φ−φ̄)}, 𝔴 = |ϱ + ϱ̄|.
pub fn bessel_addition_check_reflected(nu: i32, rho: f64, rho_bar: f64, phi: f64, phi_bar: f64, k: u32) -> Result<f64> {
    let d = phi - phi_bar;
    let w = (rho * rho + rho_bar * rho_bar + 2.0 * rho * rho_bar * d.cos()).sqrt();
    let theta = (rho_bar * d.sin()).atan2(rho + rho_bar * d.cos());
    let lhs = Cplx::from_polar(bessel_j_signed(nu, w)?, -(nu as f64) * theta);
    let mut rhs = Cplx::default();
    for m in -(k as i32)..=(k as i32) {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let t = sign * bessel_j_signed(m, rho_bar)? * bessel_j_signed(nu + m, rho)?;
        rhs += Cplx::from_polar(t, m as f64 * d);
    }
    Ok((lhs - rhs).norm())
}

/// The dressed Bessel beam written out component by component, with the
/// prefactor 𝒩/(2B)(2/B)^l e^{i(Φ − εt)}.
pub fn volkov_bessel_closed_form(spec: &SolutionSpec, x: &SpacetimePoint) -> Result<ColumnSpinor> {
    if spec.family != Family::VolkovBessel {
        return Err(RdiError::Domain(format!("{} is not the dressed Bessel family", spec.family)));
    }
    let sol = Solution::new(*spec)?;
    let d = sol.dressing().expect("dressed");
    let (m, eps, b) = (spec.mass, sol.eps, spec.b);
    let l = spec.l();
    let k = (eps * eps - m * m).sqrt();
    let xs = d.shifted(x);
    let r = xs[1].hypot(xs[2]);
    let phi = xs[2].atan2(xs[1]);
    let xi = d.xi(x);
    let df = d.wf.df(xi);
    let ew = eps * d.wf.omega;
    let jl = bessel_j_unchecked(l, k * r);
    let jl1 = bessel_j_unchecked(l + 1, k * r);
    let e_l = Cplx::from_polar(1.0, l as f64 * phi);
    let e_l1 = Cplx::from_polar(1.0, (l + 1) as f64 * phi);
    let f21 = Cplx::new(df[1], df[0]);
    let f12 = Cplx::new(df[0], df[1]);
    let i = Cplx::new(0.0, 1.0);
    let rows = [
        e_l * (2.0 * (m + eps) * jl) - e_l1 * f21 * (k * jl1 / ew),
        e_l * f12 * ((m + eps) * jl / ew),
        -e_l1 * f21 * (k * jl1 / ew),
        i * e_l1 * (2.0 * k * jl1) - e_l * f12 * ((m + eps) * jl / ew),
    ];
    let pref = Cplx::from_polar(
        sol.norm / (2.0 * b) * (2.0 / b).powi(l as i32),
        d.gauge_phase(xi) - eps * x[0],
    );
    Ok(ColumnSpinor::new(rows.map(|c| c * pref)))
}

/// ‖closed form − dressed catalog spinor‖, the latter rescaled by the
/// constant (2/B)^l the closed form carries.
pub fn volkov_equivalence(spec: &SolutionSpec, x: &SpacetimePoint) -> Result<f64> {
    let closed = volkov_bessel_closed_form(spec, x)?;
    let sol = Solution::new(*spec)?;
    let ours = sol.spinor(x).scale(Cplx::new((2.0 / spec.b).powi(spec.l() as i32), 0.0));
    Ok(closed.max_diff(&ours))
}

/// max |L_A − T(1 + N)T†| with L_A the triangular spin matrix and
/// T = (1 + γ⁵γ₀)/√2.
pub fn appendix_null_rotation_check(wf: &Waveform, xi: f64, eps: f64) -> f64 {
    let d = LaserDressing { wf: *wf, eps };
    let df = wf.df(xi);
    let a = -Cplx::new(df[0], -df[1]) / (eps * wf.omega);
    let mut la = Multivector::identity();
    la.m[1][0] = -a.conj();
    la.m[2][3] = a;
    let t = (Multivector::identity() + gamma5() * gamma(0)) * std::f64::consts::FRAC_1_SQRT_2;
    let rhs = t * d.rotor(xi) * t.dagger();
    la.max_diff(&rhs)
}

/// max |N²| for the null generator.
pub fn null_generator_square(wf: &Waveform, xi: f64, eps: f64) -> f64 {
    let n = LaserDressing { wf: *wf, eps }.generator(xi);
    (n * n).max_abs()
}

/// Pointwise kinematic invariants from the local observables.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinematicResidual {
    /// max of |v·v − 1|, |𝔰·𝔰 + 1|, |v·𝔰| and |e_μ·e_ν − η_μν|.
    pub frame: f64,
    /// |β|.
    pub beta: f64,
}

pub fn kinematic_residual(psi: &ColumnSpinor) -> Result<KinematicResidual> {
    let o = observables(psi)?;
    let v = o.velocity();
    let s = o.spin();
    let mut frame = (v.norm2() - 1.0).abs().max((s.norm2() + 1.0).abs()).max(v.dot(&s).abs());
    for mu in 0..4 {
        for nu in 0..4 {
            let want = if mu == nu { ETA[mu] } else { 0.0 };
            frame = frame.max((o.tetrad[mu].dot(&o.tetrad[nu]) - want).abs());
        }
    }
    Ok(KinematicResidual { frame, beta: o.beta.abs() })
}

/// One RK4 integration of dx/dt = J/J⁰ with proper time ds/dt = ψ̄ψ/J⁰.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Streamline {
    pub points: Vec<SpacetimePoint>,
    pub proper_time: Vec<f64>,
    /// Largest step-doubling error seen.
    pub max_step_error: f64,
}

fn flow<C>(column: &C) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] + '_
where
    C: Fn(&SpacetimePoint) -> ColumnSpinor + ?Sized,
{
    move |t, y| {
        let psi = column(&[t, y[0], y[1], y[2]]);
        let j = current(&psi);
        let sigma = psi.bilinear(&Multivector::identity()).re;
        [j[1] / j[0], j[2] / j[0], j[3] / j[0], sigma / j[0]]
    }
}

fn doubled_step<F: Fn(f64, &[f64; 4]) -> [f64; 4]>(f: &F, t: f64, y: &[f64; 4], dt: f64) -> ([f64; 4], f64) {
    let full = numerics::rk4_step(f, t, y, dt);
    let half = numerics::rk4_step(f, t, y, 0.5 * dt);
    let two = numerics::rk4_step(f, t + 0.5 * dt, &half, 0.5 * dt);
    let err = (0..4).map(|k| (full[k] - two[k]).abs()).fold(0.0, f64::max);
    (two, err)
}

/// Integrates `steps` steps over `t_span` from x₀. Fails with StepUnstable
/// when a step-doubling estimate exceeds `error_bound`.
pub fn streamline<C>(column: &C, x0: &SpacetimePoint, t_span: f64, steps: usize, error_bound: f64) -> Result<Streamline>
where
    C: Fn(&SpacetimePoint) -> ColumnSpinor + ?Sized,
{
    let f = flow(column);
    let dt = t_span / steps as f64;
    let mut y = [x0[1], x0[2], x0[3], 0.0];
    let mut out = Streamline { points: vec![*x0], proper_time: vec![0.0], max_step_error: 0.0 };
    for k in 0..steps {
        let t = x0[0] + k as f64 * dt;
        let (next, err) = doubled_step(&f, t, &y, dt);
        if !err.is_finite() || err > error_bound {
            return Err(RdiError::StepUnstable(format!("step {k}: error estimate {err:e} above {error_bound:e}")));
        }
        out.max_step_error = out.max_step_error.max(err);
        y = next;
        out.points.push([t + dt, y[0], y[1], y[2]]);
        out.proper_time.push(y[3]);
    }
    Ok(out)
}

/// One closed revolution of a stationary p_z = 0 streamline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Revolution {
    pub period: f64,
    pub proper_time: f64,
    /// |r(period) − r(0)|.
    pub radial_drift: f64,
}

/// Integrates from (t, x, y, z) = (0, r₀, 0, 0) until the unwrapped polar
/// angle has advanced by 2π, interpolating the crossing.
pub fn revolution(sol: &Solution, r0: f64, steps: usize) -> Result<Revolution> {
    let column = |p: &SpacetimePoint| sol.spinor(p);
    let f = flow(&column);
    let y0 = [r0, 0.0, 0.0, 0.0];
    let v = f(0.0, &y0);
    let omega = v[1] / r0;
    if omega.abs() < 1e-12 {
        return Err(RdiError::Domain(format!("no azimuthal flow at r = {r0}")));
    }
    let dt = 2.0 * PI / omega.abs() / steps as f64;
    let mut y = y0;
    let mut angle = 0.0f64;
    let bound = 1e-9 * (1.0 + r0);
    for k in 0..(4 * steps) {
        let t = k as f64 * dt;
        let (next, err) = doubled_step(&f, t, &y, dt);
        if !err.is_finite() || err > bound {
            return Err(RdiError::StepUnstable(format!("error estimate {err:e} at r0 = {r0}")));
        }
        let a_prev = y[1].atan2(y[0]);
        let a_next = next[1].atan2(next[0]);
        let mut da = a_next - a_prev;
        if da > PI {
            da -= 2.0 * PI;
        } else if da < -PI {
            da += 2.0 * PI;
        }
        let new_angle = angle + da;
        if new_angle.abs() >= 2.0 * PI {
            let frac = (2.0 * PI - angle.abs()) / da.abs();
            let lerp = |a: f64, b: f64| a + frac * (b - a);
            let r_prev = y[0].hypot(y[1]);
            let r_next = next[0].hypot(next[1]);
            return Ok(Revolution {
                period: t + frac * dt,
                proper_time: lerp(y[3], next[3]),
                radial_drift: (lerp(r_prev, r_next) - r0).abs(),
            });
        }
        angle = new_angle;
        y = next;
    }
    Err(RdiError::StepUnstable(format!("orbit from r0 = {r0} did not close")))
}

/// Density-weighted ensemble of revolutions: returns (max radial drift,
/// 1/⟨ds/dt⟩) with weight 2πrJ⁰.
pub fn proper_time_ratio(sol: &Solution, r_max: f64, steps: usize) -> Result<(f64, f64)> {
    if sol.spec.family.is_dressed() || sol.spec.p_z != 0.0 {
        return Err(RdiError::Domain("revolutions need a stationary p_z = 0 state".into()));
    }
    let drift = std::sync::Mutex::new(0.0f64);
    let weight = |r: f64| 2.0 * PI * r * sol.spinor(&[0.0, r, 0.0, 0.0]).norm_sqr();
    let rate = |r: f64| match revolution(sol, r, steps) {
        Ok(rev) => {
            let mut d = drift.lock().expect("not poisoned");
            *d = d.max(rev.radial_drift);
            rev.proper_time / rev.period
        }
        Err(_) => {
            let psi = sol.spinor(&[0.0, r, 0.0, 0.0]);
            psi.bilinear(&Multivector::identity()).re / psi.norm_sqr()
        }
    };
    let num = numerics::integrate(|r| weight(r) * rate(r), 0.0, r_max, 12, 1e-11);
    let den = numerics::integrate(weight, 0.0, r_max, 12, 1e-11);
    let d = *drift.lock().expect("not poisoned");
    Ok((d, den / num))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Dirac,
    Inversion,
    Continuity,
    Kinematics,
    VelocitySpin,
    Maxwell,
    Gauge,
    FieldInvariants,
    RadialOde,
    Circularity,
    Normalization,
    Averages,
    CurrentShift,
    Volkov,
    Streamline,
    NegativeControls,
    Identities,
    /// Formulas as printed alongside the solutions; not in the default suite.
    Printed,
}

impl CheckKind {
    pub const DEFAULT: [CheckKind; 17] = [
        CheckKind::Dirac,
        CheckKind::Inversion,
        CheckKind::Continuity,
        CheckKind::Kinematics,
        CheckKind::VelocitySpin,
        CheckKind::Maxwell,
        CheckKind::Gauge,
        CheckKind::FieldInvariants,
        CheckKind::RadialOde,
        CheckKind::Circularity,
        CheckKind::Normalization,
        CheckKind::Averages,
        CheckKind::CurrentShift,
        CheckKind::Volkov,
        CheckKind::Streamline,
        CheckKind::NegativeControls,
        CheckKind::Identities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Dirac => "dirac",
            CheckKind::Inversion => "inversion",
            CheckKind::Continuity => "continuity",
            CheckKind::Kinematics => "kinematics",
            CheckKind::VelocitySpin => "velocity-spin",
            CheckKind::Maxwell => "maxwell",
            CheckKind::Gauge => "gauge",
            CheckKind::FieldInvariants => "field-invariants",
            CheckKind::RadialOde => "radial-ode",
            CheckKind::Circularity => "circularity",
            CheckKind::Normalization => "normalization",
            CheckKind::Averages => "averages",
            CheckKind::CurrentShift => "current-shift",
            CheckKind::Volkov => "volkov",
            CheckKind::Streamline => "streamline",
            CheckKind::NegativeControls => "negative-controls",
            CheckKind::Identities => "identities",
            CheckKind::Printed => "printed",
        }
    }
}

impl std::str::FromStr for CheckKind {
    type Err = RdiError;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::DEFAULT
            .into_iter()
            .chain([CheckKind::Printed])
            .find(|c| c.name() == s)
            .ok_or_else(|| RdiError::Domain(format!("unknown check '{s}'")))
    }
}

/// Faults injected into the Dirac check so that it must fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NegativeControl {
    /// Potential scaled by 1.01.
    ScalePotential,
    /// Radial profile multiplied by 1 + 0.01λ.
    PerturbProfile,
}

impl NegativeControl {
    pub fn name(self) -> &'static str {
        match self {
            NegativeControl::ScalePotential => "scale-potential",
            NegativeControl::PerturbProfile => "perturb-profile",
        }
    }
}

impl std::str::FromStr for NegativeControl {
    type Err = RdiError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scale-potential" => Ok(Self::ScalePotential),
            "perturb-profile" => Ok(Self::PerturbProfile),
            _ => Err(RdiError::Domain(format!("unknown negative control '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// Pass when max residual ≤ tolerance.
    Upper,
    /// Pass when max residual > tolerance (detection of an injected fault).
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub solution: String,
    pub grid: String,
    pub points: usize,
    /// Points skipped (axis, vanishing density, singular spinor, superluminal boost).
    pub excluded: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
    /// Largest Richardson estimate where one applies.
    pub richardson: Option<f64>,
    /// Counts per decade: [<1e-16, [1e-16,1e-15), …, [1e-1,1), ≥1].
    pub histogram: Vec<u64>,
}

impl CheckRecord {
    fn new(check: &str, solution: &str, grid: String, residuals: &[f64], excluded: usize, tolerance: f64, bound: Bound) -> Self {
        let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
        let any_nan = residuals.iter().any(|r| r.is_nan());
        let max_residual = if any_nan { f64::NAN } else { max_residual };
        let pass = !residuals.is_empty()
            && !any_nan
            && match bound {
                Bound::Upper => max_residual <= tolerance,
                Bound::Lower => max_residual > tolerance,
            };
        Self {
            check: check.to_string(),
            solution: solution.to_string(),
            grid,
            points: residuals.len(),
            excluded,
            max_residual,
            tolerance,
            bound,
            pass,
            richardson: None,
            histogram: histogram(residuals),
        }
    }
}

pub fn histogram(values: &[f64]) -> Vec<u64> {
    let mut bins = vec![0u64; 18];
    for &v in values {
        let idx = if !(v >= 1e-16) {
            0
        } else if v >= 1.0 {
            17
        } else {
            ((v.log10().floor() as i32 + 17) as usize).clamp(1, 16)
        };
        bins[idx] += 1;
    }
    bins
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub points: usize,
    pub fd: FdPolicy,
    pub box_lo: f64,
    pub box_hi: f64,
    pub axis_radius: f64,
    pub checks: Vec<CheckKind>,
    pub negative_control: Option<NegativeControl>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 20240917,
            points: 100,
            fd: FdPolicy::default(),
            box_lo: 0.5,
            box_hi: 5.0,
            axis_radius: 1e-3,
            checks: CheckKind::DEFAULT.to_vec(),
            negative_control: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub library_version: String,
    pub seed: u64,
    pub fd: FdPolicy,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    /// Only filled when timing is requested, so reports stay reproducible.
    pub wall_clock_seconds: Option<f64>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// Uniform points in the box with the axis cylinder removed; deterministic
/// for a given (seed, stream).
pub fn sample_points(cfg: &SuiteConfig, stream: u64, count: usize) -> Vec<SpacetimePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p: SpacetimePoint = std::array::from_fn(|_| rng.random_range(cfg.box_lo..=cfg.box_hi));
        if p[1].hypot(p[2]) > cfg.axis_radius {
            out.push(p);
        }
    }
    out
}

fn stream_key(family: Family, set: usize, check: CheckKind) -> u64 {
    let f = Family::ALL.iter().position(|g| *g == family).unwrap_or(7) as u64;
    (f << 32) | ((set as u64) << 16) | check as u64
}

/// Pointwise values in deterministic order; `None` marks an excluded point.
fn sweep<T, F>(points: &[SpacetimePoint], f: F) -> (Vec<T>, usize)
where
    T: Send,
    F: Fn(&SpacetimePoint) -> Option<T> + Sync,
{
    let vals: Vec<Option<T>> = points.par_iter().map(|p| f(p)).collect();
    let excluded = vals.iter().filter(|v| v.is_none()).count();
    (vals.into_iter().flatten().collect(), excluded)
}

fn grid_label(cfg: &SuiteConfig, n: usize) -> String {
    format!("uniform box [{}, {}]^4, {} points, axis radius {}", cfg.box_lo, cfg.box_hi, n, cfg.axis_radius)
}

/// Largest J⁰/ρ (the local v⁰) at which frame invariants are scored; beyond
/// it roundoff grows like 1e−16·(v⁰)² and says nothing about the state.
pub const MAX_FRAME_CONDITION: f64 = 100.0;

fn frame_defined(psi: &ColumnSpinor) -> bool {
    observables(psi).map(|o| o.defined && o.rho * MAX_FRAME_CONDITION >= psi.norm_sqr()).unwrap_or(false)
}

/// Perturbed-profile column of a catalog state, dressed when the spec is.
fn perturbed_matrix(sol: &Solution, delta: f64) -> impl Fn(&SpacetimePoint) -> Multivector + Sync + '_ {
    let prof = Perturbed { inner: sol.profile, delta };
    move |x: &SpacetimePoint| {
        let s = &sol.spec;
        let base = |p: &SpacetimePoint| stationary_column(&prof, sol.norm, sol.eps, s.mass, s.p_z, s.b, p).to_matrix();
        match sol.dressing() {
            Some(d) => d.apply(base, x),
            None => base(x),
        }
    }
}

fn dirac_records(sol: &Solution, id: &str, cfg: &SuiteConfig, points: &[SpacetimePoint], fault: Option<NegativeControl>, name: &str, bound: Bound, tol: f64) -> CheckRecord {
    let h = cfg.fd.h;
    let (vals, excluded) = sweep(points, |x| {
        if sol.spinor(x).norm_sqr() < 1e-300 {
            return None;
        }
        let r = match fault {
            None => dirac_residual(sol, x, h),
            Some(NegativeControl::ScalePotential) => dirac_residual_fields(
                &|p: &SpacetimePoint| sol.spinor(p),
                &|p: &SpacetimePoint| sol.matrix_spinor(p),
                &|p: &SpacetimePoint| sol.potential(p).map(|a| a.scale(1.01)),
                sol.spec.mass,
                x,
                h,
            ),
            Some(NegativeControl::PerturbProfile) => {
                let m = perturbed_matrix(sol, 0.01);
                dirac_residual_fields(
                    &|p: &SpacetimePoint| ColumnSpinor::new(m(p).first_column()),
                    &m,
                    &|p: &SpacetimePoint| sol.potential(p),
                    sol.spec.mass,
                    x,
                    h,
                )
            }
        };
        r.ok().map(|r| r.max())
    });
    CheckRecord::new(name, id, grid_label(cfg, points.len()), &vals, excluded, tol, bound)
}

fn per_state_checks(spec: &SolutionSpec, set: usize, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let sol = Solution::new(*spec)?;
    let id = spec_id(spec);
    let fam = spec.family;
    let h = cfg.fd.h;
    let want = |c: CheckKind| cfg.checks.contains(&c);
    let pts = |c: CheckKind, n: usize| sample_points(cfg, stream_key(fam, set, c), n);
    let mut out = Vec::new();

    if let Some(fault) = cfg.negative_control {
        let p = pts(CheckKind::Dirac, cfg.points);
        out.push(dirac_records(&sol, &id, cfg, &p, Some(fault), &format!("dirac[{}]", fault.name()), Bound::Upper, 1e-7));
        return Ok(out);
    }

    if want(CheckKind::Dirac) {
        let p = pts(CheckKind::Dirac, cfg.points);
        out.push(dirac_records(&sol, &id, cfg, &p, None, "dirac", Bound::Upper, 1e-7));
    }
    if want(CheckKind::NegativeControls) {
        let p = pts(CheckKind::NegativeControls, cfg.points);
        // Scaling an identically vanishing potential changes nothing, so that
        // control only runs where a potential is present.
        let faults: &[NegativeControl] = if fam == Family::FreeBessel {
            &[NegativeControl::PerturbProfile]
        } else {
            &[NegativeControl::ScalePotential, NegativeControl::PerturbProfile]
        };
        for &fault in faults {
            let name = format!("detects[{}]", fault.name());
            out.push(dirac_records(&sol, &id, cfg, &p, Some(fault), &name, Bound::Lower, 1e-4));
        }
    }
    if want(CheckKind::Inversion) {
        let p = pts(CheckKind::Inversion, cfg.points);
        let field = |x: &SpacetimePoint| sol.matrix_spinor(x);
        let (vals, excluded) = sweep(&p, |x| {
            let s = invert(&field, spec.mass, x, &cfg.fd).ok()?;
            let a = sol.potential(x).ok()?;
            let diff = (0..4).map(|k| (s.e_a.0[k] - a.0[k]).abs()).fold(0.0, f64::max);
            Some((diff, s.richardson, s.max_constrained()))
        });
        let rich = vals.iter().map(|v| v.1).fold(0.0, f64::max);
        // Agreement is scored against max(2e-7, 10 × Richardson) pointwise.
        let scored: Vec<f64> = vals.iter().map(|v| v.0 / (2e-7f64).max(10.0 * v.1) * 2e-7).collect();
        let mut rec = CheckRecord::new("inversion", &id, grid_label(cfg, p.len()), &scored, excluded, 2e-7, Bound::Upper);
        rec.richardson = Some(rich);
        out.push(rec);
        let grades: Vec<f64> = vals.iter().map(|v| v.2).collect();
        out.push(CheckRecord::new("inversion-grades", &id, grid_label(cfg, p.len()), &grades, excluded, 2e-7, Bound::Upper));
    }
    if want(CheckKind::Continuity) {
        let p = pts(CheckKind::Continuity, cfg.points);
        let col = |x: &SpacetimePoint| sol.spinor(x);
        let (vals, excluded) = sweep(&p, |x| {
            if sol.spinor(x).norm_sqr() < 1e-300 {
                return None;
            }
            Some(continuity_residual(&col, x, h))
        });
        out.push(CheckRecord::new("continuity", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-7, Bound::Upper));
    }
    if want(CheckKind::Kinematics) {
        let p = pts(CheckKind::Kinematics, cfg.points);
        let (vals, excluded) = sweep(&p, |x| {
            let psi = sol.spinor(x);
            if !frame_defined(&psi) {
                return None;
            }
            kinematic_residual(&psi).ok().map(|k| k.frame)
        });
        out.push(CheckRecord::new("kinematics", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-10, Bound::Upper));
    }
    if want(CheckKind::VelocitySpin) {
        let p = pts(CheckKind::VelocitySpin, cfg.points);
        let (vals, excluded) = sweep(&p, |x| {
            let psi = sol.spinor(x);
            if !frame_defined(&psi) {
                return None;
            }
            let o = observables(&psi).ok()?;
            let (v, s) = sol.velocity_spin(x).ok()?;
            let (v2, s2) = (o.velocity(), o.spin());
            Some((0..4).map(|k| (v.0[k] - v2.0[k]).abs().max((s.0[k] - s2.0[k]).abs())).fold(0.0, f64::max))
        });
        out.push(CheckRecord::new("velocity-spin", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-10, Bound::Upper));
    }
    if want(CheckKind::Maxwell) {
        let p = pts(CheckKind::Maxwell, cfg.points);
        let (vals, excluded) = sweep(&p, |x| maxwell_source_check(&sol, x, h).ok());
        out.push(CheckRecord::new("maxwell", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-6, Bound::Upper));
    }
    if fam.is_dressed() && want(CheckKind::Gauge) {
        let p = pts(CheckKind::Gauge, cfg.points);
        let (vals, excluded) = sweep(&p, |x| rdi_inverter::lorentz_gauge_residual(&sol, x, h).ok());
        out.push(CheckRecord::new("lorentz-gauge", &id, grid_label(cfg, p.len()), &vals, excluded, 2e-7, Bound::Upper));
    }
    if fam.is_dressed() && fam != Family::VolkovBessel && want(CheckKind::FieldInvariants) {
        let p = pts(CheckKind::FieldInvariants, cfg.points);
        let d = sol.dressing().expect("dressed");
        let (vals, excluded) = sweep(&p, |x| {
            let f = sol.fields(x).ok()?;
            let xs = d.shifted(x);
            let (bs, _) = sol.static_field(xs[1], xs[2]).ok()?;
            Some(f.e_dot_b().abs().max((f.invariant() + bs * bs).abs()))
        });
        out.push(CheckRecord::new("field-invariants", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-9, Bound::Upper));
    }
    if !fam.is_dressed() && want(CheckKind::RadialOde) {
        let lam_max = match sol.profile {
            catalog::CatalogProfile::Inhomogeneous { .. } => 20.0,
            _ => 4.0,
        };
        let vals: Vec<f64> = (1..=200)
            .map(|k| {
                let lam = lam_max * k as f64 / 200.0;
                let p = &sol.profile;
                let scale = p.f(lam).abs().max(p.df(lam).abs() / lam).max(p.d2f(lam).abs()).max(EPS_FLOOR);
                radial_ode_residual(p, lam, sol.eps, spec.mass, spec.p_z, spec.b).abs() / scale
            })
            .collect();
        out.push(CheckRecord::new("radial-ode", &id, format!("200 values of λ in (0, {lam_max}]"), &vals, 0, 1e-8, Bound::Upper));
    }
    if !fam.is_dressed() && want(CheckKind::Circularity) {
        let p = pts(CheckKind::Circularity, cfg.points.min(20));
        let (vals, excluded) = sweep(&p, |x| rdi_inverter::circularity_residual(spec, x, &cfg.fd).ok());
        out.push(CheckRecord::new("circularity", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-8, Bound::Upper));
        let prof = Perturbed { inner: sol.profile, delta: 0.01 };
        let (vals, excluded) = sweep(&p, |x| {
            rdi_inverter::circularity_residual_profile(&prof, sol.eps, spec.mass, spec.p_z, spec.b, x, &cfg.fd).ok()
        });
        out.push(CheckRecord::new("detects[circularity-perturbed]", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-3, Bound::Lower));
    }
    if fam.is_normalizable() && want(CheckKind::Normalization) {
        let q = charge_with_normalization(spec, sol.norm)?;
        out.push(CheckRecord::new("normalization", &id, "adaptive radial quadrature".into(), &[(q - 1.0).abs()], 0, 1e-8, Bound::Upper));
    }
    if fam.is_normalizable() && want(CheckKind::Averages) {
        let xis: Vec<f64> = if fam.is_dressed() { vec![0.0, 0.7, 2.1] } else { vec![0.0] };
        let mut rho = Vec::new();
        let mut jphi = Vec::new();
        let mut jz = Vec::new();
        let mut centroid = Vec::new();
        for &xi in &xis {
            let a = averages(spec, xi)?;
            let n = averages_numeric(spec, xi, 64)?;
            rho.push((a.rho - n.averages.rho).abs());
            if let (Some(x), Some(y)) = (a.j_phi, n.averages.j_phi) {
                jphi.push((x - y).abs());
            }
            jz.push((a.j_z - n.averages.j_z).abs());
            centroid.push((0..2).map(|k| (a.centroid[k] - n.averages.centroid[k]).abs()).fold(0.0, f64::max));
        }
        let grid = format!("adaptive radial x 64-node azimuthal quadrature at xi = {xis:?}");
        out.push(CheckRecord::new("average-rho", &id, grid.clone(), &rho, 0, 1e-8, Bound::Upper));
        if !jphi.is_empty() {
            out.push(CheckRecord::new("average-jphi", &id, grid.clone(), &jphi, 0, 1e-8, Bound::Upper));
        }
        out.push(CheckRecord::new("average-jz", &id, grid.clone(), &jz, 0, 1e-8, Bound::Upper));
        if fam.is_dressed() {
            out.push(CheckRecord::new("average-centroid", &id, grid, &centroid, 0, 1e-6, Bound::Upper));
        }
    }
    if fam.is_dressed() && fam.is_normalizable() && want(CheckKind::CurrentShift) {
        let mut vals = Vec::new();
        for xi in [0.0, 0.7, 2.1] {
            let n = averages_numeric(spec, xi, 64)?;
            let shift = dressed_current_shift(spec, xi)?;
            let base = FourVector::new(1.0, 0.0, 0.0, 0.0);
            vals.push((0..4).map(|k| (n.current.0[k] - base.0[k] - shift.0[k]).abs()).fold(0.0, f64::max));
        }
        out.push(CheckRecord::new("current-shift", &id, "quadrature at xi = [0, 0.7, 2.1]".into(), &vals, 0, 1e-8, Bound::Upper));
        if spec.waveform.map(|w| w.kind) == Some(WaveformKind::CircularSin) {
            let jz: Vec<f64> = (0..50).map(|k| averages(spec, 0.13 * k as f64).map(|a| a.j_z).unwrap_or(f64::NAN)).collect();
            let first = jz[0];
            let dev: Vec<f64> = jz.iter().map(|v| (v - first).abs()).collect();
            out.push(CheckRecord::new("average-jz-constant", &id, "50 values of xi".into(), &dev, 0, 1e-9, Bound::Upper));
        }
    }
    if fam == Family::VolkovBessel && want(CheckKind::Volkov) {
        let p = pts(CheckKind::Volkov, 50);
        let (vals, excluded) = sweep(&p, |x| volkov_equivalence(spec, x).ok());
        out.push(CheckRecord::new("volkov-equivalence", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-10, Bound::Upper));
        let mut flat = *spec;
        if let Some(w) = flat.waveform.as_mut() {
            w.amplitude = 0.0;
        }
        let dressed = Solution::new(flat)?;
        let plain = Solution::new(flat.stationary())?;
        let (vals, excluded) = sweep(&p, |x| Some(dressed.spinor(x).max_diff(&plain.spinor(x))));
        out.push(CheckRecord::new("volkov-zero-amplitude", &id, grid_label(cfg, p.len()), &vals, excluded, 0.0, Bound::Upper));
    }
    if fam == Family::HomogeneousDegenerate && spec.p_z == 0.0 && set == 0 && want(CheckKind::Streamline) {
        let (drift, ratio) = proper_time_ratio(&sol, 6.0 / spec.b, 400)?;
        out.push(CheckRecord::new("streamline-drift", &id, "revolutions on adaptive radial nodes".into(), &[drift], 0, 1e-6, Bound::Upper));
        out.push(CheckRecord::new(
            "streamline-dt-ds",
            &id,
            "density-weighted ensemble of revolutions".into(),
            &[(ratio - sol.eps / spec.mass).abs()],
            0,
            1e-4,
            Bound::Upper,
        ));
    }
    if want(CheckKind::Printed) {
        out.extend(printed_checks(spec, cfg)?);
    }
    Ok(out)
}

/// Comparisons with the formulas as printed; several are expected to fail.
pub fn printed_checks(spec: &SolutionSpec, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let sol = Solution::new(*spec)?;
    let id = spec_id(spec);
    let fam = spec.family;
    let mut out = Vec::new();
    if fam.is_normalizable() && !fam.is_dressed() {
        let q = charge_with_normalization(spec, printed_normalization(spec)?)?;
        out.push(CheckRecord::new("printed-normalization", &id, "adaptive radial quadrature".into(), &[(q - 1.0).abs()], 0, 1e-8, Bound::Upper));
        let n = averages_numeric(spec, 0.0, 64)?;
        let p = printed_averages(spec, 0.0)?;
        let d = (n.averages.j_phi.unwrap_or(f64::NAN) - p.j_phi.unwrap_or(f64::NAN)).abs();
        out.push(CheckRecord::new("printed-jphi", &id, "quadrature".into(), &[d], 0, 1e-8, Bound::Upper));
    }
    if fam.is_dressed() && fam.is_normalizable() {
        let mut vals = Vec::new();
        for xi in [0.0, 0.7, 2.1] {
            let n = averages_numeric(spec, xi, 64)?;
            let p = printed_averages(spec, xi)?;
            vals.push((0..2).map(|k| (n.averages.centroid[k] - p.centroid[k]).abs()).fold(0.0, f64::max));
        }
        out.push(CheckRecord::new("printed-centroid", &id, "quadrature at xi = [0, 0.7, 2.1]".into(), &vals, 0, 1e-6, Bound::Upper));
    }
    let p = sample_points(cfg, stream_key(fam, 9, CheckKind::Printed), cfg.points);
    let (vals, excluded) = sweep(&p, |x| {
        let psi = sol.spinor(x);
        if !frame_defined(&psi) {
            return None;
        }
        kinematic_residual(&psi).ok().map(|k| k.beta)
    });
    out.push(CheckRecord::new("printed-beta-zero", &id, grid_label(cfg, p.len()), &vals, excluded, 1e-10, Bound::Upper));
    Ok(out)
}

/// Checks that do not belong to one catalog state.
pub fn identity_checks(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(u64::MAX);
    let mut out = Vec::new();

    let mut tuples = Vec::new();
    for _ in 0..50 {
        tuples.push((
            rng.random_range(0..=10i32),
            rng.random_range(0.0..=5.0),
            rng.random_range(0.0..=2.0),
            rng.random_range(-PI..PI),
            rng.random_range(-PI..PI),
        ));
    }
    let direct: Vec<f64> = tuples.iter().map(|t| bessel_addition_check(t.0, t.1, t.2, t.3, t.4, 40).unwrap_or(f64::NAN)).collect();
    let reflected: Vec<f64> =
        tuples.iter().map(|t| bessel_addition_check_reflected(t.0, t.1, t.2, t.3, t.4, 40).unwrap_or(f64::NAN)).collect();
    out.push(CheckRecord::new("bessel-addition", "identity", "50 seeded tuples, K = 40".into(), &direct, 0, 1e-10, Bound::Upper));
    out.push(CheckRecord::new("bessel-addition-reflected", "identity", "50 seeded tuples, K = 40".into(), &reflected, 0, 1e-10, Bound::Upper));

    let wfs = [
        Waveform::new(WaveformKind::CircularSin, 0.4, 0.8),
        Waveform::new(WaveformKind::LinearSin, 0.7, 1.1),
        Waveform { tau: 2.0, ..Waveform::new(WaveformKind::PulseEnvelope, 0.5, 0.6) },
    ];
    let mut app = Vec::new();
    let mut nil = Vec::new();
    for k in 0..20 {
        let wf = wfs[k % 3];
        let xi = rng.random_range(-6.0..6.0);
        let eps = rng.random_range(1.0..3.0);
        app.push(appendix_null_rotation_check(&wf, xi, eps));
        nil.push(null_generator_square(&wf, xi, eps));
    }
    out.push(CheckRecord::new("appendix-null-rotation", "identity", "20 seeded xi".into(), &app, 0, 1e-12, Bound::Upper));
    out.push(CheckRecord::new("null-generator-square", "identity", "20 seeded xi".into(), &nil, 0, 1e-15, Bound::Upper));

    let pw = plane_wave([0.3, -0.2, 0.5], 1.0, [0.0, 0.0, 1.0], 0.4, 1)?;
    let pts = sample_points(cfg, u64::MAX - 1, cfg.points);
    let (vals, excluded) = sweep(&pts, |x| {
        dirac_residual_fields(
            &|p: &SpacetimePoint| pw.column(p),
            &|p: &SpacetimePoint| pw.matrix(p),
            &|_: &SpacetimePoint| Ok(FourVector::default()),
            1.0,
            x,
            cfg.fd.h,
        )
        .ok()
        .map(|r| r.max())
    });
    out.push(CheckRecord::new("plane-wave-dirac", "plane-wave", grid_label(cfg, pts.len()), &vals, excluded, 1e-8, Bound::Upper));

    let rest = plane_wave([0.0; 3], 1.0, [0.0, 0.0, 1.0], 0.0, 1)?;
    let line = streamline(&|p: &SpacetimePoint| rest.column(p), &[0.0, 1.0, 2.0, 3.0], 10.0, 100, 1e-12)?;
    let dev: Vec<f64> = line
        .points
        .iter()
        .map(|p| (p[1] - 1.0).abs().max((p[2] - 2.0).abs()).max((p[3] - 3.0).abs()))
        .collect();
    out.push(CheckRecord::new("rest-streamline", "plane-wave", "100 RK4 steps".into(), &dev, 0, 1e-14, Bound::Upper));

    let eps_checks: Vec<f64> = (0..=5)
        .map(|l| {
            let a = eigenvalue(&SolutionSpec::homogeneous_degenerate(2, l, 0.9)).unwrap_or(f64::NAN);
            let b = eigenvalue(&SolutionSpec::homogeneous_degenerate(2, 0, 0.9)).unwrap_or(f64::NAN);
            (a - b).abs()
        })
        .collect();
    out.push(CheckRecord::new("degeneracy-in-l", "identity", "l = 0..5".into(), &eps_checks, 0, 0.0, Bound::Upper));
    Ok(out)
}

/// Runs the suite over the given families, three parameter sets each.
pub fn run_suite(families: &[Family], cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut records = Vec::new();
    for &fam in families {
        for (set, spec) in standard_parameter_sets(fam).iter().enumerate() {
            records.extend(per_state_checks(spec, set, cfg)?);
        }
    }
    if cfg.negative_control.is_none() && cfg.checks.contains(&CheckKind::Identities) {
        records.extend(identity_checks(cfg)?);
    }
    let pass = !records.is_empty() && records.iter().all(|r| r.pass);
    Ok(VerificationReport {
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed,
        fd: cfg.fd,
        records,
        pass,
        wall_clock_seconds: None,
    })
}

/// Runs the suite on caller-provided specs instead of the standard sets.
pub fn run_suite_on(specs: &[SolutionSpec], cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut records = Vec::new();
    for (set, spec) in specs.iter().enumerate() {
        records.extend(per_state_checks(spec, set, cfg)?);
    }
    let pass = !records.is_empty() && records.iter().all(|r| r.pass);
    Ok(VerificationReport {
        library_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed,
        fd: cfg.fd,
        records,
        pass,
        wall_clock_seconds: None,
    })
}
