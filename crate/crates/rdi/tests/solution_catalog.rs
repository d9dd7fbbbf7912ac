use proptest::prelude::*;
use rdi::error::RdiError;
use rdi::solution_catalog::*;
use rdi::spinor_factory::observables;
use rdi::sta_core::*;
use std::f64::consts::PI;

fn circular() -> Waveform {
    Waveform::new(WaveformKind::CircularSin, 0.4, 0.8)
}

fn all_standard() -> Vec<SolutionSpec> {
    Family::ALL.into_iter().flat_map(standard_parameter_sets).collect()
}

fn stationary_standard() -> Vec<SolutionSpec> {
    all_standard().into_iter().filter(|s| !s.family.is_dressed()).collect()
}

/// Composite Simpson on [a, b] with an even number of panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = f(a) + f(b);
    for k in 1..panels {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(a + k as f64 * h);
    }
    s * h / 3.0
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn eigenvalue_examples() {
    let e = |s: SolutionSpec| eigenvalue(&s).unwrap();
    assert!(close(e(SolutionSpec::homogeneous_degenerate(1, 0, 1.0)), 3f64.sqrt(), 1e-12));
    assert!(close(e(SolutionSpec::homogeneous_nondegenerate(1, 1, 1.0)), 5f64.sqrt(), 1e-12));
    assert!(close(e(SolutionSpec::inhomogeneous(1, 0, 1.0)), (19.0f64 / 18.0).sqrt(), 1e-12));
    assert!(close(e(SolutionSpec::homogeneous_degenerate(1, 0, 1.0).with_pz(0.7)), (3.0f64 + 0.49).sqrt(), 1e-12));
    assert!(close(e(SolutionSpec::homogeneous_nondegenerate(1, 1, 1.0).with_pz(0.7)), (5.0f64 + 0.49).sqrt(), 1e-12));
    assert!(close(e(SolutionSpec::inhomogeneous(1, 0, 1.0).with_pz(0.7)), (19.0f64 / 18.0 + 0.49).sqrt(), 1e-12));
    for s in [
        SolutionSpec::homogeneous_degenerate(0, 0, 1.3),
        SolutionSpec::homogeneous_nondegenerate(0, 0, 0.4),
        SolutionSpec::inhomogeneous(0, 3, 2.0),
    ] {
        assert_eq!(e(s), 1.0);
    }
}

#[test]
fn degeneracy_in_l() {
    let deg: Vec<f64> = (0..6).map(|l| eigenvalue(&SolutionSpec::homogeneous_degenerate(2, l, 0.9)).unwrap()).collect();
    assert!(deg.windows(2).all(|w| w[0] == w[1]));
    let nondeg: Vec<f64> = (0..6).map(|l| eigenvalue(&SolutionSpec::homogeneous_nondegenerate(2, l, 0.9)).unwrap()).collect();
    assert!(nondeg.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn dressing_keeps_the_stationary_energy() {
    for s in all_standard().into_iter().filter(|s| s.family.is_dressed()) {
        assert_eq!(eigenvalue(&s).unwrap(), eigenvalue(&s.stationary()).unwrap());
    }
}

#[test]
fn spec_validation() {
    let bad = [
        SolutionSpec::homogeneous_degenerate(1, 0, 0.0),
        SolutionSpec::homogeneous_degenerate(1, 0, 1.0).with_mass(-1.0),
        SolutionSpec::free_bessel(1, 0.9, 1.0),
        SolutionSpec { m_orbital: 3, ..SolutionSpec::homogeneous_degenerate(1, 0, 1.0) },
        SolutionSpec { m_orbital: 2, ..SolutionSpec::homogeneous_nondegenerate(1, 0, 1.0) },
        SolutionSpec { waveform: Some(circular()), ..SolutionSpec::inhomogeneous(1, 0, 1.0) },
        SolutionSpec { waveform: None, ..SolutionSpec::inhomogeneous(1, 0, 1.0).with_waveform(circular()) },
        SolutionSpec::inhomogeneous(1, 0, 1.0).with_pz(0.2).with_waveform(circular()),
        SolutionSpec::inhomogeneous(1, 0, 1.0).with_waveform(Waveform::new(WaveformKind::LinearSin, 0.1, 0.0)),
    ];
    for s in bad {
        assert!(matches!(Solution::new(s), Err(RdiError::Domain(_))), "{s:?}");
    }
}

#[test]
fn family_names_round_trip() {
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
        assert_eq!(f.to_string(), f.name());
        assert_eq!(f.dressed().stationary(), f.stationary());
    }
    assert!("nope".parse::<Family>().is_err());
    assert_eq!("circular".parse::<WaveformKind>().unwrap(), WaveformKind::CircularSin);
}

#[test]
fn spec_ids_are_distinct() {
    let ids: Vec<String> = all_standard().iter().map(spec_id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    assert_eq!(spec_id(&SolutionSpec::homogeneous_degenerate(1, 0, 1.0)), "homogeneous-degenerate[n=1,M=0,b=1,pz=0,m=1]");
}

#[test]
fn profile_examples() {
    // n = l = 0 homogeneous: f is the constant 𝒩 and H = e^{−λ²}.
    let s = SolutionSpec::homogeneous_degenerate(0, 0, 1.0);
    let nn = normalization(&s).unwrap();
    for lam in [0.0, 0.4, 2.0] {
        let (f, h) = radial_profile(&s, lam).unwrap();
        assert!(close(f, nn, 1e-15));
        assert!(close(h, (-lam * lam).exp(), 1e-15));
    }
    // Free Bessel l = 0: unnormalized f(0) = 1.
    let p = CatalogProfile::for_spec(&SolutionSpec::free_bessel(0, 1.5, 1.0)).unwrap();
    assert_eq!(p.f(0.0), 1.0);
    // Inhomogeneous n = 1, M = 0: f ∝ e^{λ/2−λ/6}(1 − λ/3).
    let s = SolutionSpec::inhomogeneous(1, 0, 1.0);
    let nn = normalization(&s).unwrap();
    for lam in [0.0, 0.5, 3.0, 7.0] {
        let (f, h) = radial_profile(&s, lam).unwrap();
        let want = nn * (lam / 2.0 - lam / 6.0).exp() * (1.0 - lam / 3.0);
        assert!(close(f, want, 1e-14 * (1.0 + want.abs())));
        assert!(close(h, (-lam / 2.0).exp(), 1e-15));
    }
}

/// The radial equation with f′ and f″ taken by finite differences of f.
fn fd_radial_residual(p: &CatalogProfile, lam: f64, eps: f64, spec: &SolutionSpec) -> (f64, f64) {
    let h = 1e-3 * lam.max(0.1);
    let f = |x: f64| p.f(x);
    let d1 = (8.0 * (f(lam + h) - f(lam - h)) - (f(lam + 2.0 * h) - f(lam - 2.0 * h))) / (12.0 * h);
    let d2 = (-f(lam + 2.0 * h) + 16.0 * f(lam + h) - 30.0 * f(lam) + 16.0 * f(lam - h) - f(lam - 2.0 * h))
        / (12.0 * h * h);
    let mm = p.big_m() as f64;
    let m2 = spec.mass * spec.mass + spec.p_z * spec.p_z;
    let terms = [d2, 4.0 * (m2 - eps * eps) * f(lam) / (spec.b * spec.b), d1 * (mm + 1.0) / lam, d1 * 2.0 * p.dln_h(lam)];
    let res = terms[0] - terms[1] + terms[2] + terms[3];
    (res, terms.iter().map(|t| t.abs()).sum())
}

#[test]
fn radial_equation_holds_for_catalog_profiles() {
    for s in stationary_standard() {
        let sol = Solution::new(s).unwrap();
        for k in 1..=200 {
            let lam = 0.025 * k as f64;
            let (res, scale) = fd_radial_residual(&sol.profile, lam, sol.eps, &s);
            assert!(res.abs() <= 1e-6 * (scale + 1e-3), "{} λ={lam}: {res} (scale {scale})", spec_id(&s));
            let analytic = radial_ode_residual(&sol.profile, lam, sol.eps, s.mass, s.p_z, s.b);
            assert!(analytic.abs() <= 1e-9 * (scale + 1e-3), "{} λ={lam}: {analytic}", spec_id(&s));
        }
    }
}

#[test]
fn perturbed_profile_breaks_radial_equation() {
    let s = SolutionSpec::homogeneous_degenerate(1, 0, 1.0);
    let sol = Solution::new(s).unwrap();
    let bad = Perturbed { inner: sol.profile, delta: 0.01 };
    let worst = (1..50).map(|k| radial_ode_residual(&bad, 0.1 * k as f64, sol.eps, 1.0, 0.0, 1.0).abs()).fold(0.0, f64::max);
    assert!(worst > 1e-3);
}

#[test]
fn amplitudes_match_profile() {
    for s in stationary_standard() {
        let p = CatalogProfile::for_spec(&s).unwrap();
        for lam in [0.3f64, 1.1, 2.5] {
            let w = lam.powf(0.5 * p.big_m() as f64) * p.h(lam);
            let (pp, qq) = p.amplitudes(lam);
            assert!(close(pp, w * p.f(lam), 1e-12 * (1.0 + pp.abs())), "{}", spec_id(&s));
            assert!(close(qq, w * p.df(lam), 1e-12 * (1.0 + qq.abs())), "{}", spec_id(&s));
        }
    }
}

#[test]
fn exact_normalization_gives_unit_charge() {
    // 2π∫ψ†ψ λdλ with ψ evaluated straight from the spinor on the x axis.
    for s in stationary_standard().into_iter().filter(|s| s.family.is_normalizable()) {
        let sol = Solution::new(s).unwrap();
        let upper = match s.family {
            Family::Inhomogeneous => 400.0,
            _ => 9.0,
        };
        let charge = 2.0 * PI
            * simpson(
                |lam| sol.spinor(&[0.0, 2.0 * lam / s.b, 0.0, 0.0]).norm_sqr() * lam,
                0.0,
                upper,
                40_000,
            );
        assert!(close(charge, 1.0, 1e-8), "{}: {charge}", spec_id(&s));
        let library = charge_with_normalization(&s, sol.norm).unwrap();
        assert!(close(library, 1.0, 1e-10));
    }
}

#[test]
fn printed_normalization_agrees_for_nondegenerate_l1() {
    for n in 0..4 {
        let s = SolutionSpec::homogeneous_nondegenerate(n, 1, 0.8);
        assert!(close(printed_normalization(&s).unwrap(), normalization(&s).unwrap(), 1e-14));
    }
}

#[test]
fn free_bessel_is_not_normalizable() {
    let s = SolutionSpec::free_bessel(1, 1.3, 0.8);
    assert_eq!(averages(&s, 0.0).unwrap_err(), RdiError::NotNormalizable);
    assert_eq!(averages_numeric(&s, 0.0, 8).unwrap_err(), RdiError::NotNormalizable);
}

#[test]
fn free_bessel_component_ratio() {
    let s = SolutionSpec::free_bessel(2, 2.0, 1.2);
    let sol = Solution::new(s).unwrap();
    let k = (4.0f64 - 1.0).sqrt();
    for x in [[0.2, 0.7, -1.1, 0.3], [1.0, -2.0, 0.5, 0.0]] {
        let psi = sol.spinor(&x).psi;
        let r = x[1].hypot(x[2]);
        let phi = x[2].atan2(x[1]);
        let arg = k * r;
        let jl = rdi::special_fn::bessel_j(2, arg).unwrap();
        let jl1 = rdi::special_fn::bessel_j(3, arg).unwrap();
        let want = Cplx::new(0.0, k) * Cplx::from_polar(1.0, phi) * jl1 / ((1.0 + 2.0) * jl);
        assert!((psi[3] / psi[0] - want).norm() < 1e-12);
        assert_eq!(psi[1].norm(), 0.0);
    }
}

#[test]
fn weak_field_ground_state_is_rest_spinor() {
    let s = SolutionSpec::homogeneous_degenerate(0, 0, 1e-4);
    let sol = Solution::new(s).unwrap();
    let t = 0.83;
    let psi = sol.spinor(&[t, 0.3, -0.2, 0.0]).psi;
    let unit = psi[0] / psi[0].norm();
    assert!((unit - Cplx::from_polar(1.0, -t)).norm() < 1e-12);
    assert!(psi[1..].iter().all(|c| c.norm() == 0.0));
}

#[test]
fn zero_amplitude_dressing_is_identity() {
    for s in stationary_standard().into_iter().filter(|s| s.p_z == 0.0 && s.family.dressed().is_dressed()) {
        let dressed = Solution::new(s.with_waveform(Waveform::new(WaveformKind::CircularSin, 0.0, 0.8))).unwrap();
        let plain = Solution::new(s).unwrap();
        for x in [[0.4, 0.3, -0.8, 0.2], [1.5, -1.0, 0.6, -0.4]] {
            assert!(dressed.spinor(&x).max_diff(&plain.spinor(&x)) == 0.0);
            let (a, b) = (dressed.potential(&x).unwrap(), plain.potential(&x).unwrap());
            assert_eq!(a, b);
        }
    }
}

/// (γ₀ + γ₃)(ḟ₁γ₁ + ḟ₂γ₂)/(2εω) written out.
fn generator_oracle(wf: &Waveform, eps: f64, xi: f64) -> Multivector {
    let d = wf.df(xi);
    (gamma(0) + gamma(3)) * (gamma(1) * d[0] + gamma(2) * d[1]) * (1.0 / (2.0 * eps * wf.omega))
}

#[test]
fn potential_examples() {
    // Free Bessel: zero.
    let sol = Solution::new(SolutionSpec::free_bessel(1, 1.3, 0.8)).unwrap();
    assert_eq!(sol.potential(&[0.0, 0.3, 0.4, 0.0]).unwrap(), FourVector::default());
    // Uniform field: (0, −yB²/2, xB²/2, 0).
    let b = 0.7;
    let sol = Solution::new(SolutionSpec::homogeneous_degenerate(2, 1, b)).unwrap();
    let (x, y) = (0.9, -1.4);
    let a = sol.potential(&[0.0, x, y, 0.3]).unwrap();
    for (got, want) in a.0.iter().zip([0.0, -y * b * b / 2.0, x * b * b / 2.0, 0.0]) {
        assert!(close(*got, want, 1e-15));
    }
    // 1/r field: eA₂ = xB/(4r).
    let sol = Solution::new(SolutionSpec::inhomogeneous(2, 1, 1.3)).unwrap();
    let a = sol.potential(&[0.0, x, y, 0.0]).unwrap();
    assert!(close(a.0[2], x * 1.3 / (4.0 * x.hypot(y)), 1e-15));
    assert!(close(a.0[1], -y * 1.3 / (4.0 * x.hypot(y)), 1e-15));
    assert_eq!(sol.potential(&[0.0, 0.0, 0.0, 1.0]).unwrap_err(), RdiError::OnAxis);
}

#[test]
fn dressed_potential_examples() {
    let wf = circular();
    let p = [0.37, 0.6, -0.9, -0.2];
    // Volkov–Bessel: eA₀ = eA₃ = 0, transverse ḟ/ω.
    let sol = Solution::new(SolutionSpec::free_bessel(1, 1.3, 0.8).with_waveform(wf)).unwrap();
    let xi = wf.omega * (p[0] - p[3]);
    let d = wf.df(xi);
    let a = sol.potential(&p).unwrap();
    assert_eq!(a.0[0], 0.0);
    assert_eq!(a.0[3], 0.0);
    assert!(close(a.0[1], d[0] / wf.omega, 1e-15) && close(a.0[2], d[1] / wf.omega, 1e-15));
    // Redmond: eA₀ = −B²(x′ḟ₂ − y′ḟ₁)/(2εω) = eA₃.
    let b = 1.0;
    let sol = Solution::new(SolutionSpec::homogeneous_degenerate(1, 0, b).with_waveform(wf)).unwrap();
    let eps = sol.eps;
    let f = wf.f(xi);
    let xp = p[1] + f[0] / (eps * wf.omega * wf.omega);
    let yp = p[2] + f[1] / (eps * wf.omega * wf.omega);
    let a = sol.potential(&p).unwrap();
    let a0 = -b * b * (xp * d[1] - yp * d[0]) / (2.0 * eps * wf.omega);
    assert!(close(a.0[0], a0, 1e-14));
    assert_eq!(a.0[0], a.0[3]);
    assert!(close(a.0[1], -b * b * yp / 2.0 + d[0] / wf.omega, 1e-14));
    assert!(close(a.0[2], b * b * xp / 2.0 + d[1] / wf.omega, 1e-14));
}

#[test]
fn field_examples() {
    let sol = Solution::new(SolutionSpec::homogeneous_degenerate(1, 0, 0.7)).unwrap();
    let f = sol.fields(&[0.0, 0.3, 0.2, 0.0]).unwrap();
    assert_eq!(f.e, [0.0; 3]);
    assert!(close(f.b[2], 0.49, 1e-15));
    let sol = Solution::new(SolutionSpec::inhomogeneous(1, 0, 1.0)).unwrap();
    let f = sol.fields(&[0.0, 0.3, 0.4, 0.0]).unwrap();
    assert!(close(f.b[2], 1.0 / (4.0 * 0.5), 1e-15));
}

#[test]
fn dressed_field_invariants() {
    for s in all_standard().into_iter().filter(|s| s.family.is_dressed() && s.family.stationary() != Family::FreeBessel) {
        let sol = Solution::new(s).unwrap();
        let d = sol.dressing().unwrap();
        for p in [[0.1, 0.8, -0.3, 0.4], [2.0, -1.2, 0.9, -0.7], [-0.6, 2.4, 1.3, 1.0]] {
            let f = sol.fields(&p).unwrap();
            assert!(f.e_dot_b().abs() < 1e-12, "{}", spec_id(&s));
            let xs = d.shifted(&p);
            let bs = match s.family {
                Family::Redmond => s.b * s.b,
                _ => s.b / (4.0 * xs[1].hypot(xs[2])),
            };
            assert!(close(f.invariant(), -bs * bs, 1e-12), "{}", spec_id(&s));
        }
    }
}

#[test]
fn closed_form_fields_match_potential_derivatives() {
    for s in all_standard() {
        let sol = Solution::new(s).unwrap();
        for p in [[0.3, 0.8, -0.6, 0.2], [1.1, -1.5, 0.4, -0.3]] {
            let closed = sol.fields(&p).unwrap();
            let (e, b) = fields_from_potential(&sol, &p, 1e-3).unwrap();
            for k in 0..3 {
                assert!(close(closed.e[k], e[k], 1e-9), "{} E{k}", spec_id(&s));
                assert!(close(closed.b[k], b[k], 1e-9), "{} B{k}", spec_id(&s));
            }
        }
    }
}

#[test]
fn sources_match_field_derivatives() {
    // ∇·E = ρ_e and ∇×B − ∂ₜE = J_e by differences of the closed-form fields.
    let h = 1e-3;
    for s in all_standard() {
        let sol = Solution::new(s).unwrap();
        let p = [0.4, 0.9, -0.7, 0.1];
        let d = |mu: usize| -> ([f64; 3], [f64; 3]) {
            let at = |sgn: f64| {
                let mut q = p;
                q[mu] += sgn;
                sol.fields(&q).unwrap()
            };
            let (a, b, c, e) = (at(h), at(-h), at(2.0 * h), at(-2.0 * h));
            let g = |f: fn(&FieldSample) -> [f64; 3]| -> [f64; 3] {
                std::array::from_fn(|k| (8.0 * (f(&a)[k] - f(&b)[k]) - (f(&c)[k] - f(&e)[k])) / (12.0 * h))
            };
            (g(|f| f.e), g(|f| f.b))
        };
        let (de, db): (Vec<_>, Vec<_>) = (0..4).map(d).unzip();
        let div_e = de[1][0] + de[2][1] + de[3][2];
        let curl_b = [db[2][2] - db[3][1], db[3][0] - db[1][2], db[1][1] - db[2][0]];
        let f = sol.fields(&p).unwrap();
        assert!(close(div_e, f.charge_source, 1e-8), "{}", spec_id(&s));
        for k in 0..3 {
            assert!(close(curl_b[k] - de[0][k], f.current_source[k], 1e-8), "{} J{k}", spec_id(&s));
        }
    }
}

#[test]
fn generator_is_written_out_and_nilpotent() {
    for wf in [
        circular(),
        Waveform::new(WaveformKind::LinearSin, 0.7, 1.3),
        Waveform { tau: 2.0, ..Waveform::new(WaveformKind::PulseEnvelope, 0.5, 0.6) },
    ] {
        let d = LaserDressing { wf, eps: 1.4 };
        for k in 0..100 {
            let xi = -5.0 + 0.1 * k as f64;
            let n = d.generator(xi);
            assert!(n.max_diff(&generator_oracle(&wf, 1.4, xi)) < 1e-15);
            assert!((n * n).max_abs() < 1e-15);
        }
    }
}

#[test]
fn laser_polar_factors_match_decomposition() {
    let d = LaserDressing { wf: Waveform::new(WaveformKind::LinearSin, 0.9, 0.7), eps: 1.2 };
    for xi in [0.1, 0.8, 2.0, 4.0] {
        let r = d.rotor(xi);
        let closed = d.polar_closed_form(xi);
        let numeric = polar_decompose(&r).unwrap();
        assert!(closed.boost.max_diff(&numeric.boost) < 1e-12, "ξ={xi}: {}", closed.boost.max_diff(&numeric.boost));
        assert!(closed.rotation.max_diff(&numeric.rotation) < 1e-12, "ξ={xi}");
    }
    let d = LaserDressing { wf: circular(), eps: 1.7 };
    for xi in [0.3, 1.9] {
        let closed = d.polar_closed_form(xi);
        assert!((closed.boost * closed.rotation).max_diff(&d.rotor(xi)) < 1e-12);
    }
}

#[test]
fn gauge_integral_matches_quadrature() {
    for wf in [
        circular(),
        Waveform::new(WaveformKind::LinearSin, 0.7, 1.3),
        Waveform { tau: 2.0, ..Waveform::new(WaveformKind::PulseEnvelope, 0.5, 0.6) },
    ] {
        for xi in [-2.0, 0.5, 3.3] {
            let oracle = simpson(
                |p| {
                    let d = wf.df(p);
                    d[0] * d[0] + d[1] * d[1]
                },
                0.0,
                xi,
                20_000,
            );
            assert!(close(wf.gauge_integral(xi), oracle, 1e-11));
        }
    }
}

#[test]
fn stationary_current_is_azimuthal() {
    for s in stationary_standard().into_iter().filter(|s| s.p_z == 0.0) {
        let sol = Solution::new(s).unwrap();
        for p in [[0.0, 0.7, 0.2, 0.0], [1.0, -0.5, 1.3, 2.0]] {
            let j = observables(&sol.spinor(&p)).unwrap().current.0;
            let radial = j[1] * p[1] + j[2] * p[2];
            assert!(radial.abs() < 1e-15, "{}", spec_id(&s));
            assert!(j[3].abs() < 1e-15);
        }
    }
}

#[test]
fn closed_form_velocity_and_spin_match_bilinears() {
    for s in all_standard() {
        let sol = Solution::new(s).unwrap();
        for p in [[0.0, 0.5, 0.3, 0.1], [0.7, -0.9, 0.4, -0.2], [1.3, 0.2, -1.1, 0.5]] {
            let Ok((v, sp)) = sol.velocity_spin(&p) else { continue };
            let obs = observables(&sol.spinor(&p)).unwrap();
            for mu in 0..4 {
                assert!(close(v.0[mu], obs.velocity().0[mu], 1e-10), "{} v{mu}", spec_id(&s));
                assert!(close(sp.0[mu], obs.spin().0[mu], 1e-10), "{} s{mu}", spec_id(&s));
            }
            if !s.family.is_dressed() && s.p_z == 0.0 {
                assert_eq!(sp.0.map(|c| (c * 1e12).round() / 1e12), [0.0, 0.0, 0.0, 1.0]);
            }
            if s.p_z != 0.0 && !s.family.is_dressed() {
                let dot: f64 = (1..4).map(|k| v.0[k] * sp.0[k]).sum();
                assert!(close(sp.0[0], dot / v.0[0], 1e-12));
            }
        }
    }
}

#[test]
fn stationary_factors_assemble_to_the_spinor() {
    for s in stationary_standard() {
        let sol = Solution::new(s).unwrap();
        for p in [[0.3, 0.4, 0.2, 0.1], [1.0, -0.6, 0.9, -0.5]] {
            let Ok(ms) = sol.stationary_factors(&p) else { continue };
            let col = rdi::spinor_factory::to_column(&rdi::spinor_factory::assemble(&ms));
            assert!(col.max_diff(&sol.spinor(&p)) < 1e-12, "{}", spec_id(&s));
        }
    }
}

#[test]
fn averages_match_quadrature() {
    for s in all_standard().into_iter().filter(|s| s.family.is_normalizable()) {
        let xi = 0.7;
        let exact = averages(&s, xi).unwrap();
        let num = averages_numeric(&s, xi, 64).unwrap();
        assert!(close(num.stationary_charge, 1.0, 1e-10), "{}", spec_id(&s));
        assert!(close(exact.rho, s.mass / eigenvalue(&s).unwrap(), 1e-15));
        assert!(close(num.averages.rho, exact.rho, 1e-8), "{} ρ", spec_id(&s));
        assert!(close(num.averages.j_z, exact.j_z, 1e-8), "{} Jz", spec_id(&s));
        for k in 0..2 {
            assert!(close(num.averages.centroid[k], exact.centroid[k], 1e-6), "{} centroid", spec_id(&s));
        }
        if let (Some(a), Some(b)) = (exact.j_phi, num.averages.j_phi) {
            assert!(close(a, b, 1e-8), "{} Jφ {a} vs {b}", spec_id(&s));
        }
        if s.family.is_dressed() {
            let shift = dressed_current_shift(&s, xi).unwrap();
            let base = averages_numeric(&s.stationary(), 0.0, 64).unwrap().current;
            for mu in 0..4 {
                assert!(close(num.current.0[mu] - base.0[mu], shift.0[mu], 1e-8), "{} shift{mu}", spec_id(&s));
            }
        }
    }
}

#[test]
fn circular_drive_gives_constant_jz() {
    let s = SolutionSpec::homogeneous_degenerate(1, 0, 1.0).with_waveform(circular());
    let v: Vec<f64> = (0..20).map(|k| averages(&s, 0.3 * k as f64).unwrap().j_z).collect();
    let spread = v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread <= 1e-15);
}

#[test]
fn si_units() {
    let u = Units::si();
    assert!(close(u.length(), 3.861_592_679_6e-13, 1e-21));
    assert!(close(u.energy() / 1.602_176_634e-19, 510_998.95, 1e-2));
    assert_eq!(Units::natural().force(), 1.0);
}

proptest! {
    #[test]
    fn waveform_derivatives_are_consistent(
        kind in prop_oneof![Just(WaveformKind::CircularSin), Just(WaveformKind::LinearSin), Just(WaveformKind::PulseEnvelope)],
        a in 0.0f64..2.0,
        xi in -10.0f64..10.0,
    ) {
        let wf = Waveform { tau: 2.5, ..Waveform::new(kind, a, 0.9) };
        let h = 1e-3;
        let fd = |g: &dyn Fn(f64) -> [f64; 2]| -> [f64; 2] {
            std::array::from_fn(|k| (8.0 * (g(xi + h)[k] - g(xi - h)[k]) - (g(xi + 2.0 * h)[k] - g(xi - 2.0 * h)[k])) / (12.0 * h))
        };
        let d1 = fd(&|x| wf.f(x));
        let d2 = fd(&|x| wf.df(x));
        for k in 0..2 {
            prop_assert!((d1[k] - wf.df(xi)[k]).abs() <= 1e-9);
            prop_assert!((d2[k] - wf.d2f(xi)[k]).abs() <= 1e-9);
        }
    }

    #[test]
    fn profile_derivatives_are_consistent(idx in 0usize..12, lam in 0.05f64..6.0) {
        let s = stationary_standard()[idx];
        let p = CatalogProfile::for_spec(&s).unwrap();
        let h = 1e-4 * lam.max(0.5);
        let fd1 = (8.0 * (p.f(lam + h) - p.f(lam - h)) - (p.f(lam + 2.0 * h) - p.f(lam - 2.0 * h))) / (12.0 * h);
        let fd2 = (8.0 * (p.df(lam + h) - p.df(lam - h)) - (p.df(lam + 2.0 * h) - p.df(lam - 2.0 * h))) / (12.0 * h);
        let s1 = 1.0 + p.df(lam).abs() + p.f(lam).abs();
        let s2 = 1.0 + p.d2f(lam).abs() + p.df(lam).abs();
        prop_assert!((fd1 - p.df(lam)).abs() <= 1e-8 * s1);
        prop_assert!((fd2 - p.d2f(lam)).abs() <= 1e-8 * s2);
    }

    #[test]
    fn dressed_spinor_is_rotor_times_shifted_state(idx in 0usize..9, t in -3.0f64..3.0, x in -2.0f64..2.0, y in -2.0f64..2.0, z in -2.0f64..2.0) {
        let s = all_standard().into_iter().filter(|s| s.family.is_dressed()).nth(idx).unwrap();
        let sol = Solution::new(s).unwrap();
        let st = Solution::new(s.stationary()).unwrap();
        let d = sol.dressing().unwrap();
        let p = [t, x, y, z];
        let field = laser_dress(|q: &SpacetimePoint| st.matrix_spinor(q), d.wf, d.eps);
        let want = field(&p);
        prop_assert!(sol.matrix_spinor(&p).max_diff(&want) < 1e-12 * (1.0 + want.max_abs()));
    }
}
