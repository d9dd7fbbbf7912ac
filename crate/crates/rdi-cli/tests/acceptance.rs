//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when
//! any criterion fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdi::error::Result;
use rdi::numerics::FdPolicy;
use rdi::rdi_inverter::lorentz_gauge_residual;
use rdi::solution_catalog::*;
use rdi::spinor_factory::observables;
use rdi::verifier::*;
use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn sets(fams: &[Family]) -> Vec<SolutionSpec> {
    fams.iter().flat_map(|f| standard_parameter_sets(*f)).collect()
}

fn normalizable() -> Vec<SolutionSpec> {
    sets(&Family::ALL).into_iter().filter(|s| s.family.is_normalizable()).collect()
}

fn max_of(records: &[&CheckRecord]) -> f64 {
    records.iter().map(|r| r.max_residual).fold(0.0, f64::max)
}

fn dirac_suite() -> Result<Outcome> {
    let start = Instant::now();
    let cfg = SuiteConfig { checks: vec![CheckKind::Dirac, CheckKind::NegativeControls], ..SuiteConfig::default() };
    let report = run_suite(&Family::ALL, &cfg)?;
    let secs = start.elapsed().as_secs_f64();
    let dirac: Vec<_> = report.records.iter().filter(|r| r.check == "dirac").collect();
    let controls: Vec<_> = report.records.iter().filter(|r| r.check.starts_with("detects[")).collect();
    let enough = Family::ALL.iter().all(|f| standard_parameter_sets(*f).len() >= 3);
    let weakest = controls.iter().map(|r| r.max_residual).fold(f64::INFINITY, f64::min);
    let full_points = dirac.iter().all(|r| r.points + r.excluded == 100);
    outcome(
        report.pass && enough && full_points && dirac.len() >= 21 && secs <= 600.0,
        format!(
            "{} states, max residual {:.2e}, weakest control {:.2e}, {:.0} s",
            dirac.len(),
            max_of(&dirac),
            weakest,
            secs
        ),
    )
}

fn inversion() -> Result<Outcome> {
    let cfg = SuiteConfig { checks: vec![CheckKind::Inversion], ..SuiteConfig::default() };
    let report = run_suite(&Family::ALL, &cfg)?;
    let agree: Vec<_> = report.records.iter().filter(|r| r.check == "inversion").collect();
    let grades: Vec<_> = report.records.iter().filter(|r| r.check == "inversion-grades").collect();
    outcome(
        report.pass && agree.len() >= 21 && grades.len() == agree.len(),
        format!("agreement (scaled) {:.2e}, constrained grades {:.2e}", max_of(&agree), max_of(&grades)),
    )
}

fn eigenvalues() -> Result<Outcome> {
    let cases = [
        (SolutionSpec::homogeneous_degenerate(1, 0, 1.0), 3f64.sqrt()),
        (SolutionSpec::homogeneous_nondegenerate(1, 1, 1.0), 5f64.sqrt()),
        (SolutionSpec::inhomogeneous(1, 0, 1.0), (19.0f64 / 18.0).sqrt()),
    ];
    let mut worst = 0.0f64;
    let mut pz_worst = 0.0f64;
    for (spec, want) in cases {
        let e0 = eigenvalue(&spec)?;
        worst = worst.max((e0 - want).abs());
        let e1 = eigenvalue(&spec.with_pz(0.7))?;
        pz_worst = pz_worst.max((e1 * e1 - (e0 * e0 + 0.49)).abs());
    }
    outcome(worst <= 1e-12 && pz_worst <= 1e-12, format!("max |ε − ε₀| {worst:.1e}, p_z² addition {pz_worst:.1e}"))
}

fn averages_by_quadrature() -> Result<Outcome> {
    let mut rho = 0.0f64;
    // Homogeneous and inhomogeneous deviations, kept apart for the report.
    let mut jphi = [0.0f64; 2];
    for spec in normalizable() {
        let eps = eigenvalue(&spec)?;
        let xis: &[f64] = if spec.family.is_dressed() { &[0.0, 0.7] } else { &[0.0] };
        for &xi in xis {
            let n = averages_numeric(&spec, xi, 64)?;
            rho = rho.max((n.averages.rho - spec.mass / eps).abs());
        }
        if spec.family.is_dressed() {
            continue;
        }
        let (b, nq) = (spec.b, spec.n as f64);
        let want = match spec.family {
            Family::Inhomogeneous => {
                let m = spec.m_orbital as f64;
                b * nq * (1.0 + nq + m) / ((1.0 + 2.0 * nq + m).powi(2) * eps)
            }
            _ => 2f64.sqrt() * b * nq / eps,
        };
        let got = averages_numeric(&spec, 0.0, 64)?.averages.j_phi.unwrap_or(f64::NAN);
        let slot = usize::from(spec.family == Family::Inhomogeneous);
        let d = (got - want).abs();
        jphi[slot] = if d.is_nan() { f64::NAN } else { jphi[slot].max(d) };
    }
    let mut jz = 0.0f64;
    for spec in standard_parameter_sets(Family::Redmond) {
        if spec.waveform.map(|w| w.kind) != Some(WaveformKind::CircularSin) {
            continue;
        }
        let vals: Vec<f64> = (0..10).map(|k| averages_numeric(&spec, 0.6 * k as f64, 64).map(|a| a.averages.j_z)).collect::<Result<_>>()?;
        jz = jz.max(vals.iter().map(|v| (v - vals[0]).abs()).fold(0.0, f64::max));
    }
    outcome(
        rho <= 1e-8 && jphi[0] <= 1e-8 && jphi[1] <= 1e-8 && jz <= 1e-9,
        format!(
            "⟨ρ⟩ {rho:.1e}, ⟨J_φ⟩ vs quoted forms {:.2e} (homogeneous) {:.2e} (inhomogeneous), ⟨J_z⟩ drift {jz:.1e}",
            jphi[0], jphi[1]
        ),
    )
}

fn quoted_normalization() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut exact = 0.0f64;
    let mut bad = Vec::new();
    for spec in sets(&[Family::HomogeneousDegenerate, Family::HomogeneousNondegenerate, Family::Inhomogeneous]) {
        let q = charge_with_normalization(&spec, printed_normalization(&spec)?)?;
        if (q - 1.0).abs() > 1e-8 {
            bad.push(spec_id(&spec));
        }
        worst = worst.max((q - 1.0).abs());
        exact = exact.max((charge_with_normalization(&spec, normalization(&spec)?)? - 1.0).abs());
    }
    outcome(
        worst <= 1e-8,
        format!("quoted 𝒩: max |Q − 1| {worst:.2e} ({} of 9 off); derived 𝒩: {exact:.1e}", bad.len()),
    )
}

fn kinematics() -> Result<Outcome> {
    let cfg = SuiteConfig::default();
    let mut frame = 0.0f64;
    let mut beta = 0.0f64;
    let mut used = 0;
    let mut excluded = 0;
    for (k, spec) in sets(&Family::ALL).iter().enumerate() {
        let sol = Solution::new(*spec)?;
        for x in sample_points(&cfg, 1000 + k as u64, 100) {
            let psi = sol.spinor(&x);
            let ok = observables(&psi).map(|o| o.defined && o.rho * MAX_FRAME_CONDITION >= psi.norm_sqr()).unwrap_or(false);
            if !ok {
                excluded += 1;
                continue;
            }
            let r = kinematic_residual(&psi)?;
            frame = frame.max(r.frame);
            beta = beta.max(r.beta);
            used += 1;
        }
    }
    outcome(
        frame <= 1e-10 && beta <= 1e-10,
        format!("{used} points ({excluded} ill-conditioned skipped): frame {frame:.1e}, max |β| {beta:.3}"),
    )
}

fn field_identities() -> Result<Outcome> {
    let cfg = SuiteConfig::default();
    let mut closed = 0.0f64;
    let mut numeric = 0.0f64;
    let mut inv = 0.0f64;
    let mut gauge = 0.0f64;
    for (k, spec) in sets(&[Family::Redmond, Family::InhomogeneousLaser]).iter().enumerate() {
        let sol = Solution::new(*spec)?;
        let d = sol.dressing().expect("dressed");
        for x in sample_points(&cfg, 2000 + k as u64, 50) {
            let Ok(f) = sol.fields(&x) else { continue };
            closed = closed.max(f.e_dot_b().abs());
            let (e, b) = fields_from_potential(&sol, &x, 1e-3)?;
            numeric = numeric.max((0..3).map(|i| e[i] * b[i]).sum::<f64>().abs());
            if spec.family == Family::InhomogeneousLaser {
                let xs = d.shifted(&x);
                let r2 = xs[1] * xs[1] + xs[2] * xs[2];
                let want = -spec.b * spec.b / (16.0 * r2);
                let fd = (0..3).map(|i| e[i] * e[i] - b[i] * b[i]).sum::<f64>();
                inv = inv.max((f.invariant() - want).abs()).max((fd - want).abs());
            }
        }
    }
    for (k, spec) in sets(&[Family::VolkovBessel, Family::Redmond, Family::InhomogeneousLaser]).iter().enumerate() {
        let sol = Solution::new(*spec)?;
        for x in sample_points(&cfg, 3000 + k as u64, 50) {
            gauge = gauge.max(lorentz_gauge_residual(&sol, &x, FdPolicy::default().h)?);
        }
    }
    outcome(
        closed <= 1e-15 && numeric <= 1e-9 && inv <= 1e-9 && gauge <= 2e-7,
        format!("E·B closed {closed:.1e}, numeric {numeric:.1e}; invariant {inv:.1e}; Lorentz gauge {gauge:.1e}"),
    )
}

fn bessel_addition() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240917);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let nu = rng.random_range(-10..=10);
        let rho = rng.random_range(0.0..=5.0);
        let rho_bar = rng.random_range(0.0..=2.0);
        let (phi, phi_bar) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        worst = worst.max(bessel_addition_check(nu, rho, rho_bar, phi, phi_bar, 40)?);
        worst = worst.max(bessel_addition_check_reflected(nu, rho, rho_bar, phi, phi_bar, 40)?);
    }
    outcome(worst <= 1e-10, format!("50 tuples, both forms, K = 40: {worst:.1e}"))
}

fn volkov() -> Result<Outcome> {
    let cfg = SuiteConfig::default();
    let mut worst = 0.0f64;
    let mut zero = 0.0f64;
    for (k, spec) in standard_parameter_sets(Family::VolkovBessel).iter().enumerate() {
        let mut flat = *spec;
        if let Some(w) = flat.waveform.as_mut() {
            w.amplitude = 0.0;
        }
        let dressed = Solution::new(flat)?;
        let plain = Solution::new(spec.stationary())?;
        for x in sample_points(&cfg, 4000 + k as u64, 50) {
            worst = worst.max(volkov_equivalence(spec, &x)?);
            zero = zero.max(dressed.spinor(&x).max_diff(&plain.spinor(&x)));
        }
    }
    outcome(worst <= 1e-10 && zero == 0.0, format!("dual path {worst:.1e}, a = 0 difference {zero:e}"))
}

fn appendix_identity() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let wfs = [
        Waveform::new(WaveformKind::CircularSin, 0.4, 0.8),
        Waveform::new(WaveformKind::LinearSin, 0.7, 1.1),
        Waveform { tau: 2.0, ..Waveform::new(WaveformKind::PulseEnvelope, 0.5, 0.6) },
    ];
    let mut worst = 0.0f64;
    let mut nil = 0.0f64;
    for k in 0..20 {
        let xi = rng.random_range(-6.0..6.0);
        let eps = rng.random_range(1.0..3.0);
        worst = worst.max(appendix_null_rotation_check(&wfs[k % 3], xi, eps));
        nil = nil.max(null_generator_square(&wfs[k % 3], xi, eps));
    }
    outcome(worst <= 1e-12 && nil <= 4.0 * f64::EPSILON, format!("L_A {worst:.1e}, N² {nil:.1e}"))
}

fn streamlines() -> Result<Outcome> {
    let spec = SolutionSpec::homogeneous_degenerate(1, 0, 1.0);
    let sol = Solution::new(spec)?;
    let (drift, ratio) = proper_time_ratio(&sol, 6.0, 400)?;
    let want = sol.eps / spec.mass;
    outcome(drift <= 1e-6 && (ratio - want).abs() <= 1e-4, format!("radial drift {drift:.1e}, dt/ds {ratio:.6} vs ε/m {want:.6}"))
}

fn determinism() -> Result<Outcome> {
    let run = || Command::new(env!("CARGO_BIN_EXE_rdi")).args(["verify", "--family", "all", "--seed", "20240917"]).output();
    let (a, b) = match (run(), run()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, format!("could not run the binary: {e}")),
    };
    outcome(
        !a.stdout.is_empty() && a.stdout == b.stdout,
        format!("two reports of {} bytes, exit codes {:?}/{:?}", a.stdout.len(), a.status.code(), b.status.code()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 12] = [
        ("dirac residual suite", dirac_suite),
        ("inversion agreement", inversion),
        ("eigenvalues", eigenvalues),
        ("averages by quadrature", averages_by_quadrature),
        ("quoted normalization", quoted_normalization),
        ("kinematic invariants", kinematics),
        ("field identities", field_identities),
        ("bessel addition theorem", bessel_addition),
        ("volkov dual path", volkov),
        ("null rotation identity", appendix_identity),
        ("streamlines", streamlines),
        ("determinism", determinism),
    ];
    let mut passed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        passed += o.pass as usize;
        println!("{} criterion {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("{passed}/12 acceptance criteria pass");
    if passed < criteria.len() {
        std::process::exit(1);
    }
}
