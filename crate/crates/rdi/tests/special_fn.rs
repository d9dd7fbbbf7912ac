use proptest::prelude::*;
use rdi::special_fn::*;
use std::f64::consts::PI;

/// Bessel's integral J_n(x) = (1/π)∫₀^π cos(nτ − x sin τ) dτ. The integrand
/// extends to a smooth periodic function, so the trapezoid rule converges
/// geometrically.
fn bessel_integral(n: u32, x: f64) -> f64 {
    let nodes = 4096;
    let h = 2.0 * PI / nodes as f64;
    let sum: f64 = (0..nodes)
        .map(|k| {
            let t = k as f64 * h;
            (n as f64 * t - x * t.sin()).cos()
        })
        .sum();
    sum * h / (2.0 * PI)
}

/// L_n^α(x) = Σ_k (−1)^k C(n+α, n−k) x^k / k!, with the binomial built by hand.
/// Also returns Σ|term|, the scale of the cancellation roundoff.
fn laguerre_sum(n: u32, alpha: f64, x: f64) -> (f64, f64) {
    let mut total = 0.0;
    let mut scale = 0.0;
    for k in 0..=n {
        let mut binom = 1.0;
        for j in 0..(n - k) {
            binom *= (n as f64 + alpha - j as f64) / (j + 1) as f64;
        }
        let mut fact = 1.0;
        for j in 1..=k {
            fact *= j as f64;
        }
        let term = binom * x.powi(k as i32) / fact;
        total += if k % 2 == 0 { term } else { -term };
        scale += term.abs();
    }
    (total, scale)
}

#[test]
fn bessel_against_integral_representation() {
    for &n in &[0u32, 1, 2, 5, 10, 30] {
        for &x in &[0.1, 0.9, 1.99, 2.0, 3.7, 10.0, 25.5, 60.0] {
            let got = bessel_j(n, x).unwrap();
            let want = bessel_integral(n, x);
            assert!((got - want).abs() < 1e-13, "J_{n}({x}): {got} vs {want}");
        }
    }
}

#[test]
fn bessel_known_values() {
    assert!((bessel_j(0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
    assert!((bessel_j(1, 2.404_825_557_695_773).unwrap() - 0.519_147_497_289_466).abs() < 1e-13);
    assert!(bessel_j(0, 2.404_825_557_695_773).unwrap().abs() < 1e-15);
}

#[test]
fn bessel_window_is_enforced() {
    assert!(bessel_j(200, 3.0).is_ok());
    assert!(bessel_j(201, 3.0).is_err());
    assert!(bessel_j(3, 1e4).is_ok());
    assert!(bessel_j(3, 1.0001e4).is_err());
    assert!(bessel_j(3, f64::NAN).is_err());
}

#[test]
fn laguerre_matches_explicit_sum() {
    for n in 0..12 {
        for &alpha in &[0.0, 0.5, 1.0, 3.0, 7.0] {
            for &x in &[0.0, 0.3, 1.7, 4.0, 9.5] {
                let got = laguerre(n as i32, alpha, x);
                let (want, scale) = laguerre_sum(n, alpha, x);
                let tol = 1e-14 * (1.0 + scale);
                assert!((got - want).abs() <= tol, "L_{n}^{alpha}({x}): {got} vs {want}");
                let poly = PolyEval::laguerre(n, alpha).eval(x);
                assert!((poly - want).abs() <= tol, "poly L_{n}^{alpha}({x}): {poly} vs {want}");
            }
        }
    }
}

#[test]
fn confluent_polynomials() {
    // 1F1(−2; b; x) = 1 − 2x/b + x²/(b(b+1)).
    let (b, x) = (2.5, 1.3);
    let want = 1.0 - 2.0 * x / b + x * x / (b * (b + 1.0));
    assert!((hyp1f1_poly(2, b, x).unwrap() - want).abs() < 1e-14);
    assert!(hyp1f1_poly(3, -1.0, 0.5).is_err());
    // U(−1, b, x) = x − b.
    assert!((tricomi_u(-1.0, 2.5, 4.0).unwrap() - 1.5).abs() < 1e-14);
    assert!(tricomi_u(0.5, 2.0, 1.0).is_err());
}

#[test]
fn combinatorics() {
    assert_eq!(factorial(0), 1.0);
    assert_eq!(factorial(10), 3_628_800.0);
    assert_eq!(binomial(7, 3), 35.0);
    assert_eq!(binomial(3, 7), 0.0);
    assert_eq!(pochhammer(2.0, 3), 24.0);
}

proptest! {
    #[test]
    fn bessel_three_term_recurrence(n in 1u32..40, x in 0.05f64..80.0) {
        let lhs = bessel_j(n - 1, x).unwrap() + bessel_j(n + 1, x).unwrap();
        let rhs = 2.0 * n as f64 / x * bessel_j(n, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()) / x.min(1.0));
    }

    #[test]
    fn bessel_sum_rule(x in 0.0f64..50.0) {
        // J₀² + 2ΣJ_k² = 1.
        let mut s = bessel_j(0, x).unwrap().powi(2);
        for k in 1..120 {
            s += 2.0 * bessel_j(k, x).unwrap().powi(2);
        }
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn laguerre_derivative_identity(n in 1i32..10, alpha in 0.0f64..6.0, x in 0.0f64..12.0) {
        let h = 1e-4;
        let fd = (laguerre(n, alpha, x + h) - laguerre(n, alpha, x - h)) / (2.0 * h);
        let exact = -laguerre(n - 1, alpha + 1.0, x);
        prop_assert!((fd - exact).abs() < 1e-5 * (1.0 + exact.abs()));
    }

    #[test]
    fn signed_order_parity(n in 0i32..30, x in 0.0f64..20.0) {
        let pos = bessel_j_signed(n, x).unwrap();
        let neg = bessel_j_signed(-n, x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(neg, sign * pos);
    }
}

#[test]
fn small_cases() {
    assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
    assert_eq!(laguerre(0, 2.5, 7.0), 1.0);
    assert!((laguerre(1, 3.0, 0.4) - (1.0 + 3.0 - 0.4)).abs() < 1e-15);
    assert!((laguerre(2, 0.0, 1.0) + 0.5).abs() < 1e-15);
    assert_eq!(hyp1f1_poly(0, 1.5, 3.0).unwrap(), 1.0);
    assert!(hyp1f1_poly(1, 2.0, 2.0).unwrap().abs() < 1e-15);
    assert_eq!(tricomi_u_poly(0, 1.0, 3.0).unwrap(), 1.0);
    assert!((tricomi_u_poly(1, 1.0, 3.5).unwrap() - 2.5).abs() < 1e-14);
}

#[test]
fn laguerre_at_origin_is_binomial() {
    for n in 0..15u32 {
        for m in 0..6u32 {
            assert!((laguerre(n as i32, m as f64, 0.0) - binomial(n + m, n)).abs() < 1e-9 * binomial(n + m, n));
        }
    }
}

#[test]
fn laguerre_orthogonality() {
    // ∫₀^∞ x^α e^{−x} L_n^α L_m^α dx = δ_nm Γ(n+α+1)/n!, integer α, Simpson on [0, 80].
    let steps = 40_000;
    let h = 80.0 / steps as f64;
    for alpha in [0u32, 1, 3] {
        for n in 0..=5 {
            for m in 0..=5 {
                let g = |x: f64| x.powi(alpha as i32) * (-x).exp() * laguerre(n, alpha as f64, x) * laguerre(m, alpha as f64, x);
                let mut s = g(0.0) + g(80.0);
                for k in 1..steps {
                    s += if k % 2 == 1 { 4.0 } else { 2.0 } * g(k as f64 * h);
                }
                let got = s * h / 3.0;
                let want = if n == m { factorial(n as u32 + alpha) / factorial(n as u32) } else { 0.0 };
                assert!((got - want).abs() < 1e-8 * (1.0 + want), "α={alpha} n={n} m={m}: {got}");
            }
        }
    }
}

proptest! {
    #[test]
    fn confluent_laguerre_identities(n in 0u32..12, m in 0u32..8, x in 0.0f64..15.0) {
        let lag = laguerre(n as i32, m as f64, x);
        let f = hyp1f1_poly(n, m as f64 + 1.0, x).unwrap();
        let scale = factorial(n) * factorial(m) / factorial(n + m);
        let tol = 1e-12 * (1.0 + lag.abs()) * (1.0 + x).powi(n as i32);
        prop_assert!((f - scale * lag).abs() <= tol);
        let u = tricomi_u_poly(n, m as f64 + 1.0, x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let want = sign * factorial(n) * lag;
        prop_assert!((u - want).abs() <= 1e-12 * factorial(n) * (1.0 + lag.abs()) * (1.0 + x).powi(n as i32));
    }
}
