//! Bessel J of integer order, generalized Laguerre polynomials and the
//! terminating confluent hypergeometric functions built from them.

use crate::error::{RdiError, Result};

pub const BESSEL_MAX_ORDER: u32 = 200;
pub const BESSEL_MAX_ARG: f64 = 1e4;

/// Polynomial in monomial form, evaluated by Horner.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyEval {
    /// Coefficient of x^k at index k.
    pub coefficients: Vec<f64>,
}

impl PolyEval {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Explicit coefficients of L_n^α. Only for small n; the recurrence in
    /// [`laguerre`] is what the catalog uses.
    pub fn laguerre(n: u32, alpha: f64) -> Self {
        let n = n as usize;
        let mut c = vec![0.0; n + 1];
        for (k, ck) in c.iter_mut().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *ck = sign * binomial_real(n as f64 + alpha, (n - k) as u32) / factorial(k as u32);
        }
        Self::new(c)
    }
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// C(a, k) for real a.
pub fn binomial_real(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a - j as f64) / (j + 1) as f64)
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    binomial_real(n as f64, k.min(n - k))
}

/// Rising factorial (b)_n.
pub fn pochhammer(b: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (b + j as f64))
}

fn bessel_series(nu: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = (0..nu).fold(1.0, |acc, k| acc * half / (k + 1) as f64);
    let q = -half * half;
    let mut sum = term;
    for k in 1..200 {
        term *= q / (k as f64 * (k + nu) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// J_0..=J_nmax at one argument by Miller's downward recurrence.
fn bessel_table(nmax: u32, x: f64) -> Vec<f64> {
    let start = {
        let base = nmax.max(x.ceil() as u32) as f64;
        let s = (base + 20.0 + (40.0 * base).sqrt()) as u32;
        s + (s & 1)
    };
    let mut out = vec![0.0; nmax as usize + 1];
    let mut jp1 = 0.0;
    let mut j = 1e-300;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let jm1 = 2.0 * k as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        let order = k - 1;
        if order <= nmax {
            out[order as usize] = j;
        }
        if order % 2 == 0 && order > 0 {
            norm += 2.0 * j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    norm += j;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// J_ν(x) for integer 0 ≤ ν ≤ 200 and 0 ≤ x ≤ 1e4.
pub fn bessel_j(nu: u32, x: f64) -> Result<f64> {
    if nu > BESSEL_MAX_ORDER || !(0.0..=BESSEL_MAX_ARG).contains(&x) {
        return Err(RdiError::Domain(format!(
            "bessel_j({nu}, {x}) outside 0 <= nu <= {BESSEL_MAX_ORDER}, 0 <= x <= {BESSEL_MAX_ARG}"
        )));
    }
    Ok(bessel_j_unchecked(nu, x))
}

pub(crate) fn bessel_j_unchecked(nu: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0 { 1.0 } else { 0.0 };
    }
    if x < 2.0 {
        return bessel_series(nu, x);
    }
    bessel_table(nu, x)[nu as usize]
}

/// J_ν for any integer order and real argument, by parity.
pub fn bessel_j_signed(nu: i32, x: f64) -> Result<f64> {
    let flip_order = nu < 0 && nu % 2 != 0;
    let flip_arg = x < 0.0 && nu % 2 != 0;
    let v = bessel_j(nu.unsigned_abs(), x.abs())?;
    Ok(if flip_order ^ flip_arg { -v } else { v })
}

/// L_n^α(x) by the three-term recurrence. Negative n gives 0, which is what
/// derivative identities like d/dx L_n^α = −L_{n−1}^{α+1} need at n = 0.
pub fn laguerre(n: i32, alpha: f64, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn is_pole(n: u32, b: f64) -> bool {
    b <= 0.0 && b.fract() == 0.0 && b > -(n as f64)
}

/// ₁F₁(−n; b; x) = n!/(b)_n · L_n^{b−1}(x).
pub fn hyp1f1_poly(n: u32, b: f64, x: f64) -> Result<f64> {
    if is_pole(n, b) {
        return Err(RdiError::Domain(format!("1F1(-{n}; {b}; x) hits a pole")));
    }
    Ok(factorial(n) / pochhammer(b, n) * laguerre(n as i32, b - 1.0, x))
}

/// U(−n, b, x) = (−1)ⁿ n! L_n^{b−1}(x).
pub fn tricomi_u_poly(n: u32, b: f64, x: f64) -> Result<f64> {
    if !x.is_finite() || !b.is_finite() {
        return Err(RdiError::Domain("non-finite argument to U".into()));
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * factorial(n) * laguerre(n as i32, b - 1.0, x))
}

/// U(a, b, x) in the terminating case a = −n.
pub fn tricomi_u(a: f64, b: f64, x: f64) -> Result<f64> {
    if a > 0.0 || a.fract() != 0.0 {
        return Err(RdiError::Domain(format!("U({a}, {b}, x) does not terminate")));
    }
    tricomi_u_poly((-a) as u32, b, x)
}
