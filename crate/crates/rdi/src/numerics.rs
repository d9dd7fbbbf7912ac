//! Quadrature, finite differences and fixed-step RK4.

use crate::error::{RdiError, Result};

/// Finite-difference policy shared by inversion and residual checks.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FdPolicy {
    pub h: f64,
    /// Largest acceptable Richardson estimate |D(h) − D(h/2)|.
    pub tolerance: f64,
}

impl Default for FdPolicy {
    fn default() -> Self {
        Self { h: 1e-3, tolerance: 1e-6 }
    }
}

impl FdPolicy {
    pub fn new(h: f64, tolerance: f64) -> Result<Self> {
        if !(1e-6..=1e-2).contains(&h) {
            return Err(RdiError::Domain(format!("fd step {h} outside [1e-6, 1e-2]")));
        }
        Ok(Self { h, tolerance })
    }
}

/// Fourth-order central difference of a vector-valued function.
pub fn central4<const N: usize, F>(f: F, h: f64) -> [f64; N]
where
    F: Fn(f64) -> [f64; N],
{
    let p1 = f(h);
    let m1 = f(-h);
    let p2 = f(2.0 * h);
    let m2 = f(-2.0 * h);
    std::array::from_fn(|k| (8.0 * (p1[k] - m1[k]) - (p2[k] - m2[k])) / (12.0 * h))
}

/// Derivative at step h and h/2 plus the Richardson estimate between them.
pub fn richardson<const N: usize, F>(f: F, h: f64) -> ([f64; N], f64)
where
    F: Fn(f64) -> [f64; N],
{
    let coarse = central4(&f, h);
    let fine = central4(&f, 0.5 * h);
    let est = coarse
        .iter()
        .zip(fine.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    (fine, est)
}

const GK_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const K15_W: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const G7_W: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = K15_W[7] * fc;
    let mut g = G7_W[3] * fc;
    for j in 0..7 {
        let x = h * GK_NODES[j];
        let s = f(c - x) + f(c + x);
        k += K15_W[j] * s;
        if j % 2 == 1 {
            g += G7_W[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod (7, 15) on [a, b] with `pieces` initial panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize, abs_tol: f64) -> f64 {
    let mut stack: Vec<(f64, f64, usize)> = Vec::new();
    let pieces = pieces.max(1);
    let w = (b - a) / pieces as f64;
    for k in (0..pieces).rev() {
        stack.push((a + k as f64 * w, a + (k + 1) as f64 * w, 0));
    }
    let tol = abs_tol / pieces as f64;
    let mut total = 0.0;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err) = gk15(&f, lo, hi);
        let local = tol * ((hi - lo) / w).max(1e-6);
        if err <= local || depth >= 40 {
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    total
}

/// Adaptive Simpson with Richardson correction.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            return left + right + diff / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(&f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Periodic trapezoid rule over one full period, `n` equally spaced nodes.
pub fn trapezoid_periodic<F: Fn(f64) -> f64>(f: F, period: f64, n: usize) -> f64 {
    let h = period / n as f64;
    (0..n).map(|k| f(k as f64 * h)).sum::<f64>() * h
}

/// One classical RK4 step.
pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], dt: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let axpy = |a: &[f64; N], s: f64, b: &[f64; N]| -> [f64; N] { std::array::from_fn(|k| a[k] + s * b[k]) };
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * dt, &axpy(y, 0.5 * dt, &k1));
    let k3 = f(t + 0.5 * dt, &axpy(y, 0.5 * dt, &k2));
    let k4 = f(t + dt, &axpy(y, dt, &k3));
    std::array::from_fn(|k| y[k] + dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]))
}
