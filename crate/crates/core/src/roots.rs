//! Sign scans and bisection on scalar functions.

use crate::error::{Error, Result};

/// Uniform grid of `n` points on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Geometric grid of `n` points on `[lo, hi]`, `0 < lo < hi`.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    linspace(a, b, n).into_iter().map(f64::exp).collect()
}

/// Brackets `[x_i, x_{i+1}]` over which `f` changes sign. A sample that is
/// exactly zero is reported as a degenerate bracket `[x, x]`.
pub fn sign_changes(values: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (i, w) in values.windows(2).enumerate() {
        let (x0, f0) = w[0];
        let (x1, f1) = w[1];
        if f0 == 0.0 {
            // count an exact zero once, from the window that starts on it
            if i == 0 || values[i - 1].1 != 0.0 {
                out.push((x0, x0));
            }
        } else if f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0) && f0.is_finite() && f1.is_finite() {
            out.push((x0, x1));
        }
    }
    if let Some(&(x, f)) = values.last() {
        if f == 0.0 && values.len() >= 2 && values[values.len() - 2].1 != 0.0 {
            out.push((x, x));
        }
    }
    out
}

/// Bisection of `f` on a sign-changing bracket, until the bracket is no wider
/// than `tol` or cannot be split further in floating point.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if lo == hi {
        return Ok(lo);
    }
    let (mut a, mut b) = if lo < hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa < 0.0) == (fb < 0.0) || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::Bracketing(format!(
            "no sign change on [{a}, {b}]: f = {fa:e}, {fb:e}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a <= tol || mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// All roots of `f` on a grid, one per bracketed sign change.
pub fn scan_roots(f: impl Fn(f64) -> f64, grid: &[f64], tol: f64) -> Result<Vec<f64>> {
    let values: Vec<(f64, f64)> = grid.iter().map(|&x| (x, f(x))).collect();
    sign_changes(&values)
        .into_iter()
        .map(|(a, b)| bisect(&f, a, b, tol))
        .collect()
}
