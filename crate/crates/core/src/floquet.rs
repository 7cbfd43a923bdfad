//! Hill's method for the Bloch-reduced linearization about a periodic wave.
//!
//! With `v = e^{i xi z} phi`, the spectral problem
//! `lambda v = d_z (-M_k + c - 2 w) v` becomes, on Fourier modes
//! `-N..=N`,
//!
//! ```text
//! A[m, n] = i (m + xi) [ (c - m(k (m + xi))) delta_mn - 2 w_{m-n} ].
//! ```
//!
//! `A = i D H` with `D` real diagonal and `H` real symmetric, so the
//! eigenvalues are `i mu` for the eigenvalues `mu` of the real matrix `D H`.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dispersion::DispersionModel;
use crate::error::{Error, Result};
use crate::roots::linspace;
use crate::stability::{delta_mi, mechanism_roots, Mechanism, Verdict};
use crate::waves::{expansion_wave, refine_wave, TravelingWave};

pub type C64 = Complex<f64>;

const SCHUR_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub xi: f64,
    pub n_f: usize,
    pub eigenvalues: Vec<C64>,
    pub r_origin: f64,
    /// Largest real part among eigenvalues with `|lambda| <= r_origin`
    /// (zero when the disc holds none).
    pub max_real_near_origin: f64,
    pub eigenvectors_stored: bool,
}

fn check_xi(xi: f64) -> Result<()> {
    if (-0.5..0.5).contains(&xi) {
        Ok(())
    } else {
        Err(Error::Domain(format!("Bloch parameter xi = {xi} outside [-1/2, 1/2)")))
    }
}

fn check_truncation(wave: &TravelingWave, n_f: usize) -> Result<()> {
    let required = wave.highest_harmonic() + 2;
    if n_f < required {
        return Err(Error::Truncation { n_f, required });
    }
    Ok(())
}

fn check_wave(wave: &TravelingWave) -> Result<()> {
    if wave.b != 0.0 {
        return Err(Error::Domain(format!("linearization needs a wave with b = 0, got b = {}", wave.b)));
    }
    Ok(())
}

/// Real symmetric factor `H` and diagonal of `D` for `A = i D H`.
fn real_factors(wave: &TravelingWave, xi: f64, n_f: usize) -> (Vec<f64>, DMatrix<f64>) {
    let dim = 2 * n_f + 1;
    let n = n_f as i64;
    let shifts: Vec<f64> = (-n..=n).map(|m| m as f64 + xi).collect();
    let h = DMatrix::from_fn(dim, dim, |r, s| {
        let coupling = -2.0 * wave.coeff(r as i64 - s as i64);
        if r == s {
            wave.c - wave.model.value(wave.k * shifts[r]) + coupling
        } else {
            coupling
        }
    });
    (shifts, h)
}

/// The truncated Bloch matrix on modes `-n_f..=n_f` (row/column `j` is mode `j - n_f`).
pub fn bloch_matrix(wave: &TravelingWave, xi: f64, n_f: usize) -> Result<DMatrix<C64>> {
    check_wave(wave)?;
    check_xi(xi)?;
    check_truncation(wave, n_f)?;
    let (shifts, h) = real_factors(wave, xi, n_f);
    Ok(DMatrix::from_fn(h.nrows(), h.ncols(), |r, s| C64::new(0.0, shifts[r] * h[(r, s)])))
}

/// All eigenvalues of the truncated Bloch matrix. `r_origin` defaults to `10 |a|`.
pub fn bloch_spectrum(wave: &TravelingWave, xi: f64, n_f: usize, r_origin: Option<f64>) -> Result<SpectrumResult> {
    check_wave(wave)?;
    check_xi(xi)?;
    check_truncation(wave, n_f)?;
    let (shifts, h) = real_factors(wave, xi, n_f);
    let dim = h.nrows();
    let mut dh = h;
    for (r, &d) in shifts.iter().enumerate() {
        dh.row_mut(r).scale_mut(d);
    }
    let schur = Schur::try_new(dh, f64::EPSILON, SCHUR_MAX_ITER).ok_or(Error::Eigensolver(dim))?;
    let mut eigenvalues: Vec<C64> = schur
        .complex_eigenvalues()
        .iter()
        .map(|mu| C64::new(0.0 - mu.im, mu.re))
        .collect();
    eigenvalues.sort_by(|x, y| x.im.total_cmp(&y.im).then(x.re.total_cmp(&y.re)));
    let r_origin = r_origin.unwrap_or(10.0 * wave.a.abs());
    Ok(SpectrumResult {
        xi,
        n_f,
        max_real_near_origin: max_real_in_disc(&eigenvalues, r_origin),
        eigenvalues,
        r_origin,
        eigenvectors_stored: false,
    })
}

fn max_real_in_disc(eigenvalues: &[C64], r: f64) -> f64 {
    eigenvalues
        .iter()
        .filter(|l| l.norm() <= r)
        .map(|l| l.re)
        .reduce(f64::max)
        .unwrap_or(0.0)
}

/// Closed-form spectrum at `a = 0`: `i (n + xi) (m(k) - m(k (n + xi)))`, `|n| <= n_f`.
pub fn unmodulated_spectrum(model: &DispersionModel, k: f64, xi: f64, n_f: usize) -> Vec<C64> {
    let mk = model.value(k);
    let n = n_f as i64;
    (-n..=n)
        .map(|j| {
            let s = j as f64 + xi;
            C64::new(0.0, s * (mk - model.value(k * s)))
        })
        .collect()
}

/// Leading-order basis of the generalized kernel at `xi = 0`, as two-sided
/// Fourier coefficients on modes `-2..=2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelBasis {
    pub phi1: [C64; 5],
    pub phi2: [C64; 5],
    pub phi3: [C64; 5],
}

impl KernelBasis {
    /// Pads a basis vector to modes `-n_f..=n_f`.
    pub fn embed(phi: &[C64; 5], n_f: usize) -> Result<Vec<C64>> {
        if n_f < 2 {
            return Err(Error::Truncation { n_f, required: 2 });
        }
        let mut out = vec![C64::new(0.0, 0.0); 2 * n_f + 1];
        out[n_f - 2..=n_f + 2].copy_from_slice(phi);
        Ok(out)
    }
}

pub fn kernel_basis(model: &DispersionModel, k: f64, a: f64) -> Result<KernelBasis> {
    // reuse the wave constructor for the resonance checks
    expansion_wave(model, k, a, 0.0)?;
    let d2 = model.value(k) - model.value(2.0 * k);
    let zero = C64::new(0.0, 0.0);
    let re = |x: f64| C64::new(x, 0.0);
    let im = |x: f64| C64::new(0.0, x);
    Ok(KernelBasis {
        // cos z + (-1/2 + a cos 2z) / d2
        phi1: [re(a / (2.0 * d2)), re(0.5), re(-0.5 / d2), re(0.5), re(a / (2.0 * d2))],
        // sin z + a sin 2z / d2
        phi2: [im(a / (2.0 * d2)), im(0.5), zero, im(-0.5), im(-a / (2.0 * d2))],
        phi3: [zero, zero, re(1.0), zero, zero],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthConfig {
    /// Growth above `g_thresh a^2` counts as unstable.
    pub g_thresh: f64,
    /// Minimum distance from `k` to any mechanism root.
    pub delta_margin: f64,
    pub r_origin: Option<f64>,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        Self {
            g_thresh: 1e-2,
            delta_margin: 0.05,
            r_origin: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Observation {
    Stable,
    Unstable,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthCheck {
    pub k: f64,
    pub a: f64,
    pub n_f: usize,
    pub delta_mi: f64,
    pub predicted: Verdict,
    pub observed: Observation,
    pub agree: bool,
    /// Set when the observed growth falls between the two thresholds.
    pub indeterminate: bool,
    pub max_growth: f64,
    /// `(xi, max_real_near_origin)` for each requested `xi`.
    pub growth_by_xi: Vec<(f64, f64)>,
}

/// Modes used for the refined wave inside a growth check.
pub fn check_wave_modes(n_f: usize) -> usize {
    n_f.saturating_sub(2).min(24)
}

/// Nearest root of any mechanism function within `radius` of `k`.
pub fn nearest_mechanism_root(model: &DispersionModel, k: f64, radius: f64) -> Result<Option<(Mechanism, f64)>> {
    let grid = linspace((k - radius).max(1e-3), k + radius, 2001);
    let mut best: Option<(Mechanism, f64)> = None;
    for mech in Mechanism::ALL {
        for z in mechanism_roots(model, mech, &grid)? {
            if best.map_or(true, |(_, b)| (z - k).abs() < (b - k).abs()) {
                best = Some((mech, z));
            }
        }
    }
    Ok(best)
}

/// Refined wave used by [`mi_growth_check`].
pub fn refined_check_wave(model: &DispersionModel, k: f64, a: f64, n_f: usize) -> Result<TravelingWave> {
    let seed = expansion_wave(model, k, a, 0.0)?;
    refine_wave(&seed, check_wave_modes(n_f), 1e-14)
}

/// Compares the sign of the index with the near-origin growth of a Hill
/// eigensolve over `xi_list`.
pub fn mi_growth_check(
    model: &DispersionModel,
    k: f64,
    a: f64,
    xi_list: &[f64],
    n_f: usize,
    cfg: &GrowthConfig,
) -> Result<GrowthCheck> {
    if !(a > 0.0 && a <= 0.02) {
        return Err(Error::Domain(format!("amplitude a = {a} outside (0, 0.02]")));
    }
    if xi_list.is_empty() {
        return Err(Error::Domain("empty list of Bloch parameters".into()));
    }
    if let Some((mech, z)) = nearest_mechanism_root(model, k, cfg.delta_margin)? {
        if (z - k).abs() <= cfg.delta_margin {
            return Err(Error::Domain(format!(
                "k = {k} is within {} of the {} root at {z}",
                cfg.delta_margin,
                mech.name()
            )));
        }
    }
    let report = delta_mi(model, k)?;
    let index = report
        .delta_mi
        .ok_or_else(|| Error::Domain(format!("index undefined at k = {k}")))?;

    let wave = refined_check_wave(model, k, a, n_f)?;
    let growth_by_xi = xi_list
        .par_iter()
        .map(|&xi| bloch_spectrum(&wave, xi, n_f, cfg.r_origin).map(|s| (xi, s.max_real_near_origin)))
        .collect::<Result<Vec<_>>>()?;
    let max_growth = growth_by_xi.iter().map(|g| g.1).fold(f64::NEG_INFINITY, f64::max);

    let unstable_above = cfg.g_thresh * a * a;
    let observed = if max_growth > unstable_above {
        Observation::Unstable
    } else if max_growth < 1e-2 * unstable_above {
        Observation::Stable
    } else {
        Observation::Indeterminate
    };
    let agree = matches!(
        (report.verdict, observed),
        (Verdict::Stable, Observation::Stable) | (Verdict::Unstable, Observation::Unstable)
    );
    Ok(GrowthCheck {
        k,
        a,
        n_f,
        delta_mi: index,
        predicted: report.verdict,
        observed,
        agree,
        indeterminate: observed == Observation::Indeterminate,
        max_growth,
        growth_by_xi,
    })
}
