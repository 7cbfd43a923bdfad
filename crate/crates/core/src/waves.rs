//! Small-amplitude periodic traveling waves.
//!
//! A wave `u(x, t) = w(k (x - c t))` with `2 pi`-periodic, even profile `w`
//! solves the quadrature
//!
//! ```text
//! M_k w - c w + w^2 = (m(0) - c)^2 b,        M_k cos(n z) = m(k n) cos(n z).
//! ```
//!
//! Profiles are stored as the half spectrum of a cosine series,
//! `w(z) = w_0 + sum_{n >= 1} 2 w_n cos(n z)`, so `w_n` is also the two-sided
//! Fourier coefficient at `+n` and `-n`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::dispersion::{DispersionModel, Family};
use crate::error::{Error, Result};
use crate::roots::{bisect, logspace, sign_changes};

/// Default distance a wave number must keep from every `k_N`.
pub const SIGMA_GUARD: f64 = 1e-6;
/// Default largest harmonic checked for resonance.
pub const SIGMA_N_MAX: usize = 64;
/// Default Fourier truncation for refinement.
pub const DEFAULT_MODES: usize = 32;

const MAX_NEWTON_STEPS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WaveSource {
    Expansion,
    Refined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TravelingWave {
    pub model: DispersionModel,
    /// Carrier wave number (nondimensional).
    pub k: f64,
    /// Amplitude parameter; `w_1 = a / 2` at `b = 0`.
    pub a: f64,
    /// Bernoulli-type constant of the quadrature.
    pub b: f64,
    /// `w_0, w_1, ..., w_N`.
    pub cosine_coeffs: Vec<f64>,
    pub c: f64,
    pub source: WaveSource,
}

impl TravelingWave {
    /// Highest harmonic kept in the representation.
    pub fn modes(&self) -> usize {
        self.cosine_coeffs.len().saturating_sub(1)
    }

    /// Two-sided Fourier coefficient at integer `j`.
    pub fn coeff(&self, j: i64) -> f64 {
        self.cosine_coeffs.get(j.unsigned_abs() as usize).copied().unwrap_or(0.0)
    }

    /// Highest harmonic whose coefficient is not exactly zero.
    pub fn highest_harmonic(&self) -> usize {
        self.cosine_coeffs.iter().rposition(|&w| w != 0.0).unwrap_or(0)
    }

    pub fn profile(&self, z: f64) -> f64 {
        self.cosine_coeffs
            .iter()
            .enumerate()
            .map(|(n, &w)| if n == 0 { w } else { 2.0 * w * (n as f64 * z).cos() })
            .sum()
    }

    /// Right-hand side `(m(0) - c)^2 b` of the quadrature.
    pub fn quadrature_constant(&self) -> f64 {
        let d = self.model.m0() - self.c;
        d * d * self.b
    }
}

/// Resonant wave numbers `k_N`, `2 <= N <= n_max`, where `m(k) = m(N k)`.
///
/// Only capillary-gravity models with `0 < tau < 1/3` have them; every other
/// model returns an empty list.
pub fn resonant_wavenumbers(model: &DispersionModel, n_max: usize) -> Result<Vec<(usize, f64)>> {
    if !has_resonances(model) {
        return Ok(Vec::new());
    }
    let grid = logspace(1e-6, 1e6, 1500);
    (2..=n_max)
        .map(|n| {
            let f = |k: f64| model.value(k) - model.value(n as f64 * k);
            let values: Vec<(f64, f64)> = grid.iter().map(|&k| (k, f(k))).collect();
            let (lo, hi) = sign_changes(&values).first().copied().ok_or_else(|| {
                let probe: Vec<String> = values
                    .iter()
                    .step_by(150)
                    .map(|(k, v)| format!("f({k:.3e})={v:.3e}"))
                    .collect();
                Error::Bracketing(format!("no root of m(k) - m({n}k): {}", probe.join(", ")))
            })?;
            Ok((n, bisect(f, lo, hi, 0.0)?))
        })
        .collect()
}

fn has_resonances(model: &DispersionModel) -> bool {
    model.family == Family::CapillaryGravity && model.tau > 0.0 && model.tau < 1.0 / 3.0 && !model.is_degenerate()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaCheck {
    pub inside: bool,
    /// Distance to the nearest `k_N`, infinite when there is none.
    pub distance: f64,
    pub nearest: Option<(usize, f64)>,
}

/// Whether `k` belongs to the bifurcation set, i.e. stays farther than
/// `guard` from every resonant `k_N` with `N <= n_max`.
pub fn in_sigma(model: &DispersionModel, k: f64, guard: f64, n_max: usize) -> Result<SigmaCheck> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wave number k = {k} must be positive")));
    }
    let nearest = resonant_wavenumbers(model, n_max)?
        .into_iter()
        .min_by(|a, b| (a.1 - k).abs().total_cmp(&(b.1 - k).abs()));
    let distance = nearest.map_or(f64::INFINITY, |(_, kn)| (kn - k).abs());
    Ok(SigmaCheck {
        inside: distance > guard,
        distance,
        nearest,
    })
}

fn require_sigma(model: &DispersionModel, k: f64) -> Result<()> {
    let check = in_sigma(model, k, SIGMA_GUARD, SIGMA_N_MAX)?;
    if let (false, Some((harmonic, resonant_k))) = (check.inside, check.nearest) {
        return Err(Error::Resonance { k, harmonic, resonant_k });
    }
    // long-wave resonance m(k) = m(0) makes the mean-mode correction singular
    if (model.value(k) - model.m0()).abs() < 1e-12 {
        return Err(Error::Resonance { k, harmonic: 0, resonant_k: k });
    }
    Ok(())
}

/// Small-amplitude asymptotic wave, accurate to `O(a (a^2 + b^2))`.
pub fn expansion_wave(model: &DispersionModel, k: f64, a: f64, b: f64) -> Result<TravelingWave> {
    require_sigma(model, k)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("amplitude parameters must be finite".into()));
    }
    let mk = model.value(k);
    let m0 = model.m0();
    let m2k = model.value(2.0 * k);
    let delta = m0 - mk;
    // Constant state and speed at the bifurcation point; the speed satisfies
    // c0 = m(k) + 2 w0, the kernel condition of the linearization about w0.
    let w0 = delta * (b - 3.0 * b * b);
    let c0 = mk + 2.0 * w0;
    let a2 = a * a;
    let coeffs = vec![
        w0 + a2 / (2.0 * (mk - m0)),
        0.5 * a,
        a2 / (4.0 * (mk - m2k)),
    ];
    let c = c0 + a2 * (1.0 / (mk - m0) + 0.5 / (mk - m2k));
    Ok(TravelingWave {
        model: *model,
        k,
        a,
        b,
        cosine_coeffs: coeffs,
        c,
        source: WaveSource::Expansion,
    })
}

/// Galilean shift `w -> w + v`, `c -> c + 2 v`, which maps solutions of the
/// quadrature to solutions with constant `R + (m(0) - c) v - v^2`.
pub fn galilean_shift(wave: &TravelingWave, v: f64) -> Result<TravelingWave> {
    let m0 = wave.model.m0();
    let constant = wave.quadrature_constant() + (m0 - wave.c) * v - v * v;
    let c = wave.c + 2.0 * v;
    let denom = (m0 - c) * (m0 - c);
    let b = if constant == 0.0 {
        0.0
    } else if denom > 0.0 {
        constant / denom
    } else {
        return Err(Error::Domain(format!(
            "shifted speed c = {c} equals m(0); the constant {constant:e} has no b-form"
        )));
    };
    let mut out = wave.clone();
    out.cosine_coeffs[0] += v;
    out.c = c;
    out.b = b;
    Ok(out)
}

/// Max-norm residual of the quadrature on `max(4 N, 64)` equispaced points.
pub fn residual(wave: &TravelingWave) -> f64 {
    let n_pts = (4 * wave.modes()).max(64);
    let symbols: Vec<f64> = (0..wave.cosine_coeffs.len())
        .map(|n| wave.model.value(wave.k * n as f64))
        .collect();
    let rhs = wave.quadrature_constant();
    (0..n_pts)
        .map(|j| {
            let z = 2.0 * std::f64::consts::PI * j as f64 / n_pts as f64;
            let mut w = 0.0;
            let mut mw = 0.0;
            for (n, &wn) in wave.cosine_coeffs.iter().enumerate() {
                let basis = if n == 0 { 1.0 } else { 2.0 * (n as f64 * z).cos() };
                w += wn * basis;
                mw += symbols[n] * wn * basis;
            }
            (mw - wave.c * w + w * w - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// Result of a Newton refinement, with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub wave: TravelingWave,
    pub iterations: usize,
    pub residual: f64,
}

/// Newton–Galerkin solution of the quadrature with `b = 0` on cosine modes
/// `0..=n_modes`, holding `w_1 = a / 2` fixed and solving for `c`.
pub fn refine_wave(seed: &TravelingWave, n_modes: usize, tol: f64) -> Result<TravelingWave> {
    refine_wave_report(seed, n_modes, tol).map(|r| r.wave)
}

pub fn refine_wave_report(seed: &TravelingWave, n_modes: usize, tol: f64) -> Result<Refinement> {
    if seed.b != 0.0 {
        return Err(Error::Domain("refinement is done at b = 0; shift the result afterwards".into()));
    }
    if n_modes < 8 {
        return Err(Error::Domain(format!("refinement needs at least 8 modes, got {n_modes}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let model = seed.model;
    require_sigma(&model, seed.k)?;

    let n = n_modes;
    let mut wave = seed.clone();
    wave.cosine_coeffs.resize(n + 1, 0.0);
    wave.source = WaveSource::Refined;
    if seed.a == 0.0 {
        wave.cosine_coeffs.iter_mut().for_each(|w| *w = 0.0);
        wave.c = model.value(seed.k);
        return Ok(Refinement { wave, iterations: 0, residual: 0.0 });
    }
    wave.cosine_coeffs[1] = 0.5 * seed.a;
    let symbols: Vec<f64> = (0..=n).map(|j| model.value(seed.k * j as f64)).collect();

    let mut res = residual(&wave);
    let mut stalled = 0;
    for iter in 0..MAX_NEWTON_STEPS {
        if res <= tol {
            return Ok(Refinement { wave, iterations: iter, residual: res });
        }
        let w = &wave.cosine_coeffs;
        let c = wave.c;
        let at = |j: i64| -> f64 { w.get(j.unsigned_abs() as usize).copied().unwrap_or(0.0) };

        let mut f = DVector::<f64>::zeros(n + 1);
        let mut jac = DMatrix::<f64>::zeros(n + 1, n + 1);
        for row in 0..=n {
            let r = row as i64;
            let square: f64 = (-(n as i64)..=n as i64).map(|p| at(p) * at(r - p)).sum();
            f[row] = (symbols[row] - c) * w[row] + square;
            // column 1 carries the speed since w_1 is pinned
            jac[(row, 1)] = -w[row];
            jac[(row, 0)] = 2.0 * w[row];
            for col in 2..=n {
                let j = col as i64;
                jac[(row, col)] = 2.0 * (at(r - j) + at(r + j));
            }
            if row != 1 {
                jac[(row, row)] += symbols[row] - c;
            }
        }
        let step = jac
            .lu()
            .solve(&(-f))
            .ok_or(Error::Convergence { iterations: iter, residual: res })?;
        wave.cosine_coeffs[0] += step[0];
        wave.c += step[1];
        for col in 2..=n {
            wave.cosine_coeffs[col] += step[col];
        }
        let new_res = residual(&wave);
        if !new_res.is_finite() || new_res > 1e3 * res.max(tol) {
            return Err(Error::Convergence { iterations: iter + 1, residual: new_res });
        }
        if new_res >= res {
            stalled += 1;
            if stalled >= 3 {
                return Err(Error::Convergence { iterations: iter + 1, residual: new_res });
            }
        } else {
            stalled = 0;
        }
        res = new_res;
    }
    if res <= tol {
        Ok(Refinement { wave, iterations: MAX_NEWTON_STEPS, residual: res })
    } else {
        Err(Error::Convergence { iterations: MAX_NEWTON_STEPS, residual: res })
    }
}
