//! Benjamin–Feir and modulational-instability indices.
//!
//! For a carrier of nondimensional wave number `z`,
//!
//! ```text
//! Delta_BF(z) = 2 (m(z) - m(2z)) + ((z m)'(z) - m(0))
//! Delta_MI(z) = (z m)''(z) ((z m)'(z) - m(0)) / (m(z) - m(2z)) * Delta_BF(z)
//! ```
//!
//! and a small-amplitude wave is modulationally unstable when `Delta_MI < 0`
//! and stable when `Delta_MI > 0`. Each of the four factors marks a
//! mechanism that can flip the sign: an extremum of the group velocity,
//! long/short wave resonance, second-harmonic resonance, and the
//! dispersion/nonlinearity balance encoded in `Delta_BF`.

use serde::{Deserialize, Serialize};

use crate::dispersion::{Branch, DispersionModel, Family};
use crate::error::{Error, Result};
use crate::roots::{bisect, linspace, logspace, scan_roots, sign_changes};

/// `|Delta_MI|` below this is reported as a boundary, not a verdict.
pub const TOL_BOUNDARY: f64 = 1e-10;

/// `|m(z) - m(2z)|` below this is treated as second-harmonic resonance.
pub const EPS_RESONANCE: f64 = 1e-10;

/// Absolute bracket width at which root bisection stops.
pub const ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Stable,
    Unstable,
    Boundary,
    Degenerate,
}

impl Verdict {
    /// One-letter code used in tables.
    pub fn code(self) -> &'static str {
        match self {
            Verdict::Stable => "S",
            Verdict::Unstable => "U",
            Verdict::Boundary => "B",
            Verdict::Degenerate => "D",
        }
    }
}

/// The four ways the index can change sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mechanism {
    /// `(z m)'' = 0`.
    GroupVelocityExtremum,
    /// `(z m)' = m(0)`.
    LongShortResonance,
    /// `m(z) = m(2z)`.
    SecondHarmonicResonance,
    /// `Delta_BF = 0`.
    BenjaminFeir,
}

impl Mechanism {
    pub const ALL: [Mechanism; 4] = [
        Mechanism::GroupVelocityExtremum,
        Mechanism::LongShortResonance,
        Mechanism::SecondHarmonicResonance,
        Mechanism::BenjaminFeir,
    ];

    /// 1-based label in the customary ordering of mechanisms.
    pub fn number(self) -> u8 {
        match self {
            Mechanism::GroupVelocityExtremum => 1,
            Mechanism::LongShortResonance => 2,
            Mechanism::SecondHarmonicResonance => 3,
            Mechanism::BenjaminFeir => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mechanism::GroupVelocityExtremum => "group-velocity-extremum",
            Mechanism::LongShortResonance => "long-short-resonance",
            Mechanism::SecondHarmonicResonance => "second-harmonic",
            Mechanism::BenjaminFeir => "BF",
        }
    }
}

/// The index and its factors at one wave number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub z: f64,
    pub delta_bf: f64,
    /// `None` when the second-harmonic factor vanishes.
    pub delta_mi: Option<f64>,
    /// `(z m)''`.
    pub factor_group_curvature: f64,
    /// `(z m)' - m(0)`.
    pub factor_longshort: f64,
    /// `m(z) - m(2z)`.
    pub factor_second_harmonic: f64,
    pub verdict: Verdict,
    /// Set when the verdict is `Boundary`: the factor responsible.
    pub mechanism: Option<Mechanism>,
}

/// Value of the function whose zeros define `mech`.
pub fn mechanism_value(model: &DispersionModel, mech: Mechanism, z: f64) -> f64 {
    let jet = model.jet(z);
    match mech {
        Mechanism::GroupVelocityExtremum => 2.0 * jet.d1 + z * jet.d2,
        Mechanism::LongShortResonance => jet.value + z * jet.d1 - model.m0(),
        Mechanism::SecondHarmonicResonance => jet.value - model.value(2.0 * z),
        Mechanism::BenjaminFeir => {
            2.0 * (jet.value - model.value(2.0 * z)) + (jet.value + z * jet.d1 - model.m0())
        }
    }
}

fn check_positive(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("wave number z = {z} must be positive")))
    }
}

/// `Delta_BF(z)`.
pub fn delta_bf(model: &DispersionModel, z: f64) -> Result<f64> {
    check_positive(z)?;
    Ok(mechanism_value(model, Mechanism::BenjaminFeir, z))
}

/// Full index report at `z`.
pub fn delta_mi(model: &DispersionModel, z: f64) -> Result<IndexReport> {
    check_positive(z)?;
    let jet = model.jet(z);
    let group_curvature = 2.0 * jet.d1 + z * jet.d2;
    let longshort = jet.value + z * jet.d1 - model.m0();
    let second_harmonic = jet.value - model.value(2.0 * z);
    let bf = 2.0 * second_harmonic + longshort;

    let mut report = IndexReport {
        z,
        delta_bf: bf,
        delta_mi: None,
        factor_group_curvature: group_curvature,
        factor_longshort: longshort,
        factor_second_harmonic: second_harmonic,
        verdict: Verdict::Boundary,
        mechanism: None,
    };

    if second_harmonic.abs() < EPS_RESONANCE {
        report.mechanism = Some(Mechanism::SecondHarmonicResonance);
        if model.is_degenerate() {
            report.verdict = Verdict::Degenerate;
        }
        return Ok(report);
    }

    let index = group_curvature * longshort / second_harmonic * bf;
    report.delta_mi = Some(index);
    report.verdict = if model.is_degenerate() {
        Verdict::Degenerate
    } else if index < -TOL_BOUNDARY {
        Verdict::Unstable
    } else if index > TOL_BOUNDARY {
        Verdict::Stable
    } else {
        Verdict::Boundary
    };
    if report.verdict == Verdict::Boundary {
        let factors = [
            (Mechanism::GroupVelocityExtremum, group_curvature),
            (Mechanism::LongShortResonance, longshort),
            (Mechanism::SecondHarmonicResonance, second_harmonic),
            (Mechanism::BenjaminFeir, bf),
        ];
        report.mechanism = factors
            .iter()
            .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|f| f.0);
    }
    Ok(report)
}

/// A sign change of one mechanism function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub z: f64,
    pub mechanism: Mechanism,
}

/// Roots of one mechanism function on the given grid of wave numbers.
pub fn mechanism_roots(model: &DispersionModel, mech: Mechanism, grid: &[f64]) -> Result<Vec<f64>> {
    scan_roots(|z| mechanism_value(model, mech, z), grid, ROOT_TOL)
}

/// Roots of all four mechanism functions on a uniform grid of `n_grid`
/// points over `[z_lo, z_hi]`, sorted by wave number.
pub fn critical_wavenumbers(
    model: &DispersionModel,
    z_lo: f64,
    z_hi: f64,
    n_grid: usize,
) -> Result<Vec<CriticalPoint>> {
    if !(z_lo > 0.0 && z_hi > z_lo && z_hi.is_finite()) {
        return Err(Error::Domain(format!("need 0 < z_lo < z_hi, got [{z_lo}, {z_hi}]")));
    }
    if n_grid < 100 {
        return Err(Error::Domain(format!("n_grid = {n_grid} must be at least 100")));
    }
    let grid = linspace(z_lo, z_hi, n_grid);
    let mut out = Vec::new();
    for mech in Mechanism::ALL {
        for z in mechanism_roots(model, mech, &grid)? {
            out.push(CriticalPoint { z, mechanism: mech });
        }
    }
    out.sort_by(|a, b| a.z.total_cmp(&b.z));
    Ok(out)
}

/// Residual of the Wilton-ripple condition `tau z^2 = tanh(z)^2 / (3 - tanh(z)^2)`,
/// which vanishes exactly where `m(z) = m(2z)`.
pub fn wilton_condition(model: &DispersionModel, z: f64) -> Result<f64> {
    check_positive(z)?;
    match model.family {
        Family::Gravity | Family::CapillaryGravity => {
            let th2 = z.tanh().powi(2);
            Ok(model.surface_tension() * z * z - th2 / (3.0 - th2))
        }
        Family::ConstantVorticity => Err(Error::Unsupported(
            "the Wilton condition is stated for the capillary-gravity symbol".into(),
        )),
    }
}

/// Critical wave number of the vorticity model at one vorticity value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VorticityCritical {
    pub varpi: f64,
    /// `None` when no sign change was found below the largest search bound.
    pub z_c: Option<f64>,
}

/// Initial search bound for `z_c`.
pub const VORTICITY_Z_MAX: f64 = 200.0;
/// The search bound is doubled until it exceeds this.
pub const VORTICITY_Z_CAP: f64 = 2.0e5;

/// Zero of `Delta_BF` for the vorticity symbol, one per sample of `varpi`.
pub fn vorticity_critical_curve(branch: Branch, varpi_samples: &[f64]) -> Result<Vec<VorticityCritical>> {
    if varpi_samples.is_empty() {
        return Err(Error::Domain("no vorticity samples given".into()));
    }
    varpi_samples
        .iter()
        .map(|&varpi| {
            let model = DispersionModel::vorticity(varpi, branch)?;
            Ok(VorticityCritical {
                varpi,
                z_c: benjamin_feir_crossing(&model)?,
            })
        })
        .collect()
}

/// First sign change of `Delta_BF` on `(0, Z)`, extending `Z` adaptively.
pub fn benjamin_feir_crossing(model: &DispersionModel) -> Result<Option<f64>> {
    let f = |z: f64| mechanism_value(model, Mechanism::BenjaminFeir, z);
    let z_lo = 1e-3;
    let mut z_hi = VORTICITY_Z_MAX;
    let mut lo = z_lo;
    while z_hi <= VORTICITY_Z_CAP {
        let grid = logspace(lo, z_hi, 2000);
        let values: Vec<(f64, f64)> = grid.iter().map(|&z| (z, f(z))).collect();
        if let Some(&(a, b)) = sign_changes(&values).first() {
            return bisect(f, a, b, ROOT_TOL).map(Some);
        }
        lo = z_hi;
        z_hi *= 2.0;
    }
    Ok(None)
}

/// Stable interval of `s = tau z^2` for capillary-gravity waves at a fixed
/// large wave number, used as a proxy for the deep-water limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeepWaterBand {
    pub z: f64,
    pub lower: f64,
    pub upper: f64,
}

pub const DEEP_WATER_Z: f64 = 50.0;

/// Scans `s` over `s_range` at wave number `z` and returns the endpoints of
/// the widest run of stable verdicts.
pub fn deep_water_band(s_range: (f64, f64), z: f64, n_grid: usize) -> Result<DeepWaterBand> {
    let (s_lo, s_hi) = s_range;
    if !(s_lo > 0.0 && s_hi > s_lo) || n_grid < 10 {
        return Err(Error::Domain(format!("bad s-range [{s_lo}, {s_hi}] or grid {n_grid}")));
    }
    check_positive(z)?;
    let model_at = |s: f64| DispersionModel::capillary(s / (z * z));
    let stable_at = |s: f64| -> Result<bool> { Ok(delta_mi(&model_at(s)?, z)?.verdict == Verdict::Stable) };

    let grid = linspace(s_lo, s_hi, n_grid);
    let flags = grid.iter().map(|&s| stable_at(s)).collect::<Result<Vec<bool>>>()?;

    // widest run of consecutive stable samples
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for (i, &st) in flags.iter().chain(std::iter::once(&false)).enumerate() {
        match (st, start) {
            (true, None) => start = Some(i),
            (false, Some(s0)) => {
                if best.map_or(true, |(a, b)| i - 1 - s0 > b - a) {
                    best = Some((s0, i - 1));
                }
                start = None;
            }
            _ => {}
        }
    }
    let (first, last) = best.ok_or_else(|| Error::Bracketing("no stable samples in s-range".into()))?;
    if first == 0 || last == grid.len() - 1 {
        return Err(Error::Bracketing("stable band touches the end of the s-range".into()));
    }
    // The index changes sign at each endpoint (through zero or through a
    // pole); bisect on the sign of Delta_MI.
    let sign = |s: f64| -> f64 {
        match model_at(s).ok().and_then(|m| delta_mi(&m, z).ok()).and_then(|r| r.delta_mi) {
            Some(v) => v,
            None => 0.0,
        }
    };
    let lower = bisect(sign, grid[first - 1], grid[first], ROOT_TOL)?;
    let upper = bisect(sign, grid[last], grid[last + 1], ROOT_TOL)?;
    Ok(DeepWaterBand { z, lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gravity() -> DispersionModel {
        DispersionModel::gravity()
    }

    #[test]
    fn benjamin_feir_sign_for_gravity() {
        // small-z expansion: Delta_BF ~ z^2 / 2
        let z = 0.1;
        let bf = delta_bf(&gravity(), z).unwrap();
        assert!(bf > 0.0);
        assert!((bf - 0.5 * z * z).abs() < 0.05 * z * z);
        assert!(delta_bf(&gravity(), 2.0).unwrap() < 0.0);
        assert!(delta_bf(&gravity(), 0.0).is_err());
    }

    #[test]
    fn verdicts_for_gravity() {
        assert_eq!(delta_mi(&gravity(), 0.5).unwrap().verdict, Verdict::Stable);
        assert_eq!(delta_mi(&gravity(), 2.0).unwrap().verdict, Verdict::Unstable);
    }

    #[test]
    fn factorization_holds() {
        for model in [gravity(), DispersionModel::capillary(0.1).unwrap(), DispersionModel::vorticity(-2.0, Branch::Minus).unwrap()] {
            for i in 1..100 {
                let z = 0.07 * i as f64;
                let r = delta_mi(&model, z).unwrap();
                let Some(mi) = r.delta_mi else { continue };
                let rebuilt = r.factor_group_curvature * r.factor_longshort / r.factor_second_harmonic * r.delta_bf;
                assert!((mi - rebuilt).abs() <= 1e-12 * mi.abs());
            }
        }
    }

    #[test]
    fn degenerate_surface_tension() {
        let m = DispersionModel::capillary(1.0 / 3.0).unwrap();
        assert_eq!(delta_mi(&m, 1.0).unwrap().verdict, Verdict::Degenerate);
        // eight-digit 1/3 as typed on a command line
        let m = DispersionModel::capillary(0.333_333_33).unwrap();
        assert_eq!(delta_mi(&m, 1.0).unwrap().verdict, Verdict::Degenerate);
        let m = DispersionModel::capillary(0.3333).unwrap();
        assert_ne!(delta_mi(&m, 1.0).unwrap().verdict, Verdict::Degenerate);
    }

    #[test]
    fn second_harmonic_resonance_is_flagged() {
        let m = DispersionModel::capillary(0.1).unwrap();
        let grid = linspace(0.5, 5.0, 1000);
        let z3 = mechanism_roots(&m, Mechanism::SecondHarmonicResonance, &grid).unwrap();
        assert_eq!(z3.len(), 1);
        let r = delta_mi(&m, z3[0]).unwrap();
        assert_eq!(r.verdict, Verdict::Boundary);
        assert_eq!(r.mechanism, Some(Mechanism::SecondHarmonicResonance));
        assert!(r.delta_mi.is_none());
    }

    #[test]
    fn gravity_has_single_benjamin_feir_root() {
        let roots = critical_wavenumbers(&gravity(), 0.1, 10.0, 1000).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].mechanism, Mechanism::BenjaminFeir);
        assert!((roots[0].z - 1.145).abs() < 0.002, "{}", roots[0].z);
    }

    #[test]
    fn strong_tension_has_single_benjamin_feir_root() {
        let m = DispersionModel::capillary(0.4).unwrap();
        let roots = critical_wavenumbers(&m, 0.1, 10.0, 1000).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].mechanism, Mechanism::BenjaminFeir);
    }

    #[test]
    fn weak_tension_alternates() {
        let m = DispersionModel::capillary(0.1).unwrap();
        let roots = critical_wavenumbers(&m, 0.05, 20.0, 4000).unwrap();
        for mech in Mechanism::ALL {
            assert!(roots.iter().any(|r| r.mechanism == mech), "{mech:?} missing");
        }
        // Verdicts differ on the two sides of every simple root.
        let mut edges: Vec<f64> = vec![0.05];
        edges.extend(roots.iter().map(|r| r.z));
        edges.push(20.0);
        let verdicts: Vec<Verdict> = edges
            .windows(2)
            .map(|w| delta_mi(&m, 0.5 * (w[0] + w[1])).unwrap().verdict)
            .collect();
        for w in verdicts.windows(2) {
            assert_ne!(w[0], w[1]);
        }
        assert_eq!(verdicts[0], Verdict::Stable);
    }

    #[test]
    fn critical_wavenumbers_validates_input() {
        assert!(critical_wavenumbers(&gravity(), 0.0, 1.0, 100).is_err());
        assert!(critical_wavenumbers(&gravity(), 1.0, 0.5, 100).is_err());
        assert!(critical_wavenumbers(&gravity(), 0.1, 1.0, 50).is_err());
    }

    #[test]
    fn wilton_root_matches_second_harmonic_root() {
        let m = DispersionModel::capillary(0.1).unwrap();
        let grid = linspace(0.5, 10.0, 500);
        let w = scan_roots(|z| wilton_condition(&m, z).unwrap(), &grid, ROOT_TOL).unwrap();
        let s = mechanism_roots(&m, Mechanism::SecondHarmonicResonance, &grid).unwrap();
        assert_eq!(w.len(), 1);
        assert!((w[0] - s[0]).abs() < 1e-8);
        // deep-water limit: tau z^2 -> 1/2
        let m = DispersionModel::capillary(1e-4).unwrap();
        let grid = logspace(1.0, 1e3, 500);
        let w = scan_roots(|z| wilton_condition(&m, z).unwrap(), &grid, ROOT_TOL).unwrap();
        assert!((1e-4 * w[0] * w[0] - 0.5).abs() < 1e-6);
        for tau in [1.0 / 3.0, 0.5, 1.0] {
            let m = DispersionModel::capillary(tau).unwrap();
            let grid = logspace(1e-3, 1e3, 2000);
            assert!(scan_roots(|z| wilton_condition(&m, z).unwrap(), &grid, ROOT_TOL).unwrap().is_empty());
        }
    }

    #[test]
    fn vorticity_branch_identities() {
        for varpi in [-6.0, -1.0, 0.3, 4.0] {
            let plus = DispersionModel::vorticity(varpi, Branch::Plus).unwrap();
            let minus = DispersionModel::vorticity(varpi, Branch::Minus).unwrap();
            let plus_reflected = DispersionModel::vorticity(-varpi, Branch::Plus).unwrap();
            for i in 1..50 {
                let z = 0.1 * i as f64;
                let a = delta_bf(&minus, z).unwrap();
                let b = delta_bf(&plus_reflected, z).unwrap();
                assert!((a + b).abs() <= 1e-12 * b.abs().max(1.0));
                let mi_minus = delta_mi(&minus, z).unwrap().delta_mi.unwrap();
                let mi_reflected = delta_mi(&plus_reflected, z).unwrap().delta_mi.unwrap();
                assert!((mi_minus - mi_reflected).abs() <= 1e-12 * mi_reflected.abs().max(1.0));
                let _ = delta_mi(&plus, z).unwrap();
            }
        }
    }

    #[test]
    fn critical_curve_limits() {
        let c = vorticity_critical_curve(Branch::Plus, &[0.0, 20.0, -2.0, -5.0]).unwrap();
        let z0 = c[0].z_c.unwrap();
        assert!((z0 - 1.145).abs() < 0.002);
        assert!((c[1].z_c.unwrap() - 0.957).abs() < 0.02 * 0.957);
        assert!(c[2].z_c.unwrap() > z0);
        assert!(c[3].z_c.unwrap() > c[2].z_c.unwrap());
        assert!(vorticity_critical_curve(Branch::Plus, &[]).is_err());
    }

    #[test]
    fn deep_water_band_endpoints() {
        let band = deep_water_band((0.01, 2.0), DEEP_WATER_Z, 400).unwrap();
        let lower = 2.0 / 3f64.sqrt() - 1.0;
        assert!((band.lower - lower).abs() < 0.05 * lower, "{band:?}");
        assert!((band.upper - 0.5).abs() < 0.05 * 0.5, "{band:?}");
        let m = DispersionModel::capillary(0.3 / (50.0 * 50.0)).unwrap();
        assert_eq!(delta_mi(&m, 50.0).unwrap().verdict, Verdict::Stable);
    }
}
