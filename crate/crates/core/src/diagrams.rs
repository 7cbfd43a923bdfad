//! Stability diagrams: level curves of the mechanism functions.
//!
//! Capillary plane: `x = kd = z`, `y = k sqrt(T/g) = sqrt(tau) z`, so
//! `tau = (y/x)^2`. Vorticity plane: `x = varpi`, `y = z`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dispersion::{Branch, DispersionModel};
use crate::error::{Error, Result};
use crate::roots::{bisect, linspace, sign_changes};
use crate::stability::{benjamin_feir_crossing, delta_mi, mechanism_value, Mechanism, Verdict};

/// Gap, in grid cells, above which chained points start a new branch.
pub const CHAIN_GAP_CELLS: f64 = 3.0;
/// Largest mechanism-function value accepted on a traced curve.
pub const CURVE_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Plane {
    CapillaryPlane,
    VorticityPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    GroupVelExtremum,
    LongShortResonance,
    SecondHarmonic,
    /// `Delta_BF = 0` in the capillary plane.
    BenjaminFeir,
    BFResonancePlus,
    BFResonanceMinus,
    /// Annotation: the ray `tau = 1/3`.
    CriticalTension,
    /// Annotation: the vertical line through the gravity-wave critical `kd`.
    GravityCritical,
}

impl CurveKind {
    pub fn is_annotation(self) -> bool {
        matches!(self, CurveKind::CriticalTension | CurveKind::GravityCritical)
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::GroupVelExtremum => "group-velocity-extremum",
            CurveKind::LongShortResonance => "long-short-resonance",
            CurveKind::SecondHarmonic => "second-harmonic",
            CurveKind::BenjaminFeir => "BF",
            CurveKind::BFResonancePlus => "BF+",
            CurveKind::BFResonanceMinus => "BF-",
            CurveKind::CriticalTension => "tau=1/3",
            CurveKind::GravityCritical => "gravity-critical",
        }
    }

    fn mechanism(self) -> Option<Mechanism> {
        match self {
            CurveKind::GroupVelExtremum => Some(Mechanism::GroupVelocityExtremum),
            CurveKind::LongShortResonance => Some(Mechanism::LongShortResonance),
            CurveKind::SecondHarmonic => Some(Mechanism::SecondHarmonicResonance),
            CurveKind::BenjaminFeir | CurveKind::BFResonancePlus | CurveKind::BFResonanceMinus => {
                Some(Mechanism::BenjaminFeir)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityCurve {
    pub plane: Plane,
    pub mechanism: CurveKind,
    pub points: Vec<(f64, f64)>,
}

impl StabilityCurve {
    /// `y` values where the polyline crosses the vertical line at `x`.
    pub fn y_at(&self, x: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for w in self.points.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x0 == x && x1 == x {
                out.push(y0);
            } else if (x0 - x) * (x1 - x) <= 0.0 && x0 != x1 {
                let t = (x - x0) / (x1 - x0);
                out.push(y0 + t * (y1 - y0));
            }
        }
        if let [(px, py)] = self.points[..] {
            if px == x {
                out.push(py);
            }
        }
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }

    /// Value of the defining mechanism function at each point; empty for annotations.
    pub fn residuals(&self) -> Vec<f64> {
        let Some(mech) = self.mechanism.mechanism() else {
            return Vec::new();
        };
        self.points
            .iter()
            .map(|&(x, y)| match self.mechanism {
                CurveKind::BFResonancePlus => vorticity_bf(Branch::Plus, x, y),
                CurveKind::BFResonanceMinus => vorticity_bf(Branch::Minus, x, y),
                _ => capillary_value(mech, x, y),
            })
            .collect()
    }
}

fn capillary_model(x: f64, y: f64) -> Result<DispersionModel> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("kd = {x} must be positive")));
    }
    DispersionModel::capillary((y / x).powi(2))
}

fn capillary_value(mech: Mechanism, x: f64, y: f64) -> f64 {
    capillary_model(x, y).map_or(f64::NAN, |m| mechanism_value(&m, mech, x))
}

fn vorticity_bf(branch: Branch, varpi: f64, z: f64) -> f64 {
    DispersionModel::vorticity(varpi, branch).map_or(f64::NAN, |m| mechanism_value(&m, Mechanism::BenjaminFeir, z))
}

/// Zero crossings of `f` along every grid column and row, refined by bisection.
fn scan_zero_set(f: &(dyn Fn(f64, f64) -> f64 + Sync), xs: &[f64], ys: &[f64]) -> Result<Vec<(f64, f64)>> {
    let along_columns = xs
        .par_iter()
        .map(|&x| {
            let vals: Vec<(f64, f64)> = ys.iter().map(|&y| (y, f(x, y))).collect();
            sign_changes(&vals)
                .into_iter()
                .map(|(a, b)| bisect(|y| f(x, y), a, b, 0.0).map(|y| (x, y)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let along_rows = ys
        .par_iter()
        .map(|&y| {
            let vals: Vec<(f64, f64)> = xs.iter().map(|&x| (x, f(x, y))).collect();
            sign_changes(&vals)
                .into_iter()
                .map(|(a, b)| bisect(|x| f(x, y), a, b, 0.0).map(|x| (x, y)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pts: Vec<(f64, f64)> = along_columns.into_iter().chain(along_rows).flatten().collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(pts)
}

/// Orders points into branches by nearest-neighbour chaining.
///
/// Distances are measured in grid cells; a branch ends when the nearest
/// unused point is more than `gap` cells away. Each branch grows from both
/// ends so a start in the middle of a curve is harmless.
pub fn chain_points(points: &[(f64, f64)], hx: f64, hy: f64, gap: f64) -> Vec<Vec<(f64, f64)>> {
    let dist = |a: (f64, f64), b: (f64, f64)| ((a.0 - b.0) / hx).hypot((a.1 - b.1) / hy);
    // merge near-duplicates coming from row and column scans
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for &p in points {
        if !pts.iter().rev().take(8).any(|&q| dist(p, q) < 1e-3) {
            pts.push(p);
        }
    }
    let mut used = vec![false; pts.len()];
    let nearest = |from: (f64, f64), used: &[bool]| -> Option<usize> {
        pts.iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, &p)| (i, dist(from, p)))
            .filter(|&(_, d)| d <= gap)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    };
    let mut branches = Vec::new();
    while let Some(start) = used.iter().position(|u| !u) {
        used[start] = true;
        let mut branch = std::collections::VecDeque::from([pts[start]]);
        while let Some(i) = nearest(*branch.back().unwrap(), &used) {
            used[i] = true;
            branch.push_back(pts[i]);
        }
        while let Some(i) = nearest(*branch.front().unwrap(), &used) {
            used[i] = true;
            branch.push_front(pts[i]);
        }
        branches.push(branch.into_iter().collect());
    }
    branches
}

fn check_range(name: &str, (lo, hi): (f64, f64)) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && hi > lo {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} range [{lo}, {hi}] is empty")))
    }
}

fn check_resolution((nx, ny): (usize, usize)) -> Result<()> {
    if nx < 100 || ny < 100 {
        return Err(Error::Domain(format!("resolution {nx}x{ny} must be at least 100 per axis")));
    }
    Ok(())
}

fn trace(
    plane: Plane,
    kind: CurveKind,
    f: &(dyn Fn(f64, f64) -> f64 + Sync),
    xs: &[f64],
    ys: &[f64],
) -> Result<Vec<StabilityCurve>> {
    let hx = xs[1] - xs[0];
    let hy = ys[1] - ys[0];
    let pts = scan_zero_set(f, xs, ys)?;
    Ok(chain_points(&pts, hx, hy, CHAIN_GAP_CELLS)
        .into_iter()
        .map(|points| StabilityCurve { plane, mechanism: kind, points })
        .collect())
}

pub const CAPILLARY_X_RANGE: (f64, f64) = (0.05, 30.0);
pub const CAPILLARY_Y_RANGE: (f64, f64) = (0.0, 2.0);
pub const VORTICITY_X_RANGE: (f64, f64) = (-10.0, 10.0);
pub const VORTICITY_Y_RANGE: (f64, f64) = (0.05, 6.0);

/// Mechanism curves in the `(kd, k sqrt(T/g))` plane, plus the `tau = 1/3`
/// ray and the gravity critical line as annotations.
pub fn capillary_diagram(
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<Vec<StabilityCurve>> {
    check_range("kd", x_range)?;
    check_range("k sqrt(T/g)", y_range)?;
    check_resolution(resolution)?;
    if x_range.0 <= 0.0 || y_range.0 < 0.0 {
        return Err(Error::Domain("capillary-plane ranges must be positive".into()));
    }
    let xs = linspace(x_range.0, x_range.1, resolution.0);
    let ys = linspace(y_range.0, y_range.1, resolution.1);
    let kinds = [
        CurveKind::GroupVelExtremum,
        CurveKind::LongShortResonance,
        CurveKind::SecondHarmonic,
        CurveKind::BenjaminFeir,
    ];
    let mut curves = Vec::new();
    for kind in kinds {
        let mech = kind.mechanism().expect("mechanism curve");
        let f = move |x: f64, y: f64| capillary_value(mech, x, y);
        curves.extend(trace(Plane::CapillaryPlane, kind, &f, &xs, &ys)?);
    }

    let slope = 1.0 / 3f64.sqrt();
    let ray: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| (x, x * slope))
        .filter(|&(_, y)| y >= y_range.0 && y <= y_range.1)
        .collect();
    if !ray.is_empty() {
        curves.push(StabilityCurve {
            plane: Plane::CapillaryPlane,
            mechanism: CurveKind::CriticalTension,
            points: ray,
        });
    }
    if let Some(zc) = benjamin_feir_crossing(&DispersionModel::gravity())? {
        if zc >= x_range.0 && zc <= x_range.1 {
            curves.push(StabilityCurve {
                plane: Plane::CapillaryPlane,
                mechanism: CurveKind::GravityCritical,
                points: vec![(zc, y_range.0), (zc, y_range.1)],
            });
        }
    }
    Ok(curves)
}

/// Zero-level curves of `Delta_BF,+` and `Delta_BF,-` in the `(varpi, kd)` plane.
///
/// The minus curves are the plus curves reflected through `varpi = 0`, and
/// each reflected point is checked against `Delta_BF,-` directly.
pub fn vorticity_diagram(
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<Vec<StabilityCurve>> {
    check_range("varpi", x_range)?;
    check_range("kd", y_range)?;
    check_resolution(resolution)?;
    if y_range.0 <= 0.0 {
        return Err(Error::Domain("kd range must be positive".into()));
    }
    // trace the plus branch on the window and its mirror image
    let lo = x_range.0.min(-x_range.1);
    let hi = x_range.1.max(-x_range.0);
    let xs = linspace(lo, hi, resolution.0);
    let ys = linspace(y_range.0, y_range.1, resolution.1);
    let f = |x: f64, y: f64| vorticity_bf(Branch::Plus, x, y);
    let plus = trace(Plane::VorticityPlane, CurveKind::BFResonancePlus, &f, &xs, &ys)?;

    let mut curves = Vec::new();
    for c in &plus {
        let minus = StabilityCurve {
            plane: Plane::VorticityPlane,
            mechanism: CurveKind::BFResonanceMinus,
            points: c.points.iter().map(|&(x, y)| (-x, y)).collect(),
        };
        if let Some(bad) = minus.residuals().into_iter().find(|r| !(r.abs() <= CURVE_RESIDUAL_TOL)) {
            return Err(Error::Convergence { iterations: 0, residual: bad });
        }
        curves.push(minus);
    }
    let inside = |(x, _): &(f64, f64)| *x >= x_range.0 && *x <= x_range.1;
    let mut out: Vec<StabilityCurve> = plus
        .into_iter()
        .chain(curves)
        .map(|mut c| {
            c.points.retain(inside);
            c
        })
        .filter(|c| !c.points.is_empty())
        .collect();
    out.sort_by_key(|c| c.mechanism == CurveKind::BFResonanceMinus);
    Ok(out)
}

/// Crossing points of two polylines.
pub fn curve_intersections(a: &StabilityCurve, b: &StabilityCurve) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for s in a.points.windows(2) {
        for t in b.points.windows(2) {
            if let Some(p) = segment_intersection((s[0], s[1]), (t[0], t[1])) {
                out.push(p);
            }
        }
    }
    out.dedup_by(|p, q| (p.0 - q.0).hypot(p.1 - q.1) < 1e-12);
    out
}

pub fn segment_intersection(
    (p0, p1): ((f64, f64), (f64, f64)),
    (q0, q1): ((f64, f64), (f64, f64)),
) -> Option<(f64, f64)> {
    let r = (p1.0 - p0.0, p1.1 - p0.1);
    let s = (q1.0 - q0.0, q1.1 - q0.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom == 0.0 {
        return None;
    }
    let d = (q0.0 - p0.0, q0.1 - p0.1);
    let t = (d.0 * s.1 - d.1 * s.0) / denom;
    let u = (d.0 * r.1 - d.1 * r.0) / denom;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then(|| (p0.0 + t * r.0, p0.1 + t * r.1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PointClass {
    Capillary { tau: f64, verdict: Verdict },
    Vorticity { plus: Verdict, minus: Verdict },
}

/// Stability verdict at a diagram point.
pub fn classify_point(plane: Plane, x: f64, y: f64) -> Result<PointClass> {
    match plane {
        Plane::CapillaryPlane => {
            if y < 0.0 {
                return Err(Error::Domain(format!("k sqrt(T/g) = {y} must be >= 0")));
            }
            let model = capillary_model(x, y)?;
            Ok(PointClass::Capillary {
                tau: model.tau,
                verdict: delta_mi(&model, x)?.verdict,
            })
        }
        Plane::VorticityPlane => {
            let verdict = |branch| -> Result<Verdict> { Ok(delta_mi(&DispersionModel::vorticity(x, branch)?, y)?.verdict) };
            Ok(PointClass::Vorticity {
                plus: verdict(Branch::Plus)?,
                minus: verdict(Branch::Minus)?,
            })
        }
    }
}
