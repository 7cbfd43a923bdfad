//! Phase-speed symbols of the Whitham equation.
//!
//! Everything here is nondimensional: lengths are measured in units of the
//! undisturbed depth `d` and speeds in units of `sqrt(g d)`, so the argument
//! `z` of a symbol is the dimensionless wave number `k d`.
//!
//! Two families are supported:
//!
//! * capillary-gravity, `m(z) = sqrt((1 + tau z^2) tanh(z) / z)`, with the
//!   pure gravity symbol as the special case `tau = 0`;
//! * constant vorticity, `m(z) = varpi tanh(z) / (2 z) +/- sqrt(tanh(z) / z
//!   + varpi^2 tanh(z)^2 / (4 z^2))`.
//!
//! Both are built from `t(z) = tanh(z) / z`. Its closed form loses digits to
//! cancellation at small `z`, so below [`SERIES_THRESHOLD`] `t` and its first
//! two derivatives come from the Maclaurin series instead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this `|z|` the Maclaurin series of `tanh(z)/z` is used.
pub const SERIES_THRESHOLD: f64 = 0.5;

/// `tau` within this distance of 1/3 is treated as the degenerate
/// critical surface tension.
pub const DEGENERATE_TAU_TOL: f64 = 1e-8;

/// Maclaurin coefficients of `tanh(z)/z` in powers of `z^2`.
const TANH_RATIO_SERIES: [f64; 22] = [
    1.0,
    -0.333_333_333_333_333_333_33,
    0.133_333_333_333_333_333_33,
    -0.053_968_253_968_253_968_254,
    0.021_869_488_536_155_202_822,
    -0.008_863_235_529_902_196_568_9,
    0.003_592_128_036_572_481_016_9,
    -0.001_455_834_387_051_318_268_2,
    0.000_590_027_440_945_585_981_38,
    -0.000_239_129_114_243_552_481_49,
    0.000_096_915_379_569_294_503_256,
    -0.000_039_278_323_883_316_834_053,
    0.000_015_918_905_069_328_964_741,
    -6.451_689_215_655_430_763_2e-6,
    2.614_771_151_290_754_554_3e-6,
    -1.059_726_832_010_465_435_1e-6,
    4.294_911_078_273_805_854_8e-7,
    -1.740_661_896_357_164_778e-7,
    7.054_636_946_400_968_325_2e-8,
    -2.859_136_662_305_253_908_3e-8,
    1.158_764_443_279_885_22e-8,
    -4.696_295_398_230_901_628_8e-9,
];

/// Which dispersion relation the model uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gravity,
    CapillaryGravity,
    ConstantVorticity,
}

/// Sign in front of the square root of the vorticity symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// A nondimensional dispersion model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionModel {
    pub family: Family,
    /// `T / (g d^2)`; zero unless the family is capillary-gravity.
    pub tau: f64,
    /// `gamma sqrt(d / g)`; zero unless the family is constant vorticity.
    pub varpi: f64,
    /// Always `Plus` outside the vorticity family.
    pub branch: Branch,
}

/// A symbol value together with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Long-wave (KdV) coefficients: `m(z) = c0 (1 - dispersion z^2) + O(z^4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KdvCoefficients {
    pub c0: f64,
    pub dispersion: f64,
}

impl DispersionModel {
    pub fn gravity() -> Self {
        DispersionModel {
            family: Family::Gravity,
            tau: 0.0,
            varpi: 0.0,
            branch: Branch::Plus,
        }
    }

    pub fn capillary(tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::Domain(format!("surface tension tau = {tau} must be >= 0")));
        }
        Ok(DispersionModel {
            family: Family::CapillaryGravity,
            tau,
            varpi: 0.0,
            branch: Branch::Plus,
        })
    }

    pub fn vorticity(varpi: f64, branch: Branch) -> Result<Self> {
        if !varpi.is_finite() {
            return Err(Error::Domain(format!("vorticity varpi = {varpi} must be finite")));
        }
        Ok(DispersionModel {
            family: Family::ConstantVorticity,
            tau: 0.0,
            varpi,
            branch,
        })
    }

    /// Effective surface tension (zero for gravity and vorticity models).
    pub fn surface_tension(&self) -> f64 {
        match self.family {
            Family::CapillaryGravity => self.tau,
            _ => 0.0,
        }
    }

    /// Critical surface tension `tau = 1/3`, where the long-wave dispersion
    /// vanishes and the index gives no verdict.
    pub fn is_degenerate(&self) -> bool {
        self.family == Family::CapillaryGravity
            && (self.tau - 1.0 / 3.0).abs() <= DEGENERATE_TAU_TOL
    }

    /// `m(0)`, the speed of the limiting long wave.
    pub fn m0(&self) -> f64 {
        match self.family {
            Family::Gravity | Family::CapillaryGravity => 1.0,
            Family::ConstantVorticity => {
                let h = 0.5 * self.varpi;
                h + self.branch.sign() * (1.0 + h * h).sqrt()
            }
        }
    }

    /// `m(|z|)`. Cheaper than [`DispersionModel::jet`] when only the value
    /// is needed; accepts any real `z` through the even extension.
    pub fn value(&self, z: f64) -> f64 {
        let z = z.abs();
        let t = tanh_ratio(z);
        match self.family {
            Family::Gravity | Family::CapillaryGravity => {
                ((1.0 + self.surface_tension() * z * z) * t).sqrt()
            }
            Family::ConstantVorticity => {
                let h = 0.5 * self.varpi;
                h * t + self.branch.sign() * (t + h * h * t * t).sqrt()
            }
        }
    }

    /// `m`, `m'`, `m''` at `z >= 0`.
    pub fn jet(&self, z: f64) -> Jet {
        debug_assert!(z >= 0.0);
        let t = tanh_ratio_jet(z);
        match self.family {
            Family::Gravity | Family::CapillaryGravity => {
                let tau = self.surface_tension();
                let q = 1.0 + tau * z * z;
                let p = q * t.value;
                let p1 = 2.0 * tau * z * t.value + q * t.d1;
                let p2 = 2.0 * tau * t.value + 4.0 * tau * z * t.d1 + q * t.d2;
                sqrt_jet(p, p1, p2)
            }
            Family::ConstantVorticity => {
                let h = 0.5 * self.varpi;
                let h2 = h * h;
                let q = t.value + h2 * t.value * t.value;
                let q1 = t.d1 + 2.0 * h2 * t.value * t.d1;
                let q2 = t.d2 + 2.0 * h2 * (t.d1 * t.d1 + t.value * t.d2);
                let r = sqrt_jet(q, q1, q2);
                let s = self.branch.sign();
                Jet {
                    value: h * t.value + s * r.value,
                    d1: h * t.d1 + s * r.d1,
                    d2: h * t.d2 + s * r.d2,
                }
            }
        }
    }

    /// Phase speed `m(z)` for `z >= 0`.
    pub fn symbol(&self, z: f64) -> Result<f64> {
        check_nonneg(z)?;
        Ok(self.jet(z).value)
    }

    /// `m'(z)` (`order = 1`) or `m''(z)` (`order = 2`).
    pub fn symbol_deriv(&self, z: f64, order: u8) -> Result<f64> {
        check_nonneg(z)?;
        let jet = self.jet(z);
        match order {
            1 => Ok(jet.d1),
            2 => Ok(jet.d2),
            _ => Err(Error::Domain(format!("derivative order {order} not in {{1, 2}}"))),
        }
    }

    /// Group velocity `(z m(z))' = m + z m'`.
    pub fn group_velocity(&self, z: f64) -> Result<f64> {
        check_nonneg(z)?;
        let jet = self.jet(z);
        Ok(jet.value + z * jet.d1)
    }

    /// `(z m(z))'' = 2 m' + z m''`.
    pub fn group_velocity_deriv(&self, z: f64) -> Result<f64> {
        check_nonneg(z)?;
        let jet = self.jet(z);
        Ok(2.0 * jet.d1 + z * jet.d2)
    }

    /// Coefficients of the KdV approximation. Only the capillary-gravity
    /// family (gravity included) has them in closed form.
    pub fn longwave_kdv_coeffs(&self) -> Result<KdvCoefficients> {
        match self.family {
            Family::Gravity | Family::CapillaryGravity => Ok(KdvCoefficients {
                c0: self.m0(),
                dispersion: 0.5 * (1.0 / 3.0 - self.surface_tension()),
            }),
            Family::ConstantVorticity => Err(Error::Unsupported(
                "long-wave coefficients of the vorticity symbol are not available".into(),
            )),
        }
    }
}

impl std::fmt::Display for DispersionModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            Family::Gravity => write!(f, "gravity"),
            Family::CapillaryGravity => write!(f, "capillary(tau={})", self.tau),
            Family::ConstantVorticity => {
                let sign = match self.branch {
                    Branch::Plus => '+',
                    Branch::Minus => '-',
                };
                write!(f, "vorticity(varpi={}, branch={sign})", self.varpi)
            }
        }
    }
}

fn check_nonneg(z: f64) -> Result<()> {
    if z >= 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("symbol argument z = {z} must be finite and >= 0")))
    }
}

/// `sqrt(p)` and its derivatives from those of `p`.
fn sqrt_jet(p: f64, p1: f64, p2: f64) -> Jet {
    let r = p.sqrt();
    Jet {
        value: r,
        d1: p1 / (2.0 * r),
        d2: p2 / (2.0 * r) - p1 * p1 / (4.0 * r * r * r),
    }
}

fn tanh_ratio(z: f64) -> f64 {
    if z < SERIES_THRESHOLD {
        tanh_ratio_series(z).value
    } else {
        z.tanh() / z
    }
}

/// `t(z) = tanh(z)/z` with derivatives, `z >= 0`.
pub(crate) fn tanh_ratio_jet(z: f64) -> Jet {
    if z < SERIES_THRESHOLD {
        tanh_ratio_series(z)
    } else {
        tanh_ratio_closed(z)
    }
}

fn tanh_ratio_series(z: f64) -> Jet {
    let z2 = z * z;
    let mut value = 0.0;
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    // Horner in z^2, highest power first.
    for (j, &c) in TANH_RATIO_SERIES.iter().enumerate().rev() {
        let n = 2.0 * j as f64;
        value = value * z2 + c;
        if j >= 1 {
            d1 = d1 * z2 + n * c;
            d2 = d2 * z2 + n * (n - 1.0) * c;
        }
    }
    // d1 collected coefficients of z^(2j-2) for z^(2j-1); d2 those of z^(2j-2).
    Jet {
        value,
        d1: d1 * z,
        d2,
    }
}

pub(crate) fn tanh_ratio_closed(z: f64) -> Jet {
    let th = z.tanh();
    let ch = z.cosh();
    let s2 = if ch.is_finite() { 1.0 / (ch * ch) } else { 0.0 };
    let zi = 1.0 / z;
    Jet {
        value: th * zi,
        d1: s2 * zi - th * zi * zi,
        d2: -2.0 * s2 * th * zi - 2.0 * s2 * zi * zi + 2.0 * th * zi * zi * zi,
    }
}

/// Raw dimensional parameters before rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionalParams {
    pub g: f64,
    pub d: f64,
    /// Surface tension coefficient per unit density.
    pub surface_tension: f64,
    pub gamma: f64,
}

/// A model together with the scales that turn it back into physical units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nondimensionalized {
    pub model: DispersionModel,
    /// `sqrt(g d)`.
    pub speed_scale: f64,
    /// `d`.
    pub length_scale: f64,
}

pub fn nondimensionalize(
    p: &DimensionalParams,
    family: Family,
    branch: Branch,
) -> Result<Nondimensionalized> {
    if !(p.g > 0.0 && p.g.is_finite()) || !(p.d > 0.0 && p.d.is_finite()) {
        return Err(Error::Domain(format!(
            "gravity g = {} and depth d = {} must be positive",
            p.g, p.d
        )));
    }
    if !(p.surface_tension >= 0.0) {
        return Err(Error::Domain(format!(
            "surface tension T = {} must be >= 0",
            p.surface_tension
        )));
    }
    let model = match family {
        Family::Gravity => DispersionModel::gravity(),
        Family::CapillaryGravity => DispersionModel::capillary(p.surface_tension / (p.g * p.d * p.d))?,
        Family::ConstantVorticity => DispersionModel::vorticity(p.gamma * (p.d / p.g).sqrt(), branch)?,
    };
    Ok(Nondimensionalized {
        model,
        speed_scale: (p.g * p.d).sqrt(),
        length_scale: p.d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    use nalgebra::Complex;

    /// Richardson-extrapolated central difference, test-only oracle.
    fn fd_derivative(f: impl Fn(f64) -> f64, z: f64) -> f64 {
        let h = 1e-2 * z.max(0.05);
        let d = |h: f64| (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h);
        (16.0 * d(h / 2.0) - d(h)) / 15.0
    }

    /// First and second derivatives from the Cauchy integral formula on a
    /// circle of radius 0.2 (trapezoidal rule), test-only oracle. Free of the
    /// cancellation that limits finite differences when m is nearly constant.
    fn cauchy_derivatives(f: impl Fn(Complex<f64>) -> Complex<f64>, z: f64) -> (f64, f64) {
        let r = 0.2;
        let n = 128;
        let mut s1 = Complex::new(0.0, 0.0);
        let mut s2 = Complex::new(0.0, 0.0);
        for j in 0..n {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let e = Complex::new(theta.cos(), theta.sin());
            let v = f(Complex::new(z, 0.0) + e * r);
            s1 += v / e;
            s2 += v / (e * e);
        }
        let d1 = s1.re / (n as f64 * r);
        let d2 = 2.0 * s2.re / (n as f64 * r * r);
        (d1, d2)
    }

    fn complex_symbol(m: &DispersionModel, z: Complex<f64>) -> Complex<f64> {
        let t = z.tanh() / z;
        match m.family {
            Family::ConstantVorticity => {
                let h = 0.5 * m.varpi;
                t * h + (t + t * t * (h * h)).sqrt() * m.branch.sign()
            }
            _ => ((z * z * m.tau + 1.0) * t).sqrt(),
        }
    }

    fn raw_vorticity(z: f64, varpi: f64, sign: f64) -> f64 {
        let t = z.tanh() / z;
        varpi * t / 2.0 + sign * (t + varpi * varpi * t * t / 4.0).sqrt()
    }

    fn models() -> Vec<DispersionModel> {
        let mut out = vec![DispersionModel::gravity()];
        for tau in [0.05, 0.1, 1.0 / 3.0, 0.5, 2.0] {
            out.push(DispersionModel::capillary(tau).unwrap());
        }
        for varpi in [-10.0, -3.0, 0.0, 1.5, 10.0] {
            out.push(DispersionModel::vorticity(varpi, Branch::Plus).unwrap());
            out.push(DispersionModel::vorticity(varpi, Branch::Minus).unwrap());
        }
        out
    }

    #[test]
    fn nondimensionalize_examples() {
        let unit = DimensionalParams { g: 1.0, d: 1.0, surface_tension: 0.0, gamma: 0.0 };
        let out = nondimensionalize(&unit, Family::CapillaryGravity, Branch::Plus).unwrap();
        assert_eq!(out.model.tau, 0.0);
        assert_eq!(out.speed_scale, 1.0);
        assert_eq!(out.length_scale, 1.0);

        let p = DimensionalParams { g: 9.81, d: 1.0, surface_tension: 9.81 / 3.0, gamma: 0.0 };
        let out = nondimensionalize(&p, Family::CapillaryGravity, Branch::Plus).unwrap();
        assert!((out.model.tau - 1.0 / 3.0).abs() < 1e-15);
        assert!(out.model.is_degenerate());

        let p = DimensionalParams { g: 4.0, d: 9.0, surface_tension: 0.0, gamma: 2.0 };
        let out = nondimensionalize(&p, Family::ConstantVorticity, Branch::Plus).unwrap();
        assert!((out.model.varpi - 3.0).abs() < 1e-15);
        assert!((out.speed_scale - 6.0).abs() < 1e-15);

        let bad = DimensionalParams { g: 0.0, d: 1.0, surface_tension: 0.0, gamma: 0.0 };
        assert!(matches!(
            nondimensionalize(&bad, Family::Gravity, Branch::Plus),
            Err(Error::Domain(_))
        ));
        let bad = DimensionalParams { g: 1.0, d: -1.0, surface_tension: 0.0, gamma: 0.0 };
        assert!(nondimensionalize(&bad, Family::Gravity, Branch::Plus).is_err());
    }

    #[test]
    fn symbol_values() {
        let g = DispersionModel::capillary(0.0).unwrap();
        assert_eq!(g.symbol(0.0).unwrap(), 1.0);
        // sqrt(tanh 1) to 20 digits
        assert!((g.symbol(1.0).unwrap() - 0.872_693_620_897_829_7).abs() < 1e-15);
        assert!(g.symbol(-1.0).is_err());

        let v = DispersionModel::vorticity(3.0, Branch::Minus).unwrap();
        let expected = 1.5 - (1.0f64 + 2.25).sqrt();
        assert!((v.symbol(0.0).unwrap() - expected).abs() < 1e-15);
        assert!((v.m0() - expected).abs() < 1e-15);
    }

    #[test]
    fn series_matches_closed_form_near_origin() {
        for &z in &[1e-6, 1e-5, 5e-5, 1e-4] {
            let s = tanh_ratio_series(z);
            let c = tanh_ratio_closed(z);
            assert!((s.value - c.value).abs() < 1e-12, "z = {z}");
        }
        // Both sides of the switch agree on all three components.
        for &z in &[0.45, 0.5, 0.55] {
            let s = tanh_ratio_series(z);
            let c = tanh_ratio_closed(z);
            assert!((s.value - c.value).abs() < 1e-14);
            assert!((s.d1 - c.d1).abs() < 1e-13);
            assert!((s.d2 - c.d2).abs() < 1e-12);
        }
        for m in models() {
            for z in [1e-6f64, 1e-5, 1e-4] {
                let t = z.tanh() / z;
                let closed = match m.family {
                    Family::ConstantVorticity => raw_vorticity(z, m.varpi, m.branch.sign()),
                    _ => ((1.0 + m.tau * z * z) * t).sqrt(),
                };
                assert!((m.symbol(z).unwrap() - closed).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn first_derivative_vanishes_at_origin() {
        for m in models() {
            assert_eq!(m.symbol_deriv(0.0, 1).unwrap(), 0.0);
            assert_eq!(m.group_velocity(0.0).unwrap(), m.m0());
        }
    }

    #[test]
    fn second_derivative_at_origin_matches_long_wave_expansion() {
        for tau in [0.0, 0.1, 0.25, 1.0 / 3.0, 1.0, 3.0] {
            let m = DispersionModel::capillary(tau).unwrap();
            let d2 = m.symbol_deriv(0.0, 2).unwrap();
            assert!((d2 + (1.0 / 3.0 - tau)).abs() < 1e-14, "tau = {tau}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let g = DispersionModel::gravity();
        let fd = fd_derivative(|z| g.symbol(z).unwrap(), 1.0);
        assert!((g.symbol_deriv(1.0, 1).unwrap() - fd).abs() <= 1e-8 * fd.abs());

        let zs: Vec<f64> = (0..=60).map(|i| 0.01 * (5000.0f64).powf(i as f64 / 60.0)).collect();
        for m in models() {
            for &z in &zs {
                let jet = m.jet(z);
                let (c1, c2) = cauchy_derivatives(|x| complex_symbol(&m, x), z);
                let scale1 = jet.d1.abs().max(1e-6 * jet.value.abs());
                let scale2 = jet.d2.abs().max(1e-6 * jet.value.abs());
                assert!((jet.d1 - c1).abs() <= 1e-8 * scale1, "{m} z={z}: {} vs {c1}", jet.d1);
                assert!((jet.d2 - c2).abs() <= 1e-8 * scale2, "{m} z={z}: {} vs {c2}", jet.d2);
            }
        }
    }

    #[test]
    fn group_velocity_product_rule() {
        for m in models() {
            for &z in &[0.3, 1.0, 4.0] {
                let jet = m.jet(z);
                let fd = fd_derivative(|x| x * m.jet(x).value, z);
                assert!((m.group_velocity(z).unwrap() - fd).abs() < 1e-9);
                assert!((m.group_velocity_deriv(z).unwrap() - (2.0 * jet.d1 + z * jet.d2)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn gravity_group_velocity_decreases() {
        let g = DispersionModel::gravity();
        for z in [0.5, 1.0, 2.0] {
            assert!(g.group_velocity_deriv(z).unwrap() < 0.0);
        }
    }

    #[test]
    fn weak_tension_group_velocity_has_one_extremum() {
        let m = DispersionModel::capillary(0.1).unwrap();
        let signs: Vec<bool> = (1..=10_000)
            .map(|i| m.group_velocity_deriv(10.0 * i as f64 / 10_000.0).unwrap() > 0.0)
            .collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(changes, 1);
    }

    #[test]
    fn monotonicity_by_family() {
        let grid: Vec<f64> = (1..=2000).map(|i| 0.01 * i as f64).collect();
        let g = DispersionModel::gravity();
        assert!(grid.iter().all(|&z| g.symbol_deriv(z, 1).unwrap() < 0.0));
        for tau in [1.0 / 3.0 + 1e-3, 0.5, 2.0] {
            let m = DispersionModel::capillary(tau).unwrap();
            assert!(grid.iter().all(|&z| m.symbol_deriv(z, 1).unwrap() > 0.0), "tau = {tau}");
        }
        for tau in [0.05, 0.1, 0.3] {
            let m = DispersionModel::capillary(tau).unwrap();
            let signs: Vec<bool> = grid.iter().map(|&z| m.symbol_deriv(z, 1).unwrap() > 0.0).collect();
            // negative then positive: a single interior minimum
            assert!(!signs[0]);
            assert!(*signs.last().unwrap());
            assert_eq!(signs.windows(2).filter(|w| w[0] != w[1]).count(), 1, "tau = {tau}");
        }
    }

    #[test]
    fn vorticity_branch_reflection() {
        // The minus branch is the plus branch of the reflected vorticity with
        // the opposite sign of propagation.
        for varpi in [-7.0, -1.0, 0.0, 0.5, 4.0] {
            let minus = DispersionModel::vorticity(varpi, Branch::Minus).unwrap();
            let plus = DispersionModel::vorticity(-varpi, Branch::Plus).unwrap();
            for z in [0.0, 0.1, 1.0, 3.0, 30.0] {
                let a = minus.symbol(z).unwrap();
                let b = plus.symbol(z).unwrap();
                assert!((a + b).abs() < 1e-14 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn positive_vorticity_speeds_up_waves() {
        let base = DispersionModel::vorticity(0.0, Branch::Plus).unwrap();
        for varpi in [0.1, 1.0, 5.0] {
            let m = DispersionModel::vorticity(varpi, Branch::Plus).unwrap();
            for i in 1..200 {
                let z = 0.05 * i as f64;
                assert!(m.symbol(z).unwrap() > base.symbol(z).unwrap());
            }
        }
    }

    #[test]
    fn kdv_coefficients() {
        let c = DispersionModel::gravity().longwave_kdv_coeffs().unwrap();
        assert_eq!(c.c0, 1.0);
        assert!((c.dispersion - 1.0 / 6.0).abs() < 1e-16);
        let c = DispersionModel::capillary(1.0 / 3.0).unwrap().longwave_kdv_coeffs().unwrap();
        assert!(c.dispersion.abs() < 1e-16);
        let c = DispersionModel::capillary(1.0).unwrap().longwave_kdv_coeffs().unwrap();
        assert!((c.dispersion + 1.0 / 3.0).abs() < 1e-15);
        assert!(DispersionModel::vorticity(1.0, Branch::Plus)
            .unwrap()
            .longwave_kdv_coeffs()
            .is_err());
        // m(z) - c0 (1 - dispersion z^2) = O(z^4)
        for tau in [0.0, 0.2, 1.0] {
            let m = DispersionModel::capillary(tau).unwrap();
            let c = m.longwave_kdv_coeffs().unwrap();
            for z in [1e-2, 2e-2] {
                let rem = m.symbol(z).unwrap() - c.c0 * (1.0 - c.dispersion * z * z);
                assert!(rem.abs() < z.powi(4));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(DispersionModel::capillary(-0.1).is_err());
        assert!(DispersionModel::vorticity(f64::NAN, Branch::Plus).is_err());
        assert!(DispersionModel::gravity().symbol_deriv(1.0, 3).is_err());
    }
}
