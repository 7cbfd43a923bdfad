//! Reference cases shared by the acceptance run and its companion checks.

use whitham_mi::stability::{critical_wavenumbers, delta_mi};
use whitham_mi::{Branch, DispersionModel, Verdict};

pub struct Case {
    pub model: DispersionModel,
    pub k: f64,
}

/// Sixteen (model, k) cases: gravity, one k per interval of tau = 0.1, and
/// both sides of the critical value for tau = 0.5 and varpi = +-3.
pub fn oracle_cases() -> Result<Vec<Case>, String> {
    let mut cases: Vec<Case> = [0.5, 0.8, 1.5, 2.0]
        .iter()
        .map(|&k| Case { model: DispersionModel::gravity(), k })
        .collect();

    // one k per stable/unstable interval of tau = 0.1
    let weak = DispersionModel::capillary(0.1).unwrap();
    let picks = [0.5, 1.3, 2.0, 3.0, 8.0, 30.0];
    let roots: Vec<f64> = critical_wavenumbers(&weak, 0.05, 60.0, 60_000)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| c.z)
        .collect();
    let mut edges = vec![0.0];
    edges.extend(&roots);
    edges.push(f64::INFINITY);
    for w in edges.windows(2) {
        let inside: Vec<f64> = picks.iter().copied().filter(|&k| k > w[0] && k < w[1]).collect();
        if inside.len() != 1 {
            return Err(format!("interval ({}, {}) holds picks {inside:?}", w[0], w[1]));
        }
    }
    cases.extend(picks.iter().map(|&k| Case { model: weak, k }));

    let strong = DispersionModel::capillary(0.5).unwrap();
    cases.extend([2.0, 5.0].iter().map(|&k| Case { model: strong, k }));
    for (varpi, ks) in [(3.0, [0.7, 3.0]), (-3.0, [1.5, 3.0])] {
        let model = DispersionModel::vorticity(varpi, Branch::Plus).unwrap();
        cases.extend(ks.iter().map(|&k| Case { model, k }));
    }
    // each side of the critical value must actually be represented
    for pair in cases[10..].chunks(2) {
        let v: Vec<Verdict> = pair.iter().map(|c| delta_mi(&c.model, c.k).unwrap().verdict).collect();
        if !(v.contains(&Verdict::Stable) && v.contains(&Verdict::Unstable)) {
            return Err(format!("{}: verdicts {v:?} do not straddle the critical value", pair[0].model));
        }
    }
    Ok(cases)
}
