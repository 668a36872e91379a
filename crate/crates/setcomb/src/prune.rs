//! Polynomial sublevel pruning on central sets.
//!
//! Removes from a central set of width w the sublevel region
//! {t : |P(t)| ≤ w^(m+2d)} for a degree-d polynomial satisfying the
//! derivative hypothesis |P^(j)(0)| ≥ w^m for some j ≤ d. Band edges are
//! roots of P ∓ τ, isolated and refined to brackets far narrower than any
//! grid cell; bands take the outer bracket ends, so every kept point
//! satisfies |P| > τ and the extra slack removed around each edge stays
//! below 2^-levels of the ambient window.

use num_traits::Signed;
use polyalg::{rat, rat_pow, rat_to_string, Rational};

use crate::{CentralSet, IntervalSet, SetError, UniPoly};

#[derive(Clone, Debug)]
pub struct PruneConfig {
    /// Budget for the sup-norm bound Σ|aᵢ|·Cⁱ over the ambient window.
    pub norm_budget: Rational,
    /// Bisection levels for the band-edge brackets.
    pub refine_levels: u32,
}

impl Default for PruneConfig {
    fn default() -> Self {
        PruneConfig { norm_budget: rat(1000, 1), refine_levels: 80 }
    }
}

#[derive(Clone, Debug)]
pub struct PruneReport {
    pub kept: IntervalSet,
    /// |kept| / |S|, exact.
    pub ratio: Rational,
    /// Removed sublevel bands, merged and clipped to the ambient window.
    pub bands: Vec<(Rational, Rational)>,
    /// Smallest derivative order j with |P^(j)(0)| ≥ w^m.
    pub hypothesis_order: u32,
    /// The sublevel threshold τ = w^(m+2d).
    pub threshold: Rational,
}

pub fn prune_polynomial(
    poly: &UniPoly,
    set: &CentralSet,
    m: u32,
    config: &PruneConfig,
) -> Result<PruneReport, SetError> {
    let width = set.width();
    let ambient = set.ambient();
    let d = poly.degree() as u32;
    let exponent = i32::try_from(u64::from(m) + 2 * u64::from(d))
        .map_err(|_| SetError::BadConfig("the threshold exponent is too large".into()))?;
    let mut bound = rat(0, 1);
    let mut window_pow = rat(1, 1);
    for c in poly.coeffs() {
        bound += c.abs() * &window_pow;
        window_pow *= ambient;
    }
    if bound > config.norm_budget {
        return Err(SetError::NormBudget {
            bound: rat_to_string(&bound),
            budget: rat_to_string(&config.norm_budget),
        });
    }
    let target = rat_pow(width, i32::try_from(m).expect("m fits after the exponent check"));
    let origin = rat(0, 1);
    let mut derivative = poly.clone();
    let mut order = None;
    for j in 0..=d {
        if derivative.eval(&origin).abs() >= target {
            order = Some(j);
            break;
        }
        derivative = derivative.derivative();
    }
    let Some(order) = order else {
        return Err(SetError::HypothesisFailed { degree: d, m });
    };
    let tau = rat_pow(width, exponent);
    let win_lo = -ambient.clone();
    let win_hi = ambient.clone();
    let brackets = if d == 0 {
        Vec::new()
    } else {
        let lower = poly.add_constant(&-tau.clone());
        let upper = poly.add_constant(&tau);
        let mut levels = config.refine_levels.max(1);
        loop {
            let mut all = lower.roots_in(&win_lo, &win_hi, levels)?;
            all.extend(upper.roots_in(&win_lo, &win_hi, levels)?);
            all.sort_by(|x, y| x.0.cmp(&y.0));
            if all.windows(2).all(|pair| pair[0].1 <= pair[1].0) {
                break all;
            }
            if levels >= config.refine_levels.max(1) * 4 {
                return Err(SetError::RootSeparation);
            }
            levels *= 2;
        }
    };
    let mut removed = Vec::new();
    let mut cursor = win_lo.clone();
    for (blo, bhi) in &brackets {
        if cursor < *blo {
            let mid = (&cursor + blo) / rat(2, 1);
            if poly.eval(&mid).abs() <= tau {
                removed.push((cursor.clone(), blo.clone()));
            }
        }
        removed.push((blo.clone(), bhi.clone()));
        cursor = bhi.clone();
    }
    if cursor < win_hi {
        let mid = (&cursor + &win_hi) / rat(2, 1);
        if poly.eval(&mid).abs() <= tau {
            removed.push((cursor, win_hi.clone()));
        }
    }
    let clipped = IntervalSet::new(removed).intersect(&win_lo, &win_hi);
    let kept = set.set().subtract(clipped.parts());
    let ratio = kept.measure() / set.measure();
    Ok(PruneReport {
        kept,
        ratio,
        bands: clipped.parts().to_vec(),
        hypothesis_order: order,
        threshold: tau,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyalg::rat_to_f64;

    fn quarter_set() -> CentralSet {
        let s = IntervalSet::uniform(rat(-1, 4), rat(1, 4));
        CentralSet::new(s, rat(1, 1), rat(1, 2), rat(4, 1)).unwrap()
    }

    #[test]
    fn a_unit_constant_keeps_everything() {
        let set = quarter_set();
        let report =
            prune_polynomial(&UniPoly::constant(rat(1, 1)), &set, 1, &PruneConfig::default())
                .unwrap();
        assert_eq!(report.ratio, rat(1, 1));
        assert!(report.bands.is_empty());
        assert_eq!(report.hypothesis_order, 0);
        assert_eq!(report.kept.measure(), set.measure());
    }

    #[test]
    fn the_identity_removes_an_exact_origin_band() {
        let set = quarter_set();
        let poly = UniPoly::parse("t").unwrap();
        let report = prune_polynomial(&poly, &set, 1, &PruneConfig::default()).unwrap();
        assert_eq!(report.threshold, rat(1, 8));
        assert_eq!(report.hypothesis_order, 1);
        assert_eq!(report.bands, vec![(rat(-1, 8), rat(1, 8))]);
        assert_eq!(report.ratio, rat(1, 2));
        assert_eq!(
            report.kept.parts(),
            &[(rat(-1, 4), rat(-1, 8)), (rat(1, 8), rat(1, 4))]
        );
    }

    #[test]
    fn a_quadratic_loses_two_bands_at_its_roots() {
        let set = quarter_set();
        let poly = UniPoly::parse("t^2 - 1/16").unwrap();
        let report = prune_polynomial(&poly, &set, 4, &PruneConfig::default()).unwrap();
        assert_eq!(report.threshold, rat_pow(&rat(1, 2), 8));
        assert_eq!(report.bands.len(), 2);
        let inner = (15.0f64 / 256.0).sqrt();
        let outer = (17.0f64 / 256.0).sqrt();
        let (lo, hi) = &report.bands[1];
        assert!((rat_to_f64(lo) - inner).abs() < 1e-9);
        assert!((rat_to_f64(hi) - outer).abs() < 1e-9);
        let expected = 1.0 - 4.0 * (outer - inner);
        assert!((rat_to_f64(&report.ratio) - expected).abs() < 1e-9);
    }

    #[test]
    fn a_constant_at_the_threshold_removes_the_window() {
        let set = quarter_set();
        let report =
            prune_polynomial(&UniPoly::constant(rat(1, 2)), &set, 1, &PruneConfig::default())
                .unwrap();
        assert!(report.kept.is_empty());
        assert_eq!(report.ratio, rat(0, 1));
    }

    #[test]
    fn weak_derivatives_fail_the_hypothesis() {
        let set = quarter_set();
        let poly = UniPoly::parse("1/1024 * t").unwrap();
        assert_eq!(
            prune_polynomial(&poly, &set, 1, &PruneConfig::default()).unwrap_err(),
            SetError::HypothesisFailed { degree: 1, m: 1 }
        );
    }

    #[test]
    fn oversized_coefficients_exceed_the_budget() {
        let set = quarter_set();
        let poly = UniPoly::parse("2000 * t").unwrap();
        assert!(matches!(
            prune_polynomial(&poly, &set, 1, &PruneConfig::default()),
            Err(SetError::NormBudget { .. })
        ));
    }
}
