//! Dyadic width certificates and centrality checks for interval unions.
//!
//! The width of a set S under an exponent 0 < ε < 1 is the length of the
//! window maximizing |I ∩ S| / |I|^ε over all standard dyadic windows
//! [k·2^j, (k+1)·2^j] together with the origin-symmetric windows
//! [−2^j, 2^j]; ties break to the coarsest, then leftmost, candidate.
//! Scores are compared exactly: with ε = p/q, r(I₁) > r(I₂) iff
//! m₁^q ℓ₂^p > m₂^q ℓ₁^p, so certificates never depend on rounding. The
//! scan starts at the coarsest window containing the set (anything
//! coarser holds the same mass over a longer window) and descends until
//! min(ℓ, |S|)^q / ℓ^p can no longer beat the best score.
//!
//! A set is central for a claimed width w and constant c when every
//! window holds at most c·(|J|/w)^ε·|S| of the mass and no member point
//! sits farther than c·w from the origin. Arbitrary intervals are covered
//! by two dyadic ones of at most twice the length, so checking the dyadic
//! families bounds the unrestricted constant by a factor 2·2^ε.

use polyalg::{rat, rat_pow, rat_to_f64, rat_to_string, Rational};
use std::collections::BTreeSet;

use crate::{IntervalSet, SetError};

/// Splits the exponent into a small numerator and denominator pair after
/// validating 0 < ε < 1.
fn eps_fraction(epsilon: &Rational) -> Result<(i32, i32), SetError> {
    if *epsilon <= rat(0, 1) || *epsilon >= rat(1, 1) {
        return Err(SetError::BadConfig(format!(
            "the exponent must lie strictly between 0 and 1, got {}",
            rat_to_string(epsilon)
        )));
    }
    use num_traits::ToPrimitive;
    match (epsilon.numer().to_i32(), epsilon.denom().to_i32()) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(SetError::BadConfig(
            "the exponent needs a small numerator and denominator".into(),
        )),
    }
}

fn captured(set: &IntervalSet, ell: &Rational) -> bool {
    let (lo, hi) = set.span().expect("capture scan needs a nonempty set");
    let half = ell / rat(2, 1);
    if *lo >= -half.clone() && *hi <= half {
        return true;
    }
    let k = (lo / ell).floor();
    *hi <= (k + rat(1, 1)) * ell
}

/// The shortest power-of-two window length whose candidate family holds
/// the whole set in one window.
fn capture_length(set: &IntervalSet) -> Rational {
    let mut ell = rat(1, 1);
    while !captured(set, &ell) {
        ell *= rat(2, 1);
    }
    loop {
        let finer = &ell / rat(2, 1);
        if !captured(set, &finer) {
            return ell;
        }
        ell = finer;
    }
}

struct ScanBest {
    /// mass^q / length^p, the exact order statistic for the ratio.
    score: Rational,
    lo: Rational,
    length: Rational,
    mass: Rational,
}

/// Best mass and ratio at one window length.
#[derive(Clone, Debug)]
pub struct ProfileRow {
    pub length: Rational,
    pub mass: Rational,
    /// mass / length^ε.
    pub ratio: f64,
    /// mass against the quarter threshold ¼·length^ε·|S|.
    pub threshold: f64,
}

fn ratio_f64(mass: &Rational, ell: &Rational, eps: f64) -> f64 {
    if mass == &rat(0, 1) {
        return 0.0;
    }
    rat_to_f64(mass) / rat_to_f64(ell).powf(eps)
}

/// Scans coarse to fine for the window maximizing mass^q / length^p,
/// breaking ties toward the coarser then leftmost window, and records the
/// per-scale profile. The stop rule is exact: once ℓ ≤ |S| and
/// ℓ^(q−p) ≤ best score, no finer window can win.
fn scan(set: &IntervalSet, p: i32, q: i32) -> (ScanBest, Vec<ProfileRow>) {
    let eps = f64::from(p) / f64::from(q);
    let measure = set.measure();
    let mut ell = capture_length(set);
    let mut best: Option<ScanBest> = None;
    let mut profile = Vec::new();
    loop {
        let mut los: BTreeSet<Rational> = BTreeSet::new();
        los.insert(-(&ell / rat(2, 1)));
        for (part_lo, part_hi) in set.parts() {
            let mut k = (part_lo / &ell).floor();
            while &k * &ell < *part_hi {
                los.insert(&k * &ell);
                k += rat(1, 1);
            }
        }
        let mut row_mass = rat(0, 1);
        let mut row_lo = None;
        for lo in los {
            let hi = &lo + &ell;
            let mass = set.mass_in(&lo, &hi);
            if mass > row_mass {
                row_mass = mass;
                row_lo = Some(lo);
            }
        }
        if let Some(lo) = row_lo {
            let score = rat_pow(&row_mass, q) / rat_pow(&ell, p);
            if best.as_ref().is_none_or(|b| score > b.score) {
                best = Some(ScanBest { score, lo, length: ell.clone(), mass: row_mass.clone() });
            }
        }
        profile.push(ProfileRow {
            length: ell.clone(),
            ratio: ratio_f64(&row_mass, &ell, eps),
            threshold: 4.0 * ratio_f64(&row_mass, &ell, eps) / rat_to_f64(&measure),
            mass: row_mass,
        });
        if let Some(b) = &best {
            if ell <= measure && rat_pow(&ell, q - p) <= b.score {
                break;
            }
        }
        ell /= rat(2, 1);
    }
    (best.expect("the capturing window has positive mass"), profile)
}

/// Width certificate: the maximizing window, its mass, and the scan
/// profile.
#[derive(Clone, Debug)]
pub struct WidthReport {
    /// Length of the maximizing window.
    pub width: Rational,
    pub interval: (Rational, Rational),
    /// Mass of the set inside the window.
    pub mass: Rational,
    /// The maximized |I ∩ S| / |I|^ε.
    pub ratio: f64,
    /// Window mass against the quarter threshold ¼|I|^ε|S|.
    pub threshold_value: f64,
    /// Per-scale bests, coarse to fine.
    pub profile: Vec<ProfileRow>,
}

pub fn width_of(set: &IntervalSet, epsilon: &Rational) -> Result<WidthReport, SetError> {
    let (p, q) = eps_fraction(epsilon)?;
    if set.is_empty() {
        return Err(SetError::EmptySet);
    }
    let eps = f64::from(p) / f64::from(q);
    let measure = set.measure();
    let (top, profile) = scan(set, p, q);
    let hi = &top.lo + &top.length;
    Ok(WidthReport {
        ratio: ratio_f64(&top.mass, &top.length, eps),
        threshold_value: 4.0 * ratio_f64(&top.mass, &top.length, eps) / rat_to_f64(&measure),
        width: top.length,
        interval: (top.lo, hi),
        mass: top.mass,
        profile,
    })
}

/// Outcome of a centrality check against a claimed width.
#[derive(Clone, Debug)]
pub struct CentralityReport {
    pub central: bool,
    /// The largest observed |J ∩ S| / ((|J|/w)^ε |S|).
    pub worst_ratio: f64,
    pub worst_interval: (Rational, Rational),
}

/// Checks |J ∩ S| ≤ constant·(|J|/width)^ε·|S| over the dyadic window
/// families and that every member point sits within constant·width of
/// the origin. The comparison at the worst window is exact.
pub fn is_central(
    set: &IntervalSet,
    width: &Rational,
    epsilon: &Rational,
    constant: &Rational,
) -> Result<CentralityReport, SetError> {
    let (p, q) = eps_fraction(epsilon)?;
    if set.is_empty() {
        return Err(SetError::EmptySet);
    }
    if *width <= rat(0, 1) {
        return Err(SetError::BadConfig("the claimed width must be positive".into()));
    }
    if *constant < rat(1, 1) {
        return Err(SetError::BadConfig(
            "the concentration constant must be at least 1".into(),
        ));
    }
    let limit = constant * width;
    let farthest = set.max_abs().expect("nonempty set has a farthest point");
    if farthest > limit {
        return Err(SetError::Escapes {
            farthest: rat_to_string(&farthest),
            limit: rat_to_string(&limit),
        });
    }
    let measure = set.measure();
    let (worst, _) = scan(set, p, q);
    let central =
        &worst.score * rat_pow(width, p) <= rat_pow(constant, q) * rat_pow(&measure, q);
    let eps = f64::from(p) / f64::from(q);
    let worst_ratio = ratio_f64(&worst.mass, &worst.length, eps) * rat_to_f64(width).powf(eps)
        / rat_to_f64(&measure);
    let hi = &worst.lo + &worst.length;
    Ok(CentralityReport { central, worst_ratio, worst_interval: (worst.lo, hi) })
}

/// Checks the subset corollary w_sub ≤ 2·c^(1+1/ε)·w_sup for two sets
/// certified with the same constant c and exponent ε = p/q; the test runs
/// as (w_sub / (2c·w_sup))^p ≤ c^q in exact arithmetic.
pub fn width_monotonicity_holds(
    w_sub: &Rational,
    w_sup: &Rational,
    constant: &Rational,
    epsilon: &Rational,
) -> Result<bool, SetError> {
    let (p, q) = eps_fraction(epsilon)?;
    if *w_sub <= rat(0, 1) || *w_sup <= rat(0, 1) || *constant < rat(1, 1) {
        return Err(SetError::BadConfig(
            "widths must be positive and the constant at least 1".into(),
        ));
    }
    let lhs = w_sub / (rat(2, 1) * constant * w_sup);
    Ok(rat_pow(&lhs, p) <= rat_pow(constant, q))
}

/// An interval union certified central: it lives in [−ambient, ambient],
/// every point sits within constant·width of the origin, and no dyadic
/// window concentrates more than constant·(|J|/width)^ε of the measure.
#[derive(Clone, Debug)]
pub struct CentralSet {
    set: IntervalSet,
    ambient: Rational,
    epsilon: Rational,
    constant: Rational,
    width: Rational,
    interval: (Rational, Rational),
}

impl CentralSet {
    /// Certifies the set at its own computed width.
    pub fn new(
        set: IntervalSet,
        ambient: Rational,
        epsilon: Rational,
        constant: Rational,
    ) -> Result<CentralSet, SetError> {
        if ambient <= rat(0, 1) {
            return Err(SetError::BadConfig("the ambient half-width must be positive".into()));
        }
        let report = width_of(&set, &epsilon)?;
        let farthest = set.max_abs().expect("nonempty after width computation");
        if farthest > ambient {
            return Err(SetError::Escapes {
                farthest: rat_to_string(&farthest),
                limit: rat_to_string(&ambient),
            });
        }
        let check = is_central(&set, &report.width, &epsilon, &constant)?;
        if !check.central {
            return Err(SetError::NotCentral {
                worst_ratio: check.worst_ratio,
                constant: rat_to_f64(&constant),
            });
        }
        Ok(CentralSet {
            set,
            ambient,
            epsilon,
            constant,
            width: report.width,
            interval: report.interval,
        })
    }

    pub fn set(&self) -> &IntervalSet {
        &self.set
    }

    pub fn ambient(&self) -> &Rational {
        &self.ambient
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn width(&self) -> &Rational {
        &self.width
    }

    pub fn interval(&self) -> &(Rational, Rational) {
        &self.interval
    }

    pub fn measure(&self) -> Rational {
        self.set.measure()
    }
}
