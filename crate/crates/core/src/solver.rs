//! Bohr radii.
//!
//! For `S*(φ)` the radius is `min(r_f, 1/3)` where `r_f` is the root of
//! `H(r) = h(r) + h(-1)`; for `C(φ)` the same with `k` in place of `h`.
//! Positive kernel coefficients make `H` strictly increasing, so the root in
//! `(0, 1/3]` is isolated by plain bisection and polished by a few secant
//! steps. `G_α` has a closed-form radius.

use serde::Serialize;

use crate::error::{BohrError, Result};
use crate::extremal::{build_certified_extremal, eval_h_minus1, ExtremalPair};
use crate::phi::PhiSpec;
use crate::series::DEFAULT_ORDER;

pub const ONE_THIRD: f64 = 1.0 / 3.0;
/// Grid size for the runtime monotonicity check of `H` on `[0, 1/3]`.
pub const MONOTONE_GRID: usize = 200;
/// Upper end `1 - ε` of the diagnostic root search past `1/3`.
pub const FAR_EDGE: f64 = 1.0 - 1e-6;
const MAX_SECANT_STEPS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Starlike,
    Convex,
    BoundaryStarlike,
}

impl ClassKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassKind::Starlike => "starlike",
            ClassKind::Convex => "convex",
            ClassKind::BoundaryStarlike => "boundary_starlike",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BohrResult {
    /// The Bohr radius: `min(root, 1/3)` for `S*(φ)` and `C(φ)`.
    pub radius: f64,
    /// Uncapped root of `H`, if one was located.
    pub root: Option<f64>,
    pub capped: bool,
    /// `|H(root)|` at termination (zero-width for closed forms).
    pub residual: f64,
    pub bracket: (f64, f64),
    pub order_used: usize,
    pub class_kind: ClassKind,
}

fn check_tol(tol: f64) -> Result<()> {
    if (1e-14..=1e-6).contains(&tol) {
        Ok(())
    } else {
        Err(BohrError::param("tol", tol, "1e-14 <= tol <= 1e-6"))
    }
}

/// Radius for `S*(φ)`: root of `h(r) + h(-1)`, capped at 1/3.
pub fn starlike_bohr_radius(spec: &PhiSpec, tol: f64) -> Result<BohrResult> {
    check_tol(tol)?;
    let pair = build_certified_extremal(spec, DEFAULT_ORDER)?;
    let floor = pair.h_minus1();
    solve(
        &|r| Ok(pair.eval_h(r)? + floor),
        tol,
        &pair,
        ClassKind::Starlike,
    )
}

/// Radius for `C(φ)`: root of `k(r) + k(-1)`, capped at 1/3.
pub fn convex_bohr_radius(spec: &PhiSpec, tol: f64) -> Result<BohrResult> {
    check_tol(tol)?;
    let pair = build_certified_extremal(spec, DEFAULT_ORDER)?;
    let floor = pair.k_minus1();
    solve(
        &|r| Ok(pair.eval_k(r)? + floor),
        tol,
        &pair,
        ClassKind::Convex,
    )
}

fn solve(
    gap: &dyn Fn(f64) -> Result<f64>,
    tol: f64,
    pair: &ExtremalPair,
    class_kind: ClassKind,
) -> Result<BohrResult> {
    let h0 = gap(0.0)?;
    if h0 >= 0.0 {
        let h_high = gap(ONE_THIRD)?;
        return Err(BohrError::BracketFailure {
            low: 0.0,
            high: ONE_THIRD,
            h_low: h0,
            h_high,
        });
    }
    assert_increasing(gap, 0.0, ONE_THIRD)?;
    let at_third = gap(ONE_THIRD)?;
    if at_third < 0.0 {
        // Radius is 1/3; the root beyond it is diagnostic only.
        let far = gap(FAR_EDGE)?;
        let (root, residual) = if far > 0.0 {
            let (x, hx) = bracketed_root(gap, ONE_THIRD, FAR_EDGE, at_third, far, tol)?;
            (Some(x), hx.abs())
        } else {
            (None, at_third.abs())
        };
        return Ok(BohrResult {
            radius: ONE_THIRD,
            root,
            capped: true,
            residual,
            bracket: (ONE_THIRD, FAR_EDGE),
            order_used: pair.order(),
            class_kind,
        });
    }
    let (root, hx) = if at_third == 0.0 {
        (ONE_THIRD, 0.0)
    } else {
        bracketed_root(gap, 0.0, ONE_THIRD, h0, at_third, tol)?
    };
    Ok(BohrResult {
        radius: root.min(ONE_THIRD),
        root: Some(root),
        capped: false,
        residual: hx.abs(),
        bracket: (0.0, ONE_THIRD),
        order_used: pair.order(),
        class_kind,
    })
}

fn assert_increasing(gap: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<()> {
    let mut prev = gap(lo)?;
    for i in 1..=MONOTONE_GRID {
        let r = lo + (hi - lo) * i as f64 / MONOTONE_GRID as f64;
        let v = gap(r)?;
        if v <= prev {
            return Err(BohrError::NonMonotone {
                at: lo + (hi - lo) * (i - 1) as f64 / MONOTONE_GRID as f64,
            });
        }
        prev = v;
    }
    Ok(())
}

/// Bisection to bracket width `tol`, then up to five secant steps kept
/// inside the final bracket. Returns the point with the smallest `|f|`.
pub fn bracketed_root(
    f: &dyn Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(BohrError::BracketFailure {
            low: lo,
            high: hi,
            h_low: f_lo,
            h_high: f_hi,
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok((mid, 0.0));
        }
        if fm < 0.0 {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    let mut best = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    let (mut a, mut fa, mut b, mut fb) = (lo, f_lo, hi, f_hi);
    for _ in 0..MAX_SECANT_STEPS {
        if fb == fa {
            break;
        }
        let x = b - fb * (b - a) / (fb - fa);
        if !(x >= lo && x <= hi) {
            break;
        }
        let fx = f(x)?;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 {
            break;
        }
        a = b;
        fa = fb;
        b = x;
        fb = fx;
    }
    Ok(best)
}

/// `r_G = (2^{1/(2(1-α))} - 1)/(2^{1/(2(1-α))} + 1)`, the sharp radius for `G_α`.
pub fn galpha_bohr_radius(alpha: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(BohrError::param("alpha", alpha, "0 <= alpha < 1"));
    }
    let t = 2f64.powf(1.0 / (2.0 * (1.0 - alpha)));
    Ok((t - 1.0) / (t + 1.0))
}

/// [`galpha_bohr_radius`] packaged as a [`BohrResult`]; the residual is
/// `|((1+r)/(1-r))^{2(1-α)} - 2|`.
pub fn galpha_result(alpha: f64) -> Result<BohrResult> {
    let r = galpha_bohr_radius(alpha)?;
    let residual = (((1.0 + r) / (1.0 - r)).powf(2.0 * (1.0 - alpha)) - 2.0).abs();
    Ok(BohrResult {
        radius: r,
        root: Some(r),
        capped: false,
        residual,
        bracket: (r, r),
        order_used: 0,
        class_kind: ClassKind::BoundaryStarlike,
    })
}

/// `h(1/3) + h(-1)` for the starlike class or `k(1/3) + k(-1)` for the
/// convex class. Positive exactly when the uncapped root lies below 1/3.
pub fn gap_at_third(spec: &PhiSpec, class_kind: ClassKind) -> Result<f64> {
    match class_kind {
        ClassKind::Starlike => {
            let floor = eval_h_minus1(spec, DEFAULT_ORDER)?;
            let value = match spec.closed_exponent(ONE_THIRD) {
                Some(e) => ONE_THIRD * e.exp(),
                None => crate::extremal::build_extremal(spec, DEFAULT_ORDER)?.eval_h(ONE_THIRD)?,
            };
            Ok(value + floor)
        }
        ClassKind::Convex => {
            let pair = crate::extremal::build_extremal(spec, DEFAULT_ORDER)?;
            Ok(pair.eval_k(ONE_THIRD)? + pair.k_minus1())
        }
        ClassKind::BoundaryStarlike => Err(BohrError::param(
            "class",
            f64::NAN,
            "threshold scans apply to starlike or convex classes",
        )),
    }
}

/// Scans samples per threshold search; the sign pattern must change once.
pub const SCAN_SAMPLES: usize = 17;

/// Parameter value where `H(1/3)` changes sign, i.e. where the uncapped
/// root crosses 1/3, located by bisection over the parameter.
pub fn threshold_scan(
    family: &(dyn Fn(f64) -> Result<PhiSpec> + Sync),
    range: (f64, f64),
    class_kind: ClassKind,
    tol: f64,
) -> Result<f64> {
    let (lo, hi) = range;
    if !(lo < hi) {
        return Err(BohrError::param("range", hi - lo, "low < high"));
    }
    let gap = |p: f64| -> Result<f64> {
        let spec = family(p)?;
        if !spec.validate_positivity(DEFAULT_ORDER) {
            return Err(BohrError::PositivityRequired(spec.label()));
        }
        gap_at_third(&spec, class_kind)
    };
    let samples: Vec<(f64, f64)> = (0..SCAN_SAMPLES)
        .map(|i| {
            let p = lo + (hi - lo) * i as f64 / (SCAN_SAMPLES - 1) as f64;
            gap(p).map(|g| (p, g))
        })
        .collect::<Result<_>>()?;
    let signs: Vec<bool> = samples.iter().map(|&(_, g)| g > 0.0).collect();
    let changes: Vec<usize> = (1..signs.len())
        .filter(|&i| signs[i] != signs[i - 1])
        .collect();
    match changes.len() {
        0 => return Err(BohrError::NoSignChange { low: lo, high: hi }),
        1 => {}
        _ => {
            let signs: String = signs.iter().map(|&s| if s { '+' } else { '-' }).collect();
            return Err(BohrError::MultipleCrossings { signs });
        }
    }
    let i = changes[0];
    let (mut a, mut ga) = samples[i - 1];
    let (mut b, _) = samples[i];
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = gap(mid)?;
        if (gm > 0.0) == (ga > 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Reading of the exponent in the Janowski threshold relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JanowskiExponent {
    /// `κ = B/(B - A)`
    BOverBMinusA,
    /// `κ = (B - A)/B`
    BMinusAOverB,
}

impl JanowskiExponent {
    pub fn kappa(&self, a: f64, b: f64) -> f64 {
        match self {
            JanowskiExponent::BOverBMinusA => b / (b - a),
            JanowskiExponent::BMinusAOverB => (b - a) / b,
        }
    }
}

/// Candidate threshold `(1 - 3^κ)/(1 + 3^κ)` under the given exponent reading.
pub fn janowski_threshold_candidate(a: f64, b: f64, exponent: JanowskiExponent) -> f64 {
    let t = 3f64.powf(exponent.kappa(a, b));
    (1.0 - t) / (1.0 + t)
}

/// Fixed-point form of `H(1/3) = 0` for the Janowski kernel:
/// `B = 3(1 - 3^κ)/(3 + 3^κ)` with `κ = B/(B - A)`.
///
/// Follows from `(1/3)(1 + B/3)^{(A-B)/B} = (1 - B)^{(A-B)/B}`. The scan's
/// threshold satisfies this identity, while neither reading of
/// [`janowski_threshold_candidate`] vanishes there.
pub fn janowski_threshold_relation(a: f64, b: f64) -> f64 {
    let t = 3f64.powf(JanowskiExponent::BOverBMinusA.kappa(a, b));
    3.0 * (1.0 - t) / (3.0 + t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_range() {
        assert!(starlike_bohr_radius(&PhiSpec::cardioid(), 1e-3).is_err());
        assert!(starlike_bohr_radius(&PhiSpec::cardioid(), 1e-16).is_err());
    }

    #[test]
    fn half_plane_radii() {
        let s = starlike_bohr_radius(&PhiSpec::half_plane(), 1e-12).unwrap();
        assert!(!s.capped);
        assert!((s.radius - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-11);
        assert!(s.residual < 1e-11);
        let c = convex_bohr_radius(&PhiSpec::half_plane(), 1e-12).unwrap();
        assert!((c.radius - ONE_THIRD).abs() < 1e-10);
    }

    #[test]
    fn rational_is_capped() {
        let r = starlike_bohr_radius(&PhiSpec::rational(), 1e-12).unwrap();
        assert!(r.capped);
        assert_eq!(r.radius, ONE_THIRD);
        let root = r.root.unwrap();
        assert!(root > ONE_THIRD);
    }

    #[test]
    fn positivity_refused() {
        let err = starlike_bohr_radius(&PhiSpec::janowski(1.0, 0.5).unwrap(), 1e-12).unwrap_err();
        assert!(matches!(err, BohrError::PositivityRequired(_)));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn galpha_examples() {
        assert_eq!(galpha_bohr_radius(0.5).unwrap(), ONE_THIRD);
        assert!((galpha_bohr_radius(0.0).unwrap() - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!((galpha_bohr_radius(0.75).unwrap() - 0.6).abs() < 1e-15);
        assert!(galpha_bohr_radius(1.0).is_err());
        assert!(galpha_bohr_radius(-0.5).is_err());
    }

    #[test]
    fn root_finder_on_known_function() {
        let f = |x: f64| Ok(x * x - 2.0);
        let (x, fx) = bracketed_root(&f, 0.0, 2.0, -2.0, 2.0, 1e-12).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-12);
        assert!(fx.abs() < 1e-11);
        assert!(bracketed_root(&f, 0.0, 1.0, -2.0, -1.0, 1e-12).is_err());
    }

    #[test]
    fn janowski_relation_at_scan_threshold() {
        let a = 0.5;
        let family = move |b: f64| PhiSpec::janowski(a, b);
        let b_star = threshold_scan(&family, (-1.0, 0.0), ClassKind::Starlike, 1e-12).unwrap();
        assert!((b_star + 0.420136894928).abs() < 1e-9);
        assert!((janowski_threshold_relation(a, b_star) - b_star).abs() < 1e-9);
        for conv in [
            JanowskiExponent::BOverBMinusA,
            JanowskiExponent::BMinusAOverB,
        ] {
            assert!((janowski_threshold_candidate(a, b_star, conv) - b_star).abs() > 0.1);
        }
    }

    #[test]
    fn scan_without_crossing() {
        let family = |b: f64| PhiSpec::janowski(1.0, b);
        let err = threshold_scan(&family, (-1.0, 0.0), ClassKind::Starlike, 1e-10).unwrap_err();
        assert!(matches!(err, BohrError::NoSignChange { .. }));
    }
}
