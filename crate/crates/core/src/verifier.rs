//! Sampling oracles for the class inequalities.
//!
//! Members of `S*(φ)` are generated from Schwarz functions `ω` through
//! `z f'/f = φ(ω(z))`; convex members as `f = ∫ g/t` for sampled `g`; members
//! of `G_α` through `G = (1 - z)^{2(1-α)} s(z)/z` with `s ∈ S*(α)`. Only
//! Schwarz functions whose sup-norm is certified by `Σ|ω_n| ≤ 1` are used.
//!
//! The distance `d(f(0), ∂f(𝔻))` is never computed; every Bohr check
//! compares against the lower bounds `-h(-1)`, `-k(-1)` and `1`, which is
//! the sufficient chain that makes the radius valid.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{BohrError, Result};
use crate::extremal::{build_certified_extremal, ExtremalPair};
use crate::phi::PhiSpec;
use crate::quadrature::adaptive_simpson;
use crate::series::{TruncatedSeries, DEFAULT_ORDER, MAX_ORDER};
use crate::solver::{convex_bohr_radius, galpha_bohr_radius, starlike_bohr_radius, ONE_THIRD};

pub const DEFAULT_SEED: u64 = 0x42;
pub const DEFAULT_SAMPLES: usize = 200;

/// Points per circle in [`check_growth`].
pub const GROWTH_POINTS: usize = 64;
/// Radii used by [`check_growth`] in the report runners.
pub const GROWTH_GRID: [f64; 5] = [0.1, 0.25, ONE_THIRD, 0.5, 0.75];
const GROWTH_TAIL: f64 = 1e-9;
const MAX_POLY_DEGREE: usize = 6;

/// A Schwarz function `ω` with `ω(0) = 0` and a certified `‖ω‖_∞ ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum SchwarzSpec {
    Identity,
    /// `ω(z) = c z` with real `|c| ≤ 1`.
    ScaledRotation {
        factor: f64,
    },
    /// `ω(z) = Σ_{n≥1} c_n z^n`; `coeffs[0]` must be 0 and `Σ|c_n| ≤ 1`.
    Polynomial {
        coeffs: Vec<f64>,
    },
}

impl SchwarzSpec {
    pub fn zero() -> Self {
        SchwarzSpec::ScaledRotation { factor: 0.0 }
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Result<Self> {
        let w = SchwarzSpec::Polynomial { coeffs };
        w.certify()?;
        Ok(w)
    }

    /// Checks `ω(0) = 0` and the coefficient-sum bound.
    pub fn certify(&self) -> Result<()> {
        match self {
            SchwarzSpec::Identity => Ok(()),
            SchwarzSpec::ScaledRotation { factor } => {
                if factor.is_finite() && factor.abs() <= 1.0 {
                    Ok(())
                } else {
                    Err(BohrError::UncertifiedSchwarz(format!(
                        "|c| = {} > 1",
                        factor.abs()
                    )))
                }
            }
            SchwarzSpec::Polynomial { coeffs } => {
                if coeffs.first().copied().unwrap_or(0.0) != 0.0 {
                    return Err(BohrError::UncertifiedSchwarz("omega(0) != 0".into()));
                }
                let mass: f64 = coeffs.iter().map(|c| c.abs()).sum();
                if !(mass <= 1.0 + 1e-12) {
                    return Err(BohrError::UncertifiedSchwarz(format!(
                        "sum |omega_n| = {mass} > 1"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn to_series(&self, order: usize) -> Result<TruncatedSeries> {
        self.certify()?;
        Ok(match self {
            SchwarzSpec::Identity => TruncatedSeries::identity(order),
            SchwarzSpec::ScaledRotation { factor } => TruncatedSeries::monomial(order, 1, *factor),
            SchwarzSpec::Polynomial { coeffs } => {
                TruncatedSeries::from_fn(order, |n| coeffs.get(n).copied().unwrap_or(0.0))
            }
        })
    }

    /// Random polynomial of degree 1..=6: uniform coefficients rescaled to a
    /// uniform total mass in `(0, 1]`, or exactly 1 a quarter of the time.
    pub fn random(rng: &mut impl Rng) -> Self {
        let degree = rng.random_range(1..=MAX_POLY_DEGREE);
        let mut coeffs: Vec<f64> = (0..=degree)
            .map(|n| {
                if n == 0 {
                    0.0
                } else {
                    rng.random_range(-1.0..1.0)
                }
            })
            .collect();
        let mass: f64 = coeffs.iter().map(|c| c.abs()).sum();
        let target = if rng.random_bool(0.25) {
            1.0
        } else {
            rng.random_range(0.0..1.0)
        };
        if mass > 0.0 {
            let k = target / mass;
            coeffs.iter_mut().for_each(|c| *c *= k);
        }
        // rescaling can overshoot by an ulp
        let mass: f64 = coeffs.iter().map(|c| c.abs()).sum();
        if mass > 1.0 {
            coeffs.iter_mut().for_each(|c| *c /= mass);
        }
        SchwarzSpec::Polynomial { coeffs }
    }
}

/// Deterministic per-sample generator: stream `index` of the seeded ChaCha8.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Schwarz function for sample `index`: identity, zero and `-z` first, random after.
pub fn schwarz_for_index(seed: u64, index: usize) -> SchwarzSpec {
    match index {
        0 => SchwarzSpec::Identity,
        1 => SchwarzSpec::zero(),
        2 => SchwarzSpec::ScaledRotation { factor: -1.0 },
        _ => SchwarzSpec::random(&mut sample_rng(seed, index)),
    }
}

/// Solves `z f' = f · φ(ω(z))` with `f = z + a_2 z² + ...`:
/// `a_n = (1/(n-1)) Σ_{j=1}^{n-1} a_j p_{n-j}` where `φ∘ω = Σ p_n z^n`.
pub fn sample_starlike(
    spec: &PhiSpec,
    omega: &SchwarzSpec,
    order: usize,
) -> Result<TruncatedSeries> {
    if order < 2 {
        return Err(BohrError::param("order", order as f64, "order >= 2"));
    }
    let w = omega.to_series(order)?;
    let p = spec.phi_coefficients(order)?.compose(&w)?;
    let mut a = vec![0.0; order + 1];
    a[1] = 1.0;
    for n in 2..=order {
        let s: f64 = (1..n).map(|j| a[j] * p.coeff(n - j)).sum();
        a[n] = s / (n - 1) as f64;
    }
    TruncatedSeries::new(a)
}

/// Convex member `f = ∫_0^z g(t)/t dt` for the starlike sample `g`.
pub fn sample_convex(spec: &PhiSpec, omega: &SchwarzSpec, order: usize) -> Result<TruncatedSeries> {
    let g = sample_starlike(spec, omega, order)?;
    Ok(TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            0.0
        } else {
            g.coeff(n) / n as f64
        }
    }))
}

fn majorant_at(f: &TruncatedSeries, r: f64) -> Result<f64> {
    f.majorant().eval(r, Some(1e-12))
}

/// `-h(-1) - M_f(r)` for the sampled `f ∈ S*(φ)`; nonnegative up to the
/// starlike Bohr radius.
pub fn check_bohr_starlike(
    pair: &ExtremalPair,
    omega: &SchwarzSpec,
    radius: f64,
    order: usize,
) -> Result<f64> {
    let f = sample_starlike(pair.spec(), omega, order)?;
    Ok(-pair.h_minus1() - majorant_at(&f, radius)?)
}

/// `-k(-1) - M_f(r)` for the sampled `f ∈ C(φ)`.
pub fn check_bohr_convex(
    pair: &ExtremalPair,
    omega: &SchwarzSpec,
    radius: f64,
    order: usize,
) -> Result<f64> {
    let f = sample_convex(pair.spec(), omega, order)?;
    Ok(-pair.k_minus1() - majorant_at(&f, radius)?)
}

/// `M_f(r) - M_{f∘ω}(r)` for `r ≤ 1/3`.
pub fn check_subordination_majorant(
    f: &TruncatedSeries,
    omega: &SchwarzSpec,
    r: f64,
) -> Result<f64> {
    if !(0.0..=ONE_THIRD).contains(&r) {
        return Err(BohrError::DomainError {
            value: r,
            domain: "[0, 1/3]",
        });
    }
    let g = f.compose(&omega.to_series(f.order())?)?;
    Ok(f.majorant().eval(r, None)? - g.majorant().eval(r, None)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthMargin {
    pub r: f64,
    /// `min |f| + h(-r)` over the circle.
    pub lower: f64,
    /// `h(r) - max |f|` over the circle.
    pub upper: f64,
}

impl GrowthMargin {
    pub fn worst(&self) -> f64 {
        self.lower.min(self.upper)
    }
}

/// Growth bounds `-h(-r) ≤ |f(z)| ≤ h(r)` on circles `|z| = r`, sampled at
/// [`GROWTH_POINTS`] equispaced points. The truncation order is doubled
/// from the pair's order until the tail estimate is below `1e-9`.
pub fn check_growth(
    pair: &ExtremalPair,
    omega: &SchwarzSpec,
    r_grid: &[f64],
) -> Result<Vec<GrowthMargin>> {
    let r_max = r_grid.iter().copied().fold(0.0, f64::max);
    if !(r_max <= 0.9) || r_grid.iter().any(|&r| !(r > 0.0)) {
        return Err(BohrError::DomainError {
            value: r_max,
            domain: "(0, 0.9]",
        });
    }
    let f = adaptive_sample(
        |n| sample_starlike(pair.spec(), omega, n),
        pair.order(),
        r_max,
    )?;
    r_grid
        .iter()
        .map(|&r| {
            let (lo, hi) = circle_extremes(&f, r);
            Ok(GrowthMargin {
                r,
                lower: lo + pair.eval_h(-r)?,
                upper: pair.eval_h(r)? - hi,
            })
        })
        .collect()
}

/// Convex growth bounds `-k(-r) ≤ |f(z)| ≤ k(r)`.
pub fn check_growth_convex(
    pair: &ExtremalPair,
    omega: &SchwarzSpec,
    r_grid: &[f64],
) -> Result<Vec<GrowthMargin>> {
    let r_max = r_grid.iter().copied().fold(0.0, f64::max);
    if !(r_max <= 0.9) || r_grid.iter().any(|&r| !(r > 0.0)) {
        return Err(BohrError::DomainError {
            value: r_max,
            domain: "(0, 0.9]",
        });
    }
    let f = adaptive_sample(
        |n| sample_convex(pair.spec(), omega, n),
        pair.order(),
        r_max,
    )?;
    r_grid
        .iter()
        .map(|&r| {
            let (lo, hi) = circle_extremes(&f, r);
            Ok(GrowthMargin {
                r,
                lower: lo + pair.eval_k(-r)?,
                upper: pair.eval_k(r)? - hi,
            })
        })
        .collect()
}

fn adaptive_sample(
    build: impl Fn(usize) -> Result<TruncatedSeries>,
    start: usize,
    r: f64,
) -> Result<TruncatedSeries> {
    let mut n = start.max(8);
    loop {
        let f = build(n)?;
        let tail = f.tail_estimate(r);
        if tail < GROWTH_TAIL {
            return Ok(f);
        }
        if n >= MAX_ORDER {
            return Err(BohrError::TailTooLarge {
                r,
                tail,
                bound: GROWTH_TAIL,
            });
        }
        n = (n * 2).min(MAX_ORDER);
    }
}

fn circle_extremes(f: &TruncatedSeries, r: f64) -> (f64, f64) {
    (0..GROWTH_POINTS)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / GROWTH_POINTS as f64;
            f.eval_complex(Complex64::from_polar(r, theta)).norm()
        })
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
}

/// `(1/(n-1)!) Π_{k=2}^{n} (k - 2α)`, the sharp bound on `|a_n|` over `S*(α)`.
pub fn order_alpha_bound(alpha: f64, n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, k| {
        acc * (k as f64 - 2.0 * alpha) / (k - 1) as f64
    })
}

/// Relative margins `(bound_n - |a_n|)/bound_n` for `n = 2..=order`, with
/// `f ∈ S*(α)` sampled from the kernel `(1 + (1-2α)z)/(1 - z)`.
pub fn check_coefficient_bounds_order_alpha(
    alpha: f64,
    omega: &SchwarzSpec,
    order: usize,
) -> Result<Vec<f64>> {
    let spec = PhiSpec::starlike_of_order(alpha)?;
    let f = sample_starlike(&spec, omega, order)?;
    Ok((2..=order)
        .map(|n| {
            let bound = order_alpha_bound(alpha, n);
            (bound - f.coeff(n).abs()) / bound
        })
        .collect())
}

/// Coefficients of `(1 - z)^β` by `c_{n+1} = c_n (n - β)/(n + 1)`.
pub fn binomial_series(beta: f64, order: usize) -> TruncatedSeries {
    let mut c = vec![0.0; order + 1];
    c[0] = 1.0;
    for n in 0..order {
        c[n + 1] = c[n] * (n as f64 - beta) / (n + 1) as f64;
    }
    TruncatedSeries::from_fn(order, |n| c[n])
}

/// Builds `G = (1 - z)^{2(1-α)} s(z)/z ∈ G_α` from `s ∈ S*(α)`.
pub fn sample_galpha(alpha: f64, s_omega: &SchwarzSpec, order: usize) -> Result<TruncatedSeries> {
    let spec = PhiSpec::starlike_of_order(alpha)?;
    let s = sample_starlike(&spec, s_omega, order + 1)?;
    let s_over_z = s.div_z()?;
    Ok(binomial_series(2.0 * (1.0 - alpha), order).mul(&s_over_z))
}

/// `1 - Σ_{n≥1} |d_n| r^n` for a sampled `G ∈ G_α`; nonnegative for
/// `r ≤ r_G`. The order is doubled until the tail at `r` is below `1e-12`.
pub fn check_galpha(alpha: f64, s_omega: &SchwarzSpec, r: f64, order: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(BohrError::DomainError {
            value: r,
            domain: "[0, 1)",
        });
    }
    let mut n = order.max(8);
    loop {
        let g = sample_galpha(alpha, s_omega, n)?;
        let tail = g.tail_estimate(r);
        if tail < 1e-12 {
            let m = g.majorant().eval(r, None)?;
            return Ok(1.0 - (m - g.coeff(0)));
        }
        if n >= MAX_ORDER {
            return Err(BohrError::TailTooLarge {
                r,
                tail,
                bound: 1e-12,
            });
        }
        n = (n * 2).min(MAX_ORDER);
    }
}

/// `|M_f(r) - ∫_0^r M_g(t)/t dt|` for `g ∈ S*(φ)` and `z f' = g`, with the
/// integral done by quadrature.
pub fn check_integral_link(
    spec: &PhiSpec,
    omega: &SchwarzSpec,
    r: f64,
    order: usize,
) -> Result<f64> {
    let g = sample_starlike(spec, omega, order)?;
    let f = TruncatedSeries::from_fn(order, |n| if n == 0 { 0.0 } else { g.coeff(n) / n as f64 });
    let mg_over_t = g.majorant().div_z()?;
    let integral = adaptive_simpson(
        |t| mg_over_t.eval(t, None).unwrap_or(f64::NAN),
        0.0,
        r,
        1e-13,
    );
    Ok((majorant_at(&f, r)? - integral).abs())
}

/// `M_f(r) M_g(r) - M_{fg}(r)`.
pub fn check_submultiplicative(f: &TruncatedSeries, g: &TruncatedSeries, r: f64) -> Result<f64> {
    let fg = f.mul(g);
    Ok(f.majorant().eval(r, None)? * g.majorant().eval(r, None)? - fg.majorant().eval(r, None)?)
}

/// Random coefficients in `[-1, 1]`.
pub fn random_series(rng: &mut impl Rng, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |_| rng.random_range(-1.0..=1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Minimum over samples of (right side - left side).
    pub worst_margin: f64,
    /// A sample fails when its margin is below `-tolerance`.
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<CheckSummary>,
    pub seed: u64,
    pub order: usize,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub order: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            order: DEFAULT_ORDER,
        }
    }
}

/// Evaluates `margin(i)` for every sample index in parallel and reduces in
/// index order, so the summary does not depend on scheduling.
fn run_check(
    name: &str,
    samples: usize,
    tolerance: f64,
    margin: impl Fn(usize) -> Result<f64> + Sync,
) -> Result<CheckSummary> {
    let margins: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(&margin)
        .collect::<Result<Vec<_>>>()?;
    let failures = margins.iter().filter(|&&m| !(m >= -tolerance)).count();
    let worst_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(CheckSummary {
        name: name.to_string(),
        samples,
        failures,
        worst_margin,
        tolerance,
    })
}

/// All `S*(φ)` / `C(φ)` checks for one kernel.
pub fn verify_kernel(spec: &PhiSpec, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let order = cfg.order.max(8);
    let pair = build_certified_extremal(spec, order)?;
    let spec = *pair.spec();
    let star = starlike_bohr_radius(&spec, 1e-12)?;
    let conv = convex_bohr_radius(&spec, 1e-12)?;
    let seed = cfg.seed;
    let n = cfg.samples;
    let omega = |i: usize| schwarz_for_index(seed, i);

    let mut checks = Vec::new();
    checks.push(run_check("extremal_agreement", 1, 1e-11, |_| {
        let f = sample_starlike(&spec, &SchwarzSpec::Identity, order)?;
        let worst = (0..=order)
            .map(|m| {
                (f.coeff(m) - pair.h_series().coeff(m)).abs()
                    / pair.h_series().coeff(m).abs().max(1.0)
            })
            .fold(0.0, f64::max);
        Ok(-worst)
    })?);
    checks.push(run_check("bohr_starlike", n, 1e-10, |i| {
        check_bohr_starlike(&pair, &omega(i), star.radius, order)
    })?);
    checks.push(run_check("bohr_convex", n, 1e-10, |i| {
        check_bohr_convex(&pair, &omega(i), conv.radius, order)
    })?);
    checks.push(run_check("growth", n, 1e-9, |i| {
        let m = check_growth(&pair, &omega(i), &GROWTH_GRID)?;
        Ok(m.iter()
            .map(GrowthMargin::worst)
            .fold(f64::INFINITY, f64::min))
    })?);
    checks.push(run_check("growth_convex", n, 1e-9, |i| {
        let m = check_growth_convex(&pair, &omega(i), &GROWTH_GRID)?;
        Ok(m.iter()
            .map(GrowthMargin::worst)
            .fold(f64::INFINITY, f64::min))
    })?);
    checks.push(run_check("subordination_majorant", n, 1e-12, |i| {
        let mut rng = sample_rng(seed ^ 0x5eed, i);
        let f = random_series(&mut rng, 32);
        check_subordination_majorant(&f, &omega(i), ONE_THIRD)
    })?);
    checks.push(run_check("integral_link", n, 1e-9, |i| {
        Ok(-check_integral_link(&spec, &omega(i), 0.5, order)?)
    })?);
    checks.push(run_check("majorant_submultiplicative", n, 1e-12, |i| {
        let mut rng = sample_rng(seed ^ 0x3a7, i);
        let f = random_series(&mut rng, 24);
        let g = random_series(&mut rng, 24);
        [0.1, 0.25, ONE_THIRD]
            .iter()
            .map(|&r| check_submultiplicative(&f, &g, r))
            .try_fold(f64::INFINITY, |m, v| v.map(|v| m.min(v)))
    })?);
    Ok(VerificationReport {
        subject: spec.label(),
        checks,
        seed,
        order,
    })
}

/// Checks for `G_α` and the coefficient bounds of `S*(α)`.
pub fn verify_galpha(alpha: f64, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let r_g = galpha_bohr_radius(alpha)?;
    let order = cfg.order.max(8);
    let seed = cfg.seed;
    let n = cfg.samples;
    let omega = |i: usize| schwarz_for_index(seed, i);
    let checks = vec![
        run_check("galpha_bohr", n, 1e-10, |i| {
            check_galpha(alpha, &omega(i), r_g, order)
        })?,
        run_check("coefficient_bounds_order_alpha", n, 1e-10, |i| {
            let m = check_coefficient_bounds_order_alpha(alpha, &omega(i), 16)?;
            Ok(m.into_iter().fold(f64::INFINITY, f64::min))
        })?,
    ];
    Ok(VerificationReport {
        subject: format!("galpha(alpha={alpha})"),
        checks,
        seed,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_extremal;

    #[test]
    fn schwarz_certification() {
        assert!(SchwarzSpec::polynomial(vec![0.0, 0.5, -0.5]).is_ok());
        assert!(SchwarzSpec::polynomial(vec![0.0, 0.7, 0.7]).is_err());
        assert!(SchwarzSpec::polynomial(vec![0.1, 0.5]).is_err());
        assert!(SchwarzSpec::ScaledRotation { factor: 1.5 }
            .certify()
            .is_err());
        let err = sample_starlike(
            &PhiSpec::cardioid(),
            &SchwarzSpec::Polynomial {
                coeffs: vec![0.0, 2.0],
            },
            8,
        )
        .unwrap_err();
        assert!(matches!(err, BohrError::UncertifiedSchwarz(_)));
        let mut rng = sample_rng(7, 3);
        for _ in 0..100 {
            SchwarzSpec::random(&mut rng).certify().unwrap();
        }
    }

    #[test]
    fn identity_reproduces_extremal() {
        let spec = PhiSpec::cardioid();
        let f = sample_starlike(&spec, &SchwarzSpec::Identity, 32).unwrap();
        let pair = build_extremal(&spec, 32).unwrap();
        for n in 0..=32 {
            assert!((f.coeff(n) - pair.h_series().coeff(n)).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_omega_gives_identity_map() {
        let f = sample_starlike(&PhiSpec::half_plane(), &SchwarzSpec::zero(), 10).unwrap();
        assert_eq!(f, TruncatedSeries::identity(10));
    }

    #[test]
    fn half_plane_scaled_recursion() {
        // φ(ω) = (1 + z/2)/(1 - z/2) = 1 + z + z²/2 + ...; a_2 = p_1 = 1,
        // a_3 = (a_1 p_2 + a_2 p_1)/2 = (1/2 + 1)/2
        let f = sample_starlike(
            &PhiSpec::half_plane(),
            &SchwarzSpec::ScaledRotation { factor: 0.5 },
            6,
        )
        .unwrap();
        assert!((f.coeff(2) - 1.0).abs() < 1e-15);
        assert!((f.coeff(3) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn bohr_margins() {
        let pair = build_extremal(&PhiSpec::half_plane(), 64).unwrap();
        let r = 3.0 - 2.0 * 2f64.sqrt();
        let eq = check_bohr_starlike(&pair, &SchwarzSpec::Identity, r, 64).unwrap();
        assert!(eq.abs() < 1e-12);
        let id = check_bohr_starlike(&pair, &SchwarzSpec::zero(), 0.2, 64).unwrap();
        assert!((id - (0.25 - 0.2)).abs() < 1e-15);
    }

    #[test]
    fn subordination_examples() {
        let koebe = TruncatedSeries::from_fn(64, |n| n as f64);
        assert_eq!(
            check_subordination_majorant(&koebe, &SchwarzSpec::Identity, ONE_THIRD).unwrap(),
            0.0
        );
        let m = check_subordination_majorant(
            &koebe,
            &SchwarzSpec::ScaledRotation { factor: 0.7 },
            ONE_THIRD,
        )
        .unwrap();
        assert!(m > 0.0);
        assert!(check_subordination_majorant(&koebe, &SchwarzSpec::Identity, 0.5).is_err());
    }

    #[test]
    fn growth_for_koebe_bounds() {
        let pair = build_extremal(&PhiSpec::half_plane(), 64).unwrap();
        let id = check_growth(&pair, &SchwarzSpec::Identity, &[0.5]).unwrap();
        assert!(id[0].upper.abs() < 1e-12);
        assert!(id[0].lower.abs() < 1e-12);
        let zero = check_growth(&pair, &SchwarzSpec::zero(), &[0.5]).unwrap();
        assert!((zero[0].upper - (2.0 - 0.5)).abs() < 1e-12);
        assert!((zero[0].lower - (0.5 - 0.5 / 2.25)).abs() < 1e-12);
        assert!(check_growth(&pair, &SchwarzSpec::Identity, &[0.95]).is_err());
    }

    #[test]
    fn order_alpha_bound_matches_binomial() {
        for &alpha in &[0.0, 0.5, 0.25] {
            let beta = 2.0 * (1.0 - alpha);
            // z/(1-z)^β has a_n = coefficient n-1 of (1-z)^{-β}
            let ext = binomial_series(-beta, 16);
            for n in 2..=16 {
                let b = order_alpha_bound(alpha, n);
                assert!(
                    (b - ext.coeff(n - 1)).abs() <= 1e-12 * b,
                    "alpha {alpha} n {n}"
                );
            }
        }
        assert_eq!(order_alpha_bound(0.0, 7), 7.0);
        assert_eq!(order_alpha_bound(0.5, 9), 1.0);
    }

    #[test]
    fn galpha_examples() {
        // α = 1/2 with ω = -z: G = (1-z)/(1+z), Σ|d_n| 3^-n = 1 at r = 1/3
        let m = check_galpha(
            0.5,
            &SchwarzSpec::ScaledRotation { factor: -1.0 },
            ONE_THIRD,
            64,
        )
        .unwrap();
        assert!(m.abs() < 1e-12);
        // ω = identity gives s = z/(1-z)^β and G ≡ 1
        let g = sample_galpha(0.3, &SchwarzSpec::Identity, 32).unwrap();
        assert!(g.coeffs()[1..].iter().all(|d| d.abs() < 1e-13));
        // ω = 0: G = (1-z)^β; β = 2 gives 1 - 2z + z²
        let m0 = check_galpha(0.0, &SchwarzSpec::zero(), 0.1, 16).unwrap();
        assert!((m0 - (1.0 - 0.2 - 0.01)).abs() < 1e-15);
    }

    #[test]
    fn report_is_deterministic() {
        let cfg = VerifyConfig {
            seed: 9,
            samples: 12,
            order: 32,
        };
        let a = verify_kernel(&PhiSpec::cardioid(), &cfg).unwrap();
        let b = verify_kernel(&PhiSpec::cardioid(), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{a:?}");
    }
}
