//! Extremal functions `h` (starlike, `z h'/h = φ`) and `k` (convex, `z k' = h`).
//!
//! `h(z) = z exp(Σ B_n z^n / n)` is built from the kernel coefficients by
//! series exponentiation. Kernels with a closed exponent are evaluated both
//! ways and a disagreement above [`DUAL_PATH_TOL`] is an error. The boundary
//! values `h(-1)` and `k(-1)` are limits along the radius; they come from
//! the closed exponent, from tail-controlled partial sums, or from
//! quadrature along `[-1, 0]`.

use crate::error::{BohrError, Result};
use crate::phi::PhiSpec;
use crate::quadrature::adaptive_simpson;
use crate::series::{TruncatedSeries, MAX_ORDER};

/// Largest tolerated disagreement between closed form and series path.
pub const DUAL_PATH_TOL: f64 = 1e-8;
/// Tail estimate below which a truncated series value is accepted.
pub const SERIES_TAIL_TOL: f64 = 1e-13;

const QUAD_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalPair {
    spec: PhiSpec,
    order: usize,
    h_series: TruncatedSeries,
    k_series: TruncatedSeries,
    h_minus1: f64,
    k_minus1: f64,
}

/// Builds `h`, `k` and their boundary values at the given truncation order.
pub fn build_extremal(spec: &PhiSpec, order: usize) -> Result<ExtremalPair> {
    if order < 2 {
        return Err(BohrError::param("order", order as f64, "order >= 2"));
    }
    let h_series = h_coefficients(spec, order)?;
    let k_series = k_from_h(&h_series);
    let h_minus1 = eval_h_minus1(spec, order)?;
    let k_minus1 = boundary_k(spec, order, Some(&h_series))?;
    Ok(ExtremalPair {
        spec: *spec,
        order,
        h_series,
        k_series,
        h_minus1,
        k_minus1,
    })
}

/// Like [`build_extremal`] but refuses kernels with a negative coefficient.
pub fn build_certified_extremal(spec: &PhiSpec, order: usize) -> Result<ExtremalPair> {
    if !spec.validate_positivity(order) {
        return Err(BohrError::PositivityRequired(spec.label()));
    }
    build_extremal(&spec.certify(order), order)
}

/// `b_n` of `h(z) = z exp(Σ B_n z^n/n)` up to `order`.
pub fn h_coefficients(spec: &PhiSpec, order: usize) -> Result<TruncatedSeries> {
    let phi = spec.phi_coefficients(order)?;
    let phi_minus_one = phi.sub(&TruncatedSeries::one(order));
    Ok(phi_minus_one.integrate_term_over_t()?.exp()?.mul_z())
}

fn k_from_h(h: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries::from_fn(
        h.order(),
        |n| if n == 0 { 0.0 } else { h.coeff(n) / n as f64 },
    )
}

/// `E(x) = ∫_0^x (φ(t) - 1)/t dt` on `[-1, 1)`: closed form when available,
/// adaptive quadrature of the kernel otherwise.
pub fn exponent(spec: &PhiSpec, x: f64) -> f64 {
    spec.closed_exponent(x)
        .unwrap_or_else(|| exponent_by_quadrature(spec, x))
}

fn exponent_by_quadrature(spec: &PhiSpec, x: f64) -> f64 {
    let b1 = spec.phi_coefficients(1).map(|c| c.coeff(1)).unwrap_or(0.0);
    adaptive_simpson(
        |t| {
            if t.abs() < 1e-12 {
                b1
            } else {
                (spec.phi_real(t) - 1.0) / t
            }
        },
        0.0,
        x,
        QUAD_TOL,
    )
}

/// `h(-1) = -exp(Σ (-1)^n B_n / n)`.
///
/// The closed exponent is preferred; the partial sums are computed too,
/// doubling the order up to [`MAX_ORDER`], and must agree when they converge.
/// Kernels with neither a closed form nor a convergent sum fall back to
/// quadrature of the kernel along `[-1, 0]`.
pub fn eval_h_minus1(spec: &PhiSpec, order: usize) -> Result<f64> {
    let series = alternating_exponent_sum(spec, order).map(|s| -s.exp());
    match (spec.closed_exponent(-1.0), series) {
        (Some(e), Ok(s)) => {
            let closed = -e.exp();
            check_dual("h(-1)", closed, s)?;
            Ok(closed)
        }
        (Some(e), Err(_)) => Ok(-e.exp()),
        (None, Ok(s)) => Ok(s),
        (None, Err(_)) => Ok(-exponent_by_quadrature(spec, -1.0).exp()),
    }
}

/// `k(-1) = Σ (-1)^n b_n / n`, or `-∫_0^1 exp(E(-u)) du` when the sum converges too slowly.
pub fn eval_k_minus1(spec: &PhiSpec, order: usize) -> Result<f64> {
    boundary_k(spec, order, None)
}

fn boundary_k(spec: &PhiSpec, order: usize, h: Option<&TruncatedSeries>) -> Result<f64> {
    let mut n = order.max(2);
    let mut series = None;
    while n <= MAX_ORDER {
        let hs = match h {
            Some(hs) if hs.order() == n => hs.clone(),
            _ => h_coefficients(spec, n)?,
        };
        let terms: Vec<f64> = (1..=n).map(|m| sign(m) * hs.coeff(m) / m as f64).collect();
        if let Some(sum) = controlled_sum(&terms) {
            series = Some(sum);
            break;
        }
        if hopeless(&terms, n) {
            break;
        }
        n *= 2;
    }
    let quad = || -adaptive_simpson(|u| exponent(spec, -u).exp(), 0.0, 1.0, 1e-12);
    match series {
        Some(s) if spec.has_closed_form() => {
            check_dual("k(-1)", quad(), s)?;
            Ok(s)
        }
        Some(s) => Ok(s),
        None => Ok(quad()),
    }
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn alternating_exponent_sum(spec: &PhiSpec, order: usize) -> Result<f64> {
    let mut n = order.max(2);
    let mut last_tail = f64::INFINITY;
    while n <= MAX_ORDER {
        let phi = spec.phi_coefficients(n)?;
        let terms: Vec<f64> = (1..=n).map(|m| sign(m) * phi.coeff(m) / m as f64).collect();
        if let Some(sum) = controlled_sum(&terms) {
            return Ok(sum);
        }
        last_tail = tail_bound(&terms);
        if hopeless(&terms, n) {
            break;
        }
        n *= 2;
    }
    Err(BohrError::SlowConvergence {
        order: MAX_ORDER,
        tail: last_tail,
    })
}

/// Whether doubling the order up to [`MAX_ORDER`] cannot bring the trailing
/// terms below [`SERIES_TAIL_TOL`], extrapolating the decay observed
/// between the terms near `n/2` and the last ones.
fn hopeless(terms: &[f64], n: usize) -> bool {
    let window = 8.min(n / 2);
    if window == 0 {
        return false;
    }
    let peak = |t: &[f64]| t.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let last = peak(&terms[terms.len() - window..]);
    let mid = peak(&terms[n / 2 - window..n / 2]);
    if last == 0.0 || mid == 0.0 {
        return false;
    }
    let ratio = last / mid;
    let doublings = (MAX_ORDER / n).max(1).ilog2() as i32;
    ratio >= 1.0 || last * ratio.powi(doublings) > SERIES_TAIL_TOL
}

/// Partial sum of `terms` if its tail bound is below [`SERIES_TAIL_TOL`].
fn controlled_sum(terms: &[f64]) -> Option<f64> {
    if tail_bound(terms) < SERIES_TAIL_TOL {
        // sum small terms first
        Some(terms.iter().rev().sum())
    } else {
        None
    }
}

/// Bound on the remainder of `Σ terms` past the last index.
///
/// No nonzero term among the last four: the series is taken as finite.
/// Alternating signs with nonincreasing magnitudes: the first omitted term
/// is bounded by the last one. Otherwise a geometric bound from the worst
/// per-index ratio among the trailing nonzero terms.
fn tail_bound(terms: &[f64]) -> f64 {
    let n = terms.len();
    let window = 8.min(n);
    let tail: Vec<(usize, f64)> = terms[n - window..]
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, t)| t != 0.0)
        .map(|(i, t)| (n - window + i, t))
        .collect();
    match tail.last() {
        None => return 0.0,
        Some(&(i, _)) if i + 4 < n => return 0.0,
        _ => {}
    }
    if tail.len() < 2 {
        return f64::INFINITY;
    }
    let alternating = tail
        .windows(2)
        .all(|w| w[0].1.signum() != w[1].1.signum() && w[1].1.abs() <= w[0].1.abs());
    let last = tail[tail.len() - 1].1.abs();
    if alternating {
        return last;
    }
    let rho = tail
        .windows(2)
        .map(|w| (w[1].1 / w[0].1).abs().powf(1.0 / (w[1].0 - w[0].0) as f64))
        .fold(0.0_f64, f64::max);
    if rho >= 1.0 {
        f64::INFINITY
    } else {
        last * rho / (1.0 - rho)
    }
}

fn check_dual(what: &str, closed: f64, series: f64) -> Result<()> {
    if (closed - series).abs() > DUAL_PATH_TOL * closed.abs().max(1.0) {
        return Err(BohrError::DualPathMismatch {
            what: what.to_string(),
            closed,
            series,
        });
    }
    Ok(())
}

impl ExtremalPair {
    pub fn spec(&self) -> &PhiSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn h_series(&self) -> &TruncatedSeries {
        &self.h_series
    }

    pub fn k_series(&self) -> &TruncatedSeries {
        &self.k_series
    }

    pub fn h_minus1(&self) -> f64 {
        self.h_minus1
    }

    pub fn k_minus1(&self) -> f64 {
        self.k_minus1
    }

    /// `h(r)` on `(-1, 1)`.
    pub fn eval_h(&self, r: f64) -> Result<f64> {
        check_open_disk(r)?;
        let closed = self.eval_h_closed(r);
        let series = self.eval_h_series(r).ok();
        match (closed, series) {
            (Some(c), Some(s)) => {
                check_dual(&format!("h({r})"), c, s)?;
                Ok(c)
            }
            (Some(c), None) => Ok(c),
            (None, Some(s)) => Ok(s),
            (None, None) => Ok(r * exponent_by_quadrature(&self.spec, r).exp()),
        }
    }

    /// `r exp(E(r))` from the kernel's closed exponent.
    pub fn eval_h_closed(&self, r: f64) -> Option<f64> {
        self.spec.closed_exponent(r).map(|e| r * e.exp())
    }

    /// Series path for `h(r)`. Kernels without a closed form double the
    /// truncation order (up to [`MAX_ORDER`]) until the tail is negligible.
    pub fn eval_h_series(&self, r: f64) -> Result<f64> {
        self.series_value(r, false)
    }

    /// `h'(r)` from the term-wise derivative of the series.
    pub fn eval_h_prime(&self, r: f64) -> Result<f64> {
        check_open_disk(r)?;
        self.h_series.derivative().eval(r, Some(1e-11))
    }

    /// `k(r)` on `(-1, 1)`: series when its tail is negligible, otherwise
    /// `∫_0^r h(t)/t dt` by quadrature.
    pub fn eval_k(&self, r: f64) -> Result<f64> {
        check_open_disk(r)?;
        match self.series_value(r, true) {
            Ok(v) => Ok(v),
            Err(_) => Ok(self.eval_k_quadrature(r)),
        }
    }

    pub fn eval_k_series(&self, r: f64) -> Result<f64> {
        self.series_value(r, true)
    }

    /// `∫_0^r exp(E(t)) dt`, which equals `∫_0^r h(t)/t dt`.
    pub fn eval_k_quadrature(&self, r: f64) -> f64 {
        adaptive_simpson(|t| exponent(&self.spec, t).exp(), 0.0, r, 1e-13)
    }

    fn series_value(&self, r: f64, convex: bool) -> Result<f64> {
        let stored = if convex {
            &self.k_series
        } else {
            &self.h_series
        };
        let first = stored.eval(r, Some(SERIES_TAIL_TOL));
        if first.is_ok() || self.spec.has_closed_form() {
            return first;
        }
        let mut n = self.order * 2;
        let mut err = first.unwrap_err();
        while n <= MAX_ORDER {
            let h = h_coefficients(&self.spec, n)?;
            let s = if convex { k_from_h(&h) } else { h };
            match s.eval(r, Some(SERIES_TAIL_TOL)) {
                Ok(v) => return Ok(v),
                Err(e) => err = e,
            }
            n *= 2;
        }
        Err(err)
    }
}

fn check_open_disk(r: f64) -> Result<()> {
    if r > -1.0 && r < 1.0 {
        Ok(())
    } else {
        Err(BohrError::DomainError {
            value: r,
            domain: "(-1, 1)",
        })
    }
}
