//! Truncated power series with real coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0..=c_N` and represents
//! `Σ c_n z^n` modulo `z^{N+1}`. Binary operations between series of
//! different orders are exact to the smaller order.

use num_complex::Complex64;

use crate::error::{BohrError, Result};

/// Truncation order used when nothing else is requested.
pub const DEFAULT_ORDER: usize = 64;
/// Largest order the adaptive evaluators will grow to.
pub const MAX_ORDER: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    /// Wraps a coefficient vector; rejects empty or non-finite input.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(BohrError::InvalidSeries("no coefficients".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(BohrError::InvalidSeries(format!(
                "coefficient {i} is {}",
                coeffs[i]
            )));
        }
        Ok(Self { coeffs })
    }

    /// Coefficients `f(0), .., f(order)`. The closure must return finite values.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> f64) -> Self {
        let coeffs: Vec<f64> = (0..=order).map(f).collect();
        debug_assert!(coeffs.iter().all(|c| c.is_finite()));
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 1.0)
    }

    /// The identity map `z`, as a series of the given order (≥ 1).
    pub fn identity(order: usize) -> Self {
        Self::monomial(order, 1, 1.0)
    }

    pub fn monomial(order: usize, power: usize, coeff: f64) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Coefficient `n`, or zero past the truncation order.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// Drops (or zero-pads) to the given order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_fn(order, |n| self.coeff(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| self.coeffs[n] + other.coeffs[n])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| self.coeffs[n] - other.coeffs[n])
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::from_fn(self.order(), |n| k * self.coeffs[n])
    }

    pub fn mul(&self, other: &Self) -> Self {
        cauchy_mul(self, other)
    }

    /// `f(ω(z))` for `ω(0) = 0`, truncated at `min(order(f), order(ω))`.
    ///
    /// Horner's scheme in series arithmetic; zero coefficients of `ω` are
    /// skipped, so composing with a low-degree polynomial is cheap.
    pub fn compose(&self, omega: &Self) -> Result<Self> {
        if omega.coeffs[0] != 0.0 {
            return Err(BohrError::NonzeroConstantTerm(omega.coeffs[0]));
        }
        let order = self.order().min(omega.order());
        let support: Vec<(usize, f64)> = omega.coeffs[..=order]
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0.0)
            .collect();
        let mut acc = vec![0.0; order + 1];
        let mut next = vec![0.0; order + 1];
        for k in (0..=order).rev() {
            next.iter_mut().for_each(|x| *x = 0.0);
            for (i, &a) in acc.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for &(j, w) in &support {
                    if i + j > order {
                        break;
                    }
                    next[i + j] += a * w;
                }
            }
            next[0] += self.coeffs[k];
            std::mem::swap(&mut acc, &mut next);
        }
        Ok(Self { coeffs: acc })
    }

    pub fn exp(&self) -> Result<Self> {
        series_exp(self)
    }

    pub fn log(&self) -> Result<Self> {
        series_log(self)
    }

    pub fn integrate_term_over_t(&self) -> Result<Self> {
        integrate_term_over_t(self)
    }

    pub fn majorant(&self) -> Self {
        majorant(self)
    }

    /// Term-wise derivative; the order drops by one (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |n| (n + 1) as f64 * self.coeffs[n + 1])
    }

    /// Multiplies by `z`; the top coefficient falls off so the order is kept.
    pub fn mul_z(&self) -> Self {
        Self::from_fn(
            self.order(),
            |n| if n == 0 { 0.0 } else { self.coeffs[n - 1] },
        )
    }

    /// Divides by `z`. Requires a zero constant term; the order drops by one.
    pub fn div_z(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return Err(BohrError::NonzeroConstantTerm(self.coeffs[0]));
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::from_fn(self.order() - 1, |n| self.coeffs[n + 1]))
    }

    pub fn eval(&self, x: f64, tail_bound: Option<f64>) -> Result<f64> {
        eval(self, x, tail_bound)
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Geometric estimate of the discarded tail `Σ_{n>N} c_n x^n`.
    ///
    /// Uses the largest of the last two coefficients so that series with
    /// alternating zero coefficients are not mistaken for converged ones.
    pub fn tail_estimate(&self, x: f64) -> f64 {
        let n = self.order();
        let ax = x.abs();
        let last = self.coeffs[n.saturating_sub(1)..]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()));
        if last == 0.0 {
            return 0.0;
        }
        if ax >= 1.0 {
            return f64::INFINITY;
        }
        last * ax.powi(n as i32) / (1.0 - ax)
    }
}

/// Cauchy product, exact to `min(N_a, N_b)`.
pub fn cauchy_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order().min(b.order());
    let mut out = vec![0.0; order + 1];
    for (i, &ai) in a.coeffs[..=order].iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.coeffs[..=order - i].iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    TruncatedSeries { coeffs: out }
}

/// `exp(a)` for a series with `a_0 = 0`, via `e_n = (1/n) Σ_{j=1..n} j a_j e_{n-j}`.
pub fn series_exp(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    if a.coeffs[0] != 0.0 {
        return Err(BohrError::NonzeroConstantTerm(a.coeffs[0]));
    }
    let order = a.order();
    let mut e = vec![0.0; order + 1];
    e[0] = 1.0;
    for n in 1..=order {
        let s: f64 = (1..=n).map(|j| j as f64 * a.coeffs[j] * e[n - j]).sum();
        e[n] = s / n as f64;
    }
    TruncatedSeries::new(e)
}

/// `log(a)` for a series with `a_0 = 1`; the result has zero constant term.
pub fn series_log(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    if a.coeffs[0] != 1.0 {
        return Err(BohrError::NonunitConstantTerm(a.coeffs[0]));
    }
    let order = a.order();
    let mut l = vec![0.0; order + 1];
    for n in 1..=order {
        let s: f64 = (1..n).map(|j| j as f64 * l[j] * a.coeffs[n - j]).sum();
        l[n] = a.coeffs[n] - s / n as f64;
    }
    TruncatedSeries::new(l)
}

/// Maps `Σ_{n≥1} b_n t^n` to `Σ b_n z^n / n`, i.e. `∫_0^z b(t)/t dt`.
pub fn integrate_term_over_t(b: &TruncatedSeries) -> Result<TruncatedSeries> {
    if b.coeffs[0] != 0.0 {
        return Err(BohrError::NonzeroConstantTerm(b.coeffs[0]));
    }
    Ok(TruncatedSeries::from_fn(b.order(), |n| {
        if n == 0 {
            0.0
        } else {
            b.coeffs[n] / n as f64
        }
    }))
}

/// Coefficient-wise absolute value.
pub fn majorant(a: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries::from_fn(a.order(), |n| a.coeffs[n].abs())
}

/// Horner evaluation on `[-1, 1]`.
///
/// With `tail_bound` set, the geometric tail estimate at `x` must stay
/// below the bound or [`BohrError::TailTooLarge`] is returned.
pub fn eval(a: &TruncatedSeries, x: f64, tail_bound: Option<f64>) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(BohrError::DomainError {
            value: x,
            domain: "[-1, 1]",
        });
    }
    if let Some(bound) = tail_bound {
        let tail = a.tail_estimate(x);
        if tail >= bound {
            return Err(BohrError::TailTooLarge { r: x, tail, bound });
        }
    }
    Ok(a.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[f64]) -> TruncatedSeries {
        TruncatedSeries::new(c.to_vec()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (n, (x, y)) in a.iter().zip(b).enumerate() {
            assert!((x - y).abs() <= tol, "coefficient {n}: {x} vs {y}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(TruncatedSeries::new(vec![]).is_err());
        assert!(TruncatedSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(TruncatedSeries::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn products() {
        assert_eq!(
            cauchy_mul(&s(&[1.0, 1.0]), &s(&[1.0, -1.0])).coeffs(),
            &[1.0, 0.0]
        );
        let sq = s(&[1.0, 1.0, 0.0]);
        assert_eq!(cauchy_mul(&sq, &sq).coeffs(), &[1.0, 2.0, 1.0]);
        let diff = cauchy_mul(&s(&[1.0, 1.0, 0.0]), &s(&[1.0, -1.0, 0.0]));
        assert_eq!(diff.coeffs(), &[1.0, 0.0, -1.0]);
        let a = s(&[0.3, -2.0, 5.0, 1.5]);
        assert_eq!(cauchy_mul(&a, &TruncatedSeries::one(3)), a);
    }

    #[test]
    fn mixed_orders_truncate_to_smaller() {
        let a = s(&[1.0, 1.0, 1.0, 1.0]);
        let b = s(&[1.0, 1.0]);
        assert_eq!(cauchy_mul(&a, &b).order(), 1);
        assert_eq!(a.add(&b).coeffs(), &[2.0, 2.0]);
    }

    #[test]
    fn exp_of_zero_and_z() {
        assert_eq!(
            series_exp(&TruncatedSeries::zero(6)).unwrap(),
            TruncatedSeries::one(6)
        );
        let e = series_exp(&TruncatedSeries::identity(12)).unwrap();
        let mut fact = 1.0;
        for n in 0..=12 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((e.coeff(n) - 1.0 / fact).abs() < 1e-16);
        }
        assert_eq!(
            series_exp(&s(&[0.5, 1.0])),
            Err(BohrError::NonzeroConstantTerm(0.5))
        );
    }

    #[test]
    fn log_known_series() {
        assert_eq!(
            series_log(&TruncatedSeries::one(5)).unwrap(),
            TruncatedSeries::zero(5)
        );
        let l = series_log(&s(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0])).unwrap();
        assert_close(l.coeffs(), &[0.0, 1.0, -0.5, 1.0 / 3.0, -0.25, 0.2], 1e-15);
        let geo = series_log(&TruncatedSeries::from_fn(20, |_| 1.0)).unwrap();
        for n in 1..=20 {
            assert!((geo.coeff(n) - 1.0 / n as f64).abs() < 1e-15);
        }
        assert_eq!(
            series_log(&s(&[2.0, 1.0])),
            Err(BohrError::NonunitConstantTerm(2.0))
        );
    }

    #[test]
    fn exp_log_round_trip_on_one_plus_z() {
        let a = s(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let back = series_exp(&series_log(&a).unwrap()).unwrap();
        assert_close(back.coeffs(), a.coeffs(), 1e-12);
    }

    #[test]
    fn integrate_over_t() {
        let id = s(&[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(integrate_term_over_t(&id).unwrap(), id);
        let cardioid = s(&[0.0, 4.0 / 3.0, 2.0 / 3.0, 0.0, 0.0]);
        assert_close(
            integrate_term_over_t(&cardioid).unwrap().coeffs(),
            &[0.0, 4.0 / 3.0, 1.0 / 3.0, 0.0, 0.0],
            1e-16,
        );
        // -2 log(1 - z)
        let half = TruncatedSeries::from_fn(5, |n| if n == 0 { 0.0 } else { 2.0 });
        assert_close(
            integrate_term_over_t(&half).unwrap().coeffs(),
            &[0.0, 2.0, 1.0, 2.0 / 3.0, 0.5, 0.4],
            1e-16,
        );
        assert!(integrate_term_over_t(&s(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn majorant_examples() {
        assert_eq!(majorant(&s(&[1.0, -2.0, 3.0])).coeffs(), &[1.0, 2.0, 3.0]);
        let pos = s(&[0.5, 0.25, 2.0]);
        assert_eq!(majorant(&pos), pos);
        assert_eq!(
            majorant(&s(&[0.0, 1.0, 0.0, -1.0 / 3.0])).coeffs(),
            &[0.0, 1.0, 0.0, 1.0 / 3.0]
        );
    }

    #[test]
    fn eval_examples() {
        let ones = TruncatedSeries::from_fn(20, |_| 1.0);
        assert_eq!(eval(&ones, 0.0, None).unwrap(), 1.0);
        assert_eq!(eval(&TruncatedSeries::identity(4), 0.5, None).unwrap(), 0.5);
        let koebe = TruncatedSeries::from_fn(40, |n| n as f64);
        let v = eval(&koebe, 0.1, Some(1e-13)).unwrap();
        assert!((v - 0.1 / 0.81).abs() < 1e-10);
        assert!(matches!(
            eval(&koebe, 1.5, None),
            Err(BohrError::DomainError { .. })
        ));
        assert!(matches!(
            eval(&koebe, 0.9, Some(1e-13)),
            Err(BohrError::TailTooLarge { .. })
        ));
    }

    #[test]
    fn compose_matches_direct_expansion() {
        // 1/(1 - w) with w = z/2 + z^2/4
        let geo = TruncatedSeries::from_fn(8, |_| 1.0);
        let w = s(&[0.0, 0.5, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let c = geo.compose(&w).unwrap();
        // (1 - w) * c = 1
        let one_minus_w = TruncatedSeries::one(8).sub(&w);
        let prod = cauchy_mul(&one_minus_w, &c);
        assert_close(prod.coeffs(), TruncatedSeries::one(8).coeffs(), 1e-15);
        assert!(geo.compose(&TruncatedSeries::one(8)).is_err());
    }

    #[test]
    fn derivative_and_shifts() {
        let a = s(&[1.0, 2.0, 3.0]);
        assert_eq!(a.derivative().coeffs(), &[2.0, 6.0]);
        assert_eq!(a.mul_z().coeffs(), &[0.0, 1.0, 2.0]);
        assert_eq!(a.mul_z().div_z().unwrap().coeffs(), &[1.0, 2.0]);
        assert!(a.div_z().is_err());
    }

    fn series_strategy(order: usize, c0: Option<f64>) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-1.0f64..1.0, order + 1).prop_map(move |mut v| {
            if let Some(c) = c0 {
                v[0] = c;
            }
            TruncatedSeries::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(a in series_strategy(32, Some(1.0))) {
            let log = series_log(&a).unwrap();
            let back = series_exp(&log).unwrap();
            // log(a) is ill-conditioned when a has zeros inside the disk;
            // the round-off scales with the largest log coefficient.
            let scale = log.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()));
            for n in 0..=32 {
                prop_assert!((back.coeff(n) - a.coeff(n)).abs() <= 1e-12 * scale,
                    "n={} {} vs {}", n, back.coeff(n), a.coeff(n));
            }
        }

        #[test]
        fn exp_is_a_homomorphism(a in series_strategy(16, Some(0.0)), b in series_strategy(16, Some(0.0))) {
            let lhs = series_exp(&a.add(&b)).unwrap();
            let rhs = cauchy_mul(&series_exp(&a).unwrap(), &series_exp(&b).unwrap());
            for n in 0..=16 {
                prop_assert!((lhs.coeff(n) - rhs.coeff(n)).abs() <= 1e-12);
            }
        }

        #[test]
        fn majorant_dominates(a in series_strategy(24, None), x in -1.0f64..1.0) {
            let v = eval(&a, x, None).unwrap();
            let m = eval(&majorant(&a), x.abs(), None).unwrap();
            prop_assert!(v.abs() <= m + 1e-14);
        }

        #[test]
        fn product_commutes_and_associates(
            a in series_strategy(12, None),
            b in series_strategy(12, None),
            c in series_strategy(12, None),
        ) {
            let ab = cauchy_mul(&a, &b);
            let ba = cauchy_mul(&b, &a);
            let left = cauchy_mul(&ab, &c);
            let right = cauchy_mul(&a, &cauchy_mul(&b, &c));
            for n in 0..=12 {
                prop_assert!((ab.coeff(n) - ba.coeff(n)).abs() <= 1e-14);
                prop_assert!((left.coeff(n) - right.coeff(n)).abs() <= 1e-13);
            }
        }
    }
}
