//! Catalog of Ma-Minda kernels `φ(z) = 1 + Σ B_n z^n`.
//!
//! Each kernel knows its coefficient rule, its real-axis closed form and,
//! where one exists, the closed form of the exponent
//! `E(x) = ∫_0^x (φ(t) - 1)/t dt` that generates the extremal function
//! `h(x) = x exp(E(x))`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use serde::Serialize;

use crate::error::{BohrError, Result};
use crate::quadrature::exp_integral_ein;
use crate::series::TruncatedSeries;

/// `k = √2 + 1` of the rational kernel.
pub const RATIONAL_K: f64 = SQRT_2 + 1.0;

/// Names accepted by [`PhiSpec::from_name`].
pub const KERNEL_NAMES: [&str; 8] = [
    "halfplane",
    "janowski",
    "exponential",
    "cardioid",
    "rational",
    "booth",
    "lens",
    "ucv",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Kernel {
    /// `(1 + z)/(1 - z)`.
    HalfPlane,
    /// `(1 + Az)/(1 + Bz)`, `-1 ≤ B < A ≤ 1`.
    Janowski { a: f64, b: f64 },
    /// `α + (1 - α) e^z`.
    Exponential { alpha: f64 },
    /// `1 + 4z/3 + 2z²/3`.
    Cardioid,
    /// `1 + (z/k)(k + z)/(k - z)`, `k = √2 + 1`.
    Rational,
    /// `1 + z/(1 - α z²)`.
    Booth { alpha: f64 },
    /// `(1 + sz)²`.
    Lens { s: f64 },
    /// `1 + (2/π²) (log((1 + √z)/(1 - √z)))²`.
    Ucv,
    /// `1 + z - z³/3`. Has a negative coefficient; kept for positivity tests.
    Nephroid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSpec {
    kernel: Kernel,
    certified: bool,
}

impl PhiSpec {
    fn from_kernel(kernel: Kernel) -> Self {
        Self {
            kernel,
            certified: false,
        }
    }

    pub fn half_plane() -> Self {
        Self::from_kernel(Kernel::HalfPlane)
    }

    pub fn janowski(a: f64, b: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&b) || !b.is_finite() {
            return Err(BohrError::param("B", b, "-1 <= B < A <= 1"));
        }
        if !(a > b && a <= 1.0) {
            return Err(BohrError::param("A", a, "-1 <= B < A <= 1"));
        }
        Ok(Self::from_kernel(Kernel::Janowski { a, b }))
    }

    /// Starlike functions of order `α`: the Janowski kernel with `A = 1 - 2α`, `B = -1`.
    pub fn starlike_of_order(alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(BohrError::param("alpha", alpha, "0 <= alpha < 1"));
        }
        Self::janowski(1.0 - 2.0 * alpha, -1.0)
    }

    pub fn exponential(alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(BohrError::param("alpha", alpha, "0 <= alpha < 1"));
        }
        Ok(Self::from_kernel(Kernel::Exponential { alpha }))
    }

    pub fn cardioid() -> Self {
        Self::from_kernel(Kernel::Cardioid)
    }

    pub fn rational() -> Self {
        Self::from_kernel(Kernel::Rational)
    }

    pub fn booth(alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(BohrError::param("alpha", alpha, "0 <= alpha < 1"));
        }
        Ok(Self::from_kernel(Kernel::Booth { alpha }))
    }

    pub fn lens(s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= FRAC_1_SQRT_2 + 1e-15) {
            return Err(BohrError::param("s", s, "0 < s <= 1/sqrt(2)"));
        }
        Ok(Self::from_kernel(Kernel::Lens { s }))
    }

    pub fn ucv() -> Self {
        Self::from_kernel(Kernel::Ucv)
    }

    pub fn nephroid() -> Self {
        Self::from_kernel(Kernel::Nephroid)
    }

    /// Looks a kernel up by its command-line name. Parameter keys are
    /// `A`, `B` (Janowski), `alpha` (exponential, Booth) and `s` (lens).
    /// The exponential kernel defaults to `alpha = 0`.
    pub fn from_name(name: &str, params: &[(String, f64)]) -> Result<Self> {
        let get = |key: &str| {
            params
                .iter()
                .find(|(k, _)| k.eq_ignore_ascii_case(key))
                .map(|&(_, v)| v)
        };
        let require = |key: &str| {
            get(key).ok_or_else(|| BohrError::ParamOutOfRange {
                name: key.to_string(),
                value: f64::NAN,
                bound: format!("kernel {name} requires --param {key}=<value>"),
            })
        };
        let allowed: &[&str] = match name {
            "janowski" => &["A", "B"],
            "exponential" | "booth" => &["alpha"],
            "lens" => &["s"],
            _ => &[],
        };
        if let Some((k, v)) = params
            .iter()
            .find(|(k, _)| !allowed.iter().any(|a| a.eq_ignore_ascii_case(k)))
        {
            return Err(BohrError::ParamOutOfRange {
                name: k.clone(),
                value: *v,
                bound: format!("not a parameter of kernel {name}"),
            });
        }
        match name {
            "halfplane" => Ok(Self::half_plane()),
            "janowski" => Self::janowski(require("A")?, require("B")?),
            "exponential" => Self::exponential(get("alpha").unwrap_or(0.0)),
            "cardioid" => Ok(Self::cardioid()),
            "rational" => Ok(Self::rational()),
            "booth" => Self::booth(require("alpha")?),
            "lens" => Self::lens(require("s")?),
            "ucv" => Ok(Self::ucv()),
            other => Err(BohrError::UnknownKernel(other.to_string())),
        }
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn name(&self) -> &'static str {
        match self.kernel {
            Kernel::HalfPlane => "halfplane",
            Kernel::Janowski { .. } => "janowski",
            Kernel::Exponential { .. } => "exponential",
            Kernel::Cardioid => "cardioid",
            Kernel::Rational => "rational",
            Kernel::Booth { .. } => "booth",
            Kernel::Lens { .. } => "lens",
            Kernel::Ucv => "ucv",
            Kernel::Nephroid => "nephroid",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match self.kernel {
            Kernel::Janowski { a, b } => vec![("A", a), ("B", b)],
            Kernel::Exponential { alpha } | Kernel::Booth { alpha } => vec![("alpha", alpha)],
            Kernel::Lens { s } => vec![("s", s)],
            _ => vec![],
        }
    }

    /// `name` or `name(key=value,...)`.
    pub fn label(&self) -> String {
        let params = self.params();
        if params.is_empty() {
            return self.name().to_string();
        }
        let inner: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name(), inner.join(","))
    }

    /// `1 + Σ_{n=1..order} B_n z^n`.
    pub fn phi_coefficients(&self, order: usize) -> Result<TruncatedSeries> {
        if order == 0 {
            return Err(BohrError::param("order", 0.0, "order >= 1"));
        }
        let series = match self.kernel {
            Kernel::HalfPlane => {
                TruncatedSeries::from_fn(order, |n| if n == 0 { 1.0 } else { 2.0 })
            }
            Kernel::Janowski { a, b } => {
                let mut c = vec![1.0; order + 1];
                let mut term = a - b;
                for slot in c.iter_mut().skip(1) {
                    *slot = term;
                    term *= -b;
                }
                TruncatedSeries::new(c)?
            }
            Kernel::Exponential { alpha } => {
                let mut c = vec![1.0; order + 1];
                let mut inv_fact = 1.0;
                for (n, slot) in c.iter_mut().enumerate().skip(1) {
                    inv_fact /= n as f64;
                    *slot = (1.0 - alpha) * inv_fact;
                }
                TruncatedSeries::new(c)?
            }
            Kernel::Cardioid => poly(order, &[1.0, 4.0 / 3.0, 2.0 / 3.0]),
            Kernel::Rational => TruncatedSeries::from_fn(order, |n| match n {
                0 => 1.0,
                1 => 1.0 / RATIONAL_K,
                _ => 2.0 / RATIONAL_K.powi(n as i32),
            }),
            Kernel::Booth { alpha } => TruncatedSeries::from_fn(order, |n| match n {
                0 => 1.0,
                n if n % 2 == 1 => alpha.powi(((n - 1) / 2) as i32),
                _ => 0.0,
            }),
            Kernel::Lens { s } => poly(order, &[1.0, 2.0 * s, s * s]),
            Kernel::Ucv => ucv_coefficients(order),
            Kernel::Nephroid => poly(order, &[1.0, 1.0, 0.0, -1.0 / 3.0]),
        };
        Ok(series)
    }

    /// True iff `B_1 > 0` and no `B_n` with `n ≤ order` is negative.
    ///
    /// Kernels with finitely many terms (cardioid, lens) or with vanishing
    /// even terms (Booth) have zero coefficients, so nonnegativity is what
    /// is checked past `B_1`.
    pub fn validate_positivity(&self, order: usize) -> bool {
        match self.phi_coefficients(order.max(1)) {
            Ok(c) => c.coeff(1) > 0.0 && c.coeffs()[1..].iter().all(|&b| b >= 0.0),
            Err(_) => false,
        }
    }

    /// Runs [`validate_positivity`](Self::validate_positivity) and records the outcome.
    pub fn certify(mut self, order: usize) -> Self {
        self.certified = self.validate_positivity(order);
        self
    }

    pub fn is_positivity_certified(&self) -> bool {
        self.certified
    }

    /// `φ(x)` for real `x ∈ (-1, 1)`.
    pub fn phi_eval(&self, x: f64) -> Result<f64> {
        if !(x > -1.0 && x < 1.0) {
            return Err(BohrError::DomainError {
                value: x,
                domain: "(-1, 1)",
            });
        }
        Ok(self.phi_real(x))
    }

    /// `φ` on the real axis, also at `x = -1` where every catalog kernel is finite.
    pub(crate) fn phi_real(&self, x: f64) -> f64 {
        match self.kernel {
            Kernel::HalfPlane => (1.0 + x) / (1.0 - x),
            Kernel::Janowski { a, b } => (1.0 + a * x) / (1.0 + b * x),
            Kernel::Exponential { alpha } => alpha + (1.0 - alpha) * x.exp(),
            Kernel::Cardioid => 1.0 + 4.0 * x / 3.0 + 2.0 * x * x / 3.0,
            Kernel::Rational => {
                let k = RATIONAL_K;
                1.0 + (x / k) * (k + x) / (k - x)
            }
            Kernel::Booth { alpha } => 1.0 + x / (1.0 - alpha * x * x),
            Kernel::Lens { s } => (1.0 + s * x).powi(2),
            Kernel::Ucv => {
                let scale = 2.0 / (PI * PI);
                if x >= 0.0 {
                    1.0 + scale * (2.0 * x.sqrt().atanh()).powi(2)
                } else {
                    1.0 - scale * (2.0 * (-x).sqrt().atan()).powi(2)
                }
            }
            Kernel::Nephroid => 1.0 + x - x * x * x / 3.0,
        }
    }

    /// Closed form of `E(x) = ∫_0^x (φ(t) - 1)/t dt` on `[-1, 1)`, when the
    /// kernel has one. The exponential kernel's integral is evaluated by
    /// adaptive quadrature.
    pub fn closed_exponent(&self, x: f64) -> Option<f64> {
        let e = match self.kernel {
            Kernel::HalfPlane => -2.0 * (-x).ln_1p(),
            Kernel::Janowski { a, b } => {
                if b == 0.0 {
                    a * x
                } else {
                    (a - b) / b * (b * x).ln_1p()
                }
            }
            Kernel::Exponential { alpha } => (1.0 - alpha) * exp_integral_ein(x),
            Kernel::Cardioid => 4.0 * x / 3.0 + x * x / 3.0,
            Kernel::Rational => {
                let k = RATIONAL_K;
                -x / k - 2.0 * (-x / k).ln_1p()
            }
            Kernel::Booth { alpha } => {
                if alpha == 0.0 {
                    x
                } else {
                    let q = alpha.sqrt();
                    ((q * x).ln_1p() - (-q * x).ln_1p()) / (2.0 * q)
                }
            }
            Kernel::Lens { s } => 2.0 * s * x + s * s * x * x / 2.0,
            Kernel::Ucv | Kernel::Nephroid => return None,
        };
        Some(e)
    }

    pub fn has_closed_form(&self) -> bool {
        !matches!(self.kernel, Kernel::Ucv | Kernel::Nephroid)
    }

    /// `Σ_{lo < n ≤ hi} B_n²`, the tail of the Hardy-space norm.
    pub fn hardy_tail(&self, lo: usize, hi: usize) -> Result<f64> {
        let c = self.phi_coefficients(hi)?;
        Ok(c.coeffs()[lo + 1..=hi].iter().map(|b| b * b).sum())
    }
}

/// One representative of every named kernel, in [`KERNEL_NAMES`] order.
///
/// Janowski `A = 1/2, B = -1/2`, exponential `α = 0`, Booth `α = 1/2`,
/// lens `s = 1/√2`.
pub fn catalog() -> Vec<PhiSpec> {
    KERNEL_NAMES
        .iter()
        .map(|name| representative(name))
        .collect()
}

/// The [`catalog`] entry for `name`.
///
/// # Panics
/// If `name` is not one of [`KERNEL_NAMES`].
pub fn representative(name: &str) -> PhiSpec {
    let p = |k: &str, v: f64| (k.to_string(), v);
    let params = match name {
        "janowski" => vec![p("A", 0.5), p("B", -0.5)],
        "booth" => vec![p("alpha", 0.5)],
        "lens" => vec![p("s", FRAC_1_SQRT_2)],
        _ => vec![],
    };
    PhiSpec::from_name(name, &params).expect("catalog kernel")
}

fn poly(order: usize, c: &[f64]) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| c.get(n).copied().unwrap_or(0.0))
}

/// Squares `L(w) = 2 Σ w^{2j+1}/(2j+1)` in the variable `w = √z`; only even
/// powers of `w` survive, giving the coefficients in `z`.
fn ucv_coefficients(order: usize) -> TruncatedSeries {
    let wdeg = 2 * order;
    let log_ratio =
        TruncatedSeries::from_fn(wdeg, |m| if m % 2 == 1 { 2.0 / m as f64 } else { 0.0 });
    let sq = log_ratio.mul(&log_ratio);
    let scale = 2.0 / (PI * PI);
    TruncatedSeries::from_fn(
        order,
        |n| if n == 0 { 1.0 } else { scale * sq.coeff(2 * n) },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardioid_and_janowski_specialisations() {
        let c = PhiSpec::cardioid().phi_coefficients(5).unwrap();
        assert_eq!(c.coeffs(), &[1.0, 4.0 / 3.0, 2.0 / 3.0, 0.0, 0.0, 0.0]);
        let j = PhiSpec::janowski(1.0, -1.0)
            .unwrap()
            .phi_coefficients(6)
            .unwrap();
        assert_eq!(j, PhiSpec::half_plane().phi_coefficients(6).unwrap());
    }

    #[test]
    fn rational_leading_coefficients() {
        let c = PhiSpec::rational().phi_coefficients(4).unwrap();
        assert!((c.coeff(1) - 0.414213562373).abs() < 1e-12);
        assert!((c.coeff(2) - 0.343145750508).abs() < 1e-12);
        // long division of (k + z)/(k - z): 1 + 2z/k + 2z²/k² + ...
        let k = RATIONAL_K;
        for n in 2..=4 {
            assert!((c.coeff(n) - 2.0 / k.powi(n as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn ucv_first_coefficient_and_harmonic_form() {
        let c = PhiSpec::ucv().phi_coefficients(40).unwrap();
        assert!((c.coeff(1) - 8.0 / (PI * PI)).abs() < 1e-15);
        assert!((c.coeff(1) - 0.810569469).abs() < 1e-9);
        // B_n = (8/π²)(1/n) Σ_{i<n} 1/(2i+1)
        for n in 1..=40 {
            let h: f64 = (0..n).map(|i| 1.0 / (2 * i + 1) as f64).sum();
            let expect = 8.0 / (PI * PI) * h / n as f64;
            assert!((c.coeff(n) - expect).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn positivity() {
        assert!(PhiSpec::cardioid().validate_positivity(64));
        assert!(!PhiSpec::janowski(1.0, 0.5).unwrap().validate_positivity(64));
        assert!(!PhiSpec::nephroid().validate_positivity(64));
        assert!(PhiSpec::booth(0.0).unwrap().validate_positivity(64));
        for name in KERNEL_NAMES {
            let spec = sample_spec(name);
            assert!(spec.validate_positivity(64), "{name}");
            assert!(spec.certify(64).is_positivity_certified());
        }
        assert!(!PhiSpec::nephroid().certify(64).is_positivity_certified());
    }

    #[test]
    fn parameter_ranges() {
        assert!(PhiSpec::exponential(1.0).is_err());
        assert!(PhiSpec::exponential(-0.1).is_err());
        assert!(PhiSpec::janowski(0.5, 0.5).is_err());
        assert!(PhiSpec::janowski(1.5, 0.0).is_err());
        assert!(PhiSpec::janowski(0.0, -1.5).is_err());
        assert!(PhiSpec::booth(1.0).is_err());
        assert!(PhiSpec::lens(0.0).is_err());
        assert!(PhiSpec::lens(0.75).is_err());
        assert!(PhiSpec::lens(FRAC_1_SQRT_2).is_ok());
        assert!(PhiSpec::half_plane().phi_coefficients(0).is_err());
        match PhiSpec::exponential(2.0) {
            Err(BohrError::ParamOutOfRange { name, bound, .. }) => {
                assert_eq!(name, "alpha");
                assert!(bound.contains("alpha < 1"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn from_name_parses_params() {
        let p = |k: &str, v: f64| (k.to_string(), v);
        let j = PhiSpec::from_name("janowski", &[p("A", 1.0), p("B", -0.5)]).unwrap();
        assert_eq!(j.kernel(), Kernel::Janowski { a: 1.0, b: -0.5 });
        assert_eq!(j.label(), "janowski(A=1,B=-0.5)");
        assert!(PhiSpec::from_name("janowski", &[p("A", 1.0)]).is_err());
        assert!(PhiSpec::from_name("cardioid", &[p("s", 1.0)]).is_err());
        assert!(matches!(
            PhiSpec::from_name("nephroid", &[]),
            Err(BohrError::UnknownKernel(_))
        ));
        assert_eq!(
            PhiSpec::from_name("exponential", &[]).unwrap().kernel(),
            Kernel::Exponential { alpha: 0.0 }
        );
    }

    #[test]
    fn eval_examples() {
        for name in KERNEL_NAMES {
            assert_eq!(sample_spec(name).phi_eval(0.0).unwrap(), 1.0, "{name}");
        }
        let c = PhiSpec::cardioid().phi_eval(0.5).unwrap();
        assert!((c - 11.0 / 6.0).abs() < 1e-15);
        let k = RATIONAL_K;
        let r = PhiSpec::rational().phi_eval(1.0 / 3.0).unwrap();
        let direct = 1.0 + (1.0 / (3.0 * k)) * (k + 1.0 / 3.0) / (k - 1.0 / 3.0);
        assert!((r - direct).abs() < 1e-15);
        let series = PhiSpec::rational()
            .phi_coefficients(64)
            .unwrap()
            .eval(1.0 / 3.0, None)
            .unwrap();
        assert!((r - series).abs() < 1e-14);
        assert!(PhiSpec::half_plane().phi_eval(1.0).is_err());
        assert!(PhiSpec::half_plane().phi_eval(-1.0).is_err());
    }

    #[test]
    fn series_matches_closed_form_on_real_axis() {
        for name in KERNEL_NAMES {
            let spec = sample_spec(name);
            let c = spec.phi_coefficients(1024).unwrap();
            for i in -9..=9 {
                let x = i as f64 / 10.0;
                let closed = spec.phi_eval(x).unwrap();
                let series = c.eval(x, None).unwrap();
                assert!(
                    (closed - series).abs() < 1e-10,
                    "{name} at {x}: {closed} vs {series}"
                );
            }
        }
    }

    #[test]
    fn closed_exponent_differentiates_to_phi() {
        for name in KERNEL_NAMES {
            let spec = sample_spec(name);
            if !spec.has_closed_form() {
                assert!(spec.closed_exponent(0.3).is_none());
                continue;
            }
            for &x in &[-0.8, -0.3, 0.2, 0.6] {
                let h = 1e-5;
                let d = (spec.closed_exponent(x + h).unwrap()
                    - spec.closed_exponent(x - h).unwrap())
                    / (2.0 * h);
                let expect = (spec.phi_real(x) - 1.0) / x;
                assert!((d - expect).abs() < 1e-7, "{name} at {x}: {d} vs {expect}");
            }
            assert_eq!(spec.closed_exponent(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn hardy_tail_where_square_summable() {
        for name in [
            "janowski",
            "exponential",
            "cardioid",
            "rational",
            "booth",
            "lens",
        ] {
            let t = sample_spec(name).hardy_tail(64, 1024).unwrap();
            assert!(t < 1e-12, "{name}: {t}");
        }
        // constant coefficients: the tail grows with the window
        let hp = PhiSpec::half_plane();
        assert_eq!(hp.hardy_tail(64, 128).unwrap(), 4.0 * 64.0);
        // ucv: B_n ~ log n / n, square-summable but slow
        let u = sample_spec("ucv");
        let (a, b) = (
            u.hardy_tail(64, 128).unwrap(),
            u.hardy_tail(512, 1024).unwrap(),
        );
        assert!(b < a && b > 1e-4, "{a} {b}");
    }

    fn sample_spec(name: &str) -> PhiSpec {
        representative(name)
    }
}
