//! Adaptive Simpson quadrature on a finite interval.

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` (either orientation) to absolute tolerance `tol`.
///
/// The integrand is only sampled at interior points and the two endpoints,
/// so callers with a removable singularity must patch it themselves.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    refine(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `∫_0^x (e^t - 1)/t dt`, with the integrand replaced by its Taylor
/// polynomial near the removable singularity at 0.
pub fn exp_integral_ein(x: f64) -> f64 {
    adaptive_simpson(
        |t| {
            if t.abs() < 1e-4 {
                1.0 + t / 2.0 + t * t / 6.0
            } else {
                t.exp_m1() / t
            }
        },
        0.0,
        x,
        1e-12,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = adaptive_simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12);
        assert!((v - 0.0).abs() < 1e-13);
        let w = adaptive_simpson(|x| x * x, 1.0, 0.0, 1e-12);
        assert!((w + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integrands() {
        let v = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-11);
        let v = adaptive_simpson(|t| 1.0 / (1.0 + t).powi(2), 0.0, 1.0, 1e-12);
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ein_matches_its_series() {
        // Σ x^n / (n n!)
        let series = |x: f64| {
            let mut term = 1.0;
            let mut sum = 0.0;
            for n in 1..40 {
                term *= x / n as f64;
                sum += term / n as f64;
            }
            sum
        };
        for &x in &[-1.0, -0.5, 1e-5, 1.0 / 3.0, 0.9] {
            assert!((exp_integral_ein(x) - series(x)).abs() < 1e-12, "x = {x}");
        }
        assert_eq!(exp_integral_ein(0.0), 0.0);
    }
}
