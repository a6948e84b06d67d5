//! Confluent ₁F₁ and Gauss ₂F₁ by direct power series.

use crate::{Error, Result, C64};

/// Truncation policy shared by every power series in the crate.
///
/// A series is declared converged once two consecutive terms fall below
/// `rel_tol · |partial sum|` (or below `abs_floor` when the sum itself is
/// that small).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 10_000,
            rel_tol: 1e-14,
            abs_floor: 1e-300,
        }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, abs_floor: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::InvalidConfig("max_terms must be >= 1".into()));
        }
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::InvalidConfig("rel_tol must lie in (0, 1)".into()));
        }
        if !(abs_floor >= 0.0) {
            return Err(Error::InvalidConfig("abs_floor must be >= 0".into()));
        }
        Ok(Self {
            max_terms,
            rel_tol,
            abs_floor,
        })
    }

    fn small(&self, term: f64, sum: f64) -> bool {
        term.abs() <= self.rel_tol * sum.abs() || (term.abs() <= self.abs_floor)
    }
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Sum of a hypergeometric-type series given the ratio of consecutive terms.
fn sum_series(
    what: &'static str,
    ctrl: &SeriesControl,
    ratio: impl Fn(usize) -> f64,
) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut quiet = 0usize;
    for k in 0..ctrl.max_terms {
        term *= ratio(k);
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Overflow {
                what,
                ln_value: f64::INFINITY,
            });
        }
        if ctrl.small(term, sum) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what,
        terms: ctrl.max_terms,
        last_rel: (term / sum).abs(),
    })
}

/// Kummer's confluent hypergeometric function ₁F₁(a; b; x).
pub fn hyp1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    hyp1f1_with(a, b, x, &SeriesControl::default())
}

pub fn hyp1f1_with(a: f64, b: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Domain {
            what: "hyp1f1 lower parameter",
            value: b,
        });
    }
    if !x.is_finite() {
        return Err(Error::Domain {
            what: "hyp1f1 argument",
            value: x,
        });
    }
    if x < -30.0 && !is_nonpositive_integer(a) {
        // Kummer transformation keeps every term positive when a < b.
        let t = hyp1f1_with(b - a, b, -x, ctrl)?;
        return Ok(x.exp() * t);
    }
    sum_series("hyp1f1", ctrl, |k| {
        let k = k as f64;
        (a + k) * x / ((b + k) * (k + 1.0))
    })
}

/// Even- and odd-index parts of ₁F₁(1; b; x) = Σ x^m/(b)_m.
///
/// Returned values are the direct single-signed sums; the combination
/// (F(x) ± F(−x))/2 is evaluated as a cross-check and a disagreement beyond
/// 1e-10 of the scale |F(x)| + |F(−x)| is reported as an error.
pub fn hyp1f1_parity_parts(b: f64, x: f64) -> Result<(f64, f64)> {
    hyp1f1_parity_parts_with(b, x, &SeriesControl::default())
}

pub fn hyp1f1_parity_parts_with(b: f64, x: f64, ctrl: &SeriesControl) -> Result<(f64, f64)> {
    let (even, odd) = parity_direct(b, x, ctrl)?;
    let fp = hyp1f1_with(1.0, b, x, ctrl)?;
    let fm = hyp1f1_with(1.0, b, -x, ctrl)?;
    let scale = fp.abs() + fm.abs();
    let dev = ((fp + fm) / 2.0 - even)
        .abs()
        .max(((fp - fm) / 2.0 - odd).abs());
    if dev > 1e-10 * scale {
        return Err(Error::NonConvergence {
            what: "hyp1f1_parity_parts cross-check",
            terms: 0,
            last_rel: dev / scale,
        });
    }
    Ok((even, odd))
}

fn parity_direct(b: f64, x: f64, ctrl: &SeriesControl) -> Result<(f64, f64)> {
    if is_nonpositive_integer(b) {
        return Err(Error::Domain {
            what: "hyp1f1_parity_parts lower parameter",
            value: b,
        });
    }
    let mut parts = [1.0_f64, 0.0_f64];
    let mut term = 1.0_f64;
    let mut quiet = 0usize;
    for m in 0..ctrl.max_terms {
        term *= x / (b + m as f64);
        if term == 0.0 {
            return Ok((parts[0], parts[1]));
        }
        let p = (m + 1) % 2;
        parts[p] += term;
        if !parts[p].is_finite() {
            return Err(Error::Overflow {
                what: "hyp1f1_parity_parts",
                ln_value: f64::INFINITY,
            });
        }
        if ctrl.small(term, parts[p]) {
            quiet += 1;
            if quiet >= 2 {
                return Ok((parts[0], parts[1]));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "hyp1f1_parity_parts",
        terms: ctrl.max_terms,
        last_rel: term.abs(),
    })
}

/// Which Fock indices a coherent-state normalization runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    pub fn contains(self, m: usize) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => m % 2 == 0,
            Parity::Odd => m % 2 == 1,
        }
    }
}

/// ln Σ_{m ∈ parity} y^m/(b)_m for y ≥ 0 and b > 0, summed in log space so
/// arguments far beyond the f64 range of ₁F₁ itself stay finite.
pub fn ln_hyp1f1_unit(b: f64, y: f64, parity: Parity) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::Domain {
            what: "ln_hyp1f1_unit lower parameter",
            value: b,
        });
    }
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::Domain {
            what: "ln_hyp1f1_unit argument",
            value: y,
        });
    }
    if y == 0.0 {
        return Ok(match parity {
            Parity::Odd => f64::NEG_INFINITY,
            _ => 0.0,
        });
    }
    let ln_y = y.ln();
    let max_terms = 10_000usize.max(2 * y as usize + 1000);
    let mut lt = 0.0_f64;
    let mut peak = f64::NEG_INFINITY;
    let mut acc = 0.0_f64;
    for m in 0..max_terms {
        if m > 0 {
            lt += ln_y - (b + (m - 1) as f64).ln();
        }
        if parity.contains(m) {
            if lt > peak {
                acc = acc * (peak - lt).exp() + 1.0;
                peak = lt;
            } else {
                acc += (lt - peak).exp();
            }
        }
        // past the maximum and 45 e-folds below it
        if (m as f64) + b > y && lt < peak - 45.0 {
            return Ok(peak + acc.ln());
        }
    }
    Err(Error::NonConvergence {
        what: "ln_hyp1f1_unit",
        terms: max_terms,
        last_rel: (lt - peak).exp(),
    })
}

/// Σ_{m ∈ parity} w^m/(b)_m for complex w.
///
/// Summation stops once two consecutive terms fall below 1e-17 of the
/// largest term seen, so cancellation (large |w| pointing left) costs
/// accuracy relative to that peak rather than silently truncating.
pub fn hyp1f1_unit_complex(b: f64, w: C64, parity: Parity) -> Result<C64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Domain {
            what: "hyp1f1_unit_complex lower parameter",
            value: b,
        });
    }
    let mut term = C64::new(1.0, 0.0);
    let mut sum = if parity.contains(0) { term } else { C64::new(0.0, 0.0) };
    let mut peak = 1.0_f64;
    let mut quiet = 0;
    let max_terms = 10_000usize.max(4 * w.norm() as usize + 1000);
    for m in 1..max_terms {
        term *= w / (b + (m - 1) as f64);
        let a = term.norm();
        if !parity.contains(m) {
            continue;
        }
        sum += term;
        peak = peak.max(a);
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(Error::Overflow {
                what: "hyp1f1_unit_complex",
                ln_value: f64::INFINITY,
            });
        }
        if a <= 1e-17 * peak && (m as f64) > w.norm() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "hyp1f1_unit_complex",
        terms: max_terms,
        last_rel: term.norm() / peak,
    })
}

/// Gauss hypergeometric ₂F₁(a, b; c; x) for real arguments inside the unit
/// disc; non-terminating series at |x| ≥ 1 yield [`Error::DivergentArgument`].
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    hyp2f1_with(a, b, c, x, &SeriesControl::default())
}

pub fn hyp2f1_with(a: f64, b: f64, c: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain {
            what: "hyp2f1 lower parameter",
            value: c,
        });
    }
    if !x.is_finite() {
        return Err(Error::Domain {
            what: "hyp2f1 argument",
            value: x,
        });
    }
    let series = |a: f64, b: f64, c: f64, x: f64| {
        sum_series("hyp2f1", ctrl, move |k| {
            let k = k as f64;
            (a + k) * (b + k) * x / ((c + k) * (k + 1.0))
        })
    };
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return series(a, b, c, x);
    }
    if x.abs() >= 1.0 {
        return Err(Error::DivergentArgument { x });
    }
    if x.abs() <= 0.9 {
        return series(a, b, c, x);
    }
    if x > 0.0 {
        let s = c - a - b;
        if s < 0.0 {
            // Euler: same argument, but the transformed coefficients decay faster
            return Ok((1.0 - x).powf(s) * series(c - a, c - b, c, x)?);
        }
        return series(a, b, c, x);
    }
    // Pfaff: x/(x−1) lies in (0.47, 0.5) for x in (−1, −0.9)
    Ok((1.0 - x).powf(-a) * series(a, c - b, c, x / (x - 1.0))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_unit_series_matches_real() {
        let r = hyp1f1(1.0, 2.5, 3.2).unwrap();
        let c = hyp1f1_unit_complex(2.5, C64::new(3.2, 0.0), Parity::All).unwrap();
        assert!((c.re - r).abs() < 1e-14 * r && c.im == 0.0);
        // ₁F₁(1;1;w) = e^w
        let w = C64::new(0.3, -1.7);
        let c = hyp1f1_unit_complex(1.0, w, Parity::All).unwrap();
        assert!((c - w.exp()).norm() < 1e-14);
        let e = hyp1f1_unit_complex(1.0, w, Parity::Even).unwrap();
        assert!((e - w.cosh()).norm() < 1e-14);
    }

    #[test]
    fn hyp1f1_at_zero_and_exp() {
        assert_eq!(hyp1f1(1.0, 2.0, 0.0).unwrap(), 1.0);
        let e = hyp1f1(1.0, 1.0, 1.0).unwrap();
        assert!((e - 1f64.exp()).abs() < 1e-13);
    }

    #[test]
    fn hyp1f1_kummer_branch() {
        // ₁F₁(1;1;x) = e^x also on the transformed branch
        let x = -40.0;
        let v = hyp1f1(1.0, 1.0, x).unwrap();
        assert!((v / x.exp() - 1.0).abs() < 1e-12);
        // ₁F₁(1;2;x) = (e^x − 1)/x
        let v = hyp1f1(1.0, 2.0, -45.0).unwrap();
        let exact = ((-45f64).exp() - 1.0) / -45.0;
        assert!((v / exact - 1.0).abs() < 1e-13);
    }

    #[test]
    fn hyp1f1_terminating_polynomial() {
        // ₁F₁(−2; γ; y) = 1 − 2y/γ + y²/(γ(γ+1))
        let (g, y) = (2.5, 3.0);
        let exact = 1.0 - 2.0 * y / g + y * y / (g * (g + 1.0));
        assert!((hyp1f1(-2.0, g, y).unwrap() - exact).abs() < 1e-14);
    }

    #[test]
    fn hyp1f1_rejects_pole() {
        assert!(hyp1f1(1.0, -3.0, 0.5).is_err());
    }

    #[test]
    fn nonconvergence_is_reported() {
        let ctrl = SeriesControl::new(5, 1e-14, 0.0).unwrap();
        assert!(matches!(
            hyp1f1_with(1.0, 2.0, 10.0, &ctrl),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn parity_parts_at_zero() {
        assert_eq!(hyp1f1_parity_parts(2.0, 0.0).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn ln_unit_matches_direct() {
        for &(b, y) in &[(2.0, 0.3), (2.25, 6.25), (3.0, 40.0)] {
            let (e, o) = hyp1f1_parity_parts(b, y).unwrap();
            let f = hyp1f1(1.0, b, y).unwrap();
            let le = ln_hyp1f1_unit(b, y, Parity::Even).unwrap();
            let lo = ln_hyp1f1_unit(b, y, Parity::Odd).unwrap();
            let la = ln_hyp1f1_unit(b, y, Parity::All).unwrap();
            assert!((le.exp() / e - 1.0).abs() < 1e-13);
            assert!((lo.exp() / o - 1.0).abs() < 1e-13);
            assert!((la.exp() / f - 1.0).abs() < 1e-13);
        }
        // far beyond f64 range of the function itself
        let l = ln_hyp1f1_unit(2.0, 2000.0, Parity::All).unwrap();
        // ₁F₁(1;2;y) = (e^y − 1)/y
        assert!((l - (2000.0 - 2000f64.ln())).abs() < 1e-10);
    }

    #[test]
    fn hyp2f1_known_forms() {
        assert_eq!(hyp2f1(0.3, 0.7, 1.2, 0.0).unwrap(), 1.0);
        let x = 0.5;
        let v = hyp2f1(1.0, 1.0, 2.0, x).unwrap();
        assert!((v - (-(1.0 - x as f64).ln() / x)).abs() < 1e-12);
        // Euler branch
        let x = 0.95;
        let v = hyp2f1(1.0, 1.0, 2.0, x).unwrap();
        assert!((v - (-(1.0 - x as f64).ln() / x)).abs() < 1e-12);
        // Pfaff branch: ₂F₁(1,1;2;x) = −ln(1−x)/x
        let x = -0.95;
        let v = hyp2f1(1.0, 1.0, 2.0, x).unwrap();
        assert!((v - (-(1.0 - x as f64).ln() / x)).abs() < 1e-12);
        // ₂F₁(a,b;b;x) = (1−x)^{−a}
        let v = hyp2f1(2.0, 3.5, 3.5, 0.97).unwrap();
        assert!((v / (0.03f64).powi(-2) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn hyp2f1_divergent_argument() {
        let x = (0.4f64).exp();
        assert_eq!(
            hyp2f1(1.0, 3.0, 2.0, x),
            Err(Error::DivergentArgument { x })
        );
        assert!(matches!(
            hyp2f1(1.0, 3.0, 2.0, 1.0),
            Err(Error::DivergentArgument { .. })
        ));
        // terminating polynomials are fine anywhere
        let v = hyp2f1(-2.0, 1.0, 1.0, 3.0).unwrap();
        assert!((v - 4.0).abs() < 1e-14);
    }
}
