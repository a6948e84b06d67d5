//! Meijer G^{2,0}_{1,2} by numerical Mellin–Barnes integration, plus the
//! G^{1,1}_{1,2} reduction to ₁F₁ and a generic Mellin-moment integrator.

use std::f64::consts::PI;

use super::gamma::{gamma, ln_gamma, ln_gamma_complex};
use super::hypergeometric::hyp1f1;
use crate::quad::{adaptive, integrate_semi_infinite};
use crate::{Error, Result, C64};

/// Parameters of G^{m,n}_{1,2}(x | a1; b1, b2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerParams {
    pub a1: f64,
    pub b1: f64,
    pub b2: f64,
}

impl MeijerParams {
    pub fn new(a1: f64, b1: f64, b2: f64) -> Result<Self> {
        for v in [a1, b1, b2] {
            if !v.is_finite() {
                return Err(Error::Domain {
                    what: "MeijerParams",
                    value: v,
                });
            }
        }
        Ok(Self { a1, b1, b2 })
    }

    /// (−1; −1, γ/2): G^{2,0} reduces to x^{γ/2} e^{−x}.
    pub fn decaying(gamma: f64) -> Self {
        Self {
            a1: -1.0,
            b1: -1.0,
            b2: gamma / 2.0,
        }
    }

    /// (0; 0, −γ/2): G^{2,0} reduces to x^{−γ/2} e^{−x}.
    pub fn singular(gamma: f64) -> Self {
        Self {
            a1: 0.0,
            b1: 0.0,
            b2: -gamma / 2.0,
        }
    }

    /// Left edge of the fundamental strip: moments exist for s > this.
    /// Poles cancelled by the upper Γ do not bound the strip.
    pub fn strip_left(&self) -> f64 {
        if self.a1 == self.b1 {
            -self.b2
        } else if self.a1 == self.b2 {
            -self.b1
        } else {
            -self.b1.min(self.b2)
        }
    }

    fn ln_mellin(&self, s: C64) -> C64 {
        // Γ(a1+s) cancels against a lower Γ when the parameters coincide.
        if self.a1 == self.b1 {
            ln_gamma_complex(self.b2 + s)
        } else if self.a1 == self.b2 {
            ln_gamma_complex(self.b1 + s)
        } else {
            ln_gamma_complex(self.b1 + s) + ln_gamma_complex(self.b2 + s)
                - ln_gamma_complex(self.a1 + s)
        }
    }

    fn ln_mellin_real(&self, s: f64) -> Result<f64> {
        if self.a1 == self.b1 {
            ln_gamma(self.b2 + s)
        } else if self.a1 == self.b2 {
            ln_gamma(self.b1 + s)
        } else {
            Ok(ln_gamma(self.b1 + s)? + ln_gamma(self.b2 + s)? - ln_gamma(self.a1 + s)?)
        }
    }
}

/// Mellin transform Γ(b1+s)Γ(b2+s)/Γ(a1+s) of G^{2,0}_{1,2}.
pub fn mellin_gamma_ratio(p: &MeijerParams, s: f64) -> Result<f64> {
    if s <= p.strip_left() {
        return Err(Error::Domain {
            what: "Mellin variable outside the fundamental strip",
            value: s,
        });
    }
    if p.a1 == p.b1 {
        return gamma(p.b2 + s);
    }
    if p.a1 == p.b2 {
        return gamma(p.b1 + s);
    }
    let den = p.a1 + s;
    if den <= 0.0 && den.fract() == 0.0 {
        return Ok(0.0);
    }
    if den <= 0.0 {
        return Err(Error::Domain {
            what: "mellin_gamma_ratio upper argument",
            value: den,
        });
    }
    let l = p.ln_mellin_real(s)?;
    if l > 709.0 {
        return Err(Error::Overflow {
            what: "mellin_gamma_ratio",
            ln_value: l,
        });
    }
    Ok(l.exp())
}

/// G^{2,0}_{1,2} as `mantissa · exp(ln_scale)`, which stays representable
/// when the value itself underflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub ln_scale: f64,
}

impl Scaled {
    pub fn value(&self) -> f64 {
        self.mantissa * self.ln_scale.exp()
    }

    pub fn ln_value(&self) -> f64 {
        self.mantissa.ln() + self.ln_scale
    }
}

/// Abscissa minimizing M(σ)x^{−σ} over the strip; the contour through this
/// saddle has the least cancellation.
fn saddle_abscissa(x: f64, p: &MeijerParams) -> Result<f64> {
    let lx = x.ln();
    let f = |s: f64| -> Result<f64> { Ok(p.ln_mellin_real(s)? - s * lx) };
    let mut lo = p.strip_left() + 1e-3;
    let mut hi = lo + 4.0 + 2.0 * x;
    // widen until the objective turns upward
    while f(hi)? < f(hi - 1e-3)? {
        hi *= 2.0;
        if hi > 1e8 {
            break;
        }
    }
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while hi - lo > 1e-6 * (1.0 + hi.abs()) {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// G^{2,0}_{1,2}(x) by (1/π)∫₀^∞ Re[M(σ+it) x^{−σ−it}] dt at the saddle
/// abscissa.
pub fn meijer_g20_12(x: f64, p: &MeijerParams) -> Result<f64> {
    Ok(meijer_g20_12_scaled(x, p)?.value())
}

pub fn meijer_g20_12_scaled(x: f64, p: &MeijerParams) -> Result<Scaled> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "meijer_g20_12 argument",
            value: x,
        });
    }
    let sigma = saddle_abscissa(x, p)?;
    contour(x, p, sigma)
}

/// Same integral along an explicitly chosen abscissa σ inside the strip.
pub fn meijer_g20_12_at(x: f64, p: &MeijerParams, sigma: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "meijer_g20_12 argument",
            value: x,
        });
    }
    if sigma <= p.strip_left() {
        return Err(Error::Domain {
            what: "contour abscissa outside the strip",
            value: sigma,
        });
    }
    Ok(contour(x, p, sigma)?.value())
}

const CONTOUR_ABS_TOL: f64 = 1e-14;

fn contour(x: f64, p: &MeijerParams, sigma: f64) -> Result<Scaled> {
    let lx = x.ln();
    let s0 = C64::new(sigma, 0.0);
    let l0 = p.ln_mellin(s0).re - sigma * lx;
    let integrand = |t: f64| -> Result<f64> {
        let l = p.ln_mellin(C64::new(sigma, t)) - C64::new(sigma * lx + l0, t * lx);
        Ok(l.re.exp() * l.im.cos())
    };
    let envelope = |t: f64| (p.ln_mellin(C64::new(sigma, t)).re - sigma * lx - l0).exp();

    // rounding in exponents of size |l0| bounds the attainable relative accuracy
    let rel = 1e-13_f64.max(64.0 * f64::EPSILON * (l0.abs() + (sigma * lx).abs()));
    // the envelope narrows like exp(−t²/2σ) for large σ and like e^{−πt/2} otherwise
    let width = (sigma.abs().sqrt() / 2.0).max(1.0);
    let mut total = 0.0;
    let mut err = 0.0;
    let mut a = 0.0;
    for _ in 0..10_000 {
        let b = a + width;
        let (v, e) = adaptive(integrand, a, b, CONTOUR_ABS_TOL * 0.1, rel, 400)?;
        total += v;
        err += e;
        if envelope(b) < 1e-18 {
            let m = total / PI;
            let target = CONTOUR_ABS_TOL.max(1e-11_f64.max(100.0 * rel) * m.abs());
            if err / PI > target {
                return Err(Error::Quadrature {
                    what: "Mellin-Barnes contour",
                    achieved: err / PI,
                    target,
                });
            }
            return Ok(Scaled {
                mantissa: m,
                ln_scale: l0,
            });
        }
        a = b;
    }
    Err(Error::Quadrature {
        what: "Mellin-Barnes contour tail",
        achieved: envelope(a),
        target: 1e-18,
    })
}

/// G^{1,1}_{1,2}(y | a1; b1, b2) through its ₁F₁ closed form
/// Γ(1−a1+b1)/Γ(1+b1−b2) · y^{b1} · ₁F₁(1−a1+b1; 1+b1−b2; −y).
///
/// Negative y is accepted only for integer b1, where y^{b1} stays real.
pub fn meijer_g11_12(y: f64, p: &MeijerParams) -> Result<f64> {
    if y < 0.0 && p.b1.fract() != 0.0 {
        return Err(Error::Domain {
            what: "meijer_g11_12 negative argument with non-integer b1",
            value: y,
        });
    }
    let a = 1.0 - p.a1 + p.b1;
    let c = 1.0 + p.b1 - p.b2;
    let pre = gamma(a)? / gamma(c)?;
    Ok(pre * y.powf(p.b1) * hyp1f1(a, c, -y)?)
}

/// ∫₀^∞ x^{s−1} f(x) dx, with panels laid out geometrically around `scale`.
pub fn mellin_moment(f: impl Fn(f64) -> Result<f64>, s: f64, scale: f64) -> Result<f64> {
    integrate_semi_infinite(|x| Ok(x.powf(s - 1.0) * f(x)?), scale, 1e-11)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decaying_family_is_elementary() {
        let g = 2.0;
        let p = MeijerParams::decaying(g);
        for &x in &[0.01, 0.5, 1.0, 3.0, 20.0, 150.0] {
            let v = meijer_g20_12(x, &p).unwrap();
            let want = x.powf(g / 2.0) * (-x).exp();
            assert!((v - want).abs() <= 1e-9 * want, "x={x} {v} {want}");
        }
    }

    #[test]
    fn singular_family_is_elementary() {
        let g = 2.5;
        let p = MeijerParams::singular(g);
        for &x in &[0.01, 1.0, 7.0] {
            let v = meijer_g20_12(x, &p).unwrap();
            let want = x.powf(-g / 2.0) * (-x).exp();
            assert!((v - want).abs() <= 1e-9 * want, "x={x}");
        }
    }

    #[test]
    fn uncancelled_parameters_reproduce_moment() {
        // no cancelling pair, so all three gammas enter the contour
        let p = MeijerParams::new(1.5, 0.0, 0.5).unwrap();
        let m = mellin_moment(|x| meijer_g20_12(x, &p), 2.0, 1.0).unwrap();
        let want = mellin_gamma_ratio(&p, 2.0).unwrap();
        assert!((m - want).abs() < 1e-7 * want, "{m} {want}");
    }

    #[test]
    fn huge_argument_stays_representable() {
        let p = MeijerParams::decaying(2.0);
        let s = meijer_g20_12_scaled(1000.0, &p).unwrap();
        assert!(s.mantissa > 0.0);
        let want = 1000f64.ln() - 1000.0;
        assert!((s.ln_value() - want).abs() < 1e-9 * want.abs());
    }

    #[test]
    fn contour_shift_invariance() {
        let p = MeijerParams::decaying(2.0);
        let a = meijer_g20_12_at(1.0, &p, -0.5).unwrap();
        let b = meijer_g20_12_at(1.0, &p, 3.0).unwrap();
        assert!((a - b).abs() < 1e-8);
        assert!(meijer_g20_12_at(1.0, &p, -1.5).is_err());
    }

    #[test]
    fn g11_reduces_to_confluent() {
        let g = 2.5;
        let p = MeijerParams::singular(g);
        let y = -1.3;
        let want = hyp1f1(1.0, g / 2.0 + 1.0, 1.3).unwrap() / gamma(g / 2.0 + 1.0).unwrap();
        assert!((meijer_g11_12(y, &p).unwrap() - want).abs() < 1e-13 * want);
        let bad = MeijerParams::new(0.0, 0.5, 0.0).unwrap();
        assert!(meijer_g11_12(-1.0, &bad).is_err());
    }

    #[test]
    fn mellin_moment_gamma_integrals() {
        let v = mellin_moment(|x| Ok((-x).exp()), 3.0, 1.0).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
        let v = mellin_moment(|x| Ok(x * (-x / 4.0).exp() / 16.0), 1.0, 4.0).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn strip_is_enforced() {
        let p = MeijerParams::singular(2.0);
        assert!(mellin_gamma_ratio(&p, 1.0).is_err());
        assert!((mellin_gamma_ratio(&p, 3.0).unwrap() - 1.0).abs() < 1e-14);
    }
}
