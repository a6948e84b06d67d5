//! Quadrature rules: Gauss–Legendre (fixed and composite), adaptive
//! Gauss–Kronrod 7/15, and semi-infinite integration by geometric panels.

use std::collections::BinaryHeap;
use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::{Error, Result};

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n from the usual asymptotic initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped affinely onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = 0.5 * (b - a);
        let c = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (c + h * x, h * w))
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

/// Panel boundaries for composite rules on [0, x_max]: geometric panels from
/// `x_min_geom` up to `scale`, then uniform panels of width `scale`.
pub fn radial_breakpoints(x_min_geom: f64, scale: f64, x_max: f64, uniform_width: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    let mut x = x_min_geom;
    while x < scale.min(x_max) {
        pts.push(x);
        x *= 2.0;
    }
    let mut x = scale.min(x_max);
    pts.push(x);
    while x < x_max {
        x = (x + uniform_width).min(x_max);
        pts.push(x);
    }
    pts
}

// QUADPACK qk15 abscissae and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx)? + f(c + dx)?;
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Ok((kron * h, ((kron - gauss) * h).abs()))
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive Gauss–Kronrod 7/15 on a finite interval.
///
/// Returns `(value, error estimate)`; fails with [`Error::Quadrature`] when
/// `max_segments` bisections cannot reach `max(abs_tol, rel_tol·|value|)`.
pub fn adaptive<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<(f64, f64)> {
    let (v, e) = gk15(&mut f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v, err: e });
    let mut total = v;
    let mut err = e;
    while err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= max_segments {
            return Err(Error::Quadrature {
                what: "adaptive Gauss-Kronrod",
                achieved: err,
                target: abs_tol.max(rel_tol * total.abs()),
            });
        }
        let s = heap.pop().expect("heap never empty");
        let m = 0.5 * (s.a + s.b);
        let (v1, e1) = gk15(&mut f, s.a, m)?;
        let (v2, e2) = gk15(&mut f, m, s.b)?;
        total += v1 + v2 - s.value;
        err += e1 + e2 - s.err;
        heap.push(Segment { a: s.a, b: m, value: v1, err: e1 });
        heap.push(Segment { a: m, b: s.b, value: v2, err: e2 });
    }
    // re-sum to shed accumulated cancellation in the running totals
    let value = heap.iter().map(|s| s.value).sum();
    let err = heap.iter().map(|s| s.err).sum();
    Ok((value, err))
}

/// ∫₀^∞ f(x) dx by geometric panels [s·2^k, s·2^{k+1}] outward and
/// [s·2^{−k−1}, s·2^{−k}] inward from the scale `s`, each integrated
/// adaptively, with an absolute budget tied to the running total so that
/// tail panels need not be resolved to their own relative precision. Panels stop once three in a row contribute below
/// `rel_tol·1e-3` of the running total; a tail that keeps contributing is
/// reported as [`Error::DivergentTail`].
pub fn integrate_semi_infinite<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    scale: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(scale > 0.0) {
        return Err(Error::Domain {
            what: "integrate_semi_infinite scale",
            value: scale,
        });
    }
    let panel_tol = rel_tol * 0.1;
    let mut total = 0.0;
    let mut abs_total = 0.0;

    // outward
    let mut quiet = 0;
    let mut k = 0;
    loop {
        let a = scale * 2f64.powi(k);
        let b = 2.0 * a;
        let (v, _) = adaptive(&mut f, a, b, (0.1 * panel_tol * abs_total).max(1e-300), panel_tol, 2000)?;
        total += v;
        abs_total += v.abs();
        if v.abs() <= rel_tol * 1e-3 * abs_total || v == 0.0 {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        k += 1;
        if k > 64 {
            return Err(Error::DivergentTail {
                what: "integrate_semi_infinite (upper)",
            });
        }
    }

    // inward
    let mut quiet = 0;
    let mut k = 0;
    loop {
        let b = scale * 2f64.powi(-k);
        let a = 0.5 * b;
        let (v, _) = adaptive(&mut f, a, b, (0.1 * panel_tol * abs_total).max(1e-300), panel_tol, 2000)?;
        total += v;
        abs_total += v.abs();
        if v.abs() <= rel_tol * 1e-3 * abs_total || v == 0.0 {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        k += 1;
        if k > 400 {
            return Err(Error::DivergentTail {
                what: "integrate_semi_infinite (lower)",
            });
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let gl = GaussLegendre::new(5);
        // degree 9 is the exactness limit
        let v = gl.integrate(0.0, 2.0, |x| x.powi(9));
        assert!((v - 2f64.powi(10) / 10.0).abs() < 1e-12);
        let s: f64 = gl.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn large_gauss_legendre_rule() {
        let gl = GaussLegendre::new(400);
        let s: f64 = gl.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-13);
        let v = gl.integrate(0.0, PI, f64::sin);
        assert!((v - 2.0).abs() < 1e-13);
        assert!(gl.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let (v, _) = adaptive(|x| Ok(x.sqrt()), 0.0, 1.0, 1e-14, 1e-12, 500).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn semi_infinite_gamma_integrals() {
        let v = integrate_semi_infinite(|x| Ok(x * x * (-x).exp()), 1.0, 1e-11).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let v = integrate_semi_infinite(|x| Ok(x.powf(-0.5) * (-x).exp()), 1.0, 1e-11).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn semi_infinite_flags_divergence() {
        let r = integrate_semi_infinite(|x| Ok(1.0 / (1.0 + x)), 1.0, 1e-9);
        assert!(matches!(r, Err(Error::DivergentTail { .. })));
        let r = integrate_semi_infinite(|x| Ok((-x).exp() / x), 1.0, 1e-9);
        assert!(matches!(r, Err(Error::DivergentTail { .. })));
    }

    #[test]
    fn breakpoints_are_increasing() {
        let p = radial_breakpoints(1e-6, 4.0, 100.0, 4.0);
        assert_eq!(p[0], 0.0);
        assert_eq!(*p.last().unwrap(), 100.0);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }
}
