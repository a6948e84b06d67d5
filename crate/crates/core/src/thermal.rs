//! Canonical (Boltzmann) density operators for the three families with
//! their partition functions, thermal moments, Husimi Q and P functions.
//!
//! Every quantity has a direct-sum or quadrature oracle. The competing
//! closed forms are kept under `*_claimed` names.

use serde::{Deserialize, Serialize};

use crate::fock::{energy, FockSpace, OperatorMatrix};
use crate::measures::{MeasureForm, RadialMeasure};
use crate::quad::integrate_semi_infinite;
use crate::specfun::{
    hyp2f1, ln_gamma, ln_hyp1f1_unit, meijer_g20_12_scaled, MeijerParams, Parity,
};
use crate::states::{ln_normalizer, ln_radial_term, Family, StateLabel};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalParams {
    pub beta: f64,
    pub gamma: f64,
}

impl ThermalParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::Domain {
                what: "inverse temperature",
                value: beta,
            });
        }
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::Domain {
                what: "Bargmann index",
                value: gamma,
            });
        }
        Ok(ThermalParams { beta, gamma })
    }

    /// e^{−4β}, the Boltzmann factor of one unit step in n.
    pub fn ratio(&self) -> f64 {
        (-4.0 * self.beta).exp()
    }

    fn b(&self) -> f64 {
        self.gamma / 2.0 + 1.0
    }
}

/// First index of the family.
fn first_index(family: Family) -> usize {
    match family {
        Family::BgcsOdd => 1,
        _ => 0,
    }
}

/// Σ_{j ∈ family} e^{−4β(j − j₀)}, summed term by term.
fn relative_sum(family: Family, p: &ThermalParams) -> f64 {
    let r = p.ratio();
    let step = family.step() as i32;
    let q = r.powi(step);
    let mut sum = 0.0;
    let mut t = 1.0;
    for _ in 0..1_000_000 {
        sum += t;
        t *= q;
        if t < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// ln of the untruncated Boltzmann probability of level j in the family.
fn ln_probability(family: Family, p: &ThermalParams, j: usize, ln_sum: f64) -> f64 {
    -4.0 * p.beta * (j - first_index(family)) as f64 - ln_sum
}

/// Z = Σ_{j ∈ family} e^{−βE_j} by direct summation.
pub fn partition_function(family: Family, p: &ThermalParams) -> f64 {
    let j0 = first_index(family);
    (-p.beta * energy(j0, p.gamma)).exp() * relative_sum(family, p)
}

/// The closed-form partition functions e^{−2βγ}/(1−e^{−8β}),
/// e^{−2β(γ+1)}/(1−e^{−8β}) and e^{−2βγ}/(1−e^{−4β}).
pub fn partition_function_claimed(family: Family, p: &ThermalParams) -> f64 {
    let (b, g) = (p.beta, p.gamma);
    match family {
        Family::BgcsEven => (-2.0 * b * g).exp() / (1.0 - (-8.0 * b).exp()),
        Family::BgcsOdd => (-2.0 * b * (g + 1.0)).exp() / (1.0 - (-8.0 * b).exp()),
        Family::Gkcs => (-2.0 * b * g).exp() / (1.0 - (-4.0 * b).exp()),
    }
}

/// Diagonal density operator on a truncated space.
///
/// The weights are renormalized over the retained indices; `tail` is the
/// Boltzmann mass beyond the truncation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityOperator {
    pub family: Family,
    pub params: ThermalParams,
    pub space: FockSpace,
    pub indices: Vec<usize>,
    pub diag_weights: Vec<f64>,
    pub partition: f64,
    pub tail: f64,
}

pub fn density(family: Family, p: ThermalParams, space: &FockSpace) -> Result<DensityOperator> {
    if (space.gamma - p.gamma).abs() > 0.0 {
        return Err(Error::SpaceMismatch);
    }
    let space = space.with_sector(family.sector());
    let j0 = first_index(family);
    let indices = space.indices();
    let raw: Vec<f64> = indices
        .iter()
        .map(|&j| (-4.0 * p.beta * (j - j0) as f64).exp())
        .collect();
    let kept: f64 = raw.iter().sum();
    let full = relative_sum(family, &p);
    let diag_weights = raw.iter().map(|w| w / kept).collect();
    Ok(DensityOperator {
        family,
        params: p,
        space,
        indices,
        diag_weights,
        partition: partition_function(family, &p),
        tail: (1.0 - kept / full).max(0.0),
    })
}

impl DensityOperator {
    pub fn to_matrix(&self) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(self.space, format!("rho ({})", self.family));
        for (&j, &w) in self.indices.iter().zip(&self.diag_weights) {
            m.entries[(j, j)] = C64::new(w, 0.0);
        }
        m
    }

    pub fn trace(&self) -> f64 {
        self.diag_weights.iter().sum()
    }

    /// Tr(ρ A) using only the diagonal of A.
    pub fn mean(&self, op: &OperatorMatrix) -> Result<C64> {
        if op.space.trunc != self.space.trunc || op.space.gamma != self.space.gamma {
            return Err(Error::SpaceMismatch);
        }
        Ok(self
            .indices
            .iter()
            .zip(&self.diag_weights)
            .map(|(&j, &w)| op.entries[(j, j)] * w)
            .sum())
    }
}

/// Σ_j w_j [2(j+1)(j+γ)]^s over the retained levels, the thermal mean of
/// (K₋K₊)^s.
pub fn thermal_moment(family: Family, p: ThermalParams, s: u32, space: &FockSpace) -> Result<f64> {
    if s > 8 {
        return Err(Error::InvalidConfig(format!("moment order {s} exceeds 8")));
    }
    let rho = density(family, p, space)?;
    let g = p.gamma;
    let mut total = 0.0;
    let mut last = 0.0;
    for (&j, &w) in rho.indices.iter().zip(&rho.diag_weights) {
        let jf = j as f64;
        last = w * (2.0 * (jf + 1.0) * (jf + g)).powi(s as i32);
        total += last;
    }
    if last > 1e-12 * total {
        let index = *rho.indices.last().unwrap_or(&0);
        return Err(Error::Truncation {
            tail: last / total,
            index,
        });
    }
    Ok(total)
}

/// Which argument the hypergeometric thermal forms are evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentArgument {
    /// e^{4β}, as printed.
    Growing,
    /// e^{−4β}, substituted everywhere e^{4β} appears.
    Decaying,
}

/// The closed forms
///
/// * even: 2(4a)^s sinh(a) Γ(b+s)/Γ(b) ₂F₁(1, b+s; b; a)
/// * odd: (4a)^{s+1} sinh(a) Γ(b+s+1)/(2Γ(b+1)) ₂F₁(1, b+s+1; b+1; a)
///
/// with b = γ/2+1 and a the chosen argument. There is no GK form.
pub fn thermal_moment_claimed(family: Family, p: ThermalParams, s: u32, arg: MomentArgument) -> Result<f64> {
    thermal_moment_claimed_power(family, p, s, 1, arg)
}

/// [`thermal_moment_claimed`] with every s replaced by l·s; l = 2 gives the
/// forms for products of the quantized z and z̄.
pub fn thermal_moment_claimed_power(
    family: Family,
    p: ThermalParams,
    s: u32,
    l: u32,
    arg: MomentArgument,
) -> Result<f64> {
    let a = match arg {
        MomentArgument::Growing => (4.0 * p.beta).exp(),
        MomentArgument::Decaying => (-4.0 * p.beta).exp(),
    };
    let b = p.b();
    let ls = (l * s) as i32;
    let lsf = ls as f64;
    match family {
        Family::BgcsEven => {
            let f = hyp2f1(1.0, b + lsf, b, a)?;
            let lg = ln_gamma(b + lsf)? - ln_gamma(b)?;
            Ok(2.0 * (4.0 * a).powi(ls) * a.sinh() * lg.exp() * f)
        }
        Family::BgcsOdd => {
            let f = hyp2f1(1.0, b + lsf + 1.0, b + 1.0, a)?;
            let lg = ln_gamma(b + lsf + 1.0)? - ln_gamma(b + 1.0)?;
            Ok((4.0 * a).powi(ls + 1) * a.sinh() * lg.exp() / 2.0 * f)
        }
        Family::Gkcs => Err(Error::InvalidConfig(
            "no closed thermal moment for the GK family".into(),
        )),
    }
}

/// Q = ⟨l|ρ|l⟩ = Σ_j p_j |c_j(l)|² with untruncated weights and states.
pub fn husimi_q(family: Family, p: ThermalParams, label: &StateLabel) -> Result<f64> {
    if label.family() != family {
        return Err(Error::InvalidConfig("label and family disagree".into()));
    }
    let x = label.radial();
    if family == Family::BgcsOdd && x == 0.0 {
        return Err(Error::Degenerate("odd family at z = 0"));
    }
    let g = p.gamma;
    let ln_sum = relative_sum(family, &p).ln();
    let ln_n = ln_normalizer(family, x, g)?;
    let parity = family.parity();
    let mut q = 0.0;
    let mut peak = 0.0_f64;
    for j in (0..1_000_000).filter(|&j| parity.contains(j)) {
        let t = (ln_probability(family, &p, j, ln_sum) + ln_radial_term(j, x, g)? - ln_n).exp();
        q += t;
        peak = peak.max(t);
        if t == 0.0 && j > 0 || (j as f64) > x / 4.0 + 2.0 && t <= 1e-18 * peak {
            return Ok(q);
        }
    }
    Err(Error::NonConvergence {
        what: "Husimi series",
        terms: 1_000_000,
        last_rel: 0.0,
    })
}

/// The closed forms (1−r²)F(rx/4)/F(x/4), (1−r²)(F(rx/4)−1)/(F(x/4)−1) and
/// (1−r)F(rJ/4)/F(J/4) with F = ₁F₁(1;γ/2+1;·) and r = e^{−4β}.
pub fn husimi_q_claimed(family: Family, p: ThermalParams, label: &StateLabel) -> Result<f64> {
    let x = label.radial();
    let r = p.ratio();
    let b = p.b();
    let lf = |y: f64| ln_hyp1f1_unit(b, y, Parity::All);
    match family {
        Family::BgcsEven => Ok((1.0 - r * r) * (lf(r * x / 4.0)? - lf(x / 4.0)?).exp()),
        Family::BgcsOdd => {
            if x == 0.0 {
                return Err(Error::Degenerate("odd family at z = 0"));
            }
            let num = lf(r * x / 4.0)?.exp_m1();
            let den = lf(x / 4.0)?.exp_m1();
            Ok((1.0 - r * r) * num / den)
        }
        Family::Gkcs => Ok((1.0 - r) * (lf(r * x / 4.0)? - lf(x / 4.0)?).exp()),
    }
}

/// ∫ Q(x) w(x) dx with the given measure, the Husimi normalization.
pub fn husimi_normalization(family: Family, p: ThermalParams, measure: &RadialMeasure) -> Result<f64> {
    if measure.family() != family {
        return Err(Error::InvalidConfig("measure and family disagree".into()));
    }
    let f = |x: f64| -> Result<f64> {
        let l = StateLabel::from_polar(family, x, 0.0);
        Ok(husimi_q(family, p, &l)? * measure.weight(x)?)
    };
    integrate_semi_infinite(f, 4.0 * p.b(), 1e-10)
}

/// ln of the P function paired with the family's elementary measure.
///
/// With r = e^{−4β} the moment condition ∫ w̃ P x^j dx = p_j 4^j (b)_j is
/// solved by P(x) = C r^{−b} e^{−x(1/r−1)/4}, C = 1−r² (even), (1−r²)/r
/// (odd) or 1−r (GK).
pub fn ln_p_function(family: Family, p: ThermalParams, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "P-function argument",
            value: x,
        });
    }
    let r = p.ratio();
    let ln_r = -4.0 * p.beta;
    let ln_c = match family {
        Family::BgcsEven => (-r * r).ln_1p(),
        Family::BgcsOdd => (-r * r).ln_1p() - ln_r,
        Family::Gkcs => (-r).ln_1p(),
    };
    Ok(ln_c - p.b() * ln_r - x * (1.0 / r - 1.0) / 4.0)
}

pub fn p_function(family: Family, p: ThermalParams, x: f64) -> Result<f64> {
    Ok(ln_p_function(family, p, x)?.exp())
}

/// The Meijer-ratio forms (1−r^k) G(r x/4)/G(x/4) with
/// G = G^{2,0}_{1,2}(·|−1; −1, γ/2), k = 2 for the Barut–Girardello
/// families and k = 1 for GK.
pub fn p_function_claimed(family: Family, p: ThermalParams, x: f64) -> Result<f64> {
    Ok(ln_p_function_claimed(family, p, x)?.exp())
}

pub fn ln_p_function_claimed(family: Family, p: ThermalParams, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "P-function argument",
            value: x,
        });
    }
    let r = p.ratio();
    let pre = match family {
        Family::Gkcs => 1.0 - r,
        _ => 1.0 - r * r,
    };
    let mp = MeijerParams::decaying(p.gamma);
    let num = meijer_g20_12_scaled(r * x / 4.0, &mp)?;
    let den = meijer_g20_12_scaled(x / 4.0, &mp)?;
    Ok(pre.ln() + num.ln_value() - den.ln_value())
}

/// Diagonal of ∫ w P |x⟩⟨x| by quadrature: ∫ w̃(x) P(x) x^j/(4^j(b)_j) dx
/// for each family index j ≤ top. These should reproduce the Boltzmann
/// probabilities.
pub fn p_reconstruction(family: Family, p: ThermalParams, top: usize) -> Result<Vec<(usize, f64)>> {
    p_reconstruction_with(family, p, top, p.ratio(), 1e-11, |x| ln_p_function(family, p, x))
}

/// Same moments for an arbitrary ln P. `spread` rescales the natural width
/// 4(b+j) of the j-th integrand: r for the canonical P, larger for a P
/// that decays more slowly. `rel_tol` is the quadrature target.
pub fn p_reconstruction_with(
    family: Family,
    p: ThermalParams,
    top: usize,
    spread: f64,
    rel_tol: f64,
    ln_p: impl Fn(f64) -> Result<f64> + Sync,
) -> Result<Vec<(usize, f64)>> {
    let m = RadialMeasure::new(MeasureForm::elementary(family), p.gamma);
    (0..=top)
        .filter(|&j| family.parity().contains(j))
        .map(|j| {
            let f = |x: f64| -> Result<f64> {
                Ok((m.ln_elementary_reduced(x)? + ln_p(x)? + ln_radial_term(j, x, p.gamma)?).exp())
            };
            let scale = 4.0 * spread * (p.b() + j as f64);
            Ok((j, integrate_semi_infinite(f, scale, rel_tol)?))
        })
        .collect()
}

/// The untruncated Boltzmann probability of level j in the family.
pub fn boltzmann_probability(family: Family, p: ThermalParams, j: usize) -> Result<f64> {
    if !family.parity().contains(j) {
        return Err(Error::InvalidConfig(format!("level {j} is not in the {family} family")));
    }
    Ok(ln_probability(family, &p, j, relative_sum(family, &p).ln()).exp())
}

/// Σ_j |c_j(l)|² p̂_j with p̂ from [`p_reconstruction`]: the Husimi function
/// rebuilt from the P representation.
pub fn husimi_from_p(family: Family, p: ThermalParams, label: &StateLabel, top: usize) -> Result<f64> {
    let x = label.radial();
    let ln_n = ln_normalizer(family, x, p.gamma)?;
    let rec = p_reconstruction(family, p, top)?;
    let mut q = 0.0;
    for (j, pj) in rec {
        q += pj * (ln_radial_term(j, x, p.gamma)? - ln_n).exp();
    }
    Ok(q)
}
