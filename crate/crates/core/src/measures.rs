//! Radial weights for the three families and numerical checks of their
//! moment conditions and resolutions of the identity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fock::FockSpace;
use crate::quad::GaussLegendre;
use crate::specfun::{
    ln_gamma, ln_pochhammer, meijer_g11_12, meijer_g20_12_scaled, mellin_moment, MeijerParams,
};
use crate::states::{ln_claimed_normalizer, ln_normalizer, ln_radial_term, Family, NormMode};
use crate::{Error, Result};

/// Which weight function a [`RadialMeasure`] evaluates.
///
/// Elementary forms pair with canonically normalized states; the Meijer
/// forms transcribe the competing closed-form weights and pair with the
/// closed-form normalizers of [`NormMode::Claimed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureForm {
    ElementaryEven,
    ElementaryOdd,
    ElementaryGk,
    MeijerEven,
    MeijerOdd,
    MeijerGk,
}

impl MeasureForm {
    pub fn family(self) -> Family {
        match self {
            MeasureForm::ElementaryEven | MeasureForm::MeijerEven => Family::BgcsEven,
            MeasureForm::ElementaryOdd | MeasureForm::MeijerOdd => Family::BgcsOdd,
            MeasureForm::ElementaryGk | MeasureForm::MeijerGk => Family::Gkcs,
        }
    }

    pub fn norm_mode(self) -> NormMode {
        match self {
            MeasureForm::ElementaryEven | MeasureForm::ElementaryOdd | MeasureForm::ElementaryGk => {
                NormMode::Canonical
            }
            _ => NormMode::Claimed,
        }
    }

    pub fn elementary(family: Family) -> Self {
        match family {
            Family::BgcsEven => MeasureForm::ElementaryEven,
            Family::BgcsOdd => MeasureForm::ElementaryOdd,
            Family::Gkcs => MeasureForm::ElementaryGk,
        }
    }

    pub fn meijer(family: Family) -> Self {
        match family {
            Family::BgcsEven => MeasureForm::MeijerEven,
            Family::BgcsOdd => MeasureForm::MeijerOdd,
            Family::Gkcs => MeasureForm::MeijerGk,
        }
    }
}

impl fmt::Display for MeasureForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit enum serializes");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

/// Positive weight on (0, ∞) in the radial variable x = |z|² (or J).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMeasure {
    pub form: MeasureForm,
    pub gamma: f64,
    pub scale: f64,
}

impl RadialMeasure {
    pub fn new(form: MeasureForm, gamma: f64) -> Self {
        Self {
            form,
            gamma,
            scale: 4.0,
        }
    }

    /// Same form with the elementary scale replaced (a sensitivity control;
    /// Meijer forms ignore it).
    pub fn with_scale(self, scale: f64) -> Self {
        Self { scale, ..self }
    }

    pub fn family(&self) -> Family {
        self.form.family()
    }

    fn b(&self) -> f64 {
        self.gamma / 2.0 + 1.0
    }

    /// ln of (x/s)^{γ/2} e^{−x/s} / (s Γ(γ/2+1)), whose moments are
    /// s^k (γ/2+1)_k. At s = 4 this is x^{γ/2}e^{−x/4}/(2^{γ+2}Γ(γ/2+1)).
    pub fn ln_elementary_reduced(&self, x: f64) -> Result<f64> {
        let s = self.scale;
        Ok(0.5 * self.gamma * (x / s).ln() - x / s - s.ln() - ln_gamma(self.b())?)
    }

    /// ln of the normalizer paired with this form: the squared norm the
    /// family's states divide |c_n|² by.
    pub fn ln_paired_normalizer(&self, x: f64) -> Result<f64> {
        let f = self.family();
        match self.form.norm_mode() {
            NormMode::Canonical => ln_normalizer(f, x, self.gamma),
            NormMode::Claimed => {
                let l = ln_claimed_normalizer(f, x, self.gamma)?;
                // the GK closed form divides by ₁F₁ without a square root
                Ok(if f == Family::Gkcs { 2.0 * l } else { l })
            }
        }
    }

    /// The weight w(x) itself.
    pub fn weight(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        let g = self.gamma;
        match self.form {
            MeasureForm::ElementaryEven | MeasureForm::ElementaryOdd | MeasureForm::ElementaryGk => {
                Ok((self.ln_elementary_reduced(x)? + ln_normalizer(self.family(), x, g)?).exp())
            }
            MeasureForm::MeijerEven => meijer_even(g, x),
            MeasureForm::MeijerOdd => Ok(meijer_even(g, x)? - meijer_lambda(g, x)?),
            MeasureForm::MeijerGk => {
                let n2 = ln_claimed_normalizer(Family::Gkcs, x, g)?.exp();
                Ok(n2 * meijer_lambda(g, x)?)
            }
        }
    }

    /// w(x) divided by the paired normalizer: the density that multiplies
    /// x^n/(4^n (γ/2+1)_n) in the n-th diagonal entry of ∫ w |x⟩⟨x|.
    pub fn reduced(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        match self.form {
            MeasureForm::ElementaryEven | MeasureForm::ElementaryOdd | MeasureForm::ElementaryGk => {
                Ok(self.ln_elementary_reduced(x)?.exp())
            }
            _ => Ok(self.weight(x)? / self.ln_paired_normalizer(x)?.exp()),
        }
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "radial weight argument",
            value: x,
        });
    }
    Ok(())
}

/// |z|^γ e^{−|z|²/4}/2^{γ+2} · G^{1,1}_{1,2}(−|z|²/4 | 0; 0, −γ/2).
pub fn meijer_even(gamma: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let pre = (0.5 * gamma * x.ln() - x / 4.0 - (gamma + 2.0) * 2f64.ln()).exp();
    Ok(pre * meijer_g11_12(-x / 4.0, &MeijerParams::singular(gamma))?)
}

/// G^{2,0}_{1,2}(x/4 | −1; −1, γ/2) / (4Γ(γ/2+1)), by contour integration.
pub fn meijer_lambda(gamma: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let g = meijer_g20_12_scaled(x / 4.0, &MeijerParams::decaying(gamma))?;
    let ln = g.ln_scale - 4f64.ln() - ln_gamma(gamma / 2.0 + 1.0)?;
    Ok(g.mantissa * ln.exp())
}

/// G^{2,0}_{1,2}(x/4 | p)/Γ(γ/2+1): the reduced weight read off the inverse
/// Mellin transform for either parameter family.
pub fn meijer_reduced(gamma: f64, p: &MeijerParams, x: f64) -> Result<f64> {
    check_x(x)?;
    let g = meijer_g20_12_scaled(x / 4.0, p)?;
    Ok(g.mantissa * (g.ln_scale - ln_gamma(gamma / 2.0 + 1.0)?).exp())
}

/// Required value of the k-th moment ∫ w̃(x) x^k dx.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentTarget {
    pub k: usize,
    pub target: f64,
}

impl MomentTarget {
    /// 4^k (γ/2+1)_k for every k of the family's index set below `count`.
    pub fn for_family(family: Family, gamma: f64, count: usize) -> Result<Vec<MomentTarget>> {
        (0..count)
            .filter(|&k| family.parity().contains(k))
            .map(|k| {
                let (lp, _) = ln_pochhammer(gamma / 2.0 + 1.0, k)?;
                Ok(MomentTarget {
                    k,
                    target: (k as f64 * 4f64.ln() + lp).exp(),
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub k: usize,
    pub value: f64,
    pub target: f64,
    pub rel_dev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub entries: Vec<MomentEntry>,
    pub max_rel_dev: f64,
}

/// Relative deviation of each moment ∫ f(x) x^k dx from its target, for an
/// arbitrary density f.
pub fn moment_check_fn(
    f: impl Fn(f64) -> Result<f64> + Sync,
    targets: &[MomentTarget],
    scale: f64,
) -> Result<MomentReport> {
    use rayon::prelude::*;
    if targets.is_empty() {
        return Err(Error::InvalidConfig("no moment targets".into()));
    }
    let entries = targets
        .par_iter()
        .map(|t| {
            let value = mellin_moment(&f, t.k as f64 + 1.0, scale * (t.k as f64 + 1.0))?;
            Ok(MomentEntry {
                k: t.k,
                value,
                target: t.target,
                rel_dev: (value - t.target).abs() / t.target,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_rel_dev = entries.iter().map(|e| e.rel_dev).fold(0.0, f64::max);
    Ok(MomentReport {
        entries,
        max_rel_dev,
    })
}

/// Moments of the measure's reduced density against the targets.
pub fn moment_check(m: &RadialMeasure, targets: &[MomentTarget]) -> Result<MomentReport> {
    moment_check_fn(|x| m.reduced(x), targets, m.scale)
}

/// Composite Gauss–Legendre rule on [0, x_max]: geometric panels from
/// 4·2^{−levels} up to 4, then uniform panels of width `width`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub x_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nodes_per_panel: usize,
    pub width: f64,
    pub geometric_levels: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            nodes_per_panel: 20,
            width: 4.0,
            geometric_levels: 40,
        }
    }
}

impl RadialGrid {
    pub fn new(x_max: f64, spec: GridSpec) -> Self {
        let gl = GaussLegendre::new(spec.nodes_per_panel);
        let mut cuts = vec![0.0];
        for l in (0..spec.geometric_levels).rev() {
            let c = 4.0 * 2f64.powi(-(l as i32) - 1);
            if c < x_max {
                cuts.push(c);
            }
        }
        let mut c = 4.0_f64.min(x_max);
        cuts.push(c);
        while c < x_max {
            c = (c + spec.width).min(x_max);
            cuts.push(c);
        }
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for w in cuts.windows(2) {
            for (x, wt) in gl.mapped(w[0], w[1]) {
                nodes.push(x);
                weights.push(wt);
            }
        }
        Self {
            nodes,
            weights,
            x_max,
        }
    }

    /// Grid wide enough that x^p e^{−x/4} has fallen 1e-17 below its peak,
    /// with p the largest power the integrands carry.
    pub fn for_power(power: f64, spec: GridSpec) -> Self {
        Self::new(tail_cutoff(power), spec)
    }

    pub fn integrate(&self, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(*x)?;
        }
        Ok(acc)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Smallest x past the peak of x^p e^{−x/4} where it is 1e-17 of the peak.
pub fn tail_cutoff(power: f64) -> f64 {
    let p = power.max(0.0);
    let peak = 4.0 * p;
    let drop = |x: f64| -> f64 {
        if p == 0.0 {
            -x / 4.0
        } else {
            p * (x / peak).ln() - (x - peak) / 4.0
        }
    };
    let target = -17.0 * 10f64.ln();
    let mut x = peak.max(4.0);
    while drop(x) > target {
        x += 4.0;
    }
    x
}

/// Diagonal entries M_nn = ∫ w(x)|c_n(x)|² dx of ∫ w |x⟩⟨x| for n = 0..=top,
/// with the angular (or α) average done analytically. Indices outside the
/// measure's family are 0.
pub fn resolution_diagonal_upto(
    m: &RadialMeasure,
    gamma: f64,
    top: usize,
    spec: GridSpec,
) -> Result<Vec<f64>> {
    use rayon::prelude::*;
    let grid = RadialGrid::for_power(top as f64 + gamma / 2.0 + 2.0, spec);
    // weight over paired normalizer, cached per node
    let dens: Vec<f64> = grid
        .nodes
        .par_iter()
        .map(|&x| m.reduced(x))
        .collect::<Result<_>>()?;
    let parity = m.family().parity();
    (0..=top)
        .into_par_iter()
        .map(|n| {
            if !parity.contains(n) {
                return Ok(0.0);
            }
            let mut acc = 0.0;
            for ((x, w), d) in grid.nodes.iter().zip(&grid.weights).zip(&dens) {
                acc += w * d * ln_radial_term(n, *x, gamma)?.exp();
            }
            Ok(acc)
        })
        .collect()
}

/// [`resolution_diagonal_upto`] restricted to the space's interior indices.
pub fn resolution_diagonal(
    family: Family,
    m: &RadialMeasure,
    space: &FockSpace,
    spec: GridSpec,
) -> Result<Vec<(usize, f64)>> {
    if family != m.family() {
        return Err(Error::InvalidConfig(format!(
            "measure {} does not belong to family {family}",
            m.form
        )));
    }
    let idx = space.interior_indices();
    let top = idx.iter().copied().max().unwrap_or(0);
    let d = resolution_diagonal_upto(m, space.gamma, top, spec)?;
    Ok(idx.into_iter().map(|n| (n, d[n])).collect())
}

/// max |M_nn − 1| over the space's interior indices.
pub fn identity_resolution_residual(
    family: Family,
    m: &RadialMeasure,
    space: &FockSpace,
) -> Result<f64> {
    identity_resolution_residual_with(family, m, space, GridSpec::default())
}

pub fn identity_resolution_residual_with(
    family: Family,
    m: &RadialMeasure,
    space: &FockSpace,
    spec: GridSpec,
) -> Result<f64> {
    let d = resolution_diagonal(family, m, space, spec)?;
    Ok(d.iter().map(|(_, v)| (v - 1.0).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Sector;

    #[test]
    fn gk_weight_moments() {
        let m = RadialMeasure::new(MeasureForm::ElementaryGk, 2.0);
        let t = [MomentTarget { k: 0, target: 1.0 }, MomentTarget { k: 1, target: 8.0 }];
        let r = moment_check(&m, &t).unwrap();
        assert!(r.max_rel_dev < 1e-9, "{r:?}");
    }

    #[test]
    fn even_reduced_moment_oracle() {
        // ∫ w̃ x^{s−1} dx = 4^{s−1} Γ(b+s−1)/Γ(b): 96 at s = 3, 1536 at s = 4 (γ = 2)
        let m = RadialMeasure::new(MeasureForm::ElementaryEven, 2.0);
        let v = mellin_moment(|x| m.reduced(x), 3.0, 12.0).unwrap();
        assert!((v - 96.0).abs() < 1e-9 * 96.0);
        let v = mellin_moment(|x| m.reduced(x), 4.0, 16.0).unwrap();
        assert!((v - 1536.0).abs() < 1e-9 * 1536.0);
    }

    #[test]
    fn rescaled_weight_is_detected() {
        let m = RadialMeasure::new(MeasureForm::ElementaryGk, 2.0).with_scale(5.0);
        let t = MomentTarget::for_family(Family::Gkcs, 2.0, 6).unwrap();
        assert!(moment_check(&m, &t).unwrap().max_rel_dev > 0.1);
    }

    #[test]
    fn meijer_lambda_matches_elementary() {
        let m = RadialMeasure::new(MeasureForm::ElementaryGk, 2.5);
        for &x in &[0.01, 1.0, 10.0, 80.0] {
            let want = m.reduced(x).unwrap();
            let got = meijer_lambda(2.5, x).unwrap();
            assert!((got - want).abs() < 1e-9 * want, "{x}");
        }
    }

    #[test]
    fn weights_are_positive() {
        for form in [
            MeasureForm::ElementaryEven,
            MeasureForm::ElementaryOdd,
            MeasureForm::ElementaryGk,
            MeasureForm::MeijerEven,
            MeasureForm::MeijerOdd,
            MeasureForm::MeijerGk,
        ] {
            let m = RadialMeasure::new(form, 2.0);
            for k in -6..8 {
                let x = 2f64.powi(k);
                assert!(m.weight(x).unwrap() > 0.0, "{form} {x}");
            }
        }
    }

    #[test]
    fn gk_resolution_small() {
        let s = FockSpace::new(2.0, 24, Sector::Full).unwrap();
        let m = RadialMeasure::new(MeasureForm::ElementaryGk, 2.0);
        let r = identity_resolution_residual(Family::Gkcs, &m, &s).unwrap();
        assert!(r < 1e-10, "{r}");
    }

    #[test]
    fn even_measure_misses_odd_indices() {
        let s = FockSpace::new(2.0, 16, Sector::Full).unwrap();
        let m = RadialMeasure::new(MeasureForm::ElementaryEven, 2.0);
        let d = resolution_diagonal(Family::BgcsEven, &m, &s, GridSpec::default()).unwrap();
        for (n, v) in d {
            if n % 2 == 1 {
                assert_eq!(v, 0.0);
            } else {
                assert!((v - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn family_mismatch_rejected() {
        let s = FockSpace::new(2.0, 16, Sector::Full).unwrap();
        let m = RadialMeasure::new(MeasureForm::ElementaryEven, 2.0);
        assert!(identity_resolution_residual(Family::Gkcs, &m, &s).is_err());
    }
}
