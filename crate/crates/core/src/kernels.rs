//! Reproducing kernels K(l′, l) = ⟨l′|l⟩ of the three families.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::fock::energy;
use crate::measures::{resolution_diagonal_upto, GridSpec, RadialMeasure};
use crate::specfun::{hyp1f1_unit_complex, Parity};
use crate::states::{ln_normalizer, ln_radial_term, Family, StateLabel};
use crate::{Error, Result, C64};

/// Kernel value at a pair of labels: the exact overlap and the competing
/// closed form side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelEval {
    pub family: Family,
    pub value: C64,
    pub claimed: C64,
    pub difference: f64,
    pub args: (StateLabel, StateLabel),
}

fn check_pair(l1: &StateLabel, l2: &StateLabel) -> Result<Family> {
    let f = l1.family();
    if l2.family() != f {
        return Err(Error::InvalidConfig(format!(
            "kernel labels from different families ({f} and {})",
            l2.family()
        )));
    }
    for l in [l1, l2] {
        if f == Family::BgcsOdd && l.radial() == 0.0 {
            return Err(Error::Degenerate("odd family at z = 0"));
        }
    }
    Ok(f)
}

/// Canonical coefficient c_j(l) of the untruncated, unit-norm state.
fn coefficient(l: &StateLabel, j: usize, gamma: f64, ln_norm: f64) -> Result<C64> {
    let mag = (0.5 * (ln_radial_term(j, l.radial(), gamma)? - ln_norm)).exp();
    let phase = match *l {
        StateLabel::BgcsEven { z } | StateLabel::BgcsOdd { z } => j as f64 * z.arg(),
        StateLabel::Gkcs { alpha, .. } => -energy(j, gamma) * alpha,
    };
    Ok(C64::from_polar(mag, phase))
}

/// Σ_j conj(c_j(l1)) c_j(l2) f(j) over the family's indices, summed until
/// the products are negligible.
fn weighted_overlap(
    l1: &StateLabel,
    l2: &StateLabel,
    gamma: f64,
    f: impl Fn(usize) -> Result<f64>,
) -> Result<C64> {
    let fam = check_pair(l1, l2)?;
    let n1 = ln_normalizer(fam, l1.radial(), gamma)?;
    let n2 = ln_normalizer(fam, l2.radial(), gamma)?;
    let parity = fam.parity();
    let xmax = l1.radial().max(l2.radial());
    let mut sum = C64::new(0.0, 0.0);
    let mut peak = 0.0_f64;
    for j in (0..200_000).filter(|&j| parity.contains(j)) {
        let t = coefficient(l1, j, gamma, n1)?.conj() * coefficient(l2, j, gamma, n2)?;
        let a = t.norm();
        peak = peak.max(a);
        if a != 0.0 {
            sum += t * f(j)?;
        }
        if (j as f64) > xmax / 4.0 + 2.0 && a <= 1e-18 * peak {
            return Ok(sum);
        }
        if a == 0.0 && j > 0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "kernel series",
        terms: 200_000,
        last_rel: 0.0,
    })
}

/// ⟨l1|l2⟩ for canonical (unit-norm) states.
pub fn canonical_kernel(l1: &StateLabel, l2: &StateLabel, gamma: f64) -> Result<C64> {
    weighted_overlap(l1, l2, gamma, |_| Ok(1.0))
}

/// The closed forms built from full ₁F₁ values:
///
/// * even: ₁F₁(1;b;z z̄′/4) / √(₁F₁(1;b;|z|²/4) ₁F₁(1;b;|z′|²/4));
/// * odd: the same with every ₁F₁ replaced by ₁F₁ − 1;
/// * GK: ₁F₁(1;b;√(J′J)/4)/√(₁F₁(1;b;J′/4)₁F₁(1;b;J/4)) · e^{−4i(α′−α)}.
///
/// Arguments follow K(l′, l) with l′ = `l1`.
pub fn claimed_kernel(l1: &StateLabel, l2: &StateLabel, gamma: f64) -> Result<C64> {
    let fam = check_pair(l1, l2)?;
    let b = gamma / 2.0 + 1.0;
    let f = |w: C64| hyp1f1_unit_complex(b, w, Parity::All);
    let fr = |x: f64| -> Result<f64> { Ok(f(C64::new(x / 4.0, 0.0))?.re) };
    match (*l1, *l2) {
        (StateLabel::BgcsEven { z: zp }, StateLabel::BgcsEven { z }) => {
            let num = f(z * zp.conj() / 4.0)?;
            Ok(num / (fr(z.norm_sqr())? * fr(zp.norm_sqr())?).sqrt())
        }
        (StateLabel::BgcsOdd { z: zp }, StateLabel::BgcsOdd { z }) => {
            let num = f(z * zp.conj() / 4.0)? - 1.0;
            Ok(num / ((fr(z.norm_sqr())? - 1.0) * (fr(zp.norm_sqr())? - 1.0)).sqrt())
        }
        (StateLabel::Gkcs { j: jp, alpha: ap }, StateLabel::Gkcs { j, alpha }) => {
            let num = fr((jp * j).sqrt())?;
            let den = (fr(jp)? * fr(j)?).sqrt();
            Ok(num / den * C64::from_polar(1.0, -4.0 * (ap - alpha)))
        }
        _ => Err(Error::InvalidConfig(format!("unsupported kernel family {fam}"))),
    }
}

pub fn kernel(l1: &StateLabel, l2: &StateLabel, gamma: f64) -> Result<KernelEval> {
    let value = canonical_kernel(l1, l2, gamma)?;
    let claimed = claimed_kernel(l1, l2, gamma)?;
    Ok(KernelEval {
        family: l1.family(),
        value,
        claimed,
        difference: (value - claimed).norm(),
        args: (*l1, *l2),
    })
}

/// |∫ K(l1, l)K(l, l2) w dν(l) − K(l1, l2)|, with the angular average done
/// analytically: the integral collapses to Σ_j conj(c_j(l1)) c_j(l2) M_jj
/// where M_jj are the radial diagonal entries of the resolution.
pub fn idempotence_residual(
    l1: &StateLabel,
    l2: &StateLabel,
    measure: &RadialMeasure,
    gamma: f64,
    spec: GridSpec,
) -> Result<f64> {
    let fam = check_pair(l1, l2)?;
    if measure.family() != fam {
        return Err(Error::InvalidConfig("measure and labels disagree".into()));
    }
    // indices carrying weight in the overlap series
    let xmax = l1.radial().max(l2.radial());
    let top = (xmax / 2.0 + 12.0 * xmax.sqrt() + 60.0) as usize;
    let diag = resolution_diagonal_upto(measure, gamma, top, spec)?;
    let direct = canonical_kernel(l1, l2, gamma)?;
    let through = weighted_overlap(l1, l2, gamma, |j| {
        diag.get(j).copied().ok_or(Error::Truncation {
            tail: 0.0,
            index: j,
        })
    })?;
    Ok((through - direct).norm())
}

/// Smallest eigenvalue of the Hermitian Gram matrix G_ab = K(l_a, l_b).
pub fn gram_min_eigenvalue(labels: &[StateLabel], gamma: f64) -> Result<f64> {
    let n = labels.len();
    let mut g = DMatrix::<C64>::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            g[(a, b)] = canonical_kernel(&labels[a], &labels[b], gamma)?;
        }
    }
    let eig = g.symmetric_eigen();
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}
