//! Even/odd Barut–Girardello and Gazeau–Klauder coherent states as
//! coefficient vectors over a truncated Fock space.

use std::fmt;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::fock::{energy, FockSpace, OperatorMatrix, Sector};
use crate::specfun::{ln_hyp1f1_unit, ln_pochhammer, Parity};
use crate::{Error, Result, C64};

/// The three coherent-state families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    BgcsEven,
    BgcsOdd,
    Gkcs,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::BgcsEven, Family::BgcsOdd, Family::Gkcs];

    pub fn sector(self) -> Sector {
        match self {
            Family::BgcsEven => Sector::Even,
            Family::BgcsOdd => Sector::Odd,
            Family::Gkcs => Sector::Full,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Family::BgcsEven => Parity::Even,
            Family::BgcsOdd => Parity::Odd,
            Family::Gkcs => Parity::All,
        }
    }

    /// Index spacing inside the family's support.
    pub fn step(self) -> usize {
        match self {
            Family::Gkcs => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::BgcsEven => "bgcs_even",
            Family::BgcsOdd => "bgcs_odd",
            Family::Gkcs => "gkcs",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bgcs_even" | "even" => Ok(Family::BgcsEven),
            "bgcs_odd" | "odd" => Ok(Family::BgcsOdd),
            "gkcs" => Ok(Family::Gkcs),
            other => Err(Error::InvalidConfig(format!("unknown family {other:?}"))),
        }
    }
}

/// How a constructor normalizes.
///
/// `Canonical` divides by the square root of the exact parity-restricted
/// series, so the untruncated state has unit norm. `Claimed` uses the
/// competing closed-form normalizers: ₁F₁(1;b;x/4) for the even family,
/// ₁F₁ − 1 for the odd family (both under a square root) and ₁F₁ without a
/// square root for Gazeau–Klauder states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormMode {
    Canonical,
    Claimed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateLabel {
    BgcsEven { z: C64 },
    BgcsOdd { z: C64 },
    Gkcs { j: f64, alpha: f64 },
}

impl StateLabel {
    pub fn family(&self) -> Family {
        match self {
            StateLabel::BgcsEven { .. } => Family::BgcsEven,
            StateLabel::BgcsOdd { .. } => Family::BgcsOdd,
            StateLabel::Gkcs { .. } => Family::Gkcs,
        }
    }

    /// |z|² for Barut–Girardello labels, J for Gazeau–Klauder labels.
    pub fn radial(&self) -> f64 {
        match *self {
            StateLabel::BgcsEven { z } | StateLabel::BgcsOdd { z } => z.norm_sqr(),
            StateLabel::Gkcs { j, .. } => j,
        }
    }

    /// Build a label of `family` from radial coordinate x and an angle
    /// (θ = arg z, or α).
    pub fn from_polar(family: Family, x: f64, angle: f64) -> Self {
        match family {
            Family::BgcsEven => StateLabel::BgcsEven {
                z: C64::from_polar(x.sqrt(), angle),
            },
            Family::BgcsOdd => StateLabel::BgcsOdd {
                z: C64::from_polar(x.sqrt(), angle),
            },
            Family::Gkcs => StateLabel::Gkcs { j: x, alpha: angle },
        }
    }
}

/// Coherent-state coefficients over the full ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub space: FockSpace,
    pub coeffs: DVector<C64>,
    pub label: StateLabel,
    pub norm_mode: NormMode,
    /// Exact weight Σ_{n ≥ N} of the untruncated canonical state.
    pub tail_mass: f64,
}

/// Threshold on the last retained |c_n|².
pub const TAIL_LIMIT: f64 = 1e-14;

/// ln(x^j / (4^j (b)_j)), the log of |c_j|² before normalization.
pub fn ln_radial_term(j: usize, x: f64, gamma: f64) -> Result<f64> {
    let (lp, _) = ln_pochhammer(gamma / 2.0 + 1.0, j)?;
    let jf = j as f64;
    if x == 0.0 {
        return Ok(if j == 0 { 0.0 } else { f64::NEG_INFINITY });
    }
    Ok(jf * x.ln() - jf * 4f64.ln() - lp)
}

/// ln of the exact normalizer Σ_{j ∈ family} x^j/(4^j (b)_j).
pub fn ln_normalizer(family: Family, x: f64, gamma: f64) -> Result<f64> {
    ln_hyp1f1_unit(gamma / 2.0 + 1.0, x / 4.0, family.parity())
}

/// ln of the closed-form normalizer: ₁F₁(1;b;x/4), or ₁F₁ − 1 for the odd
/// family.
pub fn ln_claimed_normalizer(family: Family, x: f64, gamma: f64) -> Result<f64> {
    let b = gamma / 2.0 + 1.0;
    let y = x / 4.0;
    match family {
        Family::BgcsOdd => {
            if y == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            // ₁F₁(1;b;y) − 1 = (y/b)·₁F₁(1;b+1;y)
            Ok((y / b).ln() + ln_hyp1f1_unit(b + 1.0, y, Parity::All)?)
        }
        _ => ln_hyp1f1_unit(b, y, Parity::All),
    }
}

fn build(label: StateLabel, space: FockSpace, mode: NormMode) -> Result<StateVector> {
    let family = label.family();
    let g = space.gamma;
    let x = label.radial();
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain {
            what: "coherent-state label",
            value: x,
        });
    }
    if family == Family::BgcsOdd && x == 0.0 {
        return Err(Error::Degenerate("odd family at z = 0"));
    }
    let ln_norm = ln_normalizer(family, x, g)?;
    let ln_div = match (mode, family) {
        (NormMode::Canonical, _) => 0.5 * ln_norm,
        (NormMode::Claimed, Family::Gkcs) => ln_claimed_normalizer(family, x, g)?,
        (NormMode::Claimed, _) => 0.5 * ln_claimed_normalizer(family, x, g)?,
    };
    let phase = |j: usize| -> C64 {
        match label {
            StateLabel::BgcsEven { z } | StateLabel::BgcsOdd { z } => {
                C64::from_polar(1.0, j as f64 * z.arg())
            }
            StateLabel::Gkcs { alpha, .. } => C64::from_polar(1.0, -energy(j, g) * alpha),
        }
    };
    let parity = family.parity();
    let mut coeffs = DVector::zeros(space.trunc);
    let mut last = 0.0;
    for j in (0..space.trunc).filter(|&j| parity.contains(j)) {
        let ln_sq = ln_radial_term(j, x, g)?;
        let mag = (0.5 * ln_sq - ln_div).exp();
        coeffs[j] = phase(j) * mag;
        last = (ln_sq - ln_norm).exp();
    }
    if last >= TAIL_LIMIT {
        let index = (0..space.trunc).rev().find(|&j| parity.contains(j)).unwrap_or(0);
        return Err(Error::Truncation { tail: last, index });
    }
    let mut tail_mass = 0.0;
    let mut j = space.trunc;
    loop {
        if parity.contains(j) {
            let t = (ln_radial_term(j, x, g)? - ln_norm).exp();
            tail_mass += t;
            if t < 1e-30 * tail_mass.max(1e-300) || t == 0.0 {
                break;
            }
        }
        j += 1;
        if j > space.trunc + 100_000 {
            break;
        }
    }
    Ok(StateVector {
        space: space.with_sector(family.sector()),
        coeffs,
        label,
        norm_mode: mode,
        tail_mass,
    })
}

/// Even Barut–Girardello state, c_{2n} ∝ z^{2n}/√(4^{2n}(γ/2+1)_{2n}).
pub fn bgcs_even(z: C64, space: FockSpace) -> Result<StateVector> {
    build(StateLabel::BgcsEven { z }, space, NormMode::Canonical)
}

/// Odd Barut–Girardello state, c_{2n+1} ∝ z^{2n+1}/√(4^{2n+1}(γ/2+1)_{2n+1}).
pub fn bgcs_odd(z: C64, space: FockSpace) -> Result<StateVector> {
    build(StateLabel::BgcsOdd { z }, space, NormMode::Canonical)
}

/// Gazeau–Klauder state, c_n ∝ J^{n/2} e^{−iE_n α}/√(4^n(γ/2+1)_n).
pub fn gkcs(j: f64, alpha: f64, space: FockSpace) -> Result<StateVector> {
    build(StateLabel::Gkcs { j, alpha }, space, NormMode::Canonical)
}

/// Any family and normalization.
pub fn coherent_state(label: StateLabel, space: FockSpace, mode: NormMode) -> Result<StateVector> {
    build(label, space, mode)
}

impl StateVector {
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.norm_squared()
    }

    pub fn family(&self) -> Family {
        self.label.family()
    }
}

/// ⟨s1|s2⟩ = Σ c̄¹_n c²_n.
pub fn overlap(s1: &StateVector, s2: &StateVector) -> Result<C64> {
    if !s1.space.compatible(&s2.space) {
        return Err(Error::SpaceMismatch);
    }
    Ok(s1.coeffs.dotc(&s2.coeffs))
}

/// Best-fit eigenvalue λ = ⟨s|K|s⟩/⟨s|s⟩ and the interior residual
/// ‖K s − λ s‖ (top two indices excluded).
pub fn eigen_residual(s: &StateVector, lowering: &OperatorMatrix) -> Result<(C64, f64)> {
    if !s.space.compatible(&lowering.space) {
        return Err(Error::SpaceMismatch);
    }
    let ks = lowering.apply(&s.coeffs)?;
    let lambda = s.coeffs.dotc(&ks) / s.norm_sqr();
    let n = s.space.trunc.saturating_sub(2);
    let r = (0..n)
        .map(|i| (ks[i] - lambda * s.coeffs[i]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((lambda, r))
}

/// Occupation probability |c_n|².
pub fn pnd(s: &StateVector, n: usize) -> Result<f64> {
    if n >= s.space.trunc {
        return Err(Error::Domain {
            what: "occupation index beyond truncation",
            value: n as f64,
        });
    }
    Ok(s.coeffs[n].norm_sqr())
}

/// e^{−iHt} applied in the eigenbasis.
pub fn evolve(s: &StateVector, t: f64) -> StateVector {
    let g = s.space.gamma;
    let coeffs = DVector::from_iterator(
        s.space.trunc,
        s.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * C64::from_polar(1.0, -energy(n, g) * t)),
    );
    StateVector {
        coeffs,
        ..s.clone()
    }
}

/// |⟨probe|e^{−iHt}|initial⟩|².
pub fn temporal_density(probe: &StateVector, initial: &StateVector, t: f64) -> Result<f64> {
    Ok(overlap(probe, &evolve(initial, t))?.norm_sqr())
}
