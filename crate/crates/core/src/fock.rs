//! Truncated su(1,1) Fock space of the isotonic oscillator: generators,
//! spectrum and position-space eigenfunctions.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::specfun::{ln_gamma, ln_pochhammer};
use crate::{Error, Result, C64};

/// Potential strength and the Bargmann index it fixes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub coupling: Option<f64>,
    pub strength: f64,
    pub gamma: f64,
}

impl ModelParams {
    pub fn from_strength(strength: f64) -> Result<Self> {
        Ok(Self {
            coupling: None,
            strength,
            gamma: bargmann_index(strength)?,
        })
    }

    /// Strength A = g(g+1).
    pub fn from_coupling(g: f64) -> Result<Self> {
        if !(g >= 0.0) {
            return Err(Error::Domain {
                what: "coupling",
                value: g,
            });
        }
        let strength = g * (g + 1.0);
        Ok(Self {
            coupling: Some(g),
            strength,
            gamma: bargmann_index(strength)?,
        })
    }
}

/// γ = 1 + ½√(1+4A).
pub fn bargmann_index(strength: f64) -> Result<f64> {
    if !(strength >= 0.0) || !strength.is_finite() {
        return Err(Error::Domain {
            what: "potential strength",
            value: strength,
        });
    }
    Ok(1.0 + 0.5 * (1.0 + 4.0 * strength).sqrt())
}

/// E_m = 2(2m+γ).
pub fn energy(m: usize, gamma: f64) -> f64 {
    2.0 * (2.0 * m as f64 + gamma)
}

/// Highest level accepted by [`wavefunction`].
pub const WAVEFUNCTION_MAX_LEVEL: usize = 30;

/// Φ_m(x) = √(2(γ)_m/(m!Γ(γ))) x^{γ−1/2} e^{−x²/2} ₁F₁(−m; γ; x²).
pub fn wavefunction(m: usize, gamma: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "wavefunction position",
            value: x,
        });
    }
    if m > WAVEFUNCTION_MAX_LEVEL {
        return Err(Error::Domain {
            what: "wavefunction level",
            value: m as f64,
        });
    }
    if !(gamma > 0.0) {
        return Err(Error::Domain {
            what: "wavefunction gamma",
            value: gamma,
        });
    }
    let (lp, _) = ln_pochhammer(gamma, m)?;
    let ln_norm = 0.5 * (2f64.ln() + lp - ln_gamma(m as f64 + 1.0)? - ln_gamma(gamma)?);
    let y = x * x;
    // terminating series, summed exactly
    let mut term = 1.0;
    let mut poly = 1.0;
    for k in 0..m {
        let kf = k as f64;
        term *= (kf - m as f64) * y / ((gamma + kf) * (kf + 1.0));
        poly += term;
    }
    Ok((ln_norm + (gamma - 0.5) * x.ln() - 0.5 * y).exp() * poly)
}

/// Which Fock indices a space admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Full,
    Even,
    Odd,
}

impl Sector {
    pub fn contains(self, n: usize) -> bool {
        match self {
            Sector::Full => true,
            Sector::Even => n % 2 == 0,
            Sector::Odd => n % 2 == 1,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Full => "full",
            Sector::Even => "even",
            Sector::Odd => "odd",
        })
    }
}

/// Basis |0⟩..|N−1⟩ of the full ladder, with a sector restriction.
///
/// Vectors and matrices are always stored over all N full-ladder indices;
/// the sector only says which of them may be populated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockSpace {
    pub gamma: f64,
    pub trunc: usize,
    pub sector: Sector,
}

impl FockSpace {
    pub fn new(gamma: f64, trunc: usize, sector: Sector) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::Domain {
                what: "Bargmann index",
                value: gamma,
            });
        }
        if trunc < 2 {
            return Err(Error::InvalidConfig(format!("truncation {trunc} < 2")));
        }
        Ok(Self {
            gamma,
            trunc,
            sector,
        })
    }

    pub fn with_sector(self, sector: Sector) -> Self {
        Self { sector, ..self }
    }

    /// Sector indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.trunc).filter(|&n| self.sector.contains(n)).collect()
    }

    /// Sector indices away from the truncation edge (the top two are dropped).
    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.trunc.saturating_sub(2))
            .filter(|&n| self.sector.contains(n))
            .collect()
    }

    /// Same index set and Bargmann index; sectors may differ.
    pub fn compatible(&self, other: &FockSpace) -> bool {
        self.trunc == other.trunc && self.gamma == other.gamma
    }

    pub fn basis(&self, n: usize) -> DVector<C64> {
        let mut v = DVector::zeros(self.trunc);
        v[n] = C64::new(1.0, 0.0);
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    K0,
    Raise,
    Lower,
}

/// Dense operator on a [`FockSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub space: FockSpace,
    pub entries: DMatrix<C64>,
    pub label: String,
}

fn raise_coeff(n: usize, gamma: f64) -> f64 {
    let n = n as f64;
    (2.0 * (n + 1.0) * (n + gamma)).sqrt()
}

fn lower_coeff(n: usize, gamma: f64) -> f64 {
    let n = n as f64;
    (2.0 * n * (n + gamma - 1.0)).sqrt()
}

impl OperatorMatrix {
    pub fn new(space: FockSpace, entries: DMatrix<C64>, label: impl Into<String>) -> Result<Self> {
        if entries.nrows() != space.trunc || entries.ncols() != space.trunc {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self {
            space,
            entries,
            label: label.into(),
        })
    }

    pub fn zeros(space: FockSpace, label: impl Into<String>) -> Self {
        Self {
            space,
            entries: DMatrix::zeros(space.trunc, space.trunc),
            label: label.into(),
        }
    }

    pub fn identity(space: FockSpace) -> Self {
        let mut m = Self::zeros(space, "I");
        for n in space.indices() {
            m.entries[(n, n)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(space: FockSpace, d: impl Fn(usize) -> f64, label: impl Into<String>) -> Self {
        let mut m = Self::zeros(space, label);
        for n in 0..space.trunc {
            m.entries[(n, n)] = C64::new(d(n), 0.0);
        }
        m
    }

    /// K₀, K₊ or K₋ on the full ladder. On a sector, the full-ladder matrix
    /// is projected onto that sector (so K± vanish there).
    pub fn generator(space: FockSpace, which: Generator) -> Self {
        let g = space.gamma;
        let n_max = space.trunc;
        let mut m = DMatrix::zeros(n_max, n_max);
        let name = match which {
            Generator::K0 => {
                for n in 0..n_max {
                    m[(n, n)] = C64::new(2.0 * n as f64 + g, 0.0);
                }
                "K0"
            }
            Generator::Raise => {
                for n in 0..n_max - 1 {
                    m[(n + 1, n)] = C64::new(raise_coeff(n, g), 0.0);
                }
                "K+"
            }
            Generator::Lower => {
                for n in 1..n_max {
                    m[(n - 1, n)] = C64::new(lower_coeff(n, g), 0.0);
                }
                "K-"
            }
        };
        let op = Self {
            space,
            entries: m,
            label: name.to_string(),
        };
        if space.sector == Sector::Full {
            op
        } else {
            let label = format!("{name} [full ladder projected on {} sector]", space.sector);
            let mut p = op.project(space.sector);
            p.label = label;
            p
        }
    }

    /// Alternative raising/lowering actions that stay inside one parity
    /// sector, stepping the index by two:
    ///
    /// * even: K₊|2n⟩ = √(4n(2n+γ))|2n+2⟩, K₋|2n⟩ = √(4n(2n+γ−2))|2n−2⟩;
    /// * odd: K₊|2n+1⟩ = √(2(2n+1)(2n+γ+1))|2n+3⟩,
    ///   K₋|2n+1⟩ = √(2(2n+1)(2n+γ−1))|2n−1⟩.
    ///
    /// These are not the full-ladder generators; they exist so both
    /// conventions can be compared. K₀ is the full-ladder K₀.
    pub fn sector_ladder(space: FockSpace, which: Generator) -> Self {
        let g = space.gamma;
        let n_max = space.trunc;
        let mut m = DMatrix::zeros(n_max, n_max);
        let raise = |j: usize| -> f64 {
            let h = (j / 2) as f64;
            if j % 2 == 0 {
                (4.0 * h * (2.0 * h + g)).sqrt()
            } else {
                (2.0 * (2.0 * h + 1.0) * (2.0 * h + g + 1.0)).sqrt()
            }
        };
        let lower = |j: usize| -> f64 {
            let h = (j / 2) as f64;
            if j % 2 == 0 {
                (4.0 * h * (2.0 * h + g - 2.0)).max(0.0).sqrt()
            } else {
                (2.0 * (2.0 * h + 1.0) * (2.0 * h + g - 1.0)).sqrt()
            }
        };
        let name = match which {
            Generator::K0 => return Self::generator(space, Generator::K0),
            Generator::Raise => {
                for j in 0..n_max.saturating_sub(2) {
                    m[(j + 2, j)] = C64::new(raise(j), 0.0);
                }
                "K+ [sector ladder]"
            }
            Generator::Lower => {
                // the odd rule would send |1⟩ to index −1; that term is dropped
                for j in 2..n_max {
                    m[(j - 2, j)] = C64::new(lower(j), 0.0);
                }
                "K- [sector ladder]"
            }
        };
        let op = Self {
            space,
            entries: m,
            label: name.to_string(),
        };
        if space.sector == Sector::Full {
            op
        } else {
            op.project(space.sector)
        }
    }

    /// Hamiltonian diag(E_n).
    pub fn hamiltonian(space: FockSpace) -> Self {
        Self::from_diagonal(space, |n| energy(n, space.gamma), "H")
    }

    /// P A P with P the projector on `sector`.
    pub fn project(&self, sector: Sector) -> Self {
        let n_max = self.space.trunc;
        let mut m = self.entries.clone();
        for i in 0..n_max {
            for j in 0..n_max {
                if !(sector.contains(i) && sector.contains(j)) {
                    m[(i, j)] = C64::new(0.0, 0.0);
                }
            }
        }
        Self {
            space: self.space.with_sector(sector),
            entries: m,
            label: self.label.clone(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.space.compatible(&other.space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            space: self.space,
            entries: &self.entries * &other.entries,
            label: format!("{}·{}", self.label, other.label),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            space: self.space,
            entries: &self.entries + &other.entries,
            label: format!("{} + {}", self.label, other.label),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            space: self.space,
            entries: &self.entries - &other.entries,
            label: format!("{} - {}", self.label, other.label),
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            space: self.space,
            entries: self.entries.map(|v| v * c),
            label: format!("{c}·{}", self.label),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let n = self.space.trunc;
        let mut e = DMatrix::identity(n, n);
        for _ in 0..k {
            e = &e * &self.entries;
        }
        Self {
            space: self.space,
            entries: e,
            label: format!("({})^{k}", self.label),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space,
            entries: self.entries.adjoint(),
            label: format!("({})†", self.label),
        }
    }

    /// [A, B] = AB − BA.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let e = &self.entries * &other.entries - &other.entries * &self.entries;
        Ok(Self {
            space: self.space,
            entries: e,
            label: format!("[{}, {}]", self.label, other.label),
        })
    }

    pub fn apply(&self, v: &DVector<C64>) -> Result<DVector<C64>> {
        if v.len() != self.space.trunc {
            return Err(Error::SpaceMismatch);
        }
        Ok(&self.entries * v)
    }

    /// ⟨v|A|v⟩.
    pub fn expectation(&self, v: &DVector<C64>) -> Result<C64> {
        let av = self.apply(v)?;
        Ok(v.dotc(&av))
    }

    /// Largest |A_ij| with both indices below N−2.
    pub fn interior_max_abs(&self) -> f64 {
        let n = self.space.trunc.saturating_sub(2);
        let mut m = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                m = m.max(self.entries[(i, j)].norm());
            }
        }
        m
    }

    /// Largest |A_ij − B_ij| over interior indices.
    pub fn interior_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.interior_max_abs())
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.space.trunc).map(|n| self.entries[(n, n)]).collect()
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }
}

/// Single-band operator |n⟩ ↦ √(sq[n]) |n+shift⟩, kept in squared form.
///
/// Composition multiplies squared coefficients before the one square root,
/// so K₋K₊ and K₊K₋ come out as exact rationals instead of squares of
/// rounded roots.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub space: FockSpace,
    pub shift: isize,
    pub sq: Vec<f64>,
    pub label: String,
}

impl Ladder {
    pub fn generator(space: FockSpace, which: Generator) -> Self {
        let g = space.gamma;
        let n_max = space.trunc;
        let (shift, sq, label): (isize, Vec<f64>, &str) = match which {
            Generator::K0 => (
                0,
                (0..n_max).map(|n| (2.0 * n as f64 + g).powi(2)).collect(),
                "K0",
            ),
            Generator::Raise => (
                1,
                (0..n_max)
                    .map(|n| 2.0 * (n as f64 + 1.0) * (n as f64 + g))
                    .collect(),
                "K+",
            ),
            Generator::Lower => (
                -1,
                (0..n_max)
                    .map(|n| 2.0 * n as f64 * (n as f64 + g - 1.0))
                    .collect(),
                "K-",
            ),
        };
        Self {
            space,
            shift,
            sq,
            label: label.to_string(),
        }
    }

    fn target(&self, n: usize) -> Option<usize> {
        let t = n as isize + self.shift;
        (t >= 0 && (t as usize) < self.space.trunc).then_some(t as usize)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Ladder) -> Result<Ladder> {
        if !self.space.compatible(&other.space) {
            return Err(Error::SpaceMismatch);
        }
        let sq = (0..self.space.trunc)
            .map(|n| match other.target(n) {
                Some(m) if self.target(m).is_some() => other.sq[n] * self.sq[m],
                _ => 0.0,
            })
            .collect();
        Ok(Ladder {
            space: self.space,
            shift: self.shift + other.shift,
            sq,
            label: format!("{}·{}", self.label, other.label),
        })
    }

    pub fn to_matrix(&self) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(self.space, self.label.clone());
        for n in 0..self.space.trunc {
            if let Some(t) = self.target(n) {
                m.entries[(t, n)] = C64::new(self.sq[n].sqrt(), 0.0);
            }
        }
        m
    }
}

/// Exact ‖(K₊)^n|0⟩‖ = √(2^n n! (γ)_n).
pub fn vacuum_ladder_norm(n: usize, gamma: f64) -> Result<f64> {
    let (lp, _) = ln_pochhammer(gamma, n)?;
    let ln_sq = n as f64 * 2f64.ln() + ln_gamma(n as f64 + 1.0)? + lp;
    Ok((0.5 * ln_sq).exp())
}

/// The competing closed form √(4^n (γ/2+1)_n).
pub fn vacuum_ladder_norm_claimed(n: usize, gamma: f64) -> Result<f64> {
    let (lp, _) = ln_pochhammer(gamma / 2.0 + 1.0, n)?;
    Ok((0.5 * (n as f64 * 4f64.ln() + lp)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(g: f64, n: usize) -> FockSpace {
        FockSpace::new(g, n, Sector::Full).unwrap()
    }

    #[test]
    fn bargmann_index_values() {
        assert_eq!(bargmann_index(0.0).unwrap(), 1.5);
        assert_eq!(bargmann_index(0.75).unwrap(), 2.0);
        assert_eq!(bargmann_index(2.0).unwrap(), 2.5);
        assert!(bargmann_index(-0.1).is_err());
        assert_eq!(ModelParams::from_coupling(1.0).unwrap().gamma, 2.5);
    }

    #[test]
    fn spectrum() {
        assert_eq!(energy(0, 2.3), 4.6);
        assert_eq!(energy(1, 2.0), 8.0);
        for m in 0..20 {
            assert!((energy(m + 1, 1.7) - energy(m, 1.7) - 4.0).abs() < 1e-13);
        }
    }

    #[test]
    fn ground_wavefunction_at_one() {
        let v = wavefunction(0, 2.0, 1.0).unwrap();
        assert!((v - 2f64.sqrt() * (-0.5f64).exp()).abs() < 1e-15);
        assert!(wavefunction(3, 2.0, 1e-8).unwrap().abs() < 1e-10);
        assert!(wavefunction(0, 2.0, 0.0).is_err());
        assert!(wavefunction(31, 2.0, 1.0).is_err());
    }

    #[test]
    fn generator_entries() {
        let s = full(2.0, 8);
        let k0 = OperatorMatrix::generator(s, Generator::K0);
        assert_eq!(k0.entries[(0, 0)].re, 2.0);
        let kp = OperatorMatrix::generator(s, Generator::Raise);
        let km = OperatorMatrix::generator(s, Generator::Lower);
        let pm = kp.mul(&km).unwrap();
        assert!((pm.entries[(1, 1)].re - 4.0).abs() < 1e-14);
        assert_eq!(kp.entries, km.entries.adjoint());
    }

    #[test]
    fn commutation_relations_on_interior() {
        let s = full(2.5, 64);
        let k0 = OperatorMatrix::generator(s, Generator::K0);
        let kp = OperatorMatrix::generator(s, Generator::Raise);
        let km = OperatorMatrix::generator(s, Generator::Lower);
        // dense products square rounded roots: a few ulp of entries near 8000
        let c = km.commutator(&kp).unwrap();
        assert!(c.interior_distance(&k0.scale(2.0)).unwrap() < 4e-12);
        let c = k0.commutator(&kp).unwrap();
        assert!(c.interior_distance(&kp.scale(2.0)).unwrap() < 4e-12);
        let c = k0.commutator(&km).unwrap();
        assert!(c.interior_distance(&km.scale(-2.0)).unwrap() < 4e-12);
    }

    #[test]
    fn ladder_products_are_exact() {
        for g in [1.5, 2.0, 2.5] {
            let s = full(g, 64);
            let kp = Ladder::generator(s, Generator::Raise);
            let km = Ladder::generator(s, Generator::Lower);
            let c = km
                .compose(&kp)
                .unwrap()
                .to_matrix()
                .sub(&kp.compose(&km).unwrap().to_matrix())
                .unwrap();
            let k0 = Ladder::generator(s, Generator::K0).to_matrix();
            assert_eq!(c.interior_distance(&k0.scale(2.0)).unwrap(), 0.0);
        }
    }

    #[test]
    fn ladder_matches_dense_generators() {
        let s = full(2.2, 20);
        for w in [Generator::K0, Generator::Raise, Generator::Lower] {
            let d = OperatorMatrix::generator(s, w);
            let l = Ladder::generator(s, w).to_matrix();
            assert!(d.sub(&l).unwrap().entries.iter().all(|v| v.norm() < 1e-13));
        }
    }

    #[test]
    fn hamiltonian_is_twice_k0() {
        let s = full(1.8, 16);
        let h = OperatorMatrix::hamiltonian(s);
        let k0 = OperatorMatrix::generator(s, Generator::K0);
        assert_eq!(h.entries, k0.scale(2.0).entries);
    }

    #[test]
    fn sector_projection_kills_parity_changing_generators() {
        let s = FockSpace::new(2.0, 10, Sector::Even).unwrap();
        let kp = OperatorMatrix::generator(s, Generator::Raise);
        assert_eq!(kp.interior_max_abs(), 0.0);
        assert!(kp.label.contains("projected"));
        let k0 = OperatorMatrix::generator(s, Generator::K0);
        assert_eq!(k0.entries[(1, 1)].re, 0.0);
        assert_eq!(k0.entries[(2, 2)].re, 6.0);
    }

    #[test]
    fn sector_ladder_entries() {
        let s = full(2.0, 10);
        let kp = OperatorMatrix::sector_ladder(s, Generator::Raise);
        let km = OperatorMatrix::sector_ladder(s, Generator::Lower);
        // K₊|2⟩ = √(4·1·4)|4⟩
        assert!((kp.entries[(4, 2)].re - 4.0).abs() < 1e-15);
        // K₋|3⟩ = √(2·3·3)|1⟩
        assert!((km.entries[(1, 3)].re - 18f64.sqrt()).abs() < 1e-15);
        // K₊|0⟩ = 0 under the even rule
        assert_eq!(kp.entries[(2, 0)].re, 0.0);
    }

    #[test]
    fn ladder_norms() {
        assert_eq!(vacuum_ladder_norm(0, 2.0).unwrap(), 1.0);
        assert!((vacuum_ladder_norm(1, 2.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((vacuum_ladder_norm_claimed(1, 2.0).unwrap() - 8f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn ladder_norm_matches_matrix_powers() {
        let s = full(2.2, 12);
        let kp = OperatorMatrix::generator(s, Generator::Raise);
        let mut v = s.basis(0);
        for n in 1..8 {
            v = kp.apply(&v).unwrap();
            let want = vacuum_ladder_norm(n, 2.2).unwrap();
            assert!((v.norm() - want).abs() < 1e-12 * want);
        }
    }
}
