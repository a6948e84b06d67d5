//! Berezin–Toeplitz (anti-Wick) quantization of z, z̄ and |z|² against the
//! even and odd Barut–Girardello families.

use serde::{Deserialize, Serialize};

use crate::fock::{FockSpace, Generator, OperatorMatrix};
use crate::measures::{GridSpec, RadialGrid, RadialMeasure};
use crate::specfun::ln_pochhammer;
use crate::states::Family;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    /// The constant function 1.
    One,
    Z,
    Zbar,
    Modz2,
}

impl Symbol {
    /// Exponents (a, c) of z^a z̄^c.
    fn exponents(self) -> (usize, usize) {
        match self {
            Symbol::One => (0, 0),
            Symbol::Z => (1, 0),
            Symbol::Zbar => (0, 1),
            Symbol::Modz2 => (1, 1),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Symbol::One => "1",
            Symbol::Z => "z",
            Symbol::Zbar => "zbar",
            Symbol::Modz2 => "|z|^2",
        }
    }
}

/// A_f = ∫ f(z) w(|z|²) |z⟩⟨z| d²z/π for a polynomial f = Σ coeff·z^a z̄^c.
///
/// The angular integral keeps ⟨j|A|k⟩ only when k = j + a − c; the radial
/// part ∫ w̃(x) x^{(a+c+j+k)/2} dx / √(4^j(b)_j 4^k(b)_k) is done on a
/// composite Gauss–Legendre grid.
pub(crate) fn toeplitz_polynomial(
    terms: &[(C64, usize, usize)],
    family: Family,
    measure: &RadialMeasure,
    space: &FockSpace,
    spec: GridSpec,
) -> Result<OperatorMatrix> {
    if family == Family::Gkcs {
        return Err(Error::InvalidConfig(
            "quantization is defined for the Barut-Girardello families".into(),
        ));
    }
    if measure.family() != family {
        return Err(Error::InvalidConfig("measure and family disagree".into()));
    }
    let n = space.trunc;
    let g = space.gamma;
    let b = g / 2.0 + 1.0;
    let max_pow = terms.iter().map(|t| t.1 + t.2).max().unwrap_or(0);
    let grid = RadialGrid::for_power(n as f64 + max_pow as f64 / 2.0 + g / 2.0 + 2.0, spec);
    let dens: Vec<f64> = grid
        .nodes
        .iter()
        .map(|&x| measure.reduced(x))
        .collect::<Result<_>>()?;
    let ln_rho = (0..n)
        .map(|j| Ok(j as f64 * 4f64.ln() + ln_pochhammer(b, j)?.0))
        .collect::<Result<Vec<f64>>>()?;
    let parity = family.parity();
    let mut op = OperatorMatrix::zeros(space.with_sector(family.sector()), "A");
    for &(coeff, a, c) in terms {
        for j in (0..n).filter(|&j| parity.contains(j)) {
            let k = j as isize + a as isize - c as isize;
            if k < 0 || k as usize >= n || !parity.contains(k as usize) {
                continue;
            }
            let k = k as usize;
            let p = (a + c + j + k) as f64 / 2.0;
            let shift = 0.5 * (ln_rho[j] + ln_rho[k]);
            let mut acc = 0.0;
            for ((x, w), d) in grid.nodes.iter().zip(&grid.weights).zip(&dens) {
                acc += w * d * (p * x.ln() - shift).exp();
            }
            op.entries[(j, k)] += coeff * acc;
        }
    }
    Ok(op)
}

/// Quantized operator of one elementary symbol.
pub fn toeplitz(
    sym: Symbol,
    family: Family,
    measure: &RadialMeasure,
    space: &FockSpace,
) -> Result<OperatorMatrix> {
    toeplitz_with(sym, family, measure, space, GridSpec::default())
}

pub fn toeplitz_with(
    sym: Symbol,
    family: Family,
    measure: &RadialMeasure,
    space: &FockSpace,
    spec: GridSpec,
) -> Result<OperatorMatrix> {
    let (a, c) = sym.exponents();
    let mut op = toeplitz_polynomial(&[(C64::new(1.0, 0.0), a, c)], family, measure, space, spec)?;
    op.label = format!("A[{}] ({family})", sym.name());
    Ok(op)
}

/// Quantized z^a z̄^c.
pub fn toeplitz_monomial(
    a: usize,
    c: usize,
    family: Family,
    measure: &RadialMeasure,
    space: &FockSpace,
) -> Result<OperatorMatrix> {
    let mut op = toeplitz_polynomial(
        &[(C64::new(1.0, 0.0), a, c)],
        family,
        measure,
        space,
        GridSpec::default(),
    )?;
    op.label = format!("A[z^{a} zbar^{c}] ({family})");
    Ok(op)
}

/// The closed-form matrices
///
/// * even z: 4√((γ/2+2n)(γ/2+2n−1)) |2n−2⟩⟨2n|
/// * odd z: 4√((γ/2+2n)(γ/2+2n+1)) |2n−1⟩⟨2n+1|
/// * even |z|²: 4(γ/2+2n+1) |2n⟩⟨2n|
/// * odd |z|²: 4(γ/2+2n+2) |2n+1⟩⟨2n+1|
///
/// with z̄ the adjoint of z and 1 the sector identity.
pub fn claimed_matrix(sym: Symbol, family: Family, space: &FockSpace) -> Result<OperatorMatrix> {
    let h = space.gamma / 2.0;
    let sector = family.sector();
    let sp = space.with_sector(sector);
    let label = format!("A[{}] closed form ({family})", sym.name());
    let mut op = OperatorMatrix::zeros(sp, label);
    let n_max = space.trunc;
    match (sym, family) {
        (Symbol::One, Family::BgcsEven | Family::BgcsOdd) => {
            let mut id = OperatorMatrix::identity(sp);
            id.label = op.label;
            return Ok(id);
        }
        (Symbol::Z | Symbol::Zbar, Family::BgcsEven) => {
            for n in 1.. {
                if 2 * n >= n_max {
                    break;
                }
                let nf = n as f64;
                let v = 4.0 * ((h + 2.0 * nf) * (h + 2.0 * nf - 1.0)).sqrt();
                op.entries[(2 * n - 2, 2 * n)] = C64::new(v, 0.0);
            }
        }
        (Symbol::Z | Symbol::Zbar, Family::BgcsOdd) => {
            for n in 1.. {
                if 2 * n + 1 >= n_max {
                    break;
                }
                let nf = n as f64;
                let v = 4.0 * ((h + 2.0 * nf) * (h + 2.0 * nf + 1.0)).sqrt();
                op.entries[(2 * n - 1, 2 * n + 1)] = C64::new(v, 0.0);
            }
        }
        (Symbol::Modz2, Family::BgcsEven) => {
            for n in (0..).take_while(|n| 2 * n < n_max) {
                op.entries[(2 * n, 2 * n)] = C64::new(4.0 * (h + 2.0 * n as f64 + 1.0), 0.0);
            }
        }
        (Symbol::Modz2, Family::BgcsOdd) => {
            for n in (0..).take_while(|n| 2 * n + 1 < n_max) {
                op.entries[(2 * n + 1, 2 * n + 1)] = C64::new(4.0 * (h + 2.0 * n as f64 + 2.0), 0.0);
            }
        }
        (_, Family::Gkcs) => {
            return Err(Error::InvalidConfig(
                "quantization is defined for the Barut-Girardello families".into(),
            ))
        }
    }
    if sym == Symbol::Zbar {
        let mut adj = op.adjoint();
        adj.label = op.label;
        return Ok(adj);
    }
    Ok(op)
}

/// Generator convention used to build the comparison operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    FullLadder,
    SectorLadder,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorComparison {
    pub family: Family,
    pub convention: Convention,
    pub quantized: String,
    pub operator: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DootReport {
    pub comparisons: Vec<OperatorComparison>,
    pub max_residual: f64,
}

fn generators(space: FockSpace, conv: Convention) -> (OperatorMatrix, OperatorMatrix, OperatorMatrix) {
    let full = space.with_sector(crate::fock::Sector::Full);
    let f = match conv {
        Convention::FullLadder => OperatorMatrix::generator,
        Convention::SectorLadder => OperatorMatrix::sector_ladder,
    };
    (
        f(full, Generator::K0),
        f(full, Generator::Raise),
        f(full, Generator::Lower),
    )
}

/// Interior comparison of the quantized z, z̄, |z|² against K₋², K₊² and
/// 2K₀ + 4I (even family) or 2K₀ + 8I (odd family), under both generator
/// conventions, restricted to the family's sector.
pub fn doot_claim_compare(space: &FockSpace) -> Result<DootReport> {
    let mut comparisons = Vec::new();
    for family in [Family::BgcsEven, Family::BgcsOdd] {
        let m = RadialMeasure::new(crate::measures::MeasureForm::elementary(family), space.gamma);
        let sector = family.sector();
        let az = toeplitz(Symbol::Z, family, &m, space)?;
        let azb = toeplitz(Symbol::Zbar, family, &m, space)?;
        let amod = toeplitz(Symbol::Modz2, family, &m, space)?;
        let shift = if family == Family::BgcsEven { 4.0 } else { 8.0 };
        for conv in [Convention::FullLadder, Convention::SectorLadder] {
            let (k0, kp, km) = generators(*space, conv);
            let id = OperatorMatrix::identity(space.with_sector(crate::fock::Sector::Full));
            let rhs_mod = k0.scale(2.0).add(&id.scale(shift))?;
            let pairs = [
                (&az, km.pow(2), "K-^2".to_string()),
                (&azb, kp.pow(2), "K+^2".to_string()),
                (&amod, rhs_mod, format!("2K0+{shift}I")),
            ];
            for (a, rhs, name) in pairs {
                let d = a.sub(&rhs.project(sector))?.project(sector);
                comparisons.push(OperatorComparison {
                    family,
                    convention: conv,
                    quantized: a.label.clone(),
                    operator: name,
                    residual: d.interior_max_abs(),
                });
            }
        }
    }
    let max_residual = comparisons.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(DootReport {
        comparisons,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Sector;
    use crate::measures::MeasureForm;

    fn setup(family: Family) -> (FockSpace, RadialMeasure) {
        (
            FockSpace::new(2.0, 20, Sector::Full).unwrap(),
            RadialMeasure::new(MeasureForm::elementary(family), 2.0),
        )
    }

    #[test]
    fn modz2_is_diagonal_four_b_plus_j() {
        for fam in [Family::BgcsEven, Family::BgcsOdd] {
            let (s, m) = setup(fam);
            let a = toeplitz(Symbol::Modz2, fam, &m, &s).unwrap();
            for j in 0..18 {
                for k in 0..18 {
                    let v = a.entries[(j, k)];
                    if j == k && fam.parity().contains(j) {
                        assert!((v.re - 4.0 * (2.0 + j as f64)).abs() < 1e-10);
                    } else {
                        assert!(v.norm() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn z_band_is_empty_within_a_parity_family() {
        let (s, m) = setup(Family::BgcsEven);
        let a = toeplitz(Symbol::Z, Family::BgcsEven, &m, &s).unwrap();
        assert_eq!(a.interior_max_abs(), 0.0);
    }

    #[test]
    fn constant_symbol_gives_sector_identity() {
        let (s, m) = setup(Family::BgcsOdd);
        let a = toeplitz(Symbol::One, Family::BgcsOdd, &m, &s).unwrap();
        let id = OperatorMatrix::identity(s.with_sector(Sector::Odd));
        assert!(a.interior_distance(&id).unwrap() < 1e-8);
    }

    #[test]
    fn z_squared_band() {
        let (s, m) = setup(Family::BgcsEven);
        let a = toeplitz_monomial(2, 0, Family::BgcsEven, &m, &s).unwrap();
        // ⟨j|A|j+2⟩ = 4√((b+j)(b+j+1))
        for j in [0usize, 2, 4, 10] {
            let want = 4.0 * ((2.0 + j as f64) * (3.0 + j as f64)).sqrt();
            assert!((a.entries[(j, j + 2)].re - want).abs() < 1e-9 * want);
        }
    }

    #[test]
    fn closed_form_modz2_matches_quantized() {
        for fam in [Family::BgcsEven, Family::BgcsOdd] {
            let (s, m) = setup(fam);
            let a = toeplitz(Symbol::Modz2, fam, &m, &s).unwrap();
            let c = claimed_matrix(Symbol::Modz2, fam, &s).unwrap();
            assert!(a.interior_distance(&c).unwrap() < 1e-9);
        }
    }

    #[test]
    fn closed_form_z_is_quantized_z_squared() {
        for fam in [Family::BgcsEven, Family::BgcsOdd] {
            let (s, m) = setup(fam);
            let a = toeplitz_monomial(2, 0, fam, &m, &s).unwrap();
            let c = claimed_matrix(Symbol::Z, fam, &s).unwrap();
            assert!(a.interior_distance(&c).unwrap() < 1e-9);
        }
    }

    #[test]
    fn linear_in_the_symbol() {
        let (s, m) = setup(Family::BgcsEven);
        let spec = GridSpec::default();
        let c1 = C64::new(0.7, -0.2);
        let c2 = C64::new(-1.3, 0.4);
        let sum = toeplitz_polynomial(&[(c1, 2, 0), (c2, 1, 1)], Family::BgcsEven, &m, &s, spec)
            .unwrap();
        let a = toeplitz_polynomial(&[(c1, 2, 0)], Family::BgcsEven, &m, &s, spec).unwrap();
        let b = toeplitz_polynomial(&[(c2, 1, 1)], Family::BgcsEven, &m, &s, spec).unwrap();
        let d = sum.sub(&a.add(&b).unwrap()).unwrap();
        assert!(d.interior_max_abs() < 1e-12);
    }

    #[test]
    fn doot_report_has_both_conventions() {
        let s = FockSpace::new(2.0, 16, Sector::Full).unwrap();
        let r = doot_claim_compare(&s).unwrap();
        assert_eq!(r.comparisons.len(), 12);
        // |z|² on the even family is 2K₀ + 4I under the full ladder
        let c = r
            .comparisons
            .iter()
            .find(|c| {
                c.family == Family::BgcsEven
                    && c.convention == Convention::FullLadder
                    && c.operator.starts_with("2K0")
            })
            .unwrap();
        assert!(c.residual < 1e-9);
    }

    #[test]
    fn conjugate_symbol_gives_adjoint() {
        let (s, m) = setup(Family::BgcsEven);
        let a = toeplitz_monomial(2, 0, Family::BgcsEven, &m, &s).unwrap();
        let b = toeplitz_monomial(0, 2, Family::BgcsEven, &m, &s).unwrap();
        assert!(a.adjoint().sub(&b).unwrap().interior_max_abs() < 1e-10);
    }
}
