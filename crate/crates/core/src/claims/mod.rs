//! Registry of closed-form identities, each bound to an independent oracle,
//! a parameter grid and a tolerance.
//!
//! A claim never decides its own verdict: it reports the largest residual
//! between the closed form and the oracle over its grid, and the verdict
//! follows from the configured tolerance.

mod observables;
mod structure;
mod thermal;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    Refuted,
    DivergentFormula,
    DegenerateInput,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Refuted => "REFUTED",
            Verdict::DivergentFormula => "DIVERGENT_FORMULA",
            Verdict::DegenerateInput => "DEGENERATE_INPUT",
        })
    }
}

/// A named number reported alongside a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
}

/// One parameter point: γ, β, labels, levels, orders.
pub type GridPoint = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub statement: String,
    pub verdict: Verdict,
    pub max_residual: f64,
    pub tol: f64,
    pub notes: String,
    pub params_grid: Vec<GridPoint>,
    pub measurements: Vec<Measurement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClaimConfig {
    pub gamma: f64,
    pub beta: f64,
    pub trunc: usize,
    pub tol: f64,
}

impl Default for ClaimConfig {
    fn default() -> Self {
        ClaimConfig {
            gamma: 2.0,
            beta: 0.5,
            trunc: 64,
            tol: 1e-8,
        }
    }
}

impl ClaimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trunc < 8 {
            return Err(Error::InvalidConfig(format!(
                "truncation {} is below the minimum of 8",
                self.trunc
            )));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidConfig(format!("tolerance {} must be positive", self.tol)));
        }
        if !(self.gamma > 1.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidConfig(format!("gamma {} must exceed 1", self.gamma)));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::InvalidConfig(format!("beta {} must be positive", self.beta)));
        }
        Ok(())
    }

    /// γ values every claim is run at.
    pub(crate) fn gammas(&self) -> [f64; 2] {
        [self.gamma, self.gamma + 0.5]
    }

    /// β values the thermal claims are run at.
    pub(crate) fn betas(&self) -> [f64; 3] {
        [self.beta / 2.0, self.beta, 2.0 * self.beta]
    }
}

/// Accumulates residuals, grid points and measurements for one claim.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    max: f64,
    grid: Vec<GridPoint>,
    measurements: Vec<Measurement>,
}

impl Tally {
    pub(crate) fn residual(&mut self, r: f64) {
        // a NaN residual must never read as agreement
        let r = if r.is_nan() { f64::MAX } else { r };
        self.max = self.max.max(r);
    }

    pub(crate) fn point(&mut self, entries: &[(&str, f64)]) {
        self.grid
            .push(entries.iter().map(|(k, v)| (k.to_string(), *v)).collect());
    }

    pub(crate) fn measure(&mut self, label: impl Into<String>, value: f64) {
        self.measurements.push(Measurement {
            label: label.into(),
            value,
        });
    }

    fn finish(self, def: &ClaimDef, cfg: &ClaimConfig, verdict: Option<Verdict>, notes: String) -> ClaimReport {
        let max_residual = if self.max.is_finite() { self.max } else { f64::MAX };
        let verdict = verdict.unwrap_or(if max_residual < cfg.tol {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        });
        ClaimReport {
            id: def.id.to_string(),
            statement: def.statement.to_string(),
            verdict,
            max_residual,
            tol: cfg.tol,
            notes,
            params_grid: self.grid,
            measurements: self.measurements,
        }
    }
}

/// What a claim function hands back: the tally, an overriding verdict for
/// the divergent or degenerate cases, and free-text notes.
pub(crate) struct Outcome {
    pub tally: Tally,
    pub verdict: Option<Verdict>,
    pub notes: String,
}

impl Outcome {
    pub(crate) fn new(tally: Tally, notes: impl Into<String>) -> Self {
        Outcome {
            tally,
            verdict: None,
            notes: notes.into(),
        }
    }
}

type ClaimFn = fn(&ClaimConfig) -> Result<Outcome>;

struct ClaimDef {
    id: &'static str,
    statement: &'static str,
    run: ClaimFn,
}

const REGISTRY: [ClaimDef; 19] = [
    ClaimDef {
        id: "C1",
        statement: "(K+)^n|0> = sqrt(4^n (gamma/2+1)_n) |n>",
        run: structure::c1_ladder_norm,
    },
    ClaimDef {
        id: "C2",
        statement: "state normalizers: 1F1(1;gamma/2+1;|z|^2/4) (even), 1F1 - 1 (odd), 1/1F1(1;gamma/2+1;J/4) prefactor (GK)",
        run: structure::c2_normalizers,
    },
    ClaimDef {
        id: "C3",
        statement: "<z'|z>_e = 1F1(1;gamma/2+1; conj(z') z/4) / sqrt(1F1(|z|^2/4) 1F1(|z'|^2/4)); continuity in the label",
        run: structure::c3_even_overlap,
    },
    ClaimDef {
        id: "C4",
        statement: "<z'|z>_o = (1F1(1;gamma/2+1; conj(z') z/4) - 1) / sqrt((1F1(|z|^2/4) - 1)(1F1(|z'|^2/4) - 1)); continuity in the label",
        run: structure::c4_odd_overlap,
    },
    ClaimDef {
        id: "C5",
        statement: "K-|z>_e = z|z>_e and K-|z>_o = z|z>_o",
        run: structure::c5_lowering_eigenstates,
    },
    ClaimDef {
        id: "C6",
        statement: "int W_e |z>_e<z| d^2z/pi = I and int W_o |z>_o<z| d^2z/pi = I on the full space, with the Meijer-G weights",
        run: structure::c6_bg_resolution,
    },
    ClaimDef {
        id: "C7",
        statement: "<J',a'|J,a> = 1F1(1;gamma/2+1; sqrt(J'J) e^{4i(a'-a)}/4) e^{2i gamma (a'-a)} / sqrt(1F1(J/4) 1F1(J'/4))",
        run: structure::c7_gk_overlap,
    },
    ClaimDef {
        id: "C8",
        statement: "int N(J)^2 lambda(J) |J,a><J,a| dJ da = I with N(J)^2 = 1F1(1;gamma/2+1;J/4)",
        run: structure::c8_gk_resolution,
    },
    ClaimDef {
        id: "C9",
        statement: "closed-form reproducing kernels K_e, K_o, K_GK; hermiticity, positivity, idempotence",
        run: structure::c9_kernels,
    },
    ClaimDef {
        id: "C10",
        statement: "<K+K-> = |z|^2, <F(K+K-)> = F(|z|^2), |<z|0>|^2 = 1/1F1 (even), 1/(1F1 - 1) (odd); K-|J,a> = sqrt(J) e^{-ia}|J,a>, <J,a'|K+K-|J,a> = J e^{-i(a-a')}, |<J,a|0>|^2 = 1/1F1(J/4)",
        run: observables::c10_expectations,
    },
    ClaimDef {
        id: "C11",
        statement: "P_n(e) = |z|^{4n}/(4^{2n}(b)_{2n} 1F1), P_n(o) = |z|^{4n+1}/(4^{2n+1}(b)_{2n+1}(1F1 - 1)), P_n(GK) = J^n/(4^n (b)_n 1F1)",
        run: observables::c11_pnd,
    },
    ClaimDef {
        id: "C12",
        statement: "g_{z0}(z,t) closed forms with z0(t) = z0 e^{-2it}; g^GK with sqrt(J J0) e^{+-4it}",
        run: observables::c12_temporal_density,
    },
    ClaimDef {
        id: "C13",
        statement: "Toeplitz matrices A_z^e = 4 sum sqrt((gamma/2+2n)(gamma/2+2n-1)) |2n-2><2n|, A_{|z|^2}^e = 4 sum (gamma/2+2n+1)|2n><2n| and odd analogues; <A_z> = z^2",
        run: observables::c13_toeplitz_matrices,
    },
    ClaimDef {
        id: "C14",
        statement: "A_z = K-^2, A_zbar = K+^2, A_{|z|^2}^e = 2K0 + 4I, A_{|z|^2}^o = 2K0 + 8I",
        run: observables::c14_operator_identities,
    },
    ClaimDef {
        id: "C15",
        statement: "Z_e = e^{-2 beta gamma}/(1 - e^{-8 beta}), Z_o = e^{-2 beta (gamma+1)}/(1 - e^{-8 beta}), Z_GK = e^{-2 beta gamma}/(1 - e^{-4 beta})",
        run: thermal::c15_partition,
    },
    ClaimDef {
        id: "C16",
        statement: "Tr(rho (K-K+)^s) = 2(4e^{4 beta})^s sinh(e^{4 beta}) Gamma(b+s)/Gamma(b) 2F1(1, b+s; b; e^{4 beta}) and analogues",
        run: thermal::c16_thermal_moments,
    },
    ClaimDef {
        id: "C17",
        statement: "Tr(rho K-) = Tr(rho K+) = Tr(rho A_z) = Tr(rho A_zbar) = 0",
        run: thermal::c17_vanishing_means,
    },
    ClaimDef {
        id: "C18",
        statement: "Q_e = (1 - e^{-8 beta}) 1F1(e^{-4 beta}|z|^2/4)/1F1(|z|^2/4), Q_o with 1F1 - 1, Q_GK = (1 - e^{-4 beta}) 1F1(e^{-4 beta}J/4)/1F1(J/4)",
        run: thermal::c18_husimi,
    },
    ClaimDef {
        id: "C19",
        statement: "P = (1 - e^{-8 beta}) G(e^{-4 beta}|z|^2/4)/G(|z|^2/4) (BG), (1 - e^{-4 beta}) G(e^{-4 beta}J/4)/G(J/4) (GK), G = G^{2,0}_{1,2}(.|-1;-1,gamma/2)",
        run: thermal::c19_p_function,
    },
];

/// Every registered claim id in report order.
pub fn claim_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|d| d.id).collect()
}

/// Run the selected claims (all of them when `selection` is `None`) in
/// parallel; the report is ordered as the registry.
pub fn run_claims(selection: Option<&[String]>, config: &ClaimConfig) -> Result<Vec<ClaimReport>> {
    use rayon::prelude::*;
    config.validate()?;
    let chosen: Vec<&ClaimDef> = match selection {
        None => REGISTRY.iter().collect(),
        Some(ids) => {
            for id in ids {
                if !REGISTRY.iter().any(|d| d.id.eq_ignore_ascii_case(id)) {
                    return Err(Error::UnknownClaim(id.clone()));
                }
            }
            REGISTRY
                .iter()
                .filter(|d| ids.iter().any(|id| d.id.eq_ignore_ascii_case(id)))
                .collect()
        }
    };
    chosen
        .par_iter()
        .map(|def| {
            let out = (def.run)(config)?;
            Ok(out.tally.finish(def, config, out.verdict, out.notes))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_selection_gives_empty_report() {
        let r = run_claims(Some(&[]), &ClaimConfig::default()).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn unknown_id_is_rejected() {
        let e = run_claims(Some(&["C99".to_string()]), &ClaimConfig::default());
        assert!(matches!(e, Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn small_truncation_rejected() {
        let cfg = ClaimConfig {
            trunc: 4,
            ..ClaimConfig::default()
        };
        assert!(matches!(run_claims(None, &cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn registry_ids_are_sequential() {
        let ids = claim_ids();
        assert_eq!(ids.len(), 19);
        for (i, id) in ids.iter().enumerate() {
            assert_eq!(*id, format!("C{}", i + 1));
        }
    }

    #[test]
    fn verdict_follows_tolerance() {
        let mut t = Tally::default();
        t.residual(1e-3);
        t.point(&[("gamma", 2.0)]);
        let def = &REGISTRY[0];
        let strict = ClaimConfig::default();
        let loose = ClaimConfig {
            tol: 1.0,
            ..strict
        };
        let mut t2 = Tally::default();
        t2.residual(1e-3);
        assert_eq!(t.finish(def, &strict, None, String::new()).verdict, Verdict::Refuted);
        assert_eq!(t2.finish(def, &loose, None, String::new()).verdict, Verdict::Confirmed);
    }

    #[test]
    fn nan_residual_is_not_agreement() {
        let mut t = Tally::default();
        t.residual(f64::NAN);
        assert_eq!(
            t.finish(&REGISTRY[0], &ClaimConfig::default(), None, String::new()).verdict,
            Verdict::Refuted
        );
    }
}
