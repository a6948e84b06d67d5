use anyhow::{bail, Result};
use isocs::fock::{FockSpace, Sector};
use isocs::measures::{MeasureForm, RadialMeasure};
use isocs::states::{coherent_state, pnd as occupation, Family, NormMode, StateLabel};
use isocs::thermal::{husimi_q, ThermalParams};
use serde::Serialize;

use crate::num;

#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    fn values(&self) -> Result<Vec<f64>> {
        if !(self.min < self.max) || self.points < 2 || !self.min.is_finite() || !self.max.is_finite() {
            bail!(
                "grid needs min < max and at least 2 points (got [{}, {}], {})",
                self.min,
                self.max,
                self.points
            );
        }
        let h = (self.max - self.min) / (self.points - 1) as f64;
        Ok((0..self.points).map(|i| self.min + h * i as f64).collect())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| num(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

fn header(first: &str, what: &str, gammas: &[f64]) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain(gammas.iter().map(|g| format!("{what}(gamma={g})")))
        .collect()
}

/// W(|z|², γ) against |z|.
pub fn weights(gammas: &[f64], family: Family, printed: bool, grid: Grid) -> Result<Table> {
    if grid.min <= 0.0 {
        bail!("weights need a grid starting above 0");
    }
    let measures: Vec<RadialMeasure> = gammas
        .iter()
        .map(|&g| {
            let form = if printed {
                MeasureForm::meijer(family)
            } else {
                MeasureForm::elementary(family)
            };
            RadialMeasure::new(form, g)
        })
        .collect();
    let mut rows = Vec::new();
    for r in grid.values()? {
        let mut row = vec![r];
        for m in &measures {
            row.push(m.weight(r * r)?);
        }
        rows.push(row);
    }
    Ok(Table {
        columns: header("x", "W", gammas),
        rows,
    })
}

/// P_n of the state with radial label `radial` (|z|² or J), angle 0.
pub fn pnd(gammas: &[f64], family: Family, radial: f64, trunc: usize) -> Result<Table> {
    let mut cols = Vec::new();
    for &g in gammas {
        let space = FockSpace::new(g, trunc, Sector::Full)?;
        let st = coherent_state(StateLabel::from_polar(family, radial, 0.0), space, NormMode::Canonical)?;
        let col: Vec<f64> = (0..trunc)
            .filter(|&n| family.parity().contains(n))
            .map(|n| occupation(&st, n))
            .collect::<isocs::Result<_>>()?;
        cols.push(col);
    }
    let levels: Vec<usize> = (0..trunc).filter(|&n| family.parity().contains(n)).collect();
    let rows = levels
        .iter()
        .enumerate()
        .map(|(i, &n)| std::iter::once(n as f64).chain(cols.iter().map(|c| c[i])).collect())
        .collect();
    Ok(Table {
        columns: header("n", "P", gammas),
        rows,
    })
}

/// Q(x) = ⟨x|ρ|x⟩ against the radial label x.
pub fn husimi(gammas: &[f64], family: Family, beta: f64, grid: Grid) -> Result<Table> {
    let params: Vec<ThermalParams> = gammas
        .iter()
        .map(|&g| ThermalParams::new(beta, g))
        .collect::<isocs::Result<_>>()?;
    let mut rows = Vec::new();
    for x in grid.values()? {
        let mut row = vec![x];
        let l = StateLabel::from_polar(family, x, 0.0);
        for p in &params {
            row.push(husimi_q(family, *p, &l)?);
        }
        rows.push(row);
    }
    Ok(Table {
        columns: header("x", "Q", gammas),
        rows,
    })
}
