//! Deterministic rendering of the classical tables.
//!
//! Every table is rebuilt from the library on demand; nothing is stored.
//! Cells are plain strings in the canonical renderings used throughout the
//! crate: pairs as `(a,b)`, rationals as `p/q`, groups as `1`, `Z/2`, `Z`,
//! `Z x| Z/2`.  A `*` marks a perfect-square parameter, `-` an unsolvable
//! equation and `=` a nef cone equal to the movable cone.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_square_i64, render_rational};
use crate::autgroups::{fourfold_groups, AutError};
use crate::cones::{mov_slope_s2, nef_slope_s2, nef_solution_s2, unit_solution, walls_s2, ConeError};
use crate::pell::{generalized_positive_solutions, PellSolution};
use crate::periods::{excluded_heegner, HeegnerKey, PeriodsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("UnknownTable: {0}")]
    UnknownTable(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Periods(#[from] PeriodsError),
}

/// The reproducible tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    /// Nef and movable cones of `S^[2]` for `e = 1..13`.
    S2Cones,
    /// Walls of `Mov(S^[2])` for the `e ≤ 71` with distinct nef and movable cones.
    S2Walls,
    /// `Aut` and `Bir` of Picard-rank-2 fourfolds with `n = 3`, `e' = 2..11`.
    AutN3,
    /// Heegner divisors missed by the period map, `m = 4`.
    PeriodImageM4,
    /// Heegner divisors missed by the period map, `m = 8`.
    PeriodImageM8,
    /// Heegner divisors missed by the period map, `m = 12`.
    PeriodImageM12,
}

impl TableId {
    pub const ALL: [TableId; 6] = [
        TableId::S2Cones,
        TableId::S2Walls,
        TableId::AutN3,
        TableId::PeriodImageM4,
        TableId::PeriodImageM8,
        TableId::PeriodImageM12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::S2Cones => "s2-cones",
            TableId::S2Walls => "s2-walls",
            TableId::AutN3 => "aut-n3",
            TableId::PeriodImageM4 => "period-image-m4",
            TableId::PeriodImageM8 => "period-image-m8",
            TableId::PeriodImageM12 => "period-image-m12",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| ReportError::UnknownTable(s.to_string()))
    }
}

/// A rectangular table of rendered cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// The cells of the column with the given header.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }
}

/// Left-aligned columns separated by two spaces, with a dashed rule under
/// the header.  Trailing whitespace is trimmed from every line.
impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = |i: usize| {
            self.rows
                .iter()
                .map(|r| r[i].chars().count())
                .chain(std::iter::once(self.columns[i].chars().count()))
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.columns.len()).map(width).collect();
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                s.push_str(c);
                s.extend(std::iter::repeat_n(' ', widths[i] - c.chars().count()));
            }
            s.trim_end().to_string()
        };
        writeln!(f, "{}", line(&self.columns))?;
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        writeln!(f, "{}", line(&rule))?;
        for r in &self.rows {
            writeln!(f, "{}", line(r))?;
        }
        Ok(())
    }
}

/// Builds one of the reproducible tables.
pub fn build(id: TableId) -> Result<Table, ReportError> {
    match id {
        TableId::S2Cones => s2_cone_table(1..=13),
        TableId::S2Walls => s2_wall_table(&[5, 11, 19, 29, 31, 41, 55, 71]),
        TableId::AutN3 => fourfold_group_table(3, 2..=11),
        TableId::PeriodImageM4 => heegner_table(4, 1, 2),
        TableId::PeriodImageM8 => heegner_table(8, 1, 2),
        TableId::PeriodImageM12 => heegner_table(12, 1, 2),
    }
}

fn pair(s: &PellSolution) -> String {
    s.to_string()
}

fn join<T: AsRef<str>>(items: &[T]) -> String {
    items.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(", ")
}

/// Columns `e`, the minimal solutions of `a² − e·b² = 1` and
/// `a² − 4e·b² = 5`, and the slopes of the other extremal rays of the
/// movable and nef cones of `S^[2]`.
pub fn s2_cone_table(es: RangeInclusive<i64>) -> Result<Table, ReportError> {
    let mut t = Table::new(&["e", "P_e(1)", "P_4e(5)", "mov", "nef"]);
    for e in es {
        let square = is_square_i64(e);
        let mov = mov_slope_s2(e)?;
        let nef = nef_slope_s2(e)?;
        let unit = if square {
            "*".to_string()
        } else {
            unit_solution(e).map(|s| pair(&s)).unwrap_or_else(|| "-".into())
        };
        let five = if square {
            "*".to_string()
        } else {
            nef_solution_s2(e).map(|s| pair(&s)).unwrap_or_else(|| "-".into())
        };
        let nef_cell = if nef == mov { "=".to_string() } else { nef.to_string() };
        t.push(vec![e.to_string(), unit, five, mov.to_string(), nef_cell]);
    }
    Ok(t)
}

/// The positive solutions of `a² − 4e·b² = 5` whose rays `aL − 2eb·δ` lie
/// inside the movable cone of `S^[2]`, in increasing slope order.
pub fn s2_wall_solutions(e: i64) -> Result<Vec<PellSolution>, ReportError> {
    let mov = mov_slope_s2(e)?;
    if nef_solution_s2(e).is_none() {
        return Ok(vec![]);
    }
    let two_e = BigInt::from(2 * e);
    Ok(generalized_positive_solutions(1, 4 * e, 5)
        .map_while(|s| {
            let slope = BigRational::new(&two_e * &s.b, s.a.clone());
            (mov.cmp_rational(&slope) == std::cmp::Ordering::Greater).then_some(s)
        })
        .collect())
}

/// Columns `e`, the minimal unit, the wall-producing solutions of
/// `a² − 4e·b² = 5`, the movable slope and the wall slopes.
pub fn s2_wall_table(es: &[i64]) -> Result<Table, ReportError> {
    let mut t = Table::new(&["e", "P_e(1)", "P_4e(5)", "mov", "walls"]);
    for &e in es {
        let report = walls_s2(e)?;
        let unit = unit_solution(e).map(|s| pair(&s)).unwrap_or_else(|| "*".into());
        let sols: Vec<String> = s2_wall_solutions(e)?.iter().map(pair).collect();
        let walls: Vec<String> = report.interior_walls.slopes().iter().map(render_rational).collect();
        t.push(vec![
            e.to_string(),
            unit,
            if sols.is_empty() { "-".into() } else { join(&sols) },
            report.mov_slope.to_string(),
            if walls.is_empty() { "-".into() } else { join(&walls) },
        ]);
    }
    Ok(t)
}

/// Columns `e'`, `Aut` and `Bir` for Picard-rank-2 fourfolds with
/// polarization of square `2n` and divisibility 2.
pub fn fourfold_group_table(n: i64, e2s: RangeInclusive<i64>) -> Result<Table, ReportError> {
    let mut t = Table::new(&["e'", "Aut", "Bir"]);
    for e2 in e2s {
        let g = fourfold_groups(n, e2)?;
        t.push(vec![e2.to_string(), g.aut.to_string(), g.bir.to_string()]);
    }
    Ok(t)
}

/// Renders an element of a discriminant group as `(x1,x2,…)`.
pub fn render_star(star: &[u64]) -> String {
    let parts: Vec<String> = star.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// One row per Heegner-divisor component missed by the period map:
/// discriminant `d`, `κ_prim²`, divisibility in `h⊥` and the `±` class.
pub fn heegner_rows(keys: &[HeegnerKey]) -> Table {
    let mut t = Table::new(&["d", "kappa2", "div", "star"]);
    for k in keys {
        t.push(vec![
            k.d.to_string(),
            k.kappa_prim_sq.to_string(),
            k.s.to_string(),
            render_star(&k.star),
        ]);
    }
    t
}

/// The Heegner divisors missed by the period map for `(m, n, γ)`.
pub fn heegner_table(m: i64, n: i64, gamma: i64) -> Result<Table, ReportError> {
    Ok(heegner_rows(&excluded_heegner(m, n, gamma)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_ids_round_trip() {
        for id in TableId::ALL {
            assert_eq!(id.name().parse::<TableId>().unwrap(), id);
        }
        assert!(matches!("nope".parse::<TableId>(), Err(ReportError::UnknownTable(_))));
    }

    #[test]
    fn cone_row_for_thirteen() {
        let t = s2_cone_table(13..=13).unwrap();
        assert_eq!(t.rows[0], ["13", "(649,180)", "-", "2340/649", "="]);
    }

    #[test]
    fn wall_solutions_for_twenty_nine() {
        let sols: Vec<String> = s2_wall_solutions(29).unwrap().iter().map(pair).collect();
        assert_eq!(sols, ["(11,1)", "(2251,209)"]);
    }

    #[test]
    fn text_rendering_is_aligned() {
        let mut t = Table::new(&["a", "bb"]);
        t.push(vec!["100".into(), "x".into()]);
        assert_eq!(t.to_string(), "a    bb\n---  --\n100  x\n");
    }
}
