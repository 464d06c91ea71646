//! Published reference tables, embedded from `data/`, and the rows this crate
//! computes for the same `q` grid.

use crate::constants::{c_of_q, im_dozz_at_q, kappa_from_q};
use crate::error::Result;

const TABLE1_CSV: &str = include_str!("../data/table1.csv");
const TABLE2_CSV: &str = include_str!("../data/table2.csv");

/// One column of the reference table of `kappa`, `C(q)` and ImDOZZ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub q: f64,
    pub kappa: f64,
    pub c: f64,
    pub imdozz: f64,
}

/// One column of the reference comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Row {
    pub q: f64,
    pub r_num: f64,
    /// Quoted one-sigma uncertainty on `r_num`; zero where none is quoted.
    pub r_num_sigma: f64,
    /// Printed `(C(q)/sqrt(q)) * ImDOZZ`.
    pub exact: f64,
}

fn data_lines(csv: &str) -> impl Iterator<Item = Vec<&str>> {
    csv.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::trim).collect())
}

fn parse_cell(cell: &str) -> f64 {
    match cell {
        "2sqrt2" => 2.0 * std::f64::consts::SQRT_2,
        s => s
            .parse()
            .unwrap_or_else(|_| panic!("malformed table cell {s:?}")),
    }
}

/// The 13 reference columns of the `kappa`/`C(q)`/ImDOZZ table.
pub fn table1() -> Vec<Table1Row> {
    data_lines(TABLE1_CSV)
        .map(|c| Table1Row {
            q: parse_cell(c[0]),
            kappa: parse_cell(c[1]),
            c: parse_cell(c[2]),
            imdozz: parse_cell(c[3]),
        })
        .collect()
}

/// The 13 reference columns of the three-point ratio comparison.
pub fn table2() -> Vec<Table2Row> {
    data_lines(TABLE2_CSV)
        .map(|c| Table2Row {
            q: parse_cell(c[0]),
            r_num: parse_cell(c[1]),
            r_num_sigma: parse_cell(c[2]),
            exact: parse_cell(c[3]),
        })
        .collect()
}

/// The `q` grid shared by both tables.
pub fn q_grid() -> Vec<f64> {
    table1().iter().map(|r| r.q).collect()
}

/// Computes `kappa`, `C(q)` and ImDOZZ at `(alpha0, alpha0, alpha0)`.
pub fn compute_table1_row(q: f64) -> Result<Table1Row> {
    Ok(Table1Row {
        q,
        kappa: kappa_from_q(q)?,
        c: c_of_q(q)?,
        imdozz: im_dozz_at_q(q)?,
    })
}

/// `(C(q)/sqrt(q)) * ImDOZZ`.
pub fn compute_ratio(q: f64) -> Result<f64> {
    Ok(c_of_q(q)? / q.sqrt() * im_dozz_at_q(q)?)
}

/// Whether `value` lies in `r_num +- 3 sigma`. Rows without a quoted
/// uncertainty require agreement to the printed precision.
pub fn within_three_sigma(row: &Table2Row, value: f64) -> bool {
    let half_width = if row.r_num_sigma > 0.0 {
        3.0 * row.r_num_sigma
    } else {
        5e-7
    };
    (value - row.r_num).abs() <= half_width
}
