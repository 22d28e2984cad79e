//! CSV tables with a fixed column order and C-style `%.12e` floats.

use std::io::Write;

use num_rational::BigRational;

use crate::bounds::{BoundMethod, BoundReport, NormOrder};
use crate::error::Result;
use crate::expansion::ExpansionResult;
use crate::fem::{CeaReport, SavingsReport};
use crate::scalar::Real;

/// Formats like C's `%.12e`: 12 fractional digits, signed exponent with at
/// least two digits.
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn real<T: Real>(x: T) -> String {
    sci(x.to_f64().unwrap_or(f64::NAN))
}

fn opt_n(method: BoundMethod) -> String {
    method.panels().map(|n| n.to_string()).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvTable {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn header(&self) -> &[&'static str] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii csv")
    }
}

pub const CONSTANTS_HEADER: [&str; 6] = ["method", "p", "n", "constant_num", "constant_den", "constant_float"];

pub fn constants_row(method: BoundMethod, p: NormOrder, c: &BigRational) -> Vec<String> {
    vec![
        method.tag().into(),
        p.to_string(),
        opt_n(method),
        c.numer().to_string(),
        c.denom().to_string(),
        sci(f64::from_rational(c)),
    ]
}

pub const INTERP_HEADER: [&str; 10] = [
    "function",
    "mesh_kind",
    "num_cells",
    "h",
    "p",
    "method",
    "n",
    "measured",
    "bound",
    "ok",
];

pub fn interp_row<T: Real>(function: &str, mesh_kind: &str, num_cells: usize, r: &BoundReport<T>) -> Vec<String> {
    vec![
        function.into(),
        mesh_kind.into(),
        num_cells.to_string(),
        real(r.h),
        r.p.to_string(),
        r.method.tag().into(),
        opt_n(r.method),
        r.measured_error.map(real).unwrap_or_default(),
        real(r.bound),
        r.ok().map(|b| b.to_string()).unwrap_or_default(),
    ]
}

pub const FEM_HEADER: [&str; 10] = [
    "problem",
    "num_cells",
    "h",
    "p",
    "method",
    "fem_error",
    "interp_error",
    "bound",
    "cea",
    "ok",
];

pub fn fem_row<T: Real>(r: &CeaReport<T>) -> Vec<String> {
    vec![
        r.problem.clone(),
        r.num_cells.to_string(),
        real(r.h),
        r.p.to_string(),
        r.method.to_string(),
        real(r.fem_error),
        real(r.interp_error),
        real(r.fem_bound()),
        real(r.cea.value()),
        r.ok.to_string(),
    ]
}

pub const EXPANSION_HEADER: [&str; 11] = [
    "function",
    "mesh_kind",
    "cell",
    "x_i",
    "h_i",
    "method",
    "n",
    "increment",
    "remainder",
    "bound",
    "ok",
];

/// `method` is `taylor` (with empty `n`) or `taylor_like`.
#[allow(clippy::too_many_arguments)]
pub fn expansion_row<T: Real>(
    function: &str,
    mesh_kind: &str,
    cell: usize,
    x_i: T,
    h_i: T,
    n: Option<usize>,
    r: &ExpansionResult<T>,
    ok: bool,
) -> Vec<String> {
    vec![
        function.into(),
        mesh_kind.into(),
        cell.to_string(),
        real(x_i),
        real(h_i),
        if n.is_some() { "taylor_like" } else { "taylor" }.into(),
        n.map(|n| n.to_string()).unwrap_or_default(),
        real(r.increment),
        real(r.remainder),
        real(r.bound),
        ok.to_string(),
    ]
}

pub const ASYMPTOTIC_HEADER: [&str; 7] = [
    "p",
    "n",
    "constant_num",
    "constant_den",
    "constant_float",
    "asymptotic_float",
    "gap",
];

pub fn asymptotic_row(
    p: NormOrder,
    n: u64,
    finite: &BigRational,
    asymptotic: &BigRational,
    gap: &BigRational,
) -> Vec<String> {
    vec![
        p.to_string(),
        n.to_string(),
        finite.numer().to_string(),
        finite.denom().to_string(),
        sci(f64::from_rational(finite)),
        sci(f64::from_rational(asymptotic)),
        sci(f64::from_rational(gap)),
    ]
}

pub const SAVINGS_HEADER: [&str; 17] = [
    "p",
    "dim",
    "coarse_method",
    "fine_method",
    "constant_ratio",
    "h_ratio",
    "node_factor",
    "target",
    "cea",
    "coarse_cells",
    "fine_cells",
    "empirical_h_ratio",
    "empirical_node_factor",
    "coarse_bound",
    "fine_bound",
    "coarse_fem_error",
    "fine_fem_error",
];

pub fn savings_row<T: Real>(r: &SavingsReport<T>) -> Vec<String> {
    vec![
        r.p.to_string(),
        r.dim.to_string(),
        r.coarse_method.tag().into(),
        r.fine_method.tag().into(),
        r.theory.constant_ratio.to_string(),
        real(r.theory.h_ratio),
        real(r.theory.node_factor),
        real(r.target),
        real(r.cea.value()),
        r.coarse_cells.to_string(),
        r.fine_cells.to_string(),
        real(r.h_ratio),
        real(r.node_factor),
        real(r.coarse_bound),
        real(r.fine_bound),
        r.coarse_fem_error.map(real).unwrap_or_default(),
        r.fine_fem_error.map(real).unwrap_or_default(),
    ]
}
