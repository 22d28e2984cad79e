use std::num::NonZeroU64;

use anyhow::{bail, Result};
use rayon::prelude::*;

use p1lab_core::bounds::{asymptotic_gap, constant, BoundMethod, NormOrder};
use p1lab_core::expansion::{taylor_like_step, taylor_step};
use p1lab_core::fem::{cea_chain, savings_experiment, CeaConstant};
use p1lab_core::function::Preset;
use p1lab_core::interp::{bound_for_measured, error_norm_1p, interpolate};
use p1lab_core::report::{self, CsvTable};
use p1lab_core::{Mesh, Report};

use crate::args::{AsymptoticArgs, Command, ConstantsArgs, ExpansionArgs, FemArgs, InterpArgs, SavingsArgs};

const EXPANSION_SLACK: f64 = 1e-12;

/// What a subcommand produced: the CSV, the rows that broke an assertion
/// and human-readable notes for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub table: CsvTable,
    pub violations: Vec<String>,
    pub summary: Vec<String>,
}

impl Outcome {
    fn new(header: &[&'static str]) -> Self {
        Self {
            table: CsvTable::new(header),
            violations: Vec::new(),
            summary: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>, ok: bool) {
        if !ok {
            self.violations.push(row.join(","));
        }
        self.table.push(row);
    }
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Constants(a) => constants(a),
        Command::Expansion(a) => expansion(a),
        Command::Interp(a) => interp(a),
        Command::Asymptotic(a) => asymptotic(a),
        Command::Fem(a) => fem(a),
        Command::Savings(a) => savings(a),
    }
}

fn orders(ps: &[u32]) -> Result<Vec<NormOrder>> {
    Ok(ps
        .iter()
        .map(|&p| NormOrder::new(p))
        .collect::<p1lab_core::Result<_>>()?)
}

fn build_mesh(kind: &str, cells: usize, amplitude: f64, seed: u64) -> Result<Mesh> {
    Ok(match kind {
        "uniform" => Mesh::uniform(cells)?,
        _ => Mesh::perturbed(cells, amplitude, seed)?,
    })
}

fn presets(chosen: &[Preset]) -> Vec<Preset> {
    if chosen.is_empty() {
        Preset::ALL.to_vec()
    } else {
        chosen.to_vec()
    }
}

fn all_methods() -> Vec<BoundMethod> {
    let mut m = vec![BoundMethod::Taylor, BoundMethod::MeanValue];
    m.extend([1, 2, 4, 8].map(|n| BoundMethod::taylor_like(n).expect("positive")));
    m.push(BoundMethod::TaylorLikeAsymptotic);
    m
}

fn constants(a: &ConstantsArgs) -> Result<Outcome> {
    let mut out = Outcome::new(&report::CONSTANTS_HEADER);
    let mut methods = vec![BoundMethod::Taylor, BoundMethod::MeanValue];
    for &n in &a.n {
        methods.push(BoundMethod::taylor_like(n)?);
    }
    methods.push(BoundMethod::TaylorLikeAsymptotic);
    for p in orders(&a.p)? {
        let mut line = format!("p = {p}:");
        for &m in &methods {
            let c = constant(m, p);
            line += &format!(" {m} {c}");
            out.push(report::constants_row(m, p, &c), true);
        }
        out.summary.push(line);
    }
    Ok(out)
}

fn expansion(a: &ExpansionArgs) -> Result<Outcome> {
    let mut out = Outcome::new(&report::EXPANSION_HEADER);
    if a.n.contains(&0) {
        bail!("--n: panel counts must be positive");
    }
    for preset in presets(&a.function) {
        let f = preset.build::<f64>();
        for &kind in a.mesh.mesh.kinds() {
            let mesh = build_mesh(kind, a.cells, a.mesh.amplitude, a.mesh.seed)?;
            let mut worst = 0.0f64;
            for c in 0..mesh.num_cells() {
                let (x, _) = mesh.cell(c)?;
                let h = mesh.width(c)?;
                let t = taylor_step(&f, x, h)?;
                let ok = t.contained(EXPANSION_SLACK);
                out.push(report::expansion_row(f.name(), kind, c, x, h, None, &t, ok), ok);
                for &n in &a.n {
                    let e = taylor_like_step(&f, x, h, n)?;
                    if e.bound > 0.0 {
                        worst = worst.max(e.remainder.abs() / e.bound);
                    }
                    let ok = e.contained(EXPANSION_SLACK);
                    out.push(report::expansion_row(f.name(), kind, c, x, h, Some(n), &e, ok), ok);
                }
            }
            out.summary.push(format!(
                "{} on {kind} mesh: largest Taylor-like |remainder|/bound = {worst:.4}",
                f.name()
            ));
        }
    }
    Ok(out)
}

fn interp(a: &InterpArgs) -> Result<Outcome> {
    let quad = a.quad.spec()?;
    let methods = if a.method.is_empty() {
        all_methods()
    } else {
        a.method.clone()
    };
    let mut grid = Vec::new();
    for preset in presets(&a.function) {
        for &kind in a.mesh.mesh.kinds() {
            for &cells in &a.cells {
                for p in orders(&a.p)? {
                    grid.push((preset, kind, cells, p));
                }
            }
        }
    }
    let results: Vec<Result<Vec<Report>>> = grid
        .par_iter()
        .map(|&(preset, kind, cells, p)| {
            let f = preset.build::<f64>();
            let mesh = build_mesh(kind, cells, a.mesh.amplitude, a.mesh.seed)?;
            let measured = error_norm_1p(&f, &interpolate(&f, &mesh), p, quad);
            methods
                .iter()
                .map(|&m| Ok(bound_for_measured(&f, &mesh, p, m, measured)?))
                .collect()
        })
        .collect();

    let mut out = Outcome::new(&report::INTERP_HEADER);
    let mut tightest = f64::INFINITY;
    for (&(preset, kind, cells, _), reports) in grid.iter().zip(results) {
        for r in reports? {
            let ok = r.ok() == Some(true);
            if let Some(m) = r.measured_error {
                // affine functions: zero bound, round-off measurement
                if m > 1e-12 {
                    tightest = tightest.min(r.bound / m);
                }
            }
            out.push(report::interp_row(preset.name(), kind, cells, &r), ok);
        }
    }
    out.summary.push(format!(
        "{} bounds checked, {} violated; smallest bound/measured = {tightest:.4}",
        out.table.rows().len(),
        out.violations.len()
    ));
    Ok(out)
}

fn asymptotic(a: &AsymptoticArgs) -> Result<Outcome> {
    let mut out = Outcome::new(&report::ASYMPTOTIC_HEADER);
    for p in orders(&a.p)? {
        let limit = constant(BoundMethod::TaylorLikeAsymptotic, p);
        for &n in &a.n {
            let Some(nz) = NonZeroU64::new(n) else {
                bail!("--n: panel counts must be positive");
            };
            let finite = constant(BoundMethod::TaylorLikeFinite(nz), p);
            let gap = asymptotic_gap(p, nz);
            out.push(report::asymptotic_row(p, n, &finite, &limit, &gap), true);
        }
        out.summary.push(format!("p = {p}: limit {limit}"));
    }
    Ok(out)
}

fn fem(a: &FemArgs) -> Result<Outcome> {
    let quad = a.quad.spec()?;
    let cea = CeaConstant::new(a.cea)?;
    let mut grid = Vec::new();
    for &problem in &a.problem {
        for &kind in a.mesh.kinds() {
            for p in orders(&a.p)? {
                for &method in &a.method {
                    for &cells in &a.cells {
                        grid.push((problem, kind, p, method, cells));
                    }
                }
            }
        }
    }
    let results: Vec<Result<_>> = grid
        .par_iter()
        .map(|&(problem, kind, p, method, cells)| {
            let mesh = build_mesh(kind, cells, a.amplitude, a.seed)?;
            Ok(cea_chain(&problem.build::<f64>(), &mesh, p, cea, method, quad)?)
        })
        .collect();

    let mut out = Outcome::new(&report::FEM_HEADER);
    let mut prev: Option<(usize, f64, f64)> = None;
    for (i, r) in results.into_iter().enumerate() {
        let r = r?;
        let (problem, kind, p, method, _) = grid[i];
        // consecutive rows of one sweep share everything but the cell count
        let same_sweep = i > 0 && {
            let (q, k, pp, m, _) = grid[i - 1];
            (q, k, pp, m) == (problem, kind, p, method)
        };
        if same_sweep && r.fem_error > 0.0 {
            if let Some((n0, h0, e0)) = prev {
                let rate = (e0 / r.fem_error).ln() / (h0 / r.h).ln();
                out.summary.push(format!(
                    "{problem} {kind} p={p} {method}: {n0} -> {} cells, W^1,p rate {rate:.3}",
                    r.num_cells
                ));
            }
        }
        prev = Some((r.num_cells, r.h, r.fem_error));
        out.push(report::fem_row(&r), r.ok);
    }
    Ok(out)
}

fn savings(a: &SavingsArgs) -> Result<Outcome> {
    let quad = a.quad.spec()?;
    let cea = CeaConstant::new(a.cea)?;
    let problem = a.problem.build::<f64>();
    let mut out = Outcome::new(&report::SAVINGS_HEADER);
    let rel = 1.0 + 1e-10;
    for p in orders(&a.p)? {
        let r = savings_experiment(&problem, p, a.target, a.dim, cea, quad)?;
        let t = &r.theory;
        out.summary.push(format!(
            "p = {p}, dim = {}: constant ratio {}, h_ratio = {:.4}, node_factor = {:.2} ({})",
            a.dim,
            t.constant_ratio,
            t.h_ratio,
            t.node_factor,
            t.note()
        ));
        let mut ok = true;
        if r.saturated {
            out.summary.push(format!(
                "p = {p}: target {} not reachable with at most {} cells",
                a.target,
                p1lab_core::fem::MAX_SAVINGS_CELLS
            ));
        } else {
            ok &= r.coarse_bound <= a.target * rel && r.fine_bound <= a.target * rel;
            ok &= r.coarse_fem_error.is_none_or(|e| e <= r.coarse_bound * rel);
            ok &= r.fine_fem_error.is_none_or(|e| e <= r.fine_bound * rel);
            out.summary.push(format!(
                "p = {p}: {} cells ({}) vs {} cells ({}), empirical h_ratio = {:.4}, node_factor = {:.2}",
                r.coarse_cells,
                r.coarse_method.tag(),
                r.fine_cells,
                r.fine_method.tag(),
                r.h_ratio,
                r.node_factor
            ));
        }
        out.push(report::savings_row(&r), ok);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_rows_are_recorded() {
        let mut o = Outcome::new(&["a", "ok"]);
        o.push(vec!["1".into(), "true".into()], true);
        o.push(vec!["2".into(), "false".into()], false);
        assert_eq!(o.table.rows().len(), 2);
        assert_eq!(o.violations, ["2,false"]);
    }

    #[test]
    fn default_method_list() {
        let names: Vec<String> = all_methods().iter().map(ToString::to_string).collect();
        assert_eq!(names.len(), 7);
        assert!(names.contains(&"taylor_like(8)".to_string()));
    }
}
