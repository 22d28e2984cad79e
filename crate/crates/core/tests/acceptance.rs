//! Exit criteria. Each criterion prints one PASS/FAIL line with its runtime;
//! the test fails if any criterion fails or exceeds its time budget.
//!
//! Run with `cargo test -p p1lab-core --test acceptance`.

use std::num::NonZeroU64;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use p1lab_core::bounds::{asymptotic_gap, constant, mesh_savings, power_sum, power_sum_pascal, BoundMethod, NormOrder};
use p1lab_core::expansion::{taylor_like_step, taylor_step};
use p1lab_core::fem::{cea_chain, savings_experiment, CeaConstant, ProblemPreset};
use p1lab_core::function::Preset;
use p1lab_core::interp::verify_bound;
use p1lab_core::quadrature::QuadratureSpec;
use p1lab_core::scalar::Real;
use p1lab_core::{interp, Mesh};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn p(v: u32) -> NormOrder {
    NormOrder::new(v).unwrap()
}

fn r(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tl(n: u64) -> BoundMethod {
    BoundMethod::taylor_like(n).unwrap()
}

fn ac1_constants() -> Check {
    let table = [
        (BoundMethod::Taylor, 2, r(7, 6)),
        (BoundMethod::MeanValue, 2, r(1, 3)),
        (BoundMethod::TaylorLikeAsymptotic, 2, r(1, 6)),
        (BoundMethod::Taylor, 5, r(19, 6)),
        (BoundMethod::MeanValue, 5, r(1, 6)),
        (BoundMethod::TaylorLikeAsymptotic, 5, r(1, 21)),
    ];
    for (m, pv, expect) in table {
        let got = constant(m, p(pv));
        ensure(got == expect, || format!("{m} p={pv}: {got} != {expect}"))?;
    }
    Ok(())
}

fn ac2_finite_constants() -> Check {
    let c2 = constant(tl(2), p(2));
    ensure(c2 == r(1, 4), || format!("C_2(p=2) = {c2}"))?;
    let c5 = constant(tl(2), p(5));
    ensure(c5 == r(1, 8), || format!("C_2(p=5) = {c5}"))?;
    let root2 = f64::from_rational(&c2).sqrt();
    ensure(root2 == 0.5, || format!("sqrt(1/4) = {root2}"))?;
    let root5 = f64::from_rational(&c5).powf(0.2);
    ensure((0.659..=0.661).contains(&root5), || format!("(1/8)^(1/5) = {root5}"))
}

fn ac3_ratio_law() -> Check {
    for pv in 2..=12 {
        let a = constant(BoundMethod::TaylorLikeAsymptotic, p(pv));
        let m = constant(BoundMethod::MeanValue, p(pv));
        ensure(&a / &m == r(2, pv as i64 + 2), || format!("ratio at p={pv}"))?;
        let t = constant(BoundMethod::Taylor, p(pv));
        ensure(t > BigRational::one(), || format!("Taylor constant {t} <= 1 at p={pv}"))?;
    }
    Ok(())
}

fn ac4_power_sums() -> Check {
    for pv in 0..=10u32 {
        for n in 0..=200u64 {
            ensure(power_sum_pascal(pv, n) == power_sum(pv, n), || format!("S_{pv}({n})"))?;
        }
    }
    for pv in 1..=8u32 {
        for n in [100u64, 1_000, 10_000] {
            let s = BigRational::from_integer(BigInt::from(power_sum(pv, n)));
            let scaled = s * r(pv as i64 + 1, 1) / BigRational::from_integer(BigInt::from(n).pow(pv + 1));
            let upper = BigRational::one() + r(pv as i64 + 1, n as i64);
            ensure(scaled >= BigRational::one() && scaled <= upper, || {
                format!(
                    "(p+1) S_p(n)/n^(p+1) = {} at p={pv}, n={n}",
                    f64::from_rational(&scaled)
                )
            })?;
        }
    }
    Ok(())
}

fn ac5_asymptotic() -> Check {
    let n = NonZeroU64::new(100_000).unwrap();
    for pv in [2, 3, 5, 8] {
        let gap = f64::from_rational(&asymptotic_gap(p(pv), n));
        ensure(gap.abs() < 1e-3, || format!("gap(p={pv}, 1e5) = {gap:e}"))?;
    }
    Ok(())
}

fn ac6_remainders() -> Check {
    let meshes = [Mesh::uniform(16).unwrap(), Mesh::perturbed(16, 0.3, 1).unwrap()];
    for f in Preset::ALL.map(Preset::build::<f64>) {
        for mesh in &meshes {
            for c in 0..mesh.num_cells() {
                let (x, _) = mesh.cell(c).unwrap();
                let h = mesh.width(c).unwrap();
                let t = taylor_step(&f, x, h).map_err(|e| e.to_string())?;
                ensure(t.remainder.abs() <= h / 2.0 * f.sup_d2() + 1e-12, || {
                    format!("Taylor {} cell {c}: {t:?}", f.name())
                })?;
                for n in 1..=8 {
                    let e = taylor_like_step(&f, x, h, n).map_err(|e| e.to_string())?;
                    let bound = h / (8.0 * n as f64) * (f.max_d2() - f.min_d2());
                    ensure(e.remainder.abs() <= bound + 1e-12, || {
                        format!("Taylor-like {} cell {c} n={n}: {e:?}", f.name())
                    })?;
                }
            }
        }
    }
    let cubic = Preset::Cubic.build::<f64>();
    let e1 = taylor_like_step(&cubic, 0.0, 1.0, 1).unwrap().remainder;
    let e2 = taylor_like_step(&cubic, 0.0, 1.0, 2).unwrap().remainder;
    ensure(e1 == -0.5 && e2 == -0.125, || format!("cubic spot values {e1}, {e2}"))
}

fn ac7_domination() -> Check {
    let quad = QuadratureSpec::default();
    let mut methods = vec![
        BoundMethod::Taylor,
        BoundMethod::MeanValue,
        BoundMethod::TaylorLikeAsymptotic,
    ];
    methods.extend([1, 2, 4, 8].map(tl));
    let mut checked = 0;
    for f in Preset::ALL.map(Preset::build::<f64>) {
        for cells in [4usize, 8, 16, 32, 64, 128] {
            for mesh in [Mesh::uniform(cells).unwrap(), Mesh::perturbed(cells, 0.3, 1).unwrap()] {
                for pv in [2, 3, 5] {
                    for &m in &methods {
                        let rep = verify_bound(&f, &mesh, p(pv), m, quad).map_err(|e| e.to_string())?;
                        ensure(rep.ok() == Some(true), || {
                            format!(
                                "{} cells={cells} uniform={} p={pv} {m}: measured {:?} > bound {}",
                                f.name(),
                                mesh.is_uniform(),
                                rep.measured_error,
                                rep.bound
                            )
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    ensure(checked == 6 * 6 * 2 * 3 * 7, || {
        format!("only {checked} configurations")
    })?;

    let u = Preset::Quadratic.build::<f64>();
    let mesh = Mesh::uniform(10).unwrap();
    let d = interp::error_norm_d1_0p(&u, &interp::interpolate(&u, &mesh), p(2), quad).powi(2);
    ensure((d - 1.0 / 300.0).abs() <= 1e-10 / 300.0, || {
        format!("||u' - u_I'||^2 = {d}")
    })
}

fn ac8_fem_chain() -> Check {
    let quad = QuadratureSpec::default();
    let prob = ProblemPreset::SinPi.build::<f64>();
    for cells in [8, 16, 32, 64] {
        let rep = cea_chain(
            &prob,
            &Mesh::uniform(cells).unwrap(),
            p(2),
            CeaConstant::one(),
            BoundMethod::Taylor,
            quad,
        )
        .map_err(|e| e.to_string())?;
        ensure(rep.fem_error <= rep.interp_error + 1e-9, || {
            format!("cells={cells}: fem {} > interp {}", rep.fem_error, rep.interp_error)
        })?;
        ensure(rep.ok, || format!("cells={cells}: chain not ok: {rep:?}"))?;
    }
    let sizes = [16usize, 32, 64, 128];
    let mut errs = Vec::new();
    for &cells in &sizes {
        let rep = cea_chain(
            &prob,
            &Mesh::uniform(cells).unwrap(),
            p(2),
            CeaConstant::one(),
            BoundMethod::Taylor,
            quad,
        )
        .map_err(|e| e.to_string())?;
        errs.push(rep.fem_error);
    }
    for (w, s) in errs.windows(2).zip(sizes.windows(2)) {
        let slope = (w[0] / w[1]).ln() / (s[1] as f64 / s[0] as f64).ln();
        ensure((0.9..=1.1).contains(&slope), || {
            format!("slope {slope} between {} and {} cells", s[0], s[1])
        })?;
    }
    Ok(())
}

fn ac9_savings() -> Check {
    let s2 = mesh_savings::<f64>(p(2), BoundMethod::TaylorLikeAsymptotic, BoundMethod::Taylor, 3).unwrap();
    ensure(s2.constant_ratio == r(7, 1), || {
        format!("constant ratio {}", s2.constant_ratio)
    })?;
    ensure((s2.h_ratio - 7f64.sqrt()).abs() < 1e-14, || {
        format!("h_ratio {}", s2.h_ratio)
    })?;
    ensure((18.0..=19.0).contains(&s2.node_factor), || {
        format!("node factor {}", s2.node_factor)
    })?;

    let s5 = mesh_savings::<f64>(p(5), BoundMethod::TaylorLikeAsymptotic, BoundMethod::Taylor, 3).unwrap();
    ensure((2.30..=2.33).contains(&s5.h_ratio), || {
        format!("p=5 h_ratio {}", s5.h_ratio)
    })?;
    ensure((12.0..=12.8).contains(&s5.node_factor), || {
        format!("p=5 node factor {}", s5.node_factor)
    })?;

    let quad = QuadratureSpec::default();
    let prob = ProblemPreset::SinPi.build::<f64>();
    let e2 = savings_experiment(&prob, p(2), 0.01, 3, CeaConstant::one(), quad).map_err(|e| e.to_string())?;
    ensure(!e2.saturated, || "p=2 experiment saturated".into())?;
    let rel = (e2.h_ratio - s2.h_ratio).abs() / s2.h_ratio;
    ensure(rel <= 0.10, || {
        format!("p=2 empirical h_ratio {} vs {}", e2.h_ratio, s2.h_ratio)
    })?;

    let e5 = savings_experiment(&prob, p(5), 0.01, 3, CeaConstant::one(), quad).map_err(|e| e.to_string())?;
    ensure(!e5.saturated, || "p=5 experiment saturated".into())?;
    let rel = (e5.node_factor - 12.4).abs() / 12.4;
    ensure(rel <= 0.15, || format!("p=5 empirical node factor {}", e5.node_factor))?;
    // every mesh must actually meet the target under its own bound
    for e in [&e2, &e5] {
        ensure(e.coarse_bound <= e.target && e.fine_bound <= e.target, || {
            format!("{e:?}")
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 constants table exactness", Duration::from_secs(1), ac1_constants),
        ("AC2 finite-n constants", Duration::from_secs(1), ac2_finite_constants),
        ("AC3 ratio law 2/(p+2)", Duration::from_secs(5), ac3_ratio_law),
        (
            "AC4 Pascal recursion and power-sum asymptotics",
            Duration::from_secs(5),
            ac4_power_sums,
        ),
        ("AC5 asymptotic convergence", Duration::from_secs(5), ac5_asymptotic),
        ("AC6 remainder containment", Duration::from_secs(5), ac6_remainders),
        ("AC7 bound domination", Duration::from_secs(120), ac7_domination),
        ("AC8 FEM chain", Duration::from_secs(30), ac8_fem_chain),
        ("AC9 mesh savings", Duration::from_secs(60), ac9_savings),
    ];
    let mut failures = Vec::new();
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome =
            outcome.and_then(|()| ensure(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}")));
        match &outcome {
            Ok(()) => println!("PASS {name} ({:.3}s)", elapsed.as_secs_f64()),
            Err(msg) => {
                println!("FAIL {name} ({:.3}s): {msg}", elapsed.as_secs_f64());
                failures.push(name);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
