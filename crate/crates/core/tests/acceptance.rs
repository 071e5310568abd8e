//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use extk::cubic::{CubicParams, RootStructure};
use extk::germ::{make_einstein, make_generic, GermEvaluator, GermSpec};
use extk::moduli::{chart, chart_generic_inv, fifth_invariant_estimate, hcmu_class, psi_inv, ModuliCoords};
use extk::numcheck::{curvature_fd, verify_metric, Perturbed, Tolerances, VerificationReport};
use extk::sampling::{rng, sample_generic, sample_specs, ChartBox, SampleKind};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

const SUITE_SEED: u64 = 2024;
const GRID_POINTS: usize = 64;
const GRID_FRACTION: f64 = 0.5;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sampled_reports() -> Vec<(GermSpec, VerificationReport)> {
    let mut out = Vec::new();
    for kind in [SampleKind::Generic, SampleKind::Exceptional] {
        for spec in sample_specs(kind, 50, SUITE_SEED, &ChartBox::default()).unwrap() {
            let ev = GermEvaluator::new(spec).unwrap();
            let report = verify_metric(
                &ev,
                GRID_FRACTION * ev.domain_radius(),
                GRID_POINTS,
                None,
                Tolerances::default(),
            )
            .unwrap();
            out.push((spec, report));
        }
    }
    out
}

fn extremal_condition(reports: &[(GermSpec, VerificationReport)], elapsed: Duration) -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    for (spec, r) in reports {
        check(
            r.max_holomorphy_residual < 1e-4 && r.max_curvature_residual < 1e-4,
            || format!("{}: {r:?}", spec.to_json()),
        )?;
        worst.0 = worst.0.max(r.max_holomorphy_residual);
        worst.1 = worst.1.max(r.max_curvature_residual);
    }
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} germs, max |dF/dz̄| {:.1e}, max |K_fd - K| {:.1e}, {:.2?}",
        reports.len(),
        worst.0,
        worst.1,
        elapsed
    ))
}

fn gradient_model(reports: &[(GermSpec, VerificationReport)]) -> Outcome {
    let mut worst = 0.0f64;
    for (spec, r) in reports {
        check(r.max_model_residual < 1e-4, || format!("{}: {r:?}", spec.to_json()))?;
        worst = worst.max(r.max_model_residual);
    }
    Ok(format!("max normalized |F - F_model| {worst:.1e}"))
}

fn lambda_specs() -> Vec<GermSpec> {
    let bounds = ChartBox {
        log_lambda: (0.01f64.ln(), 100f64.ln()),
        ..ChartBox::default()
    };
    sample_specs(SampleKind::Exceptional, 20, SUITE_SEED + 3, &bounds).unwrap()
}

fn fifth_invariant() -> Outcome {
    let mut worst = 0.0f64;
    for spec in lambda_specs() {
        let ev = GermEvaluator::new(spec).unwrap();
        let r = ev.domain_radius();
        let est = fifth_invariant_estimate(&ev, &[0.1 * r, 0.05 * r, 0.02 * r, 0.01 * r])
            .map_err(|e| e.to_string())?;
        let GermSpec::Exceptional(x) = spec else { unreachable!() };
        let rel = (est / x.lambda() - 1.0).abs();
        check(rel < 0.01, || format!("{}: estimate {est}", spec.to_json()))?;
        worst = worst.max(rel);
    }
    Ok(format!("20 germs, max relative error {worst:.1e}"))
}

fn min_max_dichotomy() -> Outcome {
    let mut r = rng(SUITE_SEED + 4);
    let mut worst = f64::INFINITY;
    for spec in lambda_specs() {
        let ev = GermEvaluator::new(spec).unwrap();
        let sign = spec.sigma().unwrap().signum();
        for _ in 0..1000 {
            let rad = ev.domain_radius() * r.gen::<f64>().sqrt();
            let z = Complex64::from_polar(rad, r.gen_range(0.0..std::f64::consts::TAU));
            let v = sign * (ev.curvature_at(z).map_err(|e| e.to_string())? - spec.k0());
            check(v >= -1e-12, || format!("{} at {z}: {v}", spec.to_json()))?;
            worst = worst.min(v);
        }
    }
    Ok(format!("20000 points, min sgn(σ)(K - K0) {worst:.1e}"))
}

/// `|D|` within `1e-7` of the scale of its terms counts as `D ≈ 0`.
fn near_degenerate(c: f64, cp: f64) -> bool {
    let d = 27.0 * (4.0 * c * c * c - 9.0 * cp * cp);
    d.abs() <= 1e-7 * (108.0 * c.abs().powi(3) + 243.0 * cp * cp)
}

fn cardano_oracle() -> Outcome {
    let mut r = rng(SUITE_SEED + 5);
    let pairs: Vec<(f64, f64)> = (0..10_000)
        .map(|_| (r.gen_range(-10.0..10.0), r.gen_range(-10.0..10.0)))
        .collect();
    let excluded = pairs.iter().filter(|(c, cp)| near_degenerate(*c, *cp)).count();
    let worst = pairs
        .par_iter()
        .filter(|(c, cp)| !near_degenerate(*c, *cp))
        .map(|&(c, cp)| {
            let cubic = CubicParams::new(c, cp).unwrap();
            let oracle = common::sign_change_roots(c, cp, 50_000);
            let structure = cubic.root_structure();
            let expected = matches!(structure, RootStructure::ThreeDistinctReal { .. });
            if expected != (oracle.len() == 3) || (!expected && oracle.len() != 1) {
                return Err(format!("({c}, {cp}): {structure:?} vs oracle {oracle:?}"));
            }
            let roots = structure.real_roots();
            let mut residual = 0.0f64;
            for (a, b) in roots.iter().zip(&oracle) {
                if !common::rel_close(*a, *b, 1e-9) {
                    return Err(format!("({c}, {cp}): root {a} vs oracle {b}"));
                }
                residual = residual.max(cubic.eval(*a).abs());
            }
            Ok(residual)
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    check(worst < 1e-10, || format!("root residual {worst}"))?;
    Ok(format!(
        "{} pairs agree, {excluded} excluded near D = 0, max |p(root)| {worst:.1e}",
        pairs.len() - excluded
    ))
}

fn chart_round_trips() -> Outcome {
    let start = Instant::now();
    let mut r = rng(SUITE_SEED + 6);
    let bounds = ChartBox::default();
    let mut worst: f64 = 0.0;
    let rel = |a: f64, b: f64, scale: f64| (a - b).abs() / scale.max(1.0);
    for _ in 0..1000 {
        let spec = sample_generic(&mut r, &bounds).unwrap();
        let ModuliCoords::GenericChart { x1, x2, x3 } = chart(&spec).unwrap() else {
            return Err("wrong chart".into());
        };
        let back = chart_generic_inv(x1, x2, x3).unwrap();
        let (a, b) = (spec.cubic().unwrap(), back.cubic().unwrap());
        // C' is recovered as e^{x2} + K0³/3 - C K0; measure against its largest term.
        let scale = a.c_prime().abs().max(x3.abs().powi(3) / 3.0).max((x1 * x3).abs());
        worst = worst
            .max(rel(a.c(), b.c(), a.c().abs()))
            .max(rel(a.c_prime(), b.c_prime(), scale))
            .max(rel(spec.k0(), back.k0(), spec.k0().abs()));
    }
    let mut root_residual: f64 = 0.0;
    for _ in 0..1000 {
        let k0 = r.gen_range(-5.0..5.0);
        let t = r.gen_range(0.01..5.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let lambda = 10f64.powf(r.gen_range(-2.0..2.0));
        let spec = psi_inv(k0, t, lambda).unwrap();
        let ModuliCoords::ExceptionalChart { k0: a, t: b, log_lambda } = chart(&spec).unwrap() else {
            return Err("wrong chart".into());
        };
        worst = worst
            .max(rel(a, k0, k0.abs()))
            .max(rel(b, t, t.abs().max(k0 * k0)))
            .max(rel(log_lambda, lambda.ln(), lambda.ln().abs()));
        let cubic = spec.cubic().unwrap();
        root_residual = root_residual.max(cubic.eval(k0).abs() / (1.0 + k0.abs().powi(3)));
    }
    let elapsed = start.elapsed();
    check(worst <= 1e-12, || format!("round-trip error {worst}"))?;
    check(root_residual <= 1e-12, || format!("p(K0) = {root_residual}"))?;
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "2000 round trips, max relative error {worst:.1e}, max |p(K0)| {root_residual:.1e}, {elapsed:.2?}"
    ))
}

fn hcmu_brute_force() -> Outcome {
    let mut r = rng(SUITE_SEED + 7);
    let specs: Vec<GermSpec> = (0..500)
        .map(|i| {
            if i % 10 == 9 {
                common::complex_root_spec(&mut r)
            } else {
                common::grid_root_spec(&mut r, 10.0, 0.01)
            }
        })
        .collect();
    let gap = |spec: &GermSpec| {
        let roots = spec.cubic().unwrap().root_structure().real_roots();
        let mut g = f64::INFINITY;
        for w in roots.windows(2) {
            if w[0] != w[1] {
                g = g.min(w[0] - w[1]);
            }
        }
        for x in &roots {
            let d = (x - spec.k0()).abs();
            if d > 1e-9 {
                g = g.min(d);
            }
        }
        g
    };
    let (boundary, interior): (Vec<&GermSpec>, Vec<&GermSpec>) = specs.iter().partition(|s| gap(s) <= 1e-3);
    for s in &boundary {
        eprintln!("  criterion 7: excluded boundary case {}", s.to_json());
    }
    let results: Vec<Result<bool, String>> = interior
        .par_iter()
        .map(|spec| {
            let class = hcmu_class(spec).map_err(|e| e.to_string())?;
            let verdict = common::hcmu_oracle(spec, 10.0, 0.01, 1e-6);
            let near = |a: f64, b: f64| (a - b).abs() < 1e-6;
            use common::OracleVerdict as O;
            use extk::moduli::HcmuClass as H;
            let ok = match (&class, &verdict) {
                (H::GenericHcmu { k1, k2 }, O::Generic { k1: a, k2: b }) => near(*k1, *a) && near(*k2, *b),
                (H::ExceptionalConeHcmu { k1, k2, sigma_sign }, O::Cone { k1: a, k2: b, sigma_sign: s }) => {
                    near(*k1, *a) && near(*k2, *b) && sigma_sign == s
                }
                (H::ExceptionalCuspHcmu { k1 }, O::Cusp { k1: a }) => near(*k1, *a),
                (H::NotHcmu { .. }, O::NotHcmu) => true,
                _ => false,
            };
            if ok {
                Ok(class.is_hcmu())
            } else {
                Err(format!("{}: {class:?} vs oracle {verdict:?}", spec.to_json()))
            }
        })
        .collect();
    let mut hcmu = 0;
    for res in results {
        hcmu += res? as usize;
    }
    Ok(format!(
        "{} germs agree ({hcmu} HCMU), {} boundary cases excluded",
        interior.len(),
        boundary.len()
    ))
}

fn symmetry() -> Outcome {
    let mut worst = [0.0f64; 3];
    for spec in sample_specs(SampleKind::Generic, 20, SUITE_SEED + 8, &ChartBox::default()).unwrap() {
        let ev = GermEvaluator::new(spec).unwrap();
        let rad = 0.9 * ev.domain_radius();
        for x in [-0.5, 0.1, 0.6] {
            let k = ev.curvature_at(Complex64::new(x * rad, 0.0)).unwrap();
            for y in [-0.7, 0.3, 0.7] {
                let d = (ev.curvature_at(Complex64::new(x * rad, y * rad)).unwrap() - k).abs();
                worst[0] = worst[0].max(d);
            }
        }
    }
    for spec in sample_specs(SampleKind::Exceptional, 20, SUITE_SEED + 8, &ChartBox::default()).unwrap() {
        let ev = GermEvaluator::new(spec).unwrap();
        for frac in [0.1, 0.5, 0.9] {
            let rad = frac * ev.domain_radius();
            let k = ev.curvature_at(Complex64::new(rad, 0.0)).unwrap();
            for theta in [1.0, 2.5, 4.0, 5.5] {
                let d = (ev.curvature_at(Complex64::from_polar(rad, theta)).unwrap() - k).abs();
                worst[1] = worst[1].max(d);
            }
        }
    }
    for k0 in [-1.0, 0.0, 0.5, 1.0] {
        let ev = GermEvaluator::new(make_einstein(k0).unwrap()).unwrap();
        for z in [Complex64::new(0.3, 0.0), Complex64::new(-0.2, 0.4), Complex64::new(0.0, -0.6)] {
            let k = curvature_fd(|w| ev.density_at(w), z, 1e-4).unwrap();
            worst[2] = worst[2].max((k - k0).abs());
        }
    }
    check(worst[0] < 1e-10 && worst[1] < 1e-10 && worst[2] < 1e-6, || format!("{worst:?}"))?;
    Ok(format!(
        "generic {:.1e}, exceptional {:.1e}, Einstein (finite differences) {:.1e}",
        worst[0], worst[1], worst[2]
    ))
}

fn negative_control() -> Outcome {
    let germ = r#"{"kind":"generic","C":1,"Cprime":0,"K0":1}"#;
    let out = Command::new(env!("CARGO_BIN_EXE_extk"))
        .args(["verify", "--germ", germ, "--inject-perturbation", "0.01"])
        .env_remove("EXTK_CONFIG")
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.code() == Some(2), || format!("exit {:?}", out.status.code()))?;

    let ev = GermEvaluator::new(make_generic(CubicParams::new(1.0, 0.0).unwrap(), 1.0).unwrap()).unwrap();
    let perturbed = Perturbed { inner: &ev, epsilon: 0.01 };
    let report = verify_metric(&perturbed, 0.5 * ev.domain_radius(), GRID_POINTS, None, Tolerances::default())
        .map_err(|e| e.to_string())?;
    check(!report.pass && report.max_holomorphy_residual > 1e-3, || format!("{report:?}"))?;
    Ok(format!(
        "exit 2, perturbed |dF/dz̄| {:.1e}",
        report.max_holomorphy_residual
    ))
}

fn convergence_order() -> Outcome {
    let germs = [
        make_einstein(1.0).unwrap(),
        make_einstein(-1.0).unwrap(),
        make_generic(CubicParams::new(1.0, 0.0).unwrap(), 1.0).unwrap(),
        make_generic(CubicParams::new(0.0, 0.0).unwrap(), -1.0).unwrap(),
    ];
    let mut ratios = Vec::new();
    for spec in germs {
        let ev = GermEvaluator::new(spec).unwrap();
        let domain = ev.domain_radius();
        let grid = GRID_FRACTION * if domain.is_finite() { domain } else { 1.0 };
        let at = |h: f64| {
            verify_metric(&ev, grid, GRID_POINTS, Some(h), Tolerances::default())
                .map(|r| r.max_curvature_residual)
                .map_err(|e| e.to_string())
        };
        let coarse = at(0.1 * grid)?;
        let fine = at(0.05 * grid)?;
        let ratio = coarse / fine;
        check((3.0..=5.0).contains(&ratio), || format!("{}: ratio {ratio}", spec.to_json()))?;
        ratios.push(ratio);
    }
    Ok(format!("ratios {ratios:.2?}"))
}

fn main() {
    let start = Instant::now();
    let reports = sampled_reports();
    let suite_time = start.elapsed();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("extremal condition on sampled germs", Box::new(|| extremal_condition(&reports, suite_time))),
        ("gradient field model", Box::new(|| gradient_model(&reports))),
        ("fifth invariant recovery", Box::new(fifth_invariant)),
        ("min/max dichotomy", Box::new(min_max_dichotomy)),
        ("closed-form roots vs sign-change oracle", Box::new(cardano_oracle)),
        ("chart round trips", Box::new(chart_round_trips)),
        ("HCMU classifier vs brute force", Box::new(hcmu_brute_force)),
        ("symmetries", Box::new(symmetry)),
        ("negative control", Box::new(negative_control)),
        ("second-order convergence", Box::new(convergence_order)),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
