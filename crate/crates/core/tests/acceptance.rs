//! Acceptance suite. Runs each criterion in sequence, prints one PASS/FAIL
//! line per criterion and exits non-zero if any criterion fails.

use std::fs;
use std::time::{Duration, Instant};

use euler_alpha::dynamics::{advection, velocity_form_q_tendency};
use euler_alpha::experiments::io::{read_diagnostics_csv, read_snapshot, Snapshot};
use euler_alpha::experiments::{
    make_initial_condition, run, splitting_order_study, sweep_alpha, sweep_nu, IcKind, RunConfig,
};
use euler_alpha::lagrangian::{jacobian_determinant, track_flow_map, ParticleMap};
use euler_alpha::{integrate, Scheme, SimState, StepperConfig};

const SEED: u64 = 42;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

/// Setup shared by several criteria: n = 64, K = 4, unit energy, α = 0.25.
fn standard_config() -> RunConfig {
    RunConfig {
        n: 64,
        alpha: 0.25,
        nu: 0.0,
        dt: 1e-3,
        t_final: 5.0,
        scheme: Scheme::Rk4,
        ic: IcKind::RandomBandlimited,
        band: 4,
        energy: 1.0,
        seed: SEED,
        ..RunConfig::default()
    }
}

fn evolve(s: &SimState, t_final: f64, dt: f64, scheme: Scheme) -> SimState {
    integrate(s, t_final, &StepperConfig::new(dt, scheme).unwrap(), usize::MAX, |_| Ok(())).unwrap()
}

fn c1_single_mode_decay() -> Verdict {
    let cfg = RunConfig {
        n: 32,
        alpha: 0.5,
        nu: 0.01,
        ic: IcKind::SingleMode,
        mode_kx: 2,
        mode_ky: 0,
        amplitude: 1.0,
        ..RunConfig::default()
    };
    let s0 = make_initial_condition(&cfg).unwrap();
    let exact = (-0.01f64 * 4.0 * 1.0 / (1.0 + 0.25 * 4.0)).exp();
    let amplitude = |s: &SimState| s.omega().coeff(2, 0).re / (32.0 * 32.0 / 2.0);
    let rk4 = (amplitude(&evolve(&s0, 1.0, 0.01, Scheme::Rk4)) - exact).abs() / exact;
    let lt = (amplitude(&evolve(&s0, 1.0, 0.01, Scheme::LieTrotter)) - exact).abs() / exact;
    verdict(
        rk4 <= 1e-9 && lt <= 1e-12,
        format!("rk4 rel err {rk4:.2e} (<= 1e-9), lie-trotter rel err {lt:.2e} (<= 1e-12)"),
    )
}

fn c2_inviscid_conservation() -> Verdict {
    let cfg = standard_config();
    let s0 = make_initial_condition(&cfg).unwrap();
    let stepper = cfg.stepper().unwrap();
    let mut first = None;
    let (mut de, mut dc, mut mean_exact) = (0.0f64, 0.0f64, true);
    integrate(&s0, 5.0, &stepper, 50, |obs| {
        let d = obs.diagnostics;
        let d0 = *first.get_or_insert(d);
        de = de.max(((d.energy - d0.energy) / d0.energy).abs());
        dc = dc.max(((d.casimir2 - d0.casimir2) / d0.casimir2).abs());
        mean_exact &= d.mean_q == 0.0;
        Ok(())
    })
    .unwrap();
    verdict(
        de <= 1e-6 && dc <= 1e-5 && mean_exact,
        format!("energy drift {de:.2e} (<= 1e-6), casimir2 drift {dc:.2e} (<= 1e-5), mean q exactly 0: {mean_exact}"),
    )
}

fn c3_euler_poincare_consistency() -> Verdict {
    let mut worst = 0.0f64;
    for alpha in [0.0, 0.25, 1.0] {
        for seed in 0..20u64 {
            let cfg = RunConfig {
                seed: 1000 + seed,
                alpha,
                ..standard_config()
            };
            let s = make_initial_condition(&cfg).unwrap();
            let lhs = velocity_form_q_tendency(&s);
            let rhs = advection(s.q_hat(), alpha).scale(-1.0);
            worst = worst.max(lhs.sub(&rhs).l2_norm() / rhs.l2_norm());
        }
    }
    verdict(worst <= 1e-10, format!("max relative L2 mismatch {worst:.2e} (<= 1e-10) over 60 states"))
}

fn c4_zero_viscosity_limit() -> Verdict {
    let cfg = RunConfig {
        t_final: 1.0,
        ..standard_config()
    };
    let r = sweep_nu(&cfg, &[1e-2, 5e-3, 2.5e-3, 1.25e-3]).unwrap();
    let fit = r.fit.unwrap();
    let dec = r.strictly_decreasing();
    verdict(
        dec && fit.slope >= 0.9 && fit.residual <= 0.1,
        format!(
            "D = {:?}, strictly decreasing: {dec}, slope {:.4} (>= 0.9), residual {:.2e} (<= 0.1)",
            r.distances_q.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>(),
            fit.slope,
            fit.residual
        ),
    )
}

fn c5_product_formula_orders() -> Verdict {
    let cfg = RunConfig {
        n: 32,
        nu: 0.05,
        t_final: 0.5,
        ..standard_config()
    };
    let study = splitting_order_study(&cfg, &[0.05, 0.025, 0.0125, 0.00625]).unwrap();
    let lt = study.lie_trotter.fit.unwrap().slope;
    let st = study.strang.fit.unwrap().slope;
    let rk = study.rk4.fit.unwrap().slope;
    verdict(
        (0.8..=1.2).contains(&lt) && (1.8..=2.2).contains(&st) && rk >= 3.8,
        format!("lie-trotter {lt:.3} in [0.8, 1.2], strang {st:.3} in [1.8, 2.2], rk4 {rk:.3} >= 3.8 (4 dyadic levels)"),
    )
}

fn c6_alpha_limit() -> Verdict {
    let cfg = RunConfig {
        t_final: 1.0,
        ..standard_config()
    };
    let r = sweep_alpha(&cfg, &[0.4, 0.2, 0.1, 0.05]).unwrap();
    let fit = r.fit.unwrap();
    let dec = r.strictly_decreasing();
    verdict(
        dec && (1.5..=2.5).contains(&fit.slope),
        format!(
            "D = {:?}, strictly decreasing: {dec}, slope {:.4} in [1.5, 2.5]",
            r.distances_q.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>(),
            fit.slope
        ),
    )
}

fn c7_volume_preservation() -> Verdict {
    let cfg = standard_config();
    let s0 = make_initial_condition(&cfg).unwrap();
    let stepper = cfg.stepper().unwrap();
    let err = |m: usize| {
        let (pm, _) = track_flow_map(&s0, &ParticleMap::identity(m).unwrap(), 1.0, &stepper, 0.01).unwrap();
        jacobian_determinant(&pm).unwrap().max_deviation()
    };
    let (coarse, fine) = (err(32), err(64));
    let ratio = coarse / fine;
    verdict(
        fine <= 1e-3 && (3.4..=4.6).contains(&ratio),
        format!("max|det-1| at m=64: {fine:.3e} (<= 1e-3); m=32: {coarse:.3e}; ratio {ratio:.3} in [3.4, 4.6]"),
    )
}

fn c8_time_reversal() -> Verdict {
    let cfg = standard_config();
    let s0 = make_initial_condition(&cfg).unwrap();
    let forward = evolve(&s0, 2.0, 1e-3, Scheme::Rk4);
    let back = evolve(&forward.reversed().with_time(0.0), 2.0, 1e-3, Scheme::Rk4).reversed();
    let err = back.q_hat().sub(s0.q_hat()).l2_norm() / s0.q_hat().l2_norm();
    verdict(err <= 1e-8, format!("relative L2 error after round trip {err:.2e} (<= 1e-8)"))
}

fn c9_determinism_and_io() -> Verdict {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = |dir: &std::path::Path| RunConfig {
        n: 32,
        t_final: 0.2,
        dt: 1e-2,
        save_every: 5,
        diag_every: 2,
        out_dir: dir.to_path_buf(),
        ..standard_config()
    };
    let ra = run(&cfg(a.path())).unwrap();
    let rb = run(&cfg(b.path())).unwrap();
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .filter(|n| n != "manifest.txt")
        .collect();
    names.sort();
    let identical = names
        .iter()
        .all(|n| fs::read(a.path().join(n)).unwrap() == fs::read(b.path().join(n)).unwrap());

    let last = read_snapshot(ra.snapshots.last().unwrap()).unwrap();
    let mem = Snapshot::from_state(&ra.final_state);
    let snap_exact = last.to_bytes() == mem.to_bytes()
        && last.omega.iter().zip(&mem.omega).all(|(x, y)| x.to_bits() == y.to_bits());
    let rows = read_diagnostics_csv(&a.path().join("diagnostics.csv")).unwrap();
    let csv_exact = rows.last() == ra.last_row.as_ref() && rb.last_row == ra.last_row;
    verdict(
        identical && snap_exact && csv_exact && names.len() > 2,
        format!(
            "{} files byte-identical: {identical}; snapshot round trip bit-exact: {snap_exact}; csv round trip bit-exact: {csv_exact}",
            names.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict, Duration); 9] = [
        ("C1 exact single-mode decay", c1_single_mode_decay, Duration::from_secs(1)),
        ("C2 inviscid conservation", c2_inviscid_conservation, Duration::from_secs(120)),
        ("C3 Euler-Poincare vs vorticity form", c3_euler_poincare_consistency, Duration::from_secs(10)),
        ("C4 zero-viscosity limit", c4_zero_viscosity_limit, Duration::from_secs(300)),
        ("C5 product-formula orders", c5_product_formula_orders, Duration::from_secs(180)),
        ("C6 alpha -> 0 Euler limit", c6_alpha_limit, Duration::from_secs(300)),
        ("C7 flow-map volume preservation", c7_volume_preservation, Duration::from_secs(120)),
        ("C8 time reversal", c8_time_reversal, Duration::from_secs(120)),
        ("C9 determinism and file round trips", c9_determinism_and_io, Duration::from_secs(60)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (name, check, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let ok = v.passed && in_time;
        if !ok {
            failures += 1;
        }
        println!(
            "[{}] {name}: {} | {:.2}s (budget {}s)",
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
