//! Acceptance criteria, one test and one printed PASS/FAIL line each.

use std::time::{Duration, Instant};

use qutrit_cli::{run, Scenario, ScenarioSpec, Table};
use qutrit_core::biqutrit::{ghz_correlations, energy};
use qutrit_core::entanglement::{m_sm, m_sm_closed_form, MsmScenario};
use qutrit_core::biqutrit::tensor_from_density;
use qutrit_core::chain::symmetric_state_2;
use qutrit_core::ode::IntegratorConfig;
use qutrit_core::verify::*;

struct Item {
    label: String,
    ok: bool,
}

fn at_most(label: &str, value: f64, bound: f64) -> Item {
    Item {
        label: format!("{label} = {value:.3e} (<= {bound:e})"),
        ok: value.is_finite() && value <= bound,
    }
}

fn near(label: &str, value: f64, target: f64, tol: f64) -> Item {
    Item {
        label: format!("{label} = {value:.6} ({target} ± {tol})"),
        ok: (value - target).abs() <= tol,
    }
}

fn flag(label: &str, ok: bool) -> Item {
    Item {
        label: format!("{label}: {ok}"),
        ok,
    }
}

fn report(n: u32, title: &str, items: Vec<Item>, elapsed: Duration, limit: Duration) {
    let mut items = items;
    items.push(Item {
        label: format!("runtime {:.2}s (< {}s)", elapsed.as_secs_f64(), limit.as_secs()),
        ok: elapsed < limit,
    });
    let ok = items.iter().all(|i| i.ok);
    let failed: Vec<&str> = items.iter().filter(|i| !i.ok).map(|i| i.label.as_str()).collect();
    println!(
        "criterion {n} [{title}]: {}; {}",
        if ok { "PASS" } else { "FAIL" },
        items.iter().map(|i| i.label.as_str()).collect::<Vec<_>>().join("; ")
    );
    assert!(ok, "criterion {n} failed: {failed:?}");
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_1_algebra() {
    let start = Instant::now();
    let r = run_suite(Suite::Algebra, &IntegratorConfig::default()).unwrap();
    let items = r.checks.iter().map(|c| at_most(&c.name, c.value, 1e-13)).collect();
    report(1, "algebra", items, start.elapsed(), secs(1));
}

#[test]
fn criterion_2_elliptic() {
    let start = Instant::now();
    let items = vec![
        at_most("identities over 1e4 points", elliptic_identity_residual(10_000, 2024), 1e-12),
        at_most("k=0, k=1 limits", elliptic_limit_residual(), 1e-14),
        at_most("period relations", elliptic_period_residual().unwrap(), 1e-12),
    ];
    report(2, "elliptic", items, start.elapsed(), secs(1));
}

#[test]
fn criterion_3_single_qutrit_oracles() {
    let start = Instant::now();
    let icfg = IntegratorConfig::default();
    let mut items = Vec::new();
    for k in [0.0, 0.5, 0.85] {
        let d = qutrit_resonance_deviation(k, 50.0, &icfg).unwrap();
        items.push(at_most(&format!("resonance k={k}"), d, 1e-8));
    }
    items.push(at_most(
        "off-resonance k=0",
        qutrit_offresonance_deviation(0.4, 1.3, 50.0, &icfg).unwrap(),
        1e-8,
    ));
    items.push(at_most(
        "populations across k",
        resonance_population_spread(&[0.0, 0.5, 0.85], 50.0).unwrap(),
        1e-10,
    ));
    report(3, "single-qutrit oracles", items, start.elapsed(), secs(10));
}

#[test]
fn criterion_4_pair_triple_oracle() {
    let start = Instant::now();
    let d = biqutrit_triple_oracle(0.1, 100.0, &IntegratorConfig::default()).unwrap();
    let items = vec![
        at_most("table vs eigendecomposition k=0", d[0], 1e-8),
        at_most("table vs ODE k=0", d[1], 1e-8),
        at_most("table vs ODE k=0.85", d[2], 1e-8),
    ];
    report(4, "bi-qutrit triple oracle", items, start.elapsed(), secs(30));
}

#[test]
fn criterion_5_measure_closed_forms() {
    let start = Instant::now();
    let icfg = IntegratorConfig::default();
    let pm = pair_measure_deviations(0.1, 100.0).unwrap();
    let s0 = m_sm(&tensor_from_density(&symmetric_state_2().density()).unwrap());
    let mut items = vec![
        at_most("m_SM along ODE", msm_ode_deviation(0.1, 0.85, 100.0, &icfg).unwrap(), 1e-8),
        at_most("m_SM exact", pm[0], 1e-8),
        at_most("eta2", pm[2], 1e-8),
        at_most("m_I", pm[3], 1e-8),
        at_most("symmetric state", symmetric_state_deviation(0.1, 100.0).unwrap(), 1e-8),
        near("symmetric state t=0", s0, (23.0f64 / 32.0).sqrt(), 1e-8),
    ];
    for j in [0.05, 0.1, 0.5] {
        let worst = (0..=2000)
            .map(|i| {
                let t = 0.05 * i as f64;
                (m_sm_closed_form(MsmScenario::Anisotropic, t, j, 0.0) - m_sm_closed_form(MsmScenario::Ghz, t, j, 0.0))
                    .abs()
            })
            .fold(0.0, f64::max);
        items.push(at_most(&format!("anisotropic form at Q=0, J={j}"), worst, 1e-8));
    }
    report(5, "measure closed forms", items, start.elapsed(), secs(60));
}

#[test]
fn criterion_6_quantitative_claims() {
    let start = Instant::now();
    let j = 0.1;
    let energy_dev = (0..=2000)
        .map(|i| {
            let t = 0.05 * i as f64;
            let r = ghz_correlations(t, j, 0.3, 1.0, 0.85);
            (energy(&r, &resonant_pair(0.85, j).coeffs(t)) - 2.0 * j / 3.0).abs()
        })
        .fold(0.0, f64::max);
    let (lo, hi) = eta3_range(100_000).unwrap();
    let items = vec![
        near("max |m_VW - m_SM|", mvw_msm_max_gap(50, 2000), 0.014, 0.002),
        at_most("energy - 2J/3", energy_dev, 1e-9),
        near("min eta3", lo, 0.889, 0.001),
        near("max eta3", hi, 1.0, 1e-12),
        near("anisotropic minimum", anisotropic_minimum(200.0, 200_000), 0.0010, 0.0005),
    ];
    report(6, "quantitative claims", items, start.elapsed(), secs(180));
}

#[test]
fn criterion_7_chain() {
    let start = Instant::now();
    let mut items = Vec::new();
    for n in 3..=6 {
        let d = chain_table_deviation(n, 20, 700 + n as u64).unwrap();
        items.push(at_most(&format!("table N={n}"), d, 1e-9));
    }
    let sym = (2..=6)
        .map(|n| eta_sign_symmetry(n, 0.1, 100.0, 40).unwrap())
        .fold(0.0, f64::max);
    items.push(at_most("eta_N under J -> -J", sym, 1e-10));
    let spec = [(0.1, 0.3), (-0.4, 0.7)]
        .iter()
        .map(|&(j, w)| resonance_spectrum_deviation(j, w).unwrap())
        .fold(0.0, f64::max);
    items.push(at_most("resonant spectrum", spec, 1e-12));
    let (mut corrected, mut printed, mut listed) = (0.0f64, 0.0f64, 0.0f64);
    for (j, w0) in [(0.178, 2.0), (-0.3, 0.7), (1.0, 0.25)] {
        let (a, b, c) = constant_field_residuals(j, w0).unwrap();
        corrected = corrected.max(a);
        printed = printed.max(b);
        listed = listed.max(c);
    }
    items.push(at_most("constant field J, J, ±p, ±p", listed, 1e-9));
    items.push(at_most("cubic roots, printed form x^3+2Jx^2-p^2x-2J^3", printed, 1e-9));
    items.push(at_most("cubic roots, linear term -(J^2+4w0^2)", corrected, 1e-9));
    report(7, "chain and spectra", items, start.elapsed(), secs(120));
}

fn table(s: Scenario) -> Table {
    run(&ScenarioSpec::new(s), &IntegratorConfig::default()).unwrap()
}

fn spread(v: &[f64]) -> f64 {
    v.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - v.iter().cloned().fold(f64::INFINITY, f64::min)
}

fn window(t: &[f64], y: &[f64], a: f64, b: f64) -> Vec<f64> {
    t.iter().zip(y).filter(|(t, _)| **t >= a && **t <= b).map(|(_, y)| *y).collect()
}

#[test]
fn criterion_8_figures() {
    let start = Instant::now();
    let mut items = Vec::new();

    // fig1: main resonance and side resonances for k = 0.85
    let f1 = table(Scenario::Fig1);
    let x = f1.column("omega0_over_omega").unwrap();
    let y = f1.column("P_plus_1").unwrap();
    let mut sorted = y.clone();
    sorted.sort_by(f64::total_cmp);
    let background = sorted[sorted.len() / 2];
    let peaks: Vec<(f64, f64)> = (1..y.len() - 1)
        .filter(|&i| y[i] > y[i - 1] && y[i] >= y[i + 1] && y[i] > (10.0 * background).max(0.05))
        .map(|i| (x[i], y[i]))
        .collect();
    items.push(flag(
        &format!("fig1 resonance at 1 ({peaks:.3?})"),
        peaks.iter().any(|p| (p.0 - 1.0).abs() < 0.05),
    ));
    items.push(flag("fig1 side resonance", peaks.iter().any(|p| (p.0 - 1.0).abs() > 0.2)));

    // fig2: the fluctuator suppresses the spin oscillation
    let f2 = table(Scenario::Fig2);
    let free = spread(&f2.column("Sz_free").unwrap());
    let coupled = spread(&f2.column("Sz_coupled").unwrap());
    items.push(flag(&format!("fig2 Sz swing {coupled:.3} coupled vs {free:.3} free"), coupled < 0.5 * free));

    // fig3: maximally entangled start and the anisotropic minimum
    let f3 = table(Scenario::Fig3);
    let first = f3.rows[0][1..].iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    items.push(at_most("fig3 measures at t=0 minus 1", first, 1e-12));
    let aniso = f3
        .column("m_aniso_Jneg")
        .unwrap()
        .into_iter()
        .chain(f3.column("m_aniso_Jpos").unwrap())
        .fold(f64::INFINITY, f64::min);
    items.push(near("fig3 anisotropic minimum", aniso, 0.0010, 0.0005));

    // fig4: plateaus while the field is on, oscillation without it
    let f4 = table(Scenario::Fig4);
    let t = f4.column("t").unwrap();
    let pulsed = f4.column("m_sm_pulsed").unwrap();
    let freef = f4.column("m_sm_freefield").unwrap();
    for (a, b) in [(0.0, 17.0), (40.0, 57.0)] {
        let p = spread(&window(&t, &pulsed, a, b));
        let f = spread(&window(&t, &freef, a, b));
        items.push(flag(&format!("fig4 [{a},{b}] spread {p:.4} pulsed vs {f:.4} free"), p < 0.05 && f > 0.3));
    }

    // fig5: eta3 range
    let f5 = table(Scenario::Fig5);
    let e3 = f5.column("eta3").unwrap();
    let lo = e3.iter().cloned().fold(f64::INFINITY, f64::min);
    items.push(near("fig5 min eta3", lo, 0.889, 0.001));
    items.push(flag("fig5 all eta_N start at 1", f5.rows[0][1..].iter().all(|v| (v - 1.0).abs() < 1e-12)));

    // determinism
    let again = table(Scenario::Fig3);
    items.push(flag("fig3 CSV identical on rerun", again.to_csv().unwrap() == f3.to_csv().unwrap()));

    report(8, "figure regression", items, start.elapsed(), secs(600));
}
