//! Figure scenarios, parameter sweeps and CSV output for the `qutrit` tool.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use qutrit_core::biqutrit::{
    ghz_correlations, density_from_tensor, evolve_pair, evolve_pair_with, impulse_amplitude,
    maximally_entangled, tensor_from_density, BlochTensor, PairCoeffs, PairConfig, IMPULSE_EDGES,
};
use qutrit_core::chain::{ghz_state, hamiltonian_n, ChainEvolver, MAX_SITES, MIN_SITES};
use qutrit_core::entanglement::{eta_n, m_sm, measure_report, partial_trace};
use qutrit_core::linalg::{conjugate, eigh, eigvalsh, kron};
use qutrit_core::ode::IntegratorConfig;
use qutrit_core::qutrit::{
    averaged_populations, bloch_from_density, default_tau, density_from_bloch, evolve_bloch, spin_expectations, BlochVector, FieldConfig};


#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, parameters, grids or configuration.
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qutrit_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(qutrit_core::Error::Domain(_)) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Uniform grid `start:stop:count` (both ends included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> CliResult<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(usage("grid bounds must be finite"));
        }
        if count == 0 || (count == 1 && start != stop) {
            return Err(usage("grid needs count >= 2, or count = 1 with start = stop"));
        }
        Ok(Grid { start, stop, count })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(usage(format!("grid '{s}' is not start:stop:count")));
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| usage(format!("bad number '{p}' in grid '{s}'")));
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("bad count '{}' in grid '{s}'", parts[2])))?;
        Grid::new(num(parts[0])?, num(parts[1])?, count)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Ok(match s {
            "fig1" => Scenario::Fig1,
            "fig2" => Scenario::Fig2,
            "fig3" => Scenario::Fig3,
            "fig4" => Scenario::Fig4,
            "fig5" => Scenario::Fig5,
            other => return Err(usage(format!("unknown scenario '{other}'"))),
        })
    }
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [Scenario::Fig1, Scenario::Fig2, Scenario::Fig3, Scenario::Fig4, Scenario::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Fig1 => "fig1",
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
            Scenario::Fig4 => "fig4",
            Scenario::Fig5 => "fig5",
        }
    }

    /// Parameter names, caption defaults and a short description.
    pub fn defaults(self) -> &'static [(&'static str, f64, &'static str)] {
        match self {
            Scenario::Fig1 => &[
                ("k1", 0.85, "modulus of the first curve"),
                ("k2", 0.2, "modulus of the second curve"),
                ("omega1", 1.0 / 3.0, "transverse amplitude"),
                ("omega", 1.0, "drive frequency"),
                ("q", 0.0, "axial anisotropy Q"),
                ("d", 0.0, "rhombic anisotropy d"),
                ("periods", 400.0, "averaging horizon in drive periods"),
            ],
            Scenario::Fig2 => &[
                ("k", 0.0, "modulus"),
                ("omega1", 0.02, "transverse amplitude"),
                ("omega", 1.0, "drive frequency"),
                ("omega0", 1.0, "Larmor frequency"),
                ("q", 0.0, "axial anisotropy Q"),
                ("d", 0.0, "rhombic anisotropy d"),
                ("j", 0.1, "exchange with the fluctuator"),
            ],
            Scenario::Fig3 => &[
                ("q", 0.02507, "anisotropy Q = d of both qutrits (curves 1, 2)"),
                ("j", 0.1, "exchange magnitude"),
                ("k", 0.85, "modulus of the consistent field (curves 3-5)"),
                ("omega1", 0.3, "transverse amplitude (curves 3-5)"),
                ("omega", 1.0, "drive frequency (curves 3-5)"),
            ],
            Scenario::Fig4 => &[
                ("omega0", 2.0, "impulse field strength"),
                ("j", 0.178, "exchange"),
            ],
            Scenario::Fig5 => &[("j", 0.1, "exchange")],
        }
    }

    pub fn default_grid(self) -> Grid {
        match self {
            Scenario::Fig1 => Grid { start: 0.0, stop: 4.0, count: 401 },
            Scenario::Fig2 => Grid { start: 0.0, stop: 700.0, count: 1401 },
            Scenario::Fig3 => Grid { start: 0.0, stop: 200.0, count: 2001 },
            Scenario::Fig4 => Grid { start: 0.0, stop: 100.0, count: 1001 },
            Scenario::Fig5 => Grid { start: 0.0, stop: 100.0, count: 1001 },
        }
    }

    /// Name of the first CSV column.
    pub fn axis(self) -> &'static str {
        match self {
            Scenario::Fig1 => "omega0_over_omega",
            _ => "t",
        }
    }

    pub fn header(self) -> Vec<String> {
        let cols: &[&str] = match self {
            Scenario::Fig1 => &["omega0_over_omega", "P_plus_1", "P_zero_1", "P_plus_2", "P_zero_2"],
            Scenario::Fig2 => &["t", "Sy_free", "Sz_free", "Sy_coupled", "Sz_coupled"],
            Scenario::Fig3 => &["t", "m_aniso_Jneg", "m_aniso_Jpos", "m_vw", "m_sm", "eta2", "m_i"],
            Scenario::Fig4 => &["t", "m_sm_pulsed", "m_sm_freefield"],
            Scenario::Fig5 => &["t", "eta2", "eta3", "eta4", "eta5", "eta6"],
        };
        cols.iter().map(|s| s.to_string()).collect()
    }
}

/// Parameter set of one scenario; only known names are accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    scenario: Scenario,
    values: BTreeMap<&'static str, f64>,
}

impl Params {
    pub fn defaults(scenario: Scenario) -> Self {
        Params {
            scenario,
            values: scenario.defaults().iter().map(|&(k, v, _)| (k, v)).collect(),
        }
    }

    pub fn set(&mut self, key: &str, value: f64) -> CliResult<()> {
        let known = self.scenario.defaults().iter().find(|(k, _, _)| *k == key);
        match known {
            Some(&(k, _, _)) => {
                if !value.is_finite() {
                    return Err(usage(format!("{key} must be finite")));
                }
                self.values.insert(k, value);
                Ok(())
            }
            None => {
                let names: Vec<&str> = self.scenario.defaults().iter().map(|(k, _, _)| *k).collect();
                Err(usage(format!(
                    "unknown parameter '{key}' for {} (known: {})",
                    self.scenario.name(),
                    names.join(", ")
                )))
            }
        }
    }

    pub fn get(&self, key: &str) -> f64 {
        self.values[key]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }
}

/// Parses `key=value`.
pub fn parse_assignment(s: &str) -> CliResult<(String, String)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| usage(format!("expected key=value, got '{s}'")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(usage(format!("empty key in '{s}'")));
    }
    Ok((k.to_string(), v.trim().to_string()))
}

fn parse_value(key: &str, v: &str) -> CliResult<f64> {
    v.parse::<f64>().map_err(|_| usage(format!("value of {key} is not a number: '{v}'")))
}

/// Reads `key=value` lines. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_assignment)
        .collect()
}

/// Everything needed to run one figure.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    pub params: Params,
    pub grid: Grid,
}

impl ScenarioSpec {
    pub fn new(scenario: Scenario) -> Self {
        ScenarioSpec {
            scenario,
            params: Params::defaults(scenario),
            grid: scenario.default_grid(),
        }
    }

    /// Applies one assignment; the key `grid` sets the grid.
    pub fn apply(&mut self, key: &str, value: &str) -> CliResult<()> {
        if key == "grid" {
            self.grid = value.parse()?;
            Ok(())
        } else {
            self.params.set(key, parse_value(key, value)?)
        }
    }

    /// Defaults, then the config file, then command-line assignments.
    pub fn build(
        scenario: Scenario,
        config: Option<&str>,
        sets: &[String],
        grid: Option<Grid>,
    ) -> CliResult<Self> {
        let mut spec = ScenarioSpec::new(scenario);
        if let Some(text) = config {
            for (k, v) in parse_config(text)? {
                spec.apply(&k, &v)?;
            }
        }
        for s in sets {
            let (k, v) = parse_assignment(s)?;
            spec.apply(&k, &v)?;
        }
        if let Some(g) = grid {
            spec.grid = g;
        }
        Ok(spec)
    }
}

/// Header plus rows of numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// 15 significant digits, scientific notation, `-0` printed as `0`.
pub fn format_number(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&x| format_number(x)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }

    pub fn from_csv(text: &str) -> CliResult<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            rows.push(
                rec.iter()
                    .map(|s| s.parse::<f64>().map_err(|_| usage(format!("bad number '{s}' in csv"))))
                    .collect::<CliResult<Vec<f64>>>()?,
            );
        }
        Ok(Table { header, rows })
    }
}

/// Integrator settings, honouring a `QUTRIT_TOL` value when given.
pub fn integrator_config(tol: Option<&str>) -> CliResult<IntegratorConfig> {
    match tol {
        None => Ok(IntegratorConfig::default()),
        Some(s) => {
            let t: f64 = s
                .trim()
                .parse()
                .map_err(|_| usage(format!("QUTRIT_TOL is not a number: '{s}'")))?;
            if !(t > 0.0 && t < 1.0) {
                return Err(usage(format!("QUTRIT_TOL must lie in (0, 1), got {t}")));
            }
            Ok(IntegratorConfig::with_tolerance(t))
        }
    }
}

fn time_grid(grid: &Grid) -> CliResult<Vec<f64>> {
    if grid.start < 0.0 || grid.stop < grid.start {
        return Err(usage(format!("time grid {grid} must satisfy 0 <= start <= stop")));
    }
    Ok(grid.values())
}

/// Runs one scenario.
pub fn run(spec: &ScenarioSpec, icfg: &IntegratorConfig) -> CliResult<Table> {
    let p = &spec.params;
    let rows = match spec.scenario {
        Scenario::Fig1 => fig1(p, &spec.grid, icfg)?,
        Scenario::Fig2 => fig2(p, &time_grid(&spec.grid)?, icfg)?,
        Scenario::Fig3 => fig3(p, &time_grid(&spec.grid)?)?,
        Scenario::Fig4 => fig4(p, &time_grid(&spec.grid)?, icfg)?,
        Scenario::Fig5 => fig5(p, &time_grid(&spec.grid)?)?,
    };
    Ok(Table {
        header: spec.scenario.header(),
        rows,
    })
}

/// Runs `spec` once per value of `key` on `values` and stacks the tables,
/// with `key` as an extra leading column. Rows stay in grid order.
pub fn sweep(spec: &ScenarioSpec, key: &str, values: &Grid, icfg: &IntegratorConfig) -> CliResult<Table> {
    let runs: Vec<Table> = values
        .values()
        .into_par_iter()
        .map(|v| {
            let mut s = spec.clone();
            s.params.set(key, v)?;
            run(&s, icfg)
        })
        .collect::<CliResult<_>>()?;
    let mut header = vec![key.to_string()];
    header.extend(spec.scenario.header());
    let mut rows = Vec::new();
    for (v, t) in values.values().into_iter().zip(runs) {
        for r in t.rows {
            let mut row = vec![v];
            row.extend(r);
            rows.push(row);
        }
    }
    Ok(Table { header, rows })
}

/// Gnuplot script drawing every data column of `table` against the first.
pub fn plot_script(title: &str, csv_path: &str, table: &Table) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set title '{title}'\n"));
    s.push_str(&format!("set xlabel '{}'\n", table.header[0]));
    s.push_str(&format!(
        "plot for [i=2:{}] '{}' using 1:i with lines\n",
        table.header.len(),
        csv_path.replace('\'', "''")
    ));
    s
}

fn fig1(p: &Params, grid: &Grid, icfg: &IntegratorConfig) -> CliResult<Vec<Vec<f64>>> {
    let ratios = grid.values();
    let omega = p.get("omega");
    if omega == 0.0 {
        return Err(usage("omega must be non-zero for fig1"));
    }
    let tau = p.get("periods") * default_tau(omega) / 400.0;
    let mut cols = Vec::new();
    for key in ["k1", "k2"] {
        let cfg = FieldConfig {
            omega1: p.get("omega1"),
            omega,
            omega0: omega,
            k: p.get(key),
            q: p.get("q"),
            d: p.get("d"),
        };
        cols.push(averaged_populations(&cfg, tau, &ratios, icfg)?);
    }
    Ok(ratios
        .iter()
        .enumerate()
        .map(|(i, &r)| vec![r, cols[0][i].p_plus, cols[0][i].p_zero, cols[1][i].p_plus, cols[1][i].p_zero])
        .collect())
}

fn fig2(p: &Params, ts: &[f64], icfg: &IntegratorConfig) -> CliResult<Vec<Vec<f64>>> {
    let field = FieldConfig {
        omega1: p.get("omega1"),
        omega: p.get("omega"),
        omega0: p.get("omega0"),
        k: p.get("k"),
        q: p.get("q"),
        d: p.get("d"),
    };
    let pair = PairConfig {
        first: field,
        varpi1: 0.0,
        varpi0: 0.0,
        q_bar: field.q,
        d_bar: field.d,
        j: p.get("j"),
    };
    let t_end = *ts.last().expect("non-empty grid");
    let down = BlochVector::basis_state(-1)?;
    let rho_down = density_from_bloch(&down);
    let r0 = tensor_from_density(&kron(&rho_down, &rho_down))?;
    let span = (0.0, t_end.max(f64::MIN_POSITIVE));
    let (free, coupled) = rayon::join(
        || evolve_bloch(&down, &field, span, icfg),
        || evolve_pair(&r0, &pair, span, icfg),
    );
    let (free, coupled) = (free?, coupled?);
    ts.iter()
        .map(|&t| {
            let s_free = spin_expectations(&BlochVector::from_components(&free.interpolate(t)));
            let rho = density_from_tensor(&BlochTensor::from_packed(&coupled.interpolate(t)));
            let s_cpl = spin_expectations(&bloch_from_density(&partial_trace(&rho, 0, 2)?)?);
            Ok(vec![t, s_free[1], s_free[2], s_cpl[1], s_cpl[2]])
        })
        .collect()
}

fn fig3(p: &Params, ts: &[f64]) -> CliResult<Vec<Vec<f64>>> {
    let (q, j) = (p.get("q"), p.get("j"));
    let rho0 = maximally_entangled();
    let mut aniso = Vec::new();
    for sign in [-1.0, 1.0] {
        let h = PairCoeffs::from_fields([0.0; 3], q, q, [0.0; 3], q, q, sign * j).matrix();
        aniso.push(eigh(&h)?);
    }
    let (k, omega1, omega) = (p.get("k"), p.get("omega1"), p.get("omega"));
    ts.par_iter()
        .map(|&t| {
            let neg = m_sm(&tensor_from_density(&conjugate(&aniso[0].propagator(t), &rho0))?);
            let pos = m_sm(&tensor_from_density(&conjugate(&aniso[1].propagator(t), &rho0))?);
            let rep = measure_report(&density_from_tensor(&ghz_correlations(t, j, omega1, omega, k)), t)?;
            Ok(vec![t, neg, pos, rep.m_vw, rep.m_sm, rep.eta, rep.m_i])
        })
        .collect()
}

fn fig4(p: &Params, ts: &[f64], icfg: &IntegratorConfig) -> CliResult<Vec<Vec<f64>>> {
    let (w0, j) = (p.get("omega0"), p.get("j"));
    let rho0 = maximally_entangled();
    let r0 = tensor_from_density(&rho0)?;
    let t_end = *ts.last().expect("non-empty grid");
    let pulsed = evolve_pair_with(
        &r0,
        move |t| {
            // unit-height switching pattern scaled to the requested strength
            let a = w0 * impulse_amplitude(t) / 2.0;
            PairCoeffs::from_fields([0.0, 0.0, a], 0.0, 0.0, [0.0, 0.0, -a], 0.0, 0.0, j)
        },
        (0.0, t_end.max(f64::MIN_POSITIVE)),
        icfg,
        &IMPULSE_EDGES,
    )?;
    let free = eigh(&PairCoeffs::from_fields([0.0; 3], 0.0, 0.0, [0.0; 3], 0.0, 0.0, j).matrix())?;
    ts.iter()
        .map(|&t| {
            let m_p = m_sm(&BlochTensor::from_packed(&pulsed.interpolate(t)));
            let m_f = m_sm(&tensor_from_density(&conjugate(&free.propagator(t), &rho0))?);
            Ok(vec![t, m_p, m_f])
        })
        .collect()
}

fn fig5(p: &Params, ts: &[f64]) -> CliResult<Vec<Vec<f64>>> {
    let j = p.get("j");
    let cols: Vec<Vec<f64>> = (MIN_SITES..=MAX_SITES)
        .into_par_iter()
        .map(|n| -> CliResult<Vec<f64>> {
            let evolver = ChainEvolver::new(hamiltonian_n(n, j, [0.0; 3])?)?;
            let mut state = ghz_state(n)?;
            let mut now = 0.0;
            let mut out = Vec::with_capacity(ts.len());
            for &t in ts {
                state = evolver.evolve(&state, t - now)?;
                now = t;
                let ev = eigvalsh(&state.reduced(0)?)?;
                out.push(eta_n(&[ev[0], ev[1], ev[2]])?);
            }
            Ok(out)
        })
        .collect::<CliResult<_>>()?;
    Ok(ts
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut row = vec![t];
            row.extend(cols.iter().map(|c| c[i]));
            row
        })
        .collect())
}
