//! Adaptive Dormand–Prince 5(4) integration with dense output.
//!
//! The integrator works on flat real state vectors. Complex systems are
//! packed as interleaved `(re, im)` pairs by the callers.

use crate::error::{Error, Result};

/// Step-size control parameters.
#[derive(Debug, Clone)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    /// Stride (in accepted steps) used when sampling invariants.
    pub monitor_interval: usize,
    /// Keep the per-step interpolation data.
    pub dense_output: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-10,
            max_step: f64::INFINITY,
            monitor_interval: 1,
            dense_output: true,
        }
    }
}

impl IntegratorConfig {
    /// Same relative and absolute tolerance.
    pub fn with_tolerance(tol: f64) -> Self {
        IntegratorConfig {
            rel_tol: tol,
            abs_tol: tol,
            ..Default::default()
        }
    }

    pub fn max_step(mut self, h: f64) -> Self {
        self.max_step = h;
        self
    }

    pub fn without_dense_output(mut self) -> Self {
        self.dense_output = false;
        self
    }
}

#[derive(Debug, Clone)]
struct DenseSegment {
    t0: f64,
    h: f64,
    // five coefficient blocks of length `dim`, laid out contiguously
    coeffs: Vec<f64>,
}

/// Accepted steps of an integration run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    dim: usize,
    segments: Vec<DenseSegment>,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn last(&self) -> &[f64] {
        self.states.last().expect("trajectory holds the initial state")
    }

    pub fn end_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds the initial time")
    }

    pub fn has_dense_output(&self) -> bool {
        !self.segments.is_empty() || self.times.len() == 1
    }

    /// State at `t` from the fourth-order continuous extension.
    ///
    /// Panics if dense output was disabled or `t` lies outside the span.
    pub fn interpolate(&self, t: f64) -> Vec<f64> {
        let t0 = self.times[0];
        let t1 = self.end_time();
        assert!(
            t >= t0.min(t1) - 1e-12 && t <= t0.max(t1) + 1e-12,
            "t = {t} outside [{t0}, {t1}]"
        );
        if self.times.len() == 1 {
            return self.states[0].clone();
        }
        assert!(!self.segments.is_empty(), "dense output disabled");
        let forward = t1 >= t0;
        let idx = self
            .segments
            .partition_point(|s| if forward { s.t0 + s.h < t } else { s.t0 + s.h > t })
            .min(self.segments.len() - 1);
        let seg = &self.segments[idx];
        let n = self.dim;
        let theta = (t - seg.t0) / seg.h;
        let theta1 = 1.0 - theta;
        let r = &seg.coeffs;
        (0..n)
            .map(|i| {
                r[i] + theta * (r[n + i] + theta1 * (r[2 * n + i] + theta * (r[3 * n + i] + theta1 * r[4 * n + i])))
            })
            .collect()
    }

    /// Interpolated states at each requested time.
    pub fn sample(&self, times: &[f64]) -> Vec<Vec<f64>> {
        times.iter().map(|&t| self.interpolate(t)).collect()
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// Integrates `dy/dt = rhs(t, y)` over `t_span`.
///
/// Every time in `discontinuities` that falls strictly inside the span ends a
/// piece; the integrator is restarted there. Inside a piece the right-hand
/// side is only evaluated at interior times: stages that land on a piece
/// boundary are nudged inward so that step-like drives are sampled by their
/// one-sided limits.
pub fn integrate<F>(
    mut rhs: F,
    y0: &[f64],
    t_span: (f64, f64),
    cfg: &IntegratorConfig,
    discontinuities: &[f64],
) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let (t0, t1) = t_span;
    if !(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0) {
        return Err(Error::Domain("tolerances must be positive".into()));
    }
    if discontinuities.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("discontinuity list must be sorted".into()));
    }
    let dim = y0.len();
    let mut traj = Trajectory {
        times: vec![t0],
        states: vec![y0.to_vec()],
        dim,
        segments: Vec::new(),
    };
    if t0 == t1 {
        return Ok(traj);
    }
    let dir = (t1 - t0).signum();
    let mut cuts: Vec<f64> = discontinuities
        .iter()
        .copied()
        .filter(|&d| (d - t0) * dir > 0.0 && (t1 - d) * dir > 0.0)
        .collect();
    if dir < 0.0 {
        cuts.reverse();
    }
    cuts.push(t1);

    let span = (t1 - t0).abs();
    let mut a = t0;
    for b in cuts {
        integrate_piece(&mut rhs, (a, b), span, cfg, &mut traj)?;
        a = b;
    }
    Ok(traj)
}

fn integrate_piece<F>(
    rhs: &mut F,
    (a, b): (f64, f64),
    span: f64,
    cfg: &IntegratorConfig,
    traj: &mut Trajectory,
) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = traj.dim;
    let dir = (b - a).signum();
    let nudge = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
    let (lo, hi) = if dir > 0.0 { (a, b) } else { (b, a) };
    let clamp = |t: f64| -> f64 {
        if hi - lo <= 2.0 * nudge {
            0.5 * (lo + hi)
        } else {
            t.clamp(lo + nudge, hi - nudge)
        }
    };
    let mut eval = |t: f64, y: &[f64], dy: &mut [f64]| -> Result<()> {
        rhs(clamp(t), y, dy);
        if dy.iter().any(|v| !v.is_finite()) {
            return Err(Error::Propagation { t });
        }
        Ok(())
    };

    let mut t = a;
    let mut y = traj.last().to_vec();
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut k5 = vec![0.0; n];
    let mut k6 = vec![0.0; n];
    let mut k7 = vec![0.0; n];
    let mut ytmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];
    eval(t, &y, &mut k1)?;

    let max_step = cfg.max_step.min((b - a).abs());
    let mut h = initial_step(&mut eval, t, &y, &k1, dir, cfg)?.min(max_step);
    let h_min = 1e-12 * span;
    let mut last_rejected = false;

    while (b - t) * dir > 0.0 {
        if h < h_min {
            return Err(Error::Stiffness { t, h });
        }
        let mut last = false;
        if (t + dir * h - b) * dir >= 0.0 || (b - t).abs() - h < 1e-12 * h {
            h = (b - t).abs();
            last = true;
        }
        let hs = dir * h;

        for i in 0..n {
            ytmp[i] = y[i] + hs * A21 * k1[i];
        }
        eval(t + C2 * hs, &ytmp, &mut k2)?;
        for i in 0..n {
            ytmp[i] = y[i] + hs * (A31 * k1[i] + A32 * k2[i]);
        }
        eval(t + C3 * hs, &ytmp, &mut k3)?;
        for i in 0..n {
            ytmp[i] = y[i] + hs * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        eval(t + C4 * hs, &ytmp, &mut k4)?;
        for i in 0..n {
            ytmp[i] = y[i] + hs * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        eval(t + C5 * hs, &ytmp, &mut k5)?;
        for i in 0..n {
            ytmp[i] = y[i] + hs * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        let t_new = if last { b } else { t + hs };
        eval(t_new, &ytmp, &mut k6)?;
        for i in 0..n {
            ynew[i] = y[i] + hs * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        eval(t_new, &ynew, &mut k7)?;

        let mut err = 0.0;
        for i in 0..n {
            let e = hs * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sk = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(ynew[i].abs());
            err += (e / sk).powi(2);
        }
        let err = (err / n.max(1) as f64).sqrt();
        if !err.is_finite() {
            return Err(Error::Propagation { t });
        }

        if err <= 1.0 {
            if cfg.dense_output {
                let mut coeffs = vec![0.0; 5 * n];
                for i in 0..n {
                    let dy = ynew[i] - y[i];
                    let bspl = hs * k1[i] - dy;
                    coeffs[i] = y[i];
                    coeffs[n + i] = dy;
                    coeffs[2 * n + i] = bspl;
                    coeffs[3 * n + i] = dy - hs * k7[i] - bspl;
                    coeffs[4 * n + i] =
                        hs * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
                }
                traj.segments.push(DenseSegment { t0: t, h: hs, coeffs });
            }
            t = t_new;
            std::mem::swap(&mut y, &mut ynew);
            std::mem::swap(&mut k1, &mut k7);
            traj.times.push(t);
            traj.states.push(y.clone());

            let mut factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            if last_rejected {
                factor = factor.min(1.0);
            }
            last_rejected = false;
            h = (h * factor).min(max_step);
        } else {
            let factor = (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, 1.0);
            h *= factor;
            last_rejected = true;
        }
    }
    Ok(())
}

fn initial_step<E>(eval: &mut E, t: f64, y: &[f64], f0: &[f64], dir: f64, cfg: &IntegratorConfig) -> Result<f64>
where
    E: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
{
    let n = y.len().max(1) as f64;
    let sk = |i: usize| cfg.abs_tol + cfg.rel_tol * y[i].abs();
    let d0 = (y.iter().enumerate().map(|(i, v)| (v / sk(i)).powi(2)).sum::<f64>() / n).sqrt();
    let d1 = (f0.iter().enumerate().map(|(i, v)| (v / sk(i)).powi(2)).sum::<f64>() / n).sqrt();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1: Vec<f64> = y.iter().zip(f0).map(|(a, b)| a + dir * h0 * b).collect();
    let mut f1 = vec![0.0; y.len()];
    eval(t + dir * h0, &y1, &mut f1)?;
    let d2 = (f1
        .iter()
        .zip(f0)
        .enumerate()
        .map(|(i, (a, b))| ((a - b) / sk(i)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt()
        / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    Ok((100.0 * h0).min(h1))
}

/// Which conserved quantity [`monitor_invariants`] tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantKind {
    /// Length `b` of an 8-component single-qutrit Bloch vector.
    Bloch1,
    /// Generalized length `sqrt(Σ R_αβ² - 1)` of an 80-component bi-qutrit
    /// state (`R_00 = 1` implied).
    Bloch2,
    /// Euclidean norm of a packed complex state vector.
    Unitary,
}

/// Drift of a conserved quantity along a trajectory.
#[derive(Debug, Clone)]
pub struct DriftReport {
    pub initial: f64,
    pub max_drift: f64,
    pub values: Vec<f64>,
}

/// Samples the conserved quantity of `kind` every `interval` steps (the last
/// step is always included) and reports its maximal deviation from the
/// initial value.
pub fn monitor_invariants(traj: &Trajectory, kind: InvariantKind, interval: usize) -> Result<DriftReport> {
    let dim = traj.dim();
    let ok = match kind {
        InvariantKind::Bloch1 => dim == 8,
        InvariantKind::Bloch2 => dim == 80,
        InvariantKind::Unitary => dim % 2 == 0,
    };
    if !ok {
        return Err(Error::Dimension {
            expected: match kind {
                InvariantKind::Bloch1 => 8,
                InvariantKind::Bloch2 => 80,
                InvariantKind::Unitary => dim + 1,
            },
            got: dim,
        });
    }
    let measure = |s: &[f64]| -> f64 {
        let sq: f64 = s.iter().map(|x| x * x).sum();
        sq.sqrt()
    };
    let stride = interval.max(1);
    let n = traj.states.len();
    let mut values: Vec<f64> = (0..n)
        .step_by(stride)
        .map(|i| measure(&traj.states[i]))
        .collect();
    if (n - 1) % stride != 0 {
        values.push(measure(&traj.states[n - 1]));
    }
    let initial = values[0];
    let max_drift = values.iter().map(|v| (v - initial).abs()).fold(0.0, f64::max);
    Ok(DriftReport {
        initial,
        max_drift,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn harmonic(_t: f64, y: &[f64], dy: &mut [f64]) {
        dy[0] = y[1];
        dy[1] = -y[0];
    }

    #[test]
    fn constant_solution() {
        let traj = integrate(|_, _, dy: &mut [f64]| dy.fill(0.0), &[1.5, -2.0], (0.0, 10.0), &Default::default(), &[])
            .unwrap();
        assert_eq!(traj.last(), &[1.5, -2.0]);
    }

    #[test]
    fn harmonic_oscillator_ten_periods() {
        let cfg = IntegratorConfig::with_tolerance(1e-10);
        let traj = integrate(harmonic, &[0.0, 1.0], (0.0, 20.0 * PI), &cfg, &[]).unwrap();
        let y = traj.last();
        let amp = (y[0] * y[0] + y[1] * y[1]).sqrt();
        assert!((amp - 1.0).abs() < 1e-7);
        assert!(y[0].abs() < 1e-7);
    }

    #[test]
    fn backward_integration() {
        let cfg = IntegratorConfig::with_tolerance(1e-11);
        let traj = integrate(harmonic, &[0.0, 1.0], (0.0, -3.0), &cfg, &[]).unwrap();
        assert!((traj.last()[0] - (-3.0f64).sin()).abs() < 1e-9);
        let mid = traj.interpolate(-1.3);
        assert!((mid[0] - (-1.3f64).sin()).abs() < 1e-7);
    }

    #[test]
    fn dense_output_matches_forced_stop() {
        let cfg = IntegratorConfig::with_tolerance(1e-11);
        let long = integrate(harmonic, &[0.0, 1.0], (0.0, 10.0), &cfg, &[]).unwrap();
        for &tm in &[0.37, 2.9, 6.123, 9.99] {
            let short = integrate(harmonic, &[0.0, 1.0], (0.0, tm), &cfg, &[]).unwrap();
            let a = long.interpolate(tm);
            let b = short.last();
            assert!((a[0] - b[0]).abs() < 1e-7 && (a[1] - b[1]).abs() < 1e-7);
        }
    }

    #[test]
    fn step_drive_with_restarts() {
        // dy/dt = θ(t - 1): exact y(2) = 1 when the jump is a restart point.
        let step = |t: f64, _: &[f64], dy: &mut [f64]| dy[0] = if t >= 1.0 { 1.0 } else { 0.0 };
        let cfg = IntegratorConfig::with_tolerance(1e-12);
        let traj = integrate(step, &[0.0], (0.0, 2.0), &cfg, &[1.0]).unwrap();
        assert!((traj.last()[0] - 1.0).abs() < 1e-13);
        assert!(traj.times.contains(&1.0));
    }

    #[test]
    fn nan_is_reported() {
        let bad = |t: f64, _: &[f64], dy: &mut [f64]| dy[0] = if t > 0.5 { f64::NAN } else { 1.0 };
        let err = integrate(bad, &[0.0], (0.0, 1.0), &Default::default(), &[]).unwrap_err();
        assert!(matches!(err, Error::Propagation { .. }));
    }

    #[test]
    fn blowup_underflows() {
        // y' = y² from y(0) = 1 blows up at t = 1.
        let f = |_: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0] * y[0];
        let err = integrate(f, &[1.0], (0.0, 2.0), &Default::default(), &[]).unwrap_err();
        assert!(matches!(err, Error::Stiffness { .. } | Error::Propagation { .. }));
    }

    #[test]
    fn unsorted_discontinuities_rejected() {
        let r = integrate(harmonic, &[0.0, 1.0], (0.0, 1.0), &Default::default(), &[0.7, 0.2]);
        assert!(r.is_err());
    }

    #[test]
    fn unitary_monitor_on_rotation() {
        let cfg = IntegratorConfig::with_tolerance(1e-10);
        let traj = integrate(harmonic, &[0.6, 0.8], (0.0, 30.0), &cfg, &[]).unwrap();
        let rep = monitor_invariants(&traj, InvariantKind::Unitary, 3).unwrap();
        assert!((rep.initial - 1.0).abs() < 1e-15);
        assert!(rep.max_drift < 1e-8);
        assert!(monitor_invariants(&traj, InvariantKind::Bloch1, 1).is_err());
    }

    #[test]
    fn fifth_order_convergence() {
        // With a huge tolerance the step is pinned at max_step; halving it
        // should shrink the global error by about 2^5.
        let errs: Vec<f64> = [0.1, 0.05, 0.025]
            .iter()
            .map(|&h| {
                let cfg = IntegratorConfig::with_tolerance(1e3).max_step(h);
                let traj = integrate(harmonic, &[0.0, 1.0], (0.0, 10.0), &cfg, &[]).unwrap();
                (traj.last()[0] - 10f64.sin()).abs()
            })
            .collect();
        let ratio = errs[1] / errs[2];
        assert!(ratio > 24.0 && ratio < 40.0, "ratio {ratio}");
    }

}
