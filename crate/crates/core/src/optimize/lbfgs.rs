//! Limited-memory BFGS ascent with central finite-difference gradients and an
//! Armijo backtracking line search.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of curvature pairs kept.
const HISTORY: usize = 8;
const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub finite_difference_step: f64,
    /// Random restarts per optimization (see [`super::RestartSchedule`] for tables).
    pub restart_count: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            max_iterations: 500,
            gradient_tolerance: 1e-8,
            finite_difference_step: 1e-6,
            restart_count: 10,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max_iterations must be positive".into()));
        }
        if !(self.gradient_tolerance > 0.0) || !(self.finite_difference_step > 0.0) {
            return Err(Error::InvalidParameter(
                "gradient tolerance and finite-difference step must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Gradient norm fell below the tolerance.
    Converged,
    /// Hit `max_iterations`; the point is the best found so far.
    IterationLimit,
    /// No step along the search direction improved the objective, which at
    /// this precision means the ascent has run out of resolvable progress.
    Stalled,
}

/// Result of one local ascent.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMaximum {
    pub point: Vec<f64>,
    pub value: f64,
    pub gradient_norm: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub status: Status,
    /// Best value after each iteration, starting with the initial value.
    pub trace: Vec<f64>,
}

fn checked<F>(f: &F, x: &[f64]) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let v = f(x)?;
    if !v.is_finite() {
        return Err(Error::Numeric(format!("objective is not finite at {x:?}")));
    }
    Ok(v)
}

/// Central-difference gradient `(f(x + h e_i) - f(x - h e_i)) / 2h`.
/// Components are evaluated in parallel; each is computed independently so
/// the result does not depend on scheduling.
pub fn gradient<F>(objective: &F, point: &[f64], step: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(format!("finite-difference step must be positive, got {step}")));
    }
    (0..point.len())
        .into_par_iter()
        .map(|i| {
            let mut x = point.to_vec();
            x[i] = point[i] + step;
            let up = objective(&x)?;
            x[i] = point[i] - step;
            let down = objective(&x)?;
            if !up.is_finite() || !down.is_finite() {
                return Err(Error::Numeric(format!(
                    "objective is not finite while differentiating component {i}"
                )));
            }
            Ok((up - down) / (2.0 * step))
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Ascent direction `H g` from the two-loop recursion over the stored pairs,
/// with `H` approximating the inverse of the negated Hessian.
fn direction(grad: &[f64], history: &VecDeque<(Vec<f64>, Vec<f64>)>) -> Vec<f64> {
    let mut q = grad.to_vec();
    let mut alphas = Vec::with_capacity(history.len());
    for (s, y) in history.iter().rev() {
        let rho = 1.0 / dot(y, s);
        let a = rho * dot(s, &q);
        q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
        alphas.push((a, rho));
    }
    if let Some((s, y)) = history.back() {
        let scale = dot(s, y) / dot(y, y);
        q.iter_mut().for_each(|qi| *qi *= scale);
    }
    for ((s, y), (a, rho)) in history.iter().zip(alphas.into_iter().rev()) {
        let b = rho * dot(y, &q);
        q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
    }
    q
}

/// Local maximization from `init`. Reaching the iteration limit is reported
/// through [`Status::IterationLimit`], not as an error.
pub fn maximize<F>(objective: &F, init: &[f64], cfg: &OptimizerConfig) -> Result<LocalMaximum>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    cfg.validate()?;
    if init.is_empty() {
        return Err(Error::InvalidParameter("cannot optimize over zero parameters".into()));
    }
    let n = init.len();
    let h = cfg.finite_difference_step;
    let mut x = init.to_vec();
    let mut fx = checked(objective, &x)?;
    let mut g = gradient(objective, &x, h)?;
    let mut evaluations = 1 + 2 * n;
    let mut history: VecDeque<(Vec<f64>, Vec<f64>)> = VecDeque::with_capacity(HISTORY);
    let mut trace = vec![fx];
    let mut status = Status::IterationLimit;
    let mut iterations = 0;

    while iterations < cfg.max_iterations {
        if norm(&g) <= cfg.gradient_tolerance {
            status = Status::Converged;
            break;
        }
        iterations += 1;
        let mut dir = direction(&g, &history);
        let mut slope = dot(&g, &dir);
        if !(slope > 0.0) {
            // Curvature information went bad; fall back to steepest ascent.
            history.clear();
            dir = g.clone();
            slope = dot(&g, &g);
        }
        let mut step = if history.is_empty() {
            (1.0 / norm(&dir)).min(1.0)
        } else {
            1.0
        };
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + step * di).collect();
            let ft = checked(objective, &trial)?;
            evaluations += 1;
            if ft >= fx + ARMIJO * step * slope && ft > fx {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else {
            status = Status::Stalled;
            break;
        };
        let g_new = gradient(objective, &x_new, h)?;
        evaluations += 2 * n;
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        // Curvature of the negated objective.
        let y: Vec<f64> = g.iter().zip(&g_new).map(|(a, b)| a - b).collect();
        if dot(&s, &y) > 1e-12 * norm(&s) * norm(&y) {
            if history.len() == HISTORY {
                history.pop_front();
            }
            history.push_back((s, y));
        }
        x = x_new;
        fx = f_new;
        g = g_new;
        trace.push(fx);
    }

    Ok(LocalMaximum {
        gradient_norm: norm(&g),
        point: x,
        value: fx,
        evaluations,
        iterations,
        status,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_of_constant_is_zero() {
        let g = gradient(&|_: &[f64]| Ok(3.5), &[1.0, -2.0, 0.5], 1e-6).unwrap();
        assert_eq!(g, vec![0.0; 3]);
    }

    #[test]
    fn gradient_of_quadratic() {
        let f = |x: &[f64]| Ok(x.iter().map(|v| v * v).sum());
        let g = gradient(&f, &[1.0, 2.0], 1e-6).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-6 && (g[1] - 4.0).abs() < 1e-6);
    }

    #[test]
    fn gradient_reports_bad_component() {
        let f = |x: &[f64]| Ok(if x[1] > 1.0 { f64::NAN } else { 0.0 });
        match gradient(&f, &[0.0, 1.0], 1e-3) {
            Err(Error::Numeric(msg)) => assert!(msg.contains("component 1")),
            other => panic!("{other:?}"),
        }
        assert!(gradient(&f, &[0.0], 0.0).is_err());
    }

    #[test]
    fn concave_quadratic_converges_to_center() {
        let c = [0.3, -1.2, 2.5, 0.0];
        let f = |x: &[f64]| Ok(-x.iter().zip(&c).map(|(a, b)| (a - b).powi(2)).sum::<f64>());
        for init in [[0.0; 4], [5.0, 5.0, -5.0, 1.0]] {
            let r = maximize(&f, &init, &OptimizerConfig::default()).unwrap();
            for (a, b) in r.point.iter().zip(&c) {
                assert!((a - b).abs() < 1e-8, "{:?}", r.point);
            }
        }
    }

    #[test]
    fn rosenbrock_valley() {
        let f = |x: &[f64]| Ok(-((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)));
        let r = maximize(&f, &[-1.2, 1.0], &OptimizerConfig::default()).unwrap();
        assert!((r.point[0] - 1.0).abs() < 1e-5 && (r.point[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn trace_is_monotone_and_limit_is_flagged() {
        let f = |x: &[f64]| Ok(-((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)));
        let cfg = OptimizerConfig {
            max_iterations: 3,
            ..OptimizerConfig::default()
        };
        let r = maximize(&f, &[-1.2, 1.0], &cfg).unwrap();
        assert_eq!(r.status, Status::IterationLimit);
        assert_eq!(r.iterations, 3);
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0]));
        assert_eq!(*r.trace.last().unwrap(), r.value);
    }

    #[test]
    fn nan_objective_is_an_error() {
        let f = |_: &[f64]| Ok(f64::NAN);
        assert!(matches!(
            maximize(&f, &[0.0], &OptimizerConfig::default()),
            Err(Error::Numeric(_))
        ));
    }
}
