//! Angle optimization for the MaxCut and independent-set objectives.

mod canonical;
mod interp;
mod lbfgs;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::truncate4;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::params::ParamSet;

pub use canonical::canonicalize;
pub use interp::{interpolate_init, resample};
pub use lbfgs::{gradient, maximize, LocalMaximum, OptimizerConfig, Status};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Objective being maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `c_edge` over `(gamma, beta)`.
    Maxcut,
    /// `1/2 - (d/4)(1 - c_edge)` over `(gamma, beta)`, the independence-ratio
    /// bound obtained from the MaxCut driver (`(3/4) c_edge - 1/4` for `d = 3`).
    MisTwoParam,
    /// Per-vertex `I_1` over `(gamma, gamma', beta)`.
    MisThreeParam,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Maxcut, Mode::MisTwoParam, Mode::MisThreeParam];

    pub fn uses_gamma_prime(self) -> bool {
        self == Mode::MisThreeParam
    }

    pub fn parameter_count(self, p: usize) -> usize {
        if self.uses_gamma_prime() {
            3 * p
        } else {
            2 * p
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Maxcut => "maxcut",
            Mode::MisTwoParam => "mis_two_param",
            Mode::MisThreeParam => "mis_three_param",
        }
    }

    fn stream(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maxcut" => Ok(Mode::Maxcut),
            "mis2" | "mis_two_param" => Ok(Mode::MisTwoParam),
            "mis3" | "mis_three_param" => Ok(Mode::MisThreeParam),
            other => Err(Error::InvalidInput(format!(
                "unknown mode `{other}` (expected maxcut, mis2 or mis3)"
            ))),
        }
    }
}

/// Independence-ratio bound from a cut fraction on `d`-regular graphs: half
/// the guaranteed total size of the two sets split off a cut assignment.
pub fn mis_from_c_edge(d: usize, c_edge: f64) -> f64 {
    0.5 - d as f64 / 4.0 * (1.0 - c_edge)
}

/// The objective of `mode` at a parameter set.
pub fn evaluate(engine: &Engine, mode: Mode, params: &ParamSet) -> Result<f64> {
    match mode {
        Mode::Maxcut => engine.c_edge(params),
        Mode::MisTwoParam => engine.c_edge(params).map(|c| mis_from_c_edge(params.d, c)),
        Mode::MisThreeParam => engine.mis_edge_objective(params),
    }
}

fn params_from(mode: Mode, d: usize, x: &[f64]) -> Result<ParamSet> {
    let mut ps = ParamSet::from_vector(d, x, mode.uses_gamma_prime())?;
    if mode == Mode::MisTwoParam {
        ps.gamma_prime = Some(vec![0.0; ps.p]);
    }
    Ok(ps)
}

fn to_vector(mode: Mode, params: &ParamSet) -> Vec<f64> {
    let mut v = params.gamma.clone();
    if mode.uses_gamma_prime() {
        v.extend(params.gamma_prime.clone().unwrap_or_else(|| vec![0.0; params.p]));
    }
    v.extend_from_slice(&params.beta);
    v
}

/// Objective over the flat angle vector of `mode`.
pub fn objective(engine: Engine, mode: Mode, d: usize) -> impl Fn(&[f64]) -> Result<f64> + Sync {
    move |x: &[f64]| evaluate(&engine, mode, &params_from(mode, d, x)?)
}

/// Where a start point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitStrategy {
    Random,
    Interpolated,
    User,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub mode: Mode,
    pub params: ParamSet,
    pub value: f64,
    pub gradient_norm: f64,
    /// Objective evaluations summed over all starts.
    pub evaluations: usize,
    pub restarts_used: usize,
    pub init_strategy: InitStrategy,
    /// Index of the winning start.
    pub start_index: usize,
    pub iterations: usize,
    pub status: Status,
    pub seed: u64,
}

/// Serialized form of optimized angles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDocument {
    pub p: usize,
    pub d: usize,
    pub mode: Mode,
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_prime: Option<Vec<f64>>,
    pub value: f64,
    pub truncated_bound: f64,
    pub seed: u64,
    pub engine_version: String,
}

impl OptimizationResult {
    pub fn to_document(&self) -> ParamsDocument {
        ParamsDocument {
            p: self.params.p,
            d: self.params.d,
            mode: self.mode,
            gamma: self.params.gamma.clone(),
            beta: self.params.beta.clone(),
            gamma_prime: self.params.gamma_prime.clone(),
            value: self.value,
            truncated_bound: truncate4(self.value),
            seed: self.seed,
            engine_version: ENGINE_VERSION.to_string(),
        }
    }
}

impl ParamsDocument {
    pub fn to_params(&self) -> Result<ParamSet> {
        let ps = ParamSet {
            p: self.p,
            d: self.d,
            gamma: self.gamma.clone(),
            beta: self.beta.clone(),
            gamma_prime: self.gamma_prime.clone(),
        };
        ps.validate()?;
        Ok(ps)
    }
}

/// Uniform random start: `gamma, gamma'` in `(-pi/2, pi/2)`, `beta` in `(-pi/4, pi/4)`.
pub fn random_start<R: Rng>(mode: Mode, p: usize, rng: &mut R) -> Vec<f64> {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    let mut draw = |half_width: f64| -> Vec<f64> {
        (0..p).map(|_| rng.gen_range(-half_width..half_width)).collect()
    };
    let mut v = draw(FRAC_PI_2);
    if mode.uses_gamma_prime() {
        v.extend(draw(FRAC_PI_2));
    }
    v.extend(draw(FRAC_PI_4));
    v
}

/// Random restarts used at each depth of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestartSchedule {
    pub shallow_restarts: usize,
    pub deep_restarts: usize,
    /// First depth that uses `deep_restarts`.
    pub deep_from: usize,
}

impl Default for RestartSchedule {
    fn default() -> Self {
        RestartSchedule {
            shallow_restarts: 10,
            deep_restarts: 4,
            deep_from: 5,
        }
    }
}

impl RestartSchedule {
    pub fn random_restarts(&self, p: usize) -> usize {
        if p >= self.deep_from {
            self.deep_restarts
        } else {
            self.shallow_restarts
        }
    }
}

fn rng_for(seed: u64, mode: Mode, p: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((p as u64) << 8 | mode.stream());
    rng
}

/// Maximizes `mode` at depth `p` from the given starts plus `random_restarts`
/// random points. Starts run in parallel; the winner is the highest value,
/// ties going to the lowest start index.
pub fn optimize_depth(
    engine: &Engine,
    mode: Mode,
    d: usize,
    p: usize,
    seeded_starts: &[(ParamSet, InitStrategy)],
    random_restarts: usize,
    cfg: &OptimizerConfig,
) -> Result<OptimizationResult> {
    cfg.validate()?;
    engine.budget().check(p)?;
    let mut starts: Vec<(Vec<f64>, InitStrategy)> = seeded_starts
        .iter()
        .map(|(ps, s)| {
            if ps.p != p || ps.d != d {
                return Err(Error::InvalidParameter(format!(
                    "start point has shape (p = {}, d = {}), expected (p = {p}, d = {d})",
                    ps.p, ps.d
                )));
            }
            Ok((to_vector(mode, ps), *s))
        })
        .collect::<Result<_>>()?;
    let mut rng = rng_for(cfg.seed, mode, p);
    for _ in 0..random_restarts {
        starts.push((random_start(mode, p, &mut rng), InitStrategy::Random));
    }
    if starts.is_empty() {
        return Err(Error::InvalidParameter("no start points".into()));
    }
    let f = objective(*engine, mode, d);
    let runs: Vec<LocalMaximum> = starts
        .par_iter()
        .map(|(x0, _)| maximize(&f, x0, cfg))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.value > runs[best].value {
            best = i;
        }
    }
    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    let win = &runs[best];
    let params = canonicalize(mode, &params_from(mode, d, &win.point)?);
    Ok(OptimizationResult {
        mode,
        value: evaluate(engine, mode, &params)?,
        params,
        gradient_norm: win.gradient_norm,
        evaluations,
        restarts_used: starts.len(),
        init_strategy: starts[best].1,
        start_index: best,
        iterations: win.iterations,
        status: win.status,
        seed: cfg.seed,
    })
}

/// Settings shared by the table drivers.
#[derive(Debug, Clone, Default)]
pub struct TableOptions {
    pub engine: Engine,
    pub optimizer: OptimizerConfig,
    pub schedule: RestartSchedule,
}

/// Ascends in depth for one objective: depth `p` starts from the interpolated
/// depth `p - 1` optimum (and any `hints[p - 1]`) plus the scheduled random restarts.
fn ascend(
    mode: Mode,
    p_max: usize,
    d: usize,
    opts: &TableOptions,
    hints: Option<&[OptimizationResult]>,
    mut on_row: impl FnMut(&OptimizationResult),
) -> Result<Vec<OptimizationResult>> {
    let mut rows: Vec<OptimizationResult> = Vec::with_capacity(p_max);
    for p in 1..=p_max {
        let mut seeded = Vec::new();
        if let Some(prev) = rows.last() {
            seeded.push((interpolate_init(&prev.params, p)?, InitStrategy::Interpolated));
        }
        if let Some(h) = hints.and_then(|h| h.get(p - 1)) {
            let mut ps = h.params.clone();
            ps.gamma_prime = Some(ps.gamma_prime.unwrap_or_else(|| vec![0.0; p]));
            seeded.push((ps, InitStrategy::User));
        }
        let row = optimize_depth(
            &opts.engine,
            mode,
            d,
            p,
            &seeded,
            opts.schedule.random_restarts(p),
            &opts.optimizer,
        )?;
        on_row(&row);
        rows.push(row);
    }
    Ok(rows)
}

/// Optimized rows `p = 1..=p_max` for each requested mode.
///
/// `mis_two_param` rows reuse the MaxCut optimization (the objective is an
/// increasing affine map of `c_edge`). `mis_three_param` additionally starts
/// from each MaxCut optimum with `gamma' = 0`, so its rows dominate the
/// two-parameter rows. `on_row` observes each row as it is produced.
pub fn optimize_tables(
    p_max: usize,
    d: usize,
    modes: &[Mode],
    opts: &TableOptions,
    mut on_row: impl FnMut(&OptimizationResult),
) -> Result<BTreeMap<Mode, Vec<OptimizationResult>>> {
    if p_max == 0 {
        return Err(Error::InvalidParameter("p_max must be at least 1".into()));
    }
    if modes.is_empty() {
        return Err(Error::InvalidParameter("no modes requested".into()));
    }
    opts.engine.budget().check(p_max)?;
    let mut out = BTreeMap::new();
    let maxcut = ascend(Mode::Maxcut, p_max, d, opts, None, |r| {
        if modes.contains(&Mode::Maxcut) {
            on_row(r)
        }
    })?;
    if modes.contains(&Mode::MisTwoParam) {
        let rows: Vec<OptimizationResult> = maxcut
            .iter()
            .map(|r| {
                let mut params = r.params.clone();
                params.gamma_prime = Some(vec![0.0; params.p]);
                OptimizationResult {
                    mode: Mode::MisTwoParam,
                    params,
                    value: mis_from_c_edge(d, r.value),
                    gradient_norm: d as f64 / 4.0 * r.gradient_norm,
                    ..r.clone()
                }
            })
            .collect();
        rows.iter().for_each(&mut on_row);
        out.insert(Mode::MisTwoParam, rows);
    }
    if modes.contains(&Mode::MisThreeParam) {
        let rows = ascend(Mode::MisThreeParam, p_max, d, opts, Some(&maxcut), &mut on_row)?;
        out.insert(Mode::MisThreeParam, rows);
    }
    if modes.contains(&Mode::Maxcut) {
        out.insert(Mode::Maxcut, maxcut);
    }
    Ok(out)
}

/// Single-mode convenience wrapper around [`optimize_tables`].
pub fn optimize_table(p_max: usize, d: usize, mode: Mode, opts: &TableOptions) -> Result<Vec<OptimizationResult>> {
    let mut tables = optimize_tables(p_max, d, &[mode], opts, |_| {})?;
    Ok(tables.remove(&mode).expect("requested mode is present"))
}
