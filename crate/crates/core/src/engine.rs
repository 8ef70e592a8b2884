//! Exact per-edge QAOA expectation values on the edge-neighbourhood tree of a
//! `d`-regular graph of sufficient girth.
//!
//! Every vertex of the tree carries a `2p`-bit trajectory: its computational
//! basis value at each of the `p` cost layers on the ket side and on the bra
//! side. A subtree is summarised by a [`BranchMessage`] over its parent's
//! trajectory. Since all `d - 1` child branches of a vertex are identical,
//! their product is an entrywise `(d - 1)`-th power of one message, so a single
//! chain of `p` steps replaces the exponentially large light cone.
//!
//! One step (`level_step`) multiplies the powered child message by the vertex
//! factor (initial `1/sqrt 2` amplitudes, the mixer chain, optional
//! single-qubit phases and the ket/bra tie-off of the final bit), then trades
//! each vertex trajectory bit for the matching parent bit through the diagonal
//! edge phase. The edge phase only depends on the XOR of the two bits, so the
//! exchange is one 2x2 butterfly per bit position: `2p` strided sweeps over the
//! `4^p` array, done in place.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::message::{message_len, BranchMessage, PAR_THRESHOLD};
use crate::params::ParamSet;

/// Tolerance on imaginary parts of observables before they are discarded.
pub const IMAG_TOLERANCE: f64 = 1e-10;

/// Deepest circuit evaluated under the default memory budget.
pub const DEFAULT_MAX_DEPTH: usize = 12;

const ENTRY_BYTES: u128 = std::mem::size_of::<Complex64>() as u128;

/// Bytes held by the two `4^p` working arrays of one evaluation.
pub fn working_set_bytes(p: usize) -> u128 {
    2 * ENTRY_BYTES * (1u128 << (2 * p))
}

/// Upper bound on the memory one evaluation may allocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryBudget {
    bytes: u128,
}

impl MemoryBudget {
    pub fn from_bytes(bytes: u128) -> Self {
        MemoryBudget { bytes }
    }

    /// Budget that admits exactly the depths up to `p`.
    pub fn up_to_depth(p: usize) -> Self {
        MemoryBudget {
            bytes: working_set_bytes(p),
        }
    }

    pub fn bytes(&self) -> u128 {
        self.bytes
    }

    pub fn check(&self, p: usize) -> Result<()> {
        let required = working_set_bytes(p);
        if required > self.bytes {
            return Err(Error::Resource {
                what: format!(
                    "depth-{p} contraction (two arrays of 4^{p} = {} complex entries)",
                    1u128 << (2 * p)
                ),
                required_bytes: required,
                budget_bytes: self.bytes,
            });
        }
        Ok(())
    }
}

impl Default for MemoryBudget {
    fn default() -> Self {
        MemoryBudget::up_to_depth(DEFAULT_MAX_DEPTH)
    }
}

/// Observables on the central edge `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeExpectation {
    /// `<Z_i Z_j>`
    pub zz: f64,
    /// `<Z_i>`; equals `<Z_j>` by the symmetry of the two roots.
    pub z_single: f64,
    /// Contraction with the identity observable; 1 up to rounding.
    pub norm: f64,
    /// `(1 - zz) / 2`
    pub c_edge: f64,
}

/// Per-layer single-vertex data. `ket[x][a]` is the amplitude-side factor of a
/// vertex with ket trajectory `a` whose final measured bit is `x`:
/// `1/sqrt 2 * prod_t phase_t(a_t) * mixer_t(a_{t+1}, a_t)`.
struct VertexTables {
    ket: [Vec<Complex64>; 2],
}

impl VertexTables {
    fn new(params: &ParamSet) -> Self {
        let p = params.p;
        let half = 1usize << p;
        let mixers: Vec<(f64, f64)> = params.beta.iter().map(|b| (b.cos(), b.sin())).collect();
        let phases: Vec<[Complex64; 2]> = (0..p)
            .map(|t| {
                let g = params.gamma_prime_at(t);
                [Complex64::from_polar(1.0, g), Complex64::from_polar(1.0, -g)]
            })
            .collect();
        let amp0 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut ket = [vec![Complex64::default(); half], vec![Complex64::default(); half]];
        for a in 0..half {
            for x in 0..2usize {
                let mut acc = amp0;
                for t in 0..p {
                    let cur = (a >> t) & 1;
                    let next = if t + 1 < p { (a >> (t + 1)) & 1 } else { x };
                    let (c, s) = mixers[t];
                    let m = if cur == next {
                        Complex64::new(c, 0.0)
                    } else {
                        Complex64::new(0.0, -s)
                    };
                    acc *= phases[t][cur] * m;
                }
                ket[x][a] = acc;
            }
        }
        VertexTables { ket }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Observable {
    Identity,
    Z,
}

/// Multiplies `buf` entrywise by the vertex factor for the given observable on
/// the final bit (identity for every non-root vertex).
fn apply_vertex_factor(buf: &mut [Complex64], p: usize, tables: &VertexTables, obs: Observable) {
    let half = 1usize << p;
    let sign1 = match obs {
        Observable::Identity => 1.0,
        Observable::Z => -1.0,
    };
    let [k0, k1] = &tables.ket;
    let row = |(b, chunk): (usize, &mut [Complex64])| {
        let c0 = k0[b].conj();
        let c1 = k1[b].conj() * sign1;
        for (a, z) in chunk.iter_mut().enumerate() {
            *z *= k0[a] * c0 + k1[a] * c1;
        }
    };
    if buf.len() >= PAR_THRESHOLD {
        buf.par_chunks_mut(half).enumerate().for_each(row);
    } else {
        buf.chunks_mut(half).enumerate().for_each(row);
    }
}

#[inline]
fn butterfly(lo: &mut Complex64, hi: &mut Complex64, c: f64, s: f64) {
    let sum = *lo + *hi;
    let diff = *lo - *hi;
    // i * s * diff
    let rot = Complex64::new(-s * diff.im, s * diff.re);
    let base = sum * c;
    *lo = base + rot;
    *hi = base - rot;
}

/// Replaces each of the `2p` trajectory bits by the neighbour's bit through
/// the edge phase `e^{+-i gamma}` (equal / different bits), conjugated on the bra side.
fn exchange_through_edge(buf: &mut [Complex64], params: &ParamSet) {
    let p = params.p;
    for pos in 0..2 * p {
        let layer = pos % p;
        let (s, c) = params.gamma[layer].sin_cos();
        let s = if pos < p { s } else { -s };
        let stride = 1usize << pos;
        let block = |blk: &mut [Complex64]| {
            let (lo, hi) = blk.split_at_mut(stride);
            for (x0, x1) in lo.iter_mut().zip(hi.iter_mut()) {
                butterfly(x0, x1, c, s);
            }
        };
        if buf.len() < PAR_THRESHOLD {
            buf.chunks_mut(2 * stride).for_each(block);
        } else if 2 * stride < PAR_THRESHOLD {
            buf.par_chunks_mut(2 * stride).for_each(block);
        } else {
            for blk in buf.chunks_mut(2 * stride) {
                let (lo, hi) = blk.split_at_mut(stride);
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .for_each(|(x0, x1)| butterfly(x0, x1, c, s));
            }
        }
    }
}

fn power_slice(buf: &mut [Complex64], k: u32) {
    if k == 1 {
        return;
    }
    if buf.len() >= PAR_THRESHOLD {
        buf.par_iter_mut().for_each(|z| *z = z.powu(k));
    } else {
        buf.iter_mut().for_each(|z| *z = z.powu(k));
    }
}

/// One tree level, in place: `buf <- exchange(vertex_factor * buf^(d-1))`.
fn step_in_place(buf: &mut [Complex64], params: &ParamSet, tables: &VertexTables) {
    power_slice(buf, (params.d - 1) as u32);
    apply_vertex_factor(buf, params.p, tables, Observable::Identity);
    exchange_through_edge(buf, params);
}

/// `sum_k weight[k] * vertex_factor[k] * other[k]`, reduced in a fixed order.
fn contract(
    weight: &[Complex64],
    other: &[Complex64],
    p: usize,
    tables: &VertexTables,
    obs: Observable,
) -> Complex64 {
    let half = 1usize << p;
    let sign1 = match obs {
        Observable::Identity => 1.0,
        Observable::Z => -1.0,
    };
    let [k0, k1] = &tables.ket;
    let row = |(b, (w, o)): (usize, (&[Complex64], &[Complex64]))| -> Complex64 {
        let c0 = k0[b].conj();
        let c1 = k1[b].conj() * sign1;
        let mut acc = Complex64::default();
        for a in 0..half {
            acc += w[a] * o[a] * (k0[a] * c0 + k1[a] * c1);
        }
        acc
    };
    let partials: Vec<Complex64> = if weight.len() >= PAR_THRESHOLD {
        weight
            .par_chunks(half)
            .zip(other.par_chunks(half))
            .enumerate()
            .map(row)
            .collect()
    } else {
        weight
            .chunks(half)
            .zip(other.chunks(half))
            .enumerate()
            .map(row)
            .collect()
    };
    partials.into_iter().sum()
}

fn check_real(name: &str, z: Complex64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Numeric(format!("{name} is not finite: {z}")));
    }
    if z.im.abs() >= IMAG_TOLERANCE {
        return Err(Error::Numeric(format!(
            "{name} has imaginary part {:e} above tolerance",
            z.im
        )));
    }
    Ok(z.re)
}

/// Which root observables an evaluation needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Needed {
    ZzOnly,
    All,
}

struct RawRoot {
    zz: Complex64,
    z: Option<Complex64>,
    norm: Option<Complex64>,
}

/// Evaluator bound to a memory budget. Stateless apart from the budget, so one
/// engine may be shared across threads.
#[derive(Debug, Clone, Copy, Default)]
pub struct Engine {
    budget: MemoryBudget,
}

impl Engine {
    pub fn new(budget: MemoryBudget) -> Self {
        Engine { budget }
    }

    pub fn budget(&self) -> MemoryBudget {
        self.budget
    }

    /// Message arriving at a root from one of its child branches.
    pub fn root_message(&self, params: &ParamSet) -> Result<BranchMessage> {
        params.validate()?;
        self.budget.check(params.p)?;
        let tables = VertexTables::new(params);
        let mut buf = vec![Complex64::new(1.0, 0.0); message_len(params.p)];
        for _ in 0..params.p {
            step_in_place(&mut buf, params, &tables);
        }
        BranchMessage::from_entries(params.p, buf)
    }

    fn evaluate(&self, params: &ParamSet, needed: Needed) -> Result<RawRoot> {
        params.validate()?;
        self.budget.check(params.p)?;
        let p = params.p;
        let tables = VertexTables::new(params);

        let mut powered = vec![Complex64::new(1.0, 0.0); message_len(p)];
        for _ in 0..p {
            step_in_place(&mut powered, params, &tables);
        }
        power_slice(&mut powered, (params.d - 1) as u32);

        // Message from root j to root i with Z inserted at j.
        let mut other = powered.clone();
        apply_vertex_factor(&mut other, p, &tables, Observable::Z);
        exchange_through_edge(&mut other, params);
        let zz = contract(&powered, &other, p, &tables, Observable::Z);

        if needed == Needed::ZzOnly {
            return Ok(RawRoot {
                zz,
                z: None,
                norm: None,
            });
        }

        other.copy_from_slice(&powered);
        apply_vertex_factor(&mut other, p, &tables, Observable::Identity);
        exchange_through_edge(&mut other, params);
        let z = contract(&powered, &other, p, &tables, Observable::Z);
        let norm = contract(&powered, &other, p, &tables, Observable::Identity);
        Ok(RawRoot {
            zz,
            z: Some(z),
            norm: Some(norm),
        })
    }

    /// `<Z_i Z_j>`, `<Z_i>` and the norm on the central edge.
    pub fn edge_expectation(&self, params: &ParamSet) -> Result<EdgeExpectation> {
        let raw = self.evaluate(params, Needed::All)?;
        let zz = check_real("<ZZ>", raw.zz)?;
        let z_single = check_real("<Z>", raw.z.expect("all observables requested"))?;
        let norm = check_real("norm", raw.norm.expect("all observables requested"))?;
        Ok(EdgeExpectation {
            zz,
            z_single,
            norm,
            c_edge: (1.0 - zz) / 2.0,
        })
    }

    /// Expected cut contribution of one edge; skips the identity-side contraction.
    pub fn c_edge(&self, params: &ParamSet) -> Result<f64> {
        let raw = self.evaluate(params, Needed::ZzOnly)?;
        let zz = check_real("<ZZ>", raw.zz)?;
        Ok((1.0 - zz) / 2.0)
    }

    /// Expected `I_1 / |V|` for the two-angle driver: `<b_i> - (d/2) <b_i b_j>`,
    /// with `b = (1 - Z) / 2`. For `d = 3` this is
    /// `(3/2) <(1/2)(1/2 - Z_i Z_j / 2) - 1/6 + (Z_i + Z_j) / 12>`.
    /// A missing `gamma_prime` is treated as all zeros.
    pub fn mis_edge_objective(&self, params: &ParamSet) -> Result<f64> {
        let e = self.edge_expectation(params)?;
        Ok(mis_value_from(params.d, e.zz, e.z_single))
    }
}

/// Per-vertex independent-set surrogate from the edge observables.
pub fn mis_value_from(d: usize, zz: f64, z: f64) -> f64 {
    let b = (1.0 - z) / 2.0;
    let bb = (1.0 - 2.0 * z + zz) / 4.0;
    b - (d as f64 / 2.0) * bb
}

/// One level of the contraction: the message `child` has arrived at a vertex
/// from each of its `d - 1` children; returns the message that vertex sends
/// to its parent.
pub fn level_step(child: &BranchMessage, params: &ParamSet) -> Result<BranchMessage> {
    params.validate()?;
    if child.p() != params.p {
        return Err(Error::InvalidParameter(format!(
            "message depth {} does not match parameter depth {}",
            child.p(),
            params.p
        )));
    }
    let tables = VertexTables::new(params);
    let mut buf = child.clone().into_entries();
    step_in_place(&mut buf, params, &tables);
    BranchMessage::from_entries(params.p, buf)
}

/// [`Engine::edge_expectation`] under the default memory budget.
pub fn edge_expectation(params: &ParamSet) -> Result<EdgeExpectation> {
    Engine::default().edge_expectation(params)
}

/// [`Engine::mis_edge_objective`] under the default memory budget.
pub fn mis_edge_objective(params: &ParamSet) -> Result<f64> {
    Engine::default().mis_edge_objective(params)
}
