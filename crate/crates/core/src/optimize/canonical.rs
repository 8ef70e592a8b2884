//! Reduction of angles to a fundamental domain of the objective's symmetries.
//!
//! Shifting `gamma_t` by `pi/2` multiplies the cost layer by the product of
//! `Z_a Z_b` over all edges, which is the identity for even `d` and the global
//! `Z` parity for odd `d`. The parity commutes with every diagonal observable
//! and flips the sign of each later mixer angle. Shifting `gamma'_t` by `pi/2`
//! inserts the global parity for every `d`. For the MaxCut objective `beta_t`
//! additionally has period `pi/2` (global `X` parity). Negating every angle
//! conjugates the state and leaves real diagonal expectations unchanged.

use std::f64::consts::{FRAC_PI_2, PI};

use super::Mode;
use crate::params::ParamSet;

/// Shift count `k` with `x - k * period` in `[-period/2, period/2)`.
fn wraps(x: f64, period: f64) -> i64 {
    (x / period + 0.5).floor() as i64
}

fn reduce_with_parity(angles: &mut [f64], beta: &mut [f64], parity: bool) {
    for t in 0..angles.len() {
        let k = wraps(angles[t], FRAC_PI_2);
        angles[t] -= k as f64 * FRAC_PI_2;
        if parity && k % 2 != 0 {
            beta[t..].iter_mut().for_each(|b| *b = -*b);
        }
    }
}

/// An equivalent parameter set with `gamma, gamma'` in `[-pi/4, pi/4)`,
/// `beta` in `[-pi/4, pi/4)` (MaxCut objectives) or `[-pi/2, pi/2)`, and
/// nonnegative `sum(gamma)`.
pub fn canonicalize(mode: Mode, params: &ParamSet) -> ParamSet {
    let mut out = params.clone();
    reduce_with_parity(&mut out.gamma, &mut out.beta, params.d % 2 == 1);
    if let Some(gp) = out.gamma_prime.as_mut() {
        reduce_with_parity(gp, &mut out.beta, true);
    }
    let beta_period = if mode.uses_gamma_prime() { PI } else { FRAC_PI_2 };
    for b in &mut out.beta {
        *b -= wraps(*b, beta_period) as f64 * beta_period;
    }
    if out.gamma.iter().sum::<f64>() < 0.0 {
        let negate = |v: &mut Vec<f64>| v.iter_mut().for_each(|x| *x = -*x);
        negate(&mut out.gamma);
        negate(&mut out.beta);
        if let Some(gp) = out.gamma_prime.as_mut() {
            negate(gp);
        }
    }
    out
}
