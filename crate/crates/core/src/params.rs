//! QAOA angle sets.
//!
//! Phase convention: one cost layer with angle `gamma` applies the gate
//! `exp(i * gamma * Z_a Z_b)` on every edge, and `exp(i * gamma_prime * Z_v)` on
//! every vertex when the two-angle driver is in use. The mixer is
//! `exp(-i * beta * X)` on every qubit. Relative to `exp(-i * g * C)` with the
//! cut-counting cost `C = sum (1 - Z_a Z_b) / 2`, this is `gamma = -g / 2` up to
//! a global phase, so objective values agree while raw angles differ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Angles and shape of a depth-`p` QAOA circuit on a `d`-regular graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub p: usize,
    pub d: usize,
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_prime: Option<Vec<f64>>,
}

impl ParamSet {
    /// Builds a MaxCut-driver parameter set (no single-qubit phases).
    pub fn new(d: usize, gamma: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        let ps = ParamSet {
            p: gamma.len(),
            d,
            gamma,
            beta,
            gamma_prime: None,
        };
        ps.validate()?;
        Ok(ps)
    }

    /// Builds a two-angle-driver parameter set.
    pub fn with_gamma_prime(
        d: usize,
        gamma: Vec<f64>,
        gamma_prime: Vec<f64>,
        beta: Vec<f64>,
    ) -> Result<Self> {
        let ps = ParamSet {
            p: gamma.len(),
            d,
            gamma,
            beta,
            gamma_prime: Some(gamma_prime),
        };
        ps.validate()?;
        Ok(ps)
    }

    /// All angles zero.
    pub fn zeros(p: usize, d: usize, with_gamma_prime: bool) -> Result<Self> {
        let ps = ParamSet {
            p,
            d,
            gamma: vec![0.0; p],
            beta: vec![0.0; p],
            gamma_prime: with_gamma_prime.then(|| vec![0.0; p]),
        };
        ps.validate()?;
        Ok(ps)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidParameter("depth p must be at least 1".into()));
        }
        if self.d < 2 {
            return Err(Error::InvalidParameter(format!(
                "degree d must be at least 2, got {}",
                self.d
            )));
        }
        let check = |name: &str, v: &[f64]| -> Result<()> {
            if v.len() != self.p {
                return Err(Error::InvalidParameter(format!(
                    "{name} has {} angles, expected p = {}",
                    v.len(),
                    self.p
                )));
            }
            if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name}[{i}] is not finite"
                )));
            }
            Ok(())
        };
        check("gamma", &self.gamma)?;
        check("beta", &self.beta)?;
        if let Some(gp) = &self.gamma_prime {
            check("gamma_prime", gp)?;
        }
        Ok(())
    }

    /// Single-qubit phase angle for layer `t` (zero without the two-angle driver).
    pub fn gamma_prime_at(&self, t: usize) -> f64 {
        self.gamma_prime.as_ref().map_or(0.0, |g| g[t])
    }

    /// Flattens to the optimizer layout: `gamma`, then `gamma_prime` if present, then `beta`.
    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = self.gamma.clone();
        if let Some(gp) = &self.gamma_prime {
            v.extend_from_slice(gp);
        }
        v.extend_from_slice(&self.beta);
        v
    }

    /// Inverse of [`ParamSet::to_vector`].
    pub fn from_vector(d: usize, x: &[f64], with_gamma_prime: bool) -> Result<Self> {
        let blocks = if with_gamma_prime { 3 } else { 2 };
        if x.is_empty() || x.len() % blocks != 0 {
            return Err(Error::InvalidParameter(format!(
                "angle vector of length {} cannot be split into {blocks} blocks",
                x.len()
            )));
        }
        let p = x.len() / blocks;
        let gamma = x[..p].to_vec();
        if with_gamma_prime {
            ParamSet::with_gamma_prime(d, gamma, x[p..2 * p].to_vec(), x[2 * p..].to_vec())
        } else {
            ParamSet::new(d, gamma, x[p..].to_vec())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(ParamSet::new(3, vec![], vec![]).is_err());
        assert!(ParamSet::new(1, vec![0.1], vec![0.1]).is_err());
        assert!(ParamSet::new(3, vec![0.1, 0.2], vec![0.1]).is_err());
        assert!(ParamSet::new(3, vec![f64::NAN], vec![0.1]).is_err());
        assert!(
            ParamSet::with_gamma_prime(3, vec![0.1], vec![0.1, 0.2], vec![0.3]).is_err()
        );
    }

    #[test]
    fn vector_layout() {
        let ps =
            ParamSet::with_gamma_prime(3, vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0])
                .unwrap();
        let v = ps.to_vector();
        assert_eq!(v, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(ParamSet::from_vector(3, &v, true).unwrap(), ps);
        let plain = ParamSet::from_vector(3, &[1.0, 2.0], false).unwrap();
        assert_eq!(plain.gamma, vec![1.0]);
        assert_eq!(plain.beta, vec![2.0]);
        assert!(ParamSet::from_vector(3, &[1.0, 2.0], true).is_err());
    }
}
