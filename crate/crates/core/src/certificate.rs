//! Certified lower bounds with four-decimal truncation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::{mis_from_c_edge, Mode, OptimizationResult, ENGINE_VERSION};
use crate::params::ParamSet;

/// Floors `x` at the fourth decimal. A tiny relative slack absorbs binary
/// representation error so that `0.6924` itself is not floored to `0.6923`.
pub fn truncate4(x: f64) -> f64 {
    let scaled = x * 1e4;
    let floored = (scaled + scaled.abs() * 1e-12).floor();
    floored / 1e4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub engine_version: String,
    pub seed: u64,
}

/// Lower bounds that hold for every `d`-regular graph with girth at least
/// `girth_requirement`, certified by the stored angles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub p: usize,
    pub d: usize,
    pub girth_requirement: usize,
    pub c_edge_bound: f64,
    /// Cut fraction bound; equal to `c_edge_bound`.
    pub m_g_bound: f64,
    pub ir_two_param_bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ir_three_param_bound: Option<f64>,
    pub params: ParamSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ir_three_param_params: Option<ParamSet>,
    pub provenance: Provenance,
}

impl BoundCertificate {
    /// Builds a certificate from a MaxCut optimum and, optionally, a
    /// three-parameter independent-set optimum at the same depth.
    pub fn from_results(maxcut: &OptimizationResult, mis3: Option<&OptimizationResult>) -> Result<Self> {
        if maxcut.mode != Mode::Maxcut {
            return Err(Error::InvalidParameter(format!(
                "certificate needs a maxcut result, got {}",
                maxcut.mode
            )));
        }
        let (p, d) = (maxcut.params.p, maxcut.params.d);
        if let Some(m) = mis3 {
            if m.mode != Mode::MisThreeParam || m.params.p != p || m.params.d != d {
                return Err(Error::InvalidParameter(
                    "independent-set result does not match the maxcut depth and degree".into(),
                ));
            }
        }
        let c = truncate4(maxcut.value);
        let mut params = maxcut.params.clone();
        params.gamma_prime = None;
        Ok(BoundCertificate {
            p,
            d,
            girth_requirement: 2 * p + 2,
            c_edge_bound: c,
            m_g_bound: c,
            ir_two_param_bound: truncate4(mis_from_c_edge(d, maxcut.value)),
            ir_three_param_bound: mis3.map(|m| truncate4(m.value)),
            params,
            ir_three_param_params: mis3.map(|m| m.params.clone()),
            provenance: Provenance {
                engine_version: ENGINE_VERSION.to_string(),
                seed: maxcut.seed,
            },
        })
    }

    /// Statement of the cut bound in words.
    pub fn statement(&self) -> String {
        format!(
            "every {}-regular graph of girth >= {} has cut fraction >= {:.4}",
            self.d, self.girth_requirement, self.c_edge_bound
        )
    }

    /// Best certified independence ratio: the larger of the two- and
    /// three-parameter bounds.
    pub fn independence_bound(&self) -> f64 {
        self.ir_three_param_bound
            .map_or(self.ir_two_param_bound, |b| b.max(self.ir_two_param_bound))
    }

    pub fn independence_statement(&self) -> String {
        format!(
            "every {}-regular graph of girth >= {} has independence ratio >= {:.4}",
            self.d,
            self.girth_requirement,
            self.independence_bound()
        )
    }

    /// Checks the structural invariants of a (possibly deserialized) certificate.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let bad = |m: &str| Err(Error::InvalidInput(format!("certificate invariant violated: {m}")));
        if self.params.p != self.p || self.params.d != self.d {
            return bad("params shape differs from (p, d)");
        }
        if self.girth_requirement != 2 * self.p + 2 {
            return bad("girth_requirement != 2p + 2");
        }
        if self.m_g_bound != self.c_edge_bound {
            return bad("m_g_bound != c_edge_bound");
        }
        for v in [Some(self.c_edge_bound), Some(self.ir_two_param_bound), self.ir_three_param_bound]
            .into_iter()
            .flatten()
        {
            if truncate4(v) != v {
                return bad("bound is not truncated to four decimals");
            }
        }
        Ok(())
    }
}
