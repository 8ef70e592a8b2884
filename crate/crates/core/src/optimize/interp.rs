use crate::error::{Error, Result};
use crate::params::ParamSet;

/// Piecewise-linear resampling of `values` (taken at abscissae `j/(len-1)`)
/// onto `target` evenly spaced points on `[0, 1]`. Endpoints are preserved.
pub fn resample(values: &[f64], target: usize) -> Vec<f64> {
    match (values.len(), target) {
        (_, 0) => Vec::new(),
        (0, _) => vec![0.0; target],
        (1, _) => vec![values[0]; target],
        (len, 1) => vec![values[0] * 0.5 + values[len - 1] * 0.5],
        (len, _) => (0..target)
            .map(|k| {
                let pos = k as f64 * (len - 1) as f64 / (target - 1) as f64;
                let left = (pos.floor() as usize).min(len - 2);
                let frac = pos - left as f64;
                values[left] * (1.0 - frac) + values[left + 1] * frac
            })
            .collect(),
    }
}

/// Warm start at depth `p` from optimized angles at a shallower depth: each
/// angle sequence is treated as a curve over `(j-1)/(p_prev-1)` and resampled
/// at `(j-1)/(p-1)`.
pub fn interpolate_init(prev: &ParamSet, p: usize) -> Result<ParamSet> {
    if p < 2 {
        return Err(Error::InvalidParameter(
            "depth 1 has no predecessor to interpolate from".into(),
        ));
    }
    prev.validate()?;
    let ps = ParamSet {
        p,
        d: prev.d,
        gamma: resample(&prev.gamma, p),
        beta: resample(&prev.beta, p),
        gamma_prime: prev.gamma_prime.as_ref().map(|g| resample(g, p)),
    };
    ps.validate()?;
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_stay_constant() {
        let prev = ParamSet::new(3, vec![0.4; 3], vec![-0.2; 3]).unwrap();
        let next = interpolate_init(&prev, 4).unwrap();
        assert!(next.gamma.iter().all(|g| (g - 0.4).abs() < 1e-15));
        assert!(next.beta.iter().all(|b| (b + 0.2).abs() < 1e-15));
    }

    #[test]
    fn endpoints_preserved() {
        let prev = ParamSet::with_gamma_prime(3, vec![0.1, 0.5, 0.2], vec![1.0, 2.0, 3.0], vec![0.7, 0.3, -0.1])
            .unwrap();
        let next = interpolate_init(&prev, 4).unwrap();
        assert_eq!(next.gamma[0], 0.1);
        assert_eq!(next.gamma[3], 0.2);
        assert_eq!(next.beta[0], 0.7);
        assert_eq!(next.beta[3], -0.1);
        let gp = next.gamma_prime.unwrap();
        assert_eq!((gp[0], gp[3]), (1.0, 3.0));
        // interior of a linear ramp stays on the ramp
        assert!((gp[1] - 5.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn from_depth_one_duplicates() {
        let prev = ParamSet::new(3, vec![0.3], vec![0.2]).unwrap();
        let next = interpolate_init(&prev, 2).unwrap();
        assert_eq!(next.gamma, vec![0.3, 0.3]);
        assert_eq!(next.p, 2);
    }

    #[test]
    fn depth_one_target_is_rejected() {
        let prev = ParamSet::new(3, vec![0.3], vec![0.2]).unwrap();
        assert!(matches!(interpolate_init(&prev, 1), Err(Error::InvalidParameter(_))));
    }
}
