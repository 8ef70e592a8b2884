use super::Graph;
use crate::error::{Error, Result};

/// Default vertex cap for exhaustive MaxCut.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 28;

/// Exact maximum cut by Gray-code enumeration of the `2^(n-1)` assignments
/// with the last vertex pinned to 0.
pub fn brute_force_maxcut(g: &Graph, cap: usize) -> Result<usize> {
    brute_force_maxcut_assignment(g, cap).map(|(v, _)| v)
}

/// Like [`brute_force_maxcut`], also returning a maximizing assignment.
pub fn brute_force_maxcut_assignment(g: &Graph, cap: usize) -> Result<(usize, Vec<bool>)> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::TooLarge {
            what: "exhaustive MaxCut vertex count".into(),
            size: n,
            cap,
        });
    }
    let mut bits = vec![false; n];
    if n <= 1 {
        return Ok((0, bits));
    }
    let mut best_bits = bits.clone();
    let (mut cut, mut best) = (0i64, 0i64);
    for i in 1u64..(1u64 << (n - 1)) {
        let v = i.trailing_zeros() as usize;
        for &w in g.neighbors(v) {
            cut += if bits[w] == bits[v] { 1 } else { -1 };
        }
        bits[v] = !bits[v];
        if cut > best {
            best = cut;
            best_bits.copy_from_slice(&bits);
        }
    }
    Ok((best as usize, best_bits))
}
