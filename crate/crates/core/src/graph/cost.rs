//! Cut and independent-set cost functions on bitstrings, and the repair
//! procedure turning a bitstring into an independent set.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

fn check_len(g: &Graph, bits: &[bool]) -> Result<()> {
    if bits.len() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "bitstring has length {} but the graph has {} vertices",
            bits.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

pub fn complement(bits: &[bool]) -> Vec<bool> {
    bits.iter().map(|b| !b).collect()
}

/// Number of edges whose endpoints carry different bits.
pub fn cut_value(g: &Graph, bits: &[bool]) -> Result<usize> {
    check_len(g, bits)?;
    Ok(g.edges().iter().filter(|&&(u, v)| bits[u] != bits[v]).count())
}

/// Hamming weight minus the number of edges with both endpoints set.
pub fn i1_value(g: &Graph, bits: &[bool]) -> Result<i64> {
    check_len(g, bits)?;
    let weight = bits.iter().filter(|b| **b).count() as i64;
    let violated = g.edges().iter().filter(|&&(u, v)| bits[u] && bits[v]).count() as i64;
    Ok(weight - violated)
}

/// `I_1(bits) + I_1(complement(bits))`.
pub fn i2_value(g: &Graph, bits: &[bool]) -> Result<i64> {
    Ok(i1_value(g, bits)? + i1_value(g, &complement(bits))?)
}

/// `|V| - |E| + cut(bits)`, which equals [`i2_value`].
pub fn i2_via_cut(g: &Graph, bits: &[bool]) -> Result<i64> {
    Ok(g.vertex_count() as i64 - g.edge_count() as i64 + cut_value(g, bits)? as i64)
}

pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    let mut member = vec![false; g.vertex_count()];
    for &v in set {
        if v >= member.len() {
            return false;
        }
        member[v] = true;
    }
    !g.edges().iter().any(|&(u, v)| member[u] && member[v])
}

/// Which endpoint of a violated edge leaves the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairRule {
    /// Lowest-index violated edge; drop the endpoint with more neighbours in
    /// the current set, ties going to the higher vertex id.
    Deterministic,
    /// Lowest-index violated edge; drop a uniformly random endpoint.
    Random { seed: u64 },
}

/// Repairs with [`RepairRule::Deterministic`].
pub fn repair_independent(g: &Graph, bits: &[bool]) -> Result<Vec<usize>> {
    repair_independent_with(g, bits, RepairRule::Deterministic)
}

/// Removes one endpoint of a violated edge until the set of ones is
/// independent. Each removal lowers the weight by one and the violation count
/// by at least one, so the result has size at least `I_1(bits)`.
/// Returns the surviving vertices in increasing order.
pub fn repair_independent_with(g: &Graph, bits: &[bool], rule: RepairRule) -> Result<Vec<usize>> {
    check_len(g, bits)?;
    let mut member = bits.to_vec();
    let mut in_set_degree: Vec<usize> = (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().filter(|&&w| member[w]).count())
        .collect();
    let mut rng = match rule {
        RepairRule::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        RepairRule::Deterministic => None,
    };
    // Edges earlier than `cursor` stay non-violated: removals never create violations.
    let mut cursor = 0;
    while let Some(offset) = g.edges()[cursor..]
        .iter()
        .position(|&(u, v)| member[u] && member[v])
    {
        cursor += offset;
        let (u, v) = g.edges()[cursor];
        let drop = match rng.as_mut() {
            Some(r) => {
                if r.gen_bool(0.5) {
                    u
                } else {
                    v
                }
            }
            None => match in_set_degree[u].cmp(&in_set_degree[v]) {
                std::cmp::Ordering::Greater => u,
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => u.max(v),
            },
        };
        member[drop] = false;
        for &w in g.neighbors(drop) {
            in_set_degree[w] -= 1;
        }
    }
    Ok((0..g.vertex_count()).filter(|&v| member[v]).collect())
}

/// Repairs the ones and the zeros separately: two disjoint independent sets
/// whose sizes sum to at least `I_2(bits)`.
pub fn two_independent_sets(g: &Graph, bits: &[bool]) -> Result<(Vec<usize>, Vec<usize>)> {
    let ones = repair_independent(g, bits)?;
    let zeros = repair_independent(g, &complement(bits))?;
    Ok((ones, zeros))
}
