//! Brute-force reference solvers. Each one is exponential, refuses inputs
//! beyond a fixed size, and relies only on the graph primitives.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, is_c_colorable, Graph, Solution, Vertex, VertexSet, Weight, WeightedInstance};
use crate::hardness::MulticoloredCliqueInstance;

pub const MWIS_MAX_N: usize = 32;
pub const MWCCS_MAX_N: usize = 18;
pub const COLORFUL_MAX_N: usize = 20;
pub const MCC_MAX_TRANSVERSALS: u64 = 1_000_000;
pub const HAMILTONIAN_MAX_N: usize = 14;
pub const CHORDLESS_CYCLE_MAX_N: usize = 16;

fn guard(what: &str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::cap(what, limit as u64, n as u64));
    }
    Ok(())
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

/// Walks every independent set (vertices decided in increasing order) that
/// respects `allowed` and the size cap, and keeps the best by weight, then
/// lexicographically smallest vertex list.
struct IsSearch<'a> {
    nbr: Vec<u64>,
    weights: &'a [Weight],
    cap: usize,
    /// Per vertex, a compact color index, or `None` for no color constraint.
    color: Option<Vec<usize>>,
    best: Option<(Weight, Vec<Vertex>)>,
}

impl IsSearch<'_> {
    fn go(&mut self, v: usize, blocked: u64, used_colors: u64, cur: &mut Vec<Vertex>, w: Weight) {
        if v == self.nbr.len() {
            let better = match &self.best {
                None => true,
                Some((bw, bs)) => w > *bw || (w == *bw && cur.as_slice() < bs.as_slice()),
            };
            if better {
                self.best = Some((w, cur.clone()));
            }
            return;
        }
        // Take v first so ties favor the lexicographically smaller list.
        let color_bit = self.color.as_ref().map_or(0, |c| 1u64 << c[v]);
        if blocked & (1 << v) == 0 && cur.len() < self.cap && used_colors & color_bit == 0 {
            cur.push(v);
            self.go(v + 1, blocked | self.nbr[v], used_colors | color_bit, cur, w + self.weights[v]);
            cur.pop();
        }
        self.go(v + 1, blocked, used_colors, cur, w);
    }
}

fn search_is(inst: &WeightedInstance, cap: usize, color: Option<Vec<usize>>) -> Solution {
    let mut s = IsSearch {
        nbr: neighbor_masks(inst.graph()),
        weights: inst.weights(),
        cap,
        color,
        best: None,
    };
    s.go(0, 0, 0, &mut Vec::new(), 0);
    let (_, verts) = s.best.expect("the empty set is independent");
    Solution::from_set(inst, VertexSet::from_vertices(inst.n(), verts))
}

/// Maximum-weight independent set, optionally with at most `ell_cap`
/// vertices.
pub fn brute_mwis(inst: &WeightedInstance, ell_cap: Option<usize>) -> Result<Solution> {
    guard("brute-force MWIS", inst.n(), MWIS_MAX_N)?;
    Ok(search_is(inst, ell_cap.unwrap_or(usize::MAX), None))
}

/// Maximum-weight independent set with pairwise distinct colors.
pub fn brute_colorful_is(inst: &WeightedInstance) -> Result<Solution> {
    guard("brute-force colorful IS", inst.n(), COLORFUL_MAX_N)?;
    let colors = inst
        .colors()
        .ok_or_else(|| Error::invalid("colorful independent set needs vertex colors"))?;
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let compact = colors.iter().map(|c| palette.binary_search(c).unwrap()).collect();
    Ok(search_is(inst, usize::MAX, Some(compact)))
}

/// Maximum-weight vertex set inducing a c-colorable subgraph, optionally
/// with at most `ell_cap` vertices. Carries a proper coloring.
pub fn brute_mwccs(inst: &WeightedInstance, c: usize, ell_cap: Option<usize>) -> Result<Solution> {
    guard("brute-force MWcCS", inst.n(), MWCCS_MAX_N)?;
    let n = inst.n();
    let cap = ell_cap.unwrap_or(n);
    let mut best: Option<(Weight, Vec<Vertex>, Vec<u32>)> = None;
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize > cap {
            continue;
        }
        let verts: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let w: Weight = verts.iter().map(|&v| inst.weight(v)).sum();
        let improves = match &best {
            None => true,
            Some((bw, bs, _)) => w > *bw || (w == *bw && verts < *bs),
        };
        if !improves {
            continue;
        }
        let set = VertexSet::from_vertices(n, verts.iter().copied());
        let (sub, _) = induced_subgraph(inst.graph(), &set)?;
        if let Some(coloring) = is_c_colorable(&sub, c as u32) {
            best = Some((w, verts, coloring));
        }
    }
    let (_, verts, coloring) = best.expect("the empty set is colorable");
    let assignment: BTreeMap<Vertex, u32> = verts.iter().copied().zip(coloring).collect();
    let mut sol = Solution::from_set(inst, VertexSet::from_vertices(n, verts));
    sol.color_assignment = Some(assignment);
    Ok(sol)
}

/// Whether some choice of one vertex per class is a clique.
pub fn brute_multicolored_clique(mcc: &MulticoloredCliqueInstance) -> Result<bool> {
    let transversals = mcc
        .classes()
        .iter()
        .fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64));
    if transversals > MCC_MAX_TRANSVERSALS {
        return Err(Error::cap("brute-force multicolored clique", MCC_MAX_TRANSVERSALS, transversals));
    }
    fn go(g: &Graph, classes: &[Vec<Vertex>], picked: &mut Vec<Vertex>) -> bool {
        let Some(class) = classes.get(picked.len()) else {
            return true;
        };
        for &v in class {
            if picked.iter().all(|&u| g.has_edge(u, v)) {
                picked.push(v);
                if go(g, classes, picked) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }
    Ok(go(mcc.graph(), mcc.classes(), &mut Vec::new()))
}

/// Hamiltonian cycle test by dynamic programming over (visited set, end
/// vertex) paths from vertex 0. Graphs with fewer than three vertices have
/// no cycle.
pub fn brute_hamiltonian_cycle(g: &Graph) -> Result<bool> {
    let n = g.n();
    guard("brute-force Hamiltonian cycle", n, HAMILTONIAN_MAX_N)?;
    if n < 3 {
        return Ok(false);
    }
    let full = (1usize << n) - 1;
    // reach[mask] has bit v set when a path from 0 through exactly `mask`
    // ends at v.
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask] == 0 {
            continue;
        }
        for v in 0..n {
            if reach[mask] >> v & 1 == 0 {
                continue;
            }
            for &u in g.neighbors(v) {
                if mask >> u & 1 == 0 {
                    reach[mask | 1 << u] |= 1 << u;
                }
            }
        }
    }
    Ok(g.neighbors(0).iter().any(|&v| reach[full] >> v & 1 == 1))
}

/// Whether some vertex subset of size at least four induces a cycle.
pub fn brute_has_chordless_cycle(g: &Graph) -> Result<bool> {
    let n = g.n();
    guard("brute-force induced cycle search", n, CHORDLESS_CYCLE_MAX_N)?;
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() < 4 {
            continue;
        }
        let set = VertexSet::from_vertices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        let (sub, _) = induced_subgraph(g, &set)?;
        if (0..sub.n()).all(|v| sub.degree(v) == 2) && sub.components().len() == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}
