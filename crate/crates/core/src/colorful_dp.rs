//! Max-Weight Colorful Independent Set by dynamic programming over a tree
//! decomposition whose bags contain at most `alpha` pairwise nonadjacent
//! vertices.
//!
//! For a bag X, a color set C and an independent selection S ⊆ X with
//! |S| ≤ alpha, the table entry T[X, C, S] is the largest weight of an
//! independent set I of the subgraph induced by X and its descendant bags with
//! I ∩ X = S whose vertices carry pairwise distinct colors from C; infeasible
//! entries hold [`NEG_INF`]. Bags are combined by three rules:
//!
//! * leaf: T[X, C, S] = w(S);
//! * one child Y: maximize T[Y, C \ col(S \ S'), S'] + w(S \ S') over child
//!   selections S' agreeing with S on X ∩ Y. Child selections are grouped by
//!   S' ∩ X first, so each parent entry only looks up one group maximum;
//! * two children Y = Z = X: maximize T[Y, C_Y, S] + T[Z, C_Z, S] − w(S) over
//!   C_Y ∪ C_Z = C with C_Y ∩ C_Z = col(S).
//!
//! Colors are compacted to a bitmask internally; the uncolored variant runs
//! the same recurrences with the empty color set.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{find_independent_subset, Graph, Solution, Vertex, VertexSet, Weight, WeightedInstance};
use crate::tree_decomp::{normalize_binary, verify_tree_decomposition, TreeDecomposition};

/// Largest number of distinct colors the table layout supports.
pub const MAX_COLORS: usize = 30;

/// Table entry: `None` is the infeasible marker, distinct from weight zero.
pub type Score = Option<Weight>;

pub const NEG_INF: Score = None;

/// Counters from one DP run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DpStats {
    pub bags: usize,
    pub join_bags: usize,
    pub colors: usize,
    /// Most (C, C_Y) pairs evaluated for a single selection of one join bag.
    pub max_join_pairs_per_selection: u64,
}

struct Selection {
    verts: Vec<Vertex>,
    mask: u32,
    weight: Weight,
}

/// Independent subsets of `bag` with at most `alpha` vertices and pairwise
/// distinct color bits, in a fixed order starting with the empty set.
fn enumerate_selections(
    g: &Graph,
    bag: &[Vertex],
    alpha: usize,
    masks: &[u32],
    full: u32,
    weights: &[Weight],
) -> Vec<Selection> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        bag: &[Vertex],
        start: usize,
        alpha: usize,
        masks: &[u32],
        full: u32,
        weights: &[Weight],
        cur: &mut Vec<Vertex>,
        mask: u32,
        weight: Weight,
        out: &mut Vec<Selection>,
    ) {
        out.push(Selection {
            verts: cur.clone(),
            mask,
            weight,
        });
        if cur.len() == alpha {
            return;
        }
        for i in start..bag.len() {
            let v = bag[i];
            if masks[v] & mask != 0 || masks[v] & !full != 0 || cur.iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            cur.push(v);
            go(g, bag, i + 1, alpha, masks, full, weights, cur, mask | masks[v], weight + weights[v], out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(g, bag, 0, alpha, masks, full, weights, &mut Vec::new(), 0, 0, &mut out);
    out
}

fn intersect_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

/// Maximum-weight independent set with pairwise distinct colors. `alpha`
/// bounds the independence number of every bag; decompositions that are not
/// yet binary are normalized first.
pub fn max_weight_colorful_is(inst: &WeightedInstance, td: &TreeDecomposition, alpha: usize) -> Result<Solution> {
    max_weight_colorful_is_with_stats(inst, td, alpha).map(|(s, _)| s)
}

pub fn max_weight_colorful_is_with_stats(
    inst: &WeightedInstance,
    td: &TreeDecomposition,
    alpha: usize,
) -> Result<(Solution, DpStats)> {
    let colors = inst
        .colors()
        .ok_or_else(|| Error::invalid("colorful independent set needs vertex colors"))?;
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    if palette.len() > MAX_COLORS {
        return Err(Error::invalid(format!(
            "{} distinct colors exceed the supported {MAX_COLORS}",
            palette.len()
        )));
    }
    let masks: Vec<u32> = colors
        .iter()
        .map(|c| 1u32 << palette.binary_search(c).expect("color is in palette"))
        .collect();
    let (set, value, stats) = run(inst, td, alpha, &masks, palette.len())?;
    let sol = Solution::from_set(inst, set);
    if sol.weight != value {
        return Err(Error::Validation(format!(
            "reconstructed weight {} differs from table value {value}",
            sol.weight
        )));
    }
    sol.validate_colorful(inst)?;
    Ok((sol, stats))
}

/// Maximum-weight independent set of a chordal graph given a clique tree
/// (every bag a clique). Same recurrences with colors dropped.
pub fn max_weight_is_chordal(inst: &WeightedInstance, td: &TreeDecomposition) -> Result<Solution> {
    let masks = vec![0u32; inst.n()];
    let (set, value, _) = run(inst, td, 1, &masks, 0)?;
    let sol = Solution::from_set(inst, set);
    if sol.weight != value {
        return Err(Error::Validation(format!(
            "reconstructed weight {} differs from table value {value}",
            sol.weight
        )));
    }
    sol.validate_independent(inst)?;
    Ok(sol)
}

enum Back {
    Leaf,
    /// Child bag, and per entry the chosen child selection.
    Single { child: usize, pick: Vec<u32> },
    /// Both children, and per entry the chosen C_Y.
    Join { left: usize, right: usize, pick: Vec<u32> },
}

/// A verified, binary-normalized decomposition ready for repeated DP runs
/// with different colorings or weights.
pub struct PreparedDecomposition {
    td: TreeDecomposition,
    alpha: usize,
}

impl PreparedDecomposition {
    /// Checks the decomposition and the bag bound, then normalizes.
    pub fn new(g: &Graph, td: &TreeDecomposition, alpha: usize) -> Result<Self> {
        if !verify_tree_decomposition(g, td) {
            return Err(Error::invalid("not a valid tree decomposition of the graph"));
        }
        for (b, bag) in td.bags().iter().enumerate() {
            if let Some(found) = find_independent_subset(g, bag, alpha + 1) {
                return Err(Error::AlphaViolation {
                    bag: b,
                    alpha,
                    found: found.len(),
                });
            }
        }
        let td = if td.is_binary_normal() {
            td.clone()
        } else {
            normalize_binary(g, td)?.into_inner()
        };
        Ok(PreparedDecomposition { td, alpha })
    }

    pub fn decomposition(&self) -> &TreeDecomposition {
        &self.td
    }

    /// Runs the DP with color bitmasks over `c` colors. Vertices whose mask has
    /// a bit at position `c` or above are never selected. Returns the optimal
    /// set and its weight.
    pub fn solve(&self, g: &Graph, weights: &[Weight], masks: &[u32], c: usize) -> (VertexSet, Weight, DpStats) {
        dp(g, &self.td, self.alpha, weights, masks, c)
    }
}

fn run(
    inst: &WeightedInstance,
    td: &TreeDecomposition,
    alpha: usize,
    masks: &[u32],
    c: usize,
) -> Result<(VertexSet, Weight, DpStats)> {
    let prepared = PreparedDecomposition::new(inst.graph(), td, alpha)?;
    Ok(prepared.solve(inst.graph(), inst.weights(), masks, c))
}

fn dp(
    g: &Graph,
    td: &TreeDecomposition,
    alpha: usize,
    weights: &[Weight],
    masks: &[u32],
    c: usize,
) -> (VertexSet, Weight, DpStats) {
    assert!(c <= MAX_COLORS, "at most {MAX_COLORS} colors");
    let nc = 1usize << c;
    let full = (nc - 1) as u32;
    let k = td.len();
    let mut sels: Vec<Vec<Selection>> = Vec::with_capacity(k);
    for bag in td.bags() {
        sels.push(enumerate_selections(g, bag, alpha, masks, full, weights));
    }
    let mut tables: Vec<Option<Vec<Score>>> = (0..k).map(|_| None).collect();
    let mut backs: Vec<Back> = (0..k).map(|_| Back::Leaf).collect();
    let mut stats = DpStats {
        bags: k,
        colors: c,
        ..DpStats::default()
    };

    for x in td.post_order() {
        let xs = &sels[x];
        let mut table: Vec<Score> = vec![NEG_INF; xs.len() * nc];
        match *td.children(x) {
            [] => {
                for (i, s) in xs.iter().enumerate() {
                    for cs in 0..nc {
                        if s.mask & !(cs as u32) == 0 {
                            table[i * nc + cs] = Some(s.weight);
                        }
                    }
                }
            }
            [y] => {
                let ty = tables[y].take().expect("child processed first");
                let ys = &sels[y];
                let xbag = td.bag(x);
                let ybag = td.bag(y);
                // Group child selections by S' ∩ X.
                let mut group_of: HashMap<Vec<Vertex>, usize> = HashMap::new();
                let mut best: Vec<(Score, u32)> = Vec::new();
                for (j, s) in ys.iter().enumerate() {
                    let key = intersect_sorted(&s.verts, xbag);
                    let next = group_of.len();
                    let gidx = *group_of.entry(key).or_insert(next);
                    if gidx == best.len() / nc {
                        best.extend(std::iter::repeat_n((NEG_INF, 0), nc));
                    }
                    for cs in 0..nc {
                        let v = ty[j * nc + cs];
                        let slot = &mut best[gidx * nc + cs];
                        if v > slot.0 {
                            *slot = (v, j as u32);
                        }
                    }
                }
                let mut pick = vec![u32::MAX; xs.len() * nc];
                for (i, s) in xs.iter().enumerate() {
                    let shared = intersect_sorted(&s.verts, ybag);
                    let Some(&gidx) = group_of.get(&shared) else {
                        continue;
                    };
                    let shared_mask = shared.iter().fold(0u32, |m, &v| m | masks[v]);
                    let shared_weight: Weight = shared.iter().map(|&v| weights[v]).sum();
                    let diff_mask = s.mask & !shared_mask;
                    let diff_weight = s.weight - shared_weight;
                    for cs in 0..nc {
                        let cset = cs as u32;
                        if s.mask & !cset != 0 {
                            continue;
                        }
                        let (v, j) = best[gidx * nc + (cset & !diff_mask) as usize];
                        if let Some(v) = v {
                            table[i * nc + cs] = Some(v + diff_weight);
                            pick[i * nc + cs] = j;
                        }
                    }
                }
                backs[x] = Back::Single { child: y, pick };
            }
            [y, z] => {
                stats.join_bags += 1;
                let ty = tables[y].take().expect("child processed first");
                let tz = tables[z].take().expect("child processed first");
                let mut pick = vec![u32::MAX; xs.len() * nc];
                for (i, s) in xs.iter().enumerate() {
                    let m = s.mask;
                    let mut pairs = 0u64;
                    for cs in 0..nc {
                        let cset = cs as u32;
                        if m & !cset != 0 {
                            continue;
                        }
                        let free = cset & !m;
                        let mut best: Score = NEG_INF;
                        let mut arg = u32::MAX;
                        // All r ⊆ free, C_Y = r ∪ m, C_Z = (C \ C_Y) ∪ m.
                        let mut r = free;
                        loop {
                            pairs += 1;
                            let cy = r | m;
                            let cz = (cset & !cy) | m;
                            debug_assert_eq!(cy & cz, m);
                            debug_assert_eq!(cy | cz, cset);
                            if let (Some(a), Some(b)) = (ty[i * nc + cy as usize], tz[i * nc + cz as usize]) {
                                // Both include w(S) once.
                                let v = a + (b - s.weight);
                                if Some(v) > best {
                                    best = Some(v);
                                    arg = cy;
                                }
                            }
                            if r == 0 {
                                break;
                            }
                            r = (r - 1) & free;
                        }
                        table[i * nc + cs] = best;
                        pick[i * nc + cs] = arg;
                    }
                    stats.max_join_pairs_per_selection = stats.max_join_pairs_per_selection.max(pairs);
                }
                backs[x] = Back::Join { left: y, right: z, pick };
            }
            _ => unreachable!("decomposition is binary"),
        }
        tables[x] = Some(table);
    }

    let root = td.root();
    let rt = tables[root].take().expect("root processed");
    let (best_i, value) = (0..sels[root].len())
        .filter_map(|i| rt[i * nc + full as usize].map(|v| (i, v)))
        .fold(None, |acc: Option<(usize, Weight)>, (i, v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((i, v)),
        })
        .expect("the empty selection is always feasible");

    let mut set = VertexSet::new(g.n());
    let mut stack = vec![(root, best_i, full)];
    while let Some((x, i, cset)) = stack.pop() {
        let s = &sels[x][i];
        for &v in &s.verts {
            set.insert(v);
        }
        let entry = i * nc + cset as usize;
        match &backs[x] {
            Back::Leaf => {}
            Back::Single { child, pick } => {
                let j = pick[entry] as usize;
                let shared = intersect_sorted(&s.verts, td.bag(*child));
                let shared_mask = shared.iter().fold(0u32, |m, &v| m | masks[v]);
                let diff_mask = s.mask & !shared_mask;
                stack.push((*child, j, cset & !diff_mask));
            }
            Back::Join { left, right, pick } => {
                let cy = pick[entry];
                let cz = (cset & !cy) | s.mask;
                stack.push((*left, i, cy));
                stack.push((*right, i, cz));
            }
        }
    }
    (set, value, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::is_chordal;
    use crate::tree_decomp::clique_tree_from_peo;

    fn clique_tree(g: &Graph) -> TreeDecomposition {
        clique_tree_from_peo(g, &is_chordal(g).unwrap()).unwrap()
    }

    #[test]
    fn single_vertex() {
        let inst = WeightedInstance::new(Graph::empty(1), vec![5]).unwrap().with_colors(vec![1]).unwrap();
        let sol = max_weight_colorful_is(&inst, &clique_tree(inst.graph()), 1).unwrap();
        assert_eq!(sol.weight, 5);
        assert_eq!(sol.vertices.to_vec(), vec![0]);
    }

    #[test]
    fn edge_keeps_heavier_endpoint() {
        let inst = WeightedInstance::new(Graph::path(2), vec![4, 7]).unwrap().with_colors(vec![1, 2]).unwrap();
        let sol = max_weight_colorful_is(&inst, &clique_tree(inst.graph()), 1).unwrap();
        assert_eq!(sol.weight, 7);
    }

    #[test]
    fn path_with_two_colors() {
        // Brute force over all 16 subsets: {0,3} (colors 1,2) weighs 6; {0,2}
        // repeats color 1 and {1,3} repeats color 2.
        let inst = WeightedInstance::new(Graph::path(4), vec![3, 4, 5, 3])
            .unwrap()
            .with_colors(vec![1, 2, 1, 2])
            .unwrap();
        let sol = max_weight_colorful_is(&inst, &clique_tree(inst.graph()), 1).unwrap();
        assert_eq!(sol.weight, 6);
        assert_eq!(sol.vertices.to_vec(), vec![0, 3]);
    }

    #[test]
    fn uncolored_chordal() {
        let inst = WeightedInstance::new(Graph::complete(3), vec![2, 9, 4]).unwrap();
        assert_eq!(max_weight_is_chordal(&inst, &clique_tree(inst.graph())).unwrap().weight, 9);
        let inst = WeightedInstance::new(Graph::path(3), vec![3, 4, 3]).unwrap();
        assert_eq!(max_weight_is_chordal(&inst, &clique_tree(inst.graph())).unwrap().weight, 6);
    }

    #[test]
    fn zero_weights_are_feasible() {
        let inst = WeightedInstance::new(Graph::path(3), vec![0, 0, 0]).unwrap();
        let sol = max_weight_is_chordal(&inst, &clique_tree(inst.graph())).unwrap();
        assert_eq!(sol.weight, 0);
    }

    #[test]
    fn alpha_violation_and_bad_input() {
        let c4 = Graph::cycle(4);
        let td = TreeDecomposition::new(vec![vec![0, 1, 3], vec![1, 2, 3]], vec![None, Some(0)]).unwrap();
        let inst = WeightedInstance::unit(c4.clone()).with_colors(vec![1, 2, 3, 4]).unwrap();
        assert!(matches!(
            max_weight_colorful_is(&inst, &td, 1),
            Err(Error::AlphaViolation { alpha: 1, found: 2, .. })
        ));
        let sol = max_weight_colorful_is(&inst, &td, 2).unwrap();
        assert_eq!(sol.weight, 2);

        let bad = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![None]).unwrap();
        assert!(matches!(max_weight_colorful_is(&inst, &bad, 2), Err(Error::InvalidArgument(_))));
        let plain = WeightedInstance::unit(c4);
        assert!(max_weight_colorful_is(&plain, &td, 2).is_err());
    }

    #[test]
    fn join_enumeration_is_bounded_by_three_to_the_c() {
        let g = Graph::star(5);
        let inst = WeightedInstance::unit(g).with_colors(vec![1, 2, 3, 4, 5, 1]).unwrap();
        let (sol, stats) = max_weight_colorful_is_with_stats(&inst, &clique_tree(inst.graph()), 1).unwrap();
        assert_eq!(sol.weight, 5);
        assert!(stats.join_bags > 0);
        assert!(stats.max_join_pairs_per_selection <= 3u64.pow(stats.colors as u32));
    }
}
