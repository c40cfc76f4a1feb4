//! Seeded random instance factories. Every generator uses ChaCha8 seeded
//! from a 64-bit seed, so outputs are identical across platforms.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeTag, Graph, Vertex, WeightedInstance};
use crate::hardness::MulticoloredCliqueInstance;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn relabel(edges: Vec<(Vertex, Vertex)>, perm: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    edges.into_iter().map(move |(u, v)| (perm[u], perm[v]))
}

/// Random chordal graph with clique number at most `max_clique`. Vertices
/// are added one by one; each new vertex becomes adjacent to a random subset
/// of a random earlier clique (a partial k-tree). Labels are shuffled.
pub fn random_chordal(n: usize, max_clique: usize, seed: u64) -> Result<Graph> {
    if max_clique == 0 {
        return Err(Error::invalid("max_clique must be at least 1"));
    }
    let mut r = rng(seed);
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    let mut edges = Vec::new();
    for v in 0..n {
        let mut attach = Vec::new();
        if let Some(base) = cliques.choose(&mut r) {
            let limit = base.len().min(max_clique - 1);
            let size = r.gen_range(0..=limit);
            attach = base.choose_multiple(&mut r, size).copied().collect();
        }
        for &u in &attach {
            edges.push((u, v));
        }
        attach.push(v);
        cliques.push(attach);
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut r);
    Graph::from_edges(n, relabel(edges, &perm))
}

/// Disjoint cliques of random sizes in `1..=max_cluster`, with labels.
pub fn random_cluster(n: usize, max_cluster: usize, seed: u64) -> Result<(Graph, Vec<usize>)> {
    if max_cluster == 0 {
        return Err(Error::invalid("max_cluster must be at least 1"));
    }
    let mut r = rng(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut r);
    let mut labels = vec![0; n];
    let mut edges = Vec::new();
    let mut start = 0;
    let mut id = 0;
    while start < n {
        let size = r.gen_range(1..=max_cluster).min(n - start);
        let members = &order[start..start + size];
        for (a, &u) in members.iter().enumerate() {
            labels[u] = id;
            for &v in &members[a + 1..] {
                edges.push((u, v));
            }
        }
        start += size;
        id += 1;
    }
    Ok((Graph::from_edges(n, edges)?, labels))
}

/// Union of a cluster graph and a chordal graph on the same vertices, with
/// unit weights, the cluster labels and an edge tag per edge. Edges of the
/// chordal part are tagged chordal even when a cluster also contains them.
pub fn overlay_cluster_chordal(cluster: &Graph, labels: &[usize], chordal: &Graph) -> Result<WeightedInstance> {
    let n = cluster.n();
    if chordal.n() != n || labels.len() != n {
        return Err(Error::invalid("the two parts must have the same vertex count"));
    }
    let mut tags: BTreeMap<(Vertex, Vertex), EdgeTag> = BTreeMap::new();
    for e in cluster.edges() {
        tags.insert(e, EdgeTag::Cluster);
    }
    for e in chordal.edges() {
        tags.insert(e, EdgeTag::Chordal);
    }
    let g = Graph::from_edges(n, tags.keys().copied())?;
    WeightedInstance::unit(g).with_clusters(labels.to_vec())?.with_edge_tags(tags)
}

/// Classes of the given sizes (consecutive ids), each cross-class pair joined
/// independently with probability `p`. With `plant`, one random vertex per
/// class is made pairwise adjacent.
pub fn random_multicolored_clique(
    k: usize,
    class_sizes: &[usize],
    p: f64,
    plant: bool,
    seed: u64,
) -> Result<MulticoloredCliqueInstance> {
    if class_sizes.len() != k {
        return Err(Error::invalid("one size per class is required"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} is not in [0, 1]")));
    }
    let mut r = rng(seed);
    let mut classes = Vec::with_capacity(k);
    let mut next = 0;
    for &s in class_sizes {
        classes.push((next..next + s).collect::<Vec<Vertex>>());
        next += s;
    }
    let mut edges = Vec::new();
    for (a, ca) in classes.iter().enumerate() {
        for cb in &classes[a + 1..] {
            for &u in ca {
                for &v in cb {
                    if r.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    if plant {
        if class_sizes.contains(&0) {
            return Err(Error::invalid("cannot plant a clique with an empty class"));
        }
        let pick: Vec<Vertex> = classes.iter().map(|c| *c.choose(&mut r).expect("nonempty")).collect();
        for (a, &u) in pick.iter().enumerate() {
            for &v in &pick[a + 1..] {
                edges.push((u, v));
            }
        }
    }
    MulticoloredCliqueInstance::new(Graph::from_edges_dedup(next, edges)?, classes)
}

/// Replaces the weights with independent uniform integers in `0..=max_w`.
pub fn random_weights(inst: &WeightedInstance, max_w: u64, seed: u64) -> Result<WeightedInstance> {
    let mut r = rng(seed);
    let weights = (0..inst.n()).map(|_| r.gen_range(0..=max_w)).collect();
    inst.clone().with_weights(weights)
}

/// Random colors in `1..=c`.
pub fn random_colors(n: usize, c: u32, seed: u64) -> Result<Vec<u32>> {
    if c == 0 {
        return Err(Error::invalid("at least one color is required"));
    }
    let mut r = rng(seed);
    Ok((0..n).map(|_| r.gen_range(1..=c)).collect())
}

/// Erdős–Rényi graph: each pair joined independently with probability `p`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} is not in [0, 1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Random simple 3-regular graph from the pairing model, retrying up to
/// `attempts` times. `None` if every attempt produced a loop or a multi-edge.
pub fn random_cubic(n: usize, seed: u64, attempts: usize) -> Result<Option<Graph>> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::invalid("cubic graphs need an even number of at least 4 vertices"));
    }
    let mut r = rng(seed);
    'attempt: for _ in 0..attempts {
        let mut points: Vec<Vertex> = (0..3 * n).map(|x| x / 3).collect();
        points.shuffle(&mut r);
        let mut edges = Vec::with_capacity(3 * n / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || edges.contains(&(u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Ok(Some(Graph::from_edges(n, edges)?));
    }
    Ok(None)
}
