//! Membership tests and witness orderings for chordal, cluster, k-mino,
//! K_{1,k}-free, 2-simplicial and inductive k-independent graphs, plus a
//! brute-force cluster⋈chordal decomposition search.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{
    find_independent_subset, independence_bounded, is_c_colorable, maximal_cliques_containing,
    EdgeTag, Graph, Vertex, VertexSet, WeightedInstance,
};

/// Default edge limit for [`brute_force_cluster_chordal`].
pub const DEFAULT_EDGE_CAP: usize = 24;

/// A vertex ordering `v_1, …, v_n`, leftmost first. Properties are always
/// stated over the neighbors that occur *later* in the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrdering(Vec<Vertex>);

impl EliminationOrdering {
    pub fn new(order: Vec<Vertex>, n: usize) -> Result<Self> {
        if order.len() != n {
            return Err(Error::invalid(format!(
                "ordering has {} entries for {n} vertices",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("ordering is not a permutation (entry {v})")));
            }
        }
        Ok(EliminationOrdering(order))
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `pos[v]` is the index of `v` in the ordering.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        EliminationOrdering(self.0.iter().rev().copied().collect())
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    fn check_for(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.n() {
            return Err(Error::invalid(format!(
                "ordering has {} entries for {} vertices",
                self.0.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// Neighbors of `v` that occur after it, given positions.
fn later_neighbors(g: &Graph, pos: &[usize], v: Vertex) -> Vec<Vertex> {
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|&u| pos[u] > pos[v])
        .collect()
}

/// Maximum cardinality search: repeatedly visit an unvisited vertex with the
/// most visited neighbors. Returns the visit order; when
/// `g` is chordal its reverse is a perfect elimination ordering.
pub fn maximum_cardinality_search(g: &Graph) -> EliminationOrdering {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); n + 1];
    // Pushed in reverse so that popping yields the lowest id.
    buckets[0].extend((0..n).rev());
    let mut max = 0;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = loop {
            while buckets[max].is_empty() {
                max -= 1;
            }
            let v = buckets[max].pop().expect("bucket is nonempty");
            if !visited[v] && weight[v] == max {
                break v;
            }
        };
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
                let w = weight[u];
                buckets[w].push(u);
                max = max.max(w);
            }
        }
    }
    EliminationOrdering(order)
}

/// True iff every vertex's later neighbors form a clique. Uses the classic
/// parent test: later(v) minus its earliest member p must lie in N(p).
pub fn verify_peo(g: &Graph, ord: &EliminationOrdering) -> Result<bool> {
    ord.check_for(g)?;
    let pos = ord.positions();
    for v in 0..g.n() {
        let later = later_neighbors(g, &pos, v);
        let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        if later.iter().any(|&u| u != p && !g.has_edge(p, u)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A perfect elimination ordering if `g` is chordal.
pub fn is_chordal(g: &Graph) -> Option<EliminationOrdering> {
    let peo = maximum_cardinality_search(g).reversed();
    verify_peo(g, &peo).expect("MCS yields a permutation").then_some(peo)
}

/// True iff every connected component is a clique.
pub fn is_cluster(g: &Graph) -> bool {
    g.components()
        .iter()
        .all(|comp| comp.iter().all(|&v| g.degree(v) == comp.len() - 1))
}

/// An induced path `a - b - c` (with `a`, `c` nonadjacent), if any.
pub fn find_induced_p3(g: &Graph) -> Option<(Vertex, Vertex, Vertex)> {
    for b in 0..g.n() {
        let nb = g.neighbors(b);
        for (i, &a) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                if !g.has_edge(a, c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// An induced cycle of length at least four, if any.
pub fn find_chordless_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    for v in 0..n {
        let nb = g.neighbors(v);
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                if g.has_edge(x, y) {
                    continue;
                }
                // Shortest x–y path avoiding N[v] apart from x and y.
                let mut blocked = vec![false; n];
                blocked[v] = true;
                for &u in nb {
                    if u != x && u != y {
                        blocked[u] = true;
                    }
                }
                let mut prev = vec![usize::MAX; n];
                prev[x] = x;
                let mut queue = VecDeque::from([x]);
                while let Some(a) = queue.pop_front() {
                    if a == y {
                        break;
                    }
                    for &b in g.neighbors(a) {
                        if !blocked[b] && prev[b] == usize::MAX {
                            prev[b] = a;
                            queue.push_back(b);
                        }
                    }
                }
                if prev[y] != usize::MAX {
                    let mut cycle = vec![v];
                    let mut path = vec![y];
                    let mut cur = y;
                    while cur != x {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

/// True iff every vertex lies in at most `k` maximal cliques.
pub fn is_k_mino(g: &Graph, k: usize) -> bool {
    (0..g.n()).all(|v| maximal_cliques_containing(g, v, k).is_ok())
}

/// An induced K_{1,k}: a center and `k` pairwise nonadjacent neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarWitness {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
}

/// `None` if `g` is K_{1,k}-free, otherwise a witness star.
pub fn is_k1k_free(g: &Graph, k: usize) -> Option<StarWitness> {
    (0..g.n()).find_map(|v| {
        find_independent_subset(g, g.neighbors(v), k).map(|leaves| StarWitness { center: v, leaves })
    })
}

/// True iff the complement of G[vertices] is bipartite, i.e. the vertices can
/// be covered by two cliques.
pub fn two_clique_coverable(g: &Graph, vertices: &[Vertex]) -> bool {
    let s = vertices.len();
    let mut side = vec![u8::MAX; s];
    for start in 0..s {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..s {
                if i == j || g.has_edge(vertices[i], vertices[j]) {
                    continue;
                }
                if side[j] == u8::MAX {
                    side[j] = 1 - side[i];
                    queue.push_back(j);
                } else if side[j] == side[i] {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff G[vertices] can be covered by at most `k` cliques (a `k`-coloring
/// of its complement). Exponential for `k >= 3`.
pub fn clique_coverable(g: &Graph, vertices: &[Vertex], k: usize) -> bool {
    if k == 2 {
        return two_clique_coverable(g, vertices);
    }
    let s = vertices.len();
    let mut edges = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            if !g.has_edge(vertices[i], vertices[j]) {
                edges.push((i, j));
            }
        }
    }
    let complement = Graph::from_edges(s, edges).expect("complement is simple");
    is_c_colorable(&complement, k as u32).is_some()
}

/// Greedy peeling: repeatedly delete the lowest-id vertex whose remaining
/// neighborhood is covered by two cliques. Succeeds iff `g` is 2-simplicial.
pub fn two_simplicial_ordering(g: &Graph) -> Option<EliminationOrdering> {
    peel(g, |alive, v| {
        let nb: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| alive[u]).collect();
        two_clique_coverable(g, &nb)
    })
}

/// True iff each vertex's later neighbors can be covered by `k` cliques.
pub fn verify_k_simplicial(g: &Graph, ord: &EliminationOrdering, k: usize) -> Result<bool> {
    ord.check_for(g)?;
    let pos = ord.positions();
    Ok((0..g.n()).all(|v| clique_coverable(g, &later_neighbors(g, &pos, v), k)))
}

/// True iff for every vertex the closed later neighborhood has independence
/// number at most `k`.
pub fn verify_inductive_k_independent(g: &Graph, ord: &EliminationOrdering, k: usize) -> Result<bool> {
    ord.check_for(g)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let pos = ord.positions();
    Ok((0..g.n()).all(|v| {
        let mut s = VertexSet::from_vertices(g.n(), later_neighbors(g, &pos, v));
        s.insert(v);
        independence_bounded(g, &s, k)
    }))
}

/// Greedy peeling: repeatedly delete the lowest-id vertex whose closed
/// neighborhood in the remaining graph has independence number at most `k`.
/// The class is hereditary, so this succeeds iff `g` is inductive
/// k-independent.
pub fn find_inductive_k_independent_ordering(g: &Graph, k: usize) -> Option<EliminationOrdering> {
    if k == 0 {
        return (g.n() == 0).then(|| EliminationOrdering(Vec::new()));
    }
    peel(g, |alive, v| {
        let mut s = VertexSet::from_vertices(
            g.n(),
            g.neighbors(v).iter().copied().filter(|&u| alive[u]),
        );
        s.insert(v);
        independence_bounded(g, &s, k)
    })
}

fn peel<F>(g: &Graph, removable: F) -> Option<EliminationOrdering>
where
    F: Fn(&[bool], Vertex) -> bool,
{
    let n = g.n();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).find(|&v| alive[v] && removable(&alive, v))?;
        alive[v] = false;
        order.push(v);
    }
    Some(EliminationOrdering(order))
}

/// A split `E = E_1 ∪ E_2` with `(V, E_1)` a cluster graph and `(V, E_2)`
/// chordal. `cluster_edges` is always a complete cluster graph; edges the
/// chordal side also needs appear in both lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterChordalDecomposition {
    pub cluster_edges: Vec<(Vertex, Vertex)>,
    pub chordal_edges: Vec<(Vertex, Vertex)>,
    pub peo: EliminationOrdering,
}

impl ClusterChordalDecomposition {
    /// Cluster id per vertex (components of the cluster side, numbered by
    /// smallest member).
    pub fn cluster_labels(&self, n: usize) -> Vec<usize> {
        let g = Graph::from_edges(n, self.cluster_edges.iter().copied())
            .expect("decomposition edges are simple");
        let mut label = vec![0; n];
        for (i, comp) in g.components().into_iter().enumerate() {
            for v in comp {
                label[v] = i;
            }
        }
        label
    }

    /// Checks the decomposition against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.n();
        let Ok(cl) = Graph::from_edges(n, self.cluster_edges.iter().copied()) else {
            return false;
        };
        let Ok(ch) = Graph::from_edges(n, self.chordal_edges.iter().copied()) else {
            return false;
        };
        let covered = g.edges().all(|(u, v)| cl.has_edge(u, v) || ch.has_edge(u, v));
        let inside = cl.edges().chain(ch.edges()).all(|(u, v)| g.has_edge(u, v));
        covered
            && inside
            && is_cluster(&cl)
            && verify_peo(&ch, &self.peo).unwrap_or(false)
    }
}

/// Exhaustive search for a cluster⋈chordal decomposition. Every cluster graph
/// inside `g` is a partition of `V` into cliques of `g`; for each partition
/// the remaining edges (plus, if needed, a subset of the partition's own
/// edges) must be chordal. Refuses graphs with more than `edge_cap` edges.
pub fn brute_force_cluster_chordal(g: &Graph, edge_cap: usize) -> Result<Option<ClusterChordalDecomposition>> {
    if g.m() > edge_cap {
        return Err(Error::cap("cluster-chordal brute force edges", edge_cap as u64, g.m() as u64));
    }
    let n = g.n();
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    Ok(search_partitions(g, 0, &mut part_of, &mut parts))
}

fn search_partitions(
    g: &Graph,
    v: Vertex,
    part_of: &mut Vec<usize>,
    parts: &mut Vec<Vec<Vertex>>,
) -> Option<ClusterChordalDecomposition> {
    if v == g.n() {
        return try_partition(g, part_of);
    }
    // Singleton first so the sparsest cluster side is found first.
    parts.push(vec![v]);
    part_of[v] = parts.len() - 1;
    if let Some(found) = search_partitions(g, v + 1, part_of, parts) {
        return Some(found);
    }
    parts.pop();
    for i in 0..parts.len() {
        if parts[i].iter().all(|&u| g.has_edge(u, v)) {
            parts[i].push(v);
            part_of[v] = i;
            let found = search_partitions(g, v + 1, part_of, parts);
            parts[i].pop();
            if found.is_some() {
                return found;
            }
        }
    }
    part_of[v] = usize::MAX;
    None
}

fn try_partition(g: &Graph, part_of: &[usize]) -> Option<ClusterChordalDecomposition> {
    let (inside, rest): (Vec<_>, Vec<_>) = g.edges().partition(|&(u, v)| part_of[u] == part_of[v]);
    // Overlap sets drawn from the cluster edges, smallest first.
    let k = inside.len();
    for size in 0..=k {
        let mut mask: u64 = (1u64 << size) - 1;
        loop {
            let mut chordal_edges = rest.clone();
            chordal_edges.extend((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| inside[i]));
            chordal_edges.sort_unstable();
            let chordal =
                Graph::from_edges(g.n(), chordal_edges.iter().copied()).expect("subgraph is simple");
            if let Some(peo) = is_chordal(&chordal) {
                return Some(ClusterChordalDecomposition {
                    cluster_edges: inside,
                    chordal_edges,
                    peo,
                });
            }
            if size == 0 {
                break;
            }
            // Next mask with the same popcount (Gosper).
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            mask = ripple | (((mask ^ ripple) >> 2) / low);
            if mask >> k != 0 {
                break;
            }
        }
    }
    None
}

/// Decides Hamiltonicity of a cubic triangle-free graph by deleting each of
/// the three edges at vertex 0 and testing for a cluster⋈chordal
/// decomposition.
pub fn hamiltonicity_via_decomposition(g: &Graph) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::invalid("graph is empty"));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) != 3) {
        return Err(Error::invalid(format!("graph is not cubic (vertex {v} has degree {})", g.degree(v))));
    }
    for (u, v) in g.edges() {
        if g.neighbors(u).iter().any(|&w| w != v && g.has_edge(v, w)) {
            return Err(Error::invalid(format!("graph has a triangle through edge ({u}, {v})")));
        }
    }
    for &w in g.neighbors(0) {
        let edges = g.edges().filter(|&e| e != (0, w));
        let h = Graph::from_edges(g.n(), edges.collect::<Vec<_>>()).expect("subgraph is simple");
        if brute_force_cluster_chordal(&h, DEFAULT_EDGE_CAP)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A validated cluster⋈chordal witness for a weighted instance: a cluster id
/// per vertex and the chordal edge set with its elimination ordering.
#[derive(Clone, Debug)]
pub struct ClusterChordalWitness {
    cluster_of: Vec<usize>,
    num_clusters: usize,
    chordal: Graph,
    peo: EliminationOrdering,
}

impl ClusterChordalWitness {
    /// Checks that every edge of `g` is a chordal edge or joins two vertices of
    /// the same cluster, that each cluster is a clique of `g`, and that the
    /// chordal part is chordal.
    pub fn new(g: &Graph, cluster_of: &[usize], chordal: Graph) -> Result<Self> {
        let n = g.n();
        if cluster_of.len() != n || chordal.n() != n {
            return Err(Error::invalid("witness size differs from graph size"));
        }
        // Compact labels in order of first appearance.
        let mut remap = std::collections::HashMap::new();
        let compact: Vec<usize> = cluster_of
            .iter()
            .map(|&c| {
                let next = remap.len();
                *remap.entry(c).or_insert(next)
            })
            .collect();
        let num_clusters = remap.len();
        for (u, v) in chordal.edges() {
            if !g.has_edge(u, v) {
                return Err(Error::invalid(format!("chordal edge ({u}, {v}) is not an edge of the graph")));
            }
        }
        for (u, v) in g.edges() {
            if !chordal.has_edge(u, v) && compact[u] != compact[v] {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) is neither chordal nor inside a cluster"
                )));
            }
        }
        let mut members = vec![Vec::new(); num_clusters];
        for (v, &c) in compact.iter().enumerate() {
            members[c].push(v);
        }
        for m in &members {
            for (i, &a) in m.iter().enumerate() {
                if let Some(&b) = m[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                    return Err(Error::invalid(format!(
                        "cluster containing {a} and {b} is not a clique"
                    )));
                }
            }
        }
        let peo = match is_chordal(&chordal) {
            Some(peo) => peo,
            None => {
                let cycle = find_chordless_cycle(&chordal).unwrap_or_default();
                return Err(Error::invalid(format!(
                    "chordal part is not chordal (induced cycle {cycle:?})"
                )));
            }
        };
        Ok(ClusterChordalWitness {
            cluster_of: compact,
            num_clusters,
            chordal,
            peo,
        })
    }

    /// Builds the witness from an instance's edge tags (and cluster labels if
    /// present; otherwise clusters are the components of the cluster-tagged
    /// edges). An edgeless instance needs no tags.
    pub fn from_instance(inst: &WeightedInstance) -> Result<Self> {
        let g = inst.graph();
        let n = g.n();
        let Some(tags) = inst.edge_tags() else {
            if g.m() == 0 {
                let labels: Vec<usize> = match inst.clusters() {
                    Some(cl) => cl.to_vec(),
                    None => (0..n).collect(),
                };
                return ClusterChordalWitness::new(g, &labels, Graph::empty(n));
            }
            return Err(Error::invalid(
                "missing cluster/chordal decomposition witness (edge tags)",
            ));
        };
        let cluster_edges: Vec<_> = tags
            .iter()
            .filter(|(_, &t)| t == EdgeTag::Cluster)
            .map(|(&e, _)| e)
            .collect();
        let chordal_edges: Vec<_> = tags
            .iter()
            .filter(|(_, &t)| t == EdgeTag::Chordal)
            .map(|(&e, _)| e)
            .collect();
        let cluster_graph = Graph::from_edges(n, cluster_edges.iter().copied())?;
        let labels = match inst.clusters() {
            Some(cl) => {
                if let Some(&(u, v)) = cluster_edges.iter().find(|&&(u, v)| cl[u] != cl[v]) {
                    return Err(Error::invalid(format!(
                        "cluster edge ({u}, {v}) joins different cluster labels"
                    )));
                }
                cl.to_vec()
            }
            None => {
                if let Some((a, b, c)) = find_induced_p3(&cluster_graph) {
                    return Err(Error::invalid(format!(
                        "cluster edges are not a cluster graph (induced path {a}-{b}-{c})"
                    )));
                }
                let mut label = vec![0; n];
                for (i, comp) in cluster_graph.components().into_iter().enumerate() {
                    for v in comp {
                        label[v] = i;
                    }
                }
                label
            }
        };
        let chordal = Graph::from_edges(n, chordal_edges)?;
        ClusterChordalWitness::new(g, &labels, chordal)
    }

    /// Treats every edge as chordal and every vertex as its own cluster.
    pub fn chordal_only(g: &Graph) -> Result<Self> {
        ClusterChordalWitness::new(g, &(0..g.n()).collect::<Vec<_>>(), g.clone())
    }

    pub fn cluster_of(&self) -> &[usize] {
        &self.cluster_of
    }

    pub fn num_clusters(&self) -> usize {
        self.num_clusters
    }

    pub fn chordal(&self) -> &Graph {
        &self.chordal
    }

    pub fn peo(&self) -> &EliminationOrdering {
        &self.peo
    }
}
