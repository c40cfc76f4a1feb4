//! Graph representation, weighted instances, solutions, and the primitive
//! predicates the rest of the crate builds on.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Weight = u64;

/// A subset of `{0, …, n-1}` stored as a bitset of capacity `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    /// Panics if a vertex is `>= n`; use [`VertexSet::try_from_vertices`] for
    /// untrusted input.
    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(n: usize, vertices: I) -> Self {
        let mut set = VertexSet::new(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn try_from_vertices<I: IntoIterator<Item = Vertex>>(n: usize, vertices: I) -> Result<Self> {
        let mut set = VertexSet::new(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Capacity of the underlying universe.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: Vertex) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.bits.set(v, false);
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.bits.ones().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn blocks(&self) -> &[usize] {
        self.bits.as_slice()
    }
}

/// Lexicographic order on the sorted vertex lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Graph { adj, m })
    }

    /// Like [`Graph::from_edges`] but silently merges duplicate edges.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set: Vec<(Vertex, Vertex)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        set.sort_unstable();
        set.dedup();
        Graph::from_edges(n, set)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// K_{a,b} with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).expect("complete bipartite graph is simple")
    }

    /// The star K_{1,k}: center 0, leaves `1..=k`.
    pub fn star(k: usize) -> Self {
        Graph::complete_bipartite(1, k)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).expect("Petersen graph is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            None => Ok(()),
        }
    }

    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Complement graph.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let edges: Vec<_> = edges.filter(|&(u, v)| !self.has_edge(u, v)).collect();
        Graph::from_edges(n, edges).expect("complement is simple")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges(self.n() + other.n(), edges.collect::<Vec<_>>())
            .expect("disjoint union is simple")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Which side of a cluster⋈chordal decomposition an edge belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeTag {
    Cluster,
    Chordal,
}

/// A graph with non-negative integer vertex weights and optional per-vertex
/// colors (`1..=c`), cluster labels, and per-edge decomposition tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedInstance {
    graph: Graph,
    weights: Vec<Weight>,
    colors: Option<Vec<u32>>,
    clusters: Option<Vec<usize>>,
    edge_tags: Option<BTreeMap<(Vertex, Vertex), EdgeTag>>,
}

impl WeightedInstance {
    pub fn new(graph: Graph, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::invalid(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.n()
            )));
        }
        weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or(Error::WeightOverflow)?;
        Ok(WeightedInstance {
            graph,
            weights,
            colors: None,
            clusters: None,
            edge_tags: None,
        })
    }

    /// All weights one.
    pub fn unit(graph: Graph) -> Self {
        let n = graph.n();
        WeightedInstance::new(graph, vec![1; n]).expect("unit weights fit")
    }

    /// Attaches 1-based colors; every color must be at least one.
    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.graph.n() {
            return Err(Error::invalid("color vector length differs from vertex count"));
        }
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::invalid(format!("vertex {v} has color 0; colors are 1-based")));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn with_clusters(mut self, clusters: Vec<usize>) -> Result<Self> {
        if clusters.len() != self.graph.n() {
            return Err(Error::invalid("cluster vector length differs from vertex count"));
        }
        self.clusters = Some(clusters);
        Ok(self)
    }

    /// Attaches a tag to every edge. Keys are `(u, v)` with `u < v` and must
    /// be exactly the edge set. An empty map on an edgeless graph is the same
    /// as no tags.
    pub fn with_edge_tags(mut self, tags: BTreeMap<(Vertex, Vertex), EdgeTag>) -> Result<Self> {
        if tags.len() != self.graph.m() {
            return Err(Error::invalid("edge tags must cover every edge exactly once"));
        }
        for &(u, v) in tags.keys() {
            if u >= v || v >= self.graph.n() || !self.graph.has_edge(u, v) {
                return Err(Error::invalid(format!("tag on non-edge ({u}, {v})")));
            }
        }
        self.edge_tags = (!tags.is_empty()).then_some(tags);
        Ok(self)
    }

    pub fn with_weights(self, weights: Vec<Weight>) -> Result<Self> {
        let mut out = WeightedInstance::new(self.graph, weights)?;
        out.colors = self.colors;
        out.clusters = self.clusters;
        out.edge_tags = self.edge_tags;
        Ok(out)
    }

    pub fn without_colors(mut self) -> Self {
        self.colors = None;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn clusters(&self) -> Option<&[usize]> {
        self.clusters.as_deref()
    }

    pub fn edge_tags(&self) -> Option<&BTreeMap<(Vertex, Vertex), EdgeTag>> {
        self.edge_tags.as_ref()
    }

    /// Largest color in use, or zero when uncolored.
    pub fn num_colors(&self) -> u32 {
        self.colors
            .as_ref()
            .and_then(|c| c.iter().copied().max())
            .unwrap_or(0)
    }

    /// w(S). Cannot overflow: the total weight is checked at construction.
    pub fn weight_of<I: IntoIterator<Item = Vertex>>(&self, vertices: I) -> Weight {
        vertices.into_iter().map(|v| self.weights[v]).sum()
    }

    pub fn total_weight(&self) -> Weight {
        self.weights.iter().sum()
    }
}

/// A solution: a vertex set, optionally with a color per chosen vertex, and
/// its total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub vertices: VertexSet,
    pub color_assignment: Option<BTreeMap<Vertex, u32>>,
    pub weight: Weight,
}

impl Solution {
    pub fn empty(n: usize) -> Self {
        Solution {
            vertices: VertexSet::new(n),
            color_assignment: None,
            weight: 0,
        }
    }

    pub fn from_set(inst: &WeightedInstance, vertices: VertexSet) -> Self {
        let weight = inst.weight_of(vertices.iter());
        Solution {
            vertices,
            color_assignment: None,
            weight,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Higher weight first, then lexicographically smaller vertex set.
    pub fn better_than(&self, other: &Solution) -> bool {
        match self.weight.cmp(&other.weight) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.vertices < other.vertices,
        }
    }

    fn check_weight(&self, inst: &WeightedInstance) -> Result<()> {
        inst.graph().check_set(&self.vertices)?;
        let w = inst.weight_of(self.vertices.iter());
        if w != self.weight {
            return Err(Error::Validation(format!(
                "reported weight {} but vertices weigh {w}",
                self.weight
            )));
        }
        Ok(())
    }

    /// Checks weight consistency and independence.
    pub fn validate_independent(&self, inst: &WeightedInstance) -> Result<()> {
        self.check_weight(inst)?;
        if !is_independent(inst.graph(), &self.vertices) {
            return Err(Error::Validation("solution is not independent".into()));
        }
        Ok(())
    }

    /// Checks independence plus pairwise distinct input colors.
    pub fn validate_colorful(&self, inst: &WeightedInstance) -> Result<()> {
        self.validate_independent(inst)?;
        let colors = inst
            .colors()
            .ok_or_else(|| Error::invalid("instance has no colors"))?;
        let mut seen = std::collections::HashSet::new();
        for v in self.vertices.iter() {
            if !seen.insert(colors[v]) {
                return Err(Error::Validation(format!("color {} used twice", colors[v])));
            }
        }
        Ok(())
    }

    /// Checks weight, the size bound, and that the color assignment is a proper
    /// coloring of the induced subgraph with colors in `1..=c`.
    pub fn validate_colorable(&self, inst: &WeightedInstance, c: u32, ell: usize) -> Result<()> {
        self.check_weight(inst)?;
        if self.len() > ell {
            return Err(Error::Validation(format!(
                "solution has {} vertices, bound is {ell}",
                self.len()
            )));
        }
        let assignment = self
            .color_assignment
            .as_ref()
            .ok_or_else(|| Error::Validation("missing color assignment".into()))?;
        if !assignment.keys().copied().eq(self.vertices.iter()) {
            return Err(Error::Validation("color assignment does not match vertex set".into()));
        }
        for (&v, &col) in assignment {
            if col == 0 || col > c {
                return Err(Error::Validation(format!("vertex {v} has color {col} outside 1..={c}")));
            }
            for &u in inst.graph().neighbors(v) {
                if u > v && assignment.get(&u) == Some(&col) {
                    return Err(Error::Validation(format!("edge ({v}, {u}) is monochromatic")));
                }
            }
        }
        Ok(())
    }
}

/// N(v), or N[v] when `closed`.
pub fn neighborhood(g: &Graph, v: Vertex, closed: bool) -> Result<VertexSet> {
    g.check_vertex(v)?;
    let mut set = VertexSet::from_vertices(g.n(), g.neighbors(v).iter().copied());
    if closed {
        set.insert(v);
    }
    Ok(set)
}

/// G[S] together with the map from new ids to original ids (ascending).
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
    g.check_set(s)?;
    let map: Vec<Vertex> = s.iter().collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::new();
    for (i, &v) in map.iter().enumerate() {
        for &u in g.neighbors(v) {
            let j = index[u];
            if j != usize::MAX && j > i {
                edges.push((i, j));
            }
        }
    }
    let sub = Graph::from_edges(map.len(), edges).expect("induced subgraph is simple");
    Ok((sub, map))
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter()
        .all(|v| g.neighbors(v).iter().all(|&u| u >= g.n() || !s.contains(u)))
}

/// Searches `candidates` for `size` pairwise nonadjacent vertices.
pub fn find_independent_subset(g: &Graph, candidates: &[Vertex], size: usize) -> Option<Vec<Vertex>> {
    fn go(g: &Graph, cand: &[Vertex], size: usize, chosen: &mut Vec<Vertex>) -> bool {
        if chosen.len() == size {
            return true;
        }
        let need = size - chosen.len();
        for (i, &v) in cand.iter().enumerate() {
            if cand.len() - i < need {
                return false;
            }
            let rest: Vec<Vertex> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&u| !g.has_edge(u, v))
                .collect();
            if rest.len() + 1 < need {
                continue;
            }
            chosen.push(v);
            if go(g, &rest, size, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(size);
    go(g, candidates, size, &mut chosen).then_some(chosen)
}

/// True iff every independent subset of G[s] has at most `k` vertices.
pub fn independence_bounded(g: &Graph, s: &VertexSet, k: usize) -> bool {
    let cand: Vec<Vertex> = s.iter().collect();
    find_independent_subset(g, &cand, k + 1).is_none()
}

/// Independence number of G[s] by bounded search.
pub fn independence_number(g: &Graph, s: &VertexSet) -> usize {
    let cand: Vec<Vertex> = s.iter().collect();
    let mut k = 0;
    while find_independent_subset(g, &cand, k + 1).is_some() {
        k += 1;
    }
    k
}

/// A proper coloring with colors `1..=c` if one exists. Backtracking over
/// vertices in non-increasing degree order; a vertex may open at most one new
/// color beyond those already used.
pub fn is_c_colorable(g: &Graph, c: u32) -> Option<Vec<u32>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if c == 0 {
        return None;
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut color = vec![0u32; n];

    fn go(g: &Graph, order: &[Vertex], idx: usize, used: u32, c: u32, color: &mut [u32]) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        let limit = (used + 1).min(c);
        for col in 1..=limit {
            if g.neighbors(v).iter().any(|&u| color[u] == col) {
                continue;
            }
            color[v] = col;
            if go(g, order, idx + 1, used.max(col), c, color) {
                return true;
            }
            color[v] = 0;
        }
        false
    }

    go(g, &order, 0, 0, c, &mut color).then_some(color)
}

/// All maximal cliques of `g` containing `v`, via pivoted Bron–Kerbosch on
/// N(v). Fails with [`Error::CliqueCapExceeded`] once more than `cap` cliques
/// have been found.
pub fn maximal_cliques_containing(g: &Graph, v: Vertex, cap: usize) -> Result<Vec<VertexSet>> {
    g.check_vertex(v)?;
    let nbrs = g.neighbors(v);
    let d = nbrs.len();
    // Local adjacency among N(v) as bitsets over 0..d.
    let local: Vec<FixedBitSet> = nbrs
        .iter()
        .map(|&x| {
            let mut row = FixedBitSet::with_capacity(d);
            for (j, &y) in nbrs.iter().enumerate() {
                if x != y && g.has_edge(x, y) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();

    struct Search<'a> {
        local: &'a [FixedBitSet],
        found: Vec<Vec<usize>>,
        cap: usize,
    }

    impl Search<'_> {
        fn expand(&mut self, r: &mut Vec<usize>, p: FixedBitSet, x: FixedBitSet) -> bool {
            if p.is_clear() && x.is_clear() {
                if self.found.len() == self.cap {
                    return false;
                }
                self.found.push(r.clone());
                return true;
            }
            let pivot = p
                .ones()
                .chain(x.ones())
                .max_by_key(|&u| self.local[u].intersection_count(&p))
                .expect("p or x is nonempty");
            let mut p = p;
            let mut x = x;
            let branch: Vec<usize> = p.difference(&self.local[pivot]).collect();
            for u in branch {
                let mut np = p.clone();
                np.intersect_with(&self.local[u]);
                let mut nx = x.clone();
                nx.intersect_with(&self.local[u]);
                r.push(u);
                let ok = self.expand(r, np, nx);
                r.pop();
                if !ok {
                    return false;
                }
                p.set(u, false);
                x.insert(u);
            }
            true
        }
    }

    let mut p = FixedBitSet::with_capacity(d);
    p.insert_range(..);
    let mut search = Search {
        local: &local,
        found: Vec::new(),
        cap,
    };
    if !search.expand(&mut Vec::new(), p, FixedBitSet::with_capacity(d)) {
        return Err(Error::CliqueCapExceeded { vertex: v, cap });
    }
    Ok(search
        .found
        .into_iter()
        .map(|clique| {
            let mut set = VertexSet::from_vertices(g.n(), clique.into_iter().map(|j| nbrs[j]));
            set.insert(v);
            set
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn neighborhoods() {
        let k3 = Graph::complete(3);
        assert_eq!(neighborhood(&k3, 0, false).unwrap().to_vec(), vec![1, 2]);
        let iso = Graph::empty(2);
        assert_eq!(neighborhood(&iso, 1, true).unwrap().to_vec(), vec![1]);
        let p4 = Graph::path(4);
        assert_eq!(neighborhood(&p4, 1, false).unwrap().to_vec(), vec![0, 2]);
        assert!(matches!(
            neighborhood(&p4, 4, false),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn induced_subgraphs() {
        let (k2, map) = induced_subgraph(&Graph::complete(3), &set(3, &[0, 1])).unwrap();
        assert_eq!(k2, Graph::complete(2));
        assert_eq!(map, vec![0, 1]);
        let (g, _) = induced_subgraph(&Graph::path(4), &set(4, &[0, 2])).unwrap();
        assert_eq!(g, Graph::empty(2));
        for drop in 0..4 {
            let keep: Vec<_> = (0..4).filter(|&v| v != drop).collect();
            let (g, _) = induced_subgraph(&Graph::cycle(4), &set(4, &keep)).unwrap();
            assert_eq!(g.m(), 2);
            let mut degs: Vec<_> = (0..3).map(|v| g.degree(v)).collect();
            degs.sort();
            assert_eq!(degs, vec![1, 1, 2]);
        }
    }

    #[test]
    fn independence() {
        let k3 = Graph::complete(3);
        assert!(is_independent(&k3, &VertexSet::new(3)));
        assert!(!is_independent(&k3, &set(3, &[0, 1])));
        assert!(is_independent(&Graph::cycle(4), &set(4, &[0, 2])));
    }

    #[test]
    fn bounded_independence() {
        let star = Graph::star(3);
        assert!(!independence_bounded(&star, &set(4, &[1, 2, 3]), 2));
        let k5 = Graph::complete(5);
        assert!(independence_bounded(&k5, &VertexSet::full(5), 1));
        let c5 = Graph::cycle(5);
        assert!(independence_bounded(&c5, &VertexSet::full(5), 2));
        assert!(!independence_bounded(&c5, &VertexSet::full(5), 1));
        assert_eq!(independence_number(&c5, &VertexSet::full(5)), 2);
    }

    #[test]
    fn coloring() {
        assert!(is_c_colorable(&Graph::complete(3), 3).is_some());
        assert!(is_c_colorable(&Graph::complete(3), 2).is_none());
        assert!(is_c_colorable(&Graph::cycle(5), 2).is_none());
        let col = is_c_colorable(&Graph::cycle(5), 3).unwrap();
        for (u, v) in Graph::cycle(5).edges() {
            assert_ne!(col[u], col[v]);
        }
        assert!(is_c_colorable(&Graph::empty(0), 0).is_some());
        assert!(is_c_colorable(&Graph::empty(1), 0).is_none());
    }

    #[test]
    fn cliques_through_vertex() {
        let k4 = Graph::complete(4);
        let cl = maximal_cliques_containing(&k4, 2, 10).unwrap();
        assert_eq!(cl, vec![VertexSet::full(4)]);
        assert_eq!(maximal_cliques_containing(&Graph::path(3), 1, 10).unwrap().len(), 2);
        assert_eq!(maximal_cliques_containing(&Graph::star(3), 0, 10).unwrap().len(), 3);
        assert!(matches!(
            maximal_cliques_containing(&Graph::star(3), 0, 2),
            Err(Error::CliqueCapExceeded { vertex: 0, cap: 2 })
        ));
        // Isolated vertex lies in exactly the clique {v}.
        let cl = maximal_cliques_containing(&Graph::empty(3), 1, 1).unwrap();
        assert_eq!(cl[0].to_vec(), vec![1]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn weight_overflow_is_rejected() {
        let g = Graph::empty(2);
        assert!(matches!(
            WeightedInstance::new(g, vec![u64::MAX, 1]),
            Err(Error::WeightOverflow)
        ));
    }

    #[test]
    fn solution_validation() {
        let inst = WeightedInstance::new(Graph::path(3), vec![3, 4, 3]).unwrap();
        let ok = Solution::from_set(&inst, set(3, &[0, 2]));
        assert_eq!(ok.weight, 6);
        ok.validate_independent(&inst).unwrap();
        let bad = Solution::from_set(&inst, set(3, &[0, 1]));
        assert!(bad.validate_independent(&inst).is_err());
        let mut wrong = ok.clone();
        wrong.weight = 7;
        assert!(wrong.validate_independent(&inst).is_err());
    }
}
