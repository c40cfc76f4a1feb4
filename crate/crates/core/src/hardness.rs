//! Reductions used to show hardness: the multicolored clique to independent
//! set gadget construction with its certificates, and the universal-vertex
//! constructions for recognizing inductive k-independent and K_{1,k}-free
//! graphs.
//!
//! In the gadget graph, for classes i, j ∈ {1..k} (1-based, as in the names)
//! there is a selection clique U_{i→j} with one vertex u^{(p)}_{i→j} per
//! vertex v_i^{(p)} of class i, and for i < j a verification clique E_{i<j}
//! with one vertex e^{p,q} per edge {v_i^{(p)}, v_j^{(q)}}. The graph has an
//! independent set of size k² + k(k−1)/2 exactly when the input has a
//! multicolored clique.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::{brute_multicolored_clique, brute_mwis, MWIS_MAX_N};
use crate::recognition::{is_k_mino, two_simplicial_ordering};
use crate::WeightedInstance;

/// A graph with its vertex set split into k independent classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticoloredCliqueInstance {
    graph: Graph,
    classes: Vec<Vec<Vertex>>,
}

impl MulticoloredCliqueInstance {
    /// Classes are sorted; together they must cover every vertex once and
    /// each must be independent.
    pub fn new(graph: Graph, mut classes: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = graph.n();
        let mut seen = vec![false; n];
        for class in &mut classes {
            class.sort_unstable();
            for &v in class.iter() {
                graph.check_vertex(v)?;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::invalid(format!("vertex {v} appears in two classes")));
                }
            }
            for (a, &u) in class.iter().enumerate() {
                if let Some(&w) = class[a + 1..].iter().find(|&&w| graph.has_edge(u, w)) {
                    return Err(Error::invalid(format!("class contains the edge ({u}, {w})")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::invalid(format!("vertex {v} is in no class")));
        }
        Ok(MulticoloredCliqueInstance { graph, classes })
    }

    /// Builds the instance from a 1-based class label per vertex.
    pub fn from_labels(graph: Graph, labels: &[u32]) -> Result<Self> {
        if labels.len() != graph.n() {
            return Err(Error::invalid("one class label per vertex is required"));
        }
        let k = labels.iter().copied().max().unwrap_or(0) as usize;
        if labels.contains(&0) {
            return Err(Error::invalid("class labels start at 1"));
        }
        let mut classes = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            classes[l as usize - 1].push(v);
        }
        MulticoloredCliqueInstance::new(graph, classes)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// 1-based class label per vertex.
    pub fn labels(&self) -> Vec<u32> {
        let mut out = vec![0; self.graph.n()];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class {
                out[v] = i as u32 + 1;
            }
        }
        out
    }

    /// The p-th vertex (1-based) of class i (1-based).
    fn member(&self, i: usize, p: usize) -> Vertex {
        self.classes[i - 1][p - 1]
    }
}

/// Structured name of a gadget vertex, all indices 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetName {
    /// u^{(p)}_{i→j}
    Select { i: usize, j: usize, p: usize },
    /// e^{p,q}_{i<j}
    Verify { i: usize, j: usize, p: usize, q: usize },
}

impl std::fmt::Display for GadgetName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            GadgetName::Select { i, j, p } => write!(f, "u {i} {j} {p}"),
            GadgetName::Verify { i, j, p, q } => write!(f, "e {i} {j} {p} {q}"),
        }
    }
}

/// Bidirectional map between gadget vertex ids and names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetIndex {
    k: usize,
    sizes: Vec<usize>,
    names: Vec<GadgetName>,
    ids: HashMap<GadgetName, Vertex>,
}

impl GadgetIndex {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Class sizes n_1, …, n_k.
    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Vertex) -> Option<GadgetName> {
        self.names.get(v).copied()
    }

    pub fn id(&self, name: GadgetName) -> Option<Vertex> {
        self.ids.get(&name).copied()
    }

    pub fn names(&self) -> &[GadgetName] {
        &self.names
    }

    /// The k² selection cliques followed by the k(k−1)/2 verification cliques.
    /// They partition the vertex set.
    pub fn cliques(&self) -> Vec<Vec<Vertex>> {
        let k = self.k;
        let mut out = Vec::new();
        for i in 1..=k {
            for j in 1..=k {
                out.push((1..=self.sizes[i - 1]).filter_map(|p| self.id(GadgetName::Select { i, j, p })).collect());
            }
        }
        for i in 1..=k {
            for j in i + 1..=k {
                let mut clique = Vec::new();
                for p in 1..=self.sizes[i - 1] {
                    for q in 1..=self.sizes[j - 1] {
                        clique.extend(self.id(GadgetName::Verify { i, j, p, q }));
                    }
                }
                out.push(clique);
            }
        }
        out
    }

    /// Sidecar text: one `v <id> <name>` line per vertex, ids 1-based.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "k {}", self.k).unwrap();
        for (v, name) in self.names.iter().enumerate() {
            writeln!(s, "v {} {name}", v + 1).unwrap();
        }
        s
    }
}

fn succ(j: usize, k: usize) -> usize {
    j % k + 1
}

/// Target independent set size k² + k(k−1)/2.
pub fn target_size(k: usize) -> usize {
    k * k + k * (k.saturating_sub(1)) / 2
}

/// Builds the gadget graph, the target size and the vertex names. Vertices
/// are numbered selection vertices first by (i, j, p), then verification
/// vertices by (i, j, p, q).
pub fn construct_mis_instance(mcc: &MulticoloredCliqueInstance) -> Result<(Graph, usize, GadgetIndex)> {
    let k = mcc.k();
    if k < 2 {
        return Err(Error::invalid("the construction needs at least two classes"));
    }
    let sizes: Vec<usize> = mcc.classes().iter().map(Vec::len).collect();
    let mut names = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            for p in 1..=sizes[i - 1] {
                names.push(GadgetName::Select { i, j, p });
            }
        }
    }
    let g = mcc.graph();
    for i in 1..=k {
        for j in i + 1..=k {
            for p in 1..=sizes[i - 1] {
                for q in 1..=sizes[j - 1] {
                    if g.has_edge(mcc.member(i, p), mcc.member(j, q)) {
                        names.push(GadgetName::Verify { i, j, p, q });
                    }
                }
            }
        }
    }
    let ids: HashMap<GadgetName, Vertex> = names.iter().enumerate().map(|(v, &nm)| (nm, v)).collect();
    let sel = |i, j, p| ids[&GadgetName::Select { i, j, p }];

    let mut edges = Vec::new();
    for i in 1..=k {
        let ni = sizes[i - 1];
        for j in 1..=k {
            let l = succ(j, k);
            for p in 1..=ni {
                for q in 1..p {
                    // Inside U_{i→j}.
                    edges.push((sel(i, j, q), sel(i, j, p)));
                    // Toward the next clique U_{i→l}.
                    edges.push((sel(i, j, p), sel(i, l, q)));
                }
            }
        }
    }
    for (v, name) in names.iter().enumerate() {
        let GadgetName::Verify { i, j, p, q } = *name else {
            continue;
        };
        for (w, other) in names.iter().enumerate().skip(v + 1) {
            if let GadgetName::Verify { i: i2, j: j2, .. } = *other {
                if (i2, j2) == (i, j) {
                    edges.push((v, w));
                }
            }
        }
        for p2 in (1..=sizes[i - 1]).filter(|&p2| p2 != p) {
            edges.push((sel(i, j, p2), v));
        }
        for q2 in (1..=sizes[j - 1]).filter(|&q2| q2 != q) {
            edges.push((sel(j, i, q2), v));
        }
    }
    let graph = Graph::from_edges_dedup(names.len(), edges)?;
    Ok((
        graph,
        target_size(k),
        GadgetIndex {
            k,
            sizes,
            names,
            ids,
        },
    ))
}

/// Outcome of checking one gadget graph against the source instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionReport {
    pub has_multicolored_clique: bool,
    pub max_independent_set: usize,
    pub target: usize,
    pub three_mino: bool,
    pub two_simplicial: bool,
}

/// Checks that a multicolored clique exists exactly when the gadget graph has
/// an independent set of the target size, that every vertex lies in at most
/// three maximal cliques, and that a 2-simplicial ordering exists. Any
/// failure is an error.
pub fn verify_construction(mcc: &MulticoloredCliqueInstance, g: &Graph, ell: usize) -> Result<ConstructionReport> {
    if g.n() > MWIS_MAX_N {
        return Err(Error::cap("construction check", MWIS_MAX_N as u64, g.n() as u64));
    }
    let has_clique = brute_multicolored_clique(mcc)?;
    let mis = brute_mwis(&WeightedInstance::unit(g.clone()), None)?.len();
    let report = ConstructionReport {
        has_multicolored_clique: has_clique,
        max_independent_set: mis,
        target: ell,
        three_mino: is_k_mino(g, 3),
        two_simplicial: two_simplicial_ordering(g).is_some(),
    };
    if has_clique != (mis >= ell) {
        return Err(Error::Validation(format!(
            "clique exists: {has_clique}, but the largest independent set has {mis} of {ell} vertices"
        )));
    }
    if !report.three_mino {
        return Err(Error::Validation("gadget graph is not a 3-mino".into()));
    }
    if !report.two_simplicial {
        return Err(Error::Validation("gadget graph has no 2-simplicial ordering".into()));
    }
    Ok(report)
}

/// Three cliques covering the closed neighborhood of the gadget vertex
/// `name`. For a selection vertex u^{(p)}_{i→j}:
/// (i) its own clique from p upward with the lower part of the next clique,
/// (ii) its own clique up to p with the upper part of the previous clique,
/// (iii) the vertex with its verification neighbors (empty for i = j).
/// For a verification vertex of E_{i<j}: the clique E_{i<j}, and the vertex
/// with its neighbors in U_{i→j} and in U_{j→i}.
pub fn clique_cover_certificate(g: &Graph, index: &GadgetIndex, name: GadgetName) -> Result<[VertexSet; 3]> {
    let u = index
        .id(name)
        .ok_or_else(|| Error::invalid(format!("no gadget vertex named {name}")))?;
    let n = g.n();
    let sets = match name {
        GadgetName::Select { i, j, p } => selection_cover(g, index, u, i, j, p),
        GadgetName::Verify { i, j, .. } => {
            let mut own = VertexSet::new(n);
            let mut forward = VertexSet::from_vertices(n, [u]);
            let mut backward = VertexSet::from_vertices(n, [u]);
            own.insert(u);
            for &w in g.neighbors(u) {
                match index.name(w) {
                    Some(GadgetName::Verify { i: a, j: b, .. }) if (a, b) == (i, j) => own.insert(w),
                    Some(GadgetName::Select { i: a, j: b, .. }) if (a, b) == (i, j) => forward.insert(w),
                    Some(GadgetName::Select { i: a, j: b, .. }) if (a, b) == (j, i) => backward.insert(w),
                    _ => {}
                }
            }
            [own, forward, backward]
        }
    };
    let mut covered = VertexSet::new(n);
    for s in &sets {
        if !g.is_clique(&s.to_vec()) {
            return Err(Error::Validation(format!("cover set {s:?} of {name} is not a clique")));
        }
        covered.union_with(s);
    }
    let mut closed = VertexSet::from_vertices(n, g.neighbors(u).iter().copied());
    closed.insert(u);
    if !closed.is_subset(&covered) {
        return Err(Error::Validation(format!("cover sets of {name} miss part of its neighborhood")));
    }
    Ok(sets)
}

fn selection_cover(g: &Graph, index: &GadgetIndex, u: Vertex, i: usize, j: usize, p: usize) -> [VertexSet; 3] {
    let n = g.n();
    let k = index.k();
    let ni = index.class_sizes()[i - 1];
    let sel = |j, q| index.id(GadgetName::Select { i, j, p: q }).expect("selection vertex exists");
    let next = succ(j, k);
    let prev = (1..=k).find(|&l| succ(l, k) == j).expect("predecessor exists");

    let first = VertexSet::from_vertices(n, (p..=ni).map(|q| sel(j, q)).chain((1..p).map(|q| sel(next, q))));
    let second = VertexSet::from_vertices(n, (1..=p).map(|q| sel(j, q)).chain((p + 1..=ni).map(|q| sel(prev, q))));
    let mut third = VertexSet::new(n);
    if i != j {
        let (a, b) = (i.min(j), i.max(j));
        third.insert(u);
        for &w in g.neighbors(u) {
            if matches!(index.name(w), Some(GadgetName::Verify { i: a2, j: b2, .. }) if (a2, b2) == (a, b)) {
                third.insert(w);
            }
        }
    }

    [first, second, third]
}

/// Adds k+1 pairwise nonadjacent vertices, each adjacent to every original
/// vertex. The result is inductive k-independent exactly when the input has
/// no independent set of size k+1.
pub fn gen_indkind_hardness(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let n = g.n();
    let edges = g
        .edges()
        .chain((0..=k).flat_map(|a| (0..n).map(move |v| (v, n + a))));
    Graph::from_edges(n + k + 1, edges)
}

/// Adds one vertex adjacent to every original vertex. The result contains an
/// induced K_{1,k} exactly when the input does or has an independent set of
/// size k.
pub fn gen_k1kfree_hardness(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let n = g.n();
    Graph::from_edges(n + 1, g.edges().chain((0..n).map(|v| (v, n))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::{find_inductive_k_independent_ordering, is_chordal, is_k1k_free};

    fn complete_multipartite(sizes: &[usize]) -> MulticoloredCliqueInstance {
        let mut classes = Vec::new();
        let mut next = 0;
        for &s in sizes {
            classes.push((next..next + s).collect::<Vec<_>>());
            next += s;
        }
        let mut edges = Vec::new();
        for (a, ca) in classes.iter().enumerate() {
            for cb in &classes[a + 1..] {
                for &u in ca {
                    for &v in cb {
                        edges.push((u, v));
                    }
                }
            }
        }
        MulticoloredCliqueInstance::new(Graph::from_edges(next, edges).unwrap(), classes).unwrap()
    }

    #[test]
    fn counts_for_three_classes_of_four() {
        let mcc = complete_multipartite(&[4, 4, 4]);
        let (g, ell, index) = construct_mis_instance(&mcc).unwrap();
        assert_eq!(g.n(), 84);
        assert_eq!(ell, 12);
        let cliques = index.cliques();
        assert_eq!(cliques.len(), 12);
        assert!(cliques.iter().all(|c| g.is_clique(c)));
        assert_eq!(cliques.iter().map(Vec::len).sum::<usize>(), 84);
    }

    #[test]
    fn two_single_vertex_classes() {
        let with = complete_multipartite(&[1, 1]);
        let (g, ell, index) = construct_mis_instance(&with).unwrap();
        assert_eq!((g.n(), ell), (5, 5));
        let r = verify_construction(&with, &g, ell).unwrap();
        assert!(r.has_multicolored_clique && r.max_independent_set == 5);
        for &name in index.names() {
            if let GadgetName::Select { i, j, .. } = name {
                let sets = clique_cover_certificate(&g, &index, name).unwrap();
                assert_eq!(sets[2].is_empty(), i == j);
            }
        }

        let without = MulticoloredCliqueInstance::new(Graph::empty(2), vec![vec![0], vec![1]]).unwrap();
        let (g, ell, _) = construct_mis_instance(&without).unwrap();
        assert_eq!(g.n(), 4);
        let r = verify_construction(&without, &g, ell).unwrap();
        assert!(!r.has_multicolored_clique && r.max_independent_set < 5);
    }

    #[test]
    fn rightmost_vertex_first_set_is_singleton() {
        let mcc = complete_multipartite(&[3, 2]);
        let (g, _, index) = construct_mis_instance(&mcc).unwrap();
        let name = GadgetName::Select { i: 1, j: 2, p: 3 };
        let u = index.id(name).unwrap();
        let sets = clique_cover_certificate(&g, &index, name).unwrap();
        // Once the next clique U_{1->1} is deleted only u remains.
        let mut rest = sets[0].clone();
        for p in 1..=3 {
            rest.remove(index.id(GadgetName::Select { i: 1, j: 1, p }).unwrap());
        }
        assert_eq!(rest.to_vec(), vec![u]);
        assert_eq!(sets[0].len(), 1 + 2);
    }

    #[test]
    fn bad_inputs() {
        let g = Graph::path(2);
        assert!(MulticoloredCliqueInstance::new(g.clone(), vec![vec![0, 1]]).is_err());
        assert!(MulticoloredCliqueInstance::new(g.clone(), vec![vec![0]]).is_err());
        let single = MulticoloredCliqueInstance::new(Graph::empty(1), vec![vec![0]]).unwrap();
        assert!(construct_mis_instance(&single).is_err());
        let mcc = complete_multipartite(&[1, 1]);
        let (g, _, index) = construct_mis_instance(&mcc).unwrap();
        assert!(clique_cover_certificate(&g, &index, GadgetName::Select { i: 3, j: 1, p: 1 }).is_err());
        let e = index.id(GadgetName::Verify { i: 1, j: 2, p: 1, q: 1 }).unwrap();
        let sets = clique_cover_certificate(&g, &index, GadgetName::Verify { i: 1, j: 2, p: 1, q: 1 }).unwrap();
        assert!(sets.iter().all(|s| s.contains(e)));
    }

    #[test]
    fn universal_vertex_reductions() {
        let k3 = Graph::complete(3);
        assert!(is_chordal(&gen_indkind_hardness(&k3, 1).unwrap()).is_some());
        let e3 = Graph::empty(3);
        assert!(find_inductive_k_independent_ordering(&gen_indkind_hardness(&e3, 2).unwrap(), 2).is_none());
        let c5 = Graph::cycle(5);
        assert!(find_inductive_k_independent_ordering(&gen_indkind_hardness(&c5, 2).unwrap(), 2).is_some());

        assert!(is_k1k_free(&gen_k1kfree_hardness(&e3, 3).unwrap(), 3).is_some());
        assert_eq!(gen_k1kfree_hardness(&k3, 2).unwrap(), Graph::complete(4));
        assert!(is_k1k_free(&gen_k1kfree_hardness(&k3, 2).unwrap(), 2).is_none());
        assert!(is_k1k_free(&gen_k1kfree_hardness(&c5, 3).unwrap(), 3).is_none());
        assert!(gen_k1kfree_hardness(&c5, 0).is_err());
    }
}
