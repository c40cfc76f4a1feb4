//! Rooted tree decompositions: clique trees of chordal graphs, validation,
//! binary normalization for the dynamic program, and a line-oriented text
//! form.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::graph::{independence_number, Graph, Vertex, VertexSet};
use crate::recognition::{verify_peo, EliminationOrdering};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl TreeDecomposition {
    /// Builds a rooted tree from bags and parent pointers. Exactly one bag
    /// must be parentless and every bag must reach it. Bags are sorted and
    /// deduplicated.
    pub fn new(bags: Vec<Vec<Vertex>>, parent: Vec<Option<usize>>) -> Result<Self> {
        if bags.is_empty() {
            return Err(Error::invalid("a tree decomposition needs at least one bag"));
        }
        if bags.len() != parent.len() {
            return Err(Error::invalid("bag and parent lists differ in length"));
        }
        let k = bags.len();
        let roots: Vec<usize> = (0..k).filter(|&i| parent[i].is_none()).collect();
        let &[root] = roots.as_slice() else {
            return Err(Error::invalid(format!("expected one root bag, found {}", roots.len())));
        };
        let mut children = vec![Vec::new(); k];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= k || p == i {
                    return Err(Error::invalid(format!("bag {i} has invalid parent {p}")));
                }
                children[p].push(i);
            }
        }
        // Every bag must reach the root.
        let mut reached = vec![false; k];
        reached[root] = true;
        let mut stack = vec![root];
        while let Some(b) = stack.pop() {
            for &c in &children[b] {
                reached[c] = true;
                stack.push(c);
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(Error::invalid("parent pointers contain a cycle"));
        }
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Ok(TreeDecomposition {
            bags,
            parent,
            children,
            root,
        })
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn bag(&self, i: usize) -> &[Vertex] {
        &self.bags[i]
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Bags ordered so that every child precedes its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((b, expanded)) = stack.pop() {
            if expanded {
                out.push(b);
            } else {
                stack.push((b, true));
                for &c in self.children[b].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// True when every bag has at most two children and any bag with two
    /// children equals both of them.
    pub fn is_binary_normal(&self) -> bool {
        (0..self.len()).all(|b| match self.children[b].as_slice() {
            [] | [_] => true,
            [y, z] => self.bags[*y] == self.bags[b] && self.bags[*z] == self.bags[b],
            _ => false,
        })
    }

    /// Text form: a `p td <bags> <n>` header, then one
    /// `b <bag> <parent> <vertices…>` line per bag. Bags and vertices are
    /// 1-based; parent 0 marks the root.
    pub fn to_text(&self, n: usize) -> String {
        let mut s = format!("p td {} {}\n", self.len(), n);
        for (i, bag) in self.bags.iter().enumerate() {
            let _ = write!(s, "b {} {}", i + 1, self.parent[i].map_or(0, |p| p + 1));
            for v in bag {
                let _ = write!(s, " {}", v + 1);
            }
            s.push('\n');
        }
        s
    }

    /// Parses [`TreeDecomposition::to_text`] output; returns the
    /// decomposition and the declared vertex count.
    pub fn from_text(text: &str) -> Result<(Self, usize)> {
        let mut header = None;
        let mut rows: Vec<Option<(Option<usize>, Vec<Vertex>)>> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let err = |m: &str| Error::Parse {
                line: lineno,
                message: m.to_string(),
            };
            let mut tok = line.split_whitespace();
            let nums = |tok: std::str::SplitWhitespace| -> Result<Vec<usize>> {
                tok.map(|t| t.parse::<usize>().map_err(|_| err(&format!("bad number {t:?}"))))
                    .collect()
            };
            match tok.next() {
                None | Some("c") => {}
                Some("p") => {
                    if tok.next() != Some("td") {
                        return Err(err("expected `p td <bags> <n>`"));
                    }
                    let v = nums(tok)?;
                    let &[k, n] = v.as_slice() else {
                        return Err(err("expected `p td <bags> <n>`"));
                    };
                    header = Some(n);
                    rows = vec![None; k];
                }
                Some("b") => {
                    let n = header.ok_or_else(|| err("bag before header"))?;
                    let v = nums(tok)?;
                    if v.len() < 2 || v[0] == 0 || v[0] > rows.len() || v[1] > rows.len() {
                        return Err(err("bad bag line"));
                    }
                    if v[2..].iter().any(|&x| x == 0 || x > n) {
                        return Err(err("vertex out of range"));
                    }
                    let verts = v[2..].iter().map(|x| x - 1).collect();
                    let parent = (v[1] != 0).then(|| v[1] - 1);
                    if rows[v[0] - 1].replace((parent, verts)).is_some() {
                        return Err(err("duplicate bag id"));
                    }
                }
                Some(other) => return Err(err(&format!("unknown line type {other:?}"))),
            }
        }
        let n = header.ok_or(Error::Parse {
            line: 0,
            message: "missing header".into(),
        })?;
        let mut bags = Vec::with_capacity(rows.len());
        let mut parent = Vec::with_capacity(rows.len());
        for (i, r) in rows.into_iter().enumerate() {
            let (p, b) = r.ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("bag {} missing", i + 1),
            })?;
            parent.push(p);
            bags.push(b);
        }
        Ok((TreeDecomposition::new(bags, parent)?, n))
    }
}

/// A decomposition in which every bag with two children equals both of them
/// and no bag has more than two children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedTreeDecomposition(TreeDecomposition);

impl NormalizedTreeDecomposition {
    pub fn into_inner(self) -> TreeDecomposition {
        self.0
    }
}

impl Deref for NormalizedTreeDecomposition {
    type Target = TreeDecomposition;

    fn deref(&self) -> &TreeDecomposition {
        &self.0
    }
}

fn is_sorted_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Contracts every tree edge whose one endpoint bag is contained in the other,
/// keeping the larger bag. `root` must be the parentless bag.
fn merge_subsumed(mut bags: Vec<Vec<Vertex>>, mut parent: Vec<Option<usize>>, root: usize) -> TreeDecomposition {
    let k = bags.len();
    let mut alive = vec![true; k];
    loop {
        let mut changed = false;
        let order = {
            let td = TreeDecomposition::new(
                (0..k).map(|i| if alive[i] { bags[i].clone() } else { Vec::new() }).collect(),
                (0..k)
                    .map(|i| if alive[i] { parent[i] } else if i == root { None } else { Some(root) })
                    .collect(),
            )
            .expect("intermediate tree is valid");
            td.post_order()
        };
        for c in order {
            if !alive[c] {
                continue;
            }
            let Some(p) = parent[c] else { continue };
            if is_sorted_subset(&bags[c], &bags[p]) {
                // Child absorbed into parent.
            } else if is_sorted_subset(&bags[p], &bags[c]) {
                bags[p] = std::mem::take(&mut bags[c]);
            } else {
                continue;
            }
            alive[c] = false;
            for q in parent.iter_mut() {
                if *q == Some(c) {
                    *q = Some(p);
                }
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let mut index = vec![usize::MAX; k];
    let mut out_bags = Vec::new();
    for i in 0..k {
        if alive[i] {
            index[i] = out_bags.len();
            out_bags.push(std::mem::take(&mut bags[i]));
        }
    }
    let out_parent = (0..k)
        .filter(|&i| alive[i])
        .map(|i| parent[i].map(|p| index[p]))
        .collect();
    TreeDecomposition::new(out_bags, out_parent).expect("contraction keeps a tree")
}

/// Builds a decomposition from an arbitrary elimination order by simulating
/// elimination with fill-in: bag(v) is v plus its remaining neighbors, and its
/// parent is the bag of the first of those neighbors to be eliminated.
/// Subsumed bags are merged. Root is the bag of the last vertex.
pub fn from_elimination_order(g: &Graph, ord: &EliminationOrdering) -> Result<TreeDecomposition> {
    let n = g.n();
    if ord.len() != n {
        return Err(Error::invalid("ordering length differs from vertex count"));
    }
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], vec![None]);
    }
    let pos = ord.positions();
    let mut adj: Vec<HashSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = vec![Vec::new(); n];
    let mut parent = vec![None; n];
    for &v in ord.as_slice() {
        let later: Vec<Vertex> = adj[v].iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        parent[pos[v]] = later.iter().map(|&u| pos[u]).min();
        let mut bag = later;
        bag.push(v);
        bags[pos[v]] = bag;
    }
    let root = n - 1;
    // Join the roots of the other components under the global root.
    for (i, p) in parent.iter_mut().enumerate() {
        if p.is_none() && i != root {
            *p = Some(root);
        }
    }
    for b in &mut bags {
        b.sort_unstable();
    }
    Ok(merge_subsumed(bags, parent, root))
}

/// Clique tree of a chordal graph from a perfect elimination ordering:
/// bag(v) = {v} ∪ later neighbors, parent = bag of the earliest later
/// neighbor, subsumed bags merged, rooted at the bag of the last vertex.
pub fn clique_tree_from_peo(g: &Graph, peo: &EliminationOrdering) -> Result<TreeDecomposition> {
    if !verify_peo(g, peo)? {
        return Err(Error::invalid("ordering is not a perfect elimination ordering"));
    }
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], vec![None]);
    }
    let pos = peo.positions();
    let mut bags = vec![Vec::new(); n];
    let mut parent = vec![None; n];
    for &v in peo.as_slice() {
        let mut bag: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        parent[pos[v]] = bag.iter().map(|&u| pos[u]).min();
        bag.push(v);
        bag.sort_unstable();
        bags[pos[v]] = bag;
    }
    let root = n - 1;
    for (i, p) in parent.iter_mut().enumerate() {
        if p.is_none() && i != root {
            *p = Some(root);
        }
    }
    Ok(merge_subsumed(bags, parent, root))
}

/// Checks vertex coverage, edge coverage, and that the bags containing any
/// vertex form a connected subtree.
pub fn verify_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> bool {
    let n = g.n();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags().iter().enumerate() {
        for &v in bag {
            if v >= n {
                return false;
            }
            holders[v].push(i);
        }
    }
    if holders.iter().any(|h| h.is_empty()) {
        return false;
    }
    for (u, v) in g.edges() {
        let (a, b) = if holders[u].len() <= holders[v].len() { (u, v) } else { (v, u) };
        if !holders[a].iter().any(|&i| td.bag(i).binary_search(&b).is_ok()) {
            return false;
        }
    }
    // Connected iff exactly one holder has no holding parent.
    holders.iter().enumerate().all(|(v, h)| {
        h.iter()
            .filter(|&&i| td.parent(i).is_none_or(|p| td.bag(p).binary_search(&v).is_err()))
            .count()
            == 1
    })
}

/// Rewrites `td` so that each bag has at most two children and a bag with two
/// children equals both: a bag X with several children (or two unequal ones)
/// gets two fresh copies X1, X2 as its only children; X1 takes the first
/// original child and X2 the rest, and X2 is processed again.
pub fn normalize_binary(g: &Graph, td: &TreeDecomposition) -> Result<NormalizedTreeDecomposition> {
    if !verify_tree_decomposition(g, td) {
        return Err(Error::invalid("not a valid tree decomposition of the graph"));
    }
    if td.is_binary_normal() {
        return Ok(NormalizedTreeDecomposition(td.clone()));
    }
    let mut bags = td.bags().to_vec();
    let mut parent: Vec<Option<usize>> = (0..td.len()).map(|i| td.parent(i)).collect();
    let mut children: Vec<Vec<usize>> = (0..td.len()).map(|i| td.children(i).to_vec()).collect();
    let mut work: Vec<usize> = (0..td.len()).collect();
    while let Some(x) = work.pop() {
        let kids = &children[x];
        let fine = match kids.as_slice() {
            [] | [_] => true,
            [y, z] => bags[*y] == bags[x] && bags[*z] == bags[x],
            _ => false,
        };
        if fine {
            continue;
        }
        let kids = std::mem::take(&mut children[x]);
        let x1 = bags.len();
        let x2 = x1 + 1;
        bags.push(bags[x].clone());
        bags.push(bags[x].clone());
        parent.push(Some(x));
        parent.push(Some(x));
        children.push(vec![kids[0]]);
        children.push(kids[1..].to_vec());
        parent[kids[0]] = Some(x1);
        for &c in &kids[1..] {
            parent[c] = Some(x2);
        }
        children[x] = vec![x1, x2];
        work.push(x2);
    }
    let out = TreeDecomposition::new(bags, parent)?;
    debug_assert!(out.is_binary_normal());
    Ok(NormalizedTreeDecomposition(out))
}

/// Largest independence number of any bag's induced subgraph.
pub fn bag_alpha(g: &Graph, td: &TreeDecomposition) -> usize {
    td.bags()
        .iter()
        .map(|bag| independence_number(g, &VertexSet::from_vertices(g.n(), bag.iter().copied())))
        .max()
        .unwrap_or(0)
}
