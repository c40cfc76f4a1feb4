//! Color-coding reductions.
//!
//! * [`mwccs_from_mwis`] turns a bounded maximum-weight independent set
//!   solver into a solver for the largest-weight c-colorable induced subgraph
//!   with at most ℓ vertices: color the vertices with c colors, solve each
//!   color class separately with a size budget, and combine the budgets.
//! * [`mwis_cluster_chordal`] solves bounded MWIS on a graph whose edges split
//!   into a cluster graph and a chordal graph: give each cluster one color and
//!   run the colorful DP on the chordal part.
//! * [`mwccs_cluster_chordal`] composes the two.
//!
//! Coloring families come in two modes. Exhaustive mode is exact. For the
//! vertex colorings it walks all colorings up to renaming of colors
//! (restricted growth strings); for the cluster colorings it takes every set
//! of at most ℓ clusters, colors it injectively and drops the other clusters.
//! Randomized mode draws uniform colorings from ChaCha8 seeded with the
//! 64-bit seed, one stream per trial. When the exact family is no larger than
//! the number of random trials it would run, randomized mode uses the exact
//! family instead.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::colorful_dp::{PreparedDecomposition, MAX_COLORS};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Solution, VertexSet, Weight, WeightedInstance};
use crate::recognition::{is_chordal, ClusterChordalWitness};
use crate::tree_decomp::clique_tree_from_peo;

/// Default limit on the size of an exhaustive coloring family.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColoringMode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColoringFamilySpec {
    pub mode: ColoringMode,
    /// Failure probability, used in randomized mode only.
    pub epsilon: f64,
    pub seed: u64,
    /// Upper bound on the number of random trials.
    pub trial_cap: Option<u64>,
    /// Largest exhaustive family accepted before refusing.
    pub exhaustive_cap: u64,
    /// Worker threads for the trial loop. The result does not depend on it.
    pub jobs: usize,
}

impl ColoringFamilySpec {
    pub fn exhaustive() -> Self {
        ColoringFamilySpec {
            mode: ColoringMode::Exhaustive,
            epsilon: 0.01,
            seed: 0,
            trial_cap: None,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            jobs: 1,
        }
    }

    pub fn randomized(epsilon: f64, seed: u64) -> Self {
        ColoringFamilySpec {
            mode: ColoringMode::Randomized,
            epsilon,
            seed,
            ..ColoringFamilySpec::exhaustive()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == ColoringMode::Randomized && !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {}", self.epsilon)));
        }
        if self.trial_cap == Some(0) {
            return Err(Error::invalid("trial cap must be positive"));
        }
        Ok(())
    }

    fn with_epsilon(&self, epsilon: f64) -> Self {
        ColoringFamilySpec {
            epsilon,
            ..self.clone()
        }
    }

    /// ⌈base^ell · ln(1/ε)⌉, at least one, clipped by the trial cap.
    fn random_trials(&self, base: f64, ell: usize) -> u64 {
        let t = (base.powi(ell as i32) * (1.0 / self.epsilon).ln()).ceil();
        let t = if t.is_finite() && t < u64::MAX as f64 { (t as u64).max(1) } else { u64::MAX };
        self.trial_cap.map_or(t, |cap| t.min(cap))
    }
}

/// How a search ended up being run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunReport {
    /// Colorings evaluated.
    pub trials: u64,
    /// Whether the family was exact.
    pub exhaustive: bool,
}

/// Budgets (ℓ_1, …, ℓ_c) with ℓ_i ≥ 0 and Σ ℓ_i ≤ ℓ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SizePartition {
    pub parts: Vec<usize>,
}

impl SizePartition {
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// All size partitions, ordered by total and then lexicographically
/// descending: for ℓ = 2, c = 2 the order is (0,0), (1,0), (0,1), (2,0),
/// (1,1), (0,2).
pub fn enumerate_size_partitions(ell: usize, c: usize) -> impl Iterator<Item = SizePartition> {
    let mut cur: Option<(usize, Vec<usize>)> = Some((0, vec![0; c]));
    std::iter::from_fn(move || {
        let (s, parts) = cur.take()?;
        let out = SizePartition { parts: parts.clone() };
        cur = next_composition(s, parts, ell);
        Some(out)
    })
}

fn next_composition(s: usize, mut parts: Vec<usize>, ell: usize) -> Option<(usize, Vec<usize>)> {
    let c = parts.len();
    if c > 1 {
        if let Some(i) = (0..c - 1).rev().find(|&i| parts[i] > 0) {
            let rest: usize = parts[i + 1..].iter().sum();
            parts[i] -= 1;
            parts[i + 1] = rest + 1;
            for p in &mut parts[i + 2..] {
                *p = 0;
            }
            return Some((s, parts));
        }
    }
    if s == ell || c == 0 {
        return None;
    }
    let mut first = vec![0; c];
    first[0] = s + 1;
    Some((s + 1, first))
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

/// Number of ways to split `n` labeled items into at most `k` unlabeled
/// nonempty blocks, saturating at `u64::MAX`.
fn set_partition_count(n: usize, k: usize) -> u64 {
    let k = k.min(n);
    // Stirling numbers of the second kind, row by row.
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = (j as u128).saturating_mul(row[j]).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    let total = row.iter().fold(0u128, |a, &b| a.saturating_add(b));
    total.min(u64::MAX as u128) as u64
}

/// Restricted growth strings of length `n` with values below `k`: every
/// coloring of `n` items with at most `k` colors, once per renaming.
fn restricted_growth_strings(n: usize, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let mut cur = if n == 0 || k > 0 { Some(vec![0u32; n]) } else { None };
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        let mut prefix_max = vec![0u32; n];
        let mut m = 0;
        for i in 0..n {
            m = m.max(next[i]);
            prefix_max[i] = m;
        }
        for i in (1..n).rev() {
            if (next[i] as usize) + 1 < k && next[i] <= prefix_max[i - 1] {
                next[i] += 1;
                for x in &mut next[i + 1..] {
                    *x = 0;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Combinations of `k` out of `0..n`, lexicographic.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = if k <= n { Some((0..k).collect::<Vec<_>>()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        if let Some(i) = (0..k).rev().find(|&i| next[i] < n - k + i) {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            cur = Some(next);
        }
        Some(out)
    })
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn subset_seed(seed: u64, subset: &VertexSet, bound: usize) -> u64 {
    let mut h = splitmix(seed ^ bound as u64);
    for &b in subset.blocks() {
        h = splitmix(h ^ b as u64);
    }
    h
}

fn random_coloring(seed: u64, trial: u64, n: usize, k: usize) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..n).map(|_| rng.gen_range(0..k as u32)).collect()
}

/// A family of colorings of `n` items, addressed by trial index.
enum Family {
    Growth { n: usize, k: usize, count: u64 },
    Subsets { n: usize, k: usize, count: u64 },
    Random { n: usize, k: usize, seed: u64, count: u64 },
}

impl Family {
    fn count(&self) -> u64 {
        match *self {
            Family::Growth { count, .. } | Family::Subsets { count, .. } | Family::Random { count, .. } => count,
        }
    }

    fn exhaustive(&self) -> bool {
        !matches!(self, Family::Random { .. })
    }

    /// Calls `f(trial, coloring)` for the trials with `trial % stride == offset`.
    /// Subset colorings use color `k` for items left out.
    fn for_each(&self, offset: u64, stride: u64, f: &mut dyn FnMut(u64, &[u32]) -> Result<()>) -> Result<()> {
        let mine = |t: u64| t % stride == offset;
        match *self {
            Family::Growth { n, k, .. } => {
                for (t, col) in restricted_growth_strings(n, k).enumerate() {
                    if mine(t as u64) {
                        f(t as u64, &col)?;
                    }
                }
            }
            Family::Subsets { n, k, .. } => {
                for (t, chosen) in combinations(n, k).enumerate() {
                    if mine(t as u64) {
                        let mut col = vec![k as u32; n];
                        for (j, &x) in chosen.iter().enumerate() {
                            col[x] = j as u32;
                        }
                        f(t as u64, &col)?;
                    }
                }
            }
            Family::Random { n, k, seed, count } => {
                let mut t = offset;
                while t < count {
                    f(t, &random_coloring(seed, t, n, k))?;
                    t += stride;
                }
            }
        }
        Ok(())
    }
}

/// Runs `eval` on every coloring of the family and keeps the best solution:
/// highest weight, then lexicographically smallest vertex set, then earliest
/// trial. Each worker gets its own state from `init`.
fn search<S, I, E>(family: &Family, jobs: usize, init: I, eval: E) -> Result<Option<Solution>>
where
    I: Fn() -> S + Sync,
    E: Fn(&mut S, &[u32]) -> Result<Option<Solution>> + Sync,
{
    let run_chunk = |offset: u64, stride: u64| -> Result<Option<(Solution, u64)>> {
        let mut state = init();
        let mut best: Option<(Solution, u64)> = None;
        family.for_each(offset, stride, &mut |t, col| {
            if let Some(sol) = eval(&mut state, col)? {
                if best.as_ref().is_none_or(|(b, _)| sol.better_than(b)) {
                    best = Some((sol, t));
                }
            }
            Ok(())
        })?;
        Ok(best)
    };
    let jobs = jobs.max(1) as u64;
    let chunks: Vec<Option<(Solution, u64)>> = if jobs == 1 {
        vec![run_chunk(0, 1)?]
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..jobs)
                .into_par_iter()
                .map(|off| run_chunk(off, jobs))
                .collect::<Result<Vec<_>>>()
        })?
    };
    let best = chunks.into_iter().flatten().reduce(|a, b| {
        let a_wins = a.0.better_than(&b.0) || (!b.0.better_than(&a.0) && a.1 <= b.1);
        if a_wins {
            a
        } else {
            b
        }
    });
    Ok(best.map(|(s, _)| s))
}

/// A solver for maximum-weight independent sets with at most `bound`
/// vertices, restricted to `subset`.
pub trait BoundedMwisSolver: Sync {
    fn solve(&self, inst: &WeightedInstance, subset: &VertexSet, bound: usize) -> Result<Solution>;
}

impl<F> BoundedMwisSolver for F
where
    F: Fn(&WeightedInstance, &VertexSet, usize) -> Result<Solution> + Sync,
{
    fn solve(&self, inst: &WeightedInstance, subset: &VertexSet, bound: usize) -> Result<Solution> {
        self(inst, subset, bound)
    }
}

/// Maximum-weight c-colorable induced subgraph with at most `ell` vertices,
/// via a bounded MWIS solver on color classes.
pub fn mwccs_from_mwis(
    inst: &WeightedInstance,
    c: usize,
    ell: usize,
    solver: &dyn BoundedMwisSolver,
    spec: &ColoringFamilySpec,
) -> Result<Solution> {
    mwccs_from_mwis_report(inst, c, ell, solver, spec).map(|(s, _)| s)
}

pub fn mwccs_from_mwis_report(
    inst: &WeightedInstance,
    c: usize,
    ell: usize,
    solver: &dyn BoundedMwisSolver,
    spec: &ColoringFamilySpec,
) -> Result<(Solution, RunReport)> {
    spec.validate()?;
    if c == 0 {
        return Err(Error::invalid("the number of colors must be at least 1"));
    }
    let n = inst.n();
    let exact = set_partition_count(n, c);
    let family = match spec.mode {
        ColoringMode::Exhaustive => {
            if exact > spec.exhaustive_cap {
                return Err(Error::cap(
                    "exhaustive vertex colorings (use randomized mode)",
                    spec.exhaustive_cap,
                    exact,
                ));
            }
            Family::Growth { n, k: c, count: exact }
        }
        ColoringMode::Randomized => {
            let trials = spec.random_trials(c as f64, ell.min(n));
            if exact <= trials {
                Family::Growth { n, k: c, count: exact }
            } else {
                Family::Random {
                    n,
                    k: c,
                    seed: spec.seed,
                    count: trials,
                }
            }
        }
    };

    type Memo = HashMap<VertexSet, Vec<Option<Solution>>>;
    let eval = |memo: &mut Memo, col: &[u32]| -> Result<Option<Solution>> {
        let mut classes: Vec<VertexSet> = vec![VertexSet::new(n); c];
        for (v, &k) in col.iter().enumerate() {
            classes[k as usize].insert(v);
        }
        // Budget split over nonempty classes: best[t] is the best total weight
        // with combined budget t; choice[i][t] is the budget given to class i.
        let mut best: Vec<Weight> = vec![0; ell + 1];
        let mut used: Vec<(usize, Vec<Solution>, Vec<usize>)> = Vec::new();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                continue;
            }
            let top = ell.min(class.len());
            let entry = memo.entry(class.clone()).or_insert_with(|| vec![None; top + 1]);
            let mut sols = Vec::with_capacity(top + 1);
            for (b, slot) in entry.iter_mut().enumerate() {
                if slot.is_none() {
                    let s = solver.solve(inst, class, b)?;
                    check_bounded(inst, class, b, &s)?;
                    *slot = Some(s);
                }
                sols.push(slot.clone().expect("filled above"));
            }
            let mut next = vec![0; ell + 1];
            let mut choice = vec![0; ell + 1];
            for t in 0..=ell {
                for b in 0..=top.min(t) {
                    let v = best[t - b] + sols[b].weight;
                    if b == 0 || v > next[t] {
                        next[t] = v;
                        choice[t] = b;
                    }
                }
            }
            best = next;
            used.push((i, sols, choice));
        }
        let mut vertices = VertexSet::new(n);
        let mut assignment = std::collections::BTreeMap::new();
        let mut t = ell;
        for (i, sols, choice) in used.iter().rev() {
            let b = choice[t];
            for v in sols[b].vertices.iter() {
                vertices.insert(v);
                assignment.insert(v, *i as u32 + 1);
            }
            t -= b;
        }
        let mut sol = Solution::from_set(inst, vertices);
        sol.color_assignment = Some(assignment);
        Ok(Some(sol))
    };
    let best = search(&family, spec.jobs, Memo::new, eval)?.expect("family is nonempty");
    best.validate_colorable(inst, c as u32, ell)?;
    Ok((
        best,
        RunReport {
            trials: family.count(),
            exhaustive: family.exhaustive(),
        },
    ))
}

fn check_bounded(inst: &WeightedInstance, subset: &VertexSet, bound: usize, s: &Solution) -> Result<()> {
    s.validate_independent(inst)?;
    if !s.vertices.is_subset(subset) || s.len() > bound {
        return Err(Error::Validation(format!(
            "inner solver returned {} vertices outside the subset or above the bound {bound}",
            s.len()
        )));
    }
    Ok(())
}

/// Bounded MWIS on a cluster⋈chordal instance, with the decomposition witness
/// built once.
pub struct ClusterChordalSolver {
    witness: ClusterChordalWitness,
    spec: ColoringFamilySpec,
}

impl ClusterChordalSolver {
    pub fn new(inst: &WeightedInstance, spec: &ColoringFamilySpec) -> Result<Self> {
        spec.validate()?;
        Ok(ClusterChordalSolver {
            witness: ClusterChordalWitness::from_instance(inst)?,
            spec: spec.clone(),
        })
    }

    pub fn with_witness(witness: ClusterChordalWitness, spec: &ColoringFamilySpec) -> Result<Self> {
        spec.validate()?;
        Ok(ClusterChordalSolver {
            witness,
            spec: spec.clone(),
        })
    }

    pub fn witness(&self) -> &ClusterChordalWitness {
        &self.witness
    }

    /// Best independent set inside `subset` with at most `bound` vertices.
    pub fn solve_subset(&self, inst: &WeightedInstance, subset: &VertexSet, bound: usize) -> Result<(Solution, RunReport)> {
        let g = inst.graph();
        g.check_set(subset)?;
        if self.witness.cluster_of().len() != g.n() {
            return Err(Error::invalid("witness does not match the instance"));
        }
        let empty = || {
            (
                Solution::empty(g.n()),
                RunReport {
                    trials: 0,
                    exhaustive: true,
                },
            )
        };
        if bound == 0 || subset.is_empty() {
            return Ok(empty());
        }
        let (h, map) = induced_subgraph(self.witness.chordal(), subset)?;
        let peo = is_chordal(&h).ok_or_else(|| Error::Validation("chordal part lost chordality".into()))?;
        let td = clique_tree_from_peo(&h, &peo)?;
        let prepared = PreparedDecomposition::new(&h, &td, 1)?;
        let weights: Vec<Weight> = map.iter().map(|&v| inst.weight(v)).collect();

        let mut label: HashMap<usize, usize> = HashMap::new();
        let local_cluster: Vec<usize> = map
            .iter()
            .map(|&v| {
                let next = label.len();
                *label.entry(self.witness.cluster_of()[v]).or_insert(next)
            })
            .collect();
        let d = label.len();

        let (family, colors) = if d <= bound {
            (Family::Growth { n: 0, k: 1, count: 1 }, d)
        } else {
            let exact = binomial(d as u64, bound as u64);
            let family = match self.spec.mode {
                ColoringMode::Exhaustive => {
                    if exact > self.spec.exhaustive_cap {
                        return Err(Error::cap(
                            "exhaustive cluster colorings (use randomized mode)",
                            self.spec.exhaustive_cap,
                            exact,
                        ));
                    }
                    Family::Subsets { n: d, k: bound, count: exact }
                }
                ColoringMode::Randomized => {
                    let trials = self.spec.random_trials(std::f64::consts::E, bound);
                    if exact <= trials {
                        Family::Subsets { n: d, k: bound, count: exact }
                    } else {
                        Family::Random {
                            n: d,
                            k: bound,
                            seed: subset_seed(self.spec.seed, subset, bound),
                            count: trials,
                        }
                    }
                }
            };
            (family, bound)
        };
        if colors > MAX_COLORS {
            return Err(Error::cap("colors in the colorful DP", MAX_COLORS as u64, colors as u64));
        }

        let eval = |_: &mut (), col: &[u32]| -> Result<Option<Solution>> {
            let masks: Vec<u32> = local_cluster
                .iter()
                .map(|&k| if d <= bound { 1u32 << k } else { 1u32 << col[k] })
                .collect();
            let (local, _, _) = prepared.solve(&h, &weights, &masks, colors);
            let set = VertexSet::from_vertices(g.n(), local.iter().map(|v| map[v]));
            Ok(Some(Solution::from_set(inst, set)))
        };
        let best = search(&family, self.spec.jobs, || (), eval)?.expect("family is nonempty");
        check_bounded(inst, subset, bound, &best)?;
        Ok((
            best,
            RunReport {
                trials: family.count(),
                exhaustive: family.exhaustive(),
            },
        ))
    }
}

impl BoundedMwisSolver for ClusterChordalSolver {
    fn solve(&self, inst: &WeightedInstance, subset: &VertexSet, bound: usize) -> Result<Solution> {
        self.solve_subset(inst, subset, bound).map(|(s, _)| s)
    }
}

/// Maximum-weight independent set with at most `ell` vertices of a
/// cluster⋈chordal instance. The instance must carry its decomposition.
pub fn mwis_cluster_chordal(inst: &WeightedInstance, ell: usize, spec: &ColoringFamilySpec) -> Result<Solution> {
    mwis_cluster_chordal_report(inst, ell, spec).map(|(s, _)| s)
}

pub fn mwis_cluster_chordal_report(
    inst: &WeightedInstance,
    ell: usize,
    spec: &ColoringFamilySpec,
) -> Result<(Solution, RunReport)> {
    let solver = ClusterChordalSolver::new(inst, spec)?;
    solver.solve_subset(inst, &VertexSet::full(inst.n()), ell)
}

/// Maximum-weight c-colorable induced subgraph with at most `ell` vertices of
/// a cluster⋈chordal instance, with an explicit proper coloring. In
/// randomized mode the error budget is split evenly between the vertex
/// colorings and the c inner solves.
pub fn mwccs_cluster_chordal(
    inst: &WeightedInstance,
    c: usize,
    ell: usize,
    spec: &ColoringFamilySpec,
) -> Result<Solution> {
    mwccs_cluster_chordal_report(inst, c, ell, spec).map(|(s, _)| s)
}

pub fn mwccs_cluster_chordal_report(
    inst: &WeightedInstance,
    c: usize,
    ell: usize,
    spec: &ColoringFamilySpec,
) -> Result<(Solution, RunReport)> {
    let witness = ClusterChordalWitness::from_instance(inst)?;
    mwccs_with_witness(inst, witness, c, ell, spec)
}

/// As [`mwccs_cluster_chordal`], with the decomposition supplied separately.
pub fn mwccs_with_witness(
    inst: &WeightedInstance,
    witness: ClusterChordalWitness,
    c: usize,
    ell: usize,
    spec: &ColoringFamilySpec,
) -> Result<(Solution, RunReport)> {
    spec.validate()?;
    if c == 0 {
        return Err(Error::invalid("the number of colors must be at least 1"));
    }
    let inner_spec = ColoringFamilySpec {
        jobs: 1,
        ..spec.with_epsilon(spec.epsilon / (2.0 * c as f64))
    };
    let inner = ClusterChordalSolver::with_witness(witness, &inner_spec)?;
    mwccs_from_mwis_report(inst, c, ell, &inner, &spec.with_epsilon(spec.epsilon / 2.0))
}
