//! End-to-end acceptance checks. Each check prints one PASS/FAIL line to
//! stderr (uncaptured) and the test fails if any check fails.

use std::io::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use iki::color_coding::{mwccs_cluster_chordal, ColoringFamilySpec};
use iki::colorful_dp::max_weight_colorful_is;
use iki::generators::{
    overlay_cluster_chordal, random_chordal, random_cluster, random_colors, random_cubic, random_gnp,
    random_multicolored_clique, random_weights,
};
use iki::graph::is_independent;
use iki::hardness::{
    clique_cover_certificate, construct_mis_instance, verify_construction, GadgetName, MulticoloredCliqueInstance,
};
use iki::oracle::{brute_colorful_is, brute_hamiltonian_cycle, brute_has_chordless_cycle, brute_multicolored_clique, brute_mwccs, brute_mwis};
use iki::recognition::{hamiltonicity_via_decomposition, is_chordal, is_k_mino, two_simplicial_ordering};
use iki::tree_decomp::{bag_alpha, clique_tree_from_peo, TreeDecomposition};
use iki::{Graph, VertexSet, WeightedInstance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: u32, name: &str, o: &Outcome) {
    let status = if o.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {id:>2} [{status}] {name}: {}", o.detail);
}

fn colored_chordal(seed: u64, n: usize, max_clique: usize, c: u32, max_w: u64) -> WeightedInstance {
    let g = random_chordal(n, max_clique, seed).unwrap();
    let inst = WeightedInstance::unit(g)
        .with_colors(random_colors(n, c, seed ^ 0x55).unwrap())
        .unwrap();
    random_weights(&inst, max_w, seed ^ 0xaa).unwrap()
}

fn dp_correctness() -> Outcome {
    let started = Instant::now();
    let mut mismatches = 0;
    for seed in 0..500u64 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = r.gen_range(1..=14);
        let c = r.gen_range(1..=4);
        let max_clique = r.gen_range(1..=5);
        let inst = colored_chordal(seed, n, max_clique, c, 100);
        let g = inst.graph();
        let td = clique_tree_from_peo(g, &is_chordal(g).unwrap()).unwrap();
        let dp = max_weight_colorful_is(&inst, &td, 1).unwrap();
        let oracle = brute_colorful_is(&inst).unwrap();
        if dp.weight != oracle.weight {
            mismatches += 1;
        }
    }
    let elapsed = started.elapsed();
    Outcome {
        pass: mismatches == 0 && elapsed < Duration::from_secs(60),
        detail: format!("500 instances, {mismatches} mismatches, {:.2?} (limit 60 s)", elapsed),
    }
}

/// A random decomposition in which every bag is the union of two cliques,
/// with edges only inside bags.
fn two_clique_bag_instance(seed: u64) -> (WeightedInstance, TreeDecomposition) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = r.gen_range(3..=10);
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut next = 0;
    while next < n {
        let fresh = r.gen_range(1..=3).min(n - next);
        let mut bag: Vec<usize> = (next..next + fresh).collect();
        next += fresh;
        if bags.is_empty() {
            parent.push(None);
        } else {
            let p = r.gen_range(0..bags.len());
            let keep = r.gen_range(0..=bags[p].len().min(3));
            bag.extend(bags[p].choose_multiple(&mut r, keep).copied());
            parent.push(Some(p));
        }
        bags.push(bag);
    }
    let mut edges = std::collections::BTreeSet::new();
    for bag in &bags {
        let (a, b): (Vec<usize>, Vec<usize>) = bag.iter().partition(|_| r.gen_bool(0.5));
        for part in [&a, &b] {
            for (x, &u) in part.iter().enumerate() {
                for &v in &part[x + 1..] {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
        for &u in &a {
            for &v in &b {
                if r.gen_bool(0.2) {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
    }
    let g = Graph::from_edges(n, edges).unwrap();
    let c = r.gen_range(1..=4);
    let inst = WeightedInstance::unit(g)
        .with_colors((0..n).map(|_| r.gen_range(1..=c)).collect())
        .unwrap();
    let inst = random_weights(&inst, 100, seed).unwrap();
    (inst, TreeDecomposition::new(bags, parent).unwrap())
}

fn alpha_two_path() -> Outcome {
    let mut mismatches = 0;
    let mut used = 0;
    let mut seed = 0;
    while used < 100 {
        let (inst, td) = two_clique_bag_instance(seed);
        seed += 1;
        if bag_alpha(inst.graph(), &td) != 2 {
            continue;
        }
        used += 1;
        let dp = max_weight_colorful_is(&inst, &td, 2).unwrap();
        if dp.weight != brute_colorful_is(&inst).unwrap().weight {
            mismatches += 1;
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!("{used} instances with bag independence 2, {mismatches} mismatches"),
    }
}

/// Random cluster⋈chordal instance with its parameters.
fn overlay_instance(seed: u64) -> (WeightedInstance, usize, usize) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = r.gen_range(4..=12);
    let (cluster, labels) = random_cluster(n, 4, seed).unwrap();
    let chordal = random_chordal(n, 3, seed ^ 0x1234).unwrap();
    let inst = overlay_cluster_chordal(&cluster, &labels, &chordal).unwrap();
    let inst = random_weights(&inst, 20, seed ^ 0x77).unwrap();
    let c = r.gen_range(1..=3);
    let ell = r.gen_range(1..=5);
    (inst, c, ell)
}

fn pipeline_exhaustive() -> Outcome {
    let started = Instant::now();
    let mut mismatches = 0;
    for seed in 0..200 {
        let (inst, c, ell) = overlay_instance(seed);
        let got = mwccs_cluster_chordal(&inst, c, ell, &ColoringFamilySpec::exhaustive()).unwrap();
        let want = brute_mwccs(&inst, c, Some(ell)).unwrap();
        if got.weight != want.weight || got.validate_colorable(&inst, c as u32, ell).is_err() {
            mismatches += 1;
        }
    }
    let elapsed = started.elapsed();
    Outcome {
        pass: mismatches == 0 && elapsed < Duration::from_secs(300),
        detail: format!("200 instances, {mismatches} mismatches, {:.2?} (limit 300 s)", elapsed),
    }
}

fn pipeline_randomized() -> Outcome {
    let mut matched = 0;
    let mut infeasible = 0;
    for seed in 0..200 {
        let (inst, c, ell) = overlay_instance(seed);
        let spec = ColoringFamilySpec::randomized(0.01, 1000 + seed);
        let got = mwccs_cluster_chordal(&inst, c, ell, &spec).unwrap();
        if got.validate_colorable(&inst, c as u32, ell).is_err() {
            infeasible += 1;
        }
        if got.weight == brute_mwccs(&inst, c, Some(ell)).unwrap().weight {
            matched += 1;
        }
    }
    let rate = matched as f64 / 200.0;
    Outcome {
        pass: rate >= 0.98 && infeasible == 0,
        detail: format!("match rate {:.1}% (need 98%), {infeasible} infeasible", rate * 100.0),
    }
}

/// Every multicolored clique instance with two classes of at most two
/// vertices (all cross-edge subsets), then 50 random three-class instances.
fn construction_suite() -> Vec<MulticoloredCliqueInstance> {
    let mut out = Vec::new();
    for n1 in 1..=2 {
        for n2 in 1..=2 {
            let pairs: Vec<(usize, usize)> = (0..n1).flat_map(|a| (0..n2).map(move |b| (a, n1 + b))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
                let g = Graph::from_edges(n1 + n2, edges).unwrap();
                let classes = vec![(0..n1).collect(), (n1..n1 + n2).collect()];
                out.push(MulticoloredCliqueInstance::new(g, classes).unwrap());
            }
        }
    }
    for seed in 0..50u64 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let sizes: Vec<usize> = (0..3).map(|_| r.gen_range(1..=2)).collect();
        let p = r.gen_range(0.2..0.9);
        let plant = r.gen_bool(0.3);
        out.push(random_multicolored_clique(3, &sizes, p, plant, seed).unwrap());
    }
    out
}

fn construction_exactness(suite: &[MulticoloredCliqueInstance]) -> Outcome {
    let mut mismatches = 0;
    let mut yes = 0;
    for mcc in suite {
        let (g, ell, _) = construct_mis_instance(mcc).unwrap();
        let expected_ell = if mcc.k() == 2 { 5 } else { 12 };
        let clique = brute_multicolored_clique(mcc).unwrap();
        let mis = brute_mwis(&WeightedInstance::unit(g), None).unwrap().len();
        yes += clique as usize;
        if ell != expected_ell || clique != (mis >= ell) {
            mismatches += 1;
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!("{} instances ({yes} with a clique), {mismatches} mismatches", suite.len()),
    }
}

fn class_certificates(suite: &[MulticoloredCliqueInstance]) -> Outcome {
    let mut bad_graphs = 0;
    let mut vertices = 0;
    let mut certified = 0;
    for mcc in suite {
        let (g, ell, index) = construct_mis_instance(mcc).unwrap();
        if !is_k_mino(&g, 3) || two_simplicial_ordering(&g).is_none() || verify_construction(mcc, &g, ell).is_err() {
            bad_graphs += 1;
        }
        for &name in index.names() {
            vertices += 1;
            certified += clique_cover_certificate(&g, &index, name).is_ok() as usize;
        }
    }
    Outcome {
        pass: bad_graphs == 0 && certified == vertices,
        detail: format!(
            "{} gadget graphs, {bad_graphs} failing class checks, {certified}/{vertices} vertices certified",
            suite.len()
        ),
    }
}

fn complete_tripartite(size: usize) -> MulticoloredCliqueInstance {
    let n = 3 * size;
    let class = |v: usize| v / size;
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| class(u) != class(v));
    let g = Graph::from_edges(n, edges).unwrap();
    MulticoloredCliqueInstance::new(g, (0..3).map(|i| (i * size..(i + 1) * size).collect()).collect()).unwrap()
}

fn three_classes_of_four() -> Outcome {
    let mcc = complete_tripartite(4);
    let (g, ell, index) = construct_mis_instance(&mcc).unwrap();
    let cliques = index.cliques();
    let mut seen = VertexSet::new(g.n());
    let mut partition = cliques.len() == 12;
    for c in &cliques {
        partition &= g.is_clique(c) && c.iter().all(|&v| !seen.contains(v));
        for &v in c {
            seen.insert(v);
        }
    }
    partition &= seen.len() == g.n();
    // One vertex per clique, all from the first vertex of every class.
    let mut pick = VertexSet::new(g.n());
    for i in 1..=3 {
        for j in 1..=3 {
            pick.insert(index.id(GadgetName::Select { i, j, p: 1 }).unwrap());
            if i < j {
                pick.insert(index.id(GadgetName::Verify { i, j, p: 1, q: 1 }).unwrap());
            }
        }
    }
    let structural = pick.len() == 12 && is_independent(&g, &pick);

    let small = complete_tripartite(1);
    let (gs, ells, _) = construct_mis_instance(&small).unwrap();
    let brute = brute_mwis(&WeightedInstance::unit(gs.clone()), None).unwrap().len();
    Outcome {
        pass: g.n() == 84 && ell == 12 && partition && structural && gs.n() == 12 && ells == 12 && brute == 12,
        detail: format!(
            "|V'| = {} (want 84), target {ell} (want 12), 12-clique partition {partition}, \
             explicit independent set of 12 {structural}, shrink |V'| = {} with brute-force optimum {brute}",
            g.n(),
            gs.n()
        ),
    }
}

fn cubic_triangle_free_suite() -> Vec<Graph> {
    let mut out = vec![Graph::complete_bipartite(3, 3), Graph::petersen()];
    let cube = Graph::from_edges(
        8,
        (0..8usize).flat_map(|v| [1, 2, 4].into_iter().map(move |b| (v, v ^ b))).filter(|&(u, v)| u < v),
    )
    .unwrap();
    out.push(cube);
    let triangle_free = |g: &Graph| g.edges().all(|(u, v)| !g.neighbors(u).iter().any(|w| g.has_edge(*w, v)));
    for n in [6usize, 8, 10, 12] {
        let mut found = 0;
        let mut seed = 0;
        while found < 6 && seed < 500 {
            if let Some(g) = random_cubic(n, seed, 100).unwrap() {
                if triangle_free(&g) && !out.contains(&g) {
                    out.push(g);
                    found += 1;
                }
            }
            seed += 1;
        }
    }
    out
}

fn recognition_soundness() -> Outcome {
    let mut chordal_bad = 0;
    let mut chordal_yes = 0;
    for seed in 0..300u64 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = r.gen_range(1..=10);
        let g = if seed % 3 == 0 {
            random_chordal(n, r.gen_range(1..=4), seed).unwrap()
        } else {
            random_gnp(n, r.gen_range(0.1..0.9), seed).unwrap()
        };
        let fast = is_chordal(&g).is_some();
        chordal_yes += fast as usize;
        if fast == brute_has_chordless_cycle(&g).unwrap() {
            chordal_bad += 1;
        }
    }
    let suite = cubic_triangle_free_suite();
    let mut ham_bad = 0;
    let mut ham_yes = 0;
    for g in &suite {
        let fast = hamiltonicity_via_decomposition(g).unwrap();
        ham_yes += fast as usize;
        if fast != brute_hamiltonian_cycle(g).unwrap() {
            ham_bad += 1;
        }
    }
    let k33 = hamiltonicity_via_decomposition(&Graph::complete_bipartite(3, 3)).unwrap();
    let petersen = hamiltonicity_via_decomposition(&Graph::petersen()).unwrap();
    Outcome {
        pass: chordal_bad == 0 && ham_bad == 0 && k33 && !petersen,
        detail: format!(
            "chordality: 300 graphs ({chordal_yes} chordal), {chordal_bad} disagreements; \
             hamiltonicity: {} cubic triangle-free graphs ({ham_yes} Hamiltonian), {ham_bad} disagreements, \
             K33 {k33}, Petersen {petersen}",
            suite.len()
        ),
    }
}

fn time_dp(n: usize, c: u32, reps: usize) -> Duration {
    let mut times: Vec<Duration> = (0..reps)
        .map(|rep| {
            let inst = colored_chordal(7000 + rep as u64, n, 4, c, 1000);
            let g = inst.graph();
            let td = clique_tree_from_peo(g, &is_chordal(g).unwrap()).unwrap();
            let started = Instant::now();
            let sol = max_weight_colorful_is(&inst, &td, 1).unwrap();
            let t = started.elapsed();
            assert!(sol.weight > 0);
            t
        })
        .collect();
    times.sort();
    times[reps / 2]
}

fn scaling() -> Outcome {
    let c = 8;
    let t500 = time_dp(500, c, 3);
    let t1000 = time_dp(1000, c, 3);
    let t2000 = time_dp(2000, c, 3);
    let r1 = t1000.as_secs_f64() / t500.as_secs_f64();
    let r2 = t2000.as_secs_f64() / t1000.as_secs_f64();
    Outcome {
        pass: r1 <= 5.0 && r2 <= 5.0 && t2000 < Duration::from_secs(10),
        detail: format!(
            "c = {c}: n=500 {t500:.2?}, n=1000 {t1000:.2?}, n=2000 {t2000:.2?}; doubling ratios {r1:.2}, {r2:.2} (limit 5)"
        ),
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_iki");
    let instance = dir.path().join("inst.txt");
    let gen = Command::new(bin)
        .args(["generate", "overlay", "--n", "14", "--seed", "3", "--max-weight", "30", "-o"])
        .arg(&instance)
        .status()
        .unwrap();
    let colored = dir.path().join("colored.txt");
    let gen2 = Command::new(bin)
        .args(["generate", "chordal", "--n", "40", "--seed", "5", "--colors", "4", "--max-weight", "30", "-o"])
        .arg(&colored)
        .status()
        .unwrap();
    let runs: Vec<(&str, Vec<&str>, &std::path::Path)> = vec![
        ("mwccs randomized", vec!["solve", "mwccs", "--c", "3", "--ell", "6", "--mode", "randomized", "--seed", "11"], &instance),
        ("mwccs randomized, 3 jobs", vec!["solve", "mwccs", "--c", "3", "--ell", "6", "--mode", "randomized", "--seed", "11", "--jobs", "3"], &instance),
        ("mwccs exhaustive", vec!["solve", "mwccs", "--c", "2", "--ell", "4"], &instance),
        ("mwis randomized", vec!["solve", "mwis", "--ell", "5", "--mode", "randomized", "--seed", "2"], &instance),
        ("colorful", vec!["solve", "colorful"], &colored),
    ];
    let mut identical = 0;
    let mut names = Vec::new();
    for (k, (name, args, input)) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let out = dir.path().join(format!("sol-{k}-{rep}.txt"));
            let status = Command::new(bin).args(args).arg("-o").arg(&out).arg(input).status().unwrap();
            outputs.push(status.success().then(|| std::fs::read(&out).unwrap()));
        }
        if outputs[0].is_some() && outputs[0] == outputs[1] {
            identical += 1;
        } else {
            names.push(*name);
        }
    }
    Outcome {
        pass: gen.success() && gen2.success() && identical == runs.len(),
        detail: format!("{identical}/{} solve commands byte-identical across two runs {names:?}", runs.len()),
    }
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

#[test]
fn acceptance() {
    let suite = construction_suite();
    let checks: Vec<(u32, &str, Check)> = vec![
        (1, "colorful DP vs brute force on chordal graphs", Box::new(dp_correctness)),
        (2, "colorful DP with bag independence 2", Box::new(alpha_two_path)),
        (3, "exhaustive cluster-chordal pipeline vs brute force", Box::new(pipeline_exhaustive)),
        (4, "randomized cluster-chordal pipeline", Box::new(pipeline_randomized)),
        (5, "gadget construction exactness", Box::new(|| construction_exactness(&suite))),
        (6, "gadget class certificates", Box::new(|| class_certificates(&suite))),
        (7, "three classes of four: counts", Box::new(three_classes_of_four)),
        (8, "recognition soundness", Box::new(recognition_soundness)),
        (9, "DP scaling", Box::new(scaling)),
        (10, "solve output determinism", Box::new(determinism)),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in checks {
        let o = check();
        report(id, name, &o);
        if !o.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
