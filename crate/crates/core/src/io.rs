//! Line-oriented text formats for instances and solutions.
//!
//! Instance files use 1-based vertices:
//!
//! ```text
//! c comment
//! p iki <n> <m>
//! w <v> <weight>        (weight 1 when absent)
//! col <v> <color>       (all vertices or none)
//! cl <v> <cluster-id>   (all vertices or none)
//! e <u> <v> [C|H]       (C: cluster part, H: chordal part)
//! ```
//!
//! Either every edge carries a tag or none does. Tagged instances are checked
//! for a consistent cluster/chordal split when parsed.
//!
//! Solution files are `key value` lines: `weight`, `vertices` (1-based,
//! sorted), `colors` (`v:c` pairs or `-`), `mode`, `seed` (or `-`), `trials`
//! and, only when requested, `elapsed_ms`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{EdgeTag, Graph, Solution, Vertex, VertexSet, Weight, WeightedInstance};
use crate::recognition::ClusterChordalWitness;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| perr(line, format!("invalid {what} '{tok}'")))
}

fn vertex(tok: Option<&str>, line: usize, n: usize) -> Result<Vertex> {
    let v: usize = num(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn set_once<T: Copy>(slot: &mut [Option<T>], v: Vertex, value: T, line: usize, what: &str) -> Result<()> {
    if slot[v].replace(value).is_some() {
        return Err(perr(line, format!("{what} of vertex {} given twice", v + 1)));
    }
    Ok(())
}

fn all_or_none<T: Copy>(slot: Vec<Option<T>>, line: usize, what: &str) -> Result<Option<Vec<T>>> {
    if slot.iter().all(Option::is_none) {
        return Ok(None);
    }
    if let Some(v) = slot.iter().position(Option::is_none) {
        return Err(perr(line, format!("{what} missing for vertex {}", v + 1)));
    }
    Ok(Some(slot.into_iter().map(|x| x.expect("checked")).collect()))
}

/// Parses instance text.
pub fn parse_instance_str(text: &str) -> Result<WeightedInstance> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut weights: Vec<Option<Weight>> = Vec::new();
    let mut colors: Vec<Option<u32>> = Vec::new();
    let mut clusters: Vec<Option<usize>> = Vec::new();
    let mut edges: BTreeMap<(Vertex, Vertex), Option<EdgeTag>> = BTreeMap::new();
    let mut tagged: Option<bool> = None;
    let mut last = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "c" {
            continue;
        }
        if kind == "p" {
            if header.is_some() {
                return Err(perr(line, "second header line"));
            }
            if toks.next() != Some("iki") {
                return Err(perr(line, "header must read 'p iki <n> <m>'"));
            }
            let n: usize = num(toks.next(), line, "vertex count")?;
            let m: usize = num(toks.next(), line, "edge count")?;
            if toks.next().is_some() {
                return Err(perr(line, "trailing tokens"));
            }
            weights = vec![None; n];
            colors = vec![None; n];
            clusters = vec![None; n];
            header = Some((n, m, line));
            continue;
        }
        let Some((n, _, _)) = header else {
            return Err(perr(line, "record before the 'p iki' header"));
        };
        match kind {
            "w" => {
                let v = vertex(toks.next(), line, n)?;
                let w: Weight = num(toks.next(), line, "weight")?;
                set_once(&mut weights, v, w, line, "weight")?;
            }
            "col" => {
                let v = vertex(toks.next(), line, n)?;
                let c: u32 = num(toks.next(), line, "color")?;
                if c == 0 {
                    return Err(perr(line, "colors start at 1"));
                }
                set_once(&mut colors, v, c, line, "color")?;
            }
            "cl" => {
                let v = vertex(toks.next(), line, n)?;
                let id: usize = num(toks.next(), line, "cluster id")?;
                set_once(&mut clusters, v, id, line, "cluster")?;
            }
            "e" => {
                let u = vertex(toks.next(), line, n)?;
                let v = vertex(toks.next(), line, n)?;
                if u == v {
                    return Err(perr(line, format!("self-loop at vertex {}", u + 1)));
                }
                let tag = match toks.next() {
                    None => None,
                    Some("C") => Some(EdgeTag::Cluster),
                    Some("H") => Some(EdgeTag::Chordal),
                    Some(t) => return Err(perr(line, format!("unknown edge tag '{t}'"))),
                };
                match tagged {
                    None => tagged = Some(tag.is_some()),
                    Some(t) if t != tag.is_some() => {
                        return Err(perr(line, "tagged and untagged edges are mixed"));
                    }
                    _ => {}
                }
                if edges.insert((u.min(v), u.max(v)), tag).is_some() {
                    return Err(perr(line, format!("duplicate edge {} {}", u + 1, v + 1)));
                }
            }
            other => return Err(perr(line, format!("unknown record '{other}'"))),
        }
        if toks.next().is_some() {
            return Err(perr(line, "trailing tokens"));
        }
    }

    let Some((n, m, hline)) = header else {
        return Err(perr(last.max(1), "missing 'p iki <n> <m>' header"));
    };
    if edges.len() != m {
        return Err(perr(hline, format!("header declares {m} edges, file has {}", edges.len())));
    }
    let g = Graph::from_edges(n, edges.keys().copied()).map_err(|e| perr(hline, e.to_string()))?;
    let weights: Vec<Weight> = weights.into_iter().map(|w| w.unwrap_or(1)).collect();
    let mut inst = WeightedInstance::new(g, weights).map_err(|e| perr(hline, e.to_string()))?;
    if let Some(c) = all_or_none(colors, hline, "color")? {
        inst = inst.with_colors(c)?;
    }
    if let Some(c) = all_or_none(clusters, hline, "cluster")? {
        inst = inst.with_clusters(c)?;
    }
    if tagged == Some(true) {
        let tags = edges.into_iter().map(|(e, t)| (e, t.expect("all tagged"))).collect();
        inst = inst.with_edge_tags(tags)?;
        ClusterChordalWitness::from_instance(&inst)
            .map_err(|e| perr(hline, format!("inconsistent decomposition witness: {e}")))?;
    }
    Ok(inst)
}

pub fn parse_instance(path: &Path) -> Result<WeightedInstance> {
    parse_instance_str(&std::fs::read_to_string(path)?)
}

/// Canonical text: header, weights other than 1, colors, clusters, then
/// edges sorted.
pub fn instance_to_string(inst: &WeightedInstance) -> String {
    let g = inst.graph();
    let mut s = String::new();
    writeln!(s, "p iki {} {}", g.n(), g.m()).unwrap();
    for (v, &w) in inst.weights().iter().enumerate() {
        if w != 1 {
            writeln!(s, "w {} {w}", v + 1).unwrap();
        }
    }
    if let Some(colors) = inst.colors() {
        for (v, c) in colors.iter().enumerate() {
            writeln!(s, "col {} {c}", v + 1).unwrap();
        }
    }
    if let Some(cl) = inst.clusters() {
        for (v, c) in cl.iter().enumerate() {
            writeln!(s, "cl {} {c}", v + 1).unwrap();
        }
    }
    let tags = inst.edge_tags();
    for (u, v) in g.edges() {
        match tags.map(|t| t[&(u, v)]) {
            None => writeln!(s, "e {} {}", u + 1, v + 1),
            Some(EdgeTag::Cluster) => writeln!(s, "e {} {} C", u + 1, v + 1),
            Some(EdgeTag::Chordal) => writeln!(s, "e {} {} H", u + 1, v + 1),
        }
        .unwrap();
    }
    s
}

pub fn write_instance(inst: &WeightedInstance, path: &Path) -> Result<()> {
    std::fs::write(path, instance_to_string(inst))?;
    Ok(())
}

/// A solution together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub weight: Weight,
    /// 0-based, sorted.
    pub vertices: Vec<Vertex>,
    /// 0-based vertex to 1-based color.
    pub colors: Option<BTreeMap<Vertex, u32>>,
    pub mode: String,
    pub seed: Option<u64>,
    pub trials: u64,
    pub elapsed_ms: Option<u64>,
}

impl SolutionRecord {
    pub fn new(sol: &Solution, mode: &str, seed: Option<u64>, trials: u64) -> Self {
        SolutionRecord {
            weight: sol.weight,
            vertices: sol.vertices.to_vec(),
            colors: sol.color_assignment.clone(),
            mode: mode.to_string(),
            seed,
            trials,
            elapsed_ms: None,
        }
    }

    pub fn to_solution(&self, n: usize) -> Result<Solution> {
        Ok(Solution {
            vertices: VertexSet::try_from_vertices(n, self.vertices.iter().copied())?,
            color_assignment: self.colors.clone(),
            weight: self.weight,
        })
    }
}

pub fn solution_to_string(rec: &SolutionRecord) -> String {
    let mut s = String::new();
    writeln!(s, "weight {}", rec.weight).unwrap();
    let verts: Vec<String> = rec.vertices.iter().map(|v| (v + 1).to_string()).collect();
    writeln!(s, "vertices {}", if verts.is_empty() { "-".to_string() } else { verts.join(" ") }).unwrap();
    match &rec.colors {
        Some(c) if !c.is_empty() => {
            let pairs: Vec<String> = c.iter().map(|(v, col)| format!("{}:{col}", v + 1)).collect();
            writeln!(s, "color_assignment {}", pairs.join(" ")).unwrap();
        }
        Some(_) => writeln!(s, "color_assignment").unwrap(),
        None => writeln!(s, "color_assignment -").unwrap(),
    }
    writeln!(s, "mode {}", rec.mode).unwrap();
    match rec.seed {
        Some(seed) => writeln!(s, "seed {seed}").unwrap(),
        None => writeln!(s, "seed -").unwrap(),
    }
    writeln!(s, "trials {}", rec.trials).unwrap();
    if let Some(ms) = rec.elapsed_ms {
        writeln!(s, "elapsed_ms {ms}").unwrap();
    }
    s
}

pub fn write_solution(rec: &SolutionRecord, path: &Path) -> Result<()> {
    std::fs::write(path, solution_to_string(rec))?;
    Ok(())
}

pub fn parse_solution_str(text: &str) -> Result<SolutionRecord> {
    let mut fields: BTreeMap<&str, (usize, Vec<&str>)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(key) = toks.next() else { continue };
        if fields.insert(key, (line, toks.collect())).is_some() {
            return Err(perr(line, format!("field '{key}' repeated")));
        }
    }
    let mut take = |key: &str| fields.remove(key).ok_or_else(|| perr(0, format!("missing field '{key}'")));
    let single = |(line, vals): (usize, Vec<&str>), key: &str| -> Result<(usize, String)> {
        match vals.as_slice() {
            [v] => Ok((line, v.to_string())),
            _ => Err(perr(line, format!("field '{key}' needs exactly one value"))),
        }
    };
    let (line, w) = single(take("weight")?, "weight")?;
    let weight = num(Some(&w), line, "weight")?;
    let (line, vs) = take("vertices")?;
    let vertices = if vs == ["-"] {
        Vec::new()
    } else {
        let mut out = Vec::new();
        for t in vs {
            let v: usize = num(Some(t), line, "vertex")?;
            if v == 0 {
                return Err(perr(line, "vertices are 1-based"));
            }
            out.push(v - 1);
        }
        out
    };
    let (line, cs) = take("color_assignment")?;
    let colors = if cs == ["-"] {
        None
    } else {
        let mut map = BTreeMap::new();
        for t in cs {
            let (v, c) = t.split_once(':').ok_or_else(|| perr(line, format!("bad color pair '{t}'")))?;
            let v: usize = num(Some(v), line, "vertex")?;
            let c: u32 = num(Some(c), line, "color")?;
            if v == 0 {
                return Err(perr(line, "vertices are 1-based"));
            }
            map.insert(v - 1, c);
        }
        Some(map)
    };
    let (_, mode) = single(take("mode")?, "mode")?;
    let (line, seed) = single(take("seed")?, "seed")?;
    let seed = if seed == "-" { None } else { Some(num(Some(&seed), line, "seed")?) };
    let (line, t) = single(take("trials")?, "trials")?;
    let trials = num(Some(&t), line, "trials")?;
    let elapsed_ms = match fields.remove("elapsed_ms") {
        Some(f) => {
            let (line, v) = single(f, "elapsed_ms")?;
            Some(num(Some(&v), line, "elapsed_ms")?)
        }
        None => None,
    };
    if let Some((key, (line, _))) = fields.into_iter().next() {
        return Err(perr(line, format!("unknown field '{key}'")));
    }
    Ok(SolutionRecord {
        weight,
        vertices,
        colors,
        mode,
        seed,
        trials,
        elapsed_ms,
    })
}

pub fn parse_solution(path: &Path) -> Result<SolutionRecord> {
    parse_solution_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only() {
        let inst = parse_instance_str("p iki 0 0\n").unwrap();
        assert_eq!(inst.n(), 0);
        let inst = parse_instance_str("c hello\np iki 3 0\n").unwrap();
        assert_eq!(inst.weights(), &[1, 1, 1]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_instance_str("p iki 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_instance_str("p iki 3 1\ne 1 4\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_instance_str("e 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_instance_str("p iki 3 2\ne 1 2 C\ne 2 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(parse_instance_str("p iki 3 2\ne 1 2\n").is_err());
        assert!(parse_instance_str("p iki 2 0\ncol 1 1\n").is_err());
        assert!(parse_instance_str("p iki 2 0\nw 1 2\nw 1 3\n").is_err());
        assert!(parse_instance_str("p iki 2 0\nx 1\n").is_err());
    }

    #[test]
    fn witness_errors_name_the_obstruction() {
        let e = parse_instance_str("p iki 3 2\ne 1 2 C\ne 2 3 C\n").unwrap_err().to_string();
        assert!(e.contains("induced path"), "{e}");
        let text = "p iki 4 4\ne 1 2 H\ne 2 3 H\ne 3 4 H\ne 1 4 H\n";
        let e = parse_instance_str(text).unwrap_err().to_string();
        assert!(e.contains("induced cycle"), "{e}");
    }

    #[test]
    fn instance_round_trip() {
        let text = "p iki 4 3\nw 2 7\ncol 1 1\ncol 2 2\ncol 3 1\ncol 4 3\ncl 1 0\ncl 2 0\ncl 3 1\ncl 4 2\ne 1 2 C\ne 2 3 H\ne 3 4 H\n";
        let inst = parse_instance_str(text).unwrap();
        assert_eq!(instance_to_string(&inst), text);
        assert_eq!(parse_instance_str(&instance_to_string(&inst)).unwrap(), inst);
    }

    #[test]
    fn solution_round_trip() {
        let rec = SolutionRecord {
            weight: 0,
            vertices: vec![],
            colors: None,
            mode: "exhaustive".into(),
            seed: None,
            trials: 1,
            elapsed_ms: None,
        };
        let text = solution_to_string(&rec);
        assert!(text.starts_with("weight 0\n"));
        assert_eq!(parse_solution_str(&text).unwrap(), rec);
        let rec = SolutionRecord {
            weight: 9,
            vertices: vec![0, 4],
            colors: Some([(0, 1), (4, 2)].into_iter().collect()),
            mode: "randomized".into(),
            seed: Some(42),
            trials: 17,
            elapsed_ms: Some(3),
        };
        assert_eq!(parse_solution_str(&solution_to_string(&rec)).unwrap(), rec);
    }
}
