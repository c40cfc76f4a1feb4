use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use iki::color_coding::{
    mwccs_with_witness, ClusterChordalSolver, ColoringFamilySpec, ColoringMode, DEFAULT_EXHAUSTIVE_CAP,
};
use iki::colorful_dp::{max_weight_colorful_is, max_weight_is_chordal};
use iki::generators::{
    overlay_cluster_chordal, random_chordal, random_cluster, random_colors, random_multicolored_clique,
    random_weights,
};
use iki::graph::{maximal_cliques_containing, VertexSet};
use iki::hardness::{construct_mis_instance, gen_indkind_hardness, gen_k1kfree_hardness, MulticoloredCliqueInstance};
use iki::io::{instance_to_string, parse_instance, solution_to_string, SolutionRecord};
use iki::oracle::{brute_colorful_is, brute_hamiltonian_cycle, brute_multicolored_clique, brute_mwccs, brute_mwis};
use iki::recognition::{
    brute_force_cluster_chordal, find_chordless_cycle, find_induced_p3, find_inductive_k_independent_ordering,
    is_chordal, maximum_cardinality_search, is_cluster, is_k1k_free, two_simplicial_ordering, ClusterChordalWitness, DEFAULT_EDGE_CAP,
};
use iki::tree_decomp::{bag_alpha, clique_tree_from_peo, from_elimination_order};
use iki::{Error, Graph, Solution, WeightedInstance};

const EXIT_ABSENT: u8 = 2;
const EXIT_SIZE_CAP: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_IO: u8 = 66;
const EXIT_INTERNAL: u8 = 70;

/// Independent set and colorable subgraph solvers for graph classes between
/// chordal graphs and inductive k-independent graphs.
#[derive(Parser)]
#[command(name = "iki", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an optimization problem on an instance file.
    Solve {
        #[command(subcommand)]
        problem: SolveProblem,
    },
    /// Test membership in a graph class.
    Recognize {
        #[arg(long)]
        class: String,
        instance: PathBuf,
        /// Write the witness here instead of stdout.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Write a random instance.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Apply a hardness reduction: construction1, indkind:<k> or k1kfree:<k>.
    Reduce {
        reduction: String,
        instance: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Gadget name map for construction1.
        #[arg(long)]
        names: Option<PathBuf>,
    },
    /// Run a brute-force reference solver.
    Oracle {
        problem: OracleProblem,
        instance: PathBuf,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trial_cap: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    exhaustive_cap: u64,
    /// Worker threads; the answer does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl FamilyArgs {
    fn spec(&self) -> ColoringFamilySpec {
        ColoringFamilySpec {
            mode: match self.mode {
                Mode::Exhaustive => ColoringMode::Exhaustive,
                Mode::Randomized => ColoringMode::Randomized,
            },
            epsilon: self.epsilon,
            seed: self.seed,
            trial_cap: self.trial_cap,
            exhaustive_cap: self.exhaustive_cap,
            jobs: self.jobs,
        }
    }

    fn mode_name(&self) -> &'static str {
        match self.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::Randomized => "randomized",
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Add elapsed_ms to the solution (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum SolveProblem {
    /// Maximum-weight c-colorable induced subgraph with at most ell vertices.
    Mwccs {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        ell: usize,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        out: OutputArgs,
        instance: PathBuf,
    },
    /// Maximum-weight independent set; with --ell, at most ell vertices.
    Mwis {
        #[arg(long)]
        ell: Option<usize>,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        out: OutputArgs,
        instance: PathBuf,
    },
    /// Maximum-weight independent set with pairwise distinct colors.
    Colorful {
        #[command(flatten)]
        out: OutputArgs,
        instance: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    Chordal {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_clique: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_weight: Option<u64>,
        /// Add random colors 1..=c.
        #[arg(long)]
        colors: Option<u32>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    Cluster {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_cluster: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_weight: Option<u64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Cluster graph overlaid with a chordal graph, edges tagged.
    Overlay {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_clique: usize,
        #[arg(long, default_value_t = 3)]
        max_cluster: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_weight: Option<u64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Multicolored clique instance; classes are written as colors.
    Mcc {
        #[arg(long)]
        k: usize,
        /// Comma-separated class sizes.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        plant: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleProblem {
    Mwis,
    Mwccs,
    Colorful,
    Mcc,
    Hamiltonian,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::SizeCap { .. } => EXIT_SIZE_CAP,
            Error::InvalidArgument(_) | Error::VertexOutOfRange { .. } => EXIT_USAGE,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn internal(e: Error) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn emit(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::from(Error::from(e))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::from(Error::from(e))),
    }
}

fn finish_solution(mut rec: SolutionRecord, out: &OutputArgs, started: Instant) -> Outcome {
    if out.timing {
        rec.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    emit(out.output.as_deref(), &solution_to_string(&rec))?;
    Ok(0)
}

/// The instance's own witness, or every edge treated as chordal when the
/// instance has no tags.
fn witness_for(inst: &WeightedInstance) -> Result<ClusterChordalWitness, Failure> {
    if inst.edge_tags().is_some() || inst.graph().m() == 0 {
        return Ok(ClusterChordalWitness::from_instance(inst)?);
    }
    ClusterChordalWitness::chordal_only(inst.graph()).map_err(|_| {
        usage("graph is not chordal and the instance carries no cluster/chordal edge tags")
    })
}

fn solve(problem: SolveProblem) -> Outcome {
    let started = Instant::now();
    match problem {
        SolveProblem::Mwccs {
            c,
            ell,
            family,
            out,
            instance,
        } => {
            let inst = parse_instance(&instance)?;
            let (sol, report) = mwccs_with_witness(&inst, witness_for(&inst)?, c, ell, &family.spec())?;
            sol.validate_colorable(&inst, c as u32, ell).map_err(internal)?;
            let rec = SolutionRecord::new(&sol, family.mode_name(), Some(family.seed), report.trials);
            finish_solution(rec, &out, started)
        }
        SolveProblem::Mwis {
            ell,
            family,
            out,
            instance,
        } => {
            let inst = parse_instance(&instance)?;
            let chordal_peo = if inst.edge_tags().is_none() { is_chordal(inst.graph()) } else { None };
            let (sol, rec) = match (ell, chordal_peo) {
                (None, Some(peo)) => {
                    let td = clique_tree_from_peo(inst.graph(), &peo)?;
                    let sol = max_weight_is_chordal(&inst, &td)?;
                    let rec = SolutionRecord::new(&sol, "exact", None, 1);
                    (sol, rec)
                }
                _ => {
                    let bound = ell.unwrap_or(inst.n());
                    let spec = family.spec();
                    let solver = ClusterChordalSolver::with_witness(witness_for(&inst)?, &spec)?;
                    let (sol, report) = solver.solve_subset(&inst, &VertexSet::full(inst.n()), bound)?;
                    let rec = SolutionRecord::new(&sol, family.mode_name(), Some(family.seed), report.trials);
                    (sol, rec)
                }
            };
            sol.validate_independent(&inst).map_err(internal)?;
            if sol.len() > ell.unwrap_or(usize::MAX) {
                return Err(internal(Error::Validation("solution exceeds the size bound".into())));
            }
            finish_solution(rec, &out, started)
        }
        SolveProblem::Colorful { out, instance } => {
            let inst = parse_instance(&instance)?;
            if inst.colors().is_none() {
                return Err(usage("the instance has no 'col' lines"));
            }
            let g = inst.graph();
            let td = match is_chordal(g) {
                Some(peo) => clique_tree_from_peo(g, &peo)?,
                None => from_elimination_order(g, &maximum_cardinality_search(g))?,
            };
            let alpha = bag_alpha(g, &td).max(1);
            let sol = max_weight_colorful_is(&inst, &td, alpha)?;
            sol.validate_colorful(&inst).map_err(internal)?;
            finish_solution(SolutionRecord::new(&sol, "exact", None, 1), &out, started)
        }
    }
}

fn parse_param(class: &str, prefix: &str) -> Result<Option<usize>, Failure> {
    match class.strip_prefix(prefix) {
        None => Ok(None),
        Some(k) => k
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("bad parameter in '{class}'"))),
    }
}

fn one_based(vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn recognize(class: &str, instance: &Path, witness_path: Option<&Path>) -> Outcome {
    let inst = parse_instance(instance)?;
    let g = inst.graph();
    let (member, witness): (bool, String) = if class == "chordal" {
        match is_chordal(g) {
            Some(peo) => (true, format!("peo {}\n", one_based(peo.as_slice().iter().copied()))),
            None => {
                let cycle = find_chordless_cycle(g).ok_or_else(|| internal(Error::Validation("no cycle".into())))?;
                (false, format!("cycle {}\n", one_based(cycle)))
            }
        }
    } else if class == "cluster" {
        if is_cluster(g) {
            let mut label = vec![0; g.n()];
            for (i, comp) in g.components().into_iter().enumerate() {
                for v in comp {
                    label[v] = i + 1;
                }
            }
            (true, format!("clusters {}\n", label.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")))
        } else {
            let (a, b, c) = find_induced_p3(g).ok_or_else(|| internal(Error::Validation("no P3".into())))?;
            (false, format!("p3 {}\n", one_based([a, b, c])))
        }
    } else if let Some(k) = parse_param(class, "kmino:")? {
        let bad = (0..g.n()).find(|&v| matches!(maximal_cliques_containing(g, v, k), Err(Error::CliqueCapExceeded { .. })));
        match bad {
            None => (true, String::new()),
            Some(v) => (false, format!("vertex {}\n", v + 1)),
        }
    } else if let Some(k) = parse_param(class, "k1kfree:")? {
        match is_k1k_free(g, k) {
            None => (true, String::new()),
            Some(star) => (false, format!("star {} {}\n", star.center + 1, one_based(star.leaves))),
        }
    } else if class == "two-simplicial" {
        match two_simplicial_ordering(g) {
            Some(ord) => (true, format!("order {}\n", one_based(ord.as_slice().iter().copied()))),
            None => (false, String::new()),
        }
    } else if let Some(k) = parse_param(class, "inductive:")? {
        if k == 0 {
            return Err(usage("inductive:<k> needs k >= 1"));
        }
        match find_inductive_k_independent_ordering(g, k) {
            Some(ord) => (true, format!("order {}\n", one_based(ord.as_slice().iter().copied()))),
            None => (false, String::new()),
        }
    } else if class == "cluster-chordal-brute" {
        match brute_force_cluster_chordal(g, DEFAULT_EDGE_CAP)? {
            Some(dec) => {
                let labels = dec.cluster_labels(g.n());
                let cluster = Graph::from_edges(g.n(), dec.cluster_edges.iter().copied())?;
                let chordal = Graph::from_edges(g.n(), dec.chordal_edges.iter().copied())?;
                let tagged = overlay_cluster_chordal(&cluster, &labels, &chordal)?.with_weights(inst.weights().to_vec())?;
                (true, instance_to_string(&tagged))
            }
            None => (false, String::new()),
        }
    } else {
        return Err(usage(format!("unknown class '{class}'")));
    };
    println!("{}", if member { "yes" } else { "no" });
    emit(witness_path, &witness)?;
    Ok(if member { 0 } else { EXIT_ABSENT })
}

fn with_optional_weights(inst: WeightedInstance, max_weight: Option<u64>, seed: u64) -> Result<WeightedInstance, Failure> {
    Ok(match max_weight {
        Some(w) => random_weights(&inst, w, seed.wrapping_add(1))?,
        None => inst,
    })
}

fn generate(kind: GenerateKind) -> Outcome {
    let (inst, output) = match kind {
        GenerateKind::Chordal {
            n,
            max_clique,
            seed,
            max_weight,
            colors,
            output,
        } => {
            let mut inst = with_optional_weights(WeightedInstance::unit(random_chordal(n, max_clique, seed)?), max_weight, seed)?;
            if let Some(c) = colors {
                inst = inst.with_colors(random_colors(n, c, seed.wrapping_add(2))?)?;
            }
            (inst, output)
        }
        GenerateKind::Cluster {
            n,
            max_cluster,
            seed,
            max_weight,
            output,
        } => {
            let (g, labels) = random_cluster(n, max_cluster, seed)?;
            let inst = WeightedInstance::unit(g).with_clusters(labels)?;
            (with_optional_weights(inst, max_weight, seed)?, output)
        }
        GenerateKind::Overlay {
            n,
            max_clique,
            max_cluster,
            seed,
            max_weight,
            output,
        } => {
            let (cluster, labels) = random_cluster(n, max_cluster, seed)?;
            let chordal = random_chordal(n, max_clique, seed.wrapping_add(3))?;
            let inst = overlay_cluster_chordal(&cluster, &labels, &chordal)?;
            (with_optional_weights(inst, max_weight, seed)?, output)
        }
        GenerateKind::Mcc {
            k,
            sizes,
            p,
            plant,
            seed,
            output,
        } => {
            let mcc = random_multicolored_clique(k, &sizes, p, plant, seed)?;
            let inst = WeightedInstance::unit(mcc.graph().clone()).with_colors(mcc.labels())?;
            (inst, output)
        }
    };
    emit(output.as_deref(), &instance_to_string(&inst))?;
    Ok(0)
}

fn classes_of(inst: &WeightedInstance) -> Result<MulticoloredCliqueInstance, Failure> {
    let labels = inst
        .colors()
        .ok_or_else(|| usage("multicolored clique instances need 'col' class labels"))?;
    Ok(MulticoloredCliqueInstance::from_labels(inst.graph().clone(), labels)?)
}

fn reduce(reduction: &str, instance: &Path, output: Option<&Path>, names: Option<&Path>) -> Outcome {
    let inst = parse_instance(instance)?;
    let text = if reduction == "construction1" {
        let mcc = classes_of(&inst)?;
        let (g, ell, index) = construct_mis_instance(&mcc)?;
        if let Some(p) = names {
            emit(Some(p), &index.to_text())?;
        }
        format!("c target {ell}\n{}", instance_to_string(&WeightedInstance::unit(g)))
    } else if let Some(k) = parse_param(reduction, "indkind:")? {
        instance_to_string(&WeightedInstance::unit(gen_indkind_hardness(inst.graph(), k)?))
    } else if let Some(k) = parse_param(reduction, "k1kfree:")? {
        instance_to_string(&WeightedInstance::unit(gen_k1kfree_hardness(inst.graph(), k)?))
    } else {
        return Err(usage(format!("unknown reduction '{reduction}'")));
    };
    emit(output, &text)?;
    Ok(0)
}

fn oracle(problem: OracleProblem, instance: &Path, c: Option<usize>, ell: Option<usize>, output: Option<&Path>) -> Outcome {
    let inst = parse_instance(instance)?;
    let record = |sol: &Solution| solution_to_string(&SolutionRecord::new(sol, "oracle", None, 1));
    match problem {
        OracleProblem::Mwis => emit(output, &record(&brute_mwis(&inst, ell)?))?,
        OracleProblem::Mwccs => {
            let c = c.ok_or_else(|| usage("oracle mwccs needs --c"))?;
            emit(output, &record(&brute_mwccs(&inst, c, ell)?))?
        }
        OracleProblem::Colorful => emit(output, &record(&brute_colorful_is(&inst)?))?,
        OracleProblem::Mcc => {
            let found = brute_multicolored_clique(&classes_of(&inst)?)?;
            emit(output, &format!("{found}\n"))?;
            return Ok(if found { 0 } else { EXIT_ABSENT });
        }
        OracleProblem::Hamiltonian => {
            let found = brute_hamiltonian_cycle(inst.graph())?;
            emit(output, &format!("{found}\n"))?;
            return Ok(if found { 0 } else { EXIT_ABSENT });
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve { problem } => solve(problem),
        Command::Recognize {
            class,
            instance,
            witness,
        } => recognize(&class, &instance, witness.as_deref()),
        Command::Generate { kind } => generate(kind),
        Command::Reduce {
            reduction,
            instance,
            output,
            names,
        } => reduce(&reduction, &instance, output.as_deref(), names.as_deref()),
        Command::Oracle {
            problem,
            instance,
            c,
            ell,
            output,
        } => oracle(problem, &instance, c, ell, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("iki: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
