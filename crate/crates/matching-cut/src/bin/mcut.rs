//! Command-line front end: decide matching cut on graph files, verify
//! claimed cuts, generate structured instances, and print graph statistics.
//!
//! Exit codes: decide uses 0 for yes, 1 for no, 2 for errors (including
//! malformed files and exceeded resource caps); verify uses 0 for valid,
//! 1 for invalid, 2 for anything that cannot be checked.

use clap::{Args, Parser, Subcommand, ValueEnum};
use matching_cut::{
    build_chain, first_bad_p3, parse_cut, parse_graph, sample, solve_bipartite_diam3_phase1,
    solve_diameter2, solve_exact_with, verify_matching_cut, write_graph, write_recipe,
    write_verdict, dispatch_with_config, solve_bipartite_diam3_phase2, bipartite_gadget_diam4,
    bipartite_gadget_diam_d, gadget_diam3, gadget_diam_d, ExactConfig, GadgetRecipe, Graph,
    GraphClass, Phase1Outcome, Verdict, DEFAULT_SAMPLE_ATTEMPTS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mcut",
    version,
    about = "Decide, verify, and generate matching-cut instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph file has a matching cut
    Decide(DecideArgs),
    /// Check a claimed cut against a graph file
    Verify {
        /// Graph file
        graph: PathBuf,
        /// Cut file (`s yes` with X and Y lines)
        cut: PathBuf,
    },
    /// Write a structured instance to a file
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Print size, diameter, bipartiteness, and bridge presence
    Stats {
        /// Graph file
        path: PathBuf,
    },
}

#[derive(Args)]
struct DecideArgs {
    /// Graph file (or use --dir)
    #[arg(required_unless_present = "dir", conflicts_with = "dir")]
    path: Option<PathBuf>,
    /// Decide every file in this directory, ordered by filename
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Force a particular decision procedure
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Vertex-count ceiling for the brute-force oracle inside the exact path
    #[arg(long)]
    oracle_cap: Option<usize>,
    /// Print only yes/no
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Pick automatically from the graph's structure
    Auto,
    /// Diameter-2 decider (errors if preconditions fail)
    Diam2,
    /// Bipartite diameter-3 decider, both phases
    Bip3,
    /// Branching search with oracle fallback
    Exact,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Clique-block gadget of diameter 3 from a source graph
    #[command(name = "gadget3")]
    Gadget3 { input: PathBuf, output: PathBuf },
    /// Clique-block gadget padded to a chosen diameter
    #[command(name = "gadget-d")]
    GadgetD {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        diameter: usize,
    },
    /// Biclique-block gadget of diameter 4 from a bipartite source
    #[command(name = "bip-gadget4")]
    BipGadget4 { input: PathBuf, output: PathBuf },
    /// Biclique-block gadget padded to a chosen diameter
    #[command(name = "bip-gadget-d")]
    BipGadgetD {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        diameter: usize,
    },
    /// The K_{2,2} chain used for diameter padding
    #[command(name = "chain")]
    Chain {
        output: PathBuf,
        #[arg(long)]
        diameter: usize,
    },
    /// Cycle graph
    #[command(name = "cycle")]
    Cycle {
        output: PathBuf,
        #[arg(long)]
        length: usize,
    },
    /// Erdos-Renyi graph rejection-sampled into a class
    #[command(name = "random")]
    Random {
        output: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = ClassArg::Connected)]
        class: ClassArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_ATTEMPTS)]
        attempts: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    /// Connected
    Connected,
    /// Connected with diameter at most 2
    Diam2,
    /// Connected bipartite with diameter at most 3
    BipDiam3,
}

impl From<ClassArg> for GraphClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Connected => GraphClass::Connected,
            ClassArg::Diam2 => GraphClass::Diameter2,
            ClassArg::BipDiam3 => GraphClass::BipartiteDiam3,
        }
    }
}

struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl CliError {
    fn new(msg: impl fmt::Display) -> Self {
        CliError(msg.to_string())
    }

    fn in_file(path: &Path, msg: impl fmt::Display) -> Self {
        CliError(format!("{}: {}", path.display(), msg))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            2
        }
    };
    ExitCode::from(code)
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Decide(args) => decide(args),
        Command::Verify { graph, cut } => verify(&graph, &cut),
        Command::Generate { kind } => generate(kind).map(|()| 0),
        Command::Stats { path } => stats(&path).map(|()| 0),
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::in_file(path, e))?;
    parse_graph(&text).map_err(|e| CliError::in_file(path, e))
}

fn decide(args: DecideArgs) -> Result<u8, CliError> {
    let config = ExactConfig {
        oracle_cap: args.oracle_cap.unwrap_or(ExactConfig::default().oracle_cap),
        ..ExactConfig::default()
    };
    if let Some(dir) = &args.dir {
        return decide_dir(dir, &args, config);
    }
    let path = args.path.as_ref().expect("clap requires path without --dir");
    let verdict = decide_file(path, args.method, config)?;
    if args.quiet {
        println!("{}", if verdict.has_matching_cut() { "yes" } else { "no" });
    } else {
        print!("{}", write_verdict(&verdict));
    }
    Ok(if verdict.has_matching_cut() { 0 } else { 1 })
}

fn decide_file(path: &Path, method: MethodArg, config: ExactConfig) -> Result<Verdict, CliError> {
    let g = read_graph(path)?;
    let verdict = match method {
        MethodArg::Auto => dispatch_with_config(&g, config),
        MethodArg::Diam2 => solve_diameter2(&g),
        MethodArg::Bip3 => {
            let bp = g
                .bipartition()
                .ok_or_else(|| CliError::in_file(path, "graph is not bipartite"))?;
            match solve_bipartite_diam3_phase1(&g, &bp) {
                Ok(Phase1Outcome::Found(v)) => Ok(v),
                Ok(Phase1Outcome::Exhausted(token)) => {
                    solve_bipartite_diam3_phase2(&g, &bp, token)
                }
                Err(e) => Err(e),
            }
        }
        MethodArg::Exact => solve_exact_with(&g, config),
    };
    verdict.map_err(|e| CliError::in_file(path, e))
}

fn decide_dir(dir: &Path, args: &DecideArgs, config: ExactConfig) -> Result<u8, CliError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::in_file(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let mut worst = 0u8;
    for path in &paths {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        match decide_file(path, args.method, config) {
            Ok(verdict) => {
                let answer = if verdict.has_matching_cut() { "yes" } else { "no" };
                if args.quiet {
                    println!("{} {}", name, answer);
                } else {
                    println!("c {}", name);
                    print!("{}", write_verdict(&verdict));
                }
                if !verdict.has_matching_cut() {
                    worst = worst.max(1);
                }
            }
            Err(err) => {
                eprintln!("error: {}", err);
                worst = 2;
            }
        }
    }
    Ok(worst)
}

fn verify(graph_path: &Path, cut_path: &Path) -> Result<u8, CliError> {
    let g = read_graph(graph_path)?;
    let text =
        std::fs::read_to_string(cut_path).map_err(|e| CliError::in_file(cut_path, e))?;
    let cut = parse_cut(&text)
        .map_err(|e| CliError::in_file(cut_path, e))?
        .ok_or_else(|| CliError::in_file(cut_path, "cut file says `s no`; nothing to verify"))?;
    // partition-level defects (index out of range, overlap, missed vertices,
    // empty side) cannot be witnessed by a bad P3, so they exit 2
    let valid = verify_matching_cut(&g, &cut).map_err(|e| CliError::in_file(cut_path, e))?;
    if valid {
        println!("valid");
        Ok(0)
    } else {
        println!("invalid");
        let (u, center, w) = first_bad_p3(&g, &cut)
            .expect("invalid partitioned cut always has a bad P3")
            .expect("invalid partitioned cut always has a bad P3");
        println!("bad_p3 {} {} {}", u, center, w);
        Ok(1)
    }
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::in_file(path, e))
}

fn write_gadget(output: &Path, gadget: &Graph, recipe: &GadgetRecipe) -> Result<(), CliError> {
    write_output(output, &write_graph(gadget))?;
    let mut sidecar = output.as_os_str().to_owned();
    sidecar.push(".recipe");
    write_output(Path::new(&sidecar), &write_recipe(recipe))
}

fn generate(kind: GenerateKind) -> Result<(), CliError> {
    match kind {
        GenerateKind::Gadget3 { input, output } => {
            let g = read_graph(&input)?;
            let (gadget, recipe) = gadget_diam3(&g).map_err(|e| CliError::in_file(&input, e))?;
            write_gadget(&output, &gadget, &recipe)
        }
        GenerateKind::GadgetD { input, output, diameter } => {
            let g = read_graph(&input)?;
            let (gadget, recipe) =
                gadget_diam_d(&g, diameter).map_err(|e| CliError::in_file(&input, e))?;
            write_gadget(&output, &gadget, &recipe)
        }
        GenerateKind::BipGadget4 { input, output } => {
            let g = read_graph(&input)?;
            let bp = g
                .bipartition()
                .ok_or_else(|| CliError::in_file(&input, "graph is not bipartite"))?;
            let (gadget, recipe) =
                bipartite_gadget_diam4(&g, &bp).map_err(|e| CliError::in_file(&input, e))?;
            write_gadget(&output, &gadget, &recipe)
        }
        GenerateKind::BipGadgetD { input, output, diameter } => {
            let g = read_graph(&input)?;
            let bp = g
                .bipartition()
                .ok_or_else(|| CliError::in_file(&input, "graph is not bipartite"))?;
            let (gadget, recipe) = bipartite_gadget_diam_d(&g, &bp, diameter)
                .map_err(|e| CliError::in_file(&input, e))?;
            write_gadget(&output, &gadget, &recipe)
        }
        GenerateKind::Chain { output, diameter } => {
            let chain = build_chain(diameter).map_err(CliError::new)?;
            write_output(&output, &write_graph(&chain))
        }
        GenerateKind::Cycle { output, length } => {
            let cycle = Graph::cycle(length).map_err(CliError::new)?;
            write_output(&output, &write_graph(&cycle))
        }
        GenerateKind::Random { output, n, p, class, seed, attempts } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = sample(class.into(), n, p, &mut rng, attempts).map_err(CliError::new)?;
            write_output(&output, &write_graph(&g))
        }
    }
}

fn stats(path: &Path) -> Result<(), CliError> {
    let g = read_graph(path)?;
    println!("n {}", g.vertex_count());
    println!("m {}", g.edge_count());
    println!("diameter {}", g.diameter());
    println!("bipartite {}", g.bipartition().is_some());
    println!("bridge {}", g.find_bridge().is_some());
    Ok(())
}
