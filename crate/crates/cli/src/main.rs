use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use starpcg::oracle::{brute_force_gap_free, random_graph, random_star_pcg, seeded};
use starpcg::orderings::{consecutive_ordering, contiguous_ordering, parse_family};
use starpcg::rational::parse_rational;
use starpcg::witness::{outcome_json, parse_witness, witness_json};
use starpcg::{
    evaluate_pcr, find_gap, parse_graph, parse_tree, recognize, verify_witness, Graph, Permutation,
    RecognitionOutcome,
};

/// Star pairwise-compatibility graph recognition with exact witnesses.
#[derive(Parser)]
#[command(name = "starpcg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership and print a witness or a refusal.
    Recognize {
        graph: PathBuf,
        /// Emit JSON; to stdout without a value, else to the given file.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
    },
    /// Evaluate a weighted tree against a distance window.
    Eval {
        tree: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dmin: String,
        #[arg(long, allow_hyphen_values = true)]
        dmax: String,
    },
    /// Check a witness document against a graph.
    Verify { graph: PathBuf, witness: PathBuf },
    /// Look for a gap in an ordering.
    Gapcheck {
        graph: PathBuf,
        /// Comma-separated vertex ids by position.
        #[arg(long)]
        order: String,
    },
    /// Exhaustive search for a gap-free ordering.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = starpcg::oracle::DEFAULT_GRAPH_LIMIT)]
        limit: usize,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Sample a star-PCG from random weights.
        #[arg(long, conflicts_with = "p")]
        star_pcg: bool,
        /// Edge probability of a plain random graph.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Consecutive ordering of a set family.
    C1p {
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Contiguous ordering of a set family.
    Contiguous {
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Exit status of a completed command.
enum Verdict {
    Yes,
    No,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn parse_order(text: &str) -> Result<Permutation> {
    let ids = text
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| anyhow!("bad vertex id `{t}` in --order")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Permutation::new(ids)?)
}

fn ordering_line(p: &Permutation) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn run_recognize(graph: &Path, json: Option<&str>) -> Result<Verdict> {
    let g = load_graph(graph)?;
    let outcome = recognize(&g);
    let doc = outcome_json(&outcome);
    match json {
        Some("-") => print_json(&doc),
        Some(path) => {
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            fs::write(path, text).with_context(|| format!("cannot write {path}"))?;
        }
        None => {}
    }
    if json != Some("-") {
        match &outcome {
            RecognitionOutcome::Yes(a) => {
                let w = &a.witness;
                println!("star-PCG: yes");
                println!("ordering: {}", ordering_line(&a.ordering));
                let weights: Vec<String> = w.weights.iter().map(|x| x.to_string()).collect();
                println!("weights: {}", weights.join(" "));
                println!("window: [{}, {}]", w.dmin, w.dmax);
            }
            RecognitionOutcome::No(r) => {
                println!("star-PCG: no");
                println!("certificate: {}", r.kind.as_str());
                println!("details: {}", r.details);
                if r.internal {
                    println!("internal failure: yes");
                }
            }
        }
    }
    Ok(if outcome.is_yes() { Verdict::Yes } else { Verdict::No })
}

fn run_eval(tree: &Path, dmin: &str, dmax: &str) -> Result<Verdict> {
    let t = parse_tree(&read(tree)?).with_context(|| format!("{}", tree.display()))?;
    let lo = parse_rational(dmin).ok_or_else(|| anyhow!("bad --dmin `{dmin}`"))?;
    let hi = parse_rational(dmax).ok_or_else(|| anyhow!("bad --dmax `{dmax}`"))?;
    let g = evaluate_pcr(&t, &lo, &hi)?;
    print!("{}", g.to_text());
    Ok(Verdict::Yes)
}

fn run_verify(graph: &Path, witness: &Path) -> Result<Verdict> {
    let g = load_graph(graph)?;
    let (sigma, pcr) = parse_witness(&read(witness)?).with_context(|| format!("{}", witness.display()))?;
    if sigma.len() != g.n() {
        bail!("witness orders {} vertices, graph has {}", sigma.len(), g.n());
    }
    if verify_witness(&g, &pcr, &sigma) {
        println!("witness valid");
        Ok(Verdict::Yes)
    } else {
        println!("witness invalid");
        Ok(Verdict::No)
    }
}

fn run_gapcheck(graph: &Path, order: &str) -> Result<Verdict> {
    let g = load_graph(graph)?;
    let sigma = parse_order(order)?;
    if sigma.len() != g.n() {
        bail!("--order lists {} vertices, graph has {}", sigma.len(), g.n());
    }
    match find_gap(&g, &sigma) {
        None => {
            println!("gap-free");
            Ok(Verdict::Yes)
        }
        Some(cert) => {
            print_json(&serde_json::to_value(&cert)?);
            Ok(Verdict::No)
        }
    }
}

fn run_oracle(graph: &Path, limit: usize) -> Result<Verdict> {
    let g = load_graph(graph)?;
    match brute_force_gap_free(&g, limit)? {
        Some(sigma) => {
            println!("{}", ordering_line(&sigma));
            Ok(Verdict::Yes)
        }
        None => {
            println!("none");
            Ok(Verdict::No)
        }
    }
}

fn run_gen(n: usize, seed: u64, star_pcg: bool, p: Option<f64>, format: Format) -> Result<Verdict> {
    let mut rng = seeded(seed);
    let (g, witness) = if star_pcg {
        if n == 0 {
            bail!("--star-pcg needs --n at least 1");
        }
        let (g, pcr, sigma) = random_star_pcg(n, &mut rng);
        (g, Some(witness_json(&sigma, &pcr)))
    } else {
        let p = p.ok_or_else(|| anyhow!("gen needs --star-pcg or --p"))?;
        if !(0.0..=1.0).contains(&p) {
            bail!("--p must lie in [0, 1]");
        }
        (random_graph(n, p, &mut rng), None)
    };
    match format {
        Format::Text => print!("{}", g.to_text()),
        Format::Json => print_json(&json!({
            "n": g.n(),
            "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
            "witness": witness,
        })),
    }
    Ok(Verdict::Yes)
}

fn run_family(family: &Path, format: Format, contiguous: bool) -> Result<Verdict> {
    let f = parse_family(&read(family)?).with_context(|| format!("{}", family.display()))?;
    let found = if contiguous {
        contiguous_ordering(&f)
    } else {
        consecutive_ordering(&f)
    };
    match format {
        Format::Text => match &found {
            Some(p) => println!("{}", ordering_line(p)),
            None => println!("none"),
        },
        Format::Json => print_json(&json!({ "ordering": found.as_ref().map(|p| p.as_slice()) })),
    }
    Ok(if found.is_some() { Verdict::Yes } else { Verdict::No })
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Recognize { graph, json } => run_recognize(&graph, json.as_deref()),
        Command::Eval { tree, dmin, dmax } => run_eval(&tree, &dmin, &dmax),
        Command::Verify { graph, witness } => run_verify(&graph, &witness),
        Command::Gapcheck { graph, order } => run_gapcheck(&graph, &order),
        Command::Oracle { graph, limit } => run_oracle(&graph, limit),
        Command::Gen {
            n,
            seed,
            star_pcg,
            p,
            format,
        } => run_gen(n, seed, star_pcg, p, format),
        Command::C1p { family, format } => run_family(&family, format, false),
        Command::Contiguous { family, format } => run_family(&family, format, true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
