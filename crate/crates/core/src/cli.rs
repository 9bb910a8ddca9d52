//! Command-line front end. Everything prints JSON on stdout unless
//! `--format table` is given. Mutation directions are 1-based here and
//! 0-based in the library.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::cluster::{exchange_graph, f_polynomial, Seed, SeedJson, DEFAULT_MAX_SEEDS};
use crate::laurent::Monomial;
use crate::qchar::{renormalize_and_tsub, trunc_qchar, validate_label, DynkinType, HeightFunction, PrimeLabel};
use crate::simplicity::{decompose_tensor, factorize_simple, simple_pair, SimplicityError};
use crate::verify::{initial_seed, labeled_graph, verify, Status};

#[derive(Parser, Debug)]
#[command(name = "clusterq", version, about = "Cluster algebras of types A and D and their q-characters")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
struct TypeRank {
    /// Dynkin type, A or D.
    #[arg(long = "type", value_parser = parse_type)]
    kind: DynkinType,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
    rank: u32,
}

impl TypeRank {
    fn height_function(&self) -> Result<HeightFunction, CliError> {
        HeightFunction::standard(self.kind, self.rank).map_err(usage)
    }
}

#[derive(Args, Debug, Clone)]
struct SeedSource {
    /// Seed JSON file (`-` for stdin); defaults to the model's initial seed.
    #[arg(long, conflicts_with_all = ["kind", "rank"])]
    seed: Option<String>,
    #[arg(long = "type", value_parser = parse_type, requires = "rank")]
    kind: Option<DynkinType>,
    #[arg(long, requires = "kind", value_parser = clap::value_parser!(u32).range(1..=12))]
    rank: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Applies mutations (1-based directions) to a seed.
    Mutate {
        #[command(flatten)]
        source: SeedSource,
        /// Directions in order of application.
        directions: Vec<usize>,
    },
    /// Enumerates cluster variables and clusters.
    Explore {
        #[command(flatten)]
        source: SeedSource,
        #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
        max_seeds: usize,
    },
    /// F-polynomials of all cluster variables, with their prime labels.
    Fpoly {
        #[command(flatten)]
        tr: TypeRank,
    },
    /// Truncated q-character of a prime label, e.g. `L(0,2)` or `L(0,1)+`.
    Qchar {
        #[command(flatten)]
        tr: TypeRank,
        label: String,
    },
    /// Whether the tensor product of two prime simples is simple.
    Compat {
        #[command(flatten)]
        tr: TypeRank,
        first: String,
        second: String,
    },
    /// Factors a dominant monomial such as `Y[1,1]*Y[2,4]` into primes.
    Factorize {
        #[command(flatten)]
        tr: TypeRank,
        monomial: String,
        /// Fail if a second factorization exists.
        #[arg(long)]
        check_unique: bool,
    },
    /// Composition factors of `L(m1) (x) L(m2)`.
    Tensor {
        #[command(flatten)]
        tr: TypeRank,
        first: String,
        second: String,
    },
    /// Runs every check for a type and rank.
    Verify {
        #[command(flatten)]
        tr: TypeRank,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn parse_type(s: &str) -> Result<DynkinType, String> {
    s.parse()
}

#[derive(Debug)]
enum CliError {
    /// Bad input: exit 2.
    Usage(String),
    /// Valid input whose check failed: exit 1.
    Failed(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

struct Output {
    json: Value,
    table: String,
    ok: bool,
}

impl Output {
    fn ok(json: Value, table: String) -> Self {
        Output { json, table, ok: true }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("JSON values serialize") + "\n",
                Format::Table => out.table,
            };
            // A closed pipe on stdout is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Mutate { source, directions } => mutate(&source, &directions),
        Command::Explore { source, max_seeds } => explore(&source, max_seeds),
        Command::Fpoly { tr } => fpoly(&tr),
        Command::Qchar { tr, label } => qchar(&tr, &label),
        Command::Compat { tr, first, second } => compat(&tr, &first, &second),
        Command::Factorize { tr, monomial, check_unique } => factorize(&tr, &monomial, check_unique),
        Command::Tensor { tr, first, second } => tensor(&tr, &first, &second),
        Command::Verify { tr, jobs } => verify_cmd(&tr, jobs),
    }
}

fn load_seed(source: &SeedSource) -> Result<Seed, CliError> {
    if let Some(path) = &source.seed {
        let text = if path == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(usage)?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?
        };
        let json: SeedJson = serde_json::from_str(&text).map_err(usage)?;
        return Seed::from_json(&json).map_err(usage);
    }
    match (source.kind, source.rank) {
        (Some(kind), Some(rank)) => {
            let hf = HeightFunction::standard(kind, rank).map_err(usage)?;
            Ok(initial_seed(&hf))
        }
        _ => Err(CliError::Usage("give --seed FILE or --type and --rank".into())),
    }
}

fn seed_table(seed: &Seed) -> String {
    let mut out = String::new();
    for (i, (x, row)) in seed.cluster().iter().zip(seed.matrix().rows()).enumerate() {
        let kind = if i < seed.matrix().num_mutable() { "" } else { "frozen" };
        let row: Vec<String> = row.iter().map(|b| format!("{b:>3}")).collect();
        out.push_str(&format!("{:>3} {kind:<6} [{}]  {x}\n", i + 1, row.join("")));
    }
    out
}

fn mutate(source: &SeedSource, directions: &[usize]) -> Result<Output, CliError> {
    let mut seed = load_seed(source)?;
    let r = seed.matrix().num_mutable();
    for &d in directions {
        if d == 0 || d > r {
            return Err(CliError::Usage(format!("direction {d} out of range 1..={r}")));
        }
        seed = seed.mutate(d - 1).map_err(usage)?;
    }
    let json = serde_json::to_value(seed.to_json()).expect("seed serializes");
    Ok(Output::ok(json, seed_table(&seed)))
}

fn explore(source: &SeedSource, max_seeds: usize) -> Result<Output, CliError> {
    let seed = load_seed(source)?;
    let graph = exchange_graph(&seed, max_seeds).map_err(usage)?;
    let variables: Vec<Value> = graph
        .variables
        .iter()
        .map(|v| json!({"id": v.id, "value": v.value.canonical_string(), "path": v.path.iter().map(|k| k + 1).collect::<Vec<_>>()}))
        .collect();
    let json = json!({
        "variables": graph.num_variables(),
        "clusters": graph.num_clusters(),
        "complete": graph.complete,
        "variable_list": variables,
        "cluster_list": graph.clusters,
    });
    let mut table = format!(
        "variables: {}\nclusters: {}\ncomplete: {}\n",
        graph.num_variables(),
        graph.num_clusters(),
        graph.complete
    );
    for v in &graph.variables {
        table.push_str(&format!("{:>4}  {}\n", v.id, v.value));
    }
    for c in &graph.clusters {
        table.push_str(&format!("{c:?}\n"));
    }
    Ok(Output { json, table, ok: graph.complete })
}

fn fpoly(tr: &TypeRank) -> Result<Output, CliError> {
    let hf = tr.height_function()?;
    let seed = Seed::principal(&hf.quiver_matrix()).map_err(usage)?;
    let lg = labeled_graph(&hf, &seed).map_err(CliError::Failed)?;
    let mut rows = Vec::new();
    let mut table = String::new();
    for ((var, label), name) in lg.graph.variables.iter().zip(&lg.primes).zip(&lg.names) {
        let f = f_polynomial(&var.value).map_err(|e| CliError::Failed(e.to_string()))?;
        table.push_str(&format!("{name:<12} {:<10} {f}\n", label.to_string()));
        rows.push(json!({"model": name, "label": label, "f_polynomial": f.canonical_string()}));
    }
    Ok(Output::ok(json!({"type": tr.kind, "rank": tr.rank, "variables": rows}), table))
}

fn parse_label(hf: &HeightFunction, s: &str) -> Result<PrimeLabel, CliError> {
    let label: PrimeLabel = s.parse().map_err(usage)?;
    validate_label(hf, label).map_err(usage)?;
    Ok(label)
}

fn parse_monomial(s: &str) -> Result<Monomial, CliError> {
    s.parse().map_err(usage)
}

fn qchar(tr: &TypeRank, label: &str) -> Result<Output, CliError> {
    let hf = tr.height_function()?;
    let label = parse_label(&hf, label)?;
    let chi = trunc_qchar(&hf, label).map_err(usage)?;
    let t = renormalize_and_tsub(&hf, &chi.value).map_err(usage)?;
    let json = json!({
        "label": label,
        "highest": chi.highest.to_string(),
        "qchar": chi.value.canonical_string(),
        "tchar": t.canonical_string(),
    });
    let table = format!("label:   {label}\nhighest: {}\nqchar:   {}\ntchar:   {t}\n", chi.highest, chi.value);
    Ok(Output::ok(json, table))
}

fn compat(tr: &TypeRank, first: &str, second: &str) -> Result<Output, CliError> {
    let hf = tr.height_function()?;
    let (p, q) = (parse_label(&hf, first)?, parse_label(&hf, second)?);
    let v = simple_pair(&hf, p, q);
    let table = format!("{p} {q}: {} (case {})\n", if v.simple { "simple" } else { "not simple" }, v.case);
    Ok(Output::ok(serde_json::to_value(v).expect("verdict serializes"), table))
}

fn factorize(tr: &TypeRank, monomial: &str, check_unique: bool) -> Result<Output, CliError> {
    let hf = tr.height_function()?;
    let m = parse_monomial(monomial)?;
    match factorize_simple(&hf, &m, check_unique) {
        Ok(f) => {
            let names: Vec<String> = f.iter().map(PrimeLabel::to_string).collect();
            let table = format!("{m} = {}\n", if names.is_empty() { "1".into() } else { names.join(" * ") });
            Ok(Output::ok(json!({"monomial": m.to_string(), "factors": f}), table))
        }
        Err(e @ (SimplicityError::NotDominant(_) | SimplicityError::NotInWindow(_) | SimplicityError::Qchar(_))) => {
            Err(usage(e))
        }
        Err(e) => Err(CliError::Failed(e.to_string())),
    }
}

fn product_name(labels: &[PrimeLabel]) -> String {
    if labels.is_empty() {
        "1".into()
    } else {
        labels.iter().map(PrimeLabel::to_string).collect::<Vec<_>>().join("*")
    }
}

fn tensor(tr: &TypeRank, first: &str, second: &str) -> Result<Output, CliError> {
    let hf = tr.height_function()?;
    let (m1, m2) = (parse_monomial(first)?, parse_monomial(second)?);
    let factors = decompose_tensor(&hf, &m1, &m2).map_err(|e| match e {
        SimplicityError::NotDominant(_) | SimplicityError::NotInWindow(_) | SimplicityError::Qchar(_) => usage(e),
        e => CliError::Failed(e.to_string()),
    })?;
    let mut map = BTreeMap::new();
    let mut table = String::new();
    for (labels, mult) in &factors {
        let name = product_name(labels);
        table.push_str(&format!("{mult:>4}  {name}\n"));
        map.insert(name, mult.to_i64().map_or_else(|| Value::from(mult.to_string()), Value::from));
    }
    Ok(Output::ok(json!({"factors": map}), table))
}

fn verify_cmd(tr: &TypeRank, jobs: usize) -> Result<Output, CliError> {
    tr.height_function()?;
    let report = verify(tr.kind, tr.rank, jobs);
    let mut table = String::new();
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        table.push_str(&format!("{tag}  {:<44} {}\n", c.name, c.details));
    }
    table.push_str(&format!(
        "{} passed, {} failed, {} skipped\n",
        report.summary.pass, report.summary.fail, report.summary.skipped
    ));
    let ok = report.ok();
    Ok(Output { json: serde_json::to_value(&report).expect("report serializes"), table, ok })
}
