use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diaglab::bounds::{lower_bound_certificate, upper_bound_from_witness, KappaInput};
use diaglab::diagnosability::brute_force_diagnosability_with;
use diaglab::fault::m_connectivity_with;
use diaglab::formula::{catalog_json, entry};
use diaglab::verify::{run, Suite, VerifyOptions, DEFAULT_SEED};
use diaglab::witness::{arrangement_witness, hypercube_star_witness, nk_star_witness, ArrangementShape, WitnessPair};
use diaglab::{DiagnosticModel, FaultKind, FaultModelSpec, Graph, SearchOptions, TopologySpec};

#[derive(Parser)]
#[command(name = "diaglab", version, about = "Connectivity and diagnosability of interconnection networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the document to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for exhaustive searches.
    #[arg(long, env = "DIAGLAB_WORKERS", default_value_t = 1, global = true)]
    workers: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a topology in the JSON interchange format.
    Topology(GraphArgs),
    /// Brute-force the diagnosability under a fault model.
    Diag(DiagArgs),
    /// Brute-force the minimum cut size under a fault model.
    Kappa(KappaArgs),
    /// Upper and lower bound certificates.
    Bound(BoundArgs),
    /// Build and validate a family's seed-set witness.
    Witness(WitnessArgs),
    /// Dump the formula catalog, or evaluate one entry.
    Catalog(CatalogArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// hypercube, nk-star or arrangement.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Args)]
struct FaultArgs {
    /// unrestricted, conditional, g-good-neighbor or g-extra.
    #[arg(long, default_value = "unrestricted")]
    fault: String,
    #[arg(long, default_value_t = 0)]
    g: usize,
}

#[derive(Args)]
struct DiagArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    fault: FaultArgs,
    /// pmc or mmstar.
    #[arg(long)]
    model: String,
    /// Largest faulty-set size searched.
    #[arg(long)]
    cap: Option<usize>,
    /// Disable vertex-transitivity anchoring.
    #[arg(long)]
    no_symmetry: bool,
}

#[derive(Args)]
struct KappaArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    fault: FaultArgs,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    fault: FaultArgs,
    #[arg(long)]
    model: String,
    /// Cap for the connectivity search behind the lower bound.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 1)]
    g: usize,
    /// Arrangement seed shape: p3, c3, c4 or p4.
    #[arg(long)]
    shape: Option<String>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Entry to evaluate; without it the whole catalog is listed.
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// formulas, relations, constructions, oracles or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random pairs per graph for the oracle comparison.
    #[arg(long, default_value_t = 100_000)]
    pairs: usize,
}

impl GraphArgs {
    fn spec(&self) -> anyhow::Result<TopologySpec> {
        let mut params = BTreeMap::from([("n".to_string(), self.n)]);
        if let Some(k) = self.k {
            params.insert("k".into(), k);
        }
        Ok(TopologySpec::from_family_params(&self.family, &params)?)
    }

    fn build(&self) -> anyhow::Result<(TopologySpec, Graph)> {
        let spec = self.spec()?;
        let graph = spec.generate()?;
        Ok((spec, graph))
    }
}

impl FaultArgs {
    fn spec(&self) -> anyhow::Result<FaultModelSpec> {
        Ok(FaultModelSpec::new(FaultKind::parse(&self.fault)?, self.g)?)
    }
}

fn progress(msg: &str) {
    eprintln!("diaglab: {msg}");
}

/// Result of a command: the document and whether every check in it passed.
struct Outcome {
    doc: Value,
    pass: bool,
}

fn ok(doc: Value) -> anyhow::Result<Outcome> {
    Ok(Outcome { doc, pass: true })
}

fn topology(args: &GraphArgs) -> anyhow::Result<Outcome> {
    let (_, graph) = args.build()?;
    ok(serde_json::to_value(graph.to_document())?)
}

fn diag(args: &DiagArgs, workers: usize) -> anyhow::Result<Outcome> {
    let (spec, graph) = args.graph.build()?;
    let model = args.fault.spec()?;
    let diagnostic = DiagnosticModel::parse(&args.model)?;
    let cap = args.cap.unwrap_or(graph.vertex_count());
    let opts = SearchOptions::with_cap(cap).workers(workers).symmetry(!args.no_symmetry);
    progress(&format!("searching {} for {model} pairs up to size {cap} under {}", spec.name(), diagnostic.as_str()));
    let result = brute_force_diagnosability_with(&graph, model, diagnostic, &opts)?;
    let mut doc = json!({ "graph": spec.name() });
    merge(&mut doc, result.to_json(&graph));
    ok(doc)
}

fn kappa(args: &KappaArgs, workers: usize) -> anyhow::Result<Outcome> {
    let (spec, graph) = args.graph.build()?;
    let model = args.fault.spec()?;
    let opts = SearchOptions { cap: args.cap, ..SearchOptions::default() }.workers(workers);
    progress(&format!("searching {} for the smallest {model} cut", spec.name()));
    let result = m_connectivity_with(&graph, model, &opts)?;
    let mut doc = json!({ "graph": spec.name(), "model": model });
    merge(&mut doc, result.to_json(&graph));
    ok(doc)
}

fn family_witness(spec: TopologySpec, g: usize, shape: Option<&str>) -> anyhow::Result<WitnessPair> {
    Ok(match spec {
        TopologySpec::Hypercube { n } => hypercube_star_witness(n, g)?,
        TopologySpec::NkStar { n, k } => nk_star_witness(n, k, g)?,
        TopologySpec::Arrangement { n, k } => {
            let shape = match (shape, g) {
                (Some(s), _) => ArrangementShape::parse(s)?,
                (None, 2) => ArrangementShape::P3,
                (None, 3) => ArrangementShape::C4,
                (None, _) => bail!("arrangement witnesses need --shape, or g = 2 or 3"),
            };
            arrangement_witness(n, k, shape)?
        }
    })
}

fn witness(args: &WitnessArgs) -> anyhow::Result<Outcome> {
    let spec = args.graph.spec()?;
    let w = family_witness(spec, args.g, args.shape.as_deref())?;
    let doc = w.to_json();
    let pass = w.size_matches() && w.validation.as_ref().is_some_and(|v| v.passed());
    Ok(Outcome { doc, pass })
}

fn bound(args: &BoundArgs, workers: usize) -> anyhow::Result<Outcome> {
    let (spec, graph) = args.graph.build()?;
    let model = args.fault.spec()?;
    let diagnostic = DiagnosticModel::parse(&args.model)?;
    let upper = family_witness(spec, model.g, None)
        .and_then(|w| Ok(upper_bound_from_witness(&graph, &w.y, model)?))
        .map(|c| c.to_json(&graph))
        .unwrap_or_else(|e| json!({ "error": e.to_string() }));
    progress(&format!("computing the {model} connectivity of {}", spec.name()));
    let opts = SearchOptions { cap: args.cap, ..SearchOptions::default() }.workers(workers);
    let lower = m_connectivity_with(&graph, model, &opts)
        .map_err(anyhow::Error::from)
        .and_then(|k| Ok(lower_bound_certificate(&graph, model, diagnostic, KappaInput::Computed(k))?))
        .map(|c| c.to_json(&graph))
        .unwrap_or_else(|e| json!({ "error": e.to_string() }));
    ok(json!({ "graph": spec.name(), "model": model, "diagnostic": diagnostic, "upper": upper, "lower": lower }))
}

fn catalog(args: &CatalogArgs) -> anyhow::Result<Outcome> {
    let Some(id) = &args.id else {
        return ok(catalog_json());
    };
    let e = entry(id)?;
    let n = args.n.context("--n is required to evaluate an entry")?;
    let value = e.evaluate(n, args.k, args.g)?;
    let mut doc = e.to_json();
    doc["params"] = json!({ "n": n, "k": args.k, "g": args.g });
    doc["value"] = serde_json::to_value(value)?;
    ok(doc)
}

fn verify(args: &VerifyArgs, workers: usize) -> anyhow::Result<Outcome> {
    let suite = Suite::parse(&args.suite)?;
    let opts = VerifyOptions { seed: args.seed, workers, random_pairs: args.pairs, ..VerifyOptions::default() };
    progress(&format!("running the {} suite with seed {}", args.suite, args.seed));
    let report = run(suite, &opts)?;
    for c in report.failures() {
        progress(&format!("FAIL {}", c.name));
    }
    Ok(Outcome { pass: report.pass, doc: serde_json::to_value(report)? })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn clip(mut s: String) -> String {
    const WIDTH: usize = 72;
    if s.chars().count() > WIDTH {
        s = s.chars().take(WIDTH - 3).collect::<String>() + "...";
    }
    s
}

fn table(rows: &[Value]) -> String {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map_or_else(|| "-".into(), |v| clip(scalar(v)))).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |items: &[String]| {
        items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut out = vec![line(&cols)];
    out.push(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.extend(cells.iter().map(|r| line(r)));
    out.join("\n")
}

fn render_table(doc: &Value) -> String {
    match doc {
        Value::Array(rows) => table(rows),
        Value::Object(map) => {
            let mut out = Vec::new();
            let mut nested = Vec::new();
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                match v {
                    Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                        nested.push(format!("{k}:\n{}", table(rows)))
                    }
                    _ => out.push(format!("{k:<width$}  {}", scalar(v))),
                }
            }
            out.extend(nested);
            out.join("\n")
        }
        other => scalar(other),
    }
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    if cli.workers == 0 {
        bail!("--workers must be at least 1");
    }
    match &cli.command {
        Command::Topology(a) => topology(a),
        Command::Diag(a) => diag(a, cli.workers),
        Command::Kappa(a) => kappa(a, cli.workers),
        Command::Bound(a) => bound(a, cli.workers),
        Command::Witness(a) => witness(a),
        Command::Catalog(a) => catalog(a),
        Command::Verify(a) => verify(a, cli.workers),
    }
}

fn emit(cli: &Cli, doc: &Value) -> anyhow::Result<()> {
    let mut text = match cli.format {
        Format::Json => serde_json::to_string_pretty(doc)?,
        Format::Table => render_table(doc),
    };
    text.push('\n');
    match &cli.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|o| emit(&cli, &o.doc).map(|()| o.pass));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("diaglab: error: {e:#}");
            ExitCode::from(2)
        }
    }
}
