//! `equipart` — analyze regular graphs, evaluate spectral extremal bounds,
//! verify and search perfect 2-colorings, and run exhaustive oracles.

use clap::{Parser, Subcommand, ValueEnum};
use equipart::bounds::{
    compare_new_vs_hoffman, cut_size_bounds, eppc_size_bound, expander_mixing,
    hamming_type, hoffman_average, independent_sigma2_max, internal_edge_bounds,
    krotov_sigma2,
};
use equipart::equitable::{quotient_second_eigenvalue, verify_two_coloring};
use equipart::families::{generate_family, Family};
use equipart::io::{parse_edge_list, parse_graph6, parse_vertex_set};
use equipart::report::{
    ColoringEntry, GraphSummary, OracleSummary, SpectrumEntry, Witness,
};
use equipart::search::{brute_force_oracle, enumerate_perfect_two_colorings};
use equipart::spectral::{eigen_decompose_with, eigenfunction_shift_test, DEFAULT_TOLERANCE};
use equipart::{
    BoundReport, Graph, Objective, Rat, ReportDocument, SearchConstraints, Spectrum,
    VertexSet,
};
use std::fmt;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "equipart", version, about)]
struct Cli {
    /// Graph source: a file path, or an inline "family:name[:params…]" spec
    #[arg(long, global = true)]
    input: Option<String>,

    /// Input format; inferred from the input when omitted
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Vertex subset: comma-separated indices or a binary string of length n
    #[arg(long, global = true)]
    set: Option<String>,

    /// σ₂ cap β, as an integer or "p/q"
    #[arg(long, global = true, value_parser = parse_rat)]
    beta: Option<Rat>,

    /// Average-degree hypothesis a, as an integer or "p/q"
    #[arg(long, global = true, value_parser = parse_rat)]
    a: Option<Rat>,

    /// Emit the report as JSON instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Eigensolver tolerance
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,

    /// Reject graphs larger than this
    #[arg(long, global = true)]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    G6,
    El,
    Family,
}

#[derive(Subcommand)]
enum Command {
    /// Graph summary: regularity, spectrum, amply-regular parameters
    Analyze,
    /// Evaluate every applicable bound against the given subset
    Bounds,
    /// Check whether {S, V∖S} is an equitable partition
    Verify,
    /// Enumerate all perfect 2-colorings
    Search,
    /// Exhaustive subset scan for an extremal objective
    Oracle {
        #[arg(long, value_enum, default_value_t = OracleObjective::All)]
        objective: OracleObjective,
    },
    /// Compare the σ₂-based density bound against the Hoffman density
    Compare,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleObjective {
    All,
    MaxIndependent,
    MaxCut,
    /// max |S| with σ(S) ≤ a
    MaxSigma,
    /// max |S| with σ(S) = a and σ₂(S) ≤ β
    MaxSigmaSigma2,
}

enum CliError {
    /// input could not be parsed — exit code 2
    Parse(String),
    /// a documented precondition was violated — exit code 1
    Precondition(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

fn parse_rat(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| format!("bad numerator {num:?}"))?;
            let den: i64 = den.trim().parse().map_err(|_| format!("bad denominator {den:?}"))?;
            if den == 0 {
                return Err("zero denominator".into());
            }
            Ok(Rat::new(num, den))
        }
        None => text
            .parse::<i64>()
            .map(Rat::from)
            .map_err(|_| format!("expected an integer or p/q, got {text:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("EQUIPART_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    match run(&cli) {
        Ok(doc) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                print_human(&doc);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("equipart: {err}");
            match err {
                CliError::Precondition(_) => ExitCode::from(1),
                CliError::Parse(_) => ExitCode::from(2),
            }
        }
    }
}

fn load_graph(cli: &Cli) -> Result<Graph, CliError> {
    let input = cli
        .input
        .as_deref()
        .ok_or_else(|| CliError::Parse("--input is required".into()))?;
    let format = match cli.format {
        Some(f) => f,
        None if input.starts_with("family:") => Format::Family,
        None if input.ends_with(".g6") => Format::G6,
        None => Format::El,
    };
    let g = match format {
        Format::Family => {
            let mut parts = input.split(':');
            if parts.next() != Some("family") {
                return Err(CliError::Parse(format!(
                    "family spec must look like family:name[:params…], got {input:?}"
                )));
            }
            let name = parts
                .next()
                .ok_or_else(|| CliError::Parse("missing family name".into()))?;
            let family = Family::from_str(name).map_err(|e| CliError::Parse(e.to_string()))?;
            let params: Vec<usize> = parts
                .map(|p| {
                    p.parse()
                        .map_err(|_| CliError::Parse(format!("bad family parameter {p:?}")))
                })
                .collect::<Result<_, _>>()?;
            generate_family(family, &params).map_err(|e| CliError::Parse(e.to_string()))?
        }
        Format::G6 => {
            let bytes = std::fs::read(input)
                .map_err(|e| CliError::Parse(format!("{input}: {e}")))?;
            parse_graph6(&bytes).map_err(|e| CliError::Parse(format!("{input}: {e}")))?
        }
        Format::El => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| CliError::Parse(format!("{input}: {e}")))?;
            parse_edge_list(&text).map_err(|e| CliError::Parse(format!("{input}: {e}")))?
        }
    };
    if let Some(max_n) = cli.max_n {
        if g.n() > max_n {
            return Err(CliError::Precondition(format!(
                "graph has {} vertices, --max-n is {max_n}",
                g.n()
            )));
        }
    }
    Ok(g)
}

fn graph_summary(g: &Graph) -> GraphSummary {
    let (amply, rejection) = match g.detect_amply_regular() {
        Ok(params) => (Some((&params).into()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    GraphSummary {
        n: g.n(),
        edge_count: g.edge_count(),
        regular: g.is_regular(),
        connected: g.is_connected(),
        amply_regular: amply,
        amply_regular_rejection: rejection,
    }
}

fn spectrum_entries(spec: &Spectrum) -> Vec<SpectrumEntry> {
    spec.spaces
        .iter()
        .map(|space| SpectrumEntry {
            value: space.value,
            multiplicity: space.multiplicity(),
            integral: space.integral,
        })
        .collect()
}

fn subset_arg(cli: &Cli, g: &Graph) -> Result<VertexSet, CliError> {
    let text = cli
        .set
        .as_deref()
        .ok_or_else(|| CliError::Parse("--set is required by this subcommand".into()))?;
    parse_vertex_set(text, g.n()).map_err(|e| CliError::Parse(e.to_string()))
}

fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    let g = load_graph(cli)?;
    let mut doc = ReportDocument::new(graph_summary(&g), cli.tol);
    let spec = eigen_decompose_with(&g, cli.tol)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    doc.spectrum = Some(spectrum_entries(&spec));

    match &cli.command {
        Command::Analyze => {
            if g.is_regular().is_none() {
                doc.notes.push("not regular; spectral analysis only".into());
            }
        }
        Command::Bounds => {
            let s = subset_arg(cli, &g)?;
            cmd_bounds(cli, &g, &spec, &s, &mut doc)?;
        }
        Command::Verify => {
            let s = subset_arg(cli, &g)?;
            match verify_two_coloring(&g, &s)
                .map_err(|e| CliError::Precondition(e.to_string()))?
            {
                Some(q) => {
                    doc.notes.push(format!(
                        "equitable with quotient {q}, eigenvalue {}",
                        quotient_second_eigenvalue(&q)
                    ));
                    doc.verified_quotient = Some(Witness {
                        set: s.iter().collect(),
                        quotient: q,
                    });
                }
                None => doc.notes.push("not an equitable partition".into()),
            }
            if let Ok(result) = eigenfunction_shift_test(&g, &s, &spec) {
                doc.notes.push(match result {
                    Some(lambda) => {
                        format!("shifted indicator is an eigenvector for λ ≈ {lambda:.6}")
                    }
                    None => "shifted indicator is not an eigenvector".into(),
                });
            }
        }
        Command::Search => {
            let colorings =
                enumerate_perfect_two_colorings(&g, &spec, &SearchConstraints::default())
                    .map_err(|e| CliError::Precondition(e.to_string()))?;
            let r = g.is_regular().expect("search requires regular") as i64;
            doc.colorings = Some(
                colorings
                    .iter()
                    .map(|(s, q)| ColoringEntry {
                        set: s.iter().collect(),
                        quotient: *q,
                        eigenvalue: r - q.b - q.c,
                    })
                    .collect(),
            );
        }
        Command::Oracle { objective } => {
            let objective = match objective {
                OracleObjective::All => Objective::AllPerfectTwoColorings,
                OracleObjective::MaxIndependent => Objective::MaxIndependent,
                OracleObjective::MaxCut => Objective::MaxCut,
                OracleObjective::MaxSigma => Objective::MaxSetWithSigmaAtMost(
                    cli.a.ok_or_else(|| CliError::Parse("--a is required".into()))?,
                ),
                OracleObjective::MaxSigmaSigma2 => Objective::MaxSetWithSigmaEqAndSigma2AtMost(
                    cli.a.ok_or_else(|| CliError::Parse("--a is required".into()))?,
                    cli.beta
                        .ok_or_else(|| CliError::Parse("--beta is required".into()))?,
                ),
            };
            let cons = SearchConstraints { objective, ..Default::default() };
            let result = brute_force_oracle(&g, &cons)
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            doc.oracle = Some(OracleSummary {
                objective: cons.objective.name(),
                value: result.value.into(),
                best: result.best.iter().collect(),
                optima: result.all_optima.iter().map(|s| s.iter().collect()).collect(),
            });
        }
        Command::Compare => {
            let params = g
                .detect_amply_regular()
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            let beta = cli
                .beta
                .ok_or_else(|| CliError::Parse("--beta is required".into()))?;
            let report = compare_new_vs_hoffman(&params, &spec, beta)
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            doc.bounds.push(report);
        }
    }
    Ok(doc)
}

/// Runs every bound whose preconditions the subset satisfies; inapplicable
/// bounds become notes rather than failures.
fn cmd_bounds(
    cli: &Cli,
    g: &Graph,
    spec: &Spectrum,
    s: &VertexSet,
    doc: &mut ReportDocument,
) -> Result<(), CliError> {
    fn push(
        doc: &mut ReportDocument,
        result: Result<BoundReport, equipart::BoundsError>,
        name: &str,
    ) {
        match result {
            Ok(report) => doc.bounds.push(report),
            Err(e) => doc.notes.push(format!("{name}: {e}")),
        }
    }

    let sigma = g
        .sigma(s)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let a = cli.a.unwrap_or(sigma);
    push(doc, hoffman_average(g, spec, s, a), "hoffman_average");

    // tightest (a, d) hypothesis the subset actually satisfies: a caps the
    // inside degree of S, d floors the outside degree of V∖S
    let r = g.is_regular().expect("checked by hoffman_average") as i64;
    let into_s = |v: usize| g.neighbors(v).intersection_len(s.members()) as i64;
    let max_a = s.iter().map(into_s).max().unwrap_or(0);
    let min_d = s
        .complement()
        .iter()
        .map(|v| r - into_s(v))
        .min()
        .unwrap_or(0);
    push(doc, hamming_type(g, s, max_a, min_d), "hamming_type");

    let renamed = |result: Result<BoundReport, equipart::BoundsError>, name: &str| {
        result.map(|mut report| {
            report.name = name.to_string();
            report
        })
    };
    push(
        doc,
        renamed(expander_mixing(g, spec, s, s), "expander_mixing_self"),
        "expander_mixing_self",
    );
    push(
        doc,
        renamed(
            expander_mixing(g, spec, s, &s.complement()),
            "expander_mixing_complement",
        ),
        "expander_mixing_complement",
    );

    match cut_size_bounds(g, spec, s) {
        Ok((lower, upper)) => {
            doc.bounds.push(lower);
            doc.bounds.push(upper);
        }
        Err(e) => doc.notes.push(format!("cut_size_bounds: {e}")),
    }
    match internal_edge_bounds(g, spec, s) {
        Ok((lower, upper)) => {
            doc.bounds.push(lower);
            doc.bounds.push(upper);
        }
        Err(e) => doc.notes.push(format!("internal_edge_bounds: {e}")),
    }

    match g.detect_amply_regular() {
        Ok(params) => {
            push(doc, krotov_sigma2(&params, g, s), "krotov_sigma2");
            let beta = match cli.beta {
                Some(beta) => beta,
                None => g.sigma2(s).map_err(|e| CliError::Precondition(e.to_string()))?,
            };
            push(doc, eppc_size_bound(&params, g, s, beta), "eppc_size");
            if sigma == Rat::from(0) {
                push(
                    doc,
                    independent_sigma2_max(&params, g, spec, Some(s)),
                    "independent_sigma2_max",
                );
            }
        }
        Err(e) => doc.notes.push(format!("amply-regular bounds skipped: {e}")),
    }

    if let Ok(Some(q)) = verify_two_coloring(g, s) {
        doc.verified_quotient = Some(Witness { set: s.iter().collect(), quotient: q });
    }
    Ok(())
}

fn print_human(doc: &ReportDocument) {
    let g = &doc.graph;
    print!("graph: n={}, {} edges, ", g.n, g.edge_count);
    match g.regular {
        Some(r) => print!("{r}-regular, "),
        None => print!("not regular, "),
    }
    println!("{}", if g.connected { "connected" } else { "disconnected" });
    match (&g.amply_regular, &g.amply_regular_rejection) {
        (Some(p), _) => println!(
            "amply regular: r={}, λ={}, μ={}; p = ({}, {}, {})",
            p.r, p.lambda_g, p.mu, p.p2, p.p1, p.p0
        ),
        (None, Some(reason)) => println!("not amply regular: {reason}"),
        _ => {}
    }
    if let Some(spectrum) = &doc.spectrum {
        let rendered: Vec<String> = spectrum
            .iter()
            .map(|e| match e.integral {
                Some(i) => format!("{i}^{}", e.multiplicity),
                None => format!("{:.6}^{}", e.value, e.multiplicity),
            })
            .collect();
        println!("spectrum: {{{}}}", rendered.join(", "));
    }
    for report in &doc.bounds {
        println!(
            "{}: value {} | attained {} | {:?}",
            report.name, report.value, report.attained, report.tightness
        );
        for (key, val) in &report.detail {
            println!("    {key} = {val}");
        }
        if let Some(w) = &report.witness {
            println!("    witness: {:?} with quotient {}", w.set, w.quotient);
        }
        for note in &report.notes {
            println!("    note: {note}");
        }
    }
    if let Some(colorings) = &doc.colorings {
        println!("{} perfect 2-coloring(s):", colorings.len());
        for c in colorings {
            println!("  {:?}  quotient {}  λ={}", c.set, c.quotient, c.eigenvalue);
        }
    }
    if let Some(oracle) = &doc.oracle {
        println!("oracle {}: value {}", oracle.objective, oracle.value);
        println!("  best: {:?}", oracle.best);
        println!("  {} optimal set(s)", oracle.optima.len());
        for s in &oracle.optima {
            println!("    {s:?}");
        }
    }
    if let Some(w) = &doc.verified_quotient {
        println!("verified quotient: {:?} with {}", w.set, w.quotient);
    }
    for note in &doc.notes {
        println!("note: {note}");
    }
}
