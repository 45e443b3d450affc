use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use boxsoc::bounds::bounds_report;
use boxsoc::boxicity::{boxicity_report, decide_boxicity_leq, Decision, DEFAULT_BUDGET};
use boxsoc::fixtures::{load_fixture, Fixture, FIXTURE_NAMES};
use boxsoc::format::{parse_document, write_arrangement, write_graph, Document};
use boxsoc::geometry::{agreement_number, agreement_proportion, f_vector, intersection_graph};
use boxsoc::reproduce::verify_paper;
use boxsoc::search::{enumerate_agreeable, EtaTable};
use boxsoc::{Arrangement, Error, Graph};

/// Box societies: agreement, boxicity and bounds.
#[derive(Parser)]
#[command(name = "boxsoc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an arrangement or graph file, or a registered fixture.
    Analyze {
        input: String,
        /// Also bound and, if possible, decide the boxicity.
        #[arg(long)]
        boxicity: bool,
        #[arg(long, value_name = "N")]
        boxicity_budget: Option<u64>,
        /// Require the input to be an arrangement.
        #[arg(long)]
        as_arrangement: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the bound comparison table.
    Bounds {
        #[arg(long, default_value_t = 5)]
        d_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the η table and re-run the exhaustions that close it.
    SearchEta {
        #[arg(long, default_value_t = 4)]
        r: usize,
        #[arg(long)]
        json: bool,
    },
    /// Boxicity bounds for a graph, or decide `box <= D`.
    Boxicity {
        input: String,
        #[arg(long, value_name = "D")]
        decide: Option<usize>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run every reference check; exit status 1 on any failure.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// List or print registered fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Dump { name: Vec<String> },
}

enum Failure {
    Usage(Error),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            input,
            boxicity,
            boxicity_budget,
            as_arrangement,
            json,
        } => analyze(
            &input,
            boxicity || boxicity_budget.is_some(),
            boxicity_budget,
            as_arrangement,
            json,
        ),
        Command::Bounds { d_max, json } => bounds(d_max, json),
        Command::SearchEta { r, json } => search_eta(r, json),
        Command::Boxicity {
            input,
            decide,
            budget,
            json,
        } => boxicity(&input, decide, budget, json),
        Command::VerifyPaper { json } => verify(json),
        Command::Fixtures { action } => fixtures(action),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// A path to an existing file, otherwise a fixture name.
fn load(input: &str) -> Result<Document, Error> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("cannot read {input}: {e}")))?;
        return parse_document(&text);
    }
    Ok(match load_fixture(input)? {
        Fixture::Arrangement { arrangement, .. } => Document::Arrangement(arrangement),
        Fixture::Graph(g) => Document::Graph(g),
    })
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn analyze(
    input: &str,
    with_box: bool,
    budget: Option<u64>,
    as_arrangement: bool,
    json: bool,
) -> CmdResult {
    let doc = load(input)?;
    let (graph, arrangement): (Graph, Option<Arrangement>) = match doc {
        Document::Arrangement(a) => (intersection_graph(&a), Some(a)),
        Document::Graph(g) => {
            if as_arrangement {
                return Err(Error::Format(format!(
                    "`{input}` is a graph with no registered arrangement"
                ))
                .into());
            }
            (g, None)
        }
    };
    let n = graph.n();
    let omega = match &arrangement {
        Some(a) => agreement_number(a),
        None => graph.clique_number(),
    };
    let proportion = match &arrangement {
        Some(a) => agreement_proportion(a).to_string(),
        None if n > 0 => num_rational::Ratio::new(omega, n).to_string(),
        None => "0".into(),
    };
    let agreeable = graph.is_agreeable(2, 3);
    let profile = graph.degree_profile();
    let fv = arrangement.as_ref().map(|a| f_vector(a).entries().to_vec());
    let report = with_box.then(|| boxicity_report(&graph, budget.unwrap_or(DEFAULT_BUDGET)));
    if json {
        print_json(&json!({
            "kind": if arrangement.is_some() { "arrangement" } else { "graph" },
            "vertices": n,
            "dimension": arrangement.as_ref().map(|a| a.dimension()),
            "edges": graph.edges(),
            "edge_count": graph.edge_count(),
            "clique_number": graph.clique_number(),
            "agreement_number": omega,
            "agreement_proportion": proportion,
            "agreeable_2_3": agreeable,
            "degree_profile": profile,
            "f_vector": fv,
            "boxicity": report,
        }));
        return Ok(());
    }
    match &arrangement {
        Some(a) => println!(
            "arrangement: {} boxes in dimension {}",
            a.len(),
            a.dimension()
        ),
        None => println!("graph: {n} vertices"),
    }
    println!("edges: {}", graph.edge_count());
    for (u, v) in graph.edges() {
        println!("  {u} {v}");
    }
    println!("agreement number: {omega}");
    println!("agreement proportion: {proportion}");
    println!("(2,3)-agreeable: {}", if agreeable { "yes" } else { "no" });
    println!(
        "degrees: min {} max {} {:?}",
        profile.min_degree, profile.max_degree, profile.degrees
    );
    if let Some(fv) = fv {
        println!("f-vector: {fv:?}");
    }
    if let Some(r) = report {
        print_box_report(&r);
    }
    Ok(())
}

fn print_box_report(r: &boxsoc::boxicity::BoxicityReport) {
    match r.exact {
        Some(b) => println!("boxicity: {b}"),
        None => println!("boxicity: between {} and {}", r.lower, r.upper),
    }
    if r.budget_exhausted {
        println!("  search budget exhausted");
    }
}

fn bounds(d_max: usize, json: bool) -> CmdResult {
    let reports = (1..=d_max)
        .map(bounds_report)
        .collect::<Result<Vec<_>, _>>()?;
    if json {
        print_json(&reports);
        return Ok(());
    }
    println!(" d  β(2,3,d)  1/(2d)   F^[d-1](1/2)  printed");
    for b in &reports {
        let printed = b
            .table
            .as_ref()
            .map(|t| format!("{} / {}", t.printed_main, t.printed_gamma))
            .unwrap_or_default();
        println!(
            "{:>2}  {:<9.6} {:<8} {:<13.8} {printed}",
            b.d, b.beta_convex, b.main_lower, b.gamma_lower
        );
    }
    if let Some(s) = reports.get(1).and_then(|b| b.gamma_lower_exact.clone()) {
        println!("F(1/2) = {s}");
    }
    Ok(())
}

fn search_eta(max_r: usize, json: bool) -> CmdResult {
    let table = EtaTable::build(max_r.max(1))?;
    let mut rows = Vec::new();
    for e in table.entries() {
        // re-run the exhaustion one past the confirmed value
        let exhaustion = match e.confirmed_value {
            Some(v) if e.r >= 2 => {
                let c = enumerate_agreeable(v + 1, e.r, &table)?;
                Some(json!({
                    "n": v + 1,
                    "survivors": c.survivors.len(),
                    "graphs_examined": c.graphs_examined,
                    "level_sizes": c.level_sizes,
                }))
            }
            _ => None,
        };
        rows.push(json!({
            "r": e.r,
            "confirmed": e.confirmed_value,
            "upper_bound": e.upper_bound,
            "witness_vertices": e.witness.as_ref().map(Graph::n),
            "certificate": e.impossibility,
            "certificate_text": e.impossibility.to_string(),
            "exhaustion": exhaustion,
        }));
    }
    if json {
        print_json(&rows);
        return Ok(());
    }
    for row in &rows {
        let value = match row["confirmed"].as_u64() {
            Some(v) => format!("= {v}"),
            None => format!("<= {}", row["upper_bound"]),
        };
        let ex = match &row["exhaustion"] {
            serde_json::Value::Null => String::new(),
            e => format!("; n = {} exhausted, {} survivors", e["n"], e["survivors"]),
        };
        println!(
            "η({}) {value}  ({}{ex})",
            row["r"],
            row["certificate_text"].as_str().unwrap_or_default()
        );
    }
    Ok(())
}

fn boxicity(input: &str, decide: Option<usize>, budget: u64, json: bool) -> CmdResult {
    let graph = match load(input)? {
        Document::Graph(g) => g,
        Document::Arrangement(a) => intersection_graph(&a),
    };
    if let Some(d) = decide {
        let decision = decide_boxicity_leq(&graph, d, budget)?;
        let (verdict, witness) = match &decision {
            Decision::Yes(w) => ("yes", Some(w)),
            Decision::No => ("no", None),
            Decision::Inconclusive => ("inconclusive", None),
        };
        if json {
            print_json(&json!({
                "d": d,
                "decision": verdict,
                "witness": witness.map(write_arrangement),
            }));
        } else {
            println!("box <= {d}: {verdict}");
            if let Some(w) = witness {
                print!("{}", write_arrangement(w));
            }
        }
        return Ok(());
    }
    let report = boxicity_report(&graph, budget);
    if json {
        print_json(&json!({
            "report": report,
            "witness": report.witness.as_ref().map(write_arrangement),
        }));
    } else {
        print_box_report(&report);
        println!("  lower {} upper {}", report.lower, report.upper);
        if let Some(w) = &report.witness {
            print!("{}", write_arrangement(w));
        }
    }
    Ok(())
}

fn verify(json: bool) -> CmdResult {
    let rep = verify_paper();
    if json {
        print_json(&rep);
    } else {
        print!("{}", rep.render());
    }
    if rep.passed() {
        Ok(())
    } else {
        let names: Vec<_> = rep.failures().map(|c| c.name.clone()).collect();
        Err(Failure::Assertion(format!("failed: {}", names.join(", "))))
    }
}

fn fixtures(action: FixtureAction) -> CmdResult {
    match action {
        FixtureAction::List => {
            for name in FIXTURE_NAMES {
                println!("{name}");
            }
        }
        FixtureAction::Dump { name } => match load_fixture(&name.join(" "))? {
            Fixture::Arrangement { arrangement, .. } => {
                print!("{}", write_arrangement(&arrangement))
            }
            Fixture::Graph(g) => print!("{}", write_graph(&g)),
        },
    }
    Ok(())
}
