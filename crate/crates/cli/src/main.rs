use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::Value;

use tauknot_core::corpus::{
    bundled_corpus, evaluate, parse_corpus, CorpusEntry, PdCode, TableRow, TABLE_CSV_HEADER,
};
use tauknot_core::filtered::ComplexFile;
use tauknot_core::report::{report, InvariantReport};
use tauknot_core::states::{
    enumerate_states, essential_states, maximal_essential_interval, StateRecord,
};
use tauknot_core::DecoratedDiagram;

#[derive(Parser)]
#[command(
    name = "tauknot",
    version,
    about = "Knot diagram invariants and certified values of tau"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct KnotInput {
    /// Knot file: a JSON corpus entry, or PD text such as `X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]`.
    file: Option<PathBuf>,
    /// Inline PD code; `U` is the crossingless unknot.
    #[arg(long, conflicts_with = "file")]
    pd: Option<String>,
    /// Marked edge, in the labels of the input.
    #[arg(long)]
    mark: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Crossing data, Alexander polynomial, determinant, signature, tau and genus bounds.
    #[command(
        after_help = "CSV columns: knot,crossings,writhe,alternating,reduced,alexander,determinant,signature,tau_lower,tau_upper,method,g4_lower,u_lower"
    )]
    Invariants {
        #[command(flatten)]
        input: KnotInput,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Kauffman states, sorted by (M, A, regions).
    #[command(
        after_help = "CSV columns: M,A, then the region of each crossing in crossing order, then the multi-filtration as `a:b` per edge when requested"
    )]
    States {
        #[command(flatten)]
        input: KnotInput,
        /// Only states essential for the maximal essential interval.
        #[arg(long)]
        essential: bool,
        /// Include the edge-indexed multi-filtration of each state.
        #[arg(long)]
        multifiltration: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare a corpus against its recorded values; exits 1 on any mismatch.
    #[command(
        after_help = "CSV columns: knot,status,signature,signature_expected,determinant,determinant_expected,tau,tau_expected,method,g4_lower,u_lower\n\
tau is `a` when determined and `a..b` for an interval. Without a corpus file the bundled corpus is used.\n\
TAUKNOT_THREADS caps the number of worker threads."
    )]
    Table {
        /// JSON array of corpus entries.
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        out: TableFormat,
    },
    /// tau of a hand-entered filtered complex.
    TauComplex {
        /// JSON complex: {"generators": [{"label", "M", "A"}], "differential": [{"from", "to", "coeff"}]}.
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Mismatch(String),
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_knot(input: &KnotInput) -> Result<(CorpusEntry, DecoratedDiagram), Failure> {
    let mut entry = match (&input.pd, &input.file) {
        (Some(pd), _) => CorpusEntry {
            name: "knot".into(),
            pd: PdCode::Text(pd.clone()),
            decoration: 1,
            torus: None,
            complex: None,
            known: Default::default(),
        },
        (None, Some(path)) => {
            let text = read(path)?;
            let stem = path
                .file_stem()
                .map_or("knot".into(), |s| s.to_string_lossy().into_owned());
            if text.trim_start().starts_with('{') {
                let mut v: Value = serde_json::from_str(&text).map_err(input_err)?;
                if let Value::Object(m) = &mut v {
                    m.entry("name").or_insert(Value::String(stem));
                }
                serde_json::from_value(v).map_err(input_err)?
            } else {
                CorpusEntry {
                    name: stem,
                    pd: PdCode::Text(text),
                    decoration: 1,
                    torus: None,
                    complex: None,
                    known: Default::default(),
                }
            }
        }
        (None, None) => return Err(Failure::Input("give a knot file or --pd".into())),
    };
    if let Some(m) = input.mark {
        entry.decoration = m;
    }
    let d = entry.diagram().map_err(input_err)?;
    let decoration = match (&entry.pd, input.mark) {
        // Text input without a mark starts at the first edge of the traversal.
        (PdCode::Text(_), None) => d.traversal().first().copied().unwrap_or(1),
        _ => entry.decoration,
    };
    let dd = DecoratedDiagram::new(&d, decoration).map_err(input_err)?;
    Ok((entry, dd))
}

fn cmd_invariants(input: &KnotInput, format: Format) -> Result<String, Failure> {
    let (entry, d) = load_knot(input)?;
    let r: InvariantReport = report(&entry.name, &d, &entry.hints().map_err(input_err)?);
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&r).unwrap() + "\n",
        Format::Text => r.to_text(),
        Format::Csv => format!("{}\n{}\n", InvariantReport::CSV_HEADER, r.csv_row()),
    })
}

fn cmd_states(
    input: &KnotInput,
    essential: bool,
    mf: bool,
    format: Format,
) -> Result<String, Failure> {
    let (_, d) = load_knot(input)?;
    let states = if essential {
        essential_states(&d)
    } else {
        enumerate_states(&d)
    };
    let mut records: Vec<StateRecord> =
        states.iter().map(|x| StateRecord::new(&d, x, mf)).collect();
    records.sort_by(|a, b| {
        (a.grading.m, a.grading.a, &a.regions).cmp(&(b.grading.m, b.grading.a, &b.regions))
    });
    let mut out = String::new();
    match format {
        Format::Json => {
            let mut v = serde_json::json!({ "states": records });
            if essential {
                v["interval"] = serde_json::json!(maximal_essential_interval(&d).edges(&d));
            }
            out = serde_json::to_string_pretty(&v).unwrap() + "\n";
        }
        Format::Text => {
            if essential {
                let _ = writeln!(
                    out,
                    "interval: {:?}",
                    maximal_essential_interval(&d).edges(&d)
                );
            }
            let _ = writeln!(out, "{} states", records.len());
            for r in &records {
                let _ = write!(
                    out,
                    "M={:>3} A={:>3} regions={:?}",
                    r.grading.m, r.grading.a, r.regions
                );
                if let Some(f) = &r.multi_filtration {
                    let _ = write!(out, " filtration={:?}", f.values);
                }
                out.push('\n');
            }
        }
        Format::Csv => {
            let n = d.diagram().crossing_count();
            let mut header: Vec<String> = vec!["M".into(), "A".into()];
            header.extend((0..n).map(|c| format!("c{c}")));
            if mf {
                header.extend((0..d.edge_count()).map(|i| format!("e{}", i + 1)));
            }
            let _ = writeln!(out, "{}", header.join(","));
            for r in &records {
                let mut row = vec![r.grading.m.to_string(), r.grading.a.to_string()];
                row.extend(r.regions.iter().map(|x| x.to_string()));
                if let Some(f) = &r.multi_filtration {
                    row.extend(f.values.iter().map(|(a, b)| format!("{a}:{b}")));
                }
                let _ = writeln!(out, "{}", row.join(","));
            }
        }
    }
    Ok(out)
}

fn cmd_table(corpus: Option<&Path>, out: TableFormat) -> Result<String, Failure> {
    let entries = match corpus {
        Some(p) => parse_corpus(&read(p)?).map_err(input_err)?,
        None => bundled_corpus(),
    };
    let rows: Vec<TableRow> = entries
        .par_iter()
        .map(evaluate)
        .collect::<Result<_, _>>()
        .map_err(input_err)?;
    let text = match out {
        TableFormat::Json => serde_json::to_string_pretty(&rows).unwrap() + "\n",
        TableFormat::Csv => {
            let mut s = format!("{TABLE_CSV_HEADER}\n");
            for r in &rows {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
    };
    let diffs: Vec<String> = rows.iter().flat_map(|r| r.diff()).collect();
    if diffs.is_empty() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Mismatch(diffs.join("\n")))
    }
}

fn cmd_tau_complex(path: &Path, format: Format) -> Result<String, Failure> {
    let c = ComplexFile::parse(&read(path)?)
        .and_then(|f| f.into_complex())
        .map_err(input_err)?;
    let t = c.tau().map_err(input_err)?;
    Ok(match format {
        Format::Json => {
            let v =
                serde_json::json!({ "tau": t, "generators": c.len(), "homology": c.homology() });
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Format::Text => format!("{t}\n"),
        Format::Csv => format!("tau\n{t}\n"),
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("TAUKNOT_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariants { input, format } => cmd_invariants(input, *format),
        Command::States {
            input,
            essential,
            multifiltration,
            format,
        } => cmd_states(input, *essential, *multifiltration, *format),
        Command::Table { corpus, out } => cmd_table(corpus.as_deref(), *out),
        Command::TauComplex { file, format } => cmd_tau_complex(file, *format),
    };
    match result {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(d)) => {
            eprintln!("mismatches:\n{d}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
