//! Command line front end: build and serialize crystals, tensor and
//! decompose them, branch to Levi subdiagrams, and run the PGL(2) affine
//! Grassmannian computations.
//!
//! Exit codes: 0 on success, 1 on a domain error (bad weight, failed
//! verification, precision exhaustion, ...), 2 on a usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crystals::io;
use crystals::{
    admissible_strata, branch_to_levi, build_b, convolve_samples, crystal_from_pgl2, decompose,
    i_string_decomposition, lr_multiplicities, strata_census, stratum_parameter_count,
    verify_closed_family, Crystal, Error, ReportEntry, RootDatum, SeedTable, Weight,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "crystals",
    version,
    about = "Crystal graphs over semisimple root data, with a PGL(2) affine Grassmannian model",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Root datum selection, shared by most subcommands.
#[derive(Args)]
struct DatumArgs {
    /// Simple type, e.g. A2, B3, G2
    #[arg(long = "type", value_name = "Xn")]
    ty: Option<String>,
    /// Cartan matrix as a JSON array of rows, e.g. [[2,-1],[-1,2]]
    #[arg(long, value_name = "JSON", conflicts_with = "ty")]
    cartan: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the highest weight crystal B(hw) and emit it as JSON
    Build {
        #[command(flatten)]
        datum: DatumArgs,
        /// Highest weight in Dynkin coordinates, e.g. 1,0,2
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tensor B(hw1) ⊗ B(hw2) and emit the product crystal
    Tensor {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw1: String,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw2: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decompose a crystal into highest weight components
    Decompose {
        /// Crystal file to decompose; alternatively give --type with --hw1/--hw2
        input: Option<PathBuf>,
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw1: Option<String>,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw2: Option<String>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Restrict a crystal to a Levi subdiagram and decompose there
    Branch {
        /// Crystal file to branch; alternatively give --type with --hw
        input: Option<PathBuf>,
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw: Option<String>,
        /// Retained Dynkin nodes, 1-based, e.g. 1,3
        #[arg(long, value_name = "i,j,...")]
        levi: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List the maximal single-color strings of a crystal
    Strings {
        /// Crystal file; alternatively give --type with --hw
        input: Option<PathBuf>,
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw: Option<String>,
        /// Color (Dynkin node), 1-based
        #[arg(long, value_name = "i")]
        color: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tensor product multiplicities of B(hw1) ⊗ B(hw2)
    Lr {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw1: String,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw2: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check that B(hw1+hw2) sits at the top of B(hw1) ⊗ B(hw2)
    ClosedCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw1: String,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw2: String,
    },
    /// Load a crystal file, validating the schema and the crystal axioms
    Verify { input: PathBuf },
    /// Render a crystal as GraphViz DOT
    Dot {
        /// Crystal file; alternatively give --type with --hw
        input: Option<PathBuf>,
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        hw: Option<String>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// PGL(2) affine Grassmannian computations
    #[command(subcommand)]
    Pgl2(Pgl2Cmd),
}

#[derive(Subcommand)]
enum Pgl2Cmd {
    /// Find the nonempty (orbit, Iwasawa) strata up to a given orbit label
    Census {
        #[arg(long, value_name = "L")]
        lmax: i64,
        #[arg(long, value_name = "N", default_value = "24")]
        prec: i64,
        #[arg(long, value_name = "S", default_value = "1")]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sample convolution products of two strata and tally their labels
    Convolve {
        #[arg(long)]
        l1: i64,
        #[arg(long, allow_negative_numbers = true)]
        m1: i64,
        #[arg(long)]
        l2: i64,
        #[arg(long, allow_negative_numbers = true)]
        m2: i64,
        #[arg(long, value_name = "K", default_value = "200")]
        samples: u64,
        #[arg(long, value_name = "N", default_value = "32")]
        prec: i64,
        #[arg(long, value_name = "S", default_value = "42")]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The crystal carried by the strata inside one orbit closure
    Crystal {
        #[arg(long, value_name = "L")]
        l: i64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Free parameter counts of strata (their dimensions)
    Params {
        /// Single stratum: orbit label
        #[arg(long, value_name = "L", conflicts_with = "lmax")]
        l: Option<i64>,
        /// Single stratum: Iwasawa label
        #[arg(
            long,
            value_name = "M",
            requires = "l",
            conflicts_with = "lmax",
            allow_negative_numbers = true
        )]
        m: Option<i64>,
        /// All admissible strata up to this orbit label
        #[arg(long, value_name = "L")]
        lmax: Option<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_datum(args: &DatumArgs) -> CliResult<RootDatum> {
    match (&args.ty, &args.cartan) {
        (Some(ty), None) => Ok(RootDatum::from_type(ty)?),
        (None, Some(text)) => {
            let rows: Vec<Vec<i64>> = serde_json::from_str(text)
                .map_err(|e| usage(format!("--cartan must be a JSON matrix: {e}")))?;
            Ok(RootDatum::new(rows)?)
        }
        _ => Err(usage("give exactly one of --type or --cartan")),
    }
}

fn parse_weight(text: &str) -> CliResult<Weight> {
    let coords: Result<Vec<i64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    coords
        .map(Weight)
        .map_err(|_| usage(format!("bad weight {text:?}: expected integers like 1,0,2")))
}

/// 1-based node list from the command line to 0-based indices.
fn parse_levi(text: &str, rank: usize) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad node list {text:?}")))?;
        if i < 1 || i > rank {
            return Err(usage(format!("node {i} out of range 1..={rank}")));
        }
        out.push(i - 1);
    }
    Ok(out)
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Domain(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A crystal either loaded from a file or built from --type/--hw flags.
fn obtain_crystal(
    input: &Option<PathBuf>,
    datum: &DatumArgs,
    hw: &Option<String>,
) -> CliResult<Crystal> {
    match (input, hw) {
        (Some(path), None) => Ok(io::load_crystal(path)?),
        (None, Some(hw)) => {
            let d = parse_datum(datum)?;
            let seeds = SeedTable::for_datum(&d);
            Ok(build_b(&seeds, &parse_weight(hw)?)?)
        }
        _ => Err(usage("give either a crystal file or --type with --hw")),
    }
}

fn crystal_table(c: &Crystal) -> String {
    let mut out = format!("# {} elements, rank {}\n", c.len(), c.rank());
    let _ = writeln!(out, "{:>4}  {:<12} arrows", "id", "wt");
    for id in 0..c.len() {
        let arrows: Vec<String> = (0..c.rank())
            .filter_map(|i| c.f(id, i).map(|dst| format!("f{} -> {}", i + 1, dst)))
            .collect();
        let _ = writeln!(
            out,
            "{id:>4}  {:<12} {}",
            c.wt(id).to_string(),
            arrows.join("  ")
        );
    }
    out
}

fn entries_table(entries: &[ReportEntry]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<14} {:>5}", "hw", "mult");
    for e in entries {
        let _ = writeln!(
            out,
            "{:<14} {:>5}",
            e.highest_weight.to_string(),
            e.multiplicity
        );
    }
    out
}

fn emit_crystal(c: &Crystal, out: &Option<PathBuf>, format: Format) -> CliResult<()> {
    let text = match format {
        Format::Json => io::crystal_to_json_string(c) + "\n",
        Format::Table => crystal_table(c),
    };
    emit(out, &text)
}

fn run(cmd: Cmd) -> CliResult<()> {
    match cmd {
        Cmd::Build {
            datum,
            hw,
            out,
            format,
        } => {
            let d = parse_datum(&datum)?;
            let seeds = SeedTable::for_datum(&d);
            let b = build_b(&seeds, &parse_weight(&hw)?)?;
            emit_crystal(&b, &out, format)
        }
        Cmd::Tensor {
            datum,
            hw1,
            hw2,
            out,
            format,
        } => {
            let d = parse_datum(&datum)?;
            let seeds = SeedTable::for_datum(&d);
            let b1 = build_b(&seeds, &parse_weight(&hw1)?)?;
            let b2 = build_b(&seeds, &parse_weight(&hw2)?)?;
            let t = crystals::tensor(&b1, &b2)?;
            emit_crystal(&t, &out, format)
        }
        Cmd::Decompose {
            input,
            datum,
            hw1,
            hw2,
            out,
            format,
        } => {
            let c = match (&input, &hw1, &hw2) {
                (Some(path), None, None) => io::load_crystal(path)?,
                (None, Some(h1), Some(h2)) => {
                    let d = parse_datum(&datum)?;
                    let seeds = SeedTable::for_datum(&d);
                    let b1 = build_b(&seeds, &parse_weight(h1)?)?;
                    let b2 = build_b(&seeds, &parse_weight(h2)?)?;
                    crystals::tensor(&b1, &b2)?
                }
                _ => {
                    return Err(usage(
                        "give either a crystal file or --type with --hw1 and --hw2",
                    ))
                }
            };
            let seeds = SeedTable::for_datum(c.datum());
            let report = decompose(&c, &seeds)?;
            let text = match format {
                Format::Json => io::decomposition_to_json(&report).to_string() + "\n",
                Format::Table => format!(
                    "# {} elements in {} components\n{}",
                    report.total_elements,
                    report.entries.iter().map(|e| e.multiplicity).sum::<u64>(),
                    entries_table(&report.entries)
                ),
            };
            emit(&out, &text)
        }
        Cmd::Branch {
            input,
            datum,
            hw,
            levi,
            out,
            format,
        } => {
            let c = obtain_crystal(&input, &datum, &hw)?;
            let indices = parse_levi(&levi, c.rank())?;
            let report = branch_to_levi(&c, &indices)?;
            let text = match format {
                Format::Json => io::branching_to_json(&report).to_string() + "\n",
                Format::Table => format!(
                    "# branched to nodes {levi}, {} elements\n{}",
                    report.total_elements,
                    entries_table(&report.entries)
                ),
            };
            emit(&out, &text)
        }
        Cmd::Strings {
            input,
            datum,
            hw,
            color,
            out,
            format,
        } => {
            let c = obtain_crystal(&input, &datum, &hw)?;
            if color < 1 || color > c.rank() {
                return Err(usage(format!(
                    "color {color} out of range 1..={}",
                    c.rank()
                )));
            }
            let strings = i_string_decomposition(&c, color - 1)?;
            let text = match format {
                Format::Json => io::strings_to_json(&c, color - 1, &strings).to_string() + "\n",
                Format::Table => {
                    let mut s = format!("# {} strings of color {color}\n", strings.len());
                    for chain in &strings {
                        let ids: Vec<String> = chain.iter().map(usize::to_string).collect();
                        let _ = writeln!(s, "len {:>2}: {}", chain.len(), ids.join(" -> "));
                    }
                    s
                }
            };
            emit(&out, &text)
        }
        Cmd::Lr {
            datum,
            hw1,
            hw2,
            format,
        } => {
            let d = parse_datum(&datum)?;
            let seeds = SeedTable::for_datum(&d);
            let h1 = parse_weight(&hw1)?;
            let h2 = parse_weight(&hw2)?;
            let mult = lr_multiplicities(&seeds, &h1, &h2)?;
            let text = match format {
                Format::Json => {
                    let entries: Vec<Value> = mult
                        .iter()
                        .map(|(w, m)| json!({"hw": w.coords(), "mult": m}))
                        .collect();
                    json!({
                        "format": "lr/1",
                        "hw1": h1.coords(),
                        "hw2": h2.coords(),
                        "entries": entries,
                    })
                    .to_string()
                        + "\n"
                }
                Format::Table => {
                    let mut s = String::new();
                    let _ = writeln!(s, "{:<14} {:>5}", "hw", "mult");
                    for (w, m) in &mult {
                        let _ = writeln!(s, "{:<14} {:>5}", w.to_string(), m);
                    }
                    s
                }
            };
            emit(&None, &text)
        }
        Cmd::ClosedCheck { datum, hw1, hw2 } => {
            let d = parse_datum(&datum)?;
            let seeds = SeedTable::for_datum(&d);
            let h1 = parse_weight(&hw1)?;
            let h2 = parse_weight(&hw2)?;
            if verify_closed_family(&seeds, &h1, &h2)? {
                println!("ok: B{} sits at the top of B{h1} ⊗ B{h2}", h1.add(&h2));
                Ok(())
            } else {
                Err(CliError::Domain(Error::Identification(format!(
                    "the top component of B{h1} ⊗ B{h2} is not B{}",
                    h1.add(&h2)
                ))))
            }
        }
        Cmd::Verify { input } => {
            let c = io::load_crystal(&input)?;
            // also require the two highest weight readings to agree per component
            for comp in c.components() {
                let sub = c.subcrystal(&comp)?;
                sub.is_highest_weight_crystal()?;
            }
            println!(
                "ok: {} elements, {} components, axioms hold",
                c.len(),
                c.components().len()
            );
            Ok(())
        }
        Cmd::Dot {
            input,
            datum,
            hw,
            out,
        } => {
            let c = obtain_crystal(&input, &datum, &hw)?;
            emit(&out, &io::crystal_to_dot(&c))
        }
        Cmd::Pgl2(cmd) => run_pgl2(cmd),
    }
}

fn run_pgl2(cmd: Pgl2Cmd) -> CliResult<()> {
    match cmd {
        Pgl2Cmd::Census {
            lmax,
            prec,
            seed,
            format,
        } => {
            let strata = strata_census(lmax, prec, seed)?;
            let text = match format {
                Format::Json => io::census_to_json(lmax, &strata).to_string() + "\n",
                Format::Table => {
                    let mut s = format!("# {} strata with orbit label <= {lmax}\n", strata.len());
                    let _ = writeln!(s, "{:>3} {:>3}", "l", "m");
                    for (l, m) in &strata {
                        let _ = writeln!(s, "{l:>3} {m:>3}");
                    }
                    s
                }
            };
            emit(&None, &text)
        }
        Pgl2Cmd::Convolve {
            l1,
            m1,
            l2,
            m2,
            samples,
            prec,
            seed,
            format,
        } => {
            let stats = convolve_samples(l1, m1, l2, m2, samples, prec, seed)?;
            let text = match format {
                Format::Json => io::convolution_to_json(&stats).to_string() + "\n",
                Format::Table => {
                    let mut s = format!(
                        "# ({l1},{m1}) * ({l2},{m2}), {samples} draws at precision {prec}\n"
                    );
                    let _ = writeln!(s, "{:<14} {:>6} {:>6}", "", "label", "count");
                    for (label, count) in &stats.labels {
                        let _ = writeln!(s, "{:<14} {label:>6} {count:>6}", "orbit");
                    }
                    for (label, count) in &stats.iwasawa_labels {
                        let _ = writeln!(s, "{:<14} {label:>6} {count:>6}", "iwasawa");
                    }
                    s
                }
            };
            emit(&None, &text)
        }
        Pgl2Cmd::Crystal { l, out, format } => {
            let c = crystal_from_pgl2(l)?;
            emit_crystal(&c, &out, format)
        }
        Pgl2Cmd::Params { l, m, lmax, format } => {
            let rows: Vec<(i64, i64)> = match (l, m, lmax) {
                (Some(l), Some(m), None) => vec![(l, m)],
                (None, None, Some(lmax)) => admissible_strata(lmax).into_iter().collect(),
                _ => return Err(usage("give --l with --m, or --lmax")),
            };
            let mut entries: Vec<(i64, i64, u64)> = Vec::new();
            for (l, m) in rows {
                entries.push((l, m, stratum_parameter_count(l, m)?));
            }
            let text = match format {
                Format::Json => {
                    let list: Vec<Value> = entries
                        .iter()
                        .map(|(l, m, p)| json!({"l": l, "m": m, "params": p}))
                        .collect();
                    json!({"format": "params/1", "entries": list}).to_string() + "\n"
                }
                Format::Table => {
                    let mut s = String::new();
                    let _ = writeln!(s, "{:>3} {:>3} {:>7}", "l", "m", "params");
                    for (l, m, p) in &entries {
                        let _ = writeln!(s, "{l:>3} {m:>3} {p:>7}");
                    }
                    s
                }
            };
            emit(&None, &text)
        }
    }
}
