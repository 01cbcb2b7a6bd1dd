use clap::{Args, Parser, Subcommand, ValueEnum};
use gridups::upsilon::{UpsilonEngine, UpsilonProfile};
use gridups::verify::{cobordism_bound_check, crossing_change_check, verify_invariance, MoveCounts, Report};
use gridups::{corpus, fmt_q, parse_q, GridDiagram, GridError, Mode, MoveDescriptor, TParameter};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

mod plot;

/// Υ(t) of links and balanced spatial graphs from grid diagrams.
///
/// Diagram arguments are file paths, or `corpus:NAME` for a bundled diagram.
#[derive(Parser)]
#[command(name = "gridups", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a diagram, and report its shape.
    Validate { diagram: String },
    /// Compute Υ at one t or a sampled profile on [0, 1].
    Upsilon(UpsilonArgs),
    /// Check an invariance theorem or a bound on computed Υ values.
    Verify {
        #[command(subcommand)]
        kind: VerifyCmd,
    },
    /// Apply a move file to a diagram and print the result.
    Apply {
        diagram: String,
        #[arg(long)]
        moves: PathBuf,
    },
    /// List the bundled diagrams, or print one.
    Corpus { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct UpsilonArgs {
    diagram: String,
    /// a single t = p/q in [0, 2]
    #[arg(long, conflicts_with = "profile")]
    t: Option<String>,
    /// sample t = k/q for k = 0..=q
    #[arg(long)]
    profile: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// write the profile as an SVG polyline
    #[arg(long)]
    plot: Option<PathBuf>,
    /// also print the homology at --t as free/torsion summands
    #[arg(long)]
    homology: bool,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Homology and Υ agree between two presentations.
    Invariance {
        first: String,
        second: String,
        /// move file taking the first diagram to the second; replayed and checked
        #[arg(long)]
        moves: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        q: i64,
    },
    /// Υ bounds for a link cobordism given by its move counts or a move file.
    Cobordism {
        first: String,
        second: String,
        #[arg(long, default_value_t = 0)]
        births: usize,
        #[arg(long, default_value_t = 0)]
        saddles: usize,
        #[arg(long, default_value_t = 0)]
        deaths: usize,
        /// count births, saddles and deaths from a replayed move file
        #[arg(long, conflicts_with_all = ["births", "saddles", "deaths"])]
        moves: Option<PathBuf>,
        /// use this genus instead of the one derived from the counts
        #[arg(long)]
        genus: Option<String>,
        #[arg(long, default_value_t = 6)]
        q: i64,
    },
    /// Υ+ ≤ Υ− ≤ Υ+ + (2 − t) for diagrams differing in one crossing.
    Crossing {
        /// diagram with the positive crossing
        plus: String,
        /// diagram with the negative crossing
        minus: String,
        #[arg(long, default_value_t = 6)]
        q: i64,
    },
}

enum Failure {
    Grid(GridError),
    Io(String),
    /// a verification ran and some record failed
    Check,
}

impl From<GridError> for Failure {
    fn from(e: GridError) -> Self {
        Failure::Grid(e)
    }
}

type Out = Result<(), Failure>;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("GRIDUPS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Validate { diagram } => validate(&diagram),
        Cmd::Upsilon(a) => upsilon(a),
        Cmd::Verify { kind } => verify(kind),
        Cmd::Apply { diagram, moves } => apply(&diagram, &moves),
        Cmd::Corpus { name } => list_corpus(name.as_deref()),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Grid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check) => ExitCode::from(3),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(arg: &str) -> Result<GridDiagram, Failure> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        return Ok(corpus::load(name)?);
    }
    Ok(GridDiagram::parse(&read_text(Path::new(arg))?)?)
}

fn load_moves(path: &Path) -> Result<Vec<MoveDescriptor>, Failure> {
    Ok(MoveDescriptor::parse_sequence(&read_text(path)?)?)
}

fn validate(arg: &str) -> Out {
    let g = load(arg)?;
    if let Some(why) = g.balance_violation() {
        return Err(GridError::Unbalanced(why).into());
    }
    let l = if g.mode() == Mode::Link { g.components().to_string() } else { "n/a".into() };
    println!(
        "ok n={} mode={} V={} l={} max_m={}",
        g.n(),
        g.mode().as_str(),
        g.star_rows().len(),
        l,
        g.max_weight()
    );
    Ok(())
}

fn upsilon(a: UpsilonArgs) -> Out {
    let g = load(&a.diagram)?;
    let engine = UpsilonEngine::new(&g)?;
    match (&a.t, a.profile) {
        (Some(ts), _) => {
            let t = TParameter::parse(ts)?;
            let v = engine.upsilon(t)?;
            let homology = if a.homology { Some(engine.decomposition(t.reflect())?) } else { None };
            match a.format {
                Format::Text => {
                    println!("{}", fmt_q(v));
                    if let Some(h) = &homology {
                        print!("{}", h.to_lines());
                    }
                }
                Format::Json => {
                    let mut j = json!({ "t": t_str(t), "upsilon": fmt_q(v) });
                    if let Some(h) = &homology {
                        j["homology"] = json!(h.to_lines().lines().collect::<Vec<_>>());
                    }
                    println!("{}", serde_json::to_string_pretty(&j).expect("json"));
                }
                Format::Csv => println!("t,upsilon\n{},{}", t_str(t), fmt_q(v)),
            }
            if a.plot.is_some() {
                eprintln!("note: --plot needs --profile; ignored");
            }
            Ok(())
        }
        (None, Some(q)) => {
            let p = engine.profile(q)?;
            print_profile(&p, a.format);
            if let Some(path) = &a.plot {
                std::fs::write(path, plot::svg(&p)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(())
        }
        (None, None) => Err(GridError::Inadmissible("give --t p/q or --profile q".into()).into()),
    }
}

fn t_str(t: TParameter) -> String {
    let v = t.value();
    format!("{}/{}", v.numer(), v.denom())
}

fn print_profile(p: &UpsilonProfile, format: Format) {
    let slope = p.tau_slope_estimate().ok();
    match format {
        Format::Text => {
            for (t, v) in &p.samples {
                println!("{} {}", t_str(*t), fmt_q(*v));
            }
            let bps: Vec<String> = p.breakpoints.iter().map(|t| t_str(*t)).collect();
            println!("# linear={} breakpoints=[{}]", p.is_linear(), bps.join(","));
            if let Some(s) = slope {
                println!("# slope_at_0={}", fmt_q(s));
            }
        }
        Format::Json => {
            let samples: Vec<_> = p.samples.iter().map(|(t, v)| json!({ "t": t_str(*t), "upsilon": fmt_q(*v) })).collect();
            let j = json!({
                "samples": samples,
                "linear": p.is_linear(),
                "breakpoints": p.breakpoints.iter().map(|t| t_str(*t)).collect::<Vec<_>>(),
                "slope_at_0": slope.map(fmt_q),
            });
            println!("{}", serde_json::to_string_pretty(&j).expect("json"));
        }
        Format::Csv => {
            println!("t,upsilon");
            for (t, v) in &p.samples {
                println!("{},{}", t_str(*t), fmt_q(*v));
            }
        }
    }
}

fn verify(kind: VerifyCmd) -> Out {
    let report = match kind {
        VerifyCmd::Invariance { first, second, moves, q } => {
            let ms = moves.as_deref().map(load_moves).transpose()?;
            verify_invariance(&load(&first)?, &load(&second)?, ms.as_deref(), q)?
        }
        VerifyCmd::Cobordism { first, second, births, saddles, deaths, moves, genus, q } => {
            let (g1, g2) = (load(&first)?, load(&second)?);
            let counts = match moves {
                Some(path) => {
                    let ms = load_moves(&path)?;
                    if corpus::replay(&g1, &ms)? != g2 {
                        return Err(GridError::IllegalMove("replaying the moves does not produce the second diagram".into()).into());
                    }
                    MoveCounts::from_moves(&ms)
                }
                None => MoveCounts { births, saddles, deaths },
            };
            let genus = match genus {
                Some(s) => Some(parse_q(&s).ok_or_else(|| GridError::Inadmissible(format!("cannot read genus {s:?}")))?),
                None => None,
            };
            cobordism_bound_check(&g1, &g2, counts, genus, q)?
        }
        VerifyCmd::Crossing { plus, minus, q } => crossing_change_check(&load(&plus)?, &load(&minus)?, q)?,
    };
    print_report(&report);
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn print_report(r: &Report) {
    let info: serde_json::Map<String, serde_json::Value> = r.info.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let j = json!({ "kind": r.kind, "pass": r.pass, "info": info, "records": r.records });
    println!("{}", serde_json::to_string_pretty(&j).expect("json"));
}

fn apply(arg: &str, moves: &Path) -> Out {
    let g = load(arg)?;
    let out = corpus::replay(&g, &load_moves(moves)?)?;
    print!("{}", out.serialize());
    Ok(())
}

fn list_corpus(name: Option<&str>) -> Out {
    match name {
        None => {
            for (n, _) in corpus::FILES {
                println!("{n}");
            }
        }
        Some(n) => {
            let text = corpus::text(n).ok_or_else(|| GridError::Unsupported(format!("no corpus diagram named {n}")))?;
            print!("{text}");
        }
    }
    Ok(())
}
