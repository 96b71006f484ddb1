use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use howson::action::{act, point_p, witness_word};
use howson::graph::OrbitalGraph;
use howson::linear::cocycle;
use howson::rank::{
    abelianization_hq, membership, nielsen_schreier_rank, smith_normal_form, stabilizer_index,
    IntegerMatrix,
};
use howson::verify::{self, VerifyParams};
use howson::word::loop_word;
use howson::{Error, Result, Vec2, Word};

/// Relative `--out` paths are resolved against this directory when it is set.
const OUT_DIR_VAR: &str = "HOWSON_OUT_DIR";

#[derive(Parser)]
#[command(name = "howson", version, about = "Exact checks for a non-Howson pair in SL(3, Z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Complete orbit graph over (Z/qZ)^2
    #[arg(long)]
    q: Option<u64>,
    /// Ball of this radius around the origin of Z^2
    #[arg(long)]
    depth: Option<usize>,
}

impl GraphSource {
    fn build(&self) -> Result<OrbitalGraph> {
        match (self.q, self.depth) {
            (Some(q), _) => OrbitalGraph::build_mod_q(q),
            (None, Some(d)) => OrbitalGraph::build_ball(d),
            (None, None) => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Re-derive every checkable claim and report pass/fail per check
    VerifyPaper {
        #[arg(long, default_value_t = 1000)]
        n_max: i64,
        #[arg(long, default_value_t = 200)]
        q_max: u64,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 10)]
        sweep_len: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the JSON report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Witness word sending (0,0) to P_n = (n, 1-n)
    Orbit {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export an orbital Schreier graph
    Graph {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact core of a mod-q graph, or the certified core of a ball
    Core {
        #[command(flatten)]
        source: GraphSource,
        /// Cyclically reduced loop witness for balls
        #[arg(long)]
        witness: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Index of N_q, its rank and the bound on rank(H_q meet K_q)
    Rank {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Abelianization of H_q
    Abelianization {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Membership in N (no --q) or N_q
    Member {
        #[arg(long)]
        word: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Invariant factors of an integer matrix, rows separated by ';'
    Snf {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_out(path: &Path, contents: &str) -> Result<()> {
    let path = resolve_out(path);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(&path, contents)?;
    Ok(())
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn word_or_identity(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.compact()
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::VerifyPaper {
            n_max,
            q_max,
            depth,
            sweep_len,
            format,
            out,
        } => {
            let params = VerifyParams {
                n_max,
                q_max,
                depth,
                sweep_len,
            };
            let report = verify::run(&params)?;
            let json = report.to_json();
            if let Some(path) = out {
                write_out(&path, &(json.clone() + "\n"))?;
            }
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{json}"),
            }
            return Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Orbit { n, format } => {
            let schedule = witness_word(n);
            let image = act(&schedule.word, &Vec2::zero());
            let target = point_p(n).point;
            let verified = image == target;
            match format {
                Format::Text => {
                    println!("P_{n} = {target}");
                    println!("witness: {}", word_or_identity(&schedule.word));
                    println!("length: {}", schedule.word.len());
                    println!("image of (0, 0): {image}  verified: {verified}");
                }
                Format::Json => print_json(&json!({
                    "n": n,
                    "point": [target.x.to_string(), target.y.to_string()],
                    "witness": schedule.word.compact(),
                    "length": schedule.word.len(),
                    "verified": verified,
                }))?,
            }
        }
        Command::Graph {
            source,
            format,
            out,
        } => {
            let graph = source.build()?;
            let text = match format {
                GraphFormat::Dot => graph.to_dot(),
                GraphFormat::Json => graph.to_json()? + "\n",
            };
            match out {
                Some(path) => write_out(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Core {
            source,
            witness,
            format,
        } => {
            let graph = source.build()?;
            let report = match (&witness, graph.is_fully_complete()) {
                (None, true) => graph.core_exact()?,
                (w, _) => {
                    let w = match w {
                        Some(text) => Word::parse(text)?,
                        None => loop_word(),
                    };
                    graph.certified_core(&w)?
                }
            };
            let points: Vec<&Vec2> = report.core_vertices.iter().map(|&v| graph.vertex(v)).collect();
            match format {
                Format::Text => {
                    let kind = match report.kind {
                        howson::CoreKind::Exact => "exact",
                        howson::CoreKind::CertifiedLowerBound => "certified lower bound",
                    };
                    println!("graph: {} vertices, {} incomplete", graph.vertex_count(), graph.incomplete_count());
                    println!("core ({kind}): {} vertices", report.len());
                    if let Some(w) = &report.witness {
                        println!("witness: {w}");
                    }
                }
                Format::Json => print_json(&json!({
                    "kind": report.kind,
                    "vertices": graph.vertex_count(),
                    "core_size": report.len(),
                    "witness": report.witness.as_ref().map(|w| w.to_string()),
                    "core": points.iter().map(|p| [p.x.to_string(), p.y.to_string()]).collect::<Vec<_>>(),
                }))?,
            }
        }
        Command::Rank { q, format } => {
            let index = stabilizer_index(q)?;
            let rank = nielsen_schreier_rank(index, 2);
            match format {
                Format::Text => {
                    println!("[F : N_{q}] = {index}");
                    println!("rank(N_{q}) = {rank}");
                    println!("rank(H_{q} meet K_{q}) >= {rank} >= {}", q + 1);
                }
                Format::Json => print_json(&json!({
                    "q": q,
                    "index": index,
                    "rank": rank,
                    "intersection_rank_lower_bound": rank,
                    "claimed_bound": q + 1,
                }))?,
            }
        }
        Command::Abelianization { q, format } => {
            let ab = abelianization_hq(q)?;
            match format {
                Format::Text => {
                    println!("(H_{q})_ab = {ab}");
                    println!("minimum generators: {}", ab.min_generators());
                }
                Format::Json => print_json(&json!({
                    "q": q,
                    "free_rank": ab.free_rank,
                    "torsion": ab.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "min_generators": ab.min_generators(),
                }))?,
            }
        }
        Command::Member { word, q, format } => {
            let w = Word::parse(&word)?;
            let member = membership(&w, q)?;
            let c = cocycle(&w);
            match format {
                Format::Text => {
                    println!("{member}");
                    println!("c({}) = {c}", word_or_identity(&w));
                }
                Format::Json => print_json(&json!({
                    "word": w.to_string(),
                    "q": q,
                    "cocycle": [c.x.to_string(), c.y.to_string()],
                    "member": member,
                }))?,
            }
        }
        Command::Snf { matrix, format } => {
            let m = IntegerMatrix::parse(&matrix)?;
            let factors = smith_normal_form(&m);
            let shown: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
            match format {
                Format::Text => println!("({})", shown.join(", ")),
                Format::Json => print_json(&json!({
                    "rows": m.rows(),
                    "cols": m.cols(),
                    "invariant_factors": shown,
                }))?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", one_line(&e));
            ExitCode::from(2)
        }
    }
}

fn one_line(e: &Error) -> String {
    e.to_string().replace('\n', " ")
}
