//! Command-line front end. Every command prints one report to standard
//! output; errors go to standard error with exit code 1 (bad input) or 2
//! (group order cap exceeded).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::{
    betti, bredon_dims, connective_k_dims, equivariant_k_dims, reduced_betti, reduced_bredon_dims,
    reduced_connective_k_dims, reduced_equivariant_k_dims, ComplexDocument, GSimplicialComplex,
};
use crate::counting::ClassCounterRegistry;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::hopf::{fq_dim_series, hopf_axiom_report, supersymmetric_dims};
use crate::io::{read_complex, read_group};
use crate::qseries::eta_power;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "wreathk",
    version,
    about = "Exact wreath-product, Hopf-algebra and equivariant K-theory dimension computations"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Largest group order that may be materialized.
    #[arg(long = "cap-order", global = true, default_value_t = DEFAULT_ORDER_CAP)]
    cap_order: usize,
    /// Report reduced invariants (complex commands; needs a basepoint).
    #[arg(long, global = true)]
    reduced: bool,
    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Finite group summaries.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Wreath product class counts.
    #[command(subcommand)]
    Wreath(WreathCmd),
    /// The Hopf algebra of class functions on G ≀ Sₙ.
    #[command(subcommand)]
    Fq(FqCmd),
    /// q-series.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// G-simplicial complex invariants.
    #[command(subcommand)]
    Complex(ComplexCmd),
}

#[derive(Debug, Args)]
struct GroupArg {
    /// Group JSON file.
    #[arg(short = 'g', long = "group")]
    group: PathBuf,
}

#[derive(Debug, Subcommand)]
enum GroupCmd {
    /// Order and conjugacy classes.
    Info(GroupArg),
}

#[derive(Debug, Subcommand)]
enum WreathCmd {
    /// Number of conjugacy classes of G ≀ Sₙ.
    Classes {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'n')]
        n: usize,
        /// Counting method (labels, brute, series).
        #[arg(long, default_value = "labels")]
        method: String,
    },
}

#[derive(Debug, Subcommand)]
enum FqCmd {
    /// Class counts of Gₙ for n ≤ N against ∏(1-q^r)^(-|G_*|).
    Dims {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'N')]
        truncation: usize,
        /// Counting method for the class counts.
        #[arg(long, default_value = "brute")]
        method: String,
    },
    /// Check the Hopf algebra axioms up to degree N.
    Check {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'N')]
        truncation: usize,
    },
    /// ∏(1+q^r)^d1 / ∏(1-q^r)^d0 against the supersymmetric algebra dimensions.
    Series {
        #[arg(long)]
        d0: u64,
        #[arg(long)]
        d1: u64,
        #[arg(short = 'N')]
        truncation: usize,
    },
}

#[derive(Debug, Subcommand)]
enum SeriesCmd {
    /// ∏_{r≥1} (1-q^r)^e up to q^N.
    Eta {
        #[arg(short = 'e', allow_negative_numbers = true)]
        exponent: i64,
        #[arg(short = 'N')]
        truncation: usize,
    },
}

#[derive(Debug, Args)]
struct ComplexArgs {
    /// Group JSON file.
    #[arg(short = 'g', long = "group")]
    group: PathBuf,
    /// Complex JSON file.
    #[arg(short = 'x', long = "complex")]
    complex: PathBuf,
}

#[derive(Debug, Subcommand)]
enum ComplexCmd {
    /// Rational Betti numbers (the action is ignored unless -g is given).
    Betti {
        #[arg(short = 'x', long = "complex")]
        complex: PathBuf,
        #[arg(short = 'g', long = "group")]
        group: Option<PathBuf>,
    },
    /// dim K⁰_G(X)⊗ℂ and dim K¹_G(X)⊗ℂ.
    Kdims(ComplexArgs),
    /// Connective equivariant K-homology dimensions k₀..k_N.
    Kconn {
        #[command(flatten)]
        args: ComplexArgs,
        #[arg(short = 'N')]
        truncation: usize,
    },
    /// Rational Bredon homology dimensions.
    Bredon(ComplexArgs),
}

struct Session {
    cap: usize,
    reduced: bool,
    inputs: BTreeMap<String, String>,
}

impl Session {
    fn digest(&mut self, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path)?;
        self.inputs.insert(
            path.display().to_string(),
            hex::encode(Sha256::digest(&bytes)),
        );
        Ok(())
    }

    fn group(&mut self, path: &Path) -> Result<Arc<FiniteGroup>> {
        self.digest(path)?;
        Ok(Arc::new(read_group(path, self.cap)?))
    }

    fn complex(&mut self, args: &ComplexArgs) -> Result<GSimplicialComplex> {
        let g = self.group(&args.group)?;
        self.digest(&args.complex)?;
        read_complex(&args.complex, g)
    }
}

fn strings<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

fn execute(cmd: &Command, s: &mut Session) -> Result<Value> {
    let registry = ClassCounterRegistry::default();
    Ok(match cmd {
        Command::Group(GroupCmd::Info(a)) => {
            let g = s.group(&a.group)?;
            let ct = g.class_table();
            let classes: Vec<Value> = (0..ct.len())
                .map(|c| {
                    json!({
                        "representative": ct.rep(c),
                        "representative_name": g.element_name(ct.rep(c)),
                        "size": ct.size(c),
                        "centralizer_order": ct.centralizer_order(c),
                    })
                })
                .collect();
            json!({"name": g.name(), "order": g.order(), "class_count": ct.len(), "classes": classes})
        }
        Command::Wreath(WreathCmd::Classes { group, n, method }) => {
            let g = s.group(&group.group)?;
            let count = registry.get(method)?.count(&g, *n, s.cap)?;
            let labels = registry.get("labels")?.count(&g, *n, s.cap)?;
            let series = registry.get("series")?.count(&g, *n, s.cap)?;
            json!({
                "group": g.name(), "n": n, "method": method, "count": count,
                "labels_count": labels, "series_count": series,
                "match": count == labels && labels == series,
            })
        }
        Command::Fq(FqCmd::Dims {
            group,
            truncation,
            method,
        }) => {
            let g = s.group(&group.group)?;
            let counter = registry.get(method)?;
            let counts = (0..=*truncation)
                .map(|n| counter.count(&g, n, s.cap))
                .collect::<Result<Vec<_>>>()?;
            let eta = eta_power(-(g.class_count() as i64), *truncation);
            let matches = counts
                .iter()
                .zip(eta.coeffs())
                .all(|(&c, e)| crate::Rational::from_integer(c.into()) == *e);
            json!({
                "group": g.name(), "N": truncation, "method": method,
                "class_counts": counts, "eta_product": eta.to_strings(), "match": matches,
            })
        }
        Command::Fq(FqCmd::Check { group, truncation }) => {
            let g = s.group(&group.group)?;
            let report = hopf_axiom_report(&g, *truncation, s.cap)?;
            let mut axioms = serde_json::Map::new();
            for c in &report.checks {
                let mut entry =
                    json!({"result": if c.passed { "pass" } else { "fail" }, "checked": c.checked});
                if let Some(ce) = &c.counterexample {
                    entry["counterexample"] = json!(ce);
                }
                axioms.insert(c.axiom.to_string(), entry);
            }
            json!({"group": g.name(), "N": truncation, "axioms": axioms, "all_passed": report.all_passed()})
        }
        Command::Fq(FqCmd::Series { d0, d1, truncation }) => {
            let series = fq_dim_series(*d0, *d1, *truncation);
            let gen0: BTreeMap<usize, u64> = (1..=*truncation).map(|r| (r, *d0)).collect();
            let gen1: BTreeMap<usize, u64> = (1..=*truncation).map(|r| (r, *d1)).collect();
            let ss = supersymmetric_dims(&gen0, &gen1, *truncation);
            let matches = strings(&ss) == series.to_strings();
            json!({
                "d0": d0, "d1": d1, "N": truncation,
                "coefficients": series.to_strings(), "supersymmetric": strings(&ss), "match": matches,
            })
        }
        Command::Series(SeriesCmd::Eta {
            exponent,
            truncation,
        }) => {
            json!({"e": exponent, "N": truncation, "coefficients": eta_power(*exponent, *truncation).to_strings()})
        }
        Command::Complex(ComplexCmd::Betti { complex, group }) => {
            s.digest(complex)?;
            let text = std::fs::read_to_string(complex)?;
            let mut doc = ComplexDocument::parse(&text)?;
            let g = match group {
                Some(p) => s.group(p)?,
                None => {
                    doc.action.clear();
                    Arc::new(FiniteGroup::trivial())
                }
            };
            let x = crate::complex::load_complex(&doc, g)?;
            let b = if s.reduced {
                reduced_betti(&x)?
            } else {
                betti(&x)
            };
            json!({"reduced": s.reduced, "f_vector": x.f_vector(), "betti": b.0})
        }
        Command::Complex(ComplexCmd::Kdims(a)) => {
            let x = s.complex(a)?;
            let k = if s.reduced {
                reduced_equivariant_k_dims(&x)?
            } else {
                equivariant_k_dims(&x)?
            };
            json!({"reduced": s.reduced, "f_vector": x.f_vector(), "even": k.even, "odd": k.odd})
        }
        Command::Complex(ComplexCmd::Kconn { args, truncation }) => {
            let x = s.complex(args)?;
            let k = if s.reduced {
                reduced_connective_k_dims(&x, *truncation)?
            } else {
                connective_k_dims(&x, *truncation)?
            };
            json!({"reduced": s.reduced, "f_vector": x.f_vector(), "N": truncation, "k": k})
        }
        Command::Complex(ComplexCmd::Bredon(a)) => {
            let x = s.complex(a)?;
            let b = if s.reduced {
                reduced_bredon_dims(&x)?
            } else {
                bredon_dims(&x)?
            };
            json!({"reduced": s.reduced, "f_vector": x.f_vector(), "bredon": b.0})
        }
    })
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OrderCapExceeded { .. } => 2,
        _ => 1,
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut session = Session {
        cap: cli.cap_order,
        reduced: cli.reduced,
        inputs: BTreeMap::new(),
    };
    let start = Instant::now();
    let result = match execute(&cli.command, &mut session) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let mut report = json!({
        "command": args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>(),
        "inputs": session.inputs,
        "result": result,
        "version": env!("CARGO_PKG_VERSION"),
    });
    if cli.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    let written = match cli.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("json")
        ),
        Format::Tsv => {
            let mut rows = Vec::new();
            flatten("", &report, &mut rows);
            rows.iter().try_for_each(|(k, v)| writeln!(out, "{k}\t{v}"))
        }
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
