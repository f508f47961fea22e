//! `ncx` — command-line front end for the N-complex toolkit.
//!
//! Verbs either construct objects (cone, suspend, mu, truncate, ...) or
//! check properties (validate, qis, nullhomotopy, ...). Constructors exit 0
//! unless the input is unusable; checkers additionally exit 1 when the
//! checked property fails, with the verdict still written as data. Usage
//! errors exit 2.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncx_core::chainmap::ChainMap;
use ncx_core::complex::{mu, NComplex};
use ncx_core::elementary::{elementary, is_exact_square, is_pullback_square, verify_elmap02,
    ExactSquare};
use ncx_core::field::FieldSpec;
use ncx_core::homotopy::{chainmap_space_dim, hom_k_dim, null_homotopy_witness};
use ncx_core::io;
use ncx_core::matrix::Matrix;
use ncx_core::mor::{mor_homology, mor_window, nhn_check, smcatcp2_check};
use ncx_core::qis::{is_qis, les_ses_check, les_single, ExactnessReport, ShortExactSeq};
use ncx_core::suite::{run_all, SuiteConfig};
use ncx_core::triangles::{cone, cone_block_degrees, cosuspend, cosuspend_block_degrees,
    cover_block_degrees, hull_block_degrees, pi_cover, pi_hull, suspend, suspend_block_degrees};

#[derive(Parser)]
#[command(
    name = "ncx",
    version,
    about = "Exact homological algebra for N-complexes: homology tables, cones, \
             suspensions, quasi-isomorphism tests, and a randomized self-test suite"
)]
struct Cli {
    /// Output format (JSON is the interchange contract; text is for reading)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TruncKind {
    /// Brutal truncation keeping degrees <= the cut
    SigmaLe,
    /// Brutal truncation keeping degrees >= the cut
    SigmaGe,
    /// Smart truncation: quotient by cycles above the cut
    TauLe,
    /// Smart truncation: kill boundaries below the cut
    TauGe,
}

#[derive(Subcommand)]
enum Verb {
    /// Check a complex file: shapes, canonical scalars, and d^N = 0
    Validate { file: PathBuf },
    /// Homology table of a complex (nonzero entries, sorted)
    Homology { file: PathBuf },
    /// Mapping cone of a chain map, with block provenance
    Cone { file: PathBuf },
    /// Suspension of a complex, with block provenance
    Suspend { file: PathBuf },
    /// Cosuspension of a complex, with block provenance
    Cosuspend { file: PathBuf },
    /// Contractible cover P(X), with block provenance
    Pcover { file: PathBuf },
    /// Contractible hull I(X), with block provenance
    Ihull { file: PathBuf },
    /// Degree shift by t (positive t moves content toward lower degrees)
    #[command(allow_negative_numbers = true)]
    Shift {
        file: PathBuf,
        #[arg(long)]
        t: i64,
    },
    /// A block complex: r copies of k^dim in degrees s-r+1..s joined by identities
    #[command(allow_negative_numbers = true)]
    Mu {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: i64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, value_parser = parse_field, default_value = "q")]
        field: FieldSpec,
    },
    /// Is the chain map null-homotopic? Emits a witness when it is
    Nullhomotopy { file: PathBuf },
    /// Dimensions of the chain-map space and its homotopy classes
    Homdim { x: PathBuf, y: PathBuf },
    /// Is the chain map a quasi-isomorphism?
    Qis { file: PathBuf },
    /// Six-amplitude long exact sequence of one complex
    LesSingle {
        file: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
    },
    /// Homology ladder of a short exact sequence (alpha, then beta)
    LesSes { alpha: PathBuf, beta: PathBuf },
    /// Pullback tower over u into degree i, with its structure map and verdicts
    #[command(allow_negative_numbers = true)]
    Elementary {
        x: PathBuf,
        u: PathBuf,
        #[arg(long)]
        i: i64,
    },
    /// Is a commutative square a pullback? exact?
    ExactSquareCheck { file: PathBuf },
    /// Truncate a complex at a degree
    #[command(allow_negative_numbers = true)]
    Truncate {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: TruncKind,
        #[arg(long)]
        at: i64,
    },
    /// Homology ladders: one record per index j in the window
    Mor { file: PathBuf },
    /// Compare the block hom-space dimension with the homology dimension
    #[command(allow_negative_numbers = true)]
    Nhn {
        file: PathBuf,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        r: usize,
    },
    /// Verify the suspension/shift identities for one-degree complexes
    #[command(allow_negative_numbers = true)]
    Smcatcp2 {
        #[arg(long = "N")]
        n: usize,
        /// Single shift index; sweeps -1..=1 when omitted
        #[arg(long)]
        i: Option<i64>,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, value_parser = parse_field, default_value = "q")]
        field: FieldSpec,
    },
    /// Run the randomized invariant suite
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s.eq_ignore_ascii_case("q") {
        Ok(FieldSpec::Rationals)
    } else if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p.parse().map_err(|_| format!("bad prime in {s:?}"))?;
        FieldSpec::fp(p).map_err(|e| e.to_string())
    } else {
        Err(format!("field must be q or fp:<p>, got {s:?}"))
    }
}

/// What a verb produced: a value to print plus whether a checked property
/// held (None for pure constructors).
struct Output {
    json: Value,
    text: String,
    check: Option<bool>,
}

impl Output {
    fn made(json: Value, text: String) -> Output {
        Output { json, text, check: None }
    }

    fn checked(pass: bool, json: Value, text: String) -> Output {
        Output { json, text, check: Some(pass) }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.verb) {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&out.json).expect("serializable output")
                }
                Format::Text => out.text,
            };
            // A closed pipe (e.g. piping into `head`) is not an error worth
            // a panic; drop the tail and keep the verb's exit code.
            use std::io::Write;
            let _ = writeln!(std::io::stdout().lock(), "{rendered}");
            match out.check {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(msg) => {
            eprintln!("ncx: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<Value, String> {
    let bytes = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&bytes).map_err(|e| format!("{}: malformed JSON: {e}", path.display()))
}

fn load_complex(path: &Path) -> Result<NComplex, String> {
    io::complex_from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_chainmap(path: &Path) -> Result<ChainMap, String> {
    io::chainmap_from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Standalone matrix files: {"rows": r, "cols": c, "entries": [["..."]]}.
fn matrix_from_value(field: FieldSpec, v: &Value, path: &Path) -> Result<Matrix, String> {
    let at = |msg: &str| format!("{}: {msg}", path.display());
    let rows = v["rows"].as_u64().ok_or_else(|| at("missing \"rows\""))? as usize;
    let cols = v["cols"].as_u64().ok_or_else(|| at("missing \"cols\""))? as usize;
    let entries: Vec<Vec<String>> = serde_json::from_value(v["entries"].clone())
        .map_err(|e| at(&format!("bad \"entries\": {e}")))?;
    io::matrix_from_rows(field, rows, cols, &entries).map_err(|e| at(&e.to_string()))
}

fn complex_text(x: &NComplex) -> String {
    if x.is_zero() {
        return format!("N={} zero complex", x.n);
    }
    let mut s = format!(
        "N={} over {}, degrees {}..{}, dims {:?}",
        x.n,
        field_text(x.field),
        x.min_degree,
        x.max_degree(),
        x.dims
    );
    for i in x.min_degree..x.max_degree() {
        s.push_str(&format!("\nd^{i} = {:?}", io::matrix_to_rows(&x.diff(i))));
    }
    s
}

fn field_text(f: FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "Q".to_string(),
        FieldSpec::PrimeField { p } => format!("F_{p}"),
    }
}

fn table_text(t: &BTreeMap<(i64, usize), usize>) -> String {
    if t.is_empty() {
        return "acyclic (all homology vanishes)".to_string();
    }
    t.iter()
        .map(|(&(i, r), &d)| format!("H^{i}_({r}) = k^{d}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn report_text(r: &ExactnessReport) -> String {
    let mut lines: Vec<String> = r
        .nodes
        .iter()
        .map(|n| {
            format!(
                "{} H^{}_({}) [{}]: dim {}, rank in {}, ker out {}",
                if n.exact { "ok " } else { "BAD" },
                n.degree,
                n.amplitude,
                n.object,
                n.dim,
                n.rank_in,
                n.dim_ker_out
            )
        })
        .collect();
    lines.push(format!("exact: {}", r.exact));
    lines.join("\n")
}

/// Provenance pairs [source_degree, slot] for every degree of a block-sum
/// construction; the result degree is `source - offset(slot)` per verb.
fn provenance(x: &NComplex, degrees_of: impl Fn(i64) -> Vec<i64>) -> Vec<(i64, usize)> {
    x.support()
        .flat_map(|m| degrees_of(m).into_iter().enumerate().map(|(k, d)| (d, k)))
        .collect()
}

fn built_with_blocks(y: &NComplex, blocks: Vec<(i64, usize)>) -> Output {
    let json = json!({
        "complex": io::complex_to_json(y),
        "blocks": blocks,
    });
    let text = format!("{}\nblocks: {blocks:?}", complex_text(y));
    Output::made(json, text)
}

fn dispatch(verb: &Verb) -> Result<Output, String> {
    match verb {
        Verb::Validate { file } => {
            let parsed = read(file).and_then(|v| {
                io::complex_from_json_raw(&v).map_err(|e| format!("{}: {e}", file.display()))
            });
            let verdict = parsed.and_then(|x| {
                x.validate().map_err(|e| format!("{}: {e}", file.display()))
            });
            Ok(match verdict {
                Ok(()) => Output::checked(true, json!({"valid": true, "error": null}), "valid".into()),
                Err(msg) => Output::checked(
                    false,
                    json!({"valid": false, "error": msg}),
                    format!("invalid: {msg}"),
                ),
            })
        }
        Verb::Homology { file } => {
            let x = load_complex(file)?;
            let t = x.homology_table();
            Ok(Output::made(io::table_to_json(&t), table_text(&t)))
        }
        Verb::Cone { file } => {
            let f = load_chainmap(file)?;
            let t = cone(&f);
            let n = t.c.n;
            let blocks = provenance(&t.c, |m| {
                cone_block_degrees(n, m).into_iter().map(|(d, _)| d).collect()
            });
            Ok(built_with_blocks(&t.c, blocks))
        }
        Verb::Suspend { file } => {
            let x = load_complex(file)?;
            let y = suspend(&x);
            let n = x.n;
            Ok(built_with_blocks(&y, provenance(&y, |m| suspend_block_degrees(n, m))))
        }
        Verb::Cosuspend { file } => {
            let x = load_complex(file)?;
            let y = cosuspend(&x);
            let n = x.n;
            Ok(built_with_blocks(&y, provenance(&y, |m| cosuspend_block_degrees(n, m))))
        }
        Verb::Pcover { file } => {
            let x = load_complex(file)?;
            let (p, _, _) = pi_cover(&x);
            let n = x.n;
            Ok(built_with_blocks(&p, provenance(&p, |m| cover_block_degrees(n, m))))
        }
        Verb::Ihull { file } => {
            let x = load_complex(file)?;
            let (i_env, _, _) = pi_hull(&x);
            let n = x.n;
            Ok(built_with_blocks(&i_env, provenance(&i_env, |m| hull_block_degrees(n, m))))
        }
        Verb::Shift { file, t } => {
            let x = load_complex(file)?.theta_shift(*t);
            Ok(Output::made(io::complex_to_json(&x), complex_text(&x)))
        }
        Verb::Mu { n, r, s, dim, field } => {
            let x = mu(*n, *field, *r, *s, *dim).map_err(|e| e.to_string())?;
            Ok(Output::made(io::complex_to_json(&x), complex_text(&x)))
        }
        Verb::Nullhomotopy { file } => {
            let f = load_chainmap(file)?;
            Ok(match null_homotopy_witness(&f) {
                Some(w) => {
                    let maps: Vec<Value> = w
                        .maps
                        .iter()
                        .map(|(i, m)| json!({"degree": i, "matrix": io::matrix_to_rows(m)}))
                        .collect();
                    Output::checked(
                        true,
                        json!({"null_homotopic": true, "witness": maps}),
                        "null-homotopic (witness found)".into(),
                    )
                }
                None => Output::checked(
                    false,
                    json!({"null_homotopic": false, "witness": null}),
                    "not null-homotopic".into(),
                ),
            })
        }
        Verb::Homdim { x, y } => {
            let (a, b) = (load_complex(x)?, load_complex(y)?);
            if a.n != b.n || a.field != b.field {
                return Err("complexes must share N and field".into());
            }
            let plain = chainmap_space_dim(&a, &b);
            let homotopy = hom_k_dim(&a, &b);
            Ok(Output::made(
                json!({"chain_maps": plain, "up_to_homotopy": homotopy}),
                format!("dim Hom = {plain}, dim Hom up to homotopy = {homotopy}"),
            ))
        }
        Verb::Qis { file } => {
            let f = load_chainmap(file)?;
            let verdict = is_qis(&f);
            Ok(Output::checked(
                verdict,
                json!({"qis": verdict}),
                format!("quasi-isomorphism: {verdict}"),
            ))
        }
        Verb::LesSingle { file, l, m } => {
            let x = load_complex(file)?;
            let report = les_single(&x, *l, *m).map_err(|e| e.to_string())?;
            let pass = report.exact;
            let text = report_text(&report);
            Ok(Output::checked(
                pass,
                serde_json::to_value(&report).expect("report serializes"),
                text,
            ))
        }
        Verb::LesSes { alpha, beta } => {
            let a = load_chainmap(alpha)?;
            let b = load_chainmap(beta)?;
            let ses = match ShortExactSeq::new(a, b) {
                Ok(s) => s,
                Err(e) => {
                    return Ok(Output::checked(
                        false,
                        json!({"exact_input": false, "error": e.to_string()}),
                        format!("input is not short exact: {e}"),
                    ))
                }
            };
            let report = les_ses_check(&ses).map_err(|e| e.to_string())?;
            let pass = report.exact;
            let text = report_text(&report);
            Ok(Output::checked(
                pass,
                serde_json::to_value(&report).expect("report serializes"),
                text,
            ))
        }
        Verb::Elementary { x, u, i } => {
            let xc = load_complex(x)?;
            let um = matrix_from_value(xc.field, &read(u)?, u)?;
            let (w, p) = elementary(&xc, &um, *i).map_err(|e| e.to_string())?;
            let report = verify_elmap02(&xc, &um, *i).map_err(|e| e.to_string())?;
            let json = json!({
                "complex": io::complex_to_json(&w),
                "map": io::chainmap_to_json(&p),
                "report": serde_json::to_value(&report).expect("report serializes"),
            });
            let text = format!(
                "{}\nqis: {}, squares exact: {}, composite exact: {}",
                complex_text(&w),
                report.qis,
                report.all_squares_exact,
                report.composite_exact
            );
            Ok(Output::made(json, text))
        }
        Verb::ExactSquareCheck { file } => {
            let v = read(file)?;
            let field = serde_json::from_value::<FieldSpec>(v["field"].clone())
                .map_err(|e| format!("{}: bad \"field\": {e}", file.display()))?;
            let part = |name: &str| matrix_from_value(field, &v[name], file);
            let sq = ExactSquare::new(part("f")?, part("x")?, part("y")?, part("fp")?);
            Ok(match sq {
                Ok(sq) => {
                    let pb = is_pullback_square(&sq);
                    let ex = is_exact_square(&sq);
                    Output::checked(
                        ex,
                        json!({"commutes": true, "pullback": pb, "exact": ex}),
                        format!("commutes, pullback: {pb}, exact: {ex}"),
                    )
                }
                Err(e) => Output::checked(
                    false,
                    json!({"commutes": false, "pullback": false, "exact": false, "error": e.to_string()}),
                    format!("square does not commute: {e}"),
                ),
            })
        }
        Verb::Truncate { file, kind, at } => {
            let x = load_complex(file)?;
            let y = match kind {
                TruncKind::SigmaLe => x.sigma_le(*at),
                TruncKind::SigmaGe => x.sigma_ge(*at),
                TruncKind::TauLe => x.tau_le(*at),
                TruncKind::TauGe => x.tau_ge(*at),
            };
            Ok(Output::made(io::complex_to_json(&y), complex_text(&y)))
        }
        Verb::Mor { file } => {
            let x = load_complex(file)?;
            let records: Vec<Value> = match mor_window(&x) {
                None => Vec::new(),
                Some(w) => w
                    .map(|j| json!({"j": j, "mor": io::mor_to_json(&mor_homology(&x, j))}))
                    .collect(),
            };
            let text = records
                .iter()
                .map(|r| format!("j = {}: dims {}", r["j"], r["mor"]["dims"]))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::made(Value::Array(records), text))
        }
        Verb::Nhn { file, i, r } => {
            let x = load_complex(file)?;
            let agree = nhn_check(&x, *i, *r).map_err(|e| e.to_string())?;
            let hom = x.homology_dim(*i, *r);
            Ok(Output::checked(
                agree,
                json!({"degree": i, "amplitude": r, "homology_dim": hom, "match": agree}),
                format!("hom-space dimension matches H^{i}_({r}) = k^{hom}: {agree}"),
            ))
        }
        Verb::Smcatcp2 { n, i, dim, field } => {
            let indices: Vec<i64> = match i {
                Some(one) => vec![*one],
                None => (-1..=1).collect(),
            };
            let mut reports = Vec::new();
            let mut all = true;
            for idx in indices {
                let rep = smcatcp2_check(*n, *field, *dim, idx).map_err(|e| e.to_string())?;
                all &= rep.corrected_all;
                reports.push(rep);
            }
            let text = reports
                .iter()
                .flat_map(|rep| {
                    rep.items.iter().map(move |it| {
                        format!(
                            "i={}: {} — printed {}: {}, corrected {}: {}",
                            rep.i,
                            it.item,
                            it.printed_exponent,
                            it.printed_matches,
                            it.corrected_exponent,
                            it.corrected_matches
                        )
                    })
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::checked(
                all,
                serde_json::to_value(&reports).expect("reports serialize"),
                text,
            ))
        }
        Verb::Selftest { seed, cases } => {
            let results = run_all(SuiteConfig { seed: *seed, cases: *cases });
            let pass = results.iter().all(|r| r.pass);
            let text = results
                .iter()
                .map(|r| {
                    format!(
                        "[{}] criterion {:2}: {} — {} checks — {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.id,
                        r.name,
                        r.cases,
                        r.detail
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::checked(
                pass,
                serde_json::to_value(&results).expect("results serialize"),
                text,
            ))
        }
    }
}
