//! Command line front end. Every command prints deterministic lines on
//! stdout (or one JSON object with `--json`) and reserves stderr for
//! timing. Exit codes: 0 for success, 1 when a verification or search came
//! out against expectation, 2 for unusable input.

use clap::{Parser, Subcommand, ValueEnum};
use cylschur::cylindric::{gw_invariant, hook_expansion, min_negative_vars, CylindricShape};
use cylschur::partition::Partition;
use cylschur::poset::{
    enum_oriented_posets, has_cycle, is_skew_shape_poset, k_po, recognize_cylindric_components,
    EdgeKind, OrientedPoset, PosetFilter,
};
use cylschur::qsym::{is_symmetric, m_to_f};
use cylschur::symfunc::{schur_to_fundamental, schur_to_monomial};
use cylschur::verify;
use serde_json::json;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "cylschur", version, about = "skew Schur functions on a cylinder")]
struct Cli {
    /// print one JSON object instead of plain lines
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a shape into a symmetric or quasisymmetric basis
    Expand {
        /// shape such as "k=2,nk=2;lam=1;d=1;mu=1", or the same data as JSON
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = BasisArg::Schur)]
        basis: BasisArg,
        #[arg(long, value_enum, default_value_t = RouteArg::Ribbons)]
        route: RouteArg,
    },
    /// Count fillings directly and report the monomial expansion
    Oracle {
        #[arg(long)]
        shape: String,
    },
    /// One structure constant of the wound product
    Gw {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lam: String,
        #[arg(long, default_value_t = 0)]
        d: u32,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Positivity of the expansion against the skewness of the shape
    Positivity {
        #[arg(long)]
        shape: String,
    },
    /// Alternating hook chain: the empty shape wound once
    Hook {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        nk: u32,
    },
    /// Split an expansion at the cylinder depth
    Decompose {
        #[arg(long)]
        shape: String,
    },
    /// Expansion into the wound classes s[nu/e]
    Cylexpand {
        #[arg(long)]
        shape: String,
    },
    /// Generating function of an oriented poset read from a file
    PosetK {
        /// first line "n=<count>", then lines "<lower> <upper> strict|weak"
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = QBasisArg::Monomial)]
        basis: QBasisArg,
    },
    /// Exhaustive checks over bounded domains
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Counterexample hunts
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Extra winding only adds terms within k rows beyond the wound classes
    Errorterm {
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        nkmax: u32,
        #[arg(long, default_value_t = 3)]
        dmax: u32,
    },
    /// Fillings match structure constants on toric shapes
    Postnikov {
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        nkmax: u32,
        #[arg(long, default_value_t = 2)]
        dmax: u32,
        #[arg(long, default_value_t = 10)]
        max_cells: u32,
    },
    /// Positivity in both bases is exactly skewness
    Positivity {
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        nkmax: u32,
        #[arg(long, default_value_t = 2)]
        dmax: u32,
        #[arg(long, default_value_t = 10)]
        max_cells: u32,
    },
    /// Symmetric cycle-free orientations are plane skew shapes
    Stanley {
        #[arg(long, default_value_t = 6)]
        max_elements: usize,
    },
    /// The determinant-style route equals the ribbon route
    GkEquivalence {
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        nkmax: u32,
        #[arg(long, default_value_t = 2)]
        dmax: u32,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Symmetric orientations that escape the cylinder recognizer: none
    /// exist through 6 elements, some exist at 7
    FalseStatement {
        #[arg(long, default_value_t = 6)]
        max_elements: usize,
        /// spread the scan over all available cores
        #[arg(long)]
        parallel: bool,
    },
    /// Orientations with a mixed cycle but a positive fundamental expansion
    FPositiveCycle {
        #[arg(long, default_value_t = 5)]
        elements: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Schur,
    Monomial,
    Fundamental,
}

#[derive(Clone, Copy, ValueEnum)]
enum QBasisArg {
    Monomial,
    Fundamental,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Ribbons,
    Gk,
}

struct CmdOut {
    command: &'static str,
    inputs: serde_json::Value,
    outcome: String,
    payload: serde_json::Value,
    lines: Vec<String>,
    exit: i32,
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match dispatch(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "command": out.command,
                        "inputs": out.inputs,
                        "outcome": out.outcome,
                        "payload": out.payload,
                    })
                );
            } else {
                for line in &out.lines {
                    println!("{line}");
                }
            }
            out.exit
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    std::process::exit(code);
}

fn dispatch(command: &Command) -> Result<CmdOut, String> {
    match command {
        Command::Expand { shape, basis, route } => expand(shape, *basis, *route),
        Command::Oracle { shape } => oracle(shape),
        Command::Gw { k, n, lam, d, mu, nu } => gw(*k, *n, lam, *d, mu, nu),
        Command::Positivity { shape } => positivity(shape),
        Command::Hook { k, nk } => hook(*k, *nk),
        Command::Decompose { shape } => decompose(shape),
        Command::Cylexpand { shape } => cylexpand(shape),
        Command::PosetK { file, basis } => poset_k(file, *basis),
        Command::Verify(cmd) => run_verify(cmd),
        Command::Search(cmd) => run_search(cmd),
    }
}

#[derive(serde::Deserialize)]
struct ShapeSpec {
    k: u32,
    nk: u32,
    #[serde(default)]
    lam: Vec<u32>,
    #[serde(default)]
    d: u32,
    #[serde(default)]
    mu: Vec<u32>,
}

fn partition_from_vec(name: &str, v: Vec<u32>) -> Result<Partition, String> {
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(format!("{name}: parts not weakly decreasing: {v:?}"));
    }
    Ok(Partition::new(v))
}

fn parse_shape(text: &str) -> Result<CylindricShape, String> {
    let text = text.trim();
    if text.starts_with('{') {
        let spec: ShapeSpec =
            serde_json::from_str(text).map_err(|e| format!("shape JSON: {e}"))?;
        let lam = partition_from_vec("lam", spec.lam)?;
        let mu = partition_from_vec("mu", spec.mu)?;
        CylindricShape::new(spec.k, spec.nk, lam, spec.d, mu)
    } else {
        text.parse()
    }
}

fn expand(spec: &str, basis: BasisArg, route: RouteArg) -> Result<CmdOut, String> {
    let shape = parse_shape(spec)?;
    let f = match route {
        RouteArg::Ribbons => shape.expand_ribbons(),
        RouteArg::Gk => shape.expand_gk(),
    };
    let (text, basis_name) = match basis {
        BasisArg::Schur => (f.to_string(), "schur"),
        BasisArg::Monomial => (schur_to_monomial(&f).to_string(), "monomial"),
        BasisArg::Fundamental => (schur_to_fundamental(&f).to_string(), "fundamental"),
    };
    Ok(CmdOut {
        command: "expand",
        inputs: json!({ "shape": shape.to_string(), "basis": basis_name }),
        outcome: "ok".into(),
        payload: json!({ "function": text, "degree": shape.size() }),
        lines: vec![text],
        exit: 0,
    })
}

fn oracle(spec: &str) -> Result<CmdOut, String> {
    let shape = parse_shape(spec)?;
    let f = shape.oracle_monomial()?;
    let text = f.to_string();
    Ok(CmdOut {
        command: "oracle",
        inputs: json!({ "shape": shape.to_string() }),
        outcome: "ok".into(),
        payload: json!({ "function": text, "degree": shape.size() }),
        lines: vec![text],
        exit: 0,
    })
}

fn gw(k: u32, n: u32, lam: &str, d: u32, mu: &str, nu: &str) -> Result<CmdOut, String> {
    let lam: Partition = lam.parse()?;
    let mu: Partition = mu.parse()?;
    let nu: Partition = nu.parse()?;
    let value = gw_invariant(&lam, d, &mu, &nu, k, n)?;
    Ok(CmdOut {
        command: "gw",
        inputs: json!({
            "k": k, "n": n, "d": d,
            "lam": lam.to_string(), "mu": mu.to_string(), "nu": nu.to_string(),
        }),
        outcome: "ok".into(),
        payload: json!({ "value": value }),
        lines: vec![value.to_string()],
        exit: 0,
    })
}

fn positivity(spec: &str) -> Result<CmdOut, String> {
    let shape = parse_shape(spec)?;
    let skew = shape.is_skew();
    let f = shape.expand_ribbons();
    let schur_pos = f.is_positive();
    let fund_pos = schur_to_fundamental(&f).is_positive();
    let vars = min_negative_vars(&f);
    let consistent = schur_pos == skew && fund_pos == skew;
    let verdict = if consistent { "consistent" } else { "inconsistent" };
    let vars_text = vars.map_or("none".to_string(), |v| v.to_string());
    Ok(CmdOut {
        command: "positivity",
        inputs: json!({ "shape": shape.to_string() }),
        outcome: verdict.into(),
        payload: json!({
            "skew": skew,
            "schur_positive": schur_pos,
            "fundamental_positive": fund_pos,
            "min_negative_vars": vars,
        }),
        lines: vec![
            format!("skew: {skew}"),
            format!("schur-positive: {schur_pos}"),
            format!("fundamental-positive: {fund_pos}"),
            format!("min-negative-vars: {vars_text}"),
            format!("verdict: {verdict}"),
        ],
        exit: i32::from(!consistent),
    })
}

fn hook(k: u32, nk: u32) -> Result<CmdOut, String> {
    if k < 1 || nk < 1 {
        return Err("both cylinder periods must be at least 1".into());
    }
    let text = hook_expansion(k, nk).to_string();
    Ok(CmdOut {
        command: "hook",
        inputs: json!({ "k": k, "nk": nk }),
        outcome: "ok".into(),
        payload: json!({ "function": text, "degree": k + nk }),
        lines: vec![text],
        exit: 0,
    })
}

fn decompose(spec: &str) -> Result<CmdOut, String> {
    let shape = parse_shape(spec)?;
    let ribbon = shape.is_cylindric_ribbon();
    let (boxed, ok) = shape.ribbon_decomposition();
    let unexpected = ribbon && !ok;
    Ok(CmdOut {
        command: "decompose",
        inputs: json!({ "shape": shape.to_string() }),
        outcome: if unexpected { "unexpected" } else { "ok" }.into(),
        payload: json!({
            "cylindric_ribbon": ribbon,
            "boxed": boxed.to_string(),
            "tail_is_hook_chain": ok,
        }),
        lines: vec![
            format!("cylindric-ribbon: {ribbon}"),
            format!("boxed: {boxed}"),
            format!("tail-is-hook-chain: {ok}"),
        ],
        exit: i32::from(unexpected),
    })
}

fn cylexpand(spec: &str) -> Result<CmdOut, String> {
    let shape = parse_shape(spec)?;
    let inputs = json!({ "shape": shape.to_string() });
    match shape.cyl_schur_expand() {
        Ok(e) => {
            let text = e.to_string();
            Ok(CmdOut {
                command: "cylexpand",
                inputs,
                outcome: "ok".into(),
                payload: json!({ "expansion": text, "degree": e.degree }),
                lines: vec![text],
                exit: 0,
            })
        }
        Err(msg) => Ok(CmdOut {
            command: "cylexpand",
            inputs,
            outcome: "not-expressible".into(),
            payload: json!({ "reason": msg }),
            lines: vec![msg],
            exit: 1,
        }),
    }
}

fn parse_poset_file(text: &str) -> Result<OrientedPoset, String> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let head = lines.next().ok_or("empty poset file")?;
    let n: usize = head
        .strip_prefix("n=")
        .ok_or("first line must be n=<count>")?
        .trim()
        .parse()
        .map_err(|e| format!("element count: {e}"))?;
    let mut relations = Vec::new();
    for line in lines {
        let mut tokens = line.split_whitespace();
        let mut next = |what: &str| {
            tokens
                .next()
                .ok_or_else(|| format!("line {line:?} is missing its {what}"))
        };
        let a: usize = next("lower element")?
            .parse()
            .map_err(|e| format!("line {line:?}: {e}"))?;
        let b: usize = next("upper element")?
            .parse()
            .map_err(|e| format!("line {line:?}: {e}"))?;
        let kind = match next("kind")? {
            "strict" => EdgeKind::Strict,
            "weak" => EdgeKind::Weak,
            other => return Err(format!("line {line:?}: unknown kind {other:?}")),
        };
        if tokens.next().is_some() {
            return Err(format!("trailing tokens on line {line:?}"));
        }
        relations.push((a, b, kind));
    }
    OrientedPoset::new(n, relations)
}

fn poset_k(file: &PathBuf, basis: QBasisArg) -> Result<CmdOut, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let p = parse_poset_file(&text)?;
    let k = k_po(&p);
    let symmetric = is_symmetric(&k);
    let cyclic = has_cycle(&p);
    let cylinder = recognize_cylindric_components(&p);
    let skew = is_skew_shape_poset(&p);
    let shown = match basis {
        QBasisArg::Monomial => k.to_string(),
        QBasisArg::Fundamental => m_to_f(&k).to_string(),
    };
    Ok(CmdOut {
        command: "poset-k",
        inputs: json!({ "file": file.display().to_string() }),
        outcome: "ok".into(),
        payload: json!({
            "function": shown,
            "symmetric": symmetric,
            "mixed_cycle": cyclic,
            "cylinder_components": cylinder,
            "skew_components": skew,
        }),
        lines: vec![
            shown.clone(),
            format!("symmetric: {symmetric}"),
            format!("mixed-cycle: {cyclic}"),
            format!("cylinder-components: {cylinder}"),
            format!("skew-components: {skew}"),
        ],
        exit: 0,
    })
}

fn sweep_out(
    command: &'static str,
    inputs: serde_json::Value,
    result: Result<usize, String>,
    what: &str,
) -> CmdOut {
    match result {
        Ok(count) => CmdOut {
            command,
            inputs,
            outcome: "verified".into(),
            payload: json!({ "checked": count }),
            lines: vec![format!("verified: {what} ({count} cases)")],
            exit: 0,
        },
        Err(report) => CmdOut {
            command,
            inputs,
            outcome: "failed".into(),
            payload: json!({ "report": report }),
            lines: vec![format!("failed: {report}")],
            exit: 1,
        },
    }
}

fn run_verify(cmd: &VerifyCmd) -> Result<CmdOut, String> {
    Ok(match cmd {
        VerifyCmd::Errorterm { kmax, nkmax, dmax } => sweep_out(
            "verify-errorterm",
            json!({ "kmax": kmax, "nkmax": nkmax, "dmax": dmax }),
            verify::verify_errorterm(*kmax, *nkmax, *dmax),
            "extra winding stays within k rows beyond the wound classes",
        ),
        VerifyCmd::Postnikov { kmax, nkmax, dmax, max_cells } => sweep_out(
            "verify-postnikov",
            json!({ "kmax": kmax, "nkmax": nkmax, "dmax": dmax, "max_cells": max_cells }),
            verify::postnikov_sweep(*kmax, *nkmax, *dmax, *max_cells),
            "fillings match structure constants on toric shapes",
        ),
        VerifyCmd::Positivity { kmax, nkmax, dmax, max_cells } => sweep_out(
            "verify-positivity",
            json!({ "kmax": kmax, "nkmax": nkmax, "dmax": dmax, "max_cells": max_cells }),
            verify::positivity_sweep(*kmax, *nkmax, *dmax, *max_cells),
            "positivity in both bases is exactly skewness",
        ),
        VerifyCmd::Stanley { max_elements } => sweep_out(
            "verify-stanley",
            json!({ "max_elements": max_elements }),
            verify::stanley_sweep(*max_elements),
            "symmetric cycle-free orientations are plane skew shapes",
        ),
        VerifyCmd::GkEquivalence { kmax, nkmax, dmax } => sweep_out(
            "verify-gk-equivalence",
            json!({ "kmax": kmax, "nkmax": nkmax, "dmax": dmax }),
            verify::gk_equivalence_sweep(*kmax, *nkmax, *dmax),
            "both expansion routes agree",
        ),
    })
}

fn describe_poset(p: &OrientedPoset) -> String {
    let edges: Vec<String> = p
        .edges()
        .iter()
        .map(|(a, b, kind)| {
            let tag = match kind {
                EdgeKind::Weak => "weak",
                EdgeKind::Strict => "strict",
            };
            format!("{a}<{b} {tag}")
        })
        .collect();
    format!("n={}: {}", p.element_count(), edges.join(", "))
}

fn symmetric_unrecognized_parallel(n: usize) -> Result<Vec<OrientedPoset>, String> {
    let all = enum_oriented_posets(n, PosetFilter::All)?;
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get());
    let chunk = all.len().div_ceil(threads).max(1);
    let mut found = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = all
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .filter(|p| {
                            is_symmetric(&k_po(p)) && !recognize_cylindric_components(p)
                        })
                        .cloned()
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            found.extend(handle.join().expect("scan worker panicked"));
        }
    });
    Ok(found)
}

fn run_search(cmd: &SearchCmd) -> Result<CmdOut, String> {
    match cmd {
        SearchCmd::FalseStatement { max_elements, parallel } => {
            let mut lines = Vec::new();
            let mut findings = Vec::new();
            let mut all_expected = true;
            for n in 1..=*max_elements {
                let found = if *parallel {
                    symmetric_unrecognized_parallel(n)?
                } else {
                    verify::find_symmetric_unrecognized(n)?
                };
                let expected = if n >= 7 { !found.is_empty() } else { found.is_empty() };
                all_expected &= expected;
                lines.push(format!(
                    "{n} elements: {} symmetric unrecognized orientations ({})",
                    found.len(),
                    if expected { "expected" } else { "unexpected" }
                ));
                for p in found.iter().take(3) {
                    lines.push(format!("  {}", describe_poset(p)));
                }
                findings.push(json!({ "elements": n, "found": found.len() }));
            }
            Ok(CmdOut {
                command: "search-false-statement",
                inputs: json!({ "max_elements": max_elements, "parallel": parallel }),
                outcome: if all_expected { "as-expected" } else { "unexpected" }.into(),
                payload: json!({ "by_size": findings }),
                lines,
                exit: i32::from(!all_expected),
            })
        }
        SearchCmd::FPositiveCycle { elements } => {
            let found = verify::find_f_positive_cycles(*elements)?;
            let mut lines = vec![format!(
                "{} positive mixed cycles among {} elements",
                found.len(),
                elements
            )];
            let mut items = Vec::new();
            for (p, f) in &found {
                lines.push(format!("  {}", describe_poset(p)));
                lines.push(format!("  K = {f}"));
                items.push(json!({ "poset": describe_poset(p), "k": f.to_string() }));
            }
            let hit = !found.is_empty();
            Ok(CmdOut {
                command: "search-f-positive-cycle",
                inputs: json!({ "elements": elements }),
                outcome: if hit { "found" } else { "none-found" }.into(),
                payload: json!({ "found": items }),
                lines,
                exit: i32::from(!hit),
            })
        }
    }
}
