use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trapcong::dcong;
use trapcong::icong::{self, CountMode};
use trapcong::kcong;
use trapcong::report::{exit_code, Report};
use trapcong::verify::{self, Scope};
use trapcong::Strategy;

/// Like `println!`, but a closed stdout (e.g. `| head`) is not an error.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "trapcong", version, about = "Congruent numbers on right trapezoids")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Notion {
    I,
    K,
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    F,
    G,
    Intersection,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Oracle,
    #[value(name = "star_forms", alias = "star-forms")]
    StarForms,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Section1,
    Section2,
    Section3,
    Section4,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether N is congruent under one notion and print a witness.
    Classify {
        #[arg(long, value_enum)]
        notion: Notion,
        /// Ratio a = k d (notion k).
        #[arg(long)]
        k: Option<u64>,
        /// Offset d (notion d).
        #[arg(long)]
        d: Option<u64>,
        /// Numerator bound for rational point searches.
        #[arg(long, default_value_t = 200)]
        bound: u64,
        n: u64,
    },
    /// Counting functions up to X.
    Count {
        #[arg(value_enum)]
        kind: CountKind,
        #[arg(default_value_t = 100_000)]
        x: u64,
        #[arg(long, value_enum, default_value = "star_forms")]
        mode: Mode,
    },
    /// Integer solutions of (k^2 - 1) n = alpha^4 - beta^4.
    Table {
        /// Print `n,k,alpha,beta` rows
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[arg(long, default_value_t = 1000)]
        k_max: u64,
    },
    /// k values for which N is k-congruent, with witnesses.
    SearchK {
        n: u64,
        #[arg(long, default_value_t = 1000)]
        k_max: u64,
    },
    /// Solve the Pell reduction for (lambda, N).
    Pell {
        /// Split lambda (k + 1) = alpha^2 - beta^2
        #[arg(long)]
        lambda: u64,
        n: u64,
        /// Number of solutions to list
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Reproduce every checkable published claim.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
        /// Known misprints do not affect the exit code.
        #[arg(long)]
        allow_errata: bool,
    },
}

const NOT_FOUND: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let strategy = if cli.sequential { Strategy::Sequential } else { Strategy::default() };
    match run(&cli, strategy) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn run(cli: &Cli, strategy: Strategy) -> Result<u8, String> {
    match &cli.command {
        Command::Classify { notion, k, d, bound, n } => classify(cli.json, *notion, *k, *d, *bound, *n),
        Command::Count { kind, x, mode } => count(cli.json, *kind, *x, *mode, strategy),
        Command::Table { csv, n_min, n_max, k_max } => table(cli.json, *csv, *n_min, *n_max, *k_max, strategy),
        Command::SearchK { n, k_max } => search_k(cli.json, *n, *k_max, strategy),
        Command::Pell { lambda, n, count } => pell(cli.json, *lambda, *n, *count),
        Command::VerifyPaper { scope, allow_errata } => verify_paper(cli.json, *scope, *allow_errata, strategy),
    }
}

fn classify(json: bool, notion: Notion, k: Option<u64>, d: Option<u64>, bound: u64, n: u64) -> Result<u8, String> {
    if n == 0 {
        return Err("N must be >= 1".into());
    }
    match notion {
        Notion::I => {
            let ws = icong::witness_oracle(n);
            let cert = icong::classify_prop11(n);
            if json {
                print_json(&json!({
                    "n": n, "notion": "i", "congruent": !ws.is_empty(),
                    "certificate": cert, "witnesses": ws, "forms": icong::star_forms(n),
                }));
            } else if let Some(w) = ws.iter().find(|w| w.d > 0).or(ws.first()) {
                outln!("i-congruent: yes; witness {w}");
                if ws.len() > 1 {
                    outln!("{} trapezoids in total", ws.len());
                }
            } else {
                let forms: Vec<String> = icong::star_forms(n).iter().map(|f| f.to_string()).collect();
                if forms.is_empty() {
                    outln!("i-congruent: no");
                } else {
                    outln!("i-congruent: no; star forms: {}", forms.join(", "));
                }
            }
            Ok(if ws.is_empty() { NOT_FOUND } else { 0 })
        }
        Notion::K => {
            let k = k.ok_or("--k is required for notion k")?;
            let found = kcong::find_k_witness(n, k, bound).map_err(|e| e.to_string())?;
            if json {
                let w = found.as_ref().map(|(t, src)| json!({ "trapezoid": t, "source": src }));
                print_json(&json!({ "n": n, "notion": "k", "k": k, "congruent": found.is_some(), "witness": w }));
            } else {
                match &found {
                    Some((t, src)) => outln!("{k}-congruent: yes; witness {t} ({})", source_name(src)),
                    None => outln!("{k}-congruent: not found with bound {bound}"),
                }
            }
            Ok(if found.is_some() { 0 } else { NOT_FOUND })
        }
        Notion::D => {
            let d = d.ok_or("--d is required for notion d")?;
            let found = dcong::find_d_witness(n, d, bound).map_err(|e| e.to_string())?;
            if json {
                print_json(&json!({ "n": n, "notion": "d", "d": d, "congruent": found.is_some(), "witness": found }));
            } else {
                match &found {
                    Some(w) => outln!(
                        "{d}-congruent: yes; witness (a,b,c)=({},{},{}), d={d}",
                        trapcong::arith::rat_display(&w.a),
                        trapcong::arith::rat_display(&w.b),
                        trapcong::arith::rat_display(&w.c)
                    ),
                    None => outln!("{d}-congruent: not found with bound {bound}"),
                }
            }
            Ok(if found.is_some() { 0 } else { NOT_FOUND })
        }
    }
}

fn source_name(src: &kcong::KSource) -> String {
    serde_json::to_value(src).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn count(json: bool, kind: CountKind, x: u64, mode: Mode, strategy: Strategy) -> Result<u8, String> {
    if x == 0 {
        return Err("X must be >= 1".into());
    }
    match kind {
        CountKind::F => {
            let mode = match mode {
                Mode::Oracle => CountMode::Oracle,
                Mode::StarForms => CountMode::StarForms,
            };
            let f = icong::count_f(x, mode, strategy);
            let ratio = f as f64 * (x as f64).ln() / x as f64;
            if json {
                print_json(&json!({ "x": x, "f": f, "ratio": ratio, "limit": icong::F_LIMIT }));
            } else {
                outln!("f({x}) = {f}");
                outln!("f(x) ln x / x = {ratio:.6} (limit 1 + ln 2 = {:.6})", icong::F_LIMIT);
            }
        }
        CountKind::G => {
            let entries = icong::list_d0(x);
            let (lo, hi) = (icong::g_lower(x), icong::g_upper(x));
            if json {
                print_json(&json!({ "x": x, "g": entries.len(), "lower": lo, "upper": hi, "entries": entries }));
            } else {
                outln!("g({x}) = {}", entries.len());
                outln!("bounds: {lo:.3} < g < {hi:.3}");
                let values: Vec<String> = entries.iter().map(|e| e.n.to_string()).collect();
                if entries.len() <= 100 {
                    outln!("{}", values.join(","));
                }
            }
        }
        CountKind::Intersection => {
            let set = icong::intersection_set(x);
            let printed: Vec<u64> = verify::PRINTED_INTERSECTION.iter().copied().filter(|&n| n <= x).collect();
            let missing: Vec<u64> = set.iter().copied().filter(|n| !printed.contains(n)).collect();
            let extra: Vec<u64> = printed.iter().copied().filter(|n| !set.contains(n)).collect();
            if json {
                print_json(&json!({
                    "x": x, "set": set, "count": set.len(),
                    "printed": printed, "missing_from_printed": missing, "extra_in_printed": extra,
                }));
            } else {
                outln!("{} values: {set:?}", set.len());
                outln!("diff vs printed set: missing {missing:?}, extra {extra:?}");
            }
        }
    }
    Ok(0)
}

fn table(json: bool, csv: bool, n_min: u64, n_max: u64, k_max: u64, strategy: Strategy) -> Result<u8, String> {
    let rows: Vec<kcong::QuarticRow> =
        (n_min.max(1)..=n_max).flat_map(|n| kcong::quartic_search(n, k_max, strategy)).collect();
    if csv {
        outln!("n,k,alpha,beta");
        for r in &rows {
            outln!("{},{},{},{}", r.n, r.k, r.alpha, r.beta);
        }
    } else if json {
        print_json(&serde_json::to_value(&rows).expect("rows serialize"));
    } else {
        for n in n_min.max(1)..=n_max {
            let cells: Vec<String> =
                rows.iter().filter(|r| r.n == n).map(|r| format!("({}, {}, {})", r.k, r.alpha, r.beta)).collect();
            outln!("{n:>3} | {}", cells.join(", "));
        }
    }
    Ok(0)
}

fn search_k(json: bool, n: u64, k_max: u64, strategy: Strategy) -> Result<u8, String> {
    if n == 0 {
        return Err("N must be >= 1".into());
    }
    let mut found: Vec<Value> = Vec::new();
    for (k, m) in kcong::cubic_identity_solutions(n).map_err(|e| e.to_string())? {
        if m < 2u32.into() {
            continue;
        }
        let t = kcong::cubic_identity_witness(n, &k, &m).map_err(|e| e.to_string())?;
        found.push(json!({ "k": k.to_string(), "source": "cubic_identity", "m": m.to_string(), "trapezoid": t }));
    }
    for row in kcong::quartic_search(n, k_max, strategy) {
        let t = kcong::quartic_to_trapezoid(&row).map_err(|e| e.to_string())?;
        found.push(json!({ "k": row.k.to_string(), "source": "quartic", "alpha": row.alpha, "beta": row.beta, "trapezoid": t }));
    }
    if json {
        print_json(&json!({ "n": n, "k_max": k_max, "results": found }));
    } else {
        for f in &found {
            outln!(
                "k = {:>6}  {:<15} {}",
                f["k"].as_str().unwrap_or(""),
                f["source"].as_str().unwrap_or(""),
                describe(&f["trapezoid"])
            );
        }
    }
    Ok(if found.is_empty() { NOT_FOUND } else { 0 })
}

fn describe(t: &Value) -> String {
    let g = |k: &str| t[k].as_str().unwrap_or("?").trim_end_matches("/1").to_string();
    format!("(a,b,c,d)=({},{},{},{})", g("a"), g("b"), g("c"), g("d"))
}

fn pell(json: bool, lambda: u64, n: u64, count: usize) -> Result<u8, String> {
    let problem = kcong::pell_reduce(n, lambda).map_err(|e| e.to_string())?;
    let sol = kcong::pell_solve(&problem, count).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = sol
        .pairs
        .iter()
        .map(|(a, b)| {
            let k = kcong::pell_to_k(n, lambda, a, b);
            json!({ "alpha": a.to_string(), "beta": b.to_string(), "k": k.map(|k| k.to_string()) })
        })
        .collect();
    if json {
        print_json(&json!({ "problem": problem, "finite": sol.finite, "solutions": rows }));
    } else {
        outln!(
            "({}) alpha^2 - ({}) beta^2 = {}   [X^2 - {} beta^2 = {}]",
            problem.scale,
            n + lambda * lambda,
            2 * n * lambda,
            problem.d,
            problem.rhs
        );
        for r in &rows {
            let k = r["k"].as_str().map(|k| format!("k = {k}")).unwrap_or_else(|| "no integral k".into());
            outln!("alpha = {}, beta = {}: {k}", r["alpha"].as_str().unwrap_or(""), r["beta"].as_str().unwrap_or(""));
        }
        if sol.finite {
            outln!("(D is a square: the list is complete)");
        }
    }
    Ok(if rows.is_empty() { NOT_FOUND } else { 0 })
}

fn verify_paper(json: bool, scope: ScopeArg, allow_errata: bool, strategy: Strategy) -> Result<u8, String> {
    let scope = match scope {
        ScopeArg::All => Scope::All,
        ScopeArg::Section1 => Scope::Section1,
        ScopeArg::Section2 => Scope::Section2,
        ScopeArg::Section3 => Scope::Section3,
        ScopeArg::Section4 => Scope::Section4,
    };
    let cfg = verify::Config { strategy, ..verify::Config::default() };
    let reports: Vec<Report> = verify::verify_paper(scope, &cfg);
    if json {
        print_json(&serde_json::to_value(&reports).expect("reports serialize"));
    } else {
        for r in &reports {
            outln!("{r}");
        }
        let count = |s| reports.iter().filter(|r| r.status == s).count();
        use trapcong::Status::*;
        outln!(
            "\n{} claims: {} PASS, {} FAIL ({} errata), {} NOTE",
            reports.len(),
            count(Pass),
            count(Fail),
            reports.iter().filter(|r| r.errata).count(),
            count(Note)
        );
    }
    Ok(exit_code(&reports, allow_errata) as u8)
}
