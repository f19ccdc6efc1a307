//! `dessin`: passports, plane trees, Shabat systems, Newton polygons and
//! Galois-orbit reports from the command line.
//!
//! Exit codes: 0 success (or definitive/consistent verdict), 1 usage error,
//! 2 computational failure, 3 verification mismatch.

use clap::{Parser, Subcommand};
use dessin::algebra::poly::UPoly;
use dessin::orbits::{analyze, render_text, Verdict};
use dessin::padic::newton_polygon;
use dessin::passport::{Color, Passport};
use dessin::shabat::{
    build_center_system, eliminant, rational_models, solve_numeric, ShabatError,
};
use dessin::trees::enumerate_trees;
use dessin::verify::run_all;
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dessin",
    about = "Arithmetic of plane bipartite trees: passports, tree enumeration, Shabat systems, p-adic Newton polygons, Galois orbit reports",
    long_about = None,
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_parser = ["text", "json"], default_value = "text")]
    format: String,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a passport and report its prime splits and decomposability.
    ///
    /// Passport grammar: `w1,w2,.../b1,b2,...` where each term is `d` or
    /// `d^count`, e.g. `15,3,2,1/4,1^17`.
    Passport {
        passport: String,
        /// Prime to analyze (default: every prime dividing N).
        #[arg(long)]
        prime: Option<u32>,
    },
    /// Enumerate all plane trees with the passport (N <= 24).
    Trees { passport: String },
    /// Build the black-centered system; print equations, eliminant and
    /// numeric solutions.
    Shabat {
        passport: String,
        /// White degree to place at the origin (default: maximal).
        #[arg(long)]
        origin: Option<u32>,
        /// White degree of the eliminant target (default: largest unique).
        #[arg(long)]
        target: Option<u32>,
        /// Working precision in bits for numeric solutions.
        #[arg(long, default_value_t = 128)]
        precision: u32,
    },
    /// Newton polygon of a polynomial at a prime.
    ///
    /// Polynomial format: comma-separated coefficients, constant first,
    /// integers or `n/d` rationals, e.g. `6,-8,3` for 3t^2-8t+6.
    Polygon {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: u32,
    },
    /// Full Galois-orbit structure report for a passport at a prime.
    Orbits {
        passport: String,
        #[arg(long)]
        prime: u32,
        /// White degree of the eliminant target (default: largest unique).
        #[arg(long)]
        target: Option<u32>,
    },
    /// Run the built-in verification suite (all criteria, or one).
    VerifyPaper {
        /// Run a single criterion by id (1..=10).
        #[arg(long)]
        only: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is a
            // usage error.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((output, code)) => {
            emit(output.trim_end());
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, output.as_bytes()) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

/// Print to stdout, treating a closed pipe as a normal early exit.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out
        .write_all(s.as_bytes())
        .and_then(|_| out.write_all(b"\n"))
        .and_then(|_| out.flush());
}

fn run(cli: &Cli) -> Result<(String, u8), String> {
    let json = cli.format == "json";
    match &cli.command {
        Command::Passport { passport, prime } => cmd_passport(passport, *prime, json),
        Command::Trees { passport } => cmd_trees(passport, json),
        Command::Shabat {
            passport,
            origin,
            target,
            precision,
        } => cmd_shabat(passport, *origin, *target, *precision, json),
        Command::Polygon { poly, prime } => cmd_polygon(poly, *prime, json),
        Command::Orbits {
            passport,
            prime,
            target,
        } => cmd_orbits(passport, *prime, *target, json),
        Command::VerifyPaper { only } => cmd_verify(*only, json),
    }
}

#[derive(Serialize)]
struct PassportReport {
    passport: String,
    edges: u64,
    white: Vec<u32>,
    black: Vec<u32>,
    primes: Vec<PrimeReport>,
}

#[derive(Serialize)]
struct PrimeReport {
    p: u32,
    s: u32,
    r: u64,
    white_decomposable: bool,
    white_witness: Option<Vec<u32>>,
    black_decomposable: bool,
    black_witness: Option<Vec<u32>>,
    max_degree_criterion: Option<bool>,
}

fn cmd_passport(text: &str, prime: Option<u32>, json: bool) -> Result<(String, u8), String> {
    let passport = Passport::parse(text).map_err(|e| e.to_string())?;
    let primes: Vec<u32> = match prime {
        Some(p) => vec![p],
        None => primes_dividing(passport.edges()),
    };
    let mut rows = vec![];
    for p in primes {
        let split = passport.prime_power_split(p).map_err(|e| e.to_string())?;
        let (wd, ww) = passport
            .is_decomposable(p, Color::White)
            .map_err(|e| e.to_string())?;
        let (bd, bw) = passport
            .is_decomposable(p, Color::Black)
            .map_err(|e| e.to_string())?;
        let crit = if split.s == 1 {
            Some(passport.max_degree_criterion(p).map_err(|e| e.to_string())?)
        } else {
            None
        };
        rows.push(PrimeReport {
            p,
            s: split.s,
            r: split.r,
            white_decomposable: wd,
            white_witness: ww.map(|w| w.degrees),
            black_decomposable: bd,
            black_witness: bw.map(|w| w.degrees),
            max_degree_criterion: crit,
        });
    }
    let report = PassportReport {
        passport: passport.to_string(),
        edges: passport.edges(),
        white: passport.white().to_vec(),
        black: passport.black().to_vec(),
        primes: rows,
    };
    if json {
        return Ok((to_json(&report)?, 0));
    }
    let mut out = format!(
        "passport {}\nedges    {}\n",
        report.passport, report.edges
    );
    for r in &report.primes {
        out.push_str(&format!(
            "p = {:<3} N = {}^{} * {}\n  white: {}\n  black: {}\n",
            r.p,
            r.p,
            r.s,
            r.r,
            describe_side(r.white_decomposable, &r.white_witness),
            describe_side(r.black_decomposable, &r.black_witness),
        ));
        if let Some(c) = r.max_degree_criterion {
            out.push_str(&format!("  d > p(r-1): {}\n", c));
        }
    }
    Ok((out, 0))
}

fn describe_side(dec: bool, witness: &Option<Vec<u32>>) -> String {
    match (dec, witness) {
        (true, Some(w)) => format!(
            "decomposable, witness {{{}}}",
            w.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        ),
        (true, None) => "decomposable".into(),
        (false, _) => "indecomposable".into(),
    }
}

#[derive(Serialize)]
struct TreesReport {
    passport: String,
    count: usize,
    mirror_fixed: usize,
    trees: Vec<TreeEntry>,
}

#[derive(Serialize)]
struct TreeEntry {
    code: String,
    mirror_symmetric: bool,
    diameter: u32,
    vertices: Vec<String>,
}

fn cmd_trees(text: &str, json: bool) -> Result<(String, u8), String> {
    let passport = Passport::parse(text).map_err(|e| e.to_string())?;
    let trees = enumerate_trees(&passport).map_err(|e| e.to_string())?;
    let entries: Vec<TreeEntry> = trees
        .iter()
        .map(|t| TreeEntry {
            code: t.canonical_code().to_string(),
            mirror_symmetric: t.is_mirror_symmetric(),
            diameter: t.diameter(),
            vertices: t.to_text().lines().map(|l| l.to_string()).collect(),
        })
        .collect();
    let report = TreesReport {
        passport: passport.to_string(),
        count: trees.len(),
        mirror_fixed: entries.iter().filter(|e| e.mirror_symmetric).count(),
        trees: entries,
    };
    if json {
        return Ok((to_json(&report)?, 0));
    }
    let mut out = format!(
        "passport {}\ntrees    {} ({} mirror-symmetric)\n",
        report.passport, report.count, report.mirror_fixed
    );
    for (i, e) in report.trees.iter().enumerate() {
        out.push_str(&format!(
            "\ntree {} code {} diameter {} mirror-symmetric {}\n",
            i, e.code, e.diameter, e.mirror_symmetric
        ));
        for v in &e.vertices {
            out.push_str(&format!("  {}\n", v));
        }
    }
    Ok((out, 0))
}

#[derive(Serialize)]
struct ShabatReport {
    passport: String,
    origin_degree: u32,
    unknown_degrees: Vec<u32>,
    equations: Vec<String>,
    tree_count: u64,
    eliminant: Option<EliminantOut>,
    solutions: Option<Vec<SolutionOut>>,
    rational_models: Vec<ModelOut>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct EliminantOut {
    target_degree: u32,
    poly: String,
    pretty: String,
    expected_degree: Option<u64>,
    degree_matches: Option<bool>,
    removed: Vec<(String, String)>,
}

#[derive(Serialize)]
struct SolutionOut {
    coords: Vec<String>,
    precision_bits: u32,
}

#[derive(Serialize)]
struct ModelOut {
    white: Vec<(String, u32)>,
    black: Vec<(String, u32)>,
    c: String,
    b: String,
}

fn cmd_shabat(
    text: &str,
    origin: Option<u32>,
    target: Option<u32>,
    precision: u32,
    json: bool,
) -> Result<(String, u8), String> {
    let passport = Passport::parse(text).map_err(|e| e.to_string())?;
    let sys = build_center_system(&passport, origin).map_err(|e| e.to_string())?;
    // Coordinate names x2..xn, each tagged with its white degree on output.
    let names: Vec<String> = sys
        .unknowns()
        .iter()
        .map(|u| format!("x{}", u.var + 2))
        .collect();
    let mut notes = vec![];
    let target_idx = match target {
        Some(d) => sys.unknown_with_degree(d),
        None => sys.default_target().or_else(|| {
            // Fall back to the first unknown when no degree is unique.
            (!sys.unknowns().is_empty()).then_some(0)
        }),
    };
    let mut eliminant_out = None;
    let mut solutions = None;
    match target_idx {
        None => notes.push("no eliminant target available".to_string()),
        Some(t) => match eliminant(&sys, t) {
            Ok(rep) => {
                eliminant_out = Some(EliminantOut {
                    target_degree: sys.unknowns()[t].degree,
                    poly: rep.poly.to_string(),
                    pretty: rep.poly.pretty("t"),
                    expected_degree: rep.expected_degree,
                    degree_matches: rep.degree_matches,
                    removed: rep
                        .removed
                        .iter()
                        .map(|r| (r.poly.to_string(), r.reason.clone()))
                        .collect(),
                });
                match solve_numeric(&sys, precision) {
                    Ok(sols) => {
                        solutions = Some(
                            sols.iter()
                                .map(|s| SolutionOut {
                                    coords: s
                                        .coords
                                        .iter()
                                        .map(|(u, x)| {
                                            format!("x{} (deg {}) = {}", u.var + 2, u.degree, x)
                                        })
                                        .collect(),
                                    precision_bits: s.precision_bits,
                                })
                                .collect(),
                        );
                    }
                    Err(e) => notes.push(format!("numeric solving unavailable: {}", e)),
                }
            }
            Err(ShabatError::EliminationTooLarge(k)) => {
                notes.push(format!(
                    "eliminant skipped: {} unknowns exceeds the exact cap",
                    k
                ));
            }
            Err(e) => return Err(e.to_string()),
        },
    }
    let models = rational_models(&sys).unwrap_or_default();
    let report = ShabatReport {
        passport: passport.to_string(),
        origin_degree: sys.origin_degree(),
        unknown_degrees: sys.unknowns().iter().map(|u| u.degree).collect(),
        equations: sys.equations().iter().map(|e| e.pretty(&names)).collect(),
        tree_count: sys.tree_count(),
        eliminant: eliminant_out,
        solutions,
        rational_models: models
            .iter()
            .map(|m| ModelOut {
                white: m.white.iter().map(|(x, k)| (x.to_string(), *k)).collect(),
                black: m.black.iter().map(|(y, l)| (y.to_string(), *l)).collect(),
                c: m.c.to_string(),
                b: m.b_poly().to_string(),
            })
            .collect(),
        notes,
    };
    if json {
        return Ok((to_json(&report)?, 0));
    }
    let mut out = format!(
        "passport     {}\norigin       white degree {} at 0\nunknowns     {:?}\ntrees        {}\n",
        report.passport, report.origin_degree, report.unknown_degrees, report.tree_count
    );
    for (i, eq) in report.equations.iter().enumerate() {
        out.push_str(&format!("equation {}   {} = 0\n", i, eq));
    }
    if let Some(e) = &report.eliminant {
        out.push_str(&format!(
            "eliminant    target degree {}: {}   ({})\n",
            e.target_degree, e.pretty, e.poly
        ));
        if let (Some(exp), Some(m)) = (e.expected_degree, e.degree_matches) {
            out.push_str(&format!("             expected degree {} (match: {})\n", exp, m));
        }
        for (f, why) in &e.removed {
            out.push_str(&format!("removed      {} ({})\n", f, why));
        }
    }
    if let Some(sols) = &report.solutions {
        for (i, s) in sols.iter().enumerate() {
            out.push_str(&format!(
                "solution {}   {} ({} bits)\n",
                i,
                s.coords.join(", "),
                s.precision_bits
            ));
        }
    }
    for m in &report.rational_models {
        out.push_str(&format!(
            "rational     white {:?} black {:?} c = {} b = {}\n",
            m.white, m.black, m.c, m.b
        ));
    }
    for n in &report.notes {
        out.push_str(&format!("note         {}\n", n));
    }
    Ok((out, 0))
}

#[derive(Serialize)]
struct PolygonReport {
    poly: String,
    prime: u32,
    points: Vec<(u64, i64)>,
    hull: Vec<(u64, i64)>,
    segments: Vec<(String, u64)>,
}

fn cmd_polygon(poly: &str, prime: u32, json: bool) -> Result<(String, u8), String> {
    let f = UPoly::parse(poly).map_err(|e| e.to_string())?;
    let np = newton_polygon(&f, prime).map_err(|e| e.to_string())?;
    let report = PolygonReport {
        poly: f.to_string(),
        prime,
        points: np.points.clone(),
        hull: np.hull.clone(),
        segments: np
            .segments
            .iter()
            .map(|s| (s.valuation.to_string(), s.count))
            .collect(),
    };
    if json {
        return Ok((to_json(&report)?, 0));
    }
    let segs: Vec<String> = report
        .segments
        .iter()
        .map(|(v, c)| format!("({}, x{})", v, c))
        .collect();
    Ok((
        format!(
            "poly     {}  ({})\nprime    {}\npoints   {:?}\nhull     {:?}\nsegments {}\n",
            report.poly,
            f.pretty("t"),
            report.prime,
            report.points,
            report.hull,
            segs.join(" ")
        ),
        0,
    ))
}

fn cmd_orbits(
    text: &str,
    prime: u32,
    target: Option<u32>,
    json: bool,
) -> Result<(String, u8), String> {
    let passport = Passport::parse(text).map_err(|e| e.to_string())?;
    let report = analyze(&passport, prime, target).map_err(|e| e.to_string())?;
    let code = if report.verdict == Verdict::Mismatch { 3 } else { 0 };
    if json {
        return Ok((to_json(&report)?, code));
    }
    Ok((render_text(&report), code))
}

#[derive(Serialize)]
struct VerifyReport {
    criteria: Vec<VerifyRow>,
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct VerifyRow {
    id: usize,
    label: String,
    pass: bool,
    detail: String,
}

fn cmd_verify(only: Option<usize>, json: bool) -> Result<(String, u8), String> {
    let outcomes = match only {
        None => run_all(),
        Some(id) => {
            if !(1..=dessin::verify::CRITERION_COUNT).contains(&id) {
                return Err(format!(
                    "criterion id must be 1..={}",
                    dessin::verify::CRITERION_COUNT
                ));
            }
            vec![dessin::verify::run_criterion(id)]
        }
    };
    let rows: Vec<VerifyRow> = outcomes
        .iter()
        .map(|o| VerifyRow {
            id: o.id,
            label: o.label.to_string(),
            pass: o.pass,
            detail: o.detail.clone(),
        })
        .collect();
    let failed = rows.iter().filter(|r| !r.pass).count();
    let report = VerifyReport {
        passed: rows.len() - failed,
        failed,
        criteria: rows,
    };
    let code = if failed > 0 { 3 } else { 0 };
    if json {
        return Ok((to_json(&report)?, code));
    }
    let mut out = String::new();
    for r in &report.criteria {
        out.push_str(&format!(
            "criterion {:>2} [{}] {}: {}\n",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.label,
            r.detail
        ));
    }
    out.push_str(&format!(
        "{} passed, {} failed\n",
        report.passed, report.failed
    ));
    Ok((out, code))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

fn primes_dividing(n: u64) -> Vec<u32> {
    let mut out = vec![];
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p as u32);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m as u32);
    }
    out
}
