//! `bdp`: spectra, characteristic polynomials and symmetric-spectrum
//! decisions for θ-Hermitian adjacency matrices of mixed graphs.

mod render;

use std::fmt;
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use bdp_core::charpoly::{charpoly_at_angle, charpoly_berkowitz, is_symmetric_at};
use bdp_core::constructions::{Construction, LabeledGraph};
use bdp_core::graph::parse_graph;
use bdp_core::numeric::Spectrum;
use bdp_core::reproduce::run_checks;
use bdp_core::rings::Angle;
use bdp_core::search::{min_odd_circumference_table, scan_books, SearchBounds};
use bdp_core::MixedGraph;
use clap::{Parser, Subcommand};
use serde_json::json;

/// `l/m` means θ = lπ/m; `rad:x` is x radians.
#[derive(Debug, Clone, Copy, PartialEq)]
enum AngleArg {
    Rational(Angle),
    Radians(f64),
}

impl AngleArg {
    fn radians(self) -> f64 {
        match self {
            AngleArg::Rational(a) => a.radians(),
            AngleArg::Radians(x) => x,
        }
    }

    fn rational(self) -> Option<Angle> {
        match self {
            AngleArg::Rational(a) => Some(a),
            AngleArg::Radians(_) => None,
        }
    }
}

impl fmt::Display for AngleArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleArg::Rational(a) => write!(f, "{}π/{}", a.numerator(), a.denominator()),
            AngleArg::Radians(x) => write!(f, "{x} rad"),
        }
    }
}

fn parse_rational(s: &str) -> std::result::Result<Angle, String> {
    let (l, m) = s
        .split_once('/')
        .ok_or_else(|| format!("expected l/m, got {s:?}"))?;
    let l: u64 = l.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let m: u64 = m.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    Angle::normalize(l, m).map(|(a, _)| a).map_err(|e| e.to_string())
}

impl FromStr for AngleArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(x) = s.strip_prefix("rad:") {
            let x: f64 = x.trim().parse().map_err(|_| format!("bad radian value {x:?}"))?;
            if !x.is_finite() {
                return Err("angle must be finite".into());
            }
            return Ok(AngleArg::Radians(x));
        }
        if !s.contains('/') {
            return Err(format!(
                "angle {s:?} is ambiguous: write l/m for lπ/m or rad:{s} for radians"
            ));
        }
        parse_rational(s).map(AngleArg::Rational)
    }
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("bad tolerance {s:?}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err("tolerance must be positive".into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "bdp", version, about = "Symmetric spectra of Hermitian adjacency matrices of mixed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Angle θ: `l/m` for lπ/m, or `rad:x` for x radians
    #[arg(long, global = true)]
    angle: Option<AngleArg>,

    /// Relative tolerance for numeric symmetry
    #[arg(long, global = true, default_value = "1e-8", value_parser = parse_tol)]
    tol: f64,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for searches (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues of H_θ and whether they are symmetric about 0
    Spectrum {
        /// Graph file, or a construction such as `book 2,2,1`
        graph: String,
    },
    /// Exact characteristic polynomial det(xI - H_θ), coefficients in z = e^{iθ}
    Charpoly {
        graph: String,
        /// Write the coefficients as polynomials in c = cos θ
        #[arg(long)]
        cos: bool,
        /// Evaluate exactly at θ = lπ/m
        #[arg(long, value_name = "L/M", value_parser = parse_rational)]
        at: Option<Angle>,
    },
    /// Decide symmetry of the spectrum: exact for l/m, numeric for rad:x
    Symmetric { graph: String },
    /// Build a graph and print it in the text format
    Construct {
        /// `book 2,2,1`, `gm 4`, `path 6:3`, `guo-mohar`, `mohar`, `pi-example`, `double(<spec>)`
        spec: String,
    },
    /// Cycles of the underlying graph with their flux in units of θ
    Flux {
        graph: String,
        /// Longest cycle to list
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Exhaustive scan of book graphs G(s_1, …, s_t) at --angle
    Search {
        /// Largest t (default (m+1)/2 + 2)
        #[arg(long)]
        max_t: Option<usize>,
        /// Largest s_1 + … + s_t (default 2m)
        #[arg(long)]
        max_sheets: Option<u64>,
        /// Instead, tabulate the least odd circumference for m in FROM..=TO
        #[arg(long, value_name = "FROM:TO")]
        table: Option<String>,
        /// Symmetric tuples to list in text output
        #[arg(long, default_value_t = 20)]
        show: usize,
    },
    /// Run the reproduction checks; nonzero exit if any fails
    Verify {
        /// Only these checks (comma separated)
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

fn load_graph(arg: &str) -> Result<LabeledGraph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let parsed = parse_graph(&text).with_context(|| format!("parsing {arg}"))?;
        for w in &parsed.warnings {
            log::warn!("{arg}: {w}");
        }
        return Ok(LabeledGraph {
            graph: parsed.graph,
            labels: Default::default(),
        });
    }
    let c: Construction = arg
        .parse()
        .with_context(|| format!("{arg:?} is neither a file nor a construction"))?;
    Ok(c.build()?)
}

fn require_angle(cli: &Cli) -> Result<AngleArg> {
    cli.angle.context("this command needs --angle (l/m or rad:x)")
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

/// Exact for rational angles, numeric otherwise.
fn decide(g: &MixedGraph, angle: AngleArg, spectrum: &Spectrum, tol: f64) -> Result<(bool, &'static str)> {
    Ok(match angle {
        AngleArg::Rational(a) => (is_symmetric_at(g, a)?, "exact"),
        AngleArg::Radians(_) => (spectrum.is_symmetric(tol), "numeric"),
    })
}

fn angle_json(angle: AngleArg) -> serde_json::Value {
    match angle {
        AngleArg::Rational(a) => json!({"l": a.numerator(), "m": a.denominator(), "radians": a.radians()}),
        AngleArg::Radians(x) => json!({"radians": x}),
    }
}

fn cmd_spectrum(cli: &Cli, graph: &str) -> Result<()> {
    let angle = require_angle(cli)?;
    let g = load_graph(graph)?.graph;
    let spectrum = Spectrum::of(&g, angle.radians())?;
    let (symmetric, method) = decide(&g, angle, &spectrum, cli.tol)?;
    if cli.json {
        return print_json(&json!({
            "angle": angle_json(angle),
            "eigenvalues": serde_json::to_value(&spectrum)?["eigenvalues"],
            "symmetric": symmetric,
            "method": method,
        }));
    }
    println!("θ = {angle}, n = {}", g.n());
    for x in &spectrum.eigenvalues {
        println!("{:>20}", render::float(*x));
    }
    println!("symmetric = {symmetric} ({method})");
    Ok(())
}

fn cmd_charpoly(cli: &Cli, graph: &str, cos: bool, at: Option<Angle>) -> Result<()> {
    let g = load_graph(graph)?.graph;
    let p = charpoly_berkowitz(&g);
    let cos_coeffs = if cos { Some(p.cos_coeffs()?) } else { None };
    let values = at.map(|a| charpoly_at_angle(&g, a)).transpose()?;

    if cli.json {
        let mut out = json!({"charpoly": p});
        if let Some(c) = &cos_coeffs {
            out["cos_coefficients"] = serde_json::to_value(c)?;
        }
        if let (Some(a), Some(v)) = (at, &values) {
            out["at"] = json!({"l": a.numerator(), "m": a.denominator(), "values": v});
        }
        return print_json(&out);
    }

    let constants: Option<Vec<_>> = p.coeffs().iter().map(|c| c.as_constant()).collect();
    match &constants {
        Some(c) => println!("det(xI - H) = {}", render::integer_poly(c)),
        None => println!("det(xI - H) = Σ a_j x^(n-j), n = {}, z = e^(iθ)", p.degree()),
    }
    if constants.is_none() || cos {
        for (j, a) in p.coeffs().iter().enumerate() {
            match &cos_coeffs {
                Some(c) => match render::cos_factored(a) {
                    Some(f) => println!("a_{j} = {f} = {}", c[j]),
                    None => println!("a_{j} = {}", c[j]),
                },
                None => println!("a_{j} = {a}"),
            }
        }
    }
    if let (Some(a), Some(v)) = (at, values) {
        let ints: Option<Vec<_>> = v.iter().map(render::as_integer).collect();
        println!("at θ = {}π/{}:", a.numerator(), a.denominator());
        match ints {
            Some(c) => println!("  {}", render::integer_poly(&c)),
            None => {
                for (j, e) in v.iter().enumerate() {
                    println!("  a_{j} = {e}");
                }
            }
        }
    }
    Ok(())
}

fn cmd_symmetric(cli: &Cli, graph: &str) -> Result<()> {
    let angle = require_angle(cli)?;
    let g = load_graph(graph)?.graph;
    let (symmetric, method) = match angle {
        AngleArg::Rational(a) => (is_symmetric_at(&g, a)?, "exact"),
        AngleArg::Radians(x) => (Spectrum::of(&g, x)?.is_symmetric(cli.tol), "numeric"),
    };
    if cli.json {
        return print_json(&json!({
            "angle": angle_json(angle),
            "symmetric": symmetric,
            "method": method,
            "bipartite": g.is_bipartite(),
        }));
    }
    println!("symmetric = {symmetric} ({method}, θ = {angle})");
    Ok(())
}

fn cmd_construct(cli: &Cli, spec: &str) -> Result<()> {
    let c: Construction = spec.parse()?;
    let lg = c.build()?;
    if cli.json {
        return print_json(&lg);
    }
    println!("# {spec}");
    println!("# labels {}", serde_json::to_string(&lg.labels)?);
    print!("{}", lg.graph.to_text());
    Ok(())
}

fn cmd_flux(cli: &Cli, graph: &str, max_len: Option<usize>) -> Result<()> {
    let g = load_graph(graph)?.graph;
    let mut rows = Vec::new();
    for c in g.enumerate_cycles(max_len) {
        let flux = g.cycle_flux(&c)?;
        rows.push((c, flux));
    }
    if cli.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(c, f)| json!({"cycle": c, "length": c.len(), "flux": f}))
            .collect();
        return print_json(&json!({"cycles": v, "odd_circumference": g.odd_circumference()}));
    }
    println!("{:>6} {:>6}  cycle", "length", "flux");
    for (c, f) in &rows {
        println!("{:>6} {:>6}  {c}", c.len(), f);
    }
    match g.odd_circumference() {
        Some(k) => println!("odd circumference {k}"),
        None => println!("no odd cycles"),
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s.split_once(':').context("expected FROM:TO")?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn cmd_search(cli: &Cli, max_t: Option<usize>, max_sheets: Option<u64>, table: Option<&str>, show: usize) -> Result<()> {
    if let Some(range) = table {
        let (from, to) = parse_range(range)?;
        let bounds = match (max_t, max_sheets) {
            (None, None) => None,
            (t, s) => {
                let d = SearchBounds::default_for(to);
                Some(SearchBounds::new(t.unwrap_or(d.max_t), s.unwrap_or(d.max_sheets))?)
            }
        };
        let rows = min_odd_circumference_table(from, to, bounds)?;
        if cli.json {
            return print_json(&rows);
        }
        println!("{:>3} {:>9} {:>7}  witness", "m", "odd circ", "sheets");
        for r in &rows {
            match &r.minimum {
                Some(min) => println!(
                    "{:>3} {:>9} {:>7}  {}{}",
                    r.m,
                    min.odd_circumference,
                    min.sheet_count,
                    min.witness,
                    if min.witness_verified && r.numerators_agree { "" } else { "  (check failed)" }
                ),
                None => println!("{:>3} {:>9} {:>7}  none within t <= {}, sheets <= {}", r.m, "-", "-", r.bounds.max_t, r.bounds.max_sheets),
            }
        }
        println!("minimal among book graphs within the search bounds");
        return Ok(());
    }

    let angle = require_angle(cli)?
        .rational()
        .context("search needs a rational angle l/m")?;
    let d = SearchBounds::default_for(angle.denominator());
    let bounds = SearchBounds::new(max_t.unwrap_or(d.max_t), max_sheets.unwrap_or(d.max_sheets))?;
    let report = scan_books(angle.numerator(), angle.denominator(), bounds)?;
    if cli.json {
        return print_json(&report);
    }
    println!(
        "θ = {}π/{}, 2 <= t <= {}, 1 <= sheets <= {}",
        angle.numerator(),
        angle.denominator(),
        bounds.max_t,
        bounds.max_sheets
    );
    println!("{:>3} {:>12} {:>10}", "t", "instances", "symmetric");
    for l in &report.layers {
        println!("{:>3} {:>12} {:>10}", l.t, l.instances, l.symmetric.len());
    }
    match &report.minimum {
        Some(m) => println!(
            "least odd circumference {} (t = {}), {} sheets, witness {} ({})",
            m.odd_circumference,
            m.t,
            m.sheet_count,
            m.witness,
            if m.witness_verified { "confirmed by the full check" } else { "FULL CHECK FAILED" }
        ),
        None => println!("no symmetric book graph within the bounds"),
    }
    let total = report.symmetric().count();
    if total > 0 && show > 0 {
        println!("symmetric tuples ({} of {total}):", show.min(total));
        for p in report.symmetric().take(show) {
            println!("  {p}");
        }
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, only: &[String]) -> Result<bool> {
    let report = run_checks(only)?;
    if cli.json {
        print_json(&report)?;
    } else {
        for c in &report.checks {
            println!(
                "{} {:<22} {:>7.2}s  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.seconds,
                c.detail
            );
        }
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        println!("{} checks, {failed} failed", report.checks.len());
    }
    Ok(report.passed)
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    match &cli.command {
        Command::Spectrum { graph } => cmd_spectrum(cli, graph)?,
        Command::Charpoly { graph, cos, at } => cmd_charpoly(cli, graph, *cos, *at)?,
        Command::Symmetric { graph } => cmd_symmetric(cli, graph)?,
        Command::Construct { spec } => cmd_construct(cli, spec)?,
        Command::Flux { graph, max_len } => cmd_flux(cli, graph, *max_len)?,
        Command::Search {
            max_t,
            max_sheets,
            table,
            show,
        } => cmd_search(cli, *max_t, *max_sheets, table.as_deref(), *show)?,
        Command::Verify { only } => return cmd_verify(cli, only),
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
