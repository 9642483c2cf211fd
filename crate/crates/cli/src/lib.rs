//! Argument parsing, dispatch and report rendering for the `k3lab` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use k3lab::arith::{format_rat, parse_poly, ExtVal};
use k3lab::autom::{
    check_weierstrass_invariance, check_weighted_invariance, omega_is_primitive, omega_multiplier, orders, weighted_order,
    MonomialAutomorphism, WeightedAutomorphism, WeightedHypersurface,
};
use k3lab::catalog::{self, Outcome, Status};
use k3lab::classify::{enumerate_stable_pairs, orbit_count_solutions, power_of_three_report};
use k3lab::cyclotomic::{cyclotomic_poly, fixed_discriminant_dimension, phi_euler, trace_power, CycloModel};
use k3lab::fibration::{
    configuration, j_invariant, minimalize, trivial_lattice, FiberAssignment, FiberConfiguration, FibrationError,
    Place, Valuations, WeierstrassModel,
};
use k3lab::kodaira::FiberType;
use k3lab::lattice::{is_prime, parse_lattice_spec, IntLattice};
use k3lab::mw::{mw_determinant, realize_height, shioda_tate, torsion_free_bound, trivial_determinant, HeightContext};

/// Exit status for input errors.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for a failed verification.
pub const EXIT_FAIL: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "k3lab", version, about = "Exact checks for elliptic K3 surfaces with non-symplectic automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Minimalize a Weierstrass model and classify its singular fibers.
    Analyze {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a diagonal automorphism of a Weierstrass model or weighted hypersurface.
    Autocheck(AutocheckArgs),
    /// Enumerate stable fiber pairs for a prime, or feasibility data for 3, 9, 27.
    Enumerate {
        #[arg(long, conflicts_with = "power_of_three", required_unless_present = "power_of_three")]
        prime: Option<u32>,
        #[arg(long)]
        power_of_three: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Invariants of a direct sum of U, A_n, D_n, E_n.
    Lattice {
        /// Summands joined by '+', e.g. U+E8+E6.
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Cyclotomic data for multiplication by a primitive N-th root of unity.
    Cyclo {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        json: bool,
    },
    /// Mordell-Weil data for a configuration written by `analyze --json`.
    Mw {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        rho: u64,
        #[arg(long)]
        det_s: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// List or verify the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Args, Debug)]
struct AutocheckArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long)]
    order: u64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<i64>,
    /// Comma-separated weights, e.g. "1,1,1,3".
    #[arg(long)]
    weighted: Option<String>,
    /// Sum of monomials in the variables given by --vars.
    #[arg(long, allow_hyphen_values = true)]
    equation: Option<String>,
    /// Comma-separated exponents of the root of unity per coordinate.
    #[arg(long, allow_hyphen_values = true)]
    exponents: Option<String>,
    /// Comma-separated variable names; defaults to x0,x1,...,y.
    #[arg(long)]
    vars: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Verify {
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum EnumerateTarget {
    Prime(u32),
    PowerOfThree(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum AutoCheckTarget {
    Weierstrass { model: WeierstrassModel, g: MonomialAutomorphism },
    Weighted { hypersurface: WeightedHypersurface, g: WeightedAutomorphism },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogCommand {
    List,
    Verify { id: Option<String>, parallel: bool },
}

/// A validated command.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Analyze { model: WeierstrassModel, json: bool },
    AutoCheck { target: AutoCheckTarget, json: bool },
    Enumerate { target: EnumerateTarget, json: bool },
    Lattice { lattice: IntLattice, json: bool },
    Cyclo { order: u64, json: bool },
    Mw { report: AnalysisReport, rho: u64, det_s: Option<u64>, json: bool },
    Catalog { action: CatalogCommand, json: bool },
}

/// Rejected input, with the text to show the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub message: String,
    /// `--help` and `--version` end with status 0.
    pub exit_code: i32,
}

fn input_error(message: impl Into<String>) -> UsageError {
    UsageError {
        message: format!("error: {}\n\nFor more information, try '--help'.\n", message.into()),
        exit_code: EXIT_INPUT,
    }
}

fn parse_model(a: &str, b: &str) -> Result<WeierstrassModel, UsageError> {
    let a = parse_poly(a).map_err(|e| input_error(format!("--a: {e}")))?;
    let b = parse_poly(b).map_err(|e| input_error(format!("--b: {e}")))?;
    Ok(WeierstrassModel::new(a, b))
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> Result<Vec<T>, UsageError> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| input_error(format!("{flag}: cannot parse {x:?}"))))
        .collect()
}

fn autocheck_target(a: AutocheckArgs) -> Result<AutoCheckTarget, UsageError> {
    if let Some(weights) = a.weighted {
        let weights: Vec<u64> = parse_list("--weighted", &weights)?;
        let equation = a.equation.ok_or_else(|| input_error("--weighted needs --equation"))?;
        let exps = a.exponents.ok_or_else(|| input_error("--weighted needs --exponents"))?;
        let exps: Vec<i64> = parse_list("--exponents", &exps)?;
        let names: Vec<String> = match a.vars {
            Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
            None => {
                let mut v: Vec<String> = (0..weights.len().saturating_sub(1)).map(|i| format!("x{i}")).collect();
                v.push("y".to_string());
                v
            }
        };
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let hypersurface = WeightedHypersurface::parse(weights, &refs, &equation).map_err(|e| input_error(e.to_string()))?;
        let g = WeightedAutomorphism::new(a.order, exps).map_err(|e| input_error(e.to_string()))?;
        if g.exponents.len() != hypersurface.weights.len() {
            return Err(input_error("--exponents must have one entry per weight"));
        }
        return Ok(AutoCheckTarget::Weighted { hypersurface, g });
    }
    let model = parse_model(a.a.as_deref().unwrap_or("0"), a.b.as_deref().unwrap_or("0"))?;
    let need = |v: Option<i64>, name: &str| v.ok_or_else(|| input_error(format!("missing --{name}")));
    let g = MonomialAutomorphism::new(a.order, need(a.alpha, "alpha")?, need(a.beta, "beta")?, need(a.gamma, "gamma")?)
        .map_err(|e| input_error(e.to_string()))?;
    Ok(AutoCheckTarget::Weierstrass { model, g })
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<Command, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| UsageError {
        message: e.render().to_string(),
        exit_code: if e.use_stderr() { EXIT_INPUT } else { 0 },
    })?;
    Ok(match cli.command {
        Sub::Analyze { a, b, json } => Command::Analyze { model: parse_model(&a, &b)?, json },
        Sub::Autocheck(args) => {
            let json = args.json;
            Command::AutoCheck { target: autocheck_target(args)?, json }
        }
        Sub::Enumerate { prime, power_of_three, json } => {
            let target = match (prime, power_of_three) {
                (Some(p), None) => EnumerateTarget::Prime(p),
                (None, Some(n)) if [3, 9, 27].contains(&n) => EnumerateTarget::PowerOfThree(n),
                (None, Some(n)) => return Err(input_error(format!("--power-of-three must be 3, 9 or 27, got {n}"))),
                _ => return Err(input_error("give exactly one of --prime, --power-of-three")),
            };
            Command::Enumerate { target, json }
        }
        Sub::Lattice { spec, json } => {
            Command::Lattice { lattice: parse_lattice_spec(&spec).map_err(|e| input_error(e.to_string()))?, json }
        }
        Sub::Cyclo { order, json } => {
            if order == 0 {
                return Err(input_error("--order must be positive"));
            }
            Command::Cyclo { order, json }
        }
        Sub::Mw { config, rho, det_s, json } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| input_error(format!("cannot read {}: {e}", config.display())))?;
            let report: AnalysisReport =
                serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", config.display())))?;
            report.configuration().map_err(input_error)?;
            if det_s == Some(0) {
                return Err(input_error("--det-s must be positive"));
            }
            Command::Mw { report, rho, det_s, json }
        }
        Sub::Catalog { action } => match action {
            CatalogAction::List { json } => Command::Catalog { action: CatalogCommand::List, json },
            CatalogAction::Verify { id, json, parallel } => {
                if let Some(id) = &id {
                    if catalog::entries().iter().all(|e| !e.id.contains(id.as_str())) {
                        return Err(input_error(format!("no catalog entry matches {id:?}")));
                    }
                }
                Command::Catalog { action: CatalogCommand::Verify { id, parallel }, json }
            }
        },
    })
}

/// One place of an analysed model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceReport {
    pub place: String,
    pub degree: usize,
    pub va: ExtVal,
    pub vb: ExtVal,
    pub vd: u32,
    pub fiber: FiberType,
    pub euler: u32,
}

/// Machine-readable output of `analyze`; also the input of `mw`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub a: String,
    pub b: String,
    pub minimal_a: String,
    pub minimal_b: String,
    pub discriminant: String,
    pub places: Vec<PlaceReport>,
    pub euler_total: u32,
    pub k3: bool,
    pub trivial_lattice: String,
    pub trivial_rank: usize,
    pub j_invariant: String,
    pub note: Option<String>,
}

impl AnalysisReport {
    pub fn build(m: &WeierstrassModel) -> Result<Self, FibrationError> {
        let min = minimalize(m)?;
        let c = configuration(&min)?;
        let total = c.euler_total();
        let degree_ok = min.check_k3_degrees();
        let k3 = total == 24 && degree_ok.is_ok();
        let note = match (&degree_ok, total) {
            (Err(e), _) => Some(e.to_string()),
            (Ok(()), 24) => None,
            (Ok(()), 12) => Some(FibrationError::RationalElliptic.to_string()),
            (Ok(()), t) => Some(FibrationError::EulerMismatch(t).to_string()),
        };
        let tl = trivial_lattice(&c);
        Ok(AnalysisReport {
            a: m.a.to_string(),
            b: m.b.to_string(),
            minimal_a: min.a.to_string(),
            minimal_b: min.b.to_string(),
            discriminant: min.discriminant()?.to_string(),
            places: c
                .assignments
                .iter()
                .map(|x| PlaceReport {
                    place: x.place.to_string(),
                    degree: x.place.degree(),
                    va: x.valuations.va,
                    vb: x.valuations.vb,
                    vd: x.valuations.vd,
                    fiber: x.fiber,
                    euler: x.fiber.euler_number(),
                })
                .collect(),
            euler_total: total,
            k3,
            trivial_lattice: tl.name().unwrap_or("?").to_string(),
            trivial_rank: tl.rank(),
            j_invariant: j_invariant(&min)?.to_string(),
            note,
        })
    }

    /// Rebuilds the fiber configuration from the place list.
    pub fn configuration(&self) -> Result<FiberConfiguration, String> {
        let mut assignments = Vec::new();
        for p in &self.places {
            let place: Place = p.place.parse().map_err(|e| format!("place {:?}: {e}", p.place))?;
            if place.degree() != p.degree {
                return Err(format!("place {:?} has degree {}, not {}", p.place, place.degree(), p.degree));
            }
            assignments.push(FiberAssignment {
                place,
                fiber: p.fiber,
                valuations: Valuations { va: p.va, vb: p.vb, vd: p.vd },
            });
        }
        Ok(FiberConfiguration { assignments })
    }
}

fn render_json(v: &impl Serialize) -> String {
    let value = serde_json::to_value(v).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values print");
    s.push('\n');
    s
}

fn fiber_summary(c: &FiberConfiguration) -> String {
    let parts: Vec<String> = c
        .assignments
        .iter()
        .filter(|a| a.fiber.is_singular())
        .map(|a| if a.place.degree() == 1 { a.fiber.to_string() } else { format!("{}x{}", a.fiber, a.place.degree()) })
        .collect();
    if parts.is_empty() {
        "none".to_string()
    } else {
        parts.join(", ")
    }
}

fn run_analyze(model: &WeierstrassModel, json: bool) -> (i32, String) {
    let report = match AnalysisReport::build(model) {
        Ok(r) => r,
        Err(e) => return (EXIT_INPUT, format!("error: {e}\n")),
    };
    let code = if report.k3 { 0 } else { EXIT_FAIL };
    if json {
        return (code, render_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "Model: y^2 = x^3 + ({})x + ({})", report.a, report.b);
    if report.minimal_a != report.a || report.minimal_b != report.b {
        let _ = writeln!(out, "Minimal model: y^2 = x^3 + ({})x + ({})", report.minimal_a, report.minimal_b);
    }
    let _ = writeln!(out, "Discriminant: {}", report.discriminant);
    let _ = writeln!(out, "Places:");
    for p in &report.places {
        let _ = writeln!(
            out,
            "  {:<16} deg {:<3} v(a)={:<4} v(b)={:<4} v(D)={:<3} {:<5} e={}",
            p.place, p.degree, p.va.to_string(), p.vb.to_string(), p.vd, p.fiber.to_string(), p.euler
        );
    }
    let c = report.configuration().expect("report built from a configuration");
    let _ = writeln!(out, "Singular fibers: {}", fiber_summary(&c));
    let _ = writeln!(out, "Trivial lattice: {} (rank {})", report.trivial_lattice, report.trivial_rank);
    let _ = writeln!(out, "J-invariant: {}", report.j_invariant);
    let _ = writeln!(out, "Euler total: {}, K3: {}", report.euler_total, if report.k3 { "yes" } else { "no" });
    if let Some(n) = &report.note {
        let _ = writeln!(out, "Note: {n}");
    }
    (code, out)
}

fn run_autocheck(target: &AutoCheckTarget, json: bool) -> (i32, String) {
    match target {
        AutoCheckTarget::Weierstrass { model, g } => {
            let inv = check_weierstrass_invariance(model, g);
            let ord = orders(g);
            let k = omega_multiplier(g);
            let primitive = omega_is_primitive(g);
            let code = if inv.valid { 0 } else { EXIT_FAIL };
            let failures: Vec<String> = inv.failures.iter().map(|f| f.to_string()).collect();
            if json {
                let v = json!({
                    "model": {"a": model.a.to_string(), "b": model.b.to_string()},
                    "automorphism": {"n": g.n, "alpha": g.alpha, "beta": g.beta, "gamma": g.gamma},
                    "valid": inv.valid,
                    "failures": failures,
                    "order_total": ord.total,
                    "order_base": ord.base,
                    "omega_multiplier": k,
                    "omega_primitive": primitive,
                });
                return (code, render_json(&v));
            }
            let mut out = String::new();
            let _ = writeln!(out, "Model: {model}");
            let _ = writeln!(out, "Automorphism: {g}");
            let _ = writeln!(out, "Invariant: {}", if inv.valid { "yes" } else { "no" });
            for f in &failures {
                let _ = writeln!(out, "  fails at {f}");
            }
            let _ = writeln!(out, "Order: {} (on the base: {})", ord.total, ord.base);
            let _ = writeln!(out, "Omega multiplier: {k} (primitive: {})", if primitive { "yes" } else { "no" });
            (code, out)
        }
        AutoCheckTarget::Weighted { hypersurface, g } => {
            let r = match check_weighted_invariance(hypersurface, g) {
                Ok(r) => r,
                Err(e) => return (EXIT_INPUT, format!("error: {e}\n")),
            };
            let order = weighted_order(&hypersurface.weights, g);
            let primitive = r.omega_primitive;
            let code = if r.valid { 0 } else { EXIT_FAIL };
            if json {
                let v = json!({
                    "weights": hypersurface.weights,
                    "degree": hypersurface.degree,
                    "exponents": g.exponents,
                    "n": g.n,
                    "valid": r.valid,
                    "monomial_weights": r.monomial_weights,
                    "equation_multiplier": r.equation_multiplier,
                    "omega_multiplier": r.omega_multiplier,
                    "omega_primitive": primitive,
                    "order": order,
                });
                return (code, render_json(&v));
            }
            let mut out = String::new();
            let _ = writeln!(out, "Weights: {:?}, degree {}", hypersurface.weights, hypersurface.degree);
            let _ = writeln!(out, "Exponents: {:?} mod {}", g.exponents, g.n);
            let _ = writeln!(out, "Monomial weights: {:?}", r.monomial_weights);
            let _ = writeln!(out, "Invariant: {}", if r.valid { "yes" } else { "no" });
            if let (Some(a), Some(k)) = (r.equation_multiplier, r.omega_multiplier) {
                let _ = writeln!(out, "Equation multiplier: {a}");
                let _ = writeln!(
                    out,
                    "Omega multiplier: {k} (primitive: {})",
                    if primitive == Some(true) { "yes" } else { "no" }
                );
            }
            let _ = writeln!(out, "Order: {order}");
            (code, out)
        }
    }
}

fn run_enumerate(target: &EnumerateTarget, json: bool) -> (i32, String) {
    match *target {
        EnumerateTarget::Prime(p) => {
            let chi = 24i64 - i64::from(p);
            let pairs: Vec<_> = enumerate_stable_pairs(p).into_iter().collect();
            let rows: Vec<Value> = pairs
                .iter()
                .map(|pair| {
                    let sols: Vec<[u64; 2]> = orbit_count_solutions(u64::from(p), u64::from(pair.euler()))
                        .into_iter()
                        .map(|(a, b)| [a, b])
                        .collect();
                    json!({"pair": [pair.first.to_string(), pair.second.to_string()], "euler": pair.euler(), "orbit_counts": sols})
                })
                .collect();
            if json {
                return (0, render_json(&json!({"prime": p, "stable_euler": chi, "pairs": rows})));
            }
            let mut out = format!("p = {p}: stable pairs with Euler sum {chi}\n");
            if pairs.is_empty() {
                out.push_str("  none\n");
            }
            for (pair, row) in pairs.iter().zip(&rows) {
                let _ = writeln!(out, "  {pair}  (c1, c2) in {}", row["orbit_counts"]);
            }
            (0, out)
        }
        EnumerateTarget::PowerOfThree(n) => {
            let r = match power_of_three_report(n) {
                Ok(r) => r,
                Err(e) => return (EXIT_INPUT, format!("error: {e}\n")),
            };
            let options: Vec<Value> = r
                .options
                .iter()
                .map(|o| {
                    let sols: Vec<[u64; 2]> = o.solutions.iter().map(|&(a, b)| [a, b]).collect();
                    json!({"base_order": o.base_order, "residual": 24 - o.stable_euler, "orbit_counts": sols})
                })
                .collect();
            let lattice = r.lattice.name().unwrap_or("?").to_string();
            if json {
                let v = json!({"n": n, "lattice": lattice, "rank": r.rank, "fixed_trace": r.fixed_trace, "base_orders": options});
                return (0, render_json(&v));
            }
            let mut out = format!("N = {n}: candidate lattice {lattice} (rank {})\n", r.rank);
            let _ = writeln!(out, "Lefschetz number of g: {}", r.fixed_trace);
            for o in &options {
                let sols = &o["orbit_counts"];
                let verdict = if sols.as_array().is_some_and(Vec::is_empty) { "infeasible".to_string() } else { format!("(c1, c2) in {sols}") };
                let _ = writeln!(out, "  base order {:<3} residual {:<3} {verdict}", o["base_order"], o["residual"]);
            }
            (0, out)
        }
    }
}

fn run_lattice(l: &IntLattice, json: bool) -> (i32, String) {
    let (sig, disc) = match (l.signature(), l.discriminant_group()) {
        (Ok(s), Ok(d)) => (s, d),
        (Err(e), _) | (_, Err(e)) => return (EXIT_INPUT, format!("error: {e}\n")),
    };
    let det = l.determinant();
    let primes: Vec<u64> = disc
        .invariant_factors
        .iter()
        .filter_map(|d| u64::try_from(d.clone()).ok())
        .flat_map(|d| (2..=d).filter(move |&p| d % p == 0 && is_prime(p)))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let profiles: Vec<(u64, bool, usize)> = primes
        .iter()
        .map(|&p| {
            let (e, len) = l.p_elementary_profile(p).expect("p is prime");
            (p, e, len)
        })
        .collect();
    if json {
        let v = json!({
            "name": l.name(),
            "rank": l.rank(),
            "determinant": det.to_string(),
            "signature": [sig.0, sig.1],
            "even": l.is_even(),
            "discriminant_group": disc.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "p_elementary": profiles.iter().map(|(p, e, len)| json!({"p": p, "elementary": e, "length": len})).collect::<Vec<_>>(),
        });
        return (0, render_json(&v));
    }
    let mut out = String::new();
    let _ = writeln!(out, "Lattice: {l}");
    let _ = writeln!(out, "Rank: {}", l.rank());
    let _ = writeln!(out, "Determinant: {det}");
    let _ = writeln!(out, "Signature: ({}, {})", sig.0, sig.1);
    let _ = writeln!(out, "Even: {}", if l.is_even() { "yes" } else { "no" });
    let _ = writeln!(out, "Discriminant group: {disc}");
    for (p, e, len) in profiles {
        let _ = writeln!(out, "{p}-elementary: {}, length {len}", if e { "yes" } else { "no" });
    }
    (0, out)
}

fn run_cyclo(n: u64, json: bool) -> (i32, String) {
    let (poly, model) = match (cyclotomic_poly(n), CycloModel::new(n)) {
        (Ok(p), Ok(m)) => (p, m),
        (Err(e), _) | (_, Err(e)) => return (EXIT_INPUT, format!("error: {e}\n")),
    };
    let traces: Vec<i64> = (1..=n as u32).map(|k| trace_power(n, k).expect("order is positive")).collect();
    let fixed: Vec<Value> = (2..=n)
        .filter(|&p| n.is_multiple_of(p) && is_prime(p))
        .filter_map(|p| {
            let dim = fixed_discriminant_dimension(n, p).ok()?;
            Some(json!({"p": p, "dimension": dim, "kernel": model.fixed_kernel_mod(p, 1)}))
        })
        .collect();
    if json {
        let v = json!({
            "order": n,
            "phi": phi_euler(n),
            "polynomial": poly.to_string(),
            "traces": traces,
            "fixed_discriminant": fixed,
        });
        return (0, render_json(&v));
    }
    let mut out = String::new();
    let _ = writeln!(out, "N = {n}, phi(N) = {}", phi_euler(n));
    let _ = writeln!(out, "Cyclotomic polynomial: {poly}");
    let tr: Vec<String> = traces.iter().map(i64::to_string).collect();
    let _ = writeln!(out, "trace(g^k), k = 1..{n}: {}", tr.join(" "));
    for f in &fixed {
        let _ = writeln!(out, "Fixed classes mod {}: dimension {}, basis {}", f["p"], f["dimension"], f["kernel"]);
    }
    (0, out)
}

fn run_mw(report: &AnalysisReport, rho: u64, det_s: Option<u64>, json: bool) -> (i32, String) {
    let config = match report.configuration() {
        Ok(c) => c,
        Err(e) => return (EXIT_INPUT, format!("error: {e}\n")),
    };
    let ctx = HeightContext::k3(config);
    let st = match shioda_tate(&ctx, rho) {
        Ok(st) => st,
        Err(e) => return (EXIT_FAIL, format!("error: {e}\n")),
    };
    let bound = torsion_free_bound(&ctx);
    let det_triv = trivial_determinant(&ctx);
    let mut realized = None;
    let mut target = None;
    if let Some(d) = det_s {
        let t = mw_determinant(d, det_triv, 1).expect("inputs are positive");
        realized = Some(realize_height(&ctx, &t, 3).into_iter().next());
        target = Some(t);
    }
    let code = if realized.as_ref().is_some_and(Option::is_none) { EXIT_FAIL } else { 0 };
    if json {
        let v = json!({
            "rho": rho,
            "trivial_rank": st.trivial_rank,
            "trivial_determinant": det_triv,
            "mw_rank": st.mw_rank,
            "torsion_free_bound": format_rat(&bound),
            "torsion_free": bound > k3lab::arith::rat(0),
            "target_height": target.as_ref().map(format_rat),
            "section": realized.as_ref().map(|s| s.as_ref().map(|s| json!({
                "intersection_with_zero": s.intersection_with_zero,
                "contributions": s.contributions.iter().map(format_rat).collect::<Vec<_>>(),
            }))),
        });
        return (code, render_json(&v));
    }
    let mut out = String::new();
    let _ = writeln!(out, "Singular fibers: {}", fiber_summary(&ctx.config));
    let _ = writeln!(out, "Trivial lattice rank {}, |det| {det_triv}", st.trivial_rank);
    let _ = writeln!(out, "Mordell-Weil rank: {} (rho = {rho})", st.mw_rank);
    let _ = writeln!(out, "Torsion-free bound: {}", format_rat(&bound));
    if let (Some(t), Some(r)) = (&target, &realized) {
        let _ = writeln!(out, "Target height: {}", format_rat(t));
        match r {
            Some(s) => {
                let c: Vec<String> = s.contributions.iter().map(format_rat).collect();
                let _ = writeln!(out, "Realized by P.O = {}, contributions [{}]", s.intersection_with_zero, c.join(", "));
            }
            None => {
                let _ = writeln!(out, "Not realized for P.O <= 3");
            }
        }
    }
    (code, out)
}

fn run_catalog(action: &CatalogCommand, json: bool) -> (i32, String) {
    match action {
        CatalogCommand::List => {
            let entries = catalog::entries();
            if json {
                let v: Vec<Value> = entries
                    .iter()
                    .map(|e| {
                        json!({
                            "id": e.id,
                            "model": e.model_text(),
                            "automorphism": e.automorphism_text(),
                            "order": e.expected_order,
                            "rho": e.expected_rho,
                            "flags": e.flags.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                return (0, render_json(&v));
            }
            let mut out = String::new();
            for e in &entries {
                let flags: Vec<String> = e.flags.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    out,
                    "{:<15} N={:<3} {:<16} {}{}",
                    e.id,
                    e.expected_order,
                    e.automorphism_text(),
                    e.model_text(),
                    if flags.is_empty() { String::new() } else { format!("  [{}]", flags.join(", ")) }
                );
            }
            (0, out)
        }
        CatalogCommand::Verify { id, parallel } => {
            let s = catalog::verify_all(id.as_deref(), *parallel);
            let code = s.exit_code();
            if json {
                return (code, render_json(&s));
            }
            let mut out = String::new();
            let detailed = id.is_some();
            for r in &s.reports {
                let _ = writeln!(out, "{:<15} {}", r.id, r.status);
                if detailed || r.status == Status::Fail {
                    for c in &r.checks {
                        let mark = match (c.outcome, c.expected_failure) {
                            (Outcome::Pass, _) => "ok",
                            (Outcome::Fail, true) => "flagged",
                            (Outcome::Fail, false) => "FAIL",
                            (Outcome::Skipped, _) => "skip",
                        };
                        let _ = writeln!(out, "    {:<8} {:<14} {}", mark, c.name, c.detail);
                    }
                }
            }
            let _ = writeln!(
                out,
                "{} entries: {} passed, {} flagged, {} failed",
                s.entries, s.passed, s.flagged_entries, s.failed
            );
            let _ = writeln!(
                out,
                "Flagged discrepancies: {}{}",
                s.flagged_discrepancies.len(),
                if s.flagged_discrepancies.is_empty() { String::new() } else { format!(" ({})", s.flagged_discrepancies.join(", ")) }
            );
            (code, out)
        }
    }
}

/// Executes a command, returning the exit status and the text to print.
pub fn run(c: &Command) -> (i32, String) {
    match c {
        Command::Analyze { model, json } => run_analyze(model, *json),
        Command::AutoCheck { target, json } => run_autocheck(target, *json),
        Command::Enumerate { target, json } => run_enumerate(target, *json),
        Command::Lattice { lattice, json } => run_lattice(lattice, *json),
        Command::Cyclo { order, json } => run_cyclo(*order, *json),
        Command::Mw { report, rho, det_s, json } => run_mw(report, *rho, *det_s, *json),
        Command::Catalog { action, json } => run_catalog(action, *json),
    }
}

/// Parses and runs `argv`; errors are rendered like regular output.
pub fn main_with_args<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(c) => run(&c),
        Err(e) => (e.exit_code, e.message),
    }
}
