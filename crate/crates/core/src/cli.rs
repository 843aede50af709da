//! The `dcpuiseux` command line: argument parsing and command dispatch, kept in the
//! library so the tests can drive it without spawning processes.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::bpoly::{discriminant_resultant, BPoly};
use crate::algebra::field::{Field, Fp, Rationals};
use crate::algebra::upoly;
use crate::anfact::analytic_factor_with;
use crate::ctx::Ctx;
use crate::desing::{check_input, desingularise, genus_of, x_reciprocal, DesingReport};
use crate::dynev::TriSet;
use crate::oracle::{resultant_valuation, verify_rpe_system};
use crate::parse::parse_poly;
use crate::polygon::{newton_polygon, polygon_svg};
use crate::polyring::TBPoly;
use crate::puiseux::{rnp3, Rpe};
use crate::report::{branches_json, factorization_json, show_rpe, show_triset, upoly_json, SCHEMA_VERSION};
use crate::{trace, Error};

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "DCPUISEUX_SEED";

#[derive(Parser, Debug, Clone)]
#[command(name = "dcpuiseux", version, about = "Rational Puiseux expansions, desingularisation, genus and analytic factorization of plane curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Coefficient field: a prime p, or Q
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    /// Centre: an integer, `all` (every critical point) or `inf`
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    pub x0: String,
    /// Precision: truncation order for `puiseux`, factor precision for `factor`
    #[arg(long, global = true)]
    pub prec: Option<usize>,
    /// Print the versioned JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized choices (default from DCPUISEUX_SEED, else 0)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Re-check the output with the independent verifiers
    #[arg(long, global = true)]
    pub verify: bool,
    /// Print recursion events as JSON lines on stderr
    #[arg(long, global = true)]
    pub trace: bool,
    /// Write the Newton polygon at the centre as SVG
    #[arg(long, global = true, value_name = "PATH")]
    pub emit_polygon: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Singular parts of the expansions above one centre
    Puiseux { poly: String },
    /// Expansions above every critical point, infinity included
    Desing { poly: String },
    /// Genus of the curve (assumed geometrically irreducible)
    Genus { poly: String },
    /// Analytic factorization in K[[X - x0]][Y]
    Factor { poly: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Puiseux { .. } => "puiseux",
            Command::Desing { .. } => "desing",
            Command::Genus { .. } => "genus",
            Command::Factor { .. } => "factor",
        }
    }

    fn poly(&self) -> &str {
        match self {
            Command::Puiseux { poly } | Command::Desing { poly } | Command::Genus { poly } | Command::Factor { poly } => poly,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Default, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Centre {
    At(i64),
    All,
    Infinity,
}

fn centre(s: &str) -> Result<Centre, Error> {
    match s {
        "all" => Ok(Centre::All),
        "inf" => Ok(Centre::Infinity),
        _ => s.parse().map(Centre::At).map_err(|_| Error::Usage(format!("--x0 expects an integer, `all` or `inf`, got `{s}`"))),
    }
}

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let seed = cli.seed.unwrap_or_else(seed_from_env);
    if cli.trace {
        trace::start();
    }
    let res = if cli.field.eq_ignore_ascii_case("q") {
        run_in(&Rationals, cli, seed)
    } else {
        match cli.field.parse::<u64>().map_err(|_| Error::Usage(format!("--field expects a prime or Q, got `{}`", cli.field))).and_then(Fp::new) {
            Ok(k) => run_in(&k, cli, seed),
            Err(e) => Err(Failure::Error(e)),
        }
    };
    let mut out = Outcome::default();
    if cli.trace {
        for ev in trace::finish() {
            let _ = writeln!(out.stderr, "{ev}");
        }
    }
    match res {
        Ok(s) => out.stdout = s,
        Err(Failure::Error(e)) => {
            out.code = if e.is_precondition() || matches!(e, Error::Syntax { .. } | Error::Usage(_)) { 2 } else { 1 };
            let _ = writeln!(out.stderr, "error: {e}");
            if let Some(a) = e.assumption() {
                let _ = writeln!(out.stderr, "violated assumption: {a}");
            }
        }
        Err(Failure::Verify(s, msg)) => {
            out.code = 3;
            out.stdout = s;
            let _ = writeln!(out.stderr, "verification failed: {msg}");
        }
    }
    out
}

enum Failure {
    Error(Error),
    /// Output produced, but the verifiers rejected it.
    Verify(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn run_in<K: Field>(k: &K, cli: &Cli, seed: u64) -> Result<String, Failure> {
    let f = parse_poly(k, cli.poly_text())?;
    let c = centre(&cli.x0)?;
    let ctx = Ctx::new(seed);
    let mut doc = json!({"version": SCHEMA_VERSION, "field": k.name(), "command": cli.command.name(), "seed": seed});
    let mut text = String::new();
    let mut problems: Vec<String> = vec![];
    match &cli.command {
        Command::Puiseux { .. } => {
            let rf = check_input(k, &f)?;
            let (g, q, n_default, label) = match c {
                Centre::At(a) => {
                    let a = k.from_i64(a);
                    let n = val_at(k, &rf, &a);
                    (f.clone(), vec![k.neg(&a), k.one()], n, format!("X = {}", cli.x0))
                }
                Centre::Infinity => {
                    let n = f.deg_x() * (2 * f.deg_y() - 1) - (rf.len() - 1);
                    (x_reciprocal(k, &f), vec![k.zero(), k.one()], n, "X = infinity".to_string())
                }
                Centre::All => return Err(Error::Usage("`puiseux` needs one centre; use `desing` for --x0 all".into()).into()),
            };
            let n = cli.prec.unwrap_or(n_default);
            if let Some(path) = &cli.emit_polygon {
                emit_polygon(k, &g, &q, n, path)?;
            }
            let rs = rnp3(&ctx, k, &g, &q, n)?;
            let _ = writeln!(text, "{} expansion(s) above {label}, precision n = {n}", rs.len());
            write_rpes(&mut text, &rs);
            doc["centre"] = json!(cli.x0);
            doc["precision"] = json!(n);
            doc["branches"] = json!(branches_json(&rs));
            if cli.verify {
                check_system(k, &g, &q, &rs, &label, &mut problems);
                if c != Centre::Infinity {
                    let shifted = shift_x(k, &g, &k.neg(&q[0]));
                    check_vrf(k, &shifted, n_default, &mut problems);
                }
            }
        }
        Command::Desing { .. } | Command::Genus { .. } => {
            let is_genus = matches!(cli.command, Command::Genus { .. });
            if is_genus {
                k.check_char(f.total_deg())?;
            }
            if let Some(path) = &cli.emit_polygon {
                let rf = check_input(k, &f)?;
                emit_polygon(k, &f, &[k.zero(), k.one()], val_at(k, &rf, &k.zero()), path)?;
            }
            let mut rep = desingularise(&ctx, k, &f)?;
            if is_genus {
                let g = genus_of(&f, &rep)?;
                rep.genus = Some(g);
                let _ = writeln!(text, "genus: {g}");
                doc["genus"] = json!(g);
            } else {
                write_desing(k, &mut text, &rep);
            }
            doc["branches"] = json!(desing_branches(k, &rep));
            if cli.verify {
                for p in &rep.parts {
                    check_system(k, &f, &p.q, &p.rpes, "an affine critical point", &mut problems);
                }
                let rec = x_reciprocal(k, &f);
                let n_inf = rec_val(k, &f);
                if !rep.infinity.is_empty() {
                    check_system(k, &rec, &[k.zero(), k.one()], &rep.infinity, "infinity", &mut problems);
                }
                check_vrf(k, &rec, n_inf, &mut problems);
            }
        }
        Command::Factor { .. } => {
            let n = cli.prec.unwrap_or(10);
            let g = match c {
                Centre::At(a) => shift_x(k, &f, &k.from_i64(a)),
                Centre::Infinity => x_reciprocal(k, &f),
                Centre::All => return Err(Error::Usage("`factor` needs one centre".into()).into()),
            };
            if let Some(path) = &cli.emit_polygon {
                let rf = check_input(k, &g)?;
                emit_polygon(k, &g, &[k.zero(), k.one()], val_at(k, &rf, &k.zero()), path)?;
            }
            let split = |p: &[K::El]| k.split_squarefree(p, &mut ctx.rng()).unwrap_or_else(|| vec![p.to_vec()]);
            let fz = analytic_factor_with(&ctx, k, &g, n, Some(&split))?;
            let _ = writeln!(text, "{} factor(s) modulo X^{} (X centred at {})", fz.factors.len(), n + 1, cli.x0);
            for h in &fz.factors {
                let kind = if h.at_infinity { "reciprocal" } else { "Weierstrass" };
                let _ = writeln!(text, "  degree {} ({kind}) over {}", h.poly.deg_y(), show_triset(&h.t));
            }
            let mut body = factorization_json(k, &fz);
            body["precision"] = json!(n);
            doc["centre"] = json!(cli.x0);
            doc["factorization"] = body;
            doc["branches"] = json!([]);
            if cli.verify {
                let t = TriSet::trivial(k);
                if fz.product(&t, n) != TBPoly::from_bpoly(&t, &g, n) {
                    problems.push(format!("the product of the factors differs from F modulo X^{}", n + 1));
                }
            }
        }
    }
    if cli.verify {
        doc["verified"] = json!(problems.is_empty());
        let _ = writeln!(text, "verify: {}", if problems.is_empty() { "pass" } else { "FAIL" });
    }
    let out = if cli.json { format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")) } else { text };
    if !problems.is_empty() {
        return Err(Failure::Verify(out, problems.join("; ")));
    }
    Ok(out)
}

impl Cli {
    fn poly_text(&self) -> &str {
        self.command.poly()
    }
}

/// Multiplicity of `a` as a root of `r`.
fn val_at<K: Field>(k: &K, r: &[K::El], a: &K::El) -> usize {
    upoly::taylor_shift(k, r, a).iter().position(|c| !k.is_zero(c)).unwrap_or(0)
}

/// `val_X` of the discriminant of the X-reciprocal, from the degree formula.
fn rec_val<K: Field>(k: &K, f: &BPoly<K>) -> usize {
    let rf = discriminant_resultant(k, f);
    f.deg_x() * (2 * f.deg_y() - 1) - (rf.len() - 1)
}

fn shift_x<K: Field>(k: &K, f: &BPoly<K>, a: &K::El) -> BPoly<K> {
    BPoly::new(k, f.c.iter().map(|c| upoly::taylor_shift(k, c, a)).collect())
}

fn emit_polygon<K: Field>(k: &K, f: &BPoly<K>, q: &[K::El], n: usize, path: &str) -> Result<(), Error> {
    if q.len() != 2 {
        return Err(Error::Usage("polygons are drawn at rational centres only".into()));
    }
    let g = shift_x(k, f, &k.neg(&q[0]));
    let t = TriSet::trivial(k);
    let h = TBPoly::from_bpoly(&t, &g, g.deg_x());
    let svg = polygon_svg(&h.support(&t), &newton_polygon(&t, &h), Some(n));
    std::fs::write(path, svg).map_err(|e| Error::Usage(format!("cannot write {path}: {e}")))
}

fn check_system<K: Field>(k: &K, f: &BPoly<K>, q: &[K::El], rs: &[Rpe<K>], label: &str, problems: &mut Vec<String>) {
    let rep = verify_rpe_system(k, f, q, rs);
    if !rep.ok() {
        problems.push(format!("{label}: {rep}"));
    }
}

fn check_vrf<K: Field>(k: &K, f: &BPoly<K>, used: usize, problems: &mut Vec<String>) {
    match resultant_valuation(k, f) {
        Some(v) if v == used => {}
        v => problems.push(format!("resultant valuation {v:?} from the Sylvester matrix, {used} used")),
    }
}

fn write_rpes<K: Field>(text: &mut String, rs: &[Rpe<K>]) {
    let mut last: Option<Vec<K::El>> = None;
    for r in rs {
        let q = r.t.q().to_vec();
        if last.as_ref() != Some(&q) {
            let _ = writeln!(text, "  over {}", show_triset(&r.t.level1()));
            last = Some(q);
        }
        let _ = writeln!(text, "    {}", show_rpe(r));
        if r.f() > 1 {
            let _ = writeln!(text, "      residue algebra {}", show_triset(&r.t));
        }
    }
}

fn write_desing<K: Field>(k: &K, text: &mut String, rep: &DesingReport<K>) {
    for p in &rep.parts {
        let c = TriSet::base(k, p.q.clone());
        let _ = writeln!(text, "critical factor {} (multiplicity {}):", show_triset(&c), p.n);
        write_rpes(text, &p.rpes);
    }
    if !rep.infinity.is_empty() {
        let _ = writeln!(text, "X = infinity:");
        write_rpes(text, &rep.infinity);
    }
}

fn desing_branches<K: Field>(k: &K, rep: &DesingReport<K>) -> Vec<Value> {
    let mut out = vec![];
    for p in &rep.parts {
        for mut b in branches_json(&p.rpes) {
            b["centre"] = json!({"Q": upoly_json(k, &p.q), "multiplicity": p.n});
            out.push(b);
        }
    }
    for mut b in branches_json(&rep.infinity) {
        b["centre"] = json!("inf");
        out.push(b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        let mut v = vec!["dcpuiseux"];
        v.extend_from_slice(args);
        run(&Cli::try_parse_from(v).unwrap())
    }

    #[test]
    fn genus_of_a_smooth_cubic() {
        let o = go(&["genus", "--field", "101", "Y^2-X^3+X"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "genus: 1\n");
    }

    #[test]
    fn syntax_error_exits_2() {
        let o = go(&["puiseux", "Y^^2"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("byte 2"));
    }

    #[test]
    fn char_too_small_names_the_assumption() {
        let o = go(&["desing", "--field", "3", "Y^3 - X"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("characteristic"));
    }

    #[test]
    fn puiseux_json_and_verify() {
        let o = go(&["puiseux", "--field", "7", "--json", "--verify", "(Y^2-X)*(Y-1)"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["verified"], json!(true));
        assert_eq!(v["command"], json!("puiseux"));
        let rpes: Vec<&Value> = v["branches"].as_array().unwrap().iter().flat_map(|b| b["rpes"].as_array().unwrap()).collect();
        assert_eq!(rpes.len(), 2);
        for key in ["triset", "gamma", "e", "f", "r", "v", "gamma_series_coeffs", "precision"] {
            assert!(rpes.iter().all(|r| r.get(key).is_some()), "{key}");
        }
    }

    #[test]
    fn factor_round_trip() {
        let o = go(&["factor", "--field", "7", "--prec", "10", "--verify", "(Y^2-X-X^3)*(Y-1-X)*(Y+X^2)"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("3 factor(s)"));
    }

    #[test]
    fn desing_all_and_infinity() {
        let o = go(&["desing", "--field", "101", "--verify", "Y^2 - X^3 - X"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("X = infinity"));
        let o = go(&["puiseux", "--field", "101", "--x0", "inf", "--verify", "Y^2 - X^3 - X"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("e=2"));
    }

    #[test]
    fn trace_goes_to_stderr() {
        let o = go(&["puiseux", "--trace", "--json", "Y^3 - X^2"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stderr.lines().all(|l| serde_json::from_str::<Value>(l).is_ok()));
        assert!(o.stderr.contains("\"leaf\""));
    }
}
