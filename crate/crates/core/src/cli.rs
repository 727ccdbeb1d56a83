//! The `cmreg` command line.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a bound
//! verdict or a local-cohomology/tower check fails.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::bounds::{big_to_json, ideal_bounds};
use crate::complexes::{complex_regularity_bound, complex_terms, explicit_differentials, Side};
use crate::error::{Error, Result};
use crate::format::{parse_file, parse_linear_form, serialize};
use crate::invariants::{betti_table, hilbert_data, regularity, ring_invariants};
use crate::modops::{fitting_ideal_0, sym_power};
use crate::monomial::MonomialOrder;
use crate::presentation::{cyclic, GradedPresentation};
use crate::verify::{
    audit, instance_seed, lemma31_check, lemma31_random, lemma32_tower, mayr_meyer, random_module, sweep_params,
    AuditOptions, BoundReport, LocalCohomologyReport, TowerForms, TowerReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cmreg", version, about = "Regularity, Betti numbers and regularity bounds of graded modules")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// CSV output (batch audits).
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,

    /// Degree bound B; must be at least the value derived from the presentation.
    #[arg(long = "B", global = true, value_name = "INT")]
    big_b: Option<i64>,

    /// Symmetric power, complex index or largest audited power.
    #[arg(long = "l", global = true, value_name = "INT")]
    l: Option<usize>,

    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,

    #[arg(long, global = true, value_name = "INT")]
    trials: Option<u64>,

    /// Monomial order, overriding the file.
    #[arg(long, global = true, value_name = "grevlex|lex")]
    order: Option<MonomialOrder>,

    /// Linear form, e.g. "x + 2y"; repeat for a tower.
    #[arg(long, global = true, value_name = "FORM")]
    linear: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Castelnuovo-Mumford regularity.
    Reg { file: PathBuf },
    /// Graded Betti table of the minimal free resolution.
    Betti { file: PathBuf },
    /// Hilbert series numerator, dimension, codimension, multiplicity.
    Hilbert { file: PathBuf },
    /// Every applicable bound beside the computed invariants, with verdicts.
    Audit { file: PathBuf },
    /// Bound values for a module, or the ideal-case bounds for given `--vars` and `--B`.
    Bounds {
        file: Option<PathBuf>,
        /// Number of variables for the ideal-case calculator.
        #[arg(long)]
        vars: Option<usize>,
        /// Codimension for the ideal-case calculator.
        #[arg(long)]
        codim: Option<usize>,
    },
    /// Presentation and regularity of the symmetric power `--l` (default 2).
    Sym { file: PathBuf },
    /// Maximal minors and the regularity of R/Fitt_0.
    Fitt { file: PathBuf },
    /// Terms of the complex E^(l) (default l = 0) and its regularity bound.
    Complex { file: PathBuf },
    /// Local cohomology checks for one linear form.
    Lemma31 { file: PathBuf },
    /// Linear-section tower check.
    Tower {
        file: PathBuf,
        /// Number of cuts minus one when forms are random.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Seeded random presentations, optionally audited.
    Random {
        #[arg(long)]
        audit: bool,
    },
    /// Homogeneous Mayr-Meyer type binomial ideal.
    MayrMeyer {
        #[arg(default_value_t = 1)]
        level: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Precondition(format!("I/O: {e}"))
}

fn load(cli: &Cli, path: &PathBuf) -> Result<GradedPresentation> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))?
    };
    let m = parse_file(&text)?;
    match cli.order {
        Some(o) if o != m.ring().order() => m.with_ring(Arc::new(m.ring().with_order(o))),
        _ => Ok(m),
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    let s = serde_json::to_string_pretty(v).expect("json");
    writeln!(out, "{s}").map_err(io)
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(io)?
    };
}

fn audit_options(cli: &Cli, id: &str, seed: Option<u64>) -> AuditOptions {
    AuditOptions {
        id: id.into(),
        seed,
        big_b: cli.big_b,
        max_l: cli.l.unwrap_or(3),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Reg { file } => {
            let m = load(cli, file)?;
            let r = regularity(&m)?;
            if cli.json {
                emit_json(out, &json!({ "regularity": r }))?;
            } else {
                say!(out, "reg = {r}");
            }
            Ok(EXIT_OK)
        }
        Command::Betti { file } => {
            let m = load(cli, file)?;
            let t = betti_table(&m)?;
            if cli.json {
                emit_json(out, &json!({ "betti": t, "regularity": t.regularity() }))?;
            } else {
                write!(out, "{t}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Hilbert { file } => {
            let m = load(cli, file)?;
            let h = hilbert_data(&m)?;
            if cli.json {
                emit_json(out, &serde_json::to_value(&h).expect("json"))?;
            } else {
                say!(out, "numerator = {}", h.numerator);
                say!(out, "series = numerator / (1-t)^{}", h.var_count);
                let show = |v: Option<i64>| v.map_or("-inf".to_string(), |x| x.to_string());
                say!(out, "dim = {}", show(h.dimension.map(|d| d as i64)));
                say!(out, "codim = {}", show(h.codimension.map(|d| d as i64)));
                say!(out, "multiplicity = {}", show(h.multiplicity));
                if let Some(len) = h.length {
                    say!(out, "length = {len}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Audit { file } => {
            let m = load(cli, file)?;
            let r = audit(&m, &audit_options(cli, &file.display().to_string(), None))?;
            if cli.json {
                emit_json(out, &r.to_json())?;
            } else if cli.csv {
                say!(out, "{}", CSV_HEADER);
                say!(out, "{}", csv_row(&r));
            } else {
                print_report(out, &r)?;
            }
            Ok(if r.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Bounds { file, vars, codim } => match (file, vars) {
            (Some(file), _) => {
                let m = load(cli, file)?;
                let r = audit(&m, &audit_options(cli, &file.display().to_string(), None))?;
                if cli.json {
                    emit_json(out, &json!({ "instance": r.instance, "values": r.values() }))?;
                } else {
                    for (k, v) in r.values() {
                        say!(out, "{k} = {v}");
                    }
                }
                Ok(EXIT_OK)
            }
            (None, Some(p)) => {
                let b = cli
                    .big_b
                    .ok_or_else(|| Error::Precondition("--vars needs --B".into()))?;
                let ib = ideal_bounds(*p, b, *codim);
                if cli.json {
                    let values: serde_json::Map<String, Value> = ib
                        .entries()
                        .into_iter()
                        .filter_map(|(k, v)| v.map(|v| (k.to_string(), big_to_json(v))))
                        .collect();
                    emit_json(out, &json!({ "vars": p, "B": b, "codim": codim, "values": values }))?;
                } else {
                    for (k, v) in ib.entries() {
                        match v {
                            Some(v) => say!(out, "{k} = {v}"),
                            None => say!(out, "{k} = n/a"),
                        }
                    }
                }
                Ok(EXIT_OK)
            }
            (None, None) => Err(Error::Precondition("bounds needs a file or --vars with --B".into())),
        },
        Command::Sym { file } => {
            let m = load(cli, file)?;
            let l = cli.l.unwrap_or(2);
            let s = sym_power(&m, l)?;
            let r = match regularity(&s) {
                Ok(r) => Some(r),
                Err(Error::ZeroModule) => None,
                Err(e) => return Err(e),
            };
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "l": l,
                        "n": s.n(),
                        "m": s.m(),
                        "a": s.row_twists(),
                        "b": s.column_degrees(),
                        "regularity": r,
                        "presentation": serialize(&s),
                    }),
                )?;
            } else {
                write!(out, "{}", serialize(&s)).map_err(io)?;
                match r {
                    Some(r) => say!(out, "# reg = {r}"),
                    None => say!(out, "# zero module"),
                }
            }
            Ok(EXIT_OK)
        }
        Command::Fitt { file } => {
            let m = load(cli, file)?;
            let minors = fitting_ideal_0(&m);
            let ring = m.ring().clone();
            let reg = if minors.is_empty() {
                None
            } else {
                let q = cyclic(ring.clone(), 0, minors.clone())?;
                match regularity(&q) {
                    Ok(r) => Some(r),
                    Err(Error::ZeroModule) => None,
                    Err(e) => return Err(e),
                }
            };
            let rendered: Vec<String> = minors.iter().map(|f| ring.render(f)).collect();
            if cli.json {
                emit_json(out, &json!({ "minors": rendered, "regularity": reg }))?;
            } else {
                if rendered.is_empty() {
                    say!(out, "Fitt_0 = 0");
                } else {
                    say!(out, "Fitt_0 generated by {} minors", rendered.len());
                    for f in &rendered {
                        say!(out, "  {f}");
                    }
                }
                match reg {
                    Some(r) => say!(out, "reg R/Fitt_0 = {r}"),
                    None if rendered.is_empty() => say!(out, "reg R/Fitt_0: not applicable"),
                    None => say!(out, "R/Fitt_0 = 0"),
                }
            }
            Ok(EXIT_OK)
        }
        Command::Complex { file } => {
            let m = load(cli, file)?;
            let l = cli.l.unwrap_or(0);
            let terms = complex_terms(&m, l);
            let rinv = ring_invariants(m.ring())?;
            let bound = complex_regularity_bound(&terms, rinv.regularity, rinv.dim);
            let complex_ok = if l <= 1 {
                Some(explicit_differentials(&m, l)?.composes_to_zero())
            } else {
                None
            };
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "terms": terms,
                        "bound": bound.as_ref().ok(),
                        "differentials_compose_to_zero": complex_ok,
                    }),
                )?;
            } else {
                say!(out, "E^({l}): n = {}, m = {}, sigma = {}", terms.n, terms.m, terms.sigma);
                for t in &terms.terms {
                    let side = match t.side {
                        Side::L => "L",
                        Side::N => "N",
                    };
                    say!(out, "  position {}: {side}_{} twists {:?}", t.position, t.s, t.twists);
                }
                match &bound {
                    Ok(b) => say!(out, "regularity bound = {b}"),
                    Err(e) => say!(out, "regularity bound: {e}"),
                }
                if let Some(ok) = complex_ok {
                    say!(out, "differentials compose to zero: {}", if ok { "yes" } else { "no" });
                }
            }
            Ok(if complex_ok == Some(false) { EXIT_FAILED } else { EXIT_OK })
        }
        Command::Lemma31 { file } => {
            let m = load(cli, file)?;
            let (l, report) = match cli.linear.as_slice() {
                [] => lemma31_random(&m, cli.seed.unwrap_or(0))?,
                [f] => {
                    let l = parse_linear_form(m.ring(), f)?;
                    let r = lemma31_check(&m, &l)?;
                    (l, r)
                }
                _ => return Err(Error::Precondition("lemma31 takes one --linear form".into())),
            };
            let form = m.ring().render(&l);
            if cli.json {
                emit_json(out, &json!({ "form": form, "passed": report.passed(), "report": report }))?;
            } else {
                print_lemma31(out, &form, &report)?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Tower { file, steps } => {
            let m = load(cli, file)?;
            let forms = if cli.linear.is_empty() {
                TowerForms::Random {
                    seed: cli.seed.unwrap_or(0),
                    s: *steps,
                }
            } else {
                let ring = m.ring();
                TowerForms::Given(
                    cli.linear
                        .iter()
                        .map(|f| parse_linear_form(ring, f))
                        .collect::<Result<_>>()?,
                )
            };
            let report = lemma32_tower(&m, forms)?;
            if cli.json {
                emit_json(out, &json!({ "passed": report.passed(), "report": report }))?;
            } else {
                print_tower(out, &report)?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Random { audit: do_audit } => {
            let master = cli.seed.unwrap_or(0);
            let trials = cli.trials.unwrap_or(1);
            let mut failed = false;
            let mut docs = Vec::new();
            if *do_audit && cli.csv {
                say!(out, "{}", CSV_HEADER);
            }
            for i in 0..trials {
                let seed = instance_seed(master, i);
                let params = sweep_params(seed);
                let m = random_module(seed, &params)?;
                if !*do_audit {
                    if cli.json {
                        docs.push(json!({ "index": i, "seed": seed, "params": params, "presentation": serialize(&m) }));
                    } else {
                        say!(out, "# instance {i}, seed {seed}");
                        write!(out, "{}", serialize(&m)).map_err(io)?;
                        say!(out, "");
                    }
                    continue;
                }
                let r = audit(&m, &AuditOptions { max_l: cli.l.unwrap_or(3), ..AuditOptions::default() }.with_id(i, seed))?;
                failed |= !r.passed();
                if cli.json {
                    docs.push(r.to_json());
                } else if cli.csv {
                    say!(out, "{}", csv_row(&r));
                } else {
                    print_report(out, &r)?;
                    say!(out, "");
                }
            }
            if cli.json {
                emit_json(out, &Value::Array(docs))?;
            }
            Ok(if failed { EXIT_FAILED } else { EXIT_OK })
        }
        Command::MayrMeyer { level } => {
            let m = mayr_meyer(*level)?;
            let ring = m.ring();
            let degrees: Vec<i64> = m.column_degrees().to_vec();
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "level": level,
                        "variables": ring.nvars(),
                        "generators": m.m(),
                        "degrees": degrees,
                        "max_degree": degrees.iter().max(),
                        "presentation": serialize(&m),
                    }),
                )?;
            } else {
                say!(
                    out,
                    "# level {level}: {} generators in {} variables, max degree {}",
                    m.m(),
                    ring.nvars(),
                    degrees.iter().max().unwrap_or(&0)
                );
                write!(out, "{}", serialize(&m)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

impl AuditOptions {
    fn with_id(self, index: u64, seed: u64) -> Self {
        AuditOptions {
            id: format!("random-{index}"),
            seed: Some(seed),
            ..self
        }
    }
}

pub const CSV_HEADER: &str = "instance,seed,p_vars,n,m,reg,dim,codim,multiplicity,checked,failed,verdict,failed_ids";

pub fn csv_row(r: &BoundReport) -> String {
    let failures: Vec<&str> = r.failures().iter().map(|v| v.id.as_str()).collect();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.instance.id,
        r.instance.seed.map_or(String::new(), |s| s.to_string()),
        r.instance.p_vars,
        r.instance.n,
        r.instance.m,
        r.computed.regularity,
        r.computed.dimension,
        r.computed.codimension,
        r.computed.multiplicity,
        r.verdicts.len(),
        failures.len(),
        if r.passed() { "pass" } else { "fail" },
        failures.join(";"),
    )
}

fn print_report(out: &mut dyn Write, r: &BoundReport) -> Result<()> {
    let i = &r.instance;
    let c = &r.computed;
    say!(out, "instance {}{}", i.id, i.seed.map_or(String::new(), |s| format!(" (seed {s})")));
    say!(
        out,
        "  F_{}, {} variables, {} quotient generators; n = {}, m = {}, a = {:?}, b = {:?}, B = {}",
        i.characteristic,
        i.p_vars,
        i.quotient_generators,
        i.n,
        i.m,
        i.a,
        i.b,
        i.big_b
    );
    say!(
        out,
        "  reg = {}, dim = {}, codim = {}, multiplicity = {}; ring: dim {}, reg {}, degree {}{}",
        c.regularity,
        c.dimension,
        c.codimension,
        c.multiplicity,
        c.ring.dim,
        c.ring.regularity,
        c.ring.degree,
        if c.ring.cohen_macaulay { ", Cohen-Macaulay" } else { "" }
    );
    let width = r.bounds.iter().map(|b| b.id.len()).max().unwrap_or(0);
    for b in &r.bounds {
        let verdict = r.verdicts.iter().find(|v| v.id == b.id);
        let value = b.value.as_ref().map_or("-".to_string(), |v| v.to_string());
        match verdict {
            Some(v) => say!(
                out,
                "  {:<width$}  {} = {} <= {}  {}",
                b.id,
                v.target,
                v.computed,
                value,
                if v.pass { "pass" } else { "FAIL" }
            ),
            None => say!(
                out,
                "  {:<width$}  {}  ({})",
                b.id,
                value,
                b.note.as_deref().unwrap_or("not applicable")
            ),
        }
    }
    let failures = r.failures();
    if failures.is_empty() {
        say!(out, "  all {} verdicts pass", r.verdicts.len());
    } else {
        say!(out, "  {} of {} verdicts FAIL", failures.len(), r.verdicts.len());
    }
    Ok(())
}

fn print_lemma31(out: &mut dyn Write, form: &str, r: &LocalCohomologyReport) -> Result<()> {
    let mark = |b: bool| if b { "holds" } else { "VIOLATED" };
    say!(out, "form l = {form}, length of 0:_M l = {}", r.colon_length);
    say!(out, "window {}..{}", r.window.0, r.window.1);
    say!(out, "colon identity: {}", mark(r.identity_holds));
    for x in &r.identity {
        say!(out, "  mu = {}: {} = {}", x.mu, x.lhs, x.rhs);
    }
    say!(out, "lower bound by h0(M)_mu: {}", mark(r.lower_bound_holds));
    say!(out, "shifted inequality: {}", mark(r.shifted_holds));
    say!(out, "regularity estimate at threshold {}: {}", r.threshold, mark(r.regularity_holds));
    for x in &r.regularity {
        say!(out, "  mu = {}: reg {} <= {}", x.mu, x.lhs, x.rhs);
    }
    Ok(())
}

fn print_tower(out: &mut dyn Write, r: &TowerReport) -> Result<()> {
    say!(out, "s = {}, reg(M) = {}", r.s, r.regularity);
    for st in &r.steps {
        say!(
            out,
            "  i = {}: form {}, reg {}, colon length {}, r = {}, Q = {}",
            st.i,
            st.form,
            st.regularity.map_or("-inf".to_string(), |x| x.to_string()),
            st.colon_length,
            st.r,
            st.q
        );
    }
    for (i, q, q2, ok) in &r.squares {
        say!(out, "  Q_{i} = {q} <= {q2}  {}", if *ok { "pass" } else { "FAIL" });
    }
    say!(
        out,
        "  reg(M) = {} <= {}  {}",
        r.regularity,
        r.final_bound,
        if r.final_holds { "pass" } else { "FAIL" }
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(vars: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "char 101\nvars {vars}\ngens 0\nrels\nx^2\nx*y\nend\n").unwrap();
        f
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["cmreg"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn reg_prints_value() {
        let f = sample("x y");
        let (code, out, _) = call(&["reg", f.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "reg = 1\n");
    }

    #[test]
    fn bounds_json_has_cm_value() {
        let f = sample("x y z");
        let (code, out, _) = call(&["bounds", f.path().to_str().unwrap(), "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["values"]["cm_regularity"], json!(6));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["reg"]).0, 1);
        assert_eq!(call(&["reg", "/nonexistent/file.pres"]).0, 1);
        assert_eq!(call(&["bounds"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn ideal_calculator() {
        let (code, out, _) = call(&["bounds", "--vars", "3", "--B", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("small_vars = 4\n"), "{out}");
    }

    #[test]
    fn sym_output_parses_back() {
        let f = sample("x y");
        let (code, out, _) = call(&["sym", f.path().to_str().unwrap(), "--l", "2"]);
        assert_eq!(code, 0);
        let s = parse_file(&out).unwrap();
        assert_eq!(s.n(), 1);
        assert!(out.contains("# reg = "));
    }

    #[test]
    fn tower_with_given_forms() {
        let f = sample("x y z");
        let (code, out, _) = call(&["tower", f.path().to_str().unwrap(), "--linear", "z", "--linear", "y"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("reg(M) = 1 <= 4  pass"), "{out}");
    }

    #[test]
    fn lemma31_with_form() {
        let f = sample("x y");
        let (code, out, _) = call(&["lemma31", f.path().to_str().unwrap(), "--linear", "y"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("colon identity: holds"));
    }

    #[test]
    fn random_csv_rows() {
        let (code, out, _) = call(&["random", "--seed", "7", "--trials", "5", "--audit", "--csv"]);
        assert!(code == 0 || code == 2);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], CSV_HEADER);
        let failed = lines[1..].iter().any(|l| l.contains(",fail,"));
        assert_eq!(code == 2, failed);
    }

    #[test]
    fn mayr_meyer_round_trips() {
        let (code, out, _) = call(&["mayr-meyer", "1"]);
        assert_eq!(code, 0);
        let m = parse_file(&out).unwrap();
        assert_eq!(m.m(), 14);
        assert_eq!(call(&["mayr-meyer", "3"]).0, 1);
    }
}
