//! `conway`: command-line access to the conway-moonshine checks.
//!
//! Exit status is 0 when every requested check passes, 1 when a check fails
//! and 2 for usage, parse or lookup errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use conway_moonshine::classdata::{self, ConjugacyClassRecord};
use conway_moonshine::cliffordcm;
use conway_moonshine::fockoracle::{self, ModeSystem, Sector};
use conway_moonshine::frameshape::identity;
use conway_moonshine::lattice;
use conway_moonshine::modgroups::{self, GroupLabel, InvarianceReport};
use conway_moonshine::moonshine::{self, IdentityReport};
use conway_moonshine::numbers::{int, rat, Rational};
use conway_moonshine::{CycNumber, FrameShape, QSeries};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Leech theta series coefficients by norm, for shell-count comparison.
const LEECH_SHELLS: [(i64, u64); 5] = [(0, 1), (2, 0), (4, 196560), (6, 16773120), (8, 398034000)];

#[derive(Parser, Debug)]
#[command(name = "conway", version, about = "Exact checks for Conway moonshine")]
struct Cli {
    /// Output format for stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Seed for every randomized check.
    #[arg(long, default_value_t = 20240601, global = true)]
    seed: u64,

    /// Worker threads for class sweeps (0 = rayon default).
    #[arg(long, env = "CONWAY_THREADS", default_value_t = 0, global = true)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Re-emit the embedded class table.
    Table,
    /// q-expansion of T^s_g or T^s_{g,tw}.
    Series {
        #[arg(long)]
        class: String,
        #[arg(long, value_enum, default_value_t = Which::S)]
        which: Which,
        #[arg(long, default_value_t = 10, value_parser = positive)]
        order: i64,
    },
    /// Exact identity checks.
    #[command(subcommand)]
    Verify(Verify),
    /// Independent trace computations.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Golay code and Leech lattice.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Numeric invariance under sampled group elements.
    Invariance(InvarianceArgs),
    /// Checks on the N=1 vector in the twisted module.
    #[command(subcommand)]
    N1(N1Cmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    /// T^s_g
    S,
    /// T^s_{g,tw}
    Tw,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Solve for the partner constant and check the eta identity.
    Lemma {
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long, default_value_t = 25, value_parser = positive)]
        order: i64,
    },
    /// The Delta-function identity.
    Delta {
        #[arg(long, default_value_t = 50, value_parser = positive)]
        order: i64,
    },
    /// Fit of T_2 f against f^2, f and 1.
    Hecke {
        #[arg(long, default_value_t = 40, value_parser = positive)]
        order: i64,
    },
    /// Constant term of T^s_g for a class and its negation.
    Normalization {
        #[arg(long, default_value = "all")]
        class: String,
    },
}

#[derive(Subcommand, Debug)]
enum Oracle {
    /// Mode-product and subset-enumeration super traces.
    Fock {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 6, value_parser = positive)]
        degree: i64,
        /// Degree limit for the subset enumeration.
        #[arg(long, default_value_t = 3, value_parser = positive)]
        enum_degree: i64,
    },
    /// Closed form and 4096-subset spinor super traces.
    Spinor {
        #[arg(long)]
        class: String,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Weight distribution of the Golay code.
    GolayWeights,
    /// Count Leech vectors of each even norm up to `--norm`.
    LeechShell {
        #[arg(long, default_value_t = 4, value_parser = positive)]
        norm: i64,
    },
    /// Determinant, evenness and coordinate frame.
    FrameCheck,
}

#[derive(Args, Debug)]
struct InvarianceArgs {
    #[arg(long, default_value = "all")]
    class: String,
    /// Group label, required when `--class` is a Frame shape not in the table.
    #[arg(long)]
    label: Option<String>,
    #[arg(long, default_value_t = 12)]
    samples: usize,
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, default_value_t = 1e-6, value_parser = positive_f64)]
    tol: f64,
    /// Minimum deviation the wrong-group control must show.
    #[arg(long, default_value_t = 1e-2, value_parser = positive_f64)]
    control_min: f64,
}

#[derive(Subcommand, Debug)]
enum N1Cmd {
    Check {
        /// Number of weight-4 subsets sampled for orthogonality.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn positive(s: &str) -> Result<i64, String> {
    match s.parse::<i64>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

/// Errors that map to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    Usage(e.to_string()).into()
}

/// A class to run: either a table row or a bare Frame shape.
struct Target {
    name: String,
    shape: FrameShape,
    c_hat: i64,
    nu_sign: i8,
    label: Option<String>,
}

impl Target {
    fn from_record(r: &ConjugacyClassRecord) -> Self {
        Target {
            name: r.co0.clone(),
            shape: r.frame_shape.clone(),
            c_hat: r.c_hat,
            nu_sign: r.nu_sign,
            label: Some(r.label.clone()),
        }
    }
}

/// Resolve `name`, `all`, `identity` or a Frame shape string.
fn targets(sel: &str) -> anyhow::Result<Vec<Target>> {
    if sel == "all" {
        return Ok(classdata::registry().iter().map(Target::from_record).collect());
    }
    if sel == "identity" {
        return shape_target(sel, identity()).map(|t| vec![t]);
    }
    match classdata::lookup(sel) {
        Ok(r) => Ok(vec![Target::from_record(r)]),
        Err(not_found) => match FrameShape::parse(sel) {
            Ok(shape) => {
                if let Some(r) = classdata::registry().iter().find(|r| r.frame_shape == shape) {
                    return Ok(vec![Target::from_record(r)]);
                }
                shape_target(&shape.to_string(), shape).map(|t| vec![t])
            }
            Err(_) if !sel.contains('^') => Err(usage(not_found)),
            Err(e) => Err(usage(e)),
        },
    }
}

fn shape_target(name: &str, shape: FrameShape) -> anyhow::Result<Target> {
    let c = cliffordcm::supertrace_for_shape(&shape, 1)
        .map_err(usage)?
        .to_rational()
        .map_err(usage)?;
    if !c.is_integer() {
        return Err(usage(format!("spinor trace {c} of {shape} is not an integer")));
    }
    let c_hat = c.to_integer().try_into().map_err(|_| usage("spinor trace out of range"))?;
    Ok(Target {
        name: name.to_string(),
        shape,
        c_hat,
        nu_sign: 1,
        label: None,
    })
}

fn single(sel: &str) -> anyhow::Result<Target> {
    let mut t = targets(sel)?;
    if t.len() != 1 {
        bail!(Usage(format!("{sel:?} selects {} classes; name a single class", t.len())));
    }
    Ok(t.remove(0))
}

/// What a command produces before formatting.
struct Output {
    text: String,
    json: Value,
    csv: String,
    pass: bool,
}

fn csv_line(fields: &[String]) -> String {
    let mut w = String::new();
    for (i, f) in fields.iter().enumerate() {
        if i > 0 {
            w.push(',');
        }
        if f.contains([',', '"', '\n']) {
            let _ = write!(w, "\"{}\"", f.replace('"', "\"\""));
        } else {
            w.push_str(f);
        }
    }
    w.push('\n');
    w
}

fn tally(text: &mut String, pass: usize, total: usize) {
    let _ = writeln!(text, "{pass}/{total} passed");
}

/// `24 + 4096 q + 98304 q^2 + ... + O(q^10)`
fn pretty_series(s: &QSeries) -> String {
    let mut out = String::new();
    for (e, c) in s.terms() {
        let neg = c < &Rational::from_integer(0.into());
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let one = mag == int(1);
        let q = if e == int(0) {
            String::new()
        } else if e == int(1) {
            "q".to_string()
        } else if e.is_integer() {
            format!("q^{e}")
        } else {
            format!("q^({e})")
        };
        match (one, q.is_empty()) {
            (_, true) => out.push_str(&mag.to_string()),
            (true, false) => out.push_str(&q),
            (false, false) => {
                let _ = write!(out, "{mag} {q}");
            }
        }
    }
    if !out.is_empty() {
        out.push_str(" + ");
    }
    let o = s.order();
    if o.is_integer() {
        let _ = write!(out, "O(q^{o})");
    } else {
        let _ = write!(out, "O(q^({o}))");
    }
    out
}

fn cmd_table() -> anyhow::Result<Output> {
    let rows = classdata::registry();
    let mut text = String::new();
    for r in rows {
        let _ = writeln!(
            text,
            "{:<5} {:<5} {:<28} {:>6}  {:<12} {}",
            r.co0, r.co1, r.frame_shape, r.c_hat, r.label, r.monster
        );
    }
    Ok(Output {
        text,
        json: Value::Array(rows.iter().map(|r| r.to_json()).collect()),
        csv: classdata::to_csv(rows),
        pass: true,
    })
}

fn cmd_series(class: &str, which: Which, order: i64) -> anyhow::Result<Output> {
    let t = single(class)?;
    let s = match which {
        Which::S => moonshine::t_s(&t.shape, &int(order))?,
        Which::Tw => moonshine::t_s_tw(&t.shape, &int(t.c_hat), &int(order))?,
    };
    let mut csv = csv_line(&["exponent".into(), "coefficient".into()]);
    for (e, c) in s.terms() {
        csv.push_str(&csv_line(&[e.to_string(), c.to_string()]));
    }
    Ok(Output {
        text: format!("{}\n", pretty_series(&s)),
        json: s.to_json(),
        csv,
        pass: true,
    })
}

fn identity_output(reports: Vec<IdentityReport>) -> Output {
    let pass = reports.iter().filter(|r| r.pass).count();
    let mut text = String::new();
    let mut csv = csv_line(&["class".into(), "checked_order".into(), "max_residual".into(), "constants".into(), "pass".into()]);
    for r in &reports {
        let consts: Vec<String> = r.constants.iter().map(|c| format!("{}={}", c.name, c.value)).collect();
        let _ = writeln!(
            text,
            "{:<8} {} order {} residual {} {}",
            r.class,
            if r.pass { "PASS" } else { "FAIL" },
            r.checked_order,
            r.max_residual,
            consts.join(" ")
        );
        csv.push_str(&csv_line(&[
            r.class.clone(),
            r.checked_order.clone(),
            r.max_residual.clone(),
            consts.join(";"),
            r.pass.to_string(),
        ]));
    }
    if reports.len() > 1 {
        tally(&mut text, pass, reports.len());
    }
    Output {
        text,
        json: serde_json::to_value(&reports).expect("reports serialize"),
        csv,
        pass: pass == reports.len(),
    }
}

fn cmd_verify(v: &Verify) -> anyhow::Result<Output> {
    match v {
        Verify::Lemma { class, order } => {
            let ts = targets(class)?;
            let reports = ts
                .par_iter()
                .map(|t| {
                    let (_, mut rep) = moonshine::solve_c_neg(&t.shape, t.c_hat, *order)
                        .with_context(|| format!("class {}", t.name))?;
                    rep.class = t.name.clone();
                    Ok(rep)
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            Ok(identity_output(reports))
        }
        Verify::Delta { order } => Ok(identity_output(vec![moonshine::verify_delta_identity(*order)?])),
        Verify::Hecke { order } => {
            let ((a, b, c), rep) = moonshine::verify_hecke(*order)?;
            let mut out = identity_output(vec![rep]);
            let _ = writeln!(out.text, "a = {a}, b = {b}, c = {c}");
            let fitted = (a.clone(), b.clone(), c.clone()) == (int(2048), int(24), int(0));
            out.pass &= fitted;
            if let Value::Array(v) = &mut out.json {
                if let Some(Value::Object(m)) = v.first_mut() {
                    m.insert("fit".into(), json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string()}));
                }
            }
            Ok(out)
        }
        Verify::Normalization { class } => {
            let ts = targets(class)?;
            let mut rows = Vec::new();
            for t in &ts {
                for (label, s) in [(t.name.clone(), t.shape.clone()), (format!("-{}", t.name), t.shape.negate())] {
                    let c = moonshine::normalization_constant(&s, 3)?;
                    rows.push((label, s.to_string(), c));
                }
            }
            let pass = rows.iter().filter(|r| r.2 == int(0)).count();
            let mut text = String::new();
            let mut csv = csv_line(&["class".into(), "frame_shape".into(), "constant_term".into(), "pass".into()]);
            let mut json = Vec::new();
            for (l, s, c) in &rows {
                let ok = *c == int(0);
                let _ = writeln!(text, "{l:<8} {} constant {c} ({s})", if ok { "PASS" } else { "FAIL" });
                csv.push_str(&csv_line(&[l.clone(), s.clone(), c.to_string(), ok.to_string()]));
                json.push(json!({"class": l, "frame_shape": s, "constant_term": c.to_string(), "pass": ok}));
            }
            tally(&mut text, pass, rows.len());
            Ok(Output { text, json: Value::Array(json), csv, pass: pass == rows.len() })
        }
    }
}

fn cmd_oracle(o: &Oracle) -> anyhow::Result<Output> {
    match o {
        Oracle::Spinor { class } => {
            let t = single(class)?;
            let pairs = cliffordcm::eigenpairs(&t.shape)?;
            let closed = cliffordcm::spinor_supertrace_closed(&pairs, t.nu_sign)?;
            let oracle = cliffordcm::spinor_supertrace_oracle(&pairs, t.nu_sign)?;
            let pass = closed == oracle && closed.to_rational().ok() == Some(int(t.c_hat));
            let text = format!(
                "class {}\nclosed form  {}\nsubset sum   {}\ntable        {}\nnu sign      {}\n{}\n",
                t.name,
                closed,
                oracle,
                t.c_hat,
                t.nu_sign,
                if pass { "PASS" } else { "FAIL" }
            );
            let csv = csv_line(&["class".into(), "closed".into(), "oracle".into(), "table".into(), "nu_sign".into(), "pass".into()])
                + &csv_line(&[
                    t.name.clone(),
                    closed.to_string(),
                    oracle.to_string(),
                    t.c_hat.to_string(),
                    t.nu_sign.to_string(),
                    pass.to_string(),
                ]);
            Ok(Output {
                text,
                json: json!({
                    "class": t.name,
                    "closed": closed.to_json(),
                    "oracle": oracle.to_json(),
                    "table": t.c_hat,
                    "nu_sign": t.nu_sign,
                    "pass": pass,
                }),
                csv,
                pass,
            })
        }
        Oracle::Fock { class, degree, enum_degree } => {
            let t = single(class)?;
            let eigs = t.shape.eigenvalue_list();
            let c = CycNumber::from_int(t.c_hat);
            let mode_u = fockoracle::untwisted_supertrace(&ModeSystem::new(eigs.clone(), Sector::Untwisted, *degree)?)?;
            let formula_u = moonshine::t_tilde(&t.shape, &(int(*degree) + rat(1, 2)))?;
            let mode_t = fockoracle::twisted_supertrace(&ModeSystem::new(eigs.clone(), Sector::Twisted, *degree)?, &c)?;
            let formula_t = t.shape.eta_quotient(&int(1), &int(*degree + 1))?.scaled(&int(t.c_hat));
            let u_ok = mode_u.strict_eq(&formula_u)?;
            let t_ok = mode_t.strict_eq(&formula_t)?;
            let mut enum_ok = BTreeMap::new();
            for sector in [Sector::Untwisted, Sector::Twisted] {
                let ms = ModeSystem::new(eigs.clone(), sector, *enum_degree)?;
                let e = fockoracle::enumerate_supertrace(&ms)?;
                let p = match sector {
                    Sector::Untwisted => fockoracle::untwisted_supertrace(&ms)?,
                    Sector::Twisted => fockoracle::twisted_supertrace(&ms, &CycNumber::one())?,
                };
                enum_ok.insert(format!("{sector:?}").to_lowercase(), e.agrees_with(&p));
            }
            let pass = u_ok && t_ok && enum_ok.values().all(|&b| b);
            let mut text = String::new();
            let _ = writeln!(text, "class {}", t.name);
            let _ = writeln!(text, "untwisted mode product  {}", pretty_series(&mode_u));
            let _ = writeln!(text, "eta(tau/2)/eta(tau)     {} ({})", pretty_series(&formula_u), ok(u_ok));
            let _ = writeln!(text, "twisted mode product    {}", pretty_series(&mode_t));
            let _ = writeln!(text, "C eta_g                 {} ({})", pretty_series(&formula_t), ok(t_ok));
            for (k, v) in &enum_ok {
                let _ = writeln!(text, "enumeration {k} to degree {enum_degree}: {}", ok(*v));
            }
            let _ = writeln!(text, "{}", ok(pass));
            let csv = csv_line(&["class".into(), "untwisted".into(), "twisted".into(), "enumeration".into(), "pass".into()])
                + &csv_line(&[
                    t.name.clone(),
                    u_ok.to_string(),
                    t_ok.to_string(),
                    enum_ok.values().all(|&b| b).to_string(),
                    pass.to_string(),
                ]);
            Ok(Output {
                text,
                json: json!({
                    "class": t.name,
                    "degree": degree,
                    "untwisted": {"mode_product": mode_u.to_json(), "formula": formula_u.to_json(), "pass": u_ok},
                    "twisted": {"mode_product": mode_t.to_json(), "formula": formula_t.to_json(), "pass": t_ok},
                    "enumeration": enum_ok,
                    "pass": pass,
                }),
                csv,
                pass,
            })
        }
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_lattice(l: &LatticeCmd) -> anyhow::Result<Output> {
    let code = lattice::build_golay()?;
    match l {
        LatticeCmd::GolayWeights => {
            let wd = code.weight_distribution();
            let pass = wd.values().copied().collect::<Vec<_>>() == vec![1, 759, 2576, 759, 1]
                && wd.keys().copied().collect::<Vec<_>>() == vec![0, 8, 12, 16, 24];
            let mut text = String::new();
            let mut csv = csv_line(&["weight".into(), "count".into()]);
            for (w, n) in &wd {
                let _ = writeln!(text, "weight {w:>2}: {n}");
                csv.push_str(&csv_line(&[w.to_string(), n.to_string()]));
            }
            let _ = writeln!(text, "{}", ok(pass));
            Ok(Output {
                text,
                json: json!({"weights": wd.iter().map(|(w, n)| (w.to_string(), *n)).collect::<BTreeMap<_, _>>(), "pass": pass}),
                csv,
                pass,
            })
        }
        LatticeCmd::LeechShell { norm } => {
            let lat = lattice::build_leech(&code)?;
            let shells = lat.shell_counts(*norm);
            let mut pass = true;
            let mut text = String::new();
            let mut csv = csv_line(&["norm".into(), "count".into(), "expected".into()]);
            let mut rows = Vec::new();
            for n in (0..=*norm).step_by(2) {
                let got = shells.get(&n).copied().unwrap_or(0);
                let want = LEECH_SHELLS.iter().find(|s| s.0 == n).map(|s| s.1);
                if let Some(w) = want {
                    pass &= w == got;
                }
                let exp = want.map(|w| w.to_string()).unwrap_or_default();
                let _ = writeln!(text, "norm {n:>2}: {got}{}", want.map(|w| format!(" (expected {w})")).unwrap_or_default());
                csv.push_str(&csv_line(&[n.to_string(), got.to_string(), exp]));
                rows.push(json!({"norm": n, "count": got, "expected": want}));
            }
            pass &= shells.keys().all(|k| k % 2 == 0);
            let _ = writeln!(text, "{}", ok(pass));
            Ok(Output { text, json: json!({"shells": rows, "pass": pass}), csv, pass })
        }
        LatticeCmd::FrameCheck => {
            let lat = lattice::build_leech(&code)?;
            let rep = lat.check();
            let frame = lattice::check_frame(&lat);
            let pass = rep.even && rep.determinant == "1" && frame.pass;
            let text = format!(
                "determinant {}\neven {}\nframe norms 8: {}\nframe orthogonal: {}\nframe congruent mod 2: {}\nframe in lattice: {}\n{}\n",
                rep.determinant,
                rep.even,
                frame.norms_eight,
                frame.orthogonal,
                frame.congruent_mod_2,
                frame.in_lattice,
                ok(pass)
            );
            let csv = csv_line(&["determinant".into(), "even".into(), "frame".into(), "pass".into()])
                + &csv_line(&[rep.determinant.clone(), rep.even.to_string(), frame.pass.to_string(), pass.to_string()]);
            Ok(Output { text, json: json!({"lattice": rep, "frame": frame, "pass": pass}), csv, pass })
        }
    }
}

fn cmd_invariance(a: &InvarianceArgs, seed: u64) -> anyhow::Result<Output> {
    let mut ts = targets(&a.class)?;
    if let Some(l) = &a.label {
        GroupLabel::parse(l).map_err(usage)?;
        for t in &mut ts {
            t.label = Some(l.clone());
        }
    }
    for t in &ts {
        if t.label.is_none() {
            bail!(Usage(format!("{} has no group label; pass --label", t.name)));
        }
    }
    // Constant series are invariant under everything, so only non-constant ones are swept.
    let ts: Vec<&Target> = ts.iter().filter(|t| t.shape.fixed_points() == 0).collect();
    let reports: Vec<InvarianceReport> = ts
        .par_iter()
        .map(|t| {
            let gl = GroupLabel::parse(t.label.as_deref().unwrap()).map_err(usage)?;
            let c = int(t.c_hat);
            let shape = t.shape.clone();
            modgroups::invariance_check(
                &t.name,
                &t.shape,
                &gl,
                |o| moonshine::t_s_tw(&shape, &c, o),
                a.samples,
                a.points,
                a.tol,
                seed,
            )
            .with_context(|| format!("class {}", t.name))
        })
        .collect::<anyhow::Result<_>>()?;
    let control = |r: &InvarianceReport| r.control.as_ref().map(|c| c.max_dev).unwrap_or(f64::INFINITY);
    let passes = |r: &InvarianceReport| r.pass && control(r) > a.control_min;
    let pass = reports.iter().filter(|r| passes(r)).count();
    let mut text = String::new();
    let mut csv = csv_line(&["class".into(), "label".into(), "order".into(), "max_dev".into(), "control_dev".into(), "pass".into()]);
    for r in &reports {
        let _ = writeln!(
            text,
            "{:<6} {} label {} order {} max deviation {:.3e} control {:.3e}",
            r.class,
            ok(passes(r)),
            r.label,
            r.order,
            r.max_dev,
            control(r)
        );
        csv.push_str(&csv_line(&[
            r.class.clone(),
            r.label.clone(),
            r.order.clone(),
            format!("{:e}", r.max_dev),
            format!("{:e}", control(r)),
            passes(r).to_string(),
        ]));
    }
    tally(&mut text, pass, reports.len());
    Ok(Output {
        text,
        json: serde_json::to_value(&reports)?,
        csv,
        pass: pass == reports.len(),
    })
}

fn cmd_n1(samples: usize, seed: u64) -> anyhow::Result<Output> {
    let code = lattice::build_golay()?;
    let rep = cliffordcm::n1_checks(&code, seed, samples)?;
    let text = format!(
        "t idempotent on v_tw: {}\nt idempotent on {} random states: {}\ndirect sum agrees: {}\nt v_tw nonzero: {}\n\
         orthogonality: {} subsets, {} failures\n<t v_tw, t v_tw> = {}\nalpha^2 = {}\n\
         lifted group order {}, all squares +1: {}\ninvariant under lifts: {}\n{}\n",
        rep.idempotent_on_vtw,
        rep.idempotent_random_states,
        rep.idempotent_random_pass,
        rep.direct_sum_agrees,
        rep.tv_nonzero,
        rep.orthogonality_checked,
        rep.orthogonality_failures.len(),
        rep.norm,
        rep.alpha_squared,
        rep.group_order,
        rep.all_squares_plus_one,
        rep.invariant_under_lifts,
        ok(rep.pass)
    );
    let csv = csv_line(&["orthogonality_checked".into(), "failures".into(), "norm".into(), "group_order".into(), "pass".into()])
        + &csv_line(&[
            rep.orthogonality_checked.to_string(),
            rep.orthogonality_failures.len().to_string(),
            rep.norm.clone(),
            rep.group_order.to_string(),
            rep.pass.to_string(),
        ]);
    Ok(Output { text, json: serde_json::to_value(&rep)?, csv, pass: rep.pass })
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Table => cmd_table(),
        Command::Series { class, which, order } => cmd_series(class, *which, *order),
        Command::Verify(v) => cmd_verify(v),
        Command::Oracle(o) => cmd_oracle(o),
        Command::Lattice(l) => cmd_lattice(l),
        Command::Invariance(a) => cmd_invariance(a, cli.seed),
        Command::N1(N1Cmd::Check { samples }) => cmd_n1(*samples, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("warning: thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Csv => print!("{}", out.csv),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let is_usage = e.chain().any(|c| {
                c.downcast_ref::<Usage>().is_some()
                    || matches!(
                        c.downcast_ref::<conway_moonshine::Error>(),
                        Some(conway_moonshine::Error::Parse { .. } | conway_moonshine::Error::NotFound { .. })
                    )
            });
            ExitCode::from(if is_usage { 2 } else { 1 })
        }
    }
}
