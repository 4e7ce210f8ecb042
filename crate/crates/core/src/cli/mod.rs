//! Command-line front end: `verify`, `residual`, `export`, `list`.
//!
//! Exit codes: 0 pass, 1 fail, 2 usage or unknown id, 3 window too small.

pub mod json;
pub mod suites;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::affinize::{coproduct_from_form, BulletCobracket, InducedLie, Order, Side};
use crate::doubles::manin_double_from_bialgebra;
use crate::error::{Error, Result};
use crate::families::finite::AlgebraKind;
use crate::families::{catalog, Coproduct, DeltaForm, GradedPerm, KappaP, OmegaA, Space, ATs};
use crate::kernel::{Affine, CheckReport, KeyPattern, SpaceId, Template, TemplateSeries, Tensor, TupleDisplay, Var, Window};
use crate::ybe::{affinize_r, cybe_residual, perm_ybe_residual, s_equation_residual};

pub use suites::{run_suite, SuiteConfig, SuiteReport, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResidualKind {
    PermYbe,
    SEq,
    Cybe,
}

#[derive(Parser, Debug)]
#[command(name = "permlie", version, about = "Exact checks for perm and pre-Lie structures and their affinizations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug, Default)]
struct Common {
    /// Window bound N; each check runs at min(N, its nominal window)
    #[arg(long)]
    window: Option<i64>,
    /// Override the per-law margin
    #[arg(long)]
    margin: Option<i64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML file with window/margin/seed/format/out; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run a verification suite: all, paper-examples, ybe, doubles, appendix
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a residual on a JSON two-tensor (`-` reads stdin)
    Residual {
        #[arg(value_enum)]
        kind: ResidualKind,
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Export structure constants: <algebra-id>, double/<id>, delta-t/<id>,
    /// delta-s/<id>, tensor/<id>
    Export {
        id: String,
        #[command(flatten)]
        common: Common,
    },
    /// List catalog ids and suites
    List,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    window: Option<i64>,
    margin: Option<i64>,
    seed: Option<u64>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
struct Settings {
    suite: SuiteConfig,
    format: Format,
    out: Option<PathBuf>,
}

fn settings(c: &Common) -> Result<Settings> {
    let file = match &c.config {
        Some(p) => toml::from_str::<FileConfig>(&std::fs::read_to_string(p)?)
            .map_err(|e| Error::Parse(format!("{}: {}", p.display(), e)))?,
        None => FileConfig::default(),
    };
    let d = SuiteConfig::default();
    Ok(Settings {
        suite: SuiteConfig {
            window: c.window.or(file.window).unwrap_or(d.window),
            margin: c.margin.or(file.margin),
            seed: c.seed.or(file.seed).unwrap_or(d.seed),
        },
        format: c.format.or(file.format).unwrap_or(Format::Json),
        out: c.out.clone().or(file.out),
    })
}

fn emit(s: &Settings, text: &str) -> Result<()> {
    match &s.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render<T: Serialize>(s: &Settings, x: &T, text: impl FnOnce() -> String) -> Result<String> {
    match s.format {
        Format::Json => json::to_pretty(x),
        Format::Text => Ok(text()),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InsufficientWindow { .. } => 3,
        Error::UnknownId(_) | Error::Parse(_) | Error::Json(_) | Error::ForeignKey { .. } | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Verify { suite, common } => {
            let s = settings(&common)?;
            let rep = run_suite(&suite, s.suite)?;
            emit(&s, &render(&s, &rep, || rep.to_text())?)?;
            Ok(if rep.pass { 0 } else { 1 })
        }
        Cmd::Residual { kind, input, common } => {
            let s = settings(&common)?;
            let text = read_input(&input)?;
            let (pass, out) = residual(kind, &text, &s)?;
            emit(&s, &out)?;
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::Export { id, common } => {
            let s = settings(&common)?;
            emit(&s, &export(&id)?)?;
            Ok(0)
        }
        Cmd::List => {
            let mut t = String::from("algebras:\n");
            for id in catalog::ALGEBRA_IDS {
                t.push_str(&format!("  {id}\n"));
            }
            t.push_str("tensors:\n");
            for id in catalog::TENSOR_IDS {
                t.push_str(&format!("  tensor/{id}\n"));
            }
            t.push_str("suites:\n  all\n");
            for id in SUITES {
                t.push_str(&format!("  {id}\n"));
            }
            std::io::stdout().write_all(t.as_bytes())?;
            Ok(0)
        }
    }
}

fn read_input(input: &str) -> Result<String> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(Path::new(input))?)
    }
}

#[derive(Serialize)]
struct ResidualDoc<'a> {
    kind: &'static str,
    algebra: &'a str,
    zero: bool,
    residual: &'a Tensor,
}

/// Evaluates a residual; returns `(is zero, rendered document)`.
pub fn residual_text(kind: ResidualKind, input: &str, window: i64, text: bool) -> Result<(bool, String)> {
    let s = Settings {
        suite: SuiteConfig { window, ..Default::default() },
        format: if text { Format::Text } else { Format::Json },
        out: None,
    };
    residual(kind, input, &s)
}

fn residual(kind: ResidualKind, input: &str, s: &Settings) -> Result<(bool, String)> {
    let inp = json::ResidualInput::parse(input)?;
    let alg = catalog::algebra(&inp.algebra)?;
    let r = inp.tensor(&alg)?;
    let (name, res) = match kind {
        ResidualKind::PermYbe => ("perm-ybe", perm_ybe_residual(&alg, &r)?),
        ResidualKind::SEq => ("s-eq", s_equation_residual(&alg, &r)?),
        ResidualKind::Cybe => {
            let rep = cybe_report(&alg, &r, inp.form.as_deref(), s)?;
            let out = render(s, &rep, || rep.to_text())?;
            return Ok((rep.pass, out));
        }
    };
    let doc = ResidualDoc { kind: name, algebra: &inp.algebra, zero: res.is_zero(), residual: &res };
    let out = render(s, &doc, || {
        if res.is_zero() {
            format!("{name} residual on {}: 0\n", inp.algebra)
        } else {
            let mut t = format!("{name} residual on {}:\n", inp.algebra);
            for (ks, c) in res.iter() {
                t.push_str(&format!("  {c} {}\n", TupleDisplay(ks)));
            }
            t
        }
    })?;
    Ok((res.is_zero(), out))
}

fn cybe_report(alg: &crate::families::FiniteAlgebra, r: &Tensor, form: Option<&str>, s: &Settings) -> Result<CheckReport> {
    let form = form.unwrap_or(match alg.kind {
        AlgebraKind::PreLie => "kappa_p",
        _ => "omega_a",
    });
    let (aff, order, f, space): (Arc<dyn crate::families::Product>, Order, Box<dyn DeltaForm>, Space) = match form {
        "omega_a" => (Arc::new(ATs), Order::PA, Box::new(OmegaA), Space::TeeEss),
        "kappa_p" => (Arc::new(GradedPerm), Order::AP, Box::new(KappaP), Space::Mono),
        other => return Err(Error::UnknownId(format!("form {other}"))),
    };
    let n = s.suite.window.min(5);
    let w = match s.suite.margin {
        Some(m) => Window::with_margin(n, m),
        None => Window::new(n),
    };
    let rt = affinize_r(r, f.as_ref(), w)?;
    let lie = InducedLie::new(Arc::new(alg.clone()), alg.space(), aff, space, order);
    cybe_residual(&lie, &rt, w)
}

/// The symbolic coproduct of `e t^i` (`tee`) or `e s^i` under the • cobracket
/// of a catalog bialgebra with `Δ_A` from `(a_ts, ω)`.
pub fn symbolic_delta(id: &str, tee: bool) -> Result<TemplateSeries> {
    let p = catalog::algebra(id)?;
    let d = catalog::coproduct(id)?;
    let da = coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie)?;
    let b = BulletCobracket { left: Arc::new(d), right: Arc::new(da), order: Order::PA };
    let i = Affine::var(0);
    let x = if tee { KeyPattern::Tee(i) } else { KeyPattern::Ess(i) };
    let key = KeyPattern::pair(KeyPattern::Fin(SpaceId::new(p.id.as_str()), 0), x);
    let ts = b.pieces(&key, 1)?.iter().map(|t| pin_sum(t, 1)).collect();
    Ok(TemplateSeries::new(2, vec!["i".into()], ts)?.normalize())
}

fn first_ess(k: &KeyPattern) -> Option<&Affine> {
    match k {
        KeyPattern::Ess(a) => Some(a),
        KeyPattern::Pair(l, r) => first_ess(l).or_else(|| first_ess(r)),
        _ => None,
    }
}

/// Reindexes a one-variable sum so its first `s`-slot reads `−j`; equal
/// sums written with different indexings then merge under `normalize`.
fn pin_sum(t: &Template, j: Var) -> Template {
    let mut slots = Vec::new();
    for k in &t.keys {
        slots.push(first_ess(k).cloned());
    }
    let Some(a) = slots.into_iter().flatten().find(|a| a.coeff(j).abs() == 1) else {
        return t.clone();
    };
    if t.nvars != 1 {
        return t.clone();
    }
    // a = c·j + rest = −j'  gives  j = −c·(j' + rest)
    let c = a.coeff(j);
    let rest = &a - &Affine::from_terms(0, [(j, c)]);
    let mut subs = vec![None; j as usize + 1];
    subs[j as usize] = Some((&Affine::var(j) + &rest).scale(-c));
    Template::new(1, t.coeff.substitute(&subs), t.keys.iter().map(|k| k.substitute(&subs)).collect())
}

/// The exported JSON for an object id.
pub fn export(id: &str) -> Result<String> {
    if let Some(rest) = id.strip_prefix("double/") {
        let p = catalog::algebra(rest)?;
        let d = catalog::coproduct(rest)?;
        return json::to_pretty(&json::DoubleJson::new(&manin_double_from_bialgebra(&p, &d)?));
    }
    if let Some(rest) = id.strip_prefix("delta-t/") {
        return json::to_pretty(&json::SeriesJson::new(&symbolic_delta(rest, true)?));
    }
    if let Some(rest) = id.strip_prefix("delta-s/") {
        return json::to_pretty(&json::SeriesJson::new(&symbolic_delta(rest, false)?));
    }
    if let Some(rest) = id.strip_prefix("tensor/") {
        let (a, r) = catalog::tensor(rest)?;
        #[derive(Serialize)]
        struct Doc<'a> {
            algebra: &'a str,
            r: &'a Tensor,
        }
        return json::to_pretty(&Doc { algebra: a.id.as_str(), r: &r });
    }
    let a = catalog::algebra(id)?;
    let d = catalog::coproduct(id).ok();
    json::to_pretty(&json::AlgebraJson::new(&a, d.as_ref()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.toml");
        std::fs::write(&p, "window = 4\nseed = 9\nformat = \"text\"\n").unwrap();
        let c = Common { window: Some(5), config: Some(p), ..Default::default() };
        let s = settings(&c).unwrap();
        assert_eq!(s.suite, SuiteConfig { window: 5, margin: None, seed: 9 });
        assert_eq!(s.format, Format::Text);
    }

    #[test]
    fn bad_config_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.toml");
        std::fs::write(&p, "windw = 4\n").unwrap();
        let c = Common { config: Some(p), ..Default::default() };
        assert!(matches!(settings(&c), Err(Error::Parse(_))));
    }

    #[test]
    fn symbolic_delta_t_has_coefficient_i() {
        let s = symbolic_delta("ex-1p", true).unwrap();
        let j = serde_json::to_value(json::SeriesJson::new(&s)).unwrap();
        let coeffs: Vec<String> = j["templates"].as_array().unwrap().iter().map(|t| t["coeff"].as_str().unwrap().to_string()).collect();
        assert!(coeffs.iter().all(|c| c == "i" || c == "-i"), "{coeffs:?}");
        assert_eq!(s.bind(&[3]).unwrap().restrict(4).unwrap(), crate::cli::suites::displayed_delta(
            &crate::kernel::BasisKey::pair(catalog::algebra("ex-1p").unwrap().key(0), crate::kernel::BasisKey::tee(3)), 4));
    }

    #[test]
    fn unknown_export() {
        assert!(matches!(export("nope"), Err(Error::UnknownId(_))));
        assert!(matches!(export("double/pl-1"), Err(_)));
    }
}
