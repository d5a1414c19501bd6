//! Command-line front end. Exit codes: 0 pass, 1 check failure, 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use crate::affine_schur::{center_check, freeness_probe, sl2, AffineSchur};
use crate::algebra::{HeckeAlgebra, Specialization};
use crate::cartan::{census, langlands_dim_check, weyl_orbit, Weight};
use crate::config::{parse_config_with, JobConfig};
use crate::error::Error;
use crate::howe::{default_q0, double_centralizer_check};
use crate::schur::{dim_schur, structure_constants, SchurAlgebra};
use crate::springer;
use crate::verify;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qschur", version, about = "Hecke, q-Schur and affine q-Schur algebra computations")]
pub struct Cli {
    /// Job configuration (key=value lines or JSON).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Directory for output artifacts.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
    /// Specializations, e.g. `1,3,5/2`.
    #[arg(long, global = true, value_name = "LIST")]
    pub q0: Option<String>,
    /// Truncation window for affine checks.
    #[arg(long = "box", global = true, value_name = "N")]
    pub window: Option<usize>,
    /// Suite for `verify`.
    #[arg(long, global = true, value_name = "NAME")]
    pub suite: Option<String>,
    /// Worker threads.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Overrides {
    /// Extra `key=value` settings applied after the config file.
    #[arg(value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit census of the configured weight set.
    Census(Overrides),
    #[command(subcommand)]
    Schur(SchurCmd),
    #[command(subcommand)]
    Affine(AffineCmd),
    #[command(subcommand)]
    Springer(SpringerCmd),
    #[command(subcommand)]
    Howe(HoweCmd),
    #[command(subcommand)]
    Langlands(LanglandsCmd),
    /// Runs the named invariant suite (default `all`).
    Verify { suite: Option<String> },
}

#[derive(Debug, Subcommand)]
pub enum SchurCmd {
    /// Structure constants of the generic Schur algebra.
    Consts(Overrides),
    /// Dimension of the Schur algebra.
    Dim(Overrides),
}

#[derive(Debug, Subcommand)]
pub enum AffineCmd {
    /// Action matrices of the rank one affine example.
    #[command(name = "sl2-remark")]
    Sl2Remark,
    /// Checks that an orbit sum is central on a weight window.
    #[command(name = "center-check")]
    CenterCheck(Overrides),
    /// Rank probe of the parabolic affine modules.
    Freeness(Overrides),
}

#[derive(Debug, Subcommand)]
pub enum SpringerCmd {
    /// Point counts of partial Springer fibers for all pairs of size `d`.
    Counts(Overrides),
    /// Irreducible dimensions from point counts, for a gl box table.
    Irreps(Overrides),
}

#[derive(Debug, Subcommand)]
pub enum HoweCmd {
    /// Double centralizer verdicts for `qf` and `qg`.
    Check(Overrides),
}

#[derive(Debug, Subcommand)]
pub enum LanglandsCmd {
    /// Compares the census with that of the dual datum.
    Check(Overrides),
}

struct Failure {
    code: i32,
    messages: Vec<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CrossCheck(_) | Error::NotPolynomial(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        Failure { code, messages: vec![e.to_string()] }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, messages: vec![msg.into()] }
}

type Run = std::result::Result<i32, Failure>;

pub fn run(cli: Cli) -> i32 {
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(f) => {
            for m in &f.messages {
                eprintln!("error: {m}");
            }
            f.code
        }
    }
}

fn load(cli: &Cli, over: &Overrides) -> std::result::Result<JobConfig, Failure> {
    let text = match &cli.config {
        Some(p) => fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => String::new(),
    };
    let mut extra = over.overrides.clone();
    if let Some(q) = &cli.q0 {
        extra.push(format!("q0={q}"));
    }
    if let Some(b) = cli.window {
        extra.push(format!("box={b}"));
    }
    parse_config_with(&text, &extra)
        .map_err(|errs| Failure { code: EXIT_USAGE, messages: errs.iter().map(ToString::to_string).collect() })
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| usage(e.to_string()))?;
    write_text(dir, name, &(text + "\n"))
}

fn write_text(dir: &Path, name: &str, text: &str) -> std::result::Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn pass_fail(ok: bool) -> i32 {
    println!("{}", if ok { "PASS" } else { "FAIL" });
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn dispatch(cli: &Cli) -> Run {
    let out = cli.out.as_path();
    match &cli.command {
        Command::Census(o) => {
            let t = load(cli, o)?.table_f()?;
            let c = census(&t);
            println!("{} {}: {} orbits, |Xi| = {}", c.datum, c.weights, c.orbits.len(), c.total);
            write_json(out, "census.json", &c)?;
            Ok(EXIT_PASS)
        }
        Command::Schur(SchurCmd::Dim(o)) => {
            let t = load(cli, o)?.table_f()?;
            println!("{}", dim_schur(&t));
            Ok(EXIT_PASS)
        }
        Command::Schur(SchurCmd::Consts(o)) => {
            let t = load(cli, o)?.table_f()?;
            let alg = SchurAlgebra::new(HeckeAlgebra::generic(t.group().clone()), t.clone())?;
            let consts = structure_constants(&alg)?;
            println!("{} products over a basis of size {}", consts.len(), alg.dim());
            write_json(out, "consts.json", &consts)?;
            Ok(EXIT_PASS)
        }
        Command::Affine(AffineCmd::Sl2Remark) => {
            let r = sl2::remark_report()?;
            println!("basis: {}", r.basis.join(", "));
            for (name, m) in &r.matrices {
                println!("{name}: [[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1]);
            }
            println!("determinant: {} (unit: {})", r.determinant, r.determinant_is_unit);
            println!("commutant rank 4, image rank {}, finite shadow rank {}", r.image_rank, r.finite_shadow_rank);
            write_json(out, "sl2_remark.json", &r)?;
            let check = verify::run_check("affine.sl2_remark").expect("registered check");
            if !check.passed {
                println!("{}", check.detail);
            }
            Ok(pass_fail(check.passed))
        }
        Command::Affine(AffineCmd::CenterCheck(o)) => {
            let cfg = load(cli, o)?;
            let s = AffineSchur::new(cfg.table_f()?)?;
            let datum = s.group().datum().clone();
            let mu = match &cfg.mu {
                Some(m) => m.clone(),
                None => {
                    let mut e0 = vec![0; datum.lattice_rank()];
                    e0[0] = datum.scale();
                    let orbit = weyl_orbit(&datum, &Weight(e0))?;
                    let dominant = orbit.weights.iter().find(|w| (0..datum.rank()).all(|i| datum.raw_pairing(w, i) >= 0));
                    dominant.cloned().expect("every orbit has a dominant element")
                }
            };
            let k = cfg.window.unwrap_or(1) as i64;
            let c = center_check(&s, &mu, k)?;
            for w in &c.witnesses {
                println!("{w}");
            }
            write_json(out, "center.json", &c)?;
            Ok(pass_fail(c.result))
        }
        Command::Affine(AffineCmd::Freeness(o)) => {
            let cfg = load(cli, o)?;
            let s = AffineSchur::new(cfg.table_f()?)?;
            let k = cfg.window.unwrap_or(1) as i64;
            let q0 = match cfg.q0.first() {
                Some(Specialization::Value(v)) => v.clone(),
                _ => BigRational::from_integer(2.into()),
            };
            let certs = (0..s.table().len()).map(|g| freeness_probe(&s, g, k, &q0)).collect::<crate::Result<Vec<_>>>()?;
            for c in &certs {
                println!("{}: {}", c.check, c.witnesses.join("; "));
            }
            write_json(out, "freeness.json", &certs)?;
            Ok(pass_fail(certs.iter().all(|c| c.result)))
        }
        Command::Springer(SpringerCmd::Counts(o)) => {
            let cfg = load(cli, o)?;
            let d = cfg.d.ok_or_else(|| usage("springer counts needs d"))?;
            let pairs = springer::survey(d)?;
            let profiles: Vec<_> = pairs.iter().map(|p| p.profile.clone()).collect();
            write_text(out, "fq_counts.csv", &springer::counts_csv(&profiles))?;
            write_json(out, "springer_pairs.json", &pairs)?;
            let bad: Vec<_> = pairs.iter().filter(|p| !p.consistent()).collect();
            for p in &bad {
                println!("inconsistent: lambda {:?} gamma {:?}", p.profile.lambda, p.profile.gamma);
            }
            println!("{} pairs with d = {d}", pairs.len());
            Ok(pass_fail(bad.is_empty()))
        }
        Command::Springer(SpringerCmd::Irreps(o)) => {
            let t = load(cli, o)?.table_f()?;
            let r = springer::irreducible_dims(&t)?;
            for e in &r.entries {
                println!("L{:?}: dim {}", e.label, e.dim_from_counts);
            }
            println!("sum of squares {} vs dim {}", r.wedderburn_sum, r.schur_dim);
            write_text(out, "fq_counts.csv", &springer::counts_csv(&r.profiles))?;
            write_json(out, "irreps.json", &r)?;
            Ok(pass_fail(r.wedderburn_holds))
        }
        Command::Howe(HoweCmd::Check(o)) => {
            let cfg = load(cli, o)?;
            let (f, g) = cfg.tables_fg()?;
            let q0s = if cfg.q0.is_empty() { default_q0() } else { cfg.q0.clone() };
            let verdicts = q0s.iter().map(|at| double_centralizer_check(&f, &g, at)).collect::<crate::Result<Vec<_>>>()?;
            for v in &verdicts {
                println!("q0 = {}: {} (hypothesis {})", v.q0, v.verdict, v.hypothesis);
                for w in &v.witnesses {
                    println!("  {w}");
                }
            }
            write_json(out, "verdict.json", &verdicts)?;
            let agree = verdicts.iter().all(|v| v.verdict == verdicts[0].verdict);
            let implied = verdicts.iter().all(|v| !v.hypothesis || v.holds());
            Ok(pass_fail(agree && implied))
        }
        Command::Langlands(LanglandsCmd::Check(o)) => {
            let cfg = load(cli, o)?;
            let spec = cfg.qf.clone().ok_or_else(|| usage("langlands check needs qf"))?;
            let r = langlands_dim_check(&cfg.cartan()?, &spec)?;
            println!("{}: {}, {}: {}", r.datum, r.total, r.dual, r.total_dual);
            write_json(out, "langlands.json", &r)?;
            Ok(pass_fail(r.equal))
        }
        Command::Verify { suite } => {
            let name = suite.clone().or_else(|| cli.suite.clone()).unwrap_or_else(|| "all".into());
            let report = verify::run_suite(&name)
                .ok_or_else(|| usage(format!("unknown suite `{name}`; known: {}", verify::suites().join(", "))))?;
            for c in &report.checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            write_json(out, "verify_report.json", &report)?;
            Ok(pass_fail(report.passed))
        }
    }
}
