//! Command-line front end for the verification campaigns.
//!
//! Exit codes: 0 when every campaign passed, 1 when some campaign failed or
//! starved, 2 for unknown names, malformed configs, and I/O trouble. With
//! `--replay` the code is 0 exactly when every stored failure reproduced.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pnspace::campaigns;
use pnspace::config::{Config, Overrides};
use pnspace::error::{Error, Result};
use pnspace::grid::Grid;
use pnspace::products::{check_scalar_dominance, ScalarOp};
use pnspace::report::{fnv1a, CheckParams, VerificationReport};
use pnspace::spaces::{verify_axioms_parts, Space};
use pnspace::tnorm::{check_tnorm_axioms, TConorm, TNorm};
use pnspace::transform::{check_superadditive, check_superadditivity_suite, MbFunction};
use pnspace::trifn::{check_dominance, Trifn};

#[derive(Parser)]
#[command(name = "pnspace", version, about = "Randomized verification of probabilistic normed spaces and their products")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Config file; falls back to $PNSPACE_CONFIG, then the built-in default.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Base seed; mixed per campaign so sibling campaigns stay independent.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Trial count for every campaign run by this invocation.
    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Grid resolution (number of cells); the span is taken from the config.
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,

    /// Append one JSON object per campaign to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Re-run and require every failure stored in this report file to
    /// reproduce: same campaign, same trial, same location, same magnitude.
    #[arg(long, global = true, value_name = "PATH")]
    replay: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the t-norm axioms for a named operation.
    CheckTnorm {
        /// One of M, Pi, W, or TG:<ddf>:<alpha>.
        name: String,
    },
    /// Check that the first operation dominates the second, at the
    /// triangle-function level or on unit-interval scalars.
    CheckDominance {
        /// Dominating operation: a triangle function, t-norm, or t-conorm.
        outer: String,
        /// Dominated operation of the same kind.
        inner: String,
    },
    /// Check superadditivity of an m-function, optionally also at the
    /// distribution level and for agreement between the two.
    CheckSuperadditive {
        /// One of pow:<p> or blowup:<b>.
        m: String,
        /// Triangle function for the distribution-level check.
        #[arg(long)]
        tau: Option<String>,
    },
    /// Verify the norm axioms of a configured space, one campaign per axiom.
    VerifyAxioms {
        /// Space name from the config; product names are accepted too.
        space: String,
    },
    /// Build a configured product space, optionally verifying its axioms.
    BuildProduct {
        /// Product name from the config.
        product: String,
        /// Run the axiom campaigns on the built product.
        #[arg(long)]
        verify: bool,
    },
    /// Run a bundled theorem campaign, or every one of them.
    Theorem {
        /// Campaign id, or "all".
        #[arg(default_value = "all")]
        id: String,
    },
    /// Run a bundled neighborhood-topology experiment, or every one of them.
    Topology {
        /// Experiment name, or "all".
        #[arg(default_value = "all")]
        experiment: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => code,
        Err(Error::Hypothesis(report)) => {
            println!("{}", report.summary_line());
            eprintln!("error: a hypothesis check failed during construction");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<ExitCode> {
    let cfg = Config::resolve(cli.config.as_deref())?;
    cfg.validate()?;
    let grid = match cli.grid {
        Some(n) => Grid::new(n, cfg.grid.x_max)?,
        None => cfg.grid()?,
    };
    let ov = Overrides {
        trials: cli.trials,
        seed: cli.seed,
    };

    let reports = run_command(&cli.command, &cfg, grid, ov)?;
    for r in &reports {
        println!("{}", r.summary_line());
    }
    if let Some(path) = &cli.json {
        write_jsonl(path, &reports)?;
    }
    if let Some(path) = &cli.replay {
        return replay(path, &reports);
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Campaign knobs for an ad-hoc command: a neutral trial count and a seed
/// derived from the canonical command string, both still overridable through
/// the config's campaigns table and the command line.
fn adhoc_params(cfg: &Config, id: &str, ov: Overrides) -> CheckParams {
    cfg.params_for(id, CheckParams::new(1000, fnv1a(id)), ov)
}

fn run_command(
    command: &Command,
    cfg: &Config,
    grid: Grid,
    ov: Overrides,
) -> Result<Vec<VerificationReport>> {
    match command {
        Command::CheckTnorm { name } => {
            let t = TNorm::parse(name)?;
            let params = adhoc_params(cfg, &format!("check-tnorm:{name}"), ov);
            Ok(vec![check_tnorm_axioms(&t, params)])
        }
        Command::CheckDominance { outer, inner } => {
            let params = adhoc_params(cfg, &format!("check-dominance:{outer}>>{inner}"), ov);
            check_dominance_command(outer, inner, grid, params).map(|r| vec![r])
        }
        Command::CheckSuperadditive { m, tau } => {
            let mf = MbFunction::parse(m)?;
            match tau {
                None => {
                    let params = adhoc_params(cfg, &format!("check-superadditive:{m}"), ov);
                    Ok(vec![check_superadditive(&mf, params)])
                }
                Some(t) => {
                    let trifn = parse_trifn_lenient(t)?;
                    let params =
                        adhoc_params(cfg, &format!("check-superadditive:{m}:tau:{t}"), ov);
                    Ok(check_superadditivity_suite(&mf, &trifn, grid, params))
                }
            }
        }
        Command::VerifyAxioms { space } => {
            let params = adhoc_params(cfg, &format!("axioms:{space}"), ov);
            match cfg.build_space(space) {
                Ok(s) => Ok(verify_axioms_parts(&s, params)),
                // A product name is as good a target for the axiom campaigns.
                Err(Error::UnknownName(_)) => {
                    let p = cfg.build_product(space)?;
                    Ok(verify_axioms_parts(&p, params))
                }
                Err(e) => Err(e),
            }
        }
        Command::BuildProduct { product, verify } => {
            let p = cfg.build_product(product)?;
            println!(
                "built {} (dim={}, factors={}, combiner={})",
                p.name(),
                p.dim(),
                p.factors().len(),
                p.combiner().name()
            );
            if *verify {
                let params = adhoc_params(cfg, &format!("product-axioms:{product}"), ov);
                Ok(verify_axioms_parts(&p, params))
            } else {
                Ok(Vec::new())
            }
        }
        Command::Theorem { id } => {
            let ids: Vec<&str> = if id == "all" {
                campaigns::ids()
            } else if campaigns::describe(id).is_some() {
                vec![id.as_str()]
            } else {
                return Err(Error::UnknownName(format!("campaign id '{id}'")));
            };
            ids.into_iter()
                .map(|id| {
                    let builtin = campaigns::builtin_params(id).expect("listed id has builtins");
                    campaigns::run(id, grid, cfg.params_for(id, builtin, ov))
                })
                .collect()
        }
        Command::Topology { experiment } => {
            let names: Vec<&str> = if experiment == "all" {
                campaigns::topology_ids()
            } else if campaigns::describe_topology(experiment).is_some() {
                vec![experiment.as_str()]
            } else {
                return Err(Error::UnknownName(format!(
                    "topology experiment '{experiment}'"
                )));
            };
            names
                .into_iter()
                .map(|name| {
                    let builtin =
                        campaigns::builtin_topology_params(name).expect("listed name has builtins");
                    let params = cfg.params_for(&format!("topology:{name}"), builtin, ov);
                    campaigns::run_topology(name, grid, params)
                })
                .collect()
        }
    }
}

/// Dominance is checked at the triangle-function level when both names parse
/// as triangle functions, and on unit-interval scalars when both parse as
/// t-norms or t-conorms. Mixing the two levels is refused.
fn check_dominance_command(
    outer: &str,
    inner: &str,
    grid: Grid,
    params: CheckParams,
) -> Result<VerificationReport> {
    if let (Ok(o), Ok(i)) = (Trifn::parse(outer), Trifn::parse(inner)) {
        return Ok(check_dominance(&o, &i, grid, params));
    }
    let o = parse_scalar(outer)?;
    let i = parse_scalar(inner)?;
    let tol = scalar_dominance_tol(&o).max(scalar_dominance_tol(&i));
    Ok(check_scalar_dominance(&o, &i, tol, params))
}

fn parse_scalar(name: &str) -> Result<ScalarOp> {
    if let Ok(t) = TNorm::parse(name) {
        return Ok(ScalarOp::Norm(t));
    }
    if let Ok(s) = TConorm::parse(name) {
        return Ok(ScalarOp::Conorm(s));
    }
    Err(Error::UnknownName(format!(
        "operation '{name}' (expected a triangle function, t-norm, or t-conorm)"
    )))
}

/// Generator round-trips cost the parametric family a few digits; the closed
/// forms are exact to rounding.
fn scalar_dominance_tol(op: &ScalarOp) -> f64 {
    if op.name().contains("TG:") {
        1e-9
    } else {
        1e-12
    }
}

/// Accepts the full triangle-function grammar, and bare t-norm names as a
/// shorthand for their sup-convolution.
fn parse_trifn_lenient(name: &str) -> Result<Trifn> {
    if let Ok(t) = Trifn::parse(name) {
        return Ok(t);
    }
    if TNorm::parse(name).is_ok() {
        return Trifn::parse(&format!("tau:{name}"));
    }
    Err(Error::UnknownName(format!("triangle function '{name}'")))
}

fn write_jsonl(path: &Path, reports: &[VerificationReport]) -> Result<()> {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Compares the reports just produced against a stored report file: every
/// stored failure must reproduce with the same trial index and location, and
/// with the violation magnitude unchanged to 1e-12.
fn replay(path: &Path, reports: &[VerificationReport]) -> Result<ExitCode> {
    let text = fs::read_to_string(path)?;
    let stored: Vec<VerificationReport> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect::<std::result::Result<_, _>>()?;

    let failures: Vec<&VerificationReport> =
        stored.iter().filter(|r| !r.passed() && r.witness.is_some()).collect();
    if failures.is_empty() {
        println!("replay: the stored file holds no failed campaigns; nothing to reproduce");
        return Ok(ExitCode::SUCCESS);
    }

    let mut all_reproduced = true;
    let mut out = std::io::stdout().lock();
    for old in failures {
        let old_w = old.witness.as_ref().expect("filtered on presence");
        let verdict = match reports.iter().find(|r| r.campaign == old.campaign) {
            None => format!("missing (campaign was not re-run; got {})", names(reports)),
            Some(new) => match &new.witness {
                None => format!("diverged (re-run verdict {}, no witness)", new.verdict),
                Some(w) => {
                    if w.trial == old_w.trial
                        && w.location == old_w.location
                        && (w.violation - old_w.violation).abs() <= 1e-12
                    {
                        "reproduced".into()
                    } else {
                        format!(
                            "diverged (stored trial {} [{}] violation {:.6e}, re-run trial {} [{}] violation {:.6e})",
                            old_w.trial, old_w.location, old_w.violation,
                            w.trial, w.location, w.violation
                        )
                    }
                }
            },
        };
        if verdict != "reproduced" {
            all_reproduced = false;
        }
        writeln!(out, "replay {}: {}", old.campaign, verdict)?;
    }
    Ok(if all_reproduced {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn names(reports: &[VerificationReport]) -> String {
    if reports.is_empty() {
        return "no campaigns".into();
    }
    reports
        .iter()
        .map(|r| r.campaign.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}
