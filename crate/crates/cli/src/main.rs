//! Command line front end for the deformation engine.
//!
//! Exit codes: 0 when every requested check passes, 1 when at least one
//! check fails, 2 for configuration or usage errors.

mod config;
mod pipeline;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};

use qhl_core::{
    check_color_relations, check_normal_element, instantiate_named, list_named,
    quadratic_u, quadratic_u_casimir, quadratic_w, AlphabetData, NamedInstance,
    RewriteSystem, WordPoly,
};

use config::{RunConfig, DEFAULT_DEGREE_BOUND, DEFAULT_JACOBI_BOUND};
use report::{
    render_structured, render_text, BoundsInfo, CheckOutcome, Format, GradingEntry,
    NamedEntry, Report,
};

const NF_BUDGET: usize = 500_000;

#[derive(Parser)]
#[command(name = "qhl", version, about = "symbolic checks for twisted derivation algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "path")]
    config: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Largest monomial exponent probed by operator identities.
    #[arg(long, global = true, value_name = "n")]
    jacobi_bound: Option<usize>,
    /// Largest degree enumerated in quadratic algebra checks.
    #[arg(long, global = true, value_name = "n")]
    degree_bound: Option<usize>,
    /// Expression assumed nonzero when solving (repeatable).
    #[arg(long = "assume", global = true, value_name = "expr")]
    assume: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the deformation from a twist and run every applicable check.
    Deform,
    /// Run exactly the checks listed in the configuration.
    Check,
    /// Solve the twisting-element compatibility equation.
    Delta,
    /// Analyze a quadratic rewriting system.
    Quadratic,
    /// List named instances, or inspect one.
    Named {
        /// Instance name; omit to list all.
        name: Option<String>,
    },
}

struct Bounds {
    jacobi: usize,
    degree: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(report) => {
            let output = match cli.format {
                Format::Structured => render_structured(&report),
                Format::Text => render_text(&report, started.elapsed().as_millis()),
            };
            print!("{output}");
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("config error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let config = match &cli.config {
        Some(path) => config::load(path)?,
        None => RunConfig::default(),
    };
    let bounds = Bounds {
        jacobi: cli
            .jacobi_bound
            .or(config.bounds.jacobi)
            .unwrap_or(DEFAULT_JACOBI_BOUND),
        degree: cli
            .degree_bound
            .or(config.bounds.degree)
            .unwrap_or(DEFAULT_DEGREE_BOUND),
    };
    match &cli.command {
        Command::Deform => run_twist_command("deform", &config, cli, &bounds, None),
        Command::Check => {
            let checks = config::normalize_checks(&config.checks)?;
            run_twist_command("check", &config, cli, &bounds, Some(checks))
        }
        Command::Delta => {
            run_twist_command("delta", &config, cli, &bounds, Some(vec!["delta"]))
        }
        Command::Quadratic => run_quadratic(&config, &bounds),
        Command::Named { name } => run_named(name.as_deref(), cli, &config, &bounds),
    }
}

fn run_twist_command(
    command: &str,
    config: &RunConfig,
    cli: &Cli,
    bounds: &Bounds,
    checks: Option<Vec<&'static str>>,
) -> Result<Report> {
    if cli.config.is_none() {
        bail!("the {command} command needs --config");
    }
    let resolved = config::resolve_twist(config, &cli.assume)?;
    let mut pipeline = pipeline::Pipeline::new(&resolved, bounds.jacobi)?;
    let names = checks.unwrap_or_else(|| pipeline.applicable_checks());
    let outcomes = pipeline.run(&names);
    let pass = outcomes.iter().all(CheckOutcome::pass);
    Ok(Report {
        command: command.to_string(),
        instance: resolved.instance.clone(),
        description: resolved.description.clone(),
        ring: Some(pipeline.ring_info()),
        parameters: resolved.twist.ring().decl().parameter_names().to_vec(),
        bounds: BoundsInfo {
            jacobi: bounds.jacobi,
            degree: bounds.degree,
        },
        assume_nonzero: resolved.assume_nonzero.clone(),
        instances: None,
        checks: outcomes,
        pass,
    })
}

fn run_quadratic(config: &RunConfig, bounds: &Bounds) -> Result<Report> {
    let section = config.quadratic.as_ref();
    let preset = section.and_then(|s| s.preset.as_deref());
    let custom = section.is_some_and(|s| s.alphabet.is_some() || !s.relations.is_empty());
    let (label, system, casimir) = match (preset, custom) {
        (Some(_), true) => {
            bail!("[quadratic] takes either `preset` or `alphabet`/`relations`, not both")
        }
        (Some("u"), false) | (None, false) => {
            let decl = config::build_decl(config.field.as_ref()).and_then(|d| {
                if d.parameter_names().is_empty() {
                    qhl_core::FieldDecl::new(vec!["q", "p0"], None).map_err(|e| anyhow!("{e}"))
                } else {
                    Ok(d)
                }
            })?;
            let system = quadratic_u(&decl).map_err(|e| anyhow!("{e}"))?;
            ("u", system, true)
        }
        (Some("w"), false) => {
            let decl = config::build_decl(config.field.as_ref()).and_then(|d| {
                if d.parameter_names().is_empty() {
                    qhl_core::FieldDecl::new(vec!["q", "p0"], None).map_err(|e| anyhow!("{e}"))
                } else {
                    Ok(d)
                }
            })?;
            let system = quadratic_w(&decl).map_err(|e| anyhow!("{e}"))?;
            ("w", system, false)
        }
        (Some(other), false) => bail!("unknown quadratic preset `{other}`"),
        (None, true) => {
            let section = section.unwrap();
            let letters = section
                .alphabet
                .clone()
                .ok_or_else(|| anyhow!("[quadratic] relations need an `alphabet`"))?;
            let alphabet = AlphabetData::new(letters).map_err(|e| anyhow!("{e}"))?;
            let decl = config::build_decl(config.field.as_ref())?;
            let mut relations = Vec::new();
            for src in &section.relations {
                relations.push(
                    WordPoly::parse(&alphabet, &decl, src)
                        .map_err(|e| anyhow!("relation `{src}`: {e}"))?,
                );
            }
            let system =
                RewriteSystem::from_relations(&alphabet, &decl, &relations)
                    .map_err(|e| anyhow!("{e}"))?;
            ("custom", system, false)
        }
    };

    let outcome = quadratic_outcome(label, &system, casimir, bounds.degree)?;
    let pass = outcome.pass();
    Ok(Report {
        command: "quadratic".to_string(),
        instance: label.to_string(),
        description: None,
        ring: None,
        parameters: system.decl().parameter_names().to_vec(),
        bounds: BoundsInfo {
            jacobi: bounds.jacobi,
            degree: bounds.degree,
        },
        assume_nonzero: Vec::new(),
        instances: None,
        checks: vec![outcome],
        pass,
    })
}

fn quadratic_outcome(
    label: &str,
    system: &RewriteSystem,
    casimir: bool,
    degree_bound: usize,
) -> Result<CheckOutcome> {
    let confluence = system
        .check_confluence(NF_BUDGET)
        .map_err(|e| anyhow!("{e}"))?;
    let counts: Vec<u64> = (0..=degree_bound)
        .map(|d| system.count_normal_words(d))
        .collect();
    let rules: Vec<String> = system
        .rules()
        .map(|rule| {
            format!(
                "{} -> {}",
                rule.lhs.display(system.alphabet()),
                rule.rhs
            )
        })
        .collect();
    let casimir_normal = if casimir && confluence.confluent {
        let (omega, tau) = quadratic_u_casimir(system).map_err(|e| anyhow!("{e}"))?;
        let report = check_normal_element(system, &omega, &tau, NF_BUDGET)
            .map_err(|e| anyhow!("{e}"))?;
        Some(report.normal)
    } else {
        None
    };
    let pass = confluence.confluent && casimir_normal.unwrap_or(true);
    Ok(CheckOutcome::Quadratic {
        pass,
        system: label.to_string(),
        rules,
        confluent: confluence.confluent,
        overlaps: confluence.overlaps,
        normal_word_counts: counts,
        casimir_normal,
        reason: if confluence.confluent {
            None
        } else {
            Some("overlap ambiguities do not resolve".to_string())
        },
    })
}

fn run_named(
    name: Option<&str>,
    cli: &Cli,
    config: &RunConfig,
    bounds: &Bounds,
) -> Result<Report> {
    let Some(name) = name else {
        let instances: Vec<NamedEntry> = list_named()
            .into_iter()
            .map(|(name, description)| NamedEntry {
                name: name.to_string(),
                description: description.to_string(),
            })
            .collect();
        return Ok(Report {
            command: "named".to_string(),
            instance: String::new(),
            description: None,
            ring: None,
            parameters: Vec::new(),
            bounds: BoundsInfo {
                jacobi: bounds.jacobi,
                degree: bounds.degree,
            },
            assume_nonzero: Vec::new(),
            instances: Some(instances),
            checks: Vec::new(),
            pass: true,
        });
    };

    match instantiate_named(name).map_err(|e| anyhow!("{e}"))? {
        NamedInstance::Operator {
            name,
            description,
            twist,
            assume_nonzero,
        } => {
            let mut merged = assume_nonzero;
            for expr in config.assume_nonzero.iter().chain(&cli.assume) {
                if !merged.contains(expr) {
                    merged.push(expr.clone());
                }
            }
            let resolved = config::ResolvedTwist {
                instance: name.to_string(),
                description: Some(description.to_string()),
                twist,
                assume_nonzero: merged,
            };
            let mut pipeline = pipeline::Pipeline::new(&resolved, bounds.jacobi)?;
            let names = pipeline.applicable_checks();
            let outcomes = pipeline.run(&names);
            let pass = outcomes.iter().all(CheckOutcome::pass);
            Ok(Report {
                command: "named".to_string(),
                instance: name.to_string(),
                description: Some(description.to_string()),
                ring: Some(pipeline.ring_info()),
                parameters: resolved.twist.ring().decl().parameter_names().to_vec(),
                bounds: BoundsInfo {
                    jacobi: bounds.jacobi,
                    degree: bounds.degree,
                },
                assume_nonzero: resolved.assume_nonzero.clone(),
                instances: None,
                checks: outcomes,
                pass,
            })
        }
        NamedInstance::Presentation {
            name,
            description,
            relations,
            grading,
            ..
        } => {
            let pass = check_color_relations(&relations, &grading)
                .map_err(|e| anyhow!("{e}"))?;
            let outcome = CheckOutcome::Color {
                pass,
                relations: relations.iter().map(|r| r.to_string()).collect(),
                grading: grading
                    .iter()
                    .map(|(letter, degree)| GradingEntry {
                        letter: letter.clone(),
                        degree: *degree,
                    })
                    .collect(),
            };
            Ok(Report {
                command: "named".to_string(),
                instance: name.to_string(),
                description: Some(description.to_string()),
                ring: None,
                parameters: Vec::new(),
                bounds: BoundsInfo {
                    jacobi: bounds.jacobi,
                    degree: bounds.degree,
                },
                assume_nonzero: Vec::new(),
                instances: None,
                checks: vec![outcome],
                pass,
            })
        }
    }
}
