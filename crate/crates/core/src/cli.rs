//! Command-line front end.
//!
//! Exit codes: 0 on success (all requested verdicts hold), 1 when a check or
//! verdict fails, 2 on usage or parse errors.

use crate::checks::{self, VerifyOptions};
use crate::ef::{self, EfVerdict};
use crate::error::{Error, Result};
use crate::poly::{enumerate_generators, Polyhedron};
use crate::textio;
use crate::tsp;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "exactpoly",
    version,
    about = "Exact rational polyhedral computation: projection, vertex enumeration, \
             LP, extension checks, and a built-in claim-verification suite"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the built-in verification suite and report each check
    VerifyPaper {
        /// Seed for the randomized equivalence instances
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest city count for the bijection checks
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Comma-separated list of check ids to run
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project an H-polyhedron file onto selected coordinates
    Project {
        file: PathBuf,
        /// Comma-separated coordinate indices to keep
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the generators (vertices, rays, lineality) of an H-polyhedron file
    Vertices {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extension checks between a lifted system and a target polyhedron
    EfCheck {
        /// Lifted system (H-representation file)
        #[arg(long)]
        q: PathBuf,
        /// Target polyhedron (H- or V-representation file)
        #[arg(long)]
        p: PathBuf,
        /// Coordinates of the target block inside the lifted system
        #[arg(long, value_delimiter = ',', required = true)]
        x_coords: Vec<usize>,
        /// Linear map file (required for the map definition)
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Definition::All)]
        definition: Definition,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tours and polytopes of the visit-time assignment model
    Tsp {
        /// Number of cities (at least 2)
        n: usize,
        #[command(subcommand)]
        action: TspAction,
    },
}

#[derive(Subcommand, Debug)]
enum TspAction {
    /// List all tours rooted at city 0
    Tours,
    /// Write the assignment polytope as an H-representation file
    Ap {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the tour/vertex bijection for this city count
    Bijection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Definition {
    Standard,
    Exists,
    Map,
    All,
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(Error::Io)
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

/// Run a parsed invocation; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::VerifyPaper {
            seed,
            n_max,
            only,
            format,
            out,
        } => {
            let opts = VerifyOptions {
                seed,
                n_max,
                only: only.clone(),
            };
            if let Some(list) = &only {
                let known = checks::check_ids(&VerifyOptions {
                    seed,
                    n_max,
                    only: None,
                });
                for id in list {
                    if !known.contains(id) {
                        return Ok(usage_error(&format!(
                            "unknown check id {id:?}; known ids: {}",
                            known.join(", ")
                        )));
                    }
                }
            }
            let results = checks::run_verify(&opts)?;
            let report = match format {
                Format::Text => checks::render_text(&results),
                Format::Json => checks::render_json(&results, &opts),
            };
            emit(&out, &report)?;
            Ok(if checks::all_hold(&results) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Project { file, keep, out } => {
            let h = textio::parse_h(&read(&file)?)?;
            let projected = crate::fm::fourier_motzkin(&h, &keep)?;
            emit(&out, &textio::write_h(&projected))?;
            Ok(EXIT_OK)
        }
        Command::Vertices { file, out } => {
            let h = textio::parse_h(&read(&file)?)?;
            let gens = enumerate_generators(&h);
            emit(&out, &textio::write_v(&gens))?;
            Ok(EXIT_OK)
        }
        Command::EfCheck {
            q,
            p,
            x_coords,
            map,
            definition,
            format,
            out,
        } => {
            if definition == Definition::Map && map.is_none() {
                return Ok(usage_error("--definition map requires --map <file>"));
            }
            let q_h = textio::parse_h(&read(&q)?)?;
            let p_poly = textio::parse_polyhedron(&read(&p)?)?.into_polyhedron();
            let map = match &map {
                Some(path) => Some(textio::parse_map(&read(path)?)?),
                None => None,
            };
            let mut verdicts: Vec<(&str, EfVerdict)> = Vec::new();
            if matches!(definition, Definition::Standard | Definition::All) {
                verdicts.push(("standard", ef::is_ef_standard(&q_h, &p_poly, &x_coords)?));
            }
            if matches!(definition, Definition::Exists | Definition::All) {
                verdicts.push(("exists", ef::is_ef_exists(&q_h, &p_poly, &x_coords)?));
            }
            if matches!(definition, Definition::Map | Definition::All) {
                if let Some(map) = &map {
                    verdicts.push((
                        "map",
                        ef::is_ef_linear_map(&Polyhedron::H(q_h.clone()), &p_poly, map)?,
                    ));
                }
            }
            let report = match format {
                Format::Text => {
                    let mut s = String::new();
                    for (name, v) in &verdicts {
                        let witness = match v.witness_point() {
                            Some(w) => format!(
                                "  witness ({})",
                                w.iter()
                                    .map(|x| x.to_string())
                                    .collect::<Vec<_>>()
                                    .join(", ")
                            ),
                            None => String::new(),
                        };
                        s.push_str(&format!("{name:<9} {}{witness}\n", v.holds));
                    }
                    s
                }
                Format::Json => {
                    let map_json: serde_json::Map<String, serde_json::Value> = verdicts
                        .iter()
                        .map(|(name, v)| {
                            (
                                name.to_string(),
                                json!({ "holds": v.holds, "witness": v.witness_point() }),
                            )
                        })
                        .collect();
                    let mut s = serde_json::to_string_pretty(&map_json).expect("serializes");
                    s.push('\n');
                    s
                }
            };
            emit(&out, &report)?;
            Ok(if verdicts.iter().all(|(_, v)| v.holds) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Tsp { n, action } => {
            if n < 2 {
                return Ok(usage_error("a tour needs at least 2 cities"));
            }
            match action {
                TspAction::Tours => {
                    let tours = tsp::enumerate_tours(n)?;
                    let mut s = String::new();
                    for t in &tours {
                        s.push_str(&t.display());
                        s.push('\n');
                    }
                    print!("{s}");
                    Ok(EXIT_OK)
                }
                TspAction::Ap { out } => {
                    let h = tsp::build_ap_hrep(n)?;
                    emit(&out, &textio::write_h(&h))?;
                    Ok(EXIT_OK)
                }
                TspAction::Bijection => {
                    let report = tsp::verify_bijection(n)?;
                    println!(
                        "n={} vertices={} expected={} permutations={} matches_tours={} round_trips={}",
                        report.n,
                        report.vertex_count,
                        report.expected_vertices,
                        report.vertices_are_permutations,
                        report.matches_tour_set,
                        report.round_trips_exact
                    );
                    Ok(if report.holds() {
                        EXIT_OK
                    } else {
                        EXIT_CHECK_FAILED
                    })
                }
            }
        }
    }
}
