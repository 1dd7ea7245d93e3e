//! Command-line surface of `proflat`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use proflat_core::classify::{is_cyclic, modular_structure};
use proflat_core::structure::{is_nilpotent, is_perfect};
use proflat_core::{enumerate_subgroups, LevelPredicate, Limits, SubgroupLatticeView};
use serde_json::json;

use crate::catalogue::{Catalogue, Source};
use crate::error::{HarnessError, Result};
use crate::suites::{verify, VerifyOptions};
use crate::towers;

#[derive(Debug, Parser)]
#[command(
    name = "proflat",
    version,
    about = "Subgroup lattices of finite groups and truncated profinite towers"
)]
pub struct Cli {
    /// Catalogue file with extra groups; may be repeated.
    #[arg(long, global = true)]
    pub catalogue: Vec<PathBuf>,
    /// Largest group order to materialize. Defaults to PROFLAT_MAX_ORDER,
    /// or 2000.
    #[arg(long, global = true)]
    pub order_bound: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the subgroup lattice of a group.
    Lattice {
        group: String,
        #[arg(long, value_enum, default_value_t = Emit::Hasse)]
        emit: Emit,
    },
    /// Evaluate one predicate on a group and print a witness.
    Check { predicate: Predicate, group: String },
    /// Evaluate a level predicate along a tower.
    Tower {
        /// `builtin:NAME` or a tower file.
        source: String,
        /// width, distributive, modular or decomposable.
        #[arg(long)]
        trajectory: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        /// Skip catalogue groups above this order.
        #[arg(long)]
        max_order: Option<usize>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Inspect the group catalogue.
    Catalogue {
        #[command(subcommand)]
        action: CatalogueAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Hasse,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    Distributive,
    Modular,
    Decomposable,
    Width,
    Cyclic,
    Perfect,
    Nilpotent,
    /// Coprime blocks classified as P*-groups or modular p-groups.
    ModularStructure,
    /// Nodes that are modular elements of the lattice.
    ModularElements,
}

#[derive(Debug, Subcommand)]
pub enum CatalogueAction {
    List,
    /// Validate a catalogue file against the current catalogue.
    Add {
        file: PathBuf,
    },
}

/// Runs a parsed command, writing to `out`. Returns the exit status: 0,
/// or 1 when a verification suite has failures.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let mut limits = Limits::from_env()?;
    if let Some(b) = cli.order_bound {
        limits.max_order = b;
    }
    let mut catalogue = Catalogue::builtin(&limits)?;
    for path in &cli.catalogue {
        catalogue.add_file(path, &limits)?;
    }
    let io = |e: std::io::Error| HarnessError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    };

    match cli.command {
        Command::Lattice { group, emit } => {
            let g = catalogue.resolve(&group, &limits)?;
            let view = enumerate_subgroups(&g, &limits)?;
            match emit {
                Emit::Hasse => {
                    write!(out, "{}", view.to_exchange_with_annotations()).map_err(io)?
                }
                Emit::Json => writeln!(out, "{}", lattice_json(&view)).map_err(io)?,
            }
        }
        Command::Check { predicate, group } => {
            let g = catalogue.resolve(&group, &limits)?;
            let text = check(predicate, &g, &limits)?;
            write!(out, "{text}").map_err(io)?;
        }
        Command::Tower {
            source,
            trajectory,
            depth,
        } => {
            let predicate: LevelPredicate = trajectory.parse()?;
            let tower = towers::load(&source, depth, &limits)?;
            let report = tower.level_lattice_trajectory(predicate, &limits);
            writeln!(out, "{report}").map_err(io)?;
        }
        Command::Verify {
            suite,
            max_order,
            jobs,
            report,
        } => {
            let opts = VerifyOptions {
                limits,
                max_order,
                jobs,
            };
            let rep = verify(&suite, &catalogue, &opts)?;
            match report {
                Some(path) => {
                    std::fs::write(&path, rep.to_json())
                        .map_err(|source| HarnessError::Io { path, source })?;
                    for f in rep.failures() {
                        writeln!(
                            out,
                            "FAIL {} {}: expected {}, observed {}",
                            f.check_id, f.instance, f.expected, f.observed
                        )
                        .map_err(io)?;
                    }
                    let s = rep.summary;
                    writeln!(
                        out,
                        "{}: {} checks, {} passed, {} failed",
                        rep.suite, s.total, s.passed, s.failed
                    )
                    .map_err(io)?;
                }
                None => write!(out, "{}", rep.to_json()).map_err(io)?,
            }
            return Ok(if rep.all_passed() { 0 } else { 1 });
        }
        Command::Catalogue { action } => match action {
            CatalogueAction::List => {
                for e in catalogue.entries() {
                    let source = match e.source {
                        Source::Builtin => "builtin",
                        Source::File => "file",
                    };
                    writeln!(out, "{:<10} order {:>4}  {source}", e.name, e.group.order())
                        .map_err(io)?;
                }
            }
            CatalogueAction::Add { file } => {
                let names = catalogue.add_file(&file, &limits)?;
                for n in &names {
                    let g = &catalogue.get(n).expect("just added").group;
                    writeln!(out, "{n:<10} order {:>4}  ok", g.order()).map_err(io)?;
                }
                writeln!(
                    out,
                    "{} groups validated; pass --catalogue {} to use them",
                    names.len(),
                    file.display()
                )
                .map_err(io)?;
            }
        },
    }
    Ok(0)
}

fn lattice_json(view: &SubgroupLatticeView) -> serde_json::Value {
    let g = view.group();
    let nodes: Vec<_> = view
        .subgroups()
        .iter()
        .zip(view.annotations())
        .map(|(h, info)| {
            let gens: Vec<String> = h
                .generators()
                .iter()
                .map(|&x| g.element(x).to_string())
                .collect();
            json!({
                "node": info.node,
                "order": info.order,
                "normal": info.normal,
                "cyclic": info.cyclic,
                "abelian": info.abelian,
                "gens": gens,
            })
        })
        .collect();
    json!({
        "group": g.name(),
        "order": g.order(),
        "nodes": nodes,
        "covers": view.lattice().cover_pairs(),
    })
}

fn node_line(view: &SubgroupLatticeView, node: usize) -> String {
    let h = view.subgroup(node);
    let g = view.group();
    let gens: Vec<String> = h
        .generators()
        .iter()
        .map(|&x| g.element(x).to_string())
        .collect();
    let gens = if gens.is_empty() {
        "()".to_string()
    } else {
        gens.join(" ")
    };
    format!("  node {node:>3}  order {:>4}  gens {gens}\n", h.order())
}

fn check(
    predicate: Predicate,
    g: &std::sync::Arc<proflat_core::FiniteGroup>,
    limits: &Limits,
) -> Result<String> {
    let mut s = String::new();
    match predicate {
        Predicate::Cyclic => s.push_str(&format!("{}\n", is_cyclic(g))),
        Predicate::Perfect => s.push_str(&format!("{}\n", is_perfect(g))),
        Predicate::Nilpotent => s.push_str(&format!("{}\n", is_nilpotent(g))),
        Predicate::ModularStructure => {
            let st = modular_structure(g, limits)?;
            s.push_str(&format!("{}\n", st.holds()));
            for b in &st.blocks {
                let kind = b.kind.as_ref().map_or("none", |k| k.label());
                s.push_str(&format!("  block order {:>4}  {kind}\n", b.factor.order()));
            }
        }
        _ => {
            let view = enumerate_subgroups(g, limits)?;
            let l = view.lattice();
            match predicate {
                Predicate::Distributive => match l.distributivity_violation() {
                    None => s.push_str("true\n"),
                    Some(t) => {
                        s.push_str("false\nx ∨ (y ∧ z) ≠ (x ∨ y) ∧ (x ∨ z) at\n");
                        for n in [t.x, t.y, t.z] {
                            s.push_str(&node_line(&view, n));
                        }
                    }
                },
                Predicate::Modular => match l.find_pentagon() {
                    None => s.push_str("true\n"),
                    Some(p) => {
                        s.push_str("false\npentagon\n");
                        for n in p {
                            s.push_str(&node_line(&view, n));
                        }
                    }
                },
                Predicate::Decomposable => match l.direct_decompose() {
                    None => s.push_str("false\n"),
                    Some(d) => {
                        s.push_str("true\nfactors\n");
                        for &n in &d.factors {
                            s.push_str(&node_line(&view, n));
                        }
                    }
                },
                Predicate::Width => {
                    let (w, a) = l.width();
                    s.push_str(&format!("{w}\nantichain\n"));
                    for &n in &a.nodes {
                        s.push_str(&node_line(&view, n));
                    }
                }
                Predicate::ModularElements => {
                    let nodes: Vec<usize> = l
                        .modular_elements()
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m)
                        .map(|(i, _)| i)
                        .collect();
                    s.push_str(&format!("{}\n", nodes.len()));
                    for n in nodes {
                        s.push_str(&node_line(&view, n));
                    }
                }
                _ => unreachable!("handled above"),
            }
        }
    }
    Ok(s)
}
