//! Batch front end for `prodcurves-core`: file formats, reports, mesh export
//! and the command tree behind the `prodcurves` binary.

pub mod error;
pub mod format;
pub mod mesh;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use prodcurves_core::collapse::{
    certify_with_budget, maximal_collapse, search_collapsible, SearchOutcome, Strategy,
    DEFAULT_BUDGET,
};
use prodcurves_core::coneembed::{cone_embed_mods, cone_embed_poset};
use prodcurves_core::fibers::{factorize, fiber, project, IndexSet};
use prodcurves_core::gallery::{self, NAMES};
use prodcurves_core::treeembed::{embed_in_trees, verify_cellwise_map};
use prodcurves_core::{
    classify, homology_summary, surface_summary, ProductCell, ProductSubcomplex,
};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format::{canonical, read_complex, read_json, write_atomic, Complex};
use crate::report::AnalysisReport;

#[derive(Debug, Parser)]
#[command(
    name = "prodcurves",
    version,
    about = "Generalized manifolds in products of graphs"
)]
pub struct Cli {
    /// Seed for seeded strategies and random generators.
    #[arg(long, global = true, env = "PRODCURVES_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a complex and check its schema and regularity.
    Validate(Io),
    /// Integral homology, plus the surface summary for closed surfaces.
    Betti(Io),
    /// Top cover, ramified, pseudo and simple flags.
    Classify {
        #[command(flatten)]
        io: Io,
        /// Claimed dimension; defaults to the dimension of the complex.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Projection onto the factors in J and the fibers over the rest.
    Fibers {
        #[command(flatten)]
        io: Io,
        /// One-based factor indices, comma separated.
        #[arg(long = "J", value_delimiter = ',', required = true)]
        j: Vec<usize>,
    },
    /// Circle directions and the torus factorization.
    Factorize(Io),
    /// Maximal collapse, or an exhaustive search for a collapse to a point.
    Collapse {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = StrategyArg::Lowest)]
        strategy: StrategyArg,
        #[arg(long)]
        search: bool,
        /// Node cap for searches.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Certificate against embedding in a product of two curves.
    CertifyNonembed {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Embed a collapsible 2-complex in a product of two trees.
    EmbedTrees {
        #[command(flatten)]
        io: Io,
        /// Collapse steps to a point; searched for when absent.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Embed the cone on a complex in a product of stars.
    ConeEmbed(Io),
    /// Built-in example complexes.
    Gallery {
        #[command(subcommand)]
        action: GalleryCommand,
    },
    /// Write a 2-complex as an OFF mesh.
    ExportMesh {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, clap::Args)]
pub struct Io {
    pub input: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GalleryCommand {
    List,
    Build {
        name: String,
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, i64)>,
        #[arg(long)]
        out: PathBuf,
    },
    /// A random complex grown from a point, with its collapse witness.
    Random {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Lowest,
    Highest,
    Seeded,
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v = v
        .trim()
        .parse()
        .map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

/// What a command produced: text for standard output, warnings for standard
/// error, and the exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: u8,
}

impl Outcome {
    fn failing_if(mut self, failed: bool) -> Self {
        if failed {
            self.code = 1;
        }
        self
    }
}

fn emit(v: &Value, out: Option<&Path>) -> CliResult<Outcome> {
    let text = canonical(v);
    match out {
        Some(p) => {
            write_atomic(p, &text)?;
            Ok(Outcome::default())
        }
        None => Ok(Outcome {
            stdout: text,
            ..Outcome::default()
        }),
    }
}

fn product_only(c: &Complex) -> CliResult<&ProductSubcomplex> {
    match c {
        Complex::Product(m) => Ok(m),
        _ => Err(CliError::Usage(
            "this command needs a product complex".into(),
        )),
    }
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    let seed = cli.seed;
    match cli.command {
        Command::Validate(io) => {
            let c = read_complex(&io.input)?;
            let x = c.to_face_poset();
            let v = json!({
                "valid": true,
                "format": c.format(),
                "digest": c.digest(),
                "cell_counts": x.counts(),
                "dimension": x.dimension(),
                "connected": x.is_connected(),
            });
            emit(&v, io.out.as_deref())
        }
        Command::Betti(io) => {
            let c = read_complex(&io.input)?;
            let x = c.to_face_poset();
            let mut r = AnalysisReport::new(&c, seed)
                .with("homology", report::homology(&homology_summary(&x)));
            if let Ok(s) = surface_summary(&x) {
                r = r.with("surface", report::surface(&s));
            }
            emit(&r.to_json(), io.out.as_deref())
        }
        Command::Classify { io, n } => {
            let c = read_complex(&io.input)?;
            let x = c.to_face_poset();
            let n = n.or(x.dimension()).unwrap_or(0);
            let f = classify(&x, n)?;
            emit(
                &AnalysisReport::new(&c, seed)
                    .with("classification", report::flags(&f))
                    .to_json(),
                io.out.as_deref(),
            )
        }
        Command::Fibers { io, j } => {
            let c = read_complex(&io.input)?;
            let m = product_only(&c)?;
            let js = IndexSet::from_one_based(m.factor_count(), &j)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let jc = js.complement();
            let (base, taus): (ProductSubcomplex, Vec<ProductCell>) = if jc.is_empty() {
                (
                    ProductSubcomplex::empty(Vec::new()),
                    vec![ProductCell::new(Vec::new())],
                )
            } else {
                let b = project(m, &jc)?;
                let cells = b.cells().iter().cloned().collect();
                (b, cells)
            };
            let fibers = taus
                .iter()
                .map(|t| Ok(report::fiber(&base, &fiber(m, t, &js)?)))
                .collect::<CliResult<Vec<_>>>()?;
            let v = json!({
                "J": js.one_based(),
                "projection": format::product_json(&project(m, &js)?),
                "fibers": fibers,
            });
            emit(
                &AnalysisReport::new(&c, seed)
                    .with("fiber_data", v)
                    .to_json(),
                io.out.as_deref(),
            )
        }
        Command::Factorize(io) => {
            let c = read_complex(&io.input)?;
            let m = product_only(&c)?;
            let x = m.to_face_poset();
            let f = classify(&x, m.factor_count())?;
            let r = factorize(m)?;
            let rep = AnalysisReport::new(&c, seed)
                .with("classification", report::flags(&f))
                .with("homology", report::homology(&homology_summary(&x)))
                .with("fibers", report::factorization(&r));
            emit(&rep.to_json(), io.out.as_deref())
        }
        Command::Collapse {
            io,
            strategy,
            search,
            budget,
        } => {
            let c = read_complex(&io.input)?;
            let x = c.to_face_poset();
            let v = if search {
                match search_collapsible(&x, budget) {
                    SearchOutcome::Found(s) => {
                        json!({ "search": "found", "budget": budget, "sequence": report::sequence(&s, &x) })
                    }
                    SearchOutcome::Exhausted => json!({ "search": "exhausted", "budget": budget }),
                    SearchOutcome::Unknown => json!({ "search": "unknown", "budget": budget }),
                }
            } else {
                let st = match strategy {
                    StrategyArg::Lowest => Strategy::LowestId,
                    StrategyArg::Highest => Strategy::HighestId,
                    StrategyArg::Seeded => Strategy::Seeded(seed),
                };
                let s = maximal_collapse(&x, st);
                json!({ "strategy": format!("{strategy:?}").to_lowercase(), "sequence": report::sequence(&s, &x) })
            };
            emit(
                &AnalysisReport::new(&c, seed).with("collapse", v).to_json(),
                io.out.as_deref(),
            )
        }
        Command::CertifyNonembed { io, budget } => {
            let c = read_complex(&io.input)?;
            let x = c.to_face_poset();
            let v = certify_with_budget(&x, budget)?;
            let rep = AnalysisReport::new(&c, seed)
                .with("homology", report::homology(&homology_summary(&x)))
                .with("verdict", report::verdict(&v, &x));
            emit(&rep.to_json(), io.out.as_deref())
        }
        Command::EmbedTrees {
            io,
            witness,
            budget,
        } => {
            let c = read_complex(&io.input)?;
            let x = c.to_face_poset();
            let steps = match witness {
                Some(p) => format::parse_witness(&read_json(&p)?, &x)?,
                None => match search_collapsible(&x, budget) {
                    SearchOutcome::Found(s) => s.steps,
                    SearchOutcome::Exhausted => {
                        return Err(CliError::Verification(
                            "the complex does not collapse to a point".into(),
                        ))
                    }
                    SearchOutcome::Unknown => {
                        return Err(CliError::Verification(format!(
                            "no collapse to a point found within {budget} nodes"
                        )))
                    }
                },
            };
            let e = embed_in_trees(&x, &steps)?;
            let check = verify_cellwise_map(&e.map);
            let mut v = report::embedding(&e.map, &check);
            v["trees"] = json!([e.t1.profile().is_tree, e.t2.profile().is_tree]);
            let ok = check.passed() && e.t1.profile().is_tree && e.t2.profile().is_tree;
            Ok(emit(&v, io.out.as_deref())?.failing_if(!ok))
        }
        Command::ConeEmbed(io) => {
            let c = read_complex(&io.input)?;
            let e = match &c {
                Complex::Simplicial(k) => cone_embed_mods(k)?,
                other => cone_embed_poset(&other.to_face_poset())?,
            };
            let check = verify_cellwise_map(&e.map);
            let mut v = report::embedding(&e.map, &check);
            v["m"] = json!(e.m);
            v["apex"] = json!(e.apex_label());
            Ok(emit(&v, io.out.as_deref())?.failing_if(!check.passed()))
        }
        Command::Gallery { action } => gallery_command(action, seed),
        Command::ExportMesh { input, out } => {
            let c = read_complex(&input)?;
            let m = mesh::build(&c)?;
            write_atomic(&out, &mesh::to_off(&m))?;
            let mut v = json!({
                "vertices": m.vertices.len(),
                "edges": m.edges,
                "faces": m.faces.len(),
            });
            if let Some(w) = &m.warning {
                v["warning"] = json!(w);
            }
            let mut o = emit(&v, None)?;
            o.warnings.extend(m.warning);
            Ok(o)
        }
    }
}

fn gallery_command(action: GalleryCommand, seed: u64) -> CliResult<Outcome> {
    match action {
        GalleryCommand::List => {
            let items = NAMES
                .iter()
                .map(|n| {
                    let item = gallery::make(n, &[])?;
                    let params: serde_json::Map<String, Value> = item
                        .params
                        .iter()
                        .map(|(k, v)| (k.clone(), json!(v)))
                        .collect();
                    Ok(json!({ "name": n, "kind": item.payload.kind(), "params": params }))
                })
                .collect::<CliResult<Vec<_>>>()?;
            emit(&json!({ "items": items }), None)
        }
        GalleryCommand::Build { name, params, out } => {
            let refs: Vec<(&str, i64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            let item = gallery::make(&name, &refs).map_err(|e| CliError::Usage(e.to_string()))?;
            let expected: Vec<Value> = item
                .expected
                .iter()
                .map(|e| json!({ "check": e.check, "expected": e.expected, "observed": e.observed, "holds": e.holds() }))
                .collect();
            let all = item.all_hold();
            let summary = json!({
                "name": item.name,
                "params": item.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "kind": item.payload.kind(),
                "expected": expected,
                "all_hold": all,
            });
            let c: Complex = item.payload.into();
            write_atomic(&out, &canonical(&c.to_json()))?;
            let mut o = emit(&summary, None)?.failing_if(!all);
            if !all {
                o.warnings
                    .push(format!("{name}: some expected outcomes do not hold"));
            }
            Ok(o)
        }
        GalleryCommand::Random {
            size,
            out,
            witness_out,
        } => {
            let (x, steps) = gallery::random_collapsible(seed, size);
            let c = Complex::Cells(x);
            write_atomic(&out, &canonical(&c.to_json()))?;
            if let Complex::Cells(x) = &c {
                if let Some(w) = witness_out {
                    write_atomic(&w, &canonical(&format::witness_json(x, &steps)))?;
                }
            }
            emit(
                &json!({ "seed": seed, "size": size, "cell_counts": c.to_face_poset().counts() }),
                None,
            )
        }
    }
}
