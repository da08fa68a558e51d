//! Command-line driver: bounds, constructions, BFS reports, families,
//! tiles, searches, and bound-vs-family curves, with machine-readable output.
//!
//! Every run is deterministic given its flags; searches additionally take
//! explicit budgets. JSON goes to stdout; search progress to stderr.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cayley_moore::bounds::{ac_bound, ac_bound_default, emit_table1, AcBoundParams, BoundForm};
use cayley_moore::error::Error;
use cayley_moore::families::{
    circulant_power_order_estimate, dense_order_estimate, family_circulant_power, family_dense,
    family_r1z1, family_table2, FamilyReport, R1Z1Variant,
};
use cayley_moore::group::AbelianGroup;
use cayley_moore::mixedgraph::CayleyMixedGraph;
use cayley_moore::search::{
    exhaustive_search_with_progress, verify_moore_nonexistence, Budget, Progress, SearchSpec,
};
use cayley_moore::tiles::{tile_diameter, tile_from_matrix, tile_tessellates, LTile};
use cayley_moore::IntMatrix;

#[derive(Parser)]
#[command(
    name = "cayley-moore",
    version,
    about = "Moore-like bounds and optimal mixed Abelian Cayley graphs",
    after_help = "Generator syntax: semicolon-separated tuples with comma-separated \
coordinates; parentheses optional, negatives allowed (reduced into canonical \
residues). Example: --group 2,16 --gens \"(1,11);(0,5);(1,8)\""
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Eq5,
    Prop2,
    ThmI,
    ThmII,
    ThmIII,
}

impl From<FormArg> for BoundForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Eq5 => BoundForm::Eq5,
            FormArg::Prop2 => BoundForm::Prop2,
            FormArg::ThmI => BoundForm::ThmI,
            FormArg::ThmII => BoundForm::ThmII,
            FormArg::ThmIII => BoundForm::ThmIII,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Table2,
    R1z1,
    CirculantPower,
    Dense,
}

#[derive(Subcommand)]
enum Command {
    /// Moore bound for mixed Abelian Cayley graphs at (r1, r2, z, k).
    Bounds {
        r1: u32,
        r2: u32,
        z: u32,
        k: u32,
        /// Which equivalent expression to evaluate.
        #[arg(long, value_enum, default_value = "eq5")]
        form: FormArg,
    },
    /// Grid of bounds with r2 = 0 over (r1, z) at fixed diameter.
    Table1 {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 4)]
        r1_max: u32,
        #[arg(long, default_value_t = 4)]
        z_max: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Build a Cayley mixed graph and report its BFS profile.
    Construct {
        /// Group moduli, comma-separated (e.g. "18" or "2,16").
        #[arg(long)]
        group: String,
        /// Generators (see --help footer for syntax).
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Like construct, but print only the diameter.
    Diameter {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Emit one of the known graph families with predictions and BFS
    /// measurements.
    Families {
        #[arg(long, value_enum)]
        name: FamilyName,
        /// Diameter (table2, r1z1).
        #[arg(long)]
        k: Option<u32>,
        /// Base of the circulant power family (even, > 2).
        #[arg(long)]
        n: Option<u64>,
        /// Directed degree (circulant-power, dense).
        #[arg(long)]
        z: Option<u32>,
        /// Scale parameter of the dense family.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Area, tessellation check, and diameter of an L-shaped tile.
    Tiles {
        /// 2x2 matrix, rows separated by ';' (e.g. "4,-1;-3,3").
        #[arg(long, conflicts_with = "tile", allow_hyphen_values = true)]
        matrix: Option<String>,
        /// Tile dimensions "l,h,x,y".
        #[arg(long)]
        tile: Option<String>,
    },
    /// Exhaustive search for the largest order with diameter at most k.
    Search {
        #[arg(long)]
        r1: u32,
        #[arg(long, default_value_t = 0)]
        r2: u32,
        #[arg(long)]
        z: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_min: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long)]
        budget_candidates: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Check whether the Moore bound is attained at (r1=1, r2=0, z, k).
    Nonexistence {
        #[arg(long)]
        z: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Bound vs. family-size curves: columns k, bound, dense estimate,
    /// circulant power estimate.
    #[command(name = "fig7-data")]
    Fig7Data {
        #[arg(long)]
        z: u32,
        #[arg(long)]
        k_max: u32,
        #[arg(long, default_value_t = 1)]
        k_min: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Serialize)]
struct BoundOutput {
    r1: u32,
    r2: u32,
    z: u32,
    k: u32,
    form: String,
    /// Decimal string: bounds overflow fixed-width integers quickly.
    value: String,
}

#[derive(Serialize)]
struct TileOutput {
    l: u64,
    h: u64,
    x: u64,
    y: u64,
    area: u64,
    tessellates: bool,
    diameter: u32,
}

#[derive(Serialize)]
struct Fig7Row {
    k: u32,
    moore_bound: String,
    dense_estimate: f64,
    circulant_power_estimate: f64,
}

fn parse_group(s: &str) -> Result<AbelianGroup, String> {
    let factors: Vec<u64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad modulus {t:?}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    if factors.contains(&0) {
        return Err("group moduli must be positive".into());
    }
    Ok(AbelianGroup::new(&factors))
}

fn parse_generators(s: &str) -> Result<Vec<Vec<i64>>, String> {
    s.split(';')
        .map(|tuple| {
            let trimmed = tuple.trim().trim_start_matches('(').trim_end_matches(')');
            if trimmed.is_empty() {
                return Err(format!("empty generator in {s:?}"));
            }
            trimmed
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|e| format!("bad coordinate {c:?}: {e}"))
                })
                .collect()
        })
        .collect()
}

fn parse_matrix(s: &str) -> Result<IntMatrix, String> {
    let rows = parse_generators(s)?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != width) {
        return Err("matrix rows must share a width".into());
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn parse_tile(s: &str) -> Result<LTile, String> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad dimension {t:?}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let [l, h, x, y] = parts[..] else {
        return Err("tile takes four dimensions l,h,x,y".into());
    };
    LTile::new(l, h, x, y).map_err(|e| e.to_string())
}

fn build_graph(group: &str, gens: &str) -> Result<CayleyMixedGraph, String> {
    let group = parse_group(group)?;
    let raw = parse_generators(gens)?;
    CayleyMixedGraph::from_generators(&group, &raw).map_err(|e| e.to_string())
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

fn verify_all(
    instances: Vec<cayley_moore::families::FamilyInstance>,
) -> Result<Vec<FamilyReport>, Error> {
    instances.iter().map(|i| i.verify()).collect()
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Bounds { r1, r2, z, k, form } => {
            let value = ac_bound(AcBoundParams::new(r1, r2, z, k), form.into())
                .map_err(|e| e.to_string())?;
            emit_json(&BoundOutput {
                r1,
                r2,
                z,
                k,
                form: format!("{form:?}").to_lowercase(),
                value: value.to_string(),
            });
        }
        Command::Table1 {
            k,
            r1_max,
            z_max,
            format,
        } => {
            let table = emit_table1(k, r1_max, z_max).map_err(|e| e.to_string())?;
            match format {
                Format::Csv => print!("{}", table.to_csv()),
                Format::Json => {
                    #[derive(Serialize)]
                    struct TableOutput {
                        k: u32,
                        values: Vec<Vec<String>>,
                    }
                    emit_json(&TableOutput {
                        k,
                        values: table
                            .values
                            .iter()
                            .map(|row| row.iter().map(ToString::to_string).collect())
                            .collect(),
                    });
                }
            }
        }
        Command::Construct { group, gens } => {
            let graph = build_graph(&group, &gens)?;
            let report = graph.report().map_err(|e| e.to_string())?;
            emit_json(&report);
        }
        Command::Diameter { group, gens } => {
            let graph = build_graph(&group, &gens)?;
            let diameter = graph.diameter().map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct DiameterOutput {
                diameter: u32,
            }
            emit_json(&DiameterOutput { diameter });
        }
        Command::Families { name, k, n, z, m } => {
            let need = |opt: Option<u32>, flag: &str| {
                opt.ok_or_else(|| format!("--{flag} is required for this family"))
            };
            let reports = match name {
                FamilyName::Table2 => {
                    let k = need(k, "k")?;
                    verify_all(family_table2(k).map_err(|e| e.to_string())?)
                }
                FamilyName::R1z1 => {
                    let k = need(k, "k")?;
                    let both = vec![
                        family_r1z1(k, R1Z1Variant::Circulant).map_err(|e| e.to_string())?,
                        family_r1z1(k, R1Z1Variant::Matching).map_err(|e| e.to_string())?,
                    ];
                    verify_all(both)
                }
                FamilyName::CirculantPower => {
                    let n = n.ok_or("--n is required for this family")?;
                    let z = need(z, "z")?;
                    verify_all(vec![
                        family_circulant_power(n, z).map_err(|e| e.to_string())?
                    ])
                }
                FamilyName::Dense => {
                    let z = need(z, "z")?;
                    let m = m.ok_or("--m is required for this family")?;
                    verify_all(vec![family_dense(z, m).map_err(|e| e.to_string())?])
                }
            }
            .map_err(|e| e.to_string())?;
            emit_json(&reports);
        }
        Command::Tiles { matrix, tile } => {
            let t = match (matrix, tile) {
                (Some(m), None) => {
                    tile_from_matrix(&parse_matrix(&m)?).map_err(|e| e.to_string())?
                }
                (None, Some(t)) => parse_tile(&t)?,
                _ => return Err("provide exactly one of --matrix or --tile".into()),
            };
            let diameter = tile_diameter(&t).map_err(|e| e.to_string())?;
            emit_json(&TileOutput {
                l: t.l,
                h: t.h,
                x: t.x,
                y: t.y,
                area: t.area(),
                tessellates: tile_tessellates(&t),
                diameter,
            });
        }
        Command::Search {
            r1,
            r2,
            z,
            k,
            n_min,
            n_max,
            budget_seconds,
            budget_candidates,
            jobs,
            all_witnesses,
        } => {
            let mut spec = SearchSpec::new(r1, r2, z, k).map_err(|e| e.to_string())?;
            if let Some(n) = n_min {
                spec.n_min = n;
            }
            if let Some(n) = n_max {
                spec.n_max = n.min(spec.n_max);
            }
            spec.budget = Budget {
                max_candidates: budget_candidates,
                max_seconds: budget_seconds,
            };
            spec.jobs = jobs;
            spec.all_witnesses = all_witnesses;
            let mut progress = |p: Progress| match p {
                Progress::Order { n } => eprintln!("order {n}"),
                Progress::Group {
                    n,
                    group,
                    candidates,
                    hits,
                } => eprintln!(
                    "order {n}: group {:?} -> {candidates} candidates, {hits} hits",
                    group.factors()
                ),
            };
            let result =
                exhaustive_search_with_progress(&spec, &mut progress).map_err(|e| e.to_string())?;
            emit_json(&result);
            if !result.exhausted {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Nonexistence {
            z,
            k,
            budget_seconds,
            jobs,
        } => {
            let budget = Budget {
                max_candidates: None,
                max_seconds: budget_seconds,
            };
            let report =
                verify_moore_nonexistence(z, k, budget, jobs).map_err(|e| e.to_string())?;
            let budget_ran_out = matches!(
                report.evidence,
                cayley_moore::search::NonexistenceEvidence::BudgetExhausted { .. }
            );
            emit_json(&report);
            if budget_ran_out {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Fig7Data {
            z,
            k_max,
            k_min,
            format,
        } => {
            if z == 0 || k_min > k_max {
                return Err("need z >= 1 and k-min <= k-max".into());
            }
            let rows: Vec<Fig7Row> = (k_min..=k_max)
                .map(|k| Fig7Row {
                    k,
                    moore_bound: ac_bound_default(1, 0, z, k).to_string(),
                    dense_estimate: dense_order_estimate(z, k),
                    circulant_power_estimate: circulant_power_order_estimate(z, k),
                })
                .collect();
            match format {
                Format::Csv => {
                    println!("k,moore_bound,dense_estimate,circulant_power_estimate");
                    for r in &rows {
                        println!(
                            "{},{},{},{}",
                            r.k, r.moore_bound, r.dense_estimate, r.circulant_power_estimate
                        );
                    }
                }
                Format::Json => emit_json(&rows),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
