//! `k3m` — command-line front end for the k3m library.
//!
//! Every subcommand prints one document on stdout: a JSON envelope
//! `{command, params, provenance, result}` with sorted keys (the default),
//! or the result flattened into a table (`--format csv|text`).
//!
//! Exit codes: 0 on success, 1 on a domain error (the message starts with
//! the error's name), 2 on a usage error.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use k3m::arith::render_rational;
use k3m::report::{self, Table, TableId};
use k3m::rrinv::{RiemannRochInput, Series};
use k3m::{autgroups, cones, lattice, pell, periods, rrinv};

#[derive(Parser, Debug)]
#[command(
    name = "k3m",
    version,
    about = "Exact arithmetic for polarized hyperkähler manifolds of K3^[m]-type"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Half-width of the coordinate box searched by enumeration oracles.
    #[arg(long, global = true)]
    bound: Option<i64>,
    /// Number of terms listed from infinite streams (solutions, walls).
    #[arg(long, global = true)]
    prefix: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SeriesArg {
    HilbK3,
    Kummer,
}

impl From<SeriesArg> for Series {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::HilbK3 => Series::HilbK3,
            SeriesArg::Kummer => Series::Kummer,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pell-type equations.
    #[command(subcommand)]
    Pell(PellCmd),
    /// Nef and movable cones.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Euler characteristic of a line bundle.
    Chi {
        #[arg(long, value_enum, default_value_t = SeriesArg::HilbK3)]
        series: SeriesArg,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Beauville–Fujiki square of the line bundle.
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Fujiki constant.
    Fujiki {
        #[arg(long, value_enum, default_value_t = SeriesArg::HilbK3)]
        series: SeriesArg,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Lattices of polarized manifolds.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Automorphism groups.
    #[command(subcommand)]
    Aut(AutCmd),
    /// Heegner divisors in the period domain.
    #[command(subcommand)]
    Heegner(HeegnerCmd),
    /// Heegner divisors missed by the period map.
    PeriodImage {
        #[command(flatten)]
        p: Polarization,
        /// Also list the individual components.
        #[arg(long)]
        keys: bool,
    },
    /// Square-parameters `e` of Noether–Lefschetz families of Hilbert squares.
    NlFamily {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: i64,
        #[arg(long, allow_hyphen_values = true)]
        a_max: i64,
    },
    /// Hilbert squares carrying a given polarization type.
    HilbSquare {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: i64,
        /// List every admissible point instead of the first one.
        #[arg(long)]
        all: bool,
    },
    /// Rebuilds one of the classical tables.
    Reproduce {
        /// s2-cones, s2-walls, aut-n3, period-image-m4, period-image-m8 or period-image-m12.
        table: String,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Polarization {
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, allow_hyphen_values = true)]
    gamma: i64,
}

#[derive(Subcommand, Debug)]
enum PellCmd {
    /// Fundamental solution of `a² − d·b² = 1`.
    Fundamental {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Minimal positive solution of `e1·a² − d·b² = t`.
    Min {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        e1: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// Solution classes of `a² − d·b² = t`.
    Classes {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// First `--prefix` positive solutions of `e1·a² − d·b² = t`.
    Stream {
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        e1: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
}

#[derive(Subcommand, Debug)]
enum ConeCmd {
    /// Nef and movable cones of `S^[2]` for one `e` or a range.
    S2 {
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["e_from", "e_to"])]
        e: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "e_to")]
        e_from: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "e_from")]
        e_to: Option<i64>,
    },
    /// Movable cone of `S^[m]` and, when known, its nef cone.
    Sm {
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Cones of a Picard-rank-2 fourfold with `diag(2n, −2e')`.
    Fourfold {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        e2: i64,
    },
    /// Chamber decomposition of `Mov(S^[m])`, `m ∈ {2, 3, 4}`.
    Walls {
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Discriminant group of `h⊥`.
    Disc {
        #[command(flatten)]
        p: Polarization,
    },
    /// Orbits of polarizations: moduli components and monodromy index.
    Orbit {
        #[command(flatten)]
        p: Polarization,
    },
    /// Strange-dual parameters.
    Dual {
        #[command(flatten)]
        p: Polarization,
    },
}

#[derive(Subcommand, Debug)]
enum AutCmd {
    /// `Aut` and `Bir` of `S^[2]` for a very general K3 of degree `2e`.
    S2 {
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
    },
    /// `Bir(S^[m])` for a very general K3 of degree `2e`.
    Sm {
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// `Aut` and `Bir` of a Picard-rank-2 fourfold.
    Fourfold {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        e2: i64,
    },
    /// `Aut` and `Bir` of fourfolds for a range of `e'`.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        e2_from: i64,
        #[arg(long, allow_hyphen_values = true)]
        e2_to: i64,
    },
}

#[derive(Subcommand, Debug)]
enum HeegnerCmd {
    /// Whether the Heegner divisor of discriminant `2e` is nonempty (`m = 2`).
    Nonempty {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
    },
    /// Components of the Heegner divisor of discriminant `d`.
    Components {
        #[command(flatten)]
        p: Polarization,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
}

/// A command's outcome before formatting.
struct Output {
    command: String,
    params: BTreeMap<String, Value>,
    provenance: Vec<String>,
    result: Value,
    /// Explicit column layout for csv/text; derived from `result` otherwise.
    table: Option<Table>,
}

impl Output {
    fn new(command: &str, params: &[(&str, Value)], provenance: &[&str], result: Value) -> Self {
        Self {
            command: command.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            provenance: provenance.iter().map(|s| s.to_string()).collect(),
            result,
            table: None,
        }
    }

    fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize infallibly")
}

/// Integers as JSON numbers when they fit in 64 bits, strings otherwise.
fn big(x: &impl Display) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn table_json(t: &Table) -> Value {
    Value::Array(
        t.rows
            .iter()
            .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
            .collect(),
    )
}

type CmdResult = Result<Output, String>;

fn err(e: impl Display) -> String {
    e.to_string()
}

fn run_pell(cmd: &PellCmd, prefix: usize) -> CmdResult {
    Ok(match *cmd {
        PellCmd::Fundamental { d } => {
            let s = pell::fundamental_solution(d).map_err(err)?;
            Output::new(
                "pell fundamental",
                &[("d", json!(d))],
                &["pell::fundamental_solution"],
                to_json(&s),
            )
        }
        PellCmd::Min { e1, d, t } => {
            if d <= 0 || e1 <= 0 {
                return Err(err(pell::PellEquation::new(e1, d, t).err().map_or_else(
                    || "InvalidEquation: coefficients must be positive".to_string(),
                    |e| e.to_string(),
                )));
            }
            let s = pell::generalized_min(e1, d, t);
            Output::new(
                "pell min",
                &[("e1", json!(e1)), ("d", json!(d)), ("t", json!(t))],
                &["pell::generalized_min"],
                s.map_or(Value::Null, |s| to_json(&s)),
            )
        }
        PellCmd::Classes { d, t } => {
            let classes = pell::solution_classes(d, t).map_err(err)?;
            Output::new(
                "pell classes",
                &[("d", json!(d)), ("t", json!(t))],
                &["pell::solution_classes"],
                to_json(&classes),
            )
        }
        PellCmd::Stream { e1, d, t } => {
            pell::PellEquation::new(e1, d, t).map_err(err)?;
            let sols: Vec<_> = pell::generalized_positive_solutions(e1, d, t).take(prefix).collect();
            Output::new(
                "pell stream",
                &[
                    ("e1", json!(e1)),
                    ("d", json!(d)),
                    ("t", json!(t)),
                    ("prefix", json!(prefix)),
                ],
                &["pell::generalized_positive_solutions"],
                to_json(&sols),
            )
        }
    })
}

fn run_cone(cmd: &ConeCmd, prefix: usize) -> CmdResult {
    Ok(match *cmd {
        ConeCmd::S2 { e, e_from, e_to } => {
            let (lo, hi) = match (e, e_from, e_to) {
                (Some(e), _, _) => (e, e),
                (None, Some(a), Some(b)) => (a, b),
                _ => return Err("InvalidParameter: give --e or both --e-from and --e-to".into()),
            };
            let t = report::s2_cone_table(lo..=hi).map_err(err)?;
            Output::new(
                "cone s2",
                &[("e_from", json!(lo)), ("e_to", json!(hi))],
                &["cones::mov_slope_s2", "cones::nef_slope_s2"],
                table_json(&t),
            )
            .with_table(t)
        }
        ConeCmd::Sm { e, m } => {
            let mov = cones::mov_ray_sm(e, m).map_err(err)?;
            let nef = cones::nef_ray_sm_special(e, m).map_err(err)?;
            let nef = nef.map_or(Value::Null, |(class, equals_mov)| {
                json!({"class": to_json(&class), "slope": render_rational(&class.slope()), "equals_mov": equals_mov})
            });
            Output::new(
                "cone sm",
                &[("e", json!(e)), ("m", json!(m))],
                &["cones::mov_ray_sm", "cones::nef_ray_sm_special"],
                json!({"mov": to_json(&mov), "mov_slope": mov.slope().to_string(), "nef": nef}),
            )
        }
        ConeCmd::Fourfold { n, e2 } => {
            let case = cones::fourfold_case(n, e2).map_err(err)?;
            let rep = cones::fourfold_cones(n, e2, prefix).map_err(err)?;
            let mut result = to_json(&rep);
            result["case"] = to_json(&case);
            Output::new(
                "cone fourfold",
                &[("n", json!(n)), ("e2", json!(e2)), ("prefix", json!(prefix))],
                &["cones::fourfold_cones"],
                result,
            )
        }
        ConeCmd::Walls { e, m } => {
            let rep = cones::walls_sm(e, m).map_err(err)?;
            Output::new(
                "cone walls",
                &[("e", json!(e)), ("m", json!(m))],
                &["cones::walls_sm"],
                to_json(&rep),
            )
        }
    })
}

fn run_lattice(cmd: &LatticeCmd) -> CmdResult {
    let (name, Polarization { m, n, gamma }) = match cmd {
        LatticeCmd::Disc { p } => ("lattice disc", *p),
        LatticeCmd::Orbit { p } => ("lattice orbit", *p),
        LatticeCmd::Dual { p } => ("lattice dual", *p),
    };
    let params = [("m", json!(m)), ("n", json!(n)), ("gamma", json!(gamma))];
    Ok(match cmd {
        LatticeCmd::Disc { .. } => {
            let dg = lattice::disc_group(m, n, gamma).map_err(err)?;
            let mut result = to_json(&dg);
            result["order"] = json!(dg.order());
            Output::new(name, &params, &["lattice::disc_group"], result)
        }
        LatticeCmd::Orbit { .. } => {
            let count = lattice::moduli_component_count(m, n, gamma).map_err(err)?;
            let determined = lattice::polarization_determined(m, n, gamma).map_err(err)?;
            Output::new(
                name,
                &params,
                &["lattice::moduli_component_count", "lattice::polarization_determined"],
                json!({
                    "components": to_json(&count),
                    "monodromy_index": lattice::monodromy_index(m),
                    "determined_by_square_and_divisibility": determined,
                }),
            )
        }
        LatticeCmd::Dual { .. } => {
            let (m2, n2, g2) = lattice::strange_dual_params(m, n, gamma).map_err(err)?;
            Output::new(
                name,
                &params,
                &["lattice::strange_dual_params"],
                json!({"m": m2, "n": n2, "gamma": g2}),
            )
        }
    })
}

fn run_aut(cmd: &AutCmd) -> CmdResult {
    Ok(match *cmd {
        AutCmd::S2 { e } => {
            let g = autgroups::bir_s2(e).map_err(err)?;
            Output::new("aut s2", &[("e", json!(e))], &["autgroups::bir_s2"], to_json(&g))
        }
        AutCmd::Sm { e, m } => {
            let bir = autgroups::bir_sm(e, m).map_err(err)?;
            let conditions = autgroups::bir_sm_conditions(e, m).map_or(Value::Null, |c| to_json(&c));
            Output::new(
                "aut sm",
                &[("e", json!(e)), ("m", json!(m))],
                &["autgroups::bir_sm", "autgroups::bir_sm_conditions"],
                json!({"bir": to_json(&bir), "conditions": conditions}),
            )
        }
        AutCmd::Fourfold { n, e2 } => {
            let g = autgroups::fourfold_groups(n, e2).map_err(err)?;
            Output::new(
                "aut fourfold",
                &[("n", json!(n)), ("e2", json!(e2))],
                &["autgroups::fourfold_groups"],
                to_json(&g),
            )
        }
        AutCmd::Table { n, e2_from, e2_to } => {
            let t = report::fourfold_group_table(n, e2_from..=e2_to).map_err(err)?;
            Output::new(
                "aut table",
                &[("n", json!(n)), ("e2_from", json!(e2_from)), ("e2_to", json!(e2_to))],
                &["autgroups::fourfold_groups"],
                table_json(&t),
            )
            .with_table(t)
        }
    })
}

fn run_heegner(cmd: &HeegnerCmd) -> CmdResult {
    Ok(match *cmd {
        HeegnerCmd::Nonempty { n, gamma, e } => {
            let ok = periods::heegner_nonempty_m2(n, gamma, e).map_err(err)?;
            Output::new(
                "heegner nonempty",
                &[("n", json!(n)), ("gamma", json!(gamma)), ("e", json!(e))],
                &["periods::heegner_nonempty_m2"],
                json!({"nonempty": ok}),
            )
        }
        HeegnerCmd::Components {
            p: Polarization { m, n, gamma },
            d,
        } => {
            let keys = periods::heegner_components(m, n, gamma, d).map_err(err)?;
            let t = report::heegner_rows(&keys);
            Output::new(
                "heegner components",
                &[
                    ("m", json!(m)),
                    ("n", json!(n)),
                    ("gamma", json!(gamma)),
                    ("d", json!(d)),
                ],
                &["periods::heegner_components"],
                to_json(&keys),
            )
            .with_table(t)
        }
    })
}

fn run_period_image(p: Polarization, keys: bool, bound: Option<i64>) -> CmdResult {
    let Polarization { m, n, gamma } = p;
    let excluded = periods::excluded_heegner(m, n, gamma).map_err(err)?;
    let mut ds: Vec<i64> = excluded.iter().map(|k| k.d).collect();
    ds.dedup();
    let mut result = json!({"excluded_d": ds});
    let mut params = vec![("m", json!(m)), ("n", json!(n)), ("gamma", json!(gamma))];
    let mut provenance = vec!["periods::excluded_heegner"];
    if keys {
        result["components"] = to_json(&excluded);
    }
    if let Some(b) = bound {
        let oracle = periods::oracle_excluded(m, n, gamma, b).map_err(err)?;
        let lib: std::collections::BTreeSet<_> = excluded.iter().cloned().collect();
        result["oracle_agrees"] = json!(oracle == lib);
        params.push(("bound", json!(b)));
        provenance.push("periods::oracle_excluded");
    }
    let out = Output::new("period-image", &params, &provenance, result);
    Ok(if keys {
        out.with_table(report::heegner_rows(&excluded))
    } else {
        out
    })
}

fn run(cli: &Cli) -> CmdResult {
    let prefix = cli.prefix.unwrap_or(10);
    match &cli.command {
        Command::Pell(c) => run_pell(c, prefix),
        Command::Cone(c) => run_cone(c, cli.prefix.unwrap_or(5)),
        Command::Chi { series, m, q } => {
            let input = RiemannRochInput {
                series: (*series).into(),
                m: *m,
                q: *q,
            };
            let v = rrinv::chi(input).map_err(err)?;
            Ok(Output::new(
                "chi",
                &[("series", to_json(&input.series)), ("m", json!(m)), ("q", json!(q))],
                &["rrinv::chi"],
                json!({"chi": big(&v)}),
            ))
        }
        Command::Fujiki { series, m } => {
            let s: Series = (*series).into();
            let c = rrinv::fujiki_constant(s, *m).map_err(err)?;
            Ok(Output::new(
                "fujiki",
                &[("series", to_json(&s)), ("m", json!(m))],
                &["rrinv::fujiki_constant"],
                json!({"fujiki_constant": render_rational(&c)}),
            ))
        }
        Command::Lattice(c) => run_lattice(c),
        Command::Aut(c) => run_aut(c),
        Command::Heegner(c) => run_heegner(c),
        Command::PeriodImage { p, keys } => run_period_image(*p, *keys, cli.bound),
        Command::NlFamily { n, gamma, a_max } => {
            let es = periods::nl_family(*n, *gamma, *a_max).map_err(err)?;
            Ok(Output::new(
                "nl-family",
                &[("n", json!(n)), ("gamma", json!(gamma)), ("a_max", json!(a_max))],
                &["periods::nl_family"],
                json!({"e": es}),
            ))
        }
        Command::HilbSquare { n, e, gamma, all } => {
            let params = [
                ("n", json!(n)),
                ("e", json!(e)),
                ("gamma", json!(gamma)),
                ("all", json!(all)),
            ];
            let result = if *all {
                to_json(&periods::hilbert_square_points(*n, *e, *gamma).map_err(err)?)
            } else {
                periods::hilbert_square_point(*n, *e, *gamma)
                    .map_err(err)?
                    .map_or(Value::Null, |p| to_json(&p))
            };
            Ok(Output::new(
                "hilb-square",
                &params,
                &["periods::hilbert_square_points"],
                result,
            ))
        }
        Command::Reproduce { table } => {
            let id: TableId = table.parse().map_err(err)?;
            let t = report::build(id).map_err(err)?;
            Ok(Output::new(
                "reproduce",
                &[("table", json!(id.name()))],
                &[&format!("report::{}", id.name())],
                to_json(&t),
            )
            .with_table(t))
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        _ => serde_json::to_string(v).expect("JSON values serialize"),
    }
}

/// Flattens a JSON result into rows: arrays of objects become one row per
/// element, an object becomes a single row, anything else a `value` column.
fn derive_table(v: &Value) -> Table {
    let row_of = |o: &serde_json::Map<String, Value>, cols: &[String]| -> Vec<String> {
        cols.iter().map(|c| o.get(c).map_or("-".into(), cell)).collect()
    };
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let mut cols: Vec<String> = Vec::new();
            for it in items {
                for k in it.as_object().expect("object").keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
            let rows = items
                .iter()
                .map(|it| row_of(it.as_object().expect("object"), &cols))
                .collect();
            Table { columns: cols, rows }
        }
        Value::Array(items) => Table {
            columns: vec!["value".into()],
            rows: items.iter().map(|x| vec![cell(x)]).collect(),
        },
        Value::Object(o) => {
            let cols: Vec<String> = o.keys().cloned().collect();
            let row = row_of(o, &cols);
            Table {
                columns: cols,
                rows: vec![row],
            }
        }
        other => Table {
            columns: vec!["value".into()],
            rows: vec![vec![cell(other)]],
        },
    }
}

fn to_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.columns).expect("in-memory write");
    for r in &t.rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 cells")
}

fn render(out: Output, format: Format) -> String {
    match format {
        Format::Json => {
            let env = json!({
                "command": out.command,
                "params": out.params,
                "provenance": out.provenance,
                "result": out.result,
            });
            let mut s = serde_json::to_string_pretty(&env).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(&out.table.unwrap_or_else(|| derive_table(&out.result))),
        Format::Text => out.table.unwrap_or_else(|| derive_table(&out.result)).to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", render(out, cli.format));
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
