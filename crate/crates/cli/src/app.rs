use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use schur_core::bounds::{compare_report, exp_thm33, BoundComparison, PGroupParams};
use schur_core::greedy::Order;
use schur_core::grouplab::{capability_ellis, construct_thm43, invariants, schur_exponent_exact, to_presentation};
use schur_core::trigraph::{brute_force_max_triangles, extremal_graph, max_triangles_formula};
use schur_core::{parse_altmap, serialize_altmap, Error};

use crate::{report, sweep, verify};

#[derive(Debug, Parser)]
#[command(name = "schur", version, about = "Schur multiplier bounds for p-groups of class two and exponent p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze an alternating map document.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated 1-based generator order, e.g. `2,1,3,4`.
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every bound for a parameter tuple.
    Bounds {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        kprime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build a capable group attaining the bound and write its map and presentation.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        k: usize,
        /// Map document path; the presentation goes next to it with a `.txt` extension.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a parameter sweep, e.g. `sharpness:p=3,5;delta=2..6;a=0..2`.
    Sweep {
        #[arg(long)]
        grid: String,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        parallel: usize,
        #[arg(long)]
        json: bool,
    },
    /// Maximum triangle count for a given number of edges.
    Triangles {
        #[arg(long)]
        edges: u64,
        /// Also enumerate all graphs on `--max-vertices` vertices.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 7)]
        max_vertices: usize,
        #[arg(long)]
        json: bool,
    },
    /// Recompute every published value and report pass/fail per fixture.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Read fixtures from this directory instead of the embedded copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) { 3 } else { 2 };
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::error(&e),
    }
}

fn dispatch(command: Command) -> schur_core::Result<Outcome> {
    match command {
        Command::Analyze { input, order, json: as_json } => analyze(&input, order.as_deref(), as_json),
        Command::Bounds {
            p,
            n,
            d,
            delta,
            k,
            kprime,
            json: as_json,
        } => {
            let cmp = compare_report(&PGroupParams::new(p, n, d, delta, k, kprime)?)?;
            Ok(Outcome::ok(if as_json { json(&cmp) } else { render_bounds(&cmp) }))
        }
        Command::Construct {
            p,
            d,
            delta,
            k,
            out,
            json: as_json,
        } => construct(p, d, delta, k, &out, as_json),
        Command::Sweep {
            grid,
            parallel,
            json: as_json,
        } => {
            let table = sweep::run(&sweep::parse_grid(&grid)?, parallel)?;
            Ok(Outcome::ok(if as_json { json(&table) } else { table.render() }))
        }
        Command::Triangles {
            edges,
            oracle,
            max_vertices,
            json: as_json,
        } => triangles(edges, oracle, max_vertices, as_json),
        Command::VerifyPaper { json: as_json, fixtures } => {
            let store = match fixtures {
                Some(dir) if !dir.is_dir() => {
                    return Err(Error::InvalidParams(format!("{} is not a directory", dir.display())))
                }
                Some(dir) => verify::Store::from_dir(&dir),
                None => verify::Store::embedded(),
            };
            let summary = verify::run(&store);
            let stdout = if as_json { json(&summary) } else { summary.render() };
            Ok(Outcome {
                code: if summary.ok() { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            })
        }
    }
}

fn analyze(input: &Path, order: Option<&str>, as_json: bool) -> schur_core::Result<Outcome> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::MalformedDocument(format!("cannot read {}: {e}", input.display())))?;
    let map = parse_altmap(&text).map_err(|e| match e {
        Error::MalformedDocument(msg) => Error::MalformedDocument(format!("{}: {msg}", input.display())),
        other => other,
    })?;
    let order = match order {
        Some(text) => Order::parse_one_based(text, map.dim_u())?,
        None => Order::natural(map.dim_u()),
    };
    let r = report::build(&map, &order, &input.display().to_string())?;
    Ok(Outcome::ok(if as_json { json(&r) } else { report::render(&r) }))
}

fn render_bounds(c: &BoundComparison) -> String {
    let p = &c.params;
    let mut out = format!(
        "p = {}, n = {}, d = {}, delta = {}, k = {}, kprime = {}  (r = {}, t = {})\n",
        p.p, p.n, p.d, p.delta, p.k, p.kprime, c.rt.r, c.rt.t
    );
    let mut line = |name: &str, e: Option<schur_core::bounds::Exponent>| {
        if let Some(e) = e {
            out.push_str(&format!("{name:<12} {:>8} {:>8}\n", e.to_string(), e.effective()));
        }
    };
    line("thm33", Some(c.thm33));
    line("cor34", Some(c.cor34));
    line("rai_ineq4", Some(c.rai_ineq4));
    line("rai_thm14", Some(c.rai_thm14));
    line("rai_special", c.rai_special);
    line("thm38", c.thm38);
    line("cor39", c.cor39);
    out.push_str(&format!(
        "thm33 <= rai_ineq4: {}, rai_ineq4 <= rai_thm14: {}, thm33 == rai_ineq4: {}\n",
        c.thm33_le_ineq4, c.ineq4_le_thm14, c.thm33_eq_ineq4
    ));
    out
}

#[derive(Debug, Serialize)]
struct Constructed {
    map_path: String,
    presentation_path: String,
    invariants: schur_core::grouplab::GroupInvariants,
    schur_multiplier: i64,
    thm33: i64,
    capability: schur_core::grouplab::CapabilityReport,
}

fn construct(p: u64, d: usize, delta: usize, k: usize, out: &Path, as_json: bool) -> schur_core::Result<Outcome> {
    let g = construct_thm43(p, d, delta, k)?;
    let presentation_path = out.with_extension("txt");
    if presentation_path == out {
        return Err(Error::InvalidParams("--out must not have a .txt extension".into()));
    }
    let inv = invariants(&g);
    let exact = schur_exponent_exact(&g);
    let bound = exp_thm33(&inv.to_params()?).effective();
    if exact != bound {
        return Err(Error::Internal(format!("constructed group has exponent {exact}, bound is {bound}")));
    }
    let write = |path: &Path, text: String| {
        std::fs::write(path, text).map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display())))
    };
    write(out, serialize_altmap(g.map()))?;
    write(&presentation_path, to_presentation(&g))?;
    let c = Constructed {
        map_path: out.display().to_string(),
        presentation_path: presentation_path.display().to_string(),
        invariants: inv,
        schur_multiplier: exact,
        thm33: bound,
        capability: capability_ellis(&g),
    };
    let text = if as_json {
        json(&c)
    } else {
        format!(
            "wrote {} and {}\nn = {}, d = {}, delta = {}, k = {}\nM = p^{}, bound p^{}, capable: {:?}\n",
            c.map_path,
            c.presentation_path,
            inv.n,
            inv.d,
            inv.delta,
            inv.k,
            exact,
            bound,
            c.capability.verdict
        )
    };
    Ok(Outcome::ok(text))
}

#[derive(Debug, Serialize)]
struct TriangleReport {
    edges: u64,
    formula: u64,
    /// 1-based edge list of a graph attaining the formula.
    extremal_edges: Vec<(usize, usize)>,
    oracle: Option<u64>,
    max_vertices: Option<usize>,
}

fn triangles(edges: u64, oracle: bool, max_vertices: usize, as_json: bool) -> schur_core::Result<Outcome> {
    let formula = max_triangles_formula(edges);
    let extremal_edges = extremal_graph(edges).edges().into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
    let oracle_value = if oracle {
        let e = usize::try_from(edges).map_err(|_| Error::InvalidParams("edge count too large".into()))?;
        Some(brute_force_max_triangles(e, max_vertices)?)
    } else {
        None
    };
    if oracle_value.is_some_and(|o| o > formula) {
        return Err(Error::Internal(format!("enumeration found more than {formula} triangles")));
    }
    let r = TriangleReport {
        edges,
        formula,
        extremal_edges,
        oracle: oracle_value,
        max_vertices: oracle.then_some(max_vertices),
    };
    let text = if as_json {
        json(&r)
    } else {
        let list: Vec<String> = r.extremal_edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let mut s = format!("edges {edges}\nmax triangles {formula}\nextremal graph {}\n", list.join(" "));
        if let Some(o) = r.oracle {
            s.push_str(&format!("enumeration on {max_vertices} vertices {o}\n"));
        }
        s
    };
    Ok(Outcome::ok(text))
}
