//! The `analyze` report: everything computable from one map document.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use schur_core::bounds::{compare_report, exp_ew_chain, BoundComparison, Exponent, PGroupParams};
use schur_core::greedy::{construct_pair_basis, is_tree_of_height_one, Order, PairBasis};
use schur_core::grouplab::{
    capability_ellis, h2_exponent, schur_exponent_exact, CapabilityReport, ClassTwoGroup,
};
use schur_core::psirank::{dim_im_psi, lb_estimate, lb_nontree, script_w};
use schur_core::trigraph::graph_of_pairset;
use schur_core::{AltMap, Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub source: String,
    pub p: u32,
    #[serde(rename = "dimU")]
    pub dim_u: usize,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    pub order: Order,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Invariants {
    pub n: u64,
    pub d: u64,
    pub delta: u64,
    pub k: u64,
    pub kprime: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub edges: usize,
    pub tree_of_height_one: bool,
    /// 1-based apex of the star, when the pair set is one.
    pub apex: Option<usize>,
    pub complement_triangles: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Ranks {
    /// Rank of the triple map on the full generator space.
    pub psi_full: usize,
    /// Rank of the triple map after factoring out the radical.
    pub psi_quotient: usize,
    pub script_w: usize,
    pub lb_estimate: u64,
    /// Present only for non-star pair sets with `dimV < dimU`.
    pub lb_nontree: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    #[serde(flatten)]
    pub comparison: BoundComparison,
    pub ew_chain: Exponent,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Exact {
    pub schur_multiplier: i64,
    pub h2: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub input: InputEcho,
    pub invariants: Invariants,
    pub pair_basis: PairBasis,
    pub graph: GraphSummary,
    pub ranks: Ranks,
    /// Absent when the parameters cannot describe a nonabelian group.
    pub bounds: Option<Bounds>,
    /// Absent for `p = 2`, where no class-two group of exponent `p` exists.
    pub exact: Option<Exact>,
    pub capability: Option<CapabilityReport>,
    pub timing_ms: f64,
}

pub fn build(map: &AltMap, order: &Order, source: &str) -> Result<BoundReport> {
    let start = Instant::now();
    map.validate()?;
    let pair_basis = construct_pair_basis(map, order)?;
    let (n, m) = (map.dim_u(), map.dim_v());

    let graph = graph_of_pairset(&pair_basis.pairs, n);
    let (tree, apex) = is_tree_of_height_one(&pair_basis.pairs);
    let graph = GraphSummary {
        edges: graph.edge_count(),
        tree_of_height_one: tree,
        apex: apex.map(|a| a + 1),
        complement_triangles: graph.complement().count_triangles(),
    };

    let quotient = map.quotient_by_radical();
    let psi_quotient = dim_im_psi(&quotient.map);
    let ranks = Ranks {
        psi_full: dim_im_psi(map),
        psi_quotient,
        script_w: script_w(&pair_basis.pairs, n, order).len(),
        lb_estimate: lb_estimate(n as u64, m as u64)?,
        lb_nontree: if tree { None } else { lb_nontree(n as u64, m as u64).ok() },
    };

    let (d, k) = (n as u64, m as u64);
    let invariants = Invariants {
        n: d + k,
        d,
        delta: d - quotient.radical_dim as u64,
        k,
        kprime: k,
    };
    let bounds = match PGroupParams::new(map.modulus(), invariants.n, d, invariants.delta, k, k) {
        Ok(params) => Some(Bounds {
            comparison: compare_report(&params)?,
            ew_chain: exp_ew_chain(&params, psi_quotient as u64),
        }),
        Err(Error::InvalidParams(_)) => None,
        Err(e) => return Err(e),
    };

    let group = (map.modulus() != 2).then(|| ClassTwoGroup::new(map.clone())).transpose()?;
    let exact = group.as_ref().map(|g| Exact {
        schur_multiplier: schur_exponent_exact(g),
        h2: h2_exponent(g),
    });
    let capability = group.as_ref().map(capability_ellis);

    if let (Some(b), Some(e)) = (&bounds, &exact) {
        let chain = b.ew_chain.effective();
        if e.schur_multiplier > chain || chain > b.comparison.thm33.effective() {
            return Err(Error::Internal(format!(
                "inconsistent chain: exact {} / refined {} / formula {}",
                e.schur_multiplier, chain, b.comparison.thm33
            )));
        }
    }

    Ok(BoundReport {
        input: InputEcho {
            source: source.to_string(),
            p: map.modulus(),
            dim_u: n,
            dim_v: m,
            order: order.clone(),
        },
        invariants,
        pair_basis,
        graph,
        ranks,
        bounds,
        exact,
        capability,
        timing_ms: start.elapsed().as_secs_f64() * 1000.0,
    })
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn render(r: &BoundReport) -> String {
    let mut s = String::new();
    let i = &r.input;
    let inv = &r.invariants;
    let _ = writeln!(s, "input      {} (p = {}, dimU = {}, dimV = {})", i.source, i.p, i.dim_u, i.dim_v);
    let order: Vec<String> = i.order.sequence().iter().map(|g| (g + 1).to_string()).collect();
    let _ = writeln!(s, "order      {}", order.join(","));
    let _ = writeln!(
        s,
        "invariants n = {}, d = {}, delta = {}, k = {}, kprime = {}",
        inv.n, inv.d, inv.delta, inv.k, inv.kprime
    );
    let pairs: Vec<String> = r.pair_basis.pairs.iter().map(|p| p.to_string()).collect();
    let _ = writeln!(s, "pairs      {}", pairs.join(" "));
    let _ = writeln!(
        s,
        "graph      {} edges, star: {}{}, complement triangles: {}",
        r.graph.edges,
        r.graph.tree_of_height_one,
        r.graph.apex.map_or(String::new(), |a| format!(" (apex {a})")),
        r.graph.complement_triangles
    );
    let _ = writeln!(
        s,
        "ranks      psi(U) = {}, psi(U/rad) = {}, |W| = {}, estimate = {}, non-star estimate = {}",
        r.ranks.psi_full,
        r.ranks.psi_quotient,
        r.ranks.script_w,
        r.ranks.lb_estimate,
        opt(r.ranks.lb_nontree)
    );
    if let Some(b) = &r.bounds {
        let c = &b.comparison;
        let _ = writeln!(s, "bounds     thm33 = {}, cor34 = {}, rai_ineq4 = {}, rai_thm14 = {}", c.thm33, c.cor34, c.rai_ineq4, c.rai_thm14);
        let _ = writeln!(
            s,
            "           thm38 = {}, cor39 = {}, rai_special = {}, ew_chain = {}",
            opt(c.thm38),
            opt(c.cor39),
            opt(c.rai_special),
            b.ew_chain
        );
    } else {
        let _ = writeln!(s, "bounds     not applicable");
    }
    if let Some(e) = &r.exact {
        let _ = writeln!(s, "exact      M = p^{}, H2 = p^{}", e.schur_multiplier, e.h2);
    }
    if let Some(c) = &r.capability {
        let basis: Vec<String> = c.basis.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(s, "capable    {:?} (basis of G/Z: generators {})", c.verdict, basis.join(","));
    }
    let _ = writeln!(s, "time       {:.3} ms", r.timing_ms);
    s
}
