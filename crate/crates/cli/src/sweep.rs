//! Parameter sweeps.
//!
//! A grid is written `KIND:key=values;key=values`, where values are
//! comma-separated integers or inclusive ranges `a..b`, e.g.
//! `sharpness:p=3,5;delta=2..6;a=0..2`. An empty string is the empty grid.
//!
//! | kind        | keys (defaults)                               | one row per            |
//! |-------------|-----------------------------------------------|------------------------|
//! | `ordering`  | `d` (2..12), `k` (1..70), `p` (3)             | `d`                    |
//! | `identity`  | `delta` (3..40)                               | `delta`                |
//! | `sharpness` | `p` (3,5), `delta` (2..6), `a` (0..2)         | `(p, delta, k, a)`     |
//! | `soundness` | `p` (3,5), `n` (2..7), `m` (1..8), `seed` (0) | `(p, n, m, seed)`      |

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use schur_core::bounds::{
    compare_report, exp_ew_chain, exp_rai_ineq4, exp_rai_thm14, exp_thm33, lemma37_check, PGroupParams,
};
use schur_core::grouplab::{
    construct_thm43, dim_psi_bar, invariants, schur_exponent_exact, thm43_closed_form, ClassTwoGroup,
};
use schur_core::trigraph::binomial;
use schur_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Ordering,
    Identity,
    Sharpness,
    Soundness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub kind: Option<SweepKind>,
    pub axes: BTreeMap<String, Vec<u64>>,
}

fn parse_values(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParams(format!("cannot read values `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

pub fn parse_grid(spec: &str) -> Result<Grid> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Grid {
            kind: None,
            axes: BTreeMap::new(),
        });
    }
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let kind = match kind.trim() {
        "ordering" => SweepKind::Ordering,
        "identity" => SweepKind::Identity,
        "sharpness" => SweepKind::Sharpness,
        "soundness" => SweepKind::Soundness,
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown sweep `{other}` (expected ordering, identity, sharpness or soundness)"
            )))
        }
    };
    let allowed: &[&str] = match kind {
        SweepKind::Ordering => &["d", "k", "p"],
        SweepKind::Identity => &["delta"],
        SweepKind::Sharpness => &["p", "delta", "a"],
        SweepKind::Soundness => &["p", "n", "m", "seed"],
    };
    let mut axes = BTreeMap::new();
    for clause in rest.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let (key, values) = clause
            .split_once('=')
            .ok_or_else(|| Error::InvalidParams(format!("expected key=values, got `{clause}`")))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(Error::InvalidParams(format!("`{key}` is not a key of this sweep")));
        }
        if axes.insert(key.to_string(), parse_values(values)?).is_some() {
            return Err(Error::InvalidParams(format!("`{key}` given twice")));
        }
    }
    Ok(Grid {
        kind: Some(kind),
        axes,
    })
}

impl Grid {
    fn axis(&self, key: &str, default: std::ops::RangeInclusive<u64>) -> Vec<u64> {
        self.axes.get(key).cloned().unwrap_or_else(|| default.collect())
    }

    fn primes(&self, default: &[u64]) -> Result<Vec<u64>> {
        let ps = self.axes.get("p").cloned().unwrap_or_else(|| default.to_vec());
        for &p in &ps {
            if p < 3 || !schur_core::fieldmat::is_prime(p) {
                return Err(Error::InvalidParams(format!("p = {p} must be an odd prime")));
            }
        }
        Ok(ps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepTable {
    pub kind: Option<SweepKind>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<i64>>,
    pub cases: u64,
    pub violations: u64,
}

impl SweepTable {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let width = 10;
        let header: Vec<String> = self.columns.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&header.join(" "));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("cases: {}, violations: {}\n", self.cases, self.violations));
        out
    }
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Run a sweep on `threads` workers (0 picks the default).
pub fn run(grid: &Grid, threads: usize) -> Result<SweepTable> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    pool.install(|| match grid.kind {
        None => Ok(SweepTable {
            kind: None,
            columns: Vec::new(),
            rows: Vec::new(),
            cases: 0,
            violations: 0,
        }),
        Some(SweepKind::Ordering) => ordering(grid),
        Some(SweepKind::Identity) => identity(grid),
        Some(SweepKind::Sharpness) => sharpness(grid),
        Some(SweepKind::Soundness) => soundness(grid),
    })
}

fn ordering(grid: &Grid) -> Result<SweepTable> {
    let p = grid.primes(&[3])?;
    let ds = grid.axis("d", 2..=12);
    let ks = grid.axis("k", 1..=70);
    let rows: Vec<Vec<i64>> = ds
        .par_iter()
        .map(|&d| {
            let mut cases = 0i64;
            let mut bad = 0i64;
            for &p in &p {
                for delta in 2..=d {
                    for &k in &ks {
                        for kprime in 1..=k.min(binomial(delta, 2)) {
                            let Ok(params) = PGroupParams::new(p as u32, d + k, d, delta, k, kprime) else {
                                continue;
                            };
                            cases += 1;
                            let (a, b, c) = (exp_thm33(&params), exp_rai_ineq4(&params), exp_rai_thm14(&params));
                            if !(a <= b && b <= c) {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            vec![d as i64, cases, bad]
        })
        .collect();
    Ok(finish(SweepKind::Ordering, &["d", "tuples", "violations"], rows, Some(1), 2))
}

fn identity(grid: &Grid) -> Result<SweepTable> {
    let deltas = grid.axis("delta", 3..=40);
    let rows = deltas
        .par_iter()
        .map(|&delta| {
            let mut cases = 0i64;
            let mut bad = 0i64;
            for kprime in 1..delta.saturating_sub(1) {
                cases += 1;
                if !lemma37_check(delta, kprime)? {
                    bad += 1;
                }
            }
            Ok(vec![delta as i64, cases, bad])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(SweepKind::Identity, &["delta", "cases", "violations"], rows, Some(1), 2))
}

fn sharpness(grid: &Grid) -> Result<SweepTable> {
    let ps = grid.primes(&[3, 5])?;
    let deltas = grid.axis("delta", 2..=6);
    let extras = grid.axis("a", 0..=2);
    let mut tuples = Vec::new();
    for &p in &ps {
        for &delta in &deltas {
            if delta < 2 {
                return Err(Error::InvalidParams("delta must be at least 2".into()));
            }
            for k in delta - 1..=binomial(delta, 2) {
                for &a in &extras {
                    tuples.push((p, delta, k, a));
                }
            }
        }
    }
    let rows = tuples
        .par_iter()
        .map(|&(p, delta, k, a)| {
            let g = construct_thm43(p, (delta + a) as usize, delta as usize, k as usize)?;
            let exact = schur_exponent_exact(&g);
            let bound = exp_thm33(&invariants(&g).to_params()?).effective();
            let closed = thm43_closed_form(delta, k, a);
            let ok = exact == bound && exact == closed;
            Ok(vec![p as i64, delta as i64, k as i64, a as i64, exact, bound, i64::from(!ok)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(
        SweepKind::Sharpness,
        &["p", "delta", "k", "a", "exact", "thm33", "violation"],
        rows,
        None,
        6,
    ))
}

fn soundness(grid: &Grid) -> Result<SweepTable> {
    let ps = grid.primes(&[3, 5])?;
    let ns = grid.axis("n", 2..=7);
    let ms = grid.axis("m", 1..=8);
    let seeds = grid.axis("seed", 0..=0);
    let mut tuples = Vec::new();
    for &p in &ps {
        for &n in &ns {
            for &m in &ms {
                if m >= 1 && m <= binomial(n, 2) {
                    for &seed in &seeds {
                        tuples.push((p, n, m, seed));
                    }
                }
            }
        }
    }
    let rows = tuples
        .par_iter()
        .map(|&(p, n, m, seed)| {
            let g = ClassTwoGroup::random(p, n as usize, m as usize, seed)?;
            let (exact, best, ok) = soundness_case(&g)?;
            Ok(vec![p as i64, n as i64, m as i64, seed as i64, exact, best, i64::from(!ok)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(finish(
        SweepKind::Soundness,
        &["p", "n", "m", "seed", "exact", "best", "violation"],
        rows,
        None,
        6,
    ))
}

/// Exact exponent, the smallest applicable bound, and whether every bound holds.
pub fn soundness_case(g: &ClassTwoGroup) -> Result<(i64, i64, bool)> {
    let params = invariants(g).to_params()?;
    let exact = schur_exponent_exact(g);
    let chain = exp_ew_chain(&params, dim_psi_bar(g) as u64).effective();
    let best = compare_report(&params)?.best_effective().min(chain);
    Ok((exact, best, exact <= best))
}

/// Aggregates rows; `cases_col` is `None` when every row is a single case.
fn finish(kind: SweepKind, names: &[&str], rows: Vec<Vec<i64>>, cases_col: Option<usize>, bad_col: usize) -> SweepTable {
    let cases = match cases_col {
        Some(c) => rows.iter().map(|r| r[c] as u64).sum(),
        None => rows.len() as u64,
    };
    let violations = rows.iter().map(|r| r[bad_col] as u64).sum();
    SweepTable {
        kind: Some(kind),
        columns: columns(names),
        rows,
        cases,
        violations,
    }
}
