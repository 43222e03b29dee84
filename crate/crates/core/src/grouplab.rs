//! Class-two groups of prime exponent, encoded by their commutator map.
//!
//! Generators of `U` stand for a basis of `G / G'` and basis vectors of `V`
//! for a basis of `G'`. The multiplier order comes from the exact sequence
//! `1 -> X -> G^ab (x) G' -> M(G) -> M(G^ab) -> G' -> 1`, where `X` is the
//! image of the map computed in [`crate::psirank`].

use std::collections::BTreeMap;

use serde::Serialize;

use crate::altmap::{AltMap, Pair};
use crate::bounds::PGroupParams;
use crate::error::{Error, Result};
use crate::fieldmat::{self, check_modulus};
use crate::psirank::dim_im_psi;
use crate::trigraph::{binomial, rt_decompose, RTDecomposition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTwoGroup {
    map: AltMap,
    gen_prefix: String,
    comm_prefix: String,
}

impl ClassTwoGroup {
    pub fn new(map: AltMap) -> Result<Self> {
        Self::with_names(map, "g", "q")
    }

    pub fn with_names(map: AltMap, gen_prefix: &str, comm_prefix: &str) -> Result<Self> {
        if map.modulus() == 2 {
            return Err(Error::InvalidParams(
                "class-two groups of prime exponent need an odd prime".into(),
            ));
        }
        map.validate()?;
        for prefix in [gen_prefix, comm_prefix] {
            if prefix.is_empty() || !prefix.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(Error::Presentation(format!("generator prefix `{prefix}` must be letters")));
            }
        }
        if gen_prefix == comm_prefix {
            return Err(Error::Presentation("generator prefixes must differ".into()));
        }
        Ok(Self {
            map,
            gen_prefix: gen_prefix.to_string(),
            comm_prefix: comm_prefix.to_string(),
        })
    }

    /// A random group with `n` generators and commutator subgroup of rank `m`.
    pub fn random(p: u64, n: usize, m: usize, seed: u64) -> Result<Self> {
        Self::new(AltMap::random(p, n, m, seed)?)
    }

    pub fn map(&self) -> &AltMap {
        &self.map
    }

    pub fn prime(&self) -> u32 {
        self.map.modulus()
    }

    pub fn gen_prefix(&self) -> &str {
        &self.gen_prefix
    }

    pub fn comm_prefix(&self) -> &str {
        &self.comm_prefix
    }
}

/// `|G| = p^n`, `d(G) = d`, `d(G/Z) = delta`, `|G'| = p^k`; `kprime = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub p: u32,
    pub n: u64,
    pub d: u64,
    pub delta: u64,
    pub k: u64,
    pub kprime: u64,
}

impl GroupInvariants {
    pub fn to_params(&self) -> Result<PGroupParams> {
        PGroupParams::new(self.p, self.n, self.d, self.delta, self.k, self.kprime)
    }
}

pub fn invariants(g: &ClassTwoGroup) -> GroupInvariants {
    let a = &g.map;
    let (d, k) = (a.dim_u() as u64, a.dim_v() as u64);
    GroupInvariants {
        p: a.modulus(),
        n: d + k,
        d,
        delta: d - a.radical().len() as u64,
        k,
        kprime: k,
    }
}

/// Exponent of `|M(G)|`: `dk + C(d,2) - dim X - k`.
pub fn schur_exponent_exact(g: &ClassTwoGroup) -> i64 {
    let (d, k) = (g.map.dim_u() as i64, g.map.dim_v() as i64);
    d * k + binomial(d as u64, 2) as i64 - dim_im_psi(&g.map) as i64 - k
}

/// Exponent of `|H^2(G, Z/p)|`, assuming `M(G)` is elementary abelian.
pub fn h2_exponent(g: &ClassTwoGroup) -> i64 {
    g.map.dim_u() as i64 + schur_exponent_exact(g)
}

/// Rank of the map induced on `G/Z`.
pub fn dim_psi_bar(g: &ClassTwoGroup) -> usize {
    dim_im_psi(&g.map.quotient_by_radical().map)
}

/// Pairs (1-based, within `1..=delta`) whose commutators are killed to build a
/// group with `|G'| = p^k` from the free one.
pub fn killed_pairs(delta: usize, k: usize) -> Vec<Pair> {
    let RTDecomposition { r, t, .. } = rt_decompose(binomial(delta as u64, 2) - k as u64);
    let (r, t) = (r as usize, t as usize);
    let mut out = Vec::new();
    for j in delta - t + 1..=delta {
        out.push(Pair::one_based(delta - r, j));
    }
    for i in delta - r + 1..=delta {
        for j in i + 1..=delta {
            out.push(Pair::one_based(i, j));
        }
    }
    out
}

/// The capable group with `d(G) = d`, `d(G/Z) = delta` and `|G'| = p^k`.
///
/// Surviving pairs among the first `delta` generators get distinct basis
/// vectors of `V` in pair order; the remaining `d - delta` generators are
/// central.
pub fn construct_thm43(p: u64, d: usize, delta: usize, k: usize) -> Result<ClassTwoGroup> {
    let prime = check_modulus(p).map_err(|_| Error::InfeasibleParameters(format!("p = {p} is not prime")))?;
    if prime == 2 {
        return Err(Error::InfeasibleParameters("p must be odd".into()));
    }
    let full = binomial(delta as u64, 2) as usize;
    if delta < 2 || delta > d || k + 1 < delta || k > full {
        return Err(Error::InfeasibleParameters(format!(
            "need 2 <= delta <= d and delta - 1 <= k <= C(delta,2) (d = {d}, delta = {delta}, k = {k})"
        )));
    }
    let killed = killed_pairs(delta, k);
    let mut map = AltMap::zero(p, delta, k)?;
    let order = crate::greedy::Order::natural(delta);
    let kept = crate::greedy::pairs_in_order(delta, &order)
        .into_iter()
        .filter(|q| !killed.contains(q));
    let mut count = 0;
    for (v, pair) in kept.enumerate() {
        let mut value = vec![0i64; k];
        value[v] = 1;
        map.set(pair, &value)?;
        count += 1;
    }
    if count != k {
        return Err(Error::Internal(format!("kept {count} pairs, expected {k}")));
    }
    ClassTwoGroup::new(map.with_radical_generators(d - delta))
}

/// `C(delta,2) + delta k - k - C(delta,3) + C(r,3) + C(t,2) + C(a,2) + delta a`.
pub fn thm43_closed_form(delta: u64, k: u64, a: u64) -> i64 {
    let RTDecomposition { r, t, .. } = rt_decompose(binomial(delta, 2) - k);
    let c = |n, j| binomial(n, j) as i64;
    c(delta, 2) + (delta * k) as i64 - k as i64 - c(delta, 3) + c(r, 3) + c(t, 2) + c(a, 2) + (delta * a) as i64
}

/// Multiplier exponents of a direct product of groups of coprime orders,
/// one entry per prime.
pub fn multiplier_of_coprime_product(groups: &[ClassTwoGroup]) -> Result<Vec<(u32, i64)>> {
    let mut seen = Vec::new();
    for g in groups {
        if seen.contains(&g.prime()) {
            return Err(Error::DuplicatePrime(g.prime()));
        }
        seen.push(g.prime());
    }
    Ok(groups.iter().map(|g| (g.prime(), schur_exponent_exact(g))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Capability {
    Capable,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapabilityReport {
    pub verdict: Capability,
    /// 1-based generators whose images form the basis of `G/Z` that was tested.
    pub basis: Vec<usize>,
}

/// Sufficient test for capability: on a basis of `G/Z` made of generators,
/// the nontrivial commutators are pairwise distinct and form a basis of `G'`.
pub fn capability_ellis(g: &ClassTwoGroup) -> CapabilityReport {
    let quotient = g.map.quotient_by_radical();
    let values: Vec<Vec<u32>> = quotient
        .map
        .pairs()
        .filter(|(_, v)| v.iter().any(|&x| x != 0))
        .map(|(_, v)| v.to_vec())
        .collect();
    let independent = values.len() == g.map.dim_v() && fieldmat::rank_of(&values, g.prime()) == values.len();
    CapabilityReport {
        verdict: if independent {
            Capability::Capable
        } else {
            Capability::Unknown
        },
        basis: quotient.complement.iter().map(|i| i + 1).collect(),
    }
}

fn word(value: &[u32], prefix: &str) -> String {
    let factors: Vec<String> = value
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(v, &c)| {
            if c == 1 {
                format!("{prefix}{}", v + 1)
            } else {
                format!("{prefix}{}^{c}", v + 1)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

/// Presentation in the style
///
/// ```text
/// < g1, g2, g3, q1 |
///   g_i^3 = q_j^3 = [q_j,q_k] = 1 for all 1 <= i <= 3 and 1 <= j,k <= 1,
///   [g1,g2] = q1,
///   [g_i,g_j] = 1 for all other 1 <= i < j <= 3 >
/// ```
///
/// Pairs with equal commutators share a line; lines are sorted by the first
/// nonzero coordinate of the commutator.
pub fn to_presentation(g: &ClassTwoGroup) -> String {
    let a = &g.map;
    let (n, m, p) = (a.dim_u(), a.dim_v(), a.modulus());
    let (gp, qp) = (&g.gen_prefix, &g.comm_prefix);
    let mut names: Vec<String> = (1..=n).map(|i| format!("{gp}{i}")).collect();
    names.extend((1..=m).map(|j| format!("{qp}{j}")));

    let mut groups: BTreeMap<(usize, Vec<u32>), Vec<Pair>> = BTreeMap::new();
    let mut has_zero = false;
    for (pair, value) in a.pairs() {
        match value.iter().position(|&x| x != 0) {
            Some(lead) => groups.entry((lead, value.to_vec())).or_default().push(pair),
            None => has_zero = true,
        }
    }

    let mut lines = vec![format!("< {} |", names.join(", "))];
    lines.push(if m == 0 {
        format!("  {gp}_i^{p} = 1 for all 1 <= i <= {n}")
    } else {
        format!("  {gp}_i^{p} = {qp}_j^{p} = [{qp}_j,{qp}_k] = 1 for all 1 <= i <= {n} and 1 <= j,k <= {m}")
    });
    for ((_, value), pairs) in &groups {
        let lhs: Vec<String> = pairs
            .iter()
            .map(|q| format!("[{gp}{},{gp}{}]", q.i + 1, q.j + 1))
            .collect();
        lines.push(format!("  {} = {}", lhs.join(" = "), word(value, qp)));
    }
    if has_zero {
        lines.push(format!("  [{gp}_i,{gp}_j] = 1 for all other 1 <= i < j <= {n}"));
    }
    let last = lines.len() - 1;
    for line in &mut lines[1..last] {
        line.push(',');
    }
    lines[last].push_str(" >");
    lines.join("\n") + "\n"
}

fn split_name(name: &str) -> Result<(&str, usize)> {
    let cut = name
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::Presentation(format!("`{name}` has no index")))?;
    let (prefix, index) = name.split_at(cut);
    let index: usize = index
        .parse()
        .map_err(|_| Error::Presentation(format!("bad index in `{name}`")))?;
    if prefix.is_empty() || index == 0 {
        return Err(Error::Presentation(format!("bad generator name `{name}`")));
    }
    Ok((prefix, index))
}

/// Inverse of [`to_presentation`].
pub fn parse_presentation(text: &str) -> Result<ClassTwoGroup> {
    let bad = |msg: String| Error::Presentation(msg);
    let body = text.trim();
    let body = body
        .strip_prefix('<')
        .and_then(|b| b.strip_suffix('>'))
        .ok_or_else(|| bad("presentation must be enclosed in < >".into()))?;
    let (gens, relators) = body
        .split_once('|')
        .ok_or_else(|| bad("missing `|` between generators and relators".into()))?;

    let mut gen_prefix: Option<String> = None;
    let mut comm_prefix: Option<String> = None;
    let (mut n, mut m) = (0usize, 0usize);
    for name in gens.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (prefix, index) = split_name(name)?;
        let gp = gen_prefix.get_or_insert_with(|| prefix.to_string());
        if prefix == gp {
            if comm_prefix.is_some() || index != n + 1 {
                return Err(bad(format!("generator `{name}` out of sequence")));
            }
            n += 1;
        } else {
            let cp = comm_prefix.get_or_insert_with(|| prefix.to_string());
            if prefix != cp || index != m + 1 {
                return Err(bad(format!("generator `{name}` out of sequence")));
            }
            m += 1;
        }
    }
    let gen_prefix = gen_prefix.ok_or_else(|| bad("no generators".into()))?;
    let comm_prefix = comm_prefix.unwrap_or_else(|| if gen_prefix == "q" { "r".into() } else { "q".into() });

    let mut lines = relators.lines().map(str::trim).filter(|l| !l.is_empty());
    let power = lines.next().ok_or_else(|| bad("missing power relation".into()))?;
    let p: u64 = power
        .split_once('^')
        .and_then(|(_, rest)| {
            let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            digits.parse().ok()
        })
        .ok_or_else(|| bad(format!("cannot read the exponent from `{power}`")))?;

    let mut map = AltMap::zero(p, n, m)?;
    let mut seen = Vec::new();
    for line in lines {
        let line = line.trim_end_matches(',').trim();
        if line.contains("for all other") {
            continue;
        }
        let parts: Vec<&str> = line.split('=').map(str::trim).collect();
        if parts.len() < 2 {
            return Err(bad(format!("cannot read relation `{line}`")));
        }
        let value = parse_word(parts[parts.len() - 1], &comm_prefix, m, p)?;
        for lhs in &parts[..parts.len() - 1] {
            let inner = lhs
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| bad(format!("expected a commutator, got `{lhs}`")))?;
            let (x, y) = inner
                .split_once(',')
                .ok_or_else(|| bad(format!("expected two entries in `{lhs}`")))?;
            let index = |s: &str| -> Result<usize> {
                let (prefix, i) = split_name(s.trim())?;
                if prefix != gen_prefix || i > n {
                    return Err(bad(format!("unknown generator `{}`", s.trim())));
                }
                Ok(i)
            };
            let (i, j) = (index(x)?, index(y)?);
            if i >= j {
                return Err(bad(format!("commutator `{lhs}` must list the smaller index first")));
            }
            let pair = Pair::one_based(i, j);
            if seen.contains(&pair) {
                return Err(bad(format!("commutator `{lhs}` given twice")));
            }
            seen.push(pair);
            map.set(pair, &value)?;
        }
    }
    ClassTwoGroup::with_names(map, &gen_prefix, &comm_prefix)
}

fn parse_word(text: &str, prefix: &str, m: usize, p: u64) -> Result<Vec<i64>> {
    let mut value = vec![0i64; m];
    if text == "1" {
        return Ok(value);
    }
    for factor in text.split('*').map(str::trim) {
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => (
                name,
                e.parse::<i64>()
                    .map_err(|_| Error::Presentation(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let (pre, index) = split_name(name)?;
        if pre != prefix || index > m {
            return Err(Error::Presentation(format!("unknown commutator generator `{name}`")));
        }
        value[index - 1] = (value[index - 1] + exp).rem_euclid(p as i64);
    }
    Ok(value)
}
