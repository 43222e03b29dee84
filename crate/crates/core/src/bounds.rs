//! Closed-form upper bounds on the exponent of the Schur multiplier.
//!
//! Every bound has the shape `p^e` with `e` possibly half-integral because of
//! the leading `(d-1)(n+k)/2` term. Exponents are kept exactly as halves and
//! rounded down when an integral exponent is needed.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fieldmat::is_prime;
use crate::trigraph::{binomial, rt_decompose, RTDecomposition};

/// An exponent stored as twice its exact value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    twice: i64,
}

impl Exponent {
    pub fn from_halves(twice: i64) -> Self {
        Self { twice }
    }

    pub fn integer(value: i64) -> Self {
        Self { twice: 2 * value }
    }

    pub fn halves(&self) -> i64 {
        self.twice
    }

    pub fn exact(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// The largest integer not exceeding the exact value.
    pub fn effective(&self) -> i64 {
        self.twice.div_euclid(2)
    }

    pub fn is_integral(&self) -> bool {
        self.twice % 2 == 0
    }

    pub fn plus(self, value: i64) -> Self {
        Self {
            twice: self.twice + 2 * value,
        }
    }

    pub fn minus(self, value: i64) -> Self {
        self.plus(-value)
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.effective())
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            exact: f64,
            effective: i64,
        }
        Repr {
            exact: self.exact(),
            effective: self.effective(),
        }
        .serialize(s)
    }
}

/// Numerical shape of a nonabelian p-group `G`: `|G| = p^n`, `d = d(G)`,
/// `delta = d(G/Z(G))`, `|G'| = p^k` and `d(G'/gamma_3 G) = kprime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PGroupParams {
    pub p: u32,
    pub n: u64,
    pub d: u64,
    pub delta: u64,
    pub k: u64,
    pub kprime: u64,
}

impl PGroupParams {
    pub fn new(p: u32, n: u64, d: u64, delta: u64, k: u64, kprime: u64) -> Result<Self> {
        let params = Self {
            p,
            n,
            d,
            delta,
            k,
            kprime,
        };
        params.check()?;
        Ok(params)
    }

    pub fn check(&self) -> Result<()> {
        let &Self {
            p,
            n,
            d,
            delta,
            k,
            kprime,
        } = self;
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !is_prime(u64::from(p)) {
            return bad(format!("p = {p} is not prime"));
        }
        if !(2 <= delta && delta <= d && d <= n) {
            return bad(format!("need 2 <= delta <= d <= n (delta = {delta}, d = {d}, n = {n})"));
        }
        if !(1 <= k && k <= n - d) {
            return bad(format!("need 1 <= k <= n - d (k = {k}, n - d = {})", n - d));
        }
        let cap = k.min(binomial(delta, 2));
        if !(1 <= kprime && kprime <= cap) {
            return bad(format!("need 1 <= kprime <= min(k, C(delta,2)) = {cap} (kprime = {kprime})"));
        }
        Ok(())
    }

    /// Twice the shared leading term `(d-1)(n+k)/2`.
    fn leading_halves(&self) -> i64 {
        ((self.d - 1) * (self.n + self.k)) as i64
    }

    fn rt(&self) -> RTDecomposition {
        rt_decompose(binomial(self.delta, 2) - self.kprime)
    }
}

fn c(n: u64, k: u64) -> i64 {
    binomial(n, k) as i64
}

/// `sum_{i=2}^{upper} (base - i)`.
fn descending_sum(base: u64, upper: u64) -> i64 {
    (2..=upper).map(|i| base as i64 - i as i64).sum()
}

pub fn exp_thm33(params: &PGroupParams) -> Exponent {
    let RTDecomposition { r, t, .. } = params.rt();
    let tail = c(r, 3) + c(t, 2) - (params.k * (params.d - params.delta)) as i64 - c(params.delta, 3);
    Exponent::from_halves(params.leading_halves()).plus(tail)
}

/// Bound on `|H^2(G, Z/p)|`: the multiplier bound times `p^d`.
pub fn exp_cor34(params: &PGroupParams) -> Exponent {
    exp_thm33(params).plus(params.d as i64)
}

pub fn exp_rai_thm14(params: &PGroupParams) -> Exponent {
    let upper = params.d.min(params.kprime + 1);
    Exponent::from_halves(params.leading_halves()).minus(descending_sum(params.d, upper))
}

pub fn exp_rai_ineq4(params: &PGroupParams) -> Exponent {
    let upper = params.delta.min(params.kprime + 1);
    let tail = (params.k * (params.d - params.delta)) as i64 + descending_sum(params.delta, upper);
    Exponent::from_halves(params.leading_halves()).minus(tail)
}

/// `(d-1)d(d+1)/3`, the bound for special groups with `|G'| = p^{C(d,2)}`.
pub fn exp_rai_special(d: u64) -> Result<Exponent> {
    if d < 3 {
        return Err(Error::InvalidParams(format!("need d >= 3 (d = {d})")));
    }
    Ok(Exponent::integer(((d - 1) * d * (d + 1) / 3) as i64))
}

fn check_thm38(p: u32, n: u64, d: u64, k: u64) -> Result<()> {
    if !is_prime(u64::from(p)) {
        return Err(Error::InvalidParams(format!("p = {p} is not prime")));
    }
    if n != d + k || d <= k + 1 || k <= 2 {
        return Err(Error::HypothesisViolated(format!(
            "need n = d + k, d > k + 1 and k > 2 (n = {n}, d = {d}, k = {k})"
        )));
    }
    Ok(())
}

/// Bound for special groups with `d > k + 1`, `k > 2`.
pub fn exp_thm38(p: u32, n: u64, d: u64, k: u64) -> Result<Exponent> {
    check_thm38(p, n, d, k)?;
    let leading = Exponent::from_halves(((d - 1) * (n + k)) as i64);
    Ok(leading.minus(descending_sum(d, k + 1) + (k as i64 - 2)))
}

pub fn exp_cor39(p: u32, n: u64, d: u64, k: u64) -> Result<Exponent> {
    Ok(exp_thm38(p, n, d, k)?.plus(d as i64))
}

/// Per-prime bounds for a group of coprime order whose Sylow subgroups have
/// the given parameters.
pub fn exp_thm35_product(factors: &[PGroupParams]) -> Result<Vec<(u32, Exponent)>> {
    let mut seen = Vec::new();
    for f in factors {
        if seen.contains(&f.p) {
            return Err(Error::DuplicatePrime(f.p));
        }
        seen.push(f.p);
    }
    Ok(factors.iter().map(|f| (f.p, exp_thm33(f))).collect())
}

/// The sharpened multiplier bound given the exact rank of the map on `G/Z(G)`.
pub fn exp_ew_chain(params: &PGroupParams, dim_psi_bar: u64) -> Exponent {
    let tail = (params.k * (params.d - params.delta) + dim_psi_bar) as i64;
    Exponent::from_halves(params.leading_halves()).minus(tail)
}

/// All bounds that apply to a parameter tuple, with their ordering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundComparison {
    pub params: PGroupParams,
    pub rt: RTDecomposition,
    pub thm33: Exponent,
    pub cor34: Exponent,
    pub rai_ineq4: Exponent,
    pub rai_thm14: Exponent,
    /// Present when `G` has the shape of a special group with `k = C(d,2)`.
    pub rai_special: Option<Exponent>,
    /// Present when `G` has the shape of a special group with `d > k+1 > 3`.
    pub thm38: Option<Exponent>,
    pub cor39: Option<Exponent>,
    pub thm33_le_ineq4: bool,
    pub ineq4_le_thm14: bool,
    /// `thm33 == rai_ineq4`, as happens when `delta = kprime + 1`.
    pub thm33_eq_ineq4: bool,
}

impl BoundComparison {
    /// The smallest effective exponent among all applicable bounds.
    pub fn best_effective(&self) -> i64 {
        [Some(self.thm33), Some(self.rai_ineq4), Some(self.rai_thm14), self.rai_special, self.thm38]
            .into_iter()
            .flatten()
            .map(|e| e.effective())
            .min()
            .expect("at least one bound")
    }
}

pub fn compare_report(params: &PGroupParams) -> Result<BoundComparison> {
    params.check()?;
    let thm33 = exp_thm33(params);
    let rai_ineq4 = exp_rai_ineq4(params);
    let rai_thm14 = exp_rai_thm14(params);
    let special_shape = params.d == params.delta && params.k == params.kprime && params.n == params.d + params.k;
    let rai_special = (special_shape && params.k == binomial(params.d, 2) && params.d >= 3)
        .then(|| exp_rai_special(params.d))
        .transpose()?;
    let thm38 = if special_shape && check_thm38(params.p, params.n, params.d, params.k).is_ok() {
        Some(exp_thm38(params.p, params.n, params.d, params.k)?)
    } else {
        None
    };
    let cor39 = thm38.map(|e| e.plus(params.d as i64));
    let report = BoundComparison {
        params: *params,
        rt: params.rt(),
        thm33,
        cor34: exp_cor34(params),
        rai_ineq4,
        rai_thm14,
        rai_special,
        thm38,
        cor39,
        thm33_le_ineq4: thm33 <= rai_ineq4,
        ineq4_le_thm14: rai_ineq4 <= rai_thm14,
        thm33_eq_ineq4: thm33 == rai_ineq4,
    };
    if !(report.thm33_le_ineq4 && report.ineq4_le_thm14) {
        return Err(Error::Internal(format!(
            "bound ordering violated for {params:?}: {thm33} / {rai_ineq4} / {rai_thm14}"
        )));
    }
    Ok(report)
}

/// Checks `C(delta,3) - C(r,3) - C(t,2) = sum_{i=2}^{kprime+1} (delta - i)`
/// where `C(delta,2) - kprime = C(r,2) + t`.
pub fn lemma37_check(delta: u64, kprime: u64) -> Result<bool> {
    if delta <= kprime + 1 {
        return Err(Error::HypothesisViolated(format!(
            "need delta > kprime + 1 (delta = {delta}, kprime = {kprime})"
        )));
    }
    let RTDecomposition { r, t, .. } = rt_decompose(binomial(delta, 2) - kprime);
    let lhs = c(delta, 3) - c(r, 3) - c(t, 2);
    Ok(lhs == descending_sum(delta, kprime + 1))
}

/// Every valid parameter tuple with `d <= max_d` and `n = d + k`, one per
/// `(p, d, delta, k, kprime)`; `k` ranges up to `max_k`.
pub fn parameter_grid(p: u32, max_d: u64, max_k: u64) -> Vec<PGroupParams> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        for delta in 2..=d {
            for k in 1..=max_k {
                for kprime in 1..=k.min(binomial(delta, 2)) {
                    out.push(PGroupParams {
                        p,
                        n: d + k,
                        d,
                        delta,
                        k,
                        kprime,
                    });
                }
            }
        }
    }
    out
}
