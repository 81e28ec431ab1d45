//! Weierstrass semigroups at the `F_{q^2}`-rational points of GK(2, n).
//!
//! The rational points over `F_{q^2}` split into two automorphism orbits:
//! the `q + 1` points at infinity ([`Orbit::O1`]) and the `q^3 - q` affine
//! ones ([`Orbit::O2`]). Every identity that holds by theory (genus match,
//! gap set equality) is checked at construction and reported as
//! [`Error::Consistency`] on failure.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::CurveParams;
use crate::semigroup::{is_telescopic, telescopic_genus, NumericalSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Orbit {
    O1,
    O2,
}

impl std::fmt::Display for Orbit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Orbit::O1 => "O1",
            Orbit::O2 => "O2",
        })
    }
}

impl std::str::FromStr for Orbit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "O1" | "1" => Ok(Orbit::O1),
            "O2" | "2" => Ok(Orbit::O2),
            _ => Err(Error::InvalidParams(format!(
                "unknown orbit {s:?} (expected O1 or O2)"
            ))),
        }
    }
}

/// Largest semigroup sieve we are willing to run.
const SIEVE_LIMIT: u64 = 200_000_000;

/// Generator pole orders at `P_1`, in basis order: `mq + i(q^2 - q)` for
/// `i = 0..=s`, then `q^n + 1`.
pub fn o1_generators(params: &CurveParams) -> Vec<u64> {
    let base = params.m * params.q;
    let mut gens: Vec<u64> = (0..=params.s).map(|i| base + i * params.z_pole()).collect();
    gens.push(params.qn() + 1);
    gens
}

/// Generator pole orders at `R`, in basis order: `q^n + 1 - k` for
/// `k = 0..=s`, then `q^n + 1 - m`.
pub fn o2_generators(params: &CurveParams) -> Vec<u64> {
    let top = params.qn() + 1;
    let mut gens: Vec<u64> = (0..=params.s).map(|k| top - k).collect();
    gens.push(top - params.m);
    gens
}

pub fn generators(params: &CurveParams, orbit: Orbit) -> Vec<u64> {
    match orbit {
        Orbit::O1 => o1_generators(params),
        Orbit::O2 => o2_generators(params),
    }
}

fn checked_semigroup(
    params: &CurveParams,
    gens: &[u64],
    label: &str,
) -> Result<NumericalSemigroup> {
    let mut sorted = gens.to_vec();
    sorted.sort_unstable();
    if sorted[0].saturating_mul(sorted[sorted.len() - 1]) > SIEVE_LIMIT {
        return Err(Error::TooLarge(format!(
            "semigroup sieve for q={}, n={} exceeds {SIEVE_LIMIT} entries",
            params.q, params.n
        )));
    }
    let s = NumericalSemigroup::from_generators(gens)?;
    if s.genus() != params.genus {
        return Err(Error::Consistency(format!(
            "genus of {label} is {} but g = {} for q={}, n={}",
            s.genus(),
            params.genus,
            params.q,
            params.n
        )));
    }
    Ok(s)
}

/// `H(P)` for `P` in the orbit at infinity.
pub fn weierstrass_o1(params: &CurveParams) -> Result<NumericalSemigroup> {
    checked_semigroup(params, &o1_generators(params), "H(P1)")
}

/// `H(R)` for `R` an affine `F_{q^2}`-rational point.
pub fn weierstrass_o2(params: &CurveParams) -> Result<NumericalSemigroup> {
    checked_semigroup(params, &o2_generators(params), "H(R)")
}

pub fn weierstrass(params: &CurveParams, orbit: Orbit) -> Result<NumericalSemigroup> {
    match orbit {
        Orbit::O1 => weierstrass_o1(params),
        Orbit::O2 => weierstrass_o2(params),
    }
}

/// Gap set at `R` from the valuations of the holomorphic differentials
/// `z^k (y - a)^j x^l dz`:
/// `{k + (q^n+1) j + l m + 1}` over `0 <= k < m`, `0 <= l <= q`,
/// `0 <= j <= q^2 - 2` with `k(q^2-q) + (j+l) m <= pole_budget`.
///
/// Fails with [`Error::Consistency`] if two triples collide, if the size is
/// not `g`, or if the set differs from the gaps of [`weierstrass_o2`].
pub fn gap_set_l(params: &CurveParams) -> Result<Vec<u64>> {
    let (q, m) = (params.q, params.m);
    let top = params.qn() + 1;
    let mut values = Vec::new();
    for j in 0..=q * q - 2 {
        for l in 0..=q {
            for k in 0..m {
                if k * params.z_pole() + (j + l) * m <= params.pole_budget {
                    values.push(k + top * j + l * m + 1);
                }
            }
        }
    }
    let total = values.len();
    values.sort_unstable();
    values.dedup();
    if values.len() != total {
        return Err(Error::Consistency(format!(
            "{} colliding valuations in the differential basis",
            total - values.len()
        )));
    }
    if values.len() as u64 != params.genus {
        return Err(Error::Consistency(format!(
            "|L| = {} but g = {}",
            values.len(),
            params.genus
        )));
    }
    let h2 = weierstrass_o2(params)?;
    if h2.gaps() != values.as_slice() {
        return Err(Error::Consistency(
            "L differs from the gap set of H(R)".into(),
        ));
    }
    Ok(values)
}

/// Largest `k` admissible in [`gap_set_l`] for a given `t = j + l`.
pub fn k_max(params: &CurveParams, t: u64) -> Result<u64> {
    let q = params.q;
    if t >= q * q - 1 {
        return Err(Error::OutOfRange {
            what: "j + l",
            detail: format!("{t} >= q^2 - 1 = {} admits no k", q * q - 1),
        });
    }
    if t < q - 1 {
        Ok(params.m - 1)
    } else {
        Ok(params.m - 1 - (params.s * (t + 1 - q) + 1))
    }
}

fn mod_inverse(a: i128, modulus: i128) -> Option<i128> {
    let (mut old_r, mut r) = (a.rem_euclid(modulus), modulus);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(modulus))
}

/// Unique `(a, b, c)` with `x = a(mq) + b(q^2 - q) + c(q^n + 1)`,
/// `0 <= b < m`, `0 <= c < q`. `a` may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CanonicalRep {
    pub a: i64,
    pub b: u64,
    pub c: u64,
}

impl CanonicalRep {
    /// Membership in `<mq, mq + q^2 - q, q^n + 1>`.
    pub fn in_telescopic(&self) -> bool {
        self.a >= self.b as i64
    }
}

pub fn canonical_rep(params: &CurveParams, x: u64) -> CanonicalRep {
    let (q, m) = (params.q as i128, params.m as i128);
    let x = x as i128;
    let step = params.z_pole() as i128;
    let top = params.qn() as i128 + 1;
    // gcd(q^2 - q, m) = 1 because m = 1 mod q and m = 1 mod (q - 1)
    let inv = mod_inverse(step, m).expect("q^2 - q is invertible mod m");
    let b = (x.rem_euclid(m) * inv).rem_euclid(m);
    let c = x.rem_euclid(q);
    let rest = x - b * step - c * top;
    debug_assert_eq!(rest.rem_euclid(m * q), 0);
    CanonicalRep {
        a: (rest / (m * q)) as i64,
        b: b as u64,
        c: c as u64,
    }
}

/// The telescopic sub-semigroup `<mq, mq + q^2 - q, q^n + 1>` used to count
/// the genus of `H(P_1)`.
pub fn telescopic_subsemigroup(params: &CurveParams) -> [u64; 3] {
    let mq = params.m * params.q;
    [mq, mq + params.z_pole(), params.qn() + 1]
}

/// Closed form of the genus of [`telescopic_subsemigroup`].
pub fn telescopic_subsemigroup_genus(params: &CurveParams) -> u64 {
    let (q, m) = (params.q as i128, params.m as i128);
    let qn = params.qn() as i128;
    let twice = q * (m * m - 3 * m + 2) + q * q * (m - 1) - qn + qn * q;
    (twice / 2) as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionBlock {
    /// `"i"` for the first family, `"j"` for the second.
    pub family: &'static str,
    pub index: u64,
    pub size: u64,
    pub expected_size: u64,
}

/// Outcome of checking that `H(P_1) \ S` splits into the blocks `S_i`, `S_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub q: u64,
    pub n: u32,
    pub telescopic: bool,
    pub s_genus: u64,
    pub s_genus_closed_form: u64,
    pub blocks: Vec<PartitionBlock>,
    pub removed: u64,
    pub remaining: u64,
    pub genus: u64,
    pub subset_ok: bool,
    pub disjoint_ok: bool,
    pub sizes_ok: bool,
    pub genus_ok: bool,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.telescopic && self.subset_ok && self.disjoint_ok && self.sizes_ok && self.genus_ok
    }
}

/// Builds `S`, the blocks
/// `S_i = {i mq + (i + k1)(q^2-q) + k3 (q^n+1)}` (`1 <= i < q^2-q`,
/// `1 <= k1 <= is - i`) and
/// `S_j = {j mq + (j + k2)(q^2-q) + k3 (q^n+1)}` (`q^2-q <= j < (q^2-q)s`,
/// `1 <= k2 <= (q^2-q)s - j`), `0 <= k3 < q`, and checks containment in
/// `H(P_1) \ S`, disjointness, cardinalities and `g(S) - sum |blocks| = g`.
pub fn verify_partition(params: &CurveParams) -> Result<PartitionReport> {
    let h1 = weierstrass_o1(params)?;
    let seq = telescopic_subsemigroup(params);
    let sub = NumericalSemigroup::from_generators(&seq)?;
    let telescopic = is_telescopic(&seq);
    let closed = telescopic_subsemigroup_genus(params);
    if telescopic && telescopic_genus(&seq)? != sub.genus() {
        return Err(Error::Consistency(
            "telescopic genus formula disagrees with sieve".into(),
        ));
    }

    let (q, s) = (params.q, params.s);
    let mq = params.m * q;
    let step = params.z_pole();
    let top = params.qn() + 1;

    let mut blocks = Vec::new();
    let mut union = BTreeSet::new();
    let mut members_total = 0u64;
    let mut subset_ok = true;
    let mut sizes_ok = true;

    let mut push_block = |family: &'static str, index: u64, last: u64, expected: u64| {
        let mut block = BTreeSet::new();
        for k in 1..=last {
            for k3 in 0..q {
                block.insert(index * mq + (index + k) * step + k3 * top);
            }
        }
        for &x in &block {
            if !h1.contains(x) || sub.contains(x) {
                subset_ok = false;
            }
        }
        let size = block.len() as u64;
        sizes_ok &= size == expected;
        members_total += size;
        union.extend(block);
        blocks.push(PartitionBlock {
            family,
            index,
            size,
            expected_size: expected,
        });
    };

    for i in 1..step {
        let last = i * s - i;
        push_block("i", i, last, last * q);
    }
    for j in step..step * s {
        let last = step * s - j;
        push_block("j", j, last, last * q);
    }

    let removed = union.len() as u64;
    let disjoint_ok = removed == members_total;
    let remaining = sub.genus().saturating_sub(removed);
    Ok(PartitionReport {
        q,
        n: params.n,
        telescopic,
        s_genus: sub.genus(),
        s_genus_closed_form: closed,
        blocks,
        removed,
        remaining,
        genus: params.genus,
        subset_ok,
        disjoint_ok,
        sizes_ok: sizes_ok && closed == sub.genus(),
        genus_ok: sub.genus() >= removed && remaining == params.genus && h1.genus() == params.genus,
    })
}

/// Frobenius dimension `r = (m - 1)/(q^2 - q) + 2` of GK(2, n), `n >= 5`.
pub fn frobenius_dim_gk2(params: &CurveParams) -> Result<u64> {
    if params.n < 5 {
        return Err(Error::NotApplicable(format!(
            "the Frobenius dimension formula for GK(2, n) needs n >= 5 (got n = {})",
            params.n
        )));
    }
    Ok(params.s + 2)
}

/// Frobenius dimension of GK(1, n):
/// `r' = q^{n-3} + sum_{i=2}^{n-2} (-1)^{i+1} q^i + 1`.
pub fn frobenius_dim_gk1(params: &CurveParams) -> i128 {
    let q = params.q as i128;
    let n = params.n;
    let alternating: i128 = (2..=n.saturating_sub(2))
        .map(|i| if i % 2 == 1 { q.pow(i) } else { -q.pow(i) })
        .sum();
    q.pow(n - 3) + alternating + 1
}

/// Frobenius dimension read off a Weierstrass semigroup: the number of
/// nongaps in `[0, q^n]`.
pub fn frobenius_dim_from_semigroup(params: &CurveParams, semigroup: &NumericalSemigroup) -> u64 {
    semigroup.count_upto(params.qn())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Isomorphism {
    /// Frobenius dimensions differ, so the curves are not isomorphic.
    NotIsomorphic { gk1: i128, gk2: u64 },
    /// Equal invariants; the comparison is inconclusive.
    Inconclusive { gk1: i128, gk2: u64 },
    /// `n = 3`: the dimension formula does not apply.
    NotApplicable,
}

impl Isomorphism {
    pub fn distinct(&self) -> Option<bool> {
        match self {
            Isomorphism::NotIsomorphic { .. } => Some(true),
            Isomorphism::Inconclusive { .. } => Some(false),
            Isomorphism::NotApplicable => None,
        }
    }
}

/// Compares the Frobenius dimensions of GK(1, n) and GK(2, n).
pub fn non_isomorphism_check(params: &CurveParams) -> Isomorphism {
    match frobenius_dim_gk2(params) {
        Err(_) => Isomorphism::NotApplicable,
        Ok(gk2) => {
            let gk1 = frobenius_dim_gk1(params);
            if gk1 != gk2 as i128 {
                Isomorphism::NotIsomorphic { gk1, gk2 }
            } else {
                Isomorphism::Inconclusive { gk1, gk2 }
            }
        }
    }
}
