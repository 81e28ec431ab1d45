//! Finitely generated numerical semigroups.
//!
//! A [`NumericalSemigroup`] is built once from its generators by a sieve and
//! afterwards answers membership, gap and nongap queries in constant or
//! logarithmic time. Nongaps are indexed from 1 with `rho_1 = 0`, the
//! convention used by the Feng-Rao tables.

use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_all(xs: &[u64]) -> u64 {
    xs.iter().fold(0, |acc, &x| gcd(acc, x))
}

/// Upper bound on the conductor of `<gens>`.
///
/// Uses `(a-1)(b-1)` for the best coprime pair, falling back to Schur's bound
/// `(a_min-1)(a_max-1)` when no two generators are coprime.
fn conductor_bound(gens: &[u64]) -> u64 {
    let mut best: Option<u64> = None;
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            if gcd(a, b) == 1 {
                let bound = (a - 1) * (b - 1);
                best = Some(best.map_or(bound, |cur| cur.min(bound)));
            }
        }
    }
    best.unwrap_or_else(|| {
        let lo = gens[0];
        let hi = *gens.last().unwrap();
        (lo - 1) * (hi - 1)
    })
}

/// Membership table of `<gens>` on `0..=limit`.
fn sieve(gens: &[u64], limit: u64) -> Vec<bool> {
    let len = limit as usize + 1;
    let mut member = vec![false; len];
    member[0] = true;
    for x in 1..len {
        member[x] = gens
            .iter()
            .any(|&g| (g as usize) <= x && member[x - g as usize]);
    }
    member
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: u64,
    /// Sorted nongaps below `conductor + max(generators)`.
    nongaps: Vec<u64>,
    gaps: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        let mut generators: Vec<u64> = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() || generators[0] == 0 || gcd_all(&generators) != 1 {
            return Err(Error::BadGenerators(gens.to_vec()));
        }
        let bound = conductor_bound(&generators);
        let member = sieve(&generators, bound);
        let conductor = member
            .iter()
            .rposition(|&inside| !inside)
            .map_or(0, |last_gap| last_gap as u64 + 1);
        let gaps: Vec<u64> = (0..conductor).filter(|&x| !member[x as usize]).collect();
        let window = conductor + generators.last().copied().unwrap_or(0);
        let nongaps = (0..window)
            .filter(|&x| x >= conductor || member[x as usize])
            .collect();
        Ok(Self {
            generators,
            conductor,
            nongaps,
            gaps,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Smallest `c` with `[c, inf)` inside the semigroup.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, `None` for the whole of N.
    pub fn frobenius_number(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Cached nongaps, i.e. everything below `conductor + max(generators)`.
    pub fn nongaps(&self) -> &[u64] {
        &self.nongaps
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.conductor || self.gaps.binary_search(&x).is_err()
    }

    /// Nongaps in `[0, limit]`, ascending.
    pub fn nongaps_upto(&self, limit: u64) -> impl Iterator<Item = u64> + '_ {
        (0..=limit).filter(move |&x| self.contains(x))
    }

    /// `rho_l`, the `l`-th nongap (1-indexed, `rho_1 = 0`).
    pub fn nth_nongap(&self, l: u64) -> Result<u64> {
        if l == 0 {
            return Err(Error::OutOfRange {
                what: "nongap index",
                detail: "indices start at 1".into(),
            });
        }
        let below = self.conductor - self.genus();
        if l <= below {
            Ok(self.nongaps[(l - 1) as usize])
        } else {
            Ok(l - 1 + self.genus())
        }
    }

    /// Number of nongaps `<= x`.
    pub fn count_upto(&self, x: u64) -> u64 {
        let gaps_upto = self.gaps.partition_point(|&gap| gap <= x) as u64;
        x + 1 - gaps_upto
    }

    /// Index `l` with `rho_l = x`, or `None` when `x` is a gap.
    pub fn index_of(&self, x: u64) -> Option<u64> {
        self.contains(x).then(|| self.count_upto(x))
    }

    /// Symmetric means `2g - 1` is a gap. The trivial semigroup is reported
    /// as not symmetric.
    pub fn is_symmetric(&self) -> bool {
        let g = self.genus();
        g > 0 && !self.contains(2 * g - 1)
    }
}

/// Whether `x` lies in the semigroup spanned by `gens` (no gcd requirement).
fn spans(gens: &[u64], x: u64) -> bool {
    if x == 0 {
        return true;
    }
    let len = x as usize + 1;
    let mut reach = vec![false; len];
    reach[0] = true;
    for v in 1..len {
        reach[v] = gens
            .iter()
            .any(|&g| g != 0 && (g as usize) <= v && reach[v - g as usize]);
    }
    reach[x as usize]
}

/// Checks `a_i / d_i` lies in `<a_1/d_{i-1}, .., a_{i-1}/d_{i-1}>` for all
/// `i >= 2`, where `d_i = gcd(a_1, .., a_i)`.
pub fn is_telescopic(seq: &[u64]) -> bool {
    if seq.is_empty() || seq.contains(&0) || gcd_all(seq) != 1 {
        return false;
    }
    let mut prev_d = seq[0];
    for i in 1..seq.len() {
        let d = gcd(prev_d, seq[i]);
        let scaled: Vec<u64> = seq[..i].iter().map(|a| a / prev_d).collect();
        if !spans(&scaled, seq[i] / d) {
            return false;
        }
        prev_d = d;
    }
    true
}

/// Closed-form genus of a telescopic semigroup,
/// `(1 + sum_i (d_{i-1}/d_i - 1) a_i) / 2` with `d_0 = 0`.
pub fn telescopic_genus(seq: &[u64]) -> Result<u64> {
    if !is_telescopic(seq) {
        return Err(Error::NotTelescopic(seq.to_vec()));
    }
    let mut total: i128 = 1;
    let mut prev_d: u64 = 0;
    for &a in seq {
        let d = gcd(prev_d, a);
        total += ((prev_d / d) as i128 - 1) * a as i128;
        prev_d = d;
    }
    if total < 0 || total % 2 != 0 {
        return Err(Error::Consistency(format!(
            "telescopic genus numerator {total} for {seq:?}"
        )));
    }
    Ok((total / 2) as u64)
}
