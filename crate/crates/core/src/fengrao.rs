//! Feng–Rao function and order-bound distances of dual one-point codes.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::CurveParams;
use crate::semigroup::NumericalSemigroup;

/// Number of ordered pairs of nongaps `(a, b)` with `a + b = rho`.
pub fn nu_at(semigroup: &NumericalSemigroup, rho: u64) -> u64 {
    semigroup
        .nongaps_upto(rho)
        .filter(|&a| semigroup.contains(rho - a))
        .count() as u64
}

/// `nu_l`: ordered nongap pairs summing to the `l`-th nongap.
pub fn nu(semigroup: &NumericalSemigroup, l: u64) -> Result<u64> {
    Ok(nu_at(semigroup, semigroup.nth_nongap(l)?))
}

/// Order bound `min { nu_m : m >= l }`.
///
/// Scans `m = l, l+1, ...` until `rho_m + 1 >= 4g`. From there on
/// `nu_m = rho_m + 1 - 2g = m - g`, increasing in `m`, so the scan can stop.
/// Note the minimum includes `m = l` itself; in the tail this gives `l - g`,
/// one less than the Goppa bound `l + 1 - g` for the same code.
pub fn d_ord(semigroup: &NumericalSemigroup, l: u64) -> Result<u64> {
    if l == 0 {
        return Err(Error::OutOfRange {
            what: "code index",
            detail: "indices start at 1".into(),
        });
    }
    let g = semigroup.genus();
    let mut best = u64::MAX;
    let mut m = l;
    loop {
        let rho = semigroup.nth_nongap(m)?;
        if rho + 1 >= 4 * g {
            return Ok(best.min(m - g));
        }
        best = best.min(nu_at(semigroup, rho));
        m += 1;
    }
}

/// `d_ord` for every index, from one pass over the `nu` values below the
/// `4g` cutoff. Use this instead of repeated [`d_ord`] calls.
#[derive(Debug, Clone)]
pub struct OrderBound {
    genus: u64,
    /// First index `m` with `rho_m + 1 >= 4g`.
    cutoff: u64,
    /// `suffix[i] = min { nu_m : i + 1 <= m < cutoff }`, capped by `cutoff - g`.
    suffix: Vec<u64>,
}

impl OrderBound {
    pub fn new(semigroup: &NumericalSemigroup) -> Result<Self> {
        let g = semigroup.genus();
        let mut nus = Vec::new();
        let mut m = 1;
        loop {
            let rho = semigroup.nth_nongap(m)?;
            if rho + 1 >= 4 * g {
                break;
            }
            nus.push(rho);
            m += 1;
        }
        let cutoff = m;
        let mut nus: Vec<u64> = crate::par_map(&nus, |&rho| nu_at(semigroup, rho));
        let mut run = cutoff - g;
        for v in nus.iter_mut().rev() {
            run = run.min(*v);
            *v = run;
        }
        Ok(OrderBound {
            genus: g,
            cutoff,
            suffix: nus,
        })
    }

    pub fn at(&self, l: u64) -> Result<u64> {
        if l == 0 {
            return Err(Error::OutOfRange {
                what: "code index",
                detail: "indices start at 1".into(),
            });
        }
        Ok(if l < self.cutoff {
            self.suffix[(l - 1) as usize]
        } else {
            l - self.genus
        })
    }
}

/// One row of the parameter table of `C_l`, the dual of the one-point code
/// `C(D, rho_l P)` with `D` all rational points but `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeTableRow {
    /// Code length `N`.
    pub length: u64,
    pub l: u64,
    /// Dimension `k = N - l`.
    pub dim: u64,
    pub rho: u64,
    pub nu: u64,
    pub d_ord: u64,
}

pub fn row(semigroup: &NumericalSemigroup, length: u64, l: u64) -> Result<CodeTableRow> {
    row_with(semigroup, None, length, l)
}

fn row_with(
    semigroup: &NumericalSemigroup,
    bound: Option<&OrderBound>,
    length: u64,
    l: u64,
) -> Result<CodeTableRow> {
    if l == 0 || l >= length {
        return Err(Error::OutOfRange {
            what: "code index",
            detail: format!("l = {l} not in [1, {}]", length.saturating_sub(1)),
        });
    }
    let rho = semigroup.nth_nongap(l)?;
    Ok(CodeTableRow {
        length,
        l,
        dim: length - l,
        rho,
        nu: nu_at(semigroup, rho),
        d_ord: match bound {
            Some(b) => b.at(l)?,
            None => d_ord(semigroup, l)?,
        },
    })
}

/// Rows for every `l` in `range`, with `N = rational_points - 1`.
pub fn table(
    semigroup: &NumericalSemigroup,
    params: &CurveParams,
    range: RangeInclusive<u64>,
) -> Result<Vec<CodeTableRow>> {
    let length = params.code_length();
    let ls: Vec<u64> = range.collect();
    let bound = OrderBound::new(semigroup)?;
    crate::par_map(&ls, |&l| row_with(semigroup, Some(&bound), length, l))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gk2::{weierstrass_o1, weierstrass_o2};

    fn h1() -> NumericalSemigroup {
        weierstrass_o1(&CurveParams::new(2, 5).unwrap()).unwrap()
    }

    fn h2() -> NumericalSemigroup {
        weierstrass_o2(&CurveParams::new(2, 5).unwrap()).unwrap()
    }

    #[test]
    fn nu_values() {
        let s = h1();
        assert_eq!(nu_at(&s, 44), 3);
        assert_eq!(nu(&s, 1).unwrap(), 1);
        assert_eq!(nu_at(&h2(), 50), 4);
    }

    #[test]
    fn d_ord_values() {
        let s = h1();
        assert_eq!(d_ord(&s, s.index_of(46).unwrap()).unwrap(), 3);
        assert_eq!(d_ord(&s, s.index_of(98).unwrap()).unwrap(), 8);
        let r = h2();
        assert_eq!(d_ord(&r, r.index_of(183).unwrap()).unwrap(), 92);
    }

    #[test]
    fn table_rows() {
        let c = CurveParams::new(2, 5).unwrap();
        let s = h1();
        let rows = table(&s, &c, 1..=140).unwrap();
        let at = |rho| *rows.iter().find(|r| r.rho == rho).unwrap();
        assert_eq!((at(65).dim, at(65).nu, at(65).d_ord), (3943, 4, 4));
        assert_eq!((at(0).dim, at(0).nu, at(0).d_ord), (3967, 1, 1));
        let r = h2();
        let rows = table(&r, &c, 1..=140).unwrap();
        let at = |rho| *rows.iter().find(|r| r.rho == rho).unwrap();
        assert_eq!((at(100).dim, at(100).nu, at(100).d_ord), (3913, 9, 9));
    }

    #[test]
    fn order_bound_matches_scan() {
        for s in [h1(), h2()] {
            let b = OrderBound::new(&s).unwrap();
            for l in 1..200 {
                assert_eq!(b.at(l).unwrap(), d_ord(&s, l).unwrap(), "l = {l}");
            }
        }
    }

    #[test]
    fn limit_law_and_monotonicity() {
        for s in [h1(), h2()] {
            let g = s.genus();
            let mut prev = 0;
            for l in 1..300 {
                let d = d_ord(&s, l).unwrap();
                assert!(d >= prev);
                assert!(d <= nu(&s, l).unwrap());
                if s.nth_nongap(l).unwrap() + 1 >= 4 * g {
                    assert_eq!(d, l - g);
                    assert_eq!(nu(&s, l).unwrap(), l - g);
                }
                prev = d;
            }
        }
    }

    #[test]
    fn brute_force_nu() {
        let s = h2();
        for l in 1..120 {
            let rho = s.nth_nongap(l).unwrap();
            let ng: Vec<u64> = (0..=rho).filter(|&x| s.contains(x)).collect();
            let pairs = ng
                .iter()
                .flat_map(|&a| ng.iter().map(move |&b| a + b))
                .filter(|&t| t == rho)
                .count() as u64;
            assert_eq!(nu(&s, l).unwrap(), pairs);
        }
    }

    #[test]
    fn rejects_bad_index() {
        let s = h1();
        assert!(d_ord(&s, 0).is_err());
        assert!(row(&s, 3968, 3968).is_err());
    }
}
