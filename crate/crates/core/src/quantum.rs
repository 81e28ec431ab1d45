//! Parameter ranges of CSS quantum codes built from nested dual one-point
//! codes `C_{l+s} ⊂ C_l`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fengrao::{d_ord, OrderBound};
use crate::gk2::Orbit;
use crate::params::CurveParams;
use crate::reference;
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `l in [3g - 1, N - g]`: `D >= l + 1 - g`.
    Tail,
    /// `l in [g, 3g - 1]`: `D >= d_ord(C_l)`.
    Intermediate,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Tail => "tail",
            Regime::Intermediate => "intermediate",
        })
    }
}

/// `[[N, s, D]]` codes exist for every `s` in `[s_min, s_max]`, with
/// `D >= d_floor`. Bounds are signed because `s_max` can go negative near
/// `l = N - g`; such a range is `empty`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantumRange {
    pub length: u64,
    pub l: u64,
    pub d_floor: u64,
    pub s_min: i64,
    pub s_max: i64,
    pub regime: Regime,
    pub empty: bool,
    /// Set when a published table row for the same `l` disagrees.
    pub discrepancy: Option<String>,
}

impl QuantumRange {
    fn new(length: u64, l: u64, d_floor: u64, s_min: i64, s_max: i64, regime: Regime) -> Self {
        Self {
            length,
            l,
            d_floor,
            s_min,
            s_max,
            regime,
            empty: s_min > s_max,
            discrepancy: None,
        }
    }

    /// Compares against the reference table for `orbit` (only `q = 2, n = 5`
    /// has one) and records any difference.
    pub fn with_reference(mut self, params: &CurveParams, orbit: Orbit) -> Self {
        if (params.q, params.n) != (2, 5) {
            return self;
        }
        if let Some(published) = reference::quantum_row(orbit, self.l) {
            let mut notes = Vec::new();
            if published.d_ord != self.d_floor {
                notes.push(format!(
                    "d_ord: table {} vs computed {}",
                    published.d_ord, self.d_floor
                ));
            }
            if published.s_min != self.s_min {
                notes.push(format!(
                    "s_min: table {} vs computed {}",
                    published.s_min, self.s_min
                ));
            }
            if published.s_max != self.s_max {
                notes.push(format!(
                    "s_max: table {} vs computed {}",
                    published.s_max, self.s_max
                ));
            }
            if !notes.is_empty() {
                self.discrepancy = Some(notes.join("; "));
            }
        }
        self
    }
}

fn signed(x: u64) -> i64 {
    i64::try_from(x).expect("code parameters fit in i64")
}

/// Range for `l in [3g - 1, N - g]`: `s in [1, N - 2l]`, `D >= l + 1 - g`.
pub fn range_tail(params: &CurveParams, l: u64) -> Result<QuantumRange> {
    let (g, n) = (params.genus, params.code_length());
    let lo = (3 * g).saturating_sub(1);
    if l < lo || l + g > n {
        return Err(Error::OutOfRange {
            what: "l",
            detail: format!("{l} not in [{lo}, {}]", n.saturating_sub(g)),
        });
    }
    Ok(QuantumRange::new(
        n,
        l,
        l + 1 - g,
        1,
        signed(n) - 2 * signed(l),
        Regime::Tail,
    ))
}

/// Range for `l in [g, 3g - 1]`:
/// `s in [max(2g - l, 1), min(N - 2l, N - l - g + 1 - d_ord(C_l))]`,
/// `D >= d_ord(C_l)`.
pub fn range_intermediate(
    params: &CurveParams,
    semigroup: &NumericalSemigroup,
    l: u64,
) -> Result<QuantumRange> {
    intermediate_with(params, l, || d_ord(semigroup, l))
}

fn intermediate_with(
    params: &CurveParams,
    l: u64,
    floor: impl FnOnce() -> Result<u64>,
) -> Result<QuantumRange> {
    let (g, n) = (params.genus, params.code_length());
    let hi = (3 * g).saturating_sub(1);
    if l < g || l > hi {
        return Err(Error::OutOfRange {
            what: "l",
            detail: format!("{l} not in [{g}, {hi}]"),
        });
    }
    let d = floor()?;
    let (g, n, l_s) = (signed(g), signed(n), signed(l));
    let s_min = (2 * g - l_s).max(1);
    let s_max = (n - 2 * l_s).min(n - l_s - g + 1 - signed(d));
    Ok(QuantumRange::new(
        n as u64,
        l,
        d,
        s_min,
        s_max,
        Regime::Intermediate,
    ))
}

/// Chooses the regime by `l`: intermediate up to `3g - 1`, tail beyond.
pub fn range(params: &CurveParams, semigroup: &NumericalSemigroup, l: u64) -> Result<QuantumRange> {
    if l < 3 * params.genus {
        range_intermediate(params, semigroup, l)
    } else {
        range_tail(params, l)
    }
}

pub fn table(
    params: &CurveParams,
    orbit: Orbit,
    semigroup: &NumericalSemigroup,
    ls: &[u64],
) -> Result<Vec<QuantumRange>> {
    let bound = OrderBound::new(semigroup)?;
    crate::par_map(ls, |&l| {
        let r = if l < 3 * params.genus {
            intermediate_with(params, l, || bound.at(l))
        } else {
            range_tail(params, l)
        };
        r.map(|r| r.with_reference(params, orbit))
    })
    .into_iter()
    .collect()
}

/// Dimensions `(k2, k1)` of `C_l ⊃ C_{l+s}`: `k2 = N - h(rho_l)`,
/// `k1 = N - h(rho_{l+s})` with `h(x)` the number of nongaps `<= x`.
/// Fails if `k2 - k1 != s`.
pub fn css_dimensions(
    params: &CurveParams,
    semigroup: &NumericalSemigroup,
    l: u64,
    s: u64,
) -> Result<(u64, u64)> {
    let n = params.code_length();
    let h_small = semigroup.count_upto(semigroup.nth_nongap(l)?);
    let h_big = semigroup.count_upto(semigroup.nth_nongap(l + s)?);
    if h_big > n {
        return Err(Error::OutOfRange {
            what: "l + s",
            detail: format!("{} exceeds the code length {n}", l + s),
        });
    }
    let (k2, k1) = (n - h_small, n - h_big);
    if k2 - k1 != s {
        return Err(Error::Consistency(format!(
            "k2 - k1 = {} but s = {s}",
            k2 - k1
        )));
    }
    Ok((k2, k1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gk2::{weierstrass_o1, weierstrass_o2};

    fn c25() -> CurveParams {
        CurveParams::new(2, 5).unwrap()
    }

    #[test]
    fn tail_examples() {
        let r = range_tail(&c25(), 137).unwrap();
        assert_eq!((r.s_min, r.s_max, r.d_floor), (1, 3694, 92));
        let c = CurveParams::new(2, 3).unwrap();
        let r = range_tail(&c, 29).unwrap();
        assert_eq!((r.s_min, r.s_max, r.d_floor), (1, 166, 20));
        let edge = range_tail(&c25(), 3968 - 46).unwrap();
        assert!(edge.empty);
        assert!(range_tail(&c25(), 136).is_err());
        assert!(range_tail(&c25(), 3968 - 45).is_err());
    }

    #[test]
    fn intermediate_examples() {
        let c = c25();
        let h1 = weierstrass_o1(&c).unwrap();
        let r = range_intermediate(&c, &h1, 46)
            .unwrap()
            .with_reference(&c, Orbit::O1);
        assert_eq!((r.d_floor, r.s_min, r.s_max), (6, 46, 3871));
        assert!(r
            .discrepancy
            .as_deref()
            .unwrap()
            .contains("s_min: table 47"));

        let h2 = weierstrass_o2(&c).unwrap();
        let r = range_intermediate(&c, &h2, 104)
            .unwrap()
            .with_reference(&c, Orbit::O2);
        assert_eq!((r.d_floor, r.s_min, r.s_max), (58, 1, 3760));
        assert_eq!(r.discrepancy, None);
        assert!(range_intermediate(&c, &h2, 45).is_err());
        assert!(range_intermediate(&c, &h2, 138).is_err());
    }

    #[test]
    fn regime_floors_at_boundary() {
        let c = c25();
        for s in [weierstrass_o1(&c).unwrap(), weierstrass_o2(&c).unwrap()] {
            let l = 3 * c.genus - 1;
            let a = range_intermediate(&c, &s, l).unwrap();
            let b = range_tail(&c, l).unwrap();
            // the order bound includes nu_l itself, the tail floor does not
            assert_eq!(a.d_floor + 1, b.d_floor);
        }
    }

    #[test]
    fn css_dimension_arithmetic() {
        let c = c25();
        let s = weierstrass_o2(&c).unwrap();
        for l in [1, 10, 46, 90, 137, 500] {
            for step in [1, 5, 40] {
                let (k2, k1) = css_dimensions(&c, &s, l, step).unwrap();
                assert_eq!(k2, 3968 - l);
                assert_eq!(k2 - k1, step);
            }
        }
    }
}
