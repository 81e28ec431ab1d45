use serde::Serialize;

use crate::error::{Error, Result};

/// Factor a prime power `q = p^e`. Returns `None` if `q` is not one.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::InvalidParams(format!("{base}^{exp} overflows")))
}

/// Curve parameters `(q, n)` together with every derived scalar.
///
/// * `m = (q^n + 1) / (q + 1)`, the Kummer degree,
/// * `s = (m - 1) / (q^2 - q)`,
/// * `genus = (q - 1)(q^{n+1} + q^n - q^2) / 2`,
/// * `rational_points = q^{2n} + 1 + 2 g q^n`,
/// * `pole_budget = q^{n+1} - q^n - q^2 + 2q - 2 = (2g - 2)/(q + 1)`, the
///   multiplicity of each point at infinity in the divisor of `dz`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveParams {
    pub q: u64,
    pub n: u32,
    /// Characteristic and exponent with `q = p^e`.
    pub p: u64,
    pub e: u32,
    pub m: u64,
    pub s: u64,
    pub genus: u64,
    pub rational_points: u64,
    pub pole_budget: u64,
}

impl CurveParams {
    pub fn new(q: u64, n: u32) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidParams(format!("q = {q} is not a prime power")))?;
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "n = {n} must be odd and >= 3"
            )));
        }
        let qn = pow(q, n)?;
        let qn1 = pow(q, n + 1)?;
        let q2 = q * q;
        if (qn + 1) % (q + 1) != 0 {
            return Err(Error::Consistency(format!(
                "q + 1 does not divide q^n + 1 for q={q}, n={n}"
            )));
        }
        let m = (qn + 1) / (q + 1);
        if !(m - 1).is_multiple_of(q2 - q) {
            return Err(Error::Consistency(format!(
                "q^2 - q does not divide m - 1 for q={q}, n={n}"
            )));
        }
        let s = (m - 1) / (q2 - q);
        let genus = (q - 1)
            .checked_mul(qn1 + qn - q2)
            .ok_or_else(|| Error::InvalidParams("genus overflows".into()))?
            / 2;
        let rational_points = pow(q, 2 * n)?
            .checked_add(1)
            .and_then(|v| v.checked_add(2u64.checked_mul(genus)?.checked_mul(qn)?))
            .ok_or_else(|| Error::InvalidParams("point count overflows".into()))?;
        let pole_budget = qn1 - qn - q2 + 2 * q - 2;
        if (q + 1) * pole_budget != 2 * genus - 2 {
            return Err(Error::Consistency(format!(
                "(q+1) * {pole_budget} != 2g - 2 = {}",
                2 * genus - 2
            )));
        }
        Ok(Self {
            q,
            n,
            p,
            e,
            m,
            s,
            genus,
            rational_points,
            pole_budget,
        })
    }

    /// `q^n`.
    pub fn qn(&self) -> u64 {
        self.q.pow(self.n)
    }

    /// `q^2 - q`, the pole order of `z` at each point at infinity.
    pub fn z_pole(&self) -> u64 {
        self.q * self.q - self.q
    }

    /// Length of the one-point codes: all rational points but the base point.
    pub fn code_length(&self) -> u64 {
        self.rational_points - 1
    }

    /// Extension degree of `F_{q^{2n}}` over its prime field.
    pub fn field_degree(&self) -> u32 {
        2 * self.n * self.e
    }
}
