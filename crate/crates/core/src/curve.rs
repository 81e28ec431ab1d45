//! Rational points of GK(2, n) over `F_{q^{2n}}` and one-point evaluation codes.
//!
//! Affine model: `y^{q+1} = x^{q+1} - 1`, `z^m = y (x^{q^2} - x) / (x^{q+1} - 1)`.
//! Where `x^{q+1} = 1` the right-hand side is `0/0`; those fibres carry the
//! single point `(x, 0, 0)`. The `q + 1` points at infinity are
//! `(1 : a : 0 : 0)` with `a^{q+1} = 1`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{make_field, GfContext, GfElement};
use crate::gk2::{generators, weierstrass, Orbit};
use crate::params::CurveParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    O1,
    O2,
    Generic,
}

impl PointClass {
    pub fn orbit(self) -> Option<Orbit> {
        match self {
            PointClass::O1 => Some(Orbit::O1),
            PointClass::O2 => Some(Orbit::O2),
            PointClass::Generic => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Coordinates {
    Affine {
        x: GfElement,
        y: GfElement,
        z: GfElement,
    },
    Infinity {
        a: GfElement,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CurvePoint {
    pub coords: Coordinates,
    pub class: PointClass,
}

impl CurvePoint {
    pub fn affine(x: GfElement, y: GfElement, z: GfElement) -> Self {
        Self {
            coords: Coordinates::Affine { x, y, z },
            class: PointClass::Generic,
        }
    }

    pub fn infinity(a: GfElement) -> Self {
        Self {
            coords: Coordinates::Infinity { a },
            class: PointClass::O1,
        }
    }

    /// Ordering key: affine points by `(x, y, z)` codes, then infinity by `a`.
    fn sort_key(&self) -> (u8, u32, u32, u32) {
        match self.coords {
            Coordinates::Affine { x, y, z } => (0, x.code(), y.code(), z.code()),
            Coordinates::Infinity { a } => (1, a.code(), 0, 0),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords {
            Coordinates::Affine { x, y, z } => write!(f, "({x}, {y}, {z})"),
            Coordinates::Infinity { a } => write!(f, "(1 : {a} : 0 : 0)"),
        }
    }
}

fn check_field(params: &CurveParams, ctx: &GfContext) -> Result<()> {
    if ctx.characteristic() as u64 != params.p || ctx.degree() != params.field_degree() {
        return Err(Error::InvalidParams(format!(
            "field F_{}^{} does not match F_{{q^2n}} for q={}, n={}",
            ctx.characteristic(),
            ctx.degree(),
            params.q,
            params.n
        )));
    }
    Ok(())
}

/// `F_{q^{2n}}` for the given parameters.
pub fn curve_field(params: &CurveParams) -> Result<GfContext> {
    make_field(params.p, params.field_degree())
}

/// Whether an affine triple satisfies both curve equations, the second in the
/// cleared form `z^m (x^{q+1} - 1) = y (x^{q^2} - x)`.
pub fn on_curve(
    params: &CurveParams,
    ctx: &GfContext,
    x: GfElement,
    y: GfElement,
    z: GfElement,
) -> bool {
    let q = params.q;
    let xq1 = ctx.pow(x, q + 1);
    let first = ctx.pow(y, q + 1) == ctx.sub(xq1, ctx.one());
    let lhs = ctx.mul(ctx.pow(z, params.m), ctx.sub(xq1, ctx.one()));
    let rhs = ctx.mul(y, ctx.sub(ctx.pow(x, q * q), x));
    first && lhs == rhs
}

fn points_over(params: &CurveParams, ctx: &GfContext, x: GfElement) -> Vec<CurvePoint> {
    let q = params.q;
    let xq1 = ctx.pow(x, q + 1);
    if xq1 == ctx.one() {
        return vec![CurvePoint::affine(x, GfElement::ZERO, GfElement::ZERO)];
    }
    let denom = ctx.sub(xq1, ctx.one());
    let trace_part = ctx.sub(ctx.pow(x, q * q), x);
    let mut out = Vec::new();
    for y in ctx.nth_roots(denom, q + 1) {
        let w = ctx
            .div(ctx.mul(y, trace_part), denom)
            .expect("denominator is nonzero");
        for z in ctx.nth_roots(w, params.m) {
            out.push(CurvePoint::affine(x, y, z));
        }
    }
    out
}

/// Orbit tag of a point: `O1` at infinity, `O2` for affine points with all
/// coordinates in `F_{q^2}`, `Generic` otherwise.
pub fn classify_point(params: &CurveParams, ctx: &GfContext, point: &CurvePoint) -> PointClass {
    match point.coords {
        Coordinates::Infinity { .. } => PointClass::O1,
        Coordinates::Affine { x, y, z } => {
            let sub = 2 * params.e;
            if [x, y, z].iter().all(|&c| ctx.in_subfield(c, sub)) {
                PointClass::O2
            } else {
                PointClass::Generic
            }
        }
    }
}

/// All `F_{q^{2n}}`-rational points, classified, in the canonical order.
/// Fails if the count differs from `q^{2n} + 1 + 2 g q^n`, if a point does
/// not satisfy the equations, or if the orbit sizes are not `q + 1` and
/// `q^3 - q`.
pub fn enumerate_points(params: &CurveParams, ctx: &GfContext) -> Result<Vec<CurvePoint>> {
    check_field(params, ctx)?;
    let xs: Vec<GfElement> = ctx.elements().collect();
    let mut points: Vec<CurvePoint> = crate::par_map(&xs, |&x| points_over(params, ctx, x))
        .into_iter()
        .flatten()
        .collect();
    for a in ctx.nth_roots(ctx.one(), params.q + 1) {
        points.push(CurvePoint::infinity(a));
    }
    for point in &mut points {
        if let Coordinates::Affine { x, y, z } = point.coords {
            if !on_curve(params, ctx, x, y, z) {
                return Err(Error::Consistency(format!("{point} is not on the curve")));
            }
        }
        point.class = classify_point(params, ctx, point);
    }
    points.sort_by_key(CurvePoint::sort_key);

    if points.len() as u64 != params.rational_points {
        return Err(Error::Consistency(format!(
            "found {} rational points, expected {}",
            points.len(),
            params.rational_points
        )));
    }
    let (o1, o2) = orbit_sizes(&points);
    let q = params.q;
    if o1 != q + 1 || o2 != q * q * q - q {
        return Err(Error::Consistency(format!(
            "orbit sizes ({o1}, {o2}), expected ({}, {})",
            q + 1,
            q * q * q - q
        )));
    }
    Ok(points)
}

/// Number of points tagged `O1` and `O2`.
pub fn orbit_sizes(points: &[CurvePoint]) -> (u64, u64) {
    let count = |c| points.iter().filter(|p| p.class == c).count() as u64;
    (count(PointClass::O1), count(PointClass::O2))
}

/// `-1`, the `a` of the base point `(1 : -1 : 0 : 0)` in the orbit at infinity.
pub fn o1_anchor(ctx: &GfContext) -> GfElement {
    ctx.neg(ctx.one())
}

/// Smallest-code `a` with `a^{q+1} = -1`; the base point of the affine orbit
/// is `(0, a, 0)`.
pub fn o2_anchor(params: &CurveParams, ctx: &GfContext) -> GfElement {
    let minus_one = ctx.neg(ctx.one());
    ctx.nth_roots(minus_one, params.q + 1)[0]
}

/// The base point used for one-point codes in `orbit`.
pub fn distinguished_point(params: &CurveParams, ctx: &GfContext, orbit: Orbit) -> CurvePoint {
    match orbit {
        Orbit::O1 => CurvePoint::infinity(o1_anchor(ctx)),
        Orbit::O2 => CurvePoint {
            coords: Coordinates::Affine {
                x: GfElement::ZERO,
                y: o2_anchor(params, ctx),
                z: GfElement::ZERO,
            },
            class: PointClass::O2,
        },
    }
}

/// A monomial in the orbit's generator functions with a single pole at the
/// orbit's base point.
///
/// For `O1` the generators are `z^i / (x + y)` (`i = 0..=s`, pole order
/// `mq + i(q^2 - q)`) followed by `(x - 1)/(x + y)` (pole order `q^n + 1`).
/// For `O2` they are `z^k / (y - a)` (`k = 0..=s`, pole order `q^n + 1 - k`)
/// followed by `x / (y - a)` (pole order `q^n + 1 - m`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PoleBasisFunction {
    pub orbit: Orbit,
    pub exponents: Vec<u32>,
    pub pole_order: u64,
}

impl PoleBasisFunction {
    pub fn new(params: &CurveParams, orbit: Orbit, exponents: Vec<u32>) -> Result<Self> {
        let gens = generators(params, orbit);
        if exponents.len() != gens.len() {
            return Err(Error::InvalidParams(format!(
                "expected {} exponents, got {}",
                gens.len(),
                exponents.len()
            )));
        }
        let pole_order = gens
            .iter()
            .zip(&exponents)
            .map(|(&g, &e)| g * e as u64)
            .sum();
        Ok(Self {
            orbit,
            exponents,
            pole_order,
        })
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for PoleBasisFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.exponents.len() - 1;
        let name = |i: usize| match (self.orbit, i == s) {
            (Orbit::O1, false) => format!("theta{i}"),
            (Orbit::O1, true) => "alpha".to_string(),
            (Orbit::O2, false) => format!("f{i}"),
            (Orbit::O2, true) => "f".to_string(),
        };
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    name(i)
                } else {
                    format!("{}^{e}", name(i))
                }
            })
            .collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// Value of generator `i` of `func`'s orbit at `point`.
fn generator_value(
    params: &CurveParams,
    ctx: &GfContext,
    func: &PoleBasisFunction,
    i: usize,
    point: &CurvePoint,
) -> Result<GfElement> {
    let count = func.exponents.len();
    let last = count - 1;
    let name = || {
        let mut exps = vec![0; count];
        exps[i] = 1;
        PoleBasisFunction {
            orbit: func.orbit,
            exponents: exps,
            pole_order: 0,
        }
        .to_string()
    };
    let pole = || Error::Pole {
        function: name(),
        point: point.to_string(),
    };

    match point.coords {
        Coordinates::Infinity { a } => {
            if i < last {
                return Ok(GfElement::ZERO);
            }
            // limits of (x - 1)/(x + y) and x/(y - a_R) at (1 : a : 0 : 0)
            let denom = match func.orbit {
                Orbit::O1 => ctx.add(ctx.one(), a),
                Orbit::O2 => a,
            };
            ctx.inv(denom).map_err(|_| pole())
        }
        Coordinates::Affine { x, y, z } => {
            let (denom, last_numerator) = match func.orbit {
                Orbit::O1 => (ctx.add(x, y), ctx.sub(x, ctx.one())),
                Orbit::O2 => (ctx.sub(y, o2_anchor(params, ctx)), x),
            };
            let numerator = if i < last {
                ctx.pow(z, i as u64)
            } else {
                last_numerator
            };
            if denom.is_zero() {
                return Err(if numerator.is_zero() {
                    Error::NeedsLocalResolution {
                        function: name(),
                        point: point.to_string(),
                    }
                } else {
                    pole()
                });
            }
            Ok(ctx.div(numerator, denom).expect("denominator checked"))
        }
    }
}

/// Evaluates a basis monomial at a point. Nonconstant functions have a pole
/// at the orbit's base point; a vanishing denominator with vanishing
/// numerator anywhere else is reported as needing local resolution.
pub fn eval_basis(
    params: &CurveParams,
    ctx: &GfContext,
    func: &PoleBasisFunction,
    point: &CurvePoint,
) -> Result<GfElement> {
    if func.is_constant() {
        return Ok(ctx.one());
    }
    let base = distinguished_point(params, ctx, func.orbit);
    if point.coords == base.coords {
        return Err(Error::Pole {
            function: func.to_string(),
            point: point.to_string(),
        });
    }
    let mut acc = ctx.one();
    for (i, &e) in func.exponents.iter().enumerate() {
        if e > 0 {
            let v = generator_value(params, ctx, func, i, point)?;
            acc = ctx.mul(acc, ctx.pow(v, e as u64));
        }
    }
    Ok(acc)
}

/// One monomial per nongap `rho_1 < ... < rho_l` of the orbit's semigroup,
/// each with exactly that pole order: a basis of `L(rho_l P)`.
///
/// Among all exponent vectors for a given pole order the lexicographically
/// smallest one is chosen (first component minimised first).
pub fn build_basis(params: &CurveParams, orbit: Orbit, l: u64) -> Result<Vec<PoleBasisFunction>> {
    if l == 0 {
        return Err(Error::OutOfRange {
            what: "l",
            detail: "basis size must be >= 1".into(),
        });
    }
    let semigroup = weierstrass(params, orbit)?;
    let gens = generators(params, orbit);
    let top = semigroup.nth_nongap(l)?;
    let width = top as usize + 1;

    // reach[j][v]: v is a nonnegative combination of gens[j..]
    let mut reach = vec![vec![false; width]; gens.len() + 1];
    reach[gens.len()][0] = true;
    for j in (0..gens.len()).rev() {
        let g = gens[j] as usize;
        for v in 0..width {
            reach[j][v] = reach[j + 1][v] || (v >= g && reach[j][v - g]);
        }
    }

    (1..=l)
        .map(|i| {
            let rho = semigroup.nth_nongap(i)?;
            let mut rest = rho as usize;
            let mut exponents = Vec::with_capacity(gens.len());
            for (j, &g) in gens.iter().enumerate() {
                let g = g as usize;
                let e = (0..=rest / g)
                    .find(|&e| reach[j + 1][rest - e * g])
                    .ok_or_else(|| {
                        Error::Consistency(format!("nongap {rho} is not representable"))
                    })?;
                exponents.push(e as u32);
                rest -= e * g;
            }
            let func = PoleBasisFunction::new(params, orbit, exponents)?;
            debug_assert_eq!(func.pole_order, rho);
            Ok(func)
        })
        .collect()
}

/// A matrix over a prime-power field, stored as element codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeMatrix {
    pub p: u32,
    pub deg: u32,
    pub rows: Vec<Vec<GfElement>>,
}

impl CodeMatrix {
    pub fn length(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Serialized form: header `N=<int> L=<int> p=<int> deg=<int>`, then one
    /// line of space-separated decimal codes per row.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "N={} L={} p={} deg={}\n",
            self.length(),
            self.rows.len(),
            self.p,
            self.deg
        );
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.code().to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidParams(format!("malformed matrix file: {why}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let mut fields = [0u64; 4];
        let keys = ["N", "L", "p", "deg"];
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(bad("header needs four fields"));
        }
        for (slot, (part, key)) in parts.iter().zip(keys).enumerate() {
            let value = part
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| bad(&format!("expected {key}=")))?;
            fields[slot] = value
                .parse()
                .map_err(|_| bad(&format!("bad value for {key}")))?;
        }
        let [n, l, p, deg] = fields;
        let rows: Vec<Vec<GfElement>> = lines
            .map(|line| {
                line.split_whitespace()
                    .map(|c| {
                        c.parse::<u32>()
                            .map(GfElement)
                            .map_err(|_| bad("bad element code"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        if rows.len() as u64 != l || rows.iter().any(|r| r.len() as u64 != n) {
            return Err(bad("dimensions do not match the header"));
        }
        Ok(Self {
            p: p as u32,
            deg: deg as u32,
            rows,
        })
    }
}

/// Evaluation points for one-point codes at `orbit`: every rational point
/// except the base point, in canonical order.
pub fn evaluation_points(
    params: &CurveParams,
    ctx: &GfContext,
    points: &[CurvePoint],
    orbit: Orbit,
) -> Vec<CurvePoint> {
    let base = distinguished_point(params, ctx, orbit);
    points
        .iter()
        .copied()
        .filter(|p| p.coords != base.coords)
        .collect()
}

/// Generator matrix of `C(D, rho_l P)`: row `i` evaluates the `i`-th
/// [`build_basis`] function at the points of [`evaluation_points`].
pub fn code_matrix_from_points(
    params: &CurveParams,
    ctx: &GfContext,
    points: &[CurvePoint],
    orbit: Orbit,
    l: u64,
) -> Result<CodeMatrix> {
    let basis = build_basis(params, orbit, l)?;
    let support = evaluation_points(params, ctx, points, orbit);
    let rows = crate::par_map(&basis, |func| {
        support
            .iter()
            .map(|pt| eval_basis(params, ctx, func, pt))
            .collect::<Result<Vec<_>>>()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(CodeMatrix {
        p: ctx.characteristic(),
        deg: ctx.degree(),
        rows,
    })
}

pub fn code_matrix(
    params: &CurveParams,
    ctx: &GfContext,
    orbit: Orbit,
    l: u64,
) -> Result<CodeMatrix> {
    let points = enumerate_points(params, ctx)?;
    code_matrix_from_points(params, ctx, &points, orbit, l)
}

/// Rank by Gaussian elimination.
pub fn rank(matrix: &CodeMatrix, ctx: &GfContext) -> usize {
    let mut rows = matrix.rows.clone();
    let cols = matrix.length();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = ctx.inv(rows[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<GfElement> = rows[rank].iter().map(|&v| ctx.mul(v, inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col];
                for (cell, &pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *cell = ctx.sub(*cell, ctx.mul(factor, pv));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Default work cap for [`min_weight_exhaustive`]: codewords times length.
pub const MIN_WEIGHT_WORK_CAP: u128 = 2_000_000_000;

/// Exact minimum Hamming weight of the row space, by enumerating every
/// nonzero combination whose first nonzero coefficient is 1.
pub fn min_weight_exhaustive(matrix: &CodeMatrix, ctx: &GfContext, work_cap: u128) -> Result<u64> {
    let l = matrix.rows.len();
    let n = matrix.length();
    if l == 0 {
        return Err(Error::InvalidParams("matrix has no rows".into()));
    }
    let size = ctx.size() as u128;
    let codewords = (size.pow(l as u32) - 1) / (size - 1);
    let work = codewords * n as u128;
    if work > work_cap {
        return Err(Error::TooLarge(format!(
            "{codewords} normalized codewords of length {n} ({work} cell operations, cap {work_cap})"
        )));
    }

    let mut best = u64::MAX;
    let mut word = vec![GfElement::ZERO; n];
    for lead in 0..l {
        // coefficients after the leading 1, as an odometer over codes
        let tail = l - lead - 1;
        let mut coeffs = vec![0u32; tail];
        loop {
            word.copy_from_slice(&matrix.rows[lead]);
            for (k, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    let row = &matrix.rows[lead + 1 + k];
                    for (w, &v) in word.iter_mut().zip(row) {
                        *w = ctx.add(*w, ctx.mul(GfElement(c), v));
                    }
                }
            }
            let weight = word.iter().filter(|c| !c.is_zero()).count() as u64;
            if weight > 0 {
                best = best.min(weight);
            }
            let mut pos = 0;
            while pos < tail {
                coeffs[pos] += 1;
                if coeffs[pos] < ctx.size() {
                    break;
                }
                coeffs[pos] = 0;
                pos += 1;
            }
            if pos == tail {
                break;
            }
        }
    }
    if best == u64::MAX {
        return Err(Error::InvalidParams("rows span the zero code".into()));
    }
    Ok(best)
}

/// Parameters, field and classified points bundled together.
#[derive(Debug, Clone)]
pub struct Curve {
    pub params: CurveParams,
    pub field: GfContext,
    pub points: Vec<CurvePoint>,
}

impl Curve {
    pub fn new(params: CurveParams) -> Result<Self> {
        let field = curve_field(&params)?;
        let points = enumerate_points(&params, &field)?;
        Ok(Self {
            params,
            field,
            points,
        })
    }

    pub fn code_matrix(&self, orbit: Orbit, l: u64) -> Result<CodeMatrix> {
        code_matrix_from_points(&self.params, &self.field, &self.points, orbit, l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(q: u64, n: u32) -> Curve {
        Curve::new(CurveParams::new(q, n).unwrap()).unwrap()
    }

    #[test]
    fn point_counts_and_orbits() {
        let c = curve(2, 3);
        assert_eq!(c.points.len(), 225);
        assert_eq!(orbit_sizes(&c.points), (3, 6));
        let c = curve(2, 5);
        assert_eq!(c.points.len(), 3969);
        assert_eq!(orbit_sizes(&c.points), (3, 6));
    }

    #[test]
    fn brute_force_point_count_q2_n3() {
        let params = CurveParams::new(2, 3).unwrap();
        let f = curve_field(&params).unwrap();
        let mut affine = 0;
        for x in f.elements() {
            let singular_fibre = f.pow(x, 3) == f.one();
            for y in f.elements() {
                for z in f.elements() {
                    if singular_fibre {
                        affine += (y.is_zero() && z.is_zero()) as u64;
                    } else if on_curve(&params, &f, x, y, z) {
                        affine += 1;
                    }
                }
            }
        }
        assert_eq!(affine + 3, 225);
    }

    #[test]
    fn z_vanishes_on_second_orbit() {
        let c = curve(2, 5);
        for p in c.points.iter().filter(|p| p.class == PointClass::O2) {
            let Coordinates::Affine { z, .. } = p.coords else {
                panic!()
            };
            assert!(z.is_zero());
        }
        for p in c.points.iter().filter(|p| p.class == PointClass::Generic) {
            let Coordinates::Affine { z, .. } = p.coords else {
                panic!()
            };
            assert!(!z.is_zero());
        }
    }

    #[test]
    fn classification_examples() {
        let c = curve(2, 5);
        let inf = CurvePoint::infinity(c.field.one());
        assert_eq!(classify_point(&c.params, &c.field, &inf), PointClass::O1);
        let generic = c
            .points
            .iter()
            .find(
                |p| matches!(p.coords, Coordinates::Affine { x, .. } if !c.field.in_subfield(x, 2)),
            )
            .unwrap();
        assert_eq!(generic.class, PointClass::Generic);
    }

    #[test]
    fn order_is_canonical() {
        let c = curve(2, 3);
        let keys: Vec<_> = c.points.iter().map(CurvePoint::sort_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            c.points.last().unwrap().coords,
            Coordinates::Infinity { .. }
        ));
    }

    #[test]
    fn no_affine_point_kills_the_denominators() {
        for (q, n) in [(2, 3), (2, 5)] {
            let c = curve(q, n);
            let r = o2_anchor(&c.params, &c.field);
            for p in &c.points {
                if let Coordinates::Affine { x, y, .. } = p.coords {
                    assert!(!c.field.add(x, y).is_zero());
                    if y == r {
                        assert!(x.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn basis_examples() {
        let params = CurveParams::new(2, 5).unwrap();
        let b = build_basis(&params, Orbit::O1, 2).unwrap();
        assert_eq!(
            b.iter().map(|f| f.pole_order).collect::<Vec<_>>(),
            vec![0, 22]
        );
        assert_eq!(b[1].exponents, vec![1, 0, 0, 0, 0, 0, 0]);
        let b = build_basis(&params, Orbit::O1, 10).unwrap();
        let f44 = b.iter().find(|f| f.pole_order == 44).unwrap();
        assert_eq!(f44.exponents, vec![2, 0, 0, 0, 0, 0, 0]);
        assert_eq!(f44.to_string(), "theta0^2");
        let b = build_basis(&params, Orbit::O2, 10).unwrap();
        let f33 = b.iter().find(|f| f.pole_order == 33).unwrap();
        assert_eq!(f33.exponents, vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(f33.to_string(), "f0");
    }

    #[test]
    fn basis_pole_orders_are_the_nongaps() {
        for (q, n) in [(2, 3), (2, 5), (3, 3)] {
            let params = CurveParams::new(q, n).unwrap();
            for orbit in [Orbit::O1, Orbit::O2] {
                let s = weierstrass(&params, orbit).unwrap();
                let basis = build_basis(&params, orbit, 80).unwrap();
                for (i, f) in basis.iter().enumerate() {
                    assert_eq!(f.pole_order, s.nth_nongap(i as u64 + 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let c = curve(2, 3);
        let (params, f) = (&c.params, &c.field);
        let one = PoleBasisFunction::new(params, Orbit::O1, vec![0, 0, 0]).unwrap();
        for p in &c.points {
            assert_eq!(eval_basis(params, f, &one, p).unwrap(), f.one());
        }
        let alpha = PoleBasisFunction::new(params, Orbit::O1, vec![0, 0, 1]).unwrap();
        let q_point = CurvePoint::affine(f.one(), f.zero(), f.zero());
        assert!(c.points.iter().any(|p| p.coords == q_point.coords));
        assert_eq!(eval_basis(params, f, &alpha, &q_point).unwrap(), f.zero());

        let x_over = PoleBasisFunction::new(params, Orbit::O2, vec![0, 0, 1]).unwrap();
        let r = o2_anchor(params, f);
        let origin_fibre = c
            .points
            .iter()
            .find(|p| matches!(p.coords, Coordinates::Affine { x, y, .. } if x.is_zero() && y != r))
            .unwrap();
        assert_eq!(
            eval_basis(params, f, &x_over, origin_fibre).unwrap(),
            f.zero()
        );
    }

    #[test]
    fn evaluation_errors() {
        let c = curve(2, 3);
        let (params, f) = (&c.params, &c.field);
        let theta = PoleBasisFunction::new(params, Orbit::O1, vec![1, 0, 0]).unwrap();
        let base = distinguished_point(params, f, Orbit::O1);
        assert!(matches!(
            eval_basis(params, f, &theta, &base),
            Err(Error::Pole { .. })
        ));
        let fk = PoleBasisFunction::new(params, Orbit::O2, vec![0, 1, 0]).unwrap();
        let base = distinguished_point(params, f, Orbit::O2);
        assert!(matches!(
            eval_basis(params, f, &fk, &base),
            Err(Error::Pole { .. })
        ));

        // off-curve point with x + y = 0 and x = 1: (x - 1)/(x + y) is 0/0
        let alpha = PoleBasisFunction::new(params, Orbit::O1, vec![0, 0, 1]).unwrap();
        let synthetic = CurvePoint::affine(f.one(), f.neg(f.one()), f.zero());
        assert!(matches!(
            eval_basis(params, f, &alpha, &synthetic),
            Err(Error::NeedsLocalResolution { .. })
        ));
        let synthetic = CurvePoint::affine(f.exp(1), f.neg(f.exp(1)), f.zero());
        assert!(matches!(
            eval_basis(params, f, &alpha, &synthetic),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn ranks_and_staircase() {
        let c = curve(2, 3);
        for orbit in [Orbit::O1, Orbit::O2] {
            let full = c.code_matrix(orbit, 30).unwrap();
            assert_eq!(full.length(), 224);
            for l in 1..=30 {
                let m = CodeMatrix {
                    rows: full.rows[..l].to_vec(),
                    ..full.clone()
                };
                assert_eq!(rank(&m, &c.field), l, "{orbit} l={l}");
            }
        }
        let m = c.code_matrix(Orbit::O1, 1).unwrap();
        assert!(m.rows[0].iter().all(|&v| v == c.field.one()));
    }

    #[test]
    fn exhaustive_weights() {
        let c = curve(2, 3);
        for orbit in [Orbit::O1, Orbit::O2] {
            let m = c.code_matrix(orbit, 1).unwrap();
            assert_eq!(
                min_weight_exhaustive(&m, &c.field, MIN_WEIGHT_WORK_CAP).unwrap(),
                224
            );
            let m = c.code_matrix(orbit, 2).unwrap();
            let d = min_weight_exhaustive(&m, &c.field, MIN_WEIGHT_WORK_CAP).unwrap();
            assert!(d >= 224 - 6, "{orbit}: {d}");
        }
        let m = c.code_matrix(Orbit::O1, 6).unwrap();
        assert!(matches!(
            min_weight_exhaustive(&m, &c.field, MIN_WEIGHT_WORK_CAP),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn weight_against_naive_enumeration() {
        let c = curve(2, 3);
        let m = c.code_matrix(Orbit::O2, 2).unwrap();
        let f = &c.field;
        let mut best = usize::MAX;
        for a in f.elements() {
            for b in f.elements() {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let w = (0..m.length())
                    .filter(|&j| {
                        !f.add(f.mul(a, m.rows[0][j]), f.mul(b, m.rows[1][j]))
                            .is_zero()
                    })
                    .count();
                best = best.min(w);
            }
        }
        assert_eq!(
            min_weight_exhaustive(&m, f, MIN_WEIGHT_WORK_CAP).unwrap(),
            best as u64
        );
    }

    #[test]
    fn matrix_text_round_trip() {
        let c = curve(2, 3);
        let m = c.code_matrix(Orbit::O2, 5).unwrap();
        let text = m.to_text();
        assert!(text.starts_with("N=224 L=5 p=2 deg=6\n"));
        assert_eq!(CodeMatrix::parse(&text).unwrap(), m);
        assert!(CodeMatrix::parse("N=2 L=1 p=2 deg=6\n1\n").is_err());
        assert_eq!(rank(&m, &c.field), 5);
    }

    #[test]
    fn wrong_field_is_rejected() {
        let params = CurveParams::new(2, 3).unwrap();
        let f = make_field(2, 4).unwrap();
        assert!(enumerate_points(&params, &f).is_err());
    }
}
