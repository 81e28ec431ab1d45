//! Table-driven arithmetic in `F_{p^deg}`.
//!
//! An element is stored as its integer code `sum c_i p^i`, where `c_i` are
//! the coefficients in the polynomial basis `1, x, ..., x^{deg-1}` modulo the
//! field's defining polynomial. The code is also the serialized form used in
//! every output file.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::gcd;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct GfElement(pub u32);

impl GfElement {
    pub const ZERO: GfElement = GfElement(0);
    pub const ONE: GfElement = GfElement(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for GfElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense polynomials over `F_p`, little-endian, no trailing zeros.
mod poly {
    pub type Poly = Vec<u32>;

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2)
        let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &c) in m.iter().enumerate() {
                let sub = (factor as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
        rem(&mul(a, b, p), m, p)
    }

    pub fn pow_mod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Poly {
        let mut acc = rem(&[1], m, p);
        let mut base = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            exp >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^k) mod m`, by repeated p-th powering.
    pub fn frobenius_x(k: u32, m: &[u32], p: u32) -> Poly {
        let mut acc = rem(&[0, 1], m, p);
        for _ in 0..k {
            acc = pow_mod(&acc, p as u64, m, p);
        }
        acc
    }

    /// Rabin's test for a monic `m` of degree `n`.
    pub fn is_irreducible(m: &[u32], p: u32, prime_factors_of_n: &[u32]) -> bool {
        let n = (m.len() - 1) as u32;
        let x = [0u32, 1];
        if frobenius_x(n, m, p) != rem(&x, m, p) {
            return false;
        }
        prime_factors_of_n.iter().all(|&r| {
            let h = sub(&frobenius_x(n / r, m, p), &x, p);
            gcd(m, &h, p).len() == 1
        })
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(p: u64) -> bool {
    p >= 2 && prime_factors(p) == [p]
}

/// A finite field `F_{p^deg}` with exp/log tables.
#[derive(Debug, Clone)]
pub struct GfContext {
    p: u32,
    deg: u32,
    size: u32,
    /// Monic defining polynomial, `deg + 1` coefficients, constant first.
    modulus: Vec<u32>,
    primitive: GfElement,
    /// `exp[i] = primitive^i` for `0 <= i < 2(size - 1)`.
    exp: Vec<u32>,
    /// `log[a]`, meaningless at 0.
    log: Vec<u32>,
}

impl PartialEq for GfContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.deg == other.deg && self.modulus == other.modulus
    }
}

impl Eq for GfContext {}

/// Builds `F_{p^deg}` with the lexicographically smallest monic irreducible
/// modulus (coefficients compared from the constant term upward) and the
/// smallest primitive element.
pub fn make_field(p: u64, deg: u32) -> Result<GfContext> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!(
            "characteristic {p} is not prime"
        )));
    }
    if deg == 0 {
        return Err(Error::InvalidParams("extension degree must be >= 1".into()));
    }
    let size = p
        .checked_pow(deg)
        .filter(|&s| s <= MAX_FIELD_SIZE)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{deg} exceeds {MAX_FIELD_SIZE} elements")))?;
    let p32 = p as u32;
    let degree_factors: Vec<u32> = prime_factors(deg as u64)
        .into_iter()
        .map(|r| r as u32)
        .collect();

    // lex order with c_0 most significant: c_{deg-1} varies fastest
    let modulus = (0..size)
        .map(|index| {
            let mut coeffs = vec![0u32; deg as usize + 1];
            let mut rest = index;
            for slot in (0..deg as usize).rev() {
                coeffs[slot] = (rest % p) as u32;
                rest /= p;
            }
            coeffs[deg as usize] = 1;
            coeffs
        })
        .find(|m| poly::is_irreducible(m, p32, &degree_factors))
        .expect("an irreducible polynomial of every degree exists");

    let order = size - 1;
    let order_factors = prime_factors(order);
    let to_poly = |code: u64| -> Vec<u32> {
        let mut out = Vec::with_capacity(deg as usize);
        let mut rest = code;
        for _ in 0..deg {
            out.push((rest % p) as u32);
            rest /= p;
        }
        poly::trim(out)
    };
    let to_code =
        |a: &[u32]| -> u32 { a.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64) as u32 };

    let primitive = (1..size)
        .find(|&code| {
            let g = to_poly(code);
            order_factors
                .iter()
                .all(|&r| poly::pow_mod(&g, order / r, &modulus, p32) != [1])
                && (order > 1 || code == 1)
        })
        .expect("the multiplicative group is cyclic");

    let gen_poly = to_poly(primitive);
    let mut exp = Vec::with_capacity(2 * order as usize);
    let mut log = vec![0u32; size as usize];
    let mut cur = vec![1u32];
    for i in 0..order {
        let code = to_code(&cur);
        exp.push(code);
        log[code as usize] = i as u32;
        cur = poly::mul_mod(&cur, &gen_poly, &modulus, p32);
    }
    if to_code(&cur) != 1 {
        return Err(Error::Consistency(
            "primitive element has the wrong order".into(),
        ));
    }
    exp.extend_from_within(..);

    Ok(GfContext {
        p: p32,
        deg,
        size: size as u32,
        modulus,
        primitive: GfElement(primitive as u32),
        exp,
        log,
    })
}

impl GfContext {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Number of elements `p^deg`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> GfElement {
        self.primitive
    }

    pub fn zero(&self) -> GfElement {
        GfElement::ZERO
    }

    pub fn one(&self) -> GfElement {
        GfElement::ONE
    }

    /// Element from a code; fails outside `[0, size)`.
    pub fn element(&self, code: u32) -> Result<GfElement> {
        if code < self.size {
            Ok(GfElement(code))
        } else {
            Err(Error::OutOfRange {
                what: "field element code",
                detail: format!("{code} >= {}", self.size),
            })
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = GfElement> {
        (0..self.size).map(GfElement)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> GfElement {
        GfElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coefficients(&self, a: GfElement) -> Vec<u32> {
        let mut rest = a.0;
        (0..self.deg)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<GfElement> {
        if coeffs.len() > self.deg as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParams(format!(
                "{coeffs:?} is not a reduced coefficient vector"
            )));
        }
        Ok(GfElement(
            coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c),
        ))
    }

    fn digitwise(&self, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += op(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn add(&self, a: GfElement, b: GfElement) -> GfElement {
        if self.p == 2 {
            return GfElement(a.0 ^ b.0);
        }
        let p = self.p;
        GfElement(self.digitwise(a.0, b.0, |x, y| (x + y) % p))
    }

    pub fn sub(&self, a: GfElement, b: GfElement) -> GfElement {
        if self.p == 2 {
            return GfElement(a.0 ^ b.0);
        }
        let p = self.p;
        GfElement(self.digitwise(a.0, b.0, |x, y| (x + p - y) % p))
    }

    pub fn neg(&self, a: GfElement) -> GfElement {
        self.sub(GfElement::ZERO, a)
    }

    pub fn mul(&self, a: GfElement, b: GfElement) -> GfElement {
        if a.is_zero() || b.is_zero() {
            return GfElement::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        GfElement(self.exp[i as usize])
    }

    pub fn inv(&self, a: GfElement) -> Result<GfElement> {
        if a.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let order = self.size - 1;
        Ok(GfElement(
            self.exp[((order - self.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: GfElement, b: GfElement) -> Result<GfElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: GfElement, e: u64) -> GfElement {
        if e == 0 {
            return GfElement::ONE;
        }
        if a.is_zero() {
            return GfElement::ZERO;
        }
        let order = (self.size - 1) as u64;
        let i = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        GfElement(self.exp[i as usize])
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: GfElement, k: u32) -> GfElement {
        let order = (self.size - 1) as u64;
        let e = (0..k).fold(1u64, |acc, _| acc * self.p as u64 % order.max(1));
        if a.is_zero() {
            a
        } else {
            self.pow(a, if e == 0 { order } else { e })
        }
    }

    /// Discrete log base [`primitive`](Self::primitive); `None` at zero.
    pub fn log(&self, a: GfElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    pub fn exp(&self, i: u64) -> GfElement {
        GfElement(self.exp[(i % (self.size as u64 - 1)) as usize])
    }

    /// Every `t` with `t^d = c`, sorted by code.
    pub fn nth_roots(&self, c: GfElement, d: u64) -> Vec<GfElement> {
        if d == 0 {
            return if c == GfElement::ONE {
                self.elements().skip(1).collect()
            } else {
                Vec::new()
            };
        }
        if c.is_zero() {
            return vec![GfElement::ZERO];
        }
        let order = (self.size - 1) as u64;
        let g = gcd(d, order);
        let target = self.log[c.0 as usize] as u64;
        if !target.is_multiple_of(g) {
            return Vec::new();
        }
        let reduced = order / g;
        // solve j * (d / g) = target / g (mod order / g)
        let base = if reduced == 1 {
            0
        } else {
            let inv =
                mod_inverse((d / g) % reduced, reduced).expect("coprime after dividing by gcd");
            ((target / g) % reduced) * inv % reduced
        };
        let mut roots: Vec<GfElement> = (0..g).map(|k| self.exp(base + k * reduced)).collect();
        roots.sort_unstable();
        roots
    }

    /// Whether `c` is a `d`-th power of a nonzero element or zero.
    pub fn is_power(&self, c: GfElement, d: u64) -> bool {
        if c.is_zero() {
            return true;
        }
        let order = (self.size - 1) as u64;
        let g = gcd(d, order);
        self.pow(c, order / g) == GfElement::ONE
    }

    /// Elements of the subfield `F_{p^sub_deg}`: the fixed points of
    /// `a -> a^(p^sub_deg)`.
    pub fn subfield_elements(&self, sub_deg: u32) -> Result<Vec<GfElement>> {
        if sub_deg == 0 || !self.deg.is_multiple_of(sub_deg) {
            return Err(Error::InvalidParams(format!(
                "{sub_deg} does not divide the extension degree {}",
                self.deg
            )));
        }
        Ok(self
            .elements()
            .filter(|&a| self.in_subfield(a, sub_deg))
            .collect())
    }

    pub fn in_subfield(&self, a: GfElement, sub_deg: u32) -> bool {
        self.frobenius(a, sub_deg) == a
    }

    /// Product by explicit polynomial multiplication, bypassing the tables.
    pub fn mul_slow(&self, a: GfElement, b: GfElement) -> GfElement {
        let prod = poly::mul_mod(
            &poly::trim(self.coefficients(a)),
            &poly::trim(self.coefficients(b)),
            &self.modulus,
            self.p,
        );
        GfElement(prod.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}
