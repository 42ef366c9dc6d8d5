//! The finite local rings `Z/p^k` and `F_p[t]/(t^k)` with canonical integer codes.
//!
//! Every element of a ring with `q = p^k` elements is identified with a code in
//! `[0, q)`. For `Z/p^k` the code is the least nonnegative residue. For
//! `F_p[t]/(t^k)` the element `a_0 + a_1 t + ... + a_{k-1} t^{k-1}` has code
//! `a_0 + a_1 p + ... + a_{k-1} p^{k-1}`, i.e. its coefficient vector read as
//! little-endian base-`p` digits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted characteristic.
pub const MAX_PRIME: u64 = 1 << 20;
/// Ring cardinalities must stay below this so that code products fit in 64 bits.
pub const MAX_CARDINALITY: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Integers modulo `p^k`.
    #[serde(rename = "zmod")]
    ZMod,
    /// Truncated polynomials `F_p[t]/(t^k)`.
    #[serde(rename = "fpt")]
    TruncPoly,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::ZMod => "zmod",
            Family::TruncPoly => "fpt",
        }
    }

    /// Byte used by the binary element-table header.
    pub fn to_byte(self) -> u8 {
        match self {
            Family::ZMod => 0,
            Family::TruncPoly => 1,
        }
    }

    pub fn from_byte(b: u8) -> Option<Family> {
        match b {
            0 => Some(Family::ZMod),
            1 => Some(Family::TruncPoly),
            _ => None,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zmod" => Ok(Family::ZMod),
            "fpt" => Ok(Family::TruncPoly),
            other => Err(Error::Parse(format!("unknown ring family {other:?}"))),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A ring `Z/p^k` or `F_p[t]/(t^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    family: Family,
    p: u64,
    k: u32,
    q: u64,
}

impl RingSpec {
    pub fn new(family: Family, p: u64, k: u32) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::Parse("ring length k must be at least 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q < MAX_CARDINALITY)
            .ok_or(Error::Overflow { p, k })?;
        Ok(RingSpec { family, p, k, q })
    }

    pub fn zmod(p: u64, k: u32) -> Result<Self> {
        Self::new(Family::ZMod, p, k)
    }

    pub fn fpt(p: u64, k: u32) -> Result<Self> {
        Self::new(Family::TruncPoly, p, k)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements, `p^k`.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn elem(&self, code: u64) -> Result<RingElem> {
        if code >= self.q {
            return Err(Error::CodeOutOfRange {
                code: code as u128,
                bound: self.q as u128,
            });
        }
        Ok(RingElem { code, spec: *self })
    }

    pub fn zero(&self) -> RingElem {
        RingElem {
            code: 0,
            spec: *self,
        }
    }

    pub fn one(&self) -> RingElem {
        RingElem {
            code: self.one_code(),
            spec: *self,
        }
    }

    pub(crate) fn one_code(&self) -> u64 {
        // q >= 2 always, so 1 is a valid code in both families.
        1
    }

    /// The `i`-th power of the uniformizer: `t^i` for truncated polynomials,
    /// `p^i` for `Z/p^k`. Zero once `i >= k`.
    pub fn uniformizer_pow(&self, i: u32) -> RingElem {
        let code = if i >= self.k { 0 } else { self.p.pow(i) };
        RingElem { code, spec: *self }
    }

    /// Iterates over all `q` elements in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let spec = *self;
        (0..self.q).map(move |code| RingElem { code, spec })
    }

    /// Little-endian base-`p` digits of a code (length `k`).
    pub fn digits(&self, mut code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    /// Inverse of [`RingSpec::digits`]; digits beyond `k` are ignored.
    pub fn from_digits(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .take(self.k as usize)
            .rev()
            .fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    // Raw code arithmetic. Arguments must be valid codes (< q).

    pub fn add_codes(&self, a: u64, b: u64) -> u64 {
        match self.family {
            Family::ZMod => {
                let s = a + b;
                if s >= self.q {
                    s - self.q
                } else {
                    s
                }
            }
            Family::TruncPoly if self.p == 2 => a ^ b,
            Family::TruncPoly => {
                let (mut a, mut b) = (a, b);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..self.k {
                    let d = (a % self.p + b % self.p) % self.p;
                    out += d * place;
                    place *= self.p;
                    a /= self.p;
                    b /= self.p;
                }
                out
            }
        }
    }

    pub fn neg_code(&self, a: u64) -> u64 {
        match self.family {
            Family::ZMod => {
                if a == 0 {
                    0
                } else {
                    self.q - a
                }
            }
            Family::TruncPoly if self.p == 2 => a,
            Family::TruncPoly => {
                let mut a = a;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..self.k {
                    let d = (self.p - a % self.p) % self.p;
                    out += d * place;
                    place *= self.p;
                    a /= self.p;
                }
                out
            }
        }
    }

    pub fn sub_codes(&self, a: u64, b: u64) -> u64 {
        self.add_codes(a, self.neg_code(b))
    }

    pub fn mul_codes(&self, a: u64, b: u64) -> u64 {
        match self.family {
            Family::ZMod => a * b % self.q,
            Family::TruncPoly => {
                let da = self.digits(a);
                let db = self.digits(b);
                let k = self.k as usize;
                let mut prod = vec![0u64; k];
                for (i, &x) in da.iter().enumerate().filter(|(_, &x)| x != 0) {
                    for (j, &y) in db.iter().take(k - i).enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % self.p;
                    }
                }
                self.from_digits(&prod)
            }
        }
    }

    pub fn is_unit_code(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn inv_code(&self, a: u64) -> Option<u64> {
        if !self.is_unit_code(a) {
            return None;
        }
        match self.family {
            Family::ZMod => Some(inv_mod(a, self.q)),
            Family::TruncPoly => {
                // Solve a * b = 1 one coefficient at a time:
                // b_j = -a_0^{-1} * sum_{i=1..j} a_i b_{j-i}.
                let p = self.p;
                let da = self.digits(a);
                let a0_inv = inv_mod(da[0], p);
                let mut db = vec![0u64; self.k as usize];
                db[0] = a0_inv;
                for j in 1..db.len() {
                    let s = (1..=j).fold(0, |s, i| (s + da[i] * db[j - i]) % p);
                    db[j] = (p - s) % p * a0_inv % p;
                }
                Some(self.from_digits(&db))
            }
        }
    }

    /// Lookup tables for addition and multiplication, row-major `a * q + b`.
    /// Only built for rings with at most 256 elements.
    pub(crate) fn tables(&self) -> Option<(Vec<u8>, Vec<u8>)> {
        if self.q > 256 {
            return None;
        }
        let q = self.q as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add_codes(a as u64, b as u64) as u8;
                mul[a * q + b] = self.mul_codes(a as u64, b as u64) as u8;
            }
        }
        Some((add, mul))
    }
}

/// Inverse of a unit `a` modulo `m` by the extended Euclidean algorithm.
fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quo = r0 / r1;
        (r0, r1) = (r1, r0 - quo * r1);
        (s0, s1) = (s1, s0 - quo * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m as i128) as u64
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.family.tag(), self.p, self.k)
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Parses `zmod:<p>:<k>` or `fpt:<p>:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [family, p, k] = parts.as_slice() else {
            return Err(Error::Parse(format!(
                "ring spec {s:?} must look like zmod:<p>:<k> or fpt:<p>:<k>"
            )));
        };
        let family: Family = family.parse()?;
        let p = p
            .parse()
            .map_err(|_| Error::Parse(format!("invalid prime {p:?} in ring spec")))?;
        let k = k
            .parse()
            .map_err(|_| Error::Parse(format!("invalid length {k:?} in ring spec")))?;
        RingSpec::new(family, p, k)
    }
}

impl Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of a [`RingSpec`], held by its canonical code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    code: u64,
    spec: RingSpec,
}

impl RingElem {
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    fn same_ring(&self, other: &RingElem) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn with_code(&self, code: u64) -> RingElem {
        RingElem {
            code,
            spec: self.spec,
        }
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.same_ring(other)?;
        Ok(self.with_code(self.spec.add_codes(self.code, other.code)))
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.same_ring(other)?;
        Ok(self.with_code(self.spec.sub_codes(self.code, other.code)))
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.same_ring(other)?;
        Ok(self.with_code(self.spec.mul_codes(self.code, other.code)))
    }

    pub fn neg(&self) -> RingElem {
        self.with_code(self.spec.neg_code(self.code))
    }

    pub fn is_unit(&self) -> bool {
        self.spec.is_unit_code(self.code)
    }

    pub fn inv(&self) -> Result<RingElem> {
        self.spec
            .inv_code(self.code)
            .map(|c| self.with_code(c))
            .ok_or(Error::NotAUnit)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

impl fmt::Display for RingElem {
    /// Integers print as residues; truncated polynomials print in `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spec.family {
            Family::ZMod => write!(f, "{}", self.code),
            Family::TruncPoly => {
                if self.code == 0 {
                    return write!(f, "0");
                }
                let terms: Vec<String> = self
                    .spec
                    .digits(self.code)
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, d)| d != 0)
                    .map(|(i, d)| match (i, d) {
                        (0, d) => d.to_string(),
                        (1, 1) => "t".to_string(),
                        (1, d) => format!("{d}t"),
                        (i, 1) => format!("t^{i}"),
                        (i, d) => format!("{d}t^{i}"),
                    })
                    .collect();
                write!(f, "{}", terms.join("+"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_specs() -> Vec<RingSpec> {
        let mut out = Vec::new();
        for p in [2u64, 3, 5, 7] {
            for k in 1..=6 {
                if p.pow(k) <= 81 {
                    out.push(RingSpec::zmod(p, k).unwrap());
                    out.push(RingSpec::fpt(p, k).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn construction() {
        assert_eq!(RingSpec::zmod(2, 3).unwrap().q(), 8);
        assert_eq!(RingSpec::fpt(3, 3).unwrap().q(), 27);
        assert!(matches!(RingSpec::zmod(4, 2), Err(Error::NonPrime(4))));
        assert!(matches!(RingSpec::zmod(1, 2), Err(Error::NonPrime(1))));
        assert!(matches!(RingSpec::zmod(2, 31), Err(Error::Overflow { .. })));
        assert!(RingSpec::zmod(2, 30).is_ok());
        assert!(matches!(
            RingSpec::zmod(1_048_583, 1),
            Err(Error::NonPrime(_))
        ));
        assert_eq!(RingSpec::zmod(2, 3).unwrap(), RingSpec::zmod(2, 3).unwrap());
        assert_ne!(RingSpec::zmod(2, 3).unwrap(), RingSpec::fpt(2, 3).unwrap());
    }

    #[test]
    fn parse_and_display() {
        let r: RingSpec = "zmod:2:8".parse().unwrap();
        assert_eq!(r, RingSpec::zmod(2, 8).unwrap());
        let r: RingSpec = "fpt:3:3".parse().unwrap();
        assert_eq!(r.to_string(), "fpt:3:3");
        assert!("gf:2:3".parse::<RingSpec>().is_err());
        assert!("zmod:2".parse::<RingSpec>().is_err());
        assert!("zmod:x:2".parse::<RingSpec>().is_err());
    }

    #[test]
    fn worked_examples() {
        let z8 = RingSpec::zmod(2, 3).unwrap();
        let f8 = RingSpec::fpt(2, 3).unwrap();
        let e = |r: RingSpec, c| r.elem(c).unwrap();
        assert_eq!(e(z8, 3).mul(&e(z8, 3)).unwrap().code(), 1);
        assert_eq!(e(f8, 3).mul(&e(f8, 7)).unwrap().code(), 1);
        assert_eq!(e(f8, 2).add(&e(f8, 2)).unwrap().code(), 0);
        assert!(e(z8, 3).is_unit());
        assert!(!e(f8, 2).is_unit());
        assert!(!RingSpec::zmod(3, 3).unwrap().zero().is_unit());
        assert_eq!(e(z8, 3).inv().unwrap().code(), 3);
        assert_eq!(e(f8, 3).inv().unwrap().code(), 7);
        assert!(matches!(e(z8, 2).inv(), Err(Error::NotAUnit)));
        assert!(matches!(e(z8, 1).add(&e(f8, 1)), Err(Error::SpecMismatch)));
        assert!(z8.elem(8).is_err());
    }

    #[test]
    fn enumerate_in_code_order() {
        for spec in [RingSpec::zmod(2, 2).unwrap(), RingSpec::fpt(2, 2).unwrap()] {
            let codes: Vec<u64> = spec.elements().map(|e| e.code()).collect();
            assert_eq!(codes, vec![0, 1, 2, 3]);
        }
        for spec in small_specs() {
            assert_eq!(spec.elements().count() as u64, spec.q());
        }
    }

    #[test]
    fn display_polynomials() {
        let f = RingSpec::fpt(3, 3).unwrap();
        assert_eq!(f.elem(0).unwrap().to_string(), "0");
        assert_eq!(f.elem(1 + 2 * 3 + 9).unwrap().to_string(), "1+2t+t^2");
    }

    #[test]
    fn digits_roundtrip() {
        for spec in small_specs() {
            for code in 0..spec.q() {
                let d = spec.digits(code);
                assert!(d.iter().all(|&x| x < spec.p()));
                assert_eq!(spec.from_digits(&d), code);
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for spec in small_specs() {
            let q = spec.q();
            let (add, mul) = (|a, b| spec.add_codes(a, b), |a, b| spec.mul_codes(a, b));
            for a in 0..q {
                assert_eq!(add(a, 0), a);
                assert_eq!(mul(a, 1), a);
                assert_eq!(mul(a, 0), 0);
                assert_eq!(add(a, spec.neg_code(a)), 0);
                assert_eq!(spec.sub_codes(a, a), 0);
                for b in 0..q {
                    assert_eq!(add(a, b), add(b, a), "{spec}");
                    assert_eq!(mul(a, b), mul(b, a), "{spec}");
                    for c in 0..q {
                        assert_eq!(add(add(a, b), c), add(a, add(b, c)), "{spec}");
                        assert_eq!(mul(mul(a, b), c), mul(a, mul(b, c)), "{spec}");
                        assert_eq!(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), "{spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn units_are_exactly_invertibles() {
        for spec in small_specs() {
            for a in 0..spec.q() {
                let has_inverse = (0..spec.q()).any(|b| spec.mul_codes(a, b) == 1);
                assert_eq!(spec.is_unit_code(a), has_inverse, "{spec} {a}");
                if let Some(b) = spec.inv_code(a) {
                    assert_eq!(spec.mul_codes(a, b), 1);
                }
            }
        }
    }

    #[test]
    fn non_units_form_an_ideal() {
        for spec in small_specs() {
            let non_units: Vec<u64> = (0..spec.q()).filter(|&a| !spec.is_unit_code(a)).collect();
            assert_eq!(non_units.len() as u64, spec.q() / spec.p());
            for &a in &non_units {
                for &b in &non_units {
                    assert!(!spec.is_unit_code(spec.add_codes(a, b)));
                }
                for r in 0..spec.q() {
                    assert!(!spec.is_unit_code(spec.mul_codes(a, r)));
                }
            }
        }
    }

    #[test]
    fn tables_match_arithmetic() {
        let spec = RingSpec::fpt(2, 8).unwrap();
        let (add, mul) = spec.tables().unwrap();
        for a in (0..256u64).step_by(7) {
            for b in 0..256u64 {
                assert_eq!(add[(a * 256 + b) as usize] as u64, spec.add_codes(a, b));
                assert_eq!(mul[(a * 256 + b) as usize] as u64, spec.mul_codes(a, b));
            }
        }
        assert!(RingSpec::zmod(3, 6).unwrap().tables().is_none());
    }

    #[test]
    fn uniformizer_powers() {
        let f = RingSpec::fpt(2, 3).unwrap();
        assert_eq!(f.uniformizer_pow(1).code(), 2);
        assert_eq!(f.uniformizer_pow(2).code(), 4);
        assert_eq!(f.uniformizer_pow(3).code(), 0);
        let z = RingSpec::zmod(3, 2).unwrap();
        assert_eq!(z.uniformizer_pow(1).code(), 3);
    }
}
