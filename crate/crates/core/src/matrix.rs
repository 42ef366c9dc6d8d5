//! Small square matrices over a [`RingSpec`] and their packed integer codes.
//!
//! A matrix with row-major entries `e_0, ..., e_{n²-1}` packs to
//! `Σ e_j.code · q^j`, so codes are little-endian radix-`q` numbers with the
//! top-left entry as the least significant digit.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Family, RingElem, RingSpec};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 4;
const MAX_ENTRIES: usize = MAX_DIM * MAX_DIM;

/// Packed matrix code, the element identity used by enumeration and hashing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatCode(pub u128);

impl fmt::Display for MatCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDim(n))
    }
}

/// `q^(n²)`, the number of distinct matrix codes. Must not exceed `2^127`.
pub fn code_bound(n: usize, spec: RingSpec) -> Result<u128> {
    check_dim(n)?;
    (spec.q() as u128)
        .checked_pow((n * n) as u32)
        .filter(|&b| b <= 1u128 << 127)
        .ok_or_else(|| Error::CodeSpaceTooLarge(format!("n={n} over {spec}")))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    spec: RingSpec,
    entries: [u64; MAX_ENTRIES],
}

impl Mat {
    /// Builds a matrix from row-major entry codes.
    pub fn new(spec: RingSpec, n: usize, codes: &[u64]) -> Result<Mat> {
        code_bound(n, spec)?;
        if codes.len() != n * n {
            return Err(Error::DimMismatch(codes.len(), n * n));
        }
        let mut entries = [0u64; MAX_ENTRIES];
        for (slot, &c) in entries.iter_mut().zip(codes) {
            *slot = spec.elem(c)?.code();
        }
        Ok(Mat { n, spec, entries })
    }

    pub fn from_elems(n: usize, elems: &[RingElem]) -> Result<Mat> {
        let spec = elems.first().ok_or(Error::DimMismatch(0, n * n))?.spec();
        if elems.iter().any(|e| e.spec() != spec) {
            return Err(Error::SpecMismatch);
        }
        let codes: Vec<u64> = elems.iter().map(|e| e.code()).collect();
        Mat::new(spec, n, &codes)
    }

    pub fn zero(spec: RingSpec, n: usize) -> Result<Mat> {
        Mat::new(spec, n, &vec![0; n * n])
    }

    pub fn identity(spec: RingSpec, n: usize) -> Result<Mat> {
        let mut m = Mat::zero(spec, n)?;
        for i in 0..n {
            m.entries[i * n + i] = spec.one_code();
        }
        Ok(m)
    }

    /// The transvection `I + a·E_ij` (`i != j`).
    pub fn transvection(spec: RingSpec, n: usize, i: usize, j: usize, a: RingElem) -> Result<Mat> {
        if a.spec() != spec {
            return Err(Error::SpecMismatch);
        }
        if i == j || i >= n || j >= n {
            return Err(Error::Parse(format!(
                "({i},{j}) is not an off-diagonal position"
            )));
        }
        let mut m = Mat::identity(spec, n)?;
        m.entries[i * n + j] = a.code();
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    /// Row-major entry codes.
    pub fn codes(&self) -> &[u64] {
        &self.entries[..self.n * self.n]
    }

    pub fn get(&self, i: usize, j: usize) -> RingElem {
        self.spec
            .elem(self.entries[i * self.n + j])
            .expect("entries are canonical")
    }

    fn compatible(&self, other: &Mat) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        if self.n != other.n {
            return Err(Error::DimMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.compatible(other)?;
        let (n, s) = (self.n, self.spec);
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = (0..n).fold(0, |acc, l| {
                    s.add_codes(
                        acc,
                        s.mul_codes(self.entries[i * n + l], other.entries[l * n + j]),
                    )
                });
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: RingElem) -> Result<Mat> {
        if c.spec() != self.spec {
            return Err(Error::SpecMismatch);
        }
        let mut out = *self;
        for e in out.entries[..self.n * self.n].iter_mut() {
            *e = self.spec.mul_codes(*e, c.code());
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        out
    }

    /// Determinant of the submatrix on `rows` x `cols` by Laplace expansion
    /// along its first row.
    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> u64 {
        let s = self.spec;
        match rows.len() {
            0 => s.one_code(),
            1 => self.entries[rows[0] * self.n + cols[0]],
            _ => {
                let mut acc = 0;
                let mut sub_cols = Vec::with_capacity(cols.len() - 1);
                for (idx, &c) in cols.iter().enumerate() {
                    let a = self.entries[rows[0] * self.n + c];
                    if a == 0 {
                        continue;
                    }
                    sub_cols.clear();
                    sub_cols.extend(cols.iter().copied().filter(|&x| x != c));
                    let term = s.mul_codes(a, self.minor_det(&rows[1..], &sub_cols));
                    acc = if idx % 2 == 0 {
                        s.add_codes(acc, term)
                    } else {
                        s.sub_codes(acc, term)
                    };
                }
                acc
            }
        }
    }

    pub fn det(&self) -> RingElem {
        let all: Vec<usize> = (0..self.n).collect();
        self.spec
            .elem(self.minor_det(&all, &all))
            .expect("determinant code is canonical")
    }

    /// Classical adjoint: `adj[j][i] = (-1)^(i+j) · det(minor(i, j))`.
    pub fn adjugate(&self) -> Mat {
        let n = self.n;
        let s = self.spec;
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let m = self.minor_det(&rows, &cols);
                out.entries[j * n + i] = if (i + j) % 2 == 0 { m } else { s.neg_code(m) };
            }
        }
        out
    }

    /// Inverse as `adj(A) · det(A)^-1`.
    pub fn inverse(&self) -> Result<Mat> {
        let d = self.det().inv().map_err(|_| Error::NotInvertible)?;
        self.adjugate().scale(d)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n * n).all(|idx| {
            let expect = if idx % (n + 1) == 0 { 1 } else { 0 };
            self.entries[idx] == expect
        })
    }

    pub fn pack(&self) -> MatCode {
        let q = self.spec.q() as u128;
        MatCode(
            self.codes()
                .iter()
                .rev()
                .fold(0u128, |acc, &e| acc * q + e as u128),
        )
    }

    pub fn unpack(code: MatCode, n: usize, spec: RingSpec) -> Result<Mat> {
        let bound = code_bound(n, spec)?;
        if code.0 >= bound {
            return Err(Error::CodeOutOfRange {
                code: code.0,
                bound,
            });
        }
        let q = spec.q() as u128;
        let mut rest = code.0;
        let mut entries = [0u64; MAX_ENTRIES];
        for e in entries[..n * n].iter_mut() {
            *e = (rest % q) as u64;
            rest /= q;
        }
        Ok(Mat { n, spec, entries })
    }

    /// Parses a literal such as `1,t,0;0,1,0;0,0,1`.
    ///
    /// Rows are separated by `;` and entries by `,`. An entry is a sum of
    /// terms joined by `+`, each an optional `-` followed by an element code,
    /// `t`, or `t^i` (the last two only over truncated polynomial rings).
    pub fn parse(s: &str, spec: RingSpec) -> Result<Mat> {
        let rows: Vec<&str> = s.trim().split(';').collect();
        let n = rows.len();
        let mut elems = Vec::with_capacity(n * n);
        for row in &rows {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != n {
                return Err(Error::Parse(format!(
                    "matrix literal {s:?} is not square ({} entries in a row of {n})",
                    cells.len()
                )));
            }
            for cell in cells {
                elems.push(parse_entry(cell, spec)?);
            }
        }
        check_dim(n)?;
        Mat::from_elems(n, &elems)
    }
}

fn parse_entry(cell: &str, spec: RingSpec) -> Result<RingElem> {
    let bad = || Error::Parse(format!("invalid matrix entry {cell:?} over {spec}"));
    let mut acc = spec.zero();
    for term in cell.split('+') {
        let term = term.trim();
        let (negate, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, term),
        };
        let value = if let Some(rest) = body.strip_prefix('t') {
            if spec.family() != Family::TruncPoly {
                return Err(bad());
            }
            let exp = match rest.strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            spec.uniformizer_pow(exp)
        } else {
            let code: u64 = body.parse().map_err(|_| bad())?;
            spec.elem(code)?
        };
        let value = if negate { value.neg() } else { value };
        acc = acc.add(&value)?;
    }
    Ok(acc)
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}]({})", self.spec, self)
    }
}

impl fmt::Display for Mat {
    /// Prints in the literal syntax accepted by [`Mat::parse`] when the
    /// entries are codes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        for i in 0..n {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entries[i * n + j])?;
            }
        }
        Ok(())
    }
}
