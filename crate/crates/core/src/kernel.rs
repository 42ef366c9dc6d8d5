//! Allocation-free matrix arithmetic on packed 64-bit codes for the hot loops
//! of enumeration and class counting.
//!
//! The generic [`Mat`] type is the reference path; this kernel must agree
//! with it bit for bit (checked in the tests below).

use crate::error::{Error, Result};
use crate::matrix::{code_bound, Mat};
use crate::ring::{Family, RingSpec};

pub(crate) type Entries = [u32; 16];

#[derive(Clone, Copy)]
enum Arith {
    /// `Z/p^k` with `q <= 2^30`: accumulate products, reduce once.
    ZModNarrow,
    /// `Z/p^k` with larger `q`.
    ZModWide,
    /// `F_2[t]/(t^k)` with `q <= 256`: table products, xor sums.
    Char2Table,
    /// `F_p[t]/(t^k)` with `q <= 256`: table products and sums.
    Table,
    /// Anything else goes through [`RingSpec`] arithmetic.
    Generic,
}

pub(crate) struct MatKernel {
    n: usize,
    spec: RingSpec,
    q: u64,
    /// `log2(q)` when `q` is a power of two.
    shift: Option<u32>,
    arith: Arith,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl MatKernel {
    /// Fails when codes for this `(n, spec)` do not fit in 64 bits.
    pub(crate) fn new(n: usize, spec: RingSpec) -> Result<Self> {
        let bound = code_bound(n, spec)?;
        if bound > 1u128 << 64 {
            return Err(Error::CodeSpaceTooLarge(format!(
                "n={n} over {spec} (element tables need 64-bit codes)"
            )));
        }
        let q = spec.q();
        let shift = q.is_power_of_two().then(|| q.trailing_zeros());
        let tables = spec.tables();
        let arith = match (spec.family(), &tables) {
            (Family::ZMod, _) if q <= 1 << 30 => Arith::ZModNarrow,
            (Family::ZMod, _) => Arith::ZModWide,
            (Family::TruncPoly, Some(_)) if spec.p() == 2 => Arith::Char2Table,
            (Family::TruncPoly, Some(_)) => Arith::Table,
            (Family::TruncPoly, None) => Arith::Generic,
        };
        let (add, mul) = tables.unwrap_or_default();
        Ok(MatKernel {
            n,
            spec,
            q,
            shift,
            arith,
            add,
            mul,
        })
    }

    #[inline]
    pub(crate) fn unpack(&self, mut code: u64, out: &mut Entries) {
        let nn = self.n * self.n;
        match self.shift {
            Some(s) => {
                let mask = self.q - 1;
                for e in out[..nn].iter_mut() {
                    *e = (code & mask) as u32;
                    code >>= s;
                }
            }
            None => {
                for e in out[..nn].iter_mut() {
                    *e = (code % self.q) as u32;
                    code /= self.q;
                }
            }
        }
    }

    #[inline]
    pub(crate) fn pack(&self, e: &Entries) -> u64 {
        let nn = self.n * self.n;
        match self.shift {
            Some(s) => e[..nn]
                .iter()
                .rev()
                .fold(0u64, |acc, &x| (acc << s) | x as u64),
            None => e[..nn]
                .iter()
                .rev()
                .fold(0u64, |acc, &x| acc * self.q + x as u64),
        }
    }

    pub(crate) fn entries_of(&self, m: &Mat) -> Entries {
        let mut e = [0u32; 16];
        for (slot, &c) in e.iter_mut().zip(m.codes()) {
            *slot = c as u32;
        }
        e
    }

    #[cfg(test)]
    pub(crate) fn to_mat(&self, code: u64) -> Mat {
        Mat::unpack(crate::matrix::MatCode(code as u128), self.n, self.spec)
            .expect("code within kernel range")
    }

    #[inline]
    pub(crate) fn mul(&self, a: &Entries, b: &Entries, out: &mut Entries) {
        match self.n {
            2 => self.mul_n::<2>(a, b, out),
            3 => self.mul_n::<3>(a, b, out),
            _ => self.mul_n::<4>(a, b, out),
        }
    }

    #[inline(always)]
    fn mul_n<const N: usize>(&self, a: &Entries, b: &Entries, out: &mut Entries) {
        let q = self.q;
        match self.arith {
            Arith::ZModNarrow => {
                for i in 0..N {
                    for j in 0..N {
                        let mut acc = 0u64;
                        for l in 0..N {
                            acc += a[i * N + l] as u64 * b[l * N + j] as u64;
                        }
                        out[i * N + j] = (acc % q) as u32;
                    }
                }
            }
            Arith::ZModWide => {
                for i in 0..N {
                    for j in 0..N {
                        let mut acc = 0u128;
                        for l in 0..N {
                            acc += a[i * N + l] as u128 * b[l * N + j] as u128;
                        }
                        out[i * N + j] = (acc % q as u128) as u32;
                    }
                }
            }
            Arith::Char2Table => {
                let q = q as usize;
                for i in 0..N {
                    for j in 0..N {
                        let mut acc = 0u8;
                        for l in 0..N {
                            acc ^= self.mul[a[i * N + l] as usize * q + b[l * N + j] as usize];
                        }
                        out[i * N + j] = acc as u32;
                    }
                }
            }
            Arith::Table => {
                let q = q as usize;
                for i in 0..N {
                    for j in 0..N {
                        let mut acc = 0usize;
                        for l in 0..N {
                            let prod = self.mul[a[i * N + l] as usize * q + b[l * N + j] as usize];
                            acc = self.add[acc * q + prod as usize] as usize;
                        }
                        out[i * N + j] = acc as u32;
                    }
                }
            }
            Arith::Generic => {
                let s = self.spec;
                for i in 0..N {
                    for j in 0..N {
                        let mut acc = 0u64;
                        for l in 0..N {
                            let prod = s.mul_codes(a[i * N + l] as u64, b[l * N + j] as u64);
                            acc = s.add_codes(acc, prod);
                        }
                        out[i * N + j] = acc as u32;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn kernel_agrees_with_reference_matrices() {
        let mut rng = StdRng::seed_from_u64(3);
        for spec in [
            "zmod:2:8",
            "fpt:2:8",
            "zmod:3:2",
            "fpt:3:2",
            "fpt:5:3",
            "fpt:7:3",
            "zmod:3:7",
            "zmod:2:16",
        ] {
            let spec: RingSpec = spec.parse().unwrap();
            for n in 2..=4 {
                let Ok(kernel) = MatKernel::new(n, spec) else {
                    assert!(code_bound(n, spec).map_or(true, |b| b > 1 << 64));
                    continue;
                };
                for _ in 0..300 {
                    let codes_a: Vec<u64> =
                        (0..n * n).map(|_| rng.gen_range(0..spec.q())).collect();
                    let codes_b: Vec<u64> =
                        (0..n * n).map(|_| rng.gen_range(0..spec.q())).collect();
                    let a = Mat::new(spec, n, &codes_a).unwrap();
                    let b = Mat::new(spec, n, &codes_b).unwrap();
                    let code_a = a.pack().0 as u64;
                    assert_eq!(kernel.pack(&kernel.entries_of(&a)), code_a);
                    let mut ea = [0; 16];
                    kernel.unpack(code_a, &mut ea);
                    assert_eq!(ea, kernel.entries_of(&a));
                    let mut out = [0; 16];
                    kernel.mul(&ea, &kernel.entries_of(&b), &mut out);
                    assert_eq!(
                        kernel.pack(&out) as u128,
                        a.mul(&b).unwrap().pack().0,
                        "{n} {spec}"
                    );
                    assert_eq!(kernel.to_mat(code_a), a);
                }
            }
        }
    }
}
