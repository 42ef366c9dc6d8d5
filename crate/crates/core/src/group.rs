//! The groups `SL_n(R)`: closed-form orders, generator catalogs, and
//! enumeration of the generated subgroup by breadth-first search over the
//! Cayley graph.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Entries, MatKernel};
use crate::matrix::{check_dim, code_bound, Mat};
use crate::ring::{Family, RingSpec};
use crate::table::ElementTable;

/// Default element budget for enumeration.
pub const DEFAULT_BUDGET_ELEMS: u64 = 200_000_000;
/// Default memory budget for enumeration and class counting.
pub const DEFAULT_BUDGET_BYTES: u64 = 8 << 30;
/// Largest code space that gets a direct-indexed bitset instead of a hash set.
pub const DENSE_UNIVERSE_MAX: u128 = 1 << 32;

/// `SL_n(R)` for `2 <= n <= 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    n: usize,
    ring: RingSpec,
}

impl GroupSpec {
    pub fn new(n: usize, ring: RingSpec) -> Result<Self> {
        check_dim(n)?;
        code_bound(n, ring)?;
        Ok(GroupSpec { n, ring })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.ring, self.n).expect("validated at construction")
    }

    /// `|SL_n|` from the closed form
    /// `p^((n²-1)(k-1)) / (p-1) · Π_{0<=i<n} (p^n - p^i)`.
    ///
    /// The product is `|GL_n(F_p)|` and the formula depends only on
    /// `(n, p, k)`, so both ring families share it.
    pub fn order_formula(&self) -> BigUint {
        order_formula(self.n, self.ring.p(), self.ring.k())
    }

    pub fn is_member(&self, m: &Mat) -> Result<bool> {
        if m.spec() != self.ring {
            return Err(Error::SpecMismatch);
        }
        if m.n() != self.n {
            return Err(Error::DimMismatch(m.n(), self.n));
        }
        Ok(m.det().code() == 1)
    }
}

pub fn order_formula(n: usize, p: u64, k: u32) -> BigUint {
    let p_big = BigUint::from(p);
    let n32 = n as u32;
    let p_n = p_big.pow(n32);
    let gl = (0..n32).fold(BigUint::one(), |acc, i| acc * (&p_n - p_big.pow(i)));
    let kernel = p_big.pow((n32 * n32 - 1) * (k - 1));
    kernel * gl / (p - 1)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SL_{}({})", self.n, self.ring)
    }
}

/// Parses the `sl:<n>` group argument.
pub fn parse_group_dim(s: &str) -> Result<usize> {
    let n = s
        .strip_prefix("sl:")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::Parse(format!("group {s:?} must look like sl:<n>")))?;
    check_dim(n)?;
    Ok(n)
}

/// Named generator catalogs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Catalog {
    /// The published matrices over truncated polynomial rings; over `Z/p^k`
    /// this resolves to [`Catalog::Elementary`].
    Paper,
    /// All transvections `e_ij(1)`.
    Elementary,
    /// All transvections `e_ij(t^m)` (or `e_ij(p^m)`), `0 <= m < k`.
    ElementaryFull,
}

impl Catalog {
    pub fn name(self) -> &'static str {
        match self {
            Catalog::Paper => "paper",
            Catalog::Elementary => "elementary",
            Catalog::ElementaryFull => "elementary-full",
        }
    }
}

impl FromStr for Catalog {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Catalog::Paper),
            "elementary" => Ok(Catalog::Elementary),
            "elementary-full" => Ok(Catalog::ElementaryFull),
            other => Err(Error::UnknownCatalog(other.to_string())),
        }
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    name: String,
    group: GroupSpec,
    mats: Vec<Mat>,
    /// Whether `mats` already lists the inverses explicitly. Enumeration and
    /// conjugation add inverses either way.
    inverses_included: bool,
}

impl GeneratorSet {
    /// Validates that every matrix lies in `group`.
    pub fn new(name: impl Into<String>, group: GroupSpec, mats: Vec<Mat>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::Parse(
                "a generator set needs at least one matrix".into(),
            ));
        }
        for m in &mats {
            if !group.is_member(m)? {
                return Err(Error::NotInGroup);
            }
        }
        Ok(GeneratorSet {
            name: name.into(),
            group,
            mats,
            inverses_included: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn inverses_included(&self) -> bool {
        self.inverses_included
    }

    /// Generators followed by their inverses, without duplicates or the identity.
    pub fn alphabet(&self) -> Vec<Mat> {
        let mut out: Vec<Mat> = Vec::with_capacity(2 * self.mats.len());
        let inverses = self
            .mats
            .iter()
            .map(|m| m.inverse().expect("members have unit determinant"));
        for m in self.mats.iter().copied().chain(inverses) {
            if !m.is_identity() && !out.contains(&m) {
                out.push(m);
            }
        }
        out
    }

    /// Copy restricted to the generators at `indices`.
    pub fn subset(&self, indices: &[usize]) -> Result<GeneratorSet> {
        let mats = indices
            .iter()
            .map(|&i| {
                self.mats
                    .get(i)
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("no generator at index {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(format!("{}[{indices:?}]", self.name), self.group, mats)
    }
}

fn paper_matrices(group: GroupSpec) -> Result<Vec<Mat>> {
    let ring = group.ring();
    let literals: &[&str] = match group.n() {
        2 => &["1,1;0,1", "1,0;t,1", "1+t^2,t^2;1,1"],
        3 => &[
            "0,1,0;0,0,1;1,0,0",
            "1,0,1;0,-1,-1;0,1,0",
            "0,1,0;1,0,0;-1,-1,-1",
            "1,t,0;0,1,0;0,0,1",
        ],
        _ => &[
            "0,1,0,0;0,0,1,0;0,0,0,1;1,0,0,0",
            "1,0,1,0;0,-1,-1,0;0,1,0,0;0,0,0,1",
            "0,1,0,0;1,0,0,0;-1,-1,-1,0;0,0,0,1",
            "1,t,0,0;0,1,0,0;0,0,1,0;0,0,0,1",
        ],
    };
    literals.iter().map(|s| Mat::parse(s, ring)).collect()
}

fn transvections(group: GroupSpec, full: bool) -> Result<Vec<Mat>> {
    let (n, ring) = (group.n(), group.ring());
    let powers = if full { ring.k() } else { 1 };
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for m in 0..powers {
                out.push(Mat::transvection(ring, n, i, j, ring.uniformizer_pow(m))?);
            }
        }
    }
    Ok(out)
}

/// Looks up a named generator catalog for `group`.
///
/// `paper` returns the published matrices over `F_p[t]/(t^k)` (with `-1`
/// written as the digit `p-1`); it fails with [`Error::NotInGroup`] where one
/// of them has determinant other than 1, e.g. the 4-cycle over odd `p`.
pub fn catalog_generators(group: GroupSpec, name: &str) -> Result<GeneratorSet> {
    let catalog: Catalog = name.parse()?;
    let (label, mats) = match (catalog, group.ring().family()) {
        (Catalog::Paper, Family::TruncPoly) => ("paper", paper_matrices(group)?),
        (Catalog::Paper, Family::ZMod) | (Catalog::Elementary, _) => {
            ("elementary", transvections(group, false)?)
        }
        (Catalog::ElementaryFull, _) => ("elementary-full", transvections(group, true)?),
    };
    GeneratorSet::new(label, group, mats)
}

/// The catalog used when none is requested: the published set over truncated
/// polynomial rings when it consists of group members, `elementary-full`
/// otherwise; `elementary` over `Z/p^k`.
pub fn default_catalog(group: GroupSpec) -> Catalog {
    match group.ring().family() {
        Family::ZMod => Catalog::Elementary,
        Family::TruncPoly => match catalog_generators(group, "paper") {
            Ok(_) => Catalog::Paper,
            Err(_) => Catalog::ElementaryFull,
        },
    }
}

pub fn default_generators(group: GroupSpec) -> Result<GeneratorSet> {
    catalog_generators(group, default_catalog(group).name())
}

/// Resource limits and parallelism for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Largest group order that will be enumerated.
    pub budget_elems: u64,
    /// Ceiling on the estimated working set in bytes.
    pub budget_bytes: u64,
    /// Worker threads; 1 selects the sequential reference path.
    pub threads: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            budget_elems: DEFAULT_BUDGET_ELEMS,
            budget_bytes: DEFAULT_BUDGET_BYTES,
            threads: 1,
        }
    }
}

impl EnumConfig {
    pub(crate) fn pool(&self) -> Result<Option<rayon::ThreadPool>> {
        if self.threads <= 1 {
            return Ok(None);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map(Some)
            .map_err(|e| Error::Invariant(format!("cannot start worker pool: {e}")))
    }
}

enum Visited {
    Dense { words: Vec<u64>, len: u64 },
    Sparse(FxHashSet<u64>),
}

impl Visited {
    fn new(universe: u128) -> Visited {
        if universe <= DENSE_UNIVERSE_MAX {
            let words = universe.div_ceil(64) as usize;
            Visited::Dense {
                words: vec![0; words],
                len: 0,
            }
        } else {
            Visited::Sparse(FxHashSet::default())
        }
    }

    /// Working-set estimate for a closure of `elems` elements.
    fn estimate_bytes(universe: u128, elems: u64) -> u64 {
        if universe <= DENSE_UNIVERSE_MAX {
            (universe / 8) as u64
        } else {
            elems.saturating_mul(16)
        }
    }

    #[inline]
    fn insert(&mut self, code: u64) -> bool {
        match self {
            Visited::Dense { words, len } => {
                let (w, bit) = ((code >> 6) as usize, 1u64 << (code & 63));
                if words[w] & bit == 0 {
                    words[w] |= bit;
                    *len += 1;
                    true
                } else {
                    false
                }
            }
            Visited::Sparse(set) => set.insert(code),
        }
    }

    fn len(&self) -> u64 {
        match self {
            Visited::Dense { len, .. } => *len,
            Visited::Sparse(set) => set.len() as u64,
        }
    }

    fn into_sorted(self) -> Vec<u64> {
        match self {
            Visited::Dense { words, len } => {
                let mut out = Vec::with_capacity(len as usize);
                for (w, &word) in words.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        out.push(((w as u64) << 6) | bits.trailing_zeros() as u64);
                        bits &= bits - 1;
                    }
                }
                out
            }
            Visited::Sparse(set) => {
                let mut out: Vec<u64> = set.into_iter().collect();
                out.sort_unstable();
                out
            }
        }
    }
}

/// Frontier elements expanded per batch in the parallel path.
const BATCH: usize = 1 << 16;

fn expand(kernel: &MatKernel, alphabet: &[Entries], chunk: &[u64], out: &mut Vec<u64>) {
    let mut a = [0u32; 16];
    let mut prod = [0u32; 16];
    for &code in chunk {
        kernel.unpack(code, &mut a);
        for s in alphabet {
            kernel.mul(&a, s, &mut prod);
            out.push(kernel.pack(&prod));
        }
    }
}

/// Breadth-first closure of the identity under right multiplication by the
/// generators and their inverses.
///
/// Returns the sorted codes of the generated subgroup. Fails with
/// [`Error::LimitExceeded`] as soon as more than `limit` elements are reached.
pub fn bfs_enumerate(gens: &GeneratorSet, limit: u64, cfg: &EnumConfig) -> Result<ElementTable> {
    let group = gens.group();
    let kernel = MatKernel::new(group.n(), group.ring())?;
    let universe = code_bound(group.n(), group.ring())?;

    let expected = (limit as u128).min(universe) as u64;
    let needed =
        Visited::estimate_bytes(universe, expected).saturating_add(expected.saturating_mul(8));
    if needed > cfg.budget_bytes {
        return Err(Error::MemoryBudgetExceeded {
            needed,
            budget: cfg.budget_bytes,
        });
    }

    let alphabet: Vec<Entries> = gens
        .alphabet()
        .iter()
        .map(|m| kernel.entries_of(m))
        .collect();
    let identity = group.identity().pack().0 as u64;
    let pool = cfg.pool()?;

    let mut visited = Visited::new(universe);
    visited.insert(identity);
    let mut frontier = vec![identity];
    let mut candidates = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for batch in frontier.chunks(BATCH) {
            match &pool {
                None => {
                    candidates.clear();
                    expand(&kernel, &alphabet, batch, &mut candidates);
                }
                Some(pool) => {
                    let parts: Vec<Vec<u64>> = pool.install(|| {
                        batch
                            .par_chunks(1024)
                            .map(|chunk| {
                                let mut out = Vec::with_capacity(chunk.len() * alphabet.len());
                                expand(&kernel, &alphabet, chunk, &mut out);
                                out
                            })
                            .collect()
                    });
                    candidates.clear();
                    candidates.extend(parts.into_iter().flatten());
                }
            }
            for &c in &candidates {
                if visited.insert(c) {
                    if visited.len() > limit {
                        return Err(Error::LimitExceeded(limit));
                    }
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    ElementTable::new(group, visited.into_sorted())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub claimed_order: BigUint,
    pub enumerated_order: u64,
    pub complete: bool,
}

/// Checks that `gens` generates all of `SL_n(R)` by enumerating the closure
/// and comparing its size with [`GroupSpec::order_formula`].
pub fn verify_generators(gens: &GeneratorSet, cfg: &EnumConfig) -> Result<VerifyReport> {
    verify_and_enumerate(gens, cfg).map(|(report, _)| report)
}

/// [`verify_generators`], also returning the enumerated table.
pub fn verify_and_enumerate(
    gens: &GeneratorSet,
    cfg: &EnumConfig,
) -> Result<(VerifyReport, ElementTable)> {
    let claimed = gens.group().order_formula();
    let claimed_small = claimed
        .to_u64()
        .filter(|&o| o <= cfg.budget_elems)
        .ok_or_else(|| Error::BudgetExceeded {
            order: claimed.to_string(),
            budget: cfg.budget_elems,
        })?;
    let table = bfs_enumerate(gens, claimed_small, cfg)?;
    let report = VerifyReport {
        enumerated_order: table.order(),
        complete: table.order() == claimed_small,
        claimed_order: claimed,
    };
    Ok((report, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, ring: &str) -> GroupSpec {
        GroupSpec::new(n, ring.parse().unwrap()).unwrap()
    }

    /// Brute-force count of determinant-one matrices.
    fn brute_force_order(g: GroupSpec) -> u64 {
        let bound = code_bound(g.n(), g.ring()).unwrap();
        (0..bound)
            .filter(|&c| {
                Mat::unpack(crate::matrix::MatCode(c), g.n(), g.ring())
                    .unwrap()
                    .det()
                    .code()
                    == 1
            })
            .count() as u64
    }

    #[test]
    fn order_formula_values() {
        assert_eq!(order_formula(4, 2, 3).to_string(), "21646635171840");
        assert_eq!(order_formula(2, 2, 1), BigUint::from(6u32));
        assert_eq!(order_formula(2, 2, 3), BigUint::from(384u32));
        assert_eq!(order_formula(3, 3, 2), BigUint::from(36_846_576u64));
        assert_eq!(order_formula(3, 3, 3), BigUint::from(241_750_385_136u64));
        for (n, p, k) in [(2, 2, 8), (3, 2, 2), (2, 5, 3), (4, 3, 1)] {
            assert_eq!(
                group(n, &format!("zmod:{p}:{k}")).order_formula(),
                group(n, &format!("fpt:{p}:{k}")).order_formula()
            );
        }
    }

    #[test]
    fn order_formula_matches_brute_force() {
        for (n, ring) in [
            (2, "zmod:2:1"),
            (2, "fpt:2:2"),
            (2, "zmod:2:2"),
            (2, "zmod:3:1"),
            (3, "zmod:2:1"),
        ] {
            let g = group(n, ring);
            assert_eq!(
                BigUint::from(brute_force_order(g)),
                g.order_formula(),
                "{g}"
            );
        }
    }

    #[test]
    fn named_catalogs() {
        let g = group(2, "fpt:2:3");
        let gens = catalog_generators(g, "paper").unwrap();
        let expect: Vec<Mat> = ["1,1;0,1", "1,0;t,1", "1+t^2,t^2;1,1"]
            .iter()
            .map(|s| Mat::parse(s, g.ring()).unwrap())
            .collect();
        assert_eq!(gens.mats(), expect.as_slice());
        assert!(!gens.inverses_included());

        let g4 = group(4, "fpt:2:3");
        let gens = catalog_generators(g4, "paper").unwrap();
        assert_eq!(gens.mats().len(), 4);
        let w = Mat::parse("1,t,0,0;0,1,0,0;0,0,1,0;0,0,0,1", g4.ring()).unwrap();
        assert_eq!(gens.mats()[3], w);

        let g3 = group(3, "fpt:3:3");
        let gens = catalog_generators(g3, "paper").unwrap();
        assert_eq!(
            gens.mats()[1],
            Mat::parse("1,0,1;0,2,2;0,1,0", g3.ring()).unwrap()
        );

        // The 4-cycle has determinant -1, which is not 1 in odd characteristic.
        assert!(matches!(
            catalog_generators(group(4, "fpt:3:1"), "paper"),
            Err(Error::NotInGroup)
        ));
        assert_eq!(
            default_catalog(group(4, "fpt:3:1")),
            Catalog::ElementaryFull
        );
        assert_eq!(default_catalog(group(4, "fpt:2:3")), Catalog::Paper);
        assert_eq!(default_catalog(group(4, "zmod:2:3")), Catalog::Elementary);
    }

    #[test]
    fn elementary_catalogs() {
        let g = group(2, "zmod:2:1");
        let gens = catalog_generators(g, "elementary").unwrap();
        let expect: Vec<Mat> = ["1,1;0,1", "1,0;1,1"]
            .iter()
            .map(|s| Mat::parse(s, g.ring()).unwrap())
            .collect();
        assert_eq!(gens.mats(), expect.as_slice());
        // Over Z/p^k, "paper" falls back to the elementary set.
        assert_eq!(catalog_generators(g, "paper").unwrap().name(), "elementary");

        let full = catalog_generators(group(3, "fpt:3:2"), "elementary-full").unwrap();
        assert_eq!(full.mats().len(), 12);
        assert!(matches!(
            catalog_generators(g, "magma"),
            Err(Error::UnknownCatalog(_))
        ));
    }

    #[test]
    fn membership() {
        let g = group(2, "zmod:2:3");
        assert!(g.is_member(&g.identity()).unwrap());
        assert!(!g
            .is_member(&Mat::parse("2,0;0,1", g.ring()).unwrap())
            .unwrap());
        let f = group(4, "fpt:2:3");
        let w = Mat::parse("1,t,0,0;0,1,0,0;0,0,1,0;0,0,0,1", f.ring()).unwrap();
        assert!(f.is_member(&w).unwrap());
        assert!(matches!(g.is_member(&w), Err(Error::SpecMismatch)));
        let other = group(3, "zmod:2:3");
        assert!(matches!(
            other.is_member(&g.identity()),
            Err(Error::DimMismatch(2, 3))
        ));
        let bad = Mat::parse("2,0;0,1", g.ring()).unwrap();
        assert!(matches!(
            GeneratorSet::new("bad", g, vec![bad]),
            Err(Error::NotInGroup)
        ));
    }

    #[test]
    fn alphabet_adds_inverses_without_duplicates() {
        let g = group(2, "fpt:2:1");
        let gens = catalog_generators(g, "paper").unwrap();
        // t = 0 turns the second generator into the identity and the third into
        // a transvection; all transvections over F_2 are involutions.
        assert_eq!(gens.alphabet().len(), 2);
        let z = group(2, "zmod:3:1");
        assert_eq!(
            catalog_generators(z, "elementary")
                .unwrap()
                .alphabet()
                .len(),
            4
        );
    }

    #[test]
    fn bfs_small_groups() {
        let cfg = EnumConfig::default();
        let gens = catalog_generators(group(2, "fpt:2:1"), "paper").unwrap();
        assert_eq!(bfs_enumerate(&gens, 100, &cfg).unwrap().order(), 6);
        let gens = catalog_generators(group(2, "zmod:2:3"), "elementary").unwrap();
        assert_eq!(bfs_enumerate(&gens, 1000, &cfg).unwrap().order(), 384);
        assert!(matches!(
            bfs_enumerate(&gens, 100, &cfg),
            Err(Error::LimitExceeded(100))
        ));
        let tight = EnumConfig {
            budget_bytes: 16,
            ..cfg
        };
        assert!(matches!(
            bfs_enumerate(&gens, 1000, &tight),
            Err(Error::MemoryBudgetExceeded { .. })
        ));
    }

    #[test]
    fn bfs_matches_brute_force_membership() {
        let cfg = EnumConfig::default();
        for (n, ring) in [
            (2, "zmod:2:2"),
            (2, "fpt:2:2"),
            (2, "zmod:3:1"),
            (3, "fpt:2:1"),
        ] {
            let g = group(n, ring);
            let table = bfs_enumerate(&default_generators(g).unwrap(), 1 << 20, &cfg).unwrap();
            let bound = code_bound(n, g.ring()).unwrap();
            let brute: Vec<u64> = (0..bound)
                .filter(|&c| {
                    let m = Mat::unpack(crate::matrix::MatCode(c), n, g.ring()).unwrap();
                    m.det().code() == 1
                })
                .map(|c| c as u64)
                .collect();
            assert_eq!(table.codes(), brute.as_slice(), "{g}");
        }
    }

    #[test]
    fn parallel_bfs_is_deterministic() {
        let g = group(2, "fpt:2:5");
        let gens = default_generators(g).unwrap();
        let seq = bfs_enumerate(&gens, u64::MAX, &EnumConfig::default()).unwrap();
        let par = bfs_enumerate(
            &gens,
            u64::MAX,
            &EnumConfig {
                threads: 3,
                ..EnumConfig::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn sparse_visited_set_path() {
        // 625^4 > 2^32 codes, so the hash-set path is taken.
        let g = group(2, "zmod:5:4");
        assert!(code_bound(2, g.ring()).unwrap() > DENSE_UNIVERSE_MAX);
        let g = group(2, "zmod:5:2");
        let gens = default_generators(g).unwrap();
        let dense = bfs_enumerate(&gens, u64::MAX, &EnumConfig::default()).unwrap();
        let mut visited = Visited::new(DENSE_UNIVERSE_MAX + 1);
        for &c in dense.codes() {
            assert!(visited.insert(c));
        }
        assert_eq!(visited.into_sorted(), dense.codes());
    }

    #[test]
    fn verify_reports() {
        let cfg = EnumConfig::default();
        let g = group(2, "fpt:2:3");
        let gens = catalog_generators(g, "paper").unwrap();
        let report = verify_generators(&gens, &cfg).unwrap();
        assert!(report.complete);
        assert_eq!(report.enumerated_order, 384);

        let partial = gens.subset(&[0]).unwrap();
        let report = verify_generators(&partial, &cfg).unwrap();
        assert!(!report.complete);
        assert_eq!(report.enumerated_order, 2);

        let big = catalog_generators(group(3, "fpt:3:3"), "paper").unwrap();
        assert!(matches!(
            verify_generators(&big, &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn group_dim_parsing() {
        assert_eq!(parse_group_dim("sl:3").unwrap(), 3);
        assert!(parse_group_dim("gl:3").is_err());
        assert!(matches!(
            parse_group_dim("sl:5"),
            Err(Error::UnsupportedDim(5))
        ));
    }
}
