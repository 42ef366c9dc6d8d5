//! Conjugacy classes of an enumerated group.
//!
//! Classes are the connected components of the graph joining `g` to
//! `s·g·s⁻¹` for every generator `s` (and inverse). Orbits under conjugation
//! by a generating set are the full conjugacy classes, so a union-find pass
//! over the element table yields the partition.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{EnumConfig, GeneratorSet, GroupSpec, DENSE_UNIVERSE_MAX};
use crate::kernel::{Entries, MatKernel};
use crate::matrix::{code_bound, Mat};
use crate::table::ElementTable;

/// Largest order accepted by [`burnside_count`].
pub const BURNSIDE_MAX_ORDER: u64 = 10_000;

/// Maps element codes to table indices.
enum CodeIndex<'a> {
    /// Bitset over the whole code space with a per-word prefix rank.
    Dense { words: Vec<u64>, ranks: Vec<u32> },
    /// Binary search on the sorted table.
    Sorted(&'a [u64]),
}

impl<'a> CodeIndex<'a> {
    fn estimate_bytes(universe: u128) -> u64 {
        if universe <= DENSE_UNIVERSE_MAX {
            (universe.div_ceil(64) * 12) as u64
        } else {
            0
        }
    }

    fn build(table: &'a ElementTable) -> Result<Self> {
        let g = table.group();
        let universe = code_bound(g.n(), g.ring())?;
        if universe > DENSE_UNIVERSE_MAX {
            return Ok(CodeIndex::Sorted(table.codes()));
        }
        let mut words = vec![0u64; universe.div_ceil(64) as usize];
        for &c in table.codes() {
            words[(c >> 6) as usize] |= 1 << (c & 63);
        }
        let mut ranks = Vec::with_capacity(words.len());
        let mut acc = 0u32;
        for w in &words {
            ranks.push(acc);
            acc += w.count_ones();
        }
        Ok(CodeIndex::Dense { words, ranks })
    }

    #[inline]
    fn get(&self, code: u64) -> Option<u32> {
        match self {
            CodeIndex::Dense { words, ranks } => {
                let w = (code >> 6) as usize;
                let word = *words.get(w)?;
                let bit = 1u64 << (code & 63);
                (word & bit != 0).then(|| ranks[w] + (word & (bit - 1)).count_ones())
            }
            CodeIndex::Sorted(codes) => codes.binary_search(&code).ok().map(|i| i as u32),
        }
    }
}

/// Disjoint sets over `0..len` with path halving and union by size.
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }

    pub fn set_size(&mut self, x: u32) -> u32 {
        let r = self.find(x);
        self.size[r as usize]
    }
}

/// The conjugacy classes of an [`ElementTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    group: GroupSpec,
    order: u64,
    /// Least code of each class, ascending.
    representatives: Vec<u64>,
    /// Size of the class of `representatives[i]`.
    sizes_by_class: Vec<u64>,
    /// Class number of every table index.
    labels: Vec<u32>,
}

impl ClassPartition {
    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Class sizes in ascending order.
    pub fn class_sizes(&self) -> Vec<u64> {
        let mut sizes = self.sizes_by_class.clone();
        sizes.sort_unstable();
        sizes
    }

    /// Representative codes (least code of each class), ascending.
    pub fn representatives(&self) -> &[u64] {
        &self.representatives
    }

    /// `(representative code, class size)` pairs, by representative.
    pub fn classes(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.representatives
            .iter()
            .copied()
            .zip(self.sizes_by_class.iter().copied())
    }

    /// Class number of the element at table index `index`.
    pub fn label(&self, index: usize) -> u32 {
        self.labels[index]
    }

    pub fn export(&self) -> PartitionExport {
        PartitionExport {
            group: self.group.to_string(),
            order: self.order,
            class_count: self.class_count(),
            class_sizes: self.class_sizes(),
            representatives: self.representatives.iter().map(u64::to_string).collect(),
        }
    }

    fn check_invariants(&self) -> Result<()> {
        let total: u64 = self.sizes_by_class.iter().sum();
        if total != self.order {
            return Err(Error::Invariant(format!(
                "class sizes sum to {total}, group order is {}",
                self.order
            )));
        }
        if let Some(s) = self
            .sizes_by_class
            .iter()
            .find(|&&s| !self.order.is_multiple_of(s))
        {
            return Err(Error::Invariant(format!(
                "class size {s} does not divide the group order {}",
                self.order
            )));
        }
        Ok(())
    }
}

/// JSON form of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionExport {
    pub group: String,
    pub order: u64,
    pub class_count: usize,
    pub class_sizes: Vec<u64>,
    pub representatives: Vec<String>,
}

struct Conjugator {
    s: Entries,
    s_inv: Entries,
}

fn conjugators(kernel: &MatKernel, gens: &GeneratorSet) -> Vec<Conjugator> {
    gens.alphabet()
        .iter()
        .map(|m| Conjugator {
            s: kernel.entries_of(m),
            s_inv: kernel.entries_of(&m.inverse().expect("alphabet members are invertible")),
        })
        .collect()
}

/// Writes the table index of `s·g·s⁻¹` for each conjugator into `out`.
fn conjugate_indices(
    kernel: &MatKernel,
    index: &CodeIndex<'_>,
    conj: &[Conjugator],
    codes: &[u64],
    out: &mut Vec<u32>,
) -> Result<()> {
    let (mut g, mut sg, mut sgs) = ([0u32; 16], [0u32; 16], [0u32; 16]);
    for &code in codes {
        kernel.unpack(code, &mut g);
        for c in conj {
            kernel.mul(&c.s, &g, &mut sg);
            kernel.mul(&sg, &c.s_inv, &mut sgs);
            let image = kernel.pack(&sgs);
            out.push(index.get(image).ok_or(Error::IndexNotFound(image))?);
        }
    }
    Ok(())
}

/// Elements handled per batch in the parallel path.
const BATCH: usize = 1 << 18;

/// Partitions `table` into conjugacy classes using conjugation by `gens`.
///
/// `gens` must generate the group whose elements `table` lists. A conjugate
/// missing from the table means the table is not closed and is reported as
/// [`Error::IndexNotFound`].
pub fn count_classes(
    table: &ElementTable,
    gens: &GeneratorSet,
    cfg: &EnumConfig,
) -> Result<ClassPartition> {
    let group = table.group();
    if gens.group() != group {
        return Err(Error::SpecMismatch);
    }
    let order = table.order();
    if order > u32::MAX as u64 {
        return Err(Error::BudgetExceeded {
            order: order.to_string(),
            budget: u32::MAX as u64,
        });
    }
    let universe = code_bound(group.n(), group.ring())?;
    let needed = CodeIndex::estimate_bytes(universe) + order * 12;
    if needed > cfg.budget_bytes {
        return Err(Error::MemoryBudgetExceeded {
            needed,
            budget: cfg.budget_bytes,
        });
    }

    let kernel = MatKernel::new(group.n(), group.ring())?;
    let conj = conjugators(&kernel, gens);
    let index = CodeIndex::build(table)?;
    let mut uf = UnionFind::new(order as usize);
    let codes = table.codes();
    let width = conj.len().max(1);

    match cfg.pool()? {
        None => {
            let mut images = Vec::with_capacity(width);
            for (i, &code) in codes.iter().enumerate() {
                images.clear();
                conjugate_indices(&kernel, &index, &conj, &[code], &mut images)?;
                for &j in &images {
                    uf.union(i as u32, j);
                }
            }
        }
        Some(pool) => {
            for (b, batch) in codes.chunks(BATCH).enumerate() {
                let parts: Vec<Result<Vec<u32>>> = pool.install(|| {
                    batch
                        .par_chunks(4096)
                        .map(|chunk| {
                            let mut out = Vec::with_capacity(chunk.len() * width);
                            conjugate_indices(&kernel, &index, &conj, chunk, &mut out).map(|_| out)
                        })
                        .collect()
                });
                let mut i = (b * BATCH) as u32;
                for part in parts {
                    for images in part?.chunks(width) {
                        for &j in images {
                            uf.union(i, j);
                        }
                        i += 1;
                    }
                }
            }
        }
    }
    drop(index);

    let mut class_of_root = vec![u32::MAX; order as usize];
    let mut labels = Vec::with_capacity(order as usize);
    let mut representatives = Vec::new();
    let mut sizes_by_class = Vec::new();
    for i in 0..order as u32 {
        let root = uf.find(i);
        let slot = &mut class_of_root[root as usize];
        if *slot == u32::MAX {
            *slot = representatives.len() as u32;
            representatives.push(codes[i as usize]);
            sizes_by_class.push(uf.set_size(root) as u64);
        }
        labels.push(*slot);
    }

    let partition = ClassPartition {
        group,
        order,
        representatives,
        sizes_by_class,
        labels,
    };
    partition.check_invariants()?;
    Ok(partition)
}

/// Number of conjugacy classes by Burnside's lemma,
/// `(1/|G|) Σ_g |C_G(g)|`, from a full double loop over the table.
pub fn burnside_count(table: &ElementTable) -> Result<u64> {
    let order = table.order();
    if order > BURNSIDE_MAX_ORDER {
        return Err(Error::TooLarge(order));
    }
    let mats: Vec<Mat> = table.iter_mats().collect();
    let mut fixed = 0u64;
    for g in &mats {
        for h in &mats {
            if g.mul(h)? == h.mul(g)? {
                fixed += 1;
            }
        }
    }
    if order == 0 || !fixed.is_multiple_of(order) {
        return Err(Error::Invariant(format!(
            "centralizer total {fixed} is not a multiple of the order {order}"
        )));
    }
    Ok(fixed / order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: Mat,
    pub size: u64,
}

/// The least-code representative and size of the class containing `m`.
pub fn class_of(table: &ElementTable, partition: &ClassPartition, m: &Mat) -> Result<ClassInfo> {
    if partition.group() != table.group() || partition.order() != table.order() {
        return Err(Error::SpecMismatch);
    }
    let g = table.group();
    if m.spec() != g.ring() || m.n() != g.n() {
        return Err(Error::NotInGroup);
    }
    let index = table.index_of(m.pack().0 as u64).ok_or(Error::NotInGroup)?;
    let label = partition.label(index) as usize;
    let rep = partition.representatives[label];
    let rep_index = table
        .index_of(rep)
        .expect("representatives come from the table");
    Ok(ClassInfo {
        representative: table.mat(rep_index),
        size: partition.sizes_by_class[label],
    })
}
