//! Sorted element tables and their on-disk form.
//!
//! Binary layout: a 32-byte header followed by `order` little-endian codes of
//! fixed width `ceil(ceil(log2(q^(n²))) / 8)` bytes.
//!
//! | offset | size | field                         |
//! |--------|------|-------------------------------|
//! | 0      | 4    | magic `CFET`                  |
//! | 4      | 1    | version (1)                   |
//! | 5      | 1    | n                             |
//! | 6      | 1    | family (0 = zmod, 1 = fpt)    |
//! | 7      | 4    | p (u32 LE)                    |
//! | 11     | 4    | k (u32 LE)                    |
//! | 15     | 8    | order (u64 LE)                |
//! | 23     | 9    | zero padding                  |
//!
//! A JSON sidecar `<file>.json` carries the same metadata as text.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::matrix::{code_bound, Mat, MatCode};
use crate::ring::{Family, RingSpec};

pub const MAGIC: &[u8; 4] = b"CFET";
pub const FORMAT_VERSION: u8 = 1;
pub const HEADER_LEN: usize = 32;

/// All elements of a group, as strictly increasing packed codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementTable {
    group: GroupSpec,
    codes: Vec<u64>,
}

impl ElementTable {
    pub fn new(group: GroupSpec, codes: Vec<u64>) -> Result<Self> {
        if let Some(w) = codes.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Invariant(format!(
                "element codes not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        let bound = code_bound(group.n(), group.ring())?;
        if let Some(&last) = codes.last() {
            if last as u128 >= bound {
                return Err(Error::CodeOutOfRange {
                    code: last as u128,
                    bound,
                });
            }
        }
        Ok(ElementTable { group, codes })
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    pub fn order(&self) -> u64 {
        self.codes.len() as u64
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        m.spec() == self.group.ring()
            && m.n() == self.group.n()
            && self.index_of(m.pack().0 as u64).is_some()
    }

    pub fn mat(&self, index: usize) -> Mat {
        Mat::unpack(
            MatCode(self.codes[index] as u128),
            self.group.n(),
            self.group.ring(),
        )
        .expect("table codes are in range")
    }

    pub fn iter_mats(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.codes.len()).map(|i| self.mat(i))
    }

    pub fn metadata(&self) -> TableMetadata {
        let ring = self.group.ring();
        TableMetadata {
            magic: String::from_utf8_lossy(MAGIC).into_owned(),
            version: FORMAT_VERSION,
            n: self.group.n(),
            family: ring.family(),
            p: ring.p(),
            k: ring.k(),
            ring: ring.to_string(),
            order: self.order(),
            code_width: code_width(self.group),
        }
    }

    /// Writes the binary table to `path` and the metadata to `<path>.json`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let ring = self.group.ring();
        let width = code_width(self.group);
        let mut header = [0u8; HEADER_LEN];
        header[0..4].copy_from_slice(MAGIC);
        header[4] = FORMAT_VERSION;
        header[5] = self.group.n() as u8;
        header[6] = ring.family().to_byte();
        header[7..11].copy_from_slice(&(ring.p() as u32).to_le_bytes());
        header[11..15].copy_from_slice(&ring.k().to_le_bytes());
        header[15..23].copy_from_slice(&self.order().to_le_bytes());

        let mut out = BufWriter::new(File::create(path)?);
        out.write_all(&header)?;
        for &c in &self.codes {
            out.write_all(&c.to_le_bytes()[..width])?;
        }
        out.flush()?;

        let sidecar = serde_json::to_string_pretty(&self.metadata())?;
        std::fs::write(sidecar_path(path), sidecar + "\n")?;
        Ok(())
    }

    /// Reads a table written by [`ElementTable::save`]. The sidecar is not
    /// required.
    pub fn load(path: &Path) -> Result<Self> {
        let mut input = BufReader::new(File::open(path)?);
        let mut header = [0u8; HEADER_LEN];
        input.read_exact(&mut header)?;
        let bad = |what: &str| Error::Parse(format!("{}: {what}", path.display()));
        if &header[0..4] != MAGIC {
            return Err(bad("not an element table (bad magic)"));
        }
        if header[4] != FORMAT_VERSION {
            return Err(bad("unsupported format version"));
        }
        let n = header[5] as usize;
        let family = Family::from_byte(header[6]).ok_or_else(|| bad("unknown ring family"))?;
        let p = u32::from_le_bytes(header[7..11].try_into().unwrap()) as u64;
        let k = u32::from_le_bytes(header[11..15].try_into().unwrap());
        let order = u64::from_le_bytes(header[15..23].try_into().unwrap());
        let group = GroupSpec::new(n, RingSpec::new(family, p, k)?)?;
        let width = code_width(group);
        if width > 8 {
            return Err(Error::CodeSpaceTooLarge(group.to_string()));
        }

        let mut codes = Vec::with_capacity(order as usize);
        let mut buf = [0u8; 8];
        for _ in 0..order {
            input.read_exact(&mut buf[..width])?;
            codes.push(u64::from_le_bytes(buf));
        }
        if input.read(&mut [0u8; 1])? != 0 {
            return Err(bad("trailing bytes after the last code"));
        }
        ElementTable::new(group, codes)
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Bytes per stored code: enough bits for every code below `q^(n²)`.
pub fn code_width(group: GroupSpec) -> usize {
    let bound = code_bound(group.n(), group.ring()).expect("validated group");
    let bits = 128 - (bound - 1).leading_zeros() as usize;
    bits.div_ceil(8).max(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMetadata {
    pub magic: String,
    pub version: u8,
    pub n: usize,
    pub family: Family,
    pub p: u64,
    pub k: u32,
    pub ring: String,
    pub order: u64,
    pub code_width: usize,
}
