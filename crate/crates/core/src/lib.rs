//! Exact conjugacy-class counts for `SL_n(Z/p^k)` and `SL_n(F_p[t]/(t^k))`.
//!
//! The pipeline is: build a ring ([`ring`]), generate the group from a
//! catalog of generator matrices and enumerate it by breadth-first search
//! over packed matrix codes ([`group`], [`table`]), partition the elements
//! into conjugacy classes with union-find ([`classes`]), and compare the two
//! ring families ([`compare`]). Since the class count of a finite group is
//! its number of irreducible complex representations, unequal counts show
//! that the two complex group algebras differ.
//!
//! ```
//! use slclass::{compare_pair, EnumConfig, Verdict};
//!
//! let report = compare_pair(2, 2, 3, &EnumConfig::default()).unwrap();
//! assert_eq!(report.left.class_count, Some(24));
//! assert_eq!(report.right.class_count, Some(30));
//! assert_eq!(report.verdict, Verdict::AlgebrasDiffer);
//! ```

pub mod classes;
pub mod cli;
pub mod compare;
pub mod error;
pub mod group;
mod kernel;
pub mod matrix;
pub mod ring;
pub mod table;

pub use classes::{
    burnside_count, class_of, count_classes, ClassInfo, ClassPartition, PartitionExport,
};
pub use compare::{
    compare_pair, reproduce_table, ComparisonReport, PaperTableRow, Report, ReportRow, Source,
    Verdict, PAPER_TABLE,
};
pub use error::{Error, Result};
pub use group::{
    bfs_enumerate, catalog_generators, default_generators, order_formula, verify_generators,
    Catalog, EnumConfig, GeneratorSet, GroupSpec, VerifyReport,
};
pub use matrix::{Mat, MatCode};
pub use ring::{Family, RingElem, RingSpec};
pub use table::ElementTable;

pub(crate) fn serialize_decimal<S: serde::Serializer>(
    v: &num_bigint::BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
