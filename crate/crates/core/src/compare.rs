//! Pairwise comparison of `SL_n(F_p[t]/(t^k))` with `SL_n(Z/p^k)`.
//!
//! The number of conjugacy classes of a finite group equals the number of its
//! irreducible complex representations, i.e. its representation zeta function
//! evaluated at zero. Unequal class counts therefore certify that the two
//! complex group algebras are not isomorphic.

use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::classes::{burnside_count, count_classes, BURNSIDE_MAX_ORDER};
use crate::error::{Error, Result};
use crate::group::{default_generators, verify_and_enumerate, EnumConfig, GroupSpec};
use crate::ring::{Family, RingSpec};

/// One row of the published class-count table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperTableRow {
    pub n: usize,
    pub p: u64,
    pub k: u32,
    /// Class count of `SL_n(F_p[t]/(t^k))`.
    pub expected_left: u64,
    /// Class count of `SL_n(Z/p^k)`.
    pub expected_right: u64,
    pub computable_at_desk_scale: bool,
}

const fn row(n: usize, p: u64, k: u32, left: u64, right: u64, computable: bool) -> PaperTableRow {
    PaperTableRow {
        n,
        p,
        k,
        expected_left: left,
        expected_right: right,
        computable_at_desk_scale: computable,
    }
}

/// The published class counts, in the published row order.
pub const PAPER_TABLE: [PaperTableRow; 8] = [
    row(4, 2, 3, 1824, 1896, false),
    row(3, 3, 3, 1242, 1218, false),
    row(2, 2, 8, 1336, 1456, true),
    row(2, 2, 7, 624, 720, true),
    row(2, 2, 6, 292, 352, true),
    row(2, 2, 5, 132, 168, true),
    row(2, 2, 4, 58, 76, true),
    row(2, 2, 3, 24, 30, true),
];

pub fn paper_row(n: usize, p: u64, k: u32) -> Option<PaperTableRow> {
    PAPER_TABLE
        .iter()
        .copied()
        .find(|r| (r.n, r.p, r.k) == (n, p, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    AlgebrasDiffer,
    CountsEqual,
    NotComputable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Computed,
    PaperAttested,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub ring: String,
    /// Group order as a decimal string.
    pub order: String,
    pub class_count: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    pub left: f64,
    pub right: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub p: u64,
    pub k: u32,
    pub left: Side,
    pub right: Side,
    pub zeta_at_zero_equal: Option<bool>,
    pub verdict: Verdict,
    pub source: Option<Source>,
    pub runtime_seconds: Runtime,
}

impl ComparisonReport {
    fn not_computable(n: usize, left: GroupSpec, right: GroupSpec) -> Self {
        let attested = paper_row(n, left.ring().p(), left.ring().k());
        let side = |g: GroupSpec, count: Option<u64>| Side {
            ring: g.ring().to_string(),
            order: g.order_formula().to_string(),
            class_count: count,
        };
        let (l, r) = (
            side(left, attested.map(|a| a.expected_left)),
            side(right, attested.map(|a| a.expected_right)),
        );
        ComparisonReport {
            n,
            p: left.ring().p(),
            k: left.ring().k(),
            zeta_at_zero_equal: l.class_count.zip(r.class_count).map(|(a, b)| a == b),
            left: l,
            right: r,
            verdict: Verdict::NotComputable,
            source: attested.map(|_| Source::PaperAttested),
            runtime_seconds: Runtime {
                left: 0.0,
                right: 0.0,
            },
        }
    }
}

struct SideResult {
    order: u64,
    class_count: u64,
    seconds: f64,
}

fn run_side(group: GroupSpec, cfg: &EnumConfig) -> Result<SideResult> {
    let start = Instant::now();
    let gens = default_generators(group)?;
    let (verify, table) = verify_and_enumerate(&gens, cfg)?;
    if !verify.complete {
        return Err(Error::Invariant(format!(
            "{} generators of {group} reach only {} of {} elements",
            gens.name(),
            verify.enumerated_order,
            verify.claimed_order
        )));
    }
    let partition = count_classes(&table, &gens, cfg)?;
    Ok(SideResult {
        order: table.order(),
        class_count: partition.class_count() as u64,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn is_budget_error(e: &Error) -> bool {
    matches!(
        e,
        Error::BudgetExceeded { .. } | Error::MemoryBudgetExceeded { .. }
    )
}

fn groups_for(n: usize, p: u64, k: u32) -> Result<(GroupSpec, GroupSpec)> {
    Ok((
        GroupSpec::new(n, RingSpec::new(Family::TruncPoly, p, k)?)?,
        GroupSpec::new(n, RingSpec::new(Family::ZMod, p, k)?)?,
    ))
}

/// Enumerates both groups with their default generator catalogs, counts
/// classes, and compares. Groups beyond the budget yield
/// [`Verdict::NotComputable`] carrying the published counts when known.
pub fn compare_pair(n: usize, p: u64, k: u32, cfg: &EnumConfig) -> Result<ComparisonReport> {
    let (left, right) = groups_for(n, p, k)?;
    let fits = |g: GroupSpec| {
        g.order_formula()
            .to_u64()
            .is_some_and(|o| o <= cfg.budget_elems)
    };
    if !fits(left) || !fits(right) {
        return Ok(ComparisonReport::not_computable(n, left, right));
    }
    let results = run_side(left, cfg).and_then(|l| Ok((l, run_side(right, cfg)?)));
    let (l, r) = match results {
        Ok(pair) => pair,
        Err(e) if is_budget_error(&e) => {
            return Ok(ComparisonReport::not_computable(n, left, right))
        }
        Err(e) => return Err(e),
    };
    let equal = l.class_count == r.class_count;
    Ok(ComparisonReport {
        n,
        p,
        k,
        left: Side {
            ring: left.ring().to_string(),
            order: l.order.to_string(),
            class_count: Some(l.class_count),
        },
        right: Side {
            ring: right.ring().to_string(),
            order: r.order.to_string(),
            class_count: Some(r.class_count),
        },
        zeta_at_zero_equal: Some(equal),
        verdict: if equal {
            Verdict::CountsEqual
        } else {
            Verdict::AlgebrasDiffer
        },
        source: Some(Source::Computed),
        runtime_seconds: Runtime {
            left: l.seconds,
            right: r.seconds,
        },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableOutcome {
    pub row: PaperTableRow,
    pub report: ComparisonReport,
    /// `None` when nothing was computed for the row.
    pub matches: Option<bool>,
}

/// Recomputes the selected published rows. Rows that cannot be enumerated at
/// desk scale are reported with their published counts and never computed.
pub fn reproduce_table(rows: &[PaperTableRow], cfg: &EnumConfig) -> Vec<TableOutcome> {
    rows.iter()
        .map(|&row| {
            let attested = || {
                let (l, r) =
                    groups_for(row.n, row.p, row.k).expect("published rows are valid groups");
                ComparisonReport::not_computable(row.n, l, r)
            };
            let report = if row.computable_at_desk_scale {
                compare_pair(row.n, row.p, row.k, cfg).unwrap_or_else(|_| attested())
            } else {
                attested()
            };
            let matches = (report.source == Some(Source::Computed)).then(|| {
                report.left.class_count == Some(row.expected_left)
                    && report.right.class_count == Some(row.expected_right)
            });
            TableOutcome {
                row,
                report,
                matches,
            }
        })
        .collect()
}

/// Parses a row selection such as `2:2:3,2:2:4` against [`PAPER_TABLE`].
pub fn parse_rows(s: &str) -> Result<Vec<PaperTableRow>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|tok| {
            let parts: Vec<&str> = tok.trim().split(':').collect();
            let bad = || Error::Parse(format!("row {tok:?} must look like n:p:k"));
            let [n, p, k] = parts.as_slice() else {
                return Err(bad());
            };
            let (n, p, k) = (
                n.parse().map_err(|_| bad())?,
                p.parse().map_err(|_| bad())?,
                k.parse().map_err(|_| bad())?,
            );
            paper_row(n, p, k)
                .ok_or_else(|| Error::Parse(format!("{tok} is not a row of the published table")))
        })
        .collect()
}

/// One row of the JSON report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub p: u64,
    pub k: u32,
    pub left: Side,
    pub right: Side,
    pub zeta_at_zero_equal: Option<bool>,
    pub verdict: Verdict,
    pub source: Option<Source>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    /// Wall-clock seconds per side; only emitted on request so that reports
    /// stay byte-for-byte reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<Runtime>,
}

impl ReportRow {
    pub fn new(report: &ComparisonReport, matches: Option<bool>, with_timing: bool) -> Self {
        ReportRow {
            n: report.n,
            p: report.p,
            k: report.k,
            left: report.left.clone(),
            right: report.right.clone(),
            zeta_at_zero_equal: report.zeta_at_zero_equal,
            verdict: report.verdict,
            source: report.source,
            matches,
            runtime_seconds: with_timing.then_some(report.runtime_seconds),
        }
    }

    fn group_label(&self, side: &Side) -> String {
        format!("SL_{}({})", self.n, side.ring)
    }
}

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn new(rows: Vec<ReportRow>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            rows,
        }
    }

    pub fn from_outcomes(outcomes: &[TableOutcome], with_timing: bool) -> Self {
        Report::new(
            outcomes
                .iter()
                .map(|o| ReportRow::new(&o.report, o.matches, with_timing))
                .collect(),
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// CSV with the columns `group_left,count_left,count_right,group_right`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["group_left", "count_left", "count_right", "group_right"])?;
        for r in &self.rows {
            let count = |c: Option<u64>| c.map(|c| c.to_string()).unwrap_or_default();
            w.write_record([
                r.group_label(&r.left),
                count(r.left.class_count),
                count(r.right.class_count),
                r.group_label(&r.right),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Plain-text rendering, one line per row.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let count = |c: Option<u64>| c.map(|c| c.to_string()).unwrap_or_else(|| "?".into());
            let source = match r.source {
                Some(Source::Computed) => "computed",
                Some(Source::PaperAttested) => "paper-attested",
                None => "-",
            };
            let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
            let matched = match r.matches {
                Some(true) => "match",
                Some(false) => "MISMATCH",
                None => "n/a",
            };
            out.push_str(&format!(
                "{:<16} {:>6} | {:<6} {:<18} {:<16} {:<15} {}\n",
                r.group_label(&r.left),
                count(r.left.class_count),
                count(r.right.class_count),
                r.group_label(&r.right),
                verdict.as_str().unwrap_or_default(),
                source,
                matched
            ));
        }
        out
    }
}

/// Groups `(n, ring)` of the order/oracle sweep: `n = 2` with
/// `p ∈ {2, 3, 5}, k ∈ 1..=4` and `n = 3` with `p ∈ {2, 3}, k ∈ {1, 2}`, over
/// both ring families.
pub fn sweep_groups() -> Vec<GroupSpec> {
    let mut out = Vec::new();
    let mut push = |n, p, k| {
        for family in [Family::TruncPoly, Family::ZMod] {
            let ring = RingSpec::new(family, p, k).expect("sweep rings are valid");
            out.push(GroupSpec::new(n, ring).expect("sweep groups are valid"));
        }
    };
    for p in [2, 3, 5] {
        for k in 1..=4 {
            push(2, p, k);
        }
    }
    for p in [2, 3] {
        for k in 1..=2 {
            push(3, p, k);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub group: String,
    pub order: u64,
    pub union_find: u64,
    pub burnside: u64,
    pub agree: bool,
}

/// Compares union-find class counts with Burnside's lemma on every sweep
/// group small enough for the quadratic oracle.
pub fn oracle_sweep(cfg: &EnumConfig) -> Result<Vec<OracleCheck>> {
    let mut out = Vec::new();
    for group in sweep_groups() {
        if group.order_formula() > BURNSIDE_MAX_ORDER.into() {
            continue;
        }
        let gens = default_generators(group)?;
        let (_, table) = verify_and_enumerate(&gens, cfg)?;
        let union_find = count_classes(&table, &gens, cfg)?.class_count() as u64;
        let burnside = burnside_count(&table)?;
        out.push(OracleCheck {
            group: group.to_string(),
            order: table.order(),
            union_find,
            burnside,
            agree: union_find == burnside,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        assert_eq!(PAPER_TABLE.len(), 8);
        assert_eq!(paper_row(2, 2, 5).unwrap().expected_right, 168);
        assert!(!paper_row(4, 2, 3).unwrap().computable_at_desk_scale);
        assert!(paper_row(2, 2, 9).is_none());
    }

    #[test]
    fn small_comparisons() {
        let cfg = EnumConfig::default();
        let r = compare_pair(2, 2, 3, &cfg).unwrap();
        assert_eq!(r.left.class_count, Some(24));
        assert_eq!(r.right.class_count, Some(30));
        assert_eq!(r.verdict, Verdict::AlgebrasDiffer);
        assert_eq!(r.zeta_at_zero_equal, Some(false));
        assert_eq!(r.left.order, "384");

        let r = compare_pair(2, 2, 1, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::CountsEqual);
        assert_eq!(r.left.class_count, Some(3));
        assert_eq!(r.zeta_at_zero_equal, Some(true));
    }

    #[test]
    fn budget_valve() {
        let cfg = EnumConfig {
            budget_elems: 1000,
            ..EnumConfig::default()
        };
        let r = compare_pair(2, 2, 9, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::NotComputable);
        assert_eq!(r.source, None);
        assert_eq!(r.left.class_count, None);
        assert_eq!(r.zeta_at_zero_equal, None);

        let r = compare_pair(4, 2, 3, &EnumConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotComputable);
        assert_eq!(r.source, Some(Source::PaperAttested));
        assert_eq!(r.left.class_count, Some(1824));
        assert_eq!(r.right.class_count, Some(1896));
        assert_eq!(r.left.order, "21646635171840");
        assert_eq!(r.zeta_at_zero_equal, Some(false));

        let tight = EnumConfig {
            budget_bytes: 1 << 10,
            ..EnumConfig::default()
        };
        assert_eq!(
            compare_pair(2, 2, 3, &tight).unwrap().verdict,
            Verdict::NotComputable
        );
    }

    #[test]
    fn reproduce_selected_rows() {
        assert!(reproduce_table(&[], &EnumConfig::default()).is_empty());
        let rows = parse_rows("2:2:5,4:2:3").unwrap();
        let out = reproduce_table(&rows, &EnumConfig::default());
        assert_eq!(out[0].matches, Some(true));
        assert_eq!(out[0].report.left.class_count, Some(132));
        assert_eq!(out[0].report.right.class_count, Some(168));
        assert_eq!(out[1].matches, None);
        assert_eq!(out[1].report.verdict, Verdict::NotComputable);
        assert!(parse_rows("2:2:9").is_err());
        assert!(parse_rows("2:2").is_err());
        assert!(parse_rows("").unwrap().is_empty());
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let rows = parse_rows("2:2:3,3:3:3").unwrap();
        let out = reproduce_table(&rows, &EnumConfig::default());
        for timing in [false, true] {
            let report = Report::from_outcomes(&out, timing);
            let json = report.to_json().unwrap();
            let again = Report::from_json(&json).unwrap().to_json().unwrap();
            assert_eq!(json, again);
            assert_eq!(json.contains("runtime_seconds"), timing);
        }
    }

    #[test]
    fn csv_columns() {
        let rows = parse_rows("2:2:3").unwrap();
        let report = Report::from_outcomes(&reproduce_table(&rows, &EnumConfig::default()), false);
        assert_eq!(
            report.to_csv().unwrap(),
            "group_left,count_left,count_right,group_right\nSL_2(fpt:2:3),24,30,SL_2(zmod:2:3)\n"
        );
        assert!(report.to_text().contains("ALGEBRAS_DIFFER"));
    }

    #[test]
    fn sweep_contents() {
        let groups = sweep_groups();
        assert_eq!(groups.len(), 2 * (12 + 4));
        let small = groups
            .iter()
            .filter(|g| g.order_formula() <= BURNSIDE_MAX_ORDER.into())
            .count();
        assert!(small >= 8);
    }
}
