//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::json;

use crate::classes::count_classes;
use crate::compare::{
    compare_pair, oracle_sweep, parse_rows, reproduce_table, Report, ReportRow, Verdict,
    PAPER_TABLE,
};
use crate::error::{Error, Result};
use crate::group::{
    bfs_enumerate, catalog_generators, default_catalog, parse_group_dim, EnumConfig, GeneratorSet,
    GroupSpec, DEFAULT_BUDGET_BYTES, DEFAULT_BUDGET_ELEMS,
};
use crate::ring::RingSpec;

#[derive(Debug, Parser)]
#[command(
    name = "slclass",
    version,
    about = "Enumerate SL_n over Z/p^k and F_p[t]/(t^k) and count conjugacy classes"
)]
struct Cli {
    /// Worker threads (1 = sequential reference path).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Emit JSON on stdout, and JSON errors on stderr.
    #[arg(long, global = true)]
    json: bool,
    /// Memory budget in bytes.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_BYTES)]
    budget_bytes: u64,
    /// Largest group order that will be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_ELEMS)]
    budget: u64,
    /// Include wall-clock timings in comparison reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print |SL_n(R)| from the closed-form order formula.
    Order {
        #[arg(long)]
        group: String,
        #[arg(long)]
        ring: String,
    },
    /// Enumerate the subgroup generated by a catalog.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        ring: String,
        /// paper | elementary | elementary-full
        #[arg(long)]
        gens: Option<String>,
        /// Write the element table (binary plus JSON sidecar).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count conjugacy classes.
    Classes {
        #[arg(long)]
        group: String,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        gens: Option<String>,
        /// Also print the class sizes.
        #[arg(long)]
        sizes: bool,
        /// Write the partition as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare SL_n(F_p[t]/(t^k)) with SL_n(Z/p^k).
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Reproduce rows of the published class-count table.
    Table {
        /// Comma-separated n:p:k rows; all rows by default.
        #[arg(long)]
        rows: Option<String>,
        /// Emit CSV instead of text or JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Check union-find class counts against Burnside's lemma on small groups.
    Selftest,
}

fn config(cli: &Cli) -> EnumConfig {
    EnumConfig {
        budget_elems: cli.budget,
        budget_bytes: cli.budget_bytes,
        threads: cli.threads.max(1),
    }
}

fn group_of(group: &str, ring: &str) -> Result<GroupSpec> {
    let n = parse_group_dim(group)?;
    let ring: RingSpec = ring.parse()?;
    GroupSpec::new(n, ring)
}

fn generators(group: GroupSpec, name: Option<&str>) -> Result<GeneratorSet> {
    match name {
        Some(name) => catalog_generators(group, name),
        None => catalog_generators(group, default_catalog(group).name()),
    }
}

fn enumeration_limit(group: GroupSpec, cfg: &EnumConfig) -> Result<u64> {
    let order = group.order_formula();
    order
        .to_u64()
        .filter(|&o| o <= cfg.budget_elems)
        .ok_or_else(|| Error::BudgetExceeded {
            order: order.to_string(),
            budget: cfg.budget_elems,
        })
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = config(cli);
    match &cli.command {
        Command::Order { group, ring } => {
            let g = group_of(group, ring)?;
            let order = g.order_formula();
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({"group": g.to_string(), "order": order.to_string()})
                )?;
            } else {
                writeln!(out, "{order}")?;
            }
        }
        Command::Enumerate {
            group,
            ring,
            gens,
            out: path,
        } => {
            let g = group_of(group, ring)?;
            let gens = generators(g, gens.as_deref())?;
            let limit = enumeration_limit(g, &cfg)?;
            let table = bfs_enumerate(&gens, limit, &cfg)?;
            if let Some(path) = path {
                table.save(path)?;
            }
            let complete = table.order() == limit;
            if cli.json {
                let v = json!({
                    "group": g.to_string(),
                    "generators": gens.name(),
                    "claimed_order": g.order_formula().to_string(),
                    "enumerated_order": table.order(),
                    "complete": complete,
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{}", table.order())?;
                if !complete {
                    writeln!(
                        out,
                        "incomplete: {} generates a proper subgroup of order {}",
                        gens.name(),
                        table.order()
                    )?;
                }
            }
        }
        Command::Classes {
            group,
            ring,
            gens,
            sizes,
            out: path,
        } => {
            let g = group_of(group, ring)?;
            let gens = generators(g, gens.as_deref())?;
            let limit = enumeration_limit(g, &cfg)?;
            let table = bfs_enumerate(&gens, limit, &cfg)?;
            if table.order() != limit {
                return Err(Error::Invariant(format!(
                    "{} generators reach {} of {limit} elements of {g}",
                    gens.name(),
                    table.order()
                )));
            }
            let partition = count_classes(&table, &gens, &cfg)?;
            let export = partition.export();
            if let Some(path) = path {
                std::fs::write(path, serde_json::to_string_pretty(&export)? + "\n")?;
            }
            if cli.json {
                writeln!(out, "{}", serde_json::to_string(&export)?)?;
            } else {
                writeln!(out, "{}", export.class_count)?;
                if *sizes {
                    let sizes: Vec<String> =
                        export.class_sizes.iter().map(u64::to_string).collect();
                    writeln!(out, "{}", sizes.join(" "))?;
                }
            }
        }
        Command::Compare { n, p, k } => {
            let report = compare_pair(*n, *p, *k, &cfg)?;
            let row = ReportRow::new(&report, None, cli.timings);
            let rendered = Report::new(vec![row]);
            if cli.json {
                write!(out, "{}", rendered.to_json()?)?;
            } else {
                write!(out, "{}", rendered.to_text())?;
            }
            if report.verdict == Verdict::NotComputable {
                return Ok(3);
            }
        }
        Command::Table { rows, csv } => {
            let rows = match rows {
                Some(s) => parse_rows(s)?,
                None => PAPER_TABLE.to_vec(),
            };
            let outcomes = reproduce_table(&rows, &cfg);
            let report = Report::from_outcomes(&outcomes, cli.timings);
            if *csv {
                write!(out, "{}", report.to_csv()?)?;
            } else if cli.json {
                write!(out, "{}", report.to_json()?)?;
            } else {
                write!(out, "{}", report.to_text())?;
            }
        }
        Command::Selftest => {
            let checks = oracle_sweep(&cfg)?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string(&checks)?)?;
            } else {
                for c in &checks {
                    writeln!(
                        out,
                        "{} {:<18} order {:>6}  union-find {:>4}  burnside {:>4}",
                        if c.agree { "PASS" } else { "FAIL" },
                        c.group,
                        c.order,
                        c.union_find,
                        c.burnside
                    )?;
                }
            }
            if checks.iter().any(|c| !c.agree) {
                return Ok(4);
            }
        }
    }
    Ok(0)
}

/// Runs the command line `argv` (including the program name) and returns the
/// process exit code: 0 success, 2 invalid arguments, 3 budget exceeded,
/// 4 internal invariant violation.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            if cli.json {
                let _ = writeln!(
                    err,
                    "{}",
                    json!({"error": e.kind(), "message": e.to_string()})
                );
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("slclass").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn order_command() {
        let (code, out, _) = run_args(&["order", "--group", "sl:4", "--ring", "fpt:2:3"]);
        assert_eq!((code, out.as_str()), (0, "21646635171840\n"));
        let (_, out, _) = run_args(&["--json", "order", "--group", "sl:2", "--ring", "zmod:2:3"]);
        assert_eq!(out, "{\"group\":\"SL_2(zmod:2:3)\",\"order\":\"384\"}\n");
    }

    #[test]
    fn classes_command() {
        let (code, out, _) = run_args(&["classes", "--group", "sl:2", "--ring", "zmod:2:4"]);
        assert_eq!((code, out.as_str()), (0, "76\n"));
        let (code, out, _) =
            run_args(&["classes", "--group", "sl:2", "--ring", "fpt:2:1", "--sizes"]);
        assert_eq!((code, out.as_str()), (0, "3\n1 2 3\n"));
        let (code, _, _) = run_args(&[
            "classes",
            "--group",
            "sl:2",
            "--ring",
            "fpt:2:3",
            "--gens",
            "elementary",
        ]);
        assert_eq!(code, 4);
    }

    #[test]
    fn argument_errors_exit_2() {
        assert_eq!(
            run_args(&["order", "--group", "sl:9", "--ring", "fpt:2:3"]).0,
            2
        );
        assert_eq!(
            run_args(&["order", "--group", "sl:2", "--ring", "zmod:4:3"]).0,
            2
        );
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(
            run_args(&["classes", "--group", "sl:2", "--ring", "fpt:2:3", "--gens", "magma"]).0,
            2
        );
        let (code, _, err) =
            run_args(&["--json", "order", "--group", "sl:2", "--ring", "zmod:4:3"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "NonPrime");
    }

    #[test]
    fn budget_exit_3() {
        let (code, out, _) = run_args(&[
            "--budget", "1000000", "compare", "--n", "2", "--p", "2", "--k", "9",
        ]);
        assert_eq!(code, 3);
        assert!(out.contains("NOT_COMPUTABLE"));
        let (code, _, _) = run_args(&[
            "--budget", "100", "classes", "--group", "sl:2", "--ring", "zmod:2:4",
        ]);
        assert_eq!(code, 3);
    }

    #[test]
    fn enumerate_writes_table() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.cfet");
        let (code, out, _) = run_args(&[
            "enumerate",
            "--group",
            "sl:2",
            "--ring",
            "fpt:2:3",
            "--gens",
            "paper",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!((code, out.as_str()), (0, "384\n"));
        let table = crate::table::ElementTable::load(&path).unwrap();
        assert_eq!(table.order(), 384);
        assert!(crate::table::sidecar_path(&path).exists());
    }

    #[test]
    fn table_csv_and_selection() {
        let (code, out, _) = run_args(&["table", "--rows", "2:2:3,3:3:3", "--csv"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "group_left,count_left,count_right,group_right\n\
             SL_2(fpt:2:3),24,30,SL_2(zmod:2:3)\n\
             SL_3(fpt:3:3),1242,1218,SL_3(zmod:3:3)\n"
        );
        assert_eq!(run_args(&["table", "--rows", "2:2:9"]).0, 2);
    }
}
