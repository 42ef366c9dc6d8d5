//! Python bindings: rings, groups, element tables, class partitions and
//! the two-family comparison.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use slclass::compare::parse_rows;
use slclass::{
    burnside_count, catalog_generators, compare_pair, count_classes, default_generators,
    reproduce_table, ClassPartition, ElementTable, EnumConfig, GeneratorSet, GroupSpec, Mat,
    Report, ReportRow, RingElem, RingSpec, PAPER_TABLE,
};

create_exception!(slclass_py, SlclassError, PyException);

fn to_py(e: slclass::Error) -> PyErr {
    SlclassError::new_err(format!("{}: {}", e.kind(), e))
}

fn config(threads: usize, budget: Option<u64>) -> EnumConfig {
    let mut cfg = EnumConfig {
        threads: threads.max(1),
        ..EnumConfig::default()
    };
    if let Some(b) = budget {
        cfg.budget_elems = b;
    }
    cfg
}

fn json_loads<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

/// A finite ring `zmod:p:k` or `fpt:p:k`; elements are canonical integer codes.
#[pyclass(name = "Ring", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyRing {
    spec: RingSpec,
}

impl PyRing {
    fn elem(&self, code: u64) -> PyResult<RingElem> {
        self.spec.elem(code).map_err(to_py)
    }
}

#[pymethods]
impl PyRing {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyRing {
            spec: spec.parse().map_err(to_py)?,
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.spec.p()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.spec.k()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.spec.q()
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.spec.family().tag()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.elem(a)?.add(&self.elem(b)?).map_err(to_py)?.code())
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.elem(a)?.sub(&self.elem(b)?).map_err(to_py)?.code())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.elem(a)?.mul(&self.elem(b)?).map_err(to_py)?.code())
    }

    fn neg(&self, a: u64) -> PyResult<u64> {
        Ok(self.elem(a)?.neg().code())
    }

    fn is_unit(&self, a: u64) -> PyResult<bool> {
        Ok(self.elem(a)?.is_unit())
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        Ok(self.elem(a)?.inv().map_err(to_py)?.code())
    }

    fn __repr__(&self) -> String {
        format!("Ring('{}')", self.spec)
    }

    fn __str__(&self) -> String {
        self.spec.to_string()
    }
}

/// `SL_n` over a ring.
#[pyclass(name = "Group", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyGroup {
    group: GroupSpec,
}

impl PyGroup {
    fn generators(&self, gens: Option<&str>) -> PyResult<GeneratorSet> {
        match gens {
            Some(name) => catalog_generators(self.group, name),
            None => default_generators(self.group),
        }
        .map_err(to_py)
    }
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(n: usize, ring: &str) -> PyResult<Self> {
        let ring: RingSpec = ring.parse().map_err(to_py)?;
        Ok(PyGroup {
            group: GroupSpec::new(n, ring).map_err(to_py)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.group.n()
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing {
            spec: self.group.ring(),
        }
    }

    /// Closed-form group order.
    fn order(&self) -> BigUint {
        self.group.order_formula()
    }

    /// Whether a matrix literal such as `"1,t;0,1"` lies in the group.
    fn contains(&self, literal: &str) -> PyResult<bool> {
        let m = Mat::parse(literal, self.group.ring()).map_err(to_py)?;
        if m.n() != self.group.n() {
            return Ok(false);
        }
        self.group.is_member(&m).map_err(to_py)
    }

    /// Enumerates every element reachable from a generator catalog.
    #[pyo3(signature = (gens=None, threads=1, budget=None))]
    fn enumerate(
        &self,
        py: Python<'_>,
        gens: Option<&str>,
        threads: usize,
        budget: Option<u64>,
    ) -> PyResult<PyTable> {
        let gens = self.generators(gens)?;
        let cfg = config(threads, budget);
        let (report, table) = py
            .detach(|| slclass::group::verify_and_enumerate(&gens, &cfg))
            .map_err(to_py)?;
        if !report.complete {
            return Err(SlclassError::new_err(format!(
                "Invariant: generators reach {} of {} elements",
                report.enumerated_order, report.claimed_order
            )));
        }
        Ok(PyTable { table, gens })
    }

    fn __repr__(&self) -> String {
        format!("Group({}, '{}')", self.group.n(), self.group.ring())
    }

    fn __str__(&self) -> String {
        self.group.to_string()
    }
}

/// Sorted table of packed element codes.
#[pyclass(name = "ElementTable", frozen)]
struct PyTable {
    table: ElementTable,
    gens: GeneratorSet,
}

#[pymethods]
impl PyTable {
    #[getter]
    fn order(&self) -> u64 {
        self.table.order()
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup {
            group: self.table.group(),
        }
    }

    fn codes(&self) -> Vec<u64> {
        self.table.codes().to_vec()
    }

    fn index_of(&self, code: u64) -> Option<usize> {
        self.table.index_of(code)
    }

    /// Row-major entry codes of the element at `index`.
    fn entries(&self, index: usize) -> PyResult<Vec<u64>> {
        if index >= self.table.codes().len() {
            return Err(pyo3::exceptions::PyIndexError::new_err(index));
        }
        Ok(self.table.mat(index).codes().to_vec())
    }

    fn save(&self, path: &str) -> PyResult<()> {
        self.table.save(path.as_ref()).map_err(to_py)
    }

    /// Partitions the elements into conjugacy classes.
    #[pyo3(signature = (threads=1))]
    fn classes(&self, py: Python<'_>, threads: usize) -> PyResult<PyPartition> {
        let cfg = config(threads, None);
        let partition = py
            .detach(|| count_classes(&self.table, &self.gens, &cfg))
            .map_err(to_py)?;
        Ok(PyPartition { partition })
    }

    /// Class count by Burnside's lemma; only for small groups.
    fn burnside_count(&self, py: Python<'_>) -> PyResult<u64> {
        py.detach(|| burnside_count(&self.table)).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.table.codes().len()
    }
}

#[pyclass(name = "ClassPartition", frozen)]
struct PyPartition {
    partition: ClassPartition,
}

#[pymethods]
impl PyPartition {
    #[getter]
    fn class_count(&self) -> usize {
        self.partition.class_count()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.partition.order()
    }

    fn class_sizes(&self) -> Vec<u64> {
        self.partition.class_sizes()
    }

    /// Least code of each class, paired with the class size.
    fn classes(&self) -> Vec<(u64, u64)> {
        self.partition.classes().collect()
    }

    fn __len__(&self) -> usize {
        self.partition.class_count()
    }
}

#[pyfunction]
fn order_formula(n: usize, p: u64, k: u32) -> BigUint {
    slclass::order_formula(n, p, k)
}

/// Compares `SL_n(F_p[t]/(t^k))` with `SL_n(Z/p^k)` and returns the report row as a dict.
#[pyfunction]
#[pyo3(signature = (n, p, k, threads=1, budget=None))]
fn compare<'py>(
    py: Python<'py>,
    n: usize,
    p: u64,
    k: u32,
    threads: usize,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = config(threads, budget);
    let report = py.detach(|| compare_pair(n, p, k, &cfg)).map_err(to_py)?;
    let row = ReportRow::new(&report, None, true);
    let s = Report::new(vec![row]).to_json().map_err(to_py)?;
    json_loads(py, &s)?.get_item("rows")?.get_item(0)
}

/// Recomputes the reference table, or the listed `n:p:k` rows of it, as a report dict.
#[pyfunction]
#[pyo3(signature = (rows=None, threads=1))]
fn reproduce<'py>(
    py: Python<'py>,
    rows: Option<&str>,
    threads: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let selected = match rows {
        Some(s) => parse_rows(s).map_err(to_py)?,
        None => PAPER_TABLE.to_vec(),
    };
    let cfg = config(threads, None);
    let outcomes = py.detach(|| reproduce_table(&selected, &cfg));
    let s = Report::from_outcomes(&outcomes, false)
        .to_json()
        .map_err(to_py)?;
    json_loads(py, &s)
}

#[pymodule]
fn slclass_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SlclassError", m.py().get_type::<SlclassError>())?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyTable>()?;
    m.add_class::<PyPartition>()?;
    m.add_function(wrap_pyfunction!(order_formula, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
