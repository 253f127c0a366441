//! Python bindings: profiles, tables, formulas, membership, closure and the
//! basis classifier.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use symper_core::classify::{self, FamilyDescriptor};
use symper_core::closure::name_generators;
use symper_core::formula::{self, Signature};
use symper_core::{criteria, verify, ClosureCaps, Error, Formula, Membership, OracleVerdict};

fn err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded(_) | Error::Undecided(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Periodic symmetric function: 1 exactly on the layers with `d, d+t, ...`
/// twos.
#[pyclass(frozen, eq, hash, from_py_object, name = "PeriodicProfile", module = "symper")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PyProfile(symper_core::PeriodicProfile);

#[pymethods]
impl PyProfile {
    #[new]
    fn new(n: u64, d: u64, t: u64) -> PyResult<Self> {
        symper_core::PeriodicProfile::new(n, d, t).map(Self).map_err(err)
    }

    #[staticmethod]
    fn i(n: u64) -> PyResult<Self> {
        symper_core::PeriodicProfile::i(n).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> u64 {
        self.0.n()
    }

    #[getter]
    fn d(&self) -> u64 {
        self.0.d()
    }

    #[getter]
    fn t(&self) -> u64 {
        self.0.t()
    }

    fn ratio(&self) -> u64 {
        self.0.ratio()
    }

    fn canonical(&self) -> Self {
        Self(self.0.canonical())
    }

    fn is_i(&self) -> bool {
        self.0.is_i()
    }

    fn layers(&self) -> Vec<u64> {
        self.0.layers().collect()
    }

    fn eval(&self, tuple: Vec<u8>) -> PyResult<u8> {
        self.0.to_symmetric().and_then(|f| f.eval(&tuple)).map_err(err)
    }

    fn table(&self) -> PyResult<PyTable> {
        self.0.to_table().map(PyTable).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("PeriodicProfile({}, {}, {})", self.0.n(), self.0.d(), self.0.t())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// A function of R by its table on `{1,2}^n`.
#[pyclass(frozen, eq, hash, from_py_object, name = "TableFn", module = "symper")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyTable(symper_core::TableFn);

#[pymethods]
impl PyTable {
    #[new]
    fn new(arity: usize, bits: Vec<bool>) -> PyResult<Self> {
        symper_core::TableFn::new(arity, bits).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_hex(arity: usize, hex: &str) -> PyResult<Self> {
        symper_core::TableFn::from_hex(arity, hex).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parse(literal: &str) -> PyResult<Self> {
        let lit: symper_core::FnLiteral = literal.parse().map_err(err)?;
        lit.to_table().map(Self).map_err(err)
    }

    #[getter]
    fn arity(&self) -> usize {
        self.0.arity()
    }

    fn hex(&self) -> String {
        self.0.to_hex()
    }

    fn eval(&self, tuple: Vec<u8>) -> PyResult<u8> {
        self.0.eval(&tuple).map_err(err)
    }

    fn is_i(&self) -> bool {
        self.0.is_i()
    }

    /// The periodic profile, if the function is periodic symmetric.
    fn period(&self) -> Option<PyProfile> {
        symper_core::SymmetricFn::from_table(&self.0)
            .and_then(|f| f.period())
            .map(PyProfile)
    }

    fn __repr__(&self) -> String {
        symper_core::literal::table_literal(&self.0)
    }
}

#[derive(FromPyObject)]
enum Func {
    Profile(PyProfile),
    Table(PyTable),
}

impl Func {
    fn table(&self) -> PyResult<symper_core::TableFn> {
        match self {
            Func::Profile(p) => p.0.to_table().map_err(err),
            Func::Table(t) => Ok(t.0.clone()),
        }
    }
}

fn signature(sig: Vec<(String, Func)>) -> PyResult<Signature> {
    let mut s = Signature::new();
    for (name, f) in sig {
        s.insert(name, f.table()?).map_err(err)?;
    }
    Ok(s)
}

fn parse_formula(text: &str) -> PyResult<Formula> {
    text.parse().map_err(err)
}

fn caps(max_nvars: Option<usize>) -> ClosureCaps {
    let mut c = ClosureCaps::default();
    if let Some(v) = max_nvars {
        c.max_nvars = v;
    }
    c
}

/// Layers of `periodic(n, d, t)`.
#[pyfunction]
fn make_periodic(n: u64, d: u64, t: u64) -> PyResult<Vec<usize>> {
    symper_core::make_periodic(n, d, t).map(|f| f.layer_set()).map_err(err)
}

/// Minimal-period profile of the symmetric function with the given layers.
#[pyfunction]
fn detect_period(n: usize, layers: Vec<usize>) -> PyResult<Option<PyProfile>> {
    let f = symper_core::SymmetricFn::from_layer_set(n, &layers).map_err(err)?;
    Ok(symper_core::detect_period(&f).map(PyProfile))
}

/// `N_h = ∩ N_f` for `d = 0` profiles: `(layers, profile)` or `None`.
#[pyfunction]
fn nset_intersection(fs: Vec<PyProfile>) -> PyResult<Option<(Vec<usize>, PyProfile)>> {
    let syms = fs
        .iter()
        .map(|p| p.0.to_symmetric())
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let r = symper_core::nset_intersection(&syms).map_err(err)?;
    Ok(r.map(|(h, p)| (h.layer_set(), PyProfile(p))))
}

#[pyfunction]
#[pyo3(signature = (formula, tuple, sig = Vec::new()))]
fn eval_formula(formula: &str, tuple: Vec<u8>, sig: Vec<(String, Func)>) -> PyResult<u8> {
    formula::eval(&parse_formula(formula)?, &signature(sig)?, &tuple).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (formula, nvars, sig = Vec::new()))]
fn realize(formula: &str, nvars: usize, sig: Vec<(String, Func)>) -> PyResult<PyTable> {
    formula::realize(&parse_formula(formula)?, &signature(sig)?, nvars)
        .map(PyTable)
        .map_err(err)
}

/// Names of the functions in `Θ(Φ)`.
#[pyfunction]
#[pyo3(signature = (formula, nvars, sig = Vec::new()))]
fn theta(formula: &str, nvars: usize, sig: Vec<(String, Func)>) -> PyResult<Vec<String>> {
    let th = formula::theta(&parse_formula(formula)?, &signature(sig)?, nvars).map_err(err)?;
    Ok(th.functions.into_iter().map(|(name, _)| name).collect())
}

#[pyfunction]
#[pyo3(signature = (formula, sig = Vec::new()))]
fn rewrite_i(formula: &str, sig: Vec<(String, Func)>) -> PyResult<String> {
    formula::rewrite_i(&parse_formula(formula)?, &signature(sig)?)
        .map(|f| f.to_string())
        .map_err(err)
}

/// Criteria verdict as a dict: `verdict` (`"yes"`, `"no"` or
/// `"inapplicable"`), `branch`, and `certificate` or `reason`.
#[pyfunction]
#[pyo3(signature = (f, g, with_i = false))]
fn member<'py>(py: Python<'py>, f: PyProfile, g: PyProfile, with_i: bool) -> PyResult<Bound<'py, PyDict>> {
    let m = if with_i {
        criteria::member_single_with_i(&f.0, &g.0)
    } else {
        criteria::member_single(&f.0, &g.0)
    };
    let out = PyDict::new(py);
    match m {
        Membership::Yes { branch, certificate: c } => {
            out.set_item("verdict", "yes")?;
            out.set_item("branch", branch.to_string())?;
            let cert = PyDict::new(py);
            cert.set_item("t", c.t)?;
            cert.set_item("q", c.q)?;
            cert.set_item("s", c.s)?;
            cert.set_item("k", c.k)?;
            out.set_item("certificate", cert)?;
        }
        Membership::No { branch, reason } => {
            out.set_item("verdict", "no")?;
            out.set_item("branch", branch.to_string())?;
            out.set_item("reason", reason)?;
        }
        Membership::Inapplicable { reason } => {
            out.set_item("verdict", "inapplicable")?;
            out.set_item("reason", reason)?;
        }
    }
    Ok(out)
}

/// `f ∈ [G]` by closure: `(True, witness)`, `(False, None)`, or
/// `RuntimeError` when a cap stops the run.
#[pyfunction]
#[pyo3(signature = (f, generators, with_i = false, max_nvars = None))]
fn member_oracle(f: Func, generators: Vec<Func>, with_i: bool, max_nvars: Option<usize>) -> PyResult<(bool, Option<String>)> {
    let mut tables = generators.iter().map(Func::table).collect::<PyResult<Vec<_>>>()?;
    if with_i {
        tables.push(symper_core::TableFn::i(2).map_err(err)?);
    }
    let v = symper_core::member_oracle(&f.table()?, &name_generators(&tables), &caps(max_nvars)).map_err(err)?;
    match v {
        OracleVerdict::Yes(w) => Ok((true, Some(w.to_string()))),
        OracleVerdict::No => Ok((false, None)),
        OracleVerdict::Incomplete(why) => Err(PyRuntimeError::new_err(why)),
    }
}

/// `[G]` on `x1..x_nvars`: a list of `(support, table, witness)`.
#[pyfunction]
#[pyo3(signature = (generators, nvars, max_nvars = None))]
fn close(generators: Vec<Func>, nvars: usize, max_nvars: Option<usize>) -> PyResult<Vec<(Vec<usize>, PyTable, String)>> {
    let tables = generators.iter().map(Func::table).collect::<PyResult<Vec<_>>>()?;
    let st = symper_core::close(&name_generators(&tables), nvars, &caps(max_nvars)).map_err(err)?;
    if let Some(why) = st.incomplete_reason() {
        return Err(PyRuntimeError::new_err(why.to_string()));
    }
    Ok((0..st.len())
        .map(|i| {
            let d = st.get(i);
            (d.support, PyTable(d.table), st.witness(i).to_string())
        })
        .collect())
}

type Extraction = (Vec<PyProfile>, Vec<(PyProfile, String)>);

/// Greedy basis extraction: `(basis, [(removed, reason), ...])`.
#[pyfunction]
fn extract_finite_basis(family: Vec<PyProfile>, p: u64) -> PyResult<Extraction> {
    let family: Vec<_> = family.into_iter().map(|f| f.0).collect();
    let x = classify::extract_finite_basis(&family, p, &ClosureCaps::default()).map_err(err)?;
    Ok((
        x.basis.into_iter().map(PyProfile).collect(),
        x.removed.into_iter().map(|r| (PyProfile(r.profile), r.reason)).collect(),
    ))
}

/// Classifies a JSON family descriptor: `(verdict, report_json)`.
#[pyfunction]
fn classify_family(descriptor_json: &str) -> PyResult<(String, String)> {
    let desc = FamilyDescriptor::from_json(descriptor_json).map_err(err)?;
    let c = classify::classify(&desc, &ClosureCaps::default()).map_err(err)?;
    let report = serde_json::to_string(&c).expect("classification serializes");
    Ok((format!("{:?}", c.verdict), report))
}

/// Runs one verification suite (or `"all"`): `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (suite, seed = 1))]
fn run_verify(py: Python<'_>, suite: &str, seed: u64) -> PyResult<(bool, String)> {
    let cfg = verify::VerifyConfig { seed, ..Default::default() };
    let reports = py
        .detach(|| {
            if suite == "all" {
                verify::run_all(&cfg)
            } else {
                verify::run_suite(suite, &cfg).map(|r| vec![r])
            }
        })
        .map_err(err)?;
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    Ok((reports.iter().all(|r| r.passed()), text))
}

#[pymodule]
pub fn symper(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProfile>()?;
    m.add_class::<PyTable>()?;
    m.add_function(wrap_pyfunction!(make_periodic, m)?)?;
    m.add_function(wrap_pyfunction!(detect_period, m)?)?;
    m.add_function(wrap_pyfunction!(nset_intersection, m)?)?;
    m.add_function(wrap_pyfunction!(eval_formula, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(rewrite_i, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(member_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(close, m)?)?;
    m.add_function(wrap_pyfunction!(extract_finite_basis, m)?)?;
    m.add_function(wrap_pyfunction!(classify_family, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
