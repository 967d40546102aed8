//! Python bindings for the `posetqsym` crate.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;

use posetqsym::classes;
use posetqsym::composition::Composition;
use posetqsym::error::Error;
use posetqsym::format;
use posetqsym::partitions;
use posetqsym::poset::{LabeledPoset, Poset};
use posetqsym::qsym::QSymElement;
use posetqsym::verify;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn composition(parts: Vec<usize>) -> PyResult<Composition> {
    Composition::new(parts).map_err(err)
}

/// An element of QSym in the monomial basis with integer coefficients.
#[pyclass(name = "QSym", module = "posetqsym", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyQSym(QSymElement);

#[pymethods]
impl PyQSym {
    /// `QSym([([1, 2], 1), ([1, 1, 1], 2)])`, or `QSym("M_12 + 2M_111")`.
    #[new]
    #[pyo3(signature = (terms = None))]
    fn new(terms: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let Some(terms) = terms else {
            return Ok(PyQSym(QSymElement::zero()));
        };
        if let Ok(s) = terms.extract::<String>() {
            return s.parse().map(PyQSym).map_err(err);
        }
        let pairs: Vec<(Vec<usize>, BigInt)> = terms.extract()?;
        let mut out = QSymElement::zero();
        for (parts, c) in pairs {
            out.add_term(composition(parts)?, c);
        }
        Ok(PyQSym(out))
    }

    #[staticmethod]
    fn monomial(parts: Vec<usize>) -> PyResult<Self> {
        Ok(PyQSym(QSymElement::monomial(composition(parts)?)))
    }

    #[classmethod]
    fn from_json(_cls: &Bound<'_, PyType>, s: &str) -> PyResult<Self> {
        QSymElement::from_json(s).map(PyQSym).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    /// Terms in lex-descending order of composition.
    fn terms(&self) -> Vec<(Vec<usize>, BigInt)> {
        self.0.terms().map(|(a, c)| (a.parts().to_vec(), c.clone())).collect()
    }

    fn coefficient(&self, parts: Vec<usize>) -> PyResult<BigInt> {
        Ok(self.0.coefficient(&composition(parts)?))
    }

    fn oshuffle(&self, other: &PyQSym) -> Self {
        PyQSym(self.0.mul_oshuffle(&other.0))
    }

    fn concat(&self, other: &PyQSym) -> Self {
        PyQSym(self.0.mul_concat(&other.0))
    }

    fn rho(&self) -> Self {
        PyQSym(self.0.rho())
    }

    fn leading_term(&self) -> PyResult<(Vec<usize>, BigInt)> {
        let (a, c) = self.0.leading_term().map_err(err)?;
        Ok((a.parts().to_vec(), c.clone()))
    }

    fn is_primitive(&self) -> PyResult<bool> {
        self.0.is_primitive().map_err(err)
    }

    /// `"left"`, `"right"` or `"inconclusive"`.
    fn irreducible_by_lemma(&self) -> PyResult<String> {
        Ok(self.0.irreducible_by_lemma().map_err(err)?.to_string())
    }

    fn __mul__(&self, other: &PyQSym) -> Self {
        self.oshuffle(other)
    }

    fn __add__(&self, other: &PyQSym) -> Self {
        PyQSym(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyQSym) -> Self {
        PyQSym(&self.0 - &other.0)
    }

    fn __neg__(&self) -> Self {
        PyQSym(-&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.num_terms()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QSym({:?})", self.0.to_string())
    }
}

/// A finite poset on `0..n`.
#[pyclass(name = "Poset", module = "posetqsym", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPoset(Poset);

impl PyPoset {
    fn labeled(&self, labels: Vec<usize>) -> PyResult<LabeledPoset> {
        LabeledPoset::new(self.0.clone(), labels).map_err(err)
    }
}

#[pymethods]
impl PyPoset {
    /// `Poset(3, [(0, 1), (0, 2)])`: pairs `(u, v)` mean `u < v`.
    #[new]
    #[pyo3(signature = (n, relations = Vec::new()))]
    fn new(n: usize, relations: Vec<(usize, usize)>) -> PyResult<Self> {
        Poset::from_covers(n, &relations).map(PyPoset).map_err(err)
    }

    #[staticmethod]
    fn chain(n: usize) -> Self {
        PyPoset(Poset::chain(n))
    }

    #[staticmethod]
    fn antichain(n: usize) -> Self {
        PyPoset(Poset::antichain(n))
    }

    /// Nested parentheses, e.g. `"(()())"`.
    #[staticmethod]
    fn from_tree(s: &str) -> PyResult<Self> {
        let t: classes::RootedTree = s.parse().map_err(err)?;
        t.to_poset().map(PyPoset).map_err(err)
    }

    #[staticmethod]
    fn from_text(s: &str) -> PyResult<Self> {
        format::parse_poset(s).map(|r| PyPoset(r.poset)).map_err(err)
    }

    #[pyo3(signature = (name = "unnamed"))]
    fn to_text(&self, name: &str) -> String {
        format::PosetRecord::unlabeled(name, self.0.clone()).to_text()
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.0.covers().to_vec()
    }

    fn lt(&self, u: usize, v: usize) -> bool {
        self.0.lt(u, v)
    }

    fn minimals(&self) -> Vec<usize> {
        self.0.minimals()
    }

    fn maximals(&self) -> Vec<usize> {
        self.0.maximals()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn canonical_form(&self) -> PyResult<String> {
        Ok(self.0.canonical_form().map_err(err)?.to_hex())
    }

    fn is_isomorphic(&self, other: &PyPoset) -> PyResult<bool> {
        self.0.is_isomorphic(&other.0).map_err(err)
    }

    fn disjoint_union(&self, other: &PyPoset) -> PyResult<Self> {
        self.0.disjoint_union(&other.0).map(PyPoset).map_err(err)
    }

    fn ordinal_sum(&self, other: &PyPoset) -> PyResult<Self> {
        self.0.ordinal_sum(&other.0).map(PyPoset).map_err(err)
    }

    fn gamma_strict(&self) -> PyQSym {
        PyQSym(partitions::gamma_strict(&self.0))
    }

    fn gamma_weak(&self) -> PyQSym {
        PyQSym(partitions::gamma_weak(&self.0))
    }

    /// Γ for the labeling `labels[u] = ω(u)`, a bijection onto `1..=n`.
    fn gamma(&self, labels: Vec<usize>) -> PyResult<PyQSym> {
        Ok(PyQSym(partitions::gamma(&self.labeled(labels)?)))
    }

    fn jump_sequence(&self, labels: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(partitions::jump_sequence(&self.labeled(labels)?).into_parts())
    }

    fn stable_partitions(&self, labels: Vec<usize>) -> PyResult<Vec<Vec<Vec<usize>>>> {
        let lp = self.labeled(labels)?;
        Ok(partitions::enumerate_stable_partitions(&lp).into_iter().map(|s| s.blocks().to_vec()).collect())
    }

    fn is_njoinfree(&self) -> bool {
        classes::is_njoinfree_scan(&self.0)
    }

    /// Build term over `[1]`, `⊔` and `⊕`, or `None` when the poset contains N or ⋈.
    fn class_c_trace(&self) -> Option<String> {
        classes::class_c_membership(&self.0).map(|t| t.to_string())
    }

    fn linear_extensions(&self) -> BigInt {
        verify::count_linear_extensions(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset({}, {:?})", self.0.len(), self.0.covers())
    }
}

fn wrap_all(posets: Vec<Poset>) -> Vec<PyPoset> {
    posets.into_iter().map(PyPoset).collect()
}

/// Rooted trees on `n` vertices as nested-parentheses strings.
#[pyfunction]
fn enumerate_rooted_trees(n: usize) -> Vec<String> {
    classes::enumerate_rooted_trees(n).iter().map(|t| t.encoding().to_string()).collect()
}

#[pyfunction]
fn enumerate_njoinfree(py: Python<'_>, n: usize) -> PyResult<Vec<PyPoset>> {
    py.detach(|| classes::enumerate_njoinfree(n)).map(wrap_all).map_err(err)
}

#[pyfunction]
fn enumerate_all_posets(py: Python<'_>, n: usize) -> PyResult<Vec<PyPoset>> {
    py.detach(|| classes::enumerate_all_posets(n)).map(wrap_all).map_err(err)
}

#[pyfunction]
fn count_njoinfree(py: Python<'_>, nmax: usize) -> PyResult<Vec<usize>> {
    py.detach(|| classes::count_njoinfree(nmax)).map_err(err)
}

/// Records of a poset text file as `(name, poset, labels or None)`.
#[pyfunction]
fn parse_posets(text: &str) -> PyResult<Vec<(String, PyPoset, Option<Vec<usize>>)>> {
    let recs = format::parse_posets(text).map_err(err)?;
    Ok(recs.into_iter().map(|r| (r.name, PyPoset(r.poset), r.labels)).collect())
}

/// The bundled pair of non-isomorphic 7-element posets with equal Γ^<.
#[pyfunction]
fn counterexample() -> (PyPoset, PyPoset) {
    let (a, b) = verify::counterexample_posets();
    (PyPoset(a), PyPoset(b))
}

/// Runs a verification suite; returns `(pass, report text)`.
#[pyfunction]
#[pyo3(signature = (suite, nmax = None, seed = 0, budget = 1000))]
fn run_verification(py: Python<'_>, suite: &str, nmax: Option<usize>, seed: u64, budget: usize) -> PyResult<(bool, String)> {
    let reports = py.detach(|| -> Result<Vec<verify::VerificationReport>, Error> {
        Ok(match suite {
            "counterexample" => vec![verify::verify_counterexample()],
            "trees" => vec![verify::verify_injectivity(
                verify::ScanClass::RootedTrees,
                nmax.unwrap_or(verify::TREES_DEFAULT_NMAX),
                false,
            )?],
            "njoinfree" => vec![verify::verify_injectivity(
                verify::ScanClass::NjoinFree,
                nmax.unwrap_or(verify::NJOINFREE_DEFAULT_NMAX),
                false,
            )?],
            "properties" => verify::property_suite(seed, budget)?,
            other => return Err(Error::Parse { line: 0, msg: format!("unknown suite {other:?}") }),
        })
    });
    let reports = reports.map_err(err)?;
    let pass = reports.iter().all(|r| r.pass);
    Ok((pass, reports.iter().map(|r| r.body()).collect()))
}

#[pymodule]
#[pyo3(name = "posetqsym")]
fn posetqsym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQSym>()?;
    m.add_class::<PyPoset>()?;
    m.add_function(wrap_pyfunction!(enumerate_rooted_trees, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_njoinfree, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_all_posets, m)?)?;
    m.add_function(wrap_pyfunction!(count_njoinfree, m)?)?;
    m.add_function(wrap_pyfunction!(parse_posets, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    Ok(())
}
