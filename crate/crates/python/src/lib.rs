//! Python bindings for `colorsg-core`.
//!
//! Vectors cross the boundary as lists of Python ints; reports are returned
//! as dictionaries with the same layout as the CLI's `--json` output.

use colorsg_core::colored::{self, ColoredSemigroup as CoreColored};
use colorsg_core::diophantine::{hilbert_basis_homogeneous, SolutionSpace, SolutionVector};
use colorsg_core::helly::{self, AuditOptions, CaseAssertion, SemigroupFamily, SharpnessCase};
use colorsg_core::numerical::{self, BChoice, ColoredNumericalSemigroup as CoreNumerical, ReductionMode};
use colorsg_core::semigroup::{self, AffineSemigroup as CoreAffine};
use colorsg_core::{Error, IntVector};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(colorsg, ColorsgError, PyValueError, "Raised for invalid input or a violated contract.");

fn err(e: Error) -> PyErr {
    ColorsgError::new_err(e.to_string())
}

fn to_vector(v: Vec<BigInt>) -> IntVector {
    IntVector::new(v)
}

fn from_vector(v: &IntVector) -> Vec<BigInt> {
    v.entries().to_vec()
}

fn to_vectors(vs: Vec<Vec<BigInt>>) -> Vec<IntVector> {
    vs.into_iter().map(to_vector).collect()
}

fn dimension_of(vs: &[Vec<BigInt>]) -> PyResult<usize> {
    vs.first().map(Vec::len).ok_or_else(|| ColorsgError::new_err("at least one generator is required"))
}

fn solution(x: &SolutionVector) -> Vec<BigInt> {
    from_vector(x.multiplicities())
}

/// Serializes `value` and hands it to `json.loads`.
fn to_py<T: serde::Serialize + ?Sized>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| ColorsgError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Affine semigroup generated by integer vectors.
#[pyclass(module = "colorsg", frozen, from_py_object)]
#[derive(Clone)]
struct AffineSemigroup {
    inner: CoreAffine,
}

#[pymethods]
impl AffineSemigroup {
    #[new]
    #[pyo3(signature = (generators, dim = None))]
    fn new(generators: Vec<Vec<BigInt>>, dim: Option<usize>) -> PyResult<Self> {
        let dim = match dim {
            Some(d) => d,
            None => dimension_of(&generators)?,
        };
        Ok(AffineSemigroup { inner: CoreAffine::new(dim, to_vectors(generators)).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<BigInt>> {
        self.inner.generators().iter().map(from_vector).collect()
    }

    fn is_pointed(&self) -> bool {
        self.inner.is_pointed()
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    fn contains(&self, b: Vec<BigInt>) -> PyResult<bool> {
        self.inner.contains(&to_vector(b)).map_err(err)
    }

    /// Multiplicities over the generators, or `None`.
    fn representation(&self, b: Vec<BigInt>) -> PyResult<Option<Vec<BigInt>>> {
        Ok(self.inner.representation(&to_vector(b)).map_err(err)?.as_ref().map(solution))
    }

    /// Every nonnegative solution of `sum x_j g_j = b`.
    fn solutions(&self, b: Vec<BigInt>) -> PyResult<Vec<Vec<BigInt>>> {
        let space = self.inner.solution_space().map_err(err)?;
        Ok(space.solutions(&to_vector(b)).iter().map(solution).collect())
    }

    fn intersect(&self, other: &AffineSemigroup) -> PyResult<AffineSemigroup> {
        Ok(AffineSemigroup { inner: semigroup::intersect_semigroups(&self.inner, &other.inner).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("AffineSemigroup({})", self.inner)
    }
}

/// Affine semigroup with generators partitioned into color classes.
#[pyclass(module = "colorsg", frozen)]
struct ColoredSemigroup {
    inner: CoreColored,
}

#[pymethods]
impl ColoredSemigroup {
    #[new]
    fn new(classes: Vec<Vec<Vec<BigInt>>>) -> PyResult<Self> {
        let dim = classes
            .iter()
            .flatten()
            .next()
            .map(Vec::len)
            .ok_or_else(|| ColorsgError::new_err("at least one generator is required"))?;
        let classes = classes.into_iter().map(to_vectors).collect();
        Ok(ColoredSemigroup { inner: CoreColored::new(dim, classes).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn num_colors(&self) -> usize {
        self.inner.num_colors()
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<BigInt>> {
        self.inner.generators().iter().map(from_vector).collect()
    }

    /// Colors used, chromatic level and the monochromatic/chromatic/colorful flags.
    fn classify(&self, py: Python<'_>, x: Vec<BigInt>) -> PyResult<Py<PyAny>> {
        let x = SolutionVector::new(to_vector(x)).map_err(err)?;
        let c = colored::classify(&self.inner, &x).map_err(err)?;
        to_py(py, &c)
    }

    fn solutions(&self, b: Vec<BigInt>) -> PyResult<Vec<Vec<BigInt>>> {
        let space = self.inner.solution_space().map_err(err)?;
        Ok(space.solutions(&to_vector(b)).iter().map(solution).collect())
    }

    fn find_k_chromatic(&self, b: Vec<BigInt>, k: usize) -> PyResult<Option<Vec<BigInt>>> {
        Ok(colored::find_k_chromatic(&self.inner, &to_vector(b), k).map_err(err)?.as_ref().map(solution))
    }

    fn find_colorful(&self, b: Vec<BigInt>) -> PyResult<Option<Vec<BigInt>>> {
        Ok(colored::find_colorful(&self.inner, &to_vector(b)).map_err(err)?.as_ref().map(solution))
    }

    fn caratheodory_exceptions(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = colored::caratheodory_exceptions(&self.inner).map_err(err)?;
        to_py(py, &report)
    }

    fn lift(&self) -> ColoredSemigroup {
        ColoredSemigroup { inner: colored::lift_family(&self.inner) }
    }
}

/// Numerical semigroup with colored generator classes.
#[pyclass(module = "colorsg", frozen)]
struct ColoredNumericalSemigroup {
    inner: CoreNumerical,
}

#[pymethods]
impl ColoredNumericalSemigroup {
    #[new]
    fn new(classes: Vec<Vec<u64>>) -> PyResult<Self> {
        Ok(ColoredNumericalSemigroup { inner: CoreNumerical::new(classes).map_err(err)? })
    }

    #[getter]
    fn classes(&self) -> Vec<Vec<u64>> {
        self.inner.classes().to_vec()
    }

    #[getter]
    fn num_colors(&self) -> usize {
        self.inner.num_colors()
    }

    fn frobenius(&self) -> PyResult<i64> {
        numerical::frobenius(&self.inner.generators()).map_err(err)
    }

    fn chromatic_frobenius(&self, py: Python<'_>, k: usize) -> PyResult<Py<PyAny>> {
        let report = numerical::chromatic_frobenius(&self.inner, k).map_err(err)?;
        to_py(py, &report)
    }

    fn is_k_chromatic_member(&self, b: u64, k: usize) -> PyResult<bool> {
        numerical::k_chromatic_member(&self.inner, b, k).map_err(err)
    }

    /// Number of representations of `b` using at least `k` colors.
    fn count(&self, b: u64, k: usize) -> PyResult<BigInt> {
        Ok(numerical::count_k_chromatic(&self.inner, b, k).map_err(err)?.into())
    }

    #[pyo3(signature = (k, start = 1, validate = 30))]
    fn quasipolynomial(&self, py: Python<'_>, k: usize, start: u64, validate: u64) -> PyResult<Py<PyAny>> {
        let qp = numerical::fit_quasipolynomial(&self.inner, k, start, validate).map_err(err)?;
        to_py(py, &qp)
    }

    fn estimates(&self, py: Python<'_>, k: usize, i: usize) -> PyResult<Py<PyAny>> {
        let report = numerical::estimate_check(&self.inner, k, i).map_err(err)?;
        to_py(py, &report)
    }

    /// Builds and checks a reduction instance; `mode` is `"a"` or `"b"`.
    #[pyo3(signature = (k, mode, b_choice = "minimal"))]
    fn reduction(&self, py: Python<'_>, k: usize, mode: &str, b_choice: &str) -> PyResult<Py<PyAny>> {
        let mode = match mode {
            "a" => ReductionMode::Doubling,
            "b" => ReductionMode::Append,
            other => return Err(ColorsgError::new_err(format!("unknown mode '{other}'"))),
        };
        let choice = match b_choice {
            "minimal" => BChoice::Minimal,
            "explicit" => BChoice::Explicit,
            other => return Err(ColorsgError::new_err(format!("unknown b choice '{other}'"))),
        };
        let r = numerical::reduction_construct(&self.inner, k, mode, choice).map_err(err)?;
        let (predicted, computed) = r.check().map_err(err)?;
        let mut value = serde_json::to_value(&r).map_err(|e| ColorsgError::new_err(e.to_string()))?;
        value["computed"] = computed.into();
        value["matches"] = (predicted == computed).into();
        to_py(py, &value)
    }

    fn to_colored(&self) -> ColoredSemigroup {
        ColoredSemigroup { inner: self.inner.to_colored() }
    }
}

#[pyfunction]
fn frobenius(generators: Vec<u64>) -> PyResult<i64> {
    numerical::frobenius(&generators).map_err(err)
}

#[pyfunction]
fn gaps(generators: Vec<u64>) -> PyResult<Vec<u64>> {
    numerical::gaps(&generators).map_err(err)
}

/// Every `x >= 0` with `sum x_j columns[j] = b`.
#[pyfunction]
fn solve(columns: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> PyResult<Vec<Vec<BigInt>>> {
    let space = SolutionSpace::new(b.len(), to_vectors(columns)).map_err(err)?;
    Ok(space.solutions(&to_vector(b)).iter().map(solution).collect())
}

/// Hilbert basis of `{x >= 0 : rows . x = 0}`.
#[pyfunction]
fn hilbert_basis(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<Vec<BigInt>>> {
    let n = dimension_of(&rows)?;
    if rows.iter().any(|r| r.len() != n) {
        return Err(ColorsgError::new_err("rows differ in length"));
    }
    Ok(hilbert_basis_homogeneous(&to_vectors(rows), n).iter().map(from_vector).collect())
}

/// Audits the Helly contract; `case` is pointed-noncover, pointed-cover or general.
#[pyfunction]
#[pyo3(signature = (members, case = "general", seed = 0, max_subsets = 2000))]
fn helly_audit(
    py: Python<'_>,
    members: Vec<AffineSemigroup>,
    case: &str,
    seed: u64,
    max_subsets: u64,
) -> PyResult<Py<PyAny>> {
    let case: CaseAssertion = case.parse().map_err(err)?;
    let family = SemigroupFamily::new(members.into_iter().map(|m| m.inner).collect(), case).map_err(err)?;
    let report = helly::helly_audit(&family, AuditOptions { seed, max_subsets }).map_err(err)?;
    to_py(py, &report)
}

/// Members of the sharpness family `"a"`, `"b"` or `"c"` in dimension `d`.
#[pyfunction]
fn sharpness_example(case: &str, d: usize) -> PyResult<Vec<AffineSemigroup>> {
    let case: SharpnessCase = case.parse().map_err(err)?;
    let family = helly::build_mthelly_example(case, d).map_err(err)?;
    Ok(family.members().iter().map(|m| AffineSemigroup { inner: m.clone() }).collect())
}

#[pyfunction]
fn tverberg(py: Python<'_>, semigroup: &AffineSemigroup, r: usize) -> PyResult<Py<PyAny>> {
    let t = helly::tverberg_partition(&semigroup.inner, r).map_err(err)?;
    to_py(py, &t)
}

#[pyfunction]
fn cteg_family(n: usize) -> PyResult<ColoredSemigroup> {
    Ok(ColoredSemigroup { inner: colored::build_cteg_family(n).map_err(err)?.colored() })
}

#[pyfunction]
fn verify_cteg(py: Python<'_>, n: usize) -> PyResult<Py<PyAny>> {
    let v = colored::verify_unique_expressions(n).map_err(err)?;
    to_py(py, &v)
}

#[pymodule]
fn colorsg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ColorsgError", m.py().get_type::<ColorsgError>())?;
    m.add_class::<AffineSemigroup>()?;
    m.add_class::<ColoredSemigroup>()?;
    m.add_class::<ColoredNumericalSemigroup>()?;
    m.add_function(wrap_pyfunction!(frobenius, m)?)?;
    m.add_function(wrap_pyfunction!(gaps, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_basis, m)?)?;
    m.add_function(wrap_pyfunction!(helly_audit, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_example, m)?)?;
    m.add_function(wrap_pyfunction!(tverberg, m)?)?;
    m.add_function(wrap_pyfunction!(cteg_family, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cteg, m)?)?;
    Ok(())
}
