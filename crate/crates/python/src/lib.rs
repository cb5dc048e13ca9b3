//! Python module `f2coh`: algebras and elements, matrix groups and their
//! invariants, Steenrod squares, series expansion and the scenario runner.

use std::path::PathBuf;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use f2coh::cli::{self, Params};
use f2coh::f2alg::{AlgebraSpec, DegreeBasis, Element, GeneratorSpec};
use f2coh::homological::{page_homology, verify_lemma31, DifferentialSpec, PresentedAlgebra};
use f2coh::invariants::{self, GF2Matrix, MatrixGroup};
use f2coh::series::RationalSeries;
use f2coh::steenrod;

fn py_err(e: f2coh::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A graded-commutative algebra over F2 with named generators.
#[pyclass(name = "Algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: Arc<AlgebraSpec>,
}

#[pymethods]
impl PyAlgebra {
    /// `generators` is a list of `(name, degree, exterior)` triples.
    #[new]
    fn new(generators: Vec<(String, u32, bool)>) -> PyResult<Self> {
        let gens = generators
            .into_iter()
            .map(|(name, d, ext)| if ext { GeneratorSpec::ext(name, d) } else { GeneratorSpec::poly(name, d) })
            .collect();
        Ok(PyAlgebra {
            inner: AlgebraSpec::new(gens).map_err(py_err)?,
        })
    }

    /// `F2[x1, ..., xn]` with every generator in degree 1.
    #[staticmethod]
    fn polynomial(n: usize) -> Self {
        PyAlgebra {
            inner: AlgebraSpec::polynomial(n),
        }
    }

    fn parse(&self, text: &str) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.parse(text).map_err(py_err)?,
        })
    }

    fn zero(&self) -> PyElement {
        PyElement {
            inner: Element::zero(&self.inner),
        }
    }

    fn one(&self) -> PyElement {
        PyElement {
            inner: Element::one(&self.inner),
        }
    }

    /// Number of monomials in degree `d`.
    fn dim(&self, d: u32) -> usize {
        DegreeBasis::new(&self.inner, d).len()
    }

    fn generator_names(&self) -> Vec<String> {
        self.inner.generators().iter().map(|g| g.name.clone()).collect()
    }
}

/// An element of an `Algebra`.
#[pyclass(name = "Element", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyElement {
    inner: Element,
}

#[pymethods]
impl PyElement {
    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.try_add(&other.inner).map_err(py_err)?,
        })
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.try_mul(&other.inner).map_err(py_err)?,
        })
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> PyElement {
        PyElement { inner: self.inner.pow(k) }
    }

    fn __str__(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        format!("Element({:?})", self.inner.render())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// The degree, or `None` for zero; raises for inhomogeneous elements.
    fn degree(&self) -> PyResult<Option<u32>> {
        self.inner.homogeneous_degree().map_err(py_err)
    }

    /// `Sq^k` of a homogeneous element of an algebra generated in degree 1.
    fn sq(&self, k: u32) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: steenrod::sq(k, &self.inner).map_err(py_err)?,
        })
    }

    fn total_sq(&self) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: steenrod::total_sq(&self.inner).map_err(py_err)?,
        })
    }

    /// Restriction to the kept (0-based) variables, the others set to zero.
    fn restrict(&self, keep: Vec<usize>) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: invariants::restrict(&self.inner, &keep).map_err(py_err)?,
        })
    }
}

/// A subgroup of `GL_n(2)` given by generators; each generator is a list of
/// `n` row bitmasks (bit `j` of row `i` is entry `(i, j)`).
#[pyclass(name = "Group")]
struct PyGroup {
    inner: MatrixGroup,
}

fn matrix(n: usize, rows: &[u8]) -> PyResult<GF2Matrix> {
    GF2Matrix::from_row_bytes(n, rows).map_err(py_err)
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(n: usize, generators: Vec<Vec<u8>>) -> PyResult<Self> {
        let gens = generators.iter().map(|rows| matrix(n, rows)).collect::<PyResult<Vec<_>>>()?;
        Ok(PyGroup {
            inner: MatrixGroup::from_generators(n, gens).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn general_linear(n: usize) -> PyResult<Self> {
        Ok(PyGroup {
            inner: MatrixGroup::general_linear(n).map_err(py_err)?,
        })
    }

    /// The pinned `(A7, A6)` pair from a fixture directory (default: the
    /// one the command line uses).
    #[staticmethod]
    #[pyo3(signature = (fixtures=None))]
    fn alternating(fixtures: Option<PathBuf>) -> PyResult<(PyGroup, PyGroup)> {
        let dir = fixtures.unwrap_or_else(cli::default_fixture_dir);
        let (a7, a6) = invariants::load_alternating_subgroups(&dir).map_err(py_err)?;
        Ok((PyGroup { inner: a7 }, PyGroup { inner: a6 }))
    }

    fn order(&mut self) -> u64 {
        self.inner.enumerate();
        self.inner.order().unwrap_or(0)
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Dimensions of the invariant ring in degrees `0..=max_degree`.
    fn invariant_dims(&self, max_degree: u32) -> Vec<usize> {
        invariants::invariant_dims(&self.inner, max_degree)
    }

    /// A basis of the invariants in degree `d`.
    fn invariant_basis(&self, d: u32) -> Vec<PyElement> {
        let alg = AlgebraSpec::polynomial(self.inner.dim());
        let basis = DegreeBasis::new(&alg, d);
        invariants::invariant_basis(&self.inner, d)
            .vectors()
            .map(|v| PyElement {
                inner: basis.devectorize(&v),
            })
            .collect()
    }

    fn is_simple(&mut self) -> bool {
        self.inner.enumerate();
        self.inner.simplicity_certificate() == Some(true)
    }
}

/// The Dickson invariants of `GL_n(2)`, lowest degree first.
#[pyfunction]
fn dickson(n: usize) -> Vec<PyElement> {
    invariants::dickson(n).into_iter().map(|inner| PyElement { inner }).collect()
}

/// Taylor coefficients of `sum c t^e / prod (1 - t^a)` through `n_max`.
#[pyfunction]
fn expand_series(numerator: Vec<(u32, i64)>, denominator: Vec<u32>, n_max: u32) -> PyResult<Vec<i64>> {
    Ok(RationalSeries::new(&numerator, &denominator).map_err(py_err)?.expand(n_max))
}

/// `(name, tier, statement)` for every scenario.
#[pyfunction]
fn list_scenarios() -> Vec<(String, String, String)> {
    cli::scenarios()
        .iter()
        .map(|s| (s.name.to_string(), s.tier.as_str().to_string(), s.anchor.to_string()))
        .collect()
}

/// Runs a scenario and returns its JSON report as a string.
#[pyfunction]
#[pyo3(signature = (name, max_degree=None, seed=0, timing=false))]
fn run_scenario(name: &str, max_degree: Option<u32>, seed: u64, timing: bool) -> PyResult<String> {
    let params = Params {
        max_degree,
        seed,
        timing,
        ..Params::default()
    };
    Ok(cli::run_scenario(name, &params).map_err(py_err)?.to_json())
}

/// `(name, holds)` for each coproduct identity and restriction check.
#[pyfunction]
fn coproduct_identities() -> PyResult<Vec<(String, bool)>> {
    Ok(verify_lemma31().map_err(py_err)?.into_iter().map(|c| (c.name, c.holds)).collect())
}

/// Total dimensions of the page after `d2` in degrees `0..=n_max`.
#[pyfunction]
fn e3_dims(n_max: u32) -> PyResult<Vec<u64>> {
    let p = PresentedAlgebra::em_e2();
    let d2 = DifferentialSpec::em_d2(&p).map_err(py_err)?;
    Ok(page_homology(&p, &d2, n_max).map_err(py_err)?.totals().dims)
}

#[pymodule]
#[pyo3(name = "f2coh")]
fn f2coh_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(dickson, m)?)?;
    m.add_function(wrap_pyfunction!(expand_series, m)?)?;
    m.add_function(wrap_pyfunction!(list_scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(coproduct_identities, m)?)?;
    m.add_function(wrap_pyfunction!(e3_dims, m)?)?;
    Ok(())
}
