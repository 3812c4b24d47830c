use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use critnum::formulas::{self, CriticalValue};
use critnum::oracle::{self, SearchBudget};
use critnum::sumset;
use critnum::{GSet, GroupSpec};

fn err(e: critnum::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite abelian group in invariant-factor form.
#[pyclass(frozen)]
struct Group {
    inner: GroupSpec,
}

#[pymethods]
impl Group {
    /// Parse "Z12" / "Z2xZ6" / "12".
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Group {
            inner: spec.parse().map_err(err)?,
        })
    }

    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        Ok(Group {
            inner: GroupSpec::cyclic(n).map_err(err)?,
        })
    }

    #[staticmethod]
    fn of_factors(factors: Vec<usize>) -> PyResult<Self> {
        Ok(Group {
            inner: critnum::make_group(&factors).map_err(err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn exponent(&self) -> usize {
        self.inner.exponent()
    }

    #[getter]
    fn invariant_factors(&self) -> Vec<usize> {
        self.inner.invariant_factors().to_vec()
    }

    #[getter]
    fn is_cyclic(&self) -> bool {
        self.inner.is_cyclic()
    }

    fn add(&self, a: usize, b: usize) -> PyResult<usize> {
        self.inner.add(a, b).map_err(err)
    }

    fn neg(&self, a: usize) -> PyResult<usize> {
        self.inner.neg(a).map_err(err)
    }

    fn decode(&self, a: usize) -> Vec<usize> {
        self.inner.decode(a)
    }

    fn two_torsion(&self) -> Vec<usize> {
        self.inner.two_torsion().elements()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.inner.to_string())
    }
}

fn gset(group: &Group, elements: Vec<usize>) -> PyResult<GSet> {
    GSet::from_elements(group.inner.clone(), &elements).map_err(err)
}

fn budget(seconds: Option<f64>) -> SearchBudget {
    match seconds {
        Some(s) => SearchBudget::unlimited().with_seconds(s),
        None => SearchBudget::unlimited(),
    }
}

fn critical_dict<'py>(py: Python<'py>, v: &CriticalValue) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", v.value)?;
    d.set_item("kind", format!("{:?}", v.kind).to_lowercase())?;
    d.set_item("case_tag", &v.case_tag)?;
    Ok(d)
}

#[pyfunction]
fn u(n: usize, m: usize, h: usize) -> PyResult<usize> {
    formulas::u_func(n, m, h).map_err(err)
}

#[pyfunction]
fn v_g(n: usize, h: usize, g: usize) -> PyResult<usize> {
    formulas::v_g_closed(n, h, g).map_err(err)
}

#[pyfunction]
fn chi(n: usize, h: usize) -> PyResult<usize> {
    Ok(formulas::chi_unrestricted(n, h).map_err(err)?.value.unwrap())
}

#[pyfunction]
fn chi_hat<'py>(py: Python<'py>, group: &Group, h: usize) -> PyResult<Bound<'py, PyDict>> {
    let v = formulas::chi_hat_closed(&group.inner, h).map_err(err)?;
    critical_dict(py, &v)
}

#[pyfunction]
fn classical_critical<'py>(py: Python<'py>, group: &Group) -> PyResult<Bound<'py, PyDict>> {
    let v = formulas::classical_critical(&group.inner).map_err(err)?;
    critical_dict(py, &v)
}

#[pyfunction]
fn h_fold(group: &Group, elements: Vec<usize>, h: usize) -> PyResult<Vec<usize>> {
    let a = gset(group, elements)?;
    Ok(sumset::h_fold(&a, h).map_err(err)?.elements())
}

#[pyfunction]
fn h_fold_restricted(group: &Group, elements: Vec<usize>, h: usize) -> PyResult<Vec<usize>> {
    let a = gset(group, elements)?;
    Ok(sumset::h_fold_restricted(&a, h).map_err(err)?.elements())
}

#[pyfunction]
fn subset_sums(group: &Group, elements: Vec<usize>) -> PyResult<Vec<usize>> {
    let a = gset(group, elements)?;
    Ok(sumset::subset_sums(&a).map_err(err)?.elements())
}

#[pyfunction]
#[pyo3(signature = (group, m, h, seconds=None))]
fn rho_exact(group: &Group, m: usize, h: usize, seconds: Option<f64>) -> PyResult<usize> {
    Ok(oracle::rho_exact(&group.inner, m, h, &budget(seconds))
        .map_err(err)?
        .value)
}

#[pyfunction]
#[pyo3(signature = (group, m, h, seconds=None))]
fn rho_hat_exact(group: &Group, m: usize, h: usize, seconds: Option<f64>) -> PyResult<usize> {
    Ok(oracle::rho_hat_exact(&group.inner, m, h, &budget(seconds))
        .map_err(err)?
        .value)
}

#[pyfunction]
#[pyo3(signature = (group, h, seconds=None))]
fn chi_exact<'py>(
    py: Python<'py>,
    group: &Group,
    h: usize,
    seconds: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = oracle::chi_exact(&group.inner, h, &budget(seconds)).map_err(err)?;
    critical_dict(py, &r.value)
}

#[pyfunction]
#[pyo3(signature = (group, h, seconds=None))]
fn chi_hat_exact<'py>(
    py: Python<'py>,
    group: &Group,
    h: usize,
    seconds: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = oracle::chi_hat_exact(&group.inner, h, &budget(seconds)).map_err(err)?;
    critical_dict(py, &r.value)
}

#[pyfunction]
#[pyo3(signature = (group, seconds=None))]
fn sigma_critical_exact<'py>(
    py: Python<'py>,
    group: &Group,
    seconds: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = oracle::sigma_critical_exact(&group.inner, &budget(seconds)).map_err(err)?;
    critical_dict(py, &r.value)
}

#[pyfunction]
#[pyo3(signature = (group, seconds=None))]
fn max_sum_free(group: &Group, seconds: Option<f64>) -> PyResult<usize> {
    Ok(oracle::max_sum_free(&group.inner, &budget(seconds))
        .map_err(err)?
        .size)
}

#[pyfunction]
#[pyo3(signature = (group, seconds=None))]
fn max_three_one_sum_free(group: &Group, seconds: Option<f64>) -> PyResult<usize> {
    Ok(oracle::max_three_one_sum_free(&group.inner, &budget(seconds))
        .map_err(err)?
        .size)
}

#[pyfunction]
fn groups_of_order(n: usize) -> PyResult<Vec<String>> {
    Ok(critnum::groups_of_order(n)
        .map_err(err)?
        .iter()
        .map(|g| g.to_string())
        .collect())
}

#[pymodule]
fn critnum_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(u, m)?)?;
    m.add_function(wrap_pyfunction!(v_g, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(chi_hat, m)?)?;
    m.add_function(wrap_pyfunction!(classical_critical, m)?)?;
    m.add_function(wrap_pyfunction!(h_fold, m)?)?;
    m.add_function(wrap_pyfunction!(h_fold_restricted, m)?)?;
    m.add_function(wrap_pyfunction!(subset_sums, m)?)?;
    m.add_function(wrap_pyfunction!(rho_exact, m)?)?;
    m.add_function(wrap_pyfunction!(rho_hat_exact, m)?)?;
    m.add_function(wrap_pyfunction!(chi_exact, m)?)?;
    m.add_function(wrap_pyfunction!(chi_hat_exact, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_critical_exact, m)?)?;
    m.add_function(wrap_pyfunction!(max_sum_free, m)?)?;
    m.add_function(wrap_pyfunction!(max_three_one_sum_free, m)?)?;
    m.add_function(wrap_pyfunction!(groups_of_order, m)?)?;
    Ok(())
}
