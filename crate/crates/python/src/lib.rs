//! Python bindings for the core types and operations. Build with
//! `cargo build -p weylkit-python`, then import the produced cdylib as
//! `weylkit_py` (see python/smoke_test.py).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use weylkit::arrangement::{enumerate_chambers, root_arrangement, Arrangement};
use weylkit::catalog;
use weylkit::error::Error;
use weylkit::exact::{parse_rat, rat_str, MultiPoly, QVec};
use weylkit::mc;
use weylkit::mc::haar::GroupTag;
use weylkit::reflection::{generate_closure, GroupClosure};
use weylkit::roots;
use weylkit::strata;
use weylkit::volume;

fn err(e: Error) -> PyErr {
    match e {
        Error::Usage(msg) => PyValueError::new_err(msg),
        Error::Integrity(msg) => PyRuntimeError::new_err(msg),
    }
}

/// A root system in simple-root coordinates.
#[pyclass(name = "RootSystem")]
struct PyRootSystem {
    inner: roots::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        let label: roots::Label = label.parse().map_err(err)?;
        Ok(PyRootSystem {
            inner: roots::RootSystem::build(label),
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn num_roots(&self) -> usize {
        self.inner.roots().len()
    }

    #[getter]
    fn num_positive_roots(&self) -> usize {
        self.inner.positive_roots().len()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.inner.rank())
            .map(|i| self.inner.cartan().row(i).to_vec())
            .collect()
    }

    fn roots(&self) -> Vec<Vec<i64>> {
        self.inner.roots().to_vec()
    }

    fn weyl_order(&self) -> PyResult<usize> {
        match generate_closure(&self.inner.weyl_generators(), 10_000).map_err(err)? {
            GroupClosure::Full(els) => Ok(els.len()),
            GroupClosure::Overflow { .. } => {
                Err(PyRuntimeError::new_err("finite Weyl group overflowed"))
            }
        }
    }

    /// Chambers of the root hyperplane arrangement in the default box.
    fn chamber_count(&self) -> PyResult<usize> {
        let arr = root_arrangement(&self.inner, None).map_err(err)?;
        Ok(enumerate_chambers(&arr).map_err(err)?.chambers.len())
    }

    /// Entries of the Coxeter matrix as strings ("3", "inf").
    fn coxeter_matrix(&self) -> PyResult<Vec<Vec<String>>> {
        let arr = root_arrangement(&self.inner, None).map_err(err)?;
        let d = enumerate_chambers(&arr).map_err(err)?;
        let m = weylkit::arrangement::coxeter_from_walls(&d, &d.chambers[0]).map_err(err)?;
        Ok(m.entries
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect())
    }

    /// Codimension spectrum over the chamber faces.
    fn strata_codim_spectrum(&self) -> PyResult<Vec<usize>> {
        strata::strata_codim_spectrum(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "RootSystem({}, rank={}, roots={})",
            self.inner.label(),
            self.inner.rank(),
            self.inner.roots().len()
        )
    }
}

/// The product of the positive-root linear forms on t*.
#[pyclass(name = "VolumePolynomial")]
struct PyVolumePolynomial {
    inner: volume::VolumePolynomial,
}

#[pymethods]
impl PyVolumePolynomial {
    #[new]
    fn new(label: &str) -> PyResult<Self> {
        let label: roots::Label = label.parse().map_err(err)?;
        let rs = roots::RootSystem::build(label);
        Ok(PyVolumePolynomial {
            inner: volume::volume_polynomial(&rs),
        })
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.poly().total_degree()
    }

    /// Evaluate at rational coordinates given as strings like "3/2".
    fn eval(&self, point: Vec<String>) -> PyResult<String> {
        let coords: Result<Vec<_>, _> = point.iter().map(|s| parse_rat(s)).collect();
        let xi = QVec::new(coords.map_err(err)?);
        Ok(rat_str(&self.inner.eval(&xi).map_err(err)?))
    }

    /// One term per line: `coeff e1 ... en`.
    fn to_text(&self) -> String {
        self.inner.poly().to_text()
    }

    fn __repr__(&self) -> String {
        format!("VolumePolynomial({})", self.inner.poly())
    }
}

/// Primitive linear factors of a polynomial in text format.
#[pyfunction]
fn factor_polynomial(text: &str, height: i64) -> PyResult<(Vec<(Vec<i64>, String)>, String)> {
    let p = MultiPoly::parse_text(text, None).map_err(err)?;
    let f = volume::primitive_linear_factors(&p, height).map_err(err)?;
    let factors = f
        .factors
        .iter()
        .map(|fac| (fac.normal.clone(), rat_str(&fac.offset)))
        .collect();
    Ok((factors, f.cofactor.to_text()))
}

/// Number of strata of the alcove model of a compact group
/// (Z-orbits of alcove faces).
#[pyfunction]
fn alcove_strata(group: &str) -> PyResult<usize> {
    let gc = roots::group_by_name(group).map_err(err)?;
    strata::alcove_strata_count(&gc).map_err(err)
}

/// Chamber count of an arrangement given in the text file format.
#[pyfunction]
fn chambers_of_file(text: &str) -> PyResult<usize> {
    let arr = Arrangement::parse(text).map_err(err)?;
    Ok(enumerate_chambers(&arr).map_err(err)?.chambers.len())
}

/// Orbit symplectic volume of the radius-z sphere by Riemann summation.
#[pyfunction]
fn kks_orbit_volume(z: f64, mesh_theta: usize, mesh_phi: usize) -> PyResult<f64> {
    mc::kks_orbit_volume(z, mesh_theta, mesh_phi).map_err(err)
}

/// Both sides of the integration formula; returns
/// (lhs, lhs_se, rhs, rhs_se, calibration).
#[pyfunction]
#[pyo3(signature = (group, integrand, n, seed=0, workers=1))]
fn weyl_integrate(
    group: &str,
    integrand: &str,
    n: u64,
    seed: u64,
    workers: u64,
) -> PyResult<(f64, f64, f64, f64, f64)> {
    let tag: GroupTag = group.parse().map_err(err)?;
    let f: mc::Integrand = integrand.parse().map_err(err)?;
    let lhs = mc::weyl_integrate_lhs(&f, tag, n, seed, workers).map_err(err)?;
    let rhs = mc::weyl_integrate_rhs(&f, tag, n, seed, workers).map_err(err)?;
    Ok((
        lhs.value,
        lhs.std_error,
        rhs.value,
        rhs.std_error,
        rhs.calibration.unwrap_or(f64::NAN),
    ))
}

/// Radial pushforward histogram for su(2); returns
/// (max_rel_dev, fit_constant, counts).
#[pyfunction]
#[pyo3(signature = (n, bins, radius, seed=0, workers=1))]
fn dh_histogram_su2(
    n: u64,
    bins: usize,
    radius: f64,
    seed: u64,
    workers: u64,
) -> PyResult<(f64, f64, Vec<u64>)> {
    let report = mc::dh_pushforward_su2(n, bins, radius, seed, workers).map_err(err)?;
    let counts = report.bins.iter().map(|b| b.count).collect();
    Ok((report.max_rel_dev, report.fit_constant, counts))
}

/// Registry model names.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::registry_names()
}

/// Verify a registry model; returns (pass, report_json).
#[pyfunction]
#[pyo3(signature = (name, word_bound=10, seed=0))]
fn catalog_verify(name: &str, word_bound: usize, seed: u64) -> PyResult<(bool, String)> {
    let m = catalog::model(name).map_err(err)?;
    let opts = catalog::VerifyOptions {
        word_bound,
        seed,
        ..Default::default()
    };
    let report = catalog::verify(&m, &opts).map_err(err)?;
    let json = serde_json::to_string(&report)
        .map_err(|e| PyRuntimeError::new_err(format!("serialization: {e}")))?;
    Ok((report.pass, json))
}

#[pymodule]
fn weylkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyVolumePolynomial>()?;
    m.add_function(wrap_pyfunction!(factor_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(alcove_strata, m)?)?;
    m.add_function(wrap_pyfunction!(chambers_of_file, m)?)?;
    m.add_function(wrap_pyfunction!(kks_orbit_volume, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_integrate, m)?)?;
    m.add_function(wrap_pyfunction!(dh_histogram_su2, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_verify, m)?)?;
    Ok(())
}
