//! Python bindings: catalog states, potential inversion, residuals and the
//! verification suite.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rdi::error::RdiError;
use rdi::numerics::FdPolicy;
use rdi::solution_catalog::{self as catalog, Family, Waveform, WaveformKind};
use rdi::sta_core::{Cplx, SpacetimePoint};
use rdi::verifier::{self, CheckKind, NegativeControl, SuiteConfig};

create_exception!(rdi_py, RdiDomainError, PyException, "Raised when an input lies outside an operation's domain.");

fn err(e: RdiError) -> PyErr {
    RdiDomainError::new_err(e.to_string())
}

fn family(name: &str) -> PyResult<Family> {
    name.parse::<Family>().map_err(|_| PyValueError::new_err(format!("unknown family '{name}'")))
}

/// One catalog state with its eigenvalue and normalization.
#[pyclass(name = "Solution", frozen)]
struct PySolution {
    inner: catalog::Solution,
}

#[pymethods]
impl PySolution {
    #[new]
    #[pyo3(signature = (family, n=1, l=0, m_orbital=0, b=1.0, p_z=0.0, mass=1.0, energy=1.5, waveform="circular", amplitude=0.4, omega=0.8, tau=3.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        family: &str,
        n: u32,
        l: u32,
        m_orbital: u32,
        b: f64,
        p_z: f64,
        mass: f64,
        energy: f64,
        waveform: &str,
        amplitude: f64,
        omega: f64,
        tau: f64,
    ) -> PyResult<Self> {
        let fam = self::family(family)?;
        let base = match fam.stationary() {
            Family::FreeBessel => catalog::SolutionSpec::free_bessel(l, energy, b),
            Family::HomogeneousDegenerate => catalog::SolutionSpec::homogeneous_degenerate(n, l, b),
            Family::HomogeneousNondegenerate => catalog::SolutionSpec::homogeneous_nondegenerate(n, l, b),
            _ => catalog::SolutionSpec::inhomogeneous(n, m_orbital, b),
        };
        let mut spec = base.with_pz(p_z).with_mass(mass);
        if fam.is_dressed() {
            let kind: WaveformKind = waveform.parse().map_err(err)?;
            spec = spec.with_waveform(Waveform { tau, ..Waveform::new(kind, amplitude, omega) });
        }
        Ok(Self { inner: catalog::Solution::new(spec).map_err(err)? })
    }

    #[getter]
    fn family(&self) -> &'static str {
        self.inner.spec.family.name()
    }

    #[getter]
    fn id(&self) -> String {
        catalog::spec_id(&self.inner.spec)
    }

    /// Energy eigenvalue ε.
    #[getter]
    fn eps(&self) -> f64 {
        self.inner.eps
    }

    #[getter]
    fn norm(&self) -> f64 {
        self.inner.norm
    }

    /// Column spinor at (t, x, y, z).
    fn spinor(&self, x: SpacetimePoint) -> Vec<Cplx> {
        self.inner.spinor(&x).psi.to_vec()
    }

    /// Closed-form eA^μ.
    fn potential(&self, x: SpacetimePoint) -> PyResult<[f64; 4]> {
        Ok(self.inner.potential(&x).map_err(err)?.0)
    }

    /// (eE, eB) in closed form.
    fn fields(&self, x: SpacetimePoint) -> PyResult<([f64; 3], [f64; 3])> {
        let f = self.inner.fields(&x).map_err(err)?;
        Ok((f.e, f.b))
    }

    /// Unit velocity and spin vectors.
    fn velocity_spin(&self, x: SpacetimePoint) -> PyResult<([f64; 4], [f64; 4])> {
        let (v, s) = self.inner.velocity_spin(&x).map_err(err)?;
        Ok((v.0, s.0))
    }

    /// Transverse averages at phase ξ as a dict.
    #[pyo3(signature = (xi=0.0))]
    fn averages<'py>(&self, py: Python<'py>, xi: f64) -> PyResult<Bound<'py, PyDict>> {
        let a = catalog::averages(&self.inner.spec, xi).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("rho", a.rho)?;
        d.set_item("j_phi", a.j_phi)?;
        d.set_item("j_z", a.j_z)?;
        d.set_item("centroid", a.centroid)?;
        Ok(d)
    }

    /// Relative finite-difference Dirac residual against the state's own potential.
    #[pyo3(signature = (x, h=1e-3))]
    fn dirac_residual(&self, x: SpacetimePoint, h: f64) -> PyResult<f64> {
        Ok(verifier::dirac_residual(&self.inner, &x, h).map_err(err)?.max())
    }

    /// Potential recovered from the spinor field alone:
    /// (eA^μ, largest constrained-grade residual, Richardson estimate).
    #[pyo3(signature = (x, h=1e-3, tolerance=1e-6))]
    fn invert(&self, x: SpacetimePoint, h: f64, tolerance: f64) -> PyResult<([f64; 4], f64, f64)> {
        let policy = FdPolicy::new(h, tolerance).map_err(err)?;
        let field = |p: &SpacetimePoint| self.inner.matrix_spinor(p);
        let s = rdi::rdi_inverter::invert(&field, self.inner.spec.mass, &x, &policy).map_err(err)?;
        Ok((s.e_a.0, s.max_constrained(), s.richardson))
    }

    fn __repr__(&self) -> String {
        format!("Solution({}, eps={})", self.id(), self.inner.eps)
    }
}

/// Family names, descriptions and parameters.
#[pyfunction]
fn catalog_listing(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    Family::ALL
        .iter()
        .map(|f| {
            let d = PyDict::new(py);
            d.set_item("name", f.name())?;
            d.set_item("description", f.description())?;
            d.set_item("parameters", f.parameters().to_vec())?;
            d.set_item("dressed", f.is_dressed())?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn bessel_j(n: u32, x: f64) -> PyResult<f64> {
    rdi::special_fn::bessel_j(n, x).map_err(err)
}

#[pyfunction]
fn laguerre(n: i32, alpha: f64, x: f64) -> f64 {
    rdi::special_fn::laguerre(n, alpha, x)
}

/// Runs the suite and returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (families="all", checks=None, points=100, seed=20240917, negative_control=None))]
fn verify(py: Python<'_>, families: &str, checks: Option<Vec<String>>, points: usize, seed: u64, negative_control: Option<&str>) -> PyResult<String> {
    let fams: Vec<Family> = if families == "all" {
        Family::ALL.to_vec()
    } else {
        families.split(',').map(|f| family(f.trim())).collect::<PyResult<_>>()?
    };
    let checks = match checks {
        None => CheckKind::DEFAULT.to_vec(),
        Some(c) => c.iter().map(|n| n.parse::<CheckKind>().map_err(err)).collect::<PyResult<_>>()?,
    };
    let negative_control = negative_control.map(|n| n.parse::<NegativeControl>().map_err(err)).transpose()?;
    let cfg = SuiteConfig { seed, points, checks, negative_control, ..SuiteConfig::default() };
    let report = py.detach(|| verifier::run_suite(&fams, &cfg)).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn rdi_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(catalog_listing, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("RdiDomainError", m.py().get_type::<RdiDomainError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
