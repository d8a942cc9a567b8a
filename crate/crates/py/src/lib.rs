//! Python bindings for the superlie workbench.
//!
//! The symbolic layer is exposed as classes (`Shape`, `Poly`, `Field`,
//! `Form`) whose elements print exactly the way the command-line tool
//! prints them, and whose constructors accept the same expression syntax.
//! Exact rational scalars cross the boundary as strings ("-2/3"), so no
//! precision is lost in either direction.  The report-level operations
//! (dimension builds, character identities, quantum reduction, the module
//! complexes and the particle table) are plain functions returning native
//! Python values.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use superlie::cartanm;
use superlie::characters;
use superlie::cli;
use superlie::e36;
use superlie::exceptional;
use superlie::forms;
use superlie::qseries;
use superlie::rat::Rat;
use superlie::suites;
use superlie::superpoly;
use superlie::wred;

fn perr(e: superlie::error::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat_of(text: &str) -> PyResult<Rat> {
    text.trim()
        .parse::<Rat>()
        .map_err(|e| PyValueError::new_err(format!("invalid rational '{text}': {e}")))
}

/// Generator counts and the even-degree truncation cap of a coefficient
/// algebra: `m` commuting and `n` anticommuting generators, even degrees
/// kept through `cap`.
#[pyclass(name = "Shape", skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyShape {
    inner: superpoly::Shape,
}

#[pymethods]
impl PyShape {
    #[new]
    #[pyo3(signature = (m, n, cap = 8))]
    fn new(m: usize, n: usize, cap: u32) -> PyShape {
        PyShape {
            inner: superpoly::Shape::new(m, n, cap),
        }
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn cap(&self) -> u32 {
        self.inner.cap
    }

    fn __repr__(&self) -> String {
        format!(
            "Shape({}, {}, cap={})",
            self.inner.m, self.inner.n, self.inner.cap
        )
    }

    fn __eq__(&self, other: &PyShape) -> bool {
        self.inner == other.inner
    }
}

/// Truncated superpolynomial with exact rational coefficients.
#[pyclass(name = "Poly", skip_from_py_object)]
#[derive(Clone)]
struct PyPoly {
    inner: superpoly::SuperPoly,
}

#[pymethods]
impl PyPoly {
    /// Parse an expression such as `x1^2*xi2 - 3/2*x3`.
    #[staticmethod]
    fn parse(text: &str, shape: &PyShape) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: superpoly::parse_poly(text, shape.inner).map_err(perr)?,
        })
    }

    /// The i-th commuting generator (1-based).
    #[staticmethod]
    fn x(shape: &PyShape, i: usize) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: superpoly::SuperPoly::x(shape.inner, i).map_err(perr)?,
        })
    }

    /// The j-th anticommuting generator (1-based).
    #[staticmethod]
    fn xi(shape: &PyShape, j: usize) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: superpoly::SuperPoly::xi(shape.inner, j).map_err(perr)?,
        })
    }

    #[staticmethod]
    fn one(shape: &PyShape) -> PyPoly {
        PyPoly {
            inner: superpoly::SuperPoly::one(shape.inner),
        }
    }

    #[staticmethod]
    fn zero(shape: &PyShape) -> PyPoly {
        PyPoly {
            inner: superpoly::SuperPoly::zero(shape.inner),
        }
    }

    /// Constant polynomial with the given rational value.
    #[staticmethod]
    fn constant(shape: &PyShape, c: &str) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: superpoly::SuperPoly::constant(shape.inner, rat_of(c)?),
        })
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.add(&other.inner).map_err(perr)?,
        })
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.sub(&other.inner).map_err(perr)?,
        })
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.mul(&other.inner).map_err(perr)?,
        })
    }

    fn __neg__(&self) -> PyPoly {
        PyPoly {
            inner: self.inner.neg(),
        }
    }

    /// Multiply by an exact rational scalar given as a string.
    fn scale(&self, c: &str) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.scale(&rat_of(c)?),
        })
    }

    fn pow(&self, k: u32) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.pow(k).map_err(perr)?,
        })
    }

    /// Partial derivative in the i-th commuting generator (1-based).
    fn deriv_even(&self, i: usize) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.deriv_even(i).map_err(perr)?,
        })
    }

    /// Left partial derivative in the j-th anticommuting generator (1-based).
    fn deriv_odd(&self, j: usize) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.deriv_odd(j).map_err(perr)?,
        })
    }

    /// 0, 1, or None when the element mixes parities.
    fn parity(&self) -> Option<u8> {
        self.inner.parity()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.inner
            .sub(&other.inner)
            .map(|d| d.is_zero())
            .unwrap_or(false)
    }
}

/// Polynomial vector field `Σ P_i ∂/∂x_i + Σ Q_j ∂/∂ξ_j`.
#[pyclass(name = "Field", skip_from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: superlie::wfields::VectorField,
}

#[pymethods]
impl PyField {
    /// Parse an expression such as `x1*d2 - xi1*D1`.
    #[staticmethod]
    fn parse(text: &str, shape: &PyShape) -> PyResult<PyField> {
        Ok(PyField {
            inner: superlie::wfields::parse_field(text, shape.inner).map_err(perr)?,
        })
    }

    /// `coeff · ∂/∂x_i` (1-based).
    #[staticmethod]
    fn d_even(shape: &PyShape, i: usize, coeff: &PyPoly) -> PyResult<PyField> {
        Ok(PyField {
            inner: superlie::wfields::VectorField::d_even(shape.inner, i, coeff.inner.clone())
                .map_err(perr)?,
        })
    }

    /// `coeff · ∂/∂ξ_j` (1-based).
    #[staticmethod]
    fn d_odd(shape: &PyShape, j: usize, coeff: &PyPoly) -> PyResult<PyField> {
        Ok(PyField {
            inner: superlie::wfields::VectorField::d_odd(shape.inner, j, coeff.inner.clone())
                .map_err(perr)?,
        })
    }

    /// The even Euler field `Σ x_i ∂/∂x_i`.
    #[staticmethod]
    fn euler(shape: &PyShape) -> PyField {
        PyField {
            inner: superlie::wfields::VectorField::euler(shape.inner),
        }
    }

    /// Super Lie bracket `[self, other]`.
    fn bracket(&self, other: &PyField) -> PyResult<PyField> {
        Ok(PyField {
            inner: self.inner.bracket(&other.inner).map_err(perr)?,
        })
    }

    /// Superdivergence, a polynomial.
    fn div(&self) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.div().map_err(perr)?,
        })
    }

    /// Apply the field to a polynomial as a derivation.
    fn apply(&self, p: &PyPoly) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.apply(&p.inner).map_err(perr)?,
        })
    }

    fn __add__(&self, other: &PyField) -> PyResult<PyField> {
        Ok(PyField {
            inner: self.inner.add(&other.inner).map_err(perr)?,
        })
    }

    fn __sub__(&self, other: &PyField) -> PyResult<PyField> {
        Ok(PyField {
            inner: self.inner.sub(&other.inner).map_err(perr)?,
        })
    }

    fn __neg__(&self) -> PyField {
        PyField {
            inner: self.inner.neg(),
        }
    }

    fn scale(&self, c: &str) -> PyResult<PyField> {
        Ok(PyField {
            inner: self.inner.scale(&rat_of(c)?),
        })
    }

    /// Multiply every coefficient by a polynomial on the left.
    fn mul_poly(&self, p: &PyPoly) -> PyResult<PyField> {
        Ok(PyField {
            inner: self.inner.mul_poly(&p.inner).map_err(perr)?,
        })
    }

    fn parity(&self) -> Option<u8> {
        self.inner.parity()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner)
    }

    fn __eq__(&self, other: &PyField) -> bool {
        self.inner == other.inner
    }
}

/// Differential form with superpolynomial coefficients.
#[pyclass(name = "Form", skip_from_py_object)]
#[derive(Clone)]
struct PyForm {
    inner: forms::Form,
}

#[pymethods]
impl PyForm {
    /// Parse an expression such as `x1*dx2^dxi1 - dxi1^dxi1`.
    #[staticmethod]
    fn parse(text: &str, shape: &PyShape) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: forms::parse_form(text, shape.inner).map_err(perr)?,
        })
    }

    /// A polynomial viewed as a 0-form.
    #[staticmethod]
    fn from_poly(p: &PyPoly) -> PyForm {
        PyForm {
            inner: forms::Form::from_poly(&p.inner),
        }
    }

    /// The basic even 1-form `dx_i` (1-based).
    #[staticmethod]
    fn dx(shape: &PyShape, i: usize) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: forms::Form::dx(shape.inner, i).map_err(perr)?,
        })
    }

    /// The basic odd 1-form `dξ_j` (1-based).
    #[staticmethod]
    fn dxi(shape: &PyShape, j: usize) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: forms::Form::dxi(shape.inner, j).map_err(perr)?,
        })
    }

    fn wedge(&self, other: &PyForm) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.wedge(&other.inner).map_err(perr)?,
        })
    }

    /// Exterior differential.
    fn d(&self) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.d().map_err(perr)?,
        })
    }

    /// Interior product with a vector field.
    fn iota(&self, x: &PyField) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.iota(&x.inner).map_err(perr)?,
        })
    }

    /// Lie derivative along a vector field (Cartan formula).
    fn lie(&self, x: &PyField) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.lie(&x.inner).map_err(perr)?,
        })
    }

    /// Lie derivative twisted by `λ · div`.
    fn twisted_lie(&self, x: &PyField, lam: &str) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.twisted_lie(&x.inner, &rat_of(lam)?).map_err(perr)?,
        })
    }

    fn __add__(&self, other: &PyForm) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.add(&other.inner).map_err(perr)?,
        })
    }

    fn __sub__(&self, other: &PyForm) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.sub(&other.inner).map_err(perr)?,
        })
    }

    fn __neg__(&self) -> PyForm {
        PyForm {
            inner: self.inner.neg(),
        }
    }

    fn scale(&self, c: &str) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.scale(&rat_of(c)?),
        })
    }

    /// Multiply by a polynomial coefficient.
    fn scale_poly(&self, p: &PyPoly) -> PyResult<PyForm> {
        Ok(PyForm {
            inner: self.inner.scale_poly(&p.inner).map_err(perr)?,
        })
    }

    /// Keep only the exterior-degree-`k` part.
    fn form_degree_part(&self, k: u32) -> PyForm {
        PyForm {
            inner: self.inner.form_degree_part(k),
        }
    }

    /// Convert a 0-form back to a polynomial.
    fn to_poly(&self) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.to_poly().map_err(perr)?,
        })
    }

    fn parity(&self) -> Option<u8> {
        self.inner.parity()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Form({})", self.inner)
    }

    fn __eq__(&self, other: &PyForm) -> bool {
        self.inner
            .sub(&other.inner)
            .map(|d| d.is_zero())
            .unwrap_or(false)
    }
}

/// Dimension of a graded algebra from the registry (`"D_a"`, `"F"`, `"G"`,
/// `"cartan_sl(k)"`), optionally with the parameter evaluated at the
/// rational `a`.  Returns None when the build does not stabilize.
#[pyfunction]
#[pyo3(signature = (name, a = None))]
fn cartan_dim(name: &str, a: Option<&str>) -> PyResult<Option<usize>> {
    let spec = cartanm::registry(name).map_err(perr)?;
    let build = match a {
        Some(text) => {
            let num = cartanm::evaluate_parameter(&spec, &rat_of(text)?).map_err(perr)?;
            cartanm::build_graded(&num, 24).map_err(perr)?
        }
        None => cartanm::build_graded(&spec, 24).map_err(perr)?,
    };
    Ok(build.total())
}

/// Dual Coxeter number of a named basic superalgebra, as an exact rational
/// string.
#[pyfunction]
fn dual_coxeter(name: &str) -> PyResult<String> {
    Ok(cartanm::dual_coxeter(name).map_err(perr)?.to_string())
}

/// Graded dimensions of E(5|10) under the weight assignment `a` (five
/// integers): a dict with `depth`, `truncated`, and `dims` mapping each
/// degree to an (even, odd) pair.
#[pyfunction]
fn e510_profile<'py>(
    py: Python<'py>,
    a: Vec<i64>,
    max_degree: i64,
    cap: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let arr: [i64; 5] = a
        .try_into()
        .map_err(|_| PyValueError::new_err("expected exactly five weights"))?;
    let profile = exceptional::e510_profile(&arr, max_degree, cap).map_err(perr)?;
    let out = PyDict::new(py);
    out.set_item("depth", profile.depth)?;
    out.set_item("truncated", profile.truncated)?;
    out.set_item("dims", profile.dims)?;
    Ok(out)
}

/// (even, odd) dimensions of level `s` of the degree-0 subalgebra of
/// E(5|10), computed inside E(5|10) and in the direct rank-(3,2) model.
#[pyfunction]
fn e36_level_dims(s: i64, cap: u32) -> PyResult<((usize, usize), (usize, usize))> {
    let embedded = exceptional::e36_in_e510_dims(s, cap).map_err(perr)?;
    Ok((embedded, exceptional::e36_direct_dims(s, cap)))
}

/// Two-sided series check of the two-variable product identity through
/// order `n` with exponent window `window`.
#[pyfunction]
fn kronecker_check(n: i64, window: i32) -> PyResult<bool> {
    Ok(qseries::kronecker_check(n, window).map_err(perr)?.is_ok())
}

/// Two-sided series check of the triple product identity.
#[pyfunction]
fn jacobi_triple_check(n: i64, window: i32) -> PyResult<bool> {
    Ok(qseries::jacobi_triple_check(n, window)
        .map_err(perr)?
        .is_ok())
}

/// The rank-one higher-level theta-like sum as printed series lines.
#[pyfunction]
fn appell(n: i64, window: i32) -> PyResult<String> {
    Ok(qseries::appell(n, window).to_string())
}

/// Principal admissible weights for the given denominator `u` and integer
/// part `v`: a list of (finite labels, level) with rationals as strings.
#[pyfunction]
fn principal_admissible(u: i64, v: i64) -> PyResult<Vec<(Vec<String>, String)>> {
    let weights = characters::principal_admissible_sl2(u, v).map_err(perr)?;
    Ok(weights
        .into_iter()
        .map(|w| {
            let finite = w.finite.iter().map(|r| r.to_string()).collect();
            let level = w.level().to_string();
            (finite, level)
        })
        .collect())
}

/// Central charge and conformal weight of the (p, p') minimal-series
/// module labelled (j, n), as exact rational strings.
#[pyfunction]
#[pyo3(signature = (p, pp, j = 0, n = 0))]
fn minimal_series(p: i64, pp: i64, j: i64, n: i64) -> PyResult<(String, String)> {
    let (c, h) = characters::minimal_series(p, pp, j, n).map_err(perr)?;
    Ok((c.to_string(), h.to_string()))
}

/// Central charge of the reduced vertex algebra for the named simple
/// algebra and nilpotent (`"lowest-root"` or `"principal"`): numeric at a
/// rational level `k`, or the symbolic rational function of `k` when `k`
/// is omitted.
#[pyfunction]
#[pyo3(signature = (algebra, f = "lowest-root", k = None))]
fn central_charge(algebra: &str, f: &str, k: Option<&str>) -> PyResult<String> {
    let alg = wred::algebra(algebra).map_err(perr)?;
    let nil = wred::nilpotent_element(&alg, f).map_err(perr)?;
    let datum = wred::complete_triple(&alg, &nil).map_err(perr)?;
    match k {
        Some(text) => Ok(wred::central_charge(&datum, &rat_of(text)?)
            .map_err(perr)?
            .to_string()),
        None => Ok(wred::central_charge_symbolic(&datum).fmt_in("k")),
    }
}

/// Conformal weights of the generating fields of the reduced algebra,
/// as (weight, is_even) pairs sorted by descending weight.
#[pyfunction]
#[pyo3(signature = (algebra, f = "lowest-root"))]
fn field_content(algebra: &str, f: &str) -> PyResult<Vec<(String, bool)>> {
    let alg = wred::algebra(algebra).map_err(perr)?;
    let nil = wred::nilpotent_element(&alg, f).map_err(perr)?;
    let datum = wred::complete_triple(&alg, &nil).map_err(perr)?;
    Ok(wred::field_content(&datum)
        .map_err(perr)?
        .into_iter()
        .map(|(w, even)| (w.to_string(), even))
        .collect())
}

/// The embedded particle table, one dict per row: multiplet label,
/// recomputed charges, particle names, the three verification flags, and
/// the degenerate-series label of the row (or None).
#[pyfunction]
fn sm_table(py: Python<'_>) -> PyResult<Vec<Py<PyDict>>> {
    let mut rows = Vec::new();
    for verdict in e36::sm_table_report() {
        let d = PyDict::new(py);
        d.set_item("multiplet", verdict.row.multiplet.to_string())?;
        d.set_item(
            "charges",
            verdict
                .row
                .charges
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>(),
        )?;
        d.set_item("particles", verdict.row.particles)?;
        d.set_item("charges_match", verdict.charges_match)?;
        d.set_item("color_ok", verdict.color_ok)?;
        d.set_item("charge_ok", verdict.charge_ok)?;
        d.set_item("series", verdict.label_series)?;
        rows.push(d.unbind());
    }
    Ok(rows)
}

/// Degenerate-series membership of the multiplet `(p, q, r, y)` with `y`
/// a rational string: 1–4, or None when the label lies in no family.
#[pyfunction]
fn degenerate_series(p: u32, q: u32, r: u32, y: &str) -> PyResult<Option<u8>> {
    Ok(e36::degenerate_series(&e36::Multiplet::new(
        p,
        q,
        r,
        rat_of(y)?,
    )))
}

/// Electromagnetic charges of an isospin-`r/2` multiplet with hypercharge
/// `y`, ascending, as rational strings.
#[pyfunction]
fn multiplet_charges(r: u32, y: &str) -> PyResult<Vec<String>> {
    Ok(e36::charges(r, &rat_of(y)?)
        .into_iter()
        .map(|q| q.to_string())
        .collect())
}

/// Check that the degree-(−1, −1) differential squares to zero on the
/// induced module of the given series at bidegree (m, n), through the
/// given number of levels.
#[pyfunction]
#[pyo3(signature = (series, m, n, levels = 3))]
fn nabla_square_is_zero(series: &str, m: i64, n: i64, levels: usize) -> PyResult<bool> {
    let s = e36::Series::parse(series).map_err(perr)?;
    let piece = e36::induced_piece(s, m, n, levels).map_err(perr)?;
    let d1 = e36::nabla(1, &piece).map_err(perr)?;
    let d2 = e36::nabla(1, &d1.target).map_err(perr)?;
    Ok(d1.then(&d2).map_err(perr)?.is_zero())
}

/// Exactness report for the polynomial-coefficient dual complex in `m`
/// even variables, checked through the given strand: a dict with `terms`,
/// `squares_to_zero`, `interior_exact`, and `final_cokernel`.
#[pyfunction]
fn dual_de_rham(py: Python<'_>, m: usize, strand_max: usize) -> PyResult<Py<PyDict>> {
    let report = e36::dual_de_rham(m, strand_max).map_err(perr)?;
    let d = PyDict::new(py);
    d.set_item("terms", report.terms)?;
    d.set_item("squares_to_zero", report.squares_to_zero)?;
    d.set_item("interior_exact", report.interior_exact)?;
    d.set_item("final_cokernel", report.final_cokernel)?;
    Ok(d.unbind())
}

/// Names of the built-in property suites.
#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    suites::suite_names().to_vec()
}

/// Run a named property suite with the given seed; returns (all_passed,
/// rendered report).  `window` only affects the characters suite.
#[pyfunction]
#[pyo3(signature = (name, seed = 0, window = None))]
fn run_suite(name: &str, seed: u64, window: Option<i64>) -> PyResult<(bool, String)> {
    let report = suites::run_suite(name, seed, window).map_err(perr)?;
    Ok((report.all_passed(), report.to_string()))
}

/// Invoke the command-line interface in-process: returns (exit code,
/// stdout, stderr) for the given argument list (without the program name).
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let mut argv = vec!["superlie".to_string()];
    argv.extend(args);
    cli::run(argv)
}

#[pymodule]
fn superlie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyShape>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyField>()?;
    m.add_class::<PyForm>()?;
    m.add_function(wrap_pyfunction!(cartan_dim, m)?)?;
    m.add_function(wrap_pyfunction!(dual_coxeter, m)?)?;
    m.add_function(wrap_pyfunction!(e510_profile, m)?)?;
    m.add_function(wrap_pyfunction!(e36_level_dims, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker_check, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_triple_check, m)?)?;
    m.add_function(wrap_pyfunction!(appell, m)?)?;
    m.add_function(wrap_pyfunction!(principal_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_series, m)?)?;
    m.add_function(wrap_pyfunction!(central_charge, m)?)?;
    m.add_function(wrap_pyfunction!(field_content, m)?)?;
    m.add_function(wrap_pyfunction!(sm_table, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate_series, m)?)?;
    m.add_function(wrap_pyfunction!(multiplet_charges, m)?)?;
    m.add_function(wrap_pyfunction!(nabla_square_is_zero, m)?)?;
    m.add_function(wrap_pyfunction!(dual_de_rham, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
