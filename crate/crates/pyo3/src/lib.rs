//! Python bindings for the trinogen engine: trinomial fields, their
//! factorization shapes at a prime, common-index-divisor witnesses, clause
//! tables, and generator certificates, with exact integers end to end.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use trinogen::monogenity as mono;
use trinogen::ore;
use trinogen::report;
use trinogen::zpoly;

fn to_py_err(err: trinogen::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn make_trinomial(n: u32, a: BigInt, b: BigInt) -> PyResult<zpoly::Trinomial> {
    zpoly::Trinomial::new(n, a, b).map_err(to_py_err)
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// A monic trinomial x^n + a*x + b with integer coefficients.
#[pyclass(frozen)]
struct Trinomial {
    inner: zpoly::Trinomial,
}

#[pymethods]
impl Trinomial {
    #[new]
    fn new(n: u32, a: BigInt, b: BigInt) -> PyResult<Self> {
        Ok(Trinomial { inner: make_trinomial(n, a, b)? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn a(&self) -> BigInt {
        self.inner.a().clone()
    }

    #[getter]
    fn b(&self) -> BigInt {
        self.inner.b().clone()
    }

    /// Closed-form discriminant of the trinomial.
    fn discriminant(&self) -> BigInt {
        zpoly::trinomial_discriminant(&self.inner)
    }

    /// Irreducibility certificate as `(description, proved)`.
    fn irreducibility(&self) -> PyResult<(String, bool)> {
        let cert = zpoly::irreducibility_certificate(&self.inner).map_err(to_py_err)?;
        Ok((mono::describe_certificate(&cert), cert.proves_irreducible()))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Trinomial(n={}, a={}, b={})",
            self.inner.n(),
            self.inner.a(),
            self.inner.b()
        )
    }
}

/// Full verdict for x^n + a*x + b as a dict (schema "trinogen.verdict/1").
#[pyfunction]
fn analyze(py: Python<'_>, n: u32, a: BigInt, b: BigInt) -> PyResult<Py<PyAny>> {
    let t = make_trinomial(n, a, b)?;
    let verdict = mono::analyze(&t).map_err(to_py_err)?;
    Ok(json_to_py(py, &report::render_json(&verdict))?.unbind())
}

/// The plain-text report for x^n + a*x + b.
#[pyfunction(signature = (n, a, b, verbose = false))]
fn analyze_text(n: u32, a: BigInt, b: BigInt, verbose: bool) -> PyResult<String> {
    let t = make_trinomial(n, a, b)?;
    let verdict = mono::analyze(&t).map_err(to_py_err)?;
    Ok(report::render_text(&verdict, verbose))
}

/// Factorization shape of p in Z[theta] as `([(e, f), ...], complete)`.
#[pyfunction]
fn factor_shape(n: u32, a: BigInt, b: BigInt, p: u64) -> PyResult<(Vec<(u64, u64)>, bool)> {
    let t = make_trinomial(n, a, b)?;
    let shape = ore::factor_shape(&t.to_poly(), p).map_err(to_py_err)?;
    Ok((shape.primes.clone(), shape.complete))
}

/// Newton polygon data of every local factor at p: one dict per factor with
/// the lift, polygon vertices, and the sides' slopes and residuals.
#[pyfunction]
fn polygon(py: Python<'_>, n: u32, a: BigInt, b: BigInt, p: u64) -> PyResult<Py<PyAny>> {
    let t = make_trinomial(n, a, b)?;
    let analysis = ore::ore_analysis(&t.to_poly(), p).map_err(to_py_err)?;
    let out = PyList::empty(py);
    for detail in &analysis.details {
        let entry = PyDict::new(py);
        entry.set_item("factor", detail.factor.render("x"))?;
        entry.set_item("multiplicity", detail.multiplicity)?;
        entry.set_item("lift", detail.lift.to_string())?;
        let vertices: Vec<(u64, u64)> =
            detail.polygon.vertices().iter().map(|v| (v.i, v.u)).collect();
        entry.set_item("vertices", vertices)?;
        let sides = PyList::empty(py);
        for sa in &detail.sides {
            let side = PyDict::new(py);
            side.set_item("slope", sa.side.slope.to_string())?;
            side.set_item("length", sa.side.length())?;
            side.set_item("residual", sa.residual.poly.render("y"))?;
            let factors: Vec<(String, u32)> = sa
                .factors
                .iter()
                .map(|(g, m)| (g.render("y"), *m))
                .collect();
            side.set_item("residual_factors", factors)?;
            sides.append(side)?;
        }
        entry.set_item("sides", sides)?;
        entry.set_item("index", detail.index)?;
        entry.set_item("regular", detail.regular)?;
        out.append(entry)?;
    }
    Ok(out.into_any().unbind())
}

/// Smallest over-populated residue degree at p, as `(m, P_m, N_p(m))`;
/// `None` when the census shows no witness or cannot be completed.
#[pyfunction]
fn index_divisor_witness(
    n: u32,
    a: BigInt,
    b: BigInt,
    p: u64,
) -> PyResult<Option<(u64, u64, BigInt)>> {
    let t = make_trinomial(n, a, b)?;
    let report = mono::common_index_divisor_test(&t.to_poly(), p).map_err(to_py_err)?;
    Ok(match report.outcome {
        mono::DivisorOutcome::Witness(w) => {
            Some((w.residue_degree, w.primes_above, w.available))
        }
        _ => None,
    })
}

/// Primes q < n with q^2 dividing the discriminant: the only candidates for
/// a common index divisor.
#[pyfunction]
fn candidate_primes(n: u32, a: BigInt, b: BigInt) -> PyResult<Vec<u64>> {
    let t = make_trinomial(n, a, b)?;
    mono::candidate_primes(&t).map_err(to_py_err)
}

/// Every clause of every applicable family table that fires, as
/// `(table, clause, p, description)` tuples.
#[pyfunction]
fn fired_clauses(n: u32, a: BigInt, b: BigInt) -> PyResult<Vec<(String, u32, u64, String)>> {
    let t = make_trinomial(n, a, b)?;
    Ok(mono::fired_clauses(&t)
        .into_iter()
        .map(|c| (c.table.id().to_string(), c.clause, c.p, c.description))
        .collect())
}

/// Checks one family table against the trinomial and cross-checks any fired
/// clause with the factorization engine.
#[pyfunction]
fn certify_family(
    py: Python<'_>,
    n: u32,
    a: BigInt,
    b: BigInt,
    table: &str,
) -> PyResult<Py<PyAny>> {
    let parsed = mono::FamilyTable::parse(table)
        .ok_or_else(|| PyValueError::new_err(format!("unknown table {table:?}")))?;
    let t = make_trinomial(n, a, b)?;
    let cert = mono::certify_family(&t, parsed).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("table", cert.table.id())?;
    out.set_item("clause", cert.clause.as_ref().map(|c| c.clause))?;
    out.set_item("p", cert.clause.as_ref().map(|c| c.p))?;
    out.set_item("description", cert.clause.as_ref().map(|c| c.description.clone()))?;
    out.set_item("engine_confirms", cert.engine_confirms)?;
    out.set_item("notes", cert.notes.clone())?;
    Ok(out.into_any().unbind())
}

/// Certificate that theta^x / p^y generates the maximal order, for degrees
/// p^r with the required coefficient valuations; `None` when the pattern
/// does not apply or the certificate cannot be completed.
#[pyfunction]
fn certify_generator(py: Python<'_>, n: u32, a: BigInt, b: BigInt) -> PyResult<Py<PyAny>> {
    let t = make_trinomial(n, a, b)?;
    let params = match mono::MonoParams::from_trinomial(&t) {
        Ok(p) => p,
        Err(_) => return Ok(py.None()),
    };
    let cert = match mono::certify_mono(&params) {
        Ok(c) => c,
        Err(_) => return Ok(py.None()),
    };
    let out = PyDict::new(py);
    out.set_item("generator", cert.generator())?;
    out.set_item("x", cert.x)?;
    out.set_item("y", cert.y)?;
    out.set_item("minimal_polynomial", cert.minimal_polynomial.to_string())?;
    out.set_item("disc_valuation_from", cert.disc_valuation_f)?;
    out.set_item("disc_valuation_to", cert.disc_valuation_eta)?;
    Ok(out.into_any().unbind())
}

/// Number of monic irreducible degree-m polynomials over F_p.
#[pyfunction]
fn count_irreducibles(p: u64, m: u32) -> PyResult<BigInt> {
    trinogen::intarith::count_irreducibles(p, m).map_err(to_py_err)
}

/// Number of distinct monic irreducible degree-m factors of x^s + t over F_p.
#[pyfunction]
fn irreducible_factor_count(p: u64, s: u32, t: BigInt, m: u32) -> PyResult<u64> {
    mono::irreducible_factor_count(p, s, &t, m).map_err(to_py_err)
}

/// Identifiers of the built-in family tables.
#[pyfunction]
fn family_tables() -> Vec<String> {
    mono::FamilyTable::all()
        .iter()
        .map(|t| t.id().to_string())
        .collect()
}

#[pymodule]
fn trinogen_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Trinomial>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_text, m)?)?;
    m.add_function(wrap_pyfunction!(factor_shape, m)?)?;
    m.add_function(wrap_pyfunction!(polygon, m)?)?;
    m.add_function(wrap_pyfunction!(index_divisor_witness, m)?)?;
    m.add_function(wrap_pyfunction!(candidate_primes, m)?)?;
    m.add_function(wrap_pyfunction!(fired_clauses, m)?)?;
    m.add_function(wrap_pyfunction!(certify_family, m)?)?;
    m.add_function(wrap_pyfunction!(certify_generator, m)?)?;
    m.add_function(wrap_pyfunction!(count_irreducibles, m)?)?;
    m.add_function(wrap_pyfunction!(irreducible_factor_count, m)?)?;
    m.add_function(wrap_pyfunction!(family_tables, m)?)?;
    Ok(())
}
