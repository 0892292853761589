use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ldicode_core as core;
use ldicode_core::{LiftPolicy, Modulus};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn modulus(q: Option<u64>) -> PyResult<Modulus> {
    match q {
        Some(q) => Modulus::finite(q).map_err(err),
        None => Ok(Modulus::Unbounded),
    }
}

fn lift_policy(name: &str) -> PyResult<LiftPolicy> {
    match name {
        "nonneg" => Ok(LiftPolicy::NonNegative),
        "symmetric" => Ok(LiftPolicy::Symmetric),
        other => Err(PyValueError::new_err(format!(
            "unknown lift {other:?}; use 'nonneg' or 'symmetric'"
        ))),
    }
}

/// Stabilizer code: rows of 2n integers (x | z) over Z_q, or over Z when
/// `q` is None.
#[pyclass(name = "StabilizerCode", module = "ldicode", skip_from_py_object)]
#[derive(Clone)]
struct PyCode {
    inner: core::StabilizerCode,
}

#[pymethods]
impl PyCode {
    #[new]
    #[pyo3(signature = (n, generators, q=None, validate=true))]
    fn new(n: usize, generators: Vec<Vec<i64>>, q: Option<u64>, validate: bool) -> PyResult<Self> {
        let m = modulus(q)?;
        let inner = if validate {
            core::StabilizerCode::new(n, m, generators)
        } else {
            core::StabilizerCode::new_unchecked(n, m, generators)
        }
        .map_err(err)?;
        Ok(PyCode { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// None for codes over Z.
    #[getter]
    fn q(&self) -> Option<u64> {
        self.inner.modulus().value()
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<i64>> {
        self.inner.generators().to_vec()
    }

    #[getter]
    fn origin_prime(&self) -> Option<u64> {
        self.inner.origin_prime()
    }

    #[getter]
    fn claimed_distance(&self) -> Option<usize> {
        self.inner.claimed_distance()
    }

    fn is_valid(&self) -> PyResult<bool> {
        Ok(core::validate(&self.inner).map_err(err)?.is_valid())
    }

    /// Syndrome of `error` over `q` (None: over Z).
    #[pyo3(signature = (error, q=None))]
    fn syndrome(&self, error: Vec<i64>, q: Option<u64>) -> PyResult<Vec<i64>> {
        let m = modulus(q)?;
        let e = core::PauliVec::new(error, m).map_err(err)?;
        core::syndrome(&self.inner, &e, m).map_err(err)
    }

    fn to_text(&self) -> String {
        core::serialize_code(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "StabilizerCode(n={}, q={}, generators={})",
            self.inner.n(),
            self.inner.modulus(),
            self.inner.num_generators()
        )
    }
}

/// Code whose generators are exactly orthogonal over the integers.
#[pyclass(name = "LdiCode", module = "ldicode", skip_from_py_object)]
#[derive(Clone)]
struct PyLdi {
    inner: core::LdiCode,
}

#[pymethods]
impl PyLdi {
    #[getter]
    fn code(&self) -> PyCode {
        PyCode {
            inner: self
                .inner
                .code()
                .clone()
                .with_origin_prime(Some(self.inner.origin_prime())),
        }
    }

    #[getter]
    fn origin_prime(&self) -> u64 {
        self.inner.origin_prime()
    }

    /// Largest absolute entry.
    #[getter]
    fn b(&self) -> u64 {
        self.inner.b()
    }

    fn instantiate(&self, q: u64) -> PyResult<PyCode> {
        Ok(PyCode {
            inner: core::instantiate(&self.inner, q).map_err(err)?,
        })
    }

    fn scale(&self, m: u64, q: u64) -> PyResult<PyCode> {
        Ok(PyCode {
            inner: core::scale_by_m(&self.inner, m, q).map_err(err)?,
        })
    }

    /// "CondI", "CondII" or "Unknown".
    #[pyo3(signature = (q, p_star=None))]
    fn distance_condition(&self, q: u64, p_star: Option<u64>) -> PyResult<String> {
        Ok(format!(
            "{:?}",
            core::check_distance_condition(&self.inner, q, p_star).map_err(err)?
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "LdiCode(n={}, origin={}, B={})",
            self.inner.n(),
            self.inner.origin_prime(),
            self.inner.b()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (text, validate=true))]
fn parse_code(text: &str, validate: bool) -> PyResult<PyCode> {
    Ok(PyCode {
        inner: core::parse_code_file(text, validate).map_err(err)?,
    })
}

#[pyfunction]
fn known_code(name: &str) -> PyResult<PyCode> {
    let kind: core::KnownCode = name.parse().map_err(err)?;
    let known = core::known_code(kind).map_err(err)?;
    let inner = match &known {
        core::Known::Code(c) => c.clone(),
        core::Known::Ldi(l) => l.code().clone().with_origin_prime(Some(l.origin_prime())),
    };
    Ok(PyCode { inner })
}

#[pyfunction]
#[pyo3(signature = (code, via_canonical=false))]
fn to_ldi(code: &PyCode, via_canonical: bool) -> PyResult<PyLdi> {
    let inner = if via_canonical {
        core::to_ldi_via_canonical(&code.inner)
    } else {
        core::to_ldi(&code.inner)
    };
    Ok(PyLdi {
        inner: inner.map_err(err)?,
    })
}

/// Symplectic product of two vectors, over Z when `q` is None.
#[pyfunction]
#[pyo3(signature = (a, b, q=None))]
fn symplectic_product(a: Vec<i64>, b: Vec<i64>, q: Option<u64>) -> PyResult<i64> {
    let m = modulus(q)?;
    let a = core::PauliVec::new(a, m).map_err(err)?;
    let b = core::PauliVec::new(b, m).map_err(err)?;
    core::symplectic_product(&a, &b).map_err(err)
}

#[pyfunction]
fn subgroup_order(rows: Vec<Vec<i64>>, cols: usize, q: u64) -> PyResult<BigUint> {
    let m = core::IntMatrix::from_rows(&rows, cols).map_err(err)?;
    core::subgroup_order(&m, q).map_err(err)
}

/// (K, k) with k = log_q K.
#[pyfunction]
fn logical_dimension(code: &PyCode, q: u64) -> PyResult<(BigUint, f64)> {
    let d = core::logical_dimension(&code.inner, q).map_err(err)?;
    Ok((d.big_k, d.k))
}

/// Logical operators as (vector, order) pairs.
#[pyfunction]
fn logical_operators(code: &PyCode, q: u64) -> PyResult<Vec<(Vec<i64>, u64)>> {
    Ok(core::logical_operators(&code.inner, q)
        .map_err(err)?
        .into_iter()
        .map(|l| (l.operator.into_entries(), l.order))
        .collect())
}

/// Mixes (code, prime) pairs into one code over q.
#[pyfunction]
fn mix_codes(components: Vec<(PyRef<'_, PyCode>, u64)>, q: u64) -> PyResult<PyCode> {
    let comps = components
        .iter()
        .map(|(c, p)| core::PrimeComponent::new(*p, c.inner.clone()))
        .collect::<core::Result<Vec<_>>>()
        .map_err(err)?;
    Ok(PyCode {
        inner: core::mix_codes(&comps, q).map_err(err)?,
    })
}

#[pyfunction]
fn block_embed(code: &PyCode, total_n: usize, offset: usize) -> PyResult<PyCode> {
    Ok(PyCode {
        inner: core::block_embed(&code.inner, total_n, offset).map_err(err)?,
    })
}

/// Smallest undetectable weight and a witness, or None when nothing up to
/// `max_weight` is undetectable.
#[pyfunction]
#[pyo3(signature = (code, q, max_weight, jobs=1))]
fn brute_force_distance(
    py: Python<'_>,
    code: &PyCode,
    q: u64,
    max_weight: usize,
    jobs: usize,
) -> PyResult<Option<(usize, Vec<i64>)>> {
    let search = core::DistanceSearch::new(max_weight).with_jobs(jobs);
    let inner = code.inner.clone();
    let res = py
        .detach(move || core::brute_force_distance(&inner, q, &search))
        .map_err(err)?;
    Ok(match res {
        core::DistanceResult::Found { distance, witness } => {
            Some((distance, witness.into_entries()))
        }
        core::DistanceResult::NoneUpTo { .. } => None,
    })
}

/// ("unavoidable" | "artifact", integer syndrome). Entries of `error` are
/// reduced mod q and lifted with `lift`; `exact=True` uses them as given.
#[pyfunction]
#[pyo3(signature = (code, error, q, lift="nonneg", exact=false))]
fn classify_undetectable(
    code: &PyCode,
    error: Vec<i64>,
    q: u64,
    lift: &str,
    exact: bool,
) -> PyResult<(String, Vec<i64>)> {
    let policy = lift_policy(lift)?;
    let e = core::PauliVec::new(
        error,
        if exact {
            Modulus::Unbounded
        } else {
            Modulus::Finite(q)
        },
    )
    .map_err(err)?;
    let c = core::classify_undetectable(&code.inner, &e, q, policy).map_err(err)?;
    let tag = match c.classification {
        core::ErrorClass::Unavoidable => "unavoidable",
        core::ErrorClass::Artifact => "artifact",
    };
    Ok((tag.to_string(), c.integer_syndrome))
}

#[pymodule]
#[pyo3(name = "ldicode")]
fn ldicode_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_class::<PyLdi>()?;
    m.add_function(wrap_pyfunction!(parse_code, m)?)?;
    m.add_function(wrap_pyfunction!(known_code, m)?)?;
    m.add_function(wrap_pyfunction!(to_ldi, m)?)?;
    m.add_function(wrap_pyfunction!(symplectic_product, m)?)?;
    m.add_function(wrap_pyfunction!(subgroup_order, m)?)?;
    m.add_function(wrap_pyfunction!(logical_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(logical_operators, m)?)?;
    m.add_function(wrap_pyfunction!(mix_codes, m)?)?;
    m.add_function(wrap_pyfunction!(block_embed, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_distance, m)?)?;
    m.add_function(wrap_pyfunction!(classify_undetectable, m)?)?;
    Ok(())
}
