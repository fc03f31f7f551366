//! Python bindings: weights, bundle expressions, cohomology tables and the
//! verification reports (returned as JSON text).

use std::collections::BTreeMap;

use bottforge::bott::{dotted_dominant_traced, BottOutcome, SelectionPolicy};
use bottforge::rep;
use bottforge::report::{self, IntRange, Lemma, VerifyOptions};
use bottforge::{parse_bundle, CohomologyTable, Error, LeviBundle, Quadric, RootSystemB};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn quadric(rank: usize) -> PyResult<Quadric> {
    Quadric::new(rank).map_err(err)
}

fn table_dims(t: &CohomologyTable) -> BTreeMap<usize, u64> {
    t.rows.iter().map(|(&i, r)| (i, r.dim)).collect()
}

/// Weight of `B_n` given by doubled coordinates, e.g. `[1, 1, 1]` for `(1/2, 1/2, 1/2)`.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "bottforge")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Weight {
    inner: bottforge::Weight,
}

#[pymethods]
impl Weight {
    #[new]
    fn new(doubled: Vec<i64>) -> PyResult<Self> {
        Ok(Weight {
            inner: bottforge::Weight::from_doubled(doubled).map_err(err)?,
        })
    }

    #[getter]
    fn doubled(&self) -> Vec<i64> {
        self.inner.doubled().to_vec()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn dominant_conjugate(&self) -> Weight {
        Weight {
            inner: self.inner.dominant_conjugate(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Weight{}", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Completely reducible homogeneous bundle on `Q^(2n-1)`, parsed from an expression.
#[pyclass(frozen, skip_from_py_object, module = "bottforge")]
#[derive(Clone)]
struct Bundle {
    quadric: Quadric,
    inner: LeviBundle,
}

impl Bundle {
    fn wrap(&self, inner: LeviBundle) -> Bundle {
        Bundle {
            quadric: self.quadric.clone(),
            inner,
        }
    }

    fn same_rank(&self, other: &Bundle) -> PyResult<()> {
        if self.quadric.rank() != other.quadric.rank() {
            return Err(err(Error::RankMismatch {
                expected: self.quadric.rank(),
                got: other.quadric.rank(),
            }));
        }
        Ok(())
    }
}

#[pymethods]
impl Bundle {
    #[new]
    #[pyo3(signature = (expr, rank = 3))]
    fn new(expr: &str, rank: usize) -> PyResult<Self> {
        let quadric = quadric(rank)?;
        let inner = parse_bundle(&quadric, expr).map_err(err)?;
        Ok(Bundle { quadric, inner })
    }

    /// `[(weight, multiplicity), ...]`, highest first.
    #[getter]
    fn components(&self) -> Vec<(Weight, u64)> {
        self.inner
            .components()
            .iter()
            .rev()
            .map(|(w, m)| (Weight { inner: w.clone() }, *m))
            .collect()
    }

    #[getter]
    fn rank(&self) -> u64 {
        self.quadric.bundle_rank(&self.inner)
    }

    fn dual(&self) -> Bundle {
        self.wrap(self.quadric.dual_bundle(&self.inner))
    }

    fn twist(&self, a: i64) -> Bundle {
        self.wrap(self.quadric.twist(&self.inner, a))
    }

    fn tensor(&self, other: &Bundle) -> PyResult<Bundle> {
        self.same_rank(other)?;
        Ok(self.wrap(self.quadric.tensor_bundles(&self.inner, &other.inner)))
    }

    fn __add__(&self, other: &Bundle) -> PyResult<Bundle> {
        self.same_rank(other)?;
        Ok(self.wrap(self.inner.direct_sum(&other.inner)))
    }

    fn __mul__(&self, other: &Bundle) -> PyResult<Bundle> {
        self.tensor(other)
    }

    /// `{degree: dimension}` for the nonzero cohomology groups.
    fn cohomology(&self) -> BTreeMap<usize, u64> {
        table_dims(&self.quadric.cohomology(&self.inner))
    }

    fn euler_char(&self) -> i64 {
        self.quadric.euler_char(&self.inner)
    }

    fn __eq__(&self, other: &Bundle) -> bool {
        self.quadric.rank() == other.quadric.rank() && self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Bundle({})", self.inner)
    }
}

/// `None` if `lambda` is singular, else `(dominant, length)` with `w . lambda` dominant.
#[pyfunction]
#[pyo3(signature = (weight, rank = 3))]
fn dotted_dominant(weight: &Weight, rank: usize) -> PyResult<Option<(Weight, usize)>> {
    let rs = RootSystemB::new(rank).map_err(err)?;
    let trace =
        dotted_dominant_traced(&rs, &weight.inner, SelectionPolicy::SmallestIndex).map_err(err)?;
    Ok(match trace.outcome {
        BottOutcome::Singular => None,
        BottOutcome::Regular { dominant, length } => Some((Weight { inner: dominant }, length)),
    })
}

#[pyfunction]
#[pyo3(signature = (weight, rank = 3))]
fn weyl_dimension(weight: &Weight, rank: usize) -> PyResult<u64> {
    let rs = RootSystemB::new(rank).map_err(err)?;
    rep::weyl_dimension(&rs, &weight.inner).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (expr, rank = 3))]
fn cohomology(expr: &str, rank: usize) -> PyResult<BTreeMap<usize, u64>> {
    Ok(Bundle::new(expr, rank)?.cohomology())
}

/// The command-line JSON document for one bundle expression.
#[pyfunction]
#[pyo3(signature = (expr, rank = 3))]
fn cohomology_json(expr: &str, rank: usize) -> PyResult<String> {
    let b = Bundle::new(expr, rank)?;
    let t = b.quadric.cohomology(&b.inner);
    Ok(report::to_canonical_json(&report::cohomology_json(
        &b.quadric, expr, &b.inner, &t,
    )))
}

#[pyfunction]
#[pyo3(signature = (source, target, rank = 3))]
fn ext_groups(source: &str, target: &str, rank: usize) -> PyResult<BTreeMap<usize, u64>> {
    let q = quadric(rank)?;
    let e = parse_bundle(&q, source).map_err(err)?;
    let f = parse_bundle(&q, target).map_err(err)?;
    Ok(table_dims(&q.ext_groups(&e, &f)))
}

#[pyfunction]
#[pyo3(signature = (expr, rank = 3))]
fn euler_char(expr: &str, rank: usize) -> PyResult<i64> {
    Ok(Bundle::new(expr, rank)?.euler_char())
}

type Pieces = Vec<Vec<(u64, u64)>>;

/// Graded pieces of `H^*(X, F_X)` as `[[(lo, hi) per degree] per k]`, plus the tail bound.
#[pyfunction]
#[pyo3(signature = (expr, kmax = 10))]
fn x_cohomology(expr: &str, kmax: u32) -> PyResult<(Pieces, Option<u32>)> {
    let q = Quadric::q5();
    let f = parse_bundle(&q, expr).map_err(err)?;
    let g = bottforge::x_cohomology(&q, &f, kmax).map_err(err)?;
    let pieces = g
        .pieces
        .iter()
        .map(|col| col.iter().map(|d| (d.lo, d.hi)).collect())
        .collect();
    Ok((pieces, g.tail.k0))
}

/// Runs a verification target and returns the report as canonical JSON.
#[pyfunction]
#[pyo3(signature = (lemma, k = None, j = None, kmax = None))]
fn verify(
    lemma: &str,
    k: Option<(i64, i64)>,
    j: Option<(i64, i64)>,
    kmax: Option<u32>,
) -> PyResult<String> {
    let lemma: Lemma = lemma.parse().map_err(err)?;
    let range = |r: Option<(i64, i64)>| -> PyResult<Option<IntRange>> {
        match r {
            Some((lo, hi)) if lo > hi => {
                Err(PyValueError::new_err(format!("empty range {lo}..{hi}")))
            }
            Some((lo, hi)) => Ok(Some(IntRange::new(lo, hi))),
            None => Ok(None),
        }
    };
    let opts = VerifyOptions {
        k: range(k)?,
        j: range(j)?,
        kmax,
    };
    let r = report::run_verify(lemma, &opts).map_err(err)?;
    Ok(report::to_canonical_json(&r))
}

#[pymodule(name = "bottforge")]
mod bottforge_module {
    #[pymodule_export]
    use super::{
        cohomology, cohomology_json, dotted_dominant, euler_char, ext_groups, verify,
        weyl_dimension, x_cohomology, Bundle, Weight,
    };
}
