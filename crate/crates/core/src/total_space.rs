//! Graded cohomology on the total space `X = Tot(G^dual(-1))` over `Q^(2n-1)`.
//!
//! `G` is the Ottaviani bundle, `0 -> O -> S* -> G -> 0`. For a bundle `F` on
//! the quadric, the pullback to `X` has
//! `H^i(X, F_X) = sum_k H^i(Q, F (x) Sym^k(G(1)))`, and each graded piece is
//! read off the long exact sequence of
//! `0 -> Sym^(k-1) S* (k) (x) F -> Sym^k S* (k) (x) F -> Sym^k(G(1)) (x) F -> 0`,
//! whose outer terms are computed exactly by Borel-Bott-Weil. The sequence is
//! not `Spin`-equivariant, so only dimensions are tracked.
//!
//! Every claim for all `k` is split into a finite scan plus a tail certificate:
//! a `k0` past which every component of both outer terms is dominant.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::{CohomologyTable, LeviBundle, Quadric};
use crate::error::Result;
use crate::les::{les_solve, DimInterval, LESProblem};
use crate::rep::freudenthal_multiplicities;
use crate::weights::Weight;

/// Weight whose doubled coordinates are `base + k * slope`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineFamily {
    pub base: Vec<i64>,
    pub slope: Vec<i64>,
}

impl AffineFamily {
    pub fn at(&self, k: i64) -> Weight {
        Weight::from_doubled(
            self.base
                .iter()
                .zip(&self.slope)
                .map(|(b, s)| b + k * s)
                .collect(),
        )
        .expect("family preserves parity")
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .base
            .iter()
            .zip(&self.slope)
            .map(|(&b, &s)| match (b, s) {
                (b, 0) => Weight::coord_string(b),
                (0, s) => format!("{}/2", k_term(s)),
                (b, s) if b < 0 => format!("({}{b})/2", k_term(s)),
                (b, s) => format!("({}+{b})/2", k_term(s)),
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

fn k_term(s: i64) -> String {
    match s {
        1 => "k".into(),
        -1 => "-k".into(),
        s => format!("{s}k"),
    }
}

/// Which dominance inequalities a family must eventually satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DominanceConstraint {
    /// `w_1 >= w_2 >= ... >= w_n >= 0`.
    Full,
    /// `w_1 >= w_2` only; the family is known to be Levi-dominant.
    FirstOverSecond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Threshold {
    From(u32),
    Never,
}

impl Threshold {
    pub fn value(&self) -> Option<u32> {
        match self {
            Threshold::From(k) => Some(*k),
            Threshold::Never => None,
        }
    }
}

/// Smallest `k0 >= 0` such that the family is dominant for every `k >= k0`.
pub fn tail_dominance_threshold(
    family: &AffineFamily,
    constraint: DominanceConstraint,
) -> Threshold {
    let n = family.base.len();
    // each inequality is p + q k >= 0 in doubled coordinates
    let mut ineqs: Vec<(i64, i64)> = Vec::new();
    let pair = |i: usize| {
        (
            family.base[i] - family.base[i + 1],
            family.slope[i] - family.slope[i + 1],
        )
    };
    match constraint {
        DominanceConstraint::FirstOverSecond => ineqs.push(pair(0)),
        DominanceConstraint::Full => {
            ineqs.extend((0..n - 1).map(pair));
            ineqs.push((family.base[n - 1], family.slope[n - 1]));
        }
    }
    let mut k0: i64 = 0;
    for (p, q) in ineqs {
        if q > 0 {
            k0 = k0.max((-p).div_euclid(q) + i64::from((-p).rem_euclid(q) != 0));
        } else if q < 0 || p < 0 {
            return Threshold::Never;
        }
    }
    Threshold::From(k0.max(0) as u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailCertificate {
    /// Every positive-degree piece with `k >= k0` vanishes. `None`: no bound found.
    pub k0: Option<u32>,
    pub families: Vec<(String, Threshold)>,
}

/// Per-grade cohomology of a pulled-back bundle, `k in 0..=kmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedCohomology {
    pub kmax: u32,
    pub pieces: Vec<Vec<DimInterval>>,
    pub tail: TailCertificate,
}

impl GradedCohomology {
    /// The scan and the certificate together cover every `k >= 0`.
    pub fn certified(&self) -> bool {
        self.tail.k0.is_some_and(|k0| k0 <= self.kmax + 1)
    }

    /// Flags a result whose "for all k" claim rests on the finite scan alone.
    pub fn unbounded_verification(&self) -> bool {
        !self.certified()
    }

    pub fn piece(&self, k: i64) -> Option<&[DimInterval]> {
        if k < 0 {
            return None;
        }
        self.pieces.get(k as usize).map(|v| v.as_slice())
    }

    /// Positive-degree entries that are not forced zero: `(degree, k, interval)`.
    pub fn higher_entries(&self) -> Vec<(usize, u32, DimInterval)> {
        let mut out = Vec::new();
        for (k, piece) in self.pieces.iter().enumerate() {
            for (i, d) in piece.iter().enumerate().skip(1) {
                if d.maybe_nonzero() {
                    out.push((i, k as u32, *d));
                }
            }
        }
        out
    }

    pub fn all_forced(&self) -> bool {
        self.pieces.iter().flatten().all(|d| d.forced())
    }
}

fn sym_cache() -> &'static RwLock<HashMap<(usize, usize), LeviBundle>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), LeviBundle>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Sym^k S*`, computed from the character and memoised per rank.
pub fn sym_dual_spinor(q: &Quadric, k: usize) -> LeviBundle {
    let key = (q.rank(), k);
    if let Some(b) = sym_cache().read().unwrap().get(&key) {
        return b.clone();
    }
    let b = q.sym_bundle(&q.dual_spinor(), k);
    sym_cache().write().unwrap().insert(key, b.clone());
    b
}

/// The outer terms `(A, B)` of the sequence for `Sym^k(G(1)) (x) F`.
pub fn sym_g1_outer_terms(q: &Quadric, f: &LeviBundle, k: usize) -> (LeviBundle, LeviBundle) {
    let kk = k as i64;
    let b = q.tensor_bundles(&q.twist(&sym_dual_spinor(q, k), kk), f);
    let a = if k == 0 {
        LeviBundle::zero()
    } else {
        q.tensor_bundles(&q.twist(&sym_dual_spinor(q, k - 1), kk), f)
    };
    (a, b)
}

fn table_column(q: &Quadric, t: &CohomologyTable) -> Vec<DimInterval> {
    (0..=q.dim())
        .map(|i| DimInterval::exact(t.dim(i)))
        .collect()
}

/// Dimensions of `H^i(Q, Sym^k(G(1)) (x) F)` for `i in 0..=dim Q`.
pub fn sym_g1_cohomology(q: &Quadric, f: &LeviBundle, k: usize) -> Result<Vec<DimInterval>> {
    if k == 0 {
        return Ok(table_column(q, &q.cohomology(f)));
    }
    let (a, b) = sym_g1_outer_terms(q, f, k);
    let problem = LESProblem::covariant(
        table_column(q, &q.cohomology(&a)),
        table_column(q, &q.cohomology(&b)),
        vec![DimInterval::UNKNOWN; q.dim() + 1],
    );
    Ok(les_solve(&problem)?.last)
}

/// Affine families bounding every component of `Sym^k S* (k) (x) F` and
/// `Sym^(k-1) S* (k) (x) F`.
///
/// Each component has highest weight `(3k/2 + c, k/2 + mu_1, ...)` for a Levi
/// component of `F` with charge `c` and some weight `mu` of its Levi part (resp.
/// shifted by `-1/2`). Components are Levi-dominant, so `w_1 >= w_2` suffices.
pub fn tail_families(q: &Quadric, f: &LeviBundle) -> Vec<AffineFamily> {
    let n = q.rank();
    let mut fams = BTreeSet::new();
    for w in f.components().keys() {
        let (charge, levi) = w.split_charge();
        let diagram = freudenthal_multiplicities(q.levi(), &levi).expect("Levi-dominant");
        // only the largest second coordinate matters for w_1 >= w_2
        let top = diagram
            .iter()
            .map(|(v, _)| v.doubled()[0])
            .max()
            .unwrap_or(0);
        let mut slope = vec![1; n];
        slope[0] = 3;
        let mut base_b = vec![top; n];
        base_b[0] = charge;
        let base_a: Vec<i64> = base_b.iter().map(|x| x - 1).collect();
        fams.insert(AffineFamily {
            base: base_b,
            slope: slope.clone(),
        });
        fams.insert(AffineFamily {
            base: base_a,
            slope,
        });
    }
    fams.into_iter().collect()
}

pub fn tail_certificate(q: &Quadric, f: &LeviBundle) -> TailCertificate {
    let families: Vec<(String, Threshold)> = tail_families(q, f)
        .into_iter()
        .map(|fam| {
            let t = tail_dominance_threshold(&fam, DominanceConstraint::FirstOverSecond);
            (fam.describe(), t)
        })
        .collect();
    let k0 = families
        .iter()
        .map(|(_, t)| t.value())
        .try_fold(0u32, |acc, t| t.map(|t| acc.max(t)));
    TailCertificate { k0, families }
}

/// Graded pieces `k = 0..=kmax` of `H^*(X, F_X)` with a tail certificate.
pub fn x_cohomology(q: &Quadric, f: &LeviBundle, kmax: u32) -> Result<GradedCohomology> {
    let pieces = (0..=kmax as usize)
        .into_par_iter()
        .map(|k| sym_g1_cohomology(q, f, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedCohomology {
        kmax,
        pieces,
        tail: tail_certificate(q, f),
    })
}

/// Shared cache of graded cohomology, keyed by bundle.
#[derive(Debug)]
pub struct XCohomologyCache {
    quadric: Quadric,
    kmax: u32,
    entries: RwLock<HashMap<LeviBundle, Arc<GradedCohomology>>>,
}

impl XCohomologyCache {
    pub fn new(quadric: Quadric, kmax: u32) -> Self {
        XCohomologyCache {
            quadric,
            kmax,
            entries: RwLock::new(HashMap::new()),
        }
    }

    pub fn quadric(&self) -> &Quadric {
        &self.quadric
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn get(&self, f: &LeviBundle) -> Result<Arc<GradedCohomology>> {
        if let Some(g) = self.entries.read().unwrap().get(f) {
            return Ok(g.clone());
        }
        let g = Arc::new(x_cohomology(&self.quadric, f, self.kmax)?);
        self.entries
            .write()
            .unwrap()
            .entry(f.clone())
            .or_insert_with(|| g.clone());
        Ok(g)
    }
}
