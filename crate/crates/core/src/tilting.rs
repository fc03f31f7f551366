//! Ext groups on `X` between pulled-back bundles and two-step extensions of them,
//! Ext vanishing for the tilting candidates, and graded Hom dimensions of their
//! endomorphism algebras.
//!
//! Grading: `M<s>` denotes `M` with grades shifted so that `M<s>_k = M_(k+s)`;
//! then `Ext(E<s>, F<t>)_k = Ext(E, F)_(k+t-s)`. The extension `P` is built from
//! a class in `Ext^1_X(S*, O(-2))`, which lives in grade 1, so `P` carries its
//! sub-bundle as `O(-2)<1>` and the class becomes homogeneous of degree 0.
//! Connecting maps are then grade-preserving and the bookkeeping runs grade by
//! grade. Grades of Ext between the tilting summands start at -1.
//!
//! The only input beyond Borel-Bott-Weil is the nonsplit-extension hint: the
//! identity of the quotient (resp. sub) maps to the nonzero extension class, so
//! the relevant connecting map has rank at least one.

use std::collections::BTreeMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::{LeviBundle, Quadric};
use crate::error::Result;
use crate::les::{les_solve, DimInterval, LESProblem, RankHint};
use crate::total_space::XCohomologyCache;

/// Lowest grade at which Ext between the summands used here can be nonzero.
pub const GRADE_MIN: i64 = -1;

pub const NONSPLIT_HINT: &str = "nonsplit-extension: the defining class is nonzero, so the \
connecting map sends the identity to it (rank >= 1)";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GradedBundle {
    pub name: String,
    #[serde(skip)]
    pub bundle: LeviBundle,
    pub shift: i64,
}

impl GradedBundle {
    pub fn new(name: impl Into<String>, bundle: LeviBundle, shift: i64) -> Self {
        GradedBundle {
            name: name.into(),
            bundle,
            shift,
        }
    }
}

/// A pulled-back bundle, or a nonsplit extension `0 -> sub -> E -> quotient -> 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum XObject {
    Pullback(GradedBundle),
    Extension {
        name: String,
        sub: GradedBundle,
        quotient: GradedBundle,
    },
}

impl XObject {
    pub fn name(&self) -> &str {
        match self {
            XObject::Pullback(b) => &b.name,
            XObject::Extension { name, .. } => name,
        }
    }
}

/// Ext between two objects, one interval per `(grade, degree)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedExt {
    pub grades: BTreeMap<i64, Vec<DimInterval>>,
    /// All positive-degree pieces vanish for grades `>= tail`. `None`: not certified.
    pub tail: Option<i64>,
}

impl GradedExt {
    fn column(&self, k: i64, degrees: usize) -> Vec<DimInterval> {
        self.grades
            .get(&k)
            .cloned()
            .unwrap_or_else(|| vec![DimInterval::ZERO; degrees])
    }

    /// Positive-degree `(grade, degree, interval)` entries that are not forced zero.
    pub fn higher_open(&self) -> Vec<(i64, usize, DimInterval)> {
        let mut out = Vec::new();
        for (&k, col) in &self.grades {
            for (i, d) in col.iter().enumerate().skip(1) {
                if d.maybe_nonzero() {
                    out.push((k, i, *d));
                }
            }
        }
        out
    }

    pub fn all_forced(&self) -> bool {
        self.grades.values().flatten().all(|d| d.forced())
    }

    /// Hom dimensions by grade.
    pub fn hom(&self) -> BTreeMap<i64, DimInterval> {
        self.grades.iter().map(|(&k, col)| (k, col[0])).collect()
    }
}

/// Record of one place a rank hint was used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HintUse {
    pub source: String,
    pub target: String,
    pub grade: i64,
}

/// Ext calculator on `X`. Grades `GRADE_MIN..=kmax` are reported; graded
/// cohomology is computed one step further to cover shifts.
pub struct ExtEngine {
    cache: XCohomologyCache,
    kmax: u32,
    use_hints: bool,
    hint_log: Mutex<Vec<HintUse>>,
}

impl ExtEngine {
    pub fn new(quadric: Quadric, kmax: u32, use_hints: bool) -> Self {
        ExtEngine {
            cache: XCohomologyCache::new(quadric, kmax + 1),
            kmax,
            use_hints,
            hint_log: Mutex::new(Vec::new()),
        }
    }

    pub fn quadric(&self) -> &Quadric {
        self.cache.quadric()
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn hints_used(&self) -> Vec<HintUse> {
        let mut v = self.hint_log.lock().unwrap().clone();
        v.sort_by(|a, b| (&a.source, &a.target, a.grade).cmp(&(&b.source, &b.target, b.grade)));
        v.dedup();
        v
    }

    fn degrees(&self) -> usize {
        self.quadric().dim() + 1
    }

    fn grades(&self) -> impl Iterator<Item = i64> {
        GRADE_MIN..=self.kmax as i64
    }

    /// The tail is certified when it lies within one step of the scanned grades.
    pub fn certified(&self, e: &GradedExt) -> bool {
        e.tail.is_some_and(|t| t <= self.kmax as i64 + 1)
    }

    fn ext_pullbacks(&self, e: &GradedBundle, f: &GradedBundle) -> Result<GradedExt> {
        let q = self.quadric();
        let g = self
            .cache
            .get(&q.tensor_bundles(&q.dual_bundle(&e.bundle), &f.bundle))?;
        let offset = f.shift - e.shift;
        let mut grades = BTreeMap::new();
        for k in self.grades() {
            let col = match g.piece(k + offset) {
                Some(p) => p.to_vec(),
                None if k + offset < 0 => vec![DimInterval::ZERO; self.degrees()],
                None => unreachable!("grade {} beyond the computed range", k + offset),
            };
            grades.insert(k, col);
        }
        let tail = g.tail.k0.map(|k0| (k0 as i64 - offset).max(GRADE_MIN));
        Ok(GradedExt { grades, tail })
    }

    fn combine(
        &self,
        outer_first: &GradedExt,
        outer_last: &GradedExt,
        hint_grade: Option<i64>,
        labels: (&str, &str),
    ) -> Result<GradedExt> {
        let n = self.degrees();
        let mut grades = BTreeMap::new();
        for k in self.grades() {
            let a = outer_first.column(k, n);
            let c = outer_last.column(k, n);
            // columns already in sequence order for both variances
            let mut problem = LESProblem {
                first: a,
                middle: vec![DimInterval::UNKNOWN; n],
                last: c,
                hints: Vec::new(),
            };
            if self.use_hints && hint_grade == Some(k) {
                problem = problem.with_hint(RankHint {
                    degree: 0,
                    min_rank: 1,
                    label: NONSPLIT_HINT.into(),
                });
                self.hint_log.lock().unwrap().push(HintUse {
                    source: labels.0.into(),
                    target: labels.1.into(),
                    grade: k,
                });
            }
            grades.insert(k, les_solve(&problem)?.middle);
        }
        let tail = match (outer_first.tail, outer_last.tail) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Ok(GradedExt { grades, tail })
    }

    /// `Ext^i_X(x, y)` for every reported grade.
    pub fn ext(&self, x: &XObject, y: &XObject) -> Result<GradedExt> {
        match (x, y) {
            (XObject::Pullback(e), XObject::Pullback(f)) => self.ext_pullbacks(e, f),
            (_, XObject::Extension { sub, quotient, .. }) => {
                let to_sub = self.ext(x, &XObject::Pullback(sub.clone()))?;
                let to_quot = self.ext(x, &XObject::Pullback(quotient.clone()))?;
                // identity of the quotient maps to the class under Hom(Q, Q) -> Ext^1(Q, sub)
                let hint_grade = match x {
                    XObject::Pullback(e) if e.bundle == quotient.bundle => {
                        Some(e.shift - quotient.shift)
                    }
                    _ => None,
                };
                self.combine(&to_sub, &to_quot, hint_grade, (x.name(), y.name()))
            }
            (XObject::Extension { sub, quotient, .. }, XObject::Pullback(f)) => {
                let from_sub = self.ext(&XObject::Pullback(sub.clone()), y)?;
                let from_quot = self.ext(&XObject::Pullback(quotient.clone()), y)?;
                // identity of the sub maps to the class under Hom(A, A) -> Ext^1(Q, A)
                let hint_grade = (f.bundle == sub.bundle).then_some(sub.shift - f.shift);
                // contravariant order: Hom(quotient, -) comes first
                self.combine(&from_quot, &from_sub, hint_grade, (x.name(), y.name()))
            }
        }
    }
}

/// Summands `O(-2), ..., O(2)` of the candidates.
fn line_summands(q: &Quadric) -> Vec<XObject> {
    (-2..=2)
        .map(|a| XObject::Pullback(GradedBundle::new(format!("O_X({a})"), q.line_bundle(a), 0)))
        .collect()
}

/// `U = O(-2) + O(-1) + S_X + O + O(1) + O(2)`.
pub fn summands_u(q: &Quadric) -> Vec<XObject> {
    let mut v = line_summands(q);
    v.insert(
        2,
        XObject::Pullback(GradedBundle::new("S_X", q.spinor(), 0)),
    );
    v
}

/// `0 -> O(-2)<1> -> P -> S*_X -> 0`.
pub fn bundle_p(q: &Quadric) -> XObject {
    XObject::Extension {
        name: "P".into(),
        sub: GradedBundle::new("O_X(-2)<1>", q.line_bundle(-2), 1),
        quotient: GradedBundle::new("S*_X", q.dual_spinor(), 0),
    }
}

/// `0 -> S_X -> P* -> O(2)<-1> -> 0`, the dual of `P`.
pub fn bundle_p_dual(q: &Quadric) -> XObject {
    XObject::Extension {
        name: "P*".into(),
        sub: GradedBundle::new("S_X", q.spinor(), 0),
        quotient: GradedBundle::new("O_X(2)<-1>", q.line_bundle(2), -1),
    }
}

/// `T = O(-2) + ... + O(2) + P`.
pub fn summands_t(q: &Quadric) -> Vec<XObject> {
    let mut v = line_summands(q);
    v.push(bundle_p(q));
    v
}

/// `T* = O(-2) + ... + O(2) + P*`.
pub fn summands_t_dual(q: &Quadric) -> Vec<XObject> {
    let mut v = line_summands(q);
    v.push(bundle_p_dual(q));
    v
}

/// Ext between one ordered pair of summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairExt {
    pub source: String,
    pub target: String,
    pub ext: GradedExt,
    pub certified: bool,
}

/// All ordered pairs among `summands`, in row-major order.
pub fn pairwise_ext(engine: &ExtEngine, summands: &[XObject]) -> Result<Vec<PairExt>> {
    let pairs: Vec<(usize, usize)> = (0..summands.len())
        .flat_map(|a| (0..summands.len()).map(move |b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let ext = engine.ext(&summands[a], &summands[b])?;
            Ok(PairExt {
                source: summands[a].name().to_string(),
                target: summands[b].name().to_string(),
                certified: engine.certified(&ext),
                ext,
            })
        })
        .collect()
}

/// A higher Ext entry that is nonzero or not forced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtEntry {
    pub source: String,
    pub target: String,
    pub degree: usize,
    pub grade: i64,
    pub dim: DimInterval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PretiltingReport {
    pub kmax: u32,
    /// Positive-degree entries that are not forced zero.
    pub nonzero: Vec<ExtEntry>,
    pub uncertified_pairs: Vec<(String, String)>,
    pub all_forced: bool,
}

/// Higher Ext among the summands of `U` on `X`.
pub fn verify_pretilting_u(q: &Quadric, kmax: u32) -> Result<PretiltingReport> {
    let engine = ExtEngine::new(q.clone(), kmax, false);
    let pairs = pairwise_ext(&engine, &summands_u(q))?;
    let mut nonzero = Vec::new();
    let mut uncertified_pairs = Vec::new();
    for p in &pairs {
        for (grade, degree, dim) in p.ext.higher_open() {
            nonzero.push(ExtEntry {
                source: p.source.clone(),
                target: p.target.clone(),
                degree,
                grade,
                dim,
            });
        }
        if !p.certified {
            uncertified_pairs.push((p.source.clone(), p.target.clone()));
        }
    }
    Ok(PretiltingReport {
        kmax,
        nonzero,
        uncertified_pairs,
        all_forced: pairs.iter().all(|p| p.ext.all_forced()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TiltingReport {
    pub kmax: u32,
    pub hints_enabled: bool,
    pub bundle: String,
    /// Positive-degree entries not forced to zero; each names the pair.
    pub open: Vec<ExtEntry>,
    pub uncertified_pairs: Vec<(String, String)>,
    pub hints_used: Vec<HintUse>,
}

impl TiltingReport {
    pub fn vanishing_certified(&self) -> bool {
        self.open.is_empty() && self.uncertified_pairs.is_empty()
    }
}

fn tilting_report(q: &Quadric, kmax: u32, hints: bool, dual: bool) -> Result<TiltingReport> {
    let engine = ExtEngine::new(q.clone(), kmax, hints);
    let summands = if dual {
        summands_t_dual(q)
    } else {
        summands_t(q)
    };
    let pairs = pairwise_ext(&engine, &summands)?;
    let mut open = Vec::new();
    let mut uncertified_pairs = Vec::new();
    for p in &pairs {
        for (grade, degree, dim) in p.ext.higher_open() {
            open.push(ExtEntry {
                source: p.source.clone(),
                target: p.target.clone(),
                degree,
                grade,
                dim,
            });
        }
        if !p.certified {
            uncertified_pairs.push((p.source.clone(), p.target.clone()));
        }
    }
    Ok(TiltingReport {
        kmax,
        hints_enabled: hints,
        bundle: if dual { "T*".into() } else { "T".into() },
        open,
        uncertified_pairs,
        hints_used: engine.hints_used(),
    })
}

/// Higher Ext of `T` and of `T*`, optionally without the nonsplit hint.
pub fn verify_tilting_t(
    q: &Quadric,
    kmax: u32,
    hints: bool,
) -> Result<(TiltingReport, TiltingReport)> {
    Ok((
        tilting_report(q, kmax, hints, false)?,
        tilting_report(q, kmax, hints, true)?,
    ))
}

/// `blocks[a][b][g]` is `dim Hom(E_a, E_b)` in grade `grades[g]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub summands: Vec<String>,
    pub grades: Vec<i64>,
    pub blocks: Vec<Vec<Vec<DimInterval>>>,
}

impl HilbertTable {
    pub fn block(&self, a: usize, b: usize, grade: i64) -> DimInterval {
        let g = (grade - self.grades[0]) as usize;
        self.blocks[a][b][g]
    }

    pub fn all_forced(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(|d| d.forced())
    }

    /// Total dimension per grade.
    pub fn series(&self) -> Vec<(i64, DimInterval)> {
        self.grades
            .iter()
            .enumerate()
            .map(|(g, &k)| {
                let (lo, hi) = self.blocks.iter().flatten().fold((0u64, 0u64), |acc, row| {
                    (acc.0 + row[g].lo, acc.1.saturating_add(row[g].hi))
                });
                (k, DimInterval::new(lo, hi))
            })
            .collect()
    }
}

fn hilbert_for(engine: &ExtEngine, summands: &[XObject]) -> Result<HilbertTable> {
    let pairs = pairwise_ext(engine, summands)?;
    let n = summands.len();
    let grades: Vec<i64> = engine.grades().collect();
    let mut blocks = vec![vec![Vec::new(); n]; n];
    for (idx, p) in pairs.iter().enumerate() {
        blocks[idx / n][idx % n] = p.ext.hom().into_values().collect();
    }
    Ok(HilbertTable {
        summands: summands.iter().map(|s| s.name().to_string()).collect(),
        grades,
        blocks,
    })
}

/// Graded Hom dimensions of `End(T)` (uses the nonsplit hint).
pub fn hilbert_series_end_t(q: &Quadric, kmax: u32) -> Result<HilbertTable> {
    let engine = ExtEngine::new(q.clone(), kmax, true);
    hilbert_for(&engine, &summands_t(q))
}

/// Same for `End(T*)`, which is `End(T)` with arrows reversed.
pub fn hilbert_series_end_t_dual(q: &Quadric, kmax: u32) -> Result<HilbertTable> {
    let engine = ExtEngine::new(q.clone(), kmax, true);
    hilbert_for(&engine, &summands_t_dual(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_from_o2_into_p_dual() {
        let q = Quadric::q5();
        let o2 = XObject::Pullback(GradedBundle::new("O_X(2)", q.line_bundle(2), 0));
        let with = ExtEngine::new(q.clone(), 4, true)
            .ext(&o2, &bundle_p_dual(&q))
            .unwrap();
        assert!(with.higher_open().is_empty());
        let without = ExtEngine::new(q.clone(), 4, false)
            .ext(&o2, &bundle_p_dual(&q))
            .unwrap();
        let open = without.higher_open();
        assert_eq!(open.len(), 1);
        assert_eq!(open[0].1, 1);
        assert_eq!(open[0].2, DimInterval::new(0, 1));
    }

    #[test]
    fn ext_from_p_into_o_minus_two() {
        let q = Quadric::q5();
        let o = XObject::Pullback(GradedBundle::new("O_X(-2)", q.line_bundle(-2), 0));
        let engine = ExtEngine::new(q.clone(), 4, true);
        let e = engine.ext(&bundle_p(&q), &o).unwrap();
        assert!(e.higher_open().is_empty());
        assert_eq!(engine.hints_used().len(), 1);
        assert_eq!(engine.hints_used()[0].grade, 1);
    }

    #[test]
    fn hom_o_o_graded() {
        let q = Quadric::q5();
        let t = hilbert_series_end_t(&q, 3).unwrap();
        assert_eq!(t.block(2, 2, 0), DimInterval::exact(1));
        assert_eq!(t.block(2, 2, 1), DimInterval::exact(41));
        assert_eq!(t.block(4, 0, 0), DimInterval::exact(0));
        assert_eq!(t.block(2, 2, -1), DimInterval::exact(0));
    }
}
