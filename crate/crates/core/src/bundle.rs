//! Completely reducible homogeneous bundles on the odd quadric
//! `Q^(2n-1) = Spin(2n+1)/P(alpha_1)` and their cohomology.
//!
//! An irreducible bundle is named by a Levi-dominant weight `F(a; b, c, ...)`:
//! `a` is the charge of the central one-dimensional torus, `(b, c, ...)` a
//! dominant weight of the `B_(n-1)` Levi factor. Conventions:
//!
//! * `O(a) = F(a, 0, ..., 0)`
//! * `S* = F(1/2, ..., 1/2)` (dual spinor bundle), `S = dual(S*) = F(-1/2, 1/2, ..., 1/2)`
//! * `T = F(1, 1, 0, ..., 0)` (tangent bundle)
//!
//! Levi irreps of type B are self-dual, so `dual(F(a; v)) = F(-a; v)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bott::{bott_cohomology, CohomologyAtom};
use crate::error::{Error, Result};
use crate::rep::{
    decompose_character, freudenthal_multiplicities, tensor_irreps, weyl_dimension, Character,
    IrrepSum,
};
use crate::weights::{RootSystemB, Weight};

/// Formal sum of irreducible homogeneous bundles.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviBundle {
    components: BTreeMap<Weight, u64>,
}

impl LeviBundle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &BTreeMap<Weight, u64> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn direct_sum(&self, other: &LeviBundle) -> LeviBundle {
        let mut out = self.clone();
        for (w, m) in &other.components {
            *out.components.entry(w.clone()).or_insert(0) += m;
        }
        out
    }

    pub fn scaled(&self, times: u64) -> LeviBundle {
        LeviBundle {
            components: self
                .components
                .iter()
                .filter(|_| times > 0)
                .map(|(w, m)| (w.clone(), m * times))
                .collect(),
        }
    }

    fn from_map(components: BTreeMap<Weight, u64>) -> Self {
        LeviBundle {
            components: components.into_iter().filter(|(_, m)| *m > 0).collect(),
        }
    }
}

impl fmt::Display for LeviBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .rev()
            .map(|(w, m)| {
                if *m == 1 {
                    format!("F{w}")
                } else {
                    format!("{m}*F{w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" (+) "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub dim: u64,
    pub irreps: IrrepSum,
}

/// Nonzero cohomology groups by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    pub rows: BTreeMap<usize, CohomologyRow>,
}

impl CohomologyTable {
    pub fn dim(&self, degree: usize) -> u64 {
        self.rows.get(&degree).map_or(0, |r| r.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn higher_vanishes(&self) -> bool {
        self.rows.keys().all(|&i| i == 0)
    }

    pub fn euler_char(&self) -> i64 {
        self.rows
            .iter()
            .map(|(&i, r)| {
                if i % 2 == 0 {
                    r.dim as i64
                } else {
                    -(r.dim as i64)
                }
            })
            .sum()
    }

    fn add_irrep(&mut self, degree: usize, weight: Weight, mult: u64, dim: u64) {
        let row = self.rows.entry(degree).or_insert_with(|| CohomologyRow {
            dim: 0,
            irreps: IrrepSum::new(),
        });
        row.dim += mult * dim;
        *row.irreps.entry(weight).or_insert(0) += mult;
    }
}

/// Per-degree outcome of a Serre duality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreReport {
    pub degrees: Vec<(usize, u64, u64, bool)>,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.3)
    }
}

/// The quadric `Q^(2n-1)` with its group and Levi root data.
#[derive(Debug, Clone)]
pub struct Quadric {
    group: RootSystemB,
    levi: RootSystemB,
}

impl Quadric {
    pub fn new(rank: usize) -> Result<Self> {
        let group = RootSystemB::new(rank)?;
        let levi = group.levi();
        Ok(Quadric { group, levi })
    }

    /// `Q^5 = Spin(7)/P(alpha_1)`.
    pub fn q5() -> Self {
        Quadric::new(3).expect("rank 3 is valid")
    }

    pub fn group(&self) -> &RootSystemB {
        &self.group
    }

    pub fn levi(&self) -> &RootSystemB {
        &self.levi
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Complex dimension `2n - 1`.
    pub fn dim(&self) -> usize {
        2 * self.rank() - 1
    }

    pub fn irreducible(&self, w: Weight) -> Result<LeviBundle> {
        self.group.check(&w)?;
        if !self.group.is_levi_dominant(&w) {
            return Err(Error::NotLeviDominant(w.to_string()));
        }
        Ok(LeviBundle {
            components: [(w, 1)].into_iter().collect(),
        })
    }

    pub fn line_bundle(&self, a: i64) -> LeviBundle {
        let mut d = vec![0; self.rank()];
        d[0] = 2 * a;
        self.irreducible(Weight::from_doubled_unchecked(d)).unwrap()
    }

    pub fn structure_sheaf(&self) -> LeviBundle {
        self.line_bundle(0)
    }

    pub fn dual_spinor(&self) -> LeviBundle {
        self.irreducible(Weight::half_spin(self.rank())).unwrap()
    }

    pub fn spinor(&self) -> LeviBundle {
        self.dual_bundle(&self.dual_spinor())
    }

    pub fn tangent(&self) -> LeviBundle {
        let mut d = vec![0; self.rank()];
        d[0] = 2;
        d[1] = 2;
        self.irreducible(Weight::from_doubled_unchecked(d)).unwrap()
    }

    /// Rank of the bundle: sum of Levi fiber dimensions.
    pub fn bundle_rank(&self, b: &LeviBundle) -> u64 {
        b.components
            .iter()
            .map(|(w, m)| m * weyl_dimension(&self.levi, &w.split_charge().1).unwrap())
            .sum()
    }

    pub fn dual_bundle(&self, b: &LeviBundle) -> LeviBundle {
        LeviBundle {
            components: b
                .components
                .iter()
                .map(|(w, m)| {
                    let mut d = w.doubled().to_vec();
                    d[0] = -d[0];
                    (Weight::from_doubled_unchecked(d), *m)
                })
                .collect(),
        }
    }

    pub fn twist(&self, b: &LeviBundle, a: i64) -> LeviBundle {
        self.tensor_bundles(b, &self.line_bundle(a))
    }

    /// Levi-level tensor product; charges add.
    pub fn tensor_bundles(&self, x: &LeviBundle, y: &LeviBundle) -> LeviBundle {
        let mut out: BTreeMap<Weight, u64> = BTreeMap::new();
        for (wx, mx) in &x.components {
            let (cx, lx) = wx.split_charge();
            for (wy, my) in &y.components {
                let (cy, ly) = wy.split_charge();
                let sum = tensor_irreps(&self.levi, &lx, &ly).expect("Levi parts are dominant");
                for (lz, mz) in sum.iter() {
                    let w = Weight::with_charge(cx + cy, lz).expect("parity is preserved");
                    *out.entry(w).or_insert(0) += mx * my * mz;
                }
            }
        }
        let b = LeviBundle::from_map(out);
        debug_assert_eq!(
            self.bundle_rank(&b),
            self.bundle_rank(x) * self.bundle_rank(y)
        );
        b
    }

    /// Character of the fiber as a Levi representation, with the charge as first coordinate.
    pub fn fiber_character(&self, b: &LeviBundle) -> Character {
        let mut c = Character::new();
        for (w, m) in &b.components {
            let (charge, levi) = w.split_charge();
            let diagram = freudenthal_multiplicities(&self.levi, &levi).unwrap();
            for (v, vm) in diagram.iter() {
                c.add(Weight::with_charge(charge, v).unwrap(), (vm * m) as i64);
            }
        }
        c
    }

    /// Decomposes a Levi-invariant character into irreducible bundles.
    pub fn decompose_fiber(&self, c: &Character) -> Result<LeviBundle> {
        let mut by_charge: BTreeMap<i64, Character> = BTreeMap::new();
        for (w, m) in c.iter() {
            let (charge, levi) = w.split_charge();
            by_charge.entry(charge).or_default().add(levi, m as i64);
        }
        let mut out = BTreeMap::new();
        for (charge, levi_char) in by_charge {
            for (lw, m) in decompose_character(&self.levi, &levi_char)? {
                out.insert(Weight::with_charge(charge, &lw)?, m);
            }
        }
        Ok(LeviBundle::from_map(out))
    }

    pub fn sym_bundle(&self, b: &LeviBundle, k: usize) -> LeviBundle {
        if k == 0 {
            return self.structure_sheaf();
        }
        let c = self.fiber_character(b).sym_power(k);
        self.decompose_fiber(&c)
            .expect("symmetric power is a character")
    }

    pub fn alt_bundle(&self, b: &LeviBundle, k: usize) -> LeviBundle {
        if k == 0 {
            return self.structure_sheaf();
        }
        let c = self.fiber_character(b).alt_power(k);
        self.decompose_fiber(&c)
            .expect("exterior power is a character")
    }

    /// Borel-Bott-Weil, summed over the irreducible components.
    pub fn cohomology(&self, b: &LeviBundle) -> CohomologyTable {
        let mut table = CohomologyTable::default();
        for (w, m) in &b.components {
            match bott_cohomology(&self.group, w).expect("components are Levi-dominant") {
                CohomologyAtom::Acyclic => {}
                CohomologyAtom::Nonzero {
                    degree,
                    highest_weight,
                    dim,
                } => table.add_irrep(degree, highest_weight, *m, dim),
            }
        }
        table
    }

    /// `Ext^i(E, F) = H^i(E^dual (x) F)`.
    pub fn ext_groups(&self, e: &LeviBundle, f: &LeviBundle) -> CohomologyTable {
        self.cohomology(&self.tensor_bundles(&self.dual_bundle(e), f))
    }

    pub fn euler_char(&self, b: &LeviBundle) -> i64 {
        self.cohomology(b).euler_char()
    }

    /// Compares `h^i(B)` with `h^(m-i)(B^dual (x) O(-m))`, `m = dim Q`.
    pub fn serre_check(&self, b: &LeviBundle) -> SerreReport {
        let m = self.dim();
        let lhs = self.cohomology(b);
        let rhs = self.cohomology(&self.twist(&self.dual_bundle(b), -(m as i64)));
        SerreReport {
            degrees: (0..=m)
                .map(|i| {
                    let (a, c) = (lhs.dim(i), rhs.dim(m - i));
                    (i, a, c, a == c)
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(halves: &[i64]) -> Weight {
        Weight::from_doubled(halves.to_vec()).unwrap()
    }

    fn single(q: &Quadric, halves: &[i64]) -> LeviBundle {
        q.irreducible(w(halves)).unwrap()
    }

    #[test]
    fn spinor_conventions() {
        let q = Quadric::q5();
        assert_eq!(q.spinor(), single(&q, &[-1, 1, 1]));
        assert_eq!(q.dual_bundle(&q.spinor()), q.dual_spinor());
        // S = S*(-1) at the level of Levi weights
        assert_eq!(q.spinor(), q.twist(&q.dual_spinor(), -1));
        assert_eq!(q.bundle_rank(&q.spinor()), 4);
        assert_eq!(q.bundle_rank(&q.tangent()), 5);
    }

    #[test]
    fn line_bundles_tensor() {
        let q = Quadric::q5();
        for a in -3..4 {
            for b in -3..4 {
                assert_eq!(
                    q.tensor_bundles(&q.line_bundle(a), &q.line_bundle(b)),
                    q.line_bundle(a + b)
                );
            }
        }
    }

    #[test]
    fn dual_spinor_squared() {
        let q = Quadric::q5();
        let sq = q.tensor_bundles(&q.dual_spinor(), &q.dual_spinor());
        let expect = single(&q, &[2, 2, 2])
            .direct_sum(&single(&q, &[2, 2, 0]))
            .direct_sum(&single(&q, &[2, 0, 0]));
        assert_eq!(sq, expect);
        assert_eq!(q.bundle_rank(&sq), 16);
    }

    #[test]
    fn dual_spinor_tensor_spinor() {
        let q = Quadric::q5();
        let b = q.tensor_bundles(&q.dual_spinor(), &q.spinor());
        let expect = single(&q, &[0, 2, 2])
            .direct_sum(&single(&q, &[0, 2, 0]))
            .direct_sum(&single(&q, &[0, 0, 0]));
        assert_eq!(b, expect);
        assert_eq!(
            q.sym_bundle(&q.dual_spinor(), 2),
            q.twist(&single(&q, &[0, 2, 2]), 1)
        );
        assert_eq!(q.tangent(), q.twist(&single(&q, &[0, 2, 0]), 1));
    }

    #[test]
    fn dual_is_involution() {
        let q = Quadric::q5();
        let b = q.tensor_bundles(&q.tangent(), &q.spinor());
        assert_eq!(q.dual_bundle(&q.dual_bundle(&b)), b);
    }

    #[test]
    fn basic_cohomology() {
        let q = Quadric::q5();
        let o = q.cohomology(&q.structure_sheaf());
        assert_eq!(o.rows.len(), 1);
        assert_eq!(o.dim(0), 1);
        assert!(q.cohomology(&q.line_bundle(-3)).is_zero());
        assert_eq!(q.cohomology(&q.line_bundle(-5)).dim(5), 1);
        assert_eq!(q.euler_char(&q.line_bundle(1)), 7);
        assert_eq!(q.euler_char(&q.structure_sheaf()), 1);
    }

    #[test]
    fn h1_of_dual_spinor_square_twisted() {
        let q = Quadric::q5();
        let b = q.twist(&q.tensor_bundles(&q.dual_spinor(), &q.dual_spinor()), -2);
        let t = q.cohomology(&b);
        assert_eq!(t.rows.keys().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(t.dim(1), 1);
        assert_eq!(t.rows[&1].irreps.get(&Weight::zero(3)), Some(&1));
        assert_eq!(t.euler_char(), -1);
        let ext = q.ext_groups(&q.dual_spinor(), &q.spinor());
        assert_eq!(ext, t);
    }

    #[test]
    fn serre_examples() {
        let q = Quadric::q5();
        assert!(q.serre_check(&q.structure_sheaf()).passed());
        assert!(q.serre_check(&q.dual_spinor()).passed());
        assert!(q.serre_check(&q.tangent()).passed());
    }

    #[test]
    fn levi_dominance_enforced() {
        let q = Quadric::q5();
        assert!(matches!(
            q.irreducible(Weight::integral(&[0, 0, 1])),
            Err(Error::NotLeviDominant(_))
        ));
    }

    #[test]
    fn rank_two_quadric() {
        // Q^3 = Spin(5)/P(alpha_1), Levi B_1
        let q = Quadric::new(2).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.bundle_rank(&q.dual_spinor()), 2);
        assert_eq!(q.euler_char(&q.line_bundle(1)), 5);
        assert_eq!(q.cohomology(&q.line_bundle(-3)).dim(3), 1);
        assert!(q.serre_check(&q.spinor()).passed());
    }
}
