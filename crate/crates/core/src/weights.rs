//! Type B root data and exact weight arithmetic.
//!
//! Weights of `Spin(2n+1)` are written in the orthonormal basis `L_1, ..., L_n`.
//! Every coordinate is an integer or every coordinate is a half-integer, so a
//! weight is stored as the vector of *doubled* coordinates `(k_1, ..., k_n)`,
//! all odd or all even. All arithmetic stays in `i64`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weight `(k_1/2, ..., k_n/2)` stored through its doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight(Vec<i64>);

impl Weight {
    /// Builds a weight from doubled coordinates, rejecting mixed parity.
    pub fn from_doubled(doubled: Vec<i64>) -> Result<Self> {
        if doubled.is_empty() {
            return Err(Error::InvalidWeight {
                coords: doubled,
                reason: "empty coordinate list".into(),
            });
        }
        let parity = doubled[0].rem_euclid(2);
        if doubled.iter().any(|k| k.rem_euclid(2) != parity) {
            return Err(Error::InvalidWeight {
                coords: doubled,
                reason: "coordinates must be all integers or all half-integers".into(),
            });
        }
        Ok(Weight(doubled))
    }

    /// Weight with integer coordinates.
    pub fn integral(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|c| 2 * c).collect())
    }

    /// Weight with every coordinate equal to `1/2`.
    pub fn half_spin(n: usize) -> Self {
        Weight(vec![1; n])
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub(crate) fn from_doubled_unchecked(doubled: Vec<i64>) -> Self {
        debug_assert!(Self::from_doubled(doubled.clone()).is_ok());
        Weight(doubled)
    }

    pub fn doubled(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Whether the coordinates are half-integers.
    pub fn is_spin(&self) -> bool {
        self.0[0].rem_euclid(2) == 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// Four times the standard inner product, an exact integer.
    pub fn dot4(&self, other: &Weight) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// The unique dominant element of the Weyl orbit: absolute values sorted
    /// in decreasing order.
    pub fn dominant_conjugate(&self) -> Weight {
        let mut abs: Vec<i64> = self.0.iter().map(|k| k.abs()).collect();
        abs.sort_unstable_by(|a, b| b.cmp(a));
        Weight(abs)
    }

    /// Splits into the first coordinate and the remaining `n - 1`.
    pub fn split_charge(&self) -> (i64, Weight) {
        (self.0[0], Weight(self.0[1..].to_vec()))
    }

    /// Prepends a doubled first coordinate to a Levi weight.
    pub fn with_charge(charge_doubled: i64, levi: &Weight) -> Result<Weight> {
        let mut v = Vec::with_capacity(levi.rank() + 1);
        v.push(charge_doubled);
        v.extend_from_slice(&levi.0);
        Weight::from_doubled(v)
    }

    /// All distinct signed permutations of the coordinates.
    pub fn weyl_orbit(&self) -> Vec<Weight> {
        let mut abs: Vec<i64> = self.0.iter().map(|k| k.abs()).collect();
        abs.sort_unstable();
        let mut out = Vec::new();
        permute_signed(&mut abs, 0, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Renders one coordinate as an integer or a fraction over 2.
    pub fn coord_string(k: i64) -> String {
        if k % 2 == 0 {
            format!("{}", k / 2)
        } else {
            format!("{}/2", k)
        }
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.0.iter().map(|&k| Weight::coord_string(k)).collect()
    }
}

fn permute_signed(items: &mut Vec<i64>, start: usize, out: &mut Vec<Weight>) {
    if start == items.len() {
        let nonzero: Vec<usize> = (0..items.len()).filter(|&i| items[i] != 0).collect();
        for mask in 0u32..(1 << nonzero.len()) {
            let mut v = items.clone();
            for (bit, &idx) in nonzero.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    v[idx] = -v[idx];
                }
            }
            out.push(Weight(v));
        }
        return;
    }
    let mut seen = Vec::new();
    for i in start..items.len() {
        if seen.contains(&items[i]) {
            continue;
        }
        seen.push(items[i]);
        items.swap(start, i);
        permute_signed(items, start + 1, out);
        items.swap(start, i);
    }
}

impl TryFrom<Vec<i64>> for Weight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Weight::from_doubled(v)
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Self {
        w.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coord_strings().join(", "))
    }
}

/// Root data of type `B_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemB {
    rank: usize,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    rho: Weight,
    fundamental_weights: Vec<Weight>,
}

impl RootSystemB {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Rank(n));
        }
        Ok(Self::build(n))
    }

    /// The Levi factor of `P(alpha_1)`: type `B_{n-1}` acting on coordinates `2..n`.
    /// For `n = 2` this is `B_1`, which `new` refuses as a standalone system.
    pub fn levi(&self) -> RootSystemB {
        Self::build(self.rank - 1)
    }

    fn build(n: usize) -> Self {
        let unit = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 2;
            Weight(v)
        };
        let simple_roots: Vec<Weight> = (0..n)
            .map(|i| {
                if i + 1 < n {
                    unit(i).sub(&unit(i + 1))
                } else {
                    unit(i)
                }
            })
            .collect();
        let mut positive_roots = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in i + 1..n {
                positive_roots.push(unit(i).sub(&unit(j)));
                positive_roots.push(unit(i).add(&unit(j)));
            }
            positive_roots.push(unit(i));
        }
        let half_sum: Vec<i64> = (0..n)
            .map(|c| positive_roots.iter().map(|r| r.0[c]).sum::<i64>() / 2)
            .collect();
        let rho = Weight(half_sum);
        let fundamental_weights = (0..n)
            .map(|i| {
                if i + 1 < n {
                    Weight((0..n).map(|c| if c <= i { 2 } else { 0 }).collect())
                } else {
                    Weight::half_spin(n)
                }
            })
            .collect();
        RootSystemB {
            rank: n,
            simple_roots,
            positive_roots,
            rho,
            fundamental_weights,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    pub fn check(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: w.rank(),
            });
        }
        Weight::from_doubled(w.0.clone()).map(|_| ())
    }

    /// `<w, alpha_i^vee>` for the 1-based simple root index `i`.
    pub fn pairing(&self, w: &Weight, i: usize) -> Result<i64> {
        self.check(w)?;
        if i == 0 || i > self.rank {
            return Err(Error::Usage(format!(
                "simple root index {i} out of range 1..={}",
                self.rank
            )));
        }
        Ok(self.pairing_unchecked(w.doubled(), i - 1))
    }

    /// Zero-based variant on raw doubled coordinates.
    pub(crate) fn pairing_unchecked(&self, d: &[i64], i: usize) -> i64 {
        if i + 1 < self.rank {
            let diff = d[i] - d[i + 1];
            debug_assert!(diff % 2 == 0, "parity violated in {d:?}");
            diff / 2
        } else {
            d[i]
        }
    }

    /// `w_1 >= w_2 >= ... >= w_n >= 0`.
    pub fn is_g_dominant(&self, w: &Weight) -> bool {
        let d = w.doubled();
        d.windows(2).all(|p| p[0] >= p[1]) && d.last().is_some_and(|&x| x >= 0)
    }

    /// Dominance for the Levi of `P(alpha_1)`: `w_2 >= ... >= w_n >= 0`, `w_1` free.
    pub fn is_levi_dominant(&self, w: &Weight) -> bool {
        let d = &w.doubled()[1..];
        d.windows(2).all(|p| p[0] >= p[1]) && d.last().is_none_or(|&x| x >= 0)
    }

    /// Applies the simple reflection `s_i` (zero-based) in place.
    pub(crate) fn reflect(&self, d: &mut [i64], i: usize) {
        if i + 1 < self.rank {
            d.swap(i, i + 1);
        } else {
            d[i] = -d[i];
        }
    }
}
