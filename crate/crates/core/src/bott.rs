//! The dotted Weyl action `w . lambda = w(lambda + rho) - rho` and Bott's algorithm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rep::weyl_dimension;
use crate::weights::{RootSystemB, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum BottOutcome {
    Singular,
    Regular { dominant: Weight, length: usize },
}

impl BottOutcome {
    pub fn is_singular(&self) -> bool {
        matches!(self, BottOutcome::Singular)
    }
}

/// Which simple reflection the exchange loop applies when several pairings are negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionPolicy {
    #[default]
    SmallestIndex,
    LargestIndex,
}

/// Outcome plus the zero-based simple reflections applied, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottTrace {
    pub outcome: BottOutcome,
    pub reflections: Vec<usize>,
}

pub fn dotted_dominant(rs: &RootSystemB, lambda: &Weight) -> Result<BottOutcome> {
    Ok(dotted_dominant_traced(rs, lambda, SelectionPolicy::SmallestIndex)?.outcome)
}

/// Exchange algorithm on `lambda + rho`: reflect in a simple root with negative
/// pairing until none is left. A zero pairing at any step means `lambda + rho`
/// lies on a wall.
pub fn dotted_dominant_traced(
    rs: &RootSystemB,
    lambda: &Weight,
    policy: SelectionPolicy,
) -> Result<BottTrace> {
    rs.check(lambda)?;
    let n = rs.rank();
    let mut cur: Vec<i64> = lambda.add(rs.rho()).doubled().to_vec();
    let mut reflections = Vec::new();
    loop {
        let pairings: Vec<i64> = (0..n).map(|i| rs.pairing_unchecked(&cur, i)).collect();
        if pairings.contains(&0) {
            return Ok(BottTrace {
                outcome: BottOutcome::Singular,
                reflections,
            });
        }
        let mut negative = (0..n).filter(|&i| pairings[i] < 0);
        let pick = match policy {
            SelectionPolicy::SmallestIndex => negative.next(),
            SelectionPolicy::LargestIndex => negative.next_back(),
        };
        match pick {
            Some(i) => {
                rs.reflect(&mut cur, i);
                reflections.push(i);
            }
            None => break,
        }
    }
    let dominant = Weight::from_doubled_unchecked(cur).sub(rs.rho());
    let length = reflections.len();
    debug_assert!(length <= rs.positive_roots().len());
    Ok(BottTrace {
        outcome: BottOutcome::Regular { dominant, length },
        reflections,
    })
}

/// Inversion count of `lambda + rho`: number of positive roots pairing negatively.
/// Independent of the exchange loop; used as a cross-check. `None` when singular.
pub fn inversion_length(rs: &RootSystemB, lambda: &Weight) -> Option<usize> {
    let v = lambda.add(rs.rho());
    let mut count = 0;
    for alpha in rs.positive_roots() {
        match v.dot4(alpha) {
            0 => return None,
            x if x < 0 => count += 1,
            _ => {}
        }
    }
    Some(count)
}

/// Type B wall test: some coordinate of `lambda + rho` vanishes or two share an absolute value.
pub fn is_singular_by_coordinates(rs: &RootSystemB, lambda: &Weight) -> bool {
    let v = lambda.add(rs.rho());
    let mut abs: Vec<i64> = v.doubled().iter().map(|k| k.abs()).collect();
    abs.sort_unstable();
    abs[0] == 0 || abs.windows(2).any(|p| p[0] == p[1])
}

/// Cohomology of one irreducible homogeneous bundle on `Q^(2n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CohomologyAtom {
    Acyclic,
    Nonzero {
        degree: usize,
        highest_weight: Weight,
        dim: u64,
    },
}

pub fn bott_cohomology(rs: &RootSystemB, lambda: &Weight) -> Result<CohomologyAtom> {
    rs.check(lambda)?;
    if !rs.is_levi_dominant(lambda) {
        return Err(Error::NotLeviDominant(lambda.to_string()));
    }
    match dotted_dominant(rs, lambda)? {
        BottOutcome::Singular => Ok(CohomologyAtom::Acyclic),
        BottOutcome::Regular { dominant, length } => {
            // only the first coordinate of lambda + rho moves, so at most 2n - 1 steps
            assert!(
                length < 2 * rs.rank(),
                "length {length} exceeds dim Q for Levi-dominant {lambda}"
            );
            let dim = weyl_dimension(rs, &dominant)?;
            Ok(CohomologyAtom::Nonzero {
                degree: length,
                highest_weight: dominant,
                dim,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> RootSystemB {
        RootSystemB::new(3).unwrap()
    }

    fn w(halves: &[i64]) -> Weight {
        Weight::from_doubled(halves.to_vec()).unwrap()
    }

    #[test]
    fn one_swap() {
        let out = dotted_dominant(&b3(), &Weight::integral(&[-1, 1, 0])).unwrap();
        assert_eq!(
            out,
            BottOutcome::Regular {
                dominant: Weight::zero(3),
                length: 1
            }
        );
    }

    #[test]
    fn singular_examples() {
        let rs = b3();
        assert!(dotted_dominant(&rs, &Weight::integral(&[-4, 0, 0]))
            .unwrap()
            .is_singular());
        assert_eq!(
            bott_cohomology(&rs, &w(&[-3, 1, 1])).unwrap(),
            CohomologyAtom::Acyclic
        );
    }

    #[test]
    fn dominant_is_fixed() {
        let lambda = Weight::integral(&[2, 1, 1]);
        assert_eq!(
            dotted_dominant(&b3(), &lambda).unwrap(),
            BottOutcome::Regular {
                dominant: lambda,
                length: 0
            }
        );
    }

    #[test]
    fn canonical_bundle_in_top_degree() {
        let out = bott_cohomology(&b3(), &Weight::integral(&[-5, 0, 0])).unwrap();
        assert_eq!(
            out,
            CohomologyAtom::Nonzero {
                degree: 5,
                highest_weight: Weight::zero(3),
                dim: 1
            }
        );
        let o = bott_cohomology(&b3(), &Weight::zero(3)).unwrap();
        assert_eq!(
            o,
            CohomologyAtom::Nonzero {
                degree: 0,
                highest_weight: Weight::zero(3),
                dim: 1
            }
        );
    }

    #[test]
    fn non_levi_dominant_rejected() {
        let err = bott_cohomology(&b3(), &Weight::integral(&[0, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::NotLeviDominant(_)));
    }

    #[test]
    fn reflection_log_replays() {
        let rs = b3();
        let lambda = Weight::integral(&[-7, 2, 1]);
        let trace = dotted_dominant_traced(&rs, &lambda, SelectionPolicy::SmallestIndex).unwrap();
        let BottOutcome::Regular { dominant, .. } = &trace.outcome else {
            panic!("expected regular")
        };
        let mut v = dominant.add(rs.rho()).doubled().to_vec();
        for &i in trace.reflections.iter().rev() {
            rs.reflect(&mut v, i);
        }
        assert_eq!(v, lambda.add(rs.rho()).doubled());
    }
}
