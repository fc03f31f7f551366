//! Dimension bookkeeping along the long exact sequence of a short exact sequence.
//!
//! The sequence is flattened to `V_0 -> V_1 -> ... -> V_L`, with three slots per
//! cohomological degree (`first_i, middle_i, last_i`). Exactness says
//! `dim V_t = rank(f_(t-1)) + rank(f_t)`, so the solver keeps an integer interval
//! for every dimension and every rank and tightens them to a fixpoint.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Interval of possible dimensions. `hi == u64::MAX` means no upper bound yet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DimInterval {
    pub lo: u64,
    pub hi: u64,
}

impl DimInterval {
    pub const UNKNOWN: DimInterval = DimInterval {
        lo: 0,
        hi: u64::MAX,
    };
    pub const ZERO: DimInterval = DimInterval { lo: 0, hi: 0 };

    pub fn exact(d: u64) -> Self {
        DimInterval { lo: d, hi: d }
    }

    pub fn new(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        DimInterval { lo, hi }
    }

    pub fn forced(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<u64> {
        self.forced().then_some(self.lo)
    }

    pub fn is_bounded(&self) -> bool {
        self.hi != u64::MAX
    }

    pub fn is_forced_zero(&self) -> bool {
        self.hi == 0
    }

    /// Whether the dimension could be nonzero.
    pub fn maybe_nonzero(&self) -> bool {
        self.hi > 0
    }

    pub fn contains(&self, d: u64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn width(&self) -> u64 {
        self.hi - self.lo
    }
}

impl fmt::Display for DimInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forced() {
            write!(f, "{}", self.lo)
        } else if self.is_bounded() {
            write!(f, "[{}, {}]", self.lo, self.hi)
        } else {
            write!(f, "[{}, inf)", self.lo)
        }
    }
}

/// Lower bound on the rank of the connecting map `last_degree -> first_(degree+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankHint {
    pub degree: usize,
    pub min_rank: u64,
    pub label: String,
}

/// Long exact sequence of a short exact sequence `0 -> A -> B -> C -> 0`.
///
/// `first`, `middle`, `last` are the three columns in sequence order, indexed
/// by degree. For a covariant functor they are `(A, B, C)`; for `Hom(-, Y)`
/// they are `(C, B, A)`. All columns vanish above the last listed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LESProblem {
    pub first: Vec<DimInterval>,
    pub middle: Vec<DimInterval>,
    pub last: Vec<DimInterval>,
    pub hints: Vec<RankHint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesSolution {
    pub first: Vec<DimInterval>,
    pub middle: Vec<DimInterval>,
    pub last: Vec<DimInterval>,
}

impl LESProblem {
    pub fn covariant(sub: Vec<DimInterval>, mid: Vec<DimInterval>, quot: Vec<DimInterval>) -> Self {
        LESProblem {
            first: sub,
            middle: mid,
            last: quot,
            hints: Vec::new(),
        }
    }

    pub fn contravariant(
        sub: Vec<DimInterval>,
        mid: Vec<DimInterval>,
        quot: Vec<DimInterval>,
    ) -> Self {
        LESProblem {
            first: quot,
            middle: mid,
            last: sub,
            hints: Vec::new(),
        }
    }

    pub fn with_hint(mut self, hint: RankHint) -> Self {
        self.hints.push(hint);
        self
    }

    fn degrees(&self) -> usize {
        self.first.len().max(self.middle.len()).max(self.last.len())
    }

    /// Alternating-sum check `chi(first) - chi(middle) + chi(last) = 0`,
    /// meaningful only when every slot is forced.
    pub fn euler_consistent(&self) -> Option<bool> {
        let mut total: i128 = 0;
        for (col, sign) in [(&self.first, 1i128), (&self.middle, -1), (&self.last, 1)] {
            for (i, d) in col.iter().enumerate() {
                let v = d.value()? as i128;
                total += if i % 2 == 0 { sign * v } else { -sign * v };
            }
        }
        Some(total == 0)
    }
}

const INF: i128 = u64::MAX as i128;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Iv {
    lo: i128,
    hi: i128,
}

fn slot_name(t: usize) -> (&'static str, usize) {
    (["first", "middle", "last"][t % 3], t / 3)
}

pub fn les_solve(p: &LESProblem) -> Result<LesSolution> {
    let deg = p.degrees();
    let get = |col: &Vec<DimInterval>, i: usize| col.get(i).copied().unwrap_or(DimInterval::ZERO);
    let mut v: Vec<Iv> = (0..deg)
        .flat_map(|i| [get(&p.first, i), get(&p.middle, i), get(&p.last, i)])
        .map(|d| Iv {
            lo: d.lo as i128,
            hi: if d.is_bounded() { d.hi as i128 } else { INF },
        })
        .collect();
    let len = v.len();
    // r[t] is the rank of V_t -> V_(t+1); the final map lands in zero
    let mut r: Vec<Iv> = vec![Iv { lo: 0, hi: INF }; len];
    r[len - 1] = Iv { lo: 0, hi: 0 };
    for h in &p.hints {
        let t = 3 * h.degree + 2;
        if t + 1 >= len {
            return Err(Error::Contradiction {
                slot: "connecting map".into(),
                degree: h.degree,
                detail: format!("hint '{}' points past the top degree", h.label),
            });
        }
        r[t].lo = r[t].lo.max(h.min_rank as i128);
    }
    let rank_at = |r: &Vec<Iv>, t: isize| -> Iv {
        if t < 0 {
            Iv { lo: 0, hi: 0 }
        } else {
            r[t as usize]
        }
    };
    let sub = |a: i128, b: i128| if a >= INF { INF } else { (a - b).max(-1) };
    let add = |a: i128, b: i128| (a + b).min(INF);

    let mut changed = true;
    let mut rounds = 0;
    while changed {
        changed = false;
        rounds += 1;
        assert!(rounds < 100_000, "LES propagation failed to converge");
        for t in 0..len {
            let prev = rank_at(&r, t as isize - 1);
            let cur = r[t];
            let lo = v[t].lo.max(prev.lo + cur.lo);
            let hi = v[t].hi.min(add(prev.hi, cur.hi));
            if (lo, hi) != (v[t].lo, v[t].hi) {
                v[t] = Iv { lo, hi };
                changed = true;
            }
        }
        for t in 0..len {
            let prev = rank_at(&r, t as isize - 1);
            let mut lo = r[t].lo.max(v[t].lo - prev.hi.min(v[t].lo));
            let mut hi = r[t].hi.min(v[t].hi).min(sub(v[t].hi, prev.lo));
            if t + 1 < len {
                let next = r.get(t + 1).copied().unwrap_or(Iv { lo: 0, hi: 0 });
                lo = lo.max(v[t + 1].lo - next.hi.min(v[t + 1].lo));
                hi = hi.min(v[t + 1].hi).min(sub(v[t + 1].hi, next.lo));
            }
            if (lo, hi) != (r[t].lo, r[t].hi) {
                r[t] = Iv { lo, hi };
                changed = true;
            }
        }
        for t in 0..len {
            if v[t].lo > v[t].hi {
                let (slot, degree) = slot_name(t);
                return Err(Error::Contradiction {
                    slot: slot.into(),
                    degree,
                    detail: format!("dimension bounds crossed ({} > {})", v[t].lo, v[t].hi),
                });
            }
            if r[t].lo > r[t].hi {
                let (slot, degree) = slot_name(t);
                return Err(Error::Contradiction {
                    slot: format!("map out of {slot}"),
                    degree,
                    detail: format!("rank bounds crossed ({} > {})", r[t].lo, r[t].hi),
                });
            }
        }
    }
    let out = |t: usize| -> Result<DimInterval> {
        if v[t].hi >= INF {
            let (slot, degree) = slot_name(t);
            return Err(Error::Unbounded {
                slot: slot.into(),
                degree,
            });
        }
        Ok(DimInterval::new(v[t].lo as u64, v[t].hi as u64))
    };
    let mut sol = LesSolution {
        first: Vec::with_capacity(deg),
        middle: Vec::with_capacity(deg),
        last: Vec::with_capacity(deg),
    };
    for i in 0..deg {
        sol.first.push(out(3 * i)?);
        sol.middle.push(out(3 * i + 1)?);
        sol.last.push(out(3 * i + 2)?);
    }
    Ok(sol)
}
