//! Characters of type `B_n` representations: Weyl dimension, Freudenthal
//! multiplicities, greedy decomposition, tensor and symmetric/alternating powers.
//!
//! Characters are explicit weight multisets keyed on doubled coordinates. The
//! plethysms needed here are powers of a four-dimensional representation, so
//! the multisets stay small.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::weights::{RootSystemB, Weight};

/// Weight multiset. Multiplicities are kept signed while a decomposition is
/// in progress; published characters only hold positive entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Character {
    entries: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (Weight, u64)>>(entries: I) -> Self {
        let mut c = Character::new();
        for (w, m) in entries {
            c.add(w, m as i64);
        }
        c
    }

    pub fn add(&mut self, w: Weight, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.entries.get_mut(&w) {
            Some(e) => {
                *e += mult;
                if *e == 0 {
                    self.entries.remove(&w);
                }
            }
            None => {
                self.entries.insert(w, mult);
            }
        }
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0).max(0) as u64
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m as u64))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total mass, i.e. the dimension of the representation.
    pub fn dimension(&self) -> u64 {
        self.entries.values().map(|&m| m as u64).sum()
    }

    pub fn is_weyl_invariant(&self) -> bool {
        self.entries.iter().all(|(w, &m)| {
            w.weyl_orbit()
                .iter()
                .all(|o| self.entries.get(o).copied().unwrap_or(0) == m)
        })
    }

    /// Pointwise product of characters.
    pub fn product(&self, other: &Character) -> Character {
        let mut acc: HashMap<Weight, i64> = HashMap::new();
        for (a, ma) in &self.entries {
            for (b, mb) in &other.entries {
                *acc.entry(a.add(b)).or_insert(0) += ma * mb;
            }
        }
        Character {
            entries: acc.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    /// Character of the `k`-th symmetric power.
    pub fn sym_power(&self, k: usize) -> Character {
        self.power(k, true)
    }

    /// Character of the `k`-th exterior power.
    pub fn alt_power(&self, k: usize) -> Character {
        self.power(k, false)
    }

    fn power(&self, k: usize, symmetric: bool) -> Character {
        let Some(rank) = self.entries.keys().next().map(Weight::rank) else {
            return Character::new();
        };
        // layers[j] = weights of degree-j monomials in the basis vectors seen so far
        let mut layers: Vec<HashMap<Weight, i64>> = vec![HashMap::new(); k + 1];
        layers[0].insert(Weight::zero(rank), 1);
        for (w, &mult) in &self.entries {
            for _ in 0..mult {
                let mut next: Vec<HashMap<Weight, i64>> = vec![HashMap::new(); k + 1];
                for j in 0..=k {
                    let max_m = if symmetric { j } else { j.min(1) };
                    for m in 0..=max_m {
                        let shift = w.scale(m as i64);
                        for (v, c) in &layers[j - m] {
                            *next[j].entry(v.add(&shift)).or_insert(0) += c;
                        }
                    }
                }
                layers = next;
            }
        }
        Character {
            entries: layers.swap_remove(k).into_iter().collect(),
        }
    }

    fn subtract_scaled(&mut self, other: &Character, times: i64) -> Result<()> {
        for (w, m) in &other.entries {
            let e = self.entries.entry(w.clone()).or_insert(0);
            *e -= m * times;
            if *e < 0 {
                return Err(Error::NotACharacter {
                    weight: w.to_string(),
                });
            }
            if *e == 0 {
                self.entries.remove(w);
            }
        }
        Ok(())
    }
}

/// Sum of irreducibles keyed by dominant highest weight.
pub type IrrepSum = BTreeMap<Weight, u64>;

/// Total dimension of an irrep sum.
pub fn irrep_sum_dimension(rs: &RootSystemB, sum: &IrrepSum) -> Result<u64> {
    let mut total = 0;
    for (w, m) in sum {
        total += m * weyl_dimension(rs, w)?;
    }
    Ok(total)
}

fn require_dominant(rs: &RootSystemB, mu: &Weight) -> Result<()> {
    rs.check(mu)?;
    if !rs.is_g_dominant(mu) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    Ok(())
}

/// Weyl dimension formula `prod (mu + rho, alpha) / (rho, alpha)` over positive roots.
pub fn weyl_dimension(rs: &RootSystemB, mu: &Weight) -> Result<u64> {
    require_dominant(rs, mu)?;
    let shifted = mu.add(rs.rho());
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for alpha in rs.positive_roots() {
        num *= shifted.dot4(alpha) as i128;
        den *= rs.rho().dot4(alpha) as i128;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    assert!(
        den == 1 && num > 0,
        "Weyl dimension of {mu} is not a positive integer"
    );
    Ok(num as u64)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Dominant weights `mu` with `lambda - mu` a nonnegative sum of simple roots.
fn dominant_weights_below(rs: &RootSystemB, lambda: &Weight) -> Vec<Weight> {
    let n = rs.rank();
    let lam = lambda.doubled();
    let parity = lam[0].rem_euclid(2);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        lam: &[i64],
        parity: i64,
        cur: &mut Vec<i64>,
        partial: i64,
        upper: i64,
        out: &mut Vec<Weight>,
    ) {
        let i = cur.len();
        if i == lam.len() {
            out.push(Weight::from_doubled_unchecked(cur.clone()));
            return;
        }
        // c_i = partial + lam_i - mu_i >= 0, mu_i <= upper, mu_i >= 0, same parity
        let hi = upper.min(partial + lam[i]);
        let mut mu = hi;
        if mu.rem_euclid(2) != parity {
            mu -= 1;
        }
        while mu >= 0 {
            cur.push(mu);
            rec(lam, parity, cur, partial + lam[i] - mu, mu, out);
            cur.pop();
            mu -= 2;
        }
    }
    rec(lam, parity, &mut cur, 0, i64::MAX, &mut out);
    out
}

type DiagramKey = (usize, Weight);

fn diagram_cache() -> &'static RwLock<HashMap<DiagramKey, Arc<Character>>> {
    static CACHE: OnceLock<RwLock<HashMap<DiagramKey, Arc<Character>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Full weight diagram of the irreducible representation with highest weight `mu`.
pub fn freudenthal_multiplicities(rs: &RootSystemB, mu: &Weight) -> Result<Arc<Character>> {
    require_dominant(rs, mu)?;
    let key = (rs.rank(), mu.clone());
    if let Some(c) = diagram_cache().read().unwrap().get(&key) {
        return Ok(c.clone());
    }
    let dominant_mults = freudenthal_dominant(rs, mu);
    let mut diagram = Character::new();
    for (w, m) in &dominant_mults {
        for o in w.weyl_orbit() {
            diagram.add(o, *m);
        }
    }
    let diagram = Arc::new(diagram);
    diagram_cache()
        .write()
        .unwrap()
        .insert(key, diagram.clone());
    Ok(diagram)
}

/// Freudenthal recursion on dominant weights, processed by increasing depth.
fn freudenthal_dominant(rs: &RootSystemB, lambda: &Weight) -> HashMap<Weight, i64> {
    let mut candidates = dominant_weights_below(rs, lambda);
    let lam = lambda.doubled();
    let depth = |w: &Weight| -> i64 {
        // sum of simple-root coefficients of lambda - w
        let mut partial = 0;
        let mut total = 0;
        for (a, b) in lam.iter().zip(w.doubled()) {
            partial += a - b;
            total += partial;
        }
        total
    };
    candidates.sort_by_key(|w| depth(w));
    let shifted_top = lambda.add(rs.rho());
    let top_norm = shifted_top.dot4(&shifted_top);
    let mut mult: HashMap<Weight, i64> = HashMap::new();
    for mu in candidates {
        if &mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let sm = mu.add(rs.rho());
        let denom = top_norm - sm.dot4(&sm);
        assert!(denom > 0, "Freudenthal denominator vanished at {mu}");
        let mut numer = 0i64;
        for alpha in rs.positive_roots() {
            let mut j = 1;
            loop {
                let nu = mu.add(&alpha.scale(j));
                let m = mult.get(&nu.dominant_conjugate()).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                numer += m * nu.dot4(alpha);
                j += 1;
            }
        }
        let numer = 2 * numer;
        assert!(
            numer % denom == 0,
            "Freudenthal multiplicity of {mu} not integral"
        );
        let m = numer / denom;
        if m > 0 {
            mult.insert(mu, m);
        }
    }
    mult
}

/// Expands an irrep sum into its character.
pub fn expand(rs: &RootSystemB, sum: &IrrepSum) -> Result<Character> {
    let mut c = Character::new();
    for (w, &m) in sum {
        let d = freudenthal_multiplicities(rs, w)?;
        for (v, vm) in d.iter() {
            c.add(v.clone(), (vm * m) as i64);
        }
    }
    Ok(c)
}

/// Greedy highest-weight subtraction: the lexicographically largest weight
/// left over is dominant and is a highest weight of the remainder.
pub fn decompose_character(rs: &RootSystemB, c: &Character) -> Result<IrrepSum> {
    let mut rest = c.clone();
    let mut out = IrrepSum::new();
    while let Some((top, &m)) = rest.entries.iter().next_back() {
        let top = top.clone();
        if m < 0 || !rs.is_g_dominant(&top) {
            return Err(Error::NotACharacter {
                weight: top.to_string(),
            });
        }
        let diagram = freudenthal_multiplicities(rs, &top)?;
        rest.subtract_scaled(&diagram, m)?;
        *out.entry(top).or_insert(0) += m as u64;
    }
    Ok(out)
}

type TensorCache = RwLock<HashMap<(usize, Weight, Weight), Arc<IrrepSum>>>;

fn tensor_cache() -> &'static TensorCache {
    static CACHE: OnceLock<TensorCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn tensor_irreps(rs: &RootSystemB, mu: &Weight, nu: &Weight) -> Result<Arc<IrrepSum>> {
    require_dominant(rs, mu)?;
    require_dominant(rs, nu)?;
    let key = if mu <= nu {
        (rs.rank(), mu.clone(), nu.clone())
    } else {
        (rs.rank(), nu.clone(), mu.clone())
    };
    if let Some(s) = tensor_cache().read().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let cm = freudenthal_multiplicities(rs, mu)?;
    let cn = freudenthal_multiplicities(rs, nu)?;
    let sum = decompose_character(rs, &cm.product(&cn))?;
    assert_eq!(
        irrep_sum_dimension(rs, &sum)?,
        weyl_dimension(rs, mu)? * weyl_dimension(rs, nu)?,
        "dimension not multiplicative for {mu} (x) {nu}"
    );
    let sum = Arc::new(sum);
    tensor_cache().write().unwrap().insert(key, sum.clone());
    Ok(sum)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

pub fn sym_power_irrep(rs: &RootSystemB, k: usize, mu: &Weight) -> Result<IrrepSum> {
    let d = weyl_dimension(rs, mu)?;
    let c = freudenthal_multiplicities(rs, mu)?.sym_power(k);
    let sum = decompose_character(rs, &c)?;
    assert_eq!(
        irrep_sum_dimension(rs, &sum)?,
        binomial(d + k as u64 - 1, k as u64),
        "Sym^{k} dimension mismatch for {mu}"
    );
    Ok(sum)
}

pub fn alt_power_irrep(rs: &RootSystemB, k: usize, mu: &Weight) -> Result<IrrepSum> {
    let d = weyl_dimension(rs, mu)?;
    let c = freudenthal_multiplicities(rs, mu)?.alt_power(k);
    let sum = decompose_character(rs, &c)?;
    assert_eq!(
        irrep_sum_dimension(rs, &sum)?,
        binomial(d, k as u64),
        "Alt^{k} dimension mismatch for {mu}"
    );
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(halves: &[i64]) -> Weight {
        Weight::from_doubled(halves.to_vec()).unwrap()
    }

    fn b2() -> RootSystemB {
        RootSystemB::new(2).unwrap()
    }

    fn b3() -> RootSystemB {
        RootSystemB::new(3).unwrap()
    }

    /// Weyl dimension by the raw product formula in `f64`, independent of the
    /// exact routine's cancellation order.
    fn float_dim(rs: &RootSystemB, mu: &Weight) -> f64 {
        let s = mu.add(rs.rho());
        rs.positive_roots()
            .iter()
            .map(|a| s.dot4(a) as f64 / rs.rho().dot4(a) as f64)
            .product()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(weyl_dimension(&b3(), &Weight::zero(3)).unwrap(), 1);
        assert_eq!(
            weyl_dimension(&b3(), &Weight::integral(&[1, 0, 0])).unwrap(),
            7
        );
        assert_eq!(weyl_dimension(&b3(), &w(&[1, 1, 1])).unwrap(), 8);
        assert_eq!(weyl_dimension(&b3(), &w(&[3, 1, 1])).unwrap(), 48);
        assert_eq!(weyl_dimension(&b2(), &w(&[1, 1])).unwrap(), 4);
        assert_eq!(
            weyl_dimension(&b2(), &Weight::integral(&[1, 1])).unwrap(),
            10
        );
        for mu in [w(&[3, 1, 1]), Weight::integral(&[2, 1, 0]), w(&[7, 5, 3])] {
            let exact = weyl_dimension(&b3(), &mu).unwrap() as f64;
            assert!((exact - float_dim(&b3(), &mu)).abs() < 1e-6);
        }
    }

    #[test]
    fn non_dominant_rejected() {
        assert!(matches!(
            weyl_dimension(&b3(), &Weight::integral(&[0, 1, 0])),
            Err(Error::NotDominant(_))
        ));
        assert!(freudenthal_multiplicities(&b2(), &w(&[-1, 1])).is_err());
    }

    #[test]
    fn spin_and_vector_diagrams() {
        let spin = freudenthal_multiplicities(&b2(), &w(&[1, 1])).unwrap();
        assert_eq!(spin.len(), 4);
        for (wt, m) in spin.iter() {
            assert_eq!(m, 1);
            assert!(wt.doubled().iter().all(|k| k.abs() == 1));
        }
        let vec7 = freudenthal_multiplicities(&b3(), &Weight::integral(&[1, 0, 0])).unwrap();
        assert_eq!(vec7.len(), 7);
        assert_eq!(vec7.multiplicity(&Weight::zero(3)), 1);
        let triv = freudenthal_multiplicities(&b3(), &Weight::zero(3)).unwrap();
        assert_eq!(triv.len(), 1);
    }

    #[test]
    fn adjoint_zero_weight_multiplicity() {
        // so(7) adjoint: 18 roots plus a 3-dimensional zero weight space
        let adj = freudenthal_multiplicities(&b3(), &Weight::integral(&[1, 1, 0])).unwrap();
        assert_eq!(adj.dimension(), 21);
        assert_eq!(adj.multiplicity(&Weight::zero(3)), 3);
        assert!(adj.is_weyl_invariant());
    }

    #[test]
    fn spin_tensor_spin_b2() {
        let s = w(&[1, 1]);
        let sum = tensor_irreps(&b2(), &s, &s).unwrap();
        let expect: IrrepSum = [
            (Weight::integral(&[1, 1]), 1),
            (Weight::integral(&[1, 0]), 1),
            (Weight::zero(2), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(*sum, expect);
    }

    #[test]
    fn spin_tensor_vector_b3() {
        let sum = tensor_irreps(&b3(), &w(&[1, 1, 1]), &Weight::integral(&[1, 0, 0])).unwrap();
        let expect: IrrepSum = [(w(&[3, 1, 1]), 1), (w(&[1, 1, 1]), 1)]
            .into_iter()
            .collect();
        assert_eq!(*sum, expect);
    }

    #[test]
    fn trivial_tensor() {
        let nu = Weight::integral(&[2, 1]);
        let sum = tensor_irreps(&b2(), &Weight::zero(2), &nu).unwrap();
        assert_eq!(sum.len(), 1);
        assert_eq!(sum.get(&nu), Some(&1));
    }

    #[test]
    fn sym_powers_of_spin_b2_irreducible() {
        let s = w(&[1, 1]);
        for k in 0..=12 {
            let sum = sym_power_irrep(&b2(), k, &s).unwrap();
            assert_eq!(sum.len(), 1, "k = {k}");
            assert_eq!(sum.get(&w(&[k as i64, k as i64])), Some(&1));
        }
    }

    #[test]
    fn alt_square_of_spin_b2() {
        let sum = alt_power_irrep(&b2(), 2, &w(&[1, 1])).unwrap();
        let expect: IrrepSum = [(Weight::integral(&[1, 0]), 1), (Weight::zero(2), 1)]
            .into_iter()
            .collect();
        assert_eq!(sum, expect);
    }

    #[test]
    fn zeroth_powers_are_trivial() {
        let mu = Weight::integral(&[1, 0, 0]);
        let triv: IrrepSum = [(Weight::zero(3), 1)].into_iter().collect();
        assert_eq!(sym_power_irrep(&b3(), 0, &mu).unwrap(), triv);
        assert_eq!(alt_power_irrep(&b3(), 0, &mu).unwrap(), triv);
    }

    #[test]
    fn not_a_character() {
        let c = Character::from_entries([(w(&[1, 1]), 1)]);
        assert!(matches!(
            decompose_character(&b2(), &c),
            Err(Error::NotACharacter { .. })
        ));
    }

    #[test]
    fn round_trip_small() {
        let sum: IrrepSum = [(Weight::integral(&[1, 0]), 1), (Weight::zero(2), 1)]
            .into_iter()
            .collect();
        let c = expand(&b2(), &sum).unwrap();
        assert_eq!(decompose_character(&b2(), &c).unwrap(), sum);
    }
}
