//! Exact arithmetic over the cyclic group `Z_N`.
//!
//! [`CyclicSet`] is a subset of `Z_N` as an indicator bit vector;
//! [`WeightedCyclicVector`] is an integer-weighted function on `Z_N`.
//! Convolution is direct `O(N^2)` integer arithmetic (exactness is the
//! contract; desk-scale N makes FFT pointless), and Fourier zeros are
//! decided exactly through cyclotomic divisibility of the mask polynomial.
//!
//! All values are immutable after construction and safe to share across
//! threads; every operation is a pure function.

pub mod field;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZnError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("element {element} out of range for Z_{modulus}")]
    ElementOutOfRange { element: usize, modulus: usize },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },
    #[error("weight length {len} does not match modulus {modulus}")]
    LengthMismatch { len: usize, modulus: usize },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("{multiplier} is not a unit mod {modulus}")]
    NotAUnit { multiplier: usize, modulus: usize },
    #[error("polynomial division left a remainder")]
    InexactDivision,
}

/// A subset of `Z_N`, stored as an indicator bit vector of length N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicSet {
    modulus: usize,
    bits: Vec<bool>,
}

impl CyclicSet {
    pub fn empty(modulus: usize) -> Result<Self, ZnError> {
        if modulus == 0 {
            return Err(ZnError::ZeroModulus);
        }
        Ok(CyclicSet {
            modulus,
            bits: vec![false; modulus],
        })
    }

    pub fn full(modulus: usize) -> Result<Self, ZnError> {
        if modulus == 0 {
            return Err(ZnError::ZeroModulus);
        }
        Ok(CyclicSet {
            modulus,
            bits: vec![true; modulus],
        })
    }

    /// Builds a set from explicit members; members must already lie in `[0, N)`.
    pub fn from_members<I>(modulus: usize, members: I) -> Result<Self, ZnError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = CyclicSet::empty(modulus)?;
        for m in members {
            if m >= modulus {
                return Err(ZnError::ElementOutOfRange {
                    element: m,
                    modulus,
                });
            }
            set.bits[m] = true;
        }
        Ok(set)
    }

    pub fn singleton(modulus: usize, element: usize) -> Result<Self, ZnError> {
        CyclicSet::from_members(modulus, [element])
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn cardinality(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn contains(&self, element: usize) -> bool {
        self.bits[element % self.modulus]
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<usize> {
        self.iter_members().collect()
    }

    pub fn iter_members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    /// The translate `S + t` (t may be any integer; reduced mod N).
    pub fn translate(&self, t: i64) -> Self {
        let n = self.modulus as i64;
        let shift = t.rem_euclid(n) as usize;
        let mut bits = vec![false; self.modulus];
        for m in self.iter_members() {
            bits[(m + shift) % self.modulus] = true;
        }
        CyclicSet {
            modulus: self.modulus,
            bits,
        }
    }

    /// The dilate `u·S` for a unit u (an affine automorphism of `Z_N`).
    pub fn dilate(&self, u: usize) -> Result<Self, ZnError> {
        if gcd(u % self.modulus, self.modulus) != 1 {
            return Err(ZnError::NotAUnit {
                multiplier: u,
                modulus: self.modulus,
            });
        }
        let mut bits = vec![false; self.modulus];
        for m in self.iter_members() {
            bits[(m * u) % self.modulus] = true;
        }
        Ok(CyclicSet {
            modulus: self.modulus,
            bits,
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self, ZnError> {
        check_same_modulus(self.modulus, other.modulus)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| a | b)
            .collect();
        Ok(CyclicSet {
            modulus: self.modulus,
            bits,
        })
    }

    pub fn is_disjoint(&self, other: &Self) -> Result<bool, ZnError> {
        check_same_modulus(self.modulus, other.modulus)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| !(a && b)))
    }

    pub fn complement(&self) -> Self {
        CyclicSet {
            modulus: self.modulus,
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    /// The indicator function as a weighted vector (weights in {0, 1}).
    pub fn to_vector(&self) -> WeightedCyclicVector {
        WeightedCyclicVector {
            modulus: self.modulus,
            weights: self.bits.iter().map(|&b| i64::from(b)).collect(),
        }
    }
}

impl fmt::Debug for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicSet(Z_{}, {:?})", self.modulus, self.members())
    }
}

impl fmt::Display for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.iter_members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}} mod {}", self.modulus)
    }
}

/// Canonical order: by modulus, then lexicographically by ascending member
/// list. Used everywhere a deterministic ordering of sets is promised.
impl Ord for CyclicSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then_with(|| self.iter_members().cmp(other.iter_members()))
    }
}

impl PartialOrd for CyclicSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An integer-weighted function on `Z_N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedCyclicVector {
    modulus: usize,
    weights: Vec<i64>,
}

impl WeightedCyclicVector {
    pub fn from_weights(modulus: usize, weights: Vec<i64>) -> Result<Self, ZnError> {
        if modulus == 0 {
            return Err(ZnError::ZeroModulus);
        }
        if weights.len() != modulus {
            return Err(ZnError::LengthMismatch {
                len: weights.len(),
                modulus,
            });
        }
        Ok(WeightedCyclicVector { modulus, weights })
    }

    pub fn zero(modulus: usize) -> Result<Self, ZnError> {
        WeightedCyclicVector::from_weights(modulus, vec![0; modulus])
    }

    pub fn constant(modulus: usize, value: i64) -> Result<Self, ZnError> {
        WeightedCyclicVector::from_weights(modulus, vec![value; modulus])
    }

    /// The Dirac delta at `position`.
    pub fn delta(modulus: usize, position: usize) -> Result<Self, ZnError> {
        if position >= modulus {
            return Err(ZnError::ElementOutOfRange {
                element: position,
                modulus,
            });
        }
        let mut weights = vec![0; modulus];
        weights[position] = 1;
        WeightedCyclicVector::from_weights(modulus, weights)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, t: usize) -> i64 {
        self.weights[t % self.modulus]
    }

    pub fn add(&self, other: &Self) -> Result<Self, ZnError> {
        check_same_modulus(self.modulus, other.modulus)?;
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(&a, &b)| a.checked_add(b).ok_or(ZnError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(WeightedCyclicVector {
            modulus: self.modulus,
            weights,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ZnError> {
        check_same_modulus(self.modulus, other.modulus)?;
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(&a, &b)| a.checked_sub(b).ok_or(ZnError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(WeightedCyclicVector {
            modulus: self.modulus,
            weights,
        })
    }

    pub fn neg(&self) -> Self {
        WeightedCyclicVector {
            modulus: self.modulus,
            weights: self.weights.iter().map(|&w| -w).collect(),
        }
    }

    pub fn translate(&self, t: i64) -> Self {
        let n = self.modulus as i64;
        let shift = t.rem_euclid(n) as usize;
        let mut weights = vec![0; self.modulus];
        for (i, &w) in self.weights.iter().enumerate() {
            weights[(i + shift) % self.modulus] = w;
        }
        WeightedCyclicVector {
            modulus: self.modulus,
            weights,
        }
    }

    /// Sum of all weights, wide enough never to overflow.
    pub fn total(&self) -> i128 {
        self.weights.iter().map(|&w| w as i128).sum()
    }

    pub fn is_constant(&self, value: i64) -> bool {
        self.weights.iter().all(|&w| w == value)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant(0)
    }
}

impl fmt::Debug for WeightedCyclicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedCyclicVector(Z_{}, {:?})", self.modulus, self.weights)
    }
}

impl From<&CyclicSet> for WeightedCyclicVector {
    fn from(set: &CyclicSet) -> Self {
        set.to_vector()
    }
}

fn check_same_modulus(left: usize, right: usize) -> Result<(), ZnError> {
    if left != right {
        Err(ZnError::ModulusMismatch { left, right })
    } else {
        Ok(())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Cyclic convolution `(u * v)[t] = sum_s u[s] v[t - s]`, exact.
///
/// Accumulates in i128 and errors (never wraps) if a result weight leaves
/// the i64 range.
pub fn convolve(
    u: &WeightedCyclicVector,
    v: &WeightedCyclicVector,
) -> Result<WeightedCyclicVector, ZnError> {
    check_same_modulus(u.modulus, v.modulus)?;
    let n = u.modulus;
    let mut out = vec![0i128; n];
    for (s, &us) in u.weights.iter().enumerate() {
        if us == 0 {
            continue;
        }
        let us = us as i128;
        for (r, &vr) in v.weights.iter().enumerate() {
            if vr == 0 {
                continue;
            }
            let t = s + r;
            let t = if t >= n { t - n } else { t };
            out[t] += us * vr as i128;
        }
    }
    let weights = out
        .into_iter()
        .map(|w| i64::try_from(w).map_err(|_| ZnError::Overflow))
        .collect::<Result<_, _>>()?;
    WeightedCyclicVector::from_weights(n, weights)
}

/// The set of frequencies `k` with `u_hat(k) = 0`, decided exactly.
///
/// `u_hat(k) = sum_t u[t] z^{tk}` with `z = e^{2 pi i / N}` vanishes iff the
/// cyclotomic polynomial of order `N / gcd(N, k)` divides the mask
/// polynomial of `u` over the integers, so one divisibility test per divisor
/// of N settles every frequency. No floating point is involved.
pub fn dft_zero_set(u: &WeightedCyclicVector) -> CyclicSet {
    let n = u.modulus;
    let mask = u.weights.as_slice();
    let mut vanishing_order = vec![false; n + 1];
    let mut checked: Vec<Option<bool>> = vec![None; n + 1];
    for k in 0..n {
        let d = n / gcd(n, k);
        if checked[d].is_none() {
            checked[d] = Some(poly::divisible_by_cyclotomic(mask, d));
        }
        vanishing_order[d] = checked[d].unwrap();
    }
    let members = (0..n).filter(|&k| vanishing_order[n / gcd(n, k)]);
    CyclicSet::from_members(n, members).expect("indices in range")
}

/// Floating-point DFT, advisory only: cross-checks [`dft_zero_set`] in tests
/// and diagnostics, never feeds an exact decision.
pub fn dft_numeric(u: &WeightedCyclicVector) -> Vec<Complex64> {
    let n = u.modulus;
    let step = 2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, &w) in u.weights.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let angle = step * ((t * k) % n) as f64;
                acc += Complex64::new(angle.cos(), angle.sin()) * w as f64;
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(n: usize, members: &[usize]) -> WeightedCyclicVector {
        CyclicSet::from_members(n, members.iter().copied())
            .unwrap()
            .to_vector()
    }

    /// Independent double-loop convolution oracle.
    fn convolve_oracle(u: &WeightedCyclicVector, v: &WeightedCyclicVector) -> Vec<i64> {
        let n = u.modulus();
        (0..n)
            .map(|t| {
                (0..n)
                    .map(|s| u.weights()[s] * v.weights()[(t + n - s) % n])
                    .sum()
            })
            .collect()
    }

    #[test]
    fn delta_is_convolution_identity() {
        let v = WeightedCyclicVector::from_weights(7, vec![3, -1, 4, 1, -5, 9, 2]).unwrap();
        let delta = WeightedCyclicVector::delta(7, 0).unwrap();
        assert_eq!(convolve(&delta, &v).unwrap(), v);
        assert_eq!(convolve(&v, &delta).unwrap(), v);
    }

    #[test]
    fn interval_convolved_with_complement_tiles_z15() {
        let a = vec_of(15, &[0, 1, 2]);
        let x = vec_of(15, &[0, 3, 6, 9, 12]);
        let conv = convolve(&a, &x).unwrap();
        assert!(conv.is_constant(1));
    }

    #[test]
    fn convolution_matches_double_loop_oracle() {
        // Fixed pseudo-random weights; the oracle is an independent O(N^2)
        // summation.
        let u = WeightedCyclicVector::from_weights(
            12,
            vec![5, -3, 0, 7, 2, -8, 1, 0, 4, -1, 6, -2],
        )
        .unwrap();
        let v = WeightedCyclicVector::from_weights(
            12,
            vec![-4, 2, 9, 0, -7, 3, 1, 5, 0, -6, 2, 8],
        )
        .unwrap();
        let conv = convolve(&u, &v).unwrap();
        assert_eq!(conv.weights(), convolve_oracle(&u, &v).as_slice());
    }

    #[test]
    fn convolution_rejects_modulus_mismatch() {
        let u = WeightedCyclicVector::zero(4).unwrap();
        let v = WeightedCyclicVector::zero(5).unwrap();
        assert!(matches!(
            convolve(&u, &v),
            Err(ZnError::ModulusMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn convolution_overflow_is_an_error_not_a_wrap() {
        let u = WeightedCyclicVector::constant(2, i64::MAX / 2).unwrap();
        let v = WeightedCyclicVector::constant(2, 4).unwrap();
        assert!(matches!(convolve(&u, &v), Err(ZnError::Overflow)));
    }

    #[test]
    fn zero_set_of_all_ones_is_everything_but_zero() {
        for n in 1..=12 {
            let ones = WeightedCyclicVector::constant(n, 1).unwrap();
            let zeros = dft_zero_set(&ones);
            let expected: Vec<usize> = (1..n).collect();
            assert_eq!(zeros.members(), expected, "N = {n}");
        }
    }

    #[test]
    fn zero_set_of_arithmetic_progression_in_z15() {
        // sum_{j<5} z^{3jk} is 5 when k is a multiple of 5 and 0 otherwise.
        let x = vec_of(15, &[0, 3, 6, 9, 12]);
        let zeros = dft_zero_set(&x);
        let expected: Vec<usize> = (0..15).filter(|k| k % 5 != 0).collect();
        assert_eq!(zeros.members(), expected);
    }

    #[test]
    fn zero_set_of_singleton_is_empty() {
        let s = vec_of(9, &[0]);
        assert!(dft_zero_set(&s).is_empty());
        let shifted = vec_of(9, &[4]);
        assert!(dft_zero_set(&shifted).is_empty());
    }

    #[test]
    fn zero_set_of_zero_vector_is_everything() {
        let z = WeightedCyclicVector::zero(6).unwrap();
        assert_eq!(dft_zero_set(&z).cardinality(), 6);
    }

    #[test]
    fn numeric_dft_of_delta_is_all_ones() {
        let delta = WeightedCyclicVector::delta(8, 0).unwrap();
        for value in dft_numeric(&delta) {
            assert!((value - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn numeric_dft_of_all_ones_in_z4() {
        let ones = WeightedCyclicVector::constant(4, 1).unwrap();
        let dft = dft_numeric(&ones);
        assert!((dft[0] - Complex64::new(4.0, 0.0)).norm() < 1e-9);
        for value in &dft[1..] {
            assert!(value.norm() < 1e-9);
        }
    }

    #[test]
    fn translation_preserves_zero_set() {
        let u = WeightedCyclicVector::from_weights(10, vec![2, 0, -1, 3, 0, 0, 1, -2, 0, 4])
            .unwrap();
        let base = dft_zero_set(&u);
        for t in 0..10 {
            assert_eq!(dft_zero_set(&u.translate(t)), base, "t = {t}");
        }
    }
}
