//! Integer polynomials and cyclotomic polynomials.
//!
//! The one fact this module exists to exploit: a weighted character sum
//! `sum_t u[t] z^t` over a primitive d-th root of unity `z` vanishes exactly
//! when the d-th cyclotomic polynomial divides the mask polynomial
//! `sum_t u[t] x^t` in `Z[x]`. Divisibility is decided with exact integer
//! arithmetic; an i64 fast path falls back to `BigInt` on overflow, so the
//! answer is never wrong and never wraps.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::ZnError;

/// Dense integer polynomial, coefficients in ascending degree order.
///
/// Normalized form has no trailing zero coefficients; the zero polynomial is
/// the empty coefficient vector. Arithmetic is checked: overflow reports an
/// error instead of wrapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<i64>,
}

impl IntegerPolynomial {
    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    /// `x^n - 1`.
    pub fn power_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = -1;
        coeffs[n] = 1;
        IntegerPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<i64> {
        self.coeffs.last().copied()
    }

    /// Exact division by a monic divisor. Errors if the division leaves a
    /// remainder or an intermediate coefficient overflows i64.
    pub fn div_exact_monic(&self, divisor: &IntegerPolynomial) -> Result<Self, ZnError> {
        assert_eq!(
            divisor.leading_coefficient(),
            Some(1),
            "divisor must be monic"
        );
        let m = divisor.coeffs.len();
        if self.is_zero() {
            return Ok(IntegerPolynomial::zero());
        }
        let n = self.coeffs.len();
        if m > n {
            return Err(ZnError::InexactDivision);
        }
        let mut rem: Vec<i64> = self.coeffs.clone();
        let mut quot = vec![0i64; n - m + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + m - 1];
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let prod = c.checked_mul(d).ok_or(ZnError::Overflow)?;
                rem[i + j] = rem[i + j].checked_sub(prod).ok_or(ZnError::Overflow)?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(ZnError::InexactDivision);
        }
        Ok(IntegerPolynomial::from_coeffs(quot))
    }
}

fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Euler totient.
pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<usize, Arc<IntegerPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<IntegerPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The d-th cyclotomic polynomial, memoized per process.
///
/// Computed by iterated exact division of `x^d - 1` by the cyclotomic
/// polynomials of the proper divisors of `d`. Intended for d up to a few
/// thousand; panics on d = 0 and on (unreachable at that scale) coefficient
/// overflow.
pub fn cyclotomic(d: usize) -> Arc<IntegerPolynomial> {
    assert!(d >= 1, "cyclotomic order must be positive");
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&d) {
        return Arc::clone(hit);
    }
    let mut poly = IntegerPolynomial::power_minus_one(d);
    for e in divisors(d) {
        if e == d {
            continue;
        }
        let phi_e = cyclotomic(e);
        poly = poly
            .div_exact_monic(&phi_e)
            .expect("x^d - 1 is divisible by every cyclotomic factor");
    }
    debug_assert_eq!(poly.degree(), Some(euler_phi(d)));
    let arc = Arc::new(poly);
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(d, Arc::clone(&arc));
    arc
}

/// Decides whether the d-th cyclotomic polynomial divides the mask
/// polynomial with the given coefficients (ascending order).
///
/// Reduces first modulo `x^d - 1` (a cheap index wrap), then modulo the
/// cyclotomic polynomial itself. The reduction runs in checked i128 and
/// retries in `BigInt` if it would overflow, so the verdict is exact for any
/// input.
pub fn divisible_by_cyclotomic(coeffs: &[i64], d: usize) -> bool {
    let phi = cyclotomic(d);
    // Wrap exponents mod d; coefficients of the wrap fit i128 comfortably.
    let mut wrapped = vec![0i128; d];
    for (e, &c) in coeffs.iter().enumerate() {
        wrapped[e % d] += c as i128;
    }
    match rem_monic_i128(&wrapped, phi.coeffs()) {
        Some(rem) => rem.iter().all(|&c| c == 0),
        None => rem_monic_big(&wrapped, phi.coeffs()).iter().all(Zero::is_zero),
    }
}

/// Divisibility test for polynomials given directly in `BigInt`
/// coefficients (used when denominators have already been cleared).
pub fn divisible_by_cyclotomic_big(coeffs: &[BigInt], d: usize) -> bool {
    let phi = cyclotomic(d);
    let mut wrapped = vec![BigInt::zero(); d];
    for (e, c) in coeffs.iter().enumerate() {
        wrapped[e % d] += c;
    }
    rem_monic_bigint(&wrapped, phi.coeffs())
        .iter()
        .all(Zero::is_zero)
}

fn rem_monic_bigint(value: &[BigInt], divisor: &[i64]) -> Vec<BigInt> {
    let m = divisor.len();
    let big_div: Vec<BigInt> = divisor.iter().map(|&d| BigInt::from(d)).collect();
    let mut rem: Vec<BigInt> = value.to_vec();
    while rem.len() >= m {
        let c = rem.last().unwrap().clone();
        let top = rem.len() - 1;
        if !c.is_zero() {
            for (j, d) in big_div.iter().enumerate() {
                let idx = top - (m - 1) + j;
                rem[idx] -= &c * d;
            }
        }
        rem.pop();
        while rem.last().map(|c| c.is_zero()).unwrap_or(false) && rem.len() >= m {
            rem.pop();
        }
    }
    rem
}

/// Remainder of `value` modulo a monic divisor, in checked i128.
/// Returns `None` if any intermediate would overflow.
fn rem_monic_i128(value: &[i128], divisor: &[i64]) -> Option<Vec<i128>> {
    let m = divisor.len();
    debug_assert!(m >= 1 && divisor[m - 1] == 1);
    let mut rem: Vec<i128> = value.to_vec();
    while rem.len() >= m {
        let c = *rem.last().unwrap();
        let top = rem.len() - 1;
        if c != 0 {
            for (j, &d) in divisor.iter().enumerate() {
                let prod = c.checked_mul(d as i128)?;
                let idx = top - (m - 1) + j;
                rem[idx] = rem[idx].checked_sub(prod)?;
            }
        }
        rem.pop();
        while rem.last() == Some(&0) && rem.len() >= m {
            rem.pop();
        }
    }
    Some(rem)
}

fn rem_monic_big(value: &[i128], divisor: &[i64]) -> Vec<BigInt> {
    let value: Vec<BigInt> = value.iter().map(|&c| BigInt::from(c)).collect();
    rem_monic_bigint(&value, divisor)
}

/// Largest absolute coefficient, for diagnostics.
pub fn height(poly: &IntegerPolynomial) -> i64 {
    poly.coeffs().iter().map(|c| c.abs()).max().unwrap_or(0)
}
