//! Exact arithmetic in cyclotomic fields `Q(z_M)`, represented as
//! `Q[x] / Phi_M(x)`.
//!
//! This is the same cyclotomic kernel that decides Fourier zeros, lifted to
//! rational coefficients so that linear systems over roots of unity (the
//! Vandermonde criterion) can be solved exactly. The order M is chosen
//! divisible by 4 whenever the imaginary unit is needed, since
//! `i = z_M^(M/4)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic, euler_phi};

/// The field `Q(z_M)`; elements are polynomials of degree < phi(M) in the
/// primitive M-th root of unity.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    order: usize,
    degree: usize,
    /// Coefficients of Phi_M, ascending, as rationals.
    modulus: Vec<BigRational>,
}

/// An element of a [`CyclotomicField`]; `coeffs[j]` multiplies `z_M^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElem {
    coeffs: Vec<BigRational>,
}

impl CyclotomicField {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let phi = cyclotomic(order);
        let modulus = phi
            .coeffs()
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        CyclotomicField {
            order,
            degree: euler_phi(order),
            modulus,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem { coeffs: Vec::new() }
    }

    pub fn one(&self) -> CycloElem {
        CycloElem {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_rational(&self, q: BigRational) -> CycloElem {
        if q.is_zero() {
            self.zero()
        } else {
            CycloElem { coeffs: vec![q] }
        }
    }

    /// `z_M^k`, reduced modulo Phi_M.
    pub fn root_power(&self, k: usize) -> CycloElem {
        let k = k % self.order;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        self.reduce(coeffs)
    }

    /// The complex rational `re + i*im`; requires 4 | M.
    pub fn from_complex_rational(&self, re: BigRational, im: BigRational) -> CycloElem {
        assert!(
            self.order.is_multiple_of(4),
            "imaginary unit needs an order divisible by 4"
        );
        let i = self.root_power(self.order / 4);
        let re_elem = self.from_rational(re);
        let im_elem = self.mul(&i, &self.from_rational(im));
        self.add(&re_elem, &im_elem)
    }

    pub fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in a.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        trim(&mut coeffs);
        CycloElem { coeffs }
    }

    pub fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); n];
        for (i, c) in a.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        trim(&mut coeffs);
        CycloElem { coeffs }
    }

    pub fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in the
    /// rational polynomial ring. Returns `None` for zero. Phi_M is
    /// irreducible over Q, so every nonzero element is invertible.
    pub fn inv(&self, a: &CycloElem) -> Option<CycloElem> {
        if a.coeffs.is_empty() {
            return None;
        }
        // Invariants: old_r = old_s * a (mod Phi), r = s * a (mod Phi).
        let mut old_r = a.coeffs.clone();
        let mut r = self.modulus.clone();
        let mut old_s = vec![BigRational::one()];
        let mut s: Vec<BigRational> = Vec::new();
        while !r.is_empty() {
            let (q, rem) = poly_div_rem(&old_r, &r);
            let qs = poly_mul(&q, &s);
            let new_s = poly_sub(&old_s, &qs);
            old_r = r;
            r = rem;
            old_s = s;
            s = new_s;
        }
        // old_r is now a nonzero constant gcd.
        debug_assert_eq!(old_r.len(), 1);
        let scale = old_r[0].recip();
        let coeffs = old_s.into_iter().map(|c| c * &scale).collect();
        Some(self.reduce(coeffs))
    }

    pub fn is_zero(&self, a: &CycloElem) -> bool {
        a.coeffs.is_empty()
    }

    fn reduce(&self, mut coeffs: Vec<BigRational>) -> CycloElem {
        let m = self.modulus.len();
        while coeffs.len() >= m {
            let lead = coeffs.last().unwrap().clone();
            let top = coeffs.len() - 1;
            if !lead.is_zero() {
                for (j, d) in self.modulus.iter().enumerate() {
                    let idx = top - (m - 1) + j;
                    let delta = &lead * d;
                    coeffs[idx] -= delta;
                }
            }
            coeffs.pop();
        }
        trim(&mut coeffs);
        debug_assert!(coeffs.len() <= self.degree);
        CycloElem { coeffs }
    }

    /// Floating-point image of the element, for diagnostics.
    pub fn to_complex(&self, a: &CycloElem) -> num_complex::Complex64 {
        let step = 2.0 * std::f64::consts::PI / self.order as f64;
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (j, c) in a.coeffs.iter().enumerate() {
            let angle = step * j as f64;
            let c = rational_to_f64(c);
            acc += num_complex::Complex64::new(angle.cos(), angle.sin()) * c;
        }
        acc
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    let numer = q.numer();
    let denom = q.denom();
    let n: f64 = numer.to_string().parse().unwrap_or(if numer.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let d: f64 = denom.to_string().parse().unwrap_or(f64::INFINITY);
    n / d
}

fn trim(coeffs: &mut Vec<BigRational>) {
    while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
        coeffs.pop();
    }
}

fn poly_div_rem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty());
    let m = den.len();
    if num.len() < m {
        return (Vec::new(), num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigRational::zero(); num.len() - m + 1];
    let lead_inv = den[m - 1].recip();
    for i in (0..quot.len()).rev() {
        let c = &rem[i + m - 1] * &lead_inv;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                let delta = &c * d;
                rem[i + j] -= delta;
            }
        }
        quot[i] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}
