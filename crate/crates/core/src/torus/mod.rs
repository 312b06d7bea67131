//! Exact points on a circle with formal irrational parts, rational
//! equivalence classes, rational-frequency exponential polynomials, and
//! class-splitting of periodic weighted point sets.
//!
//! Irrational coordinates are never approximated: a [`TorusPoint`] carries a
//! finite map from formal symbols `th1, th2, ...` to rational coefficients,
//! so equality and rational equivalence are decidable by construction. Two
//! points are rationally equivalent exactly when their symbol parts agree,
//! i.e. when their difference lies in `period * Q`.
//!
//! Exact zero sets of exponential polynomials are computed only in the
//! all-rational-frequency case, where the function is periodic on the
//! integers and vanishing reduces to the same cyclotomic divisibility test
//! the rest of the crate uses. Irrational frequencies are refused, not
//! approximated.

pub mod step;

pub use step::StepFunction;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use thiserror::Error;

use crate::zn::field::CyclotomicField;
use crate::zn::poly;
use crate::zn::CyclicSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("period must be positive, got {0}")]
    NonPositivePeriod(String),
    #[error("mixed periods: {left} vs {right}")]
    PeriodMismatch { left: String, right: String },
    #[error("interval [{lo}, {hi}) escapes the window [0, {period})")]
    IntervalOutOfWindow {
        lo: String,
        hi: String,
        period: String,
    },
    #[error("malformed step function: {0}")]
    MalformedStepFunction(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("atom {0} has an irrational part; this operation is exact only for rational atoms")]
    IrrationalAtom(String),
    #[error("frequency {0} has an irrational part; exact zero sets exist only for rational frequencies")]
    IrrationalFrequency(String),
    #[error("frequency must have period 1, got {0}")]
    FrequencyPeriod(String),
    #[error("repeated node {0} in a Vandermonde system")]
    RepeatedNode(String),
    #[error("value list has length {values} but there are {nodes} nodes")]
    ArityMismatch { values: usize, nodes: usize },
    #[error("atoms must have pairwise distinct positions, {0} repeats")]
    RepeatedAtom(String),
    #[error("atom weights must be nonzero")]
    ZeroWeight,
    #[error("cannot parse torus point: {0}")]
    Parse(String),
    #[error("denominators too large for an integer lattice: {0}")]
    TooLarge(String),
}

/// An exact point `q + sum_k c_k * th_k` on the circle `R / (period Z)`.
///
/// The rational part is kept in `[0, period)`; the symbols `th_k` stand for
/// fixed irrationals that are rationally independent of the period and of
/// each other, so symbol maps decide rational equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    period: BigRational,
    rational: BigRational,
    symbols: BTreeMap<u32, BigRational>,
}

impl TorusPoint {
    pub fn new(
        period: BigRational,
        rational: BigRational,
        symbols: BTreeMap<u32, BigRational>,
    ) -> Result<Self, TorusError> {
        if !period.is_positive() {
            return Err(TorusError::NonPositivePeriod(period.to_string()));
        }
        let rational = step::reduce_mod(&rational, &period);
        let symbols = symbols.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(TorusPoint {
            period,
            rational,
            symbols,
        })
    }

    /// A purely rational point.
    pub fn rational(period: BigRational, value: BigRational) -> Result<Self, TorusError> {
        TorusPoint::new(period, value, BTreeMap::new())
    }

    /// `q + c * th_k`.
    pub fn with_symbol(
        period: BigRational,
        rational: BigRational,
        symbol: u32,
        coefficient: BigRational,
    ) -> Result<Self, TorusError> {
        let mut symbols = BTreeMap::new();
        symbols.insert(symbol, coefficient);
        TorusPoint::new(period, rational, symbols)
    }

    pub fn period(&self) -> &BigRational {
        &self.period
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn symbol_part(&self) -> &BTreeMap<u32, BigRational> {
        &self.symbols
    }

    pub fn is_rational(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Two points are rationally equivalent iff their symbol parts are the
    /// same map (their difference then lies in `period * Q`).
    pub fn rationally_equivalent(&self, other: &Self) -> bool {
        self.period == other.period && self.symbols == other.symbols
    }

    pub fn add(&self, other: &Self) -> Result<Self, TorusError> {
        self.check_period(other)?;
        let mut symbols = self.symbols.clone();
        for (k, c) in &other.symbols {
            let entry = symbols.entry(*k).or_insert_with(BigRational::zero);
            *entry += c;
        }
        TorusPoint::new(
            self.period.clone(),
            &self.rational + &other.rational,
            symbols,
        )
    }

    pub fn neg(&self) -> Self {
        let symbols = self
            .symbols
            .iter()
            .map(|(k, c)| (*k, -c.clone()))
            .collect();
        TorusPoint::new(self.period.clone(), -self.rational.clone(), symbols)
            .expect("period unchanged")
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TorusError> {
        self.add(&other.neg())
    }

    /// Substitutes the rational `value` for symbol `k`.
    pub fn instantiate(&self, symbol: u32, value: &BigRational) -> Self {
        let mut symbols = self.symbols.clone();
        let mut rational = self.rational.clone();
        if let Some(coefficient) = symbols.remove(&symbol) {
            rational += coefficient * value;
        }
        TorusPoint::new(self.period.clone(), rational, symbols).expect("period unchanged")
    }

    fn check_period(&self, other: &Self) -> Result<(), TorusError> {
        if self.period != other.period {
            return Err(TorusError::PeriodMismatch {
                left: self.period.to_string(),
                right: other.period.to_string(),
            });
        }
        Ok(())
    }
}

/// Deterministic total order: rational part first, then symbol maps
/// lexicographically. This is the order behind "least member" everywhere.
impl Ord for TorusPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.period
            .cmp(&other.period)
            .then_with(|| self.rational.cmp(&other.rational))
            .then_with(|| self.symbols.iter().cmp(other.symbols.iter()))
    }
}

impl PartialOrd for TorusPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Grammar: `q` or `q + c*th<k>` with exact rationals, e.g. `1/3 + 1*th1`.
impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for (k, c) in &self.symbols {
            write!(f, " + {c}*th{k}")?;
        }
        Ok(())
    }
}

/// Parses the display grammar, with period 1.
impl FromStr for TorusPoint {
    type Err = TorusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_torus_point(s, BigRational::one())
    }
}

pub fn parse_torus_point(s: &str, period: BigRational) -> Result<TorusPoint, TorusError> {
    let mut parts = s.split('+').map(str::trim);
    let head = parts
        .next()
        .filter(|p| !p.is_empty())
        .ok_or_else(|| TorusError::Parse(format!("empty point string {s:?}")))?;
    let rational = parse_rational(head)?;
    let mut symbols = BTreeMap::new();
    for part in parts {
        let (coeff, sym) = part
            .split_once('*')
            .ok_or_else(|| TorusError::Parse(format!("expected c*th<k> in {part:?}")))?;
        let symbol = sym
            .trim()
            .strip_prefix("th")
            .and_then(|k| k.parse::<u32>().ok())
            .ok_or_else(|| TorusError::Parse(format!("expected th<k> in {part:?}")))?;
        let coefficient = parse_rational(coeff.trim())?;
        if !coefficient.is_zero() {
            let slot = symbols.entry(symbol).or_insert_with(BigRational::zero);
            *slot += coefficient;
        }
    }
    TorusPoint::new(period, rational, symbols)
}

/// Parses an exact rational from `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational, TorusError> {
    if let Some((n, d)) = s.split_once('/') {
        let numer = BigInt::from_str(n.trim()).map_err(|e| TorusError::Parse(e.to_string()))?;
        let denom = BigInt::from_str(d.trim()).map_err(|e| TorusError::Parse(e.to_string()))?;
        if denom.is_zero() {
            return Err(TorusError::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(numer, denom))
    } else {
        let numer = BigInt::from_str(s.trim()).map_err(|e| TorusError::Parse(e.to_string()))?;
        Ok(BigRational::from_integer(numer))
    }
}

/// A periodic integer-weighted point set `mu = delta_{period Z} * tau`,
/// given by the finitely many weighted atoms of `tau` in one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPeriodicPointSet {
    period: BigRational,
    atoms: Vec<(TorusPoint, i64)>,
}

impl WeightedPeriodicPointSet {
    pub fn new(
        period: BigRational,
        atoms: Vec<(TorusPoint, i64)>,
    ) -> Result<Self, TorusError> {
        if !period.is_positive() {
            return Err(TorusError::NonPositivePeriod(period.to_string()));
        }
        let mut atoms = atoms;
        for (point, weight) in &atoms {
            if *weight == 0 {
                return Err(TorusError::ZeroWeight);
            }
            if point.period() != &period {
                return Err(TorusError::PeriodMismatch {
                    left: period.to_string(),
                    right: point.period().to_string(),
                });
            }
        }
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in atoms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(TorusError::RepeatedAtom(pair[0].0.to_string()));
            }
        }
        Ok(WeightedPeriodicPointSet { period, atoms })
    }

    pub fn period(&self) -> &BigRational {
        &self.period
    }

    pub fn atoms(&self) -> &[(TorusPoint, i64)] {
        &self.atoms
    }

    pub fn total_weight(&self) -> i64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    pub fn is_rational(&self) -> bool {
        self.atoms.iter().all(|(p, _)| p.is_rational())
    }

    /// Translates every atom by `offset`. With `offset` the negated common
    /// symbol part of a rational class this is the documented symbol
    /// elimination: tiling verdicts are rotation-invariant, so the class can
    /// be checked after sliding it onto the rational axis.
    pub fn translate(&self, offset: &TorusPoint) -> Result<Self, TorusError> {
        let atoms = self
            .atoms
            .iter()
            .map(|(p, w)| p.add(offset).map(|q| (q, *w)))
            .collect::<Result<Vec<_>, _>>()?;
        WeightedPeriodicPointSet::new(self.period.clone(), atoms)
    }

    /// Substitutes a rational value for a symbol in every atom; atoms that
    /// collide afterwards merge their weights (and vanish if they cancel).
    pub fn instantiate(&self, symbol: u32, value: &BigRational) -> Self {
        let mut merged: BTreeMap<TorusPoint, i64> = BTreeMap::new();
        for (point, weight) in &self.atoms {
            let new_point = point.instantiate(symbol, value);
            *merged.entry(new_point).or_insert(0) += weight;
        }
        let atoms: Vec<(TorusPoint, i64)> = merged
            .into_iter()
            .filter(|(_, w)| *w != 0)
            .collect();
        WeightedPeriodicPointSet {
            period: self.period.clone(),
            atoms,
        }
    }
}

/// An exponential polynomial `f(n) = sum c_i e^{2 pi i freq_i n}` on the
/// integers; frequencies are torus points of period 1 and coefficients are
/// complex rationals `(re, im)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialPolynomial {
    terms: Vec<(TorusPoint, (BigRational, BigRational))>,
}

impl ExponentialPolynomial {
    pub fn new(
        terms: Vec<(TorusPoint, (BigRational, BigRational))>,
    ) -> Result<Self, TorusError> {
        let one = BigRational::one();
        let mut terms: Vec<_> = terms
            .into_iter()
            .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
            .collect();
        for (freq, _) in &terms {
            if freq.period() != &one {
                return Err(TorusError::FrequencyPeriod(freq.period().to_string()));
            }
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in terms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(TorusError::RepeatedAtom(pair[0].0.to_string()));
            }
        }
        Ok(ExponentialPolynomial { terms })
    }

    pub fn terms(&self) -> &[(TorusPoint, (BigRational, BigRational))] {
        &self.terms
    }

    /// Floating-point evaluation at integer `n`, diagnostic only.
    pub fn eval_numeric(&self, n: i64) -> Complex64 {
        let tau = 2.0 * std::f64::consts::PI;
        let mut acc = Complex64::new(0.0, 0.0);
        for (freq, (re, im)) in &self.terms {
            let lambda = rational_to_f64(freq.rational_part());
            let phase = Complex64::new(0.0, tau * lambda * n as f64).exp();
            acc += Complex64::new(rational_to_f64(re), rational_to_f64(im)) * phase;
        }
        acc
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Partitions points into rational equivalence classes.
///
/// Output is a list of index lists into the input: classes ordered by their
/// least member, members ordered within each class, both in the canonical
/// point order.
pub fn rational_classes(points: &[TorusPoint]) -> Result<Vec<Vec<usize>>, TorusError> {
    if let Some(first) = points.first() {
        for p in points {
            if p.period() != first.period() {
                return Err(TorusError::PeriodMismatch {
                    left: first.period().to_string(),
                    right: p.period().to_string(),
                });
            }
        }
    }
    let mut classes: BTreeMap<Vec<(u32, BigRational)>, Vec<usize>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let key: Vec<(u32, BigRational)> = p
            .symbol_part()
            .iter()
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        classes.entry(key).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    for class in &mut out {
        class.sort_by(|&i, &j| points[i].cmp(&points[j]));
    }
    out.sort_by(|a, b| points[a[0]].cmp(&points[b[0]]));
    Ok(out)
}

/// Splits tau into one weighted point set per rational class of its atom
/// positions; together the pieces reproduce the input atom for atom.
pub fn split_by_classes(tau: &WeightedPeriodicPointSet) -> Vec<WeightedPeriodicPointSet> {
    let points: Vec<TorusPoint> = tau.atoms().iter().map(|(p, _)| p.clone()).collect();
    let classes = rational_classes(&points).expect("atoms share the set period");
    classes
        .into_iter()
        .map(|class| {
            let atoms = class
                .into_iter()
                .map(|i| tau.atoms()[i].clone())
                .collect();
            WeightedPeriodicPointSet::new(tau.period().clone(), atoms)
                .expect("subset of valid atoms stays valid")
        })
        .collect()
}

/// Exact integer zero set of a rational-frequency exponential polynomial,
/// as a subset of `Z_P` for `P` the least common denominator.
///
/// The value at `n` lies in the cyclotomic field of order `M = lcm(P, 4)`
/// (the 4 hosts the imaginary unit of the coefficients); it vanishes iff
/// `Phi_M` divides the integer polynomial obtained by clearing denominators.
/// Irrational frequencies are refused: their zero sets are out of the exact
/// regime.
pub fn zero_set_rational(f: &ExponentialPolynomial) -> Result<CyclicSet, TorusError> {
    for (freq, _) in f.terms() {
        if !freq.is_rational() {
            return Err(TorusError::IrrationalFrequency(freq.to_string()));
        }
    }
    let mut p_big = BigInt::one();
    for (freq, _) in f.terms() {
        p_big = p_big.lcm(freq.rational_part().denom());
    }
    let p = big_to_usize(&p_big)?;
    let m = p.lcm(&4);
    // Clear coefficient denominators once for the whole polynomial.
    let mut denom = BigInt::one();
    for (_, (re, im)) in f.terms() {
        denom = denom.lcm(re.denom()).lcm(im.denom());
    }
    let denom = BigRational::from_integer(denom);
    let mut zeros = Vec::new();
    for n in 0..p {
        let mut poly_coeffs = vec![BigInt::zero(); m];
        for (freq, (re, im)) in f.terms() {
            // freq = a / P exactly; exponent of z_M is (M/P) * a * n.
            let a = (freq.rational_part() * BigRational::from_integer(BigInt::from(p)))
                .to_integer();
            let a = a.mod_floor(&BigInt::from(p));
            let a = big_to_usize(&a)?;
            let base = (m / p) * ((a * n) % p) % m;
            let re_int = (re * &denom).to_integer();
            let im_int = (im * &denom).to_integer();
            poly_coeffs[base % m] += re_int;
            poly_coeffs[(base + m / 4) % m] += im_int;
        }
        if poly::divisible_by_cyclotomic_big(&poly_coeffs, m) {
            zeros.push(n);
        }
    }
    Ok(CyclicSet::from_members(p, zeros).expect("indices below P"))
}

/// Like [`zero_set_rational`], but expressed in `Z_m` for any multiple `m`
/// of the natural period (useful when the frequencies were written over a
/// common unreduced denominator).
pub fn zero_set_in_modulus(
    f: &ExponentialPolynomial,
    modulus: usize,
) -> Result<CyclicSet, TorusError> {
    let natural = zero_set_rational(f)?;
    let p = natural.modulus();
    if modulus == 0 || !modulus.is_multiple_of(p) {
        return Err(TorusError::TooLarge(format!(
            "{modulus} is not a multiple of the natural period {p}"
        )));
    }
    let members = (0..modulus).filter(|&n| natural.contains(n % p));
    Ok(CyclicSet::from_members(modulus, members).expect("indices below modulus"))
}

fn big_to_usize(b: &BigInt) -> Result<usize, TorusError> {
    b.to_usize()
        .ok_or_else(|| TorusError::TooLarge(b.to_string()))
}

/// The Vandermonde criterion, as an executable witness.
///
/// Given pairwise distinct roots of unity `z_j = e^{2 pi i q_j}` (exponents
/// `q_j` rational) and values `x_j`, the homogeneous system
/// `sum_j z_j^k x_j = 0 (k = 1..r)` forces every `x_j = 0`. The witness
/// performs exact Gaussian elimination of the `r x r` system in the
/// cyclotomic field and confirms full rank; it errors on repeated nodes,
/// where the criterion genuinely fails.
pub fn vandermonde_criterion(
    z_exponents: &[BigRational],
    values: &[(BigRational, BigRational)],
) -> Result<bool, TorusError> {
    if values.len() != z_exponents.len() {
        return Err(TorusError::ArityMismatch {
            values: values.len(),
            nodes: z_exponents.len(),
        });
    }
    let (field, powers) = root_powers(z_exponents)?;
    let r = z_exponents.len();
    // matrix[k][j] = z_j^(k+1)
    let mut matrix: Vec<Vec<crate::zn::field::CycloElem>> = (0..r)
        .map(|k| {
            (0..r)
                .map(|j| field.root_power((powers[j] * (k + 1)) % field.order()))
                .collect()
        })
        .collect();
    // Exact elimination; full rank iff a pivot exists in every column.
    for col in 0..r {
        let pivot_row = (col..r).find(|&row| !field.is_zero(&matrix[row][col]));
        let pivot_row = match pivot_row {
            Some(row) => row,
            None => return Ok(false), // unreachable for distinct nodes
        };
        matrix.swap(col, pivot_row);
        let inv = field
            .inv(&matrix[col][col].clone())
            .expect("pivot is nonzero");
        for row in (col + 1)..r {
            if field.is_zero(&matrix[row][col]) {
                continue;
            }
            let factor = field.mul(&matrix[row][col], &inv);
            for j in col..r {
                let delta = field.mul(&factor, &matrix[col][j]);
                matrix[row][j] = field.sub(&matrix[row][j], &delta);
            }
        }
    }
    // Full rank established. Consistency: if the given values make every
    // power sum vanish, they must all be zero.
    debug_assert!({
        let sums = vandermonde_power_sums(z_exponents, values)?;
        let all_zero_sums = sums.iter().all(|&z| z);
        let all_zero_values = values.iter().all(|(re, im)| re.is_zero() && im.is_zero());
        !all_zero_sums || all_zero_values
    });
    Ok(true)
}

/// Whether `sum_j z_j^k x_j = 0`, exactly, for each `k = 1..r`.
pub fn vandermonde_power_sums(
    z_exponents: &[BigRational],
    values: &[(BigRational, BigRational)],
) -> Result<Vec<bool>, TorusError> {
    if values.len() != z_exponents.len() {
        return Err(TorusError::ArityMismatch {
            values: values.len(),
            nodes: z_exponents.len(),
        });
    }
    let (field, powers) = root_powers(z_exponents)?;
    let xs: Vec<_> = values
        .iter()
        .map(|(re, im)| field.from_complex_rational(re.clone(), im.clone()))
        .collect();
    let r = z_exponents.len();
    Ok((1..=r)
        .map(|k| {
            let mut acc = field.zero();
            for (j, x) in xs.iter().enumerate() {
                let z_pow = field.root_power((powers[j] * k) % field.order());
                acc = field.add(&acc, &field.mul(&z_pow, x));
            }
            field.is_zero(&acc)
        })
        .collect())
}

/// Shared setup: the cyclotomic field containing all nodes (and i), plus
/// each node as a power of the primitive root.
fn root_powers(z_exponents: &[BigRational]) -> Result<(CyclotomicField, Vec<usize>), TorusError> {
    let one = BigRational::one();
    let mut m_big = BigInt::from(4);
    let reduced: Vec<BigRational> = z_exponents
        .iter()
        .map(|q| step::reduce_mod(q, &one))
        .collect();
    for q in &reduced {
        m_big = m_big.lcm(q.denom());
    }
    let m = big_to_usize(&m_big)?;
    for (i, a) in reduced.iter().enumerate() {
        for b in &reduced[i + 1..] {
            if a == b {
                return Err(TorusError::RepeatedNode(a.to_string()));
            }
        }
    }
    let powers = reduced
        .iter()
        .map(|q| {
            let k = (q * BigRational::from_integer(BigInt::from(m))).to_integer();
            big_to_usize(&k)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((CyclotomicField::new(m), powers))
}

/// Numeric Vandermonde nonsingularity check (product formula), diagnostic.
pub fn vandermonde_criterion_numeric(nodes: &[Complex64]) -> Result<bool, TorusError> {
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            if (a - b).norm() < 1e-12 {
                return Err(TorusError::RepeatedNode(format!("{a}")));
            }
        }
    }
    let mut det = Complex64::new(1.0, 0.0);
    for z in nodes {
        det *= z;
    }
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            det *= b - a;
        }
    }
    Ok(det.norm() > 1e-9)
}

/// Constant-level report for a torus tiling check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusTilingReport {
    pub is_tiling: bool,
    /// The constant, when the level function is a.e. constant.
    pub level: Option<i64>,
    /// Full level profile `(lo, hi, value)` when it is not constant.
    pub violations: Vec<(BigRational, BigRational, i64)>,
}

/// Verifies `sum_s c_s F(x - x_s) = const` for a piecewise-constant `F` and
/// a rational weighted point set, exactly on the common refinement of the
/// translated breakpoints.
pub fn verify_torus_tiling(
    tile: &StepFunction,
    tau: &WeightedPeriodicPointSet,
) -> Result<TorusTilingReport, TorusError> {
    if tile.period() != tau.period() {
        return Err(TorusError::PeriodMismatch {
            left: tile.period().to_string(),
            right: tau.period().to_string(),
        });
    }
    let atoms = tau
        .atoms()
        .iter()
        .map(|(p, w)| {
            if !p.is_rational() {
                return Err(TorusError::IrrationalAtom(p.to_string()));
            }
            Ok((p.rational_part().clone(), *w))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let level = tile.combine_atoms(&atoms)?;
    match level.constant_value() {
        Some(c) => Ok(TorusTilingReport {
            is_tiling: true,
            level: Some(c),
            violations: Vec::new(),
        }),
        None => Ok(TorusTilingReport {
            is_tiling: false,
            level: None,
            violations: level.spans(),
        }),
    }
}
