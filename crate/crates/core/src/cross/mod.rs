//! Cross tilings of `Z_N`: verification in three equivalent forms,
//! triviality classification, the product-group embedding, the cardinality
//! necessary condition, the two generator constructions, and exhaustive
//! search.
//!
//! A pair `A, B` admits cross tiling with complements `X, Y` when both
//! exchange tilings hold:
//!
//! ```text
//! Z_N = (A + X) u (B + Y)    and    Z_N = (A + Y) u (B + X)
//! ```
//!
//! Equivalently `(A+B)*(X+Y) = 2` and `(A-B)*(X-Y) = 0`, and equivalently
//! again `C + Z = Z_N x Z_2` with `C = A x {0} u B x {1}`,
//! `Z = X x {0} u Y x {1}`. All three routes are implemented and must agree
//! on every input.

mod search;

pub use search::{search_cross, SearchBudget, SearchConstraints, SearchError, SearchStream};

use std::fmt;

use thiserror::Error;

use crate::tiling::{constant_report, verify_tiling, TilingReport, DEFAULT_VIOLATION_CAP};
use crate::zn::{convolve, dft_zero_set, CyclicSet, WeightedCyclicVector, ZnError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossError {
    #[error("all four sets must share a modulus (got {0}, {1}, {2}, {3})")]
    MixedModuli(usize, usize, usize, usize),
    #[error("parameter {name} = {value} must be odd")]
    EvenParameter { name: &'static str, value: usize },
    #[error("factors {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error(transparent)]
    Zn(#[from] ZnError),
}

/// A cross-tiling candidate `(N, A, B, X, Y)`; the four sets share the
/// modulus by construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossTilingInstance {
    modulus: usize,
    a: CyclicSet,
    b: CyclicSet,
    x: CyclicSet,
    y: CyclicSet,
}

impl CrossTilingInstance {
    pub fn new(
        a: CyclicSet,
        b: CyclicSet,
        x: CyclicSet,
        y: CyclicSet,
    ) -> Result<Self, CrossError> {
        let n = a.modulus();
        if b.modulus() != n || x.modulus() != n || y.modulus() != n {
            return Err(CrossError::MixedModuli(
                n,
                b.modulus(),
                x.modulus(),
                y.modulus(),
            ));
        }
        Ok(CrossTilingInstance {
            modulus: n,
            a,
            b,
            x,
            y,
        })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn a(&self) -> &CyclicSet {
        &self.a
    }

    pub fn b(&self) -> &CyclicSet {
        &self.b
    }

    pub fn x(&self) -> &CyclicSet {
        &self.x
    }

    pub fn y(&self) -> &CyclicSet {
        &self.y
    }

    /// `(|A| + |B|) (|X| + |Y|)`, which any verified instance pins to `2N`.
    pub fn cardinality_product(&self) -> usize {
        (self.a.cardinality() + self.b.cardinality())
            * (self.x.cardinality() + self.y.cardinality())
    }
}

impl fmt::Debug for CrossTilingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CrossTilingInstance(N={}, A={:?}, B={:?}, X={:?}, Y={:?})",
            self.modulus,
            self.a.members(),
            self.b.members(),
            self.x.members(),
            self.y.members()
        )
    }
}

/// The two constant-level reports of a paired verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossReport {
    pub first: TilingReport,
    pub second: TilingReport,
}

impl CrossReport {
    pub fn verified(&self) -> bool {
        self.first.is_tiling && self.second.is_tiling
    }
}

fn indicator_convolution(a: &CyclicSet, x: &CyclicSet) -> WeightedCyclicVector {
    convolve(&a.to_vector(), &x.to_vector()).expect("moduli checked at construction")
}

/// Direct verification of the two defining identities:
/// `A*X + B*Y = 1` and `A*Y + B*X = 1`.
pub fn verify_cross(inst: &CrossTilingInstance) -> CrossReport {
    let first = indicator_convolution(&inst.a, &inst.x)
        .add(&indicator_convolution(&inst.b, &inst.y))
        .expect("indicator convolutions cannot overflow");
    let second = indicator_convolution(&inst.a, &inst.y)
        .add(&indicator_convolution(&inst.b, &inst.x))
        .expect("indicator convolutions cannot overflow");
    CrossReport {
        first: constant_report(&first, 1, DEFAULT_VIOLATION_CAP),
        second: constant_report(&second, 1, DEFAULT_VIOLATION_CAP),
    }
}

/// Verification through the sum/difference identities
/// `(A+B)*(X+Y) = 2` and `(A-B)*(X-Y) = 0`; agrees with [`verify_cross`]
/// on every input.
pub fn verify_cross_equiv(inst: &CrossTilingInstance) -> CrossReport {
    let sum_ab = inst.a.to_vector().add(&inst.b.to_vector()).expect("same modulus");
    let sum_xy = inst.x.to_vector().add(&inst.y.to_vector()).expect("same modulus");
    let diff_ab = inst.a.to_vector().sub(&inst.b.to_vector()).expect("same modulus");
    let diff_xy = inst.x.to_vector().sub(&inst.y.to_vector()).expect("same modulus");
    let sum = convolve(&sum_ab, &sum_xy).expect("same modulus");
    let diff = convolve(&diff_ab, &diff_xy).expect("same modulus");
    CrossReport {
        first: constant_report(&sum, 2, DEFAULT_VIOLATION_CAP),
        second: constant_report(&diff, 0, DEFAULT_VIOLATION_CAP),
    }
}

/// The exact Fourier condition for cross tiling:
///
/// - `(|A| + |B|) (|X| + |Y|) = 2N`,
/// - for every `k != 0`: `(A+B)^(k) = 0` or `(X+Y)^(k) = 0`,
/// - for every `k` (including 0): `(A-B)^(k) = 0` or `(X-Y)^(k) = 0`,
///
/// with all vanishing decided exactly by cyclotomic divisibility. Agrees
/// with [`verify_cross`] on every input.
pub fn fourier_cross_check(inst: &CrossTilingInstance) -> bool {
    let n = inst.modulus;
    if inst.cardinality_product() != 2 * n {
        return false;
    }
    let sum_ab = inst.a.to_vector().add(&inst.b.to_vector()).expect("same modulus");
    let sum_xy = inst.x.to_vector().add(&inst.y.to_vector()).expect("same modulus");
    let zeros_sum_ab = dft_zero_set(&sum_ab);
    let zeros_sum_xy = dft_zero_set(&sum_xy);
    if !(1..n).all(|k| zeros_sum_ab.contains(k) || zeros_sum_xy.contains(k)) {
        return false;
    }
    let diff_ab = inst.a.to_vector().sub(&inst.b.to_vector()).expect("same modulus");
    let diff_xy = inst.x.to_vector().sub(&inst.y.to_vector()).expect("same modulus");
    let zeros_diff_ab = dft_zero_set(&diff_ab);
    let zeros_diff_xy = dft_zero_set(&diff_xy);
    (0..n).all(|k| zeros_diff_ab.contains(k) || zeros_diff_xy.contains(k))
}

/// The necessary condition `|A| = |B|` or `|X| = |Y|` (frequency 0 of the
/// difference identity). Every verified cross tiling satisfies it.
pub fn cardinality_condition(inst: &CrossTilingInstance) -> bool {
    inst.a.cardinality() == inst.b.cardinality()
        || inst.x.cardinality() == inst.y.cardinality()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialityKind {
    /// `X = Y` and `(A u B) + X` is an ordinary level-1 tiling.
    TrivialAbOverX,
    /// `A = B` and `(X u Y) + A` is an ordinary level-1 tiling.
    TrivialXyOverA,
    NonTrivial,
    NotACrossTiling,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityVerdict {
    pub kind: TrivialityKind,
    /// Which defining clause matched, in words.
    pub witness: String,
}

/// Classifies a candidate as trivial, non-trivial, or not a cross tiling.
pub fn classify(inst: &CrossTilingInstance) -> TrivialityVerdict {
    let report = verify_cross(inst);
    if !report.verified() {
        let which = if report.first.is_tiling { "second" } else { "first" };
        return TrivialityVerdict {
            kind: TrivialityKind::NotACrossTiling,
            witness: format!("the {which} exchange identity is not constant 1"),
        };
    }
    if inst.x == inst.y {
        let union = inst.a.union(&inst.b).expect("same modulus");
        if verify_tiling(&union, &inst.x, 1)
            .map(|r| r.is_tiling)
            .unwrap_or(false)
        {
            return TrivialityVerdict {
                kind: TrivialityKind::TrivialAbOverX,
                witness: "X = Y and (A u B) + X tiles at level 1 with A, B disjoint".into(),
            };
        }
    }
    if inst.a == inst.b {
        let union = inst.x.union(&inst.y).expect("same modulus");
        if verify_tiling(&union, &inst.a, 1)
            .map(|r| r.is_tiling)
            .unwrap_or(false)
        {
            return TrivialityVerdict {
                kind: TrivialityKind::TrivialXyOverA,
                witness: "A = B and (X u Y) + A tiles at level 1 with X, Y disjoint".into(),
            };
        }
    }
    TrivialityVerdict {
        kind: TrivialityKind::NonTrivial,
        witness: "verified, and neither triviality clause matches".into(),
    }
}

/// A subset of the product group `Z_N x Z_2`, stored layer by layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSet {
    pub layer0: CyclicSet,
    pub layer1: CyclicSet,
}

impl ProductSet {
    pub fn cardinality(&self) -> usize {
        self.layer0.cardinality() + self.layer1.cardinality()
    }
}

/// The embedding of a cross-tiling candidate as an ordinary tiling of
/// `Gamma = Z_N x Z_2`.
#[derive(Debug, Clone)]
pub struct ProductEmbedding {
    pub c: ProductSet,
    pub z: ProductSet,
    /// Constant-1 report over Gamma, points flattened as `t + layer * N`.
    pub report: TilingReport,
}

impl ProductEmbedding {
    pub fn verified(&self) -> bool {
        self.report.is_tiling
    }
}

/// Embeds the instance into `Gamma = Z_N x Z_2` with
/// `C = A x {0} u B x {1}` and `Z = X x {0} u Y x {1}` and verifies the
/// tiling `C + Z = Gamma` as two interleaved `Z_N` convolutions. The verdict
/// equals [`verify_cross`] on every input.
pub fn embed_product(inst: &CrossTilingInstance) -> ProductEmbedding {
    let n = inst.modulus;
    // Layer parity of c + z is the XOR of layer parities, so the layer-0
    // part of the product convolution is A*X + B*Y and the layer-1 part is
    // A*Y + B*X.
    let layer0 = indicator_convolution(&inst.a, &inst.x)
        .add(&indicator_convolution(&inst.b, &inst.y))
        .expect("same modulus");
    let layer1 = indicator_convolution(&inst.a, &inst.y)
        .add(&indicator_convolution(&inst.b, &inst.x))
        .expect("same modulus");
    let mut flat = Vec::with_capacity(2 * n);
    flat.extend_from_slice(layer0.weights());
    flat.extend_from_slice(layer1.weights());
    let flat = WeightedCyclicVector::from_weights(2 * n, flat).expect("length 2N");
    ProductEmbedding {
        c: ProductSet {
            layer0: inst.a.clone(),
            layer1: inst.b.clone(),
        },
        z: ProductSet {
            layer0: inst.x.clone(),
            layer1: inst.y.clone(),
        },
        report: constant_report(&flat, 1, DEFAULT_VIOLATION_CAP),
    }
}

/// The least `t` with `S + t = T`, if the two sets are translates.
pub fn translate_equivalent(s: &CyclicSet, t: &CyclicSet) -> Result<Option<usize>, CrossError> {
    if s.modulus() != t.modulus() {
        return Err(ZnError::ModulusMismatch {
            left: s.modulus(),
            right: t.modulus(),
        }
        .into());
    }
    if s.cardinality() != t.cardinality() {
        return Ok(None);
    }
    Ok((0..s.modulus()).find(|&shift| &s.translate(shift as i64) == t))
}

/// Canonical representative under simultaneous translation:
/// `(A, B) -> (A + t, B + t)` minimized, `(X, Y) -> (X + s, Y + s)`
/// minimized, in the canonical set order.
pub fn canonical_form(inst: &CrossTilingInstance) -> CrossTilingInstance {
    let all: Vec<i64> = (0..inst.modulus as i64).collect();
    canonical_form_over(inst, &all, &all)
}

/// Canonical form where the two translation parameters range over given
/// subsets (used by constrained search, where only constraint-preserving
/// translations may be quotiented).
pub fn canonical_form_over(
    inst: &CrossTilingInstance,
    ts: &[i64],
    ss: &[i64],
) -> CrossTilingInstance {
    let (a, b) = ts
        .iter()
        .map(|&t| (inst.a.translate(t), inst.b.translate(t)))
        .min()
        .unwrap_or_else(|| (inst.a.clone(), inst.b.clone()));
    let (x, y) = ss
        .iter()
        .map(|&s| (inst.x.translate(s), inst.y.translate(s)))
        .min()
        .unwrap_or_else(|| (inst.x.clone(), inst.y.clone()));
    CrossTilingInstance::new(a, b, x, y).expect("translates keep the modulus")
}

/// Verdict-preserving symmetries beyond simultaneous translation. The
/// search quotients only translations; these richer quotients are applied
/// as optional post-filters.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymmetryOptions {
    /// `(A, B, X, Y) -> (B, A, Y, X)`.
    pub swap_pairs: bool,
    /// `(A, B, X, Y) -> (X, Y, A, B)`.
    pub exchange_roles: bool,
    /// The affine automorphisms `x -> ux` (gcd(u, N) = 1) applied to all
    /// four sets.
    pub affine: bool,
}

/// Reduces a list of (translation-canonical) instances to one
/// representative per orbit of the selected symmetry group, sorted in
/// canonical order.
pub fn quotient_by_symmetries<I>(instances: I, options: SymmetryOptions) -> Vec<CrossTilingInstance>
where
    I: IntoIterator<Item = CrossTilingInstance>,
{
    let mut representatives: Vec<CrossTilingInstance> = instances
        .into_iter()
        .map(|inst| orbit_representative(&inst, options))
        .collect();
    representatives.sort();
    representatives.dedup();
    representatives
}

/// The minimal member of the orbit of `inst` under the selected symmetries
/// (always closed under simultaneous translation).
pub fn orbit_representative(
    inst: &CrossTilingInstance,
    options: SymmetryOptions,
) -> CrossTilingInstance {
    let n = inst.modulus();
    let units: Vec<usize> = if options.affine {
        (1..n.max(2))
            .filter(|&u| crate::zn::gcd(u, n) == 1)
            .collect()
    } else {
        vec![1]
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![canonical_form(inst)];
    while let Some(current) = frontier.pop() {
        if !seen.insert(current.clone()) {
            continue;
        }
        let mut images = Vec::new();
        if options.swap_pairs {
            images.push(CrossTilingInstance {
                modulus: n,
                a: current.b.clone(),
                b: current.a.clone(),
                x: current.y.clone(),
                y: current.x.clone(),
            });
        }
        if options.exchange_roles {
            images.push(CrossTilingInstance {
                modulus: n,
                a: current.x.clone(),
                b: current.y.clone(),
                x: current.a.clone(),
                y: current.b.clone(),
            });
        }
        for &u in &units {
            if u == 1 {
                continue;
            }
            images.push(CrossTilingInstance {
                modulus: n,
                a: current.a.dilate(u).expect("unit"),
                b: current.b.dilate(u).expect("unit"),
                x: current.x.dilate(u).expect("unit"),
                y: current.y.dilate(u).expect("unit"),
            });
        }
        for image in images {
            let image = canonical_form(&image);
            if !seen.contains(&image) {
                frontier.push(image);
            }
        }
    }
    seen.into_iter().next().expect("orbit is nonempty")
}

/// The canonical coprime-factor coordinates `Z_m x Z_n = Z_{mn}`,
/// identified through `x -> (x mod m, x mod n)`.
#[derive(Debug, Clone, Copy)]
pub struct ProductCoords {
    m: usize,
    n: usize,
}

impl ProductCoords {
    pub fn new(m: usize, n: usize) -> Result<Self, CrossError> {
        if m == 0 || n == 0 || crate::zn::gcd(m, n) != 1 {
            return Err(CrossError::NotCoprime(m, n));
        }
        Ok(ProductCoords { m, n })
    }

    pub fn modulus(&self) -> usize {
        self.m * self.n
    }

    /// The unique `x` in `Z_{mn}` with `x = u (mod m)` and `x = v (mod n)`.
    /// Coordinates are reduced first, so product-side constructions may use
    /// unreduced values.
    pub fn combine(&self, u: usize, v: usize) -> usize {
        let (m, n) = (self.m as i64, self.n as i64);
        let u = (u as i64).rem_euclid(m);
        let v = (v as i64).rem_euclid(n);
        let inv_m_mod_n = mod_inverse(m, n);
        let k = ((v - u).rem_euclid(n) * inv_m_mod_n).rem_euclid(n);
        (u + m * k) as usize
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x % self.m, x % self.n)
    }

    pub fn set_from_pairs<I>(&self, pairs: I) -> CyclicSet
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let members: Vec<usize> = pairs
            .into_iter()
            .map(|(u, v)| self.combine(u, v))
            .collect();
        CyclicSet::from_members(self.modulus(), members).expect("combine stays in range")
    }
}

fn mod_inverse(a: i64, modulus: i64) -> i64 {
    // Extended Euclid; gcd(a, modulus) = 1 guaranteed by ProductCoords::new.
    let (mut old_r, mut r) = (a.rem_euclid(modulus), modulus);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(modulus)
}

/// A generated instance; `degenerate` marks parameter choices whose defining
/// ranges collide (the construction still returns the literal sets).
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub instance: CrossTilingInstance,
    pub degenerate: bool,
}

/// The `N = 2ab` family (odd `a`, `b`), built in `Z_{ab} x Z_2` coordinates:
///
/// - `A = {0..a-1} x {0}`
/// - `B = ({0,1} u {a+2..2a-1}) x {0}`
/// - `X = {0, a, ..., (b-1)a} x {0}`
/// - `Y = {0, a, ..., (b-1)a} x {1}`
///
/// `A+X = B+X` fills the even layer and `A+Y = B+Y` the odd one, so the pair
/// cross tiles; `X` and `Y` are translates of each other. For `a = 1` the
/// two ranges defining `B` collide and the instance is flagged degenerate.
pub fn gen_example_first(a: usize, b: usize) -> Result<GeneratedInstance, CrossError> {
    if a.is_multiple_of(2) {
        return Err(CrossError::EvenParameter {
            name: "a",
            value: a,
        });
    }
    if b.is_multiple_of(2) {
        return Err(CrossError::EvenParameter {
            name: "b",
            value: b,
        });
    }
    let ab = a * b;
    let coords = ProductCoords::new(ab, 2)?;
    let set_a = coords.set_from_pairs((0..a).map(|i| (i, 0)));
    let b_cols: Vec<usize> = [0, 1]
        .into_iter()
        .chain(a + 2..2 * a)
        .map(|i| i % ab)
        .collect();
    let set_b = coords.set_from_pairs(b_cols.iter().map(|&i| (i, 0)));
    let set_x = coords.set_from_pairs((0..b).map(|j| (j * a, 0)));
    let set_y = coords.set_from_pairs((0..b).map(|j| (j * a, 1)));
    let degenerate = a < 3;
    Ok(GeneratedInstance {
        instance: CrossTilingInstance::new(set_a, set_b, set_x, set_y)?,
        degenerate,
    })
}

/// The `Z_120 = Z_15 x Z_8` instance in which no two of the four sets are
/// translates of one another.
///
/// `F1 = {0,1,2}` and `F2 = {0,4,5}` both tile `Z_15` with the complement
/// `{0,3,6,9,12}`. Inside the index-2 subgroup `H = Z_15 x {0,2,4,6}`:
///
/// - `A = F1 x {0,2}`, `B = F2 x {0,2}`,
/// - `X = {0,3,6,9,12} x {0,4}`,
/// - `Y' = ({0} x {2,6}) u ({3,6,9,12} x {0,4})` (the first column of `X`
///   raised by one step of `H`), and `Y = Y' + (0,1)`, pushing `Y` off the
///   subgroup so that the `+Y` sums tile the nontrivial coset.
pub fn gen_example_second() -> CrossTilingInstance {
    let coords = ProductCoords::new(15, 8).expect("15 and 8 are coprime");
    let f1 = [0usize, 1, 2];
    let f2 = [0usize, 4, 5];
    let comp = [0usize, 3, 6, 9, 12];
    let set_a = coords.set_from_pairs(f1.iter().flat_map(|&u| [(u, 0), (u, 2)]));
    let set_b = coords.set_from_pairs(f2.iter().flat_map(|&u| [(u, 0), (u, 2)]));
    let set_x = coords.set_from_pairs(comp.iter().flat_map(|&u| [(u, 0), (u, 4)]));
    let y_prime_pairs: Vec<(usize, usize)> = [(0usize, 2usize), (0, 6)]
        .into_iter()
        .chain(comp[1..].iter().flat_map(|&u| [(u, 0), (u, 4)]))
        .collect();
    let y_prime = coords.set_from_pairs(y_prime_pairs);
    let shift = coords.combine(0, 1) as i64;
    let set_y = y_prime.translate(shift);
    CrossTilingInstance::new(set_a, set_b, set_x, set_y).expect("shared modulus 120")
}
