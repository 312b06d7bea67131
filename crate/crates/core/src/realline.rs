//! Multiplicative tilings of the real line, handled exactly in log
//! coordinates.
//!
//! A multiplicative tiling `A . Omega = R` with both signs present reduces
//! to the simultaneous translational tilings
//!
//! ```text
//! 1 = a+ * w+ (x) + a- * w- (x) = a- * w+ (x) + a+ * w- (x)
//! ```
//!
//! of log coordinates, where `w+-` are interval unions in a fundamental
//! window `[0, 1)` and `a+- = Z + (1/L) alpha+-`. Everything here verifies
//! those identities exactly on one period, constructs instances from
//! per-coset cross-tiling data, and reduces instances back to that data.
//! The exponential map is rendering only: no decision is ever made in
//! multiplicative coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cross::{verify_cross, CrossError, CrossTilingInstance};
use crate::torus::step::{reduce_mod, StepFunction};
use crate::torus::TorusError;
use crate::zn::CyclicSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealLineError {
    #[error("window must be positive, got {0}")]
    BadWindow(String),
    #[error("interval [{lo}, {hi}) escapes the window [0, {window})")]
    OutOfWindow {
        lo: String,
        hi: String,
        window: String,
    },
    #[error("offset {offset} is not of the form alpha/{l}")]
    OffsetDenominator { offset: String, l: usize },
    #[error("L must be positive")]
    ZeroL,
    #[error("instance parts must be normalized to window 1 and period 1, got {0}")]
    NotNormalized(String),
    #[error("cells do not partition [0, 1/{l}): {reason}")]
    CellsNotPartition { l: usize, reason: String },
    #[error("cell {index} ([{lo}, {hi})) fails the per-cell cross-tiling condition")]
    CellNotCrossTiling {
        index: usize,
        lo: String,
        hi: String,
    },
    #[error("offset {0} appears more than twice in the union multiset")]
    MultiplicityTooHigh(String),
    #[error("offset {0} occurs twice and both occurrences are assigned to the same side; a+ and a- must be sets")]
    DoubleAssignment(String),
    #[error("{offsets} offsets but {sides} side assignments")]
    SplitLengthMismatch { offsets: usize, sides: usize },
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Cross(#[from] CrossError),
}

/// A finite union of half-open rational intervals inside the fundamental
/// window `[0, window)`, kept sorted, disjoint, and non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    window: BigRational,
    intervals: Vec<(BigRational, BigRational)>,
}

impl IntervalUnion {
    pub fn new(
        window: BigRational,
        intervals: Vec<(BigRational, BigRational)>,
    ) -> Result<Self, RealLineError> {
        if !window.is_positive() {
            return Err(RealLineError::BadWindow(window.to_string()));
        }
        let mut kept: Vec<(BigRational, BigRational)> = Vec::new();
        for (lo, hi) in intervals {
            if lo >= hi {
                continue; // empty interval
            }
            if lo.is_negative() || hi > window {
                return Err(RealLineError::OutOfWindow {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    window: window.to_string(),
                });
            }
            kept.push((lo, hi));
        }
        kept.sort();
        let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
        for (lo, hi) in kept {
            match merged.last_mut() {
                Some((_, prev_hi)) if lo <= *prev_hi => {
                    if hi > *prev_hi {
                        *prev_hi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        Ok(IntervalUnion {
            window,
            intervals: merged,
        })
    }

    pub fn empty(window: BigRational) -> Result<Self, RealLineError> {
        IntervalUnion::new(window, Vec::new())
    }

    pub fn window(&self) -> &BigRational {
        &self.window
    }

    pub fn intervals(&self) -> &[(BigRational, BigRational)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Total measure, an exact rational.
    pub fn measure(&self) -> BigRational {
        self.intervals
            .iter()
            .map(|(lo, hi)| hi - lo)
            .fold(BigRational::zero(), |acc, len| acc + len)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo <= x && x < hi)
    }

    /// Indicator as an exact step function on `R / window`.
    pub fn to_step(&self) -> StepFunction {
        StepFunction::indicator(self.window.clone(), &self.intervals)
            .expect("normalized intervals fit the window")
    }

    /// Dilation by a positive rational factor (window scales with it).
    pub fn scale(&self, factor: &BigRational) -> Result<Self, RealLineError> {
        if !factor.is_positive() {
            return Err(RealLineError::BadWindow(factor.to_string()));
        }
        IntervalUnion::new(
            &self.window * factor,
            self.intervals
                .iter()
                .map(|(lo, hi)| (lo * factor, hi * factor))
                .collect(),
        )
    }
}

/// `period * Z + offsets`: a periodic set of translates given by its
/// distinct sorted offsets in `[0, period)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicTranslateSet {
    period: BigRational,
    offsets: Vec<BigRational>,
}

impl PeriodicTranslateSet {
    pub fn new(
        period: BigRational,
        offsets: Vec<BigRational>,
    ) -> Result<Self, RealLineError> {
        if !period.is_positive() {
            return Err(RealLineError::BadWindow(period.to_string()));
        }
        let mut offsets: Vec<BigRational> = offsets
            .into_iter()
            .map(|o| reduce_mod(&o, &period))
            .collect();
        offsets.sort();
        offsets.dedup();
        Ok(PeriodicTranslateSet { period, offsets })
    }

    pub fn period(&self) -> &BigRational {
        &self.period
    }

    pub fn offsets(&self) -> &[BigRational] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn scale(&self, factor: &BigRational) -> Result<Self, RealLineError> {
        if !factor.is_positive() {
            return Err(RealLineError::BadWindow(factor.to_string()));
        }
        PeriodicTranslateSet::new(
            &self.period * factor,
            self.offsets.iter().map(|o| o * factor).collect(),
        )
    }
}

/// A multiplicative-tiling instance in normalized log coordinates: interval
/// unions `w+-` inside `[0, 1)` and translate sets `a+- = Z + (1/L) alpha+-`.
///
/// `refinement` is the least `M` making every interval endpoint a multiple
/// of `1/(L M)`; it is computed on admission, so arbitrary rational
/// endpoints are accepted and simply refine the cell grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultTilingInstance {
    l: usize,
    refinement: usize,
    omega_plus: IntervalUnion,
    omega_minus: IntervalUnion,
    a_plus: PeriodicTranslateSet,
    a_minus: PeriodicTranslateSet,
}

impl MultTilingInstance {
    pub fn new(
        l: usize,
        omega_plus: IntervalUnion,
        omega_minus: IntervalUnion,
        a_plus: PeriodicTranslateSet,
        a_minus: PeriodicTranslateSet,
    ) -> Result<Self, RealLineError> {
        if l == 0 {
            return Err(RealLineError::ZeroL);
        }
        let one = BigRational::one();
        for omega in [&omega_plus, &omega_minus] {
            if omega.window() != &one {
                return Err(RealLineError::NotNormalized(format!(
                    "omega window {}",
                    omega.window()
                )));
            }
        }
        for a in [&a_plus, &a_minus] {
            if a.period() != &one {
                return Err(RealLineError::NotNormalized(format!(
                    "translate period {}",
                    a.period()
                )));
            }
            for offset in a.offsets() {
                let scaled = offset * BigRational::from_integer(BigInt::from(l));
                if !scaled.is_integer() {
                    return Err(RealLineError::OffsetDenominator {
                        offset: offset.to_string(),
                        l,
                    });
                }
            }
        }
        let refinement = compute_refinement(l, [&omega_plus, &omega_minus])?;
        Ok(MultTilingInstance {
            l,
            refinement,
            omega_plus,
            omega_minus,
            a_plus,
            a_minus,
        })
    }

    /// Normalizing constructor: accepts parts over an arbitrary common
    /// period (the translate sets' period, with the interval unions living
    /// in a window of the same length) and rescales everything to the
    /// canonical period 1 before admission.
    pub fn rescaled(
        l: usize,
        omega_plus: IntervalUnion,
        omega_minus: IntervalUnion,
        a_plus: PeriodicTranslateSet,
        a_minus: PeriodicTranslateSet,
    ) -> Result<Self, RealLineError> {
        let period = a_plus.period().clone();
        if a_minus.period() != &period {
            return Err(RealLineError::NotNormalized(format!(
                "translate periods differ: {} vs {}",
                period,
                a_minus.period()
            )));
        }
        for omega in [&omega_plus, &omega_minus] {
            if omega.window() != &period {
                return Err(RealLineError::NotNormalized(format!(
                    "window {} does not match the period {}",
                    omega.window(),
                    period
                )));
            }
        }
        let factor = period.recip();
        MultTilingInstance::new(
            l,
            omega_plus.scale(&factor)?,
            omega_minus.scale(&factor)?,
            a_plus.scale(&factor)?,
            a_minus.scale(&factor)?,
        )
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn refinement(&self) -> usize {
        self.refinement
    }

    pub fn omega_plus(&self) -> &IntervalUnion {
        &self.omega_plus
    }

    pub fn omega_minus(&self) -> &IntervalUnion {
        &self.omega_minus
    }

    pub fn a_plus(&self) -> &PeriodicTranslateSet {
        &self.a_plus
    }

    pub fn a_minus(&self) -> &PeriodicTranslateSet {
        &self.a_minus
    }
}

fn compute_refinement(
    l: usize,
    omegas: [&IntervalUnion; 2],
) -> Result<usize, RealLineError> {
    // M = lcm over endpoints e of denom(e) / gcd(denom(e), L).
    let l_big = BigInt::from(l);
    let mut m = BigInt::one();
    for omega in omegas {
        for (lo, hi) in omega.intervals() {
            for e in [lo, hi] {
                let d = e.denom();
                let need = d / d.gcd(&l_big);
                m = m.lcm(&need);
            }
        }
    }
    m.to_usize().ok_or_else(|| RealLineError::CellsNotPartition {
        l,
        reason: "refinement does not fit a machine word".into(),
    })
}

/// One identity of the pair, checked exactly: the expected constant, the
/// verdict, and the offending spans `(lo, hi, achieved)` when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub expected: i64,
    pub ok: bool,
    pub violations: Vec<(BigRational, BigRational, i64)>,
}

fn level_report(level: &StepFunction, expected: i64) -> LevelReport {
    let violations = level.violations(expected);
    LevelReport {
        expected,
        ok: violations.is_empty(),
        violations,
    }
}

/// The two identities of a multiplicative tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultReport {
    pub first: LevelReport,
    pub second: LevelReport,
}

impl MultReport {
    pub fn verified(&self) -> bool {
        self.first.ok && self.second.ok
    }
}

fn unit_atoms(a: &PeriodicTranslateSet) -> Vec<(BigRational, i64)> {
    a.offsets().iter().map(|o| (o.clone(), 1)).collect()
}

fn level_function(
    omega_a: &IntervalUnion,
    trans_a: &PeriodicTranslateSet,
    omega_b: &IntervalUnion,
    trans_b: &PeriodicTranslateSet,
) -> StepFunction {
    let part_a = omega_a
        .to_step()
        .combine_atoms(&unit_atoms(trans_a))
        .expect("bounded weights");
    let part_b = omega_b
        .to_step()
        .combine_atoms(&unit_atoms(trans_b))
        .expect("bounded weights");
    part_a.checked_add(&part_b).expect("bounded weights")
}

/// Verifies both identities
/// `a+ * w+ + a- * w- = 1` and `a- * w+ + a+ * w- = 1`
/// exactly as piecewise-constant functions on one period.
pub fn verify_mult_tiling(inst: &MultTilingInstance) -> MultReport {
    let first = level_function(&inst.omega_plus, &inst.a_plus, &inst.omega_minus, &inst.a_minus);
    let second = level_function(&inst.omega_plus, &inst.a_minus, &inst.omega_minus, &inst.a_plus);
    MultReport {
        first: level_report(&first, 1),
        second: level_report(&second, 1),
    }
}

/// The sum and difference identities
/// `(w+ + w-) * (a+ + a-) = 2` and `(w+ - w-) * (a+ - a-) = 0`,
/// checked independently of [`verify_mult_tiling`] (they are its sum and
/// difference, so any verified instance passes both).
pub fn sum_diff_reports(inst: &MultTilingInstance) -> (LevelReport, LevelReport) {
    let omega_sum = inst
        .omega_plus
        .to_step()
        .checked_add(&inst.omega_minus.to_step())
        .expect("values at most 2");
    let mut atoms_sum = unit_atoms(&inst.a_plus);
    atoms_sum.extend(unit_atoms(&inst.a_minus));
    let sum = omega_sum.combine_atoms(&atoms_sum).expect("bounded");

    let omega_diff = inst
        .omega_plus
        .to_step()
        .checked_add(&inst.omega_minus.to_step().scale(-1).expect("small"))
        .expect("values within +-1");
    let mut atoms_diff: Vec<(BigRational, i64)> = unit_atoms(&inst.a_plus);
    atoms_diff.extend(inst.a_minus.offsets().iter().map(|o| (o.clone(), -1)));
    let diff = omega_diff.combine_atoms(&atoms_diff).expect("bounded");

    (level_report(&sum, 2), level_report(&diff, 0))
}

pub fn sum_diff_check(inst: &MultTilingInstance) -> (bool, bool) {
    let (sum, diff) = sum_diff_reports(inst);
    (sum.ok, diff.ok)
}

/// Per-cell cross-tiling data: on the cell `[lo, hi)` of `[0, 1/L)`, the
/// tile picks the grid classes `b+` (positive side) and `b-` (negative
/// side) of `Z_L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellData {
    pub lo: BigRational,
    pub hi: BigRational,
    pub b_plus: CyclicSet,
    pub b_minus: CyclicSet,
}

/// Assembles a multiplicative tiling from per-cell cross-tiling data:
///
/// `w+- = union over cells of (cell + (1/L) b+-)` and
/// `a+- = Z + (1/L) alpha+-`.
///
/// Every cell must satisfy the two per-coset tilings of `Z_L` with roles
/// `(A, B, X, Y) = (b+, b-, alpha+, alpha-)`; a failing cell is rejected by
/// index. The output always passes [`verify_mult_tiling`].
pub fn construct_from_cross(
    l: usize,
    cells: &[CellData],
    alpha_plus: &CyclicSet,
    alpha_minus: &CyclicSet,
) -> Result<MultTilingInstance, RealLineError> {
    if l == 0 {
        return Err(RealLineError::ZeroL);
    }
    let cell_width = BigRational::new(BigInt::one(), BigInt::from(l));
    // Cells must partition [0, 1/L).
    let mut sorted: Vec<&CellData> = cells.iter().collect();
    sorted.sort_by(|a, b| a.lo.cmp(&b.lo));
    if sorted.is_empty() {
        return Err(RealLineError::CellsNotPartition {
            l,
            reason: "no cells given".into(),
        });
    }
    let mut cursor = BigRational::zero();
    for cell in &sorted {
        if cell.lo != cursor {
            return Err(RealLineError::CellsNotPartition {
                l,
                reason: format!("gap or overlap at {}", cell.lo),
            });
        }
        if cell.hi <= cell.lo {
            return Err(RealLineError::CellsNotPartition {
                l,
                reason: format!("empty cell at {}", cell.lo),
            });
        }
        cursor = cell.hi.clone();
    }
    if cursor != cell_width {
        return Err(RealLineError::CellsNotPartition {
            l,
            reason: format!("cells end at {cursor}, not 1/{l}"),
        });
    }
    // Per-cell cross-tiling precondition.
    for (index, cell) in sorted.iter().enumerate() {
        let inst = CrossTilingInstance::new(
            cell.b_plus.clone(),
            cell.b_minus.clone(),
            alpha_plus.clone(),
            alpha_minus.clone(),
        )?;
        if !verify_cross(&inst).verified() {
            return Err(RealLineError::CellNotCrossTiling {
                index,
                lo: cell.lo.to_string(),
                hi: cell.hi.to_string(),
            });
        }
    }
    let one = BigRational::one();
    let grid = |k: usize| BigRational::new(BigInt::from(k), BigInt::from(l));
    let mut plus_intervals = Vec::new();
    let mut minus_intervals = Vec::new();
    for cell in &sorted {
        for k in cell.b_plus.iter_members() {
            plus_intervals.push((&cell.lo + grid(k), &cell.hi + grid(k)));
        }
        for k in cell.b_minus.iter_members() {
            minus_intervals.push((&cell.lo + grid(k), &cell.hi + grid(k)));
        }
    }
    let omega_plus = IntervalUnion::new(one.clone(), plus_intervals)?;
    let omega_minus = IntervalUnion::new(one.clone(), minus_intervals)?;
    let a_plus = PeriodicTranslateSet::new(
        one.clone(),
        alpha_plus.iter_members().map(grid).collect(),
    )?;
    let a_minus =
        PeriodicTranslateSet::new(one, alpha_minus.iter_members().map(grid).collect())?;
    MultTilingInstance::new(l, omega_plus, omega_minus, a_plus, a_minus)
}

/// The inverse direction: per-cell grid classes extracted from an instance,
/// together with the shared `(alpha+, alpha-)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReduction {
    pub l: usize,
    pub alpha_plus: CyclicSet,
    pub alpha_minus: CyclicSet,
    pub cells: Vec<CellData>,
}

/// Restricts the instance to the `L`-point orbit of each refinement cell
/// `x` of `[0, 1/L)`, extracting `b+-_x = { k : x + k/L in w+- }`.
///
/// Inverse of [`construct_from_cross`] up to cell refinement; when the
/// instance verifies, every extracted tuple is itself a cross tiling of
/// `Z_L`.
pub fn reduce_to_cycles(inst: &MultTilingInstance) -> Result<CycleReduction, RealLineError> {
    let l = inst.l;
    let l_rat = BigRational::from_integer(BigInt::from(l));
    let cell_width = BigRational::new(BigInt::one(), BigInt::from(l));
    let alpha = |a: &PeriodicTranslateSet| -> Result<CyclicSet, RealLineError> {
        let members = a
            .offsets()
            .iter()
            .map(|o| {
                let scaled = o * &l_rat;
                if !scaled.is_integer() {
                    return Err(RealLineError::OffsetDenominator {
                        offset: o.to_string(),
                        l,
                    });
                }
                Ok(scaled.to_integer().to_usize().expect("offset in [0, 1)"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CyclicSet::from_members(l, members).expect("members below L"))
    };
    let alpha_plus = alpha(&inst.a_plus)?;
    let alpha_minus = alpha(&inst.a_minus)?;
    // Cell boundaries: every interval endpoint folded into [0, 1/L).
    let mut bounds = vec![BigRational::zero(), cell_width.clone()];
    for omega in [&inst.omega_plus, &inst.omega_minus] {
        for (lo, hi) in omega.intervals() {
            bounds.push(reduce_mod(lo, &cell_width));
            bounds.push(reduce_mod(hi, &cell_width));
        }
    }
    bounds.sort();
    bounds.dedup();
    let mut cells = Vec::new();
    for pair in bounds.windows(2) {
        let (lo, hi) = (pair[0].clone(), pair[1].clone());
        if lo >= hi {
            continue;
        }
        let grid_class = |omega: &IntervalUnion| -> CyclicSet {
            let members = (0..l).filter(|&k| {
                let point = &lo + BigRational::new(BigInt::from(k), BigInt::from(l));
                omega.contains(&point)
            });
            CyclicSet::from_members(l, members).expect("k below L")
        };
        cells.push(CellData {
            b_plus: grid_class(&inst.omega_plus),
            b_minus: grid_class(&inst.omega_minus),
            lo,
            hi,
        });
    }
    Ok(CycleReduction {
        l,
        alpha_plus,
        alpha_minus,
        cells,
    })
}

/// Side assignment for one occurrence of a union offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Result of a symmetric-case split check.
#[derive(Debug, Clone)]
pub struct SplitCheck {
    /// The level-2 identity `(w + w) * (a+ + a-) = 2` for the union multiset.
    pub union_level2: LevelReport,
    /// The two tiling identities for the chosen split.
    pub instance_report: MultReport,
    pub instance: MultTilingInstance,
}

impl SplitCheck {
    pub fn verified(&self) -> bool {
        self.union_level2.ok && self.instance_report.verified()
    }
}

/// Symmetric case `w+ = w- = omega`: verifies the level-2 union identity and
/// that the given split of the union multiset (multiplicity at most 2) into
/// the two *sets* `a+`, `a-` yields a valid instance. A multiplicity-2
/// offset must receive one `+` and one `-`; assigning both occurrences to
/// one side is rejected, since the sides are sets, not multisets.
pub fn symmetric_split_check(
    omega: &IntervalUnion,
    union_offsets: &[BigRational],
    split: &[Side],
) -> Result<SplitCheck, RealLineError> {
    if union_offsets.len() != split.len() {
        return Err(RealLineError::SplitLengthMismatch {
            offsets: union_offsets.len(),
            sides: split.len(),
        });
    }
    let one = BigRational::one();
    if omega.window() != &one {
        return Err(RealLineError::NotNormalized(format!(
            "omega window {}",
            omega.window()
        )));
    }
    let reduced: Vec<BigRational> = union_offsets.iter().map(|o| reduce_mod(o, &one)).collect();
    // Multiplicity and side bookkeeping.
    let mut plus: Vec<BigRational> = Vec::new();
    let mut minus: Vec<BigRational> = Vec::new();
    for (offset, side) in reduced.iter().zip(split) {
        let bucket = match side {
            Side::Plus => &mut plus,
            Side::Minus => &mut minus,
        };
        if bucket.contains(offset) {
            return Err(RealLineError::DoubleAssignment(offset.to_string()));
        }
        bucket.push(offset.clone());
    }
    for offset in &reduced {
        let count = reduced.iter().filter(|o| *o == offset).count();
        if count > 2 {
            return Err(RealLineError::MultiplicityTooHigh(offset.to_string()));
        }
    }
    // Level-2 union identity: (w + w) * (union multiset) = 2.
    let doubled = omega.to_step().scale(2).expect("indicator");
    let union_atoms: Vec<(BigRational, i64)> =
        reduced.iter().map(|o| (o.clone(), 1)).collect();
    let union_level = doubled.combine_atoms(&union_atoms)?;
    let union_report = level_report(&union_level, 2);

    let l = offsets_lattice(&reduced);
    let instance = MultTilingInstance::new(
        l,
        omega.clone(),
        omega.clone(),
        PeriodicTranslateSet::new(one.clone(), plus)?,
        PeriodicTranslateSet::new(one, minus)?,
    )?;
    let instance_report = verify_mult_tiling(&instance);
    Ok(SplitCheck {
        union_level2: union_report,
        instance_report,
        instance,
    })
}

/// Least L with every offset in (1/L) Z.
fn offsets_lattice(offsets: &[BigRational]) -> usize {
    let mut l = BigInt::one();
    for o in offsets {
        l = l.lcm(o.denom());
    }
    l.to_usize().unwrap_or(1).max(1)
}

/// Text rendering of the instance in multiplicative coordinates:
/// `Omega = exp(w+) u -exp(w-)`, `A = exp(a+) u -exp(a-)`. Exact endpoints
/// are shown as `e^q` with decimal approximations to `precision` digits.
/// Diagnostic only; nothing exact happens on the multiplicative side.
pub fn to_multiplicative(inst: &MultTilingInstance, precision: usize) -> String {
    let mut out = String::new();
    let approx = |q: &BigRational| -> String {
        let x = q.to_f64().unwrap_or(f64::NAN).exp();
        format!("{x:.precision$}")
    };
    out.push_str(&format!(
        "multiplicative rendering (diagnostic): L = {}, refinement M = {}, {} grid cells per period\n",
        inst.l,
        inst.refinement,
        inst.l * inst.refinement,
    ));
    for (label, omega, sign) in [
        ("Omega+ = exp(omega+)", &inst.omega_plus, ""),
        ("Omega- = -exp(omega-)", &inst.omega_minus, "-"),
    ] {
        out.push_str(label);
        if omega.is_empty() {
            out.push_str(": empty\n");
            continue;
        }
        out.push_str(": ");
        for (i, (lo, hi)) in omega.intervals().iter().enumerate() {
            if i > 0 {
                out.push_str(" u ");
            }
            out.push_str(&format!(
                "{sign}[e^{lo}, e^{hi}) ~ {sign}[{}, {})",
                approx(lo),
                approx(hi)
            ));
        }
        out.push('\n');
    }
    for (label, a, sign) in [
        ("A+ = exp(a+)", &inst.a_plus, ""),
        ("A- = -exp(a-)", &inst.a_minus, "-"),
    ] {
        if a.is_empty() {
            out.push_str(&format!("{label}: empty\n"));
            continue;
        }
        let offsets: Vec<String> = a
            .offsets()
            .iter()
            .map(|o| format!("{sign}e^({o} + n)"))
            .collect();
        let approxes: Vec<String> = a.offsets().iter().map(&approx).collect();
        out.push_str(&format!(
            "{label}: {{ {} : n in Z }}, one period = factor e^1, offsets ~ {{ {} }}\n",
            offsets.join(", "),
            approxes.join(", ")
        ));
    }
    out.push_str(&format!(
        "offset families: 2 (|alpha+| = {}, |alpha-| = {})\n",
        inst.a_plus.len(),
        inst.a_minus.len()
    ));
    out
}
