//! Level-`l` translational tiling verification in `Z_N`, the exact Fourier
//! tiling criterion, and complement enumeration.
//!
//! `A + X` tiles `Z_N` at level `l` exactly when the cyclic convolution of
//! the indicators is the constant `l`. The Fourier route checks the same
//! thing through cardinalities and exact character-sum zero sets; both are
//! kept side by side because their agreement on every input is one of the
//! artifact's standing checks.

use thiserror::Error;

use crate::zn::{convolve, dft_zero_set, CyclicSet, WeightedCyclicVector, ZnError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("tiling level must be positive, got {0}")]
    NonPositiveLevel(i64),
    #[error(transparent)]
    Zn(#[from] ZnError),
}

/// Default cap on reported violations; diagnostics, not enumeration.
pub const DEFAULT_VIOLATION_CAP: usize = 32;

/// A point where the level function missed its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub point: usize,
    pub multiplicity: i64,
}

/// Outcome of a constant-level check.
///
/// `is_tiling` holds exactly when `violations` is empty and `level` is
/// present; if it holds for a pair check then `level * N = |A| * |X|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingReport {
    pub is_tiling: bool,
    pub level: Option<i64>,
    pub violations: Vec<Violation>,
    /// True when more violations existed than the cap allowed to record.
    pub truncated: bool,
}

/// Checks whether a weighted vector is the constant `expected`, reporting up
/// to `cap` offending points.
pub fn constant_report(
    vector: &WeightedCyclicVector,
    expected: i64,
    cap: usize,
) -> TilingReport {
    let mut violations = Vec::new();
    let mut truncated = false;
    for (point, &multiplicity) in vector.weights().iter().enumerate() {
        if multiplicity != expected {
            if violations.len() < cap {
                violations.push(Violation {
                    point,
                    multiplicity,
                });
            } else {
                truncated = true;
            }
        }
    }
    let is_tiling = violations.is_empty() && !truncated;
    TilingReport {
        is_tiling,
        level: is_tiling.then_some(expected),
        violations,
        truncated,
    }
}

/// Verifies `A + X = Z_N` at the given level by direct convolution.
pub fn verify_tiling(
    a: &CyclicSet,
    x: &CyclicSet,
    level: i64,
) -> Result<TilingReport, TilingError> {
    verify_tiling_capped(a, x, level, DEFAULT_VIOLATION_CAP)
}

pub fn verify_tiling_capped(
    a: &CyclicSet,
    x: &CyclicSet,
    level: i64,
    cap: usize,
) -> Result<TilingReport, TilingError> {
    if level <= 0 {
        return Err(TilingError::NonPositiveLevel(level));
    }
    let conv = convolve(&a.to_vector(), &x.to_vector())?;
    Ok(constant_report(&conv, level, cap))
}

/// The Fourier criterion for level-1 tiling: `|A| |X| = N` and every nonzero
/// frequency is a zero of at least one of the two character sums. Agrees
/// with `verify_tiling(A, X, 1)` on every input.
pub fn fourier_tiling_check(a: &CyclicSet, x: &CyclicSet) -> Result<bool, TilingError> {
    if a.modulus() != x.modulus() {
        return Err(ZnError::ModulusMismatch {
            left: a.modulus(),
            right: x.modulus(),
        }
        .into());
    }
    let n = a.modulus();
    if a.cardinality() * x.cardinality() != n {
        return Ok(false);
    }
    let zeros_a = dft_zero_set(&a.to_vector());
    let zeros_x = dft_zero_set(&x.to_vector());
    Ok((1..n).all(|k| zeros_a.contains(k) || zeros_x.contains(k)))
}

/// Result of complement enumeration. An infeasible cardinality yields an
/// empty list with a note rather than an error.
#[derive(Debug, Clone)]
pub struct Complements {
    pub complements: Vec<CyclicSet>,
    pub note: Option<String>,
}

/// Enumerates every `X` with `A + X = Z_N` a level-1 tiling.
///
/// Backtracking always extends over the smallest uncovered point, so each
/// solution is reached exactly once; the output is sorted in the canonical
/// set order regardless of exploration order.
pub fn find_complements(a: &CyclicSet) -> Complements {
    let n = a.modulus();
    let card = a.cardinality();
    if card == 0 || !n.is_multiple_of(card) {
        return Complements {
            complements: Vec::new(),
            note: Some(format!(
                "|A| = {card} does not divide N = {n}; no complement can exist"
            )),
        };
    }
    let members = a.members();
    let target = n / card;
    let mut covered = vec![false; n];
    let mut chosen: Vec<usize> = Vec::new();
    let mut found: Vec<CyclicSet> = Vec::new();
    backtrack(&members, n, target, &mut covered, &mut chosen, &mut found);
    found.sort();
    Complements {
        complements: found,
        note: None,
    }
}

fn backtrack(
    a: &[usize],
    n: usize,
    target: usize,
    covered: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    found: &mut Vec<CyclicSet>,
) {
    let first_uncovered = match covered.iter().position(|&c| !c) {
        None => {
            debug_assert_eq!(chosen.len(), target);
            found.push(
                CyclicSet::from_members(n, chosen.iter().copied()).expect("members in range"),
            );
            return;
        }
        Some(t) => t,
    };
    if chosen.len() == target {
        return;
    }
    // Any translate covering `first_uncovered` must sit at t - a for some a in A.
    for &elem in a {
        let candidate = (first_uncovered + n - elem % n) % n;
        if a.iter().any(|&s| covered[(candidate + s) % n]) {
            continue;
        }
        for &s in a {
            covered[(candidate + s) % n] = true;
        }
        chosen.push(candidate);
        backtrack(a, n, target, covered, chosen, found);
        chosen.pop();
        for &s in a {
            covered[(candidate + s) % n] = false;
        }
    }
}
