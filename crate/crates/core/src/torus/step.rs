//! Exact piecewise-constant functions on a circle of rational circumference.
//!
//! A [`StepFunction`] keeps its breakpoints as exact rationals, so sums,
//! rotations, and constancy checks are decided with no tolerance at all.
//! This is the evaluation engine behind every "level function equals a
//! constant almost everywhere" check in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::TorusError;

/// Integer-valued piecewise-constant function on `R / period`.
///
/// Stored as cut points `0 = c_0 < c_1 < ... < c_{k-1} < period` with
/// `values[i]` on `[c_i, c_{i+1})` (the last segment wraps to the period).
/// Adjacent equal values are merged, so representations are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    period: BigRational,
    cuts: Vec<BigRational>,
    values: Vec<i64>,
}

impl StepFunction {
    pub fn constant(period: BigRational, value: i64) -> Result<Self, TorusError> {
        check_period(&period)?;
        Ok(StepFunction {
            period,
            cuts: vec![BigRational::zero()],
            values: vec![value],
        })
    }

    /// Indicator of a union of half-open intervals inside `[0, period)`.
    /// Overlapping or touching input intervals are merged.
    pub fn indicator(
        period: BigRational,
        intervals: &[(BigRational, BigRational)],
    ) -> Result<Self, TorusError> {
        check_period(&period)?;
        let mut sorted: Vec<(BigRational, BigRational)> = intervals
            .iter()
            .filter(|(lo, hi)| lo < hi)
            .cloned()
            .collect();
        for (lo, hi) in &sorted {
            if lo.is_negative() || *hi > period {
                return Err(TorusError::IntervalOutOfWindow {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    period: period.to_string(),
                });
            }
        }
        sorted.sort();
        let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
        for (lo, hi) in sorted {
            match merged.last_mut() {
                Some((_, prev_hi)) if lo <= *prev_hi => {
                    if hi > *prev_hi {
                        *prev_hi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        let mut cuts = vec![BigRational::zero()];
        let mut values = vec![0i64];
        for (lo, hi) in merged {
            if lo.is_zero() {
                values[0] = 1;
            } else {
                cuts.push(lo);
                values.push(1);
            }
            if hi < period {
                cuts.push(hi);
                values.push(0);
            }
        }
        Ok(StepFunction {
            period,
            cuts,
            values,
        }
        .normalized())
    }

    /// Builds from explicit (cut, value) pairs; the first cut must be 0.
    pub fn from_segments(
        period: BigRational,
        segments: Vec<(BigRational, i64)>,
    ) -> Result<Self, TorusError> {
        check_period(&period)?;
        if segments.is_empty() || !segments[0].0.is_zero() {
            return Err(TorusError::MalformedStepFunction(
                "segments must start at 0".into(),
            ));
        }
        let mut cuts = Vec::with_capacity(segments.len());
        let mut values = Vec::with_capacity(segments.len());
        for (cut, value) in segments {
            if cut.is_negative() || cut >= period {
                return Err(TorusError::MalformedStepFunction(format!(
                    "cut {cut} outside [0, {period})"
                )));
            }
            if let Some(prev) = cuts.last() {
                if *prev >= cut {
                    return Err(TorusError::MalformedStepFunction(
                        "cuts must be strictly increasing".into(),
                    ));
                }
            }
            cuts.push(cut);
            values.push(value);
        }
        Ok(StepFunction {
            period,
            cuts,
            values,
        }
        .normalized())
    }

    pub fn period(&self) -> &BigRational {
        &self.period
    }

    /// `(cut, value)` pairs in canonical form.
    pub fn segments(&self) -> impl Iterator<Item = (&BigRational, i64)> {
        self.cuts.iter().zip(self.values.iter().copied())
    }

    /// Segment list as `(lo, hi, value)` triples covering one period.
    pub fn spans(&self) -> Vec<(BigRational, BigRational, i64)> {
        let mut out = Vec::with_capacity(self.cuts.len());
        for i in 0..self.cuts.len() {
            let lo = self.cuts[i].clone();
            let hi = if i + 1 < self.cuts.len() {
                self.cuts[i + 1].clone()
            } else {
                self.period.clone()
            };
            out.push((lo, hi, self.values[i]));
        }
        out
    }

    /// Value at `x` (reduced modulo the period).
    pub fn eval(&self, x: &BigRational) -> i64 {
        let x = reduce_mod(x, &self.period);
        // Last cut <= x wins.
        let idx = match self.cuts.binary_search_by(|c| c.cmp(&x)) {
            Ok(i) => i,
            Err(0) => unreachable!("cuts start at 0 and x >= 0"),
            Err(i) => i - 1,
        };
        self.values[idx]
    }

    /// `x -> f(x - shift)`.
    pub fn rotate(&self, shift: &BigRational) -> Self {
        let shift = reduce_mod(shift, &self.period);
        let mut pairs: Vec<(BigRational, i64)> = self
            .cuts
            .iter()
            .zip(&self.values)
            .map(|(c, &v)| (reduce_mod(&(c + &shift), &self.period), v))
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if pairs[0].0.is_zero() {
            // fine: rotation kept a cut at the origin
        } else {
            // The segment that wraps across 0 is the one with the largest
            // rotated cut; its value holds at 0.
            let wrap_value = pairs.last().unwrap().1;
            pairs.insert(0, (BigRational::zero(), wrap_value));
        }
        let (cuts, values) = pairs.into_iter().unzip();
        StepFunction {
            period: self.period.clone(),
            cuts,
            values,
        }
        .normalized()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, TorusError> {
        if self.period != other.period {
            return Err(TorusError::PeriodMismatch {
                left: self.period.to_string(),
                right: other.period.to_string(),
            });
        }
        let mut cuts: Vec<BigRational> = self
            .cuts
            .iter()
            .chain(other.cuts.iter())
            .cloned()
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut values = Vec::with_capacity(cuts.len());
        for cut in &cuts {
            let sum = self
                .eval(cut)
                .checked_add(other.eval(cut))
                .ok_or(TorusError::Overflow)?;
            values.push(sum);
        }
        Ok(StepFunction {
            period: self.period.clone(),
            cuts,
            values,
        }
        .normalized())
    }

    pub fn scale(&self, factor: i64) -> Result<Self, TorusError> {
        let values = self
            .values
            .iter()
            .map(|v| v.checked_mul(factor).ok_or(TorusError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StepFunction {
            period: self.period.clone(),
            cuts: self.cuts.clone(),
            values,
        }
        .normalized())
    }

    /// `sum_i w_i f(x - p_i)` over weighted atoms, exactly.
    pub fn combine_atoms(
        &self,
        atoms: &[(BigRational, i64)],
    ) -> Result<Self, TorusError> {
        let mut acc = StepFunction::constant(self.period.clone(), 0)?;
        for (position, weight) in atoms {
            let shifted = self.rotate(position).scale(*weight)?;
            acc = acc.checked_add(&shifted)?;
        }
        Ok(acc)
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn constant_value(&self) -> Option<i64> {
        if self.values.len() == 1 {
            Some(self.values[0])
        } else {
            None
        }
    }

    /// Spans on which the function differs from `expected`.
    pub fn violations(&self, expected: i64) -> Vec<(BigRational, BigRational, i64)> {
        self.spans()
            .into_iter()
            .filter(|(_, _, v)| *v != expected)
            .collect()
    }

    /// Total integral over one period, an exact rational.
    pub fn integral(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (lo, hi, v) in self.spans() {
            acc += (hi - lo) * BigRational::from_integer(BigInt::from(v));
        }
        acc
    }

    fn normalized(mut self) -> Self {
        let mut cuts = Vec::with_capacity(self.cuts.len());
        let mut values: Vec<i64> = Vec::with_capacity(self.values.len());
        for (cut, value) in self.cuts.drain(..).zip(self.values.drain(..)) {
            if values.last() == Some(&value) {
                continue;
            }
            cuts.push(cut);
            values.push(value);
        }
        // The function wraps: a trailing segment equal to the leading one
        // merges across 0 only if it would change membership of cut 0, which
        // it cannot; representation stays (0, v0) first. But when the last
        // value equals the first AND there is more than one segment, the
        // wrap-around is still two spans of equal value; that is fine for
        // evaluation and kept for simplicity of the invariant cuts[0] = 0.
        StepFunction {
            period: self.period,
            cuts,
            values,
        }
    }
}

fn check_period(period: &BigRational) -> Result<(), TorusError> {
    if period.is_positive() {
        Ok(())
    } else {
        Err(TorusError::NonPositivePeriod(period.to_string()))
    }
}

/// Reduces `x` into `[0, period)`.
pub fn reduce_mod(x: &BigRational, period: &BigRational) -> BigRational {
    let q = (x / period).floor();
    x - q * period
}
