//! Property tests for the structural invariants: convolution algebra,
//! Fourier-zero exactness, cross-tiling symmetries and method agreement,
//! rational-class partitions, and the log-coordinate tiling identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use crosstile_core::cross::{
    self, classify, embed_product, fourier_cross_check, verify_cross, verify_cross_equiv,
    CrossTilingInstance, TrivialityKind,
};
use crosstile_core::realline::{
    construct_from_cross, reduce_to_cycles, sum_diff_check, verify_mult_tiling, CellData,
    IntervalUnion, MultTilingInstance, PeriodicTranslateSet,
};
use crosstile_core::tiling::{fourier_tiling_check, verify_tiling};
use crosstile_core::torus::{
    rational_classes, split_by_classes, verify_torus_tiling, zero_set_rational,
    ExponentialPolynomial, StepFunction, TorusPoint, WeightedPeriodicPointSet,
};
use crosstile_core::zn::{convolve, dft_numeric, dft_zero_set, CyclicSet, WeightedCyclicVector};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn set_from_mask(n: usize, mask: u64) -> CyclicSet {
    CyclicSet::from_members(n, (0..n).filter(|&i| mask & (1 << i) != 0)).unwrap()
}

proptest! {
    #[test]
    fn convolution_commutes_and_sums_multiply(
        n in 1usize..=16,
        wa in prop::collection::vec(-50i64..=50, 16),
        wb in prop::collection::vec(-50i64..=50, 16),
    ) {
        let u = WeightedCyclicVector::from_weights(n, wa[..n].to_vec()).unwrap();
        let v = WeightedCyclicVector::from_weights(n, wb[..n].to_vec()).unwrap();
        let uv = convolve(&u, &v).unwrap();
        let vu = convolve(&v, &u).unwrap();
        prop_assert_eq!(&uv, &vu);
        prop_assert_eq!(uv.total(), u.total() * v.total());
    }

    #[test]
    fn zero_set_is_translation_invariant(n in 1usize..=24, seed in any::<u64>(), t in 0i64..24) {
        let mut state = seed;
        let weights: Vec<i64> = (0..n)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 21) as i64 - 10
            })
            .collect();
        let u = WeightedCyclicVector::from_weights(n, weights).unwrap();
        prop_assert_eq!(dft_zero_set(&u.translate(t)), dft_zero_set(&u));
    }

    #[test]
    fn indicator_convolution_is_bounded(n in 1usize..=16, ma in any::<u64>(), mx in any::<u64>()) {
        let a = set_from_mask(n, ma);
        let x = set_from_mask(n, mx);
        let conv = convolve(&a.to_vector(), &x.to_vector()).unwrap();
        let bound = a.cardinality().min(x.cardinality()) as i64;
        for &w in conv.weights() {
            prop_assert!(w >= 0 && w <= bound);
        }
    }

    #[test]
    fn exact_zeros_match_numeric_dft(n in 1usize..=64, seed in any::<u64>()) {
        let mut state = seed;
        let weights: Vec<i64> = (0..n)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) % 201) as i64 - 100
            })
            .collect();
        let u = WeightedCyclicVector::from_weights(n, weights).unwrap();
        let zeros = dft_zero_set(&u);
        let numeric = dft_numeric(&u);
        for k in 0..n {
            if zeros.contains(k) {
                prop_assert!(numeric[k].norm() < 1e-6, "k={k} norm={}", numeric[k].norm());
            } else {
                prop_assert!(numeric[k].norm() > 1e-3, "k={k} norm={}", numeric[k].norm());
            }
        }
    }

    #[test]
    fn tiling_verdicts_are_symmetric_and_translation_invariant(
        n in 1usize..=12,
        ma in any::<u64>(),
        mx in any::<u64>(),
        t in 0i64..12,
        s in 0i64..12,
        level in 1i64..=3,
    ) {
        let a = set_from_mask(n, ma);
        let x = set_from_mask(n, mx);
        let forward = verify_tiling(&a, &x, 1).unwrap();
        let backward = verify_tiling(&x, &a, 1).unwrap();
        prop_assert_eq!(forward.is_tiling, backward.is_tiling);
        let moved = verify_tiling(&a.translate(t), &x.translate(s), 1).unwrap();
        prop_assert_eq!(forward.is_tiling, moved.is_tiling);
        prop_assert_eq!(forward.is_tiling, fourier_tiling_check(&a, &x).unwrap());
        // A positive verdict pins the counting identity level * N = |A| |X|.
        let leveled = verify_tiling(&a, &x, level).unwrap();
        if leveled.is_tiling {
            prop_assert_eq!(
                level as usize * n,
                a.cardinality() * x.cardinality()
            );
            prop_assert_eq!(leveled.level, Some(level));
        }
    }

    #[test]
    fn cross_methods_agree_and_symmetries_hold(
        n in 2usize..=10,
        ma in any::<u64>(),
        mb in any::<u64>(),
        mx in any::<u64>(),
        my in any::<u64>(),
        t in 0i64..10,
        s in 0i64..10,
        unit in 0usize..10,
    ) {
        let inst = CrossTilingInstance::new(
            set_from_mask(n, ma),
            set_from_mask(n, mb),
            set_from_mask(n, mx),
            set_from_mask(n, my),
        )
        .unwrap();
        let verdict = verify_cross(&inst).verified();
        prop_assert_eq!(verdict, verify_cross_equiv(&inst).verified());
        prop_assert_eq!(verdict, fourier_cross_check(&inst));
        prop_assert_eq!(verdict, embed_product(&inst).verified());
        if verdict {
            prop_assert!(cross::cardinality_condition(&inst));
            prop_assert_eq!(inst.cardinality_product(), 2 * n);
        }

        // Swap both pairs.
        let swapped = CrossTilingInstance::new(
            inst.b().clone(),
            inst.a().clone(),
            inst.y().clone(),
            inst.x().clone(),
        )
        .unwrap();
        prop_assert_eq!(verdict, verify_cross(&swapped).verified());

        // Exchange roles of the pairs.
        let exchanged = CrossTilingInstance::new(
            inst.x().clone(),
            inst.y().clone(),
            inst.a().clone(),
            inst.b().clone(),
        )
        .unwrap();
        prop_assert_eq!(verdict, verify_cross(&exchanged).verified());

        // Simultaneous translations.
        let translated = CrossTilingInstance::new(
            inst.a().translate(t),
            inst.b().translate(t),
            inst.x().translate(s),
            inst.y().translate(s),
        )
        .unwrap();
        prop_assert_eq!(verdict, verify_cross(&translated).verified());

        // Unit dilation applied to all four sets.
        if crosstile_core::zn::CyclicSet::full(n).unwrap().cardinality() > 0 {
            let u = (1..=n).map(|c| (unit + c) % n).find(|&c| gcd(c, n) == 1).unwrap();
            let dilated = CrossTilingInstance::new(
                inst.a().dilate(u).unwrap(),
                inst.b().dilate(u).unwrap(),
                inst.x().dilate(u).unwrap(),
                inst.y().dilate(u).unwrap(),
            )
            .unwrap();
            prop_assert_eq!(verdict, verify_cross(&dilated).verified());
        }
    }

    #[test]
    fn rational_classes_form_a_partition(
        rationals in prop::collection::vec((0i64..12, 1i64..6), 0..6),
        symbolics in prop::collection::vec((0i64..12, 1i64..6, 1u32..3), 0..6),
    ) {
        let one = BigRational::from_integer(BigInt::from(1));
        let mut points: Vec<TorusPoint> = Vec::new();
        for (p, q) in rationals {
            points.push(TorusPoint::rational(one.clone(), rat(p, q)).unwrap());
        }
        for (p, q, k) in symbolics {
            points.push(TorusPoint::with_symbol(one.clone(), rat(p, q), k, rat(1, 1)).unwrap());
        }
        let classes = rational_classes(&points).unwrap();
        // Disjoint cover of all indices.
        let mut seen = vec![false; points.len()];
        for class in &classes {
            for &i in class {
                prop_assert!(!seen[i]);
                seen[i] = true;
            }
        }
        prop_assert!(seen.into_iter().all(|s| s));
        // Within a class all pairs are equivalent; across classes none are.
        for (ci, class) in classes.iter().enumerate() {
            for &i in class {
                for (cj, other) in classes.iter().enumerate() {
                    for &j in other {
                        prop_assert_eq!(
                            points[i].rationally_equivalent(&points[j]),
                            ci == cj
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn split_by_classes_preserves_atoms(
        rationals in prop::collection::vec((0i64..12, 1i64..6, -3i64..=3), 1..5),
        symbolics in prop::collection::vec((0i64..12, 1i64..6, -3i64..=3), 0..4),
    ) {
        let one = BigRational::from_integer(BigInt::from(1));
        let mut atoms = Vec::new();
        for (p, q, w) in rationals {
            if w != 0 {
                atoms.push((TorusPoint::rational(one.clone(), rat(p, q)).unwrap(), w));
            }
        }
        for (p, q, w) in symbolics {
            if w != 0 {
                atoms.push((
                    TorusPoint::with_symbol(one.clone(), rat(p, q), 1, rat(1, 1)).unwrap(),
                    w,
                ));
            }
        }
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        atoms.dedup_by(|a, b| a.0 == b.0);
        prop_assume!(!atoms.is_empty());
        let tau = WeightedPeriodicPointSet::new(one, atoms.clone()).unwrap();
        let parts = split_by_classes(&tau);
        let mut merged: Vec<(TorusPoint, i64)> = parts
            .iter()
            .flat_map(|p| p.atoms().iter().cloned())
            .collect();
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        prop_assert_eq!(merged, atoms);
    }

    #[test]
    fn torus_verdicts_survive_common_rotation(
        cuts in prop::collection::vec((1i64..12, 2i64..13), 1..4),
        atom_data in prop::collection::vec((0i64..12, 1i64..6, 1i64..3), 1..4),
        rot_num in 0i64..12,
        rot_den in 1i64..6,
    ) {
        let one = BigRational::from_integer(BigInt::from(1));
        let intervals: Vec<(BigRational, BigRational)> = cuts
            .into_iter()
            .filter(|(p, q)| p < q)
            .map(|(p, q)| (rat(p - 1, q), rat(p, q)))
            .collect();
        prop_assume!(!intervals.is_empty());
        let tile = StepFunction::indicator(one.clone(), &intervals).unwrap();
        let mut atoms: Vec<(TorusPoint, i64)> = atom_data
            .into_iter()
            .map(|(p, q, w)| (TorusPoint::rational(one.clone(), rat(p, q)).unwrap(), w))
            .collect();
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        atoms.dedup_by(|a, b| a.0 == b.0);
        let tau = WeightedPeriodicPointSet::new(one.clone(), atoms).unwrap();
        let report = verify_torus_tiling(&tile, &tau).unwrap();

        let rotation = rat(rot_num, rot_den);
        let rotated_tile = tile.rotate(&rotation);
        let offset = TorusPoint::rational(one, rotation).unwrap();
        let rotated_tau = tau.translate(&offset).unwrap();
        let rotated = verify_torus_tiling(&rotated_tile, &rotated_tau).unwrap();
        prop_assert_eq!(report.is_tiling, rotated.is_tiling);
        prop_assert_eq!(report.level, rotated.level);
    }

    #[test]
    fn mult_tiling_equivalent_to_sum_diff(
        l in 1usize..=8,
        mb_plus in any::<u64>(),
        mb_minus in any::<u64>(),
        ma_plus in any::<u64>(),
        ma_minus in any::<u64>(),
    ) {
        let inst = grid_instance(l, mb_plus, mb_minus, ma_plus, ma_minus);
        let report = verify_mult_tiling(&inst);
        let (sum_ok, diff_ok) = sum_diff_check(&inst);
        prop_assert_eq!(report.verified(), sum_ok && diff_ok);
    }

    #[test]
    fn rational_zero_sets_match_numeric_evaluation(
        freq_data in prop::collection::vec((0i64..16, 0usize..8, -5i64..=5, -5i64..=5), 1..=8),
    ) {
        // Integer-coefficient exponential polynomials with up to 8 terms;
        // denominators drawn from divisors of 48 keep the common period
        // within the exactness-vs-float comparison range.
        const DENOMS: [i64; 8] = [1, 2, 3, 4, 6, 8, 12, 16];
        let one = BigRational::from_integer(BigInt::from(1));
        let mut terms = Vec::new();
        for (p, q_idx, re, im) in freq_data {
            let freq = TorusPoint::rational(one.clone(), rat(p, DENOMS[q_idx])).unwrap();
            if terms.iter().any(|(f, _): &(TorusPoint, _)| *f == freq) {
                continue;
            }
            terms.push((freq, (rat(re, 1), rat(im, 1))));
        }
        let f = ExponentialPolynomial::new(terms).unwrap();
        let zeros = zero_set_rational(&f).unwrap();
        let p = zeros.modulus();
        prop_assert!(p <= 64);
        for n in 0..p {
            let magnitude = f.eval_numeric(n as i64).norm();
            if zeros.contains(n) {
                prop_assert!(magnitude < 1e-6, "n={n}: {magnitude}");
            } else {
                prop_assert!(magnitude > 1e-3, "n={n}: {magnitude}");
            }
        }
    }

    #[test]
    fn step_function_verdicts_are_dilation_invariant(
        window_mask in 1u64..(1 << 6),
        atom_mask in 1u64..(1 << 6),
        scale_num in 1i64..5,
        scale_den in 1i64..5,
    ) {
        // A grid instance on Z_6, evaluated at period 1 and at a scaled
        // period; the constancy verdict and constant agree.
        let l = 6usize;
        let omega = grid_union(l, window_mask);
        let offsets: Vec<BigRational> = (0..l)
            .filter(|&k| atom_mask & (1 << k) != 0)
            .map(|k| rat(k as i64, l as i64))
            .collect();
        let atoms: Vec<(BigRational, i64)> = offsets.iter().map(|o| (o.clone(), 1)).collect();
        let level = omega.to_step().combine_atoms(&atoms).unwrap();

        let factor = rat(scale_num, scale_den);
        let scaled_omega = omega.scale(&factor).unwrap();
        let scaled_atoms: Vec<(BigRational, i64)> =
            offsets.iter().map(|o| (o * &factor, 1)).collect();
        let scaled_level = scaled_omega.to_step().combine_atoms(&scaled_atoms).unwrap();
        prop_assert_eq!(level.constant_value(), scaled_level.constant_value());
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Single-cell instance on the 1/L grid from four subset masks.
fn grid_instance(
    l: usize,
    mb_plus: u64,
    mb_minus: u64,
    ma_plus: u64,
    ma_minus: u64,
) -> MultTilingInstance {
    let omega_plus = grid_union(l, mb_plus);
    let omega_minus = grid_union(l, mb_minus);
    let offsets = |mask: u64| -> Vec<BigRational> {
        (0..l)
            .filter(|&k| mask & (1 << k) != 0)
            .map(|k| rat(k as i64, l as i64))
            .collect()
    };
    let one = BigRational::from_integer(BigInt::from(1));
    MultTilingInstance::new(
        l,
        omega_plus,
        omega_minus,
        PeriodicTranslateSet::new(one.clone(), offsets(ma_plus)).unwrap(),
        PeriodicTranslateSet::new(one, offsets(ma_minus)).unwrap(),
    )
    .unwrap()
}

fn grid_union(l: usize, mask: u64) -> IntervalUnion {
    let one = BigRational::from_integer(BigInt::from(1));
    let intervals: Vec<(BigRational, BigRational)> = (0..l)
        .filter(|&k| mask & (1 << k) != 0)
        .map(|k| (rat(k as i64, l as i64), rat(k as i64 + 1, l as i64)))
        .collect();
    IntervalUnion::new(one, intervals).unwrap()
}

/// The verify/sum-diff equivalence, exhaustively for L <= 3 on the full
/// grid (every instance with M = 1).
#[test]
fn mult_tiling_sum_diff_equivalence_exhaustive_small_l() {
    for l in 1usize..=3 {
        for mb_plus in 0u64..(1 << l) {
            for mb_minus in 0u64..(1 << l) {
                for ma_plus in 0u64..(1 << l) {
                    for ma_minus in 0u64..(1 << l) {
                        let inst = grid_instance(l, mb_plus, mb_minus, ma_plus, ma_minus);
                        let report = verify_mult_tiling(&inst);
                        let (sum_ok, diff_ok) = sum_diff_check(&inst);
                        assert_eq!(
                            report.verified(),
                            sum_ok && diff_ok,
                            "L={l} masks=({mb_plus},{mb_minus},{ma_plus},{ma_minus})"
                        );
                    }
                }
            }
        }
    }
}

/// Round trip: construct_from_cross . reduce_to_cycles recovers per-cell
/// data for every verified single-cell instance of Z_3.
#[test]
fn construct_reduce_round_trip_exhaustive_z3() {
    let l = 3usize;
    for mb_plus in 0u64..(1 << l) {
        for mb_minus in 0u64..(1 << l) {
            for ma_plus in 0u64..(1 << l) {
                for ma_minus in 0u64..(1 << l) {
                    let b_plus = set_from_mask(l, mb_plus);
                    let b_minus = set_from_mask(l, mb_minus);
                    let alpha_plus = set_from_mask(l, ma_plus);
                    let alpha_minus = set_from_mask(l, ma_minus);
                    let cross_ok = verify_cross(
                        &CrossTilingInstance::new(
                            b_plus.clone(),
                            b_minus.clone(),
                            alpha_plus.clone(),
                            alpha_minus.clone(),
                        )
                        .unwrap(),
                    )
                    .verified();
                    let cells = vec![CellData {
                        lo: rat(0, 1),
                        hi: rat(1, l as i64),
                        b_plus: b_plus.clone(),
                        b_minus: b_minus.clone(),
                    }];
                    let constructed =
                        construct_from_cross(l, &cells, &alpha_plus, &alpha_minus);
                    if !cross_ok {
                        assert!(constructed.is_err());
                        continue;
                    }
                    let inst = constructed.unwrap();
                    assert!(verify_mult_tiling(&inst).verified());
                    let reduction = reduce_to_cycles(&inst).unwrap();
                    assert_eq!(reduction.alpha_plus, alpha_plus);
                    assert_eq!(reduction.alpha_minus, alpha_minus);
                    for cell in &reduction.cells {
                        assert_eq!(cell.b_plus, b_plus);
                        assert_eq!(cell.b_minus, b_minus);
                    }
                }
            }
        }
    }
}

/// Triviality classification on purpose-built trivial instances.
#[test]
fn classify_detects_trivial_construction() {
    // A u B = {0,1,2,3} tiles Z_8 with X = {0,4}; X = Y.
    let a = CyclicSet::from_members(8, [0usize, 1]).unwrap();
    let b = CyclicSet::from_members(8, [2usize, 3]).unwrap();
    let x = CyclicSet::from_members(8, [0usize, 4]).unwrap();
    let inst = CrossTilingInstance::new(a, b, x.clone(), x).unwrap();
    assert!(verify_cross(&inst).verified());
    assert_eq!(classify(&inst).kind, TrivialityKind::TrivialAbOverX);
}
