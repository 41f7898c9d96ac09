use fmhs_core::exact::{rat, Ring, Scalar, TPoly};
use fmhs_core::indices::{compositions, enumerate_indices, enumerate_patterns, Alphabet, HeightProfile, MultiIndex};
use fmhs_core::qseries::{Evaluator, SeriesParams};
use proptest::prelude::*;

fn q_sample(n: u32) -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(Scalar::zeta(n)),
        Just(Scalar::from(rat(1, 2))),
        Just(Scalar::from(rat(-3, 1))),
        Just(Scalar::from(rat(5, 7))),
    ]
}

fn setting() -> impl Strategy<Value = (u32, Scalar)> {
    (2u32..=6).prop_flat_map(|n| (Just(n), q_sample(n)))
}

fn index(max_depth: usize, max_part: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(1..=max_part, 1..=max_depth).prop_map(|p| MultiIndex::new(p).unwrap())
}

fn ev(n: u32, q: Scalar) -> Evaluator {
    Evaluator::new(SeriesParams::new(n, q).unwrap())
}

proptest! {
    #[test]
    fn stuffle(((n, q), a, b) in (setting(), 1u32..=3, 1u32..=3)) {
        let e = ev(n, q);
        let z = |p: Vec<u32>| e.zbar(&MultiIndex::new(p).unwrap()).unwrap();
        let lhs = z(vec![a]).times(&z(vec![b]));
        let rhs = z(vec![a, b]).plus(&z(vec![b, a])).plus(&z(vec![a + b])).plus(&z(vec![a + b - 1]));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interpolation_endpoints(((n, q), k) in (setting(), index(3, 2))) {
        let e = ev(n, q);
        let p = e.zbar_t(&k).unwrap();
        prop_assert_eq!(p.eval(&Scalar::zero()), e.zbar(&k).unwrap());
        prop_assert_eq!(p.eval(&Scalar::one()), e.zbar_star(&k).unwrap());
        prop_assert!(p.degree().unwrap_or(0) < k.depth());
    }

    #[test]
    fn z_t_scaling(((n, q), k) in (setting(), index(3, 3))) {
        let e = ev(n, q.clone());
        let scale = TPoly::constant(Scalar::one().minus(&q).pow(k.weight()));
        prop_assert_eq!(e.z_t(&k).unwrap(), e.zbar_t(&k).unwrap().times(&scale));
    }

    #[test]
    fn memo_matches_uncached(((n, q), ks) in (setting(), prop::collection::vec(index(3, 3), 1..6))) {
        let cached = ev(n, q.clone());
        let plain = Evaluator::uncached(SeriesParams::new(n, q).unwrap());
        for k in ks.iter().chain(ks.iter()) {
            prop_assert_eq!(cached.zbar_t(k).unwrap(), plain.zbar_t(k).unwrap());
            prop_assert_eq!(cached.z_star(k).unwrap(), plain.z_star(k).unwrap());
        }
    }

    #[test]
    fn pattern_counts(k in index(5, 4)) {
        let d = k.depth() as u32;
        let two = enumerate_patterns(&k, Alphabet::Two);
        prop_assert_eq!(two.entries.len(), 2usize.pow(d - 1));
        prop_assert_eq!(two.rejected, 0);
        let three = enumerate_patterns(&k, Alphabet::Three);
        prop_assert_eq!(three.entries.len() + three.rejected, 3usize.pow(d - 1));
        for (p, e) in &three.entries {
            prop_assert_eq!(p.depth() as u32 + e, d);
        }
    }
}

#[test]
fn profiles_partition_all_indices() {
    for w in 1..=8u32 {
        for r in 1..=3usize {
            let mut total = 0;
            for l in 0..=w {
                for h in compositions_with_zeros(l, r) {
                    if let Ok(p) = HeightProfile::new(w, l, h, -1) {
                        total += enumerate_indices(&p).len();
                    }
                }
            }
            assert_eq!(total, 1 << (w - 1), "w = {w}, r = {r}");
        }
    }
}

/// Nonincreasing height vectors bounded by `l`.
fn compositions_with_zeros(l: u32, r: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let top = v.last().copied().unwrap_or(l);
                (0..=top).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn compositions_count() {
    for total in 0..=9u32 {
        for parts in 0..=total as usize {
            let expect = if total == 0 {
                1
            } else if parts == 0 {
                0
            } else {
                binom(total - 1, parts as u32 - 1)
            };
            assert_eq!(compositions(total, parts).len() as u64, expect);
        }
    }
}

fn binom(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[test]
fn frozen_values() {
    let e = ev(3, Scalar::zeta(3));
    let third = Scalar::from(rat(1, 3));
    assert_eq!(e.zbar_t(&"1,1".parse().unwrap()).unwrap(), TPoly::from_coeffs(vec![third.clone(), third]));
    // Flat index gives Σ q^{-m} = -1 at a primitive root.
    assert_eq!(e.zbar(&MultiIndex::from_raw(vec![0])).unwrap(), Scalar::from(-1));
    let half = ev(2, Scalar::from(rat(1, 2)));
    assert_eq!(half.zbar(&MultiIndex::new(vec![1]).unwrap()).unwrap(), Scalar::from(2));
    // z̄^t_3((2); ζ_3) = -2/3
    assert_eq!(e.zbar_t(&MultiIndex::new(vec![2]).unwrap()).unwrap(), TPoly::constant(Scalar::from(rat(-2, 3))));
}
