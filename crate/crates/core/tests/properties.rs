use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use terncode::code::{codeword, weight_direct, WeightDistribution};
use terncode::expsum::{classify, EisensteinInteger, ExpSumClass, SumKind};
use terncode::gf::field_context;
use terncode::identities::macwilliams_transform;
use terncode::quadform::{gauss_sum, rank, SymmetricMatrix};

fn field_and_indices(max_m: u32, k: usize) -> impl Strategy<Value = (u32, Vec<u32>)> {
    (1..=max_m).prop_flat_map(move |m| {
        let q = 3u32.pow(m);
        (Just(m), prop::collection::vec(0..q, k))
    })
}

fn symmetric(n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    prop::collection::vec(0u8..3, n * (n + 1) / 2).prop_map(move |upper| {
        let mut h = SymmetricMatrix::zero(n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let v = it.next().unwrap();
                h.set(i, j, v);
                h.set(j, i, v);
            }
        }
        h
    })
}

fn vectors(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..3usize.pow(n as u32)).map(move |mut i| {
        (0..n)
            .map(|_| {
                let d = (i % 3) as u8;
                i /= 3;
                d
            })
            .collect()
    })
}

fn span(gens: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    let mut words = std::collections::BTreeSet::new();
    for coef in vectors(gens.len()) {
        let mut w = vec![0u8; n];
        for (c, g) in coef.iter().zip(gens) {
            for (x, y) in w.iter_mut().zip(g) {
                *x = (*x + c * y) % 3;
            }
        }
        words.insert(w);
    }
    words.into_iter().collect()
}

/// Weight distribution and dimension of a subspace given as its word list.
fn distribution(words: &[Vec<u8>], n: usize) -> (WeightDistribution, usize) {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for w in words {
        *counts.entry(w.iter().filter(|&&s| s != 0).count() as u64).or_default() += 1;
    }
    let k = (words.len() as f64).log(3.0).round() as usize;
    assert_eq!(3usize.pow(k as u32), words.len());
    (WeightDistribution::from_counts(n as u64, counts), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((m, v) in field_and_indices(8, 3)) {
        let c = field_context(3, m).unwrap();
        let [a, b, d] = [v[0], v[1], v[2]].map(|i| c.element(i));
        prop_assert_eq!(c.mul(a, b), c.mul(b, a));
        prop_assert_eq!(c.mul(c.mul(a, b), d), c.mul(a, c.mul(b, d)));
        prop_assert_eq!(c.mul(a, b.add(d)), c.mul(a, b).add(c.mul(a, d)));
        prop_assert_eq!(c.mul(a, b), c.mul_schoolbook(a, b));
        if !a.is_zero() {
            let inv = c.inv(a).unwrap();
            prop_assert_eq!(c.mul(a, inv), c.element(1));
        }
        prop_assert_eq!(c.index(a), v[0]);
    }

    #[test]
    fn trace_is_linear_and_frobenius_invariant((m, v) in field_and_indices(8, 2), s in 0u8..3) {
        let c = field_context(3, m).unwrap();
        let [a, b] = [v[0], v[1]].map(|i| c.element(i));
        prop_assert_eq!(c.trace(a.scale(s).add(b)), (s * c.trace(a) + c.trace(b)) % 3);
        prop_assert_eq!(c.trace(c.pow(a, 3)), c.trace(a));
        prop_assert_eq!(c.trace(a), c.trace_by_frobenius(a));
    }

    #[test]
    fn codewords_are_linear_and_cyclic(m in 2u32..=5, v in prop::collection::vec(0u32..243, 6)) {
        let c = field_context(3, m).unwrap();
        let e = |i: u32| c.element(i % c.q());
        let x = [e(v[0]), e(v[1]), e(v[2])];
        let y = [e(v[3]), e(v[4]), e(v[5])];
        let cx = codeword(&c, x[0], x[1], x[2]);
        let cy = codeword(&c, y[0], y[1], y[2]);
        let sum = codeword(&c, x[0].add(y[0]), x[1].add(y[1]), x[2].add(y[2]));
        prop_assert_eq!(cx.add(&cy), sum);
        let pi = c.pi();
        let shifted = codeword(
            &c,
            c.mul(x[0], c.pow(pi, 2)),
            c.mul(x[1], c.pow(pi, 4)),
            c.mul(x[2], c.pow(pi, 10)),
        );
        prop_assert_eq!(cx.rotate_left(), shifted);
        prop_assert_eq!(weight_direct(&cx.rotate_left()), weight_direct(&cx));
    }

    #[test]
    fn class_values_classify_back(half in 1u32..=6, r in 0u32..=12, delta in prop::sample::select(vec![-1i8, 1])) {
        let m = 2 * half;
        let r = r.min(m).max(1);
        let class = ExpSumClass::from_rank(m, r, delta);
        prop_assert_eq!(class.j, m - r);
        prop_assert_eq!(class.kind == SumKind::OddRank, r % 2 == 1);
        let back = classify(&class.value(m), m, false).unwrap();
        prop_assert_eq!(back, class);
    }

    #[test]
    fn gauss_sum_matches_enumeration(h in (1usize..=6).prop_flat_map(symmetric)) {
        let mut tally = [0u64; 3];
        for x in vectors(h.dim()) {
            tally[h.eval(&x) as usize] += 1;
        }
        prop_assert_eq!(gauss_sum(&h), EisensteinInteger::from_tally(tally));
        let (a, b) = gauss_sum(&h).to_i64_pair().unwrap();
        // |S|^2 = 3^(2n - rank) unless S = 0
        if (a, b) != (0, 0) {
            prop_assert_eq!((a * a - a * b + b * b) as u64, 3u64.pow(2 * h.dim() as u32 - rank(&h)));
        }
    }

    #[test]
    fn macwilliams_matches_brute_force_dual(
        n in 2usize..=7,
        rows in prop::collection::vec(prop::collection::vec(0u8..3, 7), 1..=4),
    ) {
        let gens: Vec<Vec<u8>> = rows.iter().map(|r| r[..n].to_vec()).collect();
        let (a, k) = distribution(&span(&gens, n), n);
        let dual_words: Vec<Vec<u8>> = vectors(n)
            .filter(|v| gens.iter().all(|g| g.iter().zip(v).map(|(x, y)| (x * y) as u32).sum::<u32>() % 3 == 0))
            .collect();
        let (dual, dual_k) = distribution(&dual_words, n);
        prop_assert_eq!(k + dual_k, n);
        let transformed = macwilliams_transform(&a, k as u32, 3).unwrap();
        for w in 0..=n as u64 {
            prop_assert_eq!(transformed.get(w), dual.get(w), "weight {}", w);
        }
        let back = macwilliams_transform(&transformed, dual_k as u32, 3).unwrap();
        for w in 0..=n as u64 {
            prop_assert_eq!(back.get(w), a.get(w));
        }
        prop_assert_eq!(a.total(), BigUint::from(3u32).pow(k as u32));
    }
}
