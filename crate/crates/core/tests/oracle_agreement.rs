mod common;

use common::oracle::{coeffs, Oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use terncode::code::{codeword, weight_direct, weight_via_expsum};
use terncode::expsum::{classify, direct_sum};
use terncode::gf::{field_context, FieldContext};
use terncode::quadform::{build_form, classify_via_legendre};

fn triples(c: &FieldContext, exhaustive: bool, samples: usize, seed: u64) -> Vec<[u32; 3]> {
    let q = c.q();
    if exhaustive {
        return (0..q * q * q).map(|i| [i % q, i / q % q, i / (q * q)]).collect();
    }
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| [0; 3].map(|_| r.gen_range(0..q))).collect()
}

#[test]
fn element_indexing_matches_base_three_digits() {
    for m in 1..=6 {
        let c = field_context(3, m).unwrap();
        for i in (0..c.q()).step_by(7) {
            assert_eq!(c.element(i).coeffs(m), coeffs(i as usize, m as usize));
        }
    }
}

#[test]
fn direct_sum_matches_oracle() {
    for (m, exhaustive) in [(2, true), (3, true), (4, false), (5, false)] {
        let c = field_context(3, m).unwrap();
        let o = Oracle::new(c.modulus());
        for t in triples(&c, exhaustive, 300, m as u64) {
            let [a, b, g] = t.map(|i| c.element(i));
            let s = direct_sum(&c, a, b, g).to_i64_pair().unwrap();
            assert_eq!(s, o.sum(t), "m={m} {t:?}");
        }
    }
}

#[test]
fn weights_match_oracle() {
    for (m, exhaustive) in [(2, true), (3, true), (4, false), (6, false)] {
        let c = field_context(3, m).unwrap();
        let o = Oracle::new(c.modulus());
        for t in triples(&c, exhaustive, 200, 10 + m as u64) {
            let [a, b, g] = t.map(|i| c.element(i));
            assert_eq!(weight_direct(&codeword(&c, a, b, g)), o.weight(t), "m={m} {t:?}");
            if m % 2 == 0 {
                assert_eq!(weight_via_expsum(&c, a, b, g).unwrap(), o.weight(t), "m={m} {t:?}");
            }
        }
    }
}

#[test]
fn form_class_matches_oracle_sum() {
    for (m, exhaustive) in [(2, true), (4, false), (6, false)] {
        let c = field_context(3, m).unwrap();
        let o = Oracle::new(c.modulus());
        for t in triples(&c, exhaustive, 300, 20 + m as u64) {
            let [a, b, g] = t.map(|i| c.element(i));
            let zero = t == [0, 0, 0];
            let class = classify_via_legendre(&build_form(&c, a, b, g), m, zero).unwrap();
            assert_eq!(class.value(m).to_i64_pair().unwrap(), o.sum(t), "m={m} {t:?}");
            let s = direct_sum(&c, a, b, g);
            assert_eq!(classify(&s, m, zero).unwrap(), class, "m={m} {t:?}");
        }
    }
}
