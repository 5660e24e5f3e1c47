use std::collections::HashSet;

use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sturmian::generator::{
    build_sigma, build_sigma_hat, characteristic_word, mechanical_word, standard_word,
    DirectiveSequence, Rounding,
};
use sturmian::singular::{
    adjoining_singular, exchange_conjugation, melancon_factors, singular_word, Decomposer,
};
use sturmian::{BinaryMorphism, Certificate, ConjugateIndex, Letter, PeriodicCf, Word};

const SAMPLE_CFS: [&str; 4] = ["0;2,(1)", "0;2,(3)", "0;(2)", "0;3,(2,3)"];

fn cf(s: &str) -> PeriodicCf {
    s.parse().unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| if rng.gen() { Letter::A } else { Letter::B })
        .collect()
}

fn certificate_strategy() -> impl Strategy<Value = Certificate> {
    prop::collection::vec(prop::bool::ANY, 0..10).prop_map(|bits| {
        bits.into_iter()
            .map(|b| if b { 'p' } else { 'E' })
            .collect::<String>()
            .parse()
            .unwrap()
    })
}

proptest! {
    #[test]
    fn certificate_images_compose(c1 in certificate_strategy(), c2 in certificate_strategy()) {
        let (m1, m2) = (BinaryMorphism::from_certificate(c1.clone()), BinaryMorphism::from_certificate(c2.clone()));
        let composed = m1.compose(&m2);
        prop_assert_eq!(composed.certificate(), Some(&c1.then(&c2)));
        prop_assert!(composed.same_images(&BinaryMorphism::from_certificate(c1.then(&c2))));
        prop_assert!(BinaryMorphism::from_certificate(c1.reduced()).same_images(&m1));
    }

    #[test]
    fn right_conjugates_satisfy_defining_identity(cert in certificate_strategy(), seed in any::<u64>()) {
        let psi = BinaryMorphism::from_certificate(cert);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..=psi.image_len_ab() - 2 {
            let u = psi.conjugating_word(k).unwrap();
            let conj = psi.right_conjugate(ConjugateIndex::from(k)).unwrap();
            for _ in 0..5 {
                let x = random_word(&mut rng, 20);
                prop_assert_eq!(psi.apply(&x).concat(&u), u.concat(&conj.apply(&x)));
            }
        }
    }
}

#[test]
fn defining_identity_on_sigma_and_distinct_conjugates() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in SAMPLE_CFS {
        let sigma = build_sigma(&cf(s)).unwrap();
        for psi in [sigma.clone(), sigma.power(2), sigma.exchange_conjugate()] {
            let top = psi.image_len_ab() - 2;
            let mut seen = HashSet::new();
            for k in 0..=top {
                let u = psi.conjugating_word(k).unwrap();
                let conj = psi.right_conjugate(k.into()).unwrap();
                for _ in 0..1000 {
                    let x = random_word(&mut rng, 50);
                    assert_eq!(psi.apply(&x).concat(&u), u.concat(&conj.apply(&x)));
                }
                seen.insert(conj.to_string());
            }
            assert_eq!(seen.len(), psi.image_len_ab() - 1, "{s}: {psi}");
        }
    }
}

#[test]
fn conjugate_applied_to_fixed_point_drops_prefix() {
    for s in SAMPLE_CFS {
        let sigma = build_sigma(&cf(s)).unwrap();
        let x = sigma.fixed_point(Letter::A).unwrap();
        let check_len = 10 * sigma.image_len_ab();
        for k in 0..=sigma.image_len_ab() - 2 {
            let conj = sigma.right_conjugate(k.into()).unwrap();
            let lhs = conj.apply_stream(&x).prefix(check_len);
            let rhs = x.strip_prefix(&x.prefix(k)).unwrap().prefix(check_len);
            assert_eq!(lhs, rhs, "{s} k={k}");
        }
    }
}

#[test]
fn exchange_conjugation_over_full_range() {
    for s in SAMPLE_CFS {
        let sigma = build_sigma(&cf(s)).unwrap();
        for k in 0..=sigma.image_len_ab() - 2 {
            assert!(exchange_conjugation(&sigma, k).unwrap().holds, "{s} k={k}");
        }
    }
    assert!(exchange_conjugation(&build_sigma(&cf("0;(2)")).unwrap(), 4).is_err());
}

#[test]
fn standard_words_lengths_and_suffixes() {
    for s in SAMPLE_CFS {
        let x = cf(s);
        let dir = DirectiveSequence::Cf(x.clone());
        let conv = x.convergents(10).unwrap();
        for n in 0..=10i64 {
            let sn = standard_word(&dir, n).unwrap();
            assert_eq!(sn.len() as u128, conv[n as usize].q);
            if n >= 1 {
                let tail = if n % 2 == 1 { "ab" } else { "ba" };
                assert!(sn.ends_with(&tail.parse::<Word>().unwrap()), "{s} n={n}");
                assert!(standard_word(&dir, n + 1).unwrap().starts_with(&sn));
            }
        }
    }
}

#[test]
fn sigma_fixes_characteristic_word() {
    for s in SAMPLE_CFS {
        let x = cf(s);
        let sigma = build_sigma(&x).unwrap();
        let c = characteristic_word(&x).unwrap();
        assert_eq!(
            sigma.apply_stream(&c).prefix(10_000),
            c.prefix(10_000),
            "{s}"
        );
        assert_eq!(
            sigma.fixed_point(Letter::A).unwrap().prefix(10_000),
            c.prefix(10_000)
        );
        assert!(sigma.generates_infinite_word().unwrap());
    }
}

#[test]
fn sigma_hat_generates_exchanged_word() {
    for s in SAMPLE_CFS {
        let x = cf(s);
        let hat = build_sigma_hat(&x).unwrap();
        let c = characteristic_word(&x).unwrap();
        assert_eq!(
            hat.fixed_point(Letter::B).unwrap().prefix(5000),
            c.exchanged().prefix(5000),
            "{s}"
        );
        assert!(hat.same_images(&build_sigma(&x).unwrap().exchange_conjugate()));
    }
}

#[test]
fn sigma_powers_follow_the_standard_sequence() {
    for s in SAMPLE_CFS {
        let x = cf(s);
        let form = x.type_i_form().unwrap();
        let dir = DirectiveSequence::Cf(x.clone());
        let sigma = build_sigma(&x).unwrap();
        let step = form.n() - 1;
        let exponent = (form.d_n() - form.d1()) as usize;
        for m in 1..=4 {
            let power = sigma.power(m);
            let s_top = standard_word(&dir, (m * step) as i64).unwrap();
            let s_below = standard_word(&dir, (m * step) as i64 - 1).unwrap();
            assert_eq!(power.image(Letter::A), &s_top, "{s} m={m}");
            assert_eq!(
                power.image(Letter::B),
                &s_top.pow(exponent).concat(&s_below)
            );
            for k in 0..4 {
                let sk = standard_word(&dir, k).unwrap();
                let expected = standard_word(&dir, k + (m * step) as i64).unwrap();
                assert_eq!(power.apply(&sk), expected);
            }
        }
    }
}

#[test]
fn mechanical_oracle_agrees() {
    let zero = Ratio::from_integer(0);
    for s in SAMPLE_CFS {
        let x = cf(s);
        let alpha = x.surd_value().unwrap();
        let c = characteristic_word(&x).unwrap();
        assert_eq!(
            mechanical_word(alpha, zero, Rounding::Floor).prefix(10_000),
            c.prepend(&"a".parse().unwrap()).prefix(10_000)
        );
        assert_eq!(
            mechanical_word(alpha, zero, Rounding::Ceiling).prefix(10_000),
            c.prepend(&"b".parse().unwrap()).prefix(10_000)
        );
    }
}

#[test]
fn singular_words_are_palindromes_with_expected_lengths() {
    for s in SAMPLE_CFS {
        let x = cf(s);
        let conv = x.convergents(16).unwrap();
        for n in -2..=12i64 {
            assert!(singular_word(&x, n).unwrap().is_palindrome(), "{s} w_{n}");
            assert!(
                adjoining_singular(&x, n).unwrap().is_palindrome(),
                "{s} v_{n}"
            );
        }
        for m in -1..=12i64 {
            let v = adjoining_singular(&x, m).unwrap();
            let expected = conv[(m + 2) as usize].q - conv[(m + 1) as usize].q;
            assert_eq!(v.len() as u128, expected, "{s} |v_{m}|");
        }
    }
}

#[test]
fn melancon_products_agree() {
    for s in SAMPLE_CFS {
        let x = cf(s);
        let c = characteristic_word(&x).unwrap();
        let mf = melancon_factors(&x, 4).unwrap();
        let (flat, grouped) = (mf.flat_word(), mf.grouped_word());
        assert_eq!(c.prefix(flat.len()), flat, "{s}");
        assert_eq!(c.prefix(grouped.len()), grouped, "{s}");
    }
}

#[test]
fn adjoining_words_bridge_to_sigma_powers() {
    for r in 1..=4 {
        let x = cf(&format!("0;2,({r})"));
        let d = Decomposer::new(&x).unwrap();
        for m in -1..=8i64 {
            let image = d.sigma().power((m + 1) as usize).image(Letter::B).clone();
            let (lead, trail) = if m.rem_euclid(2) == 1 {
                ("a", "b")
            } else {
                ("b", "a")
            };
            let expected = lead
                .parse::<Word>()
                .unwrap()
                .concat(&image)
                .strip_suffix(&trail.parse().unwrap())
                .unwrap();
            assert_eq!(d.v(m).unwrap(), expected, "r={r} m={m}");
            if m >= 0 {
                let next = d.sigma().power((m + 2) as usize).image(Letter::B).clone();
                assert!(next.starts_with(&image), "r={r} m={m}");
            }
        }
        for m in 0..=8 {
            assert_eq!(d.sigma().power(m).image_len_ab(), d.q(m + 1));
        }
    }
}

#[test]
fn decomposition_and_removal_form_agree() {
    for r in 1..=3 {
        let d = Decomposer::new(&cf(&format!("0;2,({r})"))).unwrap();
        for k in 0..d.q(5) {
            let dec = d.conjugate_decomposition(k, 2).unwrap();
            let removal = d.removal_form(k).unwrap().stream().unwrap();
            assert_eq!(
                dec.stream().prefix(1500),
                removal.prefix(1500),
                "r={r} k={k}"
            );
            assert!(dec.verify(1500), "r={r} k={k}");
            let hat = d.conjugate_decomposition_hat(k, 2).unwrap();
            for (x, y) in dec.factors().iter().zip(hat.factors()) {
                assert_eq!(x.word.exchanged(), y.word, "r={r} k={k} j={}", x.j);
            }
        }
    }
}

#[test]
fn fibonacci_specialization() {
    // (φ^m)_k(f) = ∏_{j ≥ m−1} (φ^j)_{F_{m−1} − p}(a), with φ^{-1}(a) read as b.
    let d = Decomposer::new(&cf("0;2,(1)")).unwrap();
    let phi = BinaryMorphism::phi();
    for k in 1..60 {
        let dec = d.conjugate_decomposition(k, 4).unwrap();
        let t = dec.conjugate_index();
        if t.is_sentinel() {
            continue;
        }
        for factor in dec.factors() {
            let image = phi.power(factor.j as usize).right_conjugate(t).unwrap();
            assert_eq!(image.image(Letter::A), &factor.word, "k={k} j={}", factor.j);
        }
    }
}

#[test]
fn decompositions_in_parallel_match_sequential() {
    let d = Decomposer::new(&cf("0;2,(3)")).unwrap();
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let d = d.clone();
            std::thread::spawn(move || {
                (i * 10..i * 10 + 10).all(|k| d.conjugate_decomposition(k, 3).unwrap().verify(800))
            })
        })
        .collect();
    for h in handles {
        assert!(h.join().unwrap());
    }
}
