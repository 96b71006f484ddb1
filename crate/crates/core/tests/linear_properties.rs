mod common;

use howson::linear::{
    cocycle, cocycle_by_recursion, eval_affine, eval_linear, eval_parabolic, freeness_sweep,
    freeness_sweep_naive, AffineElement, FreenessVerdict, Mat2, Vec2,
};
use howson::verify::random_word;
use howson::word::{enumerate_reduced, Word};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn homomorphism_law_exhaustive() {
    let words: Vec<Word> = enumerate_reduced(5).collect();
    let lin: Vec<Mat2> = words.iter().map(eval_linear).collect();
    let aff: Vec<AffineElement> = words.iter().map(eval_affine).collect();
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            let ab = a.concat(b);
            assert_eq!(eval_linear(&ab), lin[i].mul(&lin[j]));
            assert_eq!(eval_affine(&ab), aff[i].compose(&aff[j]));
        }
    }
}

#[test]
fn homomorphism_law_random_long_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let a = random_word(&mut rng, 40);
        let b = random_word(&mut rng, 40);
        let ab = a.concat(&b);
        assert_eq!(eval_linear(&ab), eval_linear(&a).mul(&eval_linear(&b)));
        assert_eq!(eval_affine(&ab), eval_affine(&a).compose(&eval_affine(&b)));
    }
}

#[test]
fn determinant_one() {
    for w in enumerate_reduced(8) {
        assert!(eval_linear(&w).det().is_one(), "{w}");
    }
}

#[test]
fn cocycle_identity_exhaustive() {
    let words: Vec<Word> = enumerate_reduced(5).collect();
    for a in &words {
        let (ca, la) = (cocycle(a), eval_linear(a));
        for b in &words {
            let expected = ca.add(&la.mul_vec(&cocycle(b)));
            assert_eq!(cocycle(&a.concat(b)), expected);
        }
    }
}

#[test]
fn cocycle_routes_agree() {
    for w in enumerate_reduced(6) {
        let direct = cocycle(&w);
        assert_eq!(cocycle_by_recursion(&w), direct);
        let m = eval_parabolic(&w);
        assert_eq!(m.to_affine().unwrap().translation, direct);
        let o = common::parabolic_i128(&w.to_string());
        assert_eq!(direct, Vec2::new(o[0][2], o[1][2]));
    }
}

#[test]
fn apply_respects_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let g = eval_affine(&random_word(&mut rng, 12));
        let h = eval_affine(&random_word(&mut rng, 12));
        let p = Vec2::new(rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
        assert_eq!(g.compose(&h).apply(&p), g.apply(&h.apply(&p)));
        let q = rng.gen_range(2u64..=30);
        let pq = p.reduce(q);
        assert_eq!(g.compose(&h).apply(&pq), g.apply(&h.apply(&pq)));
        assert_eq!(g.apply(&pq), g.apply(&p).reduce(q));
    }
}

#[test]
fn inverse_words_give_inverse_elements() {
    for w in enumerate_reduced(6) {
        let g = eval_affine(&w);
        let g_inv = eval_affine(&w.invert());
        assert!(g.compose(&g_inv).is_identity());
        assert_eq!(g_inv, g.inverse());
    }
}

#[test]
fn compose_matches_three_by_three_product() {
    let words: Vec<Word> = enumerate_reduced(3).collect();
    for a in &words {
        for b in &words {
            let g = eval_affine(a);
            let h = eval_affine(b);
            assert_eq!(g.compose(&h).to_matrix3(), g.to_matrix3().mul(&h.to_matrix3()));
        }
    }
}

#[test]
fn freeness_sweep_agrees_with_naive_enumeration() {
    assert_eq!(freeness_sweep(7), freeness_sweep_naive(7));
    assert_eq!(freeness_sweep(1), FreenessVerdict::Pass { checked: 4 });
}

#[test]
fn long_products_need_big_integers() {
    let w = Word::parse("UV").unwrap().power(30);
    let m = eval_linear(&w);
    assert!(m.max_abs_entry() > BigInt::from(u64::MAX));
}
