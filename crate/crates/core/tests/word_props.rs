use freegroup::{
    abelianize, hom_matrix, integer_rank, is_surjective_onto_zn, parse_word, Alphabet,
    Homomorphism, IntMatrix, Letter, Word,
};
use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn raw_letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, p)| Letter::new(g, p)).collect())
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    raw_letters(rank, max_len).prop_map(move |ls| Word::reduce(rank, ls))
}

/// Deletes randomly chosen cancelling adjacent pairs until none remain.
fn cancel_at_random(mut ls: Vec<Letter>, rng: &mut impl Rng) -> Vec<Letter> {
    loop {
        let spots: Vec<usize> = (0..ls.len().saturating_sub(1))
            .filter(|&i| ls[i].cancels(ls[i + 1]))
            .collect();
        if spots.is_empty() {
            return ls;
        }
        let i = spots[rng.gen_range(0..spots.len())];
        ls.drain(i..i + 2);
    }
}

proptest! {
    #[test]
    fn reduce_is_idempotent_and_keeps_parity(ls in raw_letters(3, 40)) {
        let w = Word::reduce(3, ls.clone());
        prop_assert_eq!(Word::reduce(3, w.letters().to_vec()), w.clone());
        prop_assert_eq!(w.len() % 2, ls.len() % 2);
    }

    #[test]
    fn reduce_matches_random_cancellation(ls in raw_letters(2, 12), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let expect = cancel_at_random(ls.clone(), &mut rng);
        let got = Word::reduce(2, ls);
        prop_assert_eq!(got.letters(), &expect[..]);
    }

    #[test]
    fn group_axioms(u in word(3, 15), v in word(3, 15), w in word(3, 15)) {
        let e = Word::identity(3);
        prop_assert_eq!(
            u.concat(&v).unwrap().concat(&w).unwrap(),
            u.concat(&v.concat(&w).unwrap()).unwrap()
        );
        prop_assert_eq!(u.concat(&e).unwrap(), u.clone());
        prop_assert_eq!(e.concat(&u).unwrap(), u.clone());
        prop_assert!(u.concat(&u.inverse()).unwrap().is_identity());
        prop_assert!(u.inverse().concat(&u).unwrap().is_identity());
        prop_assert_eq!(u.inverse().inverse(), u);
    }

    #[test]
    fn cyclic_reduction_reassembles(w in word(2, 20)) {
        let (core, conj) = w.cyclically_reduce();
        prop_assert_eq!(conj.concat(&core).unwrap().concat(&conj.inverse()).unwrap(), w);
        if core.len() >= 2 {
            let ls = core.letters();
            prop_assert!(!ls[0].cancels(ls[ls.len() - 1]));
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(
        images in prop::collection::vec(word(2, 6), 3),
        u in word(3, 12),
        v in word(3, 12),
    ) {
        let f = Homomorphism::new(2, images).unwrap();
        prop_assert_eq!(
            f.apply(&u.concat(&v).unwrap()).unwrap(),
            f.apply(&u).unwrap().concat(&f.apply(&v).unwrap()).unwrap()
        );
    }

    #[test]
    fn abelianization_is_additive(u in word(3, 20), v in word(3, 20), ls in raw_letters(3, 30)) {
        prop_assert_eq!(abelianize(&u.concat(&v).unwrap()), &abelianize(&u) + &abelianize(&v));
        prop_assert_eq!(abelianize(&u.inverse()), -&abelianize(&u));
        let mut sums = vec![0i64; 3];
        for l in &ls {
            sums[l.generator] += l.sign();
        }
        prop_assert_eq!(abelianize(&Word::reduce(3, ls)).0, sums);
    }

    #[test]
    fn print_then_parse(w in word(3, 20)) {
        let abc = Alphabet::standard(3).unwrap();
        prop_assert_eq!(parse_word(&w.to_string_with(&abc), &abc).unwrap(), w);
    }

    #[test]
    fn surjectivity_matches_maximal_minors(
        rows in 1usize..=3,
        extra in 0usize..=2,
        entries in prop::collection::vec(-3i64..=3, 15),
    ) {
        let cols = rows + extra;
        let grid: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * cols..(r + 1) * cols].to_vec()).collect();
        let m = IntMatrix::from_rows(cols, &grid).unwrap();
        let onto = is_surjective_onto_zn(&m).unwrap();
        prop_assert_eq!(onto, maximal_minor_gcd(&grid) == 1);
        if onto {
            prop_assert_eq!(integer_rank(&m).unwrap(), rows);
        }
        prop_assert_eq!(integer_rank(&m).unwrap(), rank_over_q(&grid));
    }
}

/// gcd of all `rows × rows` minors; the map is onto iff this is 1.
fn maximal_minor_gcd(grid: &[Vec<i64>]) -> i64 {
    let cols = grid[0].len();
    (0..cols)
        .combinations(grid.len())
        .map(|cs| leibniz_det(&minor(grid, &(0..grid.len()).collect::<Vec<_>>(), &cs)))
        .fold(0, gcd)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn minor(grid: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|&r| cols.iter().map(|&c| grid[r][c]).collect())
        .collect()
}

fn leibniz_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n)
                .tuple_combinations()
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let prod: i64 = (0..n).map(|i| m[i][p[i]]).product();
            if inversions % 2 == 0 {
                prod
            } else {
                -prod
            }
        })
        .sum()
}

/// Rank as the size of the largest nonzero minor.
fn rank_over_q(grid: &[Vec<i64>]) -> usize {
    let rows = grid.len();
    let cols = grid[0].len();
    (1..=rows.min(cols))
        .rev()
        .find(|&k| {
            (0..rows)
                .combinations(k)
                .cartesian_product((0..cols).combinations(k).collect::<Vec<_>>())
                .any(|(rs, cs)| leibniz_det(&minor(grid, &rs, &cs)) != 0)
        })
        .unwrap_or(0)
}

/// Random automorphism of F_n as a product of elementary Nielsen moves,
/// together with its inverse built from the inverse moves in reverse.
fn automorphism_pair(n: usize, moves: usize, rng: &mut impl Rng) -> (Homomorphism, Homomorphism) {
    let mut forward = Homomorphism::identity(n);
    let mut backward = Homomorphism::identity(n);
    for _ in 0..moves {
        let (mv, inv) = if n >= 2 && rng.gen_bool(0.7) {
            // a_i ↦ a_i a_j^±1
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mk = |sign: i64| {
                let images = (0..n)
                    .map(|k| {
                        let g = Word::generator(n, k);
                        if k == i {
                            g.concat(&Word::generator(n, j).pow(sign)).unwrap()
                        } else {
                            g
                        }
                    })
                    .collect();
                Homomorphism::new(n, images).unwrap()
            };
            (mk(s), mk(-s))
        } else {
            // a_i ↦ a_i⁻¹, an involution
            let i = rng.gen_range(0..n);
            let images = (0..n)
                .map(|k| Word::generator(n, k).pow(if k == i { -1 } else { 1 }))
                .collect();
            let h = Homomorphism::new(n, images).unwrap();
            (h.clone(), h)
        };
        forward = mv.after(&forward).unwrap();
        backward = backward.after(&inv).unwrap();
    }
    (forward, backward)
}

#[test]
fn mutually_inverse_substitutions_have_full_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 1..=4 {
        for _ in 0..25 {
            let (f, g) = automorphism_pair(n, 8, &mut rng);
            for k in 0..n {
                let gen = Word::generator(n, k);
                assert_eq!(g.apply(&f.apply(&gen).unwrap()).unwrap(), gen);
                assert_eq!(f.apply(&g.apply(&gen).unwrap()).unwrap(), gen);
            }
            let (mf, mg) = (hom_matrix(&f), hom_matrix(&g));
            assert_eq!(integer_rank(&mf).unwrap(), n);
            assert_eq!(integer_rank(&mg).unwrap(), n);
            assert!(is_surjective_onto_zn(&mf).unwrap());
            assert!(is_surjective_onto_zn(&mg).unwrap());
        }
    }
}

#[test]
fn rank_without_surjectivity() {
    let m = IntMatrix::from_rows(1, &[vec![2]]).unwrap();
    assert_eq!(integer_rank(&m).unwrap(), 1);
    assert!(!is_surjective_onto_zn(&m).unwrap());
}

#[test]
fn random_words_are_reduced() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..10_000 {
        let len = i % 25;
        let w = Word::random_with(len, 1 + i % 3, &mut rng).unwrap();
        assert_eq!(w.len(), len);
        assert!(w.letters().windows(2).all(|p| !p[0].cancels(p[1])));
    }
}
