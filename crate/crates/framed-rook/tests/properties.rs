use framed_rook::coset::representative;
use framed_rook::framed::{evaluate_word, normal_form, FramedPartial};
use framed_rook::hecke::{general_product, q_pow, HeckeElement};
use framed_rook::partitions::{concatenate, SetPartition};
use framed_rook::ring::{CycloLaurent, CycloRational, Rational};
use framed_rook::rook::{bfs_length, canon, enumerate_q, from_framed, to_framed, RookMatrix};
use framed_rook::tensor::{EMode, Letter, Op, TensorBasisWord, TensorRep, TensorVector};
use num_bigint::BigInt;
use proptest::prelude::*;

fn framed(n: usize, q: u32) -> impl Strategy<Value = FramedPartial> {
    (
        Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n),
        prop::collection::vec(1..q, n),
    )
        .prop_map(move |(p, keep, labels)| {
            let image: Vec<usize> = p.iter().zip(&keep).map(|(&j, &k)| if k { j } else { 0 }).collect();
            let labels: Vec<u32> = image.iter().zip(&labels).map(|(&j, &l)| if j == 0 { 0 } else { l }).collect();
            FramedPartial::new(q, &image, &labels).unwrap()
        })
}

fn matrix(n: usize, q: u32) -> impl Strategy<Value = RookMatrix> {
    prop::collection::vec(0..q as i64, n * n).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(n).map(|c| c.to_vec()).collect();
        RookMatrix::from_rows(q, &rows).unwrap()
    })
}

fn unitriangular(n: usize, q: u32) -> impl Strategy<Value = RookMatrix> {
    prop::collection::vec(0..q as i64, n * (n - 1) / 2).prop_map(move |v| {
        let mut m = RookMatrix::identity(n, q);
        let mut it = v.into_iter();
        for i in 1..=n {
            for j in i + 1..=n {
                m.set(i, j, it.next().unwrap());
            }
        }
        m
    })
}

fn laurent(d: u32) -> impl Strategy<Value = CycloLaurent> {
    prop::collection::vec((-3i32..4, -3i64..4, 0i64..d as i64), 0..4).prop_map(move |terms| {
        CycloLaurent::from_terms(
            d,
            terms.into_iter().map(|(k, c, e)| (k, CycloRational::xi_pow(d, e).scale(&Rational::from_integer(c.into())))),
        )
    })
}

fn partition(size: usize) -> impl Strategy<Value = SetPartition> {
    prop::collection::vec(0..size, size).prop_map(move |labels| {
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); size];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l].push(v + 1);
        }
        blocks.retain(|b| !b.is_empty());
        SetPartition::from_blocks(size, &blocks).unwrap()
    })
}

/// Stack I over J on 3n vertices, close the "same block" relation by
/// Warshall, and read off the outer rows.
fn concatenate_by_closure(i: &SetPartition, j: &SetPartition) -> SetPartition {
    let n = i.size() / 2;
    let v = 3 * n;
    let mut r = vec![vec![false; v]; v];
    // I on vertices 0..2n, J on n..3n (its top row is the shared middle)
    for (p, shift) in [(i, 0), (j, n)] {
        for a in 1..=2 * n {
            for b in 1..=2 * n {
                if p.same_block(a, b) {
                    r[a - 1 + shift][b - 1 + shift] = true;
                }
            }
        }
    }
    for k in 0..v {
        for a in 0..v {
            if r[a][k] {
                for b in 0..v {
                    if r[k][b] {
                        r[a][b] = true;
                    }
                }
            }
        }
    }
    let outer: Vec<usize> = (0..n).chain(2 * n..3 * n).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; v];
    for &a in &outer {
        if !seen[a] {
            let blk: Vec<usize> = outer.iter().copied().filter(|&b| r[a][b]).collect();
            blk.iter().for_each(|&b| seen[b] = true);
            blocks.push(blk.iter().map(|&b| if b < n { b + 1 } else { b - n + 1 }).collect());
        }
    }
    SetPartition::from_blocks(2 * n, &blocks).unwrap()
}

fn word(n: usize, d: u32) -> impl Strategy<Value = TensorBasisWord> {
    prop::collection::vec(prop::option::of((1..=n as u8, 1..=d as u8)), n).prop_map(|v| {
        TensorBasisWord(v.into_iter().map(|x| x.map_or(Letter::Scalar, |(i, s)| Letter::V { i, s })).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn framed_product_is_associative(x in framed(4, 5), y in framed(4, 5), z in framed(4, 5)) {
        let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn transpose_reverses_products(x in framed(4, 5), y in framed(4, 5)) {
        prop_assert_eq!(x.multiply(&y).unwrap().transpose(), y.transpose().multiply(&x.transpose()).unwrap());
    }

    #[test]
    fn matrices_multiply_like_diagrams(x in framed(4, 5), y in framed(4, 5)) {
        let xy = from_framed(&x.multiply(&y).unwrap()).matrix;
        prop_assert_eq!(xy, from_framed(&x).matrix.mul(&from_framed(&y).matrix));
        prop_assert_eq!(to_framed(&from_framed(&x)), x);
    }

    #[test]
    fn normal_form_word_evaluates_back(x in framed(4, 5)) {
        prop_assert_eq!(evaluate_word(&normal_form(&x).to_word(), 4, 5).unwrap(), x);
    }

    #[test]
    fn length_formula_matches_search(x in framed(4, 3)) {
        let s = from_framed(&x);
        prop_assert_eq!(s.length, bfs_length(&s));
    }

    #[test]
    fn representative_is_a_double_coset_invariant(m in matrix(3, 5), a in unitriangular(3, 5), b in unitriangular(3, 5)) {
        prop_assert_eq!(representative(&a.mul(&m).mul(&b)), representative(&m));
    }

    #[test]
    fn torus_keeps_length(x in framed(4, 5), t in prop::collection::vec(1i64..5, 4)) {
        let s = from_framed(&x);
        let ts = canon(&RookMatrix::diag(5, &t).mul(&s.matrix));
        prop_assert_eq!(ts.length, s.length);
        prop_assert_eq!(ts.support, s.support);
    }

    #[test]
    fn concatenation_is_associative(i in 0usize..203, j in 0usize..203, k in 0usize..203) {
        let all = SetPartition::all(6);
        let (a, b, c) = (&all[i], &all[j], &all[k]);
        let l = concatenate(&concatenate(a, b).unwrap(), c).unwrap();
        let r = concatenate(a, &concatenate(b, c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn concatenation_matches_closure_oracle(i in partition(12), j in partition(12)) {
        prop_assert_eq!(concatenate(&i, &j).unwrap(), concatenate_by_closure(&i, &j));
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent(3), b in laurent(3), num in 1i64..20, den in 1i64..7) {
        let t0 = Rational::new(BigInt::from(num), BigInt::from(den));
        let prod = (&a * &b).specialize(&t0).unwrap();
        prop_assert_eq!(prod, &a.specialize(&t0).unwrap() * &b.specialize(&t0).unwrap());
        let sum = (&a + &b).specialize(&t0).unwrap();
        prop_assert_eq!(sum, &a.specialize(&t0).unwrap() + &b.specialize(&t0).unwrap());
    }

    #[test]
    fn cyclotomic_inverse(c in prop::collection::vec(-4i64..5, 4)) {
        let x = CycloRational::from_poly(5, c.into_iter().map(|v| Rational::from_integer(v.into())).collect());
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn framing_has_order_d(w in word(3, 3), i in 1usize..=3) {
        let rep = TensorRep::new(3, 3, EMode::Averaged).unwrap();
        let x = TensorVector::basis(3, w);
        let mut y = x.clone();
        for _ in 0..3 {
            y = rep.apply_op(&Op::F(i, 1), &y);
        }
        prop_assert_eq!(y, x);
    }

    #[test]
    fn n_power_n_kills_nonscalar_words(w in word(3, 2)) {
        let rep = TensorRep::new(3, 2, EMode::Averaged).unwrap();
        let mut y = TensorVector::basis(2, w.clone());
        for _ in 0..3 {
            y = rep.apply_op(&Op::N, &y);
        }
        prop_assert_eq!(y.is_zero(), !w.support().is_empty());
    }

    #[test]
    fn augmentation_is_multiplicative(i in 0usize..139, j in 0usize..139) {
        let basis = enumerate_q(3, 3).unwrap();
        let (s, t) = (&basis[i], &basis[j]);
        let p = general_product(&HeckeElement::basis(s.clone()), &HeckeElement::basis(t.clone())).unwrap();
        prop_assert_eq!(p.pi(), q_pow(3, (s.length + t.length) as i64));
        prop_assert!(p.is_integral());
    }
}
