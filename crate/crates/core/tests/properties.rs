use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use plumbing_core::algebra_core::{koszul_sign, smith_normal_form, smith_normal_form_mod, IntMatrix};
use plumbing_core::simplicial::{Cochain, OrderedComplex};
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Sign of physically moving element `i` to position `perm[i]` by adjacent
/// swaps, each costing `(−1)^{deg·deg}`.
fn bubble_sign(perm: &[usize], degrees: &[i64]) -> i32 {
    let mut items: Vec<(usize, i64)> = perm.iter().copied().zip(degrees.iter().copied()).collect();
    let mut sign = 1;
    for pass in 0..items.len() {
        for i in 0..items.len().saturating_sub(pass + 1) {
            if items[i].0 > items[i + 1].0 {
                if items[i].1 * items[i + 1].1 % 2 != 0 {
                    sign = -sign;
                }
                items.swap(i, i + 1);
            }
        }
    }
    sign
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

/// Rank over ℚ by fraction-free (Bareiss) elimination.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let (nr, nc) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nr {
            for k in c + 1..nc {
                m[r][k] = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn sphere() -> Arc<OrderedComplex> {
    Arc::new(OrderedComplex::simplex_boundary(3))
}

fn cochain(q: &Arc<OrderedComplex>, degree: usize, values: &[i64]) -> Cochain {
    let map: BTreeMap<usize, BigInt> = q
        .of_dim(degree)
        .into_iter()
        .zip(values.iter().cycle())
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| (i, BigInt::from(v)))
        .collect();
    Cochain::new(q.clone(), degree, map).unwrap()
}

proptest! {
    #[test]
    fn koszul_sign_matches_adjacent_swaps(
        (perm, degrees) in (0usize..7).prop_flat_map(|n| (permutation(n), prop::collection::vec(-3i64..4, n)))
    ) {
        prop_assert_eq!(koszul_sign(&perm, &degrees).unwrap(), bubble_sign(&perm, &degrees));
    }

    #[test]
    fn koszul_sign_is_multiplicative(
        (s, t, degrees) in (0usize..7).prop_flat_map(|n| (permutation(n), permutation(n), prop::collection::vec(0i64..3, n)))
    ) {
        let composite: Vec<usize> = s.iter().map(|&i| t[i]).collect();
        let mut moved = vec![0; degrees.len()];
        for (i, &p) in s.iter().enumerate() {
            moved[p] = degrees[i];
        }
        prop_assert_eq!(
            koszul_sign(&composite, &degrees).unwrap(),
            koszul_sign(&s, &degrees).unwrap() * koszul_sign(&t, &moved).unwrap()
        );
    }

    #[test]
    fn smith_normal_form_is_a_unimodular_diagonalisation(rows in (0usize..5, 0usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let m = int_matrix(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.diag.clone());
        prop_assert_eq!(snf.left.mul(&snf.left_inv), IntMatrix::identity(m.rows()));
        prop_assert_eq!(snf.right.mul(&snf.right_inv), IntMatrix::identity(m.cols()));
        for i in 0..snf.diag.rows() {
            for j in 0..snf.diag.cols() {
                if i != j {
                    prop_assert!(snf.diag.get(i, j).is_zero());
                }
            }
        }
        let f = snf.invariant_factors();
        prop_assert!(f.iter().all(|x| x.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), "divisibility chain {:?}", f);
        prop_assert_eq!(snf.rank(), rational_rank(&rows));
    }

    #[test]
    fn invariant_factors_multiply_to_the_determinant(rows in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
        let m = int_matrix(&rows);
        let snf = smith_normal_form(&m);
        let product: BigInt = if snf.rank() == m.rows() {
            snf.invariant_factors().iter().product()
        } else {
            BigInt::zero()
        };
        prop_assert_eq!(product, m.det().abs());
    }

    #[test]
    fn rank_mod_p_drops_by_the_factors_divisible_by_p(rows in (0usize..5, 0usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let m = int_matrix(&rows);
        let p = BigInt::from(5);
        let rank_q = rational_rank(&rows);
        let snf = smith_normal_form(&m);
        let divisible = snf.invariant_factors().iter().filter(|x| (*x % &p).is_zero()).count();
        prop_assert_eq!(smith_normal_form_mod(&m, &p).rank(), rank_q - divisible);
    }

    #[test]
    fn cup_product_satisfies_leibniz_and_associativity(
        (p, q, r) in (0usize..3, 0usize..3, 0usize..3),
        va in prop::collection::vec(-3i64..4, 6),
        vb in prop::collection::vec(-3i64..4, 6),
        vc in prop::collection::vec(-3i64..4, 6),
    ) {
        let s = sphere();
        let (a, b, c) = (cochain(&s, p, &va), cochain(&s, q, &vb), cochain(&s, r, &vc));
        let lhs = a.cup(&b).unwrap().coboundary();
        let sign = BigInt::from(if p % 2 == 0 { 1 } else { -1 });
        let rhs = a.coboundary().cup(&b).unwrap().add(&a.cup(&b.coboundary()).unwrap().scale(&sign)).unwrap();
        prop_assert_eq!(lhs.values(), rhs.values());
        let left = a.cup(&b).unwrap().cup(&c).unwrap();
        let right = a.cup(&b.cup(&c).unwrap()).unwrap();
        prop_assert_eq!(left.values(), right.values());
        prop_assert!(a.coboundary().coboundary().is_zero());
    }
}
