//! Property tests for the lattice and group invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use cayley_moore::group::{groups_of_order, AbelianGroup};
use cayley_moore::lattice::{hermite_basis, smith_normal_form, IntMatrix};
use cayley_moore::mixedgraph::CayleyMixedGraph;

fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-9i64..=9, n * n).prop_filter_map("non-singular", move |entries| {
        let rows: Vec<Vec<i64>> = entries.chunks(n).map(<[i64]>::to_vec).collect();
        let m = IntMatrix::from_rows(&rows);
        (!m.det().is_zero()).then_some(m)
    })
}

fn any_small_matrix() -> impl Strategy<Value = IntMatrix> {
    prop_oneof![small_matrix(2), small_matrix(3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_invariants_hold(m in any_small_matrix()) {
        let dec = smith_normal_form(&m).unwrap();
        let n = m.rows();
        let mut s = IntMatrix::zeros(n, n);
        for (i, f) in dec.invariant_factors.iter().enumerate() {
            *s.at_mut(i, i) = f.clone();
        }
        prop_assert_eq!(dec.u.mul(&m).mul(&dec.v), s);
        prop_assert!(dec.u.is_unimodular());
        prop_assert!(dec.v.is_unimodular());
        for w in dec.invariant_factors.windows(2) {
            prop_assert!(w[1].mod_floor(&w[0]).is_zero());
        }
        prop_assert!(dec.invariant_factors.iter().all(|f| f.is_positive()));
        let product: BigInt = dec.invariant_factors.iter().product();
        prop_assert_eq!(product, m.det().abs());
    }

    #[test]
    fn congruence_is_an_equivalence_and_counts_classes(m in small_matrix(2)) {
        let dec = smith_normal_form(&m).unwrap();
        let det = m.det().abs();
        if det > BigInt::from(40) {
            return Ok(()); // fundamental-box sweep kept small
        }
        // Classes in a fundamental box: sweep a det x det block; the number
        // of distinct canonical images must be exactly |det|.
        let d = i64::try_from(&det).unwrap();
        let mut classes = std::collections::HashSet::new();
        for x in 0..d {
            for y in 0..d {
                let v = vec![BigInt::from(x), BigInt::from(y)];
                classes.insert(dec.canonicalize(&v).unwrap());
            }
        }
        prop_assert_eq!(classes.len() as i64, d);

        // Equivalence on a small sample: reflexive, symmetric, transitive.
        let sample: Vec<Vec<BigInt>> = (-2i64..=2)
            .flat_map(|x| (-2i64..=2).map(move |y| vec![BigInt::from(x), BigInt::from(y)]))
            .collect();
        for u in &sample {
            prop_assert!(dec.congruent(u, u).unwrap());
        }
        for u in sample.iter().step_by(3) {
            for v in sample.iter().step_by(4) {
                prop_assert_eq!(dec.congruent(u, v).unwrap(), dec.congruent(v, u).unwrap());
                prop_assert_eq!(
                    dec.congruent(u, v).unwrap(),
                    dec.canonicalize(u).unwrap() == dec.canonicalize(v).unwrap()
                );
            }
        }
    }

    #[test]
    fn canonicalize_is_additive(m in any_small_matrix(), a in -20i64..=20, b in -20i64..=20) {
        let dec = smith_normal_form(&m).unwrap();
        let n = m.rows();
        let u: Vec<BigInt> = (0..n).map(|i| BigInt::from(a + i as i64)).collect();
        let v: Vec<BigInt> = (0..n).map(|i| BigInt::from(b - 2 * i as i64)).collect();
        let sum: Vec<BigInt> = u.iter().zip(&v).map(|(x, y)| x + y).collect();
        let cu = dec.canonicalize(&u).unwrap();
        let cv = dec.canonicalize(&v).unwrap();
        let cs = dec.canonicalize(&sum).unwrap();
        let expected: Vec<BigInt> = cu
            .coords
            .iter()
            .zip(&cv.coords)
            .zip(&dec.s_prime)
            .map(|((x, y), s)| (x + y).mod_floor(s))
            .collect();
        prop_assert_eq!(cs.coords, expected);
    }

    #[test]
    fn hermite_membership_matches_congruence(m in any_small_matrix()) {
        let dec = smith_normal_form(&m).unwrap();
        let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let h = hermite_basis(&rows).unwrap();
        prop_assert_eq!(h.index(), m.det().abs());
        let n = m.rows();
        let zero = vec![BigInt::zero(); n];
        for probe in 0..16i64 {
            let v: Vec<BigInt> = (0..n)
                .map(|i| BigInt::from((probe * 3 + i as i64 * 7) % 9 - 4))
                .collect();
            prop_assert_eq!(
                h.contains(&v).unwrap(),
                dec.congruent(&v, &zero).unwrap()
            );
        }
    }

    #[test]
    fn diameter_survives_recoordinatization(m in small_matrix(2)) {
        // The same lattice presented with permuted rows yields an isomorphic
        // group; building on canonical images of the unit vectors must give
        // the same diameter (or fail to generate in both presentations).
        let det = m.det().abs();
        if det > BigInt::from(60) || det.is_one() {
            return Ok(());
        }
        let swapped = IntMatrix::from_rows(&[m.row(1).to_vec(), m.row(0).to_vec()]);
        let units = vec![vec![1i64, 0], vec![0, 1]];
        let a = CayleyMixedGraph::from_lattice(&m, &units).unwrap();
        let b = CayleyMixedGraph::from_lattice(&swapped, &units).unwrap();
        match (a.diameter(), b.diameter()) {
            (Ok(da), Ok(db)) => prop_assert_eq!(da, db),
            (Err(_), Err(_)) => {}
            (ra, rb) => prop_assert!(false, "asymmetric outcomes {ra:?} vs {rb:?}"),
        }
    }

    #[test]
    fn canonical_group_form_is_sound(factors in proptest::collection::vec(2u64..=12, 1..=4)) {
        let g = AbelianGroup::new(&factors);
        let canon = g.canonical_form();
        prop_assert_eq!(canon.order(), g.order());
        for w in canon.factors().windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        // Same multiset of element orders, which classifies Abelian groups.
        let mut orders_a: Vec<u64> = g.elements().map(|e| g.element_order(&e).unwrap()).collect();
        let mut orders_b: Vec<u64> = canon
            .elements()
            .map(|e| canon.element_order(&e).unwrap())
            .collect();
        orders_a.sort_unstable();
        orders_b.sort_unstable();
        prop_assert_eq!(orders_a, orders_b);
    }
}

#[test]
fn groups_of_order_emits_canonical_chains() {
    for n in 1..=48u64 {
        for g in groups_of_order(n) {
            assert_eq!(g.order(), n);
            assert_eq!(&g.canonical_form(), &g, "already canonical: {g:?}");
        }
    }
}
