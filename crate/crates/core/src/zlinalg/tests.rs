use super::*;
use crate::mat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// Independent oracle for invariant factors: d_1 * ... * d_k equals the gcd
/// of all k x k minors. Exponential, fine for tiny matrices.
fn minor_gcd_oracle(a: &IntMatrix, k: usize) -> BigInt {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = combos(n - 1, k);
        for mut c in combos(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    let mut g = BigInt::zero();
    for rows in combos(a.rows(), k) {
        for cols in combos(a.cols(), k) {
            let sub = IntMatrix::from_fn(k, k, |i, j| a.at(rows[i], cols[j]).clone());
            g = num_integer::gcd(g, sub.det());
        }
    }
    g.abs()
}

#[test]
fn snf_2x2_example() {
    let a = mat![[2, 4], [6, 8]];
    let dec = smith_normal_form(&a);
    // Oracle: gcd of entries is 2, gcd of 2x2 minors is 8, so S = diag(2, 4).
    assert_eq!(minor_gcd_oracle(&a, 1), BigInt::from(2));
    assert_eq!(minor_gcd_oracle(&a, 2), BigInt::from(8));
    assert_eq!(dec.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    assert_eq!(dec.u.mul(&a).mul(&dec.v), dec.s);
    assert!(dec.u.det().abs().is_one());
    assert!(dec.v.det().abs().is_one());
}

#[test]
fn snf_identity_and_zero() {
    let id = IntMatrix::identity(3);
    let dec = smith_normal_form(&id);
    assert!(dec.s.is_identity());

    let z = IntMatrix::zero(2, 2);
    let dec = smith_normal_form(&z);
    assert!(dec.s.is_zero());
    assert_eq!(dec.invariant_factors(), Vec::<BigInt>::new());
}

/// Oracle for the Hermite example: all vectors reachable from the spanning
/// set by integer combinations inside a small box.
fn spans_vector(gens: &[Vec<i64>], target: &[i64], coeff_bound: i64) -> bool {
    fn rec(gens: &[Vec<i64>], acc: Vec<i64>, target: &[i64], bound: i64) -> bool {
        if gens.is_empty() {
            return acc == target;
        }
        (-bound..=bound).any(|c| {
            let next: Vec<i64> = acc
                .iter()
                .zip(&gens[0])
                .map(|(a, g)| a + c * g)
                .collect();
            rec(&gens[1..], next, target, bound)
        })
    }
    rec(gens, vec![0; target.len()], target, coeff_bound)
}

#[test]
fn hermite_examples() {
    let gens = vec![vec![2i64, 0], vec![0, 3], vec![1, 1]];
    // Oracle: (1,0) and (0,1) are reachable, so the span is all of Z^2.
    assert!(spans_vector(&gens, &[1, 0], 3));
    assert!(spans_vector(&gens, &[0, 1], 3));
    let big: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let h = hermite_basis(&big);
    assert_eq!(h, mat![[1, 0], [0, 1]].row_vecs());

    let h = hermite_basis(&mat![[2, 0], [0, 2]].row_vecs());
    assert_eq!(h, mat![[2, 0], [0, 2]].row_vecs());

    assert!(hermite_basis(&[]).is_empty());
}

#[test]
fn hermite_reduces_above_pivots() {
    // Entries above a pivot must land in [0, pivot).
    let h = hermite_basis(&mat![[1, 7], [0, 3]].row_vecs());
    assert_eq!(h, mat![[1, 1], [0, 3]].row_vecs());
}

#[test]
fn kernel_examples() {
    let k = kernel_basis(&mat![[1, -1]]);
    assert_eq!(k, vec![vec![BigInt::one(), BigInt::one()]]);

    let k = kernel_basis(&mat![[2]]);
    assert!(k.is_empty());

    // Oracle: enumerate the box and find the shortest nonzero solutions.
    let a = mat![[2, -4]];
    let mut box_solutions = Vec::new();
    for x in -4i64..=4 {
        for y in -4i64..=4 {
            if 2 * x - 4 * y == 0 && (x, y) != (0, 0) {
                box_solutions.push((x, y));
            }
        }
    }
    assert!(box_solutions.contains(&(2, 1)));
    assert!(!box_solutions.contains(&(1, 1)));
    let k = kernel_basis(&a);
    assert_eq!(k.len(), 1);
    let v = &k[0];
    let primitive = num_integer::gcd(v[0].clone(), v[1].clone()).abs().is_one();
    assert!(primitive, "kernel basis must be primitive: {v:?}");
    assert!(v == &[BigInt::from(2), BigInt::from(1)] || v == &[BigInt::from(-2), BigInt::from(-1)]);
}

#[test]
fn solve_examples() {
    let out = solve_integer_system(&mat![[2]], &[BigInt::from(4)]).unwrap();
    assert_eq!(out.solution().unwrap(), &[BigInt::from(2)]);

    let out = solve_integer_system(&mat![[2]], &[BigInt::from(3)]).unwrap();
    match out {
        SolveOutcome::NoSolution(fail) => {
            assert_eq!(fail.divisor, BigInt::from(2));
        }
        SolveOutcome::Solution(_) => panic!("2x = 3 has no integer solution"),
    }
    // Oracle: exhaustive box search agrees that nothing works.
    assert!(!(-10i64..=10).any(|x| 2 * x == 3));

    let a = mat![[1, 2], [2, 4]];
    let b = [BigInt::from(1), BigInt::from(2)];
    let out = solve_integer_system(&a, &b).unwrap();
    let x = out.solution().expect("consistent system");
    assert_eq!(a.mul_vec(x), b.to_vec());

    let err = solve_integer_system(&mat![[1, 2]], &[BigInt::one(), BigInt::one()]);
    assert!(err.is_err(), "dimension mismatch must be rejected");
}

#[test]
fn solve_detects_inconsistency() {
    // x + 2y = 1 and 2x + 4y = 3 are rationally inconsistent.
    let a = mat![[1, 2], [2, 4]];
    let b = [BigInt::from(1), BigInt::from(3)];
    match solve_integer_system(&a, &b).unwrap() {
        SolveOutcome::NoSolution(fail) => assert!(fail.divisor.is_zero()),
        SolveOutcome::Solution(_) => panic!("inconsistent system solved"),
    }
}

#[test]
fn cokernel_examples() {
    let inv = cokernel_invariants(&mat![[2, 0], [0, 4]]);
    assert_eq!(inv, AbelianGroupInvariants::from_torsion_u64(&[2, 4]));

    let inv = cokernel_invariants(&IntMatrix::zero(2, 3));
    assert_eq!(inv, AbelianGroupInvariants::new(vec![], 2));

    let inv = cokernel_invariants(&mat![[2, 4], [6, 8]]);
    assert_eq!(inv, AbelianGroupInvariants::from_torsion_u64(&[2, 4]));
}

fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_invariants_hold(a in arb_matrix()) {
        let dec = smith_normal_form(&a);
        prop_assert_eq!(dec.u.mul(&a).mul(&dec.v), dec.s.clone());
        prop_assert!(dec.u.det().abs().is_one());
        prop_assert!(dec.v.det().abs().is_one());
        let d = dec.invariant_factors();
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for (i, di) in d.iter().enumerate() {
            prop_assert!(di > &BigInt::zero());
            prop_assert_eq!(dec.s.at(i, i), di);
        }
    }

    #[test]
    fn snf_matches_minor_gcd_oracle(a in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })) {
        let d = smith_normal_form(&a).invariant_factors();
        let mut prod = BigInt::one();
        for (k, dk) in d.iter().enumerate() {
            prod *= dk;
            prop_assert_eq!(&prod, &minor_gcd_oracle(&a, k + 1));
        }
    }

    #[test]
    fn kernel_vectors_satisfy_system_and_saturate(a in arb_matrix()) {
        let k = kernel_basis(&a);
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert!(rows_are_saturated(&k));
        // Rank-nullity over Q.
        let rank = smith_normal_form(&a).rank();
        prop_assert_eq!(k.len(), a.cols() - rank);
    }

    #[test]
    fn solutions_verify_exactly(a in arb_matrix(), xs in proptest::collection::vec(-5i64..=5, 8)) {
        let x: Vec<BigInt> = xs[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = a.mul_vec(&x);
        let out = solve_integer_system(&a, &b).unwrap();
        let sol = out.solution().expect("constructed system is solvable");
        prop_assert_eq!(a.mul_vec(sol), b);
    }

    #[test]
    fn no_solution_verdicts_confirmed_by_box_search(
        entries in proptest::collection::vec(-4i64..=4, 4),
        bs in proptest::collection::vec(-6i64..=6, 2),
    ) {
        let a = IntMatrix::from_fn(2, 2, |i, j| BigInt::from(entries[i * 2 + j]));
        let b: Vec<BigInt> = bs.iter().map(|&v| BigInt::from(v)).collect();
        if let SolveOutcome::NoSolution(_) = solve_integer_system(&a, &b).unwrap() {
            // |x|, |y| <= 60 safely covers any solution of a 2x2 system with
            // these entry and rhs bounds (Cramer bound: |det| >= 1, minors <= 48).
            let found = (-60i64..=60).any(|x| (-60i64..=60).any(|y| {
                entries[0] * x + entries[1] * y == bs[0]
                    && entries[2] * x + entries[3] * y == bs[1]
            }));
            prop_assert!(!found, "solver refuted a solvable system");
        }
    }

    #[test]
    fn hermite_rows_generate_same_lattice(rows in proptest::collection::vec(
        proptest::collection::vec(-9i64..=9, 4), 0..5)
    ) {
        let big: Vec<Vec<BigInt>> = rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let h = hermite_basis(&big);
        // Mutual membership: every original row solves over the basis and
        // every basis row solves over the originals.
        if !h.is_empty() {
            let hm = IntMatrix::from_rows(&h).transpose();
            for r in &big {
                let out = solve_integer_system(&hm, r).unwrap();
                prop_assert!(out.solution().is_some());
            }
        } else {
            prop_assert!(big.iter().all(|r| r.iter().all(Zero::is_zero)));
        }
        if !big.iter().all(|r| r.iter().all(Zero::is_zero)) {
            let gm = IntMatrix::from_rows(&big).transpose();
            for r in &h {
                let out = solve_integer_system(&gm, r).unwrap();
                prop_assert!(out.solution().is_some());
            }
        }
        // Canonical: re-running on the basis is a fixed point.
        prop_assert_eq!(hermite_basis(&h), h);
    }
}
