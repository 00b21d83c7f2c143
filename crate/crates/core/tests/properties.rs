//! Randomized algebraic invariants: SNF reconstruction, modular solving
//! against exhaustion, module-action additivity, transposition involutivity
//! and subcomplex closure.

use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::Arc;
use symcoh::cochain::{coboundary, is_member, tau, Cochain, Flavor};
use symcoh::gmodule::GModule;
use symcoh::linalg::{smith_normal_form_full, solve_mod, IntMatrix};
use symcoh::{FiniteGroup, SizeGuard, SplitMix64};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
    })
}

proptest! {
    #[test]
    fn snf_reconstructs_exactly(rows in small_matrix()) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let a = IntMatrix::from_rows_i64(&refs);
        let f = smith_normal_form_full(&a);
        prop_assert_eq!(f.u.mul(&a).mul(&f.v), f.s.clone());
        prop_assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(a.cols()));
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert_eq!(f.s.get(i, j), &BigInt::from(0));
                }
            }
        }
        let diag: Vec<BigInt> = (0..a.rows().min(a.cols())).map(|i| f.s.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            if w[0] != BigInt::from(0) {
                prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
            } else {
                prop_assert_eq!(w[1].clone(), BigInt::from(0));
            }
        }
        for d in &diag {
            prop_assert!(d >= &BigInt::from(0));
        }
    }

    #[test]
    fn solve_mod_agrees_with_exhaustion(
        rows in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
            (
                proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r),
                proptest::collection::vec(-6i64..=6, r),
                proptest::collection::vec(1i64..=6, r),
            )
        })
    ) {
        let (a_rows, b, moduli) = rows;
        let refs: Vec<&[i64]> = a_rows.iter().map(|r| r.as_slice()).collect();
        let a = IntMatrix::from_rows_i64(&refs);
        let b_big: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let fast = solve_mod(&a, &b_big, &moduli).unwrap();

        // Returned witnesses must actually satisfy the congruences.
        if let Some(x) = &fast {
            for (i, row) in a_rows.iter().enumerate() {
                let s: i64 = row.iter().zip(x).map(|(&av, &xv)| av * xv).sum();
                prop_assert_eq!((s - b[i]).rem_euclid(moduli[i]), 0);
            }
        }

        // Exhaustive search over one period of the lcm.
        let l = moduli.iter().fold(1i64, |acc, &q| acc / num_integer::gcd(acc, q) * q);
        let n = a.cols();
        let states = (l as u64).pow(n as u32);
        if states <= 1_000_000 {
            let mut found = false;
            'outer: for code in 0..states {
                let mut x = vec![0i64; n];
                let mut cdx = code;
                for t in 0..n {
                    x[t] = (cdx % l as u64) as i64;
                    cdx /= l as u64;
                }
                for (i, row) in a_rows.iter().enumerate() {
                    let s: i64 = row.iter().zip(&x).map(|(&av, &xv)| av * xv).sum();
                    if (s - b[i]).rem_euclid(moduli[i]) != 0 {
                        continue 'outer;
                    }
                }
                found = true;
                break;
            }
            prop_assert_eq!(fast.is_some(), found);
        }
    }
}

fn fixture_modules() -> Vec<GModule> {
    let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
    let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
    let z4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
    vec![
        GModule::trivial(z2.clone(), vec![2]).unwrap(),
        GModule::trivial(z3.clone(), vec![3]).unwrap(),
        GModule::trivial(z4, vec![2]).unwrap(),
        GModule::new(z2, vec![3], vec![vec![1], vec![-1]]).unwrap(),
        GModule::new(z3.clone(), vec![2, 2], vec![vec![1, 0, 0, 1]; 3]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn action_is_additive(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        for m in fixture_modules() {
            for g in m.group().elements() {
                let a = m.element_from_index(rng.below(m.size() as u64) as usize);
                let b = m.element_from_index(rng.below(m.size() as u64) as usize);
                prop_assert_eq!(
                    m.act(g, &m.add(&a, &b)),
                    m.add(&m.act(g, &a), &m.act(g, &b))
                );
            }
        }
    }

    #[test]
    fn tau_involutive_and_closure(seed in any::<u64>()) {
        let guard = SizeGuard::default();
        let mut rng = SplitMix64::new(seed);
        for m in fixture_modules() {
            for n in 1..=3usize {
                let phi = Cochain::random(&m, n, &mut rng);
                for i in 1..=n {
                    let twice = tau(&m, i, &tau(&m, i, &phi).unwrap()).unwrap();
                    prop_assert_eq!(&twice, &phi);
                }
                // Subcomplex closure on random members of each flavor
                // subgroup (not just cocycles).
                for flavor in [Flavor::Normalized, Flavor::Symmetric, Flavor::Exterior] {
                    let lat = symcoh::cochain::subgroup_lattice(&m, n, flavor, &guard).unwrap();
                    let member = symcoh::cohomology::sample_from_lattice(&lat, n, &mut rng);
                    prop_assert!(is_member(&m, &member, flavor));
                    let d = coboundary(&m, &member, &guard).unwrap();
                    prop_assert!(is_member(&m, &d, flavor), "flavor {} not closed", flavor);
                }
            }
        }
    }
}
