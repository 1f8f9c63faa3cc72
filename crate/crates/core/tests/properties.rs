use jrtower_core::discriminant::{disc_resultant_oracle, disc_xn};
use jrtower_core::intmath::{is_perfect_square, is_prime_u64, primes_up_to};
use jrtower_core::orbit::{constant_terms, iterate_poly, tower_strict, valuation_profile};
use jrtower_core::residue::{euler_criterion, jacobi, jacobi_u64};
use jrtower_core::square_classes::{factorize, quadratic_subfields, two_independent};
use jrtower_core::verdict::{fermat_obstruction, jr_bounds};
use jrtower_core::wreath::TreeAutomorphism;
use jrtower_core::{Effort, Independence, Subset};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn brute_independent(values: &[u64]) -> bool {
    (1u32..1 << values.len()).all(|mask| {
        let product: BigInt = values
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| BigInt::from(v))
            .product();
        !is_perfect_square(&product)
    })
}

fn squarefree_part(n: &BigInt) -> BigInt {
    let f = factorize(n, Effort::DEFAULT);
    assert!(f.is_complete());
    f.factors
        .iter()
        .filter(|pp| pp.exponent % 2 == 1)
        .map(|pp| pp.prime.clone())
        .product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn factorization_reconstructs(n in 1u64..1_000_000_000_000u64) {
        let f = factorize(&BigInt::from(n), Effort::DEFAULT);
        prop_assert!(f.is_complete());
        prop_assert_eq!(f.reconstruct(), BigInt::from(n));
        for pp in &f.factors {
            prop_assert!(is_prime_u64(pp.prime.to_u64().unwrap()));
        }
    }

    #[test]
    fn factorization_of_products(a in 2u64..1u64 << 40, b in 2u64..1u64 << 40) {
        let n = BigInt::from(a) * b;
        let f = factorize(&n, Effort::DEFAULT);
        prop_assert!(f.is_complete());
        prop_assert_eq!(f.reconstruct(), n);
    }

    #[test]
    fn independence_matches_brute_force(values in prop::collection::vec(1u64..=10_000, 1..=5)) {
        let big: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        let independent = match two_independent(&big, Effort::DEFAULT).unwrap() {
            Independence::Independent { rank } => {
                prop_assert_eq!(rank as usize, values.len());
                true
            }
            Independence::Dependent { witness } => {
                let product: BigInt = witness.indices().iter().map(|&i| BigInt::from(values[i - 1])).product();
                prop_assert!(is_perfect_square(&product));
                false
            }
            Independence::Unknown { .. } => unreachable!("small inputs always factor"),
        };
        prop_assert_eq!(independent, brute_independent(&values));
    }

    #[test]
    fn lattice_is_a_homomorphism(nu in 2u64..=50, s in 1u64..8, t in 1u64..8) {
        let lattice = quadratic_subfields(nu, 3, Effort::DEFAULT).unwrap();
        let u = Subset(s).symmetric_difference(Subset(t));
        prop_assume!(!u.is_empty());
        let (ks, kt) = (lattice.kernel_of(Subset(s)).unwrap(), lattice.kernel_of(Subset(t)).unwrap());
        prop_assert_eq!(lattice.kernel_of(u).unwrap(), &squarefree_part(&(ks * kt)));
    }

    #[test]
    fn jacobi_matches_euler(idx in 1usize..1229, a in 0u64..20_000) {
        let p = primes_up_to(10_000)[idx];
        prop_assert_eq!(jacobi_u64(a, p).unwrap(), euler_criterion(a % p, p));
    }

    #[test]
    fn jacobi_is_multiplicative(a in -5000i64..5000, b in -5000i64..5000, n in (0u64..5000).prop_map(|k| 2 * k + 1)) {
        let (a, b, n) = (BigInt::from(a), BigInt::from(b), BigInt::from(n));
        prop_assert_eq!(
            jacobi(&(&a * &b), &n).unwrap(),
            jacobi(&a, &n).unwrap() * jacobi(&b, &n).unwrap()
        );
    }

    #[test]
    fn wreath_group_laws(depth in 1u32..=4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let mask = (1u64 << ((1 << depth) - 1)) - 1;
        let g = |bits: u64| TreeAutomorphism::new(depth, bits & mask).unwrap();
        let (a, b, c) = (g(a), g(b), g(c));
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.order().is_power_of_two());
        // composition acts on leaves as the permutation product
        let (pa, pb, pab) = (a.leaf_permutation(), b.leaf_permutation(), a.compose(&b).unwrap().leaf_permutation());
        for (i, &x) in pb.iter().enumerate() {
            prop_assert_eq!(pab[i], pa[x as usize]);
        }
    }
}

#[test]
fn invariants_for_small_nu() {
    for nu in 2u64..=50 {
        let seq = constant_terms(nu, 8).unwrap();
        for n in 1..seq.len() {
            assert_eq!(&seq.ell[n - 1] - BigInt::from(nu), *seq.c(n + 1), "nu={nu}");
        }
        for n in 1..=4u32 {
            let p = iterate_poly(nu, n).unwrap();
            assert_eq!(p.constant_term(), seq.orbit_value(n as usize), "nu={nu}");
            let x = BigInt::from(3);
            let direct = (0..n).fold(x.clone(), |t, _| &t * &t - BigInt::from(nu));
            assert_eq!(p.eval(&x), direct);
        }
        let strict = tower_strict(nu, 3).unwrap();
        if strict.strict {
            for n in 1..=3 {
                assert_eq!(
                    disc_xn(nu, n).unwrap(),
                    disc_resultant_oracle(nu, n).unwrap(),
                    "nu={nu}"
                );
            }
        }
        for p in primes_up_to(50) {
            valuation_profile(nu, p, 8).unwrap();
        }
        let (alpha, upper) = jr_bounds(nu).unwrap();
        assert!(upper.ge_integer(&BigInt::from(4)));
        assert!(alpha.ge_integer(&BigInt::from(2)));
        assert_eq!(&upper.floor() - alpha.floor(), alpha.ceil());
        for p in [5u64, 17, 257, 65537] {
            let o = fermat_obstruction(nu, p, 4).unwrap();
            if strict.strict && tower_strict(nu, 4).unwrap().strict {
                assert_eq!(
                    o.is_excluded(),
                    jacobi_u64(nu % p, p).unwrap() == -1,
                    "nu={nu} p={p}"
                );
            }
        }
    }
}
