use num_integer::Integer;
use proptest::prelude::*;

use purecubic_core::arith::{is_cube_free, is_prime};
use purecubic_core::cubicfield::{brute_split, split_in_gamma, split_in_k, split_in_k0};
use purecubic_core::PureCubicField;

fn cube_free() -> impl Strategy<Value = u64> {
    (2u64..200_000).prop_filter("cube free, not a cube", |&d| is_cube_free(d))
}

fn prime() -> impl Strategy<Value = u64> {
    (2u64..20_000).prop_filter("prime", |&q| is_prime(q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// `Σ e·f` is the degree, and the closure is Galois so every prime above
    /// `q` has the same `(e, f)`, with `e` the lcm of the subfield indices.
    #[test]
    fn patterns_are_galois_consistent(d in cube_free(), q in prime()) {
        let field = PureCubicField::classify(d).unwrap();
        let gamma = split_in_gamma(&field, q).unwrap();
        let k0 = split_in_k0(q).unwrap();
        let k = split_in_k(&field, q).unwrap();
        prop_assert_eq!(gamma.degree(), 3);
        prop_assert_eq!(k0.degree(), 2);
        prop_assert_eq!(k.degree(), 6);
        let (ek, fk) = k.primes[0];
        prop_assert!(k.primes.iter().all(|&p| p == (ek, fk)));
        let e_lcm = gamma.primes.iter().chain(&k0.primes).fold(1, |acc, &(e, _)| acc.lcm(&e));
        prop_assert_eq!(ek, e_lcm);
        for &(e, f) in gamma.primes.iter().chain(&k0.primes) {
            prop_assert_eq!(ek % e, 0);
            prop_assert_eq!(fk % f, 0);
        }
    }

    /// Away from `3b`, the pattern in `Q(∛d)` is read off `x³ − d` mod `q`.
    #[test]
    fn gamma_matches_polynomial_factorization(d in cube_free(), q in prime()) {
        let field = PureCubicField::classify(d).unwrap();
        prop_assume!((3 * field.b) % q != 0);
        prop_assert_eq!(brute_split(&field, q).unwrap(), split_in_gamma(&field, q).unwrap());
    }
}
