//! Rational integer helpers: primality, factorization, modular powers and
//! residue tests over prime fields.

/// Deterministic primality test for 64-bit integers (trial division up to
/// 10⁶, Miller–Rabin with a witness set that is exact below 2⁶⁴ above that).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 1_000_000 {
        let mut d = 41;
        while d * d <= n {
            if n % d == 0 || n % (d + 2) == 0 {
                return false;
            }
            d += 6;
        }
        return true;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as u64))
        .collect()
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factor `n` over the given ascending prime list. Returns `None` when a
/// cofactor larger than one remains.
pub fn factor_over(mut n: u128, primes: &[u64]) -> Option<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    for &p in primes {
        if n == 1 {
            break;
        }
        let pp = p as u128;
        if n % pp == 0 {
            let mut e = 0;
            while n % pp == 0 {
                n /= pp;
                e += 1;
            }
            out.push((p, e));
        }
    }
    (n == 1).then_some(out)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, m)`.
pub fn rem_euclid(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Inverse modulo a prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Kronecker symbol `(a / q)` for a prime `q`, including `q = 2`
/// (where `(a/2) = 1` for `a ≡ ±1 mod 8`, `-1` for `a ≡ ±3 mod 8`).
pub fn kronecker_prime(a: i64, q: u64) -> i8 {
    if q == 2 {
        return match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = rem_euclid(a as i128, q);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Whether `c` is a nonzero cube modulo the prime `p`.
pub fn is_cubic_residue(c: i128, p: u64) -> bool {
    let r = rem_euclid(c, p);
    if r == 0 {
        return false;
    }
    if p % 3 != 1 {
        // Cubing is a bijection on F_p^* when 3 ∤ p - 1.
        return true;
    }
    pow_mod(r, (p - 1) / 3, p) == 1
}

/// Integer square root (floor).
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Cube-free test for positive integers.
pub fn is_cube_free(n: u64) -> bool {
    n > 0 && factorize(n).iter().all(|&(_, e)| e < 3)
}

/// The exponent of `p` in `n` (with `n != 0`).
pub fn p_adic_valuation(mut n: u128, p: u64) -> u32 {
    let p = p as u128;
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(20_000);
        let from_test: Vec<u64> = (0..=20_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, from_test);
    }

    #[test]
    fn large_primes() {
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(is_prime(18_446_744_073_709_551_557));
        // Strong pseudoprime to bases 2..=11.
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn factorization_round_trips() {
        for n in 1..5000u64 {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker_prime(-3, 2), -1);
        assert_eq!(kronecker_prime(1, 2), 1);
        assert_eq!(kronecker_prime(-3, 7), 1);
        assert_eq!(kronecker_prime(-3, 5), -1);
    }

    #[test]
    fn cubic_residues_mod_seven() {
        let cubes: Vec<u64> = (1..7).filter(|&c| is_cubic_residue(c as i128, 7)).collect();
        assert_eq!(cubes, vec![1, 6]);
    }

    #[test]
    fn cube_free() {
        assert!(is_cube_free(12));
        assert!(!is_cube_free(24));
        assert!(is_cube_free(199));
    }
}
