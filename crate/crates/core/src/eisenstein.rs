//! Arithmetic in the Eisenstein integers `Z[ζ]`, `ζ² + ζ + 1 = 0`.
//!
//! This is the ring of integers of `Q(ζ₃)`. It is Euclidean for the norm
//! `a² − ab + b²`, which is what makes residue symbols and factorization of
//! rational primes cheap to compute here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, isqrt};
use crate::error::{Error, Result};

/// `a + b·ζ` with `ζ` a fixed primitive cube root of unity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("Eisenstein integer coordinate overflow")
}

impl EisensteinInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const ZETA: Self = Self::new(0, 1);
    /// `λ = 1 − ζ`, the prime above 3.
    pub const LAMBDA: Self = Self::new(1, -1);

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn rational(a: i64) -> Self {
        Self { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn norm(self) -> u128 {
        let (a, b) = (self.a as i128, self.b as i128);
        (a * a - a * b + b * b) as u128
    }

    /// Complex conjugation `ζ ↦ ζ² = −1 − ζ`.
    pub fn conj(self) -> Self {
        Self::new(self.a - self.b, -self.b)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `self` is congruent to 1 modulo `3·Z[ζ]`.
    pub fn is_primary(self) -> bool {
        (self.a - 1).rem_euclid(3) == 0 && self.b.rem_euclid(3) == 0
    }

    /// Euclidean division: `self = q·y + r` with `N(r) < N(y)`.
    pub fn divrem(self, y: Self) -> Result<(Self, Self)> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = y.norm() as i128;
        let yc = y.conj();
        let (x0, x1, y0, y1) = (self.a as i128, self.b as i128, yc.a as i128, yc.b as i128);
        // self · conj(y), expanded with ζ² = −1 − ζ.
        let s = x0 * y0 - x1 * y1;
        let t = x0 * y1 + x1 * y0 - x1 * y1;
        let q = Self::new(narrow(div_round(s, n)), narrow(div_round(t, n)));
        let r = self - q * y;
        debug_assert!(r.norm() < y.norm());
        Ok((q, r))
    }

    pub fn rem(self, y: Self) -> Result<Self> {
        self.divrem(y).map(|(_, r)| r)
    }

    pub fn divides(self, x: Self) -> bool {
        !self.is_zero() && x.rem(self).is_ok_and(Self::is_zero)
    }

    /// Exact quotient, or `None` when `y` does not divide `self`.
    pub fn exact_div(self, y: Self) -> Option<Self> {
        let (q, r) = self.divrem(y).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn gcd(self, other: Self) -> Self {
        let (mut x, mut y) = (self, other);
        while !y.is_zero() {
            let r = x.rem(y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// Power of `π` dividing `self`, and the cofactor.
    pub fn remove_factor(self, pi: Self) -> (u32, Self) {
        assert!(!self.is_zero() && !pi.is_unit() && !pi.is_zero());
        let mut x = self;
        let mut v = 0;
        while let Some(q) = x.exact_div(pi) {
            x = q;
            v += 1;
        }
        (v, x)
    }
}

/// Nearest-integer division, ties rounded up.
fn div_round(n: i128, d: i128) -> i128 {
    (2 * n + d).div_euclid(2 * d)
}

impl Add for EisensteinInt {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for EisensteinInt {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for EisensteinInt {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for EisensteinInt {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        Self::new(narrow(a * c - b * d), narrow(a * d + b * c - b * d))
    }
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}ζ"),
            (a, b) if b < 0 => write!(f, "{a}-{}ζ", -b),
            (a, b) => write!(f, "{a}+{b}ζ"),
        }
    }
}

/// One of the six units `±1, ±ζ, ±ζ²`, stored as `(−1)^negative · ζ^zeta_power`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Unit {
    negative: bool,
    zeta_power: u8,
}

impl Unit {
    pub const ONE: Self = Self {
        negative: false,
        zeta_power: 0,
    };

    pub fn all() -> [Unit; 6] {
        let mut out = [Self::ONE; 6];
        for (i, u) in out.iter_mut().enumerate() {
            *u = Self {
                negative: i >= 3,
                zeta_power: (i % 3) as u8,
            };
        }
        out
    }

    pub fn value(self) -> EisensteinInt {
        let z = EisensteinInt::ZETA.pow(self.zeta_power as u64);
        if self.negative {
            -z
        } else {
            z
        }
    }

    pub fn from_element(x: EisensteinInt) -> Option<Unit> {
        Self::all().into_iter().find(|u| u.value() == x)
    }

    pub fn inverse(self) -> Unit {
        Self {
            negative: self.negative,
            zeta_power: (3 - self.zeta_power) % 3,
        }
    }
}

impl Mul for Unit {
    type Output = Unit;

    fn mul(self, o: Unit) -> Unit {
        Unit {
            negative: self.negative ^ o.negative,
            zeta_power: (self.zeta_power + o.zeta_power) % 3,
        }
    }
}

/// The unique associate `u·x ≡ 1 (mod 3)`, together with `u`.
pub fn primary_associate(x: EisensteinInt) -> Result<(Unit, EisensteinInt)> {
    if x.norm() % 3 == 0 {
        return Err(Error::NoPrimaryAssociate(x.norm().to_string()));
    }
    Unit::all()
        .into_iter()
        .map(|u| (u, u.value() * x))
        .find(|(_, p)| p.is_primary())
        .ok_or_else(|| unreachable!("some associate of a λ-unit is primary"))
}

/// `unit · λ^lambda_exponent · Π πᵢ^eᵢ` with every `πᵢ` primary and prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinFactorization {
    pub unit: Unit,
    pub lambda_exponent: u32,
    pub primary_primes: Vec<(EisensteinInt, u32)>,
}

impl EisensteinFactorization {
    pub fn expand(&self) -> EisensteinInt {
        self.primary_primes.iter().fold(
            self.unit.value() * EisensteinInt::LAMBDA.pow(self.lambda_exponent as u64),
            |acc, &(p, e)| acc * p.pow(e as u64),
        )
    }
}

/// Canonical primary prime `π₁` above a rational prime `p ≡ 1 (mod 3)`:
/// among the primary associates of `π` and `conj(π)` the one with positive
/// `a` and lexicographically smallest `(a, b)`.
pub fn split_prime(p: u64) -> Result<(EisensteinInt, EisensteinInt)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(Error::InvalidArgument(format!(
            "{p} does not split in Z[ζ]"
        )));
    }
    // a² − ab + b² = p  ⇔  (2a − b)² + 3b² = 4p
    let four_p = 4 * p as u128;
    let bmax = isqrt(four_p / 3) as i64;
    for b in 1..=bmax {
        let rest = four_p - 3 * (b as u128 * b as u128);
        let s = isqrt(rest);
        if s * s != rest || (s as i64 + b) % 2 != 0 {
            continue;
        }
        let pi = EisensteinInt::new((s as i64 + b) / 2, b);
        debug_assert_eq!(pi.norm(), p as u128);
        let (_, x) = primary_associate(pi)?;
        let (_, y) = primary_associate(pi.conj())?;
        let key = |z: &EisensteinInt| (z.a <= 0, z.a, z.b);
        let (pi1, pi2) = if key(&x) <= key(&y) { (x, y) } else { (y, x) };
        return Ok((pi1, pi2));
    }
    unreachable!("every prime p ≡ 1 mod 3 is a norm from Z[ζ]")
}

/// Factor a rational prime in `Z[ζ]`.
pub fn factor_rational_prime(q: u64) -> Result<EisensteinFactorization> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok(match q % 3 {
        // 3 = −ζ²·λ²
        0 => EisensteinFactorization {
            unit: Unit::from_element(-EisensteinInt::ZETA.pow(2)).expect("unit"),
            lambda_exponent: 2,
            primary_primes: Vec::new(),
        },
        1 => {
            let (pi1, pi2) = split_prime(q)?;
            EisensteinFactorization {
                unit: Unit::ONE,
                lambda_exponent: 0,
                primary_primes: vec![(pi1, 1), (pi2, 1)],
            }
        }
        _ => {
            let (u, p) = primary_associate(EisensteinInt::rational(q as i64))?;
            EisensteinFactorization {
                unit: u.inverse(),
                lambda_exponent: 0,
                primary_primes: vec![(p, 1)],
            }
        }
    })
}

/// Factor a nonzero Eisenstein integer through the factorization of its norm.
pub fn factor(x: EisensteinInt) -> Result<EisensteinFactorization> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let n = u64::try_from(x.norm())
        .map_err(|_| Error::InvalidArgument("norm exceeds 64 bits".into()))?;
    let mut rest = x;
    let mut lambda_exponent = 0;
    let mut primes = Vec::new();
    for (q, _) in factorize(n) {
        if q == 3 {
            let (v, r) = rest.remove_factor(EisensteinInt::LAMBDA);
            lambda_exponent = v;
            rest = r;
            continue;
        }
        for (pi, _) in factor_rational_prime(q)?.primary_primes {
            let (v, r) = rest.remove_factor(pi);
            if v > 0 {
                primes.push((pi, v));
                rest = r;
            }
        }
    }
    let unit = Unit::from_element(rest).expect("cofactor is a unit");
    primes.sort();
    Ok(EisensteinFactorization {
        unit,
        lambda_exponent,
        primary_primes: primes,
    })
}

/// Whether `pi` is a primary prime of `Z[ζ]` (prime norm, or a primary
/// associate of an inert rational prime).
pub fn is_primary_prime(pi: EisensteinInt) -> bool {
    if !pi.is_primary() {
        return false;
    }
    let n = pi.norm();
    if let Ok(n) = u64::try_from(n) {
        if is_prime(n) {
            return true;
        }
    }
    pi.b == 0 && {
        let q = pi.a.unsigned_abs();
        is_prime(q) && q % 3 == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use proptest::prelude::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn norms() {
        assert_eq!(e(2, 1).norm(), 3);
        assert_eq!(e(1, 0).norm(), 1);
        assert_eq!(e(3, 1).norm(), 7);
    }

    #[test]
    fn zeta_squared_relation() {
        let z = EisensteinInt::ZETA;
        assert_eq!(z * z, e(-1, -1));
        assert_eq!(z.conj(), e(-1, -1));
        assert_eq!(z.pow(3), EisensteinInt::ONE);
    }

    #[test]
    fn division() {
        let (q, r) = e(2, 5).divrem(e(2, 5)).unwrap();
        assert_eq!((q, r), (EisensteinInt::ONE, EisensteinInt::ZERO));
        let (_, r) = e(5, 0).divrem(e(2, 0)).unwrap();
        assert!(r.norm() < 4);
        let pi = e(3, 1);
        assert_eq!(pi * pi.conj(), e(7, 0));
        assert_eq!(e(7, 0).rem(pi).unwrap(), EisensteinInt::ZERO);
        assert_eq!(
            e(1, 1).divrem(EisensteinInt::ZERO),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn primary_associates() {
        let (u, p) = primary_associate(e(7, 3)).unwrap();
        assert_eq!((u, p), (Unit::ONE, e(7, 3)));
        let (u, p) = primary_associate(e(-1, 0)).unwrap();
        assert_eq!(u.value(), e(-1, 0));
        assert_eq!(p, EisensteinInt::ONE);
        // Brute force over the six associates of 3 + ζ.
        let candidates: Vec<_> = Unit::all()
            .into_iter()
            .map(|u| u.value() * e(3, 1))
            .filter(|x| (x.a - 1) % 3 == 0 && x.b % 3 == 0)
            .collect();
        assert_eq!(candidates.len(), 1);
        assert_eq!(primary_associate(e(3, 1)).unwrap().1, candidates[0]);
        assert!(primary_associate(EisensteinInt::LAMBDA).is_err());
    }

    #[test]
    fn three_is_associate_of_lambda_squared() {
        let l2 = EisensteinInt::LAMBDA * EisensteinInt::LAMBDA;
        assert_eq!(-EisensteinInt::ZETA.pow(2) * l2, e(3, 0));
        let f = factor_rational_prime(3).unwrap();
        assert_eq!(f.lambda_exponent, 2);
        assert_eq!(f.expand(), e(3, 0));
    }

    #[test]
    fn seven_splits_into_conjugates() {
        let f = factor_rational_prime(7).unwrap();
        assert_eq!(f.primary_primes.len(), 2);
        let (p1, p2) = (f.primary_primes[0].0, f.primary_primes[1].0);
        assert_eq!((p1.norm(), p2.norm()), (7, 7));
        assert_eq!(p2, p1.conj());
        assert_eq!(p1, e(1, 3));
        // Bounded search over |a|, |b| ≤ √(4q/3) finds every element of norm 7.
        let sols = (-4..=4)
            .flat_map(|a| (-4..=4).map(move |b| e(a, b)))
            .filter(|x| x.norm() == 7)
            .count();
        assert_eq!(sols, 12);
    }

    #[test]
    fn two_is_inert() {
        let f = factor_rational_prime(2).unwrap();
        assert_eq!(f.primary_primes, vec![(e(-2, 0), 1)]);
        assert_eq!(f.expand(), e(2, 0));
        assert!(factor_rational_prime(9).is_err());
    }

    #[test]
    fn rational_primes_reassemble() {
        for q in primes_up_to(100_000) {
            let f = factor_rational_prime(q).unwrap();
            assert_eq!(f.expand(), e(q as i64, 0), "q = {q}");
            assert!(f.primary_primes.iter().all(|&(p, _)| is_primary_prime(p)));
            if q % 3 == 1 {
                let (p1, p2) = (f.primary_primes[0].0, f.primary_primes[1].0);
                assert!(Unit::all().iter().any(|u| u.value() * p1.conj() == p2));
            }
        }
    }

    #[test]
    fn primary_uniqueness() {
        for a in -30..=30 {
            for b in -30..=30 {
                let x = e(a, b);
                if x.norm() % 3 == 0 {
                    continue;
                }
                let n = Unit::all()
                    .iter()
                    .filter(|u| (u.value() * x).is_primary())
                    .count();
                assert_eq!(n, 1, "{x}");
            }
        }
    }

    #[test]
    fn general_factorization() {
        let x = e(3, 1) * e(3, 1) * e(2, 0) * EisensteinInt::LAMBDA * EisensteinInt::ZETA;
        let f = factor(x).unwrap();
        assert_eq!(f.expand(), x);
        assert_eq!(f.lambda_exponent, 1);
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000, d in -10_000i64..10_000) {
            let (x, y) = (e(a, b), e(c, d));
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn conj_is_norm_preserving_involution(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let x = e(a, b);
            prop_assert_eq!(x.conj().norm(), x.norm());
            prop_assert_eq!(x.conj().conj(), x);
        }

        #[test]
        fn euclidean_remainder_is_small(a in -10_000i64..10_000, b in -10_000i64..10_000, c in -500i64..500, d in -500i64..500) {
            let (x, y) = (e(a, b), e(c, d));
            prop_assume!(!y.is_zero());
            let (q, r) = x.divrem(y).unwrap();
            prop_assert_eq!(q * y + r, x);
            prop_assert!(r.norm() < y.norm());
        }

        #[test]
        fn factor_reassembles(a in -3000i64..3000, b in -3000i64..3000) {
            let x = e(a, b);
            prop_assume!(!x.is_zero());
            let f = factor(x).unwrap();
            prop_assert_eq!(f.expand(), x);
            prop_assert!(f.primary_primes.iter().all(|&(p, _)| is_primary_prime(p)));
        }
    }
}
