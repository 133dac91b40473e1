//! Cubic residue symbols over `k₀ = Q(ζ₃)` and cubic norm residue (Hilbert)
//! symbols.
//!
//! Tame symbols are evaluated by the explicit formula
//! `(a, b / π) = ((−1)^{αβ} a^β b^{−α} / π)₃` with `α = v_π(a)`,
//! `β = v_π(b)`. The symbol at the wild place `λ = 1 − ζ₃` is defined by the
//! product formula, so that the product over all places is trivial.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime, mul_mod, pow_mod, rem_euclid};
use crate::cubicfield::PureCubicField;
use crate::eisenstein::{factor, is_primary_prime, split_prime, EisensteinInt};
use crate::error::{Error, Result};
use crate::fp::Poly;
use crate::ideals::ElementGamma;

/// The cube root of unity `ζ₃^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CubeRoot {
    e: u8,
}

impl CubeRoot {
    pub const TRIVIAL: Self = Self { e: 0 };

    pub fn new(e: i64) -> Self {
        Self {
            e: e.rem_euclid(3) as u8,
        }
    }

    pub fn exponent(self) -> u8 {
        self.e
    }

    pub fn is_trivial(self) -> bool {
        self.e == 0
    }

    pub fn inverse(self) -> Self {
        Self::new(-(self.e as i64))
    }

    pub fn pow(self, k: i64) -> Self {
        Self::new(self.e as i64 * k.rem_euclid(3))
    }

    pub fn value(self) -> EisensteinInt {
        EisensteinInt::ZETA.pow(self.e as u64)
    }
}

impl Mul for CubeRoot {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Self::new(self.e as i64 + o.e as i64)
    }
}

impl std::iter::Product for CubeRoot {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::TRIVIAL, |a, b| a * b)
    }
}

impl fmt::Display for CubeRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ^{}", self.e)
    }
}

/// A finite place of `k₀`: a primary prime `π ∤ 3`, or the wild place `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Place {
    Tame(EisensteinInt),
    Lambda,
}

/// Arguments of a norm residue symbol `(a, b / place)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolInput {
    pub a: EisensteinInt,
    pub b: EisensteinInt,
    pub place: Place,
}

impl SymbolInput {
    pub fn evaluate(&self) -> Result<CubeRoot> {
        match self.place {
            Place::Tame(pi) => hilbert_tame(self.a, self.b, pi),
            Place::Lambda => hilbert_lambda(self.a, self.b),
        }
    }
}

fn require_primary_prime(pi: EisensteinInt) -> Result<()> {
    if is_primary_prime(pi) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{pi} is not a primary prime of Z[ζ]"
        )))
    }
}

fn require_split_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(Error::InvalidArgument(format!("{p} is not ≡ 1 mod 3")));
    }
    Ok(())
}

/// `(α/π)₃`: the `e` with `α^{(N(π)−1)/3} ≡ ζ^e (mod π)`.
pub fn cubic_residue(alpha: EisensteinInt, pi: EisensteinInt) -> Result<CubeRoot> {
    require_primary_prime(pi)?;
    let r = alpha.rem(pi)?;
    if r.is_zero() {
        return Err(Error::InvalidArgument(format!("{alpha} ≡ 0 mod {pi}")));
    }
    let n = u64::try_from(pi.norm())
        .map_err(|_| Error::InvalidArgument("norm exceeds 64 bits".into()))?;
    let mut exp = (n - 1) / 3;
    let mut base = r;
    let mut acc = EisensteinInt::ONE;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc * base).rem(pi)?;
        }
        base = (base * base).rem(pi)?;
        exp >>= 1;
    }
    (0..3)
        .find(|&e| pi.divides(acc - EisensteinInt::ZETA.pow(e)))
        .map(|e| CubeRoot::new(e as i64))
        .ok_or_else(|| Error::InvalidArgument(format!("{pi} is not prime")))
}

/// `(c/p)₃ := (c/π₁)₃` with `π₁` the canonical primary factor of `p`.
pub fn cubic_residue_rational(c: i64, p: u64) -> Result<CubeRoot> {
    require_split_prime(p)?;
    if rem_euclid(c as i128, p) == 0 {
        return Err(Error::InvalidArgument(format!("{p} divides {c}")));
    }
    let (pi1, _) = split_prime(p)?;
    cubic_residue(EisensteinInt::rational(c), pi1)
}

/// Tame norm residue symbol `(a, b / π)` for a primary prime `π ∤ 3`.
pub fn hilbert_tame(a: EisensteinInt, b: EisensteinInt, pi: EisensteinInt) -> Result<CubeRoot> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument(
            "symbol arguments must be nonzero".into(),
        ));
    }
    require_primary_prime(pi)?;
    let (va, a0) = a.remove_factor(pi);
    let (vb, b0) = b.remove_factor(pi);
    let (va, vb) = (va as i64, vb as i64);
    let sign = cubic_residue(-EisensteinInt::ONE, pi)?.pow(va * vb);
    let from_a = if vb == 0 {
        CubeRoot::TRIVIAL
    } else {
        cubic_residue(a0, pi)?.pow(vb)
    };
    let from_b = if va == 0 {
        CubeRoot::TRIVIAL
    } else {
        cubic_residue(b0, pi)?.pow(-va)
    };
    Ok(sign * from_a * from_b)
}

/// Primary primes (other than `λ`) dividing `a` or `b`.
fn tame_support(a: EisensteinInt, b: EisensteinInt) -> Result<Vec<EisensteinInt>> {
    let mut primes: Vec<EisensteinInt> = factor(a)?
        .primary_primes
        .into_iter()
        .chain(factor(b)?.primary_primes)
        .map(|(p, _)| p)
        .collect();
    primes.sort();
    primes.dedup();
    Ok(primes)
}

/// `(a, b / λ)`, defined as the inverse of the product of all tame symbols.
/// Infinite places of `k₀` are complex and contribute trivially.
pub fn hilbert_lambda(a: EisensteinInt, b: EisensteinInt) -> Result<CubeRoot> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument(
            "symbol arguments must be nonzero".into(),
        ));
    }
    let tame: CubeRoot = tame_support(a, b)?
        .into_iter()
        .map(|pi| hilbert_tame(a, b, pi))
        .product::<Result<_>>()?;
    Ok(tame.inverse())
}

/// Whether `ζ₃` is a local norm from `k₀(∛p)` at `π₁`, `π₂` and `λ`, decided
/// by evaluating the three symbols `(ζ₃, p / ·)`.
pub fn zeta_norm_test(p: u64) -> Result<bool> {
    require_split_prime(p)?;
    let (pi1, pi2) = split_prime(p)?;
    let (z, pe) = (EisensteinInt::ZETA, EisensteinInt::rational(p as i64));
    Ok(hilbert_tame(z, pe, pi1)?.is_trivial()
        && hilbert_tame(z, pe, pi2)?.is_trivial()
        && hilbert_lambda(z, pe)?.is_trivial())
}

/// `(α/β)₃` for a primary `β`, multiplicative over the prime factors of `β`.
fn residue_composite(alpha: EisensteinInt, beta: EisensteinInt) -> Result<CubeRoot> {
    factor(beta)?
        .primary_primes
        .into_iter()
        .map(|(pi, e)| cubic_residue(alpha, pi).map(|s| s.pow(e as i64)))
        .product()
}

/// Whether `(α/β)₃ = (β/α)₃` for coprime primary `α`, `β`.
pub fn reciprocity_check(alpha: EisensteinInt, beta: EisensteinInt) -> Result<bool> {
    if !alpha.is_primary() || !beta.is_primary() {
        return Err(Error::Precondition("both arguments must be primary".into()));
    }
    if !alpha.gcd(beta).is_unit() {
        return Err(Error::Precondition(format!(
            "{alpha} and {beta} are not coprime"
        )));
    }
    Ok(residue_composite(alpha, beta)? == residue_composite(beta, alpha)?)
}

/// Compare `Π_{𝔓 | π} (a, b / 𝔓)` in `k = k₀(∛d)` with `(N(a), b / π)` in
/// `k₀`, for `a ∈ O_Γ` and a split prime `π` where everything is tame.
///
/// The left side is computed in the residue fields of `k` above `π`
/// (reductions of `x³ − d` modulo `p = N(π)`), the right side by
/// [`hilbert_tame`] on the rational norm of `a`.
pub fn norm_compatibility_check(
    field: &PureCubicField,
    a: ElementGamma,
    b: EisensteinInt,
    pi: EisensteinInt,
) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument(
            "symbol arguments must be nonzero".into(),
        ));
    }
    require_primary_prime(pi)?;
    let p = u64::try_from(pi.norm())
        .map_err(|_| Error::InvalidArgument("norm exceeds 64 bits".into()))?;
    if !is_prime(p) || field.d % p == 0 {
        return Err(Error::Precondition(format!(
            "{pi} is not a tame split place for {field}"
        )));
    }
    let na = a.norm(field);
    if rem_euclid(na, p) == 0 {
        return Err(Error::Precondition(format!(
            "N(a) = {na} is not prime to {p}"
        )));
    }
    let (vb, _) = b.remove_factor(pi);
    // ζ ↦ r under Z[ζ]/π ≅ F_p.
    let r = mul_mod(
        rem_euclid(-(pi.a as i128), p),
        inv_mod(rem_euclid(pi.b as i128, p), p),
        p,
    );
    let zeta_exponent = |x: u64| -> Result<i64> {
        (0..3u64)
            .find(|&e| pow_mod(r, e, p) == x)
            .map(|e| e as i64)
            .ok_or_else(|| {
                Error::InvalidArgument("residue power is not a cube root of unity".into())
            })
    };
    // a = (c₀ + c₁θ + c₂θ')/den with θ' = θ²/b.
    let (c, den) = field.to_power(a.coords());
    let inv_den = inv_mod(rem_euclid(den, p), p);
    let inv_b = inv_mod(field.b % p, p);
    let coeffs = [
        mul_mod(rem_euclid(c[0], p), inv_den, p),
        mul_mod(rem_euclid(c[1], p), inv_den, p),
        mul_mod(mul_mod(rem_euclid(c[2], p), inv_den, p), inv_b, p),
    ];
    let modulus = Poly::new(p, [-(field.d as i128), 0, 0, 1]);
    let roots = modulus.roots();
    let mut lhs = 0i64;
    if roots.is_empty() {
        let elem = Poly::new(p, coeffs.map(i128::from));
        let exp = ((p as u128).pow(3) - 1) / 3;
        let pw = elem.pow_mod(exp, &modulus);
        if pw.degree().is_some_and(|d| d > 0) {
            return Err(Error::InvalidArgument("residue power is not in F_p".into()));
        }
        lhs += zeta_exponent(pw.coeffs.first().copied().unwrap_or(0))?;
    } else {
        for t in roots {
            let u =
                (coeffs[0] + mul_mod(coeffs[1], t, p) + mul_mod(coeffs[2], mul_mod(t, t, p), p))
                    % p;
            lhs += zeta_exponent(pow_mod(u, (p - 1) / 3, p))?;
        }
    }
    let lhs = CubeRoot::new(lhs * vb as i64);
    let na =
        i64::try_from(na).map_err(|_| Error::InvalidArgument("norm exceeds 64 bits".into()))?;
    let rhs = hilbert_tame(EisensteinInt::rational(na), b, pi)?;
    Ok(lhs == rhs)
}
