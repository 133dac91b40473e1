//! Pure cubic fields `Γ = Q(θ)`, `θ³ = d`, and the splitting of rational
//! primes in `Γ`, in `k₀ = Q(ζ₃)` and in the normal closure `k = Γ(ζ₃)`.
//!
//! Write `d = a·b²` with `a`, `b` squarefree and coprime, and put
//! `θ' = θ²/b`, so that `θ² = bθ'`, `θθ' = ab` and `θ'² = aθ`. Elements are
//! carried in the power coordinates `(1, θ, θ')`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_cubic_residue, is_prime, kronecker_prime};
use crate::error::{Error, Result};
use crate::fp::Poly;

/// Dedekind's classification of `Q(∛(ab²))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `a² ≢ b² (mod 9)`: `3` is totally ramified, `O_Γ = Z[θ, θ']`.
    First,
    /// `a² ≡ b² (mod 9)`: `3 = 𝒫²𝒫₁`, `O_Γ` has an element with denominator 3.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PureCubicField {
    pub d: u64,
    pub a: u64,
    pub b: u64,
    pub kind: Kind,
    pub disc: i128,
    /// `ω₂ = (c₀ + c₁θ + c₂θ')/den` completing `{1, θ}` to an integral basis.
    pub omega2: [i64; 3],
    pub omega2_den: i64,
    /// `mult[i][j][k]`: coefficient of `ω_k` in `ω_i·ω_j`.
    mult: [[[i64; 3]; 3]; 3],
}

/// Multiplication by `c₀ + c₁θ + c₂θ'` on power coordinates, as a matrix
/// whose column `j` is the image of the `j`-th power basis element.
pub(crate) fn power_mult_matrix(a: i128, b: i128, c: [i128; 3]) -> [[i128; 3]; 3] {
    let [c0, c1, c2] = c;
    // images of 1, θ, θ'
    let col0 = [c0, c1, c2];
    let col1 = [c2 * a * b, c0, c1 * b];
    let col2 = [c1 * a * b, c2 * a, c0];
    std::array::from_fn(|i| [col0[i], col1[i], col2[i]])
}

/// Coefficients `(s₁, s₂, s₃)` of the characteristic polynomial
/// `x³ − s₁x² + s₂x − s₃` of a 3×3 matrix.
pub(crate) fn char_poly(m: &[[i128; 3]; 3]) -> [i128; 3] {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    [tr, minors, det3(m)]
}

pub(crate) fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn power_mul(a: i128, b: i128, x: [i128; 3], y: [i128; 3]) -> [i128; 3] {
    let m = power_mult_matrix(a, b, x);
    let mut out = [0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|j| m[i][j] * y[j]).sum();
    }
    out
}

/// Whether `(c₀ + c₁θ + c₂θ')/den` is an algebraic integer, decided from its
/// exact characteristic polynomial.
fn is_integral(a: i128, b: i128, c: [i128; 3], den: i128) -> bool {
    let [s1, s2, s3] = char_poly(&power_mult_matrix(a, b, c));
    s1 % den == 0 && s2 % (den * den) == 0 && s3 % (den * den * den) == 0
}

impl PureCubicField {
    pub fn classify(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("d = {d} must exceed 1")));
        }
        let (mut a, mut b) = (1u64, 1u64);
        for (q, e) in factorize(d) {
            match e {
                1 => a *= q,
                2 => b *= q,
                _ => return Err(Error::NotCubeFree(d)),
            }
        }
        let kind = if (a * a).abs_diff(b * b) % 9 == 0 {
            Kind::Second
        } else {
            Kind::First
        };
        let ab = (a as i128) * (b as i128);
        let disc = match kind {
            Kind::First => -27 * ab * ab,
            Kind::Second => -3 * ab * ab,
        };
        let (ai, bi) = (a as i128, b as i128);
        let (omega2, omega2_den) = match kind {
            Kind::First => ([0, 0, 1], 1),
            Kind::Second => {
                let found = (0..3)
                    .flat_map(|c1| (0..3).map(move |c0| [c0, c1, 1]))
                    .find(|&c| is_integral(ai, bi, c, 3))
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "no integral ω₂ with denominator 3 for d = {d}"
                        ))
                    })?;
                ([found[0] as i64, found[1] as i64, 1], 3)
            }
        };
        let mut field = Self {
            d,
            a,
            b,
            kind,
            disc,
            omega2,
            omega2_den,
            mult: [[[0; 3]; 3]; 3],
        };
        field.mult = field.compute_mult_table()?;
        Ok(field)
    }

    /// Basis element `ω_i` as `(power coordinates, denominator)`.
    pub fn basis_element(&self, i: usize) -> ([i128; 3], i128) {
        match i {
            0 => ([1, 0, 0], 1),
            1 => ([0, 1, 0], 1),
            _ => (self.omega2.map(i128::from), self.omega2_den as i128),
        }
    }

    /// Power coordinates of `x·1 + y·ω₁ + z·ω₂`, scaled by the basis
    /// denominator (which is returned alongside).
    pub fn to_power(&self, coords: [i64; 3]) -> ([i128; 3], i128) {
        let den = self.omega2_den as i128;
        let [x, y, z] = coords.map(i128::from);
        let w = self.omega2.map(i128::from);
        ([x * den + z * w[0], y * den + z * w[1], z * w[2]], den)
    }

    /// Inverse of [`Self::to_power`]; `None` when the element is not in the
    /// lattice spanned by the integral basis.
    pub fn from_power(&self, power: [i128; 3], den: i128) -> Option<[i64; 3]> {
        // power/den = x + yθ + z·(w₀ + w₁θ + θ')/D, so z = power₂·D/den and
        // x = (power₀·D − z·w₀·den)/(den·D), likewise y.
        let big_d = self.omega2_den as i128;
        let w = self.omega2.map(i128::from);
        if (power[2] * big_d) % den != 0 {
            return None;
        }
        let z = power[2] * big_d / den;
        let xn = power[0] * big_d - z * w[0] * den;
        let yn = power[1] * big_d - z * w[1] * den;
        let q = den * big_d;
        if xn % q != 0 || yn % q != 0 {
            return None;
        }
        let conv = |v: i128| i64::try_from(v).ok();
        Some([conv(xn / q)?, conv(yn / q)?, conv(z)?])
    }

    fn compute_mult_table(&self) -> Result<[[[i64; 3]; 3]; 3]> {
        let (a, b) = (self.a as i128, self.b as i128);
        let mut table = [[[0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let (x, dx) = self.basis_element(i);
                let (y, dy) = self.basis_element(j);
                let prod = power_mul(a, b, x, y);
                table[i][j] = self.from_power(prod, dx * dy).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "basis of Q(∛{}) is not closed under products",
                        self.d
                    ))
                })?;
            }
        }
        Ok(table)
    }

    /// Structure constants of the integral basis.
    pub fn mult_table(&self) -> &[[[i64; 3]; 3]; 3] {
        &self.mult
    }

    /// Index of `Z[θ]` in `O_Γ`'s lattice of power coordinates; `3` exactly
    /// for the second kind, otherwise `1`.
    pub fn index_denominator(&self) -> u64 {
        self.omega2_den as u64
    }
}

impl fmt::Display for PureCubicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(∛{})", self.d)
    }
}

/// Ramification indices and residue degrees of the primes above `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitPattern {
    pub primes: Vec<(u32, u32)>,
}

impl SplitPattern {
    pub fn new(mut primes: Vec<(u32, u32)>) -> Self {
        primes.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        Self { primes }
    }

    fn repeat(ef: (u32, u32), n: usize) -> Self {
        Self::new(vec![ef; n])
    }

    /// `Σ e·f`, the degree of the field.
    pub fn degree(&self) -> u32 {
        self.primes.iter().map(|&(e, f)| e * f).sum()
    }
}

impl fmt::Display for SplitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .primes
            .iter()
            .map(|&(e, fd)| format!("(e={e},f={fd})"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn require_prime(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime(q))
    }
}

/// Decomposition of `q·O_Γ`.
pub fn split_in_gamma(field: &PureCubicField, q: u64) -> Result<SplitPattern> {
    require_prime(q)?;
    let ab = field.a * field.b;
    Ok(if q == 3 {
        match field.kind {
            Kind::First => SplitPattern::new(vec![(3, 1)]),
            Kind::Second => SplitPattern::new(vec![(2, 1), (1, 1)]),
        }
    } else if ab % q == 0 {
        SplitPattern::new(vec![(3, 1)])
    } else if q % 3 == 2 {
        SplitPattern::new(vec![(1, 1), (1, 2)])
    } else if is_cubic_residue(field.d as i128, q) {
        SplitPattern::repeat((1, 1), 3)
    } else {
        SplitPattern::new(vec![(1, 3)])
    })
}

/// Decomposition of `q` in `k₀ = Q(ζ₃)`.
pub fn split_in_k0(q: u64) -> Result<SplitPattern> {
    require_prime(q)?;
    Ok(match q % 3 {
        0 => SplitPattern::new(vec![(2, 1)]),
        1 => SplitPattern::repeat((1, 1), 2),
        _ => SplitPattern::new(vec![(1, 2)]),
    })
}

/// Decomposition of `q·O_k` in the normal closure `k = Q(∛d, ζ₃)`.
///
/// For `q ≡ 1 (mod 3)` unramified, `q` splits completely exactly when `d`
/// is a cube modulo `q`.
pub fn split_in_k(field: &PureCubicField, q: u64) -> Result<SplitPattern> {
    require_prime(q)?;
    let ab = field.a * field.b;
    Ok(if q == 3 {
        match field.kind {
            Kind::First => SplitPattern::new(vec![(6, 1)]),
            Kind::Second => SplitPattern::repeat((2, 1), 3),
        }
    } else if ab % q == 0 {
        if kronecker_prime(-3, q) == 1 {
            SplitPattern::repeat((3, 1), 2)
        } else {
            SplitPattern::new(vec![(3, 2)])
        }
    } else if q % 3 == 1 {
        if is_cubic_residue(field.d as i128, q) {
            SplitPattern::repeat((1, 1), 6)
        } else {
            SplitPattern::repeat((1, 3), 2)
        }
    } else {
        SplitPattern::repeat((1, 2), 3)
    })
}

/// Decomposition of `q·O_Γ` read off from the factorization of `x³ − d`
/// over `F_q`. Applicable only when `q ∤ 3b`, where `Z[θ]` is `q`-maximal.
pub fn brute_split(field: &PureCubicField, q: u64) -> Result<SplitPattern> {
    require_prime(q)?;
    if (3 * field.b) % q == 0 {
        return Err(Error::Precondition(format!(
            "x³ − {} does not describe the primes above {q}",
            field.d
        )));
    }
    let f = Poly::new(q, [-(field.d as i128), 0, 0, 1]);
    let primes = f
        .factor_small()
        .into_iter()
        .map(|(g, m)| (m, g.degree().expect("nonzero factor") as u32))
        .collect();
    Ok(SplitPattern::new(primes))
}

/// For `q ≡ −1 (mod 3)`, whether `−3` is a quadratic non-residue (Kronecker
/// symbol at `q = 2`), so that `q·O_k` never has exactly two primes.
pub fn never_happens_check(q: u64) -> Result<bool> {
    require_prime(q)?;
    if q % 3 != 2 {
        return Err(Error::InvalidArgument(format!("{q} is not ≡ −1 mod 3")));
    }
    Ok(kronecker_prime(-3, q) == -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_cube_free, primes_up_to};

    #[test]
    fn classify_examples() {
        let f = PureCubicField::classify(7).unwrap();
        assert_eq!((f.kind, f.disc), (Kind::First, -27 * 49));
        let f = PureCubicField::classify(199).unwrap();
        assert_eq!((f.kind, f.disc), (Kind::Second, -3 * 199 * 199));
        assert_eq!((f.omega2, f.omega2_den), ([1, 1, 1], 3));
        let f = PureCubicField::classify(12).unwrap();
        assert_eq!((f.a, f.b, f.kind), (3, 2, Kind::First));
        assert_eq!(PureCubicField::classify(16), Err(Error::NotCubeFree(16)));
        assert!(PureCubicField::classify(1).is_err());
    }

    #[test]
    fn second_kind_basis_is_integral() {
        for d in (2..3000).filter(|&d| is_cube_free(d)) {
            let f = PureCubicField::classify(d).unwrap();
            let (a, b) = (f.a as i128, f.b as i128);
            assert!(is_integral(
                a,
                b,
                f.omega2.map(i128::from),
                f.omega2_den as i128
            ));
            if f.kind == Kind::First {
                // No element with denominator 3 outside Z[θ, θ'] is integral.
                for c in 1..27i128 {
                    let c = [c % 3, (c / 3) % 3, c / 9];
                    assert!(!is_integral(a, b, c, 3), "d = {d}, c = {c:?}");
                }
            }
        }
    }

    #[test]
    fn mult_table_matches_power_arithmetic() {
        for d in [2, 7, 10, 12, 19, 28, 199, 300] {
            let f = PureCubicField::classify(d).unwrap();
            let t = f.mult_table();
            assert_eq!(t[0][1], [0, 1, 0]);
            for (i, row) in t.iter().enumerate() {
                for (j, prod) in row.iter().enumerate() {
                    assert_eq!(prod, &t[j][i]);
                }
            }
            // θ·θ = b·θ'
            let (p, den) = f.to_power(t[1][1]);
            assert_eq!(p, [0, 0, f.b as i128 * den]);
        }
    }

    #[test]
    fn power_round_trip() {
        let f = PureCubicField::classify(199).unwrap();
        for c in [[1, 2, 3], [0, 0, 1], [-5, 7, -2]] {
            let (p, den) = f.to_power(c);
            assert_eq!(f.from_power(p, den), Some(c));
        }
        assert_eq!(f.from_power([1, 0, 0], 3), None);
    }

    #[test]
    fn splitting_examples() {
        let f7 = PureCubicField::classify(7).unwrap();
        let f199 = PureCubicField::classify(199).unwrap();
        assert_eq!(split_in_gamma(&f7, 3).unwrap().primes, vec![(3, 1)]);
        assert_eq!(
            split_in_gamma(&f199, 3).unwrap().primes,
            vec![(2, 1), (1, 1)]
        );
        assert_eq!(split_in_gamma(&f7, 2).unwrap().primes, vec![(1, 1), (1, 2)]);
        assert_eq!(split_in_k(&f199, 3).unwrap().primes, vec![(2, 1); 3]);
        assert_eq!(split_in_k(&f7, 2).unwrap().primes, vec![(1, 2); 3]);
        assert_eq!(split_in_k(&f7, 7).unwrap().primes, vec![(3, 1); 2]);
        assert_eq!(brute_split(&f7, 2).unwrap().primes, vec![(1, 1), (1, 2)]);
        assert!(brute_split(&f7, 3).is_err());
    }

    #[test]
    fn never_happens() {
        assert_eq!(never_happens_check(2), Ok(true));
        assert_eq!(never_happens_check(5), Ok(true));
        assert!(never_happens_check(7).is_err());
        for q in primes_up_to(10_000).into_iter().filter(|q| q % 3 == 2) {
            assert_eq!(never_happens_check(q), Ok(true), "q = {q}");
        }
    }

    #[test]
    fn degrees_sum_correctly() {
        for d in (2..50).filter(|&d| is_cube_free(d)) {
            let f = PureCubicField::classify(d).unwrap();
            assert!(f.disc < 0 && f.disc % ((f.a * f.b) as i128).pow(2) == 0);
            for q in primes_up_to(500) {
                assert_eq!(split_in_gamma(&f, q).unwrap().degree(), 3);
                assert_eq!(split_in_k(&f, q).unwrap().degree(), 6);
            }
        }
    }
}
