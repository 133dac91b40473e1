//! Integral ideals of `O_Γ` as lattices in Hermite normal form over the
//! integral basis `{1, ω₁, ω₂}` of a [`PureCubicField`].
//!
//! An ideal is stored as the 3×3 upper-triangular HNF whose *rows* generate
//! it as a Z-module. Equality of ideals is equality of these matrices.

use std::cmp::Reverse;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, p_adic_valuation};
use crate::cubicfield::{char_poly, det3, PureCubicField};
use crate::error::{Error, Result};
use crate::fp::Poly;
use crate::zlinalg::{hnf, kernel_mod, IntMatrix};

/// `x + y·ω₁ + z·ω₂` in the integral basis of the ambient field.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct ElementGamma {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

fn mul_coords(field: &PureCubicField, u: [i128; 3], v: [i128; 3]) -> [i128; 3] {
    let t = field.mult_table();
    let mut out = [0i128; 3];
    for i in 0..3 {
        if u[i] == 0 {
            continue;
        }
        for j in 0..3 {
            if v[j] == 0 {
                continue;
            }
            let c = u[i] * v[j];
            for (k, o) in out.iter_mut().enumerate() {
                *o += c * t[i][j][k] as i128;
            }
        }
    }
    out
}

fn mul_coords_big(field: &PureCubicField, u: &[BigInt], v: &[BigInt]) -> [BigInt; 3] {
    let t = field.mult_table();
    let mut out: [BigInt; 3] = Default::default();
    for i in 0..3 {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            if v[j].is_zero() {
                continue;
            }
            let c = &u[i] * &v[j];
            for (k, o) in out.iter_mut().enumerate() {
                if t[i][j][k] != 0 {
                    *o += &c * t[i][j][k];
                }
            }
        }
    }
    out
}

/// Matrix of multiplication by `u` in the integral basis; column `j` holds
/// the coordinates of `u·ω_j`.
pub(crate) fn regular_matrix(field: &PureCubicField, u: [i128; 3]) -> [[i128; 3]; 3] {
    let cols: [[i128; 3]; 3] = std::array::from_fn(|j| {
        let mut e = [0; 3];
        e[j] = 1;
        mul_coords(field, u, e)
    });
    std::array::from_fn(|i| [cols[0][i], cols[1][i], cols[2][i]])
}

impl ElementGamma {
    pub const ONE: Self = Self::new(1, 0, 0);

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Self { x, y, z }
    }

    pub fn rational(c: i64) -> Self {
        Self::new(c, 0, 0)
    }

    pub fn coords(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub(crate) fn wide(self) -> [i128; 3] {
        self.coords().map(i128::from)
    }

    pub(crate) fn from_wide(c: [i128; 3]) -> Option<Self> {
        Some(Self::new(
            i64::try_from(c[0]).ok()?,
            i64::try_from(c[1]).ok()?,
            i64::try_from(c[2]).ok()?,
        ))
    }

    pub fn is_zero(self) -> bool {
        self.coords() == [0, 0, 0]
    }

    /// Product in `O_Γ`; panics if a coordinate leaves the `i64` range.
    pub fn mul(self, o: Self, field: &PureCubicField) -> Self {
        Self::from_wide(mul_coords(field, self.wide(), o.wide()))
            .expect("element coordinate overflow")
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn scale(self, c: i64) -> Self {
        Self::new(self.x * c, self.y * c, self.z * c)
    }

    /// `N_{Γ/Q}`, the determinant of the regular representation.
    pub fn norm(self, field: &PureCubicField) -> i128 {
        det3(&regular_matrix(field, self.wide()))
    }

    /// Coefficients `(s₁, s₂, s₃)` of the characteristic polynomial
    /// `x³ − s₁x² + s₂x − s₃`.
    pub fn char_poly(self, field: &PureCubicField) -> [i128; 3] {
        char_poly(&regular_matrix(field, self.wide()))
    }

    /// Evaluate an integer polynomial (lowest degree first) at `self`.
    pub fn eval_poly(self, coeffs: &[i128], field: &PureCubicField) -> Self {
        let mut acc = [0i128; 3];
        for &c in coeffs.iter().rev() {
            acc = mul_coords(field, acc, self.wide());
            acc[0] += c;
        }
        Self::from_wide(acc).expect("element coordinate overflow")
    }
}

impl fmt::Display for ElementGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// An integral ideal of `O_Γ` in canonical row-HNF.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdealHNF {
    field: Arc<PureCubicField>,
    h: IntMatrix,
}

impl fmt::Debug for IdealHNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealHNF")
            .field("d", &self.field.d)
            .field("h", &self.h)
            .finish()
    }
}

impl IdealHNF {
    /// Ideal generated as a Z-module by the given coordinate rows. The rows
    /// must span a full-rank lattice closed under multiplication by `O_Γ`
    /// (not checked here; use [`Self::from_ideal_generators`] otherwise).
    fn from_module_rows(field: Arc<PureCubicField>, rows: &[[BigInt; 3]]) -> Result<Self> {
        let m = IntMatrix::new(
            rows.len(),
            3,
            rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        )?;
        let out = hnf(&m);
        if out.rank() < 3 {
            return Err(Error::InvalidArgument(
                "ideal generators do not span a full-rank lattice".into(),
            ));
        }
        let h = IntMatrix::new(3, 3, (0..3).flat_map(|i| out.h.row(i).to_vec()).collect())?;
        Ok(Self { field, h })
    }

    /// Ideal generated over `O_Γ` by the given elements.
    pub fn from_ideal_generators(field: Arc<PureCubicField>, gens: &[[BigInt; 3]]) -> Result<Self> {
        let basis: [[BigInt; 3]; 3] = std::array::from_fn(|j| {
            let mut e: [BigInt; 3] = Default::default();
            e[j] = BigInt::one();
            e
        });
        let rows: Vec<[BigInt; 3]> = gens
            .iter()
            .flat_map(|g| {
                basis
                    .iter()
                    .map(|w| mul_coords_big(&field, g, w))
                    .collect::<Vec<_>>()
            })
            .collect();
        Self::from_module_rows(field, &rows)
    }

    pub fn unit(field: Arc<PureCubicField>) -> Self {
        Self {
            field,
            h: IntMatrix::identity(3),
        }
    }

    /// The principal ideal `(α)`.
    pub fn principal(field: Arc<PureCubicField>, alpha: ElementGamma) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::InvalidArgument(
                "zero element generates no integral ideal".into(),
            ));
        }
        let g = alpha.coords().map(BigInt::from);
        Self::from_ideal_generators(field, &[g])
    }

    pub fn rational(field: Arc<PureCubicField>, c: u64) -> Result<Self> {
        Self::principal(field, ElementGamma::rational(c as i64))
    }

    pub fn field(&self) -> &Arc<PureCubicField> {
        &self.field
    }

    pub fn hnf(&self) -> &IntMatrix {
        &self.h
    }

    pub fn norm(&self) -> BigInt {
        (0..3).map(|i| self.h[(i, i)].clone()).product()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    fn same_field(&self, o: &Self) -> Result<()> {
        if self.field.d == o.field.d {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    fn rows(&self) -> [[BigInt; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.h[(i, j)].clone()))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        let (a, b) = (self.rows(), o.rows());
        let mut rows: Vec<[BigInt; 3]> = Vec::with_capacity(10);
        for x in &a {
            for y in &b {
                rows.push(mul_coords_big(&self.field, x, y));
            }
        }
        // N(I)N(J) lies in I·J; adding it keeps intermediate entries small.
        let n = self.norm() * o.norm();
        rows.push([n, BigInt::zero(), BigInt::zero()]);
        Self::from_module_rows(self.field.clone(), &rows)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::unit(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        let mut rows = self.rows().to_vec();
        rows.extend(o.rows());
        Self::from_module_rows(self.field.clone(), &rows)
    }

    /// Membership of a coordinate vector, by back-substitution in the
    /// triangular basis.
    pub fn contains_coords(&self, v: &[BigInt; 3]) -> bool {
        let mut rest = v.clone();
        for i in 0..3 {
            let pivot = &self.h[(i, i)];
            let (c, r) = rest[i].div_rem(pivot);
            if !r.is_zero() {
                return false;
            }
            for j in i..3 {
                rest[j] -= &c * &self.h[(i, j)];
            }
        }
        true
    }

    pub fn contains(&self, alpha: ElementGamma) -> bool {
        self.contains_coords(&alpha.coords().map(BigInt::from))
    }

    /// `self ⊆ o`.
    pub fn is_subset_of(&self, o: &Self) -> bool {
        self.field.d == o.field.d && self.rows().iter().all(|r| o.contains_coords(r))
    }

    /// Largest `k` with `self ⊆ P^k`, by repeated containment.
    pub fn valuation(&self, p: &PrimeIdeal) -> Result<u32> {
        self.same_field(&p.ideal)?;
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::InvalidArgument("zero ideal".into()));
        }
        let bound = p_adic_valuation(n.to_u128().unwrap_or(u128::MAX), p.q) / p.f;
        let mut power = p.ideal.clone();
        let mut k = 0;
        while k < bound && self.is_subset_of(&power) {
            k += 1;
            power = power.mul(&p.ideal)?;
        }
        Ok(k)
    }

    /// Search `|x|, |y|, |z| ≤ bound` for a generator. A `None` answer does
    /// not prove that the ideal is non-principal.
    pub fn is_principal_bounded(&self, bound: i64) -> Option<ElementGamma> {
        let n = self.norm().to_i128()?;
        let field = &*self.field;
        for r in 0..=bound {
            for x in -r..=r {
                for y in -r..=r {
                    for z in -r..=r {
                        if x.abs().max(y.abs()).max(z.abs()) != r {
                            continue;
                        }
                        let a = ElementGamma::new(x, y, z);
                        if a.norm(field).abs() == n && self.contains(a) {
                            return Some(a);
                        }
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for IdealHNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..3)
            .map(|i| {
                format!(
                    "[{}, {}, {}]",
                    self.h[(i, 0)],
                    self.h[(i, 1)],
                    self.h[(i, 2)]
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// A prime of `O_Γ` above the rational prime `q`, with ramification index
/// `e` and residue degree `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub ideal: IdealHNF,
    pub q: u64,
    pub e: u32,
    pub f: u32,
    /// An element of `q·P⁻¹` outside `q·O_Γ`.
    anti_uniformizer: ElementGamma,
}

impl PrimeIdeal {
    /// `v_P(α)` via the anti-uniformizer: `α ∈ P` exactly when `α·β/q` is
    /// integral, and each division lowers the valuation by one.
    pub fn element_valuation(&self, alpha: ElementGamma) -> Result<u32> {
        if alpha.is_zero() {
            return Err(Error::InvalidArgument("valuation of zero".into()));
        }
        let field = &*self.ideal.field;
        let n = alpha.norm(field).unsigned_abs();
        let bound = p_adic_valuation(n, self.q) / self.f;
        if bound == 0 {
            return Ok(0);
        }
        // Work modulo q^(bound+1−k) at step k; this cannot change whether
        // the current element lies in P.
        let q = self.q as i128;
        let mut modulus = q
            .checked_pow(bound + 1)
            .ok_or_else(|| Error::InvalidArgument("valuation modulus overflow".into()))?;
        let mut cur = alpha.wide().map(|c| c.rem_euclid(modulus));
        let beta = self.anti_uniformizer.wide();
        let mut v = 0;
        while v < bound {
            let prod = mul_coords(field, cur, beta).map(|c| c.rem_euclid(modulus));
            if prod.iter().any(|c| c % q != 0) {
                break;
            }
            modulus /= q;
            cur = prod.map(|c| (c / q).rem_euclid(modulus));
            v += 1;
        }
        Ok(v)
    }
}

/// `|disc(char poly of γ)| / |disc(O_Γ)|`, the square of `[O_Γ : Z[γ]]`.
fn index_squared(field: &PureCubicField, gamma: ElementGamma) -> Option<u128> {
    let [s1, s2, s3] = gamma.char_poly(field);
    // Discriminant of x³ + b x² + c x + d with b = −s₁, c = s₂, d = −s₃.
    let (b, c, d) = (-s1, s2, -s3);
    let disc = b.checked_mul(b)?.checked_mul(c)?.checked_mul(c)?
        - 4 * c.checked_pow(3)?
        - 4 * b.checked_pow(3)?.checked_mul(d)?
        - 27 * d.checked_mul(d)?
        + 18 * b.checked_mul(c)?.checked_mul(d)?;
    if disc == 0 {
        return None;
    }
    let ratio = disc.checked_div(field.disc)?;
    (ratio * field.disc == disc && ratio > 0).then_some(ratio as u128)
}

/// An element generating `O_Γ ⊗ Z_q` as a ring.
fn q_maximal_generator(field: &PureCubicField, q: u64) -> Result<ElementGamma> {
    let theta = ElementGamma::new(0, 1, 0);
    let theta_prime = ElementGamma::new(-field.omega2[0], -field.omega2[1], field.omega2_den);
    let mut candidates = vec![theta, theta_prime];
    for r in 1..=4i64 {
        for y in -r..=r {
            for z in -r..=r {
                if y.abs().max(z.abs()) == r {
                    candidates.push(ElementGamma::new(0, y, z));
                }
            }
        }
    }
    candidates
        .into_iter()
        .find(|&g| index_squared(field, g).is_some_and(|i| i % q as u128 != 0))
        .ok_or_else(|| {
            Error::InvalidArgument(format!("no {q}-maximal generator found for {field}"))
        })
}

/// Nonzero element of `q·P⁻¹` modulo `q`: solutions `β` of `β·r ≡ 0 (mod q)`
/// for every HNF row `r` of `P`.
fn anti_uniformizer(field: &PureCubicField, p: &IdealHNF, q: u64) -> Result<ElementGamma> {
    let mut rows = Vec::with_capacity(9);
    for r in p.rows() {
        let r: [i128; 3] = std::array::from_fn(|j| (&r[j] % q).to_i128().expect("reduced mod q"));
        let m = regular_matrix(field, r);
        rows.extend(m.iter().map(|row| row.to_vec()));
    }
    let m = IntMatrix::from_rows(&rows);
    let kernel = kernel_mod(&m, &BigInt::from(q));
    let qb = BigInt::from(q);
    for i in 0..kernel.rows() {
        let row = kernel.row(i);
        if row.iter().any(|c| !(c % &qb).is_zero()) {
            let c: Vec<i64> = row
                .iter()
                .map(|c| c.mod_floor(&qb).to_i64().expect("small"))
                .collect();
            return Ok(ElementGamma::new(c[0], c[1], c[2]));
        }
    }
    Err(Error::InvalidArgument(format!(
        "ideal above {q} is not prime"
    )))
}

/// The primes of `O_Γ` above `q` with their `(e, f)`, via Kummer–Dedekind
/// applied to a `q`-maximal generator. Sorted by decreasing `e`, then `f`.
pub fn primes_above(field: &Arc<PureCubicField>, q: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let gamma = q_maximal_generator(field, q)?;
    let [s1, s2, s3] = gamma.char_poly(field);
    let f = Poly::new(q, [-s3, s2, -s1, 1]);
    let qe = BigInt::from(q);
    let mut out = Vec::new();
    for (g, e) in f.factor_small() {
        let coeffs: Vec<i128> = g.coeffs.iter().map(|&c| c as i128).collect();
        let gg = gamma.eval_poly(&coeffs, field);
        let ideal = IdealHNF::from_ideal_generators(
            field.clone(),
            &[
                [qe.clone(), BigInt::zero(), BigInt::zero()],
                gg.coords().map(BigInt::from),
            ],
        )?;
        let fdeg = g.degree().expect("irreducible factor") as u32;
        debug_assert_eq!(ideal.norm(), qe.pow(fdeg));
        let beta = anti_uniformizer(field, &ideal, q)?;
        out.push(PrimeIdeal {
            ideal,
            q,
            e,
            f: fdeg,
            anti_uniformizer: beta,
        });
    }
    out.sort_by_key(|p| (Reverse(p.e), p.f, p.ideal.h.to_rows()));
    Ok(out)
}

/// The principal ideal `(α)` of the given field.
pub fn ideal_of_element(field: &Arc<PureCubicField>, alpha: ElementGamma) -> Result<IdealHNF> {
    IdealHNF::principal(field.clone(), alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_cube_free, primes_up_to};
    use crate::cubicfield::split_in_gamma;
    use proptest::prelude::*;

    fn field(d: u64) -> Arc<PureCubicField> {
        Arc::new(PureCubicField::classify(d).unwrap())
    }

    #[test]
    fn element_norms() {
        let f = field(199);
        assert_eq!(ElementGamma::new(0, 1, 0).norm(&f), 199);
        assert_eq!(ElementGamma::ONE.norm(&f), 1);
        assert_eq!(ElementGamma::rational(5).norm(&f), 125);
        let f = field(12);
        // θ' = ∛(a²b) = ∛18
        assert_eq!(ElementGamma::new(0, 0, 1).norm(&f), 18);
    }

    #[test]
    fn principal_ideals() {
        let f = field(7);
        let one = IdealHNF::principal(f.clone(), ElementGamma::ONE).unwrap();
        assert!(one.is_unit());
        let theta = IdealHNF::principal(f.clone(), ElementGamma::new(0, 1, 0)).unwrap();
        assert_eq!(theta.norm(), BigInt::from(7));
        assert!(IdealHNF::principal(f, ElementGamma::default()).is_err());
    }

    #[test]
    fn primes_above_examples() {
        let f = field(199);
        let ps = primes_above(&f, 3).unwrap();
        let ef: Vec<_> = ps.iter().map(|p| (p.e, p.f)).collect();
        assert_eq!(ef, vec![(2, 1), (1, 1)]);
        let f7 = field(7);
        let ps = primes_above(&f7, 5).unwrap();
        let norms: Vec<_> = ps.iter().map(|p| p.ideal.norm()).collect();
        assert_eq!(norms, vec![BigInt::from(5), BigInt::from(25)]);
        let ps = primes_above(&f7, 7).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].e, ps[0].ideal.norm()), (3, BigInt::from(7)));
        let cube = ps[0].ideal.pow(3).unwrap();
        assert_eq!(cube, IdealHNF::rational(f7, 7).unwrap());
    }

    #[test]
    fn reassembly_and_patterns() {
        for d in (2..50).filter(|&d| is_cube_free(d)) {
            let f = field(d);
            for q in primes_up_to(500) {
                let ps = primes_above(&f, q).unwrap();
                let pattern: Vec<_> = ps.iter().map(|p| (p.e, p.f)).collect();
                assert_eq!(
                    pattern,
                    split_in_gamma(&f, q).unwrap().primes,
                    "d = {d}, q = {q}"
                );
                let mut prod = IdealHNF::unit(f.clone());
                for p in &ps {
                    prod = prod.mul(&p.ideal.pow(p.e).unwrap()).unwrap();
                }
                assert_eq!(
                    prod,
                    IdealHNF::rational(f.clone(), q).unwrap(),
                    "d = {d}, q = {q}"
                );
            }
        }
    }

    #[test]
    fn valuations() {
        let f = field(199);
        let ps = primes_above(&f, 3).unwrap();
        let three = IdealHNF::rational(f.clone(), 3).unwrap();
        assert_eq!(three.valuation(&ps[0]).unwrap(), 2);
        assert_eq!(three.valuation(&ps[1]).unwrap(), 1);
        let p2 = ps[0].ideal.pow(2).unwrap();
        assert_eq!(p2.valuation(&ps[0]).unwrap(), 2);
        let five = IdealHNF::rational(f.clone(), 5).unwrap();
        assert_eq!(five.valuation(&ps[0]).unwrap(), 0);
        assert_eq!(
            ps[0].element_valuation(ElementGamma::rational(9)).unwrap(),
            4
        );
        assert_eq!(
            ps[1].element_valuation(ElementGamma::rational(9)).unwrap(),
            2
        );
    }

    #[test]
    fn principality_search() {
        let f = field(7);
        let one = IdealHNF::unit(f.clone());
        assert_eq!(
            one.is_principal_bounded(2).map(|a| a.norm(&f).abs()),
            Some(1)
        );
        let a = ElementGamma::new(2, -1, 1);
        let i = IdealHNF::principal(f.clone(), a).unwrap();
        let g = i.is_principal_bounded(3).unwrap();
        assert_eq!(IdealHNF::principal(f.clone(), g).unwrap(), i);
    }

    fn small_elem() -> impl Strategy<Value = ElementGamma> {
        (-20i64..=20, -20i64..=20, -20i64..=20)
            .prop_map(|(x, y, z)| ElementGamma::new(x, y, z))
            .prop_filter("nonzero", |a| !a.is_zero())
    }

    fn small_d() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![2u64, 3, 7, 10, 12, 17, 19, 28, 37, 199])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn element_norm_is_multiplicative(d in small_d(), a in small_elem(), b in small_elem()) {
            let f = field(d);
            prop_assert_eq!(a.mul(b, &f).norm(&f), a.norm(&f) * b.norm(&f));
        }

        #[test]
        fn principal_ideal_norm_is_element_norm(d in small_d(), a in small_elem()) {
            let f = field(d);
            let i = IdealHNF::principal(f.clone(), a).unwrap();
            prop_assert_eq!(i.norm(), BigInt::from(a.norm(&f).abs()));
        }

        #[test]
        fn ideal_norms_multiply(d in small_d(), a in small_elem(), b in small_elem(), c in small_elem()) {
            let f = field(d);
            let i = IdealHNF::principal(f.clone(), a).unwrap().add(&IdealHNF::rational(f.clone(), 6).unwrap()).unwrap();
            let j = IdealHNF::principal(f.clone(), b).unwrap().add(&IdealHNF::rational(f.clone(), 10).unwrap()).unwrap();
            let k = IdealHNF::principal(f.clone(), c).unwrap();
            let ij = i.mul(&j).unwrap();
            prop_assert_eq!(ij.norm(), i.norm() * j.norm());
            prop_assert_eq!(&ij, &j.mul(&i).unwrap());
            prop_assert_eq!(ij.mul(&k).unwrap(), i.mul(&j.mul(&k).unwrap()).unwrap());
            prop_assert!(ij.is_subset_of(&i));
            prop_assert!((ij.norm() % i.norm()).is_zero());
        }

        #[test]
        fn valuations_add(d in small_d(), a in small_elem(), b in small_elem()) {
            let f = field(d);
            let i = IdealHNF::principal(f.clone(), a).unwrap();
            let j = IdealHNF::principal(f.clone(), b).unwrap();
            let ij = i.mul(&j).unwrap();
            for q in [2u64, 3, 5, 7] {
                for p in primes_above(&f, q).unwrap() {
                    let (vi, vj) = (i.valuation(&p).unwrap(), j.valuation(&p).unwrap());
                    prop_assert_eq!(ij.valuation(&p).unwrap(), vi + vj);
                    prop_assert_eq!(p.element_valuation(a).unwrap(), vi);
                }
            }
        }
    }
}
