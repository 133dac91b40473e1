//! Class groups of pure cubic fields from a Minkowski-bound factor base,
//! relations collected from small elements, and Smith normal form; plus the
//! structure decisions for the 3-class group of the normal closure.

pub mod oracle;

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{factor_over, is_prime, isqrt, primes_up_to};
use crate::cubicfield::{split_in_k, PureCubicField};
use crate::error::{Error, Result};
use crate::ideals::{primes_above, ElementGamma, IdealHNF, PrimeIdeal};
use crate::symbols::zeta_norm_test;
use crate::zlinalg::{snf, RowLattice};

/// `(4/π)·(3!/3³)·√|D|`, rounded up: `1/π ≤ 106/333` and `√|D|` is
/// replaced by its integer ceiling.
pub fn minkowski_bound(field: &PureCubicField) -> Ratio<u128> {
    let n = field.disc.unsigned_abs();
    let s = isqrt(n);
    let ceil_sqrt = if s * s == n { s } else { s + 1 };
    Ratio::new(848 * ceil_sqrt, 2997)
}

/// Every prime of `O_Γ` lying over a rational prime up to the Minkowski
/// bound (so in particular every prime ideal of norm below it).
#[derive(Clone, Debug)]
pub struct FactorBase {
    pub field: Arc<PureCubicField>,
    pub bound: Ratio<u128>,
    pub rational_primes: Vec<u64>,
    pub primes: Vec<PrimeIdeal>,
}

impl FactorBase {
    pub fn new(field: &Arc<PureCubicField>) -> Result<Self> {
        let bound = minkowski_bound(field);
        let rational_primes = primes_up_to(bound.to_integer() as u64);
        let mut primes = Vec::new();
        for &q in &rational_primes {
            primes.extend(primes_above(field, q)?);
        }
        Ok(Self {
            field: field.clone(),
            bound,
            rational_primes,
            primes,
        })
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Exponent vector of `(α)`, or `None` if its norm is not smooth.
    pub fn factor_element(&self, alpha: ElementGamma) -> Result<Option<Vec<i64>>> {
        let n = alpha.norm(&self.field).unsigned_abs();
        if n == 0 {
            return Err(Error::InvalidArgument("zero element".into()));
        }
        let Some(rational) = factor_over(n, &self.rational_primes) else {
            return Ok(None);
        };
        let mut row = vec![0i64; self.len()];
        for (q, vq) in rational {
            let mut seen = 0;
            for (i, p) in self.primes.iter().enumerate().filter(|(_, p)| p.q == q) {
                let v = p.element_valuation(alpha)?;
                row[i] = v as i64;
                seen += v * p.f;
            }
            if seen != vq {
                return Err(Error::InvalidArgument(format!(
                    "valuations of {alpha} above {q} do not account for its norm"
                )));
            }
        }
        Ok(Some(row))
    }

    /// `Π Pᵢ^{rᵢ}` for a nonnegative exponent vector.
    pub fn ideal_from_exponents(&self, exps: &[i64]) -> Result<IdealHNF> {
        let mut acc = IdealHNF::unit(self.field.clone());
        for (p, &e) in self.primes.iter().zip(exps) {
            if e < 0 {
                return Err(Error::InvalidArgument("negative exponent".into()));
            }
            if e > 0 {
                acc = acc.mul(&p.ideal.pow(e as u32)?)?;
            }
        }
        Ok(acc)
    }
}

/// A principal ideal `(α)` written over the factor base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub element: ElementGamma,
    pub exponents: Vec<i64>,
}

impl Relation {
    /// Exact check that `Π Pᵢ^{rᵢ} = (α)`.
    pub fn reassembles(&self, fb: &FactorBase) -> Result<bool> {
        let lhs = fb.ideal_from_exponents(&self.exponents)?;
        Ok(lhs == IdealHNF::principal(fb.field.clone(), self.element)?)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationMatrix {
    pub rows: Vec<Relation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    /// Run the oracle when the Minkowski bound is at most 100.
    Auto,
    Always,
    Never,
}

#[derive(Clone, Debug)]
pub struct ClassGroupParams {
    pub seed: u64,
    /// Consecutive admitted relations that must leave the lattice unchanged.
    pub window: usize,
    /// Largest coordinate box searched for relations.
    pub max_radius: i64,
    pub deadline: Option<Instant>,
    pub oracle: OracleMode,
}

impl Default for ClassGroupParams {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            window: 32,
            max_radius: 200,
            deadline: None,
            oracle: OracleMode::Auto,
        }
    }
}

/// Relations from the rational primes, then from primitive elements
/// `x + yω₁ + zω₂` in shells `max(|x|,|y|,|z|) = r` of growing radius, in a
/// seeded order within each shell.
pub struct RelationStream<'a> {
    fb: &'a FactorBase,
    rng: ChaCha8Rng,
    max_radius: i64,
    radius: i64,
    pending: Vec<ElementGamma>,
    rational: std::vec::IntoIter<u64>,
}

impl<'a> RelationStream<'a> {
    pub fn new(fb: &'a FactorBase, seed: u64, max_radius: i64) -> Self {
        Self {
            fb,
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_radius,
            radius: 0,
            pending: Vec::new(),
            rational: fb.rational_primes.clone().into_iter(),
        }
    }

    fn refill(&mut self) -> bool {
        while self.pending.is_empty() {
            self.radius += 1;
            let r = self.radius;
            if r > self.max_radius {
                return false;
            }
            let mut shell = Vec::new();
            for x in -r..=r {
                for y in -r..=r {
                    for z in -r..=r {
                        if x.abs().max(y.abs()).max(z.abs()) != r {
                            continue;
                        }
                        // One of ±α, and only primitive elements.
                        let lead = if x != 0 {
                            x
                        } else if y != 0 {
                            y
                        } else {
                            z
                        };
                        if lead < 0 || num_integer::gcd(num_integer::gcd(x, y), z) != 1 {
                            continue;
                        }
                        shell.push(ElementGamma::new(x, y, z));
                    }
                }
            }
            shell.shuffle(&mut self.rng);
            shell.reverse();
            self.pending = shell;
        }
        true
    }
}

impl Iterator for RelationStream<'_> {
    type Item = Result<Relation>;

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(q) = self.rational.next() {
            let alpha = ElementGamma::rational(q as i64);
            return Some(self.fb.factor_element(alpha).map(|row| Relation {
                element: alpha,
                exponents: row.expect("rational primes are smooth"),
            }));
        }
        loop {
            if self.pending.is_empty() && !self.refill() {
                return None;
            }
            let alpha = self.pending.pop()?;
            if alpha.norm(&self.fb.field) == 0 {
                continue;
            }
            match self.fb.factor_element(alpha) {
                Ok(Some(row)) => {
                    return Some(Ok(Relation {
                        element: alpha,
                        exponents: row,
                    }))
                }
                Ok(None) => continue,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Relations from the rational primes and from every element in boxes up to
/// `params.max_radius`, each checked to reassemble exactly.
pub fn collect_relations(fb: &FactorBase, params: &ClassGroupParams) -> Result<RelationMatrix> {
    let mut rows = Vec::new();
    for rel in RelationStream::new(fb, params.seed, params.max_radius) {
        let rel = rel?;
        if rel.reassembles(fb)? {
            rows.push(rel);
        }
    }
    Ok(RelationMatrix { rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// The class number agrees with the complete enumeration oracle.
    OracleConfirmed,
    /// The relation lattice stopped growing; not independently confirmed.
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupStructure {
    pub d: u64,
    /// Nontrivial elementary divisors, each dividing the next.
    pub divisors: Vec<u64>,
    pub h: u64,
    pub h3: u64,
    /// Elementary divisors of the 3-Sylow subgroup, largest first.
    pub p3_type: Vec<u64>,
    pub certification: Certification,
    pub relations: usize,
    pub factor_base_size: usize,
}

fn three_part(mut n: u64) -> u64 {
    let mut out = 1;
    while n % 3 == 0 {
        n /= 3;
        out *= 3;
    }
    out
}

impl ClassGroupStructure {
    pub fn from_divisors(d: u64, divisors: Vec<u64>, certification: Certification) -> Self {
        let divisors: Vec<u64> = divisors.into_iter().filter(|&x| x > 1).collect();
        let h = divisors.iter().product();
        let mut p3_type: Vec<u64> = divisors
            .iter()
            .map(|&x| three_part(x))
            .filter(|&x| x > 1)
            .collect();
        p3_type.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            d,
            h3: p3_type.iter().product(),
            divisors,
            h,
            p3_type,
            certification,
            relations: 0,
            factor_base_size: 0,
        }
    }
}

fn divisors_of(lat: &RowLattice) -> Result<Vec<u64>> {
    let s = snf(&lat.to_hnf());
    s.divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| {
            d.to_u64()
                .ok_or_else(|| Error::InvalidArgument("class number exceeds 64 bits".into()))
        })
        .collect()
}

/// Class group of `Γ`. Relations are added until the lattice has full rank
/// and `params.window` further relations leave it unchanged. When the
/// oracle runs and disagrees, the search continues with the window doubled.
pub fn class_group(
    field: &Arc<PureCubicField>,
    params: &ClassGroupParams,
) -> Result<ClassGroupStructure> {
    let fb = FactorBase::new(field)?;
    let run_oracle = match params.oracle {
        OracleMode::Always => true,
        OracleMode::Never => false,
        OracleMode::Auto => fb.bound <= Ratio::from_integer(100),
    };
    let oracle_h = if run_oracle {
        oracle::class_number(&fb, &oracle::OracleParams::default())?.map(|r| r.h)
    } else {
        None
    };
    if fb.is_empty() {
        let cert = if oracle_h == Some(1) {
            Certification::OracleConfirmed
        } else {
            Certification::Heuristic
        };
        return Ok(ClassGroupStructure::from_divisors(
            field.d,
            Vec::new(),
            cert,
        ));
    }
    let out_of_time = || params.deadline.is_some_and(|t| Instant::now() >= t);
    let mut lat = RowLattice::new(fb.len());
    let mut window = params.window.max(1);
    let mut stable = 0;
    let mut admitted = 0;
    let mut stream = RelationStream::new(&fb, params.seed, params.max_radius);
    loop {
        let Some(rel) = stream.next() else {
            return Err(Error::BudgetExhausted(format!(
                "relation search radius {} exhausted for {field}",
                params.max_radius
            )));
        };
        if out_of_time() {
            return Err(Error::BudgetExhausted(format!(
                "deadline reached for {field}"
            )));
        }
        let rel = rel?;
        if !rel.reassembles(&fb)? {
            return Err(Error::InvalidArgument(format!(
                "relation for {} does not reassemble",
                rel.element
            )));
        }
        admitted += 1;
        let row: Vec<BigInt> = rel.exponents.iter().map(|&e| BigInt::from(e)).collect();
        let grew = lat.insert(&row);
        if !lat.is_full_rank() {
            continue;
        }
        stable = if grew { 0 } else { stable + 1 };
        if stable < window {
            continue;
        }
        let divisors = divisors_of(&lat)?;
        let h: u64 = divisors.iter().product();
        let certification = match oracle_h {
            Some(oh) if oh == h => Certification::OracleConfirmed,
            Some(oh) if h % oh == 0 => {
                window *= 2;
                stable = 0;
                continue;
            }
            Some(oh) => {
                return Err(Error::InvalidArgument(format!(
                    "oracle class number {oh} does not divide relation class number {h}"
                )))
            }
            None => Certification::Heuristic,
        };
        let mut out = ClassGroupStructure::from_divisors(field.d, divisors, certification);
        out.relations = admitted;
        out.factor_base_size = fb.len();
        return Ok(out);
    }
}

/// Elementary divisors of `C_{k,3}` for `k = Q(∛p, ζ₃)`, where decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KStructureReport {
    pub p: u64,
    pub h_gamma3: u64,
    pub u: u8,
    pub h_k3: u64,
    /// `None` outside the two classified cases.
    pub k_type: Option<Vec<u64>>,
    /// `h_k/27` with `h_k = (u/3)·h_Γ²`, when integral.
    pub h_over_27: Option<u128>,
    /// Whether `3 ∤ h_k/27`.
    pub three_free: bool,
}

/// Structure of `C_{k,3}` from `C_{Γ,3}` and the unit index `u`, via
/// `h_{k,3} = (u/3)·h_{Γ,3}²`.
pub fn decide_k_structure(cg: &ClassGroupStructure, u: u8) -> Result<KStructureReport> {
    let p = cg.d;
    if !is_prime(p) || p % 9 != 1 {
        return Err(Error::Precondition(format!("{p} is not a prime ≡ 1 mod 9")));
    }
    if u != 1 && u != 3 {
        return Err(Error::InvalidArgument(format!(
            "unit index must be 1 or 3, got {u}"
        )));
    }
    let num = u as u128 * (cg.h3 as u128).pow(2);
    if num % 3 != 0 {
        return Err(Error::Precondition(format!(
            "(u/3)·h3² is not integral for h3 = {}",
            cg.h3
        )));
    }
    let h_k3 =
        u64::try_from(num / 3).map_err(|_| Error::InvalidArgument("h_k3 overflow".into()))?;
    let k_type = match (cg.p3_type.as_slice(), u) {
        ([9], 1) => Some(vec![9, 3]),
        ([3, 3], 1) => Some(vec![3, 3, 3]),
        _ => None,
    };
    let hk_num = u as u128 * (cg.h as u128).pow(2);
    let h_over_27 = (hk_num % 81 == 0).then_some(hk_num / 81);
    let three_free = h_k3 == 27 && h_over_27.is_some_and(|h| h % 3 != 0);
    Ok(KStructureReport {
        p,
        h_gamma3: cg.h3,
        u,
        h_k3,
        k_type,
        h_over_27,
        three_free,
    })
}

/// `|C_{k,3}^{(σ)}| = 3^{t−2+q*}` for `k = Q(∛p, ζ₃)`: `t` counts the primes
/// of `k₀` ramified in `k` and `q* = 1` exactly when `ζ₃` is a norm.
pub fn ambiguous_order(p: u64) -> Result<u64> {
    if !is_prime(p) || p % 3 != 1 {
        return Err(Error::InvalidArgument(format!(
            "{p} is not a prime ≡ 1 mod 3"
        )));
    }
    let field = PureCubicField::classify(p)?;
    let lambda_ramifies = split_in_k(&field, 3)?.primes.iter().any(|&(e, _)| e == 6);
    let t = 2 + u32::from(lambda_ramifies);
    let q_star = u32::from(zeta_norm_test(p)?);
    Ok(3u64.pow(t - 2 + q_star))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: u64) -> Arc<PureCubicField> {
        Arc::new(PureCubicField::classify(d).unwrap())
    }

    #[test]
    fn minkowski_examples() {
        let b = minkowski_bound(&field(199));
        assert_eq!(b.ceil().to_integer(), 98);
        let exact = 8.0 / (9.0 * std::f64::consts::PI) * (3.0f64 * 199.0 * 199.0).sqrt();
        assert!(b.to_f64().unwrap() >= exact && b.to_f64().unwrap() - exact < 0.1);
        let b2 = minkowski_bound(&field(2));
        let exact2 = 8.0 / (9.0 * std::f64::consts::PI) * 108f64.sqrt();
        assert!(b2.to_f64().unwrap() >= exact2 && b2.to_f64().unwrap() < exact2 + 0.3);
        assert!(minkowski_bound(&field(7)) > minkowski_bound(&field(2)));
    }

    #[test]
    fn rational_relations_come_first() {
        let fb = FactorBase::new(&field(7)).unwrap();
        let rel = RelationStream::new(&fb, 1, 3).next().unwrap().unwrap();
        assert_eq!(rel.element, ElementGamma::rational(2));
        assert!(rel.reassembles(&fb).unwrap());
    }

    #[test]
    fn theta_relation_for_d2() {
        let fb = FactorBase::new(&field(2)).unwrap();
        let theta = ElementGamma::new(0, 1, 0);
        let row = fb.factor_element(theta).unwrap().unwrap();
        let support: Vec<u64> = fb
            .primes
            .iter()
            .zip(&row)
            .filter(|(_, &e)| e != 0)
            .map(|(p, _)| p.q)
            .collect();
        assert_eq!(support, vec![2]);
        assert!(Relation {
            element: theta,
            exponents: row
        }
        .reassembles(&fb)
        .unwrap());
    }

    #[test]
    fn small_class_numbers() {
        for (d, h) in [(2, 1), (3, 1), (5, 1), (7, 3)] {
            let cg = class_group(&field(d), &ClassGroupParams::default()).unwrap();
            assert_eq!(cg.h, h, "d = {d}");
            assert_eq!(cg.certification, Certification::OracleConfirmed, "d = {d}");
        }
    }

    #[test]
    fn structure_decisions() {
        let nine = ClassGroupStructure::from_divisors(199, vec![9], Certification::Heuristic);
        let r = decide_k_structure(&nine, 1).unwrap();
        assert_eq!((r.h_k3, r.k_type.clone()), (27, Some(vec![9, 3])));
        let r = decide_k_structure(&nine, 3).unwrap();
        assert_eq!((r.h_k3, r.k_type), (81, None));
        let three_three =
            ClassGroupStructure::from_divisors(199, vec![3, 3], Certification::Heuristic);
        assert_eq!(
            decide_k_structure(&three_three, 1).unwrap().k_type,
            Some(vec![3, 3, 3])
        );
        let wrong = ClassGroupStructure::from_divisors(7, vec![3], Certification::Heuristic);
        assert!(decide_k_structure(&wrong, 1).is_err());
        assert!(decide_k_structure(&nine, 2).is_err());
    }

    #[test]
    fn ambiguous_order_examples() {
        assert_eq!(ambiguous_order(199), Ok(3));
        assert_eq!(ambiguous_order(7), Ok(3));
        assert!(ambiguous_order(5).is_err());
    }
}
