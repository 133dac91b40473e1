//! Dense polynomials over a prime field `F_p`, enough to factor polynomials
//! of degree at most three.

use crate::arith::{inv_mod, mul_mod};

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = i128>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.rem_euclid(p as i128) as u64)
            .collect();
        Self::trimmed(p, coeffs)
    }

    fn trimmed(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn one(p: u64) -> Self {
        Self { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        Self::trimmed(p, vec![0, 1 % p])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::trimmed(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::trimmed(self.p, Vec::new());
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::trimmed(self.p, c)
    }

    /// Euclidean division by a nonzero polynomial.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = inv_mod(d.coeffs[dd], p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = mul_mod(*r.last().unwrap(), lead_inv, p);
            q[k] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[k + i] = (r[k + i] + p - mul_mod(c, dc, p)) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Self::trimmed(p, q), Self::trimmed(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = inv_mod(l, self.p);
                Self::trimmed(
                    self.p,
                    self.coeffs
                        .iter()
                        .map(|&c| mul_mod(c, inv, self.p))
                        .collect(),
                )
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Distinct roots in `F_p`, ascending.
    pub fn roots(&self) -> Vec<u64> {
        let p = self.p;
        if self.degree().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        if p <= 64 {
            return (0..p).filter(|&x| self.eval(x) == 0).collect();
        }
        let x = Self::x(p);
        let split = self.gcd(&x.pow_mod(p as u128, self).sub(&x));
        let mut out = Vec::new();
        split_linear(&split, &mut out);
        out.sort_unstable();
        out
    }

    /// Factorization into monic irreducibles with multiplicities, for
    /// polynomials of degree at most three.
    pub fn factor_small(&self) -> Vec<(Poly, u32)> {
        let d = self.degree().expect("zero polynomial");
        assert!(d <= 3, "factor_small handles degree ≤ 3");
        let mut rest = self.monic();
        let mut out = Vec::new();
        for r in self.roots() {
            let lin = Self::new(self.p, [-(r as i128), 1]);
            let mut m = 0;
            loop {
                let (q, rem) = rest.divrem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            out.push((lin, m));
        }
        if rest.degree().is_some_and(|d| d > 0) {
            out.push((rest, 1));
        }
        out
    }
}

/// Equal-degree splitting of a squarefree product of distinct linear
/// factors (odd `p`).
fn split_linear(f: &Poly, out: &mut Vec<u64>) {
    let p = f.p;
    match f.degree() {
        None | Some(0) => {}
        Some(1) => out.push((p - f.coeffs[0]) % p),
        Some(_) => {
            for delta in 0..p {
                let g = Poly::new(p, [delta as i128, 1]).pow_mod(((p - 1) / 2) as u128, f);
                let h = f.gcd(&g.sub(&Poly::one(p)));
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && dh < f.degree().unwrap() {
                    let (q, _) = f.divrem(&h);
                    split_linear(&h, out);
                    split_linear(&q, out);
                    return;
                }
            }
            unreachable!("a product of distinct linear factors splits for some shift")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;

    #[test]
    fn x_cubed_minus_seven_mod_two() {
        let f = Poly::new(2, [-7, 0, 0, 1]);
        let fac = f.factor_small();
        let degrees: Vec<_> = fac.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect();
        assert_eq!(degrees, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn roots_match_enumeration() {
        for p in primes_up_to(400) {
            for c in [2i128, 3, 5, 7, 10, 199] {
                let f = Poly::new(p, [-c, 0, 0, 1]);
                let brute: Vec<u64> = (0..p).filter(|&x| f.eval(x) == 0).collect();
                assert_eq!(f.roots(), brute, "p = {p}, c = {c}");
            }
        }
    }

    #[test]
    fn repeated_roots() {
        // (x − 3)²(x − 5) over F_101
        let f = Poly::new(101, [-3, 1])
            .mul(&Poly::new(101, [-3, 1]))
            .mul(&Poly::new(101, [-5, 1]));
        let fac = f.factor_small();
        assert_eq!(fac.len(), 2);
        assert_eq!(fac[0], (Poly::new(101, [-3, 1]), 2));
        assert_eq!(fac[1], (Poly::new(101, [-5, 1]), 1));
    }
}
