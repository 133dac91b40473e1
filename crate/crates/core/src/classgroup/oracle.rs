//! Independent class number computation by enumeration.
//!
//! Every class contains an integral ideal of norm at most the Minkowski
//! bound. Two such ideals `I`, `J` are in the same class exactly when
//! `I·J*` is principal, where `J* = N(J)·J⁻¹` is built from the other primes
//! over the same rational primes.
//!
//! Both the fundamental unit and principality are decided by exact lattice
//! point enumeration in embedding space `(v₀, Re v₁, Im v₁)`, where `v₀` is
//! the real embedding and `v₁` a complex one, so `|N(α)| = v₀·|v₁|²`.
//! Given the fundamental unit `ε`, a generator of an ideal of norm `N` can be
//! chosen with `v₀ ∈ [N^{1/3}, N^{1/3}ε)` and `|v₁| ≤ N^{1/3}`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::FactorBase;
use crate::cubicfield::PureCubicField;
use crate::error::{Error, Result};
use crate::ideals::{ElementGamma, IdealHNF};

#[derive(Clone, Debug)]
pub struct OracleParams {
    /// Give up when a single enumeration would visit more points.
    pub max_points: u64,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self {
            max_points: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub h: u64,
    /// Fundamental unit with real embedding above 1.
    pub unit: ElementGamma,
    /// Number of integral ideals of norm up to the bound that were sorted
    /// into classes.
    pub ideals: usize,
}

/// Rows: real embedding, real and imaginary part of a complex embedding;
/// column `j` is the basis element `ω_j`.
fn embedding_matrix(field: &PureCubicField) -> [[f64; 3]; 3] {
    let r = (field.d as f64).cbrt();
    let b = field.b as f64;
    let s3 = 3f64.sqrt() / 2.0;
    // θ ↦ r, r·ζ ; θ' = θ²/b ↦ r²/b, r²ζ²/b
    let theta = [r, -r / 2.0, r * s3];
    let theta_p = [r * r / b, -r * r / (2.0 * b), -r * r * s3 / b];
    let one = [1.0, 1.0, 0.0];
    let den = field.omega2_den as f64;
    let w = field.omega2.map(|c| c as f64);
    let omega2: [f64; 3] =
        std::array::from_fn(|i| (w[0] * one[i] + w[1] * theta[i] + w[2] * theta_p[i]) / den);
    std::array::from_fn(|i| [one[i], theta[i], omega2[i]])
}

fn det3f(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn invert3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = det3f(m);
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    std::array::from_fn(|i| std::array::from_fn(|j| c(j, i) / det))
}

/// Narrow `t` to the `c` with `lo ≤ offset + slope·c ≤ hi`.
fn cut(lo: f64, hi: f64, offset: f64, slope: f64, t: &mut (f64, f64)) {
    if slope.abs() < 1e-12 {
        if offset < lo || offset > hi {
            *t = (1.0, 0.0);
        }
        return;
    }
    let (a, b) = ((lo - offset) / slope, (hi - offset) / slope);
    t.0 = t.0.max(a.min(b));
    t.1 = t.1.min(a.max(b));
}

/// Range of `c₁` over `{(c₁, c₂) : lo_j ≤ off_j + u_j c₁ + w_j c₂ ≤ hi_j}`,
/// from the vertices of the polygon.
fn polygon_range(
    lo: &[f64; 3],
    hi: &[f64; 3],
    off: &[f64; 3],
    u: &[f64; 3],
    w: &[f64; 3],
) -> Option<(f64, f64)> {
    let lines: Vec<(usize, f64)> = (0..3).flat_map(|j| [(j, lo[j]), (j, hi[j])]).collect();
    let mut range: Option<(f64, f64)> = None;
    for (i, &(j, r)) in lines.iter().enumerate() {
        for &(k, s) in &lines[i + 1..] {
            if j == k {
                continue;
            }
            let det = u[j] * w[k] - u[k] * w[j];
            if det.abs() < 1e-12 {
                continue;
            }
            let (bj, bk) = (r - off[j], s - off[k]);
            let c1 = (bj * w[k] - bk * w[j]) / det;
            let c2 = (u[j] * bk - u[k] * bj) / det;
            let inside = (0..3).all(|l| {
                let v = off[l] + u[l] * c1 + w[l] * c2;
                let tol = 1e-9 * (1.0 + lo[l].abs().max(hi[l].abs()));
                v >= lo[l] - tol && v <= hi[l] + tol
            });
            if inside {
                range = Some(range.map_or((c1, c1), |(a, b)| (a.min(c1), b.max(c1))));
            }
        }
    }
    range
}

/// LLL reduction (δ = 3/4) of integer rows under the metric given by
/// `embed`; only unimodular row operations are applied.
fn lll(rows: &mut [[i128; 3]; 3], embed: impl Fn(&[i128; 3]) -> [f64; 3]) {
    let dot = |x: &[f64; 3], y: &[f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let gram_schmidt = |rows: &[[i128; 3]; 3]| {
        let b: [[f64; 3]; 3] = std::array::from_fn(|i| embed(&rows[i]));
        let mut star = b;
        let mut mu = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..i {
                mu[i][j] = dot(&b[i], &star[j]) / dot(&star[j], &star[j]);
                for k in 0..3 {
                    star[i][k] -= mu[i][j] * star[j][k];
                }
            }
        }
        (star, mu)
    };
    let mut k = 1;
    let mut steps = 0;
    while k < 3 && steps < 1000 {
        steps += 1;
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(rows);
            let q = mu[k][j].round();
            if q != 0.0 {
                let q = q as i128;
                for c in 0..3 {
                    rows[k][c] -= q * rows[j][c];
                }
            }
        }
        let (star, mu) = gram_schmidt(rows);
        if dot(&star[k], &star[k])
            >= (0.75 - mu[k][k - 1] * mu[k][k - 1]) * dot(&star[k - 1], &star[k - 1])
        {
            k += 1;
        } else {
            rows.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

/// Calls `f` on every point `Σ cᵢ·rowᵢ` of the lattice spanned by the rows
/// (in `ω` coordinates) whose embeddings lie in the box `[lo, hi]`, plus
/// possibly a few just outside. Stops early when `f` returns `true`, and
/// returns whether it did.
fn for_each_point(
    field: &PureCubicField,
    rows: &[[i128; 3]; 3],
    lo: [f64; 3],
    hi: [f64; 3],
    max_points: u64,
    mut f: impl FnMut([i128; 3]) -> bool,
) -> Result<bool> {
    let emb = embedding_matrix(field);
    let embed = |r: &[i128; 3]| -> [f64; 3] {
        std::array::from_fn(|j| (0..3).map(|k| emb[j][k] * r[k] as f64).sum())
    };
    // reduce against the box scaled to unit size, so that ranges are tight
    let scale: [f64; 3] = std::array::from_fn(|j| 1.0 / (hi[j] - lo[j]));
    let mut rows = *rows;
    lll(&mut rows, |r| {
        let v = embed(r);
        std::array::from_fn(|j| v[j] * scale[j])
    });
    // a[j][i]: embedding j of row i
    let cols: [[f64; 3]; 3] = std::array::from_fn(|i| embed(&rows[i]));
    let a: [[f64; 3]; 3] = std::array::from_fn(|j| std::array::from_fn(|i| cols[i][j]));
    let volume = (0..3).map(|j| hi[j] - lo[j]).product::<f64>() / det3f(&a).abs();
    if volume > max_points as f64 {
        return Err(Error::BudgetExhausted(format!(
            "enumeration would visit about {volume:.0} points"
        )));
    }
    let ainv = invert3(&a);
    let c0_range = (0..3).fold((0.0, 0.0), |(mn, mx), j| {
        let (x, y) = (ainv[0][j] * lo[j], ainv[0][j] * hi[j]);
        (mn + x.min(y), mx + x.max(y))
    });
    let col = |i: usize| [a[0][i], a[1][i], a[2][i]];
    let (u, w) = (col(1), col(2));
    let ints = |(x, y): (f64, f64)| (x - 1e-6).floor() as i128..=(y + 1e-6).ceil() as i128;
    for c0 in ints(c0_range) {
        let off0: [f64; 3] = std::array::from_fn(|j| a[j][0] * c0 as f64);
        let Some(r1) = polygon_range(&lo, &hi, &off0, &u, &w) else {
            continue;
        };
        for c1 in ints(r1) {
            let off: [f64; 3] = std::array::from_fn(|j| off0[j] + u[j] * c1 as f64);
            let mut t = (f64::NEG_INFINITY, f64::INFINITY);
            for j in 0..3 {
                cut(lo[j], hi[j], off[j], w[j], &mut t);
            }
            if t.0 > t.1 + 1e-6 {
                continue;
            }
            for c2 in ints(t) {
                if f(std::array::from_fn(|k| {
                    c0 * rows[0][k] + c1 * rows[1][k] + c2 * rows[2][k]
                })) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Largest coordinate for which the `i128` norm cannot overflow and the
/// floating point embeddings keep enough precision to bound the search.
fn safe_coordinate(field: &PureCubicField) -> i128 {
    ((1e12 / field.d as f64) as i128).min(10_000_000_000)
}

/// The fundamental unit `ε` with `ε > 1` in the real embedding, and
/// `log ε`. Walks regions `v₀ ∈ [2^k, 2^{k+1}]`, `|Re v₁|, |Im v₁| ≤ 2^{−k/2}`
/// upwards; every unit `1 < v₀ ≤ 2^{k+1}` lies in one of the first `k + 1`,
/// so the first one found is fundamental. `None` when coordinates would
/// become too large before a unit is found.
pub fn find_unit(field: &PureCubicField) -> Option<(ElementGamma, f64)> {
    let emb = embedding_matrix(field);
    let identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let limit = safe_coordinate(field);
    let mut best: Option<(ElementGamma, f64)> = None;
    for k in 0..200 {
        let t = 2f64.powi(k);
        let c = (1.0 + 1e-6) / t.sqrt();
        let lo = [t * (1.0 - 1e-9), -c, -c];
        let hi = [2.0 * t * (1.0 + 1e-9), c, c];
        let mut overflow = false;
        for_each_point(field, &identity, lo, hi, u64::MAX, |v| {
            if v.iter().any(|x| x.abs() > limit) {
                overflow = true;
                return true;
            }
            let Some(x) = ElementGamma::from_wide(v) else {
                return false;
            };
            let v0: f64 = (0..3).map(|j| emb[0][j] * v[j] as f64).sum();
            if v0 > 1.0 + 1e-9 && x.norm(field).abs() == 1 && best.is_none_or(|(_, l)| v0.ln() < l)
            {
                best = Some((x, v0.ln()));
            }
            false
        })
        .ok()?;
        if best.is_some() || overflow {
            return best;
        }
    }
    None
}

/// Complete principality test given `log ε` for the fundamental unit, or
/// any unit of infinite order. `Ok(None)` means the ideal is not principal.
pub fn principal_generator(
    ideal: &IdealHNF,
    unit_log: f64,
    max_points: u64,
) -> Result<Option<ElementGamma>> {
    let field = ideal.field().clone();
    let n = ideal
        .norm()
        .to_i128()
        .ok_or_else(|| Error::InvalidArgument("ideal norm too large for the oracle".into()))?;
    let s = (n as f64).cbrt();
    let margin = 1e-7;
    let lo = [s * (1.0 - margin), -s * (1.0 + margin), -s * (1.0 + margin)];
    let hi = [
        s * unit_log.exp() * (1.0 + margin),
        s * (1.0 + margin),
        s * (1.0 + margin),
    ];
    let h = ideal.hnf();
    let rows: [[i128; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| h[(i, j)].to_i128().expect("small ideal entries"))
    });
    let limit = safe_coordinate(&field);
    let mut found = None;
    let mut overflow = false;
    for_each_point(&field, &rows, lo, hi, max_points, |v| {
        if v.iter().any(|x| x.abs() > limit) {
            overflow = true;
            return true;
        }
        let x = ElementGamma::from_wide(v).expect("within safe range");
        if x.norm(&field).abs() == n {
            found = Some(x);
            return true;
        }
        false
    })?;
    if overflow {
        return Err(Error::BudgetExhausted(
            "generator coordinates exceed the exact range".into(),
        ));
    }
    Ok(found)
}

/// All nonnegative exponent vectors over the factor base with norm at most
/// `bound`, ordered by norm.
fn small_ideals(fb: &FactorBase, bound: u128) -> Vec<(u128, Vec<i64>)> {
    let norms: Vec<u128> = fb.primes.iter().map(|p| (p.q as u128).pow(p.f)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; fb.len()];
    fn rec(
        i: usize,
        norm: u128,
        bound: u128,
        norms: &[u128],
        cur: &mut Vec<i64>,
        out: &mut Vec<(u128, Vec<i64>)>,
    ) {
        if i == norms.len() {
            out.push((norm, cur.clone()));
            return;
        }
        let mut nn = norm;
        let mut e = 0;
        loop {
            cur[i] = e;
            rec(i + 1, nn, bound, norms, cur, out);
            nn *= norms[i];
            if nn > bound {
                break;
            }
            e += 1;
        }
        cur[i] = 0;
    }
    rec(0, 1, bound, &norms, &mut cur, &mut out);
    out.sort();
    out
}

/// Exponent vector of `J* = N(J)·J⁻¹`.
fn conjugate_exponents(fb: &FactorBase, j: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; j.len()];
    for (i, &a) in j.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let q = fb.primes[i].q;
        for (k, p) in fb.primes.iter().enumerate().filter(|(_, p)| p.q == q) {
            out[k] += a * (p.e as i64 - i64::from(k == i));
        }
    }
    out
}

/// Class number by sorting all integral ideals of norm up to the Minkowski
/// bound into classes. `Ok(None)` when no unit was found to make the
/// principality test complete.
pub fn class_number(fb: &FactorBase, params: &OracleParams) -> Result<Option<OracleReport>> {
    let field = &fb.field;
    let Some((unit, unit_log)) = find_unit(field) else {
        return Ok(None);
    };
    let ideals = small_ideals(fb, fb.bound.to_integer());
    let mut reps: Vec<Vec<i64>> = Vec::new();
    for (_, v) in &ideals {
        let mut found = false;
        for r in &reps {
            let star = conjugate_exponents(fb, r);
            let prod: Vec<i64> = v.iter().zip(&star).map(|(a, b)| a + b).collect();
            let ideal = fb.ideal_from_exponents(&prod)?;
            match principal_generator(&ideal, unit_log, params.max_points) {
                Ok(Some(_)) => {
                    found = true;
                    break;
                }
                Ok(None) => {}
                Err(Error::BudgetExhausted(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        if !found {
            reps.push(v.clone());
        }
    }
    Ok(Some(OracleReport {
        h: reps.len() as u64,
        unit,
        ideals: ideals.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn fb(d: u64) -> FactorBase {
        FactorBase::new(&Arc::new(PureCubicField::classify(d).unwrap())).unwrap()
    }

    #[test]
    fn embeddings_respect_norms() {
        for d in [2u64, 7, 10, 12, 199] {
            let f = PureCubicField::classify(d).unwrap();
            let m = embedding_matrix(&f);
            for a in [
                ElementGamma::new(1, 2, 3),
                ElementGamma::new(-4, 0, 5),
                ElementGamma::new(0, 1, 1),
            ] {
                let c = a.coords().map(|x| x as f64);
                let v: [f64; 3] = std::array::from_fn(|i| (0..3).map(|j| m[i][j] * c[j]).sum());
                let norm = v[0] * (v[1] * v[1] + v[2] * v[2]);
                let exact = a.norm(&f) as f64;
                assert!(
                    (norm - exact).abs() <= 1e-6 * exact.abs().max(1.0),
                    "d = {d}, {a}"
                );
            }
        }
    }

    #[test]
    fn units_are_fundamental() {
        // no unit with a smaller logarithm in a coordinate box
        for d in [2u64, 3, 7, 10, 12, 19] {
            let f = PureCubicField::classify(d).unwrap();
            let (u, log) = find_unit(&f).unwrap();
            assert_eq!(u.norm(&f).abs(), 1);
            let m = embedding_matrix(&f);
            let r = 12;
            for x in -r..=r {
                for y in -r..=r {
                    for z in -r..=r {
                        let a = ElementGamma::new(x, y, z);
                        if a.norm(&f).abs() != 1 {
                            continue;
                        }
                        let l: f64 = (0..3)
                            .map(|j| m[0][j] * a.coords()[j] as f64)
                            .sum::<f64>()
                            .abs()
                            .ln()
                            .abs();
                        assert!(l < 1e-6 || l >= log - 1e-9, "d = {d}: {a} beats {u}");
                    }
                }
            }
        }
    }

    #[test]
    fn principal_ideals_are_recognized() {
        let b = fb(7);
        let (_, log) = find_unit(&b.field).unwrap();
        let alpha = ElementGamma::new(3, -2, 5);
        let i = IdealHNF::principal(b.field.clone(), alpha).unwrap();
        let g = principal_generator(&i, log, 1_000_000).unwrap().unwrap();
        assert_eq!(IdealHNF::principal(b.field.clone(), g).unwrap(), i);
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [(2u64, 1u64), (3, 1), (5, 1), (7, 3)] {
            let r = class_number(&fb(d), &OracleParams::default())
                .unwrap()
                .unwrap();
            assert_eq!(r.h, h, "d = {d}");
        }
    }
}
