//! Exhaustive check of structural claims about a 3-class group of type
//! `(9, 3)` carrying an action of `S₃ = ⟨σ, τ⟩`.
//!
//! Every pair of endomorphisms `(σ, τ)` of `Z/9 × Z/3` is tested against a
//! set of toggleable constraints; the claims are then evaluated in each
//! consistent model and, for the frame claims, in each frame `(X, Y, W)`
//! with `X` of order 9 fixed by `τ`, `Y = σX`, `W = σY`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// `(x mod 9, y mod 3)`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Elem93 {
    pub x: u8,
    pub y: u8,
}

impl Elem93 {
    pub const ZERO: Self = Self { x: 0, y: 0 };
    pub const E1: Self = Self { x: 1, y: 0 };
    pub const E2: Self = Self { x: 0, y: 1 };

    pub fn new(x: i64, y: i64) -> Self {
        Self {
            x: x.rem_euclid(9) as u8,
            y: y.rem_euclid(3) as u8,
        }
    }

    pub fn all() -> impl Iterator<Item = Elem93> {
        (0..27).map(Self::from_index)
    }

    fn index(self) -> usize {
        self.x as usize * 3 + self.y as usize
    }

    fn from_index(i: usize) -> Self {
        Self {
            x: (i / 3) as u8,
            y: (i % 3) as u8,
        }
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(self.x as i64 * k, self.y as i64 * k)
    }

    pub fn order(self) -> u8 {
        (1..=9)
            .find(|&k| self.scale(k as i64) == Self::ZERO)
            .expect("exponent divides 9")
    }
}

impl Add for Elem93 {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::new(self.x as i64 + o.x as i64, self.y as i64 + o.y as i64)
    }
}

impl Sub for Elem93 {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Elem93 {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl fmt::Display for Elem93 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A subgroup (or any subset) of `Z/9 × Z/3`, as a bitmask over the 27
/// elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup(u32);

impl Subgroup {
    pub const TRIVIAL: Self = Self(1);
    pub const WHOLE: Self = Self((1 << 27) - 1);

    pub fn from_predicate(f: impl Fn(Elem93) -> bool) -> Self {
        Self(
            Elem93::all()
                .filter(|&e| f(e))
                .fold(0, |m, e| m | 1 << e.index()),
        )
    }

    pub fn generated_by(gens: &[Elem93]) -> Self {
        let mut mask = Self::TRIVIAL.0;
        loop {
            let mut next = mask;
            for e in Self(mask).elements() {
                for &g in gens {
                    next |= 1 << (e + g).index();
                }
            }
            if next == mask {
                return Self(mask);
            }
            mask = next;
        }
    }

    pub fn contains(self, e: Elem93) -> bool {
        self.0 >> e.index() & 1 == 1
    }

    pub fn order(self) -> u32 {
        self.0.count_ones()
    }

    pub fn elements(self) -> impl Iterator<Item = Elem93> {
        Elem93::all().filter(move |&e| self.contains(e))
    }

    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn intersection(self, o: Self) -> Self {
        Self(self.0 & o.0)
    }

    pub fn sum(self, o: Self) -> Self {
        let gens: Vec<Elem93> = self.elements().chain(o.elements()).collect();
        Self::generated_by(&gens)
    }

    pub fn is_cyclic(self) -> bool {
        self.elements().any(|e| e.order() as u32 == self.order())
    }

    /// Every nonidentity element has order 3.
    pub fn is_elementary(self) -> bool {
        self.elements().all(|e| e.order() <= 3)
    }
}

/// An endomorphism given by the images of `e₁ = (1,0)` and `e₂ = (0,1)`;
/// well defined because `3·image(e₂) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endo93 {
    pub e1: Elem93,
    pub e2: Elem93,
}

impl Endo93 {
    pub const IDENTITY: Self = Self {
        e1: Elem93::E1,
        e2: Elem93::E2,
    };

    pub fn new(e1: Elem93, e2: Elem93) -> Option<Self> {
        (e2.x % 3 == 0).then_some(Self { e1, e2 })
    }

    /// All 243 endomorphisms in a fixed order.
    pub fn all() -> Vec<Endo93> {
        let mut out = Vec::with_capacity(243);
        for e1 in Elem93::all() {
            for e2 in Elem93::all().filter(|e| e.x % 3 == 0) {
                out.push(Self { e1, e2 });
            }
        }
        out
    }

    pub fn apply(self, v: Elem93) -> Elem93 {
        self.e1.scale(v.x as i64) + self.e2.scale(v.y as i64)
    }

    /// `self ∘ o`.
    pub fn compose(self, o: Self) -> Self {
        Self {
            e1: self.apply(o.e1),
            e2: self.apply(o.e2),
        }
    }

    pub fn plus(self, o: Self) -> Self {
        Self {
            e1: self.e1 + o.e1,
            e2: self.e2 + o.e2,
        }
    }

    pub fn minus(self, o: Self) -> Self {
        Self {
            e1: self.e1 - o.e1,
            e2: self.e2 - o.e2,
        }
    }

    pub fn pow(self, k: u32) -> Self {
        (0..k).fold(Self::IDENTITY, |acc, _| acc.compose(self))
    }

    pub fn kernel(self) -> Subgroup {
        Subgroup::from_predicate(|e| self.apply(e) == Elem93::ZERO)
    }

    pub fn image(self) -> Subgroup {
        Subgroup::generated_by(&[self.e1, self.e2])
    }

    pub fn is_automorphism(self) -> bool {
        self.kernel() == Subgroup::TRIVIAL
    }
}

impl fmt::Display for Endo93 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e1↦{}, e2↦{}", self.e1, self.e2)
    }
}

/// Which consistency constraints a model must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraints {
    /// `σ³ = id`, `τ² = id`, both automorphisms.
    pub orders: bool,
    /// `τστ = σ²`.
    pub dihedral: bool,
    /// `1 + σ + σ² = 0`.
    pub norm_kills: bool,
    /// `|ker(σ − 1)| = 3`.
    pub ambiguous_order: bool,
    /// `C⁺` cyclic of order 9 and `|C⁻| = 3`.
    pub eigen_orders: bool,
    /// `C^σ ⊆ C⁺` and `C^σ ∩ C⁻` trivial.
    pub ambiguous_plus: bool,
}

impl Default for Constraints {
    fn default() -> Self {
        Self {
            orders: true,
            dihedral: true,
            norm_kills: true,
            ambiguous_order: true,
            eigen_orders: true,
            ambiguous_plus: true,
        }
    }
}

impl Constraints {
    pub fn none() -> Self {
        Self {
            orders: false,
            dihedral: false,
            norm_kills: false,
            ambiguous_order: false,
            eigen_orders: false,
            ambiguous_plus: false,
        }
    }

    /// Check on the generators via composition of endomorphisms.
    pub fn admit(&self, m: &GaloisModel) -> bool {
        let (s, t) = (m.sigma, m.tau);
        let id = Endo93::IDENTITY;
        let zero = id.minus(id);
        (!self.orders
            || (s.pow(3) == id && t.pow(2) == id && s.is_automorphism() && t.is_automorphism()))
            && (!self.dihedral || t.compose(s).compose(t) == s.pow(2))
            && (!self.norm_kills || id.plus(s).plus(s.pow(2)) == zero)
            && (!self.ambiguous_order || m.csigma.order() == 3)
            && (!self.eigen_orders
                || (m.cplus.order() == 9 && m.cplus.is_cyclic() && m.cminus.order() == 3))
            && (!self.ambiguous_plus
                || (m.csigma.is_subset_of(m.cplus)
                    && m.csigma.intersection(m.cminus) == Subgroup::TRIVIAL))
    }

    /// Independent check element by element, without composing maps.
    pub fn verify_elementwise(&self, m: &GaloisModel) -> bool {
        let (s, t) = (|e| m.sigma.apply(e), |e| m.tau.apply(e));
        let bijective = |f: &dyn Fn(Elem93) -> Elem93| {
            let mut seen = [false; 27];
            Elem93::all().all(|e| !std::mem::replace(&mut seen[f(e).index()], true))
        };
        let count = |f: &dyn Fn(Elem93) -> bool| Elem93::all().filter(|&e| f(e)).count();
        let fixed_t = |e: Elem93| t(e) == e;
        let neg_t = |e: Elem93| t(e) == -e;
        let fixed_s = |e: Elem93| s(e) == e;
        let max_order =
            |f: &dyn Fn(Elem93) -> bool| Elem93::all().filter(|&e| f(e)).map(Elem93::order).max();
        Elem93::all().all(|e| {
            (!self.orders || (s(s(s(e))) == e && t(t(e)) == e))
                && (!self.dihedral || t(s(t(e))) == s(s(e)))
                && (!self.norm_kills || e + s(e) + s(s(e)) == Elem93::ZERO)
                && (!self.ambiguous_plus
                    || !fixed_s(e)
                    || (fixed_t(e) && (!neg_t(e) || e == Elem93::ZERO)))
        }) && (!self.orders || (bijective(&s) && bijective(&t)))
            && (!self.ambiguous_order || count(&fixed_s) == 3)
            && (!self.eigen_orders
                || (count(&fixed_t) == 9 && max_order(&fixed_t) == Some(9) && count(&neg_t) == 3))
    }
}

/// A pair of actions with the derived subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaloisModel {
    pub sigma: Endo93,
    pub tau: Endo93,
    /// `ker(τ − 1)`
    pub cplus: Subgroup,
    /// `ker(τ + 1)`
    pub cminus: Subgroup,
    /// `ker(σ − 1)`, the ambiguous classes.
    pub csigma: Subgroup,
    /// `image(1 − σ)`, the principal genus.
    pub genus: Subgroup,
    /// `s` with `C^σ ⊆ image((1−σ)^{s−1})` and `C^σ ⊄ image((1−σ)^s)`.
    pub s: Option<u32>,
}

impl GaloisModel {
    pub fn new(sigma: Endo93, tau: Endo93) -> Self {
        let id = Endo93::IDENTITY;
        let one_minus_sigma = id.minus(sigma);
        let csigma = sigma.minus(id).kernel();
        let s = (1..=8).find(|&i| !csigma.is_subset_of(one_minus_sigma.pow(i).image()));
        Self {
            sigma,
            tau,
            cplus: tau.minus(id).kernel(),
            cminus: tau.plus(id).kernel(),
            csigma,
            genus: one_minus_sigma.image(),
            s,
        }
    }

    /// `σ(e₁) = (1,2)`, `σ(e₂) = (3,1)`, `τ(e₁) = (1,0)`, `τ(e₂) = (3,2)`:
    /// multiplication by `ζ₃` and complex conjugation on `Z[ζ₃]/(1−ζ₃)³`.
    pub fn explicit() -> Self {
        let sigma = Endo93::new(Elem93::new(1, 2), Elem93::new(3, 1)).expect("well defined");
        let tau = Endo93::new(Elem93::new(1, 0), Elem93::new(3, 2)).expect("well defined");
        Self::new(sigma, tau)
    }

    fn one_minus_sigma(&self, e: Elem93) -> Elem93 {
        e - self.sigma.apply(e)
    }

    /// Elements of order 9 generating `C⁺`.
    fn plus_generators(&self) -> Vec<Elem93> {
        self.cplus
            .elements()
            .filter(|&a| a.order() == 9 && Subgroup::generated_by(&[a]) == self.cplus)
            .collect()
    }

    fn minus_generators(&self) -> Vec<Elem93> {
        self.cminus
            .elements()
            .filter(|&b| b != Elem93::ZERO && Subgroup::generated_by(&[b]) == self.cminus)
            .collect()
    }
}

/// All consistent models, in the order of `(σ, τ)` in [`Endo93::all`].
pub fn enumerate_models(constraints: &Constraints) -> Vec<GaloisModel> {
    let endos = Endo93::all();
    let mut out = Vec::new();
    for &sigma in &endos {
        for &tau in &endos {
            let m = GaloisModel::new(sigma, tau);
            if constraints.admit(&m) {
                out.push(m);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frame {
    pub x: Elem93,
    pub y: Elem93,
    pub w: Elem93,
}

/// All `X` of order 9 with `τX = X`, with `Y = σX` and `W = σY`.
pub fn enumerate_frames(m: &GaloisModel) -> Vec<Frame> {
    m.cplus
        .elements()
        .filter(|x| x.order() == 9)
        .map(|x| {
            let y = m.sigma.apply(x);
            Frame {
                x,
                y,
                w: m.sigma.apply(y),
            }
        })
        .collect()
}

/// Whether the frame satisfies `X + Y + W = 0`, `τY = W`, and is permuted
/// cyclically by `σ`.
pub fn frame_is_coherent(m: &GaloisModel, f: &Frame) -> bool {
    f.x + f.y + f.w == Elem93::ZERO
        && m.tau.apply(f.x) == f.x
        && m.tau.apply(f.y) == f.w
        && m.sigma.apply(f.w) == f.x
}

/// Claims about `C^σ`, `C⁺`, `C⁻` and the principal genus in one model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropClaims {
    /// `C^σ ⊆ C⁺`
    pub i: bool,
    /// `C^σ = ⟨3A⟩` for every order-9 generator `A` of `C⁺`.
    pub ii: bool,
    /// `C^σ = ⟨(1−σ)B⟩` for every generator `B` of `C⁻`.
    pub iii: bool,
    /// `C⁻ = ⟨(σ−1)(2A)⟩` for every generator `A` of `C⁺`.
    pub iv_sigma_minus_one_all: bool,
    /// ... for some generator `A`.
    pub iv_sigma_minus_one_some: bool,
    /// `C⁻ = ⟨(1−σ)(2A)⟩` for every generator `A` of `C⁺`.
    pub iv_one_minus_sigma_all: bool,
    /// ... for some generator `A`.
    pub iv_one_minus_sigma_some: bool,
    /// Principal genus `= C^σ × C⁻`, of type `(3, 3)`.
    pub v: bool,
    /// `s = 3`.
    pub vi: bool,
}

pub fn check_prop_claims(m: &GaloisModel) -> PropClaims {
    let plus = m.plus_generators();
    let minus = m.minus_generators();
    let iv = |f: &dyn Fn(Elem93) -> Elem93| -> Vec<bool> {
        plus.iter()
            .map(|&a| Subgroup::generated_by(&[f(a.scale(2))]) == m.cminus)
            .collect()
    };
    let sm1 = iv(&|e| m.sigma.apply(e) - e);
    let oms = iv(&|e| m.one_minus_sigma(e));
    let genus_split = m.csigma.intersection(m.cminus) == Subgroup::TRIVIAL
        && m.csigma.sum(m.cminus) == m.genus
        && m.genus.order() == 9
        && m.genus.is_elementary();
    PropClaims {
        i: m.csigma.is_subset_of(m.cplus),
        ii: plus
            .iter()
            .all(|&a| Subgroup::generated_by(&[a.scale(3)]) == m.csigma),
        iii: minus
            .iter()
            .all(|&b| Subgroup::generated_by(&[m.one_minus_sigma(b)]) == m.csigma),
        iv_sigma_minus_one_all: sm1.iter().all(|&b| b),
        iv_sigma_minus_one_some: sm1.iter().any(|&b| b),
        iv_one_minus_sigma_all: oms.iter().all(|&b| b),
        iv_one_minus_sigma_some: oms.iter().any(|&b| b),
        v: genus_split,
        vi: m.s == Some(3),
    }
}

/// Generator claims for one frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremClaims {
    /// `X` has order 9 and generates `C⁺`.
    pub a: bool,
    /// `X + 2Y` has order 3 and lies in `C⁻`.
    pub b: bool,
    /// `⟨X, X + 2Y⟩` is the whole group.
    pub c: bool,
    /// `⟨Y, Y + 2W⟩` is the whole group.
    pub cor5_y: bool,
    /// `⟨W, W + 2X⟩` is the whole group.
    pub cor5_w: bool,
    /// `C^σ = ⟨3X⟩ = ⟨3Y⟩ = ⟨3W⟩`.
    pub cor6: bool,
    /// Principal genus `= ⟨3X, X + 2Y⟩`.
    pub cor7: bool,
}

pub fn check_theorem_claims(m: &GaloisModel, f: &Frame) -> TheoremClaims {
    let gen = Subgroup::generated_by;
    let xy2 = f.x + f.y.scale(2);
    TheoremClaims {
        a: f.x.order() == 9 && gen(&[f.x]) == m.cplus,
        b: xy2.order() == 3 && m.cminus.contains(xy2),
        c: gen(&[f.x, xy2]) == Subgroup::WHOLE,
        cor5_y: gen(&[f.y, f.y + f.w.scale(2)]) == Subgroup::WHOLE,
        cor5_w: gen(&[f.w, f.w + f.x.scale(2)]) == Subgroup::WHOLE,
        cor6: [f.x, f.y, f.w]
            .iter()
            .all(|e| gen(&[e.scale(3)]) == m.csigma),
        cor7: gen(&[f.x.scale(3), xy2]) == m.genus,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    HoldsUniversally,
    HoldsInSome,
    FailsUniversally,
}

/// A model, and for frame claims the frame root `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub sigma: Endo93,
    pub tau: Endo93,
    pub frame_x: Option<Elem93>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub description: String,
    pub status: ClaimStatus,
    pub holds: usize,
    pub fails: usize,
    pub holding_witness: Option<Witness>,
    pub failing_witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub constraints: Constraints,
    pub models: usize,
    pub frames: usize,
    pub explicit_model_consistent: bool,
    /// Models whose frame list was empty.
    pub models_without_frames: usize,
    /// Frames violating `X + Y + W = 0`, `τY = W` or the cyclic action.
    pub incoherent_frames: usize,
    /// Models failing the independent element-wise re-check.
    pub recheck_failures: usize,
    pub claims: Vec<ClaimResult>,
}

impl ClaimReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// Claims (a), (b), (c) hold in every frame of every model.
    pub fn main_theorem_holds(&self) -> bool {
        ["a", "b", "c"].iter().all(|id| {
            self.claim(id)
                .is_some_and(|c| c.status == ClaimStatus::HoldsUniversally)
        })
    }
}

struct Tally {
    id: &'static str,
    description: &'static str,
    holds: usize,
    fails: usize,
    holding_witness: Option<Witness>,
    failing_witness: Option<Witness>,
}

impl Tally {
    fn new(id: &'static str, description: &'static str) -> Self {
        Self {
            id,
            description,
            holds: 0,
            fails: 0,
            holding_witness: None,
            failing_witness: None,
        }
    }

    fn record(&mut self, ok: bool, w: Witness) {
        if ok {
            self.holds += 1;
            self.holding_witness.get_or_insert(w);
        } else {
            self.fails += 1;
            self.failing_witness.get_or_insert(w);
        }
    }

    fn finish(self) -> ClaimResult {
        let status = if self.fails == 0 {
            ClaimStatus::HoldsUniversally
        } else if self.holds == 0 {
            ClaimStatus::FailsUniversally
        } else {
            ClaimStatus::HoldsInSome
        };
        ClaimResult {
            id: self.id.into(),
            description: self.description.into(),
            status,
            holds: self.holds,
            fails: self.fails,
            holding_witness: self.holding_witness,
            failing_witness: self.failing_witness,
        }
    }
}

const PROP_CLAIMS: [(&str, &str); 9] = [
    ("i", "C^σ ⊆ C⁺"),
    ("ii", "C^σ = ⟨3A⟩ for every order-9 generator A of C⁺"),
    ("iii", "C^σ = ⟨(1−σ)B⟩ for every generator B of C⁻"),
    (
        "iv-sigma-minus-1-all",
        "C⁻ = ⟨(σ−1)(2A)⟩ for every generator A of C⁺",
    ),
    (
        "iv-sigma-minus-1-some",
        "C⁻ = ⟨(σ−1)(2A)⟩ for some generator A of C⁺",
    ),
    (
        "iv-1-minus-sigma-all",
        "C⁻ = ⟨(1−σ)(2A)⟩ for every generator A of C⁺",
    ),
    (
        "iv-1-minus-sigma-some",
        "C⁻ = ⟨(1−σ)(2A)⟩ for some generator A of C⁺",
    ),
    ("v", "principal genus = C^σ × C⁻ of type (3,3)"),
    ("vi", "s = 3"),
];

const THEOREM_CLAIMS: [(&str, &str); 7] = [
    ("a", "X has order 9 and generates C⁺"),
    ("b", "X + 2Y has order 3 and lies in C⁻"),
    ("c", "⟨X, X + 2Y⟩ is the whole group"),
    ("cor5-y", "⟨Y, Y + 2W⟩ is the whole group"),
    ("cor5-w", "⟨W, W + 2X⟩ is the whole group"),
    ("cor6", "C^σ = ⟨3X⟩ = ⟨3Y⟩ = ⟨3W⟩"),
    ("cor7", "principal genus = ⟨3X, X + 2Y⟩"),
];

fn prop_values(p: &PropClaims) -> [bool; 9] {
    [
        p.i,
        p.ii,
        p.iii,
        p.iv_sigma_minus_one_all,
        p.iv_sigma_minus_one_some,
        p.iv_one_minus_sigma_all,
        p.iv_one_minus_sigma_some,
        p.v,
        p.vi,
    ]
}

fn theorem_values(t: &TheoremClaims) -> [bool; 7] {
    [t.a, t.b, t.c, t.cor5_y, t.cor5_w, t.cor6, t.cor7]
}

/// Evaluate a claim by id on a witness; `None` for an unknown id.
pub fn evaluate_claim(id: &str, w: &Witness) -> Option<bool> {
    let m = GaloisModel::new(w.sigma, w.tau);
    if let Some(i) = PROP_CLAIMS.iter().position(|(c, _)| *c == id) {
        return Some(prop_values(&check_prop_claims(&m))[i]);
    }
    let i = THEOREM_CLAIMS.iter().position(|(c, _)| *c == id)?;
    let x = w.frame_x?;
    let f = enumerate_frames(&m).into_iter().find(|f| f.x == x)?;
    Some(theorem_values(&check_theorem_claims(&m, &f))[i])
}

/// Evaluate every claim over every consistent model and frame.
pub fn full_report(constraints: &Constraints) -> ClaimReport {
    let models = enumerate_models(constraints);
    let explicit = GaloisModel::explicit();
    let mut prop: Vec<Tally> = PROP_CLAIMS.iter().map(|&(i, d)| Tally::new(i, d)).collect();
    let mut thm: Vec<Tally> = THEOREM_CLAIMS
        .iter()
        .map(|&(i, d)| Tally::new(i, d))
        .collect();
    let (mut frames, mut without, mut incoherent, mut recheck) = (0, 0, 0, 0);
    for m in &models {
        if !constraints.verify_elementwise(m) {
            recheck += 1;
        }
        let w = Witness {
            sigma: m.sigma,
            tau: m.tau,
            frame_x: None,
        };
        for (t, ok) in prop.iter_mut().zip(prop_values(&check_prop_claims(m))) {
            t.record(ok, w);
        }
        let fs = enumerate_frames(m);
        if fs.is_empty() {
            without += 1;
        }
        for f in &fs {
            frames += 1;
            if !frame_is_coherent(m, f) {
                incoherent += 1;
            }
            let w = Witness {
                frame_x: Some(f.x),
                ..w
            };
            for (t, ok) in thm
                .iter_mut()
                .zip(theorem_values(&check_theorem_claims(m, f)))
            {
                t.record(ok, w);
            }
        }
    }
    ClaimReport {
        constraints: *constraints,
        models: models.len(),
        frames,
        explicit_model_consistent: models.contains(&explicit),
        models_without_frames: without,
        incoherent_frames: incoherent,
        recheck_failures: recheck,
        claims: prop.into_iter().chain(thm).map(Tally::finish).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endomorphism_count() {
        let all = Endo93::all();
        assert_eq!(all.len(), 243);
        assert!(Endo93::new(Elem93::E1, Elem93::new(1, 0)).is_none());
        let automorphisms = all.iter().filter(|e| e.is_automorphism()).count();
        // |Aut(Z/9 × Z/3)| = 108
        assert_eq!(automorphisms, 108);
    }

    #[test]
    fn endomorphisms_are_homomorphisms() {
        for f in Endo93::all() {
            for a in Elem93::all() {
                for b in Elem93::all() {
                    assert_eq!(f.apply(a + b), f.apply(a) + f.apply(b));
                }
            }
        }
    }

    #[test]
    fn identity_sigma_rejected() {
        let m = GaloisModel::new(Endo93::IDENTITY, Endo93::IDENTITY);
        assert_eq!(m.csigma.order(), 27);
        assert!(!Constraints::default().admit(&m));
    }

    #[test]
    fn explicit_model() {
        let m = GaloisModel::explicit();
        assert!(Constraints::default().admit(&m));
        assert!(Constraints::default().verify_elementwise(&m));
        let three = Subgroup::generated_by(&[Elem93::new(3, 0)]);
        assert_eq!(m.csigma, three);
        assert_eq!(m.cminus, Subgroup::generated_by(&[Elem93::new(3, 1)]));
        assert_eq!(m.genus, three.sum(Subgroup::generated_by(&[Elem93::E2])));
        assert_eq!(m.s, Some(3));
        let p = check_prop_claims(&m);
        assert!(p.i && p.v && p.vi);
        // (A²)^{1−σ} = (0,2) for A = e₁, outside C⁻.
        assert_eq!(m.one_minus_sigma(Elem93::new(2, 0)), Elem93::new(0, 2));
        assert!(!m.cminus.contains(Elem93::new(0, 2)));
        assert!(!p.iv_one_minus_sigma_all);
    }

    #[test]
    fn explicit_frame() {
        let m = GaloisModel::explicit();
        let frames = enumerate_frames(&m);
        let f = frames.iter().find(|f| f.x == Elem93::E1).unwrap();
        assert_eq!(f.y, Elem93::new(1, 2));
        assert_eq!(f.x + f.y.scale(2), Elem93::new(3, 1));
        assert!(frame_is_coherent(&m, f));
        let t = check_theorem_claims(&m, f);
        assert!(t.a && t.b && t.c && t.cor6);
        assert_eq!(
            Subgroup::generated_by(&[Elem93::E1, Elem93::new(3, 1)]).order(),
            27
        );
    }

    #[test]
    fn relaxation_only_adds_models() {
        let full = enumerate_models(&Constraints::default());
        let relaxed = enumerate_models(&Constraints {
            ambiguous_order: false,
            ..Constraints::default()
        });
        assert!(full.iter().all(|m| relaxed.contains(m)));
        assert!(relaxed.len() >= full.len());
    }
}
