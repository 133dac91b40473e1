//! The JSON report document shared by all subcommands.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use purecubic_core::classgroup::Certification;
use purecubic_core::{ClaimReport, ClassGroupStructure, EisensteinInt, KStructureReport};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Mismatch,
    Unverified,
    Error,
}

impl Status {
    /// `0` success, `1` mismatch or nothing verified, `2` usage or
    /// environment error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch | Status::Unverified => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub command: String,
    pub inputs: serde_json::Value,
    pub results: Vec<ResultItem>,
    pub status: Status,
    #[serde(default)]
    pub notes: Vec<String>,
    /// Wall clock time; the only nondeterministic field.
    pub generated_at: u64,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value) -> Self {
        Self {
            tool_version: TOOL_VERSION.into(),
            command: command.into(),
            inputs,
            results: Vec::new(),
            status: Status::Ok,
            notes: Vec::new(),
            generated_at: unix_now(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ResultItem {
    Scan(ScanRecord),
    Table1(Table1Row),
    Split(SplitResult),
    Symbols(SymbolsResult),
    ClassGroup(ClassGroupResult),
    ModelCheck(Box<ClaimReport>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unknown {
    Unknown,
}

/// A class number, or `"unknown"` when the budget ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassNumber {
    Known(u64),
    Unknown(Unknown),
}

impl ClassNumber {
    pub fn known(self) -> Option<u64> {
        match self {
            ClassNumber::Known(h) => Some(h),
            ClassNumber::Unknown(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UAssignment {
    pub u: u8,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub p: u64,
    pub p_mod9: u64,
    pub three_symbol_trivial: bool,
    pub h_gamma: ClassNumber,
    /// Elementary divisors of the full class group of `Q(∛p)`.
    pub class_group_divisors: Vec<u64>,
    /// Elementary divisors of its 3-part, largest first.
    pub h_gamma3_divisors: Vec<u64>,
    pub certification: Option<Certification>,
    pub u: Option<UAssignment>,
    /// `"(9,3)"`, `"(3,3,3)"` or `"undetermined"`.
    pub k_type: String,
    pub ambiguous_order: u64,
    /// Budget the class group was attempted with, in seconds.
    pub budget_seconds: Option<f64>,
    pub tool_version: String,
    pub computed_at: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowVerdict {
    Match,
    Mismatch,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub p: u64,
    pub p_mod9_is_1: bool,
    pub three_symbol_nontrivial: bool,
    pub h_gamma3_divisors: Option<Vec<u64>>,
    pub u: Option<UAssignment>,
    pub k_type: String,
    pub expected_k_type: String,
    pub verdict: RowVerdict,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternView {
    /// `(e, f)` per prime.
    pub primes: Vec<(u32, u32)>,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitResult {
    pub d: u64,
    pub q: u64,
    /// `"first"` or `"second"`.
    pub field_kind: String,
    pub gamma: PatternView,
    pub k0: PatternView,
    pub k: PatternView,
    /// From the factorization of `x³ − d` mod `q`, where applicable.
    pub brute_gamma: Option<PatternView>,
    pub agrees_with_brute: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolsResult {
    pub p: u64,
    pub p_mod9: u64,
    pub pi1: EisensteinInt,
    pub pi2: EisensteinInt,
    /// Exponent `e` of `(3/p)₃ = ζ^e`.
    pub three_symbol: u8,
    pub three_symbol_nontrivial: bool,
    /// Exponent of `(λ/π₁)₃`.
    pub lambda_symbol: u8,
    pub zeta_is_local_norm: bool,
    pub ambiguous_order: u64,
    /// `(c, e)` with `(c/p)₃ = ζ^e`, when requested.
    pub extra: Option<(i64, u8)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassGroupResult {
    pub d: u64,
    pub minkowski_bound: f64,
    pub structure: Option<ClassGroupStructure>,
    pub k_structure: Option<KStructureReport>,
    pub unverified_reason: Option<String>,
}
