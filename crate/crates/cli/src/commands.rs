use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

use purecubic_core::arith::{is_prime, primes_up_to};
use purecubic_core::classgroup::{
    ambiguous_order, class_group, decide_k_structure, minkowski_bound, Certification,
    ClassGroupParams, OracleMode,
};
use purecubic_core::cubicfield::{brute_split, split_in_gamma, split_in_k, split_in_k0};
use purecubic_core::eisenstein::split_prime;
use purecubic_core::galoismodel::{full_report, Constraints};
use purecubic_core::symbols::{cubic_residue, cubic_residue_rational, zeta_norm_test};
use purecubic_core::{ClassGroupStructure, EisensteinInt, Error, PureCubicField, SplitPattern};

use crate::args::{
    ClassGroupArgs, ConstraintArg, GlobalArgs, ModelCheckArgs, OracleArg, ScanArgs, SplitArgs,
    SymbolsArgs, Table1Args, UArgs,
};
use crate::cache::Cache;
use crate::report::{
    unix_now, ClassGroupResult, ClassNumber, PatternView, Report, ResultItem, RowVerdict,
    ScanRecord, SplitResult, Status, SymbolsResult, Table1Row, Unknown, TOOL_VERSION,
};
use crate::uassign::UTable;
use crate::CliError;

/// The primes of the `(9, 3)` table.
pub const TABLE1: [u64; 24] = [
    199, 487, 1297, 1693, 1747, 1999, 2017, 2143, 2377, 2467, 2593, 2917, 3511, 3673, 3727, 4159,
    4519, 4591, 4789, 5347, 5437, 6949, 8209, 8821,
];

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn u_table(u: &UArgs) -> Result<UTable, CliError> {
    UTable::load(u.u_file.as_deref())?.with_overrides(&u.u)
}

fn deadline(budget: f64) -> Result<Instant, CliError> {
    if !(budget.is_finite() && budget > 0.0) {
        return Err(CliError::Usage(format!(
            "--budget must be positive, got {budget}"
        )));
    }
    Ok(Instant::now() + Duration::from_secs_f64(budget))
}

/// Class group data for `Q(∛p)`; `u` and `k_type` are filled in later.
fn compute_record(p: u64, budget: Option<f64>) -> Result<ScanRecord, CliError> {
    let field = Arc::new(PureCubicField::classify(p).map_err(usage)?);
    let mut r = ScanRecord {
        p,
        p_mod9: p % 9,
        three_symbol_trivial: cubic_residue_rational(3, p).map_err(usage)?.is_trivial(),
        h_gamma: ClassNumber::Unknown(Unknown::Unknown),
        class_group_divisors: Vec::new(),
        h_gamma3_divisors: Vec::new(),
        certification: None,
        u: None,
        k_type: "undetermined".into(),
        ambiguous_order: ambiguous_order(p).map_err(usage)?,
        budget_seconds: budget,
        tool_version: TOOL_VERSION.into(),
        computed_at: unix_now(),
    };
    if let Some(b) = budget {
        let params = ClassGroupParams {
            deadline: Some(deadline(b)?),
            ..ClassGroupParams::default()
        };
        match class_group(&field, &params) {
            Ok(cg) => {
                r.h_gamma = ClassNumber::Known(cg.h);
                r.class_group_divisors = cg.divisors;
                r.h_gamma3_divisors = cg.p3_type;
                r.certification = Some(cg.certification);
            }
            Err(Error::BudgetExhausted(_)) => {}
            Err(e) => return Err(CliError::Env(format!("class group of Q(∛{p}): {e}"))),
        }
    }
    Ok(r)
}

fn type_string(t: &[u64]) -> String {
    let parts: Vec<String> = t.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Attach the current u assignment and the structure it implies.
fn annotate(mut r: ScanRecord, u: &UTable) -> ScanRecord {
    r.u = u.get(r.p).cloned();
    r.k_type = "undetermined".into();
    if let (Some(_), Some(ua)) = (r.h_gamma.known(), &r.u) {
        let cg = ClassGroupStructure::from_divisors(
            r.p,
            r.class_group_divisors.clone(),
            r.certification.unwrap_or(Certification::Heuristic),
        );
        if let Ok(Some(t)) = decide_k_structure(&cg, ua.u).map(|k| k.k_type) {
            r.k_type = type_string(&t);
        }
    }
    r
}

fn reusable(r: &ScanRecord, budget: f64) -> bool {
    r.h_gamma.known().is_some() || r.budget_seconds.is_some_and(|b| b >= budget)
}

/// Records for `primes` in order, from the cache where possible; new ones
/// are computed in parallel and appended through a single writer.
fn records_for(
    primes: &[u64],
    global: &GlobalArgs,
    with_class_group: bool,
) -> Result<Vec<ScanRecord>, CliError> {
    deadline(global.budget)?;
    let mut cache = global.cache.as_deref().map(Cache::open).transpose()?;
    let budget = with_class_group.then_some(global.budget);
    let mut have: BTreeMap<u64, ScanRecord> = primes
        .iter()
        .filter_map(|&p| cache.as_ref()?.get(p).cloned())
        .filter(|r| !with_class_group || reusable(r, global.budget))
        .map(|r| (r.p, r))
        .collect();
    let missing: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|p| !have.contains_key(p))
        .collect();
    let work = || -> Result<Vec<ScanRecord>, CliError> {
        missing
            .par_iter()
            .map(|&p| compute_record(p, budget))
            .collect()
    };
    let fresh = match global.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Env(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    for r in fresh {
        if let (Some(c), true) = (cache.as_mut(), with_class_group) {
            c.append(&r)?;
        }
        have.insert(r.p, r);
    }
    Ok(primes.iter().filter_map(|p| have.get(p).cloned()).collect())
}

pub fn scan(args: &ScanArgs, global: &GlobalArgs) -> Result<Report, CliError> {
    if args.max_p < 19 {
        return Err(CliError::Usage(format!(
            "--max-p must be at least 19, got {}",
            args.max_p
        )));
    }
    let u = u_table(&args.u)?;
    let primes: Vec<u64> = primes_up_to(args.max_p)
        .into_iter()
        .filter(|p| p % 9 == 1)
        .map(|p| Ok((p, cubic_residue_rational(3, p).map_err(usage)?.is_trivial())))
        .collect::<Result<Vec<_>, CliError>>()?
        .into_iter()
        .filter(|&(_, trivial)| args.include_trivial_symbol || !trivial)
        .map(|(p, _)| p)
        .collect();
    let records = records_for(&primes, global, !args.no_classgroup)?;
    let mut report = Report::new("scan", json!({ "args": args, "global": global }));
    let unknown = records
        .iter()
        .filter(|r| r.h_gamma.known().is_none())
        .count();
    if unknown > 0 && !args.no_classgroup {
        report.notes.push(format!(
            "{unknown} class groups unverified within the budget"
        ));
    }
    report.results = records
        .into_iter()
        .map(|r| ResultItem::Scan(annotate(r, &u)))
        .collect();
    Ok(report)
}

fn table1_row(r: ScanRecord) -> Table1Row {
    let mut problems = Vec::new();
    let p_mod9_is_1 = r.p_mod9 == 1;
    let three_symbol_nontrivial = !r.three_symbol_trivial;
    if !p_mod9_is_1 {
        problems.push(format!("p ≡ {} mod 9", r.p_mod9));
    }
    if !three_symbol_nontrivial {
        problems.push("(3/p)₃ = 1".into());
    }
    let known = r.h_gamma.known().is_some();
    let verdict = if !problems.is_empty() {
        RowVerdict::Mismatch
    } else if !known {
        problems.push("class group not computed within the budget".into());
        RowVerdict::Unverified
    } else if r.h_gamma3_divisors != [9] {
        problems.push(format!(
            "3-class group of Q(∛p) is {}, not (9)",
            type_string(&r.h_gamma3_divisors)
        ));
        RowVerdict::Mismatch
    } else if r.u.is_none() {
        problems.push("no unit index assigned".into());
        RowVerdict::Unverified
    } else if r.k_type != "(9,3)" {
        problems.push(format!("type {} instead of (9,3)", r.k_type));
        RowVerdict::Mismatch
    } else {
        RowVerdict::Match
    };
    Table1Row {
        p: r.p,
        p_mod9_is_1,
        three_symbol_nontrivial,
        h_gamma3_divisors: known.then_some(r.h_gamma3_divisors),
        u: r.u,
        k_type: r.k_type,
        expected_k_type: "(9,3)".into(),
        verdict,
        problems,
    }
}

pub fn table1(args: &Table1Args, global: &GlobalArgs) -> Result<Report, CliError> {
    let u = u_table(&args.u)?;
    let primes: Vec<u64> = if args.primes.is_empty() {
        TABLE1.to_vec()
    } else {
        args.primes.clone()
    };
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p) || p % 3 != 1) {
        return Err(CliError::Usage(format!("{p} is not a prime ≡ 1 mod 3")));
    }
    let records = records_for(&primes, global, true)?;
    let rows: Vec<Table1Row> = records
        .into_iter()
        .map(|r| table1_row(annotate(r, &u)))
        .collect();
    let mut report = Report::new("table1", json!({ "args": args, "global": global }));
    let count = |v| rows.iter().filter(|r| r.verdict == v).count();
    let (mismatched, unverified) = (count(RowVerdict::Mismatch), count(RowVerdict::Unverified));
    report.status = if mismatched > 0 {
        Status::Mismatch
    } else {
        Status::Ok
    };
    report.notes.push(format!(
        "{} rows match, {mismatched} mismatch, {unverified} unverified",
        count(RowVerdict::Match)
    ));
    report.results = rows.into_iter().map(ResultItem::Table1).collect();
    Ok(report)
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn digits(n: u32, table: &[char; 10]) -> String {
    n.to_string()
        .chars()
        .map(|c| table[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

fn view(p: &SplitPattern) -> PatternView {
    let display = p
        .primes
        .iter()
        .enumerate()
        .map(|(i, &(e, f))| {
            let mut s = format!("𝔓{}", digits(i as u32 + 1, &SUBSCRIPTS));
            if e > 1 {
                s.push_str(&digits(e, &SUPERSCRIPTS));
            }
            if f > 1 {
                s.push_str(&format!("[f={f}]"));
            }
            s
        })
        .collect();
    PatternView {
        primes: p.primes.clone(),
        display,
    }
}

pub fn split(args: &SplitArgs) -> Result<Report, CliError> {
    let field = PureCubicField::classify(args.d).map_err(usage)?;
    let gamma = split_in_gamma(&field, args.q).map_err(usage)?;
    let brute = brute_split(&field, args.q).ok();
    let result = SplitResult {
        d: args.d,
        q: args.q,
        field_kind: format!("{:?}", field.kind).to_lowercase(),
        k0: view(&split_in_k0(args.q).map_err(usage)?),
        k: view(&split_in_k(&field, args.q).map_err(usage)?),
        agrees_with_brute: brute.as_ref().map(|b| *b == gamma),
        brute_gamma: brute.as_ref().map(view),
        gamma: view(&gamma),
    };
    let mut report = Report::new("split", json!({ "args": args }));
    if result.agrees_with_brute == Some(false) {
        report.status = Status::Mismatch;
    }
    report.results.push(ResultItem::Split(result));
    Ok(report)
}

pub fn symbols(args: &SymbolsArgs) -> Result<Report, CliError> {
    let p = args.p;
    if !is_prime(p) || p % 3 != 1 {
        return Err(CliError::Usage(format!("{p} is not a prime ≡ 1 mod 3")));
    }
    let (pi1, pi2) = split_prime(p).map_err(usage)?;
    let three = cubic_residue_rational(3, p).map_err(usage)?;
    let extra = match args.c {
        Some(c) => Some((c, cubic_residue_rational(c, p).map_err(usage)?.exponent())),
        None => None,
    };
    let result = SymbolsResult {
        p,
        p_mod9: p % 9,
        pi1,
        pi2,
        three_symbol: three.exponent(),
        three_symbol_nontrivial: !three.is_trivial(),
        lambda_symbol: cubic_residue(EisensteinInt::LAMBDA, pi1)
            .map_err(usage)?
            .exponent(),
        zeta_is_local_norm: zeta_norm_test(p).map_err(usage)?,
        ambiguous_order: ambiguous_order(p).map_err(usage)?,
        extra,
    };
    let mut report = Report::new("symbols", json!({ "args": args }));
    report.results.push(ResultItem::Symbols(result));
    Ok(report)
}

pub fn classgroup(args: &ClassGroupArgs, global: &GlobalArgs) -> Result<Report, CliError> {
    let field = Arc::new(PureCubicField::classify(args.d).map_err(usage)?);
    let u = u_table(&args.u)?;
    let bound = minkowski_bound(&field);
    let params = ClassGroupParams {
        seed: args.seed,
        window: args.window,
        deadline: Some(deadline(global.budget)?),
        oracle: match args.oracle {
            OracleArg::Auto => OracleMode::Auto,
            OracleArg::Always => OracleMode::Always,
            OracleArg::Never => OracleMode::Never,
        },
        ..ClassGroupParams::default()
    };
    let mut result = ClassGroupResult {
        d: args.d,
        minkowski_bound: *bound.numer() as f64 / *bound.denom() as f64,
        structure: None,
        k_structure: None,
        unverified_reason: None,
    };
    let mut report = Report::new("classgroup", json!({ "args": args, "global": global }));
    match class_group(&field, &params) {
        Ok(cg) => {
            let applicable = is_prime(args.d) && args.d % 9 == 1;
            if let (true, Some(ua)) = (applicable, u.get(args.d)) {
                result.k_structure = decide_k_structure(&cg, ua.u).ok();
            }
            if cg.certification == Certification::Heuristic {
                report
                    .notes
                    .push("result not confirmed by the enumeration oracle".into());
            }
            result.structure = Some(cg);
        }
        Err(Error::BudgetExhausted(msg)) => {
            report.status = Status::Unverified;
            result.unverified_reason = Some(msg);
        }
        Err(e) => return Err(usage(e)),
    }
    report.results.push(ResultItem::ClassGroup(result));
    Ok(report)
}

pub fn model_check(args: &ModelCheckArgs) -> Result<Report, CliError> {
    let mut c = Constraints::default();
    for d in &args.drop {
        match d {
            ConstraintArg::Orders => c.orders = false,
            ConstraintArg::Dihedral => c.dihedral = false,
            ConstraintArg::NormKills => c.norm_kills = false,
            ConstraintArg::AmbiguousOrder => c.ambiguous_order = false,
            ConstraintArg::EigenOrders => c.eigen_orders = false,
            ConstraintArg::AmbiguousPlus => c.ambiguous_plus = false,
        }
    }
    let claims = full_report(&c);
    let mut report = Report::new("model-check", json!({ "args": args }));
    if !args.drop.is_empty() {
        let baseline = full_report(&Constraints::default()).models;
        report.notes.push(format!(
            "relaxed constraints admit {} models against {baseline} under the full set{}",
            claims.models,
            if claims.models > baseline {
                " (enlarged)"
            } else {
                ""
            }
        ));
    }
    if claims.recheck_failures > 0 {
        report.notes.push(format!(
            "{} models failed the independent re-check",
            claims.recheck_failures
        ));
    }
    report.status = if claims.main_theorem_holds() && claims.recheck_failures == 0 {
        Status::Ok
    } else {
        Status::Mismatch
    };
    report
        .results
        .push(ResultItem::ModelCheck(Box::new(claims)));
    if let Some(path) = &args.out {
        let text =
            serde_json::to_string_pretty(&report).map_err(|e| CliError::Env(e.to_string()))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Env(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}
