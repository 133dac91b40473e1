use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "purecubic",
    version,
    about = "Pure cubic fields Q(∛d), their normal closures and 3-class groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalArgs {
    /// JSON-lines cache of scan records, created if missing.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Time allowed for each class group computation.
    #[arg(long, global = true, value_name = "SECONDS", default_value_t = 120.0)]
    pub budget: f64,
    /// Print the full JSON report.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Print results as flattened CSV rows.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Scan primes p ≡ 1 mod 9 with (3/p)₃ ≠ 1.
    Scan(ScanArgs),
    /// Check the 24 primes of the (9,3) table.
    Table1(Table1Args),
    /// Decomposition of a prime q in Q(∛d), Q(ζ₃) and Q(∛d, ζ₃).
    Split(SplitArgs),
    /// Cubic residue and norm residue data for a prime p ≡ 1 mod 3.
    Symbols(SymbolsArgs),
    /// Class group of Q(∛d).
    Classgroup(ClassGroupArgs),
    /// Exhaustive check of the generator claims on Z/9 × Z/3.
    ModelCheck(ModelCheckArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct UArgs {
    /// Replacement for the shipped u-assignment file.
    #[arg(long, value_name = "PATH")]
    pub u_file: Option<PathBuf>,
    /// Override the unit index for one prime, as P=U.
    #[arg(long = "u", value_name = "P=U")]
    pub u: Vec<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ScanArgs {
    /// Largest prime to consider (at least 19).
    #[arg(long)]
    pub max_p: u64,
    /// Keep primes with (3/p)₃ = 1 as well.
    #[arg(long)]
    pub include_trivial_symbol: bool,
    /// Skip class groups; records are then not cached.
    #[arg(long)]
    pub no_classgroup: bool,
    #[command(flatten)]
    pub u: UArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Table1Args {
    /// Restrict to these primes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    #[command(flatten)]
    pub u: UArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SplitArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub q: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SymbolsArgs {
    #[arg(long)]
    pub p: u64,
    /// Also evaluate (c/p)₃.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleArg {
    Auto,
    Always,
    Never,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ClassGroupArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Admitted relations that must leave the lattice unchanged.
    #[arg(long, default_value_t = 32)]
    pub window: usize,
    #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
    pub oracle: OracleArg,
    #[command(flatten)]
    pub u: UArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintArg {
    /// σ³ = 1, τ² = 1
    Orders,
    /// τστ = σ²
    Dihedral,
    /// 1 + σ + σ² = 0
    NormKills,
    /// |C^σ| = 3
    AmbiguousOrder,
    /// C⁺ cyclic of order 9, |C⁻| = 3
    EigenOrders,
    /// C^σ ⊆ C⁺, C^σ ∩ C⁻ = 1
    AmbiguousPlus,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ModelCheckArgs {
    /// Drop a consistency constraint (repeatable).
    #[arg(long, value_enum)]
    pub drop: Vec<ConstraintArg>,
    /// Also write the report to this file.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
