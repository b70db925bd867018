use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::Format;

#[derive(Parser, Debug)]
#[command(name = "hopfcyc", version, about = "Exact computations in H(1), its cyclic module and related complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute and print a single object.
    Compute(ComputeArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeTarget {
    /// Δ(δ_n)
    Coproduct,
    /// S(δ_n), or S̃(δ_n) with --tilde
    Antipode,
    /// ρ(δ_n), ρ̃(δ_n) with --tilde, or ρ of the Schwarzian with --schwarzian
    Rho,
    /// δ_1(ψ), …, δ_n(ψ) for ψ(x) = x + c₂x² + c₃x³ + …
    DeltaCoords,
    /// Betti numbers and representatives of WO(n) or WSO(n)
    Weil,
    /// Chevalley-Eilenberg homology of a small Lie algebra
    Ce,
    /// Structure of the bicrossed-product Hopf algebra of a factorization
    Bicrossed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Wo,
    Wso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoefficientChoice {
    Trivial,
    Character,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    pub target: ComputeTarget,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub tilde: bool,
    #[arg(long)]
    pub schwarzian: bool,
    /// Comma-separated coefficients c₂, c₃, … of ψ(x) = x + c₂x² + …
    #[arg(long, allow_hyphen_values = true)]
    pub jet: Option<String>,
    #[arg(long, value_enum, default_value = "wo")]
    pub variant: Variant,
    /// `affine`, `abelian:K` or `witt:LO..HI`
    #[arg(long, default_value = "affine")]
    pub algebra: String,
    #[arg(long, value_enum, default_value = "trivial")]
    pub coefficients: CoefficientChoice,
    /// Built-in factorization name (s3, s3-swap, c6, f21, s3-group, cN-group, cN-functions, …)
    #[arg(long, conflicts_with = "group_file")]
    pub group: Option<String>,
    /// Multiplication table: one row per element, space-separated indices
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    /// Comma-separated element indices of G₁ (with --group-file)
    #[arg(long)]
    pub g1: Option<String>,
    /// Comma-separated element indices of G₂ (with --group-file)
    #[arg(long)]
    pub g2: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Hopf,
    Duality,
    Action,
    MatchedPair,
    Cyclic,
    Cohomology,
    Appendix,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long)]
    pub max_weight: Option<u32>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
    /// Appendix fixture file; the built-in transcription is used when absent
    #[arg(long)]
    pub fixture: Option<PathBuf>,
    /// `key = value` file with defaults for the flags above
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
