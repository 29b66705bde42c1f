use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "mixjoin", version, about = "Invariants of mixed-polynomial singularities of join type")]
pub struct Cli {
    /// Seed for randomized checks; echoed in the manifest.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Pretty-print with this many spaces; 0 prints compact JSON.
    #[arg(long, global = true, default_value_t = 2)]
    pub json_indent: usize,
    /// Suppress diagnostics on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a mixed polynomial and print its canonical form.
    Parse(ParseArgs),
    /// Newton boundary, convenience and non-degeneracy checks.
    Newton(NewtonArgs),
    /// Mapping degree of a one-variable mixed polynomial.
    Degree(DegreeArgs),
    /// Seifert-form algebra.
    #[command(subcommand)]
    Seifert(SeifertCommand),
    /// Zeta-function divisors and their join.
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// Enhanced Milnor numbers.
    #[command(subcommand)]
    Enhanced(EnhancedCommand),
    /// Run a JSON list of steps, each able to use earlier results.
    Pipeline {
        /// JSON file holding the step list.
        script: PathBuf,
    },
}

/// A polynomial given inline or as a JSON file.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PolySource {
    /// Polynomial text, e.g. "z1^2 + zb2^2".
    #[arg(long)]
    pub poly: Option<String>,
    /// JSON file with {"n": .., "terms": [..]}.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    #[command(flatten)]
    pub source: PolySource,
    /// Declared number of variables.
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Debug, Args)]
pub struct NewtonArgs {
    #[command(flatten)]
    pub source: PolySource,
    /// List the compact faces.
    #[arg(long)]
    pub faces: bool,
    /// Report whether the polynomial is convenient.
    #[arg(long)]
    pub convenient: bool,
    /// Search each face for critical points.
    #[arg(long)]
    pub nondegenerate: bool,
    /// Random starts per face.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Descent iterations per start.
    #[arg(long, default_value_t = 50)]
    pub iterations: usize,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    #[command(flatten)]
    pub source: PolySource,
    /// Circle radius.
    #[arg(long, default_value_t = 1e-2)]
    pub eps: f64,
    /// Initial samples on the circle.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Shrink the radius until the degree stabilizes.
    #[arg(long)]
    pub adaptive: bool,
}

#[derive(Debug, Subcommand)]
pub enum SeifertCommand {
    /// The Λ_m form of z^m (or z̄^{|m|} for m < 0).
    Lambda {
        #[arg(short, long, allow_negative_numbers = true)]
        m: i64,
    },
    /// Form of the join of two germs in n and m variables.
    Tensor {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        left: PathBuf,
        right: PathBuf,
    },
    /// Form of Σ z_j^{a_j}.
    Brieskorn {
        #[arg(required = true, allow_negative_numbers = true)]
        exponents: Vec<i64>,
    },
    /// Border a form with the row (b, eps) and a zero column.
    Extend {
        file: PathBuf,
        /// Comma-separated border row.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        b: Vec<i64>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
        /// Fiber parameter, used only to warn when k < 3.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Search for a unimodular U with U A Uᵀ = B.
    Congruent {
        #[arg(long, default_value_t = 8)]
        depth: usize,
        left: PathBuf,
        right: PathBuf,
    },
    /// Characteristic polynomial of the monodromy.
    Charpoly { file: PathBuf },
    /// Congruence invariants of a form.
    Invariants { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ZetaCommand {
    /// Join of the divisors num1/den1 and num2/den2.
    Join {
        #[arg(long, allow_hyphen_values = true)]
        num1: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        den1: String,
        #[arg(long, allow_hyphen_values = true)]
        num2: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        den2: String,
    },
    /// Zeta function from a JSON list of characteristic polynomials.
    FromCharpolys { file: PathBuf },
    /// Reduced zeta of the zeta function num/den.
    Reduced {
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        den: String,
    },
    /// Polynomial whose roots are the pairwise products of roots.
    Composed {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum EnhancedCommand {
    /// Join of (mu1, lambda1) and (mu2, lambda2).
    Join {
        #[arg(long)]
        mu1: u64,
        #[arg(long)]
        lambda1: u8,
        #[arg(long)]
        mu2: u64,
        #[arg(long)]
        lambda2: u8,
        /// k of the joined link.
        #[arg(long)]
        k: u32,
    },
    /// Invariant of Σ w_i^{a_i}.
    Brieskorn {
        #[arg(required = true, allow_negative_numbers = true)]
        exponents: Vec<i64>,
    },
    /// Join-type polynomial with μ = ell and λ = 1 in k + 1 variables.
    Witness {
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Tabulated base families.
    BaseCases,
}
