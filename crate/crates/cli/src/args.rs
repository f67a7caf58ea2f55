use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "schurkit", version, about = "Exact Schur-class positivity calculus")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Semi,
    Strict,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi–Trudi polynomial s_λ in c1..cr.
    Schur {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        rank: usize,
    },
    /// Schur-basis coefficients of a weighted-homogeneous polynomial.
    Decompose {
        /// ChernPoly JSON or an expression such as `c1^2 - c2`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Rank for expressions; defaults to the largest ci that occurs.
        #[arg(long)]
        rank: Option<usize>,
    },
    /// s_λ(E⟨δ⟩) as a polynomial in δ.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        rank: usize,
    },
    /// Derived Schur class s_λ^{(i)}.
    Derived {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        rank: usize,
    },
    /// Intersection number of classes whose degrees add up to the dimension.
    Intersect {
        #[arg(long)]
        variety: String,
        /// Comma-separated class expressions, e.g. `H,H^2` or `f1+f2,f1,f2`.
        #[arg(long, allow_hyphen_values = true)]
        classes: String,
    },
    /// Extremal-ray positivity of s_λ(E) with |λ| = dim - 1.
    CheckTheoremA(InstanceArgs),
    /// Signature of the pairing (a, b) ↦ ∫ s_λ^{(1)}(E)·a·b on divisors.
    HodgeIndex(InstanceArgs),
    /// First-order expansion of ∫ s_λ(E⟨-tω⟩)·L in t.
    Perturb {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Divisor ω; defaults to the sum of the nef rays.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        /// Divisor L; defaults to the sum of the nef rays.
        #[arg(long, allow_hyphen_values = true)]
        against: Option<String>,
    },
    /// Positivity of constant (p,p)-forms read from a JSON file.
    FormCheck {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Semi)]
        mode: ModeArg,
        /// Switches to floating-point decisions with this tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, default_value_t = schurkit::forms::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dimension for bare term lists.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Seeded Chern–Weil experiment on random Nakano-positive curvature tensors.
    CwLab {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = schurkit::forms::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Semi)]
        mode: ModeArg,
        /// Decomposable test forms per sampled form.
        #[arg(long, default_value_t = 2000)]
        form_samples: usize,
    },
}

#[derive(Args, Debug)]
pub struct InstanceArgs {
    #[arg(long)]
    pub variety: String,
    #[arg(long, allow_hyphen_values = true)]
    pub bundle: String,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}
