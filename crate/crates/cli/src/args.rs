use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "homnalg",
    version,
    about = "Exact computations with multiplicative Hom-Leibniz n-algebras",
    after_help = "Exit codes: 0 success, 1 a checked property failed, 2 parse or usage error, 3 resource cap.\n\
                  HOMNALG_MAX_OPS overrides the cap on basic evaluations per operation."
)]
pub struct Cli {
    /// Print a single JSON object instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// Where the algebras come from and which ones to use.
#[derive(Args, Debug, Clone, Default)]
pub struct Input {
    /// `.hna` file
    pub file: Option<PathBuf>,

    /// Built-in fixture instead of a file (repeatable), e.g. `ex37.K` or `ex37.pi`
    #[arg(long = "fixture", value_name = "NAME")]
    pub fixtures: Vec<String>,

    /// Algebra to act on; optional when the input holds exactly one
    #[arg(long, value_name = "NAME")]
    pub algebra: Option<String>,

    /// Morphism to act on (repeatable where a command takes two)
    #[arg(long = "morphism", value_name = "NAME")]
    pub morphisms: Vec<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Emit {
    /// Also print the resulting algebra in `.hna` form
    #[arg(long)]
    pub emit: bool,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArg {
    /// Subspace as comma-separated combinations (`e2, e1 - 1/2*e3`), `all`, or `0`
    #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
    pub ideal: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the identity validators on every algebra and morphism
    Check(Input),
    /// Center of an algebra
    Center(Input),
    /// Commutator of ideals (one `--ideal` per slot; none means `[L,…,L]`)
    Commutator {
        #[command(flatten)]
        input: Input,
        #[arg(long = "ideal", value_name = "SPEC", allow_hyphen_values = true)]
        ideals: Vec<String>,
    },
    /// Whether `[L,…,L] = L`
    Perfect(Input),
    /// Span of brackets with a repeated adjacent argument
    Ann(Input),
    /// Quotient by the annihilator ideal
    LieQuotient {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        emit: Emit,
    },
    /// Quotient by an ideal
    Quotient {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        ideal: IdealArg,
        #[command(flatten)]
        emit: Emit,
    },
    /// Derived Hom-Leibniz algebra on `L^⊗(n−1)`
    Dnl {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        emit: Emit,
    },
    /// Yau twist of an untwisted algebra by the self-map given with `--morphism`
    Twist {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        emit: Emit,
    },
    /// Zeroth homology `L/[L,…,L]`
    Hl0(Input),
    /// First homology
    Hl1(Input),
    /// Homology of the general complex in a given degree
    Hl {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Universal central extension of a perfect algebra
    Uce {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        emit: Emit,
    },
    /// Central / α-central classification of a surjective morphism
    Classify(Input),
    /// Map from the universal central extension into a central extension
    Beta(Input),
    /// Pullback of two extensions over a common base
    Pullback {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        emit: Emit,
    },
    /// Composite of two extensions, outer map first
    Compose(Input),
    /// Splitting of a central extension through the universal one
    Section(Input),
    /// The twisted alternation condition
    Cond2(Input),
    /// Whether an extension carries twisted centers onto twisted centers
    Unicentral(Input),
    /// Whether a perfect algebra is its own universal central extension
    Closed(Input),
    /// Isomorphism of twisted-image quotients induced by the universal extension
    Thm58(Input),
    /// Non-abelian tensor product, optionally with one ideal factor
    Tensor {
        #[command(flatten)]
        input: Input,
        /// Ideal placed in one factor; the others are the whole algebra
        #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 0)]
        slot: usize,
        #[command(flatten)]
        emit: Emit,
    },
    /// The bracket map out of the tensor product
    Psi {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 0)]
        slot: usize,
    },
    /// Comparison of the tensor product with the universal central extension
    Phi(Input),
    /// Exact sequence attached to an ideal
    Prop46 {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        ideal: IdealArg,
    },
    /// Built-in fixtures: list, show one, or replay expected facts
    Catalog {
        name: Option<String>,
        /// Replay the expected facts
        #[arg(long)]
        facts: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Center(_) => "center",
            Command::Commutator { .. } => "commutator",
            Command::Perfect(_) => "perfect",
            Command::Ann(_) => "ann",
            Command::LieQuotient { .. } => "lie-quotient",
            Command::Quotient { .. } => "quotient",
            Command::Dnl { .. } => "dnl",
            Command::Twist { .. } => "twist",
            Command::Hl0(_) => "hl0",
            Command::Hl1(_) => "hl1",
            Command::Hl { .. } => "hl",
            Command::Uce { .. } => "uce",
            Command::Classify(_) => "classify",
            Command::Beta(_) => "beta",
            Command::Pullback { .. } => "pullback",
            Command::Compose(_) => "compose",
            Command::Section(_) => "section",
            Command::Cond2(_) => "cond2",
            Command::Unicentral(_) => "unicentral",
            Command::Closed(_) => "closed",
            Command::Thm58(_) => "thm58",
            Command::Tensor { .. } => "tensor",
            Command::Psi { .. } => "psi",
            Command::Phi(_) => "phi",
            Command::Prop46 { .. } => "prop46",
            Command::Catalog { .. } => "catalog",
        }
    }
}
