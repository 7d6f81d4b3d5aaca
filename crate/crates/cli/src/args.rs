use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use devlat::semilinear::DEFAULT_CELL_LIMIT;
use devlat::vlat::DEFAULT_PIECE_LIMIT;

/// Deviations, monotone adjustment, separability witnesses and principal
/// ℓ-ideals of free vector lattices.
///
/// Exit status: 0 when the checked property holds, 1 when it fails (the
/// report carries a witness), 2 on bad input, 3 when a resource ceiling is
/// hit.
#[derive(Debug, Parser)]
#[command(name = "devlat", version)]
pub struct Cli {
    /// Print the JSON schema of every input and report format, then exit.
    #[arg(long, global = true)]
    pub schema: bool,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Ceiling on intermediate cells in semilinear set operations.
    #[arg(long, global = true, default_value_t = DEFAULT_CELL_LIMIT)]
    pub cell_limit: usize,
    /// Ceiling on pieces when linearizing a term.
    #[arg(long, global = true, default_value_t = DEFAULT_PIECE_LIMIT)]
    pub piece_limit: usize,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite distributive lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Deviations on a finite lattice.
    #[command(subcommand)]
    Deviation(DeviationCmd),
    /// Monotone adjustment of a map `M × M → D`.
    Adjust(AdjustArgs),
    /// Separability witnesses and strong amalgams.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Semilinear sets over ℚⁿ.
    #[command(subcommand)]
    Semilinear(SemilinearCmd),
    /// Principal ℓ-ideals of the free vector lattice.
    #[command(subcommand)]
    Vlat(VlatCmd),
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// Distributivity, 0-distributivity, complete normality, prime ideals.
    Check { lattice: PathBuf },
    /// Hasse diagram in DOT.
    Dot {
        lattice: PathBuf,
        /// Draw the poset of prime ideals instead.
        #[arg(long)]
        primes: bool,
    },
}

#[derive(Debug, Args)]
pub struct Constraints {
    /// Require isotone in the first and antitone in the second argument.
    #[arg(long)]
    pub monotone: bool,
    /// Require `d(x, z) ≤ d(x, y) ∨ d(y, z)`.
    #[arg(long)]
    pub cevian: bool,
}

#[derive(Debug, Subcommand)]
pub enum DeviationCmd {
    /// Check both axioms and report monotonicity and the Cevian property.
    Check {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        table: PathBuf,
        #[command(flatten)]
        require: Constraints,
    },
    /// First deviation in search order, or a random one with `--random`.
    Search {
        #[arg(long)]
        lattice: PathBuf,
        #[command(flatten)]
        require: Constraints,
        /// Draw a random deviation from the seed (ignores constraints).
        #[arg(long, conflicts_with_all = ["monotone", "cevian"])]
        random: bool,
    },
    /// Up to `--limit` deviations in search order.
    Enumerate {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[command(flatten)]
        require: Constraints,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SweepArg {
    Full,
    Finitary,
}

#[derive(Debug, Args)]
pub struct AdjustArgs {
    /// Host lattice `D`.
    #[arg(long)]
    pub lattice: PathBuf,
    /// The map, in deviation format over the domain.
    #[arg(long)]
    pub map: PathBuf,
    /// Domain poset `M`; defaults to the carrier of the lattice.
    #[arg(long)]
    pub domain: Option<PathBuf>,
    /// Enumeration of the domain as comma separated ids; a seeded shuffle if
    /// absent.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long, value_enum, default_value_t = SweepArg::Full)]
    pub strategy: SweepArg,
}

#[derive(Debug, Subcommand)]
pub enum PosetCmd {
    /// Build a witness from an enumeration, or check a given one.
    Witness {
        poset: PathBuf,
        /// Comma separated ids; a seeded shuffle if absent.
        #[arg(long, conflicts_with = "check")]
        order: Option<String>,
        /// Witness file to validate instead.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Recover a block enumeration from a witness.
    Order {
        poset: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Check a strong amalgam and glue block witnesses built from seeded
    /// enumerations.
    Amalgam { spec: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ShadowKind {
    Upper,
    Lower,
}

#[derive(Debug, Subcommand)]
pub enum SemilinearCmd {
    /// Decide `T ⊆ S`.
    Includes { s: PathBuf, t: PathBuf },
    /// Upper or lower shadow over the variables `--vars` (1-based, e.g. `1,3`).
    Shadow {
        set: PathBuf,
        #[arg(long, default_value = "")]
        vars: String,
        #[arg(long, value_enum, default_value_t = ShadowKind::Upper)]
        kind: ShadowKind,
    },
}

#[derive(Debug, Args)]
pub struct TermDim {
    /// Number of generators `g0 … g{n-1}`.
    #[arg(long)]
    pub n: usize,
    /// Compare relative to the region `Ω_n` instead of all of ℚⁿ.
    #[arg(long)]
    pub omega: bool,
}

#[derive(Debug, Subcommand)]
pub enum VlatCmd {
    /// Decide `⟨g⟩ ≤ ⟨h⟩`.
    Leq {
        g: String,
        h: String,
        #[command(flatten)]
        dim: TermDim,
    },
    /// Decide `⟨g⟩∖⟨k⟩ ≤ (⟨g⟩∖⟨h⟩) ∨ (⟨h⟩∖⟨k⟩)`.
    Cevian {
        g: String,
        h: String,
        k: String,
        #[command(flatten)]
        dim: TermDim,
    },
    /// Mutual pseudocomplements of `(g0 − c·gα)⁺` and `(c·gα − g0)⁺` on
    /// probe terms, relative to `Ω_n`.
    PscomProbe {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long, default_value = "1")]
        c: String,
        /// File with one probe term per line.
        #[arg(long)]
        probes: Option<PathBuf>,
        /// Number of seeded random probes when no file is given.
        #[arg(long, default_value_t = 100)]
        random: usize,
        /// Depth of random probes.
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// The two final inequalities of the ladder argument, with witnesses.
    NoisoProbe {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        /// The coefficient `n`.
        #[arg(long = "n")]
        n_coeff: u32,
    },
}
