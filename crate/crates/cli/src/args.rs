use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "chromatic", version, about = "Exact arithmetic behind Greek-letter families, Honda-Tate types, hermitian forms, buildings and chromatic level one")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// q-expansion precision (number of coefficients).
    #[arg(long, global = true)]
    pub prec: Option<usize>,
    /// Directory of the q-expansion cache (overrides CHROMATIC_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Largest pole order at the cusp.
    #[arg(long, global = true)]
    pub mmax: Option<u32>,
    /// Enumeration budget for building searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Level l forms admitted as defects in B.
    #[arg(long, global = true, value_enum)]
    pub witness_space: Option<SpaceArg>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Old,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtArg {
    None,
    Inert,
    Ramified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Standard,
    Other,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Existence of the invariants x_{i/j} and x_{i/j,k}.
    #[command(subcommand)]
    Greek(GreekCmd),
    /// Congruence groups A and B, and Serre's congruence check.
    #[command(subcommand)]
    Congruence(CongruenceCmd),
    /// Newton polygon from slopes.
    Newton(NewtonArgs),
    /// Invariants of a p-adic type.
    Hondatate(HondaTateArgs),
    /// Local and global classes of hermitian forms.
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Lattice chains in Bruhat-Tits buildings.
    #[command(subcommand)]
    Building(BuildingCmd),
    /// Chromatic level one over an imaginary quadratic field.
    #[command(subcommand)]
    Level1(Level1Cmd),
}

#[derive(Debug, Subcommand)]
pub enum GreekCmd {
    /// x_{i/j} in degree t.
    Alpha {
        #[arg(short)]
        p: u64,
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
        #[arg(short)]
        j: u32,
    },
    /// x_{i/j,k}.
    Beta {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        i: u64,
        #[arg(short)]
        j: u64,
        #[arg(short)]
        k: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CongruenceCmd {
    /// A_(t;j).
    #[command(name = "A", alias = "a")]
    A {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 2)]
        l: u64,
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
        #[arg(short)]
        j: u32,
    },
    /// B_(t;j,k).
    #[command(name = "B", alias = "b")]
    B {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 2)]
        l: u64,
        #[arg(short, allow_negative_numbers = true)]
        t: i64,
        #[arg(short)]
        j: i64,
        #[arg(short)]
        k: u32,
    },
    /// Serre's theorem for two congruent forms, given as products of E4, E6, ..., Delta.
    Serre {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        k: u32,
        /// e.g. `1`, `E4^5`, `E4*Delta^-1`.
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
    },
}

#[derive(Debug, Args)]
pub struct NewtonArgs {
    /// Comma-separated slopes `d/h`, optionally with multiplicity `d/hxm`.
    #[arg(long)]
    pub slopes: String,
}

#[derive(Debug, Args)]
pub struct HondaTateArgs {
    /// JSON file with `p`, `places`, `conj`, `degree`, `real_places`, `eta`.
    #[arg(long = "type", conflicts_with = "split_height")]
    pub type_file: Option<PathBuf>,
    /// Split imaginary quadratic type (1/n, (n-1)/n).
    #[arg(long)]
    pub split_height: Option<u64>,
    #[arg(short, default_value_t = 5)]
    pub p: u64,
}

#[derive(Debug, Subcommand)]
pub enum FormsCmd {
    /// Class of a diagonal form at one place.
    Local {
        #[arg(short, allow_negative_numbers = true)]
        d: i64,
        /// A prime or `inf`.
        #[arg(long)]
        place: String,
        /// Comma-separated diagonal entries.
        #[arg(long, allow_hyphen_values = true)]
        entries: String,
    },
    /// Global existence from a diagonal form or from local data.
    Global {
        #[arg(short, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "local"])]
        entries: Option<String>,
        #[arg(short)]
        n: Option<u64>,
        /// `l:c` with `c` in {0, 1}, or `inf:p,q`; repeatable.
        #[arg(long)]
        local: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BuildingCmd {
    /// The standard chamber.
    Chamber {
        #[arg(short)]
        l: u64,
        #[arg(long, value_enum, default_value_t = ExtArg::None)]
        ext: ExtArg,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BranchArg::Standard)]
        branch: BranchArg,
    },
    /// Vertices of B(SL_n) near the standard vertex.
    Ball {
        #[arg(short)]
        l: u64,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        radius: u32,
    },
    /// Orbits of s-simplices of B(U).
    Skeleton {
        #[arg(short)]
        l: u64,
        #[arg(long, value_enum, default_value_t = ExtArg::Inert)]
        ext: ExtArg,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        s: usize,
        #[arg(long, value_enum, default_value_t = BranchArg::Standard)]
        branch: BranchArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum Level1Cmd {
    /// Class group by reduced forms.
    Classgroup {
        #[arg(short, allow_negative_numbers = true)]
        d: i64,
    },
    /// Split prime l giving a topological generator q = t/t^c.
    Genprime {
        #[arg(short, allow_negative_numbers = true)]
        d: i64,
        #[arg(short)]
        p: u64,
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
    },
    /// Orders p^nu_p(k^t - 1) for even t.
    Jorders {
        #[arg(short)]
        p: u64,
        /// Defaults to the least generator of (Z/p^2)^*.
        #[arg(short)]
        k: Option<u64>,
        #[arg(long, default_value_t = 2)]
        tmin: u64,
        #[arg(long, default_value_t = 40)]
        tmax: u64,
    },
    /// Decomposition group order f and number of factors.
    Decomp {
        #[arg(short, allow_negative_numbers = true)]
        d: i64,
        #[arg(short)]
        p: u64,
    },
}
