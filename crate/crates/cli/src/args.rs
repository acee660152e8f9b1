//! Command-line grammar. Simple-root indices are 1-based on the command line and
//! converted to 0-based here.

use clap::{Args, Parser, Subcommand, ValueEnum};
use splitcheck::grassmod::{GrassmannianModel, ModelKind, SubFamily};
use splitcheck::rootsys::CartanType;

#[derive(Debug, Parser)]
#[command(
    name = "splitcheck",
    version,
    about = "Exact root-system, cohomology and positivity computations for homogeneous varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan data of a simple type, and of G/P when a Levi is given.
    Dynkin(DynkinArgs),
    /// Decide whether every line bundle on G/P has vanishing first cohomology.
    Onesplit(OnesplitArgs),
    /// Cohomology of the line bundle of a weight.
    Bwb(BwbArgs),
    /// Fixed-point decomposition of a one-parameter subgroup acting on G/P.
    Bb(BbArgs),
    /// Positivity of a catalogued subvariety, or one rule of the positivity calculus.
    Ppos(PposArgs),
    /// Plan a reduction of a Grassmannian model to its terminal case.
    Reduce(ReduceArgs),
    /// Every catalogued positivity statement for a model.
    Catalog(CatalogArgs),
    /// Compare a catalogued value with a fixed-point computation.
    Crosscheck(CrosscheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    /// Only accepted by `catalog`.
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Hyperplane,
    Point,
    Lagrangian,
}

impl From<FamilyArg> for SubFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Hyperplane => SubFamily::Hyperplane,
            FamilyArg::Point => SubFamily::Point,
            FamilyArg::Lagrangian => SubFamily::Lagrangian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    /// dim_sub, q
    QampleToPpos,
    /// dim_sub, p
    PposToQample,
    /// q, codim
    Blowup,
    /// q_exceptional, codim
    BlowupInverse,
    /// dim_x, dim_y, dim_z, r, p
    Transitivity,
    /// dim_x, dim_image
    Fiber,
    /// dim_x, rank, q
    SommeseZeroLocus,
    /// p
    Pullback,
    /// q, fibre_dim
    PullbackLine,
    /// codim, p
    Intersections,
    /// dim_x, codim, cd
    IntersectionsCd,
    /// dim_x, rank, q
    PicZeroLociSommese,
    /// rank, fibre_dim
    PicZeroLociFiber,
    /// p
    PicRestriction,
    /// rank, u
    SommeseVsFiber,
    /// k, D, kappa
    PicCyclic,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DynkinArgs {
    /// Simple type, e.g. A5 or E8.
    #[arg(long = "type", value_parser = parse_type)]
    pub cartan_type: CartanType,
    /// Levi simple roots, 1-based and comma separated; empty for a Borel.
    #[arg(long, value_parser = parse_indices)]
    pub levi: Option<Indices>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OnesplitArgs {
    #[arg(long = "type", value_parser = parse_type)]
    pub cartan_type: CartanType,
    #[arg(long, value_parser = parse_indices)]
    pub levi: Indices,
    /// Bound on the coefficient sum searched for a witness.
    #[arg(long, default_value_t = splitcheck::parabolic::DEFAULT_WITNESS_BOUND)]
    pub bound: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BwbArgs {
    #[arg(long = "type", value_parser = parse_type)]
    pub cartan_type: CartanType,
    /// Weight in fundamental-weight coordinates, e.g. -3,0,0.
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    pub weight: Ints,
    /// If given, the weight must lie in the Picard lattice of G/P.
    #[arg(long, value_parser = parse_indices)]
    pub levi: Option<Indices>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BbArgs {
    #[arg(long = "type", value_parser = parse_type)]
    pub cartan_type: CartanType,
    #[arg(long, value_parser = parse_indices)]
    pub levi: Indices,
    /// Pairings of the one-parameter subgroup with the simple roots.
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    pub lambda: Ints,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PposArgs {
    /// Grassmannian model, e.g. sp:3,10,0.
    #[arg(long, value_parser = parse_model, required_unless_present = "rule")]
    pub model: Option<GrassmannianModel>,
    #[arg(long, value_enum, requires = "model")]
    pub family: Option<FamilyArg>,
    /// A rule of the positivity calculus.
    #[arg(long, value_enum, conflicts_with_all = ["model", "family"], requires = "args")]
    pub rule: Option<RuleArg>,
    /// Integer arguments of the rule.
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    pub args: Option<Ints>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: GrassmannianModel,
    /// Exit with code 3 if any check fails or a result rests on an unverified claim.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: GrassmannianModel,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: GrassmannianModel,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// 0-based simple-root indices. A newtype so that clap does not treat the flag as
/// repeatable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indices(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ints(pub Vec<i64>);

pub fn parse_type(s: &str) -> Result<CartanType, String> {
    s.parse::<CartanType>().map_err(|e| e.to_string())
}

pub fn parse_ints(s: &str) -> Result<Ints, String> {
    if s.trim().is_empty() {
        return Ok(Ints(Vec::new()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("'{t}' is not an integer"))
        })
        .collect::<Result<_, _>>()
        .map(Ints)
}

pub fn parse_indices(s: &str) -> Result<Indices, String> {
    let mut out = Vec::new();
    for v in parse_ints(s)?.0 {
        if v < 1 {
            return Err(format!(
                "index {v} is not allowed: simple roots are numbered from 1"
            ));
        }
        let i = v as usize - 1;
        if out.contains(&i) {
            return Err(format!("index {v} is repeated"));
        }
        out.push(i);
    }
    out.sort_unstable();
    Ok(Indices(out))
}

/// `kind:k,D[,κ]` with kind one of `gl`, `sp`, `o`. For `sp` the kernel dimension
/// defaults to the parity of `D`.
pub fn parse_model(s: &str) -> Result<GrassmannianModel, String> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| format!("'{s}' is not of the form kind:k,D[,kappa]"))?;
    let kind = match kind {
        "gl" => ModelKind::Linear,
        "sp" => ModelKind::Symplectic,
        "o" => ModelKind::Orthogonal,
        other => {
            return Err(format!(
                "unknown model kind '{other}' (expected gl, sp or o)"
            ))
        }
    };
    let nums = parse_ints(rest)?.0;
    let (k, d, kappa) = match (kind, nums.as_slice()) {
        (_, [k, d, kappa]) => (*k, *d, *kappa),
        (ModelKind::Symplectic, [k, d]) => (*k, *d, d.rem_euclid(2)),
        (_, [k, d]) => (*k, *d, 0),
        _ => return Err(format!("'{s}' needs two or three integers after the colon")),
    };
    GrassmannianModel::new(kind, k, d, kappa).map_err(|e| e.to_string())
}
