use clap::{Args, Parser, Subcommand, ValueEnum};
use irv_commlab::Candidate;
use irv_commlab::fooling::{Family, FoolingSpec};
use irv_commlab::rules::{AvgConfig, AvgException, AvgVariant, Rule, StvConfig, TieBreakPolicy};
use std::path::PathBuf;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "irv-commlab", version, about = "Tally, elicit and fool instant-runoff elections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count a profile under IRV, IRV-Average or STV.
    Tally(TallyArgs),
    /// Simulate an elicitation protocol and report its bit cost.
    Protocol(ProtocolArgs),
    /// Build, count and verify fooling sets.
    #[command(subcommand)]
    Fooling(FoolingCommand),
    /// Comma-separated table of exact and asymptotic log-cardinalities.
    Asymptotics(AsymptoticsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleKind {
    Irv,
    IrvAverage,
    Stv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Strict,
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExceptionArg {
    DeclareSmallest,
    EliminateLargest,
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    #[arg(long, value_enum, default_value = "irv")]
    pub rule: RuleKind,
    /// Seats, for STV.
    #[arg(short = 'k', long = "seats", default_value_t = 1)]
    pub k: usize,
    /// `lower`, `higher`, or `priority:2,0,1` (most favoured first).
    #[arg(long = "tie-break", default_value = "lower")]
    pub tie_break: String,
    #[arg(long, value_enum, default_value = "strict")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "eliminate-largest")]
    pub exception: ExceptionArg,
}

impl RuleArgs {
    pub fn tie_break(&self) -> Result<TieBreakPolicy, CliError> {
        parse_tie_break(&self.tie_break)
    }

    pub fn rule(&self) -> Result<Rule, CliError> {
        let tb = self.tie_break()?;
        Ok(match self.rule {
            RuleKind::Irv => Rule::Irv(tb),
            RuleKind::IrvAverage => Rule::IrvAverage(self.avg_config(), tb),
            RuleKind::Stv => Rule::Stv(StvConfig::new(self.k), tb),
        })
    }

    pub fn avg_config(&self) -> AvgConfig {
        AvgConfig {
            variant: match self.variant {
                VariantArg::Strict => AvgVariant::Strict,
                VariantArg::Weak => AvgVariant::Weak,
            },
            exception: match self.exception {
                ExceptionArg::DeclareSmallest => AvgException::DeclareSmallestIndexWinner,
                ExceptionArg::EliminateLargest => AvgException::EliminateLargestIndex,
            },
        }
    }
}

pub fn parse_tie_break(s: &str) -> Result<TieBreakPolicy, CliError> {
    match s {
        "lower" | "lower-index-wins" => Ok(TieBreakPolicy::LowerIndexWins),
        "higher" | "higher-index-wins" => Ok(TieBreakPolicy::HigherIndexWins),
        other => {
            let list = other
                .strip_prefix("priority:")
                .ok_or_else(|| CliError::Usage(format!("unknown tie-break policy `{other}`")))?;
            let order = parse_candidates(list)?;
            TieBreakPolicy::priority(order).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

pub fn parse_candidates(list: &str) -> Result<Vec<Candidate>, CliError> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map(Candidate::new)
                .map_err(|_| CliError::Usage(format!("`{t}` is not a candidate index")))
        })
        .collect()
}

#[derive(Debug, Args)]
pub struct TallyArgs {
    /// Profile file (`-` for standard input).
    pub profile: PathBuf,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// IRV only: run every round instead of stopping at a strict majority.
    #[arg(long)]
    pub no_majority_stop: bool,
    /// Print every round.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    pub profile: PathBuf,
    /// Single-peaked PPR; the profile must be single-peaked on the axis.
    #[arg(long, conflicts_with = "stv")]
    pub sp: bool,
    /// Axis order for `--sp`, e.g. `2,0,1,3`; identity by default.
    #[arg(long, requires = "sp")]
    pub axis: Option<String>,
    /// STV-PPR with `-k` seats.
    #[arg(long)]
    pub stv: bool,
    #[arg(short = 'k', long = "seats", default_value_t = 1)]
    pub k: usize,
    #[arg(long = "tie-break", default_value = "lower")]
    pub tie_break: String,
    /// Print the full query log.
    #[arg(long)]
    pub transcript: bool,
    /// Check the transcript against the protocol's worst-case bit budget.
    #[arg(long)]
    pub check_bounds: bool,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Irv,
    Sp,
    Stv,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(short = 'm', long = "candidates")]
    pub m: usize,
    /// Multiplicity ℓ.
    #[arg(short = 'l', long = "ell", default_value_t = 1)]
    pub ell: usize,
    /// Seats, for the STV family.
    #[arg(short = 'k', long = "seats")]
    pub k: Option<usize>,
    /// Append the tie-breaking voters.
    #[arg(long)]
    pub tiebreak_voters: bool,
}

impl SpecArgs {
    pub fn family(&self) -> Result<Family, CliError> {
        match (self.family, self.k) {
            (FamilyArg::Stv, Some(k)) => Ok(Family::Stv { k }),
            (FamilyArg::Stv, None) => Err(CliError::Usage("the stv family needs -k".into())),
            (_, Some(_)) => Err(CliError::Usage("-k applies to the stv family only".into())),
            (FamilyArg::Irv, None) => Ok(Family::Irv),
            (FamilyArg::Sp, None) => Ok(Family::Sp),
        }
    }

    pub fn spec(&self) -> Result<FoolingSpec, CliError> {
        FoolingSpec::new(self.family()?, self.m, self.ell, self.tiebreak_voters).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum FoolingCommand {
    /// Write the canonical member of a family as a profile file.
    Emit {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output path; standard output when omitted.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// One line per voter instead of `k x` runs.
        #[arg(long)]
        ungrouped: bool,
    },
    /// Exact cardinality, its natural log, and the asymptotic estimates.
    Count {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Check the fooling property exhaustively or on sampled pairs.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Every member and every pair.
    #[arg(long, conflicts_with = "sampled")]
    pub exhaustive: bool,
    /// Largest family `--exhaustive` will enumerate.
    #[arg(long, default_value_t = 100_000)]
    pub ceiling: u64,
    /// Number of random pairs.
    #[arg(long, requires = "seed")]
    pub sampled: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Rule to verify against; the family's own rule by default.
    #[arg(long = "rule", value_enum)]
    pub rule: Option<RuleKind>,
    #[arg(long = "tie-break", default_value = "lower")]
    pub tie_break: String,
    #[arg(long, value_enum, default_value = "strict")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "eliminate-largest")]
    pub exception: ExceptionArg,
    /// Also try every multi-voter mix when single swaps fail.
    #[arg(long)]
    pub full_search: bool,
    /// Worker count (capped by IRV_COMMLAB_THREADS).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Single worker, for reproducible timing.
    #[arg(long)]
    pub sequential: bool,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    /// Include elapsed time and worker count in structured output.
    #[arg(long)]
    pub timing: bool,
}

impl VerifyArgs {
    pub fn rule(&self, spec: &FoolingSpec) -> Result<Rule, CliError> {
        let tb = parse_tie_break(&self.tie_break)?;
        let k = spec.seats();
        Ok(match self.rule {
            None => match spec.default_rule() {
                Rule::Irv(_) => Rule::Irv(tb),
                Rule::Stv(cfg, _) => Rule::Stv(cfg, tb),
                other => other,
            },
            Some(kind) => RuleArgs {
                rule: kind,
                k,
                tie_break: self.tie_break.clone(),
                variant: self.variant,
                exception: self.exception,
            }
            .rule()?,
        })
    }
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(short = 'l', long = "ell", default_value_t = 1)]
    pub ell: usize,
    #[arg(short = 'k', long = "seats")]
    pub k: Option<usize>,
    /// Candidate counts; powers of two from 8 (4 for sp) to 4096 by default.
    #[arg(short = 'm', long = "candidates", value_delimiter = ',')]
    pub m: Vec<usize>,
}
