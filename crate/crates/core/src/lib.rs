//! Instant-runoff voting and its relatives, seen through the lens of
//! communication complexity.
//!
//! The crate is organised in four layers:
//!
//! * [`ballot`]: candidates, rankings, profiles, the grouped profile text
//!   format, voter-wise mixing, single-peakedness and seeded generators.
//! * [`rules`]: exact, trace-producing IRV, IRV-Average and STV tallies.
//! * [`elicitation`]: the progressive preference revelation protocols (plain,
//!   single-peaked and STV) run against simulated voters, with per-query bit
//!   accounting.
//! * [`fooling`]: signatures, representatives, fooling-set construction,
//!   exact and logarithmic cardinalities, and an empirical fooling-property
//!   verifier.

pub mod ballot;
pub mod elicitation;
pub mod fooling;
pub mod rules;

pub use ballot::{Axis, Candidate, Profile, ProfileError, Ranking};
pub use elicitation::{Transcript, run_ppr, run_sp_ppr, run_stv_ppr};
pub use fooling::{Family, FoolingSpec, Signature};
pub use rules::{AvgConfig, StvConfig, TallyTrace, TieBreakPolicy};
