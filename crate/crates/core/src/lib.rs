//! Permutation wordle analysis.
//!
//! A player guesses permutations of `1..=n`, starting from the identity, and
//! after each guess learns which positions are correct. A *strategy* fixes,
//! for every number `k` of incorrect positions, a derangement of length `k`
//! used to rearrange those entries for the next guess.
//!
//! This crate simulates such games ([`game`]), builds secrets that make a
//! strategy repeat an incorrect guess ([`construct`]), and checks all of it
//! by exhaustive enumeration at small `n` ([`oracle`]).
//!
//! ```
//! use permwordle::{construct_general, cs_strategy, csl_strategy, GeneralOutcome};
//!
//! let offender = construct_general(&csl_strategy(5).unwrap()).unwrap();
//! assert_eq!(offender.offender().unwrap().omega.to_string(), "[2,5,1,3,4]");
//! assert_eq!(construct_general(&cs_strategy(5).unwrap()).unwrap(), GeneralOutcome::NoOffender);
//! ```

pub mod construct;
pub mod game;
pub mod oracle;
pub mod perm;
pub mod report;
pub mod strategy;

pub use construct::{
    classify_top, construct_contains2, construct_general, construct_inductive,
    construct_involution, construct_min_mu, csl_offender, csr_offender, loop_offender, CaseTag,
    ConstructError, ConstructedOffender, ConstructionCase, GeneralOutcome,
};
pub use game::{
    default_max_turns, feedback, is_offender, next_guess, play, play_with, repetition_events,
    GameError, GuessRecord, Outcome, PlayOptions, RepetitionEvent, Transcript, Verdict,
    VerdictKind,
};
pub use oracle::{
    census, csl_censuses, csl_sequence, enumerate_strategies, guess_distribution, verify_theorem,
    CensusCounts, GuessDistribution, OffenderCensus, OracleError, TheoremReport,
};
pub use perm::{
    enumerate_derangements, enumerate_permutations, CycleDecomposition, Direction,
    DisplacementVector, EnumerationLimit, PermError, Permutation,
};
pub use strategy::{
    cs_strategy, csl_strategy, csr_strategy, inductive_strategy, lcs_strategy,
    left_shift_component, parse_strategy_spec, right_shift_component, validate_strategy, Strategy,
    StrategyError,
};
