//! Brute-force ground truth: classify every secret of a given length,
//! enumerate whole strategy spaces, and check the construction against
//! them.
//!
//! Work is split into lexicographic rank ranges and merged in rank order,
//! so results are identical for any rayon pool size, including one.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::construct::{construct_general, ConstructError, GeneralOutcome};
use crate::game::{default_max_turns, is_offender, play, GameError, Outcome, VerdictKind};
use crate::perm::{
    enumerate_derangements, factorial, Direction, EnumerationLimit, PermError, Permutation,
    Permutations,
};
use crate::strategy::{csl_strategy, Strategy, StrategyError};

/// Largest strategy length for which the whole strategy space is checked.
pub const THEOREM_LIMIT: usize = 5;

/// Secrets per parallel work unit.
const CHUNK: u64 = 720;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CensusCounts {
    pub clean: u64,
    pub repeating: u64,
    pub looping: u64,
}

impl CensusCounts {
    /// Repeating plus looping.
    pub fn offenders(&self) -> u64 {
        self.repeating + self.looping
    }

    pub fn total(&self) -> u64 {
        self.clean + self.repeating + self.looping
    }

    fn add(&mut self, kind: VerdictKind) {
        match kind {
            VerdictKind::Clean => self.clean += 1,
            VerdictKind::Repeating => self.repeating += 1,
            VerdictKind::Looping => self.looping += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffenderCensus {
    pub strategy: Strategy,
    pub n: usize,
    pub counts: CensusCounts,
    /// Offending secrets in lexicographic order, when requested.
    pub offenders: Option<Vec<(Permutation, VerdictKind)>>,
    pub elapsed: Duration,
}

fn rank_chunks(n: usize) -> Vec<std::ops::Range<u64>> {
    let total = factorial(n);
    (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect()
}

/// Classifies every secret of the strategy's length.
pub fn census(
    strategy: &Strategy,
    keep_list: bool,
    limit: EnumerationLimit,
) -> Result<OffenderCensus, OracleError> {
    let n = strategy.len();
    limit.check(n)?;
    let start = Instant::now();
    let max_turns = default_max_turns(n);
    let chunks: Vec<(CensusCounts, Vec<(Permutation, VerdictKind)>)> = rank_chunks(n)
        .into_par_iter()
        .map(|ranks| {
            let mut counts = CensusCounts::default();
            let mut found = Vec::new();
            for secret in Permutations::range(n, ranks) {
                let kind = is_offender(strategy, &secret, max_turns)?.kind();
                counts.add(kind);
                if keep_list && kind != VerdictKind::Clean {
                    found.push((secret, kind));
                }
            }
            Ok((counts, found))
        })
        .collect::<Result<_, GameError>>()?;
    let mut counts = CensusCounts::default();
    let mut offenders = Vec::new();
    for (c, found) in chunks {
        counts.clean += c.clean;
        counts.repeating += c.repeating;
        counts.looping += c.looping;
        offenders.extend(found);
    }
    Ok(OffenderCensus {
        strategy: strategy.clone(),
        n,
        counts,
        offenders: keep_list.then_some(offenders),
        elapsed: start.elapsed(),
    })
}

/// Full censuses of CSL for `n = 4..=n_max`.
pub fn csl_censuses(
    n_max: usize,
    limit: EnumerationLimit,
) -> Result<Vec<OffenderCensus>, OracleError> {
    if n_max >= 4 {
        limit.check(n_max)?;
    }
    (4..=n_max)
        .map(|n| census(&csl_strategy(n)?, false, limit))
        .collect()
}

/// Offender totals of CSL for `n = 4..=n_max`.
pub fn csl_sequence(
    n_max: usize,
    limit: EnumerationLimit,
) -> Result<Vec<(usize, u64)>, OracleError> {
    Ok(csl_censuses(n_max, limit)?
        .into_iter()
        .map(|c| (c.n, c.counts.offenders()))
        .collect())
}

/// Every strategy of length `n`: one derangement per level `3..=n`, with
/// the level-3 choice varying slowest.
pub fn enumerate_strategies(
    n: usize,
    limit: EnumerationLimit,
) -> Result<impl Iterator<Item = Strategy>, OracleError> {
    limit.check(n)?;
    let levels: Vec<Vec<Permutation>> = (3..=n)
        .map(|k| Ok(enumerate_derangements(k, limit)?.collect()))
        .collect::<Result<_, PermError>>()?;
    let fixed = [
        Permutation::identity_unchecked(1),
        Permutation::from_vec_unchecked(vec![2, 1]),
    ];
    let fixed_len = n.min(2);
    let choices: Box<dyn Iterator<Item = Vec<Permutation>>> = if levels.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(levels.into_iter().multi_cartesian_product())
    };
    Ok(choices.map(move |upper| {
        let mut components = fixed[..fixed_len].to_vec();
        components.extend(upper);
        Strategy::new(components).expect("enumerated components are derangements")
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureShiftCheck {
    pub strategy: Strategy,
    pub direction: Direction,
    pub offenders: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremFailure {
    pub strategy: Strategy,
    pub omega: Option<Permutation>,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub n: usize,
    pub strategies_checked: usize,
    pub failures: Vec<TheoremFailure>,
    pub cs_exceptions: Vec<PureShiftCheck>,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

enum StrategyCheck {
    Pure(PureShiftCheck, Option<TheoremFailure>),
    Constructed(Option<TheoremFailure>),
}

fn check_strategy(
    strategy: Strategy,
    limit: EnumerationLimit,
) -> Result<StrategyCheck, OracleError> {
    let n = strategy.len();
    if let Some(direction) = strategy.pure_shift_direction() {
        let offenders = census(&strategy, false, limit)?.counts.offenders();
        let failure = (offenders > 0).then(|| TheoremFailure {
            strategy: strategy.clone(),
            omega: None,
            verdict: format!("pure {direction} shift has {offenders} offenders"),
        });
        return Ok(StrategyCheck::Pure(
            PureShiftCheck {
                strategy,
                direction,
                offenders,
            },
            failure,
        ));
    }
    let fail = |omega: Option<Permutation>, verdict: String| {
        Ok(StrategyCheck::Constructed(Some(TheoremFailure {
            strategy: strategy.clone(),
            omega,
            verdict,
        })))
    };
    let offender = match construct_general(&strategy) {
        Ok(GeneralOutcome::Offender(o)) => o,
        Ok(GeneralOutcome::NoOffender) => {
            return fail(None, "construction reported no offender".into())
        }
        Err(ConstructError::Unverified { omega, verdict, .. }) => {
            return fail(Some(omega), verdict)
        }
        Err(e) => return fail(None, e.to_string()),
    };
    // Independent replay of the constructed secret.
    match is_offender(&strategy, &offender.omega, default_max_turns(n)) {
        Ok(v) if v.is_offender() => Ok(StrategyCheck::Constructed(None)),
        Ok(v) => fail(Some(offender.omega.clone()), v.kind().as_str().into()),
        Err(e) => fail(Some(offender.omega.clone()), e.to_string()),
    }
}

/// Checks every strategy of length `n <= 5`: pure shifts must have no
/// offenders at all, every other strategy must get a replay-confirmed
/// constructed offender.
pub fn verify_theorem(n: usize, limit: EnumerationLimit) -> Result<TheoremReport, OracleError> {
    EnumerationLimit(THEOREM_LIMIT).check(n)?;
    let strategies: Vec<Strategy> = enumerate_strategies(n, limit)?.collect();
    let checks: Vec<StrategyCheck> = strategies
        .into_par_iter()
        .map(|s| check_strategy(s, limit))
        .collect::<Result<_, _>>()?;
    let mut report = TheoremReport {
        n,
        strategies_checked: checks.len(),
        failures: Vec::new(),
        cs_exceptions: Vec::new(),
    };
    for check in checks {
        match check {
            StrategyCheck::Pure(pure, failure) => {
                report.cs_exceptions.push(pure);
                report.failures.extend(failure);
            }
            StrategyCheck::Constructed(failure) => report.failures.extend(failure),
        }
    }
    Ok(report)
}

/// Number of secrets solved in each turn count, plus looping secrets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessDistribution {
    pub n: usize,
    pub solved: BTreeMap<usize, u64>,
    pub looping: u64,
}

impl GuessDistribution {
    pub fn total(&self) -> u64 {
        self.solved.values().sum::<u64>() + self.looping
    }
}

pub fn guess_distribution(
    strategy: &Strategy,
    limit: EnumerationLimit,
) -> Result<GuessDistribution, OracleError> {
    let n = strategy.len();
    limit.check(n)?;
    let max_turns = default_max_turns(n);
    let outcomes: Vec<Vec<Outcome>> = rank_chunks(n)
        .into_par_iter()
        .map(|ranks| {
            Permutations::range(n, ranks)
                .map(|secret| Ok(play(&secret, strategy, max_turns)?.outcome))
                .collect::<Result<Vec<_>, GameError>>()
        })
        .collect::<Result<_, _>>()?;
    let mut dist = GuessDistribution {
        n,
        solved: BTreeMap::new(),
        looping: 0,
    };
    for outcome in outcomes.into_iter().flatten() {
        match outcome {
            Outcome::Solved { turns } => *dist.solved.entry(turns).or_insert(0) += 1,
            Outcome::LoopDetected { .. } => dist.looping += 1,
            Outcome::Aborted { max_turns } => return Err(GameError::Aborted { max_turns }.into()),
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{cs_strategy, inductive_strategy, lcs_strategy};

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    const LIMIT: EnumerationLimit = EnumerationLimit(8);

    #[test]
    fn census_examples() {
        let c = census(&csl_strategy(4).unwrap(), true, LIMIT).unwrap();
        assert_eq!(c.counts.offenders(), 4);
        assert_eq!(c.counts.total(), 24);
        assert_eq!(c.offenders.as_ref().unwrap().len(), 4);

        let c = census(&cs_strategy(6).unwrap(), false, LIMIT).unwrap();
        assert_eq!(c.counts.clean, 720);
        assert_eq!(c.counts.offenders(), 0);
        assert!(c.offenders.is_none());

        let c = census(
            &inductive_strategy(&p(&[2, 1, 4, 3]), Direction::Right).unwrap(),
            true,
            LIMIT,
        )
        .unwrap();
        assert!(c.counts.looping >= 1);
        assert!(c
            .offenders
            .unwrap()
            .contains(&(p(&[3, 4, 1, 2]), VerdictKind::Looping)));
    }

    #[test]
    fn census_respects_limit() {
        assert_eq!(
            census(&cs_strategy(4).unwrap(), false, EnumerationLimit(3)).unwrap_err(),
            OracleError::Perm(PermError::LimitExceeded { n: 4, limit: 3 })
        );
    }

    #[test]
    fn csl_sequence_prefixes() {
        assert_eq!(csl_sequence(4, LIMIT).unwrap(), vec![(4, 4)]);
        assert_eq!(
            csl_sequence(6, LIMIT).unwrap(),
            vec![(4, 4), (5, 35), (6, 244)]
        );
        assert!(csl_sequence(3, LIMIT).unwrap().is_empty());
        assert!(csl_sequence(9, LIMIT).is_err());
    }

    #[test]
    fn strategy_space_sizes() {
        assert_eq!(enumerate_strategies(3, LIMIT).unwrap().count(), 2);
        assert_eq!(enumerate_strategies(4, LIMIT).unwrap().count(), 18);
        assert_eq!(enumerate_strategies(5, LIMIT).unwrap().count(), 792);
        assert_eq!(enumerate_strategies(1, LIMIT).unwrap().count(), 1);
        assert_eq!(enumerate_strategies(2, LIMIT).unwrap().count(), 1);
        let all: Vec<_> = enumerate_strategies(4, LIMIT).unwrap().collect();
        assert_eq!(all[0].component(3), &p(&[2, 3, 1]));
        assert_eq!(all[17].component(3), &p(&[3, 1, 2]));
        assert_eq!(all.iter().unique().count(), 18);
    }

    #[test]
    fn theorem_small_n() {
        let r = verify_theorem(3, LIMIT).unwrap();
        assert_eq!(r.strategies_checked, 2);
        assert_eq!(r.cs_exceptions.len(), 2);
        assert!(r.cs_exceptions.iter().all(|c| c.offenders == 0));
        assert!(r.holds());

        let r = verify_theorem(4, LIMIT).unwrap();
        assert_eq!(r.strategies_checked, 18);
        assert!(r.holds(), "{:?}", r.failures);
        assert!(matches!(
            verify_theorem(6, LIMIT),
            Err(OracleError::Perm(PermError::LimitExceeded {
                n: 6,
                limit: 5
            }))
        ));
    }

    #[test]
    fn distribution_examples() {
        let d = guess_distribution(&cs_strategy(1).unwrap(), LIMIT).unwrap();
        assert_eq!(d.solved, BTreeMap::from([(1, 1)]));
        assert_eq!(d.looping, 0);

        let d = guess_distribution(&cs_strategy(4).unwrap(), LIMIT).unwrap();
        assert_eq!(d.total(), 24);
        assert_eq!(d.looping, 0);

        let d = guess_distribution(
            &inductive_strategy(&p(&[2, 1, 4, 3]), Direction::Right).unwrap(),
            LIMIT,
        )
        .unwrap();
        assert!(d.looping >= 1);

        // Only the identity solves on the first guess.
        let d = guess_distribution(&lcs_strategy(5).unwrap(), LIMIT).unwrap();
        assert_eq!(d.solved[&1], 1);
    }
}
