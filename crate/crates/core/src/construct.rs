//! Constructions of offending permutations: secrets for which a strategy
//! guesses some incorrect value in the same position twice.
//!
//! Right-base casework reads the displacement vector `D` of the inverse top
//! component, i.e. of the second guess against any derangement secret.
//! Left-base strategies are handled by mirror conjugation: relabelling
//! positions and values by `i -> n + 1 - i` commutes with feedback and with
//! component application, and swaps right and left shifts.
//!
//! Every constructor replays the game and only returns offenders that the
//! replay confirms.

use thiserror::Error;

use crate::game::{default_max_turns, play, GameError, Transcript, Verdict};
use crate::perm::{Direction, Permutation};
use crate::strategy::{
    csl_strategy, csr_strategy, inductive_strategy, left_shift_component, right_shift_component,
    shift_component, Strategy, StrategyError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("{construction}: {reason}")]
    Precondition {
        construction: &'static str,
        reason: String,
    },
    #[error("replay does not confirm {omega} as an offender for {strategy}: {verdict}")]
    Unverified {
        omega: Permutation,
        strategy: String,
        verdict: String,
    },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

fn precondition(construction: &'static str, reason: impl Into<String>) -> ConstructError {
    ConstructError::Precondition {
        construction,
        reason: reason.into(),
    }
}

/// Which construction applies. Parameters are in the coordinates of the
/// right-base construction (mirrored for left-base strategies).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstructionCase {
    /// `D` contains a 2. `k` is the scanned index set, `locked` the
    /// positions `k + 1` pinned to the second guess.
    Contains2 { k: Vec<usize>, locked: Vec<usize> },
    /// No 2 in `D`; `mu` is the least non-1 entry, first seen at `iota`.
    MinMu {
        mu: usize,
        iota: usize,
        locked: Vec<usize>,
    },
    /// `D` alternates between 1 and `n - 1`: adjacent transpositions.
    InvolutionAlternating,
    /// The top component `[3,4,1,2]`.
    AllTwoSpecial,
    /// Opposite-direction shift on top of a right base.
    SubCsl,
    /// Opposite-direction shift on top of a left base.
    SubCsr,
    /// Loop built by pairing equal-length cycles of the top component.
    CyclePairing,
    /// Pure cyclic shift strategy.
    NoOffender,
}

/// Dispatch result without construction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    Contains2,
    MinMu,
    InvolutionAlternating,
    AllTwoSpecial,
    SubCsl,
    SubCsr,
    CyclePairing,
    NoOffender,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Contains2 => "contains_2",
            CaseTag::MinMu => "min_mu",
            CaseTag::InvolutionAlternating => "involution_alternating",
            CaseTag::AllTwoSpecial => "all_two_special",
            CaseTag::SubCsl => "sub_csl",
            CaseTag::SubCsr => "sub_csr",
            CaseTag::CyclePairing => "cycle_pairing",
            CaseTag::NoOffender => "no_offender",
        }
    }
}

impl ConstructionCase {
    pub fn tag(&self) -> CaseTag {
        match self {
            ConstructionCase::Contains2 { .. } => CaseTag::Contains2,
            ConstructionCase::MinMu { .. } => CaseTag::MinMu,
            ConstructionCase::InvolutionAlternating => CaseTag::InvolutionAlternating,
            ConstructionCase::AllTwoSpecial => CaseTag::AllTwoSpecial,
            ConstructionCase::SubCsl => CaseTag::SubCsl,
            ConstructionCase::SubCsr => CaseTag::SubCsr,
            ConstructionCase::CyclePairing => CaseTag::CyclePairing,
            ConstructionCase::NoOffender => CaseTag::NoOffender,
        }
    }
}

/// A replay-confirmed offender.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedOffender {
    pub omega: Permutation,
    pub case: ConstructionCase,
    /// Direction of the shift components below the top.
    pub base: Direction,
    /// Length of the constructed prefix; entries after it are fixed points.
    pub prefix_len: usize,
    pub evidence: Transcript,
}

impl ConstructedOffender {
    pub fn verdict(&self) -> Verdict {
        self.evidence
            .verdict()
            .expect("constructed offenders carry a finished transcript")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralOutcome {
    Offender(Box<ConstructedOffender>),
    NoOffender,
}

impl GeneralOutcome {
    pub fn offender(&self) -> Option<&ConstructedOffender> {
        match self {
            GeneralOutcome::Offender(o) => Some(o),
            GeneralOutcome::NoOffender => None,
        }
    }
}

fn all_two_special() -> Permutation {
    Permutation::from_vec_unchecked(vec![3, 4, 1, 2])
}

/// Dispatch for a top component over a base of `base`-direction shifts.
/// Lengths below 4 only admit shift components and map to `NoOffender`.
pub fn classify_top(top: &Permutation, base: Direction) -> CaseTag {
    let n = top.len();
    if n < 4 || *top == shift_component(n, base) {
        return CaseTag::NoOffender;
    }
    let d = match base {
        Direction::Right => top.inverse().displacement(),
        Direction::Left => top.inverse().left_displacement(),
    };
    if d.all_in(&[1]) {
        return match base {
            Direction::Right => CaseTag::SubCsl,
            Direction::Left => CaseTag::SubCsr,
        };
    }
    if *top == all_two_special() {
        CaseTag::AllTwoSpecial
    } else if d.all_in(&[1, n - 1]) {
        CaseTag::InvolutionAlternating
    } else if d.contains(2) {
        CaseTag::Contains2
    } else {
        CaseTag::MinMu
    }
}

/// Pins `omega[i] = second[i]` on `locked` and moves every other entry of
/// `second` two steps rightward along the unlocked positions, cyclically.
fn lock_and_double_shift(second: &Permutation, locked: &[usize]) -> Permutation {
    let n = second.len();
    let mut omega = vec![0; n];
    for &i in locked {
        omega[i - 1] = second.get(i);
    }
    let unlocked: Vec<usize> = (1..=n).filter(|i| !locked.contains(i)).collect();
    let m = unlocked.len();
    for (j, &from) in unlocked.iter().enumerate() {
        omega[unlocked[(j + 2) % m] - 1] = second.get(from);
    }
    Permutation::from_vec_unchecked(omega)
}

fn require_derangement(
    construction: &'static str,
    top: &Permutation,
) -> Result<(), ConstructError> {
    if top.is_derangement() {
        Ok(())
    } else {
        Err(precondition(
            construction,
            format!("{top} is not a derangement"),
        ))
    }
}

fn contains2_omega(top: &Permutation) -> Result<(Permutation, ConstructionCase), ConstructError> {
    const NAME: &str = "contains-2 construction";
    require_derangement(NAME, top)?;
    let n = top.len();
    if n < 4 {
        return Err(precondition(NAME, format!("length {n} < 4")));
    }
    if *top == all_two_special() {
        return Err(precondition(NAME, "[3,4,1,2] needs the loop construction"));
    }
    let second = top.inverse();
    let d = second.displacement();
    if !d.contains(2) {
        return Err(precondition(NAME, "displacement of the inverse has no 2"));
    }
    let cap = n - 3;
    let mut k: Vec<usize> = Vec::new();
    for i in 1..=n {
        if k.len() == cap {
            break;
        }
        // n and 1 are cyclically adjacent too.
        let adjacent = k.contains(&(i - 1)) || (i == n && k.contains(&1));
        if d.get(i) == 2 && !adjacent {
            k.push(i);
        }
    }
    // Only matters once the cap admits both ends; at n = 4 the scan has
    // already stopped at K = {1}.
    if cap >= 2 && d.get(1) == 2 && d.get(n) == 2 && (2..n).all(|j| d.get(j) != 2) {
        k = vec![n];
    }
    let mut locked: Vec<usize> = k.iter().map(|&i| i % n + 1).collect();
    locked.sort_unstable();
    let omega = lock_and_double_shift(&second, &locked);
    Ok((omega, ConstructionCase::Contains2 { k, locked }))
}

fn min_mu_omega(top: &Permutation) -> Result<(Permutation, ConstructionCase), ConstructError> {
    const NAME: &str = "min-mu construction";
    require_derangement(NAME, top)?;
    let n = top.len();
    if n < 5 {
        return Err(precondition(NAME, format!("length {n} < 5")));
    }
    let second = top.inverse();
    let d = second.displacement();
    if d.contains(2) {
        return Err(precondition(NAME, "displacement of the inverse contains 2"));
    }
    let mu = d
        .values()
        .iter()
        .copied()
        .filter(|&e| e != 1)
        .min()
        .filter(|&mu| (3..=n - 2).contains(&mu))
        .ok_or_else(|| precondition(NAME, "no displacement entry in 3..n-2"))?;
    let iota = d
        .values()
        .iter()
        .position(|&e| e == mu)
        .expect("mu occurs in D")
        + 1;
    let mut locked: Vec<usize> = (1..mu).map(|k| (iota + k - 1) % n + 1).collect();
    locked.sort_unstable();
    let omega = lock_and_double_shift(&second, &locked);
    Ok((omega, ConstructionCase::MinMu { mu, iota, locked }))
}

fn involution_omega(top: &Permutation) -> Result<(Permutation, ConstructionCase), ConstructError> {
    const NAME: &str = "involution construction";
    require_derangement(NAME, top)?;
    let n = top.len();
    if *top == all_two_special() {
        return Ok((
            Permutation::from_vec_unchecked(vec![2, 1, 4, 3]),
            ConstructionCase::AllTwoSpecial,
        ));
    }
    let d = top.inverse().displacement();
    if n < 4 || !d.all_in(&[1, n - 1]) || d.all_in(&[1]) || d.all_in(&[n - 1]) {
        return Err(precondition(
            NAME,
            format!(
                "{top} is neither an alternating adjacent-transposition involution nor [3,4,1,2]"
            ),
        ));
    }
    let omega = (3..=n).chain([1, 2]).collect();
    Ok((
        Permutation::from_vec_unchecked(omega),
        ConstructionCase::InvolutionAlternating,
    ))
}

fn csl_omega(n: usize) -> Permutation {
    Permutation::from_vec_unchecked([2, n, 1].into_iter().chain(3..n).collect())
}

fn csr_omega(n: usize) -> Permutation {
    Permutation::from_vec_unchecked([n].into_iter().chain(3..n).chain([1, 2]).collect())
}

fn verified(
    omega: Permutation,
    case: ConstructionCase,
    base: Direction,
    prefix_len: usize,
    strategy: &Strategy,
) -> Result<ConstructedOffender, ConstructError> {
    let evidence = play(&omega, strategy, default_max_turns(strategy.len()))?;
    let failure = match evidence.verdict() {
        Ok(v) if v.is_offender() => None,
        Ok(v) => Some(v.kind().as_str().to_string()),
        Err(e) => Some(e.to_string()),
    };
    if let Some(verdict) = failure {
        return Err(ConstructError::Unverified {
            omega,
            strategy: strategy.display_label(),
            verdict,
        });
    }
    Ok(ConstructedOffender {
        omega,
        case,
        base,
        prefix_len,
        evidence,
    })
}

fn verified_inductive(
    (omega, case): (Permutation, ConstructionCase),
    top: &Permutation,
) -> Result<ConstructedOffender, ConstructError> {
    let strategy = inductive_strategy(top, Direction::Right)?;
    verified(omega, case, Direction::Right, top.len(), &strategy)
}

/// Offender for the right-base inductive strategy with `top`, when the
/// displacement of `top`'s inverse contains a 2.
pub fn construct_contains2(top: &Permutation) -> Result<ConstructedOffender, ConstructError> {
    verified_inductive(contains2_omega(top)?, top)
}

/// Offender for the right-base inductive strategy with `top`, when the
/// displacement of `top`'s inverse has no 2 but some entry in `3..=n-2`.
pub fn construct_min_mu(top: &Permutation) -> Result<ConstructedOffender, ConstructError> {
    verified_inductive(min_mu_omega(top)?, top)
}

/// Looping secret for the right-base inductive strategy with `top`, when
/// `top` is an adjacent-transposition involution or `[3,4,1,2]`.
pub fn construct_involution(top: &Permutation) -> Result<ConstructedOffender, ConstructError> {
    verified_inductive(involution_omega(top)?, top)
}

/// Looping secret for any strategy topped by `delta`, provided every cycle
/// length of `delta` occurs at least twice.
///
/// Within each group of equal-length cycles (groups by ascending length,
/// cycles in canonical order), the elements of cycle `j` are sent onto the
/// positions of cycle `j + 1`, the last wrapping to the first. Every guess
/// of the game stays inside each cycle while the secret never does, so no
/// position is ever confirmed.
pub fn loop_offender(delta: &Permutation) -> Result<ConstructedOffender, ConstructError> {
    const NAME: &str = "cycle pairing";
    require_derangement(NAME, delta)?;
    let cycles = delta.cycle_decomposition();
    if let Some((len, _)) = cycles.multiplicities().into_iter().find(|&(_, m)| m < 2) {
        return Err(precondition(
            NAME,
            format!("cycle length {len} occurs only once"),
        ));
    }
    let mut omega = vec![0; delta.len()];
    for group in cycles.grouped_by_length().values() {
        for (j, cycle) in group.iter().enumerate() {
            let next = group[(j + 1) % group.len()];
            for (a, &x) in cycle.iter().enumerate() {
                omega[x - 1] = next[a];
            }
        }
    }
    verified_inductive(
        (
            Permutation::from_vec_unchecked(omega),
            ConstructionCase::CyclePairing,
        ),
        delta,
    )
}

/// `[2, n, 1, 3, ..., n-1]` against CSL of length `n >= 4`.
pub fn csl_offender(n: usize) -> Result<ConstructedOffender, ConstructError> {
    if n < 4 {
        return Err(precondition(
            "csl offender",
            format!("length {n} < 4 is a pure cyclic shift"),
        ));
    }
    verified(
        csl_omega(n),
        ConstructionCase::SubCsl,
        Direction::Right,
        n,
        &csl_strategy(n)?,
    )
}

/// `[n, 3, ..., n-1, 1, 2]` against CSR of length `n >= 4`.
pub fn csr_offender(n: usize) -> Result<ConstructedOffender, ConstructError> {
    if n < 4 {
        return Err(precondition(
            "csr offender",
            format!("length {n} < 4 is a pure cyclic shift"),
        ));
    }
    verified(
        csr_omega(n),
        ConstructionCase::SubCsr,
        Direction::Left,
        n,
        &csr_strategy(n)?,
    )
}

/// Unverified prefix for a right base.
fn right_base_omega(top: &Permutation) -> Result<(Permutation, ConstructionCase), ConstructError> {
    match classify_top(top, Direction::Right) {
        CaseTag::SubCsl => Ok((csl_omega(top.len()), ConstructionCase::SubCsl)),
        CaseTag::AllTwoSpecial | CaseTag::InvolutionAlternating => involution_omega(top),
        CaseTag::Contains2 => contains2_omega(top),
        CaseTag::MinMu => min_mu_omega(top),
        tag => Err(precondition(
            "right-base dispatch",
            format!("{top} has no construction ({})", tag.as_str()),
        )),
    }
}

/// Unverified prefix for a left base, by mirror conjugation.
fn left_base_omega(top: &Permutation) -> Result<(Permutation, ConstructionCase), ConstructError> {
    match classify_top(top, Direction::Left) {
        CaseTag::SubCsr => Ok((csr_omega(top.len()), ConstructionCase::SubCsr)),
        CaseTag::NoOffender => Err(precondition(
            "left-base dispatch",
            format!("{top} has no construction (no_offender)"),
        )),
        _ => {
            let (omega, case) = right_base_omega(&top.mirror())?;
            Ok((omega.mirror(), case))
        }
    }
}

/// Offender for an arbitrary validated strategy, or `NoOffender` for the
/// pure right and pure left cyclic shifts.
///
/// The base direction comes from `s_3`; `kappa` is the least `k >= 4` whose
/// component is not the base shift. The prefix of length `kappa` is built
/// for the inductive strategy `s_1..s_kappa` and padded with fixed points.
pub fn construct_general(strategy: &Strategy) -> Result<GeneralOutcome, ConstructError> {
    if strategy.pure_shift_direction().is_some() {
        return Ok(GeneralOutcome::NoOffender);
    }
    let n = strategy.len();
    // Lengths up to 3 are always pure shifts.
    let base = if *strategy.component(3) == right_shift_component(3) {
        Direction::Right
    } else {
        debug_assert_eq!(*strategy.component(3), left_shift_component(3));
        Direction::Left
    };
    let kappa = (4..=n)
        .find(|&k| *strategy.component(k) != shift_component(k, base))
        .expect("a strategy that is not a pure shift departs from its base");
    let top = strategy.component(kappa);
    let (prefix, case) = match base {
        Direction::Right => right_base_omega(top)?,
        Direction::Left => left_base_omega(top)?,
    };
    let mut omega = prefix.into_entries();
    omega.extend(kappa + 1..=n);
    let omega = Permutation::from_vec_unchecked(omega);
    Ok(GeneralOutcome::Offender(Box::new(verified(
        omega, case, base, kappa, strategy,
    )?)))
}

/// [`construct_general`] on the inductive strategy with `top` over a
/// `base`-direction shift base.
pub fn construct_inductive(
    top: &Permutation,
    base: Direction,
) -> Result<GeneralOutcome, ConstructError> {
    construct_general(&inductive_strategy(top, base)?)
}
