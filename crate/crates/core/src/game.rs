//! Deterministic permutation-wordle games.
//!
//! The first guess is always the identity. After each guess the player
//! learns the set of correct positions; the incorrect positions
//! `p_1 < ... < p_m` are rearranged by the strategy component `s_m`, so the
//! value at the `j`-th incorrect position moves to the `s_m[j]`-th incorrect
//! position. Correct positions stay locked.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::perm::{PermError, Permutation};
use crate::strategy::Strategy;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("secret has length {secret} but strategy has length {strategy}")]
    LengthMismatch { secret: usize, strategy: usize },
    #[error("{positions} incorrect positions but component has length {component}")]
    IncorrectSetSize { positions: usize, component: usize },
    #[error("a single incorrect position cannot occur in a legal game")]
    SingletonIncorrectSet,
    #[error("position {position} is outside 1..={n} or repeated")]
    InvalidPosition { position: usize, n: usize },
    #[error("game aborted after {max_turns} turns without solving or detecting a loop")]
    Aborted { max_turns: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Safety-net turn budget `n^2 + n`.
pub fn default_max_turns(n: usize) -> usize {
    n * n + n
}

/// Positions where `guess` agrees with `secret`, ascending.
pub fn feedback(guess: &Permutation, secret: &Permutation) -> Result<Vec<usize>, GameError> {
    if guess.len() != secret.len() {
        return Err(PermError::LengthMismatch {
            left: guess.len(),
            right: secret.len(),
        }
        .into());
    }
    Ok(guess
        .entries()
        .iter()
        .zip(secret.entries())
        .enumerate()
        .filter(|(_, (g, s))| g == s)
        .map(|(i, _)| i + 1)
        .collect())
}

fn complement(n: usize, correct: &[usize]) -> Vec<usize> {
    let mut is_correct = vec![false; n + 1];
    for &i in correct {
        is_correct[i] = true;
    }
    (1..=n).filter(|&i| !is_correct[i]).collect()
}

/// Applies `component` to the entries of `guess` at `incorrect_positions`.
pub fn next_guess(
    guess: &Permutation,
    incorrect_positions: &[usize],
    component: &Permutation,
) -> Result<Permutation, GameError> {
    let n = guess.len();
    let mut positions = incorrect_positions.to_vec();
    positions.sort_unstable();
    for w in positions.windows(2) {
        if w[0] == w[1] {
            return Err(GameError::InvalidPosition { position: w[0], n });
        }
    }
    if let Some(&bad) = positions.iter().find(|&&i| i == 0 || i > n) {
        return Err(GameError::InvalidPosition { position: bad, n });
    }
    if positions.len() != component.len() {
        return Err(GameError::IncorrectSetSize {
            positions: positions.len(),
            component: component.len(),
        });
    }
    if positions.len() == 1 {
        return Err(GameError::SingletonIncorrectSet);
    }
    Ok(apply_component(guess, &positions, component))
}

/// `positions` sorted, distinct, and as long as `component`.
fn apply_component(
    guess: &Permutation,
    positions: &[usize],
    component: &Permutation,
) -> Permutation {
    let mut entries = guess.entries().to_vec();
    for (j, &target) in component.entries().iter().enumerate() {
        entries[positions[target - 1] - 1] = guess.get(positions[j]);
    }
    Permutation::from_vec_unchecked(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GuessRecord {
    pub turn: usize,
    pub guess: Permutation,
    pub correct_positions: Vec<usize>,
}

impl GuessRecord {
    pub fn incorrect_positions(&self) -> Vec<usize> {
        complement(self.guess.len(), &self.correct_positions)
    }

    pub fn is_solved(&self) -> bool {
        self.correct_positions.len() == self.guess.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Solved {
        turns: usize,
    },
    /// `turn` is where a guess first recurred.
    LoopDetected {
        turn: usize,
    },
    Aborted {
        max_turns: usize,
    },
}

impl Outcome {
    pub fn type_name(&self) -> &'static str {
        match self {
            Outcome::Solved { .. } => "solved",
            Outcome::LoopDetected { .. } => "loop_detected",
            Outcome::Aborted { .. } => "aborted",
        }
    }

    pub fn turn(&self) -> usize {
        match *self {
            Outcome::Solved { turns } => turns,
            Outcome::LoopDetected { turn } => turn,
            Outcome::Aborted { max_turns } => max_turns,
        }
    }
}

/// An incorrect value guessed at the same position on two or more turns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RepetitionEvent {
    pub position: usize,
    pub value: usize,
    pub turns: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub secret: Permutation,
    pub strategy: Strategy,
    pub records: Vec<GuessRecord>,
    pub outcome: Outcome,
    pub repetitions: Vec<RepetitionEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlayOptions {
    pub max_turns: usize,
    pub detect_loops: bool,
}

impl PlayOptions {
    pub fn for_length(n: usize) -> Self {
        PlayOptions {
            max_turns: default_max_turns(n),
            detect_loops: true,
        }
    }
}

/// Plays `strategy` against `secret` with loop detection on.
pub fn play(
    secret: &Permutation,
    strategy: &Strategy,
    max_turns: usize,
) -> Result<Transcript, GameError> {
    play_with(
        secret,
        strategy,
        PlayOptions {
            max_turns,
            detect_loops: true,
        },
    )
}

/// The transition depends only on the current guess, and the correct set
/// only grows, so a guess recurring while the correct set is unchanged
/// means the game cycles forever. The window of seen guesses is reset on
/// every strict growth of the correct set.
pub fn play_with(
    secret: &Permutation,
    strategy: &Strategy,
    options: PlayOptions,
) -> Result<Transcript, GameError> {
    let n = secret.len();
    if strategy.len() != n {
        return Err(GameError::LengthMismatch {
            secret: n,
            strategy: strategy.len(),
        });
    }
    let mut guess = Permutation::identity_unchecked(n);
    let mut records = Vec::new();
    let mut window: HashSet<Permutation> = HashSet::new();
    let mut locked = 0;
    let mut outcome = Outcome::Aborted {
        max_turns: options.max_turns,
    };
    for turn in 1..=options.max_turns {
        let correct = feedback(&guess, secret)?;
        let incorrect = complement(n, &correct);
        let solved = incorrect.is_empty();
        if correct.len() > locked {
            locked = correct.len();
            window.clear();
        }
        let recurred = options.detect_loops && !solved && !window.insert(guess.clone());
        records.push(GuessRecord {
            turn,
            guess: guess.clone(),
            correct_positions: correct,
        });
        if solved {
            outcome = Outcome::Solved { turns: turn };
            break;
        }
        if recurred {
            outcome = Outcome::LoopDetected { turn };
            break;
        }
        if turn == options.max_turns {
            break;
        }
        if incorrect.len() == 1 {
            // Two permutations never differ in exactly one position.
            return Err(GameError::SingletonIncorrectSet);
        }
        guess = apply_component(&guess, &incorrect, strategy.component(incorrect.len()));
    }
    let mut transcript = Transcript {
        secret: secret.clone(),
        strategy: strategy.clone(),
        records,
        outcome,
        repetitions: Vec::new(),
    };
    transcript.repetitions = repetition_events(&transcript);
    Ok(transcript)
}

/// One event per `(position, value)` with `value != secret[position]` seen
/// in at least two guesses, ordered by first turn then position.
pub fn repetition_events(transcript: &Transcript) -> Vec<RepetitionEvent> {
    let mut seen: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for record in &transcript.records {
        for (i, &v) in record.guess.entries().iter().enumerate() {
            if v != transcript.secret.get(i + 1) {
                seen.entry((i + 1, v)).or_default().push(record.turn);
            }
        }
    }
    let mut events: Vec<RepetitionEvent> = seen
        .into_iter()
        .filter(|(_, turns)| turns.len() >= 2)
        .map(|((position, value), turns)| RepetitionEvent {
            position,
            value,
            turns,
        })
        .collect();
    events.sort_by_key(|e| (e.turns[0], e.position));
    events
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Clean,
    Repeating(Vec<RepetitionEvent>),
    Looping(Vec<RepetitionEvent>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictKind {
    Clean,
    Repeating,
    Looping,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Clean => "clean",
            VerdictKind::Repeating => "repeating",
            VerdictKind::Looping => "looping",
        }
    }
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Clean => VerdictKind::Clean,
            Verdict::Repeating(_) => VerdictKind::Repeating,
            Verdict::Looping(_) => VerdictKind::Looping,
        }
    }

    pub fn is_offender(&self) -> bool {
        !matches!(self, Verdict::Clean)
    }

    pub fn events(&self) -> &[RepetitionEvent] {
        match self {
            Verdict::Clean => &[],
            Verdict::Repeating(e) | Verdict::Looping(e) => e,
        }
    }
}

impl Transcript {
    pub fn len(&self) -> usize {
        self.secret.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn guesses(&self) -> impl Iterator<Item = &Permutation> {
        self.records.iter().map(|r| &r.guess)
    }

    /// Record for the one-indexed `turn`.
    pub fn record(&self, turn: usize) -> Option<&GuessRecord> {
        self.records.get(turn.checked_sub(1)?)
    }

    /// Aborted games are errors, never silently clean.
    pub fn verdict(&self) -> Result<Verdict, GameError> {
        match self.outcome {
            Outcome::Aborted { max_turns } => Err(GameError::Aborted { max_turns }),
            Outcome::LoopDetected { .. } => Ok(Verdict::Looping(self.repetitions.clone())),
            Outcome::Solved { .. } if self.repetitions.is_empty() => Ok(Verdict::Clean),
            Outcome::Solved { .. } => Ok(Verdict::Repeating(self.repetitions.clone())),
        }
    }

    /// Re-checks the transcript invariants against its own secret and
    /// strategy, describing the first violation found.
    pub fn audit(&self) -> Result<(), String> {
        let n = self.secret.len();
        let first = self.records.first().ok_or("transcript has no records")?;
        if !first.guess.is_identity() {
            return Err(format!("first guess {} is not the identity", first.guess));
        }
        for (idx, r) in self.records.iter().enumerate() {
            if r.turn != idx + 1 {
                return Err(format!("record {idx} carries turn {}", r.turn));
            }
            let expected = feedback(&r.guess, &self.secret).map_err(|e| e.to_string())?;
            if expected != r.correct_positions {
                return Err(format!(
                    "turn {}: correct positions {:?}, expected {expected:?}",
                    r.turn, r.correct_positions
                ));
            }
            if n - r.correct_positions.len() == 1 {
                return Err(format!("turn {}: singleton incorrect set", r.turn));
            }
        }
        for w in self.records.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if !a
                .correct_positions
                .iter()
                .all(|i| b.correct_positions.contains(i))
            {
                return Err(format!("turn {}: correct set shrank", b.turn));
            }
            if a.correct_positions
                .iter()
                .any(|&i| a.guess.get(i) != b.guess.get(i))
            {
                return Err(format!("turn {}: a locked entry moved", b.turn));
            }
            let expected = apply_component(
                &a.guess,
                &a.incorrect_positions(),
                self.strategy.component(n - a.correct_positions.len()),
            );
            if expected != b.guess {
                return Err(format!(
                    "turn {}: guess {} does not follow from turn {}",
                    b.turn, b.guess, a.turn
                ));
            }
        }
        match self.outcome {
            Outcome::Solved { turns } => {
                if turns != self.records.len() || !self.records[turns - 1].is_solved() {
                    return Err(format!("solved at {turns} but the final record disagrees"));
                }
                if self.records[..turns - 1].iter().any(GuessRecord::is_solved) {
                    return Err("solved before the reported turn".into());
                }
            }
            Outcome::LoopDetected { turn } => {
                if turn != self.records.len() {
                    return Err(format!("loop at {turn} but {} records", self.records.len()));
                }
                let last = &self.records[turn - 1];
                let earlier = self.records[..turn - 1].iter().any(|r| {
                    r.guess == last.guess && r.correct_positions == last.correct_positions
                });
                if !earlier {
                    return Err(format!(
                        "loop reported at turn {turn} without a recurring guess"
                    ));
                }
            }
            Outcome::Aborted { max_turns } => {
                if self.records.len() != max_turns {
                    return Err("aborted transcript does not exhaust its turn budget".into());
                }
            }
        }
        if self.repetitions != repetition_events(self) {
            return Err("stored repetition events are stale".into());
        }
        Ok(())
    }
}

/// Plays the game and classifies `secret` for `strategy`.
pub fn is_offender(
    strategy: &Strategy,
    secret: &Permutation,
    max_turns: usize,
) -> Result<Verdict, GameError> {
    play(secret, strategy, max_turns)?.verdict()
}
