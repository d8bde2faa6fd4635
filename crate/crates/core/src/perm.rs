//! One-indexed permutations of `{1..n}` and the handful of operations the
//! game analysis needs: inversion, composition, cycle structure,
//! displacement vectors, mirroring and lexicographic enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Environment variable overriding the default [`EnumerationLimit`].
pub const ENUMERATION_LIMIT_ENV: &str = "PERMWORDLE_ENUM_LIMIT";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation must have length at least 1")]
    Empty,
    #[error("not a permutation of 1..{n}: {}", describe_defects(.duplicated, .missing, .out_of_range))]
    NotABijection {
        n: usize,
        duplicated: Vec<usize>,
        missing: Vec<usize>,
        out_of_range: Vec<usize>,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("cannot parse permutation literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error("n = {n} exceeds the enumeration limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
}

fn describe_defects(duplicated: &[usize], missing: &[usize], out_of_range: &[usize]) -> String {
    let mut parts = Vec::new();
    if !duplicated.is_empty() {
        parts.push(format!("duplicated {duplicated:?}"));
    }
    if !missing.is_empty() {
        parts.push(format!("missing {missing:?}"));
    }
    if !out_of_range.is_empty() {
        parts.push(format!("out of range {out_of_range:?}"));
    }
    parts.join(", ")
}

/// A bijection on `{1..n}`, `n >= 1`, stored in one-line notation.
///
/// `entries()[i - 1]` is the image of `i`. Every public accessor speaks
/// one-indexed positions and values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Validates `entries` as a one-indexed bijection.
    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        let n = entries.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![0usize; n + 1];
        let mut out_of_range = Vec::new();
        for &v in &entries {
            if v == 0 || v > n {
                out_of_range.push(v);
            } else {
                seen[v] += 1;
            }
        }
        let duplicated: Vec<usize> = (1..=n).filter(|&v| seen[v] > 1).collect();
        let missing: Vec<usize> = (1..=n).filter(|&v| seen[v] == 0).collect();
        if duplicated.is_empty() && missing.is_empty() && out_of_range.is_empty() {
            Ok(Permutation { entries })
        } else {
            Err(PermError::NotABijection {
                n,
                duplicated,
                missing,
                out_of_range,
            })
        }
    }

    /// Caller guarantees `entries` is a bijection on `{1..entries.len()}`.
    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok(), "{entries:?}");
        Permutation { entries }
    }

    /// The trivial permutation `[1, 2, ..., n]`.
    pub fn identity(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        Ok(Self::identity_unchecked(n))
    }

    pub(crate) fn identity_unchecked(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    /// Builds a permutation of length `n` from cycle notation. Elements not
    /// mentioned are fixed points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut entries: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        let mut duplicated = Vec::new();
        let mut out_of_range = Vec::new();
        for cycle in cycles {
            for (a, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    out_of_range.push(x);
                    continue;
                }
                if touched[x] {
                    duplicated.push(x);
                }
                touched[x] = true;
                entries[x - 1] = cycle[(a + 1) % cycle.len()];
            }
        }
        if !duplicated.is_empty() || !out_of_range.is_empty() {
            return Err(PermError::NotABijection {
                n,
                duplicated,
                missing: Vec::new(),
                out_of_range,
            });
        }
        Permutation::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    /// Image of the one-indexed position `i`.
    ///
    /// Panics if `i` is not in `1..=n`.
    pub fn get(&self, i: usize) -> usize {
        assert!(
            i >= 1 && i <= self.len(),
            "position {i} out of 1..={}",
            self.len()
        );
        self.entries[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { entries: inv }
    }

    /// `result[i] = self[other[i]]`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.len() != other.len() {
            return Err(PermError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            entries: other.entries.iter().map(|&q| self.entries[q - 1]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_derangement(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v != i + 1)
    }

    /// Rightward displacement: `values[i] = (p[i] - i) mod n`.
    pub fn displacement(&self) -> DisplacementVector {
        let n = self.len();
        DisplacementVector {
            values: self
                .entries
                .iter()
                .enumerate()
                .map(|(i, &v)| (v + n - (i + 1)) % n)
                .collect(),
            direction: Direction::Right,
        }
    }

    /// Leftward displacement: `values[i] = (i - p[i]) mod n`.
    pub fn left_displacement(&self) -> DisplacementVector {
        let n = self.len();
        DisplacementVector {
            values: self
                .entries
                .iter()
                .enumerate()
                .map(|(i, &v)| (i + 1 + n - v) % n)
                .collect(),
            direction: Direction::Left,
        }
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.len();
        let mut visited = vec![false; n + 1];
        let mut cycles = Vec::new();
        // Starting from each unvisited minimum in ascending order yields the
        // canonical form directly.
        for start in 1..=n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x);
                x = self.entries[x - 1];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    /// Conjugation by the reversal `i -> n + 1 - i`:
    /// `result[i] = n + 1 - p[n + 1 - i]`.
    pub fn mirror(&self) -> Permutation {
        let n = self.len();
        Permutation {
            entries: (1..=n).map(|i| n + 1 - self.entries[n - i]).collect(),
        }
    }

    /// Positions `i` with `p[i] = i`.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(entries: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(entries)
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses the bracketed literal form, e.g. `[2,4,1,3]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries: Vec<usize> = serde_json::from_str(s.trim()).map_err(|e| PermError::Parse {
            literal: s.to_string(),
            reason: e.to_string(),
        })?;
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(entries).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Right => "right",
            Direction::Left => "left",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "right" => Ok(Direction::Right),
            "left" => Ok(Direction::Left),
            other => Err(format!(
                "unknown direction {other:?} (expected right or left)"
            )),
        }
    }
}

/// Per-position shift distance mod `n`, values in `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DisplacementVector {
    values: Vec<usize>,
    direction: Direction,
}

impl DisplacementVector {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One-indexed access.
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn contains(&self, value: usize) -> bool {
        self.values.contains(&value)
    }

    /// True iff every value lies in `allowed`.
    pub fn all_in(&self, allowed: &[usize]) -> bool {
        self.values.iter().all(|v| allowed.contains(v))
    }

    /// Same values read from position `n` down to `1`, same direction tag.
    pub fn reversed(&self) -> DisplacementVector {
        DisplacementVector {
            values: self.values.iter().rev().copied().collect(),
            direction: self.direction,
        }
    }
}

/// Disjoint cycles in canonical form: each cycle starts at its minimal
/// element and cycles are ordered by that minimum. Fixed points appear as
/// 1-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Sorted cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    /// Cycle length to number of cycles of that length.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.cycles {
            *m.entry(c.len()).or_insert(0) += 1;
        }
        m
    }

    /// Cycles grouped by length (ascending), each group in canonical order.
    pub fn grouped_by_length(&self) -> BTreeMap<usize, Vec<&[usize]>> {
        let mut groups: BTreeMap<usize, Vec<&[usize]>> = BTreeMap::new();
        for c in &self.cycles {
            groups.entry(c.len()).or_default().push(c);
        }
        groups
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Largest `n` for which exhaustive enumeration is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimit(pub usize);

impl Default for EnumerationLimit {
    fn default() -> Self {
        EnumerationLimit(8)
    }
}

impl EnumerationLimit {
    /// Reads [`ENUMERATION_LIMIT_ENV`], falling back to the default when it
    /// is unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(ENUMERATION_LIMIT_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(EnumerationLimit)
            .unwrap_or_default()
    }

    pub fn check(self, n: usize) -> Result<(), PermError> {
        if n == 0 {
            Err(PermError::Empty)
        } else if n > self.0 {
            Err(PermError::LimitExceeded { n, limit: self.0 })
        } else {
            Ok(())
        }
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The permutation of length `n` at lexicographic position `rank`
/// (0-based), via the factorial number system.
pub fn unrank(n: usize, mut rank: u64) -> Permutation {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut entries = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        let idx = (rank / f) as usize;
        rank %= f;
        entries.push(pool.remove(idx));
    }
    Permutation { entries }
}

/// Lexicographic stream of permutations over a rank range.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
    remaining: u64,
}

impl Permutations {
    /// Permutations of length `n` with lexicographic ranks in `ranks`.
    /// Disjoint rank ranges give independent streams for parallel workers.
    pub fn range(n: usize, ranks: Range<u64>) -> Self {
        let total = factorial(n);
        let end = ranks.end.min(total);
        let start = ranks.start.min(end);
        Permutations {
            next: (start < end).then(|| unrank(n, start).entries),
            remaining: end - start,
        }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.next.take()?;
        self.remaining -= 1;
        if self.remaining > 0 {
            let mut succ = current.clone();
            if next_lexicographic(&mut succ) {
                self.next = Some(succ);
            } else {
                self.remaining = 0;
            }
        }
        Some(Permutation { entries: current })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

fn next_lexicographic(a: &mut [usize]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a
        .iter()
        .rposition(|&x| x > a[i])
        .expect("pivot has a successor");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// All permutations of length `n` in lexicographic order.
pub fn enumerate_permutations(
    n: usize,
    limit: EnumerationLimit,
) -> Result<Permutations, PermError> {
    limit.check(n)?;
    Ok(Permutations::range(n, 0..factorial(n)))
}

/// All derangements of length `n` in lexicographic order.
pub fn enumerate_derangements(
    n: usize,
    limit: EnumerationLimit,
) -> Result<impl Iterator<Item = Permutation>, PermError> {
    Ok(enumerate_permutations(n, limit)?.filter(Permutation::is_derangement))
}
