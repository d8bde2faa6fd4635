//! Strategies: one derangement component per number of incorrect entries.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::perm::{Direction, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("strategy must have at least one component")]
    Empty,
    #[error("component {k} has length {len}, expected {k}")]
    WrongLength { k: usize, len: usize },
    #[error("component {k} = {component} is not a derangement (fixed points {fixed:?})")]
    NotDerangement {
        k: usize,
        component: Permutation,
        fixed: Vec<usize>,
    },
    #[error("top component {0} is not a derangement")]
    TopNotDerangement(Permutation),
    #[error("strategy length must be at least {min}, got {n}")]
    TooShort { n: usize, min: usize },
    #[error("invalid strategy spec {spec:?}: {reason}")]
    Spec { spec: String, reason: String },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Checks the strategy invariants and names the first offending component:
/// component `k` has length `k`, and every component from `k = 2` on is a
/// derangement (which forces `s_1 = [1]` and `s_2 = [2,1]`).
pub fn validate_strategy(components: &[Permutation]) -> Result<(), StrategyError> {
    if components.is_empty() {
        return Err(StrategyError::Empty);
    }
    for (idx, c) in components.iter().enumerate() {
        let k = idx + 1;
        if c.len() != k {
            return Err(StrategyError::WrongLength { k, len: c.len() });
        }
        if k >= 2 && !c.is_derangement() {
            return Err(StrategyError::NotDerangement {
                k,
                component: c.clone(),
                fixed: c.fixed_points(),
            });
        }
    }
    Ok(())
}

/// A validated strategy `[s_1, ..., s_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Strategy {
    label: Option<String>,
    components: Vec<Permutation>,
}

impl Strategy {
    pub fn new(components: Vec<Permutation>) -> Result<Self, StrategyError> {
        validate_strategy(&components)?;
        Ok(Strategy {
            label: None,
            components,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Parses `[[1],[2,1],...]`.
    pub fn from_literal(literal: &str) -> Result<Self, StrategyError> {
        let raw: Vec<Vec<usize>> =
            serde_json::from_str(literal.trim()).map_err(|e| StrategyError::Spec {
                spec: literal.to_string(),
                reason: e.to_string(),
            })?;
        let components = raw
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>, _>>()?;
        Strategy::new(components)
    }

    /// Strategy length `n`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The label if one was given, otherwise the component literal.
    pub fn display_label(&self) -> String {
        self.label.clone().unwrap_or_else(|| self.to_string())
    }

    pub fn components(&self) -> &[Permutation] {
        &self.components
    }

    /// `s_k`, one-indexed. Panics if `k` is outside `1..=n`.
    pub fn component(&self, k: usize) -> &Permutation {
        &self.components[k - 1]
    }

    /// The top component `s_n`.
    pub fn top(&self) -> &Permutation {
        self.components.last().expect("strategies are nonempty")
    }

    /// True if every component is the cyclic shift in `direction`.
    pub fn is_pure_shift(&self, direction: Direction) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| *c == shift_component(i + 1, direction))
    }

    /// `Some(direction)` for the all-right (CS) or all-left strategy.
    /// Strategies of length 2 or less are both; they report `Right`.
    pub fn pure_shift_direction(&self) -> Option<Direction> {
        [Direction::Right, Direction::Left]
            .into_iter()
            .find(|&d| self.is_pure_shift(d))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// `[2, 3, ..., m, 1]`; `[1]` for `m = 1`. Panics on `m = 0`.
pub fn right_shift_component(m: usize) -> Permutation {
    assert!(m >= 1, "shift component needs m >= 1");
    Permutation::from_vec_unchecked((2..=m).chain([1]).collect())
}

/// `[m, 1, 2, ..., m - 1]`; `[1]` for `m = 1`. Panics on `m = 0`.
pub fn left_shift_component(m: usize) -> Permutation {
    assert!(m >= 1, "shift component needs m >= 1");
    Permutation::from_vec_unchecked([m].into_iter().chain(1..m).collect())
}

pub fn shift_component(m: usize, direction: Direction) -> Permutation {
    match direction {
        Direction::Right => right_shift_component(m),
        Direction::Left => left_shift_component(m),
    }
}

fn shift_base(n: usize, direction: Direction) -> Vec<Permutation> {
    (1..=n).map(|k| shift_component(k, direction)).collect()
}

fn require_len(n: usize, min: usize) -> Result<(), StrategyError> {
    if n < min {
        Err(StrategyError::TooShort { n, min })
    } else {
        Ok(())
    }
}

/// Cyclic shift: every component shifts right.
pub fn cs_strategy(n: usize) -> Result<Strategy, StrategyError> {
    require_len(n, 1)?;
    Ok(Strategy::new(shift_base(n, Direction::Right))?.with_label(format!("cs:{n}")))
}

/// Every component shifts left.
pub fn lcs_strategy(n: usize) -> Result<Strategy, StrategyError> {
    require_len(n, 1)?;
    Ok(Strategy::new(shift_base(n, Direction::Left))?.with_label(format!("lcs:{n}")))
}

/// Right shifts below, left shift at the top.
pub fn csl_strategy(n: usize) -> Result<Strategy, StrategyError> {
    require_len(n, 2)?;
    let mut c = shift_base(n - 1, Direction::Right);
    c.push(left_shift_component(n));
    Ok(Strategy::new(c)?.with_label(format!("csl:{n}")))
}

/// Left shifts below, right shift at the top.
pub fn csr_strategy(n: usize) -> Result<Strategy, StrategyError> {
    require_len(n, 2)?;
    let mut c = shift_base(n - 1, Direction::Left);
    c.push(right_shift_component(n));
    Ok(Strategy::new(c)?.with_label(format!("csr:{n}")))
}

/// Shifts in `base` direction below an arbitrary derangement `top`.
pub fn inductive_strategy(top: &Permutation, base: Direction) -> Result<Strategy, StrategyError> {
    let n = top.len();
    require_len(n, 2)?;
    if !top.is_derangement() {
        return Err(StrategyError::TopNotDerangement(top.clone()));
    }
    let mut c = shift_base(n - 1, base);
    c.push(top.clone());
    Ok(Strategy::new(c)?.with_label(format!("inductive:{base}:{top}")))
}

/// Parses the strategy grammar shared with the command line:
///
/// ```text
/// cs:N | lcs:N | csl:N | csr:N
/// inductive:right:[...] | inductive:left:[...]
/// [[1],[2,1],...]            explicit component list
/// <path>                     file holding an explicit component list
/// ```
///
/// Files may contain `#` comment lines and spread the list across lines.
pub fn parse_strategy_spec(spec: &str) -> Result<Strategy, StrategyError> {
    let spec = spec.trim();
    let bad = |reason: String| StrategyError::Spec {
        spec: spec.to_string(),
        reason,
    };
    if spec.starts_with('[') {
        return Strategy::from_literal(spec);
    }
    if let Some(rest) = spec.strip_prefix("inductive:") {
        let (dir, top) = rest
            .split_once(':')
            .ok_or_else(|| bad("expected inductive:<right|left>:[...]".into()))?;
        let base: Direction = dir.parse().map_err(bad)?;
        let top: Permutation = top.parse()?;
        return inductive_strategy(&top, base);
    }
    if let Some((kind, n)) = spec.split_once(':') {
        let builder: fn(usize) -> Result<Strategy, StrategyError> = match kind {
            "cs" => cs_strategy,
            "lcs" => lcs_strategy,
            "csl" => csl_strategy,
            "csr" => csr_strategy,
            _ => return Err(bad(format!("unknown strategy kind {kind:?}"))),
        };
        let n: usize = n
            .trim()
            .parse()
            .map_err(|e| bad(format!("bad length {n:?}: {e}")))?;
        return builder(n);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
        let body: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Strategy::from_literal(&body)?.with_label(spec.to_string()));
    }
    Err(bad("not a known strategy form or readable file".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn comps(v: &[&[usize]]) -> Vec<Permutation> {
        v.iter().map(|c| p(c)).collect()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_strategy(&comps(&[&[1], &[2, 1], &[2, 3, 1], &[2, 3, 4, 1]])).is_ok());
        let err =
            validate_strategy(&comps(&[&[1], &[2, 1], &[1, 2, 3], &[2, 3, 4, 1]])).unwrap_err();
        assert!(
            matches!(err, StrategyError::NotDerangement { k: 3, .. }),
            "{err}"
        );
        assert!(validate_strategy(&comps(&[
            &[1],
            &[2, 1],
            &[2, 3, 1],
            &[2, 1, 4, 3],
            &[3, 4, 5, 2, 1]
        ]))
        .is_ok());
        assert!(matches!(
            validate_strategy(&comps(&[&[1], &[2, 1], &[2, 1]])),
            Err(StrategyError::WrongLength { k: 3, len: 2 })
        ));
        assert!(matches!(
            validate_strategy(&comps(&[&[1], &[1, 2]])),
            Err(StrategyError::NotDerangement { k: 2, .. })
        ));
        assert_eq!(validate_strategy(&[]), Err(StrategyError::Empty));
    }

    #[test]
    fn shift_components() {
        assert_eq!(right_shift_component(4), p(&[2, 3, 4, 1]));
        assert_eq!(left_shift_component(5), p(&[5, 1, 2, 3, 4]));
        assert_eq!(right_shift_component(2), p(&[2, 1]));
        assert_eq!(left_shift_component(2), p(&[2, 1]));
        assert_eq!(right_shift_component(1), p(&[1]));
        assert_eq!(left_shift_component(1), p(&[1]));
    }

    #[test]
    fn named_strategies() {
        assert_eq!(
            csl_strategy(4).unwrap().components(),
            comps(&[&[1], &[2, 1], &[2, 3, 1], &[4, 1, 2, 3]])
        );
        assert_eq!(
            csr_strategy(5).unwrap().components(),
            comps(&[&[1], &[2, 1], &[3, 1, 2], &[4, 1, 2, 3], &[2, 3, 4, 5, 1]])
        );
        assert_eq!(
            inductive_strategy(&p(&[2, 4, 1, 3]), Direction::Right)
                .unwrap()
                .components(),
            comps(&[&[1], &[2, 1], &[2, 3, 1], &[2, 4, 1, 3]])
        );
        assert!(matches!(
            inductive_strategy(&p(&[1, 3, 2]), Direction::Right),
            Err(StrategyError::TopNotDerangement(_))
        ));
        assert_eq!(
            cs_strategy(6).unwrap().pure_shift_direction(),
            Some(Direction::Right)
        );
        assert_eq!(
            lcs_strategy(6).unwrap().pure_shift_direction(),
            Some(Direction::Left)
        );
        assert_eq!(csl_strategy(6).unwrap().pure_shift_direction(), None);
        // csl:3 is the all-left strategy.
        assert_eq!(
            csl_strategy(3).unwrap().components(),
            lcs_strategy(3).unwrap().components()
        );
    }

    #[test]
    fn spec_grammar() {
        assert_eq!(
            parse_strategy_spec("cs:5").unwrap(),
            cs_strategy(5).unwrap()
        );
        assert_eq!(
            parse_strategy_spec("lcs:4").unwrap(),
            lcs_strategy(4).unwrap()
        );
        assert_eq!(
            parse_strategy_spec("csl:6").unwrap(),
            csl_strategy(6).unwrap()
        );
        assert_eq!(
            parse_strategy_spec("csr:6").unwrap(),
            csr_strategy(6).unwrap()
        );
        let s = parse_strategy_spec("inductive:left:[2,1,4,3]").unwrap();
        assert_eq!(s.component(3), &p(&[3, 1, 2]));
        assert_eq!(s.label(), Some("inductive:left:[2,1,4,3]"));
        let lit = parse_strategy_spec("[[1],[2,1],[2,3,1],[2,1,4,3],[3,4,5,2,1]]").unwrap();
        assert_eq!(lit.len(), 5);
        assert!(parse_strategy_spec("foo:3").is_err());
        assert!(parse_strategy_spec("cs:x").is_err());
        assert!(parse_strategy_spec("inductive:up:[2,1]").is_err());
        assert!(parse_strategy_spec("/nonexistent/strategy").is_err());
        assert!(parse_strategy_spec("[[1],[1,2]]").is_err());
    }

    #[test]
    fn spec_from_file() {
        let dir = std::env::temp_dir().join(format!("permwordle-strategy-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("example.txt");
        std::fs::write(
            &path,
            "# example strategy\n[[1],\n [2,1],\n [2,3,1],\n [2,1,4,3],\n [3,4,5,2,1]]\n",
        )
        .unwrap();
        let s = parse_strategy_spec(path.to_str().unwrap()).unwrap();
        assert_eq!(s.top(), &p(&[3, 4, 5, 2, 1]));
        assert_eq!(s.label(), path.to_str());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
