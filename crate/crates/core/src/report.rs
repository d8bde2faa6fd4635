//! Structured (JSON) and plain-text renderings of transcripts, constructed
//! offenders, censuses and theorem reports, plus the CSV table export.
//!
//! Structured output contains no timing data, so identical inputs always
//! serialize to identical bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::construct::{ConstructedOffender, ConstructionCase};
use crate::game::{Outcome, Transcript};
use crate::oracle::{GuessDistribution, OffenderCensus, TheoremReport};
use crate::perm::{Direction, Permutation};
use crate::strategy::Strategy;

/// Wording recorded in census reports so counts can be re-derived under
/// another reading.
pub const OFFENDER_DEFINITION: &str = "repeating or looping";

#[derive(Debug, Serialize)]
pub struct StrategyDoc<'a> {
    pub label: String,
    pub components: &'a [Permutation],
}

impl<'a> From<&'a Strategy> for StrategyDoc<'a> {
    fn from(s: &'a Strategy) -> Self {
        StrategyDoc {
            label: s.display_label(),
            components: s.components(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TurnDoc<'a> {
    pub turn: usize,
    pub guess: &'a Permutation,
    pub correct_positions: &'a [usize],
}

#[derive(Debug, Serialize)]
pub struct OutcomeDoc {
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub turn: usize,
}

impl From<Outcome> for OutcomeDoc {
    fn from(o: Outcome) -> Self {
        OutcomeDoc {
            kind: o.type_name(),
            turn: o.turn(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RepetitionDoc<'a> {
    pub position: usize,
    pub value: usize,
    pub turns: &'a [usize],
    pub infinite: bool,
}

#[derive(Debug, Serialize)]
pub struct TranscriptDoc<'a> {
    pub secret: &'a Permutation,
    pub strategy: StrategyDoc<'a>,
    pub turns: Vec<TurnDoc<'a>>,
    pub outcome: OutcomeDoc,
    pub repetitions: Vec<RepetitionDoc<'a>>,
}

impl<'a> From<&'a Transcript> for TranscriptDoc<'a> {
    fn from(t: &'a Transcript) -> Self {
        let infinite = matches!(t.outcome, Outcome::LoopDetected { .. });
        TranscriptDoc {
            secret: &t.secret,
            strategy: (&t.strategy).into(),
            turns: t
                .records
                .iter()
                .map(|r| TurnDoc {
                    turn: r.turn,
                    guess: &r.guess,
                    correct_positions: &r.correct_positions,
                })
                .collect(),
            outcome: t.outcome.into(),
            repetitions: t
                .repetitions
                .iter()
                .map(|e| RepetitionDoc {
                    position: e.position,
                    value: e.value,
                    turns: &e.turns,
                    infinite,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CaseDoc<'a> {
    pub tag: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locked: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iota: Option<usize>,
}

impl<'a> From<&'a ConstructionCase> for CaseDoc<'a> {
    fn from(c: &'a ConstructionCase) -> Self {
        let mut doc = CaseDoc {
            tag: c.tag().as_str(),
            k: None,
            locked: None,
            mu: None,
            iota: None,
        };
        match c {
            ConstructionCase::Contains2 { k, locked } => {
                doc.k = Some(k);
                doc.locked = Some(locked);
            }
            ConstructionCase::MinMu { mu, iota, locked } => {
                doc.mu = Some(*mu);
                doc.iota = Some(*iota);
                doc.locked = Some(locked);
            }
            _ => {}
        }
        doc
    }
}

#[derive(Debug, Serialize)]
pub struct OffenderDoc<'a> {
    pub omega: &'a Permutation,
    pub case: CaseDoc<'a>,
    pub base: Direction,
    pub prefix_len: usize,
    pub evidence: TranscriptDoc<'a>,
}

impl<'a> From<&'a ConstructedOffender> for OffenderDoc<'a> {
    fn from(o: &'a ConstructedOffender) -> Self {
        OffenderDoc {
            omega: &o.omega,
            case: (&o.case).into(),
            base: o.base,
            prefix_len: o.prefix_len,
            evidence: (&o.evidence).into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CountsDoc {
    pub clean: u64,
    pub repeating: u64,
    pub looping: u64,
}

#[derive(Debug, Serialize)]
pub struct CensusEntryDoc<'a> {
    pub secret: &'a Permutation,
    pub verdict: &'static str,
}

#[derive(Debug, Serialize)]
pub struct CensusDoc<'a> {
    pub strategy: StrategyDoc<'a>,
    pub n: usize,
    pub counts: CountsDoc,
    pub offender_total: u64,
    pub offender_definition: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offenders: Option<Vec<CensusEntryDoc<'a>>>,
}

impl<'a> From<&'a OffenderCensus> for CensusDoc<'a> {
    fn from(c: &'a OffenderCensus) -> Self {
        CensusDoc {
            strategy: (&c.strategy).into(),
            n: c.n,
            counts: CountsDoc {
                clean: c.counts.clean,
                repeating: c.counts.repeating,
                looping: c.counts.looping,
            },
            offender_total: c.counts.offenders(),
            offender_definition: OFFENDER_DEFINITION,
            offenders: c.offenders.as_ref().map(|list| {
                list.iter()
                    .map(|(secret, kind)| CensusEntryDoc {
                        secret,
                        verdict: kind.as_str(),
                    })
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FailureDoc<'a> {
    pub strategy: StrategyDoc<'a>,
    pub omega: Option<&'a Permutation>,
    pub verdict: &'a str,
}

#[derive(Debug, Serialize)]
pub struct PureShiftDoc<'a> {
    pub strategy: StrategyDoc<'a>,
    pub direction: Direction,
    pub offenders: u64,
}

#[derive(Debug, Serialize)]
pub struct TheoremDoc<'a> {
    pub n: usize,
    pub strategies_checked: usize,
    pub holds: bool,
    pub failures: Vec<FailureDoc<'a>>,
    pub cs_exceptions: Vec<PureShiftDoc<'a>>,
}

impl<'a> From<&'a TheoremReport> for TheoremDoc<'a> {
    fn from(r: &'a TheoremReport) -> Self {
        TheoremDoc {
            n: r.n,
            strategies_checked: r.strategies_checked,
            holds: r.holds(),
            failures: r
                .failures
                .iter()
                .map(|f| FailureDoc {
                    strategy: (&f.strategy).into(),
                    omega: f.omega.as_ref(),
                    verdict: &f.verdict,
                })
                .collect(),
            cs_exceptions: r
                .cs_exceptions
                .iter()
                .map(|c| PureShiftDoc {
                    strategy: (&c.strategy).into(),
                    direction: c.direction,
                    offenders: c.offenders,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SequenceTermDoc {
    pub n: usize,
    pub offenders: u64,
}

#[derive(Debug, Serialize)]
pub struct SequenceDoc {
    pub strategy_family: &'static str,
    pub offender_definition: &'static str,
    pub terms: Vec<SequenceTermDoc>,
}

impl SequenceDoc {
    pub fn csl(terms: &[(usize, u64)]) -> Self {
        SequenceDoc {
            strategy_family: "csl",
            offender_definition: OFFENDER_DEFINITION,
            terms: terms
                .iter()
                .map(|&(n, offenders)| SequenceTermDoc { n, offenders })
                .collect(),
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report documents always serialize");
    s.push('\n');
    s
}

/// One row per census: `label,n,clean,repeating,looping`.
pub fn census_table<'a>(censuses: impl IntoIterator<Item = &'a OffenderCensus>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "n", "clean", "repeating", "looping"])
        .expect("in-memory write");
    for c in censuses {
        w.write_record([
            c.strategy.display_label(),
            c.n.to_string(),
            c.counts.clean.to_string(),
            c.counts.repeating.to_string(),
            c.counts.looping.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn set(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Turn-by-turn table: guess `g_k`, incorrect set `I_k`, correct set `J_k`.
pub fn transcript_text(t: &Transcript) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "strategy: {}", t.strategy.display_label());
    let _ = writeln!(out, "components: {}", t.strategy);
    let _ = writeln!(out, "secret: {}", t.secret);
    let width = t
        .records
        .iter()
        .map(|r| r.guess.to_string().len())
        .max()
        .unwrap_or(0);
    for r in &t.records {
        let _ = writeln!(
            out,
            "g{:<3} = {:<width$}   I = {:<w2$}   J = {}",
            r.turn,
            r.guess.to_string(),
            set(&r.incorrect_positions()),
            set(&r.correct_positions),
            w2 = 2 * t.secret.len() + 1,
        );
    }
    match t.outcome {
        Outcome::Solved { turns } => {
            let _ = writeln!(out, "outcome: solved in {turns} guesses");
        }
        Outcome::LoopDetected { turn } => {
            let _ = writeln!(
                out,
                "outcome: infinite loop, guess {turn} repeats an earlier guess"
            );
        }
        Outcome::Aborted { max_turns } => {
            let _ = writeln!(out, "outcome: aborted after {max_turns} guesses");
        }
    }
    if t.repetitions.is_empty() {
        let _ = writeln!(out, "repetitions: none");
    } else {
        let suffix = if matches!(t.outcome, Outcome::LoopDetected { .. }) {
            " (infinite)"
        } else {
            ""
        };
        let _ = writeln!(out, "repetitions:{suffix}");
        for e in &t.repetitions {
            let _ = writeln!(
                out,
                "  position {}, value {}, turns {}",
                e.position,
                e.value,
                set(&e.turns)
            );
        }
    }
    out
}

pub fn offender_text(o: &ConstructedOffender) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "omega: {}", o.omega);
    let _ = write!(out, "case: {}", o.case.tag().as_str());
    match &o.case {
        ConstructionCase::Contains2 { k, locked } => {
            let _ = write!(out, " (K = {}, locked = {})", set(k), set(locked));
        }
        ConstructionCase::MinMu { mu, iota, locked } => {
            let _ = write!(out, " (mu = {mu}, iota = {iota}, locked = {})", set(locked));
        }
        _ => {}
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "base: {}, prefix length: {}", o.base, o.prefix_len);
    let _ = writeln!(out, "evidence:");
    for line in transcript_text(&o.evidence).lines() {
        let _ = writeln!(out, "  {line}");
    }
    out
}

pub fn census_text(c: &OffenderCensus) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "strategy: {}", c.strategy.display_label());
    let _ = writeln!(out, "n: {}", c.n);
    let _ = writeln!(
        out,
        "clean: {}, repeating: {}, looping: {}",
        c.counts.clean, c.counts.repeating, c.counts.looping
    );
    let _ = writeln!(
        out,
        "offenders ({OFFENDER_DEFINITION}): {}",
        c.counts.offenders()
    );
    if let Some(list) = &c.offenders {
        for (secret, kind) in list {
            let _ = writeln!(out, "  {secret} {}", kind.as_str());
        }
    }
    let _ = writeln!(out, "elapsed: {:.3?}", c.elapsed);
    out
}

pub fn theorem_text(r: &TheoremReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", r.n);
    let _ = writeln!(out, "strategies checked: {}", r.strategies_checked);
    for c in &r.cs_exceptions {
        let _ = writeln!(
            out,
            "pure {} shift {}: {} offenders",
            c.direction,
            c.strategy.display_label(),
            c.offenders
        );
    }
    let _ = writeln!(out, "failures: {}", r.failures.len());
    for f in &r.failures {
        let omega = f
            .omega
            .as_ref()
            .map_or_else(|| "-".to_string(), ToString::to_string);
        let _ = writeln!(
            out,
            "  {} omega {} : {}",
            f.strategy.display_label(),
            omega,
            f.verdict
        );
    }
    let _ = writeln!(
        out,
        "{}",
        if r.holds() {
            "theorem holds"
        } else {
            "theorem FAILS"
        }
    );
    out
}

pub fn distribution_text(d: &GuessDistribution) -> String {
    let mut out = String::new();
    for (turns, count) in &d.solved {
        let _ = writeln!(out, "{turns}: {count}");
    }
    let _ = writeln!(out, "loop: {}", d.looping);
    out
}
