use permwordle::{
    classify_top, construct_contains2, construct_inductive, construct_min_mu, default_max_turns,
    enumerate_derangements, CaseTag, Direction, EnumerationLimit, GeneralOutcome, Outcome,
};

const LIMIT: EnumerationLimit = EnumerationLimit(8);

#[test]
fn dispatch_is_total_up_to_eight() {
    for n in 4..=8 {
        for base in [Direction::Right, Direction::Left] {
            for top in enumerate_derangements(n, LIMIT).unwrap() {
                let tag = classify_top(&top, base);
                let outcome =
                    construct_inductive(&top, base).unwrap_or_else(|e| panic!("{base} {top}: {e}"));
                match outcome {
                    GeneralOutcome::NoOffender => assert_eq!(tag, CaseTag::NoOffender),
                    GeneralOutcome::Offender(o) => {
                        assert_eq!(o.case.tag(), tag, "{base} {top}");
                        assert!(o.verdict().is_offender());
                        assert!(o.evidence.audit().is_ok());
                    }
                }
            }
        }
    }
}

#[test]
fn repetition_is_forced_at_turn_three() {
    for n in 4..=7 {
        for top in enumerate_derangements(n, LIMIT).unwrap() {
            let built = match classify_top(&top, Direction::Right) {
                CaseTag::Contains2 => construct_contains2(&top),
                CaseTag::MinMu => construct_min_mu(&top),
                _ => continue,
            };
            let o = built.unwrap();
            assert!(o.omega.is_derangement(), "{top}");
            assert_eq!(o.evidence.outcome, Outcome::Solved { turns: 4 }, "{top}");
            let first = o.evidence.repetitions.iter().map(|e| e.turns[1]).min();
            assert_eq!(first, Some(3), "{top}");
            assert!(o.evidence.records.len() <= default_max_turns(n));
        }
    }
}
