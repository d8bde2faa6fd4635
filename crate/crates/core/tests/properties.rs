use proptest::prelude::*;

use permwordle::{
    construct_general, cs_strategy, default_max_turns, is_offender, lcs_strategy, play,
    GeneralOutcome, Outcome, Permutation, Strategy as GameStrategy, Verdict,
};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn any_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(perm)
}

/// Length 1 admits only `[1]`, which strategies accept as their first component.
fn component(k: usize) -> BoxedStrategy<Permutation> {
    if k == 1 {
        Just(Permutation::identity(1).unwrap()).boxed()
    } else {
        perm(k)
            .prop_filter("derangement", Permutation::is_derangement)
            .boxed()
    }
}

fn game_strategy(n: usize) -> impl Strategy<Value = GameStrategy> {
    (1..=n)
        .map(component)
        .collect::<Vec<_>>()
        .prop_map(|components| GameStrategy::new(components).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cyclic_shifts_never_repeat(secret in (2usize..=9).prop_flat_map(perm)) {
        let n = secret.len();
        for s in [cs_strategy(n).unwrap(), lcs_strategy(n).unwrap()] {
            let t = play(&secret, &s, default_max_turns(n)).unwrap();
            let solved_in_n = matches!(t.outcome, Outcome::Solved { turns } if turns <= n);
            prop_assert!(solved_in_n);
            prop_assert_eq!(t.verdict().unwrap(), Verdict::Clean);
        }
    }

    #[test]
    fn inverse_round_trip(q in any_perm(12)) {
        prop_assert_eq!(q.inverse().inverse(), q.clone());
        prop_assert!(q.compose(&q.inverse()).unwrap().is_identity());
        prop_assert!(q.inverse().compose(&q).unwrap().is_identity());
    }

    #[test]
    fn compose_is_associative((a, b, c) in (1usize..=10).prop_flat_map(|n| (perm(n), perm(n), perm(n)))) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.compose(&b).unwrap().inverse(), b.inverse().compose(&a.inverse()).unwrap());
    }

    #[test]
    fn mirror_is_an_involution(q in any_perm(12)) {
        prop_assert_eq!(q.mirror().mirror(), q.clone());
        prop_assert_eq!(q.mirror().inverse(), q.inverse().mirror());
        prop_assert_eq!(q.mirror().displacement().values().to_vec(), q.left_displacement().reversed().values().to_vec());
    }

    #[test]
    fn cycles_rebuild_the_permutation(q in any_perm(12)) {
        let cycles = q.cycle_decomposition();
        let slices: Vec<&[usize]> = cycles.cycles().iter().map(Vec::as_slice).collect();
        prop_assert_eq!(Permutation::from_cycles(q.len(), &slices).unwrap(), q.clone());
        prop_assert_eq!(cycles.cycle_type().iter().sum::<usize>(), q.len());
    }

    #[test]
    fn mirrored_games_correspond((secret, strategy) in (2usize..=8).prop_flat_map(|n| (perm(n), game_strategy(n)))) {
        let n = secret.len();
        let mirrored = GameStrategy::new(strategy.components().iter().map(Permutation::mirror).collect()).unwrap();
        let a = play(&secret, &strategy, default_max_turns(n)).unwrap();
        let b = play(&secret.mirror(), &mirrored, default_max_turns(n)).unwrap();
        prop_assert_eq!(a.outcome, b.outcome);
        let mirrored_guesses: Vec<Permutation> = a.guesses().map(Permutation::mirror).collect();
        prop_assert_eq!(mirrored_guesses, b.guesses().cloned().collect::<Vec<_>>());
    }

    #[test]
    fn every_non_shift_strategy_has_a_verified_offender(strategy in (4usize..=9).prop_flat_map(game_strategy)) {
        let n = strategy.len();
        match construct_general(&strategy).unwrap() {
            GeneralOutcome::NoOffender => prop_assert!(strategy.pure_shift_direction().is_some()),
            GeneralOutcome::Offender(o) => {
                prop_assert!(strategy.pure_shift_direction().is_none());
                prop_assert!(o.omega.entries()[..o.prefix_len].iter().enumerate().all(|(i, &v)| v != i + 1));
                prop_assert!(o.omega.entries()[o.prefix_len..].iter().enumerate().all(|(i, &v)| v == o.prefix_len + i + 1));
                prop_assert!(is_offender(&strategy, &o.omega, default_max_turns(n)).unwrap().is_offender());
            }
        }
    }
}
