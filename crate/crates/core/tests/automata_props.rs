//! Automata operations against brute-force word enumeration.

use clopen_core::*;
use proptest::prelude::*;

const MAX_LEN: usize = 6;

fn ab() -> Alphabet {
    Alphabet::from_letters("ab")
}

fn dfa(states: usize, seed: u64) -> Dfa {
    random_dfa(states, &ab(), Frequency::new(1, 2), seed).unwrap()
}

fn member(d: &Dfa, w: &[usize]) -> bool {
    d.run_indices(w)
}

fn words(max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| (0..2).map(move |a| [w.as_slice(), &[a]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn in_concat(l: &Dfa, m: &Dfa, w: &[usize]) -> bool {
    (0..=w.len()).any(|i| member(l, &w[..i]) && member(m, &w[i..]))
}

/// w ∈ L⁺ by dynamic programming over prefix lengths.
fn in_plus(l: &Dfa, w: &[usize]) -> bool {
    if w.is_empty() {
        return member(l, w);
    }
    let mut reach = vec![false; w.len() + 1];
    reach[0] = true;
    for j in 1..=w.len() {
        reach[j] = (0..j).any(|i| reach[i] && member(l, &w[i..j]));
    }
    reach[w.len()]
}

/// Closed under concatenation, checked on every split of every word up to
/// `max_len`.
fn brute_closed(d: &Dfa, max_len: usize) -> bool {
    words(max_len)
        .iter()
        .filter(|w| !member(d, w))
        .all(|w| !(1..w.len()).any(|i| member(d, &w[..i]) && member(d, &w[i..])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boolean_operations(n in 1usize..6, m in 1usize..6, s1: u64, s2: u64) {
        let (l, r) = (dfa(n, s1), dfa(m, s2));
        let (c, i, u, d) = (l.complement(), l.intersection(&r).unwrap(), l.union(&r).unwrap(), l.difference(&r).unwrap());
        for w in words(MAX_LEN) {
            let (x, y) = (member(&l, &w), member(&r, &w));
            prop_assert_eq!(member(&c, &w), !x);
            prop_assert_eq!(member(&i, &w), x && y);
            prop_assert_eq!(member(&u, &w), x || y);
            prop_assert_eq!(member(&d, &w), x && !y);
        }
    }

    #[test]
    fn minimization_preserves_language(n in 1usize..8, seed: u64) {
        let d = dfa(n, seed);
        let min = d.minimize();
        prop_assert!(min.state_count() <= d.state_count());
        prop_assert_eq!(min.minimize().state_count(), min.state_count());
        prop_assert!(min.equivalent(&d).unwrap());
        for w in words(MAX_LEN) {
            prop_assert_eq!(member(&min, &w), member(&d, &w));
        }
    }

    #[test]
    fn concatenation_and_closure(n in 1usize..4, m in 1usize..4, s1: u64, s2: u64) {
        let (l, r) = (dfa(n, s1), dfa(m, s2));
        let lr = l.to_nfa().concatenate(&r.to_nfa()).unwrap().determinize(DEFAULT_BUDGET).unwrap();
        let plus = l.to_nfa().closure(ClosureKind::Positive).determinize(DEFAULT_BUDGET).unwrap();
        let star = l.to_nfa().closure(ClosureKind::Kleene).determinize(DEFAULT_BUDGET).unwrap();
        for w in words(MAX_LEN) {
            prop_assert_eq!(member(&lr, &w), in_concat(&l, &r, &w));
            prop_assert_eq!(member(&plus, &w), in_plus(&l, &w));
            prop_assert_eq!(member(&star, &w), w.is_empty() || in_plus(&l, &w));
        }
    }

    #[test]
    fn shortest_accepted_is_shortest(n in 1usize..8, seed: u64) {
        let d = dfa(n, seed);
        let first = words(n).into_iter().find(|w| member(&d, w));
        match d.shortest_accepted() {
            Some(w) => {
                prop_assert!(w.len() < n);
                prop_assert_eq!(Some(ab().encode(&w).unwrap()), first);
            }
            None => prop_assert!(first.is_none() && d.is_empty()),
        }
    }

    #[test]
    fn closed_check_matches_enumeration(n in 1usize..4, seed: u64) {
        // a failing DFA with n states has a counterexample of length ≤ n² + n − 1
        let d = dfa(n, seed);
        let verdict = check_property(&d, Property::PositiveClosed);
        prop_assert_eq!(verdict.holds, brute_closed(&d, n * n + n - 1));
        prop_assert!(verdict.verify(&d));
    }

    #[test]
    fn interior_is_open_subset(n in 1usize..4, seed: u64) {
        let d = dfa(n, seed);
        let int = interior(&d, ClosureKind::Positive, DEFAULT_BUDGET).unwrap();
        prop_assert!(is_open(&int, ClosureKind::Positive));
        prop_assert!(int.is_subset_of(&d).unwrap());
        if is_open(&d, ClosureKind::Positive) {
            prop_assert!(int.equivalent(&d).unwrap());
        }
    }

    #[test]
    fn aut_format_round_trips(n in 1usize..8, seed: u64) {
        let d = dfa(n, seed);
        let text = d.to_aut();
        let back = Dfa::from_aut(&text).unwrap();
        prop_assert_eq!(back.to_aut(), text);
    }

    #[test]
    fn splitmix_bounds(seed: u64, n in 1usize..1000) {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..32 {
            prop_assert!(rng.below(n) < n);
        }
    }
}
