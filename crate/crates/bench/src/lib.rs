//! Shared fixtures for the benchmarks.

use clopen_core::{
    derive_seed, random_dfa, witness_automaton, Alphabet, Dfa, Frequency, WitnessKind, WitnessSpec, Word,
};

/// Seed every benchmark input derives from.
pub const SEED: u64 = 0x5EED;

pub fn witness(n: usize) -> Dfa {
    witness_automaton(WitnessSpec {
        n,
        which: WitnessKind::M,
    })
    .expect("n >= 1")
}

pub fn random_binary_dfa(states: usize, index: u64) -> Dfa {
    random_dfa(
        states,
        &Alphabet::from_letters("ab"),
        Frequency::new(1, 2),
        derive_seed(SEED, index),
    )
    .expect("states >= 1")
}

/// A non-commuting pair of length `len` each: a^(len-1) b and b a^(len-1).
pub fn rotated_pair(len: usize) -> (Word, Word) {
    let a = Word::from_letters("a").power(len - 1);
    let b = Word::from_letters("b");
    (a.concat(&b), b.concat(&a))
}
