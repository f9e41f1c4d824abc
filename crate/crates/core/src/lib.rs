//! Closure properties of formal languages.
//!
//! Decides whether regular languages are closed, open or clopen under
//! positive or Kleene closure, extracts shortest counterexamples, builds
//! clopen and open separators for pairs of words, and checks algebraic laws
//! about closed languages against independent oracles.
//!
//! ```
//! use clopen_core::{check_property, Dfa, Property};
//!
//! let aut = "alphabet: a b\nstates: s x y d\ninitial: s\nfinals: y\n\
//!            s a x\ns b d\nx a x\nx b y\ny a d\ny b y\nd a d\nd b d\n";
//! let d = Dfa::from_aut(aut).unwrap();
//! let verdict = check_property(&d, Property::PositiveClosed);
//! assert!(!verdict.holds);
//! assert_eq!(verdict.certificate.unwrap().to_string(), "u=a.b v=a.b uv=a.b.a.b");
//! ```

pub mod automata;
pub mod closure;
pub mod combinatorics;
pub mod error;
pub mod generators;
pub mod lang;
pub mod laws;
pub mod separation;
pub mod word;

pub use automata::{
    parse_automaton, Automaton, BoolOp, ClosureKind, Dfa, Nfa, ParsedAutomaton, StateId, DEFAULT_BUDGET,
};
pub use closure::{
    build_counterexample_nfa, check_nfa_closed, check_property, interior, is_closed, is_open, shortest_counterexample,
    Counterexample, CounterexampleNfa, FailureReason, Property, Verdict,
};
pub use combinatorics::{
    commutes, connected, connected_components, is_primitive, power_exponent, primitive_root, PrimitiveDecomposition,
};
pub use error::{Error, Result};
pub use generators::{
    derive_seed, prefix_language, random_dfa, random_finite_language, random_nfa, witness_automaton, NfaShape,
    SplitMix64, WitnessKind, WitnessSpec,
};
pub use lang::oracle::{oracle_check, BoundedVerdict, MembershipTable, OracleProperty, OracleViolation, Source};
pub use lang::{parse_expr, Cmp, Frequency, LangExpr};
pub use laws::{
    compact_union, is_compact, join, meet, run_law_suite, Bounds, CompactLang, Compactness, LawReport, Suite, Violation,
};
pub use separation::{
    distinguish_open, separate_clopen, separate_open, separate_open_pair, Contains, Separation, SeparationStep,
    SeparationTrace,
};
pub use word::{Alphabet, Symbol, Word, EPSILON};
