//! Word-level ground truth for the pure braid group: free-group
//! automorphisms, the Artin representation, and the presentation
//! identities the classifier relies on.

pub mod artin;
pub mod free;
pub mod identities;

pub use artin::{
    artin_sigma, commute_wordlevel, commutes_predicate, factorization_holds, parse_braid_word,
    standard_pure_word, swing_word, BraidWord, WORD_BUDGET_STRANDS,
};
pub use free::{aut_equal, compose, FreeGroupAut, FreeWord};
