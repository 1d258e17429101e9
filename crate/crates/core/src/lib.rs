//! Exact classification of characters of the pure braid groups `P_n` with
//! respect to the BNS invariant `Sigma^1(P_n)`.
//!
//! A character is a rational weight on each standard generator `S_ij`.
//! [`classifier::classify`] places its class either on one of the
//! `C(n,3) + C(n,4)` complement circles or in `Sigma^1`, and attaches a
//! certificate. Certificates for `Sigma^1` expand into witness packages
//! ([`witness`]) whose conditions are rechecked independently, down to word
//! identities verified in the Artin representation ([`braid`]).

pub mod braid;
pub mod character;
pub mod chi_graph;
pub mod circles;
pub mod classifier;
pub mod cli;
pub mod dot;
pub mod error;
pub mod rational;
pub mod sample;
pub mod witness;

pub use character::{pullback_phi, pullback_rho, Character, Permutation, ProjectivePoint, SwingSet};
pub use error::{Error, Result};
pub use rational::Rat;
