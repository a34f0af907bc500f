//! Prefix reversals ("flips") on strings over small alphabets.
//!
//! Closed-form sorting and grouping distances for binary and ternary
//! strings, optimal and approximate solvers, brute-force oracles, the
//! prefix-reversal diameter, and the hardness gadgets.
//!
//! ```
//! use flipstr::{classify, solve, NormalizedString};
//!
//! let s: NormalizedString = "20102".parse().unwrap();
//! assert_eq!(classify::sorting_distance(&s).unwrap(), 3);
//! let r = solve::sort_optimal(&s).unwrap();
//! assert_eq!(r.sequence.to_string(), "4,2,2");
//! ```

pub mod classify;
pub mod error;
pub mod oracle;
pub mod reductions;
pub mod solve;
pub mod string;
pub mod verify;

pub use error::{Error, Result};
pub use string::{
    compatible, flip_norm, flip_raw, identity_string, normalize, one_flip_children, parents, Flip, FlipKind,
    FlipSequence, FrequencyVector, NormalizedString, RawString, Symbol,
};
