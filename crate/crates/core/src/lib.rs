//! Codes correcting up to `t` sticky deletions of magnitude at most `l`:
//! at most `t` runs of a binary word each lose at most `l` repeated bits,
//! and no run disappears entirely.
//!
//! The crate provides the run-profile transform stack ([`word`]), prime and
//! extension field arithmetic ([`galois`]), p-ary narrow-sense BCH codes
//! ([`bch`]), the channel itself with exhaustive error-ball enumeration
//! ([`channel`]), a non-systematic code plus a single-deletion checksum
//! family ([`nonsystematic`]), a systematic encoder/decoder ([`systematic`]),
//! and brute-force ground truth used to certify all of the above ([`oracle`]).

pub mod bch;
pub mod channel;
pub mod error;
pub mod galois;
pub mod nonsystematic;
pub mod oracle;
pub mod systematic;
pub mod word;

pub use channel::{ChannelSpec, ErrorPattern};
pub use error::{DecodeFailure, Error, PatternViolation, Result};
pub use word::{BitWord, ResidueVector, RunProfile};
