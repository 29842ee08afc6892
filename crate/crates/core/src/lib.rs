//! Rate-compatible LDPC codes derived from punctured simplex codes.
//!
//! A binary cyclic simplex code is fully described by a primitive polynomial
//! `h(x)` of degree `k`: its parity-check matrix is the band matrix obtained
//! by sliding the coefficient vector of `h` one column to the right per row.
//! Puncturing trailing row/column pairs of that matrix yields a code of any
//! block length `n` between `k + 1` and `2^k - 1`, so the rate is adjustable
//! with bit granularity. When the support of `h` is a Golomb ruler the matrix
//! is free of length-4 cycles and the code behaves as a proper LDPC code
//! under belief-propagation decoding.
//!
//! The crate provides:
//!
//! - exact GF(2) polynomial arithmetic and primitivity testing ([`gf2poly`]),
//! - support/separation analysis and ruler predicates ([`ruler`]),
//! - code construction with puncturing and shortening ([`code`]),
//! - generation and navigation of the underlying pseudo-noise sequence,
//!   including landmark location ([`pnseq`]),
//! - exact and estimated weight spectra and distance profiles ([`spectrum`]),
//! - a search procedure for suitable parity-check polynomials ([`design`]),
//! - an LFSR encoder and iterative decoders ([`codec`]),
//! - a deterministic Monte Carlo error-rate harness ([`simulator`]).
//!
//! The `prcldpc` binary exposes all of the above as CLI subcommands; see the
//! repository README for usage.

pub mod cli;
pub mod code;
pub mod codec;
pub mod design;
mod error;
pub mod gf2poly;
pub mod pnseq;
pub mod ruler;
pub mod simulator;
pub mod spectrum;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
