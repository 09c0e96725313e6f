//! Exact computations with valuations on `K[x]` over a few concrete valued
//! fields `(K, v)` of rank one.

pub mod approx;
pub mod basefield;
pub mod generators;
pub mod golden;
pub mod ordgroup;
pub mod parse;
pub mod pcs;
pub mod poly;
pub mod valuation;
