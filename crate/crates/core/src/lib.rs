//! Exact complexity analysis for cut-and-project point sets.
//!
//! The crate is organised bottom-up: [`exact`] provides number fields and
//! rational linear algebra, [`scheme`] validates projection data and
//! windows, [`singular`] derives the complexity exponent from stabilizer
//! ranks, [`arrangement`] counts regions cut out of the window, [`patches`]
//! counts patches directly, and [`words`] handles one-dimensional words and
//! their Rauzy graphs.

pub mod exact;
pub mod scheme;
pub mod singular;
pub mod arrangement;
pub mod patches;
pub mod words;
pub mod cli;
