//! Exact construction of cubic circulant, bicirculant and tricirculant
//! graphs, and three independent decisions of the nut-graph property:
//! rational kernel computation, cyclotomic divisibility, and closed-form
//! arithmetic predicates.

pub mod census;
pub mod classify;
pub mod cyclo;
pub mod error;
pub mod exactla;
pub mod numtheory;
pub mod voltage;

pub use error::{Error, Result};
