//! Constructions and verifiers for Steiner quadruple systems, their large sets
//! LS(3,4,n;μ), H-designs and their large sets, and the arrays that drive the
//! recursive constructions.

pub mod arrays;
pub mod designcore;
pub mod error;
pub mod gf;
pub mod hdesign;
pub mod io;
pub mod lsops;
pub mod paperdata;
pub mod recursion;
pub mod search;

pub use designcore::{Design, LargeSet, Point};
pub use error::{Error, Result, Violation};
