//! Crystal operations on binary and integral matrices and the
//! combinatorics of tableaux built on them.

pub mod crystal_bin;
pub mod crystal_int;
pub mod cancellation;
pub mod cli;
pub mod doublecrystal;
pub mod growth;
pub mod insertion_oracles;
pub mod matrices;
pub mod pictures;
pub mod schutzenberger;
pub mod shapes;
