//! Cylindric skew Schur functions on the cylinder C_{k,n-k}: ribbon-style
//! Schur expansions, quasisymmetric generating functions of oriented posets,
//! and the toric/skew structure theory connecting the two.

pub mod cylindric;
pub mod partition;
pub mod poset;
pub mod qsym;
pub mod signed;
pub mod symfunc;
pub mod verify;
