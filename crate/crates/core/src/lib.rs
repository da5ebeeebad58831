//! Exact dynamical Weyl group operators for finite-dimensional
//! representations, together with the rank-one equivariant localization data
//! they are compared against.

pub mod linalg;
pub mod ratfun;
pub mod rep;
pub mod dynweyl;
pub mod geomsatake;
pub mod rootdata;
pub mod verify;
