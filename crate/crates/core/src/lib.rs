//! Planar-embedded Brauer trees, their tree algebras, and replayable
//! certificates for determining trees of blocks with cyclic defect.

pub mod algebra;
pub mod dataset;
pub mod qpoly;
pub mod tree;
pub mod validation;
