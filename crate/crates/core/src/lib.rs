//! Tutte-type polynomials of graphs embedded in closed orientable surfaces.

pub mod map;
pub mod poly;
pub mod invariants;
pub mod linalg;
pub mod report;
pub mod homology;
pub mod tutte;
pub mod multivariate;
pub mod links;
pub mod corpus;
