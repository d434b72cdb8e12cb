//! Exact computation of branching laws for generalized Verma modules.

pub mod catalog;
pub mod character;
pub mod convex;
pub mod embedding;
pub mod linalg;
pub mod pi;
pub mod rational;
pub mod root_system;
pub mod run;
pub mod verma;
