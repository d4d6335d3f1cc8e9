//! Exact invariants of links: Laurent polynomial algebra, Fox calculus and
//! Alexander polynomials, finite covers, linking forms, and twisted homology.

pub mod budget;
pub mod laurent;
pub mod linalg;
pub mod link;
pub mod presentation;
pub mod alexander;
pub mod obstruction;
pub mod covers;
pub mod linkforms;
pub mod twisted;
