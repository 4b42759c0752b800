//! Braid monodromy and van Kampen presentations of real line arrangement
//! complements, with a certifying prover for conjugation-free presentations.

pub mod braid;
pub mod fixtures;
pub mod geom;
pub mod grouptheory;
pub mod presentations;
pub mod vankampen;
pub mod wiring;
