//! Homaloidal and sub-homaloidal types, their arithmetic quadratic
//! transformations, and a prime-field engine that instantiates ideals of
//! fat points at random points to measure Hilbert functions, Betti numbers
//! and power dimensions.

pub mod fatpoints;
pub mod ffla;
pub mod search;
pub mod typecalc;
