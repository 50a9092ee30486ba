//! Birational maps of projective three-space generated by the standard Cremona
//! involution and a finite group of projectivities permuting its special points.

#![allow(clippy::needless_range_loop)]

pub mod algebraic;
pub mod birmap;
pub mod cubes;
pub mod invariants;
pub mod khk;
pub mod linalg;
pub mod modp;
pub mod picard;
pub mod polyring;
pub mod reproduce;
pub mod seqfit;
pub mod singular;
