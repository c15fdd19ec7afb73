//! Garside-theoretic computations in spherical Artin–Tits groups: normal
//! forms, parabolic subgroups and ribbons, absorbable elements, the
//! additional length graph, growth rates and bounded free-product checks.

pub mod absorbable;
pub mod atoms;
pub mod cal;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod freeprod;
pub mod garside;
pub mod growth;
pub mod parabolic;
pub mod ring;

pub use atoms::AtomSet;
pub use coxeter::{classify, parse_system, system, ArtinSystem, CoxeterElement, CoxeterMatrix, Family, Side};
pub use error::{GarsideError, Result};
pub use garside::{parse_word, GroupElement, LatticeOp, Order};
