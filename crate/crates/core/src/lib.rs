//! Castelnuovo–Mumford regularity and degree bounds for graded modules over
//! polynomial rings over prime fields.

pub mod bounds;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod field;
pub mod format;
pub mod groebner;
pub mod hilbert;
pub mod invariants;
pub mod linalg;
pub mod modops;
pub mod monomial;
pub mod polynomial;
pub mod presentation;
pub mod resolution;
pub mod verify;
pub mod ring;

pub use error::{Error, Result};
pub use field::{Coeff, PrimeField};
pub use groebner::{buchberger, normal_form, syzygies, FreeModule, GroebnerBasis, ModuleElement};
pub use hilbert::LaurentPoly;
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::Polynomial;
pub use presentation::{validate_presentation, GradedPresentation};
pub use resolution::{minimalize, schreyer_resolution, BettiTable, Resolution};
pub use ring::{GradedRing, RingRef};
