//! Exact computation in the pentagon groups generated by quadruple symbols
//! `(i j k l)`: presentations, normal forms, GF(2) homology, the symmetric
//! group action, relation sweeps and Todd-Coxeter coset enumeration.

pub mod bits;
pub mod coset;
pub mod error;
pub mod homology;
pub mod normal_form;
pub mod presentation;
pub mod quad;
pub mod symmetry;
pub mod verify;

pub use bits::{Echelon, Gf2Matrix, Gf2Vec};
pub use error::{Error, Result};
pub use normal_form::{Element, NormalFormEngine};
pub use presentation::{Family, GroupWord, Letter, Presentation, Variant};
pub use quad::{canonicalize, classify, enumerate_canonical, CanonicalSymbol, GenClass, QuadSymbol};
