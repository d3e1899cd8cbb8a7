//! Dot-product sets over prime fields.
//!
//! For `E, F ⊂ F_q^d` (`q` an odd prime) this crate computes the dot-product
//! set `Π(E,F)`, the distance set, the counting function `ν`, Fourier
//! transforms of indicator functions, line-through-origin statistics
//! `|E ∩ l_x|`, and the energy `𝔅(E,F)` that turns them into a lower bound on
//! `|Π(E,F)|`. The [`harness`] module wraps all of it in reproducible
//! verification suites and sweeps.
//!
//! ```
//! use ffdot::pointset::PointSet;
//! use ffdot::products::{bounds, dot_product_set};
//!
//! let s1 = PointSet::sphere(3, 2, 1).unwrap();
//! assert_eq!(dot_product_set(&s1, &s1).unwrap().len(), 3);
//! let b = bounds(&s1, &s1).unwrap();
//! assert!(b.cs_bound.le_integer(3));
//! ```

pub mod error;
pub mod field;
pub mod geometry;
pub mod harness;
pub mod pointset;
pub mod products;
pub mod spectral;

pub use error::{Error, Result};
pub use field::Field;
pub use geometry::{LineRep, Variety, Vector};
pub use pointset::PointSet;
