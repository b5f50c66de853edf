//! Exact systems of measures on finite spaces.
//!
//! A system of measures on a map `π: X → Y` is a family of measures `λʸ` on
//! `X`, one per point of `Y`, each concentrated on the fiber `π⁻¹(y)`. This
//! crate builds such systems over finite labelled spaces with exact rational
//! masses and implements the constructions on them:
//!
//! - composition of systems along composable maps ([`kernel`]),
//! - lifting along pullback projections ([`pullback`]),
//! - fibred products over a common base ([`fibred`]),
//! - disintegration, Radon–Nikodym derivatives and bounded disintegrations
//!   ([`disintegration`]),
//! - left-invariant and Haar systems on finite groupoids ([`groupoid`]),
//! - the π-system / Dynkin-system machinery behind measure uniqueness
//!   ([`setsystems`]).
//!
//! Finite T1 spaces are discrete, so "open", "closed" and "Borel" all mean
//! "any subset" throughout, and every map is continuous and open.
//!
//! ```
//! use msk_core::{q, FiniteSpace, Kernel, Measure, SpaceMap};
//!
//! let x = FiniteSpace::new("X", ["a", "b"]).unwrap();
//! let y = FiniteSpace::new("Y", ["u"]).unwrap();
//! let p = SpaceMap::constant("p", &x, &y, "u").unwrap();
//! let alpha = Kernel::new(
//!     p,
//!     vec![Measure::from_pairs(&x, &[("a", q("1/3")), ("b", q("2/3"))]).unwrap()],
//! )
//! .unwrap();
//! assert!(alpha.is_probability_system());
//! ```

pub mod disintegration;
pub mod error;
pub mod fibred;
pub mod groupoid;
pub mod kernel;
pub mod map;
pub mod measure;
pub mod pullback;
pub mod random;
pub mod rational;
pub mod setsystems;
pub mod space;

pub use error::{Error, Result};
pub use kernel::{compose, integrate_measure, AtomDifference, Kernel};
pub use map::SpaceMap;
pub use measure::{pair_label, product_space, Measure};
pub use rational::{q, Rational};
pub use space::{FiniteSpace, Subset};
