//! Exact computations with invariant subspaces of `K^n` under a matrix
//! algebra `A ⊂ M_n(K)`: membership oracles for invariant, invariant-generated
//! and fibered-product points, the invariant wedge span, tangent spaces, the
//! affine chart atlas, and two-sided vector space classification.
//!
//! All arithmetic is exact. Number fields are towers of simple extensions of
//! ℚ ([`FieldTower`]); small prime fields ([`PrimeField`]) are supported for
//! brute-force oracles. Vectors are rows and matrices act on the right.
//!
//! ```
//! use invgrass::{exterior, FieldTower};
//!
//! let f = FieldTower::new(&[("r", "r^3 - 2"), ("z", "z^2 + z + 1")], 0).unwrap();
//! let basis = f.parse_matrix(&[&["1", "z", "0", "0"], &["0", "0", "1", "z^2"]]).unwrap();
//! let p = exterior::plucker(&basis).unwrap();
//! assert_eq!(p.coeffs(), f.parse_vector(&["0", "1", "z^2", "z", "1", "0"]).unwrap());
//! assert_eq!(p.to_strings(), ["0", "1", "-1 - z", "z", "1", "0"]);
//! ```

pub mod error;
pub mod exactla;
pub mod exterior;
pub mod field;
pub mod fieldtower;
pub mod modalg;
pub mod paramspace;
pub mod poly;
pub mod twosided;
pub mod wedgeinv;

pub use error::{Error, Result};
pub use exactla::{Matrix, Subspace};
pub use field::{Field, PrimeField};
pub use fieldtower::{Embedding, FieldElement, FieldTower};
pub use poly::Polynomial;
