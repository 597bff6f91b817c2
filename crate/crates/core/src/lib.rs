//! Coverings of curves modeled by permutation monodromy.
//!
//! The crate enumerates and classifies finite coverings of curves through
//! their monodromy representations, computes genera of total spaces and
//! quotient curves (Riemann-Hurwitz, coset actions, Accola's partition
//! identity), and tracks the numerical side of Prym varieties: dimensions,
//! induced polarization types, and the combinatorics of Weierstrass points.
//!
//! Everything is exact integer arithmetic over explicitly tabulated groups;
//! every claimed count is reproduced by exhaustion rather than by formula.
//! The heavy scans (homomorphism enumeration, the dihedral tower search) run
//! data-parallel under the default `parallel` feature and have sequential
//! reference implementations that double as test oracles.

pub mod covers;
pub mod error;
pub mod genera;
pub mod homenum;
pub mod permgroup;
pub mod prym;

pub use error::{Error, Result};
