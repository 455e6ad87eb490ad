//! Exact homotopy invariants of simply connected closed 4-manifolds.
//!
//! Everything here is a function of the second Betti number `b2`:
//!
//! - [`series`]: truncated power series with exact rational coefficients and
//!   the generating-series constructors (free graded commutative, tensor,
//!   quotient `T(V)/I`, PBW products).
//! - [`ranks`]: ranks of `pi_n ⊗ Q` by Möbius inversion of `log(1 - kt + t^2)`,
//!   with the PBW self-consistency check and the cumulative lower bound.
//! - [`growth`]: elliptic/hyperbolic classification and the growth base
//!   `(k + sqrt(k^2 - 4)) / 2` in fixed-point decimal arithmetic.
//! - [`oracle`]: brute-force dimensions of `T(V)/I` by exact rank computations
//!   on the two-sided ideal, used to check the closed forms independently.
//! - [`groups`]: finitely generated abelian groups in primary decomposition
//!   and the assembly of stable homotopy groups from stable stems.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod decimal;
mod error;
pub mod groups;
pub mod growth;
pub mod oracle;
pub mod ranks;
pub mod series;

pub use error::{Error, Result};
pub use groups::{DirectSum, FinAbGroup, FormalSum, PrimePower, StemsTable};
pub use growth::{growth_report, Classification, GrowthReport};
pub use oracle::{OracleReport, Word};
pub use ranks::{homotopy_ranks, PbwCheck, RankTable};
pub use series::{GradedDims, TruncatedSeries};
