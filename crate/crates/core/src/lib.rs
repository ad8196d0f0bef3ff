//! Exact classical and quantum Schubert calculus on the Lagrangian
//! Grassmannian `LG(n, 2n)`.
//!
//! The Q̃-polynomials of `Λ_m` carry everything: their structure constants
//! `e(λ, μ; ν)` give the classical ring `H*(LG)` by key filtering and the
//! quantum ring `QH*(LG)` after stripping parts equal to `n + 1`. Quantum
//! products are computed by three independent engines that must agree.

pub mod classical;
pub mod error;
pub mod partition;
pub mod polyring;
pub mod qtilde;
pub mod quantum;
pub mod report;
pub mod symplectic;
pub mod verify;

pub use classical::CohClass;
pub use error::{Error, Result};
pub use partition::{Partition, StripData};
pub use polyring::{EPoly, Int, XPoly};
pub use qtilde::QExpansion;
pub use quantum::{Engine, QuantumClass, SpecialPoly};
pub use report::CaseReport;

/// Empties the shared memo tables. Values never change; this only releases
/// memory and lets timings start cold.
pub fn clear_memos() {
    qtilde::clear_memos();
    quantum::clear_memo();
}
