//! Exact q-expansions of modular forms for the free group generated by
//! `[[1,2],[0,1]]` and `[[1,0],[2,1]]`, the central-binomial sequences
//! attached to them through `θ = Σ C(2n,n)² lⁿ`, and a verification engine
//! for the resulting three-term (Atkin–Swinnerton-Dyer type) congruences.
//!
//! Everything is computed with arbitrary-precision integers. The series
//! variable is `q = e^{πiτ}` throughout, so every form handled here has an
//! integral expansion in non-negative powers of `q`.

pub mod arith;
pub mod cache;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod families;
pub mod forms;
pub mod report;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
pub use forms::{EtaQuotient, FormSpec};
pub use report::{CheckRecord, Status, VerificationReport};
pub use sequences::SequenceTable;
pub use series::PowerSeries;
