//! Closed classes of three-valued logic generated by symmetric periodic
//! functions.
//!
//! The crate covers four layers:
//!
//! * [`symfun`] and [`table`]: functions of `R` (values in `{0,1}`, zero on
//!   any tuple with a `0`), symmetric layer vectors and periodic profiles.
//! * [`formula`]: formulas over a signature, evaluation, `Θ(Φ)`, essential
//!   subformulas and the rewriting identities of the `i_n` family.
//! * [`closure`]: an exact fixpoint computation of `[G]` on a fixed variable
//!   set, with witness formulas.
//! * [`criteria`] and [`classify`]: arithmetic membership tests with
//!   certificates, and basis classification of generator families.

pub mod arith;
pub mod classify;
pub mod closure;
pub mod criteria;
pub mod error;
pub mod formula;
pub mod literal;
pub mod symfun;
pub mod table;
pub mod verify;

pub use closure::{close, member_oracle, ClosureCaps, ClosureState, DerivedFn, OracleVerdict};
pub use criteria::{
    maximal_set, member_psr_with_i, member_single, member_single_with_i, Branch, Certificate,
    Membership,
};
pub use error::{Error, Result};
pub use formula::{Formula, Occurrence, Signature};
pub use literal::FnLiteral;
pub use symfun::{detect_period, make_periodic, nset_intersection, periodic_profiles, PeriodicProfile, SymmetricFn};
pub use table::TableFn;
