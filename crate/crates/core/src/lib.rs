//! Exact calculus of rearrangement-invariant function spaces on `(0, ∞)`.
//!
//! Every function is a nonnegative step function ([`StepFunction`]), which makes
//! rearrangements, Lorentz quasi-norms and Hardy-type averages computable in
//! closed form. Quantities that are not closed-form (norms of Hardy averages and
//! of the interpolation functor) are returned as certified [`Enclosure`]s.
//!
//! Module map:
//!
//! * [`stepfn`]: step functions, distribution function, rearrangement, dilation.
//! * [`lorentz`]: `L_{p,q}` quasi-norms, dilation norms, Boyd indices.
//! * [`hardy`]: Hardy averaging operators with monotone envelopes.
//! * [`interp`]: K-functionals, Holmstedt's expression, the `(Θ, r, E)` functor.
//! * [`counterexamples`]: the `L_1 ∩ L_∞ ⊄ L_{1,q}` construction.
//! * [`harness`]: seeded corpora and verification drivers.
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod counterexamples;
pub mod enclosure;
pub mod error;
pub mod hardy;
pub mod harness;
pub mod interp;
pub mod kernel;
pub mod lorentz;
pub mod power;
pub mod stepfn;

pub use enclosure::Enclosure;
pub use error::{Error, Result};
pub use hardy::MonotoneEnvelope;
pub use interp::{FunctorParams, LorentzCouple};
pub use lorentz::{LorentzParams, SpaceDescriptor};
pub use stepfn::StepFunction;
