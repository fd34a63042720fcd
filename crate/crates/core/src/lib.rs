//! Polynomial interpolation of integral ("diffused") data on disc supports
//! in the unit disc.
//!
//! Given discs `K_1, …, K_N` with `N = dim P_d`, the projector `Π` maps a
//! function `f` to the unique `p ∈ P_d` with `∫_{K_i} p = ∫_{K_i} f` for all
//! `i`. The crate builds unisolvent disc configurations ([`geometry`],
//! [`greedy`]), assembles and inverts the associated Vandermonde matrices
//! ([`vandermonde`]), estimates the Lebesgue constant that bounds `‖Π‖`
//! ([`lebesgue`]) and measures interpolation errors ([`interp`]).
//!
//! With the default `parallel` feature, grid evaluation and integral
//! assembly run on the rayon pool; without it the same code runs serially.

// `!(x > t)` comparisons are deliberate: NaN must fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod error;
pub mod geometry;
pub mod greedy;
pub mod interp;
pub mod lebesgue;
mod par;
pub mod quadrature;
pub mod vandermonde;

pub use basis::{basis_size, eval_basis, restricted_dim, BasisKind, BasisSpec, MultiIndex};
pub use error::{Error, Result};
pub use geometry::{
    apply_affine, bojanov_xu_points, fitted_discs, halton_points, orbit_supports, translated_supports, AffineMap2,
    DiscSupport, Domain, OrbitSchedule, Point2, SupportSet,
};
pub use greedy::{approximate_fekete, build_pool, discrete_leja, CandidatePool, ExtractedSet};
pub use interp::{builtin_integrands, eval_interpolant, project, sup_error, Integrand, PolyInterpolant};
pub use lebesgue::{
    invariance_check, lebesgue_long, lebesgue_short, nodal_lebesgue, EvalGrid, LebesgueEstimate, Method, ProbeFamily,
};
pub use quadrature::{disc_rule, integrate, integrate_basis, QuadRule};
pub use vandermonde::{assemble, condition_number, is_unisolvent, lagrange_coeffs, LagrangeCoeffs, VandermondeMatrix};
