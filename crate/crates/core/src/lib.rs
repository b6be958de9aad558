//! Exact numerics for weak stability conditions on Weierstraß elliptic K3
//! surfaces.
//!
//! Classes live in the sublattice spanned by rank, the section Θ, the fiber
//! f and the point class. All arithmetic is over ℚ; floating point only
//! appears where a square root leaves ℚ (the matrix `T` of the central
//! charge equation and the charges along sampled trajectories).
//!
//! ```
//! use ellstab::{ChernVector, Surface};
//!
//! let x = Surface::k3(0);
//! let o_theta = x.ch_section_sheaf(-1).unwrap();
//! assert_eq!(x.euler_characteristic(&o_theta, &o_theta).unwrap(), ellstab::rational::int(2));
//! assert_eq!(
//!     x.fm_transform(&o_theta).unwrap(),
//!     ChernVector::from_ints(1, 0, -1, 0)
//! );
//! ```

pub mod charges;
pub mod divisors;
pub mod error;
pub mod fm;
pub mod inequalities;
pub mod lattice;
pub mod rational;
pub mod verify;

pub use charges::{
    compare_phase, fixed_kernel_phase, hn_audit, in_closed_upper_half, kernel_phase,
    limit_phase_after_fm, limit_phase_origin, phase, seesaw_audit, slope, ChargeSpec, ChargeValue,
    ChargeValueF64, FloatCharge, KernelClass, Phase, RayParam, Regime, Slope,
};
pub use divisors::{DivisorClass, Positivity, RdvCoords};
pub use error::{Error, Result};
pub use fm::{
    cce_residual, imre_formulas, phi_z, rescaled_charge_coeffs, solve_cce, special_point, CceInput,
    CceOutput, CceResidual, ImRe, RescaledChargeCoeffs, Variant,
};
pub use inequalities::{hit_family_feasible, BruteForceKernel, KernelBasis, KernelSublattice, SlackReport};
pub use lattice::{ChernVector, MukaiVector, Surface};
pub use rational::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/divisors.md")]
    mod divisors {}
    #[doc = include_str!("../../../book/src/charges.md")]
    mod charges {}
    #[doc = include_str!("../../../book/src/inequalities.md")]
    mod inequalities {}
    #[doc = include_str!("../../../book/src/fm.md")]
    mod fm {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
