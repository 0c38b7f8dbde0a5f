//! Exact arithmetic for Grothendieck–Witt rings and quadratically enriched
//! Euler characteristics.
//!
//! The crate has three layers:
//!
//! * **Forms.** [`field::BaseField`] selects ℚ, ℝ, ℂ, or a prime field
//!   𝔽_p (odd p); [`field::SquareClass`] is a canonicalized square class;
//!   [`gw::GWElement`] is a virtual diagonal form, with equality decided
//!   by the classifying invariants of the chosen field (rank, signature,
//!   discriminant, and Hasse data over ℚ).
//! * **Power structure.** [`power`] implements the symmetric-power
//!   operations `a_n` on the Grothendieck–Witt ring, together with closed
//!   forms for scaled diagonal and hyperbolic inputs and the 2-torsion
//!   elements `t_α` that obstruct naive multiplicativity. [`series`]
//!   packages the generating series.
//! * **Geometry.** [`k0`] is a symbolic fragment of the Grothendieck ring
//!   of varieties spanned by affine spaces and multiquadratic étale
//!   spectra, with symmetric powers computed by Galois-orbit enumeration;
//!   [`grassmann`] and [`delpezzo`] carry the worked theorems; the two
//!   sides meet in the Euler-characteristic comparison that [`selftest`]
//!   verifies end to end against independent oracles.
//!
//! All arithmetic is exact: big-integer combinatorics, `i64`
//! multiplicities with overflow checks, and no floating point anywhere.

pub mod arith;
pub mod delpezzo;
pub mod error;
pub mod field;
pub mod grassmann;
pub mod gw;
pub mod k0;
pub mod power;
pub mod selftest;
pub mod series;
mod seriesops;

pub use error::{Error, Result};
pub use field::{BaseField, Place, SquareClass};
pub use gw::{GWElement, GWInvariants};
pub use k0::{blowup_class, sym_power, K0Class, K0Monomial, SqClassSubgroup};
pub use power::{a_basic, a_hyperbolic, t_alpha, PowerContext};
pub use series::{geom_pow, kapranov_chi_zeta, GWSeries};
