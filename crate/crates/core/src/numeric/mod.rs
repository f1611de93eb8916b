//! Double precision oracle: complex Γ, Mellin-Barnes quadrature and residue
//! sums, Frobenius series, and the end-to-end check of I = T·F.

mod cjet;
mod frobenius;
mod mb;
mod quad;
mod special;
mod verify;

pub use cjet::CJet;
pub use frobenius::{frobenius_eval_nonresonant, frobenius_eval_unipotent};
pub use mb::{log_z, mb_integral_quadrature, mb_integral_residues, mb_integrand, pole_structure, ContourSpec, PoleStructure};
pub use quad::{integrate, QuadResult};
pub use special::{gamma_complex, gamma_real, polygamma, zeta};
pub use verify::{generator_values, verify_t, TReport};
