//! Monodromy of the generalized hypergeometric equation
//!
//! ```text
//! [z(θ+α₁)⋯(θ+α_n) − (θ+β₁−1)⋯(θ+β_n−1)] f = 0,   θ = z d/dz
//! ```
//!
//! The crate has two halves. The exact half works over ℚ[g₃, g₅, …, λ], where
//! `g_k` stands for ζ(k)/(2πi)^k and `λ` for log(C)/(2πi), and produces the
//! monodromy matrices of the maximally unipotent case whenever the exponents
//! α form a product of cyclotomic polynomials. The numeric half evaluates
//! Mellin-Barnes integrals, residue sums and Frobenius series in double
//! precision and is used to cross-check every closed form.
//!
//! Module map:
//! - [`exact`]: big rationals, integer polynomials, cyclotomics, partitions, Bernoulli numbers
//! - [`cyclo`]: cyclotomic recognition, quotient forms and the constants C, d, c_j^±
//! - [`zeta`]: the zeta ring, jets, Toeplitz matrices and exact linear algebra
//! - [`unipotent`]: exact monodromy triples for the maximally unipotent case
//! - [`levelt`]: companion matrices and the Mellin-Barnes basis triple
//! - [`nonresonant`]: double precision Frobenius-basis matrices for distinct β
//! - [`numeric`]: complex Γ, contour quadrature, residue sums, Frobenius series
//! - [`table`]: the n = 2, 3, 4 summary tables and report rendering

pub mod cyclo;
pub mod error;
pub mod exact;
pub mod levelt;
pub mod nonresonant;
pub mod numeric;
pub mod table;
pub mod unipotent;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::{BigInt, BigRational};
