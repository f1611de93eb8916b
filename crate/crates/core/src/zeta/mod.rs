//! Exact arithmetic in ℚ[λ, g₃, g₅, …] with g_k = ζ(k)/(2πi)^k and
//! λ = log(C)/(2πi), jets at s = 0 in t = 2πis, and matrices over the ring.

mod elem;
mod jet;
mod matrix;

pub use elem::{zeta_symbol, Generator, Monomial, ZetaElem};
pub use jet::{jet_exp, jet_inverse, jet_mul, partition_sum, phi_c_jet, poly_at_exp, v_plus_jet, weighted_zeta, Jet};
pub use matrix::{combinations, FieldMatrix};
