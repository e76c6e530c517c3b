//! Isogenies from torsion sections, quotients by automorphisms of the base,
//! and the induced fiber arithmetic.

mod base;
mod fibers;
mod isogeny;

pub use base::{
    base_change, check_palindrome, check_sigma_n_invariance, dickson, inversion_twist, quotient_by_mu2,
    quotient_by_sigma_n, quotient_by_varsigma2, symmetric_reduction,
};
pub use fibers::{
    adjacent_pairing, euler_sum, involution_configuration, quotient_configuration, quotient_fiber,
    sigma_t_fiber_action, FiberQuotientRule,
};
pub use isogeny::{
    composes_to_multiplication, default_scalings, find_normalization, four_isogeny_closed_form, four_torsion_image, quotient_by_2torsion,
    quotient_by_4torsion, velu_quotient, Isogeny, IsogenyMap, TorsionQuotient, VeluTerm,
};
