//! Scalar kernel: Gaussian cdf/quantile, absolute moments, the consistency
//! functionals and the centering constants. Everything here is a pure
//! function of its arguments.

pub mod functionals;
pub mod moments;
pub mod normal;

pub use functionals::{centering_c, g_inf, g_p, g_p_unit, gumbel2_cdf, gumbel2_quantile, GInf};
pub use moments::{abs_moment, gauss_moments, ln_abs_moment, GaussMoments};
pub use normal::{std_normal_cdf, std_normal_quantile, std_normal_sf};
