//! Integration: adaptive Gauss-Legendre, an exact rational oracle for
//! polynomials, and closed-form kernel constants.

pub mod adaptive;
pub mod exact;
pub mod gauss;
pub mod kernels;

pub use adaptive::{
    integrate_1d, integrate_2d, integrate_box, try_integrate_1d, try_integrate_2d, IntegralResult,
    QuadConfig,
};
pub use exact::{poly_integral_exact, RationalRect, Q};
pub use kernels::{holder_kernel_constant, kernel_moment, power_mean_prefactor, T3Constant};
