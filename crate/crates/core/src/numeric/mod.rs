//! Small numeric kernels shared by the construction, EOS and dynamics code.

pub mod bisect;
pub mod fit;
pub mod quad;
pub mod rk4;

pub use bisect::bisect_threshold;
pub use fit::{affine_fit, AffineFit};
pub use quad::adaptive_simpson;
pub use rk4::rk4_step;
