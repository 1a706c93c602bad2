//! Shared numeric kernel: dual scalars, complex arithmetic, small dense
//! matrices, fixed-step RK4 and cubic root solving.

pub mod complex;
pub mod cubic;
pub mod diff;
pub mod linalg;
pub mod ode;
pub mod scalar;

pub use complex::{Complex, C64};
pub use cubic::{cardano_real_root, Cubic};
pub use diff::{diff, diff_fd, hessian, DiffMode, ScalarField};
pub use linalg::{expm4, symplectic_defect, symplectic_form, Mat2, Mat4, SqMat};
pub use ode::{rk4_integrate, Sample};
pub use scalar::{Dual, Scalar, D1, D2};
