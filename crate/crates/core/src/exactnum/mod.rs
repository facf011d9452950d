//! Exact arithmetic and the linear and polynomial kernels used by the rest
//! of the crate.

pub mod fm;
pub mod gf2;
pub mod intkernel;
pub mod interval;
pub mod linalg;
pub mod mpoly;
pub mod poly;
pub mod powerproduct;
pub mod rational;
pub mod roots;

pub use fm::{fm_feasible, fm_witness, Constraint};
pub use gf2::{gf2_affine_solutions, AffineSolutions, GF2Matrix, GF2Vector};
pub use intkernel::integer_kernel;
pub use interval::Interval;
pub use linalg::{kernel_rational, solve_rational, IntMatrix, RatMatrix};
pub use mpoly::MPoly;
pub use poly::UnivariatePolynomial;
pub use powerproduct::{PowerProduct, Radical};
pub use rational::{fmt_rational, int, parse_rational, rat, Rational, Sign};
pub use roots::{isolate_real_roots, IsolatedRoot, RootError};
