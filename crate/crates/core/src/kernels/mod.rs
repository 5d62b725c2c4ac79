//! Heat kernels on H^n, complex hyperbolic space and H-type AN groups, and the
//! Sturm–Liouville semigroup.

mod an;
mod descent;
mod expr;
mod hc;
mod hn;
mod sl;

pub use an::{an_heat, an_operator_power, ckj_table, expansion_identity, lower_bound_route, AnHeat, CkjTable};
pub use descent::{abel_cosh, abel_sinh_half};
pub use expr::{RadialKernelExpr, Term};
pub use hc::{hc_heat, hc_identity_sides, HcHeat};
pub use hn::{even_heat, hn_heat, k1, k2_direct, odd_heat_expr, HnHeat};
pub use sl::{sl_apply, sl_apply_log, sl_kernel};
