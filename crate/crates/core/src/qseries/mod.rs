//! Exact truncated power series over the integers with rational exponent
//! offsets, plus the infinite-product and theta-sum constructors.
//!
//! - [`ShiftedSeries`]: dense `q^offset * sum c_k q^k` with a trusted bound
//! - [`pochhammer`]: `(u_1, ..., u_k; v)_inf`
//! - [`triple_product_sum`] / [`quintuple_product_sum`]: the bilateral sums
//!   on the other side of the Jacobi triple and quintuple product identities

mod products;
mod series;

pub use products::{
    euler_function, parity_sign, pochhammer, pochhammer_inverse, quintuple_product_sum,
    triple_product_sum, SignedMonomial,
};
pub(crate) use products::divide_pochhammer;
pub(crate) use series::div_binomial;
pub use series::{Coefficient, Rational, ShiftedSeries};
