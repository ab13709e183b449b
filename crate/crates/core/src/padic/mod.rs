//! Fixed-precision arithmetic in `O_K`, for `K = Q_p` or a totally ramified
//! extension `Q_p(pi)` with `pi^e = p`.

mod elem;
mod field;
mod params;
mod text;

pub use elem::Elem;
pub(crate) use elem::forward_binop;
pub use field::KElem;
pub use params::RingParams;
pub(crate) use params::is_prime;
