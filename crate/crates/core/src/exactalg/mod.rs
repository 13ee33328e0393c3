//! Exact linear algebra over the integers and over finite products of cyclic
//! groups.
//!
//! Everything here is generic over an integer scalar (`i64`, `i128`,
//! [`num_bigint::BigInt`], ...). The crate root fixes the arbitrary-precision
//! instantiation through the [`IntMatrix`](crate::IntMatrix) and
//! [`CyclicHom`](crate::CyclicHom) aliases.

mod congruence;
mod cyclic;
mod matrix;
mod smith;

use std::fmt::{Debug, Display};

use num_bigint::ToBigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub use congruence::solve_congruence;
pub use cyclic::{hom_image_contains, hom_kernel_size, CyclicHomomorphism, ENUMERATION_THRESHOLD};
pub use matrix::Matrix;
pub use smith::{smith_normal_form, SmithForm};

/// Integer scalar usable by the exact algorithms.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + ToBigInt + Send + Sync
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + ToBigInt
        + Send
        + Sync
{
}
