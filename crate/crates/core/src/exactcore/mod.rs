//! Exact arithmetic kernel: rationals, Q(zeta_5), truncated q-series,
//! z-series over a generic ring, and 5x5 matrices.

mod cyc;
mod mat;
mod qseries;
mod rat;
mod zseries;

pub use cyc::{root_sum, CycNum};
pub use mat::Mat5;
pub use qseries::{QSeries, SeriesError};
pub use rat::{int, rat, rat_from_big, rat_str, Rat};
pub use zseries::ZSeries;

use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Commutative ring with unit, as needed by the generic containers.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}
