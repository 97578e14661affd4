use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact ordered field.
///
/// Everything in [`crate::exact`] and [`crate::mcnaughton`] is written against
/// this trait; the MV-algebra layers fix it to [`crate::Rat`].
pub trait Scalar: Clone + Ord + Hash + Debug + Display + Num + Signed {
    fn from_i64(n: i64) -> Self;

    fn is_integral(&self) -> bool;

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }
}

impl Scalar for Ratio<BigInt> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

macro_rules! impl_scalar_machine {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn from_i64(n: i64) -> Self {
                Ratio::from_integer(n as $t)
            }

            fn is_integral(&self) -> bool {
                self.is_integer()
            }
        }
    )*};
}

impl_scalar_machine!(i64, i128);
