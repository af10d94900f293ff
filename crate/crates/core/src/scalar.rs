//! Scalar field abstraction.
//!
//! All numerical kernels are generic over [`Scalar`], which is implemented for
//! the real floats and for [`num_complex::Complex`] over them. The absolute
//! value of a scalar is always a nonnegative *real* ([`Scalar::modulus`]); for
//! complex numbers it is the modulus, and embedding it back into the field
//! ([`Scalar::from_real`]) yields a number with zero imaginary part.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::{Float, Num, NumAssign, NumCast};

/// Element of the scalar field a problem lives in (real or complex).
pub trait Scalar:
    Copy + Debug + Display + PartialEq + Send + Sync + 'static + Num + NumAssign + Neg<Output = Self>
{
    /// The underlying real field (`f64` for both `f64` and `Complex<f64>`).
    type Real: Float + NumAssign + Debug + Display + Send + Sync + Sum<Self::Real> + 'static;

    const IS_COMPLEX: bool;

    /// Embeds a real number into the field (zero imaginary part).
    fn from_real(re: Self::Real) -> Self;

    /// Complex conjugate; identity on the reals.
    fn conj(self) -> Self;

    /// Absolute value: `|x|` for reals, the modulus for complex numbers.
    fn modulus(self) -> Self::Real;

    /// Squared modulus, avoiding the square root.
    fn modulus_sq(self) -> Self::Real;

    fn real_part(self) -> Self::Real;

    fn imag_part(self) -> Self::Real;

    fn is_finite(self) -> bool;
}

macro_rules! impl_real_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            type Real = $t;

            const IS_COMPLEX: bool = false;

            #[inline]
            fn from_real(re: $t) -> Self {
                re
            }

            #[inline]
            fn conj(self) -> Self {
                self
            }

            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }

            #[inline]
            fn modulus_sq(self) -> $t {
                self * self
            }

            #[inline]
            fn real_part(self) -> $t {
                self
            }

            #[inline]
            fn imag_part(self) -> $t {
                0.0
            }

            #[inline]
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
        }
    };
}

impl_real_scalar!(f32);
impl_real_scalar!(f64);

impl<F> Scalar for Complex<F>
where
    F: Float + NumAssign + Debug + Display + Send + Sync + Sum<F> + 'static,
{
    type Real = F;

    const IS_COMPLEX: bool = true;

    #[inline]
    fn from_real(re: F) -> Self {
        Complex::new(re, F::zero())
    }

    #[inline]
    fn conj(self) -> Self {
        Complex::conj(&self)
    }

    #[inline]
    fn modulus(self) -> F {
        self.norm()
    }

    #[inline]
    fn modulus_sq(self) -> F {
        self.norm_sqr()
    }

    #[inline]
    fn real_part(self) -> F {
        self.re
    }

    #[inline]
    fn imag_part(self) -> F {
        self.im
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Converts an `f64` constant into the generic real type.
#[inline]
pub(crate) fn real_from_f64<R: Float>(v: f64) -> R {
    <R as NumCast>::from(v).expect("f64 constant representable in the real type")
}

/// Converts a generic real back to `f64` for reporting.
#[inline]
pub(crate) fn real_to_f64<R: Float>(v: R) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn modulus_is_nonnegative_real() {
        assert_eq!((-3.0f64).modulus(), 3.0);
        assert_eq!(Complex64::new(3.0, 4.0).modulus(), 5.0);
        assert_eq!(Complex64::new(0.0, 1.0).modulus(), 1.0);
        assert_eq!(Complex64::new(0.0, -1.0).modulus(), 1.0);
    }

    #[test]
    fn conjugation_on_reals_is_identity() {
        assert_eq!(2.5f64.conj(), 2.5);
        assert_eq!(Complex64::new(1.0, 2.0).conj(), Complex64::new(1.0, -2.0));
    }

    #[test]
    fn embedding_has_zero_imaginary_part() {
        let z = <Complex64 as Scalar>::from_real(2.0);
        assert_eq!(z, Complex64::new(2.0, 0.0));
    }
}
