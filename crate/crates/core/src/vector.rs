//! Dense vectors over a generic scalar field.

use std::ops::{Index, IndexMut};

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{AveError, Result};
use crate::scalar::Scalar;

/// A dense column vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    /// Wraps entries produced internally. External input should go through
    /// [`Vector::checked`], which rejects non-finite entries.
    pub fn new(entries: Vec<T>) -> Self {
        Vector { entries }
    }

    /// Builds a vector from external data, rejecting NaN and infinities.
    pub fn checked(entries: Vec<T>) -> Result<Self> {
        for (index, v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(AveError::NonFinite { index });
            }
        }
        Ok(Vector { entries })
    }

    pub fn zeros(n: usize) -> Self {
        Vector {
            entries: vec![T::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.entries.iter()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.entries
    }

    /// Euclidean norm.
    pub fn norm2(&self) -> T::Real {
        self.entries
            .iter()
            .map(|v| v.modulus_sq())
            .sum::<T::Real>()
            .sqrt()
    }

    /// Component-wise absolute value, embedded back into the field
    /// (real nonnegative entries, zero imaginary part).
    pub fn abs(&self) -> Vector<T> {
        Vector {
            entries: self
                .entries
                .iter()
                .map(|v| T::from_real(v.modulus()))
                .collect(),
        }
    }

    pub fn all_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }

    pub fn add(&self, other: &Vector<T>) -> Vector<T> {
        debug_assert_eq!(self.len(), other.len());
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector<T>) -> Vector<T> {
        debug_assert_eq!(self.len(), other.len());
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: T) -> Vector<T> {
        Vector {
            entries: self.entries.iter().map(|&a| a * factor).collect(),
        }
    }

    /// Converts a real vector to the corresponding complex one.
    pub fn to_complex(&self) -> Vector<num_complex::Complex<T::Real>>
    where
        num_complex::Complex<T::Real>: Scalar<Real = T::Real>,
    {
        Vector::new(
            self.entries
                .iter()
                .map(|&v| num_complex::Complex::new(v.real_part(), v.imag_part()))
                .collect(),
        )
    }
}

impl<T: Scalar> Index<usize> for Vector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

impl<T: Scalar> IndexMut<usize> for Vector<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.entries[i]
    }
}

impl<T: Scalar> From<Vec<T>> for Vector<T> {
    fn from(entries: Vec<T>) -> Self {
        Vector::new(entries)
    }
}

impl<'a, T: Scalar> IntoIterator for &'a Vector<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}
