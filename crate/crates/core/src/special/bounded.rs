use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Absolute value used for radius propagation.
pub trait Magnitude: Copy {
    fn magnitude(&self) -> f64;
}

impl Magnitude for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Magnitude for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// A value with a certified absolute error radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounded<T> {
    pub value: T,
    pub radius: f64,
}

pub type BoundedReal = Bounded<f64>;
pub type BoundedComplex = Bounded<Complex64>;

impl<T: Magnitude> Bounded<T> {
    /// Panics if `radius` is negative or not finite.
    pub fn new(value: T, radius: f64) -> Self {
        assert!(
            radius >= 0.0 && radius.is_finite(),
            "radius must be finite and non-negative, got {radius}"
        );
        Bounded { value, radius }
    }

    pub fn exact(value: T) -> Self {
        Bounded { value, radius: 0.0 }
    }

    pub fn widen(self, extra: f64) -> Self {
        Bounded::new(self.value, self.radius + extra)
    }
}

impl<T> Bounded<T>
where
    T: Magnitude + Sub<Output = T>,
{
    /// True when `x` lies within the enclosure.
    pub fn contains(&self, x: T) -> bool {
        (x - self.value).magnitude() <= self.radius
    }

    /// True when the two enclosures intersect.
    pub fn overlaps(&self, other: &Bounded<T>) -> bool {
        (self.value - other.value).magnitude() <= self.radius + other.radius
    }
}

impl BoundedReal {
    pub fn lower(&self) -> f64 {
        self.value - self.radius
    }

    pub fn upper(&self) -> f64 {
        self.value + self.radius
    }
}

impl<T: Magnitude + Add<Output = T>> Add for Bounded<T> {
    type Output = Bounded<T>;
    fn add(self, rhs: Self) -> Self::Output {
        Bounded::new(self.value + rhs.value, self.radius + rhs.radius)
    }
}

impl<T: Magnitude + Sub<Output = T>> Sub for Bounded<T> {
    type Output = Bounded<T>;
    fn sub(self, rhs: Self) -> Self::Output {
        Bounded::new(self.value - rhs.value, self.radius + rhs.radius)
    }
}

impl<T: Magnitude + Mul<Output = T>> Mul for Bounded<T> {
    type Output = Bounded<T>;
    fn mul(self, rhs: Self) -> Self::Output {
        let r = self.value.magnitude() * rhs.radius
            + rhs.value.magnitude() * self.radius
            + self.radius * rhs.radius;
        Bounded::new(self.value * rhs.value, r)
    }
}

impl<T: Magnitude + Neg<Output = T>> Neg for Bounded<T> {
    type Output = Bounded<T>;
    fn neg(self) -> Self::Output {
        Bounded::new(-self.value, self.radius)
    }
}

impl<T: fmt::Display> fmt::Display for Bounded<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.value, self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radii_add_under_sum_and_difference() {
        let a = BoundedReal::new(1.0, 0.1);
        let b = BoundedReal::new(2.0, 0.2);
        assert!(((a + b).radius - 0.3).abs() < 1e-15);
        assert!(((a - b).radius - 0.3).abs() < 1e-15);
        assert_eq!((a - b).value, -1.0);
    }

    #[test]
    fn product_rule() {
        let a = BoundedReal::new(3.0, 0.1);
        let b = BoundedReal::new(-2.0, 0.01);
        let p = a * b;
        assert_eq!(p.value, -6.0);
        assert!((p.radius - (3.0 * 0.01 + 2.0 * 0.1 + 0.001)).abs() < 1e-15);
        // every product of members is a member
        for &x in &[2.9, 3.0, 3.1] {
            for &y in &[-2.01, -2.0, -1.99] {
                assert!(p.contains(x * y));
            }
        }
    }

    #[test]
    #[should_panic]
    fn negative_radius_rejected() {
        let _ = BoundedReal::new(0.0, -1.0);
    }
}
