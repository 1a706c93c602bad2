//! Minimal complex type generic over the scalar, so holomorphic maps can be
//! evaluated on dual numbers for Wirtinger derivatives.

use super::scalar::Scalar;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Complex<S> {
    pub re: S,
    pub im: S,
}

pub type C64 = Complex<f64>;

impl<S: Scalar> Complex<S> {
    pub fn new(re: S, im: S) -> Self {
        Complex { re, im }
    }
    pub fn real(re: S) -> Self {
        Complex { re, im: S::zero() }
    }
    pub fn i() -> Self {
        Complex { re: S::zero(), im: S::one() }
    }
    pub fn zero() -> Self {
        Complex { re: S::zero(), im: S::zero() }
    }
    pub fn one() -> Self {
        Complex { re: S::one(), im: S::zero() }
    }
    pub fn from_f64(re: f64, im: f64) -> Self {
        Complex { re: S::from_f64(re), im: S::from_f64(im) }
    }

    pub fn conj(self) -> Self {
        Complex { re: self.re, im: -self.im }
    }
    pub fn norm_sqr(self) -> S {
        self.re * self.re + self.im * self.im
    }
    pub fn norm(self) -> S {
        self.norm_sqr().sqrt()
    }
    pub fn scale(self, s: S) -> Self {
        Complex { re: self.re * s, im: self.im * s }
    }
    pub fn inv(self) -> Self {
        let n = self.norm_sqr();
        Complex { re: self.re / n, im: -self.im / n }
    }

    /// Strip derivative slots.
    pub fn value(self) -> C64 {
        Complex { re: self.re.value(), im: self.im.value() }
    }
}

impl C64 {
    pub fn abs_diff(self, other: C64) -> f64 {
        (self - other).norm()
    }
}

impl<S: Scalar> Add for Complex<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Complex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<S: Scalar> Sub for Complex<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Complex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<S: Scalar> Mul for Complex<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Complex {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<S: Scalar> Div for Complex<S> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<S: Scalar> Neg for Complex<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Complex { re: -self.re, im: -self.im }
    }
}
