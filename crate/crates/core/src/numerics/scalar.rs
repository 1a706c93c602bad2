//! Scalar abstraction shared by all numeric code: plain `f64` and forward-mode
//! dual numbers implement the same trait, so every chart map, metric and group
//! operation can be differentiated exactly by evaluating it on duals.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field-like scalar with the elementary functions the geometry code needs.
///
/// Implemented by `f64` and by `Dual<T, N>`; since `Dual` is generic over its
/// component type, nesting (`Dual<Dual<f64, N>, N>`) yields exact second
/// derivatives.
pub trait Scalar:
    Copy
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    /// Underlying value with every derivative slot stripped.
    fn value(self) -> f64;

    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan2(self, x: Self) -> Self;

    fn powi(self, n: i32) -> Self {
        let mut acc = Self::one();
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    fn is_finite_value(self) -> bool {
        self.value().is_finite()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn value(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
}

/// Forward-mode dual number: value plus `N` derivative slots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T, const N: usize> {
    pub val: T,
    pub d: [T; N],
}

impl<T: Scalar, const N: usize> Dual<T, N> {
    pub fn constant(val: T) -> Self {
        Dual { val, d: [T::zero(); N] }
    }

    /// Value seeded as the `slot`-th independent variable.
    pub fn variable(val: T, slot: usize) -> Self {
        let mut d = [T::zero(); N];
        d[slot] = T::one();
        Dual { val, d }
    }
}

/// One-slot dual over `f64`; enough for gradients taken one coordinate at a time.
pub type D1 = Dual<f64, 1>;
/// Two-level nesting used for Hessians.
pub type D2 = Dual<Dual<f64, 1>, 1>;

impl<T: Scalar, const N: usize> Add for Dual<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a = *a + b;
        }
        Dual { val: self.val + rhs.val, d }
    }
}

impl<T: Scalar, const N: usize> Sub for Dual<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a = *a - b;
        }
        Dual { val: self.val - rhs.val, d }
    }
}

impl<T: Scalar, const N: usize> Mul for Dual<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut d = [T::zero(); N];
        for i in 0..N {
            d[i] = self.d[i] * rhs.val + self.val * rhs.d[i];
        }
        Dual { val: self.val * rhs.val, d }
    }
}

impl<T: Scalar, const N: usize> Div for Dual<T, N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = T::one() / rhs.val;
        let val = self.val * inv;
        let mut d = [T::zero(); N];
        for i in 0..N {
            d[i] = (self.d[i] - val * rhs.d[i]) * inv;
        }
        Dual { val, d }
    }
}

impl<T: Scalar, const N: usize> Neg for Dual<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut d = self.d;
        for a in d.iter_mut() {
            *a = -*a;
        }
        Dual { val: -self.val, d }
    }
}

impl<T: Scalar, const N: usize> Dual<T, N> {
    fn chain(self, val: T, dval: T) -> Self {
        let mut d = [T::zero(); N];
        for i in 0..N {
            d[i] = self.d[i] * dval;
        }
        Dual { val, d }
    }
}

impl<T: Scalar, const N: usize> Scalar for Dual<T, N> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn one() -> Self {
        Dual::constant(T::one())
    }
    fn from_f64(x: f64) -> Self {
        Dual::constant(T::from_f64(x))
    }
    fn value(self) -> f64 {
        self.val.value()
    }

    fn sqrt(self) -> Self {
        let r = self.val.sqrt();
        self.chain(r, T::one() / (T::from_f64(2.0) * r))
    }
    fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.val.ln(), T::one() / self.val)
    }
    fn sin(self) -> Self {
        self.chain(self.val.sin(), self.val.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.val.cos(), -self.val.sin())
    }
    fn atan2(self, x: Self) -> Self {
        // d atan2(y, x) = (x dy - y dx) / (x^2 + y^2)
        let y = self;
        let denom = x.val * x.val + y.val * y.val;
        let val = y.val.atan2(x.val);
        let mut d = [T::zero(); N];
        for i in 0..N {
            d[i] = (x.val * y.d[i] - y.val * x.d[i]) / denom;
        }
        Dual { val, d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn poly<S: Scalar>(x: S) -> S {
        // 3x^4 - 2x^3 + x - 7
        let c3 = S::from_f64(3.0);
        let c2 = S::from_f64(2.0);
        let c7 = S::from_f64(7.0);
        c3 * x.powi(4) - c2 * x.powi(3) + x - c7
    }

    #[test]
    fn dual_matches_symbolic_derivative_of_quartic() {
        for &x in &[-2.0, -0.5, 0.0, 1.0, 1.7] {
            let d = poly(D1::variable(x, 0));
            let expected = 12.0 * x.powi(3) - 6.0 * x.powi(2) + 1.0;
            assert_eq!(d.d[0], expected); // exact: same fp operations
            assert_relative_eq!(d.val, poly(x), epsilon = 1e-14);
        }
    }

    #[test]
    fn nested_dual_gives_second_derivative() {
        let x = 1.3;
        let xx = D2 {
            val: Dual { val: x, d: [1.0] },
            d: [Dual { val: 1.0, d: [0.0] }],
        };
        let f = poly(xx);
        let second = f.d[0].d[0];
        assert_relative_eq!(second, 36.0 * x * x - 12.0 * x, epsilon = 1e-12);
    }

    #[test]
    fn transcendental_chain_rules() {
        let x = 0.73;
        let d = D1::variable(x, 0);
        assert_relative_eq!(d.sin().d[0], x.cos(), epsilon = 1e-15);
        assert_relative_eq!(d.exp().d[0], x.exp(), epsilon = 1e-15);
        assert_relative_eq!(d.ln().d[0], 1.0 / x, epsilon = 1e-15);
        assert_relative_eq!(d.sqrt().d[0], 0.5 / x.sqrt(), epsilon = 1e-15);
        let y = D1::variable(0.4, 0);
        let a = y.atan2(Dual::constant(x));
        assert_relative_eq!(a.d[0], x / (x * x + 0.4 * 0.4), epsilon = 1e-15);
    }
}
