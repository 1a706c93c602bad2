//! Real cubic polynomials and the Cardano closed form for the single real
//! root, Newton-polished to kill cancellation in the nested radicals.

use crate::error::{Error, Result};

/// c3·x³ + c2·x² + c1·x + c0 with c3 ≠ 0.
#[derive(Clone, Copy, Debug)]
pub struct Cubic {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl Cubic {
    pub fn new(c3: f64, c2: f64, c1: f64, c0: f64) -> Self {
        assert!(c3 != 0.0, "leading coefficient must be nonzero");
        Cubic { c3, c2, c1, c0 }
    }

    /// Monic depressed cubic t³ + p·t + q.
    pub fn depressed(p: f64, q: f64) -> Self {
        Cubic { c3: 1.0, c2: 0.0, c1: p, c0: q }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        (3.0 * self.c3 * x + 2.0 * self.c2) * x + self.c1
    }

    /// Discriminant; positive iff three distinct real roots.
    pub fn discriminant(&self) -> f64 {
        let Cubic { c3: a, c2: b, c1: c, c0: d } = *self;
        18.0 * a * b * c * d - 4.0 * b.powi(3) * d + b * b * c * c
            - 4.0 * a * c.powi(3)
            - 27.0 * a * a * d * d
    }
}

/// The unique real root of a cubic with negative discriminant, via Cardano's
/// nested radicals plus a few Newton steps on the original polynomial.
pub fn cardano_real_root(c: &Cubic) -> Result<f64> {
    if c.discriminant() >= 0.0 {
        return Err(Error::ThreeRealRoots);
    }
    // Depress: x = t - c2/(3 c3).
    let a = c.c2 / c.c3;
    let b = c.c1 / c.c3;
    let d = c.c0 / c.c3;
    let p = b - a * a / 3.0;
    let q = 2.0 * a.powi(3) / 27.0 - a * b / 3.0 + d;
    let disc = q * q / 4.0 + p.powi(3) / 27.0; // > 0 here
    let s = disc.sqrt();
    let t = (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt();
    let mut x = t - a / 3.0;
    for _ in 0..4 {
        let f = c.eval(x);
        let df = c.eval_deriv(x);
        if df == 0.0 {
            break;
        }
        let step = f / df;
        x -= step;
        if step.abs() < 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("cardano root"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent oracle: plain bisection on a bracketing interval.
    fn bisect(c: &Cubic, mut lo: f64, mut hi: f64) -> f64 {
        assert!(c.eval(lo) * c.eval(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if c.eval(lo) * c.eval(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn root_of_r3_plus_r_minus_1() {
        let c = Cubic::depressed(1.0, -1.0);
        let r = cardano_real_root(&c).unwrap();
        assert!((r - 0.6823).abs() < 5e-4);
        assert!(c.eval(r).abs() <= 1e-14);
        let oracle = bisect(&c, 0.0, 1.0);
        assert_relative_eq!(r, oracle, epsilon = 1e-12);
    }

    #[test]
    fn cube_root_of_unity_case() {
        let c = Cubic::new(1.0, 0.0, 0.0, -1.0);
        assert_relative_eq!(cardano_real_root(&c).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn three_real_roots_rejected() {
        // (x-1)(x)(x+1) = x³ - x
        let c = Cubic::new(1.0, 0.0, -1.0, 0.0);
        assert!(matches!(cardano_real_root(&c), Err(Error::ThreeRealRoots)));
    }

    #[test]
    fn shifted_cubic_against_bisection() {
        // 2x³ + 3x² + 4x - 5: one real root (disc < 0)
        let c = Cubic::new(2.0, 3.0, 4.0, -5.0);
        let r = cardano_real_root(&c).unwrap();
        let oracle = bisect(&c, 0.0, 2.0);
        assert_relative_eq!(r, oracle, epsilon = 1e-12);
        assert!(c.eval(r).abs() <= 1e-12);
    }
}
