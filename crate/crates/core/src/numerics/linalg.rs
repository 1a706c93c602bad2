//! Small dense matrices: fixed 2×2 / 4×4 over any scalar (the group lives in
//! 4×4), plus dynamically sized f64 symmetric matrices for metric tensors.

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<S> {
    pub m: [[S; 2]; 2],
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }
    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }
    pub fn det(&self) -> S {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = [[S::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        Mat2 { m: out }
    }
    /// Inverse assuming det = 1 (the SL(2) case); exact adjugate.
    pub fn inv_unimodular(&self) -> Self {
        Mat2::new(self.m[1][1], -self.m[0][1], -self.m[1][0], self.m[0][0])
    }
    /// Row vector times matrix.
    pub fn row_mul(&self, v: [S; 2]) -> [S; 2] {
        [
            v[0] * self.m[0][0] + v[1] * self.m[1][0],
            v[0] * self.m[0][1] + v[1] * self.m[1][1],
        ]
    }
}

pub type Mat4<S> = SmallMat<S, 4>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmallMat<S, const N: usize> {
    pub m: [[S; N]; N],
}

impl<S: Scalar, const N: usize> SmallMat<S, N> {
    pub fn zeros() -> Self {
        SmallMat { m: [[S::zero(); N]; N] }
    }
    pub fn identity() -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            out.m[i][i] = S::one();
        }
        out
    }
    pub fn from_rows(m: [[S; N]; N]) -> Self {
        SmallMat { m }
    }
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = self.m[j][i];
            }
        }
        out
    }
    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = out.m[i][j] + rhs.m[i][j];
            }
        }
        out
    }
    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = out.m[i][j] - rhs.m[i][j];
            }
        }
        out
    }
    pub fn scale(&self, s: S) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = out.m[i][j] * s;
            }
        }
        out
    }
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                let mut acc = S::zero();
                for k in 0..N {
                    acc = acc + self.m[i][k] * rhs.m[k][j];
                }
                out.m[i][j] = acc;
            }
        }
        out
    }
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }
    pub fn norm_inf(&self) -> f64 {
        let mut n: f64 = 0.0;
        for i in 0..N {
            for j in 0..N {
                n = n.max(self.m[i][j].value().abs());
            }
        }
        n
    }

    /// Gaussian elimination with partial pivoting (pivot chosen on `.value()`).
    pub fn inverse(&self) -> Result<Self> {
        let mut a = self.m;
        let mut inv = Self::identity().m;
        for col in 0..N {
            let mut piv = col;
            for r in col + 1..N {
                if a[r][col].value().abs() > a[piv][col].value().abs() {
                    piv = r;
                }
            }
            if a[piv][col].value().abs() < 1e-300 {
                return Err(Error::SingularMatrix);
            }
            a.swap(col, piv);
            inv.swap(col, piv);
            let d = a[col][col];
            for j in 0..N {
                a[col][j] = a[col][j] / d;
                inv[col][j] = inv[col][j] / d;
            }
            for r in 0..N {
                if r != col {
                    let f = a[r][col];
                    for j in 0..N {
                        a[r][j] = a[r][j] - f * a[col][j];
                        inv[r][j] = inv[r][j] - f * inv[col][j];
                    }
                }
            }
        }
        Ok(SmallMat { m: inv })
    }
}

/// Standard symplectic form in the row ordering of the 4×4 group embedding.
pub fn symplectic_form<S: Scalar>() -> Mat4<S> {
    let mut j = Mat4::zeros();
    j.m[0][2] = S::one();
    j.m[1][3] = S::one();
    j.m[2][0] = -S::one();
    j.m[3][1] = -S::one();
    j
}

/// ‖MᵀJM − J‖∞ — zero iff M ∈ Sp(2,ℝ).
pub fn symplectic_defect<S: Scalar>(m: &Mat4<S>) -> f64 {
    let j = symplectic_form::<S>();
    m.transpose().mul(&j).mul(m).sub(&j).norm_inf()
}

/// Matrix exponential of a 4×4 via scaling-and-squaring with a (6,6) Padé
/// approximant; exact to rounding on the nilpotent generators.
pub fn expm4<S: Scalar>(a: &Mat4<S>) -> Mat4<S> {
    const PADE: [f64; 7] = [
        1.0,
        0.5,
        5.0 / 44.0,
        1.0 / 66.0,
        1.0 / 792.0,
        1.0 / 15840.0,
        1.0 / 665280.0,
    ];
    let norm = a.norm_inf();
    let mut s = 0u32;
    let mut scaled = *a;
    if norm > 0.5 {
        s = (norm / 0.5).log2().ceil().max(0.0) as u32;
        scaled = a.scale(S::from_f64(0.5f64.powi(s as i32)));
    }
    let a2 = scaled.mul(&scaled);
    let a4 = a2.mul(&a2);
    let a6 = a4.mul(&a2);
    let ident = Mat4::identity();
    let u = scaled.mul(
        &ident
            .scale(S::from_f64(PADE[1]))
            .add(&a2.scale(S::from_f64(PADE[3])))
            .add(&a4.scale(S::from_f64(PADE[5]))),
    );
    let v = ident
        .scale(S::from_f64(PADE[0]))
        .add(&a2.scale(S::from_f64(PADE[2])))
        .add(&a4.scale(S::from_f64(PADE[4])))
        .add(&a6.scale(S::from_f64(PADE[6])));
    let mut e = v
        .sub(&u)
        .inverse()
        .expect("Padé denominator is well conditioned after scaling")
        .mul(&v.add(&u));
    for _ in 0..s {
        e = e.mul(&e);
    }
    e
}

/// Dynamically sized square matrix of f64, used for metric tensors (n ≤ 6).
#[derive(Clone, Debug, PartialEq)]
pub struct SqMat {
    pub n: usize,
    pub a: Vec<f64>,
}

impl SqMat {
    pub fn zeros(n: usize) -> Self {
        SqMat { n, a: vec![0.0; n * n] }
    }
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = SqMat::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }
    pub fn norm_inf(&self) -> f64 {
        self.a.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
    pub fn symmetry_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..i {
                d = d.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        d
    }

    /// Cholesky factor L (lower); fails on a non positive definite matrix.
    pub fn cholesky(&self) -> Result<SqMat> {
        let n = self.n;
        let mut l = SqMat::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self[(i, j)];
                for k in 0..j {
                    sum -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(Error::NotPositiveDefinite);
                    }
                    l[(i, i)] = sum.sqrt();
                } else {
                    l[(i, j)] = sum / l[(j, j)];
                }
            }
        }
        Ok(l)
    }

    /// Inverse through the Cholesky factorization, with a crude condition
    /// estimate from the pivot spread.
    pub fn inverse_spd(&self) -> Result<SqMat> {
        let l = self.cholesky()?;
        let mut dmin = f64::INFINITY;
        let mut dmax = 0.0f64;
        for i in 0..self.n {
            dmin = dmin.min(l[(i, i)]);
            dmax = dmax.max(l[(i, i)]);
        }
        let cond = (dmax / dmin).powi(2);
        if !cond.is_finite() || cond > 1e12 {
            return Err(Error::SingularMetric { cond });
        }
        // Solve L Lᵀ X = I column by column.
        let n = self.n;
        let mut inv = SqMat::zeros(n);
        for col in 0..n {
            let mut y = vec![0.0; n];
            for i in 0..n {
                let mut s = if i == col { 1.0 } else { 0.0 };
                for k in 0..i {
                    s -= l[(i, k)] * y[k];
                }
                y[i] = s / l[(i, i)];
            }
            let mut x = vec![0.0; n];
            for i in (0..n).rev() {
                let mut s = y[i];
                for k in i + 1..n {
                    s -= l[(k, i)] * x[k];
                }
                x[i] = s / l[(i, i)];
            }
            for i in 0..n {
                inv[(i, col)] = x[i];
            }
        }
        Ok(inv)
    }

    pub fn det_lu(&self) -> f64 {
        let n = self.n;
        let mut a = self.a.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[piv * n + col].abs() {
                    piv = r;
                }
            }
            if a[piv * n + col] == 0.0 {
                return 0.0;
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            det *= a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / a[col * n + col];
                for j in col..n {
                    a[r * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for SqMat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SqMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.a[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn expm_of_zero_is_identity() {
        let e = expm4(&Mat4::<f64>::zeros());
        assert_eq!(e, Mat4::identity());
    }

    #[test]
    fn expm_nilpotent_matches_truncated_series() {
        // strictly upper triangular => exp = I + A + A²/2 + A³/6
        let mut a = Mat4::<f64>::zeros();
        a.m[0][1] = 0.7;
        a.m[1][2] = -1.3;
        a.m[2][3] = 2.1;
        let e = expm4(&a);
        let a2 = a.mul(&a);
        let a3 = a2.mul(&a);
        let series = Mat4::identity()
            .add(&a)
            .add(&a2.scale(0.5))
            .add(&a3.scale(1.0 / 6.0));
        assert!(e.sub(&series).norm_inf() < 1e-14);
    }

    #[test]
    fn expm_diagonal() {
        let mut a = Mat4::<f64>::zeros();
        for (i, v) in [0.3, -1.2, 2.4, 0.0].iter().enumerate() {
            a.m[i][i] = *v;
        }
        let e = expm4(&a);
        for (i, v) in [0.3f64, -1.2, 2.4, 0.0].iter().enumerate() {
            assert_relative_eq!(e.m[i][i], v.exp(), epsilon = 1e-13);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Mat4::from_rows([
            [1.0, 2.0, 0.0, 1.0],
            [0.0, 1.0, -1.0, 0.5],
            [3.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 2.0],
        ]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).sub(&Mat4::identity()).norm_inf() < 1e-13);
    }

    #[test]
    fn spd_inverse_and_cholesky() {
        let g = SqMat::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, -0.2],
            vec![0.5, -0.2, 2.0],
        ]);
        let inv = g.inverse_spd().unwrap();
        let mut prod = SqMat::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    prod[(i, j)] += g[(i, k)] * inv[(k, j)];
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(prod[(i, j)], want, epsilon = 1e-13);
            }
        }
        assert!(SqMat::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]])
            .cholesky()
            .is_err());
    }

    #[test]
    fn det_lu_matches_closed_form() {
        let m = SqMat::from_rows(&[vec![2.0, 1.0], vec![3.0, -1.0]]);
        assert_relative_eq!(m.det_lu(), -5.0, epsilon = 1e-14);
    }
}
