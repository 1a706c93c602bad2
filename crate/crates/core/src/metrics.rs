//! Invariant metric tensors on the Siegel–Jacobi spaces: the disk Kähler
//! metric, the two-parameter balanced metric in its four real charts, the
//! three-parameter metric on the extended space, the four-parameter
//! left-invariant metric on the group, Kähler-condition tests and action
//! pullbacks.

use crate::actions::{act_coords, Space};
use crate::charts::{chart_map_4, fc_inv, Chart};
use crate::error::{Error, Result};
use crate::group::{GroupElement, RawElement};
use crate::numerics::{Complex, Scalar, SqMat, C64, D1};
use serde::{Deserialize, Serialize};

/// Named metric family with its real parameters (all > 0).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum MetricSpec {
    /// Kähler metric of the Siegel–Jacobi disk, parameters (k, ν).
    DiskKahler { k: f64, nu: f64 },
    /// Balanced metric in the complex (τ, z) form, realified on (x, y, ξ, ρ).
    Xj1Tz { c1: f64, c2: f64 },
    /// Balanced metric in (x, y, p, q).
    Xj1Xypq { c1: f64, c2: f64 },
    /// Balanced metric in (x, y, ξ, ρ).
    Xj1Xyxr { c1: f64, c2: f64 },
    /// Balanced metric in (x, y, χ, ψ).
    Xj1Xycp { c1: f64, c2: f64 },
    /// Three-parameter invariant metric on the extended space (x, y, p, q, κ).
    Xj1Ext { alpha: f64, gamma: f64, delta: f64 },
    /// Four-parameter left-invariant metric on the group (x, y, θ, p, q, κ).
    Gj1 { alpha: f64, beta: f64, gamma: f64, delta: f64 },
}

impl MetricSpec {
    pub fn chart(&self) -> Chart {
        match self {
            MetricSpec::DiskKahler { .. } => Chart::Disk,
            MetricSpec::Xj1Tz { .. } | MetricSpec::Xj1Xyxr { .. } => Chart::Xyxr,
            MetricSpec::Xj1Xypq { .. } => Chart::Xypq,
            MetricSpec::Xj1Xycp { .. } => Chart::Xycp,
            MetricSpec::Xj1Ext { .. } => Chart::XypqK,
            MetricSpec::Gj1 { .. } => Chart::GroupS,
        }
    }

    pub fn dim(&self) -> usize {
        self.chart().dim()
    }

    pub fn name(&self) -> &'static str {
        match self {
            MetricSpec::DiskKahler { .. } => "disk_kahler",
            MetricSpec::Xj1Tz { .. } => "xj1_tz",
            MetricSpec::Xj1Xypq { .. } => "xj1_xypq",
            MetricSpec::Xj1Xyxr { .. } => "xj1_xyxr",
            MetricSpec::Xj1Xycp { .. } => "xj1_xycp",
            MetricSpec::Xj1Ext { .. } => "xj1ext",
            MetricSpec::Gj1 { .. } => "gj1",
        }
    }

    /// Coordinate labels in the fixed row/column order of `metric_at`.
    pub fn order(&self) -> Vec<&'static str> {
        match self.chart() {
            Chart::Disk => vec!["re_w", "im_w", "re_z", "im_z"],
            Chart::Xypq => vec!["x", "y", "p", "q"],
            Chart::Xyxr => vec!["x", "y", "xi", "rho"],
            Chart::Xycp => vec!["x", "y", "chi", "psi"],
            Chart::XypqK => vec!["x", "y", "p", "q", "kappa"],
            Chart::GroupS => vec!["x", "y", "theta", "p", "q", "kappa"],
            _ => unreachable!(),
        }
    }

    /// Coefficient matrix of the line element at `pt`, generic over the
    /// scalar so coordinate partials come from dual numbers.
    pub fn entries<S: Scalar>(&self, pt: &[S]) -> Result<Vec<Vec<S>>> {
        let n = self.dim();
        assert_eq!(pt.len(), n);
        let y_idx = match self.chart() {
            Chart::Disk => None,
            _ => Some(1),
        };
        if let Some(iy) = y_idx {
            if pt[iy].value() <= crate::charts::DOMAIN_MARGIN {
                return Err(Error::DomainViolation(format!(
                    "y = {} must be > 0",
                    pt[iy].value()
                )));
            }
        }
        let mut g = vec![vec![S::zero(); n]; n];
        match *self {
            MetricSpec::DiskKahler { k, nu } => {
                // chart order (re w, im w, re z, im z); the Hermitian matrix
                // is indexed (z, w), so permute after realifying.
                let w = Complex::new(pt[0], pt[1]);
                let z = Complex::new(pt[2], pt[3]);
                if w.norm_sqr().value() >= 1.0 - crate::charts::DOMAIN_MARGIN {
                    return Err(Error::DomainViolation("|w| too close to 1".into()));
                }
                let h = hermitian_matrix_disk(w, z, k, nu);
                let zw = realify_hermitian(&h);
                let perm = [2usize, 3, 0, 1];
                for i in 0..4 {
                    for j in 0..4 {
                        g[i][j] = zw[perm[i]][perm[j]];
                    }
                }
            }
            MetricSpec::Xj1Tz { c1, c2 } => {
                // Hermitian coefficients of
                //   −c₁ dτdτ̄/(τ−τ̄)² + (2i c₂/(τ−τ̄)) (dz − p dτ)(dz̄ − p dτ̄),
                // p = (z − z̄)/(τ − τ̄), realified on (x, y, ξ, ρ).
                let tau = Complex::new(pt[0], pt[1]);
                let z = Complex::new(pt[2], pt[3]);
                let dift = tau - tau.conj();
                let p = ((z - z.conj()) / dift).re;
                let c1c = Complex::<S>::from_f64(c1, 0.0);
                let factor =
                    Complex::<S>::from_f64(0.0, 2.0 * c2) / dift;
                let h_tt = -c1c / (dift * dift) + factor.scale(p * p);
                let h_tz = -factor.scale(p); // dτ dz̄ slot
                let h_zz = factor;
                let h = [[h_tt, h_tz], [h_tz.conj(), h_zz]];
                let re = realify_hermitian(&h);
                for i in 0..4 {
                    g[i][..4].copy_from_slice(&re[i]);
                }
            }
            MetricSpec::Xj1Xypq { c1, c2 } => {
                let [x, y] = [pt[0], pt[1]];
                let quarter = S::from_f64(c1 / 4.0) / (y * y);
                g[0][0] = quarter;
                g[1][1] = quarter;
                let c2y = S::from_f64(c2) / y;
                g[2][2] = c2y * (x * x + y * y);
                g[3][3] = c2y;
                g[2][3] = c2y * x;
                g[3][2] = g[2][3];
            }
            MetricSpec::Xj1Xyxr { c1, c2 } => {
                let [x, y, _xi, rho] = [pt[0], pt[1], pt[2], pt[3]];
                let _ = x;
                let quarter = S::from_f64(c1 / 4.0) / (y * y);
                let c2y = S::from_f64(c2) / y;
                let s = rho / y;
                g[0][0] = quarter + c2y * s * s;
                g[1][1] = g[0][0];
                g[2][2] = c2y;
                g[3][3] = c2y;
                g[0][2] = -c2y * s;
                g[2][0] = g[0][2];
                g[1][3] = -c2y * s;
                g[3][1] = g[1][3];
            }
            MetricSpec::Xj1Xycp { c1, c2 } => {
                let [x, y] = [pt[0], pt[1]];
                let quarter = S::from_f64(c1 / 4.0) / (y * y);
                g[0][0] = quarter;
                g[1][1] = quarter;
                let c2y = S::from_f64(c2) / y;
                g[2][2] = c2y;
                g[2][3] = c2y * x;
                g[3][2] = g[2][3];
                g[3][3] = c2y * (x * x + y * y);
            }
            MetricSpec::Xj1Ext { alpha, gamma, delta } => {
                fill_heisenberg_block(&mut g, pt, 0, 1, 2, 3, 4, alpha, None, gamma, delta);
            }
            MetricSpec::Gj1 { alpha, beta, gamma, delta } => {
                fill_heisenberg_block(&mut g, pt, 0, 1, 3, 4, 5, alpha, Some((2, beta)), gamma, delta);
            }
        }
        Ok(g)
    }
}

/// Shared (x,y)/(p,q,κ) blocks of the three- and four-parameter metrics:
///   α(dx²+dy²)/y² [+ β(dx/y + 2dθ)²]
///   + (γ/y)[(x²+y²)dp² + dq² + 2x dp dq] + δ(dκ − p dq + q dp)².
#[allow(clippy::too_many_arguments)]
fn fill_heisenberg_block<S: Scalar>(
    g: &mut [Vec<S>],
    pt: &[S],
    ix: usize,
    iy: usize,
    ip: usize,
    iq: usize,
    ik: usize,
    alpha: f64,
    theta_term: Option<(usize, f64)>,
    gamma: f64,
    delta: f64,
) {
    let x = pt[ix];
    let y = pt[iy];
    let p = pt[ip];
    let q = pt[iq];
    let a = S::from_f64(alpha);
    let gam = S::from_f64(gamma);
    let del = S::from_f64(delta);
    let y2 = y * y;
    g[ix][ix] = a / y2;
    g[iy][iy] = a / y2;
    if let Some((it, beta)) = theta_term {
        let b = S::from_f64(beta);
        g[ix][ix] = g[ix][ix] + b / y2;
        g[ix][it] = S::from_f64(2.0) * b / y;
        g[it][ix] = g[ix][it];
        g[it][it] = S::from_f64(4.0) * b;
    }
    let gy = gam / y;
    g[ip][ip] = gy * (x * x + y2) + del * q * q;
    g[iq][iq] = gy + del * p * p;
    g[ip][iq] = gy * x - del * p * q;
    g[iq][ip] = g[ip][iq];
    g[ik][ik] = del;
    g[ip][ik] = del * q;
    g[ik][ip] = g[ip][ik];
    g[iq][ik] = -del * p;
    g[ik][iq] = g[iq][ik];
}

/// Evaluated metric: symmetric coefficient matrix with its chart and
/// coordinate ordering. Positive definiteness is asserted in debug builds.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricValue {
    pub chart: Chart,
    pub order: Vec<&'static str>,
    pub mat: SqMat,
}

impl MetricValue {
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.mat.n;
        let rows: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| self.mat[(i, j)]).collect()).collect();
        serde_json::json!({
            "chart": self.chart.name(),
            "order": self.order,
            "matrix": rows,
        })
    }

    /// g(v, v).
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        let n = self.mat.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += self.mat[(i, j)] * v[i] * v[j];
            }
        }
        s
    }

    pub fn max_abs_diff(&self, other: &MetricValue) -> f64 {
        let mut m: f64 = 0.0;
        for (a, b) in self.mat.a.iter().zip(&other.mat.a) {
            m = m.max((a - b).abs());
        }
        m
    }
}

/// Metric coefficients at a point of the spec's chart.
pub fn metric_at(spec: &MetricSpec, pt: &[f64]) -> Result<MetricValue> {
    if pt.len() != spec.dim() {
        return Err(Error::IncompatibleChart {
            expected: format!("{} ({} coords)", spec.chart().name(), spec.dim()),
            got: format!("{} coords", pt.len()),
        });
    }
    let rows = spec.entries(pt)?;
    let mat = SqMat::from_rows(&rows);
    debug_assert!(mat.symmetry_defect() <= 1e-14);
    debug_assert!(mat.cholesky().is_ok(), "metric not positive definite at {pt:?}");
    Ok(MetricValue { chart: spec.chart(), order: spec.order(), mat })
}

// ---------------------------------------------------------------------------
// Disk Kähler machinery
// ---------------------------------------------------------------------------

/// Kähler potential on the disk: f = −2k log P + ν(2|z|² + w̄z² + wz̄²)/(2P).
pub fn kahler_potential_disk<S: Scalar>(w: Complex<S>, z: Complex<S>, k: f64, nu: f64) -> S {
    let p = S::one() - w.norm_sqr();
    let two = S::from_f64(2.0);
    let mix = two * z.norm_sqr() + (w.conj() * z * z + w * z.conj() * z.conj()).re;
    S::from_f64(-2.0 * k) * p.ln() + S::from_f64(nu) * mix / (two * p)
}

/// Closed-form Hermitian matrix of the disk potential in index order (z, w):
/// [[ν/P, νη/P], [νη̄/P, 2k/P² + ν|η|²/P]] with η = (z + z̄w)/P.
pub fn hermitian_matrix_disk<S: Scalar>(
    w: Complex<S>,
    z: Complex<S>,
    k: f64,
    nu: f64,
) -> [[Complex<S>; 2]; 2] {
    let p = S::one() - w.norm_sqr();
    let eta = fc_inv(w, z);
    let nup = S::from_f64(nu) / p;
    let h00 = Complex::real(nup);
    let h01 = eta.scale(nup);
    let h11 = Complex::real(S::from_f64(2.0 * k) / (p * p) + nup * eta.norm_sqr());
    [[h00, h01], [h01.conj(), h11]]
}

/// Realifies Σ h_{αβ̄} dz_α dz̄_β into the symmetric matrix on
/// (x₁, y₁, x₂, y₂), diagonal terms h(dx² + dy²), cross terms by polarization.
pub fn realify_hermitian<S: Scalar>(h: &[[Complex<S>; 2]; 2]) -> [[S; 4]; 4] {
    let mut g = [[S::zero(); 4]; 4];
    let d0 = h[0][0].re;
    let d1 = h[1][1].re;
    g[0][0] = d0;
    g[1][1] = d0;
    g[2][2] = d1;
    g[3][3] = d1;
    let s = h[0][1].re;
    let t = h[0][1].im;
    g[0][2] = s;
    g[2][0] = s;
    g[1][3] = s;
    g[3][1] = s;
    g[1][2] = -t;
    g[2][1] = -t;
    g[0][3] = t;
    g[3][0] = t;
    g
}

/// Conversion between the disk parameters (k, ν) and the half-plane
/// parameters (c₁, c₂): k = 2c₁, ν = c₂/2.
pub fn uhp_params_to_disk(c1: f64, c2: f64) -> (f64, f64) {
    (2.0 * c1, c2 / 2.0)
}

pub fn disk_params_to_uhp(k: f64, nu: f64) -> (f64, f64) {
    (k / 2.0, 2.0 * nu)
}

// ---------------------------------------------------------------------------
// Kähler condition
// ---------------------------------------------------------------------------

/// A field of 2×2 Hermitian matrices over two complex variables.
pub trait HermitianField {
    fn eval<S: Scalar>(&self, z1: Complex<S>, z2: Complex<S>) -> [[Complex<S>; 2]; 2];
}

/// The true disk matrix as a function of (z, w).
pub struct DiskMetricField {
    pub k: f64,
    pub nu: f64,
}

impl HermitianField for DiskMetricField {
    fn eval<S: Scalar>(&self, z1: Complex<S>, z2: Complex<S>) -> [[Complex<S>; 2]; 2] {
        hermitian_matrix_disk(z2, z1, self.k, self.nu)
    }
}

/// The same entry formulas with η taken as an independent coordinate — the
/// coefficient matrix of the FC-pulled-back two-form on the (η, w) chart.
pub struct FcPulledBackField {
    pub k: f64,
    pub nu: f64,
}

impl HermitianField for FcPulledBackField {
    fn eval<S: Scalar>(&self, eta: Complex<S>, w: Complex<S>) -> [[Complex<S>; 2]; 2] {
        let p = S::one() - w.norm_sqr();
        let nup = S::from_f64(self.nu) / p;
        let h00 = Complex::real(nup);
        let h01 = eta.scale(nup);
        let h11 =
            Complex::real(S::from_f64(2.0 * self.k) / (p * p) + nup * eta.norm_sqr());
        [[h00, h01], [h01.conj(), h11]]
    }
}

/// A constant Hermitian matrix (trivially Kähler).
pub struct ConstantField(pub [[C64; 2]; 2]);

impl HermitianField for ConstantField {
    fn eval<S: Scalar>(&self, _z1: Complex<S>, _z2: Complex<S>) -> [[Complex<S>; 2]; 2] {
        let lift = |c: C64| Complex::<S>::from_f64(c.re, c.im);
        [[lift(self.0[0][0]), lift(self.0[0][1])], [lift(self.0[1][0]), lift(self.0[1][1])]]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KahlerReport {
    pub holds: bool,
    pub max_residual: f64,
    /// Largest holomorphic derivative seen, for scale-matched comparisons.
    pub derivative_scale: f64,
}

/// Tests ∂h_{αβ̄}/∂z_γ = ∂h_{γβ̄}/∂z_α over the sample, with Wirtinger
/// derivatives taken numerically through dual numbers.
pub fn kahler_condition<F: HermitianField>(
    field: &F,
    points: &[(C64, C64)],
    tol: f64,
) -> KahlerReport {
    let mut max_residual: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &(z1, z2) in points {
        // ∂/∂(real coord k) of every entry
        let coords = [z1.re, z1.im, z2.re, z2.im];
        let mut d = [[[C64::zero(); 2]; 2]; 4];
        for k in 0..4 {
            let args: [D1; 4] = std::array::from_fn(|j| {
                if j == k {
                    D1::variable(coords[j], 0)
                } else {
                    D1::constant(coords[j])
                }
            });
            let h = field.eval(
                Complex::new(args[0], args[1]),
                Complex::new(args[2], args[3]),
            );
            for a in 0..2 {
                for b in 0..2 {
                    d[k][a][b] = C64::new(h[a][b].re.d[0], h[a][b].im.d[0]);
                }
            }
        }
        // Wirtinger: ∂/∂z_γ = (∂x − i∂y)/2
        let wirt = |gamma: usize, a: usize, b: usize| -> C64 {
            let dx = d[2 * gamma][a][b];
            let dy = d[2 * gamma + 1][a][b];
            (dx - C64::i() * dy).scale(0.5)
        };
        for b in 0..2 {
            for a in 0..2 {
                for gamma in 0..2 {
                    scale = scale.max(wirt(gamma, a, b).norm());
                }
            }
            let resid = wirt(1, 0, b).abs_diff(wirt(0, 1, b));
            max_residual = max_residual.max(resid);
        }
    }
    KahlerReport { holds: max_residual <= tol, max_residual, derivative_scale: scale }
}

// ---------------------------------------------------------------------------
// Invariance pullback
// ---------------------------------------------------------------------------

fn action_space(spec: &MetricSpec) -> Result<Space> {
    match spec {
        MetricSpec::Xj1Xypq { .. } | MetricSpec::Xj1Xyxr { .. } | MetricSpec::Xj1Xycp { .. } => {
            Ok(Space::Xj1)
        }
        MetricSpec::Xj1Ext { .. } => Ok(Space::Xj1Ext),
        MetricSpec::Gj1 { .. } => Ok(Space::Group),
        other => Err(Error::Unsupported(format!(
            "no action pullback for metric {}",
            other.name()
        ))),
    }
}

/// Action map in the metric's own chart, generic for the Jacobian.
fn act_in_chart<S: Scalar>(
    spec: &MetricSpec,
    g: &RawElement<S>,
    pt: &[S],
) -> Result<Vec<S>> {
    let space = action_space(spec)?;
    match spec.chart() {
        Chart::Xypq | Chart::XypqK | Chart::GroupS => act_coords(space, g, pt),
        Chart::Xyxr | Chart::Xycp => {
            let chart = spec.chart();
            let c4: [S; 4] = [pt[0], pt[1], pt[2], pt[3]];
            let pq = chart_map_4(chart, Chart::Xypq, &c4)?;
            let moved = act_coords(space, g, &pq)?;
            let back =
                chart_map_4(Chart::Xypq, chart, &[moved[0], moved[1], moved[2], moved[3]])?;
            Ok(back.to_vec())
        }
        other => Err(Error::Unsupported(format!("action in chart {}", other.name()))),
    }
}

/// Jᵀ G(g·x) J with the Jacobian of the action computed by dual numbers.
/// Equality with G(x) is the invariance statement.
pub fn pullback_under_action(
    spec: &MetricSpec,
    g: &GroupElement,
    pt: &[f64],
) -> Result<MetricValue> {
    let n = spec.dim();
    assert_eq!(pt.len(), n);
    let raw = RawElement::<f64>::lift(g);
    let image = act_in_chart(spec, &raw, pt)?;
    let g_image = metric_at(spec, &image)?;
    // Jacobian columns
    let mut jac = vec![vec![0.0; n]; n]; // jac[i][j] = ∂imageᵢ/∂xⱼ
    let rawd = RawElement::<D1>::lift(g);
    for j in 0..n {
        let args: Vec<D1> = pt
            .iter()
            .enumerate()
            .map(|(k, &v)| if k == j { D1::variable(v, 0) } else { D1::constant(v) })
            .collect();
        let out = act_in_chart(spec, &rawd, &args)?;
        for i in 0..n {
            jac[i][j] = out[i].d[0];
        }
    }
    let mut mat = SqMat::zeros(n);
    for a in 0..n {
        for b in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += jac[i][a] * g_image.mat[(i, j)] * jac[j][b];
                }
            }
            mat[(a, b)] = s;
        }
    }
    Ok(MetricValue { chart: spec.chart(), order: spec.order(), mat })
}

// ---------------------------------------------------------------------------
// Reproducing kernel
// ---------------------------------------------------------------------------

/// K(τ, z) = y^{−k/2} exp(2π p² y), p = Im z / Im τ.
pub fn reproducing_kernel_uhp(tau: C64, z: C64, k: f64) -> Result<f64> {
    if tau.im <= 0.0 {
        return Err(Error::DomainViolation(format!("Im τ = {} must be > 0", tau.im)));
    }
    let p = z.im / tau.im;
    Ok(tau.im.powf(-k / 2.0) * (2.0 * std::f64::consts::PI * p * p * tau.im).exp())
}

/// log K as a function of the real coordinates (x, y, ξ, ρ), for Wirtinger
/// differentiation: −(k/2) ln y + 2π ρ²/y.
pub fn log_kernel<S: Scalar>(coords: &[S], k: f64) -> S {
    let y = coords[1];
    let rho = coords[3];
    S::from_f64(-k / 2.0) * y.ln()
        + S::from_f64(2.0 * std::f64::consts::PI) * rho * rho / y
}
