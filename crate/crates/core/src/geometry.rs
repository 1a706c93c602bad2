//! Riemannian computations on a (metric, chart) pair: Levi-Civita Christoffel
//! symbols, geodesic integration, the Killing-equation residual, and the
//! orbit-versus-geodesic comparison used by the geodesic-vector analysis.
//!
//! Nothing here is transcribed from a closed-form connection; everything is
//! derived from the metric coefficients with dual-number partials, which is
//! the only typo-safe route.

use crate::actions::{act_coords, Space, VectorFieldExpr};
use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::RawElement;
use crate::metrics::{metric_at, MetricSpec};
use crate::numerics::{expm4, rk4_integrate, Scalar, D1};

/// Anything that can produce metric coefficients generically over the scalar.
pub trait MetricField {
    fn dim(&self) -> usize;
    fn entries_at<S: Scalar>(&self, pt: &[S]) -> Result<Vec<Vec<S>>>;
}

impl MetricField for MetricSpec {
    fn dim(&self) -> usize {
        MetricSpec::dim(self)
    }
    fn entries_at<S: Scalar>(&self, pt: &[S]) -> Result<Vec<Vec<S>>> {
        self.entries(pt)
    }
}

/// Γ^μ_{λχ} at a point, stored as gamma[mu][lambda][chi].
#[derive(Clone, Debug)]
pub struct Christoffel {
    pub n: usize,
    pub gamma: Vec<f64>,
}

impl Christoffel {
    pub fn get(&self, mu: usize, lam: usize, chi: usize) -> f64 {
        self.gamma[(mu * self.n + lam) * self.n + chi]
    }

    pub fn symmetry_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for mu in 0..self.n {
            for l in 0..self.n {
                for c in 0..l {
                    d = d.max((self.get(mu, l, c) - self.get(mu, c, l)).abs());
                }
            }
        }
        d
    }

    /// Γ^μ_{λχ} v^λ v^χ contracted against a velocity.
    pub fn contract(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for mu in 0..n {
            let mut s = 0.0;
            for l in 0..n {
                for c in 0..n {
                    s += self.get(mu, l, c) * v[l] * v[c];
                }
            }
            out[mu] = s;
        }
        out
    }
}

/// Metric coefficients and their coordinate partials at a point
/// (one dual pass per coordinate).
fn metric_with_partials<M: MetricField>(
    spec: &M,
    pt: &[f64],
) -> Result<(Vec<Vec<f64>>, Vec<Vec<Vec<f64>>>)> {
    let n = spec.dim();
    let mut g = vec![vec![0.0; n]; n];
    let mut dg = vec![vec![vec![0.0; n]; n]; n]; // dg[k][i][j] = ∂ₖ g_{ij}
    for k in 0..n {
        let args: Vec<D1> = pt
            .iter()
            .enumerate()
            .map(|(m, &v)| if m == k { D1::variable(v, 0) } else { D1::constant(v) })
            .collect();
        let rows = spec.entries_at(&args)?;
        for i in 0..n {
            for j in 0..n {
                dg[k][i][j] = rows[i][j].d[0];
                if k == 0 {
                    g[i][j] = rows[i][j].val;
                }
            }
        }
    }
    Ok((g, dg))
}

/// Levi-Civita connection: Γ^μ_{λχ} = ½ g^{μσ}(∂_λ g_{σχ} + ∂_χ g_{σλ} − ∂_σ g_{λχ}).
pub fn christoffel_of<M: MetricField>(spec: &M, pt: &[f64]) -> Result<Christoffel> {
    let n = spec.dim();
    let (g, dg) = metric_with_partials(spec, pt)?;
    let ginv = crate::numerics::SqMat::from_rows(&g).inverse_spd()?;
    let mut gamma = vec![0.0; n * n * n];
    for mu in 0..n {
        for l in 0..n {
            for c in 0..n {
                let mut s = 0.0;
                for sig in 0..n {
                    s += ginv[(mu, sig)] * (dg[l][sig][c] + dg[c][sig][l] - dg[sig][l][c]);
                }
                gamma[(mu * n + l) * n + c] = 0.5 * s;
            }
        }
    }
    Ok(Christoffel { n, gamma })
}

pub fn christoffel(spec: &MetricSpec, pt: &[f64]) -> Result<Christoffel> {
    christoffel_of(spec, pt)
}

/// Max-abs residual of the Killing equation
/// X^μ ∂_μ g_{λχ} + g_{μχ} ∂_λ X^μ + g_{λμ} ∂_χ X^μ = 0 over all (λ, χ).
pub fn killing_residual(
    spec: &MetricSpec,
    field: &VectorFieldExpr,
    pt: &[f64],
) -> Result<f64> {
    if field.chart != spec.chart() {
        return Err(Error::IncompatibleChart {
            expected: spec.chart().name().into(),
            got: field.chart.name().into(),
        });
    }
    let n = spec.dim();
    let (g, dg) = metric_with_partials(spec, pt)?;
    let x0 = field.eval(pt);
    // dx[k][mu] = ∂ₖ X^μ
    let mut dx = vec![vec![0.0; n]; n];
    for k in 0..n {
        let args: Vec<D1> = pt
            .iter()
            .enumerate()
            .map(|(m, &v)| if m == k { D1::variable(v, 0) } else { D1::constant(v) })
            .collect();
        let out = field.eval(&args);
        for mu in 0..n {
            dx[k][mu] = out[mu].d[0];
        }
    }
    let mut worst: f64 = 0.0;
    for l in 0..n {
        for c in 0..n {
            let mut s = 0.0;
            for mu in 0..n {
                s += x0[mu] * dg[mu][l][c] + g[mu][c] * dx[l][mu] + g[l][mu] * dx[c][mu];
            }
            worst = worst.max(s.abs());
        }
    }
    Ok(worst)
}

/// One integrated geodesic sample: time, position, velocity, kinetic energy.
#[derive(Clone, Debug)]
pub struct GeodesicSample {
    pub t: f64,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub energy: f64,
}

/// Integrates ẍ^μ + Γ^μ_{λχ} ẋ^λ ẋ^χ = 0 with RK4. The conserved energy
/// g(ẋ, ẋ) is recorded along the way.
pub fn geodesic(
    spec: &MetricSpec,
    start: &[f64],
    velocity: &[f64],
    t1: f64,
    steps: usize,
) -> Result<Vec<GeodesicSample>> {
    let n = spec.dim();
    assert_eq!(start.len(), n);
    assert_eq!(velocity.len(), n);
    let mut state = Vec::with_capacity(2 * n);
    state.extend_from_slice(start);
    state.extend_from_slice(velocity);
    let spec = *spec;
    let deriv = move |_t: f64, y: &[f64]| -> Vec<f64> {
        let (pos, vel) = y.split_at(n);
        let mut out = Vec::with_capacity(2 * n);
        out.extend_from_slice(vel);
        match christoffel(&spec, pos) {
            Ok(gam) => {
                let acc = gam.contract(vel);
                out.extend(acc.iter().map(|a| -a));
            }
            Err(_) => out.extend(std::iter::repeat(f64::NAN).take(n)),
        }
        out
    };
    let traj = rk4_integrate(deriv, &state, [0.0, t1], steps).map_err(|e| match e {
        Error::NonFinite(_) => Error::LeftDomain { t: t1 },
        other => other,
    })?;
    let mut out = Vec::with_capacity(traj.len());
    for s in traj {
        let (pos, vel) = s.y.split_at(n);
        if pos[1] <= 0.0 && spec.chart() != crate::charts::Chart::Disk {
            return Err(Error::LeftDomain { t: s.t });
        }
        let gv = metric_at(&spec, pos)?;
        out.push(GeodesicSample {
            t: s.t,
            position: pos.to_vec(),
            velocity: vel.to_vec(),
            energy: gv.quadratic_form(vel),
        });
    }
    Ok(out)
}

/// Largest violation of metric compatibility ∇g = 0 at a point:
/// ∂ₖ g_{ij} − Γ^μ_{ki} g_{μj} − Γ^μ_{kj} g_{iμ}.
pub fn compatibility_defect(spec: &MetricSpec, pt: &[f64]) -> Result<f64> {
    let n = spec.dim();
    let (g, dg) = metric_with_partials(spec, pt)?;
    let gam = christoffel(spec, pt)?;
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = dg[k][i][j];
                for mu in 0..n {
                    s -= gam.get(mu, k, i) * g[mu][j] + gam.get(mu, k, j) * g[i][mu];
                }
                worst = worst.max(s.abs());
            }
        }
    }
    Ok(worst)
}

/// Step used by the 5-point stencils differentiating orbit curves.
pub const ORBIT_STENCIL_STEP: f64 = 1e-3;

/// γ(t) = exp(tX)·base evaluated on f64.
pub fn orbit_point(space: Space, x: &AlgebraElement, base: &[f64], t: f64) -> Result<Vec<f64>> {
    let e = expm4(&x.matrix().scale(t));
    let g = RawElement::<f64>::from_embed(&e);
    act_coords(space, &g, base)
}

/// Max over the grid of ‖γ̈^μ + Γ^μ_{λχ} γ̇^λ γ̇^χ‖∞ for the orbit curve
/// γ(t) = exp(tX)·base. Zero (to stencil accuracy) iff X is a geodesic vector.
pub fn orbit_geodesic_residual(
    space: Space,
    spec: &MetricSpec,
    x: &AlgebraElement,
    base: &[f64],
    t_grid: &[f64],
) -> Result<f64> {
    if x.norm_inf() == 0.0 {
        return Err(Error::ZeroVector);
    }
    if spec.chart() != space.chart() {
        return Err(Error::IncompatibleChart {
            expected: space.chart().name().into(),
            got: spec.chart().name().into(),
        });
    }
    let n = spec.dim();
    let h = ORBIT_STENCIL_STEP;
    let mut worst: f64 = 0.0;
    for &t in t_grid {
        let s: Vec<Vec<f64>> = [-2.0, -1.0, 0.0, 1.0, 2.0]
            .iter()
            .map(|&k| orbit_point(space, x, base, t + k * h))
            .collect::<Result<_>>()?;
        let mut vel = vec![0.0; n];
        let mut acc = vec![0.0; n];
        for i in 0..n {
            vel[i] = (-s[4][i] + 8.0 * s[3][i] - 8.0 * s[1][i] + s[0][i]) / (12.0 * h);
            acc[i] = (-s[4][i] + 16.0 * s[3][i] - 30.0 * s[2][i] + 16.0 * s[1][i] - s[0][i])
                / (12.0 * h * h);
        }
        let gam = christoffel(spec, &s[2])?;
        let quad = gam.contract(&vel);
        for i in 0..n {
            worst = worst.max((acc[i] + quad[i]).abs());
        }
    }
    Ok(worst)
}
