//! Coordinate atlas for the Siegel–Jacobi spaces: disk model (w, z), upper
//! half-plane model (v, u), the real parametrizations (x,y,p,q) / (x,y,ξ,ρ) /
//! (x,y,χ,ψ), the partial Cayley and FC transforms between them, and the
//! one-forms A and B in every chart.

use crate::error::{Error, Result};
use crate::numerics::{Complex, Scalar, C64, D1};
use serde::{Deserialize, Serialize};

/// Margin used by all strict domain guards; the transforms blow up on the
/// boundary (w → 1, y → 0).
pub const DOMAIN_MARGIN: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// (w, z) complex, |w| < 1.
    Disk,
    /// (v, u) complex, Im v > 0.
    Uhp,
    /// (x, y, p, q).
    Xypq,
    /// (x, y, ξ, ρ): real and imaginary part of u.
    Xyxr,
    /// (x, y, χ, ψ): real and imaginary part of η.
    Xycp,
    /// (x, y, p, q, κ) on the extended space.
    XypqK,
    /// (x, y, ξ, ρ, κ) on the extended space.
    XyxrK,
    /// (x, y, θ, p, q, κ) on the group.
    GroupS,
}

impl Chart {
    pub fn dim(&self) -> usize {
        match self {
            Chart::Disk | Chart::Uhp | Chart::Xypq | Chart::Xyxr | Chart::Xycp => 4,
            Chart::XypqK | Chart::XyxrK => 5,
            Chart::GroupS => 6,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Chart::Disk => "disk",
            Chart::Uhp => "uhp",
            Chart::Xypq => "xypq",
            Chart::Xyxr => "xyxr",
            Chart::Xycp => "xycp",
            Chart::XypqK => "xypqk",
            Chart::XyxrK => "xyxrk",
            Chart::GroupS => "s",
        }
    }

    pub fn parse(s: &str) -> Result<Chart> {
        Ok(match s {
            "disk" => Chart::Disk,
            "uhp" => Chart::Uhp,
            "xypq" => Chart::Xypq,
            "xyxr" => Chart::Xyxr,
            "xycp" => Chart::Xycp,
            "xypqk" => Chart::XypqK,
            "xyxrk" => Chart::XyxrK,
            "s" => Chart::GroupS,
            other => return Err(Error::UnknownChart(other.to_string())),
        })
    }
}

/// A tagged point; complex charts store [re, im, re, im].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: Vec<f64>,
}

impl ChartPoint {
    pub fn new(chart: Chart, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != chart.dim() {
            return Err(Error::DomainViolation(format!(
                "chart {} expects {} coordinates, got {}",
                chart.name(),
                chart.dim(),
                coords.len()
            )));
        }
        Ok(ChartPoint { chart, coords })
    }
}

/// Point of the Siegel–Jacobi disk: w strictly inside the unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    pub w: C64,
    pub z: C64,
}

impl DiskPoint {
    pub fn new(w: C64, z: C64) -> Result<Self> {
        if !(w.norm() < 1.0 - DOMAIN_MARGIN) {
            return Err(Error::DomainViolation(format!("|w| = {} must be < 1", w.norm())));
        }
        Ok(DiskPoint { w, z })
    }
}

/// Point of the Siegel–Jacobi upper half-plane: Im v > 0 strictly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UhpPoint {
    pub v: C64,
    pub u: C64,
}

impl UhpPoint {
    pub fn new(v: C64, u: C64) -> Result<Self> {
        if !(v.im > DOMAIN_MARGIN) {
            return Err(Error::DomainViolation(format!("Im v = {} must be > 0", v.im)));
        }
        Ok(UhpPoint { v, u })
    }
}

/// Point of the extended space (x, y, p, q, κ), y > 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtUhpPoint {
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub q: f64,
    pub kappa: f64,
}

impl ExtUhpPoint {
    pub fn new(x: f64, y: f64, p: f64, q: f64, kappa: f64) -> Result<Self> {
        if !(y > DOMAIN_MARGIN) {
            return Err(Error::DomainViolation(format!("y = {y} must be > 0")));
        }
        Ok(ExtUhpPoint { x, y, p, q, kappa })
    }
}

// ---------------------------------------------------------------------------
// Transforms (generic kernels + validated f64 wrappers)
// ---------------------------------------------------------------------------

/// Partial Cayley transform disk → half-plane: v = i(1+w)/(1−w), u = z/(1−w).
pub fn cayley_c<S: Scalar>(w: Complex<S>, z: Complex<S>) -> (Complex<S>, Complex<S>) {
    let one = Complex::<S>::one();
    let i = Complex::<S>::i();
    let d = one - w;
    (i * (one + w) / d, z / d)
}

/// Inverse: w = (v−i)/(v+i), z = 2iu/(v+i).
pub fn cayley_inv_c<S: Scalar>(v: Complex<S>, u: Complex<S>) -> (Complex<S>, Complex<S>) {
    let i = Complex::<S>::i();
    let two_i = Complex::<S>::from_f64(0.0, 2.0);
    let d = v + i;
    ((v - i) / d, two_i * u / d)
}

pub fn cayley(d: &DiskPoint) -> Result<UhpPoint> {
    let (v, u) = cayley_c(d.w, d.z);
    UhpPoint::new(v, u)
}

pub fn cayley_inv(p: &UhpPoint) -> Result<DiskPoint> {
    let (w, z) = cayley_inv_c(p.v, p.u);
    DiskPoint::new(w, z)
}

/// FC transform on the disk: z = η − w η̄.
pub fn fc<S: Scalar>(w: Complex<S>, eta: Complex<S>) -> Complex<S> {
    eta - w * eta.conj()
}

/// Inverse FC: η = (z + z̄ w) / P, P = 1 − |w|².
pub fn fc_inv<S: Scalar>(w: Complex<S>, z: Complex<S>) -> Complex<S> {
    let p = S::one() - w.norm_sqr();
    let num = z + z.conj() * w;
    Complex::new(num.re / p, num.im / p)
}

/// Half-plane FC transform: 2i u = (v+i)η − (v−i)η̄.
pub fn fc1<S: Scalar>(v: Complex<S>, eta: Complex<S>) -> Complex<S> {
    let i = Complex::<S>::i();
    let two_i = Complex::<S>::from_f64(0.0, 2.0);
    ((v + i) * eta - (v - i) * eta.conj()) / two_i
}

/// Inverse: η = (u v̄ − ū v + i(ū − u)) / (v̄ − v).
pub fn fc1_inv<S: Scalar>(v: Complex<S>, u: Complex<S>) -> Complex<S> {
    let i = Complex::<S>::i();
    (u * v.conj() - u.conj() * v + i * (u.conj() - u)) / (v.conj() - v)
}

/// (x, y, p, q) → (v, u) with v = x + iy, u = pv + q.
pub fn s_to_complex<S: Scalar>(x: S, y: S, p: S, q: S) -> (Complex<S>, Complex<S>) {
    let v = Complex::new(x, y);
    let u = v.scale(p) + Complex::real(q);
    (v, u)
}

/// Inverse: x = Re v, y = Im v, p = Im u / Im v, q = Im(ū v) / Im v.
pub fn complex_to_s<S: Scalar>(v: Complex<S>, u: Complex<S>) -> [S; 4] {
    let y = v.im;
    let p = u.im / y;
    let q = (u.conj() * v).im / y;
    [v.re, y, p, q]
}

/// Coordinate change between the real 4-charts. The substitutions are
/// ξ = px + q, ρ = py and ψ = p, χ = q.
pub fn chart_map_4<S: Scalar>(from: Chart, to: Chart, c: &[S; 4]) -> Result<[S; 4]> {
    let to_pq = |c: &[S; 4]| -> Result<[S; 4]> {
        match from {
            Chart::Xypq => Ok(*c),
            Chart::Xyxr => {
                let [x, y, xi, rho] = *c;
                let p = rho / y;
                Ok([x, y, p, xi - x * p])
            }
            Chart::Xycp => {
                let [x, y, chi, psi] = *c;
                Ok([x, y, psi, chi])
            }
            _ => Err(Error::UnknownChart(from.name().to_string())),
        }
    };
    let pq = to_pq(c)?;
    let [x, y, p, q] = pq;
    match to {
        Chart::Xypq => Ok(pq),
        Chart::Xyxr => Ok([x, y, p * x + q, p * y]),
        Chart::Xycp => Ok([x, y, q, p]),
        _ => Err(Error::UnknownChart(to.name().to_string())),
    }
}

/// Validated chart change on tagged points.
pub fn chart_changes(point: &ChartPoint, to: Chart) -> Result<ChartPoint> {
    let c: [f64; 4] = point
        .coords
        .clone()
        .try_into()
        .map_err(|_| Error::UnknownChart(point.chart.name().to_string()))?;
    let out = chart_map_4(point.chart, to, &c)?;
    ChartPoint::new(to, out.to_vec())
}

// ---------------------------------------------------------------------------
// One-forms
// ---------------------------------------------------------------------------

/// Value of a one-form at a point: one complex coefficient per differential of
/// the chart's coordinates (complex charts use the complex differentials).
#[derive(Clone, Debug, PartialEq)]
pub struct OneFormValue {
    pub chart: Chart,
    pub coeffs: Vec<C64>,
}

impl OneFormValue {
    pub fn new(chart: Chart, coeffs: Vec<C64>) -> Result<Self> {
        let want = match chart {
            Chart::Disk | Chart::Uhp => 2,
            other => other.dim(),
        };
        if coeffs.len() != want {
            return Err(Error::DomainViolation(format!(
                "one-form on {} needs {} coefficients, got {}",
                chart.name(),
                want,
                coeffs.len()
            )));
        }
        Ok(OneFormValue { chart, coeffs })
    }

    pub fn max_abs_diff(&self, other: &OneFormValue) -> f64 {
        assert_eq!(self.chart, other.chart);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0f64, |m, (a, b)| m.max(a.abs_diff(*b)))
    }
}

/// A = dz + η̄ dw on the disk; coefficients ordered (dw, dz).
pub fn eval_form_a(d: &DiskPoint) -> OneFormValue {
    let eta = fc_inv(d.w, d.z);
    OneFormValue { chart: Chart::Disk, coeffs: vec![eta.conj(), C64::one()] }
}

/// B in any of its printed chart expressions:
/// (v,u): du − ((u−ū)/(v−v̄)) dv, ordered (dv, du);
/// (x,y,p,q): v dp + dq;
/// (x,y,χ,ψ): x dψ + dχ + i y dψ;
/// (x,y,ξ,ρ): dξ + i dρ − (ρ/y)(dx + i dy).
pub fn eval_form_b(point: &ChartPoint) -> Result<OneFormValue> {
    match point.chart {
        Chart::Uhp => {
            let v = C64::new(point.coords[0], point.coords[1]);
            let u = C64::new(point.coords[2], point.coords[3]);
            let cv = -(u - u.conj()) / (v - v.conj());
            OneFormValue::new(Chart::Uhp, vec![cv, C64::one()])
        }
        Chart::Xypq => {
            let v = C64::new(point.coords[0], point.coords[1]);
            OneFormValue::new(
                Chart::Xypq,
                vec![C64::zero(), C64::zero(), v, C64::one()],
            )
        }
        Chart::Xycp => {
            let x = point.coords[0];
            let y = point.coords[1];
            OneFormValue::new(
                Chart::Xycp,
                vec![C64::zero(), C64::zero(), C64::one(), C64::new(x, y)],
            )
        }
        Chart::Xyxr => {
            let y = point.coords[1];
            let rho = point.coords[3];
            let s = rho / y;
            OneFormValue::new(
                Chart::Xyxr,
                vec![C64::new(-s, 0.0), C64::new(0.0, -s), C64::one(), C64::i()],
            )
        }
        other => Err(Error::UnknownChart(other.name().to_string())),
    }
}

/// Rewrites a form over a complex pair chart in terms of the real
/// differentials (d re₁, d im₁, d re₂, d im₂): c·dz = c·dx + ic·dy.
pub fn complex_form_to_real(form: &OneFormValue, real_chart: Chart) -> Result<OneFormValue> {
    if form.coeffs.len() != 2 {
        return Err(Error::IncompatibleChart {
            expected: "complex pair chart".into(),
            got: form.chart.name().into(),
        });
    }
    let c1 = form.coeffs[0];
    let c2 = form.coeffs[1];
    OneFormValue::new(real_chart, vec![c1, c1 * C64::i(), c2, c2 * C64::i()])
}

/// Pulls a form on `form.chart` (a real 4-chart) back through the chart change
/// `source → form.chart`, evaluated at the source point.
pub fn pullback_form_4(form: &OneFormValue, source: Chart, at: &[f64; 4]) -> Result<OneFormValue> {
    let mut coeffs = vec![C64::zero(); 4];
    for j in 0..4 {
        let args: [D1; 4] = std::array::from_fn(|k| {
            if k == j {
                D1::variable(at[k], 0)
            } else {
                D1::constant(at[k])
            }
        });
        let image = chart_map_4(source, form.chart, &args)?;
        for i in 0..4 {
            coeffs[j] = coeffs[j] + form.coeffs[i].scale(image[i].d[0]);
        }
    }
    OneFormValue::new(source, coeffs)
}

/// Pulls a form with coefficients on the complex differentials of a map
/// ℝ⁴ → ℂ² back to the source's real differentials.
pub fn pullback_complex_pair_form<F>(coeffs: [C64; 2], map: F, at: &[f64; 4]) -> [C64; 4]
where
    F: Fn(&[D1; 4]) -> [Complex<D1>; 2],
{
    let mut out = [C64::zero(); 4];
    for (j, o) in out.iter_mut().enumerate() {
        let args: [D1; 4] = std::array::from_fn(|k| {
            if k == j {
                D1::variable(at[k], 0)
            } else {
                D1::constant(at[k])
            }
        });
        let [w1, w2] = map(&args);
        let dw1 = C64::new(w1.re.d[0], w1.im.d[0]);
        let dw2 = C64::new(w2.re.d[0], w2.im.d[0]);
        *o = coeffs[0] * dw1 + coeffs[1] * dw2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_disk, random_uhp, random_xypq, rng_from_seed};
    use approx::assert_relative_eq;
    use rand::Rng;

    #[test]
    fn disk_center_maps_to_i() {
        let d = DiskPoint::new(C64::zero(), C64::zero()).unwrap();
        let h = cayley(&d).unwrap();
        assert!(h.v.abs_diff(C64::i()) <= 1e-15);
        assert!(h.u.abs_diff(C64::zero()) <= 1e-15);
    }

    #[test]
    fn cayley_roundtrip_1000_points() {
        let mut rng = rng_from_seed(21);
        for _ in 0..1000 {
            let (w, z) = random_disk(&mut rng);
            let d = DiskPoint::new(w, z).unwrap();
            let h = cayley(&d).unwrap();
            let back = cayley_inv(&h).unwrap();
            assert!(back.w.abs_diff(w) <= 1e-12);
            assert!(back.z.abs_diff(z) <= 1e-12);
            // conformal identity: Im v = (1 − |w|²)/|1 − w|²
            let p = 1.0 - w.norm_sqr();
            let denom = (C64::one() - w).norm_sqr();
            assert_relative_eq!(h.v.im, p / denom, epsilon = 1e-12);
            assert!(h.v.im > 0.0);
        }
    }

    #[test]
    fn boundary_rejected() {
        assert!(DiskPoint::new(C64::new(1.0, 0.0), C64::zero()).is_err());
        assert!(UhpPoint::new(C64::new(0.0, 0.0), C64::zero()).is_err());
    }

    #[test]
    fn fc_at_origin_and_real_case() {
        let eta = C64::new(0.7, -0.2);
        assert!(fc(C64::zero(), eta).abs_diff(eta) <= 1e-15);
        // real η, real w: z = η(1 − w)
        let z = fc(C64::new(0.3, 0.0), C64::new(0.5, 0.0));
        assert!(z.abs_diff(C64::new(0.5 * 0.7, 0.0)) <= 1e-15);
    }

    #[test]
    fn fc_roundtrip_1000_points() {
        let mut rng = rng_from_seed(22);
        for _ in 0..1000 {
            let (w, eta) = random_disk(&mut rng);
            let z = fc(w, eta);
            let back = fc_inv(w, z);
            assert!(back.abs_diff(eta) <= 1e-13);
        }
    }

    #[test]
    fn fc1_real_eta_and_roundtrip() {
        // η real: u = η
        let v = C64::new(0.4, 1.3);
        let eta = C64::new(0.8, 0.0);
        assert!(fc1(v, eta).abs_diff(eta) <= 1e-15);

        let mut rng = rng_from_seed(23);
        for _ in 0..1000 {
            let (v, eta) = random_uhp(&mut rng);
            let u = fc1(v, eta);
            assert!(fc1_inv(v, u).abs_diff(eta) <= 1e-12);
        }
    }

    #[test]
    fn eta_equals_q_plus_ip() {
        // with u = pv + q the FC parameter is exactly η = q + ip
        let mut rng = rng_from_seed(24);
        for _ in 0..1000 {
            let [x, y, p, q] = random_xypq(&mut rng);
            let (v, u) = s_to_complex(x, y, p, q);
            let eta = fc1_inv(v, u);
            assert!(eta.abs_diff(C64::new(q, p)) <= 1e-12);
        }
    }

    #[test]
    fn s_chart_roundtrip_and_printed_inverse() {
        let (v, u) = s_to_complex(0.0, 1.0, 0.0, 0.0);
        assert!(v.abs_diff(C64::i()) <= 1e-15 && u.abs_diff(C64::zero()) <= 1e-15);

        let mut rng = rng_from_seed(25);
        for _ in 0..1000 {
            let [x, y, p, q] = random_xypq(&mut rng);
            let (v, u) = s_to_complex(x, y, p, q);
            let back = complex_to_s(v, u);
            for (a, b) in back.iter().zip([x, y, p, q]) {
                assert_relative_eq!(*a, b, epsilon = 1e-13);
            }
            // p = Im u / Im v
            assert_relative_eq!(u.im / v.im, p, epsilon = 1e-13);
        }
    }

    #[test]
    fn chart_change_example_and_loop() {
        let pt = ChartPoint::new(Chart::Xypq, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let xr = chart_changes(&pt, Chart::Xyxr).unwrap();
        assert_eq!(xr.coords, vec![1.0, 2.0, 7.0, 6.0]); // ξ = px+q, ρ = py

        let cp = chart_changes(&pt, Chart::Xycp).unwrap();
        assert_eq!(cp.coords, vec![1.0, 2.0, 4.0, 3.0]); // χ = q, ψ = p

        // closed loop (p,q) → (ξ,ρ) → (χ,ψ) → (p,q)
        let loop1 = chart_changes(&xr, Chart::Xycp).unwrap();
        let loop2 = chart_changes(&loop1, Chart::Xypq).unwrap();
        for (a, b) in loop2.coords.iter().zip(&pt.coords) {
            assert_relative_eq!(*a, *b, epsilon = 1e-13);
        }
    }

    #[test]
    fn b_form_at_base_point() {
        let pt = ChartPoint::new(Chart::Xypq, vec![0.0, 1.0, 0.3, -0.4]).unwrap();
        let b = eval_form_b(&pt).unwrap();
        assert!(b.coeffs[2].abs_diff(C64::i()) <= 1e-15); // i dp
        assert!(b.coeffs[3].abs_diff(C64::one()) <= 1e-15); // dq
    }

    #[test]
    fn b_form_chart_expressions_agree_under_pullback() {
        let mut rng = rng_from_seed(26);
        for _ in 0..500 {
            let c = random_xypq(&mut rng);
            let pt = ChartPoint::new(Chart::Xypq, c.to_vec()).unwrap();
            let b_pq = eval_form_b(&pt).unwrap();

            for target in [Chart::Xyxr, Chart::Xycp] {
                let image = chart_changes(&pt, target).unwrap();
                let b_target = eval_form_b(&image).unwrap();
                let pulled = pullback_form_4(&b_target, Chart::Xypq, &c).unwrap();
                assert!(
                    pulled.max_abs_diff(&b_pq) <= 1e-12,
                    "chart {:?}: diff {}",
                    target,
                    pulled.max_abs_diff(&b_pq)
                );
            }

            // and the (v, u) expression, pulled back through u = pv + q
            let b_uhp_at = |args: &[D1; 4]| -> [Complex<D1>; 2] {
                let (v, u) = s_to_complex(args[0], args[1], args[2], args[3]);
                [v, u]
            };
            let (v, u) = s_to_complex(c[0], c[1], c[2], c[3]);
            let uhp_pt =
                ChartPoint::new(Chart::Uhp, vec![v.re, v.im, u.re, u.im]).unwrap();
            let b_vu = eval_form_b(&uhp_pt).unwrap();
            let pulled =
                pullback_complex_pair_form([b_vu.coeffs[0], b_vu.coeffs[1]], b_uhp_at, &c);
            for (got, want) in pulled.iter().zip(&b_pq.coeffs) {
                assert!(got.abs_diff(*want) <= 1e-12);
            }
        }
    }

    #[test]
    fn a_pulled_through_cayley_is_2i_over_v_plus_i_times_b() {
        let mut rng = rng_from_seed(27);
        for _ in 0..1000 {
            let (v, u) = random_uhp(&mut rng);
            let (w, z) = cayley_inv_c(v, u);
            let d = DiskPoint::new(w, z).unwrap();
            let a = eval_form_a(&d);

            // pull A back through (v,u) ↦ (w,z) to the real (x_v, y_v, x_u, y_u) chart
            let at = [v.re, v.im, u.re, u.im];
            let pulled = pullback_complex_pair_form(
                [a.coeffs[0], a.coeffs[1]],
                |args: &[D1; 4]| {
                    let vv = Complex::new(args[0], args[1]);
                    let uu = Complex::new(args[2], args[3]);
                    let (w, z) = cayley_inv_c(vv, uu);
                    [w, z]
                },
                &at,
            );

            let factor = C64::from_f64(0.0, 2.0) / (v + C64::i());
            let uhp_pt = ChartPoint::new(Chart::Uhp, at.to_vec()).unwrap();
            let b = eval_form_b(&uhp_pt).unwrap();
            let scaled = OneFormValue {
                chart: Chart::Uhp,
                coeffs: vec![factor * b.coeffs[0], factor * b.coeffs[1]],
            };
            // realified (v, u) differentials are exactly the (x, y, ξ, ρ) chart
            let real = complex_form_to_real(&scaled, Chart::Xyxr).unwrap();
            for (got, want) in pulled.iter().zip(&real.coeffs) {
                assert!(got.abs_diff(*want) <= 1e-12, "diff {}", got.abs_diff(*want));
            }
        }
    }

    #[test]
    fn fc_maps_a_to_deta_minus_w_deta_bar() {
        // pull A back through (w, η) ↦ (w, z = η − wη̄); the result must be
        // dη − w dη̄, i.e. (1 − w) d(Re η) + i (1 + w) d(Im η) and no dw term.
        let mut rng = rng_from_seed(28);
        for _ in 0..200 {
            let (w, eta) = random_disk(&mut rng);
            let z = fc(w, eta);
            let d = DiskPoint::new(w, z).unwrap();
            let a = eval_form_a(&d);
            let at = [w.re, w.im, eta.re, eta.im];
            let pulled = pullback_complex_pair_form(
                [a.coeffs[0], a.coeffs[1]],
                |args: &[D1; 4]| {
                    let ww = Complex::new(args[0], args[1]);
                    let ee = Complex::new(args[2], args[3]);
                    [ww, fc(ww, ee)]
                },
                &at,
            );
            let one = C64::one();
            let expect = [
                C64::zero(),
                C64::zero(),
                one - w,
                C64::i() * (one + w),
            ];
            for (got, want) in pulled.iter().zip(expect) {
                assert!(got.abs_diff(want) <= 1e-12);
            }
        }
    }

    #[test]
    fn tagged_point_serialization() {
        let pt = ChartPoint::new(Chart::Xyxr, vec![0.1, 1.0, 2.0, 3.0]).unwrap();
        let j = serde_json::to_value(&pt).unwrap();
        assert_eq!(j["chart"], "xyxr");
        assert_eq!(j["coords"][3], 3.0);
        let back: ChartPoint = serde_json::from_value(j).unwrap();
        assert_eq!(back, pt);
    }

    #[test]
    fn oneform_smoothness_probe() {
        // coefficients stay finite across the sampled domain
        let mut rng = rng_from_seed(29);
        for _ in 0..1000 {
            let c = random_xypq(&mut rng);
            for chart in [Chart::Xypq, Chart::Xyxr, Chart::Xycp] {
                let pt = chart_changes(
                    &ChartPoint::new(Chart::Xypq, c.to_vec()).unwrap(),
                    chart,
                )
                .unwrap();
                let b = eval_form_b(&pt).unwrap();
                assert!(b.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
            }
        }
        let _ = rng.gen_range(0..2);
    }
}
