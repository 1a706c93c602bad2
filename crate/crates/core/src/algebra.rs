//! The Lie algebra ⟨P, Q, R, F, G, H⟩ in its 4×4 matrix realization, the
//! parametrized orthonormal frame L¹..L⁶, and reductive / symmetric
//! decomposition tests.
//!
//! The frame's bracket table exists in two modes: `Printed` is the table as
//! published (the ground truth for the geodesic-vector systems), `Derived`
//! recomputes every bracket from the matrix realization of the frame. The two
//! disagree in two entries; `frame_brackets` reports the diff instead of
//! silently picking one.

use crate::error::{Error, Result};
use crate::numerics::{Mat4, SqMat};
use serde::Serialize;

pub const SPAN_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    F,
    G,
    H,
    P,
    Q,
    R,
}

pub const GENERATORS: [Generator; 6] = [
    Generator::F,
    Generator::G,
    Generator::H,
    Generator::P,
    Generator::Q,
    Generator::R,
];

pub fn generator_matrix(g: Generator) -> Mat4<f64> {
    let mut m = Mat4::zeros();
    match g {
        Generator::F => m.m[0][2] = 1.0,
        Generator::G => m.m[2][0] = 1.0,
        Generator::H => {
            m.m[0][0] = 1.0;
            m.m[2][2] = -1.0;
        }
        Generator::P => {
            m.m[1][0] = 1.0;
            m.m[2][3] = -1.0;
        }
        Generator::Q => {
            m.m[0][3] = 1.0;
            m.m[1][2] = 1.0;
        }
        Generator::R => m.m[1][3] = 1.0,
    }
    m
}

/// Element as coefficients over the ordered basis (F, G, H, P, Q, R).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlgebraElement {
    pub coeffs: [f64; 6],
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { coeffs: [0.0; 6] }
    }

    pub fn from_coeffs(coeffs: [f64; 6]) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn generator(g: Generator) -> Self {
        let mut coeffs = [0.0; 6];
        coeffs[GENERATORS.iter().position(|&x| x == g).unwrap()] = 1.0;
        AlgebraElement { coeffs }
    }

    pub fn matrix(&self) -> Mat4<f64> {
        let mut m = Mat4::zeros();
        for (c, g) in self.coeffs.iter().zip(GENERATORS) {
            m = m.add(&generator_matrix(g).scale(*c));
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut coeffs = self.coeffs;
        for c in coeffs.iter_mut() {
            *c *= s;
        }
        AlgebraElement { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs;
        for (c, o) in coeffs.iter_mut().zip(other.coeffs) {
            *c += o;
        }
        AlgebraElement { coeffs }
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()))
    }
}

/// Expresses a 4×4 matrix in the generator basis; errors if it is not in the
/// span (which would signal a generator-matrix bug upstream).
pub fn element_from_matrix(m: &Mat4<f64>) -> Result<AlgebraElement> {
    let coeffs = [
        m.m[0][2], // F
        m.m[2][0], // G
        m.m[0][0], // H
        m.m[1][0], // P
        m.m[0][3], // Q
        m.m[1][3], // R
    ];
    let el = AlgebraElement { coeffs };
    let residual = m.sub(&el.matrix()).norm_inf();
    if residual > SPAN_TOL {
        return Err(Error::NotInAlgebra { residual });
    }
    Ok(el)
}

/// Matrix commutator re-expressed in the generator basis.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    element_from_matrix(&x.matrix().commutator(&y.matrix()))
}

// ---------------------------------------------------------------------------
// Structure constants and decompositions
// ---------------------------------------------------------------------------

/// Dense structure-constant tensor: [eᵢ, eⱼ] = Σₖ c[i][j][k] eₖ.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub dim: usize,
    pub c: Vec<f64>,
}

impl StructureConstants {
    pub fn zeros(dim: usize) -> Self {
        StructureConstants { dim, c: vec![0.0; dim * dim * dim] }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let d = self.dim;
        self.c[(i * d + j) * d + k] = v;
        self.c[(j * d + i) * d + k] = -v;
    }

    pub fn bracket_vec(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0.0 {
                    continue;
                }
                for k in 0..d {
                    out[k] += x[i] * y[j] * self.get(i, j, k);
                }
            }
        }
        out
    }

    /// Exact table of the 4×4 generator realization, basis (F,G,H,P,Q,R).
    pub fn generators() -> Self {
        let mut sc = StructureConstants::zeros(6);
        let basis: Vec<AlgebraElement> =
            GENERATORS.iter().map(|&g| AlgebraElement::generator(g)).collect();
        for i in 0..6 {
            for j in (i + 1)..6 {
                let b = bracket(&basis[i], &basis[j]).expect("generator brackets close");
                for k in 0..6 {
                    if b.coeffs[k] != 0.0 {
                        sc.set(i, j, k, b.coeffs[k]);
                    }
                }
            }
        }
        sc
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        let d = self.dim;
        let mut m: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    m = m.max((self.get(i, j, k) + self.get(j, i, k)).abs());
                }
            }
        }
        m
    }

    /// JSON dump as nested arrays C[i][j][k].
    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim;
        let tensor: Vec<Vec<Vec<f64>>> = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| self.get(i, j, k)).collect()).collect())
            .collect();
        serde_json::json!(tensor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl FrameParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        assert!(
            alpha > 0.0 && beta > 0.0 && gamma > 0.0 && delta > 0.0,
            "frame parameters must be positive"
        );
        FrameParams { alpha, beta, gamma, delta }
    }

    pub fn ones() -> Self {
        FrameParams::new(1.0, 1.0, 1.0, 1.0)
    }

    /// r = √(α/β), the single knob the geodesic systems depend on.
    pub fn r(&self) -> f64 {
        (self.alpha / self.beta).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BracketMode {
    Printed,
    Derived,
}

/// The 6-dimensional frame algebra with inner product = identity on L¹..L⁶.
#[derive(Clone, Debug)]
pub struct FrameAlgebra {
    pub params: FrameParams,
    pub mode: BracketMode,
    pub sc: StructureConstants,
}

impl FrameAlgebra {
    pub fn printed(params: FrameParams) -> Self {
        let FrameParams { alpha, beta, gamma, delta } = params;
        let (ra, rb, rd) = (alpha.sqrt(), beta.sqrt(), delta.sqrt());
        let mut sc = StructureConstants::zeros(6);
        // Indices 0..5 ↔ L¹..L⁶. Published table, transcribed verbatim —
        // including the [L³,L⁴] coefficient that breaks the √β pattern.
        sc.set(0, 1, 2, -rb / alpha);
        sc.set(1, 2, 0, 1.0 / (2.0 * rb));
        sc.set(2, 0, 1, 1.0 / rb);
        sc.set(0, 3, 4, -1.0 / (2.0 * ra));
        sc.set(0, 4, 3, -1.0 / (2.0 * ra));
        sc.set(1, 3, 3, -1.0 / (2.0 * ra));
        sc.set(1, 4, 4, 1.0 / (2.0 * ra));
        sc.set(2, 3, 4, -1.0 / (2.0 * ra));
        sc.set(2, 4, 3, 1.0 / (2.0 * rb));
        sc.set(3, 4, 5, 2.0 * rd / gamma);
        FrameAlgebra { params, mode: BracketMode::Printed, sc }
    }

    pub fn derived(params: FrameParams) -> Self {
        let basis = frame_basis(params);
        let mut sc = StructureConstants::zeros(6);
        for i in 0..6 {
            for j in (i + 1)..6 {
                let b = bracket(&basis[i], &basis[j]).expect("frame brackets close");
                let l = generator_to_frame(&b, params);
                for k in 0..6 {
                    if l[k] != 0.0 {
                        sc.set(i, j, k, l[k]);
                    }
                }
            }
        }
        FrameAlgebra { params, mode: BracketMode::Derived, sc }
    }

    pub fn new(params: FrameParams, mode: BracketMode) -> Self {
        match mode {
            BracketMode::Printed => Self::printed(params),
            BracketMode::Derived => Self::derived(params),
        }
    }

    /// [Lᵢ, Lⱼ] in frame coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> [f64; 6] {
        let mut out = [0.0; 6];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.sc.get(i, j, k);
        }
        out
    }

    pub fn bracket_vec(&self, x: &[f64; 6], y: &[f64; 6]) -> [f64; 6] {
        let v = self.sc.bracket_vec(x, y);
        [v[0], v[1], v[2], v[3], v[4], v[5]]
    }

    /// Lᵢ as an algebra element under the derived identification.
    pub fn frame_element(&self, i: usize) -> AlgebraElement {
        frame_basis(self.params)[i]
    }
}

/// L¹ = (F+G)/(2√α), L² = H/(2√α), L³ = (F−G)/(2√β),
/// L⁴ = P/√γ, L⁵ = Q/√γ, L⁶ = R/√δ.
pub fn frame_basis(params: FrameParams) -> [AlgebraElement; 6] {
    let FrameParams { alpha, beta, gamma, delta } = params;
    let (ra, rb, rg, rd) = (alpha.sqrt(), beta.sqrt(), gamma.sqrt(), delta.sqrt());
    [
        AlgebraElement::from_coeffs([1.0 / (2.0 * ra), 1.0 / (2.0 * ra), 0.0, 0.0, 0.0, 0.0]),
        AlgebraElement::from_coeffs([0.0, 0.0, 1.0 / (2.0 * ra), 0.0, 0.0, 0.0]),
        AlgebraElement::from_coeffs([1.0 / (2.0 * rb), -1.0 / (2.0 * rb), 0.0, 0.0, 0.0, 0.0]),
        AlgebraElement::from_coeffs([0.0, 0.0, 0.0, 1.0 / rg, 0.0, 0.0]),
        AlgebraElement::from_coeffs([0.0, 0.0, 0.0, 0.0, 1.0 / rg, 0.0]),
        AlgebraElement::from_coeffs([0.0, 0.0, 0.0, 0.0, 0.0, 1.0 / rd]),
    ]
}

/// Generator coefficients → frame coordinates (inverse of `frame_basis`).
pub fn generator_to_frame(x: &AlgebraElement, params: FrameParams) -> [f64; 6] {
    let FrameParams { alpha, beta, gamma, delta } = params;
    let [f, g, h, p, q, r] = x.coeffs;
    [
        alpha.sqrt() * (f + g),
        2.0 * alpha.sqrt() * h,
        beta.sqrt() * (f - g),
        gamma.sqrt() * p,
        gamma.sqrt() * q,
        delta.sqrt() * r,
    ]
}

/// Frame coordinates → algebra element.
pub fn frame_to_generator(l: &[f64; 6], params: FrameParams) -> AlgebraElement {
    let basis = frame_basis(params);
    let mut out = AlgebraElement::zero();
    for (c, b) in l.iter().zip(basis.iter()) {
        out = out.add(&b.scale(*c));
    }
    out
}

/// One disagreeing bracket between the printed and derived tables.
#[derive(Clone, Debug, Serialize)]
pub struct BracketDiff {
    pub i: usize,
    pub j: usize,
    pub printed: [f64; 6],
    pub derived: [f64; 6],
    pub max_abs_diff: f64,
}

#[derive(Clone, Debug)]
pub struct FrameComparison {
    pub printed: FrameAlgebra,
    pub derived: FrameAlgebra,
    pub diffs: Vec<BracketDiff>,
}

/// Builds both bracket tables and lists every (i, j) where they disagree.
pub fn frame_brackets(params: FrameParams) -> FrameComparison {
    let printed = FrameAlgebra::printed(params);
    let derived = FrameAlgebra::derived(params);
    let mut diffs = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            let p = printed.bracket_basis(i, j);
            let d = derived.bracket_basis(i, j);
            let max_abs_diff =
                p.iter().zip(d.iter()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            if max_abs_diff > SPAN_TOL {
                diffs.push(BracketDiff { i, j, printed: p, derived: d, max_abs_diff });
            }
        }
    }
    FrameComparison { printed, derived, diffs }
}

/// Vector-space decomposition by basis indices: 𝔤 = 𝔥 ⊕ 𝔪.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub h: Vec<usize>,
    pub m: Vec<usize>,
}

impl Decomposition {
    pub fn new(h: Vec<usize>, m: Vec<usize>) -> Self {
        let mut all: Vec<usize> = h.iter().chain(m.iter()).copied().collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), h.len() + m.len(), "h and m must be disjoint");
        Decomposition { h, m }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductiveReport {
    pub reductive: bool,
    /// Largest coefficient of [𝔥, 𝔪] outside span(𝔪).
    pub max_leak: f64,
    pub witness: Option<(usize, usize)>,
}

/// [𝔥, 𝔪] ⊂ 𝔪 test on basis-indexed decompositions.
pub fn check_reductive(d: &Decomposition, sc: &StructureConstants) -> ReductiveReport {
    let mut max_leak: f64 = 0.0;
    let mut witness = None;
    for &hi in &d.h {
        for &mj in &d.m {
            let mut leak: f64 = 0.0;
            for k in 0..sc.dim {
                if !d.m.contains(&k) {
                    leak = leak.max(sc.get(hi, mj, k).abs());
                }
            }
            if leak > max_leak {
                max_leak = leak;
                witness = Some((hi, mj));
            }
        }
    }
    ReductiveReport {
        reductive: max_leak <= SPAN_TOL,
        max_leak,
        witness: if max_leak > SPAN_TOL { witness } else { None },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricReport {
    pub symmetric: bool,
    pub max_leak: f64,
    /// First violating bracket: indices and where its leak lands.
    pub witness: Option<SymmetricWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricWitness {
    pub i: usize,
    pub j: usize,
    pub bracket: Vec<f64>,
    pub leak_component: usize,
}

/// All three inclusions [𝔥,𝔥]⊂𝔥, [𝔥,𝔪]⊂𝔪, [𝔪,𝔪]⊂𝔥.
pub fn check_symmetric(d: &Decomposition, sc: &StructureConstants) -> SymmetricReport {
    let mut max_leak: f64 = 0.0;
    let mut witness = None;
    let mut scan = |xs: &[usize], ys: &[usize], target: &[usize]| {
        for &i in xs {
            for &j in ys {
                for k in 0..sc.dim {
                    if !target.contains(&k) {
                        let leak = sc.get(i, j, k).abs();
                        if leak > max_leak {
                            max_leak = leak;
                            let mut b = vec![0.0; sc.dim];
                            for (kk, bv) in b.iter_mut().enumerate() {
                                *bv = sc.get(i, j, kk);
                            }
                            witness =
                                Some(SymmetricWitness { i, j, bracket: b, leak_component: k });
                        }
                    }
                }
            }
        }
    };
    scan(&d.h, &d.h, &d.h);
    scan(&d.h, &d.m, &d.m);
    scan(&d.m, &d.m, &d.h);
    SymmetricReport {
        symmetric: max_leak <= SPAN_TOL,
        max_leak,
        witness: if max_leak > SPAN_TOL { witness } else { None },
    }
}

/// Same checks for decompositions given by arbitrary elements instead of
/// basis indices (used e.g. for 𝔰𝔩(2) with 𝔥 = ⟨F−G⟩, 𝔪 = ⟨F+G, H⟩).
pub fn check_symmetric_elements(
    h: &[AlgebraElement],
    m: &[AlgebraElement],
) -> Result<SymmetricReport> {
    let mut max_leak: f64 = 0.0;
    let mut witness = None;
    let mut scan =
        |xs: &[AlgebraElement], ys: &[AlgebraElement], target: &[AlgebraElement]| -> Result<()> {
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in ys.iter().enumerate() {
                    let b = bracket(x, y)?;
                    let leak = span_distance(&b, target);
                    if leak > max_leak {
                        max_leak = leak;
                        witness = Some(SymmetricWitness {
                            i,
                            j,
                            bracket: b.coeffs.to_vec(),
                            leak_component: 0,
                        });
                    }
                }
            }
            Ok(())
        };
    scan(h, h, h)?;
    scan(h, m, m)?;
    scan(m, m, h)?;
    Ok(SymmetricReport {
        symmetric: max_leak <= SPAN_TOL,
        max_leak,
        witness: if max_leak > SPAN_TOL { witness } else { None },
    })
}

/// L2 distance from `x` to the span of `basis` (least squares via the Gram
/// matrix; the bases used here are tiny and independent).
pub fn span_distance(x: &AlgebraElement, basis: &[AlgebraElement]) -> f64 {
    if basis.is_empty() {
        return x.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    }
    let k = basis.len();
    let mut gram = SqMat::zeros(k);
    let mut rhs = vec![0.0; k];
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = dot6(&basis[i].coeffs, &basis[j].coeffs);
        }
        rhs[i] = dot6(&basis[i].coeffs, &x.coeffs);
    }
    let inv = gram.inverse_spd().expect("independent basis");
    let mut coef = vec![0.0; k];
    for i in 0..k {
        for j in 0..k {
            coef[i] += inv[(i, j)] * rhs[j];
        }
    }
    let mut resid = x.coeffs;
    for (i, b) in basis.iter().enumerate() {
        for (r, bc) in resid.iter_mut().zip(b.coeffs) {
            *r -= coef[i] * bc;
        }
    }
    resid.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn dot6(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Triples (i, j, k) violating the Jacobi identity, with their residuals.
pub fn jacobi_identity_audit(sc: &StructureConstants) -> Vec<(usize, usize, usize, f64)> {
    let d = sc.dim;
    let mut out = Vec::new();
    let basis = |i: usize| {
        let mut v = vec![0.0; d];
        v[i] = 1.0;
        v
    };
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                let ei = basis(i);
                let ej = basis(j);
                let ek = basis(k);
                let t1 = sc.bracket_vec(&sc.bracket_vec(&ei, &ej), &ek);
                let t2 = sc.bracket_vec(&sc.bracket_vec(&ej, &ek), &ei);
                let t3 = sc.bracket_vec(&sc.bracket_vec(&ek, &ei), &ej);
                let resid = (0..d).fold(0.0f64, |m, s| m.max((t1[s] + t2[s] + t3[s]).abs()));
                if resid > 1e-10 {
                    out.push((i, j, k, resid));
                }
            }
        }
    }
    out
}
