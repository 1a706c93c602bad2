//! Seeded random sampling of group elements and chart points. Everything is
//! driven by an explicit RNG so reports are bit-reproducible.

use crate::group::{from_iwasawa, GroupElement, IwasawaCoords};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Well-conditioned random SL(2,ℝ) matrix built from Iwasawa data.
pub fn random_sl2(rng: &mut impl Rng) -> crate::group::Sl2Element {
    let iw = IwasawaCoords {
        x: rng.gen_range(-2.0..2.0),
        y: rng.gen_range(0.3..3.0),
        theta: rng.gen_range(-PI..PI),
    };
    from_iwasawa(&iw).expect("sampled Iwasawa data is valid")
}

pub fn random_group_element(rng: &mut impl Rng) -> GroupElement {
    GroupElement::new(
        random_sl2(rng),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

/// Element of the reduced group (κ = 0), as acts on the 4-dimensional space.
pub fn random_reduced_element(rng: &mut impl Rng) -> GroupElement {
    GroupElement::new(
        random_sl2(rng),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        0.0,
    )
}

/// Interior point of the upper half-plane factor: x ∈ (−2,2), y ∈ (0.3,3).
pub fn random_xy(rng: &mut impl Rng) -> (f64, f64) {
    (rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0))
}

/// (x, y, p, q) sample.
pub fn random_xypq(rng: &mut impl Rng) -> [f64; 4] {
    let (x, y) = random_xy(rng);
    [x, y, rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]
}

/// (x, y, p, q, κ) sample.
pub fn random_xypqk(rng: &mut impl Rng) -> [f64; 5] {
    let [x, y, p, q] = random_xypq(rng);
    [x, y, p, q, rng.gen_range(-2.0..2.0)]
}

/// (x, y, θ, p, q, κ) sample.
pub fn random_s_coords(rng: &mut impl Rng) -> [f64; 6] {
    let [x, y, p, q] = random_xypq(rng);
    [x, y, rng.gen_range(-PI..PI), p, q, rng.gen_range(-2.0..2.0)]
}

/// Disk point: w strictly inside the unit disk, z moderate.
pub fn random_disk(rng: &mut impl Rng) -> (crate::numerics::C64, crate::numerics::C64) {
    use crate::numerics::Complex;
    let r = rng.gen_range(0.0..0.85);
    let phi = rng.gen_range(-PI..PI);
    let w = Complex::new(r * phi.cos(), r * phi.sin());
    let z = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    (w, z)
}

/// Upper half-plane point (v, u) with Im v ∈ (0.3, 3).
pub fn random_uhp(rng: &mut impl Rng) -> (crate::numerics::C64, crate::numerics::C64) {
    use crate::numerics::Complex;
    let v = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0));
    let u = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    (v, u)
}
