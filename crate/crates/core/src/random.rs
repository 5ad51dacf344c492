//! Seeded random streams.
//!
//! Every generator in the crate draws from a ChaCha8 stream keyed by
//! `(seed, stream)`, so results are reproducible across platforms and
//! independent purposes (truth, noise, masks) never share state.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub const STREAM_TRUTH: u64 = 0;
pub const STREAM_NOISE: u64 = 1;
pub const STREAM_MASK: u64 = 2;

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn standard_normal<R: rand::Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Circularly symmetric complex normal with unit variance (E|z|^2 = 1).
pub fn complex_normal<R: rand::Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    Complex64::new(standard_normal(rng) * scale, standard_normal(rng) * scale)
}

pub fn unit_phasor<R: rand::Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(1.0, theta)
}
