//! Counter-based Gaussian random streams.
//!
//! Every draw is a pure function of `(seed, stream, counter)`, so independent
//! streams can be created per trial without sharing state across threads.

use super::linalg::Vector;
use crate::error::{Error, Result};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a list of integers into one stream id.
pub fn stream_id(parts: &[u64]) -> u64 {
    parts.iter().fold(0x5EED_0F57_AE57_u64, |h, &p| mix64(h ^ mix64(p.wrapping_add(GOLDEN))))
}

#[derive(Debug, Clone)]
pub struct RngStream {
    key: u64,
    salt: u64,
    counter: u64,
    spare: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let key = mix64(seed.wrapping_mul(GOLDEN) ^ 0xD1B5_4A32_D192_ED03);
        let salt = mix64(stream ^ mix64(key));
        Self { key, salt, counter: 0, spare: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        let c = self.counter;
        self.counter = self.counter.wrapping_add(1);
        mix64(mix64(self.key.wrapping_add(c.wrapping_mul(GOLDEN))) ^ self.salt)
    }

    /// Uniform on the open interval (0, 1).
    pub fn next_uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.next_uniform();
        let u2 = self.next_uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }

    /// Uniform random sign.
    pub fn next_sign(&mut self) -> f64 {
        if self.next_u64() >> 63 == 0 { 1.0 } else { -1.0 }
    }
}

/// Vector of `d` i.i.d. standard normals.
pub fn gaussian_vector(rng: &mut RngStream, d: usize) -> Result<Vector> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    Ok(Vector::from_fn(d, |_| rng.next_gaussian()))
}
