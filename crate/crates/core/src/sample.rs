//! Seeded sampling of deformation parameters z, staying away from the
//! poles {0} ∪ {kπi} so that every downstream formula (sinh ratios,
//! Laurent evaluation, calibration) is well-conditioned and reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Minimum allowed distance from the excluded set.
pub const POLE_MARGIN: f64 = 0.1;

/// Distance from z to {0} ∪ {kπi : k ∈ ℤ}.
pub fn pole_distance(z: Complex64) -> f64 {
    let d0 = z.norm();
    let k = (z.im / std::f64::consts::PI).round();
    let dk = Complex64::new(z.re, z.im - k * std::f64::consts::PI).norm();
    d0.min(dk)
}

/// Draw `count` parameters with |z| ≤ max_norm and pole distance ≥ 0.1,
/// deterministically from the seed.
pub fn sample_z(seed: u64, count: usize, max_norm: f64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let re = rng.gen_range(-max_norm..max_norm);
        let im = rng.gen_range(-max_norm..max_norm);
        let z = Complex64::new(re, im);
        if z.norm() <= max_norm && pole_distance(z) >= POLE_MARGIN {
            out.push(z);
        }
    }
    out
}
