use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::GroupFunction;

/// How random disc-valued functions are drawn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscSampling {
    /// Independent uniform phases with unit modulus.
    #[default]
    Phase,
    /// Independent points uniform in the closed unit disc.
    Uniform,
}

pub fn random_disc_function<R: Rng + ?Sized>(
    n: usize,
    mode: DiscSampling,
    rng: &mut R,
) -> GroupFunction {
    let values = (0..n)
        .map(|_| {
            let theta = rng.random_range(0.0..TAU);
            let r = match mode {
                DiscSampling::Phase => 1.0,
                DiscSampling::Uniform => rng.random::<f64>().sqrt(),
            };
            Complex64::from_polar(r, theta)
        })
        .collect();
    GroupFunction::new(values)
        .require_disc()
        .expect("sampled values lie in the unit disc")
}

/// Complex Gaussian vector scaled to `||f||_2 = 1`.
pub fn random_unit_function<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GroupFunction {
    let values: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let f = GroupFunction::new(values);
    let norm = f.l2_norm();
    f.scale(Complex64::new(1.0 / norm, 0.0))
}
