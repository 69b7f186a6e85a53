//! Frozen coupling samples used by the verification suite.

use std::f64::consts::PI;

use boundstate_core::{Couplings, Momentum};

/// `(γ, λ, μ)` with the component `G_{αβ}` of `(λ, μ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub gamma: f64,
    pub lambda: f64,
    pub mu: f64,
    pub class: (usize, usize),
}

impl Sample {
    pub const fn new(gamma: f64, lambda: f64, mu: f64, class: (usize, usize)) -> Self {
        Self { gamma, lambda, mu, class }
    }

    pub fn couplings(&self) -> Couplings {
        Couplings::new(self.gamma, self.lambda, self.mu).expect("finite sample")
    }
}

/// Oracle/determinant comparison set: every bound state at the three
/// momenta of [`oracle_momenta`] lies at least 0.1 from the band.
pub const ORACLE_SAMPLES: [Sample; 15] = [
    Sample::new(0.0, 0.0, 0.0, (0, 0)),
    Sample::new(0.0, 4.0, -3.0, (0, 0)),
    Sample::new(-2.0, 3.0, 3.0, (0, 0)),
    Sample::new(2.0, -3.0, -3.0, (0, 0)),
    Sample::new(-2.0, 0.0, 10.0, (0, 1)),
    Sample::new(2.0, 0.0, 10.0, (0, 1)),
    Sample::new(0.0, 5.0, 10.0, (0, 1)),
    Sample::new(-2.0, -20.0, 0.0, (1, 0)),
    Sample::new(2.0, -20.0, 0.0, (1, 0)),
    Sample::new(0.0, 20.0, -20.0, (1, 1)),
    Sample::new(2.0, 15.0, -15.0, (1, 1)),
    Sample::new(0.0, 20.0, 8.0, (0, 2)),
    Sample::new(-2.0, 15.0, 10.0, (0, 2)),
    Sample::new(0.0, -20.0, -8.0, (2, 0)),
    Sample::new(2.0, -15.0, -10.0, (2, 0)),
];

/// One point in each nonempty component `G_{αβ}`.
pub const CLASS_SAMPLES: [Sample; 6] = [
    Sample::new(0.0, 0.0, 0.0, (0, 0)),
    Sample::new(0.0, 0.0, 10.0, (0, 1)),
    Sample::new(0.0, -20.0, 0.0, (1, 0)),
    Sample::new(0.0, 20.0, -20.0, (1, 1)),
    Sample::new(0.0, 20.0, 8.0, (0, 2)),
    Sample::new(0.0, -20.0, -8.0, (2, 0)),
];

pub fn oracle_momenta() -> [Momentum; 3] {
    [Momentum::new(0.0, 0.0), Momentum::new(PI / 2.0, 0.0), Momentum::new(PI, PI / 2.0)]
}

/// Uniform `n × n` grid `{−π + 2πj/n}²`, row-major in `(K1, K2)`.
pub fn momentum_grid(n: usize) -> Vec<Momentum> {
    let angle = |j: usize| -PI + 2.0 * PI * j as f64 / n as f64;
    (0..n).flat_map(|i| (0..n).map(move |j| Momentum::new(angle(i), angle(j)))).collect()
}
