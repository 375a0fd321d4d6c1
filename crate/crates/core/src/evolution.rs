//! Time evolution of a qubit under an affine generator.
//!
//! Two routes are provided. [`euler_step`] / [`euler_trajectory`] advance a
//! Bloch vector by `r ↦ r + (M r + b) dt`, which is what one run of a
//! programmable processor does when its program encodes `dt`.
//! [`exact_channel`] exponentiates the generator to get the semigroup
//! element `exp(L t)` as an affine map.

use nalgebra::Matrix4;

use crate::error::{Error, Result};
use crate::generator::AffineGenerator;
use crate::linalg::{BlochVector, Mat3, Vec3};
use crate::tolerance::Tolerances;

/// An affine map of Bloch space, `r ↦ m r + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineChannel {
    pub m: Mat3,
    pub b: Vec3,
}

impl AffineChannel {
    pub fn identity() -> Self {
        Self { m: Mat3::identity(), b: Vec3::zeros() }
    }

    pub fn apply(&self, r: &Vec3) -> Vec3 {
        self.m * r + self.b
    }

    pub fn max_abs_diff(&self, other: &AffineChannel) -> f64 {
        (self.m - other.m).amax().max((self.b - other.b).amax())
    }

    /// Largest image norm over `samples` points of the unit sphere (a
    /// Fibonacci lattice). The image of the ball is an ellipsoid, so its
    /// extreme norm is attained on the sphere.
    pub fn max_image_norm(&self, samples: usize) -> f64 {
        let n = samples.max(2);
        let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
        (0..n)
            .map(|k| {
                let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                let rho = (1.0 - z * z).sqrt();
                let (s, c) = (golden * k as f64).sin_cos();
                self.apply(&Vec3::new(rho * c, rho * s, z)).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Sampled check that the unit ball maps into itself within `slack`.
    pub fn is_physical(&self, samples: usize, slack: f64) -> bool {
        self.max_image_norm(samples) <= 1.0 + slack
    }
}

/// Sampled Bloch-vector trajectory. `times[k] = k · step`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    step: f64,
    times: Vec<f64>,
    states: Vec<BlochVector>,
}

impl Trajectory {
    /// Validates equal lengths and monotone times (strictly increasing
    /// whenever `step > 0`; a zero step labels an identity program).
    pub fn new(step: f64, times: Vec<f64>, states: Vec<BlochVector>) -> Result<Self> {
        if times.len() != states.len() || times.is_empty() {
            return Err(Error::usage("trajectory needs matching, nonempty time and state lists"));
        }
        if !(step >= 0.0 && step.is_finite()) {
            return Err(Error::usage(format!("trajectory step {step} must be finite and non-negative")));
        }
        let ordered = times.windows(2).all(|w| if step > 0.0 { w[1] > w[0] } else { w[1] >= w[0] });
        if !ordered {
            return Err(Error::usage("trajectory times are not increasing"));
        }
        Ok(Self { step, times, states })
    }

    /// Builds the trajectory `r_{k+1} = f(k + 1, r_k)` sampled at `k · step`.
    pub fn iterate(
        step: f64,
        r0: BlochVector,
        steps: usize,
        mut f: impl FnMut(usize, &BlochVector) -> Result<BlochVector>,
    ) -> Result<Self> {
        let mut states = Vec::with_capacity(steps + 1);
        states.push(r0);
        for k in 1..=steps {
            let next = f(k, &states[k - 1])?;
            states.push(next);
        }
        let times = (0..=steps).map(|k| k as f64 * step).collect();
        Self::new(step, times, states)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[BlochVector] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &BlochVector {
        self.states.last().expect("nonempty by construction")
    }
}

fn check_dt(dt: f64) -> Result<()> {
    if !(dt > 0.0 && dt <= 1.0) {
        return Err(Error::usage(format!("dt = {dt} must lie in (0, 1]")));
    }
    Ok(())
}

fn euler_step_indexed(g: &AffineGenerator, r: &BlochVector, dt: f64, index: usize) -> Result<BlochVector> {
    let v = r.vector();
    let next = v + g.apply(v) * dt;
    let norm = next.norm();
    if norm > 1.0 + Tolerances::DEFAULT.bloch_radius || !norm.is_finite() {
        return Err(Error::StepTooLarge { step: index, norm, dt });
    }
    BlochVector::from_vec3(next)
}

/// `r + (M r + b) dt`. Fails rather than clipping when the result leaves the ball.
pub fn euler_step(g: &AffineGenerator, r: &BlochVector, dt: f64) -> Result<BlochVector> {
    check_dt(dt)?;
    euler_step_indexed(g, r, dt, 1)
}

/// `steps` Euler steps from `r0`; samples at `0, dt, …, steps·dt`.
pub fn euler_trajectory(g: &AffineGenerator, r0: BlochVector, dt: f64, steps: usize) -> Result<Trajectory> {
    check_dt(dt)?;
    if steps == 0 {
        return Err(Error::usage("trajectory needs at least one step"));
    }
    Trajectory::iterate(dt, r0, steps, |k, r| euler_step_indexed(g, r, dt, k))
}

/// `exp(A)` of a real 4×4 matrix (Padé approximant with scaling and squaring).
pub fn expm(a: &Matrix4<f64>) -> Matrix4<f64> {
    a.exp()
}

/// The semigroup element `exp(L t)` in affine form, via the homogeneous
/// embedding `[[M, b], [0, 0]]`.
pub fn exact_channel(g: &AffineGenerator, t: f64) -> Result<AffineChannel> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::usage(format!("evolution time {t} must be finite and non-negative")));
    }
    if t == 0.0 {
        return Ok(AffineChannel::identity());
    }
    let mut h = Matrix4::zeros();
    h.fixed_view_mut::<3, 3>(0, 0).copy_from(&(g.m * t));
    h.fixed_view_mut::<3, 1>(0, 3).copy_from(&(g.b * t));
    let e = expm(&h);
    Ok(AffineChannel {
        m: e.fixed_view::<3, 3>(0, 0).into_owned(),
        b: e.fixed_view::<3, 1>(0, 3).into_owned(),
    })
}

/// `a ∘ b`: apply `b` first.
pub fn compose_channels(a: &AffineChannel, b: &AffineChannel) -> AffineChannel {
    AffineChannel { m: a.m * b.m, b: a.m * b.b + a.b }
}

/// Forward-difference generator estimate `((M_t − 1)/t, b_t/t)`; error is O(t).
pub fn estimate_generator(ch: &AffineChannel, t: f64) -> Result<AffineGenerator> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::usage(format!("estimation time {t} must be positive")));
    }
    let delta = ch.m - Mat3::identity();
    if delta.norm() >= 1.0 {
        return Err(Error::usage(format!(
            "channel is too far from the identity (‖M − 1‖_F = {:.3}) for a first-order estimate",
            delta.norm()
        )));
    }
    AffineGenerator::new(delta / t, ch.b / t)
}
