//! Sampled timelike worldlines with linear or cubic interpolation.
//!
//! A worldline is a mass plus an ordered list of `(t, position)` samples.
//! Validation enforces strictly increasing times and subluminal segment
//! velocities; interpolation provides positions and velocities between
//! samples. Worldlines load from and save to a small JSON format
//! (documented in `docs/schemas`), with parse errors reported with line and
//! column positions.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::WorldlineError;
use crate::spinor::SpacetimePoint;

/// One worldline sample: a coordinate time in seconds and a spatial
/// position in meters (or consistent natural units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorldlineSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl WorldlineSample {
    pub fn position(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Interpolation scheme between samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpolation {
    #[default]
    Linear,
    Cubic,
}

/// Serialized form of a worldline file.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct WorldlineFile {
    mass: f64,
    #[serde(default)]
    interpolation: Interpolation,
    samples: Vec<WorldlineSample>,
}

/// A validated, immutable sampled worldline.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeWorldline {
    mass: f64,
    interpolation: Interpolation,
    samples: Vec<WorldlineSample>,
}

impl SpacetimeWorldline {
    /// Validate and construct. The speed of light fixes the subluminal
    /// check; pass 1 for natural-unit data.
    pub fn new(
        mass: f64,
        samples: Vec<WorldlineSample>,
        interpolation: Interpolation,
        c_light: f64,
    ) -> Result<Self, WorldlineError> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(WorldlineError::BadMass(mass));
        }
        if samples.len() < 2 {
            return Err(WorldlineError::TooFewSamples {
                needed: 2,
                got: samples.len(),
            });
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.t.is_finite() && s.x.is_finite() && s.y.is_finite() && s.z.is_finite()) {
                return Err(WorldlineError::NonFiniteSample { index: i });
            }
        }
        for i in 1..samples.len() {
            if samples[i].t <= samples[i - 1].t {
                return Err(WorldlineError::NonMonotonicTime {
                    index: i,
                    t: samples[i].t,
                });
            }
            let dt = samples[i].t - samples[i - 1].t;
            let dx = samples[i].x - samples[i - 1].x;
            let dy = samples[i].y - samples[i - 1].y;
            let dz = samples[i].z - samples[i - 1].z;
            let speed = (dx * dx + dy * dy + dz * dz).sqrt() / dt;
            if speed >= c_light {
                return Err(WorldlineError::Superluminal {
                    index: i,
                    speed,
                    c: c_light,
                });
            }
        }
        Ok(SpacetimeWorldline {
            mass,
            interpolation,
            samples,
        })
    }

    /// Static worldline at a fixed position, sampled `n >= 2` times.
    pub fn static_line(
        mass: f64,
        position: [f64; 3],
        t0: f64,
        t1: f64,
        n: usize,
    ) -> Result<Self, WorldlineError> {
        Self::sampled_from_fn(mass, |_| position, t0, t1, n, f64::INFINITY)
    }

    /// Sample a position function uniformly on `[t0, t1]`.
    pub fn sampled_from_fn(
        mass: f64,
        position: impl Fn(f64) -> [f64; 3],
        t0: f64,
        t1: f64,
        n: usize,
        c_light: f64,
    ) -> Result<Self, WorldlineError> {
        let n = n.max(2);
        let mut samples = Vec::with_capacity(n);
        for k in 0..n {
            let t = t0 + (t1 - t0) * (k as f64) / ((n - 1) as f64);
            let [x, y, z] = position(t);
            samples.push(WorldlineSample { t, x, y, z });
        }
        Self::new(mass, samples, Interpolation::Linear, c_light)
    }

    /// Re-tag the interpolation scheme (samples unchanged).
    pub fn with_interpolation(mut self, interpolation: Interpolation) -> Self {
        self.interpolation = interpolation;
        self
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    pub fn samples(&self) -> &[WorldlineSample] {
        &self.samples
    }

    /// Time span covered by the samples.
    pub fn window(&self) -> (f64, f64) {
        (self.samples[0].t, self.samples[self.samples.len() - 1].t)
    }

    /// Sample times lying strictly inside `(a, b)`, used as quadrature
    /// breakpoints.
    pub fn breakpoints_within(&self, a: f64, b: f64) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| s.t)
            .filter(|&t| t > a && t < b)
            .collect()
    }

    fn segment_index(&self, t: f64) -> usize {
        let s = &self.samples;
        if t <= s[0].t {
            return 0;
        }
        if t >= s[s.len() - 1].t {
            return s.len() - 2;
        }
        match s.binary_search_by(|probe| probe.t.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(s.len() - 2),
            Err(i) => i - 1,
        }
    }

    /// Hermite tangent (velocity estimate) at a sample index, using
    /// weighted one-sided differences on non-uniform grids.
    fn tangent(&self, i: usize) -> [f64; 3] {
        let s = &self.samples;
        let n = s.len();
        let diff = |a: usize, b: usize| -> ([f64; 3], f64) {
            let dt = s[b].t - s[a].t;
            (
                [
                    (s[b].x - s[a].x) / dt,
                    (s[b].y - s[a].y) / dt,
                    (s[b].z - s[a].z) / dt,
                ],
                dt,
            )
        };
        if i == 0 {
            diff(0, 1).0
        } else if i == n - 1 {
            diff(n - 2, n - 1).0
        } else {
            let (dl, hl) = diff(i - 1, i);
            let (dr, hr) = diff(i, i + 1);
            let mut out = [0.0; 3];
            for k in 0..3 {
                out[k] = (dl[k] * hr + dr[k] * hl) / (hl + hr);
            }
            out
        }
    }

    /// Interpolated position at `t`, clamped to the sample window.
    pub fn position(&self, t: f64) -> [f64; 3] {
        let s = &self.samples;
        let (w0, w1) = self.window();
        let t = t.clamp(w0, w1);
        let i = self.segment_index(t);
        let (a, b) = (&s[i], &s[i + 1]);
        let h = b.t - a.t;
        let u = (t - a.t) / h;
        match self.interpolation {
            Interpolation::Linear => {
                let mut out = [0.0; 3];
                let pa = a.position();
                let pb = b.position();
                for k in 0..3 {
                    out[k] = pa[k] * (1.0 - u) + pb[k] * u;
                }
                out
            }
            Interpolation::Cubic => {
                let pa = a.position();
                let pb = b.position();
                let ma = self.tangent(i);
                let mb = self.tangent(i + 1);
                let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
                let h10 = u * (1.0 - u) * (1.0 - u);
                let h01 = u * u * (3.0 - 2.0 * u);
                let h11 = u * u * (u - 1.0);
                let mut out = [0.0; 3];
                for k in 0..3 {
                    out[k] = h00 * pa[k] + h * h10 * ma[k] + h01 * pb[k] + h * h11 * mb[k];
                }
                out
            }
        }
    }

    /// Interpolated velocity at `t` (the derivative of the interpolant;
    /// piecewise constant for linear interpolation).
    pub fn velocity(&self, t: f64) -> [f64; 3] {
        let s = &self.samples;
        let (w0, w1) = self.window();
        let t = t.clamp(w0, w1);
        let i = self.segment_index(t);
        let (a, b) = (&s[i], &s[i + 1]);
        let h = b.t - a.t;
        match self.interpolation {
            Interpolation::Linear => {
                let pa = a.position();
                let pb = b.position();
                let mut out = [0.0; 3];
                for k in 0..3 {
                    out[k] = (pb[k] - pa[k]) / h;
                }
                out
            }
            Interpolation::Cubic => {
                let u = (t - a.t) / h;
                let pa = a.position();
                let pb = b.position();
                let ma = self.tangent(i);
                let mb = self.tangent(i + 1);
                let dh00 = 6.0 * u * u - 6.0 * u;
                let dh10 = 3.0 * u * u - 4.0 * u + 1.0;
                let dh01 = -6.0 * u * u + 6.0 * u;
                let dh11 = 3.0 * u * u - 2.0 * u;
                let mut out = [0.0; 3];
                for k in 0..3 {
                    out[k] = (dh00 * pa[k] + h * dh10 * ma[k] + dh01 * pb[k] + h * dh11 * mb[k]) / h;
                }
                out
            }
        }
    }

    /// Lorentz factor inverse `sqrt(1 - v^2/c^2)` at `t`.
    pub fn gamma_inv(&self, t: f64, c_light: f64) -> f64 {
        let v = self.velocity(t);
        let beta2 = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) / (c_light * c_light);
        (1.0 - beta2).max(0.0).sqrt()
    }

    /// The spacetime event at coordinate time `t`, in SI unit mode.
    pub fn event(&self, t: f64) -> SpacetimePoint {
        let [x, y, z] = self.position(t);
        SpacetimePoint::si(t, x, y, z)
    }

    /// Cumulative proper time at each sample, starting from zero, via
    /// trapezoidal integration of `1/gamma`.
    pub fn proper_times(&self, c_light: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.samples.len());
        let mut tau = 0.0;
        out.push(0.0);
        for i in 1..self.samples.len() {
            let t0 = self.samples[i - 1].t;
            let t1 = self.samples[i].t;
            let g0 = self.gamma_inv(t0 + (t1 - t0) * 1e-9, c_light);
            let g1 = self.gamma_inv(t1 - (t1 - t0) * 1e-9, c_light);
            tau += (t1 - t0) * 0.5 * (g0 + g1);
            out.push(tau);
        }
        out
    }

    /// Shift all sample times by a constant.
    pub fn time_shifted(&self, dt: f64) -> Self {
        let samples = self
            .samples
            .iter()
            .map(|s| WorldlineSample {
                t: s.t + dt,
                x: s.x,
                y: s.y,
                z: s.z,
            })
            .collect();
        SpacetimeWorldline {
            mass: self.mass,
            interpolation: self.interpolation,
            samples,
        }
    }

    /// Load from the JSON worldline format, reporting schema violations
    /// with line and column positions.
    pub fn from_json_file(path: &Path, c_light: f64) -> Result<Self, WorldlineError> {
        let text = fs::read_to_string(path).map_err(|source| WorldlineError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text, &path.display().to_string(), c_light)
    }

    /// Parse the JSON worldline format from a string; `origin` labels error
    /// messages.
    pub fn from_json_str(
        text: &str,
        origin: &str,
        c_light: f64,
    ) -> Result<Self, WorldlineError> {
        let file: WorldlineFile =
            serde_json::from_str(text).map_err(|e| WorldlineError::Schema {
                path: origin.to_string(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        Self::new(file.mass, file.samples, file.interpolation, c_light)
    }

    /// Serialize to the JSON worldline format.
    pub fn to_json_string(&self) -> String {
        let file = WorldlineFile {
            mass: self.mass,
            interpolation: self.interpolation,
            samples: self.samples.clone(),
        };
        serde_json::to_string_pretty(&file).expect("worldline serialization cannot fail")
    }
}

/// Intersection of two worldline time windows, if nonempty.
pub fn common_window(a: &SpacetimeWorldline, b: &SpacetimeWorldline) -> Option<(f64, f64)> {
    let (a0, a1) = a.window();
    let (b0, b1) = b.window();
    let lo = a0.max(b0);
    let hi = a1.min(b1);
    (hi > lo).then_some((lo, hi))
}
