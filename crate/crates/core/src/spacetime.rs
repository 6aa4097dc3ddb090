use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

pub(crate) const I: C64 = C64 { re: 0.0, im: 1.0 };

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub(crate) fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// A point of Minkowski spacetime. Massless solutions measure lengths in
/// units of the scale `a`; Dirac solutions in Compton wavelengths `1/m`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpacetimePoint {
    pub const ORIGIN: SpacetimePoint = SpacetimePoint { t: 0.0, x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn at_time(t: f64, r: [f64; 3]) -> Self {
        Self::new(t, r[0], r[1], r[2])
    }

    pub fn component(&self, mu: usize) -> f64 {
        match mu {
            0 => self.t,
            1 => self.x,
            2 => self.y,
            3 => self.z,
            _ => panic!("spacetime index {mu} out of range"),
        }
    }

    /// Copy of the point with coordinate `mu` shifted by `delta`.
    pub fn shifted(&self, mu: usize, delta: f64) -> Self {
        let mut p = *self;
        match mu {
            0 => p.t += delta,
            1 => p.x += delta,
            2 => p.y += delta,
            3 => p.z += delta,
            _ => panic!("spacetime index {mu} out of range"),
        }
        p
    }

    /// Spacetime inversion x^μ → −x^μ.
    pub fn reflected(&self) -> Self {
        Self::new(-self.t, -self.x, -self.y, -self.z)
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn r2(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}
