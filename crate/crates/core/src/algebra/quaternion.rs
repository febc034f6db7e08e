use core::ops::{Add, Mul, Neg, Sub};

use crate::C64;

/// A real quaternion `w + x i + y j + z k`.
///
/// Real and complex entries are quaternions with vanishing imaginary parts,
/// which keeps entry access uniform across the three matrix algebras.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_complex(c: C64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// The first `beta` real coordinates (w, x, y, z order).
    pub fn coords(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_coords(c: &[f64]) -> Self {
        let at = |i: usize| c.get(i).copied().unwrap_or(0.0);
        Quaternion::new(at(0), at(1), at(2), at(3))
    }

    /// Split as `u + v j` with complex `u = w + x i`, `v = y + z i`.
    pub(crate) fn split(self) -> (C64, C64) {
        (C64::new(self.w, self.x), C64::new(self.y, self.z))
    }

    /// The 2 x 2 complex block `[[u, v], [-conj(v), conj(u)]]`.
    pub(crate) fn block(self) -> [[C64; 2]; 2] {
        let (u, v) = self.split();
        [[u, v], [-v.conj(), u.conj()]]
    }

    pub(crate) fn from_block(b: [[C64; 2]; 2]) -> Self {
        // Average the redundant entries so small asymmetries cancel.
        let u = (b[0][0] + b[1][1].conj()) * 0.5;
        let v = (b[0][1] - b[1][0].conj()) * 0.5;
        Quaternion::new(u.re, u.im, v.re, v.im)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}
