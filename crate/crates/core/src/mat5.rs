//! Plain complex 5x5 and 4x4 matrices. Only the handful of operations the
//! quadric geometry needs; no general linear algebra.

use crate::proj::C64;

pub type Vec5 = [C64; 5];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat5(pub [[C64; 5]; 5]);

impl Mat5 {
    pub fn zero() -> Self {
        Mat5([[C64::new(0.0, 0.0); 5]; 5])
    }

    pub fn identity() -> Self {
        let mut m = Mat5::zero();
        for i in 0..5 {
            m.0[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(d: [C64; 5]) -> Self {
        let mut m = Mat5::zero();
        for (i, z) in d.into_iter().enumerate() {
            m.0[i][i] = z;
        }
        m
    }

    pub fn apply(&self, v: &Vec5) -> Vec5 {
        let mut out = [C64::new(0.0, 0.0); 5];
        for (i, row) in self.0.iter().enumerate() {
            let mut s = C64::new(0.0, 0.0);
            for j in 0..5 {
                s += row[j] * v[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut m = Mat5::zero();
        for i in 0..5 {
            for j in 0..5 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z *= s;
            }
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn flatten(&self) -> [C64; 25] {
        let mut out = [C64::new(0.0, 0.0); 25];
        for i in 0..5 {
            for j in 0..5 {
                out[5 * i + j] = self.0[i][j];
            }
        }
        out
    }
}

impl std::ops::Mul for Mat5 {
    type Output = Mat5;
    fn mul(self, rhs: Mat5) -> Mat5 {
        let mut out = Mat5::zero();
        for i in 0..5 {
            for k in 0..5 {
                let a = self.0[i][k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..5 {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[C64::new(0.0, 0.0); 4]; 4])
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [C64::new(0.0, 0.0); 4];
        for (i, row) in self.0.iter().enumerate() {
            let mut s = C64::new(0.0, 0.0);
            for j in 0..4 {
                s += row[j] * v[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn flatten(&self) -> [C64; 16] {
        let mut out = [C64::new(0.0, 0.0); 16];
        for i in 0..4 {
            for j in 0..4 {
                out[4 * i + j] = self.0[i][j];
            }
        }
        out
    }
}

impl std::ops::Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                for j in 0..4 {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}
