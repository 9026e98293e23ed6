//! Band storage and LU factorization without pivoting.
//!
//! The five-point systems assembled by the solver are (weakly, irreducibly)
//! row diagonally dominant, so elimination in natural order is stable and
//! produces no fill outside the band.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.ku, "({i}, {j}) outside band");
        i * self.width + (j + self.kl - i)
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j + self.kl < i || j > i + self.ku {
            0.0
        } else {
            self.data[self.slot(i, j)]
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku + 1).min(self.n);
                (lo..hi).map(|j| self.data[self.slot(i, j)] * x[j]).sum()
            })
            .collect()
    }

    pub fn factor(mut self) -> Result<BandedLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tiny = scale * f64::EPSILON * 1e-3;
        for k in 0..n {
            let pivot = self.data[self.slot(k, k)];
            if !(pivot.abs() > tiny) {
                return Err(Error::SingularSystem { row: k });
            }
            let row_end = (k + ku + 1).min(n);
            for i in (k + 1)..(k + kl + 1).min(n) {
                let sik = self.slot(i, k);
                let l = self.data[sik] / pivot;
                if l == 0.0 {
                    continue;
                }
                self.data[sik] = l;
                for j in (k + 1)..row_end {
                    let skj = self.slot(k, j);
                    let sij = self.slot(i, j);
                    self.data[sij] -= l * self.data[skj];
                }
            }
        }
        Ok(BandedLu { band: self })
    }
}

/// `L U` factors stored in place of the band (unit lower diagonal implied).
#[derive(Debug, Clone)]
pub struct BandedLu {
    band: BandMatrix,
}

impl BandedLu {
    pub fn dim(&self) -> usize {
        self.band.n
    }

    pub fn solve_in_place(&self, b: &mut [f64]) {
        let a = &self.band;
        let n = a.n;
        assert_eq!(b.len(), n);
        for i in 0..n {
            let lo = i.saturating_sub(a.kl);
            let mut s = b[i];
            for (j, bj) in b.iter().enumerate().take(i).skip(lo) {
                s -= a.data[a.slot(i, j)] * bj;
            }
            b[i] = s;
        }
        for i in (0..n).rev() {
            let hi = (i + a.ku + 1).min(n);
            let mut s = b[i];
            for (j, bj) in b.iter().enumerate().take(hi).skip(i + 1) {
                s -= a.data[a.slot(i, j)] * bj;
            }
            b[i] = s / a.data[a.slot(i, i)];
        }
    }
}
