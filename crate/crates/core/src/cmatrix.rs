//! Dense complex matrices used for numerical evaluation at concrete
//! parameter values: Kronecker products, leg embeddings, inverses and
//! matrix exponentials at the small dimensions this kernel needs.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CMatrixError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix is singular or badly conditioned (pivot {0:e})")]
    Singular(f64),
    #[error("non-finite entry")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Matrix unit E_{ij} (1 at row i, column j; 0-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| e.re.is_finite() && e.im.is_finite())
    }

    pub fn diagonal_entries(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| i == j || self[(i, j)].norm() <= tol))
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        CMatrix { dim: self.dim, entries }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        CMatrix { dim: self.dim, entries }
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        CMatrix { dim: self.dim, entries }
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// Kronecker product with the (M⊙N)_{αι,βκ} = M_{αβ}·N_{ικ} index
    /// convention: row (α,ι) flattens to α·dim(N) + ι.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for a in 0..n {
            for b in 0..n {
                let coeff = self[(a, b)];
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                for i in 0..m {
                    for k in 0..m {
                        out[(a * m + i, b * m + k)] = coeff * other[(i, k)];
                    }
                }
            }
        }
        out
    }

    /// Embed a d²-dimensional two-leg operator into legs (p, q) of a d³
    /// space (legs numbered 1..3, p < q).
    pub fn embed_pair_into_three(&self, leg_dim: usize, p: usize, q: usize) -> CMatrix {
        assert_eq!(self.dim, leg_dim * leg_dim);
        assert!(p < q && (1..=3).contains(&p) && (1..=3).contains(&q));
        let d = leg_dim;
        let n3 = d * d * d;
        let mut out = CMatrix::zeros(n3);
        let legs = [p - 1, q - 1];
        let passive = (0..3).find(|l| !legs.contains(l)).unwrap();
        let idx3 = |a: usize, b: usize, c: usize| a * d * d + b * d + c;
        for r1 in 0..d {
            for r2 in 0..d {
                for c1 in 0..d {
                    for c2 in 0..d {
                        let v = self[(r1 * d + r2, c1 * d + c2)];
                        if v.norm_sqr() == 0.0 {
                            continue;
                        }
                        for s in 0..d {
                            let mut row = [0usize; 3];
                            let mut col = [0usize; 3];
                            row[legs[0]] = r1;
                            row[legs[1]] = r2;
                            row[passive] = s;
                            col[legs[0]] = c1;
                            col[legs[1]] = c2;
                            col[passive] = s;
                            out[(idx3(row[0], row[1], row[2]), idx3(col[0], col[1], col[2]))] = v;
                        }
                    }
                }
            }
        }
        out
    }

    /// The flip permutation matrix P on a d⊗d space: P(x⊗y) = y⊗x.
    pub fn flip(leg_dim: usize) -> CMatrix {
        let d = leg_dim;
        let mut p = CMatrix::zeros(d * d);
        for i in 0..d {
            for j in 0..d {
                p[(i * d + j, j * d + i)] = Complex64::new(1.0, 0.0);
            }
        }
        p
    }

    /// Conjugation by the flip: M ↦ P·M·P, i.e. the "21" version of a
    /// two-leg operator.
    pub fn swap_legs(&self, leg_dim: usize) -> CMatrix {
        let p = Self::flip(leg_dim);
        p.matmul(self).matmul(&p)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Max-abs norm of the difference.
    pub fn distance(&self, other: &CMatrix) -> f64 {
        self.sub(other).max_abs()
    }

    /// Inverse by Gaussian elimination with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix, CMatrixError> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        for col in 0..n {
            let (pivot_row, pivot_norm) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pivot_norm < 1e-300 {
                return Err(CMatrixError::Singular(pivot_norm));
            }
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a[(col, j)];
                    a[(col, j)] = a[(pivot_row, j)];
                    a[(pivot_row, j)] = tmp;
                    let tmp = inv[(col, j)];
                    inv[(col, j)] = inv[(pivot_row, j)];
                    inv[(pivot_row, j)] = tmp;
                }
            }
            let pivot = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= pivot;
                inv[(col, j)] /= pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let s = a[(col, j)];
                    a[(r, j)] -= f * s;
                    let s = inv[(col, j)];
                    inv[(r, j)] -= f * s;
                }
            }
        }
        if !inv.is_finite() {
            return Err(CMatrixError::NonFinite);
        }
        Ok(inv)
    }

    /// Condition-number estimate in the max-abs norm.
    pub fn condition_estimate(&self) -> Result<f64, CMatrixError> {
        let inv = self.inverse()?;
        Ok(self.max_abs() * inv.max_abs() * self.dim as f64)
    }

    /// Matrix exponential by scaling and squaring with a Taylor core.
    pub fn exp(&self) -> CMatrix {
        let norm = self.max_abs() * self.dim as f64;
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
        let scaled = self.scale(Complex64::new(1.0 / (1u64 << squarings) as f64, 0.0));
        let mut result = CMatrix::identity(self.dim);
        let mut term = CMatrix::identity(self.dim);
        for k in 1..=30 {
            term = term.matmul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
            result = result.add(&term);
            if term.max_abs() < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.matmul(&result);
        }
        result
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_round_trip() {
        let m = CMatrix::from_fn(3, |i, j| c((i * 3 + j + 1) as f64, if i == j { 1.0 } else { 0.0 }));
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).distance(&CMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn singular_rejected() {
        let m = CMatrix::zeros(2);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn exp_of_diagonal() {
        let m = CMatrix::diagonal(&[c(1.0, 0.0), c(-2.0, 0.5)]);
        let e = m.exp();
        assert!((e[(0, 0)] - c(1.0, 0.0).exp()).norm() < 1e-12);
        assert!((e[(1, 1)] - c(-2.0, 0.5).exp()).norm() < 1e-12);
        assert!(e[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn exp_of_nilpotent() {
        // exp(E12) = I + E12
        let m = CMatrix::unit(2, 0, 1);
        let e = m.exp();
        assert!(e.distance(&CMatrix::identity(2).add(&m)) < 1e-14);
    }

    #[test]
    fn kron_convention() {
        // (M⊙N)_{αι,βκ} = M_{αβ} N_{ικ}
        let m = CMatrix::from_fn(2, |i, j| c((10 * i + j) as f64, 0.0));
        let n = CMatrix::from_fn(2, |i, j| c((100 * i + j) as f64, 0.0));
        let k = m.kron(&n);
        assert_eq!(k[(1 * 2 + 0, 0 * 2 + 1)], m[(1, 0)] * n[(0, 1)]);
    }

    #[test]
    fn flip_involution() {
        let m = CMatrix::from_fn(4, |i, j| c((i + 2 * j) as f64, j as f64));
        assert!(m.swap_legs(2).swap_legs(2).distance(&m) < 1e-14);
    }

    #[test]
    fn leg_embedding_consistency() {
        // embedding into legs (1,2) equals kron with identity on leg 3
        let m = CMatrix::from_fn(4, |i, j| c((i * 4 + j) as f64, 0.0));
        let e12 = m.embed_pair_into_three(2, 1, 2);
        let expect = m.kron(&CMatrix::identity(2));
        assert!(e12.distance(&expect) < 1e-14);
        let e23 = m.embed_pair_into_three(2, 2, 3);
        let expect = CMatrix::identity(2).kron(&m);
        assert!(e23.distance(&expect) < 1e-14);
    }
}
