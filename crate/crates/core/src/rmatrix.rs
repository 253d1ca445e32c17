//! R-matrices over the exact coefficient ring, with the Kronecker index
//! convention (α,ι) ↦ (α−1)·n + ι. Includes the standard SL_N family,
//! exact QYBE verification on the triple tensor power, the inverse law
//! R(q)·R(q⁻¹) = 1 and numerical evaluation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cmatrix::CMatrix;
use crate::scalar::{check_eval_point, LaurentQ, ScalarError};

#[derive(Debug, Error, PartialEq)]
pub enum RMatrixError {
    #[error("standard SL_N R-matrix requires N >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// n²×n² matrix over LaurentQ acting on the tensor square of an
/// n-dimensional space. Entry ((a,i),(b,k)) is the coefficient of
/// t_a^b ⊗ t_i^k in the defining sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    entries: Vec<LaurentQ>,
}

impl RMatrix {
    pub fn zeros(n: usize) -> Self {
        RMatrix { n, entries: vec![LaurentQ::zero(); n * n * n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::zeros(n);
        for i in 0..n * n {
            r.set_flat(i, i, LaurentQ::one());
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    /// Flatten a 1-based index pair (α,ι) per the Kronecker convention.
    pub fn flat(&self, alpha: usize, iota: usize) -> usize {
        debug_assert!(1 <= alpha && alpha <= self.n && 1 <= iota && iota <= self.n);
        (alpha - 1) * self.n + (iota - 1)
    }

    pub fn get_flat(&self, row: usize, col: usize) -> &LaurentQ {
        &self.entries[row * self.dim() + col]
    }

    pub fn set_flat(&mut self, row: usize, col: usize, value: LaurentQ) {
        let d = self.dim();
        self.entries[row * d + col] = value;
    }

    /// Entry by 1-based index pairs: row (α,ι), column (β,κ).
    pub fn get(&self, (alpha, iota): (usize, usize), (beta, kappa): (usize, usize)) -> &LaurentQ {
        self.get_flat(self.flat(alpha, iota), self.flat(beta, kappa))
    }

    pub fn set(
        &mut self,
        (alpha, iota): (usize, usize),
        (beta, kappa): (usize, usize),
        value: LaurentQ,
    ) {
        let (r, c) = (self.flat(alpha, iota), self.flat(beta, kappa));
        self.set_flat(r, c, value);
    }

    /// Apply the involution q ↦ q⁻¹ entrywise.
    pub fn bar(&self) -> RMatrix {
        RMatrix { n: self.n, entries: self.entries.iter().map(|e| e.bar()).collect() }
    }

    pub fn matmul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.n, other.n);
        let d = self.dim();
        let mut out = Self::zeros(self.n);
        for i in 0..d {
            for k in 0..d {
                let a = self.get_flat(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get_flat(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let cur = out.get_flat(i, j) + &prod;
                    out.set_flat(i, j, cur);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let e = self.get_flat(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            })
        })
    }

    /// Entrywise evaluation at a nonzero complex point.
    pub fn eval(&self, z: Complex64) -> Result<CMatrix, RMatrixError> {
        check_eval_point(z)?;
        let d = self.dim();
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] = self.get_flat(i, j).eval(z)?;
            }
        }
        Ok(out)
    }
}

/// The standard SL_N R-matrix
/// R = q·Σᵢ tᵢⁱ⊗tᵢⁱ + Σ_{i≠j} tᵢⁱ⊗tⱼʲ + (q−q⁻¹)·Σ_{i>j} tᵢʲ⊗tⱼⁱ,
/// where a term t_a^b⊗t_c^d occupies row (a,c), column (b,d).
pub fn standard_sln_rmatrix(n: usize) -> Result<RMatrix, RMatrixError> {
    if n < 2 {
        return Err(RMatrixError::DimensionTooSmall(n));
    }
    let mut r = RMatrix::zeros(n);
    for i in 1..=n {
        r.set((i, i), (i, i), LaurentQ::q());
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                r.set((i, j), (i, j), LaurentQ::one());
            }
        }
    }
    for i in 1..=n {
        for j in 1..i {
            r.set((i, j), (j, i), LaurentQ::q_minus_q_inv());
        }
    }
    Ok(r)
}

/// Outcome of an exact QYBE check; on failure `witness` names the first
/// disagreeing entry of the two triple products.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QybeReport {
    pub holds: bool,
    pub witness: Option<QybeWitness>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QybeWitness {
    pub row: usize,
    pub col: usize,
    pub lhs: LaurentQ,
    pub rhs: LaurentQ,
}

/// Embed a two-leg operator into legs (p,q) of the n³-dimensional triple
/// tensor power, exactly over LaurentQ.
pub fn embed_legs(r: &RMatrix, p: usize, q: usize) -> Vec<Vec<LaurentQ>> {
    assert!(p < q && (1..=3).contains(&p) && (1..=3).contains(&q));
    let n = r.n();
    let n3 = n * n * n;
    let mut out = vec![vec![LaurentQ::zero(); n3]; n3];
    let legs = [p - 1, q - 1];
    let passive = (0..3).find(|l| !legs.contains(l)).unwrap();
    let idx3 = |a: usize, b: usize, c: usize| a * n * n + b * n + c;
    for r1 in 0..n {
        for r2 in 0..n {
            for c1 in 0..n {
                for c2 in 0..n {
                    let v = r.get_flat(r1 * n + r2, c1 * n + c2);
                    if v.is_zero() {
                        continue;
                    }
                    for s in 0..n {
                        let mut row = [0usize; 3];
                        let mut col = [0usize; 3];
                        row[legs[0]] = r1;
                        row[legs[1]] = r2;
                        row[passive] = s;
                        col[legs[0]] = c1;
                        col[legs[1]] = c2;
                        col[passive] = s;
                        out[idx3(row[0], row[1], row[2])][idx3(col[0], col[1], col[2])] = v.clone();
                    }
                }
            }
        }
    }
    out
}

fn big_matmul(a: &[Vec<LaurentQ>], b: &[Vec<LaurentQ>]) -> Vec<Vec<LaurentQ>> {
    let n = a.len();
    let mut out = vec![vec![LaurentQ::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i][k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k][j];
                if y.is_zero() {
                    continue;
                }
                let prod = x * y;
                out[i][j] += &prod;
            }
        }
    }
    out
}

/// Exact check of R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂ over LaurentQ.
pub fn qybe_check(r: &RMatrix) -> QybeReport {
    let r12 = embed_legs(r, 1, 2);
    let r13 = embed_legs(r, 1, 3);
    let r23 = embed_legs(r, 2, 3);
    let lhs = big_matmul(&big_matmul(&r12, &r13), &r23);
    let rhs = big_matmul(&big_matmul(&r23, &r13), &r12);
    let n3 = lhs.len();
    for i in 0..n3 {
        for j in 0..n3 {
            if lhs[i][j] != rhs[i][j] {
                return QybeReport {
                    holds: false,
                    witness: Some(QybeWitness {
                        row: i,
                        col: j,
                        lhs: lhs[i][j].clone(),
                        rhs: rhs[i][j].clone(),
                    }),
                };
            }
        }
    }
    QybeReport { holds: true, witness: None }
}

/// Numeric QYBE residual at a concrete point: max-abs entry difference of
/// the two triple products of the evaluated matrix.
pub fn qybe_residual_at(r: &RMatrix, z: Complex64) -> Result<f64, RMatrixError> {
    let rc = r.eval(z)?;
    let n = r.n();
    let r12 = rc.embed_pair_into_three(n, 1, 2);
    let r13 = rc.embed_pair_into_three(n, 1, 3);
    let r23 = rc.embed_pair_into_three(n, 2, 3);
    let lhs = r12.matmul(&r13).matmul(&r23);
    let rhs = r23.matmul(&r13).matmul(&r12);
    Ok(lhs.distance(&rhs))
}

/// Exact check of the inverse law: R(q) · R(q⁻¹) = identity, with the
/// substitution applied entrywise. For the standard SL_N matrix this holds
/// on the nose (verified by the tests below).
pub fn inverse_law_check(r: &RMatrix) -> bool {
    r.matmul(&r.bar()).is_identity()
}

/// Sparse triplet JSON form: {"n": N, "entries": [[row, col, LaurentQ], …]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RMatrixJson {
    pub n: usize,
    pub entries: Vec<(usize, usize, LaurentQ)>,
}

impl RMatrix {
    pub fn to_json(&self) -> RMatrixJson {
        let d = self.dim();
        let mut entries = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let e = self.get_flat(i, j);
                if !e.is_zero() {
                    entries.push((i, j, e.clone()));
                }
            }
        }
        RMatrixJson { n: self.n, entries }
    }

    pub fn from_json(json: &RMatrixJson) -> RMatrix {
        let mut r = RMatrix::zeros(json.n);
        for (i, j, e) in &json.entries {
            r.set_flat(*i, *j, e.clone());
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn n2_matrix_matches_term_by_term_expansion() {
        // oracle: expand the defining sum for N=2 by hand
        let r = standard_sln_rmatrix(2).unwrap();
        let q = LaurentQ::q();
        let one = LaurentQ::one();
        let d = LaurentQ::q_minus_q_inv();
        let zero = LaurentQ::zero();
        let expect = [
            [q.clone(), zero.clone(), zero.clone(), zero.clone()],
            [zero.clone(), one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), d.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), zero.clone(), q.clone()],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(r.get_flat(i, j), &expect[i][j], "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn n3_entry_census() {
        let r = standard_sln_rmatrix(3).unwrap();
        let mut diag_q = 0;
        let mut diag_one = 0;
        let mut off_deform = 0;
        for i in 0..9 {
            for j in 0..9 {
                let e = r.get_flat(i, j);
                if e.is_zero() {
                    continue;
                }
                if i == j {
                    if e == &LaurentQ::q() {
                        diag_q += 1;
                    } else if e.is_one() {
                        diag_one += 1;
                    } else {
                        panic!("unexpected diagonal entry {e}");
                    }
                } else {
                    assert_eq!(e, &LaurentQ::q_minus_q_inv());
                    off_deform += 1;
                }
            }
        }
        assert_eq!((diag_q, diag_one, off_deform), (3, 6, 3));
    }

    #[test]
    fn evaluation_at_one_is_identity() {
        for n in 2..=4 {
            let r = standard_sln_rmatrix(n).unwrap();
            let m = r.eval(Complex64::new(1.0, 0.0)).unwrap();
            assert!(m.distance(&CMatrix::identity(n * n)) < 1e-14, "N={n}");
        }
    }

    #[test]
    fn rejects_n_below_two() {
        assert!(standard_sln_rmatrix(1).is_err());
    }

    #[test]
    fn qybe_holds_symbolically() {
        for n in 2..=3 {
            assert!(qybe_check(&standard_sln_rmatrix(n).unwrap()).holds, "N={n}");
        }
        assert!(qybe_check(&RMatrix::identity(2)).holds);
    }

    #[test]
    fn qybe_mutation_detected() {
        let mut r = standard_sln_rmatrix(2).unwrap();
        r.set((1, 1), (1, 1), LaurentQ::monomial(2, num_rational::BigRational::from_integer(1.into())));
        let report = qybe_check(&r);
        assert!(!report.holds);
        assert!(report.witness.is_some());
    }

    #[test]
    fn inverse_law_holds_exactly() {
        // R(q)·R(q⁻¹) = 1 on the nose for the standard family
        assert!(inverse_law_check(&standard_sln_rmatrix(2).unwrap()));
        assert!(inverse_law_check(&standard_sln_rmatrix(3).unwrap()));
        assert!(inverse_law_check(&RMatrix::identity(3)));
    }

    #[test]
    fn eval_of_deformation_coefficient() {
        let d = LaurentQ::q_minus_q_inv();
        let at_i = d.eval(Complex64::new(0.0, 1.0)).unwrap();
        assert!((at_i - Complex64::new(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn eval_commutes_with_product() {
        let r = standard_sln_rmatrix(2).unwrap();
        let z = Complex64::new(0.8, 0.45);
        let sym = r.matmul(&r.bar());
        let num = r.eval(z).unwrap().matmul(&r.bar().eval(z).unwrap());
        assert!(sym.eval(z).unwrap().distance(&num) < 1e-10);
    }

    #[test]
    fn json_round_trip() {
        let r = standard_sln_rmatrix(2).unwrap();
        let json = serde_json::to_string(&r.to_json()).unwrap();
        let parsed: RMatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(RMatrix::from_json(&parsed), r);
    }
}
