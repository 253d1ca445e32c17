//! The fraction field of the Laurent coefficient ring: rational functions
//! in q over the rationals, gcd-reduced. Only needed for exact linear
//! algebra (span and rank comparisons of relation sets).

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::LaurentQ;

/// Dense polynomial in q over the rationals, lowest degree first, no
/// trailing zeros.
type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Split a Laurent polynomial into (ordinary polynomial, power shift):
/// a(q) = poly(q) · q^shift.
fn to_poly(a: &LaurentQ) -> (Poly, i64) {
    if a.is_zero() {
        return (Vec::new(), 0);
    }
    let lo = a.min_exp().unwrap();
    let hi = a.max_exp().unwrap();
    let mut p = vec![BigRational::zero(); (hi - lo + 1) as usize];
    for (e, c) in a.terms() {
        p[(e - lo) as usize] = c.clone();
    }
    (p, lo)
}

fn from_poly(p: &Poly, shift: i64) -> LaurentQ {
    let mut out = LaurentQ::zero();
    for (k, c) in p.iter().enumerate() {
        if !c.is_zero() {
            out = out + LaurentQ::monomial(k as i64 + shift, c.clone());
        }
    }
    out
}

/// Euclidean remainder of a by b (b nonzero).
fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead_b = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let factor = r.last().unwrap() / &lead_b;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &factor * c;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    // monic normalization
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c = &*c / &lead;
        }
    }
    x
}

/// Exact quotient (panics if the division is not exact — callers divide by
/// a gcd, which always is).
fn poly_exact_div(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead_b = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let factor = r.last().unwrap() / &lead_b;
        let shift = dr - db;
        q[shift] = factor.clone();
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &factor * c;
        }
        r = trim(r);
    }
    assert!(r.is_empty(), "non-exact polynomial division");
    trim(q)
}

/// Rational function num/den in q, den nonzero with unit normal form:
/// den is an ordinary monic polynomial with nonzero constant term, and
/// gcd(num-part, den) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentQ,
    den: Poly, // monic, constant term nonzero
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentQ::zero(), den: vec![BigRational::one()] }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentQ::one(), den: vec![BigRational::one()] }
    }

    pub fn from_laurent(a: &LaurentQ) -> Self {
        RatFunc { num: a.clone(), den: vec![BigRational::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(num: LaurentQ, den: LaurentQ) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (np, nshift) = to_poly(&num);
        let (dp, dshift) = to_poly(&den);
        let g = poly_gcd(&np, &dp);
        let np = poly_exact_div(&np, &g);
        let mut dp = poly_exact_div(&dp, &g);
        // make denominator monic; fold the unit into the numerator
        let lead = dp.last().unwrap().clone();
        for c in &mut dp {
            *c = &*c / &lead;
        }
        let np: Poly = np.iter().map(|c| c / &lead).collect();
        // strip q-powers from the denominator (units in the Laurent ring)
        let dlow = dp.iter().position(|c| !c.is_zero()).unwrap();
        let dp: Poly = dp[dlow..].to_vec();
        let total_shift = nshift - dshift - dlow as i64;
        RatFunc { num: from_poly(&np, total_shift), den: dp }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let da = from_poly(&self.den, 0);
        let db = from_poly(&other.den, 0);
        let num = &self.num * &db + &other.num * &da;
        Self::normalize(num, &da * &db)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let da = from_poly(&self.den, 0);
        let db = from_poly(&other.den, 0);
        Self::normalize(&self.num * &other.num, &da * &db)
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by zero rational function");
        let da = from_poly(&self.den, 0);
        let db = from_poly(&other.den, 0);
        Self::normalize(&self.num * &db, &da * &other.num)
    }
}

/// Exact rank of a matrix over the fraction field by Gaussian elimination.
pub fn rank(rows: &[Vec<RatFunc>]) -> usize {
    let mut m: Vec<Vec<RatFunc>> = rows.to_vec();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..m.len()).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let inv = RatFunc::one().div(&m[row][col].clone());
        for c in col..ncols {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..ncols {
                let delta = factor.mul(&m[row][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
        row += 1;
        rank += 1;
        if row == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::from_laurent(&LaurentQ::q())
    }

    #[test]
    fn field_axioms_spot_checks() {
        let a = q().add(&RatFunc::one());
        let inv = RatFunc::one().div(&a);
        assert_eq!(a.mul(&inv), RatFunc::one());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn gcd_reduction() {
        // (q² − 1)/(q − 1) = q + 1
        let num = LaurentQ::monomial(2, BigRational::one()) - LaurentQ::one();
        let den = LaurentQ::q() - LaurentQ::one();
        let f = RatFunc::normalize(num, den);
        let expect = RatFunc::from_laurent(&(LaurentQ::q() + LaurentQ::one()));
        assert_eq!(f, expect);
    }

    #[test]
    fn laurent_denominators_are_units() {
        // 1/q is a Laurent unit, so the denominator normalizes away
        let f = RatFunc::normalize(LaurentQ::one(), LaurentQ::q());
        assert_eq!(f, RatFunc::from_laurent(&LaurentQ::q_inv()));
    }

    #[test]
    fn rank_of_simple_matrices() {
        let rows = vec![
            vec![RatFunc::one(), q()],
            vec![q(), q().mul(&q())],
            vec![RatFunc::zero(), RatFunc::one()],
        ];
        // row2 = q·row1, so rank is 2
        assert_eq!(rank(&rows), 2);
    }
}
