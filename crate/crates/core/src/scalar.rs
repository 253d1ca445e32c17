//! Exact coefficient arithmetic: Laurent polynomials in the deformation
//! parameter `q` over arbitrary-precision rationals, with evaluation at
//! nonzero complex points and the involution `q ↦ q⁻¹`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("evaluation point must be nonzero")]
    ZeroEvalPoint,
    #[error("evaluation point must be finite")]
    NonFiniteEvalPoint,
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}

/// Laurent polynomial in `q` with exact rational coefficients.
///
/// Canonical form: the term map never stores a zero coefficient, so two
/// values are equal iff their maps are identical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentQ {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    /// The generator `q`.
    pub fn q() -> Self {
        Self::monomial(1, BigRational::one())
    }

    /// `q⁻¹`.
    pub fn q_inv() -> Self {
        Self::monomial(-1, BigRational::one())
    }

    /// `q − q⁻¹`, the ubiquitous deformation coefficient.
    pub fn q_minus_q_inv() -> Self {
        Self::q() - Self::q_inv()
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentQ { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(n)))
    }

    /// `(−q)^k` for any integer `k` (used by quantum determinants and
    /// cofactors).
    pub fn neg_q_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { BigRational::one() } else { -BigRational::one() };
        Self::monomial(k, sign)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The substitution `q ↦ q⁻¹`; an exact ring involution.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        LaurentQ { terms }
    }

    /// Evaluate at a nonzero complex point by Σ cₖ·zᵏ.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, ScalarError> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(ScalarError::NonFiniteEvalPoint);
        }
        if z.norm() == 0.0 {
            return Err(ScalarError::ZeroEvalPoint);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (exp, coeff) in &self.terms {
            let c = coeff.to_f64().expect("rational representable as f64");
            acc += c * z.powi(*exp as i32);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, k)| (*e, k * c)).collect();
        LaurentQ { terms }
    }

    /// Multiplicative inverse, defined when `self` is a single term.
    pub fn invert_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (exp, coeff) = self.terms.iter().next().unwrap();
        Some(Self::monomial(-exp, coeff.recip()))
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        LaurentQ { terms }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentQ {
            type Output = LaurentQ;
            fn $method(self, rhs: LaurentQ) -> LaurentQ {
                $trait::$method(&self, &rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

impl AddAssign<&LaurentQ> for LaurentQ {
    fn add_assign(&mut self, rhs: &LaurentQ) {
        for (e, c) in &rhs.terms {
            self.insert_term(*e, c.clone());
        }
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coeff) in &self.terms {
            let sign = if coeff.is_negative() { "-" } else { "+" };
            let abs = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match (*exp, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", abs)?,
                (e, true) => write!(f, "q^{}", e)?,
                (e, false) => write!(f, "{}*q^{}", abs, e)?,
            }
        }
        Ok(())
    }
}

// JSON form: object mapping exponent strings to rational strings,
// e.g. {"-1": "-1/1", "1": "1/1"} for q − q⁻¹.
impl Serialize for LaurentQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(e, c)| (e.to_string(), format!("{}/{}", c.numer(), c.denom())))
            .collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let map: BTreeMap<String, String> = BTreeMap::deserialize(deserializer)?;
        let mut out = LaurentQ::zero();
        for (e, c) in map {
            let exp: i64 = e.parse().map_err(|_| D::Error::custom(format!("bad exponent `{e}`")))?;
            let coeff = parse_rational(&c).map_err(D::Error::custom)?;
            out.insert_term(exp, coeff);
        }
        Ok(out)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let mk_err = || ScalarError::BadRational(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let numer: BigInt = n.trim().parse().map_err(|_| mk_err())?;
            let denom: BigInt = d.trim().parse().map_err(|_| mk_err())?;
            if denom.is_zero() {
                return Err(mk_err());
            }
            Ok(BigRational::new(numer, denom))
        }
        None => {
            let numer: BigInt = s.trim().parse().map_err(|_| mk_err())?;
            Ok(BigRational::from_integer(numer))
        }
    }
}

/// Validate a complex parameter value: finite and nonzero.
pub fn check_eval_point(z: Complex64) -> Result<(), ScalarError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(ScalarError::NonFiniteEvalPoint);
    }
    if z.norm() == 0.0 {
        return Err(ScalarError::ZeroEvalPoint);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_times_q_inv_is_one() {
        assert!((LaurentQ::q() * LaurentQ::q_inv()).is_one());
    }

    #[test]
    fn q_minus_q_is_zero() {
        assert!((LaurentQ::q() - LaurentQ::q()).is_zero());
    }

    #[test]
    fn difference_times_sum() {
        // (q − q⁻¹)(q + q⁻¹) = q² − q⁻²
        let prod = LaurentQ::q_minus_q_inv() * (LaurentQ::q() + LaurentQ::q_inv());
        let expected = LaurentQ::monomial(2, BigRational::one())
            - LaurentQ::monomial(-2, BigRational::one());
        assert_eq!(prod, expected);
    }

    #[test]
    fn bar_examples() {
        assert_eq!(LaurentQ::q().bar(), LaurentQ::q_inv());
        assert_eq!(LaurentQ::q_minus_q_inv().bar(), -LaurentQ::q_minus_q_inv());
        let a = LaurentQ::from_int(3) + LaurentQ::monomial(2, BigRational::from_integer(2.into()));
        let b = LaurentQ::from_int(3) + LaurentQ::monomial(-2, BigRational::from_integer(2.into()));
        assert_eq!(a.bar(), b);
        assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn eval_examples() {
        let d = LaurentQ::q_minus_q_inv();
        let at1 = d.eval(Complex64::new(1.0, 0.0)).unwrap();
        assert!(at1.norm() < 1e-15);
        let at2 = d.eval(Complex64::new(2.0, 0.0)).unwrap();
        assert!((at2 - Complex64::new(1.5, 0.0)).norm() < 1e-15);
        assert!((LaurentQ::q().eval(Complex64::new(2.0, 0.0)).unwrap()
            - Complex64::new(2.0, 0.0))
        .norm()
            < 1e-15);
    }

    #[test]
    fn eval_rejects_zero() {
        assert_eq!(
            LaurentQ::q_inv().eval(Complex64::new(0.0, 0.0)),
            Err(ScalarError::ZeroEvalPoint)
        );
    }

    #[test]
    fn bar_is_ring_hom() {
        let a = LaurentQ::q_minus_q_inv() + LaurentQ::from_int(2);
        let b = LaurentQ::monomial(3, BigRational::new(1.into(), 2.into())) - LaurentQ::one();
        assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn json_round_trip() {
        let a = LaurentQ::q_minus_q_inv();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"-1":"-1/1","1":"1/1"}"#);
        let back: LaurentQ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
