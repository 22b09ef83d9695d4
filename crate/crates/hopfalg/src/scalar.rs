//! Exact coefficient arithmetic for the deformed sphere.
//!
//! Every coefficient that occurs in the constructions handled by this crate
//! is a Gaussian rational times integer powers of the two formal phase units
//! `u = e^{pi i theta}` and `w = e^{pi i theta y}`. A [`Scalar`] is a Laurent
//! polynomial in `u` and `w` over `Q(i)`, kept in canonical form (no zero
//! coefficients). The deformation parameter stays generic: identities are
//! verified identically in `u`, never at numeric values of `theta`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `Q(i)`: `re + i*im` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { re: big(n), im: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugation; an involution.
    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse. `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussianRational { re: &self.re / &norm, im: -(&self.im / &norm) })
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            if self.im == -BigRational::one() {
                return write!(f, "-i");
            }
            return write!(f, "{}*i", fmt_rational(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let abs_im = self.im.abs();
        if abs_im.is_one() {
            write!(f, "({}{}i)", fmt_rational(&self.re), sign)
        } else {
            write!(f, "({}{}{}*i)", fmt_rational(&self.re), sign, fmt_rational(&abs_im))
        }
    }
}

/// Which specialization homomorphism to apply to a [`Scalar`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Specialize {
    /// `u -> 1`: the classical limit `theta = 0`.
    UToOne,
    /// `w -> 1`: endpoint evaluation at `y = 0`.
    WToOne,
    /// `w -> u`: endpoint evaluation at `y = 1`.
    WToU,
}

/// Laurent polynomial in the phase units `u` and `w` over `Q(i)`.
///
/// The term `(j, k) -> q` denotes `q * u^j * w^k`. No stored coefficient is
/// zero. The empty map is zero; a single `(0,0)` term embeds `Q(i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    terms: BTreeMap<(i64, i64), GaussianRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Scalar::from_gaussian(GaussianRational::one())
    }

    pub fn from_gaussian(q: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert((0, 0), q);
        }
        Scalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gaussian(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_gaussian(GaussianRational::from_ratio(num, den))
    }

    /// The unit `u^j`.
    pub fn u_pow(j: i64) -> Self {
        Scalar::term(GaussianRational::one(), j, 0)
    }

    /// The unit `w^k`.
    pub fn w_pow(k: i64) -> Self {
        Scalar::term(GaussianRational::one(), 0, k)
    }

    /// The single term `q * u^j * w^k`.
    pub fn term(q: GaussianRational, j: i64, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert((j, k), q);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&(0, 0)).map(|q| *q == GaussianRational::one()).unwrap_or(false)
    }

    /// True when no `w` unit occurs. Elements outside the homotopy family
    /// must satisfy this.
    pub fn is_w_free(&self) -> bool {
        self.terms.keys().all(|&(_, k)| k == 0)
    }

    /// True when the scalar lies in `Q(i)` (no phase units at all).
    pub fn is_phase_free(&self) -> bool {
        self.terms.keys().all(|&(j, k)| j == 0 && k == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &GaussianRational)> {
        self.terms.iter()
    }

    fn insert_term(terms: &mut BTreeMap<(i64, i64), GaussianRational>, key: (i64, i64), q: GaussianRational) {
        if q.is_zero() {
            return;
        }
        match terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &q;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// The scalar involution: `(q u^j w^k)* = conj(q) u^{-j} w^{-k}`.
    pub fn involute(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(j, k), q) in &self.terms {
            terms.insert((-j, -k), q.conj());
        }
        Scalar { terms }
    }

    /// Evaluation homomorphism on the phase units.
    pub fn specialize(&self, target: Specialize) -> Self {
        let mut terms = BTreeMap::new();
        for (&(j, k), q) in &self.terms {
            let key = match target {
                Specialize::UToOne => (0, k),
                Specialize::WToOne => (j, 0),
                Specialize::WToU => (j + k, 0),
            };
            Self::insert_term(&mut terms, key, q.clone());
        }
        Scalar { terms }
    }

    /// Multiplicative inverse, defined only for single-term scalars
    /// (units of the Laurent ring). Sufficient for the normal-form engine:
    /// all relation generators have unit leading coefficients.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(j, k), q) = self.terms.iter().next().unwrap();
        q.inverse().map(|qi| Scalar::term(qi, -j, -k))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (&key, q) in &rhs.terms {
            Scalar::insert_term(&mut terms, key, q.clone());
        }
        Scalar { terms }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut terms = BTreeMap::new();
        for (&(j1, k1), q1) in &self.terms {
            for (&(j2, k2), q2) in &rhs.terms {
                Scalar::insert_term(&mut terms, (j1 + j2, k1 + k2), q1 * q2);
            }
        }
        Scalar { terms }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self.terms.iter().map(|(&key, q)| (key, -q)).collect();
        Scalar { terms }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(j, k), q) in &self.terms {
            let mut parts: Vec<String> = Vec::new();
            let coeff = format!("{q}");
            if coeff != "1" || (j == 0 && k == 0) {
                parts.push(coeff);
            }
            if j != 0 {
                parts.push(if j == 1 { "u".into() } else { format!("u^{j}") });
            }
            if k != 0 {
                parts.push(if k == 1 { "w".into() } else { format!("w^{k}") });
            }
            let term = parts.join("*");
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl Scalar {
    /// JSON form: list of `{re, im, ju, kw}` records with rationals as
    /// `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(j, k), q)| {
                serde_json::json!({
                    "re": fmt_rational(&q.re),
                    "im": fmt_rational(&q.im),
                    "ju": j,
                    "kw": k,
                })
            })
            .collect();
        serde_json::Value::Array(records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_times_inverse_is_one() {
        let u = Scalar::u_pow(1);
        let ui = Scalar::u_pow(-1);
        assert!((&u * &ui).is_one());
    }

    #[test]
    fn u_squared_is_q() {
        let u = Scalar::u_pow(1);
        assert_eq!(&u * &u, Scalar::u_pow(2));
    }

    #[test]
    fn additive_inverse_cancels() {
        let u = Scalar::u_pow(1);
        let m = Scalar::term(GaussianRational::from_int(-1), 1, 0);
        assert!((&u + &m).is_zero());
    }

    #[test]
    fn involute_definition() {
        let x = Scalar::term(GaussianRational::i(), 3, 0);
        let expected = Scalar::term(-&GaussianRational::i(), -3, 0);
        assert_eq!(x.involute(), expected);
    }

    #[test]
    fn involute_symmetric_element() {
        let x = &Scalar::u_pow(1) + &Scalar::u_pow(-1);
        assert_eq!(x.involute(), x);
    }

    #[test]
    fn specialize_examples() {
        assert!(Scalar::u_pow(3).specialize(Specialize::UToOne).is_one());
        assert_eq!(Scalar::w_pow(2).specialize(Specialize::WToU), Scalar::u_pow(2));
        assert!(Scalar::w_pow(2).specialize(Specialize::WToOne).is_one());
    }
}
