//! Elements of `A (x) A` in canonical paired-monomial form.
//!
//! Tensors house the universal 1-forms (the kernel of multiplication),
//! strong-connection values, and Galois-map inputs. Equality is decided
//! leg-wise on the canonical basis; the quotient `A (x)_B A` is never
//! materialized — statements about it are phrased through the Galois map.

use crate::algebra::{AlgebraElement, Monomial, Poly, Product};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Linear combination of `m (x) m'` with both legs reduced.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (Monomial, Monomial), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Leg-wise normal form of a raw pairing: both legs are expanded by the
    /// sphere rewrite and the products of the expansions are collected.
    pub fn from_raw_pair(left: &Poly, right: &Poly) -> Self {
        let l = AlgebraElement::from_poly(left.clone());
        let r = AlgebraElement::from_poly(right.clone());
        Self::simple(&l, &r)
    }

    /// `left (x) right` for canonical legs.
    pub fn simple(left: &AlgebraElement, right: &AlgebraElement) -> Self {
        let mut out = TensorElement::zero();
        for (ml, cl) in left.terms() {
            for (mr, cr) in right.terms() {
                out.add_term((*ml, *mr), cl * cr);
            }
        }
        out
    }

    pub fn one_one() -> Self {
        Self::simple(&AlgebraElement::one(), &AlgebraElement::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(*key, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TensorElement { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TensorElement::zero();
        }
        let mut out = TensorElement::zero();
        for (key, q) in &self.terms {
            out.add_term(*key, q * c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    /// Factor-wise product `(a (x) a')(b (x) b') = (a b) (x) (a' b')`,
    /// with the flagged product applied in each leg.
    pub fn mul_factorwise(&self, other: &Self, prod: Product) -> Self {
        let mut out = TensorElement::zero();
        for (&(l1, r1), c1) in &self.terms {
            let le = AlgebraElement::from_monomial(l1);
            let re = AlgebraElement::from_monomial(r1);
            for (&(l2, r2), c2) in &other.terms {
                let l = le.product(&AlgebraElement::from_monomial(l2), prod);
                let r = re.product(&AlgebraElement::from_monomial(r2), prod);
                let piece = Self::simple(&l, &r).scale(&(c1 * c2));
                out = out.add(&piece);
            }
        }
        out
    }

    /// Multiply every left leg by `a` on the left and every right leg by
    /// `b` on the right, with the flagged product. This is the shape of each
    /// step of the strong-connection recursion.
    pub fn sandwich(&self, a: &AlgebraElement, b: &AlgebraElement, prod: Product) -> Self {
        let mut out = TensorElement::zero();
        for (&(l, r), c) in &self.terms {
            let new_l = a.product(&AlgebraElement::from_monomial(l), prod);
            let new_r = AlgebraElement::from_monomial(r).product(b, prod);
            let piece = Self::simple(&new_l, &new_r).scale(c);
            out = out.add(&piece);
        }
        out
    }

    /// Collapse the tensor with the flagged product: `mu(a (x) a') = a a'`.
    pub fn mu(&self, prod: Product) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (&(l, r), c) in &self.terms {
            let p = AlgebraElement::from_monomial(l)
                .product(&AlgebraElement::from_monomial(r), prod)
                .scale(c);
            out = out.add(&p);
        }
        out
    }

    /// Universal differential `d_u(a) = 1 (x) a - a (x) 1`.
    pub fn universal_d(a: &AlgebraElement) -> Self {
        let one = AlgebraElement::one();
        Self::simple(&one, a).sub(&Self::simple(a, &one))
    }

    /// The associated left coaction on the left legs, grouped by the circle
    /// degree of the left-leg monomials: a term of left degree `h`
    /// contributes under `delta_S` a factor `t^{-h}`.
    pub fn delta_s_groups(&self) -> Vec<(i64, TensorElement)> {
        let mut buckets: BTreeMap<i64, TensorElement> = BTreeMap::new();
        for (&(l, r), c) in &self.terms {
            buckets.entry(-l.hdeg()).or_default().add_term((l, r), c.clone());
        }
        buckets.into_iter().collect()
    }

    pub fn is_w_free(&self) -> bool {
        self.terms.values().all(|c| c.is_w_free())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(l, r), c)| {
                serde_json::json!({
                    "left": [l.e[0], l.e[1], l.e[2], l.e[3]],
                    "right": [r.e[0], r.e[1], r.e[2], r.e[3]],
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(l, r), c) in &self.terms {
            let cs = format!("{c}");
            let pair = format!("{l} (x) {r}");
            let body = if cs == "1" {
                pair
            } else if cs == "-1" {
                format!("-{pair}")
            } else if cs.contains('+') || cs.contains(" - ") {
                format!("({cs})*{pair}")
            } else {
                format!("{cs}*{pair}")
            };
            if first {
                write!(f, "{body}")?;
                first = false;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_d_in_kernel() {
        let d = TensorElement::universal_d(&AlgebraElement::z1());
        assert!(d.mu(Product::Mul).is_zero());
    }

    #[test]
    fn mu_of_connection_shape() {
        // z1* (x) z1 + z2* (x) z2 collapses to 1.
        let t = TensorElement::simple(&AlgebraElement::z1s(), &AlgebraElement::z1())
            .add(&TensorElement::simple(&AlgebraElement::z2s(), &AlgebraElement::z2()));
        assert!(t.mu(Product::Mul).is_one());
        assert!(t.mu(Product::Star).is_one());
    }

    #[test]
    fn legwise_reduction() {
        // (z1 z1*) (x) 1 normalizes to (1 - z2 z2*) (x) 1.
        let raw = Poly::term(Monomial::new(1, 0, 1, 0), Scalar::one());
        let t = TensorElement::from_raw_pair(&raw, &Poly::term(Monomial::ONE, Scalar::one()));
        let mut expected = TensorElement::zero();
        expected.add_term((Monomial::ONE, Monomial::ONE), Scalar::one());
        expected.add_term((Monomial::new(0, 1, 0, 1), Monomial::ONE), Scalar::from_int(-1));
        assert_eq!(t, expected);
    }
}
