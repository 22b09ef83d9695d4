//! Strong connections, the canonical Galois map and its inverse, and the
//! principal-comodule-algebra structure of both fibrations.
//!
//! The strong connection is the iterated sandwich
//! `l(t^n) = z1* l(t^{n-1}) z1 + z2* l(t^{n-1}) z2` (mirrored for `n < 0`),
//! with the flagged product. Its value is kept as the literal `2^|n|`-pair
//! expansion, never collected across branches, so the idempotent
//! construction downstream is deterministic. Canonicalization happens only
//! inside each leg.

use crate::algebra::{cocycle_sigma, AlgebraElement, HopfElement, Product};
use crate::error::{Error, Result};
use crate::tensor::TensorElement;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

/// The value of the strong connection on `t^n`, as an ordered list of
/// `(left leg, right leg)` pairs. Every left leg is homogeneous of circle
/// degree `-n` and every right leg of degree `+n`.
#[derive(Clone, Debug)]
pub struct StrongConnection {
    pub n: i64,
    pub product: Product,
    pub pairs: Vec<(AlgebraElement, AlgebraElement)>,
}

impl StrongConnection {
    /// Collect the pairs into a tensor.
    pub fn to_tensor(&self) -> TensorElement {
        let mut out = TensorElement::zero();
        for (l, r) in &self.pairs {
            out = out.add(&TensorElement::simple(l, r));
        }
        out
    }
}

static CONNECTION_CACHE: Mutex<Option<HashMap<(i64, Product), StrongConnection>>> =
    Mutex::new(None);

/// The strong connection `l(t^n)` under the flagged product, memoized.
pub fn strong_connection(n: i64, prod: Product) -> StrongConnection {
    {
        let cache = CONNECTION_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(v) = map.get(&(n, prod)) {
                return v.clone();
            }
        }
    }
    let value = if n == 0 {
        StrongConnection {
            n: 0,
            product: prod,
            pairs: vec![(AlgebraElement::one(), AlgebraElement::one())],
        }
    } else {
        let prev = strong_connection(n - n.signum(), prod);
        let (firsts, seconds) = if n > 0 {
            (
                [AlgebraElement::z1s(), AlgebraElement::z2s()],
                [AlgebraElement::z1(), AlgebraElement::z2()],
            )
        } else {
            (
                [AlgebraElement::z1(), AlgebraElement::z2()],
                [AlgebraElement::z1s(), AlgebraElement::z2s()],
            )
        };
        let mut pairs = Vec::with_capacity(prev.pairs.len() * 2);
        for k in 0..2 {
            for (l, r) in &prev.pairs {
                pairs.push((firsts[k].product(l, prod), r.product(&seconds[k], prod)));
            }
        }
        StrongConnection { n, product: prod, pairs }
    };
    let mut cache = CONNECTION_CACHE.lock().unwrap();
    cache.get_or_insert_with(HashMap::new).insert((n, prod), value.clone());
    value
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    pub residual: Option<String>,
}

/// Report for the four strong-connection axioms. A failure never panics;
/// it signals an implementation bug or a deliberately tampered value.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectionReport {
    pub n: i64,
    pub deformed: String,
    pub axioms: Vec<AxiomCheck>,
}

impl ConnectionReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }
}

/// Verify the four axioms: normalization, splitting, right colinearity and
/// left colinearity. Both coactions are diagonal on the monomial basis, so
/// the colinearity axioms are equivalent to per-leg homogeneity.
pub fn verify_strong_connection(conn: &StrongConnection) -> ConnectionReport {
    let mut axioms = Vec::new();

    // (a) normalization: only constrains n = 0.
    let norm_residual = if conn.n == 0 {
        let diff = conn.to_tensor().sub(&TensorElement::one_one());
        if diff.is_zero() {
            None
        } else {
            Some(format!("{diff}"))
        }
    } else {
        None
    };
    axioms.push(AxiomCheck {
        axiom: "normalization".into(),
        pass: norm_residual.is_none(),
        residual: norm_residual,
    });

    // (b) splitting: mu(l(t^n)) = eps(t^n) 1 = 1.
    let mut mu = AlgebraElement::zero();
    for (l, r) in &conn.pairs {
        mu = mu.add(&l.product(r, conn.product));
    }
    let split_residual = {
        let diff = mu.sub(&AlgebraElement::one());
        if diff.is_zero() {
            None
        } else {
            Some(format!("{diff}"))
        }
    };
    axioms.push(AxiomCheck {
        axiom: "splitting".into(),
        pass: split_residual.is_none(),
        residual: split_residual,
    });

    // (c) right colinearity: every right leg homogeneous of degree +n.
    let mut right_bad = AlgebraElement::zero();
    for (_, r) in &conn.pairs {
        for (m, c) in r.terms() {
            if m.hdeg() != conn.n {
                right_bad = right_bad.add(&AlgebraElement::from_poly(
                    crate::algebra::Poly::term(*m, c.clone()),
                ));
            }
        }
    }
    axioms.push(AxiomCheck {
        axiom: "right colinearity".into(),
        pass: right_bad.is_zero(),
        residual: if right_bad.is_zero() { None } else { Some(format!("{right_bad}")) },
    });

    // (d) left colinearity: every left leg homogeneous of degree -n.
    let mut left_bad = AlgebraElement::zero();
    for (l, _) in &conn.pairs {
        for (m, c) in l.terms() {
            if m.hdeg() != -conn.n {
                left_bad = left_bad.add(&AlgebraElement::from_poly(
                    crate::algebra::Poly::term(*m, c.clone()),
                ));
            }
        }
    }
    axioms.push(AxiomCheck {
        axiom: "left colinearity".into(),
        pass: left_bad.is_zero(),
        residual: if left_bad.is_zero() { None } else { Some(format!("{left_bad}")) },
    });

    ConnectionReport {
        n: conn.n,
        deformed: format!("{:?}", conn.product),
        axioms,
    }
}

/// The canonical Galois map `can(a (x) a') = a a'(0) (x) a'(1)`, with the
/// output grouped by the circle degree of the second leg.
pub fn galois_can(t: &TensorElement, prod: Product) -> Vec<(AlgebraElement, i64)> {
    let mut buckets: std::collections::BTreeMap<i64, AlgebraElement> =
        std::collections::BTreeMap::new();
    for (&(l, r), c) in t.terms() {
        let n = r.hdeg();
        let prod_elem = AlgebraElement::from_monomial(l)
            .product(&AlgebraElement::from_monomial(r), prod)
            .scale(c);
        let entry = buckets.entry(n).or_insert_with(AlgebraElement::zero);
        *entry = entry.add(&prod_elem);
    }
    buckets.into_iter().filter(|(_, a)| !a.is_zero()).map(|(n, a)| (a, n)).collect()
}

/// The inverse of the canonical Galois map on `a (x) t^n`, represented in
/// `A (x) A` as `a * l(t^n)` (left leg multiplied by `a`).
pub fn galois_inverse(a: &AlgebraElement, h: &HopfElement, prod: Product) -> TensorElement {
    let mut out = TensorElement::zero();
    for (&n, c) in &h.terms {
        let conn = strong_connection(n, prod);
        for (l, r) in &conn.pairs {
            let piece = TensorElement::simple(&a.product(l, prod), r).scale(c);
            out = out.add(&piece);
        }
    }
    out
}

/// The equivariant-projectivity splitting
/// `sigma(a) = (mu (x) id)(id (x) l) delta(a)`: every left leg of the
/// result is a coinvariant and `mu` collapses it back to `a`.
pub fn eq_proj_splitting(a: &AlgebraElement, prod: Product) -> TensorElement {
    let mut out = TensorElement::zero();
    for (piece, n) in a.coact_h() {
        let conn = strong_connection(n, prod);
        for (l, r) in &conn.pairs {
            out = out.add(&TensorElement::simple(&piece.product(l, prod), r));
        }
    }
    out
}

/// The universal vertical lift: the Galois map restricted to universal
/// 1-forms, landing in `A (x) H^+` (the buckets sum to zero).
pub fn universal_ver(t: &TensorElement, prod: Product) -> Result<Vec<(AlgebraElement, i64)>> {
    let mu = t.mu(prod);
    if !mu.is_zero() {
        return Err(Error::NotUniversalForm { residual: format!("{mu}") });
    }
    Ok(galois_can(t, prod))
}

/// The bicomodule isomorphism `phi_theta(a (x) a') = sigma(deg a, deg a')
/// a (x) a'` between the deformed and classical tensor squares.
pub fn phi_theta(t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (&(l, r), c) in t.terms() {
        out.add_term((l, r), c * &cocycle_sigma(l.kdeg(), r.kdeg()));
    }
    out
}

/// Inverse of [`phi_theta`].
pub fn phi_theta_inv(t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (&(l, r), c) in t.terms() {
        out.add_term((l, r), c * &cocycle_sigma(l.kdeg(), r.kdeg()).inverse().unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Monomial, Poly};
    use crate::scalar::Scalar;

    #[test]
    fn normalization() {
        let l0 = strong_connection(0, Product::Mul);
        assert_eq!(l0.to_tensor(), TensorElement::one_one());
    }

    #[test]
    fn classical_one_step() {
        let l1 = strong_connection(1, Product::Mul);
        let expected = TensorElement::simple(&AlgebraElement::z1s(), &AlgebraElement::z1())
            .add(&TensorElement::simple(&AlgebraElement::z2s(), &AlgebraElement::z2()));
        assert_eq!(l1.to_tensor(), expected);
    }

    #[test]
    fn classical_negative_step() {
        let lm1 = strong_connection(-1, Product::Mul);
        let expected = TensorElement::simple(&AlgebraElement::z1(), &AlgebraElement::z1s())
            .add(&TensorElement::simple(&AlgebraElement::z2(), &AlgebraElement::z2s()));
        assert_eq!(lm1.to_tensor(), expected);
    }

    #[test]
    fn deformed_two_steps_vs_brute_force() {
        // l_theta(t^2) as pairs must match the direct star expansion
        // z_i* * z_j* (x) z_j * z_i over the four branches.
        let l2 = strong_connection(2, Product::Star);
        assert_eq!(l2.pairs.len(), 4);
        let gens = [AlgebraElement::z1(), AlgebraElement::z2()];
        let stars = [AlgebraElement::z1s(), AlgebraElement::z2s()];
        let mut expected = Vec::new();
        // Recursion order: outer branch k over (z1, z2), inner over previous pairs.
        for k in 0..2 {
            for j in 0..2 {
                expected.push((stars[k].star(&stars[j]), gens[j].star(&gens[k])));
            }
        }
        assert_eq!(l2.pairs, expected);
    }

    #[test]
    fn axioms_hold_small_range() {
        for n in -3..=3 {
            for prod in [Product::Mul, Product::Star] {
                let report = verify_strong_connection(&strong_connection(n, prod));
                assert!(report.all_pass(), "n={n} prod={prod:?}: {report:?}");
            }
        }
    }

    #[test]
    fn tampered_value_fails_splitting() {
        let tampered = StrongConnection {
            n: 1,
            product: Product::Mul,
            pairs: vec![(AlgebraElement::z1s(), AlgebraElement::z1())],
        };
        let report = verify_strong_connection(&tampered);
        assert!(!report.all_pass());
        let split = &report.axioms[1];
        assert_eq!(split.axiom, "splitting");
        assert!(!split.pass);
        assert!(split.residual.is_some());
    }

    #[test]
    fn galois_examples() {
        // can(1 (x) z1) = [(z1, 1)]
        let t = TensorElement::simple(&AlgebraElement::one(), &AlgebraElement::z1());
        assert_eq!(galois_can(&t, Product::Mul), vec![(AlgebraElement::z1(), 1)]);

        // can(l(t^n)) = 1 (x) t^n.
        for n in -4..=4 {
            for prod in [Product::Mul, Product::Star] {
                let conn = strong_connection(n, prod);
                assert_eq!(
                    galois_can(&conn.to_tensor(), prod),
                    vec![(AlgebraElement::one(), n)]
                );
            }
        }

        // can(d_u z1) = [(z1, 0) -> -z1, (z1, 1)].
        let du = TensorElement::universal_d(&AlgebraElement::z1());
        assert_eq!(
            galois_can(&du, Product::Mul),
            vec![(AlgebraElement::z1().neg(), 0), (AlgebraElement::z1(), 1)]
        );
    }

    #[test]
    fn galois_round_trip() {
        let samples = [
            AlgebraElement::one(),
            AlgebraElement::z1(),
            AlgebraElement::gen_z(),
            AlgebraElement::from_monomial(Monomial::new(0, 2, 1, 0)),
        ];
        for a in &samples {
            for n in [-2, 0, 1, 3] {
                for prod in [Product::Mul, Product::Star] {
                    let inv = galois_inverse(a, &HopfElement::t_pow(n), prod);
                    let mut expected = Vec::new();
                    if !a.is_zero() {
                        expected.push((a.clone(), n));
                    }
                    assert_eq!(galois_can(&inv, prod), expected);
                }
            }
        }
    }

    #[test]
    fn splitting_properties() {
        // sigma(z1) = z1 z1* (x) z1 + z1 z2* (x) z2.
        let s = eq_proj_splitting(&AlgebraElement::z1(), Product::Mul);
        let z1 = AlgebraElement::z1();
        let expected = TensorElement::simple(&z1.mul(&AlgebraElement::z1s()), &z1)
            .add(&TensorElement::simple(&z1.mul(&AlgebraElement::z2s()), &AlgebraElement::z2()));
        assert_eq!(s, expected);
        // Left legs coinvariant, mu collapses to the input.
        for (&(l, _), _) in s.terms() {
            assert_eq!(l.hdeg(), 0);
        }
        assert_eq!(s.mu(Product::Mul), z1);
        // sigma(1) = 1 (x) 1.
        assert_eq!(eq_proj_splitting(&AlgebraElement::one(), Product::Mul), TensorElement::one_one());
    }

    #[test]
    fn universal_ver_examples() {
        // ver(d_u z1) = [(-z1, 0), (z1, 1)].
        let du = TensorElement::universal_d(&AlgebraElement::z1());
        assert_eq!(
            universal_ver(&du, Product::Mul).unwrap(),
            vec![(AlgebraElement::z1().neg(), 0), (AlgebraElement::z1(), 1)]
        );
        // ver(l(t) - 1 (x) 1) = [(-1, 0), (1, 1)].
        let s = strong_connection(1, Product::Mul).to_tensor().sub(&TensorElement::one_one());
        assert_eq!(
            universal_ver(&s, Product::Mul).unwrap(),
            vec![(AlgebraElement::one().neg(), 0), (AlgebraElement::one(), 1)]
        );
        // b d_u b' dies for coinvariants b, b'.
        let b = AlgebraElement::gen_x();
        let bp = AlgebraElement::gen_z();
        let t = TensorElement::simple(&b, &AlgebraElement::one())
            .mul_factorwise(&TensorElement::universal_d(&bp), Product::Mul);
        assert!(universal_ver(&t, Product::Mul).unwrap().is_empty());
        // Non-forms are rejected.
        assert!(universal_ver(&TensorElement::one_one(), Product::Mul).is_err());
    }

    #[test]
    fn phi_theta_properties() {
        // phi(z1 (x) z2) = u z1 (x) z2.
        let t = TensorElement::simple(&AlgebraElement::z1(), &AlgebraElement::z2());
        assert_eq!(phi_theta(&t), t.scale(&Scalar::u_pow(1)));
        // phi(1 (x) a) = 1 (x) a.
        let t2 = TensorElement::simple(&AlgebraElement::one(), &AlgebraElement::gen_z());
        assert_eq!(phi_theta(&t2), t2);
        // mu(phi(z2 (x) z1)) = star(z2, z1) = u^{-1} z1 z2.
        let t3 = TensorElement::simple(&AlgebraElement::z2(), &AlgebraElement::z1());
        assert_eq!(
            phi_theta(&t3).mu(Product::Mul),
            AlgebraElement::z2().star(&AlgebraElement::z1())
        );
        // Invertibility.
        let mixed = t.add(&t3.scale(&Scalar::u_pow(-2)));
        assert_eq!(phi_theta_inv(&phi_theta(&mixed)), mixed);
        // Intertwines the vertical lifts: ver(phi(T)) = ver_theta(T).
        let raw = Poly::term(Monomial::new(1, 1, 0, 0), Scalar::one());
        let a = AlgebraElement::from_poly(raw);
        let t4 = TensorElement::simple(&a, &AlgebraElement::z1s())
            .sub(&TensorElement::simple(&a.star(&AlgebraElement::z1s()), &AlgebraElement::one()));
        assert!(t4.mu(Product::Star).is_zero());
        assert_eq!(
            universal_ver(&phi_theta(&t4), Product::Mul).unwrap(),
            universal_ver(&t4, Product::Star).unwrap()
        );
    }
}
