//! Modules associated to the fibrations: charge slices, the natural
//! isomorphism between the classical and deformed module structures, and
//! explicit idempotents built from strong connections.
//!
//! The simple comodules are one-dimensional, so the cotensor construction
//! collapses to degree bookkeeping: the charge-`n` module is the slice of
//! the carrier where every monomial has circle degree `n`.

use crate::algebra::{AlgebraElement, Product};
use crate::error::{Error, Result};
use crate::principal::strong_connection;
use crate::scalar::Scalar;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

/// Left action of a coinvariant on a charge-`n` element with the flagged
/// product. On homogeneous slices the deformed action differs from the
/// classical one by the phase `u^{m n}`.
pub fn module_action(
    b: &AlgebraElement,
    xi: &AlgebraElement,
    prod: Product,
) -> Result<AlgebraElement> {
    if !b.is_coinvariant() {
        return Err(Error::NotCoinvariant { element: format!("{b}") });
    }
    Ok(b.product(xi, prod))
}

/// The natural isomorphism between the classical and deformed charge-`n`
/// modules: multiply each monomial of slice index `m` by `u^{m n}`.
pub fn l_v(xi: &AlgebraElement, n: i64) -> Result<AlgebraElement> {
    if !xi.is_charge(n) {
        return Err(Error::MixedCharge { expected: n });
    }
    let mut out = AlgebraElement::zero();
    for (m, c) in xi.terms() {
        let phase = Scalar::u_pow(m.paper_m() * n);
        out = out.add(
            &AlgebraElement::from_poly(crate::algebra::Poly::term(*m, c * &phase)),
        );
    }
    Ok(out)
}

/// Inverse of [`l_v`].
pub fn l_v_inv(xi: &AlgebraElement, n: i64) -> Result<AlgebraElement> {
    if !xi.is_charge(n) {
        return Err(Error::MixedCharge { expected: n });
    }
    let mut out = AlgebraElement::zero();
    for (m, c) in xi.terms() {
        let phase = Scalar::u_pow(-m.paper_m() * n);
        out = out.add(
            &AlgebraElement::from_poly(crate::algebra::Poly::term(*m, c * &phase)),
        );
    }
    Ok(out)
}

/// A projective-module idempotent over the coinvariants: the square matrix
/// `e_{ij} = r_i o l_j` built from the pairs of `l(t^n) = sum_i l_i (x) r_i`
/// with the flagged product.
#[derive(Clone, Debug)]
pub struct Idempotent {
    pub n: i64,
    pub product: Product,
    pub entries: Vec<Vec<AlgebraElement>>,
}

impl Idempotent {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Matrix product of `self` with `other` under the flagged product.
    pub fn mat_mul(&self, other: &Idempotent) -> Vec<Vec<AlgebraElement>> {
        let k = self.size();
        let mut out = vec![vec![AlgebraElement::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = AlgebraElement::zero();
                for l in 0..k {
                    acc = acc.add(&self.entries[i][l].product(&other.entries[l][j], self.product));
                }
                out[i][j] = acc;
            }
        }
        out
    }

    /// Conjugate transpose with the algebra involution.
    pub fn adjoint(&self) -> Vec<Vec<AlgebraElement>> {
        let k = self.size();
        let mut out = vec![vec![AlgebraElement::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                out[i][j] = self.entries[j][i].involution();
            }
        }
        out
    }

    pub fn trace(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for i in 0..self.size() {
            out = out.add(&self.entries[i][i]);
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        self.mat_mul(self) == self.entries
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == self.entries
    }

    pub fn entries_coinvariant(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_coinvariant())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "deformed": self.product != Product::Mul,
            "size": self.size(),
            "entries": self.entries.iter().map(|row| {
                row.iter().map(|e| e.to_json()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

static IDEMPOTENT_CACHE: Mutex<Option<HashMap<(i64, Product), Idempotent>>> = Mutex::new(None);

/// Build the idempotent for the charge-`n` module from the strong
/// connection, memoized per `(n, product)`.
pub fn build_idempotent(n: i64, prod: Product) -> Idempotent {
    {
        let cache = IDEMPOTENT_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(v) = map.get(&(n, prod)) {
                return v.clone();
            }
        }
    }
    let conn = strong_connection(n, prod);
    let k = conn.pairs.len();
    let mut entries = vec![vec![AlgebraElement::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            entries[i][j] = conn.pairs[i].1.product(&conn.pairs[j].0, prod);
        }
    }
    let idem = Idempotent { n, product: prod, entries };
    let mut cache = IDEMPOTENT_CACHE.lock().unwrap();
    cache.get_or_insert_with(HashMap::new).insert((n, prod), idem.clone());
    idem
}

/// Per-sample outcome of the projectivity round trip.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectivityCheck {
    pub sample: String,
    pub round_trip: bool,
    pub idempotent_fixes_image: bool,
}

/// Check that `xi -> (xi o l_i)_i` followed by `(b_i) -> sum b_i o r_i`
/// is the identity on charge-`n` samples, that the image coordinates are
/// coinvariant, and that the image is fixed by right multiplication with
/// the idempotent.
pub fn verify_projective_iso(
    n: i64,
    prod: Product,
    samples: &[AlgebraElement],
) -> Result<Vec<ProjectivityCheck>> {
    let conn = strong_connection(n, prod);
    let idem = build_idempotent(n, prod);
    let mut out = Vec::new();
    for xi in samples {
        if !xi.is_charge(n) {
            return Err(Error::MixedCharge { expected: n });
        }
        // Coordinates in B^N.
        let coords: Vec<AlgebraElement> =
            conn.pairs.iter().map(|(l, _)| xi.product(l, prod)).collect();
        for b in &coords {
            if !b.is_coinvariant() {
                return Err(Error::NotCoinvariant { element: format!("{b}") });
            }
        }
        // Reassembly.
        let mut back = AlgebraElement::zero();
        for (b, (_, r)) in coords.iter().zip(&conn.pairs) {
            back = back.add(&b.product(r, prod));
        }
        let round_trip = back == *xi;
        // (b_j) e = (sum_j b_j e_{j i})_i must reproduce the coordinates.
        let k = conn.pairs.len();
        let mut projected = vec![AlgebraElement::zero(); k];
        for (i, slot) in projected.iter_mut().enumerate() {
            for (j, b) in coords.iter().enumerate() {
                *slot = slot.add(&b.product(&idem.entries[j][i], prod));
            }
        }
        let idempotent_fixes_image = projected == coords;
        out.push(ProjectivityCheck {
            sample: format!("{xi}"),
            round_trip,
            idempotent_fixes_image,
        });
    }
    Ok(out)
}

/// The associated module of a finite-dimensional comodule presented by its
/// weight decomposition: a direct sum of charge slices.
#[derive(Clone, Debug)]
pub struct WeightModule {
    pub charges: Vec<i64>,
}

impl WeightModule {
    /// Project an element component-wise onto the module's charges.
    pub fn project(&self, x: &AlgebraElement) -> Vec<AlgebraElement> {
        self.charges.iter().map(|&n| x.project_charge(n)).collect()
    }

    /// Membership: the element decomposes entirely into the listed charges.
    pub fn contains(&self, x: &AlgebraElement) -> bool {
        let mut sum = AlgebraElement::zero();
        for piece in self.project(x) {
            sum = sum.add(&piece);
        }
        sum == *x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::scalar::Specialize;

    #[test]
    fn project_charge_examples() {
        let x = AlgebraElement::z1()
            .add(&AlgebraElement::z1().mul(&AlgebraElement::z2s()));
        assert_eq!(x.project_charge(1), AlgebraElement::z1());
        let b = AlgebraElement::gen_x();
        assert_eq!(b.project_charge(0), b);
        let m = AlgebraElement::from_monomial(Monomial::new(0, 2, 1, 0));
        assert_eq!(m.project_charge(1), m);
    }

    #[test]
    fn charge_components_reassemble() {
        let x = AlgebraElement::z1()
            .add(&AlgebraElement::gen_z())
            .add(&AlgebraElement::z2s().mul(&AlgebraElement::z2s()));
        let mut sum = AlgebraElement::zero();
        for (piece, _) in x.coact_h() {
            sum = sum.add(&piece);
        }
        assert_eq!(sum, x);
    }

    #[test]
    fn module_action_phases() {
        // K-coinvariant b acts without phase.
        let x = AlgebraElement::gen_x();
        let z1 = AlgebraElement::z1();
        assert_eq!(
            module_action(&x, &z1, Product::Star).unwrap(),
            x.mul(&z1)
        );
        // z has slice index 1; acting on z1 (charge 1) picks up u.
        let z = AlgebraElement::gen_z();
        assert_eq!(
            module_action(&z, &z1, Product::Star).unwrap(),
            z.mul(&z1).scale(&Scalar::u_pow(1))
        );
        // Non-coinvariants are rejected.
        assert!(module_action(&z1, &z1, Product::Star).is_err());
    }

    #[test]
    fn l_v_examples() {
        // z1 has slice index 0.
        assert_eq!(l_v(&AlgebraElement::z1(), 1).unwrap(), AlgebraElement::z1());
        // z1^2 z2* has slice index 1: phase u.
        let xi = AlgebraElement::from_monomial(Monomial::new(2, 0, 0, 1));
        assert_eq!(l_v(&xi, 1).unwrap(), xi.scale(&Scalar::u_pow(1)));
        // At u -> 1, the map is the identity.
        let mixed = xi.add(&AlgebraElement::z1().scale(&Scalar::from_int(3)));
        assert_eq!(
            l_v(&mixed, 1).unwrap().specialize(Specialize::UToOne),
            mixed.specialize(Specialize::UToOne)
        );
        // Mixed charges are rejected.
        assert!(l_v(&AlgebraElement::z1().add(&AlgebraElement::gen_x()), 1).is_err());
        // Inverse really inverts.
        assert_eq!(l_v_inv(&l_v(&mixed, 1).unwrap(), 1).unwrap(), mixed);
    }

    #[test]
    fn intertwining_law() {
        // L(b xi) = b * L(xi) for homogeneous coinvariant b.
        let b = AlgebraElement::gen_z(); // slice 1
        let xi = AlgebraElement::from_monomial(Monomial::new(2, 0, 0, 1)); // charge 1
        let lhs = l_v(&b.mul(&xi), 1).unwrap();
        let rhs = b.star(&l_v(&xi, 1).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn idempotent_n1_classical() {
        let e = build_idempotent(1, Product::Mul);
        assert_eq!(e.size(), 2);
        // e = [[1 - z2 z2*, z1 z2*], [z2 z1*, z2 z2*]].
        let one_minus = AlgebraElement::one()
            .sub(&AlgebraElement::z2().mul(&AlgebraElement::z2s()));
        assert_eq!(e.entries[0][0], one_minus);
        assert_eq!(e.entries[0][1], AlgebraElement::z1().mul(&AlgebraElement::z2s()));
        assert_eq!(e.entries[1][0], AlgebraElement::z2().mul(&AlgebraElement::z1s()));
        assert_eq!(e.entries[1][1], AlgebraElement::z2().mul(&AlgebraElement::z2s()));
        assert!(e.is_idempotent());
        assert!(e.is_self_adjoint());
        assert!(e.entries_coinvariant());
        assert!(e.trace().is_one());
    }

    #[test]
    fn idempotent_n0_trivial() {
        let e = build_idempotent(0, Product::Mul);
        assert_eq!(e.size(), 1);
        assert!(e.entries[0][0].is_one());
    }

    #[test]
    fn idempotent_n2_deformed() {
        let e = build_idempotent(2, Product::Star);
        assert_eq!(e.size(), 4);
        assert!(e.is_idempotent());
        assert!(e.is_self_adjoint());
        assert!(e.entries_coinvariant());
        assert!(e.trace().is_one());
    }

    #[test]
    fn projectivity_round_trip() {
        let samples = vec![
            AlgebraElement::z1(),
            AlgebraElement::z2(),
            AlgebraElement::zero(),
            AlgebraElement::gen_x().mul(&AlgebraElement::z1()),
        ];
        for prod in [Product::Mul, Product::Star] {
            let checks = verify_projective_iso(1, prod, &samples).unwrap();
            assert!(checks.iter().all(|c| c.round_trip && c.idempotent_fixes_image));
        }
        let neg = vec![AlgebraElement::z2s()];
        let checks = verify_projective_iso(-1, Product::Mul, &neg).unwrap();
        assert!(checks.iter().all(|c| c.round_trip && c.idempotent_fixes_image));
    }

    #[test]
    fn weight_module_projection() {
        let module = WeightModule { charges: vec![-1, 1] };
        let x = AlgebraElement::z1().add(&AlgebraElement::z2s());
        assert!(module.contains(&x));
        assert!(!module.contains(&x.add(&AlgebraElement::one())));
    }
}
