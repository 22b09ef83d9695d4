//! The coordinate algebra of the 3-sphere and its deformations on a single
//! carrier.
//!
//! Monomials are exponent vectors in `z1, z2, z1*, z2*`. The sphere relation
//! `z1* z1 + z2* z2 = 1` is imposed by the confluent rewrite
//! `z1 z1* -> 1 - z2 z2*` (deglex order with `z1 > z2 > z1* > z2*`), so a
//! reduced monomial never contains both `z1` and `z1*`. The deformed product
//! is computed from the torus bigrading by the homogeneous phase formula:
//! reduction commutes with deformation because the sphere relation is
//! bihomogeneous of degree zero.

use crate::scalar::{GaussianRational, Scalar, Specialize};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of `z1^a z2^b z1*^c z2*^d` in the free commutative cover.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub e: [u16; 4],
}

/// Index of a torus character `t_(m1,m2)`, a basis label of `O(T^2)`.
pub type KIndex = (i64, i64);

/// Monomial order for normal forms. `Main` is deglex with
/// `z1 > z2 > z1* > z2*`; `Mirror` swaps the roles of the two generator
/// pairs and is used only for confluence cross-checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    Main,
    Mirror,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: [0, 0, 0, 0] };

    pub const Z1: Monomial = Monomial { e: [1, 0, 0, 0] };
    pub const Z2: Monomial = Monomial { e: [0, 1, 0, 0] };
    pub const Z1S: Monomial = Monomial { e: [0, 0, 1, 0] };
    pub const Z2S: Monomial = Monomial { e: [0, 0, 0, 1] };

    pub fn new(a: u16, b: u16, c: u16, d: u16) -> Self {
        Monomial { e: [a, b, c, d] }
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    /// Torus bidegree: `(a - c, b - d)`.
    pub fn kdeg(&self) -> KIndex {
        (self.e[0] as i64 - self.e[2] as i64, self.e[1] as i64 - self.e[3] as i64)
    }

    /// Circle degree: `a + b - c - d`. Coincides with `kdeg.0 + kdeg.1`.
    pub fn hdeg(&self) -> i64 {
        let k = self.kdeg();
        k.0 + k.1
    }

    /// First index of the `((m+n,-m),n)` labelling of homogeneous
    /// components: `m = d - b`.
    pub fn paper_m(&self) -> i64 {
        self.e[3] as i64 - self.e[1] as i64
    }

    /// No monomial contains both `z1` and `z1*`.
    pub fn is_reduced(&self) -> bool {
        self.e[0] == 0 || self.e[2] == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            e: [
                self.e[0] + other.e[0],
                self.e[1] + other.e[1],
                self.e[2] + other.e[2],
                self.e[3] + other.e[3],
            ],
        }
    }

    /// Exponent swap `(a,b,c,d) -> (c,d,a,b)` realizing the involution on
    /// the generators.
    pub fn star_swap(&self) -> Monomial {
        Monomial { e: [self.e[2], self.e[3], self.e[0], self.e[1]] }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..4).all(|i| self.e[i] <= other.e[i])
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial {
                e: [
                    self.e[0] - other.e[0],
                    self.e[1] - other.e[1],
                    self.e[2] - other.e[2],
                    self.e[3] - other.e[3],
                ],
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            e: [
                self.e[0].max(other.e[0]),
                self.e[1].max(other.e[1]),
                self.e[2].max(other.e[2]),
                self.e[3].max(other.e[3]),
            ],
        }
    }

    /// Deglex comparison under the given variable order.
    pub fn cmp_order(&self, other: &Monomial, order: Order) -> std::cmp::Ordering {
        let d1 = self.degree();
        let d2 = other.degree();
        if d1 != d2 {
            return d1.cmp(&d2);
        }
        // Variable priority: Main z1>z2>z1*>z2*, Mirror z2>z1>z2*>z1*.
        let perm: [usize; 4] = match order {
            Order::Main => [0, 1, 2, 3],
            Order::Mirror => [1, 0, 3, 2],
        };
        for &i in &perm {
            if self.e[i] != other.e[i] {
                return self.e[i].cmp(&other.e[i]);
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp_order(other, Order::Main)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let names = ["z1", "z2", "z1'", "z2'"];
        let mut parts = Vec::new();
        for i in 0..4 {
            match self.e[i] {
                0 => {}
                1 => parts.push(names[i].to_string()),
                k => parts.push(format!("{}^{}", names[i], k)),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Raw polynomial in the free commutative cover (no sphere reduction).
/// Shared by the algebra carrier and the form-module normal-form engine.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            out.add_term(*m, q * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (m0, q) in &self.terms {
            out.add_term(m0.mul(m), q * c);
        }
        out
    }

    /// Plain commutative product in the free cover.
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Leading term under the given order.
    pub fn leading(&self, order: Order) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_order(b.0, order))
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

/// Which product to use on the shared carrier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Product {
    /// Commutative product of `O(S^3)`.
    Mul,
    /// Deformed product with phase unit `u` (Connes-Landi sphere).
    Star,
    /// Family product with phase unit `w` (interpolating algebra).
    StarW,
}

impl Product {
    pub fn from_deformed(deformed: bool) -> Product {
        if deformed {
            Product::Star
        } else {
            Product::Mul
        }
    }

    /// Cocycle phase attached to a pair of torus degrees.
    pub fn phase(&self, p: KIndex, q: KIndex) -> Scalar {
        match self {
            Product::Mul => Scalar::one(),
            Product::Star => cocycle_sigma(p, q),
            Product::StarW => Scalar::w_pow(p.0 * q.1 - p.1 * q.0),
        }
    }
}

/// The 2-cocycle `sigma((m1,m2),(q1,q2)) = u^(m1 q2 - m2 q1)`.
pub fn cocycle_sigma(p: KIndex, q: KIndex) -> Scalar {
    Scalar::u_pow(p.0 * q.1 - p.1 * q.0)
}

/// The cotriangular structure `R = sigma^{-2}`.
pub fn rmatrix(p: KIndex, q: KIndex) -> Scalar {
    Scalar::u_pow(-2 * (p.0 * q.1 - p.1 * q.0))
}

/// `R` for the family product (phase unit `w`).
pub fn rmatrix_w(p: KIndex, q: KIndex) -> Scalar {
    Scalar::w_pow(-2 * (p.0 * q.1 - p.1 * q.0))
}

/// Phase attached by a product's R-matrix.
pub fn r_phase(prod: Product, p: KIndex, q: KIndex) -> Scalar {
    match prod {
        Product::Mul => Scalar::one(),
        Product::Star => rmatrix(p, q),
        Product::StarW => rmatrix_w(p, q),
    }
}

/// Reduction of a single monomial modulo the sphere relation, as a
/// polynomial over reduced monomials. Under `Main` the rewrite is
/// `z1 z1* -> 1 - z2 z2*`; under `Mirror` it is `z2 z2* -> 1 - z1 z1*`.
pub fn reduce_monomial(m: &Monomial, order: Order) -> Poly {
    let (lo, hi, other_lo, other_hi) = match order {
        Order::Main => (0usize, 2usize, 1usize, 3usize),
        Order::Mirror => (1, 3, 0, 2),
    };
    let k = m.e[lo].min(m.e[hi]);
    if k == 0 {
        return Poly::term(*m, Scalar::one());
    }
    // (1 - z_other z_other*)^k expanded by the binomial theorem.
    let mut base = *m;
    base.e[lo] -= k;
    base.e[hi] -= k;
    let mut out = Poly::zero();
    let mut binom = GaussianRational::one();
    for j in 0..=k {
        if j > 0 {
            // binom(k, j) = binom(k, j-1) * (k - j + 1) / j
            let factor = GaussianRational::from_ratio((k - j + 1) as i64, j as i64);
            binom = &binom * &factor;
        }
        let sign = if j % 2 == 0 { GaussianRational::one() } else { GaussianRational::from_int(-1) };
        let mut mm = base;
        mm.e[other_lo] += j;
        mm.e[other_hi] += j;
        out.add_term(mm, Scalar::from_gaussian(&binom * &sign));
    }
    out
}

/// Reduce every monomial of a raw polynomial.
pub fn reduce_poly(p: &Poly, order: Order) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &p.terms {
        if m.is_reduced_under(order) {
            out.add_term(*m, c.clone());
        } else {
            let red = reduce_monomial(m, order).scale(c);
            out = out.add(&red);
        }
    }
    out
}

impl Monomial {
    fn is_reduced_under(&self, order: Order) -> bool {
        match order {
            Order::Main => self.e[0] == 0 || self.e[2] == 0,
            Order::Mirror => self.e[1] == 0 || self.e[3] == 0,
        }
    }
}

/// Canonical element of the sphere algebra: a linear combination of reduced
/// monomials with nonzero [`Scalar`] coefficients. One carrier serves the
/// classical algebra, the Connes-Landi sphere and the interpolating family;
/// only the product differs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgebraElement {
    poly: Poly,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { poly: Poly::zero() }
    }

    pub fn one() -> Self {
        AlgebraElement::from_monomial(Monomial::ONE)
    }

    pub fn z1() -> Self {
        AlgebraElement::from_monomial(Monomial::Z1)
    }

    pub fn z2() -> Self {
        AlgebraElement::from_monomial(Monomial::Z2)
    }

    pub fn z1s() -> Self {
        AlgebraElement::from_monomial(Monomial::Z1S)
    }

    pub fn z2s() -> Self {
        AlgebraElement::from_monomial(Monomial::Z2S)
    }

    /// The coinvariant generator `z = 2 z1 z2*`.
    pub fn gen_z() -> Self {
        AlgebraElement::from_poly(Poly::term(Monomial::new(1, 0, 0, 1), Scalar::from_int(2)))
    }

    /// The coinvariant generator `z* = 2 z1* z2`.
    pub fn gen_zs() -> Self {
        AlgebraElement::from_poly(Poly::term(Monomial::new(0, 1, 1, 0), Scalar::from_int(2)))
    }

    /// The coinvariant generator `x = z1* z1 - z2* z2`.
    pub fn gen_x() -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::new(1, 0, 1, 0), Scalar::one());
        p.add_term(Monomial::new(0, 1, 0, 1), Scalar::from_int(-1));
        AlgebraElement::from_poly(p)
    }

    pub fn from_monomial(m: Monomial) -> Self {
        AlgebraElement::from_poly(Poly::term(m, Scalar::one()))
    }

    pub fn from_scalar(c: Scalar) -> Self {
        AlgebraElement::from_poly(Poly::term(Monomial::ONE, c))
    }

    /// Normal form of a raw combination of (possibly unreduced) exponent
    /// words.
    pub fn from_poly(p: Poly) -> Self {
        AlgebraElement { poly: reduce_poly(&p, Order::Main) }
    }

    /// Normal form under the mirror rewrite; used for confluence
    /// cross-checks only.
    pub fn from_poly_mirror(p: Poly) -> MirrorElement {
        MirrorElement { poly: reduce_poly(&p, Order::Mirror) }
    }

    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.poly.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.terms.len() == 1
            && self.poly.terms.get(&Monomial::ONE).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement { poly: self.poly.add(&other.poly) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgebraElement { poly: self.poly.sub(&other.poly) }
    }

    pub fn neg(&self) -> Self {
        AlgebraElement { poly: self.poly.neg() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement { poly: self.poly.scale(c) }
    }

    /// Flagged product: commutative, deformed, or family. For the deformed
    /// products the phase is the cocycle pairing of the torus bidegrees of
    /// each monomial pair; reduction happens afterwards and is legitimate
    /// because the sphere relation has bidegree zero.
    pub fn product(&self, other: &Self, prod: Product) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.poly.terms {
            for (m2, c2) in &other.poly.terms {
                let mut c = c1 * c2;
                if !matches!(prod, Product::Mul) {
                    c = &c * &prod.phase(m1.kdeg(), m2.kdeg());
                }
                out.add_term(m1.mul(m2), c);
            }
        }
        AlgebraElement::from_poly(out)
    }

    /// Commutative product.
    pub fn mul(&self, other: &Self) -> Self {
        self.product(other, Product::Mul)
    }

    /// Deformed product `star_theta`.
    pub fn star(&self, other: &Self) -> Self {
        self.product(other, Product::Star)
    }

    /// The *-involution: swaps `z_i` with `z_i*`, conjugates scalars,
    /// re-reduces.
    pub fn involution(&self) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.poly.terms {
            out.add_term(m.star_swap(), c.involute());
        }
        AlgebraElement::from_poly(out)
    }

    /// Apply a scalar specialization coefficient-wise.
    pub fn specialize(&self, target: Specialize) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.poly.terms {
            out.add_term(*m, c.specialize(target));
        }
        AlgebraElement { poly: out }
    }

    /// Group terms by circle degree; reassembling the components recovers
    /// the element. `delta(component) = component (x) t^n`.
    pub fn coact_h(&self) -> Vec<(AlgebraElement, i64)> {
        let mut buckets: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.poly.terms {
            buckets.entry(m.hdeg()).or_default().add_term(*m, c.clone());
        }
        buckets.into_iter().map(|(n, p)| (AlgebraElement { poly: p }, n)).collect()
    }

    /// Group terms by torus bidegree. `rho(component) = t_k (x) component`.
    pub fn coact_k(&self) -> Vec<(KIndex, AlgebraElement)> {
        let mut buckets: BTreeMap<KIndex, Poly> = BTreeMap::new();
        for (m, c) in &self.poly.terms {
            buckets.entry(m.kdeg()).or_default().add_term(*m, c.clone());
        }
        buckets.into_iter().map(|(k, p)| (k, AlgebraElement { poly: p })).collect()
    }

    /// The component of circle degree `n`.
    pub fn project_charge(&self, n: i64) -> AlgebraElement {
        let mut out = Poly::zero();
        for (m, c) in &self.poly.terms {
            if m.hdeg() == n {
                out.add_term(*m, c.clone());
            }
        }
        AlgebraElement { poly: out }
    }

    /// True when every monomial is a coinvariant (circle degree zero).
    pub fn is_coinvariant(&self) -> bool {
        self.poly.terms.keys().all(|m| m.hdeg() == 0)
    }

    /// True when the element is homogeneous of circle degree `n`
    /// (zero counts as homogeneous of any degree).
    pub fn is_charge(&self, n: i64) -> bool {
        self.poly.terms.keys().all(|m| m.hdeg() == n)
    }

    /// True when all monomials share one torus bidegree.
    pub fn k_homogeneous(&self) -> Option<KIndex> {
        let mut it = self.poly.terms.keys();
        let first = it.next()?.kdeg();
        if it.all(|m| m.kdeg() == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_w_free(&self) -> bool {
        self.poly.terms.values().all(|c| c.is_w_free())
    }

    pub fn max_degree(&self) -> u32 {
        self.poly.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .poly
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "mono": [m.e[0], m.e[1], m.e[2], m.e[3]],
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

/// Element reduced under the mirror rewrite. Only exists so confluence
/// cross-checks cannot silently compare values from different normal forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MirrorElement {
    poly: Poly,
}

impl MirrorElement {
    /// Re-normalize under the main order.
    pub fn to_main(&self) -> AlgebraElement {
        AlgebraElement::from_poly(self.poly.clone())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms.iter().rev() {
            let cs = format!("{c}");
            let needs_parens = cs.contains('+') || (cs.contains(" - ") && !cs.starts_with('('));
            let body = if m.degree() == 0 {
                if needs_parens {
                    format!("({cs})")
                } else {
                    cs.clone()
                }
            } else if cs == "1" {
                format!("{m}")
            } else if cs == "-1" {
                format!("-{m}")
            } else if needs_parens {
                format!("({cs})*{m}")
            } else {
                format!("{cs}*{m}")
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

/// Laurent polynomial in the grouplike generator `t` of `O(U(1))`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HopfElement {
    pub terms: BTreeMap<i64, Scalar>,
}

impl HopfElement {
    pub fn zero() -> Self {
        HopfElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        HopfElement::t_pow(0)
    }

    pub fn t_pow(n: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(n, Scalar::one());
        HopfElement { terms }
    }

    pub fn add_term(&mut self, n: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(n) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&n, c) in &other.terms {
            out.add_term(n, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        HopfElement { terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = HopfElement::zero();
        for (&n1, c1) in &self.terms {
            for (&n2, c2) in &other.terms {
                out.add_term(n1 + n2, c1 * c2);
            }
        }
        out
    }

    /// Antipode `S(t^n) = t^{-n}` extended linearly.
    pub fn antipode(&self) -> Self {
        HopfElement { terms: self.terms.iter().map(|(&n, c)| (-n, c.clone())).collect() }
    }

    /// Counit `eps(t^n) = 1`.
    pub fn counit(&self) -> Scalar {
        let mut s = Scalar::zero();
        for c in self.terms.values() {
            s = &s + c;
        }
        s
    }

    /// `*`-involution `(c t^n)* = conj(c) t^{-n}`.
    pub fn involution(&self) -> Self {
        HopfElement { terms: self.terms.iter().map(|(&n, c)| (-n, c.involute())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&n, c) in &self.terms {
            let gen = match n {
                0 => "1".to_string(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            let cs = format!("{c}");
            let body = if n == 0 {
                cs
            } else if cs == "1" {
                gen
            } else if cs == "-1" {
                format!("-{gen}")
            } else {
                format!("{cs}*{gen}")
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

    fn elem(m: Monomial) -> AlgebraElement {
        AlgebraElement::from_monomial(m)
    }

    #[test]
    fn sphere_rewrite_single_step() {
        // z1 z1* -> 1 - z2 z2*
        let raw = Poly::term(Monomial::new(1, 0, 1, 0), Scalar::one());
        let nf = AlgebraElement::from_poly(raw);
        let mut expected = Poly::zero();
        expected.add_term(Monomial::ONE, Scalar::one());
        expected.add_term(Monomial::new(0, 1, 0, 1), Scalar::from_int(-1));
        assert_eq!(nf, AlgebraElement { poly: expected });
    }

    #[test]
    fn sphere_relation_normalizes_to_one() {
        // z1* z1 + z2* z2 -> 1
        let mut raw = Poly::zero();
        raw.add_term(Monomial::new(1, 0, 1, 0), Scalar::one());
        raw.add_term(Monomial::new(0, 1, 0, 1), Scalar::one());
        assert!(AlgebraElement::from_poly(raw).is_one());
    }

    #[test]
    fn reduced_monomial_unchanged() {
        let raw = Poly::term(Monomial::new(0, 1, 0, 1), Scalar::one());
        let nf = AlgebraElement::from_poly(raw.clone());
        assert_eq!(nf.as_poly(), &raw);
    }

    #[test]
    fn mul_unit() {
        let x = elem(Monomial::new(2, 1, 0, 3));
        assert_eq!(x.mul(&AlgebraElement::one()), x);
    }

    #[test]
    fn sphere_lemma_b_relation() {
        // z* z + x^2 = 1 with z = 2 z1 z2*, x = z1* z1 - z2* z2.
        let z = AlgebraElement::gen_z();
        let zs = AlgebraElement::gen_zs();
        let x = AlgebraElement::gen_x();
        let lhs = zs.mul(&z).add(&x.mul(&x));
        assert!(lhs.is_one());
    }

    #[test]
    fn cocycle_examples() {
        assert_eq!(cocycle_sigma((1, 0), (0, 1)), Scalar::u_pow(1));
        for p in [(-2, 1), (0, 0), (3, 5)] {
            assert!(cocycle_sigma(p, p).is_one());
        }
        assert_eq!(rmatrix((1, 0), (0, 1)), Scalar::u_pow(-2));
    }

    #[test]
    fn connes_landi_relations() {
        let z1 = AlgebraElement::z1();
        let z2 = AlgebraElement::z2();
        // z1 * z2 = u * (z1 z2), and z1 * z2 = q z2 * z1 with q = u^2.
        let s12 = z1.star(&z2);
        let s21 = z2.star(&z1);
        assert_eq!(s12, z1.mul(&z2).scale(&Scalar::u_pow(1)));
        assert_eq!(s12, s21.scale(&Scalar::u_pow(2)));
    }

    #[test]
    fn deformed_sphere_relation() {
        let lhs = AlgebraElement::z1s()
            .star(&AlgebraElement::z1())
            .add(&AlgebraElement::z2s().star(&AlgebraElement::z2()));
        assert!(lhs.is_one());
    }

    #[test]
    fn involution_examples() {
        assert_eq!(AlgebraElement::z1().involution(), AlgebraElement::z1s());
        let x = elem(Monomial::new(1, 1, 0, 0)).scale(&Scalar::from_gaussian(GaussianRational::i()));
        let expected = elem(Monomial::new(0, 0, 1, 1))
            .scale(&Scalar::from_gaussian(-&GaussianRational::i()));
        assert_eq!(x.involution(), expected);
    }

    #[test]
    fn involution_star_antihomomorphism() {
        let z1 = AlgebraElement::z1();
        let z2 = AlgebraElement::z2();
        let lhs = z1.star(&z2).involution();
        let rhs = z2.involution().star(&z1.involution());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coaction_grouping() {
        let x = elem(Monomial::new(1, 0, 0, 1)); // z1 z2*, hdeg 0
        assert_eq!(x.coact_h(), vec![(x.clone(), 0)]);
        let sq = elem(Monomial::new(2, 0, 0, 0));
        assert_eq!(sq.coact_h(), vec![(sq.clone(), 2)]);
        let z = AlgebraElement::gen_z();
        assert_eq!(z.coact_k(), vec![((1, -1), z.clone())]);
    }

    #[test]
    fn star_specializes_to_mul() {
        let xs = [
            elem(Monomial::new(1, 2, 0, 1)),
            elem(Monomial::new(0, 0, 2, 1)),
            AlgebraElement::gen_z(),
        ];
        for a in &xs {
            for b in &xs {
                let lhs = a.star(b).specialize(Specialize::UToOne);
                let rhs = a
                    .specialize(Specialize::UToOne)
                    .mul(&b.specialize(Specialize::UToOne));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn mirror_normal_form_agrees() {
        let mut raw = Poly::zero();
        raw.add_term(Monomial::new(2, 1, 1, 2), Scalar::from_int(3));
        raw.add_term(Monomial::new(1, 0, 1, 0), Scalar::u_pow(1));
        let main = AlgebraElement::from_poly(raw.clone());
        let mirrored = AlgebraElement::from_poly_mirror(raw).to_main();
        assert_eq!(main, mirrored);
    }
}
