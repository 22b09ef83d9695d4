//! Gröbner bases for submodules of free modules over the free polynomial
//! cover of the sphere algebra.
//!
//! The Kahler 1- and 2-form carriers are quotients of free modules of rank 4
//! and 6. Equality in the quotients is decided by division against a
//! completed basis of the relation submodule, computed once per monomial
//! order and cached. Position-over-term order with deglex on monomials; all
//! relation generators have unit leading coefficients, so division is exact
//! over the phase-unit Laurent scalar ring.

use crate::algebra::{Monomial, Order, Poly};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Scalar};
use std::sync::OnceLock;

/// Element of a free module `P^rank`: one cover polynomial per component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModVec {
    pub comps: Vec<Poly>,
}

impl ModVec {
    pub fn zero(rank: usize) -> Self {
        ModVec { comps: vec![Poly::zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        ModVec {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ModVec {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ModVec { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Self {
        ModVec { comps: self.comps.iter().map(|p| p.mul_monomial(m, c)).collect() }
    }

    pub fn max_degree(&self) -> u32 {
        self.comps.iter().map(|p| p.max_degree()).max().unwrap_or(0)
    }
}

/// Completed basis of a submodule, with the data needed for division.
pub struct ModuleBasis {
    pub rank: usize,
    pub order: Order,
    /// `rank_of_comp[c]` is the priority of component `c`; lower leads.
    pub rank_of_comp: Vec<usize>,
    pub gens: Vec<ModVec>,
    /// `(i, j, reduced_to_zero)` for every S-pair of the final basis.
    pub certificate: Vec<(usize, usize, bool)>,
}

/// Leading term `(component, monomial, coefficient)` of a module element.
fn leading<'a>(
    v: &'a ModVec,
    order: Order,
    rank_of_comp: &[usize],
) -> Option<(usize, &'a Monomial, &'a Scalar)> {
    let mut best: Option<(usize, &Monomial, &Scalar)> = None;
    for (c, p) in v.comps.iter().enumerate() {
        if let Some((m, q)) = p.leading(order) {
            best = match best {
                None => Some((c, m, q)),
                Some((bc, bm, bq)) => {
                    let better = match rank_of_comp[c].cmp(&rank_of_comp[bc]) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => {
                            m.cmp_order(bm, order) == std::cmp::Ordering::Greater
                        }
                    };
                    if better {
                        Some((c, m, q))
                    } else {
                        Some((bc, bm, bq))
                    }
                }
            };
        }
    }
    best
}

const COMPLETION_DEGREE_BOUND: u32 = 20;

impl ModuleBasis {
    /// Buchberger completion of the given generators, followed by
    /// interreduction and normalization to unit leading coefficients.
    /// Guarded by a degree bound: exceeding it signals an order or
    /// implementation bug, not a big computation.
    pub fn complete(
        rank: usize,
        order: Order,
        rank_of_comp: Vec<usize>,
        generators: Vec<ModVec>,
    ) -> Result<Self> {
        let mut basis = Self {
            rank,
            order,
            rank_of_comp,
            gens: Vec::new(),
            certificate: Vec::new(),
        };
        for g in generators {
            let r = basis.reduce(&g);
            if !r.is_zero() {
                basis.push_monic(r)?;
            }
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..basis.gens.len() {
            for j in (i + 1)..basis.gens.len() {
                pairs.push((i, j));
            }
        }
        while let Some((i, j)) = pairs.pop() {
            let Some(s) = basis.s_vector(i, j)? else { continue };
            let r = basis.reduce(&s);
            if r.is_zero() {
                continue;
            }
            if r.max_degree() > COMPLETION_DEGREE_BOUND {
                return Err(Error::DegreeBoundExceeded { bound: COMPLETION_DEGREE_BOUND });
            }
            basis.push_monic(r)?;
            let new = basis.gens.len() - 1;
            for k in 0..new {
                pairs.push((k, new));
            }
        }
        basis.interreduce()?;
        basis.certify()?;
        Ok(basis)
    }

    fn push_monic(&mut self, v: ModVec) -> Result<()> {
        let Some((_, _, c)) = leading(&v, self.order, &self.rank_of_comp) else {
            return Ok(());
        };
        let inv = c.inverse().ok_or_else(|| Error::NonUnitLeading { coeff: format!("{c}") })?;
        self.gens.push(v.scale(&inv));
        Ok(())
    }

    /// S-vector of two basis elements; `None` when the leading components
    /// differ (no cancellation possible in a module).
    fn s_vector(&self, i: usize, j: usize) -> Result<Option<ModVec>> {
        let (ci, mi, qi) = leading(&self.gens[i], self.order, &self.rank_of_comp).unwrap();
        let (cj, mj, qj) = leading(&self.gens[j], self.order, &self.rank_of_comp).unwrap();
        if ci != cj {
            return Ok(None);
        }
        let lcm = mi.lcm(mj);
        let qi_inv = qi.inverse().ok_or_else(|| Error::NonUnitLeading { coeff: format!("{qi}") })?;
        let qj_inv = qj.inverse().ok_or_else(|| Error::NonUnitLeading { coeff: format!("{qj}") })?;
        let a = self.gens[i].mul_monomial(&lcm.div(mi).unwrap(), &qi_inv);
        let b = self.gens[j].mul_monomial(&lcm.div(mj).unwrap(), &qj_inv);
        Ok(Some(a.sub(&b)))
    }

    /// Normal form with respect to the basis. Remainders are canonical
    /// representatives of the quotient module.
    pub fn reduce(&self, v: &ModVec) -> ModVec {
        let mut work = v.clone();
        let mut remainder = ModVec::zero(self.rank);
        'outer: while let Some((c, m, q)) = leading(&work, self.order, &self.rank_of_comp) {
            let (c, m, q) = (c, *m, q.clone());
            for g in &self.gens {
                let (gc, gm, gq) = leading(g, self.order, &self.rank_of_comp).unwrap();
                if gc == c && gm.divides(&m) {
                    let factor = m.div(gm).unwrap();
                    // Basis elements are monic, so this division is exact.
                    let coeff = &q * &gq.inverse().expect("monic basis");
                    work = work.sub(&g.mul_monomial(&factor, &coeff));
                    continue 'outer;
                }
            }
            // Irreducible leading term: move it to the remainder.
            remainder.comps[c].add_term(m, q.clone());
            work.comps[c].add_term(m, -&q);
        }
        remainder
    }

    pub fn is_member(&self, v: &ModVec) -> bool {
        self.reduce(v).is_zero()
    }

    fn interreduce(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.gens.len() {
                let g = self.gens.remove(i);
                let r = self.reduce(&g);
                if r.is_zero() {
                    changed = true;
                    continue;
                }
                if r != g {
                    changed = true;
                }
                let lead = leading(&r, self.order, &self.rank_of_comp).unwrap().2.clone();
                let inv = lead
                    .inverse()
                    .ok_or_else(|| Error::NonUnitLeading { coeff: format!("{lead}") })?;
                self.gens.insert(i, r.scale(&inv));
                i += 1;
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Re-check every S-pair of the final basis; all residuals must vanish.
    fn certify(&mut self) -> Result<()> {
        let mut cert = Vec::new();
        for i in 0..self.gens.len() {
            for j in (i + 1)..self.gens.len() {
                if let Some(s) = self.s_vector(i, j)? {
                    cert.push((i, j, self.reduce(&s).is_zero()));
                }
            }
        }
        self.certificate = cert;
        Ok(())
    }

    pub fn certificate_clean(&self) -> bool {
        self.certificate.iter().all(|&(_, _, ok)| ok)
    }
}

/// The sphere polynomial `f = z1 z1* + z2 z2* - 1` in the free cover.
pub fn sphere_poly() -> Poly {
    let mut f = Poly::zero();
    f.add_term(Monomial::new(1, 0, 1, 0), Scalar::one());
    f.add_term(Monomial::new(0, 1, 0, 1), Scalar::one());
    f.add_term(Monomial::ONE, Scalar::from_int(-1));
    f
}

/// Coefficient vector of `d(f)` in the basis `(dz1, dz2, dz1*, dz2*)`:
/// `(z1*, z2*, z1, z2)`.
pub fn relation_vector() -> ModVec {
    let mut v = ModVec::zero(4);
    v.comps[0] = Poly::term(Monomial::Z1S, Scalar::one());
    v.comps[1] = Poly::term(Monomial::Z2S, Scalar::one());
    v.comps[2] = Poly::term(Monomial::Z1, Scalar::one());
    v.comps[3] = Poly::term(Monomial::Z2, Scalar::one());
    v
}

/// Basis pairs `(i, j)`, `i < j`, of the rank-6 2-form carrier in the
/// generator order `(z1, z2, z1*, z2*)`.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn pair_index(i: usize, j: usize) -> Option<(usize, bool)> {
    if i == j {
        return None;
    }
    let (lo, hi, flip) = if i < j { (i, j, false) } else { (j, i, true) };
    let idx = PAIRS.iter().position(|&p| p == (lo, hi)).unwrap();
    Some((idx, flip))
}

/// Exterior derivatives of the coinvariant generators `z`, `z*`, `x` as
/// vectors in the rank-4 cover.
pub fn db_generators() -> [ModVec; 3] {
    let two = Scalar::from_int(2);
    let mut dz = ModVec::zero(4);
    dz.comps[0] = Poly::term(Monomial::Z2S, two.clone());
    dz.comps[3] = Poly::term(Monomial::Z1, two.clone());
    let mut dzs = ModVec::zero(4);
    dzs.comps[1] = Poly::term(Monomial::Z1S, two.clone());
    dzs.comps[2] = Poly::term(Monomial::Z2, two);
    let mut dx = ModVec::zero(4);
    dx.comps[0] = Poly::term(Monomial::Z1S, Scalar::one());
    dx.comps[1] = Poly::term(Monomial::Z2S, Scalar::from_int(-1));
    dx.comps[2] = Poly::term(Monomial::Z1, Scalar::one());
    dx.comps[3] = Poly::term(Monomial::Z2, Scalar::from_int(-1));
    [dz, dzs, dx]
}

fn comp_priority_rank4(order: Order) -> Vec<usize> {
    // Main: dz1 > dz2 > dz1* > dz2*. Mirror swaps the generator pairs.
    match order {
        Order::Main => vec![0, 1, 2, 3],
        Order::Mirror => vec![1, 0, 3, 2],
    }
}

fn comp_priority_rank6(order: Order) -> Vec<usize> {
    match order {
        Order::Main => (0..6).collect(),
        Order::Mirror => {
            // Map each pair through the generator permutation, re-sort, and
            // order lexicographically.
            let perm = [1usize, 0, 3, 2];
            let mut mapped: Vec<(usize, (usize, usize))> = PAIRS
                .iter()
                .enumerate()
                .map(|(idx, &(i, j))| {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    (idx, (a, b))
                })
                .collect();
            mapped.sort_by_key(|&(_, key)| key);
            let mut rank_of = vec![0usize; 6];
            for (rank, &(idx, _)) in mapped.iter().enumerate() {
                rank_of[idx] = rank;
            }
            rank_of
        }
    }
}

fn rank4_generators() -> Vec<ModVec> {
    let f = sphere_poly();
    let mut gens = Vec::new();
    for i in 0..4 {
        let mut v = ModVec::zero(4);
        v.comps[i] = f.clone();
        gens.push(v);
    }
    gens.push(relation_vector());
    gens
}

fn rank6_generators() -> Vec<ModVec> {
    let f = sphere_poly();
    let g = relation_vector();
    let mut gens = Vec::new();
    for p in 0..6 {
        let mut v = ModVec::zero(6);
        v.comps[p] = f.clone();
        gens.push(v);
    }
    // g /\ dz_k expanded into the ordered-pair basis with signs.
    for k in 0..4 {
        let mut v = ModVec::zero(6);
        for i in 0..4 {
            if let Some((idx, flip)) = pair_index(i, k) {
                let sign = if flip { Scalar::from_int(-1) } else { Scalar::one() };
                let contrib = g.comps[i].scale(&sign);
                v.comps[idx] = v.comps[idx].add(&contrib);
            }
        }
        gens.push(v);
    }
    gens
}

/// Cached bases for one monomial order.
pub struct FormBases {
    /// Relation submodule of the rank-4 1-form cover.
    pub rank4: ModuleBasis,
    /// Relation submodule of the rank-6 2-form cover.
    pub rank6: ModuleBasis,
    /// Rank-4 submodule augmented by `d z`, `d z*`, `d x`: membership in it
    /// decides horizontality.
    pub rank4_horizontal: ModuleBasis,
}

fn build_bases(order: Order) -> FormBases {
    let rank4 = ModuleBasis::complete(4, order, comp_priority_rank4(order), rank4_generators())
        .expect("rank-4 completion");
    let rank6 = ModuleBasis::complete(6, order, comp_priority_rank6(order), rank6_generators())
        .expect("rank-6 completion");
    let mut hor_gens = rank4_generators();
    hor_gens.extend(db_generators());
    let rank4_horizontal =
        ModuleBasis::complete(4, order, comp_priority_rank4(order), hor_gens)
            .expect("rank-4 horizontal completion");
    FormBases { rank4, rank6, rank4_horizontal }
}

static BASES_MAIN: OnceLock<FormBases> = OnceLock::new();
static BASES_MIRROR: OnceLock<FormBases> = OnceLock::new();

/// Access the cached bases, computing them on first use.
pub fn bases(order: Order) -> &'static FormBases {
    match order {
        Order::Main => BASES_MAIN.get_or_init(|| build_bases(Order::Main)),
        Order::Mirror => BASES_MIRROR.get_or_init(|| build_bases(Order::Mirror)),
    }
}

/// Bounded syzygy search: find all `(f_1..f_k)` with `deg f_i <= bound` and
/// `sum f_i v_i = 0`, by exact sparse linear algebra over `Q(i)`. Returns
/// the dimension of the solution space; zero certifies bounded freeness.
pub fn syzygy_nullity(vectors: &[ModVec], bound: u32) -> usize {
    assert!(!vectors.is_empty());
    let rank = vectors[0].rank();

    // Enumerate cover monomials of degree <= bound.
    let mut monos: Vec<Monomial> = Vec::new();
    let b = bound as u16;
    for a in 0..=b {
        for bb in 0..=(b - a) {
            for c in 0..=(b - a - bb) {
                for d in 0..=(b - a - bb - c) {
                    monos.push(Monomial::new(a, bb, c, d));
                }
            }
        }
    }

    // Unknown index: (vector index, monomial index).
    let n_unknowns = vectors.len() * monos.len();
    let col = |vi: usize, mi: usize| vi * monos.len() + mi;

    // Equations keyed by (component, product monomial).
    use std::collections::BTreeMap;
    let mut rows: BTreeMap<(usize, Monomial), BTreeMap<usize, GaussianRational>> = BTreeMap::new();
    for (vi, v) in vectors.iter().enumerate() {
        assert_eq!(v.rank(), rank);
        for (mi, m) in monos.iter().enumerate() {
            for (c, p) in v.comps.iter().enumerate() {
                for (pm, q) in &p.terms {
                    let target = (c, m.mul(pm));
                    let mut coeff = GaussianRational::zero();
                    for (&(ju, kw), g) in q.terms() {
                        assert!(ju == 0 && kw == 0, "syzygy check expects phase-free vectors");
                        coeff = &coeff + g;
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    let row = rows.entry(target).or_default();
                    let entry = row.entry(col(vi, mi)).or_insert_with(GaussianRational::zero);
                    *entry = &*entry + &coeff;
                    if entry.is_zero() {
                        row.remove(&col(vi, mi));
                    }
                }
            }
        }
    }

    // Sparse Gaussian elimination to compute the rank of the system.
    let mut pivots: BTreeMap<usize, BTreeMap<usize, GaussianRational>> = BTreeMap::new();
    for (_, mut row) in rows {
        loop {
            let Some((&lead, _)) = row.iter().next() else { break };
            if let Some(pivot) = pivots.get(&lead) {
                let factor = row.get(&lead).unwrap().clone();
                let pivot_lead = pivot.get(&lead).unwrap().clone();
                let scale = &factor * &pivot_lead.inverse().unwrap();
                let pivot = pivot.clone();
                for (c, q) in pivot {
                    let delta = &q * &scale;
                    let entry = row.entry(c).or_insert_with(GaussianRational::zero);
                    *entry = &*entry - &delta;
                    if entry.is_zero() {
                        row.remove(&c);
                    }
                }
            } else {
                pivots.insert(lead, row);
                break;
            }
        }
    }
    n_unknowns - pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank4_certificate_clean() {
        let b = bases(Order::Main);
        assert!(b.rank4.certificate_clean());
        assert!(b.rank6.certificate_clean());
        assert!(b.rank4_horizontal.certificate_clean());
    }

    #[test]
    fn relation_vector_reduces_to_zero() {
        let b = bases(Order::Main);
        assert!(b.rank4.is_member(&relation_vector()));
    }

    #[test]
    fn ideal_part_reduces_to_zero() {
        // f placed in the dz2 slot.
        let b = bases(Order::Main);
        let mut v = ModVec::zero(4);
        v.comps[1] = sphere_poly();
        assert!(b.rank4.is_member(&v));
    }

    #[test]
    fn random_multiples_reduce_to_zero() {
        let b = bases(Order::Main);
        let m = Monomial::new(1, 2, 0, 1);
        let mult = relation_vector().mul_monomial(&m, &Scalar::from_int(3));
        assert!(b.rank4.is_member(&mult));
        let mut v = ModVec::zero(6);
        v.comps[4] = sphere_poly().mul_monomial(&m, &Scalar::u_pow(2));
        assert!(b.rank6.is_member(&v));
    }

    #[test]
    fn db_generators_are_free_up_to_degree_four() {
        assert_eq!(syzygy_nullity(&db_generators(), 4), 0);
    }

    #[test]
    fn dependent_vectors_have_syzygies() {
        // v and 2v are dependent: f1 v + f2 (2v) = 0 with (f1, f2) = (2, -1).
        let [dz, _, _] = db_generators();
        let double = dz.scale(&Scalar::from_int(2));
        assert!(syzygy_nullity(&[dz, double], 1) > 0);
    }
}
