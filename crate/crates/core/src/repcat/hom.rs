//! Hom complexes as explicit F_q-linear maps, cohomology and unit counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{gl_order, Field, FqMatrix};
use crate::error::{Error, Result};
use crate::reps::Representation;

use super::ainf::{HomElement, PreparedOp, RepCategory, Y};

/// Hom(ρ₁, ρ₂) with m₁ as a matrix per degree, basis ordered by
/// (generator, row, column).
#[derive(Clone, Debug, Serialize)]
pub struct HomComplex {
    pub n: usize,
    /// Hom generator indices of each degree.
    pub generators: BTreeMap<i64, Vec<usize>>,
    pub dims: BTreeMap<i64, usize>,
    /// m₁: Hom^i → Hom^{i+1}, acting on column vectors.
    #[serde(skip)]
    pub m1: BTreeMap<i64, FqMatrix>,
    pub cohomology: BTreeMap<i64, usize>,
    pub coboundaries: BTreeMap<i64, usize>,
    #[serde(skip)]
    op: PreparedOp,
    #[serde(skip)]
    field: Field,
}

fn unit(n: usize, u: usize) -> FqMatrix {
    let mut m = FqMatrix::zeros(n, n);
    m.set(u / n, u % n, 1);
    m
}

impl HomComplex {
    pub fn new(f: &Field, cat: &RepCategory, r1: &Representation, r2: &Representation) -> Result<Self> {
        let n = r1.n();
        let nn = n * n;
        let op = cat.prepare(f, &[r1, r2])?;
        let mut generators: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &d) in cat.shape.degrees.iter().enumerate() {
            generators.entry(d).or_default().push(i);
        }
        let dims: BTreeMap<i64, usize> = generators.iter().map(|(&d, gs)| (d, gs.len() * nn)).collect();
        let mut m1 = BTreeMap::new();
        for (&d, gs) in &generators {
            let target = generators.get(&(d + 1)).cloned().unwrap_or_default();
            let mut m = FqMatrix::zeros(target.len() * nn, gs.len() * nn);
            for (k, &g) in gs.iter().enumerate() {
                for u in 0..nn {
                    let e = HomElement::single(n, cat.shape.len(), g, unit(n, u));
                    let image = op.apply(f, &[&e])?.coordinates(&target);
                    for (row, &v) in image.iter().enumerate() {
                        m.set(row, k * nn + u, v);
                    }
                }
            }
            m1.insert(d, m);
        }
        let ranks: BTreeMap<i64, usize> = m1.iter().map(|(&d, m)| (d, m.rank(f))).collect();
        let coboundaries: BTreeMap<i64, usize> = dims.keys().map(|&d| (d, ranks.get(&(d - 1)).copied().unwrap_or(0))).collect();
        let cohomology = dims.iter().map(|(&d, &dim)| (d, dim - ranks[&d] - coboundaries[&d])).collect();
        Ok(HomComplex {
            n,
            generators,
            dims,
            m1,
            cohomology,
            coboundaries,
            op,
            field: f.clone(),
        })
    }

    pub fn dim(&self, d: i64) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn h(&self, d: i64) -> usize {
        self.cohomology.get(&d).copied().unwrap_or(0)
    }

    pub fn b(&self, d: i64) -> usize {
        self.coboundaries.get(&d).copied().unwrap_or(0)
    }

    pub fn m1_element(&self, e: &HomElement) -> Result<HomElement> {
        self.op.apply(&self.field, &[e])
    }

    /// Basis of degree-0 cocycles, as coordinate vectors.
    pub fn cocycles0(&self) -> Vec<Vec<u32>> {
        self.m1.get(&0).map(|m| m.nullspace(&self.field)).unwrap_or_default()
    }

    pub fn element_from_coordinates(&self, d: i64, coords: &[u32], gens: usize) -> HomElement {
        let nn = self.n * self.n;
        let mut e = HomElement::zero(self.n, gens);
        for (k, &g) in self.generators[&d].iter().enumerate() {
            e.coeffs[g] = FqMatrix::from_vec(self.n, self.n, coords[k * nn..(k + 1) * nn].to_vec());
        }
        e
    }

    /// #{α ∈ Z⁰ : y^∨-coefficient of α invertible}.
    pub fn unit_count(&self) -> BigInt {
        let f = &self.field;
        let nn = self.n * self.n;
        let z = self.cocycles0();
        // y^∨ is the first degree-0 generator
        debug_assert_eq!(self.generators[&0][0], Y);
        let proj: Vec<Vec<u32>> = z.iter().map(|v| v[..nn].to_vec()).collect();
        let w = if proj.is_empty() { Vec::new() } else { row_basis(f, &proj) };
        let q = BigInt::from(f.order());
        let fibre = q.pow((z.len() - w.len()) as u32);
        let invertible = if w.len() == nn {
            gl_order(self.n as u32, f.order() as u64)
        } else {
            count_invertible_in_span(f, self.n, &w)
        };
        fibre * invertible
    }
}

fn row_basis(f: &Field, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = FqMatrix::from_rows(rows);
    let e = m.echelon(f);
    e.rref.to_rows().into_iter().take(e.pivots.len()).collect()
}

fn count_invertible_in_span(f: &Field, n: usize, basis: &[Vec<u32>]) -> BigInt {
    let q = f.order() as u64;
    let total = q.pow(basis.len() as u32);
    let mut count = BigInt::zero();
    for idx in 0..total {
        let mut v = vec![0; n * n];
        let mut rest = idx;
        for b in basis {
            let c = (rest % q) as u32;
            rest /= q;
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        if FqMatrix::from_vec(n, n, v).is_invertible(f) {
            count += 1;
        }
    }
    count
}

pub fn hom_complex(f: &Field, cat: &RepCategory, r1: &Representation, r2: &Representation) -> Result<HomComplex> {
    HomComplex::new(f, cat, r1, r2)
}

/// |Aut(ρ)| = #{unit cocycles in Hom⁰(ρ, ρ)} / |B⁰(ρ, ρ)|.
pub fn aut_order(f: &Field, cat: &RepCategory, rho: &Representation) -> Result<BigInt> {
    let h = hom_complex(f, cat, rho, rho)?;
    aut_order_of(&h, f.order() as u64)
}

pub fn aut_order_of(h: &HomComplex, q: u64) -> Result<BigInt> {
    let units = h.unit_count();
    let b = BigInt::from(q).pow(h.b(0) as u32);
    if !(&units % &b).is_zero() {
        return Err(Error::Internal("unit count not divisible by |B⁰|".into()));
    }
    Ok(units / b)
}

/// β ∈ Hom⁰(ρ₂, ρ₁) with m₁(β) = 0 and m₂(α, β) = −y^∨, found by solving
/// the linear system in the coordinates of β.
pub fn inverse_cocycle(f: &Field, cat: &RepCategory, r1: &Representation, r2: &Representation, alpha: &HomElement) -> Result<HomElement> {
    let n = r1.n();
    let nn = n * n;
    let gens = cat.shape.len();
    let deg0 = cat.shape.of_degree(0);
    let deg1 = cat.shape.of_degree(1);
    if alpha.support().iter().any(|g| cat.shape.degrees[*g] != 0) {
        return Err(Error::InvalidRepresentation("α is not of degree 0".into()));
    }
    if !cat.m(f, &[r1, r2], &[alpha])?.is_zero() {
        return Err(Error::InvalidRepresentation("α is not a cocycle".into()));
    }
    if !alpha.coeffs[Y].is_invertible(f) {
        return Err(Error::Singular("y^∨-coefficient of α".into()));
    }
    let m2 = cat.prepare(f, &[r2, r1, r2])?;
    let m1 = cat.prepare(f, &[r2, r1])?;
    let unknowns = deg0.len() * nn;
    let rows = deg0.len() * nn + deg1.len() * nn;
    let mut sys = FqMatrix::zeros(rows, unknowns);
    for (k, &g) in deg0.iter().enumerate() {
        for u in 0..nn {
            let beta = HomElement::single(n, gens, g, unit(n, u));
            let col: Vec<u32> = m2
                .apply(f, &[alpha, &beta])?
                .coordinates(&deg0)
                .into_iter()
                .chain(m1.apply(f, &[&beta])?.coordinates(&deg1))
                .collect();
            for (r, &v) in col.iter().enumerate() {
                sys.set(r, k * nn + u, v);
            }
        }
    }
    let mut rhs = vec![0; rows];
    let minus_one = f.neg(1);
    for i in 0..n {
        rhs[i * n + i] = minus_one;
    }
    let (x, _) = sys.solve_affine(f, &rhs).ok_or_else(|| Error::Internal("no inverse cocycle".into()))?;
    let mut beta = HomElement::zero(n, gens);
    for (k, &g) in deg0.iter().enumerate() {
        beta.coeffs[g] = FqMatrix::from_vec(n, n, x[k * nn..(k + 1) * nn].to_vec());
    }
    Ok(beta)
}

/// Π_{i<0} q^{(−1)^{i+1} dim H^i} as an exponent of q.
pub fn negative_cohomology_exponent(h: &HomComplex) -> i64 {
    h.cohomology
        .iter()
        .filter(|(&d, _)| d < 0)
        .map(|(&d, &dim)| if d % 2 == 0 { -(dim as i64) } else { dim as i64 })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::all_matrices;
    use crate::diagram::CATALOG;
    use crate::repcat::ainf::chord_index;
    use crate::repcat::ainf::tests::setup;
    use crate::reps::derivation;
    use std::collections::HashMap;

    #[test]
    fn unknot_complex() {
        let (f, _, cat, reps) = setup("unknot", 3, 1, 1);
        let h = hom_complex(&f, &cat, &reps[0], &reps[0]).unwrap();
        assert_eq!(h.dims, BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert!(h.m1[&0].is_zero());
        assert_eq!(h.h(0), 1);
    }

    #[test]
    fn trefoil_has_no_negative_cohomology() {
        let (f, _, cat, reps) = setup("trefoil", 2, 1, 1);
        for r in &reps {
            let h = hom_complex(&f, &cat, r, r).unwrap();
            assert!(h.cohomology.iter().all(|(&d, &dim)| d >= 0 || dim == 0));
            assert_eq!(negative_cohomology_exponent(&h), 0);
        }
    }

    #[test]
    fn dimensions_and_m1_squared() {
        for name in CATALOG {
            for (q, n) in [(2, 1), (3, 1), (2, 2)] {
                let (f, g, cat, reps) = setup(name, q, n, 1);
                for r1 in reps.iter().take(6) {
                    for r2 in reps.iter().take(6) {
                        let h = hom_complex(&f, &cat, r1, r2).unwrap();
                        for (&d, &dim) in &h.dims {
                            let chords = g.generators.iter().filter(|c| c.grading + 1 == d).count();
                            let extra = usize::from(d == 0) + usize::from(d == 1);
                            assert_eq!(dim, n * n * (chords + extra));
                            if let Some(next) = h.m1.get(&(d + 1)) {
                                assert!(next.mul(&f, &h.m1[&d]).is_zero(), "{name}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_orders() {
        for q in [2, 3] {
            let (f, _, cat, reps) = setup("unknot", q, 1, 1);
            assert_eq!(aut_order(&f, &cat, &reps[0]).unwrap(), BigInt::from(q - 1));
            let (f, _, cat, reps) = setup("unknot", q, 2, 1);
            assert_eq!(aut_order(&f, &cat, &reps[0]).unwrap(), gl_order(2, q));
        }
        let (f, _, cat, reps) = setup("trefoil", 2, 1, 1);
        for r in &reps {
            assert_eq!(aut_order(&f, &cat, r).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn inverse_cocycles() {
        let (f, _, cat, reps) = setup("trefoil", 3, 1, 2);
        let gens = cat.shape.len();
        let minus_y = HomElement::single(1, gens, Y, FqMatrix::scalar(1, f.neg(1)));
        for r in &reps {
            assert_eq!(inverse_cocycle(&f, &cat, r, r, &minus_y).unwrap(), minus_y);
            // scalars commute with everything, so M y^∨ is a cocycle
            let alpha = HomElement::single(1, gens, Y, FqMatrix::scalar(1, 2));
            let beta = inverse_cocycle(&f, &cat, r, r, &alpha).unwrap();
            assert_eq!(cat.m(&f, &[r, r, r], &[&alpha, &beta]).unwrap(), minus_y);
            assert!(cat.m(&f, &[r, r], &[&beta]).unwrap().is_zero());
            let zero = HomElement::zero(1, gens);
            assert!(matches!(inverse_cocycle(&f, &cat, r, r, &zero), Err(Error::Singular(_))));
        }
        // figure8 has degree -1 chords, so β picks up correction terms
        let (f, _, cat, reps) = setup("figure8", 3, 1, 2);
        for r1 in &reps {
            for r2 in &reps {
                let h = hom_complex(&f, &cat, r1, r2).unwrap();
                for z in h.cocycles0() {
                    let alpha = h.element_from_coordinates(0, &z, cat.shape.len());
                    match inverse_cocycle(&f, &cat, r1, r2, &alpha) {
                        Ok(beta) => {
                            let one = HomElement::single(1, cat.shape.len(), Y, FqMatrix::scalar(1, f.neg(1)));
                            assert_eq!(cat.m(&f, &[r2, r1, r2], &[&alpha, &beta]).unwrap(), one);
                        }
                        Err(e) => assert!(matches!(e, Error::Singular(_)) && !alpha.coeffs[Y].is_invertible(&f)),
                    }
                }
            }
        }
    }

    /// m₁(My^∨ − ΣK(a)a^∨) = 0 exactly when Mρ₂(t) = ρ₁(t)M and
    /// Mρ₂(a) − ρ₁(a)M = K̃(∂a) for every chord a.
    #[test]
    fn cocycle_criterion() {
        for name in ["figure8", "trefoil", "unknot"] {
            for (q, n) in [(2, 1), (3, 1), (2, 2)] {
                let (f, g, cat, reps) = setup(name, q, n, 1);
                let neg = g.chords_of_grading(-1);
                let mats: Vec<FqMatrix> = all_matrices(&f, n).collect();
                let pairs: Vec<(&Representation, &Representation)> = reps.iter().flat_map(|a| reps.iter().map(move |b| (a, b))).take(12).collect();
                for (r1, r2) in pairs {
                    let choices = mats.len().pow(neg.len() as u32);
                    for m in mats.iter().step_by(if n == 1 { 1 } else { 3 }) {
                        for idx in 0..choices {
                            let mut k = HashMap::new();
                            let mut alpha = HomElement::single(n, cat.shape.len(), Y, m.clone());
                            let mut rest = idx;
                            for &a in &neg {
                                let km = mats[rest % mats.len()].clone();
                                rest /= mats.len();
                                alpha.coeffs[chord_index(a)] = km.neg(&f);
                                k.insert(a, km);
                            }
                            let is_cocycle = cat.m(&f, &[r1, r2], &[&alpha]).unwrap().is_zero();
                            let conditions = m.mul(&f, &r2.t) == r1.t.mul(&f, m)
                                && g.generators.iter().all(|c| {
                                    let lhs = m.mul(&f, &r2.chords[c.id]).sub(&f, &r1.chords[c.id].mul(&f, m));
                                    lhs == derivation(&f, r1, r2, &k, &g.differential[c.id]).unwrap()
                                });
                            assert_eq!(is_cocycle, conditions, "{name}");
                        }
                    }
                }
            }
        }
    }
}
