//! The algebraic k-copy DGA and its twist by a pure representation.
//!
//! Copies are 0-based internally; display uses 1-based superscripts.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::ncpoly::{Letter, NcPoly, Word};
use crate::algebra::{Field, FqMatrix};
use crate::dga::{Cedga, Gen};
use crate::error::{Error, Result};
use crate::reps::{Evaluator, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MGen {
    A { chord: usize, deg: i64, i: usize, j: usize },
    X { i: usize, j: usize },
    Y { i: usize, j: usize },
    T { i: usize, e: i64 },
}

impl MGen {
    /// (row copy, column copy); t_i counts as (i, i).
    pub fn copies(&self) -> (usize, usize) {
        match *self {
            MGen::A { i, j, .. } | MGen::X { i, j } | MGen::Y { i, j } => (i, j),
            MGen::T { i, .. } => (i, i),
        }
    }

    pub fn is_pure(&self) -> bool {
        let (i, j) = self.copies();
        i == j
    }
}

impl Letter for MGen {
    fn degree(&self) -> i64 {
        match self {
            MGen::A { deg, .. } => *deg,
            MGen::X { .. } | MGen::T { .. } => 0,
            MGen::Y { .. } => -1,
        }
    }

    fn combine(&self, next: &Self) -> Option<Option<Self>> {
        match (self, next) {
            (MGen::T { i, e }, MGen::T { i: i2, e: e2 }) if i == i2 => Some((e + e2 != 0).then_some(MGen::T { i: *i, e: e + e2 })),
            _ => None,
        }
    }
}

impl fmt::Display for MGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MGen::A { chord, i, j, .. } => write!(f, "g{chord}^{}{}", i + 1, j + 1),
            MGen::X { i, j } => write!(f, "x^{}{}", i + 1, j + 1),
            MGen::Y { i, j } => write!(f, "y^{}{}", i + 1, j + 1),
            MGen::T { i, e: 1 } => write!(f, "t{}", i + 1),
            MGen::T { i, e } => write!(f, "t{}^{e}", i + 1),
        }
    }
}

pub type MPoly = NcPoly<MGen>;
type PMat = Vec<Vec<MPoly>>;

fn zero_mat(k: usize) -> PMat {
    vec![vec![MPoly::zero(); k]; k]
}

fn identity(k: usize) -> PMat {
    let mut m = zero_mat(k);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = MPoly::one();
    }
    m
}

fn mat_mul(a: &PMat, b: &PMat) -> PMat {
    let k = a.len();
    let mut out = zero_mat(k);
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                if !b[l][j].is_zero() {
                    let p = a[i][l].mul(&b[l][j]);
                    out[i][j].add_assign(&p);
                }
            }
        }
    }
    out
}

fn mat_add(a: &PMat, b: &PMat) -> PMat {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect()).collect()
}

fn mat_scale(a: &PMat, c: i64) -> PMat {
    a.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect()
}

/// Which generator positions are kept as letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    Full,
    /// Only diagonal and (i, i+1) letters; every other generator is set to 0.
    /// Entry (0, k-1) of any product then consists of increasing composable
    /// words.
    Bidiagonal,
}

impl Support {
    fn keeps(self, i: usize, j: usize) -> bool {
        match self {
            Support::Full => true,
            Support::Bidiagonal => j == i || j == i + 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultiCopyDga {
    pub k: usize,
    pub support: Support,
    /// Differential on every non-t generator kept by `support`.
    pub differential: BTreeMap<MGen, MPoly>,
}

struct Builder {
    k: usize,
    a: Vec<PMat>,
    delta_x: PMat,
    x_inv_delta_inv: PMat,
}

impl Builder {
    fn new(g: &Cedga, k: usize, support: Support) -> Self {
        let letter = |gen: MGen| {
            let (i, j) = gen.copies();
            if support.keeps(i, j) {
                MPoly::letter(gen)
            } else {
                MPoly::zero()
            }
        };
        let a = g
            .generators
            .iter()
            .map(|c| {
                (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| {
                                letter(MGen::A {
                                    chord: c.id,
                                    deg: c.grading,
                                    i,
                                    j,
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut n = zero_mat(k);
        for i in 0..k {
            for j in i + 1..k {
                n[i][j] = letter(MGen::X { i, j });
            }
        }
        let x = mat_add(&identity(k), &n);
        // X⁻¹ = Σ_m (-N)^m, finite since N is strictly upper triangular
        let neg_n = mat_scale(&n, -1);
        let mut x_inv = identity(k);
        let mut pow = identity(k);
        for _ in 1..k {
            pow = mat_mul(&pow, &neg_n);
            x_inv = mat_add(&x_inv, &pow);
        }
        let diag = |e: i64| {
            let mut d = zero_mat(k);
            for (i, row) in d.iter_mut().enumerate() {
                row[i] = MPoly::letter(MGen::T { i, e });
            }
            d
        };
        Builder {
            k,
            a,
            delta_x: mat_mul(&diag(1), &x),
            x_inv_delta_inv: mat_mul(&x_inv, &diag(-1)),
        }
    }

    fn letter_matrix(&self, l: &Gen) -> PMat {
        match *l {
            Gen::Chord { id, .. } => self.a[id].clone(),
            Gen::T(e) => {
                let base = if e > 0 { &self.delta_x } else { &self.x_inv_delta_inv };
                let mut acc = identity(self.k);
                for _ in 0..e.unsigned_abs() {
                    acc = mat_mul(&acc, base);
                }
                acc
            }
        }
    }

    /// Φ applied to a base polynomial.
    fn phi(&self, p: &NcPoly<Gen>) -> PMat {
        let mut out = zero_mat(self.k);
        for (w, c) in p.terms() {
            let mut acc = mat_scale(&identity(self.k), c);
            for l in w {
                acc = mat_mul(&acc, &self.letter_matrix(l));
            }
            out = mat_add(&out, &acc);
        }
        out
    }
}

/// The k-copy DGA: ∂A = Φ(∂a) + YA − (−1)^{|a|}AY, ∂X = Δ⁻¹YΔX − XY, ∂Y = Y².
pub fn multi_copy_dga(g: &Cedga, k: usize) -> MultiCopyDga {
    multi_copy_dga_with(g, k, Support::Full)
}

pub fn multi_copy_dga_with(g: &Cedga, k: usize, support: Support) -> MultiCopyDga {
    let differential = build(g, k, support, &|i, j| support.keeps(i, j));
    MultiCopyDga { k, support, differential }
}

/// ∂ of the (1, k) generators of the k-copy with only bidiagonal letters kept.
pub fn corner_differentials(g: &Cedga, k: usize) -> BTreeMap<MGen, MPoly> {
    build(g, k, Support::Bidiagonal, &|i, j| i == 0 && j + 1 == k)
}

fn build(g: &Cedga, k: usize, support: Support, wanted: &dyn Fn(usize, usize) -> bool) -> BTreeMap<MGen, MPoly> {
    assert!(k >= 1, "k must be positive");
    let b = Builder::new(g, k, support);
    let keep = |i: usize, j: usize| support.keeps(i, j);
    let mut y = zero_mat(k);
    for i in 0..k {
        for j in i + 1..k {
            if keep(i, j) {
                y[i][j] = MPoly::letter(MGen::Y { i, j });
            }
        }
    }
    let mut differential = BTreeMap::new();
    for c in &g.generators {
        let phi = b.phi(&g.differential[c.id]);
        let ya = mat_mul(&y, &b.a[c.id]);
        let ay = mat_mul(&b.a[c.id], &y);
        let sign = if c.grading % 2 == 0 { -1 } else { 1 };
        let d = mat_add(&mat_add(&phi, &ya), &mat_scale(&ay, sign));
        for i in 0..k {
            for j in 0..k {
                if wanted(i, j) {
                    differential.insert(
                        MGen::A {
                            chord: c.id,
                            deg: c.grading,
                            i,
                            j,
                        },
                        d[i][j].clone(),
                    );
                }
            }
        }
    }
    let mut delta_inv = zero_mat(k);
    let mut delta = zero_mat(k);
    for i in 0..k {
        delta_inv[i][i] = MPoly::letter(MGen::T { i, e: -1 });
        delta[i][i] = MPoly::letter(MGen::T { i, e: 1 });
    }
    let mut x = identity(k);
    for i in 0..k {
        for j in i + 1..k {
            if keep(i, j) {
                x[i][j] = MPoly::letter(MGen::X { i, j });
            }
        }
    }
    let dx = mat_add(&mat_mul(&mat_mul(&mat_mul(&delta_inv, &y), &delta), &x), &mat_scale(&mat_mul(&x, &y), -1));
    let dy = mat_mul(&y, &y);
    for i in 0..k {
        for j in i + 1..k {
            if wanted(i, j) {
                differential.insert(MGen::X { i, j }, dx[i][j].clone());
                differential.insert(MGen::Y { i, j }, dy[i][j].clone());
            }
        }
    }
    differential
}

impl MultiCopyDga {
    pub fn d(&self, p: &MPoly) -> MPoly {
        p.derive(&|l: &MGen| self.differential.get(l).cloned().unwrap_or_default())
    }

    /// Generators whose ∂² is nonzero.
    pub fn d_squared_failures(&self) -> Vec<MGen> {
        self.differential.iter().filter(|(_, p)| !self.d(p).is_zero()).map(|(g, _)| *g).collect()
    }
}

/// A_0 l_1 A_1 ⋯ l_r A_r with matrix coefficients between the letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedTerm {
    pub coeffs: Vec<FqMatrix>,
    pub letters: Word<MGen>,
}

/// ∂^𝛒 on every generator of `mc`: pure chord letters a^{ii} become
/// a^{ii} + ρ_i(a), t_i becomes ρ_i(t). Fails if any constant term survives.
pub fn twisted_differential(f: &Field, mc: &MultiCopyDga, pure: &[Representation]) -> Result<BTreeMap<MGen, Vec<TwistedTerm>>> {
    if pure.len() != mc.k {
        return Err(Error::InvalidRepresentation(format!("expected {} representations, got {}", mc.k, pure.len())));
    }
    let n = pure[0].n();
    if pure.iter().any(|r| r.n() != n) {
        return Err(Error::InvalidRepresentation("representations of different sizes".into()));
    }
    let evs = pure.iter().map(|r| Evaluator::new(f, r)).collect::<Result<Vec<_>>>()?;
    let mut out = BTreeMap::new();
    for (gen, p) in &mc.differential {
        let mut terms = Vec::new();
        let mut constant = FqMatrix::zeros(n, n);
        for (w, c) in p.terms() {
            // partial expansions: (coeffs so far, letters so far)
            let mut partial = vec![(vec![FqMatrix::scalar(n, f.from_int(c))], Vec::new())];
            for l in w {
                let value = match *l {
                    MGen::T { i, e } => Some(evs[i].letter(&Gen::T(e)).expect("t evaluates")),
                    MGen::A { chord, deg, i, j } if i == j => evs[i].letter(&Gen::Chord { id: chord, deg }),
                    _ => None,
                };
                let keeps_letter = !matches!(l, MGen::T { .. });
                let mut next = Vec::new();
                for (coeffs, letters) in partial {
                    if let Some(v) = &value {
                        let mut cs: Vec<FqMatrix> = coeffs.clone();
                        let last = cs.last_mut().unwrap();
                        *last = last.mul(f, v);
                        if !last.is_zero() {
                            next.push((cs, letters.clone()));
                        }
                    }
                    if keeps_letter {
                        let mut cs = coeffs;
                        let mut ls: Vec<MGen> = letters;
                        cs.push(FqMatrix::identity(n));
                        ls.push(*l);
                        next.push((cs, ls));
                    }
                }
                partial = next;
            }
            for (coeffs, letters) in partial {
                if letters.is_empty() {
                    constant.add_assign(f, &coeffs[0]);
                } else {
                    terms.push(TwistedTerm { coeffs, letters });
                }
            }
        }
        if !constant.is_zero() {
            return Err(Error::InvalidRepresentation(format!("∂^ρ({gen}) has a nonzero constant term")));
        }
        out.insert(*gen, terms);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::build_dga;
    use crate::diagram::{catalog, CATALOG};
    use crate::reps::enumerate_reps;

    fn y(i: usize, j: usize) -> MGen {
        MGen::Y { i, j }
    }

    #[test]
    fn one_copy_is_the_original() {
        for name in CATALOG {
            let g = build_dga(&catalog(name).unwrap()).unwrap();
            let mc = multi_copy_dga(&g, 1);
            for c in &g.generators {
                let want = g.differential[c.id].substitute(&|l: &Gen| match *l {
                    Gen::Chord { id, deg } => MPoly::letter(MGen::A { chord: id, deg, i: 0, j: 0 }),
                    Gen::T(e) => MPoly::letter(MGen::T { i: 0, e }),
                });
                assert_eq!(
                    mc.differential[&MGen::A {
                        chord: c.id,
                        deg: c.grading,
                        i: 0,
                        j: 0
                    }],
                    want
                );
            }
        }
    }

    #[test]
    fn d_squared_vanishes() {
        for name in CATALOG {
            let g = build_dga(&catalog(name).unwrap()).unwrap();
            for k in 2..=3 {
                for support in [Support::Full, Support::Bidiagonal] {
                    let mc = multi_copy_dga_with(&g, k, support);
                    assert!(mc.d_squared_failures().is_empty(), "{name} k={k} {support:?}");
                }
            }
        }
    }

    #[test]
    fn y_differentials() {
        let g = build_dga(&catalog("trefoil").unwrap()).unwrap();
        assert!(multi_copy_dga(&g, 2).differential[&y(0, 1)].is_zero());
        let mc = multi_copy_dga(&g, 3);
        assert_eq!(mc.differential[&y(0, 2)], MPoly::term(1, vec![y(0, 1), y(1, 2)]));
    }

    #[test]
    fn differentials_are_paths_and_dips_stay_between() {
        for name in CATALOG {
            let g = build_dga(&catalog(name).unwrap()).unwrap();
            let mc = multi_copy_dga(&g, 3);
            for (gen, p) in &mc.differential {
                let (i, j) = gen.copies();
                for (w, _) in p.terms() {
                    let mut at = i;
                    for l in w {
                        let (a, b) = l.copies();
                        assert_eq!(a, at, "{name} {gen}");
                        at = b;
                        if matches!(gen, MGen::X { .. } | MGen::Y { .. }) {
                            assert!(i <= a && b <= j, "{name} {gen}");
                        }
                    }
                    assert_eq!(at, j);
                }
            }
        }
    }

    #[test]
    fn unknot_twist_has_dip_coefficient() {
        let f = Field::new(3).unwrap();
        let g = build_dga(&catalog("unknot").unwrap()).unwrap();
        let rho = enumerate_reps(&f, &g, 1).remove(0);
        let mc = multi_copy_dga(&g, 2);
        let tw = twisted_differential(&f, &mc, &[rho.clone(), rho]).unwrap();
        let b12 = MGen::A { chord: 0, deg: 1, i: 0, j: 1 };
        let x: Vec<&TwistedTerm> = tw[&b12].iter().filter(|t| t.letters == [MGen::X { i: 0, j: 1 }]).collect();
        let mut total = FqMatrix::zeros(1, 1);
        for t in x {
            total.add_assign(&f, &t.coeffs[0].mul(&f, &t.coeffs[1]));
        }
        assert_eq!(total, FqMatrix::scalar(1, f.neg(1)));
    }

    #[test]
    fn twisting_by_a_non_representation_fails() {
        let f = Field::new(2).unwrap();
        let g = build_dga(&catalog("unknot_s2").unwrap()).unwrap();
        let bogus = Representation {
            t: FqMatrix::identity(1),
            chords: vec![FqMatrix::zeros(1, 1); g.len()],
        };
        let mc = multi_copy_dga(&g, 2);
        assert!(twisted_differential(&f, &mc, &[bogus.clone(), bogus]).is_err());
    }
}
