//! A∞ operations on Hom spaces, read off from the augmented (k+1)-copy.

use crate::algebra::{Field, FqMatrix};
use crate::dga::{Cedga, Gen};
use crate::error::{Error, Result};
use crate::reps::{Evaluator, Representation};

use super::multicopy::{corner_differentials, MGen};

/// Hom generator indices: y^∨, x^∨, then a^∨ by chord id.
pub const Y: usize = 0;
pub const X: usize = 1;

pub fn chord_index(id: usize) -> usize {
    id + 2
}

/// Coefficients in Mat_n(F_q) on y^∨, x^∨, a_1^∨, …
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomElement {
    pub coeffs: Vec<FqMatrix>,
}

impl HomElement {
    pub fn zero(n: usize, gens: usize) -> Self {
        HomElement {
            coeffs: vec![FqMatrix::zeros(n, n); gens],
        }
    }

    pub fn single(n: usize, gens: usize, gen: usize, m: FqMatrix) -> Self {
        let mut e = Self::zero(n, gens);
        e.coeffs[gen] = m;
        e
    }

    pub fn n(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|m| m.is_zero())
    }

    pub fn add(&self, f: &Field, o: &Self) -> Self {
        HomElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(f, b)).collect(),
        }
    }

    pub fn sub(&self, f: &Field, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn neg(&self, f: &Field) -> Self {
        HomElement {
            coeffs: self.coeffs.iter().map(|a| a.neg(f)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: u32) -> Self {
        HomElement {
            coeffs: self.coeffs.iter().map(|a| a.scale(f, c)).collect(),
        }
    }

    /// Generators with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// Flattened coordinates on the given generators, (generator, row, column) order.
    pub fn coordinates(&self, gens: &[usize]) -> Vec<u32> {
        gens.iter().flat_map(|&g| self.coeffs[g].data().iter().copied()).collect()
    }
}

#[derive(Clone, Debug)]
struct TemplateTerm {
    coef: i64,
    output: usize,
    /// Hom index of the mixed letter at word position w (copies w, w+1).
    mixed: Vec<usize>,
    /// Pure letters of copy w between mixed letters w-1 and w.
    segments: Vec<Vec<Gen>>,
}

/// Grading and filtration data for the Hom generators of one DGA.
#[derive(Clone, Debug)]
pub struct HomShape {
    /// |gen^∨| per Hom index.
    pub degrees: Vec<i64>,
    /// Filtration level: y^∨ is -1, x^∨ is 0, chords follow the triangular order from 1.
    pub levels: Vec<i64>,
}

impl HomShape {
    pub fn new(g: &Cedga) -> Self {
        let mut degrees = vec![0, 1];
        degrees.extend(g.generators.iter().map(|c| c.grading + 1));
        let mut levels = vec![-1, 0];
        levels.extend(std::iter::repeat_n(0, g.len()));
        for (pos, &id) in g.order.iter().enumerate() {
            levels[chord_index(id)] = pos as i64 + 1;
        }
        HomShape { degrees, levels }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn of_degree(&self, d: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// The single degree of a nonzero element, if homogeneous.
    pub fn degree_of(&self, e: &HomElement) -> Option<i64> {
        let mut ds = e.support().into_iter().map(|i| self.degrees[i]);
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }
}

fn hom_index(l: &MGen) -> usize {
    match *l {
        MGen::Y { .. } => Y,
        MGen::X { .. } => X,
        MGen::A { chord, .. } => chord_index(chord),
        MGen::T { .. } => unreachable!("t is never mixed"),
    }
}

fn pure_letter(l: &MGen) -> Gen {
    match *l {
        MGen::A { chord, deg, .. } => Gen::Chord { id: chord, deg },
        MGen::T { e, .. } => Gen::T(e),
        _ => unreachable!("dips are never pure"),
    }
}

fn sigma(degs: &[i64]) -> i64 {
    // degs[p-1] = |c_p^∨|
    let k = degs.len() as i64;
    let mut s = k * (k - 1) / 2;
    for p in 0..degs.len() {
        for q in p + 1..degs.len() {
            s += degs[p] * degs[q];
        }
    }
    s + degs.iter().skip(1).step_by(2).sum::<i64>()
}

/// The operations m_1, …, m_{max_k} of the representation category of one DGA.
#[derive(Clone, Debug)]
pub struct RepCategory {
    pub shape: HomShape,
    templates: Vec<Vec<TemplateTerm>>,
}

/// m_k with the pure representations of a fixed chain already substituted.
#[derive(Clone, Debug)]
pub struct PreparedOp {
    pub k: usize,
    n: usize,
    gens: usize,
    terms: Vec<(usize, Vec<usize>, Vec<FqMatrix>)>,
}

impl RepCategory {
    pub fn new(g: &Cedga, max_k: usize) -> Self {
        let shape = HomShape::new(g);
        let templates = (1..=max_k).map(|k| Self::templates(g, &shape, k)).collect();
        RepCategory { shape, templates }
    }

    pub fn max_k(&self) -> usize {
        self.templates.len()
    }

    fn templates(g: &Cedga, shape: &HomShape, k: usize) -> Vec<TemplateTerm> {
        let mut out = Vec::new();
        for (b, p) in corner_differentials(g, k + 1) {
            for (w, c) in p.terms() {
                let mut segments = vec![Vec::new()];
                let mut mixed = Vec::new();
                for l in w {
                    if l.is_pure() {
                        segments.last_mut().unwrap().push(pure_letter(l));
                    } else {
                        debug_assert_eq!(l.copies(), (mixed.len(), mixed.len() + 1));
                        mixed.push(hom_index(l));
                        segments.push(Vec::new());
                    }
                }
                debug_assert_eq!(mixed.len(), k);
                let degs: Vec<i64> = (1..=k).map(|p| shape.degrees[mixed[k - p]]).collect();
                let sign = if sigma(&degs) % 2 == 0 { 1 } else { -1 };
                out.push(TemplateTerm {
                    coef: sign * c,
                    output: hom_index(&b),
                    mixed,
                    segments,
                });
            }
        }
        out
    }

    /// `chain` is (ρ_1, …, ρ_{k+1}); the result computes
    /// m_k: Hom(ρ_k, ρ_{k+1}) ⊗ ⋯ ⊗ Hom(ρ_1, ρ_2) → Hom(ρ_1, ρ_{k+1}).
    pub fn prepare(&self, f: &Field, chain: &[&Representation]) -> Result<PreparedOp> {
        let k = chain
            .len()
            .checked_sub(1)
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::NonComposable("chain needs at least two objects".into()))?;
        if k > self.max_k() {
            return Err(Error::NonComposable(format!("m_{k} not prepared (max {})", self.max_k())));
        }
        let n = chain[0].n();
        if chain.iter().any(|r| r.n() != n || r.chords.len() + 2 != self.shape.len()) {
            return Err(Error::NonComposable("representations of different shapes".into()));
        }
        let evs = chain.iter().map(|r| Evaluator::new(f, r)).collect::<Result<Vec<_>>>()?;
        let mut terms = Vec::new();
        'term: for t in &self.templates[k - 1] {
            let mut coeffs = Vec::with_capacity(k + 1);
            for (w, seg) in t.segments.iter().enumerate() {
                match evs[w].word(seg) {
                    Some(m) if !m.is_zero() => coeffs.push(m),
                    _ => continue 'term,
                }
            }
            coeffs[0] = coeffs[0].scale(f, f.from_int(t.coef));
            terms.push((t.output, t.mixed.clone(), coeffs));
        }
        Ok(PreparedOp {
            k,
            n,
            gens: self.shape.len(),
            terms,
        })
    }

    pub fn m(&self, f: &Field, chain: &[&Representation], args: &[&HomElement]) -> Result<HomElement> {
        self.prepare(f, chain)?.apply(f, args)
    }
}

impl PreparedOp {
    /// `args[0]` ∈ Hom(ρ_k, ρ_{k+1}), …, `args[k-1]` ∈ Hom(ρ_1, ρ_2).
    pub fn apply(&self, f: &Field, args: &[&HomElement]) -> Result<HomElement> {
        if args.len() != self.k {
            return Err(Error::NonComposable(format!("m_{} given {} arguments", self.k, args.len())));
        }
        if args.iter().any(|a| a.coeffs.len() != self.gens || a.n() != self.n) {
            return Err(Error::NonComposable("argument of the wrong shape".into()));
        }
        let mut out = HomElement::zero(self.n, self.gens);
        'term: for (output, mixed, coeffs) in &self.terms {
            let mut acc = coeffs[0].clone();
            for (w, &gen) in mixed.iter().enumerate() {
                let m = &args[self.k - 1 - w].coeffs[gen];
                if m.is_zero() {
                    continue 'term;
                }
                acc = acc.mul(f, m).mul(f, &coeffs[w + 1]);
            }
            out.coeffs[*output].add_assign(f, &acc);
        }
        Ok(out)
    }
}

/// Degree of m_k.
pub fn op_degree(k: usize) -> i64 {
    2 - k as i64
}
