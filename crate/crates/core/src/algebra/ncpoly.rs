//! Noncommutative polynomials with integer coefficients over a free monoid
//! of graded letters. Adjacent letters may combine (t^a t^b = t^{a+b}).

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

pub trait Letter: Clone + Ord + Hash + fmt::Debug {
    fn degree(&self) -> i64;

    /// Product of `self` followed by `next` when it collapses: `Some(None)`
    /// for the empty word, `Some(Some(l))` for a single letter.
    fn combine(&self, _next: &Self) -> Option<Option<Self>> {
        None
    }
}

pub type Word<L> = Vec<L>;

fn push_letter<L: Letter>(w: &mut Word<L>, l: L) {
    if let Some(last) = w.last() {
        if let Some(c) = last.combine(&l) {
            w.pop();
            if let Some(m) = c {
                push_letter(w, m);
            }
            return;
        }
    }
    w.push(l);
}

pub fn concat<L: Letter>(a: &[L], b: &[L]) -> Word<L> {
    let mut w = a.to_vec();
    for l in b {
        push_letter(&mut w, l.clone());
    }
    w
}

pub fn word_degree<L: Letter>(w: &[L]) -> i64 {
    w.iter().map(|l| l.degree()).sum()
}

fn checked(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NcPoly<L: Letter> {
    terms: BTreeMap<Word<L>, i64>,
}

impl<L: Letter> Default for NcPoly<L> {
    fn default() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }
}

impl<L: Letter> NcPoly<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(1, Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn letter(l: L) -> Self {
        Self::term(1, vec![l])
    }

    pub fn term(c: i64, w: Word<L>) -> Self {
        let mut p = Self::zero();
        let mut norm = Vec::new();
        for l in w {
            push_letter(&mut norm, l);
        }
        p.add_term(c, norm);
        p
    }

    /// Adds c·w; `w` must already be normalized.
    pub fn add_term(&mut self, c: i64, w: Word<L>) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = checked(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[L]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<L>, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (w, &c) in &o.terms {
            self.add_term(c, w.clone());
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, &x)| (w.clone(), x.checked_mul(c).expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, &c1) in &self.terms {
            for (w2, &c2) in &o.terms {
                out.add_term(c1.checked_mul(c2).expect("coefficient overflow"), concat(w1, w2));
            }
        }
        out
    }

    /// Degrees of all terms, if they agree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|w| word_degree(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Algebra homomorphism determined by letter images.
    pub fn substitute<M: Letter>(&self, f: &impl Fn(&L) -> NcPoly<M>) -> NcPoly<M> {
        let mut out = NcPoly::zero();
        for (w, &c) in &self.terms {
            let mut acc = NcPoly::constant(c);
            for l in w {
                acc = acc.mul(&f(l));
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    /// Extends a letter map by the graded Leibniz rule
    /// D(uv) = D(u)v + (-1)^{|u|} u D(v).
    pub fn derive(&self, d: &impl Fn(&L) -> NcPoly<L>) -> Self {
        let mut out = Self::zero();
        for (w, &c) in &self.terms {
            let mut prefix_deg = 0;
            for i in 0..w.len() {
                let dl = d(&w[i]);
                if !dl.is_zero() {
                    let sign = if prefix_deg % 2 == 0 { c } else { -c };
                    let left = NcPoly::term(1, w[..i].to_vec());
                    let right = NcPoly::term(1, w[i + 1..].to_vec());
                    out.add_assign(&left.mul(&dl).mul(&right).scale(sign));
                }
                prefix_deg += w[i].degree();
            }
        }
        out
    }
}

impl<L: Letter + fmt::Display> fmt::Display for NcPoly<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            let (neg, abs) = (c < 0, c.unsigned_abs());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if w.is_empty() {
                write!(f, "{abs}")?;
                continue;
            }
            if abs != 1 {
                write!(f, "{abs}")?;
            }
            for (j, l) in w.iter().enumerate() {
                if j > 0 || abs != 1 {
                    write!(f, "·")?;
                }
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

impl<L: Letter> fmt::Debug for NcPoly<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
