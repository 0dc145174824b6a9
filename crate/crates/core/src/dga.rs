//! Chekanov–Eliashberg DGA of a front via the Ng resolution.
//!
//! Disks are traced leftward from their positive corner as a pair of
//! boundary strands (upper, lower) until they close at a left cusp. A right
//! cusp additionally contributes the constant 1 from the loop it becomes
//! after resolution.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::algebra::ncpoly::{word_degree, Letter, NcPoly, Word};
use crate::diagram::{Event, FrontDiagram, MaslovPotential};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Chord { id: usize, deg: i64 },
    T(i64),
}

impl Letter for Gen {
    fn degree(&self) -> i64 {
        match self {
            Gen::Chord { deg, .. } => *deg,
            Gen::T(_) => 0,
        }
    }

    fn combine(&self, next: &Self) -> Option<Option<Self>> {
        match (self, next) {
            (Gen::T(a), Gen::T(b)) => Some((a + b != 0).then_some(Gen::T(a + b))),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Chord { id, .. } => write!(f, "g{id}"),
            Gen::T(1) => write!(f, "t"),
            Gen::T(e) => write!(f, "t^{e}"),
        }
    }
}

pub type Poly = NcPoly<Gen>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Crossing { event: usize },
    RightCusp { event: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordGenerator {
    pub id: usize,
    pub name: String,
    pub grading: i64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub positive: usize,
    pub word: Word<Gen>,
    pub sign: i64,
}

#[derive(Clone, Debug)]
pub struct Cedga {
    pub generators: Vec<ChordGenerator>,
    pub differential: Vec<Poly>,
    pub disks: Vec<Disk>,
    /// Chord ids in an order where each differential only involves earlier chords.
    pub order: Vec<usize>,
}

struct Search<'a> {
    d: &'a FrontDiagram,
    chord_of_event: Vec<Option<Gen>>,
    even: Vec<bool>,
    memo: RefCell<HashMap<(usize, usize, usize), Rc<Vec<(Word<Gen>, i64)>>>>,
}

fn wrap(pre: Option<Gen>, w: &[Gen], post: Option<Gen>) -> Word<Gen> {
    let mut out = Vec::with_capacity(w.len() + 2);
    out.extend(pre);
    out.extend_from_slice(w);
    out.extend(post);
    out
}

impl Search<'_> {
    /// Orientation signs: at a crossing of even degree the bottom and right
    /// quadrants carry -1. A right quadrant is never a corner here.
    fn bottom_sign(&self, event: usize) -> i64 {
        if self.even[event] {
            -1
        } else {
            1
        }
    }

    /// All ways to complete, leftward from slice `s`, a disk piece whose
    /// upper and lower boundaries sit at positions `u < l`. Words read the
    /// upper boundary leftward and then the lower boundary rightward.
    fn walk(&self, s: usize, u: usize, l: usize) -> Rc<Vec<(Word<Gen>, i64)>> {
        if let Some(r) = self.memo.borrow().get(&(s, u, l)) {
            return r.clone();
        }
        let r = Rc::new(self.walk_uncached(s, u, l));
        self.memo.borrow_mut().insert((s, u, l), r.clone());
        r
    }

    fn walk_uncached(&self, s: usize, u: usize, l: usize) -> Vec<(Word<Gen>, i64)> {
        let mut out = Vec::new();
        if s == 0 {
            return out;
        }
        let e = s - 1;
        match self.d.events()[e] {
            Event::LeftCusp(c) => {
                if u == c && l == c + 1 {
                    out.push((Vec::new(), 1));
                } else if ![c, c + 1].contains(&u) && ![c, c + 1].contains(&l) {
                    let sh = |x: usize| if x < c { x } else { x - 2 };
                    out.extend(self.walk(e, sh(u), sh(l)).iter().cloned());
                }
            }
            Event::RightCusp(c) => {
                let sh = |x: usize| if x < c { x } else { x + 2 };
                let (nu, nl) = (sh(u), sh(l));
                out.extend(self.walk(e, nu, nl).iter().cloned());
                if nu < c && nl > c + 1 {
                    // The boundary runs around the outside of the loop and
                    // the piece splits in two. The upper piece ends on c or
                    // c+1, the lower one starts on c or c+1; ending on c costs
                    // a top corner at the cusp chord, starting on c+1 a
                    // bottom corner.
                    let b = self.chord_of_event[e].unwrap();
                    for (mid_u, mid_l) in [(c + 1, c), (c, c), (c + 1, c + 1), (c, c + 1)] {
                        let corners = usize::from(mid_u == c) + usize::from(mid_l == c + 1);
                        let upper = self.walk(e, nu, mid_u);
                        if upper.is_empty() {
                            continue;
                        }
                        let lower = self.walk(e, mid_l, nl);
                        for (w1, s1) in upper.iter() {
                            for (w2, s2) in lower.iter() {
                                let mut w = w1.clone();
                                w.extend(std::iter::repeat_n(b, corners));
                                w.extend_from_slice(w2);
                                out.push((w, s1 * s2));
                            }
                        }
                    }
                }
            }
            Event::Basepoint(b) => {
                let pre = (u == b).then_some(Gen::T(1));
                let post = (l == b).then_some(Gen::T(-1));
                for (w, sg) in self.walk(e, u, l).iter() {
                    out.push((wrap(pre, w, post), *sg));
                }
            }
            Event::Crossing(c) => {
                if u == c && l == c + 1 {
                    return out;
                }
                let letter = self.chord_of_event[e].unwrap();
                // (new position, corner taken, sign factor)
                let ups: Vec<(usize, bool, i64)> = if u == c {
                    vec![(c + 1, false, 1)]
                } else if u == c + 1 {
                    vec![(c, false, 1), (c + 1, true, self.bottom_sign(e))]
                } else {
                    vec![(u, false, 1)]
                };
                let lows: Vec<(usize, bool, i64)> = if l == c + 1 {
                    vec![(c, false, 1)]
                } else if l == c {
                    vec![(c + 1, false, 1), (c, true, 1)]
                } else {
                    vec![(l, false, 1)]
                };
                for &(nu, cu, su) in &ups {
                    for &(nl, cl, sl) in &lows {
                        if nu >= nl {
                            continue;
                        }
                        let pre = cu.then_some(letter);
                        let post = cl.then_some(letter);
                        for (w, sg) in self.walk(e, nu, nl).iter() {
                            out.push((wrap(pre, w, post), sg * su * sl));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn build_dga(d: &FrontDiagram) -> Result<Cedga> {
    if !d.is_plat() {
        return Err(Error::Internal("disk enumeration needs a plat front".into()));
    }
    let ci = d.classical_invariants();
    let mu: MaslovPotential = ci.potential.ok_or(Error::NonzeroRotation(ci.rotation))?;

    let mut generators = Vec::new();
    let mut chord_of_event = vec![None; d.events().len()];
    let mut even = vec![false; d.events().len()];
    let (mut na, mut nb) = (0, 0);
    for (e, ev) in d.events().iter().enumerate() {
        let (grading, provenance, name) = match ev {
            Event::Crossing(_) => {
                na += 1;
                (d.crossing_grading(&mu, e), Provenance::Crossing { event: e }, format!("a{na}"))
            }
            Event::RightCusp(_) => {
                nb += 1;
                (1, Provenance::RightCusp { event: e }, format!("b{nb}"))
            }
            _ => continue,
        };
        let id = generators.len();
        chord_of_event[e] = Some(Gen::Chord { id, deg: grading });
        even[e] = grading.rem_euclid(2) == 0;
        generators.push(ChordGenerator { id, name, grading, provenance });
    }

    let search = Search {
        d,
        chord_of_event,
        even,
        memo: RefCell::new(HashMap::new()),
    };
    let mut disks = Vec::new();
    let mut differential = vec![Poly::zero(); generators.len()];
    for g in &generators {
        let mut found = Vec::new();
        match g.provenance {
            Provenance::Crossing { event } => {
                let c = d.events()[event].position();
                found.extend(search.walk(event, c, c + 1).iter().cloned());
            }
            Provenance::RightCusp { event } => {
                let c = d.events()[event].position();
                found.push((Vec::new(), 1));
                found.extend(search.walk(event, c, c + 1).iter().cloned());
            }
        }
        for (word, sign) in found {
            if word_degree(&word) != g.grading - 1 {
                return Err(Error::Internal(format!(
                    "disk at {} has negative corners of total degree {}",
                    g.name,
                    word_degree(&word)
                )));
            }
            differential[g.id].add_assign(&Poly::term(sign, word.clone()));
            disks.push(Disk { positive: g.id, word, sign });
        }
    }

    let order = triangular_order(&differential).ok_or_else(|| Error::Internal("differential admits no triangular chord order".into()))?;
    Ok(Cedga {
        generators,
        differential,
        disks,
        order,
    })
}

fn chords_in(p: &Poly) -> Vec<usize> {
    let mut v: Vec<usize> = p
        .terms()
        .flat_map(|(w, _)| {
            w.iter()
                .filter_map(|l| match l {
                    Gen::Chord { id, .. } => Some(*id),
                    Gen::T(_) => None,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn triangular_order(diff: &[Poly]) -> Option<Vec<usize>> {
    let n = diff.len();
    let deps: Vec<Vec<usize>> = diff.iter().map(chords_in).collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n).find(|&i| !placed[i] && deps[i].iter().all(|&j| placed[j]))?;
        placed[next] = true;
        order.push(next);
    }
    Some(order)
}

impl Cedga {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn letter(&self, id: usize) -> Gen {
        Gen::Chord {
            id,
            deg: self.generators[id].grading,
        }
    }

    pub fn grading(&self, id: usize) -> i64 {
        self.generators[id].grading
    }

    /// Chord ids of a given grading, in id order.
    pub fn chords_of_grading(&self, g: i64) -> Vec<usize> {
        self.generators.iter().filter(|c| c.grading == g).map(|c| c.id).collect()
    }

    /// Extend the differential to a polynomial by the Leibniz rule.
    pub fn d(&self, p: &Poly) -> Poly {
        p.derive(&|l: &Gen| match l {
            Gen::Chord { id, .. } => self.differential[*id].clone(),
            Gen::T(_) => Poly::zero(),
        })
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in p.terms().enumerate() {
            let (neg, abs) = (c < 0, c.unsigned_abs());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let letters: Vec<String> = w
                .iter()
                .map(|l| match l {
                    Gen::Chord { id, .. } => self.generators[*id].name.clone(),
                    Gen::T(1) => "t".into(),
                    Gen::T(e) => format!("t^{e}"),
                })
                .collect();
            match (abs, letters.is_empty()) {
                (_, true) => out.push_str(&abs.to_string()),
                (1, false) => out.push_str(&letters.join(" ")),
                _ => out.push_str(&format!("{abs} {}", letters.join(" "))),
            }
        }
        out
    }

    /// Copy with the sign of one differential term flipped.
    pub fn with_flipped_sign(&self, gen: usize, term: usize) -> Cedga {
        let mut g = self.clone();
        let (w, c) = {
            let (w, c) = self.differential[gen].terms().nth(term).expect("term index");
            (w.clone(), c)
        };
        g.differential[gen].add_term(-2 * c, w);
        g
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DgaReport {
    pub degree_ok: bool,
    pub d_squared_zero: bool,
    /// First failure: generator name and offending word.
    pub witness: Option<String>,
}

impl DgaReport {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.d_squared_zero
    }
}

pub fn verify_dga(g: &Cedga) -> DgaReport {
    let mut report = DgaReport {
        degree_ok: true,
        d_squared_zero: true,
        witness: None,
    };
    for c in &g.generators {
        let dp = &g.differential[c.id];
        for (w, _) in dp.terms() {
            if word_degree(w) != c.grading - 1 {
                report.degree_ok = false;
                report
                    .witness
                    .get_or_insert_with(|| format!("deg: d({}) contains {}", c.name, g.format_poly(&Poly::term(1, w.clone()))));
            }
        }
        let dd = g.d(dp);
        let first = dd.terms().next().map(|(w, c)| (w.clone(), c));
        if let Some((w, coeff)) = first {
            report.d_squared_zero = false;
            report
                .witness
                .get_or_insert_with(|| format!("d^2({}) has coefficient {coeff} on {}", c.name, g.format_poly(&Poly::term(1, w))));
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub counts: BTreeMap<i64, usize>,
    pub chi_star: i64,
}

pub fn grading_census(g: &Cedga) -> Census {
    let mut counts = BTreeMap::new();
    for c in &g.generators {
        *counts.entry(c.grading).or_insert(0) += 1;
    }
    let chi_star = counts
        .iter()
        .map(|(&i, &r)| {
            let r = r as i64;
            if i >= 0 {
                if i % 2 == 0 {
                    r
                } else {
                    -r
                }
            } else if (i + 1).rem_euclid(2) == 0 {
                r
            } else {
                -r
            }
        })
        .sum();
    Census { counts, chi_star }
}

/// Reduction with t = 1 and coefficients mod 2: for each generator, the set
/// of chord-id words with odd coefficient.
pub fn mod2_differential(g: &Cedga) -> Vec<Vec<Vec<usize>>> {
    g.differential
        .iter()
        .map(|p| {
            let mut acc: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
            for (w, c) in p.terms() {
                let key: Vec<usize> = w
                    .iter()
                    .filter_map(|l| match l {
                        Gen::Chord { id, .. } => Some(*id),
                        Gen::T(_) => None,
                    })
                    .collect();
                *acc.entry(key).or_insert(0) += c;
            }
            acc.into_iter().filter(|(_, c)| c.rem_euclid(2) == 1).map(|(k, _)| k).collect()
        })
        .collect()
}
