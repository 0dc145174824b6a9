//! n-copy satellites with a positive permutation braid at the basepoint.
//!
//! Copies are vertical translates of the companion, copy 1 on top. Near a
//! cusp the translated cusps are stacked, so each cusp contributes a block of
//! n(n-1)/2 crossings between the upper and lower branches of different
//! copies.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::ratfunc::{color_normalizer, eval_laurent_at_z};
use crate::algebra::RationalFunctionS;
use crate::diagram::{Event, FrontDiagram, MaslovPotential, NodeMap};
use crate::error::{Error, Result};
use crate::rulings::ruling_polynomial_with;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationBraid {
    /// `perm[i]` is the (0-based) right-hand position of the strand entering at position i.
    pub perm: Vec<usize>,
    /// Crossing positions (1-based, top to bottom) read left to right.
    pub word: Vec<usize>,
}

impl PermutationBraid {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.perm.len()];
        let mut cycles = 0;
        for i in 0..self.perm.len() {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = self.perm[j];
                }
            }
        }
        cycles
    }
}

/// Bubble-sorts `ranks` in place, returning the 0-based index of the upper
/// strand of every adjacent swap.
fn sort_swaps(ranks: &mut [usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for end in (1..ranks.len()).rev() {
        for j in 0..end {
            if ranks[j] > ranks[j + 1] {
                ranks.swap(j, j + 1);
                out.push(j);
            }
        }
    }
    out
}

/// The positive braid realizing `perm` with one crossing per inversion.
pub fn positive_braid(perm: &[usize]) -> Result<PermutationBraid> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Internal(format!("not a permutation: {perm:?}")));
        }
    }
    let mut ranks = perm.to_vec();
    let word = sort_swaps(&mut ranks).into_iter().map(|j| j + 1).collect();
    Ok(PermutationBraid { perm: perm.to_vec(), word })
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct SatelliteFront {
    pub diagram: FrontDiagram,
    /// Potential copied from the companion strand of each node.
    pub potential: MaslovPotential,
    /// Orientation copied from the companion strand of each node.
    pub orientation: NodeMap,
    pub n: usize,
    pub braid: PermutationBraid,
    /// Crossings added at cusps.
    pub cusp_crossings: usize,
    /// Satellite slice corresponding to each companion slice.
    pub slice_map: Vec<usize>,
}

struct Emitter {
    events: Vec<Event>,
    pot: Vec<i64>,
    ori: Vec<i64>,
    pots: Vec<Vec<i64>>,
    oris: Vec<Vec<i64>>,
}

impl Emitter {
    fn emit(&mut self, e: Event, labels: Option<((i64, i64), (i64, i64))>) {
        let i = e.position() - 1;
        match e {
            Event::LeftCusp(_) => {
                let ((pu, ou), (pl, ol)) = labels.expect("cusp labels");
                self.pot.splice(i..i, [pu, pl]);
                self.ori.splice(i..i, [ou, ol]);
            }
            Event::RightCusp(_) => {
                self.pot.drain(i..i + 2);
                self.ori.drain(i..i + 2);
            }
            Event::Crossing(_) => {
                self.pot.swap(i, i + 1);
                self.ori.swap(i, i + 1);
            }
            Event::Basepoint(_) => {}
        }
        self.events.push(e);
        self.pots.push(self.pot.clone());
        self.oris.push(self.ori.clone());
    }

    fn sort_block(&mut self, base: usize, ranks: &mut [usize]) -> usize {
        let swaps = sort_swaps(ranks);
        for &j in &swaps {
            self.emit(Event::Crossing(base + j + 1), None);
        }
        swaps.len()
    }
}

pub fn satellite_front(d: &FrontDiagram, braid: &PermutationBraid) -> Result<SatelliteFront> {
    let mu = d.maslov_potential().ok_or(Error::NonzeroRotation(d.classical_invariants().rotation))?;
    let (bs, _) = d.basepoint().ok_or(Error::NoBasepoint)?;
    let or = d.orientation();
    let n = braid.n();
    let mut em = Emitter {
        events: Vec::new(),
        pot: Vec::new(),
        ori: Vec::new(),
        pots: vec![Vec::new()],
        oris: vec![Vec::new()],
    };
    let mut cusp_crossings = 0;
    let mut slice_map = vec![0];
    for (s, e) in d.events().iter().enumerate() {
        let c = e.position();
        let base = n * (c - 1);
        match e {
            Event::LeftCusp(_) => {
                let up = (mu.at(s + 1, c), or.at(s + 1, c));
                let lo = (mu.at(s + 1, c + 1), or.at(s + 1, c + 1));
                for i in 0..n {
                    em.emit(Event::LeftCusp(base + 2 * i + 1), Some((up, lo)));
                }
                // u1 l1 u2 l2 ... -> u1..un l1..ln
                let mut ranks: Vec<usize> = (0..n).flat_map(|i| [i, n + i]).collect();
                cusp_crossings += em.sort_block(base, &mut ranks);
            }
            Event::RightCusp(_) => {
                // u1..un l1..ln -> u1 l1 u2 l2 ...
                let mut ranks: Vec<usize> = (0..n).map(|i| 2 * i).chain((0..n).map(|i| 2 * i + 1)).collect();
                cusp_crossings += em.sort_block(base, &mut ranks);
                for _ in 0..n {
                    em.emit(Event::RightCusp(base + 1), None);
                }
            }
            Event::Crossing(_) => {
                let mut ranks: Vec<usize> = (n..2 * n).chain(0..n).collect();
                em.sort_block(base, &mut ranks);
            }
            Event::Basepoint(_) => {
                debug_assert_eq!(s, bs);
                for &w in &braid.word {
                    em.emit(Event::Crossing(base + w), None);
                }
            }
        }
        slice_map.push(em.events.len());
    }
    let diagram = FrontDiagram::satellite_from_events(em.events)?;
    Ok(SatelliteFront {
        diagram,
        potential: NodeMap::from_slices(em.pots),
        orientation: NodeMap::from_slices(em.oris),
        n,
        braid: braid.clone(),
        cusp_crossings,
        slice_map,
    })
}

/// (1/c_n) Σ_β s^{ℓ(β)} R⁰_{S(Λ,β)}(s - s⁻¹), summed in lexicographic β order.
pub fn colored_ruling_polynomial(d: &FrontDiagram, n: usize) -> Result<RationalFunctionS> {
    if n == 0 {
        return Err(Error::Internal("n must be positive".into()));
    }
    let terms: Vec<Result<RationalFunctionS>> = permutations(n)
        .par_iter()
        .map(|perm| {
            let b = positive_braid(perm)?;
            let sat = satellite_front(d, &b)?;
            let r = ruling_polynomial_with(&sat.diagram, &sat.potential, 0);
            Ok(RationalFunctionS::s_pow(b.length() as i64).mul(&eval_laurent_at_z(&r)))
        })
        .collect();
    let mut acc = RationalFunctionS::zero();
    for t in terms {
        acc = acc.add(&t?);
    }
    Ok(acc.div(&color_normalizer(n as u32)).expect("c_n is nonzero"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratfunc::QPoly;
    use crate::diagram::{catalog, CATALOG};
    use crate::rulings::ruling_polynomial;

    fn count(d: &FrontDiagram, f: fn(&Event) -> bool) -> usize {
        d.events().iter().filter(|e| f(e)).count()
    }

    /// Oracle: inversion count by definition.
    fn inversions(p: &[usize]) -> usize {
        (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }

    #[test]
    fn braid_examples() {
        assert!(positive_braid(&[0, 1]).unwrap().word.is_empty());
        assert_eq!(positive_braid(&[1, 0]).unwrap().word, vec![1]);
        assert_eq!(positive_braid(&[2, 1, 0]).unwrap().length(), 3);
        assert!(positive_braid(&[0, 0]).is_err());
    }

    #[test]
    fn braid_crosses_each_inverted_pair_once() {
        for n in 1..=4 {
            for p in permutations(n) {
                let b = positive_braid(&p).unwrap();
                assert_eq!(b.length(), inversions(&p));
                let mut at: Vec<usize> = (0..n).collect();
                let mut met = vec![vec![0; n]; n];
                for &w in &b.word {
                    let (x, y) = (at[w - 1], at[w]);
                    met[x.min(y)][x.max(y)] += 1;
                    at.swap(w - 1, w);
                }
                for i in 0..n {
                    assert_eq!(at[p[i]], i);
                    for j in i + 1..n {
                        assert_eq!(met[i][j], usize::from(p[i] > p[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn unknot_two_copies() {
        let u = catalog("unknot").unwrap();
        let id = satellite_front(&u, &positive_braid(&[0, 1]).unwrap()).unwrap();
        assert_eq!(count(&id.diagram, |e| matches!(e, Event::LeftCusp(_))), 2);
        assert_eq!(count(&id.diagram, |e| matches!(e, Event::RightCusp(_))), 2);
        assert_eq!(id.cusp_crossings, 2);
        assert_eq!(count(&id.diagram, |e| matches!(e, Event::Crossing(_))), 2);
        let tw = satellite_front(&u, &positive_braid(&[1, 0]).unwrap()).unwrap();
        assert_eq!(count(&tw.diagram, |e| matches!(e, Event::Crossing(_))), 3);
        assert_eq!((id.diagram.components(), tw.diagram.components()), (2, 1));
    }

    #[test]
    fn trefoil_blocks() {
        let t = catalog("trefoil").unwrap();
        let s = satellite_front(&t, &positive_braid(&[0, 1]).unwrap()).unwrap();
        let xs = count(&s.diagram, |e| matches!(e, Event::Crossing(_)));
        assert_eq!(xs - s.cusp_crossings, 12);
        assert_eq!(s.cusp_crossings, 4);
    }

    #[test]
    fn components_writhe_and_potential() {
        for name in CATALOG {
            let d = catalog(name).unwrap();
            let ci = d.classical_invariants();
            for n in 1..=3 {
                for p in permutations(n) {
                    let b = positive_braid(&p).unwrap();
                    let s = satellite_front(&d, &b).unwrap();
                    let sd = &s.diagram;
                    assert_eq!(sd.components(), b.cycle_count());
                    for (cs, &ss) in s.slice_map.iter().enumerate() {
                        assert_eq!(sd.strand_counts()[ss], n * d.strand_counts()[cs]);
                    }
                    assert_eq!(sd.right_cusp_count(), n * ci.right_cusps);
                    // copied orientation is a genuine orientation of the link
                    let o = &s.orientation;
                    let recomputed = sd.orientation_with(&|sl, pos| Some(o.at(sl, pos)));
                    assert_eq!(&recomputed, o);
                    let w = sd.writhe_with(o);
                    let expect = (n * n) as i64 * ci.writhe + b.length() as i64 - s.cusp_crossings as i64;
                    assert_eq!(w, expect, "{name} {p:?}");
                    // copied potential differs from a fresh one by a constant per component
                    let fresh = sd.maslov_potential().unwrap();
                    let labels = sd.component_labels();
                    let mut shift = std::collections::HashMap::new();
                    for sl in 0..sd.strand_counts().len() {
                        for pos in 1..=sd.strand_counts()[sl] {
                            let delta = s.potential.at(sl, pos) - fresh.at(sl, pos);
                            assert_eq!(*shift.entry(labels.at(sl, pos)).or_insert(delta), delta);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_color_is_the_ruling_polynomial() {
        for name in CATALOG {
            let d = catalog(name).unwrap();
            let r = ruling_polynomial(&d, 0).unwrap();
            assert_eq!(colored_ruling_polynomial(&d, 1).unwrap(), eval_laurent_at_z(&r), "{name}");
        }
    }

    #[test]
    fn unknot_two_colors() {
        // q^2 / ((q^2 - 1)(q^2 - q)) with q = s^2
        let num = QPoly::from_ints(&[0, 0, 0, 0, 1]);
        let den = QPoly::from_ints(&[-1, 0, 0, 0, 1]).mul(&QPoly::from_ints(&[0, 0, -1, 0, 1]));
        let want = RationalFunctionS::new(num, den);
        assert_eq!(colored_ruling_polynomial(&catalog("unknot").unwrap(), 2).unwrap(), want);
    }

    #[test]
    fn stabilized_unknot_vanishes() {
        let d = catalog("unknot_s2").unwrap();
        assert!(colored_ruling_polynomial(&d, 2).unwrap().is_zero());
    }
}
