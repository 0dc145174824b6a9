//! Normal rulings of a front by a left-to-right sweep.
//!
//! The sweep state is a fixed-point-free involution on the strand positions
//! of the current slice (0-based internally).

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::LaurentZ;
use crate::diagram::{Event, FrontDiagram, MaslovPotential};
use crate::error::{Error, Result};

pub type Pairing = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ruling {
    /// Event indices of switched crossings, increasing.
    pub switches: Vec<usize>,
    /// Pairing on every slice, `pairings[s][p]` = partner of position p.
    pub pairings: Vec<Pairing>,
}

impl Ruling {
    pub fn exponent(&self, d: &FrontDiagram) -> i64 {
        self.switches.len() as i64 - d.right_cusp_count() as i64
    }
}

fn grading_allowed(g: i64, m: u32) -> bool {
    if m == 0 {
        g == 0
    } else {
        g.rem_euclid(m as i64) == 0
    }
}

/// Switch at positions (k, k+1) is normal when the two pairs are disjoint
/// or nested on the left of the crossing.
fn normal(p: &Pairing, k: usize) -> bool {
    let (i, j) = (p[k], p[k + 1]);
    (i < k && j > k + 1) || (j < i && i < k) || (k + 1 < j && j < i)
}

fn left_cusp(p: &Pairing, c: usize) -> Pairing {
    let sh = |x: usize| if x >= c { x + 2 } else { x };
    let mut out = Vec::with_capacity(p.len() + 2);
    out.extend(p[..c].iter().map(|&x| sh(x)));
    out.push(c + 1);
    out.push(c);
    out.extend(p[c..].iter().map(|&x| sh(x)));
    out
}

fn right_cusp(p: &Pairing, c: usize) -> Option<Pairing> {
    if p[c] != c + 1 {
        return None;
    }
    let sh = |x: usize| if x > c + 1 { x - 2 } else { x };
    Some(p[..c].iter().chain(&p[c + 2..]).map(|&x| sh(x)).collect())
}

fn pass(p: &Pairing, k: usize) -> Pairing {
    let tau = |x: usize| {
        if x == k {
            k + 1
        } else if x == k + 1 {
            k
        } else {
            x
        }
    };
    let mut out = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        out[tau(x)] = tau(y);
    }
    out
}

/// Successor pairings after event `s`, each flagged with whether it switched.
fn successors(d: &FrontDiagram, mu: &MaslovPotential, m: u32, s: usize, p: &Pairing) -> Vec<(Pairing, bool)> {
    match d.events()[s] {
        Event::LeftCusp(c) => vec![(left_cusp(p, c - 1), false)],
        Event::RightCusp(c) => right_cusp(p, c - 1).map(|q| (q, false)).into_iter().collect(),
        Event::Basepoint(_) => vec![(p.clone(), false)],
        Event::Crossing(c) => {
            let k = c - 1;
            let mut out = vec![(pass(p, k), false)];
            if p[k] != k + 1 && grading_allowed(d.crossing_grading(mu, s), m) && normal(p, k) {
                out.push((p.clone(), true));
            }
            out
        }
    }
}

pub fn enumerate_rulings_with(d: &FrontDiagram, mu: &MaslovPotential, m: u32) -> Vec<Ruling> {
    fn go(d: &FrontDiagram, mu: &MaslovPotential, m: u32, s: usize, hist: &mut Vec<Pairing>, sw: &mut Vec<usize>, out: &mut Vec<Ruling>) {
        if s == d.events().len() {
            out.push(Ruling {
                switches: sw.clone(),
                pairings: hist.clone(),
            });
            return;
        }
        let cur = hist.last().unwrap().clone();
        for (next, switched) in successors(d, mu, m, s, &cur) {
            hist.push(next);
            if switched {
                sw.push(s);
            }
            go(d, mu, m, s + 1, hist, sw, out);
            if switched {
                sw.pop();
            }
            hist.pop();
        }
    }
    let mut out = Vec::new();
    go(d, mu, m, 0, &mut vec![Vec::new()], &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.switches.cmp(&b.switches));
    out
}

pub fn enumerate_rulings(d: &FrontDiagram, m: u32) -> Result<Vec<Ruling>> {
    let mu = potential_of(d)?;
    Ok(enumerate_rulings_with(d, &mu, m))
}

fn potential_of(d: &FrontDiagram) -> Result<MaslovPotential> {
    d.maslov_potential().ok_or_else(|| Error::NonzeroRotation(d.classical_invariants().rotation))
}

/// Ruling polynomial by dynamic programming over pairings.
pub fn ruling_polynomial_with(d: &FrontDiagram, mu: &MaslovPotential, m: u32) -> LaurentZ {
    // pairing -> (switch count -> number of partial rulings)
    let mut states: HashMap<Pairing, HashMap<usize, u128>> = HashMap::from([(Vec::new(), HashMap::from([(0, 1)]))]);
    for s in 0..d.events().len() {
        let mut next: HashMap<Pairing, HashMap<usize, u128>> = HashMap::new();
        for (p, counts) in &states {
            for (q, switched) in successors(d, mu, m, s, p) {
                let slot = next.entry(q).or_default();
                for (&k, &c) in counts {
                    *slot.entry(k + usize::from(switched)).or_insert(0) += c;
                }
            }
        }
        states = next;
    }
    let mut poly = LaurentZ::zero();
    let r = d.right_cusp_count() as i64;
    if let Some(counts) = states.get(&Vec::new()) {
        for (&k, &c) in counts {
            poly.add_term(BigInt::from(c), k as i64 - r);
        }
    }
    poly
}

pub fn ruling_polynomial(d: &FrontDiagram, m: u32) -> Result<LaurentZ> {
    let mu = potential_of(d)?;
    Ok(ruling_polynomial_with(d, &mu, m))
}

/// Replays a ruling from its switch set and checks the recorded history.
pub fn validate_ruling(d: &FrontDiagram, mu: &MaslovPotential, m: u32, r: &Ruling) -> bool {
    if r.pairings.len() != d.events().len() + 1 || !r.pairings[0].is_empty() {
        return false;
    }
    for s in 0..d.events().len() {
        let want_switch = r.switches.binary_search(&s).is_ok();
        let ok = successors(d, mu, m, s, &r.pairings[s])
            .into_iter()
            .any(|(q, sw)| sw == want_switch && q == r.pairings[s + 1]);
        if !ok {
            return false;
        }
    }
    r.pairings.last().is_some_and(|p| p.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::catalog;
    use crate::diagram::random::random_knots;

    fn z(terms: &[(i64, i64)]) -> LaurentZ {
        let mut p = LaurentZ::zero();
        for &(c, e) in terms {
            p.add_term(c.into(), e);
        }
        p
    }

    #[test]
    fn catalog_polynomials() {
        assert_eq!(ruling_polynomial(&catalog("unknot").unwrap(), 0).unwrap(), z(&[(1, -1)]));
        assert_eq!(ruling_polynomial(&catalog("trefoil").unwrap(), 0).unwrap(), z(&[(1, 1), (2, -1)]));
        assert!(ruling_polynomial(&catalog("unknot_s2").unwrap(), 0).unwrap().is_zero());
    }

    #[test]
    fn trefoil_switch_counts() {
        let rs = enumerate_rulings(&catalog("trefoil").unwrap(), 0).unwrap();
        let mut counts: Vec<usize> = rs.iter().map(|r| r.switches.len()).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 1, 3]);
    }

    /// Oracle: try every subset of crossings as the switch set.
    fn brute_force(d: &FrontDiagram, mu: &MaslovPotential, m: u32) -> Vec<Vec<usize>> {
        let xs: Vec<usize> = (0..d.events().len()).filter(|&s| matches!(d.events()[s], Event::Crossing(_))).collect();
        let mut found = Vec::new();
        'subset: for mask in 0u64..(1 << xs.len()) {
            let sw: Vec<usize> = xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
            let mut p: Pairing = Vec::new();
            for (s, e) in d.events().iter().enumerate() {
                p = match *e {
                    Event::LeftCusp(c) => left_cusp(&p, c - 1),
                    Event::RightCusp(c) => match right_cusp(&p, c - 1) {
                        Some(q) => q,
                        None => continue 'subset,
                    },
                    Event::Basepoint(_) => p,
                    Event::Crossing(c) => {
                        let k = c - 1;
                        if sw.contains(&s) {
                            let g = mu.at(s, c) - mu.at(s, c + 1);
                            if p[k] == k + 1 || !grading_allowed(g, m) {
                                continue 'subset;
                            }
                            let a = (k.min(p[k]), k.max(p[k]));
                            let b = ((k + 1).min(p[k + 1]), (k + 1).max(p[k + 1]));
                            let disjoint = a.1 < b.0;
                            let nested = (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1);
                            if !(disjoint || nested) {
                                continue 'subset;
                            }
                            p
                        } else {
                            pass(&p, k)
                        }
                    }
                };
            }
            found.push(sw);
        }
        found
    }

    #[test]
    fn sweep_matches_subset_oracle() {
        for d in random_knots(21, 150, 6, 12) {
            let mu = d.maslov_potential().unwrap();
            for m in [0, 1, 2] {
                let rs = enumerate_rulings_with(&d, &mu, m);
                let got: Vec<Vec<usize>> = rs.iter().map(|r| r.switches.clone()).collect();
                let mut want = brute_force(&d, &mu, m);
                want.sort();
                assert_eq!(got, want, "{}", d.to_canonical_string());
                for r in &rs {
                    assert!(validate_ruling(&d, &mu, m, r));
                }
                let mut poly = LaurentZ::zero();
                for r in &rs {
                    poly.add_term(1.into(), r.exponent(&d));
                }
                assert_eq!(poly, ruling_polynomial_with(&d, &mu, m));
            }
        }
    }

    #[test]
    fn graded_rulings_persist_for_every_modulus() {
        for d in random_knots(8, 80, 6, 12) {
            let mu = d.maslov_potential().unwrap();
            let zero: Vec<_> = enumerate_rulings_with(&d, &mu, 0).into_iter().map(|r| r.switches).collect();
            for m in 1..4 {
                let sets: Vec<_> = enumerate_rulings_with(&d, &mu, m).into_iter().map(|r| r.switches).collect();
                assert!(zero.iter().all(|s| sets.contains(s)));
            }
        }
    }

    #[test]
    fn tampered_history_is_rejected() {
        let d = catalog("trefoil").unwrap();
        let mu = d.maslov_potential().unwrap();
        let r = enumerate_rulings_with(&d, &mu, 0).remove(0);
        assert!(validate_ruling(&d, &mu, 0, &r));
        let mut extra = r.clone();
        extra.switches.pop();
        assert!(!validate_ruling(&d, &mu, 0, &extra));
        let mut bad = r.clone();
        bad.pairings[3].swap(0, 1);
        assert!(!validate_ruling(&d, &mu, 0, &bad));
    }
}
