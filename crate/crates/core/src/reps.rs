//! Representations of the DGA into Mat_n(F_q): enumeration, conjugate
//! homotopy, and equivalence classes.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::matrix::{all_matrices, general_linear};
use crate::algebra::{gl_order, Elem, Field, FqMatrix, SqrtQ};
use crate::dga::{grading_census, Cedga, Gen, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation {
    pub t: FqMatrix,
    /// Indexed by chord id; zero away from grading 0.
    pub chords: Vec<FqMatrix>,
}

impl Representation {
    pub fn n(&self) -> usize {
        self.t.rows()
    }

    /// m ρ m⁻¹.
    pub fn conjugate(&self, f: &Field, m: &FqMatrix, m_inv: &FqMatrix) -> Self {
        let c = |x: &FqMatrix| m.mul(f, x).mul(f, m_inv);
        Representation {
            t: c(&self.t),
            chords: self.chords.iter().map(c).collect(),
        }
    }
}

fn power(f: &Field, m: &FqMatrix, m_inv: &FqMatrix, e: i64) -> FqMatrix {
    let base = if e >= 0 { m } else { m_inv };
    let mut acc = FqMatrix::identity(m.rows());
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(f, base);
    }
    acc
}

/// Evaluates DGA elements under a representation.
pub struct Evaluator<'a> {
    f: &'a Field,
    rho: &'a Representation,
    t_inv: FqMatrix,
}

impl<'a> Evaluator<'a> {
    pub fn new(f: &'a Field, rho: &'a Representation) -> Result<Self> {
        let t_inv = rho.t.inverse(f).ok_or_else(|| Error::InvalidRepresentation("ρ(t) is singular".into()))?;
        Ok(Evaluator { f, rho, t_inv })
    }

    pub fn letter(&self, l: &Gen) -> Option<FqMatrix> {
        match *l {
            Gen::Chord { id, deg } => (deg == 0).then(|| self.rho.chords[id].clone()),
            Gen::T(e) => Some(power(self.f, &self.rho.t, &self.t_inv, e)),
        }
    }

    /// None when a letter maps to zero.
    pub fn word(&self, w: &[Gen]) -> Option<FqMatrix> {
        let mut acc = FqMatrix::identity(self.rho.n());
        for l in w {
            acc = acc.mul(self.f, &self.letter(l)?);
        }
        Some(acc)
    }

    pub fn poly(&self, p: &Poly) -> FqMatrix {
        let mut acc = FqMatrix::zeros(self.rho.n(), self.rho.n());
        for (w, c) in p.terms() {
            if let Some(m) = self.word(w) {
                acc.add_assign(self.f, &m.scale(self.f, self.f.from_int(c)));
            }
        }
        acc
    }
}

/// ρ(t) invertible, ρ supported in grading 0, and ρ∘∂ = 0 on every generator.
pub fn is_representation(f: &Field, g: &Cedga, rho: &Representation) -> bool {
    let n = rho.n();
    if rho.chords.len() != g.len() || !rho.t.is_square() {
        return false;
    }
    if g.generators.iter().any(|c| c.grading != 0 && !rho.chords[c.id].is_zero()) || rho.chords.iter().any(|m| m.rows() != n || m.cols() != n) {
        return false;
    }
    let Ok(ev) = Evaluator::new(f, rho) else { return false };
    g.differential.iter().all(|p| ev.poly(p).is_zero())
}

#[derive(Clone, Copy, Debug)]
enum Sym {
    V(usize),
    /// t^e for e != 1
    TPow(i64),
}

struct Rel {
    terms: Vec<(Elem, Vec<Sym>)>,
    vars: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
enum Step {
    Enumerate(usize),
    Solve(usize, Vec<usize>),
}

#[derive(Clone, Debug)]
struct Plan {
    initial: Vec<usize>,
    steps: Vec<Step>,
    checks: Vec<Vec<usize>>,
    cost: f64,
}

/// How ρ(t) is handled by the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Fix ρ(t) to each conjugacy-class representative, then conjugate.
    ClassesOfT,
    /// Treat ρ(t) as one more unknown.
    FreeT,
    /// Whichever of the two has the smaller search-tree estimate.
    Auto,
}

struct Search<'a> {
    f: &'a Field,
    n: usize,
    /// Grading-0 chord ids in triangular order; variable `chords.len()` is t.
    chords: Vec<usize>,
    rels: Vec<Rel>,
    gl: Vec<FqMatrix>,
}

impl<'a> Search<'a> {
    fn new(f: &'a Field, g: &Cedga, n: usize) -> Self {
        let chords: Vec<usize> = g.order.iter().copied().filter(|&id| g.grading(id) == 0).collect();
        let var_of: HashMap<usize, usize> = chords.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let tv = chords.len();
        let mut rels = Vec::new();
        for b in g.chords_of_grading(1) {
            let mut terms = Vec::new();
            'term: for (w, c) in g.differential[b].terms() {
                let mut syms = Vec::new();
                for l in w {
                    match *l {
                        Gen::Chord { id, .. } => match var_of.get(&id) {
                            Some(&v) => syms.push(Sym::V(v)),
                            None => continue 'term,
                        },
                        Gen::T(1) => syms.push(Sym::V(tv)),
                        Gen::T(e) => syms.push(Sym::TPow(e)),
                    }
                }
                let c = f.from_int(c);
                if c != 0 {
                    terms.push((c, syms));
                }
            }
            let vars = terms
                .iter()
                .flat_map(|(_, s)| {
                    s.iter().map(|x| match *x {
                        Sym::V(v) => v,
                        Sym::TPow(_) => tv,
                    })
                })
                .collect();
            if !terms.is_empty() {
                rels.push(Rel { terms, vars });
            }
        }
        Search {
            f,
            n,
            chords,
            rels,
            gl: general_linear(f, n),
        }
    }

    fn tv(&self) -> usize {
        self.chords.len()
    }

    fn linear_in(&self, r: &Rel, v: usize) -> bool {
        r.terms.iter().all(|(_, s)| {
            let mut k = 0;
            for x in s {
                match *x {
                    Sym::V(u) if u == v => k += 1,
                    Sym::TPow(_) if v == self.tv() => return false,
                    _ => {}
                }
            }
            k <= 1
        })
    }

    fn plan(&self, t_fixed: bool) -> Plan {
        let nv = self.chords.len() + 1;
        let mut assigned = vec![false; nv];
        assigned[self.tv()] = t_fixed;
        let mut checked = vec![false; self.rels.len()];
        let take_checks = |assigned: &[bool], checked: &mut Vec<bool>| {
            let mut out = Vec::new();
            for (i, r) in self.rels.iter().enumerate() {
                if !checked[i] && r.vars.iter().all(|&v| assigned[v]) {
                    checked[i] = true;
                    out.push(i);
                }
            }
            out
        };
        let initial = take_checks(&assigned, &mut checked);
        let (mut steps, mut checks) = (Vec::new(), Vec::new());
        let mut cost = 1f64;
        let q = self.f.order() as f64;
        while let Some(first_free) = (0..nv).find(|&v| !assigned[v]) {
            let single = |r: &Rel| {
                let free: Vec<usize> = r.vars.iter().copied().filter(|&v| !assigned[v]).collect();
                (free.len() == 1).then(|| free[0])
            };
            let solvable = self.rels.iter().find_map(|r| single(r).filter(|&v| self.linear_in(r, v)));
            let step = match solvable {
                Some(v) => {
                    let used = (0..self.rels.len())
                        .filter(|&i| single(&self.rels[i]) == Some(v) && self.linear_in(&self.rels[i], v))
                        .collect();
                    Step::Solve(v, used)
                }
                None => {
                    // grading-0 chords first in triangular order; t last
                    cost *= if first_free == self.tv() {
                        self.gl.len() as f64
                    } else {
                        q.powi((self.n * self.n) as i32)
                    };
                    Step::Enumerate(first_free)
                }
            };
            let v = match &step {
                Step::Enumerate(v) | Step::Solve(v, _) => *v,
            };
            assigned[v] = true;
            steps.push(step);
            checks.push(take_checks(&assigned, &mut checked));
        }
        Plan { initial, steps, checks, cost }
    }

    fn value(&self, asg: &[Option<FqMatrix>], s: &Sym) -> FqMatrix {
        match *s {
            Sym::V(v) => asg[v].clone().expect("assigned"),
            Sym::TPow(e) => {
                let t = asg[self.tv()].as_ref().expect("t assigned");
                power(self.f, t, &t.inverse(self.f).expect("t invertible"), e)
            }
        }
    }

    fn product(&self, asg: &[Option<FqMatrix>], syms: &[Sym]) -> FqMatrix {
        let mut acc = FqMatrix::identity(self.n);
        for s in syms {
            acc = acc.mul(self.f, &self.value(asg, s));
        }
        acc
    }

    fn holds(&self, asg: &[Option<FqMatrix>], r: usize) -> bool {
        let f = self.f;
        let mut acc = FqMatrix::zeros(self.n, self.n);
        for (c, syms) in &self.rels[r].terms {
            acc.add_assign(f, &self.product(asg, syms).scale(f, *c));
        }
        acc.is_zero()
    }

    /// All values of `v` making the given relations (affine in v) vanish.
    fn solve(&self, asg: &[Option<FqMatrix>], v: usize, rels: &[usize]) -> Vec<FqMatrix> {
        let (f, n) = (self.f, self.n);
        let nn = n * n;
        let mut sys = FqMatrix::zeros(rels.len() * nn, nn);
        let mut rhs = vec![0; rels.len() * nn];
        for (k, &r) in rels.iter().enumerate() {
            for (c, syms) in &self.rels[r].terms {
                match syms.iter().position(|s| matches!(s, Sym::V(u) if *u == v)) {
                    None => {
                        let m = self.product(asg, syms);
                        for (i, &x) in m.data().iter().enumerate() {
                            rhs[k * nn + i] = f.sub(rhs[k * nn + i], f.mul(*c, x));
                        }
                    }
                    Some(p) => {
                        let l = self.product(asg, &syms[..p]);
                        let rr = self.product(asg, &syms[p + 1..]);
                        // (L X R)_{ab} = Σ L_{ai} X_{ij} R_{jb}
                        for a in 0..n {
                            for b in 0..n {
                                for i in 0..n {
                                    for j in 0..n {
                                        let row = k * nn + a * n + b;
                                        let col = i * n + j;
                                        let add = f.mul(*c, f.mul(l.get(a, i), rr.get(j, b)));
                                        sys.set(row, col, f.add(sys.get(row, col), add));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let Some((x0, ker)) = sys.solve_affine(f, &rhs) else { return Vec::new() };
        let q = f.order() as u64;
        let total = q.pow(ker.len() as u32);
        let mut out = Vec::with_capacity(total as usize);
        for mut idx in 0..total {
            let mut x = x0.clone();
            for k in &ker {
                let d = (idx % q) as Elem;
                idx /= q;
                for (xi, &ki) in x.iter_mut().zip(k) {
                    *xi = f.add(*xi, f.mul(d, ki));
                }
            }
            let m = FqMatrix::from_vec(n, n, x);
            if v != self.tv() || m.is_invertible(f) {
                out.push(m);
            }
        }
        out
    }

    fn candidates(&self, plan: &Plan, step: usize, asg: &[Option<FqMatrix>]) -> Vec<FqMatrix> {
        match &plan.steps[step] {
            Step::Enumerate(v) if *v == self.tv() => self.gl.clone(),
            Step::Enumerate(_) => all_matrices(self.f, self.n).collect(),
            Step::Solve(v, rels) => self.solve(asg, *v, rels),
        }
    }

    fn var_of(plan: &Plan, step: usize) -> usize {
        match &plan.steps[step] {
            Step::Enumerate(v) | Step::Solve(v, _) => *v,
        }
    }

    fn descend(&self, plan: &Plan, step: usize, asg: &mut Vec<Option<FqMatrix>>, out: &mut Vec<Vec<FqMatrix>>) {
        if step == plan.steps.len() {
            out.push(asg.iter().map(|m| m.clone().unwrap()).collect());
            return;
        }
        let v = Self::var_of(plan, step);
        for m in self.candidates(plan, step, asg) {
            asg[v] = Some(m);
            if plan.checks[step].iter().all(|&r| self.holds(asg, r)) {
                self.descend(plan, step + 1, asg, out);
            }
        }
        asg[v] = None;
    }

    /// Full assignments (chords in `self.chords` order, then t).
    fn run(&self, plan: &Plan, t: Option<&FqMatrix>) -> Vec<Vec<FqMatrix>> {
        let mut asg: Vec<Option<FqMatrix>> = vec![None; self.chords.len() + 1];
        asg[self.tv()] = t.cloned();
        if !plan.initial.iter().all(|&r| self.holds(&asg, r)) {
            return Vec::new();
        }
        if plan.steps.is_empty() {
            return vec![asg.into_iter().map(|m| m.unwrap()).collect()];
        }
        let v = Self::var_of(plan, 0);
        let cands = self.candidates(plan, 0, &asg);
        cands
            .into_par_iter()
            .flat_map_iter(|m| {
                let mut asg = asg.clone();
                asg[v] = Some(m);
                let mut out = Vec::new();
                if plan.checks[0].iter().all(|&r| self.holds(&asg, r)) {
                    self.descend(plan, 1, &mut asg, &mut out);
                }
                out
            })
            .collect()
    }

    fn to_rep(&self, g: &Cedga, vals: Vec<FqMatrix>) -> Representation {
        let mut chords = vec![FqMatrix::zeros(self.n, self.n); g.len()];
        let mut it = vals.into_iter();
        for &id in &self.chords {
            chords[id] = it.next().unwrap();
        }
        Representation { t: it.next().unwrap(), chords }
    }
}

/// A conjugacy class of GL_n(F_q): its least member and, for each member
/// T', the least g with g T g⁻¹ = T'.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub rep: FqMatrix,
    pub members: Vec<(FqMatrix, FqMatrix)>,
}

pub fn conjugacy_classes(f: &Field, n: usize) -> Vec<ConjugacyClass> {
    let gl = general_linear(f, n);
    let inv: Vec<FqMatrix> = gl.iter().map(|m| m.inverse(f).unwrap()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in &gl {
        if seen.contains(t) {
            continue;
        }
        let mut members: Vec<(FqMatrix, FqMatrix)> = Vec::new();
        let mut found = BTreeSet::new();
        for (g, gi) in gl.iter().zip(&inv) {
            let c = g.mul(f, t).mul(f, gi);
            if found.insert(c.clone()) {
                members.push((c, g.clone()));
            }
        }
        members.sort();
        seen.extend(found);
        out.push(ConjugacyClass { rep: t.clone(), members });
    }
    out
}

pub fn enumerate_reps(f: &Field, g: &Cedga, n: usize) -> Vec<Representation> {
    enumerate_reps_with(f, g, n, Strategy::Auto)
}

pub fn enumerate_reps_with(f: &Field, g: &Cedga, n: usize, strategy: Strategy) -> Vec<Representation> {
    let s = Search::new(f, g, n);
    let fixed = s.plan(true);
    let free = s.plan(false);
    let use_classes = match strategy {
        Strategy::ClassesOfT => true,
        Strategy::FreeT => false,
        // GL_n(F_q) has roughly q^n - q^(n-1) conjugacy classes
        Strategy::Auto => fixed.cost * (f.order() as f64).powi(n as i32 - 1) * (f.order() as f64 - 1.0) <= free.cost,
    };
    let mut out: Vec<Representation> = if use_classes {
        let mut out = Vec::new();
        for class in conjugacy_classes(f, n) {
            let sols: Vec<Representation> = s.run(&fixed, Some(&class.rep)).into_iter().map(|v| s.to_rep(g, v)).collect();
            for (_, gm) in &class.members {
                let gi = gm.inverse(f).unwrap();
                out.extend(sols.iter().map(|r| r.conjugate(f, gm, &gi)));
            }
        }
        out
    } else {
        s.run(&free, None).into_iter().map(|v| s.to_rep(g, v)).collect()
    };
    out.sort();
    out
}

/// q^{-n²χ*/2} |GL_n(F_q)|⁻¹ · count.
pub fn rep_number_from_count(g: &Cedga, n: usize, q: u64, count: usize) -> SqrtQ {
    let chi = grading_census(g).chi_star;
    let nn = (n * n) as i64;
    let frac = BigRational::new(BigInt::from(count), gl_order(n as u32, q));
    SqrtQ::q_half_pow(q, -nn * chi).mul(&SqrtQ::rational(q, frac))
}

pub fn rep_number(f: &Field, g: &Cedga, n: usize) -> SqrtQ {
    let count = enumerate_reps(f, g, n).len();
    rep_number_from_count(g, n, f.order() as u64, count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub m: FqMatrix,
    /// (chord id, L(a)) for every grading -1 chord.
    pub l: Vec<(usize, FqMatrix)>,
}

/// The (ρ₁, ρ₂)-derivation extending `l` (zero on chords not listed and on t).
pub fn derivation(f: &Field, r1: &Representation, r2: &Representation, l: &HashMap<usize, FqMatrix>, p: &Poly) -> Result<FqMatrix> {
    let e1 = Evaluator::new(f, r1)?;
    let e2 = Evaluator::new(f, r2)?;
    let n = r1.n();
    let mut acc = FqMatrix::zeros(n, n);
    for (w, c) in p.terms() {
        let mut deg = 0;
        for (i, letter) in w.iter().enumerate() {
            if let Gen::Chord { id, .. } = letter {
                if let Some(li) = l.get(id) {
                    if let (Some(pre), Some(post)) = (e1.word(&w[..i]), e2.word(&w[i + 1..])) {
                        let sign = if deg % 2 == 0 { c } else { -c };
                        acc.add_assign(f, &pre.mul(f, li).mul(f, &post).scale(f, f.from_int(sign)));
                    }
                }
            }
            deg += crate::algebra::Letter::degree(letter);
        }
    }
    Ok(acc)
}

/// M ρ₂(t) M⁻¹ = ρ₁(t) and M ρ₂(a) M⁻¹ − ρ₁(a) = L̃(∂a) on grading-0 chords.
pub fn is_witness(f: &Field, g: &Cedga, r1: &Representation, r2: &Representation, w: &HomotopyWitness) -> bool {
    let Some(mi) = w.m.inverse(f) else { return false };
    let r2p = r2.conjugate(f, &w.m, &mi);
    if r2p.t != r1.t {
        return false;
    }
    let l: HashMap<usize, FqMatrix> = w.l.iter().cloned().collect();
    g.chords_of_grading(0).into_iter().all(|a| {
        let lhs = r2p.chords[a].sub(f, &r1.chords[a]);
        derivation(f, r1, &r2p, &l, &g.differential[a]).is_ok_and(|rhs| rhs == lhs)
    })
}

/// ρ(t) and σ(t) have equal characteristic polynomials and equal ranks of
/// (· − c) for every scalar c.
fn may_be_conjugate(f: &Field, a: &FqMatrix, b: &FqMatrix) -> bool {
    if a.charpoly(f) != b.charpoly(f) {
        return false;
    }
    let n = a.rows();
    f.elements().all(|c| {
        let s = FqMatrix::scalar(n, c);
        a.sub(f, &s).rank(f) == b.sub(f, &s).rank(f)
    })
}

pub fn conjugate_homotopic(f: &Field, g: &Cedga, r1: &Representation, r2: &Representation) -> Option<HomotopyWitness> {
    if !may_be_conjugate(f, &r1.t, &r2.t) {
        return None;
    }
    let n = r1.n();
    let nn = n * n;
    let neg = g.chords_of_grading(-1);
    let zero = g.chords_of_grading(0);
    for m in general_linear(f, n) {
        let mi = m.inverse(f).unwrap();
        let r2p = r2.conjugate(f, &m, &mi);
        if r2p.t != r1.t {
            continue;
        }
        // unknowns: entries of L(a) for a in `neg`
        let mut sys = FqMatrix::zeros(zero.len() * nn, neg.len() * nn);
        let mut rhs = vec![0; zero.len() * nn];
        for (k, &a) in zero.iter().enumerate() {
            let d = r2p.chords[a].sub(f, &r1.chords[a]);
            rhs[k * nn..(k + 1) * nn].copy_from_slice(d.data());
            for (j, &b) in neg.iter().enumerate() {
                for u in 0..nn {
                    let mut unit = FqMatrix::zeros(n, n);
                    unit.set(u / n, u % n, 1);
                    let l = HashMap::from([(b, unit)]);
                    let col = derivation(f, r1, &r2p, &l, &g.differential[a]).ok()?;
                    for (i, &x) in col.data().iter().enumerate() {
                        sys.set(k * nn + i, j * nn + u, x);
                    }
                }
            }
        }
        let sol = if neg.is_empty() {
            rhs.iter().all(|&x| x == 0).then(Vec::new)
        } else {
            sys.solve_affine(f, &rhs).map(|(x, _)| x)
        };
        if let Some(x) = sol {
            let l = neg
                .iter()
                .enumerate()
                .map(|(j, &b)| (b, FqMatrix::from_vec(n, n, x[j * nn..(j + 1) * nn].to_vec())))
                .collect();
            return Some(HomotopyWitness { m, l });
        }
    }
    None
}

/// The unique ρ₀ with M ρ₀ M⁻¹ homotopic to ρ through the derivation
/// extending the given values on grading -1 chords (in id order).
pub fn extend_unique_rep(f: &Field, g: &Cedga, rho: &Representation, m: &FqMatrix, a_values: &[FqMatrix]) -> Result<Representation> {
    let mi = m.inverse(f).ok_or_else(|| Error::Singular("conjugator".into()))?;
    let neg = g.chords_of_grading(-1);
    if a_values.len() != neg.len() {
        return Err(Error::InvalidRepresentation(format!("expected {} values, got {}", neg.len(), a_values.len())));
    }
    let l: HashMap<usize, FqMatrix> = neg.iter().copied().zip(a_values.iter().cloned()).collect();
    let mut rp = rho.clone();
    for &a in &g.order {
        if g.grading(a) == 0 {
            let v = rho.chords[a].add(f, &derivation(f, rho, &rp, &l, &g.differential[a])?);
            rp.chords[a] = v;
        }
    }
    let out = rp.conjugate(f, &mi, m);
    if !is_representation(f, g, &out) {
        return Err(Error::Internal("extended representation fails ρ∘∂ = 0".into()));
    }
    Ok(out)
}

/// Every representation homotopic to ρ after conjugation.
pub fn homotopy_class(f: &Field, g: &Cedga, rho: &Representation) -> Result<BTreeSet<Representation>> {
    let n = rho.n();
    let r = g.chords_of_grading(-1).len();
    let q = f.order() as u64;
    let total = q.pow((n * n * r) as u32);
    let gl = general_linear(f, n);
    let mut out = BTreeSet::new();
    for m in &gl {
        for idx in 0..total {
            let mut vals = Vec::with_capacity(r);
            let mut rest = idx;
            for _ in 0..r {
                vals.push(FqMatrix::from_index(n, q as u32, rest % q.pow((n * n) as u32)));
                rest /= q.pow((n * n) as u32);
            }
            out.insert(extend_unique_rep(f, g, rho, m, &vals)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepClass {
    /// Index into the input list of the least member.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partition into conjugate-homotopy classes, ordered by representative.
pub fn equivalence_classes(f: &Field, g: &Cedga, reps: &[Representation]) -> Result<Vec<RepClass>> {
    let index: HashMap<&Representation, usize> = reps.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut class_of = vec![usize::MAX; reps.len()];
    let mut classes: Vec<RepClass> = Vec::new();
    for i in 0..reps.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = homotopy_class(f, g, &reps[i])?.iter().filter_map(|r| index.get(r).copied()).collect();
        members.sort();
        for &m in &members {
            class_of[m] = classes.len();
        }
        let representative = *members.iter().min_by_key(|&&m| &reps[m]).unwrap();
        classes.push(RepClass { representative, members });
    }
    classes.sort_by(|a, b| reps[a.representative].cmp(&reps[b.representative]));
    Ok(classes)
}
