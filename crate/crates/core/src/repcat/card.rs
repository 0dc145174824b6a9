//! Homotopy cardinality of the representation category, its closed form, and
//! the colored-ruling side.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{gl_order, Field, RationalFunctionS, SqrtQ};
use crate::dga::{build_dga, grading_census, Cedga};
use crate::diagram::FrontDiagram;
use crate::error::{Error, Result};
use crate::reps::{enumerate_reps, equivalence_classes, Representation};
use crate::satellite::colored_ruling_polynomial;

use super::ainf::RepCategory;
use super::hom::{aut_order_of, hom_complex, negative_cohomology_exponent};

fn as_string<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    /// Index into the sorted representation list.
    pub representative: usize,
    pub size: usize,
    #[serde(serialize_with = "as_string")]
    pub aut: BigInt,
    /// dim H^i Hom(ρ, ρ) for every degree present.
    pub cohomology: BTreeMap<i64, usize>,
    pub hom0_dim: usize,
    pub b0_dim: usize,
    /// |GL_n|/|Aut| · q^{dim Hom⁰ − dim B⁰ − n²}.
    pub predicted_size: SqrtQ,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cardinality {
    pub n: usize,
    pub q: u64,
    pub rep_count: usize,
    pub classes: Vec<ClassSummary>,
    /// Σ over classes of (1/|Aut|)·|H^{-1}||H^{-3}|⋯/(|H^{-2}||H^{-4}|⋯).
    pub categorical: SqrtQ,
    /// q^{n²(tb − χ*)/2} |GL_n(F_q)|⁻¹ · #reps.
    pub closed_form: SqrtQ,
}

fn q_pow(q: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

pub fn closed_form(g: &Cedga, tb: i64, n: usize, q: u64, count: usize) -> SqrtQ {
    let nn = (n * n) as i64;
    let chi = grading_census(g).chi_star;
    let frac = BigRational::new(BigInt::from(count), gl_order(n as u32, q));
    SqrtQ::q_half_pow(q, nn * (tb - chi)).mul(&SqrtQ::rational(q, frac))
}

/// Both sides of the counting formula from an already sorted list of
/// representations.
pub fn homotopy_cardinality_of(f: &Field, g: &Cedga, tb: i64, n: usize, reps: &[Representation]) -> Result<Cardinality> {
    let q = f.order() as u64;
    let classes = equivalence_classes(f, g, reps)?;
    let cat = RepCategory::new(g, 1);
    let gl = BigRational::from_integer(gl_order(n as u32, q));
    let summaries: Vec<Result<(ClassSummary, BigRational)>> = classes
        .par_iter()
        .map(|c| {
            let rho = &reps[c.representative];
            let h = hom_complex(f, &cat, rho, rho)?;
            let aut = aut_order_of(&h, q)?;
            let e = h.dim(0) as i64 - h.b(0) as i64 - (n * n) as i64;
            let predicted = &gl / BigRational::from_integer(aut.clone()) * q_pow(q, e);
            let weight = q_pow(q, negative_cohomology_exponent(&h)) / BigRational::from_integer(aut.clone());
            let summary = ClassSummary {
                representative: c.representative,
                size: c.members.len(),
                aut,
                cohomology: h.cohomology.clone(),
                hom0_dim: h.dim(0),
                b0_dim: h.b(0),
                predicted_size: SqrtQ::rational(q, predicted),
            };
            Ok((summary, weight))
        })
        .collect();
    let mut total = BigRational::from_integer(BigInt::from(0));
    let mut out = Vec::with_capacity(summaries.len());
    for s in summaries {
        let (s, weight) = s?;
        total += weight;
        out.push(s);
    }
    Ok(Cardinality {
        n,
        q,
        rep_count: reps.len(),
        classes: out,
        categorical: SqrtQ::rational(q, total),
        closed_form: closed_form(g, tb, n, q, reps.len()),
    })
}

pub fn homotopy_cardinality(f: &Field, g: &Cedga, tb: i64, n: usize) -> Result<Cardinality> {
    let reps = enumerate_reps(f, g, n);
    homotopy_cardinality_of(f, g, tb, n, &reps)
}

/// q^{n² tb/2} R⁰_n evaluated at s = q^{1/2}.
pub fn ruling_side(colored: &RationalFunctionS, tb: i64, n: usize, q: u64) -> SqrtQ {
    SqrtQ::q_half_pow(q, (n * n) as i64 * tb).mul(&colored.eval_sqrt(q))
}

#[derive(Clone, Debug, Serialize)]
pub struct ThreeWay {
    pub n: usize,
    pub q: u64,
    pub rep_count: usize,
    pub categorical: SqrtQ,
    pub closed_form: SqrtQ,
    pub ruling_side: SqrtQ,
    pub categorical_eq_closed_form: bool,
    pub closed_form_eq_ruling_side: bool,
}

impl ThreeWay {
    pub fn agree(&self) -> bool {
        self.categorical_eq_closed_form && self.closed_form_eq_ruling_side
    }
}

/// Categorical, closed-form and ruling-side cardinalities for each q.
pub fn three_way(d: &FrontDiagram, n: usize, qs: &[u64]) -> Result<Vec<(ThreeWay, Cardinality)>> {
    let ci = d.classical_invariants();
    if ci.rotation != 0 {
        return Err(Error::NonzeroRotation(ci.rotation));
    }
    let g = build_dga(d)?;
    let colored = colored_ruling_polynomial(d, n)?;
    let mut out = Vec::new();
    for &q in qs {
        let f = Field::new(q)?;
        let card = homotopy_cardinality(&f, &g, ci.tb, n)?;
        let rs = ruling_side(&colored, ci.tb, n, q);
        let row = ThreeWay {
            n,
            q,
            rep_count: card.rep_count,
            categorical: card.categorical.clone(),
            closed_form: card.closed_form.clone(),
            ruling_side: rs.clone(),
            categorical_eq_closed_form: card.categorical == card.closed_form,
            closed_form_eq_ruling_side: card.closed_form == rs,
        };
        out.push((row, card));
    }
    Ok(out)
}
