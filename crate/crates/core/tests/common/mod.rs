#![allow(dead_code)]

use legendrian::algebra::{Field, FqMatrix};
use legendrian::dga::{build_dga, Cedga};
use legendrian::diagram::catalog;
use legendrian::repcat::{HomElement, HomShape, RepCategory};
use legendrian::reps::{enumerate_reps, Representation};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Setup {
    pub f: Field,
    pub g: Cedga,
    pub cat: RepCategory,
    pub reps: Vec<Representation>,
}

pub fn setup(name: &str, q: u64, n: usize, max_k: usize) -> Setup {
    let f = Field::new(q).unwrap();
    let g = build_dga(&catalog(name).unwrap()).unwrap();
    let cat = RepCategory::new(&g, max_k);
    let reps = enumerate_reps(&f, &g, n);
    Setup { f, g, cat, reps }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> FqMatrix {
    FqMatrix::from_vec(n, n, (0..n * n).map(|_| rng.gen_range(0..f.order())).collect())
}

/// Random element of degree `d` supported on generators of level at least `min_level`.
pub fn random_element(rng: &mut ChaCha8Rng, f: &Field, shape: &HomShape, n: usize, d: i64, min_level: i64) -> HomElement {
    let mut e = HomElement::zero(n, shape.len());
    for g in shape.of_degree(d) {
        if shape.levels[g] >= min_level {
            e.coeffs[g] = random_matrix(rng, f, n);
        }
    }
    e
}

pub fn degrees(shape: &HomShape) -> Vec<i64> {
    let mut ds = shape.degrees.clone();
    ds.sort();
    ds.dedup();
    ds
}

pub fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// Every scalar assignment of a one-dimensional representation, kept when
/// ρ∘∂ = 0.  Independent of the pruned search in `enumerate_reps`.
pub fn brute_force_n1(f: &Field, g: &Cedga) -> Vec<Representation> {
    let zeros: Vec<usize> = g.chords_of_grading(0);
    let q = f.order();
    let mut out = Vec::new();
    for t in 1..q {
        let total = (q as u64).pow(zeros.len() as u32);
        for idx in 0..total {
            let mut chords = vec![FqMatrix::zeros(1, 1); g.len()];
            let mut rest = idx;
            for &a in &zeros {
                chords[a] = FqMatrix::scalar(1, (rest % q as u64) as u32);
                rest /= q as u64;
            }
            let rho = Representation {
                t: FqMatrix::scalar(1, t),
                chords,
            };
            if legendrian::reps::is_representation(f, g, &rho) {
                out.push(rho);
            }
        }
    }
    out.sort();
    out
}

/// m₁m₂(a, b) and m₂(m₁a, b) + (−1)^{|a|} m₂(a, m₁b), for b ∈ Hom(r₀, r₁), a ∈ Hom(r₁, r₂).
pub fn leibniz(f: &Field, cat: &RepCategory, r: &[&Representation], a: &HomElement, b: &HomElement, da: i64) -> (HomElement, HomElement) {
    let m1 = |x: usize, y: usize, e: &HomElement| cat.m(f, &[r[x], r[y]], &[e]).unwrap();
    let m2 = |x: &HomElement, y: &HomElement| cat.m(f, &[r[0], r[1], r[2]], &[x, y]).unwrap();
    let lhs = m1(0, 2, &m2(a, b));
    let t = m2(a, &m1(0, 1, b));
    let rhs = m2(&m1(1, 2, a), b);
    (lhs, if da % 2 == 0 { rhs.add(f, &t) } else { rhs.sub(f, &t) })
}

/// Both sides of the three-input relation
/// m₁m₃(a,b,c) = m₂(a,m₂(b,c)) − m₂(m₂(a,b),c) − m₃(m₁a,b,c) − (−1)^{|a|}m₃(a,m₁b,c) − (−1)^{|a|+|b|}m₃(a,b,m₁c)
/// for c ∈ Hom(r₀,r₁), b ∈ Hom(r₁,r₂), a ∈ Hom(r₂,r₃).
#[allow(clippy::too_many_arguments)]
pub fn relation3(
    f: &Field,
    cat: &RepCategory,
    r: &[&Representation],
    a: &HomElement,
    b: &HomElement,
    c: &HomElement,
    da: i64,
    db: i64,
) -> (HomElement, HomElement) {
    let m1 = |x: usize, y: usize, e: &HomElement| cat.m(f, &[r[x], r[y]], &[e]).unwrap();
    let m2 = |x: usize, y: usize, z: usize, e1: &HomElement, e2: &HomElement| cat.m(f, &[r[x], r[y], r[z]], &[e1, e2]).unwrap();
    let m3 = |e1: &HomElement, e2: &HomElement, e3: &HomElement| cat.m(f, &[r[0], r[1], r[2], r[3]], &[e1, e2, e3]).unwrap();
    let mut rest = m2(0, 2, 3, a, &m2(0, 1, 2, b, c)).sub(f, &m2(0, 1, 3, &m2(1, 2, 3, a, b), c));
    rest = rest.sub(f, &m3(&m1(2, 3, a), b, c));
    let t = m3(a, &m1(1, 2, b), c);
    rest = if da % 2 == 0 { rest.sub(f, &t) } else { rest.add(f, &t) };
    let t = m3(a, b, &m1(0, 1, c));
    rest = if (da + db) % 2 == 0 { rest.sub(f, &t) } else { rest.add(f, &t) };
    (m1(0, 3, &m3(a, b, c)), rest)
}

/// Lowest filtration level m_k may reach from inputs whose lowest level is `max_in`.
pub fn filtration_bound(k: usize, max_in: i64) -> i64 {
    if k == 2 {
        max_in
    } else {
        max_in + 1
    }
}

/// Whether every generator in the support of `e` lies at level `min` or above.
pub fn in_filtration(shape: &HomShape, e: &HomElement, min: i64) -> bool {
    e.support().iter().all(|&g| shape.levels[g] >= min)
}
