mod common;

use std::collections::HashMap;

use common::{brute_force_n1, setup};
use legendrian::algebra::matrix::general_linear;
use legendrian::algebra::{gl_order, FqMatrix, SqrtQ};
use legendrian::diagram::CATALOG;
use legendrian::repcat::{hom_complex, homotopy_cardinality_of};
use legendrian::reps::{equivalence_classes, extend_unique_rep, is_witness, HomotopyWitness};
use num_bigint::BigInt;

const CASES: [(u64, usize); 3] = [(2, 1), (3, 1), (2, 2)];

/// Σ_{ρ₀} #Hom⁰(ρ, ρ₀)^× = q^{n²r}|GL_n|, with r the number of grading -1 chords.
#[test]
fn unit_counts_sum_over_targets() {
    for name in CATALOG {
        for (q, n) in CASES {
            let s = setup(name, q, n, 1);
            let r = s.g.chords_of_grading(-1).len();
            let want = BigInt::from(q).pow((n * n * r) as u32) * gl_order(n as u32, q);
            for rho in &s.reps {
                let mut total = BigInt::from(0);
                for rho0 in &s.reps {
                    total += hom_complex(&s.f, &s.cat, rho, rho0).unwrap().unit_count();
                }
                assert_eq!(total, want, "{name} q={q} n={n}");
            }
        }
    }
}

/// Equivalent pairs have as many units as the endomorphisms, inequivalent pairs none.
#[test]
fn unit_sets_of_equivalent_pairs() {
    for name in CATALOG {
        for (q, n) in CASES {
            let s = setup(name, q, n, 1);
            let classes = equivalence_classes(&s.f, &s.g, &s.reps).unwrap();
            let mut class_of = HashMap::new();
            for (k, c) in classes.iter().enumerate() {
                for &m in &c.members {
                    class_of.insert(m, k);
                }
            }
            for c in &classes {
                for &i in &c.members {
                    let rho = &s.reps[i];
                    let own = hom_complex(&s.f, &s.cat, rho, rho).unwrap().unit_count();
                    assert!(own > BigInt::from(0));
                    for (j, rho0) in s.reps.iter().enumerate() {
                        let count = hom_complex(&s.f, &s.cat, rho, rho0).unwrap().unit_count();
                        if class_of[&j] == class_of[&i] {
                            assert_eq!(count, own, "{name} q={q} n={n}");
                        } else {
                            assert_eq!(count, BigInt::from(0), "{name} q={q} n={n}");
                        }
                    }
                }
            }
        }
    }
}

/// #{ρ₀ ≅ ρ} = |GL_n|/|Aut ρ| · q^{dim Hom⁰ − dim B⁰ − n²}.
#[test]
fn class_sizes() {
    for name in CATALOG {
        for (q, n) in CASES {
            let s = setup(name, q, n, 1);
            let tb = legendrian::diagram::catalog(name).unwrap().classical_invariants().tb;
            let card = homotopy_cardinality_of(&s.f, &s.g, tb, n, &s.reps).unwrap();
            assert_eq!(card.classes.iter().map(|c| c.size).sum::<usize>(), s.reps.len());
            for c in &card.classes {
                assert_eq!(c.predicted_size, SqrtQ::from_int(q, c.size as i64), "{name} q={q} n={n}");
            }
        }
    }
}

/// For every ρ, invertible M and values on grading -1 chords there is exactly
/// one representation ρ₀ homotopic to ρ through that data; found by scanning
/// all scalar assignments.
#[test]
fn unique_extension_by_exhaustive_search() {
    for name in CATALOG {
        for q in [2, 3] {
            let s = setup(name, q, 1, 1);
            let all = brute_force_n1(&s.f, &s.g);
            assert_eq!(all, s.reps);
            let neg = s.g.chords_of_grading(-1);
            let values: Vec<FqMatrix> = s.f.elements().map(|c| FqMatrix::scalar(1, c)).collect();
            let choices = values.len().pow(neg.len() as u32);
            for rho in &s.reps {
                for m in general_linear(&s.f, 1) {
                    for idx in 0..choices {
                        let mut vals = Vec::new();
                        let mut rest = idx;
                        for _ in &neg {
                            vals.push(values[rest % values.len()].clone());
                            rest /= values.len();
                        }
                        let ext = extend_unique_rep(&s.f, &s.g, rho, &m, &vals).unwrap();
                        let w = HomotopyWitness {
                            m: m.clone(),
                            l: neg.iter().copied().zip(vals).collect(),
                        };
                        let found: Vec<_> = all.iter().filter(|r0| is_witness(&s.f, &s.g, rho, r0, &w)).collect();
                        assert_eq!(found, vec![&ext], "{name} q={q}");
                    }
                }
            }
        }
    }
}
