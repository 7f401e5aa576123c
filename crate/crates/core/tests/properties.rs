mod common;

use clgroup::abelian::{gcd_all, ClassElement, Presentation};
use clgroup::joinmeet::{self, TreeRule};
use clgroup::linalg::{minor_gcd, smith_normal_form, solve_integer};
use clgroup::semigroup::{cone_report, ConeDescription};
use clgroup::{AbelianPresentation, BigInt, IntMatrix, Poset};
use common::*;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        (Just(c), prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
    })
}

fn presentation(g: usize, cols: &[Vec<i64>]) -> AbelianPresentation {
    let m = IntMatrix::from_fn(g, cols.len(), |i, j| big(cols[j][i]));
    Presentation::new(g, m).unwrap()
}

fn presentation_case() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<i64>)> {
    (1usize..=6, 0usize..=6).prop_flat_map(|(g, k)| {
        (
            Just(g),
            prop::collection::vec(prop::collection::vec(-9i64..=9, g), k),
            prop::collection::vec(-9i64..=9, g),
        )
    })
}

fn elem(v: &[i64]) -> ClassElement<BigInt> {
    ClassElement::new(v.iter().map(|&x| big(x)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_invariants((cols, rows) in small_matrix(5)) {
        let a = matrix(&rows, cols);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&(&snf.u * &a) * &snf.v, snf.d.clone());
        prop_assert!(snf.u.determinant().unwrap().abs().is_one());
        prop_assert!(snf.v.determinant().unwrap().abs().is_one());
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    prop_assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        for w in snf.invariant_factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(snf.invariant_factors.iter().all(|d| d.is_positive()));
        prop_assert_eq!(snf.rank, a.rank());
        prop_assert_eq!(snf.rank, brute_rank(&rows, cols));
        prop_assert_eq!(smith_normal_form(&a), snf);
    }

    #[test]
    fn minor_gcd_matches_enumeration((cols, rows) in small_matrix(5)) {
        let a = matrix(&rows, cols);
        for k in 0..=rows.len().min(cols) {
            prop_assert_eq!(minor_gcd(&a, k).unwrap(), BigInt::from(brute_minor_gcd(&rows, cols, k)));
        }
    }

    #[test]
    fn solve_is_sound_and_complete(
        (cols, rows) in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
            (Just(c), prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
        }),
        seed in prop::collection::vec(-3i64..=3, 3),
        perturb in prop::bool::ANY,
    ) {
        let a = matrix(&rows, cols);
        // Half the targets are in the image by construction.
        let mut b: Vec<i64> = rows.iter().map(|r| r.iter().zip(&seed).map(|(x, y)| x * y).sum()).collect();
        if perturb {
            b[0] += 1;
        }
        let bb: Vec<BigInt> = b.iter().map(|&x| big(x)).collect();
        match solve_integer(&a, &bb).unwrap() {
            Some(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), bb),
            None => prop_assert!(!bounded_solution_exists(&rows, cols, &b, 20)),
        }
    }

    #[test]
    fn lemma_free(coords in prop::collection::vec(-30i64..=30, 1..=6)) {
        let p = Presentation::<BigInt>::free(coords.len());
        let d = p.torsion_number(&elem(&coords)).unwrap();
        let g = coords.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        prop_assert_eq!(d, big(g));
    }

    #[test]
    fn lemma_zero((g, cols, omega) in presentation_case()) {
        let p = presentation(g, &cols);
        let d = p.torsion_number(&elem(&omega)).unwrap();
        prop_assert_eq!(d.is_zero(), p.is_zero_class(&elem(&omega)).unwrap());
        prop_assert!(!d.is_negative());
    }

    #[test]
    fn redundant_relation_keeps_structure((g, cols, coeffs) in presentation_case()) {
        let p = presentation(g, &cols);
        let mut extended = cols.clone();
        let combo: Vec<i64> = (0..g)
            .map(|i| cols.iter().zip(&coeffs).map(|(c, k)| c[i] * k).sum())
            .collect();
        extended.push(combo);
        prop_assert_eq!(presentation(g, &extended).structure(), p.structure());
    }

    #[test]
    fn first_nonzero_fitting_at_rank((g, cols, _omega) in presentation_case()) {
        let p = presentation(g, &cols);
        let s = p.structure();
        for i in 0..s.free_rank {
            prop_assert!(p.fitting_number(i).unwrap().is_zero());
        }
        prop_assert_eq!(p.fitting_number(s.free_rank).unwrap(), s.torsion_order());
        // Fitt_i ⊆ Fitt_{i+1}: the generator at i+1 divides the one at i.
        for i in 0..g {
            let lo = p.fitting_number(i).unwrap();
            let hi = p.fitting_number(i + 1).unwrap();
            prop_assert!(lo.is_zero() || lo.is_multiple_of(&hi));
        }
    }

    #[test]
    fn purity_matches_chain_enumeration(n in 0usize..=7, mask in any::<u64>()) {
        let p = poset_from_mask(n, mask);
        prop_assert_eq!(p.is_pure(), brute_is_pure(&p));
    }

    #[test]
    fn canonical_form_properties(n in 0usize..=7, mask in any::<u64>()) {
        let p = poset_from_mask(n, mask);
        prop_assert!(p.covers().iter().all(|&(i, j)| i < j));
        let rels: Vec<(String, String)> = p
            .covers()
            .iter()
            .map(|&(i, j)| (p.labels()[i].clone(), p.labels()[j].clone()))
            .collect();
        prop_assert_eq!(Poset::build(p.labels(), &rels).unwrap(), p.clone());

        let bp = p.bound();
        let expected = if p.is_empty() {
            1
        } else {
            p.covers().len() + p.minimal_elements().len() + p.maximal_elements().len()
        };
        prop_assert_eq!(bp.edges().len(), expected);
    }

    #[test]
    fn label_permutation_invariance(n in 1usize..=6, mask in any::<u64>(), shift in 0usize..6) {
        let p = poset_from_mask(n, mask);
        let names: Vec<String> = p.labels().iter().map(|s| format!("z{s}")).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left(shift % n);
        order.reverse();
        let rels: Vec<(String, String)> =
            p.covers().iter().map(|&(i, j)| (names[i].clone(), names[j].clone())).collect();
        let shuffled: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        let q = Poset::build(&shuffled, &rels).unwrap();

        let a = joinmeet::joinmeet_report::<BigInt>(&p).unwrap();
        let b = joinmeet::joinmeet_report::<BigInt>(&q).unwrap();
        prop_assert_eq!(a.group, b.group);
        prop_assert_eq!(a.torsion_number, b.torsion_number);
        prop_assert_eq!(a.pure, b.pure);
    }

    #[test]
    fn modes_agree(n in 0usize..=6, mask in any::<u64>()) {
        let p = poset_from_mask(n, mask);
        let bp = p.bound();
        let forms: Vec<Vec<BigInt>> =
            joinmeet::support_forms::<BigInt>(&bp).into_iter().map(|f| f.coeffs).collect();
        let cone = ConeDescription::new(n + 1, forms, None).unwrap();
        let by_cone = cone_report(&cone).unwrap();
        let by_poset = joinmeet::joinmeet_report::<BigInt>(&p).unwrap();
        prop_assert_eq!(by_cone.group, by_poset.group);
        prop_assert_eq!(by_cone.torsion_number, by_poset.torsion_number);
        prop_assert_eq!(by_cone.gorenstein, by_poset.gorenstein);
    }

    #[test]
    fn tree_independence(n in 0usize..=7, mask in any::<u64>()) {
        let p = poset_from_mask(n, mask);
        let a = joinmeet::analyze_with::<BigInt>(&p, TreeRule::SmallestTarget).unwrap();
        let b = joinmeet::analyze_with::<BigInt>(&p, TreeRule::LargestTarget).unwrap();
        prop_assert_eq!(a.report.torsion_number, b.report.torsion_number);
        prop_assert_eq!(a.report.gorenstein, b.report.gorenstein);
        let coeffs_ok = a.expression.tree_coeffs.iter().flatten().all(|c| c.abs() <= BigInt::one());
        prop_assert!(coeffs_ok);
    }

    #[test]
    fn cone_permutation_invariance(
        forms in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..=5),
        rot in 0usize..5,
    ) {
        let prim: Vec<Vec<BigInt>> = forms
            .iter()
            .filter(|f| f.iter().any(|&x| x != 0))
            .map(|f| {
                let g = f.iter().fold(0i64, |a, &x| a.gcd(&x));
                f.iter().map(|&x| big(x / g)).collect()
            })
            .collect();
        prop_assume!(!prim.is_empty());
        let base = cone_report(&ConeDescription::new(3, prim.clone(), None).unwrap()).unwrap();

        let mut rows = prim.clone();
        let len = rows.len();
        rows.rotate_left(rot % len);
        let by_rows = cone_report(&ConeDescription::new(3, rows, None).unwrap()).unwrap();

        let swapped: Vec<Vec<BigInt>> =
            prim.iter().map(|f| vec![f[2].clone(), f[0].clone(), f[1].clone()]).collect();
        let by_cols = cone_report(&ConeDescription::new(3, swapped, None).unwrap()).unwrap();

        for other in [by_rows, by_cols] {
            prop_assert_eq!(&other.group, &base.group);
            prop_assert_eq!(&other.reduced_group, &base.reduced_group);
            prop_assert_eq!(&other.torsion_number, &base.torsion_number);
            prop_assert_eq!(other.gorenstein, base.gorenstein);
        }
        if let Some(c) = &base.canonical_in_basis {
            prop_assert_eq!(gcd_all(&c.coords), base.torsion_number.clone());
        }
    }
}

#[test]
fn veronese_smith_against_minor_enumeration() {
    for n in 1..=5usize {
        for r in 1..=6i64 {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i + 1 < n {
                                (i == j) as i64
                            } else if j + 1 < n {
                                -1
                            } else {
                                r
                            }
                        })
                        .collect()
                })
                .collect();
            let snf = smith_normal_form(&matrix(&rows, n));
            let mut prev = 1i128;
            for k in 1..=n {
                let g = brute_minor_gcd(&rows, n, k);
                assert_eq!(snf.invariant_factors[k - 1], BigInt::from(g / prev), "n={n} r={r} k={k}");
                prev = g;
            }
        }
    }
}

#[test]
fn cyclic_quotient_matches_enumeration() {
    // Z/6 modulo <4>: the subgroup generated by 4 has residues {0, 2, 4}.
    let sub: std::collections::BTreeSet<i64> = (0..6).map(|k| (4 * k) % 6).collect();
    let order = 6 / sub.len() as i64;
    let q = presentation(1, &[vec![6]]).quotient_by(&elem(&[4])).unwrap();
    assert_eq!(q.structure().torsion_order(), big(order));
}

#[test]
fn rank_of_segre_matrix() {
    let c = clgroup::semigroup::segre_veronese_cone::<BigInt>(4, 2, 9, 3).unwrap();
    let a = c.relation_matrix();
    assert_eq!(a.rank(), 12);
}
