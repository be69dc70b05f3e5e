use coha::{mutate_potential, CentralCharge, CyclicWord, DimVector, Error, Potential, Quiver};
use num_rational::BigRational;
use proptest::prelude::*;

fn matrix(n: usize, max: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=max, n), n)
}

fn quiver_and_vectors() -> impl Strategy<Value = (Vec<Vec<u32>>, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (1usize..=4).prop_flat_map(|n| {
        let v = || prop::collection::vec(-5i64..=5, n);
        (matrix(n, 3), v(), v(), v())
    })
}

/// A matrix with no loop at vertex 0, the vertex that gets mutated.
fn loop_free_at_zero() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..=4).prop_flat_map(|n| matrix(n, 2)).prop_map(|mut a| {
        a[0][0] = 0;
        a
    })
}

proptest! {
    #[test]
    fn euler_form_is_bilinear((a, g1, g1b, g2) in quiver_and_vectors()) {
        let q = Quiver::from_matrix(&a).unwrap();
        let (g1, g1b, g2) = (DimVector(g1), DimVector(g1b), DimVector(g2));
        let sum = &g1 + &g1b;
        prop_assert_eq!(q.euler_form(&sum, &g2).unwrap(), q.chi(&g1, &g2) + q.chi(&g1b, &g2));
        prop_assert_eq!(q.chi(&g2, &sum), q.chi(&g2, &g1) + q.chi(&g2, &g1b));
    }

    #[test]
    fn skew_form_is_antisymmetric((a, g1, g2, _) in quiver_and_vectors()) {
        let q = Quiver::from_matrix(&a).unwrap();
        let (g1, g2) = (DimVector(g1), DimVector(g2));
        prop_assert_eq!(q.skew_form(&g1, &g2).unwrap(), -q.skew_form(&g2, &g1).unwrap());
        prop_assert_eq!(q.skew(&g1, &g1), 0);
    }

    #[test]
    fn mutated_arrow_counts(a in loop_free_at_zero()) {
        let q = Quiver::from_matrix(&a).unwrap();
        let m = q.mutate("1").unwrap();
        let n = a.len();
        prop_assert_eq!(m.matrix(), &q.mutated_matrix(0)[..]);
        for j1 in 1..n {
            for j2 in 1..n {
                prop_assert_eq!(m.count(j1, j2), a[j1][j2] + a[j1][0] * a[0][j2]);
            }
            prop_assert_eq!(m.count(0, j1), a[j1][0]);
            prop_assert_eq!(m.count(j1, 0), a[0][j1]);
        }
        prop_assert_eq!(m.count(0, 0), 0);
    }

    #[test]
    fn double_mutation_counts(a in loop_free_at_zero()) {
        let q = Quiver::from_matrix(&a).unwrap();
        let twice = q.mutate("1").unwrap().mutate("1").unwrap();
        let n = a.len();
        for j1 in 0..n {
            for j2 in 0..n {
                let want = if j1 == 0 || j2 == 0 {
                    a[j1][j2]
                } else {
                    a[j1][j2] + a[j1][0] * a[0][j2] + a[0][j1] * a[j2][0]
                };
                prop_assert_eq!(twice.count(j1, j2), want, "entry ({}, {})", j1, j2);
            }
        }
    }

    #[test]
    fn slope_order_is_a_strict_weak_order(
        z in prop::collection::vec((-6i64..=6, 1i64..=6), 3),
        vs in prop::collection::vec(prop::collection::vec(0i64..=3, 3), 3),
    ) {
        let q = Quiver::from_matrix(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let z = CentralCharge::from_ints(&q, &z).unwrap();
        let vs: Vec<DimVector> = vs.into_iter().map(DimVector).filter(|v| !v.is_zero()).collect();
        for a in &vs {
            prop_assert!(!z.slope_less(a, a).unwrap());
            for b in &vs {
                let ab = z.slope_less(a, b).unwrap();
                prop_assert!(!(ab && z.slope_less(b, a).unwrap()));
                for c in &vs {
                    if ab && z.slope_less(b, c).unwrap() {
                        prop_assert!(z.slope_less(a, c).unwrap());
                    }
                    // incomparability is transitive
                    let inc = |x: &DimVector, y: &DimVector| {
                        !z.slope_less(x, y).unwrap() && !z.slope_less(y, x).unwrap()
                    };
                    if inc(a, b) && inc(b, c) {
                        prop_assert!(inc(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn a2_mutated_at_its_source() {
    let m = Quiver::a_n(2).mutate("2").unwrap();
    assert_eq!(m.matrix(), [vec![0, 1], vec![0, 0]]);
    assert_eq!(m.arrows().len(), 1);
}

#[test]
fn triangle_mutation_arrows() {
    let m = Quiver::triangle().mutate("1").unwrap();
    let mut arrows: Vec<(String, String, String)> = m
        .arrows()
        .iter()
        .map(|a| (a.tail.clone(), a.head.clone(), a.name.clone()))
        .collect();
    arrows.sort();
    let want = [("1", "3", "a31*"), ("2", "1", "a12*"), ("2", "3", "a23"), ("3", "2", "[a12∘a31]")];
    let want: Vec<(String, String, String)> = want
        .iter()
        .map(|(t, h, n)| (t.to_string(), h.to_string(), n.to_string()))
        .collect();
    assert_eq!(arrows, want);
}

#[test]
fn mutating_a_vertex_without_loops_or_arrows() {
    let q = Quiver::loops(0);
    assert_eq!(q.mutate("1").unwrap(), q);
    assert!(matches!(Quiver::loops(1).mutate("1"), Err(Error::LoopAtVertex(_))));
}

#[test]
fn triangle_potential_mutation() {
    let q = Quiver::triangle();
    let w = Potential::new(
        &q,
        vec![(BigRational::from_integer(1.into()), CyclicWord::path(["a12", "a23", "a31"]))],
    )
    .unwrap();
    let (_, w2) = mutate_potential(&q, &w, "1").unwrap();
    let one = BigRational::from_integer(1.into());
    assert_eq!(w2.len(), 2);
    assert_eq!(w2.coefficient(&CyclicWord::path(["a31*", "[a12∘a31]", "a12*"])), one);
    assert_eq!(w2.coefficient(&CyclicWord::path(["a23", "[a12∘a31]"])), one);
}

#[test]
fn mutated_dimension_vectors() {
    let q = Quiver::a_n(3);
    // vertex 2 sends the single arrow 2 -> 1, so γ'^2 = γ^1 − γ^2
    let g = DimVector(vec![3, 1, 1]);
    assert_eq!(q.mutated_dim_vector("2", &g).unwrap(), DimVector(vec![3, 2, 1]));
    assert!(matches!(
        q.mutated_dim_vector("1", &DimVector(vec![1, 0, 0])),
        Err(Error::NegativeDimension(_))
    ));
}
