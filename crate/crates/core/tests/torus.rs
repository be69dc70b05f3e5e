use std::sync::Arc;

use coha::dt::{dt_series_zero_potential, macmahon};
use coha::{Basis, CentralCharge, DimVector, Error, LaurentQ, QRational, Quiver, TorusSeries};
use proptest::prelude::*;

fn dv(v: &[i64]) -> DimVector {
    DimVector(v.to_vec())
}

fn coefficient() -> impl Strategy<Value = QRational> {
    (
        prop::collection::vec((-3i64..=3, -2i64..=2), 1..3),
        prop::collection::btree_map(1u32..=2, 1u32..=1, 0..2),
    )
        .prop_map(|(t, d)| QRational::new(LaurentQ::from_int_terms(&t), d))
}

/// A rank-2 series with constant term 1 and a few random coefficients.
fn series(q: Arc<Quiver>, basis: Basis, n: u32) -> impl Strategy<Value = TorusSeries> {
    prop::collection::vec(((0i64..=3, 0i64..=3), coefficient()), 0..5).prop_map(move |terms| {
        let mut all = vec![(dv(&[0, 0]), QRational::one())];
        all.extend(
            terms
                .into_iter()
                .filter(|((a, b), _)| a + b >= 1)
                .map(|((a, b), c)| (dv(&[a, b]), c)),
        );
        TorusSeries::from_coeffs(q.clone(), basis, n, all).unwrap()
    })
}

fn quiver() -> impl Strategy<Value = Arc<Quiver>> {
    prop::collection::vec(0u32..=2, 4)
        .prop_map(|a| Arc::new(Quiver::from_matrix(&[vec![a[0], a[1]], vec![a[2], a[3]]]).unwrap()))
}

fn triple(basis: Basis) -> impl Strategy<Value = (TorusSeries, TorusSeries, TorusSeries)> {
    (quiver(), 3u32..=6).prop_flat_map(move |(q, n)| {
        (series(q.clone(), basis, n), series(q.clone(), basis, n), series(q, basis, n))
    })
}

fn charge() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-5i64..=5, 1i64..=5), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_is_associative((f, g, h) in triple(Basis::EHat)) {
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn associative_in_the_e_basis_too((f, g, h) in triple(Basis::E)) {
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn change_basis_intertwines_products((f, g, _) in triple(Basis::E)) {
        let lhs = f.mul(&g).unwrap().change_basis();
        let rhs = f.change_basis().mul(&g.change_basis()).unwrap();
        prop_assert_eq!(lhs.basis(), Basis::EHat);
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.change_basis(), f.mul(&g).unwrap());
    }

    #[test]
    fn inverse_of_a_product((f, g, _) in triple(Basis::EHat)) {
        let fg = f.mul(&g).unwrap();
        let inv = g.inverse().unwrap().mul(&f.inverse().unwrap()).unwrap();
        prop_assert_eq!(fg.inverse().unwrap(), inv.clone());
        prop_assert!(fg.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn conjugation_is_multiplicative((f, g, _) in triple(Basis::EHat), d in prop::collection::vec(-3i64..=3, 2)) {
        let lhs = f.mul(&g).unwrap().f_conjugate(&d).unwrap();
        let rhs = f.f_conjugate(&d).unwrap().mul(&g.f_conjugate(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn peeled_factors_multiply_back((f, _, _) in triple(Basis::EHat), z in charge()) {
        let z = CentralCharge::from_ints(f.quiver(), &z).unwrap();
        match f.hn_peel(&z) {
            Ok(factors) => {
                let back = TorusSeries::product(f.quiver().clone(), f.basis(), f.truncation(), factors.iter().map(|(_, a)| a)).unwrap();
                prop_assert_eq!(back, f);
            }
            Err(Error::NonGeneric(_)) => prop_assert!(!z.is_generic(f.truncation())),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn wall_crossing_consistency(z1 in charge(), z2 in charge(), kronecker in any::<bool>()) {
        let q = Arc::new(if kronecker { Quiver::from_matrix(&[vec![0, 2], vec![0, 0]]).unwrap() } else { Quiver::a_n(2) });
        let n = 5;
        let a = dt_series_zero_potential(q.clone(), n);
        let z1 = CentralCharge::from_ints(&q, &z1).unwrap();
        let z2 = CentralCharge::from_ints(&q, &z2).unwrap();
        prop_assume!(z1.is_generic(n) && z2.is_generic(n));
        let f1 = a.hn_peel(&z1).unwrap();
        let f2 = a.hn_peel(&z2).unwrap();
        let p1 = TorusSeries::product(q.clone(), a.basis(), n, f1.iter().map(|(_, f)| f)).unwrap();
        let p2 = TorusSeries::product(q.clone(), a.basis(), n, f2.iter().map(|(_, f)| f)).unwrap();
        prop_assert_eq!(&p1, &p2);
        prop_assert_eq!(&p1, &a);
    }
}

#[test]
fn twisted_products_of_generators() {
    let q = Arc::new(Quiver::from_matrix(&[vec![1, 2], vec![0, 0]]).unwrap());
    let gens = [dv(&[1, 0]), dv(&[0, 1]), dv(&[1, 1]), dv(&[2, 1])];
    for a in &gens {
        for b in &gens {
            for basis in [Basis::E, Basis::EHat] {
                let x = |g: &DimVector| {
                    TorusSeries::from_coeffs(q.clone(), basis, 6, [(g.clone(), QRational::one())]).unwrap()
                };
                let p = x(a).mul(&x(b)).unwrap();
                let want = match basis {
                    Basis::E => QRational::one().shift(-2 * q.chi(a, b)),
                    Basis::EHat => QRational::one().mul_minus_v_pow(-q.skew(a, b)),
                };
                assert_eq!(p.coeff(&(a + b)), want, "{basis:?} {a} {b}");
            }
        }
    }
}

#[test]
fn three_loop_series_is_a_single_ray() {
    let a = macmahon(6);
    let q = a.quiver().clone();
    let z = CentralCharge::from_ints(&q, &[(1, 1)]).unwrap();
    let factors = a.hn_peel(&z).unwrap();
    assert_eq!(factors.len(), 1);
    assert_eq!(factors[0].1, a);
}

#[test]
fn peel_rejects_non_unit_constants() {
    let q = Arc::new(Quiver::a_n(2));
    let f = TorusSeries::from_coeffs(q.clone(), Basis::EHat, 3, [(dv(&[0, 0]), QRational::from_int(2))]).unwrap();
    let z = CentralCharge::from_ints(&q, &[(-1, 1), (1, 1)]).unwrap();
    assert!(matches!(f.hn_peel(&z), Err(Error::NonUnitConstant)));
    let collinear = CentralCharge::from_ints(&q, &[(1, 1), (2, 2)]).unwrap();
    let a = dt_series_zero_potential(q, 3);
    assert!(matches!(a.hn_peel(&collinear), Err(Error::NonGeneric(_))));
}
