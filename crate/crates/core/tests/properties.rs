use std::sync::Arc;

use proptest::prelude::*;

use kndeg_core::curve::{basis_function, divisor_of_basis, expand_in_basis, CurveFunction, CurveSpec, MarkingCase, PointId};
use kndeg_core::degen::{classify, Desingularization, Subcase};
use kndeg_core::kn::{basis_vf, jacobi_residual};
use kndeg_core::p1fn::P1Function;
use kndeg_core::param::Monomial;
use kndeg_core::{rat, Laurent, ParamPoly, ParamScalar, Specialization, Symbol};

fn small_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((-3i64..=3, 0u16..=2, 0u16..=2, 0u16..=1), 1..4).prop_map(|terms| {
        ParamPoly::from_terms(terms.into_iter().map(|(c, i, j, k)| {
            (Monomial([i, j, k, 0]), rat(c))
        }))
    })
}

fn scalar() -> impl Strategy<Value = ParamScalar> {
    (small_poly(), small_poly()).prop_filter_map("nonzero denominator", |(n, d)| ParamScalar::new(n, d).ok())
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-2i64..=3, -2i64..=2), 0..4)
        .prop_map(|t| Laurent::from_coeffs(t.into_iter().map(|(k, c)| (k, ParamScalar::from_int(c)))))
}

fn three() -> Arc<CurveSpec> {
    CurveSpec::symbolic(MarkingCase::ThreePoint).shared()
}

fn two() -> Arc<CurveSpec> {
    CurveSpec::symbolic(MarkingCase::TwoPoint).shared()
}

fn curve_fn(c: &Arc<CurveSpec>) -> impl Strategy<Value = CurveFunction> {
    let c = c.clone();
    (laurent(), laurent()).prop_map(move |(p, q)| CurveFunction::new(c.clone(), p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(x in scalar()) {
        prop_assert_eq!(x.canonicalized(), x.clone());
        prop_assert_eq!(x.canonicalized().to_canonical(), x.to_canonical());
    }

    #[test]
    fn specialization_is_a_homomorphism(x in scalar(), y in scalar(), v1 in -5i64..=5, v2 in -5i64..=5) {
        let s = Specialization::from_rationals([(Symbol::E1, rat(v1)), (Symbol::E2, rat(v2))]);
        if let (Ok(sx), Ok(sy)) = (s.apply(&x), s.apply(&y)) {
            prop_assert_eq!(s.apply(&(&x + &y)).unwrap(), &sx + &sy);
            prop_assert_eq!(s.apply(&(&x * &y)).unwrap(), &sx * &sy);
        }
    }

    #[test]
    fn coordinate_ring_laws(f in curve_fn(&three()), g in curve_fn(&three()), h in curve_fn(&three())) {
        let fg = f.mul(&g).unwrap();
        prop_assert_eq!(&fg, &g.mul(&f).unwrap());
        prop_assert_eq!(fg.mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            fg.add(&f.mul(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn leibniz(f in curve_fn(&two()), g in curve_fn(&two())) {
        let lhs = f.mul(&g).unwrap().derive_dz();
        let rhs = f.derive_dz().mul(&g).unwrap().add(&f.mul(&g.derive_dz()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_round_trip(f in curve_fn(&three())) {
        let e = expand_in_basis(&f);
        prop_assert_eq!(e.to_function(f.curve()), f);
    }

    #[test]
    fn rational_functions_on_the_line(a in laurent(), b in laurent(), k in -2i64..=2) {
        let c = ParamScalar::e().scale(&rat(3));
        let f = P1Function::from_laurent(a).mul(&P1Function::quadratic_power(&c, k));
        let g = P1Function::from_laurent(b).mul(&P1Function::quadratic_power(&-&c, -1));
        prop_assert_eq!(f.add(&g).sub(&g), f.clone());
        prop_assert_eq!(
            f.mul(&g).derivative(),
            f.derivative().mul(&g).add(&f.mul(&g.derivative()))
        );
    }
}

#[test]
fn divisors_of_basis_elements() {
    for n in -6..=6i64 {
        let d2 = divisor_of_basis(&two(), n).unwrap();
        assert_eq!(d2.degree(), 0, "two-point n={n}");
        assert_eq!(d2.order(&PointId::Infinity), -n);
        let d3 = divisor_of_basis(&three(), n).unwrap();
        assert_eq!(d3.degree(), 0, "three-point n={n}");
        let k = n.div_euclid(2);
        if n.rem_euclid(2) == 0 {
            assert_eq!(d3.order(&PointId::MarkedPlus), k);
            assert_eq!(d3.order(&PointId::MarkedMinus), k);
            assert_eq!(d3.order(&PointId::Infinity), -2 * k);
        } else {
            assert_eq!(d3.order(&PointId::MarkedPlus), k - 1);
            assert_eq!(d3.order(&PointId::Infinity), -2 * k - 1);
            for i in 1..=3 {
                assert_eq!(d3.order(&PointId::TwoTorsion(i)), 1);
            }
        }
    }
}

#[test]
fn jacobi_two_point() {
    let c = two();
    for n in -3..=3 {
        for m in -3..=3 {
            for p in -3..=3 {
                assert!(jacobi_residual(&c, n, m, p).is_zero(), "({n},{m},{p})");
            }
        }
    }
}

#[test]
fn basis_fields_are_monomials() {
    let c = three();
    for n in -4..=4 {
        let v = basis_vf(&c, n);
        assert!(v.coeff().as_monomial().is_some());
        assert_eq!(basis_function(&c, n), *v.coeff());
    }
}

#[test]
fn parametrizations_hit_the_node_twice() {
    let e = ParamScalar::e();
    for s in Subcase::ALL.into_iter().filter(|s| !s.is_cuspidal()) {
        let d = Desingularization::new(s, &e);
        let c = s.curve();
        assert!(matches!(classify(c.e1(), c.e2(), c.e3()), kndeg_core::degen::DegenerationKind::Nodal(_)));
        let three_e = e.scale(&rat(3));
        // X - e and Y both vanish on the two roots of t^2 - 3e
        let x_minus_e = d.x().sub(&P1Function::constant(e.clone()));
        assert_eq!(x_minus_e.order_at_roots(&three_e), Some(1));
        assert_eq!(d.y().order_at_roots(&three_e), Some(1));
        assert_eq!(x_minus_e.numerator().max_exp(), Some(2));
    }
}
