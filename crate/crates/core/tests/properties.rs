use proptest::prelude::*;

use wittmod::cover::{reduce_to_box, CoverElement};
use wittmod::exact::{kernel_basis, solve_in_span, ParamPoly, RatMatrix, Rational};
use wittmod::glnmod::{highest_weight_module, weyl_dimension, HighestWeightSpec};
use wittmod::kweight::{KGen, KWeightModule, Rank1Type};
use wittmod::lincomb::LinComb;
use wittmod::series::VabModule;
use wittmod::tensormod::{
    convolution_dim, hc_classify_n2, GlnSpec, QSet, TBasis, TensorModule, Window,
};
use wittmod::uea::{act_on_module, NormalOrderer, UElem};
use wittmod::witt::{Grading, MultiIndex, WittElem, WittGen};

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

fn index(n: usize, d: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=d, n).prop_filter_map("total degree", move |v| {
        let m = MultiIndex::from_slice(&v);
        (m.total() <= d).then_some(m)
    })
}

fn gen(n: usize, d: u32) -> impl Strategy<Value = WittGen> {
    (index(n, d), 0..n).prop_map(|(a, i)| WittGen::new(a, i))
}

fn field(n: usize, d: u32) -> impl Strategy<Value = WittElem> {
    prop::collection::vec((gen(n, d), rational()), 1..=3)
        .prop_map(move |t| WittElem::from_terms(n, t))
}

fn param_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((rational(), 0u32..=2, 0u32..=2), 1..=3).prop_map(|terms| {
        let mut p = ParamPoly::constant(Rational::from(0));
        for (c, i, j) in terms {
            let mut m = ParamPoly::constant(c);
            for _ in 0..i {
                m = m * &ParamPoly::var("a");
            }
            for _ in 0..j {
                m = m * &ParamPoly::var("b");
            }
            p += &m;
        }
        p
    })
}

fn factor() -> impl Strategy<Value = Rank1Type> {
    prop_oneof![
        Just(Rank1Type::Poly),
        Just(Rank1Type::Torsion),
        Just(Rank1Type::Laurent(Rational::new(1, 2))),
        Just(Rank1Type::Laurent(Rational::new(-2, 3)))
    ]
}

fn qset() -> impl Strategy<Value = QSet> {
    prop_oneof![Just(QSet::Z), Just(QSet::ZPlus), Just(QSet::ZMinus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn param_poly_ring_axioms(x in param_poly(), y in param_poly(), z in param_poly()) {
        prop_assert_eq!(x.clone() * &(y.clone() * &z), (x.clone() * &y) * &z);
        prop_assert_eq!(x.clone() * &(y.clone() + &z), x.clone() * &y + &(x.clone() * &z));
        prop_assert_eq!(x.clone() + &y, y.clone() + &x);
        prop_assert_eq!(x.clone() * &y, y * &x);
    }

    #[test]
    fn lincomb_never_stores_zeros(terms in prop::collection::vec((0u8..6, rational()), 0..12)) {
        let mut v: LinComb<u8> = LinComb::new();
        for (k, c) in &terms {
            v.add_term(*k, c.clone());
            v.add_term(*k, -c.clone());
            v.add_term(*k, c.clone());
        }
        prop_assert!(v.iter().all(|(_, c)| *c != Rational::from(0)));
        prop_assert!(v.minus(&v).is_zero());
    }

    #[test]
    fn rank_nullity_and_solve_residual(rows in prop::collection::vec(prop::collection::vec(rational(), 4), 1..5), c in prop::collection::vec(rational(), 4)) {
        let m = RatMatrix::from_rows(&rows);
        let ker = kernel_basis(&m);
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == Rational::from(0)));
        }
        let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|j| m.column(j)).collect();
        let target = m.mul_vec(&c);
        let sol = solve_in_span(&cols, &target).unwrap().expect("target is in the span");
        prop_assert_eq!(m.mul_vec(&sol), target);
    }

    #[test]
    fn witt_bracket_laws_and_grading((x, y, z) in (1usize..=3).prop_flat_map(|n| (field(n, 4), field(n, 4), field(n, 4)))) {
        let b = |p: &WittElem, q: &WittElem| p.bracket(q).unwrap();
        prop_assert!(b(&x, &y).plus(&b(&y, &x)).is_zero());
        prop_assert!(b(&x, &b(&y, &z)).plus(&b(&y, &b(&z, &x))).plus(&b(&z, &b(&x, &y))).is_zero());
        if let (Grading::Homogeneous(p), Grading::Homogeneous(q)) = (x.grading_degree(), y.grading_degree()) {
            match b(&x, &y).grading_degree() {
                Grading::Homogeneous(r) => prop_assert_eq!(r, p + q),
                g => prop_assert_eq!(g, Grading::Zero),
            }
        }
    }

    #[test]
    fn normal_ordering_is_confluent(f in prop::collection::vec(gen(2, 2), 1..=4)) {
        let o = NormalOrderer::default();
        let direct = o.normal_order_u(2, &f).unwrap();
        let mut left = UElem::one(2);
        for g in &f {
            left = o.mul(&left, &UElem::generator(g.clone())).unwrap();
        }
        let mut right = UElem::one(2);
        for g in f.iter().rev() {
            right = o.mul(&UElem::generator(g.clone()), &right).unwrap();
        }
        prop_assert_eq!(&direct, &left);
        prop_assert_eq!(&direct, &right);
    }

    #[test]
    fn action_of_products(x in prop::collection::vec(0u32..=3, 1..=2), y in prop::collection::vec(0u32..=3, 1..=2), s in -4i64..=4) {
        let o = NormalOrderer::default();
        let word = |e: &[u32]| o.normal_order_u(1, &e.iter().map(|&k| WittGen::new(MultiIndex::from_slice(&[k]), 0)).collect::<Vec<_>>()).unwrap();
        let (ux, uy) = (word(&x), word(&y));
        let v = LinComb::basis(s);
        let module = VabModule::generic();
        let lhs = act_on_module(&o.mul(&ux, &uy).unwrap(), &module, &v, None).unwrap();
        let rhs = act_on_module(&ux, &module, &act_on_module(&uy, &module, &v, None).unwrap(), None).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gl_modules_satisfy_relations(n in 1usize..=3, psi in prop::collection::vec(0u32..=2, 2), b in rational()) {
        let psi: Vec<u32> = psi.into_iter().take(n - 1).collect();
        prop_assume!(psi.iter().sum::<u32>() <= 3);
        let m = highest_weight_module(&HighestWeightSpec { n, psi: psi.clone(), b }).unwrap();
        prop_assert_eq!(m.relation_residue(), 0);
        prop_assert_eq!(m.weight_residue(), 0);
        prop_assert_eq!(Rational::from(m.dim()), weyl_dimension(n, &psi));
    }

    #[test]
    fn weyl_relation_on_rank_one_factors(t in factor(), k in -6i64..=6) {
        let p = KWeightModule::new(vec![t]);
        prop_assume!(p.in_support(&[k]));
        let apply = |g: KGen, v: Option<(Vec<i64>, Rational)>| -> Option<(Vec<i64>, Rational)> {
            let (w, c) = v?;
            let (w2, c2) = p.act_generator(g, &w).ok()??;
            Some((w2, c * &c2))
        };
        let start = Some((vec![k], Rational::from(1)));
        let dt = apply(KGen::D(0), apply(KGen::T(0), start.clone()));
        let td = apply(KGen::T(0), apply(KGen::D(0), start));
        let coeff = |v: &Option<(Vec<i64>, Rational)>| v.as_ref().map_or(Rational::from(0), |x| x.1.clone());
        prop_assert_eq!(coeff(&dt) - &coeff(&td), Rational::from(1));
    }

    #[test]
    fn tensor_dims_are_bounded_convolutions(f1 in factor(), f2 in factor(), k in 0usize..=2, r in 1i64..=3) {
        let f = TensorModule::from_spec(KWeightModule::new(vec![f1, f2]), &GlnSpec::Ext { k }).unwrap();
        let w = Window::around_anchor(&f, r);
        for nu in w.bbox().points() {
            let d = w.weight_space_dim(&nu).unwrap();
            prop_assert_eq!(d, convolution_dim(&f, &nu));
            prop_assert!(d <= f.m().dim());
        }
    }

    #[test]
    fn hc_verdict_is_swap_symmetric(a in qset(), b in qset(), c in qset()) {
        prop_assert_eq!(hc_classify_n2(a, b, c), hc_classify_n2(b, a, c.negated()));
    }

    #[test]
    fn reduction_preserves_weight(alpha in index(2, 7), beta in index(2, 2), l in 0usize..2, p in 0usize..2, m in 1u32..=3) {
        let e = reduce_to_box(&alpha, l, &beta, p, m);
        let weight = |g: &WittGen, h: &WittGen| -> Vec<i64> { g.weight().iter().zip(h.weight()).map(|(x, y)| x + y).collect() };
        let w0 = weight(&e.input.0, &e.input.1);
        for ((g, h), _) in &e.box_terms {
            prop_assert!(g.alpha.entries().iter().all(|&x| x <= m));
            prop_assert_eq!(weight(g, h), w0.clone());
        }
        for step in &e.trace {
            prop_assert!(step.generator.alpha.get(step.generator.j) >= m);
        }
    }

    #[test]
    fn cover_function_action_is_associative(g in gen(2, 3), gamma in index(2, 3), delta in index(2, 3)) {
        let x: CoverElement<TBasis> = CoverElement::single(g, TBasis { k: vec![1, 2], m: 0 });
        prop_assert_eq!(x.times_function(&delta).times_function(&gamma), x.times_function(&gamma.add(&delta)));
    }

    #[test]
    fn vab_weights_lie_in_a_plus_z(s in -10i64..=10) {
        let module = VabModule::generic();
        let w = module.weight(s) - &ParamPoly::var("a");
        prop_assert_eq!(w.as_constant(), Some(Rational::from(s)));
    }
}
