use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use wreathk::classfun::{external_tensor, induce, restrict, ClassFunction};
use wreathk::complex::{
    betti, bredon_dims, connective_k_dims, equivariant_k_dims, GSimplicialComplex,
};
use wreathk::group::{direct_product, FiniteGroup, GroupEmbedding, DEFAULT_ORDER_CAP as CAP};
use wreathk::hopf::FqAlgebra;
use wreathk::qseries::{eta_power, odd_product, qs_mul};
use wreathk::wreath::{class_label, enumerate_class_labels, wreath_group, wreath_order};
use wreathk::Rational;

fn perm(degree: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle()
}

/// Subgroups of S₄ generated by up to three random permutations.
fn perm_group() -> impl Strategy<Value = Arc<FiniteGroup>> {
    prop::collection::vec(perm(4), 1..=3)
        .prop_map(|gens| Arc::new(FiniteGroup::from_permutations("H", 4, &gens, CAP).unwrap()))
}

fn small_bases() -> Vec<Arc<FiniteGroup>> {
    vec![
        Arc::new(FiniteGroup::trivial()),
        Arc::new(FiniteGroup::cyclic(2).unwrap()),
        Arc::new(FiniteGroup::cyclic(3).unwrap()),
        Arc::new(FiniteGroup::symmetric(3, CAP).unwrap()),
    ]
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_equation_and_centralizers(g in perm_group()) {
        let ct = g.class_table();
        prop_assert_eq!((0..ct.len()).map(|c| ct.size(c)).sum::<usize>(), g.order());
        for x in 0..g.order() {
            let z = g.centralizer(x).len();
            prop_assert_eq!(g.order() % z, 0);
            prop_assert_eq!(ct.size(ct.class_of(x)) * z, g.order());
        }
    }

    #[test]
    fn classes_are_conjugation_closed(g in perm_group()) {
        let ct = g.class_table();
        for c in 0..ct.len() {
            for x in 0..g.order() {
                prop_assert_eq!(ct.class_of(g.conjugate(ct.rep(c), x)), c);
            }
        }
    }

    #[test]
    fn direct_product_class_count(a in perm_group(), b in 1usize..=4) {
        let c = Arc::new(FiniteGroup::cyclic(b).unwrap());
        let (p, _, _) = direct_product(&a, &c, CAP).unwrap();
        prop_assert_eq!(p.class_count(), a.class_count() * c.class_count());
    }

    #[test]
    fn induction_is_additive_and_homogeneous(
        u in prop::collection::vec(-5i64..=5, 2),
        v in prop::collection::vec(-5i64..=5, 2),
        s in -4i64..=4,
        t in 1i64..=4,
    ) {
        let s3 = Arc::new(FiniteGroup::symmetric(3, CAP).unwrap());
        let c2 = Arc::new(FiniteGroup::from_permutations("C2", 3, &[vec![1, 0, 2]], CAP).unwrap());
        let map = (0..c2.order())
            .map(|h| (0..s3.order()).find(|&g| s3.element_name(g) == c2.element_name(h)).unwrap())
            .collect();
        let emb = GroupEmbedding::new(c2.clone(), s3.clone(), map).unwrap();
        let f = ClassFunction::new(c2.clone(), u.iter().map(|&x| rat(x)).collect()).unwrap();
        let h = ClassFunction::new(c2.clone(), v.iter().map(|&x| rat(x)).collect()).unwrap();
        let scale = Rational::new(s.into(), t.into());
        prop_assert_eq!(
            induce(&emb, &f.add(&h).unwrap()).unwrap(),
            induce(&emb, &f).unwrap().add(&induce(&emb, &h).unwrap()).unwrap()
        );
        prop_assert_eq!(induce(&emb, &f.scale(&scale)).unwrap(), induce(&emb, &f).unwrap().scale(&scale));
    }

    #[test]
    fn restriction_of_external_tensor(
        u in prop::collection::vec(-6i64..=6, 3),
        v in prop::collection::vec(-6i64..=6, 2),
    ) {
        let s3 = Arc::new(FiniteGroup::symmetric(3, CAP).unwrap());
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let f = ClassFunction::new(s3.clone(), u.iter().map(|&x| rat(x)).collect()).unwrap();
        let h = ClassFunction::new(c2.clone(), v.iter().map(|&x| rat(x)).collect()).unwrap();
        let t = external_tensor(&f, &h, CAP).unwrap();
        let (p, left, right) = direct_product(&s3, &c2, CAP).unwrap();
        prop_assert!(Arc::ptr_eq(t.group(), &p) || **t.group() == *p);
        let left = GroupEmbedding::new(left.source().clone(), t.group().clone(), (0..6).map(|g| left.map(g)).collect()).unwrap();
        let right = GroupEmbedding::new(right.source().clone(), t.group().clone(), (0..2).map(|g| right.map(g)).collect()).unwrap();
        // restricting to G × 1 scales f by h(1), and to 1 × H scales h by f(1)
        prop_assert_eq!(restrict(&left, &t).unwrap(), f.scale(&rat(v[0])));
        prop_assert_eq!(restrict(&right, &t).unwrap(), h.scale(&rat(u[0])));
    }

    #[test]
    fn eta_exponents_add(e1 in -6i64..=6, e2 in -6i64..=6, n in 0usize..=12) {
        prop_assert_eq!(eta_power(e1 + e2, n), qs_mul(&eta_power(e1, n), &eta_power(e2, n)).unwrap());
    }

    #[test]
    fn odd_product_is_eta_quotient(d in 0u64..=5, n in 0usize..=14) {
        let num = eta_power(d as i64, n).dilate(2);
        let den = eta_power(-(d as i64), n);
        prop_assert_eq!(odd_product(d, n), qs_mul(&num, &den).unwrap());
    }
}

#[test]
fn class_label_is_a_complete_class_invariant() {
    for base in small_bases() {
        for n in 1..=3 {
            if wreath_order(base.order(), n) > 300 {
                continue;
            }
            let w = wreath_group(&base, n, CAP).unwrap();
            let g = w.group();
            let ct = g.class_table();
            let labels: Vec<_> = (0..g.order())
                .map(|x| class_label(&base, &w.element(x)))
                .collect();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let conj = ct.class_of(a) == ct.class_of(b);
                    assert_eq!(
                        conj,
                        labels[a] == labels[b],
                        "{} n={n}: {a} {b}",
                        base.name()
                    );
                }
            }
            let mut distinct = labels.clone();
            distinct.sort();
            distinct.dedup();
            assert_eq!(distinct, enumerate_class_labels(base.class_count(), n));
        }
    }
}

#[test]
fn wreath_orders_and_label_counts() {
    for base in small_bases() {
        for n in 0..=3 {
            let w = wreath_group(&base, n, CAP).unwrap();
            let fact: usize = (1..=n).product();
            assert_eq!(w.group().order(), base.order().pow(n as u32) * fact);
            assert_eq!(
                w.group().class_count(),
                enumerate_class_labels(base.class_count(), n).len()
            );
        }
    }
}

#[test]
fn counit_is_multiplicative_and_product_commutes() {
    let alg = FqAlgebra::new(Arc::new(FiniteGroup::cyclic(2).unwrap()), 3, CAP).unwrap();
    let mut basis = vec![alg.unit()];
    for n in 1..=3 {
        for c in 0..alg.dim(n) {
            basis.push(alg.basis(n, c).unwrap());
        }
    }
    for a in &basis {
        for b in &basis {
            let ab = alg.product(a, b).unwrap();
            assert_eq!(alg.counit(&ab), alg.counit(a) * alg.counit(b));
            assert_eq!(ab, alg.product(b, a).unwrap());
        }
    }
    assert!(alg.is_commutative());
}

fn hexagon(action: Option<Vec<usize>>) -> GSimplicialComplex {
    let edges = (0..6).map(|i| {
        let mut e = vec![i, (i + 1) % 6];
        e.sort();
        e
    });
    let mut map = BTreeMap::new();
    if let Some(p) = action {
        map.insert(1, p);
    }
    GSimplicialComplex::new(
        Arc::new(FiniteGroup::cyclic(2).unwrap()),
        6,
        edges,
        &map,
        None,
    )
    .unwrap()
}

#[test]
fn dims_are_nonnegative_and_vanish_above_dimension() {
    for x in [
        hexagon(None),
        hexagon(Some(vec![3, 4, 5, 0, 1, 2])),
        hexagon(Some(vec![0, 5, 4, 3, 2, 1])),
        GSimplicialComplex::regular_action(Arc::new(FiniteGroup::symmetric(3, CAP).unwrap())),
    ] {
        let dim = x.dim().unwrap();
        let b = betti(&x);
        let br = bredon_dims(&x).unwrap();
        assert!(b.0.len() <= dim + 1 && br.0.len() <= dim + 1);
        assert_eq!(b.get(dim + 1), 0);
        assert_eq!(br.get(dim + 1), 0);
        let k = connective_k_dims(&x, 6).unwrap();
        let kd = equivariant_k_dims(&x).unwrap();
        assert_eq!((k[6], k[5]), (kd.even, kd.odd));
    }
}

#[test]
fn point_dims_feed_the_class_count_series() {
    for base in small_bases() {
        let kd = equivariant_k_dims(&GSimplicialComplex::point(base.clone())).unwrap();
        assert_eq!((kd.even, kd.odd), (base.class_count(), 0));
        let series = wreathk::hopf::fq_dim_series(kd.even as u64, kd.odd as u64, 3);
        for n in 0..=3 {
            let count = wreath_group(&base, n, CAP).unwrap().group().class_count();
            assert_eq!(*series.coeff(n), rat(count as i64));
        }
    }
}
