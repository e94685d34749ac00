use linkform::arith::QZValue;
use linkform::bordism::{kk_class, t_k, AbGroupDescriptor, KKManifold1};
use linkform::linkcomplex::{edge_swap, transitivity_witness, LComplex, WitnessOptions};
use linkform::linking::{normal_form, pair_retraction, scramble, LinkingForm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn block() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 8, 9])
}

fn form_from(blocks: &[u64]) -> LinkingForm {
    blocks.iter().fold(LinkingForm::trivial(), |m, &n| {
        m.direct_sum(&LinkingForm::standard_w(n).unwrap())
    })
}

fn qz() -> impl Strategy<Value = QZValue> {
    (-50i128..50, 1u64..40).prop_map(|(n, d)| QZValue::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qz_group_laws(a in qz(), b in qz(), c in qz()) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a + b, b + a);
        prop_assert!((a + -a).is_zero());
        prop_assert_eq!(a.to_string().parse::<QZValue>().unwrap(), a);
    }

    #[test]
    fn normal_form_is_a_fixed_point(blocks in prop::collection::vec(block(), 0..4)) {
        let nf = normal_form(&form_from(&blocks)).unwrap();
        prop_assert_eq!(normal_form(&nf.reconstruct()).unwrap(), nf.clone());
        prop_assert_eq!(nf.cardinality(), blocks.iter().map(|n| n * n).product::<u64>());
    }

    #[test]
    fn scrambling_preserves_class(blocks in prop::collection::vec(block(), 1..4), seed in any::<u64>()) {
        let m = form_from(&blocks);
        let (s, phi) = scramble(&m, &mut ChaCha8Rng::seed_from_u64(seed), 20).unwrap();
        prop_assert_eq!(normal_form(&s).unwrap(), normal_form(&m).unwrap());
        prop_assert!(phi.is_injective());
        prop_assert_eq!(s.cardinality(), m.cardinality());
    }

    #[test]
    fn descriptor_order_is_product(rank in 0usize..2, orders in prop::collection::vec(1u64..30, 0..5)) {
        let d = AbGroupDescriptor::from_parts(rank, orders.iter().copied());
        if rank > 0 {
            prop_assert_eq!(d.order(), None);
        } else {
            prop_assert_eq!(d.order(), Some(orders.iter().product::<u64>()));
        }
        for w in d.torsion.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn kk_class_and_t_k_are_additive(
        k in 2u64..12,
        a in (0u64..20, 0u64..20, 0u64..4),
        b in (0u64..20, 0u64..20, 0u64..4),
    ) {
        let mut m = KKManifold1::new(k, a.0, a.1).unwrap();
        m.circles = a.2;
        let n = KKManifold1::new(k, b.0, b.1).unwrap();
        let sum = (&m + &n).unwrap();
        prop_assert_eq!(kk_class(&sum), (kk_class(&m) + kk_class(&n)) % k);
        prop_assert_eq!(t_k(&sum), t_k(&m) + t_k(&n));
    }

    #[test]
    fn lazy_vertex_count_closed_form(k in prop::sample::select(vec![2u64, 3, 5]), g in 1usize..4) {
        let m = LinkingForm::standard_w_power(k, g).unwrap();
        let l = LComplex::lazy(&m, k, u64::MAX).unwrap();
        let q = k.pow(2 * g as u32);
        prop_assert_eq!(l.vertex_count(), (q - 1) * q / k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn retraction_inverts_morphisms(seed in any::<u64>()) {
        let m = LinkingForm::standard_w_power(3, 3).unwrap();
        let l = LComplex::lazy(&m, 3, u64::MAX).unwrap();
        let v = l.sample(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let r = pair_retraction(&m, &v.x, &v.y, 3);
        prop_assert_eq!(r.apply(&v.x).into_coeffs(), vec![1, 0]);
        prop_assert_eq!(r.apply(&v.y).into_coeffs(), vec![0, 1]);
    }

    #[test]
    fn edge_swap_exchanges_endpoints(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let m = LinkingForm::standard_w_power(3, 3).unwrap();
        let l = LComplex::lazy(&m, 3, u64::MAX).unwrap();
        let a = l.sample(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let nbrs = l.neighbors(&a).unwrap();
        prop_assume!(!nbrs.is_empty());
        let b = pick.get(&nbrs).clone();
        let h = edge_swap(&l, &a, &b).unwrap();
        prop_assert!(h.is_automorphism());
        prop_assert_eq!(h.apply(&a.x), b.x.clone());
        prop_assert_eq!(h.apply(&a.y), b.y.clone());
        prop_assert_eq!(h.apply(&b.x), a.x.clone());
        prop_assert_eq!(h.apply(&b.y), a.y.clone());
    }

    #[test]
    fn witnesses_carry_f0_to_f1(seed in any::<u64>()) {
        let m = LinkingForm::standard_w_power(3, 2).unwrap();
        let l = LComplex::lazy(&m, 3, u64::MAX).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f0, f1) = (l.sample(&mut rng).unwrap(), l.sample(&mut rng).unwrap());
        let w = transitivity_witness(&l, &f0, &f1, &WitnessOptions::default()).unwrap();
        prop_assert!(w.h.is_automorphism());
        prop_assert_eq!(w.h.apply(&f0.x), f1.x.clone());
        prop_assert_eq!(w.h.apply(&f0.y), f1.y.clone());
    }
}
