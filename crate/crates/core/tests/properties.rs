use proptest::prelude::*;
use smooth_renyi::smoothing::{in_ball, smooth_oracle};
use smooth_renyi::{
    closeness_gap, renyi_entropy, smooth_subball, smooth_traceball, BallKind, EntropyOrder,
    ProbVector,
};

fn distribution(max_len: usize) -> impl Strategy<Value = ProbVector> {
    prop::collection::vec(0.001f64..1.0, 1..=max_len).prop_map(|w| {
        let s: f64 = w.iter().sum();
        ProbVector::normalized(w.iter().map(|x| x / s).collect()).unwrap()
    })
}

fn sparse_distribution(max_len: usize) -> impl Strategy<Value = ProbVector> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.001f64..1.0], 2..=max_len)
        .prop_filter("needs mass", |w| w.iter().any(|&x| x > 0.0))
        .prop_map(|w| {
            let s: f64 = w.iter().sum();
            ProbVector::normalized(w.iter().map(|x| x / s).collect()).unwrap()
        })
}

fn smoothing_order() -> impl Strategy<Value = EntropyOrder> {
    prop_oneof![
        Just(EntropyOrder::Zero),
        Just(EntropyOrder::Infinity),
        (0.05f64..0.95).prop_map(|a| EntropyOrder::new(a).unwrap()),
        (1.05f64..8.0).prop_map(|a| EntropyOrder::new(a).unwrap()),
    ]
}

const ORDER_GRID: [f64; 8] = [0.0, 0.3, 0.7, 0.999, 1.0, 2.0, 5.0, f64::INFINITY];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn renyi_is_non_increasing_in_alpha(p in sparse_distribution(10)) {
        let values: Vec<f64> = ORDER_GRID
            .iter()
            .map(|&a| renyi_entropy(&p, EntropyOrder::new(a).unwrap()).unwrap().nats())
            .collect();
        for w in values.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12, "{values:?}");
        }
    }

    #[test]
    fn renyi_is_continuous_at_one(p in distribution(10)) {
        let shannon = renyi_entropy(&p, EntropyOrder::One).unwrap().nats();
        for a in [1.0 - 1e-7, 1.0 + 1e-7] {
            let near = renyi_entropy(&p, EntropyOrder::new(a).unwrap()).unwrap().nats();
            prop_assert!((near - shannon).abs() < 1e-5);
        }
    }

    #[test]
    fn uniform_is_maximal(p in sparse_distribution(10), a in 0usize..ORDER_GRID.len()) {
        let order = EntropyOrder::new(ORDER_GRID[a]).unwrap();
        let h = renyi_entropy(&p, order).unwrap().nats();
        let u = renyi_entropy(&ProbVector::uniform(p.len()).unwrap(), order).unwrap().nats();
        prop_assert!(h <= u + 1e-12);
        prop_assert!((u - (p.len() as f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn smoothing_is_monotone_in_eps(
        p in sparse_distribution(8),
        order in smoothing_order(),
        e1 in 0.0f64..0.5,
        e2 in 0.0f64..0.5,
    ) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let a = smooth_subball(&p, order, lo).unwrap().value.nats();
        let b = smooth_subball(&p, order, hi).unwrap().value.nats();
        // a larger ball lowers the infimum (α < 1) and raises the supremum (α > 1)
        if order.is_below_one() {
            prop_assert!(b <= a + 1e-12);
        } else {
            prop_assert!(b >= a - 1e-12);
        }
    }

    #[test]
    fn sub_ball_witness_is_a_member(p in sparse_distribution(10), order in smoothing_order(), eps in 0.0f64..0.9) {
        let r = smooth_subball(&p, order, eps).unwrap();
        let w = r.witness.unwrap();
        prop_assert!(in_ball(&p, &w, eps, BallKind::SubNormalized));
        prop_assert!((renyi_entropy(&w, order).unwrap().nats() - r.value.nats()).abs() < 1e-12);
    }

    #[test]
    fn trace_ball_witness_is_a_member(
        p in sparse_distribution(8),
        order in prop_oneof![Just(EntropyOrder::Zero), Just(EntropyOrder::Infinity)],
        eps in 0.0f64..0.9,
    ) {
        let r = smooth_traceball(&p, order, eps).unwrap();
        prop_assert!(r.exact);
        prop_assert!(in_ball(&p, r.witness.as_ref().unwrap(), eps, BallKind::TraceDistance));
    }

    #[test]
    fn sub_ball_matches_oracle(p in sparse_distribution(6), order in smoothing_order(), eps in 0.0f64..0.6) {
        let closed = smooth_subball(&p, order, eps).unwrap().value.nats();
        let oracle = smooth_oracle(&p, order, eps, BallKind::SubNormalized).unwrap().nats();
        prop_assert!((closed - oracle).abs() < 1e-9, "{closed} vs {oracle}");
    }

    #[test]
    fn exact_trace_ball_matches_oracle(
        p in sparse_distribution(5),
        order in prop_oneof![Just(EntropyOrder::Zero), Just(EntropyOrder::Infinity)],
        eps in 0.01f64..0.6,
    ) {
        let closed = smooth_traceball(&p, order, eps).unwrap().value.nats();
        let oracle = smooth_oracle(&p, order, eps, BallKind::TraceDistance).unwrap().nats();
        // the oracle searches the ball, so it can only match or fall short of the optimum
        if order.is_below_one() {
            prop_assert!(oracle >= closed - 1e-9);
        } else {
            prop_assert!(oracle <= closed + 1e-9);
        }
    }

    #[test]
    fn max_entropy_bounds_smaller_orders(
        p in distribution(10),
        a in 0.05f64..0.95,
        eps in prop_oneof![Just(0.05), Just(0.1), 0.01f64..0.3],
    ) {
        let order = EntropyOrder::new(a).unwrap();
        let h_a = smooth_subball(&p, order, eps).unwrap().value.nats();
        let h_0 = smooth_subball(&p, EntropyOrder::Zero, eps).unwrap().value.nats();
        let h_0_2 = smooth_subball(&p, EntropyOrder::Zero, 2.0 * eps).unwrap().value.nats();
        prop_assert!(h_a <= h_0 + 1e-9);
        prop_assert!(h_a >= h_0_2 - (1.0 / eps).ln() / (1.0 - a) - 1e-9);
    }

    #[test]
    fn min_entropy_bounds_larger_orders(p in distribution(10), a in 1.05f64..8.0, eps in 0.0f64..0.5) {
        let order = EntropyOrder::new(a).unwrap();
        let h_a = smooth_subball(&p, order, eps).unwrap().value.nats();
        let h_inf = smooth_subball(&p, EntropyOrder::Infinity, eps).unwrap().value.nats();
        prop_assert!(h_a >= h_inf - 1e-12);
    }

    #[test]
    fn zero_eps_is_the_plain_entropy(p in sparse_distribution(8), order in smoothing_order()) {
        let plain = renyi_entropy(&p, order).unwrap();
        prop_assert_eq!(smooth_subball(&p, order, 0.0).unwrap().value, plain);
        prop_assert_eq!(smooth_traceball(&p, order, 0.0).unwrap().value, plain);
    }

    #[test]
    fn relabeling_does_not_change_values(p in sparse_distribution(8), order in smoothing_order(), eps in 0.0f64..0.5) {
        let mut rev = p.atoms().to_vec();
        rev.reverse();
        let q = ProbVector::normalized(rev).unwrap();
        let a = smooth_subball(&p, order, eps).unwrap().value.nats();
        let b = smooth_subball(&q, order, eps).unwrap().value.nats();
        prop_assert!((a - b).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gap_sandwich(p in distribution(5), order in smoothing_order(), eps in 0.01f64..0.4) {
        let g = closeness_gap(&p, order, eps).unwrap();
        prop_assert!(g.sandwich_ok, "{g:?}");
        if order == EntropyOrder::Zero {
            prop_assert_eq!(g.gap.nats(), 0.0);
        }
    }
}

#[test]
fn order_one_cannot_be_smoothed() {
    let p = ProbVector::uniform(3).unwrap();
    assert!(matches!(
        smooth_subball(&p, EntropyOrder::One, 0.1),
        Err(smooth_renyi::Error::UnsupportedOrder(_))
    ));
}

#[test]
fn sub_ball_worked_examples() {
    let p = ProbVector::normalized(vec![0.5, 0.25, 0.25]).unwrap();
    let r = smooth_subball(&p, EntropyOrder::Infinity, 0.25).unwrap();
    assert!((r.value.bits() - 2.0).abs() < 1e-12);
    let r = smooth_subball(&p, EntropyOrder::Zero, 0.25).unwrap();
    assert!((r.value.bits() - 1.0).abs() < 1e-12);
    let r = smooth_subball(&p, EntropyOrder::Zero, 0.2).unwrap();
    assert!((r.value.bits() - 3f64.log2()).abs() < 1e-12);
}
