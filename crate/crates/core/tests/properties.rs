use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use proptest::prelude::*;

use golden_core::arith::{apply_action, invert_action, syr, Action, Verticality};
use golden_core::hydra::HydraTree;
use golden_core::metrics;
use golden_core::rules::{self, Variety};
use golden_core::{ascend, equivalent_oracle, is_ag, NumberType, OddNumber, DEFAULT_STEP_BOUND};

fn odd_up_to(max: u128) -> impl Strategy<Value = OddNumber> {
    (0..=max / 2).prop_map(|k| OddNumber::new(2 * k + 1).unwrap())
}

fn of_type(t: NumberType, max: u128) -> impl Strategy<Value = OddNumber> {
    odd_up_to(max).prop_filter("type", move |x| x.number_type() == t)
}

fn confirmed(a: OddNumber, b: OddNumber) -> bool {
    equivalent_oracle(a, b, DEFAULT_STEP_BOUND)
        .unwrap()
        .is_confirmed()
}

/// Parent arrays of trees with up to `max` non-root nodes, each node
/// attached to an earlier one.
fn parents(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<prop::sample::Index>(), 1..=max)
        .prop_map(|ix| ix.iter().enumerate().map(|(i, p)| p.index(i + 1)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn v_is_g_after_s(x in odd_up_to(1 << 100)) {
        prop_assert_eq!(x.v().unwrap(), x.s().unwrap().g().unwrap());
    }

    #[test]
    fn actions_invert(x in odd_up_to(1 << 100)) {
        for a in Action::ALL {
            let y = apply_action(a, x).unwrap();
            prop_assert_eq!(invert_action(a, y), Some(x));
        }
    }

    #[test]
    fn ascend_is_iterated_syr(x in odd_up_to(1 << 60)) {
        let mut y = x;
        for _ in 1..x.rank() {
            y = syr(y).unwrap();
        }
        prop_assert_eq!(ascend(x).unwrap(), y);
    }

    #[test]
    fn overflow_is_reported(k in 0u128..1 << 20) {
        let x = OddNumber::new(u128::MAX - 2 * k).unwrap();
        prop_assert!(x.v().is_err());
        prop_assert!(x.s().is_err());
    }

    #[test]
    fn type_is_residue(x in odd_up_to(1 << 64)) {
        let expect = match x.get() % 3 {
            2 => NumberType::A,
            0 => NumberType::B,
            _ => NumberType::C,
        };
        prop_assert_eq!(x.number_type(), expect);
    }

    #[test]
    fn heads_are_a_and_vertical_even(x in odd_up_to(1 << 64)) {
        let by_def = x.number_type() == NumberType::A && x.verticality() == Verticality::VerticalEven;
        prop_assert_eq!(by_def, is_ag(x));
        prop_assert_eq!(by_def, x.get() % 24 == 17);
    }

    #[test]
    fn variety_decomposition(g in odd_up_to(1 << 80).prop_filter("g > 1", |g| g.get() > 1)) {
        let t = g.get() - 1;
        match rules::variety_classify(g) {
            Variety::VarietyS { b, k } => prop_assert_eq!(t, b.get() << (2 * k + 1)),
            Variety::VarietyV { b, k } => prop_assert_eq!(t, b.get() << (2 * k + 2)),
            Variety::NotVariety => prop_assert!(false, "{} has no variety", g),
        }
    }

    #[test]
    fn r_a_decreases(a in of_type(NumberType::A, 1 << 80).prop_filter(">= 5", |a| a.get() >= 5)) {
        prop_assert!(rules::r_a(a).unwrap() < a);
    }

    #[test]
    fn r_b_and_r_c_increase(b in of_type(NumberType::B, 1 << 80), c in of_type(NumberType::C, 1 << 80)) {
        prop_assert!(rules::r_b(b).unwrap() > b);
        let rc = rules::r_c(c).unwrap();
        prop_assert!(rc > c || (rc == c && c == OddNumber::ONE));
    }

    #[test]
    fn generated_claims_hold(x in odd_up_to(1 << 16)) {
        let mut claims = vec![rules::rule_one(x).unwrap(), rules::simplified_for(x).unwrap()];
        claims.extend(rules::rule_two(x).unwrap());
        claims.extend(rules::rule_two_step(x).unwrap());
        claims.extend(rules::variety_reduce(x).ok());
        if x.number_type() != NumberType::B {
            claims.extend(rules::rule_three_full(x, 2).unwrap());
            claims.extend(rules::rule_four_full(x, 2).unwrap());
        }
        for c in claims {
            prop_assert!(c.rederive(), "{}", c);
            prop_assert!(confirmed(c.lhs, c.rhs), "{}", c);
        }
    }

    #[test]
    fn rule_five_roundtrip(x in odd_up_to(1 << 20), n in 0u32..6) {
        match rules::rule_five_full(x, n) {
            Ok(claims) => {
                let a = claims[0].rhs;
                let (x0, n0) = rules::rule_five_params(a).unwrap();
                prop_assert_eq!(x0.get() * 3u128.pow(n0), x.get() * 3u128.pow(n));
                for c in claims {
                    prop_assert!(confirmed(c.lhs, c.rhs), "{}", c);
                }
            }
            Err(_) => prop_assert!(x.number_type() == NumberType::B || (3u128.pow(n) * x.get()) % 4 != 1),
        }
    }

    #[test]
    fn short_cut_drops_one_node(ps in parents(12)) {
        let mut t = HydraTree::from_parents(&ps);
        let before = t.node_count();
        if let Some(h) = t.heads().into_iter().find(|&h| t.is_short(h)) {
            t.cut_head(h, 7).unwrap();
            prop_assert_eq!(t.node_count(), before - 1);
        }
    }

    #[test]
    fn long_cut_regrows_copies(ps in parents(12), n in 0u64..4) {
        let mut t = HydraTree::from_parents(&ps);
        if let Some(h) = t.heads().into_iter().find(|&h| !t.is_short(h)) {
            let parent = t.parent(h).unwrap();
            let size = subtree_size(&t, parent);
            let before = t.node_count();
            t.cut_head(h, n).unwrap();
            prop_assert_eq!(t.node_count(), before - 1 + n as usize * (size - 1));
        }
    }
}

fn subtree_size(t: &HydraTree, id: usize) -> usize {
    1 + t
        .children(id)
        .iter()
        .map(|&c| subtree_size(t, c))
        .sum::<usize>()
}

proptest! {
    #[test]
    fn series_matches_brute_force(n in 1u32..60) {
        let mut brute = Ratio::<i128>::from_integer(0);
        for i in 1..=n {
            brute += Ratio::new(6 * i as i128 + 5, 2i128 << i);
        }
        let got = metrics::series_partial_sum(n).partial_sum;
        let want = BigRational::new(BigInt::from(*brute.numer()), BigInt::from(*brute.denom()));
        prop_assert_eq!(&got, &want);
        prop_assert!(got < metrics::series_limit());
        prop_assert!(metrics::series_partial_sum(n + 1).partial_sum > got);
    }

    #[test]
    fn black_rate_bounded(x in odd_up_to(1 << 40)) {
        let r = metrics::black_rate_of(x);
        prop_assert!(r <= Ratio::new(7, 2));
        prop_assert!(r >= Ratio::from_integer(2));
    }
}
