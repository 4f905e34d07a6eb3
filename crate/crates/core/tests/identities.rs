use golden_core::arith::{syr, Verticality};
use golden_core::rules::{self, Variety};
use golden_core::{ascend, equivalent_oracle, NumberType, OddNumber, DEFAULT_STEP_BOUND};

fn odd(v: u128) -> OddNumber {
    OddNumber::new(v).unwrap()
}

fn odds(upto: u128) -> impl Iterator<Item = OddNumber> {
    (1..=upto).step_by(2).map(odd)
}

fn syr_n(mut x: OddNumber, n: u32) -> OddNumber {
    for _ in 0..n {
        x = syr(x).unwrap();
    }
    x
}

fn confirmed(a: OddNumber, b: OddNumber) -> bool {
    equivalent_oracle(a, b, DEFAULT_STEP_BOUND)
        .unwrap()
        .is_confirmed()
}

#[test]
fn syr_of_s_of_g() {
    for p in odds(1 << 12) {
        let a = p.g().unwrap();
        assert_eq!(
            syr(a.s().unwrap()).unwrap(),
            odd(3 * p.get()).g().unwrap(),
            "p={p}"
        );
    }
}

#[test]
fn ascent_from_rank_n() {
    for p in odds(1 << 10) {
        let mut a = p.g().unwrap();
        for n in 1..=6u32 {
            assert_eq!(a.rank(), n);
            let top = odd(3u128.pow(n - 1) * p.get()).g().unwrap();
            assert_eq!(syr_n(a, n - 1), top, "p={p} n={n}");
            assert_eq!(ascend(a).unwrap(), top, "p={p} n={n}");
            a = a.s().unwrap();
        }
    }
}

#[test]
fn triples_of_vertical_numbers() {
    for a in odds(1 << 16) {
        let expect = match a.get() % 8 {
            1 if a.get() > 1 => Verticality::VerticalEven,
            5 => Verticality::VerticalOdd,
            _ => continue,
        };
        assert_eq!(a.verticality(), expect);
        assert!(odd(3 * a.get()).rank() >= 2, "a={a}");
        assert_eq!(odd(9 * a.get()).verticality(), expect, "a={a}");
    }
}

#[test]
fn type_closure() {
    for x in odds(1 << 16) {
        let v = x.get();
        assert_eq!(
            (2 * v - 1) % 3 == 0,
            x.number_type() == NumberType::A,
            "x={v}"
        );
        assert_eq!(
            (4 * v - 1) % 3 == 0,
            x.number_type() == NumberType::C,
            "x={v}"
        );
        assert_eq!(v % 3 == 0, x.number_type() == NumberType::B, "x={v}");
        if x.number_type() == NumberType::B {
            assert_eq!(rules::r_b(x).unwrap().get(), 16 * v / 3 + 1);
        }
    }
}

#[test]
fn rule_one_against_oracle() {
    for x in odds(1 << 16) {
        assert!(confirmed(x, x.v().unwrap()), "x={x}");
    }
}

#[test]
fn rule_five_is_iterated_r_a() {
    for x in [1u128, 5, 7, 19] {
        for n in 1..=5u32 {
            let p = 3u128.pow(n) * x;
            if p % 4 != 1 {
                continue;
            }
            let mut y = odd(p).g().unwrap();
            let claims = rules::rule_five_full(odd(x), n).unwrap();
            for i in 1..=n {
                y = rules::r_a(y).unwrap();
                let mut expect = odd(3u128.pow(n - i) * x).g().unwrap();
                for _ in 0..i {
                    expect = expect.s().unwrap();
                }
                assert_eq!(y, expect, "x={x} n={n} i={i}");
                assert!(claims.iter().any(|c| c.lhs == expect), "x={x} n={n} i={i}");
            }
        }
    }
}

#[test]
fn g_towers_over_s() {
    for b in odds(1 << 10) {
        let sb = b.s().unwrap();
        for n in (1..=5u32).step_by(2) {
            let mut a = sb;
            for _ in 0..n + 2 {
                a = a.g().unwrap();
            }
            let rhs = odd(3u128.pow(n.div_ceil(2)) * b.get());
            assert!(confirmed(a, rhs), "b={b} n={n}");
        }
        for m in (2..=4u32).step_by(2) {
            let mut a = sb;
            for _ in 0..m + 2 {
                a = a.g().unwrap();
            }
            let rhs = odd(3u128.pow(m / 2) * b.get()).s().unwrap();
            assert!(confirmed(a, rhs), "b={b} m={m}");
        }
    }
}

#[test]
fn every_odd_has_one_variety() {
    for g in odds(1 << 16).skip(1) {
        let t = g.get() - 1;
        let rebuilt = match rules::variety_classify(g) {
            Variety::VarietyS { b, k } => (1u128 << (2 * k + 1)) * b.get(),
            Variety::VarietyV { b, k } => (1u128 << (2 * k + 2)) * b.get(),
            Variety::NotVariety => panic!("g={g}"),
        };
        assert_eq!(rebuilt, t, "g={g}");
    }
    assert_eq!(rules::variety_classify(OddNumber::ONE), Variety::NotVariety);
}

#[test]
fn every_generated_claim_holds() {
    let claims = rules::claims_up_to(odd((1 << 14) - 1)).unwrap();
    assert!(claims.len() > 10_000);
    for c in &claims {
        assert!(confirmed(c.lhs, c.rhs), "{c}");
        assert!(c.rederive(), "{c}");
    }
}
