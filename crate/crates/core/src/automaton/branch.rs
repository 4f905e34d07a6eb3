use std::collections::HashSet;
use std::fmt;

use crate::arith::{checked_add, checked_mul, checked_pow, valuation3, NumberType, OddNumber};
use crate::error::{Error, Result};
use crate::hydra::is_ag;
use crate::rules::{self, RuleId};

/// Default cap on macro-steps per chain.
pub const DEFAULT_CHAIN_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStep {
    pub from: OddNumber,
    pub to: OddNumber,
    pub rule: RuleId,
}

impl fmt::Display for ChainStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} \u{2261} {} {}",
            self.from,
            self.to,
            self.rule.label()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The last step landed below the target bound.
    BelowBound,
    /// The last step mapped a number to itself.
    FixedPoint,
    Cycle(OddNumber),
    Budget(u64),
    /// The next step does not fit in 128 bits.
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub start: OddNumber,
    pub bound: OddNumber,
    pub steps: Vec<ChainStep>,
    pub stop: StopReason,
}

impl Chain {
    pub fn end(&self) -> OddNumber {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    /// Sources of the rule five macro-steps, in order.
    pub fn rule_five_sources(&self) -> impl Iterator<Item = OddNumber> + '_ {
        self.steps
            .iter()
            .filter(|s| s.rule == RuleId::R5)
            .map(|s| s.from)
    }
}

/// First member of `V(4^i 3^(n-i) x)`, `i = 1..=n`, of type A, where
/// `b = 3^n x`.
fn first_a_by_rule_three(b: OddNumber) -> Result<Option<OddNumber>> {
    let n = valuation3(b.get());
    let x = b.get() / checked_pow(3, n, "3^n")?;
    for i in 1..=n {
        let m = checked_mul(
            checked_mul(
                checked_pow(4, i, "4^i")?,
                checked_pow(3, n - i, "3^(n-i)")?,
                "rule three",
            )?,
            x,
            "rule three",
        )?;
        let y = OddNumber::new(checked_add(checked_mul(m, 4, "V")?, 1, "V")?)?;
        if y.number_type() == NumberType::A {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// First member of `S(4^i 3^(n-i) x)`, `i = 1..=n`, of type A, where
/// `c = S(3^n x)`.
fn first_a_by_rule_four(c: OddNumber) -> Result<Option<OddNumber>> {
    let p = (c.get() - 1) / 2;
    if p == 0 {
        return Ok(None);
    }
    let n = valuation3(p);
    let x = p / checked_pow(3, n, "3^n")?;
    for i in 1..=n {
        let m = checked_mul(
            checked_mul(
                checked_pow(4, i, "4^i")?,
                checked_pow(3, n - i, "3^(n-i)")?,
                "rule four",
            )?,
            x,
            "rule four",
        )?;
        let y = OddNumber::new(checked_add(checked_mul(m, 2, "S")?, 1, "S")?)?;
        if y.number_type() == NumberType::A {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// One macro-step of the single-branch follower.
///
/// * B: the first type A reachable by rule three; otherwise `S` by rule
///   two when allowed; otherwise `R_b`.
/// * C: the first type A reachable by rule four; otherwise `R_c`.
/// * A heads (`24k - 7`): `R_a` iterated while the result stays type A.
/// * Other A: `S` by rule two when allowed; otherwise rule one, downward
///   for vertical odd numbers and upward for the rest.
pub fn macro_step(y: OddNumber) -> Result<ChainStep> {
    let (to, rule) = match y.number_type() {
        NumberType::B => {
            if let Some(a) = first_a_by_rule_three(y)? {
                (a, RuleId::R3)
            } else if rules::rule_two_allowed(y) {
                (y.s()?, RuleId::R2)
            } else {
                (rules::r_b(y)?, RuleId::R3)
            }
        }
        NumberType::C => match first_a_by_rule_four(y)? {
            Some(a) => (a, RuleId::R4),
            None => (rules::r_c(y)?, RuleId::R4),
        },
        NumberType::A if is_ag(y) => {
            let mut z = rules::r_a(y)?;
            while z.number_type() == NumberType::A {
                z = rules::r_a(z)?;
            }
            (z, RuleId::R5)
        }
        NumberType::A => {
            if rules::rule_two_allowed(y) {
                (y.s()?, RuleId::R2)
            } else if let Some(o) = crate::arith::invert_action(crate::arith::Action::V, y) {
                (o, RuleId::R1)
            } else {
                (y.v()?, RuleId::R1)
            }
        }
    };
    Ok(ChainStep { from: y, to, rule })
}

/// Follows macro-steps from `start` until a number below `bound` appears,
/// a number maps to itself, a number repeats, the budget runs out or the
/// next step overflows. Never fails; the reason is in [`Chain::stop`].
pub fn trace_a_branch(start: OddNumber, bound: OddNumber, budget: u64) -> Chain {
    let mut steps = Vec::new();
    let mut seen = HashSet::from([start]);
    let mut y = start;
    let stop = loop {
        if steps.len() as u64 >= budget {
            break StopReason::Budget(budget);
        }
        let step = match macro_step(y) {
            Ok(s) => s,
            Err(_) => break StopReason::Overflow,
        };
        steps.push(step);
        if step.to == y {
            break StopReason::FixedPoint;
        }
        if step.to < bound {
            break StopReason::BelowBound;
        }
        if !seen.insert(step.to) {
            break StopReason::Cycle(step.to);
        }
        y = step.to;
    };
    Chain {
        start,
        bound,
        steps,
        stop,
    }
}

/// [`trace_a_branch`] with the default budget and `S(start)` as the bound
/// when none is given. Cycles, budget exhaustion and overflow are errors.
pub fn follow_a_branch(start: OddNumber, bound: Option<OddNumber>) -> Result<Chain> {
    let bound = match bound {
        Some(b) => b,
        None => start.s()?,
    };
    let chain = trace_a_branch(start, bound, DEFAULT_CHAIN_BUDGET);
    match chain.stop {
        StopReason::BelowBound | StopReason::FixedPoint => Ok(chain),
        StopReason::Cycle(x) => Err(Error::CycleDetected(x)),
        StopReason::Budget(b) => Err(Error::BudgetExceeded(b)),
        StopReason::Overflow => Err(Error::Overflow {
            op: "macro-step",
            operand: chain.end().get(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(v: u128) -> OddNumber {
        OddNumber::new(v).unwrap()
    }

    #[test]
    fn chain_from_15() {
        let chain = follow_a_branch(odd(15), None).unwrap();
        let numbers: Vec<u128> = std::iter::once(chain.start.get())
            .chain(chain.steps.iter().map(|s| s.to.get()))
            .collect();
        assert_eq!(
            numbers,
            vec![
                15, 81, 1025, 303, 607, 809, 159, 319, 425, 283, 377, 111, 593, 175, 233, 103, 137,
                91, 161, 31, 41, 27
            ]
        );
        assert_eq!(chain.stop, StopReason::BelowBound);
        assert_eq!(
            chain.steps.last().unwrap().to_string(),
            "41 \u{2261} 27 Rule 5"
        );
    }

    #[test]
    fn chain_from_1_is_a_fixed_point() {
        let chain = follow_a_branch(odd(1), None).unwrap();
        assert_eq!(chain.steps.len(), 1);
        assert_eq!(chain.steps[0].to, odd(1));
        assert_eq!(chain.stop, StopReason::FixedPoint);
    }

    #[test]
    fn rule_five_steps_start_on_heads() {
        let chain = follow_a_branch(odd(15), None).unwrap();
        let heads: Vec<u128> = chain.rule_five_sources().map(|x| x.get()).collect();
        assert_eq!(heads, vec![1025, 809, 425, 377, 593, 233, 137, 161, 41]);
    }

    #[test]
    fn budget_and_errors() {
        let chain = trace_a_branch(odd(15), odd(31), 3);
        assert_eq!(chain.stop, StopReason::Budget(3));
        assert_eq!(chain.steps.len(), 3);
        assert!(matches!(
            follow_a_branch(odd(3), None),
            Err(Error::BudgetExceeded(_)) | Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn non_head_type_a_steps() {
        // 5 is vertical odd: rule one back to 1.
        assert_eq!(macro_step(odd(5)).unwrap().to, odd(1));
        assert_eq!(macro_step(odd(5)).unwrap().rule, RuleId::R1);
        // 11 = S(5), 5 vertical odd with k = 1.
        assert_eq!(macro_step(odd(11)).unwrap().to, odd(23));
        assert_eq!(macro_step(odd(11)).unwrap().rule, RuleId::R2);
    }
}
