//! Generators for the equivalence rules over odd numbers.
//!
//! Every generator emits [`EquivalenceClaim`]s: unordered pairs of odd
//! numbers whose Collatz orbits are asserted to meet. Nothing here proves
//! a claim; [`EquivalenceClaim::check`] hands it to the brute-force oracle.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{
    self, checked_add, checked_mul, checked_pow, valuation3, NumberType, OddNumber, OracleVerdict,
    Verticality,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    Ra,
    Rb,
    Rc,
    VarietyReduce,
}

impl RuleId {
    /// Human-readable label used in chain listings.
    pub fn label(self) -> &'static str {
        match self {
            RuleId::R1 => "Rule 1",
            RuleId::R2 => "Rule 2",
            RuleId::R3 => "Rule 3",
            RuleId::R4 => "Rule 4",
            RuleId::R5 => "Rule 5",
            RuleId::Ra => "R_a",
            RuleId::Rb => "R_b",
            RuleId::Rc => "R_c",
            RuleId::VarietyReduce => "Variety",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::Ra => "Ra",
            RuleId::Rb => "Rb",
            RuleId::Rc => "Rc",
            RuleId::VarietyReduce => "VarietyReduce",
        };
        f.write_str(s)
    }
}

/// Indices a rule was instantiated with. Unused indices stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleParams {
    pub n: Option<u32>,
    pub i: Option<u32>,
    pub k: Option<u32>,
}

impl RuleParams {
    fn ni(n: u32, i: u32) -> Self {
        RuleParams {
            n: Some(n),
            i: Some(i),
            k: None,
        }
    }

    fn k(k: u32) -> Self {
        RuleParams {
            k: Some(k),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EquivalenceClaim {
    pub lhs: OddNumber,
    pub rhs: OddNumber,
    pub rule: RuleId,
    pub params: RuleParams,
}

impl EquivalenceClaim {
    pub fn new(lhs: OddNumber, rhs: OddNumber, rule: RuleId) -> Self {
        EquivalenceClaim {
            lhs,
            rhs,
            rule,
            params: RuleParams::default(),
        }
    }

    fn with(mut self, params: RuleParams) -> Self {
        self.params = params;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn check(&self, step_bound: usize) -> Result<OracleVerdict> {
        arith::equivalent_oracle(self.lhs, self.rhs, step_bound)
    }

    /// Regenerates the claim from its rule and parameters and reports
    /// whether the generator really emits it.
    pub fn rederive(&self) -> bool {
        self.rederive_inner().unwrap_or(false)
    }

    fn rederive_inner(&self) -> Result<bool> {
        let p = self.params;
        Ok(match self.rule {
            RuleId::R1 => rule_one(self.lhs)? == *self,
            RuleId::R2 => {
                rule_two_step(self.lhs)?.as_ref() == Some(self)
                    || rule_two(self.lhs)?.contains(self)
            }
            RuleId::R3 => {
                let Some(n) = p.n else { return Ok(false) };
                let pow = checked_pow(3, n, "3^n")?;
                if !self.rhs.get().is_multiple_of(pow) {
                    return Ok(false);
                }
                let x = OddNumber::new(self.rhs.get() / pow)?;
                x.number_type() != NumberType::B && rule_three_full(x, n)?.contains(self)
            }
            RuleId::R4 => {
                let Some(n) = p.n else { return Ok(false) };
                let pow = checked_pow(3, n, "3^n")?;
                let base = (self.rhs.get() - 1) / 2;
                if base == 0 || !base.is_multiple_of(pow) {
                    return Ok(false);
                }
                let x = OddNumber::new(base / pow)?;
                x.number_type() != NumberType::B && rule_four_full(x, n)?.contains(self)
            }
            RuleId::R5 => {
                let (x, n) = rule_five_params(self.rhs)?;
                Some(n) == p.n && rule_five_full(x, n)?.contains(self)
            }
            RuleId::Ra | RuleId::Rb | RuleId::Rc => simplified_claim(self.rule, self.lhs)? == *self,
            RuleId::VarietyReduce => variety_reduce(self.lhs)? == *self,
        })
    }
}

impl fmt::Display for EquivalenceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} [{}", self.lhs, self.rhs, self.rule)?;
        if let Some(n) = self.params.n {
            write!(f, " n={n}")?;
        }
        if let Some(i) = self.params.i {
            write!(f, " i={i}")?;
        }
        if let Some(k) = self.params.k {
            write!(f, " k={k}")?;
        }
        f.write_str("]")
    }
}

fn odd(v: u128) -> Result<OddNumber> {
    OddNumber::new(v)
}

fn ensure_not_b(x: OddNumber) -> Result<()> {
    if x.number_type() == NumberType::B {
        Err(Error::TypeBArgument(x))
    } else {
        Ok(())
    }
}

fn ensure_type(x: OddNumber, expected: NumberType) -> Result<()> {
    let actual = x.number_type();
    if actual == expected {
        Ok(())
    } else {
        Err(Error::TypeMismatch {
            value: x,
            expected,
            actual,
        })
    }
}

/// `x = V(x)`.
pub fn rule_one(x: OddNumber) -> Result<EquivalenceClaim> {
    Ok(EquivalenceClaim::new(x, x.v()?, RuleId::R1))
}

/// Writes `y = S^k(a)` with `a` of rank 1 and returns `(a, k)`.
pub fn s_root(y: OddNumber) -> (OddNumber, u32) {
    let r = y.rank();
    // y = 2^r * m - 1 with m odd; a = 2m - 1.
    let m = (y.get() >> r) + 1;
    (OddNumber::new(2 * m - 1).expect("2m - 1 is odd"), r - 1)
}

/// Whether `y = S(y)` follows from the vertical-root form of rule two:
/// `y = S^k(a)` with `a` vertical even and `k` even, or `a` vertical odd
/// and `k` odd.
pub fn rule_two_allowed(y: OddNumber) -> bool {
    let (root, k) = s_root(y);
    match root.verticality() {
        Verticality::VerticalEven => k % 2 == 0,
        Verticality::VerticalOdd => k % 2 == 1,
        Verticality::Neither => false,
    }
}

/// The claim `y = S(y)` when [`rule_two_allowed`] holds.
pub fn rule_two_step(y: OddNumber) -> Result<Option<EquivalenceClaim>> {
    if !rule_two_allowed(y) {
        return Ok(None);
    }
    let (_, k) = s_root(y);
    Ok(Some(
        EquivalenceClaim::new(y, y.s()?, RuleId::R2).with(RuleParams::k(k)),
    ))
}

/// Rule two anchored at `x`: `x = S(x)` for vertical even `x`,
/// `S(x) = S^2(x)` for vertical odd `x`, nothing otherwise.
pub fn rule_two(x: OddNumber) -> Result<Vec<EquivalenceClaim>> {
    Ok(match x.verticality() {
        Verticality::VerticalEven => {
            vec![EquivalenceClaim::new(x, x.s()?, RuleId::R2).with(RuleParams::k(0))]
        }
        Verticality::VerticalOdd => {
            let s = x.s()?;
            vec![EquivalenceClaim::new(s, s.s()?, RuleId::R2).with(RuleParams::k(1))]
        }
        Verticality::Neither => Vec::new(),
    })
}

/// `R_a(a) = (2a - 1) / 3` for type A.
pub fn r_a(a: OddNumber) -> Result<OddNumber> {
    ensure_type(a, NumberType::A)?;
    odd((checked_mul(a.get(), 2, "R_a")? - 1) / 3)
}

/// `R_b(b) = 16b/3 + 1` for type B.
pub fn r_b(b: OddNumber) -> Result<OddNumber> {
    ensure_type(b, NumberType::B)?;
    odd(checked_add(checked_mul(b.get() / 3, 16, "R_b")?, 1, "R_b")?)
}

/// `R_c(c) = (4c - 1) / 3` for type C.
pub fn r_c(c: OddNumber) -> Result<OddNumber> {
    ensure_type(c, NumberType::C)?;
    odd((checked_mul(c.get(), 4, "R_c")? - 1) / 3)
}

/// Claim `x = R(x)` for one of the simplified rules `Ra`, `Rb`, `Rc`.
pub fn simplified_claim(rule: RuleId, x: OddNumber) -> Result<EquivalenceClaim> {
    let y = match rule {
        RuleId::Ra => r_a(x)?,
        RuleId::Rb => r_b(x)?,
        RuleId::Rc => r_c(x)?,
        other => panic!("{other} is not a simplified rule"),
    };
    Ok(EquivalenceClaim::new(x, y, rule))
}

/// The simplified rule matching the type of `x`.
pub fn simplified_for(x: OddNumber) -> Result<EquivalenceClaim> {
    let rule = match x.number_type() {
        NumberType::A => RuleId::Ra,
        NumberType::B => RuleId::Rb,
        NumberType::C => RuleId::Rc,
    };
    simplified_claim(rule, x)
}

/// `4^i * 3^(n-i) * x`, which is even for `i >= 1`.
fn ladder(x: OddNumber, n: u32, i: u32) -> Result<u128> {
    let four = checked_pow(4, i, "4^i")?;
    let three = checked_pow(3, n - i, "3^(n-i)")?;
    checked_mul(checked_mul(four, three, "ladder")?, x.get(), "ladder")
}

/// Rule three: for `i = 1..=n`, `V(m_i) = 3^n x` and `S(V(m_i)) = 3^n x`
/// where `m_i = 4^i 3^(n-i) x`. Empty for `n = 0`.
pub fn rule_three_full(x: OddNumber, n: u32) -> Result<Vec<EquivalenceClaim>> {
    ensure_not_b(x)?;
    let anchor = odd(checked_mul(checked_pow(3, n, "3^n")?, x.get(), "3^n x")?)?;
    let mut out = Vec::with_capacity(2 * n as usize);
    for i in 1..=n {
        let m = ladder(x, n, i)?;
        let v = odd(checked_add(checked_mul(m, 4, "V")?, 1, "V")?)?;
        let params = RuleParams::ni(n, i);
        out.push(EquivalenceClaim::new(v, anchor, RuleId::R3).with(params));
        out.push(EquivalenceClaim::new(v.s()?, anchor, RuleId::R3).with(params));
    }
    Ok(out)
}

/// Rule four: for `i = 1..=n`, `S(m_i) = S(3^n x)` and
/// `S^2(m_i) = S(3^n x)` with `m_i = 4^i 3^(n-i) x`. Empty for `n = 0`.
pub fn rule_four_full(x: OddNumber, n: u32) -> Result<Vec<EquivalenceClaim>> {
    ensure_not_b(x)?;
    let anchor = odd(checked_mul(checked_pow(3, n, "3^n")?, x.get(), "3^n x")?)?.s()?;
    let mut out = Vec::with_capacity(2 * n as usize);
    for i in 1..=n {
        let m = ladder(x, n, i)?;
        let s = odd(checked_add(checked_mul(m, 2, "S")?, 1, "S")?)?;
        let params = RuleParams::ni(n, i);
        out.push(EquivalenceClaim::new(s, anchor, RuleId::R4).with(params));
        out.push(EquivalenceClaim::new(s.s()?, anchor, RuleId::R4).with(params));
    }
    Ok(out)
}

/// Rule five: with `a = G(3^n x)` and `3^n x` of rank 1, emits
/// `S^i(G(3^(n-i) x)) = a` and `S^(i+1)(G(3^(n-i) x)) = a` for
/// `i = 0..=n`. The `i = 0` head of the list is the identity `a = a`.
pub fn rule_five_full(x: OddNumber, n: u32) -> Result<Vec<EquivalenceClaim>> {
    ensure_not_b(x)?;
    let p = odd(checked_mul(checked_pow(3, n, "3^n")?, x.get(), "3^n x")?)?;
    if p.rank() != 1 {
        return Err(Error::RankViolation {
            x,
            n,
            rank: p.rank(),
        });
    }
    let a = p.g()?;
    let mut out = Vec::with_capacity(2 * (n as usize + 1));
    for i in 0..=n {
        let base = odd(checked_mul(
            checked_pow(3, n - i, "3^(n-i)")?,
            x.get(),
            "3^(n-i) x",
        )?)?;
        let mut y = base.g()?;
        for _ in 0..i {
            y = y.s()?;
        }
        let params = RuleParams::ni(n, i);
        out.push(EquivalenceClaim::new(y, a, RuleId::R5).with(params));
        out.push(EquivalenceClaim::new(y.s()?, a, RuleId::R5).with(params));
    }
    Ok(out)
}

/// Recovers `(x, n)` with `a = G(3^n x)`, `x` not type B and `n` maximal,
/// checking the rank-1 side condition of rule five.
pub fn rule_five_params(a: OddNumber) -> Result<(OddNumber, u32)> {
    if a.rank() != 1 {
        return Err(Error::RankViolation {
            x: a,
            n: 0,
            rank: a.rank(),
        });
    }
    // a = 2p - 1, p odd because a has rank 1.
    let p = odd(a.get().div_ceil(2))?;
    let n = valuation3(p.get());
    let x = odd(p.get() / 3u128.pow(n))?;
    if p.rank() != 1 {
        return Err(Error::RankViolation {
            x,
            n,
            rank: p.rank(),
        });
    }
    Ok((x, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    /// `g = 2^(2k+1) b + 1`.
    VarietyS {
        b: OddNumber,
        k: u32,
    },
    /// `g = 4^(k+1) b + 1`.
    VarietyV {
        b: OddNumber,
        k: u32,
    },
    NotVariety,
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::VarietyS { b, k } => write!(f, "variety_s(b={b},k={k})"),
            Variety::VarietyV { b, k } => write!(f, "variety_v(b={b},k={k})"),
            Variety::NotVariety => f.write_str("none"),
        }
    }
}

/// Splits `g - 1 = 2^m b` with `b` odd. Odd `m` gives Variety S, even `m`
/// Variety V. Only 1 falls outside both.
pub fn variety_classify(g: OddNumber) -> Variety {
    let t = g.get() - 1;
    if t == 0 {
        return Variety::NotVariety;
    }
    let m = t.trailing_zeros();
    let b = OddNumber::new(t >> m).expect("odd part");
    if m % 2 == 1 {
        Variety::VarietyS { b, k: (m - 1) / 2 }
    } else {
        Variety::VarietyV { b, k: m / 2 - 1 }
    }
}

/// Applies the `(g - 1) * (3/4)^k + 1` contraction:
/// Variety S gives `g = S(3^k b)`, Variety V gives `g = V(3^k b)`.
pub fn variety_reduce(g: OddNumber) -> Result<EquivalenceClaim> {
    let (b, k, is_v) = match variety_classify(g) {
        Variety::VarietyS { b, k } if k >= 1 => (b, k, false),
        Variety::VarietyV { b, k } if k >= 1 => (b, k, true),
        _ => return Err(Error::NotReducible(g)),
    };
    let core = odd(checked_mul(checked_pow(3, k, "3^k")?, b.get(), "3^k b")?)?;
    let rhs = if is_v { core.v()? } else { core.s()? };
    Ok(EquivalenceClaim::new(g, rhs, RuleId::VarietyReduce).with(RuleParams::k(k)))
}

/// Every claim the generators of this module emit with `lhs <= max`,
/// deduplicated and sorted.
pub fn claims_up_to(max: OddNumber) -> Result<Vec<EquivalenceClaim>> {
    let max = max.get();
    let mut out = BTreeSet::new();
    let push_all = |claims: Vec<EquivalenceClaim>, out: &mut BTreeSet<EquivalenceClaim>| {
        out.extend(claims.into_iter().filter(|c| c.lhs.get() <= max));
    };

    for v in (1..=max).step_by(2) {
        let x = odd(v)?;
        out.insert(rule_one(x)?);
        push_all(rule_two(x)?, &mut out);
        if let Some(c) = rule_two_step(x)? {
            out.insert(c);
        }
        out.insert(simplified_for(x)?);
        if let Ok(c) = variety_reduce(x) {
            out.insert(c);
        }

        if x.number_type() == NumberType::B {
            continue;
        }
        // Rules three and four: every lhs exceeds 3^n x.
        let mut n = 1;
        while let Some(p) = 3u128.checked_pow(n).and_then(|p| p.checked_mul(v)) {
            if p > max {
                break;
            }
            push_all(rule_three_full(x, n)?, &mut out);
            push_all(rule_four_full(x, n)?, &mut out);
            n += 1;
        }
        // Rule five: the smallest lhs is S^n(G(x)) = 2^(n+1) x - 1.
        let mut n = 0;
        while (v << (n + 1)) - 1 <= max {
            match rule_five_full(x, n) {
                Ok(claims) => push_all(claims, &mut out),
                Err(Error::RankViolation { .. }) => {}
                Err(e) => return Err(e),
            }
            n += 1;
        }
    }
    Ok(out.into_iter().collect())
}
