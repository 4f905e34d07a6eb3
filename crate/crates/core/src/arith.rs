//! Exact arithmetic on positive odd integers.
//!
//! Values are stored as `u128`. Every operation that can grow a value is
//! overflow-checked and reports [`Error::Overflow`] instead of wrapping.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default number of Syracuse steps the oracle follows per orbit.
pub const DEFAULT_STEP_BOUND: usize = 10_000;

/// A positive odd integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddNumber(u128);

impl OddNumber {
    pub const ONE: OddNumber = OddNumber(1);

    pub fn new(value: u128) -> Result<Self> {
        if value % 2 == 1 {
            Ok(OddNumber(value))
        } else {
            Err(Error::NotOdd(value))
        }
    }

    #[inline]
    pub fn get(self) -> u128 {
        self.0
    }

    /// `G(x) = 2x - 1`.
    pub fn g(self) -> Result<Self> {
        Ok(OddNumber(checked_mul(self.0, 2, "G")? - 1))
    }

    /// `S(x) = 2x + 1`.
    pub fn s(self) -> Result<Self> {
        Ok(OddNumber(checked_add(
            checked_mul(self.0, 2, "S")?,
            1,
            "S",
        )?))
    }

    /// `V(x) = 4x + 1 = G(S(x))`.
    pub fn v(self) -> Result<Self> {
        Ok(OddNumber(checked_add(
            checked_mul(self.0, 4, "V")?,
            1,
            "V",
        )?))
    }

    pub fn number_type(self) -> NumberType {
        classify_type(self)
    }

    pub fn rank(self) -> u32 {
        rank(self)
    }

    pub fn verticality(self) -> Verticality {
        verticality(self)
    }

    /// Row of the binary tree holding this number: row `n` spans the odd
    /// numbers of `[2^n + 1, 2^(n+1) - 1]`. 1 and 3 sit below row 2 and
    /// are reported as rows 0 and 1.
    pub fn row(self) -> u32 {
        127 - self.0.leading_zeros()
    }
}

impl fmt::Display for OddNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for OddNumber {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let v: u128 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        OddNumber::new(v).map_err(|e| e.to_string())
    }
}

impl TryFrom<u128> for OddNumber {
    type Error = Error;

    fn try_from(value: u128) -> Result<Self> {
        OddNumber::new(value)
    }
}

impl From<OddNumber> for u128 {
    fn from(x: OddNumber) -> u128 {
        x.0
    }
}

#[inline]
pub(crate) fn checked_mul(a: u128, b: u128, op: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow { op, operand: a })
}

#[inline]
pub(crate) fn checked_add(a: u128, b: u128, op: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow { op, operand: a })
}

pub(crate) fn checked_pow(base: u128, exp: u32, op: &'static str) -> Result<u128> {
    base.checked_pow(exp)
        .ok_or(Error::Overflow { op, operand: base })
}

/// The three odd-number actions of the quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    G,
    S,
    V,
}

impl Action {
    pub const ALL: [Action; 3] = [Action::G, Action::S, Action::V];
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Action::G => "G",
            Action::S => "S",
            Action::V => "V",
        };
        f.write_str(s)
    }
}

pub fn apply_action(action: Action, x: OddNumber) -> Result<OddNumber> {
    match action {
        Action::G => x.g(),
        Action::S => x.s(),
        Action::V => x.v(),
    }
}

/// Preimage of `y` under `action`, when that preimage is a positive odd
/// integer.
pub fn invert_action(action: Action, y: OddNumber) -> Option<OddNumber> {
    let y = y.get();
    let x = match action {
        // 2x - 1 = y: y + 1 is even for odd y, so x is always integral.
        Action::G => y.div_ceil(2),
        Action::S => {
            if y < 3 {
                return None;
            }
            (y - 1) / 2
        }
        Action::V => {
            if y < 5 || !(y - 1).is_multiple_of(4) {
                return None;
            }
            (y - 1) / 4
        }
    };
    OddNumber::new(x).ok()
}

/// Residue class modulo 3, named after the last base-3 digit
/// (A: 2, B: 0, C: 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumberType {
    A,
    B,
    C,
}

impl fmt::Display for NumberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NumberType::A => "A",
            NumberType::B => "B",
            NumberType::C => "C",
        };
        f.write_str(s)
    }
}

pub fn classify_type(x: OddNumber) -> NumberType {
    match x.get() % 3 {
        2 => NumberType::A,
        0 => NumberType::B,
        _ => NumberType::C,
    }
}

/// Number of trailing 1-bits.
pub fn rank(x: OddNumber) -> u32 {
    x.get().trailing_ones()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verticality {
    /// `V(e)` for an even `e >= 2`.
    VerticalEven,
    /// `V(o)` for an odd `o`.
    VerticalOdd,
    Neither,
}

impl fmt::Display for Verticality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verticality::VerticalEven => "vertical_even",
            Verticality::VerticalOdd => "vertical_odd",
            Verticality::Neither => "neither",
        };
        f.write_str(s)
    }
}

/// 1 = V(0) is deliberately `Neither`.
pub fn verticality(x: OddNumber) -> Verticality {
    let v = x.get();
    match v % 8 {
        1 if v >= 9 => Verticality::VerticalEven,
        5 => Verticality::VerticalOdd,
        _ => Verticality::Neither,
    }
}

/// Next odd number of the Collatz trajectory: `(3x+1) / 2^k` with `k`
/// maximal.
pub fn syr(x: OddNumber) -> Result<OddNumber> {
    let t = checked_add(checked_mul(x.get(), 3, "syr")?, 1, "syr")?;
    Ok(OddNumber(t >> t.trailing_zeros()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub start: OddNumber,
    pub elements: Vec<OddNumber>,
    pub truncated: bool,
}

impl Orbit {
    pub fn reached_one(&self) -> bool {
        self.elements.last() == Some(&OddNumber::ONE)
    }

    pub fn steps(&self) -> usize {
        self.elements.len() - 1
    }
}

/// Iterates [`syr`] from `x` until 1 or until `step_bound` steps were taken.
pub fn orbit(x: OddNumber, step_bound: usize) -> Result<Orbit> {
    let mut elements = vec![x];
    let mut cur = x;
    let mut truncated = false;
    while cur != OddNumber::ONE {
        if elements.len() > step_bound {
            truncated = true;
            break;
        }
        cur = syr(cur)?;
        elements.push(cur);
    }
    Ok(Orbit {
        start: x,
        elements,
        truncated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Confirmed,
    /// No common element was found; `bound_hit` tells whether either orbit
    /// was cut short by the step bound.
    Unconfirmed {
        bound_hit: bool,
    },
}

impl OracleVerdict {
    pub fn is_confirmed(self) -> bool {
        self == OracleVerdict::Confirmed
    }
}

/// Brute-force check that the forward orbits of `a` and `b` (starting
/// elements included) meet.
pub fn equivalent_oracle(a: OddNumber, b: OddNumber, step_bound: usize) -> Result<OracleVerdict> {
    if a == b {
        return Ok(OracleVerdict::Confirmed);
    }
    let oa = orbit(a, step_bound)?;
    let ob = orbit(b, step_bound)?;
    let (short, long) = if oa.elements.len() <= ob.elements.len() {
        (&oa, &ob)
    } else {
        (&ob, &oa)
    };
    let seen: HashSet<OddNumber> = short.elements.iter().copied().collect();
    if long.elements.iter().any(|e| seen.contains(e)) {
        Ok(OracleVerdict::Confirmed)
    } else {
        Ok(OracleVerdict::Unconfirmed {
            bound_hit: oa.truncated || ob.truncated,
        })
    }
}

/// Closed form of the strictly ascending stretch of an orbit:
/// `Syr^(n-1)(a) = (a+1) * (3/2)^(n-1) - 1` where `n = rank(a)`.
pub fn ascend(a: OddNumber) -> Result<OddNumber> {
    let n = rank(a);
    if n == 1 {
        return Ok(a);
    }
    // a = 2^n * m - 1 with m odd, so the product is 2 * 3^(n-1) * m.
    let m = a.get().checked_shr(n).ok_or(Error::Overflow {
        op: "ascend",
        operand: a.get(),
    })? + 1;
    let p = checked_pow(3, n - 1, "ascend")?;
    let v = checked_mul(checked_mul(p, m, "ascend")?, 2, "ascend")?;
    Ok(OddNumber(v - 1))
}

/// 3-adic valuation of `v > 0`.
pub(crate) fn valuation3(mut v: u128) -> u32 {
    debug_assert!(v > 0);
    let mut n = 0;
    while v.is_multiple_of(3) {
        v /= 3;
        n += 1;
    }
    n
}
