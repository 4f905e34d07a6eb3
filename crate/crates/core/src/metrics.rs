//! Counting identities, reproductive rates, the averaging series and the
//! log-linear fit of row expenses.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{checked_mul, NumberType, OddNumber};
use crate::automaton::{ColoringState, RowReport};
use crate::error::{Error, Result};
use crate::hydra::is_ag;
use crate::rules;

fn identity(what: &'static str, input: u128, counted: u128, formula: u128) -> Result<u128> {
    if counted == formula {
        Ok(counted)
    } else {
        Err(Error::IdentityViolation {
            what,
            input,
            counted,
            formula,
        })
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

/// Heads `24k - 7` that are `<= x`.
fn heads_le(x: u128) -> u128 {
    (x + 7) / 24
}

/// Heads `24k - 7` that are `< x`.
fn heads_lt(x: u128) -> u128 {
    heads_le(x - 1)
}

/// Odd numbers in `(x, V(x)]`, checked against `x + (x + 1) / 2`.
pub fn odds_between(x: OddNumber) -> Result<u128> {
    let counted = (x.v()?.get() - x.get()) / 2;
    identity(
        "odds_between",
        x.get(),
        counted,
        x.get() + x.get().div_ceil(2),
    )
}

/// Heads below `V(V(b))` for type B `b`, checked against `2b/3`.
pub fn ag_below_v2_of_b(b: OddNumber) -> Result<u128> {
    ensure_type(b, NumberType::B)?;
    let counted = heads_lt(b.v()?.v()?.get());
    identity("ag_below_v2_of_b", b.get(), counted, 2 * b.get() / 3)
}

/// Heads below `V(V(c))` for type C `c`, checked against `S(c)/3`.
pub fn ag_below_v2_of_c(c: OddNumber) -> Result<u128> {
    ensure_type(c, NumberType::C)?;
    let counted = heads_lt(c.v()?.v()?.get());
    identity("ag_below_v2_of_c", c.get(), counted, c.s()?.get() / 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbCase {
    /// Seed `c` of type C: heads up to `R_b(3c)` included, `S(c)/3`.
    ThreeC,
    /// Seed `a` of type A: heads below `R_b(3a)`, `G(a)/3`.
    ThreeA,
}

pub fn ag_counts_via_rb(case: RbCase, seed: OddNumber) -> Result<u128> {
    let three = OddNumber::new(checked_mul(seed.get(), 3, "3x")?)?;
    match case {
        RbCase::ThreeC => {
            ensure_type(seed, NumberType::C)?;
            let counted = heads_le(rules::r_b(three)?.get());
            identity(
                "ag_counts_via_rb(3c)",
                seed.get(),
                counted,
                seed.s()?.get() / 3,
            )
        }
        RbCase::ThreeA => {
            ensure_type(seed, NumberType::A)?;
            let counted = heads_lt(rules::r_b(three)?.get());
            identity(
                "ag_counts_via_rb(3a)",
                seed.get(),
                counted,
                seed.g()?.get() / 3,
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DotClass {
    TypeB,
    TypeC,
    TypeAg,
    Black,
}

impl DotClass {
    pub fn name(self) -> &'static str {
        match self {
            DotClass::TypeB => "B",
            DotClass::TypeC => "C",
            DotClass::TypeAg => "Ag",
            DotClass::Black => "black",
        }
    }

    fn contains(self, x: OddNumber) -> bool {
        match self {
            DotClass::TypeB => x.number_type() == NumberType::B,
            DotClass::TypeC => x.number_type() == NumberType::C,
            DotClass::TypeAg => is_ag(x),
            DotClass::Black => true,
        }
    }

    /// Largest offspring counted for `x`: `V(x)`, or `V(x) + 2` for heads.
    fn window(self, x: OddNumber) -> u128 {
        let v = 4 * x.get() + 1;
        if self == DotClass::TypeAg {
            v + 2
        } else {
            v
        }
    }
}

impl fmt::Display for DotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateReport {
    pub class: DotClass,
    pub sample_count: u64,
    pub mean_rate: Ratio<u64>,
    pub window: String,
}

impl RateReport {
    pub fn mean_f64(&self) -> f64 {
        *self.mean_rate.numer() as f64 / *self.mean_rate.denom() as f64
    }
}

/// Mean number of cells first colored by a processed cell of `class` at
/// or below its window (`V(x)`, or `V(x) + 2` for heads). Samples are the
/// processed cells of the class up to `sample_bound`.
pub fn empirical_rate(
    state: &ColoringState,
    class: DotClass,
    sample_bound: u128,
) -> Result<RateReport> {
    if class == DotClass::Black {
        return black_structural_rate(sample_bound);
    }
    let mut offspring: HashMap<u128, u64> = HashMap::new();
    let mut processed = Vec::new();
    for (x, st, prov) in state.cells() {
        let done = st == crate::automaton::CellState::Blue || (x.get() == 1 && state.tick() > 0);
        if done && x.get() <= sample_bound && class.contains(x) {
            processed.push(x.get());
        }
        if let Some(p) = prov {
            if class.contains(p.parent) && x.get() <= class.window(p.parent) {
                *offspring.entry(p.parent.get()).or_default() += 1;
            }
        }
    }
    if processed.is_empty() {
        return Err(Error::InsufficientSamples(class.name()));
    }
    let total: u64 = processed
        .iter()
        .map(|v| offspring.get(v).copied().unwrap_or(0))
        .sum();
    let n = processed.len() as u64;
    Ok(RateReport {
        class,
        sample_count: n,
        mean_rate: Ratio::new(total, n),
        window: if class == DotClass::TypeAg {
            format!("x <= {sample_bound}, offspring <= V(x)+2")
        } else {
            format!("x <= {sample_bound}, offspring <= V(x)")
        },
    })
}

/// Binary-tree children `2y - 1`, `2y + 1` of `y` that differ from `y` and
/// do not exceed `cap`.
fn tree_children(y: u128, cap: u128) -> impl Iterator<Item = u128> {
    [2 * y - 1, 2 * y + 1]
        .into_iter()
        .filter(move |&c| c != y && c <= cap)
}

/// Structural birth rate of a black dot `x` in the binary tree, counted up
/// to `V(x)`: its own children plus the mean number of children each of
/// them has up to `V(x)`. `x` never exceeds 2 + (2 + 1) / 2.
pub fn black_rate_of(x: OddNumber) -> Ratio<u64> {
    let cap = 4 * x.get() + 1;
    let kids: Vec<u128> = tree_children(x.get(), cap).collect();
    if kids.is_empty() {
        return Ratio::zero();
    }
    let grand: u64 = kids
        .iter()
        .map(|&k| tree_children(k, cap).count() as u64)
        .sum();
    Ratio::from_integer(kids.len() as u64) + Ratio::new(grand, kids.len() as u64)
}

/// Mean of [`black_rate_of`] over every odd `x` with `V(x) <= bound`.
pub fn black_structural_rate(bound: u128) -> Result<RateReport> {
    let mut sum = Ratio::<u64>::zero();
    let mut n = 0u64;
    let mut v = 1u128;
    while 4 * v < bound {
        sum += black_rate_of(OddNumber::new(v)?);
        n += 1;
        v += 2;
    }
    if n == 0 {
        return Err(Error::InsufficientSamples(DotClass::Black.name()));
    }
    Ok(RateReport {
        class: DotClass::Black,
        sample_count: n,
        mean_rate: sum / Ratio::from_integer(n),
        window: format!("V(x) <= {bound}, binary tree"),
    })
}

/// Exact value of the series as `n` grows.
pub fn series_limit() -> BigRational {
    BigRational::new(BigInt::from(17), BigInt::from(2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPoint {
    pub n: u32,
    pub partial_sum: BigRational,
}

impl SeriesPoint {
    pub fn to_f64(&self) -> f64 {
        self.partial_sum.to_f64().unwrap_or(f64::NAN)
    }
}

/// `sum_{i=1..n} (3i + 5/2) / 2^i`, exactly.
pub fn series_partial_sum(n: u32) -> SeriesPoint {
    let two = BigInt::from(2);
    let mut sum = BigRational::zero();
    let mut pow = BigInt::one();
    for i in 1..=n {
        pow *= &two;
        let term = BigRational::new(BigInt::from(6 * i as u64 + 5), two.clone());
        sum += term / BigRational::from_integer(pow.clone());
    }
    SeriesPoint {
        n,
        partial_sum: sum,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `(row, ln expense, residual)` per fitted row.
    pub points: Vec<(u32, f64, f64)>,
}

/// Least squares of `ln(expense)` against the row index.
pub fn loglinearity(reports: &[RowReport]) -> Result<LogFit> {
    let pts: Vec<(f64, f64)> = reports
        .iter()
        .filter(|r| r.expense > 0)
        .map(|r| (r.row as f64, (r.expense as f64).ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::InsufficientSamples("rows with positive expense"));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all rows equal"));
    }
    if syy == 0.0 {
        return Err(Error::DegenerateFit("all expenses equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let points = reports
        .iter()
        .filter(|r| r.expense > 0)
        .map(|r| {
            let y = (r.expense as f64).ln();
            (r.row, y, y - (intercept + slope * r.row as f64))
        })
        .collect();
    Ok(LogFit {
        slope,
        intercept,
        r_squared: 1.0 - sse / syy,
        points,
    })
}
