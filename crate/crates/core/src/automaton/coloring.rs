use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::arith::{NumberType, OddNumber};
use crate::error::{Error, Result};
use crate::rules::{self, RuleId};

/// Default cap on processed cells for a single run.
pub const DEFAULT_TICK_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellState {
    Black,
    Gold,
    Blue,
}

impl CellState {
    /// One-letter code used in snapshots; blue is `U`.
    pub fn code(self) -> char {
        match self {
            CellState::Black => 'B',
            CellState::Gold => 'G',
            CellState::Blue => 'U',
        }
    }
}

impl fmt::Display for CellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// Order in which gold cells are processed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Schedule {
    /// Smallest gold cell first.
    #[default]
    MinFirst,
    /// Gold cells in the order they were colored.
    Fifo,
}

impl FromStr for Schedule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "min-first" => Ok(Schedule::MinFirst),
            "fifo" => Ok(Schedule::Fifo),
            other => Err(format!("unknown schedule '{other}'")),
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schedule::MinFirst => "min-first",
            Schedule::Fifo => "fifo",
        })
    }
}

/// The cell whose processing first colored a cell, and the rule used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub parent: OddNumber,
    pub rule: RuleId,
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    state: CellState,
    rule: RuleId,
    // 0 for seeds.
    parent: u128,
}

#[derive(Debug, Clone)]
enum Worklist {
    Min(BinaryHeap<Reverse<u128>>),
    Fifo(VecDeque<u128>),
}

impl Worklist {
    fn new(schedule: Schedule) -> Self {
        match schedule {
            Schedule::MinFirst => Worklist::Min(BinaryHeap::new()),
            Schedule::Fifo => Worklist::Fifo(VecDeque::new()),
        }
    }

    fn push(&mut self, v: u128) {
        match self {
            Worklist::Min(h) => h.push(Reverse(v)),
            Worklist::Fifo(q) => q.push_back(v),
        }
    }

    fn pop(&mut self) -> Option<u128> {
        match self {
            Worklist::Min(h) => h.pop().map(|Reverse(v)| v),
            Worklist::Fifo(q) => q.pop_front(),
        }
    }

    fn len(&self) -> usize {
        match self {
            Worklist::Min(h) => h.len(),
            Worklist::Fifo(q) => q.len(),
        }
    }
}

/// Cells colored by one processed cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    pub cell: OddNumber,
    pub tick: u64,
    pub colored: Vec<(OddNumber, RuleId)>,
}

/// Completion record of a binary-tree row `[2^n + 1, 2^(n+1) - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowReport {
    pub row: u32,
    pub completion_tick: u64,
    /// Gold and blue cells above `2^(n+1) - 1` at completion.
    pub expense: u64,
}

/// Sparse black/gold/blue state over the odd numbers. Absent cells are
/// black. The number 1 stays gold and is processed once.
#[derive(Debug, Clone)]
pub struct ColoringState {
    cells: HashMap<u128, Cell>,
    worklist: Worklist,
    tick: u64,
    per_row: [u64; 128],
    colored: u64,
}

fn row_of(v: u128) -> usize {
    (127 - v.leading_zeros()) as usize
}

fn row_size(n: u32) -> u64 {
    if n == 0 {
        1
    } else {
        1 << (n - 1)
    }
}

impl ColoringState {
    /// Only 1 gold.
    pub fn new(schedule: Schedule) -> Self {
        Self::seeded(schedule, [OddNumber::ONE])
    }

    pub fn seeded(schedule: Schedule, seeds: impl IntoIterator<Item = OddNumber>) -> Self {
        let mut s = ColoringState {
            cells: HashMap::new(),
            worklist: Worklist::new(schedule),
            tick: 0,
            per_row: [0; 128],
            colored: 0,
        };
        for x in seeds {
            s.color(x.get(), 0, RuleId::R1);
        }
        s
    }

    fn color(&mut self, v: u128, parent: u128, rule: RuleId) -> bool {
        if self.cells.contains_key(&v) {
            return false;
        }
        self.cells.insert(
            v,
            Cell {
                state: CellState::Gold,
                rule,
                parent,
            },
        );
        self.worklist.push(v);
        self.per_row[row_of(v)] += 1;
        self.colored += 1;
        true
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn state(&self, x: OddNumber) -> CellState {
        self.cells
            .get(&x.get())
            .map_or(CellState::Black, |c| c.state)
    }

    pub fn provenance(&self, x: OddNumber) -> Option<Provenance> {
        let c = self.cells.get(&x.get())?;
        if c.parent == 0 {
            return None;
        }
        Some(Provenance {
            parent: OddNumber::new(c.parent).ok()?,
            rule: c.rule,
        })
    }

    /// Number of gold or blue cells.
    pub fn colored_count(&self) -> u64 {
        self.colored
    }

    /// Gold or blue cells strictly above `2^(n+1) - 1`.
    pub fn colored_above_row(&self, n: u32) -> u64 {
        let below: u64 = self.per_row[..=n as usize].iter().sum();
        self.colored - below
    }

    pub fn is_row_complete(&self, n: u32) -> bool {
        self.per_row[n as usize] == row_size(n)
    }

    pub fn worklist_len(&self) -> usize {
        self.worklist.len()
    }

    /// Every gold or blue cell with its provenance, in no particular order.
    pub fn cells(&self) -> impl Iterator<Item = (OddNumber, CellState, Option<Provenance>)> + '_ {
        self.cells.iter().map(|(&v, c)| {
            let x = OddNumber::new(v).expect("cells are odd");
            let p = (c.parent != 0).then(|| Provenance {
                parent: OddNumber::new(c.parent).expect("parents are odd"),
                rule: c.rule,
            });
            (x, c.state, p)
        })
    }

    /// State of every odd number up to `upto`, ascending.
    pub fn snapshot(&self, upto: u128) -> Vec<(OddNumber, CellState)> {
        (1..=upto)
            .step_by(2)
            .map(|v| {
                let x = OddNumber::new(v).expect("odd");
                (x, self.state(x))
            })
            .collect()
    }

    /// Processes the next gold cell: rule one, rule two where its
    /// conditions hold, `R_a` on type A and `R_c` on type C. The cell
    /// then turns blue, except 1.
    pub fn step(&mut self) -> Result<StepOutcome> {
        let v = self.worklist.pop().ok_or(Error::Exhausted)?;
        let x = OddNumber::new(v)?;
        self.tick += 1;

        let mut targets = vec![(x.v()?, RuleId::R1)];
        if rules::rule_two_allowed(x) {
            targets.push((x.s()?, RuleId::R2));
        }
        match x.number_type() {
            NumberType::A => targets.push((rules::r_a(x)?, RuleId::Ra)),
            NumberType::C => targets.push((rules::r_c(x)?, RuleId::Rc)),
            NumberType::B => {}
        }

        let mut colored = Vec::new();
        for (y, rule) in targets {
            if self.color(y.get(), v, rule) {
                colored.push((y, rule));
            }
        }
        if v != 1 {
            if let Some(c) = self.cells.get_mut(&v) {
                c.state = CellState::Blue;
            }
        }
        Ok(StepOutcome {
            cell: x,
            tick: self.tick,
            colored,
        })
    }

    /// Steps until rows `2..=max_row` are complete, recording each row the
    /// tick it completes. `observer` sees the state after every tick.
    pub fn run_rows_observed(
        &mut self,
        max_row: u32,
        tick_budget: u64,
        mut observer: impl FnMut(&ColoringState, &StepOutcome),
    ) -> Result<Vec<RowReport>> {
        let mut pending: Vec<u32> = (2..=max_row)
            .filter(|&n| !self.is_row_complete(n))
            .collect();
        let mut reports: Vec<RowReport> = (2..=max_row)
            .filter(|n| !pending.contains(n))
            .map(|n| RowReport {
                row: n,
                completion_tick: self.tick,
                expense: self.colored_above_row(n),
            })
            .collect();
        while !pending.is_empty() {
            if self.tick >= tick_budget {
                return Err(Error::NonTermination {
                    row: pending[0],
                    budget: tick_budget,
                });
            }
            let out = self.step()?;
            observer(self, &out);
            let mut i = 0;
            while i < pending.len() {
                let n = pending[i];
                if self.is_row_complete(n) {
                    reports.push(RowReport {
                        row: n,
                        completion_tick: self.tick,
                        expense: self.colored_above_row(n),
                    });
                    pending.remove(i);
                } else {
                    i += 1;
                }
            }
        }
        reports.sort_by_key(|r| r.row);
        Ok(reports)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub schedule: Schedule,
    pub tick_budget: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schedule: Schedule::MinFirst,
            tick_budget: DEFAULT_TICK_BUDGET,
        }
    }
}

/// Runs the game from 1 until rows `2..=max_row` are complete. Returns the
/// row reports and the final state.
pub fn run_rows(max_row: u32, config: &RunConfig) -> Result<(Vec<RowReport>, ColoringState)> {
    let mut state = ColoringState::new(config.schedule);
    let reports = state.run_rows_observed(max_row, config.tick_budget, |_, _| {})?;
    Ok((reports, state))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjectureOutcome {
    Holds { ticks: u64 },
    Exceeded { budget: u64 },
}

impl ConjectureOutcome {
    pub fn holds(self) -> bool {
        matches!(self, ConjectureOutcome::Holds { .. })
    }
}

/// Seeds every odd number up to `2^n` gold and runs until every odd number
/// up to `2^(n+1)` is colored. Returns the final state as well.
pub fn conjecture1_check(n: u32, config: &RunConfig) -> Result<(ConjectureOutcome, ColoringState)> {
    let seeds = (1..(1u128 << n))
        .step_by(2)
        .map(|v| OddNumber::new(v).expect("odd"));
    let mut state = ColoringState::seeded(config.schedule, seeds);
    while !state.is_row_complete(n) {
        if state.tick() >= config.tick_budget {
            return Ok((
                ConjectureOutcome::Exceeded {
                    budget: config.tick_budget,
                },
                state,
            ));
        }
        state.step()?;
    }
    let ticks = state.tick();
    Ok((ConjectureOutcome::Holds { ticks }, state))
}
