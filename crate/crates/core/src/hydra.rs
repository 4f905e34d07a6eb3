//! Hydra games on rooted trees and the head structure of `24k - 7`.

use crate::arith::{NumberType, OddNumber};
use crate::automaton::Chain;
use crate::error::{Error, Result};
use crate::rules;

/// Whether `x` is a type A, vertical even number, i.e. `x = 24k - 7`.
pub fn is_ag(x: OddNumber) -> bool {
    x.get() % 24 == 17
}

/// Number of heads `24k - 7` up to and including `x`.
pub fn heads_up_to(x: OddNumber) -> u128 {
    (x.get() + 7) / 24
}

pub type NodeId = usize;

#[derive(Debug, Clone)]
struct Node {
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    alive: bool,
}

/// Rooted tree stored in an arena. Node ids are never reused.
#[derive(Debug, Clone)]
pub struct HydraTree {
    nodes: Vec<Node>,
    live: usize,
}

impl Default for HydraTree {
    fn default() -> Self {
        Self::new()
    }
}

impl HydraTree {
    pub const ROOT: NodeId = 0;

    /// A bare root.
    pub fn new() -> Self {
        HydraTree {
            nodes: vec![Node {
                parent: None,
                children: Vec::new(),
                alive: true,
            }],
            live: 1,
        }
    }

    /// Builds a tree from a parent list: entry `i` is the parent of node
    /// `i + 1`, and every parent must precede its child.
    pub fn from_parents(parents: &[NodeId]) -> Self {
        let mut t = Self::new();
        for &p in parents {
            t.add_child(p);
        }
        t
    }

    /// Root with `k` short heads.
    pub fn star(k: usize) -> Self {
        Self::from_parents(&vec![Self::ROOT; k])
    }

    /// Root followed by a path of `len` nodes.
    pub fn path(len: usize) -> Self {
        Self::from_parents(&(0..len).collect::<Vec<_>>())
    }

    pub fn add_child(&mut self, parent: NodeId) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(Node {
            parent: Some(parent),
            children: Vec::new(),
            alive: true,
        });
        self.nodes[parent].children.push(id);
        self.live += 1;
        id
    }

    pub fn node_count(&self) -> usize {
        self.live
    }

    pub fn is_bare_root(&self) -> bool {
        self.nodes[Self::ROOT].children.is_empty()
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn is_head(&self, id: NodeId) -> bool {
        id != Self::ROOT
            && id < self.nodes.len()
            && self.nodes[id].alive
            && self.nodes[id].children.is_empty()
    }

    pub fn is_short(&self, head: NodeId) -> bool {
        self.is_head(head) && self.nodes[head].parent == Some(Self::ROOT)
    }

    /// Live heads in depth-first order.
    pub fn heads(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![Self::ROOT];
        while let Some(id) = stack.pop() {
            let ch = &self.nodes[id].children;
            if ch.is_empty() && id != Self::ROOT {
                out.push(id);
            }
            stack.extend(ch.iter().rev());
        }
        out
    }

    pub fn depth(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(Self::ROOT, 0)];
        while let Some((id, d)) = stack.pop() {
            best = best.max(d);
            stack.extend(self.nodes[id].children.iter().map(|&c| (c, d + 1)));
        }
        best
    }

    fn copy_subtree(&mut self, src: NodeId, new_parent: NodeId) {
        let id = self.add_child(new_parent);
        let kids = self.nodes[src].children.clone();
        for k in kids {
            self.copy_subtree(k, id);
        }
    }

    /// Cuts `head`. A long head makes `n` copies of its parent's remaining
    /// subtree grow from the grandparent; a short head grows nothing.
    pub fn cut_head(&mut self, head: NodeId, n: u64) -> Result<()> {
        if !self.is_head(head) {
            return Err(Error::NotAHead(head));
        }
        let parent = self.nodes[head].parent.expect("heads have parents");
        let siblings = &mut self.nodes[parent].children;
        let pos = siblings
            .iter()
            .rposition(|&c| c == head)
            .expect("head is a child of its parent");
        siblings.remove(pos);
        self.nodes[head].alive = false;
        self.live -= 1;
        if let Some(grand) = self.nodes[parent].parent {
            for _ in 0..n {
                self.copy_subtree(parent, grand);
            }
        }
        Ok(())
    }

    fn leftmost_head(&self) -> NodeId {
        let mut id = Self::ROOT;
        while let Some(&c) = self.nodes[id].children.first() {
            id = c;
        }
        id
    }

    fn rightmost_head(&self) -> NodeId {
        let mut id = Self::ROOT;
        while let Some(&c) = self.nodes[id].children.last() {
            id = c;
        }
        id
    }
}

/// Which head to cut next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// A short head when one exists, otherwise the leftmost head.
    ShortFirst,
    /// Cuts up to k leftmost heads per step, all with the same regrowth.
    Hecatonchire(usize),
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::Leftmost,
        Strategy::Rightmost,
        Strategy::ShortFirst,
    ];

    fn cuts_per_step(self) -> usize {
        match self {
            Strategy::Hecatonchire(k) => k.max(1),
            _ => 1,
        }
    }

    fn pick(self, t: &HydraTree) -> NodeId {
        match self {
            Strategy::Leftmost | Strategy::Hecatonchire(_) => t.leftmost_head(),
            Strategy::Rightmost => t.rightmost_head(),
            Strategy::ShortFirst => t.nodes[HydraTree::ROOT]
                .children
                .iter()
                .copied()
                .find(|&c| t.nodes[c].children.is_empty())
                .unwrap_or_else(|| t.leftmost_head()),
        }
    }
}

/// Number of copies grown after a long cut.
#[derive(Debug, Clone, Copy)]
pub enum Regrowth {
    Fixed(u64),
    /// The 1-based number of the current step.
    StepIndexed,
    Custom(fn(u64) -> u64),
}

impl Regrowth {
    pub fn at(self, step: u64) -> u64 {
        match self {
            Regrowth::Fixed(n) => n,
            Regrowth::StepIndexed => step,
            Regrowth::Custom(f) => f(step),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutRecord {
    pub step: u64,
    pub head: NodeId,
    pub was_short: bool,
    pub regrowth: u64,
    pub node_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameOutcome {
    RootReached {
        steps: u64,
    },
    /// More than `budget` cuts, or more than `budget` live nodes.
    BudgetExceeded,
}

fn play_step(
    tree: &mut HydraTree,
    strategy: Strategy,
    regrowth: Regrowth,
    step: u64,
    on_cut: &mut impl FnMut(&CutRecord),
) {
    let copies = regrowth.at(step);
    for _ in 0..strategy.cuts_per_step() {
        if tree.is_bare_root() {
            break;
        }
        let head = strategy.pick(tree);
        let was_short = tree.is_short(head);
        let n = if was_short { 0 } else { copies };
        tree.cut_head(head, n).expect("strategies pick live heads");
        on_cut(&CutRecord {
            step,
            head,
            was_short,
            regrowth: n,
            node_count: tree.node_count(),
        });
    }
}

/// Cuts heads until only the root is left. `budget` caps both the number
/// of cuts and the live node count. Each cut is passed to `on_cut`.
pub fn play_game_with(
    mut tree: HydraTree,
    strategy: Strategy,
    regrowth: Regrowth,
    budget: u64,
    mut on_cut: impl FnMut(&CutRecord),
) -> GameOutcome {
    let mut step = 0u64;
    while !tree.is_bare_root() {
        if step >= budget || tree.node_count() as u64 > budget {
            return GameOutcome::BudgetExceeded;
        }
        step += 1;
        play_step(&mut tree, strategy, regrowth, step, &mut on_cut);
    }
    GameOutcome::RootReached { steps: step }
}

pub fn play_game(
    tree: HydraTree,
    strategy: Strategy,
    regrowth: Regrowth,
    budget: u64,
) -> GameOutcome {
    play_game_with(tree, strategy, regrowth, budget, |_| {})
}

/// Like [`play_game`], also returning every cut.
pub fn trace_game(
    tree: HydraTree,
    strategy: Strategy,
    regrowth: Regrowth,
    budget: u64,
) -> (GameOutcome, Vec<CutRecord>) {
    let mut trace = Vec::new();
    let out = play_game_with(tree, strategy, regrowth, budget, |c| trace.push(*c));
    (out, trace)
}

/// The tree as it stands after the first `steps` steps of a game.
pub fn replay(
    mut tree: HydraTree,
    strategy: Strategy,
    regrowth: Regrowth,
    steps: u64,
) -> HydraTree {
    for step in 1..=steps {
        if tree.is_bare_root() {
            break;
        }
        play_step(&mut tree, strategy, regrowth, step, &mut |_| {});
    }
    tree
}

/// Sources of the rule five macro-steps of a chain. Every one of them
/// must be a head.
pub fn map_run_to_cuts(chain: &Chain) -> Result<Vec<OddNumber>> {
    chain
        .rule_five_sources()
        .map(|x| {
            if is_ag(x) {
                Ok(x)
            } else {
                Err(Error::HeadInvariantViolation(x))
            }
        })
        .collect()
}

/// Bup or Cup: type B or C with `x = S(x)` by rule two.
pub fn is_up(x: OddNumber) -> bool {
    x.number_type() != NumberType::A && rules::rule_two_allowed(x)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeadGapReport {
    pub heads: u64,
    /// Consecutive heads not 24 apart.
    pub gap_violations: Vec<(OddNumber, OddNumber)>,
    /// Intervals between consecutive heads without exactly 8 non-A numbers.
    pub non_a_violations: Vec<(OddNumber, OddNumber)>,
    /// Largest number of ups of rank 2 or more strictly between two heads.
    pub max_ups_rank2: usize,
    /// Intervals with more than 3 such ups.
    pub ups_over_three: Vec<(OddNumber, OddNumber)>,
}

impl HeadGapReport {
    pub fn is_clean(&self) -> bool {
        self.gap_violations.is_empty() && self.non_a_violations.is_empty()
    }
}

/// Walks consecutive heads up to `bound` and checks their spacing.
pub fn head_gap_check(bound: OddNumber) -> HeadGapReport {
    let mut report = HeadGapReport::default();
    let mut prev: Option<u128> = None;
    let mut v = 17u128;
    while v <= bound.get() {
        let x = OddNumber::new(v).expect("odd");
        if is_ag(x) {
            report.heads += 1;
            if let Some(p) = prev {
                let pair = (OddNumber::new(p).expect("odd"), x);
                if v - p != 24 {
                    report.gap_violations.push(pair);
                }
                let between = (p + 2..v)
                    .step_by(2)
                    .map(|w| OddNumber::new(w).expect("odd"));
                let non_a = between
                    .clone()
                    .filter(|w| w.number_type() != NumberType::A)
                    .count();
                if non_a != 8 {
                    report.non_a_violations.push(pair);
                }
                let ups = between.filter(|w| w.rank() >= 2 && is_up(*w)).count();
                report.max_ups_rank2 = report.max_ups_rank2.max(ups);
                if ups > 3 {
                    report.ups_over_three.push(pair);
                }
            }
            prev = Some(v);
        }
        v += 2;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::follow_a_branch;

    fn odd(v: u128) -> OddNumber {
        OddNumber::new(v).unwrap()
    }

    #[test]
    fn heads() {
        assert!(is_ag(odd(17)));
        assert!(is_ag(odd(41)));
        assert!(!is_ag(odd(15)));
        assert_eq!(heads_up_to(odd(1025)), 43);
        assert_eq!(heads_up_to(odd(17)), 1);
        assert_eq!(heads_up_to(odd(41)), 2);
    }

    #[test]
    fn short_cut_grows_nothing() {
        let mut t = HydraTree::star(3);
        t.cut_head(2, 5).unwrap();
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.children(HydraTree::ROOT), &[1, 3]);
    }

    #[test]
    fn long_cut_on_a_path() {
        // root - a - h, cut h with n = 2.
        let mut t = HydraTree::path(2);
        t.cut_head(2, 2).unwrap();
        assert_eq!(t.node_count(), 4);
        let kids = t.children(HydraTree::ROOT).to_vec();
        assert_eq!(kids.len(), 3);
        assert!(kids.iter().all(|&k| t.children(k).is_empty()));
    }

    #[test]
    fn cut_errors() {
        let mut t = HydraTree::path(2);
        assert_eq!(t.cut_head(1, 1), Err(Error::NotAHead(1)));
        assert_eq!(t.cut_head(0, 1), Err(Error::NotAHead(0)));
        assert_eq!(t.cut_head(9, 1), Err(Error::NotAHead(9)));
    }

    #[test]
    fn games() {
        assert_eq!(
            play_game(
                HydraTree::star(1),
                Strategy::Leftmost,
                Regrowth::Fixed(3),
                10
            ),
            GameOutcome::RootReached { steps: 1 }
        );
        assert_eq!(
            play_game(
                HydraTree::star(5),
                Strategy::Rightmost,
                Regrowth::StepIndexed,
                10
            ),
            GameOutcome::RootReached { steps: 5 }
        );
        let depth2 = HydraTree::from_parents(&[0, 1, 1, 0]);
        assert!(matches!(
            play_game(depth2, Strategy::Leftmost, Regrowth::Fixed(1), 1_000_000),
            GameOutcome::RootReached { .. }
        ));
        assert_eq!(
            play_game(
                HydraTree::path(3),
                Strategy::Leftmost,
                Regrowth::Fixed(1),
                2
            ),
            GameOutcome::BudgetExceeded
        );
    }

    #[test]
    fn trace_records_every_cut() {
        let (out, trace) = trace_game(
            HydraTree::path(2),
            Strategy::Leftmost,
            Regrowth::StepIndexed,
            100,
        );
        let GameOutcome::RootReached { steps } = out else {
            panic!("{out:?}")
        };
        assert_eq!(trace.len() as u64, steps);
        assert!(!trace[0].was_short);
        assert_eq!(trace[0].regrowth, 1);
        assert_eq!(trace.last().unwrap().node_count, 1);
    }

    #[test]
    fn replay_matches_trace() {
        let tree = HydraTree::from_parents(&[0, 1, 1, 0]);
        let (_, trace) = trace_game(
            tree.clone(),
            Strategy::Leftmost,
            Regrowth::StepIndexed,
            10_000,
        );
        for rec in trace.iter().take(20) {
            let t = replay(
                tree.clone(),
                Strategy::Leftmost,
                Regrowth::StepIndexed,
                rec.step,
            );
            assert_eq!(t.node_count(), rec.node_count);
        }
    }

    #[test]
    fn several_heads_per_step() {
        let (out, trace) = trace_game(
            HydraTree::star(5),
            Strategy::Hecatonchire(2),
            Regrowth::Fixed(1),
            10,
        );
        assert_eq!(out, GameOutcome::RootReached { steps: 3 });
        assert_eq!(trace.len(), 5);
        assert_eq!(trace[1].step, 1);
        let (out, _) = trace_game(
            HydraTree::path(3),
            Strategy::Hecatonchire(3),
            Regrowth::StepIndexed,
            1000,
        );
        assert!(matches!(out, GameOutcome::RootReached { .. }));
    }

    #[test]
    fn chain_cuts() {
        let chain = follow_a_branch(odd(15), None).unwrap();
        let cuts: Vec<u128> = map_run_to_cuts(&chain)
            .unwrap()
            .iter()
            .map(|x| x.get())
            .collect();
        assert_eq!(cuts, vec![1025, 809, 425, 377, 593, 233, 137, 161, 41]);
        let chain = follow_a_branch(odd(1), None).unwrap();
        assert!(map_run_to_cuts(&chain).unwrap().is_empty());
    }

    #[test]
    fn gaps() {
        let r = head_gap_check(odd(10_001));
        assert!(r.is_clean());
        assert_eq!(r.heads, heads_up_to(odd(10_001)) as u64);
        let between: Vec<u128> = (19..41).step_by(2).filter(|v| v % 3 != 2).collect();
        assert_eq!(between.len(), 8);
        assert!(is_up(odd(27)));
    }
}
