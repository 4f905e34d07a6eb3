use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{NumberType, OddNumber, Verticality};
use crate::error::Result;
use crate::hydra::is_ag;
use crate::rules::{self, EquivalenceClaim};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeInfo {
    pub number_type: NumberType,
    pub rank: u32,
    pub verticality: Verticality,
    pub ag: bool,
}

impl NodeInfo {
    pub fn of(x: OddNumber) -> Self {
        NodeInfo {
            number_type: x.number_type(),
            rank: x.rank(),
            verticality: x.verticality(),
            ag: is_ag(x),
        }
    }
}

/// Labeled multigraph over odd numbers. Edges are claims whose endpoints
/// are both nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quiver {
    pub nodes: BTreeMap<OddNumber, NodeInfo>,
    pub edges: BTreeSet<EquivalenceClaim>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, x: OddNumber) {
        self.nodes.entry(x).or_insert_with(|| NodeInfo::of(x));
    }

    /// Adds the claim as an edge when both endpoints are nodes and it is
    /// not an identity. Returns whether it was added.
    pub fn add_edge(&mut self, claim: EquivalenceClaim) -> bool {
        if claim.is_identity()
            || !self.nodes.contains_key(&claim.lhs)
            || !self.nodes.contains_key(&claim.rhs)
        {
            return false;
        }
        self.edges.insert(claim)
    }

    pub fn has_edge(&self, a: u128, b: u128) -> bool {
        self.edges.iter().any(|e| {
            let (l, r) = (e.lhs.get(), e.rhs.get());
            (l, r) == (a, b) || (l, r) == (b, a)
        })
    }
}

/// All odd numbers up to `limit`, joined by the rule one, rule two,
/// simplified and rule five edges that stay within the limit.
pub fn build_quiver(limit: OddNumber) -> Result<Quiver> {
    let mut q = Quiver::new();
    for v in (1..=limit.get()).step_by(2) {
        q.add_node(OddNumber::new(v)?);
    }
    let xs: Vec<OddNumber> = q.nodes.keys().copied().collect();
    for x in xs {
        q.add_edge(rules::rule_one(x)?);
        for c in rules::rule_two(x)? {
            q.add_edge(c);
        }
        if let Some(c) = rules::rule_two_step(x)? {
            q.add_edge(c);
        }
        q.add_edge(rules::simplified_for(x)?);
        if let Ok((base, n)) = rules::rule_five_params(x) {
            for c in rules::rule_five_full(base, n)? {
                q.add_edge(c);
            }
        }
    }
    Ok(q)
}
