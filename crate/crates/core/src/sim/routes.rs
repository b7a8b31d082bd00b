//! Static shortest-path FIB population and sibling-prefix aggregation.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use thiserror::Error;

use crate::engine::{FaceId, NodeId};
use crate::name::NamePrefix;

use super::config::FacePlan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RouteError {
    #[error("disconnected topology: node {node} cannot reach producer {producer}")]
    DisconnectedTopology { node: NodeId, producer: NodeId },
}

pub type FibTable = BTreeMap<NamePrefix, Vec<FaceId>>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Routes {
    pub unaggregated: BTreeMap<NodeId, FibTable>,
    pub aggregated: BTreeMap<NodeId, FibTable>,
}

impl Routes {
    pub fn unaggregated_size(&self) -> usize {
        self.unaggregated.values().map(BTreeMap::len).sum()
    }

    pub fn aggregated_size(&self) -> usize {
        self.aggregated.values().map(BTreeMap::len).sum()
    }
}

fn distances(plan: &FacePlan, source: NodeId) -> BTreeMap<NodeId, u64> {
    let mut dist = BTreeMap::from([(source, 0u64)]);
    let mut heap = BinaryHeap::from([Reverse((0u64, source))]);
    while let Some(Reverse((d, n))) = heap.pop() {
        if dist.get(&n).is_some_and(|&best| d > best) {
            continue;
        }
        for l in plan.links(n) {
            let nd = d + l.latency;
            if dist.get(&l.neighbor).is_none_or(|&best| nd < best) {
                dist.insert(l.neighbor, nd);
                heap.push(Reverse((nd, l.neighbor)));
            }
        }
    }
    dist
}

/// Installs, at every node other than the producer, a route for each served
/// prefix along the latency-weighted shortest path. Equal-cost next hops go
/// to the lower node id; a prefix served by several producers is routed to
/// the nearest one (lower producer id on ties). Producers reach their own
/// prefixes through the application face, which is not a routed entry.
pub fn build_routes(
    plan: &FacePlan,
    producers: &[(NodeId, NamePrefix)],
) -> Result<Routes, RouteError> {
    // (node, prefix) -> (distance, producer, face)
    let mut best: BTreeMap<(NodeId, NamePrefix), (u64, NodeId, Option<FaceId>)> = BTreeMap::new();
    for (producer, prefix) in producers {
        let dist = distances(plan, *producer);
        for node in plan.nodes() {
            let Some(&d) = dist.get(&node) else {
                return Err(RouteError::DisconnectedTopology {
                    node,
                    producer: *producer,
                });
            };
            let face = if node == *producer {
                None
            } else {
                plan.links(node)
                    .iter()
                    .filter(|l| dist.get(&l.neighbor).is_some_and(|&dn| dn + l.latency == d))
                    .min_by_key(|l| l.neighbor)
                    .map(|l| l.face)
            };
            let candidate = (d, *producer, face);
            best.entry((node, prefix.clone()))
                .and_modify(|cur| {
                    if (candidate.0, candidate.1) < (cur.0, cur.1) {
                        *cur = candidate;
                    }
                })
                .or_insert(candidate);
        }
    }

    let mut unaggregated: BTreeMap<NodeId, FibTable> =
        plan.nodes().map(|n| (n, FibTable::new())).collect();
    for ((node, prefix), (_, _, face)) in best {
        if let Some(face) = face {
            unaggregated.entry(node).or_default().insert(prefix, vec![face]);
        }
    }
    let aggregated = unaggregated
        .iter()
        .map(|(n, t)| (*n, aggregate(t)))
        .collect();
    Ok(Routes {
        unaggregated,
        aggregated,
    })
}

fn nearest_ancestor<'a>(table: &'a FibTable, prefix: &NamePrefix) -> Option<(&'a NamePrefix, &'a Vec<FaceId>)> {
    let mut cur = prefix.parent();
    while let Some(p) = cur {
        if let Some((k, v)) = table.get_key_value(&p) {
            return Some((k, v));
        }
        cur = p.parent();
    }
    None
}

/// Collapses sibling entries that share a parent prefix and next faces into
/// that parent, and drops entries whose nearest installed ancestor already
/// routes to the same faces. Repeats until nothing changes.
pub fn aggregate(table: &FibTable) -> FibTable {
    let mut table = table.clone();
    loop {
        let redundant: Vec<NamePrefix> = table
            .iter()
            .filter(|(p, faces)| nearest_ancestor(&table, p).is_some_and(|(_, af)| af == *faces))
            .map(|(p, _)| p.clone())
            .collect();
        let mut changed = !redundant.is_empty();
        for p in redundant {
            table.remove(&p);
        }

        let mut groups: BTreeMap<(NamePrefix, Vec<FaceId>), Vec<NamePrefix>> = BTreeMap::new();
        for (p, faces) in &table {
            if let Some(parent) = p.parent() {
                groups
                    .entry((parent, faces.clone()))
                    .or_default()
                    .push(p.clone());
            }
        }
        for ((parent, faces), children) in groups {
            if children.len() < 2 {
                continue;
            }
            match table.get(&parent) {
                Some(existing) if *existing != faces => continue,
                _ => {}
            }
            for c in children {
                table.remove(&c);
            }
            table.insert(parent, faces);
            changed = true;
        }
        if !changed {
            return table;
        }
    }
}
