//! Scenario file schema and validation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codec::{parse, parse_prefix};
use crate::engine::{EngineConfig, FaceId, NodeId, Role};
use crate::name::{Name, NamePrefix};

/// A scenario problem, located by a dotted field path such as
/// `topology.links[2].latency`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub node_id: NodeId,
    pub role: Role,
    pub cs_capacity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSpec {
    pub node_a: NodeId,
    pub node_b: NodeId,
    pub latency: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Topology {
    pub nodes: Vec<NodeSpec>,
    pub links: Vec<LinkSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    /// A new reading exists every `period` ticks.
    pub period: u64,
    pub payload_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProducerSpec {
    pub node_id: NodeId,
    pub served_prefix: String,
    pub content_generator: GeneratorSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimedInterest {
    pub time: u64,
    pub name: String,
}

/// `count` Interests at uniformly drawn times in `[start, end]`, each naming
/// one of `names` drawn uniformly. Drawn from the scenario seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomWorkload {
    pub count: usize,
    pub names: Vec<String>,
    pub start: u64,
    pub end: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConsumerSpec {
    pub node_id: NodeId,
    #[serde(default)]
    pub workload: Vec<TimedInterest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_workload: Option<RandomWorkload>,
}

/// Unsolicited Data a node's application publishes into its own store.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushSpec {
    pub time: u64,
    pub node_id: NodeId,
    pub name: String,
    #[serde(default)]
    pub payload_size: usize,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub topology: Topology,
    #[serde(default)]
    pub producers: Vec<ProducerSpec>,
    #[serde(default)]
    pub consumers: Vec<ConsumerSpec>,
    pub seed: u64,
    pub duration: u64,
    #[serde(default)]
    pub engine: EngineConfig,
    /// Per-Interest satisfaction deadline. Defaults to ten times the sum of
    /// all link latencies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interest_timeout: Option<u64>,
    #[serde(default = "default_true")]
    pub aggregate_routes: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pushes: Vec<PushSpec>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ConfigError::new(path, e.into_inner().to_string())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks every field and resolves names and faces.
    pub fn validate(&self) -> Result<Scenario, ConfigError> {
        let topo = &self.topology;
        if topo.nodes.is_empty() {
            return Err(ConfigError::new("topology.nodes", "at least one node is required"));
        }
        let mut nodes = BTreeMap::new();
        let mut servers = 0;
        for (i, n) in topo.nodes.iter().enumerate() {
            if nodes.insert(n.node_id, n.clone()).is_some() {
                return Err(ConfigError::new(
                    format!("topology.nodes[{i}].node_id"),
                    format!("duplicate node id {}", n.node_id),
                ));
            }
            if n.role == Role::CampusServer {
                servers += 1;
                if servers > 1 {
                    return Err(ConfigError::new(
                        format!("topology.nodes[{i}].role"),
                        "at most one campus_server is allowed",
                    ));
                }
            }
        }
        let node_ref = |path: String, id: NodeId| -> Result<(), ConfigError> {
            if nodes.contains_key(&id) {
                Ok(())
            } else {
                Err(ConfigError::new(path, format!("unknown node {id}")))
            }
        };

        let mut seen_links = BTreeSet::new();
        for (i, l) in topo.links.iter().enumerate() {
            node_ref(format!("topology.links[{i}].node_a"), l.node_a)?;
            node_ref(format!("topology.links[{i}].node_b"), l.node_b)?;
            if l.node_a == l.node_b {
                return Err(ConfigError::new(
                    format!("topology.links[{i}]"),
                    "link endpoints must differ",
                ));
            }
            if l.latency == 0 {
                return Err(ConfigError::new(
                    format!("topology.links[{i}].latency"),
                    "latency must be positive",
                ));
            }
            let pair = (l.node_a.min(l.node_b), l.node_a.max(l.node_b));
            if !seen_links.insert(pair) {
                return Err(ConfigError::new(
                    format!("topology.links[{i}]"),
                    format!("duplicate link between {} and {}", pair.0, pair.1),
                ));
            }
        }
        let faces = FacePlan::from_topology(topo);
        if let Some(island) = faces.unreachable_from(topo.nodes[0].node_id) {
            return Err(ConfigError::new(
                "topology",
                format!("disconnected topology: node {island} is unreachable"),
            ));
        }

        let mut producers = Vec::new();
        for (i, p) in self.producers.iter().enumerate() {
            node_ref(format!("producers[{i}].node_id"), p.node_id)?;
            let prefix = parse_prefix(&p.served_prefix)
                .map_err(|e| ConfigError::new(format!("producers[{i}].served_prefix"), e.to_string()))?;
            if p.content_generator.period == 0 {
                return Err(ConfigError::new(
                    format!("producers[{i}].content_generator.period"),
                    "period must be positive",
                ));
            }
            producers.push(Producer {
                node_id: p.node_id,
                prefix,
                period: p.content_generator.period,
                payload_size: p.content_generator.payload_size,
            });
        }

        let name_at = |path: String, text: &str| -> Result<Name, ConfigError> {
            parse(text).map_err(|e| ConfigError::new(path, e.to_string()))
        };
        let mut consumers = Vec::new();
        for (i, c) in self.consumers.iter().enumerate() {
            node_ref(format!("consumers[{i}].node_id"), c.node_id)?;
            let mut workload = Vec::new();
            for (j, w) in c.workload.iter().enumerate() {
                if w.time > self.duration {
                    return Err(ConfigError::new(
                        format!("consumers[{i}].workload[{j}].time"),
                        format!("time {} is beyond duration {}", w.time, self.duration),
                    ));
                }
                let name = name_at(format!("consumers[{i}].workload[{j}].name"), &w.name)?;
                workload.push((w.time, name));
            }
            let random = match &c.random_workload {
                None => None,
                Some(r) => {
                    let base = format!("consumers[{i}].random_workload");
                    if r.names.is_empty() {
                        return Err(ConfigError::new(format!("{base}.names"), "at least one name is required"));
                    }
                    if r.start > r.end || r.end > self.duration {
                        return Err(ConfigError::new(
                            format!("{base}.end"),
                            "need start <= end <= duration",
                        ));
                    }
                    let names = r
                        .names
                        .iter()
                        .enumerate()
                        .map(|(j, t)| name_at(format!("{base}.names[{j}]"), t))
                        .collect::<Result<Vec<_>, _>>()?;
                    Some((r.count, names, r.start, r.end))
                }
            };
            consumers.push(Consumer {
                node_id: c.node_id,
                workload,
                random,
            });
        }

        let mut pushes = Vec::new();
        for (i, p) in self.pushes.iter().enumerate() {
            node_ref(format!("pushes[{i}].node_id"), p.node_id)?;
            if p.time > self.duration {
                return Err(ConfigError::new(
                    format!("pushes[{i}].time"),
                    format!("time {} is beyond duration {}", p.time, self.duration),
                ));
            }
            let name = name_at(format!("pushes[{i}].name"), &p.name)?;
            pushes.push((p.time, p.node_id, name, p.payload_size));
        }

        let total_latency: u64 = topo.links.iter().map(|l| l.latency).sum();
        let timeout = self
            .interest_timeout
            .unwrap_or(10 * total_latency.max(1));
        Ok(Scenario {
            nodes,
            faces,
            producers,
            consumers,
            pushes,
            seed: self.seed,
            duration: self.duration,
            engine: self.engine,
            timeout,
            aggregate_routes: self.aggregate_routes,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Producer {
    pub node_id: NodeId,
    pub prefix: NamePrefix,
    pub period: u64,
    pub payload_size: usize,
}

#[derive(Debug, Clone)]
pub struct Consumer {
    pub node_id: NodeId,
    pub workload: Vec<(u64, Name)>,
    pub random: Option<(usize, Vec<Name>, u64, u64)>,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub nodes: BTreeMap<NodeId, NodeSpec>,
    pub faces: FacePlan,
    pub producers: Vec<Producer>,
    pub consumers: Vec<Consumer>,
    pub pushes: Vec<(u64, NodeId, Name, usize)>,
    pub seed: u64,
    pub duration: u64,
    pub engine: EngineConfig,
    pub timeout: u64,
    pub aggregate_routes: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceLink {
    pub face: FaceId,
    pub neighbor: NodeId,
    /// Face id on the neighbor that points back here.
    pub remote_face: FaceId,
    pub latency: u64,
}

/// Link faces per node. Each node numbers its link faces from 1 in the order
/// its links appear in the topology; face 0 is the local application.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FacePlan {
    per_node: BTreeMap<NodeId, Vec<FaceLink>>,
}

impl FacePlan {
    pub fn from_topology(topo: &Topology) -> Self {
        let mut per_node: BTreeMap<NodeId, Vec<FaceLink>> =
            topo.nodes.iter().map(|n| (n.node_id, Vec::new())).collect();
        for l in &topo.links {
            let fa = per_node.get(&l.node_a).map_or(0, Vec::len) as FaceId + 1;
            let fb = per_node.get(&l.node_b).map_or(0, Vec::len) as FaceId + 1;
            per_node.entry(l.node_a).or_default().push(FaceLink {
                face: fa,
                neighbor: l.node_b,
                remote_face: fb,
                latency: l.latency,
            });
            per_node.entry(l.node_b).or_default().push(FaceLink {
                face: fb,
                neighbor: l.node_a,
                remote_face: fa,
                latency: l.latency,
            });
        }
        Self { per_node }
    }

    pub fn links(&self, node: NodeId) -> &[FaceLink] {
        self.per_node.get(&node).map_or(&[], Vec::as_slice)
    }

    pub fn link(&self, node: NodeId, face: FaceId) -> Option<&FaceLink> {
        self.links(node).iter().find(|l| l.face == face)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.per_node.keys().copied()
    }

    /// Lowest-numbered node not reachable from `start`, if any.
    pub fn unreachable_from(&self, start: NodeId) -> Option<NodeId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(n) = queue.pop_front() {
            for l in self.links(n) {
                if seen.insert(l.neighbor) {
                    queue.push_back(l.neighbor);
                }
            }
        }
        self.per_node.keys().find(|n| !seen.contains(n)).copied()
    }
}
