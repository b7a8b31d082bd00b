//! Discrete-event execution of a validated scenario.

use std::collections::BTreeMap;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engine::{
    ack_for, DataPacket, DropReason, Effect, EngineError, Face, FaceId, InterestPacket, NodeId,
    NodeState, Peer, TraceLine, APP_FACE,
};
use crate::flat::compute_fc;
use crate::name::{AttributesComponent, Freshness, Name, TaskType};

use super::config::{ConfigError, Producer, Scenario, ScenarioConfig};
use super::metrics::{ratio, Metrics, PopularityRow};
use super::routes::{build_routes, RouteError, Routes};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Routes(#[from] RouteError),
    #[error("t={time} node {node}: {source}")]
    Engine {
        time: u64,
        node: NodeId,
        source: EngineError,
    },
}

/// A packet handed to one node's forwarding engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Packet {
    Interest(InterestPacket),
    Data(DataPacket),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepInput {
    pub time: u64,
    pub node: NodeId,
    pub face: FaceId,
    pub packet: Packet,
}

/// Hooks around every engine step, for tracing and property checks.
pub trait Observer {
    fn before_step(&mut self, _input: &StepInput, _nodes: &BTreeMap<NodeId, NodeState>) {}
    fn after_step(
        &mut self,
        _input: &StepInput,
        _effects: &[Effect],
        _nodes: &BTreeMap<NodeId, NodeState>,
    ) {
    }
}

impl Observer for () {}

/// One consumer-issued Interest and its fate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterestRecord {
    pub node: NodeId,
    pub key: String,
    pub issued_at: u64,
    pub nonce: u64,
    /// Delivery time and Data hop count.
    pub satisfied: Option<(u64, u32)>,
}

#[derive(Debug, Clone)]
pub struct SimOutput {
    pub metrics: Metrics,
    pub trace: Vec<String>,
    pub records: Vec<InterestRecord>,
    /// Last value applied per command, per actuator node.
    pub actuators: BTreeMap<NodeId, BTreeMap<String, String>>,
    pub routes: Routes,
}

impl SimOutput {
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for line in &self.trace {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

#[derive(Debug)]
enum Event {
    Issue { node: NodeId, name: Name },
    Push { node: NodeId, name: Name, payload_size: usize },
    Deliver(StepInput),
}

struct Runner<'a> {
    scenario: &'a Scenario,
    nodes: BTreeMap<NodeId, NodeState>,
    queue: BTreeMap<(u64, u64), Event>,
    seq: u64,
    rng: ChaCha8Rng,
    trace: Vec<String>,
    records: Vec<InterestRecord>,
    actuators: BTreeMap<NodeId, BTreeMap<String, String>>,
    cache_hits: u64,
    cs_lookups: u64,
    popularity: BTreeMap<String, u64>,
}

impl Runner<'_> {
    fn schedule(&mut self, time: u64, event: Event) {
        self.queue.insert((time, self.seq), event);
        self.seq += 1;
    }

    fn nonce(&mut self) -> u64 {
        loop {
            let n: u64 = self.rng.random();
            if n != 0 {
                return n;
            }
        }
    }

    fn payload(&mut self, size: usize) -> Vec<u8> {
        let mut buf = vec![0u8; size];
        self.rng.fill_bytes(&mut buf);
        buf
    }

    fn step(&mut self, input: StepInput, observer: &mut dyn Observer) -> Result<(), SimError> {
        observer.before_step(&input, &self.nodes);
        let node = self.nodes.get_mut(&input.node).expect("scheduled node exists");
        let result = match &input.packet {
            Packet::Interest(i) => node.on_interest(input.time, i, input.face),
            Packet::Data(d) => node.on_data(input.time, d, input.face),
        };
        let effects = result.map_err(|source| SimError::Engine {
            time: input.time,
            node: input.node,
            source,
        })?;
        observer.after_step(&input, &effects, &self.nodes);

        if matches!(input.packet, Packet::Interest(_))
            && !effects.iter().any(|e| {
                matches!(
                    e,
                    Effect::Drop {
                        reason: DropReason::Loop,
                        ..
                    }
                )
            })
        {
            self.cs_lookups += 1;
        }
        for e in &effects {
            self.trace.push(
                TraceLine {
                    time: input.time,
                    node: input.node,
                    effect: e,
                }
                .to_string(),
            );
        }
        for e in effects {
            self.dispatch(input.time, input.node, e);
        }
        Ok(())
    }

    fn dispatch(&mut self, now: u64, node: NodeId, effect: Effect) {
        match effect {
            Effect::SendData {
                face,
                data,
                interest_key,
                from_cache,
            } => {
                if from_cache {
                    self.cache_hits += 1;
                    *self.popularity.entry(data.key()).or_default() += 1;
                }
                if face == APP_FACE {
                    self.consume(now, node, &interest_key, &data);
                } else {
                    let link = *self.scenario.faces.link(node, face).expect("link face");
                    let mut data = data;
                    data.hop_count += 1;
                    self.schedule(
                        now + link.latency,
                        Event::Deliver(StepInput {
                            time: now + link.latency,
                            node: link.neighbor,
                            face: link.remote_face,
                            packet: Packet::Data(data),
                        }),
                    );
                }
            }
            Effect::ForwardInterest { face, interest } => {
                if face == APP_FACE {
                    self.produce(now, node, &interest);
                } else {
                    let link = *self.scenario.faces.link(node, face).expect("link face");
                    let mut interest = interest;
                    interest.hop_count += 1;
                    self.schedule(
                        now + link.latency,
                        Event::Deliver(StepInput {
                            time: now + link.latency,
                            node: link.neighbor,
                            face: link.remote_face,
                            packet: Packet::Interest(interest),
                        }),
                    );
                }
            }
            _ => {}
        }
    }

    fn consume(&mut self, now: u64, node: NodeId, key: &str, data: &DataPacket) {
        let timeout = self.scenario.timeout;
        for r in self.records.iter_mut().filter(|r| {
            r.node == node
                && r.key == key
                && r.satisfied.is_none()
                && r.issued_at <= now
                && now - r.issued_at <= timeout
        }) {
            r.satisfied = Some((now, data.hop_count));
        }
    }

    /// Local application answering an Interest handed up on the app face.
    fn produce(&mut self, now: u64, node: NodeId, interest: &InterestPacket) {
        let Some(producer) = self
            .scenario
            .producers
            .iter()
            .filter(|p| p.node_id == node && p.prefix.is_prefix_of(&interest.name))
            .max_by_key(|p| p.prefix.len())
            .cloned()
        else {
            return;
        };
        let data = match interest.name.task() {
            Some(t) if t.task_type == TaskType::Action => self.actuate(now, node, &interest.name),
            _ => self.sense(now, &producer, &interest.name),
        };
        if let Some(data) = data {
            self.schedule(
                now,
                Event::Deliver(StepInput {
                    time: now,
                    node,
                    face: APP_FACE,
                    packet: Packet::Data(data),
                }),
            );
        }
    }

    fn sense(&mut self, now: u64, producer: &Producer, name: &Name) -> Option<DataPacket> {
        let generated_at = match name.freshness() {
            Some(Freshness::Oldest) => 0,
            Some(Freshness::GeneratedAt(ts)) => ts,
            Some(Freshness::Latest) | None => now / producer.period * producer.period,
        };
        let ac = name.ac().cloned().map(|ac| AttributesComponent {
            popularity: None,
            ..ac
        });
        let fc = name.fc().map(|fc| compute_fc(name.hc(), fc.encoding));
        let data_name = name.with_ac(ac).ok()?.with_fc(fc).ok()?;
        let payload = self.payload(producer.payload_size);
        DataPacket::stamped(&data_name, payload, generated_at).ok()
    }

    /// `action/Cmd:Val` sets `Cmd` to `Val` and acknowledges; anything else is refused.
    fn actuate(&mut self, now: u64, node: NodeId, name: &Name) -> Option<DataPacket> {
        let task = name.task()?;
        let ok = match task.task_sub_type.as_str().split_once(':') {
            Some((cmd, val)) if !cmd.is_empty() => {
                self.actuators
                    .entry(node)
                    .or_default()
                    .insert(cmd.to_string(), val.to_string());
                true
            }
            _ => false,
        };
        ack_for(name, ok, now).ok()
    }
}

fn build_nodes(scenario: &Scenario, routes: &Routes) -> BTreeMap<NodeId, NodeState> {
    let table = if scenario.aggregate_routes {
        &routes.aggregated
    } else {
        &routes.unaggregated
    };
    let mut nodes = BTreeMap::new();
    for (id, spec) in &scenario.nodes {
        let mut state = NodeState::new(*id, spec.role, spec.cs_capacity, scenario.engine);
        for link in scenario.faces.links(*id) {
            state
                .add_face(Face {
                    face_id: link.face,
                    peer: Peer::Node(link.neighbor),
                })
                .expect("face plan ids are unique");
        }
        for (prefix, faces) in table.get(id).into_iter().flatten() {
            state.fib_mut().insert(prefix.clone(), faces.clone());
        }
        for p in scenario.producers.iter().filter(|p| p.node_id == *id) {
            state.fib_mut().insert(p.prefix.clone(), vec![APP_FACE]);
        }
        nodes.insert(*id, state);
    }
    nodes
}

/// Runs a validated scenario with an observer attached.
pub fn run_with(scenario: &Scenario, observer: &mut dyn Observer) -> Result<SimOutput, SimError> {
    let producers: Vec<_> = scenario
        .producers
        .iter()
        .map(|p| (p.node_id, p.prefix.clone()))
        .collect();
    let routes = build_routes(&scenario.faces, &producers)?;
    let mut runner = Runner {
        scenario,
        nodes: build_nodes(scenario, &routes),
        queue: BTreeMap::new(),
        seq: 0,
        rng: ChaCha8Rng::seed_from_u64(scenario.seed),
        trace: Vec::new(),
        records: Vec::new(),
        actuators: BTreeMap::new(),
        cache_hits: 0,
        cs_lookups: 0,
        popularity: BTreeMap::new(),
    };

    for c in &scenario.consumers {
        for (time, name) in &c.workload {
            runner.schedule(
                *time,
                Event::Issue {
                    node: c.node_id,
                    name: name.clone(),
                },
            );
        }
        if let Some((count, names, start, end)) = &c.random {
            for _ in 0..*count {
                let time = runner.rng.random_range(*start..=*end);
                let name = names[runner.rng.random_range(0..names.len())].clone();
                runner.schedule(time, Event::Issue { node: c.node_id, name });
            }
        }
    }
    for (time, node, name, payload_size) in &scenario.pushes {
        runner.schedule(
            *time,
            Event::Push {
                node: *node,
                name: name.clone(),
                payload_size: *payload_size,
            },
        );
    }

    while let Some(((time, _), event)) = runner.queue.pop_first() {
        if time > scenario.duration {
            break;
        }
        let input = match event {
            Event::Issue { node, name } => {
                let nonce = runner.nonce();
                let interest = InterestPacket::new(name, nonce).expect("nonce is nonzero");
                runner.records.push(InterestRecord {
                    node,
                    key: interest.key(),
                    issued_at: time,
                    nonce,
                    satisfied: None,
                });
                StepInput {
                    time,
                    node,
                    face: APP_FACE,
                    packet: Packet::Interest(interest),
                }
            }
            Event::Push {
                node,
                name,
                payload_size,
            } => {
                let payload = runner.payload(payload_size);
                let data = DataPacket::stamped(&name, payload, time).map_err(|source| {
                    SimError::Engine { time, node, source }
                })?;
                StepInput {
                    time,
                    node,
                    face: APP_FACE,
                    packet: Packet::Data(data),
                }
            }
            Event::Deliver(input) => input,
        };
        runner.step(input, observer)?;
    }

    let issued = runner.records.len() as u64;
    let satisfied: Vec<u32> = runner
        .records
        .iter()
        .filter_map(|r| r.satisfied.map(|(_, hops)| hops))
        .collect();
    let n_sat = satisfied.len() as u64;
    let hop_sum: u64 = satisfied.iter().map(|&h| u64::from(h)).sum();
    let unagg = routes.unaggregated_size() as u64;
    let agg = routes.aggregated_size() as u64;
    let metrics = Metrics {
        interests_issued: issued,
        interests_satisfied: n_sat,
        satisfaction_rate: ratio(n_sat, issued, 1.0),
        fib_entries_unaggregated: unagg,
        fib_entries_aggregated: agg,
        aggregation_ratio: ratio(unagg, agg, 1.0),
        cache_hits: runner.cache_hits,
        cache_hit_ratio: ratio(runner.cache_hits, runner.cs_lookups, 0.0),
        mean_hop_count: ratio(hop_sum, n_sat, 0.0),
        popularity: runner
            .popularity
            .into_iter()
            .map(|(name, hits)| PopularityRow { name, hits })
            .collect(),
    };
    Ok(SimOutput {
        metrics,
        trace: runner.trace,
        records: runner.records,
        actuators: runner.actuators,
        routes,
    })
}

pub fn run(scenario: &Scenario) -> Result<SimOutput, SimError> {
    run_with(scenario, &mut ())
}

/// Parses, validates and runs a scenario document.
pub fn run_json(text: &str) -> Result<SimOutput, SimError> {
    let scenario = ScenarioConfig::from_json(text)?.validate()?;
    run(&scenario)
}
