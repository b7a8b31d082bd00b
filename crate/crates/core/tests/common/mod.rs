//! Shared generators for integration tests.
#![allow(dead_code)]

use hns_core::engine::{EngineConfig, Role};
use hns_core::sim::config::{
    ConsumerSpec, GeneratorSpec, LinkSpec, NodeSpec, ProducerSpec, PushSpec, TimedInterest,
    Topology,
};
use hns_core::sim::ScenarioConfig;
use hns_core::{
    compute_fc, AttributePair, AttributesComponent, DigestEncoding, Freshness,
    HierarchicalComponent, Name, RootPrefix, TaskSpec, TaskType,
};
use rand::{Rng, RngExt};

pub const CODES: [&str; 5] = ["SBC", "EDU", "CTY", "HOM", "AFM"];

/// Characters that stress the escaping rules, plus some multibyte ones.
const ALPHABET: &[char] = &[
    'a', 'Z', '0', '9', '-', '.', '_', '/', ':', '%', ' ', 'é', 'ß', '漢', 'Ω', '🙂', '~', '2', 'F',
];

pub fn portion_text(rng: &mut impl Rng) -> String {
    let len = rng.random_range(1..=8);
    (0..len)
        .map(|_| ALPHABET[rng.random_range(0..ALPHABET.len())])
        .collect()
}

fn attribute_key(rng: &mut impl Rng) -> String {
    loop {
        let k = portion_text(rng);
        if !["ts", "sense", "action"].contains(&k.as_str()) {
            return k;
        }
    }
}

pub fn random_name(rng: &mut impl Rng) -> Name {
    let root = RootPrefix::new(CODES[rng.random_range(0..CODES.len())]).unwrap();
    let hc: Vec<String> = (0..7).map(|_| portion_text(rng)).collect();
    let hc = HierarchicalComponent::from_strs(std::array::from_fn(|i| hc[i].as_str())).unwrap();

    let mut ac = AttributesComponent::default();
    let mut keys = Vec::new();
    for _ in 0..rng.random_range(0..4) {
        let k = attribute_key(rng);
        if !keys.contains(&k) {
            ac.attributes.push(AttributePair::new(&k, &portion_text(rng)).unwrap());
            keys.push(k);
        }
    }
    ac.freshness = match rng.random_range(0..4) {
        0 => None,
        1 => Some(Freshness::Latest),
        2 => Some(Freshness::Oldest),
        _ => Some(Freshness::GeneratedAt(rng.random_range(0..1_000_000))),
    };
    if ac.freshness.is_some() && rng.random_bool(0.4) {
        ac.popularity = Some(rng.random_range(0..1000));
    }
    ac.task = match rng.random_range(0..3) {
        0 => None,
        1 => Some(TaskSpec::new(TaskType::Sense, &portion_text(rng)).unwrap()),
        _ => Some(TaskSpec::new(TaskType::Action, &portion_text(rng)).unwrap()),
    };
    let ac = (!ac.is_empty()).then_some(ac);
    let fc = match rng.random_range(0..3) {
        0 => None,
        1 => Some(compute_fc(&hc, DigestEncoding::Hex)),
        _ => Some(compute_fc(&hc, DigestEncoding::Base64)),
    };
    Name::new(root, hc, ac, fc).unwrap()
}

const BASE: &str = "IoT://SBC:UET%20Taxila/CPED";
const ROOMS: [&str; 3] = ["RoomA", "RoomB", "RoomC"];

fn hc_text(rng: &mut impl Rng) -> String {
    let room = ROOMS[rng.random_range(0..ROOMS.len())];
    let sensor = ["S1", "S2"][rng.random_range(0..2)];
    format!("{BASE}/{room}/Taxila/{sensor}/Temp/C")
}

fn interest_text(rng: &mut impl Rng) -> String {
    let mut t = hc_text(rng);
    match rng.random_range(0..6) {
        0 => t.push_str(":1"),
        1 => t.push_str(":0:/3"),
        2 => t.push_str(&format!(":ts/{}", rng.random_range(0..4) * 10)),
        3 => t.push_str(":action/Light%3AON"),
        4 => t.push_str(":floor/2"),
        _ => {}
    }
    t
}

/// A connected topology of at most six nodes with at most fifty injected
/// packets (Interests plus pushed Data).
pub fn random_scenario(rng: &mut impl Rng) -> ScenarioConfig {
    let n = rng.random_range(1..=6u32);
    let roles = [Role::Consumer, Role::Router, Role::Producer, Role::Actuator];
    let mut nodes: Vec<NodeSpec> = (1..=n)
        .map(|id| NodeSpec {
            node_id: id,
            role: roles[rng.random_range(0..roles.len())],
            cs_capacity: rng.random_range(0..=3),
        })
        .collect();
    if n >= 2 && rng.random_bool(0.5) {
        nodes[rng.random_range(0..n as usize)].role = Role::CampusServer;
    }
    let mut links = Vec::new();
    let mut pairs = std::collections::BTreeSet::new();
    for id in 2..=n {
        let parent = rng.random_range(1..id);
        pairs.insert((parent, id));
        links.push(LinkSpec { node_a: parent, node_b: id, latency: rng.random_range(1..=5) });
    }
    for _ in 0..rng.random_range(0..3) {
        if n < 3 {
            break;
        }
        let a = rng.random_range(1..=n);
        let b = rng.random_range(1..=n);
        if a != b && pairs.insert((a.min(b), a.max(b))) {
            links.push(LinkSpec { node_a: a, node_b: b, latency: rng.random_range(1..=5) });
        }
    }

    let duration = 200;
    let mut producers = Vec::new();
    for room in ROOMS {
        if rng.random_bool(0.6) {
            producers.push(ProducerSpec {
                node_id: rng.random_range(1..=n),
                served_prefix: format!("{BASE}/{room}"),
                content_generator: GeneratorSpec {
                    period: rng.random_range(1..=20),
                    payload_size: rng.random_range(0..=8),
                },
            });
        }
    }
    let budget = rng.random_range(0..=50usize);
    let pushes_n = rng.random_range(0..=budget.min(5));
    let mut consumers: Vec<ConsumerSpec> = Vec::new();
    for _ in 0..(budget - pushes_n) {
        let node_id = rng.random_range(1..=n);
        let item = TimedInterest { time: rng.random_range(0..150), name: interest_text(rng) };
        match consumers.iter_mut().find(|c| c.node_id == node_id) {
            Some(c) => c.workload.push(item),
            None => consumers.push(ConsumerSpec { node_id, workload: vec![item], random_workload: None }),
        }
    }
    let pushes = (0..pushes_n)
        .map(|_| PushSpec {
            time: rng.random_range(0..150),
            node_id: rng.random_range(1..=n),
            name: hc_text(rng),
            payload_size: 1,
        })
        .collect();
    ScenarioConfig {
        topology: Topology { nodes, links },
        producers,
        consumers,
        seed: rng.random(),
        duration,
        engine: EngineConfig {
            pit_lifetime: [15, 40, 4000][rng.random_range(0..3)],
            nonce_window: 1000,
            multipath: rng.random_bool(0.25),
        },
        interest_timeout: None,
        aggregate_routes: rng.random_bool(0.8),
        pushes,
    }
}
