//! Per-node NDN forwarding: content store, PIT and FIB.
//!
//! A [`NodeState`] consumes one packet at a time and returns the list of
//! [`Effect`]s it produced. Moving packets between nodes is the caller's job
//! (see [`crate::sim`]).

mod cs;
mod fib;
mod packet;
mod pit;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::name::Name;

pub use cs::{ContentStore, ContentStoreEntry, InsertOutcome};
pub use fib::{Fib, FibEntry};
pub use packet::{ack_for, satisfies, DataPacket, InterestPacket};
pub use pit::{Pit, PitEntry};

pub type NodeId = u32;
pub type FaceId = u32;

/// Face 0 on every node is its local application.
pub const APP_FACE: FaceId = 0;

pub const DEFAULT_PIT_LIFETIME: u64 = 4000;
pub const DEFAULT_NONCE_WINDOW: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
    #[error("face {0} already exists")]
    DuplicateFace(FaceId),
    #[error("name carries no action task")]
    NotAnAction,
    #[error("invalid packet: {0}")]
    InvalidPacket(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Consumer,
    Router,
    Producer,
    Actuator,
    CampusServer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Peer {
    App,
    Node(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    pub face_id: FaceId,
    pub peer: Peer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    pub pit_lifetime: u64,
    pub nonce_window: u64,
    /// Forward on every listed face instead of the first live one.
    pub multipath: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            pit_lifetime: DEFAULT_PIT_LIFETIME,
            nonce_window: DEFAULT_NONCE_WINDOW,
            multipath: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DropReason {
    /// Joined an existing PIT entry.
    Aggregated,
    NoRoute,
    /// Nonce already seen inside the window.
    Loop,
}

impl DropReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DropReason::Aggregated => "aggregated",
            DropReason::NoRoute => "no-route",
            DropReason::Loop => "loop",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Effect {
    SendData {
        face: FaceId,
        data: DataPacket,
        /// PIT key (canonical Interest name) this Data answers.
        interest_key: String,
        from_cache: bool,
    },
    ForwardInterest {
        face: FaceId,
        interest: InterestPacket,
    },
    PitCreate {
        key: String,
    },
    PitAddFace {
        key: String,
        face: FaceId,
    },
    PitRemove {
        key: String,
    },
    PitExpire {
        key: String,
    },
    CacheInsert {
        name: String,
    },
    CacheEvict {
        name: String,
    },
    Drop {
        key: String,
        reason: DropReason,
    },
}

impl Effect {
    /// Effect column of a trace line, e.g. `SendData(2)` or `Drop(no-route)`.
    pub fn label(&self) -> String {
        match self {
            Effect::SendData { face, .. } => format!("SendData({face})"),
            Effect::ForwardInterest { face, .. } => format!("ForwardInterest({face})"),
            Effect::PitCreate { .. } => "PitCreate".into(),
            Effect::PitAddFace { face, .. } => format!("PitAddFace({face})"),
            Effect::PitRemove { .. } => "PitRemove".into(),
            Effect::PitExpire { .. } => "PitExpire".into(),
            Effect::CacheInsert { .. } => "CacheInsert".into(),
            Effect::CacheEvict { .. } => "CacheEvict".into(),
            Effect::Drop { reason, .. } => format!("Drop({})", reason.as_str()),
        }
    }

    /// Canonical name the effect concerns.
    pub fn subject(&self) -> String {
        match self {
            Effect::SendData { data, .. } => data.key(),
            Effect::ForwardInterest { interest, .. } => interest.key(),
            Effect::PitCreate { key }
            | Effect::PitAddFace { key, .. }
            | Effect::PitRemove { key }
            | Effect::PitExpire { key }
            | Effect::Drop { key, .. } => key.clone(),
            Effect::CacheInsert { name } | Effect::CacheEvict { name } => name.clone(),
        }
    }
}

/// One line of the effect trace.
#[derive(Debug, Clone, Copy)]
pub struct TraceLine<'a> {
    pub time: u64,
    pub node: NodeId,
    pub effect: &'a Effect,
}

impl fmt::Display for TraceLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.time,
            self.node,
            self.effect.label(),
            self.effect.subject()
        )
    }
}

/// One content router: faces, content store, PIT and FIB.
#[derive(Debug, Clone)]
pub struct NodeState {
    node_id: NodeId,
    role: Role,
    faces: BTreeMap<FaceId, Face>,
    cs: ContentStore,
    pit: Pit,
    fib: Fib,
    config: EngineConfig,
    nonces: HashMap<u64, u64>,
}

impl NodeState {
    /// A node with only its application face.
    pub fn new(node_id: NodeId, role: Role, cs_capacity: usize, config: EngineConfig) -> Self {
        let mut faces = BTreeMap::new();
        faces.insert(
            APP_FACE,
            Face {
                face_id: APP_FACE,
                peer: Peer::App,
            },
        );
        Self {
            node_id,
            role,
            faces,
            cs: ContentStore::new(cs_capacity),
            pit: Pit::default(),
            fib: Fib::default(),
            config,
            nonces: HashMap::new(),
        }
    }

    pub fn add_face(&mut self, face: Face) -> Result<(), EngineError> {
        if self.faces.contains_key(&face.face_id) {
            return Err(EngineError::DuplicateFace(face.face_id));
        }
        self.faces.insert(face.face_id, face);
        Ok(())
    }

    pub fn node_id(&self) -> NodeId {
        self.node_id
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.values()
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces.get(&id)
    }

    /// Face whose peer is `node`, if linked.
    pub fn face_toward(&self, node: NodeId) -> Option<FaceId> {
        self.faces
            .values()
            .find(|f| f.peer == Peer::Node(node))
            .map(|f| f.face_id)
    }

    pub fn cs(&self) -> &ContentStore {
        &self.cs
    }

    pub fn pit(&self) -> &Pit {
        &self.pit
    }

    pub fn fib(&self) -> &Fib {
        &self.fib
    }

    pub fn fib_mut(&mut self) -> &mut Fib {
        &mut self.fib
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn check_face(&self, face: FaceId) -> Result<(), EngineError> {
        if self.faces.contains_key(&face) {
            Ok(())
        } else {
            Err(EngineError::UnknownFace(face))
        }
    }

    fn expire(&mut self, now: u64, effects: &mut Vec<Effect>) {
        for key in self.pit.expire(now, self.config.pit_lifetime) {
            effects.push(Effect::PitExpire { key });
        }
        let window = self.config.nonce_window;
        self.nonces.retain(|_, seen| seen.saturating_add(window) > now);
    }

    /// Content store lookup; a hit bumps the entry's popularity.
    pub fn cs_lookup(&mut self, interest: &InterestPacket) -> Option<ContentStoreEntry> {
        self.cs.lookup(&interest.name)
    }

    pub fn fib_longest_prefix_match(&self, name: &Name) -> Option<&FibEntry> {
        self.fib.longest_prefix_match(name)
    }

    /// Interest pipeline: loop check, content store, PIT, FIB, in that order.
    ///
    /// Interests never go back out the face they arrived on, except the
    /// application face, which consumer and producer apps share.
    pub fn on_interest(
        &mut self,
        now: u64,
        interest: &InterestPacket,
        in_face: FaceId,
    ) -> Result<Vec<Effect>, EngineError> {
        self.check_face(in_face)?;
        let mut effects = Vec::new();
        self.expire(now, &mut effects);
        let key = interest.key();

        if self.nonces.contains_key(&interest.nonce) {
            effects.push(Effect::Drop {
                key,
                reason: DropReason::Loop,
            });
            return Ok(effects);
        }
        self.nonces.insert(interest.nonce, now);

        if let Some(hit) = self.cs_lookup(interest) {
            let mut data = hit.data;
            data.hop_count = 0;
            effects.push(Effect::SendData {
                face: in_face,
                data,
                interest_key: key,
                from_cache: true,
            });
            return Ok(effects);
        }

        if self.pit.add_face(&key, in_face) {
            effects.push(Effect::PitAddFace {
                key: key.clone(),
                face: in_face,
            });
            effects.push(Effect::Drop {
                key,
                reason: DropReason::Aggregated,
            });
            return Ok(effects);
        }

        let out_faces: Vec<FaceId> = match self.fib.longest_prefix_match(&interest.name) {
            Some(entry) => {
                let live = entry
                    .next_faces
                    .iter()
                    .copied()
                    .filter(|f| (*f != in_face || *f == APP_FACE) && self.faces.contains_key(f));
                if self.config.multipath {
                    live.collect()
                } else {
                    live.take(1).collect()
                }
            }
            None => Vec::new(),
        };
        if out_faces.is_empty() {
            effects.push(Effect::Drop {
                key,
                reason: DropReason::NoRoute,
            });
            return Ok(effects);
        }
        self.pit
            .create(key.clone(), interest.name.clone(), in_face, now);
        effects.push(Effect::PitCreate { key });
        for face in out_faces {
            effects.push(Effect::ForwardInterest {
                face,
                interest: interest.clone(),
            });
        }
        Ok(effects)
    }

    /// Data pipeline: cache (unless it is an action acknowledgement), then
    /// deliver to every face of every PIT entry it satisfies.
    pub fn on_data(
        &mut self,
        now: u64,
        data: &DataPacket,
        in_face: FaceId,
    ) -> Result<Vec<Effect>, EngineError> {
        self.check_face(in_face)?;
        let mut effects = Vec::new();
        self.expire(now, &mut effects);

        if data.is_cacheable() {
            let name = data.key();
            match self.cs.insert(data.clone(), now) {
                InsertOutcome::Inserted { evicted } => {
                    if let Some(old) = evicted {
                        effects.push(Effect::CacheEvict { name: old });
                    }
                    effects.push(Effect::CacheInsert { name });
                }
                InsertOutcome::Refreshed => effects.push(Effect::CacheInsert { name }),
                InsertOutcome::Disabled => {}
            }
        }

        for entry in self.pit.take_matching(data) {
            for &face in entry
                .faces
                .iter()
                .filter(|f| **f != in_face || **f == APP_FACE)
            {
                effects.push(Effect::SendData {
                    face,
                    data: data.clone(),
                    interest_key: entry.name_key.clone(),
                    from_cache: false,
                });
            }
            effects.push(Effect::PitRemove {
                key: entry.name_key,
            });
        }
        Ok(effects)
    }

    /// Wraps an action-task name into an Interest for push-style delivery.
    pub fn issue_action(&self, name: Name, nonce: u64) -> Result<InterestPacket, EngineError> {
        match name.task() {
            Some(t) if t.is_push() => InterestPacket::new(name, nonce),
            _ => Err(EngineError::NotAnAction),
        }
    }
}
