use crate::codec::serialize;
use crate::name::{AttributesComponent, Freshness, Name, TaskType};

use super::EngineError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterestPacket {
    pub name: Name,
    pub nonce: u64,
    pub hop_count: u32,
}

impl InterestPacket {
    pub fn new(name: Name, nonce: u64) -> Result<Self, EngineError> {
        if nonce == 0 {
            return Err(EngineError::InvalidPacket("interest nonce must be nonzero".into()));
        }
        Ok(Self {
            name,
            nonce,
            hop_count: 0,
        })
    }

    /// PIT key: the canonical name text. The nonce is not part of the name.
    pub fn key(&self) -> String {
        serialize(&self.name)
    }

    pub fn is_action(&self) -> bool {
        self.name.task().is_some_and(|t| t.task_type == TaskType::Action)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataPacket {
    pub name: Name,
    pub payload: Vec<u8>,
    pub generated_at: u64,
    /// Links traversed since the Data left a producer or a content store.
    pub hop_count: u32,
}

impl DataPacket {
    /// `name`'s freshness, if any, must be `GeneratedAt(generated_at)`.
    pub fn new(name: Name, payload: Vec<u8>, generated_at: u64) -> Result<Self, EngineError> {
        match name.freshness() {
            None => {}
            Some(Freshness::GeneratedAt(ts)) if ts == generated_at => {}
            Some(other) => {
                return Err(EngineError::InvalidPacket(format!(
                    "data freshness {other:?} does not match generation time {generated_at}"
                )))
            }
        }
        Ok(Self {
            name,
            payload,
            generated_at,
            hop_count: 0,
        })
    }

    /// Builds Data whose AC carries a `GeneratedAt(generated_at)` stamp,
    /// replacing any selector present on `name`.
    pub fn stamped(name: &Name, payload: Vec<u8>, generated_at: u64) -> Result<Self, EngineError> {
        let mut ac = name.ac().cloned().unwrap_or_default();
        ac.freshness = Some(Freshness::GeneratedAt(generated_at));
        let name = name
            .with_ac(Some(ac))
            .map_err(|e| EngineError::InvalidPacket(e.to_string()))?;
        Self::new(name, payload, generated_at)
    }

    /// Acknowledgements of action commands are never cached.
    pub fn is_cacheable(&self) -> bool {
        !self.name.task().is_some_and(|t| t.task_type == TaskType::Action)
    }

    pub fn key(&self) -> String {
        serialize(&self.name)
    }
}

/// Data name for an actuator's reply to `command`: same name with the
/// selector replaced by a generation stamp and the popularity hint dropped.
pub fn ack_for(command: &Name, ok: bool, now: u64) -> Result<DataPacket, EngineError> {
    let ac = command.ac().cloned().map(|ac| AttributesComponent {
        popularity: None,
        ..ac
    });
    let name = command
        .with_ac(ac)
        .map_err(|e| EngineError::InvalidPacket(e.to_string()))?;
    let payload = if ok { b"ACK".to_vec() } else { b"NACK".to_vec() };
    DataPacket::stamped(&name, payload, now)
}

/// True when `data` answers an Interest named `interest`, ignoring the
/// Latest/Oldest selector (that one chooses among candidates, it does not filter).
///
/// Rules: same root and HC; every Interest attribute pair present in the
/// Data; equal task when the Interest names one; byte-equal FC digests when
/// the Interest carries an FC; equal generation time when the Interest asks
/// for an exact `GeneratedAt` stamp.
pub fn satisfies(interest: &Name, data: &DataPacket) -> bool {
    let dn = &data.name;
    if interest.root() != dn.root() || interest.hc() != dn.hc() {
        return false;
    }
    let attrs_ok = interest
        .attributes()
        .iter()
        .all(|want| dn.attributes().contains(want));
    if !attrs_ok {
        return false;
    }
    if let Some(task) = interest.task() {
        if dn.task() != Some(task) {
            return false;
        }
    }
    if let Some(fc) = interest.fc() {
        match dn.fc() {
            Some(dfc) if dfc.same_digests(fc) => {}
            _ => return false,
        }
    }
    if let Some(Freshness::GeneratedAt(ts)) = interest.freshness() {
        if data.generated_at != ts {
            return false;
        }
    }
    true
}
