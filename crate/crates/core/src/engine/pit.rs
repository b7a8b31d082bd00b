use std::collections::{BTreeMap, BTreeSet};

use crate::name::Name;

use super::packet::{satisfies, DataPacket};
use super::FaceId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PitEntry {
    pub name_key: String,
    pub interest_name: Name,
    pub faces: BTreeSet<FaceId>,
    pub created_at: u64,
}

/// Pending Interest Table keyed by canonical Interest name.
#[derive(Debug, Clone, Default)]
pub struct Pit {
    entries: BTreeMap<String, PitEntry>,
}

impl Pit {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&PitEntry> {
        self.entries.get(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = &PitEntry> {
        self.entries.values()
    }

    pub(crate) fn add_face(&mut self, key: &str, face: FaceId) -> bool {
        match self.entries.get_mut(key) {
            Some(e) => {
                e.faces.insert(face);
                true
            }
            None => false,
        }
    }

    pub(crate) fn create(&mut self, key: String, name: Name, face: FaceId, now: u64) {
        self.entries.insert(
            key.clone(),
            PitEntry {
                name_key: key,
                interest_name: name,
                faces: BTreeSet::from([face]),
                created_at: now,
            },
        );
    }

    /// Removes and returns entries created at or before `now - lifetime`.
    pub(crate) fn expire(&mut self, now: u64, lifetime: u64) -> Vec<String> {
        let dead: Vec<String> = self
            .entries
            .values()
            .filter(|e| e.created_at.saturating_add(lifetime) <= now)
            .map(|e| e.name_key.clone())
            .collect();
        for k in &dead {
            self.entries.remove(k);
        }
        dead
    }

    /// Removes and returns every entry the Data satisfies, in key order.
    pub(crate) fn take_matching(&mut self, data: &DataPacket) -> Vec<PitEntry> {
        let keys: Vec<String> = self
            .entries
            .values()
            .filter(|e| satisfies(&e.interest_name, data))
            .map(|e| e.name_key.clone())
            .collect();
        keys.iter()
            .filter_map(|k| self.entries.remove(k))
            .collect()
    }
}
