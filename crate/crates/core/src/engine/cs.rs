//! Content store with cache-everything insertion and LRU eviction.

use std::collections::BTreeMap;

use crate::name::{Freshness, Name};

use super::packet::{satisfies, DataPacket};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentStoreEntry {
    pub data: DataPacket,
    pub inserted_at: u64,
    /// Number of hits served from this entry.
    pub popularity: u64,
}

#[derive(Debug, Clone)]
struct Slot {
    entry: ContentStoreEntry,
    last_used: u64,
    seq: u64,
}

/// What happened on an insert.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InsertOutcome {
    Inserted { evicted: Option<String> },
    Refreshed,
    Disabled,
}

#[derive(Debug, Clone)]
pub struct ContentStore {
    capacity: usize,
    slots: BTreeMap<String, Slot>,
    clock: u64,
}

impl ContentStore {
    pub fn new(capacity: usize) -> Self {
        Self {
            capacity,
            slots: BTreeMap::new(),
            clock: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    fn tick(&mut self) -> u64 {
        self.clock += 1;
        self.clock
    }

    /// Entries keyed by canonical Data name, in key order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &ContentStoreEntry)> {
        self.slots.iter().map(|(k, s)| (k.as_str(), &s.entry))
    }

    pub fn get(&self, key: &str) -> Option<&ContentStoreEntry> {
        self.slots.get(key).map(|s| &s.entry)
    }

    /// Inserts `data`. A Data with an already-cached name replaces the stored
    /// copy and keeps its popularity. At capacity the least recently used
    /// entry is evicted first.
    pub fn insert(&mut self, data: DataPacket, now: u64) -> InsertOutcome {
        if self.capacity == 0 {
            return InsertOutcome::Disabled;
        }
        let key = data.key();
        let t = self.tick();
        if let Some(slot) = self.slots.get_mut(&key) {
            slot.entry.data = data;
            slot.entry.inserted_at = now;
            slot.last_used = t;
            return InsertOutcome::Refreshed;
        }
        let mut evicted = None;
        if self.slots.len() >= self.capacity {
            let victim = self
                .slots
                .iter()
                .min_by_key(|(_, s)| s.last_used)
                .map(|(k, _)| k.clone())
                .expect("non-empty at capacity");
            self.slots.remove(&victim);
            evicted = Some(victim);
        }
        self.slots.insert(
            key,
            Slot {
                entry: ContentStoreEntry {
                    data,
                    inserted_at: now,
                    popularity: 0,
                },
                last_used: t,
                seq: t,
            },
        );
        InsertOutcome::Inserted { evicted }
    }

    /// Finds the best entry for an Interest and records the hit.
    ///
    /// Candidates are entries that [`satisfies`] accepts. `Oldest` picks the
    /// minimal generation time, anything else the maximal one; ties go to the
    /// later insertion for Latest and the earlier one for Oldest.
    pub fn lookup(&mut self, interest: &Name) -> Option<ContentStoreEntry> {
        let oldest = interest.freshness() == Some(Freshness::Oldest);
        let candidates = self
            .slots
            .iter()
            .filter(|(_, s)| satisfies(interest, &s.entry.data));
        let best = if oldest {
            candidates
                .min_by_key(|(_, s)| (s.entry.data.generated_at, s.seq))
                .map(|(k, _)| k.clone())
        } else {
            candidates
                .max_by_key(|(_, s)| (s.entry.data.generated_at, s.seq))
                .map(|(k, _)| k.clone())
        }?;
        let t = self.tick();
        let slot = self.slots.get_mut(&best).expect("key just found");
        slot.entry.popularity += 1;
        slot.last_used = t;
        Some(slot.entry.clone())
    }
}
