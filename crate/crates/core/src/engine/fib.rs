use std::collections::BTreeMap;

use crate::name::{Name, NamePrefix, HC_LEN};

use super::FaceId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibEntry {
    pub prefix: NamePrefix,
    pub next_faces: Vec<FaceId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fib {
    entries: BTreeMap<NamePrefix, FibEntry>,
}

impl Fib {
    /// Installs or replaces the route for `prefix`. Empty face lists are ignored.
    pub fn insert(&mut self, prefix: NamePrefix, next_faces: Vec<FaceId>) {
        if next_faces.is_empty() {
            return;
        }
        self.entries
            .insert(prefix.clone(), FibEntry { prefix, next_faces });
    }

    pub fn remove(&mut self, prefix: &NamePrefix) -> Option<FibEntry> {
        self.entries.remove(prefix)
    }

    pub fn get(&self, prefix: &NamePrefix) -> Option<&FibEntry> {
        self.entries.get(prefix)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &FibEntry> {
        self.entries.values()
    }

    /// Entry with the most HC portions that prefixes `name`.
    pub fn longest_prefix_match(&self, name: &Name) -> Option<&FibEntry> {
        (1..=HC_LEN).rev().find_map(|k| {
            let p = name.hierarchical_prefix(k).expect("k in range");
            self.entries.get(&p)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{parse, parse_prefix};

    const UNDER_CPED: &str = "IoT://SBC:UET%20Taxila/CPED/Pakistan/Taxila/S1/Temp/C";

    #[test]
    fn longest_match_wins() {
        let mut fib = Fib::default();
        fib.insert(parse_prefix("IoT://SBC:UET%20Taxila").unwrap(), vec![1]);
        fib.insert(parse_prefix("IoT://SBC:UET%20Taxila/CPED").unwrap(), vec![2]);
        let name = parse(UNDER_CPED).unwrap();
        // brute force over every installed prefix
        let brute = fib
            .entries()
            .filter(|e| e.prefix.is_prefix_of(&name))
            .max_by_key(|e| e.prefix.len())
            .unwrap();
        let hit = fib.longest_prefix_match(&name).unwrap();
        assert_eq!(hit, brute);
        assert_eq!(hit.next_faces, vec![2]);
    }

    #[test]
    fn empty_and_mismatch() {
        let name = parse(UNDER_CPED).unwrap();
        assert!(Fib::default().longest_prefix_match(&name).is_none());

        let mut fib = Fib::default();
        fib.insert(parse_prefix("IoT://SBC:UET%20Taxila/CPED").unwrap(), vec![2]);
        let eed = parse("IoT://SBC:UET%20Taxila/EED/Pakistan/Taxila/S1/Temp/C").unwrap();
        assert!(fib.longest_prefix_match(&eed).is_none());
    }
}
