//! Hybrid naming for NDN-based IoT campus networks.
//!
//! Names carry a root application prefix (`IoT://SBC`), a seven-portion
//! hierarchical component, an optional attributes component and an optional
//! self-certifying flat component. The crate provides the name model and its
//! canonical text codec, SHA-256 flat-component hashing, a per-node NDN
//! forwarding engine (content store, PIT, FIB) and a deterministic
//! discrete-event campus simulator.

pub mod codec;
pub mod engine;
pub mod flat;
pub mod name;
pub mod registry;
pub mod sim;

pub use codec::{parse, parse_prefix, parse_with, serialize, serialize_prefix, CodecError, ParseOptions};
pub use flat::{compute_fc, verify_fc, FlatError, VerifyReport};
pub use name::{
    AttributePair, AttributesComponent, Digest, DigestEncoding, FlatComponent, Freshness,
    HierarchicalComponent, Name, NameError, NamePrefix, Portion, RootPrefix, TaskSpec, TaskType,
};
pub use registry::{AppCategory, Registry, RegistryError};
