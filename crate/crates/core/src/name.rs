//! In-memory form of a hybrid name: root prefix, hierarchical component (HC),
//! optional attributes component (AC) and optional flat component (FC).
//!
//! Values here are always decoded text. Escaping belongs to [`crate::codec`].

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::registry::is_valid_code;

/// Number of portions in every hierarchical component.
pub const HC_LEN: usize = 7;

/// Scheme of every root prefix.
pub const SCHEME: &str = "IoT";

/// Attribute keys that would collide with freshness and task sub-parts.
pub const RESERVED_ATTRIBUTE_KEYS: [&str; 3] = ["ts", "sense", "action"];

/// Names of the HC portions, in order.
pub const HC_FIELDS: [&str; HC_LEN] = [
    "campus_name",
    "campus_sub_name",
    "campus_location",
    "campus_sub_location",
    "originator_id",
    "content_super_type",
    "content_sub_type",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("invalid {field}: {reason}")]
    InvalidComponent { field: String, reason: String },
    #[error("prefix length {0} outside 1..={HC_LEN}")]
    OutOfRange(usize),
}

impl NameError {
    fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        NameError::InvalidComponent {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

/// A non-empty decoded name portion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Portion(String);

impl Portion {
    pub fn new(value: impl Into<String>) -> Result<Self, NameError> {
        let value = value.into();
        if value.is_empty() {
            return Err(NameError::invalid("portion", "must not be empty"));
        }
        Ok(Portion(value))
    }

    fn named(field: &str, value: impl Into<String>) -> Result<Self, NameError> {
        Portion::new(value).map_err(|_| NameError::invalid(field, "must not be empty"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Portion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Portion {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootPrefix {
    app_code: String,
}

impl RootPrefix {
    pub fn new(app_code: impl Into<String>) -> Result<Self, NameError> {
        let app_code = app_code.into();
        if !is_valid_code(&app_code) {
            return Err(NameError::invalid(
                "app_code",
                format!("{app_code:?} is not 1-8 uppercase ASCII letters"),
            ));
        }
        Ok(Self { app_code })
    }

    pub fn scheme(&self) -> &'static str {
        SCHEME
    }

    pub fn app_code(&self) -> &str {
        &self.app_code
    }
}

/// Campus, originator and content-type portions, always seven of them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HierarchicalComponent {
    portions: [Portion; HC_LEN],
}

impl HierarchicalComponent {
    /// Builds an HC from its seven fields in canonical order.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        campus_name: &str,
        campus_sub_name: &str,
        campus_location: &str,
        campus_sub_location: &str,
        originator_id: &str,
        content_super_type: &str,
        content_sub_type: &str,
    ) -> Result<Self, NameError> {
        Self::from_strs([
            campus_name,
            campus_sub_name,
            campus_location,
            campus_sub_location,
            originator_id,
            content_super_type,
            content_sub_type,
        ])
    }

    pub fn from_strs(values: [&str; HC_LEN]) -> Result<Self, NameError> {
        let mut portions = Vec::with_capacity(HC_LEN);
        for (field, value) in HC_FIELDS.iter().zip(values) {
            portions.push(Portion::named(field, value)?);
        }
        Ok(Self {
            portions: portions.try_into().expect("seven portions"),
        })
    }

    pub fn from_portions(portions: [Portion; HC_LEN]) -> Self {
        Self { portions }
    }

    pub fn portions(&self) -> &[Portion; HC_LEN] {
        &self.portions
    }

    pub fn campus_name(&self) -> &Portion {
        &self.portions[0]
    }

    pub fn campus_sub_name(&self) -> &Portion {
        &self.portions[1]
    }

    pub fn campus_location(&self) -> &Portion {
        &self.portions[2]
    }

    pub fn campus_sub_location(&self) -> &Portion {
        &self.portions[3]
    }

    pub fn originator_id(&self) -> &Portion {
        &self.portions[4]
    }

    pub fn content_super_type(&self) -> &Portion {
        &self.portions[5]
    }

    pub fn content_sub_type(&self) -> &Portion {
        &self.portions[6]
    }

    /// True when the sub-type names a file format such as `.xls`.
    pub fn is_file_format(&self) -> bool {
        self.content_sub_type().as_str().starts_with('.')
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttributePair {
    pub key: Portion,
    pub value: Portion,
}

impl AttributePair {
    pub fn new(key: &str, value: &str) -> Result<Self, NameError> {
        Ok(Self {
            key: Portion::named("attribute key", key)?,
            value: Portion::named("attribute value", value)?,
        })
    }
}

/// Freshness selector (Interest side) or generation stamp (Data side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Freshness {
    /// Serialized as `0`.
    Latest,
    /// Serialized as `1`.
    Oldest,
    /// Seconds (sim ticks inside the simulator) at generation time.
    GeneratedAt(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TaskType {
    Sense,
    Action,
}

impl TaskType {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskType::Sense => "sense",
            TaskType::Action => "action",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "sense" => Some(TaskType::Sense),
            "action" => Some(TaskType::Action),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaskSpec {
    pub task_type: TaskType,
    pub task_sub_type: Portion,
}

impl TaskSpec {
    pub fn new(task_type: TaskType, task_sub_type: &str) -> Result<Self, NameError> {
        Ok(Self {
            task_type,
            task_sub_type: Portion::named("task_sub_type", task_sub_type)?,
        })
    }

    /// Action tasks drive push-style delivery toward an actuator.
    pub fn is_push(&self) -> bool {
        self.task_type == TaskType::Action
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttributesComponent {
    pub attributes: Vec<AttributePair>,
    pub freshness: Option<Freshness>,
    /// Advisory counter; authoritative counts live in the content store.
    pub popularity: Option<u64>,
    pub task: Option<TaskSpec>,
}

impl AttributesComponent {
    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
            && self.freshness.is_none()
            && self.popularity.is_none()
            && self.task.is_none()
    }

    pub fn attribute(&self, key: &str) -> Option<&Portion> {
        self.attributes
            .iter()
            .find(|a| a.key.as_str() == key)
            .map(|a| &a.value)
    }

    pub fn validate(&self) -> Result<(), NameError> {
        if self.is_empty() {
            return Err(NameError::invalid(
                "attributes",
                "component has no sub-parts; omit it instead",
            ));
        }
        let mut seen = HashSet::new();
        for pair in &self.attributes {
            let key = pair.key.as_str();
            if RESERVED_ATTRIBUTE_KEYS.contains(&key) {
                return Err(NameError::invalid(
                    "attribute key",
                    format!("{key:?} is reserved"),
                ));
            }
            if !seen.insert(key) {
                return Err(NameError::invalid(
                    "attribute key",
                    format!("{key:?} appears more than once"),
                ));
            }
        }
        // A bare popularity sub-part is only unambiguous after a freshness one.
        if self.popularity.is_some() && self.freshness.is_none() {
            return Err(NameError::invalid(
                "popularity",
                "requires a freshness sub-part before it",
            ));
        }
        Ok(())
    }
}

pub const DIGEST_LEN: usize = 32;

/// A SHA-256 digest, or a hex prefix of one kept for display.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Digest {
    Full([u8; DIGEST_LEN]),
    /// Lowercase hex nibbles, fewer than 64.
    Truncated(String),
}

impl Digest {
    pub fn is_full(&self) -> bool {
        matches!(self, Digest::Full(_))
    }

    pub fn bytes(&self) -> Option<&[u8; DIGEST_LEN]> {
        match self {
            Digest::Full(b) => Some(b),
            Digest::Truncated(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DigestEncoding {
    #[default]
    Hex,
    Base64,
}

impl DigestEncoding {
    pub fn as_str(self) -> &'static str {
        match self {
            DigestEncoding::Hex => "hex",
            DigestEncoding::Base64 => "base64",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatComponent {
    pub originator_digest: Digest,
    pub super_type_digest: Digest,
    pub sub_type_digest: Digest,
    pub encoding: DigestEncoding,
}

impl FlatComponent {
    pub fn digests(&self) -> [&Digest; 3] {
        [
            &self.originator_digest,
            &self.super_type_digest,
            &self.sub_type_digest,
        ]
    }

    pub fn is_full(&self) -> bool {
        self.digests().iter().all(|d| d.is_full())
    }

    /// Byte equality of the three digests; encoding is ignored.
    pub fn same_digests(&self, other: &FlatComponent) -> bool {
        self.digests() == other.digests()
    }

    pub(crate) fn validate(&self) -> Result<(), NameError> {
        if self.encoding == DigestEncoding::Base64 && !self.is_full() {
            return Err(NameError::invalid(
                "flat component",
                "truncated digests are only rendered in hex",
            ));
        }
        for d in self.digests() {
            if let Digest::Truncated(h) = d {
                let ok = !h.is_empty()
                    && h.len() < 2 * DIGEST_LEN
                    && h.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'));
                if !ok {
                    return Err(NameError::invalid(
                        "flat component",
                        format!("{h:?} is not a lowercase hex digest prefix"),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name {
    root: RootPrefix,
    hc: HierarchicalComponent,
    ac: Option<AttributesComponent>,
    fc: Option<FlatComponent>,
}

impl Name {
    pub fn new(
        root: RootPrefix,
        hc: HierarchicalComponent,
        ac: Option<AttributesComponent>,
        fc: Option<FlatComponent>,
    ) -> Result<Self, NameError> {
        if let Some(ac) = &ac {
            ac.validate()?;
        }
        if let Some(fc) = &fc {
            fc.validate()?;
        }
        Ok(Self { root, hc, ac, fc })
    }

    pub fn root(&self) -> &RootPrefix {
        &self.root
    }

    pub fn hc(&self) -> &HierarchicalComponent {
        &self.hc
    }

    pub fn ac(&self) -> Option<&AttributesComponent> {
        self.ac.as_ref()
    }

    pub fn fc(&self) -> Option<&FlatComponent> {
        self.fc.as_ref()
    }

    pub fn freshness(&self) -> Option<Freshness> {
        self.ac.as_ref().and_then(|ac| ac.freshness)
    }

    pub fn task(&self) -> Option<&TaskSpec> {
        self.ac.as_ref().and_then(|ac| ac.task.as_ref())
    }

    pub fn attributes(&self) -> &[AttributePair] {
        self.ac.as_ref().map_or(&[], |ac| ac.attributes.as_slice())
    }

    /// Same name with the AC replaced.
    pub fn with_ac(&self, ac: Option<AttributesComponent>) -> Result<Self, NameError> {
        Name::new(self.root.clone(), self.hc.clone(), ac, self.fc.clone())
    }

    /// Same name with the FC replaced.
    pub fn with_fc(&self, fc: Option<FlatComponent>) -> Result<Self, NameError> {
        Name::new(self.root.clone(), self.hc.clone(), self.ac.clone(), fc)
    }

    /// Root and HC only.
    pub fn stripped(&self) -> Name {
        Name {
            root: self.root.clone(),
            hc: self.hc.clone(),
            ac: None,
            fc: None,
        }
    }

    /// Root plus the first `k` HC portions.
    pub fn hierarchical_prefix(&self, k: usize) -> Result<NamePrefix, NameError> {
        if !(1..=HC_LEN).contains(&k) {
            return Err(NameError::OutOfRange(k));
        }
        Ok(NamePrefix {
            root: self.root.clone(),
            portions: self.hc.portions[..k].to_vec(),
        })
    }
}

/// Root prefix plus 1..=7 leading HC portions. FIB entries are keyed by these.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NamePrefix {
    root: RootPrefix,
    portions: Vec<Portion>,
}

impl NamePrefix {
    pub fn new(root: RootPrefix, portions: Vec<Portion>) -> Result<Self, NameError> {
        if !(1..=HC_LEN).contains(&portions.len()) {
            return Err(NameError::OutOfRange(portions.len()));
        }
        Ok(Self { root, portions })
    }

    pub fn root(&self) -> &RootPrefix {
        &self.root
    }

    pub fn portions(&self) -> &[Portion] {
        &self.portions
    }

    pub fn len(&self) -> usize {
        self.portions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.portions.is_empty()
    }

    /// One portion shorter, or `None` at length 1.
    pub fn parent(&self) -> Option<NamePrefix> {
        (self.portions.len() > 1).then(|| NamePrefix {
            root: self.root.clone(),
            portions: self.portions[..self.portions.len() - 1].to_vec(),
        })
    }

    /// Exact, case-sensitive portion comparison against the leading HC portions.
    pub fn is_prefix_of(&self, name: &Name) -> bool {
        self.root == name.root
            && self
                .portions
                .iter()
                .zip(name.hc.portions.iter())
                .all(|(a, b)| a == b)
    }

    pub fn is_prefix_of_prefix(&self, other: &NamePrefix) -> bool {
        self.root == other.root
            && self.len() <= other.len()
            && self.portions.iter().zip(&other.portions).all(|(a, b)| a == b)
    }
}
