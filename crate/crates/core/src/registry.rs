//! Application categories addressed by the `IoT://<CODE>` root prefix.
//!
//! The shipped table lives in `data/registry.tsv`. Only `SBC` (smart
//! buildings / campus) has an externally meaningful code; the remaining codes
//! are deployment-local configuration.

use std::fmt;

use thiserror::Error;

const DEFAULT_TABLE: &str = include_str!("../data/registry.tsv");

/// Longest code accepted in a root prefix.
pub const MAX_CODE_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown application code {0:?}")]
    UnknownCode(String),
    #[error("application code {0:?} is already registered")]
    DuplicateCode(String),
    #[error("invalid application code {0:?}: expected 1-{MAX_CODE_LEN} uppercase ASCII letters")]
    InvalidCode(String),
    #[error("category {0:?} has an empty title")]
    EmptyTitle(String),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// Returns true when `code` can appear after `IoT://`.
pub fn is_valid_code(code: &str) -> bool {
    (1..=MAX_CODE_LEN).contains(&code.len()) && code.bytes().all(|b| b.is_ascii_uppercase())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppCategory {
    code: String,
    title: String,
    description: String,
}

impl AppCategory {
    pub fn new(
        code: impl Into<String>,
        title: impl Into<String>,
        description: impl Into<String>,
    ) -> Result<Self, RegistryError> {
        let code = code.into();
        if !is_valid_code(&code) {
            return Err(RegistryError::InvalidCode(code));
        }
        let title = title.into();
        if title.trim().is_empty() {
            return Err(RegistryError::EmptyTitle(code));
        }
        Ok(Self {
            code,
            title,
            description: description.into(),
        })
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Display for AppCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.code, self.title, self.description)
    }
}

/// Ordered, code-unique collection of categories.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    entries: Vec<AppCategory>,
}

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The fourteen categories shipped with the crate.
    pub fn default_registry() -> Self {
        Self::from_tsv(DEFAULT_TABLE).expect("shipped registry table is valid")
    }

    /// Parses `CODE<TAB>Title<TAB>Description` lines. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_tsv(text: &str) -> Result<Self, RegistryError> {
        let mut registry = Self::empty();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() != 3 {
                return Err(RegistryError::Malformed {
                    line,
                    reason: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            }
            let category = AppCategory::new(fields[0], fields[1], fields[2])?;
            registry.register(category)?;
        }
        Ok(registry)
    }

    /// Renders the registry in the same line format `from_tsv` reads.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&entry.to_string());
            out.push('\n');
        }
        out
    }

    pub fn lookup(&self, code: &str) -> Result<&AppCategory, RegistryError> {
        self.entries
            .iter()
            .find(|c| c.code == code)
            .ok_or_else(|| RegistryError::UnknownCode(code.to_owned()))
    }

    /// Appends `category`. On error the registry is left untouched.
    pub fn register(&mut self, category: AppCategory) -> Result<(), RegistryError> {
        if self.entries.iter().any(|c| c.code == category.code) {
            return Err(RegistryError::DuplicateCode(category.code));
        }
        self.entries.push(category);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &AppCategory> {
        self.entries.iter()
    }
}
