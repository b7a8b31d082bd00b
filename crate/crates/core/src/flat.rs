//! Self-certifying flat component: SHA-256 over the originator, super-type and
//! sub-type portions of the HC, rendered as hex (canonical) or Base64.

use base64::engine::general_purpose::STANDARD;
use base64::Engine as _;
use sha2::{Digest as _, Sha256};
use thiserror::Error;

use crate::name::{
    Digest, DigestEncoding, FlatComponent, HierarchicalComponent, Name, DIGEST_LEN,
};

pub const HEX_LEN: usize = 2 * DIGEST_LEN;
pub const BASE64_LEN: usize = 44;

/// Marker the display form appends to a truncated digest.
pub const TRUNCATION_MARK: &str = "...";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error("no flat component")]
    MissingFlatComponent,
    #[error("{0} digest is truncated; full verification impossible")]
    TruncatedDigest(&'static str),
}

pub fn sha256(bytes: &[u8]) -> [u8; DIGEST_LEN] {
    Sha256::digest(bytes).into()
}

/// Text rendering of one digest. Truncated digests render as their hex prefix
/// followed by `...` regardless of `encoding`.
pub fn render_digest(digest: &Digest, encoding: DigestEncoding) -> String {
    match (digest, encoding) {
        (Digest::Full(b), DigestEncoding::Hex) => hex::encode(b),
        (Digest::Full(b), DigestEncoding::Base64) => STANDARD.encode(b),
        (Digest::Truncated(h), _) => format!("{h}{TRUNCATION_MARK}"),
    }
}

/// Decodes a rendered digest. Full hex must be 64 lowercase characters and
/// Base64 must be the 44-character padded standard form. With `lenient`, a
/// shorter lowercase hex prefix (optionally ending in `...`) is accepted as a
/// truncated digest.
pub fn decode_digest(text: &str, lenient: bool) -> Option<(Digest, Option<DigestEncoding>)> {
    let is_hex = |s: &str| s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'));
    if text.len() == HEX_LEN && is_hex(text) {
        let mut out = [0u8; DIGEST_LEN];
        hex::decode_to_slice(text, &mut out).ok()?;
        return Some((Digest::Full(out), Some(DigestEncoding::Hex)));
    }
    if text.len() == BASE64_LEN {
        if let Ok(bytes) = STANDARD.decode(text) {
            if let Ok(arr) = <[u8; DIGEST_LEN]>::try_from(bytes.as_slice()) {
                // Reject non-canonical trailing bits so rendering stays a fixed point.
                if STANDARD.encode(arr) == text {
                    return Some((Digest::Full(arr), Some(DigestEncoding::Base64)));
                }
            }
        }
    }
    if lenient {
        let stem = text.strip_suffix(TRUNCATION_MARK).unwrap_or(text);
        if !stem.is_empty() && stem.len() < HEX_LEN && is_hex(stem) {
            return Some((Digest::Truncated(stem.to_owned()), None));
        }
    }
    None
}

/// Hashes the decoded originator, super-type and sub-type portions.
pub fn compute_fc(hc: &HierarchicalComponent, encoding: DigestEncoding) -> FlatComponent {
    let h = |s: &str| Digest::Full(sha256(s.as_bytes()));
    FlatComponent {
        originator_digest: h(hc.originator_id().as_str()),
        super_type_digest: h(hc.content_super_type().as_str()),
        sub_type_digest: h(hc.content_sub_type().as_str()),
        encoding,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigestStatus {
    Match,
    Mismatch,
    /// Truncated stored digest agrees with the leading nibbles of the recomputed one.
    PrefixMatch,
    PrefixMismatch,
}

impl DigestStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DigestStatus::Match => "match",
            DigestStatus::Mismatch => "mismatch",
            DigestStatus::PrefixMatch => "prefix-match",
            DigestStatus::PrefixMismatch => "prefix-mismatch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigestCheck {
    pub field: &'static str,
    pub status: DigestStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: [DigestCheck; 3],
}

impl VerifyReport {
    /// True iff all three digests are full length and match.
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.status == DigestStatus::Match)
    }

    /// True when no digest contradicts the recomputed value, truncated or not.
    pub fn prefix_consistent(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, DigestStatus::Match | DigestStatus::PrefixMatch))
    }

    pub fn is_truncated(&self) -> bool {
        self.checks
            .iter()
            .any(|c| matches!(c.status, DigestStatus::PrefixMatch | DigestStatus::PrefixMismatch))
    }
}

const FC_FIELDS: [&str; 3] = ["originator", "super_type", "sub_type"];

/// Recomputes the FC from the name's HC and compares byte-wise.
///
/// Truncated stored digests fail with [`FlatError::TruncatedDigest`] unless
/// `lenient` is set, in which case they are compared by hex prefix only.
pub fn verify_fc(name: &Name, lenient: bool) -> Result<VerifyReport, FlatError> {
    let stored = name.fc().ok_or(FlatError::MissingFlatComponent)?;
    let fresh = compute_fc(name.hc(), stored.encoding);
    let mut checks = [DigestCheck {
        field: "",
        status: DigestStatus::Match,
    }; 3];
    for (i, (have, want)) in stored.digests().into_iter().zip(fresh.digests()).enumerate() {
        let want = want.bytes().expect("computed digests are full");
        let status = match have {
            Digest::Full(b) if b == want => DigestStatus::Match,
            Digest::Full(_) => DigestStatus::Mismatch,
            Digest::Truncated(_) if !lenient => return Err(FlatError::TruncatedDigest(FC_FIELDS[i])),
            Digest::Truncated(h) => {
                if hex::encode(want).starts_with(h.as_str()) {
                    DigestStatus::PrefixMatch
                } else {
                    DigestStatus::PrefixMismatch
                }
            }
        };
        checks[i] = DigestCheck {
            field: FC_FIELDS[i],
            status,
        };
    }
    Ok(VerifyReport { checks })
}
