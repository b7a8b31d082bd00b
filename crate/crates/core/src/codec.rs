//! Canonical text form of names.
//!
//! ```text
//! IoT://<CODE>:<hc1>/<hc2>/.../<hc7>[:<ac sub-part>:/<ac sub-part>...][:<d1>:/<d2>:/<d3>]
//! ```
//!
//! `:` separates components, `:/` separates sub-parts inside a component and
//! `/` separates portions inside a sub-part. The tokenizer always binds `:/`
//! before `:`. Inside portion values `/`, `:`, `%` and space are written as
//! `%2F`, `%3A`, `%25` and `%20`; escapes are decoded after splitting.
//!
//! AC sub-parts appear in a fixed order: `key/value` attribute pairs, then the
//! freshness selector (`0`, `1` or `ts/<n>`), then popularity (bare integer),
//! then the task (`sense/<x>` or `action/<x>`).

use serde_json::{json, Value};
use thiserror::Error;

use crate::flat::{decode_digest, render_digest};
use crate::name::{
    AttributePair, AttributesComponent, Digest, DigestEncoding, FlatComponent, Freshness,
    HierarchicalComponent, Name, NameError, NamePrefix, Portion, RootPrefix, TaskSpec, TaskType,
    HC_FIELDS, HC_LEN, SCHEME,
};

const SCHEME_PREFIX: &str = "IoT://";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown scheme: name must start with {SCHEME_PREFIX}")]
    UnknownScheme,
    #[error("bad digest at byte {offset}: {message}")]
    BadDigest { offset: usize, message: String },
}

impl CodecError {
    fn syntax(offset: usize, message: impl Into<String>) -> Self {
        CodecError::Syntax {
            offset,
            message: message.into(),
        }
    }

    /// Byte offset into the input, when the error has one.
    pub fn offset(&self) -> Option<usize> {
        match self {
            CodecError::Syntax { offset, .. } | CodecError::BadDigest { offset, .. } => {
                Some(*offset)
            }
            CodecError::UnknownScheme => Some(0),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept truncated hex digests such as `968cbab1de...` in the FC.
    pub lenient_digests: bool,
}

impl ParseOptions {
    pub fn lenient() -> Self {
        Self {
            lenient_digests: true,
        }
    }
}

fn escape_into(value: &str, out: &mut String) {
    for ch in value.chars() {
        match ch {
            '/' => out.push_str("%2F"),
            ':' => out.push_str("%3A"),
            '%' => out.push_str("%25"),
            ' ' => out.push_str("%20"),
            c => out.push(c),
        }
    }
}

/// Percent-escapes a single portion value.
pub fn escape(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    escape_into(value, &mut out);
    out
}

fn push_portions<'a>(out: &mut String, portions: impl IntoIterator<Item = &'a str>) {
    for (i, p) in portions.into_iter().enumerate() {
        if i > 0 {
            out.push('/');
        }
        escape_into(p, out);
    }
}

fn push_root_and_portions(out: &mut String, root: &RootPrefix, portions: &[Portion]) {
    out.push_str(SCHEME_PREFIX);
    out.push_str(root.app_code());
    out.push(':');
    push_portions(out, portions.iter().map(Portion::as_str));
}

pub fn serialize(name: &Name) -> String {
    let mut out = String::new();
    push_root_and_portions(&mut out, name.root(), name.hc().portions());

    if let Some(ac) = name.ac() {
        let mut subparts: Vec<Vec<String>> = Vec::new();
        for pair in &ac.attributes {
            subparts.push(vec![pair.key.to_string(), pair.value.to_string()]);
        }
        match ac.freshness {
            Some(Freshness::Latest) => subparts.push(vec!["0".into()]),
            Some(Freshness::Oldest) => subparts.push(vec!["1".into()]),
            Some(Freshness::GeneratedAt(ts)) => subparts.push(vec!["ts".into(), ts.to_string()]),
            None => {}
        }
        if let Some(pop) = ac.popularity {
            subparts.push(vec![pop.to_string()]);
        }
        if let Some(task) = &ac.task {
            subparts.push(vec![
                task.task_type.as_str().into(),
                task.task_sub_type.to_string(),
            ]);
        }
        out.push(':');
        for (i, sp) in subparts.iter().enumerate() {
            if i > 0 {
                out.push_str(":/");
            }
            push_portions(&mut out, sp.iter().map(String::as_str));
        }
    }

    if let Some(fc) = name.fc() {
        out.push(':');
        for (i, d) in fc.digests().into_iter().enumerate() {
            if i > 0 {
                out.push_str(":/");
            }
            escape_into(&render_digest(d, fc.encoding), &mut out);
        }
    }
    out
}

/// `IoT://<CODE>:<p1>/.../<pk>`
pub fn serialize_prefix(prefix: &NamePrefix) -> String {
    let mut out = String::new();
    push_root_and_portions(&mut out, prefix.root(), prefix.portions());
    out
}

#[derive(Debug, Clone)]
struct RawPortion<'a> {
    text: &'a str,
    offset: usize,
}

type SubPart<'a> = Vec<RawPortion<'a>>;
type Component<'a> = Vec<SubPart<'a>>;

/// Splits on separators, longest match first. Offsets are absolute.
fn tokenize<'a>(text: &'a str, base: usize) -> Vec<Component<'a>> {
    let bytes = text.as_bytes();
    let mut components: Vec<Component<'a>> = vec![vec![vec![]]];
    let mut start = 0;
    let mut i = 0;
    let close = |components: &mut Vec<Component<'a>>, start: usize, end: usize| {
        let comp = components.last_mut().unwrap();
        comp.last_mut().unwrap().push(RawPortion {
            text: &text[start..end],
            offset: base + start,
        });
    };
    while i < bytes.len() {
        match bytes[i] {
            b':' if bytes.get(i + 1) == Some(&b'/') => {
                close(&mut components, start, i);
                components.last_mut().unwrap().push(vec![]);
                i += 2;
                start = i;
            }
            b':' => {
                close(&mut components, start, i);
                components.push(vec![vec![]]);
                i += 1;
                start = i;
            }
            b'/' => {
                close(&mut components, start, i);
                i += 1;
                start = i;
            }
            _ => i += 1,
        }
    }
    close(&mut components, start, bytes.len());
    components
}

/// Drops empty pieces left by trailing `/`, `:/` and `:`.
fn trim_trailing(components: &mut Vec<Component<'_>>) {
    for comp in components.iter_mut() {
        for sp in comp.iter_mut() {
            if sp.len() > 1 && sp.last().is_some_and(|p| p.text.is_empty()) {
                sp.pop();
            }
        }
        if comp.len() > 1 && comp.last().is_some_and(|sp| sp.len() == 1 && sp[0].text.is_empty()) {
            comp.pop();
        }
    }
    if components.len() > 1
        && components
            .last()
            .is_some_and(|c| c.len() == 1 && c[0].len() == 1 && c[0][0].text.is_empty())
    {
        components.pop();
    }
}

fn hex_val(b: u8) -> Option<u8> {
    match b {
        b'0'..=b'9' => Some(b - b'0'),
        b'a'..=b'f' => Some(b - b'a' + 10),
        b'A'..=b'F' => Some(b - b'A' + 10),
        _ => None,
    }
}

fn unescape(raw: &RawPortion<'_>) -> Result<String, CodecError> {
    if raw.text.is_empty() {
        return Err(CodecError::syntax(raw.offset, "empty portion"));
    }
    let bytes = raw.text.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let hi = bytes.get(i + 1).copied().and_then(hex_val);
            let lo = bytes.get(i + 2).copied().and_then(hex_val);
            match (hi, lo) {
                (Some(h), Some(l)) => out.push(h << 4 | l),
                _ => return Err(CodecError::syntax(raw.offset + i, "malformed percent escape")),
            }
            i += 3;
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    String::from_utf8(out)
        .map_err(|_| CodecError::syntax(raw.offset, "escape sequence decodes to invalid UTF-8"))
}

fn component_offset(comp: &Component<'_>) -> usize {
    comp[0][0].offset
}

fn component_end(comp: &Component<'_>) -> usize {
    let last = comp.last().unwrap().last().unwrap();
    last.offset + last.text.len()
}

fn parse_uint(raw: &RawPortion<'_>, value: &str) -> Result<u64, CodecError> {
    let canonical = !value.is_empty()
        && value.bytes().all(|b| b.is_ascii_digit())
        && (value == "0" || !value.starts_with('0'));
    if !canonical {
        return Err(CodecError::syntax(raw.offset, format!("{value:?} is not a canonical integer")));
    }
    value
        .parse()
        .map_err(|_| CodecError::syntax(raw.offset, format!("{value:?} overflows 64 bits")))
}

fn invalid(offset: usize, err: NameError) -> CodecError {
    CodecError::syntax(offset, err.to_string())
}

fn parse_root<'a>(text: &'a str) -> Result<(RootPrefix, Vec<Component<'a>>), CodecError> {
    let rest = text
        .strip_prefix(SCHEME_PREFIX)
        .ok_or(CodecError::UnknownScheme)?;
    let mut components = tokenize(rest, SCHEME_PREFIX.len());
    trim_trailing(&mut components);
    let root_comp = &components[0];
    if root_comp.len() != 1 || root_comp[0].len() != 1 {
        return Err(CodecError::syntax(
            SCHEME_PREFIX.len(),
            "root prefix must be a single application code",
        ));
    }
    let code = &root_comp[0][0];
    let root = RootPrefix::new(code.text).map_err(|e| invalid(code.offset, e))?;
    Ok((root, components))
}

fn parse_hc_portions(comp: &Component<'_>, min: usize) -> Result<Vec<Portion>, CodecError> {
    if comp.len() != 1 {
        return Err(CodecError::syntax(
            comp[1][0].offset.saturating_sub(2),
            "hierarchical component cannot contain ':/' sub-parts",
        ));
    }
    let raw = &comp[0];
    if raw.len() > HC_LEN {
        return Err(CodecError::syntax(
            raw[HC_LEN].offset,
            format!(
                "hierarchical component has {} portions, expected {HC_LEN}",
                raw.len()
            ),
        ));
    }
    if raw.len() < min {
        return Err(CodecError::syntax(
            component_end(comp),
            format!(
                "hierarchical component has {} portions, expected {}",
                raw.len(),
                if min == HC_LEN { "7".to_string() } else { format!("{min}..={HC_LEN}") }
            ),
        ));
    }
    raw.iter()
        .enumerate()
        .map(|(i, p)| {
            let v = unescape(p)?;
            Portion::new(v).map_err(|_| {
                CodecError::syntax(p.offset, format!("{} is empty", HC_FIELDS[i]))
            })
        })
        .collect()
}

fn parse_ac(comp: &Component<'_>) -> Result<AttributesComponent, CodecError> {
    // 0: attributes, 1: after freshness, 2: after popularity, 3: after task
    let mut stage = 0u8;
    let mut ac = AttributesComponent::default();
    for sp in comp {
        let first = &sp[0];
        let values: Vec<String> = sp.iter().map(unescape).collect::<Result<_, _>>()?;
        match values.as_slice() {
            [v] if stage == 0 && (v == "0" || v == "1") => {
                ac.freshness = Some(if v == "0" { Freshness::Latest } else { Freshness::Oldest });
                stage = 1;
            }
            [v] if stage == 1 => {
                ac.popularity = Some(parse_uint(first, v)?);
                stage = 2;
            }
            [v] => {
                let msg = if stage == 0 {
                    format!("bare sub-part {v:?} is neither a freshness selector nor preceded by one")
                } else {
                    format!("unexpected bare sub-part {v:?}")
                };
                return Err(CodecError::syntax(first.offset, msg));
            }
            [k, v] if k == "ts" => {
                if stage != 0 {
                    return Err(CodecError::syntax(first.offset, "freshness out of order"));
                }
                ac.freshness = Some(Freshness::GeneratedAt(parse_uint(&sp[1], v)?));
                stage = 1;
            }
            [k, v] if TaskType::from_token(k).is_some() => {
                if stage == 3 {
                    return Err(CodecError::syntax(first.offset, "more than one task sub-part"));
                }
                let task_type = TaskType::from_token(k).unwrap();
                ac.task = Some(
                    TaskSpec::new(task_type, v).map_err(|e| invalid(sp[1].offset, e))?,
                );
                stage = 3;
            }
            [k, v] => {
                if stage != 0 {
                    return Err(CodecError::syntax(
                        first.offset,
                        "attribute pair after freshness, popularity or task",
                    ));
                }
                if ac.attribute(k).is_some() {
                    return Err(CodecError::syntax(
                        first.offset,
                        format!("duplicate attribute key {k:?}"),
                    ));
                }
                ac.attributes
                    .push(AttributePair::new(k, v).map_err(|e| invalid(first.offset, e))?);
            }
            _ => {
                return Err(CodecError::syntax(
                    sp[2].offset,
                    "attribute sub-part has more than two portions",
                ))
            }
        }
    }
    Ok(ac)
}

fn looks_like_fc(comp: &Component<'_>, lenient: bool) -> bool {
    if lenient {
        comp.iter().map(Vec::len).sum::<usize>() == 3
            && comp.iter().flatten().all(|p| decode_digest(p.text, true).is_some())
    } else {
        comp.len() == 3 && comp.iter().all(|sp| sp.len() == 1)
    }
}

fn parse_fc(comp: &Component<'_>, lenient: bool) -> Result<FlatComponent, CodecError> {
    let raws: Vec<&RawPortion<'_>> = if lenient {
        comp.iter().flatten().collect()
    } else {
        if let Some(sp) = comp.iter().find(|sp| sp.len() != 1) {
            return Err(CodecError::BadDigest {
                offset: sp[0].offset,
                message: "digest sub-part contains '/'".into(),
            });
        }
        comp.iter().map(|sp| &sp[0]).collect()
    };
    if raws.len() != 3 {
        return Err(CodecError::BadDigest {
            offset: component_offset(comp),
            message: format!("flat component has {} digests, expected 3", raws.len()),
        });
    }
    let mut digests = Vec::with_capacity(3);
    let mut encoding: Option<DigestEncoding> = None;
    for raw in raws {
        let text = unescape(raw)?;
        let (digest, enc) = decode_digest(&text, lenient).ok_or_else(|| CodecError::BadDigest {
            offset: raw.offset,
            message: format!("{text:?} is not a 64-char hex or 44-char Base64 SHA-256 digest"),
        })?;
        let enc = enc.unwrap_or(DigestEncoding::Hex);
        if encoding.is_some_and(|e| e != enc) {
            return Err(CodecError::BadDigest {
                offset: raw.offset,
                message: "digests mix hex and Base64".into(),
            });
        }
        encoding = Some(enc);
        digests.push(digest);
    }
    let mut it = digests.into_iter();
    Ok(FlatComponent {
        originator_digest: it.next().unwrap(),
        super_type_digest: it.next().unwrap(),
        sub_type_digest: it.next().unwrap(),
        encoding: encoding.unwrap_or_default(),
    })
}

/// Strict parse: canonical digests only.
pub fn parse(text: &str) -> Result<Name, CodecError> {
    parse_with(text, ParseOptions::default())
}

pub fn parse_with(text: &str, opts: ParseOptions) -> Result<Name, CodecError> {
    let (root, components) = parse_root(text)?;
    if components.len() < 2 {
        return Err(CodecError::syntax(
            text.len(),
            "missing hierarchical component",
        ));
    }
    if components.len() > 4 {
        return Err(CodecError::syntax(
            component_offset(&components[4]).saturating_sub(1),
            "too many components",
        ));
    }
    for comp in &components[1..] {
        if comp.iter().any(|sp| sp.len() == 1 && sp[0].text.is_empty()) && comp.len() == 1 {
            return Err(CodecError::syntax(component_offset(comp), "empty component"));
        }
    }
    let portions = parse_hc_portions(&components[1], HC_LEN)?;
    let hc = HierarchicalComponent::from_portions(portions.try_into().expect("arity checked"));

    let (ac, fc) = match &components[2..] {
        [] => (None, None),
        [last] if looks_like_fc(last, opts.lenient_digests) => {
            (None, Some(parse_fc(last, opts.lenient_digests)?))
        }
        [ac] => (Some(parse_ac(ac)?), None),
        [ac, fc] => (
            Some(parse_ac(ac)?),
            Some(parse_fc(fc, opts.lenient_digests)?),
        ),
        _ => unreachable!("component count checked"),
    };
    let ac_offset = components.get(2).map(component_offset).unwrap_or(0);
    Name::new(root, hc, ac, fc).map_err(|e| invalid(ac_offset, e))
}

/// Parses `IoT://<CODE>:<p1>/.../<pk>` with 1 <= k <= 7.
pub fn parse_prefix(text: &str) -> Result<NamePrefix, CodecError> {
    let (root, components) = parse_root(text)?;
    match components.len() {
        2 => {}
        1 => {
            return Err(CodecError::syntax(
                text.len(),
                "prefix needs at least one hierarchical portion",
            ))
        }
        _ => {
            return Err(CodecError::syntax(
                component_offset(&components[2]).saturating_sub(1),
                "a prefix carries only the hierarchical component",
            ))
        }
    }
    let portions = parse_hc_portions(&components[1], 1)?;
    NamePrefix::new(root, portions).map_err(|e| invalid(SCHEME_PREFIX.len(), e))
}

/// Reads a positional attribute list such as `14/01-Jan/13:30/1/` against a
/// key schema such as `["session", "date", "time", "ver"]`. The input is a
/// bare attribute string, not a full name, so `:` inside values is allowed.
pub fn positional_attributes(text: &str, schema: &[&str]) -> Result<Vec<AttributePair>, CodecError> {
    let values: Vec<&str> = text.strip_suffix('/').unwrap_or(text).split('/').collect();
    if values.len() != schema.len() {
        return Err(CodecError::syntax(
            0,
            format!("{} positional values for {} schema keys", values.len(), schema.len()),
        ));
    }
    let mut offset = 0;
    schema
        .iter()
        .zip(values)
        .map(|(k, v)| {
            let pair = AttributePair::new(k, v).map_err(|e| invalid(offset, e));
            offset += v.len() + 1;
            pair
        })
        .collect()
}

/// Structured dump used by `name parse`.
pub fn to_json(name: &Name) -> Value {
    let hc: serde_json::Map<String, Value> = HC_FIELDS
        .iter()
        .zip(name.hc().portions())
        .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
        .collect();
    let ac = name.ac().map(|ac| {
        json!({
            "attributes": ac.attributes.iter()
                .map(|a| json!({"key": a.key.as_str(), "value": a.value.as_str()}))
                .collect::<Vec<_>>(),
            "freshness": match ac.freshness {
                None => Value::Null,
                Some(Freshness::Latest) => json!("latest"),
                Some(Freshness::Oldest) => json!("oldest"),
                Some(Freshness::GeneratedAt(ts)) => json!({"generated_at": ts}),
            },
            "popularity": ac.popularity,
            "task": ac.task.as_ref().map(|t| json!({
                "task_type": t.task_type.as_str(),
                "task_sub_type": t.task_sub_type.as_str(),
            })),
        })
    });
    let fc = name.fc().map(|fc| {
        let r = |d: &Digest| render_digest(d, fc.encoding);
        json!({
            "encoding": fc.encoding.as_str(),
            "originator_digest": r(&fc.originator_digest),
            "super_type_digest": r(&fc.super_type_digest),
            "sub_type_digest": r(&fc.sub_type_digest),
            "full": fc.is_full(),
        })
    });
    json!({
        "root": {"scheme": SCHEME, "app_code": name.root().app_code()},
        "hc": hc,
        "ac": ac,
        "fc": fc,
    })
}
