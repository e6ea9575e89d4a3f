//! XML document formats: the user/device ontology, the catalog (skills,
//! subjects, learning objects), the agent message envelope and the learning
//! program payload.
//!
//! Every serializer is deterministic byte-for-byte and every parser accepts
//! what the matching serializer writes, with any inter-element whitespace.
//! Leaf text is trimmed on input, so names and message texts are expected
//! to carry no leading or trailing whitespace.

mod acml;
mod catalog;
mod program;
pub(crate) mod tree;
mod uda;

pub use acml::{decode_acml, encode_acml, AcmlError, AcmlMessage, MessageParameter, ParameterKind};
pub use catalog::{parse_catalog, serialize_catalog};
pub use program::{decode_program, encode_program};
pub use uda::{parse_uda_ontology, serialize_uda_ontology};

/// XML Schema of the user/device ontology document.
pub const UDA_SCHEMA: &str = include_str!("../../schemas/uda_ontology.xsd");
/// XML Schema of the catalog document.
pub const CATALOG_SCHEMA: &str = include_str!("../../schemas/catalog.xsd");
/// DTD of the agent message envelope.
pub const ACML_DTD: &str = include_str!("../../schemas/fipa_acl.dtd");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    #[error("malformed XML: {0}")]
    MalformedXml(String),
    /// `name` is the offending element or attribute.
    #[error("schema violation at {name}: {reason}")]
    SchemaViolation { name: String, reason: String },
    #[error(transparent)]
    Acml(#[from] AcmlError),
}

impl CodecError {
    pub(crate) fn schema(name: &str, reason: impl Into<String>) -> Self {
        Self::SchemaViolation {
            name: name.to_owned(),
            reason: reason.into(),
        }
    }

    /// Name of the element or attribute a schema violation refers to.
    pub fn offending_name(&self) -> Option<&str> {
        match self {
            Self::SchemaViolation { name, .. } => Some(name),
            _ => None,
        }
    }
}

pub(crate) fn parse_flag(name: &str, value: &str) -> Result<bool, CodecError> {
    match value.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(CodecError::schema(name, format!("expected 0 or 1, found {other:?}"))),
    }
}

pub(crate) fn flag(v: bool) -> &'static str {
    if v {
        "1"
    } else {
        "0"
    }
}

/// A finite, strictly positive `xs:float`.
pub(crate) fn parse_positive_float(name: &str, value: &str) -> Result<f64, CodecError> {
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| CodecError::schema(name, format!("expected a number, found {value:?}")))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CodecError::schema(name, format!("expected a positive finite number, found {value:?}")))
    }
}

pub(crate) fn parse_u64(name: &str, value: &str) -> Result<u64, CodecError> {
    value
        .trim()
        .parse()
        .map_err(|_| CodecError::schema(name, format!("expected a non-negative integer, found {value:?}")))
}

pub(crate) fn non_empty<'a>(name: &str, value: &'a str) -> Result<&'a str, CodecError> {
    if value.is_empty() {
        Err(CodecError::schema(name, "must not be empty"))
    } else {
        Ok(value)
    }
}
