//! XML encoding of agent messages.
//!
//! The layout is fixed: a `message` root holding one `messagetype` and a
//! sequence of `messageparameter` wrappers, each wrapping one parameter
//! element with an optional `link` attribute. Text sits on its own line,
//! indented one level below its element. `schemas/fipa_acl.dtd` carries the
//! grammar.

use std::fmt;
use std::str::FromStr;

use super::tree::{parse_document, XmlWriter};
use super::CodecError;

pub const DOCTYPE: &str = r#"<!DOCTYPE fipa_acl SYSTEM "fipa_acl.dtd">"#;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParameterKind {
    Sender,
    Receiver,
    Ontology,
    Content,
    ReplyWith,
    InReplyTo,
}

impl ParameterKind {
    pub const ALL: [ParameterKind; 6] = [
        ParameterKind::Sender,
        ParameterKind::Receiver,
        ParameterKind::Ontology,
        ParameterKind::Content,
        ParameterKind::ReplyWith,
        ParameterKind::InReplyTo,
    ];

    pub fn element_name(self) -> &'static str {
        match self {
            ParameterKind::Sender => "sender",
            ParameterKind::Receiver => "receiver",
            ParameterKind::Ontology => "ontology",
            ParameterKind::Content => "content",
            ParameterKind::ReplyWith => "reply-with",
            ParameterKind::InReplyTo => "in-reply-to",
        }
    }
}

impl fmt::Display for ParameterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.element_name())
    }
}

impl FromStr for ParameterKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Self::ALL
            .into_iter()
            .find(|k| k.element_name() == s)
            .ok_or(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageParameter {
    pub kind: ParameterKind,
    pub text: String,
    pub link: Option<String>,
}

impl MessageParameter {
    pub fn new(kind: ParameterKind, text: impl Into<String>) -> Self {
        Self {
            kind,
            text: text.into(),
            link: None,
        }
    }

    pub fn with_link(mut self, link: impl Into<String>) -> Self {
        self.link = Some(link.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AcmlError {
    #[error("message type must be non-empty")]
    EmptyMessageType,
    #[error("message has no {0}")]
    MissingParticipant(ParameterKind),
    #[error("message has more than one {0}")]
    RepeatedParticipant(ParameterKind),
    #[error("{0} text has leading or trailing whitespace")]
    UntrimmedText(String),
}

/// A message envelope. Sender and receiver each appear exactly once;
/// parameter order is significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcmlMessage {
    message_type: String,
    parameters: Vec<MessageParameter>,
}

fn trimmed(what: &str, s: &str) -> Result<(), AcmlError> {
    if s.trim() == s {
        Ok(())
    } else {
        Err(AcmlError::UntrimmedText(what.to_owned()))
    }
}

impl AcmlMessage {
    pub fn new(
        message_type: impl Into<String>,
        parameters: Vec<MessageParameter>,
    ) -> Result<Self, AcmlError> {
        let message_type = message_type.into();
        if message_type.is_empty() {
            return Err(AcmlError::EmptyMessageType);
        }
        trimmed("messagetype", &message_type)?;
        for kind in [ParameterKind::Sender, ParameterKind::Receiver] {
            match parameters.iter().filter(|p| p.kind == kind).count() {
                0 => return Err(AcmlError::MissingParticipant(kind)),
                1 => {}
                _ => return Err(AcmlError::RepeatedParticipant(kind)),
            }
        }
        for p in &parameters {
            trimmed(p.kind.element_name(), &p.text)?;
        }
        Ok(Self {
            message_type,
            parameters,
        })
    }

    pub fn message_type(&self) -> &str {
        &self.message_type
    }

    pub fn parameters(&self) -> &[MessageParameter] {
        &self.parameters
    }

    /// First parameter of the given kind.
    pub fn parameter(&self, kind: ParameterKind) -> Option<&MessageParameter> {
        self.parameters.iter().find(|p| p.kind == kind)
    }

    pub fn text_of(&self, kind: ParameterKind) -> Option<&str> {
        self.parameter(kind).map(|p| p.text.as_str())
    }

    pub fn sender(&self) -> &str {
        self.text_of(ParameterKind::Sender).expect("sender present by construction")
    }

    pub fn receiver(&self) -> &str {
        self.text_of(ParameterKind::Receiver).expect("receiver present by construction")
    }

    pub fn content(&self) -> Option<&str> {
        self.text_of(ParameterKind::Content)
    }
}

pub fn encode_acml(msg: &AcmlMessage) -> String {
    let mut w = XmlWriter::new();
    w.raw_line(DOCTYPE);
    w.open("message", &[]);
    w.open("messagetype", &[]);
    w.text_block(&msg.message_type);
    w.close("messagetype");
    for p in &msg.parameters {
        w.open("messageparameter", &[]);
        let name = p.kind.element_name();
        match &p.link {
            Some(link) => w.open(name, &[("link", link)]),
            None => w.open(name, &[]),
        }
        w.text_block(&p.text);
        w.close(name);
        w.close("messageparameter");
    }
    w.close("message");
    w.finish()
}

pub fn decode_acml(xml_text: &str) -> Result<AcmlMessage, CodecError> {
    let root = parse_document(xml_text)?;
    root.expect_name("message")?;
    let (head, rest) = root
        .children
        .split_first()
        .ok_or_else(|| CodecError::schema("messagetype", "required child missing in <message>"))?;
    head.expect_name("messagetype")?;
    head.no_children()?;

    let mut parameters = Vec::with_capacity(rest.len());
    for wrapper in rest {
        wrapper.expect_name("messageparameter")?;
        let [inner] = wrapper.children.as_slice() else {
            return Err(CodecError::schema(
                "messageparameter",
                "must wrap exactly one parameter element",
            ));
        };
        let kind: ParameterKind = inner
            .name
            .parse()
            .map_err(|_| CodecError::schema(&inner.name, "unknown message parameter"))?;
        inner.no_children()?;
        if let Some((key, _)) = inner.attrs.iter().find(|(k, _)| k != "link") {
            return Err(CodecError::schema(key, format!("unexpected attribute on <{}>", inner.name)));
        }
        parameters.push(MessageParameter {
            kind,
            text: inner.text.clone(),
            link: inner.attr("link").map(str::to_owned),
        });
    }
    Ok(AcmlMessage::new(head.text.clone(), parameters)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_parameters_means_missing_sender() {
        assert_eq!(
            AcmlMessage::new("request", vec![]),
            Err(AcmlError::MissingParticipant(ParameterKind::Sender))
        );
        let doc = "<message><messagetype>request</messagetype></message>";
        assert_eq!(
            decode_acml(doc),
            Err(CodecError::Acml(AcmlError::MissingParticipant(ParameterKind::Sender)))
        );
    }

    #[test]
    fn receiver_required_once() {
        let sender = MessageParameter::new(ParameterKind::Sender, "A");
        let receiver = MessageParameter::new(ParameterKind::Receiver, "B");
        assert_eq!(
            AcmlMessage::new("inform", vec![sender.clone()]),
            Err(AcmlError::MissingParticipant(ParameterKind::Receiver))
        );
        assert_eq!(
            AcmlMessage::new("inform", vec![sender, receiver.clone(), receiver]),
            Err(AcmlError::RepeatedParticipant(ParameterKind::Receiver))
        );
    }

    #[test]
    fn multiline_content_survives() {
        let msg = AcmlMessage::new(
            "inform",
            vec![
                MessageParameter::new(ParameterKind::Receiver, "UDA"),
                MessageParameter::new(ParameterKind::Content, "<SkillSet>\n  <Skill>a &amp; b</Skill>\n</SkillSet>"),
                MessageParameter::new(ParameterKind::Sender, "SMA").with_link("urn:x"),
            ],
        )
        .unwrap();
        let text = encode_acml(&msg);
        assert_eq!(decode_acml(&text).unwrap(), msg);
    }

    #[test]
    fn unknown_parameter_rejected() {
        let doc = "<message><messagetype>x</messagetype><messageparameter><protocol>p</protocol></messageparameter></message>";
        assert_eq!(decode_acml(doc).unwrap_err().offending_name(), Some("protocol"));
    }
}
