use crate::ontology::{decode_acml, encode_acml, AcmlError, AcmlMessage, CodecError, MessageParameter, ParameterKind};

pub const UDA: &str = "UDA";
pub const SMA: &str = "SMA";
pub const LPA: &str = "LPA";

pub const UDA_ONTOLOGY: (&str, &str) = ("Ontology of UDA", "uda_ontology.xml");
pub const SMA_ONTOLOGY: (&str, &str) = ("Ontology of SMA", "catalog.xml");
pub const LPA_ONTOLOGY: (&str, &str) = ("Ontology of LPA", "catalog.xml");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MailboxError {
    #[error(transparent)]
    Envelope(#[from] AcmlError),
    #[error("message did not survive the wire: {0}")]
    Wire(#[from] CodecError),
}

/// Build a message with sender, receiver, ontology, content and an
/// optional conversation tag. Surrounding whitespace of `content` is
/// dropped, as the envelope does not carry it.
pub fn message(
    kind: &str,
    from: &str,
    to: &str,
    ontology: (&str, &str),
    content: &str,
    tag: Option<(ParameterKind, &str)>,
) -> Result<AcmlMessage, AcmlError> {
    let mut params = vec![
        MessageParameter::new(ParameterKind::Sender, from),
        MessageParameter::new(ParameterKind::Receiver, to),
        MessageParameter::new(ParameterKind::Ontology, ontology.0).with_link(ontology.1),
        MessageParameter::new(ParameterKind::Content, content.trim()),
    ];
    if let Some((kind, text)) = tag {
        params.push(MessageParameter::new(kind, text));
    }
    AcmlMessage::new(kind, params)
}

/// Send `request` through the XML encoding, let `respond` answer the
/// decoded copy, send the reply back the same way and append both to the
/// transcript. Returns the delivered reply.
pub fn exchange<E>(
    transcript: &mut Vec<AcmlMessage>,
    request: AcmlMessage,
    respond: impl FnOnce(&AcmlMessage) -> Result<AcmlMessage, E>,
) -> Result<AcmlMessage, E>
where
    E: From<MailboxError>,
{
    let delivered = deliver(&request)?;
    let reply = respond(&delivered)?;
    let received = deliver(&reply)?;
    transcript.push(delivered);
    transcript.push(received.clone());
    Ok(received)
}

fn deliver(msg: &AcmlMessage) -> Result<AcmlMessage, MailboxError> {
    Ok(decode_acml(&encode_acml(msg))?)
}
