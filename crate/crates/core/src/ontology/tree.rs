//! Minimal element tree over quick-xml, just enough for the three document
//! formats this crate reads. Whitespace-only text between elements is
//! dropped; leaf text is trimmed.

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::CodecError;

pub(crate) const XML_DECLARATION: &str = r#"<?xml version="1.0" encoding="UTF-8"?>"#;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<Element>,
    pub text: String,
}

impl Element {
    fn from_start(start: &BytesStart<'_>) -> Result<Self, CodecError> {
        let name = String::from_utf8(start.name().as_ref().to_vec())
            .map_err(|e| CodecError::MalformedXml(e.to_string()))?;
        let mut attrs = Vec::new();
        for attr in start.attributes() {
            let attr = attr.map_err(|e| CodecError::MalformedXml(e.to_string()))?;
            let key = String::from_utf8(attr.key.as_ref().to_vec())
                .map_err(|e| CodecError::MalformedXml(e.to_string()))?;
            let value = attr
                .unescape_value()
                .map_err(|e| CodecError::MalformedXml(e.to_string()))?
                .into_owned();
            attrs.push((key, value));
        }
        Ok(Self {
            name,
            attrs,
            children: Vec::new(),
            text: String::new(),
        })
    }

    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn required_attr(&self, name: &str) -> Result<&str, CodecError> {
        self.attr(name)
            .ok_or_else(|| CodecError::schema(name, format!("required attribute missing on <{}>", self.name)))
    }

    pub fn expect_name(&self, name: &str) -> Result<(), CodecError> {
        if self.name == name {
            Ok(())
        } else {
            Err(CodecError::schema(
                name,
                format!("expected <{name}>, found <{}>", self.name),
            ))
        }
    }

    /// Children, all of which must be named `name`.
    pub fn children_named(&self, name: &str) -> Result<&[Element], CodecError> {
        if let Some(other) = self.children.iter().find(|c| c.name != name) {
            return Err(CodecError::schema(
                &other.name,
                format!("unexpected element in <{}>", self.name),
            ));
        }
        Ok(&self.children)
    }

    /// Exactly the listed children, in order.
    pub fn sequence(&self, names: &[&str]) -> Result<Vec<&Element>, CodecError> {
        for (i, name) in names.iter().enumerate() {
            match self.children.get(i) {
                Some(c) if c.name == *name => {}
                Some(c) => {
                    return Err(CodecError::schema(
                        name,
                        format!("expected <{name}> in <{}>, found <{}>", self.name, c.name),
                    ))
                }
                None => {
                    return Err(CodecError::schema(
                        name,
                        format!("required child missing in <{}>", self.name),
                    ))
                }
            }
        }
        if let Some(extra) = self.children.get(names.len()) {
            return Err(CodecError::schema(
                &extra.name,
                format!("unexpected element in <{}>", self.name),
            ));
        }
        Ok(self.children.iter().collect())
    }

    pub fn no_children(&self) -> Result<(), CodecError> {
        match self.children.first() {
            Some(c) => Err(CodecError::schema(
                &c.name,
                format!("unexpected element in <{}>", self.name),
            )),
            None => Ok(()),
        }
    }
}

/// Parse a whole document into its root element.
pub(crate) fn parse_document(text: &str) -> Result<Element, CodecError> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(false);
    let mut stack: Vec<Element> = Vec::new();
    let mut root: Option<Element> = None;
    let malformed = |reader: &Reader<&[u8]>, msg: String| {
        CodecError::MalformedXml(format!("at byte {}: {msg}", reader.buffer_position()))
    };

    loop {
        let event = reader
            .read_event()
            .map_err(|e| malformed(&reader, e.to_string()))?;
        match event {
            Event::Start(start) => {
                if root.is_some() {
                    return Err(malformed(&reader, "content after root element".into()));
                }
                stack.push(Element::from_start(&start)?);
            }
            Event::Empty(start) => {
                if root.is_some() {
                    return Err(malformed(&reader, "content after root element".into()));
                }
                let el = Element::from_start(&start)?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(el),
                    None => root = Some(el),
                }
            }
            Event::End(_) => {
                let mut el = stack
                    .pop()
                    .ok_or_else(|| malformed(&reader, "unbalanced end tag".into()))?;
                el.text = el.text.trim().to_owned();
                match stack.last_mut() {
                    Some(parent) => parent.children.push(el),
                    None => root = Some(el),
                }
            }
            Event::Text(t) => {
                let s = t
                    .unescape()
                    .map_err(|e| malformed(&reader, e.to_string()))?;
                match stack.last_mut() {
                    Some(el) => el.text.push_str(&s),
                    None if s.trim().is_empty() => {}
                    None => return Err(malformed(&reader, "text outside root element".into())),
                }
            }
            Event::CData(c) => {
                let bytes = c.into_inner();
                let s = std::str::from_utf8(&bytes).map_err(|e| malformed(&reader, e.to_string()))?;
                match stack.last_mut() {
                    Some(el) => el.text.push_str(s),
                    None => return Err(malformed(&reader, "CDATA outside root element".into())),
                }
            }
            Event::Decl(_) | Event::DocType(_) | Event::Comment(_) | Event::PI(_) => {}
            Event::Eof => break,
        }
    }
    if !stack.is_empty() {
        return Err(CodecError::MalformedXml(format!(
            "unclosed element <{}>",
            stack.last().map(|e| e.name.as_str()).unwrap_or_default()
        )));
    }
    root.ok_or_else(|| CodecError::MalformedXml("no root element".into()))
}

fn escape_into(out: &mut String, s: &str, attribute: bool) {
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if attribute => out.push_str("&quot;"),
            '\n' if attribute => out.push_str("&#10;"),
            '\t' if attribute => out.push_str("&#9;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
}

/// Indented, deterministic XML output. Four spaces per level.
pub(crate) struct XmlWriter {
    out: String,
    depth: usize,
}

impl XmlWriter {
    pub fn new() -> Self {
        let mut out = String::from(XML_DECLARATION);
        out.push('\n');
        Self { out, depth: 0 }
    }

    pub fn raw_line(&mut self, line: &str) {
        self.out.push_str(line);
        self.out.push('\n');
    }

    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.out.push_str("    ");
        }
    }

    fn tag(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.indent();
        self.out.push('<');
        self.out.push_str(name);
        for (k, v) in attrs {
            self.out.push(' ');
            self.out.push_str(k);
            self.out.push_str("=\"");
            escape_into(&mut self.out, v, true);
            self.out.push('"');
        }
    }

    pub fn open(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.tag(name, attrs);
        self.out.push_str(">\n");
        self.depth += 1;
    }

    pub fn close(&mut self, name: &str) {
        self.depth -= 1;
        self.indent();
        self.out.push_str("</");
        self.out.push_str(name);
        self.out.push_str(">\n");
    }

    pub fn empty(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.tag(name, attrs);
        self.out.push_str("/>\n");
    }

    /// `<name>text</name>` on one line.
    pub fn leaf(&mut self, name: &str, text: &str) {
        self.tag(name, &[]);
        self.out.push('>');
        escape_into(&mut self.out, text, false);
        self.out.push_str("</");
        self.out.push_str(name);
        self.out.push_str(">\n");
    }

    /// Text on its own line, indented one level below the open element.
    pub fn text_block(&mut self, text: &str) {
        self.indent();
        escape_into(&mut self.out, text, false);
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        debug_assert_eq!(self.depth, 0);
        self.out
    }
}
