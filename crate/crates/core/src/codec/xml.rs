use quick_xml::events::Event;
use quick_xml::name::ResolveResult;
use quick_xml::NsReader;

use super::{vocabulary, CodecError, TargetModel, TargetNode, ANONYMOUS_URI, CONTEXT_ANNOTATION, ORIGINATION, UNKNOWN};
use crate::crosswalk::{ElementPath, Standard};

pub const EAD_NAMESPACE: &str = "urn:isbn:1-931666-22-9";
pub const MODS_NAMESPACE: &str = "http://www.loc.gov/mods/v3";
const INDENT: &str = "  ";

fn root_name(standard: Standard) -> &'static str {
    match standard {
        Standard::Ead => "ead",
        _ => "mods",
    }
}

fn namespace(standard: Standard) -> &'static str {
    match standard {
        Standard::Ead => EAD_NAMESPACE,
        _ => MODS_NAMESPACE,
    }
}

pub(super) fn encode(model: &TargetModel) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let base = escape_attr(&model.record_uri);
    let depth = match model.standard {
        Standard::Ead => {
            out.push_str(&format!("<ead xmlns=\"{EAD_NAMESPACE}\" xml:base=\"{base}\">\n"));
            out.push_str(INDENT);
            out.push_str("<archdesc level=\"item\">\n");
            2
        }
        _ => {
            out.push_str(&format!("<mods xmlns=\"{MODS_NAMESPACE}\" version=\"3.8\" xml:base=\"{base}\">\n"));
            1
        }
    };
    for node in &model.nodes {
        write_node(&mut out, node, depth);
    }
    if model.standard == Standard::Ead {
        out.push_str(INDENT);
        out.push_str("</archdesc>\n");
    }
    out.push_str(&format!("</{}>\n", root_name(model.standard)));
    out
}

fn write_node(out: &mut String, node: &TargetNode, mut depth: usize) {
    let in_origination = node.annotation(CONTEXT_ANNOTATION) == Some(ORIGINATION);
    if in_origination {
        push_line(out, depth, &format!("<{ORIGINATION}>"));
        depth += 1;
    }
    let segments = &node.path.path;
    let last = segments.len() - 1;
    for (i, name) in segments.iter().enumerate() {
        let mut open = format!("<{name}");
        if i == 0 {
            for (k, v) in &node.path.attributes {
                open.push_str(&format!(" {k}=\"{}\"", escape_attr(v)));
            }
        }
        if i == last {
            for (k, v) in node.annotations.iter().filter(|(k, _)| k != CONTEXT_ANNOTATION) {
                open.push_str(&format!(" {k}=\"{}\"", escape_attr(v)));
            }
            push_line(out, depth + i, &format!("{open}>{}</{name}>", escape_text(&node.value)));
        } else {
            push_line(out, depth + i, &format!("{open}>"));
        }
    }
    for i in (0..last).rev() {
        push_line(out, depth + i, &format!("</{}>", segments[i]));
    }
    if in_origination {
        push_line(out, depth - 1, &format!("</{ORIGINATION}>"));
    }
}

fn push_line(out: &mut String, depth: usize, line: &str) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
    out.push_str(line);
    out.push('\n');
}

fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
    out
}

fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
    out
}

/// Minimal element tree; namespaces are resolved to URIs.
#[derive(Debug, Default)]
struct Element {
    namespace: Option<String>,
    name: String,
    attributes: Vec<(String, String)>,
    base: Option<String>,
    children: Vec<Child>,
}

#[derive(Debug)]
enum Child {
    Element(Element),
    Text(String),
}

impl Element {
    fn elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(|c| match c {
            Child::Element(e) => Some(e),
            Child::Text(_) => None,
        })
    }

    fn direct_text(&self) -> String {
        self.children
            .iter()
            .filter_map(|c| match c {
                Child::Text(t) => Some(t.as_str()),
                Child::Element(_) => None,
            })
            .collect()
    }

    fn all_text(&self, out: &mut String) {
        for c in &self.children {
            match c {
                Child::Text(t) => out.push_str(t),
                Child::Element(e) => e.all_text(out),
            }
        }
    }
}

fn malformed(e: impl std::fmt::Display) -> CodecError {
    CodecError::MalformedDocument(e.to_string())
}

fn parse_tree(text: &str) -> Result<Element, CodecError> {
    let mut reader = NsReader::from_str(text);
    reader.config_mut().expand_empty_elements = true;
    let mut stack: Vec<Element> = Vec::new();
    let mut root: Option<Element> = None;
    loop {
        let (ns, event) = reader.read_resolved_event().map_err(malformed)?;
        match event {
            Event::Start(start) => {
                if root.is_some() {
                    return Err(malformed("content after the root element"));
                }
                let mut el = Element {
                    namespace: match ns {
                        ResolveResult::Bound(n) => Some(String::from_utf8_lossy(n.as_ref()).into_owned()),
                        ResolveResult::Unbound => None,
                        ResolveResult::Unknown(p) => {
                            return Err(malformed(format!("undeclared prefix `{}`", String::from_utf8_lossy(&p))))
                        }
                    },
                    name: String::from_utf8_lossy(start.local_name().as_ref()).into_owned(),
                    ..Element::default()
                };
                for attr in start.attributes() {
                    let attr = attr.map_err(malformed)?;
                    let key = attr.key.as_ref();
                    if key == b"xmlns" || key.starts_with(b"xmlns:") {
                        continue;
                    }
                    let value = attr.unescape_value().map_err(malformed)?.into_owned();
                    if key == b"xml:base" {
                        el.base = Some(value);
                    } else if !key.contains(&b':') {
                        el.attributes.push((String::from_utf8_lossy(key).into_owned(), value));
                    }
                }
                stack.push(el);
            }
            Event::End(_) => {
                let el = stack.pop().ok_or_else(|| malformed("unbalanced end tag"))?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(Child::Element(el)),
                    None => root = Some(el),
                }
            }
            Event::Text(t) => {
                let text = t.unescape().map_err(malformed)?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(Child::Text(text.into_owned())),
                    None if text.trim().is_empty() => {}
                    None => return Err(malformed("text outside the root element")),
                }
            }
            Event::CData(c) => {
                let text = String::from_utf8(c.into_inner().into_owned()).map_err(malformed)?;
                if let Some(parent) = stack.last_mut() {
                    parent.children.push(Child::Text(text));
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if !stack.is_empty() {
        return Err(malformed("unclosed element"));
    }
    root.ok_or_else(|| malformed("no root element"))
}

pub(super) fn decode(standard: Standard, text: &str) -> Result<TargetModel, CodecError> {
    let root = parse_tree(text)?;
    let expected_root = root_name(standard);
    let ns_ok = root.namespace.as_deref().is_none_or(|n| n == namespace(standard));
    if root.name != expected_root || !ns_ok {
        return Err(CodecError::WrongStandard {
            expected: standard,
            reason: format!("root element is `{}`", root.name),
        });
    }
    let mut walker = Walker {
        standard,
        namespace: root.namespace.clone(),
        vocab: vocabulary(standard),
        nodes: Vec::new(),
    };
    match standard {
        Standard::Ead => {
            for child in root.elements() {
                if child.name == "archdesc" && child.namespace == walker.namespace {
                    walker.children(child, &[], false);
                } else {
                    walker.element(child, &[], false);
                }
            }
        }
        _ => walker.children(&root, &[], false),
    }
    Ok(TargetModel {
        standard,
        record_uri: root.base.unwrap_or_else(|| ANONYMOUS_URI.to_string()),
        nodes: walker.nodes,
    })
}

struct Walker {
    standard: Standard,
    namespace: Option<String>,
    vocab: &'static [ElementPath],
    nodes: Vec<TargetNode>,
}

impl Walker {
    fn children(&mut self, parent: &Element, prefix: &[String], in_origination: bool) {
        for child in parent.elements() {
            let transparent = self.standard == Standard::Ead && prefix.is_empty() && child.namespace == self.namespace;
            if transparent && child.name == "did" {
                self.children(child, prefix, in_origination);
            } else if transparent && child.name == ORIGINATION {
                self.children(child, prefix, true);
            } else {
                self.element(child, prefix, in_origination);
            }
        }
    }

    fn element(&mut self, el: &Element, prefix: &[String], in_origination: bool) {
        if el.namespace != self.namespace {
            return self.unknown(el, prefix);
        }
        let mut names = prefix.to_vec();
        names.push(el.name.clone());
        let candidates: Vec<&ElementPath> = self
            .vocab
            .iter()
            .filter(|p| p.path.len() >= names.len() && p.path[..names.len()] == names[..])
            .collect();
        if candidates.is_empty() {
            return self.unknown(el, prefix);
        }
        let is_container = candidates.iter().any(|p| p.path.len() > names.len());
        let has_elements = el.elements().next().is_some();
        let exact = self.best_exact(&candidates, &names, el, prefix.is_empty());

        if let Some((path, annotations)) = exact {
            let value = if !has_elements {
                el.direct_text()
            } else if is_container {
                el.direct_text().trim().to_string()
            } else {
                let mut all = String::new();
                el.all_text(&mut all);
                all.trim().to_string()
            };
            if !value.trim().is_empty() {
                let mut node = TargetNode::new(path, value);
                if in_origination && prefix.is_empty() {
                    node.annotations.push((CONTEXT_ANNOTATION.to_string(), ORIGINATION.to_string()));
                }
                node.annotations.extend(annotations);
                self.nodes.push(node);
            }
            if !is_container {
                return;
            }
        } else {
            let stray = el.direct_text();
            if !stray.trim().is_empty() {
                let mut path = vec![UNKNOWN.to_string()];
                path.extend(names.iter().cloned());
                self.push_unknown(path, stray.trim().to_string());
            }
        }
        for child in el.elements() {
            self.element(child, &names, false);
        }
    }

    /// The exact-path match whose attributes the element carries, preferring
    /// the most specific; leftover attributes become annotations.
    fn best_exact(
        &self,
        candidates: &[&ElementPath],
        names: &[String],
        el: &Element,
        outermost: bool,
    ) -> Option<(ElementPath, Vec<(String, String)>)> {
        let carried = |p: &ElementPath| {
            p.attributes.iter().all(|(k, v)| el.attributes.iter().any(|(ek, ev)| ek == k && ev == v))
        };
        let best = candidates
            .iter()
            .filter(|p| p.path[..] == names[..] && (outermost || p.attributes.is_empty()) && carried(p))
            .max_by_key(|p| p.attributes.len())?;
        let rest = el
            .attributes
            .iter()
            .filter(|(k, _)| !best.attributes.iter().any(|(bk, _)| bk == k))
            .cloned()
            .collect();
        Some(((*best).clone(), rest))
    }

    fn unknown(&mut self, el: &Element, prefix: &[String]) {
        let mut text = String::new();
        el.all_text(&mut text);
        let mut path = vec![UNKNOWN.to_string()];
        path.extend(prefix.iter().cloned());
        path.push(el.name.clone());
        self.push_unknown(path, text.trim().to_string());
    }

    fn push_unknown(&mut self, path: Vec<String>, value: String) {
        if value.is_empty() {
            return;
        }
        if let Ok(path) = ElementPath::try_new(self.standard, path, Vec::new()) {
            self.nodes.push(TargetNode::new(path, value));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(standard: Standard, segs: &[&str], value: &str) -> TargetNode {
        TargetNode::new(ElementPath::new(standard, segs), value)
    }

    #[test]
    fn ead_layout() {
        let mut m = TargetModel::new(Standard::Ead, "https://example.org/ch/x");
        m.push(node(Standard::Ead, &["unittitle"], "Brief"));
        m.push(node(Standard::Ead, &["physdesc", "extent"], "4 pages"));
        m.push(node(Standard::Ead, &["persname"], "Aster").annotated(CONTEXT_ANNOTATION, ORIGINATION));
        let text = encode(&m);
        assert!(text.contains("<ead xmlns=\"urn:isbn:1-931666-22-9\" xml:base=\"https://example.org/ch/x\">"));
        assert!(text.contains("      <extent>4 pages</extent>\n"));
        assert!(text.contains("    <origination>\n      <persname>Aster</persname>\n    </origination>\n"));
        assert_eq!(decode(Standard::Ead, &text).unwrap(), m);
    }

    #[test]
    fn mods_attribute_paths_and_annotations() {
        let mut m = TargetModel::new(Standard::Mods, "https://example.org/ch/x");
        m.push(node(Standard::Mods, &["titleInfo"], "Main"));
        m.push(TargetNode::new(
            ElementPath::new(Standard::Mods, &["titleInfo"]).with_attribute("type", "alternative"),
            "Alt & <other>",
        ));
        m.push(node(Standard::Mods, &["originInfo", "place"], "Krakow").annotated("authority", "a\"b\nc"));
        let text = encode(&m);
        assert!(text.contains("<titleInfo type=\"alternative\">Alt &amp; &lt;other&gt;</titleInfo>"));
        assert_eq!(decode(Standard::Mods, &text).unwrap(), m);
    }

    #[test]
    fn whitespace_inside_values_survives() {
        let mut m = TargetModel::new(Standard::Ead, "https://example.org/ch/x");
        m.push(node(Standard::Ead, &["scopecontent"], " two\r\n lines\t"));
        assert_eq!(decode(Standard::Ead, &encode(&m)).unwrap(), m);
    }

    #[test]
    fn foreign_documents_are_tolerated() {
        let text = r#"<e:ead xmlns:e="urn:isbn:1-931666-22-9"><e:eadheader><e:eadid>id1</e:eadid></e:eadheader>
            <e:archdesc level="fonds"><e:did><e:unittitle>Letters <e:emph>of</e:emph> Aster</e:unittitle>
            <e:unitdate normal="1852">1852</e:unitdate></e:did><e:odd>misc</e:odd></e:archdesc></e:ead>"#;
        let m = decode(Standard::Ead, text).unwrap();
        assert_eq!(m.record_uri, ANONYMOUS_URI);
        let paths: Vec<String> = m.nodes.iter().map(|n| n.path.joined()).collect();
        assert_eq!(paths, ["unknown/eadheader", "unittitle", "unitdate", "unknown/odd"]);
        assert_eq!(m.nodes[1].value, "Letters of Aster");
        assert_eq!(m.nodes[2].annotation("normal"), Some("1852"));
    }

    #[test]
    fn wrong_root_and_broken_xml() {
        assert!(matches!(decode(Standard::Ead, "<mods/>"), Err(CodecError::WrongStandard { .. })));
        assert!(matches!(
            decode(Standard::Mods, "<mods xmlns=\"urn:other\"/>"),
            Err(CodecError::WrongStandard { .. })
        ));
        assert!(matches!(decode(Standard::Mods, "<mods><titleInfo></mods>"), Err(CodecError::MalformedDocument(_))));
        assert!(matches!(decode(Standard::Mods, ""), Err(CodecError::MalformedDocument(_))));
    }
}
