use rio_api::model::{Literal, Subject, Term};
use rio_api::parser::TriplesParser;
use rio_turtle::{TurtleError, TurtleParser};

use super::{vocabulary, CodecError, TargetModel, TargetNode, ANONYMOUS_URI, IS_SHOWN_BY, UNKNOWN};
use crate::crosswalk::{ElementPath, Standard};

const DC: &str = "http://purl.org/dc/elements/1.1/";
const DCTERMS: &str = "http://purl.org/dc/terms/";
const EDM: &str = "http://www.europeana.eu/schemas/edm/";
const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

const PREFIXES: [(&str, &str); 4] = [("dc", DC), ("dcterms", DCTERMS), ("edm", EDM), ("rdf", RDF)];

fn provided_cho() -> String {
    format!("{EDM}ProvidedCHO")
}

fn web_resource() -> String {
    format!("{EDM}WebResource")
}

pub(super) fn encode(model: &TargetModel) -> String {
    let edm = model.standard == Standard::Edm;
    let mut out = format!("@prefix dc: <{DC}> .\n@prefix dcterms: <{DCTERMS}> .\n");
    if edm {
        out.push_str(&format!("@prefix edm: <{EDM}> .\n"));
    }
    out.push('\n');
    let subject = format!("<{}>", model.record_uri);
    if edm {
        out.push_str(&format!("{subject} a edm:ProvidedCHO .\n"));
    }
    let mut resources: Vec<&str> = Vec::new();
    for node in &model.nodes {
        let predicate = &node.path.path[0];
        if predicate == IS_SHOWN_BY {
            out.push_str(&format!("{subject} {predicate} <{}> .\n", node.value));
            if !resources.contains(&node.value.as_str()) {
                resources.push(&node.value);
            }
        } else {
            out.push_str(&format!("{subject} {predicate} {} .\n", quote(&node.value)));
        }
    }
    for r in resources {
        out.push_str(&format!("<{r}> a edm:WebResource .\n"));
    }
    out
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Resource {
    Iri(String),
    Blank(String),
}

impl Resource {
    fn render(&self) -> String {
        match self {
            Resource::Iri(i) => compact(i),
            Resource::Blank(b) => format!("_:{b}"),
        }
    }
}

#[derive(Debug, Clone)]
enum Object {
    Resource(Resource),
    Literal(String),
}

struct OwnedTriple {
    subject: Resource,
    predicate: String,
    object: Object,
}

fn compact(iri: &str) -> String {
    for (prefix, ns) in PREFIXES {
        if let Some(local) = iri.strip_prefix(ns) {
            if !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return format!("{prefix}:{local}");
            }
        }
    }
    iri.to_string()
}

fn parse(text: &str) -> Result<Vec<OwnedTriple>, CodecError> {
    let mut triples = Vec::new();
    let mut parser = TurtleParser::new(text.as_bytes(), None);
    parser
        .parse_all(&mut |t| -> Result<(), TurtleError> {
            let subject = match t.subject {
                Subject::NamedNode(n) => Resource::Iri(n.iri.to_string()),
                Subject::BlankNode(b) => Resource::Blank(b.id.to_string()),
                Subject::Triple(_) => return Ok(()),
            };
            let object = match t.object {
                Term::NamedNode(n) => Object::Resource(Resource::Iri(n.iri.to_string())),
                Term::BlankNode(b) => Object::Resource(Resource::Blank(b.id.to_string())),
                Term::Literal(
                    Literal::Simple { value }
                    | Literal::LanguageTaggedString { value, .. }
                    | Literal::Typed { value, .. },
                ) => Object::Literal(value.to_string()),
                Term::Triple(_) => return Ok(()),
            };
            triples.push(OwnedTriple { subject, predicate: t.predicate.iri.to_string(), object });
            Ok(())
        })
        .map_err(|e| CodecError::MalformedDocument(e.to_string()))?;
    Ok(triples)
}

fn is_typed(t: &OwnedTriple, class: &str) -> bool {
    t.predicate == RDF_TYPE && matches!(&t.object, Object::Resource(Resource::Iri(c)) if c == class)
}

pub(super) fn decode(standard: Standard, text: &str) -> Result<TargetModel, CodecError> {
    let triples = parse(text)?;
    let cho = provided_cho();
    let wrong = |reason: &str| CodecError::WrongStandard { expected: standard, reason: reason.to_string() };
    let typed_cho = triples.iter().find(|t| is_typed(t, &cho)).map(|t| t.subject.clone());
    let record = match standard {
        Standard::Edm => typed_cho.ok_or_else(|| wrong("no subject is typed edm:ProvidedCHO"))?,
        _ => {
            if typed_cho.is_some() {
                return Err(wrong("a subject is typed edm:ProvidedCHO"));
            }
            triples.first().map(|t| t.subject.clone()).ok_or_else(|| wrong("no triples"))?
        }
    };
    let shown_by = expand(IS_SHOWN_BY);
    let linked: Vec<&Resource> = triples
        .iter()
        .filter(|t| t.subject == record && t.predicate == shown_by)
        .filter_map(|t| match &t.object {
            Object::Resource(r) => Some(r),
            Object::Literal(_) => None,
        })
        .collect();
    let web = web_resource();
    let vocab = vocabulary(standard);
    let mut nodes = Vec::new();
    for t in &triples {
        if t.subject == record && standard == Standard::Edm && is_typed(t, &cho) {
            continue;
        }
        if linked.contains(&&t.subject) && is_typed(t, &web) {
            continue;
        }
        let value = match &t.object {
            Object::Literal(v) => v.clone(),
            Object::Resource(Resource::Iri(i)) => i.clone(),
            Object::Resource(b) => b.render(),
        };
        if value.trim().is_empty() {
            continue;
        }
        let predicate = compact(&t.predicate);
        let path = if t.subject == record {
            let known = ElementPath::new(standard, &[predicate.as_str()]);
            let fits = match (&t.object, predicate.as_str()) {
                (Object::Resource(Resource::Iri(_)), IS_SHOWN_BY) => true,
                (_, IS_SHOWN_BY) | (Object::Resource(Resource::Blank(_)), _) => false,
                _ => true,
            };
            if fits && vocab.contains(&known) {
                known
            } else {
                ElementPath::new(standard, &[UNKNOWN, predicate.as_str()])
            }
        } else {
            ElementPath::new(standard, &[UNKNOWN, t.subject.render().as_str(), predicate.as_str()])
        };
        nodes.push(TargetNode::new(path, value));
    }
    let record_uri = match record {
        Resource::Iri(i) => i,
        Resource::Blank(_) => ANONYMOUS_URI.to_string(),
    };
    Ok(TargetModel { standard, record_uri, nodes })
}

fn expand(pname: &str) -> String {
    let (prefix, local) = pname.split_once(':').expect("prefixed name");
    let ns = PREFIXES.iter().find(|(p, _)| *p == prefix).expect("known prefix").1;
    format!("{ns}{local}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(standard: Standard, term: &str, value: &str) -> TargetNode {
        TargetNode::new(ElementPath::new(standard, &[term]), value)
    }

    #[test]
    fn dc_layout_and_round_trip() {
        let mut m = TargetModel::new(Standard::DublinCore, "https://example.org/ch/NDIGDZS033452");
        m.push(node(Standard::DublinCore, "dc:title", "Plakat \"A\"\nzweite Zeile \\ ende"));
        m.push(node(Standard::DublinCore, "dcterms:created", "1878"));
        let text = encode(&m);
        assert!(text.starts_with("@prefix dc: <http://purl.org/dc/elements/1.1/> .\n"));
        assert!(text.contains("<https://example.org/ch/NDIGDZS033452> dcterms:created \"1878\" .\n"));
        assert!(!text.contains("edm:"));
        assert_eq!(decode(Standard::DublinCore, &text).unwrap(), m);
    }

    #[test]
    fn edm_layout_and_round_trip() {
        let mut m = TargetModel::new(Standard::Edm, "https://example.org/ch/x");
        m.push(node(Standard::Edm, "dc:title", "T"));
        m.push(node(Standard::Edm, "edm:type", "TEXT"));
        m.push(node(Standard::Edm, IS_SHOWN_BY, "https://jbc.bj.uj.edu.pl/publication/602279"));
        let text = encode(&m);
        assert!(text.contains("<https://example.org/ch/x> a edm:ProvidedCHO .\n"));
        assert!(text.contains("<https://jbc.bj.uj.edu.pl/publication/602279> a edm:WebResource .\n"));
        assert_eq!(decode(Standard::Edm, &text).unwrap(), m);
    }

    #[test]
    fn standards_are_told_apart() {
        let mut m = TargetModel::new(Standard::Edm, "https://example.org/ch/x");
        m.push(node(Standard::Edm, "dc:title", "T"));
        let edm = encode(&m);
        assert!(matches!(decode(Standard::DublinCore, &edm), Err(CodecError::WrongStandard { .. })));
        let dc = "<https://e.org/x> <http://purl.org/dc/elements/1.1/title> \"T\" .";
        assert!(matches!(decode(Standard::Edm, dc), Err(CodecError::WrongStandard { .. })));
        assert!(matches!(decode(Standard::DublinCore, "<a> <b"), Err(CodecError::MalformedDocument(_))));
    }

    #[test]
    fn unknown_triples_are_kept() {
        let text = r#"@prefix dc: <http://purl.org/dc/elements/1.1/> .
            <https://e.org/x> dc:title "T"@de ; <https://e.org/p> "v" ; dc:coverage [ dc:title "inner" ] ."#;
        let m = decode(Standard::DublinCore, text).unwrap();
        let paths: Vec<String> = m.nodes.iter().map(|n| n.path.joined()).collect();
        assert_eq!(m.nodes[0].value, "T");
        assert_eq!(paths[1], "unknown/https://e.org/p");
        assert!(paths.iter().any(|p| p.starts_with("unknown/dc:coverage")));
        assert!(paths.iter().any(|p| p.starts_with("unknown/_:") && p.ends_with("/dc:title")));
    }
}
