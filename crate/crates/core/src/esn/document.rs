use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{derive_operations, InductiveGroupoid};
use crate::error::{Error, Result};
use crate::relation::{PartialTable, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectEntry {
    pub label: String,
    /// Label of the identity arrow.
    pub identity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub label: String,
    pub dom: String,
    pub cod: String,
}

/// Label-based JSON form of an [`InductiveGroupoid`].
///
/// `leq` is closed under reflexivity on load. Omitted `inverse`, `meets`,
/// `restriction` and `corestriction` are derived from the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDocument {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default = "kind")]
    pub kind: String,
    pub objects: Vec<ObjectEntry>,
    pub arrows: Vec<ArrowEntry>,
    /// `[x, y, x;y]`
    pub compose: Vec<[String; 3]>,
    pub leq: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meets: Option<Vec<[String; 3]>>,
    /// `[e, x, (e *| x)]`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<Vec<[String; 3]>>,
    /// `[x, e, (x |* e)]`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corestriction: Option<Vec<[String; 3]>>,
}

fn schema_version() -> u32 {
    crate::SCHEMA_VERSION
}

fn kind() -> String {
    "inductive_groupoid".to_string()
}

pub(crate) fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn index_labels<'a>(what: &str, labels: impl Iterator<Item = &'a String>) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, l) in labels.enumerate() {
        if map.insert(l.clone(), i).is_some() {
            return Err(Error::Document(format!("duplicate {what} label {l:?}")));
        }
    }
    Ok(map)
}

fn lookup(map: &HashMap<String, usize>, what: &str, label: &str) -> Result<usize> {
    map.get(label)
        .copied()
        .ok_or_else(|| Error::Document(format!("unknown {what} {label:?}")))
}

impl GroupoidDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("groupoid documents serialize")
    }

    /// Resolves labels; the result is not validated.
    pub fn to_groupoid(&self) -> Result<InductiveGroupoid> {
        if self.kind != kind() {
            return Err(Error::Document(format!("expected kind {:?}, found {:?}", kind(), self.kind)));
        }
        let objs = index_labels("object", self.objects.iter().map(|o| &o.label))?;
        let arrs = index_labels("arrow", self.arrows.iter().map(|a| &a.label))?;
        let (no, na) = (objs.len(), arrs.len());
        let obj = |l: &str| lookup(&objs, "object", l);
        let arr = |l: &str| lookup(&arrs, "arrow", l);

        let identity = self.objects.iter().map(|o| arr(&o.identity)).collect::<Result<_>>()?;
        let dom = self.arrows.iter().map(|a| obj(&a.dom)).collect::<Result<_>>()?;
        let cod = self.arrows.iter().map(|a| obj(&a.cod)).collect::<Result<_>>()?;
        let mut compose = PartialTable::undefined(na, na);
        for [x, y, z] in &self.compose {
            compose.set(arr(x)?, arr(y)?, Some(arr(z)?));
        }
        let mut leq = Relation::identity(na);
        for [x, y] in &self.leq {
            leq.insert(arr(x)?, arr(y)?);
        }
        let mut g = InductiveGroupoid {
            object_labels: self.objects.iter().map(|o| o.label.clone()).collect(),
            arrow_labels: self.arrows.iter().map(|a| a.label.clone()).collect(),
            identity,
            dom,
            cod,
            compose,
            inverse: Vec::new(),
            leq,
            object_meet: PartialTable::undefined(no, no),
            restriction: PartialTable::undefined(no, na),
            corestriction: PartialTable::undefined(na, no),
        };
        if g.identity.is_empty() {
            return Err(Error::Document("no objects".into()));
        }
        derive_operations(&mut g);
        if let Some(inv) = &self.inverse {
            for [x, y] in inv {
                g.inverse[arr(x)?] = arr(y)?;
            }
        }
        if let Some(meets) = &self.meets {
            g.object_meet = PartialTable::undefined(no, no);
            for [e, f, m] in meets {
                g.object_meet.set(obj(e)?, obj(f)?, Some(obj(m)?));
            }
        }
        if let Some(rs) = &self.restriction {
            g.restriction = PartialTable::undefined(no, na);
            for [e, x, y] in rs {
                g.restriction.set(obj(e)?, arr(x)?, Some(arr(y)?));
            }
        }
        if let Some(rs) = &self.corestriction {
            g.corestriction = PartialTable::undefined(na, no);
            for [x, e, y] in rs {
                g.corestriction.set(arr(x)?, obj(e)?, Some(arr(y)?));
            }
        }
        Ok(g)
    }
}

impl InductiveGroupoid {
    /// Complete label-based export with every operation spelled out.
    pub fn to_document(&self) -> GroupoidDocument {
        let a = |x: usize| self.arrow_labels[x].clone();
        let o = |e: usize| self.object_labels[e].clone();
        GroupoidDocument {
            schema_version: schema_version(),
            kind: kind(),
            objects: (0..self.object_count())
                .map(|e| ObjectEntry { label: o(e), identity: a(self.identity[e]) })
                .collect(),
            arrows: (0..self.arrow_count())
                .map(|x| ArrowEntry { label: a(x), dom: o(self.dom[x]), cod: o(self.cod[x]) })
                .collect(),
            compose: self.compose.entries().map(|(x, y, z)| [a(x), a(y), a(z)]).collect(),
            leq: self.leq.pairs().map(|(x, y)| [a(x), a(y)]).collect(),
            inverse: Some(self.inverse.iter().enumerate().map(|(x, &y)| [a(x), a(y)]).collect()),
            meets: Some(self.object_meet.entries().map(|(e, f, m)| [o(e), o(f), o(m)]).collect()),
            restriction: Some(self.restriction.entries().map(|(e, x, y)| [o(e), a(x), a(y)]).collect()),
            corestriction: Some(self.corestriction.entries().map(|(x, e, y)| [a(x), o(e), a(y)]).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esn::{ig_from_is, validate_ig};
    use crate::inverse::analyze_inverse;
    use crate::tables::fixtures::brandt_b2;

    #[test]
    fn json_round_trip() {
        let g = ig_from_is(&analyze_inverse(&brandt_b2()).unwrap());
        let doc = g.to_document();
        let back = GroupoidDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_groupoid().unwrap(), g);
    }

    #[test]
    fn omitted_operations_are_derived() {
        let g = ig_from_is(&analyze_inverse(&brandt_b2()).unwrap());
        let mut doc = g.to_document();
        doc.inverse = None;
        doc.meets = None;
        doc.restriction = None;
        doc.corestriction = None;
        let h = doc.to_groupoid().unwrap();
        assert_eq!(h, g);
        assert!(validate_ig(&h).is_valid());
    }

    #[test]
    fn label_errors() {
        let g = ig_from_is(&analyze_inverse(&brandt_b2()).unwrap());
        let mut doc = g.to_document();
        doc.compose[0][2] = "nine".into();
        assert!(matches!(doc.to_groupoid(), Err(Error::Document(m)) if m.contains("nine")));
        let mut doc = g.to_document();
        doc.arrows[1].label = "1".into();
        assert!(matches!(doc.to_groupoid(), Err(Error::Document(m)) if m.contains("duplicate")));
        assert!(GroupoidDocument::from_json("{").is_err());
    }

    #[test]
    fn quoting() {
        assert_eq!(dot_quote("a\"b"), "\"a\\\"b\"");
    }
}
