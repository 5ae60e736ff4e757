use serde::{Deserialize, Serialize};

use super::DoubleInductiveGroupoid;
use crate::error::{Error, Result};
use crate::esn::GroupoidDocument;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigObjectEntry {
    pub label: String,
    /// Label of the vertical arrow naming this object.
    pub ver: String,
    /// Label of the horizontal arrow naming this object.
    pub hor: String,
}

/// JSON form of a [`DoubleInductiveGroupoid`]: the horizontal groupoid has
/// the vertical arrows as objects, the vertical groupoid the horizontal ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigDocument {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default = "kind")]
    pub kind: String,
    pub objects: Vec<DigObjectEntry>,
    pub horizontal: GroupoidDocument,
    pub vertical: GroupoidDocument,
}

fn schema_version() -> u32 {
    crate::SCHEMA_VERSION
}

fn kind() -> String {
    "double_inductive_groupoid".to_string()
}

impl DigDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Resolves labels; the result is not validated.
    pub fn to_dig(&self) -> Result<DoubleInductiveGroupoid> {
        if self.kind != kind() {
            return Err(Error::Document(format!("expected kind {:?}, found {:?}", kind(), self.kind)));
        }
        let horizontal = self.horizontal.to_groupoid()?;
        let vertical = self.vertical.to_groupoid()?;
        let find = |labels: &[String], what: &str, l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::Document(format!("unknown {what} {l:?}")))
        };
        let mut object_ver = Vec::new();
        let mut object_hor = Vec::new();
        for o in &self.objects {
            object_ver.push(find(&horizontal.object_labels, "vertical arrow", &o.ver)?);
            object_hor.push(find(&vertical.object_labels, "horizontal arrow", &o.hor)?);
        }
        Ok(DoubleInductiveGroupoid {
            object_labels: self.objects.iter().map(|o| o.label.clone()).collect(),
            object_ver,
            object_hor,
            horizontal,
            vertical,
        })
    }
}

impl DoubleInductiveGroupoid {
    pub fn to_document(&self) -> DigDocument {
        let mut horizontal = self.horizontal.to_document();
        let mut vertical = self.vertical.to_document();
        horizontal.schema_version = schema_version();
        vertical.schema_version = schema_version();
        DigDocument {
            schema_version: schema_version(),
            kind: kind(),
            objects: (0..self.object_count())
                .map(|o| DigObjectEntry {
                    label: self.object_labels[o].clone(),
                    ver: self.horizontal.object_labels[self.object_ver[o]].clone(),
                    hor: self.vertical.object_labels[self.object_hor[o]].clone(),
                })
                .collect(),
            horizontal,
            vertical,
        }
    }

    /// Cells as nodes, with horizontal composites drawn solid and vertical
    /// ones dashed. Only composites of non-identity cells are drawn.
    pub fn to_dot(&self) -> String {
        let q = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let labels = self.cell_labels();
        let mut out = String::from("digraph double_groupoid {\n");
        for l in labels {
            out.push_str(&format!("  {};\n", q(l)));
        }
        for (g, style) in [(&self.horizontal, "solid"), (&self.vertical, "dashed")] {
            for x in 0..g.arrow_count() {
                if g.is_identity(x) {
                    continue;
                }
                let (d, c) = (g.identity[g.dom[x]], g.identity[g.cod[x]]);
                out.push_str(&format!(
                    "  {} -> {} [label={}, style={style}];\n",
                    q(&labels[d]),
                    q(&labels[c]),
                    q(&labels[x])
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::{dig_from_dis, DoubleSemigroup};
    use crate::tables::fixtures::clifford3;

    #[test]
    fn json_round_trip() {
        let t = clifford3();
        let g = dig_from_dis(&DoubleSemigroup::new(t.clone(), t).unwrap()).unwrap();
        let doc = g.to_document();
        let back = DigDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.to_dig().unwrap(), g);
    }

    #[test]
    fn unknown_object_arrow() {
        let t = clifford3();
        let g = dig_from_dis(&DoubleSemigroup::new(t.clone(), t).unwrap()).unwrap();
        let mut doc = g.to_document();
        doc.objects[0].ver = "zz".into();
        assert!(matches!(doc.to_dig(), Err(Error::Document(_))));
    }
}
