use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AbelianGroupPresheaf, FiniteAbelianGroup, MeetSemilattice};
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::tables::CayleyTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDocument {
    pub elements: Vec<String>,
    /// Pairs `[a, b]` with `a <= b`; reflexive pairs may be omitted.
    pub leq: Vec<[String; 2]>,
    /// Triples `[a, b, a ^ b]`; derived from `leq` when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meets: Option<Vec<[String; 3]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    /// Base element carrying this group.
    pub at: String,
    pub size: usize,
    /// 1-based Cayley table.
    pub op: Vec<Vec<usize>>,
    /// 1-based unit, checked when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// The map from the group at `upper` to the group at `lower`, 1-based.
/// Identity maps may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDocument {
    pub lower: String,
    pub upper: String,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafDocument {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default = "kind")]
    pub kind: String,
    pub base: BaseDocument,
    pub groups: Vec<GroupDocument>,
    pub homs: Vec<HomDocument>,
}

fn schema_version() -> u32 {
    crate::SCHEMA_VERSION
}

fn kind() -> String {
    "abelian_group_presheaf".to_string()
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

impl PresheafDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| doc_err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Resolves labels and validates the result.
    pub fn to_presheaf(&self) -> Result<AbelianGroupPresheaf> {
        if self.kind != kind() {
            return Err(doc_err(format!("expected kind {:?}, found {:?}", kind(), self.kind)));
        }
        let labels = &self.base.elements;
        let n = labels.len();
        let find = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| doc_err(format!("unknown base element {l:?}")))
        };
        let mut leq = Relation::identity(n);
        for [a, b] in &self.base.leq {
            leq.insert(find(a)?, find(b)?);
        }
        let meet = match &self.base.meets {
            Some(triples) => {
                let mut m = vec![None; n * n];
                for [a, b, c] in triples {
                    m[find(a)? * n + find(b)?] = Some(find(c)?);
                }
                m.into_iter()
                    .enumerate()
                    .map(|(i, x)| x.ok_or_else(|| doc_err(format!("missing meet of {} and {}", labels[i / n], labels[i % n]))))
                    .collect::<Result<Vec<_>>>()?
            }
            None => derive_meets(labels, &leq)?,
        };
        let base = MeetSemilattice::new(labels.clone(), leq, meet)?;

        let mut groups: Vec<Option<FiniteAbelianGroup>> = vec![None; n];
        for g in &self.groups {
            let at = find(&g.at)?;
            if g.op.len() != g.size {
                return Err(doc_err(format!("group at {} has {} rows, expected {}", g.at, g.op.len(), g.size)));
            }
            let group = FiniteAbelianGroup::new(CayleyTable::from_rows(&g.op)?, g.labels.clone())?;
            if g.unit.is_some_and(|u| u != group.unit() + 1) {
                return Err(Error::InvalidPresheaf(format!("group at {} has a different unit", g.at)));
            }
            if groups[at].replace(group).is_some() {
                return Err(doc_err(format!("two groups at {}", g.at)));
            }
        }
        let groups = groups
            .into_iter()
            .enumerate()
            .map(|(a, g)| g.ok_or_else(|| doc_err(format!("no group at {}", labels[a]))))
            .collect::<Result<Vec<_>>>()?;

        let mut homs = BTreeMap::new();
        for (a, g) in groups.iter().enumerate() {
            homs.insert((a, a), (0..g.order()).collect::<Vec<_>>());
        }
        for h in &self.homs {
            let map = h
                .map
                .iter()
                .map(|&x| x.checked_sub(1).ok_or_else(|| doc_err("map entries are 1-based")))
                .collect::<Result<Vec<_>>>()?;
            homs.insert((find(&h.lower)?, find(&h.upper)?), map);
        }
        AbelianGroupPresheaf::new(base, groups, homs)
    }
}

fn derive_meets(labels: &[String], leq: &Relation) -> Result<Vec<usize>> {
    let n = labels.len();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let lower = |h: usize| leq.contains(h, a) && leq.contains(h, b);
            let m = (0..n)
                .find(|&m| lower(m) && (0..n).all(|h| !lower(h) || leq.contains(h, m)))
                .ok_or_else(|| Error::InvalidPresheaf(format!("{} and {} have no meet", labels[a], labels[b])))?;
            out.push(m);
        }
    }
    Ok(out)
}

impl AbelianGroupPresheaf {
    /// Strict pairs only; identity maps are left implicit.
    pub fn to_document(&self) -> PresheafDocument {
        let base = self.base();
        let l = |a: usize| base.labels()[a].clone();
        let n = base.len();
        let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b))).filter(move |&(a, b)| a != b && base.leq(a, b));
        PresheafDocument {
            schema_version: schema_version(),
            kind: kind(),
            base: BaseDocument {
                elements: base.labels().to_vec(),
                leq: pairs().map(|(a, b)| [l(a), l(b)]).collect(),
                meets: Some(
                    (0..n)
                        .flat_map(|a| (0..n).map(move |b| (a, b)))
                        .map(|(a, b)| [l(a), l(b), l(base.meet(a, b))])
                        .collect(),
                ),
            },
            groups: self
                .groups()
                .iter()
                .enumerate()
                .map(|(a, g)| GroupDocument {
                    at: l(a),
                    size: g.order(),
                    op: g.op().rows(),
                    unit: Some(g.unit() + 1),
                    labels: g.labels().map(<[String]>::to_vec),
                })
                .collect(),
            homs: pairs()
                .map(|(a, b)| HomDocument {
                    lower: l(a),
                    upper: l(b),
                    map: self.hom(a, b).iter().map(|x| x + 1).collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::fixtures;

    #[test]
    fn json_round_trip() {
        for p in [fixtures::collapsing_chain(), fixtures::diamond()] {
            let doc = p.to_document();
            let back = PresheafDocument::from_json(&doc.to_json()).unwrap();
            assert_eq!(back.to_presheaf().unwrap(), p);
        }
    }

    #[test]
    fn meets_derived_when_omitted() {
        let p = fixtures::diamond();
        let mut doc = p.to_document();
        doc.base.meets = None;
        assert_eq!(doc.to_presheaf().unwrap(), p);
    }

    #[test]
    fn bad_documents() {
        let mut doc = fixtures::collapsing_chain().to_document();
        doc.homs[0].map = vec![0, 1];
        assert!(doc.to_presheaf().is_err());
        let mut doc = fixtures::collapsing_chain().to_document();
        doc.groups.pop();
        assert!(matches!(doc.to_presheaf(), Err(Error::Document(_))));
        let mut doc = fixtures::collapsing_chain().to_document();
        doc.groups[1].unit = Some(2);
        assert!(matches!(doc.to_presheaf(), Err(Error::InvalidPresheaf(_))));
    }
}
