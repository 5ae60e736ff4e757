//! Presheaves of finite Abelian groups on finite meet-semilattices, and their
//! correspondence with double inductive groupoids.

mod decompose;
mod document;

pub use decompose::{
    component_groups, compose, decompose, dig_from_presheaf, main_theorem_report, orders_coincide_on_objects,
    presheaf_from_dig, shared_idempotents_coincide, Component, Decomposition, MainTheoremReport,
};
pub use document::{BaseDocument, GroupDocument, HomDocument, PresheafDocument};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::tables::{CayleyTable, ElementId};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidPresheaf(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetSemilattice {
    labels: Vec<String>,
    leq: Relation,
    meet: Vec<usize>,
}

impl MeetSemilattice {
    /// Checks that `leq` is a partial order and `meet` its greatest lower bound.
    pub fn new(labels: Vec<String>, leq: Relation, meet: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || leq.size() != n || meet.len() != n * n || meet.iter().any(|&m| m >= n) {
            return Err(invalid("semilattice tables have the wrong shape"));
        }
        leq.check_partial_order().map_err(invalid)?;
        let s = MeetSemilattice { labels, leq, meet };
        for a in 0..n {
            for b in 0..n {
                let m = s.meet(a, b);
                let lower = |h: usize| s.leq(h, a) && s.leq(h, b);
                if !lower(m) || (0..n).any(|h| lower(h) && !s.leq(h, m)) {
                    return Err(invalid(format!(
                        "{} is not the meet of {} and {}",
                        s.labels[m], s.labels[a], s.labels[b]
                    )));
                }
            }
        }
        Ok(s)
    }

    /// A chain `0 < 1 < .. < n-1` with the given labels.
    pub fn chain(labels: Vec<String>) -> Self {
        let n = labels.len();
        let meet = (0..n * n).map(|i| (i / n).min(i % n)).collect();
        MeetSemilattice::new(labels, Relation::from_fn(n, |a, b| a <= b), meet).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(a, b)
    }

    pub fn relation(&self) -> &Relation {
        &self.leq
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    op: CayleyTable,
    unit: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteAbelianGroup {
    /// Checks associativity and commutativity and finds the unit and inverses.
    pub fn new(op: CayleyTable, labels: Option<Vec<String>>) -> Result<Self> {
        let n = op.order();
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(invalid("group labels do not match the order"));
            }
        }
        if let Some((a, b, c)) = op.is_associative().witness() {
            return Err(invalid(format!("group operation not associative at ({a}, {b}, {c})")));
        }
        if let Some((a, b)) = op.is_commutative().witness() {
            return Err(invalid(format!("group operation not commutative at ({a}, {b})")));
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|x| op.mul(e, x) == x))
            .ok_or_else(|| invalid("group operation has no unit"))?;
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| op.mul(x, y) == unit)
                    .ok_or_else(|| invalid(format!("element {} has no inverse", x + 1)))
            })
            .collect::<Result<_>>()?;
        Ok(FiniteAbelianGroup { op, unit, inverse, labels })
    }

    /// `Z_n` with `k` represented by index `k`.
    pub fn cyclic(n: usize) -> Self {
        let op = CayleyTable::from_fn(n, |a, b| ElementId::from_index((a.index() + b.index()) % n));
        FiniteAbelianGroup::new(op, None).unwrap()
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.op.order()
    }

    pub fn op(&self) -> &CayleyTable {
        &self.op
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op.mul(a, b)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(invalid("group labels do not match the order"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// First pair where `f` fails to preserve products.
    pub fn homomorphism_failure(&self, target: &FiniteAbelianGroup, f: &[usize]) -> Option<(usize, usize)> {
        if f.len() != self.order() || f.iter().any(|&y| y >= target.order()) {
            return Some((usize::MAX, usize::MAX));
        }
        let n = self.order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| f[self.mul(a, b)] != target.mul(f[a], f[b]))
    }
}

/// Contravariant functor from a meet-semilattice to finite Abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresheaf {
    base: MeetSemilattice,
    groups: Vec<FiniteAbelianGroup>,
    /// `(a, b)` with `a <= b` maps the group at `b` to the group at `a`.
    homs: BTreeMap<(usize, usize), Vec<usize>>,
}

impl AbelianGroupPresheaf {
    /// Checks that every comparable pair has a homomorphism, identities go to
    /// identities and composites to composites.
    pub fn new(
        base: MeetSemilattice,
        groups: Vec<FiniteAbelianGroup>,
        homs: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self> {
        let n = base.len();
        if groups.len() != n {
            return Err(invalid("one group per base element is required"));
        }
        let name = |a: usize| &base.labels[a];
        for (&(a, b), f) in &homs {
            if a >= n || b >= n || !base.leq(a, b) {
                return Err(invalid(format!("map given for an incomparable pair ({a}, {b})")));
            }
            if let Some((x, y)) = groups[b].homomorphism_failure(&groups[a], f) {
                return Err(invalid(format!(
                    "map {} -> {} is not a homomorphism (at {}, {})",
                    name(b),
                    name(a),
                    x.wrapping_add(1),
                    y.wrapping_add(1)
                )));
            }
        }
        let p = AbelianGroupPresheaf { base, groups, homs };
        let name = |a: usize| &p.base.labels[a];
        for a in 0..n {
            for b in 0..n {
                if p.base.leq(a, b) && !p.homs.contains_key(&(a, b)) {
                    return Err(invalid(format!("missing map for {} <= {}", name(a), name(b))));
                }
            }
            if p.homs[&(a, a)].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(invalid(format!("map at {} is not the identity", name(a))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !(p.base.leq(a, b) && p.base.leq(b, c)) {
                        continue;
                    }
                    let (ab, bc, ac) = (p.hom(a, b), p.hom(b, c), p.hom(a, c));
                    if (0..p.groups[c].order()).any(|x| ab[bc[x]] != ac[x]) {
                        return Err(invalid(format!(
                            "maps for {} <= {} <= {} do not compose",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn base(&self) -> &MeetSemilattice {
        &self.base
    }

    pub fn group(&self, a: usize) -> &FiniteAbelianGroup {
        &self.groups[a]
    }

    pub fn groups(&self) -> &[FiniteAbelianGroup] {
        &self.groups
    }

    /// The restriction map for `a <= b`.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[&(a, b)]
    }

    pub fn homs(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.homs
    }

    /// Total number of group elements.
    pub fn total_size(&self) -> usize {
        self.groups.iter().map(|g| g.order()).sum()
    }
}

/// A base map with one group homomorphism per base element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMorphism {
    pub base_map: Vec<usize>,
    /// `components[a]` maps the group at `a` to the group at `base_map[a]`.
    pub components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    pub fn identity(p: &AbelianGroupPresheaf) -> Self {
        PresheafMorphism {
            base_map: (0..p.base.len()).collect(),
            components: p.groups.iter().map(|g| (0..g.order()).collect()).collect(),
        }
    }

    /// Checks order and meet preservation, the homomorphism property and
    /// every naturality square.
    pub fn check(&self, p: &AbelianGroupPresheaf, q: &AbelianGroupPresheaf) -> Result<()> {
        let n = p.base.len();
        let f = &self.base_map;
        if f.len() != n || self.components.len() != n || f.iter().any(|&x| x >= q.base.len()) {
            return Err(invalid("morphism has the wrong shape"));
        }
        for a in 0..n {
            for b in 0..n {
                if p.base.leq(a, b) && !q.base.leq(f[a], f[b]) {
                    return Err(invalid(format!("base map does not preserve {a} <= {b}")));
                }
                if f[p.base.meet(a, b)] != q.base.meet(f[a], f[b]) {
                    return Err(invalid(format!("base map does not preserve the meet of {a} and {b}")));
                }
            }
        }
        for (a, (g, &fa)) in p.groups.iter().zip(f).enumerate() {
            if g.homomorphism_failure(&q.groups[fa], &self.components[a]).is_some() {
                return Err(invalid(format!("component at {a} is not a homomorphism")));
            }
        }
        for (&(a, b), pab) in &p.homs {
            let qab = q.hom(f[a], f[b]);
            for x in 0..p.groups[b].order() {
                if self.components[a][pab[x]] != qab[self.components[b][x]] {
                    return Err(invalid(format!("naturality fails for {a} <= {b} at element {}", x + 1)));
                }
            }
        }
        Ok(())
    }
}

pub mod fixtures {
    //! Small presheaves used in tests and bundled data.

    use super::*;

    /// `Z_n` on a one-point base.
    pub fn point(n: usize) -> AbelianGroupPresheaf {
        let base = MeetSemilattice::chain(vec!["A".into()]);
        let homs = BTreeMap::from([((0, 0), (0..n).collect())]);
        AbelianGroupPresheaf::new(base, vec![FiniteAbelianGroup::cyclic(n)], homs).unwrap()
    }

    /// Trivial group below `Z_2`, the map collapsing everything.
    pub fn collapsing_chain() -> AbelianGroupPresheaf {
        let base = MeetSemilattice::chain(vec!["e0".into(), "e1".into()]);
        let homs = BTreeMap::from([((0, 0), vec![0]), ((0, 1), vec![0, 0]), ((1, 1), vec![0, 1])]);
        let groups = vec![FiniteAbelianGroup::trivial(), FiniteAbelianGroup::cyclic(2)];
        AbelianGroupPresheaf::new(base, groups, homs).unwrap()
    }

    /// Base `bot < a, b < top` carrying trivial, `Z_2`, `Z_3` and `Z_6`, with
    /// reduction maps.
    pub fn diamond() -> AbelianGroupPresheaf {
        let labels = ["bot", "a", "b", "top"].map(String::from).to_vec();
        let leq = Relation::from_fn(4, |x, y| x == y || x == 0 || y == 3);
        let meet = (0..16)
            .map(|i| match (i / 4, i % 4) {
                (x, y) if x == y => x,
                (3, y) | (y, 3) => y,
                _ => 0,
            })
            .collect();
        let base = MeetSemilattice::new(labels, leq, meet).unwrap();
        let orders = [1, 2, 3, 6];
        let groups = orders.iter().map(|&n| FiniteAbelianGroup::cyclic(n)).collect();
        let mut homs = BTreeMap::new();
        for x in 0..4 {
            for y in 0..4 {
                if base.leq(x, y) {
                    homs.insert((x, y), (0..orders[y]).map(|k| k % orders[x]).collect());
                }
            }
        }
        AbelianGroupPresheaf::new(base, groups, homs).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_checks() {
        let z3 = FiniteAbelianGroup::cyclic(3);
        assert_eq!((z3.unit(), z3.inverse(1)), (0, 2));
        let proj = CayleyTable::from_rows(&[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(FiniteAbelianGroup::new(proj, None).is_err());
        let null = CayleyTable::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(FiniteAbelianGroup::new(null, None).is_err());
    }

    #[test]
    fn semilattice_checks() {
        let n = 2;
        let bad = MeetSemilattice::new(
            vec!["a".into(), "b".into()],
            Relation::from_fn(n, |a, b| a <= b),
            vec![0, 1, 1, 1],
        );
        assert!(bad.is_err());
        assert_eq!(MeetSemilattice::chain(vec!["x".into(), "y".into()]).meet(1, 0), 0);
    }

    #[test]
    fn presheaf_checks() {
        let p = fixtures::collapsing_chain();
        assert_eq!(p.total_size(), 3);
        let mut homs = p.homs().clone();
        homs.insert((0, 1), vec![0, 1]);
        assert!(AbelianGroupPresheaf::new(p.base().clone(), p.groups().to_vec(), homs).is_err());
        let mut homs = p.homs().clone();
        homs.remove(&(0, 1));
        assert!(AbelianGroupPresheaf::new(p.base().clone(), p.groups().to_vec(), homs).is_err());
    }

    #[test]
    fn non_homomorphism_rejected() {
        let base = MeetSemilattice::chain(vec!["a".into(), "b".into()]);
        let groups = vec![FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(3)];
        let homs = BTreeMap::from([((0, 0), vec![0, 1]), ((1, 1), vec![0, 1, 2]), ((0, 1), vec![0, 1, 1])]);
        assert!(AbelianGroupPresheaf::new(base, groups, homs).is_err());
    }

    #[test]
    fn morphism_naturality() {
        let p = fixtures::collapsing_chain();
        let id = PresheafMorphism::identity(&p);
        assert!(id.check(&p, &p).is_ok());
        let q = fixtures::point(2);
        // collapse the base onto the point, send Z_2 identically
        let m = PresheafMorphism { base_map: vec![0, 0], components: vec![vec![0], vec![0, 1]] };
        assert!(m.check(&p, &q).is_err());
        let m = PresheafMorphism { base_map: vec![0, 0], components: vec![vec![0], vec![0, 0]] };
        assert!(m.check(&p, &q).is_ok());
    }
}
