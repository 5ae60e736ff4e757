//! Recognition of inverse semigroups and extraction of their order structure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::tables::{CayleyTable, ElementId, Verdict};

/// An inverse semigroup together with the structure derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSemigroupAnalysis {
    table: CayleyTable,
    inverse: Vec<ElementId>,
    idempotents: Vec<ElementId>,
    leq: Relation,
}

/// Scans every candidate `x` for each `a`; the table must be associative and
/// each element must have exactly one `x` with `axa = a` and `xax = x`.
pub fn analyze_inverse(table: &CayleyTable) -> Result<InverseSemigroupAnalysis> {
    table.require_semigroup()?;
    let mut inverse = Vec::with_capacity(table.order());
    for a in table.elements() {
        let mut candidates = table.elements().filter(|&x| {
            table.product(table.product(a, x), a) == a && table.product(table.product(x, a), x) == x
        });
        match (candidates.next(), candidates.next()) {
            (None, _) => return Err(Error::NoInverse(a)),
            (Some(first), Some(second)) => {
                return Err(Error::NonUniqueInverse { element: a, first, second })
            }
            (Some(x), None) => inverse.push(x),
        }
    }
    let idempotents = table.idempotents();
    let n = table.order();
    let mut leq = Relation::empty(n);
    for &e in &idempotents {
        for b in table.elements() {
            leq.insert(table.product(e, b).index(), b.index());
        }
    }
    leq.check_partial_order().map_err(Error::OrderAxiomViolation)?;
    Ok(InverseSemigroupAnalysis { table: table.clone(), inverse, idempotents, leq })
}

impl InverseSemigroupAnalysis {
    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn inverse(&self, a: ElementId) -> ElementId {
        self.inverse[a.index()]
    }

    pub fn inverse_map(&self) -> &[ElementId] {
        &self.inverse
    }

    pub fn idempotents(&self) -> &[ElementId] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, e: ElementId) -> bool {
        self.table.is_idempotent(e)
    }

    /// `a a^-1`.
    pub fn domain(&self, a: ElementId) -> ElementId {
        self.table.product(a, self.inverse(a))
    }

    /// `a^-1 a`.
    pub fn codomain(&self, a: ElementId) -> ElementId {
        self.table.product(self.inverse(a), a)
    }

    /// The natural partial order: `a <= b` iff `a = eb` for an idempotent `e`.
    pub fn natural_partial_order(&self) -> &Relation {
        &self.leq
    }

    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq.contains(a.index(), b.index())
    }

    /// Elements below `b`, ascending.
    pub fn below(&self, b: ElementId) -> Vec<ElementId> {
        self.table.elements().filter(|&a| self.leq(a, b)).collect()
    }

    /// Meet of two idempotents, which is their product; checked to be the
    /// greatest lower bound.
    pub fn idempotent_meet(&self, e: ElementId, f: ElementId) -> Result<ElementId> {
        for x in [e, f] {
            if !self.is_idempotent(x) {
                return Err(Error::NotIdempotent(x));
            }
        }
        let m = self.table.product(e, f);
        let is_lower = |g: ElementId| self.leq(g, e) && self.leq(g, f);
        if !is_lower(m) {
            return Err(Error::OrderAxiomViolation(format!("{e}*{f} = {m} is not below both")));
        }
        if let Some(g) = self.table.elements().find(|&g| is_lower(g) && !self.leq(g, m)) {
            return Err(Error::OrderAxiomViolation(format!(
                "{g} is a lower bound of {e} and {f} not below {e}*{f}"
            )));
        }
        Ok(m)
    }

    /// Least `x` with `x x^-1 != x^-1 x`.
    pub fn is_clifford(&self) -> Verdict<ElementId> {
        match self.table.elements().find(|&x| self.domain(x) != self.codomain(x)) {
            None => Verdict::Holds,
            Some(x) => Verdict::Fails(x),
        }
    }

    /// Covering pairs of the idempotent semilattice.
    pub fn hasse_pairs(&self) -> Vec<(ElementId, ElementId)> {
        let idx: Vec<usize> = self.idempotents.iter().map(|e| e.index()).collect();
        self.leq
            .covering_pairs(&idx)
            .into_iter()
            .map(|(a, b)| (ElementId::from_index(a), ElementId::from_index(b)))
            .collect()
    }

    /// DOT rendering of the idempotent semilattice, smaller elements at the bottom.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph semilattice {\n  rankdir=BT;\n");
        for e in &self.idempotents {
            out.push_str(&format!("  \"{e}\";\n"));
        }
        for (a, b) in self.hasse_pairs() {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_document(&self) -> AnalysisDocument {
        let mut meets = Vec::new();
        for &e in &self.idempotents {
            for &f in &self.idempotents {
                meets.push([e, f, self.table.product(e, f)]);
            }
        }
        AnalysisDocument {
            schema_version: crate::SCHEMA_VERSION,
            order: self.order(),
            table: self.table.rows(),
            inverse_map: self.inverse.clone(),
            idempotents: self.idempotents.clone(),
            leq: self
                .leq
                .pairs()
                .map(|(a, b)| [ElementId::from_index(a), ElementId::from_index(b)])
                .collect(),
            meets,
            hasse: self.hasse_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// JSON export of an [`InverseSemigroupAnalysis`]; all labels are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisDocument {
    pub schema_version: u32,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    /// Position `a` holds the inverse of element `a`.
    pub inverse_map: Vec<ElementId>,
    pub idempotents: Vec<ElementId>,
    pub leq: Vec<[ElementId; 2]>,
    pub meets: Vec<[ElementId; 3]>,
    pub hasse: Vec<[ElementId; 2]>,
}

/// The characterisation of inverse semigroups among regular ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub is_regular: bool,
    pub idempotents_commute: bool,
    pub is_inverse: bool,
    /// `(regular && idempotents commute) <=> inverse`.
    pub equivalence_holds: bool,
}

/// Inverse iff regular with commuting idempotents.
pub fn check_regular_inverse_equivalence(table: &CayleyTable) -> Result<RegularityReport> {
    let is_regular = table.is_regular()?.holds();
    let idempotents = table.idempotents();
    let idempotents_commute = idempotents.iter().all(|&e| {
        idempotents
            .iter()
            .all(|&f| table.product(e, f) == table.product(f, e))
    });
    let is_inverse = match analyze_inverse(table) {
        Ok(_) => true,
        Err(Error::NoInverse(_) | Error::NonUniqueInverse { .. }) => false,
        Err(other) => return Err(other),
    };
    let equivalence_holds = (is_regular && idempotents_commute) == is_inverse;
    if !equivalence_holds {
        return Err(Error::TheoremViolation(format!(
            "regular={is_regular}, idempotents commute={idempotents_commute}, inverse={is_inverse}"
        )));
    }
    Ok(RegularityReport { is_regular, idempotents_commute, is_inverse, equivalence_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::fixtures::*;

    fn e(label: usize) -> ElementId {
        ElementId::from_label(label).unwrap()
    }

    fn labels(xs: &[ElementId]) -> Vec<usize> {
        xs.iter().map(|x| x.label()).collect()
    }

    #[test]
    fn brandt_inverses() {
        let a = analyze_inverse(&brandt_b2()).unwrap();
        assert_eq!(labels(a.inverse_map()), vec![1, 3, 2, 4, 5]);
        assert_eq!(labels(a.idempotents()), vec![1, 4, 5]);
    }

    #[test]
    fn projections_have_many_inverses() {
        assert_eq!(
            analyze_inverse(&left_zero(2)),
            Err(Error::NonUniqueInverse { element: e(1), first: e(1), second: e(2) })
        );
    }

    #[test]
    fn group_inverses() {
        let a = analyze_inverse(&cyclic_group(3)).unwrap();
        assert_eq!(labels(a.inverse_map()), vec![1, 3, 2]);
        let a = analyze_inverse(&cyclic_group(2)).unwrap();
        assert_eq!(labels(a.inverse_map()), vec![1, 2]);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let null = CayleyTable::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(analyze_inverse(&null), Err(Error::NoInverse(e(2))));
        let bad = CayleyTable::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert!(matches!(analyze_inverse(&bad), Err(Error::NotASemigroup(..))));
    }

    #[test]
    fn regular_inverse_reports() {
        let r = check_regular_inverse_equivalence(&brandt_b2()).unwrap();
        assert!(r.is_regular && r.idempotents_commute && r.is_inverse && r.equivalence_holds);
        let r = check_regular_inverse_equivalence(&left_zero(2)).unwrap();
        assert!(r.is_regular && !r.idempotents_commute && !r.is_inverse && r.equivalence_holds);
        let r = check_regular_inverse_equivalence(&cyclic_group(4)).unwrap();
        assert!(r.is_regular && r.idempotents_commute && r.is_inverse);
    }

    #[test]
    fn natural_order_on_brandt() {
        let a = analyze_inverse(&brandt_b2()).unwrap();
        assert_eq!(labels(&a.below(e(2))), vec![1, 2]);
        assert!(a.leq(e(1), e(4)) && a.leq(e(1), e(5)));
        assert!(!a.leq(e(4), e(5)) && !a.leq(e(5), e(4)));
        assert_eq!(a.hasse_pairs(), vec![(e(1), e(4)), (e(1), e(5))]);
    }

    #[test]
    fn group_order_is_equality() {
        let a = analyze_inverse(&cyclic_group(4)).unwrap();
        assert_eq!(a.natural_partial_order(), &Relation::identity(4));
    }

    #[test]
    fn meets_of_idempotents() {
        let a = analyze_inverse(&brandt_b2()).unwrap();
        assert_eq!(a.idempotent_meet(e(4), e(5)).unwrap(), e(1));
        assert_eq!(a.idempotent_meet(e(1), e(4)).unwrap(), e(1));
        assert_eq!(a.idempotent_meet(e(5), e(5)).unwrap(), e(5));
        assert_eq!(a.idempotent_meet(e(2), e(5)), Err(Error::NotIdempotent(e(2))));
    }

    #[test]
    fn clifford_test() {
        let a = analyze_inverse(&brandt_b2()).unwrap();
        // 2*3 = 4 but 3*2 = 5
        assert_eq!(a.is_clifford(), Verdict::Fails(e(2)));
        assert!(analyze_inverse(&chain(3)).unwrap().is_clifford().holds());
        assert!(analyze_inverse(&clifford3()).unwrap().is_clifford().holds());
        assert!(analyze_inverse(&cyclic_group(5)).unwrap().is_clifford().holds());
    }

    #[test]
    fn hasse_dot_lists_covers() {
        let dot = analyze_inverse(&brandt_b2()).unwrap().hasse_dot();
        assert!(dot.contains("\"1\" -> \"4\";"));
        assert!(dot.contains("\"1\" -> \"5\";"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
