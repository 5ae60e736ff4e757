//! Double semigroups, double inverse semigroups and double inductive
//! groupoids.
//!
//! `hop` is the horizontal operation and `vop` the vertical one. The
//! interchange law reads `hop(vop(a, b), vop(c, d)) = vop(hop(a, c), hop(b, d))`.

mod interchange_proof;
mod dig;
mod document;
mod validate;

pub use interchange_proof::verify_interchange_proof;
pub use dig::{
    dig_from_dis, dis_from_dig, roundtrip_dig, roundtrip_dis, structural_difference_dig, CellView,
    DoubleInductiveGroupoid,
};
pub use document::{DigDocument, DigObjectEntry};
pub use validate::{ix_g_disagreements, validate_dig, IxReading, COMPATIBILITY_FAMILIES};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::inverse::analyze_inverse;
use crate::tables::{for_each_permutation, parse_tables, CayleyTable, ElementId, Verdict, MAX_PERM};

/// Two operations on one carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleSemigroup {
    hop: CayleyTable,
    vop: CayleyTable,
}

impl DoubleSemigroup {
    /// Pairs two tables of equal order; no axioms are checked.
    pub fn new(hop: CayleyTable, vop: CayleyTable) -> Result<Self> {
        if hop.order() != vop.order() {
            return Err(Error::OrderMismatch(hop.order(), vop.order()));
        }
        Ok(DoubleSemigroup { hop, vop })
    }

    /// Two `.cay` bodies, horizontal first.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tables = parse_tables(text, 2)?;
        let vop = tables.pop().unwrap();
        let hop = tables.pop().unwrap();
        Self::new(hop, vop)
    }

    pub fn to_cay(&self) -> String {
        format!("{}\n{}", self.hop.to_cay(), self.vop.to_cay())
    }

    pub fn hop(&self) -> &CayleyTable {
        &self.hop
    }

    pub fn vop(&self) -> &CayleyTable {
        &self.vop
    }

    pub fn order(&self) -> usize {
        self.hop.order()
    }

    pub fn swapped(&self) -> Self {
        DoubleSemigroup { hop: self.vop.clone(), vop: self.hop.clone() }
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        DoubleSemigroup { hop: self.hop.relabel(perm), vop: self.vop.relabel(perm) }
    }

    /// Lexicographically least `(hop, vop)` over all relabelings.
    ///
    /// # Panics
    /// If the order exceeds the permutation cap.
    pub fn canonical_form(&self) -> Self {
        let n = self.order();
        assert!(n <= MAX_PERM, "canonical form needs order <= {MAX_PERM}");
        let mut best: Option<DoubleSemigroup> = None;
        for_each_permutation(n, |p| {
            let cand = self.relabel(p);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        });
        best.unwrap()
    }
}

/// Why a pair fails to be a double (inverse) semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DoubleFailure {
    HopNotAssociative([ElementId; 3]),
    VopNotAssociative([ElementId; 3]),
    Interchange([ElementId; 4]),
    HopNotInverse(String),
    VopNotInverse(String),
}

impl fmt::Display for DoubleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoubleFailure::HopNotAssociative([a, b, c]) => {
                write!(f, "horizontal operation is not associative at ({a}, {b}, {c})")
            }
            DoubleFailure::VopNotAssociative([a, b, c]) => {
                write!(f, "vertical operation is not associative at ({a}, {b}, {c})")
            }
            DoubleFailure::Interchange([a, b, c, d]) => {
                write!(f, "interchange fails at ({a}, {b}, {c}, {d})")
            }
            DoubleFailure::HopNotInverse(e) => write!(f, "horizontal operation: {e}"),
            DoubleFailure::VopNotInverse(e) => write!(f, "vertical operation: {e}"),
        }
    }
}

/// Lexicographically least `(a, b, c, d)` violating interchange.
pub fn check_interchange(hop: &CayleyTable, vop: &CayleyTable) -> Verdict<[ElementId; 4]> {
    let n = hop.order().min(vop.order());
    let (h, v) = (|x, y| hop.mul(x, y), |x, y| vop.mul(x, y));
    for a in 0..n {
        for b in 0..n {
            let ab = v(a, b);
            for c in 0..n {
                let ac = h(a, c);
                for d in 0..n {
                    if h(ab, v(c, d)) != v(ac, h(b, d)) {
                        return Verdict::Fails([a, b, c, d].map(ElementId::from_index));
                    }
                }
            }
        }
    }
    Verdict::Holds
}

pub fn is_double_semigroup(d: &DoubleSemigroup) -> Verdict<DoubleFailure> {
    if let Verdict::Fails((a, b, c)) = d.hop.is_associative() {
        return Verdict::Fails(DoubleFailure::HopNotAssociative([a, b, c]));
    }
    if let Verdict::Fails((a, b, c)) = d.vop.is_associative() {
        return Verdict::Fails(DoubleFailure::VopNotAssociative([a, b, c]));
    }
    match check_interchange(&d.hop, &d.vop) {
        Verdict::Fails(w) => Verdict::Fails(DoubleFailure::Interchange(w)),
        Verdict::Holds => Verdict::Holds,
    }
}

pub fn is_double_inverse_semigroup(d: &DoubleSemigroup) -> Verdict<DoubleFailure> {
    if let Verdict::Fails(w) = is_double_semigroup(d) {
        return Verdict::Fails(w);
    }
    if let Err(e) = analyze_inverse(&d.hop) {
        return Verdict::Fails(DoubleFailure::HopNotInverse(e.to_string()));
    }
    if let Err(e) = analyze_inverse(&d.vop) {
        return Verdict::Fails(DoubleFailure::VopNotInverse(e.to_string()));
    }
    Verdict::Holds
}

pub(crate) fn require_double_inverse(d: &DoubleSemigroup) -> Result<()> {
    match is_double_inverse_semigroup(d) {
        Verdict::Holds => Ok(()),
        Verdict::Fails(w) => Err(Error::NotDoubleInverse(w.to_string())),
    }
}

/// The two operations differ somewhere.
pub fn is_proper(d: &DoubleSemigroup) -> bool {
    d.hop != d.vop
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KockReport {
    pub hop_commutative: bool,
    pub vop_commutative: bool,
}

/// Both operations of a double inverse semigroup commute.
pub fn check_kock(d: &DoubleSemigroup) -> Result<KockReport> {
    require_double_inverse(d)?;
    let report = KockReport {
        hop_commutative: d.hop.is_commutative().holds(),
        vop_commutative: d.vop.is_commutative().holds(),
    };
    if !(report.hop_commutative && report.vop_commutative) {
        return Err(Error::TheoremViolation(format!(
            "double inverse semigroup with a non-commutative operation: {report:?}"
        )));
    }
    Ok(report)
}
