//! Inductive groupoids and the two constructions relating them to inverse
//! semigroups.
//!
//! Objects and arrows are dense indices. Every object has an explicit
//! identity arrow, and the order on objects is the order of those identity
//! arrows. Partial operations are stored with explicit definedness.

mod document;
pub mod fixtures;

pub use document::{ArrowEntry, GroupoidDocument, ObjectEntry};

use crate::axioms::AxiomReport;
use crate::error::{Error, Result};
use crate::inverse::{analyze_inverse, InverseSemigroupAnalysis};
use crate::relation::{PartialTable, Relation};
use crate::tables::{CayleyTable, ElementId, Verdict};

pub type ObjectId = usize;
pub type ArrowId = usize;

/// A groupoid with an order on arrows, (co)restrictions and object meets.
///
/// Fields are public so malformed structures can be built and handed to
/// [`validate_ig`]; nothing here assumes the axioms hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductiveGroupoid {
    pub object_labels: Vec<String>,
    pub arrow_labels: Vec<String>,
    /// object -> its identity arrow
    pub identity: Vec<ArrowId>,
    pub dom: Vec<ObjectId>,
    pub cod: Vec<ObjectId>,
    /// arrows x arrows; defined iff `cod(x) = dom(y)`
    pub compose: PartialTable,
    pub inverse: Vec<ArrowId>,
    /// order on arrows
    pub leq: Relation,
    /// objects x objects
    pub object_meet: PartialTable,
    /// objects x arrows: `(e *| x)`
    pub restriction: PartialTable,
    /// arrows x objects: `(x |* e)`
    pub corestriction: PartialTable,
}

impl InductiveGroupoid {
    pub fn object_count(&self) -> usize {
        self.object_labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_labels.len()
    }

    /// Order on objects, read off their identity arrows.
    pub fn object_leq(&self, e: ObjectId, f: ObjectId) -> bool {
        self.leq.contains(self.identity[e], self.identity[f])
    }

    /// The object whose identity arrow is `x`, if any.
    pub fn object_of_identity(&self, x: ArrowId) -> Option<ObjectId> {
        self.identity.iter().position(|&i| i == x)
    }

    pub fn is_identity(&self, x: ArrowId) -> bool {
        self.identity.contains(&x)
    }

    fn shape_errors(&self) -> Vec<String> {
        let (o, a) = (self.object_count(), self.arrow_count());
        let mut errs = Vec::new();
        let mut expect = |what: &str, got: (usize, usize), want: (usize, usize)| {
            if got != want {
                errs.push(format!("{what} has shape {got:?}, expected {want:?}"));
            }
        };
        expect("identity", (self.identity.len(), 1), (o, 1));
        expect("dom", (self.dom.len(), 1), (a, 1));
        expect("cod", (self.cod.len(), 1), (a, 1));
        expect("inverse", (self.inverse.len(), 1), (a, 1));
        expect("compose", self.compose.shape(), (a, a));
        expect("leq", (self.leq.size(), self.leq.size()), (a, a));
        expect("object_meet", self.object_meet.shape(), (o, o));
        expect("restriction", self.restriction.shape(), (o, a));
        expect("corestriction", self.corestriction.shape(), (a, o));
        let out_of_range = self.identity.iter().any(|&x| x >= a)
            || self.inverse.iter().any(|&x| x >= a)
            || self.dom.iter().chain(&self.cod).any(|&x| x >= o)
            || self.compose.entries().any(|(_, _, v)| v >= a)
            || self.object_meet.entries().any(|(_, _, v)| v >= o)
            || self.restriction.entries().any(|(_, _, v)| v >= a)
            || self.corestriction.entries().any(|(_, _, v)| v >= a);
        if out_of_range {
            errs.push("an index is out of range".to_string());
        }
        if o == 0 || a == 0 {
            errs.push("a groupoid needs at least one object".to_string());
        }
        errs
    }

    /// Renumbers arrows: arrow `x` becomes `perm[x]`. Objects keep their order.
    pub fn permute_arrows(&self, perm: &[ArrowId]) -> InductiveGroupoid {
        let na = self.arrow_count();
        let no = self.object_count();
        let mut inv = vec![0; na];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let p = |x: usize| perm[x];
        InductiveGroupoid {
            object_labels: self.object_labels.clone(),
            arrow_labels: (0..na).map(|x| self.arrow_labels[inv[x]].clone()).collect(),
            identity: self.identity.iter().map(|&x| p(x)).collect(),
            dom: (0..na).map(|x| self.dom[inv[x]]).collect(),
            cod: (0..na).map(|x| self.cod[inv[x]]).collect(),
            compose: PartialTable::from_fn(na, na, |x, y| self.compose.get(inv[x], inv[y]).map(p)),
            inverse: (0..na).map(|x| p(self.inverse[inv[x]])).collect(),
            leq: Relation::from_fn(na, |x, y| self.leq.contains(inv[x], inv[y])),
            object_meet: self.object_meet.clone(),
            restriction: PartialTable::from_fn(no, na, |e, x| self.restriction.get(e, inv[x]).map(p)),
            corestriction: PartialTable::from_fn(na, no, |x, e| self.corestriction.get(inv[x], e).map(p)),
        }
    }

    /// DOT rendering: objects as nodes, non-identity arrows as labeled edges.
    /// Order data is not drawn.
    pub fn to_dot(&self) -> String {
        let q = document::dot_quote;
        let mut out = String::from("digraph groupoid {\n");
        for label in &self.object_labels {
            out.push_str(&format!("  {};\n", q(label)));
        }
        for x in 0..self.arrow_count() {
            if self.is_identity(x) {
                continue;
            }
            out.push_str(&format!(
                "  {} -> {} [label={}];\n",
                q(&self.object_labels[self.dom[x]]),
                q(&self.object_labels[self.cod[x]]),
                q(&self.arrow_labels[x])
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Fills in the operations determined by the groupoid and its order:
/// inverses, object meets where a greatest lower bound exists, and
/// (co)restrictions where a unique candidate exists.
pub fn derive_operations(g: &mut InductiveGroupoid) {
    let (no, na) = (g.object_count(), g.arrow_count());
    g.inverse = (0..na)
        .map(|x| {
            (0..na)
                .find(|&y| {
                    g.compose.get(x, y) == Some(g.identity[g.dom[x]])
                        && g.compose.get(y, x) == Some(g.identity[g.cod[x]])
                })
                .unwrap_or(x)
        })
        .collect();
    g.object_meet = PartialTable::from_fn(no, no, |e, f| {
        let lower = |h: ObjectId| g.object_leq(h, e) && g.object_leq(h, f);
        (0..no).find(|&m| lower(m) && (0..no).all(|h| !lower(h) || g.object_leq(h, m)))
    });
    let unique = |it: &mut dyn Iterator<Item = ArrowId>| match (it.next(), it.next()) {
        (Some(y), None) => Some(y),
        _ => None,
    };
    g.restriction = PartialTable::from_fn(no, na, |e, x| {
        if !g.object_leq(e, g.dom[x]) {
            return None;
        }
        unique(&mut (0..na).filter(|&y| g.leq.contains(y, x) && g.dom[y] == e))
    });
    g.corestriction = PartialTable::from_fn(na, no, |x, e| {
        if !g.object_leq(e, g.cod[x]) {
            return None;
        }
        unique(&mut (0..na).filter(|&y| g.leq.contains(y, x) && g.cod[y] == e))
    });
}

/// Checks every inductive-groupoid axiom by exhaustive scan.
///
/// Axiom labels: `shape`, `groupoid.*` for the groupoid laws, `order.partial`,
/// `order.i` .. `order.iv` for the ordered-groupoid conditions and
/// `semilattice` for the object meets.
pub fn validate_ig(g: &InductiveGroupoid) -> AxiomReport {
    let mut r = AxiomReport::new();
    let shape = g.shape_errors();
    if !shape.is_empty() {
        for e in shape {
            r.fail("shape", Vec::new(), e);
        }
        return r;
    }
    r.pass("shape");
    let (no, na) = (g.object_count(), g.arrow_count());
    let al = |x: ArrowId| g.arrow_labels[x].clone();
    let ol = |e: ObjectId| g.object_labels[e].clone();
    let id = |e: ObjectId| g.identity[e];

    for e in 0..no {
        let i = id(e);
        r.check(
            "groupoid.identity_boundary",
            g.dom[i] == e && g.cod[i] == e,
            || vec![ol(e)],
            || format!("identity {} is not a loop at {}", al(i), ol(e)),
        );
    }

    for x in 0..na {
        for y in 0..na {
            let composable = g.cod[x] == g.dom[y];
            let xy = g.compose.get(x, y);
            r.check(
                "groupoid.compose_defined",
                composable == xy.is_some(),
                || vec![al(x), al(y)],
                || format!("composable={composable} but composite defined={}", xy.is_some()),
            );
            if let Some(xy) = xy {
                r.check(
                    "groupoid.compose_boundary",
                    g.dom[xy] == g.dom[x] && g.cod[xy] == g.cod[y],
                    || vec![al(x), al(y)],
                    || format!("composite {} has the wrong boundary", al(xy)),
                );
            }
        }
    }

    for x in 0..na {
        for y in 0..na {
            let Some(xy) = g.compose.get(x, y) else { continue };
            for z in 0..na {
                let lhs = g.compose.get(xy, z);
                let rhs = g.compose.get(y, z).and_then(|yz| g.compose.get(x, yz));
                r.identity("groupoid.associative", lhs, rhs, || vec![al(x), al(y), al(z)]);
            }
        }
    }

    for x in 0..na {
        r.identity("groupoid.unit", g.compose.get(id(g.dom[x]), x), Some(x), || vec![al(x)]);
        r.identity("groupoid.unit", g.compose.get(x, id(g.cod[x])), Some(x), || vec![al(x)]);
        let inv = g.inverse[x];
        r.identity("groupoid.inverse", g.compose.get(x, inv), Some(id(g.dom[x])), || vec![al(x)]);
        r.identity("groupoid.inverse", g.compose.get(inv, x), Some(id(g.cod[x])), || vec![al(x)]);
    }

    match g.leq.check_partial_order() {
        Ok(()) => r.pass("order.partial"),
        Err(e) => r.fail("order.partial", Vec::new(), e),
    }

    for x in 0..na {
        for y in 0..na {
            if !g.leq.contains(x, y) {
                continue;
            }
            r.check(
                "order.i",
                g.leq.contains(g.inverse[x], g.inverse[y]),
                || vec![al(x), al(y)],
                || "inverses are not ordered".to_string(),
            );
        }
    }

    for x in 0..na {
        for y in 0..na {
            if !g.leq.contains(x, y) {
                continue;
            }
            for u in 0..na {
                let Some(xu) = g.compose.get(x, u) else { continue };
                for v in 0..na {
                    if !g.leq.contains(u, v) {
                        continue;
                    }
                    let Some(yv) = g.compose.get(y, v) else { continue };
                    r.check(
                        "order.ii",
                        g.leq.contains(xu, yv),
                        || vec![al(x), al(y), al(u), al(v)],
                        || format!("{} is not below {}", al(xu), al(yv)),
                    );
                }
            }
        }
    }

    for e in 0..no {
        for x in 0..na {
            check_restriction(&mut r, g, "order.iii", e, x, g.dom[x], g.restriction.get(e, x), |y| g.dom[y]);
            check_restriction(&mut r, g, "order.iv", e, x, g.cod[x], g.corestriction.get(x, e), |y| g.cod[y]);
        }
    }

    for e in 0..no {
        for f in 0..no {
            let Some(m) = g.object_meet.get(e, f) else {
                r.fail("semilattice", vec![ol(e), ol(f)], "meet undefined");
                continue;
            };
            let lower = |h: ObjectId| g.object_leq(h, e) && g.object_leq(h, f);
            let glb = lower(m) && (0..no).all(|h| !lower(h) || g.object_leq(h, m));
            r.check("semilattice", glb, || vec![ol(e), ol(f)], || {
                format!("{} is not the greatest lower bound", ol(m))
            });
        }
    }
    r
}

/// Restriction of `x` to `e` along the boundary `side(x)`: defined exactly
/// when `e <= side(x)`, and then the unique arrow below `x` with `side = e`.
#[allow(clippy::too_many_arguments)]
fn check_restriction(
    r: &mut AxiomReport,
    g: &InductiveGroupoid,
    axiom: &str,
    e: ObjectId,
    x: ArrowId,
    boundary: ObjectId,
    stored: Option<ArrowId>,
    side: impl Fn(ArrowId) -> ObjectId,
) {
    let tuple = || vec![g.object_labels[e].clone(), g.arrow_labels[x].clone()];
    if !g.object_leq(e, boundary) {
        r.check(axiom, stored.is_none(), tuple, || "defined although e is not below the boundary".into());
        return;
    }
    let candidates: Vec<ArrowId> = (0..g.arrow_count())
        .filter(|&y| g.leq.contains(y, x) && side(y) == e)
        .collect();
    let ok = candidates.len() == 1 && stored == Some(candidates[0]);
    r.check(axiom, ok, tuple, || match candidates.len() {
        0 => "missing: no arrow below with the required boundary".to_string(),
        1 => format!("stored {:?}, expected {}", stored.map(|s| &g.arrow_labels[s]), g.arrow_labels[candidates[0]]),
        k => format!("not unique: {k} arrows below with the required boundary"),
    });
}

/// Objects are the idempotents, arrows the elements, `dom s = s s^-1`,
/// `cod s = s^-1 s`, and every other operation is the semigroup product.
pub fn ig_from_is(a: &InverseSemigroupAnalysis) -> InductiveGroupoid {
    let t = a.table();
    let n = t.order();
    let idem = a.idempotents();
    let mut object_of = vec![usize::MAX; n];
    for (k, e) in idem.iter().enumerate() {
        object_of[e.index()] = k;
    }
    let dom: Vec<ObjectId> = t.elements().map(|s| object_of[a.domain(s).index()]).collect();
    let cod: Vec<ObjectId> = t.elements().map(|s| object_of[a.codomain(s).index()]).collect();
    let no = idem.len();
    let g = InductiveGroupoid {
        object_labels: idem.iter().map(|e| e.to_string()).collect(),
        arrow_labels: t.elements().map(|s| s.to_string()).collect(),
        identity: idem.iter().map(|e| e.index()).collect(),
        compose: PartialTable::from_fn(n, n, |x, y| {
            (cod[x] == dom[y]).then(|| t.mul(x, y))
        }),
        inverse: a.inverse_map().iter().map(|x| x.index()).collect(),
        leq: a.natural_partial_order().clone(),
        object_meet: PartialTable::from_fn(no, no, |e, f| {
            Some(object_of[t.mul(idem[e].index(), idem[f].index())])
        }),
        restriction: PartialTable::from_fn(no, n, |e, x| {
            a.leq(idem[e], idem[dom[x]]).then(|| t.mul(idem[e].index(), x))
        }),
        corestriction: PartialTable::from_fn(n, no, |x, e| {
            a.leq(idem[e], idem[cod[x]]).then(|| t.mul(x, idem[e].index()))
        }),
        dom,
        cod,
    };
    debug_assert!(validate_ig(&g).is_valid(), "{}", validate_ig(&g).summary());
    g
}

/// `a * b = (a |* cod a ^ dom b) . (cod a ^ dom b *| b)`, checked to be an
/// inverse semigroup.
pub fn is_from_ig(g: &InductiveGroupoid) -> Result<CayleyTable> {
    let report = validate_ig(g);
    if !report.is_valid() {
        return Err(Error::InvalidGroupoid(report.summary()));
    }
    let n = g.arrow_count();
    if !(1..=crate::tables::MAX_ORDER).contains(&n) {
        return Err(Error::InvalidGroupoid(format!(
            "{n} arrows; tables need between 1 and {}",
            crate::tables::MAX_ORDER
        )));
    }
    let mut entries = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let product = g
                .object_meet
                .get(g.cod[a], g.dom[b])
                .and_then(|m| {
                    let left = g.corestriction.get(a, m)?;
                    let right = g.restriction.get(m, b)?;
                    g.compose.get(left, right)
                })
                .ok_or_else(|| {
                    Error::InvalidGroupoid(format!(
                        "product of {} and {} is undefined",
                        g.arrow_labels[a], g.arrow_labels[b]
                    ))
                })?;
            entries.push(product as u8);
        }
    }
    let table = CayleyTable::from_raw(n, entries);
    analyze_inverse(&table).map_err(|e| {
        Error::TheoremViolation(format!("groupoid product is not an inverse semigroup: {e}"))
    })?;
    Ok(table)
}

/// `is_from_ig(ig_from_is(t)) = t`; the witness is the first differing cell.
pub fn roundtrip_is(t: &CayleyTable) -> Result<Verdict<(ElementId, ElementId)>> {
    let back = is_from_ig(&ig_from_is(&analyze_inverse(t)?))?;
    let diff = t
        .elements()
        .flat_map(|a| t.elements().map(move |b| (a, b)))
        .find(|&(a, b)| t.product(a, b) != back.product(a, b));
    Ok(diff.map_or(Verdict::Holds, Verdict::Fails))
}

/// `ig_from_is(is_from_ig(g))` agrees with `g` under the identity on arrows.
pub fn roundtrip_ig(g: &InductiveGroupoid) -> Result<Verdict<String>> {
    let back = ig_from_is(&analyze_inverse(&is_from_ig(g)?)?);
    Ok(match structural_difference(g, &back) {
        None => Verdict::Holds,
        Some(d) => Verdict::Fails(d),
    })
}

/// First difference between two groupoids on the same arrows, comparing
/// objects through their identity arrows. Labels are ignored.
pub fn structural_difference(g: &InductiveGroupoid, h: &InductiveGroupoid) -> Option<String> {
    let na = g.arrow_count();
    if na != h.arrow_count() || g.object_count() != h.object_count() {
        return Some("different sizes".into());
    }
    let mut g_ids: Vec<ArrowId> = g.identity.clone();
    let mut h_ids: Vec<ArrowId> = h.identity.clone();
    g_ids.sort_unstable();
    h_ids.sort_unstable();
    if g_ids != h_ids {
        return Some("different identity arrows".into());
    }
    // object of g -> object of h with the same identity arrow
    let obj: Vec<ObjectId> = g
        .identity
        .iter()
        .map(|&i| h.object_of_identity(i).unwrap())
        .collect();
    for x in 0..na {
        if obj[g.dom[x]] != h.dom[x] || obj[g.cod[x]] != h.cod[x] {
            return Some(format!("boundary of arrow {x}"));
        }
        if g.inverse[x] != h.inverse[x] {
            return Some(format!("inverse of arrow {x}"));
        }
        for y in 0..na {
            if g.compose.get(x, y) != h.compose.get(x, y) {
                return Some(format!("composite of arrows {x} and {y}"));
            }
            if g.leq.contains(x, y) != h.leq.contains(x, y) {
                return Some(format!("order between arrows {x} and {y}"));
            }
        }
    }
    for e in 0..g.object_count() {
        for f in 0..g.object_count() {
            if g.object_meet.get(e, f).map(|m| obj[m]) != h.object_meet.get(obj[e], obj[f]) {
                return Some(format!("meet of objects {e} and {f}"));
            }
        }
        for x in 0..na {
            if g.restriction.get(e, x) != h.restriction.get(obj[e], x) {
                return Some(format!("restriction of arrow {x} to object {e}"));
            }
            if g.corestriction.get(x, e) != h.corestriction.get(x, obj[e]) {
                return Some(format!("corestriction of arrow {x} to object {e}"));
            }
        }
    }
    None
}
