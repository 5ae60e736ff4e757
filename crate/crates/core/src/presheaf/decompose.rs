use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{AbelianGroupPresheaf, FiniteAbelianGroup, MeetSemilattice};
use crate::double::{
    check_kock, dig_from_dis, dis_from_dig, is_proper, require_double_inverse, validate_dig, CellView,
    DoubleInductiveGroupoid, DoubleSemigroup, IxReading,
};
use crate::error::{Error, Result};
use crate::esn::InductiveGroupoid;
use crate::inverse::analyze_inverse;
use crate::relation::{PartialTable, Relation};
use crate::tables::{CayleyTable, ElementId, Verdict};

fn violation(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}

fn require_valid(g: &DoubleInductiveGroupoid) -> Result<()> {
    let r = validate_dig(g, IxReading::Corrected);
    if r.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidDig(r.summary()))
    }
}

/// Elements idempotent for both operations, after checking that the two
/// products agree on them.
pub fn shared_idempotents_coincide(d: &DoubleSemigroup) -> Result<Vec<ElementId>> {
    require_double_inverse(d)?;
    let (h, v) = (d.hop(), d.vop());
    let shared: Vec<ElementId> = h.elements().filter(|&e| h.is_idempotent(e) && v.is_idempotent(e)).collect();
    for &a in &shared {
        for &b in &shared {
            if h.product(a, b) != v.product(a, b) {
                return Err(violation(format!("products of shared idempotents {a} and {b} differ")));
            }
        }
    }
    Ok(shared)
}

/// The two orders and the two meets agree on object cells.
pub fn orders_coincide_on_objects(g: &DoubleInductiveGroupoid) -> Result<()> {
    require_valid(g)?;
    orders_coincide(g)
}

fn orders_coincide(g: &DoubleInductiveGroupoid) -> Result<()> {
    let view = CellView::new(g);
    let cells: Vec<usize> = (0..g.object_count()).map(|o| g.object_cell(o)).collect();
    for &x in &cells {
        for &y in &cells {
            let (lx, ly) = (view.label(x), view.label(y));
            if view.leq(x, y) != view.lesssim(x, y) {
                return Err(violation(format!("the two orders differ on objects {lx} and {ly}")));
            }
            if view.meet_h(x, y) != view.meet_v(x, y) {
                return Err(violation(format!("the two meets differ on objects {lx} and {ly}")));
            }
        }
    }
    Ok(())
}

/// Cells whose four corners are one object, with their group structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub object: usize,
    /// Cells in increasing order; group element `k` is `cells[k]`.
    pub cells: Vec<usize>,
    pub group: FiniteAbelianGroup,
}

/// Splits the cells by corner object and checks each part is an Abelian
/// group under both compositions, which coincide.
pub fn component_groups(g: &DoubleInductiveGroupoid) -> Result<Vec<Component>> {
    require_valid(g)?;
    components(g)
}

fn components(g: &DoubleInductiveGroupoid) -> Result<Vec<Component>> {
    let view = CellView::new(g);
    let mut parts = vec![Vec::new(); g.object_count()];
    for c in 0..g.cell_count() {
        match g.corners(c) {
            Some([o, p, q, r]) if o == p && p == q && q == r => parts[o].push(c),
            _ => return Err(violation(format!("cell {} has distinct corners", view.label(c)))),
        }
    }
    parts
        .into_iter()
        .enumerate()
        .map(|(o, cells)| component(&view, o, cells))
        .collect()
}

fn component(view: &CellView<'_>, o: usize, cells: Vec<usize>) -> Result<Component> {
    let object = view.groupoid().object_labels[o].clone();
    let not_closed = |reason: String| Error::ComponentNotClosed { object: object.clone(), reason };
    let not_group = |reason: String| Error::ComponentNotGroup { object: object.clone(), reason };
    let index: BTreeMap<usize, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let ver = cells.iter().filter(|&&c| view.is_ver(c)).count();
    let hor = cells.iter().filter(|&&c| view.is_hor(c)).count();
    if ver != 1 || hor != 1 {
        return Err(not_group(format!("{ver} vertical and {hor} horizontal arrows")));
    }
    let mut rows = vec![vec![0; cells.len()]; cells.len()];
    for (i, &a) in cells.iter().enumerate() {
        let (la, inv) = (view.label(a), view.h_inverse(a));
        if !index.contains_key(&inv) {
            return Err(not_closed(format!("inverse of {la} leaves the component")));
        }
        if inv != view.v_inverse(a) {
            return Err(not_group(format!("the two inverses of {la} differ")));
        }
        for (j, &b) in cells.iter().enumerate() {
            let lb = view.label(b);
            let (h, v) = (view.hcomp(a, b), view.vcomp(a, b));
            let (Some(h), Some(v)) = (h, v) else {
                return Err(not_group(format!("a composite of {la} and {lb} is undefined")));
            };
            if h != v {
                return Err(not_group(format!("the two composites of {la} and {lb} differ")));
            }
            let Some(&k) = index.get(&h) else {
                return Err(not_closed(format!("composite of {la} and {lb} leaves the component")));
            };
            rows[i][j] = k + 1;
        }
    }
    let op = CayleyTable::from_rows(&rows).map_err(|e| not_group(e.to_string()))?;
    let labels = cells.iter().map(|&c| view.label(c)).collect();
    let group = FiniteAbelianGroup::new(op, Some(labels)).map_err(|e| not_group(e.to_string()))?;
    Ok(Component { object: o, cells, group })
}

/// Base = objects with their order and meet; group at an object = its
/// component; maps = restriction, checked against the vertical restriction.
pub fn presheaf_from_dig(g: &DoubleInductiveGroupoid) -> Result<AbelianGroupPresheaf> {
    require_valid(g)?;
    orders_coincide(g)?;
    let comps = components(g)?;
    let view = CellView::new(g);
    let n = g.object_count();
    let obj = |o: usize| g.object_cell(o);
    let leq = Relation::from_fn(n, |a, b| view.leq(obj(a), obj(b)));
    let mut meet = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let m = view.meet_h(obj(a), obj(b)).and_then(|m| view.object_of(m));
            meet.push(m.ok_or_else(|| violation(format!("objects {a} and {b} have no meet object")))?);
        }
    }
    let base = MeetSemilattice::new(g.object_labels.clone(), leq, meet).map_err(|e| violation(e.to_string()))?;
    let mut homs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if !base.leq(a, b) {
                continue;
            }
            let map = comps[b]
                .cells
                .iter()
                .map(|&x| {
                    let h = view.hres(obj(a), x);
                    if h != view.vres(obj(a), x) {
                        return Err(violation(format!(
                            "the two restrictions of {} to {} differ",
                            view.label(x),
                            g.object_labels[a]
                        )));
                    }
                    h.and_then(|r| comps[a].cells.iter().position(|&c| c == r)).ok_or_else(|| {
                        violation(format!("restriction of {} to {} is not in its component", view.label(x), g.object_labels[a]))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            homs.insert((a, b), map);
        }
    }
    let groups = comps.into_iter().map(|c| c.group).collect();
    AbelianGroupPresheaf::new(base, groups, homs).map_err(|e| violation(e.to_string()))
}

/// Disjoint union of the groups, both directions identical: composites
/// within one group, order and (co)restriction through the maps.
///
/// Cells keep the group element labels when every group is labelled and the
/// labels are distinct, and are named `base/k` otherwise. Cells labelled
/// exactly `1..N` are put in numeric order.
pub fn dig_from_presheaf(p: &AbelianGroupPresheaf) -> Result<DoubleInductiveGroupoid> {
    let base = p.base();
    let n = base.len();
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        cells.extend((0..p.group(a).order()).map(|x| (a, x)));
    }
    let labelled: Option<Vec<String>> =
        cells.iter().map(|&(a, x)| p.group(a).labels().map(|l| l[x].clone())).collect();
    let labels = match labelled {
        Some(l) => {
            if l.iter().collect::<HashSet<_>>().len() != l.len() {
                return Err(Error::InvalidPresheaf("group element labels are not distinct".into()));
            }
            l
        }
        None => cells.iter().map(|&(a, x)| format!("{}/{}", base.labels()[a], x + 1)).collect(),
    };
    let mut labels = labels;
    let numeric: Option<Vec<usize>> = labels.iter().map(|l| l.parse::<usize>().ok()).collect();
    if let Some(num) = numeric {
        let mut sorted = num.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().all(|(i, &v)| v == i + 1) {
            let mut order: Vec<usize> = (0..cells.len()).collect();
            order.sort_by_key(|&i| num[i]);
            cells = order.iter().map(|&i| cells[i]).collect();
            labels = order.iter().map(|&i| labels[i].clone()).collect();
        }
    }
    let cell_of: BTreeMap<(usize, usize), usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let nc = cells.len();
    let identity: Vec<usize> = (0..n).map(|a| cell_of[&(a, p.group(a).unit())]).collect();
    let restrict = |e: usize, c: usize| {
        let (a, x) = cells[c];
        base.leq(e, a).then(|| cell_of[&(e, p.hom(e, a)[x])])
    };
    let groupoid = InductiveGroupoid {
        object_labels: base.labels().to_vec(),
        arrow_labels: labels,
        identity: identity.clone(),
        dom: cells.iter().map(|&(a, _)| a).collect(),
        cod: cells.iter().map(|&(a, _)| a).collect(),
        compose: PartialTable::from_fn(nc, nc, |i, j| {
            let ((a, x), (b, y)) = (cells[i], cells[j]);
            (a == b).then(|| cell_of[&(a, p.group(a).mul(x, y))])
        }),
        inverse: cells.iter().map(|&(a, x)| cell_of[&(a, p.group(a).inverse(x))]).collect(),
        leq: Relation::from_fn(nc, |i, j| restrict(cells[i].0, j) == Some(i)),
        object_meet: PartialTable::from_fn(n, n, |a, b| Some(base.meet(a, b))),
        restriction: PartialTable::from_fn(n, nc, restrict),
        corestriction: PartialTable::from_fn(nc, n, |c, e| restrict(e, c)),
    };
    Ok(DoubleInductiveGroupoid {
        object_labels: base.labels().to_vec(),
        object_ver: (0..n).collect(),
        object_hor: (0..n).collect(),
        horizontal: groupoid.clone(),
        vertical: groupoid,
    })
}

/// Rebuilds the double inverse semigroup of a presheaf.
pub fn compose(p: &AbelianGroupPresheaf) -> Result<DoubleSemigroup> {
    dis_from_dig(&dig_from_presheaf(p)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub order: usize,
    pub improper: bool,
    pub commutative: bool,
    pub clifford: bool,
    pub shared_idempotents: usize,
    pub objects: usize,
    pub component_orders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub report: MainTheoremReport,
    pub groupoid: DoubleInductiveGroupoid,
    pub presheaf: AbelianGroupPresheaf,
}

/// Every structural consequence for a double inverse semigroup: one
/// operation, commutative, Clifford, and a presheaf of Abelian groups.
pub fn main_theorem_report(d: &DoubleSemigroup) -> Result<MainTheoremReport> {
    decompose(d).map(|x| x.report)
}

pub fn decompose(d: &DoubleSemigroup) -> Result<Decomposition> {
    let kock = check_kock(d)?;
    if is_proper(d) {
        return Err(violation("double inverse semigroup with distinct operations"));
    }
    if let Verdict::Fails(x) = analyze_inverse(d.hop())?.is_clifford() {
        return Err(violation(format!("element {x} is not in a subgroup")));
    }
    let shared = shared_idempotents_coincide(d)?;
    let groupoid = dig_from_dis(d)?;
    let presheaf = presheaf_from_dig(&groupoid)?;
    let report = MainTheoremReport {
        order: d.order(),
        improper: true,
        commutative: kock.hop_commutative && kock.vop_commutative,
        clifford: true,
        shared_idempotents: shared.len(),
        objects: groupoid.object_count(),
        component_orders: presheaf.groups().iter().map(|g| g.order()).collect(),
    };
    Ok(Decomposition { report, groupoid, presheaf })
}
