use std::collections::HashMap;

use super::{check_interchange, require_double_inverse, validate_dig, DoubleSemigroup, IxReading};
use crate::error::{Error, Result};
use crate::esn::{ig_from_is, is_from_ig, structural_difference, InductiveGroupoid, ObjectId};
use crate::inverse::analyze_inverse;
use crate::tables::{ElementId, Verdict};

/// A double groupoid presented as two inductive groupoids on the same cells.
///
/// `horizontal` composes cells side by side; its objects are the vertical
/// arrows. `vertical` stacks cells; its objects are the horizontal arrows.
/// An object of the double groupoid is named by one vertical and one
/// horizontal arrow, which must be the same identity cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleInductiveGroupoid {
    pub object_labels: Vec<String>,
    pub object_ver: Vec<usize>,
    pub object_hor: Vec<usize>,
    pub horizontal: InductiveGroupoid,
    pub vertical: InductiveGroupoid,
}

impl DoubleInductiveGroupoid {
    pub fn cell_count(&self) -> usize {
        self.horizontal.arrow_count()
    }

    pub fn cell_labels(&self) -> &[String] {
        &self.horizontal.arrow_labels
    }

    pub fn ver_count(&self) -> usize {
        self.horizontal.object_count()
    }

    pub fn hor_count(&self) -> usize {
        self.vertical.object_count()
    }

    pub fn object_count(&self) -> usize {
        self.object_labels.len()
    }

    /// Identity cell of a vertical arrow.
    pub fn ver_cell(&self, v: usize) -> usize {
        self.horizontal.identity[v]
    }

    /// Identity cell of a horizontal arrow.
    pub fn hor_cell(&self, h: usize) -> usize {
        self.vertical.identity[h]
    }

    pub fn object_cell(&self, o: ObjectId) -> usize {
        self.ver_cell(self.object_ver[o])
    }

    /// Corner objects of a cell, clockwise from top left, if the boundary
    /// arrows end at objects.
    pub fn corners(&self, cell: usize) -> Option<[ObjectId; 4]> {
        let view = CellView::new(self);
        let hd = view.hdom(cell);
        let hc = view.hcod(cell);
        Some([
            view.object_of(view.vdom(hd))?,
            view.object_of(view.vdom(hc))?,
            view.object_of(view.vcod(hc))?,
            view.object_of(view.vcod(hd))?,
        ])
    }

    /// Renumbers cells: cell `x` becomes `perm[x]`.
    pub fn permute_cells(&self, perm: &[usize]) -> DoubleInductiveGroupoid {
        DoubleInductiveGroupoid {
            object_labels: self.object_labels.clone(),
            object_ver: self.object_ver.clone(),
            object_hor: self.object_hor.clone(),
            horizontal: self.horizontal.permute_arrows(perm),
            vertical: self.vertical.permute_arrows(perm),
        }
    }
}

/// Every operation of a double inductive groupoid as a partial function on
/// cells. Arrows and objects are represented by their identity cells.
pub struct CellView<'a> {
    g: &'a DoubleInductiveGroupoid,
    ver_of: Vec<Option<usize>>,
    hor_of: Vec<Option<usize>>,
    obj_of: Vec<Option<ObjectId>>,
}

impl<'a> CellView<'a> {
    /// Assumes both inductive groupoids have consistent shapes.
    pub fn new(g: &'a DoubleInductiveGroupoid) -> Self {
        let n = g.cell_count();
        let mut ver_of = vec![None; n];
        let mut hor_of = vec![None; n];
        let mut obj_of = vec![None; n];
        for (v, &c) in g.horizontal.identity.iter().enumerate() {
            ver_of[c] = Some(v);
        }
        for (h, &c) in g.vertical.identity.iter().enumerate() {
            hor_of[c] = Some(h);
        }
        for o in 0..g.object_count() {
            if let Some(&c) = g.object_ver.get(o).and_then(|&v| g.horizontal.identity.get(v)) {
                obj_of[c] = Some(o);
            }
        }
        CellView { g, ver_of, hor_of, obj_of }
    }

    pub fn groupoid(&self) -> &DoubleInductiveGroupoid {
        self.g
    }

    pub fn len(&self) -> usize {
        self.g.cell_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, c: usize) -> String {
        self.g.cell_labels()[c].clone()
    }

    pub fn is_ver(&self, c: usize) -> bool {
        self.ver_of[c].is_some()
    }

    pub fn is_hor(&self, c: usize) -> bool {
        self.hor_of[c].is_some()
    }

    pub fn object_of(&self, c: usize) -> Option<ObjectId> {
        self.obj_of[c]
    }

    pub fn hdom(&self, a: usize) -> usize {
        let h = &self.g.horizontal;
        h.identity[h.dom[a]]
    }

    pub fn hcod(&self, a: usize) -> usize {
        let h = &self.g.horizontal;
        h.identity[h.cod[a]]
    }

    pub fn vdom(&self, a: usize) -> usize {
        let v = &self.g.vertical;
        v.identity[v.dom[a]]
    }

    pub fn vcod(&self, a: usize) -> usize {
        let v = &self.g.vertical;
        v.identity[v.cod[a]]
    }

    /// `a o b`
    pub fn hcomp(&self, a: usize, b: usize) -> Option<usize> {
        self.g.horizontal.compose.get(a, b)
    }

    /// `a . b`
    pub fn vcomp(&self, a: usize, b: usize) -> Option<usize> {
        self.g.vertical.compose.get(a, b)
    }

    pub fn h_inverse(&self, a: usize) -> usize {
        self.g.horizontal.inverse[a]
    }

    pub fn v_inverse(&self, a: usize) -> usize {
        self.g.vertical.inverse[a]
    }

    /// `a <= b`
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.g.horizontal.leq.contains(a, b)
    }

    /// `a <~ b`
    pub fn lesssim(&self, a: usize, b: usize) -> bool {
        self.g.vertical.leq.contains(a, b)
    }

    /// `e ^h f` for vertical arrows.
    pub fn meet_h(&self, e: usize, f: usize) -> Option<usize> {
        let h = &self.g.horizontal;
        let m = h.object_meet.get(self.ver_of[e]?, self.ver_of[f]?)?;
        Some(h.identity[m])
    }

    /// `e ^v f` for horizontal arrows.
    pub fn meet_v(&self, e: usize, f: usize) -> Option<usize> {
        let v = &self.g.vertical;
        let m = v.object_meet.get(self.hor_of[e]?, self.hor_of[f]?)?;
        Some(v.identity[m])
    }

    /// `(e *| a)`
    pub fn hres(&self, e: usize, a: usize) -> Option<usize> {
        self.g.horizontal.restriction.get(self.ver_of[e]?, a)
    }

    /// `(a |* e)`
    pub fn hcores(&self, a: usize, e: usize) -> Option<usize> {
        self.g.horizontal.corestriction.get(a, self.ver_of[e]?)
    }

    /// `[e *| a]`
    pub fn vres(&self, e: usize, a: usize) -> Option<usize> {
        self.g.vertical.restriction.get(self.hor_of[e]?, a)
    }

    /// `[a |* e]`
    pub fn vcores(&self, a: usize, e: usize) -> Option<usize> {
        self.g.vertical.corestriction.get(a, self.hor_of[e]?)
    }

    /// Horizontal product of the associated double semigroup.
    pub fn hop(&self, a: usize, b: usize) -> Option<usize> {
        let u = self.meet_h(self.hcod(a), self.hdom(b))?;
        self.hcomp(self.hcores(a, u)?, self.hres(u, b)?)
    }

    /// Vertical product of the associated double semigroup.
    pub fn vop(&self, a: usize, b: usize) -> Option<usize> {
        let f = self.meet_v(self.vcod(a), self.vdom(b))?;
        self.vcomp(self.vcores(a, f)?, self.vres(f, b)?)
    }
}

/// Objects are the elements idempotent for both operations; vertical arrows
/// are the horizontal idempotents and horizontal arrows the vertical ones.
pub fn dig_from_dis(d: &DoubleSemigroup) -> Result<DoubleInductiveGroupoid> {
    require_double_inverse(d)?;
    let ha = analyze_inverse(d.hop())?;
    let va = analyze_inverse(d.vop())?;
    let horizontal = ig_from_is(&ha);
    let vertical = ig_from_is(&va);
    let pos = |list: &[ElementId], e: ElementId| list.iter().position(|&x| x == e);
    let mut object_labels = Vec::new();
    let mut object_ver = Vec::new();
    let mut object_hor = Vec::new();
    for e in d.hop().elements() {
        if let (Some(v), Some(h)) = (pos(ha.idempotents(), e), pos(va.idempotents(), e)) {
            object_labels.push(e.to_string());
            object_ver.push(v);
            object_hor.push(h);
        }
    }
    let g = DoubleInductiveGroupoid { object_labels, object_ver, object_hor, horizontal, vertical };
    debug_assert!(validate_dig(&g, IxReading::Corrected).is_valid());
    Ok(g)
}

/// The double semigroup on the cells, with both products built from
/// corestriction, meet and restriction.
pub fn dis_from_dig(g: &DoubleInductiveGroupoid) -> Result<DoubleSemigroup> {
    let report = validate_dig(g, IxReading::Corrected);
    if !report.is_valid() {
        return Err(Error::InvalidDig(report.summary()));
    }
    let hop = is_from_ig(&g.horizontal)?;
    let vop = is_from_ig(&g.vertical)?;
    if let Verdict::Fails(w) = check_interchange(&hop, &vop) {
        return Err(Error::TheoremViolation(format!(
            "products of a valid double inductive groupoid fail interchange at {w:?}"
        )));
    }
    DoubleSemigroup::new(hop, vop)
}

/// `dis_from_dig(dig_from_dis(d)) = d`; the witness names the first differing entry.
pub fn roundtrip_dis(d: &DoubleSemigroup) -> Result<Verdict<String>> {
    let back = dis_from_dig(&dig_from_dis(d)?)?;
    for (name, x, y) in [("hop", d.hop(), back.hop()), ("vop", d.vop(), back.vop())] {
        for a in x.elements() {
            for b in x.elements() {
                if x.product(a, b) != y.product(a, b) {
                    return Ok(Verdict::Fails(format!("{name}({a}, {b})")));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `dig_from_dis(dis_from_dig(g))` equals `g` on the same cells.
pub fn roundtrip_dig(g: &DoubleInductiveGroupoid) -> Result<Verdict<String>> {
    let back = dig_from_dis(&dis_from_dig(g)?)?;
    Ok(match structural_difference_dig(g, &back) {
        None => Verdict::Holds,
        Some(d) => Verdict::Fails(d),
    })
}

/// First structural difference, matching cells by label when the label sets
/// agree and by index otherwise. Arrow and object labels are ignored.
pub fn structural_difference_dig(
    g: &DoubleInductiveGroupoid,
    h: &DoubleInductiveGroupoid,
) -> Option<String> {
    if g.cell_count() != h.cell_count() {
        return Some("different numbers of cells".into());
    }
    let by_label: HashMap<&str, usize> =
        g.cell_labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let perm: Option<Vec<usize>> = h
        .cell_labels()
        .iter()
        .map(|l| by_label.get(l.as_str()).copied())
        .collect();
    let aligned;
    let h = match perm {
        Some(p) if by_label.len() == g.cell_count() => {
            aligned = h.permute_cells(&p);
            &aligned
        }
        _ => h,
    };
    if let Some(d) = structural_difference(&g.horizontal, &h.horizontal) {
        return Some(format!("horizontal: {d}"));
    }
    if let Some(d) = structural_difference(&g.vertical, &h.vertical) {
        return Some(format!("vertical: {d}"));
    }
    let cells = |x: &DoubleInductiveGroupoid| {
        let mut v: Vec<usize> = (0..x.object_count()).map(|o| x.object_cell(o)).collect();
        v.sort_unstable();
        v
    };
    if cells(g) != cells(h) {
        return Some("different objects".into());
    }
    None
}
