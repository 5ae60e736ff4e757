use rayon::prelude::*;

use super::{validate_dig, CellView, DoubleInductiveGroupoid, IxReading};
use crate::axioms::AxiomReport;
use crate::error::{Error, Result};

const IDENTITIES: [&str; 9] = [
    "interchange",
    "split.h.corestrict",
    "split.h.restrict",
    "split.v.corestrict",
    "split.v.restrict",
    "boundary.left",
    "boundary.right",
    "boundary.top",
    "boundary.bottom",
];

/// Re-evaluates the interchange proof for the products of `g` on every cell
/// quadruple: the interchange law itself, the splitting of a (co)restricted
/// composite in each direction (`split.*`) and the four boundary identities
/// (`boundary.*`).
pub fn verify_interchange_proof(g: &DoubleInductiveGroupoid) -> Result<AxiomReport> {
    let valid = validate_dig(g, IxReading::Corrected);
    if !valid.is_valid() {
        return Err(Error::InvalidDig(valid.summary()));
    }
    let view = CellView::new(g);
    let mut r = AxiomReport::new();
    for name in IDENTITIES {
        r.declare(name);
    }
    let parts: Vec<AxiomReport> = (0..view.len())
        .into_par_iter()
        .map(|a| {
            let mut part = AxiomReport::new();
            let n = view.len();
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        quadruple(&view, &mut part, a, b, c, d);
                    }
                }
            }
            part
        })
        .collect();
    for p in parts {
        r.merge(p);
    }
    Ok(r)
}

fn quadruple(v: &CellView<'_>, r: &mut AxiomReport, a: usize, b: usize, c: usize, d: usize) {
    let t = || [a, b, c, d].iter().map(|&x| v.label(x)).collect::<Vec<_>>();

    let lhs = (|| v.vop(v.hop(a, b)?, v.hop(c, d)?))();
    let rhs = (|| v.hop(v.vop(a, c)?, v.vop(b, d)?))();
    r.identity("interchange", lhs, rhs, t);

    let u = v.meet_h(v.hcod(a), v.hdom(b));
    let w = v.meet_h(v.hcod(c), v.hdom(d));
    let f = v.meet_v(v.vcod(a), v.vdom(c));
    let g = v.meet_v(v.vcod(b), v.vdom(d));

    // (a |* u), (u *| b), (c |* w), (w *| d)
    let au = u.and_then(|u| v.hcores(a, u));
    let ub = u.and_then(|u| v.hres(u, b));
    let cw = w.and_then(|w| v.hcores(c, w));
    let wd = w.and_then(|w| v.hres(w, d));
    // [a |* f], [f *| c], [b |* g], [g *| d]
    let af = f.and_then(|f| v.vcores(a, f));
    let fc = f.and_then(|f| v.vres(f, c));
    let bg = g.and_then(|g| v.vcores(b, g));
    let gd = g.and_then(|g| v.vres(g, d));

    let top = au.zip(ub).and_then(|(x, y)| v.hcomp(x, y));
    let bottom = cw.zip(wd).and_then(|(x, y)| v.hcomp(x, y));
    let mid = (|| v.meet_v(v.vcod(top?), v.vdom(bottom?)))();
    let left_mid = (|| v.meet_v(v.vcod(au?), v.vdom(cw?)))();
    let right_mid = (|| v.meet_v(v.vcod(ub?), v.vdom(wd?)))();

    let lhs = (|| v.vcores(top?, mid?))();
    let rhs = (|| v.hcomp(v.vcores(au?, left_mid?)?, v.vcores(ub?, right_mid?)?))();
    r.identity("split.h.corestrict", lhs, rhs, t);
    let lhs = (|| v.vres(mid?, bottom?))();
    let rhs = (|| v.hcomp(v.vres(left_mid?, cw?)?, v.vres(right_mid?, wd?)?))();
    r.identity("split.h.restrict", lhs, rhs, t);

    let left = af.zip(fc).and_then(|(x, y)| v.vcomp(x, y));
    let right = bg.zip(gd).and_then(|(x, y)| v.vcomp(x, y));
    let seam = (|| v.meet_h(v.hcod(left?), v.hdom(right?)))();
    let top_seam = (|| v.meet_h(v.hcod(af?), v.hdom(bg?)))();
    let bottom_seam = (|| v.meet_h(v.hcod(fc?), v.hdom(gd?)))();

    let lhs = (|| v.hcores(left?, seam?))();
    let rhs = (|| v.vcomp(v.hcores(af?, top_seam?)?, v.hcores(fc?, bottom_seam?)?))();
    r.identity("split.v.corestrict", lhs, rhs, t);
    let lhs = (|| v.hres(seam?, right?))();
    let rhs = (|| v.vcomp(v.hres(top_seam?, bg?)?, v.hres(bottom_seam?, gd?)?))();
    r.identity("split.v.restrict", lhs, rhs, t);

    let uw = (|| v.meet_v(v.vcod(u?), v.vdom(w?)))();
    let rhs = (|| v.hcores(f?, uw?))();
    r.identity("boundary.left", left_mid, rhs, t);
    let rhs = (|| v.hres(uw?, g?))();
    r.identity("boundary.right", right_mid, rhs, t);
    let fg = (|| v.meet_h(v.hcod(f?), v.hdom(g?)))();
    let rhs = (|| v.vcores(u?, fg?))();
    r.identity("boundary.top", top_seam, rhs, t);
    let rhs = (|| v.vres(fg?, w?))();
    r.identity("boundary.bottom", bottom_seam, rhs, t);
}
