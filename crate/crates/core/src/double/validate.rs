use rayon::prelude::*;

use super::{CellView, DoubleInductiveGroupoid};
use crate::axioms::AxiomReport;
use crate::esn::validate_ig;

/// Which right-hand side to use for axiom `ix.g`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IxReading {
    /// `[e *| a] hdom = [e hdom *| a hdom]`
    #[default]
    Corrected,
    /// `[e *| a] hdom = [e vdom *| a hdom]`
    Literal,
}

/// Prefixes of the compatibility axiom families.
pub const COMPATIBILITY_FAMILIES: [&str; 7] = ["iii.", "iv.", "v.", "vi.", "vii", "viii.", "ix."];

const AXIOMS: [&str; 31] = [
    "iii.a", "iii.b", "iii.c", "iii.d", "iv.a", "iv.b", "v.a", "v.b", "v.c", "v.d", "vi.a", "vi.b",
    "vi.c", "vi.d", "vii", "viii.a", "viii.b", "viii.c", "viii.d", "ix.a", "ix.b", "ix.c", "ix.d",
    "ix.e", "ix.f", "ix.g", "ix.h", "double.interchange", "double.hcompose_boundary",
    "double.vcompose_boundary", "double.objects",
];

/// Checks both inductive groupoids (prefixed `h.` and `v.`), the double
/// groupoid structure (`double.*`) and every compatibility axiom, each
/// quantified over all cells and guarded by definedness.
pub fn validate_dig(g: &DoubleInductiveGroupoid, reading: IxReading) -> AxiomReport {
    let mut r = AxiomReport::new();
    for a in AXIOMS {
        r.declare(a);
    }
    r.merge_prefixed("h.", validate_ig(&g.horizontal));
    r.merge_prefixed("v.", validate_ig(&g.vertical));
    if r.get("h.shape").is_some_and(|t| t.violations > 0)
        || r.get("v.shape").is_some_and(|t| t.violations > 0)
    {
        return r;
    }
    if g.vertical.arrow_count() != g.cell_count() {
        r.fail("double.cells", Vec::new(), "the two directions have different cells");
        return r;
    }
    r.check(
        "double.cells",
        g.vertical.arrow_labels == g.horizontal.arrow_labels,
        Vec::new,
        || "cell labels differ between the two directions".into(),
    );
    let shape_ok = g.object_ver.len() == g.object_count()
        && g.object_hor.len() == g.object_count()
        && g.object_ver.iter().all(|&v| v < g.ver_count())
        && g.object_hor.iter().all(|&h| h < g.hor_count());
    if !shape_ok {
        r.fail("double.objects", Vec::new(), "object table has the wrong shape");
        return r;
    }

    let view = CellView::new(g);
    check_objects(&view, &mut r);
    let parts: Vec<AxiomReport> = (0..view.len())
        .into_par_iter()
        .map(|i| scan_from(&view, i, reading))
        .collect();
    for p in parts {
        r.merge(p);
    }
    r
}

fn check_objects(v: &CellView<'_>, r: &mut AxiomReport) {
    let g = v.groupoid();
    for o in 0..g.object_count() {
        let (vc, hc) = (g.ver_cell(g.object_ver[o]), g.hor_cell(g.object_hor[o]));
        r.check(
            "double.objects",
            vc == hc,
            || vec![g.object_labels[o].clone()],
            || format!("vertical arrow {} and horizontal arrow {} differ", v.label(vc), v.label(hc)),
        );
    }
    for c in 0..v.len() {
        if v.is_ver(c) && v.is_hor(c) {
            r.check("double.objects", v.object_of(c).is_some(), || vec![v.label(c)], || {
                "identity cell in both directions is not an object".into()
            });
        }
        if v.is_ver(c) {
            let ok = v.object_of(v.vdom(c)).is_some() && v.object_of(v.vcod(c)).is_some();
            r.check("double.ver_boundary", ok, || vec![v.label(c)], || {
                "vertical arrow does not run between objects".into()
            });
        }
        if v.is_hor(c) {
            let ok = v.object_of(v.hdom(c)).is_some() && v.object_of(v.hcod(c)).is_some();
            r.check("double.hor_boundary", ok, || vec![v.label(c)], || {
                "horizontal arrow does not run between objects".into()
            });
        }
    }
}

/// All tuples whose first variable is `i`, in lexicographic order per axiom.
fn scan_from(v: &CellView<'_>, i: usize, reading: IxReading) -> AxiomReport {
    let mut r = AxiomReport::new();
    let n = v.len();
    let l = |xs: &[usize]| xs.iter().map(|&x| v.label(x)).collect::<Vec<_>>();

    // two variables
    for j in 0..n {
        let (a, b) = (i, j);
        let t = || l(&[a, b]);
        if let Some(ab) = v.hcomp(a, b) {
            r.identity("double.hcompose_boundary", Some(v.vdom(ab)), v.hcomp(v.vdom(a), v.vdom(b)), t);
            r.identity("double.hcompose_boundary", Some(v.vcod(ab)), v.hcomp(v.vcod(a), v.vcod(b)), t);
        }
        if let Some(ab) = v.vcomp(a, b) {
            r.identity("double.vcompose_boundary", Some(v.hdom(ab)), v.vcomp(v.hdom(a), v.hdom(b)), t);
            r.identity("double.vcompose_boundary", Some(v.hcod(ab)), v.vcomp(v.hcod(a), v.hcod(b)), t);
        }

        let (e, f) = (i, j);
        let m = v.meet_h(e, f);
        r.identity("viii.a", m.map(|m| v.vdom(m)), v.meet_h(v.vdom(e), v.vdom(f)), t);
        r.identity("viii.b", m.map(|m| v.vcod(m)), v.meet_h(v.vcod(e), v.vcod(f)), t);
        let m = v.meet_v(e, f);
        r.identity("viii.c", m.map(|m| v.hdom(m)), v.meet_v(v.hdom(e), v.hdom(f)), t);
        r.identity("viii.d", m.map(|m| v.hcod(m)), v.meet_v(v.hcod(e), v.hcod(f)), t);

        let (a, e) = (i, j);
        let x = v.hcores(a, e);
        r.identity("ix.a", x.map(|x| v.vdom(x)), v.hcores(v.vdom(a), v.vdom(e)), t);
        r.identity("ix.b", x.map(|x| v.vcod(x)), v.hcores(v.vcod(a), v.vcod(e)), t);
        let x = v.vcores(a, e);
        r.identity("ix.e", x.map(|x| v.hdom(x)), v.vcores(v.hdom(a), v.hdom(e)), t);
        r.identity("ix.f", x.map(|x| v.hcod(x)), v.vcores(v.hcod(a), v.hcod(e)), t);

        let (e, a) = (i, j);
        let x = v.hres(e, a);
        r.identity("ix.c", x.map(|x| v.vdom(x)), v.hres(v.vdom(e), v.vdom(a)), t);
        r.identity("ix.d", x.map(|x| v.vcod(x)), v.hres(v.vcod(e), v.vcod(a)), t);
        let x = v.vres(e, a);
        r.identity("ix.g", x.map(|x| v.hdom(x)), v.vres(ix_g_restrictor(v, e, reading), v.hdom(a)), t);
        r.identity("ix.h", x.map(|x| v.hcod(x)), v.vres(v.hcod(e), v.hcod(a)), t);
    }

    // four variables
    for j in 0..n {
        for k in 0..n {
            for m in 0..n {
                four(v, &mut r, [i, j, k, m], &l);
            }
        }
    }
    r
}

fn ix_g_restrictor(v: &CellView<'_>, e: usize, reading: IxReading) -> usize {
    match reading {
        IxReading::Corrected => v.hdom(e),
        IxReading::Literal => v.vdom(e),
    }
}

fn four(v: &CellView<'_>, r: &mut AxiomReport, q: [usize; 4], l: &dyn Fn(&[usize]) -> Vec<String>) {
    let t = || l(&q);
    let [p0, p1, p2, p3] = q;

    let (a, b, c, d) = (p0, p1, p2, p3);
    let lhs = (|| v.vcomp(v.hcomp(a, b)?, v.hcomp(c, d)?))();
    let rhs = (|| v.hcomp(v.vcomp(a, c)?, v.vcomp(b, d)?))();
    r.identity("double.interchange", lhs, rhs, t);

    let (a, b, f, g) = (p0, p1, p2, p3);
    let lhs = (|| v.hcores(v.vcomp(a, b)?, v.vcomp(f, g)?))();
    let rhs = (|| v.vcomp(v.hcores(a, f)?, v.hcores(b, g)?))();
    r.identity("iii.a", lhs, rhs, t);
    let lhs = (|| v.vcores(v.hcomp(a, b)?, v.hcomp(f, g)?))();
    let rhs = (|| v.hcomp(v.vcores(a, f)?, v.vcores(b, g)?))();
    r.identity("iii.b", lhs, rhs, t);

    let (f, g, a, b) = (p0, p1, p2, p3);
    let lhs = (|| v.hres(v.vcomp(f, g)?, v.vcomp(a, b)?))();
    let rhs = (|| v.vcomp(v.hres(f, a)?, v.hres(g, b)?))();
    r.identity("iii.c", lhs, rhs, t);
    let lhs = (|| v.vres(v.hcomp(f, g)?, v.hcomp(a, b)?))();
    let rhs = (|| v.hcomp(v.vres(f, a)?, v.vres(g, b)?))();
    r.identity("iii.d", lhs, rhs, t);

    let (e, f, g, h) = (p0, p1, p2, p3);
    let lhs = (|| v.hcomp(v.meet_v(e, f)?, v.meet_v(g, h)?))();
    let rhs = (|| v.meet_v(v.hcomp(e, g)?, v.hcomp(f, h)?))();
    r.identity("iv.a", lhs, rhs, t);
    let lhs = (|| v.vcomp(v.meet_h(e, f)?, v.meet_h(g, h)?))();
    let rhs = (|| v.meet_h(v.vcomp(e, g)?, v.vcomp(f, h)?))();
    r.identity("iv.b", lhs, rhs, t);

    let lhs = (|| v.meet_v(v.hcores(e, f)?, v.hcores(g, h)?))();
    let rhs = (|| v.hcores(v.meet_v(e, g)?, v.meet_v(f, h)?))();
    r.identity("v.a", lhs, rhs, t);
    let lhs = (|| v.meet_h(v.vcores(e, f)?, v.vcores(g, h)?))();
    let rhs = (|| v.vcores(v.meet_h(e, g)?, v.meet_h(f, h)?))();
    r.identity("v.b", lhs, rhs, t);
    let lhs = (|| v.meet_v(v.hres(e, f)?, v.hres(g, h)?))();
    let rhs = (|| v.hres(v.meet_v(e, g)?, v.meet_v(f, h)?))();
    r.identity("v.c", lhs, rhs, t);
    let lhs = (|| v.meet_h(v.vres(e, f)?, v.vres(g, h)?))();
    let rhs = (|| v.vres(v.meet_h(e, g)?, v.meet_h(f, h)?))();
    r.identity("v.d", lhs, rhs, t);

    let lhs = (|| v.meet_v(v.meet_h(e, f)?, v.meet_h(g, h)?))();
    let rhs = (|| v.meet_h(v.meet_v(e, g)?, v.meet_v(f, h)?))();
    r.identity("vii", lhs, rhs, t);

    let (a, f, g, x) = (p0, p1, p2, p3);
    let lhs = (|| v.hcores(v.vcores(a, f)?, v.vcores(g, x)?))();
    let rhs = (|| v.vcores(v.hcores(a, g)?, v.hcores(f, x)?))();
    r.identity("vi.a", lhs, rhs, t);
    r.identity("vi.b", rhs, lhs, t);

    let (x, g, f, a) = (p0, p1, p2, p3);
    let lhs = (|| v.hres(v.vres(x, g)?, v.vres(f, a)?))();
    let rhs = (|| v.vres(v.hres(x, f)?, v.hres(g, a)?))();
    r.identity("vi.c", lhs, rhs, t);
    r.identity("vi.d", rhs, lhs, t);
}

/// Pairs `(e, a)` with `[e *| a]` defined where the two readings of `ix.g`
/// give different right-hand sides.
pub fn ix_g_disagreements(g: &DoubleInductiveGroupoid) -> u64 {
    let v = CellView::new(g);
    let n = v.len();
    let mut count = 0;
    for e in 0..n {
        for a in 0..n {
            if v.vres(e, a).is_none() {
                continue;
            }
            let corrected = v.vres(ix_g_restrictor(&v, e, IxReading::Corrected), v.hdom(a));
            let literal = v.vres(ix_g_restrictor(&v, e, IxReading::Literal), v.hdom(a));
            if corrected != literal {
                count += 1;
            }
        }
    }
    count
}
