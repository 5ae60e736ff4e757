//! Groupoids of partial bijections on the two-point set `{a, b}`.

use super::{derive_operations, InductiveGroupoid};
use crate::relation::{PartialTable, Relation};

/// A partial map on `{a, b}`: position 0 is the image of `a`, 1 of `b`.
pub type PartialMap = [Option<usize>; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapOrder {
    /// `x <= y` iff the graph of `x` is contained in the graph of `y`.
    GraphInclusion,
    /// `x <= y` iff both domain and image of `x` are contained in those of `y`.
    DomainAndImage,
}

const POINTS: [&str; 2] = ["a", "b"];

fn domain(m: &PartialMap) -> u8 {
    (0..2).filter(|&p| m[p].is_some()).fold(0, |acc, p| acc | 1 << p)
}

fn image(m: &PartialMap) -> u8 {
    m.iter().flatten().fold(0, |acc, &q| acc | 1 << q)
}

fn subset_label(mask: u8) -> String {
    let names: Vec<&str> = (0..2).filter(|p| mask & (1 << p) != 0).map(|p| POINTS[p]).collect();
    format!("{{{}}}", names.join(","))
}

/// Apply `x` then `y`.
fn then(x: &PartialMap, y: &PartialMap) -> PartialMap {
    [x[0].and_then(|q| y[q]), x[1].and_then(|q| y[q])]
}

/// The groupoid whose arrows are the given partial bijections and whose
/// objects are their domains and images. Composites missing from the list
/// are left undefined, and the remaining operations are derived from the
/// chosen order.
pub fn partial_bijection_groupoid(arrows: &[(&str, PartialMap)], order: MapOrder) -> InductiveGroupoid {
    let mut masks: Vec<u8> = arrows.iter().flat_map(|(_, m)| [domain(m), image(m)]).collect();
    masks.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    masks.dedup();
    let object_of = |mask: u8| masks.iter().position(|&m| m == mask).unwrap();
    let identity_map = |mask: u8| -> PartialMap {
        [(mask & 1 != 0).then_some(0), (mask & 2 != 0).then_some(1)]
    };
    let find = |m: &PartialMap| arrows.iter().position(|(_, a)| a == m);
    let identity = masks
        .iter()
        .map(|&mask| find(&identity_map(mask)).expect("identity arrow present"))
        .collect();
    let na = arrows.len();
    let no = masks.len();
    let leq = Relation::from_fn(na, |x, y| {
        let (mx, my) = (&arrows[x].1, &arrows[y].1);
        match order {
            MapOrder::GraphInclusion => (0..2).all(|p| mx[p].is_none() || mx[p] == my[p]),
            MapOrder::DomainAndImage => {
                domain(mx) & !domain(my) == 0 && image(mx) & !image(my) == 0
            }
        }
    });
    let dom: Vec<usize> = arrows.iter().map(|(_, m)| object_of(domain(m))).collect();
    let cod: Vec<usize> = arrows.iter().map(|(_, m)| object_of(image(m))).collect();
    let mut g = InductiveGroupoid {
        object_labels: masks.iter().map(|&m| subset_label(m)).collect(),
        arrow_labels: arrows.iter().map(|(l, _)| l.to_string()).collect(),
        identity,
        compose: PartialTable::from_fn(na, na, |x, y| {
            if cod[x] != dom[y] {
                return None;
            }
            find(&then(&arrows[x].1, &arrows[y].1))
        }),
        dom,
        cod,
        inverse: Vec::new(),
        leq,
        object_meet: PartialTable::undefined(no, no),
        restriction: PartialTable::undefined(no, na),
        corestriction: PartialTable::undefined(na, no),
    };
    derive_operations(&mut g);
    g
}

/// The six partial automorphisms `id_A, sigma, id_a, f, f_inv, id_b`.
pub fn six_automorphisms() -> Vec<(&'static str, PartialMap)> {
    vec![
        ("id_A", [Some(0), Some(1)]),
        ("sigma", [Some(1), Some(0)]),
        ("id_a", [Some(0), None]),
        ("f", [Some(1), None]),
        ("f_inv", [None, Some(0)]),
        ("id_b", [None, Some(1)]),
    ]
}

/// All seven partial bijections of `{a, b}`, ordered by graph inclusion.
pub fn symmetric_inverse_groupoid() -> InductiveGroupoid {
    let mut arrows = six_automorphisms();
    arrows.push(("empty", [None, None]));
    partial_bijection_groupoid(&arrows, MapOrder::GraphInclusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esn::validate_ig;

    fn arrow(g: &InductiveGroupoid, label: &str) -> usize {
        g.arrow_labels.iter().position(|l| l == label).unwrap()
    }

    fn object(g: &InductiveGroupoid, label: &str) -> usize {
        g.object_labels.iter().position(|l| l == label).unwrap()
    }

    #[test]
    fn symmetric_inverse_groupoid_is_inductive() {
        let g = symmetric_inverse_groupoid();
        assert_eq!(g.object_labels, vec!["{a,b}", "{a}", "{b}", "{}"]);
        let r = validate_ig(&g);
        assert!(r.is_valid(), "{}", r.summary());
        let sigma = arrow(&g, "sigma");
        assert_eq!(g.restriction.get(object(&g, "{a}"), sigma), Some(arrow(&g, "f")));
        assert_eq!(g.restriction.get(object(&g, "{b}"), sigma), Some(arrow(&g, "f_inv")));
        assert_eq!(g.object_meet.get(object(&g, "{a}"), object(&g, "{b}")), Some(object(&g, "{}")));
    }

    #[test]
    fn six_arrows_lack_meets() {
        let g = partial_bijection_groupoid(&six_automorphisms(), MapOrder::GraphInclusion);
        let r = validate_ig(&g);
        assert!(r.get("semilattice").unwrap().violations > 0);
        assert_eq!(g.object_meet.get(object(&g, "{a}"), object(&g, "{b}")), None);
    }

    #[test]
    fn domain_image_order_breaks_uniqueness() {
        let g = partial_bijection_groupoid(&six_automorphisms(), MapOrder::DomainAndImage);
        let r = validate_ig(&g);
        let t = r.get("order.iii").unwrap();
        assert!(t.violations > 0);
        assert!(t.witnesses.iter().any(|w| w.detail.contains("not unique")));
    }
}
