use std::collections::BTreeSet;

use esnlab::esn::fixtures::{six_automorphisms, symmetric_inverse_groupoid, PartialMap};
use esnlab::esn::is_from_ig;
use esnlab::search::{enumerate_semigroups, enumerate_tables, second_table_search, PairClass, SemigroupClass};
use esnlab::tables::fixtures::cyclic_group;
use esnlab::{CayleyTable, ElementId};

type Raw = Vec<usize>;

fn naive_associative(t: &Raw, n: usize) -> bool {
    let m = |a: usize, b: usize| t[a * n + b];
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))))
}

fn naive_inverse(t: &Raw, n: usize) -> bool {
    let m = |a: usize, b: usize| t[a * n + b];
    (0..n).all(|a| (0..n).filter(|&b| m(m(a, b), a) == a && m(m(b, a), b) == b).count() == 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least relabeled table, with `p[old] = new`.
fn naive_canonical(t: &Raw, n: usize) -> Raw {
    permutations(n)
        .into_iter()
        .map(|p| {
            let mut s = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    s[p[a] * n + p[b]] = p[t[a * n + b]];
                }
            }
            s
        })
        .min()
        .unwrap()
}

fn all_tables(n: usize) -> impl Iterator<Item = Raw> {
    let total = n.pow((n * n) as u32);
    (0..total).map(move |mut code| {
        (0..n * n)
            .map(|_| {
                let d = code % n;
                code /= n;
                d
            })
            .collect()
    })
}

fn to_cay(t: &Raw, n: usize) -> String {
    let rows: Vec<Vec<usize>> = t.chunks(n).map(|r| r.iter().map(|x| x + 1).collect()).collect();
    CayleyTable::from_rows(&rows).unwrap().to_cay()
}

#[test]
fn enumeration_matches_full_scan() {
    for n in 1..=3 {
        for (class, pred) in [
            (SemigroupClass::All, (|_: &Raw, _| true) as fn(&Raw, usize) -> bool),
            (SemigroupClass::Inverse, naive_inverse),
        ] {
            let found: Vec<Raw> = all_tables(n).filter(|t| naive_associative(t, n) && pred(t, n)).collect();
            let classes: BTreeSet<String> = found.iter().map(|t| to_cay(&naive_canonical(t, n), n)).collect();
            let report = enumerate_semigroups(n, class).unwrap();
            assert_eq!(report.labeled_count, found.len() as u64, "order {n} {class}");
            assert_eq!(report.representatives.iter().cloned().collect::<BTreeSet<_>>(), classes, "order {n} {class}");
            let labeled: BTreeSet<String> = enumerate_tables(n, class).unwrap().iter().map(|t| t.to_cay()).collect();
            assert_eq!(labeled, found.iter().map(|t| to_cay(t, n)).collect(), "order {n} {class}");
        }
    }
}

#[test]
fn partial_bijection_product_is_composition() {
    let g = symmetric_inverse_groupoid();
    let t = is_from_ig(&g).unwrap();
    let mut maps: Vec<(&str, PartialMap)> = six_automorphisms();
    maps.push(("empty", [None, None]));
    let map_of = |i: usize| maps.iter().find(|(l, _)| *l == g.arrow_labels[i]).unwrap().1;
    let arrow_of = |m: PartialMap| (0..t.order()).find(|&i| map_of(i) == m).unwrap();
    for x in 0..t.order() {
        for y in 0..t.order() {
            let (mx, my) = (map_of(x), map_of(y));
            let then = [mx[0].and_then(|q| my[q]), mx[1].and_then(|q| my[q])];
            let p = t.product(ElementId::from_index(x), ElementId::from_index(y));
            assert_eq!(p.index(), arrow_of(then), "{} * {}", g.arrow_labels[x], g.arrow_labels[y]);
        }
    }
}

#[test]
fn second_tables_for_z2_match_scan() {
    let z2: Raw = cyclic_group(2).raw().iter().map(|&x| x as usize).collect();
    let n = 2;
    let h = |a: usize, b: usize| z2[a * n + b];
    let expected: Vec<String> = all_tables(n)
        .filter(|v| {
            let m = |a: usize, b: usize| v[a * n + b];
            naive_associative(v, n)
                && naive_inverse(v, n)
                && (0..16).all(|i| {
                    let (a, b, c, d) = (i & 1, (i >> 1) & 1, (i >> 2) & 1, (i >> 3) & 1);
                    h(m(a, b), m(c, d)) == m(h(a, c), h(b, d))
                })
        })
        .map(|v| to_cay(&v, n))
        .collect();
    let found: Vec<String> =
        second_table_search(&cyclic_group(2), PairClass::Inverse).unwrap().iter().map(|t| t.to_cay()).collect();
    assert_eq!(found.iter().collect::<BTreeSet<_>>(), expected.iter().collect::<BTreeSet<_>>());
    assert_eq!(found, vec![cyclic_group(2).to_cay()]);
}
