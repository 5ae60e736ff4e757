//! Exhaustive enumeration of small semigroups and double semigroups.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::double::{check_interchange, DoubleSemigroup};
use crate::error::{Error, Result};
use crate::inverse::analyze_inverse;
use crate::tables::{CayleyTable, Verdict};

/// Largest order for single-table enumeration.
pub const MAX_SINGLE: usize = 5;
/// Largest order for pair enumeration.
pub const MAX_PAIR: usize = 4;

const UNSET: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemigroupClass {
    All,
    Inverse,
    CommutativeInverse,
    NonCommutativeInverse,
}

impl SemigroupClass {
    pub fn name(self) -> &'static str {
        match self {
            SemigroupClass::All => "all",
            SemigroupClass::Inverse => "inverse",
            SemigroupClass::CommutativeInverse => "commutative-inverse",
            SemigroupClass::NonCommutativeInverse => "non-commutative-inverse",
        }
    }

    pub fn accepts(self, t: &CayleyTable) -> bool {
        let inverse = || analyze_inverse(t).is_ok();
        match self {
            SemigroupClass::All => true,
            SemigroupClass::Inverse => inverse(),
            SemigroupClass::CommutativeInverse => t.is_commutative().holds() && inverse(),
            SemigroupClass::NonCommutativeInverse => !t.is_commutative().holds() && inverse(),
        }
    }

    fn requires_inverse(self) -> bool {
        self != SemigroupClass::All
    }
}

impl fmt::Display for SemigroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemigroupClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            SemigroupClass::All,
            SemigroupClass::Inverse,
            SemigroupClass::CommutativeInverse,
            SemigroupClass::NonCommutativeInverse,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    Semigroup,
    Inverse,
}

impl PairClass {
    pub fn name(self) -> &'static str {
        match self {
            PairClass::Semigroup => "semigroup",
            PairClass::Inverse => "inverse",
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "semigroup" => Ok(PairClass::Semigroup),
            "inverse" => Ok(PairClass::Inverse),
            _ => Err(format!("unknown class {s:?}")),
        }
    }
}

/// A statement checked on every enumerated structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Claim {
    fn check<T>(name: &str, items: &[T], ok: impl Fn(&T) -> bool + Sync, show: impl Fn(&T) -> String) -> Claim
    where
        T: Sync,
    {
        let bad = items.par_iter().position_first(|x| !ok(x));
        Claim { name: name.into(), holds: bad.is_none(), witness: bad.map(|i| show(&items[i])) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub order: usize,
    pub class: String,
    pub pairs: bool,
    pub labeled_count: u64,
    pub class_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proper_labeled: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proper_classes: Option<usize>,
    /// Canonical forms as `.cay` bodies, sorted; pairs list `hop` then `vop`.
    pub representatives: Vec<String>,
    pub claims: Vec<Claim>,
}

impl SearchReport {
    pub fn claims_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::OrderTooLarge { order: n, cap });
    }
    Ok(())
}

#[inline]
fn assoc_ok(t: &[u8], n: usize, x: usize, y: usize, z: usize) -> bool {
    let xy = t[x * n + y];
    let yz = t[y * n + z];
    if xy == UNSET || yz == UNSET {
        return true;
    }
    let (l, r) = (t[xy as usize * n + z], t[x * n + yz as usize]);
    l == UNSET || r == UNSET || l == r
}

/// Every associativity triple that reads cell `(a, b)` and is now fully
/// determined holds.
fn assoc_ok_after(t: &[u8], n: usize, a: usize, b: usize) -> bool {
    (0..n).all(|z| assoc_ok(t, n, a, b, z))
        && (0..n).all(|x| assoc_ok(t, n, x, a, b))
        && (0..n * n).all(|i| t[i] as usize != a || assoc_ok(t, n, i / n, i % n, b))
        && (0..n * n).all(|i| t[i] as usize != b || assoc_ok(t, n, a, i / n, i % n))
}

#[inline]
fn interchange_ok(h: &[u8], v: &[u8], n: usize, a: usize, b: usize, c: usize, d: usize) -> bool {
    let (ab, cd) = (v[a * n + b], v[c * n + d]);
    if ab == UNSET || cd == UNSET {
        return true;
    }
    let r = v[h[a * n + c] as usize * n + h[b * n + d] as usize];
    r == UNSET || r == h[ab as usize * n + cd as usize]
}

/// Interchange quadruples that read `vop` cell `(p, q)`, with `hop` total.
fn interchange_ok_after(h: &[u8], v: &[u8], n: usize, p: usize, q: usize) -> bool {
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    pairs().all(|(c, d)| interchange_ok(h, v, n, p, q, c, d))
        && pairs().all(|(a, b)| interchange_ok(h, v, n, a, b, p, q))
        && pairs().filter(|&(a, c)| h[a * n + c] as usize == p).all(|(a, c)| {
            pairs()
                .filter(|&(b, d)| h[b * n + d] as usize == q)
                .all(|(b, d)| interchange_ok(h, v, n, a, b, c, d))
        })
}

/// Depth-first fill of `t` from `pos` in row-major order.
fn fill(t: &mut [u8], n: usize, pos: usize, stop: usize, ok: &impl Fn(&[u8], usize, usize) -> bool, out: &mut impl FnMut(&[u8])) {
    if pos == stop {
        out(t);
        return;
    }
    let (a, b) = (pos / n, pos % n);
    for v in 0..n as u8 {
        t[pos] = v;
        if ok(t, a, b) {
            fill(t, n, pos + 1, stop, ok, out);
        }
    }
    t[pos] = UNSET;
}

/// All associative tables of order `n` in `class`, in lexicographic order.
/// The first row is filled sequentially and the rest in parallel.
pub fn enumerate_tables(n: usize, class: SemigroupClass) -> Result<Vec<CayleyTable>> {
    check_cap(n, MAX_SINGLE)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let ok = |t: &[u8], a: usize, b: usize| assoc_ok_after(t, n, a, b);
    let mut prefixes = Vec::new();
    fill(&mut vec![UNSET; n * n], n, 0, n, &ok, &mut |t| prefixes.push(t.to_vec()));
    let parts: Vec<Vec<CayleyTable>> = prefixes
        .into_par_iter()
        .map(|mut t| {
            let mut found = Vec::new();
            fill(&mut t, n, n, n * n, &ok, &mut |t| {
                let table = CayleyTable::from_raw(n, t.to_vec());
                if class.accepts(&table) {
                    found.push(table);
                }
            });
            found
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

fn canonical_set<T: Ord + Send>(items: Vec<T>) -> Vec<T> {
    items.into_par_iter().collect::<BTreeSet<T>>().into_iter().collect()
}

/// Labeled and isomorphism-class counts of the tables in `class`.
pub fn enumerate_semigroups(n: usize, class: SemigroupClass) -> Result<SearchReport> {
    let tables = enumerate_tables(n, class)?;
    let classes = canonical_set(tables.par_iter().map(CayleyTable::canonical_form).collect());
    let mut claims = vec![Claim::check("associative", &tables, |t| t.is_associative().holds(), CayleyTable::to_cay)];
    if class.requires_inverse() {
        claims.push(Claim::check("inverse", &tables, |t| analyze_inverse(t).is_ok(), CayleyTable::to_cay));
    }
    Ok(SearchReport {
        schema_version: crate::SCHEMA_VERSION,
        order: n,
        class: class.name().into(),
        pairs: false,
        labeled_count: tables.len() as u64,
        class_count: classes.len(),
        proper_labeled: None,
        proper_classes: None,
        representatives: classes.iter().map(CayleyTable::to_cay).collect(),
        claims,
    })
}

/// Every `vop` making `(hop, vop)` a double semigroup, or a double inverse
/// semigroup for [`PairClass::Inverse`], in lexicographic order.
pub fn second_table_search(hop: &CayleyTable, class: PairClass) -> Result<Vec<CayleyTable>> {
    let n = hop.order();
    check_cap(n, MAX_SINGLE)?;
    if let Verdict::Fails((a, b, c)) = hop.is_associative() {
        return Err(Error::NotASemigroup(a, b, c));
    }
    if class == PairClass::Inverse && analyze_inverse(hop).is_err() {
        return Ok(Vec::new());
    }
    let h = hop.raw();
    let ok = |t: &[u8], a: usize, b: usize| assoc_ok_after(t, n, a, b) && interchange_ok_after(h, t, n, a, b);
    let mut found = Vec::new();
    fill(&mut vec![UNSET; n * n], n, 0, n * n, &ok, &mut |t| {
        let vop = CayleyTable::from_raw(n, t.to_vec());
        if class == PairClass::Semigroup || analyze_inverse(&vop).is_ok() {
            found.push(vop);
        }
    });
    Ok(found)
}

/// Every labeled pair of order `n` in `class`, ordered by `hop` then `vop`.
pub fn search_double_pairs(n: usize, class: PairClass) -> Result<Vec<DoubleSemigroup>> {
    check_cap(n, MAX_PAIR)?;
    let hop_class = match class {
        PairClass::Semigroup => SemigroupClass::All,
        PairClass::Inverse => SemigroupClass::Inverse,
    };
    let hops = enumerate_tables(n, hop_class)?;
    let parts: Vec<Result<Vec<DoubleSemigroup>>> = hops
        .into_par_iter()
        .map(|hop| {
            let vops = second_table_search(&hop, class)?;
            vops.into_iter().map(|vop| DoubleSemigroup::new(hop.clone(), vop)).collect()
        })
        .collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Counts of labeled pairs, isomorphism classes and proper pairs, with the
/// claims every pair is expected to satisfy.
pub fn search_double(n: usize, class: PairClass) -> Result<SearchReport> {
    let pairs = search_double_pairs(n, class)?;
    let classes = canonical_set(pairs.par_iter().map(DoubleSemigroup::canonical_form).collect());
    let proper = |d: &DoubleSemigroup| d.hop() != d.vop();
    let show = |d: &DoubleSemigroup| d.to_cay();
    let labeled: BTreeSet<&DoubleSemigroup> = pairs.iter().collect();
    let mut claims = vec![
        Claim::check("interchange", &pairs, |d| check_interchange(d.hop(), d.vop()).holds(), show),
        Claim::check("swap_invariant", &pairs, |d| labeled.contains(&d.swapped()), show),
    ];
    if class == PairClass::Inverse {
        claims.push(Claim::check("improper", &pairs, |d| !proper(d), show));
        claims.push(Claim::check(
            "commutative",
            &pairs,
            |d| d.hop().is_commutative().holds() && d.vop().is_commutative().holds(),
            show,
        ));
        claims.push(Claim::check(
            "clifford",
            &pairs,
            |d| [d.hop(), d.vop()].iter().all(|t| analyze_inverse(t).is_ok_and(|a| a.is_clifford().holds())),
            show,
        ));
    }
    Ok(SearchReport {
        schema_version: crate::SCHEMA_VERSION,
        order: n,
        class: class.name().into(),
        pairs: true,
        labeled_count: pairs.len() as u64,
        class_count: classes.len(),
        proper_labeled: Some(pairs.iter().filter(|d| proper(d)).count() as u64),
        proper_classes: Some(classes.iter().filter(|d| proper(d)).count()),
        representatives: classes.iter().map(DoubleSemigroup::to_cay).collect(),
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::fixtures::*;

    #[test]
    fn small_counts() {
        let counts: Vec<(u64, usize)> = (1..=3)
            .map(|n| {
                let r = enumerate_semigroups(n, SemigroupClass::All).unwrap();
                (r.labeled_count, r.class_count)
            })
            .collect();
        assert_eq!(counts, vec![(1, 1), (8, 5), (113, 24)]);
    }

    #[test]
    fn inverse_class_counts() {
        let counts: Vec<usize> =
            (1..=4).map(|n| enumerate_semigroups(n, SemigroupClass::Inverse).unwrap().class_count).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
    }

    #[test]
    fn caps() {
        assert!(matches!(enumerate_tables(6, SemigroupClass::All), Err(Error::OrderTooLarge { order: 6, cap: 5 })));
        assert!(matches!(search_double(5, PairClass::Inverse), Err(Error::OrderTooLarge { order: 5, cap: 4 })));
    }

    #[test]
    fn second_table_examples() {
        assert_eq!(second_table_search(&cyclic_group(2), PairClass::Inverse).unwrap(), vec![cyclic_group(2)]);
        let with_left = second_table_search(&left_zero(2), PairClass::Semigroup).unwrap();
        assert!(with_left.contains(&right_zero(2)));
        assert!(second_table_search(&brandt_b2(), PairClass::Inverse).unwrap().is_empty());
        let bad = CayleyTable::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert!(matches!(second_table_search(&bad, PairClass::Semigroup), Err(Error::NotASemigroup(..))));
    }

    #[test]
    fn order_one_pair() {
        let r = search_double(1, PairClass::Semigroup).unwrap();
        assert_eq!((r.labeled_count, r.proper_labeled), (1, Some(0)));
    }

    #[test]
    fn order_two_has_proper_pairs() {
        let r = search_double(2, PairClass::Semigroup).unwrap();
        assert!(r.proper_labeled.unwrap() > 0);
        assert!(r.claims_hold());
        let proj = DoubleSemigroup::new(left_zero(2), right_zero(2)).unwrap().canonical_form();
        assert!(r.representatives.contains(&proj.to_cay()));
    }

    #[test]
    fn class_names_parse() {
        for c in ["all", "inverse", "commutative-inverse", "non-commutative-inverse"] {
            assert_eq!(c.parse::<SemigroupClass>().unwrap().name(), c);
        }
        assert!("x".parse::<PairClass>().is_err());
    }
}
