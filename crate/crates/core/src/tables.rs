//! Cayley tables: the carrier of every structure in this crate.
//!
//! Elements are stored 0-based internally and presented 1-based everywhere a
//! human or a file sees them. A table is always total: every product is an
//! element of the carrier.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// Largest order a table may have (entries are stored as bytes).
pub const MAX_ORDER: usize = 255;

/// An element of a finite carrier, displayed with its 1-based label.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(u8);

impl ElementId {
    pub fn from_index(index: usize) -> Self {
        assert!(index < MAX_ORDER, "element index {index} out of range");
        ElementId(index as u8)
    }

    /// Builds an element from its 1-based label.
    pub fn from_label(label: usize) -> Option<Self> {
        (1..=MAX_ORDER)
            .contains(&label)
            .then(|| ElementId((label - 1) as u8))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn label(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Serialize for ElementId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.label() as u64)
    }
}

impl<'de> Deserialize<'de> for ElementId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let label = usize::deserialize(d)?;
        ElementId::from_label(label)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid element label {label}")))
    }
}

/// Outcome of a decidable check, carrying a witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    fn from_witness(w: Option<W>) -> Self {
        w.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// A total binary operation on `{1..n}`; row = left operand.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<u8>,
}

impl CayleyTable {
    /// Builds a table from rows of 1-based labels.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let err = |line, kind| Error::Parse(ParseError { line, column: 1, kind });
        if n == 0 {
            return Err(err(1, ParseErrorKind::ZeroOrder));
        }
        if n > MAX_ORDER {
            return Err(err(1, ParseErrorKind::OrderTooLarge(n)));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(err(i + 2, ParseErrorKind::RowLength { found: row.len(), expected: n }));
            }
            for &v in row {
                if !(1..=n).contains(&v) {
                    return Err(err(i + 2, ParseErrorKind::OutOfRange { value: v, order: n }));
                }
                entries.push((v - 1) as u8);
            }
        }
        Ok(CayleyTable { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(ElementId, ElementId) -> ElementId) -> Self {
        assert!((1..=MAX_ORDER).contains(&n));
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(ElementId::from_index(a), ElementId::from_index(b)).index();
                assert!(v < n, "product out of range");
                entries.push(v as u8);
            }
        }
        CayleyTable { n, entries }
    }

    /// Builds a table from 0-based row-major entries.
    pub(crate) fn from_raw(n: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        debug_assert!(entries.iter().all(|&v| (v as usize) < n));
        CayleyTable { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.n).map(ElementId::from_index)
    }

    /// Looks up an element by its 1-based label.
    pub fn element(&self, label: usize) -> Option<ElementId> {
        (1..=self.n).contains(&label).then(|| ElementId::from_index(label - 1))
    }

    #[inline]
    pub fn product(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.entries[a.index() * self.n + b.index()])
    }

    #[inline]
    pub(crate) fn mul(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.n + b] as usize
    }

    /// Row-major 0-based entries.
    pub fn raw(&self) -> &[u8] {
        &self.entries
    }

    /// Rows of 1-based labels.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v as usize + 1).collect())
            .collect()
    }

    /// Renders the `.cay` body: the order, then one line per row.
    pub fn to_cay(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Applies a relabeling: element `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut entries = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                entries[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u8;
            }
        }
        CayleyTable { n, entries }
    }

    /// The opposite operation `a*'b = b*a`.
    pub fn opposite(&self) -> CayleyTable {
        CayleyTable::from_fn(self.n, |a, b| self.product(b, a))
    }

    /// Least triple `(a, b, c)` with `(ab)c != a(bc)`.
    pub fn is_associative(&self) -> Verdict<(ElementId, ElementId, ElementId)> {
        let n = self.n;
        let w = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .find(|&(a, b, c)| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)))
            .map(|(a, b, c)| (ElementId::from_index(a), ElementId::from_index(b), ElementId::from_index(c)));
        Verdict::from_witness(w)
    }

    pub(crate) fn require_semigroup(&self) -> Result<()> {
        match self.is_associative() {
            Verdict::Holds => Ok(()),
            Verdict::Fails((a, b, c)) => Err(Error::NotASemigroup(a, b, c)),
        }
    }

    /// Least pair `(a, b)` with `ab != ba`.
    pub fn is_commutative(&self) -> Verdict<(ElementId, ElementId)> {
        let n = self.n;
        let w = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
            .map(|(a, b)| (ElementId::from_index(a), ElementId::from_index(b)));
        Verdict::from_witness(w)
    }

    /// `{ e : ee = e }` in ascending order.
    pub fn idempotents(&self) -> Vec<ElementId> {
        self.elements().filter(|&e| self.product(e, e) == e).collect()
    }

    pub fn is_idempotent(&self, e: ElementId) -> bool {
        self.product(e, e) == e
    }

    /// Least `a` with no `x` satisfying `axa = a`.
    pub fn is_regular(&self) -> Result<Verdict<ElementId>> {
        self.require_semigroup()?;
        let w = self.elements().find(|&a| {
            !self
                .elements()
                .any(|x| self.product(self.product(a, x), a) == a)
        });
        Ok(Verdict::from_witness(w))
    }

    /// The lexicographically least table among all relabelings.
    pub fn canonical_form(&self) -> CayleyTable {
        let n = self.n;
        let mut best = self.entries.clone();
        let mut candidate = vec![0u8; n * n];
        for_each_permutation(n, |perm| {
            // inverse[new] = old
            let mut inverse = [0usize; MAX_PERM];
            for (old, &new) in perm.iter().enumerate() {
                inverse[new] = old;
            }
            // Build row-major and bail out as soon as we are larger.
            let mut less = false;
            for pos in 0..n * n {
                let (na, nb) = (pos / n, pos % n);
                let v = perm[self.mul(inverse[na], inverse[nb])] as u8;
                if !less {
                    if v > best[pos] {
                        return;
                    }
                    if v < best[pos] {
                        less = true;
                    }
                }
                candidate[pos] = v;
            }
            if less {
                best.copy_from_slice(&candidate);
            }
        });
        CayleyTable { n, entries: best }
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cay())
    }
}

impl FromStr for CayleyTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_table(s)
    }
}

/// Permutations are enumerated on stack buffers; canonical forms beyond this
/// order are far outside desk scale anyway.
pub(crate) const MAX_PERM: usize = 10;

/// Calls `f` with every permutation of `0..n` in lexicographic order.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    assert!(n <= MAX_PERM, "relabeling search limited to order {MAX_PERM}");
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        f(&perm);
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next significant line as (1-based line number, content).
    fn next_significant(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Some((i + 1, line));
        }
        None
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skip = rest.len() - rest.trim_start().len();
        offset += skip;
        rest = &rest[skip..];
        if rest.is_empty() {
            return None;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let tok = &rest[..end];
        let col = line[..offset].chars().count() + 1;
        offset += end;
        rest = &rest[end..];
        Some((col, tok))
    })
}

fn parse_one(lines: &mut Lines<'_>) -> std::result::Result<CayleyTable, ParseError> {
    let (line_no, header) = lines.next_significant().ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Empty,
    })?;
    let mut toks = tokens(header);
    let (col, tok) = toks.next().expect("significant line has a token");
    let at = |column, kind| ParseError { line: line_no, column, kind };
    let n: usize = tok
        .parse()
        .map_err(|_| at(col, ParseErrorKind::BadOrder(tok.to_string())))?;
    if let Some((c, _)) = toks.next() {
        return Err(at(c, ParseErrorKind::TrailingContent));
    }
    if n == 0 {
        return Err(at(col, ParseErrorKind::ZeroOrder));
    }
    if n > MAX_ORDER {
        return Err(at(col, ParseErrorKind::OrderTooLarge(n)));
    }
    let mut entries = Vec::with_capacity(n * n);
    for row in 0..n {
        let (line_no, text) = lines.next_significant().ok_or(ParseError {
            line: line_no + row + 1,
            column: 1,
            kind: ParseErrorKind::MissingRows { expected: n, found: row },
        })?;
        let at = |column, kind| ParseError { line: line_no, column, kind };
        let mut found = 0;
        for (col, tok) in tokens(text) {
            let v: usize = tok
                .parse()
                .map_err(|_| at(col, ParseErrorKind::NonNumeric(tok.to_string())))?;
            if !(1..=n).contains(&v) {
                return Err(at(col, ParseErrorKind::OutOfRange { value: v, order: n }));
            }
            found += 1;
            if found > n {
                return Err(at(col, ParseErrorKind::RowLength { found, expected: n }));
            }
            entries.push((v - 1) as u8);
        }
        if found != n {
            return Err(at(text.len() + 1, ParseErrorKind::RowLength { found, expected: n }));
        }
    }
    Ok(CayleyTable { n, entries })
}

/// Parses a `.cay` body: `#` comment lines, the order `n`, then `n` rows.
pub fn parse_table(text: &str) -> Result<CayleyTable> {
    let mut lines = Lines::new(text);
    let table = parse_one(&mut lines)?;
    if let Some((line, _)) = lines.next_significant() {
        return Err(ParseError { line, column: 1, kind: ParseErrorKind::TrailingContent }.into());
    }
    Ok(table)
}

/// Parses `count` consecutive `.cay` bodies from one text.
pub fn parse_tables(text: &str, count: usize) -> Result<Vec<CayleyTable>> {
    let mut lines = Lines::new(text);
    let tables = (0..count)
        .map(|_| parse_one(&mut lines))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if let Some((line, _)) = lines.next_significant() {
        return Err(ParseError { line, column: 1, kind: ParseErrorKind::TrailingContent }.into());
    }
    Ok(tables)
}

/// Frequently used small tables.
pub mod fixtures {
    use super::*;

    /// The 5-element Brandt semigroup, labeled as in the `smallsemi` entry (5, 415).
    pub fn brandt_b2() -> CayleyTable {
        CayleyTable::from_rows(&[
            vec![1, 1, 1, 1, 1],
            vec![1, 1, 4, 1, 2],
            vec![1, 5, 1, 3, 1],
            vec![1, 2, 1, 4, 1],
            vec![1, 1, 3, 1, 5],
        ])
        .expect("valid table")
    }

    /// `a*b = a`.
    pub fn left_zero(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |a, _| a)
    }

    /// `a*b = b`.
    pub fn right_zero(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |_, b| b)
    }

    /// Addition modulo `n`, element `k+1` standing for residue `k`.
    pub fn cyclic_group(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |a, b| ElementId::from_index((a.index() + b.index()) % n))
    }

    /// Meet table of the chain `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |a, b| a.min(b))
    }

    /// The 3-element Clifford semigroup `{e0} ∪ Z2`, with `e0 = 1` below the
    /// group `{2, 3}` whose unit is `2`.
    pub fn clifford3() -> CayleyTable {
        CayleyTable::from_rows(&[vec![1, 1, 1], vec![1, 2, 3], vec![1, 3, 2]]).expect("valid table")
    }
}
