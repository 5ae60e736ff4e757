//! Dense binary relations on `0..n`, used for every partial order in the crate.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, bits: vec![false; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = false;
    }

    /// All related pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |a| (0..self.n).map(move |b| (a, b)))
            .filter(move |&(a, b)| self.contains(a, b))
    }

    /// Checks reflexivity, antisymmetry and transitivity, describing the
    /// least offending tuple on failure.
    pub fn check_partial_order(&self) -> Result<(), String> {
        let n = self.n;
        if let Some(a) = (0..n).find(|&a| !self.contains(a, a)) {
            return Err(format!("not reflexive at {a}"));
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.contains(a, b) && self.contains(b, a) {
                    return Err(format!("not antisymmetric at ({a}, {b})"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.contains(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.contains(b, c) && !self.contains(a, c) {
                        return Err(format!("not transitive at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing in `subset` strictly between.
    pub fn covering_pairs(&self, subset: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in subset {
            for &b in subset {
                if a == b || !self.contains(a, b) {
                    continue;
                }
                let between = subset
                    .iter()
                    .any(|&c| c != a && c != b && self.contains(a, c) && self.contains(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A binary operation that may be undefined at some cells.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartialTable {
    rows: usize,
    cols: usize,
    cells: Vec<Option<usize>>,
}

impl PartialTable {
    pub fn undefined(rows: usize, cols: usize) -> Self {
        PartialTable { rows, cols, cells: vec![None; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Option<usize>) -> Self {
        let mut t = Self::undefined(rows, cols);
        for a in 0..rows {
            for b in 0..cols {
                t.cells[a * cols + b] = f(a, b);
            }
        }
        t
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        if a < self.rows && b < self.cols {
            self.cells[a * self.cols + b]
        } else {
            None
        }
    }

    pub fn set(&mut self, a: usize, b: usize, value: Option<usize>) {
        self.cells[a * self.cols + b] = value;
    }

    /// Defined cells as `(a, b, value)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.rows)
            .flat_map(move |a| (0..self.cols).map(move |b| (a, b)))
            .filter_map(move |(a, b)| self.get(a, b).map(|v| (a, b, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_order() {
        let r = Relation::from_fn(3, |a, b| a <= b);
        assert!(r.check_partial_order().is_ok());
        assert_eq!(r.covering_pairs(&[0, 1, 2]), vec![(0, 1), (1, 2)]);
        assert_eq!(r.pairs().count(), 6);
    }

    #[test]
    fn detects_failures() {
        let mut r = Relation::identity(3);
        r.insert(0, 1);
        r.insert(1, 2);
        assert_eq!(r.check_partial_order(), Err("not transitive at (0, 1, 2)".into()));
        r.insert(1, 0);
        assert!(r.check_partial_order().unwrap_err().contains("antisymmetric"));
        r.remove(2, 2);
        assert!(r.check_partial_order().unwrap_err().contains("reflexive"));
    }
}
