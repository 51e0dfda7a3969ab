//! Subsets, Young diagrams, link patterns, plane partitions, and the
//! conversions between them.
//!
//! The three indexings of the same set: an `n`-subset `r` of `[N]`, the Young
//! diagram with rows `lambda_i = (N-n) - r_i + i` (so `r = {N-n+1,..,N}` is
//! the empty diagram and `r = {1,..,n}` the full `n x (N-n)` rectangle), and
//! the link pattern obtained by reading elements of the complement as
//! openings and elements of `r` as closings, matching parenthesis-wise.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_rational::BigRational;

/// An `n`-element subset of `[N] = {1,..,N}`, kept sorted increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetIndex {
    pub n: usize,
    pub big_n: usize,
    pub elements: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(big_n: usize, elements: Vec<usize>) -> Self {
        let n = elements.len();
        assert!(elements.windows(2).all(|w| w[0] < w[1]), "elements must increase");
        assert!(elements.iter().all(|&e| 1 <= e && e <= big_n), "elements out of range");
        SubsetIndex { n, big_n, elements }
    }

    pub fn complement(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.big_n - self.n);
        let mut it = self.elements.iter().peekable();
        for v in 1..=self.big_n {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                out.push(v);
            }
        }
        out
    }

    pub fn contains(&self, v: usize) -> bool {
        self.elements.binary_search(&v).is_ok()
    }

    /// Number of boxes `|r| = n(N-n) - sum(r_i - i)`.
    pub fn boxes(&self) -> usize {
        let shift: usize = self.elements.iter().enumerate().map(|(i, r)| r - (i + 1)).sum();
        self.n * (self.big_n - self.n) - shift
    }

    /// Pointwise order: `self <= other` iff `self_i <= other_i` for all `i`.
    /// Young inclusion is the opposite: `other ⊆ self` as diagrams.
    pub fn leq(&self, other: &SubsetIndex) -> bool {
        assert_eq!(self.n, other.n);
        assert_eq!(self.big_n, other.big_n);
        self.elements.iter().zip(&other.elements).all(|(a, b)| a <= b)
    }

    /// Apply the adjacent transposition `i <-> i+1` to the subset.
    pub fn tau(&self, i: usize) -> SubsetIndex {
        assert!(1 <= i && i < self.big_n);
        let has_i = self.contains(i);
        let has_j = self.contains(i + 1);
        if has_i == has_j {
            return self.clone();
        }
        let mut els = self.elements.clone();
        for e in els.iter_mut() {
            if *e == i {
                *e = i + 1;
            } else if *e == i + 1 {
                *e = i;
            }
        }
        els.sort_unstable();
        SubsetIndex::new(self.big_n, els)
    }

    pub fn to_young(&self) -> YoungDiagram {
        let nn = self.big_n - self.n;
        let rows = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, r)| nn + (i + 1) - r)
            .collect();
        YoungDiagram { n: self.n, big_n: self.big_n, rows }
    }

    pub fn to_link_pattern(&self) -> LinkPattern {
        let mut stack: Vec<usize> = Vec::new();
        let mut pairs = Vec::new();
        let mut unpaired = Vec::new();
        for v in 1..=self.big_n {
            if self.contains(v) {
                // closing
                if let Some(o) = stack.pop() {
                    pairs.push((o, v));
                } else {
                    unpaired.push(v);
                }
            } else {
                stack.push(v);
            }
        }
        unpaired.extend(stack);
        unpaired.sort_unstable();
        pairs.sort_unstable();
        LinkPattern { big_n: self.big_n, pairs, unpaired }
    }

    /// Staircase membership (only for `N = 2n`): true iff the link pattern
    /// is full, i.e. `r_i >= 2i` for all `i`.
    pub fn staircase_test(&self) -> Result<bool, &'static str> {
        if self.big_n != 2 * self.n {
            return Err("staircase test requires N = 2n");
        }
        Ok(self.elements.iter().enumerate().all(|(i, r)| *r >= 2 * (i + 1)))
    }

    /// Text form `e1,e2,...@n=..,N=..`.
    pub fn text(&self) -> alloc::string::String {
        let els: Vec<alloc::string::String> =
            self.elements.iter().map(|e| format!("{e}")).collect();
        format!("{}@n={},N={}", els.join(","), self.n, self.big_n)
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// The staircase subset `{2, 4, .., 2n}` of `[2n]`.
pub fn staircase(n: usize) -> SubsetIndex {
    SubsetIndex::new(2 * n, (1..=n).map(|i| 2 * i).collect())
}

/// Young diagram with at most `n` rows, each of length at most `N-n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungDiagram {
    pub n: usize,
    pub big_n: usize,
    /// Weakly decreasing row lengths, `n` entries (zeros kept).
    pub rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn to_subset(&self) -> SubsetIndex {
        let nn = self.big_n - self.n;
        let els = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, l)| nn + (i + 1) - l)
            .collect();
        SubsetIndex::new(self.big_n, els)
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().sum()
    }
}

/// A (possibly partial) link pattern on `N` vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkPattern {
    pub big_n: usize,
    /// Chords `(open, close)` with `open < close`, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Unpaired vertices, sorted.
    pub unpaired: Vec<usize>,
}

impl LinkPattern {
    pub fn new(big_n: usize, mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        let mut seen = vec![false; big_n + 1];
        for &(a, b) in &pairs {
            assert!(a < b && b <= big_n);
            assert!(!seen[a] && !seen[b], "vertex reused");
            seen[a] = true;
            seen[b] = true;
        }
        let unpaired = (1..=big_n).filter(|&v| !seen[v]).collect();
        LinkPattern { big_n, pairs, unpaired }
    }

    pub fn num_chords(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_full(&self) -> bool {
        self.unpaired.is_empty()
    }

    pub fn is_noncrossing(&self) -> bool {
        for (idx, &(a, b)) in self.pairs.iter().enumerate() {
            for &(c, d) in &self.pairs[idx + 1..] {
                if a < c && c < b && b < d {
                    return false;
                }
            }
        }
        // a chord enclosing an unpaired vertex would cross its ray
        for &(a, b) in &self.pairs {
            for &u in &self.unpaired {
                if a < u && u < b {
                    return false;
                }
            }
        }
        true
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        for &(a, b) in &self.pairs {
            if a == v {
                return Some(b);
            }
            if b == v {
                return Some(a);
            }
        }
        None
    }

    /// Inverse bijection for a fixed `n`: closings plus the first
    /// `n - #chords` unpaired vertices.
    pub fn to_subset(&self, n: usize) -> SubsetIndex {
        assert!(self.pairs.len() <= n && n <= self.big_n - self.pairs.len());
        let mut els: Vec<usize> = self.pairs.iter().map(|&(_, b)| b).collect();
        els.extend(self.unpaired.iter().take(n - self.pairs.len()));
        els.sort_unstable();
        SubsetIndex::new(self.big_n, els)
    }

    /// Rotate all labels by one step to the right (`v -> v+1 mod N`).
    pub fn rotate_right(&self) -> LinkPattern {
        let shift = |v: usize| if v == self.big_n { 1 } else { v + 1 };
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (shift(a), shift(b));
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        LinkPattern::new(self.big_n, pairs)
    }

    /// Temperley-Lieb generator: connect `i` and `i+1` (cyclic for `i = N`).
    /// Returns the new pattern and the power of `tau` picked up (1 if the
    /// two vertices were already connected, else 0).
    pub fn e(&self, i: usize) -> (LinkPattern, u32) {
        let j = if i == self.big_n { 1 } else { i + 1 };
        let pi = self.partner(i);
        let pj = self.partner(j);
        if pi == Some(j) {
            return (self.clone(), 1);
        }
        let mut pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|&(a, b)| a != i && b != i && a != j && b != j)
            .collect();
        pairs.push(if i < j { (i, j) } else { (j, i) });
        if let (Some(a), Some(b)) = (pi, pj) {
            pairs.push(if a < b { (a, b) } else { (b, a) });
        }
        (LinkPattern::new(self.big_n, pairs), 0)
    }

    /// Text form `pairs=a-b,c-d;N=..`.
    pub fn text(&self) -> alloc::string::String {
        let ps: Vec<alloc::string::String> =
            self.pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!("pairs={};N={}", ps.join(","), self.big_n)
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// All `n`-subsets of `[N]` in colexicographic order.
pub fn enumerate_subsets(n: usize, big_n: usize) -> Vec<SubsetIndex> {
    assert!(n <= big_n);
    if n == 0 {
        return vec![SubsetIndex::new(big_n, vec![])];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(SubsetIndex::new(big_n, cur.clone()));
        // colex successor: bump the smallest position that can move without
        // reaching its right neighbour
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            let limit = if i + 1 < n { cur[i + 1] - 1 } else { big_n };
            if cur[i] < limit {
                cur[i] += 1;
                for (k, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = k + 1;
                }
                break;
            }
            i += 1;
        }
    }
}

/// All full link patterns of size `2n` (Catalan many), via staircase subsets.
pub fn enumerate_full_patterns(n: usize) -> Vec<LinkPattern> {
    enumerate_subsets(n, 2 * n)
        .into_iter()
        .filter(|r| r.staircase_test().unwrap())
        .map(|r| r.to_link_pattern())
        .collect()
}

/// The Catalan number `c_n`.
pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n {
        c = c * 2 * (2 * (i as u64) + 1) / (i as u64 + 2);
    }
    c
}

/// One of the three lozenge orientations of a tiling of the
/// `a x b x c` hexagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LozengeKind {
    B,
    C,
    BC,
}

/// A lozenge with its integer center coordinates: type `B` at `(i, j)`,
/// type `C` at `(j, k)`, type `BC` at `(i, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lozenge {
    pub kind: LozengeKind,
    pub x: usize,
    pub y: usize,
    /// NILP path index (1-based, bottom to top) for `B`/`C`; 0 for `BC`.
    pub path: usize,
}

impl Lozenge {
    /// Vertical coordinate of the center, with the hexagon's lower left
    /// corner at `y = 1/2`. Exact rational.
    pub fn y_coordinate(&self, a: usize) -> BigRational {
        let half = BigRational::new(1.into(), 2.into());
        let r = |v: i64| BigRational::from_integer(v.into());
        let a = a as i64;
        match self.kind {
            // y^B_{i,j} = j/2 - (i - a) + 1/2
            LozengeKind::B => {
                let (i, j) = (self.x as i64, self.y as i64);
                r(j) * &half - r(i - a) + &half
            }
            // y^C_{j,k} = k - j/2
            LozengeKind::C => {
                let (j, k) = (self.x as i64, self.y as i64);
                r(k) - r(j) * &half
            }
            // y^BC_{i,k} = k - (i - a) + 1/2
            LozengeKind::BC => {
                let (i, k) = (self.x as i64, self.y as i64);
                r(k) - r(i - a) + &half
            }
        }
    }
}

/// A plane partition in `PP(a, b, c)`: a weakly increasing `a`-tuple of
/// `b`-subsets of `[b+c]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlanePartition {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `rows[l]` is `s_{l+1}`, sorted increasing, with
    /// `rows[0] <= rows[1] <= ...` pointwise.
    pub rows: Vec<Vec<usize>>,
}

impl PlanePartition {
    pub fn new(a: usize, b: usize, c: usize, rows: Vec<Vec<usize>>) -> Self {
        assert_eq!(rows.len(), a);
        for s in &rows {
            assert_eq!(s.len(), b);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|&e| 1 <= e && e <= b + c));
        }
        for w in rows.windows(2) {
            assert!(w[0].iter().zip(&w[1]).all(|(x, y)| x <= y), "rows not increasing");
        }
        PlanePartition { a, b, c, rows }
    }

    /// Complement of row `l` (0-based) inside `[b+c]`, sorted.
    pub fn row_complement(&self, l: usize) -> Vec<usize> {
        let s = &self.rows[l];
        let mut out = Vec::with_capacity(self.c);
        let mut it = s.iter().peekable();
        for v in 1..=(self.b + self.c) {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                out.push(v);
            }
        }
        out
    }

    /// Box heights over the `c x b` base grid: `heights[k'-1][m'-1]`, each
    /// at most `a`, weakly decreasing along rows and columns.
    pub fn heights(&self) -> Vec<Vec<usize>> {
        let mut h = vec![vec![0usize; self.b]; self.c];
        for l in 0..self.a {
            for (m0, s) in self.rows[l].iter().enumerate() {
                // column height of the level-(l+1) region at column m'=m0+1
                let lam = self.c + (m0 + 1) - *s;
                for row in h.iter_mut().take(lam) {
                    row[m0] += 1;
                }
            }
        }
        h
    }

    /// All lozenges of the tiling, with centers and path labels.
    ///
    /// Type `C` sits at `(j, k) = (s_{l,m}, s_{l,m} + l - m)` (one per entry
    /// of each row), type `B` at `(i, j) = (sbar_{l,k'} + a + 1 - l - k',
    /// sbar_{l,k'})`, and type `BC` at `(i, k) = (a + m' - h, c + 1 - k' + h)`
    /// for each base cell `(k', m')` of height `h`.
    pub fn lozenges(&self) -> Vec<Lozenge> {
        let mut out = Vec::new();
        for l in 1..=self.a {
            let row = &self.rows[l - 1];
            for (m0, s) in row.iter().enumerate() {
                let m = m0 + 1;
                out.push(Lozenge { kind: LozengeKind::C, x: *s, y: s + l - m, path: l });
            }
            let comp = self.row_complement(l - 1);
            for (k0, sb) in comp.iter().enumerate() {
                let k = k0 + 1;
                out.push(Lozenge {
                    kind: LozengeKind::B,
                    x: sb + self.a + 1 - l - k,
                    y: *sb,
                    path: l,
                });
            }
        }
        let h = self.heights();
        for (k0, row) in h.iter().enumerate() {
            for (m0, &hh) in row.iter().enumerate() {
                let (kp, mp) = (k0 + 1, m0 + 1);
                out.push(Lozenge {
                    kind: LozengeKind::BC,
                    x: self.a + mp - hh,
                    y: self.c + 1 - kp + hh,
                    path: 0,
                });
            }
        }
        out.sort_unstable();
        out
    }

    /// Lozenges of one kind only.
    pub fn lozenges_of(&self, kind: LozengeKind) -> Vec<Lozenge> {
        self.lozenges().into_iter().filter(|l| l.kind == kind).collect()
    }

    /// Dimer view: identical positions, presented as occupied edges of the
    /// dual honeycomb (one dimer per lozenge).
    pub fn dimers(&self) -> Vec<Lozenge> {
        self.lozenges()
    }

    /// NILP view: for path `l` (1-based), the ordered step sequence over
    /// `j = 1..b+c`, `true` at down-steps (exactly the elements of `s_l`).
    pub fn nilp_paths(&self) -> Vec<Vec<bool>> {
        (0..self.a)
            .map(|l| {
                (1..=(self.b + self.c))
                    .map(|j| self.rows[l].binary_search(&j).is_ok())
                    .collect()
            })
            .collect()
    }

    /// Number of hexagonal faces of the tiled region.
    pub fn hexagon_count(&self) -> usize {
        let (a, b, c) = (self.a, self.b, self.c);
        a * b + a * c + b * c + 1 - a - b - c
    }
}

/// All plane partitions of `PP(a, b, c)`, ordered lexicographically on the
/// concatenated row tuples.
pub fn enumerate_pp(a: usize, b: usize, c: usize) -> Vec<PlanePartition> {
    fn gen_row(
        b: usize,
        bc: usize,
        lower: &Option<Vec<usize>>,
        cur: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        a: usize,
        c: usize,
        out: &mut Vec<PlanePartition>,
    ) {
        if cur.len() == b {
            rows.push(cur.clone());
            rec(a, b, c, rows, out);
            rows.pop();
            return;
        }
        let pos = cur.len();
        let mut lo = cur.last().map(|&x| x + 1).unwrap_or(1);
        if let Some(low) = lower {
            lo = lo.max(low[pos]);
        }
        let hi = bc - (b - pos - 1);
        for v in lo..=hi {
            cur.push(v);
            gen_row(b, bc, lower, cur, rows, a, c, out);
            cur.pop();
        }
    }
    fn rec(a: usize, b: usize, c: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<PlanePartition>) {
        if rows.len() == a {
            out.push(PlanePartition::new(a, b, c, rows.clone()));
            return;
        }
        let lower = rows.last().cloned();
        let mut cur = Vec::new();
        gen_row(b, b + c, &lower, &mut cur, rows, a, c, out);
    }
    let mut out = Vec::new();
    let mut rows = Vec::new();
    rec(a, b, c, &mut rows, &mut out);
    out.sort_by(|x, y| x.rows.cmp(&y.rows));
    out
}

/// `|PP(a,b,c)|` by an independent route: count height matrices (`c` rows,
/// `b` columns, entries at most `a`) that decrease weakly along rows and
/// columns, by direct recursion on row profiles. Test oracle only.
pub fn count_pp_by_heights(a: usize, b: usize, c: usize) -> u64 {
    fn count(b: usize, a: usize, bound: &[usize], rows_left: usize) -> u64 {
        if rows_left == 0 {
            return 1;
        }
        fn rec(b: usize, bound: &[usize], cur: &mut Vec<usize>, rows_left: usize, total: &mut u64) {
            if cur.len() == b {
                *total += count(b, 0, cur, rows_left - 1);
                return;
            }
            let hi = cur.last().copied().unwrap_or(usize::MAX).min(bound[cur.len()]);
            for v in 0..=hi {
                cur.push(v);
                rec(b, bound, cur, rows_left, total);
                cur.pop();
            }
        }
        let _ = a;
        let mut total = 0;
        let mut cur = Vec::new();
        rec(b, bound, &mut cur, rows_left, &mut total);
        total
    }
    count(b, a, &vec![a; b], c)
}

/// The `(a,b,c)` rectangle subset of `[2n]`, `n = a+b+c`:
/// `{a+b+1,..,a+2b} ∪ {a+2b+c+1,..,2n}`.
pub fn rectangle_subset(a: usize, b: usize, c: usize) -> SubsetIndex {
    let n = a + b + c;
    let mut els: Vec<usize> = (a + b + 1..=a + 2 * b).collect();
    els.extend(a + 2 * b + c + 1..=2 * n);
    SubsetIndex::new(2 * n, els)
}

/// The `(a,b,c)`-type full link pattern: `a` nested outer arches, a nested
/// group of `b` arches, and a nested group of `c` arches.
pub fn rectangle_pattern(a: usize, b: usize, c: usize) -> LinkPattern {
    let n = a + b + c;
    let mut pairs = Vec::new();
    for i in 1..=a {
        pairs.push((i, 2 * n + 1 - i));
    }
    for j in 1..=b {
        pairs.push((a + j, a + 2 * b + 1 - j));
    }
    for k in 1..=c {
        pairs.push((a + 2 * b + k, a + 2 * b + 2 * c + 1 - k));
    }
    LinkPattern::new(2 * n, pairs)
}

/// For each `j in [b+c]`, the number of rows of the plane partition
/// containing `j` (the middle-block exponents of the Plücker monomial).
pub fn pp_column_multiplicity(pp: &PlanePartition) -> BTreeMap<usize, usize> {
    let mut mult = BTreeMap::new();
    for row in &pp.rows {
        for &j in row {
            *mult.entry(j).or_insert(0) += 1;
        }
    }
    mult
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_paper_example() {
        // r = {1,4,6,7,10} in 5-subsets of [11]
        let r = SubsetIndex::new(11, vec![1, 4, 6, 7, 10]);
        assert_eq!(r.boxes(), 17);
        let y = r.to_young();
        assert_eq!(y.rows, vec![6, 4, 3, 3, 1]);
        assert_eq!(y.to_subset(), r);
        let lp = r.to_link_pattern();
        assert_eq!(lp.pairs, vec![(2, 7), (3, 4), (5, 6), (9, 10)]);
        assert_eq!(lp.unpaired, vec![1, 8, 11]);
        assert_eq!(lp.to_subset(5), r);
    }

    #[test]
    fn boxes_extremes() {
        let full = SubsetIndex::new(11, (1..=5).collect());
        assert_eq!(full.boxes(), 5 * 6);
        let empty = SubsetIndex::new(11, (7..=11).collect());
        assert_eq!(empty.boxes(), 0);
        assert_eq!(empty.to_young().rows, vec![0; 5]);
        // all short chords for the minimal subset of link patterns
        let lp = SubsetIndex::new(6, vec![4, 5, 6]).to_link_pattern();
        assert_eq!(lp.pairs, vec![(1, 6), (2, 5), (3, 4)]);
    }

    #[test]
    fn all_bijections_roundtrip() {
        for big_n in 1..=10usize {
            for n in 0..=big_n {
                if n > big_n - n.min(big_n) {}
                for r in enumerate_subsets(n, big_n) {
                    assert_eq!(r.to_young().to_subset(), r);
                    let lp = r.to_link_pattern();
                    assert!(lp.is_noncrossing());
                    assert!(lp.num_chords() <= n.min(big_n - n));
                    assert_eq!(lp.to_subset(n), r);
                }
            }
        }
    }

    #[test]
    fn poset_n2_n4() {
        // Fig. poset cover relations for 2-subsets of [4]:
        // {3,4} < {2,4} < {2,3},{1,4} < {1,3} < {1,2} (pointwise order)
        let s = |a: usize, b: usize| SubsetIndex::new(4, vec![a, b]);
        assert!(s(3, 4).leq(&s(3, 4)));
        for (lo, hi) in [
            ((3, 4), (2, 4)),
            ((2, 4), (2, 3)),
            ((2, 4), (1, 4)),
            ((2, 3), (1, 3)),
            ((1, 4), (1, 3)),
            ((1, 3), (1, 2)),
        ] {
            // pointwise: hi <= lo, i.e. the Young diagram of lo contains hi's
            assert!(s(hi.0, hi.1).leq(&s(lo.0, lo.1)));
            assert!(!s(lo.0, lo.1).leq(&s(hi.0, hi.1)));
        }
        // incomparable pair
        assert!(!s(2, 3).leq(&s(1, 4)));
        assert!(!s(1, 4).leq(&s(2, 3)));
    }

    #[test]
    fn staircase_and_catalan() {
        for n in 1..=6 {
            let full: Vec<_> = enumerate_subsets(n, 2 * n)
                .into_iter()
                .filter(|r| r.staircase_test().unwrap())
                .collect();
            assert_eq!(full.len() as u64, catalan(n));
        }
        assert_eq!(catalan(2), 2);
        assert_eq!(catalan(3), 5);
        assert_eq!(enumerate_full_patterns(1).len(), 1);
        // rectangles: full iff a >= 0 (here always constructed with a >= 0)
        assert!(rectangle_subset(1, 1, 1).staircase_test().unwrap());
        assert!(rectangle_subset(0, 2, 1).staircase_test().unwrap());
        // a < 0 rectangle: b+c > n; build the subset directly
        let n = 2; // (b, c) = (2, 1), a = -1
        let r = {
            // Young diagram = c x b rectangle inside n x n
            let rows = vec![2, 0];
            YoungDiagram { n, big_n: 2 * n, rows }.to_subset()
        };
        assert!(!r.staircase_test().unwrap());
    }

    #[test]
    fn rectangle_pattern_matches_subset() {
        for (a, b, c) in [(1, 1, 1), (0, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 2)] {
            let r = rectangle_subset(a, b, c);
            assert_eq!(r.to_link_pattern(), rectangle_pattern(a, b, c));
            assert_eq!(r.boxes(), b * c);
        }
    }

    #[test]
    fn pp_enumeration_counts() {
        assert_eq!(enumerate_pp(0, 3, 2).len(), 1);
        assert_eq!(enumerate_pp(1, 1, 1).len(), 2);
        assert_eq!(enumerate_pp(1, 2, 2).len(), 6);
        for (a, b, c) in [(1, 1, 1), (1, 2, 2), (2, 2, 2), (2, 4, 3), (3, 2, 1)] {
            assert_eq!(
                enumerate_pp(a, b, c).len() as u64,
                count_pp_by_heights(a, b, c),
                "PP count mismatch at ({a},{b},{c})"
            );
        }
        // Fig. loz example is a member of PP(2,4,3)
        let member = PlanePartition::new(2, 4, 3, vec![vec![1, 3, 5, 7], vec![3, 5, 6, 7]]);
        assert!(enumerate_pp(2, 4, 3).contains(&member));
    }

    #[test]
    fn lozenge_views_match_figure() {
        let pp = PlanePartition::new(2, 4, 3, vec![vec![1, 3, 5, 7], vec![3, 5, 6, 7]]);
        assert_eq!(pp.heights(), vec![vec![2, 1, 1, 0], vec![1, 1, 0, 0], vec![1, 0, 0, 0]]);
        let mut c: Vec<(usize, usize)> =
            pp.lozenges_of(LozengeKind::C).iter().map(|l| (l.x, l.y)).collect();
        c.sort_unstable();
        let mut expect_c =
            vec![(3, 4), (5, 5), (6, 5), (7, 5), (1, 1), (3, 2), (5, 3), (7, 4)];
        expect_c.sort_unstable();
        assert_eq!(c, expect_c);
        let mut b: Vec<(usize, usize)> =
            pp.lozenges_of(LozengeKind::B).iter().map(|l| (l.x, l.y)).collect();
        b.sort_unstable();
        let mut expect_b = vec![(3, 2), (4, 4), (5, 6), (1, 1), (1, 2), (2, 4)];
        expect_b.sort_unstable();
        assert_eq!(b, expect_b);
        let mut bc: Vec<(usize, usize)> =
            pp.lozenges_of(LozengeKind::BC).iter().map(|l| (l.x, l.y)).collect();
        bc.sort_unstable();
        let mut expect_bc = vec![
            (2, 2), (4, 1), (5, 1), (6, 1), (2, 3), (3, 3),
            (5, 2), (6, 2), (1, 5), (3, 4), (4, 4), (6, 3),
        ];
        expect_bc.sort_unstable();
        assert_eq!(bc, expect_bc);
    }

    #[test]
    fn dimer_counts_and_hexagons() {
        for (a, b, c) in [(1, 1, 1), (2, 2, 2), (2, 4, 3), (0, 2, 2), (3, 1, 2)] {
            for pp in enumerate_pp(a, b, c) {
                assert_eq!(pp.lozenges_of(LozengeKind::B).len(), a * c);
                assert_eq!(pp.lozenges_of(LozengeKind::C).len(), a * b);
                assert_eq!(pp.lozenges_of(LozengeKind::BC).len(), b * c);
                assert_eq!(
                    pp.hexagon_count(),
                    a * b + a * c + b * c + 1 - a - b - c
                );
            }
        }
    }

    #[test]
    fn views_consistent() {
        for (a, b, c) in [(1, 1, 1), (2, 2, 2), (3, 3, 3), (1, 3, 2), (3, 2, 3)] {
            for pp in enumerate_pp(a.min(3), b.min(3), c.min(3)) {
                // C lozenges on path l sit exactly at the elements of s_l
                for l in 1..=pp.a {
                    let js: Vec<usize> = pp
                        .lozenges_of(LozengeKind::C)
                        .iter()
                        .filter(|loz| loz.path == l)
                        .map(|loz| loz.x)
                        .collect();
                    let mut sorted = js.clone();
                    sorted.sort_unstable();
                    assert_eq!(sorted, pp.rows[l - 1]);
                    // NILP down-steps agree
                    let downs: Vec<usize> = pp.nilp_paths()[l - 1]
                        .iter()
                        .enumerate()
                        .filter_map(|(j0, d)| d.then_some(j0 + 1))
                        .collect();
                    assert_eq!(downs, pp.rows[l - 1]);
                }
                // dimer view carries the same multiset as the lozenge view
                assert_eq!(pp.dimers(), pp.lozenges());
            }
        }
    }

    #[test]
    fn y_coordinates() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // type C at (j,k) = (2,1) has y = 1 - 1 = 0
        let loz = Lozenge { kind: LozengeKind::C, x: 2, y: 1, path: 1 };
        assert_eq!(loz.y_coordinate(1), r(0, 1));
        // bottom-left corner convention: C at (1,1) has y = 1/2
        let loz = Lozenge { kind: LozengeKind::C, x: 1, y: 1, path: 1 };
        assert_eq!(loz.y_coordinate(2), r(1, 2));
        // around one hexagon the three centered coordinates satisfy
        // i - a + k - j - 1/2 = 0 for the BC lozenge relative to its (i,k)
        // and the B/C neighbours; spot-check the y formulas against each
        // other: y^BC(i,k) = y^B(i,j) + y^C(j,k) - (j - j/2 ... ) is encoded
        // by the identities  y^B + y^C = y^BC + (j - (i+k-a-1/2))/1  when
        // j = i + k - a - 1/2; verified numerically for integer windows:
        for a in 0..3i64 {
            for i in 1..4i64 {
                for k in 1..4i64 {
                    // doubled j at the hexagon relation
                    let j2 = 2 * (i + k - a) - 1;
                    // y^B with doubled j: j/2 - (i-a) + 1/2
                    let yb = r(j2, 4) - r(i - a, 1) + r(1, 2);
                    let yc = r(k, 1) - r(j2, 4);
                    let ybc = r(k, 1) - r(i - a, 1) + r(1, 2);
                    assert_eq!(yb + yc, ybc);
                }
            }
        }
    }

    #[test]
    fn tau_and_e_on_patterns() {
        let r = SubsetIndex::new(4, vec![2, 4]);
        assert_eq!(r.tau(1).elements, vec![1, 4]);
        assert_eq!(r.tau(3).elements, vec![2, 3]);
        let lp = r.to_link_pattern(); // (1,2),(3,4)
        let (e2, t) = lp.e(2);
        assert_eq!(t, 0);
        assert_eq!(e2.pairs, vec![(1, 4), (2, 3)]);
        let (e1, t) = lp.e(1);
        assert_eq!(t, 1);
        assert_eq!(e1, lp);
    }
}
