//! Integer partitions, skew diagrams, and wrapped ribbon moves on a bounded
//! set of columns. The ribbon calculus here works on column heights: adding a
//! ribbon touches a contiguous window of columns and bumps their heights, and
//! the move is legal exactly when the new heights are still weakly decreasing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// Integer partition stored as weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Strips trailing zeros. Panics unless `parts` is weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing: {parts:?}"
        );
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The hook with first row `row` and `leg` extra rows of length one.
    pub fn hook(row: u32, leg: usize) -> Self {
        assert!(row >= 1, "hook needs a positive first row");
        let mut parts = vec![row];
        parts.extend(std::iter::repeat(1).take(leg));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part at 0-based index `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0) as usize;
        let cols: Vec<u32> = (0..first)
            .map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition(cols)
    }

    /// Row-by-row containment: does `other` fit inside `self`?
    pub fn contains(&self, other: &Partition) -> bool {
        other.0.iter().enumerate().all(|(i, &p)| self.part(i) >= p)
    }

    /// Adds an `n`-ribbon whose rightmost column is `col` (1-based).
    ///
    /// With `cap = Some(w)` the diagram lives on columns `1..=w` and a ribbon
    /// sticking out past column `w` wraps back to column 1 at the top.
    /// Concretely, on the height vector `h` of length `w` the move replaces
    /// the window `h[j..=col]` by `(h[col] + n - (col - j), h[j] + 1, ...,
    /// h[col-1] + 1)` for the least legal `j`, and fails when no `j` keeps the
    /// heights weakly decreasing. Without a cap the ribbon is an ordinary
    /// border strip.
    pub fn add_ribbon(&self, n: u32, col: usize, cap: Option<usize>) -> Option<RibbonStep> {
        assert!(n >= 1 && col >= 1, "need a positive ribbon size and column");
        if let Some(w) = cap {
            assert!(col <= w, "column {col} outside the {w} capped columns");
            assert!(self.part(0) as usize <= w, "shape {self} wider than cap {w}");
        }
        let len = cap.unwrap_or_else(|| col.max(self.part(0) as usize));
        let conj = self.conjugate();
        let mut h: Vec<i64> = (0..len).map(|c| conj.part(c) as i64).collect();
        let c = col - 1;
        let n = n as i64;
        // The least j whose height can be raised to close the window; j = c
        // always qualifies, so the search cannot fail.
        let j = (0..=c)
            .find(|&j| h[c] + n - (c - j) as i64 >= h[j] + 1)
            .unwrap();
        let top = h[c] + n - (c - j) as i64;
        if j > 0 && h[j - 1] < top {
            return None;
        }
        for p in (j + 1..=c).rev() {
            h[p] = h[p - 1] + 1;
        }
        h[j] = top;
        debug_assert!(h.windows(2).all(|w| w[0] >= w[1]));
        let width = c - j + 1;
        let heights = Partition::new(h.iter().map(|&x| x as u32).collect());
        Some(RibbonStep {
            result: heights.conjugate(),
            width,
            sign_exponent: cap.map_or(0, |w| (w - width) as u32),
        })
    }

    /// Removes an `n`-ribbon whose leftmost column is `col` (1-based).
    ///
    /// Inverse of `add_ribbon`: slides the heights of columns `col..m` down
    /// from the right and drops `h[col]` by the remaining amount. At most one
    /// right end `m` can work, which the scan double-checks.
    pub fn remove_ribbon(&self, n: u32, col: usize) -> Option<RibbonStep> {
        assert!(n >= 1 && col >= 1, "need a positive ribbon size and column");
        let total = self.part(0) as usize;
        if col > total {
            return None;
        }
        let conj = self.conjugate();
        let h: Vec<i64> = (0..total).map(|c| conj.part(c) as i64).collect();
        let j = col - 1;
        let n = n as i64;
        let mut found: Option<(usize, Vec<i64>)> = None;
        for m in j..total {
            let tail = h[j] - n + (m - j) as i64;
            if tail < 0 {
                continue;
            }
            if m > j && h[m] - 1 < tail {
                continue;
            }
            let next = if m + 1 < total { h[m + 1] } else { 0 };
            if tail < next {
                continue;
            }
            let mut nh = h.clone();
            for p in j..m {
                nh[p] = h[p + 1] - 1;
            }
            nh[m] = tail;
            debug_assert!(nh.windows(2).all(|w| w[0] >= w[1]) && nh.iter().all(|&x| x >= 0));
            assert!(
                found.is_none(),
                "two ribbon removals at one column from {self}"
            );
            found = Some((m - j + 1, nh));
        }
        let (width, nh) = found?;
        let heights = Partition::new(nh.iter().map(|&x| x as u32).collect());
        Some(RibbonStep {
            result: heights.conjugate(),
            width,
            sign_exponent: 0,
        })
    }

    /// Strips `n`-ribbons greedily until none remains. The resulting core and
    /// removal count do not depend on the order of removals.
    pub fn n_core(&self, n: u32) -> (Partition, u32) {
        let mut cur = self.clone();
        let mut removed = 0;
        'outer: loop {
            for col in 1..=cur.part(0) as usize {
                if let Some(step) = cur.remove_ribbon(n, col) {
                    cur = step.result;
                    removed += 1;
                    continue 'outer;
                }
            }
            return (cur, removed);
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in t.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| format!("bad partition part {:?}", piece.trim()))?;
            parts.push(p);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(format!("parts not weakly decreasing: {t}"));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }
}

/// One ribbon move. `width` is the number of columns the strip covers and
/// `sign_exponent` the exponent of the sign the move carries in capped
/// expansions (cap minus width; zero for uncapped moves).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonStep {
    pub result: Partition,
    pub width: usize,
    pub sign_exponent: u32,
}

/// A skew diagram `outer/inner`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Self {
        assert!(
            outer.contains(&inner),
            "inner shape {inner} must fit inside {outer}"
        );
        SkewShape { outer, inner }
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    /// Cells as 0-based (row, column) pairs in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (0..self.outer.len())
            .flat_map(|r| {
                (self.inner.part(r) as usize..self.outer.part(r) as usize).map(move |c| (r, c))
            })
            .collect()
    }

    /// Edgewise connected and free of 2x2 blocks.
    pub fn is_ribbon(&self) -> bool {
        let cells = self.cells();
        if cells.is_empty() {
            return false;
        }
        let set: BTreeSet<(usize, usize)> = cells.iter().copied().collect();
        for &(r, c) in &set {
            if set.contains(&(r, c + 1))
                && set.contains(&(r + 1, c))
                && set.contains(&(r + 1, c + 1))
            {
                return false;
            }
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![cells[0]];
        seen.insert(cells[0]);
        while let Some((r, c)) = stack.pop() {
            let mut nbrs = vec![(r + 1, c), (r, c + 1)];
            if r > 0 {
                nbrs.push((r - 1, c));
            }
            if c > 0 {
                nbrs.push((r, c - 1));
            }
            for nb in nbrs {
                if set.contains(&nb) && seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        seen.len() == set.len()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

impl fmt::Debug for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dominance order on partitions of equal size (panics otherwise).
pub fn dominance_leq(a: &Partition, b: &Partition) -> bool {
    assert_eq!(a.size(), b.size(), "dominance compares equal sizes only");
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0u32, 0u32);
    for i in 0..len {
        sa += a.part(i);
        sb += b.part(i);
        if sa > sb {
            return false;
        }
    }
    true
}

/// Stacks `d` ribbons of size `n` on `lam`, each covering all `n - k` capped
/// columns. Fails only when `lam` does not fit in the `k` by `n - k` box;
/// inside the box the full-width move is always legal.
pub fn lift(lam: &Partition, n: u32, k: usize, d: u32) -> Result<Partition, String> {
    assert!(k >= 1 && (n as usize) > k, "need 1 <= k < n");
    let nk = n as usize - k;
    if lam.len() > k || lam.part(0) as usize > nk {
        return Err(format!("{lam} does not fit in the {k} by {nk} box"));
    }
    let mut cur = lam.clone();
    for _ in 0..d {
        cur = cur
            .add_ribbon(n, nk, Some(nk))
            .expect("full-width ribbon always fits over a boxed shape")
            .result;
    }
    Ok(cur)
}

/// All shapes reachable from `lam` by `d` capped `n`-ribbon additions on
/// `cap` columns, each paired with its sign. A shape reachable along several
/// routes always carries one sign; the merge asserts this.
pub fn enum_ribbon_additions(
    lam: &Partition,
    n: u32,
    d: u32,
    cap: usize,
) -> Vec<(Partition, i64)> {
    assert!(
        lam.part(0) as usize <= cap,
        "start shape {lam} wider than cap {cap}"
    );
    let mut cur: BTreeMap<Partition, i64> = BTreeMap::new();
    cur.insert(lam.clone(), 1);
    for _ in 0..d {
        let mut next: BTreeMap<Partition, i64> = BTreeMap::new();
        for (tau, &sign) in &cur {
            for col in 1..=cap {
                if let Some(step) = tau.add_ribbon(n, col, Some(cap)) {
                    let s = if step.sign_exponent % 2 == 0 { sign } else { -sign };
                    match next.get(&step.result) {
                        Some(&prev) => assert_eq!(
                            prev, s,
                            "sign clash at {} in the addition lattice",
                            step.result
                        ),
                        None => {
                            next.insert(step.result, s);
                        }
                    }
                }
            }
        }
        cur = next;
    }
    cur.into_iter().collect()
}

/// All partitions of `size`.
pub fn partitions_of(size: u32) -> Vec<Partition> {
    fn go(rem: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(acc.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            acc.push(p);
            go(rem - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, &mut Vec::new(), &mut out);
    out
}

/// All partitions with at most `rows` parts, each at most `cols`.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    fn go(rows: usize, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition(acc.clone()));
        if rows == 0 {
            return;
        }
        for p in (1..=max).rev() {
            acc.push(p);
            go(rows - 1, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}
