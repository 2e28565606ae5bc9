//! Oriented posets: relations carry a weak or strict flavor, and the level
//! maps respecting them produce a quasisymmetric generating function. The
//! recognizer at the bottom decides whether such a poset is the constraint
//! poset of a (possibly wrapped) skew shape.

use crate::qsym::{Composition, QBasis, QSymFunc};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Weak,
    Strict,
}

/// A finite poset presented by relations `(lower, upper, kind)`. Weak
/// relations let a level map tie the two elements, strict ones forbid it.
/// Construction validates the input and then drops every relation implied by
/// the rest, so equivalent constraint systems end up with equal edge sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedPoset {
    n: usize,
    edges: BTreeSet<(usize, usize, EdgeKind)>,
}

fn has_directed_cycle(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in arcs {
        adj[a].push(b);
    }
    // 0 unseen, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    fn visit(x: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[x] = 1;
        for &y in &adj[x] {
            if state[y] == 1 || (state[y] == 0 && visit(y, adj, state)) {
                return true;
            }
        }
        state[x] = 2;
        false
    }
    (0..n).any(|x| state[x] == 0 && visit(x, &adj, &mut state))
}

/// Is there a path `from -> to` of length at least one? With `need_strict`
/// the path must use at least one strict relation.
fn reaches(
    n: usize,
    edges: &BTreeSet<(usize, usize, EdgeKind)>,
    from: usize,
    to: usize,
    need_strict: bool,
) -> bool {
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for &(a, b, k) in edges {
        adj[a].push((b, k == EdgeKind::Strict));
    }
    let mut seen = vec![[false; 2]; n];
    let mut stack = vec![(from, false)];
    while let Some((x, s)) = stack.pop() {
        if seen[x][s as usize] {
            continue;
        }
        seen[x][s as usize] = true;
        if x == to && x != from && (s || !need_strict) {
            return true;
        }
        for &(y, strict) in &adj[x] {
            stack.push((y, s || strict));
        }
    }
    false
}

impl OrientedPoset {
    pub fn new(
        n: usize,
        relations: impl IntoIterator<Item = (usize, usize, EdgeKind)>,
    ) -> Result<Self, String> {
        let mut edges: BTreeSet<(usize, usize, EdgeKind)> = BTreeSet::new();
        for (a, b, kind) in relations {
            if a >= n || b >= n {
                return Err(format!("relation ({a},{b}) out of range for {n} elements"));
            }
            if a == b {
                return Err(format!("self relation on element {a}"));
            }
            edges.insert((a, b, kind));
        }
        // a pair recorded both ways collapses to its strict version
        let doubled: Vec<(usize, usize)> = edges
            .iter()
            .filter(|&&(a, b, k)| {
                k == EdgeKind::Weak && edges.contains(&(a, b, EdgeKind::Strict))
            })
            .map(|&(a, b, _)| (a, b))
            .collect();
        for (a, b) in doubled {
            edges.remove(&(a, b, EdgeKind::Weak));
        }
        if has_directed_cycle(n, edges.iter().map(|&(a, b, _)| (a, b))) {
            return Err("relations contain a directed cycle".into());
        }
        // drop implied relations: a weak one with any parallel path, a strict
        // one with a parallel path through at least one strict relation
        loop {
            let mut dropped = false;
            for (a, b, kind) in edges.clone() {
                let mut without = edges.clone();
                without.remove(&(a, b, kind));
                if reaches(n, &without, a, b, kind == EdgeKind::Strict) {
                    edges.remove(&(a, b, kind));
                    dropped = true;
                }
            }
            if !dropped {
                break;
            }
        }
        Ok(OrientedPoset { n, edges })
    }

    pub fn element_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize, EdgeKind)> {
        &self.edges
    }
}

/// Level-map generating function of an arbitrary constraint list in the
/// monomial basis. No acyclicity is assumed: a strict cycle admits no level
/// maps and yields zero, while a weak cycle just ties its elements to one
/// level. Each map contributes the composition of its level sizes.
pub fn k_of_constraints(n: usize, constraints: &[(usize, usize, EdgeKind)]) -> QSymFunc {
    assert!(n <= 64, "level maps use 64-bit element masks");
    let mut strict_pred = vec![0u64; n];
    let mut weak_pred = vec![0u64; n];
    for &(a, b, k) in constraints {
        assert!(a < n && b < n);
        match k {
            EdgeKind::Strict => strict_pred[b] |= 1 << a,
            EdgeKind::Weak => weak_pred[b] |= 1 << a,
        }
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, Vec<(Vec<u32>, i64)>> = HashMap::new();
    let mut out = QSymFunc::zero(QBasis::Monomial, n as u32);
    for (comp, c) in level_tails(full, &strict_pred, &weak_pred, &mut memo) {
        out.add_term(Composition::new(comp), c);
    }
    out
}

/// Compositions of the remaining levels: peel one lowest level at a time. A
/// peeled set may not contain anything with an unassigned strict predecessor
/// and must swallow the unassigned weak predecessors of its members.
fn level_tails(
    rem: u64,
    strict_pred: &[u64],
    weak_pred: &[u64],
    memo: &mut HashMap<u64, Vec<(Vec<u32>, i64)>>,
) -> Vec<(Vec<u32>, i64)> {
    if rem == 0 {
        return vec![(Vec::new(), 1)];
    }
    if let Some(t) = memo.get(&rem) {
        return t.clone();
    }
    let n = strict_pred.len();
    let cand: Vec<usize> = (0..n)
        .filter(|&x| rem >> x & 1 == 1 && strict_pred[x] & rem == 0)
        .collect();
    let mut tally: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for bits in 1u64..(1u64 << cand.len()) {
        let mut level = 0u64;
        let mut need = 0u64;
        for (i, &x) in cand.iter().enumerate() {
            if bits >> i & 1 == 1 {
                level |= 1 << x;
                need |= weak_pred[x];
            }
        }
        if need & rem & !level != 0 {
            continue;
        }
        let size = level.count_ones();
        for (tail, c) in level_tails(rem & !level, strict_pred, weak_pred, memo) {
            let mut comp = Vec::with_capacity(tail.len() + 1);
            comp.push(size);
            comp.extend(tail);
            *tally.entry(comp).or_insert(0) += c;
        }
    }
    let out: Vec<(Vec<u32>, i64)> = tally.into_iter().collect();
    memo.insert(rem, out.clone());
    out
}

/// Level-map generating function of an oriented poset.
pub fn k_po(p: &OrientedPoset) -> QSymFunc {
    let edges: Vec<_> = p.edges.iter().copied().collect();
    k_of_constraints(p.n, &edges)
}

/// Walk up along strict relations and down along weak ones; a directed cycle
/// in that mixed digraph is what distinguishes wrapped shapes from plane
/// ones.
pub fn has_cycle(p: &OrientedPoset) -> bool {
    has_directed_cycle(
        p.n,
        p.edges.iter().map(|&(a, b, k)| match k {
            EdgeKind::Strict => (a, b),
            EdgeKind::Weak => (b, a),
        }),
    )
}

/// Removes the relation `(a, b)` two ways: `deleted` drops it, `reversed`
/// replaces it by the complementary relation `(b, a)` of the other kind.
/// Level maps of the original are those of the deletion minus those of the
/// reversal. Fails when the relation is absent, or when the reversal cannot
/// be presented as a poset because a parallel path still forces `a` below
/// `b`; in that case the complementary constraint system is still meaningful
/// and can be fed to `k_of_constraints` directly.
pub fn deletion_minus_reversal(
    p: &OrientedPoset,
    a: usize,
    b: usize,
) -> Result<(OrientedPoset, OrientedPoset), String> {
    let kind = [EdgeKind::Weak, EdgeKind::Strict]
        .into_iter()
        .find(|&k| p.edges.contains(&(a, b, k)))
        .ok_or_else(|| format!("no relation {a} -> {b}"))?;
    let rest: Vec<(usize, usize, EdgeKind)> = p
        .edges
        .iter()
        .copied()
        .filter(|&e| e != (a, b, kind))
        .collect();
    let deleted =
        OrientedPoset::new(p.n, rest.clone()).expect("removing a relation cannot invalidate");
    let flipped = match kind {
        EdgeKind::Weak => EdgeKind::Strict,
        EdgeKind::Strict => EdgeKind::Weak,
    };
    let mut rev = rest;
    rev.push((b, a, flipped));
    let reversed = OrientedPoset::new(p.n, rev)
        .map_err(|e| format!("reversal of {a} -> {b}: {e}"))?;
    Ok((deleted, reversed))
}

/// Stable colors under neighborhood refinement; isomorphic posets get the
/// same color multiset, and any isomorphism preserves colors.
fn refine_colors(n: usize, edges: &BTreeSet<(usize, usize, EdgeKind)>) -> Vec<usize> {
    let mut color: Vec<u64> = vec![0; n];
    loop {
        let sigs: Vec<(u64, Vec<(u8, u64)>)> = (0..n)
            .map(|x| {
                let mut nb: Vec<(u8, u64)> = Vec::new();
                for &(a, b, k) in edges {
                    let tag = if k == EdgeKind::Strict { 1u8 } else { 0 };
                    if a == x {
                        nb.push((tag, color[b]));
                    }
                    if b == x {
                        nb.push((tag + 2, color[a]));
                    }
                }
                nb.sort();
                (color[x], nb)
            })
            .collect();
        let mut palette: Vec<(u64, Vec<(u8, u64)>)> = sigs.clone();
        palette.sort();
        palette.dedup();
        let next: Vec<u64> = sigs
            .iter()
            .map(|s| palette.binary_search(s).unwrap() as u64)
            .collect();
        if next == color {
            return color.iter().map(|&c| c as usize).collect();
        }
        color = next;
    }
}

/// All bijections sending each source group onto its target group.
fn group_bijections(groups: &[(Vec<usize>, Vec<usize>)], n: usize) -> Vec<Vec<usize>> {
    fn assign(
        sources: &[usize],
        targets: &[usize],
        idx: usize,
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == sources.len() {
            out.push(perm.clone());
            return;
        }
        for t in 0..targets.len() {
            if !used[t] {
                used[t] = true;
                perm[sources[idx]] = targets[t];
                assign(sources, targets, idx + 1, used, perm, out);
                used[t] = false;
            }
        }
    }
    let mut perms: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];
    for (sources, targets) in groups {
        let mut next = Vec::new();
        for base in &perms {
            let mut perm = base.clone();
            let mut used = vec![false; targets.len()];
            assign(sources, targets, 0, &mut used, &mut perm, &mut next);
        }
        perms = next;
    }
    perms
}

fn color_classes(colors: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(x);
    }
    classes.into_values().collect()
}

/// Relabelings that pack each color class onto a block of consecutive ids in
/// color order. Any isomorphism preserves colors, so the least relabeled edge
/// set over these is a canonical form.
fn canonical_relabelings(colors: &[usize]) -> Vec<Vec<usize>> {
    let mut groups = Vec::new();
    let mut next_id = 0;
    for members in color_classes(colors) {
        let targets: Vec<usize> = (next_id..next_id + members.len()).collect();
        next_id += members.len();
        groups.push((members, targets));
    }
    group_bijections(&groups, colors.len())
}

/// Permutations preserving every color class in place.
fn class_preserving_perms(colors: &[usize]) -> Vec<Vec<usize>> {
    let groups: Vec<(Vec<usize>, Vec<usize>)> = color_classes(colors)
        .into_iter()
        .map(|members| (members.clone(), members))
        .collect();
    group_bijections(&groups, colors.len())
}

fn relabel(
    edges: &BTreeSet<(usize, usize, EdgeKind)>,
    perm: &[usize],
) -> BTreeSet<(usize, usize, EdgeKind)> {
    edges.iter().map(|&(a, b, k)| (perm[a], perm[b], k)).collect()
}

fn canonical_edges(
    n: usize,
    edges: &BTreeSet<(usize, usize, EdgeKind)>,
) -> BTreeSet<(usize, usize, EdgeKind)> {
    let colors = refine_colors(n, edges);
    canonical_relabelings(&colors)
        .iter()
        .map(|perm| relabel(edges, perm))
        .min()
        .unwrap()
}

pub fn are_isomorphic(p: &OrientedPoset, q: &OrientedPoset) -> bool {
    p.n == q.n && canonical_edges(p.n, &p.edges) == canonical_edges(q.n, &q.edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosetFilter {
    All,
    Acyclic,
}

/// Strict down-set vectors of all posets on `{0..n}` whose identity labeling
/// is a linear extension.
fn natural_down_vectors(n: usize) -> Vec<Vec<u64>> {
    fn grow(j: usize, n: usize, down: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if j == n {
            out.push(down.clone());
            return;
        }
        for d in 0u64..(1 << j) {
            if (0..j).all(|i| d >> i & 1 == 0 || down[i] & !d == 0) {
                down.push(d);
                grow(j + 1, n, down, out);
                down.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(0, n, &mut Vec::new(), &mut out);
    out
}

fn covers_of(down: &[u64]) -> Vec<(usize, usize)> {
    let n = down.len();
    let mut covers = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if down[j] >> i & 1 == 1
                && !(0..n).any(|m| down[j] >> m & 1 == 1 && down[m] >> i & 1 == 1)
            {
                covers.push((i, j));
            }
        }
    }
    covers
}

/// All oriented posets on `n` elements up to isomorphism: every poset, with
/// every assignment of kinds to its covering relations. Capped at 7 elements;
/// the count grows too fast beyond that.
pub fn enum_oriented_posets(
    n: usize,
    filter: PosetFilter,
) -> Result<Vec<OrientedPoset>, String> {
    const MAX: usize = 7;
    if n > MAX {
        return Err(format!("enumeration is capped at {MAX} elements, asked for {n}"));
    }
    // posets up to isomorphism, represented by their covering pairs
    let mut reps: BTreeMap<BTreeSet<(usize, usize, EdgeKind)>, Vec<(usize, usize)>> =
        BTreeMap::new();
    for down in natural_down_vectors(n) {
        let covers = covers_of(&down);
        let weak: BTreeSet<_> = covers
            .iter()
            .map(|&(a, b)| (a, b, EdgeKind::Weak))
            .collect();
        reps.entry(canonical_edges(n, &weak)).or_insert(covers);
    }
    let mut out = Vec::new();
    for covers in reps.values() {
        let weak: BTreeSet<_> = covers
            .iter()
            .map(|&(a, b)| (a, b, EdgeKind::Weak))
            .collect();
        let colors = refine_colors(n, &weak);
        let auts: Vec<Vec<usize>> = class_preserving_perms(&colors)
            .into_iter()
            .filter(|perm| relabel(&weak, perm) == weak)
            .collect();
        for bits in 0u64..(1u64 << covers.len()) {
            let edges: BTreeSet<(usize, usize, EdgeKind)> = covers
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| {
                    let kind = if bits >> i & 1 == 1 {
                        EdgeKind::Strict
                    } else {
                        EdgeKind::Weak
                    };
                    (a, b, kind)
                })
                .collect();
            // keep one orientation per automorphism orbit
            if auts.iter().any(|g| relabel(&edges, g) < edges) {
                continue;
            }
            // covering relations carry no redundancy, so construct directly
            let p = OrientedPoset { n, edges };
            if filter == PosetFilter::Acyclic && has_cycle(&p) {
                continue;
            }
            out.push(p);
        }
    }
    Ok(out)
}

fn components(p: &OrientedPoset) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); p.n];
    for &(a, b, _) in &p.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; p.n];
    let mut out = Vec::new();
    for start in 0..p.n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn is_lattice_multiple(d: (i64, i64), v: i64, u: i64) -> bool {
    d.0.rem_euclid(v) == 0 && d.1 == -(d.0 / v) * u
}

fn canon_cell(pos: (i64, i64), v: i64, u: i64) -> (i64, i64) {
    let t = (pos.1 - 1).div_euclid(u);
    (pos.0 + t * v, pos.1 - t * u)
}

/// Can this connected component be drawn as a convex cell set on the
/// cylinder with `v` rows and `u` columns per fundamental window, weak
/// relations stepping right and strict ones stepping down, with the
/// relations matching cell adjacency exactly?
fn embeds_on_cylinder(p: &OrientedPoset, comp: &[usize], v: i64, u: i64) -> bool {
    let step = |k: EdgeKind| match k {
        EdgeKind::Weak => (0i64, 1i64),
        EdgeKind::Strict => (1, 0),
    };
    let mut pos: HashMap<usize, (i64, i64)> = HashMap::new();
    pos.insert(comp[0], (1, 1));
    let mut queue = vec![comp[0]];
    while let Some(x) = queue.pop() {
        let px = pos[&x];
        for &(a, b, k) in &p.edges {
            let (dr, dc) = step(k);
            if a == x && !pos.contains_key(&b) {
                pos.insert(b, (px.0 + dr, px.1 + dc));
                queue.push(b);
            }
            if b == x && !pos.contains_key(&a) {
                pos.insert(a, (px.0 - dr, px.1 - dc));
                queue.push(a);
            }
        }
    }
    // every relation must agree with its step modulo the winding lattice
    for &(a, b, k) in &p.edges {
        if !pos.contains_key(&a) {
            continue;
        }
        let (dr, dc) = step(k);
        let (pa, pb) = (pos[&a], pos[&b]);
        if !is_lattice_multiple((pb.0 - pa.0 - dr, pb.1 - pa.1 - dc), v, u) {
            return false;
        }
    }
    let cells: HashSet<(i64, i64)> = comp.iter().map(|x| canon_cell(pos[x], v, u)).collect();
    if cells.len() != comp.len() {
        return false;
    }
    // relations must account for every cell adjacency
    for &x in comp {
        for &y in comp {
            if x == y {
                continue;
            }
            let d = (pos[&y].0 - pos[&x].0, pos[&y].1 - pos[&x].1);
            if is_lattice_multiple((d.0, d.1 - 1), v, u)
                && !p.edges.contains(&(x, y, EdgeKind::Weak))
            {
                return false;
            }
            if is_lattice_multiple((d.0 - 1, d.1), v, u)
                && !p.edges.contains(&(x, y, EdgeKind::Strict))
            {
                return false;
            }
        }
    }
    // convexity: each cylinder interval between two cells stays in the set
    for &x in comp {
        let px = pos[&x];
        for &z in comp {
            let pz = pos[&z];
            let a = px.0 - pz.0;
            let m_lo = a.div_euclid(v) + i64::from(a.rem_euclid(v) != 0);
            let m_hi = (pz.1 - px.1).div_euclid(u);
            for m in m_lo..=m_hi {
                let top = (pz.0 + m * v, pz.1 - m * u);
                for r in px.0..=top.0 {
                    for c in px.1..=top.1 {
                        if !cells.contains(&canon_cell((r, c), v, u)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// True when every connected component is the constraint poset of some
/// cylindric skew shape. A component of `s` elements that wraps at all must
/// do so on a cylinder with both periods below `s`, so the search over
/// window sizes is finite.
pub fn recognize_cylindric_components(p: &OrientedPoset) -> bool {
    components(p).iter().all(|comp| {
        let cap = (comp.len() as i64).max(2);
        (2..=cap).any(|v| (2..=cap).any(|u| embeds_on_cylinder(p, comp, v, u)))
    })
}

/// True when every connected component is the constraint poset of a plane
/// skew shape: embed on a cylinder too wide and tall for any wrapping.
pub fn is_skew_shape_poset(p: &OrientedPoset) -> bool {
    components(p).iter().all(|comp| {
        let b = (comp.len() as i64 + 1).max(2);
        embeds_on_cylinder(p, comp, b, b)
    })
}
