//! Skew shapes drawn on a cylinder. A shape is presented as `lam/d/mu` on a
//! cylinder with `k` row classes and `nk` column classes: the outer boundary
//! is `lam` wound forward `d` times, the inner boundary is `mu`, and cells
//! repeat under the identification `(r, c) ~ (r + k, c - nk)`. The functions
//! here expand the associated symmetric function along two independent
//! routes, compare it against a direct level-map count, and probe its
//! positivity structure.

use crate::partition::{enum_ribbon_additions, lift, partitions_in_box, Partition, SkewShape};
use crate::poset::{k_of_constraints, EdgeKind, OrientedPoset};
use crate::qsym::to_symmetric;
use crate::signed::{resolve_skew_symbol, SignedSequence, SkewResolution};
use crate::symfunc::{
    coproduct, lr_coefficient, monomial_to_schur, restrict_vars, skew_to_schur, Basis, SymFunc,
};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylindricShape {
    k: u32,
    nk: u32,
    lam: Partition,
    d: u32,
    mu: Partition,
    lifted: Partition,
}

impl CylindricShape {
    pub fn new(k: u32, nk: u32, lam: Partition, d: u32, mu: Partition) -> Result<Self, String> {
        if k < 1 || nk < 1 {
            return Err("both cylinder periods must be at least 1".into());
        }
        let n = k + nk;
        let lifted = lift(&lam, n, k as usize, d)?;
        // the inner boundary must close up around the cylinder: its first
        // column meets the last column of the previous window
        let conj = mu.conjugate();
        let (first, last) = (conj.part(0), conj.part(nk as usize - 1));
        if first > last + k {
            return Err(format!(
                "inner boundary {mu} does not close up: column 1 has height {first}, \
                 column {nk} height {last}, on a cylinder of depth {k}"
            ));
        }
        if !lifted.contains(&mu) {
            return Err(format!(
                "inner shape {mu} sticks out of the outer shape {lifted}"
            ));
        }
        Ok(CylindricShape {
            k,
            nk,
            lam,
            d,
            mu,
            lifted,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn nk(&self) -> u32 {
        self.nk
    }

    pub fn n(&self) -> u32 {
        self.k + self.nk
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lam(&self) -> &Partition {
        &self.lam
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    /// Outer boundary after winding: `lam` with `d` full-width ribbons added.
    pub fn lifted(&self) -> &Partition {
        &self.lifted
    }

    pub fn size(&self) -> u32 {
        self.lifted.size() - self.mu.size()
    }

    fn canon(&self, cell: (i64, i64)) -> (i64, i64) {
        let t = (cell.1 - 1).div_euclid(self.nk as i64);
        (cell.0 + t * self.k as i64, cell.1 - t * self.nk as i64)
    }

    /// Cells in the standard window, one representative per class: row `r`
    /// holds columns `mu_r < c <= Lambda_r`.
    pub fn cells(&self) -> BTreeSet<(i64, i64)> {
        let mut out = BTreeSet::new();
        for r in 1..=self.lifted.len() {
            let lo = self.mu.part(r - 1) as i64;
            let hi = self.lifted.part(r - 1) as i64;
            for c in lo + 1..=hi {
                out.insert((r as i64, c));
            }
        }
        out
    }

    /// Reduce the winding number: an `n`-ribbon peeled from the head of the
    /// inner shape moves one turn of the outer boundary across the window.
    pub fn canonicalize(&self) -> CylindricShape {
        let mut d = self.d;
        let mut mu = self.mu.clone();
        while d >= 1 {
            let Some(step) = mu.remove_ribbon(self.n(), 1) else {
                break;
            };
            mu = step.result;
            d -= 1;
        }
        CylindricShape::new(self.k, self.nk, self.lam.clone(), d, mu)
            .expect("unwinding a representation preserves validity")
    }

    fn normalized_cells(&self) -> BTreeSet<(i64, i64)> {
        let cells = self.cells();
        let mut best: Option<BTreeSet<(i64, i64)>> = None;
        for s in 0..self.nk as i64 {
            let shifted: BTreeSet<(i64, i64)> =
                cells.iter().map(|&(r, c)| self.canon((r, c + s))).collect();
            let min_row = shifted.iter().map(|&(r, _)| r).min().unwrap_or(1);
            let norm: BTreeSet<(i64, i64)> = shifted
                .iter()
                .map(|&(r, c)| (r - min_row + 1, c))
                .collect();
            if best.as_ref().map_or(true, |b| norm < *b) {
                best = Some(norm);
            }
        }
        best.unwrap_or_default()
    }

    /// Same subset of the cylinder up to translation. Representations with
    /// different `lam` or `d` can still describe one shape.
    pub fn equivalent(&self, other: &CylindricShape) -> bool {
        self.k == other.k
            && self.nk == other.nk
            && self.normalized_cells() == other.normalized_cells()
    }

    /// At most `nk` cells in every row class, equivalently at most `k` in
    /// every column class: the shape embeds in the torus without overlap.
    pub fn is_toric(&self) -> bool {
        let mut row_class = vec![0u32; self.k as usize];
        for r in 1..=self.lifted.len() {
            let width = self.lifted.part(r - 1) - self.mu.part(r - 1);
            row_class[(r - 1) % self.k as usize] += width;
        }
        row_class.iter().all(|&w| w <= self.nk)
    }

    /// Does the shape avoid genuine wrapping? Each connected piece is lifted
    /// cell by cell to the plane; meeting a cell at two distinct plane
    /// positions means the piece winds around the cylinder. A one-column
    /// cylinder only produces vertical strips, which never truly wind.
    pub fn is_skew(&self) -> bool {
        if self.nk == 1 {
            return true;
        }
        let cells = self.cells();
        let mut plane: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
        for &start in &cells {
            if plane.contains_key(&start) {
                continue;
            }
            plane.insert(start, start);
            let mut queue = vec![start];
            while let Some(cell) = queue.pop() {
                let at = plane[&cell];
                for (dr, dc) in [(0i64, 1i64), (0, -1), (1, 0), (-1, 0)] {
                    let nb = self.canon((cell.0 + dr, cell.1 + dc));
                    if !cells.contains(&nb) {
                        continue;
                    }
                    let target = (at.0 + dr, at.1 + dc);
                    match plane.get(&nb) {
                        None => {
                            plane.insert(nb, target);
                            queue.push(nb);
                        }
                        Some(&p) if p != target => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Connected, free of 2 by 2 blocks, and genuinely wound around the
    /// cylinder.
    pub fn is_cylindric_ribbon(&self) -> bool {
        let cells = self.cells();
        if cells.is_empty() {
            return false;
        }
        let start = *cells.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut queue = vec![start];
        while let Some(cell) = queue.pop() {
            for (dr, dc) in [(0i64, 1i64), (0, -1), (1, 0), (-1, 0)] {
                let nb = self.canon((cell.0 + dr, cell.1 + dc));
                if cells.contains(&nb) && seen.insert(nb) {
                    queue.push(nb);
                }
            }
        }
        if seen.len() != cells.len() {
            return false;
        }
        let blocked = cells.iter().any(|&(r, c)| {
            cells.contains(&self.canon((r, c + 1)))
                && cells.contains(&(r + 1, c))
                && cells.contains(&self.canon((r + 1, c + 1)))
        });
        !blocked && !self.is_skew()
    }

    fn constraint_edges(&self) -> (usize, Vec<(usize, usize, EdgeKind)>) {
        let cells = self.cells();
        let index: BTreeMap<(i64, i64), usize> = cells
            .iter()
            .enumerate()
            .map(|(i, &cell)| (cell, i))
            .collect();
        let mut edges = Vec::new();
        for (&(r, c), &i) in &index {
            if let Some(&j) = index.get(&self.canon((r, c + 1))) {
                edges.push((i, j, EdgeKind::Weak));
            }
            if let Some(&j) = index.get(&(r + 1, c)) {
                edges.push((i, j, EdgeKind::Strict));
            }
        }
        (cells.len(), edges)
    }

    /// The constraint poset of the cells: fillings increase weakly to the
    /// right and strictly downward, including across the seam. Degenerate
    /// cylinders with a period of 1 identify a cell's right and lower
    /// neighbors and are rejected.
    pub fn to_poset(&self) -> Result<OrientedPoset, String> {
        if self.k < 2 || self.nk < 2 {
            return Err("constraint posets need both cylinder periods at least 2".into());
        }
        let (count, edges) = self.constraint_edges();
        OrientedPoset::new(count, edges)
    }

    /// The generating function counted directly from fillings, via level
    /// maps of the raw cell constraints. Exponential in the cell count, so
    /// capped, but independent of the algebraic expansions.
    pub fn oracle_monomial(&self) -> Result<SymFunc, String> {
        const MAX_CELLS: u32 = 12;
        if self.size() > MAX_CELLS {
            return Err(format!(
                "level-map oracle is limited to {MAX_CELLS} cells, shape has {}",
                self.size()
            ));
        }
        let (count, edges) = self.constraint_edges();
        let q = k_of_constraints(count, &edges);
        to_symmetric(&q).map_err(|e| format!("level maps did not assemble symmetrically: {e}"))
    }

    /// Signed sum of plane skew functions over all `d`-fold ribbon additions
    /// on `lam`.
    pub fn expand_ribbons(&self) -> SymFunc {
        ribbon_expansion_raw(&self.lam, self.n(), self.d, self.nk as usize, &self.mu)
    }

    /// The same function through the determinant-style route: column heights
    /// of the wound outer shape are shifted by all zero-sum multiples of
    /// `n`, each straightened to a plane skew term with a sign.
    pub fn expand_gk(&self) -> SymFunc {
        let n = self.n();
        let nk = self.nk as usize;
        let conj = self.lifted.conjugate();
        let heights: Vec<i64> = (0..nk).map(|i| conj.part(i) as i64).collect();
        let lo: Vec<i64> = (0..nk)
            .map(|i| {
                let a = (i as i64 + 1) - nk as i64 - heights[i];
                a.div_euclid(n as i64) + i64::from(a.rem_euclid(n as i64) != 0)
            })
            .collect();
        let lo_sum: i64 = lo.iter().sum();
        let base = SignedSequence::new(1, heights);
        let mut out = SymFunc::zero(Basis::Schur, self.size());
        let mut r = lo.clone();
        loop {
            // the last coordinate is forced by the zero-sum condition
            let partial: i64 = r[..nk - 1].iter().sum();
            r[nk - 1] = -partial;
            if r[nk - 1] >= lo[nk - 1] {
                let alpha = base.shift_all(&r, n);
                if let SkewResolution::Term { sign, shape } =
                    resolve_skew_symbol(&alpha, &self.mu)
                {
                    out.accumulate(&skew_to_schur(&shape), sign);
                }
            }
            // advance the first nk-1 coordinates; each is bounded because
            // the rest must stay above their own lower bounds
            let mut i = 0;
            loop {
                if i == nk - 1 {
                    return out;
                }
                r[i] += 1;
                let head: i64 = r[..=i].iter().sum();
                let tail_lo: i64 = lo_sum - lo[..=i].iter().sum::<i64>();
                if head + tail_lo <= 0 {
                    break;
                }
                r[i] = lo[i];
                i += 1;
            }
        }
    }

    /// Do the level maps agree with the structure constants in `k`
    /// variables? Meaningful for toric shapes.
    pub fn postnikov_check(&self) -> Result<bool, String> {
        let oracle = self.oracle_monomial()?;
        let lhs = restrict_vars(&monomial_to_schur(&oracle), self.k as usize);
        let mut rhs = SymFunc::zero(Basis::Schur, self.size());
        for nu in partitions_in_box(self.k as usize, self.nk) {
            if nu.size() != self.size() {
                continue;
            }
            let c = gw_invariant(&self.lam, self.d, &self.mu, &nu, self.k, self.n())?;
            rhs.add_term(nu, c);
        }
        Ok(lhs == rhs)
    }

    /// Split the expansion at the cylinder depth: terms with at most `k`
    /// rows, and the rest. For a wound ribbon the rest is exactly the
    /// alternating hook chain and the boxed part is nonnegative; the flag
    /// reports whether that happened.
    pub fn ribbon_decomposition(&self) -> (SymFunc, bool) {
        let f = self.expand_ribbons();
        let mut boxed = SymFunc::zero(Basis::Schur, f.degree());
        let mut tail = SymFunc::zero(Basis::Schur, f.degree());
        for (p, &c) in f.coeffs() {
            if p.len() <= self.k as usize {
                boxed.add_term(p.clone(), c);
            } else {
                tail.add_term(p.clone(), c);
            }
        }
        let ok = boxed.is_positive() && tail == hook_expansion(self.k, self.nk);
        (boxed, ok)
    }

    /// A witness that the coproduct of a wound shape has a negative side:
    /// the largest term of the expansion with one winding removed, with its
    /// coefficient.
    pub fn coproduct_witness(&self) -> Result<(Partition, i64), String> {
        if self.nk < 2 {
            return Err("needs at least two column classes".into());
        }
        if self.is_skew() {
            return Err("shape does not wind; its coproduct stays positive".into());
        }
        let c = self.canonicalize();
        assert!(c.d >= 1, "a wound shape cannot unwind to d = 0");
        let g = ribbon_expansion_raw(&c.lam, c.n(), c.d - 1, c.nk as usize, &c.mu);
        match g.coeffs().iter().next_back() {
            Some((lam_w, &m)) => Ok((lam_w.clone(), m)),
            None => Err("no witness: the unwound expansion vanishes".into()),
        }
    }

    /// Checks the witness: pairing against a full column picks up the
    /// unwound coefficient with sign `(-1)^(nk-1)`, and the near-column hook
    /// picks up its negative.
    pub fn coproduct_witness_holds(&self) -> Result<bool, String> {
        let (lam_w, m) = self.coproduct_witness()?;
        let n = self.n() as usize;
        let gamma = coproduct(&self.expand_ribbons());
        let want = if (self.nk - 1) % 2 == 0 { m } else { -m };
        let column = Partition::hook(1, n - 1);
        let near = Partition::hook(2, n - 2);
        Ok(gamma.coefficient(&lam_w, &column) == want
            && gamma.coefficient(&lam_w, &near) == -want)
    }

    /// Greedy expansion into the wound classes `s[nu/e]`: repeatedly strip
    /// the largest term deeper than `k` rows, which must be a lifted
    /// `n`-core, and subtract its class. Fails with a report when a leading
    /// term is not a lifted core or a coefficient comes out negative.
    pub fn cyl_schur_expand(&self) -> Result<CylSchurExpansion, String> {
        let k = self.k as usize;
        let n = self.n();
        let mut f = self.expand_ribbons();
        let degree = f.degree();
        let mut terms: BTreeMap<(u32, Partition), i64> = BTreeMap::new();
        for _ in 0..10_000 {
            let deep = f
                .coeffs()
                .iter()
                .filter(|(p, _)| p.len() > k)
                .next_back()
                .map(|(p, &c)| (p.clone(), c));
            let Some((sigma, c)) = deep else {
                break;
            };
            let (nu, e) = sigma.n_core(n);
            let lifted = lift(&nu, n, k, e)
                .map_err(|err| format!("leading term s[{sigma}] is not a wound class: {err}"))?;
            if lifted != sigma {
                return Err(format!(
                    "not expressible: leading term s[{sigma}] strips to core {nu} \
                     with {e} ribbons, whose class leads with s[{lifted}]"
                ));
            }
            *terms.entry((e, nu.clone())).or_insert(0) += c;
            let class = ribbon_expansion_raw(&nu, n, e, self.nk as usize, &Partition::empty());
            f.accumulate(&class, -c);
        }
        if f.coeffs().keys().any(|p| p.len() > k) {
            return Err("not expressible: deep terms kept reappearing".into());
        }
        for (nu, &c) in f.coeffs() {
            *terms.entry((0, nu.clone())).or_insert(0) += c;
        }
        terms.retain(|_, c| *c != 0);
        if let Some(((e, nu), c)) = terms.iter().find(|&(_, &c)| c < 0) {
            return Err(format!(
                "expansion has a negative coefficient: {c} at s[{nu}/{e}]"
            ));
        }
        Ok(CylSchurExpansion { degree, terms })
    }
}

impl fmt::Display for CylindricShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={},nk={};lam={};d={};mu={}",
            self.k, self.nk, self.lam, self.d, self.mu
        )
    }
}

impl FromStr for CylindricShape {
    type Err = String;

    /// Accepts `k=3,nk=4;lam=3,3;d=2;mu=2,1`. Separators `;` and `,` are
    /// interchangeable between fields; commas inside a partition belong to
    /// the preceding field. `lam`, `d` and `mu` may be omitted.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut fields: Vec<(String, String)> = Vec::new();
        for token in s.split([';', ',']) {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            match token.split_once('=') {
                Some((key, value)) => fields.push((key.trim().into(), value.trim().into())),
                None => match fields.last_mut() {
                    Some((_, value)) => {
                        value.push(',');
                        value.push_str(token);
                    }
                    None => return Err(format!("stray token {token:?} in shape description")),
                },
            }
        }
        let mut k = None;
        let mut nk = None;
        let mut lam = Partition::empty();
        let mut d = 0;
        let mut mu = Partition::empty();
        for (key, value) in fields {
            match key.as_str() {
                "k" => k = Some(value.parse::<u32>().map_err(|e| format!("k: {e}"))?),
                "nk" => nk = Some(value.parse::<u32>().map_err(|e| format!("nk: {e}"))?),
                "lam" => lam = value.parse()?,
                "d" => d = value.parse::<u32>().map_err(|e| format!("d: {e}"))?,
                "mu" => mu = value.parse()?,
                other => return Err(format!("unknown field {other:?} in shape description")),
            }
        }
        let k = k.ok_or("missing field k")?;
        let nk = nk.ok_or("missing field nk")?;
        CylindricShape::new(k, nk, lam, d, mu)
    }
}

/// Signed sum of plane skew functions over all `d`-fold capped ribbon
/// additions on `lam`, relative to the inner shape `mu`. Zero when the
/// inner shape is too large to fit under any of them.
fn ribbon_expansion_raw(
    lam: &Partition,
    n: u32,
    d: u32,
    cap: usize,
    mu: &Partition,
) -> SymFunc {
    let degree = lam.size() as i64 + (d * n) as i64 - mu.size() as i64;
    if degree < 0 {
        return SymFunc::zero(Basis::Schur, 0);
    }
    let mut out = SymFunc::zero(Basis::Schur, degree as u32);
    for (tau, sign) in enum_ribbon_additions(lam, n, d, cap) {
        if !tau.contains(mu) {
            continue;
        }
        out.accumulate(&skew_to_schur(&SkewShape::new(tau, mu.clone())), sign);
    }
    out
}

/// The alternating hook chain of the empty shape wound once: hooks of size
/// `k + nk` from `(nk, 1^k)` down to the full column, with alternating
/// signs.
pub fn hook_expansion(k: u32, nk: u32) -> SymFunc {
    let mut out = SymFunc::zero(Basis::Schur, k + nk);
    for j in 0..nk {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.add_term(Partition::hook(nk - j, (k + j) as usize), sign);
    }
    out
}

/// Structure constant of degree `d`: the signed count of ribbon routes from
/// `lam` weighted by plain product coefficients. At `d = 0` this is the
/// ordinary product coefficient. All three shapes must fit the `k` by
/// `n - k` box; a degree mismatch gives zero.
pub fn gw_invariant(
    lam: &Partition,
    d: u32,
    mu: &Partition,
    nu: &Partition,
    k: u32,
    n: u32,
) -> Result<i64, String> {
    if k < 1 || n <= k {
        return Err("need 1 <= k < n".into());
    }
    let nk = n - k;
    for (name, p) in [("lam", lam), ("mu", mu), ("nu", nu)] {
        if p.len() > k as usize || p.part(0) > nk {
            return Err(format!("{name} = {p} does not fit in the {k} by {nk} box"));
        }
    }
    if mu.size() + nu.size() != lam.size() + d * n {
        return Ok(0);
    }
    let mut total = 0;
    for (tau, sign) in enum_ribbon_additions(lam, n, d, nk as usize) {
        total += sign * lr_coefficient(&tau, mu, nu);
    }
    Ok(total)
}

/// Fewest variables at which the expansion shows a negative coefficient:
/// the least row count among negative terms. `None` for nonnegative
/// expansions.
pub fn min_negative_vars(f: &SymFunc) -> Option<usize> {
    assert_eq!(f.basis(), Basis::Schur);
    f.coeffs()
        .iter()
        .filter(|&(_, &c)| c < 0)
        .map(|(p, _)| p.len())
        .min()
}

/// A nonnegative combination of wound classes `s[nu/e]`, keyed by winding
/// then core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylSchurExpansion {
    pub degree: u32,
    pub terms: BTreeMap<(u32, Partition), i64>,
}

impl fmt::Display for CylSchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut grouped: BTreeMap<u32, Vec<(&Partition, i64)>> = BTreeMap::new();
        for ((e, nu), &c) in &self.terms {
            grouped.entry(*e).or_default().push((nu, c));
        }
        let mut first = true;
        for (e, list) in grouped {
            for (nu, c) in list.into_iter().rev() {
                if first {
                    if c < 0 {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if c < 0 {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let mag = c.abs();
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write!(f, "s[{nu}/{e}]")?;
            }
        }
        Ok(())
    }
}
