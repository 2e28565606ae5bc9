//! Quasisymmetric functions in the monomial and fundamental bases, indexed by
//! compositions. The two bases are related by refinement: a fundamental term
//! is the sum of the monomial terms over all refinements of its index.

use crate::partition::Partition;
use crate::symfunc::{Basis, SymFunc};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A composition: a finite sequence of positive parts (possibly empty).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        Composition(parts)
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

    /// The parts sorted into a partition.
    pub fn sorted(&self) -> Partition {
        let mut parts = self.0.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }
}

impl fmt::Display for Composition {
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

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Composition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(Composition(Vec::new()));
        }
        let mut parts = Vec::new();
        for piece in t.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| format!("bad composition part {:?}", piece.trim()))?;
            if p == 0 {
                return Err("composition parts must be positive".into());
            }
            parts.push(p);
        }
        Ok(Composition(parts))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QBasis {
    Monomial,
    Fundamental,
}

/// A homogeneous quasisymmetric function of fixed degree with integer
/// coefficients; stored values are never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct QSymFunc {
    basis: QBasis,
    degree: u32,
    coeffs: BTreeMap<Composition, i64>,
}

impl QSymFunc {
    pub fn zero(basis: QBasis, degree: u32) -> Self {
        QSymFunc {
            basis,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(basis: QBasis, comp: Composition, coeff: i64) -> Self {
        let mut f = QSymFunc::zero(basis, comp.size());
        f.add_term(comp, coeff);
        f
    }

    pub fn basis(&self) -> QBasis {
        self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Composition, i64> {
        &self.coeffs
    }

    pub fn coefficient(&self, comp: &Composition) -> i64 {
        self.coeffs.get(comp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    pub fn add_term(&mut self, comp: Composition, coeff: i64) {
        assert_eq!(comp.size(), self.degree, "term degree mismatch");
        match self.coeffs.entry(comp) {
            Entry::Vacant(e) => {
                if coeff != 0 {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn accumulate(&mut self, other: &QSymFunc, factor: i64) {
        assert_eq!(self.basis, other.basis);
        assert_eq!(self.degree, other.degree);
        if factor == 0 {
            return;
        }
        for (comp, &c) in &other.coeffs {
            self.add_term(comp.clone(), c * factor);
        }
    }

    pub fn scale(mut self, factor: i64) -> QSymFunc {
        if factor == 0 {
            self.coeffs.clear();
        } else {
            for c in self.coeffs.values_mut() {
                *c *= factor;
            }
        }
        self
    }
}

impl std::ops::Add for QSymFunc {
    type Output = QSymFunc;
    fn add(mut self, rhs: QSymFunc) -> QSymFunc {
        self.accumulate(&rhs, 1);
        self
    }
}

impl std::ops::Sub for QSymFunc {
    type Output = QSymFunc;
    fn sub(mut self, rhs: QSymFunc) -> QSymFunc {
        self.accumulate(&rhs, -1);
        self
    }
}

impl fmt::Display for QSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.basis {
            QBasis::Monomial => "M",
            QBasis::Fundamental => "F",
        };
        let mut keys: Vec<&Composition> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then(b.0.cmp(&a.0)));
        for (i, comp) in keys.iter().enumerate() {
            let c = self.coeffs[*comp];
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "{letter}[{comp}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All compositions of `n`.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    fn go(rem: u32, acc: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition(acc.clone()));
            return;
        }
        for p in 1..=rem {
            acc.push(p);
            go(rem - p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

/// All refinements of `comp`: each part splits into a composition of itself
/// and the pieces are concatenated in order.
fn refinements(comp: &Composition) -> Vec<Composition> {
    let mut out = vec![Vec::new()];
    for &p in comp.parts() {
        let splits = compositions_of(p);
        let mut next = Vec::with_capacity(out.len() * splits.len());
        for prefix in &out {
            for split in &splits {
                let mut w = prefix.clone();
                w.extend_from_slice(split.parts());
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(Composition).collect()
}

/// Rewrites a fundamental expansion in the monomial basis.
pub fn f_to_m(f: &QSymFunc) -> QSymFunc {
    assert_eq!(f.basis, QBasis::Fundamental, "expected a fundamental expansion");
    let mut out = QSymFunc::zero(QBasis::Monomial, f.degree);
    for (comp, &c) in &f.coeffs {
        for fine in refinements(comp) {
            out.add_term(fine, c);
        }
    }
    out
}

/// Rewrites a monomial expansion in the fundamental basis; a refinement with
/// `r` extra parts contributes with sign `(-1)^r`.
pub fn m_to_f(f: &QSymFunc) -> QSymFunc {
    assert_eq!(f.basis, QBasis::Monomial, "expected a monomial expansion");
    let mut out = QSymFunc::zero(QBasis::Fundamental, f.degree);
    for (comp, &c) in &f.coeffs {
        for fine in refinements(comp) {
            let sign = if (fine.len() - comp.len()) % 2 == 0 { 1 } else { -1 };
            out.add_term(fine, c * sign);
        }
    }
    out
}

/// Number of distinct rearrangements of the parts of `lam`.
fn rearrangement_count(lam: &Partition) -> u64 {
    let mut count = 1u128;
    for i in 1..=lam.len() as u128 {
        count *= i;
    }
    let mut i = 0;
    while i < lam.len() {
        let mut j = i;
        while j < lam.len() && lam.parts()[j] == lam.parts()[i] {
            j += 1;
        }
        for f in 1..=(j - i) as u128 {
            count /= f;
        }
        i = j;
    }
    count as u64
}

/// Looks for a reason `f` is not symmetric: either two rearrangements of one
/// part multiset with different coefficients, or a rearrangement missing from
/// the support. Works on the monomial form.
fn symmetry_defect(f: &QSymFunc) -> Option<(Composition, Composition)> {
    let m = match f.basis {
        QBasis::Monomial => f.clone(),
        QBasis::Fundamental => f_to_m(f),
    };
    let mut classes: BTreeMap<Partition, Vec<(Composition, i64)>> = BTreeMap::new();
    for (comp, &c) in &m.coeffs {
        classes
            .entry(comp.sorted())
            .or_default()
            .push((comp.clone(), c));
    }
    for (lam, members) in &classes {
        let (first, c0) = &members[0];
        for (comp, c) in &members[1..] {
            if c != c0 {
                return Some((first.clone(), comp.clone()));
            }
        }
        if (members.len() as u64) < rearrangement_count(lam) {
            // find a rearrangement outside the support
            let missing = compositions_of(lam.size())
                .into_iter()
                .find(|comp| comp.sorted() == *lam && m.coefficient(comp) == 0)
                .unwrap();
            return Some((first.clone(), missing));
        }
    }
    None
}

/// True when the function is symmetric: every rearrangement of a part
/// multiset appears, and with one shared coefficient.
pub fn is_symmetric(f: &QSymFunc) -> bool {
    symmetry_defect(f).is_none()
}

/// Reads a symmetric quasisymmetric function as a symmetric function in the
/// monomial basis; reports a witnessing pair of compositions otherwise.
pub fn to_symmetric(f: &QSymFunc) -> Result<SymFunc, String> {
    if let Some((a, b)) = symmetry_defect(f) {
        let m = match f.basis {
            QBasis::Monomial => f.clone(),
            QBasis::Fundamental => f_to_m(f),
        };
        return Err(format!(
            "not symmetric: M[{a}] has coefficient {} but M[{b}] has {}",
            m.coefficient(&a),
            m.coefficient(&b)
        ));
    }
    let m = match f.basis {
        QBasis::Monomial => f.clone(),
        QBasis::Fundamental => f_to_m(f),
    };
    let mut out = SymFunc::zero(Basis::Monomial, f.degree);
    let mut seen: BTreeMap<Partition, i64> = BTreeMap::new();
    for (comp, &c) in m.coeffs() {
        seen.entry(comp.sorted()).or_insert(c);
    }
    for (lam, c) in seen {
        out.add_term(lam, c);
    }
    Ok(out)
}
