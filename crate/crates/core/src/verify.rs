//! Systematic sweeps. Everything here either confirms a structural claim
//! over an exhaustive domain or hunts for a counterexample; each function
//! reports what it covered so callers can show the scope of the evidence.

use crate::cylindric::CylindricShape;
use crate::partition::{lift, partitions_in_box, Partition};
use crate::poset::{
    enum_oriented_posets, has_cycle, is_skew_shape_poset, k_po, recognize_cylindric_components,
    OrientedPoset, PosetFilter,
};
use crate::qsym::{is_symmetric, m_to_f, QSymFunc};
use crate::symfunc::schur_to_fundamental;
use std::collections::BTreeMap;

/// Winding a shape once more adds, beyond the classes of the unwound
/// expansion each wound once further, only terms of at most `k` rows.
/// Checks every shape with the given bounds and returns how many were
/// covered; fails with the offending shape if a deeper term remains.
pub fn verify_errorterm(kmax: u32, nkmax: u32, dmax: u32) -> Result<usize, String> {
    let mut checked = 0;
    for k in 1..=kmax {
        for nk in 1..=nkmax {
            let n = k + nk;
            for lam in partitions_in_box(k as usize, nk) {
                for d in 1..=dmax {
                    let prev_lift = lift(&lam, n, k as usize, d - 1)
                        .expect("shapes from the box always wind");
                    for mu in partitions_in_box(k as usize, nk) {
                        if !prev_lift.contains(&mu) {
                            continue;
                        }
                        let prev = CylindricShape::new(k, nk, lam.clone(), d - 1, mu.clone())
                            .map_err(|e| format!("invalid base shape: {e}"))?;
                        let expansion = prev
                            .cyl_schur_expand()
                            .map_err(|e| format!("base expansion failed at {prev}: {e}"))?;
                        let cur = CylindricShape::new(k, nk, lam.clone(), d, mu.clone())
                            .map_err(|e| format!("invalid wound shape: {e}"))?;
                        let mut rest = cur.expand_ribbons();
                        for ((e, nu), &c) in &expansion.terms {
                            let wound = CylindricShape::new(
                                k,
                                nk,
                                nu.clone(),
                                e + 1,
                                Partition::empty(),
                            )
                            .expect("classes stay in the box");
                            rest.accumulate(&wound.expand_ribbons(), -c);
                        }
                        if let Some(deep) =
                            rest.coeffs().keys().find(|p| p.len() > k as usize)
                        {
                            return Err(format!(
                                "error term of {cur} reaches s[{deep}] beyond {k} rows"
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// The ribbon route and the determinant-style route compute the same
/// function. Sweeps every shape within the bounds, including inner shapes
/// deeper than `k` rows, and returns how many were compared.
pub fn gk_equivalence_sweep(kmax: u32, nkmax: u32, dmax: u32) -> Result<usize, String> {
    let mut checked = 0;
    for_each_shape(kmax, nkmax, dmax, &mut |shape| {
        if shape.expand_ribbons() != shape.expand_gk() {
            return Err(format!("routes disagree at {shape}"));
        }
        checked += 1;
        Ok(())
    })?;
    Ok(checked)
}

/// Positivity in the Schur basis, positivity in the fundamental basis, and
/// skewness of the shape are one property. Shapes larger than `max_cells`
/// are skipped; returns how many were checked.
pub fn positivity_sweep(
    kmax: u32,
    nkmax: u32,
    dmax: u32,
    max_cells: u32,
) -> Result<usize, String> {
    let mut checked = 0;
    for_each_shape(kmax, nkmax, dmax, &mut |shape| {
        if shape.size() > max_cells {
            return Ok(());
        }
        let skew = shape.is_skew();
        let f = shape.expand_ribbons();
        if f.is_positive() != skew {
            return Err(format!(
                "Schur positivity disagrees with skewness at {shape}: skew = {skew}"
            ));
        }
        if schur_to_fundamental(&f).is_positive() != skew {
            return Err(format!(
                "fundamental positivity disagrees with skewness at {shape}: skew = {skew}"
            ));
        }
        checked += 1;
        Ok(())
    })?;
    Ok(checked)
}

/// On toric shapes with boxed boundaries, the filling count restricted to
/// `k` variables equals the structure-constant combination. Returns how
/// many shapes were checked.
pub fn postnikov_sweep(
    kmax: u32,
    nkmax: u32,
    dmax: u32,
    max_cells: u32,
) -> Result<usize, String> {
    let mut checked = 0;
    for k in 1..=kmax {
        for nk in 1..=nkmax {
            let n = k + nk;
            for lam in partitions_in_box(k as usize, nk) {
                for d in 0..=dmax {
                    let lifted = lift(&lam, n, k as usize, d)
                        .expect("shapes from the box always wind");
                    for mu in partitions_in_box(k as usize, nk) {
                        if !lifted.contains(&mu) {
                            continue;
                        }
                        let Ok(shape) = CylindricShape::new(k, nk, lam.clone(), d, mu.clone())
                        else {
                            continue;
                        };
                        if !shape.is_toric() || shape.size() > max_cells {
                            continue;
                        }
                        match shape.postnikov_check() {
                            Ok(true) => checked += 1,
                            Ok(false) => {
                                return Err(format!(
                                    "fillings and structure constants disagree at {shape}"
                                ))
                            }
                            Err(e) => return Err(format!("check failed at {shape}: {e}")),
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Every valid shape within the bounds, with the inner shape ranging over
/// everything under the wound outer boundary.
fn for_each_shape(
    kmax: u32,
    nkmax: u32,
    dmax: u32,
    visit: &mut dyn FnMut(&CylindricShape) -> Result<(), String>,
) -> Result<(), String> {
    for k in 1..=kmax {
        for nk in 1..=nkmax {
            let n = k + nk;
            for lam in partitions_in_box(k as usize, nk) {
                for d in 0..=dmax {
                    let lifted = lift(&lam, n, k as usize, d)
                        .expect("shapes from the box always wind");
                    for mu in partitions_in_box(lifted.len(), nk) {
                        let Ok(shape) = CylindricShape::new(k, nk, lam.clone(), d, mu.clone())
                        else {
                            continue;
                        };
                        visit(&shape)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Are the wound classes of one degree linearly independent? Builds the
/// matrix of their expansions and checks full column rank by fraction-free
/// elimination.
pub fn independence_check(k: u32, nk: u32, degree: u32) -> bool {
    let n = k + nk;
    let mut columns: Vec<BTreeMap<Partition, i64>> = Vec::new();
    for nu in partitions_in_box(k as usize, nk) {
        if nu.size() > degree || (degree - nu.size()) % n != 0 {
            continue;
        }
        let e = (degree - nu.size()) / n;
        let class = CylindricShape::new(k, nk, nu, e, Partition::empty())
            .expect("classes stay in the box")
            .expand_ribbons();
        columns.push(class.coeffs().clone());
    }
    if columns.is_empty() {
        return true;
    }
    let mut row_of: BTreeMap<&Partition, usize> = BTreeMap::new();
    for col in &columns {
        for p in col.keys() {
            let next = row_of.len();
            row_of.entry(p).or_insert(next);
        }
    }
    let mut mat = vec![vec![0i128; columns.len()]; row_of.len()];
    for (j, col) in columns.iter().enumerate() {
        for (p, &c) in col {
            mat[row_of[p]][j] = c as i128;
        }
    }
    rank(mat) == columns.len()
}

/// Integer row elimination in the style of Bareiss: exact divisions keep
/// the entries as minors, avoiding both rationals and drift.
fn rank(mut mat: Vec<Vec<i128>>) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                mat[r][c] = (mat[r][c] * mat[rank][col] - mat[r][col] * mat[rank][c]) / prev;
            }
            mat[r][col] = 0;
        }
        prev = mat[rank][col];
        rank += 1;
        if rank == cols {
            break;
        }
    }
    rank
}

/// Oriented posets whose generating function is symmetric yet whose
/// components do not all fit a cylinder. Empty through 6 elements; the
/// recognizer is only a necessary test beyond that.
pub fn find_symmetric_unrecognized(n: usize) -> Result<Vec<OrientedPoset>, String> {
    let all = enum_oriented_posets(n, PosetFilter::All)?;
    Ok(all
        .into_iter()
        .filter(|p| is_symmetric(&k_po(p)) && !recognize_cylindric_components(p))
        .collect())
}

/// Oriented posets with a cycle in the mixed walk sense whose generating
/// function is still positive in the fundamental basis. Returned with the
/// fundamental expansion as evidence.
pub fn find_f_positive_cycles(n: usize) -> Result<Vec<(OrientedPoset, QSymFunc)>, String> {
    let all = enum_oriented_posets(n, PosetFilter::All)?;
    let mut found = Vec::new();
    for p in all {
        if !has_cycle(&p) {
            continue;
        }
        let f = m_to_f(&k_po(&p));
        if !f.is_zero() && f.is_positive() {
            found.push((p, f));
        }
    }
    Ok(found)
}

/// For cycle-free orientations, symmetry of the generating function is
/// equivalent to every component being a plane skew shape. Sweeps all
/// orientations up to `nmax` elements and returns how many were checked.
pub fn stanley_sweep(nmax: usize) -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=nmax {
        for p in enum_oriented_posets(n, PosetFilter::Acyclic)? {
            let symmetric = is_symmetric(&k_po(&p));
            let skew = is_skew_shape_poset(&p);
            if symmetric != skew {
                return Err(format!(
                    "symmetry and skewness disagree on {p:?}: symmetric = {symmetric}"
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
