//! End-to-end checks of the cylinder machinery. Each test states one
//! claim, sweeps its full pinned domain, and prints a single PASS or FAIL
//! line with the observed scope and timing. Budgets are generous; blowing
//! one means something regressed structurally, not that a machine was slow.

use cylschur::cylindric::{
    gw_invariant, hook_expansion, min_negative_vars, CylindricShape,
};
use cylschur::partition::{lift, partitions_in_box, Partition, SkewShape};
use cylschur::poset::{are_isomorphic, has_cycle, EdgeKind, OrientedPoset};
use cylschur::qsym::{is_symmetric, Composition, QBasis, QSymFunc};
use cylschur::symfunc::{
    coproduct, schur_to_fundamental, schur_to_monomial, skew_to_schur, Basis, SymFunc,
};
use cylschur::verify;
use std::time::{Duration, Instant};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn criterion(name: &str, budget: Duration, run: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) => {
            println!(
                "[PASS] {name}: {detail} ({elapsed:.2?} of {budget:.0?} budget)"
            );
            assert!(
                elapsed <= budget,
                "{name} exceeded its {budget:?} budget: {elapsed:?}"
            );
        }
        Err(msg) => {
            println!("[FAIL] {name}: {msg}");
            panic!("{name}: {msg}");
        }
    }
}

fn shape(k: u32, nk: u32, lam: &str, d: u32, mu: &str) -> CylindricShape {
    CylindricShape::new(k, nk, lam.parse().unwrap(), d, mu.parse().unwrap()).unwrap()
}

fn s(text: &str) -> SymFunc {
    SymFunc::single(Basis::Schur, text.parse().unwrap(), 1)
}

fn m(text: &str) -> SymFunc {
    SymFunc::single(Basis::Monomial, text.parse().unwrap(), 1)
}

/// Every valid shape within the bounds, inner shapes of any depth included.
fn sweep_shapes(
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
                    let lifted = lift(&lam, n, k as usize, d).unwrap();
                    for mu in partitions_in_box(lifted.len(), nk) {
                        let Ok(c) = CylindricShape::new(k, nk, lam.clone(), d, mu.clone())
                        else {
                            continue;
                        };
                        visit(&c)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Wound ribbons have exactly `k + nk` cells, so they all arise from one
/// winding over an inner shape of the same size as the seed.
fn sweep_ribbons(
    total: u32,
    visit: &mut dyn FnMut(&CylindricShape) -> Result<(), String>,
) -> Result<usize, String> {
    let mut seen = 0;
    for k in 1..total {
        let nk = total - k;
        for lam in partitions_in_box(k as usize, nk) {
            let lifted = lift(&lam, total, k as usize, 1).unwrap();
            for mu in partitions_in_box(lifted.len(), nk) {
                if mu.size() != lam.size() {
                    continue;
                }
                let Ok(c) = CylindricShape::new(k, nk, lam.clone(), 1, mu.clone()) else {
                    continue;
                };
                if !c.is_cylindric_ribbon() {
                    continue;
                }
                visit(&c)?;
                seen += 1;
            }
        }
    }
    Ok(seen)
}

#[test]
fn c01_smallest_wound_shape_end_to_end() {
    criterion("c01 smallest wound shape", Duration::from_secs(1), || {
        let b = shape(2, 2, "1", 1, "1");
        let expansion = s("2,2") + s("2,1,1") - s("1,1,1,1");
        ensure!(b.expand_ribbons() == expansion, "ribbon route came out wrong");
        ensure!(b.expand_gk() == expansion, "determinant route came out wrong");
        let oracle = b.oracle_monomial().map_err(|e| e.to_string())?;
        let want_oracle = m("2,2") + m("2,1,1").scale(2) + m("1,1,1,1").scale(4);
        ensure!(oracle == want_oracle, "filling count came out wrong");
        ensure!(
            schur_to_monomial(&expansion) == oracle,
            "expansion and filling count disagree"
        );
        let fundamental = schur_to_fundamental(&expansion);
        let want_f: QSymFunc = [
            (vec![2u32, 2], 1i64),
            (vec![2, 1, 1], 1),
            (vec![1, 2, 1], 2),
            (vec![1, 1, 2], 1),
            (vec![1, 1, 1, 1], -1),
        ]
        .into_iter()
        .fold(QSymFunc::zero(QBasis::Fundamental, 4), |mut acc, (c, v)| {
            acc.add_term(Composition::new(c), v);
            acc
        });
        ensure!(fundamental == want_f, "fundamental expansion came out wrong");
        let p = b.to_poset().map_err(|e| e.to_string())?;
        let reference = OrientedPoset::new(
            4,
            [
                (0, 2, EdgeKind::Strict),
                (0, 3, EdgeKind::Weak),
                (1, 2, EdgeKind::Weak),
                (1, 3, EdgeKind::Strict),
            ],
        )
        .unwrap();
        ensure!(are_isomorphic(&p, &reference), "cell poset is not the crossed pair");
        ensure!(has_cycle(&p), "cell poset lost its mixed cycle");
        ensure!(!b.is_skew(), "shape wrongly classified as skew");
        Ok("expansion, fillings, fundamental form and cell poset all frozen".into())
    });
}

#[test]
fn c02_ten_term_alternating_expansion() {
    criterion("c02 ten-term alternating expansion", Duration::from_secs(5), || {
        let c = shape(3, 4, "3,3", 2, "2,1");
        let mu: Partition = "2,1".parse().unwrap();
        let frozen: [(&[u32], i64); 10] = [
            (&[7, 5, 4, 4], 1),
            (&[8, 5, 4, 3], -1),
            (&[9, 5, 3, 3], 1),
            (&[11, 3, 3, 3], -1),
            (&[8, 8, 4], 1),
            (&[9, 8, 3], -1),
            (&[14, 3, 3], 1),
            (&[9, 9, 2], 1),
            (&[15, 3, 2], -1),
            (&[16, 2, 2], 1),
        ];
        let mut want = SymFunc::zero(Basis::Schur, c.size());
        for (heights, sign) in frozen {
            let outer = Partition::new(heights.to_vec()).conjugate();
            want.accumulate(&skew_to_schur(&SkewShape::new(outer, mu.clone())), sign);
        }
        ensure!(c.expand_ribbons() == want, "ribbon route left the frozen ten terms");
        ensure!(c.expand_gk() == want, "determinant route left the frozen ten terms");
        Ok(format!("both routes equal the ten frozen signed terms at degree {}", c.size()))
    });
}

#[test]
fn c03_expansion_routes_agree() {
    criterion("c03 expansion routes agree", Duration::from_secs(600), || {
        let checked = verify::gk_equivalence_sweep(3, 3, 2)?;
        ensure!(checked > 1000, "sweep covered only {checked} shapes");
        Ok(format!("ribbon and determinant routes equal on {checked} shapes"))
    });
}

#[test]
fn c04_fillings_match_expansions() {
    criterion("c04 fillings match expansions", Duration::from_secs(900), || {
        let mut checked = 0usize;
        sweep_shapes(3, 3, 2, &mut |c| {
            if c.size() > 10 {
                return Ok(());
            }
            let oracle = c.oracle_monomial().map_err(|e| format!("{c}: {e}"))?;
            if schur_to_monomial(&c.expand_ribbons()) != oracle {
                return Err(format!("fillings disagree with the expansion at {c}"));
            }
            checked += 1;
            Ok(())
        })?;
        ensure!(checked > 500, "sweep covered only {checked} shapes");
        Ok(format!("direct filling counts confirmed on {checked} shapes"))
    });
}

#[test]
fn c05_hook_chains() {
    criterion("c05 hook chains", Duration::from_secs(60), || {
        let mut checked = 0;
        for n in 2..=8u32 {
            for k in 1..n {
                let nk = n - k;
                let chain = hook_expansion(k, nk);
                ensure!(
                    chain.coeffs().len() == nk as usize,
                    "chain for ({k},{nk}) has {} terms",
                    chain.coeffs().len()
                );
                for (p, &c) in chain.coeffs() {
                    let arm = p.part(0);
                    ensure!(
                        p.size() == n && p.len() as u32 + arm == n + 1,
                        "non-hook term {p} in chain ({k},{nk})"
                    );
                    let j = nk - arm;
                    ensure!(
                        c == if j % 2 == 0 { 1 } else { -1 },
                        "sign of {p} in chain ({k},{nk}) is {c}"
                    );
                }
                let once = shape(k, nk, "", 1, "");
                ensure!(
                    once.expand_ribbons() == chain,
                    "the once-wound empty shape differs from the chain at ({k},{nk})"
                );
                checked += 1;
            }
        }
        Ok(format!("alternating hook chains confirmed for {checked} cylinders"))
    });
}

#[test]
fn c06_positivity_is_skewness() {
    criterion("c06 positivity is skewness", Duration::from_secs(1200), || {
        let checked = verify::positivity_sweep(3, 3, 2, 10)?;
        ensure!(checked > 500, "sweep covered only {checked} shapes");
        Ok(format!(
            "Schur and fundamental positivity both equal skewness on {checked} shapes"
        ))
    });
}

#[test]
fn c07_ribbon_decompositions() {
    criterion("c07 ribbon decompositions", Duration::from_secs(300), || {
        let mut total = 0;
        for n in 2..=8 {
            total += sweep_ribbons(n, &mut |c| {
                let (boxed, ok) = c.ribbon_decomposition();
                if !ok {
                    return Err(format!(
                        "decomposition failed at {c}: boxed part {boxed}"
                    ));
                }
                Ok(())
            })?;
        }
        ensure!(total > 50, "only {total} wound ribbons found");
        Ok(format!(
            "{total} wound ribbons split into a nonnegative boxed part plus the hook chain"
        ))
    });
}

#[test]
fn c08_negative_variable_thresholds() {
    criterion("c08 negative variable thresholds", Duration::from_secs(600), || {
        let mut ribbons = 0;
        for n in 2..=8 {
            ribbons += sweep_ribbons(n, &mut |c| {
                let vars = min_negative_vars(&c.expand_ribbons());
                if vars != Some(c.k() as usize + 2) {
                    return Err(format!(
                        "ribbon {c} shows negativity at {vars:?}, not k + 2"
                    ));
                }
                Ok(())
            })?;
        }
        let mut toric = 0usize;
        sweep_shapes(3, 3, 2, &mut |c| {
            if c.is_skew() || !c.is_toric() {
                return Ok(());
            }
            let vars = min_negative_vars(&c.expand_ribbons());
            let bound = 2 * c.k() as usize + 1;
            match vars {
                Some(v) if v <= bound => {
                    toric += 1;
                    Ok(())
                }
                other => Err(format!(
                    "nonskew toric {c} shows negativity at {other:?}, past {bound}"
                )),
            }
        })?;
        ensure!(ribbons > 50 && toric > 50, "thin coverage: {ribbons} ribbons, {toric} toric");
        Ok(format!(
            "{ribbons} ribbons turn negative at exactly k + 2 variables, \
             {toric} nonskew toric shapes by 2k + 1"
        ))
    });
}

#[test]
fn c09_fillings_match_structure_constants() {
    criterion("c09 fillings match structure constants", Duration::from_secs(900), || {
        let checked = verify::postnikov_sweep(3, 3, 2, 10)?;
        ensure!(checked > 100, "sweep covered only {checked} shapes");
        Ok(format!(
            "restricted filling counts equal structure-constant sums on {checked} toric shapes"
        ))
    });
}

#[test]
fn c10_error_terms_stay_boxed() {
    criterion("c10 error terms stay boxed", Duration::from_secs(1800), || {
        let checked = verify::verify_errorterm(3, 3, 3)?;
        ensure!(checked > 500, "sweep covered only {checked} shapes");
        Ok(format!(
            "one extra winding stays within k rows beyond the wound classes on {checked} shapes"
        ))
    });
}

#[test]
#[ignore = "wide domain kept out of the default suite; run with --ignored"]
fn c10_error_terms_stay_boxed_wide() {
    criterion("c10 wide error-term sweep", Duration::from_secs(14400), || {
        let checked = verify::verify_errorterm(4, 4, 4)?;
        Ok(format!("wide domain covered {checked} shapes"))
    });
}

#[test]
fn c11_symmetric_acyclic_orientations_are_skew() {
    criterion("c11 symmetric acyclic orientations", Duration::from_secs(1800), || {
        let checked = verify::stanley_sweep(6)?;
        ensure!(checked > 1000, "sweep covered only {checked} orientations");
        Ok(format!(
            "symmetry equals plane skewness for {checked} cycle-free orientations"
        ))
    });
}

#[test]
fn c12a_recognizer_complete_through_six() {
    criterion("c12a recognizer complete through six", Duration::from_secs(1800), || {
        let mut scanned = 0;
        for n in 1..=6 {
            let found = verify::find_symmetric_unrecognized(n)?;
            if let Some(p) = found.first() {
                return Err(format!(
                    "symmetric orientation escaped the recognizer at {n} elements: {p:?}"
                ));
            }
            scanned += 1;
        }
        Ok(format!(
            "every symmetric orientation up to {scanned} sizes fits a cylinder"
        ))
    });
}

#[test]
#[ignore = "seven-element scan kept out of the default suite; run with --ignored"]
fn c12b_recognizer_fails_at_seven() {
    criterion("c12b recognizer fails at seven", Duration::from_secs(28800), || {
        let found = verify::find_symmetric_unrecognized(7)?;
        ensure!(
            !found.is_empty(),
            "expected symmetric orientations beyond the recognizer at 7 elements"
        );
        Ok(format!(
            "{} symmetric orientations escape the cylinder recognizer at 7 elements",
            found.len()
        ))
    });
}

#[test]
fn c12c_positive_mixed_cycle_exists() {
    criterion("c12c positive mixed cycle", Duration::from_secs(1800), || {
        let found = verify::find_f_positive_cycles(5)?;
        ensure!(!found.is_empty(), "no positive mixed cycle among 5 elements");
        let frozen: QSymFunc = [
            (vec![1u32, 3, 1], 1i64),
            (vec![1, 1, 3], 1),
            (vec![2, 2, 1], 1),
            (vec![2, 1, 2], 1),
            (vec![1, 2, 2], 2),
        ]
        .into_iter()
        .fold(QSymFunc::zero(QBasis::Fundamental, 5), |mut acc, (c, v)| {
            acc.add_term(Composition::new(c), v);
            acc
        });
        ensure!(
            found.iter().any(|(_, f)| *f == frozen),
            "none of the {} finds matches the frozen expansion",
            found.len()
        );
        Ok(format!(
            "{} cyclic orientations stay positive, frozen witness included",
            found.len()
        ))
    });
}

#[test]
fn c13_window_shifts() {
    criterion("c13 window shifts", Duration::from_secs(60), || {
        let a = shape(3, 3, "3,3,1", 1, "2,1");
        let b = shape(3, 3, "3,2,2", 1, "2,1");
        let c = shape(3, 3, "1", 2, "2,1");
        ensure!(
            a.equivalent(&b) && a.equivalent(&c) && b.equivalent(&c),
            "the three windows are not one shape"
        );
        let f = a.expand_ribbons();
        ensure!(
            f == b.expand_ribbons() && f == c.expand_ribbons(),
            "equivalent windows expanded differently"
        );
        ensure!(
            a != b && a != c,
            "distinct representations collapsed"
        );
        Ok("three windows of one shape agree on expansion".into())
    });
}

#[test]
fn c14_wound_classes_are_independent() {
    criterion("c14 wound classes are independent", Duration::from_secs(300), || {
        let mut checked = 0;
        for k in 1..=3 {
            for nk in 1..=3 {
                for degree in 0..=12 {
                    ensure!(
                        verify::independence_check(k, nk, degree),
                        "dependence among classes at k = {k}, nk = {nk}, degree {degree}"
                    );
                    checked += 1;
                }
            }
        }
        Ok(format!("full column rank across {checked} degree spaces"))
    });
}

#[test]
fn c15_coproduct_witnesses() {
    criterion("c15 coproduct witnesses", Duration::from_secs(600), || {
        let mut checked = 0usize;
        for &(k, nk) in &[(2u32, 2u32), (2, 3), (3, 2), (3, 3)] {
            let n = k + nk;
            for lam in partitions_in_box(k as usize, nk) {
                for d in 0..=2u32 {
                    let lifted = lift(&lam, n, k as usize, d).unwrap();
                    for mu in partitions_in_box(lifted.len(), nk) {
                        let Ok(c) = CylindricShape::new(k, nk, lam.clone(), d, mu.clone())
                        else {
                            continue;
                        };
                        if c.size() > 8 || c.is_skew() {
                            continue;
                        }
                        match c.coproduct_witness_holds() {
                            Ok(true) => checked += 1,
                            Ok(false) => {
                                return Err(format!("witness pairing failed at {c}"))
                            }
                            Err(e) => return Err(format!("no witness at {c}: {e}")),
                        }
                    }
                }
            }
        }
        ensure!(checked > 30, "only {checked} wound shapes covered");
        Ok(format!(
            "{checked} wound shapes show the signed column pairings in their coproduct"
        ))
    });
}

#[test]
fn structure_constants_recover_plain_products() {
    criterion("bonus: degree-zero constants", Duration::from_secs(60), || {
        // at winding zero the constants are product coefficients, symmetric
        // in their lower pair
        let box_parts = partitions_in_box(2, 2);
        for mu in &box_parts {
            for nu in &box_parts {
                for lam in &box_parts {
                    let a = gw_invariant(lam, 0, mu, nu, 2, 4).map_err(|e| e.to_string())?;
                    let b = gw_invariant(lam, 0, nu, mu, 2, 4).map_err(|e| e.to_string())?;
                    ensure!(a == b, "asymmetry at {lam}, {mu}, {nu}");
                }
            }
        }
        // a wound witness: the coproduct of a symmetric pairing
        let v = gw_invariant(
            &Partition::empty(),
            1,
            &"2".parse().unwrap(),
            &"1,1".parse().unwrap(),
            2,
            4,
        )
        .map_err(|e| e.to_string())?;
        ensure!(v == 1, "frozen wound constant came out {v}");
        Ok("constants symmetric at winding zero, frozen wound value holds".into())
    });
}

#[test]
fn coproduct_pairs_with_full_columns() {
    criterion("bonus: witness columns", Duration::from_secs(60), || {
        let b = shape(2, 2, "1", 1, "1");
        let (w, mult) = b.coproduct_witness().map_err(|e| e.to_string())?;
        ensure!(w == Partition::empty() && mult == 1, "witness moved off ∅");
        let gamma = coproduct(&b.expand_ribbons());
        ensure!(
            gamma.coefficient(&Partition::empty(), &Partition::hook(1, 3)) == -1,
            "column pairing changed"
        );
        ensure!(
            gamma.coefficient(&Partition::empty(), &Partition::hook(2, 2)) == 1,
            "near-column pairing changed"
        );
        Ok("frozen coproduct pairings hold".into())
    });
}

#[test]
fn symmetric_fillings_iff_recognized_on_four_elements() {
    criterion("bonus: symmetry vs recognizer at four", Duration::from_secs(300), || {
        use cylschur::poset::{
            enum_oriented_posets, k_po, recognize_cylindric_components, PosetFilter,
        };
        let mut agree = 0;
        for p in enum_oriented_posets(4, PosetFilter::All).map_err(|e| e.to_string())? {
            let sym = is_symmetric(&k_po(&p));
            let rec = recognize_cylindric_components(&p);
            ensure!(sym == rec, "symmetry and the recognizer disagree on {p:?}");
            agree += 1;
        }
        Ok(format!("symmetry equals the recognizer on all {agree} orientations"))
    });
}
