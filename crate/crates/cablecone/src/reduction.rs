//! Cancellation of filtration-preserving differentials, localized homology,
//! and d-invariants.
//!
//! Two independent routes to the d-invariant live here. The oracle
//! [`v_zero`] never sees a mapping cone: it collapses the
//! `max(i,j) <= 0` subcomplex of the source knot complex over `F2[U]` and
//! reads off `V_0`, giving `d = -2 V_0` for +1- and 1/p-surgery alike. The
//! pipeline route reduces the cone with [`reduce`] and extracts the top of
//! the unique free tower of its `I <= 0` subcomplex with [`d_invariant`].
//! The two must agree; the test suites hold them against each other.

use crate::knot_complex::KnotComplex;
use crate::mapping_cone::FilteredComplex;
use crate::{Error, Result};
use num::{BigInt, BigRational, Zero};
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// Shared F2[U] engine.
// ---------------------------------------------------------------------------

/// Toggle the mod-2 entry `target -> exp` in a row. Gradings force a unique
/// exponent per (source, target) pair, so a collision is either an exact
/// cancellation or a bug upstream.
fn toggle_entry(row: &mut BTreeMap<usize, BigInt>, target: usize, exp: BigInt) {
    match row.remove(&target) {
        None => {
            row.insert(target, exp);
        }
        Some(existing) => {
            assert_eq!(existing, exp, "inhomogeneous entry collision");
        }
    }
}

/// Cancel arrows of a graded complex over `F2[U]` (all exponents >= 0),
/// always picking a minimum-exponent arrow. The minimum never decreases, so
/// every zig-zag correction `c - e + d` stays nonnegative and each stage is
/// an honest `F2[U]`-complex. When no arrows remain, each survivor is a
/// primitive nontorsion class: its grading is the top of a free tower.
fn collapse_free_towers(
    gradings: &[BigRational],
    mut rows: Vec<BTreeMap<usize, BigInt>>,
) -> Vec<(usize, BigRational)> {
    let n = gradings.len();
    let mut alive = vec![true; n];
    loop {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for s in 0..n {
            if !alive[s] {
                continue;
            }
            for (t, e) in &rows[s] {
                if best.as_ref().map_or(true, |(_, _, be)| e < be) {
                    best = Some((s, *t, e.clone()));
                }
            }
        }
        let Some((s, t, e)) = best else { break };
        let srow = std::mem::take(&mut rows[s]);
        rows[t].clear();
        alive[s] = false;
        alive[t] = false;
        for z in 0..n {
            if !alive[z] {
                continue;
            }
            rows[z].remove(&s);
            if let Some(c) = rows[z].remove(&t) {
                let shift = &c - &e;
                debug_assert!(shift >= BigInt::zero());
                for (t2, d) in &srow {
                    if *t2 == t || !alive[*t2] {
                        continue;
                    }
                    toggle_entry(&mut rows[z], *t2, &shift + d);
                }
            }
        }
    }
    (0..n)
        .filter(|&i| alive[i])
        .map(|i| (i, gradings[i].clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// Oracle: V_0 from the source complex alone.
// ---------------------------------------------------------------------------

/// `V_0` of a knot complex: the `max(i,j) <= 0` subcomplex is free over
/// `F2[U]` on `U^{max(0, A(x))} x`; its homology has one free tower, whose
/// top grading is `-2 V_0`.
pub fn v_zero(c: &KnotComplex) -> Result<BigInt> {
    let errs = c.validate();
    if !errs.is_empty() {
        return Err(Error::Input(format!("complex fails validation: {}", errs.join("; "))));
    }
    let corner: Vec<BigInt> =
        (0..c.len()).map(|x| c.alexander(x).max(BigInt::zero())).collect();
    let gradings: Vec<BigRational> = (0..c.len())
        .map(|x| BigRational::from_integer(&c.gens[x].gr_u - &corner[x] - &corner[x]))
        .collect();
    let mut rows = vec![BTreeMap::new(); c.len()];
    for x in 0..c.len() {
        for (m, y) in &c.diff[x] {
            let exp = &corner[x] + &m.u - &corner[*y];
            debug_assert!(exp >= BigInt::zero(), "left the subcomplex");
            toggle_entry(&mut rows[x], *y, exp);
        }
    }
    let survivors = collapse_free_towers(&gradings, rows);
    if survivors.len() != 1 {
        return Err(Error::HomologyRank(format!(
            "expected one free tower in the corner subcomplex, found {}",
            survivors.len()
        )));
    }
    let top = survivors[0].1.clone();
    if !top.is_integer() {
        return Err(Error::HomologyRank(format!("non-integer tower top {top}")));
    }
    let v = -top.to_integer() / BigInt::from(2);
    if v < BigInt::zero() {
        return Err(Error::HomologyRank(format!("negative V_0 = {v}")));
    }
    Ok(v)
}

/// Independent d-invariant prediction: `d = -2 V_0` for +1-surgery and every
/// 1/p-surgery with p >= 1.
pub fn d_oracle(c: &KnotComplex) -> Result<BigRational> {
    let v = v_zero(c)?;
    Ok(BigRational::from_integer(-v * BigInt::from(2)))
}

// ---------------------------------------------------------------------------
// Cone reduction.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancelEvent {
    pub source: String,
    pub target: String,
    pub power: BigInt,
}

#[derive(Debug, Clone)]
pub struct Reduced {
    pub complex: FilteredComplex,
    pub events: Vec<CancelEvent>,
}

/// Cancel every arrow that preserves both filtrations, first-eligible in
/// (source order, target order), restarting the scan after each
/// cancellation. The result is reduced: every remaining arrow strictly
/// drops at least one filtration. Deterministic, and logged move by move.
pub fn reduce(cone: &FilteredComplex) -> Reduced {
    let n = cone.len();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); n];
    for (s, row) in cone.diff.iter().enumerate() {
        for (pow, t) in row {
            toggle_entry(&mut rows[s], *t, pow.clone());
        }
    }
    let mut alive = vec![true; n];
    let mut events = Vec::new();
    let eligible = |rows: &Vec<BTreeMap<usize, BigInt>>, alive: &Vec<bool>| {
        for s in 0..n {
            if !alive[s] {
                continue;
            }
            for (t, pow) in &rows[s] {
                let (di, dj) = cone.drops(s, pow, *t);
                if di.is_zero() && dj.is_zero() {
                    return Some((s, *t, pow.clone()));
                }
            }
        }
        None
    };
    while let Some((s, t, e)) = eligible(&rows, &alive) {
        events.push(CancelEvent {
            source: cone.gens[s].name.clone(),
            target: cone.gens[t].name.clone(),
            power: e.clone(),
        });
        let srow = std::mem::take(&mut rows[s]);
        rows[t].clear();
        alive[s] = false;
        alive[t] = false;
        for z in 0..n {
            if !alive[z] {
                continue;
            }
            rows[z].remove(&s);
            if let Some(c) = rows[z].remove(&t) {
                let shift = &c - &e;
                for (t2, d) in &srow {
                    if *t2 == t || !alive[*t2] {
                        continue;
                    }
                    toggle_entry(&mut rows[z], *t2, &shift + d);
                }
            }
        }
    }

    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let remap: BTreeMap<usize, usize> =
        keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let gens = keep.iter().map(|&i| cone.gens[i].clone()).collect();
    let diff = keep
        .iter()
        .map(|&i| {
            rows[i]
                .iter()
                .map(|(t, pow)| (pow.clone(), remap[t]))
                .collect::<Vec<_>>()
        })
        .collect();
    let complex = FilteredComplex { gens, diff, meta: cone.meta.clone() };
    debug_assert!(complex.validate().is_empty());
    Reduced { complex, events }
}

/// Is every arrow strictly dropping a filtration?
pub fn is_reduced(c: &FilteredComplex) -> bool {
    for s in 0..c.len() {
        for (pow, t) in &c.diff[s] {
            let (di, dj) = c.drops(s, pow, *t);
            if di.is_zero() && dj.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Rank of the homology over `F2[U, U^-1]`, split by grading coset mod 2
/// (the degree of U). Cancellation of any arrow is legal there, so the
/// survivors of an unconditional sweep count the rank.
pub fn laurent_homology_ranks(c: &FilteredComplex) -> BTreeMap<BigRational, usize> {
    let n = c.len();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); n];
    for (s, row) in c.diff.iter().enumerate() {
        for (pow, t) in row {
            toggle_entry(&mut rows[s], *t, pow.clone());
        }
    }
    let mut alive = vec![true; n];
    loop {
        let mut pick = None;
        'scan: for s in 0..n {
            if !alive[s] {
                continue;
            }
            if let Some((t, e)) = rows[s].iter().next() {
                pick = Some((s, *t, e.clone()));
                break 'scan;
            }
        }
        let Some((s, t, e)) = pick else { break };
        let srow = std::mem::take(&mut rows[s]);
        rows[t].clear();
        alive[s] = false;
        alive[t] = false;
        for z in 0..n {
            if !alive[z] {
                continue;
            }
            rows[z].remove(&s);
            if let Some(c) = rows[z].remove(&t) {
                let shift = &c - &e;
                for (t2, d) in &srow {
                    if *t2 == t || !alive[*t2] {
                        continue;
                    }
                    toggle_entry(&mut rows[z], *t2, &shift + d);
                }
            }
        }
    }
    let two = BigRational::from_integer(2.into());
    let mut ranks = BTreeMap::new();
    for i in 0..n {
        if alive[i] {
            let coset = &c.gens[i].gr - (&c.gens[i].gr / &two).floor() * &two;
            *ranks.entry(coset).or_insert(0) += 1;
        }
    }
    ranks
}

/// The d-invariant of the surgered manifold: top grading of the free tower
/// of the `I <= 0` subcomplex, which is free over `F2[U]` on
/// `U^{filt_i(g)} g`. Exact; fails if the localized homology is not a
/// single tower. Correct on raw and reduced cones alike.
pub fn d_invariant(c: &FilteredComplex) -> Result<BigRational> {
    let n = c.len();
    let gradings: Vec<BigRational> = (0..n)
        .map(|i| &c.gens[i].gr - BigRational::from_integer(&c.gens[i].filt_i * BigInt::from(2)))
        .collect();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); n];
    for s in 0..n {
        for (pow, t) in &c.diff[s] {
            let (di, _) = c.drops(s, pow, *t);
            debug_assert!(di >= BigInt::zero());
            toggle_entry(&mut rows[s], *t, di);
        }
    }
    let survivors = collapse_free_towers(&gradings, rows);
    if survivors.len() != 1 {
        return Err(Error::HomologyRank(format!(
            "expected one free tower in the cone, found {}",
            survivors.len()
        )));
    }
    Ok(survivors[0].1.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_complex::KnotComplex;
    use crate::mapping_cone::{build_cone_one_over_p, build_cone_plus_one};

    fn t2(q: i64) -> KnotComplex {
        KnotComplex::staircase_t2(q).unwrap()
    }

    #[test]
    fn v_zero_of_the_torus_family() {
        // T(2, 2t+1) has V_0 = ceil(t/2); the two-bridge staircase makes
        // this an independent pin, not a value read off the pipeline.
        for (q, want) in [(1, 0), (3, 1), (5, 1), (7, 2), (9, 2), (11, 3)] {
            assert_eq!(v_zero(&t2(q)).unwrap(), BigInt::from(want), "q = {q}");
            let t = (q - 1) / 2;
            assert_eq!(BigInt::from((t + 1) / 2), BigInt::from(want));
        }
    }

    #[test]
    fn d_oracle_pins() {
        assert_eq!(d_oracle(&t2(1)).unwrap(), BigRational::from_integer(0.into()));
        assert_eq!(d_oracle(&t2(3)).unwrap(), BigRational::from_integer((-2).into()));
    }

    #[test]
    fn v_zero_needs_symmetric_rank_one() {
        // Two disjoint points: corner homology has two towers.
        let gens = vec![
            crate::knot_complex::KnotGen::new("x", 0, 0),
            crate::knot_complex::KnotGen::new("y", 0, 0),
        ];
        let c = KnotComplex::from_arrows(gens, vec![]);
        assert!(matches!(v_zero(&c), Err(Error::HomologyRank(_))));
    }

    #[test]
    fn trefoil_cone_reduces_to_three_generators() {
        let cone = build_cone_plus_one(&t2(3), 1, None).unwrap();
        assert_eq!(cone.len(), 9);
        let red = reduce(&cone);
        assert_eq!(red.complex.len(), 3);
        assert_eq!(red.events.len(), 3);
        assert!(is_reduced(&red.complex));
    }

    #[test]
    fn reduce_is_idempotent_and_deterministic() {
        let cone = build_cone_plus_one(&t2(5), 2, None).unwrap();
        let once = reduce(&cone);
        let again = reduce(&once.complex);
        assert_eq!(again.complex.gens, once.complex.gens);
        assert_eq!(again.complex.diff, once.complex.diff);
        assert!(again.events.is_empty());
        let rerun = reduce(&cone);
        assert_eq!(rerun.complex.gens, once.complex.gens);
        assert_eq!(rerun.events, once.events);
    }

    /// All cancellation orders on the trefoil's 9-generator cone must end at
    /// the same place: 3 generators, same filtration/grading multiset.
    #[test]
    fn every_cancellation_order_agrees() {
        let cone = build_cone_plus_one(&t2(3), 1, None).unwrap();
        let n = cone.len();
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); n];
        for (s, row) in cone.diff.iter().enumerate() {
            for (pow, t) in row {
                toggle_entry(&mut rows[s], *t, pow.clone());
            }
        }
        let mut outcomes = std::collections::BTreeSet::new();
        explore(&cone, rows, vec![true; n], &mut outcomes);
        assert_eq!(outcomes.len(), 1, "orders disagree: {outcomes:?}");
        let shape = outcomes.into_iter().next().unwrap();
        assert_eq!(shape.len(), 3);

        fn explore(
            cone: &FilteredComplex,
            rows: Vec<BTreeMap<usize, BigInt>>,
            alive: Vec<bool>,
            outcomes: &mut std::collections::BTreeSet<Vec<(BigInt, String, String)>>,
        ) {
            let n = alive.len();
            let mut moves = Vec::new();
            for s in 0..n {
                if !alive[s] {
                    continue;
                }
                for (t, pow) in &rows[s] {
                    let (di, dj) = cone.drops(s, pow, *t);
                    if di.is_zero() && dj.is_zero() {
                        moves.push((s, *t, pow.clone()));
                    }
                }
            }
            if moves.is_empty() {
                let mut shape: Vec<(BigInt, String, String)> = (0..n)
                    .filter(|&i| alive[i])
                    .map(|i| {
                        (
                            cone.gens[i].filt_i.clone(),
                            cone.gens[i].filt_j.to_string(),
                            cone.gens[i].gr.to_string(),
                        )
                    })
                    .collect();
                shape.sort();
                outcomes.insert(shape);
                return;
            }
            for (s, t, e) in moves {
                let mut rows2 = rows.clone();
                let mut alive2 = alive.clone();
                let srow = std::mem::take(&mut rows2[s]);
                rows2[t].clear();
                alive2[s] = false;
                alive2[t] = false;
                for z in 0..n {
                    if !alive2[z] {
                        continue;
                    }
                    rows2[z].remove(&s);
                    if let Some(c) = rows2[z].remove(&t) {
                        let shift = &c - &e;
                        for (t2, d) in &srow {
                            if *t2 == t || !alive2[*t2] {
                                continue;
                            }
                            toggle_entry(&mut rows2[z], *t2, &shift + d);
                        }
                    }
                }
                explore(cone, rows2, alive2, outcomes);
            }
        }
    }

    #[test]
    fn reduction_preserves_localized_homology() {
        for (n, p) in [(1, 1), (2, 1), (1, 2), (2, 3)] {
            let cone = build_cone_one_over_p(&t2(3), n, p, None).unwrap();
            let red = reduce(&cone);
            assert_eq!(
                laurent_homology_ranks(&cone),
                laurent_homology_ranks(&red.complex),
                "n = {n}, p = {p}"
            );
        }
    }

    #[test]
    fn trefoil_plus_one_d_matches_oracle() {
        let cone = build_cone_plus_one(&t2(3), 1, None).unwrap();
        let red = reduce(&cone);
        let d = d_invariant(&red.complex).unwrap();
        assert_eq!(d, BigRational::from_integer((-2).into()));
        assert_eq!(d, d_oracle(&t2(3)).unwrap());
        // Same answer straight off the unreduced cone.
        assert_eq!(d_invariant(&cone).unwrap(), d);
    }

    #[test]
    fn unknot_surgeries_have_d_zero() {
        for p in 1..=3 {
            let cone = build_cone_one_over_p(&t2(1), 1, p, None).unwrap();
            let d = d_invariant(&reduce(&cone).complex).unwrap();
            assert_eq!(d, BigRational::from_integer(0.into()), "p = {p}");
        }
    }

    #[test]
    fn laurent_rank_is_one_for_surgeries_on_knots() {
        for (q, n, p) in [(1, 1, 1), (3, 1, 1), (3, 2, 1), (5, 1, 2), (3, 1, 3)] {
            let cone = build_cone_one_over_p(&t2(q), n, p, None).unwrap();
            let total: usize = laurent_homology_ranks(&cone).values().sum();
            assert_eq!(total, 1, "q = {q}, n = {n}, p = {p}");
        }
    }
}
