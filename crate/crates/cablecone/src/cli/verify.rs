//! Named check suites behind `verify`: worked-value checks, structural
//! property sweeps over a fixed corpus, and oracle recomputations. Each
//! check is a plain function returning `Err` with a diagnostic on the
//! first failed comparison, so the suites and the integration tests share
//! one source of truth.

use crate::cli::pipeline;
use crate::knot_complex::{KnotComplex, KnotGen};
use crate::local_equiv::{
    phi_from_standard_x, phi_from_standard_z, standardize_x, standardize_z, verify_local_equiv,
};
use crate::mapping_cone::{
    build_cone, fractional_level, tower_rounding, FilteredComplex, SurgerySpec, Tower,
};
use crate::reduction::{d_oracle, is_reduced, laurent_homology_ranks, reduce, v_zero};
use crate::coefficients::{embed_uv_to_x, UVMonomial};
use num::{BigInt, BigRational, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub type CheckResult = std::result::Result<(), String>;

macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// The sweep corpus: torus staircases crossed with cable and surgery
/// parameters, all at default windows.
fn corpus() -> Vec<(i64, i64, SurgerySpec)> {
    let mut items = Vec::new();
    for q in [1, 3, 5, 7, 11] {
        for n in 1..=4 {
            for surgery in [
                SurgerySpec::PlusOne,
                SurgerySpec::OneOverP { p: 2 },
                SurgerySpec::OneOverP { p: 3 },
            ] {
                items.push((q, n, surgery));
            }
        }
    }
    items
}

fn torus_pipeline(
    q: i64,
    n: i64,
    surgery: SurgerySpec,
    window: Option<(i64, i64)>,
) -> std::result::Result<crate::cli::Pipeline, String> {
    let c = KnotComplex::staircase_t2(q).map_err(|e| e.to_string())?;
    pipeline(&c, n, surgery, window)
        .map_err(|e| format!("pipeline(T2_{q}, n={n}, {surgery}): {e}"))
}

// ---------------------------------------------------------------------------
// Worked-value checks.
// ---------------------------------------------------------------------------

/// The (n,1)-cable of the trefoil meridian in +1 surgery: the sequence is
/// -1, then blocks (n-i+1, 1, -1, -(i+1)) for i = 1..n-1, then 1.
fn expected_trefoil_sequence(n: i64) -> Vec<BigInt> {
    let mut v = vec![big(-1)];
    for i in 1..n {
        v.extend([big(n - i + 1), big(1), big(-1), big(-(i + 1))]);
    }
    v.push(big(1));
    v
}

pub fn trefoil_cable_sequences() -> CheckResult {
    for n in 1..=5 {
        let run = torus_pipeline(3, n, SurgerySpec::PlusOne, None)?;
        let sz = run.z.as_ref().map_err(|e| format!("n={n}: {e}"))?;
        let want = expected_trefoil_sequence(n);
        check!(
            sz.sequence.0 == want,
            "n={n}: sequence {:?}, expected {:?}",
            sz.sequence.0,
            want
        );
    }
    Ok(())
}

pub fn cable_phi_table_grid() -> CheckResult {
    for k in 0..=2i64 {
        for n in 1..=3i64 {
            let q = 4 * k + 3;
            let run = torus_pipeline(q, n, SurgerySpec::PlusOne, None)?;
            let sx = run.x.as_ref().map_err(|e| format!("q={q} n={n}: {e}"))?;
            let phi = phi_from_standard_x(&sx.sequence);
            let key = (big(k + n), big(k));
            check!(
                phi.get(&key) == Some(&big(-1)),
                "q={q} n={n}: phi[{},{}] = {:?}, expected -1",
                k + n,
                k,
                phi.get(&key)
            );
            for ((i, j), v) in &phi {
                check!(
                    !(*j == big(k) && *i > big(k + n)) || v.is_zero(),
                    "q={q} n={n}: phi[{i},{j}] = {v}, expected 0 beyond column top"
                );
            }
        }
    }
    Ok(())
}

/// The seven-generator complex that +1 surgery on T(2,11) with n = 2
/// reduces to, with gradings relative to the length-two generator.
fn seven_generator_target() -> KnotComplex {
    let rel = [
        ("x1", -1, 3),
        ("x2", 1, -1),
        ("y1", 3, -1),
        ("y2", -1, 1),
        ("w1", 4, 6),
        ("w2", 6, 4),
        ("z", 0, 0),
    ];
    let gens = rel.iter().map(|&(n, u, v)| KnotGen::new(n, u, v)).collect();
    let uv = |u: i64, v: i64| UVMonomial::new(u, v);
    let arrows = vec![
        (0, uv(3, 2), 4),
        (1, uv(2, 4), 4),
        (1, uv(3, 3), 5),
        (2, uv(2, 3), 5),
        (3, uv(3, 3), 4),
        (3, uv(4, 2), 5),
        (6, uv(1, 0), 1),
        (6, uv(0, 1), 3),
    ];
    KnotComplex::from_arrows(gens, arrows)
}

pub fn seven_generator_reduction() -> CheckResult {
    let run = torus_pipeline(11, 2, SurgerySpec::PlusOne, None)?;
    let sx = run.x.as_ref().map_err(|e| e.to_string())?;
    let essential = run.uv.len() - sx.dropped.len();
    check!(
        essential == 7,
        "essential component has {essential} generators ({} reduced, {} on dropped cycles), expected 7",
        run.uv.len(),
        sx.dropped.len()
    );

    let seq = |s: &crate::local_equiv::StandardizedX| -> Vec<(i8, i64, i64)> {
        s.sequence
            .0
            .iter()
            .map(|p| (p.sign, p.i.to_i64().unwrap(), p.j.to_i64().unwrap()))
            .collect()
    };
    let got = seq(sx);
    let want = vec![
        (-1, 3, 2),
        (1, 4, 2),
        (1, 1, 0),
        (-1, 1, 0),
        (-1, 4, 2),
        (1, 3, 2),
    ];
    check!(got == want, "sequence {got:?}, expected {want:?}");

    // The seven-generator form itself standardizes to the same sequence,
    // which pins the surviving component up to the basis changes the
    // extended ring allows.
    let target = standardize_x(&seven_generator_target()).map_err(|e| e.to_string())?;
    check!(
        target.dropped.is_empty(),
        "seven-generator form dropped {:?}",
        target.dropped
    );
    let target_seq = seq(&target);
    check!(
        target_seq == want,
        "seven-generator form gives {target_seq:?}, expected {want:?}"
    );

    let phi = phi_from_standard_x(&sx.sequence);
    check!(phi.get(&(big(3), big(2))) == Some(&big(-1)), "phi[3,2] != -1");
    check!(phi.get(&(big(4), big(2))) == Some(&big(-1)), "phi[4,2] != -1");
    check!(phi.get(&(big(1), big(0))) == Some(&big(1)), "phi[1,0] != 1");
    Ok(())
}

/// Closed forms for the filtration drops of the top generator x_s into
/// the adjacent towers, for an odd-genus staircase.
fn delta_pair_forms(s: i64, g: i64, n: i64) -> ((i64, i64), (i64, i64)) {
    if s >= g {
        ((0, n + g - s), (s, g))
    } else if s.rem_euclid(2) == 0 {
        (
            ((-s + g + 1) / 2, n + (-s + g - 1) / 2),
            ((s + g + 1) / 2, (s + g - 1) / 2),
        )
    } else {
        (((-s + g) / 2, n + (-s + g) / 2), ((s + g) / 2, (s + g) / 2))
    }
}

pub fn filtration_drop_ladder() -> CheckResult {
    let (g, n) = (3i64, 3i64);
    let run = torus_pipeline(7, n, SurgerySpec::PlusOne, None)?;
    let red = &run.reduced.complex;
    let (a, b) = red.meta.window;
    check!((a, b) == (-2, 5), "unexpected default window {:?}", (a, b));

    // One surviving B-generator per tower.
    let mut beta: BTreeMap<i64, usize> = BTreeMap::new();
    for (idx, gen) in red.gens.iter().enumerate() {
        if gen.tower == Tower::B {
            check!(
                beta.insert(gen.index, idx).is_none(),
                "tower B_{} has more than one survivor",
                gen.index
            );
        }
    }
    for s in a + 1..=b {
        check!(beta.contains_key(&s), "tower B_{s} has no survivor");
    }

    for s in a..=b {
        let (form_s, form_sp) = delta_pair_forms(s, g, n);
        // Per generator: the drop pairs into beta_s and beta_{s+1}.
        let mut ladder: Vec<(Option<(i64, i64)>, Option<(i64, i64)>)> = Vec::new();
        for (idx, gen) in red.gens.iter().enumerate() {
            if gen.tower != Tower::A || gen.index != s {
                continue;
            }
            let mut into_s = None;
            let mut into_sp = None;
            let mut internal = Vec::new();
            for (pow, t) in &red.diff[idx] {
                let (di, dj) = red.drops(idx, pow, *t);
                let pair = (di.to_i64().unwrap(), dj.to_integer().to_i64().unwrap());
                match red.gens[*t].tower {
                    Tower::B if red.gens[*t].index == s => into_s = Some(pair),
                    Tower::B if red.gens[*t].index == s + 1 => into_sp = Some(pair),
                    Tower::B => return Err(format!("A_{s} survivor maps to a distant tower")),
                    Tower::A => internal.push(pair),
                }
            }
            if into_s.is_none() && into_sp.is_none() {
                for pair in internal {
                    check!(
                        pair == (1, 0) || pair == (0, 1),
                        "internal drop {pair:?} in A_{s} is not a unit step"
                    );
                }
            } else {
                ladder.push((into_s, into_sp));
            }
        }
        check!(!ladder.is_empty(), "tower A_{s} has no generators mapping out");
        for (into_s, into_sp) in &ladder {
            check!(
                into_s.is_some() == (s > a),
                "A_{s}: arrow into beta_{s} {}",
                if s > a { "missing" } else { "present at the window edge" }
            );
            check!(
                into_sp.is_some() == (s < b),
                "A_{s}: arrow into beta_{} {}",
                s + 1,
                if s < b { "missing" } else { "present at the window edge" }
            );
        }
        // Sort by the drop into the first available target; the top
        // generator sits at the smallest I-drop and each step down adds
        // (1,-1) to both pairs in lockstep.
        ladder.sort_by_key(|(into_s, into_sp)| into_s.or(*into_sp).unwrap().0);
        for (t, (into_s, into_sp)) in ladder.iter().enumerate() {
            let t = t as i64;
            if let Some(pair) = into_s {
                let want = (form_s.0 + t, form_s.1 - t);
                check!(
                    *pair == want,
                    "A_{s} rung {t}: drop into beta_{s} is {pair:?}, expected {want:?}"
                );
            }
            if let Some(pair) = into_sp {
                let want = (form_sp.0 + t, form_sp.1 - t);
                check!(
                    *pair == want,
                    "A_{s} rung {t}: drop into beta_{} is {pair:?}, expected {want:?}",
                    s + 1
                );
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Structural properties.
// ---------------------------------------------------------------------------

/// Per-tower second-filtration levels, measured on the associated graded
/// page where the first filtration vanishes (translating a generator there
/// drops J by I): every A-generator sits within n of its tower top,
/// B-towers sit exactly at level n, and for a positive-genus source every
/// level 0..n is realized somewhere.
fn filtration_level_check(cone: &FilteredComplex) -> CheckResult {
    let n = cone.meta.n;
    let source = &cone.meta.source;
    let mut tower_shift: BTreeMap<(Tower, i64), BigRational> = BTreeMap::new();
    let mut levels = BTreeSet::new();
    for gen in &cone.gens {
        let r = match (gen.tower, cone.meta.surgery) {
            (Tower::A, SurgerySpec::PlusOne) => gen.index,
            (Tower::A, SurgerySpec::OneOverP { p }) => tower_rounding(p, gen.index),
            (Tower::B, _) => {
                // Every B-generator sits at level n below its tower top.
                let key = (Tower::B, gen.index);
                if let Some(prev) = tower_shift.get(&key) {
                    check!(
                        *prev == gen.filt_j,
                        "{}: B-tower level varies within the tower",
                        gen.name
                    );
                } else {
                    tower_shift.insert(key, gen.filt_j.clone());
                }
                levels.insert(n);
                continue;
            }
        };
        let alex = source.alexander(gen.base).to_i64().unwrap();
        let level = (r - alex).clamp(0, n);
        levels.insert(level);
        // (J(x) - I(x)) + level must be one constant per tower: the top.
        let top = &gen.filt_j - BigRational::from_integer(gen.filt_i.clone())
            + BigRational::from_integer(big(level));
        let key = (Tower::A, gen.index);
        if let Some(prev) = tower_shift.get(&key) {
            check!(
                *prev == top,
                "{}: inconsistent tower top {top} vs {prev}",
                gen.name
            );
        } else {
            tower_shift.insert(key, top);
        }
    }
    let genus_positive = cone.meta.genus > BigInt::zero();
    if genus_positive {
        let want: BTreeSet<i64> = (0..=n).collect();
        check!(
            levels == want,
            "realized levels {levels:?}, expected all of 0..={n}"
        );
    } else {
        check!(
            levels.iter().all(|l| (0..=n).contains(l)),
            "realized levels {levels:?} leave 0..={n}"
        );
    }
    Ok(())
}

pub fn cone_property_suite() -> CheckResult {
    for (q, n, surgery) in corpus() {
        let tag = format!("T2_{q} n={n} {surgery}");
        let c = KnotComplex::staircase_t2(q).map_err(|e| e.to_string())?;
        let cone = build_cone(&c, n, surgery, None).map_err(|e| format!("{tag}: {e}"))?;
        let errs = cone.validate();
        check!(errs.is_empty(), "{tag}: cone invalid: {}", errs.join("; "));
        filtration_level_check(&cone).map_err(|e| format!("{tag}: {e}"))?;

        let red = reduce(&cone);
        let errs = red.complex.validate();
        check!(errs.is_empty(), "{tag}: reduced invalid: {}", errs.join("; "));
        check!(is_reduced(&red.complex), "{tag}: reduction left a unit arrow");
        let again = reduce(&red.complex);
        check!(
            again.events.is_empty() && again.complex.gens == red.complex.gens,
            "{tag}: reduce is not idempotent"
        );
        check!(
            laurent_homology_ranks(&cone) == laurent_homology_ranks(&red.complex),
            "{tag}: reduction changed inverted homology"
        );
    }
    Ok(())
}

pub fn window_truncation_independence() -> CheckResult {
    for (q, n, surgery) in corpus() {
        let tag = format!("T2_{q} n={n} {surgery}");
        let base = torus_pipeline(q, n, surgery, None)?;
        let (a, b) = base.reduced.complex.meta.window;
        let wide = torus_pipeline(q, n, surgery, Some((a - 3, b + 3)))?;
        check!(base.d == wide.d, "{tag}: d changed under a wider window");
        check!(
            base.z.is_ok() == wide.z.is_ok(),
            "{tag}: window width changed standardization status"
        );
        if let (Ok(bz), Ok(wz)) = (&base.z, &wide.z) {
            check!(
                bz.sequence == wz.sequence,
                "{tag}: standard sequence changed under a wider window"
            );
        }
        check!(
            base.x.is_ok() == wide.x.is_ok(),
            "{tag}: window width changed ring standardization status"
        );
        if let (Ok(bx), Ok(wx)) = (&base.x, &wide.x) {
            check!(
                bx.sequence == wx.sequence,
                "{tag}: ring sequence changed under a wider window"
            );
        }
    }
    Ok(())
}

pub fn symmetry_and_additivity() -> CheckResult {
    // Every completed standard sequence is fixed by reverse-negation. The
    // extended ring completes on the whole corpus; the mod-UV form only
    // where no surviving generator is stranded by a mixed arrow, which
    // covers the unknot and trefoil +1-surgery items.
    let mut completed_z = 0;
    for (q, n, surgery) in corpus() {
        let tag = format!("T2_{q} n={n} {surgery}");
        let run = torus_pipeline(q, n, surgery, None)?;
        if let Ok(sz) = &run.z {
            completed_z += 1;
            check!(
                sz.sequence.reverse_negate() == sz.sequence,
                "{tag}: sequence is not reverse-negation symmetric: {:?}",
                sz.sequence.0
            );
        }
        let sx = run.x.as_ref().map_err(|e| format!("{tag}: {e}"))?;
        check!(
            sx.sequence.reverse_negate() == sx.sequence,
            "{tag}: ring sequence is not reverse-negation symmetric"
        );
    }
    check!(completed_z >= 16, "only {completed_z} corpus items standardized mod UV");

    // phi is additive under tensor product on pipeline outputs.
    let pick = |q: i64, n: i64| -> std::result::Result<KnotComplex, String> {
        Ok(torus_pipeline(q, n, SurgerySpec::PlusOne, None)?.uv)
    };
    let t1 = pick(3, 1)?;
    let t2 = pick(3, 2)?;
    let t3 = pick(3, 3)?;
    let s1 = pick(7, 1)?;
    for (left, right, both, tag) in [
        (&t1, &t1, true, "t1*t1"),
        (&t1, &t2, true, "t1*t2"),
        (&t2, &t3, true, "t2*t3"),
        (&s1, &t1, false, "s1*t1"),
        (&s1, &s1, false, "s1*s1"),
    ] {
        let product = left.tensor(right);
        if both {
            let lz = standardize_z(left).map_err(|e| format!("{tag}: {e}"))?;
            let rz = standardize_z(right).map_err(|e| format!("{tag}: {e}"))?;
            let pz = standardize_z(&product).map_err(|e| format!("{tag}: {e}"))?;
            let mut want = phi_from_standard_z(&lz.sequence);
            for (k, v) in phi_from_standard_z(&rz.sequence) {
                let slot = want.entry(k).or_insert_with(BigInt::zero);
                *slot += v;
            }
            want.retain(|_, v| !v.is_zero());
            let got = phi_from_standard_z(&pz.sequence);
            check!(got == want, "{tag}: phi {got:?}, expected the sum {want:?}");
        }

        let lx = standardize_x(left).map_err(|e| format!("{tag}: {e}"))?;
        let rx = standardize_x(right).map_err(|e| format!("{tag}: {e}"))?;
        let px = standardize_x(&product).map_err(|e| format!("{tag}: {e}"))?;
        let mut want = phi_from_standard_x(&lx.sequence);
        for (k, v) in phi_from_standard_x(&rx.sequence) {
            let slot = want.entry(k).or_insert_with(BigInt::zero);
            *slot += v;
        }
        want.retain(|_, v| !v.is_zero());
        let got = phi_from_standard_x(&px.sequence);
        check!(got == want, "{tag}: ring phi {got:?}, expected the sum {want:?}");
    }
    Ok(())
}

/// Cloud points and arrows of one tower of the cone, restricted to the
/// band |i+j| <= g and normalized by the tower's grading shift.
fn tower_band(
    cone: &FilteredComplex,
    m: i64,
    g: i64,
) -> std::result::Result<
    (BTreeMap<(i64, i64), BigRational>, BTreeSet<((i64, i64), (i64, i64))>),
    String,
> {
    let source = &cone.meta.source;
    let members: Vec<usize> = (0..cone.len())
        .filter(|&i| cone.gens[i].tower == Tower::A && cone.gens[i].index == m)
        .collect();
    check!(!members.is_empty(), "tower A_{m} is empty");
    let inside: BTreeSet<usize> = members.iter().copied().collect();
    for s in 0..cone.len() {
        if inside.contains(&s) {
            continue;
        }
        for (_, t) in &cone.diff[s] {
            check!(
                !inside.contains(t),
                "{} maps into tower A_{m}; the tower is not a quotient complex",
                cone.gens[s].name
            );
        }
    }

    let shift = BigRational::from_integer(big(m * m - m));
    let mut points = BTreeMap::new();
    let mut arrows = BTreeSet::new();
    let place = |idx: usize, c: i64| -> (i64, i64) {
        let gen = &cone.gens[idx];
        let fi = gen.filt_i.to_i64().unwrap();
        let alex = source.alexander(gen.base).to_i64().unwrap();
        (-fi - c, alex - fi - c)
    };
    for &idx in &members {
        let gen = &cone.gens[idx];
        let fi = gen.filt_i.to_i64().unwrap();
        let alex = source.alexander(gen.base).to_i64().unwrap();
        // i + j = alex - 2*fi - 2c runs over the band.
        let base = alex - 2 * fi;
        let lo = (base - g).div_euclid(2) + ((base - g).rem_euclid(2) != 0) as i64;
        let hi = (base + g).div_euclid(2);
        for c in lo..=hi {
            let gr = &gen.gr
                - BigRational::from_integer(big(2 * (fi + c)))
                - &shift;
            points.insert(place(idx, c), gr);
            // The quotient differential keeps internal arrows only; the
            // arrows into the B-towers die in the quotient.
            for (pow, t) in &cone.diff[idx] {
                if !inside.contains(t) {
                    continue;
                }
                let cp = c + pow.to_i64().unwrap();
                let (ti, tj) = place(*t, cp);
                check!(
                    (-g..=g).contains(&(ti + tj)),
                    "band is not differential-closed at {}",
                    cone.gens[idx].name
                );
                arrows.insert((place(idx, c), (ti, tj)));
            }
        }
    }
    Ok((points, arrows))
}

/// The same band carved out of a staircase complex directly.
fn staircase_band(
    c: &KnotComplex,
    g: i64,
) -> (BTreeMap<(i64, i64), BigRational>, BTreeSet<((i64, i64), (i64, i64))>) {
    let mut points = BTreeMap::new();
    let mut arrows = BTreeSet::new();
    for (x, gen) in c.gens.iter().enumerate() {
        let alex = gen.alexander().to_i64().unwrap();
        let lo = (-g - alex).div_euclid(2) + ((-g - alex).rem_euclid(2) != 0) as i64;
        let hi = (g - alex).div_euclid(2);
        for i in lo..=hi {
            points.insert(
                (i, alex + i),
                BigRational::from_integer(&gen.gr_u + big(2 * i)),
            );
            for (mono, t) in &c.diff[x] {
                let ti = i - mono.u.to_i64().unwrap();
                let tj = c.alexander(*t).to_i64().unwrap() + ti;
                arrows.insert(((i, alex + i), (ti, tj)));
            }
        }
    }
    (points, arrows)
}

pub fn middle_tower_stabilization() -> CheckResult {
    let c = KnotComplex::staircase_t2(3).map_err(|e| e.to_string())?;
    let g = 1i64;
    for n in [2i64, 3] {
        let m = (n + 1) / 2;
        let cone =
            build_cone(&c, n, SurgerySpec::PlusOne, None).map_err(|e| e.to_string())?;
        let (points, arrows) = tower_band(&cone, m, g).map_err(|e| format!("n={n}: {e}"))?;
        let (want_points, want_arrows) = staircase_band(&c, g);
        check!(
            points == want_points,
            "n={n}: band points differ from the staircase band"
        );
        check!(
            arrows == want_arrows,
            "n={n}: band arrows differ from the staircase band"
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Oracle recomputations.
// ---------------------------------------------------------------------------

pub fn d_invariant_pins() -> CheckResult {
    let zero = BigRational::zero();
    let minus_two = BigRational::from_integer(big(-2));

    let unknot = torus_pipeline(1, 1, SurgerySpec::PlusOne, None)?;
    check!(unknot.d == zero, "d(unknot, +1) = {}, expected 0", unknot.d);

    let trefoil = KnotComplex::staircase_t2(3).map_err(|e| e.to_string())?;
    let oracle = d_oracle(&trefoil).map_err(|e| e.to_string())?;
    check!(oracle == minus_two, "oracle d = {oracle}, expected -2");
    for surgery in [SurgerySpec::PlusOne, SurgerySpec::OneOverP { p: 2 }] {
        let run = torus_pipeline(3, 1, surgery, None)?;
        check!(
            run.d == oracle,
            "d(T2_3, {surgery}) = {} disagrees with the oracle {oracle}",
            run.d
        );
    }
    Ok(())
}

pub fn local_equivalence_spot_checks() -> CheckResult {
    let mut verified = 0;
    for (q, n, surgery) in corpus() {
        let run = torus_pipeline(q, n, surgery, None)?;
        if run.uv.len() > 10 {
            continue;
        }
        // Items whose standardization only completes over the extended
        // ring have no mod-UV form to compare against.
        let Ok(sz) = run.z.as_ref() else { continue };
        let tag = format!("T2_{q} n={n} {surgery}");
        let ok = verify_local_equiv(&run.uv, &sz.path_complex, 6)
            .map_err(|e| format!("{tag}: {e}"))?;
        check!(ok, "{tag}: reduced and standardized forms are not locally equivalent");
        verified += 1;
    }
    check!(verified >= 8, "only {verified} small items were verified");
    Ok(())
}

pub fn v_zero_torus_family() -> CheckResult {
    for (t, q) in (0..6).map(|t| (t, 2 * t + 1)) {
        let c = KnotComplex::staircase_t2(q).map_err(|e| e.to_string())?;
        let v = v_zero(&c).map_err(|e| e.to_string())?;
        let want = big((t + 1) / 2);
        check!(v == want, "V0(T2_{q}) = {v}, expected {want}");
    }
    Ok(())
}

pub fn fractional_tower_parameters() -> CheckResult {
    check!(tower_rounding(2, 1) == 1, "r(p=2, l=1) != 1");
    check!(
        fractional_level(2, 1) == BigRational::new(big(3), big(4)),
        "s(p=2, l=1) != 3/4"
    );
    check!(tower_rounding(3, -2) == -1, "r(p=3, l=-2) != -1");
    check!(
        fractional_level(3, -2) == BigRational::new(big(-2), big(3)),
        "s(p=3, l=-2) != -2/3"
    );
    for l in -4..=4 {
        check!(
            tower_rounding(1, l) == l && fractional_level(1, l) == BigRational::from_integer(big(l)),
            "p=1 towers do not degenerate to the integer case at l={l}"
        );
    }
    Ok(())
}

pub fn ring_embedding_multiplicative() -> CheckResult {
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            for c in 0..=4u32 {
                for d in 0..=4u32 {
                    let m1 = UVMonomial::new(a, b);
                    let m2 = UVMonomial::new(c, d);
                    let lhs = embed_uv_to_x(&m1).mul(&embed_uv_to_x(&m2));
                    let rhs = embed_uv_to_x(&m1.mul(&m2));
                    check!(
                        lhs == rhs,
                        "embedding fails to be multiplicative at U^{a}V^{b} * U^{c}V^{d}"
                    );
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Suites.
// ---------------------------------------------------------------------------

pub struct Check {
    pub name: &'static str,
    pub run: fn() -> CheckResult,
}

pub fn paper_checks() -> Vec<Check> {
    vec![
        Check { name: "trefoil_cable_sequences", run: trefoil_cable_sequences },
        Check { name: "cable_phi_table_grid", run: cable_phi_table_grid },
        Check { name: "seven_generator_reduction", run: seven_generator_reduction },
        Check { name: "filtration_drop_ladder", run: filtration_drop_ladder },
    ]
}

pub fn property_checks() -> Vec<Check> {
    vec![
        Check { name: "cone_property_suite", run: cone_property_suite },
        Check { name: "window_truncation_independence", run: window_truncation_independence },
        Check { name: "symmetry_and_additivity", run: symmetry_and_additivity },
        Check { name: "middle_tower_stabilization", run: middle_tower_stabilization },
    ]
}

pub fn oracle_checks() -> Vec<Check> {
    vec![
        Check { name: "d_invariant_pins", run: d_invariant_pins },
        Check { name: "local_equivalence_spot_checks", run: local_equivalence_spot_checks },
        Check { name: "v_zero_torus_family", run: v_zero_torus_family },
        Check { name: "fractional_tower_parameters", run: fractional_tower_parameters },
        Check { name: "ring_embedding_multiplicative", run: ring_embedding_multiplicative },
    ]
}

/// Run a named suite, printing one line per check. Returns whether all
/// checks passed; unknown suite names are input errors.
pub fn run_suite(name: &str) -> crate::Result<bool> {
    let checks = match name {
        "paper" => paper_checks(),
        "properties" => property_checks(),
        "oracles" => oracle_checks(),
        "all" => {
            let mut all = paper_checks();
            all.extend(property_checks());
            all.extend(oracle_checks());
            all
        }
        other => {
            return Err(crate::Error::Input(format!(
                "unknown suite `{other}`; expected paper, properties, oracles, or all"
            )))
        }
    };
    let mut ok = true;
    for check in checks {
        match (check.run)() {
            Ok(()) => println!("PASS {}", check.name),
            Err(msg) => {
                ok = false;
                println!("FAIL {}: {msg}", check.name);
            }
        }
    }
    Ok(ok)
}
