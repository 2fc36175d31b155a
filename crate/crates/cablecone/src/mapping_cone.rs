//! The doubly-filtered mapping cone computing the complex of the (n,1)-cable
//! of the meridian in +1- or 1/p-surgery on a knot in the three-sphere.
//!
//! The cone is `⊕ A_s --(v+h)--> ⊕ B_s` with one tower pair per index in a
//! finite truncation window: `v` is the identity and `h` the reflection
//! symmetry of the source complex precomposed with a power of U. Each tower
//! stores only the i = 0 slice of its `[x, i, j]` cloud; the full cloud is
//! the free `F2[U, U^-1]`-span, with `(I, J, gr)` of `U^c x` equal to the
//! stored values minus `(c, c, 2c)`. Arrow powers may therefore be negative;
//! every algorithm downstream consumes only filtration drops, which are
//! shift-invariant.

use crate::knot_complex::KnotComplex;
use crate::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurgerySpec {
    PlusOne,
    /// 1/p with p >= 1; p = 1 agrees with `PlusOne` tower for tower.
    OneOverP { p: i64 },
}

impl fmt::Display for SurgerySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgerySpec::PlusOne => write!(f, "1"),
            SurgerySpec::OneOverP { p } => write!(f, "1/{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tower {
    B,
    A,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredGen {
    pub name: String,
    pub tower: Tower,
    /// Tower index: s for integer surgery, l for 1/p.
    pub index: i64,
    /// Generator index in the source complex.
    pub base: usize,
    pub filt_i: BigInt,
    pub filt_j: BigRational,
    pub gr: BigRational,
}

#[derive(Debug, Clone)]
pub struct ConeMeta {
    pub n: i64,
    pub surgery: SurgerySpec,
    pub window: (i64, i64),
    pub genus: BigInt,
    pub source: KnotComplex,
}

/// Finite cone: generators with exact filtration and grading data, plus a
/// differential whose entries are `(U-power, target)` pairs over Laurent
/// coefficients, each row sorted by target.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    pub gens: Vec<FilteredGen>,
    pub diff: Vec<Vec<(BigInt, usize)>>,
    pub meta: ConeMeta,
}

impl FilteredComplex {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Filtration drop of an arrow: nonnegative, zero in both slots exactly
    /// when the arrow is cancellable.
    pub fn drops(&self, src: usize, pow: &BigInt, tgt: usize) -> (BigInt, BigRational) {
        let di = &self.gens[src].filt_i - &self.gens[tgt].filt_i + pow;
        let dj = &self.gens[src].filt_j - &self.gens[tgt].filt_j
            + BigRational::from_integer(pow.clone());
        (di, dj)
    }

    /// Structural diagnostics; empty when the cone is well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let mut names = std::collections::BTreeSet::new();
        for g in &self.gens {
            if !names.insert(&g.name) {
                errs.push(format!("duplicate generator {:?}", g.name));
            }
        }
        for (s, row) in self.diff.iter().enumerate() {
            let mut prev = None;
            for (pow, t) in row {
                if *t >= self.len() {
                    errs.push(format!("{}: target out of range", self.gens[s].name));
                    continue;
                }
                if prev == Some(*t) {
                    errs.push(format!(
                        "{} -> {}: duplicate arrow",
                        self.gens[s].name, self.gens[*t].name
                    ));
                }
                prev = Some(*t);
                let (src, tgt) = (&self.gens[s], &self.gens[*t]);
                let shifted_gr = &tgt.gr - BigRational::from_integer(pow.clone() * BigInt::from(2));
                if shifted_gr != &src.gr - BigRational::one() {
                    errs.push(format!("{} -> {}: arrow is not degree -1", src.name, tgt.name));
                }
                let (di, dj) = self.drops(s, pow, *t);
                if di < BigInt::zero() || dj < BigRational::zero() {
                    errs.push(format!("{} -> {}: filtration increases", src.name, tgt.name));
                }
            }
        }
        if errs.is_empty() {
            for s in 0..self.len() {
                let mut acc: BTreeMap<(usize, BigInt), usize> = BTreeMap::new();
                for (p1, y) in &self.diff[s] {
                    for (p2, z) in &self.diff[*y] {
                        *acc.entry((*z, p1 + p2)).or_insert(0) += 1;
                    }
                }
                for ((z, _), count) in acc {
                    if count % 2 != 0 {
                        errs.push(format!(
                            "d^2 != 0 from {} to {}",
                            self.gens[s].name, self.gens[z].name
                        ));
                    }
                }
            }
        }
        errs
    }
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `f(n,s) = ns - n(n-1)/2`, the J-shift of the s-th tower pair.
fn tower_shift_plus_one(n: i64, s: i64) -> BigInt {
    BigInt::from(n as i128 * s as i128 - (n as i128 * (n as i128 - 1)) / 2)
}

/// Checked window resolution shared by both builders: explicit windows must
/// cover the active range; defaults clamp to a single tower when the active
/// range is empty (the unknot at small n).
fn resolve_window(
    window: Option<(i64, i64)>,
    lo_bound: i64,
    hi_bound: i64,
) -> Result<(i64, i64)> {
    match window {
        None => Ok((lo_bound, hi_bound.max(lo_bound))),
        Some((lo, hi)) => {
            if lo > lo_bound || hi < hi_bound {
                return Err(Error::Input(format!(
                    "window [{lo}, {hi}] does not cover the required [{lo_bound}, {hi_bound}]"
                )));
            }
            if lo > hi {
                return Err(Error::Input(format!("empty window [{lo}, {hi}]")));
            }
            Ok((lo, hi))
        }
    }
}

fn genus_i64(c: &KnotComplex) -> Result<i64> {
    i64::try_from(&c.top_alexander())
        .map_err(|_| Error::Input("genus out of range for tower indexing".into()))
}

/// The +1-surgery cone: towers `A_s` for `a <= s <= b`, `B_s` for
/// `a+1 <= s <= b`. On `A_s` the filtrations of `[x, i, j]` are
/// `I = max{i, j-s}` and `J = max{i-n, j-s} + f(n,s)`; on `B_s` they are
/// `I = i`, `J = i - n + f(n,s)`. Gradings add `s^2 - s` on A and
/// `s^2 - s - 1` on B to the source U-grading. `v_s` is the identity;
/// `h_s(x) = U^{s - A(x)} rho(x)` into `B_{s+1}` with rho the reflection
/// permutation of the source.
pub fn build_cone_plus_one(
    c: &KnotComplex,
    n: i64,
    window: Option<(i64, i64)>,
) -> Result<FilteredComplex> {
    if n < 1 {
        return Err(Error::Input(format!("cable parameter must be >= 1, got {n}")));
    }
    if !c.validate().is_empty() {
        return Err(Error::Input("source complex fails validation".into()));
    }
    let g = genus_i64(c)?;
    let (a, b) = resolve_window(window, -g + 1, g + n - 1)?;
    let rho = c
        .reflection_permutation()
        .ok_or_else(|| Error::Input("source complex has no reflection symmetry".into()))?;

    let nc = c.len();
    let b_towers: Vec<i64> = (a + 1..=b).collect();
    let a_towers: Vec<i64> = (a..=b).collect();
    let b_index = |s: i64, x: usize| -> usize { ((s - (a + 1)) as usize) * nc + x };
    let a_base = b_towers.len() * nc;
    let a_index = |s: i64, x: usize| -> usize { a_base + ((s - a) as usize) * nc + x };

    let mut gens = Vec::with_capacity((b_towers.len() + a_towers.len()) * nc);
    for &s in &b_towers {
        let shift = tower_shift_plus_one(n, s);
        for x in 0..nc {
            gens.push(FilteredGen {
                name: format!("B{}:{}", s, c.gens[x].name),
                tower: Tower::B,
                index: s,
                base: x,
                filt_i: BigInt::zero(),
                filt_j: BigRational::from_integer(&shift - BigInt::from(n)),
                gr: BigRational::from_integer(&c.gens[x].gr_u + BigInt::from(s * s - s - 1)),
            });
        }
    }
    for &s in &a_towers {
        let shift = tower_shift_plus_one(n, s);
        for x in 0..nc {
            let rel = c.alexander(x) - BigInt::from(s);
            let filt_i = rel.clone().max(BigInt::zero());
            let filt_j = rel.max(BigInt::from(-n)) + &shift;
            gens.push(FilteredGen {
                name: format!("A{}:{}", s, c.gens[x].name),
                tower: Tower::A,
                index: s,
                base: x,
                filt_i,
                filt_j: BigRational::from_integer(filt_j),
                gr: BigRational::from_integer(&c.gens[x].gr_u + BigInt::from(s * s - s)),
            });
        }
    }

    let mut diff = vec![Vec::new(); gens.len()];
    for &s in &b_towers {
        for x in 0..nc {
            for (m, y) in &c.diff[x] {
                diff[b_index(s, x)].push((m.u.clone(), b_index(s, *y)));
            }
        }
    }
    for &s in &a_towers {
        for x in 0..nc {
            let src = a_index(s, x);
            for (m, y) in &c.diff[x] {
                diff[src].push((m.u.clone(), a_index(s, *y)));
            }
            if s >= a + 1 {
                diff[src].push((BigInt::zero(), b_index(s, x)));
            }
            if s + 1 <= b {
                diff[src].push((BigInt::from(s) - c.alexander(x), b_index(s + 1, rho[x])));
            }
        }
    }
    for row in &mut diff {
        row.sort_by(|l, r| l.1.cmp(&r.1));
    }

    let cone = FilteredComplex {
        gens,
        diff,
        meta: ConeMeta {
            n,
            surgery: SurgerySpec::PlusOne,
            window: (a, b),
            genus: BigInt::from(g),
            source: c.clone(),
        },
    };
    debug_assert!(cone.validate().is_empty());
    Ok(cone)
}

/// `s_l` for 1/p: `l/p` when p is odd, `(2l+1)/(2p)` when p is even.
pub fn fractional_level(p: i64, l: i64) -> BigRational {
    if p % 2 != 0 {
        BigRational::new(l.into(), p.into())
    } else {
        BigRational::new((2 * l + 1).into(), (2 * p).into())
    }
}

/// `r(l) = floor((2l + p) / 2p)`: the integer governing both filtration
/// corners and the h-map power at tower l.
pub fn tower_rounding(p: i64, l: i64) -> i64 {
    (2 * l + p).div_euclid(2 * p)
}

/// Position of tower l within its period: the unique q in [0, p) with
/// `(2r-1)p <= 2(l-q) < (2r-1)p + 2`.
fn tower_residue(p: i64, l: i64) -> i64 {
    let r = tower_rounding(p, l);
    let q = if p % 2 == 0 { l - (2 * r - 1) * p / 2 } else { l - ((2 * r - 1) * p + 1) / 2 };
    debug_assert!((0..p).contains(&q), "residue {q} out of range for p = {p}");
    q
}

/// Grading offset of the q-th tower in a period: `(p - (2q - p)^2) / 4p`,
/// normalized so the p = 1 case contributes nothing.
fn residue_offset(p: i64, q: i64) -> BigRational {
    let d = 2 * q - p;
    BigRational::new((p - d * d).into(), (4 * p).into())
}

fn tower_shift_one_over_p(n: i64, p: i64, l: i64) -> BigInt {
    let (n, p, l) = (n as i128, p as i128, l as i128);
    let half = if p % 2 != 0 { n * (n * p - 1) / 2 } else { n * (n * p - 2) / 2 };
    BigInt::from(n * l - half)
}

/// The 1/p-surgery cone over tower indices `l` in a window. Filtrations on
/// `A_l` are `I = max{i, j - r}` and `J = max{i - n, j - r}` plus the tower
/// shift; `B_l` has `I = i`, `J = i - n` plus the same shift. Gradings come
/// from the surgery formula evaluated at `s_l`, with the per-residue offset
/// keeping tower families aligned. `h` maps `A_l` to `B_{l+1}` with power
/// `r(l) - A(x)`; p = 1 reproduces the +1 cone exactly.
pub fn build_cone_one_over_p(
    c: &KnotComplex,
    n: i64,
    p: i64,
    window: Option<(i64, i64)>,
) -> Result<FilteredComplex> {
    if n < 1 {
        return Err(Error::Input(format!("cable parameter must be >= 1, got {n}")));
    }
    if p < 1 {
        return Err(Error::Input(format!("surgery denominator must be >= 1, got {p}")));
    }
    if !c.validate().is_empty() {
        return Err(Error::Input("source complex fails validation".into()));
    }
    let g = genus_i64(c)?;
    let (lo, hi) = resolve_window(window, p * (-g + 1) - p, p * (g + n - 1) + p)?;
    let rho = c
        .reflection_permutation()
        .ok_or_else(|| Error::Input("source complex has no reflection symmetry".into()))?;

    let nc = c.len();
    let b_towers: Vec<i64> = (lo + 1..=hi).collect();
    let a_towers: Vec<i64> = (lo..=hi).collect();
    let b_index = |l: i64, x: usize| -> usize { ((l - (lo + 1)) as usize) * nc + x };
    let a_base = b_towers.len() * nc;
    let a_index = |l: i64, x: usize| -> usize { a_base + ((l - lo) as usize) * nc + x };

    let quarter = BigRational::new(1.into(), 4.into());
    let tower_gr = |l: i64| -> BigRational {
        let s = fractional_level(p, l);
        let arg = BigRational::from_integer((2 * p).into()) * s - BigRational::one();
        residue_offset(p, tower_residue(p, l)) + &arg * &arg / rational(4 * p) - &quarter
    };

    let mut gens = Vec::with_capacity((b_towers.len() + a_towers.len()) * nc);
    for &l in &b_towers {
        let shift = tower_shift_one_over_p(n, p, l);
        let gr0 = tower_gr(l) - BigRational::one();
        for x in 0..nc {
            gens.push(FilteredGen {
                name: format!("B{}:{}", l, c.gens[x].name),
                tower: Tower::B,
                index: l,
                base: x,
                filt_i: BigInt::zero(),
                filt_j: BigRational::from_integer(&shift - BigInt::from(n)),
                gr: BigRational::from_integer(c.gens[x].gr_u.clone()) + &gr0,
            });
        }
    }
    for &l in &a_towers {
        let shift = tower_shift_one_over_p(n, p, l);
        let r = tower_rounding(p, l);
        let gr0 = tower_gr(l);
        for x in 0..nc {
            let rel = c.alexander(x) - BigInt::from(r);
            let filt_i = rel.clone().max(BigInt::zero());
            let filt_j = rel.max(BigInt::from(-n)) + &shift;
            gens.push(FilteredGen {
                name: format!("A{}:{}", l, c.gens[x].name),
                tower: Tower::A,
                index: l,
                base: x,
                filt_i,
                filt_j: BigRational::from_integer(filt_j),
                gr: BigRational::from_integer(c.gens[x].gr_u.clone()) + &gr0,
            });
        }
    }

    let mut diff = vec![Vec::new(); gens.len()];
    for &l in &b_towers {
        for x in 0..nc {
            for (m, y) in &c.diff[x] {
                diff[b_index(l, x)].push((m.u.clone(), b_index(l, *y)));
            }
        }
    }
    for &l in &a_towers {
        let r = tower_rounding(p, l);
        for x in 0..nc {
            let src = a_index(l, x);
            for (m, y) in &c.diff[x] {
                diff[src].push((m.u.clone(), a_index(l, *y)));
            }
            if l >= lo + 1 {
                diff[src].push((BigInt::zero(), b_index(l, x)));
            }
            if l + 1 <= hi {
                diff[src].push((BigInt::from(r) - c.alexander(x), b_index(l + 1, rho[x])));
            }
        }
    }
    for row in &mut diff {
        row.sort_by(|l, r| l.1.cmp(&r.1));
    }

    let cone = FilteredComplex {
        gens,
        diff,
        meta: ConeMeta {
            n,
            surgery: SurgerySpec::OneOverP { p },
            window: (lo, hi),
            genus: BigInt::from(g),
            source: c.clone(),
        },
    };
    debug_assert!(cone.validate().is_empty());
    Ok(cone)
}

/// Build for either surgery description with its own default window.
pub fn build_cone(
    c: &KnotComplex,
    n: i64,
    surgery: SurgerySpec,
    window: Option<(i64, i64)>,
) -> Result<FilteredComplex> {
    match surgery {
        SurgerySpec::PlusOne => build_cone_plus_one(c, n, window),
        SurgerySpec::OneOverP { p } => build_cone_one_over_p(c, n, p, window),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_complex::KnotComplex;

    #[test]
    fn unknot_cable_one_is_a_single_generator() {
        let u = KnotComplex::staircase_t2(1).unwrap();
        let cone = build_cone_plus_one(&u, 1, None).unwrap();
        assert_eq!(cone.len(), 1);
        assert_eq!(cone.meta.window, (1, 1));
        assert_eq!(cone.gens[0].tower, Tower::A);
        assert!(cone.diff[0].is_empty());
        assert_eq!(cone.gens[0].gr, rational(0));
    }

    #[test]
    fn trefoil_cable_two_counts_and_shifts() {
        let t = KnotComplex::staircase_t2(3).unwrap();
        let cone = build_cone_plus_one(&t, 2, None).unwrap();
        assert_eq!(cone.meta.window, (0, 2));
        assert_eq!(cone.len(), 15);
        // J of the B_1 generator with source U-grading 0 is f(2,1) - 2 = -1.
        let b1 = cone
            .gens
            .iter()
            .find(|g| g.name == "B1:b2")
            .expect("B_1 tower carries the source complex");
        assert_eq!(b1.filt_j, rational(-1));
        assert!(cone.validate().is_empty());
    }

    #[test]
    fn plus_one_has_laurent_arrows() {
        // h_0 on the trefoil's A-grading-one generator carries U^{-1}.
        let t = KnotComplex::staircase_t2(3).unwrap();
        let cone = build_cone_plus_one(&t, 1, None).unwrap();
        let negative = cone
            .diff
            .iter()
            .flatten()
            .any(|(p, _)| *p < BigInt::zero());
        assert!(negative);
        assert!(cone.validate().is_empty());
    }

    #[test]
    fn window_preconditions_are_enforced() {
        let t = KnotComplex::staircase_t2(3).unwrap();
        assert!(build_cone_plus_one(&t, 2, Some((1, 5))).is_err());
        assert!(build_cone_plus_one(&t, 2, Some((0, 1))).is_err());
        assert!(build_cone_plus_one(&t, 2, Some((-3, 7))).is_ok());
        assert!(build_cone_one_over_p(&t, 1, 2, Some((0, 4))).is_err());
        assert!(build_cone_one_over_p(&t, 1, 2, Some((-2, 4))).is_ok());
    }

    #[test]
    fn one_over_p_rounding_examples() {
        assert_eq!(tower_rounding(2, 1), 1);
        assert_eq!(fractional_level(2, 1), BigRational::new(3.into(), 4.into()));
        assert_eq!(tower_rounding(3, -2), -1);
        assert_eq!(fractional_level(3, -2), BigRational::new((-2).into(), 3.into()));
        // p = 1 degenerates to r(l) = l, s_l = l.
        for l in -5..=5 {
            assert_eq!(tower_rounding(1, l), l);
            assert_eq!(fractional_level(1, l), rational(l));
        }
    }

    #[test]
    fn p_one_reproduces_the_integer_cone() {
        let t = KnotComplex::staircase_t2(3).unwrap();
        let g = 1;
        for n in 1..=3 {
            let window = Some((-g, g + n));
            let plus = build_cone_plus_one(&t, n, window).unwrap();
            let frac = build_cone_one_over_p(&t, n, 1, window).unwrap();
            assert_eq!(plus.gens, frac.gens, "n = {n}");
            assert_eq!(plus.diff, frac.diff, "n = {n}");
        }
    }

    #[test]
    fn default_windows_match_the_conservative_bounds() {
        let t = KnotComplex::staircase_t2(5).unwrap();
        let cone = build_cone_one_over_p(&t, 2, 3, None).unwrap();
        assert_eq!(cone.meta.window, (3 * (-1) - 3, 3 * 3 + 3));
        assert!(cone.validate().is_empty());
    }

    #[test]
    fn one_over_p_cones_are_well_formed() {
        for q in [1, 3, 5] {
            let c = KnotComplex::staircase_t2(q).unwrap();
            for n in 1..=2 {
                for p in 1..=3 {
                    let cone = build_cone_one_over_p(&c, n, p, None).unwrap();
                    assert!(
                        cone.validate().is_empty(),
                        "q = {q}, n = {n}, p = {p}: {:?}",
                        cone.validate()
                    );
                }
            }
        }
    }

    #[test]
    fn plus_one_gradings_are_integers() {
        let t = KnotComplex::staircase_t2(7).unwrap();
        let cone = build_cone_plus_one(&t, 3, None).unwrap();
        for g in &cone.gens {
            assert!(g.gr.is_integer(), "{} has gr {}", g.name, g.gr);
            assert!(g.filt_j.is_integer());
        }
    }

    #[test]
    fn one_over_p_gradings_land_in_integer_cosets() {
        // Surgeries on these knots give integer homology spheres: the
        // residue offsets must re-align every tower to integer gradings.
        for p in [2, 3] {
            let t = KnotComplex::staircase_t2(3).unwrap();
            let cone = build_cone_one_over_p(&t, 1, p, None).unwrap();
            for g in &cone.gens {
                assert!(g.gr.is_integer(), "p = {}: {} has gr {}", p, g.name, g.gr);
            }
        }
    }

    #[test]
    fn towers_are_stored_b_first() {
        let t = KnotComplex::staircase_t2(3).unwrap();
        let cone = build_cone_plus_one(&t, 2, None).unwrap();
        let first_a = cone.gens.iter().position(|g| g.tower == Tower::A).unwrap();
        assert!(cone.gens[..first_a].iter().all(|g| g.tower == Tower::B));
        assert!(cone.gens[first_a..].iter().all(|g| g.tower == Tower::A));
    }
}
