//! Finitely generated bigraded complexes over `F2[U,V]`.
//!
//! A generator carries two integer gradings `(gr_u, gr_v)` of equal parity;
//! its Alexander grading is `(gr_u - gr_v)/2`. A differential entry
//! `U^a V^b : x -> y` must satisfy
//!
//! ```text
//! gr_u(y) = gr_u(x) - 1 + 2a,      gr_v(y) = gr_v(x) - 1 + 2b,
//! ```
//!
//! so between a fixed pair of generators at most one monomial is possible.

use crate::coefficients::{Exp, UVMonomial};
use crate::{Error, Result};
use num::{BigInt, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotGen {
    pub name: String,
    pub gr_u: BigInt,
    pub gr_v: BigInt,
}

impl KnotGen {
    pub fn new(name: impl Into<String>, gr_u: impl Into<BigInt>, gr_v: impl Into<BigInt>) -> Self {
        KnotGen { name: name.into(), gr_u: gr_u.into(), gr_v: gr_v.into() }
    }

    pub fn alexander(&self) -> BigInt {
        (&self.gr_u - &self.gr_v) / BigInt::from(2)
    }
}

/// Ordered generators plus, for each one, its differential as a list of
/// `(monomial, target index)` terms sorted by target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotComplex {
    pub gens: Vec<KnotGen>,
    pub diff: Vec<Vec<(UVMonomial, usize)>>,
}

impl KnotComplex {
    pub fn from_arrows(gens: Vec<KnotGen>, arrows: Vec<(usize, UVMonomial, usize)>) -> Self {
        let mut diff = vec![Vec::new(); gens.len()];
        for (s, m, t) in arrows {
            diff[s].push((m, t));
        }
        for row in &mut diff {
            row.sort_by(|a, b| a.1.cmp(&b.1));
        }
        KnotComplex { gens, diff }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn alexander(&self, idx: usize) -> BigInt {
        self.gens[idx].alexander()
    }

    /// Largest |Alexander grading| among generators; the staircase of
    /// `T(2,q)` realizes its genus here.
    pub fn top_alexander(&self) -> BigInt {
        self.gens
            .iter()
            .map(|g| {
                let a = g.alexander();
                if a < BigInt::zero() {
                    -a
                } else {
                    a
                }
            })
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn arrow_between(&self, s: usize, t: usize) -> Option<&UVMonomial> {
        self.diff[s].iter().find(|(_, tt)| *tt == t).map(|(m, _)| m)
    }

    /// Structural diagnostics; empty means the complex is well formed.
    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if self.diff.len() != self.gens.len() {
            errs.push(format!(
                "differential has {} rows for {} generators",
                self.diff.len(),
                self.gens.len()
            ));
            return errs;
        }
        let mut seen = std::collections::BTreeSet::new();
        for g in &self.gens {
            if g.name.is_empty() || g.name.chars().any(|c| c.is_whitespace()) {
                errs.push(format!("bad generator name {:?}", g.name));
            }
            if !seen.insert(&g.name) {
                errs.push(format!("duplicate generator name {:?}", g.name));
            }
            if ((&g.gr_u - &g.gr_v) % BigInt::from(2)) != BigInt::zero() {
                errs.push(format!("{}: gr_u - gr_v must be even", g.name));
            }
        }
        let two = BigInt::from(2);
        for (s, row) in self.diff.iter().enumerate() {
            let mut prev: Option<usize> = None;
            for (m, t) in row {
                if *t >= self.gens.len() {
                    errs.push(format!("{}: arrow target out of range", self.gens[s].name));
                    continue;
                }
                if prev == Some(*t) {
                    errs.push(format!(
                        "{} -> {}: duplicate arrow",
                        self.gens[s].name, self.gens[*t].name
                    ));
                }
                if prev.map_or(false, |p| p > *t) {
                    errs.push(format!("{}: arrows not sorted by target", self.gens[s].name));
                }
                prev = Some(*t);
                let (src, tgt) = (&self.gens[s], &self.gens[*t]);
                let one = BigInt::from(1);
                if tgt.gr_u != &src.gr_u - &one + &two * &m.u {
                    errs.push(format!(
                        "{} -> {}: U-grading mismatch for {}",
                        src.name, tgt.name, m
                    ));
                }
                if tgt.gr_v != &src.gr_v - &one + &two * &m.v {
                    errs.push(format!(
                        "{} -> {}: V-grading mismatch for {}",
                        src.name, tgt.name, m
                    ));
                }
            }
        }
        if errs.is_empty() {
            // d^2 = 0 in the ground ring, where UV = 0: two-step paths
            // whose product monomial mixes U and V vanish outright, the
            // rest must pair off.
            for s in 0..self.gens.len() {
                let mut acc: BTreeMap<(usize, UVMonomial), usize> = BTreeMap::new();
                for (m1, y) in &self.diff[s] {
                    for (m2, z) in &self.diff[*y] {
                        let prod = m1.mul(m2);
                        if prod.u > BigInt::zero() && prod.v > BigInt::zero() {
                            continue;
                        }
                        *acc.entry((*z, prod)).or_insert(0) += 1;
                    }
                }
                for ((z, m), count) in acc {
                    if count % 2 != 0 {
                        errs.push(format!(
                            "d^2 != 0: {} reaches {} with {}",
                            self.gens[s].name, self.gens[z].name, m
                        ));
                    }
                }
            }
        }
        errs
    }

    /// Swap the two gradings and the two exponents everywhere.
    pub fn reflect(&self) -> KnotComplex {
        let gens = self
            .gens
            .iter()
            .map(|g| KnotGen { name: g.name.clone(), gr_u: g.gr_v.clone(), gr_v: g.gr_u.clone() })
            .collect();
        let diff = self
            .diff
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(m, t)| (UVMonomial { u: m.v.clone(), v: m.u.clone() }, *t))
                    .collect()
            })
            .collect();
        KnotComplex { gens, diff }
    }

    /// Negate gradings and transpose the differential. Computes the complex
    /// of the mirror knot.
    pub fn dual(&self) -> KnotComplex {
        let gens = self
            .gens
            .iter()
            .map(|g| KnotGen { name: g.name.clone(), gr_u: -&g.gr_u, gr_v: -&g.gr_v })
            .collect();
        let mut arrows = Vec::new();
        for (s, row) in self.diff.iter().enumerate() {
            for (m, t) in row {
                arrows.push((*t, m.clone(), s));
            }
        }
        KnotComplex::from_arrows(gens, arrows)
    }

    /// Tensor product over `F2[U,V]` with the Leibniz differential.
    pub fn tensor(&self, other: &KnotComplex) -> KnotComplex {
        let n = other.len();
        let mut gens = Vec::with_capacity(self.len() * n);
        for x in &self.gens {
            for y in &other.gens {
                gens.push(KnotGen {
                    name: format!("{}*{}", x.name, y.name),
                    gr_u: &x.gr_u + &y.gr_u,
                    gr_v: &x.gr_v + &y.gr_v,
                });
            }
        }
        let mut arrows = Vec::new();
        for i in 0..self.len() {
            for j in 0..n {
                let src = i * n + j;
                for (m, t) in &self.diff[i] {
                    arrows.push((src, m.clone(), t * n + j));
                }
                for (m, t) in &other.diff[j] {
                    arrows.push((src, m.clone(), i * n + t));
                }
            }
        }
        KnotComplex::from_arrows(gens, arrows)
    }

    /// The staircase complex of the (2,q) torus knot, q odd and positive.
    /// Generators `a_1..a_g, b_1..b_{g+1}` with `da_i = V b_i + U b_{i+1}`,
    /// pinned so that `b_{g+1}` sits at `gr_u = 0`. q = 1 gives the unknot:
    /// one generator, no differential.
    pub fn staircase_t2(q: i64) -> Result<KnotComplex> {
        if q < 1 || q % 2 == 0 {
            return Err(Error::Input(format!("staircase needs odd q >= 1, got {q}")));
        }
        let g = (q - 1) / 2;
        let mut gens = Vec::new();
        for i in 1..=g {
            let gr_u = BigInt::from(-2 * (g - i) - 1);
            let a = -g + 2 * i - 1;
            gens.push(KnotGen { name: format!("a{i}"), gr_v: &gr_u - BigInt::from(2 * a), gr_u });
        }
        for i in 1..=g + 1 {
            let gr_u = BigInt::from(-2 * (g + 1 - i));
            let a = -g + 2 * i - 2;
            gens.push(KnotGen { name: format!("b{i}"), gr_v: &gr_u - BigInt::from(2 * a), gr_u });
        }
        let mut arrows = Vec::new();
        for i in 1..=g {
            let (src, b_lo, b_hi) = ((i - 1) as usize, (g + i - 1) as usize, (g + i) as usize);
            arrows.push((src, UVMonomial::new(0, 1), b_lo));
            arrows.push((src, UVMonomial::new(1, 0), b_hi));
        }
        let c = KnotComplex::from_arrows(gens, arrows);
        debug_assert!(c.validate().is_empty());
        Ok(c)
    }

    /// A generator permutation realizing the reflection symmetry: pi matches
    /// gradings swapped and carries `U^a V^b : x -> y` to
    /// `U^b V^a : pi(x) -> pi(y)`. Deterministic first match; None when the
    /// symmetry is not realized by any permutation.
    pub fn reflection_permutation(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
        for x in &self.gens {
            let cs: Vec<usize> = (0..n)
                .filter(|&y| {
                    self.gens[y].gr_u == x.gr_v && self.gens[y].gr_v == x.gr_u
                })
                .collect();
            if cs.is_empty() {
                return None;
            }
            candidates.push(cs);
        }
        let mut pi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if !self.assign_reflection(0, &candidates, &mut pi, &mut used) {
            return None;
        }
        Some(pi)
    }

    fn assign_reflection(
        &self,
        x: usize,
        candidates: &[Vec<usize>],
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == self.len() {
            return self.reflection_ok(pi);
        }
        for &y in &candidates[x] {
            if used[y] {
                continue;
            }
            pi[x] = y;
            used[y] = true;
            // Partial pruning: arrows between already-assigned generators
            // must already correspond.
            if self.reflection_ok_partial(x, pi) && self.assign_reflection(x + 1, candidates, pi, used)
            {
                return true;
            }
            used[y] = false;
            pi[x] = usize::MAX;
        }
        false
    }

    fn reflection_ok_partial(&self, upto: usize, pi: &[usize]) -> bool {
        for s in 0..=upto {
            for (m, t) in &self.diff[s] {
                if *t > upto {
                    continue;
                }
                let want = UVMonomial { u: m.v.clone(), v: m.u.clone() };
                if self.arrow_between(pi[s], pi[*t]) != Some(&want) {
                    return false;
                }
            }
        }
        true
    }

    fn reflection_ok(&self, pi: &[usize]) -> bool {
        for s in 0..self.len() {
            let mut img: Vec<(UVMonomial, usize)> = self.diff[s]
                .iter()
                .map(|(m, t)| (UVMonomial { u: m.v.clone(), v: m.u.clone() }, pi[*t]))
                .collect();
            img.sort_by(|a, b| a.1.cmp(&b.1));
            if img != self.diff[pi[s]] {
                return false;
            }
        }
        true
    }
}

/// Exact graded isomorphism up to relabeling: a bijection matching both
/// gradings and every differential entry, monomial for monomial.
pub fn graded_isomorphism(a: &KnotComplex, b: &KnotComplex) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for x in &a.gens {
        let cs: Vec<usize> = (0..n)
            .filter(|&y| b.gens[y].gr_u == x.gr_u && b.gens[y].gr_v == x.gr_v)
            .collect();
        if cs.is_empty() {
            return None;
        }
        candidates.push(cs);
    }
    let mut pi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        a: &KnotComplex,
        b: &KnotComplex,
        x: usize,
        candidates: &[Vec<usize>],
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == a.len() {
            return true;
        }
        'next: for &y in &candidates[x] {
            if used[y] {
                continue;
            }
            pi[x] = y;
            used[y] = true;
            for s in 0..=x {
                for (m, t) in &a.diff[s] {
                    if *t > x {
                        continue;
                    }
                    if b.arrow_between(pi[s], pi[*t]) != Some(m) {
                        used[y] = false;
                        pi[x] = usize::MAX;
                        continue 'next;
                    }
                }
                // Arrows in b between assigned images must also exist in a.
                for (m, t) in &b.diff[pi[s]] {
                    if let Some(ts) = pi.iter().position(|&p| p == *t) {
                        if ts <= x && a.arrow_between(s, ts) != Some(m) {
                            used[y] = false;
                            pi[x] = usize::MAX;
                            continue 'next;
                        }
                    }
                }
            }
            if rec(a, b, x + 1, candidates, pi, used) {
                return true;
            }
            used[y] = false;
            pi[x] = usize::MAX;
        }
        false
    }
    rec(a, b, 0, &candidates, &mut pi, &mut used).then_some(pi)
}

/// Convenience handle used by exponent-free call sites.
pub fn big(x: i64) -> Exp {
    Exp::from(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv(u: i64, v: i64) -> UVMonomial {
        UVMonomial::new(u, v)
    }

    #[test]
    fn trefoil_staircase_shape() {
        let c = KnotComplex::staircase_t2(3).unwrap();
        assert_eq!(c.len(), 3);
        let names: Vec<&str> = c.gens.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["a1", "b1", "b2"]);
        assert_eq!((c.gens[0].gr_u.clone(), c.gens[0].gr_v.clone()), ((-1).into(), (-1).into()));
        assert_eq!((c.gens[1].gr_u.clone(), c.gens[1].gr_v.clone()), ((-2).into(), 0.into()));
        assert_eq!((c.gens[2].gr_u.clone(), c.gens[2].gr_v.clone()), (0.into(), (-2).into()));
        assert_eq!(c.diff[0], vec![(uv(0, 1), 1), (uv(1, 0), 2)]);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn staircase_family_is_well_formed() {
        for q in (1..=21).step_by(2) {
            let c = KnotComplex::staircase_t2(q).unwrap();
            assert_eq!(c.len(), q as usize);
            assert!(c.validate().is_empty(), "q = {q}");
            assert_eq!(c.top_alexander(), BigInt::from((q - 1) / 2));
        }
    }

    #[test]
    fn staircase_rejects_bad_q() {
        assert!(KnotComplex::staircase_t2(0).is_err());
        assert!(KnotComplex::staircase_t2(4).is_err());
        assert!(KnotComplex::staircase_t2(-3).is_err());
    }

    #[test]
    fn unknot_is_a_point() {
        let c = KnotComplex::staircase_t2(1).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.diff[0].is_empty());
        assert_eq!(c.gens[0].gr_u, BigInt::zero());
    }

    #[test]
    fn reflect_swaps_the_trefoil_b_generators() {
        let c = KnotComplex::staircase_t2(3).unwrap();
        let r = c.reflect();
        assert_eq!(r.gens[1].gr_u, c.gens[2].gr_u);
        assert_eq!(r.gens[1].gr_v, c.gens[2].gr_v);
        assert!(r.validate().is_empty());
        assert_eq!(r.reflect(), c);
    }

    #[test]
    fn reflection_permutation_of_staircases() {
        // rho(a_i) = a_{g-i+1}, rho(b_i) = b_{g+2-i}.
        let c = KnotComplex::staircase_t2(5).unwrap();
        assert_eq!(c.reflection_permutation(), Some(vec![1, 0, 4, 3, 2]));
        let u = KnotComplex::staircase_t2(1).unwrap();
        assert_eq!(u.reflection_permutation(), Some(vec![0]));
    }

    #[test]
    fn reflection_permutation_respects_arrows() {
        for q in (1..=11).step_by(2) {
            let c = KnotComplex::staircase_t2(q).unwrap();
            let pi = c.reflection_permutation().expect("staircases are symmetric");
            for s in 0..c.len() {
                for (m, t) in &c.diff[s] {
                    let want = UVMonomial { u: m.v.clone(), v: m.u.clone() };
                    assert_eq!(c.arrow_between(pi[s], pi[*t]), Some(&want));
                }
            }
        }
    }

    #[test]
    fn tensor_squares_are_well_formed() {
        let t = KnotComplex::staircase_t2(3).unwrap();
        let tt = t.tensor(&t);
        assert_eq!(tt.len(), 9);
        assert!(tt.validate().is_empty());
        let f = KnotComplex::staircase_t2(5).unwrap().tensor(&t);
        assert!(f.validate().is_empty());
    }

    #[test]
    fn tensor_with_unknot_changes_nothing() {
        let t = KnotComplex::staircase_t2(7).unwrap();
        let u = KnotComplex::staircase_t2(1).unwrap();
        assert!(graded_isomorphism(&t.tensor(&u), &t).is_some());
        assert!(graded_isomorphism(&u.tensor(&t), &t).is_some());
    }

    #[test]
    fn dual_is_an_involution() {
        let t = KnotComplex::staircase_t2(5).unwrap();
        let d = t.dual();
        assert!(d.validate().is_empty());
        assert_eq!(d.dual(), t);
        assert_eq!(d.gens[4].gr_u, BigInt::zero());
    }

    #[test]
    fn graded_isomorphism_distinguishes_knots() {
        let t = KnotComplex::staircase_t2(3).unwrap();
        let f = KnotComplex::staircase_t2(5).unwrap();
        assert!(graded_isomorphism(&t, &f).is_none());
        assert!(graded_isomorphism(&t, &t).is_some());
        // Same gradings, renamed generators: still isomorphic.
        let mut renamed = t.clone();
        for (k, g) in renamed.gens.iter_mut().enumerate() {
            g.name = format!("z{k}");
        }
        assert_eq!(graded_isomorphism(&t, &renamed), Some(vec![0, 1, 2]));
    }

    #[test]
    fn validate_flags_grading_breaks() {
        let gens = vec![KnotGen::new("x", 0, 0), KnotGen::new("y", 0, 0)];
        let broken = KnotComplex::from_arrows(gens, vec![(0, uv(1, 0), 1)]);
        let errs = broken.validate();
        assert!(errs.iter().any(|e| e.contains("U-grading")));
    }

    #[test]
    fn validate_catches_d_squared() {
        // x -> y -> z with only one path: d^2 = U^2 z survives.
        let gens = vec![
            KnotGen::new("x", 2, 2),
            KnotGen::new("y", 3, 1),
            KnotGen::new("z", 4, 0),
        ];
        let broken =
            KnotComplex::from_arrows(gens, vec![(0, uv(1, 0), 1), (1, uv(1, 0), 2)]);
        let errs = broken.validate();
        assert!(errs.iter().any(|e| e.contains("d^2")));
    }
}
