//! Tower stabilization: large cables reproduce the source complex.
//!
//! Once n reaches twice the genus, the middle tower of the cone is a copy
//! of the source complex sitting inside the surgery: no arrow from outside
//! lands in it (it is a quotient complex), its internal differential is the
//! source differential, and both filtrations are constant across it — the
//! first vanishes, the second is the Alexander grading up to one shift.

use cablecone::knot_complex::KnotComplex;
use cablecone::mapping_cone::{build_cone, SurgerySpec, Tower};
use num::BigRational;
use std::collections::BTreeSet;

fn main() -> cablecone::Result<()> {
    let source = KnotComplex::staircase_t2(7)?; // genus 3
    let source_arrows: usize = source.diff.iter().map(|r| r.len()).sum();
    for n in [6i64, 7, 9] {
        let m = (n + 1) / 2;
        let cone = build_cone(&source, n, SurgerySpec::PlusOne, None)?;
        let inside: BTreeSet<usize> = (0..cone.len())
            .filter(|&i| cone.gens[i].tower == Tower::A && cone.gens[i].index == m)
            .collect();

        let incoming = (0..cone.len())
            .filter(|s| !inside.contains(s))
            .flat_map(|s| cone.diff[s].iter())
            .filter(|(_, t)| inside.contains(t))
            .count();
        let internal = inside
            .iter()
            .flat_map(|&s| cone.diff[s].iter())
            .filter(|(_, t)| inside.contains(t))
            .count();

        let mut j_offsets = BTreeSet::new();
        for &idx in &inside {
            let gen = &cone.gens[idx];
            assert_eq!(gen.filt_i, 0u8.into());
            let alex = cone.meta.source.alexander(gen.base);
            j_offsets.insert(&gen.filt_j - BigRational::from_integer(alex));
        }

        println!(
            "n = {n}: tower A_{m} has {} generators (source {}), \
             {internal} internal arrows (source {source_arrows}), \
             {incoming} incoming, J - A constant: {}",
            inside.len(),
            source.len(),
            j_offsets.len() == 1,
        );
        assert_eq!(inside.len(), source.len());
        assert_eq!(internal, source_arrows);
        assert_eq!(incoming, 0);
    }
    Ok(())
}
