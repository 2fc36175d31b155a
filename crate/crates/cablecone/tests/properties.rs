//! Randomized structural properties over the public surface: source
//! complexes built from staircases under tensor/dual/reflect, the full
//! pipeline at small random parameters, and the text format. Each property
//! restates an invariant the deterministic suites pin at fixed points.

use proptest::prelude::*;

use cablecone::cli::{parse_cfk, pipeline, serialize_cfk};
use cablecone::knot_complex::KnotComplex;
use cablecone::local_equiv::{
    phi_from_standard_x, standardize_x, SignedPair, StandardComplexX, StandardComplexZ,
};
use cablecone::mapping_cone::SurgerySpec;
use num::BigInt;

fn odd_q() -> impl Strategy<Value = i64> {
    (0i64..=5).prop_map(|t| 2 * t + 1)
}

fn surgery() -> impl Strategy<Value = SurgerySpec> {
    (1i64..=3).prop_map(|p| {
        if p == 1 {
            SurgerySpec::PlusOne
        } else {
            SurgerySpec::OneOverP { p }
        }
    })
}

/// A small source complex: a staircase, possibly dualized, possibly
/// tensored with a second staircase.
fn source() -> impl Strategy<Value = KnotComplex> {
    (odd_q(), proptest::option::of(odd_q()), any::<bool>()).prop_map(|(q, other, dualize)| {
        let mut c = KnotComplex::staircase_t2(q).unwrap();
        if let Some(q2) = other {
            c = c.tensor(&KnotComplex::staircase_t2(q2).unwrap());
        }
        if dualize {
            c = c.dual();
        }
        c
    })
}

proptest! {
    #[test]
    fn sources_validate_and_dual_is_an_involution(c in source()) {
        prop_assert!(c.validate().is_empty());
        let dd = c.dual().dual();
        prop_assert_eq!(&dd.gens, &c.gens);
        prop_assert_eq!(&dd.diff, &c.diff);
        prop_assert!(c.reflect().validate().is_empty());
    }

    #[test]
    fn text_format_round_trips(c in source()) {
        let text = serialize_cfk(&c);
        let back = parse_cfk(&text).unwrap();
        prop_assert_eq!(&back.gens, &c.gens);
        prop_assert_eq!(&back.diff, &c.diff);
        // The typeset minus sign parses to the same complex.
        let typeset = text.replace('-', "\u{2212}");
        let back2 = parse_cfk(&typeset).unwrap();
        prop_assert_eq!(&back2.gens, &c.gens);
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,200}") {
        let _ = parse_cfk(&text);
    }

    #[test]
    fn reverse_negate_is_an_involution(
        seq in proptest::collection::vec((-6i64..=6).prop_filter("nonzero", |b| *b != 0), 0..12),
        pairs in proptest::collection::vec((any::<bool>(), 0i64..=6, 0i64..=6), 0..12),
    ) {
        let z = StandardComplexZ(seq.into_iter().map(BigInt::from).collect());
        prop_assert_eq!(z.reverse_negate().reverse_negate(), z);
        let x = StandardComplexX(
            pairs
                .into_iter()
                .map(|(neg, i, j)| SignedPair {
                    sign: if neg { -1 } else { 1 },
                    i: BigInt::from(i),
                    j: BigInt::from(j),
                })
                .collect(),
        );
        prop_assert_eq!(x.reverse_negate().reverse_negate(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipeline_runs_exactly_at_random_parameters(
        q in odd_q(),
        n in 1i64..=3,
        s in surgery(),
        widen in 0i64..=2,
    ) {
        let c = KnotComplex::staircase_t2(q).unwrap();
        let base = pipeline(&c, n, s, None).unwrap();
        prop_assert!(base.uv.validate().is_empty());
        prop_assert!(base.reduced.complex.validate().is_empty());

        // The extended ring always finishes on this family, dropping whole
        // cycles and keeping one path; counts must reconcile.
        let sx = base.x.as_ref().unwrap();
        prop_assert_eq!(sx.sequence.0.len() + sx.dropped.len() + 1, base.uv.len());
        prop_assert_eq!(&sx.sequence.reverse_negate(), &sx.sequence);

        // A wider tower window changes nothing downstream.
        let (a, b) = base.reduced.complex.meta.window;
        let wide = pipeline(&c, n, s, Some((a - widen, b + widen))).unwrap();
        prop_assert_eq!(&wide.d, &base.d);
        prop_assert_eq!(&wide.x.unwrap().sequence, &sx.sequence);
    }

    #[test]
    fn phi_adds_under_tensor_products(n1 in 1i64..=3, n2 in 1i64..=3) {
        let trefoil = KnotComplex::staircase_t2(3).unwrap();
        let left = pipeline(&trefoil, n1, SurgerySpec::PlusOne, None).unwrap().uv;
        let right = pipeline(&trefoil, n2, SurgerySpec::PlusOne, None).unwrap().uv;
        let product = left.tensor(&right);
        let mut want = phi_from_standard_x(&standardize_x(&left).unwrap().sequence);
        for (k, v) in phi_from_standard_x(&standardize_x(&right).unwrap().sequence) {
            *want.entry(k).or_default() += v;
        }
        want.retain(|_, v| !num::Zero::is_zero(v));
        let got = phi_from_standard_x(&standardize_x(&product).unwrap().sequence);
        prop_assert_eq!(got, want);
    }
}
