//! Local equivalence: what the standard sequence does and does not see.
//!
//! Three demonstrations. Split box summands are invisible: the checker
//! accepts a path against the path plus a box, and rejects it against a
//! point. The coefficients add under tensor product. And standardization
//! does not care how the tensor factors are ordered, only what the product
//! is.

use cablecone::cli::pipeline;
use cablecone::coefficients::UVMonomial;
use cablecone::knot_complex::{KnotComplex, KnotGen};
use cablecone::local_equiv::{phi_from_standard_x, standardize_x, verify_local_equiv};
use cablecone::mapping_cone::SurgerySpec;
use num::{BigInt, Zero};
use std::collections::BTreeMap;

fn main() -> cablecone::Result<()> {
    let uv = |u: i64, v: i64| UVMonomial::new(u, v);

    // x --U--> m <--V-- y, the complex realizing the (-1, 1) sequence.
    let path = KnotComplex::from_arrows(
        vec![KnotGen::new("x", 0, 0), KnotGen::new("m", 1, -1), KnotGen::new("y", 2, -2)],
        vec![(0, uv(1, 0), 1), (2, uv(0, 1), 1)],
    );
    let mut gens = path.gens.clone();
    gens.extend([
        KnotGen::new("e1", 1, 1),
        KnotGen::new("e2", 2, 0),
        KnotGen::new("e3", 0, 2),
        KnotGen::new("e4", 1, 1),
    ]);
    let with_box = KnotComplex::from_arrows(
        gens,
        vec![
            (0, uv(1, 0), 1),
            (2, uv(0, 1), 1),
            (3, uv(1, 0), 4),
            (3, uv(0, 1), 5),
            (4, uv(0, 1), 6),
            (5, uv(1, 0), 6),
        ],
    );
    let point = KnotComplex::from_arrows(vec![KnotGen::new("p", 0, 0)], vec![]);
    println!("path ~ path + box: {}", verify_local_equiv(&path, &with_box, 4)?);
    println!("path ~ point:      {}", verify_local_equiv(&path, &point, 4)?);

    // Cable complexes for the trefoil, n = 2 and n = 3.
    let trefoil = KnotComplex::staircase_t2(3)?;
    let cable = |n| -> cablecone::Result<KnotComplex> {
        Ok(pipeline(&trefoil, n, SurgerySpec::PlusOne, None)?.uv)
    };
    let (t2, t3) = (cable(2)?, cable(3)?);

    let phi = |c: &KnotComplex| -> cablecone::Result<BTreeMap<(BigInt, BigInt), BigInt>> {
        Ok(phi_from_standard_x(&standardize_x(c)?.sequence))
    };
    let mut sum = phi(&t2)?;
    for (k, v) in phi(&t3)? {
        *sum.entry(k).or_default() += v;
    }
    sum.retain(|_, v| !v.is_zero());
    let product = phi(&t2.tensor(&t3))?;
    println!("phi(t2 x t3) = phi(t2) + phi(t3): {}", product == sum);

    let a = standardize_x(&t2.tensor(&t3))?;
    let b = standardize_x(&t3.tensor(&t2))?;
    println!("same sequence in both orders:     {}", a.sequence == b.sequence);
    Ok(())
}
