//! Two-parameter concordance coefficients across a torus-knot grid.
//!
//! The extended ring standardizes every cone in this grid, including the
//! ones whose mod-UV quotient falls apart into components, so phi_{i,j} is
//! always available. For T(2,4k+3) the top of column k sits at
//! phi_{k+n,k} = -1 and the column vanishes above it.

use cablecone::cli::pipeline;
use cablecone::knot_complex::KnotComplex;
use cablecone::local_equiv::phi_from_standard_x;
use cablecone::mapping_cone::SurgerySpec;
use num::Zero;

fn main() -> cablecone::Result<()> {
    for k in 0..=2i64 {
        let q = 4 * k + 3;
        let source = KnotComplex::staircase_t2(q)?;
        println!("T(2,{q}):");
        for n in 1..=3 {
            let run = pipeline(&source, n, SurgerySpec::PlusOne, None)?;
            let sx = run.x.expect("the extended ring standardizes the grid");
            let phi = phi_from_standard_x(&sx.sequence);
            let cells: Vec<String> = phi
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((i, j), v)| format!("phi_({i},{j}) = {v}"))
                .collect();
            println!("  n = {n}: {}", cells.join(", "));
        }
    }
    Ok(())
}
