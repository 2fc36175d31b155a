//! The (n,1)-cables of the meridian in +1-surgery on the trefoil.
//!
//! One pipeline run per n: build the doubly-filtered cone, cancel every
//! filtration-preserving arrow, standardize the two-variable quotient. The
//! trefoil family stays standardizable mod UV at every n, so the standard
//! sequence, the concordance coefficients, and the d-invariant all print
//! from the same run.

use cablecone::cli::pipeline;
use cablecone::knot_complex::KnotComplex;
use cablecone::local_equiv::phi_from_standard_z;
use cablecone::mapping_cone::SurgerySpec;

fn main() -> cablecone::Result<()> {
    let trefoil = KnotComplex::staircase_t2(3)?;
    for n in 1..=4 {
        let run = pipeline(&trefoil, n, SurgerySpec::PlusOne, None)?;
        let sz = run.z.expect("the trefoil cables standardize mod UV");
        let seq: Vec<String> = sz.sequence.0.iter().map(|b| b.to_string()).collect();
        println!("n = {n}");
        println!("  cone {} generators, {} after reduction", run.cone_len, run.uv.len());
        println!("  standard complex C({})", seq.join(", "));
        let phi = phi_from_standard_z(&sz.sequence);
        if phi.is_empty() {
            println!("  all phi_j vanish");
        } else {
            let cells: Vec<String> =
                phi.iter().map(|(j, c)| format!("phi_{j} = {c}")).collect();
            println!("  {}", cells.join(", "));
        }
        println!("  d = {}", run.d);
    }
    Ok(())
}
