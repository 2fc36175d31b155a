//! 1/p-surgeries on the trefoil.
//!
//! The cone grows with p — each tower splits into p copies with fractional
//! grading shifts — but the d-invariant does not move. Standardization
//! failures are values, not panics: for p > 1 the mod-UV quotient of this
//! cone falls apart into components (the mixed arrows die with UV), while
//! the extended ring still finishes the job.

use cablecone::cli::pipeline;
use cablecone::knot_complex::KnotComplex;
use cablecone::mapping_cone::SurgerySpec;

fn main() -> cablecone::Result<()> {
    let trefoil = KnotComplex::staircase_t2(3)?;
    for p in 1..=3 {
        let run = pipeline(&trefoil, 1, SurgerySpec::OneOverP { p }, None)?;
        println!("surgery 1/{p}");
        println!("  cone {} generators, {} after reduction", run.cone_len, run.uv.len());
        println!("  d = {}", run.d);
        match &run.z {
            Ok(sz) => {
                let seq: Vec<String> =
                    sz.sequence.0.iter().map(|b| b.to_string()).collect();
                println!("  mod UV: C({})", seq.join(", "));
            }
            Err(e) => println!("  mod UV: {e}"),
        }
        let sx = run.x.expect("the extended ring standardizes these cones");
        let steps: Vec<String> = sx
            .sequence
            .0
            .iter()
            .map(|p| {
                let sgn = if p.sign < 0 { '-' } else { '+' };
                format!("{sgn}({},{})", p.i, p.j)
            })
            .collect();
        println!("  extended ring: {}", steps.join(" "));
    }
    Ok(())
}
