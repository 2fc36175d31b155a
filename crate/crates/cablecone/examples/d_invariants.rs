//! d-invariants of +1-surgeries against the rank oracle.
//!
//! Two computations that share no code path: the pipeline reads d off the
//! tower structure of the reduced cone, while `d_oracle` never builds a
//! cone at all — it counts ranks of the V_0 map on the source complex and
//! returns -2 V_0. The staircase family exercises both.

use cablecone::cli::pipeline;
use cablecone::knot_complex::KnotComplex;
use cablecone::mapping_cone::SurgerySpec;
use cablecone::reduction::{d_oracle, v_zero};

fn main() -> cablecone::Result<()> {
    for q in [1i64, 3, 5, 7, 11] {
        let source = KnotComplex::staircase_t2(q)?;
        let run = pipeline(&source, 1, SurgerySpec::PlusOne, None)?;
        let v0 = v_zero(&source)?;
        let oracle = d_oracle(&source)?;
        let tag = if run.d == oracle { "agree" } else { "DISAGREE" };
        println!(
            "T(2,{q}): V_0 = {v0}, oracle d = {oracle}, pipeline d = {} ({tag})",
            run.d
        );
    }
    Ok(())
}
