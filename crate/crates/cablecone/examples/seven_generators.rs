//! A reduction whose essential summand has seven generators.
//!
//! +1-surgery on T(2,11) with the 2-cable reduces to 31 generators. Over
//! the extended ring 24 of them pair off on locally trivial cycles and
//! drop; the surviving path is a seven-generator complex: a (3,2) and a
//! (4,2) step on each side of a central (1,0) pair.

use cablecone::cli::pipeline;
use cablecone::knot_complex::KnotComplex;
use cablecone::local_equiv::phi_from_standard_x;
use cablecone::mapping_cone::SurgerySpec;

fn main() -> cablecone::Result<()> {
    let source = KnotComplex::staircase_t2(11)?;
    let run = pipeline(&source, 2, SurgerySpec::PlusOne, None)?;
    println!("cone {} generators, {} after reduction", run.cone_len, run.uv.len());

    let sx = run.x.expect("the extended ring standardizes this cone");
    println!(
        "{} generators drop on split cycles, {} stay on the path",
        sx.dropped.len(),
        run.uv.len() - sx.dropped.len()
    );

    let steps: Vec<String> = sx
        .sequence
        .0
        .iter()
        .map(|p| {
            let sgn = if p.sign < 0 { '-' } else { '+' };
            format!("{sgn}({},{})", p.i, p.j)
        })
        .collect();
    println!("edge sequence: {}", steps.join(" "));

    let phi = phi_from_standard_x(&sx.sequence);
    for (i, j) in [(3i64, 2i64), (4, 2), (1, 0)] {
        let key = (i.into(), j.into());
        println!("phi_({i},{j}) = {}", phi.get(&key).cloned().unwrap_or_default());
    }
    Ok(())
}
