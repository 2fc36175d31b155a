//! File format, command-line pipeline, reports, and the verification suites.
//!
//! The pipeline is a pure function of its flags: build the surgery cone,
//! reduce it, rewrite in two variables, standardize over both rings, read
//! off the invariants. Reports serialize byte-identically across runs.

pub mod verify;

use crate::knot_complex::{KnotComplex, KnotGen};
use crate::local_equiv::{
    phi_from_standard_x, phi_from_standard_z, standardize_x, standardize_z, to_uv_presentation,
    StandardizedX, StandardizedZ,
};
use crate::mapping_cone::{build_cone, SurgerySpec};
use crate::reduction::{d_invariant, reduce, Reduced};
use crate::{Error, Result};
use num::{BigInt, BigRational, Signed};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

// ---------------------------------------------------------------------------
// Complex file format.
// ---------------------------------------------------------------------------

/// Parse the line format: `gen <name> <gr_u> <gr_v>`, `arrow <from> <to>
/// <u-power> <v-power>`, `#` comments. Both ASCII `-` and the typeset
/// minus sign are accepted; validation failures abort the parse.
pub fn parse_cfk(text: &str) -> Result<KnotComplex> {
    let text = text.replace('\u{2212}', "-");
    let mut gens: Vec<KnotGen> = Vec::new();
    let mut pending: Vec<(String, String, BigInt, BigInt, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let syntax = |msg: &str| Error::Input(format!("line {lineno}: {msg}: `{line}`"));
        match tok[0] {
            "gen" => {
                if tok.len() != 4 {
                    return Err(syntax("expected `gen <name> <gr_u> <gr_v>`"));
                }
                let gr_u: BigInt =
                    tok[2].parse().map_err(|_| syntax("bad integer grading"))?;
                let gr_v: BigInt =
                    tok[3].parse().map_err(|_| syntax("bad integer grading"))?;
                gens.push(KnotGen { name: tok[1].to_string(), gr_u, gr_v });
            }
            "arrow" => {
                if tok.len() != 5 {
                    return Err(syntax("expected `arrow <from> <to> <u> <v>`"));
                }
                let u: BigInt = tok[3].parse().map_err(|_| syntax("bad exponent"))?;
                let v: BigInt = tok[4].parse().map_err(|_| syntax("bad exponent"))?;
                if u.is_negative() || v.is_negative() {
                    return Err(syntax("arrow exponents must be nonnegative"));
                }
                pending.push((tok[1].to_string(), tok[2].to_string(), u, v, lineno));
            }
            _ => return Err(syntax("unknown directive")),
        }
    }
    let mut arrows = Vec::new();
    for (from, to, u, v, lineno) in pending {
        let find = |name: &str| gens.iter().position(|g| g.name == name);
        let s = find(&from)
            .ok_or_else(|| Error::Input(format!("line {lineno}: unknown generator `{from}`")))?;
        let t = find(&to)
            .ok_or_else(|| Error::Input(format!("line {lineno}: unknown generator `{to}`")))?;
        arrows.push((s, crate::coefficients::UVMonomial { u, v }, t));
    }
    let c = KnotComplex::from_arrows(gens, arrows);
    let errs = c.validate();
    if !errs.is_empty() {
        return Err(Error::Input(format!("invalid complex: {}", errs.join("; "))));
    }
    Ok(c)
}

/// Inverse of [`parse_cfk`] on valid complexes: generator lines in storage
/// order, arrow lines per source in row order, ASCII minus only.
pub fn serialize_cfk(c: &KnotComplex) -> String {
    let mut out = String::new();
    for g in &c.gens {
        let _ = writeln!(out, "gen {} {} {}", g.name, g.gr_u, g.gr_v);
    }
    for (s, row) in c.diff.iter().enumerate() {
        for (m, t) in row {
            let _ = writeln!(out, "arrow {} {} {} {}", c.gens[s].name, c.gens[*t].name, m.u, m.v);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Pipeline.
// ---------------------------------------------------------------------------

/// Everything one computation produces, before report assembly.
/// Standardization failures are carried as values: the caller decides
/// whether an incomplete normal form is an error.
pub struct Pipeline {
    pub cone_len: usize,
    pub reduced: Reduced,
    pub uv: KnotComplex,
    pub z: std::result::Result<StandardizedZ, Error>,
    pub x: std::result::Result<StandardizedX, Error>,
    pub d: BigRational,
}

pub fn pipeline(
    source: &KnotComplex,
    n: i64,
    surgery: SurgerySpec,
    window: Option<(i64, i64)>,
) -> Result<Pipeline> {
    let cone = build_cone(source, n, surgery, window)?;
    let cone_len = cone.len();
    let reduced = reduce(&cone);
    let uv = to_uv_presentation(&reduced.complex)?;
    let z = standardize_z(&uv);
    let x = standardize_x(&uv);
    let d = d_invariant(&reduced.complex)?;
    Ok(Pipeline { cone_len, reduced, uv, z, x, d })
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub knot: String,
    pub cable_n: i64,
    pub surgery: String,
    pub window: [i64; 2],
    pub mirror: bool,
    /// The source complex in file format, one line per entry.
    pub cfk: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCounts {
    pub cone: usize,
    pub reduced: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifferentialEntry {
    pub from: String,
    pub to: String,
    pub du: i128,
    pub dv: i128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardizationStatus {
    pub z: String,
    pub x: String,
    pub dropped_z: Vec<String>,
    pub dropped_x: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub cancelled_pairs: usize,
    pub events_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub generator_counts: GeneratorCounts,
    pub reduced_differential: Vec<DifferentialEntry>,
    pub standard_sequence: Vec<i128>,
    /// Edges over the extended ring as componentwise-signed `[i, j]` pairs.
    pub standard_sequence_x: Vec<[i128; 2]>,
    pub phi: Vec<[i128; 2]>,
    pub phi_x: Vec<[i128; 3]>,
    pub d_invariant: String,
    pub standardization: StandardizationStatus,
    pub provenance: Provenance,
}

fn int128(x: &BigInt, what: &str) -> Result<i128> {
    i128::try_from(x.clone())
        .map_err(|_| Error::Input(format!("{what} overflows the report integer range")))
}

fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn fnv64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x1_0000_01b3);
    }
    h
}

/// Assemble the report for a finished pipeline. The second return value is
/// false when either standardization is incomplete (exit code 2).
pub fn build_report(
    echo: InputEcho,
    run: &Pipeline,
) -> Result<(Report, bool)> {
    let red = &run.reduced.complex;
    let mut reduced_differential = Vec::new();
    for s in 0..red.len() {
        for (pow, t) in &red.diff[s] {
            let (di, dj) = red.drops(s, pow, *t);
            reduced_differential.push(DifferentialEntry {
                from: red.gens[s].name.clone(),
                to: red.gens[*t].name.clone(),
                du: int128(&di, "filtration drop")?,
                dv: int128(&dj.to_integer(), "filtration drop")?,
            });
        }
    }

    let mut standard_sequence = Vec::new();
    let mut phi = Vec::new();
    let z_status;
    let mut dropped_z = Vec::new();
    match &run.z {
        Ok(sz) => {
            z_status = "complete".to_string();
            dropped_z = sz.dropped.clone();
            for b in &sz.sequence.0 {
                standard_sequence.push(int128(b, "standard sequence entry")?);
            }
            for (i, v) in phi_from_standard_z(&sz.sequence) {
                phi.push([int128(&i, "phi index")?, int128(&v, "phi value")?]);
            }
        }
        Err(e) => z_status = format!("incomplete: {e}"),
    }

    let mut standard_sequence_x = Vec::new();
    let mut phi_x = Vec::new();
    let x_status;
    let mut dropped_x = Vec::new();
    match &run.x {
        Ok(sx) => {
            x_status = "complete".to_string();
            dropped_x = sx.dropped.clone();
            for p in &sx.sequence.0 {
                let sign = p.sign as i128;
                standard_sequence_x.push([
                    sign * int128(&p.i, "sequence edge")?,
                    sign * int128(&p.j, "sequence edge")?,
                ]);
            }
            for ((i, j), v) in phi_from_standard_x(&sx.sequence) {
                phi_x.push([
                    int128(&i, "phi index")?,
                    int128(&j, "phi index")?,
                    int128(&v, "phi value")?,
                ]);
            }
        }
        Err(e) => x_status = format!("incomplete: {e}"),
    }

    let mut log = String::new();
    for e in &run.reduced.events {
        let _ = write!(log, "{}>{}^{};", e.source, e.target, e.power);
    }
    let complete = run.z.is_ok() && run.x.is_ok();
    let report = Report {
        input: echo,
        generator_counts: GeneratorCounts { cone: run.cone_len, reduced: red.len() },
        reduced_differential,
        standard_sequence,
        standard_sequence_x,
        phi,
        phi_x,
        d_invariant: rational_string(&run.d),
        standardization: StandardizationStatus {
            z: z_status,
            x: x_status,
            dropped_z,
            dropped_x,
        },
        provenance: Provenance {
            cancelled_pairs: run.reduced.events.len(),
            events_digest: format!("{:016x}", fnv64(log.as_bytes())),
        },
    };
    Ok((report, complete))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Json,
    Text,
}

pub fn serialize_report(r: &Report, format: Emit) -> String {
    match format {
        Emit::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Emit::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "input: {} cable_n={} surgery={} window=[{},{}] mirror={}",
                r.input.knot,
                r.input.cable_n,
                r.input.surgery,
                r.input.window[0],
                r.input.window[1],
                r.input.mirror
            );
            let _ = writeln!(
                s,
                "generators: cone={} reduced={}",
                r.generator_counts.cone, r.generator_counts.reduced
            );
            for e in &r.reduced_differential {
                let _ = writeln!(s, "  d {} -> U^{} V^{} {}", e.from, e.du, e.dv, e.to);
            }
            let seq: Vec<String> = r.standard_sequence.iter().map(|b| b.to_string()).collect();
            let _ = writeln!(s, "standard_sequence: [{}] ({})", seq.join(","), r.standardization.z);
            let seqx: Vec<String> = r
                .standard_sequence_x
                .iter()
                .map(|p| format!("({},{})", p[0], p[1]))
                .collect();
            let _ = writeln!(
                s,
                "standard_sequence_x: [{}] ({})",
                seqx.join(","),
                r.standardization.x
            );
            for p in &r.phi {
                let _ = writeln!(s, "phi[{}] = {}", p[0], p[1]);
            }
            for p in &r.phi_x {
                let _ = writeln!(s, "phi[{},{}] = {}", p[0], p[1], p[2]);
            }
            let _ = writeln!(s, "d = {}", r.d_invariant);
            let _ = writeln!(
                s,
                "reduction: {} cancelled pairs, digest {}",
                r.provenance.cancelled_pairs, r.provenance.events_digest
            );
            s
        }
    }
}

// ---------------------------------------------------------------------------
// Command line.
// ---------------------------------------------------------------------------

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "cablecone",
    about = "Cable surgery cones: build, reduce, standardize, extract invariants",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Built-in knot, currently `torus:2,<odd q >= 1>`.
    #[arg(long)]
    pub knot: Option<String>,
    /// Path to a complex in the `gen`/`arrow` file format.
    #[arg(long)]
    pub cfk: Option<PathBuf>,
    /// Cable parameter n of the (n,1) pattern.
    #[arg(long, default_value_t = 1)]
    pub cable_n: i64,
    /// Surgery coefficient: `1` or `1/<p>`.
    #[arg(long, default_value = "1")]
    pub surgery: String,
    /// Tower window `a,b`; defaults to the smallest faithful range.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Dualize the input complex first (mirror knot).
    #[arg(long)]
    pub mirror: bool,
    /// Report format: `json` or `text`.
    #[arg(long, default_value = "text")]
    pub emit: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a named check suite: paper-value checks, structural properties,
    /// or oracle recomputations.
    Verify {
        /// One of `paper`, `properties`, `oracles`, `all`.
        suite: String,
    },
}

pub fn parse_surgery(s: &str) -> Result<SurgerySpec> {
    let s = s.replace('\u{2212}', "-");
    if s == "1" {
        return Ok(SurgerySpec::PlusOne);
    }
    if let Some(rest) = s.strip_prefix("1/") {
        let p: i64 = rest
            .parse()
            .map_err(|_| Error::Input(format!("bad surgery denominator `{rest}`")))?;
        if p < 1 {
            return Err(Error::Input(format!("surgery denominator must be >= 1, got {p}")));
        }
        return Ok(SurgerySpec::OneOverP { p });
    }
    Err(Error::Input(format!("surgery must be `1` or `1/<p>`, got `{s}`")))
}

pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let s = s.replace('\u{2212}', "-");
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Input(format!("window must be `a,b`, got `{s}`")));
    }
    let a: i64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("bad window bound `{}`", parts[0])))?;
    let b: i64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("bad window bound `{}`", parts[1])))?;
    Ok((a, b))
}

fn parse_knot_spec(s: &str) -> Result<KnotComplex> {
    if let Some(rest) = s.strip_prefix("torus:2,") {
        let q: i64 = rest
            .parse()
            .map_err(|_| Error::Input(format!("bad torus parameter `{rest}`")))?;
        return KnotComplex::staircase_t2(q);
    }
    Err(Error::Input(format!(
        "unknown knot spec `{s}`; supported: torus:2,<odd q>"
    )))
}

/// Run the compute pipeline for parsed flags. Returns the report and
/// whether both standardizations completed.
pub fn run_compute(cli: &Cli) -> Result<(Report, bool, Emit)> {
    let emit = match cli.emit.as_str() {
        "json" => Emit::Json,
        "text" => Emit::Text,
        other => return Err(Error::Input(format!("emit must be json or text, got `{other}`"))),
    };
    let (mut source, knot_label) = match (&cli.knot, &cli.cfk) {
        (Some(spec), None) => (parse_knot_spec(spec)?, spec.clone()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            (parse_cfk(&text)?, path.display().to_string())
        }
        _ => {
            return Err(Error::Input(
                "exactly one of --knot and --cfk must be given".into(),
            ))
        }
    };
    if cli.mirror {
        source = source.dual();
    }
    let surgery = parse_surgery(&cli.surgery)?;
    let window = cli.window.as_deref().map(parse_window).transpose()?;
    let run = pipeline(&source, cli.cable_n, surgery, window)?;
    let echo = InputEcho {
        knot: knot_label,
        cable_n: cli.cable_n,
        surgery: surgery.to_string(),
        window: [run.reduced.complex.meta.window.0, run.reduced.complex.meta.window.1],
        mirror: cli.mirror,
        cfk: serialize_cfk(&source).lines().map(str::to_string).collect(),
    };
    let (report, complete) = build_report(echo, &run)?;
    Ok((report, complete, emit))
}

/// Entry point behind the binary: exit 0 on success, 1 on input errors,
/// 2 when a partial report was emitted with standardization incomplete.
pub fn main_entry() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are success, not input errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Some(Command::Verify { ref suite }) => match verify::run_suite(suite) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        None => match run_compute(&cli) {
            Ok((report, complete, emit)) => {
                print!("{}", serialize_report(&report, emit));
                if complete {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(2)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cfk_grammar_round_trip() {
        let text = "# trefoil staircase\ngen a1 -1 -1\ngen b1 \u{2212}2 0\ngen b2 0 -2\narrow a1 b1 0 1\narrow a1 b2 1 0\n";
        let c = parse_cfk(text).unwrap();
        let t = KnotComplex::staircase_t2(3).unwrap();
        assert!(crate::knot_complex::graded_isomorphism(&c, &t).is_some());
        let echoed = serialize_cfk(&c);
        let c2 = parse_cfk(&echoed).unwrap();
        assert_eq!(c.gens, c2.gens);
        assert_eq!(c.diff, c2.diff);
        assert!(!echoed.contains('\u{2212}'));
    }

    #[test]
    fn empty_file_is_the_empty_complex() {
        let c = parse_cfk("").unwrap();
        assert_eq!(c.len(), 0);
    }

    #[test]
    fn arrow_without_generators_is_rejected() {
        assert!(matches!(parse_cfk("arrow a b 1 0"), Err(Error::Input(_))));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let text = "gen a 0 0\ngen a 0 0";
        assert!(matches!(parse_cfk(text), Err(Error::Input(_))));
    }

    #[test]
    fn negative_arrow_exponents_are_rejected() {
        let text = "gen a 0 0\ngen b 1 -1\narrow a b -1 0";
        assert!(matches!(parse_cfk(text), Err(Error::Input(_))));
    }

    #[test]
    fn surgery_and_window_parsing() {
        assert_eq!(parse_surgery("1").unwrap(), SurgerySpec::PlusOne);
        assert_eq!(parse_surgery("1/3").unwrap(), SurgerySpec::OneOverP { p: 3 });
        assert!(parse_surgery("2").is_err());
        assert!(parse_surgery("1/0").is_err());
        assert_eq!(parse_window("-2,5").unwrap(), (-2, 5));
        assert_eq!(parse_window("\u{2212}2, 5").unwrap(), (-2, 5));
        assert!(parse_window("3").is_err());
    }

    fn trefoil_cli(n: i64) -> Cli {
        Cli {
            command: None,
            knot: Some("torus:2,3".into()),
            cfk: None,
            cable_n: n,
            surgery: "1".into(),
            window: None,
            mirror: false,
            emit: "json".into(),
        }
    }

    #[test]
    fn trefoil_cable_two_report() {
        let (report, complete, _) = run_compute(&trefoil_cli(2)).unwrap();
        assert!(complete);
        assert_eq!(report.standard_sequence, vec![-1, 2, 1, -1, -2, 1]);
        assert_eq!(report.generator_counts.cone, 15);
        assert_eq!(report.generator_counts.reduced, 7);
        assert_eq!(report.d_invariant, "-2");
        assert_eq!(report.standardization.z, "complete");
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let (r1, _, _) = run_compute(&trefoil_cli(2)).unwrap();
        let (r2, _, _) = run_compute(&trefoil_cli(2)).unwrap();
        assert_eq!(
            serialize_report(&r1, Emit::Json),
            serialize_report(&r2, Emit::Json)
        );
        assert_eq!(
            serialize_report(&r1, Emit::Text),
            serialize_report(&r2, Emit::Text)
        );
    }

    #[test]
    fn json_report_round_trips() {
        let (report, _, _) = run_compute(&trefoil_cli(1)).unwrap();
        let s = serialize_report(&report, Emit::Json);
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn unknot_report_is_trivial() {
        let mut cli = trefoil_cli(1);
        cli.knot = Some("torus:2,1".into());
        let (report, complete, _) = run_compute(&cli).unwrap();
        assert!(complete);
        assert!(report.standard_sequence.is_empty());
        assert_eq!(report.d_invariant, "0");
    }

    #[test]
    fn mirror_flag_dualizes() {
        let mut cli = trefoil_cli(1);
        cli.mirror = true;
        // +1 surgery on the mirror trefoil cable: d is no longer -2.
        let (report, _, _) = run_compute(&cli).unwrap();
        assert_ne!(report.d_invariant, "-2");
    }

    #[test]
    fn input_echo_parses_back_to_the_source() {
        let (report, _, _) = run_compute(&trefoil_cli(2)).unwrap();
        let c = parse_cfk(&report.input.cfk.join("\n")).unwrap();
        let t = KnotComplex::staircase_t2(3).unwrap();
        assert_eq!(c.gens, t.gens);
        assert_eq!(c.diff, t.diff);
    }
}
