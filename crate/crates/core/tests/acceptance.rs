//! End-to-end acceptance criteria, one PASS/FAIL line each.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use covera::report::{run_check, without_timing, CheckSpec, COVERING_CASES};

fn owned(s: &str) -> String {
    s.to_string()
}

/// Runs the checks and returns the first failure.
fn run_all(checks: &[CheckSpec]) -> Result<(), String> {
    for (i, spec) in checks.iter().enumerate() {
        let r = run_check(spec, 7, i);
        if !r.passed {
            return Err(format!("{} {}: {}", r.name, r.target, r.witnesses.join("; ")));
        }
    }
    Ok(())
}

fn e8_dimensions() -> Result<(), String> {
    let start = Instant::now();
    run_all(&[CheckSpec::GradedDims { lattice: owned("E8"), min_weight: 0, max_weight: 2 }])?;
    let spent = start.elapsed();
    if spent > Duration::from_secs(30) {
        return Err(format!("took {spent:?}"));
    }
    Ok(())
}

fn covering_identity() -> Result<(), String> {
    let mut checks: Vec<CheckSpec> = COVERING_CASES
        .iter()
        .flat_map(|&(l, o)| (0..=2).map(move |w| CheckSpec::CoveringIdentity { lattice: owned(l), order: o, weight: w }))
        .collect();
    checks.push(CheckSpec::CoveringIdentity { lattice: owned("A3"), order: 2, weight: 3 });
    run_all(&checks)
}

fn coprime_collapse() -> Result<(), String> {
    let mut checks = Vec::new();
    for (l, o) in COVERING_CASES {
        let ring = if o == 3 { "F2" } else { "F3" };
        for w in 0..=2 {
            checks.push(CheckSpec::CoprimeCollapse { lattice: owned(l), order: o, ring: owned(ring), weight: w });
        }
    }
    run_all(&checks)
}

fn exceptional_dimensions() -> Result<(), String> {
    run_all(&[
        CheckSpec::ReducedDims { pair: owned("A2"), prime: 3 },
        CheckSpec::ReducedDims { pair: owned("A1"), prime: 2 },
        CheckSpec::NonCentralNormIdeal { lattice: owned("D4"), order: 3, prime: 3 },
    ])
}

fn va_axioms() -> Result<(), String> {
    let mut checks = Vec::new();
    for ring in ["Z", "F3"] {
        checks.push(CheckSpec::Borcherds { lattice: owned("A2"), ring: owned(ring), wmax: 6, max_weight: 3, triples: 500 });
        checks.push(CheckSpec::Borcherds { lattice: owned("A1"), ring: owned(ring), wmax: 6, max_weight: 3, triples: 500 });
    }
    for l in ["A1", "A2", "D4"] {
        checks.push(CheckSpec::VaBasicAxioms { lattice: owned(l), wmax: 3 });
    }
    run_all(&checks)
}

fn chevalley_action() -> Result<(), String> {
    let checks: Vec<CheckSpec> = ["Z", "F2", "F3"]
        .iter()
        .map(|r| CheckSpec::ChevalleyAction { lattice: owned("A2"), ring: owned(r), wmax: 2, pairs: 200 })
        .collect();
    run_all(&checks)
}

fn real_form() -> Result<(), String> {
    run_all(&[
        CheckSpec::RealFormPositivity { lattice: owned("A1"), weight: 1 },
        CheckSpec::RealFormPositivity { lattice: owned("A1"), weight: 2 },
        CheckSpec::RealFormPositivity { lattice: owned("E8"), weight: 1 },
        CheckSpec::RealFormBrackets { lattice: owned("E8") },
    ])
}

fn regraded_lie() -> Result<(), String> {
    run_all(&[
        CheckSpec::Weight3Lie { lattice: owned("A1"), jacobi_samples: None },
        CheckSpec::Weight3Lie { lattice: owned("A2"), jacobi_samples: None },
        CheckSpec::Weight3Lie { lattice: owned("E8"), jacobi_samples: Some(5000) },
        CheckSpec::AffineCommutator { lattice: owned("A1"), range: 2, wmax: 3 },
        CheckSpec::AffineCommutator { lattice: owned("A2"), range: 2, wmax: 3 },
    ])
}

fn cube_transversal() -> Result<(), String> {
    run_all(&[
        CheckSpec::CubeTransversal { lattice: owned("A1"), weight: 2, samples: 50 },
        CheckSpec::CubeModeSupport { lattice: owned("A1"), max_weight: 2 },
    ])
}

fn run_binary() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_covera"))
        .args(["all", "--seed", "7"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    without_timing(&text).map_err(|e| e.to_string())
}

fn determinism() -> Result<(), String> {
    let (a, b) = (run_binary()?, run_binary()?);
    if a != b {
        let line = a.lines().zip(b.lines()).position(|(x, y)| x != y).unwrap_or(0);
        return Err(format!("outputs differ at line {}", line + 1));
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Result<(), String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("E8 graded dimensions 1, 248, 4124 by series and enumeration", e8_dimensions),
        ("covering identity on (D4,3) (E6,2) (A3,2) (D5,2)", covering_identity),
        ("coprime collapse over F2 and F3", coprime_collapse),
        ("exceptional reduced algebras and non-central ideal of G2 in char 3", exceptional_dimensions),
        ("vertex algebra axioms", va_axioms),
        ("Chevalley generators act on the integral form", chevalley_action),
        ("real form positivity and bracket table", real_form),
        ("regraded weight-3 Lie algebra over F3", regraded_lie),
        ("eta transversal on the A1 cube", cube_transversal),
        ("byte-identical reports for `all --seed 7`", determinism),
    ];
    let mut failed = 0;
    for (k, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS {} {label} ({:.1}s)", k + 1, start.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {label}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
