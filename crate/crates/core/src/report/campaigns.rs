//! Preset campaigns behind the command-line subcommands.

use super::{Campaign, CheckSpec};

/// Lattices with a supported graph automorphism, with its order.
pub const COVERING_CASES: [(&str, u32); 4] = [("D4", 3), ("E6", 2), ("A3", 2), ("D5", 2)];

#[derive(Clone, Debug)]
pub struct Settings {
    pub ring: String,
    pub wmax: usize,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { ring: "Z".into(), wmax: 4, seed: 0 }
    }
}

fn campaign(name: &str, target: Option<String>, cfg: &Settings, checks: Vec<CheckSpec>) -> Campaign {
    Campaign { name: name.into(), target, ring: cfg.ring.clone(), wmax: cfg.wmax, seed: cfg.seed, checks }
}

fn owned(x: &str) -> String {
    x.to_string()
}

pub fn roots(types: &[String], cfg: &Settings) -> Campaign {
    let checks = types.iter().map(|t| CheckSpec::RootCount { lattice: t.clone() }).collect();
    campaign("roots", Some(types.join(",")), cfg, checks)
}

pub fn cocycle(types: &[String], cfg: &Settings) -> Campaign {
    let mut checks = Vec::new();
    for t in types {
        checks.push(CheckSpec::CocycleIdentities { lattice: t.clone() });
        for (l, o) in COVERING_CASES {
            if l == t {
                checks.push(CheckSpec::GraphLift { lattice: t.clone(), order: o });
            }
        }
    }
    campaign("cocycle-check", Some(types.join(",")), cfg, checks)
}

pub fn lie(lattice: &str, cfg: &Settings) -> Campaign {
    let checks = vec![CheckSpec::LieJacobi { lattice: lattice.into(), ring: cfg.ring.clone() }];
    campaign("lie", Some(lattice.into()), cfg, checks)
}

pub fn exceptional(pair: &str, prime: u32, cfg: &Settings) -> Campaign {
    let mut checks = vec![
        CheckSpec::ReducedDims { pair: pair.into(), prime },
        CheckSpec::ExceptionalAction { pair: pair.into(), prime },
    ];
    if (pair, prime) == ("A2", 3) {
        checks.push(CheckSpec::NonCentralNormIdeal { lattice: "D4".into(), order: 3, prime: 3 });
    }
    campaign("lie", Some(format!("({pair},{prime})")), cfg, checks)
}

/// Truncation used for axiom checks: weight spaces of high-rank lattices grow fast.
fn axiom_wmax(lattice: &str, wmax: usize) -> usize {
    let rank: usize = lattice[1..].parse().unwrap_or(8);
    let budget = match rank {
        0..=2 => 6,
        3..=4 => 4,
        _ => 2,
    };
    wmax.min(budget)
}

/// `dims` is the inclusive weight range for graded dimensions.
pub fn va(lattice: &str, dims: (usize, usize), cfg: &Settings) -> Campaign {
    let w = axiom_wmax(lattice, cfg.wmax);
    let checks = vec![
        CheckSpec::GradedDims { lattice: lattice.into(), min_weight: dims.0, max_weight: dims.1 },
        CheckSpec::VaBasicAxioms { lattice: lattice.into(), wmax: w.min(3) },
        CheckSpec::Borcherds { lattice: lattice.into(), ring: cfg.ring.clone(), wmax: w, max_weight: w.min(3), triples: 500 },
        CheckSpec::Virasoro { lattice: lattice.into(), wmax: w.min(2) },
        CheckSpec::OmegaIntegrality { lattice: lattice.into() },
    ];
    campaign("va", Some(lattice.into()), cfg, checks)
}

pub fn covering(lattice: &str, order: u32, weight: usize, cfg: &Settings) -> Campaign {
    let mut checks: Vec<CheckSpec> =
        (0..=weight).map(|n| CheckSpec::CoveringIdentity { lattice: lattice.into(), order, weight: n }).collect();
    for ring in ["F2", "F3"] {
        if !ring.ends_with(&order.to_string()) {
            for n in 0..=weight.min(2) {
                checks.push(CheckSpec::CoprimeCollapse { lattice: lattice.into(), order, ring: owned(ring), weight: n });
            }
        }
    }
    checks.push(CheckSpec::FixedSubVa { lattice: lattice.into(), order, wmax: 2 });
    campaign("covering", Some(format!("({lattice},{order})")), cfg, checks)
}

pub fn moonshine_desk(cfg: &Settings) -> Campaign {
    let checks = vec![
        CheckSpec::Binomials { range: 30 },
        CheckSpec::CubeModeSupport { lattice: owned("A1"), max_weight: 2 },
        CheckSpec::CubeTransversal { lattice: owned("A1"), weight: 2, samples: 50 },
        CheckSpec::CubeQuotientDim { lattice: owned("E8") },
        CheckSpec::Weight3Lie { lattice: owned("A1"), jacobi_samples: None },
        CheckSpec::Weight3Lie { lattice: owned("A2"), jacobi_samples: None },
        CheckSpec::Weight3Lie { lattice: owned("E8"), jacobi_samples: Some(5000) },
        CheckSpec::AffineCommutator { lattice: owned("A1"), range: 2, wmax: 3 },
        CheckSpec::AffineCommutator { lattice: owned("A2"), range: 2, wmax: 3 },
        CheckSpec::RealFormPositivity { lattice: owned("A1"), weight: 1 },
        CheckSpec::RealFormPositivity { lattice: owned("A1"), weight: 2 },
        CheckSpec::RealFormPositivity { lattice: owned("E8"), weight: 1 },
        CheckSpec::RealFormBrackets { lattice: owned("E8") },
        CheckSpec::TateQuotient { lattice: owned("D4"), order: 3, wmax: 2, samples: 100 },
    ];
    campaign("moonshine-desk", None, cfg, checks)
}

/// Every preset at acceptance scale.
pub fn all(cfg: &Settings) -> Campaign {
    let mut checks = Vec::new();
    let types: Vec<String> = ["A1", "A2", "A3", "D4", "D5", "E6", "E7", "E8"].iter().map(|t| owned(t)).collect();
    checks.extend(roots(&types, cfg).checks);
    checks.extend(cocycle(&types, cfg).checks);
    for t in ["A2", "D4", "E6"] {
        for ring in ["Z", "F2", "F3"] {
            checks.push(CheckSpec::LieJacobi { lattice: owned(t), ring: owned(ring) });
        }
    }
    for (pair, p) in [("A2", 3), ("A1", 2)] {
        checks.extend(exceptional(pair, p, cfg).checks);
    }
    checks.push(CheckSpec::GradedDims { lattice: owned("E8"), min_weight: 0, max_weight: 2 });
    checks.push(CheckSpec::GradedDims { lattice: owned("A2"), min_weight: 0, max_weight: cfg.wmax });
    for (l, w) in [("A1", 3), ("A2", 3), ("D4", 2)] {
        checks.push(CheckSpec::VaBasicAxioms { lattice: owned(l), wmax: w });
    }
    for ring in ["Z", "F3"] {
        checks.push(CheckSpec::Borcherds { lattice: owned("A2"), ring: owned(ring), wmax: 6, max_weight: 3, triples: 500 });
    }
    for l in ["A1", "A2", "E8"] {
        checks.push(CheckSpec::Virasoro { lattice: owned(l), wmax: 2 });
        checks.push(CheckSpec::OmegaIntegrality { lattice: owned(l) });
    }
    for ring in ["Z", "F2", "F3"] {
        checks.push(CheckSpec::ChevalleyAction { lattice: owned("A2"), ring: owned(ring), wmax: 2, pairs: 200 });
    }
    for (l, o) in COVERING_CASES {
        checks.extend(covering(l, o, 2, cfg).checks);
    }
    checks.push(CheckSpec::CoveringIdentity { lattice: owned("A3"), order: 2, weight: 3 });
    checks.extend(moonshine_desk(cfg).checks);
    campaign("all", None, cfg, checks)
}
