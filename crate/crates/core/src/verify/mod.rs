//! Numeric property suites.
//!
//! Each suite samples random states with a seeded [`Sampler`] and records,
//! per property, the worst violation seen against a fixed tolerance. The
//! CLI `verify` verb and the acceptance tests both run these.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::params::ParamPair;
use crate::random::Sampler;

mod entropy;
mod gate_power;
mod jsd;
mod magic;
mod stabilizer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Entropy,
    Jsd,
    Magic,
    GatePower,
    Stabilizer,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Entropy,
        Suite::Jsd,
        Suite::Magic,
        Suite::GatePower,
        Suite::Stabilizer,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Entropy => "entropy",
            Suite::Jsd => "jsd",
            Suite::Magic => "magic",
            Suite::GatePower => "gatepower",
            Suite::Stabilizer => "stabilizer",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "entropy" => Ok(Suite::Entropy),
            "jsd" => Ok(Suite::Jsd),
            "magic" => Ok(Suite::Magic),
            "gatepower" => Ok(Suite::GatePower),
            "stabilizer" => Ok(Suite::Stabilizer),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random samples per property (the default matches the 10^3 ensembles).
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 20240601,
            samples: 1000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<Case>,
}

impl Report {
    fn new(suite: &str, cases: Vec<Case>) -> Self {
        let passed = cases.iter().filter(|c| c.passed).count();
        Self {
            suite: suite.to_string(),
            passed,
            failed: cases.len() - passed,
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let tag = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "{}: {tag} ({})", c.name, c.detail)?;
        }
        write!(
            f,
            "suite {}: {} passed, {} failed",
            self.suite, self.passed, self.failed
        )
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Report {
    let cases = match suite {
        Suite::Entropy => entropy::cases(cfg),
        Suite::Jsd => jsd::cases(cfg),
        Suite::Magic => magic::cases(cfg),
        Suite::GatePower => gate_power::cases(cfg),
        Suite::Stabilizer => stabilizer::cases(cfg),
        Suite::All => Suite::EACH
            .iter()
            .flat_map(|s| {
                run(*s, cfg).cases.into_iter().map(move |mut c| {
                    c.name = format!("{}/{}", s.name(), c.name);
                    c
                })
            })
            .collect(),
    };
    Report::new(suite.name(), cases)
}

/// Worst-violation accumulator for one property.
pub(crate) struct Tracker {
    worst: f64,
    count: usize,
    failure: Option<String>,
}

impl Tracker {
    pub fn new() -> Self {
        Self {
            worst: f64::NEG_INFINITY,
            count: 0,
            failure: None,
        }
    }

    /// Records a violation amount (positive = bad, compared against the tolerance later).
    pub fn record(&mut self, violation: f64) {
        self.count += 1;
        if violation.is_nan() {
            self.worst = f64::INFINITY;
        } else {
            self.worst = self.worst.max(violation);
        }
    }

    /// `|a - b|`
    pub fn equal(&mut self, a: f64, b: f64) {
        self.record((a - b).abs());
    }

    /// `|a - b| / max(1, |a|, |b|)`: absolute near unit scale, relative
    /// for quantities that blow up (large kernels at large alpha).
    pub fn close(&mut self, a: f64, b: f64) {
        self.record((a - b).abs() / 1f64.max(a.abs()).max(b.abs()));
    }

    /// `a <= b`, recorded as `a - b`.
    pub fn at_most(&mut self, a: f64, b: f64) {
        self.record(a - b);
    }

    pub fn flag(&mut self, ok: bool) {
        self.record(if ok { 0.0 } else { 1.0 });
    }

    pub fn error(&mut self, e: impl fmt::Display) {
        self.count += 1;
        self.worst = f64::INFINITY;
        self.failure.get_or_insert_with(|| e.to_string());
    }

    pub fn finish(self, name: &str, tol: f64) -> Case {
        let passed = self.failure.is_none() && self.count > 0 && self.worst <= tol;
        let detail = match &self.failure {
            Some(e) => format!("{} checks, error: {e}", self.count),
            None => format!("{} checks, worst {:.3e}, tol {:.0e}", self.count, self.worst, tol),
        };
        Case {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Informational case that always passes.
pub(crate) fn note(name: &str, detail: String) -> Case {
    Case {
        name: name.to_string(),
        passed: true,
        detail,
    }
}

/// Parameter regimes used across suites.
pub(crate) struct Regimes;

impl Regimes {
    pub fn alpha_below_one(s: &mut Sampler) -> f64 {
        s.uniform_in(0.05, 0.95)
    }

    pub fn alpha_above_one(s: &mut Sampler) -> f64 {
        s.uniform_in(1.05, 3.0)
    }

    pub fn alpha_between_one_two(s: &mut Sampler) -> f64 {
        s.uniform_in(1.05, 1.95)
    }

    /// Nonzero beta in `[lo, hi]`, away from zero.
    pub fn beta_in(s: &mut Sampler, lo: f64, hi: f64) -> f64 {
        loop {
            let b = s.uniform_in(lo, hi);
            if b.abs() > 1e-2 {
                return b;
            }
        }
    }

    /// Any admissible pair.
    pub fn any(s: &mut Sampler) -> ParamPair {
        let a = if s.uniform() < 0.5 {
            Self::alpha_below_one(s)
        } else {
            Self::alpha_above_one(s)
        };
        ParamPair::new(a, Self::beta_in(s, -3.0, 3.0)).expect("admissible")
    }

    /// `0 < alpha < 1`, `beta <= 1`.
    pub fn lower_monotone(s: &mut Sampler) -> ParamPair {
        ParamPair::new(Self::alpha_below_one(s), Self::beta_in(s, -3.0, 1.0)).expect("admissible")
    }

    /// `alpha > 1`, `beta >= 1`.
    pub fn lipschitz(s: &mut Sampler) -> ParamPair {
        ParamPair::new(Self::alpha_above_one(s), s.uniform_in(1.0, 3.0)).expect("admissible")
    }

    /// `alpha in (0,1) u (1,2)`.
    pub fn dual(s: &mut Sampler) -> ParamPair {
        let a = if s.uniform() < 0.5 {
            Self::alpha_below_one(s)
        } else {
            Self::alpha_between_one_two(s)
        };
        ParamPair::new(a, Self::beta_in(s, -3.0, 3.0)).expect("admissible")
    }

    /// `1 < alpha < 2`, `beta <= 1`.
    pub fn upper_monotone(s: &mut Sampler) -> ParamPair {
        ParamPair::new(Self::alpha_between_one_two(s), Self::beta_in(s, -3.0, 1.0)).expect("admissible")
    }

    /// One representative per sign quadrant of `(1 - alpha, beta)`.
    pub fn quadrants() -> [ParamPair; 4] {
        [
            ParamPair::new(0.5, 2.0).unwrap(),
            ParamPair::new(0.5, -2.0).unwrap(),
            ParamPair::new(1.5, 2.0).unwrap(),
            ParamPair::new(1.5, -2.0).unwrap(),
        ]
    }
}

/// Qubit depolarizing channel `rho -> (1 - q) rho + q I/2`.
pub(crate) fn depolarize(rho: &crate::state::DensityMatrix, q: f64) -> crate::state::DensityMatrix {
    let d = rho.dim();
    crate::state::DensityMatrix::mixture(&[(1.0 - q, rho), (q, &crate::state::DensityMatrix::maximally_mixed(d))])
        .expect("depolarized state is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn tracker_semantics() {
        let mut t = Tracker::new();
        t.equal(1.0, 1.0 + 1e-12);
        t.at_most(0.5, 1.0);
        assert!(t.finish("x", 1e-10).passed);
        let mut t = Tracker::new();
        t.record(f64::NAN);
        assert!(!t.finish("x", 1.0).passed);
        assert!(!Tracker::new().finish("empty", 1.0).passed);
    }
}
