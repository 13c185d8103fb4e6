use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::constructions::albanese::{AlbaneseData, CoveringReport};
use crate::constructions::bdf::ActionDescriptor;
use crate::homology::{FibrationSequence, OpenConstraints};
use crate::surface::{BmyClass, ExactVolume, NefReport};
use crate::torus::ProductPoint;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gamma,
    Lambda,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Gamma => "Γ",
            Family::Lambda => "Λ",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gamma => "gamma",
            Family::Lambda => "lambda",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCurve {
    pub name: String,
    pub origin: String,
    pub self_intersection: i64,
    /// `K·T`.
    pub k_dot: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Invariants {
    pub chi: i64,
    pub k_squared: i64,
    pub boundary: Vec<BoundaryCurve>,
    pub c1bar_squared: i64,
    pub c2bar: i64,
    pub bmy: BmyClass,
    pub nef: NefReport,
    pub volume: ExactVolume,
    pub cusps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCurve {
    pub name: String,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpstairsSummary {
    pub graph_curves: Vec<NamedCurve>,
    pub vertical_fibers: usize,
    pub marked_points: usize,
    /// Least member of each orbit of marked points, in canonical order.
    pub orbit_representatives: Vec<ProductPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub name: String,
    pub albanese_base_point: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSummary {
    pub chi: i64,
    pub k_squared: i64,
    /// Self-intersections of the images of the boundary orbits before blowing up.
    pub boundary_images: BTreeMap<String, i64>,
    pub singular_points: Vec<SingularPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberComponent {
    pub name: String,
    pub genus: u32,
    pub in_boundary: bool,
    /// Intersection with each boundary component it meets.
    pub boundary_meetings: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularFiber {
    pub base_point: String,
    pub components: Vec<FiberComponent>,
    /// Boundary points on the components that survive in `X ∖ D`.
    pub punctures: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub family: Family,
    pub generic_base_point: String,
    pub generic_meetings: BTreeMap<String, i64>,
    pub generic_punctures: i64,
    pub singular_fiber_count: usize,
    pub singular_fibers: Vec<SingularFiber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub schema_version: u32,
    pub family: Family,
    pub n: u64,
    pub pass: bool,
    pub invariants: Option<Invariants>,
    pub upstairs: Option<UpstairsSummary>,
    pub quotient: Option<QuotientSummary>,
    pub bielliptic_type: Option<u8>,
    pub bielliptic_descriptor: Option<ActionDescriptor>,
    pub fibers: Option<FiberReport>,
    pub albanese: Option<AlbaneseData>,
    pub homology: Option<OpenConstraints>,
    pub fibration: Option<FibrationSequence>,
    pub tower: Vec<CoveringReport>,
    pub assumptions: Vec<String>,
    pub checks: Vec<Check>,
}

impl ConstructionReport {
    pub(crate) fn empty(family: Family, n: u64) -> Self {
        ConstructionReport {
            schema_version: SCHEMA_VERSION,
            family,
            n,
            pass: false,
            invariants: None,
            upstairs: None,
            quotient: None,
            bielliptic_type: None,
            bielliptic_descriptor: None,
            fibers: None,
            albanese: None,
            homology: None,
            fibration: None,
            tower: Vec::new(),
            assumptions: vec![
                "the uniformizing lattice is neat; taken as given for n = 1 and inherited by the \
                 finite-index sublattices for n > 1, not verified here"
                    .into(),
            ],
            checks: Vec::new(),
        }
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let status = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "## {} family, n = {}: {status}\n", self.family.symbol(), self.n);
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "| quantity | value |");
            let _ = writeln!(out, "|---|---|");
            let _ = writeln!(out, "| χ(X) | {} |", inv.chi);
            let _ = writeln!(out, "| K² | {} |", inv.k_squared);
            for t in &inv.boundary {
                let _ = writeln!(out, "| {}² | {} |", t.name, t.self_intersection);
            }
            let _ = writeln!(out, "| c̄1² | {} |", inv.c1bar_squared);
            let _ = writeln!(out, "| c̄2 | {} |", inv.c2bar);
            let _ = writeln!(out, "| BMY | {} |", inv.bmy);
            let _ = writeln!(out, "| volume | {} |", inv.volume);
            let _ = writeln!(out, "| cusps | {} |", inv.cusps);
            if let Some(t) = self.bielliptic_type {
                let _ = writeln!(out, "| bielliptic type | {t} |");
            }
            if let Some(f) = &self.fibers {
                let _ = writeln!(out, "| generic fiber punctures | {} |", f.generic_punctures);
                let _ = writeln!(out, "| singular fibers | {} |", f.singular_fiber_count);
            }
            if let Some(h) = &self.homology {
                let _ = writeln!(out, "| b1(M) | {} |", h.b1_open);
                let _ = writeln!(out, "| b3(M) lower bound | {} |", h.b3_open_lower_bound);
            }
            let _ = writeln!(out, "\ncusps: {}\n", inv.cusps);
        }
        let _ = writeln!(out, "| check | result | detail |");
        let _ = writeln!(out, "|---|---|---|");
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "| {} | {mark} | {} |", c.name, c.detail.replace('|', "\\|"));
        }
        if !self.tower.is_empty() {
            let _ = writeln!(out, "\nCoverings:");
            for t in &self.tower {
                let _ = writeln!(out, "- {}", t.statement);
            }
        }
        let _ = writeln!(out, "\nAssumptions:");
        for a in &self.assumptions {
            let _ = writeln!(out, "- {a}");
        }
        out
    }
}

#[derive(Default)]
pub(crate) struct Checks(pub(crate) Vec<Check>);

impl Checks {
    pub(crate) fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub(crate) fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, name: &str, got: &T, expected: &T) -> bool {
        let passed = got == expected;
        let detail = if passed {
            format!("{got:?}")
        } else {
            format!("got {got:?}, expected {expected:?}")
        };
        self.record(name, passed, detail)
    }

    /// Unwraps a fallible step, recording a failed check under `name` on error.
    pub(crate) fn stage<T>(&mut self, name: &str, r: crate::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(name, false, e.to_string());
                None
            }
        }
    }
}
