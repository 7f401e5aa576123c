//! JSON input and report documents.
//!
//! Integers that can grow (form coefficients, invariant factors, torsion
//! numbers, class coordinates) are written as decimal strings. On input both
//! JSON numbers and decimal strings are accepted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clgroup::semigroup::{BasisKind, DeterminantalInvariants};
use clgroup::sweep::{SweepFailure, SweepSummary};
use clgroup::{BigInt, ClassGroupReport, ConeDescription, GroupStructure, Poset};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const TOOL: &str = "clgroup";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Arbitrary-precision integer carried as a JSON number or string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Int(BigInt::from(x))),
            Raw::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map(Int)
                .map_err(|_| serde::de::Error::custom(format!("`{s}` is not an integer"))),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn bigs(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum InputDocument {
    Poset {
        elements: Vec<String>,
        /// Pairs `[a, b]` meaning `a < b`; need not be covers.
        #[serde(default)]
        relations: Vec<(String, String)>,
    },
    Cone {
        dim: usize,
        forms: Vec<Vec<Int>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        interior_point: Option<Vec<Int>>,
        /// Divide each form by its content (and orient it by the interior
        /// point) instead of rejecting non-primitive forms.
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        normalize: bool,
    },
}

pub enum Instance {
    Poset(Poset),
    Cone(ConeDescription),
}

impl InputDocument {
    pub fn from_poset(p: &Poset) -> Self {
        let l = p.labels();
        InputDocument::Poset {
            elements: l.to_vec(),
            relations: p
                .covers()
                .iter()
                .map(|&(i, j)| (l[i].clone(), l[j].clone()))
                .collect(),
        }
    }

    pub fn from_cone(c: &ConeDescription) -> Self {
        InputDocument::Cone {
            dim: c.dim(),
            forms: c.forms().iter().map(|f| ints(f)).collect(),
            interior_point: c.interior_point().map(ints),
            normalize: false,
        }
    }

    pub fn instance(&self) -> clgroup::Result<Instance> {
        match self {
            InputDocument::Poset {
                elements,
                relations,
            } => Ok(Instance::Poset(Poset::build(elements, relations)?)),
            InputDocument::Cone {
                dim,
                forms,
                interior_point,
                normalize,
            } => {
                let forms = forms.iter().map(|f| bigs(f)).collect();
                let interior = interior_point.as_deref().map(bigs);
                let cone = if *normalize {
                    ConeDescription::from_raw(*dim, forms, interior)?
                } else {
                    ConeDescription::new(*dim, forms, interior)?
                };
                Ok(Instance::Cone(cone))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub rank: usize,
    pub invariant_factors: Vec<Int>,
}

impl From<&GroupStructure> for GroupDocument {
    fn from(g: &GroupStructure) -> Self {
        GroupDocument {
            rank: g.free_rank,
            invariant_factors: ints(&g.torsion_factors),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDocument {
    /// `spanning_tree`, `smith` or `closed_form`.
    pub basis: String,
    /// Names of the basis classes, when they have names.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis_elements: Vec<String>,
    pub coordinates: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub name: String,
    pub parameters: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_height_one_primes: Option<usize>,
    /// Rank of the class group.
    pub rank: usize,
    /// Invariant factors of the torsion part of the class group.
    pub invariant_factors: Vec<Int>,
    pub class_group: String,
    pub reduced_class_group: GroupDocument,
    pub canonical_class: Option<CanonicalDocument>,
    pub torsion_number: Int,
    pub gorenstein: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure: Option<bool>,
}

impl ReportDocument {
    pub fn from_report(
        input: Option<InputDocument>,
        family: Option<FamilyDocument>,
        report: &ClassGroupReport,
        poset: Option<&Poset>,
    ) -> Self {
        let canonical_class = report.canonical_in_basis.as_ref().map(|c| {
            let (basis, basis_elements) = match &c.basis {
                BasisKind::SpanningTree(edges) => {
                    let name = |v: clgroup::Vertex| match (v, poset) {
                        (clgroup::Vertex::Element(i), Some(p)) => p.labels()[i].clone(),
                        (clgroup::Vertex::Bottom, _) => "bottom".to_string(),
                        (clgroup::Vertex::Top, _) => "top".to_string(),
                        (v, None) => v.to_string(),
                    };
                    (
                        "spanning_tree",
                        edges
                            .iter()
                            .map(|e| format!("{} < {}", name(e.lower), name(e.upper)))
                            .collect(),
                    )
                }
                BasisKind::Smith => ("smith", Vec::new()),
            };
            CanonicalDocument {
                basis: basis.to_string(),
                basis_elements,
                coordinates: ints(&c.coords),
            }
        });
        ReportDocument {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            family,
            input,
            num_height_one_primes: Some(report.num_height_one_primes),
            rank: report.group.free_rank,
            invariant_factors: ints(&report.group.torsion_factors),
            class_group: report.group.to_string(),
            reduced_class_group: (&report.reduced_group).into(),
            canonical_class,
            torsion_number: Int(report.torsion_number.clone()),
            gorenstein: report.gorenstein,
            pure: report.pure,
        }
    }

    pub fn from_determinantal(family: FamilyDocument, inv: &DeterminantalInvariants<BigInt>) -> Self {
        let omega = &inv.canonical;
        let reduced = if omega == &BigInt::from(0) {
            GroupDocument {
                rank: 1,
                invariant_factors: vec![],
            }
        } else if omega == &BigInt::from(1) {
            GroupDocument {
                rank: 0,
                invariant_factors: vec![],
            }
        } else {
            GroupDocument {
                rank: 0,
                invariant_factors: vec![Int(omega.clone())],
            }
        };
        ReportDocument {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            family: Some(family),
            input: None,
            num_height_one_primes: None,
            rank: inv.rank,
            invariant_factors: vec![],
            class_group: "Z".to_string(),
            reduced_class_group: reduced,
            canonical_class: Some(CanonicalDocument {
                basis: "closed_form".to_string(),
                basis_elements: vec!["[P]".to_string()],
                coordinates: vec![Int(omega.clone())],
            }),
            torsion_number: Int(inv.torsion_number.clone()),
            gorenstein: inv.torsion_number == BigInt::from(0),
            pure: None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(f) = &self.family {
            let params: Vec<String> = f.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "family: {} {}", f.name, params.join(" "));
        }
        if let Some(n) = self.num_height_one_primes {
            let _ = writeln!(s, "height-one primes: {n}");
        }
        let _ = writeln!(s, "class group: {}", self.class_group);
        let reduced = GroupStructure {
            free_rank: self.reduced_class_group.rank,
            torsion_factors: bigs(&self.reduced_class_group.invariant_factors),
        };
        let _ = writeln!(s, "reduced class group: {reduced}");
        if let Some(c) = &self.canonical_class {
            let coords: Vec<String> = c.coordinates.iter().map(|x| x.0.to_string()).collect();
            let _ = writeln!(s, "canonical class ({}): ({})", c.basis, coords.join(", "));
        }
        let _ = writeln!(s, "torsion number: {}", self.torsion_number.0);
        let _ = writeln!(s, "gorenstein: {}", self.gorenstein);
        if let Some(p) = self.pure {
            let _ = writeln!(s, "pure: {p}");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TallyDocument {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDocument {
    pub index: usize,
    pub property: String,
    pub detail: String,
    pub poset: InputDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub properties: BTreeMap<String, TallyDocument>,
    pub pure_posets: usize,
    pub chain_pairs: usize,
    pub all_passed: bool,
    pub failures: Vec<FailureDocument>,
}

impl From<&SweepSummary> for SweepDocument {
    fn from(s: &SweepSummary) -> Self {
        SweepDocument {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            seed: s.config.seed,
            count: s.config.count,
            max_n: s.config.max_n,
            properties: s
                .tallies
                .iter()
                .map(|(p, t)| {
                    (
                        p.name().to_string(),
                        TallyDocument {
                            passed: t.passed,
                            failed: t.failed,
                            skipped: t.skipped,
                        },
                    )
                })
                .collect(),
            pure_posets: s.pure_count,
            chain_pairs: s.chain_pair_count,
            all_passed: s.all_passed(),
            failures: s.failures.iter().map(failure).collect(),
        }
    }
}

fn failure(f: &SweepFailure) -> FailureDocument {
    FailureDocument {
        index: f.index,
        property: f.property.name().to_string(),
        detail: f.detail.clone(),
        poset: InputDocument::from_poset(&f.poset),
    }
}

impl SweepDocument {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "sweep: count={} max_n={} seed={}",
            self.count, self.max_n, self.seed
        );
        for (name, t) in &self.properties {
            let _ = writeln!(
                s,
                "  {name:<20} passed {:>5}  failed {:>3}  skipped {:>5}",
                t.passed, t.failed, t.skipped
            );
        }
        let _ = writeln!(s, "pure posets: {}", self.pure_posets);
        let _ = writeln!(s, "disjoint chain pairs: {}", self.chain_pairs);
        let _ = writeln!(s, "result: {}", if self.all_passed { "PASS" } else { "FAIL" });
        for f in &self.failures {
            let _ = writeln!(
                s,
                "  poset #{} {}: {} {}",
                f.index,
                f.property,
                f.detail,
                serde_json::to_string(&f.poset).unwrap_or_default()
            );
        }
        s
    }
}
