//! Seeded random-poset sweep checking the join-meet invariants.
//!
//! Each sampled poset is run through both torsion-number routes and checked
//! against the purity test, the rank formula, the cycle-coefficient range, the
//! column relations, the chain-length bound and tree independence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{self, ClassElement, Presentation};
use crate::joinmeet::{self, TreeRule};
use crate::poset::Poset;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// torsion number is 0 exactly when the poset is pure
    GorensteinIffPure,
    /// spanning-tree and Fitting-ideal torsion numbers coincide
    CrossMethod,
    /// the class group is free of rank |E(P̂)| − (n + 1)
    RankFormula,
    /// fundamental-cycle coefficients lie in {−1, 0, 1}
    CycleCoefficients,
    /// substituted classes satisfy every column relation
    ColumnRelations,
    /// d divides |a − b| for disjoint maximal chains of lengths a, b
    ChainBound,
    /// a different spanning tree gives the same verdicts
    TreeIndependence,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::GorensteinIffPure,
        Property::CrossMethod,
        Property::RankFormula,
        Property::CycleCoefficients,
        Property::ColumnRelations,
        Property::ChainBound,
        Property::TreeIndependence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::GorensteinIffPure => "gorenstein_iff_pure",
            Property::CrossMethod => "cross_method",
            Property::RankFormula => "rank_formula",
            Property::CycleCoefficients => "cycle_coefficients",
            Property::ColumnRelations => "column_relations",
            Property::ChainBound => "chain_bound",
            Property::TreeIndependence => "tree_independence",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one property on one poset. `None` means not applicable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct PosetCheck {
    pub poset: Poset,
    pub torsion_number: BigInt,
    pub pure: bool,
    pub chain_lengths: Option<(usize, usize)>,
    pub verdicts: Vec<Verdict>,
}

impl PosetCheck {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed != Some(false))
    }

    pub fn verdict(&self, property: Property) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.property == property)
            .expect("every property is recorded")
    }
}

/// Runs every property on `poset`. Errors only on chain-limit overflow.
pub fn check_poset(poset: &Poset) -> Result<PosetCheck> {
    let bounded = poset.bound();
    let n = bounded.element_count();
    let edges = bounded.edges().len();
    let forms = joinmeet::support_forms::<BigInt>(&bounded);
    let presentation = Presentation::new(edges, joinmeet::relation_matrix(&forms, n + 1)?)?;
    let mut verdicts = Vec::with_capacity(Property::ALL.len());
    let mut record = |property, passed: Option<bool>, detail: String| {
        verdicts.push(Verdict {
            property,
            passed,
            detail,
        })
    };

    let snf = presentation.smith();
    let structure = presentation.structure();
    let expected_rank = joinmeet::expected_rank(&bounded);
    record(
        Property::RankFormula,
        Some(snf.is_unimodular_diagonal() && structure.is_free() && structure.free_rank == expected_rank),
        format!("group {structure}, expected Z^{expected_rank}"),
    );

    let tree = joinmeet::choose_tree(&bounded)?;
    let expr = joinmeet::class_expressions::<BigInt>(&bounded, &tree);
    let in_range = expr
        .tree_coeffs
        .iter()
        .flatten()
        .all(|c| c.abs() <= BigInt::one());
    record(Property::CycleCoefficients, Some(in_range), String::new());
    record(
        Property::ColumnRelations,
        Some(joinmeet::verify_column_relations(&bounded, &tree, &expr)),
        String::new(),
    );

    let by_tree = abelian::gcd_all(&expr.canonical);
    let by_fitting = presentation.torsion_number(&ClassElement::all_ones(edges));
    let cross = match &by_fitting {
        Ok(d) => (Some(*d == by_tree), format!("tree {by_tree}, fitting {d}")),
        Err(e) => (Some(false), e.to_string()),
    };
    record(Property::CrossMethod, cross.0, cross.1);

    let pure = poset.is_pure();
    record(
        Property::GorensteinIffPure,
        Some(by_tree.is_zero() == pure),
        format!("d = {by_tree}, pure = {pure}"),
    );

    let pair = poset.disjoint_maximal_chain_pair()?;
    let chain_lengths = pair.as_ref().map(|p| p.lengths());
    match &pair {
        Some(p) => {
            let diff = BigInt::from(p.length_difference());
            let divides = if by_tree.is_zero() {
                diff.is_zero()
            } else {
                diff.is_multiple_of(&by_tree)
            };
            let (a, b) = p.lengths();
            record(
                Property::ChainBound,
                Some(divides),
                format!("d = {by_tree}, chains of lengths ({a}, {b})"),
            );
        }
        None => record(Property::ChainBound, None, "no disjoint chain pair".into()),
    }

    let other = joinmeet::choose_tree_with(&bounded, TreeRule::LargestTarget)?;
    let other_expr = joinmeet::class_expressions::<BigInt>(&bounded, &other);
    let other_d = abelian::gcd_all(&other_expr.canonical);
    record(
        Property::TreeIndependence,
        Some(other_d == by_tree),
        format!("d = {by_tree} vs {other_d}"),
    );

    Ok(PosetCheck {
        poset: poset.clone(),
        torsion_number: by_tree,
        pure,
        chain_lengths,
        verdicts,
    })
}

/// Random poset on at most `max_n` elements.
///
/// Draws `n` uniformly, an edge density in `[0.15, 0.7)`, and a hidden random
/// order; each pair consistent with that order becomes a relation with the
/// drawn density. Names are handed to [`Poset::build`] in a shuffled order so
/// the canonical relabelling is exercised.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> Poset {
    let n = rng.gen_range(0..=max_n);
    let density: f64 = rng.gen_range(0.15..0.7);
    let mut hidden: Vec<usize> = (0..n).collect();
    hidden.shuffle(rng);
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                relations.push((names[hidden[i]].clone(), names[hidden[j]].clone()));
            }
        }
    }
    let mut shuffled = names.clone();
    shuffled.shuffle(rng);
    Poset::build(&shuffled, &relations).expect("relations follow a hidden linear order")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub count: usize,
    pub max_n: usize,
    pub seed: u64,
}

/// Largest poset size the sweep accepts.
pub const MAX_SWEEP_N: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyTally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug)]
pub struct SweepFailure {
    pub index: usize,
    pub property: Property,
    pub detail: String,
    pub poset: Poset,
}

#[derive(Clone, Debug)]
pub struct SweepSummary {
    pub config: SweepConfig,
    pub tallies: Vec<(Property, PropertyTally)>,
    pub failures: Vec<SweepFailure>,
    pub pure_count: usize,
    pub chain_pair_count: usize,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run(config: SweepConfig) -> Result<SweepSummary> {
    if config.max_n > MAX_SWEEP_N {
        return Err(crate::Error::OutOfRange {
            what: "max-n",
            value: config.max_n,
            max: MAX_SWEEP_N,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tallies: Vec<(Property, PropertyTally)> = Property::ALL
        .iter()
        .map(|&p| (p, PropertyTally::default()))
        .collect();
    let mut failures = Vec::new();
    let (mut pure_count, mut chain_pair_count) = (0, 0);

    for index in 0..config.count {
        let poset = random_poset(&mut rng, config.max_n);
        let check = check_poset(&poset)?;
        pure_count += check.pure as usize;
        chain_pair_count += check.chain_lengths.is_some() as usize;
        for verdict in &check.verdicts {
            let tally = &mut tallies
                .iter_mut()
                .find(|(p, _)| *p == verdict.property)
                .expect("known property")
                .1;
            match verdict.passed {
                Some(true) => tally.passed += 1,
                None => tally.skipped += 1,
                Some(false) => {
                    tally.failed += 1;
                    failures.push(SweepFailure {
                        index,
                        property: verdict.property,
                        detail: verdict.detail.clone(),
                        poset: poset.clone(),
                    });
                }
            }
        }
    }

    Ok(SweepSummary {
        config,
        tallies,
        failures,
        pure_count,
        chain_pair_count,
    })
}
