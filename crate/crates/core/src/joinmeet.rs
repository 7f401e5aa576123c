//! Class groups of join-meet (Hibi) rings.
//!
//! The cone of the join-meet ring of `P` lives in coordinates `z_0, …, z_n`
//! and has one facet per edge of the Hasse diagram of `P̂`:
//!
//! | edge          | support form  |
//! |---------------|---------------|
//! | `(x_i, ⊤)`    | `z_i`         |
//! | `(x_i, x_j)`  | `z_i − z_j`   |
//! | `(⊥, x_j)`    | `z_0 − z_j`   |
//!
//! (For the empty poset the single edge `(⊥, ⊤)` gets `z_0`.)
//!
//! The class group is free on the classes of the edges outside a spanning
//! tree of the Hasse diagram. Each tree-edge class is a signed sum over the
//! fundamental cycles through it, which gives the canonical class in that
//! basis without any matrix reduction. [`analyze`] computes the torsion
//! number both ways and refuses to answer if they disagree.


use crate::abelian::{self, ClassElement, Presentation};
use crate::linalg::{self, Matrix};
use crate::poset::{BoundedPoset, Edge, Poset, Vertex};
use crate::semigroup::{BasisKind, CanonicalCoordinates, ClassGroupReport};
use crate::{Error, Result, Scalar};

/// Primitive linear form of the facet attached to one edge of `P̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportForm<T> {
    pub coeffs: Vec<T>,
    pub edge: Edge,
}

pub fn support_forms<T: Scalar>(bounded: &BoundedPoset) -> Vec<SupportForm<T>> {
    let dim = bounded.element_count() + 1;
    bounded
        .edges()
        .iter()
        .map(|&edge| {
            let mut coeffs = vec![T::zero(); dim];
            match edge.lower {
                Vertex::Bottom => coeffs[0] = T::one(),
                Vertex::Element(i) => coeffs[i + 1] = T::one(),
                Vertex::Top => unreachable!("⊤ is never a lower end"),
            }
            if let Vertex::Element(j) = edge.upper {
                coeffs[j + 1] = -T::one();
            }
            SupportForm { coeffs, edge }
        })
        .collect()
}

/// Rows are the forms, columns the coordinates `z_0..z_n`.
pub fn relation_matrix<T: Scalar>(forms: &[SupportForm<T>], dim: usize) -> Result<Matrix<T>> {
    Matrix::from_rows(dim, forms.iter().map(|f| f.coeffs.clone()).collect())
}

/// Which upward cover each vertex contributes to the spanning tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TreeRule {
    /// Cover towards the smallest-labelled target (⊤ counts as largest).
    #[default]
    SmallestTarget,
    /// Cover towards the largest-labelled target.
    LargestTarget,
}

/// Spanning tree of the Hasse diagram of `P̂` made of one upward edge per
/// vertex other than ⊤.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    /// `upward[v]` is the index (into `BoundedPoset::edges`) of the tree edge
    /// leaving vertex `v` upwards; `v` ranges over ⊥ and the elements.
    upward: Vec<usize>,
    nontree: Vec<usize>,
}

impl SpanningTree {
    /// Tree edge indices ordered ⊥-edge, `x_1`-edge, …, `x_n`-edge.
    pub fn tree_edges(&self) -> &[usize] {
        &self.upward
    }

    pub fn nontree_edges(&self) -> &[usize] {
        &self.nontree
    }
}

pub fn choose_tree(bounded: &BoundedPoset) -> Result<SpanningTree> {
    choose_tree_with(bounded, TreeRule::SmallestTarget)
}

pub fn choose_tree_with(bounded: &BoundedPoset, rule: TreeRule) -> Result<SpanningTree> {
    let n = bounded.element_count();
    let mut upward: Vec<Option<usize>> = vec![None; n + 1];
    for (k, edge) in bounded.edges().iter().enumerate() {
        let slot = &mut upward[bounded.index(edge.lower)];
        let better = match *slot {
            None => true,
            Some(cur) => {
                let current = bounded.edges()[cur].upper;
                match rule {
                    TreeRule::SmallestTarget => edge.upper < current,
                    TreeRule::LargestTarget => edge.upper > current,
                }
            }
        };
        if better {
            *slot = Some(k);
        }
    }
    let upward: Vec<usize> = upward
        .into_iter()
        .enumerate()
        .map(|(v, e)| {
            e.ok_or_else(|| Error::Internal(format!("vertex {} has no upward cover", bounded.vertex(v))))
        })
        .collect::<Result<_>>()?;
    let mut in_tree = vec![false; bounded.edges().len()];
    for &e in &upward {
        in_tree[e] = true;
    }
    let nontree = (0..bounded.edges().len()).filter(|&e| !in_tree[e]).collect();
    let tree = SpanningTree { upward, nontree };
    check_tree(bounded, &tree)?;
    Ok(tree)
}

/// Tree-ness and the unit upper-triangular shape of the tree rows.
fn check_tree(bounded: &BoundedPoset, tree: &SpanningTree) -> Result<()> {
    let n = bounded.element_count();
    let top = bounded.index(Vertex::Top);
    if tree.upward.len() != n + 1 {
        return Err(Error::Internal(format!(
            "spanning tree has {} edges, expected {}",
            tree.upward.len(),
            n + 1
        )));
    }
    for start in 0..=n {
        let mut v = start;
        let mut steps = 0;
        while v != top {
            v = bounded.index(bounded.edges()[tree.upward[v]].upper);
            steps += 1;
            if steps > n + 1 {
                return Err(Error::Internal("spanning tree contains a cycle".into()));
            }
        }
    }

    let forms = support_forms::<i64>(bounded);
    for (row, &e) in tree.upward.iter().enumerate() {
        for (col, &a) in forms[e].coeffs.iter().enumerate() {
            let ok = match col.cmp(&row) {
                std::cmp::Ordering::Less => a == 0,
                std::cmp::Ordering::Equal => a == 1,
                std::cmp::Ordering::Greater => true,
            };
            if !ok {
                return Err(Error::Internal(format!(
                    "tree rows are not unit upper triangular at ({row}, {col})"
                )));
            }
        }
    }
    Ok(())
}

/// Classes of the tree edges over the basis of non-tree edge classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassExpression<T> {
    /// `tree_coeffs[v][j]`: coefficient of the `j`th non-tree class in the
    /// class of the tree edge leaving vertex `v`. Always −1, 0 or 1.
    pub tree_coeffs: Vec<Vec<T>>,
    /// The canonical class (sum of all edge classes) over the non-tree basis.
    pub canonical: Vec<T>,
}

impl<T: Scalar> ClassExpression<T> {
    /// Coefficients of an arbitrary edge class over the non-tree basis.
    fn edge_class(&self, tree: &SpanningTree, edge: usize) -> Vec<T> {
        if let Some(v) = tree.upward.iter().position(|&e| e == edge) {
            return self.tree_coeffs[v].clone();
        }
        tree.nontree
            .iter()
            .map(|&k| if k == edge { T::one() } else { T::zero() })
            .collect()
    }
}

/// Fundamental-cycle expansion of every tree-edge class.
///
/// For a non-tree edge `(x, y)` the cycle closes `x → y` with the tree path
/// from `y` back to `x`. A tree edge gets `+1` when that walk climbs it and
/// `−1` when it descends it.
pub fn class_expressions<T: Scalar>(
    bounded: &BoundedPoset,
    tree: &SpanningTree,
) -> ClassExpression<T> {
    let n = bounded.element_count();
    let top = bounded.index(Vertex::Top);
    let parent = |v: usize| bounded.index(bounded.edges()[tree.upward[v]].upper);
    let path_to_top = |mut v: usize| {
        let mut path = vec![v];
        while v != top {
            v = parent(v);
            path.push(v);
        }
        path
    };

    let mut tree_coeffs = vec![vec![T::zero(); tree.nontree.len()]; n + 1];
    for (j, &k) in tree.nontree.iter().enumerate() {
        let edge = bounded.edges()[k];
        let from_y = path_to_top(bounded.index(edge.upper));
        let from_x = path_to_top(bounded.index(edge.lower));
        let meet = *from_y
            .iter()
            .find(|v| from_x.contains(v))
            .expect("both paths end at ⊤");
        for &v in from_y.iter().take_while(|&&v| v != meet) {
            tree_coeffs[v][j] = T::one();
        }
        for &v in from_x.iter().take_while(|&&v| v != meet) {
            tree_coeffs[v][j] = -T::one();
        }
    }

    let canonical = (0..tree.nontree.len())
        .map(|j| {
            tree_coeffs
                .iter()
                .fold(T::one(), |acc, row| acc + row[j].clone())
        })
        .collect();
    ClassExpression {
        tree_coeffs,
        canonical,
    }
}

/// Substitutes the expansions into every column relation `Σ_e a_{e,c} [P_e] = 0`
/// and checks that each collapses to zero over the non-tree basis.
pub fn verify_column_relations<T: Scalar>(
    bounded: &BoundedPoset,
    tree: &SpanningTree,
    expr: &ClassExpression<T>,
) -> bool {
    let forms = support_forms::<T>(bounded);
    let classes: Vec<Vec<T>> = (0..forms.len()).map(|e| expr.edge_class(tree, e)).collect();
    let dim = bounded.element_count() + 1;
    (0..dim).all(|c| {
        (0..tree.nontree.len()).all(|j| {
            forms
                .iter()
                .zip(&classes)
                .fold(T::zero(), |acc, (f, cls)| {
                    acc + f.coeffs[c].clone() * cls[j].clone()
                })
                .is_zero()
        })
    })
}

/// Everything computed for one poset.
#[derive(Clone, Debug)]
pub struct Analysis<T> {
    pub bounded: BoundedPoset,
    pub tree: SpanningTree,
    pub expression: ClassExpression<T>,
    pub report: ClassGroupReport<T>,
}

pub fn analyze<T: Scalar>(poset: &Poset) -> Result<Analysis<T>> {
    analyze_with(poset, TreeRule::default())
}

pub fn analyze_with<T: Scalar>(poset: &Poset, rule: TreeRule) -> Result<Analysis<T>> {
    let bounded = poset.bound();
    let n = bounded.element_count();
    let edges = bounded.edges().len();
    let forms = support_forms::<T>(&bounded);
    let matrix = relation_matrix(&forms, n + 1)?;

    let presentation = Presentation::new(edges, matrix)?;
    let snf = presentation.smith();
    if !snf.is_unimodular_diagonal() || snf.rank != n + 1 {
        return Err(Error::Internal(format!(
            "join-meet class group is not free of rank {}: factors {:?}",
            edges - (n + 1),
            snf.invariant_factors
        )));
    }
    let group = abelian::structure_from(edges, &snf);

    let tree = choose_tree_with(&bounded, rule)?;
    let expression = class_expressions::<T>(&bounded, &tree);
    if !verify_column_relations(&bounded, &tree, &expression) {
        return Err(Error::Internal(
            "fundamental-cycle classes violate a column relation".into(),
        ));
    }

    let canonical = ClassElement::all_ones(edges);
    let by_tree = abelian::gcd_all(&expression.canonical);
    let by_fitting = presentation.torsion_number(&canonical)?;
    if by_tree != by_fitting {
        return Err(Error::Internal(format!(
            "torsion number from spanning tree ({by_tree}) differs from Fitting ideal ({by_fitting})"
        )));
    }
    let reduced = presentation.quotient_by(&canonical)?.structure();

    let report = ClassGroupReport {
        num_height_one_primes: edges,
        group,
        reduced_group: reduced,
        gorenstein: by_tree.is_zero(),
        canonical_in_basis: Some(CanonicalCoordinates {
            basis: BasisKind::SpanningTree(tree.nontree.iter().map(|&k| bounded.edges()[k]).collect()),
            coords: expression.canonical.clone(),
        }),
        canonical,
        torsion_number: by_tree,
        pure: Some(poset.is_pure()),
    };
    Ok(Analysis {
        bounded,
        tree,
        expression,
        report,
    })
}

pub fn joinmeet_report<T: Scalar>(poset: &Poset) -> Result<ClassGroupReport<T>> {
    Ok(analyze(poset)?.report)
}

/// Rank of the class group read off the Hasse diagram: `|E(P̂)| − (n + 1)`.
pub fn expected_rank(bounded: &BoundedPoset) -> usize {
    bounded.edges().len() - (bounded.element_count() + 1)
}

/// Rank of the relation matrix by elimination, independent of the Smith form.
pub fn relation_rank(bounded: &BoundedPoset) -> usize {
    let forms = support_forms::<i64>(bounded);
    linalg::rank(&relation_matrix(&forms, bounded.element_count() + 1).expect("forms have n+1 coordinates"))
}
