//! Finite posets and their bounded extension `P̂ = P ∪ {⊥, ⊤}`.
//!
//! A [`Poset`] is always stored in canonical form: elements are numbered by a
//! linear extension (every cover `(i, j)` has `i < j`) and `covers` is the
//! transitive reduction of the order, sorted lexicographically.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// Default cap on the number of maximal chains enumerated.
pub const DEFAULT_CHAIN_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds a poset from element names and any generating set of relations
    /// `a < b`.
    ///
    /// The order is the transitive closure of `relations`. Elements are
    /// renumbered by a topological order that prefers the input order, and the
    /// stored covers are the transitive reduction.
    pub fn build<S: AsRef<str>>(names: &[S], relations: &[(S, S)]) -> Result<Self> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_ref(), i).is_some() {
                return Err(Error::DuplicateName(name.as_ref().to_string()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownName(s.as_ref().to_string()))
        };

        let mut below = vec![vec![false; n]; n];
        for (a, b) in relations {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::Cycle(names[i].as_ref().to_string()));
            }
            below[i][j] = true;
        }
        // Warshall closure
        for k in 0..n {
            let via = below[k].clone();
            for row in below.iter_mut() {
                if row[k] {
                    for (cell, &v) in row.iter_mut().zip(&via) {
                        *cell |= v;
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| below[i][i]) {
            return Err(Error::Cycle(names[i].as_ref().to_string()));
        }

        // Stable topological order: repeatedly take the first (by input
        // position) element with no unplaced predecessor.
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&j| !placed[j] && (0..n).all(|i| placed[i] || !below[i][j]))
                .expect("closure is acyclic");
            placed[next] = true;
            order.push(next);
        }
        let mut position = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }

        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]) {
                    covers.push((position[i], position[j]));
                }
            }
        }
        covers.sort_unstable();

        Ok(Poset {
            labels: order.iter().map(|&i| names[i].as_ref().to_string()).collect(),
            covers,
        })
    }

    pub fn empty() -> Self {
        Poset {
            labels: Vec::new(),
            covers: Vec::new(),
        }
    }

    /// `k` pairwise incomparable elements.
    pub fn antichain(k: usize) -> Self {
        Poset {
            labels: (1..=k).map(|i| format!("x{i}")).collect(),
            covers: Vec::new(),
        }
    }

    /// A chain of `len + 1` elements (length counts covers).
    pub fn chain(len: usize) -> Self {
        Self::disjoint_chains(&[len])
    }

    /// Disjoint union of chains; the `k`th chain has `lengths[k] + 1` elements.
    pub fn disjoint_chains(lengths: &[usize]) -> Self {
        let mut labels = Vec::new();
        let mut covers = Vec::new();
        for (k, &len) in lengths.iter().enumerate() {
            let start = labels.len();
            for i in 0..=len {
                labels.push(format!("c{k}_{i}"));
                if i > 0 {
                    covers.push((start + i - 1, start + i));
                }
            }
        }
        Poset { labels, covers }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        let mut has_lower = vec![false; self.len()];
        for &(_, j) in &self.covers {
            has_lower[j] = true;
        }
        (0..self.len()).filter(|&i| !has_lower[i]).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        let mut has_upper = vec![false; self.len()];
        for &(i, _) in &self.covers {
            has_upper[i] = true;
        }
        (0..self.len()).filter(|&i| !has_upper[i]).collect()
    }

    fn upper_covers(&self) -> Vec<Vec<usize>> {
        let mut up = vec![Vec::new(); self.len()];
        for &(i, j) in &self.covers {
            up[i].push(j);
        }
        up
    }

    pub fn bound(&self) -> BoundedPoset {
        BoundedPoset::new(self.clone())
    }

    /// True iff all maximal chains have the same cardinality.
    ///
    /// Propagates a rank function through `P̂` in label order and reports a
    /// conflict as soon as a vertex is reached at two different heights.
    pub fn is_pure(&self) -> bool {
        let bounded = self.bound();
        let mut rank: Vec<Option<usize>> = vec![None; self.len() + 2];
        rank[bounded.index(Vertex::Bottom)] = Some(0);
        // Edges are visited grouped by lower vertex in linear-extension order,
        // so each lower end is ranked before it is used.
        let mut edges: Vec<Edge> = bounded.edges().to_vec();
        edges.sort_by_key(|e| bounded.index(e.lower));
        for e in edges {
            let lower = rank[bounded.index(e.lower)].expect("lower end is ranked");
            let slot = &mut rank[bounded.index(e.upper)];
            match *slot {
                None => *slot = Some(lower + 1),
                Some(h) if h != lower + 1 => return false,
                Some(_) => {}
            }
        }
        true
    }

    /// All maximal chains of `P`, as element lists from bottom to top.
    ///
    /// Fails once more than `limit` chains have been produced.
    pub fn maximal_chains(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        let up = self.upper_covers();
        let mut chains = Vec::new();
        let mut stack = Vec::new();
        for start in self.minimal_elements() {
            stack.push(start);
            collect_chains(&up, &mut stack, &mut chains, limit)?;
            stack.pop();
        }
        Ok(chains)
    }

    /// First pair of element-disjoint maximal chains in enumeration order.
    pub fn disjoint_maximal_chain_pair(&self) -> Result<Option<ChainPair>> {
        self.disjoint_maximal_chain_pair_with_limit(DEFAULT_CHAIN_LIMIT)
    }

    pub fn disjoint_maximal_chain_pair_with_limit(
        &self,
        limit: usize,
    ) -> Result<Option<ChainPair>> {
        let chains = self.maximal_chains(limit)?;
        let mut member = vec![false; self.len()];
        for (i, first) in chains.iter().enumerate() {
            for &x in first {
                member[x] = true;
            }
            let found = chains[i + 1..]
                .iter()
                .find(|second| second.iter().all(|&y| !member[y]));
            if let Some(second) = found {
                return Ok(Some(ChainPair::new(first.clone(), second.clone())));
            }
            for &x in first {
                member[x] = false;
            }
        }
        Ok(None)
    }
}

fn collect_chains(
    up: &[Vec<usize>],
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    let top = *stack.last().expect("nonempty stack");
    if up[top].is_empty() {
        if out.len() == limit {
            return Err(Error::ChainLimitExceeded(limit));
        }
        out.push(stack.clone());
        return Ok(());
    }
    for &next in &up[top] {
        stack.push(next);
        collect_chains(up, stack, out, limit)?;
        stack.pop();
    }
    Ok(())
}

/// Two element-disjoint maximal chains, with lengths counted in covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPair {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl ChainPair {
    fn new(first: Vec<usize>, second: Vec<usize>) -> Self {
        ChainPair { first, second }
    }

    /// `(a, b)` for chains `x_0 < … < x_a` and `y_0 < … < y_b`.
    pub fn lengths(&self) -> (usize, usize) {
        (self.first.len() - 1, self.second.len() - 1)
    }

    pub fn length_difference(&self) -> usize {
        let (a, b) = self.lengths();
        a.abs_diff(b)
    }
}

/// A vertex of `P̂`. Ordering is `Bottom < Element(_) < Top`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Bottom,
    Element(usize),
    Top,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Bottom => write!(f, "⊥"),
            Vertex::Element(i) => write!(f, "x{}", i + 1),
            Vertex::Top => write!(f, "⊤"),
        }
    }
}

/// A cover relation `lower <· upper` of `P̂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub lower: Vertex,
    pub upper: Vertex,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

/// `P` with a new bottom and top adjoined.
///
/// Edge order: covers of `P` (lexicographic), then `(⊥, m)` for minimal `m`
/// ascending, then `(M, ⊤)` for maximal `M` ascending. The empty poset has the
/// single edge `(⊥, ⊤)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedPoset {
    base: Poset,
    edges: Vec<Edge>,
}

impl BoundedPoset {
    pub fn new(base: Poset) -> Self {
        let mut edges: Vec<Edge> = base
            .covers
            .iter()
            .map(|&(i, j)| Edge {
                lower: Vertex::Element(i),
                upper: Vertex::Element(j),
            })
            .collect();
        if base.is_empty() {
            edges.push(Edge {
                lower: Vertex::Bottom,
                upper: Vertex::Top,
            });
        } else {
            edges.extend(base.minimal_elements().into_iter().map(|j| Edge {
                lower: Vertex::Bottom,
                upper: Vertex::Element(j),
            }));
            edges.extend(base.maximal_elements().into_iter().map(|i| Edge {
                lower: Vertex::Element(i),
                upper: Vertex::Top,
            }));
        }
        BoundedPoset { base, edges }
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of elements of `P` (not counting ⊥ and ⊤).
    pub fn element_count(&self) -> usize {
        self.base.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.base.len() + 2
    }

    /// Dense index: ⊥ ↦ 0, element `i` ↦ `i + 1`, ⊤ ↦ `n + 1`.
    pub fn index(&self, v: Vertex) -> usize {
        match v {
            Vertex::Bottom => 0,
            Vertex::Element(i) => i + 1,
            Vertex::Top => self.base.len() + 1,
        }
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        match index {
            0 => Vertex::Bottom,
            i if i <= self.base.len() => Vertex::Element(i - 1),
            _ => Vertex::Top,
        }
    }
}
