//! Finitely generated abelian groups given by a presentation matrix.
//!
//! A [`Presentation`] with `g` generators is `Z^g` modulo the span of the
//! columns of its relation matrix. Fitting ideals of such a group are ideals
//! of `Z`, so each is stored as its nonnegative generator.


use crate::linalg::{self, Matrix, Smith};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<T> {
    generators: usize,
    relations: Matrix<T>,
}

/// `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `t_i | t_{i+1}` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupStructure<T> {
    pub free_rank: usize,
    pub torsion_factors: Vec<T>,
}

/// Coefficient vector of a group element over the presentation generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassElement<T> {
    pub coords: Vec<T>,
}

impl<T: Scalar> ClassElement<T> {
    pub fn new(coords: Vec<T>) -> Self {
        ClassElement { coords }
    }

    pub fn zero(len: usize) -> Self {
        ClassElement {
            coords: vec![T::zero(); len],
        }
    }

    /// The element whose coordinates are all one; with height-one primes as
    /// generators this is the canonical class.
    pub fn all_ones(len: usize) -> Self {
        ClassElement {
            coords: vec![T::one(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl<T: Scalar> GroupStructure<T> {
    pub fn is_free(&self) -> bool {
        self.torsion_factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.is_free()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> T {
        self.torsion_factors
            .iter()
            .fold(T::one(), |acc, t| acc * t.clone())
    }
}

impl<T: Scalar> std::fmt::Display for GroupStructure<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion_factors.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<T: Scalar> Presentation<T> {
    /// `relations` must have exactly `generators` rows; each column is a relation.
    pub fn new(generators: usize, relations: Matrix<T>) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::DimensionMismatch {
                expected: generators,
                found: relations.rows(),
            });
        }
        Ok(Presentation {
            generators,
            relations,
        })
    }

    /// The free group `Z^g` (no relations).
    pub fn free(generators: usize) -> Self {
        Presentation {
            generators,
            relations: Matrix::zeros(generators, 0),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix<T> {
        &self.relations
    }

    pub fn smith(&self) -> Smith<T> {
        linalg::smith_normal_form(&self.relations)
    }

    pub fn structure(&self) -> GroupStructure<T> {
        structure_from(self.generators, &self.smith())
    }

    /// Rank of the group, `g − rank(relations)`.
    pub fn free_rank(&self) -> usize {
        self.generators - self.relations.rank()
    }

    /// Generator of `Fitt_i`, the ideal of `(g − i)`-minors of the relations.
    pub fn fitting_number(&self, i: usize) -> Result<T> {
        self.fitting_with(&self.smith(), i)
    }

    fn fitting_with(&self, snf: &Smith<T>, i: usize) -> Result<T> {
        if i > self.generators {
            return Err(Error::OutOfRange {
                what: "Fitting index",
                value: i,
                max: self.generators,
            });
        }
        let k = self.generators - i;
        // No k-minors exist when there are fewer than k relations.
        if k > self.relations.cols() {
            return Ok(T::zero());
        }
        Ok(linalg::minor_gcd_from(snf, k))
    }

    /// Presents the quotient by the cyclic subgroup generated by `e`.
    pub fn quotient_by(&self, e: &ClassElement<T>) -> Result<Self> {
        self.check_len(e)?;
        Ok(Presentation {
            generators: self.generators,
            relations: self.relations.with_column(&e.coords)?,
        })
    }

    pub fn is_zero_class(&self, e: &ClassElement<T>) -> Result<bool> {
        self.check_len(e)?;
        Ok(linalg::solve_with(&self.smith(), &e.coords).is_some())
    }

    /// Torsion number of the distinguished element `omega`.
    ///
    /// With `r` the rank of the quotient `G / Z·omega`, this is 0 when
    /// `Fitt_r(G) = Fitt_r(G / Z·omega)` and otherwise the generator of
    /// `Fitt_r(G / Z·omega)`. The result is checked against a direct
    /// membership test of `omega` in the relation lattice; the two must agree
    /// on whether `omega` vanishes.
    pub fn torsion_number(&self, omega: &ClassElement<T>) -> Result<T> {
        let reduced = self.quotient_by(omega)?;
        let reduced_snf = reduced.smith();
        let r = self.generators - reduced_snf.rank;

        let full = self.fitting_number(r)?;
        let quotient = reduced.fitting_with(&reduced_snf, r)?;
        let d = if full == quotient { T::zero() } else { quotient };

        let vanishes = self.is_zero_class(omega)?;
        if vanishes != d.is_zero() {
            return Err(Error::Internal(format!(
                "torsion number {d} disagrees with zero-class test ({vanishes})"
            )));
        }
        Ok(d)
    }

    /// Coordinates of `e` in a basis of the group, when the group is free.
    ///
    /// The basis is the one induced by the Smith form of the relations: with
    /// `U·A·V = D` and all invariant factors 1, the last `g − rank` entries of
    /// `U·e` are the coordinates.
    pub fn free_coordinates(&self, e: &ClassElement<T>) -> Result<Option<Vec<T>>> {
        self.check_len(e)?;
        let snf = self.smith();
        if !snf.is_unimodular_diagonal() {
            return Ok(None);
        }
        let ue = snf.u.mul_vec(&e.coords)?;
        Ok(Some(ue[snf.rank..].to_vec()))
    }

    fn check_len(&self, e: &ClassElement<T>) -> Result<()> {
        if e.len() != self.generators {
            return Err(Error::DimensionMismatch {
                expected: self.generators,
                found: e.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn structure_from<T: Scalar>(generators: usize, snf: &Smith<T>) -> GroupStructure<T> {
    GroupStructure {
        free_rank: generators - snf.rank,
        torsion_factors: snf
            .invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect(),
    }
}

/// Greatest common divisor of the absolute values; 0 for an all-zero vector.
pub fn gcd_all<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, x| acc.gcd(x))
}
