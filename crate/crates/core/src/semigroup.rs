//! Class groups of normal affine semigroup rings given by their facets.
//!
//! A cone `C ⊂ R^n` is described by the primitive support forms `f_1..f_r` of
//! its facets. The class group is generated by the height-one monomial primes
//! `[P_1]..[P_r]`, one per facet, subject to the relations
//! `Σ_i a_ij [P_i] = 0` for each coordinate `j`. The canonical class is
//! `Σ_i [P_i]`.
//!
//! The facet list is taken on trust: no convex-hull computation checks that
//! the forms really are the facets of a cone.

use crate::abelian::{self, ClassElement, GroupStructure, Presentation};
use crate::linalg::Matrix;
use crate::poset::Edge;
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription<T> {
    dim: usize,
    forms: Vec<Vec<T>>,
    interior_point: Option<Vec<T>>,
}

impl<T: Scalar> ConeDescription<T> {
    /// Validates that every form has length `dim` and is nonzero and
    /// primitive, and that each form is positive on `interior_point` if one
    /// is given.
    pub fn new(dim: usize, forms: Vec<Vec<T>>, interior_point: Option<Vec<T>>) -> Result<Self> {
        if let Some(p) = &interior_point {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        for (i, f) in forms.iter().enumerate() {
            if f.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.len(),
                });
            }
            let g = abelian::gcd_all(f);
            if g.is_zero() {
                return Err(Error::InvalidForm(format!("form {i} is zero")));
            }
            if !g.is_one() {
                return Err(Error::InvalidForm(format!(
                    "form {i} is not primitive (content {g})"
                )));
            }
            if let Some(p) = &interior_point {
                if !evaluate(f, p).is_positive() {
                    return Err(Error::InvalidForm(format!(
                        "form {i} is not positive on the interior point"
                    )));
                }
            }
        }
        Ok(ConeDescription {
            dim,
            forms,
            interior_point,
        })
    }

    /// Normalizes each raw form with [`normalize_form`] before validating.
    pub fn from_raw(
        dim: usize,
        forms: Vec<Vec<T>>,
        interior_point: Option<Vec<T>>,
    ) -> Result<Self> {
        let forms = forms
            .iter()
            .map(|f| normalize_form(f, interior_point.as_deref()))
            .collect::<Result<_>>()?;
        Self::new(dim, forms, interior_point)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[Vec<T>] {
        &self.forms
    }

    pub fn interior_point(&self) -> Option<&[T]> {
        self.interior_point.as_deref()
    }

    /// The `r × n` matrix with the forms as rows.
    pub fn relation_matrix(&self) -> Matrix<T> {
        Matrix::from_rows(self.dim, self.forms.clone()).expect("validated on construction")
    }

    pub fn presentation(&self) -> Presentation<T> {
        Presentation::new(self.forms.len(), self.relation_matrix()).expect("one row per form")
    }
}

fn evaluate<T: Scalar>(form: &[T], point: &[T]) -> T {
    form.iter()
        .zip(point)
        .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
}

/// Divides `v` by the gcd of its entries and, given an interior point, flips
/// the sign so the form is positive there.
pub fn normalize_form<T: Scalar>(v: &[T], interior: Option<&[T]>) -> Result<Vec<T>> {
    let g = abelian::gcd_all(v);
    if g.is_zero() {
        return Err(Error::InvalidForm("zero form".into()));
    }
    let mut f: Vec<T> = v.iter().map(|x| x.clone() / g.clone()).collect();
    if let Some(p) = interior {
        if p.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: v.len(),
                found: p.len(),
            });
        }
        let value = evaluate(&f, p);
        if value.is_zero() {
            return Err(Error::InvalidForm(
                "form vanishes on the interior point".into(),
            ));
        }
        if value.is_negative() {
            f.iter_mut().for_each(|x| *x = -x.clone());
        }
    }
    Ok(f)
}

/// Basis in which [`CanonicalCoordinates`] are expressed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// Classes of the listed non-tree edges of a Hasse-diagram spanning tree.
    SpanningTree(Vec<Edge>),
    /// Basis induced by the Smith form of the relation matrix.
    Smith,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCoordinates<T> {
    pub basis: BasisKind,
    pub coords: Vec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupReport<T> {
    pub num_height_one_primes: usize,
    pub group: GroupStructure<T>,
    /// The class group modulo the canonical class.
    pub reduced_group: GroupStructure<T>,
    /// All-ones vector over the height-one primes.
    pub canonical: ClassElement<T>,
    /// Canonical class in a basis of the group; only when the group is free.
    pub canonical_in_basis: Option<CanonicalCoordinates<T>>,
    pub torsion_number: T,
    pub gorenstein: bool,
    /// Purity of the poset; only set in poset mode.
    pub pure: Option<bool>,
}

pub fn cone_report<T: Scalar>(cone: &ConeDescription<T>) -> Result<ClassGroupReport<T>> {
    let presentation = cone.presentation();
    let r = presentation.generators();
    let canonical = ClassElement::all_ones(r);
    let torsion_number = presentation.torsion_number(&canonical)?;
    let gorenstein = presentation.is_zero_class(&canonical)?;
    let canonical_in_basis = presentation
        .free_coordinates(&canonical)?
        .map(|coords| CanonicalCoordinates {
            basis: BasisKind::Smith,
            coords,
        });
    if let Some(c) = &canonical_in_basis {
        let g = abelian::gcd_all(&c.coords);
        if g != torsion_number {
            return Err(Error::Internal(format!(
                "gcd of canonical coordinates {g} differs from torsion number {torsion_number}"
            )));
        }
    }
    Ok(ClassGroupReport {
        num_height_one_primes: r,
        group: presentation.structure(),
        reduced_group: presentation.quotient_by(&canonical)?.structure(),
        canonical,
        canonical_in_basis,
        torsion_number,
        gorenstein,
        pure: None,
    })
}

/// Cone of the `r`th Veronese subring of a polynomial ring in `n` variables:
/// `x_i ≥ 0` for `i < n` and `−(x_1 + … + x_{n−1}) + r·t ≥ 0`.
///
/// With `n = 1` the single form `(r)` normalizes to `(1)`.
pub fn veronese_cone<T: Scalar>(n: usize, r: u64) -> Result<ConeDescription<T>> {
    if n == 0 || r == 0 {
        return Err(Error::Input("veronese needs n >= 1 and r >= 1".into()));
    }
    let r = to_scalar::<T>(r)?;
    let mut forms: Vec<Vec<T>> = (0..n - 1).map(|i| unit(n, i)).collect();
    let mut last = vec![-T::one(); n];
    last[n - 1] = r;
    forms.push(last);
    ConeDescription::from_raw(n, forms, None)
}

/// Cone of the Segre product of the `p`th Veronese of `K[x_1..x_m]` with the
/// `q`th Veronese of `K[y_1..y_n]`, in coordinates
/// `(x_1..x_{m−1}, y_1..y_{n−1}, t)`.
///
/// Forms are listed as `x_1..x_{m−1}`, then the `p`-facet, then
/// `y_1..y_{n−1}`, then the `q`-facet.
pub fn segre_veronese_cone<T: Scalar>(
    m: usize,
    p: u64,
    n: usize,
    q: u64,
) -> Result<ConeDescription<T>> {
    if m < 2 || n < 2 {
        return Err(Error::Input("segre needs m >= 2 and n >= 2".into()));
    }
    if p == 0 || q == 0 {
        return Err(Error::Input("segre needs p >= 1 and q >= 1".into()));
    }
    let dim = m + n - 1;
    let (p, q) = (to_scalar::<T>(p)?, to_scalar::<T>(q)?);
    let mut forms = Vec::with_capacity(m + n);
    forms.extend((0..m - 1).map(|i| unit(dim, i)));
    let mut big_p = vec![T::zero(); dim];
    big_p[..m - 1].iter_mut().for_each(|x| *x = -T::one());
    big_p[dim - 1] = p;
    forms.push(big_p);
    forms.extend((m - 1..dim - 1).map(|j| unit(dim, j)));
    let mut big_q = vec![T::zero(); dim];
    big_q[m - 1..dim - 1].iter_mut().for_each(|x| *x = -T::one());
    big_q[dim - 1] = q;
    forms.push(big_q);
    ConeDescription::from_raw(dim, forms, None)
}

/// Invariants of the determinantal ring `K[X]/I_{k+1}(X)` for an `m × n`
/// matrix of indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantalInvariants<T> {
    /// Always 1: the class group is `Z·[P]`.
    pub rank: usize,
    /// `[ω] = (n − m)·[P]`.
    pub canonical: T,
    pub torsion_number: T,
}

pub fn determinantal_invariants<T: Scalar>(m: u64, n: u64) -> Result<DeterminantalInvariants<T>> {
    if m == 0 || m > n {
        return Err(Error::Input(format!(
            "determinantal needs 1 <= m <= n, got m={m} n={n}"
        )));
    }
    let canonical = to_scalar::<T>(n - m)?;
    let group = Presentation::<T>::free(1);
    let torsion_number = group.torsion_number(&ClassElement::new(vec![canonical.clone()]))?;
    Ok(DeterminantalInvariants {
        rank: 1,
        canonical,
        torsion_number,
    })
}

fn unit<T: Scalar>(dim: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); dim];
    v[i] = T::one();
    v
}

fn to_scalar<T: Scalar>(x: u64) -> Result<T> {
    i64::try_from(x)
        .map(T::from)
        .map_err(|_| Error::Input(format!("parameter {x} too large")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&y| b(y)).collect()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_form(&v(&[2, 4, -6]), None).unwrap(), v(&[1, 2, -3]));
        assert_eq!(
            normalize_form(&v(&[-1, 0]), Some(&v(&[1, 1]))).unwrap(),
            v(&[1, 0])
        );
        assert!(normalize_form(&v(&[1, -1]), Some(&v(&[1, 1]))).is_err());
        assert!(normalize_form(&v(&[0, 0]), None).is_err());
    }

    #[test]
    fn cone_validation() {
        assert!(ConeDescription::new(2, vec![v(&[2, 0])], None).is_err());
        assert!(ConeDescription::new(2, vec![v(&[0, 0])], None).is_err());
        assert!(ConeDescription::new(2, vec![v(&[1, 0, 0])], None).is_err());
        assert!(ConeDescription::new(2, vec![v(&[-1, 0])], Some(v(&[1, 1]))).is_err());
        assert!(ConeDescription::new(2, vec![v(&[1, 0])], Some(v(&[1, 1]))).is_ok());
    }

    #[test]
    fn veronese_forms() {
        let c = veronese_cone::<BigInt>(2, 2).unwrap();
        assert_eq!(c.forms(), &[v(&[1, 0]), v(&[-1, 2])]);
        let c = veronese_cone::<BigInt>(1, 5).unwrap();
        assert_eq!(c.forms(), &[v(&[1])]);
        assert!(cone_report(&c).unwrap().group.is_trivial());
        assert!(veronese_cone::<BigInt>(0, 1).is_err());
    }

    #[test]
    fn veronese_reports() {
        let r = cone_report(&veronese_cone::<BigInt>(4, 6).unwrap()).unwrap();
        assert_eq!(r.group.free_rank, 0);
        assert_eq!(r.group.torsion_factors, vec![b(6)]);
        assert_eq!(r.torsion_number, b(2));
        assert!(!r.gorenstein);
        assert!(r.canonical_in_basis.is_none());

        let r = cone_report(&veronese_cone::<BigInt>(4, 2).unwrap()).unwrap();
        assert!(r.gorenstein);
        assert_eq!(r.torsion_number, b(0));

        let r = cone_report(&veronese_cone::<BigInt>(3, 3).unwrap()).unwrap();
        assert!(r.gorenstein);
    }

    #[test]
    fn segre_reports() {
        let c = segre_veronese_cone::<BigInt>(4, 2, 9, 3).unwrap();
        assert_eq!(c.dim(), 12);
        assert_eq!(c.forms().len(), 13);
        let r = cone_report(&c).unwrap();
        assert!(r.group.is_free());
        assert_eq!(r.group.free_rank, 1);
        assert_eq!(r.torsion_number, b(6));
        let coords = r.canonical_in_basis.unwrap().coords;
        assert_eq!(coords.len(), 1);
        assert_eq!(coords[0].abs(), b(6));

        let r = cone_report(&segre_veronese_cone::<BigInt>(2, 2, 2, 2).unwrap()).unwrap();
        assert_eq!(r.group.free_rank, 1);
        assert_eq!(r.group.torsion_factors, vec![b(2)]);
        assert!(r.gorenstein);

        assert!(segre_veronese_cone::<BigInt>(1, 2, 3, 3).is_err());
    }

    #[test]
    fn segre_relations_identify_generators() {
        // [P_i] = [P] for each x-facet: the column of x_i has +1 at P_i and
        // -1 at P, nothing else.
        let c = segre_veronese_cone::<BigInt>(4, 2, 9, 3).unwrap();
        let a = c.relation_matrix();
        for j in 0..3 {
            let col = a.column(j);
            let nonzero: Vec<(usize, i64)> = col
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, i64::try_from(x).unwrap()))
                .collect();
            assert_eq!(nonzero, vec![(j, 1), (3, -1)]);
        }
        // the t column is p·[P] + q·[Q]
        let t = a.column(11);
        assert_eq!(t[3], b(2));
        assert_eq!(t[12], b(3));
    }

    #[test]
    fn determinantal_examples() {
        assert_eq!(determinantal_invariants::<BigInt>(3, 3).unwrap().torsion_number, b(0));
        assert_eq!(determinantal_invariants::<BigInt>(3, 4).unwrap().torsion_number, b(1));
        let d = determinantal_invariants::<BigInt>(2, 5).unwrap();
        assert_eq!((d.rank, d.canonical.clone(), d.torsion_number.clone()), (1, b(3), b(3)));
        assert!(determinantal_invariants::<BigInt>(4, 3).is_err());
    }
}
