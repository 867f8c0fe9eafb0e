//! Finite windows of cochain complexes and their cohomology.
//!
//! A window holds the basis and differential for a contiguous range of
//! degrees. Cohomology at a degree whose neighbours fall outside the window
//! is still computed (missing differentials are treated as zero) but the
//! result is flagged as window-truncated, because most complexes in this
//! crate are honest truncations of infinite ones.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};

/// A finite window `[lo, hi]` of a cochain complex.
#[derive(Debug, Clone)]
pub struct ComplexPresentation {
    field: FieldSpec,
    lo: i64,
    hi: i64,
    /// Basis labels per degree; degrees inside the window with no entry are
    /// zero spaces.
    spaces: BTreeMap<i64, Vec<String>>,
    /// `diffs[d]`: matrix of `d^d : C^d -> C^(d+1)`.
    diffs: BTreeMap<i64, Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    DegreeOutsideWindow { degree: i64, lo: i64, hi: i64 },
    NotSquareZero { degree: i64 },
    ShapeMismatch { degree: i64 },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::DegreeOutsideWindow { degree, lo, hi } => {
                write!(f, "degree {degree} outside window [{lo}, {hi}]")
            }
            ComplexError::NotSquareZero { degree } => {
                write!(f, "differential does not square to zero at degree {degree}")
            }
            ComplexError::ShapeMismatch { degree } => {
                write!(f, "differential shape mismatch at degree {degree}")
            }
        }
    }
}

/// Cohomology of one degree of a window.
#[derive(Debug, Clone)]
pub struct CohomologyReport {
    pub degree: i64,
    pub dimension: usize,
    /// Cocycle representatives (coordinate vectors in the degree basis)
    /// whose classes form a basis.
    pub representatives: Vec<Vec<Scalar>>,
    /// True when a neighbouring degree fell outside the window, so the
    /// missing differential was assumed zero.
    pub truncated: bool,
}

impl ComplexPresentation {
    pub fn new(
        field: FieldSpec,
        lo: i64,
        hi: i64,
        spaces: BTreeMap<i64, Vec<String>>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self, ComplexError> {
        assert!(lo <= hi, "empty window");
        let c = ComplexPresentation { field, lo, hi, spaces, diffs };
        for d in lo..hi {
            let m = c.differential(d);
            if m.rows() != c.dimension(d + 1) || m.cols() != c.dimension(d) {
                return Err(ComplexError::ShapeMismatch { degree: d });
            }
            if d + 1 < hi && !c.differential(d + 1).mul(&m).is_zero() {
                return Err(ComplexError::NotSquareZero { degree: d });
            }
        }
        Ok(c)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn dimension(&self, degree: i64) -> usize {
        self.spaces.get(&degree).map_or(0, Vec::len)
    }

    pub fn basis(&self, degree: i64) -> &[String] {
        self.spaces.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// The differential out of `degree`, materialized as a matrix (zero when
    /// absent).
    pub fn differential(&self, degree: i64) -> Matrix {
        self.diffs.get(&degree).cloned().unwrap_or_else(|| {
            Matrix::zero(self.field, self.dimension(degree + 1), self.dimension(degree))
        })
    }

    /// Cohomology at `degree`: `ker d^d / im d^(d-1)`.
    pub fn cohomology(&self, degree: i64) -> Result<CohomologyReport, ComplexError> {
        if degree < self.lo || degree > self.hi {
            return Err(ComplexError::DegreeOutsideWindow { degree, lo: self.lo, hi: self.hi });
        }
        let truncated = degree == self.lo || degree == self.hi;
        let dim = self.dimension(degree);
        let out = if degree < self.hi {
            self.differential(degree)
        } else {
            Matrix::zero(self.field, 0, dim)
        };
        let into = if degree > self.lo {
            self.differential(degree - 1)
        } else {
            Matrix::zero(self.field, dim, 0)
        };
        let kernel = out.kernel_basis();
        let candidates = Matrix::from_columns(self.field, dim, kernel.clone());
        let chosen = Matrix::independent_over(&into, &candidates);
        let representatives: Vec<Vec<Scalar>> = chosen.iter().map(|&j| kernel[j].clone()).collect();
        let dimension = kernel.len() - into.rank();
        debug_assert_eq!(dimension, representatives.len());
        Ok(CohomologyReport { degree, dimension, representatives, truncated })
    }

    /// All cohomology dimensions over the window.
    pub fn cohomology_dims(&self) -> Result<BTreeMap<i64, usize>, ComplexError> {
        let mut out = BTreeMap::new();
        for d in self.lo..=self.hi {
            out.insert(d, self.cohomology(d)?.dimension);
        }
        Ok(out)
    }

    /// Decides whether `v` (a coordinate vector in degree `degree`) lies in
    /// the image of the incoming differential, returning a preimage.
    pub fn bounding_cochain(&self, degree: i64, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let into = if degree > self.lo {
            self.differential(degree - 1)
        } else {
            Matrix::zero(self.field, self.dimension(degree), 0)
        };
        into.solve(v)
    }
}

/// The matrix of the map induced on cohomology at `degree` by a chain map
/// given blockwise, returning `(matrix, source_report, target_report)`.
/// `block` maps source-degree coordinates to target-degree coordinates.
pub fn induced_on_cohomology(
    source: &ComplexPresentation,
    target: &ComplexPresentation,
    block: impl Fn(i64) -> Matrix,
    degree: i64,
) -> Result<(Matrix, CohomologyReport, CohomologyReport), ComplexError> {
    let sh = source.cohomology(degree)?;
    let th = target.cohomology(degree)?;
    let f = block(degree);
    let field = source.field();
    // Express the image of each source representative in the target
    // cohomology basis: solve [reps | boundaries] * x = f(rep).
    let t_dim = target.dimension(degree);
    let rep_m = Matrix::from_columns(field, t_dim, th.representatives.clone());
    let bnd = if degree > target.window().0 {
        target.differential(degree - 1)
    } else {
        Matrix::zero(field, t_dim, 0)
    };
    let solver = rep_m.hcat(&bnd);
    let mut cols = Vec::new();
    for rep in &sh.representatives {
        let image = f.mul_vec(rep);
        let x = solver
            .solve(&image)
            .expect("chain-map image of a cocycle must be a cocycle class");
        cols.push(x[..th.dimension].to_vec());
    }
    let m = Matrix::from_columns(field, th.dimension, cols);
    Ok((m, sh, th))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn labels(n: usize, tag: &str) -> Vec<String> {
        (0..n).map(|i| alloc::format!("{tag}{i}")).collect()
    }

    fn window(dims: &[(i64, usize)], diffs: Vec<(i64, Matrix)>) -> ComplexPresentation {
        let lo = dims.iter().map(|(d, _)| *d).min().unwrap();
        let hi = dims.iter().map(|(d, _)| *d).max().unwrap();
        let spaces = dims.iter().map(|(d, n)| (*d, labels(*n, "e"))).collect();
        ComplexPresentation::new(Q, lo, hi, spaces, diffs.into_iter().collect()).unwrap()
    }

    #[test]
    fn acyclic_two_term_complex() {
        // 0 -> K -(id)-> K -> 0 concentrated in degrees 0, 1.
        let c = window(&[(0, 1), (1, 1)], vec![(0, Matrix::identity(Q, 1))]);
        assert_eq!(c.cohomology(0).unwrap().dimension, 0);
        assert_eq!(c.cohomology(1).unwrap().dimension, 0);
    }

    #[test]
    fn zero_differential_keeps_dimensions() {
        let c = window(&[(0, 1), (1, 2), (2, 1)], vec![]);
        assert_eq!(c.cohomology_dims().unwrap().into_values().collect::<Vec<_>>(), vec![1, 2, 1]);
    }

    #[test]
    fn rank_one_map_from_plane() {
        // K^2 -(1 1)-> K at source degree 0: H^0 has dimension 1 by
        // rank-nullity.
        let c = window(&[(0, 2), (1, 1)], vec![(0, Matrix::from_ints(Q, &[&[1, 1]]))]);
        let h = c.cohomology(0).unwrap();
        assert_eq!(h.dimension, 1);
        assert!(h.truncated);
    }

    #[test]
    fn window_errors_and_flags() {
        let c = window(&[(0, 1), (1, 1)], vec![]);
        assert!(matches!(
            c.cohomology(5),
            Err(ComplexError::DegreeOutsideWindow { .. })
        ));
        assert!(c.cohomology(0).unwrap().truncated);
    }

    #[test]
    fn rejects_non_square_zero() {
        let spaces: BTreeMap<i64, Vec<String>> =
            [(0, labels(1, "a")), (1, labels(1, "b")), (2, labels(1, "c"))].into_iter().collect();
        let diffs: BTreeMap<i64, Matrix> =
            [(0, Matrix::identity(Q, 1)), (1, Matrix::identity(Q, 1))].into_iter().collect();
        assert!(matches!(
            ComplexPresentation::new(Q, 0, 2, spaces, diffs),
            Err(ComplexError::NotSquareZero { .. })
        ));
    }

    #[test]
    fn conjugation_invariance_of_dimensions() {
        // Conjugating the differentials by invertible basis changes leaves
        // every cohomology dimension unchanged.
        let d0 = Matrix::from_ints(Q, &[&[1, 1], &[0, 0]]);
        let d1 = Matrix::from_ints(Q, &[&[0, 0]]);
        assert!(d1.mul(&d0).is_zero());
        let c = window(&[(0, 2), (1, 2), (2, 1)], vec![(0, d0.clone()), (1, d1.clone())]);

        let p0 = Matrix::from_ints(Q, &[&[1, 2], &[1, 3]]);
        let p1 = Matrix::from_ints(Q, &[&[2, 1], &[3, 2]]);
        let p2 = Matrix::from_ints(Q, &[&[5]]);
        // Inverses computed by solving.
        let inv = |m: &Matrix| {
            let n = m.rows();
            let cols: Vec<Vec<Scalar>> =
                (0..n).map(|j| m.solve(&Matrix::identity(Q, n).column(j)).unwrap()).collect();
            Matrix::from_columns(Q, n, cols)
        };
        let d0c = p1.mul(&d0).mul(&inv(&p0));
        let d1c = p2.mul(&d1).mul(&inv(&p1));
        let cc = window(&[(0, 2), (1, 2), (2, 1)], vec![(0, d0c), (1, d1c)]);
        for d in 0..=2 {
            assert_eq!(
                c.cohomology(d).unwrap().dimension,
                cc.cohomology(d).unwrap().dimension,
                "degree {d}"
            );
        }
        let _ = "window".to_string();
    }
}
