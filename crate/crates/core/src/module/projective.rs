use std::sync::Arc;

use crate::algebra::PartitionedAlgebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, Subspace};

use super::iso::{is_endomorphism_ring_local, SearchPolicy};
use super::Representation;

/// `P_i = e_i A` realized inside A. The first basis vector is `e_i`, the
/// rest span `e_i J`, so row 0 of any hom matrix out of `P_i` is the image
/// of the generator.
#[derive(Clone, Debug)]
pub struct ProjectiveModule {
    pub index: usize,
    pub embedding: Subspace,
    pub rep: Representation,
}

impl ProjectiveModule {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// A-coordinates of the `k`-th basis vector.
    pub fn element(&self, k: usize) -> &[Scalar] {
        self.embedding.basis.row(k)
    }

    /// Coordinates in this module of an element of `e_i A`.
    pub fn coords(&self, elem: &[Scalar]) -> Vec<Scalar> {
        self.embedding.coords_unchecked(elem)
    }

    /// Realized matrix of `x -> u * x` from this module into `target`,
    /// for `u` in `e_target A e_self`.
    pub fn left_mult_matrix(&self, u: &[Scalar], target: &ProjectiveModule) -> Matrix {
        let a = self.rep.algebra();
        let rows: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|k| target.coords(&a.mul(u, self.element(k)))).collect();
        Matrix::from_rows(a.field(), target.dim(), &rows)
    }
}

fn build(a: &Arc<PartitionedAlgebra>, i: usize) -> ProjectiveModule {
    let n = a.dim();
    let f = a.field();
    let ei = a.idempotent(i);
    let rows: Vec<Vec<Scalar>> = a.rad_idx().iter().map(|&r| a.right_mult(r).vec_mul(&ei)).collect();
    let rad_part = Subspace::from_rows(&Matrix::from_rows(f, n, &rows));
    let mut basis_rows = vec![ei];
    basis_rows.extend(rad_part.basis.to_rows());
    let mut coord_cols = vec![a.idem_idx()[i]];
    coord_cols.extend(rad_part.coord_cols.iter().copied());
    let embedding = Subspace { basis: Matrix::from_rows(f, n, &basis_rows), coord_cols };
    let rep = Representation::regular(a).submodule(&embedding);
    ProjectiveModule { index: i, embedding, rep }
}

/// All indecomposable projectives `e_i A`, in simple-module order.
pub fn projective_modules(a: &Arc<PartitionedAlgebra>) -> Vec<ProjectiveModule> {
    (0..a.num_simples()).map(|i| build(a, i)).collect()
}

/// The modules `e_i A` with their endomorphism rings checked to be local.
pub fn indecomposable_projectives(a: &Arc<PartitionedAlgebra>) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    for p in projective_modules(a) {
        if !is_endomorphism_ring_local(&p.rep, &SearchPolicy::default())? {
            return Err(Error::InvalidArgument(format!(
                "projective for {} is decomposable",
                a.simple_labels()[p.index]
            )));
        }
        out.push(p.rep);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn projectives_of_dual_numbers() {
        let a = data::kx2().into_shared();
        let ps = indecomposable_projectives(&a).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].dim(), 2);
    }

    #[test]
    fn generator_is_first() {
        let a = data::ex1().unwrap().into_shared();
        for p in projective_modules(&a) {
            assert_eq!(p.element(0), a.idempotent(p.index).as_slice());
            p.rep.verify().unwrap();
        }
    }
}
