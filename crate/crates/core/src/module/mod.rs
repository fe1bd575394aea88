//! Right modules given by action matrices, in the row-vector convention:
//! `v . a = v * action[a]`, so `action(a * b) = action(a) * action(b)`.

pub(crate) mod cover;
mod hom;
mod iso;
mod projective;
mod structure;
mod transport;

use std::sync::Arc;

use crate::algebra::PartitionedAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, Subspace};

pub use cover::{minimal_resolution, minimal_resolution_strict, projective_cover, syzygy, CoverData, ResolutionTrace, StepStats, DEFAULT_CAP};
pub use hom::{hom_from_projective, hom_space, HomSpace};
pub use iso::{is_endomorphism_ring_local, is_isomorphic, IsoDecision, SearchPolicy};
pub use projective::{indecomposable_projectives, projective_modules, ProjectiveModule};
pub use structure::{
    composition_layers, head_dim, loewy_layers, radical, socle, trace_of_projectives, trace_submodule,
    StructureSummary,
};
pub use transport::hom_as_e_module;

#[derive(Clone)]
pub struct Representation {
    algebra: Arc<PartitionedAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Representation(dim {} over {})", self.dim, self.algebra.name())
    }
}

pub(crate) fn same_algebra(a: &Arc<PartitionedAlgebra>, b: &Arc<PartitionedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Builds a module and verifies that the action respects every
    /// structure constant and that the unit acts as the identity.
    pub fn new(algebra: Arc<PartitionedAlgebra>, action: Vec<Matrix>) -> Result<Self> {
        let dim = action.first().map_or(0, |m| m.rows());
        let rep = Self::from_parts(algebra, dim, action);
        rep.verify()?;
        Ok(rep)
    }

    pub(crate) fn from_parts(algebra: Arc<PartitionedAlgebra>, dim: usize, action: Vec<Matrix>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        Representation { algebra, dim, action }
    }

    pub fn zero(algebra: &Arc<PartitionedAlgebra>) -> Self {
        let f = algebra.field().clone();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(&f, 0, 0)).collect();
        Representation { algebra: algebra.clone(), dim: 0, action }
    }

    /// The one-dimensional simple module on which `e_i` acts as 1.
    pub fn simple(algebra: &Arc<PartitionedAlgebra>, i: usize) -> Self {
        let f = algebra.field().clone();
        let target = algebra.idem_idx()[i];
        let action = (0..algebra.dim())
            .map(|b| {
                let v = if b == target { Scalar::ONE } else { Scalar::ZERO };
                Matrix::from_flat(&f, 1, 1, vec![v])
            })
            .collect();
        Representation { algebra: algebra.clone(), dim: 1, action }
    }

    /// The regular right module A_A.
    pub fn regular(algebra: &Arc<PartitionedAlgebra>) -> Self {
        let action = algebra.right_mults().to_vec();
        Representation { algebra: algebra.clone(), dim: algebra.dim(), action }
    }

    pub fn verify(&self) -> Result<()> {
        let a = &*self.algebra;
        let n = a.dim();
        if self.action.len() != n || self.action.iter().any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            return Err(Error::ShapeMismatch("action matrices must be dim x dim, one per basis element".into()));
        }
        let f = a.field();
        let unit = self.act_by_element(a.one());
        if unit != Matrix::identity(f, self.dim) {
            return Err(Error::InvalidArgument("the unit does not act as the identity".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = self.action[x].mul(&self.action[y])?;
                let rhs = self.act_by_element(a.basis_product(x, y));
                if lhs != rhs {
                    return Err(Error::InvalidArgument(format!(
                        "action does not respect {} * {}",
                        a.labels()[x],
                        a.labels()[y]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<PartitionedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.action[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// The matrix of a general algebra element.
    pub fn act_by_element(&self, elem: &[Scalar]) -> Matrix {
        crate::algebra::combine(self.field(), self.dim, &self.action, elem)
    }

    /// `v . elem` for a general algebra element.
    pub fn act_vec(&self, v: &[Scalar], elem: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![Scalar::ZERO; self.dim];
        for (b, &c) in elem.iter().enumerate() {
            if !c.is_zero() {
                let vb = self.action[b].vec_mul(v);
                f.axpy(&mut out, c, &vb);
            }
        }
        out
    }

    /// `M e_i`, the space realizing `Hom(P_i, M)`.
    pub fn idempotent_image(&self, i: usize) -> Subspace {
        let e = self.algebra.idem_idx()[i];
        Subspace::from_rows(&self.action[e])
    }

    /// Restriction to an invariant subspace. The caller guarantees invariance.
    pub fn submodule(&self, sub: &Subspace) -> Representation {
        let action = self
            .action
            .iter()
            .map(|m| sub.basis.mul(m).expect("shape").select_cols(&sub.coord_cols))
            .collect();
        Representation { algebra: self.algebra.clone(), dim: sub.dim(), action }
    }

    /// Whether a subspace is closed under the action.
    pub fn is_invariant(&self, sub: &Subspace) -> bool {
        self.action.iter().all(|m| {
            let img = sub.basis.mul(m).expect("shape");
            (0..img.rows()).all(|r| sub.contains(img.row(r)))
        })
    }

    /// Quotient by an invariant subspace given in reduced echelon form
    /// (`coord_cols` are its pivots). The quotient basis is the images of
    /// the standard vectors at non-pivot columns.
    pub fn quotient(&self, sub: &Subspace) -> Representation {
        let n = self.dim;
        let f = self.field().clone();
        let mut is_pivot = vec![false; n];
        for &c in &sub.coord_cols {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let reduce = |v: &mut Vec<Scalar>| {
            for (i, &p) in sub.coord_cols.iter().enumerate() {
                let c = v[p];
                if !c.is_zero() {
                    f.axpy(v, f.neg(c), sub.basis.row(i));
                }
            }
        };
        let action = self
            .action
            .iter()
            .map(|m| {
                let rows: Vec<Vec<Scalar>> = free
                    .iter()
                    .map(|&c| {
                        let mut v = m.row(c).to_vec();
                        reduce(&mut v);
                        free.iter().map(|&k| v[k]).collect()
                    })
                    .collect();
                Matrix::from_rows(&f, free.len(), &rows)
            })
            .collect();
        Representation { algebra: self.algebra.clone(), dim: free.len(), action }
    }

    pub fn direct_sum(parts: &[&Representation]) -> Result<Representation> {
        let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
        if parts.iter().any(|p| !same_algebra(&p.algebra, &first.algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        let f = first.field().clone();
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let action = (0..first.algebra.dim())
            .map(|b| {
                let mut m = Matrix::zeros(&f, dim, dim);
                let mut off = 0;
                for p in parts {
                    m.set_block(off, off, &p.action[b]);
                    off += p.dim;
                }
                m
            })
            .collect();
        Ok(Representation { algebra: first.algebra.clone(), dim, action })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn regular_and_simple_modules_verify() {
        let a = data::kx2().into_shared();
        Representation::regular(&a).verify().unwrap();
        Representation::simple(&a, 0).verify().unwrap();
    }

    #[test]
    fn bad_action_rejected() {
        let a = data::kx2().into_shared();
        let f = a.field().clone();
        // x acting as identity violates x*x = 0
        let action = vec![Matrix::identity(&f, 1), Matrix::identity(&f, 1)];
        assert!(Representation::new(a, action).is_err());
    }

    #[test]
    fn quotient_and_submodule_dimensions() {
        let a = data::kx2().into_shared();
        let reg = Representation::regular(&a);
        let rad = radical(&reg);
        assert_eq!(rad.dim(), 1);
        assert!(reg.is_invariant(&rad));
        let q = reg.quotient(&rad);
        q.verify().unwrap();
        assert_eq!(q.dim(), 1);
        reg.submodule(&rad).verify().unwrap();
    }
}
