//! The endomorphism algebra `E = End_A(Q_0)` of a sum of indecomposable
//! projectives, with its basis tied to concrete homomorphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, Subspace};
use crate::module::projective_modules;

use super::PartitionedAlgebra;

/// A basis element of `E`: the homomorphism `P_source -> P_target`,
/// `x -> element * x`, with `element` in `e_target A e_source`.
#[derive(Clone, Debug)]
pub struct HomBasisElement {
    pub source: usize,
    pub target: usize,
    pub element: Vec<Scalar>,
    /// Realized matrix `dim P_source x dim P_target`.
    pub matrix: Matrix,
}

/// `E` together with the dictionary back to homomorphisms over the base.
///
/// Product convention: `f * g` is `f ∘ g` (`g` applied first), which is the
/// A-product of the underlying elements. With it `Hom_A(Q_0, X)` is a right
/// E-module under precomposition and `e_i E ≅ Hom_A(Q_0, P_i)`.
#[derive(Clone, Debug)]
pub struct TransportData {
    pub base: Arc<PartitionedAlgebra>,
    /// Simple indices of the summands of `Q_0`, ascending.
    pub take: Vec<usize>,
    pub endo: Arc<PartitionedAlgebra>,
    pub basis: Vec<HomBasisElement>,
}

impl TransportData {
    /// Position in `take` of a base simple index.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.take.iter().position(|&x| x == i)
    }
}

/// One block of the basis: the chosen elements of `e_target A e_source` and a
/// subspace for reading off coordinates.
struct Block {
    source: usize,
    target: usize,
    sub: Subspace,
    offset: usize,
}

pub fn endomorphism_algebra(a: &Arc<PartitionedAlgebra>, take: &[usize]) -> Result<TransportData> {
    let mut take = take.to_vec();
    take.sort_unstable();
    take.dedup();
    if take.is_empty() {
        return Err(Error::InvalidArgument("the set of summands must be nonempty".into()));
    }
    if let Some(&bad) = take.iter().find(|&&i| i >= a.num_simples()) {
        return Err(Error::InvalidArgument(format!("no simple with index {bad}")));
    }
    let f = a.field().clone();
    let n = a.dim();
    let simple_labels = a.simple_labels();

    let mut blocks = Vec::new();
    let mut labels = Vec::new();
    let mut idem_idx = Vec::new();
    let mut rad_idx = Vec::new();
    let mut offset = 0;
    for &target in &take {
        for &source in &take {
            let sub = if source == target {
                // [e_i] followed by an echelon basis of e_i J e_i
                let ei = a.idempotent(source);
                let left = a.left_mult_by(&ei);
                let right = a.right_mult_by(&ei);
                let rows: Vec<Vec<Scalar>> = a
                    .rad_idx()
                    .iter()
                    .map(|&r| right.vec_mul(&left.vec_mul(&a.basis_vector(r))))
                    .collect();
                let rad = Subspace::from_rows(&Matrix::from_rows(&f, n, &rows));
                let mut basis = vec![ei];
                basis.extend(rad.basis.to_rows());
                let mut coord_cols = vec![a.idem_idx()[source]];
                coord_cols.extend(rad.coord_cols.iter().copied());
                Subspace { basis: Matrix::from_rows(&f, n, &basis), coord_cols }
            } else {
                a.corner(target, source)
            };
            let (src, tgt) = (&simple_labels[source], &simple_labels[target]);
            for k in 0..sub.dim() {
                if source == target && k == 0 {
                    idem_idx.push(offset);
                    labels.push(src.clone());
                } else {
                    rad_idx.push(offset + k);
                    labels.push(if source == target { format!("{src}.{k}") } else { format!("{src}->{tgt}.{}", k + 1) });
                }
            }
            let dim = sub.dim();
            blocks.push(Block { source, target, sub, offset });
            offset += dim;
        }
    }
    let dim_e = offset;
    let block_of = |source: usize, target: usize| {
        blocks.iter().find(|b| b.source == source && b.target == target).expect("every pair has a block")
    };

    let mut elements = Vec::with_capacity(dim_e);
    let mut ends = Vec::with_capacity(dim_e);
    for b in &blocks {
        for k in 0..b.sub.dim() {
            elements.push(b.sub.basis.row(k).to_vec());
            ends.push((b.source, b.target));
        }
    }

    // f * g = f ∘ g, nonzero only when g lands where f starts
    let mut mult = vec![vec![vec![Scalar::ZERO; dim_e]; dim_e]; dim_e];
    for x in 0..dim_e {
        let (sx, tx) = ends[x];
        for y in 0..dim_e {
            let (sy, ty) = ends[y];
            if ty != sx {
                continue;
            }
            let prod = a.mul(&elements[x], &elements[y]);
            let blk = block_of(sy, tx);
            let coords = blk.sub.coords(&prod).ok_or_else(|| {
                Error::InvalidArgument("composite left its hom space; the base algebra is inconsistent".into())
            })?;
            mult[x][y][blk.offset..blk.offset + coords.len()].copy_from_slice(&coords);
        }
    }
    let mut one = vec![Scalar::ZERO; dim_e];
    for &i in &idem_idx {
        one[i] = Scalar::ONE;
    }
    let names: Vec<&str> = take.iter().map(|&i| simple_labels[i].as_str()).collect();
    let endo = PartitionedAlgebra::new(
        format!("End({})", names.join("+")),
        f.clone(),
        labels,
        one,
        idem_idx,
        rad_idx,
        &mult,
    )?
    .into_shared();

    let projs = projective_modules(a);
    let basis = elements
        .into_iter()
        .zip(ends)
        .map(|(element, (source, target))| {
            let matrix = projs[source].left_mult_matrix(&element, &projs[target]);
            HomBasisElement { source, target, element, matrix }
        })
        .collect();
    Ok(TransportData { base: a.clone(), take, endo, basis })
}
