//! Projective covers, syzygies and minimal projective resolutions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, Side, Subspace};

use super::projective::{projective_modules, ProjectiveModule};
use super::structure::{radical, StructureSummary};
use super::Representation;

/// Default per-step dimension cap for resolutions.
pub const DEFAULT_CAP: usize = 10_000;

/// A minimal projective cover `⊕ P_i -> M` with its kernel.
#[derive(Clone, Debug)]
pub struct CoverData {
    /// Multiplicity of each `P_i` in the cover.
    pub multiplicities: Vec<usize>,
    /// Simple index of each summand, in block order.
    pub summands: Vec<usize>,
    /// Row offset of each summand block in the cover.
    pub offsets: Vec<usize>,
    /// Image of the generator of each summand.
    pub generators: Vec<Vec<Scalar>>,
    /// The surjection, `dim cover x dim M`.
    pub map: Matrix,
    /// Kernel of the surjection inside the cover.
    pub kernel: Subspace,
    pub kernel_module: Representation,
}

impl CoverData {
    pub fn cover_dim(&self) -> usize {
        self.map.rows()
    }
}

/// Chooses generators of `M` lifting a basis of each isotypic part of the
/// head `M/MJ`.
fn head_generators(m: &Representation, rad: &Subspace) -> Vec<(usize, Vec<Scalar>)> {
    let f = m.field().clone();
    let reduce_rad = |v: &mut Vec<Scalar>| {
        for (i, &p) in rad.coord_cols.iter().enumerate() {
            let c = v[p];
            if !c.is_zero() {
                f.axpy(v, f.neg(c), rad.basis.row(i));
            }
        }
    };
    let mut gens = Vec::new();
    for i in 0..m.algebra().num_simples() {
        let image = m.idempotent_image(i);
        // echelon rows of residues modulo the radical, with pivot positions
        let mut echelon: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for k in 0..image.dim() {
            let v = image.basis.row(k).to_vec();
            let mut r = v.clone();
            reduce_rad(&mut r);
            for (p, row) in &echelon {
                let c = r[*p];
                if !c.is_zero() {
                    f.axpy(&mut r, f.neg(c), row);
                }
            }
            if let Some(p) = r.iter().position(|x| !x.is_zero()) {
                let inv = f.inv(r[p]).expect("nonzero");
                f.scale(&mut r, inv);
                echelon.push((p, r));
                gens.push((i, v));
            }
        }
    }
    gens
}

/// `K * (⊕ action_{P}(b))` for a block-diagonal direct sum of projectives.
fn act_on_blocks(k: &Matrix, projs: &[ProjectiveModule], summands: &[usize], offsets: &[usize], b: usize) -> Matrix {
    let f = k.field().clone();
    let mut out = Matrix::zeros(&f, k.rows(), k.cols());
    for (alpha, &i) in summands.iter().enumerate() {
        let act = projs[i].rep.action(b);
        let (o, d) = (offsets[alpha], projs[i].dim());
        for r in 0..k.rows() {
            let src = &k.row(r)[o..o + d];
            let mut acc = vec![Scalar::ZERO; d];
            for (x, &c) in src.iter().enumerate() {
                if !c.is_zero() {
                    f.axpy(&mut acc, c, act.row(x));
                }
            }
            out.row_mut(r)[o..o + d].copy_from_slice(&acc);
        }
    }
    out
}

pub(crate) fn cover_with(m: &Representation, projs: &[ProjectiveModule]) -> CoverData {
    let a = m.algebra().clone();
    let f = m.field().clone();
    let rad = radical(m);
    let gens = head_generators(m, &rad);
    let mut multiplicities = vec![0usize; a.num_simples()];
    let mut summands = Vec::with_capacity(gens.len());
    let mut offsets = Vec::with_capacity(gens.len());
    let mut total = 0;
    for (i, _) in &gens {
        multiplicities[*i] += 1;
        summands.push(*i);
        offsets.push(total);
        total += projs[*i].dim();
    }

    // generator images under each basis element
    let mut map = Matrix::zeros(&f, total, m.dim());
    if !gens.is_empty() {
        let gmat = Matrix::from_rows(&f, m.dim(), &gens.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
        let images: Vec<Matrix> = (0..a.dim()).map(|b| gmat.mul(m.action(b)).expect("shape")).collect();
        for (alpha, &i) in summands.iter().enumerate() {
            let p = &projs[i];
            for x in 0..p.dim() {
                let elem = p.element(x);
                let row = map.row_mut(offsets[alpha] + x);
                for (b, &c) in elem.iter().enumerate() {
                    if !c.is_zero() {
                        f.axpy(row, c, images[b].row(alpha));
                    }
                }
            }
        }
    }

    let kernel = if total == 0 { Subspace::zero(&f, 0) } else { map.kernel(Side::Left) };
    let action = (0..a.dim())
        .map(|b| act_on_blocks(&kernel.basis, projs, &summands, &offsets, b).select_cols(&kernel.coord_cols))
        .collect();
    let kernel_module = Representation::from_parts(a, kernel.dim(), action);
    CoverData {
        multiplicities,
        summands,
        offsets,
        generators: gens.into_iter().map(|(_, v)| v).collect(),
        map,
        kernel,
        kernel_module,
    }
}

pub fn projective_cover(m: &Representation) -> CoverData {
    let projs = projective_modules(m.algebra());
    cover_with(m, &projs)
}

/// First syzygy: the kernel of the projective cover.
pub fn syzygy(m: &Representation) -> Representation {
    projective_cover(m).kernel_module
}

/// Per-step statistics of a minimal resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepStats {
    pub step: usize,
    pub dim: usize,
    pub head_dim: usize,
    pub socle_dim: usize,
    pub loewy_length: usize,
    pub term_dim: usize,
    pub term: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ResolutionTrace {
    pub base: Representation,
    /// Cover multiplicities of the s-th syzygy.
    pub terms: Vec<Vec<usize>>,
    /// `Ω^0 M = M, Ω^1 M, ...`
    pub syzygies: Vec<Representation>,
    pub stats: Vec<StepStats>,
    /// Dimension of the syzygy after the last computed term.
    pub next_syzygy_dim: Option<usize>,
    /// Set when the dimension cap stopped the computation.
    pub truncated: Option<String>,
}

impl ResolutionTrace {
    pub fn is_truncated(&self) -> bool {
        self.truncated.is_some()
    }
}

/// Minimal projective resolution up to term `s_max`. Steps whose module or
/// cover exceeds `cap` are not computed and the trace is flagged.
pub fn minimal_resolution(m: &Representation, s_max: usize, cap: usize) -> ResolutionTrace {
    let projs = projective_modules(m.algebra());
    let mut trace = ResolutionTrace {
        base: m.clone(),
        terms: Vec::new(),
        syzygies: vec![m.clone()],
        stats: Vec::new(),
        next_syzygy_dim: None,
        truncated: None,
    };
    let mut current = m.clone();
    for s in 0..=s_max {
        if current.is_zero() {
            break;
        }
        if current.dim() > cap {
            trace.truncated = Some(format!("syzygy {s} has dimension {} > cap {cap}", current.dim()));
            break;
        }
        let expected_cover: usize =
            projective_cover_dim_estimate(&current, &projs);
        if expected_cover > cap {
            trace.truncated = Some(format!("cover of syzygy {s} has dimension {expected_cover} > cap {cap}"));
            break;
        }
        let summary = StructureSummary::of(&current);
        let cover = cover_with(&current, &projs);
        trace.stats.push(StepStats {
            step: s,
            dim: current.dim(),
            head_dim: summary.head_dim,
            socle_dim: summary.socle_dim,
            loewy_length: summary.loewy_length,
            term_dim: cover.cover_dim(),
            term: cover.multiplicities.clone(),
        });
        trace.terms.push(cover.multiplicities.clone());
        if s == s_max {
            trace.next_syzygy_dim = Some(cover.kernel_module.dim());
        } else {
            trace.syzygies.push(cover.kernel_module.clone());
        }
        current = cover.kernel_module;
    }
    trace
}

/// Dimension of the projective cover computed from head multiplicities.
fn projective_cover_dim_estimate(m: &Representation, projs: &[ProjectiveModule]) -> usize {
    let rad = radical(m);
    let a = m.algebra();
    let mut total = 0;
    for i in 0..a.num_simples() {
        let e = a.idem_idx()[i];
        // dim (M/MJ) e_i = dim M e_i - dim (MJ) e_i
        let full = m.action(e).rank();
        let in_rad = if rad.dim() == 0 { 0 } else { rad.basis.mul(m.action(e)).expect("shape").rank() };
        total += (full - in_rad) * projs[i].dim();
    }
    total
}

/// Like [`minimal_resolution`] but turns truncation into an error.
pub fn minimal_resolution_strict(m: &Representation, s_max: usize, cap: usize) -> Result<ResolutionTrace> {
    let t = minimal_resolution(m, s_max, cap);
    match &t.truncated {
        Some(msg) => Err(Error::CapExceeded { dim: 0, cap, context: msg.clone() }),
        None => Ok(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::module::{projective_modules, socle};

    #[test]
    fn cover_of_simple_is_projective() {
        let a = data::ex1().unwrap().into_shared();
        let ps = projective_modules(&a);
        for i in 0..2 {
            let s = Representation::simple(&a, i);
            let c = projective_cover(&s);
            let mut expected = vec![0, 0];
            expected[i] = 1;
            assert_eq!(c.multiplicities, expected);
            assert_eq!(c.kernel_module.dim(), ps[i].dim() - 1);
            // minimality: kernel lies in the radical of the cover
            assert!(c.kernel.dim() == radical(&ps[i].rep).dim());
        }
    }

    #[test]
    fn zero_module_cover() {
        let a = data::kx2().into_shared();
        let c = projective_cover(&Representation::zero(&a));
        assert!(c.summands.is_empty());
        assert_eq!(c.kernel_module.dim(), 0);
    }

    #[test]
    fn resolution_of_projective() {
        let a = data::ex1().unwrap().into_shared();
        let p = projective_modules(&a).remove(1);
        let t = minimal_resolution(&p.rep, 5, DEFAULT_CAP);
        assert_eq!(t.terms, vec![vec![0, 1]]);
        assert_eq!(t.syzygies.len(), 2);
        assert!(t.syzygies[1].is_zero());
    }

    #[test]
    fn kernel_module_is_a_module() {
        let a = data::ex1().unwrap().into_shared();
        let s = Representation::simple(&a, 0);
        let omega = syzygy(&s);
        omega.verify().unwrap();
        assert_eq!(omega.dim(), 8);
        assert_eq!(socle(&omega).dim(), 1);
    }

    #[test]
    fn truncation_flag() {
        let a = data::ex1().unwrap().into_shared();
        let s = Representation::simple(&a, 0);
        let t = minimal_resolution(&s, 10, 20);
        assert!(t.is_truncated());
        assert!(minimal_resolution_strict(&s, 10, 20).is_err());
    }
}
