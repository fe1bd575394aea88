use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::Scalar;
use crate::matrix::{Matrix, Side, Subspace};

use super::hom::hom_space;
use super::Representation;

/// `M J`: the span of all radical actions.
pub fn radical(m: &Representation) -> Subspace {
    radical_of(m, &Subspace::full(m.field(), m.dim()))
}

/// `S J` for a submodule `S` of `m`.
pub(crate) fn radical_of(m: &Representation, s: &Subspace) -> Subspace {
    let a = m.algebra();
    let f = m.field();
    if s.dim() == 0 || a.rad_idx().is_empty() {
        return Subspace::zero(f, m.dim());
    }
    let parts: Vec<Matrix> = a.rad_idx().iter().map(|&r| s.basis.mul(m.action(r)).expect("shape")).collect();
    let refs: Vec<&Matrix> = parts.iter().collect();
    Subspace::from_rows(&Matrix::vstack(f, m.dim(), &refs))
}

/// Joint kernel of all radical actions.
pub fn socle(m: &Representation) -> Subspace {
    let a = m.algebra();
    let f = m.field();
    if a.rad_idx().is_empty() {
        return Subspace::full(f, m.dim());
    }
    let mats: Vec<&Matrix> = a.rad_idx().iter().map(|&r| m.action(r)).collect();
    Matrix::hstack(f, m.dim(), &mats).kernel(Side::Left)
}

pub fn head_dim(m: &Representation) -> usize {
    m.dim() - radical(m).dim()
}

/// Dimensions of `M J^s / M J^{s+1}` until the radical series reaches zero.
pub fn loewy_layers(m: &Representation) -> Vec<usize> {
    radical_series(m).windows(2).map(|w| w[0].dim() - w[1].dim()).collect()
}

/// `M = M J^0 ⊇ M J ⊇ ... ⊇ 0`, ending with the zero subspace.
fn radical_series(m: &Representation) -> Vec<Subspace> {
    let mut series = vec![Subspace::full(m.field(), m.dim())];
    while series.last().unwrap().dim() > 0 {
        let next = radical_of(m, series.last().unwrap());
        if next.dim() == series.last().unwrap().dim() {
            break;
        }
        series.push(next);
    }
    series
}

/// Multiplicity of each simple in each radical layer: `[layer][simple]`.
pub fn composition_layers(m: &Representation) -> Vec<Vec<usize>> {
    let a = m.algebra();
    let series = radical_series(m);
    let dims: Vec<Vec<usize>> = series
        .iter()
        .map(|s| {
            a.idem_idx()
                .iter()
                .map(|&e| if s.dim() == 0 { 0 } else { s.basis.mul(m.action(e)).expect("shape").rank() })
                .collect()
        })
        .collect();
    dims.windows(2)
        .map(|w| w[0].iter().zip(&w[1]).map(|(x, y)| x - y).collect())
        .collect()
}

/// Submodule generated by `M e_i` for the listed simples: the trace of the
/// corresponding projectives in `M`.
pub fn trace_of_projectives(indices: &[usize], m: &Representation) -> Subspace {
    let f = m.field();
    let a = m.algebra();
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for &i in indices {
        let img = m.idempotent_image(i);
        gens.extend(img.basis.to_rows());
    }
    if gens.is_empty() {
        return Subspace::zero(f, m.dim());
    }
    let g = Matrix::from_rows(f, m.dim(), &gens);
    let parts: Vec<Matrix> = (0..a.dim()).map(|b| g.mul(m.action(b)).expect("shape")).collect();
    let refs: Vec<&Matrix> = parts.iter().collect();
    Subspace::from_rows(&Matrix::vstack(f, m.dim(), &refs))
}

/// Sum of the images of all homomorphisms from the sources into `m`.
pub fn trace_submodule(sources: &[&Representation], m: &Representation) -> Result<Subspace> {
    let f = m.field();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for s in sources {
        for h in hom_space(s, m)?.basis {
            rows.extend(h.to_rows());
        }
    }
    Ok(Subspace::from_rows(&Matrix::from_rows(f, m.dim(), &rows)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub dim: usize,
    pub head_dim: usize,
    pub socle_dim: usize,
    pub loewy_layers: Vec<usize>,
    pub loewy_length: usize,
}

impl StructureSummary {
    pub fn of(m: &Representation) -> Self {
        let layers = loewy_layers(m);
        StructureSummary {
            dim: m.dim(),
            head_dim: layers.first().copied().unwrap_or(0),
            socle_dim: socle(m).dim(),
            loewy_length: layers.len(),
            loewy_layers: layers,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::module::projective_modules;

    #[test]
    fn ex1_projective_layers() {
        let a = data::ex1().unwrap().into_shared();
        for p in projective_modules(&a) {
            assert_eq!(loewy_layers(&p.rep), vec![1, 2, 3, 2, 1]);
            assert_eq!(socle(&p.rep).dim(), 1);
        }
    }

    #[test]
    fn simple_layers() {
        let a = data::ex1().unwrap().into_shared();
        let s = Representation::simple(&a, 1);
        assert_eq!(loewy_layers(&s), vec![1]);
        assert_eq!(head_dim(&s), 1);
    }

    #[test]
    fn trace_routes_agree() {
        let a = data::ex1().unwrap().into_shared();
        let ps = projective_modules(&a);
        let k = &ps[0];
        let eps = &ps[1];
        let fast = trace_of_projectives(&[0], &eps.rep);
        let general = trace_submodule(&[&k.rep], &eps.rep).unwrap();
        assert_eq!(fast.dim(), 8);
        assert_eq!(general.dim(), 8);
        assert!(fast.contains_subspace(&general) && general.contains_subspace(&fast));
        // the quotient admits no nonzero map from P_k
        let q = eps.rep.quotient(&fast);
        assert_eq!(hom_space(&k.rep, &q).unwrap().dim(), 0);
        // trivial cases
        assert_eq!(trace_of_projectives(&[0], &k.rep).dim(), 9);
        assert_eq!(trace_of_projectives(&[0], &Representation::simple(&a, 1)).dim(), 0);
    }
}
