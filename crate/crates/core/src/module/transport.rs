use crate::algebra::TransportData;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, Subspace};

use super::{same_algebra, Representation};

/// `Hom_A(Q_0, X)` as a right E-module. The summand `Hom_A(P_i, X)` is
/// realized as `X e_i` (a map is its value on `e_i`), and a basis element
/// `x -> u x` of `E` from `P_a` to `P_b` sends `v` in `X e_b` to `v . u` in
/// `X e_a`.
pub fn hom_as_e_module(t: &TransportData, x: &Representation) -> Result<Representation> {
    if !same_algebra(&t.base, x.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field().clone();
    let parts: Vec<Subspace> = t.take.iter().map(|&i| x.idempotent_image(i)).collect();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut dim = 0;
    for p in &parts {
        offsets.push(dim);
        dim += p.dim();
    }
    let action = t
        .basis
        .iter()
        .map(|h| {
            let mut m = Matrix::zeros(&f, dim, dim);
            let b = t.position(h.target).expect("target in take");
            let a = t.position(h.source).expect("source in take");
            for k in 0..parts[b].dim() {
                let image = x.act_vec(parts[b].basis.row(k), &h.element);
                let coords: Vec<Scalar> = parts[a].coords_unchecked(&image);
                m.row_mut(offsets[b] + k)[offsets[a]..offsets[a] + coords.len()].copy_from_slice(&coords);
            }
            m
        })
        .collect();
    Ok(Representation::from_parts(t.endo.clone(), dim, action))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::endomorphism_algebra;
    use crate::data;
    use crate::module::{hom_space, projective_modules, socle, StructureSummary};

    #[test]
    fn the_module_m_for_ex1() {
        let a = data::ex1().unwrap().into_shared();
        let t = endomorphism_algebra(&a, &[0]).unwrap();
        let ps = projective_modules(&a);
        let m = hom_as_e_module(&t, &ps[1].rep).unwrap();
        m.verify().unwrap();
        let s = StructureSummary::of(&m);
        assert_eq!((s.dim, s.head_dim, s.socle_dim, s.loewy_length), (4, 2, 2, 2));
        assert_eq!(socle(&m).dim(), 2);
    }

    #[test]
    fn functor_is_fully_faithful_on_add_q0() {
        let a = data::ex1().unwrap().into_shared();
        let t = endomorphism_algebra(&a, &[0, 1]).unwrap();
        let ps = projective_modules(&a);
        let sum = Representation::direct_sum(&[&ps[0].rep, &ps[1].rep]).unwrap();
        let xs = [&ps[0].rep, &ps[1].rep, &sum];
        for x in xs {
            for y in xs {
                let hx = hom_as_e_module(&t, x).unwrap();
                let hy = hom_as_e_module(&t, y).unwrap();
                hx.verify().unwrap();
                assert_eq!(hom_space(x, y).unwrap().dim(), hom_space(&hx, &hy).unwrap().dim());
            }
        }
    }

    #[test]
    fn projective_goes_to_projective() {
        let a = data::ex1().unwrap().into_shared();
        let t = endomorphism_algebra(&a, &[0]).unwrap();
        let ps = projective_modules(&a);
        let h = hom_as_e_module(&t, &ps[0].rep).unwrap();
        assert_eq!(h.dim(), 5);
        let z = hom_as_e_module(&t, &Representation::zero(&a)).unwrap();
        assert!(z.is_zero());
    }
}
