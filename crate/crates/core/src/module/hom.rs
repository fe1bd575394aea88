use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, Side};

use super::projective::ProjectiveModule;
use super::{same_algebra, Representation};

/// Basis of `Hom_A(source, target)`, each element a `dim source x dim target` matrix.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum coeffs[k] * basis[k]`.
    pub fn combination(&self, coeffs: &[Scalar]) -> Option<Matrix> {
        let first = self.basis.first()?;
        let mut out = Matrix::zeros(first.field(), self.source_dim, self.target_dim);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            out.add_scaled(c, b);
        }
        Some(out)
    }
}

/// Solves `action_m(b) * F = F * action_n(b)` for every basis element `b`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let (dm, dn) = (m.dim(), n.dim());
    let f = m.field().clone();
    if dm == 0 || dn == 0 {
        return Ok(HomSpace { source_dim: dm, target_dim: dn, basis: Vec::new() });
    }
    let nb = m.algebra().dim();
    let block = dm * dn;
    // one row per unknown F[r][c]; one column per equation entry
    let mut eqs = Matrix::zeros(&f, dm * dn, nb * block);
    let minus_one = f.neg(Scalar::ONE);
    for b in 0..nb {
        let am = m.action(b);
        let an = n.action(b);
        let base = b * block;
        for r in 0..dm {
            for c in 0..dn {
                let row = eqs.row_mut(r * dn + c);
                // (am * E_rc)[i][c] = am[i][r]
                for i in 0..dm {
                    let v = am.get(i, r);
                    if !v.is_zero() {
                        let idx = base + i * dn + c;
                        row[idx] = f.add(row[idx], v);
                    }
                }
                // (E_rc * an)[r][j] = an[c][j]
                for j in 0..dn {
                    let v = an.get(c, j);
                    if !v.is_zero() {
                        let idx = base + r * dn + j;
                        row[idx] = f.add(row[idx], f.mul(minus_one, v));
                    }
                }
            }
        }
    }
    let kernel = eqs.kernel(Side::Left);
    let basis = (0..kernel.dim())
        .map(|k| Matrix::from_flat(&f, dm, dn, kernel.basis.row(k).to_vec()))
        .collect();
    Ok(HomSpace { source_dim: dm, target_dim: dn, basis })
}

/// `Hom(P_i, N)` through `N e_i`: the hom sending the generator `e_i` to
/// `v` maps basis vector `x` of `P_i` to `v . x`.
pub fn hom_from_projective(p: &ProjectiveModule, n: &Representation) -> Result<HomSpace> {
    if !same_algebra(p.rep.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let image = n.idempotent_image(p.index);
    let f = n.field().clone();
    let basis = (0..image.dim())
        .map(|k| {
            let v = image.basis.row(k);
            let rows: Vec<Vec<Scalar>> = (0..p.dim()).map(|x| n.act_vec(v, p.element(x))).collect();
            Matrix::from_rows(&f, n.dim(), &rows)
        })
        .collect();
    Ok(HomSpace { source_dim: p.dim(), target_dim: n.dim(), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::module::projective_modules;

    #[test]
    fn simple_endomorphisms() {
        let a = data::ex1().unwrap().into_shared();
        for i in 0..a.num_simples() {
            let s = Representation::simple(&a, i);
            assert_eq!(hom_space(&s, &s).unwrap().dim(), 1);
        }
        let s0 = Representation::simple(&a, 0);
        let s1 = Representation::simple(&a, 1);
        assert_eq!(hom_space(&s0, &s1).unwrap().dim(), 0);
    }

    #[test]
    fn fast_path_matches_linear_system() {
        let a = data::ex1().unwrap().into_shared();
        let ps = projective_modules(&a);
        for p in &ps {
            for q in &ps {
                let general = hom_space(&p.rep, &q.rep).unwrap();
                let fast = hom_from_projective(p, &q.rep).unwrap();
                assert_eq!(general.dim(), fast.dim());
                for h in &fast.basis {
                    for b in 0..a.dim() {
                        let lhs = p.rep.action(b).mul(h).unwrap();
                        let rhs = h.mul(q.rep.action(b)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
