#![allow(dead_code)]

use rand::Rng;
use tiltbench::field::{Field, FieldSpec, Scalar};
use tiltbench::matrix::{Matrix, Side};
use tiltbench::module::HomSpace;

pub fn gf(p: u32, e: u32) -> Field {
    Field::new(FieldSpec::with_default_modulus(p, e).unwrap()).unwrap()
}

/// Every field axiom over all elements (triples for associativity and
/// distributivity).
pub fn check_field_axioms(f: &Field) -> Result<(), String> {
    let els: Vec<Scalar> = f.elements().collect();
    let (zero, one) = (Scalar::ZERO, Scalar::ONE);
    for &a in &els {
        if f.add(a, zero) != a || f.mul(a, one) != a {
            return Err(format!("identity fails at {}", f.format(a)));
        }
        if f.add(a, f.neg(a)) != zero {
            return Err(format!("additive inverse fails at {}", f.format(a)));
        }
        if !a.is_zero() && f.mul(a, f.inv(a).map_err(|e| e.to_string())?) != one {
            return Err(format!("multiplicative inverse fails at {}", f.format(a)));
        }
        for &b in &els {
            if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                return Err(format!("commutativity fails at {}, {}", f.format(a), f.format(b)));
            }
            for &c in &els {
                if f.add(f.add(a, b), c) != f.add(a, f.add(b, c)) {
                    return Err("additive associativity fails".into());
                }
                if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)) {
                    return Err("multiplicative associativity fails".into());
                }
                if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)) {
                    return Err("distributivity fails".into());
                }
            }
        }
    }
    Ok(())
}

pub fn random_matrix<R: Rng>(rng: &mut R, f: &Field, rows: usize, cols: usize) -> Matrix {
    let q = f.size();
    let mut m = Matrix::zeros(f, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, f.element(rng.gen_range(0..q)).unwrap());
        }
    }
    m
}

pub fn random_vector<R: Rng>(rng: &mut R, f: &Field, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| f.element(rng.gen_range(0..f.size())).unwrap()).collect()
}

/// rref idempotence, rank symmetry, solve round trip and left/right kernels.
pub fn check_matrix_round_trip(m: &Matrix, x: &[Scalar]) -> Result<(), String> {
    let r = m.rref();
    if r.matrix.rref().matrix != r.matrix {
        return Err("rref is not idempotent".into());
    }
    if m.rank() != m.transpose().rank() {
        return Err(format!("rank {} but transpose rank {}", m.rank(), m.transpose().rank()));
    }
    let target = m.vec_mul(x);
    let y = m.solve(&target).map_err(|e| e.to_string())?.ok_or("consistent system reported unsolvable")?;
    if m.vec_mul(&y) != target {
        return Err("solution does not reproduce the target".into());
    }
    let left = m.kernel(Side::Left);
    if left.dim() + m.rank() != m.rows() {
        return Err("left kernel has the wrong dimension".into());
    }
    for k in 0..left.dim() {
        if m.vec_mul(left.basis.row(k)).iter().any(|c| !c.is_zero()) {
            return Err("left kernel vector is not killed".into());
        }
    }
    let right = m.kernel(Side::Right);
    if right.dim() + m.rank() != m.cols() {
        return Err("right kernel has the wrong dimension".into());
    }
    for k in 0..right.dim() {
        if m.transpose().vec_mul(right.basis.row(k)).iter().any(|c| !c.is_zero()) {
            return Err("right kernel vector is not killed".into());
        }
    }
    Ok(())
}

/// `action_m(b) F = F action_n(b)` for every basis element.
pub fn intertwines(f: &Matrix, action_m: &[Matrix], action_n: &[Matrix]) -> bool {
    action_m.iter().zip(action_n).all(|(am, an)| am.mul(f).unwrap() == f.mul(an).unwrap())
}

pub fn random_hom<R: Rng>(rng: &mut R, h: &HomSpace, field: &Field) -> Option<Matrix> {
    let coeffs = random_vector(rng, field, h.dim());
    h.combination(&coeffs)
}
