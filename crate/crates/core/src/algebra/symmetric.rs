//! Search for a symmetrizing form `λ` with `λ(ab) = λ(ba)` and a
//! nondegenerate Gram matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::Scalar;
use crate::matrix::{Matrix, Side};

use super::PartitionedAlgebra;

const ENUMERATION_LIMIT: u64 = 1_000_000;
const RANDOM_SAMPLES: usize = 1000;
const SEED: u64 = 0x5f0_12e5;

/// A linear functional in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizingForm {
    pub coeffs: Vec<Scalar>,
}

impl SymmetrizingForm {
    pub fn eval(&self, a: &PartitionedAlgebra, v: &[Scalar]) -> Scalar {
        let f = a.field();
        v.iter().zip(&self.coeffs).fold(Scalar::ZERO, |acc, (&x, &c)| f.add(acc, f.mul(x, c)))
    }

    /// Gram matrix `(λ(b_x b_y))`.
    pub fn gram(&self, a: &PartitionedAlgebra) -> Matrix {
        let n = a.dim();
        let mut g = Matrix::zeros(a.field(), n, n);
        for x in 0..n {
            for y in 0..n {
                g.set(x, y, self.eval(a, a.basis_product(x, y)));
            }
        }
        g
    }

    pub fn verify(&self, a: &PartitionedAlgebra) -> bool {
        if self.coeffs.len() != a.dim() {
            return false;
        }
        let g = self.gram(a);
        g == g.transpose() && g.rank() == a.dim()
    }
}

/// Outcome of the search. A missing form does not prove the algebra is not
/// symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricSearch {
    #[serde(skip)]
    pub form: Option<SymmetrizingForm>,
    /// Dimension of the space of trace-like functionals.
    pub trace_space_dim: usize,
    pub exhaustive: bool,
    pub candidates_tried: u64,
    pub note: String,
}

impl SymmetricSearch {
    pub fn is_verified(&self) -> bool {
        self.form.is_some()
    }
}

pub fn find_symmetrizing_form(a: &PartitionedAlgebra) -> SymmetricSearch {
    let n = a.dim();
    let f = a.field();
    if let Some(attached) = a.attached_form() {
        let form = SymmetrizingForm { coeffs: attached.to_vec() };
        if form.verify(a) {
            return SymmetricSearch {
                form: Some(form),
                trace_space_dim: 0,
                exhaustive: false,
                candidates_tried: 1,
                note: "verified symmetric (attached form)".into(),
            };
        }
    }
    // λ vanishes on every commutator b_x b_y - b_y b_x
    let mut rows = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let d: Vec<Scalar> =
                a.basis_product(x, y).iter().zip(a.basis_product(y, x)).map(|(&u, &v)| f.sub(u, v)).collect();
            if d.iter().any(|c| !c.is_zero()) {
                rows.push(d);
            }
        }
    }
    let space = if rows.is_empty() {
        Matrix::identity(f, n)
    } else {
        Matrix::from_rows(f, n, &rows).kernel(Side::Right).basis
    };
    let d = space.rows();
    let elements: Vec<Scalar> = f.elements().collect();
    let q = elements.len() as u64;
    let mut tried = 0u64;
    let try_coeffs = |c: &[Scalar], tried: &mut u64| -> Option<SymmetrizingForm> {
        *tried += 1;
        let mut lambda = vec![Scalar::ZERO; n];
        for (k, &ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                f.axpy(&mut lambda, ck, space.row(k));
            }
        }
        let form = SymmetrizingForm { coeffs: lambda };
        form.verify(a).then_some(form)
    };

    let total = (0..d).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&v| v <= ENUMERATION_LIMIT));
    let mut found = None;
    let exhaustive = total.is_some();
    if let Some(total) = total {
        let mut digits = vec![0usize; d];
        let mut coeffs = vec![Scalar::ZERO; d];
        for _ in 1..total {
            for k in 0..d {
                digits[k] += 1;
                if digits[k] == elements.len() {
                    digits[k] = 0;
                    coeffs[k] = elements[0];
                } else {
                    coeffs[k] = elements[digits[k]];
                    break;
                }
            }
            if let Some(form) = try_coeffs(&coeffs, &mut tried) {
                found = Some(form);
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut coeffs = vec![Scalar::ZERO; d];
        for _ in 0..RANDOM_SAMPLES {
            for c in coeffs.iter_mut() {
                *c = elements[rng.gen_range(0..elements.len())];
            }
            if let Some(form) = try_coeffs(&coeffs, &mut tried) {
                found = Some(form);
                break;
            }
        }
    }
    let note = match (&found, exhaustive) {
        (Some(_), _) => "verified symmetric (form found by search)".to_string(),
        (None, true) => "not verified symmetric: no nondegenerate trace-like form exists".to_string(),
        (None, false) => format!("not verified symmetric: none found in {tried} sampled candidates (not a proof)"),
    };
    SymmetricSearch { form: found, trace_space_dim: d, exhaustive, candidates_tried: tried, note }
}
