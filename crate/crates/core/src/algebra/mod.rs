//! Finite-dimensional basic algebras given by structure constants, with a
//! basis split into primitive orthogonal idempotents and a radical basis.

mod endo;
mod format;
mod group;
mod symmetric;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, Subspace};

pub use endo::{endomorphism_algebra, HomBasisElement, TransportData};
pub use format::{parse_algebra_file, parse_group_file, parse_input, ParsedInput, RawAlgebra};
pub use group::{build_group_algebra, GroupTable};
pub use symmetric::{find_symmetrizing_form, SymmetricSearch, SymmetrizingForm};

/// Which axiom a diagnostic refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagnosticKind {
    Shape,
    UnitAxiom,
    Associativity,
    IdempotentsNotOrthogonal,
    IdempotentsIncomplete,
    RadicalNotIdeal,
    RadicalNotNilpotent,
    QuotientNotSplitBasic,
}

/// A violated axiom, with the basis labels witnessing the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub witness: Vec<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            DiagnosticKind::Shape => "malformed algebra",
            DiagnosticKind::UnitAxiom => "unit is not two-sided",
            DiagnosticKind::Associativity => "multiplication not associative",
            DiagnosticKind::IdempotentsNotOrthogonal => "idempotents not orthogonal",
            DiagnosticKind::IdempotentsIncomplete => "idempotents do not sum to one",
            DiagnosticKind::RadicalNotIdeal => "radical span is not a two-sided ideal",
            DiagnosticKind::RadicalNotNilpotent => "radical span is not nilpotent",
            DiagnosticKind::QuotientNotSplitBasic => "quotient by radical is not split basic",
        };
        write!(f, "{head}: {}", self.message)?;
        if !self.witness.is_empty() {
            write!(f, " [witness: {}]", self.witness.join(", "))?;
        }
        Ok(())
    }
}

/// A basic algebra with a designated idempotent/radical basis partition.
///
/// Structure constants are stored as right-multiplication matrices:
/// row `a` of `right[b]` is the coordinate vector of `basis[a] * basis[b]`.
#[derive(Clone)]
pub struct PartitionedAlgebra {
    name: String,
    field: Field,
    labels: Vec<String>,
    one: Vec<Scalar>,
    idem_idx: Vec<usize>,
    rad_idx: Vec<usize>,
    right: Vec<Matrix>,
    form: Option<Vec<Scalar>>,
}

impl fmt::Debug for PartitionedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartitionedAlgebra")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("simples", &self.simple_labels())
            .finish()
    }
}

impl PartialEq for PartitionedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.labels == other.labels
            && self.one == other.one
            && self.idem_idx == other.idem_idx
            && self.right == other.right
    }
}

impl PartitionedAlgebra {
    /// Builds and validates an algebra. `mult[a][b]` is the coordinate
    /// vector of `basis[a] * basis[b]`.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        one: Vec<Scalar>,
        idem_idx: Vec<usize>,
        rad_idx: Vec<usize>,
        mult: &[Vec<Vec<Scalar>>],
    ) -> Result<Self> {
        let n = labels.len();
        let mut diags = Vec::new();
        if one.len() != n {
            diags.push(shape_diag(format!("unit has {} coordinates, dimension is {n}", one.len())));
        }
        if mult.len() != n || mult.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            diags.push(shape_diag("structure-constant table has the wrong shape".into()));
        }
        let mut seen = vec![0u8; n];
        for &i in idem_idx.iter().chain(&rad_idx) {
            if i >= n {
                diags.push(shape_diag(format!("basis index {i} out of range")));
            } else {
                seen[i] += 1;
            }
        }
        if diags.is_empty() && seen.iter().any(|&c| c != 1) {
            diags.push(shape_diag(
                "idempotent and radical labels must partition the basis".into(),
            ));
        }
        if idem_idx.is_empty() && n > 0 {
            diags.push(shape_diag("no idempotents given".into()));
        }
        if !diags.is_empty() {
            return Err(Error::Validation(diags));
        }
        let right = (0..n)
            .map(|b| {
                let rows: Vec<Vec<Scalar>> = (0..n).map(|a| mult[a][b].clone()).collect();
                Matrix::from_rows(&field, n, &rows)
            })
            .collect();
        let alg = PartitionedAlgebra {
            name: name.into(),
            field,
            labels,
            one,
            idem_idx,
            rad_idx,
            right,
            form: None,
        };
        let diags = alg.diagnostics();
        if diags.is_empty() {
            Ok(alg)
        } else {
            Err(Error::Validation(diags))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> &[Scalar] {
        &self.one
    }

    /// Basis positions of the primitive idempotents, in simple-module order.
    pub fn idem_idx(&self) -> &[usize] {
        &self.idem_idx
    }

    pub fn rad_idx(&self) -> &[usize] {
        &self.rad_idx
    }

    pub fn num_simples(&self) -> usize {
        self.idem_idx.len()
    }

    /// Labels of the simple modules (the idempotent labels).
    pub fn simple_labels(&self) -> Vec<String> {
        self.idem_idx.iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn simple_index(&self, label: &str) -> Option<usize> {
        self.idem_idx.iter().position(|&i| self.labels[i] == label)
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Right multiplication by the basis element `b`.
    pub fn right_mult(&self, b: usize) -> &Matrix {
        &self.right[b]
    }

    pub fn right_mults(&self) -> &[Matrix] {
        &self.right
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; self.dim()];
        v[i] = Scalar::ONE;
        v
    }

    /// Coordinate vector of the `i`-th primitive idempotent.
    pub fn idempotent(&self, i: usize) -> Vec<Scalar> {
        self.basis_vector(self.idem_idx[i])
    }

    /// Structure constants of `basis[a] * basis[b]`.
    pub fn basis_product(&self, a: usize, b: usize) -> &[Scalar] {
        self.right[b].row(a)
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::ZERO; n];
        for (b, &vb) in v.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            let ub = self.right[b].vec_mul(u);
            self.field.axpy(&mut out, vb, &ub);
        }
        out
    }

    /// Right multiplication by a general element.
    pub fn right_mult_by(&self, v: &[Scalar]) -> Matrix {
        combine(&self.field, self.dim(), &self.right, v)
    }

    /// Left multiplication by a general element `u` as a matrix acting on
    /// row vectors: row `b` is `u * basis[b]`.
    pub fn left_mult_by(&self, u: &[Scalar]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = (0..self.dim()).map(|b| self.right[b].vec_mul(u)).collect();
        Matrix::from_rows(&self.field, self.dim(), &rows)
    }

    /// The symmetrizing form attached at construction time, if any.
    pub fn attached_form(&self) -> Option<&[Scalar]> {
        self.form.as_deref()
    }

    pub(crate) fn with_form(mut self, form: Vec<Scalar>) -> Self {
        self.form = Some(form);
        self
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| (0..n).all(|b| self.basis_product(a, b) == self.basis_product(b, a)))
    }

    /// Whether the algebra is local (a single simple module).
    pub fn is_local(&self) -> bool {
        self.num_simples() == 1
    }

    /// `e_j A e_i`, the space realizing `Hom_A(P_i, P_j)`, as a subspace of A.
    pub fn corner(&self, target: usize, source: usize) -> Subspace {
        let ej = self.idempotent(target);
        let ei = self.idempotent(source);
        let left = self.left_mult_by(&ej);
        let right = self.right_mult_by(&ei);
        Subspace::from_rows(&left.mul(&right).expect("square"))
    }

    /// Cartan matrix: entry (i, j) is `dim Hom_A(P_i, P_j) = dim e_j A e_i`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let s = self.num_simples();
        (0..s).map(|i| (0..s).map(|j| self.corner(j, i).dim()).collect()).collect()
    }

    /// Powers of the radical J^1, J^2, ... down to zero (J^0 = A omitted).
    pub fn radical_powers(&self) -> Vec<Subspace> {
        let n = self.dim();
        let mut powers = Vec::new();
        let mut rows: Vec<Vec<Scalar>> = self.rad_idx.iter().map(|&r| self.basis_vector(r)).collect();
        let mut current = Subspace::from_rows(&Matrix::from_rows(&self.field, n, &rows));
        for _ in 0..=n {
            if current.dim() == 0 {
                break;
            }
            powers.push(current.clone());
            rows.clear();
            for k in 0..current.dim() {
                for &r in &self.rad_idx {
                    rows.push(self.right[r].vec_mul(current.basis.row(k)));
                }
            }
            current = Subspace::from_rows(&Matrix::from_rows(&self.field, n, &rows));
        }
        powers
    }

    /// Dimensions of the radical layers J^s / J^{s+1}, s = 0, 1, ...
    pub fn radical_layers(&self) -> Vec<usize> {
        let mut dims = vec![self.dim()];
        dims.extend(self.radical_powers().iter().map(|s| s.dim()));
        dims.push(0);
        dims.windows(2).map(|w| w[0] - w[1]).filter(|&d| d > 0).collect()
    }

    /// Runs every axiom check and returns the violations found.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let n = self.dim();
        let f = &self.field;
        let lbl = |i: usize| self.labels[i].clone();

        // unit
        let left_one = self.left_mult_by(&self.one);
        let right_one = self.right_mult_by(&self.one);
        let id = Matrix::identity(f, n);
        for b in 0..n {
            if left_one.row(b) != id.row(b) || right_one.row(b) != id.row(b) {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::UnitAxiom,
                    witness: vec![lbl(b)],
                    message: format!("1*{0} or {0}*1 differs from {0}", lbl(b)),
                });
                break;
            }
        }

        // associativity on all basis triples
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.basis_product(a, b).to_vec();
                for c in 0..n {
                    let lhs = self.right[c].vec_mul(&ab);
                    let bc = self.basis_product(b, c);
                    let mut rhs = vec![Scalar::ZERO; n];
                    for (k, &coef) in bc.iter().enumerate() {
                        if !coef.is_zero() {
                            f.axpy(&mut rhs, coef, self.basis_product(a, k));
                        }
                    }
                    if lhs != rhs {
                        diags.push(Diagnostic {
                            kind: DiagnosticKind::Associativity,
                            witness: vec![lbl(a), lbl(b), lbl(c)],
                            message: format!("({}*{})*{} != {}*({}*{})", lbl(a), lbl(b), lbl(c), lbl(a), lbl(b), lbl(c)),
                        });
                        break 'assoc;
                    }
                }
            }
        }
        if !diags.is_empty() {
            return diags;
        }

        // idempotents
        let mut sum = vec![Scalar::ZERO; n];
        for &ei in &self.idem_idx {
            f.axpy(&mut sum, Scalar::ONE, &self.basis_vector(ei));
        }
        'orth: for &ei in &self.idem_idx {
            for &ej in &self.idem_idx {
                let prod = self.basis_product(ei, ej);
                let expected = if ei == ej { self.basis_vector(ei) } else { vec![Scalar::ZERO; n] };
                if prod != expected.as_slice() {
                    diags.push(Diagnostic {
                        kind: DiagnosticKind::IdempotentsNotOrthogonal,
                        witness: vec![lbl(ei), lbl(ej)],
                        message: format!(
                            "{}*{} = {}",
                            lbl(ei),
                            lbl(ej),
                            self.format_element(prod)
                        ),
                    });
                    break 'orth;
                }
            }
        }
        if sum != self.one {
            diags.push(Diagnostic {
                kind: DiagnosticKind::IdempotentsIncomplete,
                witness: self.simple_labels(),
                message: format!("sum of idempotents is {}", self.format_element(&sum)),
            });
        }

        // radical is a two-sided ideal: products with a radical factor have
        // no idempotent coordinates
        let in_rad = |v: &[Scalar]| self.idem_idx.iter().all(|&i| v[i].is_zero());
        'ideal: for &r in &self.rad_idx {
            for b in 0..n {
                for (x, y) in [(r, b), (b, r)] {
                    if !in_rad(self.basis_product(x, y)) {
                        diags.push(Diagnostic {
                            kind: DiagnosticKind::RadicalNotIdeal,
                            witness: vec![lbl(x), lbl(y)],
                            message: format!(
                                "{}*{} = {} leaves the radical span",
                                lbl(x),
                                lbl(y),
                                self.format_element(self.basis_product(x, y))
                            ),
                        });
                        break 'ideal;
                    }
                }
            }
        }
        let ideal_ok = !diags.iter().any(|d| d.kind == DiagnosticKind::RadicalNotIdeal);

        if ideal_ok {
            let powers = self.radical_powers();
            if powers.len() > n {
                diags.push(Diagnostic {
                    kind: DiagnosticKind::RadicalNotNilpotent,
                    witness: Vec::new(),
                    message: format!("J^{} is still nonzero", n + 1),
                });
            } else if let Some(last) = powers.last() {
                // the chain stopped because it reached zero or stabilized
                let mut rows = Vec::new();
                for k in 0..last.dim() {
                    for &r in &self.rad_idx {
                        rows.push(self.right[r].vec_mul(last.basis.row(k)));
                    }
                }
                let next = Subspace::from_rows(&Matrix::from_rows(f, n, &rows));
                if next.dim() != 0 {
                    diags.push(Diagnostic {
                        kind: DiagnosticKind::RadicalNotNilpotent,
                        witness: Vec::new(),
                        message: format!("radical powers stabilize at dimension {}", next.dim()),
                    });
                }
            }
        }

        // split basic: e_i b e_j has no idempotent coordinates for i != j,
        // and only an e_i coordinate for i == j
        'split: for &ei in &self.idem_idx {
            for b in 0..n {
                let eb = self.basis_product(ei, b).to_vec();
                for &ej in &self.idem_idx {
                    let v = self.right[ej].vec_mul(&eb);
                    let bad = self.idem_idx.iter().any(|&k| k != ei && !v[k].is_zero())
                        || (ei != ej && !v[ei].is_zero());
                    if bad {
                        diags.push(Diagnostic {
                            kind: DiagnosticKind::QuotientNotSplitBasic,
                            witness: vec![lbl(ei), lbl(b), lbl(ej)],
                            message: format!(
                                "{}*{}*{} = {}",
                                lbl(ei),
                                lbl(b),
                                lbl(ej),
                                self.format_element(&v)
                            ),
                        });
                        break 'split;
                    }
                }
            }
        }
        diags
    }

    /// Human-readable form of an element, e.g. `2*x + y`.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                if c == Scalar::ONE {
                    self.labels[i].clone()
                } else {
                    format!("{}*{}", self.field.format(c), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn into_shared(self) -> Arc<PartitionedAlgebra> {
        Arc::new(self)
    }
}

fn shape_diag(message: String) -> Diagnostic {
    Diagnostic { kind: DiagnosticKind::Shape, witness: Vec::new(), message }
}

/// `sum_b v[b] * mats[b]`.
pub(crate) fn combine(field: &Field, n: usize, mats: &[Matrix], v: &[Scalar]) -> Matrix {
    let cols = mats.first().map_or(n, |m| m.cols());
    let mut out = Matrix::zeros(field, n, cols);
    for (b, &c) in v.iter().enumerate() {
        if !c.is_zero() {
            out.add_scaled(c, &mats[b]);
        }
    }
    out
}

/// Validates a parsed format-A algebra.
pub fn validate_algebra(raw: &RawAlgebra) -> std::result::Result<PartitionedAlgebra, Vec<Diagnostic>> {
    match raw.build() {
        Ok(a) => Ok(a),
        Err(Error::Validation(d)) => Err(d),
        Err(other) => Err(vec![shape_diag(other.to_string())]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kx2() -> PartitionedAlgebra {
        let f = Field::prime(3).unwrap();
        let (z, o) = (Scalar::ZERO, Scalar::ONE);
        let mult = vec![vec![vec![o, z], vec![z, o]], vec![vec![z, o], vec![z, z]]];
        PartitionedAlgebra::new("kx2", f, vec!["1".into(), "x".into()], vec![o, z], vec![0], vec![1], &mult)
            .unwrap()
    }

    #[test]
    fn dual_numbers() {
        let a = kx2();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.radical_layers(), vec![1, 1]);
        assert_eq!(a.cartan_matrix(), vec![vec![2]]);
        assert!(a.is_commutative());
        assert!(a.is_local());
    }

    #[test]
    fn non_orthogonal_idempotents() {
        // upper triangular 2x2 matrices in the basis e1, f = e2 + x, x, where
        // e1 * f = x
        let f = Field::prime(3).unwrap();
        let (z, o) = (Scalar::ZERO, Scalar::ONE);
        let x = vec![z, z, o];
        let zero = vec![z, z, z];
        let mult = vec![
            vec![vec![o, z, z], x.clone(), x.clone()],
            vec![zero.clone(), vec![z, o, z], zero.clone()],
            vec![zero.clone(), x.clone(), zero.clone()],
        ];
        let err = PartitionedAlgebra::new(
            "bad",
            f.clone(),
            vec!["e1".into(), "f".into(), "x".into()],
            vec![o, o, f.neg(o)],
            vec![0, 1],
            vec![2],
            &mult,
        )
        .unwrap_err();
        let text = err.to_string();
        assert!(text.contains("idempotents not orthogonal"), "{text}");
        assert!(text.contains("e1, f"), "{text}");
    }

    #[test]
    fn radical_not_nilpotent() {
        // k x k with the second factor declared radical
        let f = Field::prime(2).unwrap();
        let (z, o) = (Scalar::ZERO, Scalar::ONE);
        let mult = vec![vec![vec![o, z], vec![z, z]], vec![vec![z, z], vec![z, o]]];
        let err = PartitionedAlgebra::new("kxk", f, vec!["e".into(), "r".into()], vec![o, o], vec![0], vec![1], &mult)
            .unwrap_err();
        let text = err.to_string();
        assert!(text.contains("idempotents do not sum to one"), "{text}");
        assert!(text.contains("not nilpotent") || text.contains("not a two-sided ideal"), "{text}");
    }
}
