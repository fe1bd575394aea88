//! Bounded complexes of projectives, described by formal sums of the
//! indecomposable projectives `P_i = e_i A` and differentials whose blocks
//! are elements of `e_b A e_a`.
//!
//! Degrees are cohomological: the differential raises degree by one and the
//! shift `[1]` moves a term from degree `d` to degree `d - 1`.

mod hom;
mod random;
mod tilt;

use serde::{Deserialize, Serialize};

use crate::algebra::PartitionedAlgebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::module::{ProjectiveModule, Representation};

pub use hom::{duality_check, hom_complex_dims, hom_complex_dims_realized, DualityRow, HomDims};
pub use random::{random_complex, RandomComplexSpec};
pub use tilt::{
    cartan_of_tilt, default_window, determinant, or_summand, or_tilting, trace_resolution, verify_tilting, CartanTable,
    TiltingReport, TraceResolution, TriangleCertificate,
};

/// A formal direct sum `⊕ P_{summands[k]}`, in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjSum {
    pub summands: Vec<usize>,
}

impl ProjSum {
    pub fn new(summands: Vec<usize>) -> Self {
        ProjSum { summands }
    }

    /// `P_i^m`.
    pub fn power(i: usize, m: usize) -> Self {
        ProjSum { summands: vec![i; m] }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn multiplicities(&self, num_simples: usize) -> Vec<usize> {
        let mut m = vec![0; num_simples];
        for &i in &self.summands {
            m[i] += 1;
        }
        m
    }

    pub fn realized_dim(&self, projs: &[ProjectiveModule]) -> usize {
        self.summands.iter().map(|&i| projs[i].dim()).sum()
    }

    /// Row offset of each summand in the realized module.
    pub fn offsets(&self, projs: &[ProjectiveModule]) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut o = 0;
        for &i in &self.summands {
            out.push(o);
            o += projs[i].dim();
        }
        out
    }

    pub fn realize(&self, projs: &[ProjectiveModule]) -> Result<Representation> {
        match self.summands.first() {
            None => Err(Error::InvalidArgument("empty sum has no realization here".into())),
            Some(&first) => {
                let parts: Vec<&Representation> = self.summands.iter().map(|&i| &projs[i].rep).collect();
                if parts.len() == 1 {
                    Ok(projs[first].rep.clone())
                } else {
                    Representation::direct_sum(&parts)
                }
            }
        }
    }

    /// `P_1^2 + P_0` style notation using simple labels.
    pub fn describe(&self, labels: &[String]) -> String {
        if self.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.summands.len() {
            let i = self.summands[k];
            let run = self.summands[k..].iter().take_while(|&&x| x == i).count();
            parts.push(if run == 1 { format!("P({})", labels[i]) } else { format!("P({})^{run}", labels[i]) });
            k += run;
        }
        parts.join(" + ")
    }
}

/// A map between formal sums. `blocks[a][b]` is the element `u` of
/// `e_{target_b} A e_{source_a}` for the component `x -> u x` from the
/// `a`-th source summand to the `b`-th target summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub source: ProjSum,
    pub target: ProjSum,
    pub blocks: Vec<Vec<Vec<Scalar>>>,
}

impl ProjMap {
    pub fn zero(a: &PartitionedAlgebra, source: ProjSum, target: ProjSum) -> Self {
        let blocks = vec![vec![vec![Scalar::ZERO; a.dim()]; target.len()]; source.len()];
        ProjMap { source, target, blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(|c| c.is_zero())
    }

    /// `self` followed by `next`.
    pub fn then(&self, a: &PartitionedAlgebra, next: &ProjMap) -> Result<ProjMap> {
        if self.target != next.source {
            return Err(Error::ShapeMismatch("composable maps must share the middle sum".into()));
        }
        let f = a.field();
        let mut out = ProjMap::zero(a, self.source.clone(), next.target.clone());
        for (alpha, row) in self.blocks.iter().enumerate() {
            for (beta, u) in row.iter().enumerate() {
                if u.iter().all(|c| c.is_zero()) {
                    continue;
                }
                for (gamma, w) in next.blocks[beta].iter().enumerate() {
                    if w.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let p = a.mul(w, u);
                    f.axpy(&mut out.blocks[alpha][gamma], Scalar::ONE, &p);
                }
            }
        }
        Ok(out)
    }

    /// Every block lies in the corner it should.
    pub fn check_corners(&self, a: &PartitionedAlgebra) -> bool {
        self.blocks.iter().enumerate().all(|(alpha, row)| {
            row.iter().enumerate().all(|(beta, u)| {
                let es = a.idempotent(self.source.summands[alpha]);
                let et = a.idempotent(self.target.summands[beta]);
                a.mul(&a.mul(&et, u), &es) == *u
            })
        })
    }

    /// The concrete matrix between realized sums.
    pub fn realize(&self, projs: &[ProjectiveModule]) -> Matrix {
        let field = projs[0].rep.field().clone();
        let so = self.source.offsets(projs);
        let to = self.target.offsets(projs);
        let mut m = Matrix::zeros(&field, self.source.realized_dim(projs), self.target.realized_dim(projs));
        for (alpha, row) in self.blocks.iter().enumerate() {
            let p = &projs[self.source.summands[alpha]];
            for (beta, u) in row.iter().enumerate() {
                if u.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let q = &projs[self.target.summands[beta]];
                m.set_block(so[alpha], to[beta], &p.left_mult_matrix(u, q));
            }
        }
        m
    }
}

/// `terms[k]` sits in degree `bottom + k`; `diffs[k]` maps `terms[k]` to
/// `terms[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub bottom: i64,
    pub terms: Vec<ProjSum>,
    pub diffs: Vec<ProjMap>,
}

impl Complex {
    pub fn zero() -> Self {
        Complex { bottom: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `P_i` alone in the given degree.
    pub fn stalk(i: usize, degree: i64) -> Self {
        Complex { bottom: degree, terms: vec![ProjSum::power(i, 1)], diffs: Vec::new() }
    }

    pub fn new(bottom: i64, terms: Vec<ProjSum>, diffs: Vec<ProjMap>) -> Result<Self> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::ShapeMismatch("a complex needs one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source != terms[k] || d.target != terms[k + 1] {
                return Err(Error::ShapeMismatch(format!("differential {k} does not match its terms")));
            }
        }
        Ok(Complex { bottom, terms, diffs })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(ProjSum::is_empty)
    }

    pub fn top(&self) -> i64 {
        self.bottom + self.terms.len() as i64 - 1
    }

    pub fn term(&self, degree: i64) -> Option<&ProjSum> {
        let k = degree - self.bottom;
        if k < 0 {
            return None;
        }
        self.terms.get(k as usize).filter(|t| !t.is_empty())
    }

    /// The differential leaving `degree`, when both ends are nonzero.
    pub fn diff(&self, degree: i64) -> Option<&ProjMap> {
        let k = degree - self.bottom;
        if k < 0 {
            return None;
        }
        let d = self.diffs.get(k as usize)?;
        (!d.source.is_empty() && !d.target.is_empty()).then_some(d)
    }

    /// `X[n]`: the term in degree `d` moves to degree `d - n`.
    pub fn shift(&self, n: i64) -> Complex {
        Complex { bottom: self.bottom - n, terms: self.terms.clone(), diffs: self.diffs.clone() }
    }

    /// Degrees carrying a nonzero term.
    pub fn support(&self) -> Vec<i64> {
        (0..self.terms.len() as i64).map(|k| self.bottom + k).filter(|&d| self.term(d).is_some()).collect()
    }

    /// Checks that every block lies in its corner and `d ∘ d = 0`.
    pub fn verify(&self, a: &PartitionedAlgebra) -> Result<()> {
        for (k, d) in self.diffs.iter().enumerate() {
            if !d.check_corners(a) {
                return Err(Error::InvalidArgument(format!(
                    "differential in degree {} has a block outside its hom space",
                    self.bottom + k as i64
                )));
            }
        }
        for k in 1..self.diffs.len() {
            let dd = self.diffs[k - 1].then(a, &self.diffs[k])?;
            if !dd.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "d∘d is nonzero starting in degree {}",
                    self.bottom + k as i64 - 1
                )));
            }
        }
        Ok(())
    }

    /// Direct sum of two complexes.
    pub fn direct_sum(&self, a: &PartitionedAlgebra, other: &Complex) -> Complex {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.bottom.min(other.bottom);
        let hi = self.top().max(other.top());
        let get = |c: &Complex, d: i64| c.term(d).cloned().unwrap_or_default();
        let terms: Vec<ProjSum> = (lo..=hi)
            .map(|d| {
                let mut s = get(self, d).summands;
                s.extend(get(other, d).summands);
                ProjSum::new(s)
            })
            .collect();
        let diffs = (lo..hi)
            .map(|d| {
                let k = (d - lo) as usize;
                let mut m = ProjMap::zero(a, terms[k].clone(), terms[k + 1].clone());
                let (n1, m1) = (get(self, d).len(), get(self, d + 1).len());
                if let Some(x) = self.diff(d) {
                    for (r, row) in x.blocks.iter().enumerate() {
                        for (c, u) in row.iter().enumerate() {
                            m.blocks[r][c] = u.clone();
                        }
                    }
                }
                if let Some(y) = other.diff(d) {
                    for (r, row) in y.blocks.iter().enumerate() {
                        for (c, u) in row.iter().enumerate() {
                            m.blocks[n1 + r][m1 + c] = u.clone();
                        }
                    }
                }
                m
            })
            .collect();
        Complex { bottom: lo, terms, diffs }
    }

    /// One line per degree, e.g. `-1: P(k)^2`.
    pub fn describe(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .enumerate()
            .map(|(k, t)| format!("{}: {}", self.bottom + k as i64, t.describe(labels)))
            .collect::<Vec<_>>()
            .join(" -> ")
    }
}
