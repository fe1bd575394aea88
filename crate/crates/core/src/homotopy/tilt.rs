//! The iterated tilting complexes `T^(t)` and their Cartan invariants.
//!
//! For `j` outside the chosen set `I_0`, `T_j^(t)` is
//! `R_j^(t-1) -> ... -> R_j^(0) -> P_j` with `P_j` in degree 0, where
//! `R_j^(0)` covers the trace of `Q_0` in `P_j` and each later `R_j^(s)`
//! covers the trace of `Q_0` in the kernel of the previous differential.
//! For `i` in `I_0`, `T_i^(t) = P_i[t]`.

use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{PartitionedAlgebra, TransportData};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::module::cover::cover_with;
use crate::module::{projective_modules, trace_of_projectives};

use super::hom::hom_complex_dims;
use super::{Complex, ProjMap, ProjSum};

/// The A-side resolution `... -> R^(1) -> R^(0) -> P_j`.
#[derive(Clone, Debug)]
pub struct TraceResolution {
    pub target: usize,
    pub take: Vec<usize>,
    /// `R^(0), R^(1), ...`
    pub terms: Vec<ProjSum>,
    /// `diffs[0]: R^(0) -> P_j`, `diffs[s]: R^(s) -> R^(s-1)`.
    pub diffs: Vec<ProjMap>,
    /// Dimension of the trace covered at each step.
    pub trace_dims: Vec<usize>,
    /// Dimension of the kernel left after each step.
    pub kernel_dims: Vec<usize>,
}

pub fn trace_resolution(
    a: &Arc<PartitionedAlgebra>,
    take: &[usize],
    j: usize,
    steps: usize,
    cap: usize,
) -> Result<TraceResolution> {
    let f = a.field().clone();
    let projs = projective_modules(a);
    let mut out = TraceResolution {
        target: j,
        take: take.to_vec(),
        terms: Vec::new(),
        diffs: Vec::new(),
        trace_dims: Vec::new(),
        kernel_dims: Vec::new(),
    };
    let mut prev = ProjSum::power(j, 1);
    let mut module = projs[j].rep.clone();
    // rows: basis of `module` in coordinates of the realized `prev`
    let mut embedding = Matrix::identity(&f, projs[j].dim());
    for s in 0..steps {
        let trace = trace_of_projectives(take, &module);
        let sub = module.submodule(&trace);
        let cover = cover_with(&sub, &projs);
        if let Some(&bad) = cover.summands.iter().find(|i| !take.contains(i)) {
            return Err(Error::InvalidArgument(format!(
                "term {s} of the trace resolution contains P_{bad}, outside the chosen set"
            )));
        }
        if cover.cover_dim() > cap {
            return Err(Error::CapExceeded {
                dim: cover.cover_dim(),
                cap,
                context: format!("term {s} of the trace resolution of P_{j}"),
            });
        }
        let term = ProjSum::new(cover.summands.clone());
        let mut map = ProjMap::zero(a, term.clone(), prev.clone());
        if !cover.generators.is_empty() {
            let gens = Matrix::from_rows(&f, sub.dim(), &cover.generators);
            let in_prev = gens.mul(&trace.basis)?.mul(&embedding)?;
            let offsets = prev.offsets(&projs);
            for alpha in 0..term.len() {
                let row = in_prev.row(alpha);
                for (beta, &i) in prev.summands.iter().enumerate() {
                    let p = &projs[i];
                    let coords = &row[offsets[beta]..offsets[beta] + p.dim()];
                    let mut elem = vec![Scalar::ZERO; a.dim()];
                    for (k, &c) in coords.iter().enumerate() {
                        if !c.is_zero() {
                            f.axpy(&mut elem, c, p.element(k));
                        }
                    }
                    map.blocks[alpha][beta] = elem;
                }
            }
        }
        out.trace_dims.push(trace.dim());
        out.kernel_dims.push(cover.kernel.dim());
        out.terms.push(term.clone());
        out.diffs.push(map);
        embedding = cover.kernel.basis.clone();
        module = cover.kernel_module;
        prev = term;
    }
    Ok(out)
}

/// `T_j^(t)` for the chosen set of `transport`.
pub fn or_summand(transport: &TransportData, j: usize, t: usize, cap: usize) -> Result<Complex> {
    let a = &transport.base;
    if j >= a.num_simples() {
        return Err(Error::InvalidArgument(format!("no simple with index {j}")));
    }
    if transport.take.contains(&j) || t == 0 {
        return Ok(Complex::stalk(j, -(t as i64)));
    }
    let res = trace_resolution(a, &transport.take, j, t, cap)?;
    let mut terms: Vec<ProjSum> = res.terms.iter().rev().cloned().collect();
    terms.push(ProjSum::power(j, 1));
    let diffs: Vec<ProjMap> = res.diffs.into_iter().rev().collect();
    Complex::new(-(t as i64), terms, diffs)
}

/// All summands `T_i^(t)`, in simple order.
pub fn or_tilting(transport: &TransportData, t: usize, cap: usize) -> Result<Vec<Complex>> {
    (0..transport.base.num_simples()).map(|j| or_summand(transport, j, t, cap)).collect()
}

/// Evidence that the stalks `P_i` lie in the triangulated closure of the
/// summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleCertificate {
    pub summand: usize,
    /// Multiplicities of the negative-degree terms, lowest degree first.
    pub lower_terms: Vec<Vec<usize>>,
    pub lower_in_add_q0: bool,
    pub degree_zero_is_p: bool,
    pub statement: String,
}

impl TriangleCertificate {
    pub fn holds(&self) -> bool {
        self.lower_in_add_q0 && self.degree_zero_is_p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingReport {
    pub t: usize,
    pub window: (i64, i64),
    pub complexes_valid: bool,
    /// Number of `(i, j, n)` triples checked.
    pub checked: usize,
    /// `(i, j, n, dim)` with `Hom(T_i, T_j[n]) != 0`, `n != 0`.
    pub offending: Vec<(usize, usize, i64, usize)>,
    pub certificates: Vec<TriangleCertificate>,
    pub passed: bool,
}

/// Default window `[-(t+1), t+1]`: outside it every hom space vanishes since
/// the summands occupy at most `t + 1` consecutive degrees.
pub fn default_window(t: usize) -> RangeInclusive<i64> {
    -(t as i64 + 1)..=(t as i64 + 1)
}

pub fn verify_tilting(
    transport: &TransportData,
    ts: &[Complex],
    t: usize,
    window: Option<RangeInclusive<i64>>,
) -> Result<TiltingReport> {
    let a = &transport.base;
    let labels = a.simple_labels();
    let window = window.unwrap_or_else(|| default_window(t));
    let complexes_valid = ts.len() == a.num_simples() && ts.iter().all(|c| c.verify(a).is_ok());
    let mut offending = Vec::new();
    let mut checked = 0;
    for (i, x) in ts.iter().enumerate() {
        for (j, y) in ts.iter().enumerate() {
            for n in window.clone() {
                if n == 0 {
                    continue;
                }
                checked += 1;
                let d = hom_complex_dims(a, x, y, n)?;
                if d.hom != 0 {
                    offending.push((i, j, n, d.hom));
                }
            }
        }
    }

    let take = &transport.take;
    let mut certificates = Vec::new();
    for (j, c) in ts.iter().enumerate() {
        let lower: Vec<&ProjSum> = (c.bottom..0).filter_map(|d| c.term(d)).collect();
        let lower_in_add_q0 = lower.iter().all(|s| s.summands.iter().all(|i| take.contains(i)));
        let cert = if take.contains(&j) {
            let ok = c.support() == vec![-(t as i64)] && c.term(-(t as i64)).map(|s| s.summands == vec![j]) == Some(true);
            TriangleCertificate {
                summand: j,
                lower_terms: Vec::new(),
                lower_in_add_q0: ok,
                degree_zero_is_p: ok,
                statement: format!("T_{0} = P({0})[{t}], so P({0}) is a shift of a summand", labels[j]),
            }
        } else {
            let degree_zero_is_p = c.term(0).map(|s| s.summands == vec![j]) == Some(true) && c.top() == 0;
            let lower_terms: Vec<Vec<usize>> = lower.iter().map(|s| s.multiplicities(a.num_simples())).collect();
            TriangleCertificate {
                summand: j,
                lower_terms,
                lower_in_add_q0,
                degree_zero_is_p,
                statement: format!(
                    "R -> P({0}) -> T_{0} -> R[1] with R built from P(i), i in the chosen set, by iterated cones; \
                     hence P({0}) lies in the closure",
                    labels[j]
                ),
            }
        };
        certificates.push(cert);
    }
    let passed = complexes_valid && offending.is_empty() && certificates.iter().all(TriangleCertificate::holds);
    Ok(TiltingReport {
        t,
        window: (*window.start(), *window.end()),
        complexes_valid,
        checked,
        offending,
        certificates,
        passed,
    })
}

/// `c_ij = dim Hom_{K^b}(T_i, T_j)`.
pub fn cartan_of_tilt(a: &PartitionedAlgebra, ts: &[Complex]) -> Result<Vec<Vec<usize>>> {
    ts.iter()
        .map(|x| ts.iter().map(|y| Ok(hom_complex_dims(a, x, y, 0)?.hom)).collect())
        .collect()
}

/// The matrices `c^(t)` for `t = 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanTable {
    pub take: Vec<usize>,
    pub matrices: Vec<Vec<Vec<usize>>>,
}

impl CartanTable {
    pub fn build(transport: &TransportData, t_max: usize, cap: usize) -> Result<CartanTable> {
        let matrices = (0..=t_max)
            .map(|t| cartan_of_tilt(&transport.base, &or_tilting(transport, t, cap)?))
            .collect::<Result<_>>()?;
        Ok(CartanTable { take: transport.take.clone(), matrices })
    }

    pub fn determinants(&self) -> Vec<BigInt> {
        self.matrices.iter().map(|m| determinant(m)).collect()
    }

    pub fn symmetric(&self) -> Vec<bool> {
        self.matrices
            .iter()
            .map(|m| (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i])))
            .collect()
    }

    pub fn determinant_constant(&self) -> bool {
        let d = self.determinants();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// The `I_0 x I_0` block agrees with `c^(0)` for every `t`.
    pub fn block_stable(&self) -> bool {
        let Some(first) = self.matrices.first() else { return true };
        self.matrices
            .iter()
            .all(|m| self.take.iter().all(|&i| self.take.iter().all(|&j| m[i][j] == first[i][j])))
    }
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<usize>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
