//! Growth of minimal resolutions over `E = End(Q_0)`, periodicity,
//! recurrence fitting, verdicts and the Cartan recurrence audit.

mod recurrence;

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{endomorphism_algebra, PartitionedAlgebra, TransportData};
use crate::error::{Error, Result};
use crate::homotopy::{trace_resolution, CartanTable};
use crate::matrix::Matrix;
use crate::module::{
    hom_as_e_module, hom_from_projective, is_isomorphic, minimal_resolution, projective_modules, IsoDecision,
    Representation, SearchPolicy, StepStats,
};

pub use recurrence::{fit_recurrence, to_decimal, RecurrenceFit};

/// Default number of resolution steps.
pub const DEFAULT_STEPS: usize = 12;
/// Default largest `t` for tilting complexes.
pub const DEFAULT_TILT_T: usize = 4;

/// Dimension bookkeeping of the minimal resolution of
/// `M = Hom_A(Q_0, P_j)` over `E`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthSequence {
    pub take: Vec<usize>,
    pub target: usize,
    pub s_max: usize,
    pub records: Vec<StepStats>,
    /// `dim Ω^{s+1} M` after the last record.
    pub next_syzygy_dim: Option<usize>,
    pub truncated: Option<String>,
    #[serde(skip)]
    pub syzygies: Vec<Representation>,
}

// syzygy modules are derived data and do not take part in comparisons
impl PartialEq for GrowthSequence {
    fn eq(&self, other: &Self) -> bool {
        (&self.take, self.target, self.s_max, &self.records, self.next_syzygy_dim, &self.truncated)
            == (&other.take, other.target, other.s_max, &other.records, other.next_syzygy_dim, &other.truncated)
    }
}

impl Eq for GrowthSequence {}

impl GrowthSequence {
    pub fn dims(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.dim).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.socle_dim).collect()
    }

    pub fn head_dims(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.head_dim).collect()
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.term_dim).collect()
    }

    /// Steps `s` where `dim cover(s) != dim Ω^s + dim Ω^{s+1}`.
    pub fn exactness_failures(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, r) in self.records.iter().enumerate() {
            let next = match self.records.get(k + 1) {
                Some(n) => Some(n.dim),
                None => self.next_syzygy_dim,
            };
            if let Some(next) = next {
                if r.term_dim != r.dim + next {
                    out.push(r.step);
                }
            }
        }
        out
    }

    /// Steps `s` where `dim soc Ω^{s+1} != dim head Ω^s`.
    pub fn socle_head_mismatches(&self) -> Vec<usize> {
        self.records.windows(2).filter(|w| w[1].socle_dim != w[0].head_dim).map(|w| w[0].step).collect()
    }
}

/// Minimal resolution of `Hom_A(Q_0, P_j)` as an `E`-module, up to `s_max`
/// or the cap.
pub fn resolution_growth(transport: &TransportData, j: usize, s_max: usize, cap: usize) -> Result<GrowthSequence> {
    let a = &transport.base;
    if j >= a.num_simples() {
        return Err(Error::InvalidArgument(format!("no simple with index {j}")));
    }
    if transport.take.contains(&j) {
        return Err(Error::InvalidArgument(format!("target {} lies in the chosen set", a.simple_labels()[j])));
    }
    let projs = projective_modules(a);
    let m = hom_as_e_module(transport, &projs[j].rep)?;
    let trace = minimal_resolution(&m, s_max, cap);
    Ok(GrowthSequence {
        take: transport.take.clone(),
        target: j,
        s_max,
        records: trace.stats,
        next_syzygy_dim: trace.next_syzygy_dim,
        truncated: trace.truncated,
        syzygies: trace.syzygies,
    })
}

/// A confirmed isomorphism `Ω^s M ≅ Ω^{s'} M`.
#[derive(Clone, Debug)]
pub struct Periodicity {
    pub s: usize,
    pub s_prime: usize,
    /// Invertible intertwiner `Ω^s M -> Ω^{s'} M`.
    pub witness: Matrix,
}

/// First pair `s < s'` (ordered by `s'`, then `s`) of isomorphic syzygies.
/// Undecided searches never count; their pairs are returned separately.
pub fn detect_periodicity(g: &GrowthSequence, policy: &SearchPolicy) -> Result<(Option<Periodicity>, Vec<(usize, usize)>)> {
    let mut undecided = Vec::new();
    let n = g.syzygies.len().min(g.records.len());
    for sp in 1..n {
        for s in 0..sp {
            let (x, y) = (&g.syzygies[s], &g.syzygies[sp]);
            if x.dim() != y.dim() || x.is_zero() {
                continue;
            }
            match is_isomorphic(x, y, policy)? {
                IsoDecision::Yes(w) => return Ok((Some(Periodicity { s, s_prime: sp, witness: w }), undecided)),
                IsoDecision::Undecided { .. } => undecided.push((s, sp)),
                IsoDecision::No(_) => {}
            }
        }
    }
    Ok((None, undecided))
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Periodic(Periodicity),
    GrowthObserved { fit: RecurrenceFit, notes: Vec<String> },
    Inapplicable { reason: String },
    Inconclusive { s_max: usize, notes: Vec<String> },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Periodic(_) => "PERIODIC",
            Outcome::GrowthObserved { .. } => "GROWTH_OBSERVED",
            Outcome::Inapplicable { .. } => "INAPPLICABLE",
            Outcome::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub growth: Option<GrowthSequence>,
    /// Recurrence fitted to the socle dimensions, when one exists.
    pub socle_fit: Option<RecurrenceFit>,
    pub warnings: Vec<String>,
}

pub const GROWTH_CAVEAT: &str = "evidence only: a finite computation cannot prove that the term dimensions are unbounded";

pub const RECURRENCE_DISCREPANCY: &str = "the recurrence a_(s+1) = 3a_s + 1 with a_0 = a_1 = 2 does not match the \
computed socle dimensions (it gives a_1 = 7); the computed values satisfy a_(s+2) = 3a_(s+1) - a_s, in agreement \
with the closed form whose characteristic roots are (3 ± √5)/2";

fn big(v: &[usize]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Whether the socle sequence is the one for which the stated first-order
/// recurrence and the second-order closed form disagree.
fn has_recurrence_discrepancy(socles: &[usize], fit: Option<&RecurrenceFit>) -> bool {
    socles.len() >= 3
        && socles[0] == 2
        && socles[1] == 2
        && fit.is_some_and(|f| f.describe() == "x^2 = 3x - 1")
}

/// Truncation, exactness and recurrence warnings for a growth sequence,
/// with the recurrence fitted to its socle dimensions.
pub fn growth_warnings(growth: &GrowthSequence) -> (Option<RecurrenceFit>, Vec<String>) {
    let mut warnings = Vec::new();
    if let Some(t) = &growth.truncated {
        warnings.push(format!("resolution truncated: {t}"));
    }
    let bad = growth.exactness_failures();
    if !bad.is_empty() {
        warnings.push(format!("dimension count of 0 -> Ω^(s+1) -> cover -> Ω^s -> 0 fails at s = {bad:?}"));
    }
    let socle_fit = fit_recurrence(&big(&growth.socle_dims()));
    if has_recurrence_discrepancy(&growth.socle_dims(), socle_fit.as_ref()) {
        warnings.push(RECURRENCE_DISCREPANCY.into());
    }
    (socle_fit, warnings)
}

/// Classifies the resolution of `Hom_A(Q_0, P_j)` for the chosen set `take`.
pub fn theorem_main_verdict(
    a: &Arc<PartitionedAlgebra>,
    take: &[usize],
    j: usize,
    s_max: usize,
    cap: usize,
    policy: &SearchPolicy,
) -> Result<Verdict> {
    let n = a.num_simples();
    let inapplicable = |reason: String| Verdict {
        outcome: Outcome::Inapplicable { reason },
        growth: None,
        socle_fit: None,
        warnings: Vec::new(),
    };
    let mut set: Vec<usize> = take.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Ok(inapplicable("the chosen set of simples is empty".into()));
    }
    if set.len() == n {
        return Ok(inapplicable("the chosen set contains every simple, so Q_0 is a progenerator".into()));
    }
    if j >= n {
        return Err(Error::InvalidArgument(format!("no simple with index {j}")));
    }
    if set.contains(&j) {
        return Ok(inapplicable(format!("target {} lies in the chosen set", a.simple_labels()[j])));
    }
    let transport = endomorphism_algebra(a, &set)?;
    let growth = resolution_growth(&transport, j, s_max, cap)?;
    let (socle_fit, warnings) = growth_warnings(&growth);

    let (periodic, undecided) = detect_periodicity(&growth, policy)?;
    if let Some(p) = periodic {
        return Ok(Verdict { outcome: Outcome::Periodic(p), growth: Some(growth), socle_fit, warnings });
    }

    let terms = growth.term_dims();
    let mut notes = Vec::new();
    if !undecided.is_empty() {
        notes.push(format!("isomorphism undecided for syzygy pairs {undecided:?}"));
    }
    let tail = &terms[terms.len() / 2..];
    let increasing = tail.len() >= 2 && tail.windows(2).all(|w| w[0] < w[1]);
    let fit = fit_recurrence(&big(&terms));
    match fit {
        Some(fit) if increasing && fit.dominant_root_exceeds_one() => {
            let mismatches = growth.socle_head_mismatches();
            if mismatches.is_empty() {
                notes.push("dim soc Ω^(s+1) = dim head Ω^s at every computed step".into());
            } else {
                notes.push(format!("dim soc Ω^(s+1) != dim head Ω^s at s = {mismatches:?}"));
            }
            let lengths: Vec<usize> = growth.records.iter().skip(1).map(|r| r.loewy_length).collect();
            if let Some(&max) = lengths.iter().max() {
                notes.push(format!("Loewy length of Ω^s for s >= 1 is at most {max}"));
            }
            if let Some((lo, hi)) = &fit.dominant_root {
                notes.push(format!(
                    "term dimensions satisfy {}, dominant root in ({}, {}]",
                    fit.describe(),
                    to_decimal(lo, 7),
                    to_decimal(hi, 7)
                ));
            }
            notes.push(GROWTH_CAVEAT.into());
            Ok(Verdict { outcome: Outcome::GrowthObserved { fit, notes }, growth: Some(growth), socle_fit, warnings })
        }
        other => {
            if !increasing {
                notes.push("term dimensions are not strictly increasing on the tail".into());
            }
            match other {
                None => notes.push(format!("no linear recurrence of order <= {} fits the term dimensions", (terms.len() / 2).saturating_sub(1))),
                Some(f) if !f.dominant_root_exceeds_one() => {
                    notes.push(format!("fitted recurrence {} has no root above 1", f.describe()))
                }
                _ => {}
            }
            Ok(Verdict { outcome: Outcome::Inconclusive { s_max, notes }, growth: Some(growth), socle_fit, warnings })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub t: usize,
    pub i: usize,
    pub j: usize,
    pub c_t: usize,
    pub c_next: usize,
    pub hom_dim: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceAudit {
    pub t_max: usize,
    pub rows: Vec<AuditRow>,
}

impl RecurrenceAudit {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Checks `c^(t)_ij + c^(t+1)_ij = dim Hom_A(P_i, R_j^(t))` for `i` in the
/// chosen set, `j` outside it and `t < t_max`. The left side comes from
/// homotopy-category homs, the right from the realized module `R_j^(t)`.
pub fn cartan_recurrence_audit(transport: &TransportData, table: &CartanTable, t_max: usize, cap: usize) -> Result<RecurrenceAudit> {
    if t_max == 0 {
        return Err(Error::InvalidArgument("the audit needs t_max >= 1".into()));
    }
    if table.matrices.len() <= t_max {
        return Err(Error::InvalidArgument(format!("Cartan table stops before t = {t_max}")));
    }
    let a = &transport.base;
    let projs = projective_modules(a);
    let take = &transport.take;
    let mut rows = Vec::new();
    for j in (0..a.num_simples()).filter(|j| !take.contains(j)) {
        let res = trace_resolution(a, take, j, t_max, cap)?;
        for t in 0..t_max {
            let r = res.terms[t].realize(&projs)?;
            for &i in take {
                let hom_dim = hom_from_projective(&projs[i], &r)?.dim();
                let (c_t, c_next) = (table.matrices[t][i][j], table.matrices[t + 1][i][j]);
                rows.push(AuditRow { t, i, j, c_t, c_next, hom_dim, pass: c_t + c_next == hom_dim });
            }
        }
    }
    rows.sort_by_key(|r| (r.t, r.i, r.j));
    Ok(RecurrenceAudit { t_max, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::module::DEFAULT_CAP;

    fn shared(a: PartitionedAlgebra) -> Arc<PartitionedAlgebra> {
        a.into_shared()
    }

    #[test]
    fn ex1_growth() {
        let a = shared(data::ex1().unwrap());
        let t = endomorphism_algebra(&a, &[0]).unwrap();
        let g = resolution_growth(&t, 1, 6, DEFAULT_CAP).unwrap();
        assert_eq!(g.socle_dims(), vec![2, 2, 4, 10, 26, 68, 178]);
        assert_eq!(g.head_dims(), vec![2, 4, 10, 26, 68, 178, 466]);
        assert_eq!(&g.term_dims()[..5], &[10, 20, 50, 130, 340]);
        assert!(g.exactness_failures().is_empty());
        assert!(g.socle_head_mismatches().is_empty());
        assert!(resolution_growth(&t, 0, 2, DEFAULT_CAP).is_err());
    }

    #[test]
    fn ex1_verdict() {
        let a = shared(data::ex1().unwrap());
        let v = theorem_main_verdict(&a, &[0], 1, 6, DEFAULT_CAP, &SearchPolicy::default()).unwrap();
        assert_eq!(v.outcome.name(), "GROWTH_OBSERVED");
        let Outcome::GrowthObserved { fit, notes } = &v.outcome else { unreachable!() };
        assert_eq!(fit.describe(), "x^2 = 3x - 1");
        assert!(fit.bracket_contains_golden_square());
        assert!(notes.iter().any(|n| n == GROWTH_CAVEAT));
        assert!(v.warnings.iter().any(|w| w == RECURRENCE_DISCREPANCY));
    }

    #[test]
    fn ex2_periodic() {
        let a = shared(data::ex2().unwrap());
        let v = theorem_main_verdict(&a, &[0], 1, 4, DEFAULT_CAP, &SearchPolicy::default()).unwrap();
        let Outcome::Periodic(p) = &v.outcome else { panic!("{:?}", v.outcome.name()) };
        assert_eq!((p.s, p.s_prime), (0, 1));
        assert!(p.witness.is_invertible());
        assert!(v.warnings.is_empty());
    }

    #[test]
    fn degenerate_sets() {
        let a = shared(data::ex1().unwrap());
        let p = SearchPolicy::default();
        for (take, j) in [(vec![], 1), (vec![0, 1], 1), (vec![0], 0)] {
            let v = theorem_main_verdict(&a, &take, j, 3, DEFAULT_CAP, &p).unwrap();
            assert_eq!(v.outcome.name(), "INAPPLICABLE");
            assert!(v.growth.is_none());
        }
    }

    #[test]
    fn audit_ex1() {
        let a = shared(data::ex1().unwrap());
        let t = endomorphism_algebra(&a, &[0]).unwrap();
        let table = CartanTable::build(&t, 3, DEFAULT_CAP).unwrap();
        let audit = cartan_recurrence_audit(&t, &table, 3, DEFAULT_CAP).unwrap();
        assert!(audit.all_pass());
        let sums: Vec<usize> = audit.rows.iter().map(|r| r.hom_dim).collect();
        assert_eq!(sums, vec![10, 20, 50]);
        let cs: Vec<usize> = audit.rows.iter().map(|r| r.c_t).collect();
        assert_eq!(cs, vec![4, 6, 14]);
        assert!(cartan_recurrence_audit(&t, &table, 0, DEFAULT_CAP).is_err());
    }
}
