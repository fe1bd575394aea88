//! Serializable reports and their text rendering.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{find_symmetrizing_form, PartitionedAlgebra, SymmetricSearch, TransportData};
use crate::analysis::{to_decimal, GrowthSequence, Outcome, RecurrenceAudit, RecurrenceFit, Verdict};
use crate::field::FieldSpec;
use crate::homotopy::{CartanTable, TiltingReport};
use crate::matrix::Matrix;
use crate::module::{composition_layers, indecomposable_projectives, Representation, StructureSummary};

/// Integers above `2^53` are written as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Num(i64),
    Str(String),
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        const LIMIT: i64 = 1 << 53;
        match v.to_i64() {
            Some(x) if (-LIMIT..=LIMIT).contains(&x) => JsonInt::Num(x),
            _ => JsonInt::Str(v.to_string()),
        }
    }
}

impl std::fmt::Display for JsonInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JsonInt::Num(x) => write!(f, "{x}"),
            JsonInt::Str(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDoc {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub label: String,
    pub dim: usize,
    pub head_dim: usize,
    pub socle_dim: usize,
    pub loewy_layers: Vec<usize>,
    /// Multiplicity of each simple in each radical layer.
    pub composition: Vec<Vec<usize>>,
}

impl ModuleDoc {
    pub fn of(label: impl Into<String>, m: &Representation) -> Self {
        let s = StructureSummary::of(m);
        ModuleDoc {
            label: label.into(),
            dim: s.dim,
            head_dim: s.head_dim,
            socle_dim: s.socle_dim,
            loewy_layers: s.loewy_layers,
            composition: composition_layers(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricDoc {
    pub verified: bool,
    pub exhaustive: bool,
    pub candidates_tried: u64,
    pub note: String,
}

impl From<&SymmetricSearch> for SymmetricDoc {
    fn from(s: &SymmetricSearch) -> Self {
        SymmetricDoc {
            verified: s.is_verified(),
            exhaustive: s.exhaustive,
            candidates_tried: s.candidates_tried,
            note: s.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub num_simples: usize,
    pub simples: Vec<String>,
    pub cartan: Vec<Vec<usize>>,
    pub radical_layers: Vec<usize>,
    pub projectives: Vec<ModuleDoc>,
    pub local: bool,
    pub commutative: bool,
    pub symmetric: SymmetricDoc,
}

impl AlgebraDoc {
    pub fn of(a: &PartitionedAlgebra) -> Self {
        let shared = std::sync::Arc::new(a.clone());
        let labels = a.simple_labels();
        let projectives = indecomposable_projectives(&shared)
            .map(|ps| ps.iter().zip(&labels).map(|(p, l)| ModuleDoc::of(format!("P({l})"), p)).collect())
            .unwrap_or_default();
        AlgebraDoc {
            dim: a.dim(),
            num_simples: a.num_simples(),
            simples: labels,
            cartan: a.cartan_matrix(),
            radical_layers: a.radical_layers(),
            projectives,
            local: a.is_local(),
            commutative: a.is_commutative(),
            symmetric: (&find_symmetrizing_form(a)).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoDoc {
    pub take: Vec<String>,
    /// `(source, target)` of each basis element, as base simple labels.
    pub basis: Vec<(String, String)>,
    pub algebra: AlgebraDoc,
}

impl EndoDoc {
    pub fn of(t: &TransportData) -> Self {
        let labels = t.base.simple_labels();
        EndoDoc {
            take: t.take.iter().map(|&i| labels[i].clone()).collect(),
            basis: t.basis.iter().map(|b| (labels[b.source].clone(), labels[b.target].clone())).collect(),
            algebra: AlgebraDoc::of(&t.endo),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitDoc {
    pub order: usize,
    pub relation: String,
    pub coefficients: Vec<String>,
    /// Characteristic polynomial, lowest degree first.
    pub characteristic: Vec<String>,
    pub verified_terms: usize,
    pub root_lower: Option<String>,
    pub root_upper: Option<String>,
    pub root_decimal: Option<String>,
}

impl From<&RecurrenceFit> for FitDoc {
    fn from(f: &RecurrenceFit) -> Self {
        FitDoc {
            order: f.order,
            relation: f.describe(),
            coefficients: f.coefficients.iter().map(|c| c.to_string()).collect(),
            characteristic: f.characteristic.iter().map(|c| c.to_string()).collect(),
            verified_terms: f.verified_terms,
            root_lower: f.dominant_root.as_ref().map(|r| r.0.to_string()),
            root_upper: f.dominant_root.as_ref().map(|r| r.1.to_string()),
            root_decimal: f.dominant_root.as_ref().map(|r| to_decimal(&r.1, 6)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub period: Option<(usize, usize)>,
    /// Invertible intertwiner `Ω^s M -> Ω^{s'} M`, entries in the field's
    /// canonical notation.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fit: Option<FitDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub socle_fit: Option<FitDoc>,
    pub notes: Vec<String>,
}

fn matrix_doc(m: &Matrix) -> Vec<Vec<String>> {
    let f = m.field();
    (0..m.rows()).map(|r| m.row(r).iter().map(|&x| f.format(x)).collect()).collect()
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        let mut doc = VerdictDoc {
            kind: v.outcome.name().into(),
            reason: None,
            period: None,
            witness: None,
            fit: None,
            socle_fit: v.socle_fit.as_ref().map(FitDoc::from),
            notes: Vec::new(),
        };
        match &v.outcome {
            Outcome::Periodic(p) => {
                doc.period = Some((p.s, p.s_prime));
                doc.witness = Some(matrix_doc(&p.witness));
            }
            Outcome::GrowthObserved { fit, notes } => {
                doc.fit = Some(fit.into());
                doc.notes = notes.clone();
            }
            Outcome::Inapplicable { reason } => doc.reason = Some(reason.clone()),
            Outcome::Inconclusive { s_max, notes } => {
                doc.reason = Some(format!("no decision within s_max = {s_max}"));
                doc.notes = notes.clone();
            }
        }
        doc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanDoc {
    pub take: Vec<usize>,
    pub matrices: Vec<Vec<Vec<usize>>>,
    pub determinants: Vec<JsonInt>,
    pub symmetric: Vec<bool>,
    pub determinant_constant: bool,
    pub block_stable: bool,
}

impl From<&CartanTable> for CartanDoc {
    fn from(t: &CartanTable) -> Self {
        CartanDoc {
            take: t.take.clone(),
            matrices: t.matrices.clone(),
            determinants: t.determinants().iter().map(JsonInt::from).collect(),
            symmetric: t.symmetric(),
            determinant_constant: t.determinant_constant(),
            block_stable: t.block_stable(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: InputDoc,
    pub field: FieldSpec,
    pub field_name: String,
    pub algebra: AlgebraDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub endomorphism: Option<EndoDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub module: Option<ModuleDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub growth: Option<GrowthSequence>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<VerdictDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cartan: Option<CartanDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub audit: Option<RecurrenceAudit>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub tilting: Vec<TiltingReport>,
    pub warnings: Vec<String>,
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

impl ReportDoc {
    pub fn new(command: &str, input_name: &str, input_text: &str, a: &PartitionedAlgebra) -> Self {
        let field = a.field().spec().clone();
        ReportDoc {
            tool: "tiltbench".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input: InputDoc { name: input_name.into(), sha256: sha256_hex(input_text) },
            field_name: field.to_string(),
            field,
            algebra: AlgebraDoc::of(a),
            endomorphism: None,
            target: None,
            module: None,
            growth: None,
            verdict: None,
            cartan: None,
            audit: None,
            tilting: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Records a verdict together with its growth sequence and warnings.
    pub fn set_verdict(&mut self, v: &Verdict) {
        self.verdict = Some(v.into());
        if let Some(g) = &v.growth {
            self.growth = Some(g.clone());
        }
        for w in &v.warnings {
            if !self.warnings.contains(w) {
                self.warnings.push(w.clone());
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        render_text(self)
    }
}

fn matrix_lines(m: &[Vec<usize>]) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn seq(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Centered layer-by-layer diagram of composition factors.
pub fn loewy_diagram(doc: &ModuleDoc, simples: &[String]) -> Vec<String> {
    let lines: Vec<String> = doc
        .composition
        .iter()
        .map(|layer| {
            let mut names = Vec::new();
            for (i, &m) in layer.iter().enumerate() {
                for _ in 0..m {
                    names.push(simples.get(i).cloned().unwrap_or_else(|| format!("S{i}")));
                }
            }
            names.join(" ")
        })
        .collect();
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    lines
        .into_iter()
        .map(|l| {
            let pad = (width - l.chars().count()) / 2;
            format!("{}{}", " ".repeat(pad), l).trim_end().to_string()
        })
        .collect()
}

fn push_algebra(out: &mut Vec<String>, a: &AlgebraDoc, indent: &str) {
    out.push(format!("{indent}dim {}, simples {}", a.dim, a.simples.join(", ")));
    out.push(format!("{indent}Cartan {}", matrix_lines(&a.cartan)));
    out.push(format!("{indent}radical layers [{}]", seq(&a.radical_layers)));
    out.push(format!("{indent}local {}, commutative {}", a.local, a.commutative));
    out.push(format!("{indent}{}", a.symmetric.note));
    for p in &a.projectives {
        out.push(format!("{indent}{} (dim {}, layers [{}])", p.label, p.dim, seq(&p.loewy_layers)));
        for l in loewy_diagram(p, &a.simples) {
            out.push(format!("{indent}    {l}"));
        }
    }
}

fn render_text(d: &ReportDoc) -> String {
    let mut out = Vec::new();
    out.push(format!("{} {} :: {}", d.tool, d.version, d.command));
    out.push(format!("input {} (sha256 {})", d.input.name, d.input.sha256));
    out.push(format!("field {}", d.field_name));
    out.push("algebra".into());
    push_algebra(&mut out, &d.algebra, "  ");
    if let Some(e) = &d.endomorphism {
        out.push(format!("endomorphism algebra of Q_0 = sum of P({})", e.take.join("), P(")));
        push_algebra(&mut out, &e.algebra, "  ");
    }
    if let (Some(t), Some(m)) = (&d.target, &d.module) {
        out.push(format!("M = Hom(Q_0, P({t})): dim {}, head {}, socle {}", m.dim, m.head_dim, m.socle_dim));
        let simples = d.endomorphism.as_ref().map(|e| e.algebra.simples.clone()).unwrap_or_default();
        for l in loewy_diagram(m, &simples) {
            out.push(format!("    {l}"));
        }
    }
    if let Some(g) = &d.growth {
        out.push("minimal resolution of M".into());
        out.push("   s     dim    head  socle  loewy    term".into());
        for r in &g.records {
            out.push(format!(
                "{:>4} {:>7} {:>7} {:>6} {:>6} {:>7}",
                r.step, r.dim, r.head_dim, r.socle_dim, r.loewy_length, r.term_dim
            ));
        }
        if let Some(t) = &g.truncated {
            out.push(format!("  truncated: {t}"));
        }
    }
    if let Some(v) = &d.verdict {
        out.push(format!("verdict {}", v.kind));
        if let Some(r) = &v.reason {
            out.push(format!("  {r}"));
        }
        if let Some((s, sp)) = v.period {
            out.push(format!("  Ω^{s} M ≅ Ω^{sp} M, witness:"));
            for row in v.witness.iter().flatten() {
                out.push(format!("    [{}]", row.join(" ")));
            }
        }
        if let Some(f) = &v.socle_fit {
            out.push(format!("  socle dimensions satisfy {}", f.relation));
        }
        for n in &v.notes {
            out.push(format!("  {n}"));
        }
    }
    if let Some(c) = &d.cartan {
        out.push("Cartan matrices of the tilted algebras".into());
        for (t, (m, det)) in c.matrices.iter().zip(&c.determinants).enumerate() {
            out.push(format!("  t = {t}: {}  det {det}", matrix_lines(m)));
        }
        out.push(format!(
            "  symmetric {}, determinant constant {}, block stable {}",
            c.symmetric.iter().all(|&b| b),
            c.determinant_constant,
            c.block_stable
        ));
    }
    let label = |i: usize| d.algebra.simples.get(i).cloned().unwrap_or_else(|| i.to_string());
    for r in &d.tilting {
        out.push(format!(
            "tilting t = {}: window [{}, {}], {} triples checked, {}",
            r.t,
            r.window.0,
            r.window.1,
            r.checked,
            if r.passed { "pass" } else { "FAIL" }
        ));
        for (i, j, n, dim) in &r.offending {
            out.push(format!("  Hom(T_{}, T_{}[{n}]) has dimension {dim}", label(*i), label(*j)));
        }
        for c in &r.certificates {
            out.push(format!("  {}", c.statement));
        }
    }
    if let Some(a) = &d.audit {
        out.push("recurrence audit c^(t)_ij + c^(t+1)_ij = dim Hom(P_i, R_j^(t))".into());
        for r in &a.rows {
            out.push(format!(
                "  t = {} (i, j) = ({}, {}): {} + {} = {} vs {}  {}",
                r.t,
                label(r.i),
                label(r.j),
                r.c_t,
                r.c_next,
                r.c_t + r.c_next,
                r.hom_dim,
                if r.pass { "pass" } else { "FAIL" }
            ));
        }
    }
    for w in &d.warnings {
        out.push(format!("warning: {w}"));
    }
    let mut s = out.join("\n");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(JsonInt::from(&BigInt::from(9)), JsonInt::Num(9));
        let big = BigInt::from(1u64 << 60);
        assert_eq!(JsonInt::from(&big), JsonInt::Str(big.to_string()));
    }

    #[test]
    fn info_round_trip() {
        let a = data::ex1().unwrap();
        let doc = ReportDoc::new("info", "ex1", data::EX1, &a);
        let json = doc.to_json();
        assert_eq!(ReportDoc::from_json(&json).unwrap(), doc);
        assert_eq!(doc.algebra.cartan, vec![vec![5, 4], vec![4, 5]]);
        assert!(doc.to_text().contains("Cartan [[5, 4], [4, 5]]"));
    }

    #[test]
    fn diagram_of_projective() {
        let a = data::ex1().unwrap();
        let doc = AlgebraDoc::of(&a);
        let lines = loewy_diagram(&doc.projectives[0], &doc.simples);
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0].trim(), "k");
    }
}
