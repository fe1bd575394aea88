//! Line-oriented input formats.
//!
//! Algebra files (format A):
//!
//! ```text
//! ALGEBRA kx2
//! FIELD p=3 e=1
//! DIM 2
//! BASIS 1 x
//! ONE 1,0
//! IDEMPOTENTS 1
//! RADICAL x
//! MULT 1 1 = 1*1
//! MULT 1 x = 1*x
//! MULT x 1 = 1*x
//! END
//! ```
//!
//! Omitted products are zero. Group files (format B) list `ORDER`,
//! `ELEMENTS` (identity first) and a `TABLE` of 0-based element indices.
//! `#` starts a comment.

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Scalar};

use super::group::GroupTable;
use super::PartitionedAlgebra;

/// One `MULT` line: `left * right = sum of coeff*label`.
#[derive(Clone, Debug)]
pub struct RawProduct {
    pub line: usize,
    pub left: String,
    pub right: String,
    pub terms: Vec<(String, String)>,
}

/// A syntactically valid format-A file, not yet checked against the axioms.
#[derive(Clone, Debug)]
pub struct RawAlgebra {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub labels: Vec<String>,
    pub one: Vec<String>,
    pub idempotents: Vec<String>,
    pub radical: Vec<String>,
    pub products: Vec<RawProduct>,
    pub lines: LineMap,
}

/// Line numbers of the header directives, for error reporting.
#[derive(Clone, Debug, Default)]
pub struct LineMap {
    pub field: usize,
    pub one: usize,
    pub idempotents: usize,
    pub radical: usize,
}

#[derive(Clone, Debug)]
pub enum ParsedInput {
    Algebra(RawAlgebra),
    Group { group: GroupTable, field: FieldSpec },
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_field(line: usize, args: &str) -> Result<FieldSpec> {
    let (mut p, mut e, mut poly) = (None, None, None);
    for tok in args.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| perr(line, format!("expected key=value, got '{tok}'")))?;
        match k {
            "p" => p = Some(v.parse::<u32>().map_err(|_| perr(line, format!("bad p '{v}'")))?),
            "e" => e = Some(v.parse::<u32>().map_err(|_| perr(line, format!("bad e '{v}'")))?),
            "poly" => {
                let coeffs: std::result::Result<Vec<u32>, _> = v.split(',').map(|c| c.trim().parse::<u32>()).collect();
                poly = Some(coeffs.map_err(|_| perr(line, format!("bad poly '{v}'")))?);
            }
            _ => return Err(perr(line, format!("unknown FIELD key '{k}'"))),
        }
    }
    let p = p.ok_or_else(|| perr(line, "FIELD needs p=<prime>"))?;
    let e = e.unwrap_or(1);
    let spec = match (e, poly) {
        (1, None) => FieldSpec::prime(p),
        (_, Some(m)) => {
            if m.len() != e as usize + 1 {
                return Err(perr(line, format!("poly has degree {}, expected {e}", m.len().saturating_sub(1))));
            }
            FieldSpec::with_modulus(p, m)
        }
        (_, None) => return Err(perr(line, format!("FIELD with e={e} needs poly=<c0,..,ce>"))),
    };
    spec.validate().map_err(|err| perr(line, err.to_string()))?;
    Ok(spec)
}

fn split_keyword(l: &str) -> (&str, &str) {
    match l.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (l, ""),
    }
}

/// Detects the format by its first directive.
pub fn parse_input(text: &str) -> Result<ParsedInput> {
    match content_lines(text).next() {
        Some((_, l)) if l.starts_with("ALGEBRA") => parse_algebra_file(text).map(ParsedInput::Algebra),
        Some((_, l)) if l.starts_with("GROUP") => {
            let (group, field) = parse_group_file(text)?;
            Ok(ParsedInput::Group { group, field })
        }
        Some((line, l)) => Err(perr(line, format!("expected ALGEBRA or GROUP, got '{}'", split_keyword(l).0))),
        None => Err(perr(0, "unexpected end of file")),
    }
}

pub fn parse_algebra_file(text: &str) -> Result<RawAlgebra> {
    let mut lines = content_lines(text);
    let mut last_line = 0;
    let mut raw = RawAlgebra {
        name: String::new(),
        field: FieldSpec::prime(2),
        dim: 0,
        labels: Vec::new(),
        one: Vec::new(),
        idempotents: Vec::new(),
        radical: Vec::new(),
        products: Vec::new(),
        lines: LineMap::default(),
    };
    let mut have = [false; 7];
    let mut ended = false;
    for (line, l) in lines.by_ref() {
        last_line = line;
        let (kw, rest) = split_keyword(l);
        match kw {
            "ALGEBRA" => {
                raw.name = rest.to_string();
                have[0] = true;
            }
            "FIELD" => {
                raw.field = parse_field(line, rest)?;
                raw.lines.field = line;
                have[1] = true;
            }
            "DIM" => {
                raw.dim = rest.parse().map_err(|_| perr(line, format!("bad dimension '{rest}'")))?;
                have[2] = true;
            }
            "BASIS" => {
                raw.labels = rest.split_whitespace().map(str::to_string).collect();
                have[3] = true;
            }
            "ONE" => {
                raw.one = rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                raw.lines.one = line;
                have[4] = true;
            }
            "IDEMPOTENTS" => {
                raw.idempotents = rest.split_whitespace().map(str::to_string).collect();
                raw.lines.idempotents = line;
                have[5] = true;
            }
            "RADICAL" => {
                raw.radical = rest.split_whitespace().map(str::to_string).collect();
                raw.lines.radical = line;
                have[6] = true;
            }
            "MULT" => raw.products.push(parse_mult(line, rest)?),
            "END" => {
                ended = true;
                break;
            }
            other => return Err(perr(line, format!("unknown directive '{other}'"))),
        }
    }
    if !ended {
        return Err(perr(last_line + 1, "unexpected end of file"));
    }
    if let Some((line, _)) = lines.next() {
        return Err(perr(line, "content after END"));
    }
    let names = ["ALGEBRA", "FIELD", "DIM", "BASIS", "ONE", "IDEMPOTENTS", "RADICAL"];
    for (k, ok) in have.iter().enumerate() {
        // an algebra may have an empty radical, but the directive is still required
        if !ok {
            return Err(perr(last_line, format!("missing {} directive", names[k])));
        }
    }
    if raw.labels.len() != raw.dim {
        return Err(perr(last_line, format!("BASIS has {} labels, DIM is {}", raw.labels.len(), raw.dim)));
    }
    if raw.one.len() != raw.dim {
        return Err(perr(raw.lines.one, format!("ONE has {} entries, DIM is {}", raw.one.len(), raw.dim)));
    }
    Ok(raw)
}

fn parse_mult(line: usize, rest: &str) -> Result<RawProduct> {
    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| perr(line, "MULT needs '='"))?;
    let factors: Vec<&str> = lhs.split_whitespace().collect();
    if factors.len() != 2 {
        return Err(perr(line, "MULT needs exactly two factors"));
    }
    let mut terms = Vec::new();
    for tok in rhs.split(" + ").map(str::trim).filter(|t| !t.is_empty()) {
        if tok == "0" {
            continue;
        }
        let (coef, label) = match tok.rsplit_once('*') {
            Some((c, l)) => (c.trim().to_string(), l.trim().to_string()),
            None => ("1".to_string(), tok.to_string()),
        };
        if label.is_empty() || coef.is_empty() {
            return Err(perr(line, format!("malformed term '{tok}'")));
        }
        terms.push((coef, label));
    }
    Ok(RawProduct { line, left: factors[0].to_string(), right: factors[1].to_string(), terms })
}

impl RawAlgebra {
    /// Resolves labels and scalars, then validates every algebra axiom.
    pub fn build(&self) -> Result<PartitionedAlgebra> {
        let field = Field::new(self.field.clone()).map_err(|e| perr(self.lines.field, e.to_string()))?;
        let n = self.dim;
        let index = |line: usize, label: &str| -> Result<usize> {
            self.labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| perr(line, format!("unknown basis label '{label}'")))
        };
        let one: Vec<Scalar> = self
            .one
            .iter()
            .map(|s| field.parse(s).map_err(|e| perr(self.lines.one, e.to_string())))
            .collect::<Result<_>>()?;
        let idem: Vec<usize> =
            self.idempotents.iter().map(|l| index(self.lines.idempotents, l)).collect::<Result<_>>()?;
        let rad: Vec<usize> = self.radical.iter().map(|l| index(self.lines.radical, l)).collect::<Result<_>>()?;
        let mut mult = vec![vec![vec![Scalar::ZERO; n]; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for prod in &self.products {
            let a = index(prod.line, &prod.left)?;
            let b = index(prod.line, &prod.right)?;
            if seen[a][b] {
                return Err(perr(prod.line, format!("duplicate product {} {}", prod.left, prod.right)));
            }
            seen[a][b] = true;
            for (coef, label) in &prod.terms {
                let c = field.parse(coef).map_err(|e| perr(prod.line, e.to_string()))?;
                let k = index(prod.line, label)?;
                mult[a][b][k] = field.add(mult[a][b][k], c);
            }
        }
        PartitionedAlgebra::new(self.name.clone(), field, self.labels.clone(), one, idem, rad, &mult)
    }
}

pub fn parse_group_file(text: &str) -> Result<(GroupTable, FieldSpec)> {
    let mut lines = content_lines(text).peekable();
    let mut name = String::new();
    let mut field = None;
    let mut order = None;
    let mut labels: Vec<String> = Vec::new();
    let mut table: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 0;
    let mut ended = false;
    while let Some((line, l)) = lines.next() {
        last_line = line;
        let (kw, rest) = split_keyword(l);
        match kw {
            "GROUP" => name = rest.to_string(),
            "FIELD" => field = Some(parse_field(line, rest)?),
            "ORDER" => order = Some(rest.parse::<usize>().map_err(|_| perr(line, format!("bad order '{rest}'")))?),
            "ELEMENTS" => labels = rest.split_whitespace().map(str::to_string).collect(),
            "TABLE" => {
                let n = order.ok_or_else(|| perr(line, "ORDER must precede TABLE"))?;
                for _ in 0..n {
                    let (row_line, row) = lines.next().ok_or_else(|| perr(line + 1, "unexpected end of file"))?;
                    last_line = row_line;
                    let parsed: std::result::Result<Vec<usize>, _> =
                        row.split_whitespace().map(|t| t.parse::<usize>()).collect();
                    let parsed = parsed.map_err(|_| perr(row_line, "table entries must be element indices"))?;
                    if parsed.len() != n {
                        return Err(perr(row_line, format!("table row has {} entries, expected {n}", parsed.len())));
                    }
                    if let Some(&bad) = parsed.iter().find(|&&v| v >= n) {
                        return Err(perr(row_line, format!("index {bad} out of range")));
                    }
                    table.push(parsed);
                }
            }
            "END" => {
                ended = true;
                break;
            }
            other => return Err(perr(line, format!("unknown directive '{other}'"))),
        }
    }
    if !ended {
        return Err(perr(last_line + 1, "unexpected end of file"));
    }
    let field = field.ok_or_else(|| perr(last_line, "missing FIELD directive"))?;
    let n = order.ok_or_else(|| perr(last_line, "missing ORDER directive"))?;
    if labels.len() != n {
        return Err(perr(last_line, format!("ELEMENTS has {} labels, ORDER is {n}", labels.len())));
    }
    if table.len() != n {
        return Err(perr(last_line, "missing TABLE"));
    }
    let group = GroupTable::new(name, labels, table)?;
    Ok((group, field))
}

#[cfg(test)]
mod tests {
    use super::*;

    const KX2: &str = "ALGEBRA kx2\nFIELD p=3 e=1\nDIM 2\nBASIS 1 x\nONE 1,0\nIDEMPOTENTS 1\nRADICAL x\n\
                       MULT 1 1 = 1*1\nMULT 1 x = 1*x\nMULT x 1 = x\nEND\n";

    #[test]
    fn parses_dual_numbers() {
        let raw = parse_algebra_file(KX2).unwrap();
        let a = raw.build().unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.simple_labels(), vec!["1".to_string()]);
    }

    #[test]
    fn missing_end() {
        let text = KX2.replace("END\n", "");
        let err = parse_algebra_file(&text).unwrap_err();
        assert!(err.to_string().contains("unexpected end of file"), "{err}");
    }

    #[test]
    fn unknown_label_has_line_number() {
        let text = KX2.replace("MULT x 1 = x", "MULT x 1 = y");
        let err = parse_algebra_file(&text).unwrap().build().unwrap_err();
        assert!(err.to_string().starts_with("line 10:"), "{err}");
    }

    #[test]
    fn extension_field_coefficients() {
        let text = "ALGEBRA k\nFIELD p=2 e=2 poly=1,1,1\nDIM 1\nBASIS 1\nONE 1\nIDEMPOTENTS 1\nRADICAL\nMULT 1 1 = 1\nEND";
        let a = parse_algebra_file(text).unwrap().build().unwrap();
        assert_eq!(a.field().size(), 4);
    }

    #[test]
    fn group_table_errors() {
        let text = "GROUP c2\nFIELD p=2\nORDER 2\nELEMENTS 1 g\nTABLE\n0 1\n1 1\nEND\n";
        let err = parse_group_file(text).unwrap_err();
        assert!(err.to_string().contains("Latin"), "{err}");
    }
}
