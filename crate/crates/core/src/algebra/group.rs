//! Group algebras kG re-expressed in a partitioned basis.
//!
//! Supported groups have a normal Sylow p-subgroup P with abelian quotient
//! G/P. Then J = I(kP)kG is the radical, kG/J = k[G/P] is commutative
//! semisimple, and primitive idempotents come from splitting k[G/P] into
//! common eigenspaces and lifting back to kG.

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Scalar};
use crate::matrix::{Matrix, Subspace};

use super::{Diagnostic, DiagnosticKind, PartitionedAlgebra};

/// Multiplication table of a finite group. `table[i][j]` is the index of
/// `g_i * g_j`; the identity is element 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl GroupTable {
    pub fn new(name: String, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let diag = |kind, witness: Vec<String>, message: String| Error::Validation(vec![Diagnostic { kind, witness, message }]);
        if table.len() != n || table.iter().any(|r| r.len() != n) || n == 0 {
            return Err(diag(DiagnosticKind::Shape, Vec::new(), "table must be n x n with n >= 1".into()));
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if table[i][j] >= n {
                    return Err(diag(DiagnosticKind::Shape, Vec::new(), format!("entry {} out of range", table[i][j])));
                }
                row_seen[table[i][j]] = true;
                col_seen[table[j][i]] = true;
            }
            if row_seen.iter().any(|s| !s) || col_seen.iter().any(|s| !s) {
                return Err(diag(
                    DiagnosticKind::Shape,
                    vec![labels[i].clone()],
                    "table is not a Latin square".into(),
                ));
            }
        }
        if (0..n).any(|j| table[0][j] != j || table[j][0] != j) {
            return Err(diag(DiagnosticKind::UnitAxiom, vec![labels[0].clone()], "first element is not the identity".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        let w = vec![labels[a].clone(), labels[b].clone(), labels[c].clone()];
                        return Err(diag(
                            DiagnosticKind::Associativity,
                            w.clone(),
                            format!("({}*{})*{} != {}*({}*{})", w[0], w[1], w[2], w[0], w[1], w[2]),
                        ));
                    }
                }
            }
        }
        Ok(GroupTable { name, labels, table, identity: 0 })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("Latin square")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Builds kG in a partitioned basis: primitive idempotents first, then a
/// radical basis adapted to the Peirce decomposition. The coefficient of
/// the identity is attached as symmetrizing form.
pub fn build_group_algebra(g: &GroupTable, spec: &FieldSpec) -> Result<PartitionedAlgebra> {
    let field = Field::new(spec.clone())?;
    let p = field.characteristic() as usize;
    let n = g.order();

    // normal Sylow p-subgroup
    let sylow: Vec<usize> = (0..n).filter(|&x| is_power_of(g.element_order(x), p)).collect();
    let mut p_part = 1;
    while n % (p_part * p) == 0 {
        p_part *= p;
    }
    let in_sylow = {
        let mut v = vec![false; n];
        for &x in &sylow {
            v[x] = true;
        }
        v
    };
    let closed = sylow.iter().all(|&a| sylow.iter().all(|&b| in_sylow[g.mul(a, b)]));
    if !closed || sylow.len() != p_part {
        return Err(Error::UnsupportedGroup(format!(
            "the {p}-elements of {} do not form a normal Sylow {p}-subgroup",
            g.name
        )));
    }
    let normal = (0..n).all(|x| {
        let xi = g.inverse(x);
        sylow.iter().all(|&s| in_sylow[g.mul(g.mul(x, s), xi)])
    });
    if !normal {
        return Err(Error::UnsupportedGroup(format!("Sylow {p}-subgroup of {} is not normal", g.name)));
    }

    // cosets of P, represented by their smallest element
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &s in &sylow {
            coset_of[g.mul(x, s)] = c;
        }
    }
    let m = reps.len();
    let qmul = |a: usize, b: usize| coset_of[g.mul(reps[a], reps[b])];
    for a in 0..m {
        for b in 0..m {
            if qmul(a, b) != qmul(b, a) {
                return Err(Error::UnsupportedGroup(format!("{} / O_{p} is not abelian", g.name)));
            }
        }
    }

    // primitive idempotents of k[G/P]
    let quotient_right: Vec<Matrix> = (0..m)
        .map(|h| {
            let mut mat = Matrix::zeros(&field, m, m);
            for c in 0..m {
                mat.set(c, qmul(c, h), Scalar::ONE);
            }
            mat
        })
        .collect();
    let qprod = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::ZERO; m];
        for (a, &ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, &vb) in v.iter().enumerate() {
                if !vb.is_zero() {
                    let k = qmul(a, b);
                    out[k] = field.add(out[k], field.mul(ua, vb));
                }
            }
        }
        out
    };
    let qunit = {
        let mut v = vec![Scalar::ZERO; m];
        v[coset_of[g.identity]] = Scalar::ONE;
        v
    };
    let mut idems = vec![qunit.clone()];
    for h in 0..m {
        let minpoly = minimal_polynomial(&quotient_right[h]);
        let roots: Vec<Scalar> = field.elements().filter(|&x| eval_poly(&field, &minpoly, x).is_zero()).collect();
        if roots.len() != minpoly.len() - 1 {
            return Err(Error::ExtendField { poly: format_poly(&field, &minpoly), field: spec.to_string() });
        }
        if roots.len() == 1 {
            continue;
        }
        let mut hvec = vec![Scalar::ZERO; m];
        hvec[h] = Scalar::ONE;
        let mut refined = Vec::new();
        for e in &idems {
            for &lambda in &roots {
                let mut proj = qunit.clone();
                for &mu in roots.iter().filter(|&&mu| mu != lambda) {
                    let mut factor = hvec.clone();
                    let c = qunit.iter().position(|x| !x.is_zero()).unwrap();
                    factor[c] = field.sub(factor[c], mu);
                    let scale = field.inv(field.sub(lambda, mu))?;
                    field.scale(&mut factor, scale);
                    proj = qprod(&proj, &factor);
                }
                let piece = qprod(e, &proj);
                if piece.iter().any(|x| !x.is_zero()) {
                    refined.push(piece);
                }
            }
        }
        idems = refined;
    }
    debug_assert_eq!(idems.len(), m);

    // characters: e * h = chi(h) e
    let mut chars: Vec<(Vec<Scalar>, Vec<Scalar>)> = idems
        .into_iter()
        .map(|e| {
            let lead = e.iter().position(|x| !x.is_zero()).unwrap();
            let chi: Vec<Scalar> = (0..m)
                .map(|h| {
                    let eh = quotient_right[h].vec_mul(&e);
                    field.div(eh[lead], e[lead]).expect("nonzero")
                })
                .collect();
            (chi, e)
        })
        .collect();
    chars.sort_by(|a, b| {
        let trivial_a = a.0.iter().all(|&x| x == Scalar::ONE);
        let trivial_b = b.0.iter().all(|&x| x == Scalar::ONE);
        trivial_b.cmp(&trivial_a).then_with(|| a.0.cmp(&b.0))
    });
    let minus_one = field.neg(Scalar::ONE);
    let order_two: Vec<usize> = (0..m)
        .filter(|&i| {
            let chi = &chars[i].0;
            !chi.iter().all(|&x| x == Scalar::ONE) && chi.iter().all(|&x| x == Scalar::ONE || x == minus_one)
        })
        .collect();
    let mut simple_labels = Vec::with_capacity(m);
    let mut other = 0;
    for i in 0..m {
        let label = if chars[i].0.iter().all(|&x| x == Scalar::ONE) {
            "k".to_string()
        } else if let Some(pos) = order_two.iter().position(|&t| t == i) {
            if order_two.len() == 1 {
                "eps".to_string()
            } else {
                format!("eps{}", pos + 1)
            }
        } else {
            other += 1;
            format!("chi{other}")
        };
        simple_labels.push(label);
    }

    // group algebra arithmetic in the group basis
    let gprod = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::ZERO; n];
        for (a, &ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, &vb) in v.iter().enumerate() {
                if !vb.is_zero() {
                    let k = g.mul(a, b);
                    out[k] = field.add(out[k], field.mul(ua, vb));
                }
            }
        }
        out
    };
    let mut gone = vec![Scalar::ZERO; n];
    gone[g.identity] = Scalar::ONE;
    let minus = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        u.iter().zip(v).map(|(&a, &b)| field.sub(a, b)).collect()
    };
    let lift = |x: Vec<Scalar>| -> Result<Vec<Scalar>> {
        let (three, two) = (field.from_int(3), field.from_int(2));
        let mut cur = x;
        for _ in 0..=n {
            let sq = gprod(&cur, &cur);
            let cube = gprod(&sq, &cur);
            let next: Vec<Scalar> = sq
                .iter()
                .zip(&cube)
                .map(|(&s, &c)| field.sub(field.mul(three, s), field.mul(two, c)))
                .collect();
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::UnsupportedGroup("idempotent lifting did not converge".into()))
    };

    let mut lifted: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut prev_sum = vec![Scalar::ZERO; n];
    for (i, (_, e)) in chars.iter().enumerate() {
        let complement = minus(&gone, &prev_sum);
        let idem = if i + 1 == m {
            complement
        } else {
            let mut x = vec![Scalar::ZERO; n];
            for (h, &c) in e.iter().enumerate() {
                x[reps[h]] = c;
            }
            let corner = gprod(&gprod(&complement, &x), &complement);
            lift(corner)?
        };
        for (s, &v) in prev_sum.iter_mut().zip(&idem) {
            *s = field.add(*s, v);
        }
        lifted.push(idem);
    }

    // radical J = span{(x - 1) g : x in P, g in G}
    let mut jrows = Vec::new();
    for &x in sylow.iter().filter(|&&x| x != g.identity) {
        for y in 0..n {
            let mut v = vec![Scalar::ZERO; n];
            v[g.mul(x, y)] = Scalar::ONE;
            v[y] = field.sub(v[y], Scalar::ONE);
            jrows.push(v);
        }
    }
    let jspace = Subspace::from_rows(&Matrix::from_rows(&field, n, &jrows));
    if jspace.dim() != n - m {
        return Err(Error::UnsupportedGroup("augmentation ideal has unexpected dimension".into()));
    }

    // Peirce-adapted radical basis
    let mut basis_rows: Vec<Vec<Scalar>> = lifted.clone();
    let mut labels: Vec<String> = simple_labels.clone();
    let mut counter = 0;
    for ei in &lifted {
        for ej in &lifted {
            let rows: Vec<Vec<Scalar>> =
                (0..jspace.dim()).map(|r| gprod(&gprod(ei, jspace.basis.row(r)), ej)).collect();
            let block = Subspace::from_rows(&Matrix::from_rows(&field, n, &rows));
            for r in 0..block.dim() {
                counter += 1;
                basis_rows.push(block.basis.row(r).to_vec());
                labels.push(format!("r{counter}"));
            }
        }
    }
    if basis_rows.len() != n {
        return Err(Error::UnsupportedGroup("partitioned basis has wrong size".into()));
    }
    let change = Matrix::from_rows(&field, n, &basis_rows);
    let inverse = change
        .inverse()
        .ok_or_else(|| Error::UnsupportedGroup("partitioned basis is not a basis".into()))?;

    let mult: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|a| (0..n).map(|b| inverse.vec_mul(&gprod(&basis_rows[a], &basis_rows[b]))).collect())
        .collect();
    let mut one = vec![Scalar::ZERO; n];
    for slot in one.iter_mut().take(m) {
        *slot = Scalar::ONE;
    }
    let form: Vec<Scalar> = basis_rows.iter().map(|row| row[g.identity]).collect();
    let alg = PartitionedAlgebra::new(
        g.name.clone(),
        field,
        labels,
        one,
        (0..m).collect(),
        (m..n).collect(),
        &mult,
    )?;
    Ok(alg.with_form(form))
}

/// Monic minimal polynomial (lowest coefficient first) of a square matrix.
pub(crate) fn minimal_polynomial(mat: &Matrix) -> Vec<Scalar> {
    let field = mat.field().clone();
    let k = mat.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![Matrix::identity(&field, k).data().to_vec()];
    let mut cur = Matrix::identity(&field, k);
    loop {
        cur = cur.mul(mat).expect("square");
        let target = cur.data().to_vec();
        let basis = Matrix::from_rows(&field, k * k, &powers);
        if let Some(x) = basis.solve(&target).expect("shape") {
            // mat^d = sum x_i mat^i  =>  poly = t^d - sum x_i t^i
            let mut poly: Vec<Scalar> = x.iter().map(|&c| field.neg(c)).collect();
            poly.push(Scalar::ONE);
            return poly;
        }
        powers.push(target);
    }
}

pub(crate) fn eval_poly(field: &Field, poly: &[Scalar], x: Scalar) -> Scalar {
    poly.iter().rev().fold(Scalar::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

pub(crate) fn format_poly(field: &Field, poly: &[Scalar]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = field.format(c);
        let coef = if coef.contains('+') { format!("({coef})") } else { coef };
        terms.push(match deg {
            0 => coef,
            1 if c == Scalar::ONE => "x".into(),
            1 => format!("{coef}*x"),
            _ if c == Scalar::ONE => format!("x^{deg}"),
            _ => format!("{coef}*x^{deg}"),
        });
    }
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> GroupTable {
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupTable::new(format!("C{n}"), labels, table).unwrap()
    }

    #[test]
    fn cyclic_p_group_is_local() {
        let a = build_group_algebra(&cyclic(3), &FieldSpec::prime(3)).unwrap();
        assert_eq!(a.num_simples(), 1);
        assert_eq!(a.radical_layers(), vec![1, 1, 1]);
    }

    #[test]
    fn semisimple_cyclic() {
        let a = build_group_algebra(&cyclic(2), &FieldSpec::prime(3)).unwrap();
        assert_eq!(a.num_simples(), 2);
        assert_eq!(a.simple_labels(), vec!["k".to_string(), "eps".to_string()]);
        assert_eq!(a.radical_layers(), vec![2]);
    }

    #[test]
    fn c3_over_gf2_needs_extension() {
        let err = build_group_algebra(&cyclic(3), &FieldSpec::prime(2)).unwrap_err();
        match err {
            Error::ExtendField { poly, .. } => assert_eq!(poly, "x^3 + 1"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn minimal_polynomial_of_permutation() {
        let f = Field::prime(5).unwrap();
        let m = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        // x^3 - 1
        assert_eq!(minimal_polynomial(&m), vec![f.from_int(-1), Scalar::ZERO, Scalar::ZERO, Scalar::ONE]);
    }

    #[test]
    fn non_associative_table() {
        // Latin square with identity 0 that is not a group (order 5 loop)
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let labels = (0..5).map(|i| format!("g{i}")).collect();
        let err = GroupTable::new("loop".into(), labels, table).unwrap_err();
        assert!(err.to_string().contains("not associative"), "{err}");
    }
}
