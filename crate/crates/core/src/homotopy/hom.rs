//! Hom spaces in the homotopy category `K^b(proj A)`.
//!
//! Chain maps and homotopies only matter up to dimension here, so the sign
//! of the shifted differential is dropped; rescaling the components of a map
//! by `(-1)^{nd}` identifies both versions.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{find_symmetrizing_form, PartitionedAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{Matrix, Subspace};
use crate::module::{hom_space, projective_modules};

use super::Complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDims {
    pub chain_maps: usize,
    pub null_homotopic: usize,
    pub hom: usize,
}

/// Degrees of a map `X -> Y'` that can be nonzero.
fn common_degrees(x: &Complex, y: &Complex, gap: i64) -> Vec<i64> {
    x.support().into_iter().filter(|&d| y.term(d + gap).is_some()).collect()
}

/// Unknown layout for graded maps `X^d -> Y'^{d + gap}`: one variable per
/// basis element of each block's hom space.
struct Layout {
    /// `(degree, alpha, beta) -> (first variable, basis rows)`
    slots: Vec<(i64, usize, usize, usize)>,
    count: usize,
}

fn layout(x: &Complex, y: &Complex, gap: i64, bases: &Corners) -> Layout {
    let mut slots = Vec::new();
    let mut count = 0;
    for d in common_degrees(x, y, gap) {
        let (xs, ys) = (x.term(d).unwrap(), y.term(d + gap).unwrap());
        for (alpha, &i) in xs.summands.iter().enumerate() {
            for (beta, &j) in ys.summands.iter().enumerate() {
                slots.push((d, alpha, beta, count));
                count += bases.get(j, i).dim();
            }
        }
    }
    Layout { slots, count }
}

/// Echelon bases of `e_j A e_i`, cached.
struct Corners<'a> {
    a: &'a PartitionedAlgebra,
    cache: std::cell::RefCell<HashMap<(usize, usize), std::rc::Rc<Subspace>>>,
}

impl<'a> Corners<'a> {
    fn new(a: &'a PartitionedAlgebra) -> Self {
        Corners { a, cache: Default::default() }
    }

    fn get(&self, target: usize, source: usize) -> std::rc::Rc<Subspace> {
        self.cache
            .borrow_mut()
            .entry((target, source))
            .or_insert_with(|| std::rc::Rc::new(self.a.corner(target, source)))
            .clone()
    }
}

/// Coordinates of the blocks of graded maps `X^d -> Y'^d`, one A-vector per block.
struct BlockSpace {
    offsets: HashMap<(i64, usize, usize), usize>,
    width: usize,
}

fn block_space(x: &Complex, y: &Complex, gap: i64, n: usize) -> BlockSpace {
    let mut offsets = HashMap::new();
    let mut width = 0;
    for d in common_degrees(x, y, gap) {
        let (xs, ys) = (x.term(d).unwrap(), y.term(d + gap).unwrap());
        for alpha in 0..xs.len() {
            for beta in 0..ys.len() {
                offsets.insert((d, alpha, beta), width);
                width += n;
            }
        }
    }
    BlockSpace { offsets, width }
}

/// Dimensions of chain maps, null-homotopic maps and `Hom_{K^b}(X, Y[n])`,
/// computed with block arithmetic in the algebra.
pub fn hom_complex_dims(a: &PartitionedAlgebra, x: &Complex, y: &Complex, n: i64) -> Result<HomDims> {
    let y = y.shift(n);
    let f = a.field().clone();
    let na = a.dim();
    let corners = Corners::new(a);

    // chain condition: for each degree d, d_X then f^{d+1} equals f^d then d_Y
    let vars = layout(x, &y, 0, &corners);
    let eq_space = block_space(x, &y, 1, na);
    let mut eqs = Matrix::zeros(&f, vars.count, eq_space.width);
    let minus = f.neg(Scalar::ONE);
    for &(d, alpha, beta, start) in &vars.slots {
        let (i, j) = (x.term(d).unwrap().summands[alpha], y.term(d).unwrap().summands[beta]);
        let basis = corners.get(j, i);
        for k in 0..basis.dim() {
            let b = basis.basis.row(k);
            let row = eqs.row_mut(start + k);
            // as f^{d}: contributes -(d_Y)[beta][gamma] * b to block (d, alpha, gamma)
            if let Some(dy) = y.diff(d) {
                for (gamma, w) in dy.blocks[beta].iter().enumerate() {
                    if let Some(&off) = eq_space.offsets.get(&(d, alpha, gamma)) {
                        let p = a.mul(w, b);
                        f.axpy(&mut row[off..off + na], minus, &p);
                    }
                }
            }
            // as f^{d}: contributes b * (d_X)[alpha'][alpha] to block (d-1, alpha', beta)
            if let Some(dx) = x.diff(d - 1) {
                for (alpha2, brow) in dx.blocks.iter().enumerate() {
                    if let Some(&off) = eq_space.offsets.get(&(d - 1, alpha2, beta)) {
                        let p = a.mul(b, &brow[alpha]);
                        f.axpy(&mut row[off..off + na], Scalar::ONE, &p);
                    }
                }
            }
        }
    }
    let chain_maps = vars.count - if eq_space.width == 0 { 0 } else { eqs.rank() };

    // null-homotopic maps d_X h + h d_Y, in block coordinates of degree-0 maps
    let hvars = layout(x, &y, -1, &corners);
    let map_space = block_space(x, &y, 0, na);
    let mut images = Matrix::zeros(&f, hvars.count, map_space.width);
    for &(e, alpha, gamma, start) in &hvars.slots {
        let (i, j) = (x.term(e).unwrap().summands[alpha], y.term(e - 1).unwrap().summands[gamma]);
        let basis = corners.get(j, i);
        for k in 0..basis.dim() {
            let b = basis.basis.row(k);
            let row = images.row_mut(start + k);
            // d_X^{e-1} then h^e: block (e-1, alpha', gamma)
            if let Some(dx) = x.diff(e - 1) {
                for (alpha2, brow) in dx.blocks.iter().enumerate() {
                    if let Some(&off) = map_space.offsets.get(&(e - 1, alpha2, gamma)) {
                        let p = a.mul(b, &brow[alpha]);
                        f.axpy(&mut row[off..off + na], Scalar::ONE, &p);
                    }
                }
            }
            // h^e then d_Y^{e-1}: block (e, alpha, beta)
            if let Some(dy) = y.diff(e - 1) {
                for (beta, w) in dy.blocks[gamma].iter().enumerate() {
                    if let Some(&off) = map_space.offsets.get(&(e, alpha, beta)) {
                        let p = a.mul(w, b);
                        f.axpy(&mut row[off..off + na], Scalar::ONE, &p);
                    }
                }
            }
        }
    }
    let null_homotopic = if hvars.count == 0 { 0 } else { images.rank() };
    Ok(HomDims { chain_maps, null_homotopic, hom: chain_maps - null_homotopic })
}

/// The same dimensions through realized modules: graded pieces are module
/// hom spaces between realized terms and the chain conditions are matrix
/// identities. Independent of the block arithmetic above; meant for
/// cross-checking on small complexes.
pub fn hom_complex_dims_realized(
    a: &std::sync::Arc<PartitionedAlgebra>,
    x: &Complex,
    y: &Complex,
    n: i64,
) -> Result<HomDims> {
    let y = y.shift(n);
    let f = a.field().clone();
    let projs = projective_modules(a);
    let lo = x.bottom.min(y.bottom) - 1;
    let hi = x.top().max(y.top()) + 1;
    let realize_term = |c: &Complex, d: i64| c.term(d).map(|t| t.realize(&projs)).transpose();
    let realize_diff = |c: &Complex, d: i64| c.diff(d).map(|m| m.realize(&projs));

    // graded hom bases for gap 0 (maps) and gap -1 (homotopies)
    let graded = |gap: i64| -> Result<Vec<(i64, Vec<Matrix>)>> {
        let mut out = Vec::new();
        for d in lo..=hi {
            if let (Some(xm), Some(ym)) = (realize_term(x, d)?, realize_term(&y, d + gap)?) {
                out.push((d, hom_space(&xm, &ym)?.basis));
            }
        }
        Ok(out)
    };
    let maps = graded(0)?;
    let homotopies = graded(-1)?;
    let dim_of = |c: &Complex, d: i64| c.term(d).map_or(0, |t| t.realized_dim(&projs));

    // flattening of the square X^d -> Y^{d+1}
    let mut eq_offsets = HashMap::new();
    let mut width = 0;
    for d in lo..=hi {
        let s = dim_of(x, d) * dim_of(&y, d + 1);
        if s > 0 {
            eq_offsets.insert(d, width);
            width += s;
        }
    }
    let total: usize = maps.iter().map(|(_, b)| b.len()).sum();
    let mut eqs = Matrix::zeros(&f, total, width);
    let mut r = 0;
    let minus = f.neg(Scalar::ONE);
    for (d, basis) in &maps {
        for m in basis {
            let row = eqs.row_mut(r);
            // f^d d_Y^d contributes to square d
            if let (Some(dy), Some(&off)) = (realize_diff(&y, *d), eq_offsets.get(d)) {
                let p = m.mul(&dy)?;
                f.axpy(&mut row[off..off + p.data().len()], minus, p.data());
            }
            // d_X^{d-1} f^d contributes to square d-1
            if let (Some(dx), Some(&off)) = (realize_diff(x, d - 1), eq_offsets.get(&(d - 1))) {
                let p = dx.mul(m)?;
                f.axpy(&mut row[off..off + p.data().len()], Scalar::ONE, p.data());
            }
            r += 1;
        }
    }
    let chain_maps = total - if width == 0 { 0 } else { eqs.rank() };

    let mut map_offsets = HashMap::new();
    let mut mwidth = 0;
    for d in lo..=hi {
        let s = dim_of(x, d) * dim_of(&y, d);
        if s > 0 {
            map_offsets.insert(d, mwidth);
            mwidth += s;
        }
    }
    let htotal: usize = homotopies.iter().map(|(_, b)| b.len()).sum();
    let mut images = Matrix::zeros(&f, htotal, mwidth);
    let mut r = 0;
    for (e, basis) in &homotopies {
        for h in basis {
            let row = images.row_mut(r);
            if let (Some(dx), Some(&off)) = (realize_diff(x, e - 1), map_offsets.get(&(e - 1))) {
                let p = dx.mul(h)?;
                f.axpy(&mut row[off..off + p.data().len()], Scalar::ONE, p.data());
            }
            if let (Some(dy), Some(&off)) = (realize_diff(&y, e - 1), map_offsets.get(e)) {
                let p = h.mul(&dy)?;
                f.axpy(&mut row[off..off + p.data().len()], Scalar::ONE, p.data());
            }
            r += 1;
        }
    }
    let null_homotopic = if htotal == 0 { 0 } else { images.rank() };
    Ok(HomDims { chain_maps, null_homotopic, hom: chain_maps - null_homotopic })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityRow {
    pub n: i64,
    /// `dim Hom(X, Y[n])`
    pub forward: usize,
    /// `dim Hom(Y, X[-n])`
    pub backward: usize,
    pub agree: bool,
}

/// Compares `Hom(X, Y[n])` with `Hom(Y, X[-n])` over a window. Refuses
/// unless a symmetrizing form is verified.
pub fn duality_check(
    a: &PartitionedAlgebra,
    x: &Complex,
    y: &Complex,
    window: std::ops::RangeInclusive<i64>,
) -> Result<Vec<DualityRow>> {
    if !find_symmetrizing_form(a).is_verified() {
        return Err(Error::NotSymmetric);
    }
    window
        .map(|n| {
            let forward = hom_complex_dims(a, x, y, n)?.hom;
            let backward = hom_complex_dims(a, y, x, -n)?.hom;
            Ok(DualityRow { n, forward, backward, agree: forward == backward })
        })
        .collect()
}
