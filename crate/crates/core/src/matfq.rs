//! Dense matrices over a [`FieldCtx`]: row reduction, kernels, Gram products
//! and the plain-text matrix format.
//!
//! Text format:
//!
//! ```text
//! field <p> <e> <modulus_encoding>
//! <rows> <cols>
//! <row 0: space-separated decimal element encodings>
//! ...
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx};

/// Which bilinear (or sesquilinear) form a Gram product uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GramKind {
    Euclidean,
    Hermitian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFq {
    ctx: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Exponent of the Hermitian conjugation on `ctx`, i.e. `q` for GF(q²).
pub fn hermitian_exponent(ctx: &FieldCtx) -> Result<u64> {
    if ctx.degree() % 2 != 0 {
        return Err(Error::NotQuadraticField {
            p: ctx.characteristic(),
            e: ctx.degree(),
        });
    }
    Ok((ctx.characteristic() as u64).pow(ctx.degree() / 2))
}

impl MatrixFq {
    pub fn zeros(ctx: Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        MatrixFq {
            ctx,
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_vec(ctx: Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|a| !ctx.contains(**a)) {
            return Err(Error::InvalidParameter(format!(
                "entry {bad} is not an element of GF({})",
                ctx.order()
            )));
        }
        Ok(MatrixFq { ctx, rows, cols, data })
    }

    /// Builds a matrix from rows of equal length. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(ctx: Arc<FieldCtx>, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!("row of length {} in {cols} columns", r.len())));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(ctx, rows.len(), cols, data)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut t = Self::zeros(self.ctx.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise q-Frobenius on GF(q²).
    pub fn conjugate(&self) -> Result<MatrixFq> {
        let q = hermitian_exponent(&self.ctx)?;
        let ctx = &self.ctx;
        let data = self.data.iter().map(|&a| ctx.pow(a, q)).collect();
        Ok(MatrixFq {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Multiplies column `j` by `factors[j]`.
    pub fn scale_columns(&self, factors: &[Elem]) -> Result<MatrixFq> {
        if factors.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{} column factors for {} columns",
                factors.len(),
                self.cols
            )));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, &b) in factors.iter().enumerate() {
                let v = self.ctx.mul(self.get(i, j), b);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.cols || self.ctx != other.ctx {
            return Err(Error::ShapeMismatch("vstack of incompatible matrices".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixFq {
            ctx: self.ctx.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = other.transpose();
        Ok(cross_products(self, &t))
    }

    /// Gaussian elimination to reduced row echelon form. Pivots are the
    /// first nonzero entry at or below the current row, scaled to 1.
    pub fn rref(&self) -> Rref {
        let ctx = &self.ctx;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = ctx.inv(m.get(r, c));
            for j in c..self.cols {
                let v = ctx.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            let pivot_row: Vec<Elem> = m.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let nf = ctx.neg(f);
                let row = &mut m.data[i * self.cols + c..(i + 1) * self.cols];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *x = ctx.add(*x, ctx.mul(nf, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_basis(&self) -> MatrixFq {
        let r = self.rref();
        let data = r.matrix.data[..r.rank * self.cols].to_vec();
        MatrixFq {
            ctx: self.ctx.clone(),
            rows: r.rank,
            cols: self.cols,
            data,
        }
    }

    /// Basis of the right null space `{v : M·vᵀ = 0}`, one row per free column.
    pub fn kernel(&self) -> MatrixFq {
        let ctx = &self.ctx;
        let r = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &r.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(self.ctx.clone(), free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, Elem::ONE);
            for (i, &pc) in r.pivots.iter().enumerate() {
                out.set(k, pc, ctx.neg(r.matrix.get(i, f)));
            }
        }
        out
    }

    /// Gram matrix `Σ_k M[i,k]·σ(M[j,k])` with σ the identity or the
    /// q-Frobenius.
    pub fn gram(&self, kind: GramKind) -> Result<MatrixFq> {
        self.gram_with(self, kind)
    }

    /// Mixed Gram matrix `Σ_k self[i,k]·σ(other[j,k])`.
    pub fn gram_with(&self, other: &MatrixFq, kind: GramKind) -> Result<MatrixFq> {
        if self.cols != other.cols || self.ctx != other.ctx {
            return Err(Error::ShapeMismatch("gram of incompatible matrices".into()));
        }
        let rhs = match kind {
            GramKind::Euclidean => other.clone(),
            GramKind::Hermitian => other.conjugate()?,
        };
        Ok(cross_products(self, &rhs))
    }

    /// True iff every row of `other` lies in the row space of `self`.
    pub fn contains_row_space(&self, other: &MatrixFq) -> Result<bool> {
        let base = self.rank();
        Ok(self.vstack(other)?.rank() == base)
    }

    /// Row-space equality, decided by comparing canonical RREF bases.
    pub fn row_space_eq(&self, other: &MatrixFq) -> Result<bool> {
        if self.cols != other.cols || self.ctx != other.ctx {
            return Err(Error::ShapeMismatch("row spaces in different ambient spaces".into()));
        }
        Ok(self.row_basis() == other.row_basis())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "field {} {} {}",
            self.ctx.characteristic(),
            self.ctx.degree(),
            self.ctx.modulus_encoding()
        );
        let _ = writeln!(s, "{} {}", self.rows, self.cols);
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(|a| a.0.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    /// Parses the text format. The modulus must be the canonical one that
    /// [`FieldCtx::new`] selects for `(p, e)`.
    pub fn from_text(text: &str) -> Result<MatrixFq> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 || h[0] != "field" {
            return Err(Error::Parse(format!("bad header line: {header:?}")));
        }
        let p: u64 = parse_num(h[1])?;
        let e: u32 = parse_num(h[2])?;
        let modulus: u64 = parse_num(h[3])?;
        let ctx = FieldCtx::new(p, e).map_err(|err| Error::Parse(err.to_string()))?;
        if ctx.modulus_encoding() != modulus {
            return Err(Error::Parse(format!(
                "modulus {modulus} is not the canonical modulus {} of GF({p}^{e})",
                ctx.modulus_encoding()
            )));
        }
        let dims = lines.next().ok_or_else(|| Error::Parse("missing dimension line".into()))?;
        let d: Vec<&str> = dims.split_whitespace().collect();
        if d.len() != 2 {
            return Err(Error::Parse(format!("bad dimension line: {dims:?}")));
        }
        let rows: usize = parse_num(d[0])?;
        let cols: usize = parse_num(d[1])?;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {rows} rows, found {i}")))?;
            let before = data.len();
            for tok in line.split_whitespace() {
                let v: u32 = parse_num(tok)?;
                if v >= ctx.order() {
                    return Err(Error::Parse(format!("entry {v} out of range for GF({})", ctx.order())));
                }
                data.push(Elem(v));
            }
            if data.len() - before != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    data.len() - before
                )));
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after last row".into()));
        }
        Self::from_vec(Arc::new(ctx), rows, cols, data)
    }
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

/// `out[i][j] = Σ_k a[i,k]·b[j,k]`, rows of the result computed in parallel.
fn cross_products(a: &MatrixFq, b: &MatrixFq) -> MatrixFq {
    let ctx = &a.ctx;
    let n = a.cols;
    let mut data = vec![Elem::ZERO; a.rows * b.rows];
    if n > 0 {
        data.par_chunks_mut(b.rows.max(1))
            .take(a.rows)
            .enumerate()
            .for_each(|(i, out)| {
                let ra = a.row(i);
                for (j, slot) in out.iter_mut().enumerate() {
                    let rb = b.row(j);
                    let mut acc = Elem::ZERO;
                    for k in 0..n {
                        let x = ra[k];
                        let y = rb[k];
                        if !x.is_zero() && !y.is_zero() {
                            acc = ctx.add(acc, ctx.mul(x, y));
                        }
                    }
                    *slot = acc;
                }
            });
    }
    MatrixFq {
        ctx: a.ctx.clone(),
        rows: a.rows,
        cols: b.rows,
        data,
    }
}
