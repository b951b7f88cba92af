//! Riemann–Roch spaces `L(r·Q∞)` through the Weierstrass semigroup `⟨q, m⟩`:
//! `x` has pole order q and `y` pole order m at infinity, so the monomials
//! `x^i y^j` with `j < q` and `qi + mj <= r` form a basis.

use std::sync::Arc;

use rayon::prelude::*;

use crate::curve::{CurveModel, EvaluationSet};
use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::matfq::MatrixFq;

/// A monomial `x^i y^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
}

#[derive(Clone, Debug)]
pub struct MonomialBasis {
    model: Arc<CurveModel>,
    r: u64,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn new(model: &Arc<CurveModel>, r: u64) -> Self {
        let (q, m) = (model.q() as u64, model.m() as u64);
        let mut monomials = Vec::new();
        for j in 0..q {
            if m * j > r {
                break;
            }
            let max_i = (r - m * j) / q;
            monomials.extend((0..=max_i).map(|i| Monomial { i: i as u32, j: j as u32 }));
        }
        monomials.sort_by_key(|mono| q * mono.i as u64 + m * mono.j as u64);
        MonomialBasis {
            model: model.clone(),
            r,
            monomials,
        }
    }

    pub fn model(&self) -> &Arc<CurveModel> {
        &self.model
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// `l(r·Q∞)`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn pole_order(&self, mono: Monomial) -> u64 {
        self.model.q() as u64 * mono.i as u64 + self.model.m() as u64 * mono.j as u64
    }

    /// Evaluation matrix: one row per monomial, one column per place of `d`.
    /// Requires `r < n` so evaluation is injective.
    pub fn generator_matrix(&self, d: &EvaluationSet) -> Result<MatrixFq> {
        if !Arc::ptr_eq(&self.model, d.model()) {
            return Err(Error::InvalidParameter(
                "basis and evaluation set belong to different curves".into(),
            ));
        }
        let n = d.n();
        if self.r >= n as u64 {
            return Err(Error::InvalidParameter(format!(
                "r = {} must be below n = {n} for injective evaluation",
                self.r
            )));
        }
        let f = self.model.field();
        let max_i = self.monomials.iter().map(|mono| mono.i).max().unwrap_or(0) as usize;
        let max_j = self.monomials.iter().map(|mono| mono.j).max().unwrap_or(0) as usize;
        let points: Vec<(Elem, Elem)> = d.points().collect();
        let k = self.monomials.len();
        // column-major, then transposed into rows
        let columns: Vec<Vec<Elem>> = points
            .par_iter()
            .map(|&(x, y)| {
                let xp = powers(f, x, max_i);
                let yp = powers(f, y, max_j);
                self.monomials
                    .iter()
                    .map(|mono| f.mul(xp[mono.i as usize], yp[mono.j as usize]))
                    .collect()
            })
            .collect();
        let mut data = vec![Elem::ZERO; k * n];
        for (c, col) in columns.iter().enumerate() {
            for (row, &v) in col.iter().enumerate() {
                data[row * n + c] = v;
            }
        }
        MatrixFq::from_vec(f.clone(), k, n, data)
    }
}

fn powers(f: &crate::galois::FieldCtx, a: Elem, max: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(max + 1);
    let mut cur = Elem::ONE;
    for _ in 0..=max {
        out.push(cur);
        cur = f.mul(cur, a);
    }
    out
}

/// Basis of `L(r·Q∞)`.
/// `l(r·Q∞)` on `y^q + y = x^m`, counted without building the basis.
pub fn riemann_roch_dim(q: u64, m: u64, r: u64) -> u64 {
    (0..q).take_while(|j| m * j <= r).map(|j| (r - m * j) / q + 1).sum()
}

pub fn monomial_basis(model: &Arc<CurveModel>, r: u64) -> MonomialBasis {
    MonomialBasis::new(model, r)
}

/// Evaluation code generator of `L(r·Q∞)` on `d`.
pub fn generator_matrix(model: &Arc<CurveModel>, r: u64, d: &EvaluationSet) -> Result<MatrixFq> {
    MonomialBasis::new(model, r).generator_matrix(d)
}

/// Gaps of the semigroup `⟨q, m⟩`: pole orders that no function attains.
pub fn gaps(model: &CurveModel) -> Vec<u64> {
    let (q, m) = (model.q() as u64, model.m() as u64);
    // the conductor is 2g, every gap is below it
    let bound = 2 * model.genus() as u64;
    (0..bound)
        .filter(|&s| !(0..q).any(|j| m * j <= s && (s - m * j) % q == 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counted_dimension_matches_basis() {
        for (q, m) in [(2u32, 3u32), (3, 4), (4, 5), (5, 3)] {
            let c = CurveModel::new(q, m).unwrap();
            for r in 0..60 {
                assert_eq!(riemann_roch_dim(q as u64, m as u64, r), MonomialBasis::new(&c, r).len() as u64);
            }
        }
    }
    use crate::curve::EvalSpec;

    fn mono(i: u32, j: u32) -> Monomial {
        Monomial { i, j }
    }

    #[test]
    fn basis_examples() {
        let c = CurveModel::new(2, 3).unwrap();
        assert_eq!(monomial_basis(&c, 3).monomials(), &[mono(0, 0), mono(1, 0), mono(0, 1)]);
        assert_eq!(monomial_basis(&c, 1).monomials(), &[mono(0, 0)]);
        let h = CurveModel::new(3, 4).unwrap();
        assert_eq!(
            monomial_basis(&h, 6).monomials(),
            &[mono(0, 0), mono(1, 0), mono(0, 1), mono(2, 0)]
        );
    }

    #[test]
    fn dimension_and_gap_count() {
        for (q, m) in [(2, 3), (3, 2), (3, 4), (4, 5), (5, 2), (5, 3), (5, 6), (7, 2), (7, 4), (7, 8), (8, 3), (8, 9), (9, 2), (9, 5), (9, 10)] {
            let c = CurveModel::new(q, m).unwrap();
            let g = c.genus() as u64;
            let sizes: Vec<usize> = (0..=4 * g + 10).map(|r| monomial_basis(&c, r).len()).collect();
            let stalls = (1..sizes.len()).filter(|&r| sizes[r] == sizes[r - 1]).count() as u64;
            assert_eq!(stalls, g, "q={q} m={m}");
            assert_eq!(gaps(&c).len() as u64, g);
            for r in (2 * g).saturating_sub(1)..=4 * g + 10 {
                assert_eq!(sizes[r as usize] as u64, r + 1 - g, "q={q} m={m} r={r}");
            }
        }
    }

    #[test]
    fn pole_orders_distinct() {
        let h = CurveModel::new(4, 5).unwrap();
        let b = monomial_basis(&h, 40);
        let orders: Vec<u64> = b.monomials().iter().map(|&mo| b.pole_order(mo)).collect();
        assert!(orders.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn generator_examples() {
        let c = CurveModel::new(2, 3).unwrap();
        let d = EvaluationSet::new(&c, EvalSpec::Full).unwrap();
        let g0 = generator_matrix(&c, 0, &d).unwrap();
        assert_eq!(g0.rows(), 1);
        assert!(g0.row(0).iter().all(|&v| v == Elem::ONE));
        let g2 = generator_matrix(&c, 2, &d).unwrap();
        assert_eq!((g2.rows(), g2.cols(), g2.rank()), (2, 8, 2));
        assert!(generator_matrix(&c, 8, &d).is_err());
    }

    #[test]
    fn full_rank_below_length() {
        for (q, m) in [(2, 3), (3, 2), (3, 4), (4, 5)] {
            let c = CurveModel::new(q, m).unwrap();
            let d = EvaluationSet::new(&c, EvalSpec::Full).unwrap();
            for r in 0..d.n() as u64 {
                let g = generator_matrix(&c, r, &d).unwrap();
                assert_eq!(g.rank(), g.rows(), "q={q} m={m} r={r}");
            }
        }
    }
}
