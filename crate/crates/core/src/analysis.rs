//! Certification: duals, orthogonality, hull, minimum distances and the
//! quantum parameters of the Hermitian construction.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::LinearCode;
use crate::galois::{Elem, FieldCtx};
use crate::matfq::{GramKind, MatrixFq};

/// Default number of codewords (or column subsets) a distance search may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Reads `AGCODES_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> Result<u64> {
    match std::env::var("AGCODES_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| Error::Parse(format!("AGCODES_BUDGET = {v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// The dual code: kernel of G for the Euclidean form, kernel of the
/// entrywise conjugate of G for the Hermitian form.
pub fn dual(code: &LinearCode, kind: GramKind) -> Result<LinearCode> {
    let g = match kind {
        GramKind::Euclidean => code.generator.clone(),
        GramKind::Hermitian => code.generator.conjugate()?,
    };
    Ok(LinearCode::from_matrix(g.kernel()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orthogonality {
    None,
    EuclideanSo,
    HermitianSo,
    EuclideanSelfDual,
}

/// Minimum distance: exact, or a lower bound when the search exceeded its budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DistanceRecord {
    Exact { d: u64 },
    Bound {
        #[serde(skip_serializing_if = "Option::is_none")]
        lower: Option<u64>,
        source: String,
        budget: u64,
    },
}

impl DistanceRecord {
    /// The exact distance, or the lower bound when one is known.
    pub fn lower(&self) -> Option<u64> {
        match self {
            DistanceRecord::Exact { d } => Some(*d),
            DistanceRecord::Bound { lower, .. } => *lower,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DistanceRecord::Exact { .. })
    }
}

/// `[[n, k, >= d]]_q` from the Hermitian construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumRecord {
    pub n: u64,
    pub k: u64,
    pub d_lower: Option<u64>,
    /// Order of the quantum alphabet GF(q), the square root of the code's field.
    pub q: u64,
    pub dual_distance: DistanceRecord,
}

impl std::fmt::Display for QuantumRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.d_lower {
            Some(d) if self.dual_distance.is_exact() => write!(f, "[[{},{},{}]]_{}", self.n, self.k, d, self.q),
            Some(d) => write!(f, "[[{},{},>={}]]_{}", self.n, self.k, d, self.q),
            None => write!(f, "[[{},{}]]_{}", self.n, self.k, self.q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCertificate {
    pub n: u64,
    pub k: u64,
    pub orthogonality: Orthogonality,
    pub euclidean_so: bool,
    pub hermitian_so: bool,
    pub euclidean_self_dual: bool,
    pub hermitian_self_dual: bool,
    /// Euclidean self-orthogonal with odd n and k = (n - 1)/2.
    pub almost_self_dual: bool,
    /// Dimension of the Euclidean hull C ∩ C^⊥.
    pub hull_dim: u64,
    pub distance: DistanceRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum: Option<QuantumRecord>,
}

/// Decides every orthogonality property exactly and bounds the distances
/// within `budget`.
pub fn certify(code: &LinearCode, budget: u64) -> Result<CodeCertificate> {
    let g = &code.generator;
    let n = g.cols() as u64;
    let k = g.rank() as u64;
    let gram_e = g.gram(GramKind::Euclidean)?;
    let euclidean_so = gram_e.is_zero();
    let hermitian_so = g.ctx().degree() % 2 == 0 && g.gram(GramKind::Hermitian)?.is_zero();
    let euclidean_self_dual = euclidean_so && 2 * k == n;
    let hermitian_self_dual = hermitian_so && 2 * k == n;
    let almost_self_dual = euclidean_so && n % 2 == 1 && 2 * k + 1 == n;
    let orthogonality = if euclidean_self_dual {
        Orthogonality::EuclideanSelfDual
    } else if hermitian_so {
        Orthogonality::HermitianSo
    } else if euclidean_so {
        Orthogonality::EuclideanSo
    } else {
        Orthogonality::None
    };
    // dim(C ∩ C^⊥) = k - rank(G·Gᵀ) for a full-rank G
    let basis = g.row_basis();
    let hull_dim = k - basis.gram(GramKind::Euclidean)?.rank() as u64;
    let distance = min_distance(g, code.designed_distance, budget);
    let quantum = if hermitian_so {
        Some(quantum_params(code, budget)?)
    } else {
        None
    };
    Ok(CodeCertificate {
        n,
        k,
        orthogonality,
        euclidean_so,
        hermitian_so,
        euclidean_self_dual,
        hermitian_self_dual,
        almost_self_dual,
        hull_dim,
        distance,
        quantum,
    })
}

/// `[[n, n - 2k, >= d(C^⊥H)]]` for a Hermitian self-orthogonal code.
pub fn quantum_params(code: &LinearCode, budget: u64) -> Result<QuantumRecord> {
    let g = &code.generator;
    if g.ctx().degree() % 2 != 0 || !g.gram(GramKind::Hermitian)?.is_zero() {
        return Err(Error::NotHermitianSelfOrthogonal);
    }
    let n = g.cols() as u64;
    let k = g.rank() as u64;
    // conjugation preserves weights, so d(C^⊥H) = d(C^⊥)
    let dual_distance = dual_distance(g, code.dual_designed_distance, budget);
    let q = (g.ctx().order() as f64).sqrt().round() as u64;
    Ok(QuantumRecord {
        n,
        k: n - 2 * k,
        d_lower: dual_distance.lower(),
        q,
        dual_distance,
    })
}

fn checked_pow(q: u64, k: usize) -> Option<u64> {
    (0..k).try_fold(1u64, |acc, _| acc.checked_mul(q))
}

/// Weight distribution `A_0..A_n` of the row space, when `q^k <= budget`.
pub fn weight_distribution(g: &MatrixFq, budget: u64) -> Option<Vec<u64>> {
    let basis = g.row_basis();
    let q = g.ctx().order() as u64;
    match checked_pow(q, basis.rows()) {
        Some(total) if total <= budget => Some(enumerate_weights(&basis)),
        _ => None,
    }
}

/// Exact minimum distance when `q^k <= budget`, otherwise the designed bound.
pub fn min_distance(g: &MatrixFq, designed: Option<u64>, budget: u64) -> DistanceRecord {
    let bound = |source: &str| DistanceRecord::Bound {
        lower: designed,
        source: source.to_string(),
        budget,
    };
    if g.rank() == 0 {
        return bound("zero code");
    }
    match weight_distribution(g, budget) {
        Some(hist) => DistanceRecord::Exact {
            d: hist.iter().skip(1).position(|&c| c > 0).map(|i| i as u64 + 1).unwrap_or(0),
        },
        None => bound("designed"),
    }
}

/// Codewords are visited in a q-ary Gray order: step j changes message digit
/// `v_q(j)` to the next field element, which costs one row update. The top
/// digit is fixed per parallel task.
fn enumerate_weights(basis: &MatrixFq) -> Vec<u64> {
    let f = basis.ctx().as_ref();
    let k = basis.rows();
    let n = basis.cols();
    let q = f.order() as usize;
    let mut hist = vec![0u64; n + 1];
    if k == 0 {
        hist[0] = 1;
        return hist;
    }
    let elems: Vec<Elem> = f.elements().collect();
    // moving digit t from elems[s] to elems[(s+1) % q] adds delta[s]·row_t
    let delta: Vec<Elem> = (0..q).map(|s| f.sub(elems[(s + 1) % q], elems[s])).collect();
    let top = k - 1;
    let low_digits = top;
    let steps = q.pow(low_digits as u32);
    let partial: Vec<Vec<u64>> = (0..q)
        .into_par_iter()
        .map(|c| {
            let mut hist = vec![0u64; n + 1];
            let mut word: Vec<Elem> = basis.row(top).iter().map(|&v| f.mul(elems[c], v)).collect();
            let mut digit = vec![0usize; low_digits];
            hist[weight(&word)] += 1;
            for j in 1..steps {
                let mut t = 0;
                let mut jj = j;
                while jj % q == 0 {
                    jj /= q;
                    t += 1;
                }
                let d = delta[digit[t]];
                digit[t] = (digit[t] + 1) % q;
                for (w, &r) in word.iter_mut().zip(basis.row(t)) {
                    *w = f.add(*w, f.mul(d, r));
                }
                hist[weight(&word)] += 1;
            }
            hist
        })
        .collect();
    for part in partial {
        for (h, p) in hist.iter_mut().zip(part) {
            *h += p;
        }
    }
    hist
}

fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|v| !v.is_zero()).count()
}

/// Minimum distance of the Euclidean dual of the row space of `g`.
///
/// Exact by enumerating the dual when it is small enough, otherwise by
/// looking for the smallest set of linearly dependent columns of `g`; when
/// the budget runs out the record carries the larger of the completed search
/// depth and `designed`.
pub fn dual_distance(g: &MatrixFq, designed: Option<u64>, budget: u64) -> DistanceRecord {
    let basis = g.row_basis();
    let n = basis.cols();
    let k = basis.rows();
    if k == n {
        return DistanceRecord::Bound { lower: None, source: "zero dual".into(), budget };
    }
    let q = g.ctx().order() as u64;
    if let Some(total) = checked_pow(q, n - k) {
        if total <= budget {
            return min_distance(&basis.kernel(), None, budget);
        }
    }
    match dependent_columns(&basis, budget) {
        ColumnSearch::Found(w) => DistanceRecord::Exact { d: w },
        ColumnSearch::Exhausted(w) => {
            // every set of at most w columns is independent
            let searched = w + 1;
            let (lower, source) = match designed {
                Some(d) if d > searched => (d, "designed"),
                _ => (searched, "column search"),
            };
            DistanceRecord::Bound { lower: Some(lower), source: source.into(), budget }
        }
    }
}

enum ColumnSearch {
    Found(u64),
    Exhausted(u64),
}

fn dependent_columns(basis: &MatrixFq, budget: u64) -> ColumnSearch {
    let f = basis.ctx().as_ref();
    let n = basis.cols();
    let k = basis.rows();
    let cols: Vec<Vec<Elem>> = (0..n).map(|j| (0..k).map(|i| basis.get(i, j)).collect()).collect();
    if cols.iter().any(|c| c.iter().all(|v| v.is_zero())) {
        return ColumnSearch::Found(1);
    }
    // two columns are dependent iff they agree after scaling the first nonzero entry to 1
    let mut seen = HashMap::with_capacity(n);
    for c in &cols {
        let lead = *c.iter().find(|v| !v.is_zero()).expect("nonzero column");
        let inv = f.inv(lead);
        let normalized: Vec<Elem> = c.iter().map(|&v| f.mul(inv, v)).collect();
        if seen.insert(normalized, ()).is_some() {
            return ColumnSearch::Found(2);
        }
    }
    let mut spent = 0u64;
    for w in 3..=k + 1 {
        let subsets = binomial(n as u64, w as u64);
        if subsets.map_or(true, |s| spent.saturating_add(s) > budget) {
            return ColumnSearch::Exhausted(w as u64 - 1);
        }
        spent += subsets.unwrap();
        let found = (0..n).combinations(w).par_bridge().any(|idx| {
            let sub: Vec<&[Elem]> = idx.iter().map(|&j| cols[j].as_slice()).collect();
            column_rank(f, &sub) < w
        });
        if found {
            return ColumnSearch::Found(w as u64);
        }
    }
    // k + 1 columns in a k-dimensional space are always dependent
    ColumnSearch::Found(k as u64 + 1)
}

fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

fn column_rank(f: &FieldCtx, cols: &[&[Elem]]) -> usize {
    let mut rows: Vec<Vec<Elem>> = cols.iter().map(|c| c.to_vec()).collect();
    let len = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for pos in 0..len {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][pos].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][pos]);
        let pivot: Vec<Elem> = rows[rank].iter().map(|&v| f.mul(inv, v)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let c = row[pos];
            if !c.is_zero() {
                for (x, &pv) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(c, pv));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
