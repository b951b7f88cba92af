//! Column twists turning an evaluation code into a self-orthogonal one.
//!
//! If every residue of η at the places of D lies in one coset `h·GF(q)*`,
//! writing `res_i = b_i^(q+1)·h` and scaling column i by `b_i` gives a
//! Hermitian self-orthogonal code whenever `(q+1)·r <= n + 2g - 2`. The
//! Euclidean version uses `res_i = b_i²·g₀` and `2r <= n + 2g - 2`.

use serde::{Deserialize, Serialize};

use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::galois::{Elem, QuadraticTower};
use crate::matfq::{GramKind, MatrixFq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistMode {
    Hermitian,
    Euclidean,
}

impl TwistMode {
    pub fn gram_kind(self) -> GramKind {
        match self {
            TwistMode::Hermitian => GramKind::Hermitian,
            TwistMode::Euclidean => GramKind::Euclidean,
        }
    }

    fn label(self) -> &'static str {
        match self {
            TwistMode::Hermitian => "hermitian",
            TwistMode::Euclidean => "euclidean",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistVector {
    pub mode: TwistMode,
    /// Coset representative (Hermitian) or square-class representative g₀ (Euclidean).
    pub h: Elem,
    pub b: Vec<Elem>,
}

impl TwistVector {
    pub fn identity(mode: TwistMode, n: usize) -> Self {
        TwistVector {
            mode,
            h: Elem::ONE,
            b: vec![Elem::ONE; n],
        }
    }
}

/// Solves for the column multipliers, or reports the first residue in a
/// different class from the first one.
pub fn solve_twist(tower: &QuadraticTower, residues: &[Elem], mode: TwistMode) -> Result<TwistVector> {
    let f = tower.top();
    if residues.is_empty() {
        return Err(Error::InvalidParameter("empty residue vector".into()));
    }
    if residues.iter().any(|r| r.is_zero()) {
        return Err(Error::ZeroElement("residue"));
    }
    let first = residues[0];
    let (h, exponent) = match mode {
        TwistMode::Hermitian => (first, tower.q() as u64 + 1),
        TwistMode::Euclidean => {
            let g0 = if f.is_square(first) { Elem::ONE } else { f.generator() };
            (g0, 2)
        }
    };
    let first_class = tower.classify(first, h)?;
    let mut b = Vec::with_capacity(residues.len());
    for (index, &r) in residues.iter().enumerate() {
        let class = tower.classify(r, h)?;
        let aligned = match mode {
            TwistMode::Hermitian => class.same_coset,
            TwistMode::Euclidean => class.is_square == first_class.is_square,
        };
        if !aligned {
            return Err(Error::MixedClass { mode: mode.label(), index });
        }
        let bi = f
            .solve_power(f.div(r, h), exponent)
            .ok_or_else(|| Error::Internal(format!("no root for residue at position {index}")))?;
        b.push(bi);
    }
    Ok(TwistVector { mode, h, b })
}

/// Scales column j of `m` by `b_j`.
pub fn apply_twist(m: &MatrixFq, tv: &TwistVector) -> Result<MatrixFq> {
    m.scale_columns(&tv.b)
}

/// Admissible range of r for a twisted code of length n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWindow {
    /// Smallest r for which `k = r + 1 - g` holds exactly (2g - 1).
    pub r_min: i64,
    pub r_max: i64,
    /// Euclidean only: the r with `2r = n + 2g - 2`.
    pub r_selfdual: Option<i64>,
}

pub fn degree_window(model: &CurveModel, n: usize, mode: TwistMode) -> DegreeWindow {
    degree_window_for(model.q(), model.genus(), n as u64, mode)
}

/// [`degree_window`] from the numbers alone.
pub fn degree_window_for(q: u32, genus: u32, n: u64, mode: TwistMode) -> DegreeWindow {
    let g = genus as i64;
    let top = n as i64 + 2 * g - 2;
    let r_min = 2 * g - 1;
    match mode {
        TwistMode::Hermitian => DegreeWindow {
            r_min,
            r_max: top.div_euclid(q as i64 + 1),
            r_selfdual: None,
        },
        TwistMode::Euclidean => DegreeWindow {
            r_min,
            r_max: top.div_euclid(2),
            r_selfdual: (top % 2 == 0).then_some(top / 2),
        },
    }
}
