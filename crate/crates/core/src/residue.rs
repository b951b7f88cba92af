//! Residues of `η = c·dx / ∏_{a∈S}(x - a)` at the places of an evaluation set.
//!
//! At a simple root `a` of `f = ∏(x - b)` the residue is `c / f'(a)`, the same
//! for every place over `a`.

use std::collections::HashSet;

use crate::curve::EvaluationSet;
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx};

/// The differential `c·dx / ∏_{a∈S}(x - a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialSpec {
    pub c: Elem,
    pub support: Vec<Elem>,
}

impl DifferentialSpec {
    pub fn new(c: Elem, support: Vec<Elem>) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroElement("differential scalar"));
        }
        let mut seen = HashSet::with_capacity(support.len());
        if let Some(a) = support.iter().find(|a| !seen.insert(**a)) {
            return Err(Error::DuplicatePoint(a.0));
        }
        Ok(DifferentialSpec { c, support })
    }

    /// The differential over the x-support of `d`.
    pub fn for_set(c: Elem, d: &EvaluationSet) -> Result<Self> {
        Self::new(c, d.x_support().to_vec())
    }

    /// `c / f'(a)` for each support point, in support order.
    pub fn support_residues(&self, f: &FieldCtx) -> Vec<Elem> {
        let n = self.support.len();
        self.support
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut d = Elem::ONE;
                for (j, &b) in self.support.iter().enumerate() {
                    if j != i {
                        d = f.mul(d, f.sub(a, b));
                    }
                }
                debug_assert!(n == 1 || !d.is_zero());
                f.div(self.c, d)
            })
            .collect()
    }
}

/// Residue vector of `spec` at the places of `d`, in place order.
pub fn residues(spec: &DifferentialSpec, d: &EvaluationSet) -> Result<Vec<Elem>> {
    if spec.support != d.x_support() {
        return Err(Error::InvalidParameter(
            "differential support differs from the evaluation set's x-support".into(),
        ));
    }
    let f = d.model().field();
    let per_x = spec.support_residues(f);
    let q = d.model().q() as usize;
    Ok(per_x
        .iter()
        .flat_map(|&r| std::iter::repeat(r).take(q))
        .collect())
}

/// Direct product `∏_{j≠i}(α^i - α^j)` over `j = 1..=m` and the closed form `m·α^(-i)`.
pub fn lemma_m_oracle(f: &FieldCtx, m: u64, alpha: Elem, i: u64) -> Result<(Elem, Elem)> {
    if alpha.is_zero() || f.element_order(alpha) != m {
        return Err(Error::InvalidParameter(format!("{alpha} does not have order {m}")));
    }
    if i == 0 || i > m {
        return Err(Error::InvalidParameter(format!("index {i} outside 1..={m}")));
    }
    let ai = f.pow(alpha, i);
    let mut product = Elem::ONE;
    for j in (1..=m).filter(|&j| j != i) {
        product = f.mul(product, f.sub(ai, f.pow(alpha, j)));
    }
    let formula = f.mul(f.from_int(m as i64), f.inv(ai));
    Ok((product, formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveModel, EvalSpec};

    #[test]
    fn full_artin_schreier_residue() {
        for (q, m) in [(2, 3), (3, 2), (4, 5), (5, 3), (8, 3)] {
            let c = CurveModel::new(q, m).unwrap();
            let f = c.field();
            let d = EvaluationSet::new(&c, EvalSpec::Full).unwrap();
            let minus_one = f.neg(Elem::ONE);
            let res = residues(&DifferentialSpec::for_set(minus_one, &d).unwrap(), &d).unwrap();
            let expected = f.div(minus_one, f.from_int((m * (q - 1)) as i64));
            // over x = 0 the derivative of x^(m(q-1)+1) - x is -1
            let q = q as usize;
            assert!(res[..q].iter().all(|&r| r == Elem::ONE), "q={q} m={m}");
            assert!(res[q..].iter().all(|&r| r == expected), "q={q} m={m}");
        }
        let c = CurveModel::new(2, 3).unwrap();
        let d = EvaluationSet::new(&c, EvalSpec::Full).unwrap();
        let res = residues(&DifferentialSpec::for_set(Elem::ONE, &d).unwrap(), &d).unwrap();
        assert!(res.iter().all(|&r| r == Elem::ONE));
    }

    #[test]
    fn single_point() {
        let f = FieldCtx::new(3, 2).unwrap();
        let spec = DifferentialSpec::new(Elem::ONE, vec![Elem::ZERO]).unwrap();
        assert_eq!(spec.support_residues(&f), vec![Elem::ONE]);
    }

    #[test]
    fn complement_of_subfield_residues() {
        let h = CurveModel::new(3, 4).unwrap();
        let f = h.field().clone();
        let d = EvaluationSet::new(&h, EvalSpec::ComplementOfSubfield).unwrap();
        let res = residues(&DifferentialSpec::for_set(Elem::ONE, &d).unwrap(), &d).unwrap();
        for (block, &a) in d.x_support().iter().enumerate() {
            // f = (x^9 - x)/(x^3 - x), so f'(a) = -1/(a^3 - a)
            let expected = f.neg(f.sub(f.pow(a, 3), a));
            assert!(res[3 * block..3 * block + 3].iter().all(|&r| r == expected));
        }
        // all residues in one GF(3)*-coset
        let t = h.tower();
        assert!(res.iter().all(|&r| t.classify(r, res[0]).unwrap().same_coset));
    }

    #[test]
    fn subspace_residues_constant() {
        for (q, dim) in [(3u32, 1u32), (3, 2), (4, 3), (5, 1)] {
            let h = CurveModel::new(q, q + 1).unwrap();
            let d = EvaluationSet::new(&h, EvalSpec::Subspace { dim }).unwrap();
            let res = residues(&DifferentialSpec::for_set(Elem::ONE, &d).unwrap(), &d).unwrap();
            assert!(res.iter().all(|&r| r == res[0]), "q={q} dim={dim}");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(DifferentialSpec::new(Elem::ZERO, vec![Elem::ONE]).is_err());
        assert!(matches!(
            DifferentialSpec::new(Elem::ONE, vec![Elem::ONE, Elem::ONE]),
            Err(Error::DuplicatePoint(1))
        ));
    }

    #[test]
    fn lemma_m_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(lemma_m_oracle(&f5, 4, Elem(2), 4).unwrap(), (Elem(4), Elem(4)));
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(lemma_m_oracle(&f7, 2, Elem(6), 2).unwrap(), (Elem(2), Elem(2)));
        let f4 = FieldCtx::new(2, 2).unwrap();
        let g = f4.generator();
        let g2 = f4.pow(g, 2);
        assert_eq!(lemma_m_oracle(&f4, 3, g, 1).unwrap(), (g2, g2));
        assert!(lemma_m_oracle(&f4, 2, g, 1).is_err());
    }
}
