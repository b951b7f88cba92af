//! The maximal curves `y^q + y = x^m` over GF(q²) with `m | q + 1`
//! (the Hermitian curve when `m = q + 1`): rational places, fibers over
//! x-coordinates, and evaluation sets.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx, QuadraticTower};

/// The curve `y^q + y = x^m` over GF(q²).
#[derive(Debug)]
pub struct CurveModel {
    tower: Arc<QuadraticTower>,
    q: u32,
    m: u32,
    genus: u32,
    /// `trace_fibers[c]` lists every `y` with `y^q + y = c`, ascending.
    trace_fibers: Vec<Vec<Elem>>,
}

/// A rational place: an affine point or the unique place at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Affine { x: Elem, y: Elem },
    Infinity,
}

impl Place {
    pub fn coords(&self) -> Option<(Elem, Elem)> {
        match *self {
            Place::Affine { x, y } => Some((x, y)),
            Place::Infinity => None,
        }
    }
}

impl CurveModel {
    pub fn new(q: u32, m: u32) -> Result<Arc<Self>> {
        let tower = Arc::new(QuadraticTower::for_order(q as u64)?);
        Self::with_tower(tower, m)
    }

    /// Builds the curve over an existing tower, sharing its fields.
    pub fn with_tower(tower: Arc<QuadraticTower>, m: u32) -> Result<Arc<Self>> {
        let q = tower.q();
        if m < 2 {
            return Err(Error::InvalidParameter(format!("m = {m} must be at least 2")));
        }
        if (q + 1) % m != 0 {
            return Err(Error::Divisibility(format!("m = {m} must divide q + 1 = {}", q + 1)));
        }
        let top = tower.top();
        let mut trace_fibers = vec![Vec::new(); top.order() as usize];
        for y in top.elements() {
            let c = top.add(tower.conj(y), y);
            trace_fibers[c.0 as usize].push(y);
        }
        Ok(Arc::new(CurveModel {
            q,
            m,
            genus: (m - 1) * (q - 1) / 2,
            trace_fibers,
            tower,
        }))
    }

    pub fn tower(&self) -> &Arc<QuadraticTower> {
        &self.tower
    }

    /// GF(q²), the field of definition of the codes.
    pub fn field(&self) -> &Arc<FieldCtx> {
        self.tower.top()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Degree of the function field over GF(q²)(x); every split fiber has this many places.
    pub fn extension_degree(&self) -> u32 {
        self.q
    }

    pub fn is_hermitian(&self) -> bool {
        self.m == self.q + 1
    }

    /// `x0` splits completely iff `x0^m` lies in GF(q).
    pub fn splits(&self, x0: Elem) -> bool {
        let c = self.field().pow(x0, self.m as u64);
        self.tower.in_base(c)
    }

    /// The q places over `x = x0`, ordered by y encoding.
    pub fn fiber(&self, x0: Elem) -> Result<Vec<Place>> {
        if !self.field().contains(x0) {
            return Err(Error::InvalidParameter(format!("{x0} is not an element of GF(q^2)")));
        }
        let c = self.field().pow(x0, self.m as u64);
        let ys = &self.trace_fibers[c.0 as usize];
        if ys.is_empty() {
            return Err(Error::NotSplitting(x0.0));
        }
        debug_assert_eq!(ys.len() as u32, self.q);
        Ok(ys.iter().map(|&y| Place::Affine { x: x0, y }).collect())
    }

    /// Counts rational places over GF(q²) by testing every affine pair, plus
    /// the place at infinity.
    pub fn census(&self) -> u64 {
        let f = self.field();
        let q = self.q as u64;
        let mut count = 1u64;
        for x in f.elements() {
            let rhs = f.pow(x, self.m as u64);
            count += f
                .elements()
                .filter(|&y| f.add(f.pow(y, q), y) == rhs)
                .count() as u64;
        }
        count
    }

    /// `q² + 1 + 2gq`, the Hasse–Weil bound over GF(q²).
    pub fn hasse_weil_bound(&self) -> u64 {
        let q = self.q as u64;
        q * q + 1 + 2 * self.genus as u64 * q
    }

    /// True iff the affine point satisfies the curve equation.
    pub fn on_curve(&self, x: Elem, y: Elem) -> bool {
        let f = self.field();
        f.add(self.tower.conj(y), y) == f.pow(x, self.m as u64)
    }
}

/// Which x-coordinates an evaluation set uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalSpec {
    /// Every splitting x: `{0} ∪ μ_{m(q-1)}`.
    Full,
    /// `{0}` together with the first `cosets` cosets `t·⟨α⟩` (α of the given
    /// order) that meet GF(q)*, ordered by smallest element.
    Multiplicative { order: u32, cosets: u32 },
    /// GF(q²) \ GF(q), in blocks `g^k·GF(q)*` for k = 1..q.
    ComplementOfSubfield,
    /// `{0} ∪ μ_s`.
    Unity { order: u32 },
    /// GF(q²) \ μ_k.
    ComplementOfUnity { order: u32 },
    /// The GF(p)-span of `1, g, …, g^(dim-1)`, i.e. encodings below p^dim.
    Subspace { dim: u32 },
    /// Explicit x-coordinates in the given order.
    Points(Vec<Elem>),
}

/// The divisor D as an ordered list of rational places.
#[derive(Clone, Debug)]
pub struct EvaluationSet {
    model: Arc<CurveModel>,
    spec: EvalSpec,
    x_support: Vec<Elem>,
    places: Vec<Place>,
}

impl EvaluationSet {
    pub fn new(model: &Arc<CurveModel>, spec: EvalSpec) -> Result<Self> {
        let x_support = support_for(model, &spec)?;
        let mut seen = HashSet::with_capacity(x_support.len());
        let mut places = Vec::with_capacity(x_support.len() * model.q as usize);
        for &x in &x_support {
            if !seen.insert(x) {
                return Err(Error::DuplicatePoint(x.0));
            }
            places.extend(model.fiber(x)?);
        }
        Ok(EvaluationSet {
            model: model.clone(),
            spec,
            x_support,
            places,
        })
    }

    pub fn model(&self) -> &Arc<CurveModel> {
        &self.model
    }

    pub fn spec(&self) -> &EvalSpec {
        &self.spec
    }

    pub fn x_support(&self) -> &[Elem] {
        &self.x_support
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    /// Affine coordinates of the places, in order.
    pub fn points(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.places.iter().filter_map(Place::coords)
    }

    pub fn n(&self) -> usize {
        self.places.len()
    }
}

fn sorted(mut v: Vec<Elem>) -> Vec<Elem> {
    v.sort_unstable();
    v
}

fn check_divides_group(s: u32, order: u32) -> Result<()> {
    if s == 0 || order % s != 0 {
        return Err(Error::Divisibility(format!("{s} must divide q^2 - 1 = {order}")));
    }
    Ok(())
}

fn roots_of_unity(f: &FieldCtx, s: u32) -> Vec<Elem> {
    let n = f.order() as u64 - 1;
    let step = n / s as u64;
    (0..s as u64).map(|j| f.exp(j * step)).collect()
}

fn support_for(model: &CurveModel, spec: &EvalSpec) -> Result<Vec<Elem>> {
    let f = model.field();
    let q = model.q;
    let group = f.order() - 1;
    let support = match spec {
        EvalSpec::Full => {
            let s = model.m * (q - 1);
            let mut v = vec![Elem::ZERO];
            v.extend(sorted(roots_of_unity(f, s)));
            v
        }
        EvalSpec::Multiplicative { order, cosets } => {
            check_divides_group(*order, group)?;
            let sub = roots_of_unity(f, *order);
            let mut blocks: Vec<Vec<Elem>> = Vec::new();
            let mut covered = HashSet::new();
            for t in f.nonzero_elements().filter(|&t| model.tower.in_base(t)) {
                if covered.contains(&t) {
                    continue;
                }
                let block = sorted(sub.iter().map(|&a| f.mul(t, a)).collect());
                covered.extend(block.iter().copied());
                blocks.push(block);
            }
            blocks.sort_by_key(|b| b[0]);
            if *cosets == 0 || *cosets as usize > blocks.len() {
                return Err(Error::InvalidParameter(format!(
                    "{cosets} cosets requested, {} cosets of the order-{order} subgroup meet GF(q)*",
                    blocks.len()
                )));
            }
            let mut v = vec![Elem::ZERO];
            for b in blocks.into_iter().take(*cosets as usize) {
                v.extend(b);
            }
            v
        }
        EvalSpec::ComplementOfSubfield => {
            let mut v = Vec::with_capacity((q * q - q) as usize);
            for k in 1..=q as u64 {
                let block: Vec<Elem> = (0..(q - 1) as u64)
                    .map(|j| f.exp(k + (q as u64 + 1) * j))
                    .collect();
                v.extend(sorted(block));
            }
            v
        }
        EvalSpec::Unity { order } => {
            check_divides_group(*order, group)?;
            let mut v = vec![Elem::ZERO];
            v.extend(sorted(roots_of_unity(f, *order)));
            v
        }
        EvalSpec::ComplementOfUnity { order } => {
            check_divides_group(*order, group)?;
            let excluded: HashSet<Elem> = roots_of_unity(f, *order).into_iter().collect();
            f.elements().filter(|a| !excluded.contains(a)).collect()
        }
        EvalSpec::Subspace { dim } => {
            if *dim == 0 || *dim > f.degree() {
                return Err(Error::InvalidParameter(format!(
                    "subspace dimension {dim} must be in 1..={}",
                    f.degree()
                )));
            }
            let size = f.characteristic().pow(*dim);
            (0..size).map(Elem).collect()
        }
        EvalSpec::Points(v) => {
            if let Some(bad) = v.iter().find(|a| !f.contains(**a)) {
                return Err(Error::InvalidParameter(format!("{bad} is not an element of GF(q^2)")));
            }
            v.clone()
        }
    };
    if support.is_empty() {
        return Err(Error::InvalidParameter("empty evaluation set".into()));
    }
    Ok(support)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_and_divisibility() {
        assert_eq!(CurveModel::new(2, 3).unwrap().genus(), 1);
        let h = CurveModel::new(3, 4).unwrap();
        assert_eq!(h.genus(), 3);
        assert!(h.is_hermitian());
        assert!(matches!(CurveModel::new(3, 3), Err(Error::Divisibility(_))));
        assert!(matches!(CurveModel::new(6, 7), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn full_set_over_gf4() {
        let c = CurveModel::new(2, 3).unwrap();
        let d = EvaluationSet::new(&c, EvalSpec::Full).unwrap();
        assert_eq!(d.x_support(), &[Elem(0), Elem(1), Elem(2), Elem(3)]);
        assert_eq!(d.n(), 8);
    }

    #[test]
    fn fibers_over_gf4() {
        let c = CurveModel::new(2, 3).unwrap();
        let ys = |x| -> Vec<Elem> { c.fiber(x).unwrap().iter().map(|p| p.coords().unwrap().1).collect() };
        assert_eq!(ys(Elem(0)), vec![Elem(0), Elem(1)]);
        // y² + y = g³ = 1 has roots g and g²
        let f = c.field();
        let g = f.generator();
        assert_eq!(ys(g), sorted(vec![g, f.pow(g, 2)]));
        let h = CurveModel::new(3, 4).unwrap();
        for x in h.field().elements() {
            assert_eq!(h.fiber(x).unwrap().len(), 3);
        }
    }

    #[test]
    fn fiber_cardinality_is_q_or_zero() {
        for (q, m) in [(2, 3), (3, 2), (4, 5), (5, 2), (5, 3), (7, 4), (8, 3)] {
            let c = CurveModel::new(q, m).unwrap();
            for x in c.field().elements() {
                match c.fiber(x) {
                    Ok(places) => {
                        assert!(c.splits(x));
                        assert_eq!(places.len() as u32, q);
                        for p in places {
                            let (px, py) = p.coords().unwrap();
                            assert!(c.on_curve(px, py));
                        }
                    }
                    Err(Error::NotSplitting(_)) => assert!(!c.splits(x)),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn census_small() {
        assert_eq!(CurveModel::new(2, 3).unwrap().census(), 9);
        assert_eq!(CurveModel::new(3, 4).unwrap().census(), 28);
        assert_eq!(CurveModel::new(4, 5).unwrap().census(), 65);
    }

    #[test]
    fn hermitian_eval_sets() {
        let h = CurveModel::new(3, 4).unwrap();
        let d = EvaluationSet::new(&h, EvalSpec::ComplementOfSubfield).unwrap();
        assert_eq!(d.x_support().len(), 6);
        assert_eq!(d.n(), 18);
        let v = EvaluationSet::new(&h, EvalSpec::Subspace { dim: 1 }).unwrap();
        assert_eq!(v.x_support(), &[Elem(0), Elem(1), Elem(2)]);
        assert_eq!(v.n(), 9);
        let u = EvaluationSet::new(&h, EvalSpec::Unity { order: 4 }).unwrap();
        assert_eq!(u.n(), 15);
        let cu = EvaluationSet::new(&h, EvalSpec::ComplementOfUnity { order: 4 }).unwrap();
        assert_eq!(cu.n(), 3 * 5);
        assert!(matches!(
            EvaluationSet::new(&h, EvalSpec::Unity { order: 5 }),
            Err(Error::Divisibility(_))
        ));
    }

    #[test]
    fn multiplicative_cosets() {
        let h = CurveModel::new(5, 6).unwrap();
        // order-2 subgroup {±1} ⊂ GF(5)*: two cosets meet GF(5)*
        let d = EvaluationSet::new(&h, EvalSpec::Multiplicative { order: 2, cosets: 2 }).unwrap();
        assert_eq!(d.n(), 5 * (2 * 2 + 1));
        assert!(d.x_support()[1..].iter().all(|&x| h.tower().in_base(x)));
        assert!(EvaluationSet::new(&h, EvalSpec::Multiplicative { order: 2, cosets: 3 }).is_err());
    }

    #[test]
    fn rejects_duplicates_and_non_splitting() {
        let c = CurveModel::new(2, 3).unwrap();
        assert!(matches!(
            EvaluationSet::new(&c, EvalSpec::Points(vec![Elem(1), Elem(1)])),
            Err(Error::DuplicatePoint(1))
        ));
        let c = CurveModel::new(5, 3).unwrap();
        let bad = c.field().elements().find(|&x| !c.splits(x)).unwrap();
        assert!(matches!(
            EvaluationSet::new(&c, EvalSpec::Points(vec![bad])),
            Err(Error::NotSplitting(_))
        ));
    }

    #[test]
    fn ordering_is_reproducible() {
        let h = CurveModel::new(4, 5).unwrap();
        let a = EvaluationSet::new(&h, EvalSpec::ComplementOfSubfield).unwrap();
        let b = EvaluationSet::new(&h, EvalSpec::ComplementOfSubfield).unwrap();
        assert_eq!(a.places(), b.places());
    }
}
