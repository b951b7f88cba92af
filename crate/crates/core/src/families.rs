//! Constructors for the self-orthogonal code families.
//!
//! Every AG family runs the same pipeline: pick an evaluation set on a curve,
//! evaluate `L(r·Q∞)`, compute the residues of `c·dx/∏(x - a)`, solve the
//! twist and scale the columns. The result is checked to be orthogonal
//! before it is returned.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveModel, EvalSpec, EvaluationSet};
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx};
use crate::matfq::MatrixFq;
use crate::residue::{residues, DifferentialSpec};
use crate::rrbasis::generator_matrix;
use crate::twist::{apply_twist, degree_window, solve_twist, DegreeWindow, TwistMode, TwistVector};

/// A family together with its parameters. The serialized form doubles as
/// the CLI vocabulary and the catalog key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Full evaluation set on `y^q + y = x^m`, Hermitian twist.
    HermAs { q: u32, m: u32, r: u64 },
    /// Hermitian curve, `{0}` plus `lambda` cosets of the order-`s` subgroup.
    HermMult { q: u32, s: u32, lambda: u32, r: u64 },
    /// Hermitian curve, x ranging over GF(q²) \ GF(q).
    HermAdd { q: u32, r: u64 },
    /// Full evaluation set on `y^q + y = x^m`, Euclidean twist.
    EuclAs { q: u32, m: u32, r: u64 },
    /// Hermitian curve, x in `{0} ∪ μ_s`.
    EuclUnity { q: u32, s: u32, r: u64 },
    /// Hermitian curve, x in GF(q²) \ μ_k.
    EuclUnityComp { q: u32, k: u32, r: u64 },
    /// Hermitian curve, x in the GF(p)-span of `1, g, …, g^(dim-1)`.
    EuclSubspace { q: u32, dim: u32, r: u64 },
    /// Hermitian curve, x in `H ∪ ⋃(aα + H)` (the EGRS-based lift).
    CosetEgrs { q: u32, sdeg: u32, l: u32, a: Vec<Elem>, alpha: Elem, r: u64 },
    /// Hermitian curve, x in `⋃(aα + H)` (the GRS-based lift).
    CosetGrs { q: u32, sdeg: u32, l: u32, a: Vec<Elem>, alpha: Elem, r: u64 },
    /// Self-dual GRS code over GF(p^e); all of the field when `points` is absent.
    Grs {
        p: u32,
        e: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<Vec<Elem>>,
    },
    /// Self-dual extended GRS code over GF(p^e).
    Egrs {
        p: u32,
        e: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<Vec<Elem>>,
    },
}

pub const FAMILY_IDS: &[&str] = &[
    "herm-as",
    "herm-mult",
    "herm-add",
    "eucl-as",
    "eucl-unity",
    "eucl-unity-comp",
    "eucl-subspace",
    "coset-egrs",
    "coset-grs",
    "grs",
    "egrs",
];

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::HermAs { .. } => "herm-as",
            Family::HermMult { .. } => "herm-mult",
            Family::HermAdd { .. } => "herm-add",
            Family::EuclAs { .. } => "eucl-as",
            Family::EuclUnity { .. } => "eucl-unity",
            Family::EuclUnityComp { .. } => "eucl-unity-comp",
            Family::EuclSubspace { .. } => "eucl-subspace",
            Family::CosetEgrs { .. } => "coset-egrs",
            Family::CosetGrs { .. } => "coset-grs",
            Family::Grs { .. } => "grs",
            Family::Egrs { .. } => "egrs",
        }
    }

    /// The orthogonality the family is built for.
    pub fn mode(&self) -> TwistMode {
        match self {
            Family::HermAs { .. } | Family::HermMult { .. } | Family::HermAdd { .. } => TwistMode::Hermitian,
            _ => TwistMode::Euclidean,
        }
    }

    /// The base order q of the curve families (None for GRS/EGRS).
    pub fn q(&self) -> Option<u32> {
        match *self {
            Family::HermAs { q, .. }
            | Family::HermMult { q, .. }
            | Family::HermAdd { q, .. }
            | Family::EuclAs { q, .. }
            | Family::EuclUnity { q, .. }
            | Family::EuclUnityComp { q, .. }
            | Family::EuclSubspace { q, .. }
            | Family::CosetEgrs { q, .. }
            | Family::CosetGrs { q, .. } => Some(q),
            Family::Grs { .. } | Family::Egrs { .. } => None,
        }
    }

    pub fn r(&self) -> Option<u64> {
        match *self {
            Family::HermAs { r, .. }
            | Family::HermMult { r, .. }
            | Family::HermAdd { r, .. }
            | Family::EuclAs { r, .. }
            | Family::EuclUnity { r, .. }
            | Family::EuclUnityComp { r, .. }
            | Family::EuclSubspace { r, .. }
            | Family::CosetEgrs { r, .. }
            | Family::CosetGrs { r, .. } => Some(r),
            Family::Grs { .. } | Family::Egrs { .. } => None,
        }
    }

    /// The same family with a different r; GRS/EGRS are returned unchanged.
    pub fn with_r(&self, new_r: u64) -> Family {
        let mut f = self.clone();
        match &mut f {
            Family::HermAs { r, .. }
            | Family::HermMult { r, .. }
            | Family::HermAdd { r, .. }
            | Family::EuclAs { r, .. }
            | Family::EuclUnity { r, .. }
            | Family::EuclUnityComp { r, .. }
            | Family::EuclSubspace { r, .. }
            | Family::CosetEgrs { r, .. }
            | Family::CosetGrs { r, .. } => *r = new_r,
            Family::Grs { .. } | Family::Egrs { .. } => {}
        }
        f
    }

    /// Family parameters without the `family` tag, for catalog keys and tables.
    pub fn params_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("family serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("family");
        }
        v
    }

    pub fn build(&self) -> Result<LinearCode> {
        build_family(self)
    }
}

/// Where a code came from: family, curve data, window, point order and twist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Family,
    pub mode: TwistMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<DegreeWindow>,
    /// x-coordinates (AG) or evaluation points (GRS/EGRS), in column order.
    pub x_support: Vec<Elem>,
    /// Column multipliers (the `v_i` for GRS/EGRS).
    pub twist: TwistVector,
}

#[derive(Clone, Debug)]
pub struct LinearCode {
    pub generator: MatrixFq,
    pub k: usize,
    pub designed_distance: Option<u64>,
    /// Lower bound on the distance of the dual: `r - 2g + 2` for AG codes, `k + 1` for MDS codes.
    pub dual_designed_distance: Option<u64>,
    pub provenance: Option<Provenance>,
}

impl LinearCode {
    /// A code read back from a bare generator matrix.
    pub fn from_matrix(generator: MatrixFq) -> Self {
        let k = generator.rank();
        LinearCode {
            generator,
            k,
            designed_distance: None,
            dual_designed_distance: None,
            provenance: None,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.generator.ctx()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }
}

fn window_error(family: &Family, r: u64, lo: i64, hi: i64) -> Error {
    Error::Window {
        family: family.id().to_string(),
        r: r as i64,
        lo,
        hi,
    }
}

/// Builds the code for `family`, failing with the violated precondition or
/// with `MixedClass` when the residues are not co-aligned.
pub fn build_family(family: &Family) -> Result<LinearCode> {
    match family {
        Family::Grs { p, e, points } | Family::Egrs { p, e, points } => {
            let ctx = Arc::new(FieldCtx::new(*p as u64, *e)?);
            let points = points.clone().unwrap_or_else(|| ctx.elements().collect());
            let extended = matches!(family, Family::Egrs { .. });
            let data = MdsEvalData::new(ctx, points, extended)?;
            let (code, failing) = mds_code(&data, family)?;
            code.ok_or(Error::MixedClass {
                mode: "euclidean",
                index: failing.unwrap_or(0),
            })
        }
        _ => build_ag(family),
    }
}

fn hermitian_curve(q: u32) -> Result<Arc<CurveModel>> {
    CurveModel::new(q, q + 1)
}

/// Length, genus and admissible r range of an AG family, without evaluating anything.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub n: usize,
    pub m: u32,
    pub genus: u32,
    pub lo: i64,
    pub hi: i64,
    pub window: DegreeWindow,
}

struct Setup {
    model: Arc<CurveModel>,
    set: EvaluationSet,
    c: Elem,
    layout: Layout,
}

fn setup_ag(family: &Family) -> Result<Setup> {
    let q = family.q().expect("AG family");
    let minus_one = |c: &CurveModel| c.field().neg(Elem::ONE);
    // (curve, evaluation set, residue scalar, lower end of the r window)
    let (model, spec, c, lo): (Arc<CurveModel>, EvalSpec, Elem, i64) = match family {
        Family::HermAs { m, .. } | Family::EuclAs { m, .. } => {
            let model = CurveModel::new(q, *m)?;
            let lo = 2 * model.genus() as i64 - 1;
            let c = minus_one(&model);
            (model, EvalSpec::Full, c, lo)
        }
        Family::HermMult { s, lambda, .. } => {
            let model = hermitian_curve(q)?;
            if *s == 0 || *s > q - 1 {
                return Err(Error::InvalidParameter(format!("s = {s} must be in 1..=q-1 = {}", q - 1)));
            }
            (model, EvalSpec::Multiplicative { order: *s, cosets: *lambda }, Elem::ONE, 0)
        }
        Family::HermAdd { .. } => (hermitian_curve(q)?, EvalSpec::ComplementOfSubfield, Elem::ONE, 0),
        Family::EuclUnity { s, .. } => {
            let model = hermitian_curve(q)?;
            let c = minus_one(&model);
            (model, EvalSpec::Unity { order: *s }, c, (q * q - q) as i64 - 1)
        }
        Family::EuclUnityComp { k, .. } => {
            if *k == 0 || k % (q + 1) != 0 {
                return Err(Error::Divisibility(format!("q + 1 = {} must divide k = {k}", q + 1)));
            }
            let model = hermitian_curve(q)?;
            (model, EvalSpec::ComplementOfUnity { order: *k }, Elem::ONE, (q * q - q) as i64 - 1)
        }
        Family::EuclSubspace { dim, .. } => {
            let model = hermitian_curve(q)?;
            (model, EvalSpec::Subspace { dim: *dim }, Elem::ONE, (q * q - q) as i64 - 1)
        }
        Family::CosetEgrs { sdeg, l, a, alpha, .. } | Family::CosetGrs { sdeg, l, a, alpha, .. } => {
            let model = hermitian_curve(q)?;
            let with_base = matches!(family, Family::CosetEgrs { .. });
            let points = coset_eval_set(model.field(), *sdeg, *l, a, *alpha, with_base)?;
            let lo = 2 * model.genus() as i64 - 1;
            (model, EvalSpec::Points(points), Elem::ONE, lo)
        }
        Family::Grs { .. } | Family::Egrs { .. } => unreachable!("no curve for GRS/EGRS"),
    };
    let set = EvaluationSet::new(&model, spec)?;
    let n = set.n();
    let window = degree_window(&model, n, family.mode());
    let hi = window.r_max.min(n as i64 - 1);
    let layout = Layout { n, m: model.m(), genus: model.genus(), lo, hi, window };
    Ok(Setup { model, set, c, layout })
}

impl Family {
    /// Length and r window of an AG family; `None` for GRS/EGRS.
    pub fn layout(&self) -> Result<Option<Layout>> {
        match self {
            Family::Grs { .. } | Family::Egrs { .. } => Ok(None),
            _ => Ok(Some(setup_ag(self)?.layout)),
        }
    }
}

fn build_ag(family: &Family) -> Result<LinearCode> {
    let r = family.r().expect("AG family");
    let Setup { model, set: d, c, layout } = setup_ag(family)?;
    let (lo, hi) = (layout.lo, layout.hi);
    if (r as i64) < lo || r as i64 > hi {
        return Err(window_error(family, r, lo, hi));
    }
    let mode = family.mode();
    let n = layout.n;
    let res = residues(&DifferentialSpec::for_set(c, &d)?, &d)?;
    let twist = solve_twist(model.tower(), &res, mode)?;
    let generator = apply_twist(&generator_matrix(&model, r, &d)?, &twist)?;
    if !generator.gram(mode.gram_kind())?.is_zero() {
        return Err(Error::Internal(format!("{} r = {r}: gram matrix is not zero", family.id())));
    }
    let k = generator.rank();
    let g = model.genus() as u64;
    Ok(LinearCode {
        k,
        designed_distance: Some(n as u64 - r),
        dual_designed_distance: (r + 2 > 2 * g).then(|| r + 2 - 2 * g),
        provenance: Some(Provenance {
            family: family.clone(),
            mode,
            m: Some(model.m()),
            genus: Some(model.genus()),
            window: Some(DegreeWindow { r_min: lo, r_max: hi, ..layout.window }),
            x_support: d.x_support().to_vec(),
            twist,
        }),
        generator,
    })
}

/// Evaluation points of a (possibly extended) generalized Reed–Solomon code.
#[derive(Clone, Debug)]
pub struct MdsEvalData {
    pub ctx: Arc<FieldCtx>,
    pub points: Vec<Elem>,
    pub extended: bool,
}

impl MdsEvalData {
    pub fn new(ctx: Arc<FieldCtx>, points: Vec<Elem>, extended: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("no evaluation points".into()));
        }
        let mut seen = HashSet::new();
        for &a in &points {
            if !ctx.contains(a) {
                return Err(Error::InvalidParameter(format!("{a} is not a field element")));
            }
            if !seen.insert(a) {
                return Err(Error::DuplicatePoint(a.0));
            }
        }
        let parity_ok = if extended { points.len() % 2 == 1 } else { points.len() % 2 == 0 };
        if !parity_ok {
            return Err(Error::InvalidParameter(format!(
                "{} needs {} |A|, got {}",
                if extended { "EGRS" } else { "GRS" },
                if extended { "odd" } else { "even" },
                points.len()
            )));
        }
        Ok(MdsEvalData { ctx, points, extended })
    }

    /// `Δ_A(α_i) = ∏_{j≠i}(α_i - α_j)`.
    pub fn deltas(&self) -> Vec<Elem> {
        delta(&self.ctx, &self.points)
    }
}

pub fn delta(f: &FieldCtx, points: &[Elem]) -> Vec<Elem> {
    points
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Elem::ONE, |acc, (_, &b)| f.mul(acc, f.sub(a, b)))
        })
        .collect()
}

/// The self-dual GRS (even |A|) or EGRS (odd |A|, one extra coordinate)
/// code on `data`, or `None` when the square-class condition fails.
pub fn build_mds_family(data: &MdsEvalData) -> Result<Option<LinearCode>> {
    let family = if data.extended {
        Family::Egrs { p: data.ctx.characteristic(), e: data.ctx.degree(), points: Some(data.points.clone()) }
    } else {
        Family::Grs { p: data.ctx.characteristic(), e: data.ctx.degree(), points: Some(data.points.clone()) }
    };
    Ok(mds_code(data, &family)?.0)
}

fn mds_code(data: &MdsEvalData, family: &Family) -> Result<(Option<LinearCode>, Option<usize>)> {
    let f = &data.ctx;
    let deltas = data.deltas();
    // v_i² = Δ_1/Δ_i (GRS) or -1/Δ_i (EGRS)
    let targets: Vec<Elem> = if data.extended {
        deltas.iter().map(|&d| f.neg(f.inv(d))).collect()
    } else {
        deltas.iter().map(|&d| f.div(deltas[0], d)).collect()
    };
    let mut v = Vec::with_capacity(targets.len());
    for (i, &t) in targets.iter().enumerate() {
        match f.solve_power(t, 2) {
            Some(x) => v.push(x),
            None => return Ok((None, Some(i))),
        }
    }
    let len = data.points.len();
    let (n, k) = if data.extended { (len + 1, (len + 1) / 2) } else { (len, len / 2) };
    let mut rows = Vec::with_capacity(k);
    for j in 0..k {
        let mut row: Vec<Elem> = data
            .points
            .iter()
            .zip(&v)
            .map(|(&a, &vi)| f.mul(vi, f.pow(a, j as u64)))
            .collect();
        if data.extended {
            row.push(if j == k - 1 { Elem::ONE } else { Elem::ZERO });
        }
        rows.push(row);
    }
    let generator = MatrixFq::from_rows(f.clone(), n, &rows)?;
    if !generator.gram(crate::matfq::GramKind::Euclidean)?.is_zero() {
        return Err(Error::Internal(format!("{}: gram matrix is not zero", family.id())));
    }
    let rank = generator.rank();
    let mut b = v;
    if data.extended {
        b.push(Elem::ONE);
    }
    Ok((
        Some(LinearCode {
            k: rank,
            designed_distance: Some((n - k + 1) as u64),
            dual_designed_distance: Some(k as u64 + 1),
            provenance: Some(Provenance {
                family: family.clone(),
                mode: TwistMode::Euclidean,
                m: None,
                genus: None,
                window: None,
                x_support: data.points.clone(),
                twist: TwistVector { mode: TwistMode::Euclidean, h: Elem::ONE, b },
            }),
            generator,
        }),
        None,
    ))
}

/// Elements of the subfield GF(p^s) of `f`, ascending.
pub fn subfield_elements(f: &FieldCtx, s: u32) -> Result<Vec<Elem>> {
    if s == 0 || f.degree() % s != 0 {
        return Err(Error::Divisibility(format!("s = {s} must divide the extension degree {}", f.degree())));
    }
    Ok(f.elements().filter(|&a| f.frobenius(a, s) == a).collect())
}

/// The GF(p^s)-span of `1, g, …, g^(l-1)` in `f`, ascending.
pub fn subspace_h(f: &FieldCtx, s: u32, l: u32) -> Result<Vec<Elem>> {
    let sub = subfield_elements(f, s)?;
    let mut span = vec![Elem::ZERO];
    for i in 0..l {
        let gi = f.pow(f.generator(), i as u64);
        span = span
            .iter()
            .flat_map(|&h| sub.iter().map(move |&c| (h, c)))
            .map(|(h, c)| f.add(h, f.mul(c, gi)))
            .collect();
    }
    let expected = span.len();
    span.sort_unstable();
    span.dedup();
    if span.len() != expected {
        return Err(Error::InvalidParameter(format!(
            "1, g, …, g^{} are dependent over GF(p^{s})",
            l.saturating_sub(1)
        )));
    }
    Ok(span)
}

/// `B = H ∪ ⋃_{a∈A}(aα + H)` (or without the `H` block). `A` must have even
/// size 2t ≤ p^s and lie in GF(p^s); the blocks must be disjoint.
pub fn coset_eval_set(
    f: &FieldCtx,
    s: u32,
    l: u32,
    a: &[Elem],
    alpha: Elem,
    with_base: bool,
) -> Result<Vec<Elem>> {
    let sub = subfield_elements(f, s)?;
    if a.len() % 2 != 0 {
        return Err(Error::InvalidParameter(format!("|A| = {} must be even", a.len())));
    }
    if a.len() > sub.len() {
        return Err(Error::InvalidParameter(format!("|A| = {} exceeds p^s = {}", a.len(), sub.len())));
    }
    if let Some(bad) = a.iter().find(|x| !sub.contains(x)) {
        return Err(Error::InvalidParameter(format!("{bad} is not in GF(p^{s})")));
    }
    if !f.contains(alpha) {
        return Err(Error::InvalidParameter(format!("{alpha} is not a field element")));
    }
    let h = subspace_h(f, s, l)?;
    let mut shifts = Vec::with_capacity(a.len() + 1);
    if with_base {
        shifts.push(Elem::ZERO);
    }
    shifts.extend(a.iter().map(|&ai| f.mul(ai, alpha)));
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(shifts.len() * h.len());
    for (block, &shift) in shifts.iter().enumerate() {
        let mut coset: Vec<Elem> = h.iter().map(|&x| f.add(shift, x)).collect();
        coset.sort_unstable();
        for &b in &coset {
            if !seen.insert(b) {
                return Err(Error::OverlappingCosets(format!("block {block} meets an earlier block at {b}")));
            }
        }
        points.extend(coset);
    }
    Ok(points)
}

/// One point of the Δ-propagation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaCheck {
    pub point: Elem,
    /// Index into the extended set `{0} ∪ A` of the block containing `point`.
    pub block: usize,
    pub direct: Elem,
    /// `-Δ_H(0)·Δ_A(a_k)·f_H(α)^(2t)`, the closed form as stated for the lift.
    pub stated: Elem,
    /// `Δ_H(0)·Δ_A(a_k)·f_H(α)^(2t)`, the same product without the sign.
    pub unsigned: Elem,
}

/// Compares `Δ_B(b)` computed directly with the closed forms, for
/// `B = ⋃_{a∈A'}(aα + H)` and `A' = {0} ∪ A` the EGRS point set.
pub fn delta_propagation(f: &FieldCtx, s: u32, l: u32, a: &[Elem], alpha: Elem) -> Result<Vec<DeltaCheck>> {
    let b = coset_eval_set(f, s, l, a, alpha, true)?;
    let h = subspace_h(f, s, l)?;
    let mut a_ext = vec![Elem::ZERO];
    a_ext.extend_from_slice(a);
    let direct = delta(f, &b);
    let delta_a = delta(f, &a_ext);
    let delta_h0 = delta(f, &h)[0];
    let f_h = h.iter().fold(Elem::ONE, |acc, &x| f.mul(acc, f.sub(alpha, x)));
    let f_h_pow = f.pow(f_h, a.len() as u64);
    Ok(b.iter()
        .zip(direct)
        .enumerate()
        .map(|(i, (&point, direct))| {
            let block = i / h.len();
            let unsigned = f.mul(f.mul(delta_h0, delta_a[block]), f_h_pow);
            DeltaCheck {
                point,
                block,
                direct,
                stated: f.neg(unsigned),
                unsigned,
            }
        })
        .collect())
}
