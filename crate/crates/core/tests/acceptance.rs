//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check here is exact equality over a finite field or over the
//! integers, so the only pinned tolerances are the wall-clock limits below.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use agcodes::analysis::{quantum_params, weight_distribution, DEFAULT_BUDGET};
use agcodes::curve::{CurveModel, EvalSpec, EvaluationSet};
use agcodes::families::{build_mds_family, coset_eval_set, subspace_h, Family, MdsEvalData};
use agcodes::residue::{residues, DifferentialSpec};
use agcodes::rrbasis::{gaps, generator_matrix, monomial_basis};
use agcodes::twist::{apply_twist, degree_window, solve_twist, TwistMode};
use agcodes::{Elem, FieldCtx, GramKind, MatrixFq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_LEMMA_M: Duration = Duration::from_secs(1);
const LIMIT_CENSUS: Duration = Duration::from_secs(5);
const LIMIT_PAPER_SCALE: Duration = Duration::from_secs(60);
const LIMIT_SELF_DUAL: Duration = Duration::from_secs(10);
const LIMIT_T5: Duration = Duration::from_secs(1);
const LIMIT_MDS: Duration = Duration::from_secs(5);
const LIMIT_TWIST: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t <= limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn prime_power(q: u64) -> (u64, u32) {
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut e = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    assert_eq!(x, 1, "{q} is not a prime power");
    (p, e)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn min_weight(dist: &[u64]) -> Option<usize> {
    dist.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w)
}

fn lemma_m() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for q in [4u64, 5, 7, 8, 9, 16, 25, 27] {
        let (p, e) = prime_power(q);
        let f = FieldCtx::new(p, e).map_err(|e| e.to_string())?;
        for m in divisors(q - 1) {
            let alpha = f.pow(f.generator(), (q - 1) / m);
            for i in 1..=m {
                let ai = f.pow(alpha, i);
                let mut product = Elem::ONE;
                for j in (1..=m).filter(|&j| j != i) {
                    product = f.mul(product, f.sub(ai, f.pow(alpha, j)));
                }
                let formula = f.mul(f.from_int(m as i64), f.inv(ai));
                check(product == formula, format!("q={q} m={m} i={i}: {product} != {formula}"))?;
                cases += 1;
            }
        }
    }
    within(start, LIMIT_LEMMA_M)?;
    Ok(format!("{cases} cases"))
}

const CURVE_QS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn curve_models() -> Vec<Arc<CurveModel>> {
    let mut out = Vec::new();
    for q in CURVE_QS {
        for m in divisors(q as u64 + 1).into_iter().filter(|&m| m > 1) {
            out.push(CurveModel::new(q, m as u32).unwrap());
        }
    }
    out
}

fn census() -> Outcome {
    let start = Instant::now();
    let models = curve_models();
    for c in &models {
        let (q, g) = (c.q() as u64, c.genus() as u64);
        let expected = q * q + 1 + 2 * g * q;
        // brute force over GF(q²)², plus the place at infinity
        let f = c.field();
        let mut count = 1u64;
        for x in f.elements() {
            let rhs = f.pow(x, c.m() as u64);
            count += f.elements().filter(|&y| f.add(f.pow(y, q), y) == rhs).count() as u64;
        }
        check(count == expected, format!("q={q} m={}: brute force {count} != {expected}", c.m()))?;
        check(c.census() == expected, format!("q={q} m={}: census {} != {expected}", c.m(), c.census()))?;
    }
    within(start, LIMIT_CENSUS)?;
    Ok(format!("{} curves", models.len()))
}

fn riemann_roch() -> Outcome {
    let mut checked = 0;
    for c in curve_models() {
        let (q, m, g) = (c.q() as u64, c.m() as u64, c.genus() as i64);
        let lo = (2 * g - 1).max(0) as u64;
        for r in lo..=(4 * g + 10) as u64 {
            let l = monomial_basis(&c, r).len() as i64;
            check(l == r as i64 + 1 - g, format!("q={q} m={m} r={r}: l = {l}, expected {}", r as i64 + 1 - g))?;
            checked += 1;
        }
        // gaps of ⟨q, m⟩, computed independently
        let representable = |n: u64| (0..=n / q).any(|a| (n - a * q) % m == 0);
        let oracle: Vec<u64> = (1..(2 * g as u64).max(1)).filter(|&n| !representable(n)).collect();
        let got = gaps(&c);
        check(got.len() as i64 == g, format!("q={q} m={m}: {} gaps, genus {g}", got.len()))?;
        check(got == oracle, format!("q={q} m={m}: gaps {got:?} != {oracle:?}"))?;
    }
    Ok(format!("{checked} (curve, r) pairs"))
}

fn paper_scale() -> Outcome {
    let small = Family::HermAs { q: 8, m: 3, r: 20 }.build().map_err(|e| e.to_string())?;
    let g = &small.generator;
    check((g.rank(), g.cols()) == (14, 176), format!("[{}, {}]", g.cols(), g.rank()))?;
    check(g.gram(GramKind::Hermitian).unwrap().is_zero(), "HermAS(8,3,20) hermitian gram nonzero")?;
    let start = Instant::now();
    let big = Family::HermAs { q: 27, m: 7, r: 181 }.build().map_err(|e| e.to_string())?;
    let g = &big.generator;
    check((g.rank(), g.cols()) == (104, 4941), format!("[{}, {}]", g.cols(), g.rank()))?;
    check(g.gram(GramKind::Hermitian).unwrap().is_zero(), "HermAS(27,7,181) hermitian gram nonzero")?;
    let t = start.elapsed();
    within(start, LIMIT_PAPER_SCALE)?;
    Ok(format!("[176,14] and [4941,104], larger in {t:.2?}"))
}

fn quantum_strings() -> Outcome {
    let mut got = Vec::new();
    for (fam, expected) in [
        (Family::HermAs { q: 8, m: 3, r: 20 }, "[[176,148,>=8]]_8"),
        (Family::HermAs { q: 27, m: 7, r: 181 }, "[[4941,4733,>=27]]_27"),
    ] {
        let code = fam.build().map_err(|e| e.to_string())?;
        let rec = quantum_params(&code, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        check(rec.to_string() == expected, format!("{rec} != {expected}"))?;
        got.push(rec.to_string());
    }
    Ok(got.join(" "))
}

fn self_dual_checks(g: &MatrixFq, n: usize) -> Result<(), String> {
    check(g.gram(GramKind::Euclidean).unwrap().is_zero(), "euclidean gram nonzero")?;
    check(g.rank() * 2 == n, format!("rank {} for n = {n}", g.rank()))?;
    check(g.kernel().row_space_eq(g).unwrap(), "dual row space differs")
}

fn euclidean_self_dual() -> Outcome {
    let start = Instant::now();
    let small = Family::EuclAs { q: 2, m: 3, r: 4 }.build().map_err(|e| e.to_string())?;
    check(small.n() == 8, format!("n = {}", small.n()))?;
    self_dual_checks(&small.generator, 8)?;
    let dist = weight_distribution(&small.generator, 256).ok_or("4^4 enumeration refused")?;
    check(dist.iter().sum::<u64>() == 256, "not 256 codewords")?;
    let d = min_weight(&dist).ok_or("no nonzero codeword")?;
    check(d >= 4, format!("d = {d} < 4"))?;
    let sub = Family::EuclSubspace { q: 4, dim: 3, r: 21 }.build().map_err(|e| e.to_string())?;
    check(sub.n() == 32, format!("n = {}", sub.n()))?;
    self_dual_checks(&sub.generator, 32)?;
    within(start, LIMIT_SELF_DUAL)?;
    Ok(format!("[8,4,{d}]_4 and [32,16]_16 self-dual"))
}

fn herm_add() -> Outcome {
    let start = Instant::now();
    let q = 3i64;
    let code = Family::HermAdd { q: 3, r: 5 }.build().map_err(|e| e.to_string())?;
    let g = &code.generator;
    check((g.cols(), g.rank()) == (18, 3), format!("[{}, {}]", g.cols(), g.rank()))?;
    check(g.gram(GramKind::Hermitian).unwrap().is_zero(), "hermitian gram nonzero")?;
    let dist = weight_distribution(g, 729).ok_or("9^3 enumeration refused")?;
    let d = min_weight(&dist).ok_or("no nonzero codeword")? as i64;
    check(d >= 13, format!("d = {d} < 13"))?;
    check(d >= q * q * q - 2 * q * q + q - 1, format!("d = {d} < 11"))?;
    let nq = 18 - 2 * 3;
    check(nq == q * q * q - 2 * q * q + q, format!("n - 2k = {nq}"))?;
    within(start, LIMIT_T5)?;
    Ok(format!(
        "[18,3,{d}]_9, n-2k = {nq} (the stated q^3-2q^2+q+4 = {} is not reproduced)",
        q * q * q - 2 * q * q + q + 4
    ))
}

fn mds() -> Outcome {
    let start = Instant::now();
    let grs = Family::Grs { p: 2, e: 3, points: None }.build().map_err(|e| e.to_string())?;
    let g = &grs.generator;
    check((g.cols(), g.rank()) == (8, 4), format!("[{}, {}]", g.cols(), g.rank()))?;
    check(g.gram(GramKind::Euclidean).unwrap().is_zero(), "GRS gram nonzero")?;
    let dist = weight_distribution(g, 1 << 12).ok_or("8^4 enumeration refused")?;
    let d = min_weight(&dist).ok_or("no nonzero codeword")?;
    check(d == 5, format!("d = {d}, expected 5"))?;

    // a 4-subset of GF(9) whose Δ-ratios are not all squares
    let f = Arc::new(FieldCtx::new(3, 2).unwrap());
    let sq = |a: Elem| f.pow(a, 4) == Elem::ONE;
    let elems: Vec<Elem> = f.elements().collect();
    let mut found = None;
    'search: for a in 0..9 {
        for b in a + 1..9 {
            for c in b + 1..9 {
                for d in c + 1..9 {
                    let pts = vec![elems[a], elems[b], elems[c], elems[d]];
                    let deltas: Vec<Elem> = pts
                        .iter()
                        .map(|&x| pts.iter().filter(|&&y| y != x).fold(Elem::ONE, |acc, &y| f.mul(acc, f.sub(x, y))))
                        .collect();
                    if !deltas.iter().all(|&dl| sq(f.div(deltas[0], dl))) {
                        found = Some(pts);
                        break 'search;
                    }
                }
            }
        }
    }
    let pts = found.ok_or("every 4-subset of GF(9) satisfies the class condition")?;
    let data = MdsEvalData::new(f.clone(), pts.clone(), false).map_err(|e| e.to_string())?;
    let got = build_mds_family(&data).map_err(|e| e.to_string())?;
    check(got.is_none(), format!("A = {pts:?} produced a code"))?;
    within(start, LIMIT_MDS)?;
    Ok(format!("[8,4,5]_8 MDS; A = {:?} absent", pts.iter().map(|a| a.0).collect::<Vec<_>>()))
}

fn twist_invariance() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let curves: Vec<Arc<CurveModel>> = [2u32, 3, 4]
        .iter()
        .flat_map(|&q| divisors(q as u64 + 1).into_iter().filter(|&m| m > 1).map(move |m| (q, m as u32)))
        .map(|(q, m)| CurveModel::new(q, m).unwrap())
        .collect();
    let mut done = 0;
    while done < 50 {
        let c = &curves[rng.gen_range(0..curves.len())];
        let mode = if rng.gen_bool(0.5) { TwistMode::Hermitian } else { TwistMode::Euclidean };
        let d = EvaluationSet::new(c, EvalSpec::Full).unwrap();
        let w = degree_window(c, d.n(), mode);
        let r = rng.gen_range(0..=w.r_max as u64);
        let qq = c.field().order() as u64;
        let l = monomial_basis(c, r).len() as u32;
        if qq.checked_pow(l).is_none_or(|t| t > 1 << 16) {
            continue;
        }
        let f = c.field();
        let res = residues(&DifferentialSpec::for_set(f.neg(Elem::ONE), &d).unwrap(), &d).unwrap();
        let tv = solve_twist(c.tower(), &res, mode).map_err(|e| e.to_string())?;
        let plain = generator_matrix(c, r, &d).unwrap();
        let twisted = apply_twist(&plain, &tv).unwrap();
        let label = format!("q={} m={} r={r} {mode:?}", c.q(), c.m());
        check(plain.rank() == twisted.rank(), format!("{label}: rank changed"))?;
        let a = weight_distribution(&plain, 1 << 16).unwrap();
        let b = weight_distribution(&twisted, 1 << 16).unwrap();
        check(a == b, format!("{label}: weight enumerators differ"))?;
        check(twisted.gram(mode.gram_kind()).unwrap().is_zero(), format!("{label}: twisted gram nonzero"))?;
        done += 1;
    }
    within(start, LIMIT_TWIST)?;
    Ok(format!("{done} instances"))
}

fn delta_propagation() -> Outcome {
    // p = 3, s = l = 1, t = 1: H = GF(3), A = {1, 2}, α = g over GF(9)
    let f = FieldCtx::new(3, 2).unwrap();
    let alpha = f.generator();
    let a = [Elem(1), Elem(2)];
    let t = a.len() as u64 / 2;
    let b = coset_eval_set(&f, 1, 1, &a, alpha, true).map_err(|e| e.to_string())?;
    let h = subspace_h(&f, 1, 1).map_err(|e| e.to_string())?;
    let delta = |set: &[Elem], x: Elem| set.iter().filter(|&&y| y != x).fold(Elem::ONE, |acc, &y| f.mul(acc, f.sub(x, y)));
    let f_h = h.iter().fold(Elem::ONE, |acc, &x| f.mul(acc, f.sub(alpha, x)));
    let mut a_ext = vec![Elem::ZERO];
    a_ext.extend_from_slice(&a);
    let (mut agree, mut unsigned_agree) = (0, 0);
    for (i, &point) in b.iter().enumerate() {
        let ak = a_ext[i / h.len()];
        let direct = delta(&b, point);
        let unsigned = f.mul(f.mul(delta(&h, Elem::ZERO), delta(&a_ext, ak)), f.pow(f_h, 2 * t));
        let stated = f.neg(unsigned);
        agree += (direct == stated) as usize;
        unsigned_agree += (direct == unsigned) as usize;
    }
    let n = b.len();
    check(
        agree == n,
        format!("stated closed form matches {agree}/{n} points; without the leading minus sign {unsigned_agree}/{n}"),
    )?;
    Ok(format!("{n}/{n} points"))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_agcodes");
    let run = |dir: &Path| {
        Command::new(bin)
            .current_dir(dir)
            .args(["construct", "--family", "herm-as", "--q", "8", "--m", "3", "--r", "20", "--out", "code.mtx"])
            .output()
            .map_err(|e| e.to_string())
    };
    let d1 = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d2 = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (o1, o2) = (run(d1.path())?, run(d2.path())?);
    check(o1.status.success() && o2.status.success(), "construct failed")?;
    let m1 = std::fs::read(d1.path().join("code.mtx")).map_err(|e| e.to_string())?;
    let m2 = std::fs::read(d2.path().join("code.mtx")).map_err(|e| e.to_string())?;
    check(m1 == m2, "matrix files differ")?;
    check(o1.stdout == o2.stdout, "descriptors differ")?;
    Ok(format!("{} matrix bytes, {} descriptor bytes", m1.len(), o1.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("lemma-m identity", lemma_m),
        ("maximal-curve census", census),
        ("riemann-roch dimension and gaps", riemann_roch),
        ("hermitian self-orthogonality at scale", paper_scale),
        ("quantum parameters", quantum_strings),
        ("euclidean self-duality", euclidean_self_dual),
        ("complement-of-subfield instance", herm_add),
        ("grs/egrs criteria", mds),
        ("twist invariance", twist_invariance),
        ("delta propagation", delta_propagation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({t:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
