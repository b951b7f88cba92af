use std::sync::Arc;

use agcodes::analysis::{certify, dual, weight_distribution};
use agcodes::families::{Family, LinearCode};
use agcodes::{Elem, FieldCtx, GramKind, MatrixFq};
use proptest::prelude::*;

fn field(idx: usize) -> Arc<FieldCtx> {
    let (p, e) = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 4), (5, 2)][idx];
    Arc::new(FieldCtx::new(p, e).unwrap())
}

fn matrix(f: &Arc<FieldCtx>, rows: usize, cols: usize, seed: &[u32]) -> MatrixFq {
    let q = f.order() as u32;
    let data = (0..rows * cols).map(|i| Elem(seed[i % seed.len()].wrapping_mul(2654435761).wrapping_add(i as u32) % q)).collect();
    MatrixFq::from_vec(f.clone(), rows, cols, data).unwrap()
}

proptest! {
    #[test]
    fn field_axioms(idx in 0usize..8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(idx);
        let q = f.order() as u32;
        let (a, b, c) = (Elem(a % q), Elem(b % q), Elem(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
            prop_assert_eq!(f.pow(a, f.order() as u64 - 1), Elem::ONE);
        }
        // Frobenius is additive
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
    }

    #[test]
    fn rank_nullity(idx in 0usize..8, rows in 1usize..6, cols in 1usize..9, seed in prop::collection::vec(any::<u32>(), 1..8)) {
        let f = field(idx);
        let m = matrix(&f, rows, cols, &seed);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.rows(), cols);
        prop_assert!(m.gram_with(&k, GramKind::Euclidean).unwrap().is_zero());
    }

    #[test]
    fn text_round_trip(idx in 0usize..8, rows in 0usize..5, cols in 1usize..7, seed in prop::collection::vec(any::<u32>(), 1..8)) {
        let f = field(idx);
        let m = matrix(&f, rows, cols, &seed);
        prop_assert_eq!(MatrixFq::from_text(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn macwilliams_total(idx in 0usize..4, rows in 1usize..4, cols in 2usize..7, seed in prop::collection::vec(any::<u32>(), 1..8)) {
        // |C|·|C^⊥| = q^n
        let f = field(idx);
        let g = matrix(&f, rows, cols, &seed);
        let code = LinearCode::from_matrix(g);
        let d = dual(&code, GramKind::Euclidean).unwrap();
        let a: u64 = weight_distribution(&code.generator, 1 << 20).unwrap().iter().sum();
        let b: u64 = weight_distribution(&d.generator, 1 << 20).unwrap().iter().sum();
        prop_assert_eq!(a * b, (f.order() as u64).pow(cols as u32));
    }
}

#[test]
fn every_family_certifies_its_own_mode() {
    for fam in [
        Family::HermAs { q: 3, m: 4, r: 5 },
        Family::HermMult { q: 5, s: 2, lambda: 2, r: 3 },
        Family::HermAdd { q: 3, r: 5 },
        Family::EuclAs { q: 3, m: 2, r: 4 },
        Family::EuclUnity { q: 3, s: 8, r: 11 },
        Family::EuclUnityComp { q: 3, k: 4, r: 9 },
        Family::EuclSubspace { q: 3, dim: 2, r: 11 },
        Family::CosetEgrs { q: 3, sdeg: 1, l: 1, a: vec![Elem(1), Elem(2)], alpha: Elem(3), r: 15 },
        Family::CosetGrs { q: 3, sdeg: 1, l: 1, a: vec![Elem(1), Elem(2)], alpha: Elem(3), r: 10 },
        Family::Egrs { p: 3, e: 2, points: Some(vec![Elem(0), Elem(1), Elem(2)]) },
    ] {
        let code = fam.build().unwrap_or_else(|e| panic!("{fam:?}: {e}"));
        let cert = certify(&code, 1 << 12).unwrap();
        match fam.mode() {
            agcodes::twist::TwistMode::Hermitian => assert!(cert.hermitian_so, "{fam:?}"),
            agcodes::twist::TwistMode::Euclidean => assert!(cert.euclidean_so, "{fam:?}"),
        }
        assert_eq!(cert.k as usize, code.k);
        if let Some(layout) = fam.layout().unwrap() {
            assert_eq!(layout.n, code.n(), "{fam:?}");
        }
    }
}

#[test]
fn builds_are_deterministic() {
    let a = Family::HermAs { q: 4, m: 5, r: 12 }.build().unwrap();
    let b = Family::HermAs { q: 4, m: 5, r: 12 }.build().unwrap();
    assert_eq!(a.generator.to_text(), b.generator.to_text());
}
