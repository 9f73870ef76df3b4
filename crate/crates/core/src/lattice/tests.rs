use super::*;
use crate::arith::{int, rat};
use crate::localfield::{is_square_local, local_contexts_default, quadratic_defect, Defect, Place};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

fn q() -> NumberField {
    NumberField::Rational
}

fn k5() -> NumberField {
    NumberField::imag_quad(-5).unwrap()
}

fn ctx(field: NumberField, p: u64) -> LocalContext {
    local_contexts_default(field, p).unwrap().remove(0)
}

fn hyperbolic_half() -> QuadLattice {
    QuadLattice::from_rationals(q(), &[&[(0, 1), (1, 2)], &[(1, 2), (0, 1)]]).unwrap()
}

#[test]
fn scale_and_norm_ideals() {
    let h = hyperbolic_half();
    assert_eq!(h.scale_ideal().scale, rat(1, 2));
    assert!(h.norm_ideal().is_unit_ideal());
    let d24 = QuadLattice::diag(q(), &[2, 4]).unwrap();
    assert_eq!(d24.scale_ideal().scale, int(2));
    assert_eq!(d24.norm_ideal().scale, int(2));
    assert!(QuadLattice::diag(q(), &[2, 3]).unwrap().norm_ideal().is_unit_ideal());
}

#[test]
fn rejects_bad_gram() {
    assert!(QuadLattice::diag(q(), &[1, 0]).is_err());
    let g = vec![vec![q().int(1), q().int(2)], vec![q().int(3), q().int(1)]];
    assert!(QuadLattice::new(q(), g).is_err());
}

#[test]
fn localize_examples() {
    let l = QuadLattice::diag(q(), &[1, 1, 1]).unwrap();
    let lv = l.localize(&ctx(q(), 5)).unwrap();
    assert_eq!(lv.gram, l.gram);
    let k = k5();
    let a = Ideal::from_generators(k, &[k.int(2), k.ints(1, 1)]).unwrap();
    let half = k.from_rational(rat(1, 2));
    let g = vec![vec![k.zero(), half.clone()], vec![half, k.zero()]];
    let m = QuadLattice::with_ideals(k, Some(vec![a.clone(), a.inverse()]), g).unwrap();
    for c in local_contexts_default(k, 3).unwrap() {
        let lv = m.localize(&c).unwrap();
        assert_eq!(lv.scale_exponent(), 0);
        assert!(lv.is_unimodular());
        assert!(is_square_local(&-lv.det(), &lv.ctx).unwrap());
    }
    let l = QuadLattice::diag(q(), &[1, 3, 9]).unwrap();
    assert_eq!(l.localize(&ctx(q(), 3)).unwrap().gram, l.gram);
}

#[test]
fn jordan_examples() {
    let l = QuadLattice::diag(q(), &[1, 3, 9]).unwrap();
    let lv = l.localize(&ctx(q(), 3)).unwrap();
    let s = jordan_split(&lv).unwrap();
    assert_eq!(s.scales(), vec![0, 1, 2]);
    assert_eq!(s.ranks(), vec![1, 1, 1]);
    assert!(s.verify(&lv));

    let lv = hyperbolic_half().localize(&ctx(q(), 2)).unwrap();
    let s = jordan_split(&lv).unwrap();
    assert_eq!((s.scales(), s.ranks(), s.norms()), (vec![-1], vec![2], vec![0]));

    let g = QuadLattice::from_rationals(
        q(),
        &[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (2, 1), (1, 1)], &[(0, 1), (1, 1), (2, 1)]],
    )
    .unwrap();
    let lv = g.localize(&ctx(q(), 2)).unwrap();
    let s = jordan_split(&lv).unwrap();
    assert_eq!((s.scales(), s.ranks()), (vec![0], vec![3]));
    assert!(lv.is_unimodular());
}

#[test]
fn refine_examples() {
    let lv = hyperbolic_half().localize(&ctx(q(), 2)).unwrap();
    let s = jordan_split(&lv).unwrap();
    let r = minimal_norm_refine(&s, &lv).unwrap();
    assert_eq!(r.summary(), s.summary());

    // A(1, 2) ⊥ <2>: the leading block has -det = -1 of defect (2)
    let l = QuadLattice::from_rationals(
        q(),
        &[&[(1, 1), (1, 1), (0, 1)], &[(1, 1), (2, 1), (0, 1)], &[(0, 1), (0, 1), (2, 1)]],
    )
    .unwrap();
    let c = ctx(q(), 2);
    let lv = l.localize(&c).unwrap();
    let s = jordan_split(&lv).unwrap();
    assert_eq!(s.ranks(), vec![2, 1]);
    let d0 = quadratic_defect(&-det(&s.components[0].gram), &c).unwrap();
    assert_eq!(d0, Defect::PiPower(1));
    let r = minimal_norm_refine(&s, &lv).unwrap();
    assert!(r.verify(&lv));
    assert_eq!(r.norms(), s.norms());
    let d1 = quadratic_defect(&-det(&r.components[0].gram), &c).unwrap();
    assert!(matches!(d1, Defect::Zero) || matches!(d1, Defect::PiPower(e) if e >= 2), "{d1:?}");

    let lv3 = QuadLattice::diag(q(), &[1, 3]).unwrap().localize(&ctx(q(), 3)).unwrap();
    let s3 = jordan_split(&lv3).unwrap();
    assert!(minimal_norm_refine(&s3, &lv3).is_err());
}

#[test]
fn weight_examples() {
    let c = ctx(q(), 2);
    for d in [[1, 1, 1], [1, 1, 3]] {
        let lv = QuadLattice::diag(q(), &d).unwrap().localize(&c).unwrap();
        assert_eq!(weight_and_norm_group(&lv).unwrap().0, 1);
    }
    let lv = QuadLattice::diag(q(), &[1, 4, 4]).unwrap().localize(&c).unwrap();
    assert!(weight_and_norm_group(&lv).is_err());
    // over the ramified prime of Q(sqrt -5) the values of <1,1,1> miss pi + p^2,
    // so the largest ideal in Q(L) + 2o is p^2
    let k = k5();
    let c = ctx(k, 2);
    let lv = QuadLattice::diag(k, &[1, 1, 1]).unwrap().localize(&c).unwrap();
    assert_eq!(weight_and_norm_group(&lv).unwrap(), (2, 2));
    let pi = c.pi.clone();
    let g =
        vec![vec![k.one(), k.zero(), k.zero()], vec![k.zero(), pi.clone(), k.one()], vec![k.zero(), k.one(), k.zero()]];
    let lv = QuadLattice::new(k, g).unwrap().localize(&c).unwrap();
    assert_eq!(weight_and_norm_group(&lv).unwrap(), (1, 0));
}

#[test]
fn isotropy_examples() {
    let f = |d: &[i64]| d.iter().map(|&x| q().int(x)).collect::<Vec<_>>();
    for p in [2, 3, 5, 7] {
        let pl = Place::Finite(ctx(q(), p));
        assert!(is_isotropic(&f(&[1, 1, -1]), &pl).unwrap());
    }
    assert!(is_isotropic(&f(&[1, 1, -1]), &Place::Real).unwrap());
    assert!(!is_isotropic(&f(&[1, 1, 1]), &Place::Finite(ctx(q(), 2))).unwrap());
    assert!(!is_isotropic(&f(&[1, 1, -77]), &Place::Finite(ctx(q(), 7))).unwrap());
    assert!(!is_isotropic(&f(&[1, 1, 1]), &Place::Real).unwrap());
    assert!(is_isotropic_global(q(), &f(&[1, 1, -2])).unwrap());
    assert!(!is_isotropic_global(q(), &f(&[1, 1, -3])).unwrap());
    // x^2+y^2+z^2+w^2 is anisotropic over Q_2 only
    assert!(!is_isotropic(&f(&[1, 1, 1, 1]), &Place::Finite(ctx(q(), 2))).unwrap());
    assert!(is_isotropic(&f(&[1, 1, 1, 1]), &Place::Finite(ctx(q(), 3))).unwrap());
    assert!(is_isotropic(&f(&[1, 1, 1, -1]), &Place::Finite(ctx(q(), 2))).unwrap());
}

/// Isotropy over Q_p by searching primitive zeros modulo p^K, after reducing
/// each coefficient to valuation 0 or 1.
fn isotropic_by_search(coeffs: &[i64; 3], p: i64) -> bool {
    let red = |mut c: i64| {
        while c % (p * p) == 0 {
            c /= p * p;
        }
        c
    };
    let (a, b, c) = (red(coeffs[0]), red(coeffs[1]), red(coeffs[2]));
    let kk = if p == 2 { 6 } else { 2 };
    let m = p.pow(kk);
    let mut unit_z = HashSet::new();
    let mut any_z = HashSet::new();
    for z in 0..m {
        let v = (c * z * z).rem_euclid(m);
        any_z.insert(v);
        if z % p != 0 {
            unit_z.insert(v);
        }
    }
    for x in 0..m {
        for y in 0..m {
            let need = (-(a * x * x + b * y * y)).rem_euclid(m);
            let prim = x % p != 0 || y % p != 0;
            if (prim && any_z.contains(&need)) || unit_z.contains(&need) {
                return true;
            }
        }
    }
    false
}

#[test]
fn isotropy_agrees_with_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut n = 0;
    while n < 200 {
        let mut d = [0i64; 3];
        for x in &mut d {
            *x = loop {
                let v = rng.gen_range(-20..=20);
                if v != 0 {
                    break v;
                }
            };
        }
        n += 1;
        let coeffs: Vec<Elem> = d.iter().map(|&x| q().int(x)).collect();
        let prod = (d[0] * d[1] * d[2]).abs();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
            if p != 2 && prod % p as i64 != 0 {
                continue;
            }
            let pl = Place::Finite(ctx(q(), p));
            assert_eq!(is_isotropic(&coeffs, &pl).unwrap(), isotropic_by_search(&d, p as i64), "{d:?} at {p}");
        }
    }
}

fn random_gram(rng: &mut ChaCha8Rng, field: NumberField, n: usize, p: i64) -> QuadLattice {
    loop {
        let mut g = vec![vec![field.zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let scale = p.pow(rng.gen_range(0..=3));
                let e = if field.degree() == 1 {
                    field.int(rng.gen_range(-6..=6) * scale)
                } else {
                    field.ints(rng.gen_range(-4..=4) * scale, rng.gen_range(-2..=2) * scale)
                };
                let e = if i != j && rng.gen_bool(0.3) { e.scale(&rat(1, 2)) } else { e };
                g[i][j] = e.clone();
                g[j][i] = e;
            }
        }
        if let Ok(l) = QuadLattice::new(field, g) {
            return l;
        }
    }
}

#[test]
fn splitting_invariants_on_random_lattices() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (field, p) in [(q(), 2), (q(), 3), (q(), 5), (k5(), 2), (k5(), 3), (NumberField::imag_quad(-3).unwrap(), 2)] {
        for c in local_contexts_default(field, p).unwrap() {
            for _ in 0..60 {
                let n = rng.gen_range(1..=4);
                let l = random_gram(&mut rng, field, n, p as i64);
                let lv = l.localize(&c).unwrap();
                let s = jordan_split(&lv).unwrap();
                assert!(s.verify(&lv));
                let sc = s.scales();
                assert!(sc.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(sc[0], lv.scale_exponent());
                for comp in &s.components {
                    let d = det(&comp.rescaled(&lv.ctx));
                    assert_eq!(lv.ctx.valuation(&d), Some(0), "component not modular");
                    if !lv.ctx.is_dyadic() {
                        assert!(comp
                            .gram
                            .iter()
                            .enumerate()
                            .all(|(i, r)| r.iter().enumerate().all(|(j, e)| i == j || e.is_zero())));
                    }
                }
                let prod = s.components.iter().fold(field.one(), |acc, comp| &acc * &det(&comp.gram));
                let ratio = &prod / &lv.det();
                assert!(is_square_local(&ratio, &lv.ctx).unwrap());
                if lv.ctx.is_dyadic() && n <= 3 {
                    let r = minimal_norm_refine(&s, &lv).unwrap();
                    assert!(r.verify(&lv));
                    assert_eq!(r.ranks(), s.ranks());
                    assert_eq!(r.scales(), s.scales());
                    // the refined leading norm never grows
                    assert!(r.norms()[0] >= s.norms()[0]);
                    assert_eq!(r.norms().iter().min(), Some(&lv.norm_exponent()));
                }
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let k = k5();
    let a = Ideal::from_generators(k, &[k.int(2), k.ints(1, 1)]).unwrap();
    let half = k.from_rational(rat(1, 2));
    let g = vec![vec![k.zero(), half.clone()], vec![half, k.zero()]];
    let m = QuadLattice::with_ideals(k, Some(vec![a.clone(), a.inverse()]), g).unwrap();
    let s = lattice_to_json(&m);
    let back = lattice_from_json(&s).unwrap();
    assert_eq!(back, m);
    assert_eq!(lattice_to_json(&back), s);
    let src = r#"{"field":{"kind":"imquad","d":-5},"gram":[["1+w","5/2"],["5/2","1-w"]]}"#;
    let l = lattice_from_json(src).unwrap();
    assert_eq!(l.gram[0][0], k.ints(1, 1));
    assert_eq!(l.gram[0][1], k.from_rational(rat(5, 2)));
    let again = lattice_from_json(&lattice_to_json(&l)).unwrap();
    assert_eq!(again, l);
    assert!(lattice_from_json(r#"{"field":{"kind":"Q"},"gram":[["1","w"],["w","1"]]}"#).is_err());
    assert!(lattice_from_json("{").is_err());
}
