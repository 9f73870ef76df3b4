use super::*;
use crate::arith::rat;
use crate::lattice::is_isotropic_global;
use crate::localfield::Res;
use crate::suite::random_lattice;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> NumberField {
    NumberField::Rational
}

fn k(d: i64) -> NumberField {
    NumberField::imag_quad(d).unwrap()
}

fn ctx(field: NumberField, p: u64) -> LocalContext {
    local_contexts_default(field, p).unwrap().remove(0)
}

fn local(l: &QuadLattice, c: &LocalContext) -> LocalLattice {
    l.localize(c).unwrap()
}

fn example_binary() -> QuadLattice {
    let f = k(-5);
    let half5 = f.from_rational(rat(5, 2));
    QuadLattice::new(f, vec![vec![f.ints(1, 1), half5.clone()], vec![half5, f.ints(1, -1)]]).unwrap()
}

#[test]
fn represents_locally_examples() {
    let d11 = QuadLattice::diag(q(), &[1, 1]).unwrap();
    assert!(represents_locally(&local(&d11, &ctx(q(), 5)), &q().int(2)).unwrap());
    assert!(!represents_locally(&local(&d11, &ctx(q(), 2)), &q().int(-1)).unwrap());
    let d23 = QuadLattice::diag(q(), &[2, 3]).unwrap();
    assert!(represents_locally(&local(&d23, &ctx(q(), 5)), &q().int(1)).unwrap());
    assert!(represents_locally(&local(&d11, &ctx(q(), 2)), &q().int(5)).unwrap());
    assert!(!represents_locally(&local(&d11, &ctx(q(), 2)), &q().int(12)).unwrap());
    assert!(represents_locally(&local(&d11, &ctx(q(), 5)), &q().int(0)).is_err());
}

#[test]
fn classifier_examples() {
    let v = classify(&local(&QuadLattice::diag(q(), &[1, 1, 1]).unwrap(), &ctx(q(), 5))).unwrap();
    assert_eq!((v.universal, v.rule), (true, Rule::NonDyadicLeading));

    let h = QuadLattice::from_rationals(q(), &[&[(0, 1), (1, 2)], &[(1, 2), (0, 1)]]).unwrap();
    let v = classify(&local(&h, &ctx(q(), 2))).unwrap();
    assert_eq!((v.universal, v.rule), (true, Rule::DyadicBinary));

    let c2 = ctx(q(), 2);
    let v = classify(&local(&QuadLattice::diag(q(), &[1, 1, 1]).unwrap(), &c2)).unwrap();
    assert!(!v.universal);
    assert_eq!(v.rule, Rule::DyadicTernaryUnimodular);
    let w = v.witness.unwrap();
    assert_eq!(c2.rkey(c2.to_residue(&w).unwrap(), 3), c2.rkey(Res(7, 0), 3));

    let c7 = ctx(q(), 7);
    let lv = local(&QuadLattice::diag(q(), &[1, 7, 77]).unwrap(), &c7);
    let v = classify(&lv).unwrap();
    assert!(!v.universal);
    let w = v.witness.unwrap();
    assert!(!represents_locally(&lv, &w).unwrap());

    for c in local_contexts_default(k(-5), 2).unwrap() {
        let v = classify(&local(&example_binary(), &c)).unwrap();
        assert_eq!((v.universal, v.rule), (true, Rule::DyadicBinary));
    }
    assert_eq!(Rule::DyadicBinary.label(), "dyadic_binary");
}

#[test]
fn rejects_non_integral_norm() {
    let l = QuadLattice::from_rationals(q(), &[&[(1, 2), (0, 1)], &[(0, 1), (1, 1)]]).unwrap();
    assert!(classify(&local(&l, &ctx(q(), 2))).is_err());
    assert!(is_locally_universal(&l).is_err());
}

#[test]
fn archimedean_examples() {
    assert!(archimedean_universal(&QuadLattice::diag(q(), &[1, 1, -77]).unwrap(), &Place::Real).unwrap());
    assert!(!archimedean_universal(&QuadLattice::diag(q(), &[1, 1, 1]).unwrap(), &Place::Real).unwrap());
    assert!(archimedean_universal(&example_binary(), &Place::Complex).unwrap());
    assert!(archimedean_universal(&example_binary(), &Place::Real).is_err());
}

#[test]
fn global_local_universality_examples() {
    let h = QuadLattice::from_rationals(q(), &[&[(0, 1), (1, 2)], &[(1, 2), (0, 1)]]).unwrap();
    assert!(is_locally_universal(&h).unwrap().universal);

    let r = is_locally_universal(&QuadLattice::diag(q(), &[1, 1, -77]).unwrap()).unwrap();
    assert!(!r.universal);
    let bad: Vec<&str> = r.failures().iter().map(|p| p.place.as_str()).collect();
    assert_eq!(bad, vec!["7", "11"]);

    assert!(is_locally_universal(&QuadLattice::diag(q(), &[1, 1, 1, -1]).unwrap()).unwrap().universal);

    let r = is_locally_universal(&example_binary()).unwrap();
    assert!(r.universal, "{:?}", r.places);

    // x^2 + y^2 is unimodular away from 2 but -1 is not a square at 3
    let r = is_locally_universal(&QuadLattice::diag(q(), &[1, 1]).unwrap()).unwrap();
    assert!(!r.universal);
    assert!(r.failures().iter().any(|p| p.place == "3"));
}

fn structural_matches_oracle(field: NumberField, p: u64, samples: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for c in local_contexts_default(field, p).unwrap() {
        for n in 1..=3 {
            let mut universal = 0;
            for _ in 0..samples {
                let l = random_lattice(&mut rng, field, n, p as i64);
                let lv = local(&l, &c);
                let s = classify(&lv).unwrap();
                let o = oracle_verdict(&lv).unwrap();
                assert_eq!(s.universal, o.universal, "{:?} at {} rule {:?}", l.gram, c.describe(), s.rule);
                if let Some(w) = &s.witness {
                    assert!(!represents_locally(&lv, w).unwrap());
                }
                if o.universal {
                    universal += 1;
                    if c.is_dyadic() && n == 3 {
                        let split = jordan_split(&lv).unwrap();
                        assert!(split.ranks().iter().any(|&r| r >= 2));
                    }
                }
            }
            if n >= 2 {
                assert!(universal > 0, "no universal samples of rank {n} at {}", c.describe());
            }
        }
    }
}

#[test]
fn classifier_agrees_with_oracle_over_q() {
    structural_matches_oracle(q(), 2, 300, 1);
    structural_matches_oracle(q(), 3, 300, 2);
    structural_matches_oracle(q(), 5, 300, 3);
}

#[test]
fn classifier_agrees_with_oracle_over_extensions() {
    structural_matches_oracle(k(-5), 2, 150, 4);
    structural_matches_oracle(k(-1), 2, 150, 5);
    structural_matches_oracle(k(-3), 2, 100, 6);
    structural_matches_oracle(k(-7), 2, 100, 7);
    structural_matches_oracle(k(-5), 3, 100, 8);
}

/// Every element of valuation at most 4 is a value.
fn all_values_up_to_four(lv: &LocalLattice) -> bool {
    let e = lv.ctx.e2;
    for m in 0..=4u32 {
        let kk = m + 2 * e + 1;
        let (c, vals) = values_mod(lv, kk).unwrap();
        let pim = (0..m).fold(Res(1, 0), |acc, _| c.rmul(acc, c.to_residue(&c.pi).unwrap()));
        for u in c.residues_mod(kk - m) {
            if c.is_unit_res(u) && !vals.contains(&c.rkey(c.rmul(pim, u), kk)) {
                return false;
            }
        }
    }
    true
}

#[test]
fn units_and_pi_units_suffice() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (field, p, samples) in [(q(), 2, 150), (q(), 3, 150), (k(-1), 2, 40)] {
        let c = ctx(field, p);
        for _ in 0..samples {
            let n = rng.gen_range(2..=3);
            let lv = local(&random_lattice(&mut rng, field, n, p as i64), &c);
            let o = oracle_verdict(&lv).unwrap();
            assert_eq!(o.universal, all_values_up_to_four(&lv), "{:?}", lv.gram);
        }
    }
}

#[test]
fn units_represented_iff_exponent_even() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for field in [k(-5), k(-1), k(-2)] {
        let c = ctx(field, 2);
        assert_eq!(c.e2, 2);
        let units: Vec<Elem> = c.residues_mod(3).into_iter().filter(|&r| c.is_unit_res(r)).map(|r| c.lift(r)).collect();
        for kk in 1..=4u32 {
            for _ in 0..6 {
                let eps = &units[rng.gen_range(0..units.len())];
                let delta = &units[rng.gen_range(0..units.len())];
                let d = vec![field.one(), eps * &c.pi, delta * &c.pi.pow(kk)];
                let n = d.len();
                let g = (0..n)
                    .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { field.zero() }).collect())
                    .collect();
                let lv = LocalLattice::new(c.clone(), g);
                let kmod = 2 * c.e2 + 1;
                let (cc, vals) = values_mod(&lv, kmod).unwrap();
                let all = cc
                    .residues_mod(kmod)
                    .into_iter()
                    .filter(|&u| cc.is_unit_res(u))
                    .all(|u| vals.contains(&cc.rkey(u, kmod)));
                assert_eq!(all, kk % 2 == 0, "{field} k={kk} eps={eps} delta={delta}");
            }
        }
    }
}

#[test]
fn locally_universal_ternaries_are_isotropic() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut found = 0;
    for field in [q(), k(-5), k(-1)] {
        for _ in 0..150 {
            let mut g = vec![vec![field.zero(); 3]; 3];
            for i in 0..3 {
                for j in i..3 {
                    let x = if i == j {
                        field.int(rng.gen_range(-3..=3))
                    } else {
                        field.int(rng.gen_range(-2..=2)).scale(&rat(1, 2))
                    };
                    g[i][j] = x.clone();
                    g[j][i] = x;
                }
            }
            let Ok(l) = QuadLattice::new(field, g) else { continue };
            if !l.is_integral_norm() {
                continue;
            }
            if is_locally_universal(&l).unwrap().universal {
                found += 1;
                assert!(is_isotropic_global(field, &diagonalize(&l.gram)).unwrap(), "{:?}", l.gram);
            }
        }
    }
    assert!(found > 10, "only {found} locally universal samples");
}
