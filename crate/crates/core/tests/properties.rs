use proptest::prelude::*;
use quniv::field::{Elem, NumberField};
use quniv::lattice::{lattice_from_json, lattice_to_json, QuadLattice};
use quniv::local_universality::is_locally_universal;
use quniv::localfield::{hilbert_symbol, local_contexts_default, Place};
use quniv::potential::unit_shift_certificate;

fn field(d: i64) -> NumberField {
    if d == 0 {
        NumberField::Rational
    } else {
        NumberField::imag_quad(d).unwrap()
    }
}

fn elem(k: NumberField, a: i64, b: i64) -> Elem {
    if k.degree() == 1 {
        k.int(a)
    } else {
        k.ints(a, b)
    }
}

fn gram(k: NumberField, e: &[(i64, i64)]) -> Vec<Vec<Elem>> {
    let n = if e.len() == 3 { 2 } else { 3 };
    let mut g = vec![vec![k.zero(); n]; n];
    let mut it = e.iter();
    for i in 0..n {
        for j in i..n {
            let &(a, b) = it.next().unwrap();
            let x = elem(k, a, b);
            // even off-diagonal numerators keep the norm integral
            let x = if i == j { x } else { x.scale(&quniv::arith::rat(1, 2)) };
            g[i][j] = x.clone();
            g[j][i] = x;
        }
    }
    g
}

fn transform(u: &[Vec<i64>], g: &[Vec<Elem>], k: NumberField) -> Vec<Vec<Elem>> {
    let n = g.len();
    let mut out = vec![vec![k.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = k.zero();
            for a in 0..n {
                for b in 0..n {
                    s = &s + &(&g[a][b] * &k.int(u[i][a] * u[j][b]));
                }
            }
            out[i][j] = s;
        }
    }
    out
}

/// Unimodular integer matrix from elementary row operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            for t in 0..n {
                u[i][t] += c * u[j][t];
            }
        }
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_json_round_trips(d in prop::sample::select(vec![0i64, -1, -5, -23]),
                                e in prop::collection::vec((-20i64..20, -20i64..20), 6)) {
        let k = field(d);
        if let Ok(l) = QuadLattice::new(k, gram(k, &e)) {
            let text = lattice_to_json(&l);
            let back = lattice_from_json(&text).unwrap();
            prop_assert_eq!(&back.gram, &l.gram);
            prop_assert_eq!(lattice_to_json(&back), text);
        }
    }

    #[test]
    fn elements_print_and_parse(d in prop::sample::select(vec![0i64, -1, -3, -5]),
                                a in -1000i64..1000, b in -1000i64..1000, den in 1i64..50) {
        let k = field(d);
        let x = elem(k, a, b).scale(&quniv::arith::rat(1, den));
        prop_assert_eq!(Elem::parse(k, &x.to_json_string()).unwrap(), x);
    }

    #[test]
    fn hilbert_symbol_is_symmetric_and_bimultiplicative(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        a in -300i64..300, b in -300i64..300, c in -300i64..300) {
        prop_assume!(a != 0 && b != 0 && c != 0);
        let q = NumberField::Rational;
        let place = Place::Finite(local_contexts_default(q, p).unwrap().remove(0));
        let h = |x: i64, y: i64| hilbert_symbol(&q.int(x), &q.int(y), &place).unwrap();
        prop_assert_eq!(h(a, b), h(b, a));
        prop_assert_eq!(h(a, b * c), h(a, b) * h(a, c));
        prop_assert_eq!(h(a, -a), 1);
    }

    #[test]
    fn local_verdicts_ignore_basis_change(
        d in prop::sample::select(vec![0i64, -5]),
        e in prop::collection::vec((-6i64..6, -2i64..2), 6),
        ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..4)) {
        let k = field(d);
        let g = gram(k, &e);
        let Ok(l) = QuadLattice::new(k, g.clone()) else { return Ok(()) };
        prop_assume!(l.is_integral_norm());
        let m = QuadLattice::new(k, transform(&unimodular(3, &ops), &g, k)).unwrap();
        let (a, b) = (is_locally_universal(&l).unwrap(), is_locally_universal(&m).unwrap());
        prop_assert_eq!(a.universal, b.universal);
        let names = |x: &quniv::local_universality::LocalUniversality| {
            x.failures().iter().map(|p| p.place.clone()).collect::<Vec<_>>()
        };
        prop_assert_eq!(names(&a), names(&b));
    }

    #[test]
    fn certificates_satisfy_their_identity(g in -60i64..60, dd in -60i64..60) {
        prop_assume!(g != 0);
        let q = NumberField::Rational;
        if let Ok(c) = unit_shift_certificate(&q.int(g), &q.int(dd)) {
            prop_assert!(c.verify());
            prop_assert_eq!(c.m % 2, 0);
        }
    }
}
