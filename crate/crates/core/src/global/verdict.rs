//! The global decision cascade.

use super::search::{search_representation, small_integers};
use super::{binary_hyperbolic_represents, class_group, Ideal};
use crate::error::{Error, Result};
use crate::field::{Elem, NumberField};
use crate::lattice::{diagonalize, QuadLattice};
use crate::local_universality::is_locally_universal;
use num_traits::Signed;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniversalReason {
    /// a binary ax + a^{-1}y with a principal
    PrincipalHyperbolic,
    /// rank at least 4 and locally universal
    StrongApproximation,
    /// rank 3, odd class number, one class in the genus
    SingleClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofKind {
    IdealClassObstruction,
    LocalFailure,
    /// no representation found within the bound; not a proof
    SearchBoundOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GlobalVerdict {
    Universal(UniversalReason),
    NotUniversal { witness: Elem, proof_kind: ProofKind, place: Option<String> },
    UnknownWithinBound(i64),
}

impl UniversalReason {
    pub fn label(&self) -> &'static str {
        match self {
            UniversalReason::PrincipalHyperbolic => "PrincipalHyperbolic",
            UniversalReason::StrongApproximation => "StrongApproximation",
            UniversalReason::SingleClass => "SingleClass",
        }
    }
}

impl ProofKind {
    pub fn label(&self) -> &'static str {
        match self {
            ProofKind::IdealClassObstruction => "IdealClassObstruction",
            ProofKind::LocalFailure => "LocalFailure",
            ProofKind::SearchBoundOnly => "SearchBoundOnly",
        }
    }

    pub fn is_proof(&self) -> bool {
        !matches!(self, ProofKind::SearchBoundOnly)
    }
}

impl GlobalVerdict {
    pub fn is_universal(&self) -> bool {
        matches!(self, GlobalVerdict::Universal(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            GlobalVerdict::Universal(r) => json!({"status": "Universal", "reason": r.label()}),
            GlobalVerdict::NotUniversal { witness, proof_kind, place } => json!({
                "status": "NotUniversal",
                "witness": witness.to_json_string(),
                "proof_kind": proof_kind.label(),
                "place": place,
            }),
            GlobalVerdict::UnknownWithinBound(b) => {
                json!({"status": "UnknownWithinBound", "bound": b})
            }
        }
    }
}

/// Class number, with 1 over the rationals.
pub fn class_number(k: NumberField) -> Result<usize> {
    match k.d() {
        None => Ok(1),
        Some(d) => Ok(class_group(d)?.order()),
    }
}

/// For a binary lattice that is locally universal, an ideal b with
/// L = bx + b^{-1}y, Q(x) = Q(y) = 0, B(x, y) = 1/2, up to class: the
/// coefficient ideal of an isotropic line.
pub fn hyperbolic_class(l: &QuadLattice) -> Result<Ideal> {
    if l.rank() != 2 {
        return Err(Error::Unsupported("hyperbolic_class needs a binary lattice".into()));
    }
    let k = l.field;
    let g = &l.gram;
    let (a, b, c) = (&g[0][0], &g[0][1], &g[1][1]);
    let coords = if a.is_zero() {
        [k.one(), k.zero()]
    } else {
        let Some(s) = k.sqrt(&(&(b * b) - &(a * c))) else {
            return Err(Error::Unsupported("binary lattice is anisotropic".into()));
        };
        [&s - b, a.clone()]
    };
    let mut out: Option<Ideal> = None;
    for (i, ci) in coords.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let part = l.ideal(i).scale_by(&ci.inv());
        out = Some(match out {
            None => part,
            Some(o) => o.intersect(&part),
        });
    }
    Ok(out.expect("nonzero isotropic vector"))
}

/// A value the lattice misses at a real place: the opposite of the common
/// sign of a definite form.
fn archimedean_witness(l: &QuadLattice) -> Elem {
    let k = l.field;
    let d = diagonalize(&l.gram);
    if d.iter().all(|x| x.a.is_positive()) {
        k.int(-1)
    } else {
        k.one()
    }
}

/// For M = H ⊥ <q> with H locally universal binary, the hyperbolic ideal of
/// H, the index of the line and q.
fn split_hyperbolic_line(l: &QuadLattice) -> Result<Option<(Ideal, usize, Elem)>> {
    if l.rank() != 3 || l.coeff_ideals.is_some() {
        return Ok(None);
    }
    for i in 0..3 {
        if (0..3).any(|j| j != i && !l.gram[i][j].is_zero()) {
            continue;
        }
        let rest: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        let h = QuadLattice::new(
            l.field,
            rest.iter().map(|&r| rest.iter().map(|&s| l.gram[r][s].clone()).collect()).collect(),
        )?;
        if !h.is_integral_norm() || !is_locally_universal(&h)?.universal {
            continue;
        }
        return Ok(Some((hyperbolic_class(&h)?, i, l.gram[i][i].clone())));
    }
    Ok(None)
}

/// Searches for alpha on H ⊥ <q> over z with |N(z)| <= bound; each z is
/// decided exactly on H.
pub fn split_search(h: &Ideal, q: &Elem, alpha: &Elem, bound: i64) -> Result<Option<(Elem, Elem, Elem)>> {
    let k = q.field;
    let mut zs = vec![k.zero()];
    zs.extend(small_integers(k, bound));
    for z in zs {
        let rest = alpha - &(q * &(&z * &z));
        if rest.is_zero() {
            return Ok(Some((k.zero(), k.zero(), z)));
        }
        if let Some((a, b)) = binary_hyperbolic_represents(h, &rest)? {
            return Ok(Some((a, b, z)));
        }
    }
    Ok(None)
}

/// Decision cascade for global universality; `bound` controls the last,
/// search-based step for ternary lattices over fields of even class number.
pub fn is_globally_universal(l: &QuadLattice, bound: i64) -> Result<GlobalVerdict> {
    let k = l.field;
    let lu = is_locally_universal(l)?;
    if let Some(f) = lu.failures().first() {
        let witness = match &f.verdict.witness {
            Some(w) => w.clone(),
            None if f.place == "real" => archimedean_witness(l),
            None => return Err(Error::Unsupported(format!("no local witness at {}", f.place))),
        };
        return Ok(GlobalVerdict::NotUniversal {
            witness,
            proof_kind: ProofKind::LocalFailure,
            place: Some(f.place.clone()),
        });
    }
    match l.rank() {
        2 => {
            let b = hyperbolic_class(l)?;
            if binary_hyperbolic_represents(&b, &k.one())?.is_some() {
                Ok(GlobalVerdict::Universal(UniversalReason::PrincipalHyperbolic))
            } else {
                Ok(GlobalVerdict::NotUniversal {
                    witness: k.one(),
                    proof_kind: ProofKind::IdealClassObstruction,
                    place: None,
                })
            }
        }
        3 if class_number(k)? % 2 == 1 => Ok(GlobalVerdict::Universal(UniversalReason::SingleClass)),
        3 => {
            let split = split_hyperbolic_line(l)?;
            let height = (bound as f64).sqrt().ceil() as i64;
            for alpha in small_integers(k, 30) {
                let found = match &split {
                    Some((h, _, q)) => split_search(h, q, &alpha, bound)?.is_some(),
                    None => search_representation(l, &alpha, height.min(6))?.is_some(),
                };
                if !found {
                    return Ok(GlobalVerdict::NotUniversal {
                        witness: alpha,
                        proof_kind: ProofKind::SearchBoundOnly,
                        place: None,
                    });
                }
            }
            Ok(GlobalVerdict::UnknownWithinBound(bound))
        }
        _ => Ok(GlobalVerdict::Universal(UniversalReason::StrongApproximation)),
    }
}

/// The sufficient condition for one class in the genus: odd class number
/// and local universality. Only defined from rank 3 on.
pub fn single_class_condition(l: &QuadLattice) -> Result<bool> {
    if l.rank() < 3 {
        return crate::error::input("single_class_condition needs rank at least 3");
    }
    Ok(class_number(l.field)? % 2 == 1 && is_locally_universal(l)?.universal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::global::search::hyperbolic_search;
    use crate::global::{construct_binary, construct_ternary_family};
    use std::collections::HashSet;

    fn q() -> NumberField {
        NumberField::Rational
    }

    fn k5() -> NumberField {
        NumberField::imag_quad(-5).unwrap()
    }

    fn p2() -> Ideal {
        let k = k5();
        Ideal::from_generators(k, &[k.int(2), k.ints(1, 1)]).unwrap()
    }

    fn xy(k: NumberField) -> QuadLattice {
        let h = k.from_rational(rat(1, 2));
        QuadLattice::new(k, vec![vec![k.zero(), h.clone()], vec![h, k.zero()]]).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            is_globally_universal(&xy(q()), 100).unwrap(),
            GlobalVerdict::Universal(UniversalReason::PrincipalHyperbolic)
        );
        let l = QuadLattice::diag(q(), &[1, 1, 1, -1]).unwrap();
        assert_eq!(
            is_globally_universal(&l, 100).unwrap(),
            GlobalVerdict::Universal(UniversalReason::StrongApproximation)
        );
        let f = QuadLattice::diag(q(), &[1, 1, -77]).unwrap();
        match is_globally_universal(&f, 100).unwrap() {
            GlobalVerdict::NotUniversal { proof_kind, place, .. } => {
                assert_eq!(proof_kind, ProofKind::LocalFailure);
                assert_eq!(place.as_deref(), Some("7"));
            }
            v => panic!("{v:?}"),
        }
        let pos = QuadLattice::diag(q(), &[1, 1, 1, 1]).unwrap();
        match is_globally_universal(&pos, 100).unwrap() {
            GlobalVerdict::NotUniversal { witness, place, .. } => {
                assert_eq!(witness, q().int(-1));
                assert_eq!(place.as_deref(), Some("real"));
            }
            v => panic!("{v:?}"),
        }
        assert!(is_globally_universal(&QuadLattice::from_rationals(q(), &[&[(1, 2)]]).unwrap(), 10).is_err());
    }

    #[test]
    fn binary_over_minus_five_is_obstructed() {
        let k = k5();
        let b = construct_binary(&p2()).unwrap();
        let v = is_globally_universal(&b.free, 100).unwrap();
        assert_eq!(
            v,
            GlobalVerdict::NotUniversal { witness: k.one(), proof_kind: ProofKind::IdealClassObstruction, place: None }
        );
        assert!(is_globally_universal(&b.pseudo, 100).unwrap() == v);
        assert_eq!(hyperbolic_search(&p2(), &k.one(), 10_000), None);
        assert_eq!(v.to_json()["proof_kind"], "IdealClassObstruction");
    }

    /// Ideals of Q(sqrt -5) up to norm 50 split into two classes by the
    /// class of the hyperbolic ideal, and exactly the principal ones give
    /// lattices representing 1.
    #[test]
    fn binary_classes_match_ideal_classes() {
        let k = k5();
        let cg = class_group(-5).unwrap();
        let mut ideals = HashSet::new();
        for a in 1..=50 {
            for b in 0..a {
                let i = Ideal::from_generators(k, &[k.int(a), k.ints(b, 1)]).unwrap();
                if i.norm() <= int(50) {
                    ideals.insert(i);
                }
            }
            ideals.insert(Ideal::principal(&k.int(a)).unwrap());
        }
        let ideals: Vec<Ideal> = ideals.into_iter().filter(|i| i.norm() <= int(50)).collect();
        assert!(ideals.len() > 40);
        let mut buckets = HashSet::new();
        for i in &ideals {
            let b = construct_binary(i).unwrap();
            let c = cg.ideal_class(&hyperbolic_class(&b.free).unwrap());
            let c_inv = cg.inverse(c);
            assert!(c == cg.ideal_class(i) || c_inv == cg.ideal_class(i));
            buckets.insert(c.min(c_inv));
            let v = is_globally_universal(&b.free, 10).unwrap();
            assert_eq!(v.is_universal(), cg.is_principal(i), "{i}");
        }
        assert_eq!(buckets.len(), 2);
    }

    #[test]
    fn universal_verdicts_survive_search() {
        let cases = vec![
            xy(q()),
            xy(k5()),
            QuadLattice::diag(q(), &[1, 1, 1, -1]).unwrap(),
            QuadLattice::diag(q(), &[1, -1, 3]).unwrap(),
            construct_binary(&Ideal::from_generators(k5(), &[k5().int(3), k5().ints(1, 1)]).unwrap().mul(&p2()))
                .unwrap()
                .free,
        ];
        for l in cases {
            let v = is_globally_universal(&l, 10).unwrap();
            assert!(v.is_universal(), "{v:?}");
            for alpha in small_integers(l.field, 30) {
                assert!(search_representation(&l, &alpha, 20).unwrap().is_some(), "{alpha} on {:?}", l.gram);
            }
        }
    }

    #[test]
    fn ternary_family_is_search_bound_only() {
        let k = k5();
        let fam = construct_ternary_family(-5, &p2(), &[13, 17]).unwrap();
        for m in std::iter::once(&fam.base).chain(fam.members.iter().map(|(_, m)| m)) {
            let v = is_globally_universal(m, 1000).unwrap();
            assert_eq!(
                v,
                GlobalVerdict::NotUniversal { witness: k.one(), proof_kind: ProofKind::SearchBoundOnly, place: None }
            );
            assert!(!single_class_condition(m).unwrap());
        }
    }

    #[test]
    fn single_class_examples() {
        assert!(!single_class_condition(&QuadLattice::diag(q(), &[1, 1, 1]).unwrap()).unwrap());
        let h1 = QuadLattice::from_rationals(
            q(),
            &[&[(0, 1), (1, 2), (0, 1)], &[(1, 2), (0, 1), (0, 1)], &[(0, 1), (0, 1), (1, 1)]],
        )
        .unwrap();
        assert!(single_class_condition(&h1).unwrap());
        assert!(single_class_condition(&xy(q())).is_err());
    }
}
