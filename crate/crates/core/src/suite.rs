//! Reproducible checks of the worked examples and structural properties,
//! shared by `quniv verify-paper` and the acceptance test target.

use crate::arith::{int, rat, Rational};
use crate::error::Result;
use crate::field::{Elem, NumberField};
use crate::global::{
    class_group, construct_binary, construct_ternary_family, counterexample_family, hyperbolic_class,
    hyperbolic_search, is_globally_universal, pic_two_part, GlobalVerdict, Ideal, ProofKind,
};
use crate::lattice::{diagonalize, is_isotropic_global, relevant_places, QuadLattice};
use crate::local_universality::{
    classify, is_locally_universal, is_locally_universal_with, oracle_verdict, LocalOptions,
};
use crate::localfield::{hilbert_symbol, local_contexts_default};
use crate::potential::{is_potentially_universal, unit_shift_certificate, RElem, RadicalRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

/// Seed used by every randomized check.
pub const SEED: u64 = 20240601;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub tags: Vec<&'static str>,
    pub tolerance: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Check {
    id: u32,
    name: &'static str,
    tags: &'static [&'static str],
    tolerance: &'static str,
    run: fn() -> Result<(bool, String)>,
}

const CHECKS: &[Check] = &[
    Check {
        id: 1,
        name: "classifier agrees with oracle",
        tags: &["local", "oracle"],
        tolerance: "zero mismatches",
        run: classifier_vs_oracle,
    },
    Check {
        id: 2,
        name: "binary example over Q(sqrt -5)",
        tags: &["binary-example", "example"],
        tolerance: "exact form and witness; search to norm 10^4",
        run: binary_example,
    },
    Check {
        id: 3,
        name: "binary classes follow ideal classes",
        tags: &["binary-classes", "global"],
        tolerance: "exactly 2 buckets, 1 representing",
        run: binary_classes,
    },
    Check { id: 4, name: "class numbers", tags: &["class-number", "global"], tolerance: "exact", run: class_numbers },
    Check {
        id: 5,
        name: "x^2+y^2-77z^2 counterexample",
        tags: &["counterexample", "example"],
        tolerance: "exact; z-scan bound 10",
        run: counterexample,
    },
    Check {
        id: 6,
        name: "ternary family -4p^2 z^2",
        tags: &["ternary-family", "example"],
        tolerance: "exact; search bound 10^3",
        run: ternary_family,
    },
    Check {
        id: 7,
        name: "Hilbert reciprocity",
        tags: &["hilbert", "local"],
        tolerance: "zero violations",
        run: reciprocity,
    },
    Check {
        id: 8,
        name: "locally universal ternaries are isotropic",
        tags: &["isotropy", "global"],
        tolerance: "zero violations",
        run: ternary_isotropy,
    },
    Check {
        id: 9,
        name: "potential universality suite",
        tags: &["potential"],
        tolerance: "exact",
        run: potential_suite,
    },
    Check {
        id: 10,
        name: "unit shift certificates",
        tags: &["certificate", "potential"],
        tolerance: "coefficientwise identity",
        run: certificates,
    },
    Check {
        id: 11,
        name: "two-part of the class group",
        tags: &["genus", "global"],
        tolerance: "exact",
        run: two_parts,
    },
];

/// Ids and tags accepted by [`run_checks`].
pub fn check_names() -> Vec<(u32, &'static str, &'static [&'static str])> {
    CHECKS.iter().map(|c| (c.id, c.name, c.tags)).collect()
}

fn selected(c: &Check, only: Option<&str>) -> bool {
    match only {
        None => true,
        Some(s) => s.split(',').map(str::trim).any(|s| s == c.id.to_string() || c.tags.contains(&s)),
    }
}

/// Runs the checks matching `only` (an id or tag, comma separated), in id order.
pub fn run_checks(only: Option<&str>) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|c| selected(c, only))
        .map(|c| {
            let (passed, detail) = match (c.run)() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckResult { id: c.id, name: c.name, tags: c.tags.to_vec(), tolerance: c.tolerance, passed, detail }
        })
        .collect()
}

pub fn run_check(id: u32) -> Option<CheckResult> {
    run_checks(Some(&id.to_string())).pop()
}

fn k(d: i64) -> NumberField {
    NumberField::imag_quad(d).expect("valid field")
}

fn example_ideal() -> Result<Ideal> {
    let k = k(-5);
    Ideal::from_generators(k, &[k.int(2), k.ints(1, 1)])
}

/// Random lattice whose entries are small integers times p^e, 0 <= e <= 3,
/// with integral norm.
pub fn random_lattice(rng: &mut ChaCha8Rng, field: NumberField, n: usize, p: i64) -> QuadLattice {
    let elem = |rng: &mut ChaCha8Rng| {
        if field.degree() == 1 {
            field.int(rng.gen_range(-7..=7))
        } else {
            field.ints(rng.gen_range(-4..=4), rng.gen_range(-2..=2))
        }
    };
    loop {
        let mut g = vec![vec![field.zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let e = rng.gen_range(0..=3u32);
                let x = elem(rng).scale(&int(p.pow(e)));
                let x = if i == j { x } else { x.scale(&rat(1, 2)) };
                g[i][j] = x.clone();
                g[j][i] = x;
            }
        }
        if let Ok(l) = QuadLattice::new(field, g) {
            if l.is_integral_norm() {
                return l;
            }
        }
    }
}

fn classifier_vs_oracle() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut total, mut mismatches) = (0, 0);
    for p in [2u64, 3, 5] {
        let ctx = local_contexts_default(NumberField::Rational, p)?.remove(0);
        for n in 1..=3 {
            for _ in 0..300 {
                let lv = random_lattice(&mut rng, NumberField::Rational, n, p as i64).localize(&ctx)?;
                if classify(&lv)?.universal != oracle_verdict(&lv)?.universal {
                    mismatches += 1;
                }
                total += 1;
            }
        }
    }
    Ok((mismatches == 0, format!("{total} lattices, {mismatches} mismatches")))
}

fn binary_example() -> Result<(bool, String)> {
    let k = k(-5);
    let b = construct_binary(&example_ideal()?)?;
    let half5 = k.from_rational(rat(5, 2));
    let expected = vec![vec![k.ints(1, 1), half5.clone()], vec![half5, k.ints(1, -1)]];
    let form_ok = b.free.gram == expected;
    let local = is_locally_universal(&b.free)?.universal;
    let v = is_globally_universal(&b.free, 100)?;
    let verdict_ok = v
        == GlobalVerdict::NotUniversal { witness: k.one(), proof_kind: ProofKind::IdealClassObstruction, place: None };
    let search_ok = hyperbolic_search(&example_ideal()?, &k.one(), 10_000).is_none();
    Ok((
        form_ok && local && verdict_ok && search_ok,
        format!(
            "form {form_ok}, locally universal {local}, obstruction {verdict_ok}, no 1 up to norm 10^4 {search_ok}"
        ),
    ))
}

fn binary_classes() -> Result<(bool, String)> {
    let k = k(-5);
    let cg = class_group(-5)?;
    let mut ideals = BTreeSet::new();
    for a in 1..=50 {
        for b in 0..a {
            let i = Ideal::from_generators(k, &[k.int(a), k.ints(b, 1)])?;
            if i.norm() <= int(50) {
                ideals.insert(i.to_string());
            }
        }
    }
    let mut buckets = HashSet::new();
    let mut representing = HashSet::new();
    let mut consistent = true;
    for a in 1..=50 {
        for b in 0..a {
            let i = Ideal::from_generators(k, &[k.int(a), k.ints(b, 1)])?;
            if i.norm() > int(50) || !ideals.remove(&i.to_string()) {
                continue;
            }
            let l = construct_binary(&i)?.free;
            consistent &= is_locally_universal(&l)?.universal;
            let c = cg.ideal_class(&hyperbolic_class(&l)?);
            let bucket = c.min(cg.inverse(c));
            buckets.insert(bucket);
            let universal = is_globally_universal(&l, 10)?.is_universal();
            consistent &= universal == cg.is_principal(&i);
            if universal {
                representing.insert(bucket);
            }
        }
    }
    let ok = consistent && buckets.len() == 2 && representing.len() == 1;
    Ok((ok, format!("{} buckets, {} representing 1", buckets.len(), representing.len())))
}

fn class_numbers() -> Result<(bool, String)> {
    let got: Vec<usize> = [-5, -1, -23].iter().map(|&d| class_group(d).map(|c| c.order())).collect::<Result<_>>()?;
    Ok((got == [2, 1, 3], format!("h(-5), h(-1), h(-23) = {got:?}")))
}

fn counterexample() -> Result<(bool, String)> {
    let c = counterexample_family(5, 10)?;
    let failures: Vec<String> = c.local.failures().iter().map(|f| f.place.clone()).collect();
    let v = is_globally_universal(&c.form, 10)?;
    let local_failure = matches!(v, GlobalVerdict::NotUniversal { proof_kind: ProofKind::LocalFailure, .. });
    let ok = (c.p, c.q) == (7, 11)
        && c.form == QuadLattice::diag(NumberField::Rational, &[1, 1, -77])?
        && c.range.all_represented()
        && failures == ["7", "11"]
        && local_failure;
    Ok((
        ok,
        format!(
            "(p,q) = ({},{}), unresolved in [-5,5]: {:?}, failing places {:?}, local failure {local_failure}",
            c.p,
            c.q,
            c.range.unresolved(),
            failures
        ),
    ))
}

fn ternary_family() -> Result<(bool, String)> {
    let k = k(-5);
    let fam = construct_ternary_family(-5, &example_ideal()?, &[13, 17])?;
    let mut ok = fam.a == k.int(-1);
    let mut notes = Vec::new();
    for (p, m) in &fam.members {
        let p = *p as i64;
        ok &= m.gram[2][2] == k.int(-4 * p * p);
        ok &= is_locally_universal(m)?.universal;
        let opts = LocalOptions { places: Some(vec![2, 3, 7]), oracle: true };
        let oracle = is_locally_universal_with(m, &opts)?.universal;
        let v = is_globally_universal(m, 1000)?;
        let bound_only =
            v == GlobalVerdict::NotUniversal { witness: k.one(), proof_kind: ProofKind::SearchBoundOnly, place: None };
        ok &= oracle && bound_only;
        notes.push(format!("p={p}: oracle {oracle}, search-bound-only {bound_only}"));
    }
    Ok((ok, notes.join("; ")))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Elem {
    loop {
        let n = rng.gen_range(-60..=60);
        if n != 0 {
            return NumberField::Rational.from_rational(rat(n, rng.gen_range(1..=12)));
        }
    }
}

fn reciprocity() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut bad = 0;
    for _ in 0..200 {
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let mut prod = 1;
        for place in relevant_places(NumberField::Rational, &[a.clone(), b.clone()])? {
            prod *= hilbert_symbol(&a, &b, &place)?;
        }
        if prod != 1 {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("200 pairs, {bad} violations")))
}

fn ternary_isotropy() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let (mut universal, mut violations) = (0, 0);
    let mut corpus = Vec::new();
    for p in [2, 3, 5] {
        for _ in 0..150 {
            corpus.push(random_lattice(&mut rng, NumberField::Rational, 3, p));
        }
    }
    for _ in 0..60 {
        corpus.push(random_lattice(&mut rng, k(-5), 3, 2));
    }
    for l in &corpus {
        let coeffs = diagonalize(&l.gram);
        if coeffs.iter().any(Elem::is_zero) || !is_locally_universal(l)?.universal {
            continue;
        }
        universal += 1;
        if !is_isotropic_global(l.field, &coeffs)? {
            violations += 1;
        }
    }
    let ok = violations == 0 && universal > 0;
    Ok((ok, format!("{} lattices, {universal} locally universal, {violations} anisotropic", corpus.len())))
}

fn potential_suite() -> Result<(bool, String)> {
    let q = NumberField::Rational;
    let mut ok = is_potentially_universal(&QuadLattice::diag(q, &[2, 3])?)?;
    ok &= !is_potentially_universal(&QuadLattice::diag(q, &[2, 4])?)?;
    for d in (-10..=10).filter(|&d| d != 0) {
        ok &= is_potentially_universal(&QuadLattice::diag(q, &[1, d])?)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut identity_failures = 0;
    for t in 0..100 {
        let field = if t % 2 == 0 { q } else { k(-5) };
        let el = |rng: &mut ChaCha8Rng| {
            if field.degree() == 1 {
                field.int(rng.gen_range(-30..30))
            } else {
                field.ints(rng.gen_range(-30..30), rng.gen_range(-30..30))
            }
        };
        let delta = loop {
            let d = el(&mut rng);
            if !d.is_zero() {
                break d;
            }
        };
        let mut r = RadicalRing::new(field);
        let sd = r.adjoin_sqrt(&delta)?;
        let si = r.adjoin_sqrt(&field.int(-1))?;
        let (sd, si) = (r.lift(&sd)?, r.lift(&si)?);
        let rho = RElem { coeffs: (0..r.dim()).map(|_| el(&mut rng)).collect() };
        // x = 1 + sqrt(delta) rho, y = i rho gives x^2 + delta y^2 = 1 + 2 sqrt(delta) rho
        let x = r.add(&r.one(), &r.mul(&sd, &rho));
        let y = r.mul(&si, &rho);
        let lhs = r.add(&r.mul(&x, &x), &r.scale(&r.mul(&y, &y), &delta));
        let rhs = r.add(&r.one(), &r.scale(&r.mul(&sd, &rho), &field.int(2)));
        if lhs != rhs {
            identity_failures += 1;
        }
    }
    ok &= identity_failures == 0;
    Ok((ok, format!("fixed suite and 100 identities, {identity_failures} identity failures")))
}

fn certificates() -> Result<(bool, String)> {
    let q = NumberField::Rational;
    let c = unit_shift_certificate(&q.int(3), &q.int(2))?;
    let coeffs = |v: &[Elem]| v.iter().map(|e| e.to_rational()).collect::<Option<Vec<Rational>>>();
    let f_ok = coeffs(&c.f) == Some(vec![int(1), int(2), int(1)]);
    let g_ok = coeffs(&c.g) == Some(vec![int(4), int(4), int(1)]);
    let mut ok = c.m == 2 && f_ok && g_ok && c.verify();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut done = 0;
    let mut failures = 0;
    while done < 50 {
        let field = if done % 2 == 0 { q } else { k(-1) };
        let (g, d) = if field.degree() == 1 {
            (field.int(rng.gen_range(-40..40)), field.int(rng.gen_range(-40..40)))
        } else {
            (
                field.ints(rng.gen_range(-9..9), rng.gen_range(-9..9)),
                field.ints(rng.gen_range(-3..4), rng.gen_range(-3..4)),
            )
        };
        if g.is_zero() {
            continue;
        }
        let Ok(cert) = unit_shift_certificate(&g, &d) else { continue };
        if !cert.verify() {
            failures += 1;
        }
        done += 1;
    }
    ok &= failures == 0;
    Ok((ok, format!("(3,2): m={} f {f_ok} g {g_ok}; 50 random pairs, {failures} failures", c.m)))
}

/// Number of distinct primes dividing the discriminant.
fn prime_divisor_count(mut n: i64) -> u32 {
    n = n.abs();
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    count + u32::from(n > 1)
}

fn two_parts() -> Result<(bool, String)> {
    let mut ok = pic_two_part(-51)? == 2;
    let mut seen = Vec::new();
    for d in [-51, -5, -85, -1105, -21, -105, -30, -17] {
        let got = pic_two_part(d)?;
        let genera = 1usize << (prime_divisor_count(k(d).discriminant()) - 1);
        ok &= got == genera;
        seen.push(format!("{d}:{got}"));
    }
    Ok((ok, format!("[Pic:Pic^2] {}", seen.join(" "))))
}
