//! Completions of the base field at finite primes, realized through the
//! residue rings o/p^M, together with squares, quadratic defects and Hilbert
//! symbols.

mod hilbert;
mod squares;

pub use hilbert::{hilbert_symbol, hilbert_symbol_by_search};
pub use squares::{is_square_local, quadratic_defect, unit_defect_exponent, Defect};

use crate::arith::{big, int, ord_p_int, sqrt_mod_prime, Rational};
use crate::error::{input, Error, Result};
use crate::field::{Elem, NumberField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashSet;

/// How the rational prime p decomposes in the base field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Splitting {
    Rational,
    /// One of two primes (p, w - root) above p.
    Split {
        root: i128,
    },
    Inert,
    Ramified,
}

/// A place of the base field.
#[derive(Debug, Clone)]
pub enum Place {
    Finite(LocalContext),
    Real,
    Complex,
}

/// Element c0 + c1·t of o/p^M, where t = w (inert) or t = pi (ramified);
/// split and rational contexts only use c0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Res(pub i128, pub i128);

/// The completion of k at one prime ideal above p.
#[derive(Debug, Clone)]
pub struct LocalContext {
    pub field: NumberField,
    pub p: u64,
    pub splitting: Splitting,
    /// ord_v(p)
    pub e_abs: u32,
    /// residue degree
    pub f: u32,
    /// ord_v(2)
    pub e2: u32,
    pub pi: Elem,
    /// working precision in powers of pi
    pub precision: u32,
    /// residue ring is o/p^m_exp
    pub m_exp: u32,
    modulus: Option<i128>,
    /// t^2 = tr·t + nm in the residue basis
    tr: i128,
    nm: i128,
    pub delta: Elem,
    pub rho: Elem,
    unit_squares: HashSet<(i128, i128)>,
}

/// Smallest precision allowed for a context with the given ord_v(2).
pub fn precision_floor(e2: u32) -> u32 {
    2 * e2 + 6
}

/// Precision from QUNIV_PRECISION, never below the floor.
pub fn default_precision(e2: u32) -> u32 {
    let floor = precision_floor(e2);
    std::env::var("QUNIV_PRECISION").ok().and_then(|s| s.trim().parse::<u32>().ok()).map_or(floor, |n| n.max(floor))
}

fn e2_of(field: NumberField, p: u64) -> (Splitting, u32, u32) {
    // returns (kind without root, e_abs, f)
    let Some(d) = field.d() else { return (Splitting::Rational, 1, 1) };
    if p == 2 {
        return match d.rem_euclid(8) {
            2 | 3 | 6 | 7 => (Splitting::Ramified, 2, 1),
            1 => (Splitting::Split { root: 0 }, 1, 1),
            _ => (Splitting::Inert, 1, 2),
        };
    }
    if d % p as i64 == 0 {
        return (Splitting::Ramified, 2, 1);
    }
    if crate::arith::legendre(d as i128, p) == 1 {
        (Splitting::Split { root: 0 }, 1, 1)
    } else {
        (Splitting::Inert, 1, 2)
    }
}

/// The contexts for every prime above p, at the default precision.
pub fn local_contexts_default(field: NumberField, p: u64) -> Result<Vec<LocalContext>> {
    let (_, e_abs, _) = e2_of(field, p);
    let e2 = if p == 2 { e_abs } else { 0 };
    local_contexts(field, p, default_precision(e2))
}

/// The context above p matching `gens` membership is selected by callers; this
/// returns one context per prime ideal above p.
pub fn local_contexts(field: NumberField, p: u64, precision: u32) -> Result<Vec<LocalContext>> {
    if !crate::arith::is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    let (kind, e_abs, f) = e2_of(field, p);
    let e2 = if p == 2 { e_abs } else { 0 };
    if precision < precision_floor(e2) {
        return input(format!("precision {precision} below floor {}", precision_floor(e2)));
    }
    let kinds = match kind {
        Splitting::Split { .. } => {
            let (t, n) = field.omega_relation();
            // roots of X^2 - tX - n mod p
            let r = if p == 2 {
                0
            } else {
                let disc = (t * t + 4 * n) as i128;
                let s = sqrt_mod_prime(disc, p).expect("split prime has a root");
                let inv2 = (p as i128 + 1) / 2;
                ((t as i128 + s) * inv2).rem_euclid(p as i128)
            };
            let r2 = (t as i128 - r).rem_euclid(p as i128);
            vec![Splitting::Split { root: r }, Splitting::Split { root: r2 }]
        }
        k => vec![k],
    };
    kinds.into_iter().map(|k| LocalContext::build(field, p, k, e_abs, f, e2, precision)).collect()
}

impl LocalContext {
    fn build(
        field: NumberField,
        p: u64,
        splitting: Splitting,
        e_abs: u32,
        f: u32,
        e2: u32,
        precision: u32,
    ) -> Result<Self> {
        let pi = match (&splitting, field.d()) {
            (Splitting::Ramified, Some(d)) => {
                if p == 2 && d.rem_euclid(4) == 3 {
                    field.ints(1, 0) + Elem::from_sqrt_d_coords(field, Rational::zero(), int(1))
                } else {
                    Elem::from_sqrt_d_coords(field, Rational::zero(), int(1))
                }
            }
            _ => field.int(p as i64),
        };
        let (tr, nm) = match splitting {
            Splitting::Inert => {
                let (t, n) = field.omega_relation();
                (t as i128, n as i128)
            }
            Splitting::Ramified => {
                // pi^2 = Tr(pi)·pi - N(pi)
                let t = pi.trace().to_integer().to_i128().unwrap();
                let n = pi.norm().to_integer().to_i128().unwrap();
                (t, -n)
            }
            _ => (0, 0),
        };
        let m_exp = precision.div_ceil(e_abs);
        let modulus = checked_pow(p, m_exp);
        let mut ctx = LocalContext {
            field,
            p,
            splitting,
            e_abs,
            f,
            e2,
            pi,
            precision,
            m_exp,
            modulus,
            tr,
            nm,
            delta: field.one(),
            rho: field.zero(),
            unit_squares: HashSet::new(),
        };
        if e2 > 0 {
            ctx.modulus()?;
            ctx.unit_squares = ctx.build_unit_squares()?;
        }
        let (rho, delta) = ctx.find_delta()?;
        ctx.rho = rho;
        ctx.delta = delta;
        Ok(ctx)
    }

    /// The same context at a higher precision.
    pub fn with_precision(&self, precision: u32) -> Result<LocalContext> {
        if precision <= self.precision {
            return Ok(self.clone());
        }
        let mut c =
            LocalContext::build(self.field, self.p, self.splitting.clone(), self.e_abs, self.f, self.e2, precision)?;
        // keep the same Delta so results stay comparable
        c.rho = self.rho.clone();
        c.delta = self.delta.clone();
        Ok(c)
    }

    pub fn is_dyadic(&self) -> bool {
        self.e2 > 0
    }

    /// Number of elements of the residue field.
    pub fn residue_field_size(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// Two generators of the prime ideal.
    pub fn prime_ideal_generators(&self) -> (Elem, Elem) {
        let p = self.field.int(self.p as i64);
        match &self.splitting {
            Splitting::Split { root } => {
                let r = self.field.int(*root as i64);
                (p, &self.field.omega() - &r)
            }
            Splitting::Ramified => (p, self.pi.clone()),
            _ => (p.clone(), p),
        }
    }

    pub fn describe(&self) -> String {
        match &self.splitting {
            Splitting::Rational => format!("{}", self.p),
            Splitting::Split { root } => format!("({},w-{})", self.p, root),
            Splitting::Inert => format!("({})", self.p),
            Splitting::Ramified => format!("({},{})", self.p, self.pi),
        }
    }

    pub(crate) fn modulus(&self) -> Result<i128> {
        self.modulus
            .ok_or_else(|| Error::Precision(format!("residue ring mod {}^{} exceeds 62 bits", self.p, self.m_exp)))
    }

    /// Fails when the working precision is below `n` powers of pi.
    pub fn require(&self, n: u32) -> Result<()> {
        if n > self.precision {
            return Err(Error::Precision(format!(
                "need precision {n} at {} but context has {}",
                self.describe(),
                self.precision
            )));
        }
        self.modulus().map(|_| ())
    }

    // ---------- valuations of global elements ----------

    /// ord_v(x), or None for x = 0.
    pub fn valuation(&self, x: &Elem) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        let p = self.p;
        Some(match &self.splitting {
            Splitting::Rational => crate::arith::ord_p_rat(&x.a, p),
            Splitting::Inert => crate::arith::ord_p_rat(&x.norm(), p) / 2,
            Splitting::Ramified => crate::arith::ord_p_rat(&x.norm(), p),
            Splitting::Split { .. } => {
                let den = x.denominator();
                let t = ord_p_int(&den, p) as i64;
                let y0 = (&x.a * Rational::from_integer(den.clone())).to_integer();
                let y1 = (&x.b * Rational::from_integer(den)).to_integer();
                let ny = &y0 * &y0 + &y0 * &y1 * BigInt::from(self.field.omega_relation().0)
                    - &y1 * &y1 * BigInt::from(self.field.omega_relation().1);
                let bound = ord_p_int(&ny, p) + 1;
                let pk = big(p as i64).pow(bound);
                let r = self.split_root_mod(bound);
                let v = (y0 + y1 * r).mod_floor(&pk);
                ord_p_int(&v, p) as i64 - t
            }
        })
    }

    fn split_root_mod(&self, k: u32) -> BigInt {
        let Splitting::Split { root } = self.splitting else { unreachable!() };
        let (t, n) = self.field.omega_relation();
        let (t, n) = (BigInt::from(t), BigInt::from(n));
        let p = big(self.p as i64);
        let mut r = BigInt::from(root);
        let mut prec = 1u32;
        while prec < k {
            prec = (2 * prec).min(k);
            let m = p.pow(prec);
            let fr = &r * &r - &t * &r - &n;
            let dfr = BigInt::from(2) * &r - &t;
            let inv = dfr.modinv(&m).expect("simple root");
            r = (r - fr * inv).mod_floor(&m);
        }
        r
    }

    // ---------- residue ring ----------

    /// Image of `x` in o/p^m; requires ord_v(x) >= 0.
    pub fn to_residue_mod(&self, x: &Elem, m: u32) -> Result<Res> {
        if let Some(v) = self.valuation(x) {
            if v < 0 {
                return input(format!("{x} is not integral at {}", self.describe()));
            }
        } else {
            return Ok(Res(0, 0));
        }
        let p = big(self.p as i64);
        let pm = p.pow(m);
        let den = x.denominator();
        let t = ord_p_int(&den, self.p);
        let pt = p.pow(t);
        let dprime = &den / &pt;
        let dinv = dprime.modinv(&pm).expect("coprime denominator");
        let y0 = (&x.a * Rational::from_integer(den.clone())).to_integer();
        let y1 = (&x.b * Rational::from_integer(den)).to_integer();
        let fix = |v: BigInt| -> i128 { (v * &dinv).mod_floor(&pm).to_i128().unwrap() };
        Ok(match &self.splitting {
            Splitting::Rational => {
                debug_assert!((&y0 % &pt).is_zero());
                Res(fix(&y0 / &pt), 0)
            }
            Splitting::Split { .. } => {
                let r = self.split_root_mod(m + t);
                let v = (y0 + y1 * r).mod_floor(&p.pow(m + t));
                debug_assert!((&v % &pt).is_zero());
                Res(fix(v / &pt), 0)
            }
            Splitting::Inert => Res(fix(&y0 / &pt), fix(&y1 / &pt)),
            Splitting::Ramified => {
                let (z0, z1) = (&y0 / &pt, &y1 / &pt);
                // w = (pi - pi0)/pi1
                let pi0 = self.pi.a.to_integer();
                let pi1 = self.pi.b.to_integer();
                let inv1 = pi1.modinv(&pm).expect("pi1 unit");
                let c1 = &z1 * &inv1;
                let c0 = z0 - &c1 * pi0;
                Res(fix(c0), fix(c1))
            }
        })
    }

    /// Image of `x` in the working residue ring.
    pub fn to_residue(&self, x: &Elem) -> Result<Res> {
        self.modulus()?;
        self.to_residue_mod(x, self.m_exp)
    }

    /// A global integral element with the given residue.
    pub fn lift(&self, r: Res) -> Elem {
        let k = self.field;
        match &self.splitting {
            Splitting::Inert => Elem::new(k, int_r(r.0), int_r(r.1)),
            Splitting::Ramified => &k.from_rational(int_r(r.0)) + &self.pi.scale(&int_r(r.1)),
            _ => k.from_rational(int_r(r.0)),
        }
    }

    pub fn radd(&self, x: Res, y: Res) -> Res {
        let m = self.modulus.unwrap();
        Res((x.0 + y.0).rem_euclid(m), (x.1 + y.1).rem_euclid(m))
    }

    pub fn rsub(&self, x: Res, y: Res) -> Res {
        let m = self.modulus.unwrap();
        Res((x.0 - y.0).rem_euclid(m), (x.1 - y.1).rem_euclid(m))
    }

    pub fn rneg(&self, x: Res) -> Res {
        let m = self.modulus.unwrap();
        Res((-x.0).rem_euclid(m), (-x.1).rem_euclid(m))
    }

    pub fn rmul(&self, x: Res, y: Res) -> Res {
        let m = self.modulus.unwrap();
        if x.1 == 0 && y.1 == 0 {
            return Res((x.0 * y.0).rem_euclid(m), 0);
        }
        let bb = (x.1 * y.1).rem_euclid(m);
        let c0 = (x.0 * y.0 + (self.nm.rem_euclid(m) * bb).rem_euclid(m)).rem_euclid(m);
        let c1 = ((x.0 * y.1).rem_euclid(m) + (x.1 * y.0).rem_euclid(m) + (self.tr.rem_euclid(m) * bb)).rem_euclid(m);
        Res(c0, c1)
    }

    pub fn rint(&self, n: i128) -> Res {
        Res(n.rem_euclid(self.modulus.unwrap()), 0)
    }

    /// Valuation of a residue, None when it vanishes in the working ring.
    pub fn rval(&self, x: Res) -> Option<u32> {
        let cap = self.m_exp;
        let ordc = |c: i128| -> u32 {
            if c == 0 {
                return cap;
            }
            let mut c = c;
            let mut k = 0;
            while c % self.p as i128 == 0 && k < cap {
                c /= self.p as i128;
                k += 1;
            }
            k
        };
        let (a, b) = (ordc(x.0), ordc(x.1));
        let v = match self.splitting {
            Splitting::Ramified => (2 * a).min(2 * b + 1),
            _ => a.min(b),
        };
        (v < self.precision.min(self.e_abs * cap)).then_some(v)
    }

    /// Canonical key of x modulo p^n (n in powers of pi).
    pub fn rkey(&self, x: Res, n: u32) -> (i128, i128) {
        let p = self.p as i128;
        match self.splitting {
            Splitting::Ramified => (x.0.rem_euclid(p.pow(n.div_ceil(2))), x.1.rem_euclid(p.pow(n / 2))),
            _ => {
                let m = p.pow(n);
                (x.0.rem_euclid(m), x.1.rem_euclid(m))
            }
        }
    }

    /// Representatives of o/p^n.
    pub fn residues_mod(&self, n: u32) -> Vec<Res> {
        let p = self.p as i128;
        let (r0, r1) = match self.splitting {
            Splitting::Ramified => (p.pow(n.div_ceil(2)), p.pow(n / 2)),
            Splitting::Inert => (p.pow(n), p.pow(n)),
            _ => (p.pow(n), 1),
        };
        let mut out = Vec::with_capacity((r0 * r1) as usize);
        for c1 in 0..r1 {
            for c0 in 0..r0 {
                out.push(Res(c0, c1));
            }
        }
        out
    }

    /// Number of elements of o/p^n.
    pub fn count_mod(&self, n: u32) -> u128 {
        (self.residue_field_size() as u128).pow(n)
    }

    pub fn is_unit_res(&self, x: Res) -> bool {
        self.rval(x) == Some(0)
    }

    fn build_unit_squares(&self) -> Result<HashSet<(i128, i128)>> {
        let n = 2 * self.e2 + 1;
        self.modulus()?;
        let mut set = HashSet::new();
        for eta in self.residues_mod(self.e2 + 1) {
            if self.is_unit_res(eta) {
                set.insert(self.rkey(self.rmul(eta, eta), n));
            }
        }
        Ok(set)
    }

    /// Whether a unit residue is a square modulo p^(2e2+1), hence a square.
    pub(crate) fn unit_res_is_square(&self, u: Res) -> bool {
        if self.e2 == 0 {
            return self.chi_res(u) == 1;
        }
        self.unit_squares.contains(&self.rkey(u, 2 * self.e2 + 1))
    }

    /// Quadratic character of the residue field applied to a residue.
    pub(crate) fn chi_res(&self, u: Res) -> i8 {
        let p = self.p as i128;
        let (a, b) = (u.0.rem_euclid(p), u.1.rem_euclid(p));
        let n = match self.splitting {
            Splitting::Inert => a * a + self.tr * a * b - self.nm * b * b,
            _ => a,
        };
        crate::arith::legendre(n, self.p)
    }

    /// Quadratic character of the residue field on a global unit.
    pub fn chi(&self, u: &Elem) -> Result<i8> {
        Ok(self.chi_res(self.to_residue_mod(u, 1)?))
    }

    fn find_delta(&self) -> Result<(Elem, Elem)> {
        let k = self.field;
        let mut cands = Vec::new();
        if self.e2 == 0 {
            let bmax = if k.degree() == 2 { 1 } else { 0 };
            for b in 0..=bmax {
                for a in 0..(self.p as i64).min(1 << 20) {
                    cands.push((a, b));
                }
            }
        }
        for s in 0i64..=8 {
            for a in (0..=s).flat_map(|a| [a, -a]).skip(1) {
                let b = s - a.abs();
                cands.push((a, b));
                if b != 0 && k.degree() == 2 {
                    cands.push((a, -b));
                }
            }
        }
        for (a, b) in cands {
            if k.degree() == 1 && b != 0 {
                continue;
            }
            let rho = k.ints(a, b);
            let delta = &k.one() + &rho.scale(&int(4));
            if self.valuation(&delta) != Some(0) {
                continue;
            }
            let found = if self.e2 == 0 {
                self.chi(&delta)? == -1
            } else {
                unit_defect_exponent(self, self.to_residue(&delta)?) == Some(2 * self.e2)
            };
            if found {
                return Ok((rho, delta));
            }
        }
        Err(Error::Unsupported(format!("no Delta found at {}", self.describe())))
    }

    /// x / pi^v as a global element.
    pub fn strip_pi(&self, x: &Elem, v: i64) -> Elem {
        if v >= 0 {
            x / &self.pi.pow(v as u32)
        } else {
            x * &self.pi.pow((-v) as u32)
        }
    }
}

fn int_r(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn checked_pow(p: u64, m: u32) -> Option<i128> {
    let mut r: i128 = 1;
    for _ in 0..m {
        r = r.checked_mul(p as i128)?;
        if r > (1i128 << 62) {
            return None;
        }
    }
    Some(r)
}
