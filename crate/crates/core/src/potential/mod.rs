//! Potential universality: universality after a finite extension of the
//! ground field, decided by the norm ideal, with the explicit identities
//! behind it checked in exact radical extensions.

pub mod certificate;
pub mod ring;

pub use certificate::{unit_shift_certificate, UnitShiftCertificate};
pub use ring::{RElem, RadicalRing};

use crate::arith::int;
use crate::error::{input, Error, Result};
use crate::field::{Elem, NumberField};
use crate::lattice::QuadLattice;
use serde_json::{json, Value};

/// A lattice of rank at least 2 is potentially universal iff n(L) = o.
pub fn is_potentially_universal(l: &QuadLattice) -> Result<bool> {
    if l.rank() < 2 {
        return input("potential universality needs rank at least 2; a rank-1 lattice only represents a·x^2");
    }
    Ok(l.norm_ideal().is_unit_ideal())
}

/// alpha = X^2 + delta Y^2 over an explicit ring.
#[derive(Debug, Clone)]
pub struct PotentialWitness {
    pub ring: RadicalRing,
    pub alpha: Elem,
    pub delta: Elem,
    pub x: RElem,
    pub y: RElem,
    pub rho: Option<RElem>,
    /// X = sqrt(alpha), Y = 0, used when rho is not integral
    pub fallback: bool,
}

impl PotentialWitness {
    pub fn verify(&self) -> bool {
        let r = &self.ring;
        let lhs = r.add(&r.mul(&self.x, &self.x), &r.scale(&r.mul(&self.y, &self.y), &self.delta));
        lhs == r.from_base(&self.alpha)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha.to_json_string(),
            "delta": self.delta.to_json_string(),
            "radicands": self.ring.radicands.iter().map(Elem::to_json_string).collect::<Vec<_>>(),
            "X": self.ring.format(&self.x),
            "Y": self.ring.format(&self.y),
            "rho": self.rho.as_ref().map(|r| self.ring.format(r)),
            "fallback": self.fallback,
            "verified": self.verify(),
        })
    }
}

/// With rho = (alpha - 1)/(2 sqrt delta): X = 1 + sqrt(delta) rho and
/// Y = sqrt(-1) rho when rho is integral, else X = sqrt(alpha), Y = 0.
pub fn potential_witness(alpha: &Elem, delta: &Elem) -> Result<PotentialWitness> {
    if delta.is_zero() {
        return input("delta must be nonzero");
    }
    if alpha.is_zero() {
        return input("alpha must be nonzero");
    }
    let k = alpha.field;
    let mut r = RadicalRing::new(k);
    let sd = r.adjoin_sqrt(delta)?;
    // rho = q sqrt(delta) with q = (alpha - 1)/(2 delta); integral iff its
    // trace 0 and norm -delta q^2 are
    let q = &(alpha - &k.one()) / &delta.scale(&int(2));
    let integral = match r.to_base(&sd) {
        Some(s) => (&q * &s).is_integral(),
        None => (&(&q * &q) * delta).is_integral(),
    };
    let w = if integral {
        let rho = r.scale(&sd, &q);
        let si = r.adjoin_sqrt(&k.int(-1))?;
        let (sd, rho) = (r.lift(&sd)?, r.lift(&rho)?);
        let x = r.add(&r.one(), &r.mul(&sd, &rho));
        let y = r.mul(&si, &rho);
        PotentialWitness { ring: r, alpha: alpha.clone(), delta: delta.clone(), x, y, rho: Some(rho), fallback: false }
    } else {
        let mut r = RadicalRing::new(k);
        let x = r.adjoin_sqrt(alpha)?;
        let y = r.zero();
        PotentialWitness { ring: r, alpha: alpha.clone(), delta: delta.clone(), x, y, rho: None, fallback: true }
    };
    if !w.verify() {
        return Err(Error::Unsupported(format!("witness for ({alpha}, {delta}) failed to verify")));
    }
    Ok(w)
}

/// x = prod b_i^{r_i} (1 + 2 rho sqrt(delta)) in an explicit ring.
#[derive(Debug, Clone)]
pub struct PotentialDecomposition {
    pub ring: RadicalRing,
    pub x: Elem,
    pub delta: Elem,
    pub sqrt_delta: RElem,
    pub b_list: Vec<(RElem, u32)>,
    pub rho: RElem,
}

impl PotentialDecomposition {
    pub fn to_json(&self) -> Value {
        let r = &self.ring;
        json!({
            "x": self.x.to_json_string(),
            "delta": self.delta.to_json_string(),
            "b": self.b_list.iter().map(|(b, e)| json!({"b": r.format(b), "r": e})).collect::<Vec<_>>(),
            "rho": r.format(&self.rho),
        })
    }
}

pub fn verify_decomposition(dec: &PotentialDecomposition) -> Result<bool> {
    let r = &dec.ring;
    let sd = r.checked_mul(&dec.sqrt_delta, &r.one())?;
    let rho = r.checked_mul(&dec.rho, &r.one())?;
    if r.mul(&sd, &sd) != r.from_base(&dec.delta) {
        return Ok(false);
    }
    let mut prod = r.one();
    for (b, e) in &dec.b_list {
        prod = r.checked_mul(&prod, &r.pow(b, *e))?;
    }
    let tail = r.add(&r.one(), &r.scale(&r.mul(&rho, &sd), &dec.x.field.int(2)));
    Ok(r.mul(&prod, &tail) == r.from_base(&dec.x))
}

/// The decomposition over Q with delta = -1: Z[i] has class number 1, unit
/// group <i> and one prime 1 + i above 2i, so x = (1+i)^l i^c (1 + 2 rho i).
pub fn gaussian_decomposition(x: &Elem) -> Result<PotentialDecomposition> {
    if x.field != NumberField::Rational || !x.is_integral() || x.is_zero() {
        return input("x must be a nonzero rational integer");
    }
    let g = NumberField::imag_quad(-1)?;
    let i = g.omega();
    let pi = g.ints(1, 1);
    let mut z = g.from_rational(x.a.clone());
    let mut l = 0u32;
    while (&z / &pi).is_integral() {
        z = &z / &pi;
        l += 1;
    }
    let two_i = i.scale(&int(2));
    let (c, rho) = (0..4u32)
        .map(|c| (c, &(&(&z / &i.pow(c)) - &g.one()) / &two_i))
        .find(|(_, rho)| rho.is_integral())
        .expect("odd Gaussian integers are 1 or i mod 2");
    let q = NumberField::Rational;
    let mut ring = RadicalRing::new(q);
    let sd = ring.adjoin_sqrt(&q.int(-1))?;
    let embed = |e: &Elem| RElem { coeffs: vec![q.from_rational(e.a.clone()), q.from_rational(e.b.clone())] };
    Ok(PotentialDecomposition {
        x: x.clone(),
        delta: q.int(-1),
        sqrt_delta: sd,
        b_list: vec![(embed(&pi), l), (embed(&i), c)],
        rho: embed(&rho),
        ring,
    })
}

/// After base change to Q(sqrt t), t < 0 squarefree: whether the norm ideal
/// is still the unit ideal, computed over the larger ring.
pub fn base_change_stability(l: &QuadLattice, t: i64) -> Result<bool> {
    if l.field != NumberField::Rational {
        return Err(Error::Unsupported("base change is supported from Q only".into()));
    }
    if l.coeff_ideals.is_some() {
        return Err(Error::Unsupported("base change needs a free lattice".into()));
    }
    let big = NumberField::imag_quad(t)
        .map_err(|_| Error::Unsupported(format!("Q(sqrt {t}) is not an imaginary quadratic field")))?;
    let gram = l.gram.iter().map(|row| row.iter().map(|e| big.from_rational(e.a.clone())).collect()).collect();
    let lk = QuadLattice::new(big, gram)?;
    is_potentially_universal(&lk)
}
