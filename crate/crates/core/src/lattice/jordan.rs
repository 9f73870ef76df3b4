use super::LocalLattice;
use crate::error::{input, Error, Result};
use crate::field::Elem;
use crate::localfield::{unit_defect_exponent, LocalContext, Res};
use serde::Serialize;

/// One Jordan component: a basis (coordinates in the local lattice's basis)
/// whose Gram matrix is pi^scale times a unimodular matrix.
#[derive(Debug, Clone)]
pub struct JordanComponent {
    pub scale: i64,
    pub norm: i64,
    pub basis: Vec<Vec<Elem>>,
    pub gram: Vec<Vec<Elem>>,
}

impl JordanComponent {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Gram matrix divided by pi^scale.
    pub fn rescaled(&self, ctx: &LocalContext) -> Vec<Vec<Elem>> {
        self.gram.iter().map(|r| r.iter().map(|e| ctx.strip_pi(e, self.scale)).collect()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct JordanSplitting {
    pub components: Vec<JordanComponent>,
    /// false when the splitting is not guaranteed to have minimal norms
    pub minimal: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct JordanSummary {
    pub scales: Vec<i64>,
    pub ranks: Vec<usize>,
    pub norms: Vec<i64>,
}

impl JordanSplitting {
    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.rank()).collect()
    }

    pub fn scales(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.scale).collect()
    }

    pub fn norms(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.norm).collect()
    }

    pub fn summary(&self) -> JordanSummary {
        JordanSummary { scales: self.scales(), ranks: self.ranks(), norms: self.norms() }
    }

    /// i(L): the last component whose norm equals the norm of L (1-based).
    pub fn index_il(&self) -> usize {
        let n = self.norms().into_iter().min().unwrap();
        self.components.iter().rposition(|c| c.norm == n).unwrap() + 1
    }

    /// All basis vectors in component order.
    pub fn transform(&self) -> Vec<Vec<Elem>> {
        self.components.iter().flat_map(|c| c.basis.iter().cloned()).collect()
    }

    /// U^T G U equals the block-diagonal assembly and det U is a unit.
    pub fn verify(&self, lv: &LocalLattice) -> bool {
        let u = self.transform();
        let n = lv.rank();
        if u.len() != n {
            return false;
        }
        let mut offset = 0;
        let mut block = vec![vec![lv.ctx.field.zero(); n]; n];
        for c in &self.components {
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    block[offset + i][offset + j] = c.gram[i][j].clone();
                }
            }
            offset += c.rank();
        }
        for i in 0..n {
            for j in 0..n {
                if bilinear(&lv.gram, &u[i], &u[j]) != block[i][j] {
                    return false;
                }
            }
        }
        let integral = u.iter().flatten().all(|e| lv.ctx.valuation(e).is_none_or(|v| v >= 0));
        integral && lv.ctx.valuation(&super::det(&u)) == Some(0)
    }
}

pub(crate) fn bilinear(g: &[Vec<Elem>], x: &[Elem], y: &[Elem]) -> Elem {
    let k = g[0][0].field;
    let mut s = k.zero();
    for i in 0..g.len() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..g.len() {
            if y[j].is_zero() || g[i][j].is_zero() {
                continue;
            }
            s = &s + &(&(&x[i] * &g[i][j]) * &y[j]);
        }
    }
    s
}

fn axpy(x: &[Elem], c: &Elem, y: &[Elem]) -> Vec<Elem> {
    x.iter().zip(y).map(|(a, b)| a + &(c * b)).collect()
}

fn gram_of(g: &[Vec<Elem>], basis: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    basis.iter().map(|u| basis.iter().map(|v| bilinear(g, u, v)).collect()).collect()
}

fn component(lv: &LocalLattice, scale: i64, basis: Vec<Vec<Elem>>) -> JordanComponent {
    let gram = gram_of(&lv.gram, &basis);
    let ctx = &lv.ctx;
    let diag = (0..basis.len()).filter_map(|i| ctx.valuation(&gram[i][i]));
    let norm = diag.fold(scale + ctx.e2 as i64, i64::min);
    JordanComponent { scale, norm, basis, gram }
}

/// Jordan splitting by greedy pivoting on an entry of least valuation.
pub fn jordan_split(lv: &LocalLattice) -> Result<JordanSplitting> {
    let n = lv.rank();
    let ctx = &lv.ctx;
    let k = ctx.field;
    if super::det(&lv.gram).is_zero() {
        return input("degenerate lattice");
    }
    let mut vecs: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| k.int(i64::from(i == j))).collect()).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut pivots: Vec<(i64, Vec<usize>)> = Vec::new();
    while !alive.is_empty() {
        let g = |a: usize, b: usize, vecs: &Vec<Vec<Elem>>| bilinear(&lv.gram, &vecs[a], &vecs[b]);
        let mut best: Option<(i64, usize, usize)> = None;
        for (ai, &i) in alive.iter().enumerate() {
            for &j in &alive[ai..] {
                if let Some(v) = ctx.valuation(&g(i, j, &vecs)) {
                    let better = match best {
                        None => true,
                        Some((bv, bi, bj)) => v < bv || (v == bv && bi != bj && i == j),
                    };
                    if better {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((s, i, j)) = best else {
            return input("degenerate lattice");
        };
        let pivot: Vec<usize> = if i == j {
            vec![i]
        } else if !ctx.is_dyadic() {
            // Q(x_i + x_j) has valuation s
            vecs[i] = axpy(&vecs[i], &k.one(), &vecs[j]);
            vec![i]
        } else {
            vec![i, j]
        };
        let pg: Vec<Vec<Elem>> = pivot.iter().map(|&a| pivot.iter().map(|&b| g(a, b, &vecs)).collect()).collect();
        let pinv = invert_small(&pg);
        let rest: Vec<usize> = alive.iter().copied().filter(|x| !pivot.contains(x)).collect();
        for &r in &rest {
            let rhs: Vec<Elem> = pivot.iter().map(|&a| g(a, r, &vecs)).collect();
            let mut v = vecs[r].clone();
            for (pi, &a) in pivot.iter().enumerate() {
                let c = (0..pivot.len()).fold(k.zero(), |acc, q| &acc + &(&pinv[pi][q] * &rhs[q]));
                v = axpy(&v, &-c, &vecs[a]);
            }
            vecs[r] = v;
        }
        alive.retain(|x| !pivot.contains(x));
        pivots.push((s, pivot));
    }
    let mut components: Vec<JordanComponent> = Vec::new();
    let mut cur: Option<(i64, Vec<Vec<Elem>>)> = None;
    for (s, p) in pivots {
        let vs: Vec<Vec<Elem>> = p.iter().map(|&a| vecs[a].clone()).collect();
        match &mut cur {
            Some((cs, b)) if *cs == s => b.extend(vs),
            _ => {
                if let Some((cs, b)) = cur.take() {
                    components.push(component(lv, cs, b));
                }
                cur = Some((s, vs));
            }
        }
    }
    let (cs, b) = cur.unwrap();
    components.push(component(lv, cs, b));
    Ok(JordanSplitting { components, minimal: !ctx.is_dyadic() || n <= 1 })
}

fn invert_small(m: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    if m.len() == 1 {
        return vec![vec![m[0][0].inv()]];
    }
    let d = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    let di = d.inv();
    vec![vec![&m[1][1] * &di, -(&m[0][1] * &di)], vec![-(&m[1][0] * &di), &m[0][0] * &di]]
}

/// Orders defects so that larger is better; squares rank highest.
/// Improves a dyadic splitting of rank at most 3 towards minimal norms.
///
/// For a splitting L1 ⊥ <u> with L1 binary, the leading component is replaced
/// by span(x + a·u, y + b·u) over a, b modulo p^(2e2+1), keeping the one with
/// the smallest norm ideal and then the smallest defect of
/// -pi^(-2 s1)·det(L1). This covers the basis changes y -> y + c·u used to
/// shrink that defect. Other shapes of rank <= 3 have no freedom in their
/// component norms; rank >= 4 is returned unchanged and flagged.
pub fn minimal_norm_refine(split: &JordanSplitting, lv: &LocalLattice) -> Result<JordanSplitting> {
    let ctx = &lv.ctx;
    if !ctx.is_dyadic() {
        return input("minimal norm refinement is only defined at dyadic places");
    }
    if lv.rank() > 3 {
        return Ok(JordanSplitting { minimal: false, ..split.clone() });
    }
    if split.ranks() != [2, 1] {
        return Ok(JordanSplitting { minimal: true, ..split.clone() });
    }
    let l1 = &split.components[0];
    let l2 = &split.components[1];
    let (x, y, u) = (&l1.basis[0], &l1.basis[1], &l2.basis[0]);
    let s1 = l1.scale;
    // pi^(-s1)-scaled Gram entries as residues; x, y are orthogonal to u
    let res = |e: &Elem| ctx.to_residue(&ctx.strip_pi(e, s1));
    let qx = res(&bilinear(&lv.gram, x, x))?;
    let qy = res(&bilinear(&lv.gram, y, y))?;
    let bxy = res(&bilinear(&lv.gram, x, y))?;
    let qu = res(&bilinear(&lv.gram, u, u))?;
    let two = ctx.rint(2);
    let cap = ctx.e2;
    // (norm exponent, defect rank) of span(x + a·u, y + b·u); None when that
    // span is not a component of scale s1
    let score = |a: Res, b: Res| -> Option<(i64, i64)> {
        let q1 = ctx.radd(qx, ctx.rmul(ctx.rmul(a, a), qu));
        let q2 = ctx.radd(qy, ctx.rmul(ctx.rmul(b, b), qu));
        let m = ctx.radd(bxy, ctx.rmul(ctx.rmul(a, b), qu));
        let t = ctx.rsub(ctx.rmul(m, m), ctx.rmul(q1, q2));
        if ctx.rval(t) != Some(0) {
            return None;
        }
        let ord = |r: Res| ctx.rval(r).unwrap_or(cap).min(cap);
        let norm = ord(q1).min(ord(q2)).min(ord(ctx.rmul(two, m)));
        let defect = unit_defect_exponent(ctx, t).map_or(i64::MAX, i64::from);
        Some((s1 + norm as i64, defect))
    };
    let zero = Res(0, 0);
    let mut best = score(zero, zero).ok_or_else(|| Error::Precision("leading component is not modular".into()))?;
    let mut best_ab = (zero, zero);
    let reps = ctx.residues_mod(2 * ctx.e2 + 1);
    for &a in &reps {
        for &b in &reps {
            if let Some(sc) = score(a, b) {
                if sc > best {
                    best = sc;
                    best_ab = (a, b);
                }
            }
        }
    }
    let best_basis = vec![axpy(x, &ctx.lift(best_ab.0), u), axpy(y, &ctx.lift(best_ab.1), u)];
    // orthogonal complement of the new leading component
    let g1 = gram_of(&lv.gram, &best_basis);
    let inv = invert_small(&g1);
    let rhs: Vec<Elem> = best_basis.iter().map(|v| bilinear(&lv.gram, u, v)).collect();
    let mut u2 = u.clone();
    for i in 0..2 {
        let c = (0..2).fold(ctx.field.zero(), |acc, q| &acc + &(&inv[i][q] * &rhs[q]));
        u2 = axpy(&u2, &-c, &best_basis[i]);
    }
    let c1 = component(lv, s1, best_basis);
    let c2 = component(lv, l2.scale, vec![u2]);
    if c2.norm != l2.norm {
        return Err(Error::Precision("refinement changed the second component".into()));
    }
    Ok(JordanSplitting { components: vec![c1, c2], minimal: true })
}

/// For a unimodular dyadic lattice: (ord w(L), ord m(L)), where the norm
/// group g(L) = Q(L) + 2o and m(L) is the largest ideal inside it.
pub fn weight_and_norm_group(lv: &LocalLattice) -> Result<(i64, i64)> {
    let ctx = &lv.ctx;
    if !ctx.is_dyadic() {
        return input("weight is computed at dyadic places only");
    }
    if !lv.is_unimodular() {
        return input("weight_and_norm_group needs a unimodular lattice");
    }
    let e2 = ctx.e2;
    let n = lv.rank();
    let g: Vec<Vec<_>> = lv
        .gram
        .iter()
        .map(|r| r.iter().map(|e| ctx.to_residue(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let two = ctx.rint(2);
    // Q(x) mod 2 depends on x mod p^e2
    let reps = ctx.residues_mod(e2);
    let mut values = std::collections::BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let x: Vec<_> = idx.iter().map(|&i| reps[i]).collect();
        let mut q = ctx.rint(0);
        for i in 0..n {
            q = ctx.radd(q, ctx.rmul(g[i][i], ctx.rmul(x[i], x[i])));
            for j in i + 1..n {
                q = ctx.radd(q, ctx.rmul(two, ctx.rmul(g[i][j], ctx.rmul(x[i], x[j]))));
            }
        }
        values.insert(ctx.rkey(q, e2));
        // next index
        let mut p = 0;
        loop {
            if p == n {
                return finish(ctx, values);
            }
            idx[p] += 1;
            if idx[p] < reps.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

fn finish(ctx: &LocalContext, values: std::collections::BTreeSet<(i128, i128)>) -> Result<(i64, i64)> {
    let e2 = ctx.e2;
    // additive closure inside o / p^e2
    let key = |r| ctx.rkey(r, e2);
    let mut group: std::collections::BTreeSet<(i128, i128)> = [(0, 0)].into_iter().collect();
    let gens: Vec<_> = values.into_iter().collect();
    loop {
        let mut added = false;
        let cur: Vec<_> = group.iter().copied().collect();
        for a in &cur {
            for g in &gens {
                let s = key(ctx.radd(crate::localfield::Res(a.0, a.1), crate::localfield::Res(g.0, g.1)));
                added |= group.insert(s);
            }
        }
        if !added {
            break;
        }
    }
    let mut m = e2 as i64;
    for j in 0..e2 {
        let pj = ctx.to_residue(&ctx.pi.pow(j))?;
        let all = ctx.residues_mod(e2 - j).into_iter().all(|r| group.contains(&key(ctx.rmul(pj, r))));
        if all {
            m = j as i64;
            break;
        }
    }
    Ok(((m + 1).min(e2 as i64), m))
}
