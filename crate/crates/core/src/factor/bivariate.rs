//! Bivariate factorization over `F_q`: evaluation at a good point, x-adic
//! Hensel lifting of the univariate factorization, and subset recombination
//! with exact trial division. Points are searched in `F_q` first and then in
//! extensions, in which case factors are descended by Frobenius orbits.

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::finitefield::{FieldDescriptor, FieldEmbedding};
use crate::upoly::{self, UPoly};

use super::FactorConfig;

/// Mutable bookkeeping shared across one factorization call.
pub(crate) struct Ctx {
    pub seed: u64,
    pub probes: u64,
    pub max_probes: u64,
    pub max_extension: u32,
}

impl Ctx {
    pub fn new(cfg: &FactorConfig) -> Self {
        Ctx { seed: cfg.seed, probes: 0, max_probes: cfg.max_subset_probes, max_extension: cfg.max_extension_degree }
    }
}

/// Power series in `x` with polynomial-in-`y` coefficients: `s[k]` is the
/// coefficient of `x^k`.
type Series = Vec<UPoly>;

const POINT_SEARCH_LIMIT: u64 = 4096;
const EXTRA_SIEVE_POINTS: usize = 4;

/// Irreducible factors (up to scalars) of a nonzero squarefree polynomial.
pub(crate) fn factor_squarefree(g: &BiPoly, ctx: &mut Ctx) -> Result<Vec<BiPoly>> {
    let f = g.field.clone();
    let mut out = Vec::new();
    if g.total_degree() == 0 {
        return Ok(out);
    }
    let cx = g.content_x();
    if upoly::degree(&cx).unwrap_or(0) > 0 {
        for (u, _) in upoly::factor(&f, &cx, ctx.seed).1 {
            out.push(BiPoly::from_x(&f, u));
        }
    }
    let g = g.div_x(&cx).expect("content divides");
    let sw = g.swap();
    let cy = sw.content_x();
    if upoly::degree(&cy).unwrap_or(0) > 0 {
        for (u, _) in upoly::factor(&f, &cy, ctx.seed).1 {
            out.push(BiPoly::from_y(&f, &u));
        }
    }
    let g = sw.div_x(&cy).expect("content divides").swap();
    if g.total_degree() == 0 {
        return Ok(out);
    }
    // Both degrees are now positive (a primitive polynomial free of one
    // variable would be constant).
    let gy = g.derivative_y();
    if !gy.is_zero() {
        // factors with vanishing y-derivative are split off and handled in
        // the other orientation
        let insep = g.gcd(&gy);
        if insep.total_degree() > 0 {
            let sep = g.exact_div(&insep).expect("gcd divides");
            out.extend(factor_squarefree(&insep, ctx)?);
            out.extend(factor_squarefree(&sep, ctx)?);
            return Ok(out);
        }
    }
    let swapped = g.swap();
    let use_swap = if gy.is_zero() {
        true
    } else if swapped.derivative_y().is_zero() {
        false
    } else {
        let lc_deg = upoly::degree(&g.lc_y()).unwrap_or(0);
        let lc_deg_sw = upoly::degree(&swapped.lc_y()).unwrap_or(0);
        (lc_deg_sw, swapped.deg_y()) < (lc_deg, g.deg_y())
    };
    let h = if use_swap { swapped } else { g };
    let parts = factor_primitive(&h, ctx)?;
    out.extend(parts.into_iter().map(|p| if use_swap { p.swap() } else { p }));
    Ok(out)
}

fn is_good_point(h: &BiPoly, c: u64) -> bool {
    let f = &h.field;
    if upoly::eval(f, &h.lc_y(), c) == 0 {
        return false;
    }
    let u = h.eval_x(c);
    let du = upoly::derivative(f, &u);
    !du.is_empty() && upoly::degree(&upoly::gcd(f, &u, &du)) == Some(0)
}

fn good_points(h: &BiPoly, want: usize) -> Vec<u64> {
    h.field.elements().take(POINT_SEARCH_LIMIT as usize).filter(|&c| is_good_point(h, c)).take(want).collect()
}

fn factor_primitive(h: &BiPoly, ctx: &mut Ctx) -> Result<Vec<BiPoly>> {
    let pts = good_points(h, 1 + EXTRA_SIEVE_POINTS);
    if !pts.is_empty() {
        return hensel_factor(h, &pts, ctx);
    }
    let f = &h.field;
    for j in 2..=ctx.max_extension {
        let Ok(emb) = f.extension(j) else { break };
        let hb = h.embed(&emb);
        let pts = good_points(&hb, 1 + EXTRA_SIEVE_POINTS);
        if pts.is_empty() {
            continue;
        }
        let parts = hensel_factor(&hb, &pts, ctx)?;
        return Ok(descend(parts, &emb));
    }
    Err(Error::ResourceLimit(format!(
        "no separable specialization found up to extension degree {} of {f}",
        ctx.max_extension
    )))
}

/// Groups factors over the extension into Frobenius orbits and descends
/// each orbit product.
fn descend(parts: Vec<BiPoly>, emb: &FieldEmbedding) -> Vec<BiPoly> {
    let big = emb.target();
    let q = emb.source().order();
    let parts: Vec<BiPoly> = parts.into_iter().map(|p| p.monic()).collect();
    let mut used = vec![false; parts.len()];
    let mut out = Vec::new();
    for i in 0..parts.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut prod = parts[i].clone();
        let mut cur = parts[i].map_coefficients(|c| big.pow(c, q));
        while cur != parts[i] {
            let j = (0..parts.len())
                .find(|&j| !used[j] && parts[j] == cur)
                .expect("Frobenius permutes the factors");
            used[j] = true;
            prod = prod.mul(&parts[j]);
            cur = cur.map_coefficients(|c| big.pow(c, q));
        }
        out.push(prod.descend(emb).expect("orbit products are defined over the base field"));
    }
    out
}

fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn hensel_factor(h: &BiPoly, pts: &[u64], ctx: &mut Ctx) -> Result<Vec<BiPoly>> {
    let f = h.field.clone();
    let c = pts[0];
    let n = h.deg_y().expect("nonzero");
    let hs = h.shift_x(c);
    let u0 = hs.eval_x(0);
    let (_, ufs) = upoly::factor(&f, &u0, ctx.seed);
    let ufs: Vec<UPoly> = ufs.into_iter().map(|(u, _)| u).collect();
    if ufs.len() == 1 {
        return Ok(vec![h.clone()]);
    }
    // Degree sieve: a true factor's y-degree is a subset sum at every point.
    let degs: Vec<usize> = ufs.iter().map(|u| upoly::degree(u).unwrap()).collect();
    let mut allowed = subset_sums(&degs, n);
    for &c2 in &pts[1..] {
        let u = h.eval_x(c2);
        let dd: Vec<usize> = upoly::distinct_degree(&f, &u)
            .into_iter()
            .flat_map(|(block, d)| std::iter::repeat(d).take(upoly::degree(&block).unwrap() / d))
            .collect();
        let other = subset_sums(&dd, n);
        for (a, b) in allowed.iter_mut().zip(other) {
            *a = *a && b;
        }
    }
    if !(1..n).any(|s| allowed[s]) {
        return Ok(vec![h.clone()]);
    }
    let lc = hs.lc_y();
    let prec = hs.deg_x() + upoly::degree(&lc).unwrap_or(0) + 1;
    let lifted = lift(&hs, &ufs, prec);
    let parts = recombine(&hs, lifted, prec, &allowed, ctx)?;
    let neg = f.neg(c);
    Ok(parts.into_iter().map(|p| p.shift_x(neg)).collect())
}

/// Truncated inverse of `a` (with `a(0) != 0`) modulo `x^k`.
fn series_inverse(f: &FieldDescriptor, a: &[u64], k: usize) -> UPoly {
    let inv0 = f.inv(a[0]);
    let mut out = vec![0u64; k];
    out[0] = inv0;
    for i in 1..k {
        let mut s = 0u64;
        for j in 1..=i.min(a.len() - 1) {
            s = f.add(s, f.mul(a[j], out[i - j]));
        }
        out[i] = f.neg(f.mul(s, inv0));
    }
    out
}

/// Lifts `H = hs / lc(hs)` (monic in `y`) to a product of monic series
/// factors congruent to `ufs` modulo `x`.
fn lift(hs: &BiPoly, ufs: &[UPoly], prec: usize) -> Vec<Series> {
    let f = &hs.field;
    let linv = series_inverse(f, &hs.lc_y(), prec);
    let hx = hs.swap(); // rows indexed by powers of x
    let mut big: Series = vec![Vec::new(); prec];
    for (i, row) in hx.rows.iter().enumerate().take(prec) {
        for (j, &l) in linv.iter().enumerate().take(prec - i) {
            if l != 0 && !row.is_empty() {
                big[i + j] = upoly::add(f, &big[i + j], &upoly::scale(f, l, row));
            }
        }
    }
    lift_rec(f, &big, ufs, prec)
}

fn lift_rec(f: &FieldDescriptor, big: &Series, ufs: &[UPoly], prec: usize) -> Vec<Series> {
    if ufs.len() == 1 {
        return vec![big.clone()];
    }
    let mid = ufs.len() / 2;
    let g0 = ufs[..mid].iter().fold(vec![1u64], |acc, u| upoly::mul(f, &acc, u));
    let f0 = ufs[mid..].iter().fold(vec![1u64], |acc, u| upoly::mul(f, &acc, u));
    let (gs, fs) = lift_two(f, big, &g0, &f0, prec);
    let mut out = lift_rec(f, &gs, &ufs[..mid], prec);
    out.extend(lift_rec(f, &fs, &ufs[mid..], prec));
    out
}

/// Linear Hensel lifting of `big ≡ g0 f0 (mod x)` to precision `prec`.
fn lift_two(f: &FieldDescriptor, big: &Series, g0: &[u64], f0: &[u64], prec: usize) -> (Series, Series) {
    let (one, _s, t) = upoly::xgcd(f, g0, f0);
    debug_assert_eq!(one, vec![1]);
    let mut gs: Series = vec![g0.to_vec()];
    let mut fs: Series = vec![f0.to_vec()];
    for k in 1..prec {
        let mut e = big[k].clone();
        for i in 1..k {
            let (a, b) = (&gs[i], &fs[k - i]);
            if !a.is_empty() && !b.is_empty() {
                e = upoly::sub(f, &e, &upoly::mul(f, a, b));
            }
        }
        // remaining unknowns: e = g_0 f_k + f_0 g_k
        let dg = upoly::rem(f, &upoly::mul(f, &t, &e), g0);
        let rest = upoly::sub(f, &e, &upoly::mul(f, f0, &dg));
        let df = upoly::exact_div(f, &rest, g0).expect("Bezout identity");
        gs.push(dg);
        fs.push(df);
    }
    (gs, fs)
}

fn series_mul(f: &FieldDescriptor, a: &Series, b: &Series, prec: usize) -> Series {
    let mut out: Series = vec![Vec::new(); prec];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_empty() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(prec - i) {
            if !bj.is_empty() {
                out[i + j] = upoly::add(f, &out[i + j], &upoly::mul(f, ai, bj));
            }
        }
    }
    out
}

/// Truncated product of univariate series.
fn useries_mul(f: &FieldDescriptor, a: &[u64], b: &[u64], prec: usize) -> UPoly {
    let mut out = vec![0u64; prec.min(a.len() + b.len())];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(prec.saturating_sub(i)) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    upoly::trimmed(out)
}

fn constant_series(s: &Series) -> UPoly {
    upoly::trimmed(s.iter().map(|r| r.first().copied().unwrap_or(0)).collect())
}

fn series_to_bipoly(f: &FieldDescriptor, s: &Series) -> BiPoly {
    BiPoly::new(f, s.clone()).swap()
}

fn recombine(hs: &BiPoly, mut pool: Vec<Series>, prec: usize, allowed: &[bool], ctx: &mut Ctx) -> Result<Vec<BiPoly>> {
    let f = hs.field.clone();
    let mut cur = hs.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let degs: Vec<usize> = pool.iter().map(|s| upoly::degree(&s[0]).unwrap()).collect();
        let consts: Vec<UPoly> = pool.iter().map(constant_series).collect();
        let lc = cur.lc_y();
        let target0 = upoly::mul(&f, &lc, &cur.eval_y0());
        let mut found: Option<(Vec<usize>, BiPoly, BiPoly)> = None;
        let mut idx: Vec<usize> = (0..size).collect();
        'combos: loop {
            ctx.probes += 1;
            if ctx.probes > ctx.max_probes {
                return Err(Error::ResourceLimit(format!(
                    "recombination exceeded {} subset probes",
                    ctx.max_probes
                )));
            }
            let dsum: usize = idx.iter().map(|&i| degs[i]).sum();
            if allowed[dsum] {
                let c0 = idx.iter().fold(lc.clone(), |acc, &i| useries_mul(&f, &acc, &consts[i], prec));
                if !c0.is_empty() && upoly::rem(&f, &target0, &c0).is_empty() {
                    let lcs: Series = lc.iter().map(|&v| if v == 0 { Vec::new() } else { vec![v] }).collect();
                    let prod = idx.iter().fold(lcs, |acc, &i| series_mul(&f, &acc, &pool[i], prec));
                    let cand = series_to_bipoly(&f, &prod).primitive_part();
                    if let Some(q) = cur.exact_div(&cand) {
                        found = Some((idx.clone(), cand, q));
                        break 'combos;
                    }
                }
            }
            // next combination
            let k = pool.len();
            let mut i = size;
            loop {
                if i == 0 {
                    break 'combos;
                }
                i -= 1;
                if idx[i] < k - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        match found {
            Some((sel, cand, q)) => {
                out.push(cand);
                cur = q;
                for &i in sel.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if cur.total_degree() > 0 {
        out.push(cur);
    }
    Ok(out)
}

impl BiPoly {
    /// `f(x, 0)`.
    pub fn eval_y0(&self) -> UPoly {
        self.rows.first().cloned().unwrap_or_default()
    }
}
