//! Factorization of `F` in `K[[X]][Y]` to a requested precision, one factor per class
//! of expansions above `X = 0`.

use crate::algebra::bpoly::BPoly;
use crate::algebra::field::{Field, Ring};
use crate::ctx::Ctx;
use crate::desing::check_input;
use crate::dynev::{branch, TriSet, D5};
use crate::lifting::{hensel_lift_with, kappa_bezout_on, monic_split};
use crate::polyring::{quo, Series, TBPoly};
use crate::puiseux::{monic_rnp3, norm_rpe_on, Rpe};
use crate::{Error, Result};

/// Splits a monic univariate polynomial over `K` into monic factors. Used to refine
/// the residue algebras before taking norms; without it factors stay over products
/// of fields.
pub type Splitter<'a, K> = &'a dyn Fn(&[<K as Ring>::El]) -> Vec<Vec<<K as Ring>::El>>;

#[derive(Clone, Debug)]
pub struct Factor<K: Field> {
    /// Residue algebra of the expansion class this factor is the norm of.
    pub t: TriSet<K>,
    /// Coefficients in `K` (over the trivial triangular set).
    pub poly: TBPoly<K>,
    /// Roots tend to infinity at `X = 0`: the factor has constant term one instead of
    /// being monic.
    pub at_infinity: bool,
}

#[derive(Clone, Debug)]
pub struct Factorization<K: Field> {
    pub unit: Series<K>,
    pub factors: Vec<Factor<K>>,
}

impl<K: Field> Factorization<K> {
    /// `u * prod factors`, modulo `X^{n+1}`.
    pub fn product(&self, t: &TriSet<K>, n: usize) -> TBPoly<K> {
        let mut acc = TBPoly::new(t, vec![self.unit.clone()], n);
        for f in &self.factors {
            acc = acc.mul(t, &f.poly.truncate(t, n));
        }
        acc
    }
}

/// `F = u prod G_i mod X^{n+1}` with every `G_i` Weierstrass (or reciprocal of one).
pub fn analytic_factor<K: Field>(ctx: &Ctx, k: &K, f: &BPoly<K>, n: usize) -> Result<Factorization<K>> {
    analytic_factor_with(ctx, k, f, n, None)
}

/// [`analytic_factor`], refining residue algebras with `split` when given.
pub fn analytic_factor_with<K: Field>(
    ctx: &Ctx,
    k: &K,
    f: &BPoly<K>,
    n: usize,
    split: Option<Splitter<K>>,
) -> Result<Factorization<K>> {
    let rf = check_input(k, f)?;
    let vrf = rf.iter().position(|c| !k.is_zero(c)).unwrap_or(0);
    let mut w = n + vrf + f.deg_y() + 2;
    loop {
        match attempt(ctx, k, f, n, w, split) {
            Err(Error::PrecisionTooLow(_)) | Err(Error::KappaExceedsCap { .. }) if w < 64 * (n + vrf + 4) => w *= 2,
            r => return r,
        }
    }
}

fn attempt<K: Field>(ctx: &Ctx, k: &K, f: &BPoly<K>, n: usize, w: usize, split: Option<Splitter<K>>) -> Result<Factorization<K>> {
    let t = TriSet::trivial(k);
    let ft = TBPoly::from_bpoly(&t, f, w);
    let (_, u, f0, finf) = monic_split(&t, &ft)?.pop().expect("one component");
    let mut factors = factor_monic(ctx, &t, &f0, split)?;
    if finf.deg_y() > 0 {
        for mut g in factor_monic(ctx, &t, &finf.reciprocal_y(&t), split)? {
            g.poly = g.poly.reciprocal_y(&t);
            g.at_infinity = true;
            factors.push(g);
        }
    }
    for g in &mut factors {
        if g.poly.prec < n {
            return Err(Error::PrecisionTooLow(format!("factor known modulo X^{}", g.poly.prec + 1)));
        }
        g.poly = g.poly.truncate(&t, n);
    }
    let mut unit = u;
    unit.truncate(n + 1);
    Ok(Factorization { unit, factors })
}

/// Runs a D5 computation over a field, where no split can occur.
fn on_field<K: Field, T>(t: &TriSet<K>, f: impl FnMut(&TriSet<K>) -> D5<T, K>) -> Result<T> {
    Ok(branch(t, f)?.pop().expect("one component").1)
}

fn refine<K: Field>(rs: Vec<Rpe<K>>, split: Option<Splitter<K>>) -> Vec<Rpe<K>> {
    let Some(split) = split else { return rs };
    let mut out = vec![];
    for r in rs {
        let k = r.t.k().clone();
        let p: Vec<K::El> = r.t.p().iter().map(|c| c.first().cloned().unwrap_or_else(|| k.zero())).collect();
        let parts = split(&p);
        if parts.len() <= 1 {
            out.push(r);
            continue;
        }
        for pj in parts {
            let s = TriSet::from_parts(&k, r.t.q().to_vec(), pj.into_iter().map(|c| vec![c]).collect());
            out.push(r.reduce_to(&s));
        }
    }
    out
}

/// Factors of a monic `G` over `K`: norms of its expansions, then lifted one at a time
/// against the remaining cofactor.
fn factor_monic<K: Field>(ctx: &Ctx, t: &TriSet<K>, g: &TBPoly<K>, split: Option<Splitter<K>>) -> Result<Vec<Factor<K>>> {
    let d = g.deg_y();
    if d == 0 {
        return Ok(vec![]);
    }
    let whole = |s: &TriSet<K>| vec![Factor { t: s.clone(), poly: g.clone(), at_infinity: false }];
    if d == 1 {
        return Ok(whole(t));
    }
    let rs = refine(monic_rnp3(ctx, t, g, g.prec)?, split);
    if rs.len() == 1 {
        return Ok(whole(&rs[0].t));
    }
    let p = rs.iter().map(|r| (r.known.max(0) as usize) / r.e).min().unwrap_or(0).min(g.prec);
    let mut out = vec![];
    let mut h = g.clone();
    for r in &rs[..rs.len() - 1] {
        let gi = on_field(t, |s| norm_rpe_on(s, r, p))?;
        let (g2, h2) = on_field(t, |s| {
            let hi = quo(s, &h, &gi, p);
            let cap = p / 2;
            let trunc = |x: &TBPoly<K>| x.truncate(s, 2 * cap).c;
            let (kappa, u, v) = kappa_bezout_on(s, &trunc(&gi), &trunc(&hi), cap)?;
            let top = (h.prec + 1).saturating_sub(2 * kappa);
            hensel_lift_with(s, &h, &gi.c, &hi.c, u, v, kappa, top)
        })?;
        out.push(Factor { t: r.t.clone(), poly: g2, at_infinity: false });
        h = h2;
    }
    out.push(Factor { t: rs[rs.len() - 1].t.clone(), poly: h, at_infinity: false });
    Ok(out)
}
