//! Lifting factorizations in `K_I[[X]][Y]`: Hensel steps with a lifting order,
//! generalized Bezout relations, Weierstrass preparation and the monic split.

use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::dynev::linalg::{self, Matrix};
use crate::dynev::{branch, d5poly, El, Halt, TriSet, D5};
use crate::polyring::{quo_rem, sinv, smul, strunc, Ser, Series, TBPoly};
use crate::{trace, Error, Result};

/// Polynomial in Y over truncated series, without a recorded precision.
type YPoly<K> = Vec<Series<K>>;

fn ring<K: Field>(t: &TriSet<K>, n: usize) -> Ser<K> {
    Ser { t: t.clone(), n }
}

/// Product modulo `X^w` (exponents below `w`).
fn ymul<K: Field>(t: &TriSet<K>, a: &[Series<K>], b: &[Series<K>], w: usize) -> YPoly<K> {
    if w == 0 {
        return vec![];
    }
    upoly::mul(&ring(t, w - 1), a, b)
}

fn ytrunc<K: Field>(t: &TriSet<K>, a: &[Series<K>], w: usize) -> YPoly<K> {
    if w == 0 {
        return vec![];
    }
    upoly::trimmed(&ring(t, w - 1), a.iter().map(|x| strunc(t, x, w - 1)).collect())
}

fn yadd<K: Field>(t: &TriSet<K>, a: &[Series<K>], b: &[Series<K>]) -> YPoly<K> {
    upoly::add(&ring(t, usize::MAX - 1), a, b)
}

fn ysub<K: Field>(t: &TriSet<K>, a: &[Series<K>], b: &[Series<K>]) -> YPoly<K> {
    upoly::sub(&ring(t, usize::MAX - 1), a, b)
}

/// Divides every coefficient by `X^k`; the dropped low terms must vanish.
fn ydiv_xk<K: Field>(t: &TriSet<K>, a: &[Series<K>], k: usize) -> YPoly<K> {
    let r = ring(t, usize::MAX - 1);
    let c = a
        .iter()
        .map(|x| {
            debug_assert!(x.iter().take(k).all(|c| t.is_zero(c)), "X^k does not divide");
            x.iter().skip(k).cloned().collect::<Vec<_>>()
        })
        .map(|x| upoly::trimmed(t, x))
        .collect();
    upoly::trimmed(&r, c)
}

fn x_power<K: Field>(t: &TriSet<K>, k: usize) -> YPoly<K> {
    let mut s = vec![t.zero(); k + 1];
    s[k] = t.one();
    vec![s]
}

/// One lifting step. With `F = G H mod X^{n0}`, `n0 > 2 kappa`, `H` monic and
/// `U G + V H = X^kappa mod X^{n0 - kappa}`, returns `(G~, H~, U~, V~)` with
/// `F = G~ H~ mod X^{2(n0 - kappa)}` and the Bezout relation good mod `X^{2 n0 - 3 kappa}`.
#[allow(clippy::too_many_arguments)]
pub fn hensel_step<K: Field>(
    t: &TriSet<K>,
    f: &[Series<K>],
    g: &[Series<K>],
    h: &[Series<K>],
    u: &[Series<K>],
    v: &[Series<K>],
    n0: usize,
    kappa: usize,
) -> Result<(YPoly<K>, YPoly<K>, YPoly<K>, YPoly<K>)> {
    if n0 <= 2 * kappa {
        return Err(Error::PreconditionViolated(format!("hensel step needs n0 > 2 kappa (n0 = {n0}, kappa = {kappa})")));
    }
    if !matches!(h.last(), Some(lc) if lc.len() == 1 && t.is_one(&lc[0])) {
        return Err(Error::PreconditionViolated("hensel step needs a monic H".into()));
    }
    let w = 2 * (n0 - kappa);
    let wb = 2 * n0 - 3 * kappa;
    let e = ysub(t, &ytrunc(t, f, w + kappa), &ymul(t, g, h, w + kappa));
    let alpha = ydiv_xk(t, &e, kappa);
    let (q, r) = quo_rem(t, &ymul(t, u, &alpha, w), h, w - 1);
    let g1 = ytrunc(t, &yadd(t, &yadd(t, g, &ymul(t, &alpha, v, w)), &ymul(t, &q, g, w)), w);
    let h1 = ytrunc(t, &yadd(t, h, &r), w);
    let s = yadd(t, &ymul(t, u, &g1, wb + kappa), &ymul(t, v, &h1, wb + kappa));
    let beta = ydiv_xk(t, &ysub(t, &s, &x_power(t, kappa)), kappa);
    let (qs, rt) = quo_rem(t, &ymul(t, u, &beta, w), &h1, w - 1);
    let u1 = ytrunc(t, &ysub(t, u, &rt), wb);
    let v1 = ytrunc(t, &ysub(t, &ysub(t, v, &ymul(t, &beta, v, wb)), &ymul(t, &qs, &g1, wb)), wb);
    Ok((g1, h1, u1, v1))
}

/// Minimal `kappa <= cap` with `U G + V H = X^kappa mod X^{kappa+1}`, `deg U < deg H`,
/// `deg V < deg G`, by solving the coefficient system for `k = 0, 1, ...`.
pub fn kappa_bezout_on<K: Field>(
    t: &TriSet<K>,
    g: &[Series<K>],
    h: &[Series<K>],
    cap: usize,
) -> D5<(usize, YPoly<K>, YPoly<K>), K> {
    let (dg, dh) = (g.len().saturating_sub(1), h.len().saturating_sub(1));
    let rows = dg + dh;
    if rows == 0 {
        // both constant: G invertible at 0 is required
        let c = g.first().and_then(|x| x.first()).cloned().unwrap_or_else(|| t.zero());
        let inv = t.inv(&c)?;
        return Ok((0, vec![vec![inv]], vec![]));
    }
    for k in 0..=cap {
        let nun = rows * (k + 1);
        let idx_u = |a: usize, s: usize| a * (k + 1) + s;
        let idx_v = |b: usize, s: usize| dh * (k + 1) + b * (k + 1) + s;
        let eq = |c: usize, s: usize| c * (k + 1) + s;
        let mut m: Matrix<K> = vec![vec![t.zero(); nun]; nun];
        let coef = |p: &[Series<K>], i: usize, j: usize| -> El<K> {
            p.get(i).and_then(|x| x.get(j)).cloned().unwrap_or_else(|| t.zero())
        };
        for a in 0..dh {
            for s1 in 0..=k {
                for (i, _) in g.iter().enumerate() {
                    for s in s1..=k {
                        let x = coef(g, i, s - s1);
                        if !t.is_zero(&x) {
                            m[eq(a + i, s)][idx_u(a, s1)] = x;
                        }
                    }
                }
            }
        }
        for b in 0..dg {
            for s1 in 0..=k {
                for (i, _) in h.iter().enumerate() {
                    for s in s1..=k {
                        let x = coef(h, i, s - s1);
                        if !t.is_zero(&x) {
                            m[eq(b + i, s)][idx_v(b, s1)] = x;
                        }
                    }
                }
            }
        }
        let mut rhs = vec![t.zero(); nun];
        rhs[eq(0, k)] = t.one();
        if let Some(sol) = linalg::solve(t, &m, &rhs)? {
            let unpack = |count: usize, idx: &dyn Fn(usize, usize) -> usize| -> YPoly<K> {
                let c = (0..count)
                    .map(|a| upoly::trimmed(t, (0..=k).map(|s| sol[idx(a, s)].clone()).collect()))
                    .collect();
                upoly::trimmed(&ring(t, k), c)
            };
            return Ok((k, unpack(dh, &idx_u), unpack(dg, &idx_v)));
        }
    }
    Err(Halt::Fail(Error::KappaExceedsCap { cap }))
}

/// [`kappa_bezout_on`] over every component of `t`.
pub fn kappa_bezout<K: Field>(
    t: &TriSet<K>,
    g: &TBPoly<K>,
    h: &TBPoly<K>,
    cap: usize,
) -> Result<Vec<(TriSet<K>, usize, YPoly<K>, YPoly<K>)>> {
    let out = branch(t, |s| {
        let (gs, hs) = (g.reduce_from(s, t), h.reduce_from(s, t));
        kappa_bezout_on(s, &gs.c, &hs.c, cap)
    })?;
    Ok(out.into_iter().map(|(s, (k, u, v))| (s, k, u, v)).collect())
}

/// Lifts `F = G H mod X^{2 kappa + 1}` (`H` monic) until `F = G~ H~ mod X^{n + 2 kappa}`;
/// returns the factors modulo `X^n` (precision `n - 1`) and `kappa`.
pub fn hensel_lift_on<K: Field>(
    t: &TriSet<K>,
    f: &TBPoly<K>,
    g: &[Series<K>],
    h: &[Series<K>],
    n: usize,
    cap: usize,
) -> D5<(TBPoly<K>, TBPoly<K>, usize), K> {
    let (kappa, u, v) = kappa_bezout_on(t, &ytrunc(t, g, 1 + cap), &ytrunc(t, h, 1 + cap), cap)?;
    let (g, h) = hensel_lift_with(t, f, g, h, u, v, kappa, n)?;
    Ok((g, h, kappa))
}

/// Lifting loop once a Bezout relation for `kappa` is known.
#[allow(clippy::too_many_arguments)]
pub fn hensel_lift_with<K: Field>(
    t: &TriSet<K>,
    f: &TBPoly<K>,
    g: &[Series<K>],
    h: &[Series<K>],
    mut u: YPoly<K>,
    mut v: YPoly<K>,
    kappa: usize,
    n: usize,
) -> D5<(TBPoly<K>, TBPoly<K>), K> {
    let target = n + 2 * kappa;
    let avail = f.prec + 1;
    if target > avail {
        return Err(Error::PrecisionTooLow(format!(
            "lifting to X^{target} needs the input modulo X^{target}, known modulo X^{avail}"
        ))
        .into());
    }
    let (mut g, mut h) = (g.to_vec(), h.to_vec());
    let mut n0 = 2 * kappa + 1;
    while n0 < target {
        let (g1, h1, u1, v1) = hensel_step(t, &f.c, &g, &h, &u, &v, n0, kappa)?;
        (g, h, u, v) = (g1, h1, u1, v1);
        let next = (2 * (n0 - kappa)).min(avail);
        if next <= n0 {
            return Err(Error::PrecisionTooLow("lifting made no progress".into()).into());
        }
        n0 = next;
    }
    trace::emit(|| serde_json::json!({"event": "lift", "kappa": kappa, "precision": n, "degrees": [g.len().saturating_sub(1), h.len().saturating_sub(1)]}));
    let p = n.saturating_sub(1);
    Ok((TBPoly::new(t, g, p), TBPoly::new(t, h, p)))
}

/// [`hensel_lift_on`] over every component of `t`.
pub fn hensel_lift<K: Field>(
    t: &TriSet<K>,
    f: &TBPoly<K>,
    g: &TBPoly<K>,
    h: &TBPoly<K>,
    n: usize,
    cap: usize,
) -> Result<Vec<(TriSet<K>, TBPoly<K>, TBPoly<K>)>> {
    let out = branch(t, |s| {
        let (fs, gs, hs) = (f.reduce_from(s, t), g.reduce_from(s, t), h.reduce_from(s, t));
        hensel_lift_on(s, &fs, &gs.c, &hs.c, n, cap)
    })?;
    Ok(out.into_iter().map(|(s, (g, h, _))| (s, g, h)).collect())
}

/// Weierstrass polynomial of `G` to precision `prec(G)`: the monic factor with
/// `W(0, Y) = Y^M`, `M = val_Y G(0, Y)`, whose other factor is a unit.
pub fn wpt_on<K: Field>(t: &TriSet<K>, g: &TBPoly<K>) -> D5<TBPoly<K>, K> {
    let g0 = g.at_x0(t);
    if g0.is_empty() {
        return Err(Error::DivisibleByX.into());
    }
    let mut mm = 0;
    while t.zero_test(&g0[mm])? {
        mm += 1;
    }
    let n = g.prec;
    if mm == 0 {
        return Ok(TBPoly::one(t, n));
    }
    if mm == g.deg_y() && g.is_monic(t) {
        return Ok(g.clone());
    }
    if mm == 1 {
        // simple root: Newton iteration for the series root through 0
        let gy = g.derivative_y(t);
        let mut y: Series<K> = vec![];
        let mut p = 1;
        let d0 = gy.at_x0(t);
        let inv0 = t.inv(&d0[0])?;
        let mut dinv: Series<K> = vec![inv0];
        while p < n + 1 {
            p = (2 * p).min(n + 1);
            let val = strunc(t, &g.eval_y(t, &y), p - 1);
            let der = strunc(t, &gy.eval_y(t, &y), p - 1);
            // refresh the derivative inverse to the new precision
            let two_minus = upoly::sub(t, &[t.from_i64(2)], &smul(t, &der, &dinv, p - 1));
            dinv = smul(t, &dinv, &two_minus, p - 1);
            y = upoly::sub(t, &y, &smul(t, &val, &dinv, p - 1));
        }
        return Ok(TBPoly::new(t, vec![upoly::neg(t, &y), vec![t.one()]], n));
    }
    // G = U * W with W(0, Y) = Y^M and U(0, Y) = G(0, Y) / Y^M
    let u0: Vec<El<K>> = g0[mm..].to_vec();
    let ym: Vec<El<K>> = {
        let mut v = vec![t.zero(); mm + 1];
        v[mm] = t.one();
        v
    };
    let (one, bu, bv) = d5poly::xgcd(t, &u0, &ym)?;
    debug_assert!(one.len() == 1);
    let lift = |p: &[El<K>]| -> YPoly<K> { p.iter().map(|c| upoly::trimmed(t, vec![c.clone()])).collect() };
    let (_, w) = hensel_lift_with(t, g, &lift(&u0), &lift(&ym), lift(&bu), lift(&bv), 0, n + 1)?;
    Ok(w)
}

/// [`wpt_on`] over every component of `t`.
pub fn wpt<K: Field>(t: &TriSet<K>, g: &TBPoly<K>) -> Result<Vec<(TriSet<K>, TBPoly<K>)>> {
    branch(t, |s| wpt_on(s, &g.reduce_from(s, t)))
}

/// `F = u F0 Finf mod X^{prec+1}` with `F0` monic, `Finf(0, Y) = 1`, `u(0) != 0`.
pub fn monic_split_on<K: Field>(t: &TriSet<K>, f: &TBPoly<K>) -> D5<(Series<K>, TBPoly<K>, TBPoly<K>), K> {
    let f0 = f.at_x0(t);
    if f0.is_empty() {
        return Err(Error::DivisibleByX.into());
    }
    let mut d0 = f0.len() - 1;
    while t.zero_test(&f0[d0])? {
        d0 -= 1;
    }
    let n = f.prec;
    let lc0 = f0[d0].clone();
    let inv = t.inv(&lc0)?;
    if d0 == f.deg_y() {
        // leading coefficient is a unit series
        let lc = f.c[d0].clone();
        let linv = sinv(t, &lc, n)?;
        let f0m = f.scale(t, &linv);
        return Ok((lc, f0m, TBPoly::one(t, n)));
    }
    let h0: YPoly<K> = f0[..=d0].iter().map(|c| upoly::trimmed(t, vec![t.mul(c, &inv)])).collect();
    let g0: YPoly<K> = vec![vec![lc0]];
    let (g, h) = if d0 == 0 {
        (f.c.clone(), vec![vec![t.one()]])
    } else {
        let (g, h) = hensel_lift_with(t, f, &g0, &h0, vec![vec![inv]], vec![], 0, n + 1)?;
        (g.c, h.c)
    };
    let u = g[0].clone();
    let uinv = sinv(t, &u, n)?;
    let finf = TBPoly::new(t, g, n).scale(t, &uinv);
    Ok((u, TBPoly::new(t, h, n), finf))
}

/// [`monic_split_on`] over every component of `t`.
#[allow(clippy::type_complexity)]
pub fn monic_split<K: Field>(t: &TriSet<K>, f: &TBPoly<K>) -> Result<Vec<(TriSet<K>, Series<K>, TBPoly<K>, TBPoly<K>)>> {
    let out = branch(t, |s| monic_split_on(s, &f.reduce_from(s, t)))?;
    Ok(out.into_iter().map(|(s, (u, a, b))| (s, u, a, b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Fp;

    fn poly(t: &TriSet<Fp>, rows: &[&[i64]], prec: usize) -> TBPoly<Fp> {
        let c = rows.iter().map(|r| r.iter().map(|&a| t.from_i64(a)).collect()).collect();
        TBPoly::new(t, c, prec)
    }

    #[test]
    fn classical_step() {
        let k = Fp::new(101).unwrap();
        let t = TriSet::trivial(&k);
        // F = Y^2 - (1 + X)^2, G = Y - 1, H = Y + 1
        let f = poly(&t, &[&[-1, -2, -1], &[], &[1]], 8);
        let g = poly(&t, &[&[-1], &[1]], 0);
        let h = poly(&t, &[&[1], &[1]], 0);
        let (kappa, u, v) = kappa_bezout_on(&t, &g.c, &h.c, 3).unwrap();
        assert_eq!(kappa, 0);
        let (g1, h1, _, _) = hensel_step(&t, &f.c, &g.c, &h.c, &u, &v, 1, 0).unwrap();
        assert_eq!(g1, poly(&t, &[&[-1, -1], &[1]], 1).c);
        assert_eq!(h1, poly(&t, &[&[1, 1], &[1]], 1).c);
    }

    #[test]
    fn kappa_one_pair() {
        let k = Fp::new(101).unwrap();
        let t = TriSet::trivial(&k);
        let g = poly(&t, &[&[0, -1], &[1]], 4);
        let h = poly(&t, &[&[0, 1], &[1]], 4);
        let (kappa, _, _) = kappa_bezout_on(&t, &g.c, &h.c, 4).unwrap();
        assert_eq!(kappa, 1);
    }

    #[test]
    fn weierstrass_of_product() {
        let k = Fp::new(101).unwrap();
        let t = TriSet::trivial(&k);
        // (Y^2 - X)(Y + 1) = Y^3 + Y^2 - X Y - X
        let g = poly(&t, &[&[0, -1], &[0, -1], &[1], &[1]], 3);
        let w = wpt_on(&t, &g).unwrap();
        assert_eq!(w, poly(&t, &[&[0, -1], &[], &[1]], 3));
    }

    #[test]
    fn weierstrass_simple_root() {
        let k = Fp::new(101).unwrap();
        let t = TriSet::trivial(&k);
        // (Y - X - X^2)(Y + 1)
        let g = poly(&t, &[&[0, -1, -1], &[1, -1, -1], &[1]], 5);
        let w = wpt_on(&t, &g).unwrap();
        assert_eq!(w, poly(&t, &[&[0, -1, -1], &[1]], 5));
    }

    #[test]
    fn split_of_non_monic() {
        let k = Fp::new(101).unwrap();
        let t = TriSet::trivial(&k);
        // X Y^2 + Y + X
        let f = poly(&t, &[&[0, 1], &[1], &[0, 1]], 1);
        let (u, f0, finf) = monic_split_on(&t, &f).unwrap();
        assert_eq!(u, vec![t.one()]);
        assert_eq!(f0, poly(&t, &[&[0, 1], &[1]], 1));
        assert_eq!(finf, poly(&t, &[&[1], &[0, 1]], 1));
    }
}
