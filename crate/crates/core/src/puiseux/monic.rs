//! Divide and conquer over the degree in `Y`, and the general (non monic) case.

use serde_json::json;

use super::{half_rnp3, norm_rpe, regularity_and_v, weight, Qq, Rpe};
use crate::algebra::bpoly::BPoly;
use crate::algebra::field::Field;
use crate::algebra::upoly;
use crate::ctx::Ctx;
use crate::dynev::{branch, TriSet, D5};
use crate::lifting::{hensel_lift_with, kappa_bezout_on, monic_split};
use crate::polyring::{quo, sinv, TBPoly};
use crate::{trace, Error, Result};

/// Common refinement of the `Q`s owning `rs` inside `c`, with the expansions moved
/// onto each cell.
pub fn group_by_q<K: Field>(c: &TriSet<K>, rs: &[Rpe<K>]) -> Vec<(TriSet<K>, Vec<Rpe<K>>)> {
    let k = c.k();
    let mut cells: Vec<Vec<K::El>> = vec![c.q().to_vec()];
    for r in rs {
        let q = r.t.q();
        let mut next = vec![];
        for x in cells {
            let g = upoly::gcd(k, &x, q);
            if g.len() > 1 && g.len() < x.len() {
                let h = upoly::div_exact(k, &x, &g);
                next.push(g);
                next.push(h);
            } else {
                next.push(x);
            }
        }
        cells = next;
    }
    cells
        .into_iter()
        .map(|q| {
            let members = rs
                .iter()
                .filter(|r| upoly::rem_monic(k, r.t.q(), &q).is_empty())
                .map(|r| if r.t.q() == q.as_slice() { r.clone() } else { r.reduce_to(&r.t.with_q(q.clone())) })
                .collect();
            let cell = if c.q() == q.as_slice() { c.clone() } else { TriSet::base(k, q) };
            (cell, members)
        })
        .collect()
}

/// Singular parts of every expansion of the monic `F` above `X = 0`, `F` known
/// modulo `X^{n+1}` with `n` at least the valuation of its discriminant.
pub fn monic_rnp3<K: Field>(ctx: &Ctx, c: &TriSet<K>, f: &TBPoly<K>, n: usize) -> Result<Vec<Rpe<K>>> {
    let d = f.deg_y();
    if d == 0 {
        return Ok(vec![]);
    }
    let n = n.min(f.prec);
    if d < 6 {
        let rs = half_rnp3(ctx, c, f, n)?;
        for (_, members) in group_by_q(c, &rs) {
            if weight(&members) < d {
                return Err(Error::PrecisionTooLow(format!(
                    "{} of {d} series found at precision {n}",
                    weight(&members)
                )));
            }
        }
        return Ok(rs);
    }
    let nq = Qq::from_integer(n as i64);
    let eta = nq.min(Qq::new(6 * n as i64, d as i64));
    let rs = half_rnp3(ctx, c, f, eta.floor().to_integer() as usize)?;
    let third = eta / Qq::from_integer(3);
    let (kept, rest): (Vec<Rpe<K>>, Vec<Rpe<K>>) = rs.into_iter().partition(|r| r.v < third);
    let p = (eta * Qq::new(2, 3)).floor().to_integer() as usize;
    let mut out = vec![];
    for (cell, members) in group_by_q(c, &kept) {
        let w = weight(&members);
        trace::emit(|| json!({"event": "filter", "degree": d, "eta": eta.to_string(), "kept_weight": w}));
        if w == d {
            out.extend(members);
            continue;
        }
        if w == 0 {
            // tiny eta (vRF near 0): the unfiltered expansions may already be complete
            let groups = group_by_q(&cell, &rest);
            if groups.iter().all(|(_, m)| weight(m) == d && m.iter().all(|r| r.certified())) {
                out.extend(groups.into_iter().flat_map(|(_, m)| m));
                continue;
            }
            return Err(Error::PrecisionTooLow(format!("no expansion certified at precision {eta}")));
        }
        for (cs, g) in norm_rpe(&cell, &members, p)? {
            let fc = f.reduce_from(&cs, c);
            let lifted = branch(&cs, |s| {
                let (fs, gs) = (fc.reduce_from(s, &cs), g.reduce_from(s, &cs));
                let hs = quo(s, &fs, &gs, p);
                let cap = p / 2;
                let trunc = |x: &TBPoly<K>| x.truncate(s, 2 * cap).c;
                let (kappa, u, v) = kappa_bezout_on(s, &trunc(&gs), &trunc(&hs), cap)?;
                let top = (fs.prec + 1).saturating_sub(2 * kappa).min(n + 1);
                let (g2, h2) = hensel_lift_with(s, &fs, &gs.c, &hs.c, u, v, kappa, top)?;
                Ok((g2, h2))
            })?;
            for (s, (_, h2)) in lifted {
                let mine: Vec<Rpe<K>> = members
                    .iter()
                    .map(|r| if r.t.q() == s.q() { r.clone() } else { r.reduce_to(&r.t.with_q(s.q().to_vec())) })
                    .collect();
                out.extend(mine);
                let nh = h2.prec;
                out.extend(monic_rnp3(ctx, &s, &h2, nh)?);
            }
        }
    }
    Ok(out)
}

/// `1/Gamma` as a Laurent series; the certified range shrinks by twice the valuation.
pub fn invert_rpe<K: Field>(r: &Rpe<K>) -> D5<Rpe<K>, K> {
    let t = &r.t;
    let mut val = None;
    for (i, c) in r.coeffs.iter().enumerate() {
        if (i as i64 + r.low) > r.known {
            break;
        }
        if !t.zero_test(c)? {
            val = Some(i);
            break;
        }
    }
    let Some(i) = val else {
        return Err(Error::PrecisionTooLow("expansion vanishes to its known precision".into()).into());
    };
    let s = r.low + i as i64;
    let known = r.known - 2 * s;
    let len = (known + s).max(0) as usize;
    let unit = &r.coeffs[i..];
    let inv = sinv(t, unit, len)?;
    Ok(Rpe { coeffs: inv, low: -s, known, ..r.clone() })
}

/// `F(X + z, Y)` over `c`, `z` the class of `Z1`.
pub fn shift_to_root<K: Field>(c: &TriSet<K>, f: &BPoly<K>) -> TBPoly<K> {
    let z = c.z1();
    let cols: Vec<Vec<_>> = f
        .c
        .iter()
        .map(|a| {
            let a: Vec<_> = a.iter().map(|x| c.from_base(x.clone())).collect();
            upoly::taylor_shift(c, &upoly::trimmed(c, a), &z)
        })
        .collect();
    TBPoly::new(c, cols, f.deg_x())
}

/// Singular parts of all expansions of `F` above the roots of `Q`, including those
/// with `Y` at infinity, with `r` and `v` measured against `F` itself.
pub fn rnp3<K: Field>(ctx: &Ctx, k: &K, f: &BPoly<K>, q: &[K::El], n: usize) -> Result<Vec<Rpe<K>>> {
    let c = TriSet::base(k, q.to_vec());
    let ft = shift_to_root(&c, f);
    let work = (2 * n).max(ft.prec);
    let mut out = vec![];
    for (s, _, f0, finf) in monic_split(&c, &ft.clone().with_prec(work))? {
        let mut rs = monic_rnp3(ctx, &s, &f0, n)?;
        if finf.deg_y() > 0 {
            let rec = finf.reciprocal_y(&s);
            for r in monic_rnp3(ctx, &s, &rec, n)? {
                for (_, ri) in branch(&r.t, |x| invert_rpe(&r.reduce_to(x)))? {
                    rs.push(ri);
                }
            }
        }
        for r in rs {
            let parts = branch(&r.t, |x| {
                let rx = r.reduce_to(x);
                let fx = ft.reduce_from(&x.level1(), &c);
                let fx = lift_to(x, &fx);
                regularity_and_v(x, &fx, &rx)
            })?;
            for (x, (rr, v)) in parts {
                let mut rx = r.reduce_to(&x);
                rx.r = rr;
                rx.v = v;
                if !rx.certified() {
                    return Err(Error::PrecisionTooLow(format!("regularity index {} beyond T^{}", rr, rx.known)));
                }
                out.push(rx);
            }
        }
    }
    Ok(out)
}

/// Embeds a polynomial over the first level into a two-level set above it.
fn lift_to<K: Field>(x: &TriSet<K>, f: &TBPoly<K>) -> TBPoly<K> {
    let c = f.c.iter().map(|col| col.iter().map(|a| x.from_level1_coeffs(std::slice::from_ref(a))).collect()).collect();
    TBPoly::new(x, c, f.prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fp, Rationals, Ring};

    fn bp<K: Field>(k: &K, terms: &[(i64, usize, usize)]) -> BPoly<K> {
        BPoly::from_terms(k, &terms.iter().map(|&(c, i, j)| (k.from_i64(c), i, j)).collect::<Vec<_>>())
    }

    fn at_zero<K: Field>(k: &K, f: &BPoly<K>, n: usize) -> Vec<Rpe<K>> {
        rnp3(&Ctx::default(), k, f, &[k.zero(), k.one()], n).unwrap()
    }

    #[test]
    fn visible_factors() {
        let k = Fp::new(7).unwrap();
        // (Y^2 - X)(Y - 1)
        let f = bp(&k, &[(1, 3, 0), (-1, 2, 0), (-1, 1, 1), (1, 0, 1)]);
        let mut rs = at_zero(&k, &f, 4);
        rs.sort_by_key(|r| r.e);
        assert_eq!(rs.len(), 2);
        assert_eq!((rs[0].e, rs[0].r), (1, 0));
        assert!(rs[0].t.is_one(&rs[0].coeff(0)));
        assert_eq!((rs[1].e, rs[1].r), (2, 1));
        assert_eq!(rs[1].coeff(0), rs[1].t.zero());
    }

    #[test]
    fn poles_above_zero() {
        // 1 + X Y^{d-1} + X^{d+1} Y^d with d = 3
        let k = Rationals;
        let d = 3;
        let f = bp(&k, &[(1, 0, 0), (1, d - 1, 1), (1, d, d + 1)]);
        let mut rs = at_zero(&k, &f, 2 * d + 1);
        rs.sort_by_key(|r| r.e);
        assert_eq!(weight(&rs), d);
        let (a, b) = (&rs[0], &rs[1]);
        assert_eq!((a.e, a.low), (1, -(d as i64)));
        assert_eq!(a.coeff(-(d as i64)), a.t.from_i64(-1));
        assert_eq!((b.e, b.val()), (2, Some(-1)));
        // X = gamma T^2 with gamma^? fixed by Y = c/T: c^2 gamma = -1 up to the choice of T
        let (g, c) = (&b.gamma, b.coeff(-1));
        assert_eq!(b.t.mul(g, &b.t.mul(&c, &c)), b.t.from_i64(-1));
    }

    #[test]
    fn degree_six_recursion() {
        // prod_{k=1..6} (Y - X^k) over F_101
        let k = Fp::new(101).unwrap();
        let mut f = BPoly::from_terms(&k, &[(k.one(), 0, 0)]);
        for e in 1..=6 {
            f = f.mul(&k, &bp(&k, &[(1, 1, 0), (-1, 0, e)]));
        }
        let rf = crate::algebra::bpoly::discriminant_resultant(&k, &f);
        let vrf = rf.iter().position(|a| *a != 0).unwrap();
        trace::start();
        let rs = at_zero(&k, &f, vrf);
        let ev = trace::finish();
        assert_eq!(weight(&rs), 6);
        assert!(ev.iter().any(|x| x["event"] == "filter"));
        for r in &rs {
            assert_eq!(r.e, 1);
            assert!(r.certified());
        }
    }

    #[test]
    fn close_roots_go_to_the_cofactor() {
        // four roots c X^10 and eight constants: the first half expansion keeps the constants
        let k = Fp::new(101).unwrap();
        let mut f = BPoly::from_terms(&k, &[(k.one(), 0, 0)]);
        for c in 1..=4 {
            f = f.mul(&k, &bp(&k, &[(1, 1, 0), (-c, 0, 10)]));
        }
        for c in 1..=8 {
            f = f.mul(&k, &bp(&k, &[(1, 1, 0), (-c, 0, 0)]));
        }
        trace::start();
        let rs = at_zero(&k, &f, 120);
        let ev = trace::finish();
        let kept: Vec<u64> = ev.iter().filter(|x| x["event"] == "filter").map(|x| x["kept_weight"].as_u64().unwrap()).collect();
        assert_eq!(kept, vec![8]);
        assert_eq!(weight(&rs), 12);
        let mut vs: Vec<Qq> = rs.iter().map(|r| r.v).collect();
        vs.sort();
        assert_eq!(vs.last(), Some(&Qq::from_integer(30)));
    }

    #[test]
    fn conjugate_critical_points_stay_together() {
        // Y^2 - X^2 + 2 above the roots of Z^2 - 2
        let k = Rationals;
        let f = bp(&k, &[(1, 2, 0), (-1, 0, 2), (2, 0, 0)]);
        let rs = rnp3(&Ctx::default(), &k, &f, &[k.from_i64(-2), k.zero(), k.one()], 2).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!((rs[0].e, rs[0].t.dq()), (2, 2));
    }
}
