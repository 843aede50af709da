//! Univariate polynomials over `K_I` with inversions done by dynamic evaluation.

use super::triset::{El, Halt, TriSet, D5};
use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::Error;

pub type Poly<K> = Vec<El<K>>;

pub fn monic<K: Field>(t: &TriSet<K>, a: &[El<K>]) -> D5<Poly<K>, K> {
    match a.last() {
        None => Ok(vec![]),
        Some(lc) => {
            let inv = t.inv(lc)?;
            Ok(a.iter().map(|c| t.mul(c, &inv)).collect())
        }
    }
}

pub fn divrem<K: Field>(t: &TriSet<K>, a: &[El<K>], b: &[El<K>]) -> D5<(Poly<K>, Poly<K>), K> {
    let lc = b.last().expect("division by zero polynomial");
    let inv = t.inv(lc)?;
    let bm: Vec<_> = b.iter().map(|c| t.mul(c, &inv)).collect();
    let (q, r) = upoly::divrem_monic(t, a, &bm);
    Ok((upoly::scale(t, &q, &inv), r))
}

/// Extended Euclid over `K_I`: `u a + v b = g` with `g` monic (or zero when both vanish).
pub fn xgcd<K: Field>(t: &TriSet<K>, a: &[El<K>], b: &[El<K>]) -> D5<(Poly<K>, Poly<K>, Poly<K>), K> {
    let (mut r0, mut r1) = (upoly::trimmed(t, a.to_vec()), upoly::trimmed(t, b.to_vec()));
    let (mut s0, mut s1) = (vec![t.one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![t.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(t, &r0, &r1)?;
        let s = upoly::sub(t, &s0, &upoly::mul(t, &q, &s1));
        let tt = upoly::sub(t, &t0, &upoly::mul(t, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, tt);
    }
    match r0.last() {
        None => Ok((vec![], vec![], vec![])),
        Some(lc) => {
            let inv = t.inv(lc)?;
            Ok((upoly::scale(t, &r0, &inv), upoly::scale(t, &s0, &inv), upoly::scale(t, &t0, &inv)))
        }
    }
}

pub fn gcd<K: Field>(t: &TriSet<K>, a: &[El<K>], b: &[El<K>]) -> D5<Poly<K>, K> {
    let (mut x, mut y) = (upoly::trimmed(t, a.to_vec()), upoly::trimmed(t, b.to_vec()));
    while !y.is_empty() {
        let r = divrem(t, &x, &y)?.1;
        x = y;
        y = r;
    }
    monic(t, &x)
}

pub fn div_exact<K: Field>(t: &TriSet<K>, a: &[El<K>], b: &[El<K>]) -> D5<Poly<K>, K> {
    let (q, r) = divrem(t, a, b)?;
    if !r.is_empty() {
        return Err(Halt::Fail(Error::PreconditionViolated("inexact division over a triangular set".into())));
    }
    Ok(q)
}

/// Yun's algorithm over `K_I`: `phi = prod phi_k^{M_k}`, phi monic, trivial factors dropped.
pub fn squarefree<K: Field>(t: &TriSet<K>, phi: &[El<K>]) -> D5<Vec<(Poly<K>, usize)>, K> {
    let d = upoly::deg(phi).unwrap_or(0);
    t.k().check_char(d)?;
    if d == 0 {
        return Ok(vec![]);
    }
    let f = monic(t, phi)?;
    let df = upoly::derivative(t, &f);
    let a0 = gcd(t, &f, &df)?;
    let mut b = div_exact(t, &f, &a0)?;
    let c = div_exact(t, &df, &a0)?;
    let mut dd = upoly::sub(t, &c, &upoly::derivative(t, &b));
    let mut out = vec![];
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(t, &b, &dd)?;
        let nb = div_exact(t, &b, &a)?;
        let c = div_exact(t, &dd, &a)?;
        dd = upoly::sub(t, &c, &upoly::derivative(t, &nb));
        if a.len() > 1 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    Ok(out)
}
