//! Dense univariate polynomials as coefficient vectors, lowest degree first.
//!
//! The zero polynomial is the empty vector; every other polynomial has a nonzero
//! last coefficient after `trim`.

use super::field::{Field, Ring};
use crate::{Error, Result};

const KARATSUBA_CUTOFF: usize = 32;

pub fn trim<R: Ring>(r: &R, a: &mut Vec<R::El>) {
    while let Some(last) = a.last() {
        if r.is_zero(last) {
            a.pop();
        } else {
            break;
        }
    }
}

pub fn trimmed<R: Ring>(r: &R, mut a: Vec<R::El>) -> Vec<R::El> {
    trim(r, &mut a);
    a
}

/// Degree, or `None` for the zero polynomial. Assumes a trimmed input.
pub fn deg<T>(a: &[T]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<R: Ring>(r: &R, c: R::El) -> Vec<R::El> {
    trimmed(r, vec![c])
}

/// `c * Y^k`.
pub fn monomial<R: Ring>(r: &R, c: R::El, k: usize) -> Vec<R::El> {
    if r.is_zero(&c) {
        return vec![];
    }
    let mut v = vec![r.zero(); k + 1];
    v[k] = c;
    v
}

pub fn add<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => r.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trimmed(r, out)
}

pub fn sub<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => r.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => r.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trimmed(r, out)
}

pub fn neg<R: Ring>(r: &R, a: &[R::El]) -> Vec<R::El> {
    a.iter().map(|x| r.neg(x)).collect()
}

pub fn scale<R: Ring>(r: &R, a: &[R::El], c: &R::El) -> Vec<R::El> {
    trimmed(r, a.iter().map(|x| r.mul(x, c)).collect())
}

fn mul_school<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    out
}

fn add_into<R: Ring>(r: &R, acc: &mut [R::El], a: &[R::El], shift: usize) {
    for (i, x) in a.iter().enumerate() {
        acc[i + shift] = r.add(&acc[i + shift], x);
    }
}

fn mul_kara<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
    if a.len() < KARATSUBA_CUTOFF || b.len() < KARATSUBA_CUTOFF {
        return mul_school(r, a, b);
    }
    let h = a.len().max(b.len()) / 2;
    let split = |p: &[R::El]| -> (Vec<R::El>, Vec<R::El>) {
        if p.len() <= h {
            (p.to_vec(), vec![])
        } else {
            (p[..h].to_vec(), p[h..].to_vec())
        }
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    let z0 = mul_kara(r, &a0, &b0);
    add_into(r, &mut out, &z0, 0);
    if a1.is_empty() || b1.is_empty() {
        // one side is short: plain two-piece product
        let z1a = if a1.is_empty() { vec![] } else { mul_kara(r, &a1, &b0) };
        let z1b = if b1.is_empty() { vec![] } else { mul_kara(r, &a0, &b1) };
        add_into(r, &mut out, &z1a, h);
        add_into(r, &mut out, &z1b, h);
        return out;
    }
    let z2 = mul_kara(r, &a1, &b1);
    let sa = pad_add(r, &a0, &a1);
    let sb = pad_add(r, &b0, &b1);
    let mut z1 = mul_kara(r, &sa, &sb);
    for (i, x) in z0.iter().enumerate() {
        z1[i] = r.sub(&z1[i], x);
    }
    for (i, x) in z2.iter().enumerate() {
        z1[i] = r.sub(&z1[i], x);
    }
    add_into(r, &mut out, &z1, h);
    add_into(r, &mut out, &z2, 2 * h);
    out
}

fn pad_add<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => r.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            _ => unreachable!(),
        })
        .collect()
}

pub fn mul<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    trimmed(r, mul_kara(r, a, b))
}

/// Product truncated to the first `len` coefficients (no trimming).
pub fn mul_trunc<R: Ring>(r: &R, a: &[R::El], b: &[R::El], len: usize) -> Vec<R::El> {
    let mut out = vec![r.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    out
}

pub fn eval<R: Ring>(r: &R, a: &[R::El], x: &R::El) -> R::El {
    let mut acc = r.zero();
    for c in a.iter().rev() {
        acc = r.add(&r.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<R: Ring>(r: &R, a: &[R::El]) -> Vec<R::El> {
    trimmed(
        r,
        a.iter().enumerate().skip(1).map(|(i, c)| r.mul(&r.from_i64(i as i64), c)).collect(),
    )
}

/// `a(Y + c)`, by repeated synthetic division.
pub fn taylor_shift<R: Ring>(r: &R, a: &[R::El], c: &R::El) -> Vec<R::El> {
    let mut v = a.to_vec();
    if r.is_zero(c) {
        return v;
    }
    let n = v.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = r.mul(&v[j + 1], c);
            v[j] = r.add(&v[j], &t);
        }
    }
    trimmed(r, v)
}

/// Quotient and remainder by a monic divisor; only ring operations.
pub fn divrem_monic<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> (Vec<R::El>, Vec<R::El>) {
    let db = deg(b).expect("division by zero polynomial");
    debug_assert!(r.is_one(&b[db]), "divisor must be monic");
    if a.len() <= db {
        return (vec![], a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quo = vec![r.zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let c = rem[k + db].clone();
        if r.is_zero(&c) {
            continue;
        }
        for (i, bi) in b.iter().enumerate().take(db) {
            rem[k + i] = r.sub(&rem[k + i], &r.mul(&c, bi));
        }
        rem[k + db] = r.zero();
        quo[k] = c;
    }
    rem.truncate(db);
    (trimmed(r, quo), trimmed(r, rem))
}

pub fn rem_monic<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
    divrem_monic(r, a, b).1
}

pub fn monic<K: Field>(k: &K, a: &[K::El]) -> Vec<K::El> {
    match a.last() {
        None => vec![],
        Some(lc) => {
            let inv = k.inv(lc);
            a.iter().map(|c| k.mul(c, &inv)).collect()
        }
    }
}

pub fn divrem<K: Field>(k: &K, a: &[K::El], b: &[K::El]) -> (Vec<K::El>, Vec<K::El>) {
    let lc = b.last().expect("division by zero polynomial");
    let inv = k.inv(lc);
    let bm: Vec<_> = b.iter().map(|c| k.mul(c, &inv)).collect();
    let (q, r) = divrem_monic(k, a, &bm);
    (scale(k, &q, &inv), r)
}

/// Exact quotient; panics in debug builds when the division leaves a remainder.
pub fn div_exact<K: Field>(k: &K, a: &[K::El], b: &[K::El]) -> Vec<K::El> {
    let (q, r) = divrem(k, a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn gcd<K: Field>(k: &K, a: &[K::El], b: &[K::El]) -> Vec<K::El> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = divrem(k, &x, &y).1;
        x = y;
        y = r;
    }
    monic(k, &x)
}

/// Extended Euclid: returns `(g, u, v)` with `u a + v b = g` and `g` monic (or zero).
pub fn xgcd<K: Field>(k: &K, a: &[K::El], b: &[K::El]) -> (Vec<K::El>, Vec<K::El>, Vec<K::El>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![k.one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s = sub(k, &s0, &mul(k, &q, &s1));
        let t = sub(k, &t0, &mul(k, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match r0.last() {
        None => (vec![], vec![], vec![]),
        Some(lc) => {
            let inv = k.inv(lc);
            (scale(k, &r0, &inv), scale(k, &s0, &inv), scale(k, &t0, &inv))
        }
    }
}

/// Yun's square-free decomposition of a monic polynomial: `f = prod g_k^k`,
/// listed by increasing multiplicity, trivial factors omitted.
pub fn squarefree_decompose<K: Field>(k: &K, f: &[K::El]) -> Result<Vec<(Vec<K::El>, usize)>> {
    let d = deg(f).unwrap_or(0);
    k.check_char(d)?;
    if d == 0 {
        return Ok(vec![]);
    }
    let f = monic(k, f);
    let df = derivative(k, &f);
    let a0 = gcd(k, &f, &df);
    let mut b = div_exact(k, &f, &a0);
    let c = div_exact(k, &df, &a0);
    let mut dd = sub(k, &c, &derivative(k, &b));
    let mut out = vec![];
    let mut i = 1;
    while deg(&b).unwrap_or(0) > 0 {
        let a = gcd(k, &b, &dd);
        let nb = div_exact(k, &b, &a);
        let c = div_exact(k, &dd, &a);
        dd = sub(k, &c, &derivative(k, &nb));
        if deg(&a).unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// Square-free decomposition valid in any characteristic for perfect fields
/// (F_p and Q), handling p-th powers. Input made monic first.
pub fn squarefree_any<K: Field>(k: &K, f: &[K::El]) -> Vec<(Vec<K::El>, usize)> {
    let p = k.characteristic() as usize;
    if deg(f).unwrap_or(0) == 0 {
        return vec![];
    }
    let f = monic(k, f);
    let mut out: Vec<(Vec<K::El>, usize)> = vec![];
    let df = derivative(k, &f);
    if df.is_empty() {
        // f = g(Y^p), and over F_p: g(Y^p) = (g')^p with g' having p-th root coefficients = same coefficients
        let g: Vec<_> = f.iter().step_by(p).cloned().collect();
        for (h, m) in squarefree_any(k, &g) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = gcd(k, &f, &df);
    let mut w = div_exact(k, &f, &c);
    let mut i = 1;
    while deg(&w).unwrap_or(0) > 0 {
        let y = gcd(k, &w, &c);
        let z = div_exact(k, &w, &y);
        if deg(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = div_exact(k, &c, &w);
    }
    if deg(&c).unwrap_or(0) > 0 {
        let g: Vec<_> = c.iter().step_by(p.max(1)).cloned().collect();
        for (h, m) in squarefree_any(k, &g) {
            out.push((h, m * p));
        }
    }
    out.sort_by_key(|(_, m)| *m);
    out
}

/// Reverse the coefficient sequence of `a` viewed with formal degree `d`.
pub fn reverse<R: Ring>(r: &R, a: &[R::El], d: usize) -> Vec<R::El> {
    let mut v = vec![r.zero(); d + 1];
    for (i, c) in a.iter().enumerate() {
        v[d - i] = c.clone();
    }
    trimmed(r, v)
}

pub fn is_squarefree<K: Field>(k: &K, f: &[K::El]) -> bool {
    deg(&gcd(k, f, &derivative(k, f))).unwrap_or(0) == 0
}

/// Returns an error unless `f` has positive degree and nonzero derivative gcd-free part.
pub fn require_nonzero<T>(a: &[T]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::PreconditionViolated("zero polynomial".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fp, Rationals};

    fn q(v: &[i64]) -> Vec<num_rational::BigRational> {
        trimmed(&Rationals, v.iter().map(|&x| Rationals.from_i64(x)).collect())
    }

    #[test]
    fn xgcd_divisor_case() {
        // a = Y^2 - 1, b = Y - 1
        let (g, u, v) = xgcd(&Rationals, &q(&[-1, 0, 1]), &q(&[-1, 1]));
        assert_eq!(g, q(&[-1, 1]));
        assert!(u.is_empty());
        assert_eq!(v, q(&[1]));
    }

    #[test]
    fn xgcd_identity_f5() {
        let k = Fp::new(5).unwrap();
        let a = vec![1, 0, 1];
        let b = vec![0, 1];
        let (g, u, v) = xgcd(&k, &a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&k, &mul(&k, &u, &a), &mul(&k, &v, &b)), vec![1]);
    }

    #[test]
    fn xgcd_zero_zero() {
        let (g, _, _) = xgcd(&Rationals, &[], &[]);
        assert!(g.is_empty());
    }

    #[test]
    fn yun_examples() {
        // (Y-1)^2 (Y+2) = Y^3 - 3Y + 2
        let f = q(&[2, -3, 0, 1]);
        let sf = squarefree_decompose(&Rationals, &f).unwrap();
        assert_eq!(sf, vec![(q(&[2, 1]), 1), (q(&[-1, 1]), 2)]);
        assert_eq!(squarefree_decompose(&Rationals, &q(&[0, 0, 0, 1])).unwrap(), vec![(q(&[0, 1]), 3)]);
        let k = Fp::new(3).unwrap();
        assert!(matches!(squarefree_decompose(&k, &[0, 0, 0, 1]), Err(Error::CharTooSmall { .. })));
    }

    #[test]
    fn squarefree_in_small_characteristic() {
        let k = Fp::new(3).unwrap();
        // (Y+1)^3 (Y+2) over F_3
        let f = mul(&k, &[1, 0, 0, 1], &[2, 1]);
        let sf = squarefree_any(&k, &f);
        assert_eq!(sf, vec![(vec![2, 1], 1), (vec![1, 1], 3)]);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let k = Fp::new(1_000_003).unwrap();
        let a: Vec<u64> = (0..77).map(|i| (i * i + 3) % 1_000_003).collect();
        let b: Vec<u64> = (0..50).map(|i| (7 * i + 1) % 1_000_003).collect();
        assert_eq!(mul(&k, &a, &b), trimmed(&k, mul_school(&k, &a, &b)));
    }

    #[test]
    fn taylor_shift_small() {
        // (Y+1)^2 from Y^2
        assert_eq!(taylor_shift(&Rationals, &q(&[0, 0, 1]), &Rationals.from_i64(1)), q(&[1, 2, 1]));
    }
}
