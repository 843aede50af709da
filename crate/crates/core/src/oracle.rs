//! Slow, direct verifiers for test suites and `--verify`. None of them calls the
//! production routines they are meant to check.

use std::fmt;

use crate::algebra::bpoly::{resultant_y, BPoly};
use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::dynev::{branch, El, TriSet, D5};
use crate::puiseux::Rpe;

// ---- truncated series over a field

fn mul_k<K: Field>(k: &K, a: &[K::El], b: &[K::El], len: usize) -> Vec<K::El> {
    let mut out = vec![k.zero(); len.min((a.len() + b.len()).saturating_sub(1))];
    for (i, x) in a.iter().enumerate().take(len) {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    out
}

fn inv_k<K: Field>(k: &K, a: &[K::El], len: usize) -> Vec<K::El> {
    let c = k.inv(&a[0]);
    let mut out = vec![k.zero(); len];
    for n in 0..len {
        let mut s = if n == 0 { k.one() } else { k.zero() };
        for j in 1..=n.min(a.len() - 1) {
            s = k.sub(&s, &k.mul(&a[j], &out[n - j]));
        }
        out[n] = k.mul(&s, &c);
    }
    out
}

fn val_k<K: Field>(k: &K, a: &[K::El], len: usize) -> Option<usize> {
    a.iter().take(len).position(|x| !k.is_zero(x))
}

// ---- lifting order

/// Smallest `k <= k_max` with `X^k` in `(G, H)`, decided modulo `X^{k+1}` by asking
/// whether `X^k` lies in the K-span of `G * X^s Y^a mod H`. `H` must be monic in `Y`;
/// polynomials are lists of `Y`-coefficients, each a series in `X`. `None` if no
/// such `k` exists up to `k_max`.
pub fn kappa_bruteforce<K: Field>(k: &K, g: &[Vec<K::El>], h: &[Vec<K::El>], k_max: usize) -> Option<usize> {
    let dh = h.len() - 1;
    assert!(h[dh].len() == 1 && k.is_one(&h[dh][0]), "H must be monic");
    if dh == 0 {
        return Some(0);
    }
    for kk in 0..=k_max {
        let len = kk + 1;
        let dim = dh * len;
        // column (a, s): G Y^a X^s reduced mod (H, X^len), flattened as (b, t) -> b*len + t
        let mut cols = vec![];
        for a in 0..dh {
            for s in 0..len {
                let mut p: Vec<Vec<K::El>> = vec![vec![k.zero(); len]; g.len() + a];
                for (i, gi) in g.iter().enumerate() {
                    for (j, c) in gi.iter().enumerate().take(len.saturating_sub(s)) {
                        p[i + a][j + s] = c.clone();
                    }
                }
                for top in (dh..p.len()).rev() {
                    let lead = p[top].clone();
                    for (i, hi) in h.iter().enumerate() {
                        let prod = mul_k(k, &lead, hi, len);
                        for (j, c) in prod.into_iter().enumerate() {
                            let row = &mut p[top - dh + i];
                            row[j] = k.sub(&row[j], &c);
                        }
                    }
                }
                let mut col = vec![k.zero(); dim];
                for b in 0..dh.min(p.len()) {
                    for t in 0..len {
                        col[b * len + t] = p[b][t].clone();
                    }
                }
                cols.push(col);
            }
        }
        let mut target = vec![k.zero(); dim];
        target[kk] = k.one();
        if in_span(k, &cols, &target) {
            return Some(kk);
        }
    }
    None
}

/// Whether `v` is a K-linear combination of `cols`, by row reduction of `[cols | v]`.
fn in_span<K: Field>(k: &K, cols: &[Vec<K::El>], v: &[K::El]) -> bool {
    let n = v.len();
    let mut rows: Vec<Vec<K::El>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).chain(std::iter::once(v[i].clone())).collect())
        .collect();
    let w = cols.len();
    let mut r = 0;
    for c in 0..w {
        let Some(p) = (r..n).find(|&i| !k.is_zero(&rows[i][c])) else { continue };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..n {
            if i != r && !k.is_zero(&rows[i][c]) {
                let f = rows[i][c].clone();
                for j in c..=w {
                    let d = k.mul(&f, &rows[r][j]);
                    rows[i][j] = k.sub(&rows[i][j], &d);
                }
            }
        }
        r += 1;
    }
    rows[r..].iter().all(|row| k.is_zero(&row[w]))
}

// ---- resultant valuation

/// `val_X res_Y(F, F_Y)` from the Sylvester matrix, eliminated over `K[[X]]` with
/// pivots of least valuation. `None` when the resultant vanishes.
pub fn resultant_valuation<K: Field>(k: &K, f: &BPoly<K>) -> Option<usize> {
    let d = f.deg_y();
    if d == 0 {
        return Some(0);
    }
    let fy: Vec<Vec<K::El>> = (1..=d).map(|i| f.c[i].iter().map(|a| k.mul(a, &k.from_i64(i as i64))).collect()).collect();
    let n = 2 * d - 1;
    let mut m: Vec<Vec<Vec<K::El>>> = vec![vec![vec![]; n]; n];
    // Sylvester rows: Y^a F for a < d-1, then Y^b F_Y for b < d; columns by decreasing Y-degree
    for a in 0..d - 1 {
        for (i, c) in f.c.iter().enumerate() {
            m[a][n - 1 - (i + a)] = c.clone();
        }
    }
    for b in 0..d {
        for (i, c) in fy.iter().enumerate() {
            m[d - 1 + b][n - 1 - (i + b)] = c.clone();
        }
    }
    let bound = f.deg_x() * n;
    let mut prec = 16;
    loop {
        match det_valuation(k, &m, prec) {
            Ok(v) => return Some(v),
            Err(lower) if lower > bound => return None,
            Err(_) => prec *= 2,
        }
    }
}

/// Valuation of the determinant from entries known modulo `X^prec`, or a lower bound
/// when the precision runs out first.
fn det_valuation<K: Field>(k: &K, m0: &[Vec<Vec<K::El>>], prec: usize) -> Result<usize, usize> {
    let n = m0.len();
    let mut m: Vec<Vec<Vec<K::El>>> = m0
        .iter()
        .map(|row| row.iter().map(|a| a.iter().take(prec).cloned().collect()).collect())
        .collect();
    let mut p = prec;
    let mut acc = 0;
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    while !rows.is_empty() {
        let mut best: Option<(usize, usize, usize)> = None;
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                if let Some(v) = val_k(k, &m[r][c], p) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, ri, ci));
                    }
                }
            }
        }
        let Some((v, ri, ci)) = best else { return Err(acc + p) };
        let (r, c) = (rows.remove(ri), cols.remove(ci));
        let np = p - v;
        let unit: Vec<K::El> = m[r][c].iter().skip(v).take(np).cloned().collect();
        let uinv = inv_k(k, &unit, np);
        for &r2 in &rows {
            let a = &m[r2][c];
            if val_k(k, a, p).is_none() {
                continue;
            }
            let shifted: Vec<K::El> = a.iter().skip(v).take(np).cloned().collect();
            let factor = mul_k(k, &shifted, &uinv, np);
            for &c2 in &cols {
                let prod = mul_k(k, &factor, &m[r][c2], np);
                let mut e: Vec<K::El> = m[r2][c2].iter().take(np).cloned().collect();
                e.resize(np, k.zero());
                for (j, x) in prod.into_iter().enumerate() {
                    e[j] = k.sub(&e[j], &x);
                }
                m[r2][c2] = e;
            }
        }
        acc += v;
        p = np;
    }
    Ok(acc)
}

// ---- expansion systems

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Radical,
    Centre,
    Substitution,
    SumEf,
    Separation,
}

/// Outcome of [`verify_rpe_system`]: the first failed check, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub failure: Option<(Check, String)>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass"),
            Some((c, msg)) => write!(f, "fail at {c:?}: {msg}"),
        }
    }
}

fn fail(c: Check, msg: String) -> Report {
    Report { failure: Some((c, msg)) }
}

fn smul<K: Field>(t: &TriSet<K>, a: &[El<K>], b: &[El<K>], len: usize) -> Vec<El<K>> {
    let mut out = vec![t.zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if t.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = t.add(&out[i + j], &t.mul(x, y));
        }
    }
    out
}

fn sadd<K: Field>(t: &TriSet<K>, a: &[El<K>], b: &[El<K>], len: usize) -> Vec<El<K>> {
    (0..len)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => t.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            _ => t.zero(),
        })
        .collect()
}

fn spow<K: Field>(t: &TriSet<K>, a: &[El<K>], e: usize, len: usize) -> Vec<El<K>> {
    let mut out = vec![t.zero(); len];
    if len > 0 {
        out[0] = t.one();
    }
    for _ in 0..e {
        out = smul(t, &out, a, len);
    }
    out
}

/// `T^{s(d-i)} a_i(z + gamma T^e)` modulo `T^len` for every `i`.
fn substituted_coeffs<K: Field>(t: &TriSet<K>, f: &BPoly<K>, r: &Rpe<K>, s: usize, len: usize) -> Vec<Vec<El<K>>> {
    let d = f.deg_y();
    let mut x = vec![t.zero(); len];
    x[0] = t.z1();
    if r.e < len {
        x[r.e] = t.add(&x[r.e], &r.gamma);
    }
    f.c.iter()
        .enumerate()
        .map(|(i, a)| {
            let mut acc: Vec<El<K>> = vec![t.zero(); len];
            for c in a.iter().rev() {
                acc = smul(t, &acc, &x, len);
                acc[0] = t.add(&acc[0], &t.from_base(c.clone()));
            }
            let sh = s * (d - i);
            let mut out = vec![t.zero(); len];
            for j in 0..len.saturating_sub(sh) {
                out[j + sh] = acc[j].clone();
            }
            out
        })
        .collect()
}

fn binom<K: Field>(k: &K, n: usize, i: usize) -> K::El {
    let mut row = vec![k.one()];
    for _ in 0..n {
        let mut next = vec![k.one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = k.add(&row[j - 1], &row[j]);
        }
        row = next;
    }
    row[i].clone()
}

/// `T^s` times the expansion truncated after exponent `upto`, as a series.
fn scaled_truncation<K: Field>(t: &TriSet<K>, r: &Rpe<K>, s: usize, upto: i64, len: usize) -> Vec<El<K>> {
    let mut w = vec![t.zero(); len];
    for (i, c) in r.coeffs.iter().enumerate() {
        let ex = r.low + i as i64;
        if ex > upto {
            break;
        }
        let idx = (ex + s as i64) as usize;
        if idx < len {
            w[idx] = c.clone();
        }
    }
    w
}

fn first_nonzero<K: Field>(t: &TriSet<K>, a: &[El<K>]) -> D5<Option<usize>, K> {
    for (j, c) in a.iter().enumerate() {
        if !t.zero_test(c)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Number of roots of `F(z + gamma T^e, y)` agreeing with the expansion beyond `T^cut`:
/// the largest index among the minimal valuations of `G(W) = F(.., P + T^{cut+1} W)`.
fn agreeing<K: Field>(k: &K, t: &TriSet<K>, f: &BPoly<K>, r: &Rpe<K>, cut: i64) -> D5<usize, K> {
    let d = f.deg_y();
    let s = (-r.low).max(0) as usize;
    let sh = (cut + 1 + s as i64).max(0) as usize;
    let probe = substituted_coeffs(t, f, r, s, sh * d + 2);
    let lead = first_nonzero(t, &probe[d])?;
    let len = match lead {
        Some(v) => sh * d + v + 1,
        None => {
            let mut l = 2 * (sh * d + 2);
            loop {
                let c = substituted_coeffs(t, f, r, s, l);
                if let Some(v) = first_nonzero(t, &c[d])? {
                    break sh * d + v + 1;
                }
                l *= 2;
            }
        }
    };
    let a = substituted_coeffs(t, f, r, s, len);
    let p = scaled_truncation(t, r, s, cut, len);
    let mut best: Option<(usize, usize)> = None;
    for i in 0..=d {
        // g_i = T^{sh i} sum_{j >= i} C(j, i) a_j P^{j-i}
        let mut g = vec![t.zero(); len];
        for (j, aj) in a.iter().enumerate().skip(i) {
            let c = t.from_base(binom(k, j, i));
            let term = smul(t, aj, &spow(t, &p, j - i, len), len);
            let term: Vec<El<K>> = term.iter().map(|x| t.mul(x, &c)).collect();
            g = sadd(t, &g, &term, len);
        }
        let mut gi = vec![t.zero(); len];
        for j in 0..len.saturating_sub(sh * i) {
            gi[j + sh * i] = g[j].clone();
        }
        if let Some(v) = first_nonzero(t, &gi)? {
            if best.is_none_or(|(bv, _)| v <= bv) {
                best = Some((v, i));
            }
        }
    }
    Ok(best.map_or(0, |(_, i)| i))
}

/// Whether both levels of `t` are square-free: `gcd(Q, Q') = 1` and the discriminant
/// of `P` in `Z2` is a unit modulo `Q`.
fn radical<K: Field>(k: &K, t: &TriSet<K>) -> bool {
    let q = t.q();
    if upoly::deg(&upoly::gcd(k, q, &upoly::derivative(k, q))).unwrap_or(0) > 0 {
        return false;
    }
    if t.dp() == 1 {
        return true;
    }
    let p = BPoly::new(k, t.p().to_vec());
    let disc = resultant_y(k, &p, &p.derivative_y(k));
    !disc.is_empty() && upoly::deg(&upoly::gcd(k, q, &disc)).unwrap_or(0) == 0
}

/// Checks a system of expansions of `F` centred at the roots of `q` (`X = z + gamma T^e`):
/// radical triangular sets owned by `q`, `F(z + gamma T^e, Gamma) = 0` to the certified
/// precision, `sum e f = d_Y` above every root of `q`, and separation at each `r`.
pub fn verify_rpe_system<K: Field>(k: &K, f: &BPoly<K>, q: &[K::El], rpes: &[Rpe<K>]) -> Report {
    let d = f.deg_y();
    for (n, r) in rpes.iter().enumerate() {
        if !radical(k, &r.t) {
            return fail(Check::Radical, format!("expansion {n}: triangular set is not square-free"));
        }
        if !upoly::rem_monic(k, q, r.t.q()).is_empty() {
            return fail(Check::Centre, format!("expansion {n}: Q does not divide the centre polynomial"));
        }
    }
    for (n, r) in rpes.iter().enumerate() {
        let t = &r.t;
        let s = (-r.low).max(0) as usize;
        let len = (r.known + s as i64 + 1).max(0) as usize;
        let a = substituted_coeffs(t, f, r, s, len);
        let y = scaled_truncation(t, r, s, r.known, len);
        let mut acc = vec![t.zero(); len];
        for ai in a.iter().rev() {
            acc = sadd(t, &smul(t, &acc, &y, len), ai, len);
        }
        if let Some(j) = acc.iter().position(|c| !t.is_zero(c)) {
            return fail(
                Check::Substitution,
                format!("expansion {n}: F(X, Gamma) has a term T^{} below the certified T^{}", j as i64 - (s * d) as i64, r.known + 1),
            );
        }
    }
    // refine the Q's into coprime cells; every root of q lies in exactly one cell
    let mut cells: Vec<Vec<K::El>> = vec![upoly::monic(k, q)];
    for r in rpes {
        let mut next = vec![];
        for c in cells {
            let g = upoly::gcd(k, &c, r.t.q());
            if upoly::deg(&g).unwrap_or(0) > 0 && g.len() < c.len() {
                next.push(upoly::div_exact(k, &c, &g));
                next.push(g);
            } else {
                next.push(c);
            }
        }
        cells = next;
    }
    for c in &cells {
        let ef: usize = rpes
            .iter()
            .filter(|r| upoly::rem_monic(k, r.t.q(), c).is_empty())
            .map(|r| r.e * r.t.dp())
            .sum();
        if ef != d {
            return fail(Check::SumEf, format!("sum of e f is {ef} above the roots of a factor of degree {}, expected {d}", c.len() - 1));
        }
    }
    for (n, r) in rpes.iter().enumerate() {
        let counts = match branch(&r.t, |x| agreeing(k, x, f, &r.reduce_to(x), r.r)) {
            Ok(c) => c,
            Err(e) => return fail(Check::Separation, format!("expansion {n}: {e}")),
        };
        if let Some((_, c)) = counts.iter().find(|(_, c)| *c != 1) {
            return fail(Check::Separation, format!("expansion {n}: {c} roots agree through T^{}", r.r));
        }
    }
    Report { failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fp, Rationals};
    use crate::ctx::Ctx;
    use crate::puiseux::rnp3;

    fn ser(k: &Fp, c: &[i64]) -> Vec<u64> {
        c.iter().map(|&x| k.from_i64(x)).collect()
    }

    fn bp<K: Field>(k: &K, terms: &[(i64, usize, usize)]) -> BPoly<K> {
        BPoly::from_terms(k, &terms.iter().map(|&(c, i, j)| (k.from_i64(c), i, j)).collect::<Vec<_>>())
    }

    #[test]
    fn kappa_examples() {
        let k = Fp::new(101).unwrap();
        let y_minus_x = vec![ser(&k, &[0, -1]), ser(&k, &[1])];
        let y_plus_x = vec![ser(&k, &[0, 1]), ser(&k, &[1])];
        assert_eq!(kappa_bruteforce(&k, &y_minus_x, &y_plus_x, 5), Some(1));
        let y_minus_1 = vec![ser(&k, &[-1]), ser(&k, &[1])];
        assert_eq!(kappa_bruteforce(&k, &y_minus_x, &y_minus_1, 5), Some(0));
        let close = vec![ser(&k, &[0, -1, 0, 1]), ser(&k, &[1])];
        assert_eq!(kappa_bruteforce(&k, &y_minus_x, &close, 5), Some(3));
        assert_eq!(kappa_bruteforce(&k, &y_minus_x, &close, 2), None);
        assert_eq!(kappa_bruteforce(&k, &y_minus_x, &y_minus_x, 6), None);
    }

    #[test]
    fn resultant_valuations() {
        let q = Rationals;
        assert_eq!(resultant_valuation(&q, &bp(&q, &[(1, 2, 0), (-1, 0, 1)])), Some(1));
        // Y^4 + (Y - X^2)^2
        let f = bp(&q, &[(1, 4, 0), (1, 2, 0), (-2, 1, 2), (1, 0, 4)]);
        assert_eq!(resultant_valuation(&q, &f), Some(8));
        assert_eq!(resultant_valuation(&q, &bp(&q, &[(1, 2, 0), (-2, 1, 1), (1, 0, 2)])), None);
        let k = Fp::new(101).unwrap();
        let mut g = bp(&k, &[(1, 0, 0)]);
        for e in 1..=4 {
            g = g.mul(&k, &bp(&k, &[(1, 1, 0), (-1, 0, e)]));
        }
        let rf = crate::algebra::bpoly::discriminant_resultant(&k, &g);
        assert_eq!(resultant_valuation(&k, &g), rf.iter().position(|a| *a != 0));
    }

    fn square_root_system() -> (Fp, BPoly<Fp>, Vec<Rpe<Fp>>) {
        let k = Fp::new(7).unwrap();
        // (Y^2 - X - X^2)(Y - 1)
        let f = bp(&k, &[(1, 2, 0), (-1, 0, 1), (-1, 0, 2)]).mul(&k, &bp(&k, &[(1, 1, 0), (-1, 0, 0)]));
        let rs = rnp3(&Ctx::default(), &k, &f, &[0, 1], 6).unwrap();
        (k, f, rs)
    }

    #[test]
    fn valid_system_passes() {
        let (k, f, rs) = square_root_system();
        let rep = verify_rpe_system(&k, &f, &[0, 1], &rs);
        assert!(rep.ok(), "{rep}");
    }

    #[test]
    fn tampered_coefficient_fails_substitution() {
        let (k, f, mut rs) = square_root_system();
        let r = rs.iter_mut().find(|r| r.e == 2).unwrap();
        let i = r.coeffs.iter().position(|c| !r.t.is_zero(c)).unwrap();
        r.coeffs[i] = r.t.add(&r.coeffs[i], &r.t.one());
        assert_eq!(verify_rpe_system(&k, &f, &[0, 1], &rs).failure.unwrap().0, Check::Substitution);
    }

    #[test]
    fn duplicate_fails_sum() {
        let (k, f, mut rs) = square_root_system();
        rs.push(rs[0].clone());
        assert_eq!(verify_rpe_system(&k, &f, &[0, 1], &rs).failure.unwrap().0, Check::SumEf);
    }

    #[test]
    fn early_truncation_fails_separation() {
        let (k, f, mut rs) = square_root_system();
        let r = rs.iter_mut().find(|r| r.e == 2).unwrap();
        r.r = 0;
        assert_eq!(verify_rpe_system(&k, &f, &[0, 1], &rs).failure.unwrap().0, Check::Separation);
    }
}
