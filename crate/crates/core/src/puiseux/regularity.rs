//! Regularity indices and `val(F_Y(S))` read off the polynomial itself: the number of
//! series agreeing with a truncation is a Newton polygon count.

use super::{Qq, Rpe};
use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::dynev::{El, TriSet, D5};
use crate::polyring::{ssubst_monomial, Ser, Series, TBPoly};
use crate::Error;

/// `T^{s (d - i)} a_i(gamma T^e)` modulo `T^len`, for every `i`.
fn scaled_coeffs<K: Field>(t: &TriSet<K>, f: &TBPoly<K>, gamma: &El<K>, e: usize, s: usize, len: usize) -> Vec<Series<K>> {
    let d = f.deg_y();
    f.c.iter()
        .enumerate()
        .map(|(i, a)| {
            let sh = s * (d - i);
            if sh >= len {
                return vec![];
            }
            let mut b = vec![t.zero(); sh];
            b.extend(ssubst_monomial(t, a, gamma, e, len - 1 - sh));
            upoly::trimmed(t, b)
        })
        .collect()
}

/// `T^s P(T)` for the Laurent polynomial `P = sum_{k <= upto} coeff(k) T^k`.
fn lifted_truncation<K: Field>(t: &TriSet<K>, r: &Rpe<K>, s: usize, upto: i64) -> Series<K> {
    let mut w = vec![t.zero(); (upto + s as i64 + 1).max(0) as usize];
    for k in r.low..=upto {
        let idx = (k + s as i64) as usize;
        w[idx] = r.coeff(k);
    }
    upoly::trimmed(t, w)
}

/// Valuation of a series below `len`, through zero tests; `None` if it vanishes there.
fn val_d5<K: Field>(t: &TriSet<K>, a: &[El<K>]) -> D5<Option<usize>, K> {
    for (j, c) in a.iter().enumerate() {
        if !t.zero_test(c)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

fn shift_of<K: Field>(r: &Rpe<K>) -> usize {
    (-r.low).max(0) as usize
}

/// Number of series `y` of `F(gamma T^e, y) = 0` with `val_T(y - floor(Gamma)_cut) > cut`.
pub fn count_agreeing<K: Field>(t: &TriSet<K>, f: &TBPoly<K>, r: &Rpe<K>, cut: i64) -> D5<usize, K> {
    let d = f.deg_y();
    let s = shift_of(r);
    let lam = (cut + s as i64).max(0) as usize;
    let lc_val = val_d5(t, &f.c[d])?.expect("nonzero leading coefficient");
    let full = r.e * lc_val + lam * d + 1;
    let w = lifted_truncation(t, r, s, cut);
    let mut len = (2 * lam + 8).min(full);
    loop {
        let b = scaled_coeffs(t, f, &r.gamma, r.e, s, len);
        let ring = Ser { t: t.clone(), n: len - 1 };
        let lin = upoly::trimmed(&ring, vec![w.iter().take(len).cloned().collect(), vec![t.one()]]);
        let mut acc: Vec<Series<K>> = vec![];
        for bi in b.iter().rev() {
            acc = upoly::add(&ring, &upoly::mul(&ring, &acc, &lin), std::slice::from_ref(bi));
        }
        let mut best: Option<(usize, usize)> = None;
        for (i, a) in acc.iter().enumerate() {
            if let Some(j) = val_d5(t, a)? {
                let m = j + lam * i;
                if best.is_none_or(|(bm, _)| m < bm) {
                    best = Some((m, i));
                }
            }
        }
        match best {
            Some((m, i)) if m < len => return Ok(i),
            _ if len >= full => unreachable!("the leading point bounds the minimum"),
            _ => len = (2 * len).min(full),
        }
    }
}

/// `val_T F_Y(gamma T^e, floor(Gamma)_upto)`, shifted back for Laurent expansions.
fn fy_val<K: Field>(t: &TriSet<K>, f: &TBPoly<K>, r: &Rpe<K>, upto: i64) -> D5<i64, K> {
    let d = f.deg_y();
    let s = shift_of(r);
    let w = lifted_truncation(t, r, s, upto);
    let mut len = 16usize;
    loop {
        let b = scaled_coeffs(t, f, &r.gamma, r.e, s, len);
        let n = len - 1;
        let mut acc: Series<K> = vec![];
        for i in (1..=d).rev() {
            let bi: Series<K> = b[i].iter().map(|c| t.mul(c, &t.from_i64(i as i64))).collect();
            acc = upoly::add(t, &crate::polyring::smul(t, &acc, &w, n), &bi);
        }
        if let Some(j) = val_d5(t, &upoly::trimmed(t, acc))? {
            return Ok(j as i64 - (s * (d - 1)) as i64);
        }
        if len > 1 << 22 {
            return Err(Error::NotSeparable.into());
        }
        len *= 2;
    }
}

/// Regularity index and `v = val(F_Y(S))` of an expansion of `F`, using the recorded
/// `r` as a starting guess.
pub fn regularity_and_v<K: Field>(t: &TriSet<K>, f: &TBPoly<K>, r: &Rpe<K>) -> D5<(i64, Qq), K> {
    let lo = r.val().map_or(0, |v| v.min(0));
    let mut n = r.r.max(lo);
    if count_agreeing(t, f, r, n)? == 1 {
        while n > lo && count_agreeing(t, f, r, n - 1)? == 1 {
            n -= 1;
        }
    } else {
        loop {
            n += 1;
            if n > r.known {
                return Err(Error::PrecisionTooLow(format!("expansion known through T^{} does not separate", r.known)).into());
            }
            if count_agreeing(t, f, r, n)? == 1 {
                break;
            }
        }
    }
    let v = fy_val(t, f, r, n)?;
    Ok((n, Qq::new(v, r.e as i64)))
}
