//! The monic polynomial whose roots are all conjugates of a set of expansions.

use super::Rpe;
use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::dynev::linalg::charpoly;
use crate::dynev::{branch, Halt, TriSet, D5};
use crate::polyring::{Ser, Series, TBPoly};
use crate::{Error, Result};

/// Norm of one expansion down to `K_c[[X]]`, modulo `X^{p+1}`: the characteristic
/// polynomial of multiplication by `Gamma(T)` on `K_I[[X]][T]/(gamma T^e - X)`,
/// a free module of rank `e f` over `K_c[[X]]`. `c` is the first level of the owner.
pub fn norm_rpe_on<K: Field>(c: &TriSet<K>, r: &Rpe<K>, p: usize) -> D5<TBPoly<K>, K> {
    let s = &r.t;
    if r.low < 0 {
        return Err(Error::PreconditionViolated("norm of an expansion centred at infinity".into()).into());
    }
    if r.known < (r.e * p) as i64 {
        return Err(Error::PrecisionTooLow(format!("norm modulo X^{} of an expansion known to {}", p + 1, r.precision())).into());
    }
    // splits of the owner met while inverting gamma only touch Q
    let ginv = s.inv(&r.gamma).map_err(|h| match h {
        Halt::Split(parts) => Halt::Split(parts.iter().map(|x| x.level1()).collect()),
        f => f,
    })?;
    let (e, dp) = (r.e, s.dp());
    let dim = e * dp;
    let ring = Ser { t: c.clone(), n: p };
    let mut gpow = vec![s.one()];
    for j in 1..=p {
        gpow.push(s.mul(&gpow[j - 1], &ginv));
    }
    let z2 = s.z2();
    let mut m: Vec<Vec<Series<K>>> = vec![vec![vec![]; dim]; dim];
    for a in 0..e {
        // Gamma T^a = sum_{a'} cs[a'](X) T^{a'}
        let mut cs = vec![vec![s.zero(); p + 1]; e];
        for k in 0..r.coeffs.len() {
            let g = &r.coeffs[k];
            if s.is_zero(g) {
                continue;
            }
            let idx = k + a;
            let (a2, j) = (idx % e, idx / e);
            if j > p {
                break;
            }
            cs[a2][j] = s.add(&cs[a2][j], &s.mul(g, &gpow[j]));
        }
        let mut zb = s.one();
        for b in 0..dp {
            for (a2, col) in cs.iter().enumerate() {
                let mut entries = vec![vec![c.zero(); p + 1]; dp];
                for (j, x) in col.iter().enumerate() {
                    for (b2, y) in s.to_level1_coeffs(&s.mul(x, &zb)).into_iter().enumerate() {
                        entries[b2][j] = y;
                    }
                }
                for (b2, ser) in entries.into_iter().enumerate() {
                    m[a2 * dp + b2][a * dp + b] = upoly::trimmed(c, ser);
                }
            }
            zb = s.mul(&zb, &z2);
        }
    }
    let chi = charpoly(&ring, &m);
    Ok(TBPoly::new(c, chi, p))
}

/// Product of the norms of `rpes`, all owned by components of `c`, over every
/// component of `c`.
pub fn norm_rpe<K: Field>(c: &TriSet<K>, rpes: &[Rpe<K>], p: usize) -> Result<Vec<(TriSet<K>, TBPoly<K>)>> {
    branch(c, |cs| {
        let mut g = TBPoly::one(cs, p);
        for r in rpes {
            let owner = if r.t.q() == cs.q() { r.t.clone() } else { r.t.with_q(cs.q().to_vec()) };
            let rr = r.reduce_to(&owner);
            g = g.mul(cs, &norm_rpe_on(cs, &rr, p)?);
        }
        Ok(g)
    })
}
