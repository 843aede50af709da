//! Complete factorization of square-free polynomials over F_p (p odd): distinct-degree
//! splitting, then Cantor-Zassenhaus on each equal-degree part.

use rand_chacha::ChaCha8Rng;

use super::field::{Field, Fp};
use super::upoly;

fn mulmod(k: &Fp, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    upoly::rem_monic(k, &upoly::mul(k, a, b), m)
}

fn powmod(k: &Fp, a: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = upoly::rem_monic(k, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(k, &acc, &b, m);
        }
        b = mulmod(k, &b, &b, m);
        e >>= 1;
    }
    upoly::rem_monic(k, &acc, m)
}

/// `a^((p^d - 1)/2) mod m`, as `(prod_{j<d} a^(p^j))^((p-1)/2)`.
fn half_power(k: &Fp, a: &[u64], d: usize, m: &[u64]) -> Vec<u64> {
    let p = k.characteristic();
    let mut frob = upoly::rem_monic(k, a, m);
    let mut norm = frob.clone();
    for _ in 1..d {
        frob = powmod(k, &frob, p, m);
        norm = mulmod(k, &norm, &frob, m);
    }
    powmod(k, &norm, (p - 1) / 2, m)
}

fn equal_degree(k: &Fp, g: Vec<u64>, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g);
        return;
    }
    loop {
        let a: Vec<u64> = upoly::trimmed(k, (0..n).map(|_| k.random(rng)).collect());
        if upoly::deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = upoly::sub(k, &half_power(k, &a, d, &g), &[1]);
        let u = upoly::gcd(k, &b, &g);
        let du = upoly::deg(&u).unwrap_or(0);
        if du > 0 && du < n {
            let v = upoly::div_exact(k, &g, &u);
            equal_degree(k, u, d, rng, out);
            equal_degree(k, v, d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of the monic square-free `f`. In characteristic 2 the
/// input is returned whole.
pub fn factor_squarefree(k: &Fp, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut f = upoly::monic(k, f);
    if k.characteristic() == 2 || f.len() <= 2 {
        return vec![f];
    }
    let p = k.characteristic();
    let x = vec![0, 1];
    let mut out = vec![];
    let mut h = x.clone();
    let mut d = 1;
    while f.len() - 1 >= 2 * d {
        h = powmod(k, &h, p, &f);
        let g = upoly::gcd(k, &upoly::sub(k, &h, &x), &f);
        if g.len() > 1 {
            f = upoly::div_exact(k, &f, &g);
            h = upoly::rem_monic(k, &h, &f);
            equal_degree(k, g, d, rng, &mut out);
        }
        d += 1;
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}
