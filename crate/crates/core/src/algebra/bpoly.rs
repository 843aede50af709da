//! Exact bivariate polynomials over the base field and resultants in Y.

use super::field::{Field, Ring};
use super::upoly;

/// The ring K[X], elements trimmed coefficient vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct KX<K: Field>(pub K);

impl<K: Field> Ring for KX<K> {
    type El = Vec<K::El>;

    fn zero(&self) -> Self::El {
        vec![]
    }
    fn one(&self) -> Self::El {
        vec![self.0.one()]
    }
    fn from_i64(&self, n: i64) -> Self::El {
        upoly::constant(&self.0, self.0.from_i64(n))
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        upoly::add(&self.0, a, b)
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        upoly::sub(&self.0, a, b)
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        upoly::neg(&self.0, a)
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        upoly::mul(&self.0, a, b)
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        a.is_empty()
    }
}

/// `F = sum_i c[i](X) Y^i`, with every `c[i]` trimmed and the Y-list trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct BPoly<K: Field> {
    pub c: Vec<Vec<K::El>>,
}

impl<K: Field> BPoly<K> {
    pub fn new(k: &K, c: Vec<Vec<K::El>>) -> Self {
        let c = c.into_iter().map(|x| upoly::trimmed(k, x)).collect();
        BPoly { c: upoly::trimmed(&KX(k.clone()), c) }
    }

    pub fn zero() -> Self {
        BPoly { c: vec![] }
    }

    /// Builds from `(coefficient, i, j)` triples meaning `coefficient * Y^i X^j`.
    pub fn from_terms(k: &K, terms: &[(K::El, usize, usize)]) -> Self {
        let mut c: Vec<Vec<K::El>> = vec![];
        for (a, i, j) in terms {
            if c.len() <= *i {
                c.resize(i + 1, vec![]);
            }
            if c[*i].len() <= *j {
                c[*i].resize(j + 1, k.zero());
            }
            c[*i][*j] = k.add(&c[*i][*j], a);
        }
        Self::new(k, c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.c.iter().map(|x| x.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn total_deg(&self) -> usize {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_empty())
            .map(|(i, x)| i + x.len() - 1)
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Option<&K::El> {
        self.c.get(i).and_then(|x| x.get(j))
    }

    /// Leading coefficient in Y, a polynomial in X.
    pub fn lc_y(&self) -> &[K::El] {
        self.c.last().map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn is_monic_y(&self, k: &K) -> bool {
        let lc = self.lc_y();
        lc.len() == 1 && k.is_one(&lc[0])
    }

    pub fn add(&self, k: &K, o: &Self) -> Self {
        BPoly { c: upoly::add(&KX(k.clone()), &self.c, &o.c) }
    }

    pub fn sub(&self, k: &K, o: &Self) -> Self {
        BPoly { c: upoly::sub(&KX(k.clone()), &self.c, &o.c) }
    }

    pub fn mul(&self, k: &K, o: &Self) -> Self {
        BPoly { c: upoly::mul(&KX(k.clone()), &self.c, &o.c) }
    }

    pub fn scale(&self, k: &K, s: &K::El) -> Self {
        Self::new(k, self.c.iter().map(|x| upoly::scale(k, x, s)).collect())
    }

    pub fn pow(&self, k: &K, e: u32) -> Self {
        let r = KX(k.clone());
        let mut acc = BPoly { c: vec![r.one()] };
        for _ in 0..e {
            acc = acc.mul(k, self);
        }
        acc
    }

    pub fn derivative_y(&self, k: &K) -> Self {
        Self::new(
            k,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| upoly::scale(k, x, &k.from_i64(i as i64)))
                .collect(),
        )
    }

    /// `F(X + a, Y)`.
    pub fn shift_x(&self, k: &K, a: &K::El) -> Self {
        Self::new(k, self.c.iter().map(|x| upoly::taylor_shift(k, x, a)).collect())
    }

    /// `X^{deg_X F} F(1/X, Y)`.
    pub fn reverse_x(&self, k: &K) -> Self {
        let dx = self.deg_x();
        Self::new(k, self.c.iter().map(|x| if x.is_empty() { vec![] } else { upoly::reverse(k, x, dx) }).collect())
    }

    /// X-adic valuation of the whole polynomial (`None` for zero).
    pub fn val_x(&self, k: &K) -> Option<usize> {
        self.c.iter().filter_map(|x| x.iter().position(|a| !k.is_zero(a))).min()
    }

    /// `F(a, Y)`.
    pub fn eval_x(&self, k: &K, a: &K::El) -> Vec<K::El> {
        upoly::trimmed(k, self.c.iter().map(|x| upoly::eval(k, x, a)).collect())
    }

    /// Content in K[X] of F viewed in K[X][Y], made monic.
    pub fn content_y(&self, k: &K) -> Vec<K::El> {
        let mut g: Vec<K::El> = vec![];
        for x in &self.c {
            g = upoly::gcd(k, &g, x);
        }
        g
    }

    /// Every exponent pair `(i, j)` with nonzero coefficient of `Y^i X^j`.
    pub fn support(&self, k: &K) -> Vec<(usize, usize)> {
        let mut s = vec![];
        for (i, x) in self.c.iter().enumerate() {
            for (j, a) in x.iter().enumerate() {
                if !k.is_zero(a) {
                    s.push((i, j));
                }
            }
        }
        s
    }

    /// Human-readable rendering, e.g. `Y^2 - X`.
    pub fn show(&self, k: &K) -> String {
        let mut parts: Vec<(bool, String)> = vec![];
        for i in (0..self.c.len()).rev() {
            for j in (0..self.c[i].len()).rev() {
                let a = &self.c[i][j];
                if k.is_zero(a) {
                    continue;
                }
                let (negative, mag) = match k.negative_part(a) {
                    Some(m) => (true, m),
                    None => (false, a.clone()),
                };
                let mut mono = vec![];
                if i > 0 {
                    mono.push(if i == 1 { "Y".to_string() } else { format!("Y^{i}") });
                }
                if j > 0 {
                    mono.push(if j == 1 { "X".to_string() } else { format!("X^{j}") });
                }
                let body = if mono.is_empty() {
                    k.show(&mag)
                } else if k.is_one(&mag) {
                    mono.join("*")
                } else {
                    format!("{}*{}", k.show(&mag), mono.join("*"))
                };
                parts.push((negative, body));
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (neg, body)) in parts.into_iter().enumerate() {
            match (idx, neg) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }
}

/// Pseudo-remainder `lc(b)^{deg a - deg b + 1} a mod b` over any ring.
pub fn prem<R: Ring>(r: &R, a: &[R::El], b: &[R::El]) -> Vec<R::El> {
    let db = upoly::deg(b).expect("pseudo-division by zero");
    let mut rem = a.to_vec();
    let lc = b[db].clone();
    if rem.len() <= db {
        return rem;
    }
    let mut steps = rem.len() - db;
    while let Some(dr) = upoly::deg(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].clone();
        let mut next: Vec<R::El> = rem.iter().map(|x| r.mul(x, &lc)).collect();
        for (i, bi) in b.iter().enumerate() {
            let k = dr - db + i;
            next[k] = r.sub(&next[k], &r.mul(&c, bi));
        }
        upoly::trim(r, &mut next);
        rem = next;
        steps -= 1;
    }
    // complete the multiplier when the remainder degree dropped by more than one
    let extra = r.pow(&lc, steps as u64);
    upoly::trimmed(r, rem.iter().map(|x| r.mul(x, &extra)).collect())
}

/// Resultant in Y of two polynomials of K[X][Y], as the Sylvester determinant with
/// the rows of `f` first. Subresultant pseudo-remainder sequence; contents are not removed.
pub fn resultant_y<K: Field>(k: &K, f: &BPoly<K>, g: &BPoly<K>) -> Vec<K::El> {
    let kx = KX(k.clone());
    if f.is_zero() || g.is_zero() {
        return vec![];
    }
    let (mut a, mut b) = (f.c.clone(), g.c.clone());
    let mut sign = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        let (da, db) = (a.len() - 1, b.len() - 1);
        sign = (da * db) % 2 == 1;
    }
    if b.len() == 1 {
        let r = kx.pow(&b[0], (a.len() - 1) as u64);
        return if sign { kx.neg(&r) } else { r };
    }
    let mut gg = kx.one();
    let mut h = kx.one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&kx, &a, &b);
        if r.is_empty() {
            return vec![];
        }
        a = b;
        let div = kx.mul(&gg, &kx.pow(&h, delta as u64));
        b = r.iter().map(|x| upoly::div_exact(k, x, &div)).collect();
        gg = a.last().unwrap().clone();
        // h <- h^{1-delta} g^delta
        let gd = kx.pow(&gg, delta as u64);
        h = if delta == 0 {
            h
        } else {
            upoly::div_exact(k, &gd, &kx.pow(&h, (delta - 1) as u64))
        };
        if b.len() == 1 {
            let da = a.len() - 1;
            let num = kx.pow(&b[0], da as u64);
            let res = upoly::div_exact(k, &num, &kx.pow(&h, (da - 1) as u64));
            return if sign { kx.neg(&res) } else { res };
        }
    }
}

/// Discriminant-type resultant `R_F = res_Y(F, F_Y)`.
pub fn discriminant_resultant<K: Field>(k: &K, f: &BPoly<K>) -> Vec<K::El> {
    resultant_y(k, f, &f.derivative_y(k))
}

/// Resultant of two univariate polynomials over a field, Sylvester sign convention.
pub fn resultant_univariate<K: Field>(k: &K, f: &[K::El], g: &[K::El]) -> K::El {
    let (Some(mut da), Some(mut db)) = (upoly::deg(f), upoly::deg(g)) else {
        return k.zero();
    };
    let (mut a, mut b) = (f.to_vec(), g.to_vec());
    let mut acc = k.one();
    loop {
        if db == 0 {
            return k.mul(&acc, &k.pow(&b[0], da as u64));
        }
        let r = upoly::divrem(k, &a, &b).1;
        let Some(dr) = upoly::deg(&r) else {
            return k.zero();
        };
        // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        let mut factor = k.pow(&b[db], (da - dr) as u64);
        if (da * db) % 2 == 1 {
            factor = k.neg(&factor);
        }
        acc = k.mul(&acc, &factor);
        a = b;
        b = r;
        da = db;
        db = dr;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fp, Rationals};

    fn q(n: i64) -> num_rational::BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn resultant_sign_follows_sylvester() {
        let f = BPoly::from_terms(&Rationals, &[(q(1), 2, 0), (q(-1), 0, 1)]);
        let g = BPoly::from_terms(&Rationals, &[(q(2), 1, 0)]);
        assert_eq!(resultant_y(&Rationals, &f, &g), vec![q(0), q(-4)]);
        let one = BPoly::from_terms(&Rationals, &[(q(1), 0, 0)]);
        assert_eq!(resultant_y(&Rationals, &f, &one), vec![q(1)]);
    }

    #[test]
    fn sharp_family_valuation() {
        // Y^4 + (Y - X^2)^2: the discriminant is 16 X^8 (16 X^4 + 1)
        let k = Fp::new(1_000_003).unwrap();
        let y = BPoly::from_terms(&k, &[(1, 1, 0)]);
        let x2 = BPoly::from_terms(&k, &[(1, 0, 2)]);
        let f = y.pow(&k, 4).add(&k, &y.sub(&k, &x2).pow(&k, 2));
        let r = discriminant_resultant(&k, &f);
        assert_eq!(r.iter().position(|a| *a != 0), Some(8));
    }

    #[test]
    fn univariate_matches_bivariate_at_constant() {
        let k = Fp::new(101).unwrap();
        let f = vec![3, 0, 5, 1];
        let g = vec![7, 2, 1];
        let bf = BPoly::new(&k, f.iter().map(|&a| vec![a]).collect());
        let bg = BPoly::new(&k, g.iter().map(|&a| vec![a]).collect());
        let r = resultant_y(&k, &bf, &bg);
        assert_eq!(r, upoly::constant(&k, resultant_univariate(&k, &f, &g)));
        let r2 = resultant_y(&k, &bg, &bf);
        assert_eq!(r2, upoly::constant(&k, resultant_univariate(&k, &g, &f)));
    }
}
