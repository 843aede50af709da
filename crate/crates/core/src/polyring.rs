//! Truncated power series over `K_I` and polynomials in Y with such coefficients,
//! carrying their X-adic precision.

use crate::algebra::bpoly::BPoly;
use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::dynev::{El, TriSet, D5};
use crate::{Error, Result};

/// A truncated series: coefficients lowest order first, at most `n + 1` of them.
pub type Series<K> = Vec<El<K>>;

/// The ring `K_I[[X]] / (X^{n+1})`; elements are trimmed.
#[derive(Clone, Debug)]
pub struct Ser<K: Field> {
    pub t: TriSet<K>,
    pub n: usize,
}

impl<K: Field> Ring for Ser<K> {
    type El = Series<K>;

    fn zero(&self) -> Series<K> {
        vec![]
    }
    fn one(&self) -> Series<K> {
        vec![self.t.one()]
    }
    fn from_i64(&self, x: i64) -> Series<K> {
        upoly::trimmed(&self.t, vec![self.t.from_i64(x)])
    }
    fn add(&self, a: &Series<K>, b: &Series<K>) -> Series<K> {
        upoly::add(&self.t, a, b)
    }
    fn sub(&self, a: &Series<K>, b: &Series<K>) -> Series<K> {
        upoly::sub(&self.t, a, b)
    }
    fn neg(&self, a: &Series<K>) -> Series<K> {
        upoly::neg(&self.t, a)
    }
    fn mul(&self, a: &Series<K>, b: &Series<K>) -> Series<K> {
        smul(&self.t, a, b, self.n)
    }
    fn is_zero(&self, a: &Series<K>) -> bool {
        a.is_empty()
    }
}

/// Product truncated modulo `X^{n+1}`, trimmed.
pub fn smul<K: Field>(t: &TriSet<K>, a: &[El<K>], b: &[El<K>], n: usize) -> Series<K> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let len = (a.len() + b.len() - 1).min(n + 1);
    upoly::trimmed(t, upoly::mul_trunc(t, a, b, len))
}

pub fn strunc<K: Field>(t: &TriSet<K>, a: &[El<K>], n: usize) -> Series<K> {
    upoly::trimmed(t, a.iter().take(n + 1).cloned().collect())
}

/// X-adic valuation, `None` for zero. Raw test: the caller handles zero divisors.
pub fn sval<K: Field>(t: &TriSet<K>, a: &[El<K>]) -> Option<usize> {
    a.iter().position(|c| !t.is_zero(c))
}

/// Inverse of a series with invertible constant term, modulo `X^{n+1}` (Newton iteration).
pub fn sinv<K: Field>(t: &TriSet<K>, a: &[El<K>], n: usize) -> D5<Series<K>, K> {
    let c0 = a.first().cloned().unwrap_or_else(|| t.zero());
    if t.is_zero(&c0) {
        return Err(Error::PreconditionViolated("series inverse of a non-unit".into()).into());
    }
    let mut b = vec![t.inv(&c0)?];
    let mut prec = 1;
    while prec < n + 1 {
        prec = (2 * prec).min(n + 1);
        // b <- b (2 - a b)
        let ab = smul(t, a, &b, prec - 1);
        let two_minus = upoly::sub(t, &[t.from_i64(2)], &ab);
        b = smul(t, &b, &two_minus, prec - 1);
    }
    Ok(b)
}

/// `a(c X^k)` for a scalar `c`: substitutes and rescales exponents, truncated at `n`.
pub fn ssubst_monomial<K: Field>(t: &TriSet<K>, a: &[El<K>], c: &El<K>, k: usize, n: usize) -> Series<K> {
    let mut out = vec![t.zero(); n + 1];
    let mut pw = t.one();
    for (j, x) in a.iter().enumerate() {
        if j * k > n {
            break;
        }
        out[j * k] = t.mul(x, &pw);
        pw = t.mul(&pw, c);
    }
    upoly::trimmed(t, out)
}

/// A polynomial in Y whose coefficients are series known modulo `X^{prec+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TBPoly<K: Field> {
    pub c: Vec<Series<K>>,
    pub prec: usize,
}

impl<K: Field> TBPoly<K> {
    pub fn new(t: &TriSet<K>, c: Vec<Series<K>>, prec: usize) -> Self {
        let c: Vec<Series<K>> = c.into_iter().map(|x| strunc(t, &x, prec)).collect();
        let ring = Ser { t: t.clone(), n: prec };
        TBPoly { c: upoly::trimmed(&ring, c), prec }
    }

    pub fn ring(&self, t: &TriSet<K>) -> Ser<K> {
        Ser { t: t.clone(), n: self.prec }
    }

    /// Embeds an exact polynomial, keeping `X`-exponents up to `prec`.
    pub fn from_bpoly(t: &TriSet<K>, f: &BPoly<K>, prec: usize) -> Self {
        let c = f.c.iter().map(|x| x.iter().map(|a| t.from_base(a.clone())).collect()).collect();
        Self::new(t, c, prec)
    }

    /// `Y^d` plus lower terms, given by `(i, series)` pairs.
    pub fn monomial_y(t: &TriSet<K>, d: usize, prec: usize) -> Self {
        let mut c = vec![vec![]; d + 1];
        c[d] = vec![t.one()];
        TBPoly { c, prec }
    }

    pub fn one(t: &TriSet<K>, prec: usize) -> Self {
        Self::monomial_y(t, 0, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeff(&self, t: &TriSet<K>, i: usize, j: usize) -> El<K> {
        self.c.get(i).and_then(|x| x.get(j)).cloned().unwrap_or_else(|| t.zero())
    }

    pub fn is_monic(&self, t: &TriSet<K>) -> bool {
        matches!(self.c.last(), Some(lc) if lc.len() == 1 && t.is_one(&lc[0]))
    }

    pub fn truncate(&self, t: &TriSet<K>, prec: usize) -> Self {
        Self::new(t, self.c.clone(), prec.min(self.prec))
    }

    /// Raises the recorded precision without changing coefficients (exact inputs only).
    pub fn with_prec(mut self, prec: usize) -> Self {
        self.prec = prec;
        self
    }

    pub fn add(&self, t: &TriSet<K>, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        Self::new(t, upoly::add(&Ser { t: t.clone(), n: p }, &self.c, &o.c), p)
    }

    pub fn sub(&self, t: &TriSet<K>, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        Self::new(t, upoly::sub(&Ser { t: t.clone(), n: p }, &self.c, &o.c), p)
    }

    pub fn mul(&self, t: &TriSet<K>, o: &Self) -> Self {
        let p = self.prec.min(o.prec);
        let ring = Ser { t: t.clone(), n: p };
        TBPoly { c: upoly::mul(&ring, &self.c, &o.c), prec: p }
    }

    pub fn scale(&self, t: &TriSet<K>, s: &Series<K>) -> Self {
        let c = self.c.iter().map(|x| smul(t, x, s, self.prec)).collect();
        Self::new(t, c, self.prec)
    }

    pub fn derivative_y(&self, t: &TriSet<K>) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x.iter().map(|a| t.mul(a, &t.from_i64(i as i64))).collect())
            .collect();
        Self::new(t, c, self.prec)
    }

    /// Multiplies by `X^k`, the precision growing accordingly.
    pub fn shift_x(&self, t: &TriSet<K>, k: usize) -> Self {
        let c = self
            .c
            .iter()
            .map(|x| if x.is_empty() { vec![] } else { std::iter::repeat_n(t.zero(), k).chain(x.iter().cloned()).collect() })
            .collect();
        TBPoly { c, prec: self.prec + k }
    }

    /// `H(X, S(X))` modulo `X^{prec+1}`.
    pub fn eval_y(&self, t: &TriSet<K>, s: &[El<K>]) -> Series<K> {
        let mut acc: Series<K> = vec![];
        for c in self.c.iter().rev() {
            acc = upoly::add(t, &smul(t, &acc, s, self.prec), c);
        }
        acc
    }

    /// `H(X, Y + S(X))`, by Horner's rule.
    pub fn shift_y(&self, t: &TriSet<K>, s: &[El<K>]) -> Self {
        let ring = self.ring(t);
        let lin: Vec<Series<K>> = vec![strunc(t, s, self.prec), vec![t.one()]];
        let lin = upoly::trimmed(&ring, lin);
        let mut acc: Vec<Series<K>> = vec![];
        for c in self.c.iter().rev() {
            acc = upoly::add(&ring, &upoly::mul(&ring, &acc, &lin), &[c.clone()]);
        }
        Self::new(t, acc, self.prec)
    }

    /// `Y^{deg} H(X, 1/Y)`.
    pub fn reciprocal_y(&self, t: &TriSet<K>) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Self::new(t, c, self.prec)
    }

    /// `H(0, Y)`.
    pub fn at_x0(&self, t: &TriSet<K>) -> Vec<El<K>> {
        upoly::trimmed(t, self.c.iter().map(|x| x.first().cloned().unwrap_or_else(|| t.zero())).collect())
    }

    /// Moves every coefficient to a component `s` of `t`.
    pub fn reduce_from(&self, s: &TriSet<K>, t: &TriSet<K>) -> Self {
        let c = self.c.iter().map(|x| s.reduce_vec_from(t, x)).collect();
        Self::new(s, c, self.prec)
    }

    pub fn map_coeffs(&self, s: &TriSet<K>, f: impl Fn(&El<K>) -> El<K>) -> Self {
        let c = self.c.iter().map(|x| x.iter().map(&f).collect()).collect();
        Self::new(s, c, self.prec)
    }

    /// Support `(i, j)`: nonzero coefficient of `Y^i X^j`, raw test.
    pub fn support(&self, t: &TriSet<K>) -> Vec<(usize, usize)> {
        let mut v = vec![];
        for (i, x) in self.c.iter().enumerate() {
            for (j, a) in x.iter().enumerate() {
                if !t.is_zero(a) {
                    v.push((i, j));
                }
            }
        }
        v
    }
}

/// `floor(H(xi^v X^q, X^m (Y + xi^u)) / X^l)` modulo `X^{n1+1}`, `n1 = q prec - l`, computed as one
/// Taylor shift per X-slice.
#[allow(clippy::too_many_arguments)]
pub fn puiseux_transform<K: Field>(
    t: &TriSet<K>,
    h: &TBPoly<K>,
    xi: &El<K>,
    m: usize,
    q: usize,
    l: usize,
    u: usize,
    v: usize,
) -> Result<TBPoly<K>> {
    let n1 = (q * h.prec).checked_sub(l).ok_or(Error::PrecisionExhausted)?;
    let xi_u = t.pow(xi, u as u64);
    let xi_v = t.pow(xi, v as u64);
    let mut slices: Vec<Vec<El<K>>> = vec![vec![]; n1 + 1];
    for (i, col) in h.c.iter().enumerate() {
        let mut pw = t.one();
        for (j, a) in col.iter().enumerate() {
            if j > 0 {
                pw = t.mul(&pw, &xi_v);
            }
            if t.is_zero(a) {
                continue;
            }
            let w = q * j + m * i;
            debug_assert!(w >= l, "support point below the edge line");
            if w < l || w - l > n1 {
                continue;
            }
            let slice = &mut slices[w - l];
            if slice.len() <= i {
                slice.resize(i + 1, t.zero());
            }
            slice[i] = t.add(&slice[i], &t.mul(a, &pw));
        }
    }
    let dy = h.deg_y();
    let mut c: Vec<Series<K>> = vec![vec![t.zero(); n1 + 1]; dy + 1];
    for (e, slice) in slices.into_iter().enumerate() {
        let sl = upoly::trimmed(t, slice);
        if sl.is_empty() {
            continue;
        }
        let shifted = upoly::taylor_shift(t, &sl, &xi_u);
        for (i, a) in shifted.into_iter().enumerate() {
            c[i][e] = a;
        }
    }
    Ok(TBPoly::new(t, c, n1))
}

/// Euclidean quotient of `f` by a monic `g` over `K_I[[X]] / (X^{n+1})`.
pub fn quo<K: Field>(t: &TriSet<K>, f: &TBPoly<K>, g: &TBPoly<K>, n: usize) -> TBPoly<K> {
    let ring = Ser { t: t.clone(), n };
    let ft: Vec<Series<K>> = f.c.iter().map(|x| strunc(t, x, n)).collect();
    let gt: Vec<Series<K>> = g.c.iter().map(|x| strunc(t, x, n)).collect();
    let (q, _) = upoly::divrem_monic(&ring, &upoly::trimmed(&ring, ft), &gt);
    TBPoly::new(t, q, n.min(f.prec).min(g.prec))
}

/// Quotient and remainder by a monic divisor, both truncated at `n`.
pub fn quo_rem<K: Field>(t: &TriSet<K>, f: &[Series<K>], g: &[Series<K>], n: usize) -> (Vec<Series<K>>, Vec<Series<K>>) {
    let ring = Ser { t: t.clone(), n };
    let ft: Vec<Series<K>> = f.iter().map(|x| strunc(t, x, n)).collect();
    let gt: Vec<Series<K>> = g.iter().map(|x| strunc(t, x, n)).collect();
    if gt.is_empty() {
        return (vec![], ft);
    }
    upoly::divrem_monic(&ring, &upoly::trimmed(&ring, ft), &gt)
}
