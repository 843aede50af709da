//! Bivariate triangular sets `(Q(Z1), P(Z1, Z2))` and arithmetic in the product of
//! fields `K[Z1, Z2] / (Q, P)`, with splitting on zero divisors.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::Error;

/// Element of `K_I`: coefficient of `Z2^j Z1^i` stored at `j * dq + i`.
pub type El<K> = SmallVec<[<K as Ring>::El; 1]>;

/// Reason a dynamic-evaluation computation stopped early.
#[derive(Debug, Clone)]
pub enum Halt<K: Field> {
    /// A zero divisor was met: the current triangular set splits into these parts.
    Split(Vec<TriSet<K>>),
    Fail(Error),
}

impl<K: Field> From<Error> for Halt<K> {
    fn from(e: Error) -> Self {
        Halt::Fail(e)
    }
}

pub type D5<T, K> = std::result::Result<T, Halt<K>>;

struct Inner<K: Field> {
    k: K,
    q: Vec<K::El>,
    p: Vec<Vec<K::El>>,
    dq: usize,
    dp: usize,
}

/// A monic triangular set with radical ideal. Cheap to clone.
#[derive(Clone)]
pub struct TriSet<K: Field> {
    inner: Arc<Inner<K>>,
}

impl<K: Field> PartialEq for TriSet<K> {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &o.inner) || (self.inner.q == o.inner.q && self.inner.p == o.inner.p)
    }
}

impl<K: Field> fmt::Debug for TriSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriSet(Q={:?}, P={:?})", self.inner.q, self.inner.p)
    }
}

static SPLITS: AtomicUsize = AtomicUsize::new(0);
static VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

/// Process-wide counters: number of splits performed and number of failed
/// conservation or radicality checks.
pub fn split_stats() -> (usize, usize) {
    (SPLITS.load(Ordering::Relaxed), VIOLATIONS.load(Ordering::Relaxed))
}

pub(crate) fn note_split() {
    SPLITS.fetch_add(1, Ordering::Relaxed);
}

pub(crate) fn note_violation() {
    VIOLATIONS.fetch_add(1, Ordering::Relaxed);
}

impl<K: Field> TriSet<K> {
    /// Builds `(Q, P)` without checking radicality. `q` must be monic of positive degree,
    /// `p` monic in `Z2` with Z1-coefficients reduced mod `q`.
    pub fn from_parts(k: &K, q: Vec<K::El>, p: Vec<Vec<K::El>>) -> Self {
        let q = upoly::trimmed(k, q);
        let dq = upoly::deg(&q).expect("Q must be nonzero");
        assert!(dq >= 1 && k.is_one(&q[dq]), "Q must be monic of positive degree");
        let p: Vec<Vec<K::El>> = p
            .into_iter()
            .map(|c| upoly::trimmed(k, upoly::rem_monic(k, &c, &q)))
            .collect();
        let dp = p.len().checked_sub(1).expect("P must be nonzero");
        assert!(dp >= 1 && p[dp].len() == 1 && k.is_one(&p[dp][0]), "P must be monic in Z2");
        TriSet { inner: Arc::new(Inner { k: k.clone(), q, p, dq, dp }) }
    }

    /// `(Q, Z2)`: the product of fields `K[Z1]/(Q)`.
    pub fn base(k: &K, q: Vec<K::El>) -> Self {
        Self::from_parts(k, q, vec![vec![], vec![k.one()]])
    }

    /// `(Z1, Z2)`, i.e. the base field itself.
    pub fn trivial(k: &K) -> Self {
        Self::base(k, vec![k.zero(), k.one()])
    }

    /// Checks the radicality invariant: Q squarefree over K and P squarefree over K_Q.
    pub fn new(k: &K, q: Vec<K::El>, p: Vec<Vec<K::El>>) -> crate::Result<Self> {
        let t = Self::from_parts(k, q, p);
        if !t.is_radical() {
            return Err(Error::PreconditionViolated("triangular set is not radical".into()));
        }
        Ok(t)
    }

    pub fn k(&self) -> &K {
        &self.inner.k
    }
    pub fn q(&self) -> &[K::El] {
        &self.inner.q
    }
    pub fn p(&self) -> &[Vec<K::El>] {
        &self.inner.p
    }
    pub fn dq(&self) -> usize {
        self.inner.dq
    }
    pub fn dp(&self) -> usize {
        self.inner.dp
    }
    /// `d_I = deg Q * deg_Z2 P`.
    pub fn degree(&self) -> usize {
        self.inner.dq * self.inner.dp
    }
    fn len(&self) -> usize {
        self.degree()
    }

    /// The level-one set `(Q, Z2)` underlying this one.
    pub fn level1(&self) -> Self {
        if self.dp() == 1 && self.inner.p[0].is_empty() {
            return self.clone();
        }
        Self::base(self.k(), self.q().to_vec())
    }

    /// Same `P`, reduced modulo a factor `q2` of `Q`.
    pub fn with_q(&self, q2: Vec<K::El>) -> Self {
        Self::from_parts(self.k(), q2, self.inner.p.clone())
    }

    /// `P` as a polynomial in `Z2` over the level-one ring.
    pub fn p_over_level1(&self) -> Vec<El<K>> {
        let l1 = self.level1();
        self.inner.p.iter().map(|c| l1.from_z1(c)).collect()
    }

    /// Builds `(Q, P)` from a `Z2`-polynomial over `K_Q`, made monic by the caller.
    pub fn from_level1_poly(l1: &Self, p: &[El<K>]) -> Self {
        let k = l1.k();
        let pp = p.iter().map(|c| upoly::trimmed(k, c.to_vec())).collect();
        Self::from_parts(k, l1.q().to_vec(), pp)
    }

    pub fn from_base(&self, c: K::El) -> El<K> {
        let mut v = self.zero_el();
        v[0] = c;
        v
    }

    fn zero_el(&self) -> El<K> {
        SmallVec::from_elem(self.k().zero(), self.len())
    }

    /// Embeds a polynomial in `Z1`, reducing it mod `Q`.
    pub fn from_z1(&self, a: &[K::El]) -> El<K> {
        let k = self.k();
        let r = upoly::rem_monic(k, a, self.q());
        let mut v = self.zero_el();
        for (i, c) in r.into_iter().enumerate() {
            v[i] = c;
        }
        v
    }

    /// The class of `Z1`.
    pub fn z1(&self) -> El<K> {
        self.from_z1(&[self.k().zero(), self.k().one()])
    }

    /// The class of `Z2`.
    pub fn z2(&self) -> El<K> {
        let k = self.k();
        if self.dp() == 1 {
            // Z2 = -p0(Z1)
            return self.from_z1(&upoly::neg(k, &self.inner.p[0]));
        }
        let mut v = self.zero_el();
        v[self.dq()] = k.one();
        v
    }

    /// Coefficient of `Z2^j` as a trimmed polynomial in `Z1`.
    pub fn z2_coeff(&self, a: &El<K>, j: usize) -> Vec<K::El> {
        let dq = self.dq();
        upoly::trimmed(self.k(), a[j * dq..(j + 1) * dq].to_vec())
    }

    /// Splits `a` into its `Z2`-coefficients, each an element of `level1()`.
    pub fn to_level1_coeffs(&self, a: &El<K>) -> Vec<El<K>> {
        let dq = self.dq();
        (0..self.dp()).map(|j| SmallVec::from(&a[j * dq..(j + 1) * dq])).collect()
    }

    pub fn from_level1_coeffs(&self, cs: &[El<K>]) -> El<K> {
        let dq = self.dq();
        let mut v = self.zero_el();
        for (j, c) in cs.iter().enumerate() {
            v[j * dq..(j + 1) * dq].clone_from_slice(&c[..dq]);
        }
        v
    }

    /// Maps an element of `t` to this set, which must refine `t`.
    pub fn reduce_from(&self, t: &Self, a: &El<K>) -> El<K> {
        if self == t {
            return a.clone();
        }
        let k = self.k();
        let l1 = self.level1();
        let mut cs: Vec<El<K>> = (0..t.dp()).map(|j| l1.from_z1(&t.z2_coeff(a, j))).collect();
        upoly::trim(&l1, &mut cs);
        let p = self.p_over_level1();
        if cs.len() > self.dp() {
            cs = upoly::rem_monic(&l1, &cs, &p);
        }
        let _ = k;
        self.from_level1_coeffs(&cs)
    }

    /// Same map on a vector of elements.
    pub fn reduce_vec_from(&self, t: &Self, a: &[El<K>]) -> Vec<El<K>> {
        a.iter().map(|x| self.reduce_from(t, x)).collect()
    }

    /// True when `t`'s ideal contains this one, i.e. this set is a component of `t`.
    pub fn refines(&self, t: &Self) -> bool {
        let k = self.k();
        if !upoly::rem_monic(k, t.q(), self.q()).is_empty() {
            return false;
        }
        let l1 = self.level1();
        let tp: Vec<El<K>> = t.inner.p.iter().map(|c| l1.from_z1(c)).collect();
        let tp = upoly::trimmed(&l1, tp);
        upoly::rem_monic(&l1, &tp, &self.p_over_level1()).is_empty()
    }

    /// Radicality: `Q` squarefree over K and `P` squarefree over every factor of `Q`.
    pub fn is_radical(&self) -> bool {
        let k = self.k();
        if !upoly::is_squarefree(k, self.q()) {
            return false;
        }
        if self.dp() == 1 {
            return true;
        }
        let l1 = self.level1();
        let p = self.p_over_level1();
        let dp = upoly::derivative(&l1, &p);
        match crate::dynev::driver::branch_quiet(&l1, |s| {
            let p = s.reduce_vec_from(&l1, &p);
            let dp = upoly::trimmed(s, s.reduce_vec_from(&l1, &dp));
            let (g, _, _) = crate::dynev::d5poly::xgcd(s, &p, &dp)?;
            Ok(g.len() == 1)
        }) {
            Ok(parts) => parts.iter().all(|(_, ok)| *ok),
            Err(_) => false,
        }
    }

    /// Inverse of `a`, or a split when `a` is a nonzero zero divisor. Panics on zero.
    pub fn inv(&self, a: &El<K>) -> D5<El<K>, K> {
        assert!(!self.is_zero(a), "inverse of zero in a triangular set");
        let k = self.k();
        if self.dp() == 1 {
            if self.dq() == 1 {
                return Ok(self.from_base(k.inv(&a[0])));
            }
            let x = upoly::trimmed(k, a.to_vec());
            let (g, u, _) = upoly::xgcd(k, &x, self.q());
            if g.len() == 1 {
                return Ok(self.from_z1(&u));
            }
            let h = upoly::div_exact(k, self.q(), &g);
            return Err(Halt::Split(vec![self.with_q(g), self.with_q(h)]));
        }
        let l1 = self.level1();
        let p = self.p_over_level1();
        let mut x = self.to_level1_coeffs(a);
        upoly::trim(&l1, &mut x);
        let lift = |h: Halt<K>| match h {
            Halt::Split(parts) => Halt::Split(parts.into_iter().map(|s| self.with_q(s.q().to_vec())).collect()),
            f => f,
        };
        let (g, _, v) = crate::dynev::d5poly::xgcd(&l1, &p, &x).map_err(lift)?;
        if g.len() == 1 {
            return Ok(self.from_level1_coeffs(&v));
        }
        let h = upoly::divrem_monic(&l1, &p, &g).0;
        Err(Halt::Split(vec![Self::from_level1_poly(&l1, &g), Self::from_level1_poly(&l1, &h)]))
    }

    /// Whether `a` vanishes, splitting when it is a nonzero zero divisor.
    pub fn zero_test(&self, a: &El<K>) -> D5<bool, K> {
        if self.is_zero(a) {
            return Ok(true);
        }
        self.inv(a).map(|_| false)
    }

    pub fn div(&self, a: &El<K>, b: &El<K>) -> D5<El<K>, K> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Reduces a full product (bivariate, unreduced) into canonical form.
    fn reduce_biv(&self, mut c: Vec<Vec<K::El>>) -> El<K> {
        let k = self.k();
        let (dq, dp) = (self.dq(), self.dp());
        for row in c.iter_mut() {
            if row.len() > dq {
                *row = upoly::rem_monic(k, row, self.q());
            }
        }
        let p = &self.inner.p;
        for j in (dp..c.len()).rev() {
            let top = std::mem::take(&mut c[j]);
            if top.iter().all(|x| k.is_zero(x)) {
                continue;
            }
            for (t, pt) in p.iter().enumerate().take(dp) {
                if pt.is_empty() {
                    continue;
                }
                let prod = upoly::rem_monic(k, &upoly::mul(k, &top, pt), self.q());
                let row = &mut c[j - dp + t];
                *row = upoly::sub(k, row, &prod);
            }
        }
        let mut v = self.zero_el();
        for (j, row) in c.iter().enumerate().take(dp) {
            for (i, x) in row.iter().enumerate() {
                v[j * dq + i] = x.clone();
            }
        }
        v
    }
}

impl<K: Field> Ring for TriSet<K> {
    type El = El<K>;

    fn zero(&self) -> El<K> {
        self.zero_el()
    }
    fn one(&self) -> El<K> {
        self.from_base(self.k().one())
    }
    fn from_i64(&self, n: i64) -> El<K> {
        self.from_base(self.k().from_i64(n))
    }
    fn add(&self, a: &El<K>, b: &El<K>) -> El<K> {
        let k = self.k();
        a.iter().zip(b.iter()).map(|(x, y)| k.add(x, y)).collect()
    }
    fn sub(&self, a: &El<K>, b: &El<K>) -> El<K> {
        let k = self.k();
        a.iter().zip(b.iter()).map(|(x, y)| k.sub(x, y)).collect()
    }
    fn neg(&self, a: &El<K>) -> El<K> {
        let k = self.k();
        a.iter().map(|x| k.neg(x)).collect()
    }
    fn mul(&self, a: &El<K>, b: &El<K>) -> El<K> {
        let k = self.k();
        let (dq, dp) = (self.dq(), self.dp());
        if dq == 1 && dp == 1 {
            let mut v = SmallVec::new();
            v.push(k.mul(&a[0], &b[0]));
            return v;
        }
        if dp == 1 {
            let prod = upoly::mul(k, &upoly::trimmed(k, a.to_vec()), &upoly::trimmed(k, b.to_vec()));
            return self.from_z1(&prod);
        }
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero_el();
        }
        let rows = |x: &El<K>| -> Vec<Vec<K::El>> {
            (0..dp).map(|j| upoly::trimmed(k, x[j * dq..(j + 1) * dq].to_vec())).collect()
        };
        let (ra, rb) = (rows(a), rows(b));
        let mut c: Vec<Vec<K::El>> = vec![vec![]; 2 * dp - 1];
        for (i, x) in ra.iter().enumerate() {
            if x.is_empty() {
                continue;
            }
            for (j, y) in rb.iter().enumerate() {
                if y.is_empty() {
                    continue;
                }
                c[i + j] = upoly::add(k, &c[i + j], &upoly::mul(k, x, y));
            }
        }
        self.reduce_biv(c)
    }
    fn is_zero(&self, a: &El<K>) -> bool {
        let k = self.k();
        a.iter().all(|x| k.is_zero(x))
    }
}
