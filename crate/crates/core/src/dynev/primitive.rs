//! Primitive elements: rewriting `K_I[Z3]/(phi)` as a bivariate triangular set.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::d5poly;
use super::driver::branch;
use super::linalg::{charpoly, solve, Matrix};
use super::triset::{El, Halt, TriSet, D5};
use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::ctx::Ctx;
use crate::{Error, Result};

/// Ring map from `src` (extended by a root `xi` of some `phi`) onto `dst`.
#[derive(Clone, Debug)]
pub struct Morphism<K: Field> {
    pub src: TriSet<K>,
    pub dst: TriSet<K>,
    pub z2_img: El<K>,
    /// Image of the adjoined root.
    pub xi: El<K>,
}

impl<K: Field> Morphism<K> {
    /// The identity on `t`, adjoining the root `xi` already in `t`.
    pub fn identity(t: &TriSet<K>, xi: El<K>) -> Self {
        Morphism { src: t.clone(), dst: t.clone(), z2_img: t.z2(), xi }
    }

    pub fn apply(&self, x: &El<K>) -> El<K> {
        if self.src == self.dst {
            return x.clone();
        }
        let d = &self.dst;
        let mut acc = d.zero();
        for j in (0..self.src.dp()).rev() {
            let c = d.from_z1(&self.src.z2_coeff(x, j));
            acc = d.add(&d.mul(&acc, &self.z2_img), &c);
        }
        acc
    }

    pub fn apply_vec(&self, xs: &[El<K>]) -> Vec<El<K>> {
        xs.iter().map(|x| self.apply(x)).collect()
    }

    /// Composes with the reduction onto a component `s` of `dst`.
    pub fn restrict(&self, s: &TriSet<K>) -> Self {
        Morphism {
            src: self.src.with_q(s.q().to_vec()),
            dst: s.clone(),
            z2_img: s.reduce_from(&self.dst, &self.z2_img),
            xi: s.reduce_from(&self.dst, &self.xi),
        }
    }
}

/// Elements of `K_s[Z3]/(phi)` are vectors of length `deg phi`.
struct Tower<'a, K: Field> {
    s: &'a TriSet<K>,
    phi: &'a [El<K>],
}

impl<K: Field> Tower<'_, K> {
    fn dphi(&self) -> usize {
        self.phi.len() - 1
    }

    fn mul_z3(&self, x: &[El<K>]) -> Vec<El<K>> {
        let s = self.s;
        let n = self.dphi();
        let top = x[n - 1].clone();
        let mut out = vec![s.zero(); n];
        for i in (1..n).rev() {
            out[i] = x[i - 1].clone();
        }
        if !s.is_zero(&top) {
            for (i, o) in out.iter_mut().enumerate() {
                *o = s.sub(o, &s.mul(&top, &self.phi[i]));
            }
        }
        out
    }

    fn mul_w(&self, x: &[El<K>], lambda: &El<K>) -> Vec<El<K>> {
        let s = self.s;
        let z2 = s.z2();
        let shifted = self.mul_z3(x);
        x.iter()
            .zip(shifted.iter())
            .map(|(a, b)| s.add(&s.mul(&z2, a), &s.mul(lambda, b)))
            .collect()
    }

    /// Coordinates over `K_Q` on the basis `Z2^b Z3^c`, index `c * dp + b`.
    fn coords(&self, x: &[El<K>]) -> Vec<El<K>> {
        x.iter().flat_map(|c| self.s.to_level1_coeffs(c)).collect()
    }
}

/// Finds `w = z2 + lambda z3` generating `K_t[Z3]/(phi)` over `K_Q`, splitting `Q` when
/// needed. `lambda` is 1 first, then drawn from the context's generator.
pub fn primitive_element<K: Field>(ctx: &Ctx, t: &TriSet<K>, phi: &[El<K>]) -> Result<Vec<Morphism<K>>> {
    let d = t.dp() * (phi.len() - 1);
    let budget = 4 * d * d;
    let mut rng = ctx.rng();
    let k = t.k().clone();
    let lambdas: Vec<K::El> = std::iter::once(k.one())
        .chain((1..budget.max(1)).map(|_| loop {
            let l = k.random(&mut rng);
            if !k.is_zero(&l) {
                break l;
            }
        }))
        .collect();
    primitive_element_with(t, phi, &lambdas)
}

/// As [`primitive_element`] with an explicit sequence of candidate `lambda`s.
pub fn primitive_element_with<K: Field>(t: &TriSet<K>, phi: &[El<K>], lambdas: &[K::El]) -> Result<Vec<Morphism<K>>> {
    if phi.len() == 2 {
        // phi monic of degree one
        return Ok(vec![Morphism::identity(t, t.neg(&phi[0]))]);
    }
    let parts = branch(t, |s| {
        let phi_s = s.reduce_vec_from(t, phi);
        for lam in lambdas {
            if let Some(m) = try_lambda(s, &phi_s, lam)? {
                return Ok(m);
            }
        }
        Err(Halt::Fail(Error::RandomnessExhausted { tries: lambdas.len() }))
    })?;
    Ok(parts.into_iter().map(|(_, m)| m).collect())
}

fn try_lambda<K: Field>(s: &TriSet<K>, phi: &[El<K>], lam: &K::El) -> D5<Option<Morphism<K>>, K> {
    let k = s.k();
    let tower = Tower { s, phi };
    let (dp, dphi) = (s.dp(), tower.dphi());
    let dim = dp * dphi;
    let l1 = s.level1();
    let lambda = s.from_base(lam.clone());
    // multiplication-by-w matrix
    let mut m: Matrix<K> = vec![vec![l1.zero(); dim]; dim];
    let z2 = s.z2();
    for c in 0..dphi {
        for b in 0..dp {
            let mut e = vec![s.zero(); dphi];
            e[c] = s.pow(&z2, b as u64);
            let col = tower.coords(&tower.mul_w(&e, &lambda));
            for (r, x) in col.into_iter().enumerate() {
                m[r][c * dp + b] = x;
            }
        }
    }
    let chi = charpoly(&l1, &m);
    let dchi = upoly::derivative(&l1, &chi);
    let g = d5poly::gcd(&l1, &chi, &dchi)?;
    if g.len() > 1 || k.is_zero(lam) {
        return Ok(None);
    }
    // Krylov basis 1, w, ..., w^{dim-1}; solve for z2
    let mut kry: Matrix<K> = vec![vec![l1.zero(); dim]; dim];
    let mut x = vec![s.zero(); dphi];
    x[0] = s.one();
    for col in 0..dim {
        for (r, v) in tower.coords(&x).into_iter().enumerate() {
            kry[r][col] = v;
        }
        x = tower.mul_w(&x, &lambda);
    }
    let mut target = vec![s.zero(); dphi];
    target[0] = z2.clone();
    let rhs = tower.coords(&target);
    let Some(a) = solve(&l1, &kry, &rhs)? else {
        return Ok(None);
    };
    let dst = TriSet::from_level1_poly(&l1, &chi);
    let z2_img = dst.from_level1_coeffs(&a);
    let inv_lam = dst.from_base(k.inv(lam));
    let xi = dst.mul(&dst.sub(&dst.z2(), &z2_img), &inv_lam);
    let src = s.clone();
    Ok(Some(Morphism { src, dst, z2_img, xi }))
}

/// Deterministic generator for a context draw.
pub(crate) fn seeded(seed: u64, counter: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(counter);
    rng
}
