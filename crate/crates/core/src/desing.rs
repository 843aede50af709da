//! Expansions above every critical point of a plane curve, `X = infinity` included,
//! and the genus from their ramification data.

use serde_json::json;

use crate::algebra::bpoly::{discriminant_resultant, BPoly};
use crate::algebra::field::Field;
use crate::algebra::upoly;
use crate::ctx::Ctx;
use crate::puiseux::{rnp3, Rpe};
use crate::{trace, Error, Result};

/// Expansions above the roots of one square-free factor `q` of `R_F`, which divides
/// `R_F` exactly `n` times.
#[derive(Clone, Debug)]
pub struct CriticalPart<K: Field> {
    pub q: Vec<K::El>,
    pub n: usize,
    pub rpes: Vec<Rpe<K>>,
}

#[derive(Clone, Debug)]
pub struct DesingReport<K: Field> {
    pub parts: Vec<CriticalPart<K>>,
    /// Expansions of the X-reciprocal above `X = 0`; empty when infinity is not critical.
    pub infinity: Vec<Rpe<K>>,
    pub genus: Option<i64>,
}

impl<K: Field> DesingReport<K> {
    /// All expansions, affine ones first.
    pub fn all_rpes(&self) -> impl Iterator<Item = &Rpe<K>> {
        self.parts.iter().flat_map(|p| p.rpes.iter()).chain(self.infinity.iter())
    }
}

/// `X^{d_X} F(1/X, Y)`.
pub fn x_reciprocal<K: Field>(k: &K, f: &BPoly<K>) -> BPoly<K> {
    let dx = f.deg_x();
    let c = f.c.iter().map(|a| upoly::reverse(k, a, dx)).collect();
    BPoly::new(k, c)
}

/// Rejects inputs outside the scope of the algorithms: constant or non-primitive in
/// `Y`, characteristic not above `d_Y`, or a vanishing discriminant.
pub fn check_input<K: Field>(k: &K, f: &BPoly<K>) -> Result<Vec<K::El>> {
    if f.is_zero() || f.deg_y() == 0 {
        return Err(Error::NotPrimitive);
    }
    k.check_char(f.deg_y())?;
    if upoly::deg(&f.content_y(k)).unwrap_or(0) > 0 {
        return Err(Error::NotPrimitive);
    }
    let rf = discriminant_resultant(k, f);
    if rf.is_empty() {
        return Err(Error::NotSeparable);
    }
    Ok(rf)
}

/// Singular parts of all expansions of `F` above the roots of `R_F = res_Y(F, F_Y)`
/// and above `X = infinity`.
pub fn desingularise<K: Field>(ctx: &Ctx, k: &K, f: &BPoly<K>) -> Result<DesingReport<K>> {
    let rf = check_input(k, f)?;
    let mut parts = vec![];
    for (q, n) in upoly::squarefree_any(k, &rf) {
        trace::emit(|| json!({"event": "critical", "degree": q.len() - 1, "multiplicity": n}));
        let rpes = rnp3(ctx, k, f, &q, n)?;
        parts.push(CriticalPart { q, n, rpes });
    }
    let d_rf = rf.len() - 1;
    let total = f.deg_x() * (2 * f.deg_y() - 1);
    let n_inf = total - d_rf;
    let infinity = if n_inf > 0 {
        trace::emit(|| json!({"event": "critical", "degree": 0, "multiplicity": n_inf, "infinity": true}));
        rnp3(ctx, k, &x_reciprocal(k, f), &[k.zero(), k.one()], n_inf)?
    } else {
        vec![]
    };
    Ok(DesingReport { parts, infinity, genus: None })
}

/// Riemann-Hurwitz: `g = 1 - d_Y + (1/2) sum deg(Q) f (e - 1)` over the report.
pub fn genus_of<K: Field>(f: &BPoly<K>, rep: &DesingReport<K>) -> Result<i64> {
    let ram: usize = rep.all_rpes().map(|r| r.t.degree() * (r.e - 1)).sum();
    let g2 = 2 - 2 * f.deg_y() as i64 + ram as i64;
    if g2 < 0 || g2 % 2 != 0 {
        return Err(Error::NegativeGenus(g2.div_euclid(2)));
    }
    Ok(g2 / 2)
}

/// Genus of the curve `F = 0`, assumed geometrically irreducible. The characteristic
/// must exceed the total degree.
pub fn genus<K: Field>(ctx: &Ctx, k: &K, f: &BPoly<K>) -> Result<i64> {
    k.check_char(f.total_deg())?;
    genus_of(f, &desingularise(ctx, k, f)?)
}
