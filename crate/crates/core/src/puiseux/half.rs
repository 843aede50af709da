//! The half expansion: Newton-Puiseux with Abhyankar's shift and truncated polygons,
//! where every edge is certified and every branch follows dynamic evaluation.

use num_traits::Zero;
use serde_json::json;

use super::{ceil, Qq, Rpe};
use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::ctx::Ctx;
use crate::dynev::primitive::{primitive_element, Morphism};
use crate::dynev::{branch, El, TriSet};
use crate::lifting::wpt_on;
use crate::polygon::{polygon_data, Edge};
use crate::polyring::{puiseux_transform, ssubst_monomial, strunc, Series, TBPoly};
use crate::{trace, Result};

/// `x = gamma X^e`, `y = g(X) + alpha X^tau Y`, with `g` certified through `X^known`.
#[derive(Clone, Debug)]
struct Frame<K: Field> {
    gamma: El<K>,
    e: usize,
    g: Series<K>,
    alpha: El<K>,
    tau: usize,
    known: usize,
}

impl<K: Field> Frame<K> {
    fn root(t: &TriSet<K>, n: usize) -> Self {
        Frame { gamma: t.one(), e: 1, g: vec![], alpha: t.one(), tau: 0, known: n }
    }

    fn reduce(&self, s: &TriSet<K>, t: &TriSet<K>) -> Self {
        Frame {
            gamma: s.reduce_from(t, &self.gamma),
            g: s.reduce_vec_from(t, &self.g),
            alpha: s.reduce_from(t, &self.alpha),
            ..self.clone()
        }
    }

    fn map(&self, m: &Morphism<K>) -> Self {
        Frame { gamma: m.apply(&self.gamma), g: m.apply_vec(&self.g), alpha: m.apply(&self.alpha), ..self.clone() }
    }

    /// `g <- g + alpha X^tau s`.
    fn push(&mut self, t: &TriSet<K>, s: &[El<K>]) {
        let mut add = vec![t.zero(); self.tau];
        add.extend(s.iter().map(|c| t.mul(c, &self.alpha)));
        self.g = strunc(t, &upoly::add(t, &self.g, &add), self.known);
    }

    /// The frame after `X <- xi^v X^q`, `Y <- X^m (Y + xi^u)`.
    fn transform(&self, t: &TriSet<K>, xi: &El<K>, e: &Edge, n_child: usize) -> Self {
        let xv = t.pow(xi, e.v as u64);
        let tau = e.q * self.tau + e.m;
        let known = tau + n_child;
        let a = t.mul(&self.alpha, &t.pow(&xv, self.tau as u64));
        let mut g = ssubst_monomial(t, &self.g, &xv, e.q, known);
        let mut mono = vec![t.zero(); tau + 1];
        mono[tau] = t.mul(&a, &t.pow(xi, e.u as u64));
        g = strunc(t, &upoly::add(t, &g, &mono), known);
        Frame { gamma: t.mul(&self.gamma, &t.pow(&xv, self.e as u64)), e: e.q * self.e, g, alpha: a, tau, known }
    }
}

/// Book-keeping for one recursion path, in units of the original `X`.
#[derive(Clone, Copy, Debug)]
struct Book {
    /// `sum l_h / (q_1 ... q_h)`.
    n: Qq,
    /// Accumulated `sum val(S - S')` over series already separated.
    v: Qq,
    /// Largest separation valuation met so far.
    sep: Option<Qq>,
}

fn width(e: &Edge) -> usize {
    e.right.0 - e.left.0
}

fn qq(a: usize) -> Qq {
    Qq::from_integer(a as i64)
}

/// The book of a child following factor multiplicity `mult` on `edges[k]`; `i0` roots
/// of the node lie beyond the visible polygon.
fn child_book(bk: &Book, fr_e: usize, tau: usize, edges: &[Edge], k: usize, mult: usize, i0: usize) -> Book {
    let ed = &edges[k];
    let (mu, tau, e) = (ed.slope(), qq(tau), qq(fr_e));
    let mut s = Qq::zero();
    for (k2, o) in edges.iter().enumerate() {
        if k2 != k {
            s += qq(width(o)) * (tau + mu.min(o.slope()));
        }
    }
    let same = width(ed) - mult + i0;
    s += qq(same) * (tau + mu);
    let steeper = edges.iter().any(|o| o.slope() > mu);
    let sep_node = if same > 0 || steeper { Some(mu) } else { edges.iter().map(Edge::slope).filter(|&x| x < mu).max() };
    let sep = match (sep_node.map(|x| (tau + x) / e), bk.sep) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    };
    // a lone root on a first edge reaching the axis: count it with the integer slope
    // just above the next edge, as the modified polygon does
    let lone = k + 1 == edges.len() && k > 0 && ed.left.0 == 0 && width(ed) == 1;
    let dn = if lone {
        (qq(ed.right.1) + Qq::from_integer(ceil(edges[k - 1].slope()))) / e
    } else {
        Qq::new(ed.l as i64, (ed.q * fr_e) as i64)
    };
    Book { n: bk.n + dn, v: bk.v + s / e, sep }
}

/// All expansions of the monic `H` reachable with `H` known modulo `X^{n+1}`, each
/// certified through its regularity index. Branches follow splits of `t`.
pub fn half_rnp3<K: Field>(ctx: &Ctx, t: &TriSet<K>, h: &TBPoly<K>, n: usize) -> Result<Vec<Rpe<K>>> {
    if !h.is_monic(t) {
        return Err(crate::Error::PreconditionViolated("half expansion needs a monic polynomial".into()));
    }
    let h = h.truncate(t, n);
    let mut out = vec![];
    let book = Book { n: Qq::zero(), v: Qq::zero(), sep: None };
    node(ctx, t, &h, Frame::root(t, h.prec), book, 0, &mut out)?;
    Ok(out)
}

fn leaf<K: Field>(t: &TriSet<K>, fr: &Frame<K>, bk: &Book, out: &mut Vec<Rpe<K>>) {
    let r = bk.sep.map(|s| ceil(s * qq(fr.e))).unwrap_or(0);
    let rpe = Rpe {
        t: t.clone(),
        gamma: fr.gamma.clone(),
        e: fr.e,
        low: 0,
        coeffs: fr.g.clone(),
        known: fr.known as i64,
        r,
        v: bk.v,
        n: bk.n,
    };
    trace::emit(|| {
        json!({"event": "leaf", "e": rpe.e, "f": rpe.f(), "r": rpe.r, "v": rpe.v.to_string(),
               "N": rpe.n.to_string(), "known": rpe.known, "certified": rpe.certified()})
    });
    if rpe.certified() {
        out.push(rpe);
    }
}

fn node<K: Field>(
    ctx: &Ctx,
    t: &TriSet<K>,
    h: &TBPoly<K>,
    mut fr: Frame<K>,
    bk: Book,
    depth: usize,
    out: &mut Vec<Rpe<K>>,
) -> Result<()> {
    let d = h.deg_y();
    let n = h.prec;
    if d == 0 {
        return Ok(());
    }
    if d == 1 {
        fr.push(t, &upoly::neg(t, &h.c[0]));
        leaf(t, &fr, &bk, out);
        return Ok(());
    }
    let k = t.k();
    k.check_char(d)?;
    // Abhyankar's shift: the roots of the shifted polynomial sum to zero
    let inv_d = t.from_base(k.inv(&k.from_i64(d as i64)));
    let b: Series<K> = upoly::trimmed(t, h.c[d - 1].iter().map(|a| t.mul(a, &inv_d)).collect());
    let h1 = if b.is_empty() { h.clone() } else { h.shift_y(t, &upoly::neg(t, &b)) };
    fr.push(t, &upoly::neg(t, &b));
    for (s, hs, data) in polygon_data(t, &h1, n)? {
        let frs = fr.reduce(&s, t);
        let edges: Vec<Edge> = data.iter().map(|x| x.edge.clone()).collect();
        trace::emit(|| {
            json!({"event": "node", "depth": depth, "degree": d, "precision": n, "e": frs.e,
                   "edges": edges.iter().map(|e| [e.m, e.q, e.l]).collect::<Vec<_>>()})
        });
        let i0 = edges.last().map_or(d, |e| e.left.0);
        if i0 == 1 {
            leftover(&s, &frs, &bk, &edges, n, out);
        }
        for (kx, ed) in data.iter().enumerate() {
            let e = &ed.edge;
            for (phi, mult) in &ed.factors {
                let bk2 = child_book(&bk, frs.e, frs.tau, &edges, kx, *mult, i0);
                for mph in primitive_element(ctx, &s, phi)? {
                    let src = &mph.src;
                    let dst = &mph.dst;
                    let hd = hs.reduce_from(src, &s).map_coeffs(dst, |c| mph.apply(c));
                    let fd = frs.reduce(src, &s).map(&mph);
                    let kids = branch(dst, |r| {
                        let hr = hd.reduce_from(r, dst);
                        let xr = r.reduce_from(dst, &mph.xi);
                        let h3 = puiseux_transform(r, &hr, &xr, e.m, e.q, e.l, e.u, e.v)?;
                        Ok(wpt_on(r, &h3)?)
                    })?;
                    for (r, h4) in kids {
                        debug_assert_eq!(h4.deg_y(), *mult, "Weierstrass degree differs from the multiplicity");
                        let xr = r.reduce_from(dst, &mph.xi);
                        let fr2 = fd.reduce(&r, dst).transform(&r, &xr, e, h4.prec);
                        node(ctx, &r, &h4, fr2, bk2, depth + 1, out)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// The single root beyond the visible polygon when exactly one is left. It is
/// certified once its valuation bound exceeds the integer just above the steepest slope.
fn leftover<K: Field>(t: &TriSet<K>, fr: &Frame<K>, bk: &Book, edges: &[Edge], n: usize, out: &mut Vec<Rpe<K>>) {
    let Some(first) = edges.last() else { return };
    let j1 = first.left.1;
    let c = ceil(first.slope());
    if (n as i64) - (j1 as i64) < c {
        return;
    }
    let (tau, e) = (qq(fr.tau), qq(fr.e));
    let s: Qq = edges.iter().map(|o| qq(width(o)) * (tau + o.slope())).sum();
    let sep = (tau + first.slope()) / e;
    let book = Book {
        n: bk.n + (qq(j1) + Qq::from_integer(c)) / e,
        v: bk.v + s / e,
        sep: Some(bk.sep.map_or(sep, |b| b.max(sep))),
    };
    let mut f2 = fr.clone();
    f2.known = fr.tau + n - j1;
    f2.g = strunc(t, &f2.g, f2.known);
    leaf(t, &f2, &book, out);
}
