//! Newton polygons of polynomials in `K_I[[X]][Y]`, their truncated variant and
//! characteristic polynomials of edges.
//!
//! Points are `(i, j)` for the monomial `Y^i X^j`. An edge lies on the line
//! `q j + m i = l`, so its slope in the `(i, j)` plane is `-m/q`.

use num_integer::Integer;

use crate::algebra::field::{Field, Ring};
use crate::dynev::{d5poly, El, TriSet, D5};
use crate::polyring::TBPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub m: usize,
    pub q: usize,
    pub l: usize,
    /// Endpoint with the smaller `Y`-exponent.
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// The edge between two hull vertices, `left.0 < right.0` and `left.1 >= right.1`.
    pub fn new(left: (usize, usize), right: (usize, usize)) -> Edge {
        let di = right.0 - left.0;
        let dj = left.1 - right.1;
        let g = di.gcd(&dj);
        let (q, m) = (di / g, dj / g);
        let l = q * right.1 + m * right.0;
        let (u, v) = bezout_mq(m, q);
        Edge { m, q, l, left, right, u, v }
    }

    /// Degree of the characteristic polynomial.
    pub fn length(&self) -> usize {
        (self.right.0 - self.left.0) / self.q
    }

    pub fn contains(&self, (i, j): (usize, usize)) -> bool {
        i >= self.left.0 && i <= self.right.0 && self.q * j + self.m * i == self.l
    }

    /// `m / q` as an exact rational.
    pub fn slope(&self) -> num_rational::Ratio<i64> {
        num_rational::Ratio::new(self.m as i64, self.q as i64)
    }
}

/// `(u, v)` with `u q - m v = 1` and `0 <= v < q`.
pub fn bezout_mq(m: usize, q: usize) -> (usize, usize) {
    assert!(q > 0);
    if q == 1 {
        return (1, 0);
    }
    let (m, q) = (m as i64, q as i64);
    // -m v = 1 mod q
    let e = (-m).extended_gcd(&q);
    assert_eq!(e.gcd.abs(), 1, "m and q must be coprime");
    let v = (e.x * e.gcd).rem_euclid(q);
    let u = (1 + m * v) / q;
    (u as usize, v as usize)
}

/// Lower convex hull of a point set restricted to edges of nonpositive slope,
/// ordered from the right (increasing `m/q`).
pub fn lower_hull(points: &[(usize, usize)]) -> Vec<Edge> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup_by(|a, b| a.0 == b.0);
    if pts.len() < 2 {
        return vec![];
    }
    let cross = |o: (usize, usize), a: (usize, usize), b: (usize, usize)| -> i64 {
        let (ox, oy) = (o.0 as i64, o.1 as i64);
        (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
    };
    let mut hull: Vec<(usize, usize)> = vec![];
    for p in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let mut edges: Vec<Edge> = hull
        .windows(2)
        .filter(|w| w[0].1 >= w[1].1)
        .map(|w| Edge::new(w[0], w[1]))
        .collect();
    edges.reverse();
    edges
}

/// Newton polygon of the raw support.
pub fn newton_polygon<K: Field>(t: &TriSet<K>, h: &TBPoly<K>) -> Vec<Edge> {
    lower_hull(&min_points(t, h, usize::MAX))
}

/// Edges of the polygon of `floor(H)_n` lying on lines with `l/q <= n`. These are
/// edges of the polygon of every `H'` congruent to `H` modulo `X^{n+1}`.
pub fn truncated_polygon<K: Field>(t: &TriSet<K>, h: &TBPoly<K>, n: usize) -> Vec<Edge> {
    let all = lower_hull(&min_points(t, h, n));
    all.into_iter().take_while(|e| e.l <= n * e.q).collect()
}

/// For each `Y`-exponent the lowest visible `X`-exponent with a nonzero coefficient.
fn min_points<K: Field>(t: &TriSet<K>, h: &TBPoly<K>, n: usize) -> Vec<(usize, usize)> {
    h.c.iter()
        .enumerate()
        .filter_map(|(i, col)| col.iter().take(n.saturating_add(1)).position(|a| !t.is_zero(a)).map(|j| (i, j)))
        .collect()
}

/// `sum alpha_ab T^{(a - a0)/q}` over the points of the edge, unnormalised.
pub fn char_poly<K: Field>(t: &TriSet<K>, h: &TBPoly<K>, e: &Edge) -> Vec<El<K>> {
    let mut phi = vec![t.zero(); e.length() + 1];
    for (k, c) in phi.iter_mut().enumerate() {
        let i = e.left.0 + k * e.q;
        let j = (e.l - e.m * i) / e.q;
        *c = h.coeff(t, i, j);
    }
    phi
}

/// An edge with the squarefree decomposition of its monic characteristic polynomial.
#[derive(Clone, Debug)]
pub struct EdgeData<K: Field> {
    pub edge: Edge,
    pub factors: Vec<(Vec<El<K>>, usize)>,
}

/// Certified truncated polygon over one component: every hull vertex coefficient
/// is checked to be a unit, splitting otherwise.
pub fn polygon_data_on<K: Field>(t: &TriSet<K>, h: &TBPoly<K>, n: usize) -> D5<Vec<EdgeData<K>>, K> {
    let edges = truncated_polygon(t, h, n);
    for e in &edges {
        for p in [e.left, e.right] {
            t.zero_test(&h.coeff(t, p.0, p.1))?;
        }
    }
    // a vertex that turned out to be a zero divisor has been split away above
    let mut out = vec![];
    for e in edges {
        let phi = char_poly(t, h, &e);
        let lc = phi.last().expect("edge has two points").clone();
        let inv = t.inv(&lc)?;
        let phi: Vec<El<K>> = phi.iter().map(|a| t.mul(a, &inv)).collect();
        let factors = d5poly::squarefree(t, &phi)?;
        out.push(EdgeData { edge: e, factors });
    }
    Ok(out)
}

/// Runs [`polygon_data_on`] over every component of `t`.
pub fn polygon_data<K: Field>(
    t: &TriSet<K>,
    h: &TBPoly<K>,
    n: usize,
) -> crate::Result<Vec<(TriSet<K>, TBPoly<K>, Vec<EdgeData<K>>)>> {
    let parts = crate::dynev::branch(t, |s| {
        let hs = h.reduce_from(s, t);
        let data = polygon_data_on(s, &hs, n)?;
        Ok((hs, data))
    })?;
    Ok(parts.into_iter().map(|(s, (hs, d))| (s, hs, d)).collect())
}

/// A standalone SVG drawing of the visible support and the given edges.
pub fn polygon_svg(points: &[(usize, usize)], edges: &[Edge], n: Option<usize>) -> String {
    use std::fmt::Write;
    let max_i = points.iter().map(|p| p.0).max().unwrap_or(1).max(1);
    let max_j = points.iter().map(|p| p.1).max().unwrap_or(1).max(1);
    let (w, h, pad) = (480.0, 360.0, 30.0);
    let sx = (w - 2.0 * pad) / max_i as f64;
    let sy = (h - 2.0 * pad) / max_j as f64;
    let x = |i: usize| pad + i as f64 * sx;
    let y = |j: usize| h - pad - j as f64 * sy;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(
        s,
        r##"<g stroke="#888" stroke-width="1"><line x1="{pad}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{pad}" y1="{b}" x2="{pad}" y2="{pad}"/></g>"##,
        b = h - pad,
        r = w - pad
    );
    let _ = writeln!(s, r##"<text x="{}" y="{}" font-size="12">Y</text><text x="8" y="{pad}" font-size="12">X</text>"##, w - pad + 6.0, h - pad + 4.0);
    if let Some(n) = n.filter(|&n| n <= max_j) {
        let _ = writeln!(s, r##"<line x1="{pad}" y1="{yn}" x2="{r}" y2="{yn}" stroke="#c44" stroke-dasharray="4 3"/>"##, yn = y(n), r = w - pad);
    }
    for e in edges {
        let _ = writeln!(
            s,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#1f5fbf" stroke-width="2"><title>m={} q={} l={}</title></line>"##,
            x(e.left.0),
            y(e.left.1),
            x(e.right.0),
            y(e.right.1),
            e.m,
            e.q,
            e.l
        );
    }
    for &(i, j) in points {
        let _ = writeln!(s, r##"<circle cx="{:.1}" cy="{:.1}" r="3.5" fill="#222"><title>Y^{i} X^{j}</title></circle>"##, x(i), y(j));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bpoly::BPoly;
    use crate::algebra::field::{Fp, Rationals};

    fn bp<K: Field>(k: &K, terms: &[(i64, usize, usize)]) -> BPoly<K> {
        BPoly::from_terms(k, &terms.iter().map(|&(c, i, j)| (k.from_i64(c), i, j)).collect::<Vec<_>>())
    }

    fn f2(t: &TriSet<Fp>, prec: usize) -> TBPoly<Fp> {
        let k = t.k().clone();
        let f = bp(&k, &[(1, 10, 0), (1, 6, 1), (1, 4, 2), (1, 3, 3), (1, 2, 5), (1, 0, 8)]);
        TBPoly::from_bpoly(t, &f, prec)
    }

    fn verts(es: &[Edge]) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = es.iter().map(|e| e.right).collect();
        if let Some(e) = es.last() {
            v.push(e.left);
        }
        v
    }

    #[test]
    fn bezout_cofactors() {
        for q in 1..9usize {
            for m in 0..12usize {
                if m.gcd(&q) != 1 {
                    continue;
                }
                let (u, v) = bezout_mq(m, q);
                assert!(v < q);
                assert_eq!((u * q) as i64 - (m * v) as i64, 1);
            }
        }
    }

    #[test]
    fn f0_edges_and_char_poly() {
        let k = Rationals;
        let t = TriSet::base(&k, vec![k.zero(), k.one()]);
        let f = bp(&k, &[(1, 6, 0), (1, 5, 1), (5, 4, 3), (-2, 4, 1), (4, 2, 2), (1, 0, 5), (-3, 0, 4)]);
        let h = TBPoly::from_bpoly(&t, &f, 10);
        let es = newton_polygon(&t, &h);
        assert_eq!(es.len(), 2);
        assert_eq!((es[0].m, es[0].q, es[0].l), (1, 2, 6));
        assert_eq!((es[1].m, es[1].q, es[1].l), (1, 1, 4));
        let phi = char_poly(&t, &h, &es[0]);
        let want: Vec<El<Rationals>> = [4, -2, 1].iter().map(|&a| t.from_i64(a)).collect();
        assert_eq!(phi, want);
    }

    #[test]
    fn f2_exact_and_truncated() {
        let k = Fp::new(101).unwrap();
        let t = TriSet::base(&k, vec![k.zero(), k.one()]);
        let h = f2(&t, 20);
        // the point (2, 5) lies above the exact polygon
        assert_eq!(verts(&newton_polygon(&t, &h)), vec![(10, 0), (6, 1), (4, 2), (3, 3), (0, 8)]);
        let h7 = f2(&t, 7);
        let full = lower_hull(&min_points(&t, &h7, 7));
        assert_eq!(verts(&full), vec![(10, 0), (6, 1), (4, 2), (3, 3), (2, 5)]);
        assert_eq!(full.last().map(|e| e.l), Some(9));
        let es = truncated_polygon(&t, &h7, 7);
        assert_eq!(verts(&es), vec![(10, 0), (6, 1), (4, 2), (3, 3)]);
        assert_eq!((es[0].m, es[0].q, es[0].l), (1, 4, 10));
        let data = polygon_data(&t, &h7, 7).unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].2.len(), 3);
    }

    #[test]
    fn small_cases() {
        let k = Fp::new(5).unwrap();
        let t = TriSet::base(&k, vec![k.zero(), k.one()]);
        let y2 = TBPoly::from_bpoly(&t, &bp(&k, &[(1, 2, 0)]), 5);
        assert!(newton_polygon(&t, &y2).is_empty());
        let h = TBPoly::from_bpoly(&t, &bp(&k, &[(1, 2, 0), (-1, 0, 1)]), 5);
        let es = newton_polygon(&t, &h);
        assert_eq!((es[0].m, es[0].q, es[0].l, es[0].u, es[0].v), (1, 2, 2, 1, 1));
        assert_eq!(char_poly(&t, &h, &es[0]), vec![t.from_i64(-1), t.one()]);
        // (Y - X)^2
        let h = TBPoly::from_bpoly(&t, &bp(&k, &[(1, 2, 0), (-2, 1, 1), (1, 0, 2)]), 5);
        let es = newton_polygon(&t, &h);
        assert_eq!(es.len(), 1);
        let data = polygon_data(&t, &h, 5).unwrap();
        let f = &data[0].2[0].factors;
        assert_eq!(f.len(), 1);
        assert_eq!(f[0], (vec![t.from_i64(-1), t.one()], 2));
    }

    #[test]
    fn zero_divisor_vertex_splits() {
        // over Q[z]/(z^2 - z): H = Y^2 + z X, the vertex (0, 1) vanishes at z = 0
        let k = Rationals;
        let t = TriSet::base(&k, vec![k.zero(), k.from_i64(-1), k.one()]);
        let z = t.z1();
        let h = TBPoly::new(&t, vec![vec![t.zero(), z.clone()], vec![], vec![t.one()]], 4);
        let data = polygon_data(&t, &h, 4).unwrap();
        assert_eq!(data.len(), 2);
        let lens: Vec<usize> = data.iter().map(|d| d.2.len()).collect();
        assert!(lens.contains(&0) && lens.contains(&1));
    }

    #[test]
    fn svg_mentions_every_edge() {
        let es = lower_hull(&[(2, 0), (0, 1)]);
        let s = polygon_svg(&[(2, 0), (0, 1)], &es, Some(3));
        assert!(s.starts_with("<svg") && s.contains("m=1 q=2 l=2"));
    }
}
