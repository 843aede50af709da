//! JSON and plain-text renderings of expansions and factorizations.

use serde_json::{json, Value};

use crate::algebra::field::{Field, Ring};
use crate::algebra::upoly;
use crate::anfact::Factorization;
use crate::dynev::{El, TriSet};
use crate::puiseux::{Qq, Rpe};

pub const SCHEMA_VERSION: &str = "1";

pub fn rational(x: Qq) -> Value {
    json!({"num": x.numer().to_string(), "den": x.denom().to_string()})
}

pub fn upoly_json<K: Field>(k: &K, a: &[K::El]) -> Value {
    Value::Array(upoly::trimmed(k, a.to_vec()).iter().map(|c| k.to_json(c)).collect())
}

/// An element as its `Z2`-coefficients, each a `Z1`-polynomial, lowest degree first.
pub fn el_json<K: Field>(t: &TriSet<K>, a: &El<K>) -> Value {
    let k = t.k();
    Value::Array((0..t.dp()).map(|j| upoly_json(k, &t.z2_coeff(a, j))).collect())
}

pub fn triset_json<K: Field>(t: &TriSet<K>) -> Value {
    let k = t.k();
    json!({
        "Q": upoly_json(k, t.q()),
        "P": t.p().iter().map(|c| upoly_json(k, c)).collect::<Vec<_>>(),
    })
}

pub fn rpe_json<K: Field>(r: &Rpe<K>) -> Value {
    let t = &r.t;
    json!({
        "triset": triset_json(t),
        "gamma": el_json(t, &r.gamma),
        "e": r.e,
        "f": r.f(),
        "r": r.r,
        "v": rational(r.v),
        "low": r.low,
        "gamma_series_coeffs": r.truncated(r.known).iter().map(|c| el_json(t, c)).collect::<Vec<_>>(),
        "precision": rational(r.precision()),
    })
}

/// Expansions grouped by the first level of their triangular sets, in order of
/// appearance.
pub fn branches_json<K: Field>(rs: &[Rpe<K>]) -> Vec<Value> {
    let mut groups: Vec<(TriSet<K>, Vec<Value>)> = vec![];
    for r in rs {
        let l1 = r.t.level1();
        match groups.iter_mut().find(|(g, _)| g.q() == l1.q()) {
            Some((_, v)) => v.push(rpe_json(r)),
            None => groups.push((l1, vec![rpe_json(r)])),
        }
    }
    groups.into_iter().map(|(t, v)| json!({"triset": triset_json(&t), "rpes": v})).collect()
}

pub fn factorization_json<K: Field>(k: &K, fz: &Factorization<K>) -> Value {
    let scalar = |c: &El<K>| c[0].clone();
    let series = |s: &[El<K>]| -> Vec<K::El> { s.iter().map(scalar).collect() };
    json!({
        "unit": upoly_json(k, &series(&fz.unit)),
        "factors": fz.factors.iter().map(|g| json!({
            "triset": triset_json(&g.t),
            "degree": g.poly.deg_y(),
            "at_infinity": g.at_infinity,
            "coeffs": g.poly.c.iter().map(|c| upoly_json(k, &series(c))).collect::<Vec<_>>(),
            "precision": g.poly.prec,
        })).collect::<Vec<_>>(),
    })
}

// ---- text

fn show_upoly<K: Field>(k: &K, a: &[K::El], var: &str) -> String {
    let mut terms = vec![];
    for (i, c) in a.iter().enumerate().rev() {
        if k.is_zero(c) {
            continue;
        }
        terms.push(monomial(k, c, &[(var, i)]));
    }
    join_terms(terms)
}

fn monomial<K: Field>(k: &K, c: &K::El, vars: &[(&str, usize)]) -> (bool, String) {
    let (neg, c) = match k.negative_part(c) {
        Some(m) => (true, m),
        None => (false, c.clone()),
    };
    let mut parts = vec![];
    let pure: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if !k.is_one(&c) || pure.is_empty() {
        parts.push(k.show(&c));
    }
    parts.extend(pure);
    (neg, parts.join("*"))
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (neg, body)) in terms.into_iter().enumerate() {
        match (n, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

/// An element as a polynomial in `z1`, `z2`.
pub fn show_el<K: Field>(t: &TriSet<K>, a: &El<K>) -> String {
    let k = t.k();
    let mut terms = vec![];
    for j in (0..t.dp()).rev() {
        let c = t.z2_coeff(a, j);
        for (i, x) in c.iter().enumerate().rev() {
            if !k.is_zero(x) {
                terms.push(monomial(k, x, &[("z1", i), ("z2", j)]));
            }
        }
    }
    join_terms(terms)
}

pub fn show_triset<K: Field>(t: &TriSet<K>) -> String {
    let k = t.k();
    let q = show_upoly(k, t.q(), "z1");
    if t.dp() == 1 && t.p().len() == 2 && t.p()[0].is_empty() {
        return format!("Q(z1) = {q}");
    }
    let mut terms = vec![];
    for (j, c) in t.p().iter().enumerate().rev() {
        let nz: Vec<usize> = (0..c.len()).filter(|&i| !k.is_zero(&c[i])).collect();
        match nz.as_slice() {
            [] => {}
            [i] => terms.push(monomial(k, &c[*i], &[("z1", *i), ("z2", j)])),
            _ => {
                let pow = if j == 1 { "z2".to_string() } else { format!("z2^{j}") };
                let inner = show_upoly(k, c, "z1");
                terms.push((false, if j == 0 { inner } else { format!("({inner})*{pow}") }));
            }
        }
    }
    format!("Q(z1) = {q}, P(z2) = {}", join_terms(terms))
}

/// `sum c_k T^k` over the exponents `low..=upto`.
pub fn show_series<K: Field>(r: &Rpe<K>, upto: i64) -> String {
    let t = &r.t;
    let mut terms = vec![];
    for ex in r.low..=upto {
        let c = r.coeff(ex);
        if t.is_zero(&c) {
            continue;
        }
        let s = show_el(t, &c);
        let simple = !s.contains(['+', ' ']) && !s[1..].contains('-');
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if simple => (true, rest.to_string()),
            _ => (false, if simple { s.clone() } else { format!("({s})") }),
        };
        let tp = match ex {
            0 => None,
            1 => Some("T".to_string()),
            _ => Some(format!("T^{ex}")),
        };
        let body = match (body.as_str(), tp) {
            (_, None) => body,
            ("1", Some(tp)) => tp,
            (_, Some(tp)) => format!("{body}*{tp}"),
        };
        terms.push((neg, body));
    }
    join_terms(terms)
}

pub fn show_rpe<K: Field>(r: &Rpe<K>) -> String {
    let g = show_el(&r.t, &r.gamma);
    let tp = if r.e == 1 { "T".to_string() } else { format!("T^{}", r.e) };
    let x = match g.as_str() {
        "1" => tp,
        "-1" => format!("-{tp}"),
        _ if g.contains(' ') => format!("({g})*{tp}"),
        _ => format!("{g}*{tp}"),
    };
    format!(
        "e={} f={} r={} v={} precision={}  X = {x}, Y = {}",
        r.e,
        r.f(),
        r.r,
        r.v,
        r.precision(),
        show_series(r, r.r.max(r.low))
    )
}
