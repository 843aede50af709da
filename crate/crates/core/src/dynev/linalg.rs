//! Dense linear algebra over `K_I`: division-free characteristic polynomials and
//! Gaussian elimination whose pivots go through dynamic evaluation.

use super::triset::{El, TriSet, D5};
use crate::algebra::field::{Field, Ring};

pub type Matrix<K> = Vec<Vec<El<K>>>;

/// Berkowitz: `det(x I - A)`, coefficients lowest degree first, with ring operations only.
pub fn charpoly<R: Ring>(t: &R, a: &[Vec<R::El>]) -> Vec<R::El> {
    let n = a.len();
    if n == 0 {
        return vec![t.one()];
    }
    let mut v = vec![t.one(), t.neg(&a[0][0])];
    for k in 1..n {
        let mut q = vec![t.zero(); k + 2];
        q[0] = t.one();
        q[1] = t.neg(&a[k][k]);
        let mut w: Vec<R::El> = (0..k).map(|i| a[i][k].clone()).collect();
        for qi in q.iter_mut().skip(2) {
            let mut dot = t.zero();
            for (j, wj) in w.iter().enumerate() {
                dot = t.add(&dot, &t.mul(&a[k][j], wj));
            }
            *qi = t.neg(&dot);
            w = (0..k)
                .map(|i| {
                    let mut s = t.zero();
                    for (j, wj) in w.iter().enumerate() {
                        s = t.add(&s, &t.mul(&a[i][j], wj));
                    }
                    s
                })
                .collect();
        }
        let mut nv = vec![t.zero(); k + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                *slot = t.add(slot, &t.mul(&q[i - j], vj));
            }
        }
        v = nv;
    }
    v.reverse();
    v
}

/// Row-reduces the augmented system `[m | b]`; returns a solution or `None` when the
/// system is inconsistent on the current component. Free unknowns are set to zero.
pub fn solve<K: Field>(t: &TriSet<K>, m: &Matrix<K>, b: &[El<K>]) -> D5<Option<Vec<El<K>>>, K> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<El<K>>> = m
        .iter()
        .zip(b.iter())
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivots = vec![];
    let mut row = 0;
    for col in 0..cols {
        let mut found = None;
        for (r, line) in a.iter().enumerate().skip(row) {
            if !t.zero_test(&line[col])? {
                found = Some(r);
                break;
            }
        }
        let Some(pr) = found else { continue };
        a.swap(row, pr);
        let inv = t.inv(&a[row][col])?;
        for x in a[row].iter_mut() {
            *x = t.mul(x, &inv);
        }
        let pivot_row = a[row].clone();
        for (r, line) in a.iter_mut().enumerate() {
            if r == row || t.is_zero(&line[col]) {
                continue;
            }
            let f = line[col].clone();
            for (x, p) in line.iter_mut().zip(pivot_row.iter()) {
                *x = t.sub(x, &t.mul(&f, p));
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    for line in a.iter().skip(row) {
        if !t.zero_test(&line[cols])? {
            return Ok(None);
        }
    }
    let mut x = vec![t.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Ok(Some(x))
}
