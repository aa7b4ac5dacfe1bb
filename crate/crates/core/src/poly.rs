//! Dense univariate polynomials over a [`SmallField`], coefficients least
//! significant first. Only what field construction needs.

use crate::smallfield::{Fq, SmallField};

pub(crate) fn trim(mut a: Vec<Fq>) -> Vec<Fq> {
    while a.last() == Some(&Fq::ZERO) {
        a.pop();
    }
    a
}

pub(crate) fn mul(field: &SmallField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fq::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == Fq::ZERO {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `divisor`.
pub(crate) fn rem_monic(field: &SmallField, a: &[Fq], divisor: &[Fq]) -> Vec<Fq> {
    let d = divisor.len() - 1;
    debug_assert_eq!(divisor[d], Fq::ONE);
    let mut r = trim(a.to_vec());
    while r.len() > d {
        let top = r.len() - 1;
        let lead = r[top];
        let shift = top - d;
        for (i, &c) in divisor.iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(lead, c));
        }
        r = trim(r);
    }
    r
}

/// Monic polynomial of degree `degree` whose lower coefficients are the
/// base-q digits of `index`.
fn monic_from_index(field: &SmallField, degree: usize, mut index: usize) -> Vec<Fq> {
    let q = field.order();
    let mut out = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        out.push(Fq::new((index % q) as u8));
        index /= q;
    }
    out.push(Fq::ONE);
    out
}

/// Trial division against every monic polynomial of degree 1..=deg/2.
/// Returns the first factor found, `None` when `poly` is irreducible.
pub(crate) fn find_factor(field: &SmallField, poly: &[Fq]) -> Option<Vec<Fq>> {
    let deg = poly.len() - 1;
    let q = field.order();
    for d in 1..=deg / 2 {
        let count = q.pow(d as u32);
        for idx in 0..count {
            let cand = monic_from_index(field, d, idx);
            if rem_monic(field, poly, &cand).is_empty() {
                return Some(cand);
            }
        }
    }
    None
}
