//! Exhaustive ground truth for small codes: codeword enumeration, true
//! minimum distance and the literal intersection of a GRS code with F_q^n.
//!
//! Everything here works on plain symbol indices and lookup tables so it
//! stays independent of the constraint machinery it checks. When the base
//! field is prime, F_Q tables are built by polynomial arithmetic over F_p
//! rather than through the coefficient-row multiplication.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extension::ExtensionCtx;
use crate::extract::conjugacy_check;
use crate::grscode::GrsCode;
use crate::matql::MatrixFq;
use crate::smallfield::{FieldSpec, SmallField};

/// Default cap on the number of enumerated messages.
pub const DEFAULT_LIMIT: u64 = 1 << 20;

/// Addition and multiplication tables of a field with at most 256 elements.
#[derive(Debug, Clone)]
pub struct SymbolField {
    order: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl SymbolField {
    pub fn from_small(field: &SmallField) -> Self {
        let q = field.order();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in field.elements() {
            for b in field.elements() {
                add[a.index() * q + b.index()] = field.add(a, b).index() as u8;
                mul[a.index() * q + b.index()] = field.mul(a, b).index() as u8;
            }
        }
        SymbolField { order: q, add, mul }
    }

    /// Tables for F_Q with symbols named by `ExtElement::index`.
    pub fn for_extension(ctx: &ExtensionCtx) -> Result<Self> {
        let order = ctx.order();
        if order > 256 {
            return Err(Error::Unsupported(format!(
                "brute force needs Q <= 256, got {order}"
            )));
        }
        let base = ctx.base();
        if base.degree() == 1 {
            let modulus: Vec<u32> = ctx.modulus().iter().map(|c| c.index() as u32).collect();
            let spec = FieldSpec::new(base.characteristic(), ctx.degree() as u32, modulus);
            return Ok(Self::from_small(&SmallField::new(&spec)?));
        }
        let q = base.order();
        let elems: Vec<_> = ctx.elements().collect();
        let size = elems.len();
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * size + j] = ctx.add(a, b).index(q) as u8;
                mul[i * size + j] = ctx.mul(a, b).index(q) as u8;
            }
        }
        Ok(SymbolField {
            order: size,
            add,
            mul,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }
}

/// A sorted, deduplicated set of codewords over a field of `order` symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordSet {
    order: usize,
    n: usize,
    words: Vec<Vec<u8>>,
}

impl CodewordSet {
    pub fn new(order: usize, n: usize, mut words: Vec<Vec<u8>>) -> Self {
        words.sort_unstable();
        words.dedup();
        CodewordSet { order, n, words }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        self.words
            .binary_search_by(|w| w.as_slice().cmp(word))
            .is_ok()
    }

    /// A word in exactly one of the two sets, if any.
    pub fn first_difference(&self, other: &CodewordSet) -> Option<Vec<u8>> {
        self.words
            .iter()
            .find(|w| !other.contains(w))
            .or_else(|| other.words.iter().find(|w| !self.contains(w)))
            .cloned()
    }
}

fn check_limit(order: usize, rows: usize, limit: u64) -> Result<()> {
    let required = (order as u128).saturating_pow(rows as u32);
    if required > limit as u128 {
        return Err(Error::LimitExceeded { required, limit });
    }
    Ok(())
}

/// Visits `u * G` for every message `u`, splitting the message space by
/// the first coefficient across threads and folding per-thread results
/// with `merge`.
fn scan<R, L, M>(generator: &[Vec<u8>], n: usize, field: &SymbolField, leaf: L, merge: M) -> R
where
    R: Default + Send,
    L: Fn(&[u8], &mut R) + Sync,
    M: Fn(R, R) -> R + Sync + Send,
{
    let q = field.order();
    let scaled: Vec<Vec<Vec<u8>>> = generator
        .iter()
        .map(|row| {
            (0..q)
                .map(|lambda| row.iter().map(|&g| field.mul(lambda as u8, g)).collect())
                .collect()
        })
        .collect();
    if scaled.is_empty() {
        let mut acc = R::default();
        leaf(&vec![0u8; n], &mut acc);
        return acc;
    }
    (0..q)
        .into_par_iter()
        .map(|lambda| {
            let mut acc = R::default();
            let mut bufs = vec![vec![0u8; n]; scaled.len() + 1];
            bufs[1].copy_from_slice(&scaled[0][lambda]);
            descend(1, &mut bufs, &scaled, field, &leaf, &mut acc);
            acc
        })
        .reduce(R::default, &merge)
}

fn descend<R, L>(
    depth: usize,
    bufs: &mut [Vec<u8>],
    scaled: &[Vec<Vec<u8>>],
    field: &SymbolField,
    leaf: &L,
    acc: &mut R,
) where
    L: Fn(&[u8], &mut R),
{
    if depth == scaled.len() {
        leaf(&bufs[depth], acc);
        return;
    }
    for term in &scaled[depth] {
        {
            let (lo, hi) = bufs.split_at_mut(depth + 1);
            for ((o, &a), &b) in hi[0].iter_mut().zip(&lo[depth]).zip(term) {
                *o = field.add(a, b);
            }
        }
        descend(depth + 1, bufs, scaled, field, leaf, acc);
    }
}

/// All codewords spanned by the rows of `generator` (symbol indices).
pub fn enumerate_codewords(
    generator: &[Vec<u8>],
    n: usize,
    field: &SymbolField,
    limit: u64,
) -> Result<CodewordSet> {
    check_limit(field.order(), generator.len(), limit)?;
    let words = scan(
        generator,
        n,
        field,
        |w, acc: &mut Vec<Vec<u8>>| acc.push(w.to_vec()),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    Ok(CodewordSet::new(field.order(), n, words))
}

/// Smallest nonzero weight; `None` for the zero code.
pub fn min_distance_exhaustive(set: &CodewordSet) -> Option<usize> {
    set.words.iter().map(|w| weight(w)).filter(|&w| w > 0).min()
}

/// Smallest nonzero codeword weight without storing the codewords.
pub fn min_distance_of_generator(
    generator: &[Vec<u8>],
    n: usize,
    field: &SymbolField,
    limit: u64,
) -> Result<Option<usize>> {
    check_limit(field.order(), generator.len(), limit)?;
    Ok(scan(
        generator,
        n,
        field,
        |w, acc: &mut Option<usize>| {
            let wt = weight(w);
            if wt > 0 && acc.is_none_or(|m| wt < m) {
                *acc = Some(wt);
            }
        },
        |a, b| match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        },
    ))
}

fn weight(w: &[u8]) -> usize {
    w.iter().filter(|&&x| x != 0).count()
}

/// Canonical generator of `code` as F_Q symbol indices, computed with
/// table arithmetic.
pub fn grs_generator_symbols(code: &GrsCode) -> Result<(SymbolField, Vec<Vec<u8>>)> {
    let ctx = code.ctx();
    let field = SymbolField::for_extension(ctx)?;
    let q = ctx.base().order();
    let a: Vec<u8> = code.locators().iter().map(|x| x.index(q) as u8).collect();
    let b: Vec<u8> = code
        .multipliers()
        .iter()
        .map(|x| x.index(q) as u8)
        .collect();
    let mut rows = Vec::with_capacity(code.k());
    let mut cur = b;
    for i in 0..code.k() {
        if i > 0 {
            cur = cur.iter().zip(&a).map(|(&x, &y)| field.mul(x, y)).collect();
        }
        rows.push(cur.clone());
    }
    Ok((field, rows))
}

/// Every parent codeword whose symbols all lie in F_q, projected to F_q.
pub fn subfield_intersection_bruteforce(code: &GrsCode, limit: u64) -> Result<CodewordSet> {
    let (field, rows) = grs_generator_symbols(code)?;
    check_limit(field.order(), rows.len(), limit)?;
    let q = code.ctx().base().order() as u8;
    // F_q symbols are exactly the indices below q
    let words = scan(
        &rows,
        code.n(),
        &field,
        |w, acc: &mut Vec<Vec<u8>>| {
            if w.iter().all(|&x| x < q) {
                acc.push(w.to_vec());
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    Ok(CodewordSet::new(q as usize, code.n(), words))
}

/// Codewords of the F_q generator `gprime`.
pub fn span_of(gprime: &MatrixFq, limit: u64) -> Result<CodewordSet> {
    let field = SymbolField::from_small(gprime.field());
    let rows: Vec<Vec<u8>> = (0..gprime.rows())
        .map(|r| gprime.row(r).iter().map(|x| x.index() as u8).collect())
        .collect();
    enumerate_codewords(&rows, gprime.cols(), &field, limit)
}

/// Minimum distance of the code generated by `gprime`.
pub fn min_distance_of(gprime: &MatrixFq, limit: u64) -> Result<Option<usize>> {
    let field = SymbolField::from_small(gprime.field());
    let rows: Vec<Vec<u8>> = (0..gprime.rows())
        .map(|r| gprime.row(r).iter().map(|x| x.index() as u8).collect())
        .collect();
    min_distance_of_generator(&rows, gprime.cols(), &field, limit)
}

/// Minimum distance of a GRS code by enumeration over F_Q.
pub fn grs_min_distance(code: &GrsCode, limit: u64) -> Result<Option<usize>> {
    let (field, rows) = grs_generator_symbols(code)?;
    min_distance_of_generator(&rows, code.n(), &field, limit)
}

pub fn sets_equal(a: &CodewordSet, b: &CodewordSet) -> Result<bool> {
    if a.order != b.order || a.n != b.n {
        return Err(Error::ShapeMismatch(format!(
            "comparing length-{} words over {} symbols with length-{} words over {} symbols",
            a.n, a.order, b.n, b.order
        )));
    }
    Ok(a.words == b.words)
}

/// Subcode of a cyclic code from the conjugacy constraints: every message
/// satisfying them, encoded and projected to F_q.
pub fn conjugacy_subcode_bruteforce(code: &GrsCode, limit: u64) -> Result<CodewordSet> {
    let ctx: &Arc<ExtensionCtx> = code.ctx();
    let order = ctx.order();
    check_limit(order as usize, code.k(), limit)?;
    let k = code.k();
    let total = order.pow(k as u32);
    let words = (0..total)
        .into_par_iter()
        .map(|idx| -> Result<Option<Vec<u8>>> {
            let mut x = idx;
            let f = (0..k)
                .map(|_| {
                    let e = ctx.element_from_index(x % order);
                    x /= order;
                    e
                })
                .collect::<Result<Vec<_>>>()?;
            if !conjugacy_check(code, &f)? {
                return Ok(None);
            }
            let c = code.encode(&f)?;
            if c.iter().any(|s| !s.is_subfield()) {
                return Err(Error::InvariantViolation(format!(
                    "message #{idx} satisfies the conjugacy constraints but encodes outside F_q"
                )));
            }
            Ok(Some(c.iter().map(|s| s.constant().index() as u8).collect()))
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<Vec<_>>>()?;
    Ok(CodewordSet::new(ctx.base().order(), code.n(), words))
}
