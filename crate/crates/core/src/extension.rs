//! The extension field F_Q = F_q[x]/p(x), Q = q^m, in coefficient-row form.
//!
//! An element is a length-m row over F_q with the x^0 coefficient leftmost.
//! Multiplication is `u * T_v * R`: the Toeplitz matrix of `v` turns the
//! product into a convolution of length 2m-1, and the precomputed
//! (2m-1) x m reduction matrix `R` folds the high coefficients back using
//! p(x).

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::matql::MatrixFq;
use crate::poly;
use crate::smallfield::{Fq, SmallField};

/// Largest Q accepted for an extension context.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    coeffs: Vec<Fq>,
}

impl ExtElement {
    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    /// Subfield elements have every coefficient but the constant one zero.
    pub fn is_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The constant coefficient, i.e. the element itself when it lies in F_q.
    pub fn constant(&self) -> Fq {
        self.coeffs[0]
    }

    /// Index with the coefficients as base-q digits, least significant first.
    pub fn index(&self, q: usize) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, c| acc * q as u64 + c.index() as u64)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub struct ExtensionCtx {
    base: Arc<SmallField>,
    m: usize,
    modulus: Vec<Fq>,
    reduction: MatrixFq,
    order: u64,
    primitive: OnceLock<ExtElement>,
}

impl fmt::Debug for ExtensionCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtensionCtx")
            .field("base", &self.base)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl ExtensionCtx {
    /// `modulus` is the monic irreducible p(x), least significant first.
    pub fn new(base: Arc<SmallField>, modulus: Vec<Fq>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::MalformedPolynomial(
                "ext_poly must have degree at least 1".into(),
            ));
        }
        let m = modulus.len() - 1;
        if let Some(bad) = modulus.iter().find(|c| c.index() >= base.order()) {
            return Err(Error::MalformedPolynomial(format!(
                "coefficient {bad} is not an element of F_{}",
                base.order()
            )));
        }
        if modulus[m] != Fq::ONE {
            return Err(Error::MalformedPolynomial("ext_poly must be monic".into()));
        }
        let order = (base.order() as u64)
            .checked_pow(m as u32)
            .filter(|&o| o <= MAX_EXTENSION_ORDER)
            .ok_or_else(|| {
                Error::Dimension(format!(
                    "extension of degree {m} over F_{} exceeds Q <= {MAX_EXTENSION_ORDER}",
                    base.order()
                ))
            })?;
        if let Some(factor) = poly::find_factor(&base, &modulus) {
            return Err(Error::Reducible {
                factor: factor.iter().map(|c| c.index() as u32).collect(),
            });
        }
        let mut ctx = ExtensionCtx {
            reduction: MatrixFq::identity(base.clone(), 1),
            base,
            m,
            modulus,
            order,
            primitive: OnceLock::new(),
        };
        ctx.reduction = ctx.compute_reduction_matrix();
        Ok(ctx)
    }

    /// Convenience constructor from integer coefficient indices.
    pub fn from_coeffs(base: Arc<SmallField>, modulus: &[u32]) -> Result<Self> {
        let q = base.order();
        let coeffs = modulus
            .iter()
            .map(|&c| {
                base.element(c as usize).ok_or_else(|| {
                    Error::MalformedPolynomial(format!(
                        "coefficient {c} is not an element of F_{q}"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, coeffs)
    }

    pub fn base(&self) -> &Arc<SmallField> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[Fq] {
        &self.modulus
    }

    /// Q = q^m.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The cached product R_{2m-2} ... R_m.
    pub fn reduction_matrix(&self) -> &MatrixFq {
        &self.reduction
    }

    pub fn element(&self, coeffs: Vec<Fq>) -> Result<ExtElement> {
        if coeffs.len() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "element needs {} coefficients, got {}",
                self.m,
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.index() >= self.base.order()) {
            return Err(Error::ShapeMismatch(format!(
                "coefficient {bad} is not an element of F_{}",
                self.base.order()
            )));
        }
        Ok(ExtElement { coeffs })
    }

    pub fn element_from_u32(&self, coeffs: &[u32]) -> Result<ExtElement> {
        let q = self.base.order();
        let c = coeffs
            .iter()
            .map(|&c| {
                self.base.element(c as usize).ok_or_else(|| {
                    Error::ShapeMismatch(format!("coefficient {c} is not an element of F_{q}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(c)
    }

    pub fn element_from_index(&self, index: u64) -> Result<ExtElement> {
        if index >= self.order {
            return Err(Error::ShapeMismatch(format!(
                "index {index} out of range for Q = {}",
                self.order
            )));
        }
        let q = self.base.order() as u64;
        let mut x = index;
        let coeffs = (0..self.m)
            .map(|_| {
                let d = x % q;
                x /= q;
                Fq::new(d as u8)
            })
            .collect();
        Ok(ExtElement { coeffs })
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.order).map(|i| self.element_from_index(i).expect("index in range"))
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            coeffs: vec![Fq::ZERO; self.m],
        }
    }

    pub fn one(&self) -> ExtElement {
        self.embed(Fq::ONE)
    }

    /// The subfield element `c`.
    pub fn embed(&self, c: Fq) -> ExtElement {
        let mut coeffs = vec![Fq::ZERO; self.m];
        coeffs[0] = c;
        ExtElement { coeffs }
    }

    /// m x (2m-1) matrix whose row i holds `v` shifted right by i.
    pub fn toeplitz(&self, v: &ExtElement) -> MatrixFq {
        let m = self.m;
        let mut t = MatrixFq::zeros(self.base.clone(), m, 2 * m - 1);
        for i in 0..m {
            for (j, &c) in v.coeffs.iter().enumerate() {
                t.set(i, i + j, c);
            }
        }
        t
    }

    /// The (j+1) x j matrix that annihilates the coefficient of x^j.
    pub fn reduction_step(&self, j: usize) -> Result<MatrixFq> {
        reduction_step(&self.base, &self.modulus, j)
    }

    fn compute_reduction_matrix(&self) -> MatrixFq {
        let m = self.m;
        if m == 1 {
            return MatrixFq::identity(self.base.clone(), 1);
        }
        let mut acc = self.reduction_step(2 * m - 2).expect("step in range");
        for j in (m..2 * m - 2).rev() {
            acc = acc
                .mul(&self.reduction_step(j).expect("step in range"))
                .expect("step shapes chain");
        }
        acc
    }

    pub fn add(&self, u: &ExtElement, v: &ExtElement) -> ExtElement {
        let f = &*self.base;
        ExtElement {
            coeffs: u
                .coeffs
                .iter()
                .zip(&v.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, u: &ExtElement, v: &ExtElement) -> ExtElement {
        let f = &*self.base;
        ExtElement {
            coeffs: u
                .coeffs
                .iter()
                .zip(&v.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self, u: &ExtElement) -> ExtElement {
        let f = &*self.base;
        ExtElement {
            coeffs: u.coeffs.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    /// Multiplication by a subfield scalar.
    pub fn scale(&self, c: Fq, u: &ExtElement) -> ExtElement {
        let f = &*self.base;
        ExtElement {
            coeffs: u.coeffs.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    /// `u * T_v * R`.
    pub fn mul(&self, u: &ExtElement, v: &ExtElement) -> ExtElement {
        debug_assert_eq!(u.coeffs.len(), self.m);
        debug_assert_eq!(v.coeffs.len(), self.m);
        let f = &*self.base;
        let m = self.m;
        // u * T_v: row i of T_v is v shifted by i
        let mut w = vec![Fq::ZERO; 2 * m - 1];
        for (i, &a) in u.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in v.coeffs.iter().enumerate() {
                w[i + j] = f.add(w[i + j], f.mul(a, b));
            }
        }
        // w * R
        let r = &self.reduction;
        let mut out = vec![Fq::ZERO; m];
        for (row, &a) in w.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, r.get(row, c)));
            }
        }
        ExtElement { coeffs: out }
    }

    pub fn pow(&self, u: &ExtElement, mut n: u64) -> ExtElement {
        let mut base = u.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// u^(Q-2).
    pub fn inv(&self, u: &ExtElement) -> Result<ExtElement> {
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(u, self.order - 2))
    }

    /// The q-power map.
    pub fn frobenius(&self, u: &ExtElement) -> ExtElement {
        self.pow(u, self.base.order() as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, u: &ExtElement) -> Result<u64> {
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let group = self.order - 1;
        let mut ord = group;
        for r in prime_factors(group) {
            while ord.is_multiple_of(r) && self.pow(u, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// First element, in index order, of multiplicative order Q-1.
    pub fn primitive_element(&self) -> &ExtElement {
        self.primitive.get_or_init(|| {
            (1..self.order)
                .map(|i| self.element_from_index(i).expect("index in range"))
                .find(|e| self.multiplicative_order(e).expect("nonzero") == self.order - 1)
                .expect("the multiplicative group of a finite field is cyclic")
        })
    }

    /// `primitive_element^((Q-1)/n)`, an element of order exactly n.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<ExtElement> {
        let group = self.order - 1;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::OrderNotDivisor {
                n,
                group_order: group,
            });
        }
        let root = self.pow(self.primitive_element(), group / n);
        let ord = self.multiplicative_order(&root)?;
        if ord != n {
            return Err(Error::InvariantViolation(format!(
                "root of unity has order {ord}, expected {n}"
            )));
        }
        Ok(root)
    }
}

/// Step matrix R_j for a monic `modulus` of degree m, m <= j <= 2m-2.
///
/// Entry (nu, mu) is 1 on the diagonal and -p_{m-j+mu} in row j for
/// mu >= j-m; everything else is zero. Irreducibility is not required.
pub fn reduction_step(base: &Arc<SmallField>, modulus: &[Fq], j: usize) -> Result<MatrixFq> {
    let m = modulus.len().saturating_sub(1);
    if m < 2 || j < m || j > 2 * m - 2 {
        return Err(Error::StepOutOfRange { j, m });
    }
    let mut r = MatrixFq::zeros(base.clone(), j + 1, j);
    for mu in 0..j {
        r.set(mu, mu, Fq::ONE);
        if mu + m >= j {
            r.set(j, mu, base.neg(modulus[m + mu - j]));
        }
    }
    Ok(r)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
