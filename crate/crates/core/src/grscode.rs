//! Generalized Reed-Solomon codes over F_Q.
//!
//! A codeword is `(b_0 f(a_0), ..., b_{n-1} f(a_{n-1}))` for a message
//! polynomial f of degree < k, with distinct nonzero locators `a_j` and
//! nonzero column multipliers `b_j`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extension::{ExtElement, ExtensionCtx};

/// Dense matrix with entries in F_Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExtElement>,
}

impl ExtMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExtElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExtMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExtElement {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[ExtElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Row vector times matrix over F_Q.
    pub fn left_mul_vec(&self, ctx: &ExtensionCtx, v: &[ExtElement]) -> Result<Vec<ExtElement>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![ctx.zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(r)) {
                *o = ctx.add(o, &ctx.mul(a, x));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, ctx: &ExtensionCtx, other: &ExtMatrix) -> Result<ExtMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            entries.extend(other.left_mul_vec(ctx, self.row(r))?);
        }
        ExtMatrix::new(self.rows, other.cols, entries)
    }

    /// Text form with each entry written as its base-q index.
    pub fn to_text(&self, q: usize) -> String {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| e.index(q).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Locators `alpha^i` and multipliers `alpha^(i * delta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicParams {
    /// Reduced modulo n.
    pub delta: u64,
    pub alpha: ExtElement,
}

#[derive(Debug, Clone)]
pub struct GrsCode {
    ctx: Arc<ExtensionCtx>,
    k: usize,
    locators: Vec<ExtElement>,
    multipliers: Vec<ExtElement>,
    cyclic: Option<CyclicParams>,
}

impl GrsCode {
    pub fn new(
        ctx: Arc<ExtensionCtx>,
        locators: Vec<ExtElement>,
        multipliers: Vec<ExtElement>,
        k: usize,
    ) -> Result<Self> {
        let n = locators.len();
        if multipliers.len() != n {
            return Err(Error::InvalidCode(format!(
                "{n} locators but {} multipliers",
                multipliers.len()
            )));
        }
        if k < 1 || k > n || n as u64 > ctx.order() {
            return Err(Error::InvalidCode(format!(
                "need 1 <= k <= n <= Q, got k = {k}, n = {n}, Q = {}",
                ctx.order()
            )));
        }
        let m = ctx.degree();
        for e in locators.iter().chain(&multipliers) {
            if e.coeffs().len() != m {
                return Err(Error::InvalidCode(format!(
                    "element {e} does not have {m} coefficients"
                )));
            }
        }
        let mut seen = HashMap::new();
        for (i, a) in locators.iter().enumerate() {
            if a.is_zero() {
                return Err(Error::InvalidCode(format!("locator {i} is zero")));
            }
            if let Some(&first) = seen.get(a) {
                return Err(Error::DuplicateLocator { first, second: i });
            }
            seen.insert(a.clone(), i);
        }
        if let Some(i) = multipliers.iter().position(|b| b.is_zero()) {
            return Err(Error::InvalidCode(format!("multiplier {i} is zero")));
        }
        Ok(GrsCode {
            ctx,
            k,
            locators,
            multipliers,
            cyclic: None,
        })
    }

    /// Cyclic code of length n: `a_i = alpha^i`, `b_i = alpha^(i*delta)`
    /// with alpha the canonical primitive n-th root of unity.
    pub fn cyclic(ctx: Arc<ExtensionCtx>, n: usize, k: usize, delta: i64) -> Result<Self> {
        let alpha = ctx.nth_root_of_unity(n as u64)?;
        let delta = delta.rem_euclid(n as i64) as u64;
        let step = ctx.pow(&alpha, delta);
        let mut locators = Vec::with_capacity(n);
        let mut multipliers = Vec::with_capacity(n);
        let (mut a, mut b) = (ctx.one(), ctx.one());
        for _ in 0..n {
            locators.push(a.clone());
            multipliers.push(b.clone());
            a = ctx.mul(&a, &alpha);
            b = ctx.mul(&b, &step);
        }
        let mut code = Self::new(ctx, locators, multipliers, k)?;
        code.cyclic = Some(CyclicParams { delta, alpha });
        Ok(code)
    }

    pub fn ctx(&self) -> &Arc<ExtensionCtx> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.locators.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// n - k + 1.
    pub fn d(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn locators(&self) -> &[ExtElement] {
        &self.locators
    }

    pub fn multipliers(&self) -> &[ExtElement] {
        &self.multipliers
    }

    pub fn cyclic_params(&self) -> Option<&CyclicParams> {
        self.cyclic.as_ref()
    }

    /// Same locators and multipliers with a different dimension.
    pub fn with_dimension(&self, k: usize) -> Result<Self> {
        let mut code = Self::new(
            self.ctx.clone(),
            self.locators.clone(),
            self.multipliers.clone(),
            k,
        )?;
        code.cyclic = self.cyclic.clone();
        Ok(code)
    }

    /// k x n matrix with entry (i, j) = b_j * a_j^i.
    pub fn canonical_generator(&self) -> ExtMatrix {
        let ctx = &*self.ctx;
        let n = self.n();
        let mut entries = vec![ctx.zero(); self.k * n];
        for j in 0..n {
            let mut x = self.multipliers[j].clone();
            for i in 0..self.k {
                if i > 0 {
                    x = ctx.mul(&x, &self.locators[j]);
                }
                entries[i * n + j] = x.clone();
            }
        }
        ExtMatrix::new(self.k, n, entries).expect("shape is k x n")
    }

    /// Codeword of the message polynomial with coefficients `f` (length k),
    /// evaluated by Horner's rule.
    pub fn encode(&self, f: &[ExtElement]) -> Result<Vec<ExtElement>> {
        if f.len() != self.k {
            return Err(Error::ShapeMismatch(format!(
                "message has {} coefficients, code dimension is {}",
                f.len(),
                self.k
            )));
        }
        let ctx = &*self.ctx;
        Ok(self
            .locators
            .iter()
            .zip(&self.multipliers)
            .map(|(a, b)| {
                let value = f
                    .iter()
                    .rev()
                    .fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, a), c));
                ctx.mul(b, &value)
            })
            .collect())
    }

    /// The code obtained by forcing the `s` lowest and `t` highest message
    /// coefficients to zero: dimension k-s-t, multipliers `b_j a_j^s`.
    pub fn auxiliary_code(&self, s: usize, t: usize) -> Result<Self> {
        if s + t >= self.k {
            return Err(Error::Dimension(format!(
                "s + t = {} must be below k = {}",
                s + t,
                self.k
            )));
        }
        let ctx = &*self.ctx;
        let multipliers = self
            .locators
            .iter()
            .zip(&self.multipliers)
            .map(|(a, b)| ctx.mul(b, &ctx.pow(a, s as u64)))
            .collect();
        let mut code = Self::new(
            self.ctx.clone(),
            self.locators.clone(),
            multipliers,
            self.k - s - t,
        )?;
        code.cyclic = self.cyclic.as_ref().map(|c| CyclicParams {
            delta: (c.delta + s as u64) % self.n() as u64,
            alpha: c.alpha.clone(),
        });
        Ok(code)
    }
}

/// Errors correctable up to half the distance: floor((d-1)/2).
pub fn error_radius(d: usize) -> usize {
    d.saturating_sub(1) / 2
}
