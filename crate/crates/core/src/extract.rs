//! Subfield subcodes of GRS codes from message constraints.
//!
//! Expanding every generator entry `G[i][j]` into the m x m block
//! `T_{G[i][j]} R` turns encoding into a product over F_q: a message
//! `f~` in F_q^{mk} (the coefficient rows of f_0, ..., f_{k-1} side by side)
//! yields the coefficient rows of all n codeword symbols. A symbol lies in
//! F_q exactly when its coefficients beyond the constant one vanish, so the
//! messages that encode into F_q^n form the left kernel of the matrix made
//! of those blocks with their first column dropped. A basis of that kernel,
//! regrouped into F_Q entries, maps the parent generator onto a generator
//! of the subfield subcode.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extension::{ExtElement, ExtensionCtx};
use crate::grscode::{ExtMatrix, GrsCode};
use crate::matql::MatrixFq;
use crate::smallfield::Fq;

#[derive(Debug, Clone)]
pub struct SubfieldSubcode {
    parent: GrsCode,
    gamma_tilde: MatrixFq,
    gamma: ExtMatrix,
    gprime: MatrixFq,
    s_groups: usize,
    t_groups: usize,
    d_prime: usize,
}

impl SubfieldSubcode {
    /// Builds the subcode spanned by the rows of `gamma_tilde` (each row a
    /// message over F_q^{mk}) whose leading `s` and trailing `t` message
    /// coefficients are known to vanish.
    pub(crate) fn assemble(
        parent: GrsCode,
        gamma_tilde: MatrixFq,
        s: usize,
        t: usize,
    ) -> Result<Self> {
        let ctx = parent.ctx().clone();
        let m = ctx.degree();
        let k = parent.k();
        if gamma_tilde.cols() != m * k {
            return Err(Error::ShapeMismatch(format!(
                "constraint basis has {} columns, expected {}",
                gamma_tilde.cols(),
                m * k
            )));
        }
        let gamma = regroup(&ctx, &gamma_tilde)?;
        let product = gamma.mul(&ctx, &parent.canonical_generator())?;
        let n = parent.n();
        let mut data = Vec::with_capacity(product.rows() * n);
        for r in 0..product.rows() {
            for (j, c) in product.row(r).iter().enumerate() {
                if !c.is_subfield() {
                    return Err(Error::InvariantViolation(format!(
                        "entry ({r}, {j}) of Gamma*G is {c}, outside the subfield"
                    )));
                }
                data.push(c.constant());
            }
        }
        let gprime = MatrixFq::new(ctx.base().clone(), product.rows(), n, data)?;
        let d_prime = if gamma_tilde.rows() == 0 {
            parent.d()
        } else {
            parent.auxiliary_code(s, t)?.d()
        };
        Ok(SubfieldSubcode {
            parent,
            gamma_tilde,
            gamma,
            gprime,
            s_groups: s,
            t_groups: t,
            d_prime,
        })
    }

    pub fn parent(&self) -> &GrsCode {
        &self.parent
    }

    /// Constraint basis over F_q, k' x mk.
    pub fn gamma_tilde(&self) -> &MatrixFq {
        &self.gamma_tilde
    }

    /// The same basis read as a k' x k matrix over F_Q.
    pub fn gamma(&self) -> &ExtMatrix {
        &self.gamma
    }

    /// Generator over F_q, k' x n.
    pub fn gprime(&self) -> &MatrixFq {
        &self.gprime
    }

    pub fn k_prime(&self) -> usize {
        self.gamma_tilde.rows()
    }

    pub fn s_groups(&self) -> usize {
        self.s_groups
    }

    pub fn t_groups(&self) -> usize {
        self.t_groups
    }

    /// Design distance d + s + t. For the zero code (k' = 0) this is just
    /// the parent distance and carries no information.
    pub fn d_prime(&self) -> usize {
        self.d_prime
    }

    /// `u * G'` for a message `u` over F_q of length k'.
    pub fn encode(&self, u: &[Fq]) -> Result<Vec<Fq>> {
        self.gprime.left_mul_vec(u)
    }

    /// The F_Q message `u * Gamma` that the parent encodes into `encode(u)`.
    pub fn parent_message(&self, u: &[Fq]) -> Result<Vec<ExtElement>> {
        let ctx = self.parent.ctx();
        let lifted: Vec<ExtElement> = u.iter().map(|&c| ctx.embed(c)).collect();
        self.gamma.left_mul_vec(ctx, &lifted)
    }
}

/// Splits each row of `m` into consecutive length-m coefficient rows.
fn regroup(ctx: &ExtensionCtx, rows: &MatrixFq) -> Result<ExtMatrix> {
    let m = ctx.degree();
    let k = rows.cols() / m;
    let mut entries = Vec::with_capacity(rows.rows() * k);
    for r in 0..rows.rows() {
        for chunk in rows.row(r).chunks(m) {
            entries.push(ctx.element(chunk.to_vec())?);
        }
    }
    ExtMatrix::new(rows.rows(), k, entries)
}

/// Leading and trailing all-zero groups of width m in `row`. An all-zero
/// row counts every group on both sides.
pub(crate) fn zero_groups(row: &[Fq], m: usize) -> (usize, usize) {
    let groups: Vec<bool> = row
        .chunks(m)
        .map(|g| g.iter().all(|c| c.is_zero()))
        .collect();
    let lead = groups.iter().take_while(|&&z| z).count();
    let trail = groups.iter().rev().take_while(|&&z| z).count();
    (lead, trail)
}

/// Zero groups shared by every row; (0, 0) for an empty matrix.
pub(crate) fn common_zero_groups(rows: &MatrixFq, m: usize) -> (usize, usize) {
    (0..rows.rows())
        .map(|r| zero_groups(rows.row(r), m))
        .reduce(|(s, t), (a, b)| (s.min(a), t.min(b)))
        .unwrap_or((0, 0))
}

fn expanded_block(ctx: &ExtensionCtx, entry: &ExtElement) -> MatrixFq {
    ctx.toeplitz(entry)
        .mul(ctx.reduction_matrix())
        .expect("toeplitz width matches reduction height")
}

/// The mk x mn matrix of blocks `T_{G[i][j]} R`.
pub fn expand_generator(code: &GrsCode) -> MatrixFq {
    let ctx = code.ctx();
    let m = ctx.degree();
    let g = code.canonical_generator();
    let mut out = MatrixFq::zeros(ctx.base().clone(), m * code.k(), m * code.n());
    for i in 0..code.k() {
        for j in 0..code.n() {
            out.put_block(i * m, j * m, &expanded_block(ctx, g.get(i, j)));
        }
    }
    out
}

/// Drops the first column of a block.
pub fn drop_first_column(block: &MatrixFq) -> MatrixFq {
    if block.cols() == 0 {
        return block.clone();
    }
    block
        .select_cols(1..block.cols())
        .expect("range within bounds")
}

/// The mk x (m-1)n matrix whose block (i, j) is `T_{G[i][j]} R` without its
/// first column. A message row `f~` encodes into F_q^n iff `f~ * M = 0`.
pub fn assemble_constraint_matrix(code: &GrsCode) -> MatrixFq {
    let ctx = code.ctx();
    let m = ctx.degree();
    let w = m - 1;
    let g = code.canonical_generator();
    let mut out = MatrixFq::zeros(ctx.base().clone(), m * code.k(), w * code.n());
    for i in 0..code.k() {
        for j in 0..code.n() {
            let block = drop_first_column(&expanded_block(ctx, g.get(i, j)));
            out.put_block(i * m, j * w, &block);
        }
    }
    out
}

/// Subfield subcode of `code` over the base field of its extension.
pub fn extract_subfield_subcode(code: &GrsCode) -> Result<SubfieldSubcode> {
    let constraints = assemble_constraint_matrix(code);
    let gamma_tilde = constraints.left_kernel_basis();
    let (s, t) = common_zero_groups(&gamma_tilde, code.ctx().degree());
    SubfieldSubcode::assemble(code.clone(), gamma_tilde, s, t)
}

/// Checks `f_{pi(i)} = f_i^q` for `pi(i) = q i + (q-1) delta mod n`, with
/// `f` zero-extended to length n. Only defined for cyclic codes.
pub fn conjugacy_check(code: &GrsCode, f: &[ExtElement]) -> Result<bool> {
    let params = code.cyclic_params().ok_or_else(|| {
        Error::Unsupported("conjugacy constraints need a cyclic parent code".into())
    })?;
    let ctx: &Arc<ExtensionCtx> = code.ctx();
    let n = code.n();
    if f.len() > n {
        return Err(Error::ShapeMismatch(format!(
            "message of length {} exceeds n = {n}",
            f.len()
        )));
    }
    let mut full = f.to_vec();
    full.resize(n, ctx.zero());
    let q = ctx.base().order() as u64;
    let shift = ((q - 1) * params.delta) % n as u64;
    Ok((0..n).all(|i| {
        let target = ((q * i as u64 + shift) % n as u64) as usize;
        full[target] == ctx.frobenius(&full[i])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallfield::SmallField;

    fn f2() -> Arc<SmallField> {
        Arc::new(SmallField::prime(2).unwrap())
    }

    fn f8() -> Arc<ExtensionCtx> {
        Arc::new(ExtensionCtx::from_coeffs(f2(), &[1, 1, 0, 1]).unwrap())
    }

    #[test]
    fn drop_first_column_examples() {
        let f = f2();
        let i3 = MatrixFq::identity(f.clone(), 3);
        assert_eq!(
            drop_first_column(&i3).to_rows(),
            vec![vec![0, 0], vec![1, 0], vec![0, 1]]
        );
        let one = MatrixFq::identity(f.clone(), 1);
        let h = drop_first_column(&one);
        assert_eq!((h.rows(), h.cols()), (1, 0));
        assert!(drop_first_column(&MatrixFq::zeros(f, 3, 3)).is_zero());
    }

    #[test]
    fn expanded_top_left_block_is_identity() {
        let code = GrsCode::cyclic(f8(), 7, 5, 0).unwrap();
        let g = expand_generator(&code);
        assert_eq!((g.rows(), g.cols()), (15, 21));
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(g.get(r, c), if r == c { Fq::ONE } else { Fq::ZERO });
            }
        }
    }

    #[test]
    fn degree_one_extension_keeps_everything() {
        let f5 = Arc::new(SmallField::prime(5).unwrap());
        let ctx = Arc::new(ExtensionCtx::from_coeffs(f5, &[3, 1]).unwrap());
        let code = GrsCode::cyclic(ctx, 4, 2, 1).unwrap();
        let g = expand_generator(&code);
        let gen = code.canonical_generator();
        for i in 0..2 {
            for j in 0..4 {
                assert_eq!(g.get(i, j), gen.get(i, j).constant());
            }
        }
        let m = assemble_constraint_matrix(&code);
        assert_eq!((m.rows(), m.cols()), (2, 0));
        let ssc = extract_subfield_subcode(&code).unwrap();
        assert_eq!(ssc.k_prime(), 2);
        assert_eq!(ssc.d_prime(), code.d());
    }

    #[test]
    fn example_one_dimensions() {
        let ctx = f8();
        let expect = [(0, 4, 0, 0, 3), (1, 3, 0, 1, 4), (4, 1, 3, 1, 7)];
        for (delta, k_prime, s, t, d_prime) in expect {
            let code = GrsCode::cyclic(ctx.clone(), 7, 5, delta).unwrap();
            let ssc = extract_subfield_subcode(&code).unwrap();
            assert_eq!(
                (ssc.k_prime(), ssc.s_groups(), ssc.t_groups(), ssc.d_prime()),
                (k_prime, s, t, d_prime),
                "delta = {delta}"
            );
            assert_eq!(ssc.gprime().rank(), k_prime);
        }
    }

    #[test]
    fn constant_message_code_keeps_subfield_scalars() {
        // k = 1 with multipliers in F_q: only f_0 in F_q survives
        let ctx = f8();
        let code = GrsCode::cyclic(ctx.clone(), 7, 1, 0).unwrap();
        let m = assemble_constraint_matrix(&code);
        assert_eq!((m.rows(), m.cols()), (3, 14));
        let k = m.left_kernel_basis();
        assert_eq!(k.to_rows(), vec![vec![1, 0, 0]]);
        // brute force over all Q messages
        let survivors: Vec<_> = ctx
            .elements()
            .filter(|f| {
                code.encode(std::slice::from_ref(f))
                    .unwrap()
                    .iter()
                    .all(|c| c.is_subfield())
            })
            .collect();
        assert_eq!(survivors, vec![ctx.zero(), ctx.one()]);
    }

    #[test]
    fn subfield_encode_matches_parent() {
        let ctx = f8();
        let code = GrsCode::cyclic(ctx.clone(), 7, 5, 0).unwrap();
        let ssc = extract_subfield_subcode(&code).unwrap();
        assert!(ssc
            .encode(&[Fq::ZERO; 4])
            .unwrap()
            .iter()
            .all(|c| c.is_zero()));
        for r in 0..4 {
            let mut u = vec![Fq::ZERO; 4];
            u[r] = Fq::ONE;
            assert_eq!(ssc.encode(&u).unwrap(), ssc.gprime().row(r));
        }
        for bits in 0u8..16 {
            let u: Vec<Fq> = (0..4).map(|i| Fq::new((bits >> i) & 1)).collect();
            let via_parent: Vec<Fq> = code
                .encode(&ssc.parent_message(&u).unwrap())
                .unwrap()
                .iter()
                .map(|c| {
                    assert!(c.is_subfield());
                    c.constant()
                })
                .collect();
            assert_eq!(ssc.encode(&u).unwrap(), via_parent);
        }
    }

    #[test]
    fn conjugacy_examples() {
        let ctx = f8();
        let code = GrsCode::cyclic(ctx.clone(), 7, 5, 0).unwrap();
        assert!(conjugacy_check(&code, &vec![ctx.zero(); 5]).unwrap());
        let mut f = vec![ctx.zero(); 5];
        f[0] = ctx.element_from_index(2).unwrap();
        assert!(!conjugacy_check(&code, &f).unwrap());
        f[0] = ctx.one();
        assert!(conjugacy_check(&code, &f).unwrap());
        let plain = GrsCode::new(
            ctx.clone(),
            code.locators().to_vec(),
            code.multipliers().to_vec(),
            5,
        )
        .unwrap();
        assert!(matches!(
            conjugacy_check(&plain, &f),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn zero_group_counts() {
        let row: Vec<Fq> = [0, 0, 0, 1, 0, 0, 0, 0, 0]
            .iter()
            .map(|&x| Fq::new(x))
            .collect();
        assert_eq!(zero_groups(&row, 3), (1, 1));
        assert_eq!(zero_groups(&[Fq::ZERO; 6], 3), (2, 2));
        // partial groups do not count
        let row: Vec<Fq> = [0, 0, 1, 0, 0, 0].iter().map(|&x| Fq::new(x)).collect();
        assert_eq!(zero_groups(&row, 3), (0, 1));
    }
}
