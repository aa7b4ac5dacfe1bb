//! Nested subfield subcodes from row selections of a constraint basis.
//!
//! Starting from the dimension-n parent (d = 1), the RREF constraint basis
//! lists the admissible messages row by row. Keeping a contiguous block of
//! rows gives a subcode; its messages share the leading and trailing zero
//! coefficients of the kept rows, which raises the design distance through
//! the auxiliary code. Dropping rows from the top of a block never lowers
//! that distance.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extension::{ExtElement, ExtensionCtx};
use crate::extract::{common_zero_groups, extract_subfield_subcode, zero_groups, SubfieldSubcode};
use crate::grscode::GrsCode;
use crate::matql::MatrixFq;

/// Per-row counts of leading (`s`) and trailing (`t`) all-zero groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryProfile {
    pub m: usize,
    pub leading: Vec<usize>,
    pub trailing: Vec<usize>,
}

pub fn trajectories(gamma_tilde: &MatrixFq, m: usize) -> Result<TrajectoryProfile> {
    if m == 0 || !gamma_tilde.cols().is_multiple_of(m) {
        return Err(Error::ShapeMismatch(format!(
            "width {} is not a multiple of the group size {m}",
            gamma_tilde.cols()
        )));
    }
    let (leading, trailing) = (0..gamma_tilde.rows())
        .map(|r| zero_groups(gamma_tilde.row(r), m))
        .unzip();
    Ok(TrajectoryProfile {
        m,
        leading,
        trailing,
    })
}

/// Subcode spanned by rows `first..=last` (0-based) of the base's
/// constraint basis.
pub fn subcode_from_rows(
    base: &SubfieldSubcode,
    first: usize,
    last: usize,
) -> Result<SubfieldSubcode> {
    let k_prime = base.k_prime();
    if last >= k_prime {
        return Err(Error::Selection {
            row: last,
            reason: format!("basis has only {k_prime} rows"),
        });
    }
    if first > last {
        return Err(Error::Selection {
            row: first,
            reason: format!("range starts after its end row {last}"),
        });
    }
    let rows: Vec<usize> = (first..=last).collect();
    select(base, &rows)
}

/// Subcode spanned by an arbitrary set of distinct basis rows. The design
/// distance uses the zero groups common to all chosen rows, so sparse
/// selections are valid but usually gain nothing.
pub fn subcode_from_rows_unchecked(
    base: &SubfieldSubcode,
    rows: &[usize],
) -> Result<SubfieldSubcode> {
    for (i, &r) in rows.iter().enumerate() {
        if r >= base.k_prime() {
            return Err(Error::Selection {
                row: r,
                reason: format!("basis has only {} rows", base.k_prime()),
            });
        }
        if rows[..i].contains(&r) {
            return Err(Error::Selection {
                row: r,
                reason: "row selected twice".into(),
            });
        }
    }
    select(base, rows)
}

fn select(base: &SubfieldSubcode, rows: &[usize]) -> Result<SubfieldSubcode> {
    let m = base.parent().ctx().degree();
    let chosen = base.gamma_tilde().select_rows(rows)?;
    let (s, t) = common_zero_groups(&chosen, m);
    SubfieldSubcode::assemble(base.parent().clone(), chosen, s, t)
}

/// One contiguous selection, rows `first..=last` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NestedEntry {
    pub first: usize,
    pub last: usize,
    pub k_prime: usize,
    pub d_prime: usize,
    pub s: usize,
    pub t: usize,
}

impl NestedEntry {
    fn contains(&self, other: &NestedEntry) -> bool {
        self.first <= other.first && other.last <= self.last
    }
}

impl fmt::Display for NestedEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows {}-{}: k'={} d'={} (s={}, t={})",
            self.first + 1,
            self.last + 1,
            self.k_prime,
            self.d_prime,
            self.s,
            self.t
        )
    }
}

#[derive(Debug, Clone)]
pub struct NestedFamily {
    base: SubfieldSubcode,
    profile: TrajectoryProfile,
    selections: Vec<NestedEntry>,
}

/// Extracts the subfield subcode of the dimension-n code with the given
/// locators and multipliers and tabulates every contiguous row selection.
pub fn enumerate_nested(
    ctx: Arc<ExtensionCtx>,
    locators: Vec<ExtElement>,
    multipliers: Vec<ExtElement>,
) -> Result<NestedFamily> {
    let n = locators.len();
    let parent = GrsCode::new(ctx, locators, multipliers, n)?;
    NestedFamily::from_parent(&parent)
}

impl NestedFamily {
    /// Uses `code`'s locators and multipliers with the dimension raised to n.
    pub fn from_parent(code: &GrsCode) -> Result<Self> {
        let parent = code.with_dimension(code.n())?;
        let base = extract_subfield_subcode(&parent)?;
        let m = parent.ctx().degree();
        let profile = trajectories(base.gamma_tilde(), m)?;
        let d = parent.d();
        let rows = base.k_prime();
        let mut selections: Vec<NestedEntry> = (0..rows)
            .into_par_iter()
            .flat_map_iter(|first| {
                let profile = &profile;
                (first..rows).map(move |last| {
                    let s = profile.leading[first..=last]
                        .iter()
                        .copied()
                        .min()
                        .unwrap_or(0);
                    let t = profile.trailing[first..=last]
                        .iter()
                        .copied()
                        .min()
                        .unwrap_or(0);
                    NestedEntry {
                        first,
                        last,
                        k_prime: last - first + 1,
                        d_prime: d + s + t,
                        s,
                        t,
                    }
                })
            })
            .collect();
        selections.sort_by_key(|e| (std::cmp::Reverse(e.k_prime), e.d_prime, e.first));
        Ok(NestedFamily {
            base,
            profile,
            selections,
        })
    }

    pub fn parent(&self) -> &GrsCode {
        self.base.parent()
    }

    pub fn base(&self) -> &SubfieldSubcode {
        &self.base
    }

    pub fn profile(&self) -> &TrajectoryProfile {
        &self.profile
    }

    /// Every contiguous selection, by decreasing k' then increasing d'.
    pub fn selections(&self) -> &[NestedEntry] {
        &self.selections
    }

    /// Selections not beaten in both k' and d' by another selection; one
    /// representative per (k', d') pair.
    pub fn frontier(&self) -> Vec<NestedEntry> {
        let mut out: Vec<NestedEntry> = Vec::new();
        for e in &self.selections {
            let dominated = self.selections.iter().any(|o| {
                o.k_prime >= e.k_prime
                    && o.d_prime >= e.d_prime
                    && (o.k_prime > e.k_prime || o.d_prime > e.d_prime)
            });
            let repeated = out
                .iter()
                .any(|o| o.k_prime == e.k_prime && o.d_prime == e.d_prime);
            if !dominated && !repeated {
                out.push(*e);
            }
        }
        out
    }

    /// Rows `first..=last` for first = 0..=last: the codes met while
    /// removing rows from the top of the block ending at `last`.
    pub fn top_trimmed(&self, last: usize) -> Vec<NestedEntry> {
        let mut out: Vec<NestedEntry> = self
            .selections
            .iter()
            .filter(|e| e.last == last)
            .copied()
            .collect();
        out.sort_by_key(|e| e.first);
        out
    }

    /// Longest sequence of nested selections, starting from the whole
    /// basis, along which d' strictly increases. Ties go to the larger k'
    /// at the first step where candidates differ.
    pub fn increasing_chain(&self) -> Vec<NestedEntry> {
        let rows = self.base.k_prime();
        if rows == 0 {
            return Vec::new();
        }
        let sel = &self.selections;
        let root = sel
            .iter()
            .position(|e| e.first == 0 && e.last == rows - 1)
            .expect("full range is always tabulated");
        // selections are sorted by decreasing k', and a strict sub-range has
        // smaller k', so successors always come later in the list
        let mut best_len = vec![1usize; sel.len()];
        let mut next: Vec<Option<usize>> = vec![None; sel.len()];
        for i in (0..sel.len()).rev() {
            for j in i + 1..sel.len() {
                if sel[j].k_prime < sel[i].k_prime
                    && sel[i].contains(&sel[j])
                    && sel[j].d_prime > sel[i].d_prime
                    && best_len[j] + 1 > best_len[i]
                {
                    best_len[i] = best_len[j] + 1;
                    next[i] = Some(j);
                }
            }
        }
        let mut chain = vec![sel[root]];
        let mut cur = root;
        while let Some(j) = next[cur] {
            chain.push(sel[j]);
            cur = j;
        }
        chain
    }

    /// Materializes a tabulated selection as a subcode.
    pub fn subcode(&self, entry: &NestedEntry) -> Result<SubfieldSubcode> {
        subcode_from_rows(&self.base, entry.first, entry.last)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallfield::SmallField;

    fn f8() -> Arc<ExtensionCtx> {
        let f2 = Arc::new(SmallField::prime(2).unwrap());
        Arc::new(ExtensionCtx::from_coeffs(f2, &[1, 1, 0, 1]).unwrap())
    }

    fn family() -> NestedFamily {
        let code = GrsCode::cyclic(f8(), 7, 7, 0).unwrap();
        NestedFamily::from_parent(&code).unwrap()
    }

    #[test]
    fn trajectory_examples() {
        let fam = family();
        let p = fam.profile();
        assert_eq!(p.leading, vec![0, 1, 1, 1, 3, 3, 3]);
        assert_eq!(p.trailing, vec![6, 2, 2, 2, 0, 0, 0]);
        let f2 = Arc::new(SmallField::prime(2).unwrap());
        let zero = MatrixFq::zeros(f2.clone(), 1, 12);
        let p = trajectories(&zero, 3).unwrap();
        assert_eq!((p.leading[0], p.trailing[0]), (4, 4));
        assert!(trajectories(&MatrixFq::zeros(f2, 1, 10), 3).is_err());
    }

    #[test]
    fn row_selections_from_the_worked_example() {
        let fam = family();
        let base = fam.base();
        assert_eq!((base.k_prime(), base.d_prime()), (7, 1));
        let top = subcode_from_rows(base, 0, 3).unwrap();
        assert_eq!(
            (top.k_prime(), top.s_groups(), top.t_groups(), top.d_prime()),
            (4, 0, 2, 3)
        );
        let trimmed = subcode_from_rows(base, 1, 3).unwrap();
        assert_eq!(
            (
                trimmed.k_prime(),
                trimmed.s_groups(),
                trimmed.t_groups(),
                trimmed.d_prime()
            ),
            (3, 1, 2, 4)
        );
        let bottom = subcode_from_rows(base, 4, 6).unwrap();
        assert_eq!(
            (
                bottom.k_prime(),
                bottom.s_groups(),
                bottom.t_groups(),
                bottom.d_prime()
            ),
            (3, 3, 0, 4)
        );
    }

    #[test]
    fn bad_selections_are_rejected() {
        let fam = family();
        assert!(matches!(
            subcode_from_rows(fam.base(), 2, 7),
            Err(Error::Selection { row: 7, .. })
        ));
        assert!(matches!(
            subcode_from_rows(fam.base(), 3, 2),
            Err(Error::Selection { row: 3, .. })
        ));
        assert!(matches!(
            subcode_from_rows_unchecked(fam.base(), &[1, 1]),
            Err(Error::Selection { row: 1, .. })
        ));
    }

    #[test]
    fn unchecked_selection_uses_common_zero_groups() {
        let fam = family();
        let sub = subcode_from_rows_unchecked(fam.base(), &[0, 4]).unwrap();
        assert_eq!((sub.k_prime(), sub.s_groups(), sub.t_groups()), (2, 0, 0));
    }

    #[test]
    fn chains_and_frontier() {
        let fam = family();
        let pairs =
            |v: &[NestedEntry]| v.iter().map(|e| (e.k_prime, e.d_prime)).collect::<Vec<_>>();
        let trimmed = fam.top_trimmed(3);
        assert_eq!(pairs(&trimmed), vec![(4, 3), (3, 4), (2, 4), (1, 4)]);
        let frontier = pairs(&fam.frontier());
        assert!(frontier.contains(&(4, 3)));
        assert!(frontier.contains(&(3, 4)));
        assert!(frontier.contains(&(7, 1)));
        let chain = fam.increasing_chain();
        assert_eq!(chain[0].k_prime, 7);
        assert!(chain
            .windows(2)
            .all(|w| w[0].contains(&w[1]) && w[1].d_prime > w[0].d_prime));
        assert_eq!(chain.len(), 3);
    }
}
