//! Output records and their two renderings: JSON lines and aligned tables.

use std::fmt::Write as _;

use alternant::{ExtMatrix, MatrixFq};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Code {
        q: usize,
        order: u64,
        n: usize,
        k: usize,
        d: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<u64>,
        radius: usize,
    },
    Subcode {
        n: usize,
        k: usize,
        d: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<u64>,
        k_prime: usize,
        d_prime: usize,
        s: usize,
        t: usize,
        radius: usize,
    },
    Selection {
        kind: String,
        first: usize,
        last: usize,
        k_prime: usize,
        d_prime: usize,
        s: usize,
        t: usize,
    },
    Check {
        name: String,
        passed: bool,
        detail: String,
    },
    Matrix {
        name: String,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<u64>>,
    },
}

impl Record {
    pub fn matrix(name: &str, m: &MatrixFq) -> Self {
        Record::Matrix {
            name: name.into(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(u64::from).collect())
                .collect(),
        }
    }

    /// Extension-field matrix with entries written as element indices.
    pub fn ext_matrix(name: &str, m: &ExtMatrix, q: usize) -> Self {
        Record::Matrix {
            name: name.into(),
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|r| m.row(r).iter().map(|e| e.index(q)).collect())
                .collect(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Record::Code { .. } => "code",
            Record::Subcode { .. } => "subcode",
            Record::Selection { .. } => "selection",
            Record::Check { .. } => "check",
            Record::Matrix { .. } => "matrix",
        }
    }

    fn header(&self) -> Vec<&'static str> {
        match self {
            Record::Code { .. } => vec!["q", "Q", "n", "k", "d", "delta", "radius"],
            Record::Subcode { .. } => {
                vec!["n", "k", "d", "delta", "k'", "d'", "s", "t", "radius"]
            }
            Record::Selection { .. } => vec!["kind", "rows", "k'", "d'", "s", "t"],
            Record::Check { .. } => vec!["check", "result", "detail"],
            Record::Matrix { .. } => Vec::new(),
        }
    }

    fn cells(&self) -> Vec<String> {
        let opt = |d: &Option<u64>| d.map_or_else(|| "-".to_string(), |v| v.to_string());
        match self {
            Record::Code {
                q,
                order,
                n,
                k,
                d,
                delta,
                radius,
            } => vec![
                q.to_string(),
                order.to_string(),
                n.to_string(),
                k.to_string(),
                d.to_string(),
                opt(delta),
                radius.to_string(),
            ],
            Record::Subcode {
                n,
                k,
                d,
                delta,
                k_prime,
                d_prime,
                s,
                t,
                radius,
            } => vec![
                n.to_string(),
                k.to_string(),
                d.to_string(),
                opt(delta),
                k_prime.to_string(),
                d_prime.to_string(),
                s.to_string(),
                t.to_string(),
                radius.to_string(),
            ],
            Record::Selection {
                kind,
                first,
                last,
                k_prime,
                d_prime,
                s,
                t,
            } => vec![
                kind.clone(),
                format!("{}-{}", first + 1, last + 1),
                k_prime.to_string(),
                d_prime.to_string(),
                s.to_string(),
                t.to_string(),
            ],
            Record::Check {
                name,
                passed,
                detail,
            } => vec![
                name.clone(),
                if *passed { "pass" } else { "FAIL" }.to_string(),
                detail.clone(),
            ],
            Record::Matrix { .. } => Vec::new(),
        }
    }
}

pub fn render_records(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_records(text: &str) -> Result<Vec<Record>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

/// Consecutive records of one kind share a table. Matrices print as a name
/// line followed by their rows.
pub fn render_table(records: &[Record]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < records.len() {
        if !out.is_empty() {
            out.push('\n');
        }
        if let Record::Matrix {
            name,
            rows,
            cols,
            entries,
        } = &records[i]
        {
            let _ = writeln!(out, "{name} ({rows}x{cols})");
            for row in entries {
                let line: Vec<String> = row.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
            i += 1;
            continue;
        }
        let kind = records[i].kind();
        let group: Vec<&Record> = records[i..]
            .iter()
            .take_while(|r| r.kind() == kind)
            .collect();
        i += group.len();
        let header: Vec<String> = group[0].header().iter().map(|h| h.to_string()).collect();
        let rows: Vec<Vec<String>> = group.iter().map(|r| r.cells()).collect();
        let mut widths: Vec<usize> = header.iter().map(String::len).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        for row in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_record() -> impl Strategy<Value = Record> {
        let small = 0usize..300;
        prop_oneof![
            (
                small.clone(),
                small.clone(),
                small.clone(),
                proptest::option::of(0u64..300),
                small.clone()
            )
                .prop_map(|(n, k, d, delta, radius)| Record::Code {
                    q: 2,
                    order: 8,
                    n,
                    k,
                    d,
                    delta,
                    radius
                }),
            (
                small.clone(),
                small.clone(),
                proptest::option::of(0u64..300),
                small.clone(),
                small.clone()
            )
                .prop_map(|(n, k, delta, s, t)| Record::Subcode {
                    n,
                    k,
                    d: n + 1 - k.min(n),
                    delta,
                    k_prime: k / 2,
                    d_prime: n + 1 + s + t,
                    s,
                    t,
                    radius: n / 2,
                }),
            ("[a-z ]{0,12}", small.clone(), small.clone()).prop_map(|(kind, first, len)| {
                Record::Selection {
                    kind,
                    first,
                    last: first + len,
                    k_prime: len + 1,
                    d_prime: 3,
                    s: 0,
                    t: 1,
                }
            }),
            ("[ -~]{0,20}", any::<bool>(), "[ -~]{0,20}").prop_map(|(name, passed, detail)| {
                Record::Check {
                    name,
                    passed,
                    detail,
                }
            }),
            proptest::collection::vec(proptest::collection::vec(0u64..256, 3), 0..4).prop_map(
                |entries| {
                    Record::Matrix {
                        name: "m".into(),
                        rows: entries.len(),
                        cols: 3,
                        entries,
                    }
                }
            ),
        ]
    }

    proptest! {
        #[test]
        fn arbitrary_records_round_trip(records in proptest::collection::vec(arb_record(), 0..8)) {
            let text = render_records(&records);
            prop_assert_eq!(parse_records(&text).unwrap(), records.clone());
            prop_assert_eq!(render_records(&records), text);
        }
    }

    fn sample() -> Vec<Record> {
        vec![
            Record::Subcode {
                n: 7,
                k: 5,
                d: 3,
                delta: Some(4),
                k_prime: 1,
                d_prime: 7,
                s: 3,
                t: 1,
                radius: 3,
            },
            Record::Check {
                name: "span".into(),
                passed: true,
                detail: "2 words".into(),
            },
            Record::Matrix {
                name: "G'".into(),
                rows: 1,
                cols: 3,
                entries: vec![vec![1, 1, 1]],
            },
        ]
    }

    #[test]
    fn records_round_trip() {
        let text = render_records(&sample());
        assert_eq!(parse_records(&text).unwrap(), sample());
    }

    #[test]
    fn record_field_names() {
        let text = render_records(&sample()[..1]);
        assert_eq!(
            text,
            "{\"record\":\"subcode\",\"n\":7,\"k\":5,\"d\":3,\"delta\":4,\
             \"k_prime\":1,\"d_prime\":7,\"s\":3,\"t\":1,\"radius\":3}\n"
        );
    }

    #[test]
    fn table_alignment() {
        let table = render_table(&sample());
        let expected = "\
n  k  d  delta  k'  d'  s  t  radius
7  5  3  4      1   7   3  1  3

check  result  detail
span   pass    2 words

G' (1x3)
1 1 1
";
        assert_eq!(table, expected);
    }
}
