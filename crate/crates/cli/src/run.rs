//! Command execution. Every command returns its records in a fixed order so
//! identical jobs produce byte-identical output.

use std::sync::Arc;

use alternant::oracle::{self, DEFAULT_LIMIT};
use alternant::{
    error_radius, expand_generator, extract_subfield_subcode, ExtensionCtx, GrsCode, NestedEntry,
    NestedFamily, SubfieldSubcode,
};
use rayon::prelude::*;

use crate::error::CliError;
use crate::jobspec::{CodeForm, Command, DeltaRange, JobSpec};
use crate::report::Record;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub limit: Option<u64>,
    pub delta_range: Option<DeltaRange>,
    pub dump_matrices: bool,
    /// `nested`: list every contiguous selection instead of the frontier
    /// and chain.
    pub all: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub records: Vec<Record>,
    /// Set when a `verify` check failed.
    pub verification_failed: bool,
}

impl Outcome {
    fn ok(records: Vec<Record>) -> Self {
        Outcome {
            records,
            verification_failed: false,
        }
    }
}

fn delta_of(code: &GrsCode) -> Option<u64> {
    code.cyclic_params().map(|c| c.delta)
}

fn code_record(code: &GrsCode) -> Record {
    Record::Code {
        q: code.ctx().base().order(),
        order: code.ctx().order(),
        n: code.n(),
        k: code.k(),
        d: code.d(),
        delta: delta_of(code),
        radius: error_radius(code.d()),
    }
}

fn subcode_record(ssc: &SubfieldSubcode) -> Record {
    let parent = ssc.parent();
    Record::Subcode {
        n: parent.n(),
        k: parent.k(),
        d: parent.d(),
        delta: delta_of(parent),
        k_prime: ssc.k_prime(),
        d_prime: ssc.d_prime(),
        s: ssc.s_groups(),
        t: ssc.t_groups(),
        radius: error_radius(ssc.d_prime()),
    }
}

fn selection_record(kind: &str, e: &NestedEntry) -> Record {
    Record::Selection {
        kind: kind.into(),
        first: e.first,
        last: e.last,
        k_prime: e.k_prime,
        d_prime: e.d_prime,
        s: e.s,
        t: e.t,
    }
}

fn dump_subcode(records: &mut Vec<Record>, ssc: &SubfieldSubcode) {
    let q = ssc.parent().ctx().base().order();
    records.push(Record::matrix("constraint basis", ssc.gamma_tilde()));
    records.push(Record::ext_matrix("message constraint", ssc.gamma(), q));
    records.push(Record::matrix("subcode generator", ssc.gprime()));
}

pub fn run(job: &JobSpec, command: Command, opts: &RunOptions) -> Result<Outcome, CliError> {
    let ctx = job.context()?;
    match command {
        Command::Construct => construct(job, &ctx, opts),
        Command::Extract => extract(job, &ctx, opts),
        Command::Nested => nested(job, &ctx, opts),
        Command::Verify => verify(job, &ctx, opts),
        Command::Sweep => sweep(job, &ctx, opts),
    }
}

fn construct(
    job: &JobSpec,
    ctx: &Arc<ExtensionCtx>,
    opts: &RunOptions,
) -> Result<Outcome, CliError> {
    let code = job.build_code(ctx, None, None)?;
    let mut records = vec![code_record(&code)];
    if opts.dump_matrices {
        records.push(Record::ext_matrix(
            "generator",
            &code.canonical_generator(),
            ctx.order() as usize,
        ));
        records.push(Record::matrix(
            "expanded generator",
            &expand_generator(&code),
        ));
    }
    Ok(Outcome::ok(records))
}

fn extract(job: &JobSpec, ctx: &Arc<ExtensionCtx>, opts: &RunOptions) -> Result<Outcome, CliError> {
    let code = job.build_code(ctx, None, None)?;
    let ssc = extract_subfield_subcode(&code)?;
    let mut records = vec![subcode_record(&ssc)];
    if opts.dump_matrices {
        dump_subcode(&mut records, &ssc);
    }
    Ok(Outcome::ok(records))
}

fn nested(job: &JobSpec, ctx: &Arc<ExtensionCtx>, opts: &RunOptions) -> Result<Outcome, CliError> {
    let parent = job.build_code(ctx, Some(job.length()), None)?;
    let family = NestedFamily::from_parent(&parent)?;
    let entries: Vec<(&str, NestedEntry)> = if opts.all {
        family.selections().iter().map(|e| ("all", *e)).collect()
    } else {
        let frontier = family.frontier().into_iter().map(|e| ("frontier", e));
        let chain = family.increasing_chain().into_iter().map(|e| ("chain", e));
        frontier.chain(chain).collect()
    };
    let mut records = vec![subcode_record(family.base())];
    records.extend(entries.iter().map(|(kind, e)| selection_record(kind, e)));
    if opts.dump_matrices {
        records.push(Record::matrix(
            "constraint basis",
            family.base().gamma_tilde(),
        ));
        for (kind, e) in &entries {
            let sub = family.subcode(e)?;
            let name = format!(
                "subcode generator, {kind} rows {}-{}",
                e.first + 1,
                e.last + 1
            );
            records.push(Record::matrix(&name, sub.gprime()));
        }
    }
    Ok(Outcome::ok(records))
}

fn check(name: &str, passed: bool, detail: String) -> Record {
    Record::Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn verify(job: &JobSpec, ctx: &Arc<ExtensionCtx>, opts: &RunOptions) -> Result<Outcome, CliError> {
    let limit = opts.limit.unwrap_or(DEFAULT_LIMIT);
    let code = job.build_code(ctx, None, None)?;
    let ssc = extract_subfield_subcode(&code)?;
    let mut records = vec![subcode_record(&ssc)];

    let span = oracle::span_of(ssc.gprime(), limit)?;
    let brute = oracle::subfield_intersection_bruteforce(&code, limit)?;
    let equal = oracle::sets_equal(&span, &brute)?;
    let detail = match span.first_difference(&brute) {
        None => format!("{} codewords", span.len()),
        Some(w) => format!(
            "{} vs {} codewords, first difference {w:?}",
            span.len(),
            brute.len()
        ),
    };
    records.push(check("span equals intersection", equal, detail));

    let distance = oracle::min_distance_exhaustive(&span);
    let (ok, detail) = match distance {
        Some(d) => (
            d >= ssc.d_prime(),
            format!("d = {d}, d' = {}", ssc.d_prime()),
        ),
        None => (true, "zero subcode".into()),
    };
    records.push(check("distance at least design distance", ok, detail));

    let parent_distance = oracle::grs_min_distance(&code, limit)?;
    records.push(check(
        "parent is MDS",
        parent_distance == Some(code.d()),
        format!(
            "d = {}, n-k+1 = {}",
            parent_distance.unwrap_or(0),
            code.d()
        ),
    ));

    if matches!(job.code, CodeForm::Cyclic { .. }) {
        let conj = oracle::conjugacy_subcode_bruteforce(&code, limit)?;
        records.push(check(
            "conjugacy subcode equals kernel subcode",
            oracle::sets_equal(&conj, &span)?,
            format!("{} codewords", conj.len()),
        ));
    }
    let verification_failed = records
        .iter()
        .any(|r| matches!(r, Record::Check { passed: false, .. }));
    Ok(Outcome {
        records,
        verification_failed,
    })
}

fn sweep(job: &JobSpec, ctx: &Arc<ExtensionCtx>, opts: &RunOptions) -> Result<Outcome, CliError> {
    if !job.is_cyclic() {
        return Err(CliError::Validation(
            "sweep: only valid with the cyclic form (n, k, delta)".into(),
        ));
    }
    let n = job.length() as u64;
    let range = opts.delta_range.or(job.delta_range).unwrap_or(DeltaRange {
        start: 0,
        end: n.saturating_sub(1),
    });
    let deltas: Vec<u64> = (range.start..=range.end).collect();
    let records = deltas
        .par_iter()
        .map(|&delta| {
            let code = job.build_code(ctx, None, Some(delta as i64))?;
            let ssc = extract_subfield_subcode(&code)?;
            Ok(subcode_record(&ssc))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Outcome::ok(records))
}
