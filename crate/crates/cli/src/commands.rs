use crate::CliError;
use crate::args::{
    AsymptoticsArgs, FamilyArg, Format, ProtocolArgs, RuleKind, SpecArgs, TallyArgs, VerifyArgs, parse_candidates,
    parse_tie_break,
};
use irv_commlab::ballot::{parse_profile, serialize_profile};
use irv_commlab::elicitation::{ElicitationError, run_ppr, run_sp_ppr, run_stv_ppr, transcript_bound_check};
use irv_commlab::fooling::{
    Family, FoolingSpec, VerifyMode, VerifyOptions, asymptotic_estimate, canonical_fooling_profile,
    fooling_cardinality, log_cardinality, verify_fooling_set,
};
use irv_commlab::rules::{StvConfig, irv_average_tally, irv_tally, stv_tally};
use irv_commlab::{Axis, Candidate, Profile};
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

/// Above this many significant voters `fooling count` prints `|F|` in
/// scientific form instead of expanding it.
const EXPAND_LIMIT: usize = 5_000;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn read_profile(path: &Path) -> Result<Profile, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    parse_profile(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn join<'a>(cs: impl IntoIterator<Item = &'a Candidate>) -> String {
    cs.into_iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn tally(a: &TallyArgs) -> Result<String, CliError> {
    let p = read_profile(&a.profile)?;
    let tb = a.rule.tie_break()?;
    let (label, winners, trace) = match a.rule.rule {
        RuleKind::Irv => {
            tb.check(p.num_candidates()).map_err(usage)?;
            let (w, t) = irv_tally(&p, &tb, !a.no_majority_stop);
            ("winner", vec![w], t)
        }
        RuleKind::IrvAverage => {
            tb.check(p.num_candidates()).map_err(usage)?;
            let (w, t) = irv_average_tally(&p, &a.rule.avg_config(), &tb);
            ("winner", vec![w], t)
        }
        RuleKind::Stv => {
            let (ws, t) = stv_tally(&p, &StvConfig::new(a.rule.k), &tb).map_err(usage)?;
            ("winners", ws.into_iter().collect(), t)
        }
    };
    let mut out = String::new();
    match a.format {
        Format::Human => {
            let _ = writeln!(out, "{label}: {}", join(&winners));
            if a.trace {
                out.push_str(&trace.render());
            }
        }
        Format::Structured => {
            out.push_str("format: irv-commlab/tally v1\n");
            let _ = writeln!(out, "rule: {}", a.rule.rule()?);
            let _ = writeln!(out, "candidates: {}", p.num_candidates());
            let _ = writeln!(out, "voters: {}", p.num_voters());
            let _ = writeln!(out, "winners: {}", join(&winners));
            if a.trace {
                if let Some(q) = trace.quota {
                    let _ = writeln!(out, "quota: {q}");
                }
                for (i, r) in trace.rounds.iter().enumerate() {
                    let scores: Vec<String> = r.scores.iter().map(|(c, s)| format!("{c}={s}")).collect();
                    let _ = writeln!(out, "round: {} scores={} event={}", i + 1, scores.join(","), r.event);
                }
            }
        }
    }
    Ok(out)
}

pub fn protocol(a: &ProtocolArgs) -> Result<String, CliError> {
    let p = read_profile(&a.profile)?;
    let m = p.num_candidates();
    let tb = parse_tie_break(&a.tie_break)?;
    let transcript = if a.sp {
        let axis = match &a.axis {
            Some(list) => Axis::new(parse_candidates(list)?).map_err(usage)?,
            None => Axis::identity(m),
        };
        match run_sp_ppr(&p, &axis) {
            Ok((_, t)) => t,
            Err(ElicitationError::NotSinglePeaked(v)) => {
                return Err(usage(format!("profile is not single-peaked on the axis: {v}")));
            }
            Err(e) => return Err(usage(e)),
        }
    } else if a.stv {
        run_stv_ppr(&p, &StvConfig::new(a.k), &tb).map_err(usage)?.1
    } else {
        tb.check(p.num_candidates()).map_err(usage)?;
        run_ppr(&p, &tb).1
    };

    let mut out = match a.format {
        Format::Human => {
            let mut s = format!("{}\n", transcript.summary());
            if a.transcript {
                s.push_str(&transcript.to_structured());
            }
            s
        }
        Format::Structured => transcript.to_structured(),
    };
    if a.check_bounds {
        let ok = transcript_bound_check(&transcript, m, p.num_voters()).map_err(usage)?;
        let _ = writeln!(out, "bound_check: {}", if ok { "pass" } else { "fail" });
        if !ok {
            return Err(CliError::Failed(out));
        }
    }
    Ok(out)
}

pub fn fooling_emit(spec: &SpecArgs, output: Option<&Path>, ungrouped: bool) -> Result<String, CliError> {
    let spec = spec.spec()?;
    let p = canonical_fooling_profile(&spec).map_err(usage)?;
    let text = format!("# canonical fooling profile: {spec}\n{}", serialize_profile(&p, !ungrouped));
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok(format!("wrote {} voters to {}\n", p.num_voters(), path.display()))
        }
        None => Ok(text),
    }
}

pub fn fooling_count(args: &SpecArgs, format: Format) -> Result<String, CliError> {
    let spec = args.spec()?;
    let ln = log_cardinality(&spec).map_err(usage)?;
    let est = asymptotic_estimate(&spec);
    let exact = match spec.significant_voters_usize() {
        Some(n) if n <= EXPAND_LIMIT => Some(fooling_cardinality(&spec).map_err(usage)?),
        _ => None,
    };
    let shown = match &exact {
        Some(v) => v.to_string(),
        None => {
            let log10 = ln.value() / std::f64::consts::LN_10;
            if log10.is_finite() {
                let e = log10.floor();
                format!("{:.6}e+{}", 10f64.powf(log10 - e), e as i64)
            } else {
                format!("exp({ln})")
            }
        }
    };
    let mut out = String::new();
    match format {
        Format::Human => {
            let _ = writeln!(out, "|F| = {shown}, ln = {ln}");
            let _ = writeln!(out, "finite sum: {}", est.finite_sum);
            let _ = writeln!(out, "leading term: {}", est.leading_term);
            let _ = writeln!(out, "ratio ln|F| / leading: {:.6}", ln.ratio(&est.leading_term));
        }
        Format::Structured => {
            out.push_str("format: irv-commlab/fooling-count v1\n");
            let _ = writeln!(out, "family: {}", spec.family());
            let _ = writeln!(out, "m: {}", spec.num_candidates());
            let _ = writeln!(out, "ell: {}", spec.ell());
            let _ = writeln!(out, "voters: {}", spec.significant_voters_usize().map_or_else(|| "overflow".into(), |n| n.to_string()));
            let _ = writeln!(out, "cardinality: {shown}");
            let _ = writeln!(out, "ln_cardinality: {ln}");
            let _ = writeln!(out, "finite_sum: {}", est.finite_sum);
            let _ = writeln!(out, "leading_term: {}", est.leading_term);
        }
    }
    Ok(out)
}

pub fn fooling_verify(a: &VerifyArgs) -> Result<String, CliError> {
    let spec = a.spec.spec()?;
    let rule = a.rule(&spec)?;
    let mode = match (a.exhaustive, a.sampled, a.seed) {
        (true, None, _) => VerifyMode::Exhaustive { ceiling: a.ceiling },
        (false, Some(pairs), Some(seed)) => VerifyMode::Sampled { pairs, seed },
        _ => return Err(usage("choose --exhaustive or --sampled N --seed S")),
    };
    let opts = VerifyOptions {
        full_search: a.full_search,
        threads: a.threads,
        sequential: a.sequential,
    };
    let report = verify_fooling_set(&spec, &rule, mode, opts).map_err(usage)?;
    let out = match a.format {
        Format::Human => {
            let mut s = format!("{}\n", report.summary());
            let w = &report.witnesses;
            let _ = writeln!(
                s,
                "witnesses: {} swap-into-p, {} swap-into-q, {} multi-swap",
                w.swap_into_p, w.swap_into_q, w.multi_swap
            );
            for f in report.outcome_failures.iter().take(10) {
                let _ = writeln!(s, "wrong outcome: profile {} elects {}", f.index, join(&f.outcome));
            }
            for f in report.pair_failures.iter().take(10) {
                let _ = writeln!(s, "no witness: profiles {} and {}", f.left, f.right);
            }
            let _ = writeln!(s, "elapsed: {:.3} s on {} workers", report.elapsed.as_secs_f64(), report.threads);
            s
        }
        Format::Structured => report.to_structured(a.timing),
    };
    if report.passed() { Ok(out) } else { Err(CliError::Failed(out)) }
}

pub fn asymptotics(a: &AsymptoticsArgs) -> Result<String, CliError> {
    let family = match (a.family, a.k) {
        (FamilyArg::Irv, None) => Family::Irv,
        (FamilyArg::Sp, None) => Family::Sp,
        (FamilyArg::Stv, Some(k)) => Family::Stv { k },
        (FamilyArg::Stv, None) => return Err(usage("the stv family needs -k")),
        (_, Some(_)) => return Err(usage("-k applies to the stv family only")),
    };
    let ms = if a.m.is_empty() {
        let first = if family == Family::Sp { 2 } else { 3 };
        (first..=12).map(|e| 1usize << e).collect()
    } else {
        a.m.clone()
    };
    let mut out = String::from("m,n,ln_F,finite_sum,leading_term,ratio_exact_leading,ratio_finite_leading\n");
    for m in ms {
        let spec = FoolingSpec::new(family, m, a.ell, false).map_err(usage)?;
        let ln = log_cardinality(&spec).map_err(usage)?;
        let est = asymptotic_estimate(&spec);
        let n = match spec.significant_voters_usize() {
            Some(n) if n < 1 << 53 => n.to_string(),
            _ => {
                let log10 = ln.ln_voters / std::f64::consts::LN_10;
                let e = log10.floor();
                format!("{:.6}e+{}", 10f64.powf(log10 - e), e as i64)
            }
        };
        let _ = writeln!(
            out,
            "{m},{n},{ln},{},{},{:.9},{:.9}",
            est.finite_sum,
            est.leading_term,
            ln.ratio(&est.leading_term),
            est.finite_sum.ratio(&est.leading_term),
        );
    }
    Ok(out)
}
