use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use idealcheck::dagger::{DaggerConfig, DaggerReport, MembershipMode, Verdict};
use idealcheck::ideal::{big_g, big_l, doublestar_sides, star_sides, MonomialIdeal};
use idealcheck::notation::{infer_n_vars, parse_ideal};
use idealcheck::ring_examples::{relation, run_ring_examples, Relation};
use idealcheck::suites::{self, SuiteReport};
use idealcheck::{check_doublestar, check_star, integers_to_valuations, Error, ValuationMatrix};
use serde_json::{json, Value};

use crate::{Cli, Command, DaggerArgs, IdealArgs, LemmaArgs, Mode, StarArgs};

pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Error::Domain(msg.into()).into()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Dagger(args) => dagger(args),
        Command::Lemma(args) => lemma(args),
        Command::Star(args) => star(args),
        Command::Examples => examples(),
        Command::Ideal(args) => ideal(args),
    }
}

fn dagger(args: &DaggerArgs) -> Result<Outcome> {
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let config = DaggerConfig {
        max_counterexamples: args.counterexample_cap,
        memory_cap_bytes: args.memory_cap,
        workers: args.workers,
        mode: match args.mode {
            Mode::ShiftUp => MembershipMode::ShiftUp,
            Mode::MaterializeQ => MembershipMode::MaterializeQ,
        },
        peel: args.peel,
    };
    let (report, code) = match idealcheck::verify_dagger(args.n, &config) {
        Ok(r) => {
            let code = if r.holds == Some(true) { 0 } else { EXIT_INCONCLUSIVE };
            (r, code)
        }
        Err(Error::ResourceExhausted(r)) => (*r, EXIT_RESOURCE),
        Err(e) => return Err(e.into()),
    };
    let json = json!({
        "command": "dagger",
        "config": {
            "n": args.n,
            "workers": args.workers,
            "memory_cap_bytes": args.memory_cap,
            "counterexample_cap": args.counterexample_cap,
            "mode": config.mode,
            "peel": args.peel,
        },
        "report": report,
    });
    Ok(Outcome {
        code,
        text: dagger_text(&report),
        json,
    })
}

fn dagger_text(r: &DaggerReport) -> String {
    let mut s = String::new();
    let verdict = match r.verdict {
        Verdict::Holds => "holds: every monomial of P is covered, the inclusion is proved",
        Verdict::Inconclusive => "inconclusive: the symbolic criterion fails, which does not refute the inclusion",
        Verdict::Aborted => "aborted: memory cap reached",
    };
    let size = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
    writeln!(s, "dagger n={}", r.n).unwrap();
    writeln!(s, "verdict: {verdict}").unwrap();
    writeln!(s, "degrees: P {}, Q0 {}", r.p_degree, r.q0_degree).unwrap();
    writeln!(
        s,
        "sizes: |P| {}, |Q0| {}, |Q| {}",
        size(r.p_size),
        size(r.q0_size),
        size(r.q_size)
    )
    .unwrap();
    writeln!(s, "counterexamples listed: {}", r.counterexamples.len()).unwrap();
    for c in &r.counterexamples {
        writeln!(s, "  {c}").unwrap();
    }
    writeln!(s, "phase: {}", r.phase).unwrap();
    if let Some(reason) = &r.abort_reason {
        writeln!(s, "abort: {reason}").unwrap();
    }
    writeln!(
        s,
        "memory: peak {} keys ({} bytes) under a cap of {} bytes",
        r.peak_elements, r.peak_bytes, r.memory_cap_bytes
    )
    .unwrap();
    let phases: Vec<String> = r
        .timing
        .iter()
        .map(|t| format!("{} {:.3}s", t.phase, t.seconds))
        .collect();
    writeln!(s, "timing: {}", phases.join(", ")).unwrap();
    s
}

fn suite_line(r: &SuiteReport) -> String {
    let seed = r.seed.map_or(String::new(), |s| format!(" seed={s}"));
    let status = if r.passed() { "ok" } else { "FAILED" };
    let mut line = format!("{}: {status} ({} cases, {} failures{seed})", r.name, r.cases, r.failures);
    if let Some(f) = &r.first_failure {
        write!(line, " first failure {f}").unwrap();
    }
    line
}

fn suites_outcome(command: &str, config: Value, reports: Vec<SuiteReport>) -> Outcome {
    let passed = reports.iter().all(SuiteReport::passed);
    let mut text: String = reports.iter().map(|r| suite_line(r) + "\n").collect();
    writeln!(text, "{command}: {}", if passed { "all passed" } else { "FAILED" }).unwrap();
    Outcome {
        code: if passed { 0 } else { 1 },
        text,
        json: json!({
            "command": command,
            "config": config,
            "passed": passed,
            "suites": reports,
        }),
    }
}

fn lemma(args: &LemmaArgs) -> Result<Outcome> {
    if args.trials == 0 || args.max_len == 0 || args.max_value < 0 {
        return Err(usage("--trials and --max-len must be positive, --max-value non-negative"));
    }
    let reports = vec![
        suites::lemma_exhaustive(4, 4),
        suites::lemma_random(args.trials, args.max_len, args.max_value, args.seed),
    ];
    Ok(suites_outcome(
        "lemma",
        json!({
            "trials": args.trials,
            "max_len": args.max_len,
            "max_value": args.max_value,
            "seed": args.seed,
        }),
        reports,
    ))
}

fn matrix_outcome(source: Value, primes: Option<Vec<u64>>, m: &ValuationMatrix) -> Outcome {
    let star = check_star(m);
    let doublestar = check_doublestar(m);
    let mut text = String::new();
    if let Some(p) = &primes {
        writeln!(text, "primes: {p:?}").unwrap();
    }
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(text, "  {}", cells.join(" ")).unwrap();
    }
    writeln!(text, "(*)_{n}: {star}\n(**)_{n}: {doublestar}", n = m.n_ideals()).unwrap();
    Outcome {
        code: if star && doublestar { 0 } else { 1 },
        text,
        json: json!({
            "command": "star",
            "config": source,
            "primes": primes,
            "matrix": m.rows(),
            "star": star,
            "doublestar": doublestar,
        }),
    }
}

fn star(args: &StarArgs) -> Result<Outcome> {
    if let Some(values) = &args.source.integers {
        let (primes, m) = integers_to_valuations(values)?;
        return Ok(matrix_outcome(
            json!({ "integers": values, "seed": args.seed }),
            Some(primes),
            &m,
        ));
    }
    if let Some(path) = &args.source.matrix {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let m = ValuationMatrix::parse(&text)?;
        return Ok(matrix_outcome(
            json!({ "matrix_file": path, "seed": args.seed }),
            None,
            &m,
        ));
    }
    let Some(trials) = args.source.random else {
        bail!("one of --matrix, --integers, --random is required");
    };
    if trials == 0 || args.max_ideals == 0 || args.max_primes == 0 {
        return Err(usage("--random, --max-ideals and --max-primes must be positive"));
    }
    let reports = vec![suites::star_random(
        trials,
        args.max_ideals,
        args.max_primes,
        args.max_entry,
        args.seed,
    )];
    Ok(suites_outcome(
        "star",
        json!({
            "random": trials,
            "seed": args.seed,
            "max_ideals": args.max_ideals,
            "max_primes": args.max_primes,
            "max_entry": args.max_entry,
        }),
        reports,
    ))
}

fn examples() -> Result<Outcome> {
    let report = run_ring_examples()?;
    let mut text = String::new();
    for e in &report.examples {
        writeln!(
            text,
            "example {}: ideals {}",
            e.index,
            e.ideals.join(", ")
        )
        .unwrap();
        writeln!(text, "  {} = {}", e.left_label, e.left).unwrap();
        writeln!(text, "  {} = {}", e.right_label, e.right).unwrap();
        let how = if e.witness_searched { "searched" } else { "given" };
        writeln!(
            text,
            "  relation {:?} (expected {:?}), witness {} ({how}): {}",
            e.observed,
            e.expected,
            e.witness.as_deref().unwrap_or("none"),
            if e.passed { "ok" } else { "FAILED" }
        )
        .unwrap();
    }
    let pf = &report.product_of_fields;
    writeln!(
        text,
        "Z/2 x Z/2: {} families of up to {} ideals, (*) {}, (**) {}",
        pf.families_checked, pf.max_family_size, pf.star_holds, pf.doublestar_holds
    )
    .unwrap();
    writeln!(text, "examples: {}", if report.passed { "all passed" } else { "FAILED" }).unwrap();
    Ok(Outcome {
        code: if report.passed { 0 } else { 1 },
        text,
        json: json!({ "command": "examples", "report": report }),
    })
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Equal => "equal",
        Relation::StrictSubset => "strict subset",
        Relation::StrictSuperset => "strict superset",
        Relation::Incomparable => "incomparable",
    }
}

fn ideal(args: &IdealArgs) -> Result<Outcome> {
    let n_vars = match args.vars {
        Some(0) => return Err(usage("--vars must be positive")),
        Some(v) => v,
        None => infer_n_vars(args.ideals.iter().map(String::as_str))?,
    };
    let ideals: Vec<MonomialIdeal> = args
        .ideals
        .iter()
        .map(|t| parse_ideal(t, n_vars))
        .collect::<idealcheck::Result<_>>()?;
    let n = ideals.len();
    let mut text = String::new();
    let mut gs = Vec::new();
    let mut ls = Vec::new();
    for k in 1..=n {
        let g = big_g(k, &ideals)?;
        let l = big_l(k, &ideals)?;
        writeln!(text, "G({k}) = {g}\nL({k}) = {l}").unwrap();
        gs.push(g.to_string());
        ls.push(l.to_string());
    }
    let (star_l, star_r) = star_sides(&ideals)?;
    let (ds_l, ds_r) = doublestar_sides(&ideals)?;
    let star_rel = relation(&star_l, &star_r)?;
    let ds_rel = relation(&ds_l, &ds_r)?;
    let dagger_holds = matches!(ds_rel, Relation::Equal | Relation::StrictSubset);
    writeln!(text, "G(n)L(2)L(4)... vs L(1)L(3)...: {}", relation_name(star_rel)).unwrap();
    writeln!(text, "L(n)G(2)G(4)... vs G(1)G(3)...: {}", relation_name(ds_rel)).unwrap();
    writeln!(text, "inclusion L(n)G(2)G(4)... ⊆ G(1)G(3)...: {dagger_holds}").unwrap();
    Ok(Outcome {
        code: if dagger_holds { 0 } else { EXIT_INCONCLUSIVE },
        text,
        json: json!({
            "command": "ideal",
            "config": { "vars": n_vars, "ideals": args.ideals },
            "ideals": ideals.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "g": gs,
            "l": ls,
            "star": { "left": star_l.to_string(), "right": star_r.to_string(), "relation": star_rel },
            "doublestar": { "left": ds_l.to_string(), "right": ds_r.to_string(), "relation": ds_rel },
            "inclusion_holds": dagger_holds,
        }),
    })
}
