use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use randgap_core::chaincond::{conditional_extract, random_event_pairs, ConditionalExtraction, Delta};
use randgap_core::construction::{
    continuous_representatives, reserved_coordinate, verify_base_names, verify_blocks, verify_cross_terms,
    verify_extended_gap, WeightSequence,
};
use randgap_core::cube::{format_rational, ClopenSet, DyadicRational};
use randgap_core::report::{tag, Check, Report};
use randgap_core::souslin::{
    eval_pair, find_pair_bruteforce, find_pair_pipeline, generate, GeneratorConfig, NamesSource, PipelineRun,
    SouslinInstance,
};
use serde::Serialize;

use crate::artifacts::{Artifacts, BASE, EXTENDED};
use crate::config::{Mode, Names, RunConfig};
use crate::output::render;
use crate::CliError;

pub const OK: u8 = 0;
pub const VERIFY_FAILED: u8 = 1;
pub const STAGED_FAILURE: u8 = 3;

/// Exit status and rendered output of a command.
pub struct Outcome {
    pub code: u8,
    pub body: String,
}

#[derive(Serialize)]
struct ArtifactFile {
    file: &'static str,
    bytes: usize,
}

pub fn construct(config: &RunConfig) -> Result<Outcome, CliError> {
    let dir = config.out.clone().unwrap_or_else(|| "artifacts".into());
    let built = Artifacts::build(config.generators, config.horizon)?;
    let files: Vec<ArtifactFile> = built
        .write(&dir)?
        .into_iter()
        .map(|(file, bytes)| ArtifactFile { file, bytes })
        .collect();
    let text = files.iter().map(|f| format!("wrote {} ({} bytes)\n", dir.join(f.file).display(), f.bytes)).collect();
    Ok(Outcome {
        code: OK,
        body: render(config.format, text, &files, &files)?,
    })
}

#[derive(Serialize)]
struct VerifyRecord<'a> {
    passed: bool,
    failures: usize,
    checks: &'a [Check],
}

pub fn verify(config: &RunConfig) -> Result<Outcome, CliError> {
    let (artifacts, loaded) = match &config.artifacts {
        Some(dir) => (Artifacts::load(dir)?, true),
        None => (Artifacts::build(config.generators, config.horizon)?, false),
    };
    let generators = artifacts.tower.generators();
    let horizon = artifacts.tower.horizon();

    let mut report = Report::new();
    report.extend(verify_blocks(horizon as u64));
    report.extend(verify_base_names(generators as u64, horizon));
    if loaded {
        report.extend(file_checks(&artifacts));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let samples: Vec<(u64, u64, u64)> = (0..config.samples)
        .map(|_| {
            let g = generators as u64;
            (rng.gen_range(0..g), rng.gen_range(0..g), rng.gen_range(0..horizon as u64))
        })
        .collect();
    report.extend(verify_cross_terms(&samples));
    report.extend(artifacts.tower.verify());
    report.extend(verify_extended_gap(&artifacts.tower));
    let weight = WeightSequence::InverseSquare;
    for (alpha, (a, b)) in artifacts.extended.iter().enumerate() {
        let reps = continuous_representatives(a, b, &|n| weight.lower(n), &|n| vec![reserved_coordinate(alpha as u64, n)])?;
        report.extend(reps.report);
    }

    let failures = report.failures().count();
    let mut text = report.to_string();
    text.push_str(&format!("{} checks, {failures} failed\n", report.len()));
    let record = VerifyRecord {
        passed: failures == 0,
        failures,
        checks: &report.checks,
    };
    Ok(Outcome {
        code: if failures == 0 { OK } else { VERIFY_FAILED },
        body: render(config.format, text, &record, &report.checks)?,
    })
}

/// Checks that apply to the files themselves: the measure law and
/// disjointness of the stored base names, containment of base in extended
/// names, and agreement of the extended names with the stored tower.
fn file_checks(artifacts: &Artifacts) -> Report {
    let mut report = Report::new();
    let expected_from_tower = Artifacts {
        tower: artifacts.tower.clone(),
        base: Vec::new(),
        extended: (0..artifacts.tower.generators())
            .map(|a| randgap_core::construction::extended_names(&artifacts.tower, a))
            .collect(),
    };
    for (alpha, ((c, d), (a, b))) in artifacts.base.iter().zip(&artifacts.extended).enumerate() {
        for (label, name) in [("c", c), ("d", d)] {
            let bad = name.events().iter().enumerate().find_map(|(n, e)| {
                let expected = DyadicRational::pow2_neg(randgap_core::construction::ceil_log2(n as u64 + 2));
                let mu = e.measure();
                (mu != expected).then(|| (n, mu, expected))
            });
            let subject = format!("{BASE} {label}_{alpha}");
            report.push(match bad {
                None => Check::new(tag::MEASURE_LAW, subject, "every n", "=", "2^-ceil(log2(n+2))", true),
                Some((n, mu, expected)) => Check::new(tag::MEASURE_LAW, format!("{subject}({n})"), mu, "=", expected, false),
            });
        }
        let overlap = (0..c.horizon()).find(|&n| !c.events()[n].is_disjoint_from(&d.events()[n]));
        report.push(Check::new(
            tag::SAME_INDEX,
            format!("{BASE} c_{alpha} ∧ d_{alpha}"),
            overlap.map_or("empty".to_string(), |n| format!("nonempty at n = {n}")),
            "=",
            "empty",
            overlap.is_none(),
        ));
        let below = (0..c.horizon())
            .all(|n| c.events()[n].is_subset_of(&a.events()[n]) && d.events()[n].is_subset_of(&b.events()[n]));
        report.push(Check::new(tag::EXTENDS_BASE, format!("{BASE} ⊆ {EXTENDED}, alpha = {alpha}"), "c, d", "<=", "a, b", below));
        let (ta, tb) = &expected_from_tower.extended[alpha];
        let same = a.events() == ta.events() && b.events() == tb.events();
        report.push(Check::new(tag::EXTENDED_GAP, format!("{EXTENDED} a_{alpha}, b_{alpha}"), "file", "=", "tower", same));
    }
    report
}

pub fn search(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.mode {
        Mode::Pair => search_pair(config),
        Mode::Extract => search_extract(config),
    }
}

#[derive(Serialize)]
struct PairRecord<'a> {
    mode: &'static str,
    seed: u64,
    conditions: usize,
    pipeline: &'a PipelineRun,
    bruteforce: Option<[usize; 2]>,
    oracle_residual: Option<String>,
    reverified: Option<bool>,
    agree: bool,
}

fn load_instance(config: &RunConfig) -> Result<SouslinInstance, CliError> {
    let instance = match &config.instance {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?
            .parse()?,
        None => {
            let source = match config.names {
                Names::Base => NamesSource::Base { generators: config.generators, horizon: config.horizon },
                Names::Extended => NamesSource::Extended { generators: config.generators, horizon: config.horizon },
            };
            let generator = GeneratorConfig {
                source,
                family: config.family,
                gamma: config.gamma,
                cut: config.cut,
                noise: config.noise,
                weight: WeightSequence::InverseSquare,
            };
            generate(&generator, config.seed)?
        }
    };
    instance.validate()?;
    Ok(instance)
}

fn search_pair(config: &RunConfig) -> Result<Outcome, CliError> {
    let instance = load_instance(config)?;
    let run = find_pair_pipeline(&instance, &config.epsilon)?;
    let brute = find_pair_bruteforce(&instance)?;

    let mut rows = Vec::new();
    let mut text = run.to_string();
    let (oracle, reverified) = match run.certificate() {
        Some(cert) => {
            let eval = eval_pair(&instance, cert.xi, cert.eta)?;
            let reverified = cert.reverify(&instance)?;
            rows.extend(cert.checks.checks.iter().cloned());
            rows.push(Check::new(
                tag::PAIR,
                format!("oracle ({}, {})", cert.xi, cert.eta),
                &eval.residual,
                ">",
                0,
                eval.compatible,
            ));
            rows.push(Check::new(tag::RESIDUAL, "re-verification", reverified, "=", true, reverified));
            (Some(eval), Some(reverified))
        }
        None => {
            if let randgap_core::souslin::PipelineOutcome::Exhausted { stage, detail } = &run.outcome {
                rows.push(Check::new(*stage, "pipeline exhausted", detail, "", "", false));
            }
            (None, None)
        }
    };
    let agree = match (&oracle, reverified) {
        (Some(eval), Some(ok)) => eval.compatible && ok && brute.is_some(),
        _ => true,
    };
    text.push_str(&match brute {
        Some((i, j)) => format!("bruteforce = {i} {j}\n"),
        None => "bruteforce = none\n".to_string(),
    });
    if let Some(eval) = &oracle {
        text.push_str(&format!("oracle residual = {}\n", eval.residual));
        text.push_str(&format!("agree = {agree}\n"));
    }
    let record = PairRecord {
        mode: "pair",
        seed: config.seed,
        conditions: instance.len(),
        pipeline: &run,
        bruteforce: brute.map(|(i, j)| [i, j]),
        oracle_residual: oracle.as_ref().map(|e| e.residual.to_string()),
        reverified,
        agree,
    };
    let code = match (run.certificate(), agree) {
        (None, _) => STAGED_FAILURE,
        (Some(_), true) => OK,
        (Some(_), false) => VERIFY_FAILED,
    };
    Ok(Outcome {
        code,
        body: render(config.format, text, &record, &rows)?,
    })
}

#[derive(Serialize)]
struct ExtractRecord<'a> {
    mode: &'static str,
    seed: u64,
    family: usize,
    delta: String,
    extraction: &'a ConditionalExtraction,
    checks: &'a [Check],
}

fn search_extract(config: &RunConfig) -> Result<Outcome, CliError> {
    let delta = Delta::from_value(&config.delta)?;
    let pairs = random_event_pairs(config.family, &delta, config.seed);
    let extraction = conditional_extract(&pairs, &delta, 2)?;
    let mut report = Report::new();
    for (k, &i) in extraction.members.iter().enumerate() {
        for &j in &extraction.members[k + 1..] {
            let condition = ClopenSet::cylinder(pairs[i].s.clone()).meet_cylinder(&pairs[j].s);
            let value: Option<BigRational> = pairs[i].x.meet(&pairs[j].x).conditional(&condition).ok();
            let pass = value.as_ref().is_some_and(|v| v > delta.square());
            report.push(Check::new(
                tag::MERGED_CONDITION,
                format!("x_{i} ∧ x_{j} | [s_{i}] ∧ [s_{j}]"),
                value.as_ref().map_or("undefined".to_string(), format_rational),
                ">",
                format_rational(delta.square()),
                pass,
            ));
        }
    }
    let members: BTreeSet<usize> = extraction.members.iter().copied().collect();
    let mut text = String::new();
    for s in &extraction.transcript.stages {
        text.push_str(&format!("stage {} : {} survivors\n", s.stage, s.survivors.len()));
    }
    match extraction.exhausted_at {
        None => text.push_str(&format!("members = {}\n", members.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))),
        Some(stage) => text.push_str(&format!("exhausted at {stage}\n")),
    }
    text.push_str(&report.to_string());
    let record = ExtractRecord {
        mode: "extract",
        seed: config.seed,
        family: config.family,
        delta: format_rational(&config.delta),
        extraction: &extraction,
        checks: &report.checks,
    };
    let code = if !extraction.succeeded() {
        STAGED_FAILURE
    } else if report.passed() {
        OK
    } else {
        VERIFY_FAILED
    };
    Ok(Outcome {
        code,
        body: render(config.format, text, &record, &report.checks)?,
    })
}
