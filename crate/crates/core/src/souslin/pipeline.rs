use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::eval::{eval_pair, forbidden_cylinders, measure_outside};
use super::instance::SouslinInstance;
use crate::chaincond::{conditional_extract, ConditionalExtraction, Delta, IndexedEventPair, StageRecord};
use crate::construction::{continuous_representatives, reserved_coordinate, WeightSequence};
use crate::cube::{format_rational, is_proper_fraction, ClopenSet, Coordinate, DyadicRational, PartialAssignment};
use crate::error::{Error, Result};
use crate::gapcore::{delta_system, modal_class, uniformize, RandomSubsetName, Structure, UniformKey};
use crate::report::{tag, Check, Report, Tally};

/// Clopen approximants of one name pair with the coordinates each index
/// mentions.
#[derive(Clone, Debug)]
pub struct Approximant {
    pub c: RandomSubsetName,
    pub d: RandomSubsetName,
    /// Coordinates of the cylinders of `c(n)` and `d(n)`, per `n`.
    pub windows: Vec<BTreeSet<Coordinate>>,
}

/// The approximants of the names indexed by `alphas`, built with the
/// instance weight and the reserved pool coordinates of each generator.
pub fn approximants(instance: &SouslinInstance, alphas: &BTreeSet<usize>) -> Result<BTreeMap<usize, Approximant>> {
    let weight = instance.weight;
    alphas
        .par_iter()
        .map(|&alpha| {
            let (a, b) = &instance.names()[alpha];
            let reps = continuous_representatives(a, b, &|n| weight.lower(n), &|n| {
                vec![reserved_coordinate(alpha as u64, n)]
            })?;
            if !reps.report.passed() {
                return Err(Error::InvariantViolated {
                    xi: alpha,
                    detail: "clopen approximants failed their bounds".into(),
                });
            }
            let windows = (0..reps.c.horizon())
                .map(|n| reps.c.events()[n].support().union(&reps.d.events()[n].support()).copied().collect())
                .collect();
            Ok((alpha, Approximant { c: reps.c, d: reps.d, windows }))
        })
        .collect()
}

fn names_of(approx: &BTreeMap<usize, Approximant>, len: usize) -> Vec<(RandomSubsetName, RandomSubsetName)> {
    // dense table; unused generators get empty names
    let horizon = approx.values().next().map_or(0, |a| a.c.horizon());
    let empty = RandomSubsetName::new(vec![ClopenSet::empty(); horizon]);
    (0..len)
        .map(|alpha| match approx.get(&alpha) {
            Some(a) => (a.c.clone(), a.d.clone()),
            None => (empty.clone(), empty.clone()),
        })
        .collect()
}

/// The residual event `base ∖ removed` with its exact measure.
#[derive(Clone, Debug)]
pub struct Residual {
    pub base: ClopenSet,
    pub removed: ClopenSet,
    pub measure: DyadicRational,
}

/// A pair of conditions together with the data witnessing their
/// compatibility.
#[derive(Clone, Debug)]
pub struct PairCertificate {
    pub xi: usize,
    pub eta: usize,
    pub t_xi: PartialAssignment,
    pub t_eta: PartialAssignment,
    pub m: usize,
    pub p: usize,
    pub l: usize,
    /// False when no certified `l` existed below the horizon and the
    /// horizon itself was used.
    pub l_certified: bool,
    pub omega: BTreeSet<Coordinate>,
    pub epsilon: BigRational,
    /// `μ([t_ξ]) = μ([t_η])`.
    pub tau: DyadicRational,
    pub residual: Residual,
    /// `(1 − ε) · μ([t_ξ ∪ t_η])`.
    pub bound: BigRational,
    pub checks: Report,
}

impl PairCertificate {
    pub fn merged(&self) -> PartialAssignment {
        self.t_xi.union(&self.t_eta).expect("certified conditions are compatible")
    }

    /// Recomputes the residual from the instance and checks the bound and
    /// the compatibility of the pair, exactly.
    pub fn reverify(&self, instance: &SouslinInstance) -> Result<bool> {
        let (p, q) = (&instance.conditions[self.xi], &instance.conditions[self.eta]);
        let merged = self.t_xi.union(&self.t_eta).ok_or_else(|| Error::Precondition("t_ξ and t_η conflict".into()))?;
        let base = p.x.meet(&q.x).meet_cylinder(&merged);
        let alphas: BTreeSet<usize> = p.gamma.union(&q.gamma).copied().collect();
        let approx = approximants(instance, &alphas)?;
        let names = names_of(&approx, instance.names().len());
        let removed = forbidden_cylinders(&names, &p.gamma, &q.gamma, instance.cut, instance.horizon());
        let measure = measure_outside(&base, &removed);
        let bound = (BigRational::one() - &self.epsilon) * DyadicRational::pow2_neg(merged.len() as u32).to_rational();
        Ok(base == self.residual.base
            && measure == self.residual.measure
            && measure.to_rational() > bound
            && eval_pair(instance, self.xi, self.eta)?.compatible)
    }

    pub fn record(&self) -> CertificateRecord {
        CertificateRecord {
            xi: self.xi,
            eta: self.eta,
            t_xi: self.t_xi.to_string(),
            t_eta: self.t_eta.to_string(),
            m: self.m,
            p: self.p,
            l: self.l,
            l_certified: self.l_certified,
            omega: self.omega.iter().map(|c| c.to_string()).collect(),
            epsilon: format_rational(&self.epsilon),
            tau: self.tau.to_string(),
            residual_measure: self.residual.measure.to_string(),
            bound: format_rational(&self.bound),
            checks: self.checks.clone(),
        }
    }
}

/// Flat form of a certificate with exact values as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub xi: usize,
    pub eta: usize,
    pub t_xi: String,
    pub t_eta: String,
    pub m: usize,
    pub p: usize,
    pub l: usize,
    pub l_certified: bool,
    pub omega: Vec<String>,
    pub epsilon: String,
    pub tau: String,
    pub residual_measure: String,
    pub bound: String,
    pub checks: Report,
}

impl Serialize for PairCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(s)
    }
}

impl fmt::Display for PairCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.record();
        writeln!(f, "pair = {} {}", r.xi, r.eta)?;
        writeln!(f, "t_xi = {}", r.t_xi)?;
        writeln!(f, "t_eta = {}", r.t_eta)?;
        writeln!(f, "m = {}", r.m)?;
        writeln!(f, "p = {}", r.p)?;
        writeln!(f, "l = {}{}", r.l, if r.l_certified { "" } else { " (horizon)" })?;
        writeln!(f, "omega = {}", r.omega.join(" "))?;
        writeln!(f, "epsilon = {}", r.epsilon)?;
        writeln!(f, "tau = {}", r.tau)?;
        writeln!(f, "residual = {} > {}", r.residual_measure, r.bound)?;
        write!(f, "{}", r.checks)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PipelineOutcome {
    Certified { certificate: Box<PairCertificate> },
    Exhausted { stage: &'static str, detail: String },
}

/// Stage-by-stage survivors (condition indices) and the outcome.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineRun {
    pub stages: Vec<StageRecord>,
    pub extraction: Option<ConditionalExtraction>,
    pub outcome: PipelineOutcome,
}

impl PipelineRun {
    pub fn certificate(&self) -> Option<&PairCertificate> {
        match &self.outcome {
            PipelineOutcome::Certified { certificate } => Some(certificate),
            PipelineOutcome::Exhausted { .. } => None,
        }
    }
}

impl fmt::Display for PipelineRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stages {
            writeln!(f, "stage {} : {} survivors", s.stage, s.survivors.len())?;
        }
        match &self.outcome {
            PipelineOutcome::Certified { certificate } => write!(f, "{certificate}"),
            PipelineOutcome::Exhausted { stage, detail } => writeln!(f, "exhausted at {stage}: {detail}"),
        }
    }
}

struct Run {
    stages: Vec<StageRecord>,
}

impl Run {
    fn record(&mut self, stage: &'static str, survivors: &[usize]) {
        self.stages.push(StageRecord {
            stage,
            survivors: survivors.to_vec(),
        });
    }

    fn done(self, outcome: PipelineOutcome, extraction: Option<ConditionalExtraction>) -> PipelineRun {
        PipelineRun {
            stages: self.stages,
            extraction,
            outcome,
        }
    }

    fn exhausted(self, stage: &'static str, detail: impl Into<String>) -> PipelineRun {
        self.done(
            PipelineOutcome::Exhausted {
                stage,
                detail: detail.into(),
            },
            None,
        )
    }
}

/// Keeps the survivors sharing the modal value of `key`.
fn refine<K: Ord>(survivors: &[usize], key: impl Fn(usize) -> K) -> Vec<usize> {
    let keys: Vec<K> = survivors.iter().map(|&i| key(i)).collect();
    modal_class(&keys).into_iter().map(|i| survivors[i]).collect()
}

fn rational(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Smallest `p` whose certified tail lies below `target`; zero when the
/// target is unbounded (`m = 0`).
fn tail_start(weight: WeightSequence, target: Option<&BigRational>, horizon: usize) -> Option<usize> {
    match target {
        None => Some(0),
        Some(t) => weight.certified_tail_start(t, horizon),
    }
}

/// Builds `t ⊇ s` on `dom(s) ∪ extra`, fixing each new coordinate to the
/// bit that keeps `μ(x | [t])` larger (ties to 0). Returns `t` and
/// `μ(x | [t])`.
fn fit_condition(x: &ClopenSet, s: &PartialAssignment, extra: &BTreeSet<Coordinate>) -> (PartialAssignment, DyadicRational) {
    let mut t = s.clone();
    let mut rest = x.cofactor_by(s);
    let mut support = rest.support();
    for &c in extra {
        if t.contains(c) {
            continue;
        }
        let bit = if support.contains(&c) {
            let (zero, one) = (rest.cofactor(c, false), rest.cofactor(c, true));
            let bit = one.measure() > zero.measure();
            rest = if bit { one } else { zero };
            support = rest.support();
            bit
        } else {
            false
        };
        t.set(c, bit);
    }
    (t, rest.measure())
}

/// Runs the refinement argument on `instance` with tolerance `ε`.
///
/// The names are replaced by their clopen approximants; the family is cut
/// down stage by stage (each stage keeps a subset of its input) and the
/// chain-condition extractor produces candidate pairs, each checked
/// exactly before a certificate is returned.
pub fn find_pair_pipeline(instance: &SouslinInstance, epsilon: &BigRational) -> Result<PipelineRun> {
    if !is_proper_fraction(epsilon) {
        return Err(Error::Config(format!("ε = {} is not in (0, 1)", format_rational(epsilon))));
    }
    instance.validate()?;
    let horizon = instance.horizon();
    let cut = instance.cut.min(horizon);
    let conds = &instance.conditions;
    let mut run = Run { stages: Vec::new() };
    let mut live: Vec<usize> = (0..conds.len()).collect();
    run.record("input", &live);

    let alphas: BTreeSet<usize> = conds.iter().flat_map(|c| c.gamma.iter().copied()).collect();
    let approx = approximants(instance, &alphas)?;

    // coordinates of different indices must not be shared
    let mut owner: HashMap<Coordinate, usize> = HashMap::new();
    for a in approx.values() {
        for (n, w) in a.windows.iter().enumerate() {
            for &c in w {
                if let Some(&other) = owner.get(&c).filter(|&&o| o != n) {
                    return Ok(run.exhausted(tag::WINDOW_DISJOINT, format!("coordinate {c} used at n = {other} and n = {n}")));
                }
                owner.insert(c, n);
            }
        }
    }
    run.record(tag::WINDOW_DISJOINT, &live);

    live.retain(|&xi| {
        let c = &conds[xi];
        c.gamma.iter().all(|alpha| {
            c.gamma.iter().all(|beta| {
                (cut..horizon).all(|n| {
                    approx[alpha].c.events()[n]
                        .meet(&approx[beta].d.events()[n])
                        .is_disjoint_from(&c.x)
                })
            })
        })
    });
    run.record("eq:39", &live);

    live = refine(&live, |xi| conds[xi].gamma.len());
    run.record("uniform m", &live);
    if live.len() < 2 {
        return Ok(run.exhausted("uniform m", "fewer than two conditions share |Γ|"));
    }
    let m = conds[live[0]].gamma.len();

    // s_ξ: a largest cylinder inside x_ξ, so μ(x_ξ | [s_ξ]) = 1
    let s: HashMap<usize, PartialAssignment> = live
        .iter()
        .map(|&xi| {
            let best = conds[xi].x.cylinders().iter().min_by_key(|c| c.len()).cloned();
            (xi, best.expect("conditions are nonempty"))
        })
        .collect();
    let half = rational(1, 2);
    let fit = Delta::from_square(BigRational::one() - epsilon * &half)?;
    run.record("eq:59", &live);

    let target = (m > 0).then(|| epsilon / BigRational::from_integer(BigInt::from(24 * m * m)));
    let Some(p_tail) = tail_start(instance.weight, target.as_ref(), horizon) else {
        return Ok(run.exhausted(tag::TAIL, "horizon too small"));
    };
    run.record(tag::TAIL, &live);

    let p_of = |xi: usize| -> usize {
        let dom = s[&xi].domain_set();
        let last = conds[xi]
            .gamma
            .iter()
            .flat_map(|alpha| {
                approx[alpha]
                    .windows
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| !w.is_disjoint(&dom))
                    .map(|(n, _)| n + 1)
            })
            .max()
            .unwrap_or(0);
        last.max(p_tail)
    };
    live = refine(&live, p_of);
    run.record("eq:20", &live);
    let p = p_of(live[0]);

    // t_ξ on dom(s_ξ) and the windows below p
    let fitted: BTreeMap<usize, (PartialAssignment, DyadicRational)> = live
        .par_iter()
        .map(|&xi| {
            let extra: BTreeSet<Coordinate> = conds[xi]
                .gamma
                .iter()
                .flat_map(|alpha| approx[alpha].windows[..p].iter().flatten().copied())
                .collect();
            (xi, fit_condition(&conds[xi].x, &s[&xi], &extra))
        })
        .collect();
    live.retain(|xi| fit.is_exceeded_by(&fitted[xi].1.to_rational()));
    run.record(tag::CONDITION_FIT, &live);
    live = refine(&live, |xi| fitted[&xi].0.len());
    run.record("tau", &live);
    if live.len() < 2 {
        return Ok(run.exhausted("tau", "fewer than two conditions share |t|"));
    }
    let t: BTreeMap<usize, PartialAssignment> = live.iter().map(|&xi| (xi, fitted[&xi].0.clone())).collect();
    let tau = DyadicRational::pow2_neg(t[&live[0]].len() as u32);

    let late_target = target.as_ref().map(|t| t * tau.to_rational() * tau.to_rational());
    let (l, l_certified) = match tail_start(instance.weight, late_target.as_ref(), horizon) {
        Some(l) => (l.max(p), true),
        None => (horizon, false),
    };
    run.record(tag::LATE_TAIL, &live);

    let omega_of = |xi: usize| -> BTreeSet<Coordinate> {
        let mut o = s[&xi].domain_set();
        for alpha in &conds[xi].gamma {
            o.extend(approx[alpha].windows[..l].iter().flatten().copied());
        }
        o
    };
    let family: Vec<BTreeSet<Coordinate>> = live.iter().map(|&xi| omega_of(xi)).collect();
    let sunflower = delta_system(&family, 2).found;
    let omega = sunflower.root.clone();
    live = sunflower.petals.iter().map(|&i| live[i]).collect();
    run.record("eq:6", &live);
    if live.len() < 2 {
        return Ok(run.exhausted("eq:6", "no Δ-system with two petals"));
    }

    let structures: Vec<Structure> = live
        .iter()
        .map(|&xi| Structure {
            blocks: conds[xi]
                .gamma
                .iter()
                .map(|alpha| {
                    let a = &approx[alpha];
                    (0..l)
                        .flat_map(|n| [a.c.events()[n].cylinders().to_vec(), a.d.events()[n].cylinders().to_vec()])
                        .collect()
                })
                .collect(),
            tail: t[&xi].clone(),
        })
        .collect();
    let iso = uniformize(&structures, &[UniformKey::IsoType(omega.clone())]);
    live = iso.into_iter().map(|i| live[i]).collect();
    run.record("eq:22", &live);
    if live.len() < 2 {
        return Ok(run.exhausted("eq:22", "fewer than two conditions share an isomorphism type"));
    }

    let pairs: Vec<IndexedEventPair> = live
        .iter()
        .map(|&xi| IndexedEventPair::new(conds[xi].x.clone(), t[&xi].clone(), xi))
        .collect();
    let extraction = conditional_extract(&pairs, &fit, 2)?;
    let members: Vec<usize> = extraction.members.iter().map(|&i| live[i]).collect();
    run.record(tag::MERGED_CONDITION, &members);
    if !extraction.succeeded() {
        let detail = format!("extractor exhausted at {}", extraction.exhausted_at.unwrap_or("?"));
        let mut out = run.exhausted(tag::MERGED_CONDITION, detail);
        out.extraction = Some(extraction);
        return Ok(out);
    }

    let names = names_of(&approx, instance.names().len());
    let ctx = PairContext {
        instance,
        approx: &approx,
        names: &names,
        epsilon,
        fit: &fit,
        m,
        p,
        l,
        cut,
    };
    let mut first_failure = None;
    for (i, &xi) in members.iter().enumerate() {
        for &eta in &members[i + 1..] {
            match ctx.certify(xi, eta, &t[&xi], &t[&eta])? {
                Ok((checks, residual, bound)) => {
                    let certificate = PairCertificate {
                        xi,
                        eta,
                        t_xi: t[&xi].clone(),
                        t_eta: t[&eta].clone(),
                        m,
                        p,
                        l,
                        l_certified,
                        omega,
                        epsilon: epsilon.clone(),
                        tau,
                        residual,
                        bound,
                        checks,
                    };
                    return Ok(run.done(
                        PipelineOutcome::Certified {
                            certificate: Box::new(certificate),
                        },
                        Some(extraction),
                    ));
                }
                Err(failed) => {
                    first_failure.get_or_insert(failed);
                }
            }
        }
    }
    let detail = first_failure.map_or_else(|| "no candidate pair".to_string(), |c| c.to_string());
    let mut out = run.exhausted(tag::RESIDUAL, detail);
    out.extraction = Some(extraction);
    Ok(out)
}

struct PairContext<'a> {
    instance: &'a SouslinInstance,
    approx: &'a BTreeMap<usize, Approximant>,
    names: &'a [(RandomSubsetName, RandomSubsetName)],
    epsilon: &'a BigRational,
    fit: &'a Delta,
    m: usize,
    p: usize,
    l: usize,
    cut: usize,
}

impl PairContext<'_> {
    /// All exact checks for one candidate pair; the first failing check on
    /// rejection.
    fn certify(
        &self,
        xi: usize,
        eta: usize,
        t_xi: &PartialAssignment,
        t_eta: &PartialAssignment,
    ) -> Result<std::result::Result<(Report, Residual, BigRational), Check>> {
        let conds = &self.instance.conditions;
        let (gx, ge) = (&conds[xi].gamma, &conds[eta].gamma);
        let subject = format!("pair ({xi}, {eta})");
        let mut report = Report::new();
        let Some(merged) = t_xi.union(t_eta) else {
            return Ok(Err(Check::new(tag::MERGED_CONDITION, subject, "t_ξ ∪ t_η", "is", "inconsistent", false)));
        };
        let both = conds[xi].x.meet(&conds[eta].x).cofactor_by(&merged).measure();
        report.push(Check::new(
            tag::MERGED_CONDITION,
            subject.clone(),
            both.to_string(),
            ">",
            format!("δ² = {}", format_rational(self.fit.square())),
            self.fit.is_exceeded_by(&both.to_rational()),
        ));

        let mut decided = Tally::new(tag::DECIDED_RANGE, "=");
        for &alpha in gx {
            for &beta in ge {
                let (a, b) = (&self.approx[&alpha], &self.approx[&beta]);
                for n in self.cut..self.p {
                    let ev = a.c.events()[n]
                        .meet(&b.d.events()[n])
                        .join(&b.c.events()[n].meet(&a.d.events()[n]));
                    let rest = ev.cofactor_by(&merged);
                    decided.record(rest.is_empty(), || {
                        (format!("({alpha}, {beta}, n = {n})"), rest.measure().to_string(), "0".into())
                    });
                }
            }
        }
        decided.finish(&mut report, &subject);

        let dom = merged.domain_set();
        let mut middle = Tally::new(tag::MIDDLE_RANGE, "∩ dom = ∅");
        for alpha in gx.union(ge) {
            for n in self.p..self.l {
                let w = &self.approx[alpha].windows[n];
                middle.record(w.is_disjoint(&dom), || {
                    (format!("({alpha}, n = {n})"), format!("{} shared", w.intersection(&dom).count()), "0".into())
                });
            }
        }
        middle.finish(&mut report, &subject);

        let mut cross = Tally::new(tag::CROSS_BOUND, "<");
        let three = BigRational::from_integer(3.into());
        for &alpha in gx {
            for &beta in ge {
                for (u, v) in [(alpha, beta), (beta, alpha)] {
                    let (a, b) = (&self.approx[&u], &self.approx[&v]);
                    for n in 0..self.instance.horizon() {
                        let mu = a.c.events()[n].meet(&b.d.events()[n]).measure();
                        let cap = &three * self.instance.weight.lower(n);
                        cross.record(mu.to_rational() < cap, || {
                            (format!("({u}, {v}, n = {n})"), mu.to_string(), format_rational(&cap))
                        });
                    }
                }
            }
        }
        cross.finish(&mut report, &subject);

        // late bad events relative to [t_ξ ∪ t_η]
        let horizon = self.instance.horizon();
        let share = if self.m == 0 {
            BigRational::one()
        } else {
            self.epsilon / BigRational::from_integer(BigInt::from(4 * self.m * self.m))
        };
        for (label, forward) in [(tag::FORWARD_BAD, true), (tag::BACKWARD_BAD, false)] {
            let mut tally = Tally::new(label, "<");
            for &alpha in gx {
                for &beta in ge {
                    let (u, v) = if forward { (alpha, beta) } else { (beta, alpha) };
                    let late = ClopenSet::from_cylinders(
                        (self.p..horizon)
                            .flat_map(|n| {
                                self.approx[&u].c.events()[n]
                                    .meet(&self.approx[&v].d.events()[n])
                                    .cylinders()
                                    .to_vec()
                            })
                            .filter(|c| c.compatible(&merged))
                            .map(|c| c.without_domain_of(&merged)),
                    );
                    let mu = late.measure();
                    tally.record(mu.to_rational() < share, || {
                        (format!("({u}, {v})"), mu.to_string(), format_rational(&share))
                    });
                }
            }
            tally.finish(&mut report, &subject);
        }

        let (residual, bound) = self.residual(xi, eta, &merged);
        report.push(Check::new(
            tag::RESIDUAL,
            subject.clone(),
            residual.measure.to_string(),
            ">",
            format_rational(&bound),
            residual.measure.to_rational() > bound,
        ));
        let eval = eval_pair(self.instance, xi, eta)?;
        report.push(Check::new(
            tag::PAIR,
            subject,
            eval.residual.to_string(),
            ">",
            "0",
            eval.compatible,
        ));
        if let Some(c) = report.failures().next().cloned() {
            return Ok(Err(c));
        }
        Ok(Ok((report, residual, bound)))
    }

    fn residual(&self, xi: usize, eta: usize, merged: &PartialAssignment) -> (Residual, BigRational) {
        let conds = &self.instance.conditions;
        let base = conds[xi].x.meet(&conds[eta].x).meet_cylinder(merged);
        let removed = forbidden_cylinders(
            self.names,
            &conds[xi].gamma,
            &conds[eta].gamma,
            self.cut,
            self.instance.horizon(),
        );
        let measure = measure_outside(&base, &removed);
        let bound = (BigRational::one() - self.epsilon) * DyadicRational::pow2_neg(merged.len() as u32).to_rational();
        let removed = ClopenSet::from_cylinders(removed.into_iter().filter(|c| c.compatible(merged)));
        (Residual { base, removed, measure }, bound)
    }
}
