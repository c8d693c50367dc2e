use std::collections::HashMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use randgap_core::cube::{ClopenSet, Coordinate};
use randgap_core::souslin::{
    eval_pair, find_pair_bruteforce, find_pair_pipeline, generate, GeneratorConfig, NamesSource, SouslinInstance,
};

fn quarter() -> BigRational {
    BigRational::new(1.into(), 4.into())
}

/// Membership of a point in the forbidden event, straight from the names.
fn forbidden_at(inst: &SouslinInstance, xi: usize, eta: usize, point: &mut impl FnMut(Coordinate) -> bool) -> bool {
    let (p, q) = (&inst.conditions[xi], &inst.conditions[eta]);
    let names = inst.names();
    let mut hit = |x: &ClopenSet, y: &ClopenSet| x.contains_point(&mut *point) && y.contains_point(&mut *point);
    for &alpha in &p.gamma {
        for &beta in &q.gamma {
            for n in inst.cut..inst.horizon() {
                if hit(&names[alpha].0.events()[n], &names[beta].1.events()[n])
                    || hit(&names[beta].0.events()[n], &names[alpha].1.events()[n])
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Residual measure relative to `μ(x_ξ ∧ x_η)` by sampling points of the
/// single cylinder `x_ξ ∧ x_η`.
#[test]
fn residual_matches_sampling() {
    let mut config = GeneratorConfig::base(8, 24, 12);
    config.noise = 0;
    config.cut = 0;
    let inst = generate(&config, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut tested = 0;
    for xi in 0..inst.len() {
        for eta in xi + 1..inst.len() {
            let e = eval_pair(&inst, xi, eta).unwrap();
            let base = inst.conditions[xi].x.meet(&inst.conditions[eta].x);
            if !e.meets || e.residual == base.measure() {
                continue;
            }
            let fixed = base.cylinders()[0].clone();
            let exact = e.residual.to_f64() / base.measure().to_f64();
            let samples = 20_000;
            let mut good = 0;
            for _ in 0..samples {
                let mut bits: HashMap<Coordinate, bool> = HashMap::new();
                let mut point = |c: Coordinate| {
                    fixed.get(c).unwrap_or_else(|| *bits.entry(c).or_insert_with(|| rng.gen()))
                };
                if !forbidden_at(&inst, xi, eta, &mut point) {
                    good += 1;
                }
            }
            let freq = good as f64 / samples as f64;
            let sigma = (exact * (1.0 - exact) / samples as f64).sqrt();
            assert!((freq - exact).abs() <= 3.0 * sigma, "({xi}, {eta}): {freq} vs {exact}");
            tested += 1;
            if tested == 3 {
                return;
            }
        }
    }
    assert!(tested > 0, "no pair with a nontrivial forbidden event");
}

#[test]
fn evaluation_is_symmetric() {
    let inst = generate(&GeneratorConfig::base(16, 32, 10), 2).unwrap();
    for xi in 0..inst.len() {
        for eta in xi + 1..inst.len() {
            assert_eq!(eval_pair(&inst, xi, eta).unwrap(), eval_pair(&inst, eta, xi).unwrap());
        }
    }
}

#[test]
fn pipeline_pairs_are_confirmed_by_the_oracle() {
    for seed in 0..4 {
        let inst = generate(&GeneratorConfig::base(64, 128, 40), seed).unwrap();
        let run = find_pair_pipeline(&inst, &quarter()).unwrap();
        for w in run.stages.windows(2) {
            assert!(w[1].survivors.iter().all(|i| w[0].survivors.contains(i)));
        }
        let cert = run.certificate().unwrap_or_else(|| panic!("seed {seed}: {run}"));
        assert!(eval_pair(&inst, cert.xi, cert.eta).unwrap().compatible);
        assert!(cert.reverify(&inst).unwrap());
        assert!(find_pair_bruteforce(&inst).unwrap().is_some());
    }
}

#[test]
fn extended_names_instance() {
    let mut config = GeneratorConfig::base(16, 128, 12);
    config.source = NamesSource::Extended { generators: 16, horizon: 128 };
    let inst = generate(&config, 4).unwrap();
    let run = find_pair_pipeline(&inst, &quarter()).unwrap();
    if let Some(cert) = run.certificate() {
        assert!(cert.reverify(&inst).unwrap());
    }
    assert!(find_pair_bruteforce(&inst).unwrap().is_some());
}

#[test]
fn instance_text_survives_round_trip() {
    let inst = generate(&GeneratorConfig::base(8, 16, 5), 9).unwrap();
    let back: SouslinInstance = inst.to_string().parse().unwrap();
    assert_eq!(back.conditions, inst.conditions);
    assert_eq!(back.to_string(), inst.to_string());
}
