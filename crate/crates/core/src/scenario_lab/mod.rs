//! Scene families and the theorem cross-validation harness.
//!
//! A [`ScenarioReport`] stores the classification and the verdicts of one
//! scene; the agreement booleans are derived from them on demand.

mod families;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub use families::{generate, Family, FamilySpec, ALL_FAMILIES};

use crate::classification::{classify, Classification};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::l1_convexity::{find_ff_mod_pair, find_ff_partner, is_l1_convex, is_strictly_l1_convex};
use crate::numerics::Point;
use crate::set_model::{scene_to_json, SetModel};
use crate::sun_checker::{check_strict_sun, check_sun, SweepStats};
use crate::verdict::Verdict;

/// How three-valued verdicts are compared with booleans.
pub const CONVENTION: &str = "sampled_pass counts as pass; any refuted counts as fail";

/// Which verdicts to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Needs {
    pub l1: bool,
    pub strict_l1: bool,
    pub sun: bool,
    pub strict_sun: bool,
}

impl Needs {
    pub const ALL: Needs = Needs {
        l1: true,
        strict_l1: true,
        sun: true,
        strict_sun: true,
    };
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l1_convex: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strictly_l1_convex: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sun: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_sun: Option<Verdict>,
}

/// Outcome of a witness search whose existence a lemma predicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    /// The lemma's hypotheses hold (as far as the verdicts tell).
    pub applies: bool,
    /// The points found, if any.
    pub found: Option<Vec<Point>>,
}

impl LemmaCheck {
    pub fn consistent(&self) -> bool {
        !self.applies || self.found.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioReport {
    pub scene: SetModel,
    pub family: Option<FamilySpec>,
    pub seed: u64,
    pub config: Config,
    pub classification: Classification,
    pub verdicts: Verdicts,
    pub sweep_stats: Option<SweepStats>,
    /// Dimension 3 only: l1-convex and not a cross must give a pair
    /// differing in every coordinate outside eqc(M).
    pub lemma3: Option<LemmaCheck>,
    /// Dimension 3 scenes containing 0 and the unit vectors.
    pub lemma1: Option<LemmaCheck>,
}

/// Agreement records, derived from the stored verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Agreements {
    pub theorem1: Option<bool>,
    #[serde(rename = "theoremA")]
    pub theorem_a: Option<bool>,
    pub berens_hetzelt: Option<bool>,
    pub prop1: Option<bool>,
    pub convention: &'static str,
}

impl Agreements {
    pub fn all_agree(&self) -> bool {
        [self.theorem1, self.theorem_a, self.berens_hetzelt, self.prop1]
            .iter()
            .all(|a| a.unwrap_or(true))
    }
}

impl ScenarioReport {
    pub fn agreements(&self) -> Agreements {
        let v = &self.verdicts;
        let c = &self.classification;
        let passes = |x: &Option<Verdict>| x.as_ref().map(Verdict::passes);
        let strict_sun = passes(&v.strict_sun);
        let strict_l1 = passes(&v.strictly_l1_convex);
        let theorem1 = match (self.scene.dim(), strict_sun, strict_l1) {
            (3, Some(lhs), Some(rhs)) => Some(lhs == (rhs && !c.is_cross)),
            _ => None,
        };
        let theorem_a = match (strict_sun, strict_l1) {
            (Some(lhs), Some(rhs)) => Some(lhs == (rhs && !c.is_cocross)),
            _ => None,
        };
        let berens_hetzelt = match (passes(&v.sun), passes(&v.l1_convex)) {
            (Some(lhs), Some(rhs)) => Some(lhs == rhs),
            _ => None,
        };
        let prop1 = match (self.scene.dim() == 3 && c.is_cocross, strict_l1) {
            (true, Some(lhs)) => Some(lhs == (c.is_cross && c.component_count == 1)),
            _ => None,
        };
        Agreements {
            theorem1,
            theorem_a,
            berens_hetzelt,
            prop1,
            convention: CONVENTION,
        }
    }

    /// Agreements hold and the lemma searches succeeded.
    pub fn is_consistent(&self) -> bool {
        self.agreements().all_agree()
            && self.lemma1.as_ref().is_none_or(LemmaCheck::consistent)
            && self.lemma3.as_ref().is_none_or(LemmaCheck::consistent)
            && self
                .sweep_stats
                .as_ref()
                .is_none_or(|s| s.ob_holds_but_not_solar == 0 && s.lemma2_failures == 0)
    }

    /// Evidence of every refuted verdict.
    pub fn witnesses(&self) -> Vec<Value> {
        let v = &self.verdicts;
        [
            ("l1_convex", &v.l1_convex),
            ("strictly_l1_convex", &v.strictly_l1_convex),
            ("sun", &v.sun),
            ("strict_sun", &v.strict_sun),
        ]
        .into_iter()
        .filter_map(|(name, verdict)| match verdict {
            Some(Verdict::Refuted { evidence }) => Some(json!({ "verdict": name, "evidence": evidence })),
            _ => None,
        })
        .collect()
    }

    pub fn to_json_value(&self) -> Value {
        let scene: Value = serde_json::from_str(&scene_to_json(&self.scene)).expect("scene JSON is valid");
        json!({
            "scene": scene,
            "family": self.family,
            "seed": self.seed,
            "classification": self.classification,
            "verdicts": self.verdicts,
            "agreements": self.agreements(),
            "witnesses": self.witnesses(),
            "sweep_stats": self.sweep_stats,
            "lemma1": self.lemma1,
            "lemma3": self.lemma3,
            "config": self.config,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        render(&self.to_json_value())
    }
}

pub(crate) fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Computes the requested verdicts and the applicable lemma checks.
pub fn evaluate(m: &SetModel, config: &Config, needs: Needs) -> Result<ScenarioReport> {
    config.validate()?;
    let budget = config.budget();
    let sweep = config.sweep(m.dim());
    let schedule = &config.lambda_schedule;
    let classification = classify(m);
    let mut verdicts = Verdicts::default();
    let mut sweep_stats = None;
    if needs.l1 {
        verdicts.l1_convex = Some(is_l1_convex(m, &budget));
    }
    if needs.strict_l1 {
        verdicts.strictly_l1_convex = Some(is_strictly_l1_convex(m, &budget));
    }
    if needs.sun {
        verdicts.sun = Some(check_sun(m, &sweep, schedule));
    }
    if needs.strict_sun {
        let report = check_strict_sun(m, &sweep, schedule);
        verdicts.strict_sun = Some(report.verdict);
        sweep_stats = Some(report.stats);
    }
    let lemma3 = match (&verdicts.l1_convex, m.dim()) {
        (Some(l1), 3) => {
            let applies = l1.passes() && !classification.is_cross;
            let found = applies
                .then(|| find_ff_mod_pair(m, &budget))
                .flatten()
                .map(|(a, b)| vec![a, b]);
            Some(LemmaCheck { applies, found })
        }
        _ => None,
    };
    let lemma1 = match (&verdicts.strictly_l1_convex, m.dim()) {
        (Some(strict), 3) if contains_unit_frame(m) => {
            let applies = !classification.is_cross && strict.passes();
            let origin = Point::origin(3)?;
            let found = applies
                .then(|| find_ff_partner(m, &origin, &budget))
                .flatten()
                .map(|w| vec![w]);
            Some(LemmaCheck { applies, found })
        }
        _ => None,
    };
    Ok(ScenarioReport {
        scene: m.clone(),
        family: None,
        seed: config.seed,
        config: config.clone(),
        classification,
        verdicts,
        sweep_stats,
        lemma3,
        lemma1,
    })
}

fn contains_unit_frame(m: &SetModel) -> bool {
    let dim = m.dim();
    Point::origin(dim).is_ok_and(|o| m.has(&o)) && (0..dim).all(|i| Point::unit(dim, i).is_ok_and(|e| m.has(&e)))
}

fn require_dim3(m: &SetModel) -> Result<()> {
    if m.dim() != 3 {
        return Err(Error::Precondition(format!("requires dimension 3, got {}", m.dim())));
    }
    Ok(())
}

/// Strict sun versus (strictly l1-convex and not a cross), in dimension 3.
pub fn validate_theorem1(m: &SetModel, config: &Config) -> Result<ScenarioReport> {
    require_dim3(m)?;
    let needs = Needs {
        l1: false,
        strict_l1: true,
        sun: false,
        strict_sun: true,
    };
    evaluate(m, config, needs)
}

/// Strict sun versus (strictly l1-convex and not a cocross).
pub fn validate_theorem_a(m: &SetModel, config: &Config) -> Result<ScenarioReport> {
    let needs = Needs {
        l1: false,
        strict_l1: true,
        sun: false,
        strict_sun: true,
    };
    evaluate(m, config, needs)
}

/// Sun versus l1-convex.
pub fn validate_bh(m: &SetModel, config: &Config) -> Result<ScenarioReport> {
    let needs = Needs {
        l1: true,
        strict_l1: false,
        sun: true,
        strict_sun: false,
    };
    evaluate(m, config, needs)
}

/// For a cocross in dimension 3: strictly l1-convex versus connected cross.
pub fn validate_prop1(m: &SetModel, config: &Config) -> Result<ScenarioReport> {
    require_dim3(m)?;
    if !classify(m).is_cocross {
        return Err(Error::Precondition("the scene is not a cocross".into()));
    }
    let needs = Needs {
        l1: false,
        strict_l1: true,
        sun: false,
        strict_sun: false,
    };
    evaluate(m, config, needs)
}

/// The scenes of the acceptance sweep, in order.
pub fn suite_specs(config: &Config) -> Vec<(FamilySpec, u64)> {
    let e = config.extent.clone();
    let mut specs = Vec::new();
    for family in [Family::MainCross, Family::MainCocross, Family::Box, Family::TwoPoints, Family::Simplex] {
        let extent = match family {
            Family::MainCocross | Family::Simplex => crate::numerics::q(2),
            _ => e.clone(),
        };
        specs.push((FamilySpec::new(family, 3, extent), config.seed));
    }
    let seeded = [
        Family::CrossSubset,
        Family::DisconnectedCross,
        Family::CocrossCj,
        Family::RandomBox,
        Family::FramedBox,
        Family::MonotoneTube,
        Family::RandomL1Convex,
        Family::RandomTwoPoints,
    ];
    for k in 0..SEEDS_PER_FAMILY {
        for family in seeded {
            specs.push((FamilySpec::new(family, 3, e.clone()), config.seed.wrapping_add(k)));
        }
    }
    specs.push((FamilySpec::new(Family::RemarkR4, 4, crate::numerics::q(2)), config.seed));
    specs.push((FamilySpec::new(Family::MainCross, 2, e.clone()), config.seed));
    specs.push((FamilySpec::new(Family::CocrossCj, 4, e.clone()), config.seed));
    specs
}

/// Seeds per randomized family in [`suite_specs`].
pub const SEEDS_PER_FAMILY: u64 = 7;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub seed: u64,
    pub config: Config,
    pub reports: Vec<ScenarioReport>,
}

/// Tallies of one agreement kind over the suite.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub applicable: usize,
    pub agree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub scenes: usize,
    pub theorem1: Tally,
    #[serde(rename = "theoremA")]
    pub theorem_a: Tally,
    pub berens_hetzelt: Tally,
    pub prop1: Tally,
    pub lemma1: Tally,
    pub lemma3: Tally,
    pub lemma2_checks: usize,
    pub lemma2_failures: usize,
    pub ob_holds_but_not_solar: usize,
    /// Names of the scenes with any inconsistency.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn summary(&self) -> SuiteSummary {
        let mut s = SuiteSummary {
            scenes: self.reports.len(),
            theorem1: Tally::default(),
            theorem_a: Tally::default(),
            berens_hetzelt: Tally::default(),
            prop1: Tally::default(),
            lemma1: Tally::default(),
            lemma3: Tally::default(),
            lemma2_checks: 0,
            lemma2_failures: 0,
            ob_holds_but_not_solar: 0,
            failures: Vec::new(),
        };
        let count = |t: &mut Tally, a: Option<bool>| {
            if let Some(ok) = a {
                t.applicable += 1;
                t.agree += usize::from(ok);
            }
        };
        for r in &self.reports {
            let a = r.agreements();
            count(&mut s.theorem1, a.theorem1);
            count(&mut s.theorem_a, a.theorem_a);
            count(&mut s.berens_hetzelt, a.berens_hetzelt);
            count(&mut s.prop1, a.prop1);
            count(&mut s.lemma1, r.lemma1.as_ref().filter(|l| l.applies).map(LemmaCheck::consistent));
            count(&mut s.lemma3, r.lemma3.as_ref().filter(|l| l.applies).map(LemmaCheck::consistent));
            if let Some(st) = &r.sweep_stats {
                s.lemma2_checks += st.lemma2_checks;
                s.lemma2_failures += st.lemma2_failures;
                s.ob_holds_but_not_solar += st.ob_holds_but_not_solar;
            }
            if !r.is_consistent() {
                s.failures.push(r.scene.name().to_string());
            }
        }
        s
    }

    pub fn passed(&self) -> bool {
        self.summary().failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let scenes: Vec<Value> = self.reports.iter().map(ScenarioReport::to_json_value).collect();
        render(&json!({
            "seed": self.seed,
            "config": self.config,
            "summary": self.summary(),
            "scenes": scenes,
        }))
    }
}

/// Generates and evaluates every scene of [`suite_specs`].
pub fn suite(config: &Config) -> Result<SuiteReport> {
    config.validate()?;
    let specs = suite_specs(config);
    let reports = specs
        .par_iter()
        .map(|(spec, seed)| {
            let m = generate(spec, *seed)?;
            let mut r = evaluate(&m, &config.clone().with_seed(*seed), Needs::ALL)?;
            r.family = Some(spec.clone());
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        seed: config.seed,
        config: config.clone(),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    fn quick() -> Config {
        Config {
            pair_budget: 40,
            sweep_budget: 8,
            sweep_steps: Some(4),
            ..Config::default()
        }
    }

    fn scene(family: Family, dim: usize, extent: i64) -> SetModel {
        generate(&FamilySpec::new(family, dim, q(extent)), 0).unwrap()
    }

    #[test]
    fn theorem1_on_cross_and_box() {
        let r = validate_theorem1(&scene(Family::MainCross, 3, 4), &quick()).unwrap();
        assert!(r.verdicts.strict_sun.as_ref().unwrap().is_refuted());
        assert!(r.classification.is_cross);
        assert_eq!(r.agreements().theorem1, Some(true));
        assert!(!r.witnesses().is_empty());
        let r = validate_theorem1(&scene(Family::Box, 3, 4), &quick()).unwrap();
        assert!(r.verdicts.strict_sun.as_ref().unwrap().passes());
        assert!(r.verdicts.strictly_l1_convex.as_ref().unwrap().passes());
        assert_eq!(r.agreements().theorem1, Some(true));
        let r = validate_theorem1(&scene(Family::MainCocross, 3, 2), &quick()).unwrap();
        assert!(r.verdicts.strictly_l1_convex.as_ref().unwrap().is_refuted());
        assert_eq!(r.agreements().theorem1, Some(true));
        assert!(validate_theorem1(&scene(Family::RemarkR4, 4, 2), &quick()).is_err());
    }

    #[test]
    fn prop1_examples() {
        let r = validate_prop1(&scene(Family::MainCross, 3, 4), &quick()).unwrap();
        assert!(r.verdicts.strictly_l1_convex.as_ref().unwrap().passes());
        assert_eq!(r.agreements().prop1, Some(true));
        let d = generate(&FamilySpec::new(Family::DisconnectedCross, 3, q(4)), 3).unwrap();
        let r = validate_prop1(&d, &quick()).unwrap();
        assert!(r.verdicts.strictly_l1_convex.as_ref().unwrap().is_refuted());
        assert_eq!(r.agreements().prop1, Some(true));
        assert!(validate_prop1(&scene(Family::Box, 3, 4), &quick()).is_err());
    }

    #[test]
    fn bh_on_cross() {
        let r = validate_bh(&scene(Family::MainCross, 3, 4), &quick()).unwrap();
        assert!(r.verdicts.sun.as_ref().unwrap().passes());
        assert!(r.verdicts.l1_convex.as_ref().unwrap().passes());
        assert_eq!(r.agreements().berens_hetzelt, Some(true));
        assert_eq!(r.agreements().theorem1, None);
    }

    #[test]
    fn unit_box_triggers_lemma_checks() {
        let r = evaluate(&scene(Family::Box, 3, 4), &quick(), Needs::ALL).unwrap();
        let l1 = r.lemma1.clone().unwrap();
        assert!(l1.applies && l1.found.is_some());
        assert!(r.lemma3.clone().unwrap().consistent());
        assert!(r.is_consistent());
    }

    #[test]
    fn report_json_is_deterministic() {
        let m = scene(Family::MainCross, 3, 4);
        let a = validate_theorem1(&m, &quick()).unwrap().to_json();
        let b = validate_theorem1(&m, &quick()).unwrap().to_json();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        for key in ["scene", "seed", "verdicts", "agreements", "witnesses", "config"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["agreements"]["convention"], CONVENTION);
    }

    #[test]
    fn suite_has_the_required_scene_counts() {
        let specs = suite_specs(&Config::default());
        let dim3 = specs.iter().filter(|(s, _)| s.dim == 3).count();
        assert!(dim3 >= 50);
        let cocross_families = [
            Family::MainCross,
            Family::MainCocross,
            Family::CrossSubset,
            Family::DisconnectedCross,
            Family::CocrossCj,
        ];
        let cocross = specs
            .iter()
            .filter(|(s, _)| s.dim == 3 && cocross_families.contains(&s.family))
            .count();
        assert!(cocross >= 20);
        assert!(specs.iter().any(|(s, _)| s.family == Family::RemarkR4));
    }
}
