//! Verification suites. Each suite evaluates one equivalence per instance
//! and records both sides; instances run in parallel and results come back
//! in catalogue order.

use std::sync::Arc;

use proflat_core::arith::prime_divisors;
use proflat_core::classify::*;
use proflat_core::construct::elementary_abelian;
use proflat_core::structure::{
    frattini_of, is_hall, is_nilpotent, is_p_element, is_perfect, quotient,
};
use proflat_core::{
    enumerate_subgroups, BitSet, FiniteGroup, Lattice, LevelPredicate, Limits, Subgroup, Tower,
    Verdict,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalogue::{Catalogue, CatalogueEntry};
use crate::error::{HarnessError, Result};
use crate::report::{to_value, CheckResult, Report};
use crate::towers::{bundled, BUNDLED, DEFAULT_DEPTH};

/// Largest group order the modularity suite visits.
pub const MODULAR_ORDER_CAP: usize = 128;
/// Largest group order for suites that quantify over every subgroup.
pub const ELEMENT_ORDER_CAP: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Distributive,
    Procyclic,
    Modular,
    ModularElement,
    Decomposability,
    Width,
    Perfect,
    Projectivity,
}

impl Suite {
    /// Every suite, in the order `verify all` runs them.
    pub const ALL: [Suite; 8] = [
        Suite::Distributive,
        Suite::Procyclic,
        Suite::Modular,
        Suite::ModularElement,
        Suite::Decomposability,
        Suite::Width,
        Suite::Perfect,
        Suite::Projectivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Distributive => "distributive",
            Suite::Procyclic => "procyclic",
            Suite::Modular => "modular",
            Suite::ModularElement => "modular-element",
            Suite::Decomposability => "decomposability",
            Suite::Width => "width",
            Suite::Perfect => "perfect",
            Suite::Projectivity => "projectivity",
        }
    }

    pub fn from_name(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string(), suite_names()))
    }

    fn uses_towers(self) -> bool {
        matches!(self, Suite::Procyclic | Suite::Width)
    }
}

fn suite_names() -> String {
    let mut names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
    names.push("all");
    names.join(", ")
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub limits: Limits,
    /// Catalogue groups above this order are skipped.
    pub max_order: Option<usize>,
    /// Worker threads; 0 lets rayon choose.
    pub jobs: usize,
}

pub type TowerInstance = (String, std::result::Result<Arc<Tower>, String>);

/// Bundled towers at default depth; a tower that fails to build is kept
/// with its error so the suites can report it.
pub fn tower_instances(limits: &Limits) -> Vec<TowerInstance> {
    BUNDLED
        .iter()
        .map(|(n, _)| {
            let t = bundled(n, DEFAULT_DEPTH, limits).map_err(|e| e.to_string());
            (format!("builtin:{n}"), t)
        })
        .collect()
}

/// Runs `suite` (or every suite for `"all"`) over the catalogue and the
/// bundled towers.
pub fn verify(suite: &str, catalogue: &Catalogue, opts: &VerifyOptions) -> Result<Report> {
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(suite)?]
    };
    let towers = if suites.iter().any(|s| s.uses_towers()) {
        tower_instances(&opts.limits)
    } else {
        Vec::new()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("thread pool");
    let results = pool.install(|| {
        suites
            .iter()
            .flat_map(|&s| run_suite(s, catalogue, &towers, opts))
            .collect()
    });
    Ok(Report::new(suite, results))
}

pub fn run_suite(
    suite: Suite,
    catalogue: &Catalogue,
    towers: &[TowerInstance],
    opts: &VerifyOptions,
) -> Vec<CheckResult> {
    let limits = &opts.limits;
    let cap = |c: usize| opts.max_order.map_or(c, |m| m.min(c));
    let all = cap(usize::MAX);
    match suite {
        Suite::Distributive => over_groups(catalogue, all, |e| distributive(e, limits)),
        Suite::Modular => over_groups(catalogue, cap(MODULAR_ORDER_CAP), |e| modular(e, limits)),
        Suite::ModularElement => over_groups(catalogue, cap(ELEMENT_ORDER_CAP), |e| {
            modular_element(e, limits)
        }),
        Suite::Decomposability => over_groups(catalogue, all, |e| decomposability(e, limits)),
        Suite::Perfect => over_groups(catalogue, cap(ELEMENT_ORDER_CAP), |e| perfect(e, limits)),
        Suite::Projectivity => {
            let mut out = vec![s3_isomorphism_count(limits)];
            out.extend(over_groups(catalogue, all, |e| pq_projectivity(e, limits)));
            out
        }
        Suite::Procyclic => over_towers(towers, "procyclic-iff-levelwise-distributive", |t| {
            procyclic(t, limits)
        }),
        Suite::Width => over_towers(towers, "width-stabilized-iff-finite-width-class", |t| {
            width(t, limits)
        }),
    }
}

fn over_groups<F>(catalogue: &Catalogue, max_order: usize, check: F) -> Vec<CheckResult>
where
    F: Fn(&CatalogueEntry) -> Vec<CheckResult> + Sync,
{
    catalogue
        .up_to(max_order)
        .par_iter()
        .map(|e| check(e))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn over_towers<F>(towers: &[TowerInstance], id: &str, check: F) -> Vec<CheckResult>
where
    F: Fn(&Tower) -> CheckResult + Sync,
{
    towers
        .par_iter()
        .map(|(name, t)| match t {
            Ok(t) => {
                let mut r = check(t);
                r.instance = name.clone();
                r
            }
            Err(e) => CheckResult::error(id, name.clone(), Value::Null, e),
        })
        .collect()
}

/// Order and generators of a subgroup.
fn describe(h: &Subgroup) -> Value {
    let g = h.group();
    let gens: Vec<String> = h
        .generators()
        .iter()
        .map(|&x| g.element(x).to_string())
        .collect();
    json!({ "order": h.order(), "gens": gens })
}

fn distributive(e: &CatalogueEntry, limits: &Limits) -> Vec<CheckResult> {
    const ID: &str = "distributive-iff-cyclic";
    let expected = is_cyclic(&e.group);
    let view = match enumerate_subgroups(&e.group, limits) {
        Ok(v) => v,
        Err(err) => return vec![CheckResult::error(ID, &e.name, expected, err)],
    };
    let violation = view.lattice().distributivity_violation();
    vec![CheckResult::new(
        ID,
        &e.name,
        expected,
        violation.is_none(),
        violation.map(|t| json!({ "distributivity_violation": t })),
    )]
}

fn block_witness(b: &ModularBlock) -> Value {
    let mut w = json!({
        "order": b.factor.order(),
        "kind": b.kind.as_ref().map(|k| k.label()),
    });
    match &b.kind {
        Some(ModularBlockKind::PStar(c)) => {
            w["p"] = json!(c.p);
            w["q"] = json!(c.q);
            w["exponent"] = json!(c.exponent);
            w["automorphism_order"] = json!(c.automorphism_order);
        }
        Some(ModularBlockKind::PGroup(ModularPGroup::Iwasawa(t))) => {
            w["p"] = json!(t.p);
            w["s"] = json!(t.s);
            w["a_order"] = json!(t.a.order());
        }
        _ => {}
    }
    w
}

fn modular(e: &CatalogueEntry, limits: &Limits) -> Vec<CheckResult> {
    const ID: &str = "modular-iff-structure";
    let structure = match modular_structure(&e.group, limits) {
        Ok(s) => s,
        Err(err) => return vec![CheckResult::error(ID, &e.name, Value::Null, err)],
    };
    let expected = structure.holds();
    let view = match enumerate_subgroups(&e.group, limits) {
        Ok(v) => v,
        Err(err) => return vec![CheckResult::error(ID, &e.name, expected, err)],
    };
    let l = view.lattice();
    let violation = l.modularity_violation();
    let mut witness = json!({
        "blocks": structure.blocks.iter().map(block_witness).collect::<Vec<_>>(),
    });
    if let Some(t) = violation {
        witness["modularity_violation"] = to_value(t);
        if let Some(p) = l.find_pentagon() {
            witness["pentagon"] = json!(p);
        }
    }
    vec![CheckResult::new(
        ID,
        &e.name,
        expected,
        violation.is_none(),
        Some(witness),
    )]
}

#[derive(Serialize)]
struct ElementWitness {
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<ModularElementCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<proflat_core::lattice::ModularElementViolation>,
}

fn modular_element(e: &CatalogueEntry, limits: &Limits) -> Vec<CheckResult> {
    const STRUCTURE: &str = "modular-element-structure";
    const QUOTIENTS: &str = "modular-element-quotients";
    let view = match enumerate_subgroups(&e.group, limits) {
        Ok(v) => v,
        Err(err) => return vec![CheckResult::error(STRUCTURE, &e.name, Value::Null, err)],
    };
    let l = view.lattice();
    let mut out = Vec::with_capacity(2 * view.len());
    for m in 0..view.len() {
        let instance = format!("{}#{m}", e.name);
        let violation = l.modular_element_violation(m);
        let definition = violation.is_none();
        match modular_element_structure_check(view.subgroup(m)) {
            Ok(sc) => out.push(CheckResult::new(
                STRUCTURE,
                &instance,
                definition,
                sc.holds,
                Some(to_value(ElementWitness {
                    certificate: sc.certificate,
                    reason: sc.reason,
                    violation,
                })),
            )),
            Err(err) => out.push(CheckResult::error(STRUCTURE, &instance, definition, err)),
        }
        let bad = quotient_modularity_violation(&view, m);
        out.push(CheckResult::new(
            QUOTIENTS,
            &instance,
            definition,
            bad.is_none(),
            bad.map(|n| json!({ "normal_node": n, "normal_order": view.info(n).order })),
        ));
    }
    out
}

fn decomposability(e: &CatalogueEntry, limits: &Limits) -> Vec<CheckResult> {
    const COPRIME: &str = "decomposable-iff-coprime";
    const FRATTINI: &str = "decomposable-mod-frattini";
    let g = &e.group;
    let coprime = coprime_direct_decomposition(g);
    let view = match enumerate_subgroups(g, limits) {
        Ok(v) => v,
        Err(err) => return vec![CheckResult::error(COPRIME, &e.name, coprime.is_some(), err)],
    };
    let l = view.lattice();
    let split = l.direct_decompose();
    let factor_sizes: Vec<usize> = split
        .as_ref()
        .map(|d| {
            d.factor_lattices(l)
                .map(|fs| fs.iter().map(Lattice::size).collect())
                .unwrap_or_default()
        })
        .unwrap_or_default();
    let coprime_orders: Vec<usize> = coprime
        .as_ref()
        .map(|c| c.factors.iter().map(Subgroup::order).collect())
        .unwrap_or_default();
    let mut out = vec![CheckResult::new(
        COPRIME,
        &e.name,
        coprime.is_some(),
        split.is_some(),
        Some(json!({
            "coprime_factor_orders": coprime_orders,
            "lattice_factor_sizes": factor_sizes,
        })),
    )];

    let phi = frattini_of(&view);
    let quotient_split = quotient(&phi).and_then(|(q, _)| {
        Ok((
            q.order(),
            enumerate_subgroups(&q, limits)?
                .lattice()
                .is_directly_decomposable(),
        ))
    });
    out.push(match quotient_split {
        Ok((order, d)) => CheckResult::new(
            FRATTINI,
            &e.name,
            split.is_some(),
            d,
            Some(json!({ "frattini_order": phi.order(), "quotient_order": order })),
        ),
        Err(err) => CheckResult::error(FRATTINI, &e.name, split.is_some(), err),
    });
    out
}

/// The Sylow `p`-subgroup of a nilpotent subgroup: its `p`-elements.
fn nilpotent_sylow(h: &Subgroup, p: usize) -> Subgroup {
    let g = h.group();
    let members = BitSet::from_indices(g.order(), h.elements().filter(|&x| is_p_element(g, x, p)));
    Subgroup::from_members(g, members).expect("p-elements of a nilpotent group form a subgroup")
}

fn perfect(e: &CatalogueEntry, limits: &Limits) -> Vec<CheckResult> {
    const PERFECT: &str = "perfect-modular-elements-normal";
    const CORE: &str = "modular-core-quotient-nilpotent";
    const HALL: &str = "nilpotent-hall-sylows-modular";
    let g = &e.group;
    let view = match enumerate_subgroups(g, limits) {
        Ok(v) => v,
        Err(err) => return vec![CheckResult::error(CORE, &e.name, Value::Null, err)],
    };
    let flags = view.lattice().modular_elements();
    let modular: Vec<usize> = (0..view.len()).filter(|&m| flags[m]).collect();
    let mut out = Vec::new();
    if is_perfect(g) {
        out.push(CheckResult::new(
            PERFECT,
            &e.name,
            view.normal_nodes(),
            &modular,
            None,
        ));
    }

    let mut not_nilpotent = Vec::new();
    let mut hall_failures = Vec::new();
    let mut hall_checked = 0;
    for &m in &modular {
        let h = view.subgroup(m);
        let core = h.normal_core();
        let nilpotent_mod_core = quotient(&core)
            .and_then(|(_, proj)| proj.image(h))
            .map(|img| is_nilpotent(&img.to_group("M/M_G")));
        match nilpotent_mod_core {
            Ok(true) => {}
            Ok(false) => not_nilpotent.push(describe_node(m, h)),
            Err(err) => return vec![CheckResult::error(CORE, &e.name, Value::Null, err)],
        }
        if !is_hall(h) || !is_nilpotent(&h.to_group("M")) {
            continue;
        }
        hall_checked += 1;
        for p in prime_divisors(h.order()) {
            let s = nilpotent_sylow(h, p);
            let node = view.node_of(&s).expect("every subgroup is enumerated");
            if !flags[node] {
                hall_failures.push(json!({ "hall": describe_node(m, h), "p": p, "sylow": node }));
            }
        }
    }
    out.push(CheckResult::new(
        CORE,
        &e.name,
        Vec::<Value>::new(),
        not_nilpotent,
        Some(json!({ "modular_elements": modular.len() })),
    ));
    out.push(CheckResult::new(
        HALL,
        &e.name,
        Vec::<Value>::new(),
        hall_failures,
        Some(json!({ "nilpotent_hall_modular": hall_checked })),
    ));
    out
}

fn describe_node(node: usize, h: &Subgroup) -> Value {
    let mut v = describe(h);
    v["node"] = json!(node);
    v
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Isomorphisms `L(S3) → L(C3 × C3)`. Both lattices have height 2, so an
/// isomorphism is a bijection of atoms.
fn s3_isomorphism_count(limits: &Limits) -> CheckResult {
    const ID: &str = "s3-lattice-isomorphisms";
    let instance = "L(S3) -> L(C3^2)";
    let run = || -> proflat_core::Result<CheckResult> {
        let s3 = enumerate_subgroups(&proflat_core::construct::symmetric(3, limits)?, limits)?;
        let c33 = enumerate_subgroups(&elementary_abelian(3, 2, limits)?, limits)?;
        let (a, b) = (s3.lattice(), c33.lattice());
        let expected = if a.height() == 2 && b.height() == 2 && a.atoms().len() == b.atoms().len() {
            factorial(a.atoms().len())
        } else {
            0
        };
        let isos = a.find_isomorphisms(b, usize::MAX, limits.max_iso_size)?;
        Ok(CheckResult::new(
            ID,
            instance,
            expected,
            isos.len(),
            isos.first().map(|f| json!({ "first": f })),
        ))
    };
    run().unwrap_or_else(|err| CheckResult::error(ID, instance, Value::Null, err))
}

/// A non-abelian group of order `pq` has the subgroup lattice of `C_p²`.
fn pq_projectivity(e: &CatalogueEntry, limits: &Limits) -> Vec<CheckResult> {
    const ID: &str = "pq-lattice-is-elementary";
    let g: &Arc<FiniteGroup> = &e.group;
    let primes = prime_divisors(g.order());
    if g.is_abelian() || primes.len() != 2 || primes[0] * primes[1] != g.order() {
        return Vec::new();
    }
    let p = primes[1];
    let run = || -> proflat_core::Result<bool> {
        let a = enumerate_subgroups(g, limits)?;
        let b = enumerate_subgroups(&elementary_abelian(p, 2, limits)?, limits)?;
        a.lattice().is_isomorphic(b.lattice(), limits.max_iso_size)
    };
    vec![match run() {
        Ok(iso) => CheckResult::new(ID, &e.name, true, iso, Some(json!({ "p": p }))),
        Err(err) => CheckResult::error(ID, &e.name, true, err),
    }]
}

fn procyclic(t: &Tower, limits: &Limits) -> CheckResult {
    const ID: &str = "procyclic-iff-levelwise-distributive";
    let report = t.level_lattice_trajectory(LevelPredicate::Distributive, limits);
    let observed: Value = match report.truncated_at {
        Some(k) => json!(format!("error: level {k} exceeds the order bound")),
        None => json!(report.flags().iter().all(|&b| b)),
    };
    CheckResult::new(
        ID,
        t.name(),
        t.is_procyclic(),
        observed,
        Some(to_value(&report)),
    )
}

fn width(t: &Tower, limits: &Limits) -> CheckResult {
    const ID: &str = "width-stabilized-iff-finite-width-class";
    let report = t.level_lattice_trajectory(LevelPredicate::Width, limits);
    let observed: Value = match report.truncated_at {
        Some(k) => json!(format!("error: level {k} exceeds the order bound")),
        None => json!(report.verdict == Verdict::Stabilized),
    };
    let mut witness = to_value(&report);
    witness["width_class"] = to_value(t.width_class());
    CheckResult::new(
        ID,
        t.name(),
        t.width_class().has_finite_width(),
        observed,
        Some(witness),
    )
}
