//! The end-to-end verification suite: every invariant, sampled from seeded
//! instances and checked against the oracles.
//!
//! Sample `i` of a property runs over the ring `moduli[i % moduli.len()]`
//! with its own seed from [`sample_seed`], so any failing sample can be
//! replayed alone. Samples run in parallel; reports are ordered by property
//! and sample index, which keeps runs byte-identical.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::approx::{
    extract_retract, is_cover, is_precover, isomorphic_over, phantom_cover, phantom_probes,
    projective_cover, pushout_transport, CoverOptions,
};
use crate::error::Error;
use crate::filtration::{
    build_filtration, chain_diagram, pure_subrep_containing, verify_filtration, Filtration,
    FiltrationConfig, FiltrationStep,
};
use crate::finmod::{
    cokernel, compose, direct_sum, directed_colimit, extend_along, free_cover, hom_group,
    hom_group_order, is_direct_summand, is_pure_submodule, kernel, pure_closure, pushout,
    DirectedSystem, FiniteModule, ModuleMorphism, Ring, Submodule, SystemMorphism,
};
use crate::ideals::{
    closed_under_direct_limits_check, factors_through_projective, ideal_membership, is_phantom,
    phantom_probe_failure, MorphismIdeal,
};
use crate::linalg::{present, smith_normal_form, solution_space_mod, solve_mod, IntMatrix};
use crate::manifest::Manifest;
use crate::oracle;
use crate::rep_a2::{
    extension_counterexample, is_pure_subrep, quotient_rep, rep_colimit, RepA2, RepMorphism,
    SubRep,
};
use crate::sample::{self, random_phantom_rep, sample_seed, MODULI};

/// Why a sample failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bad {
    /// The property does not hold.
    Property(String),
    /// An internal contradiction (exit code 3 in the driver).
    Consistency(String),
}

impl From<Error> for Bad {
    fn from(e: Error) -> Bad {
        match e {
            Error::Consistency(msg) => Bad::Consistency(msg),
            other => Bad::Property(format!("unexpected error: {other}")),
        }
    }
}

type Check = std::result::Result<(), Bad>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(Bad::Property(what()))
    }
}

/// Inputs of one sample. Checks record what they draw into `manifest`,
/// which becomes the counterexample on failure.
pub struct Sample {
    pub ring: Ring,
    pub rng: ChaCha8Rng,
    pub manifest: Manifest,
}

impl Sample {
    fn morphism(&mut self, name: &str, f: &ModuleMorphism) {
        // names are unique within a check
        let _ = self.manifest.add_morphism(name, f);
    }

    fn rep(&mut self, name: &str, r: &RepA2) {
        let _ = self.manifest.add_rep(name, r);
    }

    fn note(&mut self, name: &str, fields: &[(&str, String)]) {
        let fields = fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        let _ = self.manifest.add_result(name, fields);
    }

    fn module(&mut self, bound: u64) -> FiniteModule {
        sample::module(&mut self.rng, &self.ring, bound)
    }
}

pub struct Property {
    pub module: &'static str,
    pub name: &'static str,
    /// Acceptance criterion this property evidences, if any.
    pub criterion: Option<u8>,
    pub moduli: &'static [u64],
    check: fn(&mut Sample) -> Check,
}

impl Property {
    /// Runs sample `index` under `run_seed`.
    pub fn run_sample(&self, run_seed: u64, index: usize) -> SampleReport {
        let seed = sample_seed(run_seed, self.name, index);
        let ring = Ring::new(self.moduli[index % self.moduli.len()]).expect("valid modulus");
        let mut s = Sample {
            rng: sample::rng(seed),
            manifest: Manifest::new(&ring),
            ring,
        };
        let outcome = match (self.check)(&mut s) {
            Ok(()) => Outcome::Pass,
            Err(Bad::Property(reason)) => Outcome::Fail {
                reason,
                manifest: s.manifest.serialize(),
            },
            Err(Bad::Consistency(reason)) => Outcome::Consistency {
                reason,
                manifest: s.manifest.serialize(),
            },
        };
        SampleReport {
            index,
            seed,
            modulus: s.ring.modulus(),
            outcome,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { reason: String, manifest: String },
    Consistency { reason: String, manifest: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub index: usize,
    pub seed: u64,
    pub modulus: u64,
    pub outcome: Outcome,
}

pub struct PropertyReport {
    pub module: &'static str,
    pub name: &'static str,
    pub criterion: Option<u8>,
    pub samples: Vec<SampleReport>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.outcome == Outcome::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SampleReport> {
        self.samples.iter().filter(|s| s.outcome != Outcome::Pass)
    }
}

pub struct SuiteReport {
    pub run_seed: u64,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }

    pub fn consistency_violation(&self) -> bool {
        self.properties.iter().any(|p| {
            p.samples
                .iter()
                .any(|s| matches!(s.outcome, Outcome::Consistency { .. }))
        })
    }

    /// `(criterion, passed, samples checked)` for every criterion covered.
    pub fn criteria(&self) -> Vec<(u8, bool, usize)> {
        let covered: BTreeSet<u8> = self.properties.iter().filter_map(|p| p.criterion).collect();
        covered
            .into_iter()
            .map(|c| {
                let props: Vec<&PropertyReport> = self
                    .properties
                    .iter()
                    .filter(|p| p.criterion == Some(c))
                    .collect();
                let passed = props.iter().all(|p| p.passed());
                let checked = props.iter().map(|p| p.samples.len()).min().unwrap_or(0);
                (c, passed, checked)
            })
            .collect()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            let ok = p.samples.len() - p.failures().count();
            let status = if p.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}/{} {ok}/{}", p.module, p.name, p.samples.len())?;
        }
        for p in &self.properties {
            for s in p.failures() {
                let (kind, reason, manifest) = match &s.outcome {
                    Outcome::Fail { reason, manifest } => ("property failure", reason, manifest),
                    Outcome::Consistency { reason, manifest } => {
                        ("consistency violation", reason, manifest)
                    }
                    Outcome::Pass => unreachable!("failures only"),
                };
                writeln!(
                    f,
                    "\n{kind}: module={} property={} seed={} sample={} sample-seed={} n={}",
                    p.module, p.name, self.run_seed, s.index, s.seed, s.modulus
                )?;
                writeln!(f, "reason: {reason}")?;
                writeln!(f, "counterexample:")?;
                write!(f, "{manifest}")?;
            }
        }
        Ok(())
    }
}

/// Runs `samples` samples of every selected property.
pub fn run(
    properties: &[Property],
    run_seed: u64,
    samples: usize,
) -> SuiteReport {
    let jobs: Vec<(usize, usize)> = (0..properties.len())
        .flat_map(|p| (0..samples).map(move |i| (p, i)))
        .collect();
    // indexed collect keeps job order regardless of scheduling
    let results: Vec<SampleReport> = jobs
        .par_iter()
        .map(|&(p, i)| properties[p].run_sample(run_seed, i))
        .collect();
    let mut results = results.into_iter();
    let reports = properties
        .iter()
        .map(|p| PropertyReport {
            module: p.module,
            name: p.name,
            criterion: p.criterion,
            samples: results.by_ref().take(samples).collect(),
        })
        .collect();
    SuiteReport {
        run_seed,
        properties: reports,
    }
}

const ALL: &[u64] = &MODULI;
/// Moduli with a non-projective module, where non-phantom maps exist.
const NON_SQUAREFREE: &[u64] = &[4, 8, 9, 12];

macro_rules! property {
    ($module:literal, $name:literal, $criterion:expr, $moduli:expr, $check:expr) => {
        Property {
            module: $module,
            name: $name,
            criterion: $criterion,
            moduli: $moduli,
            check: $check,
        }
    };
}

/// Every property of every module, in report order.
pub fn properties() -> Vec<Property> {
    vec![
        property!("exact_linalg", "snf-minor-gcd", Some(10), ALL, snf_minor_gcd),
        property!("exact_linalg", "solve-mod-exhaustive", Some(10), ALL, solve_mod_exhaustive),
        property!("exact_linalg", "solution-space-exhaustive", Some(10), ALL, solution_space_exhaustive),
        property!("finmod", "canonical-form", None, ALL, canonical_form),
        property!("finmod", "purity-summand", Some(9), ALL, purity_summand),
        property!("finmod", "pure-closure", Some(9), ALL, pure_closure_property),
        property!("finmod", "pushout-universal", None, ALL, pushout_universal),
        property!("finmod", "colimit-structure", None, ALL, colimit_structure),
        property!("finmod", "hom-group-exhaustive", None, ALL, hom_group_exhaustive),
        property!("ideals", "phantom-ideal-axioms", Some(1), ALL, phantom_ideal_axioms),
        property!("ideals", "phantom-oracle-equivalence", Some(2), ALL, phantom_oracle_equivalence),
        property!("ideals", "phantom-vs-projective-generators", None, ALL, phantom_vs_generated),
        property!("ideals", "closed-under-directed-limits", Some(3), ALL, closed_under_limits),
        property!("rep_a2", "extension-counterexample", Some(8), NON_SQUAREFREE, extension_property),
        property!("rep_a2", "colimit-of-pure-chain", None, ALL, colimit_of_pure_chain),
        property!("rep_a2", "rep-morphism-composition", None, ALL, rep_morphism_composition),
        property!("approx", "phantom-cover", Some(5), ALL, phantom_cover_property),
        property!("approx", "cover-uniqueness", None, ALL, cover_uniqueness),
        property!("approx", "phantom-cover-is-projective-cover", None, ALL, cover_vs_projective),
        property!("approx", "kernel-pure-injective", Some(6), ALL, kernel_pure_injective),
        property!("approx", "pushout-transport-phantom", Some(7), ALL, transport_phantom),
        property!("filtration", "build-and-verify", Some(4), ALL, build_and_verify),
        property!("filtration", "quotient-phantom", None, ALL, quotient_phantom),
        property!("filtration", "colimit-of-filtration", None, ALL, colimit_of_filtration),
        property!("filtration", "pure-subrep-containing", None, ALL, pure_subrep_property),
        property!("cli", "manifest-round-trip", None, ALL, manifest_round_trip),
        property!("cli", "determinism", None, ALL, determinism),
    ]
}

fn rows_text(a: &IntMatrix) -> String {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(lo..=hi)))
}

// ---- exact_linalg ----

fn snf_minor_gcd(s: &mut Sample) -> Check {
    let (r, c) = (s.rng.gen_range(1..=6), s.rng.gen_range(1..=6));
    let a = random_matrix(&mut s.rng, r, c, -20, 20);
    s.note("input", &[("a", rows_text(&a))]);
    let snf = smith_normal_form(&a);
    let uav = snf.u.mul(&a)?.mul(&snf.v)?;
    ensure(uav == snf.d, || "U A V differs from D".to_string())?;
    ensure(snf.u.mul(&snf.u_inv)? == IntMatrix::identity(r), || {
        "U_inv is not the inverse of U".to_string()
    })?;
    for i in 0..r {
        for j in 0..c {
            ensure(i == j || snf.d[(i, j)] == BigInt::from(0), || {
                format!("D has an off-diagonal entry at ({i}, {j})")
            })?;
        }
    }
    let diag = snf.diagonal();
    let rank = snf.rank();
    ensure(diag[rank..].iter().all(|x| *x == BigInt::from(0)), || {
        "zeros are not trailing".to_string()
    })?;
    ensure(diag[..rank].iter().all(|x| *x > BigInt::from(0)), || {
        "diagonal is not positive".to_string()
    })?;
    let expected = oracle::minor_gcd_diagonal(&a);
    ensure(diag[..rank].to_vec() == expected, || {
        format!("diagonal {:?} differs from minor gcds {:?}", &diag[..rank], expected)
    })
}

fn solve_mod_exhaustive(s: &mut Sample) -> Check {
    let n = s.ring.modulus();
    let (r, c) = (s.rng.gen_range(1..=4), s.rng.gen_range(1..=4));
    let a = random_matrix(&mut s.rng, r, c, 0, n as i64 - 1);
    let b: Vec<BigInt> = if s.rng.gen_bool(0.5) {
        // consistent right-hand side
        let x: Vec<BigInt> = (0..c).map(|_| BigInt::from(s.rng.gen_range(0..n))).collect();
        a.mul_vec(&x)?
    } else {
        (0..r).map(|_| BigInt::from(s.rng.gen_range(0..n))).collect()
    };
    s.note(
        "input",
        &[
            ("a", rows_text(&a)),
            ("b", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
        ],
    );
    let got = solve_mod(&a, &b, &BigInt::from(n))?;
    let expected = oracle::exhaustive_solve_mod(&a, &b, n);
    ensure(got.is_some() == expected.is_some(), || {
        format!("solver says {got:?}, enumeration says {expected:?}")
    })?;
    if let Some(x) = got {
        let ax = a.mul_vec(&x)?;
        let nn = BigInt::from(n);
        ensure(
            ax.iter().zip(&b).all(|(l, r)| (l - r) % &nn == BigInt::from(0)),
            || format!("witness {x:?} does not solve the system"),
        )?;
    }
    Ok(())
}

fn solution_space_exhaustive(s: &mut Sample) -> Check {
    let n = s.ring.modulus();
    let (r, c) = (s.rng.gen_range(1..=4), s.rng.gen_range(1..=4));
    let a = random_matrix(&mut s.rng, r, c, 0, n as i64 - 1);
    s.note("input", &[("a", rows_text(&a))]);
    let gens: Vec<Vec<u64>> = solution_space_mod(&a, &BigInt::from(n))?
        .into_iter()
        .map(|g| g.iter().map(|x| u64::try_from(x).expect("reduced")).collect())
        .collect();
    let span = oracle::span_mod(&gens, c, n);
    let kernel = oracle::exhaustive_kernel(&a, n);
    ensure(span == kernel, || {
        format!("span has {} elements, kernel {}", span.len(), kernel.len())
    })
}

// ---- finmod ----

fn elementary_divisors(orders: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &d in &oracle::invariant_factors_of(orders) {
        let mut rest = d;
        let mut p = 2;
        while rest > 1 {
            let mut q = 1;
            while rest % p == 0 {
                rest /= p;
                q *= p;
            }
            if q > 1 {
                out.push(q);
            }
            p += 1;
        }
    }
    out.sort_unstable();
    out
}

fn canonical_form(s: &mut Sample) -> Check {
    let divisors = s.ring.divisors();
    let draw = |rng: &mut ChaCha8Rng| -> Vec<u64> {
        let k = rng.gen_range(0..=4);
        (0..k).map(|_| divisors[rng.gen_range(0..divisors.len())]).collect()
    };
    let o1 = draw(&mut s.rng);
    let o2 = if s.rng.gen_bool(0.5) {
        let mut o = o1.clone();
        o.reverse();
        o
    } else {
        draw(&mut s.rng)
    };
    let join = |o: &[u64]| o.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    s.note("input", &[("orders1", join(&o1)), ("orders2", join(&o2))]);
    let m1 = FiniteModule::from_cyclic_orders(&s.ring, &o1)?;
    let m2 = FiniteModule::from_cyclic_orders(&s.ring, &o2)?;
    ensure(m1.factors() == oracle::invariant_factors_of(&o1).as_slice(), || {
        format!("{o1:?} canonicalized to {:?}", m1.factors())
    })?;
    ensure((m1 == m2) == (elementary_divisors(&o1) == elementary_divisors(&o2)), || {
        "equality of canonical forms disagrees with elementary divisors".to_string()
    })?;
    // a random presentation of an n-torsion group
    let g = s.rng.gen_range(1..=3);
    let k = s.rng.gen_range(0..=3);
    let n = s.ring.modulus() as i64;
    let rel = random_matrix(&mut s.rng, g, k, -20, 20)
        .hstack(&IntMatrix::diagonal(&vec![BigInt::from(n); g]))?;
    s.note("presentation", &[("relations", rows_text(&rel))]);
    let p = present(&rel)?;
    let expected: Vec<BigInt> = oracle::minor_gcd_diagonal(&rel)
        .into_iter()
        .filter(|d| *d != BigInt::from(1))
        .collect();
    ensure(p.factors == expected, || {
        format!("presentation factors {:?}, minor gcds {:?}", p.factors, expected)
    })
}

fn purity_summand(s: &mut Sample) -> Check {
    let m = s.module(256);
    let sub = if s.rng.gen_bool(0.5) {
        sample::pure_submodule(&mut s.rng, &m)
    } else {
        sample::submodule(&mut s.rng, &m)
    };
    s.manifest.add_module("M", &m).ok();
    s.note("input", &[("s", format!("{:?}", sub.generators()))]);
    let pure = is_pure_submodule(&sub, &m)?;
    let summand = is_direct_summand(&sub, &m)?;
    let expected = oracle::is_pure_exhaustive(&sub, &m);
    ensure(pure == expected, || format!("is_pure_submodule {pure}, enumeration {expected}"))?;
    ensure(summand.is_some() == expected, || {
        format!("summand {}, enumeration {expected}", summand.is_some())
    })?;
    if let Some(sm) = summand {
        ensure(
            compose(&sm.retraction, &sm.inclusion)? == ModuleMorphism::identity(&sm.module),
            || "retraction is not a left inverse".to_string(),
        )?;
        ensure(Submodule::image_of(&sm.inclusion).same_as(&sub), || {
            "summand inclusion has the wrong image".to_string()
        })?;
    }
    Ok(())
}

fn pure_closure_property(s: &mut Sample) -> Check {
    let m = s.module(256);
    let sub = sample::submodule(&mut s.rng, &m);
    s.manifest.add_module("M", &m).ok();
    s.note("input", &[("s", format!("{:?}", sub.generators()))]);
    let closure = pure_closure(&sub, &m)?.submodule;
    ensure(oracle::is_pure_exhaustive(&closure, &m), || {
        format!("closure {:?} is not pure", closure.generators())
    })?;
    ensure(closure.contains_submodule(&sub), || "closure lost its seed".to_string())
}

fn pushout_universal(s: &mut Sample) -> Check {
    let k = s.module(16);
    let m = s.module(16);
    let k2 = s.module(16);
    let u = sample::morphism(&mut s.rng, &k, &m);
    let v = sample::morphism(&mut s.rng, &k, &k2);
    s.morphism("u", &u);
    s.morphism("v", &v);
    let po = pushout(&u, &v)?;
    ensure(
        compose(&po.from_first, &v)? == compose(&po.from_second, &u)?,
        || "pushout square does not commute".to_string(),
    )?;
    let mut gens = po.from_first.columns();
    gens.extend(po.from_second.columns());
    ensure(
        oracle::subgroup(&po.object, &gens).len() as u64 == po.object.size(),
        || "pushout legs are not jointly onto".to_string(),
    )?;
    // every cone is c ∘ (legs) for a unique c
    let y = s.module(16);
    let c = sample::morphism(&mut s.rng, &po.object, &y);
    s.morphism("c", &c);
    let a = compose(&c, &po.from_first)?;
    let b = compose(&c, &po.from_second)?;
    let mediating = po.induced(&a, &b)?;
    ensure(mediating == c, || "mediating morphism is not unique".to_string())
}

fn colimit_structure(s: &mut Sample) -> Check {
    let m = s.module(32);
    let len = s.rng.gen_range(1..=3);
    let id = ModuleMorphism::identity(&m);
    let constant = DirectedSystem::chain(&vec![id; len - 1])
        .unwrap_or_else(|_| DirectedSystem::single(&m));
    let colim = directed_colimit(&constant)?;
    s.manifest.add_module("M", &m).ok();
    ensure(colim.structural.iter().all(ModuleMorphism::is_isomorphism), || {
        "colimit of a constant system is not the object".to_string()
    })?;
    // a random chain: structural maps are compatible and jointly onto
    let mut maps = Vec::new();
    let mut cur = s.module(16);
    for i in 0..s.rng.gen_range(1..=3) {
        let next = s.module(16);
        let f = sample::morphism(&mut s.rng, &cur, &next);
        s.morphism(&format!("a{i}"), &f);
        maps.push(f);
        cur = next;
    }
    let system = DirectedSystem::chain(&maps)?;
    let colim = directed_colimit(&system)?;
    for arrow in &system.arrows {
        ensure(
            compose(&colim.structural[arrow.to], &arrow.map)? == colim.structural[arrow.from],
            || format!("structural maps disagree along {}-{}", arrow.from, arrow.to),
        )?;
    }
    let gens: Vec<Vec<u64>> = colim.structural.iter().flat_map(|f| f.columns()).collect();
    ensure(
        oracle::subgroup(&colim.object, &gens).len() as u64 == colim.object.size(),
        || "structural maps are not jointly onto".to_string(),
    )
}

fn hom_group_exhaustive(s: &mut Sample) -> Check {
    let (m, n) = loop {
        let m = s.module(64);
        let n = s.module(64);
        if oracle::hom_order_formula(&m, &n) <= 1 << 16 {
            break (m, n);
        }
    };
    s.manifest.add_module("M", &m).ok();
    s.manifest.add_module("N", &n).ok();
    let gens = hom_group(&m, &n)?;
    let all = oracle::exhaustive_hom(&m, &n, 1 << 16).expect("bounded above");
    let mut span: BTreeSet<Vec<Vec<u64>>> = BTreeSet::from([ModuleMorphism::zero(&m, &n).rows()]);
    let mut frontier = vec![ModuleMorphism::zero(&m, &n)];
    while let Some(f) = frontier.pop() {
        for g in &gens {
            let h = f.add(g)?;
            if span.insert(h.rows()) {
                frontier.push(h);
            }
        }
    }
    ensure(span == all, || {
        format!("generators span {} maps, enumeration finds {}", span.len(), all.len())
    })?;
    ensure(
        hom_group_order(&m, &n) == num_bigint::BigUint::from(all.len()),
        || "hom_group_order disagrees with enumeration".to_string(),
    )
}

// ---- ideals ----

fn phantom_ideal_axioms(s: &mut Sample) -> Check {
    let (l, m, n, k) = (s.module(64), s.module(64), s.module(64), s.module(64));
    let f = sample::phantom(&mut s.rng, &m, &n);
    let g = sample::phantom(&mut s.rng, &m, &n);
    let t = sample::morphism(&mut s.rng, &l, &m);
    let h = sample::morphism(&mut s.rng, &n, &k);
    for (name, x) in [("f", &f), ("g", &g), ("t", &t), ("h", &h)] {
        s.morphism(name, x);
    }
    ensure(is_phantom(&f) && is_phantom(&g), || "sampled phantoms are not phantom".to_string())?;
    let sum = f.add(&g)?;
    ensure(is_phantom(&sum) && oracle::phantom_via_hull(&sum), || {
        "f + g is not phantom".to_string()
    })?;
    let two_sided = compose(&h, &compose(&f, &t)?)?;
    ensure(is_phantom(&two_sided) && oracle::phantom_via_hull(&two_sided), || {
        "h ∘ f ∘ t is not phantom".to_string()
    })
}

fn phantom_oracle_equivalence(s: &mut Sample) -> Check {
    let m = s.module(256);
    let n = s.module(256);
    let f = if s.rng.gen_bool(0.5) {
        sample::phantom(&mut s.rng, &m, &n)
    } else {
        sample::morphism(&mut s.rng, &m, &n)
    };
    s.morphism("f", &f);
    let phantom = is_phantom(&f);
    let factorization = factors_through_projective(&f);
    let hull = oracle::phantom_via_hull(&f);
    let probes = phantom_probe_failure(&f).is_none();
    ensure(
        phantom == factorization.is_some() && phantom == hull && phantom == probes,
        || {
            format!(
                "is_phantom {phantom}, factorization {}, hull {hull}, probes {probes}",
                factorization.is_some()
            )
        },
    )?;
    if let Some(fact) = factorization {
        ensure(oracle::projective_by_valuations(&fact.projective), || {
            format!("{:?} is not projective", fact.projective)
        })?;
        ensure(compose(&fact.second, &fact.first)? == f, || {
            "factorization does not compose to f".to_string()
        })?;
    }
    Ok(())
}

fn phantom_vs_generated(s: &mut Sample) -> Check {
    let m = s.module(32);
    let n = s.module(32);
    let f = if s.rng.gen_bool(0.5) {
        sample::phantom(&mut s.rng, &m, &n)
    } else {
        sample::morphism(&mut s.rng, &m, &n)
    };
    s.morphism("f", &f);
    let gens = s
        .ring
        .local_factors()
        .into_iter()
        .map(|q| FiniteModule::cyclic(&s.ring, q).map(|p| ModuleMorphism::identity(&p)))
        .collect::<crate::Result<Vec<_>>>()?;
    let generated = MorphismIdeal::generated(&s.ring, gens)?;
    let a = ideal_membership(&generated, &f)?;
    let b = ideal_membership(&MorphismIdeal::Phantom(s.ring.clone()), &f)?;
    ensure(a == b, || format!("generated ideal says {a}, phantom tag says {b}"))
}

fn closed_under_limits(s: &mut Sample) -> Check {
    let len = s.rng.gen_range(1..=3);
    let mut sources = vec![s.module(8)];
    let mut targets = vec![s.module(16)];
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    let mut components = vec![sample::phantom(&mut s.rng, &sources[0], &targets[0])];
    for i in 0..len - 1 {
        // monomorphic source arrows let phantom components extend
        let alpha = sample::graph_embedding(&mut s.rng, &sources[i]);
        let next_target = s.module(16);
        let beta = sample::morphism(&mut s.rng, &targets[i], &next_target);
        let pushed = compose(&beta, &components[i])?;
        let fact = factors_through_projective(&pushed)
            .ok_or_else(|| Bad::Property("β ∘ f_i is not phantom".to_string()))?;
        let first = extend_along(&alpha, &fact.first)?.ok_or_else(|| {
            Bad::Property("a map into a projective does not extend along a mono".to_string())
        })?;
        let mut next = compose(&fact.second, &first)?;
        // plus a phantom that vanishes on the image of alpha
        let coker = cokernel(&alpha)?;
        let extra = sample::phantom(&mut s.rng, &coker.module, &next_target);
        next = next.add(&compose(&extra, &coker.projection)?)?;
        sources.push(alpha.target().clone());
        targets.push(next_target);
        alphas.push(alpha);
        betas.push(beta);
        components.push(next);
    }
    let source = if alphas.is_empty() {
        DirectedSystem::single(&sources[0])
    } else {
        DirectedSystem::chain(&alphas)?
    };
    let target = if betas.is_empty() {
        DirectedSystem::single(&targets[0])
    } else {
        DirectedSystem::chain(&betas)?
    };
    for (i, a) in alphas.iter().enumerate() {
        s.morphism(&format!("alpha{i}"), a);
    }
    for (i, b) in betas.iter().enumerate() {
        s.morphism(&format!("beta{i}"), b);
    }
    for (i, c) in components.iter().enumerate() {
        s.morphism(&format!("f{i}"), c);
    }
    let sys = SystemMorphism {
        source,
        target,
        components,
    };
    let check = closed_under_direct_limits_check(&MorphismIdeal::Phantom(s.ring.clone()), &sys)?;
    ensure(check.components_in_ideal, || "sampled components are not phantom".to_string())?;
    ensure(check.member && oracle::phantom_via_hull(check.induced()), || {
        "the induced colimit map is not phantom".to_string()
    })
}

// ---- rep_a2 ----

fn non_phantom(s: &mut Sample) -> ModuleMorphism {
    for _ in 0..20 {
        let m = sample::nonzero_module(&mut s.rng, &s.ring, 64);
        let n = sample::nonzero_module(&mut s.rng, &s.ring, 64);
        let f = sample::morphism(&mut s.rng, &m, &n);
        if !is_phantom(&f) {
            return f;
        }
    }
    // Z/p with p^2 | n is not projective, so its identity is not phantom
    let (p, _) = *s
        .ring
        .prime_factors()
        .iter()
        .find(|(_, e)| *e > 1)
        .expect("modulus is not squarefree");
    ModuleMorphism::identity(&FiniteModule::cyclic(&s.ring, p).expect("p divides n"))
}

fn extension_property(s: &mut Sample) -> Check {
    let f = non_phantom(s);
    s.morphism("f", &f);
    let ex = extension_counterexample(&MorphismIdeal::Phantom(s.ring.clone()), &f)?;
    s.rep("middle", &ex.middle);
    ensure(!ex.middle_in_ideal && !oracle::phantom_via_hull(&ex.middle.f), || {
        "the middle representation is phantom".to_string()
    })?;
    ensure(ex.sub_in_ideal && oracle::phantom_via_hull(&ex.sub_rep.f), || {
        "the sub representation is not phantom".to_string()
    })?;
    ensure(ex.quotient_in_ideal && oracle::phantom_via_hull(&ex.quotient.rep.f), || {
        "the quotient representation is not phantom".to_string()
    })
}

fn random_rep(s: &mut Sample, bound: u64) -> RepA2 {
    let m1 = s.module(bound / 2);
    let m2 = s.module(bound / 2);
    RepA2::new(sample::morphism(&mut s.rng, &m1, &m2))
}

fn random_seeds(s: &mut Sample, rep: &RepA2) -> (Submodule, Submodule) {
    let x1 = sample::submodule(&mut s.rng, rep.m1());
    let x2 = sample::submodule(&mut s.rng, rep.m2());
    (x1, x2)
}

/// A chain of pure subrepresentations ending at the whole representation,
/// wrapped as a filtration record so [`chain_diagram`] applies.
fn pure_chain(s: &mut Sample, rep: &RepA2) -> crate::Result<Filtration> {
    let cfg = FiltrationConfig {
        kappa: s.ring.modulus(),
        max_adjoined: None,
    };
    let mut steps = vec![SubRep::zero(rep)];
    for _ in 0..s.rng.gen_range(0..=3) {
        let last = steps.last().expect("nonempty").clone();
        let (x1, x2) = random_seeds(s, rep);
        let x1 = x1.join(&last.s1)?;
        let x2 = x2.join(&last.s2)?;
        steps.push(pure_subrep_containing(rep, &x1, &x2, &cfg)?.sub);
    }
    steps.push(SubRep::whole(rep));
    let steps = steps
        .into_iter()
        .map(|sub| FiltrationStep {
            quotient_size: sub.cardinality(),
            sub,
            adjoined: 0,
            seeds: 0,
        })
        .collect();
    Ok(Filtration {
        target: rep.clone(),
        config: cfg,
        steps,
    })
}

fn top_is_iso(colim: &crate::rep_a2::RepColimit) -> bool {
    colim
        .structural
        .last()
        .is_some_and(|t| t.d.is_isomorphism() && t.s.is_isomorphism())
}

fn colimit_of_pure_chain(s: &mut Sample) -> Check {
    let rep = random_rep(s, 128);
    s.rep("F", &rep);
    let chain = pure_chain(s, &rep)?;
    for (i, st) in chain.steps.iter().enumerate() {
        ensure(is_pure_subrep(&st.sub)?, || format!("chain member {i} is not pure"))?;
    }
    let colim = rep_colimit(&chain_diagram(&chain)?)?;
    ensure(top_is_iso(&colim), || "the colimit is not the top representation".to_string())?;
    ensure(colim.rep.m1() == rep.m1() && colim.rep.m2() == rep.m2(), || {
        "the colimit components differ from the representation".to_string()
    })
}

fn random_rep_morphism(s: &mut Sample, a: &RepA2, b: &RepA2) -> crate::Result<RepMorphism> {
    let d = sample::morphism(&mut s.rng, a.m1(), b.m1());
    let gd = compose(&b.f, &d)?;
    // s ∘ f_a = g ∘ d, plus something vanishing on the image of f_a
    let (d, base) = match extend_along(&a.f, &gd)? {
        Some(e) => (d, e),
        None => (
            ModuleMorphism::zero(a.m1(), b.m1()),
            ModuleMorphism::zero(a.m2(), b.m2()),
        ),
    };
    let coker = cokernel(&a.f)?;
    let extra = sample::morphism(&mut s.rng, &coker.module, b.m2());
    let sm = base.add(&compose(&extra, &coker.projection)?)?;
    RepMorphism::new(a, b, d, sm)
}

fn rep_morphism_composition(s: &mut Sample) -> Check {
    let reps: Vec<RepA2> = (0..4).map(|_| random_rep(s, 32)).collect();
    for (i, r) in reps.iter().enumerate() {
        s.rep(&format!("R{i}"), r);
    }
    let a = random_rep_morphism(s, &reps[0], &reps[1])?;
    let b = random_rep_morphism(s, &reps[1], &reps[2])?;
    let c = random_rep_morphism(s, &reps[2], &reps[3])?;
    let left = c.after(&b)?.after(&a)?;
    let right = c.after(&b.after(&a)?)?;
    ensure(left.d == right.d && left.s == right.s, || {
        "composition is not associative".to_string()
    })?;
    ensure(left.commutes() && b.after(&a)?.commutes(), || {
        "a composite square does not commute".to_string()
    })
}

// ---- approx ----

fn phantom_cover_property(s: &mut Sample) -> Check {
    let m = s.module(64);
    s.manifest.add_module("M", &m).ok();
    let phi = phantom_cover(&m)?;
    s.morphism("phi", &phi);
    let ideal = MorphismIdeal::Phantom(s.ring.clone());
    ensure(oracle::phantom_via_hull(&phi), || "the cover is not phantom".to_string())?;
    ensure(oracle::is_surjective_exhaustive(&phi), || "the cover is not onto".to_string())?;
    let probes = phantom_probes(&m, 256)?;
    let precover = is_precover(&ideal, &phi, &probes)?;
    ensure(precover.holds(), || format!("precover check failed: {precover:?}"))?;
    let cover = is_cover(&ideal, &phi, &probes, &CoverOptions::default())?;
    ensure(cover.holds(), || format!("cover check failed: {cover:?}"))
}

fn check_iso_over(phi1: &ModuleMorphism, phi2: &ModuleMorphism) -> Check {
    let (a, inv) = isomorphic_over(phi1, phi2)?
        .ok_or_else(|| Bad::Property("the covers are not isomorphic over M".to_string()))?;
    ensure(compose(phi2, &a)? == *phi1 && compose(phi1, &inv)? == *phi2, || {
        "the isomorphism does not commute with the covers".to_string()
    })?;
    ensure(
        compose(&a, &inv)? == ModuleMorphism::identity(phi2.source())
            && compose(&inv, &a)? == ModuleMorphism::identity(phi1.source()),
        || "the factorizations are not mutually inverse".to_string(),
    )
}

fn cover_uniqueness(s: &mut Sample) -> Check {
    let m = s.module(64);
    s.manifest.add_module("M", &m).ok();
    let phi1 = phantom_cover(&m)?;
    let alpha = sample::automorphism(&mut s.rng, phi1.source());
    let phi2 = compose(&phi1, &alpha)?;
    s.morphism("phi1", &phi1);
    s.morphism("phi2", &phi2);
    let ideal = MorphismIdeal::Phantom(s.ring.clone());
    let probes = phantom_probes(&m, 16)?;
    for phi in [&phi1, &phi2] {
        ensure(is_cover(&ideal, phi, &probes, &CoverOptions::default())?.holds(), || {
            "a sampled cover fails the cover check".to_string()
        })?;
    }
    check_iso_over(&phi1, &phi2)
}

fn cover_vs_projective(s: &mut Sample) -> Check {
    let m = s.module(64);
    s.manifest.add_module("M", &m).ok();
    let phi = phantom_cover(&m)?;
    let p = projective_cover(&m)?;
    s.morphism("phantom_cover", &phi);
    s.morphism("projective_cover", &p);
    check_iso_over(&phi, &p)
}

fn kernel_pure_injective(s: &mut Sample) -> Check {
    let (phi, k) = loop {
        let m = s.module(64);
        let phi = phantom_cover(&m)?;
        let k = kernel(&phi)?.module;
        if k.size() <= 256 {
            break (phi, k);
        }
    };
    let v = sample::pure_mono(&mut s.rng, &k, 256);
    s.morphism("phi", &phi);
    s.morphism("v", &v);
    let r = extract_retract(&phi, &v)?;
    ensure(compose(&r.r, &v)? == ModuleMorphism::identity(&k), || {
        "r ∘ v is not the identity".to_string()
    })
}

fn transport_phantom(s: &mut Sample) -> Check {
    let n = s.module(16);
    let cover = free_cover(&n);
    let q = s.module(8);
    let g = sample::phantom(&mut s.rng, &q, &n);
    let sum = direct_sum(&[cover.source().clone(), q])?;
    let phi = compose(&cover, &sum.projections[0])?.add(&compose(&g, &sum.projections[1])?)?;
    s.morphism("phi", &phi);
    let k = kernel(&phi)?.module;
    let v = if s.rng.gen_bool(0.7) {
        sample::graph_embedding(&mut s.rng, &k)
    } else {
        sample::automorphism(&mut s.rng, &k)
    };
    s.morphism("v", &v);
    let t = pushout_transport(&phi, &v)?;
    ensure(t.phantom && oracle::phantom_via_hull(&t.phi_prime), || {
        "φ' is not phantom".to_string()
    })?;
    ensure(compose(&t.phi_prime, &t.pushout.from_second)? == phi, || {
        "φ' ∘ v' differs from φ".to_string()
    })?;
    ensure(compose(&t.phi_prime, &t.pushout.from_first)?.is_zero(), || {
        "φ' ∘ u' is not zero".to_string()
    })
}

// ---- filtration ----

fn build_and_verify(s: &mut Sample) -> Check {
    let seed = s.rng.gen();
    let rep = random_phantom_rep(seed, &s.ring, 4096);
    s.rep("F", &rep);
    let n = s.ring.modulus();
    let size = u64::try_from(rep.cardinality()).expect("bounded");
    let kappa = match s.rng.gen_range(0..3) {
        0 => n,
        1 => 2 * n,
        _ => size.max(n),
    };
    s.note("config", &[("kappa", kappa.to_string())]);
    let filtration = build_filtration(&rep, &FiltrationConfig::new(&s.ring, kappa)?)?;
    let report = verify_filtration(&filtration)?;
    ensure(report.passed(), || format!("verification failed:\n{report}"))
}

fn quotient_phantom(s: &mut Sample) -> Check {
    let rep = random_phantom_rep(s.rng.gen(), &s.ring, 512);
    s.rep("F", &rep);
    let (x1, x2) = random_seeds(s, &rep);
    let cfg = FiltrationConfig::new(&s.ring, s.ring.modulus())?;
    let sub = pure_subrep_containing(&rep, &x1, &x2, &cfg)?.sub;
    ensure(is_pure_subrep(&sub)?, || "the subrepresentation is not pure".to_string())?;
    let q = quotient_rep(&sub)?;
    ensure(is_phantom(&q.rep.f) && oracle::phantom_via_hull(&q.rep.f), || {
        "the quotient by a pure subrepresentation is not phantom".to_string()
    })
}

fn colimit_of_filtration(s: &mut Sample) -> Check {
    let rep = random_phantom_rep(s.rng.gen(), &s.ring, 512);
    s.rep("F", &rep);
    let n = s.ring.modulus();
    let kappa = n * s.rng.gen_range(1..=3);
    let filtration = build_filtration(&rep, &FiltrationConfig::new(&s.ring, kappa)?)?;
    let colim = rep_colimit(&chain_diagram(&filtration)?)?;
    ensure(top_is_iso(&colim), || "F is not the union of its filtration".to_string())
}

fn pure_subrep_property(s: &mut Sample) -> Check {
    let rep = random_rep(s, 256);
    s.rep("F", &rep);
    let (x1, x2) = random_seeds(s, &rep);
    let cfg = FiltrationConfig::new(&s.ring, s.ring.modulus())?;
    let sub = pure_subrep_containing(&rep, &x1, &x2, &cfg)?.sub;
    ensure(
        oracle::is_pure_exhaustive(&sub.s1, rep.m1()) && oracle::is_pure_exhaustive(&sub.s2, rep.m2()),
        || "the output is not pure".to_string(),
    )?;
    ensure(sub.s1.contains_submodule(&x1) && sub.s2.contains_submodule(&x2), || {
        "the output lost a seed".to_string()
    })?;
    let again = pure_subrep_containing(&rep, &sub.s1, &sub.s2, &cfg)?.sub;
    ensure(again.same_as(&sub), || "not idempotent on its own output".to_string())
}

// ---- cli ----

fn manifest_round_trip(s: &mut Sample) -> Check {
    let rep = random_phantom_rep(s.rng.gen(), &s.ring, 256);
    let filtration = build_filtration(&rep, &FiltrationConfig::new(&s.ring, 2 * s.ring.modulus())?)?;
    let m = s.module(64);
    let f = sample::morphism(&mut s.rng, &m, &m);
    let mut man = Manifest::new(&s.ring);
    man.add_rep("F", &rep)?;
    man.add_morphism("g", &f)?;
    man.add_system("D", &DirectedSystem::chain(&[f.clone(), f])?)?;
    man.add_filtration("P", &filtration)?;
    s.manifest = man.clone();
    let text = man.serialize();
    let back = Manifest::parse(&text)?;
    ensure(back == man, || "parse(serialize(m)) differs from m".to_string())?;
    ensure(back.serialize() == text, || "serialization is not bit-exact".to_string())?;
    let restored = back.filtration("P")?;
    ensure(verify_filtration(&restored)?.passed(), || {
        "the restored filtration does not verify".to_string()
    })
}

fn determinism(s: &mut Sample) -> Check {
    let seed: u64 = s.rng.gen();
    let a = random_phantom_rep(seed, &s.ring, 512);
    let b = random_phantom_rep(seed, &s.ring, 512);
    s.rep("F", &a);
    ensure(a == b, || format!("seed {seed} gave two representations"))?;
    let cfg = FiltrationConfig::new(&s.ring, s.ring.modulus())?;
    let text = |rep: &RepA2| -> crate::Result<String> {
        let mut m = Manifest::new(rep.m1().ring());
        m.add_filtration("P", &build_filtration(rep, &cfg)?)?;
        Ok(m.serialize())
    };
    ensure(text(&a)? == text(&b)?, || "filtrations of one input differ".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_samples_are_reported() {
        fn always_fails(s: &mut Sample) -> Check {
            s.note("input", &[("x", "1".to_string())]);
            Err(Bad::Property("nope".to_string()))
        }
        let props = [property!("demo", "fails", None, ALL, always_fails)];
        let report = run(&props, 9, 2);
        assert!(!report.passed());
        assert!(!report.consistency_violation());
        let text = report.to_string();
        assert!(text.contains("FAIL demo/fails 0/2"));
        assert!(text.contains("module=demo property=fails seed=9 sample=0"));
        assert!(text.contains("[result input]\nx=1\n"));
    }

    #[test]
    fn consistency_is_separate() {
        fn contradicts(_: &mut Sample) -> Check {
            Err(Error::Consistency("boom".to_string()).into())
        }
        let props = [property!("demo", "boom", None, ALL, contradicts)];
        assert!(run(&props, 1, 1).consistency_violation());
    }

    #[test]
    fn runs_are_reproducible() {
        let props: Vec<Property> = properties()
            .into_iter()
            .filter(|p| p.module == "exact_linalg")
            .collect();
        let a = run(&props, 3, 7).to_string();
        let b = run(&props, 3, 7).to_string();
        assert_eq!(a, b);
    }
}
