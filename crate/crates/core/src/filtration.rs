//! Filtrations of phantom representations by pure subrepresentations with
//! small phantom quotient steps.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finmod::{
    compose, extend_along, injective_hull, pure_closure, Element, Ring, Submodule,
};
use crate::ideals::is_phantom;
use crate::rep_a2::{is_pure_subrep, quotient_rep, QuotientRep, RepA2, SubRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationConfig {
    /// Target size of each quotient step; at least the ring order.
    pub kappa: u64,
    /// Optional cap on the generators adjoined while growing one
    /// subrepresentation.
    pub max_adjoined: Option<usize>,
}

impl FiltrationConfig {
    pub fn new(ring: &Ring, kappa: u64) -> Result<FiltrationConfig> {
        if kappa < ring.modulus() {
            return Err(Error::Precondition(format!(
                "kappa {kappa} is below the ring order {}",
                ring.modulus()
            )));
        }
        Ok(FiltrationConfig {
            kappa,
            max_adjoined: None,
        })
    }

    /// The size guaranteed for a step that adjoined `w` generators beyond its
    /// seed: `kappa * n^w + 1`. Each adjoined generator multiplies one
    /// component by at most `n`; the `+ 1` is the zero of a component that
    /// received nothing.
    pub fn step_bound(&self, ring: &Ring, adjoined: usize) -> BigUint {
        BigUint::from(self.kappa) * BigUint::from(ring.modulus()).pow(adjoined as u32)
            + BigUint::one()
    }
}

/// A subrepresentation together with the number of generators adjoined to
/// its seeds while growing it.
#[derive(Clone, Debug)]
pub struct Grown {
    pub sub: SubRep,
    pub adjoined: usize,
}

struct Budget {
    limit: Option<usize>,
    used: usize,
}

impl Budget {
    fn spend(&mut self, k: usize, partial: impl FnOnce() -> SubRep) -> Result<()> {
        self.used += k;
        match self.limit {
            Some(limit) if self.used > limit => Err(Error::BudgetExceeded {
                adjoined: self.used,
                partial: Box::new(partial()),
            }),
            _ => Ok(()),
        }
    }
}

/// Adds the elements of `extra` not already in `s`; returns how many.
fn adjoin(s: &Submodule, extra: &[Element]) -> Result<(Submodule, usize)> {
    let mut out = s.clone();
    let mut count = 0;
    for x in extra {
        if !out.contains(x) {
            out = out.with_generator(x.clone())?;
            count += 1;
        }
    }
    Ok((out, count))
}

fn purify_pair(
    rep: &RepA2,
    s1: &Submodule,
    s2: &Submodule,
    budget: &mut Budget,
) -> Result<(Submodule, Submodule)> {
    let c1 = pure_closure(s1, rep.m1())?;
    budget.spend(c1.witnesses.len(), || partial(rep, &c1.submodule, s2))?;
    let s1 = c1.submodule;
    let image: Vec<Element> = s1.generators().iter().map(|x| rep.f.apply(x)).collect();
    let (s2, added) = adjoin(s2, &image)?;
    budget.spend(added, || partial(rep, &s1, &s2))?;
    let c2 = pure_closure(&s2, rep.m2())?;
    budget.spend(c2.witnesses.len(), || partial(rep, &s1, &c2.submodule))?;
    Ok((s1, c2.submodule))
}

/// Best-effort subrepresentation for a budget report: closes the second
/// component under `f` so the pair is valid.
fn partial(rep: &RepA2, s1: &Submodule, s2: &Submodule) -> SubRep {
    let image: Vec<Element> = s1.generators().iter().map(|x| rep.f.apply(x)).collect();
    let s2 = adjoin(s2, &image).map(|(s, _)| s).unwrap_or_else(|_| s2.clone());
    SubRep {
        ambient: rep.clone(),
        s1: s1.clone(),
        s2,
    }
}

fn check_seeds(rep: &RepA2, x1: &Submodule, x2: &Submodule) -> Result<()> {
    if x1.ambient() != rep.m1() || x2.ambient() != rep.m2() {
        return Err(Error::DomainMismatch(
            "seeds do not live in the representation".to_string(),
        ));
    }
    Ok(())
}

/// A pure subrepresentation containing the seeds: purify the first
/// component, close the second under `f`, purify it. The first component is
/// untouched by the second step, so one round reaches the fixpoint.
pub fn pure_subrep_containing(
    rep: &RepA2,
    x1: &Submodule,
    x2: &Submodule,
    cfg: &FiltrationConfig,
) -> Result<Grown> {
    check_seeds(rep, x1, x2)?;
    let mut budget = Budget {
        limit: cfg.max_adjoined,
        used: 0,
    };
    let (s1, s2) = purify_pair(rep, x1, x2, &mut budget)?;
    Ok(Grown {
        sub: SubRep::new(rep, s1, s2)?,
        adjoined: budget.used,
    })
}

/// A pure subrepresentation containing the seeds whose restricted map is
/// phantom. After purifying, `f ∘ ι_{S1}` is phantom and so extends along the
/// injective hull `S1 -> E(S1)` to some `h'`; adjoining `Im h'` to `S2` makes
/// the restriction factor through the projective `E(S1)`. Repeats until the
/// restriction is phantom.
pub fn phantom_pure_subrep(
    rep: &RepA2,
    x1: &Submodule,
    x2: &Submodule,
    cfg: &FiltrationConfig,
) -> Result<Grown> {
    check_seeds(rep, x1, x2)?;
    if !is_phantom(&rep.f) {
        return Err(Error::Precondition(
            "the representation is not phantom".to_string(),
        ));
    }
    let mut budget = Budget {
        limit: cfg.max_adjoined,
        used: 0,
    };
    let (mut s1, mut s2) = (x1.clone(), x2.clone());
    loop {
        let (p1, p2) = purify_pair(rep, &s1, &s2, &mut budget)?;
        let sub = SubRep::new(rep, p1, p2)?;
        let (restricted, _) = sub.as_rep()?;
        if is_phantom(&restricted.f) {
            return Ok(Grown {
                sub,
                adjoined: budget.used,
            });
        }
        let (a1, incl1) = sub.s1.present()?;
        let hull = injective_hull(&a1)?;
        let h = extend_along(&hull, &compose(&rep.f, &incl1)?)?.ok_or_else(|| {
            Error::Consistency("a phantom map does not extend along the injective hull".to_string())
        })?;
        let (grown, added) = adjoin(&sub.s2, &h.columns())?;
        budget.spend(added, || partial(rep, &sub.s1, &grown))?;
        s1 = sub.s1;
        s2 = grown;
    }
}

/// One link `S_i ⊆ S_{i+1}` of a filtration.
#[derive(Clone, Debug)]
pub struct FiltrationStep {
    pub sub: SubRep,
    /// Generators adjoined beyond the first fresh element (0 for the base).
    pub adjoined: usize,
    /// Fresh elements used as seeds (0 for the base and for steps that took
    /// the whole remaining quotient).
    pub seeds: usize,
    /// `|S_{i+1}/S_i|` as a representation (sum of both components).
    pub quotient_size: BigUint,
}

#[derive(Clone, Debug)]
pub struct Filtration {
    pub target: RepA2,
    pub config: FiltrationConfig,
    /// `steps[0]` is the zero subrepresentation; the last one is the target.
    pub steps: Vec<FiltrationStep>,
}

impl Filtration {
    /// Number of proper steps (the chain has `length + 1` members).
    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }
}

fn rep_size(s: &SubRep) -> BigUint {
    s.s1.cardinality() + s.s2.cardinality()
}

/// The first element of `M1` then `M2` (each in lexicographic order) outside
/// the current subrepresentation, as a seed in the quotient.
fn fresh_seed(q: &QuotientRep) -> Option<(Submodule, Submodule)> {
    let (q1, q2) = (&q.rep.m1(), &q.rep.m2());
    let first = q.first.projection.source();
    for x in first.elements() {
        let y = q.first.projection.apply(&x);
        if y.iter().any(|&a| a != 0) {
            return Some((Submodule::new(q1, vec![y]).ok()?, Submodule::zero(q2)));
        }
    }
    let second = q.second.projection.source();
    for x in second.elements() {
        let y = q.second.projection.apply(&x);
        if y.iter().any(|&a| a != 0) {
            return Some((Submodule::zero(q1), Submodule::new(q2, vec![y]).ok()?));
        }
    }
    None
}

/// `S + (lift of T)` for `T` a subrepresentation of `F / S`.
fn pull_back(s: &SubRep, q: &QuotientRep, t: &SubRep) -> Result<SubRep> {
    let lift1: Vec<Element> = t.s1.generators().iter().map(|y| q.first.lift(y)).collect();
    let lift2: Vec<Element> = t.s2.generators().iter().map(|y| q.second.lift(y)).collect();
    let s1 = s.s1.join(&Submodule::new(s.ambient.m1(), lift1)?)?.normalized()?;
    let s2 = s.s2.join(&Submodule::new(s.ambient.m2(), lift2)?)?.normalized()?;
    SubRep::new(&s.ambient, s1, s2)
}

/// Maps a seed of `F / S'` into `F / S` for `S ⊆ S'`, through lifts to `F`.
fn transfer(inner: &QuotientRep, outer: &QuotientRep, seed: &(Submodule, Submodule)) -> Result<(Submodule, Submodule)> {
    let t1: Vec<Element> = seed
        .0
        .generators()
        .iter()
        .map(|y| outer.first.projection.apply(&inner.first.lift(y)))
        .collect();
    let t2: Vec<Element> = seed
        .1
        .generators()
        .iter()
        .map(|y| outer.second.projection.apply(&inner.second.lift(y)))
        .collect();
    Ok((
        Submodule::new(outer.rep.m1(), t1)?,
        Submodule::new(outer.rep.m2(), t2)?,
    ))
}

/// Builds `0 = S_0 ⊂ S_1 ⊂ ... ⊂ S_λ = F`. Each step takes the whole
/// remaining quotient when it has at most `kappa` elements; otherwise it grows
/// a phantom pure subrepresentation of `F / S_i` from the first fresh element,
/// keeps adding fresh elements while the step stays within `kappa`, and pulls
/// the result back to `F`.
pub fn build_filtration(rep: &RepA2, cfg: &FiltrationConfig) -> Result<Filtration> {
    let ring = rep.m1().ring();
    if cfg.kappa < ring.modulus() {
        return Err(Error::Precondition(format!(
            "kappa {} is below the ring order {}",
            cfg.kappa,
            ring.modulus()
        )));
    }
    if !is_phantom(&rep.f) {
        return Err(Error::Precondition(
            "the representation is not phantom".to_string(),
        ));
    }
    let kappa = BigUint::from(cfg.kappa);
    let mut steps = vec![FiltrationStep {
        sub: SubRep::zero(rep),
        adjoined: 0,
        seeds: 0,
        quotient_size: BigUint::zero(),
    }];
    loop {
        let current = &steps.last().expect("nonempty").sub;
        if current.is_whole() {
            break;
        }
        let q = quotient_rep(current)?;
        if q.rep.cardinality() <= kappa {
            let quotient_size = q.rep.cardinality();
            steps.push(FiltrationStep {
                sub: SubRep::whole(rep).normalized()?,
                adjoined: 0,
                seeds: 0,
                quotient_size,
            });
            continue;
        }
        let seed = fresh_seed(&q).expect("a proper subrepresentation misses an element");
        let mut grown = phantom_pure_subrep(&q.rep, &seed.0, &seed.1, cfg)?;
        let mut seeds = 1;
        let mut adjoined = grown.adjoined;
        loop {
            let candidate = pull_back(current, &q, &grown.sub)?;
            if rep_size(&grown.sub) > kappa || candidate.is_whole() {
                break;
            }
            let inner = quotient_rep(&candidate)?;
            let next = fresh_seed(&inner).expect("candidate is proper");
            let (n1, n2) = transfer(&inner, &q, &next)?;
            let x1 = grown.sub.s1.join(&n1)?;
            let x2 = grown.sub.s2.join(&n2)?;
            let bigger = phantom_pure_subrep(&q.rep, &x1, &x2, cfg)?;
            if rep_size(&bigger.sub) > kappa {
                break;
            }
            adjoined += 1 + bigger.adjoined;
            seeds += 1;
            grown = bigger;
        }
        let sub = pull_back(current, &q, &grown.sub)?;
        steps.push(FiltrationStep {
            sub,
            adjoined,
            seeds,
            quotient_size: rep_size(&grown.sub),
        });
    }
    Ok(Filtration {
        target: rep.clone(),
        config: *cfg,
        steps,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    /// `S_0 = 0`.
    ZeroBase,
    /// `S_i ⊆ S_{i+1}` and the union is the target.
    Continuity,
    /// Every `S_i` is pure.
    Pure,
    /// Every induced quotient map is phantom.
    QuotientPhantom,
    /// Every quotient step is within the surfaced bound.
    SizeBound,
    /// Every inclusion is proper.
    StrictGrowth,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::ZeroBase,
        Condition::Continuity,
        Condition::Pure,
        Condition::QuotientPhantom,
        Condition::SizeBound,
        Condition::StrictGrowth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::ZeroBase => "zero-base",
            Condition::Continuity => "continuity",
            Condition::Pure => "pure",
            Condition::QuotientPhantom => "quotient-phantom",
            Condition::SizeBound => "size-bound",
            Condition::StrictGrowth => "strict-growth",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub condition: Condition,
    /// Index of the first offending chain member, if any.
    pub failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub verdicts: Vec<Verdict>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.failure.is_none())
    }

    pub fn failure(&self, c: Condition) -> Option<usize> {
        self.verdicts
            .iter()
            .find(|v| v.condition == c)
            .and_then(|v| v.failure)
    }
}

impl fmt::Display for FiltrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            match v.failure {
                None => writeln!(f, "{} ok", v.condition.name())?,
                Some(i) => writeln!(f, "{} fails at {i}", v.condition.name())?,
            }
        }
        Ok(())
    }
}

/// `S_{i+1} / S_i` as a representation.
fn step_quotient(lower: &SubRep, upper: &SubRep) -> Result<RepA2> {
    let (rep, incl) = upper.as_rep()?;
    let s1 = lower.s1.preimage_under(&incl.d)?;
    let s2 = lower.s2.preimage_under(&incl.s)?;
    Ok(quotient_rep(&SubRep::new(&rep, s1, s2)?)?.rep)
}

/// Re-checks every filtration condition from the chain alone.
pub fn verify_filtration(filtration: &Filtration) -> Result<FiltrationReport> {
    let steps = &filtration.steps;
    let target = &filtration.target;
    let ring = target.m1().ring();
    let first = |bad: &dyn Fn(usize) -> Result<bool>, range: std::ops::Range<usize>| -> Result<Option<usize>> {
        for i in range {
            if bad(i)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    };
    for s in steps {
        if s.sub.ambient != *target {
            return Err(Error::DomainMismatch(
                "a chain member lives in another representation".to_string(),
            ));
        }
    }
    let k = steps.len();
    let zero_base = match steps.first() {
        Some(s) if s.sub.is_zero() => None,
        _ => Some(0),
    };
    let continuity = match first(&|i| Ok(!steps[i + 1].sub.contains(&steps[i].sub)), 0..k.saturating_sub(1))? {
        Some(i) => Some(i + 1),
        None if k == 0 || !steps[k - 1].sub.is_whole() => Some(k.saturating_sub(1)),
        None => None,
    };
    let pure = first(&|i| Ok(!is_pure_subrep(&steps[i].sub)?), 0..k)?;
    let phantom = first(
        &|i| {
            if !steps[i + 1].sub.contains(&steps[i].sub) {
                return Ok(true);
            }
            Ok(!is_phantom(&step_quotient(&steps[i].sub, &steps[i + 1].sub)?.f))
        },
        0..k.saturating_sub(1),
    )?
    .map(|i| i + 1);
    let size = first(
        &|i| {
            let (lo, hi) = (&steps[i].sub, &steps[i + 1].sub);
            let actual = hi.s1.cardinality() / lo.s1.cardinality()
                + hi.s2.cardinality() / lo.s2.cardinality();
            let bound = filtration.config.step_bound(ring, steps[i + 1].adjoined);
            Ok(actual > bound || actual != steps[i + 1].quotient_size)
        },
        0..k.saturating_sub(1),
    )?
    .map(|i| i + 1);
    let strict = first(&|i| Ok(steps[i].sub.contains(&steps[i + 1].sub)), 0..k.saturating_sub(1))?
        .map(|i| i + 1);
    let verdicts = [zero_base, continuity, pure, phantom, size, strict]
        .into_iter()
        .zip(Condition::ALL)
        .map(|(failure, condition)| Verdict { condition, failure })
        .collect();
    Ok(FiltrationReport { verdicts })
}

/// Every module of a filtration chain, for callers that want the directed
/// union as a diagram.
pub fn chain_diagram(filtration: &Filtration) -> Result<crate::rep_a2::RepDiagram> {
    let mut reps = Vec::new();
    let mut incls = Vec::new();
    for s in &filtration.steps {
        let (r, i) = s.sub.as_rep()?;
        reps.push(r);
        incls.push(i);
    }
    if reps.len() == 1 {
        return Ok(crate::rep_a2::RepDiagram::single(&reps[0]));
    }
    let mut maps = Vec::new();
    for i in 0..reps.len() - 1 {
        // S_i -> S_{i+1} is the lift of the inclusion of S_i along that of S_{i+1}
        let d = crate::finmod::lift_along(&incls[i + 1].d, &incls[i].d)?
            .ok_or_else(|| Error::Consistency("chain is not increasing".to_string()))?;
        let s = crate::finmod::lift_along(&incls[i + 1].s, &incls[i].s)?
            .ok_or_else(|| Error::Consistency("chain is not increasing".to_string()))?;
        maps.push(crate::rep_a2::RepMorphism::new(&reps[i], &reps[i + 1], d, s)?);
    }
    crate::rep_a2::RepDiagram::chain(&maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::{is_pure_submodule, FiniteModule, ModuleMorphism};
    use crate::rep_a2::rep_colimit;

    fn ring(n: u64) -> Ring {
        Ring::new(n).unwrap()
    }

    fn module(r: &Ring, f: &[u64]) -> FiniteModule {
        FiniteModule::new(r, f.to_vec()).unwrap()
    }

    fn scalar_rep(r: &Ring, rank: usize, c: u64) -> RepA2 {
        let m = FiniteModule::free(r, rank);
        let rows: Vec<Vec<u64>> = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { c } else { 0 }).collect())
            .collect();
        RepA2::new(ModuleMorphism::new(&m, &m, &rows).unwrap())
    }

    fn cfg(r: &Ring, kappa: u64) -> FiltrationConfig {
        FiltrationConfig::new(r, kappa).unwrap()
    }

    #[test]
    fn kappa_below_ring_order_is_rejected() {
        assert!(FiltrationConfig::new(&ring(4), 3).is_err());
    }

    #[test]
    fn pure_subrep_examples() {
        let r = ring(4);
        let rep = scalar_rep(&r, 1, 2);
        let c = cfg(&r, 4);
        let zero = pure_subrep_containing(
            &rep,
            &Submodule::zero(rep.m1()),
            &Submodule::zero(rep.m2()),
            &c,
        )
        .unwrap();
        assert!(zero.sub.is_zero());
        let all = pure_subrep_containing(
            &rep,
            &Submodule::whole(rep.m1()),
            &Submodule::whole(rep.m2()),
            &c,
        )
        .unwrap();
        assert!(all.sub.is_whole());

        // 2: (Z/4)^2 -> Z/4 on the first coordinate
        let m1 = module(&r, &[4, 4]);
        let m2 = module(&r, &[4]);
        let rep = RepA2::new(ModuleMorphism::new(&m1, &m2, &[vec![2, 2]]).unwrap());
        let x1 = Submodule::new(&m1, vec![vec![1, 0]]).unwrap();
        let g = pure_subrep_containing(&rep, &x1, &Submodule::zero(&m2), &c).unwrap();
        assert!(g.sub.s1.same_as(&x1));
        assert!(g.sub.s2.is_whole());
        assert!(is_pure_submodule(&g.sub.s1, &m1).unwrap());
        assert!(is_pure_subrep(&g.sub).unwrap());
        // idempotent on its own output
        let again = pure_subrep_containing(&rep, &g.sub.s1, &g.sub.s2, &c).unwrap();
        assert!(again.sub.same_as(&g.sub));
        assert_eq!(again.adjoined, 0);
    }

    #[test]
    fn budget_is_reported_with_partial_result() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let rep = RepA2::new(ModuleMorphism::zero(&z4, &z4));
        let seed = Submodule::new(&z4, vec![vec![2]]).unwrap();
        let c = FiltrationConfig {
            kappa: 4,
            max_adjoined: Some(0),
        };
        match pure_subrep_containing(&rep, &seed, &Submodule::zero(&z4), &c) {
            Err(Error::BudgetExceeded { adjoined, partial }) => {
                assert_eq!(adjoined, 1);
                assert!(partial.s1.contains(&[2]));
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn phantom_pure_subrep_examples() {
        let r = ring(4);
        let rep = scalar_rep(&r, 2, 2);
        let c = cfg(&r, 4);
        let e1 = Submodule::new(rep.m1(), vec![vec![1, 0]]).unwrap();
        let g = phantom_pure_subrep(&rep, &e1, &Submodule::zero(rep.m2()), &c).unwrap();
        assert!(is_pure_subrep(&g.sub).unwrap());
        assert!(g.sub.s1.contains_submodule(&e1));
        assert!(is_phantom(&g.sub.as_rep().unwrap().0.f));

        let zero = phantom_pure_subrep(
            &rep,
            &Submodule::zero(rep.m1()),
            &Submodule::zero(rep.m2()),
            &c,
        )
        .unwrap();
        assert!(zero.sub.is_zero());

        let z2 = module(&r, &[2]);
        let bad = RepA2::new(ModuleMorphism::identity(&z2));
        assert!(phantom_pure_subrep(&bad, &Submodule::zero(&z2), &Submodule::zero(&z2), &c).is_err());
    }

    #[test]
    fn image_adjunction_repairs_a_non_phantom_restriction() {
        // Z/2 -> Z/4 -> Z/2 route: f = (Z/4 + Z/2 -> Z/2 + Z/4) phantom, seed
        // in the Z/2 summand whose restriction is an identity of Z/2
        let r = ring(4);
        let m1 = module(&r, &[2, 4]);
        let m2 = module(&r, &[2, 4]);
        // f(a, b) = (b mod 2, 0)
        let f = ModuleMorphism::new(&m1, &m2, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(is_phantom(&f));
        let rep = RepA2::new(f);
        let c = cfg(&r, 4);
        let seed = Submodule::new(&m1, vec![vec![0, 1]]).unwrap();
        let g = phantom_pure_subrep(&rep, &seed, &Submodule::zero(&m2), &c).unwrap();
        assert!(is_phantom(&g.sub.as_rep().unwrap().0.f));
        assert!(is_pure_subrep(&g.sub).unwrap());
    }

    fn check_full(rep: &RepA2, kappa: u64) -> Filtration {
        let r = rep.m1().ring().clone();
        let f = build_filtration(rep, &cfg(&r, kappa)).unwrap();
        let report = verify_filtration(&f).unwrap();
        assert!(report.passed(), "{report}");
        f
    }

    #[test]
    fn filtration_examples() {
        let r = ring(4);
        let small = scalar_rep(&r, 1, 2);
        let f = check_full(&small, 8);
        assert_eq!(f.length(), 1);

        let zero = RepA2::zero(&r);
        let f = check_full(&zero, 4);
        assert_eq!(f.length(), 0);

        let big = scalar_rep(&r, 3, 2);
        let f = check_full(&big, 4);
        assert!(f.length() >= 3, "length {}", f.length());
        // the directed union is the top member, up to a change of basis
        let colim = rep_colimit(&chain_diagram(&f).unwrap()).unwrap();
        let top = colim.structural.last().unwrap();
        assert!(top.d.is_isomorphism() && top.s.is_isomorphism());
        assert_eq!(colim.rep.m1(), big.m1());
    }

    #[test]
    fn corrupted_chains_are_caught() {
        let r = ring(4);
        let rep = scalar_rep(&r, 1, 2);
        let mut f = check_full(&rep, 4);
        let half1 = Submodule::new(rep.m1(), vec![vec![2]]).unwrap();
        let half2 = Submodule::new(rep.m2(), vec![vec![2]]).unwrap();
        let impure = SubRep::new(&rep, half1, half2).unwrap();
        f.steps.insert(
            1,
            FiltrationStep {
                sub: impure,
                adjoined: 0,
                seeds: 1,
                quotient_size: BigUint::from(4u32),
            },
        );
        let report = verify_filtration(&f).unwrap();
        assert_eq!(report.failure(Condition::Pure), Some(1));
        assert_eq!(report.failure(Condition::ZeroBase), None);

        let trivial = Filtration {
            target: rep.clone(),
            config: cfg(&r, 8),
            steps: vec![
                FiltrationStep {
                    sub: SubRep::zero(&rep),
                    adjoined: 0,
                    seeds: 0,
                    quotient_size: BigUint::zero(),
                },
                FiltrationStep {
                    sub: SubRep::whole(&rep),
                    adjoined: 0,
                    seeds: 0,
                    quotient_size: BigUint::from(8u32),
                },
            ],
        };
        assert!(verify_filtration(&trivial).unwrap().passed());
    }

    #[test]
    fn filtrations_over_composite_moduli() {
        for n in [6, 12] {
            let r = ring(n);
            let m = module(&r, &[n, n]);
            let m2 = module(&r, &[n / 2, n]);
            let f = ModuleMorphism::new(&m, &m2, &[vec![1, 0], vec![0, 2]]).unwrap();
            let rep = RepA2::new(f);
            for kappa in [n, 2 * n] {
                check_full(&rep, kappa);
            }
        }
    }
}
