//! Ideals of morphisms: the phantom ideal, factorization through projectives,
//! ideals generated by a finite set, and closure under directed colimits.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::Result;
use crate::finmod::{
    big, compose, free_cover, hom_group, is_projective, lift_along_detailed,
    FiniteModule, InducedColimit, ModuleMorphism, Ring, SystemMorphism,
};
use crate::linalg::{solve_congruences, IntMatrix};

/// A class of morphisms closed under sums and two-sided composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismIdeal {
    Zero(Ring),
    /// Every morphism.
    Full(Ring),
    /// Morphisms factoring through a projective.
    Phantom(Ring),
    /// The smallest ideal containing the generators.
    Generated {
        ring: Ring,
        generators: Vec<ModuleMorphism>,
    },
}

impl MorphismIdeal {
    pub fn generated(ring: &Ring, generators: Vec<ModuleMorphism>) -> Result<MorphismIdeal> {
        for g in &generators {
            ring.ensure_same(g.source().ring())?;
        }
        Ok(MorphismIdeal::Generated {
            ring: ring.clone(),
            generators,
        })
    }

    pub fn ring(&self) -> &Ring {
        match self {
            MorphismIdeal::Zero(r) | MorphismIdeal::Full(r) | MorphismIdeal::Phantom(r) => r,
            MorphismIdeal::Generated { ring, .. } => ring,
        }
    }

    pub fn contains(&self, f: &ModuleMorphism) -> Result<bool> {
        ideal_membership(self, f)
    }

    /// Short name used in reports.
    pub fn tag(&self) -> &'static str {
        match self {
            MorphismIdeal::Zero(_) => "zero",
            MorphismIdeal::Full(_) => "hom",
            MorphismIdeal::Phantom(_) => "phantom",
            MorphismIdeal::Generated { .. } => "generated",
        }
    }
}

/// `f = second ∘ first` with `first: M -> P`, `second: P -> N`, `P` projective.
#[derive(Clone, Debug)]
pub struct ProjectiveFactorization {
    pub projective: FiniteModule,
    pub first: ModuleMorphism,
    pub second: ModuleMorphism,
}

/// Why `f` does not factor through a projective: lifting along the free cover
/// of the target fails at this source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonFactorization {
    pub generator: usize,
}

/// Decides factorization through a projective by lifting along the free
/// cover of the target; `f` factors through some projective iff it lifts along
/// any epimorphism from a projective.
pub fn factor_through_projective(
    f: &ModuleMorphism,
) -> std::result::Result<ProjectiveFactorization, NonFactorization> {
    let (m, n) = (f.source(), f.target());
    if f.is_zero() {
        let p = FiniteModule::zero(m.ring());
        return Ok(ProjectiveFactorization {
            first: ModuleMorphism::zero(m, &p),
            second: ModuleMorphism::zero(&p, n),
            projective: p,
        });
    }
    if is_projective(m) {
        return Ok(ProjectiveFactorization {
            projective: m.clone(),
            first: ModuleMorphism::identity(m),
            second: f.clone(),
        });
    }
    let cover = free_cover(n);
    match lift_along_detailed(&cover, f).expect("free cover shares the target") {
        Ok(first) => Ok(ProjectiveFactorization {
            projective: cover.source().clone(),
            first,
            second: cover,
        }),
        Err(generator) => Err(NonFactorization { generator }),
    }
}

pub fn factors_through_projective(f: &ModuleMorphism) -> Option<ProjectiveFactorization> {
    factor_through_projective(f).ok()
}

/// Over `Z/n` every finite module is finitely presented, so the probe
/// `g = id_M` is already complete and phantom means factoring through a
/// projective.
pub fn is_phantom(f: &ModuleMorphism) -> bool {
    factor_through_projective(f).is_ok()
}

/// A probe `g: L -> M` for which `f ∘ g` does not factor through a projective.
#[derive(Clone, Debug)]
pub struct ProbeFailure {
    pub probe: ModuleMorphism,
    pub certificate: NonFactorization,
}

/// The phantom definition checked literally over the probe family: every
/// generator of `Hom(Z/d, M)` for `d | n`, then `id_M`. Factoring through a
/// projective is closed under sums, so generators suffice.
pub fn phantom_probe_failure(f: &ModuleMorphism) -> Option<ProbeFailure> {
    let m = f.source();
    let mut probes: Vec<ModuleMorphism> = Vec::new();
    for d in m.ring().divisors().into_iter().skip(1) {
        let l = FiniteModule::cyclic(m.ring(), d).expect("divisor of n");
        probes.extend(hom_group(&l, m).expect("same ring"));
    }
    probes.push(ModuleMorphism::identity(m));
    probes.into_iter().find_map(|g| {
        let composite = compose(f, &g).expect("probe lands in the source");
        factor_through_projective(&composite)
            .err()
            .map(|certificate| ProbeFailure {
                probe: g,
                certificate,
            })
    })
}

/// Membership of `f` in an ideal. For a generated ideal, `f` must lie in the
/// subgroup of `Hom(M, N)` spanned by `h ∘ g_i ∘ t` with `t`, `h` ranging over
/// hom-group generators.
pub fn ideal_membership(ideal: &MorphismIdeal, f: &ModuleMorphism) -> Result<bool> {
    ideal.ring().ensure_same(f.source().ring())?;
    match ideal {
        MorphismIdeal::Zero(_) => Ok(f.is_zero()),
        MorphismIdeal::Full(_) => Ok(true),
        MorphismIdeal::Phantom(_) => Ok(is_phantom(f)),
        MorphismIdeal::Generated { generators, .. } => {
            if f.is_zero() {
                return Ok(true);
            }
            let (m, n) = (f.source(), f.target());
            let mut span: BTreeSet<Vec<u64>> = BTreeSet::new();
            for g in generators {
                let inner: Vec<ModuleMorphism> = hom_group(m, g.source())?
                    .iter()
                    .map(|t| compose(g, t))
                    .collect::<Result<_>>()?;
                for h in hom_group(g.target(), n)? {
                    for gt in &inner {
                        let c = compose(&h, gt)?;
                        if !c.is_zero() {
                            span.insert(flatten(&c));
                        }
                    }
                }
            }
            in_span(&span, f)
        }
    }
}

/// Entries in row-major order.
fn flatten(f: &ModuleMorphism) -> Vec<u64> {
    f.rows().concat()
}

fn in_span(span: &BTreeSet<Vec<u64>>, f: &ModuleMorphism) -> Result<bool> {
    let target = flatten(f);
    if span.is_empty() {
        return Ok(target.iter().all(|&a| a == 0));
    }
    let cols = f.source().rank();
    let moduli: Vec<BigInt> = (0..target.len())
        .map(|e| big(f.target().factors()[e / cols]))
        .collect();
    let span: Vec<&Vec<u64>> = span.iter().collect();
    let a = IntMatrix::from_fn(target.len(), span.len(), |e, k| big(span[k][e]));
    let b: Vec<BigInt> = target.into_iter().map(big).collect();
    Ok(solve_congruences(&a, &b, &moduli)?.is_some())
}

/// Result of testing closure under a directed colimit.
#[derive(Clone, Debug)]
pub struct ClosureCheck {
    /// Whether every component lay in the ideal to begin with.
    pub components_in_ideal: bool,
    pub colimits: InducedColimit,
    /// Whether the induced morphism lies in the ideal.
    pub member: bool,
}

impl ClosureCheck {
    pub fn induced(&self) -> &ModuleMorphism {
        &self.colimits.map
    }
}

/// Computes `lim f_i` and tests it against the ideal. Components outside the
/// ideal are reported rather than rejected.
pub fn closed_under_direct_limits_check(
    ideal: &MorphismIdeal,
    diagram: &SystemMorphism,
) -> Result<ClosureCheck> {
    let mut components_in_ideal = true;
    for f in &diagram.components {
        components_in_ideal &= ideal_membership(ideal, f)?;
    }
    let colimits = diagram.induced()?;
    let member = ideal_membership(ideal, &colimits.map)?;
    Ok(ClosureCheck {
        components_in_ideal,
        colimits,
        member,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::DirectedSystem;

    fn ring(n: u64) -> Ring {
        Ring::new(n).unwrap()
    }

    fn module(r: &Ring, f: &[u64]) -> FiniteModule {
        FiniteModule::new(r, f.to_vec()).unwrap()
    }

    fn check(fact: &ProjectiveFactorization, f: &ModuleMorphism) {
        assert!(is_projective(&fact.projective));
        assert_eq!(&compose(&fact.second, &fact.first).unwrap(), f);
    }

    #[test]
    fn factorization_examples() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let z2 = module(&r, &[2]);
        let two = ModuleMorphism::new(&z4, &z4, &[vec![2]]).unwrap();
        let fact = factors_through_projective(&two).unwrap();
        assert_eq!(fact.projective, z4);
        assert_eq!(fact.first, ModuleMorphism::identity(&z4));
        check(&fact, &two);

        let zero = ModuleMorphism::zero(&z2, &z2);
        let fact = factors_through_projective(&zero).unwrap();
        assert!(fact.projective.is_zero());
        check(&fact, &zero);

        let id = ModuleMorphism::identity(&z2);
        assert!(factors_through_projective(&id).is_none());
        assert!(!is_phantom(&id));
        assert!(is_phantom(&two));
        let failure = phantom_probe_failure(&id).unwrap();
        assert_eq!(failure.probe.source(), &z2);
    }

    #[test]
    fn phantom_through_projective_middle() {
        // anything into a projective target factors through it
        let r = ring(4);
        let z2 = module(&r, &[2]);
        let z4 = module(&r, &[4]);
        let incl = ModuleMorphism::new(&z2, &z4, &[vec![2]]).unwrap();
        assert!(is_phantom(&incl));
        let proj = ModuleMorphism::new(&z4, &z2, &[vec![1]]).unwrap();
        assert!(is_phantom(&proj));
        assert!(is_phantom(&compose(&proj, &incl).unwrap()));
    }

    #[test]
    fn probe_family_agrees_with_identity_probe() {
        let r = ring(12);
        let m = module(&r, &[2, 6]);
        let n = module(&r, &[6, 12]);
        for f in hom_group(&m, &n).unwrap() {
            assert_eq!(phantom_probe_failure(&f).is_none(), is_phantom(&f));
        }
    }

    #[test]
    fn membership_examples() {
        let r = ring(4);
        let z2 = module(&r, &[2]);
        let z4 = module(&r, &[4]);
        let id2 = ModuleMorphism::identity(&z2);
        let id4 = ModuleMorphism::identity(&z4);
        let zero = ModuleMorphism::zero(&z2, &z4);

        for ideal in [
            MorphismIdeal::Zero(r.clone()),
            MorphismIdeal::Full(r.clone()),
            MorphismIdeal::Phantom(r.clone()),
            MorphismIdeal::generated(&r, vec![id2.clone()]).unwrap(),
        ] {
            assert!(ideal_membership(&ideal, &zero).unwrap(), "{}", ideal.tag());
        }
        let by_id2 = MorphismIdeal::generated(&r, vec![id2.clone()]).unwrap();
        assert!(ideal_membership(&by_id2, &id2).unwrap());
        let by_id4 = MorphismIdeal::generated(&r, vec![id4]).unwrap();
        assert!(!ideal_membership(&by_id4, &id2).unwrap());
        let other = ring(6);
        assert!(ideal_membership(&MorphismIdeal::Full(other), &id2).is_err());
    }

    #[test]
    fn generated_by_projectives_matches_phantom() {
        let r = ring(12);
        let gens = r
            .local_factors()
            .into_iter()
            .map(|q| ModuleMorphism::identity(&module(&r, &[q])))
            .collect();
        let by_projectives = MorphismIdeal::generated(&r, gens).unwrap();
        let m = module(&r, &[2, 6]);
        let n = module(&r, &[6]);
        let homs = hom_group(&m, &n).unwrap();
        for f in &homs {
            assert_eq!(
                ideal_membership(&by_projectives, f).unwrap(),
                is_phantom(f),
                "{f:?}"
            );
        }
    }

    #[test]
    fn ideal_is_two_sided() {
        let r = ring(4);
        let z2 = module(&r, &[2]);
        let z4 = module(&r, &[4]);
        let proj = ModuleMorphism::new(&z4, &z2, &[vec![1]]).unwrap();
        let ideal = MorphismIdeal::generated(&r, vec![proj.clone()]).unwrap();
        let m = module(&r, &[2, 4]);
        for t in hom_group(&m, &z4).unwrap() {
            assert!(ideal_membership(&ideal, &compose(&proj, &t).unwrap()).unwrap());
        }
    }

    #[test]
    fn closure_examples() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let z2 = module(&r, &[2]);
        let phantom = MorphismIdeal::Phantom(r.clone());

        let two = ModuleMorphism::new(&z4, &z4, &[vec![2]]).unwrap();
        let single = SystemMorphism {
            source: DirectedSystem::single(&z4),
            target: DirectedSystem::single(&z4),
            components: vec![two.clone()],
        };
        let c = closed_under_direct_limits_check(&phantom, &single).unwrap();
        assert!(c.member && c.components_in_ideal);
        assert_eq!(c.induced(), &two);

        // chain Z/4 -2-> Z/4 -1-> Z/4 mapped by 2 into the identity chain
        let id4 = ModuleMorphism::identity(&z4);
        let chain = DirectedSystem::chain(&[two.clone(), id4.clone()]).unwrap();
        let ids = DirectedSystem::chain(&[two.clone(), id4.clone()]).unwrap();
        let sys = SystemMorphism {
            source: chain,
            target: ids,
            components: vec![two.clone(); 3],
        };
        let c = closed_under_direct_limits_check(&phantom, &sys).unwrap();
        assert!(c.member);

        let id2 = ModuleMorphism::identity(&z2);
        let constant = DirectedSystem::chain(&[id2.clone(), id2.clone()]).unwrap();
        let sys = SystemMorphism {
            source: constant.clone(),
            target: constant,
            components: vec![id2.clone(); 3],
        };
        let c = closed_under_direct_limits_check(&MorphismIdeal::Zero(r.clone()), &sys).unwrap();
        assert!(!c.member && !c.components_in_ideal);
        assert_eq!(c.induced(), &id2);
    }
}
