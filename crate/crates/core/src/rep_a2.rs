//! Representations of the quiver `A2` (`• -> •`): a representation is a
//! single morphism `f: M1 -> M2`, and a morphism of representations is a
//! commuting square.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::finmod::{
    compose, direct_sum, is_pure_submodule, DirectedSystem, FiniteModule, ModuleMorphism,
    Quotient, Submodule, SystemMorphism,
};
use crate::ideals::{ideal_membership, MorphismIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepA2 {
    pub f: ModuleMorphism,
}

impl RepA2 {
    pub fn new(f: ModuleMorphism) -> RepA2 {
        RepA2 { f }
    }

    pub fn zero(ring: &crate::finmod::Ring) -> RepA2 {
        let z = FiniteModule::zero(ring);
        RepA2 {
            f: ModuleMorphism::zero(&z, &z),
        }
    }

    pub fn m1(&self) -> &FiniteModule {
        self.f.source()
    }

    pub fn m2(&self) -> &FiniteModule {
        self.f.target()
    }

    /// `|M1| + |M2|`, the size of the disjoint union.
    pub fn cardinality(&self) -> BigUint {
        self.m1().cardinality() + self.m2().cardinality()
    }

    pub fn is_zero(&self) -> bool {
        self.m1().is_zero() && self.m2().is_zero()
    }

    pub fn identity(&self) -> RepMorphism {
        RepMorphism {
            source: self.clone(),
            target: self.clone(),
            d: ModuleMorphism::identity(self.m1()),
            s: ModuleMorphism::identity(self.m2()),
        }
    }
}

/// A commuting square `g ∘ d = s ∘ f` from `f: M1 -> M2` to `g: N1 -> N2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub source: RepA2,
    pub target: RepA2,
    pub d: ModuleMorphism,
    pub s: ModuleMorphism,
}

impl RepMorphism {
    pub fn new(
        source: &RepA2,
        target: &RepA2,
        d: ModuleMorphism,
        s: ModuleMorphism,
    ) -> Result<RepMorphism> {
        if d.source() != source.m1()
            || d.target() != target.m1()
            || s.source() != source.m2()
            || s.target() != target.m2()
        {
            return Err(Error::DomainMismatch(
                "square components do not match the representations".to_string(),
            ));
        }
        if compose(&target.f, &d)? != compose(&s, &source.f)? {
            return Err(Error::NotCommutative("g ∘ d differs from s ∘ f".to_string()));
        }
        Ok(RepMorphism {
            source: source.clone(),
            target: target.clone(),
            d,
            s,
        })
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if other.target != self.source {
            return Err(Error::DomainMismatch("squares do not compose".to_string()));
        }
        RepMorphism::new(
            &other.source,
            &self.target,
            compose(&self.d, &other.d)?,
            compose(&self.s, &other.s)?,
        )
    }

    pub fn commutes(&self) -> bool {
        matches!(
            (compose(&self.target.f, &self.d), compose(&self.s, &self.source.f)),
            (Ok(a), Ok(b)) if a == b
        )
    }
}

/// A subrepresentation `(S1, S2)` with `f(S1) ⊆ S2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubRep {
    pub ambient: RepA2,
    pub s1: Submodule,
    pub s2: Submodule,
}

impl SubRep {
    pub fn new(ambient: &RepA2, s1: Submodule, s2: Submodule) -> Result<SubRep> {
        if s1.ambient() != ambient.m1() || s2.ambient() != ambient.m2() {
            return Err(Error::DomainMismatch(
                "submodules do not live in the representation".to_string(),
            ));
        }
        if !s2.contains_submodule(&s1.image_under(&ambient.f)?) {
            return Err(Error::InvalidModule("f(S1) is not inside S2".to_string()));
        }
        Ok(SubRep {
            ambient: ambient.clone(),
            s1,
            s2,
        })
    }

    pub fn zero(ambient: &RepA2) -> SubRep {
        SubRep {
            ambient: ambient.clone(),
            s1: Submodule::zero(ambient.m1()),
            s2: Submodule::zero(ambient.m2()),
        }
    }

    pub fn whole(ambient: &RepA2) -> SubRep {
        SubRep {
            ambient: ambient.clone(),
            s1: Submodule::whole(ambient.m1()),
            s2: Submodule::whole(ambient.m2()),
        }
    }

    /// The restricted morphism `S1 -> S2` with both inclusions, as a square
    /// into the ambient representation.
    pub fn as_rep(&self) -> Result<(RepA2, RepMorphism)> {
        let (m1, i1) = self.s1.present()?;
        let (m2, i2) = self.s2.present()?;
        let restricted = crate::finmod::lift_along(&i2, &compose(&self.ambient.f, &i1)?)?
            .ok_or_else(|| Error::InvalidModule("f(S1) is not inside S2".to_string()))?;
        debug_assert_eq!(restricted.source(), &m1);
        debug_assert_eq!(restricted.target(), &m2);
        let rep = RepA2::new(restricted);
        let inclusion = RepMorphism::new(&rep, &self.ambient, i1, i2)?;
        Ok((rep, inclusion))
    }

    pub fn cardinality(&self) -> BigUint {
        self.s1.cardinality() + self.s2.cardinality()
    }

    pub fn contains(&self, other: &SubRep) -> bool {
        self.s1.contains_submodule(&other.s1) && self.s2.contains_submodule(&other.s2)
    }

    pub fn same_as(&self, other: &SubRep) -> bool {
        self.contains(other) && other.contains(self)
    }

    pub fn is_whole(&self) -> bool {
        self.s1.is_whole() && self.s2.is_whole()
    }

    pub fn is_zero(&self) -> bool {
        self.s1.is_zero() && self.s2.is_zero()
    }

    /// Same subgroups with canonical generators.
    pub fn normalized(&self) -> Result<SubRep> {
        Ok(SubRep {
            ambient: self.ambient.clone(),
            s1: self.s1.normalized()?,
            s2: self.s2.normalized()?,
        })
    }
}

pub fn in_ideal_class(ideal: &MorphismIdeal, rep: &RepA2) -> Result<bool> {
    ideal_membership(ideal, &rep.f)
}

/// Both components pure in their ambient modules.
pub fn is_pure_subrep(sub: &SubRep) -> Result<bool> {
    Ok(is_pure_submodule(&sub.s1, sub.ambient.m1())?
        && is_pure_submodule(&sub.s2, sub.ambient.m2())?)
}

/// Quotient representation `f / f_S: M1/S1 -> M2/S2` with the projection square.
#[derive(Clone, Debug)]
pub struct QuotientRep {
    pub rep: RepA2,
    pub projection: RepMorphism,
    pub first: Quotient,
    pub second: Quotient,
}

pub fn quotient_rep(sub: &SubRep) -> Result<QuotientRep> {
    let first = Quotient::of(&sub.s1)?;
    let second = Quotient::of(&sub.s2)?;
    let f = &sub.ambient.f;
    let images: Vec<Vec<u64>> = first
        .section()
        .iter()
        .map(|x| second.projection.apply(&f.apply(x)))
        .collect();
    let induced = ModuleMorphism::from_images(&first.module, &second.module, &images)?;
    let rep = RepA2::new(induced);
    let projection = RepMorphism::new(
        &sub.ambient,
        &rep,
        first.projection.clone(),
        second.projection.clone(),
    )?;
    Ok(QuotientRep {
        rep,
        projection,
        first,
        second,
    })
}

/// Transition square between representations `from <= to` of a diagram.
#[derive(Clone, Debug)]
pub struct RepArrow {
    pub from: usize,
    pub to: usize,
    pub map: RepMorphism,
}

/// A finite directed diagram of representations; arrows are transitively
/// closed, identities implicit.
#[derive(Clone, Debug)]
pub struct RepDiagram {
    pub objects: Vec<RepA2>,
    pub arrows: Vec<RepArrow>,
}

impl RepDiagram {
    pub fn single(rep: &RepA2) -> RepDiagram {
        RepDiagram {
            objects: vec![rep.clone()],
            arrows: Vec::new(),
        }
    }

    /// A chain from consecutive squares, closed under composition.
    pub fn chain(maps: &[RepMorphism]) -> Result<RepDiagram> {
        let first = maps
            .first()
            .ok_or_else(|| Error::Dimension("empty chain".to_string()))?;
        let mut objects = vec![first.source.clone()];
        for m in maps {
            if &m.source != objects.last().expect("nonempty") {
                return Err(Error::DomainMismatch("chain squares do not compose".to_string()));
            }
            objects.push(m.target.clone());
        }
        let mut arrows = Vec::new();
        for i in 0..maps.len() {
            let mut acc = maps[i].clone();
            arrows.push(RepArrow {
                from: i,
                to: i + 1,
                map: acc.clone(),
            });
            for (j, next) in maps.iter().enumerate().skip(i + 1) {
                acc = next.after(&acc)?;
                arrows.push(RepArrow {
                    from: i,
                    to: j + 1,
                    map: acc.clone(),
                });
            }
        }
        Ok(RepDiagram { objects, arrows })
    }

    /// The diagram as a morphism between its source and target systems.
    pub fn as_system_morphism(&self) -> Result<SystemMorphism> {
        for a in &self.arrows {
            if a.from >= self.objects.len() || a.to >= self.objects.len() {
                return Err(Error::Dimension(format!(
                    "arrow {} -> {} out of range",
                    a.from, a.to
                )));
            }
            if a.map.source != self.objects[a.from] || a.map.target != self.objects[a.to] {
                return Err(Error::DomainMismatch(format!(
                    "arrow {} -> {} has the wrong endpoints",
                    a.from, a.to
                )));
            }
            if !a.map.commutes() {
                return Err(Error::NotCommutative(format!(
                    "square {} -> {}",
                    a.from, a.to
                )));
            }
        }
        let system = |pick: &dyn Fn(&RepA2) -> FiniteModule,
                      map: &dyn Fn(&RepMorphism) -> ModuleMorphism| DirectedSystem {
            objects: self.objects.iter().map(pick).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| crate::finmod::Arrow {
                    from: a.from,
                    to: a.to,
                    map: map(&a.map),
                })
                .collect(),
        };
        Ok(SystemMorphism {
            source: system(&|r| r.m1().clone(), &|m| m.d.clone()),
            target: system(&|r| r.m2().clone(), &|m| m.s.clone()),
            components: self.objects.iter().map(|r| r.f.clone()).collect(),
        })
    }
}

/// Colimit representation with its structural squares.
#[derive(Clone, Debug)]
pub struct RepColimit {
    pub rep: RepA2,
    pub structural: Vec<RepMorphism>,
}

/// Componentwise directed colimit with the induced connecting morphism.
pub fn rep_colimit(diagram: &RepDiagram) -> Result<RepColimit> {
    let induced = diagram.as_system_morphism()?.induced()?;
    let rep = RepA2::new(induced.map.clone());
    let structural = diagram
        .objects
        .iter()
        .zip(induced.source.structural.iter().zip(&induced.target.structural))
        .map(|(obj, (d, s))| RepMorphism::new(obj, &rep, d.clone(), s.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(RepColimit { rep, structural })
}

/// The split extension `0 -> (0: A -> B) -> (A+A -> B+B) -> (0: A -> B) -> 0`
/// whose middle map `t_1 ∘ f ∘ π_2` lies outside the ideal although both ends
/// lie inside.
#[derive(Clone, Debug)]
pub struct ExtensionCounterexample {
    pub middle: RepA2,
    pub sub: SubRep,
    pub sub_rep: RepA2,
    pub quotient: QuotientRep,
    pub middle_in_ideal: bool,
    pub sub_in_ideal: bool,
    pub quotient_in_ideal: bool,
}

pub fn extension_counterexample(
    ideal: &MorphismIdeal,
    f: &ModuleMorphism,
) -> Result<ExtensionCounterexample> {
    if ideal_membership(ideal, f)? {
        return Err(Error::Refused(format!(
            "the morphism lies in the {} ideal",
            ideal.tag()
        )));
    }
    let (a, b) = (f.source(), f.target());
    let aa = direct_sum(&[a.clone(), a.clone()])?;
    let bb = direct_sum(&[b.clone(), b.clone()])?;
    let middle_map = compose(&bb.injections[0], &compose(f, &aa.projections[1])?)?;
    let middle = RepA2::new(middle_map);
    let sub = SubRep::new(
        &middle,
        Submodule::image_of(&aa.injections[0]),
        Submodule::image_of(&bb.injections[0]),
    )?;
    let (sub_rep, _) = sub.as_rep()?;
    let quotient = quotient_rep(&sub)?;
    Ok(ExtensionCounterexample {
        middle_in_ideal: in_ideal_class(ideal, &middle)?,
        sub_in_ideal: in_ideal_class(ideal, &sub_rep)?,
        quotient_in_ideal: in_ideal_class(ideal, &quotient.rep)?,
        middle,
        sub,
        sub_rep,
        quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::Ring;

    fn ring(n: u64) -> Ring {
        Ring::new(n).unwrap()
    }

    fn module(r: &Ring, f: &[u64]) -> FiniteModule {
        FiniteModule::new(r, f.to_vec()).unwrap()
    }

    fn two_on_z4() -> (Ring, RepA2) {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let f = ModuleMorphism::new(&z4, &z4, &[vec![2]]).unwrap();
        (r, RepA2::new(f))
    }

    #[test]
    fn ideal_class_examples() {
        let (r, rep) = two_on_z4();
        let phantom = MorphismIdeal::Phantom(r.clone());
        assert!(in_ideal_class(&phantom, &rep).unwrap());
        let zero = RepA2::zero(&r);
        for ideal in [phantom.clone(), MorphismIdeal::Zero(r.clone())] {
            assert!(in_ideal_class(&ideal, &zero).unwrap());
        }
        let z2 = module(&r, &[2]);
        let id = RepA2::new(ModuleMorphism::identity(&z2));
        assert!(!in_ideal_class(&phantom, &id).unwrap());
        assert_eq!(rep.cardinality(), BigUint::from(8u32));
    }

    #[test]
    fn purity_examples() {
        let (_, rep) = two_on_z4();
        assert!(is_pure_subrep(&SubRep::whole(&rep)).unwrap());
        assert!(is_pure_subrep(&SubRep::zero(&rep)).unwrap());
        let half = Submodule::new(rep.m1(), vec![vec![2]]).unwrap();
        let sub = SubRep::new(&rep, half, Submodule::whole(rep.m2())).unwrap();
        assert!(!is_pure_subrep(&sub).unwrap());
    }

    #[test]
    fn subrep_must_be_closed_under_f() {
        let (_, rep) = two_on_z4();
        let whole = Submodule::whole(rep.m1());
        assert!(SubRep::new(&rep, whole, Submodule::zero(rep.m2())).is_err());
    }

    #[test]
    fn quotient_examples() {
        let (r, rep) = two_on_z4();
        let q = quotient_rep(&SubRep::zero(&rep)).unwrap();
        assert_eq!(q.rep, rep);
        let q = quotient_rep(&SubRep::whole(&rep)).unwrap();
        assert!(q.rep.is_zero());

        let half1 = Submodule::new(rep.m1(), vec![vec![2]]).unwrap();
        let half2 = Submodule::new(rep.m2(), vec![vec![2]]).unwrap();
        let q = quotient_rep(&SubRep::new(&rep, half1, half2).unwrap()).unwrap();
        let z2 = module(&r, &[2]);
        assert_eq!(q.rep.f, ModuleMorphism::zero(&z2, &z2));
        assert!(q.projection.d.is_surjective() && q.projection.s.is_surjective());
    }

    #[test]
    fn square_composition() {
        let (_, rep) = two_on_z4();
        let id = rep.identity();
        assert_eq!(id.after(&id).unwrap(), id);
        let bad = RepMorphism::new(
            &rep,
            &rep,
            ModuleMorphism::identity(rep.m1()),
            ModuleMorphism::zero(rep.m2(), rep.m2()),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn colimit_examples() {
        let (r, rep) = two_on_z4();
        let c = rep_colimit(&RepDiagram::single(&rep)).unwrap();
        assert_eq!(c.rep, rep);
        let constant = RepDiagram::chain(&[rep.identity(), rep.identity()]).unwrap();
        assert_eq!(rep_colimit(&constant).unwrap().rep, rep);

        // chain of subreps 0 ⊂ (Z/4 -> Z/4) ⊂ ambient (·2 on (Z/4)^2)
        let z44 = module(&r, &[4, 4]);
        let big = RepA2::new(ModuleMorphism::new(&z44, &z44, &[vec![2, 0], vec![0, 2]]).unwrap());
        let first = Submodule::new(&z44, vec![vec![1, 0]]).unwrap();
        let sub = SubRep::new(&big, first.clone(), first).unwrap();
        let (small, incl) = sub.as_rep().unwrap();
        let zero = SubRep::zero(&small);
        let (zrep, zincl) = zero.as_rep().unwrap();
        let chain = RepDiagram::chain(&[zincl, incl, big.identity()]).unwrap();
        let c = rep_colimit(&chain).unwrap();
        assert_eq!(c.rep, big);
        assert!(zrep.is_zero());
        let phantom = MorphismIdeal::Phantom(r);
        assert!(in_ideal_class(&phantom, &c.rep).unwrap());
    }

    #[test]
    fn counterexample_examples() {
        let r = ring(4);
        let z2 = module(&r, &[2]);
        let id = ModuleMorphism::identity(&z2);
        let phantom = MorphismIdeal::Phantom(r.clone());
        let ce = extension_counterexample(&phantom, &id).unwrap();
        assert_eq!(ce.middle.f.columns(), vec![vec![0, 0], vec![1, 0]]);
        assert!(!ce.middle_in_ideal && ce.sub_in_ideal && ce.quotient_in_ideal);
        assert!(ce.sub_rep.f.is_zero() && ce.quotient.rep.f.is_zero());

        let ce = extension_counterexample(&MorphismIdeal::Zero(r.clone()), &id).unwrap();
        assert!(!ce.middle_in_ideal);

        let err = extension_counterexample(&MorphismIdeal::Full(r), &id).unwrap_err();
        assert!(matches!(err, Error::Refused(_)));
    }
}
