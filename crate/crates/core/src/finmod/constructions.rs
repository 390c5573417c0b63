//! Universal constructions. Each one is a cokernel of a relation matrix,
//! brought into canonical form by [`Presented`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{big, compose, valuation, Element, FiniteModule, ModuleMorphism, Ring, Submodule};
use crate::error::{Error, Result};
use crate::linalg::{present, IntMatrix};

/// `Z^g / <relations>` in canonical form, remembering how the `g` raw
/// generators map in and how each canonical generator is written in them.
#[derive(Clone, Debug)]
pub struct Presented {
    pub module: FiniteModule,
    relations: IntMatrix,
    projection: Vec<Element>,
    section: Vec<Vec<u64>>,
}

impl Presented {
    /// `relations` is `g x r`; its columns are the relations among the raw
    /// generators. The quotient must be annihilated by the ring modulus.
    pub fn new(ring: &Ring, relations: &IntMatrix) -> Result<Presented> {
        let p = present(relations)?;
        let factors: Vec<u64> = p
            .factors
            .iter()
            .map(|d| {
                u64::try_from(d.clone())
                    .map_err(|_| Error::InvalidModule(format!("invariant factor {d} too large")))
            })
            .collect::<Result<_>>()?;
        let module = FiniteModule::new(ring, factors)?;
        let g = relations.rows();
        let projection = (0..g)
            .map(|j| module.reduce(&p.projection.column(j)))
            .collect();
        let n = ring.modulus();
        let section = (0..module.rank())
            .map(|k| {
                p.section
                    .column(k)
                    .iter()
                    .map(|x| super::reduce_big(x, n))
                    .collect()
            })
            .collect();
        Ok(Presented {
            module,
            relations: relations.clone(),
            projection,
            section,
        })
    }

    /// Canonical form of `Z/o_1 + ... + Z/o_g`.
    pub fn cyclic_sum(ring: &Ring, orders: &[u64]) -> Result<Presented> {
        let diag: Vec<BigInt> = orders.iter().map(|&o| big(o)).collect();
        Presented::new(ring, &IntMatrix::diagonal(&diag))
    }

    pub fn raw_rank(&self) -> usize {
        self.relations.rows()
    }

    /// Canonical coordinates of raw generator `j`.
    pub fn generator_image(&self, j: usize) -> &Element {
        &self.projection[j]
    }

    /// Canonical coordinates of a raw integer combination.
    pub fn project(&self, raw: &[u64]) -> Element {
        let mut acc = self.module.zero_element();
        for (j, &c) in raw.iter().enumerate() {
            if c != 0 {
                acc = self.module.add(&acc, &self.module.scale(c, &self.projection[j]));
            }
        }
        acc
    }

    /// Raw combination (reduced mod `n`) representing canonical generator `k`.
    pub fn section(&self, k: usize) -> &[u64] {
        &self.section[k]
    }

    /// The morphism out of the presented module sending raw generator `j` to
    /// `images[j]`. Fails if the images violate a relation.
    pub fn map_out(&self, target: &FiniteModule, images: &[Element]) -> Result<ModuleMorphism> {
        if images.len() != self.raw_rank() {
            return Err(Error::Dimension(format!(
                "{} images for {} raw generators",
                images.len(),
                self.raw_rank()
            )));
        }
        for x in images {
            target.check_element(x)?;
        }
        let combine = |coeffs: &dyn Fn(usize) -> BigInt| -> Vec<BigInt> {
            let mut acc = vec![BigInt::zero(); target.rank()];
            for (j, img) in images.iter().enumerate() {
                let c = coeffs(j);
                if c.is_zero() {
                    continue;
                }
                for (a, &x) in acc.iter_mut().zip(img) {
                    *a += &c * big(x);
                }
            }
            acc
        };
        for r in 0..self.relations.cols() {
            let value = target.reduce(&combine(&|j| self.relations[(j, r)].clone()));
            if value.iter().any(|&a| a != 0) {
                return Err(Error::DomainMismatch(format!(
                    "images violate relation {r} of the presentation"
                )));
            }
        }
        let columns: Vec<Vec<BigInt>> = (0..self.module.rank())
            .map(|k| combine(&|j| big(self.section[k][j])))
            .collect();
        ModuleMorphism::from_big_images(&self.module, target, &columns)
    }
}

/// `M / S` with its projection and a set-theoretic section of generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FiniteModule,
    pub projection: ModuleMorphism,
    section: Vec<Element>,
}

impl Quotient {
    pub fn of(sub: &Submodule) -> Result<Quotient> {
        let ambient = sub.ambient();
        let mut relations = IntMatrix::diagonal(&ambient.factors_big());
        relations = relations.hstack(&sub.generator_matrix())?;
        let presented = Presented::new(ambient.ring(), &relations)?;
        let images: Vec<Element> = (0..ambient.rank())
            .map(|j| presented.generator_image(j).clone())
            .collect();
        let projection = ModuleMorphism::from_images(ambient, &presented.module, &images)?;
        let section = (0..presented.module.rank())
            .map(|k| {
                let raw = presented.section(k);
                let coords: Vec<BigInt> = raw.iter().map(|&c| big(c)).collect();
                ambient.reduce(&coords)
            })
            .collect();
        Ok(Quotient {
            module: presented.module,
            projection,
            section,
        })
    }

    /// A preimage of a quotient element.
    pub fn lift(&self, y: &[u64]) -> Element {
        let ambient = self.projection.source();
        let mut acc = ambient.zero_element();
        for (k, &c) in y.iter().enumerate() {
            if c != 0 {
                acc = ambient.add(&acc, &ambient.scale(c, &self.section[k]));
            }
        }
        acc
    }

    /// Preimages of the canonical generators of the quotient.
    pub fn section(&self) -> &[Element] {
        &self.section
    }
}

/// Cokernel with its projection.
pub fn cokernel(f: &ModuleMorphism) -> Result<Quotient> {
    Quotient::of(&Submodule::image_of(f))
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: FiniteModule,
    pub embedding: ModuleMorphism,
}

pub fn kernel(f: &ModuleMorphism) -> Result<Kernel> {
    let source = f.source();
    let mut gens: Vec<Element> = Vec::new();
    for x in f.kernel_lattice() {
        let x = source.reduce(&x);
        if x.iter().any(|&a| a != 0) && !gens.contains(&x) {
            gens.push(x);
        }
    }
    let (module, embedding) = Submodule::new(source, gens)?.present()?;
    Ok(Kernel { module, embedding })
}

/// Image with its inclusion into the target.
pub fn image(f: &ModuleMorphism) -> Result<(FiniteModule, ModuleMorphism)> {
    Submodule::image_of(f).present()
}

/// `M_1 + ... + M_k` with injections and projections, summands in block
/// order.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FiniteModule,
    pub injections: Vec<ModuleMorphism>,
    pub projections: Vec<ModuleMorphism>,
}

pub fn direct_sum(summands: &[FiniteModule]) -> Result<DirectSum> {
    let ring = match summands.first() {
        Some(m) => m.ring().clone(),
        None => {
            return Err(Error::Dimension("empty direct sum".to_string()));
        }
    };
    for m in summands {
        ring.ensure_same(m.ring())?;
    }
    let orders: Vec<u64> = summands.iter().flat_map(|m| m.factors().to_vec()).collect();
    let presented = Presented::cyclic_sum(&ring, &orders)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for m in summands {
        let images: Vec<Element> = (0..m.rank())
            .map(|j| presented.generator_image(offset + j).clone())
            .collect();
        injections.push(ModuleMorphism::from_images(m, &presented.module, &images)?);
        let raw_images: Vec<Element> = (0..orders.len())
            .map(|j| {
                if j >= offset && j < offset + m.rank() {
                    m.basis_element(j - offset)
                } else {
                    m.zero_element()
                }
            })
            .collect();
        projections.push(presented.map_out(m, &raw_images)?);
        offset += m.rank();
    }
    Ok(DirectSum {
        module: presented.module,
        injections,
        projections,
    })
}

/// Pushout of `u: K -> M` and `v: K -> K'`:
/// `X = (K' + M) / {(v(k), -u(k))}` with `u': K' -> X` and `v': M -> X`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: FiniteModule,
    /// `u': K' -> X`
    pub from_first: ModuleMorphism,
    /// `v': M -> X`
    pub from_second: ModuleMorphism,
    u: ModuleMorphism,
    v: ModuleMorphism,
    presented: Presented,
}

pub fn pushout(u: &ModuleMorphism, v: &ModuleMorphism) -> Result<Pushout> {
    if u.source() != v.source() {
        return Err(Error::DomainMismatch(format!(
            "pushout legs start at {:?} and {:?}",
            u.source(),
            v.source()
        )));
    }
    let (k, m, k2) = (u.source(), u.target(), v.target());
    let g = k2.rank() + m.rank();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for (i, &d) in k2.factors().iter().chain(m.factors()).enumerate() {
        let mut c = vec![BigInt::zero(); g];
        c[i] = big(d);
        cols.push(c);
    }
    for j in 0..k.rank() {
        let mut c: Vec<BigInt> = v.column(j).into_iter().map(big).collect();
        c.extend(u.column(j).into_iter().map(|x| -big(x)));
        cols.push(c);
    }
    let presented = Presented::new(k.ring(), &IntMatrix::from_columns(g, &cols))?;
    let first: Vec<Element> = (0..k2.rank())
        .map(|j| presented.generator_image(j).clone())
        .collect();
    let second: Vec<Element> = (0..m.rank())
        .map(|j| presented.generator_image(k2.rank() + j).clone())
        .collect();
    Ok(Pushout {
        object: presented.module.clone(),
        from_first: ModuleMorphism::from_images(k2, &presented.module, &first)?,
        from_second: ModuleMorphism::from_images(m, &presented.module, &second)?,
        u: u.clone(),
        v: v.clone(),
        presented,
    })
}

impl Pushout {
    /// The mediating morphism `X -> Y` for a cone `a: K' -> Y`, `b: M -> Y`
    /// with `a ∘ v = b ∘ u`.
    pub fn induced(&self, a: &ModuleMorphism, b: &ModuleMorphism) -> Result<ModuleMorphism> {
        if a.source() != self.v.target() || b.source() != self.u.target() || a.target() != b.target()
        {
            return Err(Error::DomainMismatch("cone does not fit the pushout".to_string()));
        }
        if compose(a, &self.v)? != compose(b, &self.u)? {
            return Err(Error::NotCommutative("pushout cone".to_string()));
        }
        let images: Vec<Element> = a.columns().into_iter().chain(b.columns()).collect();
        self.presented.map_out(a.target(), &images)
    }
}

/// Transition map `objects[from] -> objects[to]` of a directed system.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub map: ModuleMorphism,
}

/// A finite directed poset of modules. The arrows list every strict
/// relation `i < j` (transitively closed); identities are implicit.
#[derive(Clone, Debug)]
pub struct DirectedSystem {
    pub objects: Vec<FiniteModule>,
    pub arrows: Vec<Arrow>,
}

impl DirectedSystem {
    /// A chain `M_0 -> M_1 -> ... -> M_k` from consecutive maps, closed
    /// under composition.
    pub fn chain(maps: &[ModuleMorphism]) -> Result<DirectedSystem> {
        let first = maps
            .first()
            .ok_or_else(|| Error::Dimension("empty chain".to_string()))?;
        let mut objects = vec![first.source().clone()];
        for f in maps {
            if f.source() != objects.last().expect("nonempty") {
                return Err(Error::DomainMismatch("chain maps do not compose".to_string()));
            }
            objects.push(f.target().clone());
        }
        let mut arrows = Vec::new();
        for i in 0..maps.len() {
            let mut acc = maps[i].clone();
            arrows.push(Arrow {
                from: i,
                to: i + 1,
                map: acc.clone(),
            });
            for (j, next) in maps.iter().enumerate().skip(i + 1) {
                acc = compose(next, &acc)?;
                arrows.push(Arrow {
                    from: i,
                    to: j + 1,
                    map: acc.clone(),
                });
            }
        }
        Ok(DirectedSystem { objects, arrows })
    }

    pub fn single(m: &FiniteModule) -> DirectedSystem {
        DirectedSystem {
            objects: vec![m.clone()],
            arrows: Vec::new(),
        }
    }

    pub fn arrow(&self, from: usize, to: usize) -> Option<&ModuleMorphism> {
        self.arrows
            .iter()
            .find(|a| a.from == from && a.to == to)
            .map(|a| &a.map)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.arrow(i, j).is_some()
    }

    /// Checks shapes, antisymmetry, functoriality and directedness.
    pub fn validate(&self) -> Result<()> {
        let Some(first) = self.objects.first() else {
            return Err(Error::NotDirected("no objects".to_string()));
        };
        let k = self.objects.len();
        let mut seen = BTreeSet::new();
        for a in &self.arrows {
            if a.from >= k || a.to >= k {
                return Err(Error::Dimension(format!(
                    "arrow {} -> {} out of range",
                    a.from, a.to
                )));
            }
            first.ring().ensure_same(a.map.source().ring())?;
            if a.map.source() != &self.objects[a.from] || a.map.target() != &self.objects[a.to] {
                return Err(Error::DomainMismatch(format!(
                    "arrow {} -> {} has the wrong endpoints",
                    a.from, a.to
                )));
            }
            if a.from == a.to {
                return Err(Error::NotFunctorial(format!(
                    "explicit arrow {0} -> {0}; identities are implicit",
                    a.from
                )));
            }
            if !seen.insert((a.from, a.to)) {
                return Err(Error::NotFunctorial(format!(
                    "duplicate arrow {} -> {}",
                    a.from, a.to
                )));
            }
        }
        for a in &self.arrows {
            if seen.contains(&(a.to, a.from)) {
                return Err(Error::NotFunctorial(format!(
                    "arrows in both directions between {} and {}",
                    a.from, a.to
                )));
            }
            for b in self.arrows.iter().filter(|b| b.from == a.to) {
                let composite = compose(&b.map, &a.map)?;
                match self.arrow(a.from, b.to) {
                    Some(direct) if *direct == composite => {}
                    Some(_) => {
                        return Err(Error::NotFunctorial(format!(
                            "g_{{{},{}}} ∘ g_{{{},{}}} differs from g_{{{},{}}}",
                            b.from, b.to, a.from, a.to, a.from, b.to
                        )))
                    }
                    None => {
                        return Err(Error::NotFunctorial(format!(
                            "missing arrow {} -> {}",
                            a.from, b.to
                        )))
                    }
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                if !(0..k).any(|t| self.leq(i, t) && self.leq(j, t)) {
                    return Err(Error::NotDirected(format!(
                        "objects {i} and {j} have no upper bound"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Offsets of each object's generators in the direct sum of all objects.
    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.objects.len());
        let mut acc = 0;
        for m in &self.objects {
            out.push(acc);
            acc += m.rank();
        }
        out
    }
}

/// Colimit of a directed system with its structural maps.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub object: FiniteModule,
    pub structural: Vec<ModuleMorphism>,
    system: DirectedSystem,
    presented: Presented,
}

/// `(+_i M_i) / <x_i - g_ij(x_i)>`.
pub fn directed_colimit(system: &DirectedSystem) -> Result<Colimit> {
    system.validate()?;
    let offsets = system.offsets();
    let g: usize = system.objects.iter().map(FiniteModule::rank).sum();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for (i, m) in system.objects.iter().enumerate() {
        for (j, &d) in m.factors().iter().enumerate() {
            let mut c = vec![BigInt::zero(); g];
            c[offsets[i] + j] = big(d);
            cols.push(c);
        }
    }
    for a in &system.arrows {
        for x in 0..system.objects[a.from].rank() {
            let mut c = vec![BigInt::zero(); g];
            c[offsets[a.from] + x] += 1;
            for (y, v) in a.map.column(x).into_iter().enumerate() {
                c[offsets[a.to] + y] -= big(v);
            }
            cols.push(c);
        }
    }
    let ring = system.objects[0].ring();
    let presented = Presented::new(ring, &IntMatrix::from_columns(g, &cols))?;
    let structural = system
        .objects
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let images: Vec<Element> = (0..m.rank())
                .map(|j| presented.generator_image(offsets[i] + j).clone())
                .collect();
            ModuleMorphism::from_images(m, &presented.module, &images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Colimit {
        object: presented.module.clone(),
        structural,
        system: system.clone(),
        presented,
    })
}

impl Colimit {
    pub fn system(&self) -> &DirectedSystem {
        &self.system
    }

    /// The mediating morphism for a compatible cone `c_i: M_i -> Y`.
    pub fn induced(&self, cone: &[ModuleMorphism]) -> Result<ModuleMorphism> {
        if cone.len() != self.system.objects.len() {
            return Err(Error::Dimension("cone has the wrong length".to_string()));
        }
        let target = cone[0].target();
        for (i, c) in cone.iter().enumerate() {
            if c.source() != &self.system.objects[i] || c.target() != target {
                return Err(Error::DomainMismatch(format!("cone leg {i} has wrong endpoints")));
            }
        }
        for a in &self.system.arrows {
            if compose(&cone[a.to], &a.map)? != cone[a.from] {
                return Err(Error::NotCommutative(format!(
                    "cone legs {} and {} disagree",
                    a.from, a.to
                )));
            }
        }
        let images: Vec<Element> = cone.iter().flat_map(ModuleMorphism::columns).collect();
        self.presented.map_out(target, &images)
    }
}

/// A natural transformation between two directed systems on the same poset:
/// components `f_i: N_i -> M_i` with `f_j ∘ g_ij = h_ij ∘ f_i`.
#[derive(Clone, Debug)]
pub struct SystemMorphism {
    pub source: DirectedSystem,
    pub target: DirectedSystem,
    pub components: Vec<ModuleMorphism>,
}

/// Both colimits of a [`SystemMorphism`] and the morphism induced between them.
#[derive(Clone, Debug)]
pub struct InducedColimit {
    pub source: Colimit,
    pub target: Colimit,
    pub map: ModuleMorphism,
}

impl SystemMorphism {
    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.target.validate()?;
        let k = self.source.objects.len();
        if self.target.objects.len() != k || self.components.len() != k {
            return Err(Error::Dimension("systems have different shapes".to_string()));
        }
        let shape = |s: &DirectedSystem| -> BTreeSet<(usize, usize)> {
            s.arrows.iter().map(|a| (a.from, a.to)).collect()
        };
        if shape(&self.source) != shape(&self.target) {
            return Err(Error::Dimension("systems live on different posets".to_string()));
        }
        for (i, f) in self.components.iter().enumerate() {
            if f.source() != &self.source.objects[i] || f.target() != &self.target.objects[i] {
                return Err(Error::DomainMismatch(format!("component {i} has wrong endpoints")));
            }
        }
        for a in &self.source.arrows {
            let h = self.target.arrow(a.from, a.to).expect("same shape");
            if compose(&self.components[a.to], &a.map)? != compose(h, &self.components[a.from])? {
                return Err(Error::NotCommutative(format!(
                    "naturality square {} -> {}",
                    a.from, a.to
                )));
            }
        }
        Ok(())
    }

    /// `lim f_i: lim N_i -> lim M_i`.
    pub fn induced(&self) -> Result<InducedColimit> {
        self.validate()?;
        let source = directed_colimit(&self.source)?;
        let target = directed_colimit(&self.target)?;
        let cone = self
            .components
            .iter()
            .zip(&target.structural)
            .map(|(f, psi)| compose(psi, f))
            .collect::<Result<Vec<_>>>()?;
        let map = source.induced(&cone)?;
        Ok(InducedColimit {
            source,
            target,
            map,
        })
    }
}

/// `(Z/n)^k -> M` sending basis vector `i` to generator `i`.
pub fn free_cover(m: &FiniteModule) -> ModuleMorphism {
    let free = FiniteModule::free(m.ring(), m.rank());
    let images: Vec<Element> = (0..m.rank()).map(|i| m.basis_element(i)).collect();
    ModuleMorphism::from_images(&free, m, &images).expect("free modules map anywhere")
}

/// Embedding of `M` into its injective envelope `E(M)`. Each `Z/d` embeds in
/// `+_{p | d} Z/p^k` (with `p^k` the local factor of `n`) by
/// `1 -> (p^{k - v_p(d)})_p`. Over `Z/n` injective and projective modules
/// coincide, so `E(M)` is projective too.
pub fn injective_hull(m: &FiniteModule) -> Result<ModuleMorphism> {
    let ring = m.ring();
    let mut orders = Vec::new();
    let mut raw_images: Vec<Vec<(usize, u64)>> = Vec::new();
    for &d in m.factors() {
        let mut parts = Vec::new();
        for &(p, k) in ring.prime_factors() {
            let a = valuation(d, p);
            if a == 0 {
                continue;
            }
            parts.push((orders.len(), p.pow(k - a)));
            orders.push(p.pow(k));
        }
        raw_images.push(parts);
    }
    let presented = Presented::cyclic_sum(ring, &orders)?;
    let images: Vec<Element> = raw_images
        .iter()
        .map(|parts| {
            let mut raw = vec![0u64; orders.len()];
            for &(idx, c) in parts {
                raw[idx] = c;
            }
            presented.project(&raw)
        })
        .collect();
    ModuleMorphism::from_images(m, &presented.module, &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::is_projective;

    fn ring(n: u64) -> Ring {
        Ring::new(n).unwrap()
    }

    fn module(r: &Ring, f: &[u64]) -> FiniteModule {
        FiniteModule::new(r, f.to_vec()).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let k = kernel(&ModuleMorphism::identity(&z4)).unwrap();
        assert!(k.module.is_zero());

        let m = module(&r, &[2, 4]);
        let zero = ModuleMorphism::zero(&m, &z4);
        let k = kernel(&zero).unwrap();
        assert_eq!(k.module, m);
        assert!(k.embedding.is_isomorphism());

        let two = ModuleMorphism::new(&z4, &z4, &[vec![2]]).unwrap();
        let k = kernel(&two).unwrap();
        assert_eq!(k.module.factors(), &[2]);
        assert_eq!(k.embedding.rows(), vec![vec![2]]);
    }

    #[test]
    fn cokernel_examples() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        assert!(cokernel(&ModuleMorphism::identity(&z4)).unwrap().module.is_zero());
        let n = module(&r, &[2, 4]);
        let zero = ModuleMorphism::zero(&FiniteModule::zero(&r), &n);
        assert_eq!(cokernel(&zero).unwrap().module, n);
        let two = ModuleMorphism::new(&z4, &z4, &[vec![2]]).unwrap();
        let q = cokernel(&two).unwrap();
        assert_eq!(q.module.factors(), &[2]);
        assert!(q.projection.is_surjective());
    }

    #[test]
    fn pushout_along_identity() {
        let r = ring(4);
        let k = module(&r, &[2]);
        let m = module(&r, &[4]);
        let u = ModuleMorphism::new(&k, &m, &[vec![2]]).unwrap();
        let p = pushout(&u, &ModuleMorphism::identity(&k)).unwrap();
        assert_eq!(p.object, m);
        assert!(p.from_second.is_isomorphism());
        let p = pushout(&ModuleMorphism::identity(&k), &u).unwrap();
        assert_eq!(p.object, m);
        assert!(p.from_first.is_isomorphism());
    }

    #[test]
    fn pushout_of_z2_into_z4_and_z2_squared() {
        let r = ring(4);
        let k = module(&r, &[2]);
        let m = module(&r, &[4]);
        let k2 = module(&r, &[2, 2]);
        let u = ModuleMorphism::new(&k, &m, &[vec![2]]).unwrap();
        let v = ModuleMorphism::new(&k, &k2, &[vec![1], vec![0]]).unwrap();
        let p = pushout(&u, &v).unwrap();
        assert_eq!(p.object.size(), 8);
        assert_eq!(
            compose(&p.from_first, &v).unwrap(),
            compose(&p.from_second, &u).unwrap()
        );
        // the pushout object itself is a cone; its mediating map is the identity
        let id = p.induced(&p.from_first, &p.from_second).unwrap();
        assert_eq!(id, ModuleMorphism::identity(&p.object));
    }

    #[test]
    fn colimit_examples() {
        let r = ring(4);
        let m = module(&r, &[2, 4]);
        let c = directed_colimit(&DirectedSystem::single(&m)).unwrap();
        assert_eq!(c.object, m);

        let id = ModuleMorphism::identity(&m);
        let chain = DirectedSystem::chain(&[id.clone(), id.clone(), id]).unwrap();
        let c = directed_colimit(&chain).unwrap();
        assert_eq!(c.object, m);

        let z2 = module(&r, &[2]);
        let z4 = module(&r, &[4]);
        let two = ModuleMorphism::new(&z2, &z4, &[vec![2]]).unwrap();
        let c = directed_colimit(&DirectedSystem::chain(&[two]).unwrap()).unwrap();
        assert_eq!(c.object, z4);
        assert!(c.structural[1].is_isomorphism());
    }

    #[test]
    fn colimit_rejects_non_functorial() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let id = ModuleMorphism::identity(&z4);
        let two = id.scale(2);
        let bad = DirectedSystem {
            objects: vec![z4.clone(), z4.clone(), z4.clone()],
            arrows: vec![
                Arrow { from: 0, to: 1, map: id.clone() },
                Arrow { from: 1, to: 2, map: id.clone() },
                Arrow { from: 0, to: 2, map: two },
            ],
        };
        assert!(matches!(directed_colimit(&bad), Err(Error::NotFunctorial(_))));
        let not_directed = DirectedSystem {
            objects: vec![z4.clone(), z4],
            arrows: vec![],
        };
        assert!(matches!(directed_colimit(&not_directed), Err(Error::NotDirected(_))));
    }

    #[test]
    fn direct_sum_splits() {
        let r = ring(12);
        let a = module(&r, &[2, 6]);
        let b = module(&r, &[4]);
        let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(s.module.size(), a.size() * b.size());
        for (i, m) in [a, b].iter().enumerate() {
            for (j, _) in [0, 1].iter().enumerate() {
                let pi = compose(&s.projections[j], &s.injections[i]).unwrap();
                if i == j {
                    assert_eq!(pi, ModuleMorphism::identity(m));
                } else {
                    assert!(pi.is_zero());
                }
            }
        }
    }

    #[test]
    fn injective_hull_is_projective_mono() {
        let r = ring(12);
        for factors in [vec![2], vec![6], vec![2, 6], vec![3, 12], vec![]] {
            let m = module(&r, &factors);
            let e = injective_hull(&m).unwrap();
            assert!(e.is_injective());
            assert!(is_projective(e.target()));
        }
    }
}
