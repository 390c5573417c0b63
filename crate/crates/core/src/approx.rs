//! Approximations by ideals of morphisms: precovers and covers, projective
//! and phantom covers, and the pushout and retraction constructions on the
//! kernel of a phantom cover.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finmod::{
    compose, hom_group, injective_hull, is_projective, is_pure_submodule, kernel, lift_along,
    pushout, Element, FiniteModule, Kernel, ModuleMorphism, Presented, Pushout, Ring, Submodule,
};
use crate::ideals::{ideal_membership, is_phantom, MorphismIdeal};

/// Default size of the self-factorization group below which covers are
/// checked by listing every element.
pub const DEFAULT_ENUMERATION_THRESHOLD: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverOptions {
    pub enumeration_threshold: u64,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            enumeration_threshold: DEFAULT_ENUMERATION_THRESHOLD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrecoverVerdict {
    Precover,
    /// Index of the first probe that does not factor through the map.
    Fails { probe: usize },
}

impl PrecoverVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PrecoverVerdict::Precover)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    Cover,
    /// Some `j` with `φ ∘ j = φ` is not an automorphism. The witness is
    /// always present when found by enumeration.
    NotCover { witness: Option<ModuleMorphism> },
}

impl CoverVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CoverVerdict::Cover)
    }
}

fn ensure_member(ideal: &MorphismIdeal, f: &ModuleMorphism, what: &str) -> Result<()> {
    if !ideal_membership(ideal, f)? {
        return Err(Error::Precondition(format!(
            "{what} is not in the {} ideal",
            ideal.tag()
        )));
    }
    Ok(())
}

/// Factors probes `L -> M` through `φ: F -> M`, one probe column at a time.
/// Column lifts depend only on the column and the order of its source
/// generator, so they are cached across probes.
struct ColumnLifter<'a> {
    phi: &'a ModuleMorphism,
    cache: HashMap<(Element, u64), Option<Element>>,
}

impl<'a> ColumnLifter<'a> {
    fn new(phi: &'a ModuleMorphism) -> Self {
        ColumnLifter {
            phi,
            cache: HashMap::new(),
        }
    }

    fn lift_column(&mut self, x: Element, order: u64) -> Result<Option<Element>> {
        if let Some(hit) = self.cache.get(&(x.clone(), order)) {
            return Ok(hit.clone());
        }
        let ring = self.phi.source().ring();
        let cyclic = FiniteModule::cyclic(ring, order)?;
        let h = ModuleMorphism::from_images(&cyclic, self.phi.target(), std::slice::from_ref(&x))?;
        let lifted = lift_along(self.phi, &h)?.map(|t| t.column(0));
        self.cache.insert((x, order), lifted.clone());
        Ok(lifted)
    }

    /// Some `j` with `φ ∘ j = probe`.
    fn factor(&mut self, probe: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
        let mut images = Vec::with_capacity(probe.source().rank());
        for (k, &d) in probe.source().factors().iter().enumerate() {
            match self.lift_column(probe.column(k), d)? {
                Some(c) => images.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(ModuleMorphism::from_images(
            probe.source(),
            self.phi.source(),
            &images,
        )?))
    }
}

/// Whether every probe `i': L -> M` factors as `φ ∘ j`.
pub fn is_precover(
    ideal: &MorphismIdeal,
    phi: &ModuleMorphism,
    probes: &[ModuleMorphism],
) -> Result<PrecoverVerdict> {
    ensure_member(ideal, phi, "the candidate precover")?;
    for (i, p) in probes.iter().enumerate() {
        if p.target() != phi.target() {
            return Err(Error::Precondition(format!(
                "probe {i} does not land in {:?}",
                phi.target()
            )));
        }
        ensure_member(ideal, p, &format!("probe {i}"))?;
    }
    let mut lifter = ColumnLifter::new(phi);
    for (i, p) in probes.iter().enumerate() {
        if lifter.factor(p)?.is_none() {
            return Ok(PrecoverVerdict::Fails { probe: i });
        }
    }
    Ok(PrecoverVerdict::Precover)
}

/// Generators of every phantom map into `m` from modules of cardinality at
/// most `source_bound`, followed by generators of `Hom(P, m)` for each
/// indecomposable projective `P`.
///
/// A phantom `L -> M` factors through a projective, which is also injective,
/// so it factors through the injective hull `L -> E(L)`. The maps `h ∘ ι` for
/// `h` in a generating set of `Hom(E(L), M)` therefore generate all of them.
pub fn phantom_probes(m: &FiniteModule, source_bound: u64) -> Result<Vec<ModuleMorphism>> {
    let ring = m.ring();
    let mut probes = Vec::new();
    for l in FiniteModule::all_up_to(ring, source_bound) {
        if l.is_zero() {
            continue;
        }
        let iota = injective_hull(&l)?;
        for h in hom_group(iota.target(), m)? {
            let p = compose(&h, &iota)?;
            if !p.is_zero() {
                probes.push(p);
            }
        }
    }
    for q in ring.local_factors() {
        probes.extend(hom_group(&FiniteModule::cyclic(ring, q)?, m)?);
    }
    Ok(probes)
}

/// `End(F)` as a subgroup of a canonical module: entry `(i, k)` of an
/// endomorphism matrix is a coordinate of modulus `d_i`, and the coordinates
/// are sorted by modulus so that they form a divisibility chain.
struct EndSpace {
    f: FiniteModule,
    ambient: FiniteModule,
    order: Vec<usize>,
}

impl EndSpace {
    fn new(f: &FiniteModule) -> Result<EndSpace> {
        let r = f.rank();
        let moduli: Vec<u64> = (0..r * r).map(|e| f.factors()[e / r]).collect();
        let mut order: Vec<usize> = (0..r * r).collect();
        order.sort_by_key(|&e| moduli[e]);
        let ambient = FiniteModule::new(f.ring(), order.iter().map(|&e| moduli[e]).collect())?;
        Ok(EndSpace {
            f: f.clone(),
            ambient,
            order,
        })
    }

    fn to_vec(&self, x: &ModuleMorphism) -> Element {
        let flat = x.rows().concat();
        self.order.iter().map(|&e| flat[e]).collect()
    }

    fn morphism_of(&self, v: &[u64]) -> Result<ModuleMorphism> {
        let r = self.f.rank();
        let mut flat = vec![0u64; r * r];
        for (c, &e) in self.order.iter().enumerate() {
            flat[e] = v[c];
        }
        let rows: Vec<Vec<u64>> = flat.chunks(r.max(1)).take(r).map(<[u64]>::to_vec).collect();
        ModuleMorphism::new(&self.f, &self.f, &rows)
    }

    fn span(&self, maps: &[ModuleMorphism]) -> Result<Submodule> {
        let gens: Vec<Element> = maps
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| self.to_vec(x))
            .collect();
        Submodule::new(&self.ambient, gens)?.normalized()
    }

    fn maps(&self, s: &Submodule) -> Result<Vec<ModuleMorphism>> {
        s.generators().iter().map(|v| self.morphism_of(v)).collect()
    }
}

/// `{x ∈ End(F) : φ ∘ x = 0}`: column `k` of `x` ranges over the elements of
/// `Ker φ` whose order divides `d_k`.
fn annihilating_endomorphisms(phi: &ModuleMorphism, space: &EndSpace) -> Result<Submodule> {
    let f = phi.source();
    let ker = Submodule::zero(phi.target()).preimage_under(phi)?;
    let mut maps = Vec::new();
    for (k, &d) in f.factors().iter().enumerate() {
        let torsion = Submodule::zero(f).preimage_under(&ModuleMorphism::identity(f).scale(d))?;
        for x in ker.intersection(&torsion)?.generators() {
            let images: Vec<Element> = (0..f.rank())
                .map(|c| if c == k { x.clone() } else { f.zero_element() })
                .collect();
            maps.push(ModuleMorphism::from_images(f, f, &images)?);
        }
    }
    space.span(&maps)
}

/// An idempotent power of `x`, or `None` if `x` is nilpotent.
fn idempotent_power(x: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    let mut powers = vec![x.clone()];
    loop {
        let last = powers.last().expect("nonempty");
        if last.is_zero() {
            return Ok(None);
        }
        let next = compose(x, last)?;
        if let Some(a) = powers.iter().position(|p| *p == next) {
            // x^(a+1) = x^(b+1) with period p = b - a + 1
            let period = powers.len() - a;
            let m = period * (a + 1).div_ceil(period);
            return Ok(Some(powers[m - 1].clone()));
        }
        powers.push(next);
    }
}

fn non_automorphism_from(x: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    // φ e = 0 and e ≠ 0 idempotent: φ (1 - e) = φ while (1 - e) e = 0
    idempotent_power(x)?
        .map(|e| ModuleMorphism::identity(x.source()).sub(&e))
        .transpose()
}

/// Whether every `j` with `φ ∘ j = φ` is an automorphism.
///
/// Such `j` are exactly `1 + x` with `x` in the right ideal
/// `H = {x : φ x = 0}` of `End(F)`. Small `H` is listed element by element.
/// Otherwise the check is exact through nilpotency: all `1 + x` are units iff
/// `H` lies in the Jacobson radical iff `H` is nilpotent.
pub fn self_factorization_check(phi: &ModuleMorphism, opts: &CoverOptions) -> Result<CoverVerdict> {
    let space = EndSpace::new(phi.source())?;
    let h = annihilating_endomorphisms(phi, &space)?;
    let id = ModuleMorphism::identity(phi.source());
    if h.cardinality() <= BigUint::from(opts.enumeration_threshold) {
        for v in h.elements() {
            let j = id.add(&space.morphism_of(&v)?)?;
            if !j.is_automorphism() {
                return Ok(CoverVerdict::NotCover { witness: Some(j) });
            }
        }
        return Ok(CoverVerdict::Cover);
    }
    let h_maps = space.maps(&h)?;
    let mut power = h.clone();
    loop {
        if power.is_zero() {
            return Ok(CoverVerdict::Cover);
        }
        let current = space.maps(&power)?;
        let mut products = Vec::new();
        for a in &current {
            for b in &h_maps {
                products.push(compose(a, b)?);
            }
        }
        let next = space.span(&products)?;
        if next.same_as(&power) {
            return Ok(CoverVerdict::NotCover {
                witness: search_non_nilpotent(&space, &current)?,
            });
        }
        power = next;
    }
}

/// A non-automorphism `1 - e` from some non-nilpotent element of a
/// non-nilpotent span, tried on generators, pairwise sums, then seeded random
/// combinations.
fn search_non_nilpotent(space: &EndSpace, gens: &[ModuleMorphism]) -> Result<Option<ModuleMorphism>> {
    for g in gens {
        if let Some(j) = non_automorphism_from(g)? {
            return Ok(Some(j));
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if let Some(j) = non_automorphism_from(&a.add(b)?)? {
                return Ok(Some(j));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let n = space.f.ring().modulus();
    for _ in 0..256 {
        let mut x = ModuleMorphism::zero(&space.f, &space.f);
        for g in gens {
            x = x.add(&g.scale(rng.gen_range(0..n)))?;
        }
        if let Some(j) = non_automorphism_from(&x)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Precover against the probes, then the automorphism condition.
pub fn is_cover(
    ideal: &MorphismIdeal,
    phi: &ModuleMorphism,
    probes: &[ModuleMorphism],
    opts: &CoverOptions,
) -> Result<CoverVerdict> {
    if let PrecoverVerdict::Fails { probe } = is_precover(ideal, phi, probes)? {
        return Err(Error::Precondition(format!(
            "not a precover: probe {probe} does not factor"
        )));
    }
    self_factorization_check(phi, opts)
}

/// `(Z/n)` written as `sum c_p` with `c_p ≡ 1 mod p^k` and `≡ 0` modulo the
/// other local factors.
fn local_idempotent(ring: &Ring, q: u64) -> u64 {
    let n = ring.modulus();
    let rest = n / q;
    if rest == 1 {
        return 1;
    }
    let inv = (rest as i128).extended_gcd(&(q as i128)).x.rem_euclid(q as i128) as u64;
    ((rest as u128 * inv as u128) % n as u128) as u64
}

/// The projective cover `P -> M`: each `Z/d_i` is covered by the local
/// factors `Z/p^k` for `p | d_i`, the one for `p` sending `1` to the element
/// `d_i / p^{v_p(d_i)}` of order `p^{v_p(d_i)}`. Identity when `M` is
/// projective.
pub fn projective_cover(m: &FiniteModule) -> Result<ModuleMorphism> {
    if is_projective(m) {
        return Ok(ModuleMorphism::identity(m));
    }
    let ring = m.ring();
    let mut orders = Vec::new();
    let mut images = Vec::new();
    for (i, &d) in m.factors().iter().enumerate() {
        for &(p, k) in ring.prime_factors() {
            let a = crate::finmod::valuation(d, p);
            if a == 0 {
                continue;
            }
            orders.push(p.pow(k));
            images.push(m.scale(d / p.pow(a), &m.basis_element(i)));
        }
    }
    Presented::cyclic_sum(ring, &orders)?.map_out(m, &images)
}

/// A phantom cover of `M`, found by shrinking the free precover
/// `(Z/n)^k -> M`: split it into local parts `(Z/p^k)^k` and keep, for each
/// prime, a set of generators whose images form a basis of `M_p / p M_p`.
/// By Nakayama the kept summands still map onto `M`, and no summand is
/// redundant.
pub fn phantom_cover(m: &FiniteModule) -> Result<ModuleMorphism> {
    if is_projective(m) {
        return Ok(ModuleMorphism::identity(m));
    }
    let ring = m.ring();
    let mut orders = Vec::new();
    let mut images = Vec::new();
    for &(p, k) in ring.prime_factors() {
        let q = p.pow(k);
        let c = local_idempotent(ring, q);
        let coords: Vec<usize> = (0..m.rank()).filter(|&i| m.factors()[i].is_multiple_of(p)).collect();
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        for j in 0..m.rank() {
            let y = m.scale(c, &m.basis_element(j));
            let mut row: Vec<u64> = coords.iter().map(|&i| y[i] % p).collect();
            if reduce_against(&mut row, &basis, p) {
                let pivot = row.iter().position(|&a| a != 0).expect("nonzero row");
                basis.push((pivot, row));
                orders.push(q);
                images.push(y);
            }
        }
    }
    Presented::cyclic_sum(ring, &orders)?.map_out(m, &images)
}

/// Reduces `row` over `F_p` against an echelon basis; true if something
/// nonzero is left.
fn reduce_against(row: &mut [u64], basis: &[(usize, Vec<u64>)], p: u64) -> bool {
    for (pivot, b) in basis {
        let a = row[*pivot];
        if a == 0 {
            continue;
        }
        let scale = (a * mod_inverse(b[*pivot], p)) % p;
        for (x, &y) in row.iter_mut().zip(b) {
            *x = (*x + p * p - scale * y % p) % p;
        }
    }
    row.iter().any(|&a| a != 0)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    (a as i128).extended_gcd(&(p as i128)).x.rem_euclid(p as i128) as u64
}

/// An isomorphism `a: P1 -> P2` over `M` (`φ2 ∘ a = φ1`) with its inverse.
/// When both maps are covers every factorization is an isomorphism, so the
/// first one found decides.
pub fn isomorphic_over(
    phi1: &ModuleMorphism,
    phi2: &ModuleMorphism,
) -> Result<Option<(ModuleMorphism, ModuleMorphism)>> {
    if phi1.target() != phi2.target() {
        return Err(Error::DomainMismatch("maps into different modules".to_string()));
    }
    let Some(a) = lift_along(phi2, phi1)? else {
        return Ok(None);
    };
    let Some(inv) = a.inverse() else {
        return Ok(None);
    };
    debug_assert_eq!(compose(phi1, &inv)?, *phi2);
    Ok(Some((a, inv)))
}

/// The pushout of a phantom epimorphism along a pure monomorphism out of its
/// kernel.
#[derive(Clone, Debug)]
pub struct Transport {
    pub kernel: Kernel,
    pub pushout: Pushout,
    /// `φ': X -> N` with `φ' ∘ v' = φ` and `φ' ∘ u' = 0`.
    pub phi_prime: ModuleMorphism,
    pub phantom: bool,
}

fn check_pure_mono(v: &ModuleMorphism, kernel: &Kernel) -> Result<()> {
    if v.source() != &kernel.module {
        return Err(Error::Precondition(format!(
            "v starts at {:?}, not at the kernel {:?}",
            v.source(),
            kernel.module
        )));
    }
    if !v.is_injective() {
        return Err(Error::Precondition("v is not injective".to_string()));
    }
    if !is_pure_submodule(&Submodule::image_of(v), v.target())? {
        return Err(Error::Precondition("the image of v is not pure".to_string()));
    }
    Ok(())
}

/// Given `φ: M -> N` phantom and onto, with kernel `u: K -> M`, and a pure
/// monomorphism `v: K -> K'`, forms the pushout `X` of `u` and `v` and the
/// induced `φ': X -> N`. The result records whether `φ'` is phantom.
pub fn pushout_transport(phi: &ModuleMorphism, v: &ModuleMorphism) -> Result<Transport> {
    if !phi.is_surjective() {
        return Err(Error::Precondition("φ is not surjective".to_string()));
    }
    if !is_phantom(phi) {
        return Err(Error::Precondition("φ is not phantom".to_string()));
    }
    let kernel = kernel(phi)?;
    check_pure_mono(v, &kernel)?;
    let pushout = pushout(&kernel.embedding, v)?;
    let zero = ModuleMorphism::zero(v.target(), phi.target());
    let phi_prime = pushout.induced(&zero, phi)?;
    let phantom = is_phantom(&phi_prime);
    Ok(Transport {
        kernel,
        pushout,
        phi_prime,
        phantom,
    })
}

/// A retraction of a pure monomorphism out of the kernel of a cover.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub transport: Transport,
    /// `t: X -> F` with `φ ∘ t = φ'`.
    pub t: ModuleMorphism,
    /// `w: K' -> K` with `u ∘ w = t ∘ u'`.
    pub w: ModuleMorphism,
    /// `r = (w v)^{-1} w`, so `r ∘ v = id_K`.
    pub r: ModuleMorphism,
}

/// Splits a pure monomorphism `v: K -> K'` out of the kernel of a phantom
/// cover `φ: F -> N`. `φ'` from [`pushout_transport`] factors as `φ ∘ t`;
/// then `t ∘ v'` is an automorphism of `F` by the cover property, which makes
/// `w ∘ v` an automorphism of `K`. Any step that fails contradicts the cover
/// property and is reported as a consistency error.
pub fn extract_retract(phi: &ModuleMorphism, v: &ModuleMorphism) -> Result<Retraction> {
    if !self_factorization_check(phi, &CoverOptions::default())?.holds() {
        return Err(Error::Precondition("φ is not a cover".to_string()));
    }
    let transport = pushout_transport(phi, v)?;
    let u = &transport.kernel.embedding;
    let po = &transport.pushout;
    let t = lift_along(phi, &transport.phi_prime)?.ok_or_else(|| {
        Error::Consistency("φ' does not factor through the cover".to_string())
    })?;
    let tu = compose(&t, &po.from_first)?;
    let w = lift_along(u, &tu)?
        .ok_or_else(|| Error::Consistency("t ∘ u' leaves the kernel".to_string()))?;
    let wv = compose(&w, v)?;
    let inv = wv
        .inverse()
        .ok_or_else(|| Error::Consistency("w ∘ v is not an automorphism".to_string()))?;
    let r = compose(&inv, &w)?;
    if compose(&r, v)? != ModuleMorphism::identity(v.source()) {
        return Err(Error::Consistency("r ∘ v differs from the identity".to_string()));
    }
    Ok(Retraction {
        transport,
        t,
        w,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u64) -> Ring {
        Ring::new(n).unwrap()
    }

    fn module(r: &Ring, f: &[u64]) -> FiniteModule {
        FiniteModule::new(r, f.to_vec()).unwrap()
    }

    fn z4_onto_z2() -> (Ring, ModuleMorphism) {
        let r = ring(4);
        let phi = ModuleMorphism::new(&module(&r, &[4]), &module(&r, &[2]), &[vec![1]]).unwrap();
        (r, phi)
    }

    #[test]
    fn precover_examples() {
        let (r, phi) = z4_onto_z2();
        let phantom = MorphismIdeal::Phantom(r.clone());
        assert!(is_precover(&phantom, &phi, std::slice::from_ref(&phi)).unwrap().holds());
        let zero = ModuleMorphism::zero(phi.target(), phi.target());
        assert!(is_precover(&phantom, &phi, &[zero]).unwrap().holds());
        let probes = phantom_probes(phi.target(), 16).unwrap();
        assert!(!probes.is_empty());
        assert!(is_precover(&phantom, &phi, &probes).unwrap().holds());

        // the zero map from Z/4 is phantom but too small to be a precover
        let zero_phi = ModuleMorphism::zero(phi.source(), phi.target());
        assert_eq!(
            is_precover(&phantom, &zero_phi, &probes).unwrap(),
            PrecoverVerdict::Fails { probe: 0 }
        );
    }

    #[test]
    fn precover_rejects_probes_outside_the_ideal() {
        let (r, phi) = z4_onto_z2();
        let id = ModuleMorphism::identity(phi.target());
        let err = is_precover(&MorphismIdeal::Phantom(r), &phi, &[id]).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn cover_examples() {
        let r = ring(4);
        let m = module(&r, &[2, 4]);
        let id = ModuleMorphism::identity(&m);
        assert!(self_factorization_check(&id, &CoverOptions::default()).unwrap().holds());

        let (_, phi) = z4_onto_z2();
        let probes = phantom_probes(phi.target(), 16).unwrap();
        let phantom = MorphismIdeal::Phantom(r.clone());
        assert!(is_cover(&phantom, &phi, &probes, &CoverOptions::default())
            .unwrap()
            .holds());

        let f2 = module(&r, &[4, 4]);
        let fat = ModuleMorphism::new(&f2, phi.target(), &[vec![1, 0]]).unwrap();
        assert!(is_precover(&phantom, &fat, &probes).unwrap().holds());
        match is_cover(&phantom, &fat, &probes, &CoverOptions::default()).unwrap() {
            CoverVerdict::NotCover { witness: Some(j) } => {
                assert_eq!(compose(&fat, &j).unwrap(), fat);
                assert!(!j.is_automorphism());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn nilpotency_route_agrees_with_enumeration() {
        let r = ring(12);
        let m = module(&r, &[2, 6]);
        let tight = CoverOptions {
            enumeration_threshold: 1,
        };
        let cover = projective_cover(&m).unwrap();
        assert!(self_factorization_check(&cover, &tight).unwrap().holds());
        let free = crate::finmod::free_cover(&m);
        let by_list = self_factorization_check(&free, &CoverOptions::default()).unwrap();
        let by_nil = self_factorization_check(&free, &tight).unwrap();
        assert!(!by_list.holds());
        match by_nil {
            CoverVerdict::NotCover { witness: Some(j) } => {
                assert_eq!(compose(&free, &j).unwrap(), free);
                assert!(!j.is_automorphism());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn projective_cover_examples() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        assert_eq!(projective_cover(&z4).unwrap(), ModuleMorphism::identity(&z4));
        let z2 = module(&r, &[2]);
        let c = projective_cover(&z2).unwrap();
        assert_eq!(c.source(), &z4);
        assert_eq!(c.rows(), vec![vec![1]]);

        let r = ring(12);
        let m = FiniteModule::from_cyclic_orders(&r, &[2, 3]).unwrap();
        let c = projective_cover(&m).unwrap();
        assert_eq!(c.source().factors(), &[12]);
        assert!(c.is_surjective());
        assert!(self_factorization_check(&c, &CoverOptions::default()).unwrap().holds());
    }

    #[test]
    fn phantom_cover_examples() {
        let r = ring(4);
        let z2 = module(&r, &[2]);
        let c = phantom_cover(&z2).unwrap();
        assert_eq!(c.source().factors(), &[4]);
        let phantom = MorphismIdeal::Phantom(r.clone());
        let probes = phantom_probes(&z2, 16).unwrap();
        assert!(is_cover(&phantom, &c, &probes, &CoverOptions::default())
            .unwrap()
            .holds());
        let zero = FiniteModule::zero(&r);
        assert_eq!(phantom_cover(&zero).unwrap(), ModuleMorphism::identity(&zero));

        let r = ring(12);
        for m in FiniteModule::all_up_to(&r, 48) {
            let c = phantom_cover(&m).unwrap();
            assert!(c.is_surjective() && is_phantom(&c), "{m:?}");
            assert!(isomorphic_over(&c, &projective_cover(&m).unwrap())
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn transport_examples() {
        let (r, phi) = z4_onto_z2();
        let k = kernel(&phi).unwrap();
        let id = ModuleMorphism::identity(&k.module);
        let t = pushout_transport(&phi, &id).unwrap();
        assert!(t.phantom);
        assert_eq!(t.pushout.object, *phi.source());

        let target = module(&r, &[2, 2]);
        let v = ModuleMorphism::new(&k.module, &target, &[vec![1], vec![0]]).unwrap();
        let t = pushout_transport(&phi, &v).unwrap();
        assert!(t.phantom);
        assert_eq!(compose(&t.phi_prime, &t.pushout.from_second).unwrap(), phi);

        let zero = FiniteModule::zero(&r);
        let zphi = ModuleMorphism::identity(&zero);
        let t = pushout_transport(&zphi, &ModuleMorphism::identity(&zero)).unwrap();
        assert!(t.phi_prime.is_zero());
    }

    #[test]
    fn transport_preconditions() {
        let (r, phi) = z4_onto_z2();
        let k = kernel(&phi).unwrap();
        let z4 = module(&r, &[4]);
        let impure = ModuleMorphism::new(&k.module, &z4, &[vec![2]]).unwrap();
        assert!(matches!(
            pushout_transport(&phi, &impure),
            Err(Error::Precondition(_))
        ));
        let z2 = module(&r, &[2]);
        let not_phantom = ModuleMorphism::identity(&z2);
        let k2 = kernel(&not_phantom).unwrap();
        let v = ModuleMorphism::identity(&k2.module);
        assert!(matches!(
            pushout_transport(&not_phantom, &v),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn retract_examples() {
        let (r, phi) = z4_onto_z2();
        let k = kernel(&phi).unwrap();
        let id = ModuleMorphism::identity(&k.module);
        let ret = extract_retract(&phi, &id).unwrap();
        assert!(ret.r.is_automorphism());

        let x = module(&r, &[2, 4]);
        let v = ModuleMorphism::new(&k.module, &x, &[vec![1], vec![0]]).unwrap();
        let ret = extract_retract(&phi, &v).unwrap();
        assert_eq!(compose(&ret.r, &v).unwrap(), id);

        let z4 = module(&r, &[4]);
        let idz = ModuleMorphism::identity(&z4);
        let kz = kernel(&idz).unwrap();
        assert!(kz.module.is_zero());
        let v = ModuleMorphism::zero(&kz.module, &module(&r, &[2]));
        let ret = extract_retract(&idz, &v).unwrap();
        assert!(ret.r.is_zero());
    }
}
