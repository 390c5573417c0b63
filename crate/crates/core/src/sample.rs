//! Seeded random instances. Every draw flows from one `ChaCha8Rng`, so a
//! sample is a pure function of its 64-bit seed.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::finmod::{
    compose, hom_group, pure_closure, Element, FiniteModule, ModuleMorphism, Quotient, Ring,
    Submodule,
};
use crate::rep_a2::RepA2;

/// Moduli exercised by the verification suite.
pub const MODULI: [u64; 7] = [2, 3, 4, 6, 8, 9, 12];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of sample `index` of the property called `name` in a run seeded by
/// `run_seed`.
pub fn sample_seed(run_seed: u64, name: &str, index: usize) -> u64 {
    // FNV-1a keeps the mixing independent of std's randomized hasher
    let tag = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    });
    splitmix(splitmix(run_seed ^ tag) ^ index as u64)
}

/// A module drawn uniformly from the canonical modules of order `<= bound`.
pub fn module<R: Rng>(rng: &mut R, ring: &Ring, bound: u64) -> FiniteModule {
    FiniteModule::all_up_to(ring, bound.max(1))
        .choose(rng)
        .cloned()
        .unwrap_or_else(|| FiniteModule::zero(ring))
}

/// A nonzero module of order `<= bound`, or zero if none exists.
pub fn nonzero_module<R: Rng>(rng: &mut R, ring: &Ring, bound: u64) -> FiniteModule {
    let all: Vec<FiniteModule> = FiniteModule::all_up_to(ring, bound.max(1))
        .into_iter()
        .filter(|m| !m.is_zero())
        .collect();
    all.choose(rng)
        .cloned()
        .unwrap_or_else(|| FiniteModule::zero(ring))
}

pub fn element<R: Rng>(rng: &mut R, m: &FiniteModule) -> Element {
    m.factors().iter().map(|&d| rng.gen_range(0..d)).collect()
}

/// A uniformly weighted combination of the hom-group generators.
pub fn morphism<R: Rng>(rng: &mut R, m: &FiniteModule, n: &FiniteModule) -> ModuleMorphism {
    let modulus = m.ring().modulus();
    hom_group(m, n)
        .expect("same ring")
        .iter()
        .fold(ModuleMorphism::zero(m, n), |acc, g| {
            acc.add(&g.scale(rng.gen_range(0..modulus)))
                .expect("same endpoints")
        })
}

/// A random sum of indecomposable projectives (`Z/p^e` for `p^e || n`).
pub fn projective<R: Rng>(rng: &mut R, ring: &Ring, max_summands: usize) -> FiniteModule {
    let local = ring.local_factors();
    let count = rng.gen_range(1..=max_summands.max(1));
    let orders: Vec<u64> = (0..count).map(|_| *local.choose(rng).expect("n >= 2")).collect();
    FiniteModule::from_cyclic_orders(ring, &orders).expect("prime powers divide n")
}

/// A sum of one to three composites through indecomposable projectives.
/// Every phantom map is such a sum for enough terms.
pub fn phantom<R: Rng>(rng: &mut R, m: &FiniteModule, n: &FiniteModule) -> ModuleMorphism {
    let terms = rng.gen_range(1..=3);
    let mut acc = ModuleMorphism::zero(m, n);
    for _ in 0..terms {
        let p = projective(rng, m.ring(), 1);
        let t = morphism(rng, m, &p);
        let h = morphism(rng, &p, n);
        acc = acc.add(&compose(&h, &t).expect("composable")).expect("same endpoints");
    }
    acc
}

/// The pure closure of one random element.
pub fn pure_submodule<R: Rng>(rng: &mut R, m: &FiniteModule) -> Submodule {
    let x = element(rng, m);
    let seed = Submodule::new(m, vec![x]).expect("element of m");
    pure_closure(&seed, m).expect("same ambient").submodule
}

/// A submodule generated by up to two random elements.
pub fn submodule<R: Rng>(rng: &mut R, m: &FiniteModule) -> Submodule {
    let k = rng.gen_range(0..=2);
    Submodule::new(m, (0..k).map(|_| element(rng, m)).collect()).expect("elements of m")
}

/// The injective map `x -> (x, c x)` into `m + C` for a random cyclic `C`.
/// Its image is the graph of `c`, hence a summand.
pub fn graph_embedding<R: Rng>(rng: &mut R, m: &FiniteModule) -> ModuleMorphism {
    let ring = m.ring();
    let divisors = ring.divisors();
    let d = *divisors[1..].choose(rng).expect("n >= 2");
    let c_mod = FiniteModule::cyclic(ring, d).expect("divisor of n");
    let c = morphism(rng, m, &c_mod);
    let sum = crate::finmod::direct_sum(&[m.clone(), c_mod]).expect("same ring");
    let first = &sum.injections[0];
    let second = compose(&sum.injections[1], &c).expect("composable");
    first.add(&second).expect("same endpoints")
}

/// A random automorphism, found by rejection; the identity if none turns up.
pub fn automorphism<R: Rng>(rng: &mut R, m: &FiniteModule) -> ModuleMorphism {
    for _ in 0..16 {
        let a = morphism(rng, m, m);
        if a.is_automorphism() {
            return a;
        }
    }
    ModuleMorphism::identity(m)
}

/// A pure monomorphism out of `k` into a module of order `<= bound` (or `k`
/// itself when nothing larger fits): a random injective map with pure image,
/// a graph embedding, or an automorphism of `k`.
pub fn pure_mono<R: Rng>(rng: &mut R, k: &FiniteModule, bound: u64) -> ModuleMorphism {
    let ksize = k.size();
    if rng.gen_bool(0.5) && bound >= ksize {
        for _ in 0..8 {
            let target = module(rng, k.ring(), bound);
            let v = morphism(rng, k, &target);
            if v.is_injective()
                && crate::finmod::is_pure_submodule(&Submodule::image_of(&v), &target)
                    .expect("same ambient")
            {
                return v;
            }
        }
    }
    let max_c = bound / ksize.max(1);
    if max_c >= 2 && rng.gen_bool(0.7) {
        let v = graph_embedding(rng, k);
        if v.target().size() <= bound {
            return v;
        }
    }
    automorphism(rng, k)
}

/// A random phantom representation with `|M1| + |M2| <= size_bound`.
///
/// Built as `q ∘ f0 ∘ t`: `f0: P -> M2'` out of a random projective,
/// precomposed with a random `t: M1 -> P` and pushed into the quotient of
/// `M2'` by a random pure submodule. Each step stays inside the ideal.
pub fn random_phantom_rep(seed: u64, ring: &Ring, size_bound: u64) -> RepA2 {
    // a nonzero component has at least 2 elements and the other at least 1
    if size_bound < 3 {
        return RepA2::zero(ring);
    }
    let mut rng = rng(seed);
    let cap = if rng.gen_bool(0.5) { size_bound / 2 } else { size_bound - 1 };
    // mostly nonzero components, so the map is rarely forced to vanish
    let draw = |rng: &mut ChaCha8Rng, bound: u64| {
        if rng.gen_bool(0.85) {
            nonzero_module(rng, ring, bound)
        } else {
            module(rng, ring, bound)
        }
    };
    let m1 = draw(&mut rng, cap);
    let m1_size = m1.size();
    let m2_full = draw(&mut rng, size_bound - m1_size);
    let p = projective(&mut rng, ring, 3);
    let t = morphism(&mut rng, &m1, &p);
    let f0 = morphism(&mut rng, &p, &m2_full);
    let mut f = compose(&f0, &t).expect("composable");
    if rng.gen_bool(0.5) {
        // a second projective term widens the image
        f = f
            .add(&phantom(&mut rng, &m1, &m2_full))
            .expect("same endpoints");
    }
    if rng.gen_bool(0.3) && !m2_full.is_zero() {
        let s = pure_submodule(&mut rng, &m2_full);
        let q = Quotient::of(&s).expect("submodule of m2");
        f = compose(&q.projection, &f).expect("composable");
    }
    RepA2::new(f)
}
