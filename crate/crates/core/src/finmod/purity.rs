//! Projectivity, purity, direct summands and pure closures.

use num_bigint::BigInt;

use super::{big, valuation, Element, FiniteModule, ModuleMorphism, Submodule};
use crate::error::{Error, Result};
use crate::linalg::{congruence_kernel, IntMatrix};

/// Over `Z/n = prod Z/p^k` the projectives are sums of the local factors
/// `Z/p^k`: every invariant factor must have a trivial or full `p`-part.
pub fn is_projective(m: &FiniteModule) -> bool {
    m.factors().iter().all(|&d| {
        m.ring()
            .prime_factors()
            .iter()
            .all(|&(p, k)| matches!(valuation(d, p), v if v == 0 || v == k))
    })
}

fn ensure_ambient(s: &Submodule, m: &FiniteModule) -> Result<()> {
    if s.ambient() != m {
        return Err(Error::DomainMismatch(format!(
            "submodule lives in {:?}, not {:?}",
            s.ambient(),
            m
        )));
    }
    Ok(())
}

/// `S ∩ dM = dS` for every divisor `d` of `n`, compared through cardinalities
/// (`|S ∩ dM| = |S| |dM| / |S + dM|`).
pub fn is_pure_submodule(s: &Submodule, m: &FiniteModule) -> Result<bool> {
    ensure_ambient(s, m)?;
    let whole = Submodule::whole(m);
    let s_size = s.cardinality();
    for d in m.ring().divisors() {
        if d == 1 || d == m.ring().modulus() {
            continue;
        }
        let dm = whole.scaled(d);
        let lhs = &s_size * dm.cardinality();
        let rhs = s.scaled(d).cardinality() * s.join(&dm)?.cardinality();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A violation of purity: `s = d * m` lies in `S ∩ dM` but not in `dS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityWitness {
    pub divisor: u64,
    pub element: Element,
    pub preimage: Element,
}

/// The first purity violation, scanning divisors in ascending order and, for
/// each, the generators of `S ∩ dM` in the order the solver returns them.
pub fn purity_witness(s: &Submodule, m: &FiniteModule) -> Result<Option<PurityWitness>> {
    ensure_ambient(s, m)?;
    let g = s.generator_matrix();
    let k = g.cols();
    let moduli = m.factors_big();
    for d in m.ring().divisors() {
        if d == 1 || d == m.ring().modulus() {
            continue;
        }
        // G c - d x = 0 in M
        let dx = IntMatrix::from_fn(m.rank(), m.rank(), |i, j| {
            if i == j {
                -big(d)
            } else {
                BigInt::from(0)
            }
        });
        let kernel = congruence_kernel(&g.hstack(&dx)?, &moduli)?;
        let ds = s.scaled(d);
        for v in kernel {
            let element = m.reduce(&g.mul_vec(&v[..k])?);
            if element.iter().all(|&a| a == 0) || ds.contains(&element) {
                continue;
            }
            let preimage = m.reduce(&v[k..]);
            debug_assert_eq!(m.scale(d, &preimage), element);
            return Ok(Some(PurityWitness {
                divisor: d,
                element,
                preimage,
            }));
        }
    }
    Ok(None)
}

/// A pure submodule containing the seed, with the witnesses adjoined on the
/// way.
#[derive(Clone, Debug)]
pub struct PureClosure {
    pub submodule: Submodule,
    pub witnesses: Vec<PurityWitness>,
}

/// Repeatedly adjoins a preimage `m` of a purity violation `s = d m` until
/// none is left. The subgroup grows strictly at each step (`m ∈ S` would put
/// `s` in `dS`), so this terminates; each step at most multiplies the size by
/// the order of `m`, hence by at most `n`.
pub fn pure_closure(s: &Submodule, m: &FiniteModule) -> Result<PureClosure> {
    ensure_ambient(s, m)?;
    let mut current = s.clone();
    let mut witnesses = Vec::new();
    while let Some(w) = purity_witness(&current, m)? {
        current = current.with_generator(w.preimage.clone())?;
        witnesses.push(w);
    }
    Ok(PureClosure {
        submodule: current,
        witnesses,
    })
}

/// A complemented submodule: `retraction ∘ inclusion = id`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: FiniteModule,
    pub inclusion: ModuleMorphism,
    pub retraction: ModuleMorphism,
}

pub fn is_direct_summand(s: &Submodule, m: &FiniteModule) -> Result<Option<Summand>> {
    ensure_ambient(s, m)?;
    let (module, inclusion) = s.present()?;
    let id = ModuleMorphism::identity(&module);
    Ok(super::extend_along(&inclusion, &id)?.map(|retraction| Summand {
        module,
        inclusion,
        retraction,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::{compose, Ring};

    fn ring(n: u64) -> Ring {
        Ring::new(n).unwrap()
    }

    fn module(r: &Ring, f: &[u64]) -> FiniteModule {
        FiniteModule::new(r, f.to_vec()).unwrap()
    }

    #[test]
    fn projectivity_examples() {
        let r = ring(4);
        assert!(is_projective(&module(&r, &[4])));
        assert!(!is_projective(&module(&r, &[2])));
        assert!(is_projective(&FiniteModule::zero(&r)));
        let r = ring(12);
        // Z/4 + Z/3 = Z/12
        assert!(is_projective(&FiniteModule::from_cyclic_orders(&r, &[4, 3]).unwrap()));
        assert!(is_projective(&module(&r, &[3, 12])));
        assert!(is_projective(&module(&r, &[4])));
        assert!(!is_projective(&module(&r, &[6])));
    }

    #[test]
    fn purity_examples() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let s = Submodule::new(&z4, vec![vec![2]]).unwrap();
        assert!(!is_pure_submodule(&s, &z4).unwrap());
        let w = purity_witness(&s, &z4).unwrap().unwrap();
        assert_eq!(w.divisor, 2);
        assert_eq!(w.element, vec![2]);

        let m = module(&r, &[2, 4]);
        let first = Submodule::new(&m, vec![vec![1, 0]]).unwrap();
        assert!(is_pure_submodule(&first, &m).unwrap());
        assert!(is_pure_submodule(&Submodule::zero(&m), &m).unwrap());
        assert!(is_pure_submodule(&Submodule::whole(&m), &m).unwrap());
    }

    #[test]
    fn summand_examples() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let s = Submodule::new(&z4, vec![vec![2]]).unwrap();
        assert!(is_direct_summand(&s, &z4).unwrap().is_none());

        let m = module(&r, &[2, 4]);
        let whole = is_direct_summand(&Submodule::whole(&m), &m).unwrap().unwrap();
        assert_eq!(
            compose(&whole.retraction, &whole.inclusion).unwrap(),
            ModuleMorphism::identity(&whole.module)
        );
        let first = Submodule::new(&m, vec![vec![1, 0]]).unwrap();
        let sm = is_direct_summand(&first, &m).unwrap().unwrap();
        assert_eq!(
            compose(&sm.retraction, &sm.inclusion).unwrap(),
            ModuleMorphism::identity(&sm.module)
        );
    }

    #[test]
    fn closure_examples() {
        let r = ring(4);
        let z4 = module(&r, &[4]);
        let s = Submodule::new(&z4, vec![vec![2]]).unwrap();
        let c = pure_closure(&s, &z4).unwrap();
        assert!(c.submodule.is_whole());
        assert_eq!(c.witnesses.len(), 1);

        let m = module(&r, &[2, 4]);
        let zero = pure_closure(&Submodule::zero(&m), &m).unwrap();
        assert!(zero.submodule.is_zero());
        let first = Submodule::new(&m, vec![vec![1, 0]]).unwrap();
        let c = pure_closure(&first, &m).unwrap();
        assert!(c.witnesses.is_empty());
        assert!(c.submodule.same_as(&first));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let r = ring(4);
        let s = Submodule::zero(&module(&r, &[4]));
        assert!(is_pure_submodule(&s, &module(&r, &[2])).is_err());
    }
}
