//! Finite modules over `Z/n` in invariant factor form, and their category.

mod constructions;
mod morphism;
mod purity;
mod solve;
mod submodule;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub use constructions::{
    cokernel, direct_sum, directed_colimit, free_cover, image, injective_hull, kernel, pushout,
    Arrow, Colimit, DirectSum, DirectedSystem, InducedColimit, Kernel, Presented, Pushout, Quotient,
    SystemMorphism,
};
pub use morphism::{compose, hom_group, hom_group_order, ModuleMorphism};
pub use purity::{
    is_direct_summand, is_projective, is_pure_submodule, pure_closure, purity_witness,
    PureClosure, PurityWitness, Summand,
};
pub use solve::{extend_along, lift_along, lift_along_detailed};
pub use submodule::Submodule;

/// A module element as coordinates in the canonical generators.
pub type Element = Vec<u64>;

/// The coefficient ring `Z/n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    n: u64,
    primes: Arc<[(u64, u32)]>,
}

impl Ring {
    pub fn new(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::BadModulus(n));
        }
        Ok(Ring {
            n,
            primes: factorize(n).into(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Prime factorization `[(p, k)]` of the modulus, primes ascending.
    pub fn prime_factors(&self) -> &[(u64, u32)] {
        &self.primes
    }

    /// The local factors `p^k` of the modulus, one per prime.
    pub fn local_factors(&self) -> Vec<u64> {
        self.primes.iter().map(|&(p, k)| p.pow(k)).collect()
    }

    /// All positive divisors of the modulus, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, k) in self.primes.iter() {
            let mut next = Vec::with_capacity(divs.len() * (k as usize + 1));
            for &d in &divs {
                let mut q = 1;
                for _ in 0..=k {
                    next.push(d * q);
                    q *= p;
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }

    /// Product of the distinct primes dividing the modulus; `radical * M` is the
    /// Jacobson radical of `M`.
    pub fn radical(&self) -> u64 {
        self.primes.iter().map(|&(p, _)| p).product()
    }

    /// Exponent of `p` in the modulus (0 if `p` does not divide it).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.primes
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, k)| k)
    }

    pub(crate) fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RingMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.n)
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `v_p(d)` for a prime `p`.
pub(crate) fn valuation(mut d: u64, p: u64) -> u32 {
    let mut k = 0;
    while d != 0 && d.is_multiple_of(p) {
        d /= p;
        k += 1;
    }
    k
}

pub(crate) fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Reduces an integer into `[0, d)`.
pub(crate) fn reduce_big(x: &BigInt, d: u64) -> u64 {
    x.mod_floor(&big(d))
        .to_u64()
        .expect("residue fits in u64")
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// A finite `Z/n`-module `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k | n`
/// and every `d_i >= 2`.
///
/// The invariant factor list is canonical, so structural equality is
/// isomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteModule {
    ring: Ring,
    factors: Vec<u64>,
}

impl FiniteModule {
    pub fn new(ring: &Ring, factors: Vec<u64>) -> Result<FiniteModule> {
        for (i, &d) in factors.iter().enumerate() {
            if d < 2 {
                return Err(Error::InvalidModule(format!(
                    "invariant factor {d} at position {i} is below 2"
                )));
            }
            if !ring.n.is_multiple_of(d) {
                return Err(Error::InvalidModule(format!(
                    "invariant factor {d} does not divide {}",
                    ring.n
                )));
            }
            if i > 0 && d % factors[i - 1] != 0 {
                return Err(Error::InvalidModule(format!(
                    "invariant factors {} and {d} break the divisibility chain",
                    factors[i - 1]
                )));
            }
        }
        Ok(FiniteModule {
            ring: ring.clone(),
            factors,
        })
    }

    pub fn zero(ring: &Ring) -> FiniteModule {
        FiniteModule {
            ring: ring.clone(),
            factors: Vec::new(),
        }
    }

    pub fn cyclic(ring: &Ring, d: u64) -> Result<FiniteModule> {
        if d == 1 {
            return Ok(Self::zero(ring));
        }
        Self::new(ring, vec![d])
    }

    /// `(Z/n)^rank`.
    pub fn free(ring: &Ring, rank: usize) -> FiniteModule {
        FiniteModule {
            ring: ring.clone(),
            factors: vec![ring.n; rank],
        }
    }

    /// Canonical form of an arbitrary direct sum of cyclic modules `Z/d`
    /// (each `d` dividing `n`; `d = 1` allowed).
    pub fn from_cyclic_orders(ring: &Ring, orders: &[u64]) -> Result<FiniteModule> {
        Ok(Presented::cyclic_sum(ring, orders)?.module)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of canonical generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn cardinality(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * BigUint::from(d))
    }

    /// Cardinality as a machine integer, saturating.
    pub fn size(&self) -> u64 {
        self.cardinality().to_u64().unwrap_or(u64::MAX)
    }

    pub fn zero_element(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero_element();
        e[i] = 1 % self.factors[i];
        e
    }

    pub fn is_element(&self, x: &[u64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.factors).all(|(a, d)| a < d)
    }

    pub(crate) fn check_element(&self, x: &[u64]) -> Result<()> {
        if !self.is_element(x) {
            return Err(Error::Dimension(format!(
                "{x:?} is not an element of {self:?}"
            )));
        }
        Ok(())
    }

    /// Reduces integer coordinates into canonical range.
    pub fn reduce(&self, x: &[BigInt]) -> Element {
        x.iter()
            .zip(&self.factors)
            .map(|(a, &d)| reduce_big(a, d))
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((a, b), &d)| add_mod(*a, *b, d))
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.factors)
            .map(|(a, &d)| (d - a % d) % d)
            .collect()
    }

    pub fn scale(&self, c: u64, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.factors)
            .map(|(a, &d)| mul_mod(c % d, *a, d))
            .collect()
    }

    /// Additive order of an element.
    pub fn order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| d / gcd(a, d))
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Elements in lexicographic order (first coordinate most significant).
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            module: self,
            next: Some(self.zero_element()),
        }
    }

    /// Every module (up to isomorphism) of cardinality at most `bound`, in
    /// increasing order of invariant factor lists.
    pub fn all_up_to(ring: &Ring, bound: u64) -> Vec<FiniteModule> {
        fn extend(ring: &Ring, divs: &[u64], chain: &mut Vec<u64>, size: u64, bound: u64, out: &mut Vec<FiniteModule>) {
            out.push(FiniteModule {
                ring: ring.clone(),
                factors: chain.clone(),
            });
            let last = chain.last().copied().unwrap_or(1);
            for &d in divs {
                if d % last == 0 && size.saturating_mul(d) <= bound {
                    chain.push(d);
                    extend(ring, divs, chain, size * d, bound, out);
                    chain.pop();
                }
            }
        }
        let divs: Vec<u64> = ring.divisors().into_iter().skip(1).collect();
        let mut out = Vec::new();
        if bound >= 1 {
            extend(ring, &divs, &mut Vec::new(), 1, bound, &mut out);
        }
        out
    }

    pub(crate) fn factors_big(&self) -> Vec<BigInt> {
        self.factors.iter().map(|&d| big(d)).collect()
    }
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0 over {:?}", self.ring);
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{} over {:?}", parts.join(" + "), self.ring)
    }
}

pub struct Elements<'a> {
    module: &'a FiniteModule,
    next: Option<Element>,
}

impl Iterator for Elements<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        let mut carried = true;
        while i > 0 && carried {
            i -= 1;
            succ[i] += 1;
            if succ[i] == self.module.factors[i] {
                succ[i] = 0;
            } else {
                carried = false;
            }
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_factorization() {
        let r = Ring::new(12).unwrap();
        assert_eq!(r.prime_factors(), &[(2, 2), (3, 1)]);
        assert_eq!(r.divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(r.local_factors(), vec![4, 3]);
        assert_eq!(r.radical(), 6);
        assert!(Ring::new(1).is_err());
        assert!(Ring::new(0).is_err());
    }

    #[test]
    fn module_validation() {
        let r = Ring::new(12).unwrap();
        assert!(FiniteModule::new(&r, vec![2, 6, 12]).is_ok());
        assert!(FiniteModule::new(&r, vec![4, 6]).is_err());
        assert!(FiniteModule::new(&r, vec![8]).is_err());
        assert!(FiniteModule::new(&r, vec![1]).is_err());
    }

    #[test]
    fn canonical_form_of_cyclic_sums() {
        let r = Ring::new(12).unwrap();
        let m = FiniteModule::from_cyclic_orders(&r, &[2, 3]).unwrap();
        assert_eq!(m.factors(), &[6]);
        let m = FiniteModule::from_cyclic_orders(&r, &[4, 2, 1, 3]).unwrap();
        assert_eq!(m.factors(), &[2, 12]);
    }

    #[test]
    fn element_enumeration_is_lexicographic() {
        let r = Ring::new(4).unwrap();
        let m = FiniteModule::new(&r, vec![2, 4]).unwrap();
        let all: Vec<_> = m.elements().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[4], vec![1, 0]);
        assert_eq!(FiniteModule::zero(&r).elements().count(), 1);
    }

    #[test]
    fn modules_up_to_a_bound() {
        let r = Ring::new(4).unwrap();
        let all = FiniteModule::all_up_to(&r, 8);
        let lists: Vec<&[u64]> = all.iter().map(|m| m.factors()).collect();
        assert_eq!(
            lists,
            vec![&[][..], &[2], &[2, 2], &[2, 2, 2], &[2, 4], &[4]]
        );
    }

    #[test]
    fn element_orders() {
        let r = Ring::new(12).unwrap();
        let m = FiniteModule::new(&r, vec![2, 12]).unwrap();
        assert_eq!(m.order(&[1, 0]), 2);
        assert_eq!(m.order(&[1, 3]), 4);
        assert_eq!(m.order(&[0, 0]), 1);
    }
}
