use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::{add_mod, big, gcd, mul_mod, Element, FiniteModule};
use crate::error::{Error, Result};
use crate::linalg::{congruence_kernel, IntMatrix};

/// A homomorphism between canonical modules.
///
/// Column `j` of the matrix is the image of source generator `j`; entry
/// `(i, j)` lives in `[0, d_i)` for the target factor `d_i`. Because entries
/// are normalized, structural equality is equality of morphisms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleMorphism {
    source: FiniteModule,
    target: FiniteModule,
    matrix: Vec<u64>,
}

impl ModuleMorphism {
    /// Builds a morphism from its rows, reducing entries and checking
    /// well-definedness (`a_ij * d_j ≡ 0 mod d_i`).
    pub fn new(source: &FiniteModule, target: &FiniteModule, rows: &[Vec<u64>]) -> Result<Self> {
        source.ring().ensure_same(target.ring())?;
        if rows.len() != target.rank() || rows.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::Dimension(format!(
                "matrix shape does not match {} x {}",
                target.rank(),
                source.rank()
            )));
        }
        let mut matrix = Vec::with_capacity(target.rank() * source.rank());
        for (i, row) in rows.iter().enumerate() {
            let di = target.factors()[i];
            for (j, &a) in row.iter().enumerate() {
                let a = a % di;
                let dj = source.factors()[j];
                if mul_mod(a, dj, di) != 0 {
                    return Err(Error::IllDefined {
                        row: i,
                        col: j,
                        entry: a,
                        source_order: dj,
                        target_order: di,
                    });
                }
                matrix.push(a);
            }
        }
        Ok(ModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    /// Builds a morphism from the images of the source generators.
    pub fn from_images(
        source: &FiniteModule,
        target: &FiniteModule,
        images: &[Element],
    ) -> Result<Self> {
        if images.len() != source.rank() || images.iter().any(|x| x.len() != target.rank()) {
            return Err(Error::Dimension(
                "image list does not match module ranks".to_string(),
            ));
        }
        let rows: Vec<Vec<u64>> = (0..target.rank())
            .map(|i| images.iter().map(|x| x[i]).collect())
            .collect();
        Self::new(source, target, &rows)
    }

    /// Same as `from_images` but with integer images that still need reducing.
    pub(crate) fn from_big_images(
        source: &FiniteModule,
        target: &FiniteModule,
        images: &[Vec<BigInt>],
    ) -> Result<Self> {
        let images: Vec<Element> = images.iter().map(|x| target.reduce(x)).collect();
        Self::from_images(source, target, &images)
    }

    pub fn identity(m: &FiniteModule) -> Self {
        let k = m.rank();
        let mut matrix = vec![0; k * k];
        for i in 0..k {
            matrix[i * k + i] = 1;
        }
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix,
        }
    }

    pub fn zero(source: &FiniteModule, target: &FiniteModule) -> Self {
        ModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![0; source.rank() * target.rank()],
        }
    }

    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn target(&self) -> &FiniteModule {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.matrix[i * self.source.rank() + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.target.rank())
            .map(|i| (0..self.source.rank()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Image of source generator `j`.
    pub fn column(&self, j: usize) -> Element {
        (0..self.target.rank()).map(|i| self.entry(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Element> {
        (0..self.source.rank()).map(|j| self.column(j)).collect()
    }

    pub fn apply(&self, x: &[u64]) -> Element {
        debug_assert_eq!(x.len(), self.source.rank());
        (0..self.target.rank())
            .map(|i| {
                let d = self.target.factors()[i];
                x.iter()
                    .enumerate()
                    .fold(0, |acc, (j, &xj)| add_mod(acc, mul_mod(self.entry(i, j), xj, d), d))
            })
            .collect()
    }

    pub(crate) fn int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.target.rank(), self.source.rank(), |i, j| {
            big(self.entry(i, j))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|&a| a == 0)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    fn ensure_parallel(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DomainMismatch(format!(
                "{:?} -> {:?} vs {:?} -> {:?}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_parallel(other)?;
        let k = self.source.rank();
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .enumerate()
            .map(|(idx, (a, b))| add_mod(*a, *b, self.target.factors()[idx / k.max(1)]))
            .collect();
        Ok(ModuleMorphism {
            matrix,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(self.source.ring().modulus() - 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let k = self.source.rank();
        let matrix = self
            .matrix
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let d = self.target.factors()[idx / k.max(1)];
                mul_mod(c % d, *a, d)
            })
            .collect();
        ModuleMorphism {
            matrix,
            ..self.clone()
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &ModuleMorphism) -> Result<ModuleMorphism> {
        compose(self, f)
    }

    /// Lattice generators (unreduced) of `{x : f(x) = 0}` in source
    /// coordinates.
    pub(crate) fn kernel_lattice(&self) -> Vec<Vec<BigInt>> {
        congruence_kernel(&self.int_matrix(), &self.target.factors_big())
            .expect("shapes agree by construction")
    }

    pub fn is_injective(&self) -> bool {
        let source = &self.source;
        self.kernel_lattice()
            .iter()
            .all(|x| source.reduce(x).iter().all(|&c| c == 0))
    }

    pub fn is_surjective(&self) -> bool {
        super::cokernel(self)
            .map(|q| q.module.is_zero())
            .unwrap_or(false)
    }

    /// Canonical forms make isomorphic modules equal, so an isomorphism is
    /// an injective map between equal modules.
    pub fn is_isomorphism(&self) -> bool {
        self.source == self.target && self.is_injective()
    }

    /// An endomorphism that is bijective. Finite cardinality makes injectivity
    /// enough.
    pub fn is_automorphism(&self) -> bool {
        self.is_endomorphism() && self.is_injective()
    }

    /// Two-sided inverse, if this is an isomorphism.
    pub fn inverse(&self) -> Option<ModuleMorphism> {
        if !self.is_isomorphism() {
            return None;
        }
        let inv = super::lift_along(self, &ModuleMorphism::identity(&self.target)).ok()??;
        Some(inv)
    }
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.source, self.target, self.rows())
    }
}

/// `g ∘ f`.
pub fn compose(g: &ModuleMorphism, f: &ModuleMorphism) -> Result<ModuleMorphism> {
    if f.target != g.source {
        return Err(Error::DomainMismatch(format!(
            "cannot compose {:?} after {:?}",
            g.source, f.target
        )));
    }
    let (a, b, c) = (f.source.rank(), f.target.rank(), g.target.rank());
    let mut matrix = vec![0u64; c * a];
    for i in 0..c {
        let d = g.target.factors()[i];
        for k in 0..a {
            let mut acc = 0;
            for j in 0..b {
                acc = add_mod(acc, mul_mod(g.entry(i, j), f.entry(j, k), d), d);
            }
            matrix[i * a + k] = acc;
        }
    }
    Ok(ModuleMorphism {
        source: f.source.clone(),
        target: g.target.clone(),
        matrix,
    })
}

/// Generators of `Hom(M, N)`: one elementary map per pair of generators
/// with `gcd(d_j, d_i) > 1`, sending generator `j` to `(d_i / gcd)` times
/// generator `i`. Ordered by (target row, source column).
pub fn hom_group(m: &FiniteModule, n: &FiniteModule) -> Result<Vec<ModuleMorphism>> {
    m.ring().ensure_same(n.ring())?;
    let mut gens = Vec::new();
    for (i, &di) in n.factors().iter().enumerate() {
        for (j, &dj) in m.factors().iter().enumerate() {
            let g = gcd(di, dj);
            if g == 1 {
                continue;
            }
            let mut f = ModuleMorphism::zero(m, n);
            f.matrix[i * m.rank() + j] = di / g;
            gens.push(f);
        }
    }
    Ok(gens)
}

/// `|Hom(M, N)| = prod gcd(d_j, d_i)`.
pub fn hom_group_order(m: &FiniteModule, n: &FiniteModule) -> BigUint {
    let mut order = BigUint::one();
    for &di in n.factors() {
        for &dj in m.factors() {
            order *= BigUint::from(gcd(di, dj));
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::Ring;

    fn ring(n: u64) -> Ring {
        Ring::new(n).unwrap()
    }

    fn cyc(r: &Ring, d: u64) -> FiniteModule {
        FiniteModule::cyclic(r, d).unwrap()
    }

    #[test]
    fn well_definedness_is_enforced() {
        let r = ring(4);
        let z2 = cyc(&r, 2);
        let z4 = cyc(&r, 4);
        assert!(ModuleMorphism::new(&z2, &z4, &[vec![2]]).is_ok());
        let err = ModuleMorphism::new(&z2, &z4, &[vec![1]]).unwrap_err();
        assert!(matches!(err, Error::IllDefined { row: 0, col: 0, entry: 1, .. }));
    }

    #[test]
    fn hom_z2_z4() {
        let r = ring(4);
        let gens = hom_group(&cyc(&r, 2), &cyc(&r, 4)).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].rows(), vec![vec![2]]);
        assert_eq!(hom_group_order(&cyc(&r, 2), &cyc(&r, 4)), BigUint::from(2u32));
    }

    #[test]
    fn hom_into_zero_and_endomorphisms() {
        let r = ring(4);
        let m = FiniteModule::new(&r, vec![2, 4]).unwrap();
        assert!(hom_group(&m, &FiniteModule::zero(&r)).unwrap().is_empty());
        let z4 = cyc(&r, 4);
        let gens = hom_group(&z4, &z4).unwrap();
        assert_eq!(gens, vec![ModuleMorphism::identity(&z4)]);
        assert_eq!(hom_group_order(&z4, &z4), BigUint::from(4u32));
    }

    #[test]
    fn composition_laws() {
        let r = ring(4);
        let z2 = cyc(&r, 2);
        let z4 = cyc(&r, 4);
        let f = ModuleMorphism::new(&z2, &z4, &[vec![2]]).unwrap();
        let id = ModuleMorphism::identity(&z4);
        assert_eq!(compose(&id, &f).unwrap(), f);
        let zero = ModuleMorphism::zero(&z4, &z2);
        assert!(compose(&zero, &f).unwrap().is_zero());
        let g = ModuleMorphism::new(&z4, &z2, &[vec![1]]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert!(gf.is_zero());
        assert_eq!(gf.source(), &z2);
        assert_eq!(gf.target(), &z2);
        assert!(compose(&f, &f).is_err());
    }

    #[test]
    fn injectivity_and_inverse() {
        let r = ring(12);
        let z12 = cyc(&r, 12);
        let five = ModuleMorphism::new(&z12, &z12, &[vec![5]]).unwrap();
        assert!(five.is_automorphism());
        let inv = five.inverse().unwrap();
        assert_eq!(compose(&inv, &five).unwrap(), ModuleMorphism::identity(&z12));
        let two = ModuleMorphism::new(&z12, &z12, &[vec![2]]).unwrap();
        assert!(!two.is_injective());
        assert!(two.inverse().is_none());
    }
}
