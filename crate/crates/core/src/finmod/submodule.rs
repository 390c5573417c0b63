use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::{big, Element, FiniteModule, ModuleMorphism, Presented};
use crate::error::{Error, Result};
use crate::linalg::{congruence_kernel, solve_congruences, IntMatrix};

/// The subgroup of `ambient` generated by `generators`. Over `Z/n` every
/// subgroup is a submodule.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    ambient: FiniteModule,
    generators: Vec<Element>,
}

impl Submodule {
    pub fn new(ambient: &FiniteModule, generators: Vec<Element>) -> Result<Submodule> {
        for g in &generators {
            ambient.check_element(g)?;
        }
        Ok(Submodule {
            ambient: ambient.clone(),
            generators,
        })
    }

    pub fn zero(ambient: &FiniteModule) -> Submodule {
        Submodule {
            ambient: ambient.clone(),
            generators: Vec::new(),
        }
    }

    pub fn whole(ambient: &FiniteModule) -> Submodule {
        Submodule {
            ambient: ambient.clone(),
            generators: (0..ambient.rank()).map(|i| ambient.basis_element(i)).collect(),
        }
    }

    /// `Im(f)` as a submodule of the target.
    pub fn image_of(f: &ModuleMorphism) -> Submodule {
        Submodule {
            ambient: f.target().clone(),
            generators: f.columns(),
        }
    }

    pub fn ambient(&self) -> &FiniteModule {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub(crate) fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.ambient.rank(), self.generators.len(), |i, j| {
            big(self.generators[j][i])
        })
    }

    /// Membership, decided by solving `G c ≡ x` against the generator matrix.
    pub fn contains(&self, x: &[u64]) -> bool {
        if !self.ambient.is_element(x) {
            return false;
        }
        let b: Vec<BigInt> = x.iter().map(|&a| big(a)).collect();
        solve_congruences(&self.generator_matrix(), &b, &self.ambient.factors_big())
            .expect("shapes agree by construction")
            .is_some()
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        self.ambient == other.ambient && other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as subsets of the ambient module.
    pub fn same_as(&self, other: &Submodule) -> bool {
        self.contains_submodule(other) && other.contains_submodule(self)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.iter().all(|&a| a == 0))
    }

    pub fn is_whole(&self) -> bool {
        self.contains_submodule(&Submodule::whole(&self.ambient))
    }

    /// `self + other`.
    pub fn join(&self, other: &Submodule) -> Result<Submodule> {
        if self.ambient != other.ambient {
            return Err(Error::DomainMismatch(
                "submodules of different modules".to_string(),
            ));
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Submodule {
            ambient: self.ambient.clone(),
            generators: gens,
        })
    }

    pub fn with_generator(&self, x: Element) -> Result<Submodule> {
        self.ambient.check_element(&x)?;
        let mut gens = self.generators.clone();
        gens.push(x);
        Ok(Submodule {
            ambient: self.ambient.clone(),
            generators: gens,
        })
    }

    /// `d * S`.
    pub fn scaled(&self, d: u64) -> Submodule {
        Submodule {
            ambient: self.ambient.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| self.ambient.scale(d, g))
                .collect(),
        }
    }

    /// `f(S)` as a submodule of `f.target()`.
    pub fn image_under(&self, f: &ModuleMorphism) -> Result<Submodule> {
        if f.source() != &self.ambient {
            return Err(Error::DomainMismatch(
                "morphism source is not the ambient module".to_string(),
            ));
        }
        Ok(Submodule {
            ambient: f.target().clone(),
            generators: self.generators.iter().map(|g| f.apply(g)).collect(),
        })
    }

    /// `f^{-1}(S)` as a submodule of `f.source()`.
    pub fn preimage_under(&self, f: &ModuleMorphism) -> Result<Submodule> {
        if f.target() != &self.ambient {
            return Err(Error::DomainMismatch(
                "morphism target is not the ambient module".to_string(),
            ));
        }
        // (x, c) with f(x) - G c = 0
        let fm = f.int_matrix();
        let g = self.generator_matrix();
        let neg_g = IntMatrix::from_fn(g.rows(), g.cols(), |i, j| -g[(i, j)].clone());
        let system = fm.hstack(&neg_g)?;
        let kernel = congruence_kernel(&system, &self.ambient.factors_big())?;
        let source = f.source();
        let mut gens: Vec<Element> = kernel
            .iter()
            .map(|v| source.reduce(&v[..source.rank()]))
            .filter(|x| x.iter().any(|&a| a != 0))
            .collect();
        gens.dedup();
        Ok(Submodule {
            ambient: source.clone(),
            generators: gens,
        })
    }

    /// `self ∩ other`.
    pub fn intersection(&self, other: &Submodule) -> Result<Submodule> {
        if self.ambient != other.ambient {
            return Err(Error::DomainMismatch(
                "submodules of different modules".to_string(),
            ));
        }
        let g1 = self.generator_matrix();
        let g2 = other.generator_matrix();
        let neg_g2 = IntMatrix::from_fn(g2.rows(), g2.cols(), |i, j| -g2[(i, j)].clone());
        let kernel = congruence_kernel(&g1.hstack(&neg_g2)?, &self.ambient.factors_big())?;
        let k = self.generators.len();
        let mut gens: Vec<Element> = Vec::new();
        for v in kernel {
            let x = g1.mul_vec(&v[..k])?;
            let x = self.ambient.reduce(&x);
            if x.iter().any(|&a| a != 0) && !gens.contains(&x) {
                gens.push(x);
            }
        }
        Ok(Submodule {
            ambient: self.ambient.clone(),
            generators: gens,
        })
    }

    /// The submodule as an abstract canonical module with its inclusion.
    pub fn present(&self) -> Result<(FiniteModule, ModuleMorphism)> {
        let g = self.generator_matrix();
        let relations = congruence_kernel(&g, &self.ambient.factors_big())?;
        let relations = IntMatrix::from_columns(self.generators.len(), &relations);
        let presented = Presented::new(self.ambient.ring(), &relations)?;
        let images: Vec<Element> = self.generators.clone();
        let inclusion = presented.map_out(&self.ambient, &images)?;
        Ok((presented.module, inclusion))
    }

    pub fn cardinality(&self) -> BigUint {
        match self.present() {
            Ok((m, _)) => m.cardinality(),
            Err(_) => BigUint::one(),
        }
    }

    /// Same subgroup, generated by the canonical generators of its
    /// presentation.
    pub fn normalized(&self) -> Result<Submodule> {
        let (_, inclusion) = self.present()?;
        Ok(Submodule {
            ambient: self.ambient.clone(),
            generators: inclusion.columns(),
        })
    }

    /// All elements, by closing the generators under addition. Exponential;
    /// meant for small modules and reference checks.
    pub fn elements(&self) -> BTreeSet<Element> {
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        let zero = self.ambient.zero_element();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in &self.generators {
                let y = self.ambient.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}> in {:?}", self.generators, self.ambient)
    }
}
