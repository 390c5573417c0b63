//! Factorization problems: lifting along a map into the common target and
//! extending along a map out of the common source. Every "factors through"
//! question in the crate ends up here.

use num_bigint::BigInt;

use super::{big, gcd, ModuleMorphism};
use crate::error::{Error, Result};
use crate::linalg::{solve_congruences, IntMatrix};

/// Step by which an entry of a map `Z/src -> Z/dst` must be a multiple.
fn step(dst: u64, src: u64) -> u64 {
    dst / gcd(dst, src)
}

/// Some `t: M -> L` with `g ∘ t = h`, where `g: L -> N` and `h: M -> N`.
pub fn lift_along(g: &ModuleMorphism, h: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    Ok(lift_along_detailed(g, h)?.ok())
}

/// Like [`lift_along`], but a failure names the first source generator of `h`
/// whose image admits no compatible preimage. That index is the
/// non-factorization certificate.
pub fn lift_along_detailed(
    g: &ModuleMorphism,
    h: &ModuleMorphism,
) -> Result<std::result::Result<ModuleMorphism, usize>> {
    if g.target() != h.target() {
        return Err(Error::DomainMismatch(format!(
            "lift needs a common target, got {:?} and {:?}",
            g.target(),
            h.target()
        )));
    }
    let (l, m, n) = (g.source(), h.source(), g.target());
    let moduli = n.factors_big();
    let mut images: Vec<Vec<BigInt>> = Vec::with_capacity(m.rank());
    for k in 0..m.rank() {
        let dk = m.factors()[k];
        // t_jk = c_j * step(d^L_j, d^M_k)
        let steps: Vec<u64> = l.factors().iter().map(|&dj| step(dj, dk)).collect();
        let a = IntMatrix::from_fn(n.rank(), l.rank(), |i, j| big(g.entry(i, j)) * big(steps[j]));
        let b: Vec<BigInt> = h.column(k).into_iter().map(big).collect();
        match solve_congruences(&a, &b, &moduli)? {
            Some(c) => images.push(
                c.iter()
                    .zip(&steps)
                    .map(|(cj, &s)| cj * big(s))
                    .collect(),
            ),
            None => return Ok(Err(k)),
        }
    }
    Ok(Ok(ModuleMorphism::from_big_images(m, l, &images)?))
}

/// Some `t: N -> L` with `t ∘ g = h`, where `g: M -> N` and `h: M -> L`.
pub fn extend_along(g: &ModuleMorphism, h: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    if g.source() != h.source() {
        return Err(Error::DomainMismatch(format!(
            "extension needs a common source, got {:?} and {:?}",
            g.source(),
            h.source()
        )));
    }
    let (m, n, l) = (g.source(), g.target(), h.target());
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(l.rank());
    for i in 0..l.rank() {
        let di = l.factors()[i];
        // t_ij = c_j * step(d^L_i, d^N_j); one congruence per generator of M
        let steps: Vec<u64> = n.factors().iter().map(|&dj| step(di, dj)).collect();
        let a = IntMatrix::from_fn(m.rank(), n.rank(), |k, j| {
            big(steps[j]) * big(g.entry(j, k))
        });
        let b: Vec<BigInt> = (0..m.rank()).map(|k| big(h.entry(i, k))).collect();
        let moduli = vec![big(di); m.rank()];
        match solve_congruences(&a, &b, &moduli)? {
            Some(c) => rows.push(
                c.iter()
                    .zip(&steps)
                    .map(|(cj, &s)| super::reduce_big(&(cj * big(s)), di))
                    .collect(),
            ),
            None => return Ok(None),
        }
    }
    Ok(Some(ModuleMorphism::new(n, l, &rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::{compose, FiniteModule, Ring};

    fn setup() -> (Ring, FiniteModule, FiniteModule) {
        let r = Ring::new(4).unwrap();
        let z2 = FiniteModule::cyclic(&r, 2).unwrap();
        let z4 = FiniteModule::cyclic(&r, 4).unwrap();
        (r, z2, z4)
    }

    #[test]
    fn lift_identity_of_z2_along_free_cover_fails() {
        let (_, z2, z4) = setup();
        let epi = ModuleMorphism::new(&z4, &z2, &[vec![1]]).unwrap();
        let id = ModuleMorphism::identity(&z2);
        assert_eq!(lift_along_detailed(&epi, &id).unwrap(), Err(0));
    }

    #[test]
    fn lift_along_surjection_from_free() {
        let (_, z2, z4) = setup();
        let epi = ModuleMorphism::new(&z4, &z2, &[vec![1]]).unwrap();
        let h = ModuleMorphism::new(&z4, &z2, &[vec![1]]).unwrap();
        let t = lift_along(&epi, &h).unwrap().unwrap();
        assert_eq!(compose(&epi, &t).unwrap(), h);
    }

    #[test]
    fn extend_along_inclusion() {
        let (_, z2, z4) = setup();
        let incl = ModuleMorphism::new(&z2, &z4, &[vec![2]]).unwrap();
        // the identity of Z/2 does not extend to Z/4
        let id = ModuleMorphism::identity(&z2);
        assert!(extend_along(&incl, &id).unwrap().is_none());
        // the inclusion itself extends (by the identity)
        let t = extend_along(&incl, &incl).unwrap().unwrap();
        assert_eq!(compose(&t, &incl).unwrap(), incl);
    }

    #[test]
    fn mismatched_shapes_are_errors() {
        let (_, z2, z4) = setup();
        let a = ModuleMorphism::identity(&z2);
        let b = ModuleMorphism::identity(&z4);
        assert!(lift_along(&a, &b).is_err());
        assert!(extend_along(&a, &b).is_err());
    }
}
