//! Brute-force oracles. Each one decides its question by enumeration or by a
//! textbook formula, sharing no code path with the algorithm it checks.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::finmod::{extend_along, injective_hull, FiniteModule, ModuleMorphism, Submodule};
use crate::linalg::IntMatrix;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for i in 0..k - 1 {
        if a[i][i].is_zero() {
            match (i + 1..k).find(|&r| !a[r][i].is_zero()) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let v = &a[r][c] * &a[i][i] - &a[r][i] * &a[i][c];
                a[r][c] = v / &prev;
            }
        }
        prev = a[i][i].clone();
    }
    let det = a[k - 1][k - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors `d_k = D_k / D_{k-1}`, where `D_k` is the gcd of all
/// `k x k` minors. Stops at the rank, so the result has no zero entries.
pub fn minor_gcd_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = (a.rows(), a.cols());
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in combinations(r, k) {
            for cols in combinations(c, k) {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect())
                    .collect();
                g = g.gcd(&determinant(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Every vector of `(Z/n)^len`, in lexicographic order.
fn all_vectors(len: usize, n: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (n as usize).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        v
    })
}

fn residue(x: &BigInt, n: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(n));
    r.try_into().expect("residue below n")
}

fn apply_mod(a: &IntMatrix, x: &[u64], n: u64) -> Vec<u64> {
    (0..a.rows())
        .map(|i| {
            let s: BigInt = (0..a.cols()).map(|j| &a[(i, j)] * BigInt::from(x[j])).sum();
            residue(&s, n)
        })
        .collect()
}

/// The lexicographically first solution of `a x ≡ b (mod n)`.
pub fn exhaustive_solve_mod(a: &IntMatrix, b: &[BigInt], n: u64) -> Option<Vec<u64>> {
    let b: Vec<u64> = b.iter().map(|x| residue(x, n)).collect();
    all_vectors(a.cols(), n).find(|x| apply_mod(a, x, n) == b)
}

/// `{x : a x ≡ 0 (mod n)}` by enumeration.
pub fn exhaustive_kernel(a: &IntMatrix, n: u64) -> BTreeSet<Vec<u64>> {
    let zero = vec![0; a.rows()];
    all_vectors(a.cols(), n)
        .filter(|x| apply_mod(a, x, n) == zero)
        .collect()
}

/// The subgroup of `(Z/n)^len` generated by `gens`, by closure under addition.
pub fn span_mod(gens: &[Vec<u64>], len: usize, n: u64) -> BTreeSet<Vec<u64>> {
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::from([vec![0; len]]);
    let mut frontier: Vec<Vec<u64>> = vec![vec![0; len]];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % n).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// All elements of `m`.
pub fn elements(m: &FiniteModule) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &d in m.factors() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..d).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// The subgroup of `m` generated by `gens`.
pub fn subgroup(m: &FiniteModule, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::from([m.zero_element()]);
    let mut frontier = vec![m.zero_element()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = m.add(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// `S ∩ dM = dS` for every divisor `d` of `n`.
pub fn is_pure_exhaustive(s: &Submodule, m: &FiniteModule) -> bool {
    let s_elems = subgroup(m, s.generators());
    let m_elems = elements(m);
    m.ring().divisors().into_iter().all(|d| {
        let dm: BTreeSet<Vec<u64>> = m_elems.iter().map(|x| m.scale(d, x)).collect();
        let ds: BTreeSet<Vec<u64>> = s_elems.iter().map(|x| m.scale(d, x)).collect();
        s_elems.iter().filter(|x| dm.contains(*x)).all(|x| ds.contains(x))
    })
}

/// The image of `f`, by applying it to every element.
pub fn image_set(f: &ModuleMorphism) -> BTreeSet<Vec<u64>> {
    elements(f.source()).iter().map(|x| f.apply(x)).collect()
}

pub fn is_surjective_exhaustive(f: &ModuleMorphism) -> bool {
    image_set(f).len() as u64 == f.target().size()
}

/// `|Hom(M, N)| = ∏ gcd(d_i, e_j)`.
pub fn hom_order_formula(m: &FiniteModule, n: &FiniteModule) -> u128 {
    m.factors()
        .iter()
        .flat_map(|&d| n.factors().iter().map(move |&e| u128::from(d.gcd(&e))))
        .product()
}

/// All matrices satisfying the well-definedness congruences, when there are
/// at most `cap` of them.
pub fn exhaustive_hom(
    m: &FiniteModule,
    n: &FiniteModule,
    cap: u128,
) -> Option<BTreeSet<Vec<Vec<u64>>>> {
    if hom_order_formula(m, n) > cap {
        return None;
    }
    let (r, c) = (n.rank(), m.rank());
    // admissible values per entry: a with a * d_j ≡ 0 (mod e_i)
    let choices: Vec<Vec<u64>> = (0..r * c)
        .map(|k| {
            let (i, j) = (k / c, k % c);
            let (e, d) = (n.factors()[i], m.factors()[j]);
            (0..e).filter(|a| a * d % e == 0).collect()
        })
        .collect();
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for opts in &choices {
        out = out
            .into_iter()
            .flat_map(|v| {
                opts.iter().map(move |&a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    Some(
        out.into_iter()
            .map(|flat| {
                if c == 0 {
                    vec![Vec::new(); r]
                } else {
                    flat.chunks(c).map(<[u64]>::to_vec).collect()
                }
            })
            .collect(),
    )
}

/// Phantom by the dual route: projectives over `Z/n` are injective, so `f`
/// factors through one iff it extends along the injective hull of its
/// source.
pub fn phantom_via_hull(f: &ModuleMorphism) -> bool {
    let hull = injective_hull(f.source()).expect("hull exists");
    extend_along(&hull, f).expect("same source").is_some()
}

/// Projective iff every invariant factor has, at each prime of `n`, either
/// no part or the full part of `n`.
pub fn projective_by_valuations(m: &FiniteModule) -> bool {
    let n = m.ring().modulus();
    m.factors().iter().all(|&d| {
        let mut rest = n;
        let mut p = 2;
        while rest > 1 {
            if rest.is_multiple_of(p) {
                let mut q = 1;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    q *= p;
                }
                let part = d.gcd(&q);
                if part != 1 && part != q {
                    return false;
                }
            }
            p += 1;
        }
        true
    })
}

/// Invariant factors from elementary divisors: split each cyclic order into
/// prime powers, then pair the largest powers of every prime.
pub fn invariant_factors_of(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &d in orders {
        let mut rest = d;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                let mut q = 1;
                while rest % p == 0 {
                    rest /= p;
                    q *= p;
                }
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        // largest power goes to the last (largest) invariant factor
        for (k, q) in powers.iter().enumerate() {
            out[len - 1 - k] *= q;
        }
    }
    out
}

/// Absolute values, for comparing diagonals up to sign.
pub fn abs_all(xs: &[BigInt]) -> Vec<BigInt> {
    xs.iter().map(Signed::abs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::Ring;

    #[test]
    fn minor_gcd_example() {
        let a = IntMatrix::from_rows(&[vec![2i64, 4], vec![6, 8]]);
        assert_eq!(minor_gcd_diagonal(&a), vec![BigInt::from(2), BigInt::from(4)]);
        let z = IntMatrix::from_rows(&[vec![0i64, 0]]);
        assert!(minor_gcd_diagonal(&z).is_empty());
    }

    #[test]
    fn determinant_examples() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
        };
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[2, 0, 0], &[0, 3, 0], &[1, 1, 5]])), BigInt::from(30));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn kernel_example() {
        let a = IntMatrix::from_rows(&[vec![2i64]]);
        let k = exhaustive_kernel(&a, 4);
        assert_eq!(k, BTreeSet::from([vec![0], vec![2]]));
        assert_eq!(span_mod(&[vec![2]], 1, 4), k);
    }

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(invariant_factors_of(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors_of(&[4, 2, 3]), vec![2, 12]);
        assert!(invariant_factors_of(&[1]).is_empty());
    }

    #[test]
    fn hom_counts() {
        let r = Ring::new(4).unwrap();
        let m = FiniteModule::new(&r, vec![2, 4]).unwrap();
        let homs = exhaustive_hom(&m, &m, 1 << 16).unwrap();
        assert_eq!(homs.len() as u128, hom_order_formula(&m, &m));
        assert_eq!(homs.len(), 2 * 2 * 2 * 4);
    }

    #[test]
    fn purity_examples() {
        let r = Ring::new(4).unwrap();
        let z4 = FiniteModule::new(&r, vec![4]).unwrap();
        assert!(!is_pure_exhaustive(&Submodule::new(&z4, vec![vec![2]]).unwrap(), &z4));
        let m = FiniteModule::new(&r, vec![2, 4]).unwrap();
        assert!(is_pure_exhaustive(&Submodule::new(&m, vec![vec![1, 2]]).unwrap(), &m));
    }
}
