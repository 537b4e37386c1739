//! Random matrix groups for property checks and sweeps.

use rand::Rng;

use crate::matgroup::MatGroup;
use crate::zmod::arith::is_unit;
use crate::zmod::ResidueMatrix;
use crate::{Error, Result};

/// Group-order cap used when sampling, so a random pair of generators never
/// triggers a full `GL_r` enumeration.
pub const SAMPLE_CAP: usize = 5_000;

pub fn random_matrix<R: Rng + ?Sized>(m: u64, r: usize, rng: &mut R) -> ResidueMatrix {
    let entries = (0..r * r).map(|_| rng.gen_range(0..m)).collect();
    ResidueMatrix::new(m, r, r, entries).expect("valid modulus")
}

pub fn random_invertible<R: Rng + ?Sized>(m: u64, r: usize, rng: &mut R) -> ResidueMatrix {
    loop {
        let a = random_matrix(m, r, rng);
        if a.is_invertible() {
            return a;
        }
    }
}

pub fn random_unit<R: Rng + ?Sized>(m: u64, rng: &mut R) -> u64 {
    loop {
        let u = rng.gen_range(1..m.max(2));
        if is_unit(u, m) {
            return u % m;
        }
    }
}

/// `<g>` for a uniformly random `g` in `GL_r(Z/m)`.
pub fn random_cyclic_subgroup<R: Rng + ?Sized>(m: u64, r: usize, rng: &mut R) -> Result<MatGroup> {
    MatGroup::generated_by(vec![random_invertible(m, r, rng)])
}

/// A subgroup of the stabilizer of `(1, 0)` in `GL_2(Z/p^n)`, generated by
/// one to three random matrices `[[1, f], [0, c]]` with `c` a unit.
pub fn random_stabilizer_subgroup<R: Rng + ?Sized>(p: u64, n: u32, rng: &mut R) -> Result<MatGroup> {
    let m = p.pow(n);
    let k = rng.gen_range(1..=3);
    let gens = (0..k)
        .map(|_| ResidueMatrix::new(m, 2, 2, vec![1, rng.gen_range(0..m), 0, random_unit(m, rng)]))
        .collect::<Result<Vec<_>>>()?;
    MatGroup::generated_by(gens)
}

/// A stabilizer subgroup conjugated by a random `T`; it fixes `T (1, 0)`,
/// a vector of order `p^n`.
pub fn random_fixing_subgroup<R: Rng + ?Sized>(p: u64, n: u32, rng: &mut R) -> Result<(MatGroup, Vec<u64>)> {
    let g = random_stabilizer_subgroup(p, n, rng)?;
    let t = random_invertible(p.pow(n), 2, rng);
    let fixed = t.column(0);
    Ok((g.conjugate(&t)?, fixed))
}

fn block_diagonal(blocks: &[ResidueMatrix]) -> ResidueMatrix {
    let m = blocks[0].modulus();
    let r: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut entries = vec![0; r * r];
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                entries[(offset + i) * r + offset + j] = b.get(i, j);
            }
        }
        offset += b.rows();
    }
    ResidueMatrix::new(m, r, r, entries).expect("valid modulus")
}

/// A group of block-diagonal matrices over `Z/m` with two blocks of random
/// sizes in `1..=2`, generated by one or two random block-diagonal
/// elements. Returns the group and its block sizes; retries until the
/// group has at most [`SAMPLE_CAP`] elements.
pub fn random_block_diagonal_group<R: Rng + ?Sized>(m: u64, rng: &mut R) -> Result<(MatGroup, Vec<usize>)> {
    loop {
        let sizes = vec![rng.gen_range(1..=2), rng.gen_range(1..=2)];
        let k = rng.gen_range(1..=2);
        let gens: Vec<ResidueMatrix> = (0..k)
            .map(|_| {
                let blocks: Vec<ResidueMatrix> = sizes.iter().map(|&s| random_invertible(m, s, rng)).collect();
                block_diagonal(&blocks)
            })
            .collect();
        match MatGroup::closure(gens, SAMPLE_CAP) {
            Ok(g) => return Ok((g, sizes)),
            Err(Error::CapExceeded(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn samplers_respect_shapes() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_stabilizer_subgroup(5, 2, &mut rng).unwrap();
            assert!(g.fixes_vector(&[1, 0]).unwrap());
            let (h, v) = random_fixing_subgroup(3, 2, &mut rng).unwrap();
            assert!(h.fixes_vector(&v).unwrap());
            let (b, sizes) = random_block_diagonal_group(8, &mut rng).unwrap();
            assert_eq!(b.rank(), sizes.iter().sum::<usize>());
            assert!(b.order() <= SAMPLE_CAP);
        }
    }
}
