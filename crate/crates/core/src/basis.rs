//! The standard basis of `W = (C^d)^{⊗n}`, indexed by d-ary strings.
//!
//! Site 1 is the most significant digit: string `x_1 x_2 … x_n` has index
//! `Σ x_j d^{n-j}`.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest supported `d^n`.
pub const MAX_DIM: usize = 6561;

/// `d^n`, refusing anything above [`MAX_DIM`].
pub fn space_dim(n: usize, d: usize) -> Result<usize> {
    let cap = Error::CapExceeded { n, d, cap: MAX_DIM };
    if n == 0 || d == 0 {
        return Err(Error::InvalidSpec(format!("need n ≥ 1 and d ≥ 1, got n = {n}, d = {d}")));
    }
    let mut dim: usize = 1;
    for _ in 0..n {
        dim = dim.checked_mul(d).ok_or(cap.clone())?;
        if dim > MAX_DIM {
            return Err(cap);
        }
    }
    Ok(dim)
}

/// Digits of `index`, site 1 first.
pub fn digits(index: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = rest % d;
        rest /= d;
    }
    out
}

pub fn index_of(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// Renders an index as its digit string, e.g. `0110`.
pub fn label(index: usize, n: usize, d: usize) -> String {
    let ds = digits(index, n, d);
    if d <= 10 {
        ds.iter().map(|x| char::from_digit(*x as u32, 10).unwrap()).collect()
    } else {
        ds.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// The permutation of string indices induced by permuting sites: the string
/// `x` is sent to `y` with `y_{σ(i)} = x_i`.
pub fn permute_strings(n: usize, d: usize, sigma: &Permutation) -> Result<Vec<usize>> {
    if sigma.degree() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: sigma.degree(),
        });
    }
    let dim = space_dim(n, d)?;
    let mut ys = vec![0; n];
    Ok((0..dim)
        .map(|x| {
            let xs = digits(x, n, d);
            for (i, &xi) in xs.iter().enumerate() {
                ys[sigma.apply(i)] = xi;
            }
            index_of(&ys, d)
        })
        .collect())
}

/// Count of each digit value in the string, i.e. its torus weight.
pub fn weight(index: usize, n: usize, d: usize) -> Vec<usize> {
    let mut w = vec![0; d];
    for x in digits(index, n, d) {
        w[x] += 1;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_endian_digits() {
        assert_eq!(digits(5, 3, 2), vec![1, 0, 1]);
        assert_eq!(digits(7, 2, 3), vec![2, 1]);
        assert_eq!(index_of(&[2, 1], 3), 7);
        assert_eq!(label(6, 3, 2), "110");
    }

    #[test]
    fn cap() {
        assert_eq!(space_dim(8, 3).unwrap(), 6561);
        assert_eq!(space_dim(12, 2).unwrap(), 4096);
        assert!(matches!(space_dim(13, 2), Err(Error::CapExceeded { .. })));
        assert!(matches!(space_dim(13, 3), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn site_swap_exchanges_01_and_10() {
        let swap = Permutation::transposition(2, 0, 1);
        assert_eq!(permute_strings(2, 2, &swap).unwrap(), vec![0, 2, 1, 3]);
    }
}
