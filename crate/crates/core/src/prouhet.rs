//! Thue-Morse bits and the Prouhet split of `1..=2^(n+1)`.
//!
//! Positions are 1-based: bit `i` is 1 exactly when `i - 1` has an even
//! number of set bits, so the sequence starts `1 0 0 1 0 1 1 0 …`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::generator::{BaseIdentity, ShiftVector, DEFAULT_MAX_LEVEL};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSequence {
    bits: Vec<u8>,
}

impl BitSequence {
    /// Bit at 1-based position `i`.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Thue-Morse bit for 1-based position `i`.
pub fn thue_morse_bit(i: u64) -> u8 {
    u8::from((i - 1).count_ones().is_multiple_of(2))
}

pub fn thue_morse(length: usize) -> BitSequence {
    BitSequence {
        bits: (1..=length as u64).map(thue_morse_bit).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProuhetSplit {
    pub n: u32,
    /// Positions carrying bit 1, ascending.
    pub ones: Vec<u64>,
    /// Positions carrying bit 0, ascending.
    pub zeros: Vec<u64>,
}

impl ProuhetSplit {
    /// `Σ ones^m` and `Σ zeros^m` as exact integers.
    pub fn power_sums(&self, m: u32) -> (BigInt, BigInt) {
        let sum = |side: &[u64]| side.iter().map(|&v| num_traits::pow(BigInt::from(v), m as usize)).sum();
        (sum(&self.ones), sum(&self.zeros))
    }
}

/// Splits `1..=2^(n+1)` by Thue-Morse bit, verifying powers `1..=n`.
pub fn prouhet_split(n: u32) -> Result<ProuhetSplit> {
    check_n(n)?;
    let len = 1u64 << (n + 1);
    let (ones, zeros): (Vec<u64>, Vec<u64>) = (1..=len).partition(|&i| thue_morse_bit(i) == 1);
    let split = ProuhetSplit { n, ones, zeros };
    for m in 1..=n {
        let (l, r) = split.power_sums(m);
        if l != r {
            return Err(Error::ReductionInvariant {
                power: m,
                detail: format!("Prouhet split of 1..{len}: {l} != {r}"),
            });
        }
    }
    Ok(split)
}

/// Base `(1, 4 | 2, 3)` with shifts `(0, 2^2, 2^3, …, 2^n)`; generating
/// from these reproduces [`prouhet_split`] after sorting.
pub fn prouhet_params<T: Scalar>(n: u32) -> Result<(BaseIdentity<T>, ShiftVector<T>)> {
    check_n(n)?;
    let base = BaseIdentity::pair(T::from_i64(1), T::from_i64(4), T::from_i64(2), T::from_i64(3))?;
    let mut shifts = vec![T::zero()];
    shifts.extend((2..=n).map(|j| T::from_bigint(BigInt::from(1u8) << j)));
    Ok((base, ShiftVector::new(shifts)?))
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Config("n must be at least 1".into()));
    }
    if n as usize > DEFAULT_MAX_LEVEL {
        return Err(Error::LevelLimit {
            requested: n as usize,
            limit: DEFAULT_MAX_LEVEL,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::generate;
    use crate::scalar::{sorted, Rational};

    #[test]
    fn first_sixteen_bits() {
        let seq = thue_morse(16);
        assert_eq!(seq.bits(), &[1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(seq.bit(1), 1);
    }

    #[test]
    fn odd_even_positions_complement() {
        let seq = thue_morse(1024);
        for i in 1..=512 {
            assert_ne!(seq.bit(2 * i - 1), seq.bit(2 * i));
        }
    }

    #[test]
    fn small_splits() {
        let s = prouhet_split(1).unwrap();
        assert_eq!((s.ones.as_slice(), s.zeros.as_slice()), (&[1, 4][..], &[2, 3][..]));

        let s = prouhet_split(2).unwrap();
        assert_eq!(s.ones, vec![1, 4, 6, 7]);
        assert_eq!(s.zeros, vec![2, 3, 5, 8]);
        // direct oracle
        assert_eq!(1 + 4 + 6 + 7, 2 + 3 + 5 + 8);
        assert_eq!(1 + 16 + 36 + 49, 4 + 9 + 25 + 64);

        let s = prouhet_split(3).unwrap();
        assert_eq!(s.ones, vec![1, 4, 6, 7, 10, 11, 13, 16]);
        assert_eq!(s.zeros, vec![2, 3, 5, 8, 9, 12, 14, 15]);
        assert!(prouhet_split(0).is_err());
    }

    #[test]
    fn params_reproduce_split() {
        let (base, shifts) = prouhet_params::<Rational>(3).unwrap();
        assert_eq!(shifts.as_slice(), &[Rational::from(0), Rational::from(4), Rational::from(8)]);
        let pair = generate(&base, &shifts).unwrap();
        let ones: Vec<Rational> = prouhet_split(3).unwrap().ones.iter().map(|&v| Rational::from(v as i64)).collect();
        assert_eq!(sorted(pair.xs()), ones);

        let (_, shifts) = prouhet_params::<Rational>(1).unwrap();
        assert_eq!(shifts.as_slice(), &[Rational::from(0)]);
    }

    #[test]
    fn split_of_thirty_two() {
        let s = prouhet_split(4).unwrap();
        assert_eq!(s.ones.len(), 16);
        // brute-force oracle over 1..=32
        for m in 1..=4u32 {
            let (mut l, mut r) = (0u64, 0u64);
            for i in 1..=32u64 {
                if (i - 1).count_ones() % 2 == 0 {
                    l += i.pow(m);
                } else {
                    r += i.pow(m);
                }
            }
            assert_eq!(l, r, "power {m}");
        }
    }
}
