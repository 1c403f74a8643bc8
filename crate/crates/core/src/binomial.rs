use num_bigint::BigInt;
use num_traits::One;

/// Row `C(t, 0), …, C(t, t)` via `C(t, u+1) = C(t, u) · (t - u) / (u + 1)`.
pub fn binomial_row(t: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(t as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for u in 0..t {
        c = c * BigInt::from(t - u) / BigInt::from(u + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(t: u32, u: u32) -> BigInt {
    if u > t {
        return BigInt::from(0);
    }
    binomial_row(t).swap_remove(u as usize)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
