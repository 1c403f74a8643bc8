//! 4×4 magic squares from Thue-Morse counting and from the parametric
//! template built on a balanced base `a + b = c + d`.
//!
//! The template's sixteen entries are exactly the level-3 solution pair for
//! base `(a, b | c, d)` and shifts `(0, k1, k2)`, laid out so every row,
//! column and main diagonal sums to `2(a + b + k1 + k2)`.

use crate::error::Result;
use crate::generator::BaseIdentity;
use crate::prouhet::thue_morse_bit;
use crate::scalar::{sorted, sum, Scalar};
use crate::verifier::{CheckKind, VerificationReport};

#[derive(Clone, Debug, PartialEq)]
pub struct MagicSquare<T> {
    pub entries: [[T; 4]; 4],
    pub magic_sum: T,
}

/// Parameters `(a, b, c, d, k1, k2)` that make the template reproduce the
/// Thue-Morse square entry by entry.
pub const THUE_MORSE_PARAMS: [i64; 6] = [2, 3, 1, 4, 4, 8];

/// The Prouhet parameters `a = 1, b = 4, c = 2, d = 3` with `k1 = 4,
/// k2 = 8`. They produce a magic square on the same sixteen numbers, but
/// with the two sides swapped relative to the Thue-Morse square.
pub const PROUHET_PARAMS: [i64; 6] = [1, 4, 2, 3, 4, 8];

impl<T: Scalar> MagicSquare<T> {
    pub fn new(entries: [[T; 4]; 4], magic_sum: T) -> Self {
        Self { entries, magic_sum }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T; 4]> {
        self.entries.iter()
    }

    /// Entries in row-major order.
    pub fn flatten(&self) -> Vec<T> {
        self.entries.iter().flat_map(|r| r.iter().cloned()).collect()
    }

    /// True when no value repeats. Magic-ness does not require this.
    pub fn has_distinct_entries(&self) -> bool {
        let s = sorted(&self.flatten());
        s.windows(2).all(|w| w[0] != w[1])
    }
}

/// Boxes counted 1..16 in row-major order. Boxes with Thue-Morse bit 0 hold
/// their own index; `None` marks the boxes still to be filled.
pub fn thue_morse_half_square() -> [[Option<u32>; 4]; 4] {
    let mut grid = [[None; 4]; 4];
    for i in 1..=16u32 {
        if thue_morse_bit(i as u64) == 0 {
            grid[((i - 1) / 4) as usize][((i - 1) % 4) as usize] = Some(i);
        }
    }
    grid
}

/// Completes [`thue_morse_half_square`] by counting 16 down to 1 through all
/// boxes, writing the count into each empty box.
pub fn thue_morse_square<T: Scalar>() -> MagicSquare<T> {
    let half = thue_morse_half_square();
    let entries = std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let index = (r * 4 + c + 1) as i64;
            let value = half[r][c].map(i64::from).unwrap_or(17 - index);
            T::from_i64(value)
        })
    });
    MagicSquare::new(entries, T::from_i64(34))
}

/// Template layout:
///
/// ```text
/// d+k1+k2   a         b         c+k1+k2
/// c+k1      b+k2      a+k2      d+k1
/// c+k2      b+k1      a+k1      d+k2
/// d         a+k1+k2   b+k1+k2   c
/// ```
pub fn parametric_square<T: Scalar>(a: T, b: T, c: T, d: T, k1: T, k2: T) -> Result<MagicSquare<T>> {
    BaseIdentity::pair(a.clone(), b.clone(), c.clone(), d.clone())?.validate()?;
    let kk = k1.clone() + k2.clone();
    let entries = [
        [d.clone() + kk.clone(), a.clone(), b.clone(), c.clone() + kk.clone()],
        [
            c.clone() + k1.clone(),
            b.clone() + k2.clone(),
            a.clone() + k2.clone(),
            d.clone() + k1.clone(),
        ],
        [
            c.clone() + k2.clone(),
            b.clone() + k1.clone(),
            a.clone() + k1.clone(),
            d.clone() + k2.clone(),
        ],
        [d, a.clone() + kk.clone(), b.clone() + kk.clone(), c],
    ];
    let magic_sum = T::from_i64(2) * (a + b + kk);
    Ok(MagicSquare::new(entries, magic_sum))
}

/// Checks the four rows, four columns and two main diagonals against the
/// square's claimed magic sum.
pub fn verify_magic<T: Scalar>(square: &MagicSquare<T>) -> VerificationReport<T> {
    let e = &square.entries;
    let mut report = VerificationReport::new(CheckKind::Magic);
    for (r, row) in e.iter().enumerate() {
        report.compare(1, format!("row {}", r + 1), sum(row.iter().cloned()), square.magic_sum.clone());
    }
    for c in 0..4 {
        report.compare(
            1,
            format!("column {}", c + 1),
            sum(e.iter().map(|row| row[c].clone())),
            square.magic_sum.clone(),
        );
    }
    report.compare(1, "diagonal", sum((0..4).map(|i| e[i][i].clone())), square.magic_sum.clone());
    report.compare(
        1,
        "anti-diagonal",
        sum((0..4).map(|i| e[i][3 - i].clone())),
        square.magic_sum.clone(),
    );
    report
}
