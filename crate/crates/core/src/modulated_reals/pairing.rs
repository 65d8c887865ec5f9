//! Cantor pairing.
//!
//! `cantor_pair`/`cantor_unpair` are the 0-based bijection
//! `c(x, y) = (x + y)(x + y + 1)/2 + y` between `N × N` and `N`. The 1-based
//! views [`pair_index`]/[`index_pair`] enumerate the positive quadrant along
//! anti-diagonals:
//!
//! ```text
//! (1,1)=1  (1,2)=3  (1,3)=6  ...
//! (2,1)=2  (2,2)=5  ...
//! (3,1)=4  ...
//! (4,1)=7
//! ```

use num_integer::Roots;

/// `c(x, y)`, or `None` if the result does not fit in a `u64`.
pub fn checked_cantor_pair(x: u64, y: u64) -> Option<u64> {
    let s = x as u128 + y as u128;
    let v = s.checked_mul(s + 1)? / 2 + y as u128;
    u64::try_from(v).ok()
}

/// `c(x, y)`. Panics on `u64` overflow.
pub fn cantor_pair(x: u64, y: u64) -> u64 {
    checked_cantor_pair(x, y).expect("cantor_pair overflow")
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(m: u64) -> (u64, u64) {
    let m = m as u128;
    let w = ((8 * m + 1).sqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let y = m - t;
    let x = w - y;
    (x as u64, y as u64)
}

/// 1-based position of `(n, k)` in the enumeration; `n, k >= 1`.
pub fn pair_index(n: u64, k: u64) -> u64 {
    assert!(n >= 1 && k >= 1, "pair_index is 1-based");
    cantor_pair(n - 1, k - 1) + 1
}

/// The pair `(n, k)` at 1-based position `m >= 1`.
pub fn index_pair(m: u64) -> (u64, u64) {
    assert!(m >= 1, "index_pair is 1-based");
    let (x, y) = cantor_unpair(m - 1);
    (x + 1, y + 1)
}

/// `pair_index(n, n)`: every pair with both coordinates `<= n` sits at or
/// before this position.
pub fn diagonal_index(n: u64) -> u64 {
    pair_index(n.max(1), n.max(1))
}
