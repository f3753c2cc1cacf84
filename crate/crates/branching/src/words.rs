//! Words over {1,2}, stored as digit vectors.

use crate::BranchError;

pub fn parse(s: &str) -> Result<Vec<u8>, BranchError> {
    s.chars()
        .filter(|c| !matches!(c, ' ' | ',' | '_'))
        .map(|c| match c {
            '1' => Ok(1),
            '2' => Ok(2),
            _ => Err(BranchError::Invalid(format!("word {s:?} has a letter other than 1, 2"))),
        })
        .collect()
}

pub fn show(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Shortest `r` with `w = r^k`; returns `(r, k)`.
pub fn primitive_root(w: &[u8]) -> (Vec<u8>, usize) {
    let n = w.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| w[i] == w[i - p]) {
            return (w[..p].to_vec(), n / p);
        }
    }
    (w.to_vec(), 1)
}

pub fn is_primitive(w: &[u8]) -> bool {
    !w.is_empty() && primitive_root(w).1 == 1
}

/// Offset of the lexicographically least rotation (the smallest one if
/// several coincide).
pub fn min_rotation_offset(w: &[u8]) -> usize {
    (0..w.len().max(1)).min_by_key(|&i| rotate(w, i)).unwrap_or(0)
}

pub fn rotate(w: &[u8], i: usize) -> Vec<u8> {
    if w.is_empty() {
        return Vec::new();
    }
    let i = i % w.len();
    w[i..].iter().chain(&w[..i]).copied().collect()
}

pub fn min_rotation(w: &[u8]) -> Vec<u8> {
    rotate(w, min_rotation_offset(w))
}

/// 1 ↔ 2.
pub fn flip(w: &[u8]) -> Vec<u8> {
    w.iter().map(|d| 3 - d).collect()
}

pub fn conjugate(a: &[u8], b: &[u8]) -> bool {
    a.len() == b.len() && min_rotation(a) == min_rotation(b)
}
