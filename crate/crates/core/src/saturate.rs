//! Worklist saturation: the least set containing the seeds and closed under
//! a family of binary operations.

use std::collections::HashSet;
use std::hash::{BuildHasherDefault, Hash, Hasher};

use crate::error::{Error, Result};

/// Multiplicative hasher for small fixed-width keys.
#[derive(Default, Clone, Copy)]
pub struct FastHasher(u64);

const SEED: u64 = 0x51_7c_c1_b7_27_22_0a_95;

impl Hasher for FastHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            self.write_u64(u64::from_le_bytes(buf));
        }
    }

    fn write_u64(&mut self, i: u64) {
        self.0 = (self.0.rotate_left(5) ^ i).wrapping_mul(SEED);
    }

    fn write_u128(&mut self, i: u128) {
        self.write_u64(i as u64);
        self.write_u64((i >> 64) as u64);
    }

    fn write_usize(&mut self, i: usize) {
        self.write_u64(i as u64);
    }

    fn write_u32(&mut self, i: u32) {
        self.write_u64(i as u64);
    }

    fn write_u8(&mut self, i: u8) {
        self.write_u64(i as u64);
    }
}

pub type FastSet<T> = HashSet<T, BuildHasherDefault<FastHasher>>;

/// Saturates `seeds` under `combine`, which must return every product of
/// `(a, b)` in that order (the engine also calls it with `(b, a)`).
///
/// Elements come back in discovery order, seeds first. Fails once more than
/// `limit` elements have been found.
pub fn saturate<T, F, const K: usize>(seeds: impl IntoIterator<Item = T>, limit: usize, mut combine: F) -> Result<Vec<T>>
where
    T: Eq + Hash + Clone,
    F: FnMut(&T, &T) -> [T; K],
{
    let mut seen: FastSet<T> = FastSet::default();
    let mut elems: Vec<T> = Vec::new();
    let push = |x: T, seen: &mut FastSet<T>, elems: &mut Vec<T>| -> Result<()> {
        if seen.insert(x.clone()) {
            if elems.len() >= limit {
                return Err(Error::CapExceeded(format!("closure grew past {limit} elements")));
            }
            elems.push(x);
        }
        Ok(())
    };
    for s in seeds {
        push(s, &mut seen, &mut elems)?;
    }
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i].clone();
        for j in 0..=i {
            let b = elems[j].clone();
            for r in combine(&a, &b) {
                push(r, &mut seen, &mut elems)?;
            }
            if j != i {
                for r in combine(&b, &a) {
                    push(r, &mut seen, &mut elems)?;
                }
            }
        }
        i += 1;
    }
    Ok(elems)
}
