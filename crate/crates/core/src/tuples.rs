//! Small odometer helpers shared by the table-building code.

use alloc::vec;

use crate::{Error, Result};

/// Upper limit on the number of entries of a single dense table.
pub(crate) const MAX_TABLE_LEN: usize = 1 << 24;

/// Little-endian increment of `digits` in base `base`. Returns `false` once the
/// odometer wraps back to all zeros.
#[inline]
pub(crate) fn advance(digits: &mut [u8], base: usize) -> bool {
    for d in digits.iter_mut() {
        if (*d as usize) + 1 < base {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// [`advance`] over `usize` digits.
#[inline]
pub(crate) fn advance_index(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        if *d + 1 < base {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// `base^exp`, or an error when the table would be unreasonably large.
pub(crate) fn table_len(base: usize, exp: usize) -> Result<usize> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .filter(|&len| len <= MAX_TABLE_LEN)
        .ok_or(Error::TableTooLarge { carrier: base, arity: exp })
}

/// `base^exp` in `u128`, saturating.
pub(crate) fn count_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

/// Number of `arity`-ary operations on a carrier of size `carrier`, saturating.
pub(crate) fn op_count(carrier: usize, arity: usize) -> u128 {
    match u32::try_from(arity).ok().and_then(|a| (carrier as u128).checked_pow(a)) {
        Some(points) if points <= usize::MAX as u128 => count_pow(carrier as u128, points as usize),
        _ => u128::MAX,
    }
}

/// Calls `f` on every `k`-tuple of indices in `0..len` that contains at least
/// one index in `old..len`. Each such tuple is visited exactly once. Stops
/// early when `f` returns `Ok(false)`; the return value reports whether the
/// enumeration ran to completion.
pub(crate) fn for_each_fresh_tuple<E>(
    old: usize,
    len: usize,
    k: usize,
    mut f: impl FnMut(&[usize]) -> core::result::Result<bool, E>,
) -> core::result::Result<bool, E> {
    if old >= len || k == 0 {
        return Ok(true);
    }
    let mut tuple = vec![0usize; k];
    // `p` is the position of the first fresh index.
    for p in 0..k {
        if p > 0 && old == 0 {
            break;
        }
        let lo = |i: usize| if i == p { old } else { 0 };
        let hi = |i: usize| if i < p { old } else { len };
        for (i, t) in tuple.iter_mut().enumerate() {
            *t = lo(i);
        }
        loop {
            if !f(&tuple)? {
                return Ok(false);
            }
            let mut i = 0;
            loop {
                if i == k {
                    break;
                }
                tuple[i] += 1;
                if tuple[i] < hi(i) {
                    break;
                }
                tuple[i] = lo(i);
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec::Vec;

    #[test]
    fn odometer_runs_in_index_order() {
        let mut d = [0u8; 2];
        let mut seen = vec![d.to_vec()];
        while advance(&mut d, 3) {
            seen.push(d.to_vec());
        }
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[1], [1, 0]);
        assert_eq!(seen[3], [0, 1]);
    }

    #[test]
    fn fresh_tuples_match_filter() {
        for (old, len, k) in [(0, 3, 2), (2, 4, 2), (1, 3, 3), (3, 4, 1), (2, 2, 2)] {
            let mut got = BTreeSet::new();
            let mut count = 0;
            for_each_fresh_tuple::<()>(old, len, k, |t| {
                got.insert(t.to_vec());
                count += 1;
                Ok(true)
            })
            .unwrap();
            let mut want = BTreeSet::new();
            let mut t = vec![0u8; k];
            if len > 0 {
                loop {
                    if t.iter().any(|&x| x as usize >= old) {
                        want.insert(t.iter().map(|&x| x as usize).collect::<Vec<_>>());
                    }
                    if !advance(&mut t, len) {
                        break;
                    }
                }
            }
            assert_eq!(got, want);
            assert_eq!(count, want.len());
        }
    }
}
