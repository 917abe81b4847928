//! Operation tables, superposition, Kronecker products and commutation.

use alloc::vec;
use alloc::vec::Vec;

use crate::tuples::{advance, table_len};
use crate::{Error, Result};

/// Largest carrier representable with `u8` table entries.
pub const MAX_CARRIER: usize = 256;

/// A single-output operation `S^n -> S` on the carrier `{0, .., s-1}`,
/// stored as its full value table in little-endian tuple order.
///
/// Ordering is by arity, then carrier, then the table read lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpTable {
    arity: usize,
    carrier: usize,
    table: Vec<u8>,
}

impl OpTable {
    pub fn new(arity: usize, carrier: usize, table: Vec<u8>) -> Result<Self> {
        check_carrier(carrier)?;
        let expected = table_len(carrier, arity)?;
        if table.len() != expected {
            return Err(Error::TableLength { expected, found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= carrier) {
            return Err(Error::ElementOutOfRange { value: bad as usize, carrier });
        }
        Ok(OpTable { arity, carrier, table })
    }

    /// Builds the table by evaluating `f` on every tuple in index order.
    pub fn from_fn(arity: usize, carrier: usize, mut f: impl FnMut(&[u8]) -> u8) -> Result<Self> {
        check_carrier(carrier)?;
        let len = table_len(carrier, arity)?;
        let mut table = Vec::with_capacity(len);
        let mut args = vec![0u8; arity];
        loop {
            let v = f(&args);
            if v as usize >= carrier {
                return Err(Error::ElementOutOfRange { value: v as usize, carrier });
            }
            table.push(v);
            if !advance(&mut args, carrier) {
                break;
            }
        }
        Ok(OpTable { arity, carrier, table })
    }

    pub fn constant(arity: usize, carrier: usize, value: u8) -> Result<Self> {
        check_carrier(carrier)?;
        if value as usize >= carrier {
            return Err(Error::ElementOutOfRange { value: value as usize, carrier });
        }
        Ok(OpTable { arity, carrier, table: vec![value; table_len(carrier, arity)?] })
    }

    /// The unary identity.
    pub fn identity(carrier: usize) -> Result<Self> {
        projection(1, 0, carrier)
    }

    pub(crate) fn from_raw(arity: usize, carrier: usize, table: Vec<u8>) -> Self {
        debug_assert_eq!(Some(table.len()), carrier.checked_pow(arity as u32));
        OpTable { arity, carrier, table }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn carrier(&self) -> usize {
        self.carrier
    }

    #[inline]
    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u8> {
        self.table
    }

    #[inline]
    pub(crate) fn at(&self, index: usize) -> u8 {
        self.table[index]
    }

    pub fn eval(&self, args: &[u8]) -> Result<u8> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        if let Some(&bad) = args.iter().find(|&&a| a as usize >= self.carrier) {
            return Err(Error::ElementOutOfRange { value: bad as usize, carrier: self.carrier });
        }
        Ok(self.at(index_of(args, self.carrier)))
    }

    /// Returns the variable this operation projects onto, if it is a projection.
    pub fn projection_index(&self) -> Option<usize> {
        (0..self.arity).find(|&i| {
            let mut args = vec![0u8; self.arity];
            let mut idx = 0;
            loop {
                if self.table[idx] != args[i] {
                    return false;
                }
                idx += 1;
                if !advance(&mut args, self.carrier) {
                    return true;
                }
            }
        })
    }

    pub fn is_projection(&self) -> bool {
        self.projection_index().is_some()
    }
}

pub(crate) fn check_carrier(carrier: usize) -> Result<()> {
    if carrier == 0 || carrier > MAX_CARRIER {
        return Err(Error::InvalidCarrier(alloc::format!(
            "size {carrier} not in 1..={MAX_CARRIER}"
        )));
    }
    Ok(())
}

pub(crate) fn same_carrier(a: &OpTable, b: &OpTable) -> Result<usize> {
    if a.carrier != b.carrier {
        return Err(Error::CarrierMismatch { left: a.carrier, right: b.carrier });
    }
    Ok(a.carrier)
}

/// Little-endian mixed-radix index of a tuple.
#[inline]
pub fn index_of(args: &[u8], carrier: usize) -> usize {
    args.iter().rev().fold(0, |acc, &a| acc * carrier + a as usize)
}

#[inline]
fn index_by(len: usize, carrier: usize, mut digit: impl FnMut(usize) -> u8) -> usize {
    (0..len).rev().fold(0, |acc, i| acc * carrier + digit(i) as usize)
}

pub fn eval(op: &OpTable, args: &[u8]) -> Result<u8> {
    op.eval(args)
}

/// The `i`-th projection of arity `n` on a carrier of size `s`.
pub fn projection(n: usize, i: usize, s: usize) -> Result<OpTable> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, arity: n });
    }
    OpTable::from_fn(n, s, |a| a[i])
}

/// All projections of arity `n`, in index order.
pub fn projections(n: usize, s: usize) -> Result<Vec<OpTable>> {
    (0..n).map(|i| projection(n, i, s)).collect()
}

/// Substitutes `inners` (all of one arity `m`) into `outer`, giving the
/// `m`-ary operation `a -> outer(inners[0](a), .., inners[n-1](a))`.
///
/// A nullary `outer` has no inners to read the arity from; use
/// [`superpose_at`] for that case.
pub fn superpose(outer: &OpTable, inners: &[OpTable]) -> Result<OpTable> {
    let m = inners.first().ok_or(Error::EmptySubstitution)?.arity;
    superpose_at(outer, inners, m)
}

/// [`superpose`] with the result arity given explicitly.
pub fn superpose_at(outer: &OpTable, inners: &[OpTable], arity: usize) -> Result<OpTable> {
    if inners.len() != outer.arity {
        return Err(Error::ArityMismatch { expected: outer.arity, found: inners.len() });
    }
    let s = outer.carrier;
    for inner in inners {
        same_carrier(outer, inner)?;
        if inner.arity != arity {
            return Err(Error::ArityMismatch { expected: arity, found: inner.arity });
        }
    }
    let len = table_len(s, arity)?;
    let table = (0..len)
        .map(|t| outer.at(index_by(inners.len(), s, |i| inners[i].at(t))))
        .collect();
    Ok(OpTable::from_raw(arity, s, table))
}

/// First Kronecker product: `mu` is applied down each of the `k` columns of a
/// `j x k` matrix of variables, then `nu` to the resulting row.
pub fn kron1(mu: &OpTable, nu: &OpTable) -> Result<OpTable> {
    let s = same_carrier(mu, nu)?;
    let (j, k) = (mu.arity, nu.arity);
    OpTable::from_fn(j * k, s, |x| {
        nu.at(index_by(k, s, |l| mu.at(index_by(j, s, |i| x[i * k + l]))))
    })
}

/// Second Kronecker product: `nu` is applied along each of the `j` rows, then
/// `mu` to the resulting column.
pub fn kron2(mu: &OpTable, nu: &OpTable) -> Result<OpTable> {
    let s = same_carrier(mu, nu)?;
    let (j, k) = (mu.arity, nu.arity);
    OpTable::from_fn(j * k, s, |x| {
        mu.at(index_by(j, s, |i| nu.at(index_by(k, s, |l| x[i * k + l]))))
    })
}

/// Finds a `j x k` matrix (row-major, `j = mu.arity()`, `k = nu.arity()`) on
/// which the two Kronecker products disagree.
pub fn commutation_witness(mu: &OpTable, nu: &OpTable) -> Result<Option<Vec<u8>>> {
    let s = same_carrier(mu, nu)?;
    let (j, k) = (mu.arity, nu.arity);
    let mut x = vec![0u8; j * k];
    loop {
        let first = nu.at(index_by(k, s, |l| mu.at(index_by(j, s, |i| x[i * k + l]))));
        let second = mu.at(index_by(j, s, |i| nu.at(index_by(k, s, |l| x[i * k + l]))));
        if first != second {
            return Ok(Some(x));
        }
        if !advance(&mut x, s) {
            return Ok(None);
        }
    }
}

/// Whether `mu` and `nu` commute, i.e. their two Kronecker products agree.
pub fn commutes(mu: &OpTable, nu: &OpTable) -> Result<bool> {
    Ok(commutation_witness(mu, nu)?.is_none())
}

/// Reindexes a `j*k`-ary operation as a `k*j`-ary one by swapping the two
/// factors of its variable grid.
pub fn transpose_vars(op: &OpTable, j: usize, k: usize) -> Result<OpTable> {
    if op.arity != j * k {
        return Err(Error::ArityMismatch { expected: j * k, found: op.arity });
    }
    let s = op.carrier;
    OpTable::from_fn(k * j, s, |y| op.at(index_by(j * k, s, |p| y[(p % k) * j + p / k])))
}

/// A morphism `j -> j'` of a concrete theory: `j'` operations of arity `j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpTuple {
    in_arity: usize,
    carrier: usize,
    components: Vec<OpTable>,
}

impl OpTuple {
    pub fn new(in_arity: usize, carrier: usize, components: Vec<OpTable>) -> Result<Self> {
        check_carrier(carrier)?;
        for c in &components {
            if c.arity != in_arity {
                return Err(Error::ArityMismatch { expected: in_arity, found: c.arity });
            }
            if c.carrier != carrier {
                return Err(Error::CarrierMismatch { left: carrier, right: c.carrier });
            }
        }
        Ok(OpTuple { in_arity, carrier, components })
    }

    pub fn identity(n: usize, carrier: usize) -> Result<Self> {
        OpTuple::new(n, carrier, projections(n, carrier)?)
    }

    pub fn in_arity(&self) -> usize {
        self.in_arity
    }

    pub fn out_arity(&self) -> usize {
        self.components.len()
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn components(&self) -> &[OpTable] {
        &self.components
    }
}

fn kron_multi(
    mu: &OpTuple,
    nu: &OpTuple,
    single: fn(&OpTable, &OpTable) -> Result<OpTable>,
) -> Result<OpTuple> {
    if mu.carrier != nu.carrier {
        return Err(Error::CarrierMismatch { left: mu.carrier, right: nu.carrier });
    }
    let mut components = Vec::with_capacity(mu.out_arity() * nu.out_arity());
    for m in &mu.components {
        for n in &nu.components {
            components.push(single(m, n)?);
        }
    }
    OpTuple::new(mu.in_arity * nu.in_arity, mu.carrier, components)
}

/// First Kronecker product of multi-output morphisms; component `(i', l')`
/// sits at `i' * k' + l'`.
pub fn kron1_multi(mu: &OpTuple, nu: &OpTuple) -> Result<OpTuple> {
    kron_multi(mu, nu, kron1)
}

pub fn kron2_multi(mu: &OpTuple, nu: &OpTuple) -> Result<OpTuple> {
    kron_multi(mu, nu, kron2)
}
