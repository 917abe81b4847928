//! Finite rigs given by tables, and the matrix theories they induce on their
//! own carrier.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ops::{OpTable, MAX_CARRIER};
use crate::theory::{Carrier, Theory};
use crate::tuples::advance;
use crate::{Error, Result};

/// A finite rig `(R, +, 0, *, 1)` with elements `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rig {
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    labels: Option<Vec<String>>,
}

/// One failed instance of a rig axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigViolation {
    AddAssociative(usize, usize, usize),
    AddCommutative(usize, usize),
    AddIdentity(usize),
    MulAssociative(usize, usize, usize),
    MulIdentity(usize),
    LeftDistributive(usize, usize, usize),
    RightDistributive(usize, usize, usize),
    LeftAnnihilation(usize),
    RightAnnihilation(usize),
}

impl fmt::Display for RigViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigViolation::AddAssociative(a, b, c) => write!(f, "(a+b)+c != a+(b+c) at ({a},{b},{c})"),
            RigViolation::AddCommutative(a, b) => write!(f, "a+b != b+a at ({a},{b})"),
            RigViolation::AddIdentity(a) => write!(f, "0 is not an additive identity at {a}"),
            RigViolation::MulAssociative(a, b, c) => write!(f, "(ab)c != a(bc) at ({a},{b},{c})"),
            RigViolation::MulIdentity(a) => write!(f, "1 is not a multiplicative identity at {a}"),
            RigViolation::LeftDistributive(a, b, c) => write!(f, "a(b+c) != ab+ac at ({a},{b},{c})"),
            RigViolation::RightDistributive(a, b, c) => write!(f, "(a+b)c != ac+bc at ({a},{b},{c})"),
            RigViolation::LeftAnnihilation(a) => write!(f, "0a != 0 at {a}"),
            RigViolation::RightAnnihilation(a) => write!(f, "a0 != 0 at {a}"),
        }
    }
}

fn square_table(name: &str, size: usize, rows: &[Vec<usize>]) -> Result<Vec<usize>> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::InvalidRig(format!("{name} table is not {size}x{size}")));
    }
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    if let Some(&bad) = flat.iter().find(|&&v| v >= size) {
        return Err(Error::InvalidRig(format!("{name} table entry {bad} out of range")));
    }
    Ok(flat)
}

impl Rig {
    /// Builds a rig from row-major tables. Only the shape is checked; use
    /// [`Rig::check_axioms`] or [`Rig::validated`] for the axioms.
    pub fn new(add: &[Vec<usize>], mul: &[Vec<usize>], zero: usize, one: usize) -> Result<Self> {
        let size = add.len();
        if size == 0 {
            return Err(Error::InvalidRig(String::from("empty rig")));
        }
        let add = square_table("addition", size, add)?;
        let mul = square_table("multiplication", size, mul)?;
        if zero >= size || one >= size {
            return Err(Error::InvalidRig(String::from("designated element out of range")));
        }
        Ok(Rig { size, add, mul, zero, one, labels: None })
    }

    pub fn from_fns(
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..size).map(|a| (0..size).map(|b| f(a, b)).collect()).collect()
        };
        Rig::new(&table(&add), &table(&mul), zero, one)
    }

    /// [`Rig::new`] followed by an exhaustive axiom check.
    pub fn validated(add: &[Vec<usize>], mul: &[Vec<usize>], zero: usize, one: usize) -> Result<Self> {
        let rig = Rig::new(add, mul, zero, one)?;
        rig.ensure_valid()?;
        Ok(rig)
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        match self.check_axioms().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidRig(format!("{v}"))),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        Carrier::labelled(labels.clone())?;
        if labels.len() != self.size {
            return Err(Error::InvalidRig(String::from("label count differs from size")));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The integers modulo `n`.
    pub fn zn(n: usize) -> Result<Self> {
        Rig::from_fns(n, |a, b| (a + b) % n, |a, b| (a * b) % n, 0, 1.min(n - 1))
    }

    /// The Boolean rig `({0,1}, ∨, 0, ∧, 1)`; here `1 + 1 = 1`.
    pub fn bool2() -> Self {
        Rig::from_fns(2, |a, b| a | b, |a, b| a & b, 0, 1).expect("static tables")
    }

    /// The field with four elements, as polynomials over F2 modulo `x^2 + x + 1`
    /// encoded in two bits.
    pub fn f4() -> Self {
        fn mul(a: usize, b: usize) -> usize {
            let mut p = 0;
            for i in 0..2 {
                if b >> i & 1 == 1 {
                    p ^= a << i;
                }
            }
            if p & 0b100 != 0 {
                p ^= 0b111;
            }
            p
        }
        Rig::from_fns(4, |a, b| a ^ b, mul, 0, 1).expect("static tables")
    }

    /// Upper-triangular 2x2 matrices `[[a, b], [0, c]]` over F2, encoded as
    /// `a + 2b + 4c`. The smallest noncommutative ring in the zoo.
    pub fn ut2_f2() -> Self {
        let dec = |x: usize| (x & 1, x >> 1 & 1, x >> 2 & 1);
        let enc = |a: usize, b: usize, c: usize| a | b << 1 | c << 2;
        Rig::from_fns(
            8,
            |x, y| x ^ y,
            |x, y| {
                let ((a, b, c), (d, e, f)) = (dec(x), dec(y));
                enc(a & d, (a & e) ^ (b & f), c & f)
            },
            0,
            5,
        )
        .expect("static tables")
    }

    /// Looks up a rig of the built-in zoo: `Z2`, `Z3`, `Z4`, `Zn`, `bool2`,
    /// `F4`, `UT2_F2`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "bool2" | "2" => Some(Rig::bool2()),
            "F4" => Some(Rig::f4()),
            "UT2_F2" => Some(Rig::ut2_f2()),
            _ => {
                let n: usize = name.strip_prefix('Z')?.parse().ok()?;
                (2..=MAX_CARRIER).contains(&n).then(|| Rig::zn(n).ok()).flatten()
            }
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn sum(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.zero, |acc, x| self.add(acc, x))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every failed axiom instance, checked exhaustively. Empty iff the tables
    /// define a rig.
    pub fn check_axioms(&self) -> Vec<RigViolation> {
        let n = self.size;
        let mut out = Vec::new();
        for a in 0..n {
            if self.add(self.zero, a) != a || self.add(a, self.zero) != a {
                out.push(RigViolation::AddIdentity(a));
            }
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                out.push(RigViolation::MulIdentity(a));
            }
            if self.mul(self.zero, a) != self.zero {
                out.push(RigViolation::LeftAnnihilation(a));
            }
            if self.mul(a, self.zero) != self.zero {
                out.push(RigViolation::RightAnnihilation(a));
            }
            for b in 0..n {
                if a < b && self.add(a, b) != self.add(b, a) {
                    out.push(RigViolation::AddCommutative(a, b));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        out.push(RigViolation::AddAssociative(a, b, c));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        out.push(RigViolation::MulAssociative(a, b, c));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        out.push(RigViolation::LeftDistributive(a, b, c));
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        out.push(RigViolation::RightDistributive(a, b, c));
                    }
                }
            }
        }
        out
    }

    /// The opposite rig: same addition, multiplication `a *op b = b * a`.
    pub fn opposite(&self) -> Rig {
        let n = self.size;
        let mul = (0..n * n).map(|i| self.mul[(i % n) * n + i / n]).collect();
        Rig { mul, ..self.clone() }
    }

    fn carrier_size(&self) -> Result<usize> {
        if self.size > MAX_CARRIER {
            return Err(Error::InvalidCarrier(format!(
                "rig of size {} is too large to act as a carrier",
                self.size
            )));
        }
        Ok(self.size)
    }

    /// The `n`-ary operation `x -> sum_i r_i * x_i` (left coefficients).
    pub fn op_of_row(&self, row: &[usize]) -> Result<OpTable> {
        self.check_elements(row)?;
        let s = self.carrier_size()?;
        OpTable::from_fn(row.len(), s, |x| {
            self.sum(row.iter().zip(x).map(|(&r, &xi)| self.mul(r, xi as usize))) as u8
        })
    }

    /// The operation `x -> c + sum_i x_i * r_i` (right coefficients, additive
    /// constant `c`).
    pub fn pointed_op(&self, constant: usize, row: &[usize]) -> Result<OpTable> {
        self.check_elements(row)?;
        self.check_elements(&[constant])?;
        let s = self.carrier_size()?;
        OpTable::from_fn(row.len(), s, |x| {
            let lin = self.sum(row.iter().zip(x).map(|(&r, &xi)| self.mul(xi as usize, r)));
            self.add(constant, lin) as u8
        })
    }

    /// The operations of a matrix `m x n`, one per row.
    pub fn ops_of_matrix(&self, m: &RMatrix) -> Result<Vec<OpTable>> {
        (0..m.rows).map(|r| self.op_of_row(m.row(r))).collect()
    }

    fn check_elements(&self, xs: &[usize]) -> Result<()> {
        match xs.iter().find(|&&x| x >= self.size) {
            Some(&bad) => Err(Error::ElementOutOfRange { value: bad, carrier: self.size }),
            None => Ok(()),
        }
    }

    fn rows(&self, n: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let mut digits = vec![0u8; n];
        let mut done = self.size > 256;
        core::iter::from_fn(move || {
            if done {
                return None;
            }
            let row = digits.iter().map(|&d| d as usize).collect();
            done = !advance(&mut digits, self.size);
            Some(row)
        })
    }

    /// The theory of left `R`-modules realized on the carrier `R`: at arity
    /// `n`, every operation `x -> sum r_i x_i`.
    pub fn mat_theory(&self, max_arity: usize) -> Result<Theory> {
        self.row_theory(max_arity, |_| true)
    }

    /// The affine subtheory: rows summing to `1`.
    pub fn mat_aff_theory(&self, max_arity: usize) -> Result<Theory> {
        self.row_theory(max_arity, |row| self.sum(row.iter().copied()) == self.one)
    }

    fn row_theory(&self, max_arity: usize, keep: impl Fn(&[usize]) -> bool) -> Result<Theory> {
        self.ensure_valid()?;
        let carrier = Carrier::new(self.carrier_size()?)?;
        let mut slices = Vec::with_capacity(max_arity + 1);
        for n in 0..=max_arity {
            let mut ops = Vec::new();
            for row in self.rows(n).filter(|r| keep(r)) {
                ops.push(self.op_of_row(&row)?);
            }
            slices.push(ops);
        }
        let gens = non_projections(&slices);
        Theory::from_slices(carrier, max_arity, slices, Some(gens))
    }

    /// The theory of pointed right `R`-modules realized on `R` with point `1`:
    /// at arity `n`, every `x -> c + sum x_i r_i`.
    pub fn pointed_mod_theory(&self, max_arity: usize) -> Result<Theory> {
        self.ensure_valid()?;
        let carrier = Carrier::new(self.carrier_size()?)?;
        let mut slices = Vec::with_capacity(max_arity + 1);
        for n in 0..=max_arity {
            let mut ops = Vec::new();
            for params in self.rows(n + 1) {
                ops.push(self.pointed_op(params[0], &params[1..])?);
            }
            slices.push(ops);
        }
        let gens = non_projections(&slices);
        Theory::from_slices(carrier, max_arity, slices, Some(gens))
    }

    /// Number of distinct rows of length `n` whose operations coincide with
    /// an earlier row's.
    pub fn row_collisions(&self, n: usize) -> Result<usize> {
        let mut ops = Vec::new();
        for row in self.rows(n) {
            ops.push(self.op_of_row(&row)?);
        }
        let total = ops.len();
        ops.sort();
        ops.dedup();
        Ok(total - ops.len())
    }

    /// Kronecker product of matrices: for `x` of shape `j' x j` and `y` of
    /// shape `k' x k`, the `j'k' x jk` matrix whose entry at row `(i', l')`,
    /// column `(i, l)` is `y[l', l] * x[i', i]`, with pairs laid out row-major.
    pub fn matrix_kronecker(&self, x: &RMatrix, y: &RMatrix) -> Result<RMatrix> {
        self.check_elements(&x.entries)?;
        self.check_elements(&y.entries)?;
        let (jp, j, kp, k) = (x.rows, x.cols, y.rows, y.cols);
        let mut entries = vec![self.zero; jp * kp * j * k];
        for ip in 0..jp {
            for lp in 0..kp {
                for i in 0..j {
                    for l in 0..k {
                        let r = ip * kp + lp;
                        let c = i * k + l;
                        entries[r * (j * k) + c] = self.mul(y.get(lp, l), x.get(ip, i));
                    }
                }
            }
        }
        RMatrix::new(jp * kp, j * k, entries)
    }

    /// [`Rig::matrix_kronecker`] with its arguments in the order of the
    /// classical notation `Y ⊗ X`.
    pub fn classical_kronecker(&self, y: &RMatrix, x: &RMatrix) -> Result<RMatrix> {
        self.matrix_kronecker(x, y)
    }
}

fn non_projections(slices: &[Vec<OpTable>]) -> Vec<OpTable> {
    let mut gens: Vec<OpTable> =
        slices.iter().flatten().filter(|op| !op.is_projection()).cloned().collect();
    gens.sort();
    gens.dedup();
    gens
}

/// A matrix over a rig, stored row-major as element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RMatrix { rows, cols, entries })
    }

    pub fn row_vector(row: &[usize]) -> Self {
        RMatrix { rows: 1, cols: row.len(), entries: row.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> usize {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }
}
