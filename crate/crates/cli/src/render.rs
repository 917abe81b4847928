//! Fixed tabular text rendering.

use std::fmt::Write;

use commutant_core::{OpTable, Slice, Theory};

/// One line per argument tuple, first variable varying fastest.
pub fn op_table(op: &OpTable) -> String {
    let n = op.arity();
    let s = op.carrier();
    let mut out = String::new();
    let _ = writeln!(out, "arity {n}, carrier {s}");
    let header: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let _ = writeln!(out, "{} | f", header.join(" "));
    let mut args = vec![0usize; n];
    for &v in op.table() {
        let cells: Vec<String> = args.iter().enumerate().map(|(i, a)| format!("{a:>w$}", w = 1 + i.to_string().len())).collect();
        let _ = writeln!(out, "{} | {v}", cells.join(" "));
        for a in args.iter_mut() {
            *a += 1;
            if *a < s {
                break;
            }
            *a = 0;
        }
    }
    out
}

/// A `j x k` matrix given row-major.
pub fn matrix(j: usize, k: usize, entries: &[u8]) -> String {
    let mut out = String::new();
    for i in 0..j {
        let row: Vec<String> = entries[i * k..(i + 1) * k].iter().map(u8::to_string).collect();
        let _ = writeln!(out, "  [{}]", row.join(" "));
    }
    out
}

pub fn counts(t: &Theory) -> String {
    let mut out = String::from("arity  count\n");
    for (n, c) in t.arity_counts().iter().enumerate() {
        let _ = writeln!(out, "{n:<6} {c}");
    }
    out
}

/// Counts followed by the explicit slices, one table per line.
pub fn theory(t: &Theory) -> String {
    let mut out = format!("carrier {}, max arity {}\n", t.carrier_size(), t.max_arity());
    out.push_str(&counts(t));
    for n in 0..=t.max_arity() {
        match t.slice(n).expect("within the bound") {
            Slice::Full => {
                let _ = writeln!(out, "arity {n}: all operations");
            }
            Slice::Ops(ops) => {
                let _ = writeln!(out, "arity {n}:");
                for op in ops {
                    let cells: Vec<String> = op.table().iter().map(u8::to_string).collect();
                    let _ = writeln!(out, "  [{}]", cells.join(" "));
                }
            }
        }
    }
    out
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}
